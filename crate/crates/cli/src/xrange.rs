use anyhow::Result;

use crate::config::invalid;

/// Expand `A:B`, `A:B:geometric[:F]` or `A:B:linear[:STEP]`.
/// A bare `A:B` steps geometrically by 10.
pub fn parse(spec: &str, field: &str) -> Result<Vec<u64>> {
    let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
    let num = |s: &str, what: &str| -> Result<u64> {
        s.parse::<u64>()
            .map_err(|_| invalid(field, format!("{what} {s:?} in {spec:?} is not a non-negative integer")))
    };
    if parts.len() < 2 || parts.len() > 4 {
        return Err(invalid(field, format!("{spec:?}: expected A:B[:geometric|linear[:STEP]]")));
    }
    let a = num(parts[0], "start")?;
    let b = num(parts[1], "end")?;
    if a == 0 {
        return Err(invalid(field, "start must be >= 1"));
    }
    if a > b {
        return Err(invalid(field, format!("start {a} exceeds end {b}")));
    }
    let mode = parts.get(2).copied().unwrap_or("geometric");
    let step = parts.get(3).map(|s| num(s, "step")).transpose()?;
    let mut out = Vec::new();
    match mode {
        "geometric" => {
            let f = step.unwrap_or(10);
            if f < 2 {
                return Err(invalid(field, "geometric factor must be >= 2"));
            }
            let mut x = a;
            while x <= b {
                out.push(x);
                match x.checked_mul(f) {
                    Some(n) => x = n,
                    None => break,
                }
            }
        }
        "linear" => {
            let d = step.unwrap_or(1);
            if d == 0 {
                return Err(invalid(field, "linear step must be >= 1"));
            }
            out.extend((a..=b).step_by(d as usize));
        }
        other => return Err(invalid(field, format!("unknown stepping {other:?} (geometric|linear)"))),
    }
    Ok(out)
}

/// Inclusive `FROM:TO`.
pub fn bounds(spec: &str, field: &str) -> Result<(u64, u64)> {
    let (a, b) = spec
        .split_once(':')
        .ok_or_else(|| invalid(field, format!("{spec:?}: expected FROM:TO")))?;
    let a: u64 = a.trim().parse().map_err(|_| invalid(field, format!("bad start {a:?}")))?;
    let b: u64 = b.trim().parse().map_err(|_| invalid(field, format!("bad end {b:?}")))?;
    if a < 2 || a > b {
        return Err(invalid(field, format!("need 2 <= FROM <= TO, got {a}:{b}")));
    }
    Ok((a, b))
}
