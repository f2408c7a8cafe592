use num_bigint::BigUint;
use pibound::primes::{Effort, Primality, PrimeTable};
use pibound::sequences::{Euclid, Hermite, ListMatch, DEFAULT_EUCLID_CAP, PUBLISHED_EUCLID};

// Full factorizations of n!+1 for n = 10..=25 (sympy factorint).
const FACTORED: &[(u64, &[(&str, u32)])] = &[
    (10, &[("11", 1), ("329891", 1)]),
    (11, &[("39916801", 1)]),
    (12, &[("13", 2), ("2834329", 1)]),
    (13, &[("83", 1), ("75024347", 1)]),
    (14, &[("23", 1), ("3790360487", 1)]),
    (15, &[("59", 1), ("479", 1), ("46271341", 1)]),
    (16, &[("17", 1), ("61", 1), ("137", 1), ("139", 1), ("1059511", 1)]),
    (17, &[("661", 1), ("537913", 1), ("1000357", 1)]),
    (18, &[("19", 1), ("23", 1), ("29", 1), ("61", 1), ("67", 1), ("123610951", 1)]),
    (19, &[("71", 1), ("1713311273363831", 1)]),
    (20, &[("20639383", 1), ("117876683047", 1)]),
    (21, &[("43", 1), ("439429", 1), ("2703875815783", 1)]),
    (22, &[("23", 1), ("521", 1), ("93799610095769647", 1)]),
    (23, &[("47", 2), ("79", 1), ("148139754736864591", 1)]),
    (24, &[("811", 1), ("765041185860961084291", 1)]),
    (25, &[("401", 1), ("38681321803817920159601", 1)]),
];

fn big(s: &str) -> BigUint {
    s.parse().unwrap()
}

#[test]
fn euclid_terms_to_cap_match_factor_oracle() {
    let e = Euclid::new(Effort::default(), DEFAULT_EUCLID_CAP);
    for &(n, expected) in FACTORED {
        let t = e.term(n).unwrap();
        assert!(t.complete, "n={n}");
        let got: Vec<(BigUint, u32)> = t
            .factorization
            .factors
            .iter()
            .map(|f| (f.prime.clone(), f.exponent))
            .collect();
        let want: Vec<(BigUint, u32)> = expected.iter().map(|&(p, e)| (big(p), e)).collect();
        assert_eq!(got, want, "n={n}");
        assert_eq!(t.extracted, want.last().unwrap().0);
        // primes beyond 64 bits are only probable; nothing is claimed past that
        for f in &t.factorization.factors {
            let expected_status = if f.prime.bits() <= 64 {
                Primality::Certified
            } else {
                Primality::ProbablePrime
            };
            assert_eq!(f.status, expected_status, "n={n} p={}", f.prime);
        }
        assert_eq!(t.extracted_proven, t.extracted.bits() <= 64, "n={n}");
    }
}

#[test]
fn published_list_diff() {
    let e = Euclid::new(Effort::default(), DEFAULT_EUCLID_CAP);
    let mismatched: Vec<u64> = (1..=PUBLISHED_EUCLID.len() as u64)
        .filter(|&n| e.term(n).unwrap().list_match == ListMatch::Mismatch)
        .collect();
    // n = 8, 9 disagree first; from n = 10 on the printed list is shifted
    assert_eq!(mismatched, [8, 9, 10, 11, 12, 13, 14, 15]);
}

#[test]
fn hermite_published_list_matches() {
    let table = PrimeTable::new(2000).unwrap();
    let h = Hermite::new(&table, 2000);
    for t in h.terms(14).unwrap() {
        assert_eq!(t.list_match, ListMatch::Match, "k={}", t.index);
        assert!(t.extracted_proven);
    }
    assert_eq!(h.term(15).unwrap().list_match, ListMatch::NotListed);
}
