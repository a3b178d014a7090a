use copartition_core::lab::{
    canonical_claims, catalog_load, catalog_save_claims, parse_catalog, shipped_catalog,
};
use copartition_core::{
    bivariate_gf_check, eo_star_series, euler_product, p_dissect_f, pochhammer, series_congruent, theta_f,
    CopartitionParams, Error, Ring,
};

#[test]
fn theta_one_two_is_the_pentagonal_product() {
    let f1 = pochhammer(1, 1, Ring::Integers, 1000).unwrap();
    assert_eq!(theta_f(1, 2, Ring::Integers, 1000), f1);
}

#[test]
fn dissection_reassembles_modulo_large_prime() {
    let ring = Ring::from_modulus(1_000_000_007).unwrap();
    for p in [17, 19, 23] {
        let d = p_dissect_f(p, ring, 3000).unwrap();
        assert_eq!(d.reassembled, euler_product(1, ring, 3000).unwrap(), "p = {p}");
        assert_eq!(d.components.len() as u64, p);
    }
}

#[test]
fn dissection_rejects_bad_primes() {
    assert!(matches!(p_dissect_f(9, Ring::Integers, 10), Err(Error::NotPrime(9))));
    assert!(matches!(p_dissect_f(3, Ring::Integers, 10), Err(Error::PrimeTooSmall(3))));
}

#[test]
fn eo_star_is_supported_on_even_exponents() {
    let eo = eo_star_series(400).unwrap();
    assert!(eo.coeffs().iter().skip(1).step_by(2).all(|&c| c == 0));
}

#[test]
fn eo_star_is_an_eta_quotient_in_q_squared() {
    let n = 400;
    let f4 = euler_product(4, Ring::Integers, n).unwrap();
    let f2 = euler_product(2, Ring::Integers, n).unwrap();
    let quotient = f4.pow(3).unwrap().mul(&f2.pow(2).unwrap().invert().unwrap()).unwrap();
    assert_eq!(eo_star_series(n).unwrap(), quotient);
}

#[test]
fn parity_lemma_fails_off_the_lemma() {
    let f3 = euler_product(3, Ring::Integers, 100).unwrap();
    let f1 = euler_product(1, Ring::Integers, 100).unwrap();
    assert!(!series_congruent(&f3, &f1.pow(3).unwrap(), 2, 100));
    assert!(series_congruent(&f3, &f1.pow(3).unwrap(), 3, 100));
}

#[test]
fn bivariate_markers_agree_with_counts() {
    for (a, b, m) in [(1, 3, 4), (3, 1, 4), (5, 1, 6), (2, 2, 3)] {
        let p = CopartitionParams::new(a, b, m).unwrap();
        assert!(bivariate_gf_check(&p, 30).unwrap(), "{p}");
    }
}

#[test]
fn shipped_catalog_matches_generated_claims() {
    assert_eq!(shipped_catalog(), canonical_claims().unwrap());
}

#[test]
fn catalog_survives_a_round_trip_through_disk() {
    let claims = canonical_claims().unwrap();
    let path = std::env::temp_dir().join(format!("copartition-catalog-{}.json", std::process::id()));
    catalog_save_claims(&claims, &path).unwrap();
    let loaded = catalog_load(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(loaded, claims);
}

#[test]
fn catalog_errors_carry_a_position() {
    let text = "{\"claims\": [\n  {\"source\": {\"kind\": \"copartition\", \"a\": 1}}\n]}";
    match parse_catalog(text) {
        Err(Error::Parse { line, .. }) => assert!(line >= 2),
        other => panic!("expected a parse error, got {other:?}"),
    }
}
