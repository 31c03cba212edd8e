//! Verification reports accept correct results and reject corrupted ones.

use mindec::covariant::{covariants_of, verify_covariants};
use mindec::decompose::{unbreakable_components, verify_unbreakable};
use mindec::matfun::{schwerdtfeger_eval, verify_apply};
use mindec::{Matrix, Poly, Rational};

type M = Matrix<Rational>;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[test]
fn covariant_report_rejects_a_foreign_matrix() {
    let m = M::diagonal(&[q(1), q(0), q(2)]);
    let sys = covariants_of(&m).unwrap();
    assert!(verify_covariants(&sys, &m).pass());
    let other = M::diagonal(&[q(1), q(3), q(2)]);
    let r = verify_covariants(&sys, &other);
    assert!(!r.pass());
    assert!(r.find("annihilates").is_some());
}

#[test]
fn unbreakable_report_rejects_merged_components() {
    let s = M::diagonal(&[q(1), q(-1), q(0)]);
    let comps = unbreakable_components(&s).unwrap();
    assert!(verify_unbreakable(&s, &comps).pass());
    let merged = vec![s.clone()];
    let r = verify_unbreakable(&s, &merged);
    assert!(!r.find("unbreakable").unwrap().pass);
    let overlapping = vec![s.clone(), M::zeros(3)];
    assert!(!verify_unbreakable(&s, &overlapping).pass());
}

#[test]
fn apply_report_rejects_a_wrong_split() {
    let m = M::from_i64_rows(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, -1]]);
    let f = Poly::from_i64s(&[1, -1, 0, 1]);
    let good = schwerdtfeger_eval(&f, &m).unwrap();
    assert!(verify_apply(&f, &m, &good).pass());
    let mut bad = good.clone();
    std::mem::swap(&mut bad.semisimple_part, &mut bad.nilpotent_part);
    let r = verify_apply(&f, &m, &bad);
    assert!(!r.find("parts").unwrap().pass);
    assert!(r.find("value").unwrap().pass);
}
