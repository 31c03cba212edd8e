//! Polynomial functions of a matrix through its covariants.
//!
//! For `f ∈ Q[X]` the value `f(M)` is evaluated factor by factor as the
//! trace of `Σ_{k<μ_i} Φ_k(Y)·(X−Y)^k·C_i(X)`, where `Φ_k` is the `k`-th
//! Hasse derivative of `f`. The `k = 0` terms give the semisimple part of
//! `f(M)` and the remaining terms its nilpotent part.

use std::cmp::Ordering;

use crate::covariant::{covariants_of, CovariantSystem, GenericCovariant};
use crate::decompose::{fine_decompose, sn_decompose, FineComponent, FineDecomposition};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{FactoredMinPoly, Poly};
use crate::report::Report;
use crate::scalar::{Field, NumberField, NumberFieldElement, Rational};

type M = Matrix<Rational>;
type P = Poly<Rational>;

/// Input factors that `f` sends to one conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FClass {
    /// Minimal polynomial over `Q` of `f(λ)` for `λ` in the class.
    pub image_minpoly: P,
    /// Indices into the input factorization, ascending.
    pub factors: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct MatFunResult {
    pub value: M,
    pub semisimple_part: M,
    pub nilpotent_part: M,
    /// `S(f(M)) = s_poly(M)` and `N(f(M)) = n_poly(M)`.
    pub s_poly: P,
    pub n_poly: P,
    pub classes: Vec<FClass>,
    /// The first omitted term of each truncated sum vanishes at `M`.
    pub truncation_exact: bool,
}

/// Per-factor polynomials `Tr(Φ_0(Y) C_i)` and `Tr(Σ_{1≤k<μ} Φ_k(Y)(X−Y)^k C_i)`,
/// plus the `k = μ` term.
struct FactorTerms {
    semisimple: P,
    nilpotent: P,
    overflow: P,
}

fn factor_terms(f: &P, gen: &GenericCovariant) -> Result<FactorTerms> {
    let field = &gen.field;
    let y = field.generator();
    let x_minus_y = Poly::linear(&y);
    let mut power = Poly::<NumberFieldElement>::one();
    let mut semisimple = P::zero();
    let mut nilpotent = P::zero();
    let mut overflow = P::zero();
    for k in 0..=gen.multiplicity {
        let phi = f.hasse_derivative(k).lift::<NumberFieldElement>().eval(&y);
        let term = (&power * &gen.c).scale(&phi).trace_coeffwise(field)?;
        match k {
            0 => semisimple = term,
            _ if k < gen.multiplicity => nilpotent = &nilpotent + &term,
            _ => overflow = term,
        }
        power = &power * &x_minus_y;
    }
    Ok(FactorTerms {
        semisimple,
        nilpotent,
        overflow,
    })
}

fn image_of_generator(f: &P, field: &NumberField) -> NumberFieldElement {
    field.attach(&f.lift::<NumberFieldElement>().eval(&field.generator()))
}

/// Groups the factors of `factored` by the minimal polynomial of `f(Y)` in
/// each `Q[Y]/(m_i)`. Classes are listed in the canonical order of their
/// image minimal polynomials.
pub fn f_equivalence_classes(f: &P, factored: &FactoredMinPoly) -> Result<Vec<FClass>> {
    let mut classes: Vec<FClass> = Vec::new();
    for (i, (m_i, _)) in factored.factors.iter().enumerate() {
        let field = NumberField::new(m_i)?;
        let image = image_of_generator(f, &field);
        let minpoly = field.multiplication_matrix(&image).minimal_polynomial();
        match classes.iter_mut().find(|c| c.image_minpoly == minpoly) {
            Some(c) => c.factors.push(i),
            None => classes.push(FClass {
                image_minpoly: minpoly,
                factors: vec![i],
            }),
        }
    }
    classes.sort_by(|a, b| factor_order(&a.image_minpoly, &b.image_minpoly));
    Ok(classes)
}

fn factor_order(a: &P, b: &P) -> Ordering {
    crate::poly::canonical_order(a, b)
}

pub fn schwerdtfeger_eval(f: &P, m: &M) -> Result<MatFunResult> {
    let sys = covariants_of(m)?;
    schwerdtfeger_with_system(f, m, &sys)
}

pub(crate) fn schwerdtfeger_with_system(
    f: &P,
    m: &M,
    sys: &CovariantSystem,
) -> Result<MatFunResult> {
    let mut s_poly = P::zero();
    let mut n_poly = P::zero();
    let mut truncation_exact = true;
    for gen in &sys.generics {
        let t = factor_terms(f, gen)?;
        s_poly = &s_poly + &t.semisimple;
        n_poly = &n_poly + &t.nilpotent;
        truncation_exact &= m.horner_eval(&t.overflow).is_zero();
    }
    let s_poly = s_poly.rem(&sys.minpoly)?;
    let n_poly = n_poly.rem(&sys.minpoly)?;
    let semisimple_part = m.horner_eval(&s_poly);
    let nilpotent_part = m.horner_eval(&n_poly);
    Ok(MatFunResult {
        value: &semisimple_part + &nilpotent_part,
        semisimple_part,
        nilpotent_part,
        s_poly,
        n_poly,
        classes: f_equivalence_classes(f, &sys.factored)?,
        truncation_exact,
    })
}

/// `f(M) = Σ_i Tr(f(Y)·C_i)(M)` for semisimple `M`.
pub fn sylvester_eval(f: &P, m: &M) -> Result<M> {
    let sys = covariants_of(m)?;
    if sys.factored.factors.iter().any(|(_, mu)| *mu > 1) {
        return Err(Error::NotSemisimple);
    }
    let mut total = P::zero();
    for gen in &sys.generics {
        let image = image_of_generator(f, &gen.field);
        total = &total + &gen.c.scale(&image).trace_coeffwise(&gen.field)?;
    }
    Ok(m.horner_eval(&total.rem(&sys.minpoly)?))
}

/// `S(M)^h = Σ_i Tr(Y^h·C_i)(M)`; negative `h` requires `M` nonsingular.
pub fn semisimple_power(m: &M, h: i32) -> Result<M> {
    let sys = covariants_of(m)?;
    if h < 0 && sys.factored.has_zero_eigenvalue() {
        return Err(Error::SingularMatrix);
    }
    let mut total = P::zero();
    for gen in &sys.generics {
        let y = gen.field.generator();
        let base = if h < 0 { y.invert()? } else { y };
        let mut power = gen.field.constant(&<Rational as Field>::one());
        for _ in 0..h.unsigned_abs() {
            power = power.mul_ref(&base);
        }
        total = &total + &gen.c.scale(&power).trace_coeffwise(&gen.field)?;
    }
    Ok(m.horner_eval(&total.rem(&sys.minpoly)?))
}

/// Fine decomposition of `f(M)` assembled from the per-factor terms of
/// `M`, one component per `f`-equivalence class. Component polynomials are
/// polynomials in `M`.
pub fn fine_of_image(f: &P, m: &M) -> Result<FineDecomposition> {
    let sys = covariants_of(m)?;
    let classes = f_equivalence_classes(f, &sys.factored)?;
    let terms: Vec<FactorTerms> = sys
        .generics
        .iter()
        .map(|g| factor_terms(f, g))
        .collect::<Result<_>>()?;
    let mut components = Vec::with_capacity(classes.len());
    let mut zero_factor_index = None;
    for (h, class) in classes.iter().enumerate() {
        let mut s_poly = P::zero();
        let mut n_poly = P::zero();
        for &i in &class.factors {
            s_poly = &s_poly + &terms[i].semisimple;
            n_poly = &n_poly + &terms[i].nilpotent;
        }
        let s_poly = s_poly.rem(&sys.minpoly)?;
        let n_poly = n_poly.rem(&sys.minpoly)?;
        let s = m.horner_eval(&s_poly);
        let n = m.horner_eval(&n_poly);
        let multiplicity = n
            .nilpotency_index()
            .ok_or_else(|| Error::Internal("nilpotent part of f(M) is not nilpotent".into()))?;
        if class.image_minpoly.is_x() {
            zero_factor_index = Some(h);
        }
        components.push(FineComponent {
            factor: class.image_minpoly.clone(),
            multiplicity,
            s,
            n,
            s_poly,
            n_poly,
        });
    }
    Ok(FineDecomposition {
        components,
        zero_factor_index,
    })
}

/// Equality of factors, multiplicities and matrices, ignoring which
/// matrix the component polynomials are written in.
pub fn same_structure(a: &FineDecomposition, b: &FineDecomposition) -> bool {
    a.zero_factor_index == b.zero_factor_index
        && a.components.len() == b.components.len()
        && a.components.iter().zip(&b.components).all(|(x, y)| {
            x.factor == y.factor && x.multiplicity == y.multiplicity && x.s == y.s && x.n == y.n
        })
}

/// Cross-checks a Schwerdtfeger evaluation against Horner evaluation and
/// the decomposition of the image.
pub fn verify_apply(f: &P, m: &M, r: &MatFunResult) -> Report {
    let mut rep = Report::new("apply");
    let image = m.horner_eval(f);
    rep.check(
        "value",
        "f(M) by covariants equals Horner evaluation",
        r.value == image,
        "matrices compared",
    );
    match sn_decompose(&image) {
        Ok(sn) => {
            rep.check(
                "parts",
                "the two sums are the semisimple and nilpotent parts of f(M)",
                r.semisimple_part == sn.s && r.nilpotent_part == sn.n,
                "compared with sn of f(M)",
            );
        }
        Err(e) => {
            rep.check(
                "parts",
                "the two sums are the semisimple and nilpotent parts of f(M)",
                false,
                e.to_string(),
            );
        }
    }
    match sn_decompose(m) {
        Ok(sn) => {
            rep.check(
                "commutes-with-s",
                "S(f(M)) = f(S(M))",
                r.semisimple_part == sn.s.horner_eval(f),
                "compared with f evaluated at S(M)",
            );
        }
        Err(e) => {
            rep.check("commutes-with-s", "S(f(M)) = f(S(M))", false, e.to_string());
        }
    }
    rep.check(
        "truncation",
        "the first omitted term of each factor's sum vanishes",
        r.truncation_exact,
        "k = μ_i term evaluated at M",
    );
    let fine =
        fine_of_image(f, m).and_then(|a| fine_decompose(&image).map(|b| same_structure(&a, &b)));
    rep.check(
        "fine-of-image",
        "merging per-factor terms by f-equivalence gives the fine decomposition of f(M)",
        fine == Ok(true),
        match fine {
            Ok(b) => format!("structures equal: {b}"),
            Err(e) => e.to_string(),
        },
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{fine_decompose, sn_decompose};
    use crate::poly::factor_rational;

    fn p(c: &[i64]) -> P {
        P::from_i64s(c)
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn square_of_jordan_block() {
        let j = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let r = schwerdtfeger_eval(&p(&[0, 0, 1]), &j).unwrap();
        assert_eq!(r.value, M::from_i64_rows(&[&[1, 2], &[0, 1]]));
        assert_eq!(r.semisimple_part, M::identity(2));
        assert_eq!(r.nilpotent_part, M::from_i64_rows(&[&[0, 2], &[0, 0]]));
        assert!(r.truncation_exact);
    }

    #[test]
    fn square_of_companion() {
        let c = M::companion(&p(&[-2, 0, 1]));
        let r = schwerdtfeger_eval(&p(&[0, 0, 1]), &c).unwrap();
        assert_eq!(r.value, M::scalar(2, q(2)));
        assert_eq!(r.semisimple_part, M::scalar(2, q(2)));
        assert!(r.nilpotent_part.is_zero());
    }

    #[test]
    fn cubic_against_horner() {
        let f = p(&[0, -1, 0, 1]);
        let c = M::companion(&p(&[1, -2, 1]));
        let r = schwerdtfeger_eval(&f, &c).unwrap();
        let image = c.horner_eval(&f);
        assert_eq!(r.value, image);
        let sn = sn_decompose(&image).unwrap();
        assert_eq!(r.semisimple_part, sn.s);
        assert_eq!(r.nilpotent_part, sn.n);
    }

    #[test]
    fn sylvester_examples() {
        let d = M::diagonal(&[q(1), q(2)]);
        assert_eq!(
            sylvester_eval(&p(&[1, 1]), &d).unwrap(),
            M::diagonal(&[q(2), q(3)])
        );
        let c = M::companion(&p(&[-2, 0, 1]));
        assert_eq!(
            sylvester_eval(&p(&[0, 0, 1]), &c).unwrap(),
            M::scalar(2, q(2))
        );
        let j = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(sylvester_eval(&p(&[0, 1]), &j), Err(Error::NotSemisimple));
    }

    #[test]
    fn equivalence_examples() {
        let fac = factor_rational(&p(&[-1, 0, 1])).unwrap();
        let classes = f_equivalence_classes(&p(&[0, 0, 1]), &fac).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].image_minpoly, p(&[-1, 1]));
        assert_eq!(classes[0].factors, vec![0, 1]);

        let fac = factor_rational(&(&p(&[-1, 0, 1]) * &p(&[-2, 0, 1]))).unwrap();
        assert_eq!(
            f_equivalence_classes(&P::x(), &fac).unwrap().len(),
            fac.len()
        );

        let fac = factor_rational(&p(&[-2, 0, 1])).unwrap();
        let classes = f_equivalence_classes(&p(&[0, 0, 1]), &fac).unwrap();
        assert_eq!(classes[0].image_minpoly, p(&[-2, 1]));
    }

    #[test]
    fn fine_of_image_examples() {
        let d = M::diagonal(&[q(1), q(-1)]);
        let fd = fine_of_image(&p(&[0, 0, 1]), &d).unwrap();
        assert_eq!(fd.components.len(), 1);
        assert_eq!(fd.components[0].s, M::identity(2));

        let m = M::companion(&(&p(&[-2, 0, 1]) * &p(&[-1, 1])));
        assert!(same_structure(
            &fine_of_image(&P::x(), &m).unwrap(),
            &fine_decompose(&m).unwrap()
        ));

        let f = p(&[0, 1, 1]);
        let image = m.horner_eval(&f);
        assert!(same_structure(
            &fine_of_image(&f, &m).unwrap(),
            &fine_decompose(&image).unwrap()
        ));
    }

    #[test]
    fn fine_of_image_merges_nilpotent_classes() {
        // f = X² sends 1 and −1 to 1; the Jordan block at 1 keeps a
        // nilpotent part after squaring.
        let m = M::block_diag(&[M::from_i64_rows(&[&[1, 1], &[0, 1]]), M::scalar(1, q(-1))]);
        let f = p(&[0, 0, 1]);
        let image = m.horner_eval(&f);
        assert!(same_structure(
            &fine_of_image(&f, &m).unwrap(),
            &fine_decompose(&image).unwrap()
        ));
    }

    #[test]
    fn semisimple_powers() {
        let m = M::companion(&(&p(&[-2, 0, 1]) * &p(&[1, -2, 1])));
        let s = sn_decompose(&m).unwrap().s;
        let s_inv = s.inverse().unwrap();
        for h in -3i32..=3 {
            let expected = if h >= 0 {
                s.pow(h as u32)
            } else {
                s_inv.pow((-h) as u32)
            };
            assert_eq!(semisimple_power(&m, h).unwrap(), expected, "h = {h}");
        }
    }
}
