//! Bézout covariant systems built at a generic root of each irreducible
//! factor and descended to `Q[X]` by the coefficient-wise trace.
//!
//! For a factor `m_i` of multiplicity `μ_i` and `R_i = Q[Y]/(m_i)`, the
//! generic data are
//!
//! * `G_i = (m_i/(X−Y))^{μ_i} · Π_{j≠i} m_j^{μ_j}` over `R_i`,
//! * `B_i` with `B_i·G_i + L·(X−Y)^{μ_i} = 1` and `deg B_i < μ_i`,
//! * `C_i = B_i·G_i`.
//!
//! Tracing gives the rational polynomials `E_i = Tr C_i`,
//! `S_i = Tr(Y·C_i)` and `N_i = X·E_i − S_i`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{factor_rational, FactoredMinPoly, Poly};
use crate::report::Report;
use crate::scalar::{Field, MultiQuad, NumberField, NumberFieldElement, Rational};

type NfPoly = Poly<NumberFieldElement>;

/// Generic-root Bézout data for one irreducible factor.
#[derive(Clone, Debug)]
pub struct GenericCovariant {
    pub index: usize,
    pub modulus: Poly<Rational>,
    pub multiplicity: usize,
    pub field: NumberField,
    pub g: NfPoly,
    pub b: NfPoly,
    pub c: NfPoly,
}

#[derive(Clone, Debug)]
pub struct CovariantSystem {
    pub factored: FactoredMinPoly,
    /// `m = Π m_i^{μ_i}`, monic.
    pub minpoly: Poly<Rational>,
    pub generics: Vec<GenericCovariant>,
    pub e_polys: Vec<Poly<Rational>>,
    pub s_polys: Vec<Poly<Rational>>,
    pub n_polys: Vec<Poly<Rational>>,
}

impl CovariantSystem {
    pub fn len(&self) -> usize {
        self.generics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generics.is_empty()
    }

    /// `S(X) = Σ S_i(X)`, of degree `< deg m`.
    pub fn s_poly(&self) -> Poly<Rational> {
        self.s_polys.iter().fold(Poly::zero(), |acc, s| &acc + s)
    }

    /// `N(X) = X − S(X)`.
    pub fn n_poly(&self) -> Poly<Rational> {
        &Poly::x() - &self.s_poly()
    }

    /// Index of the factor `X`, if present (always the last one).
    pub fn zero_factor_index(&self) -> Option<usize> {
        self.factored.zero_factor_index()
    }
}

/// Builds the covariant system of a complete factorization.
pub fn build_covariant_system(factored: &FactoredMinPoly) -> Result<CovariantSystem> {
    let minpoly = factored.product();
    let lifted: Vec<NfPoly> = factored.factors.iter().map(|(m, _)| m.lift()).collect();
    let mut generics = Vec::with_capacity(factored.len());
    let mut e_polys = Vec::with_capacity(factored.len());
    let mut s_polys = Vec::with_capacity(factored.len());
    let mut n_polys = Vec::with_capacity(factored.len());

    for (i, (m_i, mu)) in factored.factors.iter().enumerate() {
        let field = NumberField::new(m_i)?;
        let y = field.generator();
        let x_minus_y = Poly::linear(&y);
        let h = lifted[i].exact_div(&x_minus_y)?;
        let mut g = h.pow(*mu as u32);
        for (j, (_, mu_j)) in factored.factors.iter().enumerate() {
            if j != i {
                g = &g * &lifted[j].pow(*mu_j as u32);
            }
        }
        let (gcd, b, _) = Poly::ext_gcd(&g, &x_minus_y.pow(*mu as u32))?;
        if !gcd.is_one() {
            return Err(Error::Internal(format!(
                "Bezout gcd for factor {} is not 1",
                m_i.to_text()
            )));
        }
        let c = &b * &g;
        let e = c.trace_coeffwise(&field)?;
        let s = c.scale(&y).trace_coeffwise(&field)?;
        let n = &(&Poly::x() * &e) - &s;
        generics.push(GenericCovariant {
            index: i,
            modulus: m_i.clone(),
            multiplicity: *mu,
            field,
            g,
            b,
            c,
        });
        e_polys.push(e);
        s_polys.push(s);
        n_polys.push(n);
    }

    let total = e_polys.iter().fold(Poly::zero(), |acc, e| &acc + e);
    if !total.is_one() {
        return Err(Error::PartitionOfUnityFailure);
    }
    Ok(CovariantSystem {
        factored: factored.clone(),
        minpoly,
        generics,
        e_polys,
        s_polys,
        n_polys,
    })
}

/// Minimal polynomial, its factorization, and the covariant system of `m`.
pub fn covariants_of(m: &Matrix<Rational>) -> Result<CovariantSystem> {
    let minpoly = m.minimal_polynomial();
    build_covariant_system(&factor_rational(&minpoly)?)
}

/// The projectors `E_i(M)`.
pub fn materialize_projectors(
    sys: &CovariantSystem,
    m: &Matrix<Rational>,
) -> Result<Vec<Matrix<Rational>>> {
    if !m.horner_eval(&sys.minpoly).is_zero() {
        return Err(Error::SystemMatrixMismatch);
    }
    Ok(sys.e_polys.iter().map(|e| m.horner_eval(e)).collect())
}

/// One root of a split quadratic factor and its individual covariant
/// polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitCovariant {
    pub eigenvalue: MultiQuad,
    pub covariant: Poly<MultiQuad>,
}

/// Roots `(−p ± √disc)/2` of the quadratic factor `i` in `Q(√d)`, each
/// with `C_i(X)` evaluated at `Y = λ`. The `+` root comes first.
pub fn split_covariants_over_extension(
    sys: &CovariantSystem,
    i: usize,
    d: i64,
) -> Result<Vec<SplitCovariant>> {
    let generic = sys
        .generics
        .get(i)
        .ok_or_else(|| Error::DimensionMismatch(format!("no factor {i}")))?;
    let roots = quadratic_roots(&generic.modulus, d)?;
    Ok(roots
        .into_iter()
        .map(|lambda| {
            let covariant = Poly::new(
                generic
                    .c
                    .coeffs()
                    .iter()
                    .map(|coef| coef.residue().lift::<MultiQuad>().eval(&lambda))
                    .collect(),
            );
            SplitCovariant {
                eigenvalue: lambda,
                covariant,
            }
        })
        .collect())
}

/// Square root of a nonzero rational in the multi-quadratic closure.
pub fn sqrt_signed(q: &Rational) -> Result<MultiQuad> {
    if *q > <Rational as Field>::zero() {
        MultiQuad::sqrt_rational(q)
    } else {
        let r = MultiQuad::sqrt_rational(&-q)?;
        Ok(&r * &MultiQuad::sqrt_of_squarefree(-1))
    }
}

/// `√disc` of the monic quadratic, if it lies in `Q(√d)`.
pub fn discriminant_root(m: &Poly<Rational>, d: i64) -> Result<MultiQuad> {
    if m.degree() != Some(2) {
        return Err(Error::DoesNotSplit);
    }
    let (p, q) = (m.coeff(1), m.coeff(0));
    let disc = &p * &p - Rational::from_integer(4.into()) * &q;
    if disc == <Rational as Field>::zero() {
        return Err(Error::DoesNotSplit);
    }
    let root = sqrt_signed(&disc)?;
    let labels: Vec<i64> = root.coordinates().keys().copied().collect();
    if labels != [d] {
        return Err(Error::DoesNotSplit);
    }
    Ok(root)
}

fn quadratic_roots(m: &Poly<Rational>, d: i64) -> Result<[MultiQuad; 2]> {
    let root = discriminant_root(m, d)?;
    let half = MultiQuad::from_rational(Rational::new(1.into(), 2.into()));
    let minus_p = MultiQuad::from_rational(-m.coeff(1));
    Ok([&(&minus_p + &root) * &half, &(&minus_p - &root) * &half])
}

/// Partition of unity, orthogonal nonzero idempotents and the rank sum
/// for the system of `m`.
pub fn verify_covariants(sys: &CovariantSystem, m: &Matrix<Rational>) -> Report {
    let mut r = Report::new("covariants");
    let total = sys.e_polys.iter().fold(Poly::zero(), |acc, e| &acc + e);
    r.check(
        "partition-of-unity",
        "the covariant polynomials sum to 1",
        total.is_one(),
        format!("Σ E_i(X) = {}", total.to_text()),
    );
    let e = match materialize_projectors(sys, m) {
        Ok(e) => e,
        Err(err) => {
            r.check("annihilates", "m(M) = 0", false, err.to_string());
            return r;
        }
    };
    let mut bad = Vec::new();
    for i in 0..e.len() {
        if e[i].is_zero() {
            bad.push(format!("E_{} = 0", i + 1));
        }
        for j in 0..e.len() {
            let prod = &e[i] * &e[j];
            let ok = if i == j { prod == e[i] } else { prod.is_zero() };
            if !ok {
                bad.push(format!("E_{} E_{}", i + 1, j + 1));
            }
        }
    }
    r.check(
        "orthogonal-idempotents",
        "E_i(M) E_j(M) = δ_ij E_i(M), E_i(M) ≠ 0",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} projectors", e.len())
        } else {
            format!("failed: {}", bad.join(", "))
        },
    );
    let rank_sum: usize = e.iter().map(|p| p.rank()).sum();
    r.check(
        "rank-sum",
        "Σ rank E_i(M) = n",
        rank_sum == m.order(),
        format!("Σ rank = {rank_sum}, n = {}", m.order()),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<Rational>;
    type M = Matrix<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn system(m: &P) -> CovariantSystem {
        build_covariant_system(&factor_rational(m).unwrap()).unwrap()
    }

    #[test]
    fn linear_factors() {
        let sys = system(&P::from_i64s(&[0, -1, 1]));
        // Factors in canonical order: X − 1 then X.
        assert_eq!(sys.factored.factors[0].0, P::from_i64s(&[-1, 1]));
        assert_eq!(sys.e_polys[0], P::from_i64s(&[0, 1]));
        assert_eq!(sys.e_polys[1], P::from_i64s(&[1, -1]));
        assert_eq!(sys.generics[1].b.coeff(0).residue(), &P::from_i64s(&[-1]));
    }

    #[test]
    fn repeated_linear_factor() {
        let sys = system(&P::from_i64s(&[4, -4, 1]));
        assert_eq!(sys.len(), 1);
        assert_eq!(sys.e_polys[0], P::one());
        assert_eq!(sys.s_polys[0], P::from_i64s(&[2]));
        assert_eq!(sys.n_polys[0], P::from_i64s(&[-2, 1]));
    }

    #[test]
    fn quadratic_generic_data() {
        let sys = system(&P::from_i64s(&[-2, 0, 1]));
        let gen = &sys.generics[0];
        let y = gen.field.generator();
        assert_eq!(
            gen.g,
            Poly::new(vec![y.clone(), <NumberFieldElement as Field>::one()])
        );
        assert_eq!(
            gen.b,
            Poly::constant(y.mul_ref(&NumberFieldElement::from_rational(&q(1, 4))))
        );
        assert_eq!(
            gen.c,
            Poly::new(vec![
                NumberFieldElement::from_rational(&q(1, 2)),
                y.mul_ref(&NumberFieldElement::from_rational(&q(1, 4))),
            ])
        );
        assert_eq!(sys.e_polys[0], P::one());
        assert_eq!(sys.s_polys[0], P::x());
        assert!(sys.n_polys[0].is_zero());
    }

    #[test]
    fn projector_examples() {
        let diag = M::diagonal(&[q(1, 1), q(0, 1)]);
        let sys = covariants_of(&diag).unwrap();
        let e = materialize_projectors(&sys, &diag).unwrap();
        assert_eq!(
            e,
            vec![
                M::diagonal(&[q(1, 1), q(0, 1)]),
                M::diagonal(&[q(0, 1), q(1, 1)])
            ]
        );

        let id = M::identity(2);
        let e = materialize_projectors(&covariants_of(&id).unwrap(), &id).unwrap();
        assert_eq!(e, vec![M::identity(2)]);
    }

    #[test]
    fn projectors_of_companion() {
        let m = &P::from_i64s(&[-2, 0, 1]) * &P::from_i64s(&[-1, 1]);
        let c = M::companion(&m);
        let e = materialize_projectors(&covariants_of(&c).unwrap(), &c).unwrap();
        assert_eq!(e.len(), 2);
        let mut ranks: Vec<usize> = e.iter().map(|p| p.rank()).collect();
        ranks.sort();
        assert_eq!(ranks, vec![1, 2]);
        assert_eq!(&e[0] + &e[1], M::identity(3));
        for (i, a) in e.iter().enumerate() {
            for (j, b) in e.iter().enumerate() {
                let prod = a * b;
                if i == j {
                    assert_eq!(&prod, a);
                } else {
                    assert!(prod.is_zero());
                }
            }
        }
    }

    #[test]
    fn mismatch_detected() {
        let sys = system(&P::from_i64s(&[-1, 1]));
        assert_eq!(
            materialize_projectors(&sys, &M::scalar(2, q(2, 1))),
            Err(Error::SystemMatrixMismatch)
        );
    }

    #[test]
    fn split_real_quadratic() {
        let sys = system(&P::from_i64s(&[-2, 0, 1]));
        let parts = split_covariants_over_extension(&sys, 0, 2).unwrap();
        let r2 = MultiQuad::sqrt_of_squarefree(2);
        assert_eq!(parts[0].eigenvalue, r2);
        assert_eq!(parts[1].eigenvalue, -&r2);
        // (X + λ)·(λ/4) for λ = ±√2.
        let quarter = MultiQuad::from_rational(q(1, 4));
        for part in &parts {
            let l = &part.eigenvalue;
            let expected =
                &Poly::new(vec![l.clone(), MultiQuad::one()]) * &Poly::constant(l * &quarter);
            assert_eq!(part.covariant, expected);
        }
        assert_eq!(&parts[0].covariant + &parts[1].covariant, Poly::one());
    }

    #[test]
    fn split_complex_quadratic() {
        let sys = system(&P::from_i64s(&[1, 0, 1]));
        let parts = split_covariants_over_extension(&sys, 0, -1).unwrap();
        assert_eq!(parts[1].eigenvalue, parts[0].eigenvalue.conjugate());
        assert_eq!(
            parts[1].covariant,
            parts[0].covariant.map(|c| c.conjugate())
        );
    }

    #[test]
    fn split_rejects_wrong_extension_or_degree() {
        let sys = system(&P::from_i64s(&[-2, 0, 1]));
        assert_eq!(
            split_covariants_over_extension(&sys, 0, 3),
            Err(Error::DoesNotSplit)
        );
        let sys = system(&P::from_i64s(&[-3, 1]));
        assert_eq!(
            split_covariants_over_extension(&sys, 0, 2),
            Err(Error::DoesNotSplit)
        );
    }
}
