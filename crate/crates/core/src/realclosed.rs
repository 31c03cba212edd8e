//! The complete multiplicative decomposition `M = ΔΣU` and the exact
//! singular value decomposition, over the multi-quadratic closure of `Q`.
//!
//! Only the fragment of the real algebraic numbers reachable from the
//! input is built: `√q` for each complex pair `X² + pX + q`, the square
//! root of the discriminant for each real pair, and `√λ_i` for each
//! eigenvalue of `AᵀA`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::covariant::{
    covariants_of, materialize_projectors, split_covariants_over_extension, sqrt_signed,
};
use crate::decompose::sn_from_system;
use crate::error::{Error, Result};
use crate::matrix::{vectors_rank, Matrix};
use crate::poly::Poly;
use crate::report::Report;
use crate::scalar::{Field, MultiQuad, Rational, Sign};

type M = Matrix<Rational>;
type MQ = Matrix<MultiQuad>;
type P = Poly<Rational>;

fn zero() -> Rational {
    <Rational as Field>::zero()
}

fn radicand_label(x: &MultiQuad) -> Option<i64> {
    let labels: Vec<i64> = x
        .coordinates()
        .keys()
        .copied()
        .filter(|&l| l != 1)
        .collect();
    match labels.as_slice() {
        [l] => Some(*l),
        _ => None,
    }
}

/// How an irreducible factor contributes to `Δ` and `Σ`.
#[derive(Clone, Debug, PartialEq)]
pub enum PartKind {
    /// `X − γ`.
    Rational { gamma: Rational },
    /// `X² + pX + q` with `p² < 4q`; `λλ̄ = q`.
    ComplexPair { p: Rational, sqrt_q: MultiQuad },
    /// `X² + pX + q` with `p² > 4q`, split over `Q(√d)`.
    RealPair { roots: [MultiQuad; 2], d: i64 },
}

/// Contribution of one factor, restricted to its projector `E_i(M)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Part {
    pub factor: P,
    pub kind: PartKind,
    pub projector: M,
    /// Eigenvalues of `Δ` on the block, totally real.
    pub delta_eigenvalues: Vec<MultiQuad>,
}

impl Part {
    fn largest(&self) -> &MultiQuad {
        self.delta_eigenvalues
            .iter()
            .max_by(|a, b| cmp_real(a, b))
            .expect("a part has at least one eigenvalue")
    }

    fn sign_hint(&self) -> i8 {
        match &self.kind {
            PartKind::Rational { gamma } => Sign::of_rational(gamma).as_i8(),
            _ => 0,
        }
    }
}

/// Order of two totally real elements.
pub fn cmp_real(a: &MultiQuad, b: &MultiQuad) -> Ordering {
    match a.sub_ref(b).sign().expect("totally real comparison") {
        Sign::Negative => Ordering::Less,
        Sign::Zero => Ordering::Equal,
        Sign::Positive => Ordering::Greater,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaSigmaU {
    pub delta: MQ,
    pub sigma: MQ,
    pub u: MQ,
    /// Squarefree labels adjoined, ascending.
    pub radicands_used: Vec<i64>,
    /// Per-factor data, by descending largest `|eigenvalue|`, positive
    /// rational eigenvalues before negative ones of equal modulus.
    pub parts: Vec<Part>,
}

pub fn complete_mjc(m: &M) -> Result<DeltaSigmaU> {
    if m.is_singular() {
        return Err(Error::SingularMatrix);
    }
    let sys = covariants_of(m)?;
    if let Some((f, _)) = sys
        .factored
        .factors
        .iter()
        .find(|(f, _)| f.degree() > Some(2))
    {
        return Err(Error::FactorDegreeTooHigh {
            degree: f.degree().unwrap(),
        });
    }
    let n = m.order();
    let projectors = materialize_projectors(&sys, m)?;
    let m_mq: MQ = m.lift();
    let mut delta = MQ::zeros(n);
    let mut sigma_formula = MQ::zeros(n);
    let mut radicands = BTreeSet::new();
    let mut parts = Vec::with_capacity(sys.len());

    for (i, (factor, _)) in sys.factored.factors.iter().enumerate() {
        let e: MQ = projectors[i].lift();
        let s_i: MQ = m.horner_eval(&sys.s_polys[i]).lift();
        let (kind, eigs) = if factor.degree() == Some(1) {
            let gamma = -factor.coeff(0);
            let abs = MultiQuad::from_rational(num_traits::Signed::abs(&gamma));
            let sign = MultiQuad::from_i64(Sign::of_rational(&gamma).as_i8() as i64);
            delta = &delta + &e.scale(&abs);
            sigma_formula = &sigma_formula + &e.scale(&sign);
            (PartKind::Rational { gamma }, vec![abs])
        } else {
            let (p, q) = (factor.coeff(1), factor.coeff(0));
            let disc = &p * &p - Rational::from_integer(4.into()) * &q;
            if disc < zero() {
                let sqrt_q = MultiQuad::sqrt_rational(&q)?;
                radicands.extend(radicand_label(&sqrt_q));
                delta = &delta + &e.scale(&sqrt_q);
                sigma_formula = &sigma_formula + &s_i.scale(&sqrt_q.invert()?);
                (
                    PartKind::ComplexPair {
                        p,
                        sqrt_q: sqrt_q.clone(),
                    },
                    vec![sqrt_q],
                )
            } else {
                let d = radicand_label(&sqrt_signed(&disc)?).ok_or(Error::DoesNotSplit)?;
                radicands.insert(d);
                let split = split_covariants_over_extension(&sys, i, d)?;
                let mut eigs = Vec::with_capacity(2);
                for part in &split {
                    let c = m_mq.horner_eval(&part.covariant);
                    let abs = part.eigenvalue.abs()?;
                    let sign = MultiQuad::from_i64(part.eigenvalue.sign()?.as_i8() as i64);
                    delta = &delta + &c.scale(&abs);
                    sigma_formula = &sigma_formula + &c.scale(&sign);
                    eigs.push(abs);
                }
                let roots = [split[0].eigenvalue.clone(), split[1].eigenvalue.clone()];
                (PartKind::RealPair { roots, d }, eigs)
            }
        };
        parts.push(Part {
            factor: factor.clone(),
            kind,
            projector: projectors[i].clone(),
            delta_eigenvalues: eigs,
        });
    }

    let sn = sn_from_system(m, sys);
    let s_mq: MQ = sn.s.lift();
    let sigma = &s_mq * &delta.inverse()?;
    if sigma != sigma_formula {
        return Err(Error::Internal(
            "S·Δ⁻¹ disagrees with the per-factor formula for Σ".into(),
        ));
    }
    let u: MQ = (&M::identity(n) + &(&sn.s.inverse()? * &sn.n)).lift();
    parts.sort_by(|a, b| {
        cmp_real(b.largest(), a.largest()).then_with(|| b.sign_hint().cmp(&a.sign_hint()))
    });
    Ok(DeltaSigmaU {
        delta,
        sigma,
        u,
        radicands_used: radicands.into_iter().collect(),
        parts,
    })
}

fn generic_squarefree(p: &Poly<MultiQuad>) -> bool {
    Poly::gcd(p, &p.derivative()).degree() == Some(0)
}

pub fn verify_dsu(m: &M, dsu: &DeltaSigmaU) -> Report {
    let mut r = Report::new("cmjc");
    let n = m.order();
    let m_mq: MQ = m.lift();
    let (d, s, u) = (&dsu.delta, &dsu.sigma, &dsu.u);
    r.check(
        "reassembly",
        "M = Δ Σ U",
        &(d * s) * u == m_mq,
        "Δ·Σ·U compared with M",
    );
    r.check(
        "commute",
        "Δ, Σ and U commute pairwise",
        d.commutes_with(s) && d.commutes_with(u) && s.commutes_with(u),
        "three commutators vanish",
    );
    let nil = u - &MQ::identity(n);
    r.check(
        "unipotent",
        "U − I is nilpotent",
        nil.pow(n as u32).is_zero(),
        format!("(U − I)^{n} = 0"),
    );
    let s_part = crate::decompose::sn_decompose(m).map(|sn| sn.s.lift::<MultiQuad>());
    r.check(
        "semisimple-product",
        "S(M) = Δ Σ",
        s_part.as_ref().is_ok_and(|sp| &(d * s) == sp),
        "Δ·Σ compared with the semisimple part",
    );
    r.check(
        "delta-semisimple",
        "Δ is semisimple",
        generic_squarefree(&d.minimal_polynomial()),
        "minpoly(Δ) is squarefree",
    );
    r.check(
        "sigma-semisimple",
        "Σ is semisimple",
        generic_squarefree(&s.minimal_polynomial()),
        "minpoly(Σ) is squarefree",
    );

    let mut positive = true;
    let mut pos_witness = String::from("every eigenvalue of Δ has sign +1");
    for part in &dsu.parts {
        for e in &part.delta_eigenvalues {
            if e.sign() != Ok(Sign::Positive) {
                positive = false;
                pos_witness = format!(
                    "eigenvalue {e} of Δ on factor {} is not positive",
                    part.factor.to_text()
                );
            }
        }
        // Δ acts on the block as the recorded eigenvalues.
        let block: MQ = part.projector.lift();
        let db = d * &block;
        let ok = match part.delta_eigenvalues.as_slice() {
            [e] => db == block.scale(e),
            [a, b] => {
                // (Δ − a)(Δ − b) vanishes on the block.
                let lhs = &(&db - &block.scale(a)) * &(&db - &block.scale(b));
                lhs.is_zero()
            }
            _ => false,
        };
        if !ok {
            positive = false;
            pos_witness = format!(
                "Δ does not act by the recorded eigenvalues on {}",
                part.factor.to_text()
            );
        }
    }
    r.check(
        "delta-positive",
        "every eigenvalue of Δ is positive",
        positive,
        pos_witness,
    );

    let mut norm_ok = true;
    let mut norm_witness = String::from("Σ has norm-one spectrum on every block");
    for part in &dsu.parts {
        let e: MQ = part.projector.lift();
        let se = s * &e;
        let ok = match &part.kind {
            PartKind::ComplexPair { p, sqrt_q } => {
                // ΣE satisfies X² + (p/√q)X + 1 on the block.
                let coef =
                    MultiQuad::from_rational(p.clone()).mul_ref(&sqrt_q.invert().expect("√q ≠ 0"));
                (&(&(&se * &se) + &se.scale(&coef)) + &e).is_zero()
            }
            _ => &se * &se == e,
        };
        if !ok {
            norm_ok = false;
            norm_witness = format!("Σ fails the norm-one identity on {}", part.factor.to_text());
        }
    }
    r.check(
        "sigma-norm-one",
        "every eigenvalue of Σ has norm 1",
        norm_ok,
        norm_witness,
    );

    let again = complete_mjc(m);
    r.check(
        "recomputation",
        "uniqueness of Δ, Σ and U",
        again.as_ref().is_ok_and(|a| a == dsu),
        "a fresh computation yields identical matrices",
    );
    r
}

/// One term `σ_i A_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SvdTerm {
    pub sigma: MultiQuad,
    pub a: MQ,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SVDResult {
    /// Strictly decreasing singular values.
    pub terms: Vec<SvdTerm>,
}

impl SVDResult {
    pub fn reassemble(&self, n: usize) -> MQ {
        self.terms
            .iter()
            .fold(MQ::zeros(n), |acc, t| &acc + &t.a.scale(&t.sigma))
    }
}

fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let joint: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    let r = vectors_rank(&joint);
    r == vectors_rank(a) && r == vectors_rank(b)
}

/// Positive eigenvalues of `AᵀA` in decreasing order with their
/// projectors.
fn gram_spectrum(a: &M) -> Result<Vec<(Rational, M)>> {
    let b = &a.transpose() * a;
    let sys = covariants_of(&b)?;
    let projectors = materialize_projectors(&sys, &b)?;
    let mut out = Vec::new();
    for ((factor, _), p) in sys.factored.factors.iter().zip(projectors) {
        if factor.is_x() {
            continue;
        }
        if factor.degree() != Some(1) {
            return Err(Error::SingularValuesNotRational);
        }
        let lambda = -factor.coeff(0);
        if lambda <= zero() {
            return Err(Error::Internal("AᵀA has a negative eigenvalue".into()));
        }
        out.push((lambda, p));
    }
    out.sort_by(|x, y| y.0.cmp(&x.0));
    Ok(out)
}

/// Nonzero eigenvalues of `AᵀA`, decreasing.
pub fn gram_eigenvalues(a: &M) -> Result<Vec<Rational>> {
    Ok(gram_spectrum(a)?.into_iter().map(|(l, _)| l).collect())
}

pub fn svd(a: &M) -> Result<SVDResult> {
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let b = &a.transpose() * a;
    if !same_span(&b.kernel_basis(), &a.kernel_basis()) {
        return Err(Error::Internal("Ker AᵀA differs from Ker A".into()));
    }
    let a_mq: MQ = a.lift();
    let mut terms = Vec::new();
    for (lambda, p) in gram_spectrum(a)? {
        let sigma = MultiQuad::sqrt_rational(&lambda)?;
        let ai = (&a_mq * &p.lift()).scale(&sigma.invert()?);
        terms.push(SvdTerm { sigma, a: ai });
    }
    let result = SVDResult { terms };
    let axioms = svd_axioms(a, &result);
    if !axioms.pass() {
        let failed: Vec<String> = axioms.failures().map(|c| c.name.clone()).collect();
        return Err(Error::Internal(format!(
            "SVD axioms failed: {}",
            failed.join(", ")
        )));
    }
    Ok(result)
}

fn svd_axioms(a: &M, cand: &SVDResult) -> Report {
    let mut r = Report::new("svd");
    let n = a.order();
    let terms = &cand.terms;
    r.check(
        "nonempty",
        "an SVD of a nonzero matrix has p ≥ 1 terms",
        !terms.is_empty(),
        format!("{} terms", terms.len()),
    );

    let mut order_ok = true;
    let mut order_witness = String::from("σ_1 > … > σ_p > 0");
    for (i, t) in terms.iter().enumerate() {
        if !t.sigma.is_totally_real() || t.sigma.sign() != Ok(Sign::Positive) {
            order_ok = false;
            order_witness = format!("σ_{} is not a positive real", i + 1);
            break;
        }
        if i > 0 && cmp_real(&terms[i - 1].sigma, &t.sigma) != Ordering::Greater {
            order_ok = false;
            order_witness = format!("σ_{} ≤ σ_{}", i, i + 1);
            break;
        }
    }
    r.check(
        "descending",
        "strictly decreasing positive singular values",
        order_ok,
        order_witness,
    );

    let zero_idx = terms.iter().position(|t| t.a.is_zero());
    r.check(
        "nonzero",
        "each A_i is nonzero",
        zero_idx.is_none(),
        zero_idx.map_or("all nonzero".into(), |i| format!("A_{} = 0", i + 1)),
    );

    let mut pinv_ok = true;
    let mut pinv_witness = String::from("A_i A_i* A_i = A_i for every i");
    for (i, t) in terms.iter().enumerate() {
        if &(&t.a * &t.a.adjoint()) * &t.a != t.a {
            pinv_ok = false;
            pinv_witness = format!("A_{0} A_{0}* A_{0} ≠ A_{0}", i + 1);
            break;
        }
    }
    r.check(
        "partial-isometry",
        "A_i A_i* A_i = A_i",
        pinv_ok,
        pinv_witness,
    );

    let mut orth_ok = true;
    let mut orth_witness = String::from("A_i* A_j = A_i A_j* = 0 for i ≠ j");
    'outer: for (i, s) in terms.iter().enumerate() {
        for (j, t) in terms.iter().enumerate() {
            if i != j && (!(&s.a.adjoint() * &t.a).is_zero() || !(&s.a * &t.a.adjoint()).is_zero())
            {
                orth_ok = false;
                orth_witness = format!("A_{} and A_{} are not orthogonal", i + 1, j + 1);
                break 'outer;
            }
        }
    }
    r.check(
        "orthogonality",
        "A_i* A_j = A_i A_j* = 0 for i ≠ j",
        orth_ok,
        orth_witness,
    );

    r.check(
        "reassembly",
        "A = Σ σ_i A_i",
        cand.reassemble(n) == a.lift(),
        "Σ σ_i A_i compared with A",
    );
    r
}

/// Checks `candidate` against the SVD-system axioms and against `svd(A)`.
pub fn verify_svd_uniqueness(a: &M, candidate: &SVDResult) -> Report {
    let mut r = svd_axioms(a, candidate);
    r.subject = "svd-uniqueness".into();
    let squares_ok = gram_eigenvalues(a).is_ok_and(|eigs| {
        eigs.len() == candidate.terms.len()
            && eigs
                .iter()
                .zip(&candidate.terms)
                .all(|(l, t)| t.sigma.mul_ref(&t.sigma) == MultiQuad::from_rational(l.clone()))
    });
    r.check(
        "squares",
        "σ_i² are the nonzero eigenvalues of AᵀA",
        squares_ok,
        "σ_i² compared with the spectrum of AᵀA",
    );
    let reference = svd(a);
    r.check(
        "matches-svd",
        "uniqueness of the SVD: q = p, τ_i = σ_i, B_i = A_i",
        reference.as_ref().is_ok_and(|s| s == candidate),
        "candidate compared with a fresh SVD",
    );
    r
}

/// Three corrupted variants of an SVD with at least two terms: two terms
/// swapped, `B_1` doubled with `τ_1` halved, and the last term dropped.
pub fn svd_corruptions(s: &SVDResult) -> Vec<(&'static str, SVDResult)> {
    let mut out = Vec::new();
    if s.terms.len() >= 2 {
        let mut swapped = s.clone();
        swapped.terms.swap(0, 1);
        out.push(("swapped", swapped));
    }
    if let Some(first) = s.terms.first() {
        let mut scaled = s.clone();
        scaled.terms[0] = SvdTerm {
            sigma: first
                .sigma
                .mul_ref(&MultiQuad::from_rational(Rational::new(1.into(), 2.into()))),
            a: first.a.scale(&MultiQuad::from_i64(2)),
        };
        out.push(("scaled", scaled));
        let mut dropped = s.clone();
        dropped.terms.pop();
        out.push(("dropped", dropped));
    }
    out
}

/// Distinct norms `N(λ)` of the nonzero eigenvalues, decreasing. Factors
/// of degree above 2 are rejected.
pub fn eigenvalue_norms(a: &M) -> Result<Vec<MultiQuad>> {
    let sys = covariants_of(a)?;
    let mut norms: Vec<MultiQuad> = Vec::new();
    for (factor, _) in &sys.factored.factors {
        if factor.is_x() {
            continue;
        }
        let candidates = match factor.degree() {
            Some(1) => vec![MultiQuad::from_rational(num_traits::Signed::abs(
                &factor.coeff(0),
            ))],
            Some(2) => {
                let (p, q) = (factor.coeff(1), factor.coeff(0));
                let disc = &p * &p - Rational::from_integer(4.into()) * &q;
                if disc < zero() {
                    vec![MultiQuad::sqrt_rational(&q)?]
                } else {
                    let root = sqrt_signed(&disc)?;
                    let half = MultiQuad::from_rational(Rational::new(1.into(), 2.into()));
                    let mp = MultiQuad::from_rational(-p);
                    vec![
                        (&(&mp + &root) * &half).abs()?,
                        (&(&mp - &root) * &half).abs()?,
                    ]
                }
            }
            Some(d) => return Err(Error::FactorDegreeTooHigh { degree: d }),
            None => unreachable!("factors are nonzero"),
        };
        for c in candidates {
            if !norms.contains(&c) {
                norms.push(c);
            }
        }
    }
    norms.sort_by(|x, y| cmp_real(y, x));
    Ok(norms)
}

/// Semisimplicity and symmetry of the projectors for symmetric or normal
/// matrices. Other matrices get an empty report with a note.
pub fn symmetric_spectral_check(a: &M) -> Report {
    let mut r = Report::new("symmetric-spectral");
    let at = a.transpose();
    let symmetric = *a == at;
    let normal = symmetric || (a * &at) == (&at * a);
    if !normal {
        r.note("matrix is not normal: checks skipped");
        return r;
    }
    r.note(if symmetric {
        "matrix is symmetric"
    } else {
        "matrix is normal, not symmetric"
    });
    let sys = match covariants_of(a) {
        Ok(s) => s,
        Err(e) => {
            r.check(
                "covariants",
                "covariant system exists",
                false,
                e.to_string(),
            );
            return r;
        }
    };
    let mp = a.minimal_polynomial();
    r.check(
        "semisimple",
        "a normal matrix is semisimple",
        mp.is_squarefree(),
        format!("minpoly = {}", mp.to_text()),
    );
    let projectors = materialize_projectors(&sys, a).unwrap_or_default();
    let sym_ok = !projectors.is_empty() && projectors.iter().all(|p| p.is_symmetric());
    r.check(
        "symmetric-projectors",
        "the Frobenius covariants of a normal matrix are hermitian",
        sym_ok,
        format!("{} projectors", projectors.len()),
    );
    r
}
