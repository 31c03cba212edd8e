//! Additive, multiplicative and fine Jordan–Chevalley decompositions, and
//! their exact verification.

use crate::covariant::{covariants_of, materialize_projectors, CovariantSystem};
use crate::error::{Error, Result};
use crate::matrix::{vectors_rank, Matrix};
use crate::poly::{factor_rational, Poly};
use crate::report::Report;
use crate::scalar::{Field, Rational};

type M = Matrix<Rational>;
type P = Poly<Rational>;

/// `M = S + N` with `S = S_poly(M)` semisimple and `N = N_poly(M)`
/// nilpotent.
#[derive(Clone, Debug)]
pub struct SNDecomposition {
    pub s: M,
    pub n: M,
    pub s_poly: P,
    pub n_poly: P,
    pub system: CovariantSystem,
}

pub fn sn_decompose(m: &M) -> Result<SNDecomposition> {
    let system = covariants_of(m)?;
    Ok(sn_from_system(m, system))
}

pub(crate) fn sn_from_system(m: &M, system: CovariantSystem) -> SNDecomposition {
    let s_poly = system.s_poly();
    let n_poly = system.n_poly();
    let s = m.horner_eval(&s_poly);
    let n = m - &s;
    SNDecomposition {
        s,
        n,
        s_poly,
        n_poly,
        system,
    }
}

/// Semisimple part by the Newton iteration `Z ← Z − g(Z)·g′(Z)⁻¹`, where
/// `g` is the squarefree part of the minimal polynomial.
pub fn sn_newton_oracle(m: &M) -> Result<M> {
    let (g, _) = m.minimal_polynomial().squarefree_part()?;
    let dg = g.derivative();
    let mut z = m.clone();
    loop {
        let gz = z.horner_eval(&g);
        if gz.is_zero() {
            return Ok(z);
        }
        let step = &gz * &z.horner_eval(&dg).inverse()?;
        z = &z - &step;
    }
}

/// Exact checks of an additive decomposition of `m`.
pub fn verify_sn(m: &M, sn: &SNDecomposition) -> Report {
    let mut r = Report::new("sn");
    let n = m.order();
    r.check(
        "reassembly",
        "M = S + N",
        &(&sn.s + &sn.n) == m,
        "S + N compared entrywise with M",
    );
    r.check(
        "commute",
        "SN = NS",
        sn.s.commutes_with(&sn.n),
        "SN − NS = 0",
    );
    let min_s = sn.s.minimal_polynomial();
    r.check(
        "semisimple",
        "S has a squarefree minimal polynomial",
        min_s.is_squarefree(),
        format!("minpoly(S) = {}", min_s.to_text()),
    );
    r.check(
        "nilpotent",
        "N^n = 0",
        sn.n.pow(n as u32).is_zero(),
        format!("N^{n} = 0"),
    );
    r.check(
        "polynomial-images",
        "S and N are polynomials in M",
        m.horner_eval(&sn.s_poly) == sn.s && m.horner_eval(&sn.n_poly) == sn.n,
        format!(
            "S(X) = {}, N(X) = {}",
            sn.s_poly.to_text(),
            sn.n_poly.to_text()
        ),
    );
    match sn_newton_oracle(m) {
        Ok(oracle) => r.check(
            "newton-oracle",
            "uniqueness of the Jordan–Chevalley decomposition",
            oracle == sn.s,
            "S equals the Newton iterate exactly",
        ),
        Err(e) => r.check(
            "newton-oracle",
            "uniqueness of the Jordan–Chevalley decomposition",
            false,
            e.to_string(),
        ),
    };
    r
}

/// One fine component, attached to the factor `m_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct FineComponent {
    pub factor: P,
    pub multiplicity: usize,
    pub s: M,
    pub n: M,
    pub s_poly: P,
    pub n_poly: P,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FineDecomposition {
    pub components: Vec<FineComponent>,
    /// Index of the component whose factor is `X`; its `s` is zero.
    pub zero_factor_index: Option<usize>,
}

impl FineDecomposition {
    pub fn s_sum(&self, n: usize) -> M {
        self.components
            .iter()
            .fold(M::zeros(n), |acc, c| &acc + &c.s)
    }

    pub fn n_sum(&self, n: usize) -> M {
        self.components
            .iter()
            .fold(M::zeros(n), |acc, c| &acc + &c.n)
    }

    /// Multiplicity `η_r` of the factor `X`, zero when absent.
    pub fn eta_r(&self) -> usize {
        self.zero_factor_index
            .map_or(0, |i| self.components[i].multiplicity)
    }

    /// The same decomposition with the nilpotent payloads of components
    /// `a` and `b` exchanged.
    pub fn with_swapped_nilpotents(&self, a: usize, b: usize) -> Self {
        let mut out = self.clone();
        let (na, nb) = (out.components[a].n.clone(), out.components[b].n.clone());
        out.components[a].n = nb;
        out.components[b].n = na;
        out
    }
}

pub fn fine_decompose(m: &M) -> Result<FineDecomposition> {
    Ok(fine_from_system(m, &covariants_of(m)?))
}

pub(crate) fn fine_from_system(m: &M, sys: &CovariantSystem) -> FineDecomposition {
    let components = sys
        .factored
        .factors
        .iter()
        .enumerate()
        .map(|(i, (factor, mu))| FineComponent {
            factor: factor.clone(),
            multiplicity: *mu,
            s: m.horner_eval(&sys.s_polys[i]),
            n: m.horner_eval(&sys.n_polys[i]),
            s_poly: sys.s_polys[i].clone(),
            n_poly: sys.n_polys[i].clone(),
        })
        .collect();
    FineDecomposition {
        components,
        zero_factor_index: sys.zero_factor_index(),
    }
}

fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let joint: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    let r = vectors_rank(&joint);
    r == vectors_rank(a) && r == vectors_rank(b)
}

/// Checks the uniqueness conditions of the fine decomposition exactly.
///
/// * `sums`: `Σ S_i = S(M)` and `Σ N_i = N(M)`, with `S(M)` from the
///   Newton oracle;
/// * `cross-annihilation`: `N_h S_l = 0` and `S_h S_l = 0` for `h ≠ l`;
/// * `kernel-containment`: `Ker M^{η_r} ⊆ Ker N_h` for each nonzero factor;
/// * `kernel-of-s`: `Ker S = Ker M^{η_r}`;
/// * `component-minpoly`: `minpoly(S_i) = X·m_i` when `r ≥ 2` and
///   `S_i ≠ 0`.
pub fn verify_fine(m: &M, fd: &FineDecomposition) -> Report {
    let mut r = Report::new("fine");
    let n = m.order();
    let s_sum = fd.s_sum(n);
    let n_sum = fd.n_sum(n);
    match sn_newton_oracle(m) {
        Ok(s) => {
            let nil = m - &s;
            r.check(
                "sums",
                "N(M) = N_1(M) + … + N_r(M)",
                s_sum == s && n_sum == nil,
                "component sums equal the Newton-oracle S and M − S",
            );
        }
        Err(e) => {
            r.check("sums", "N(M) = N_1(M) + … + N_r(M)", false, e.to_string());
        }
    }

    let mut cross_ok = true;
    let mut cross_witness = String::from("all cross products vanish");
    'outer: for (h, a) in fd.components.iter().enumerate() {
        for (l, b) in fd.components.iter().enumerate() {
            if h == l {
                continue;
            }
            if !(&a.n * &b.s).is_zero() {
                cross_ok = false;
                cross_witness = format!("N_{} S_{} ≠ 0", h + 1, l + 1);
                break 'outer;
            }
            if !(&a.s * &b.s).is_zero() {
                cross_ok = false;
                cross_witness = format!("S_{} S_{} ≠ 0", h + 1, l + 1);
                break 'outer;
            }
        }
    }
    r.check(
        "cross-annihilation",
        "N_h(M) S_l(M) = 0 and S_h(M) S_l(M) = 0 for h ≠ l",
        cross_ok,
        cross_witness,
    );

    let eta = fd.eta_r();
    let kernel = m.pow(eta as u32).kernel_basis();
    let mut contain_ok = true;
    let mut contain_witness = format!("dim Ker M^{eta} = {}", kernel.len());
    for (h, c) in fd.components.iter().enumerate() {
        if Some(h) == fd.zero_factor_index {
            continue;
        }
        if !c.n.annihilates(&kernel) {
            contain_ok = false;
            contain_witness = format!("N_{} does not vanish on Ker M^{eta}", h + 1);
            break;
        }
    }
    r.check(
        "kernel-containment",
        "N_h(M) = W_h M^{η_r} for nonzero factors",
        contain_ok,
        contain_witness,
    );

    let ker_s = s_sum.kernel_basis();
    r.check(
        "kernel-of-s",
        "Ker S(M) = Ker M^{η_r}",
        same_span(&ker_s, &kernel),
        format!(
            "dim Ker S = {}, dim Ker M^{eta} = {}",
            ker_s.len(),
            kernel.len()
        ),
    );

    let mut minpoly_ok = true;
    let mut minpoly_witness = String::from("not applicable for a single factor");
    if fd.components.len() >= 2 {
        minpoly_witness = String::from("minpoly(S_i) = X·m_i for every nonzero S_i");
        for (i, c) in fd.components.iter().enumerate() {
            if c.s.is_zero() {
                continue;
            }
            let got = c.s.minimal_polynomial();
            let want = &P::x() * &c.factor;
            if got != want {
                minpoly_ok = false;
                minpoly_witness = format!(
                    "minpoly(S_{}) = {}, expected {}",
                    i + 1,
                    got.to_text(),
                    want.to_text()
                );
                break;
            }
        }
    }
    r.check(
        "component-minpoly",
        "the minimal polynomial of S_i(M) is X g_i(X)",
        minpoly_ok,
        minpoly_witness,
    );
    r
}

/// The unbreakable summands of a nonzero semisimple matrix: its nonzero
/// fine semisimple components.
pub fn unbreakable_components(s: &M) -> Result<Vec<M>> {
    if s.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let sys = covariants_of(s)?;
    if sys.factored.factors.iter().any(|(_, mu)| *mu > 1) {
        return Err(Error::NotSemisimple);
    }
    let fd = fine_from_system(s, &sys);
    Ok(fd
        .components
        .into_iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != fd.zero_factor_index)
        .map(|(_, c)| c.s)
        .collect())
}

/// `M = S·U` with `U = I + S⁻¹N` unipotent.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicativeJC {
    pub s: M,
    pub u: M,
}

pub fn multiplicative_jc(m: &M) -> Result<MultiplicativeJC> {
    if m.is_singular() {
        return Err(Error::SingularMatrix);
    }
    let sn = sn_decompose(m)?;
    let u = &M::identity(m.order()) + &(&sn.s.inverse()? * &sn.n);
    Ok(MultiplicativeJC { s: sn.s, u })
}

pub fn verify_mjc(m: &M, mjc: &MultiplicativeJC) -> Report {
    let mut r = Report::new("mjc");
    let n = m.order();
    r.check(
        "reassembly",
        "M = S U",
        &(&mjc.s * &mjc.u) == m,
        "S·U compared with M",
    );
    r.check(
        "commute",
        "S U = U S",
        mjc.s.commutes_with(&mjc.u),
        "SU − US = 0",
    );
    let unip = &mjc.u - &M::identity(n);
    r.check(
        "unipotent",
        "(U − I)^n = 0",
        unip.pow(n as u32).is_zero(),
        format!("(U − I)^{n} = 0"),
    );
    r.check(
        "nonsingular",
        "S is invertible",
        !mjc.s.is_singular(),
        format!("rank S = {}", mjc.s.rank()),
    );
    r.check(
        "semisimple",
        "S has a squarefree minimal polynomial",
        mjc.s.minimal_polynomial().is_squarefree(),
        "gcd(minpoly(S), minpoly(S)′) = 1",
    );
    r
}

/// Checks that `matrices` with `coefficients` form a Frobenius
/// decomposition of `Σ c_i A_i`, and the rank criterion for a zero
/// eigenvalue of that sum.
pub fn verify_frobenius_system<F: Field>(matrices: &[Matrix<F>], coefficients: &[F]) -> Report {
    let mut r = Report::new("frobenius");
    if !r.check(
        "shape",
        "one coefficient per matrix, common order",
        matrices.len() == coefficients.len()
            && !matrices.is_empty()
            && matrices.iter().all(|a| a.order() == matrices[0].order()),
        format!(
            "{} matrices, {} coefficients",
            matrices.len(),
            coefficients.len()
        ),
    ) {
        return r;
    }
    let n = matrices[0].order();

    let mut axiom_ok = true;
    let mut axiom_witness = String::from("A_i A_j = δ_ij A_i for all i, j");
    'outer: for (i, a) in matrices.iter().enumerate() {
        for (j, b) in matrices.iter().enumerate() {
            let prod = a * b;
            let ok = if i == j { &prod == a } else { prod.is_zero() };
            if !ok {
                axiom_ok = false;
                axiom_witness = if i == j {
                    format!("A_{} is not idempotent", i + 1)
                } else {
                    format!("A_{} A_{} ≠ 0", i + 1, j + 1)
                };
                break 'outer;
            }
        }
    }
    r.check(
        "orthogonal-idempotents",
        "A_i A_j = δ_ij A_i",
        axiom_ok,
        axiom_witness,
    );

    let zero_idx = matrices.iter().position(|a| a.is_zero());
    r.check(
        "nonzero",
        "each A_i is nonzero",
        zero_idx.is_none(),
        zero_idx.map_or("all nonzero".into(), |i| format!("A_{} = 0", i + 1)),
    );

    let mut distinct = coefficients.iter().all(|c| !c.is_zero());
    for i in 0..coefficients.len() {
        for j in i + 1..coefficients.len() {
            distinct &= coefficients[i] != coefficients[j];
        }
    }
    r.check(
        "coefficients",
        "pairwise distinct nonzero coefficients",
        distinct,
        format!("{:?}", coefficients),
    );

    let rank_sum: usize = matrices.iter().map(|a| a.rank()).sum();
    let sum = matrices
        .iter()
        .zip(coefficients)
        .fold(Matrix::<F>::zeros(n), |acc, (a, c)| &acc + &a.scale(c));
    let zero_eigenvalue = sum.is_singular();
    r.check(
        "rank-criterion",
        "Σ rk(A_i) < n iff 0 is an eigenvalue of Σ c_i A_i",
        (rank_sum < n) == zero_eigenvalue,
        format!("rank sum {rank_sum}, n = {n}, zero eigenvalue: {zero_eigenvalue}"),
    );
    r
}

/// Projector-scaling identities `S·E_i = S_i` and `N·E_i = N_i`.
pub fn verify_projector_scaling(
    m: &M,
    sn: &SNDecomposition,
    fd: &FineDecomposition,
) -> Result<bool> {
    let projectors = materialize_projectors(&sn.system, m)?;
    Ok(projectors
        .iter()
        .zip(&fd.components)
        .all(|(e, c)| &sn.s * e == c.s && &sn.n * e == c.n))
}

/// Checks that `components` are the unbreakable summands of `s`.
pub fn verify_unbreakable(s: &M, components: &[M]) -> Report {
    let mut r = Report::new("unbreakable");
    let n = s.order();
    let total = components.iter().fold(M::zeros(n), |acc, c| &acc + c);
    r.check("sum", "S = Σ S_i", &total == s, "Σ S_i compared with S");
    let mut cross = true;
    for (i, a) in components.iter().enumerate() {
        for (j, b) in components.iter().enumerate() {
            if i != j && !(a * b).is_zero() {
                cross = false;
            }
        }
    }
    r.check(
        "cross-annihilation",
        "S_i S_j = 0 for i ≠ j",
        cross,
        format!("{} components", components.len()),
    );
    let mut irreducible = true;
    let mut witness = Vec::new();
    for c in components {
        let mp = c.minimal_polynomial();
        let ok = factor_rational(&mp).is_ok_and(|f| {
            f.factors.iter().all(|(_, mu)| *mu == 1) && f.nonzero_count() == 1 && !c.is_zero()
        });
        irreducible &= ok;
        witness.push(mp.to_text());
    }
    r.check(
        "unbreakable",
        "each S_i has minimal polynomial g or X g with g irreducible, g ≠ X",
        irreducible,
        witness.join("; "),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn p(c: &[i64]) -> P {
        P::from_i64s(c)
    }

    #[test]
    fn sn_examples() {
        let j = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let sn = sn_decompose(&j).unwrap();
        assert_eq!(sn.s, M::identity(2));
        assert_eq!(sn.n, M::from_i64_rows(&[&[0, 1], &[0, 0]]));

        let nil = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let sn = sn_decompose(&nil).unwrap();
        assert!(sn.s.is_zero());
        assert_eq!(sn.n, nil);
    }

    #[test]
    fn sn_of_zero_matrix() {
        let sn = sn_decompose(&M::zeros(3)).unwrap();
        assert!(sn.s.is_zero() && sn.n.is_zero());
        assert_eq!(sn.system.factored.factors, vec![(P::x(), 1)]);
    }

    #[test]
    fn sn_of_companion_square() {
        let c = M::companion(&p(&[-2, 0, 1]).pow(2));
        let sn = sn_decompose(&c).unwrap();
        assert_eq!(sn.s.minimal_polynomial(), p(&[-2, 0, 1]));
        assert!(!sn.n.is_zero());
        assert!((&sn.n * &sn.n).is_zero());
        assert_eq!(sn.s, sn_newton_oracle(&c).unwrap());
        assert!(verify_sn(&c, &sn).pass());
    }

    #[test]
    fn newton_oracle_examples() {
        let d = M::diagonal(&[q(1), q(2)]);
        assert_eq!(sn_newton_oracle(&d).unwrap(), d);
        let j = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(sn_newton_oracle(&j).unwrap(), M::identity(2));
    }

    #[test]
    fn fine_block_example() {
        let m = M::block_diag(&[
            M::companion(&p(&[-2, 0, 1])),
            M::from_i64_rows(&[&[1, 1], &[0, 1]]),
        ]);
        let fd = fine_decompose(&m).unwrap();
        // Canonical order puts X − 1 before X² − 2.
        let lin = &fd.components[0];
        let quad = &fd.components[1];
        assert_eq!(lin.factor, p(&[-1, 1]));
        assert_eq!(
            quad.s,
            M::block_diag(&[M::companion(&p(&[-2, 0, 1])), M::zeros(2)])
        );
        assert_eq!(lin.s, M::block_diag(&[M::zeros(2), M::identity(2)]));
        assert!(quad.n.is_zero());
        assert_eq!(
            lin.n,
            M::block_diag(&[M::zeros(2), M::from_i64_rows(&[&[0, 1], &[0, 0]])])
        );
        assert!(verify_fine(&m, &fd).pass());
    }

    #[test]
    fn fine_nilpotent() {
        let m = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let fd = fine_decompose(&m).unwrap();
        assert_eq!(fd.components.len(), 1);
        assert_eq!(fd.zero_factor_index, Some(0));
        assert!(fd.components[0].s.is_zero());
        assert_eq!(fd.components[0].n, m);
        assert!(verify_fine(&m, &fd).pass());
    }

    #[test]
    fn fine_companion_three_factors() {
        let f = &p(&[-2, 0, 1]) * &p(&[1, -2, 1]);
        let m = M::companion(&f);
        let fd = fine_decompose(&m).unwrap();
        assert_eq!(fd.components.len(), 2);
        assert!(verify_fine(&m, &fd).pass());
        let sn = sn_decompose(&m).unwrap();
        assert!(verify_projector_scaling(&m, &sn, &fd).unwrap());
    }

    #[test]
    fn swapped_nilpotents_detected() {
        let f = &(&p(&[-2, 0, 1]) * &p(&[1, -2, 1])) * &p(&[0, 0, 1]);
        let m = M::companion(&f);
        let fd = fine_decompose(&m).unwrap();
        assert!(verify_fine(&m, &fd).pass());
        for a in 0..fd.components.len() {
            for b in a + 1..fd.components.len() {
                if fd.components[a].n == fd.components[b].n {
                    continue;
                }
                let bad = fd.with_swapped_nilpotents(a, b);
                assert!(!verify_fine(&m, &bad).pass(), "swap {a} {b} undetected");
            }
        }
    }

    #[test]
    fn unbreakable_examples() {
        let d = M::diagonal(&[q(1), q(-1)]);
        let parts = unbreakable_components(&d).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.contains(&M::diagonal(&[q(1), q(0)])));
        assert!(parts.contains(&M::diagonal(&[q(0), q(-1)])));

        let c = M::companion(&p(&[-2, 0, 1]));
        assert_eq!(unbreakable_components(&c).unwrap(), vec![c]);

        let d = M::diagonal(&[q(1), q(2), q(0)]);
        let parts = unbreakable_components(&d).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.contains(&M::diagonal(&[q(1), q(0), q(0)])));
        assert!(parts.contains(&M::diagonal(&[q(0), q(2), q(0)])));

        assert_eq!(unbreakable_components(&M::zeros(2)), Err(Error::ZeroMatrix));
        let j = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(unbreakable_components(&j), Err(Error::NotSemisimple));
    }

    #[test]
    fn mjc_examples() {
        let m = M::from_i64_rows(&[&[2, 2], &[0, 2]]);
        let d = multiplicative_jc(&m).unwrap();
        assert_eq!(d.s, M::scalar(2, q(2)));
        assert_eq!(d.u, M::from_i64_rows(&[&[1, 1], &[0, 1]]));

        let ss = M::diagonal(&[q(3), q(-1)]);
        assert_eq!(multiplicative_jc(&ss).unwrap().u, M::identity(2));

        let c = M::companion(&(&p(&[1, -2, 1]) * &p(&[-2, 1])));
        let d = multiplicative_jc(&c).unwrap();
        assert!(verify_mjc(&c, &d).pass());

        assert_eq!(multiplicative_jc(&M::zeros(2)), Err(Error::SingularMatrix));
    }

    #[test]
    fn frobenius_examples() {
        let e1 = M::diagonal(&[q(1), q(0)]);
        let e2 = M::diagonal(&[q(0), q(1)]);
        let r = verify_frobenius_system(&[e1.clone(), e2], &[q(1), q(2)]);
        assert!(r.pass());

        let r = verify_frobenius_system(std::slice::from_ref(&e1), &[q(5)]);
        assert!(r.pass());
        assert!(r
            .find("rank-criterion")
            .unwrap()
            .witness
            .contains("zero eigenvalue: true"));

        let nil = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let r = verify_frobenius_system(&[e1, nil], &[q(1), q(2)]);
        assert!(!r.find("orthogonal-idempotents").unwrap().pass);
    }
}
