//! Seeded generation of test matrices with known structure.
//!
//! Structured matrices are block-diagonal sums of companion matrices
//! conjugated by a unimodular integer matrix, so the minimal polynomial is
//! known by construction. Matrices for the singular value decomposition
//! are combinations of rational orthogonal matrices (Cayley transforms of
//! integer skew-symmetric matrices) with diagonal or shift matrices, so
//! `AᵀA` has known rational eigenvalues.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::io::MatrixDocument;
use crate::matrix::Matrix;
use crate::poly::{factor_rational, parse_poly, FactoredMinPoly, Poly};
use crate::scalar::{Field, Rational};

type M = Matrix<Rational>;
type P = Poly<Rational>;

/// Bounds for [`Generator::structured`].
#[derive(Clone, Debug)]
pub struct Shape {
    pub max_order: usize,
    pub max_factor_degree: usize,
    pub max_multiplicity: usize,
    /// Probability of including the factor `X`.
    pub zero_probability: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_order: 6,
            max_factor_degree: 3,
            max_multiplicity: 3,
            zero_probability: 0.35,
        }
    }
}

impl Shape {
    /// Nonsingular matrices whose factors have degree at most 2.
    pub fn real_closed() -> Self {
        Shape {
            max_factor_degree: 2,
            zero_probability: 0.0,
            ..Shape::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub matrix: M,
    pub minpoly: FactoredMinPoly,
}

/// The kind of an SVD test matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SvdKind {
    /// `Q₁·D·Q₂` with integer diagonal `D`, possibly rank deficient.
    General,
    /// `Q·W·Qᵀ` for a weighted shift `W`.
    Nilpotent,
    /// `Q·D·Qᵀ`.
    Symmetric,
    /// `Q·(⊕ [[a, −b], [b, a]])·Qᵀ`, normal and not symmetric.
    Rotation,
}

#[derive(Clone, Debug)]
pub struct SvdCase {
    pub kind: SvdKind,
    pub matrix: M,
    /// Distinct nonzero eigenvalues of `AᵀA`, decreasing.
    pub sigma_squares: Vec<Rational>,
}

impl SvdCase {
    pub fn is_normal(&self) -> bool {
        matches!(self.kind, SvdKind::Symmetric | SvdKind::Rotation)
    }
}

pub struct Generator {
    rng: ChaCha8Rng,
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn nonzero(&mut self, bound: i64) -> i64 {
        loop {
            let v = self.rng.gen_range(-bound..=bound);
            if v != 0 {
                return v;
            }
        }
    }

    /// A unimodular integer matrix and its inverse.
    pub fn unimodular(&mut self, n: usize) -> (M, M) {
        let mut u = M::identity(n);
        if n > 1 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut self.rng);
            let mut p = M::zeros(n);
            for (i, &j) in perm.iter().enumerate() {
                p.set(i, j, q(1));
            }
            u = p;
            for _ in 0..n + 2 {
                let i = self.rng.gen_range(0..n);
                let mut j = self.rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let c = q(self.nonzero(2));
                // Row operation: row_i += c·row_j.
                for k in 0..n {
                    let v = u.get(i, k) + &c * u.get(j, k);
                    u.set(i, k, v);
                }
            }
        }
        let inv = u.inverse().expect("unimodular matrices are invertible");
        (u, inv)
    }

    pub fn conjugate(&mut self, b: &M) -> M {
        let (u, inv) = self.unimodular(b.order());
        &(&u * b) * &inv
    }

    /// Companion block of `m_i^{μ_i}` per factor, conjugated.
    pub fn from_minpoly(&mut self, factored: &FactoredMinPoly) -> M {
        let blocks: Vec<P> = factored
            .factors
            .iter()
            .map(|(f, mu)| f.pow(*mu as u32))
            .collect();
        self.from_blocks(&blocks)
    }

    /// One companion block per polynomial, conjugated.
    pub fn from_blocks(&mut self, blocks: &[P]) -> M {
        let mats: Vec<M> = blocks.iter().map(M::companion).collect();
        self.conjugate(&M::block_diag(&mats))
    }

    /// A random monic irreducible polynomial with small coefficients.
    pub fn irreducible(&mut self, degree: usize, allow_x: bool) -> P {
        loop {
            let mut coeffs: Vec<Rational> =
                (0..degree).map(|_| q(self.rng.gen_range(-3..=3))).collect();
            coeffs.push(q(1));
            let p = P::new(coeffs);
            if p.is_x() && !allow_x {
                continue;
            }
            if degree == 1 {
                return p;
            }
            let f = factor_rational(&p).expect("small degree");
            if f.len() == 1 && f.factors[0].1 == 1 {
                return p;
            }
        }
    }

    pub fn structured(&mut self, shape: &Shape) -> Generated {
        let mut factors: Vec<(P, usize)> = Vec::new();
        let mut budget = self.rng.gen_range(1..=shape.max_order);
        if shape.zero_probability > 0.0 && self.rng.gen_bool(shape.zero_probability) {
            let mu = self.rng.gen_range(1..=shape.max_multiplicity.min(budget));
            factors.push((P::x(), mu));
            budget -= mu;
        }
        while budget > 0 {
            let d = self.rng.gen_range(1..=shape.max_factor_degree.min(budget));
            let mu = self
                .rng
                .gen_range(1..=shape.max_multiplicity.min(budget / d));
            let f = self.irreducible(d, false);
            if factors.iter().any(|(g, _)| *g == f) {
                continue;
            }
            factors.push((f, mu));
            budget -= d * mu;
            if self.rng.gen_bool(0.3) {
                break;
            }
        }
        let factored = FactoredMinPoly::from_factors(factors);
        let mut blocks: Vec<P> = factored
            .factors
            .iter()
            .map(|(f, mu)| f.pow(*mu as u32))
            .collect();
        let used: usize = blocks.iter().map(|b| b.degree().unwrap()).sum();
        let mut room = shape.max_order - used;
        // Extra blocks of smaller or equal powers make the matrix derogatory.
        for (f, mu) in &factored.factors {
            let d = f.degree().unwrap();
            if room >= d && self.rng.gen_bool(0.4) {
                let k = self.rng.gen_range(1..=(*mu).min(room / d));
                blocks.push(f.pow(k as u32));
                room -= d * k;
            }
        }
        blocks.shuffle(&mut self.rng);
        Generated {
            matrix: self.from_blocks(&blocks),
            minpoly: factored,
        }
    }

    /// Random polynomial of degree at most `max_degree`.
    pub fn polynomial(&mut self, max_degree: usize) -> P {
        let d = self.rng.gen_range(0..=max_degree);
        P::new((0..=d).map(|_| q(self.rng.gen_range(-3..=3))).collect())
    }

    /// Rational orthogonal matrix `(I − K)(I + K)⁻¹` for a random integer
    /// skew-symmetric `K`.
    pub fn orthogonal(&mut self, n: usize) -> M {
        let mut k = M::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = self.rng.gen_range(-2..=2);
                k.set(i, j, q(v));
                k.set(j, i, q(-v));
            }
        }
        let id = M::identity(n);
        &(&id - &k)
            * &(&id + &k)
                .inverse()
                .expect("I + K is invertible for skew K")
    }

    pub fn svd_case(&mut self, n: usize, kind: SvdKind) -> SvdCase {
        let mut squares: Vec<Rational> = Vec::new();
        let matrix = match kind {
            SvdKind::General | SvdKind::Symmetric => {
                let diag: Vec<Rational> = loop {
                    let d: Vec<Rational> = (0..n).map(|_| q(self.rng.gen_range(-4..=4))).collect();
                    if d.iter().any(|v| !v.is_zero()) {
                        break d;
                    }
                };
                for v in &diag {
                    if !v.is_zero() {
                        squares.push(v * v);
                    }
                }
                let dm = M::diagonal(&diag);
                let q1 = self.orthogonal(n);
                let q2 = if kind == SvdKind::General {
                    self.orthogonal(n)
                } else {
                    q1.transpose()
                };
                &(&q1 * &dm) * &q2
            }
            SvdKind::Nilpotent => {
                let mut w = M::zeros(n);
                let mut any = false;
                for i in 0..n.saturating_sub(1) {
                    let v = self.rng.gen_range(-3..=3);
                    any |= v != 0;
                    w.set(i, i + 1, q(v));
                }
                if !any && n > 1 {
                    w.set(0, 1, q(1));
                }
                for i in 0..n.saturating_sub(1) {
                    let v = w.get(i, i + 1);
                    if !v.is_zero() {
                        squares.push(v * v);
                    }
                }
                let o = self.orthogonal(n);
                &(&o * &w) * &o.transpose()
            }
            SvdKind::Rotation => {
                let mut blocks = Vec::new();
                let mut left = n;
                while left >= 2 {
                    let a = self.rng.gen_range(-3..=3);
                    let b = self.nonzero(3);
                    squares.push(q(a * a + b * b));
                    blocks.push(M::from_i64_rows(&[&[a, -b], &[b, a]]));
                    left -= 2;
                }
                if left == 1 {
                    let c = self.nonzero(4);
                    squares.push(q(c * c));
                    blocks.push(M::scalar(1, q(c)));
                }
                let o = self.orthogonal(n);
                &(&o * &M::block_diag(&blocks)) * &o.transpose()
            }
        };
        squares.sort_by(|a, b| b.cmp(a));
        squares.dedup();
        SvdCase {
            kind,
            matrix,
            sigma_squares: squares,
        }
    }
}

/// Parses a `;`-separated list of block polynomials.
pub fn parse_blocks(text: &str) -> Result<Vec<P>> {
    let blocks: Vec<P> = text
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_poly)
        .collect::<Result<_>>()?;
    if blocks.is_empty() {
        return Err(Error::Parse("empty block specification".into()));
    }
    for b in &blocks {
        if b.degree().unwrap_or(0) == 0 {
            return Err(Error::Parse(format!(
                "block polynomial {} must have positive degree",
                b.to_text()
            )));
        }
    }
    Ok(blocks)
}

/// The document emitted by the `gen` command.
pub fn generate_document(
    seed: u64,
    minpoly: Option<&str>,
    blocks: Option<&str>,
) -> Result<MatrixDocument> {
    let mut g = Generator::new(seed);
    let (matrix, known) = match (minpoly, blocks) {
        (Some(_), Some(_)) => {
            return Err(Error::Parse("--minpoly and --blocks are exclusive".into()))
        }
        (Some(text), None) => {
            let p = parse_poly(text)?;
            if p.degree().unwrap_or(0) == 0 {
                return Err(Error::Parse(
                    "minimal polynomial must have positive degree".into(),
                ));
            }
            let factored = factor_rational(&p)?;
            (g.from_minpoly(&factored), factored.product())
        }
        (None, Some(text)) => {
            let bs = parse_blocks(text)?;
            let lcm = bs.iter().fold(P::one(), |acc, b| Poly::lcm(&acc, b));
            (g.from_blocks(&bs), lcm)
        }
        (None, None) => {
            let gen = g.structured(&Shape::default());
            (gen.matrix, gen.minpoly.product())
        }
    };
    let mut doc = MatrixDocument::rational(matrix);
    doc.seed = Some(seed);
    doc.minpoly = Some(known.to_text());
    doc.label = Some("generated".into());
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut g = Generator::new(3);
        for n in 1..=6 {
            let (u, inv) = g.unimodular(n);
            assert!((&u * &inv).is_identity());
            assert!(inv.entries().iter().all(|c| c.is_integer()));
        }
    }

    #[test]
    fn structured_minpoly_is_known() {
        let mut g = Generator::new(11);
        for _ in 0..20 {
            let gen = g.structured(&Shape::default());
            assert!(gen.matrix.order() <= 6);
            assert_eq!(gen.matrix.minimal_polynomial(), gen.minpoly.product());
        }
    }

    #[test]
    fn orthogonal_is_orthogonal() {
        let mut g = Generator::new(5);
        let o = g.orthogonal(4);
        assert!((&o * &o.transpose()).is_identity());
    }

    #[test]
    fn svd_cases_have_known_gram_spectrum() {
        let mut g = Generator::new(8);
        for kind in [
            SvdKind::General,
            SvdKind::Nilpotent,
            SvdKind::Symmetric,
            SvdKind::Rotation,
        ] {
            let case = g.svd_case(4, kind);
            let b = &case.matrix.transpose() * &case.matrix;
            let mut expected = P::one();
            for s in &case.sigma_squares {
                expected = &expected * &P::linear(s);
            }
            let mp = b.minimal_polynomial();
            let nonzero = if mp.coeff(0).is_zero() {
                mp.exact_div(&P::x()).unwrap()
            } else {
                mp
            };
            assert_eq!(nonzero, expected, "{kind:?}");
        }
    }

    #[test]
    fn document_is_deterministic() {
        let a = generate_document(7, Some("(X^2-2)(X-1)^2"), None).unwrap();
        let b = generate_document(7, Some("(X^2-2)(X-1)^2"), None).unwrap();
        assert_eq!(a, b);
        let m = a.rational_matrix().unwrap();
        assert_eq!(
            m.minimal_polynomial(),
            parse_poly("(X^2-2)(X-1)^2").unwrap()
        );
    }

    #[test]
    fn blocks_text() {
        let doc = generate_document(1, None, Some("(X-1)^2; X-1; X^2+1")).unwrap();
        let m = doc.rational_matrix().unwrap();
        assert_eq!(m.order(), 5);
        assert_eq!(
            m.minimal_polynomial(),
            parse_poly("(X-1)^2 (X^2+1)").unwrap()
        );
        assert!(parse_blocks("3").is_err());
    }
}
