//! Dense square matrices over an exact [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Field, MultiQuad, Rational};

/// An `n × n` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![F::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::scalar(n, F::one())
    }

    pub fn scalar(n: usize, c: F) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n);
        for (i, c) in entries.iter().enumerate() {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// From a list of rows; every row must have as many entries as there
    /// are rows.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch(
                "matrix must have at least one row".into(),
            ));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
        )
        .expect("square integer matrix")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.data
            .chunks(self.n.max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> F {
        (0..self.n).fold(F::zero(), |acc, i| acc.add_ref(self.get(i, i)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Matrix::identity(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self * other == other * self
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n).fold(F::zero(), |acc, j| {
                    acc.add_ref(&self.data[i * n + j].mul_ref(&v[j]))
                })
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let n = self.n;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| !a.data[r * n + col].is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..n {
                    a.data.swap(p * n + j, row * n + j);
                }
            }
            let inv = a.data[row * n + col].inv_ref().unwrap();
            for j in col..n {
                a.data[row * n + j] = a.data[row * n + j].mul_ref(&inv);
            }
            for r in 0..n {
                if r == row || a.data[r * n + col].is_zero() {
                    continue;
                }
                let factor = a.data[r * n + col].clone();
                for j in col..n {
                    let v = a.data[r * n + j].sub_ref(&factor.mul_ref(&a.data[row * n + j]));
                    a.data[r * n + j] = v;
                }
            }
            pivots.push(col);
            row += 1;
            if row == n {
                break;
            }
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column of the
    /// reduced echelon form. Empty iff the matrix is nonsingular.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let n = self.n;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); n];
                v[f] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.data[row * n + f].neg_ref();
                }
                v
            })
            .collect()
    }

    /// Solves `A·x = b` for nonsingular `A`.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        // Gaussian elimination on the augmented system [A | b].
        let mut a = self.data.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                rhs.swap(p, col);
            }
            let inv = a[col * n + col].inv_ref().unwrap();
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].mul_ref(&inv);
                for j in col..n {
                    a[r * n + j] = a[r * n + j].sub_ref(&factor.mul_ref(&a[col * n + j]));
                }
                rhs[r] = rhs[r].sub_ref(&factor.mul_ref(&rhs[col]));
            }
        }
        let mut x = vec![F::zero(); n];
        for i in (0..n).rev() {
            let mut acc = rhs[i].clone();
            for j in i + 1..n {
                acc = acc.sub_ref(&a[i * n + j].mul_ref(&x[j]));
            }
            x[i] = acc.mul_ref(&a[i * n + i].inv_ref().unwrap());
        }
        Ok(x)
    }

    /// Inverse by Gauss–Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Matrix::<F>::identity(n).data;
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                    inv.swap(p * n + j, col * n + j);
                }
            }
            let pivot_inv = a[col * n + col].inv_ref().unwrap();
            for j in 0..n {
                a[col * n + j] = a[col * n + j].mul_ref(&pivot_inv);
                inv[col * n + j] = inv[col * n + j].mul_ref(&pivot_inv);
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    a[r * n + j] = a[r * n + j].sub_ref(&factor.mul_ref(&a[col * n + j]));
                    inv[r * n + j] = inv[r * n + j].sub_ref(&factor.mul_ref(&inv[col * n + j]));
                }
            }
        }
        Ok(Matrix { n, data: inv })
    }

    pub fn is_singular(&self) -> bool {
        self.rank() < self.n
    }

    /// `f(A)` by Horner's rule.
    pub fn horner_eval(&self, f: &Poly<F>) -> Self {
        let mut acc = Matrix::zeros(self.n);
        for c in f.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..self.n {
                let v = acc.data[i * self.n + i].add_ref(c);
                acc.data[i * self.n + i] = v;
            }
        }
        acc
    }

    /// Monic minimal polynomial, as the lcm of the Krylov annihilators of
    /// the standard basis vectors. Stops early once the running lcm
    /// annihilates the matrix.
    pub fn minimal_polynomial(&self) -> Poly<F> {
        let n = self.n;
        let mut result = Poly::one();
        for j in 0..n {
            let mut e = vec![F::zero(); n];
            e[j] = F::one();
            let local = self.krylov_annihilator(&e);
            if local.degree() > Some(0) && !local.divides(&result) {
                result = Poly::lcm(&result, &local);
                if result.degree() == Some(n) || self.horner_eval(&result).is_zero() {
                    break;
                }
            }
        }
        result
    }

    /// Monic least-degree `p` with `p(A)·v = 0`.
    pub fn krylov_annihilator(&self, v: &[F]) -> Poly<F> {
        // Each stored row is a reduced Krylov vector together with the
        // polynomial in A that produced it from v.
        let mut stored: Vec<(usize, Vec<F>, Poly<F>)> = Vec::new();
        let mut current = v.to_vec();
        let mut k = 0;
        loop {
            let mut w = current.clone();
            let mut poly = Poly::monomial(F::one(), k);
            for (pivot, row, p) in &stored {
                if w[*pivot].is_zero() {
                    continue;
                }
                let factor = w[*pivot].mul_ref(&row[*pivot].inv_ref().unwrap());
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = wi.sub_ref(&factor.mul_ref(ri));
                }
                poly = &poly - &p.scale(&factor);
            }
            match w.iter().position(|c| !c.is_zero()) {
                None => return poly,
                Some(pivot) => stored.push((pivot, w, poly)),
            }
            current = self.mul_vec(&current);
            k += 1;
        }
    }

    /// Smallest `k ≥ 1` with `A^k = 0`, if the matrix is nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut power = self.clone();
        for k in 1..=self.n.max(1) {
            if power.is_zero() {
                return Some(k);
            }
            power = &power * self;
        }
        None
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[Matrix<F>]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut out = Matrix::zeros(n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.data[(offset + i) * n + offset + j] = b.data[i * b.n + j].clone();
                }
            }
            offset += b.n;
        }
        out
    }

    /// Companion matrix of a monic polynomial of positive degree
    /// (ones on the subdiagonal, negated coefficients in the last column).
    pub fn companion(p: &Poly<F>) -> Self {
        let p = p.monic().expect("companion of zero polynomial");
        let d = p.degree().expect("companion of zero polynomial");
        assert!(d > 0, "companion of a constant");
        let mut m = Matrix::zeros(d);
        for i in 1..d {
            m.data[i * d + i - 1] = F::one();
        }
        for i in 0..d {
            m.data[i * d + d - 1] = p.coeff(i).neg_ref();
        }
        m
    }

    /// Every vector of `vs` is annihilated by the matrix.
    pub fn annihilates(&self, vs: &[Vec<F>]) -> bool {
        vs.iter()
            .all(|v| self.mul_vec(v).iter().all(|c| c.is_zero()))
    }
}

/// Rank of a family of vectors.
pub fn vectors_rank<F: Field>(vs: &[Vec<F>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let n = vs[0].len();
    let size = n.max(vs.len());
    let mut m = Matrix::<F>::zeros(size);
    for (i, v) in vs.iter().enumerate() {
        for (j, c) in v.iter().enumerate() {
            m.set(i, j, c.clone());
        }
    }
    m.rank()
}

impl Matrix<Rational> {
    pub fn lift<G: Field>(&self) -> Matrix<G> {
        self.map(G::from_rational)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }
}

impl Matrix<MultiQuad> {
    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().map(|c| c.conjugate())
    }

    /// The rational matrix, when every entry is rational.
    pub fn as_rational(&self) -> Option<Matrix<Rational>> {
        let data: Option<Vec<Rational>> = self.data.iter().map(|c| c.as_rational()).collect();
        data.map(|data| Matrix { n: self.n, data })
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.n, rhs.n, "matrix order mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.n, rhs.n, "matrix order mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.n, rhs.n, "matrix order mismatch");
        let n = self.n;
        let mut data = vec![F::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        data[i * n + j] = data[i * n + j].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Matrix { n, data }
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(|c| c.neg_ref())
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[F]> = self.data.chunks(self.n.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<Rational>;
    type P = Poly<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn minimal_polynomial_examples() {
        assert_eq!(M::identity(2).minimal_polynomial(), P::from_i64s(&[-1, 1]));
        assert_eq!(
            M::from_i64_rows(&[&[0, 1], &[0, 0]]).minimal_polynomial(),
            P::from_i64s(&[0, 0, 1])
        );
        let m = &P::from_i64s(&[-2, 0, 1]) * &P::from_i64s(&[-1, 1]);
        assert_eq!(M::companion(&m).minimal_polynomial(), m);
    }

    #[test]
    fn minimal_polynomial_of_zero_matrix() {
        assert_eq!(M::zeros(3).minimal_polynomial(), P::x());
    }

    #[test]
    fn minimal_polynomial_of_derogatory_matrix() {
        let m = M::block_diag(&[
            M::companion(&P::from_i64s(&[1, -2, 1])),
            M::companion(&P::from_i64s(&[-1, 1])),
            M::scalar(1, q(3, 1)),
        ]);
        let expected = &P::from_i64s(&[1, -2, 1]) * &P::from_i64s(&[-3, 1]);
        assert_eq!(m.minimal_polynomial(), expected);
    }

    #[test]
    fn kernel_examples() {
        assert!(M::identity(2).kernel_basis().is_empty());
        assert_eq!(M::zeros(2).kernel_basis().len(), 2);
        let k = M::from_i64_rows(&[&[1, 1], &[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![q(-1, 1), q(1, 1)]]);
    }

    #[test]
    fn horner_examples() {
        let j = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            j.horner_eval(&P::from_i64s(&[0, 0, 1])),
            M::from_i64_rows(&[&[1, 2], &[0, 1]])
        );
        assert!(M::identity(2)
            .horner_eval(&P::from_i64s(&[-1, 1]))
            .is_zero());
        let c = M::companion(&P::from_i64s(&[-2, 0, 1]));
        assert!(c.horner_eval(&P::from_i64s(&[-2, 0, 1])).is_zero());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(M::identity(3).inverse().unwrap(), M::identity(3));
        assert_eq!(
            M::scalar(2, q(2, 1)).inverse().unwrap(),
            M::scalar(2, q(1, 2))
        );
        assert_eq!(
            M::from_i64_rows(&[&[1, 1], &[0, 1]]).inverse().unwrap(),
            M::from_i64_rows(&[&[1, -1], &[0, 1]])
        );
        assert_eq!(
            M::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse(),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn solve_matches_inverse() {
        let a = M::from_i64_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let b = vec![q(1, 1), q(2, 1), q(3, 1)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn companion_realizes_polynomial() {
        let f = P::from_i64s(&[5, -3, 0, 2, 1]);
        assert_eq!(M::companion(&f).minimal_polynomial(), f);
    }
}
