use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::{rational_to_string, Field, Rational};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn of_rational(q: &Rational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.as_i8() * rhs.as_i8() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }
}

/// An element of a multi-quadratic field `Q(√d₁, …, √d_k)`.
///
/// The element is stored as a sparse coordinate map on the basis of
/// squarefree radicals. Label `1` is the rational part; a label `d` stands
/// for `√d`, with `√d = i·√|d|` when `d < 0`. Zero coordinates are never
/// stored, so equality of values is equality of maps.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiQuad {
    coords: BTreeMap<i64, Rational>,
}

/// Writes a nonzero integer as `s²·d` with `d` squarefree (sign carried by
/// `d`). Returns `(s, d)`.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!num_traits::Zero::is_zero(n), "squarefree part of zero");
    let mut rest = n.abs();
    let mut square_root = BigInt::from(1);
    let mut free = BigInt::from(1);
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            square_root *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    free *= rest;
    if n.is_negative() {
        free = -free;
    }
    (square_root, free)
}

/// `√a·√b = coefficient·√label` for squarefree labels.
fn mul_labels(a: i64, b: i64) -> (i64, i64) {
    let g = a.unsigned_abs().gcd(&b.unsigned_abs()) as i64;
    let magnitude = (a.abs() / g)
        .checked_mul(b.abs() / g)
        .expect("radical label overflow");
    match (a < 0, b < 0) {
        (true, true) => (-g, magnitude),
        (true, false) | (false, true) => (g, -magnitude),
        (false, false) => (g, magnitude),
    }
}

impl MultiQuad {
    pub fn from_rational(q: Rational) -> Self {
        let mut coords = BTreeMap::new();
        if !q.is_zero() {
            coords.insert(1, q);
        }
        MultiQuad { coords }
    }

    /// `√d` for a squarefree integer `d`.
    pub fn sqrt_of_squarefree(d: i64) -> Self {
        assert!(d != 0, "radicand must be nonzero");
        let (s, free) = squarefree_decompose(&BigInt::from(d));
        assert!(num_traits::One::is_one(&s), "{d} is not squarefree");
        let mut coords = BTreeMap::new();
        coords.insert(free.to_i64().unwrap(), Rational::one());
        MultiQuad { coords }
    }

    /// Builds an element from `(label, coordinate)` pairs. Labels must be
    /// squarefree; repeated labels are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Result<Self> {
        let mut out = MultiQuad::default();
        for (label, c) in terms {
            if label == 0 {
                return Err(Error::Parse("radical label 0".into()));
            }
            let (s, free) = squarefree_decompose(&BigInt::from(label));
            if !num_traits::One::is_one(&s) {
                return Err(Error::Parse(format!(
                    "radical label {label} is not squarefree"
                )));
            }
            debug_assert_eq!(free.to_i64(), Some(label));
            out.add_term(label, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, label: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coords.entry(label).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coords.remove(&label);
        }
    }

    /// Nonzero coordinates keyed by basis label.
    pub fn coordinates(&self) -> &BTreeMap<i64, Rational> {
        &self.coords
    }

    pub fn coordinate(&self, label: i64) -> Rational {
        self.coords
            .get(&label)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coords.len() {
            0 => Some(Rational::zero()),
            1 => self.coords.get(&1).cloned(),
            _ => None,
        }
    }

    /// Sorted prime-level radicands generating the labels in use: the
    /// distinct primes dividing any label, with `-1` when a negative label
    /// occurs.
    pub fn radicands(&self) -> Vec<i64> {
        let mut out = BTreeSet::new();
        for &label in self.coords.keys() {
            if label < 0 {
                out.insert(-1);
            }
            let mut m = label.unsigned_abs();
            let mut p = 2u64;
            while p * p <= m {
                if m % p == 0 {
                    out.insert(p as i64);
                    m /= p;
                } else {
                    p += 1;
                }
            }
            if m > 1 {
                out.insert(m as i64);
            }
        }
        out.into_iter().collect()
    }

    /// True when no coordinate sits on a negative label.
    pub fn is_totally_real(&self) -> bool {
        self.coords.keys().all(|&l| l > 0)
    }

    /// Complex conjugation: flips the sign of every coordinate on a
    /// negative label.
    pub fn conjugate(&self) -> Self {
        MultiQuad {
            coords: self
                .coords
                .iter()
                .map(|(&l, c)| (l, if l < 0 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// The element `s·√d` with `s > 0` and `(s·√d)² = q`.
    pub fn sqrt_rational(q: &Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::NonPositiveRadicand);
        }
        let (num_root, num_free) = squarefree_decompose(&(q.numer() * q.denom()));
        let coefficient = Rational::new(num_root, q.denom().clone());
        let label = num_free
            .to_i64()
            .ok_or_else(|| Error::Internal("radicand does not fit in i64".into()))?;
        let mut coords = BTreeMap::new();
        coords.insert(label, coefficient);
        Ok(MultiQuad { coords })
    }

    /// Exact sign of a totally real element.
    ///
    /// Zero is decided on the coordinates. Otherwise each `√d` is enclosed
    /// in a dyadic interval and the enclosure is halved until the interval
    /// sum excludes zero.
    pub fn sign(&self) -> Result<Sign> {
        if !self.is_totally_real() {
            return Err(Error::NotTotallyReal);
        }
        if self.coords.is_empty() {
            return Ok(Sign::Zero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Sign::of_rational(&q));
        }
        let mut bits = 16u32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Ok(Sign::Positive);
            }
            if hi.is_negative() {
                return Ok(Sign::Negative);
            }
            bits *= 2;
            if bits > 1 << 16 {
                return Err(Error::Internal("sign refinement did not terminate".into()));
            }
        }
    }

    /// Interval `[lo, hi]` containing the value, computed with every
    /// radical bracketed to width `2^-bits`.
    fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        let scale = BigInt::from(1) << (2 * bits);
        let denom = BigInt::from(1) << bits;
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (&label, c) in &self.coords {
            if label == 1 {
                lo += c;
                hi += c;
                continue;
            }
            let floor = (BigInt::from(label) * &scale).sqrt();
            let r_lo = Rational::new(floor.clone(), denom.clone());
            let r_hi = Rational::new(floor + 1u32, denom.clone());
            if c.is_positive() {
                lo += c * &r_lo;
                hi += c * &r_hi;
            } else {
                lo += c * &r_hi;
                hi += c * &r_lo;
            }
        }
        (lo, hi)
    }

    /// `|x|` for a totally real element.
    pub fn abs(&self) -> Result<Self> {
        Ok(match self.sign()? {
            Sign::Negative => self.neg_ref(),
            _ => self.clone(),
        })
    }

    /// Closure of the labels in use under radical multiplication,
    /// always containing `1`.
    fn basis(&self) -> Vec<i64> {
        let mut set: BTreeSet<i64> = self.coords.keys().copied().collect();
        set.insert(1);
        loop {
            let current: Vec<i64> = set.iter().copied().collect();
            let mut grew = false;
            for &a in &current {
                for &b in &current {
                    if set.insert(mul_labels(a, b).1) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set.into_iter().collect();
            }
        }
    }

    /// Inverse by solving the multiplication-matrix system `T·y = e₁` on
    /// the basis generated by the element's own labels.
    pub fn invert(&self) -> Result<Self> {
        if self.coords.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(MultiQuad::from_rational(q.recip()));
        }
        let basis = self.basis();
        let index: BTreeMap<i64, usize> = basis.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let n = basis.len();
        let mut t = Matrix::<Rational>::zeros(n);
        for (col, &b) in basis.iter().enumerate() {
            for (&l, c) in &self.coords {
                let (coef, label) = mul_labels(l, b);
                let row = index[&label];
                let v = t.get(row, col) + c * Rational::from_integer(coef.into());
                t.set(row, col, v);
            }
        }
        let mut rhs = vec![Rational::zero(); n];
        rhs[index[&1]] = Rational::one();
        let y = t.solve(&rhs).map_err(|_| Error::DivisionByZero)?;
        Ok(MultiQuad::from_terms_unchecked(basis.into_iter().zip(y)))
    }

    fn from_terms_unchecked<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut out = MultiQuad::default();
        for (l, c) in terms {
            out.add_term(l, c);
        }
        out
    }
}

impl Field for MultiQuad {
    fn zero() -> Self {
        MultiQuad::default()
    }
    fn one() -> Self {
        MultiQuad::from_rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&l, c) in &rhs.coords {
            out.add_term(l, c.clone());
        }
        out
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&l, c) in &rhs.coords {
            out.add_term(l, -c);
        }
        out
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = MultiQuad::default();
        for (&a, x) in &self.coords {
            for (&b, y) in &rhs.coords {
                let (coef, label) = mul_labels(a, b);
                out.add_term(label, x * y * Rational::from_integer(coef.into()));
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        MultiQuad {
            coords: self.coords.iter().map(|(&l, c)| (l, -c)).collect(),
        }
    }
    fn inv_ref(&self) -> Option<Self> {
        self.invert().ok()
    }
    fn from_rational(q: &Rational) -> Self {
        MultiQuad::from_rational(q.clone())
    }
}

impl<'a> Add<&'a MultiQuad> for &'a MultiQuad {
    type Output = MultiQuad;
    fn add(self, rhs: &MultiQuad) -> MultiQuad {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a MultiQuad> for &'a MultiQuad {
    type Output = MultiQuad;
    fn sub(self, rhs: &MultiQuad) -> MultiQuad {
        self.sub_ref(rhs)
    }
}

impl<'a> Mul<&'a MultiQuad> for &'a MultiQuad {
    type Output = MultiQuad;
    fn mul(self, rhs: &MultiQuad) -> MultiQuad {
        self.mul_ref(rhs)
    }
}

impl Neg for &MultiQuad {
    type Output = MultiQuad;
    fn neg(self) -> MultiQuad {
        self.neg_ref()
    }
}

impl fmt::Display for MultiQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (k, (&l, c)) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if l == 1 {
                write!(f, "{}", rational_to_string(c))?;
            } else {
                write!(f, "{}*sqrt({l})", rational_to_string(c))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiQuad({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn mq(terms: &[(i64, i64, i64)]) -> MultiQuad {
        MultiQuad::from_terms(terms.iter().map(|&(l, n, d)| (l, q(n, d)))).unwrap()
    }

    #[test]
    fn invert_examples() {
        assert_eq!(mq(&[(1, 2, 1)]).invert().unwrap(), mq(&[(1, 1, 2)]));
        assert_eq!(mq(&[(2, 1, 1)]).invert().unwrap(), mq(&[(2, 1, 2)]));
        let x = mq(&[(1, 1, 1), (2, 1, 1)]);
        let inv = x.invert().unwrap();
        assert_eq!(inv, mq(&[(1, -1, 1), (2, 1, 1)]));
        assert!(x.mul_ref(&inv).is_one());
        assert_eq!(MultiQuad::zero().invert(), Err(Error::DivisionByZero));
    }

    #[test]
    fn invert_mixed_radicals() {
        let x = mq(&[(1, 1, 1), (2, 1, 1), (3, 1, 1), (-1, 2, 1)]);
        assert!(x.mul_ref(&x.invert().unwrap()).is_one());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(MultiQuad::zero().sign().unwrap(), Sign::Zero);
        assert_eq!(mq(&[(1, -1, 1), (2, 1, 1)]).sign().unwrap(), Sign::Positive);
        assert_eq!(mq(&[(1, 7, 1), (2, -5, 1)]).sign().unwrap(), Sign::Negative);
        assert_eq!(mq(&[(-1, 1, 1)]).sign(), Err(Error::NotTotallyReal));
        // 99/70 is a tight convergent of √2, so this needs refinement.
        assert_eq!(
            mq(&[(1, -99, 70), (2, 1, 1)]).sign().unwrap(),
            Sign::Negative
        );
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(mq(&[(1, 3, 1)]).conjugate(), mq(&[(1, 3, 1)]));
        assert_eq!(mq(&[(-1, 1, 1)]).conjugate(), mq(&[(-1, -1, 1)]));
        assert_eq!(
            mq(&[(1, 1, 1), (-1, 2, 1), (2, 1, 1)]).conjugate(),
            mq(&[(1, 1, 1), (-1, -2, 1), (2, 1, 1)])
        );
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(
            MultiQuad::sqrt_rational(&q(4, 1)).unwrap(),
            mq(&[(1, 2, 1)])
        );
        assert_eq!(
            MultiQuad::sqrt_rational(&q(2, 1)).unwrap(),
            mq(&[(2, 1, 1)])
        );
        assert_eq!(
            MultiQuad::sqrt_rational(&q(8, 9)).unwrap(),
            mq(&[(2, 2, 3)])
        );
        assert_eq!(
            MultiQuad::sqrt_rational(&q(0, 1)),
            Err(Error::NonPositiveRadicand)
        );
        assert_eq!(
            MultiQuad::sqrt_rational(&q(-1, 1)),
            Err(Error::NonPositiveRadicand)
        );
        let r = MultiQuad::sqrt_rational(&q(3, 8)).unwrap();
        assert_eq!(r.mul_ref(&r), mq(&[(1, 3, 8)]));
        assert_eq!(r.sign().unwrap(), Sign::Positive);
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = MultiQuad::sqrt_of_squarefree(-1);
        assert_eq!(i.mul_ref(&i), mq(&[(1, -1, 1)]));
        let a = MultiQuad::sqrt_of_squarefree(-2);
        let b = MultiQuad::sqrt_of_squarefree(-3);
        assert_eq!(a.mul_ref(&b), mq(&[(6, -1, 1)]));
    }

    #[test]
    fn squarefree_decomposition() {
        assert_eq!(
            squarefree_decompose(&BigInt::from(72)),
            (6.into(), 2.into())
        );
        assert_eq!(
            squarefree_decompose(&BigInt::from(-4)),
            (2.into(), (-1).into())
        );
        assert_eq!(squarefree_decompose(&BigInt::from(1)), (1.into(), 1.into()));
        assert_eq!(
            squarefree_decompose(&BigInt::from(49)),
            (7.into(), 1.into())
        );
    }

    #[test]
    fn radicands_listing() {
        assert_eq!(
            mq(&[(1, 1, 1), (6, 1, 1), (-5, 1, 1)]).radicands(),
            vec![-1, 2, 3, 5]
        );
    }
}
