//! Dense univariate polynomials over any [`Field`].

mod factor;
mod modp;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{Field, NumberField, NumberFieldElement, Rational};

pub(crate) use factor::canonical_order;
pub use factor::{
    default_degree_cap, factor_rational, factor_rational_with_cap, set_default_degree_cap,
    FactoredMinPoly,
};
pub use parse::parse_poly;

/// A polynomial with coefficients `coeffs[k]` on `X^k`, trailing zeros
/// trimmed. The zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Poly::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    /// `X - c`.
    pub fn linear(c: &F) -> Self {
        Poly::new(vec![c.neg_ref(), F::one()])
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `X^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Same polynomial divided by its leading coefficient; `None` for zero.
    pub fn monic(&self) -> Option<Self> {
        let lc = self.leading()?;
        if lc.is_one() {
            return Some(self.clone());
        }
        let inv = lc.inv_ref()?;
        Some(self.scale(&inv))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly::one();
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

    /// Horner evaluation at a scalar.
    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d
            .leading()
            .unwrap()
            .inv_ref()
            .ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        let Some(rd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if rd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); rd - dd + 1];
        for k in (dd..=rd).rev() {
            if r[k].is_zero() {
                continue;
            }
            let factor = r[k].mul_ref(&lc_inv);
            for (j, c) in d.coeffs.iter().enumerate() {
                r[k - dd + j] = r[k - dd + j].sub_ref(&factor.mul_ref(c));
            }
            q[k - dd] = factor;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        self.div_rem(d).map(|(_, r)| r)
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = r0.rem(&r1).unwrap();
            r0 = r1;
            r1 = r;
        }
        r0.monic().unwrap_or_else(Poly::zero)
    }

    /// Monic least common multiple of two nonzero polynomials.
    pub fn lcm(a: &Self, b: &Self) -> Self {
        let g = Poly::gcd(a, b);
        (a * &b.exact_div(&g).unwrap()).monic().unwrap()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    ///
    /// The cofactors are the minimal-degree pair
    /// (`deg s < deg b − deg g`, `deg t < deg a − deg g`). When `a` and `b`
    /// are associates the pair `(1/lc(a), 0)` is returned.
    pub fn ext_gcd(a: &Self, b: &Self) -> Result<(Self, Self, Self)> {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => return Err(Error::BothZero),
            (true, false) => {
                let inv = b
                    .leading()
                    .unwrap()
                    .inv_ref()
                    .ok_or(Error::DivisionByZero)?;
                return Ok((b.scale(&inv), Poly::zero(), Poly::constant(inv)));
            }
            (false, true) => {
                let inv = a
                    .leading()
                    .unwrap()
                    .inv_ref()
                    .ok_or(Error::DivisionByZero)?;
                return Ok((a.scale(&inv), Poly::constant(inv), Poly::zero()));
            }
            _ => {}
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0
            .leading()
            .unwrap()
            .inv_ref()
            .ok_or(Error::DivisionByZero)?;
        if s0.is_zero() && a.degree() == b.degree() {
            // b | a with equal degrees: prefer s = 1/lc(a).
            let ia = a
                .leading()
                .unwrap()
                .inv_ref()
                .ok_or(Error::DivisionByZero)?;
            return Ok((r0.scale(&inv), Poly::constant(ia), Poly::zero()));
        }
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_ref(&F::from_i64(k as i64)))
                .collect(),
        )
    }

    /// Hasse derivative `Φ_k = Σ_{m≥k} C(m,k)·a_m·X^{m−k}`.
    pub fn hasse_derivative(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(k));
        // C(m, k) updated multiplicatively along m.
        let mut binom = BigInt::from(1);
        for m in k..self.coeffs.len() {
            if m > k {
                binom = binom * BigInt::from(m) / BigInt::from(m - k);
            }
            let b = F::from_rational(&Rational::from_integer(binom.clone()));
            out.push(self.coeffs[m].mul_ref(&b));
        }
        Poly::new(out)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// `self(q(X))`.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * q) + &Poly::constant(c.clone())
        })
    }
}

/// Squarefree factors with their multiplicities.
pub type Profile = Vec<(Poly<Rational>, usize)>;

impl Poly<Rational> {
    /// Embeds a rational polynomial into any field.
    pub fn lift<G: Field>(&self) -> Poly<G> {
        self.map(G::from_rational)
    }

    /// Squarefree part `g = p / gcd(p, p')` (monic) with the Yun profile
    /// `[(a_k, k)]` where `p = lc · Π a_k^k` and each `a_k` is squarefree,
    /// monic and nonconstant.
    pub fn squarefree_part(&self) -> Result<(Poly<Rational>, Profile)> {
        let profile = self.yun()?;
        let g = profile.iter().fold(Poly::one(), |acc, (a, _)| &acc * a);
        Ok((g, profile))
    }

    /// Yun's squarefree decomposition.
    pub fn yun(&self) -> Result<Vec<(Poly<Rational>, usize)>> {
        let f = self.monic().ok_or(Error::ZeroPolynomial)?;
        let mut out = Vec::new();
        if f.degree() == Some(0) {
            return Ok(out);
        }
        let df = f.derivative();
        let a0 = Poly::gcd(&f, &df);
        let mut b = f.exact_div(&a0)?;
        let mut c = df.exact_div(&a0)?;
        let mut d = &c - &b.derivative();
        let mut k = 1;
        loop {
            let a = Poly::gcd(&b, &d);
            if a.degree() != Some(0) {
                out.push((a.clone(), k));
            }
            b = b.exact_div(&a)?;
            if b.degree() == Some(0) {
                break;
            }
            c = d.exact_div(&a)?;
            d = &c - &b.derivative();
            k += 1;
        }
        Ok(out)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && Poly::gcd(self, &self.derivative()).degree() == Some(0)
    }

    /// Plain-text form `c0 + c1*X + … + cd*X^d`, nonzero terms only.
    pub fn to_text(&self) -> String {
        self.display_in("X")
    }

    /// Integer coefficient vector of the primitive part, with positive
    /// leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        factor::primitive_integer_part(self)
    }

    /// Companion-matrix friendly check used by callers working with
    /// irreducible factors.
    pub fn is_x(&self) -> bool {
        self.degree() == Some(1) && self.coeff(0).is_zero() && self.coeff(1).is_one()
    }
}

impl Poly<NumberFieldElement> {
    /// Coefficient-wise trace down to `Q[X]`.
    pub fn trace_coeffwise(&self, field: &NumberField) -> Result<Poly<Rational>> {
        if self
            .coeffs
            .iter()
            .any(|c| c.field().is_some_and(|f| f != field))
        {
            return Err(Error::MixedModuli);
        }
        Ok(Poly::new(
            self.coeffs.iter().map(|c| field.trace(c)).collect(),
        ))
    }
}

impl<F: Field + fmt::Display> Poly<F> {
    /// Plain-text form in the named variable.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = format!("{c}");
            let simple = !text.contains(' ');
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (
                    false,
                    if simple {
                        text.clone()
                    } else {
                        format!("({text})")
                    },
                ),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
            match k {
                0 => {}
                1 => out.push_str(&format!("*{var}")),
                _ => out.push_str(&format!("*{var}^{k}")),
            }
        }
        out
    }
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<F: fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeff(k).add_ref(&rhs.coeff(k)))
                .collect(),
        )
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeff(k).sub_ref(&rhs.coeff(k)))
                .collect(),
        )
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(out)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| c.neg_ref()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(c: &[i64]) -> P {
        Poly::from_i64s(c)
    }

    #[test]
    fn ext_gcd_linear() {
        let (g, s, t) = P::ext_gcd(&p(&[0, 1]), &p(&[-1, 1])).unwrap();
        assert_eq!((g, s, t), (p(&[1]), p(&[1]), p(&[-1])));
    }

    #[test]
    fn ext_gcd_tie_prefers_first_cofactor() {
        let x2 = p(&[0, 0, 1]);
        let (g, s, t) = P::ext_gcd(&x2, &x2).unwrap();
        assert_eq!((g, s, t), (x2, p(&[1]), P::zero()));
    }

    #[test]
    fn ext_gcd_over_number_field() {
        let k = NumberField::new(&p(&[-2, 0, 1])).unwrap();
        let y = k.generator();
        let x = Poly::<NumberFieldElement>::x();
        let a = (&x - &Poly::constant(y.clone())).pow(2);
        let b = &x + &Poly::constant(y);
        let (g, s, t) = Poly::ext_gcd(&a, &b).unwrap();
        assert!(g.is_one());
        assert!((&(&s * &a) + &(&t * &b)).is_one());
        assert!(s.degree().unwrap_or(0) < 1);
        assert!(t.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn ext_gcd_both_zero() {
        assert_eq!(P::ext_gcd(&P::zero(), &P::zero()), Err(Error::BothZero));
    }

    #[test]
    fn ext_gcd_minimal_degrees() {
        let a = p(&[1, 2, 0, 1, 1]);
        let b = p(&[-3, 0, 1, 2]);
        let (g, s, t) = P::ext_gcd(&a, &b).unwrap();
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        let dg = g.degree().unwrap();
        assert!(s.degree().unwrap_or(0) < 3 - dg);
        assert!(t.degree().unwrap_or(0) < 4 - dg);
    }

    #[test]
    fn squarefree_examples() {
        let (g, profile) = p(&[0, 0, -1, 1]).squarefree_part().unwrap();
        assert_eq!(g, p(&[0, -1, 1]));
        assert_eq!(profile, vec![(p(&[-1, 1]), 1), (p(&[0, 1]), 2)]);

        let (g, _) = p(&[-2, 0, 1]).squarefree_part().unwrap();
        assert_eq!(g, p(&[-2, 0, 1]));

        let m = &p(&[-2, 0, 1]).pow(2) * &p(&[1, 1]);
        let (g, _) = m.squarefree_part().unwrap();
        assert_eq!(g, &p(&[-2, 0, 1]) * &p(&[1, 1]));

        assert_eq!(P::zero().squarefree_part(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn hasse_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).hasse_derivative(2), p(&[0, 3]));
        let f = p(&[4, -1, 2, 7]);
        assert_eq!(f.hasse_derivative(0), f);
        assert_eq!(p(&[1, 1, 1]).hasse_derivative(1), p(&[1, 2]));
        assert_eq!(p(&[1, 1]).hasse_derivative(3), P::zero());
    }

    #[test]
    fn trace_examples() {
        let k = NumberField::new(&p(&[-2, 0, 1])).unwrap();
        let y = k.generator();
        let yx3 = Poly::new(vec![k.constant(&q(3, 1)), y.clone()]);
        assert_eq!(yx3.trace_coeffwise(&k).unwrap(), p(&[6]));

        let half_y2 = y
            .mul_ref(&y)
            .mul_ref(&NumberFieldElement::from_rational(&q(1, 2)));
        let poly = Poly::new(vec![NumberFieldElement::zero(), half_y2]);
        assert_eq!(poly.trace_coeffwise(&k).unwrap(), p(&[0, 2]));

        // (Y·X + 2)/4, the generic covariant of X^2 - 2
        let quarter = NumberFieldElement::from_rational(&q(1, 4));
        let c = Poly::new(vec![k.constant(&q(1, 2)), y.mul_ref(&quarter)]);
        assert_eq!(c.trace_coeffwise(&k).unwrap(), p(&[1]));
    }

    #[test]
    fn trace_rejects_foreign_coefficients() {
        let k = NumberField::new(&p(&[-2, 0, 1])).unwrap();
        let l = NumberField::new(&p(&[1, 0, 1])).unwrap();
        let poly = Poly::new(vec![l.generator()]);
        assert_eq!(poly.trace_coeffwise(&k), Err(Error::MixedModuli));
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[-2, 0, 1]).to_text(), "-2 + 1*X^2");
        assert_eq!(Poly::new(vec![q(1, 2), q(-3, 4)]).to_text(), "1/2 - 3/4*X");
        assert_eq!(P::zero().to_text(), "0");
    }

    #[test]
    fn division() {
        let (qq, r) = p(&[1, 0, 0, 1]).div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(qq, p(&[1, -1, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&[1]).div_rem(&P::zero()), Err(Error::DivisionByZero));
    }
}
