use std::fmt;
use std::sync::Arc;

use super::{Field, Rational};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;

#[derive(Debug)]
struct Modulus {
    poly: Poly<Rational>,
    /// `power_sums[k] = Σ_j θ_j^k` over the roots θ_j of the modulus, for
    /// `k < deg`.
    power_sums: Vec<Rational>,
}

/// The quotient ring `Q[Y]/(m(Y))` for a monic irreducible `m`.
///
/// Handles are cheap to clone and compare; the power-sum table used by
/// [`NumberField::trace`] is computed once at construction.
#[derive(Clone, Debug)]
pub struct NumberField(Arc<Modulus>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.poly == other.0.poly
    }
}

impl Eq for NumberField {}

/// Power sums `p_0, …, p_{d-1}` of the roots of a monic polynomial by
/// Newton's identities.
fn newton_power_sums(m: &Poly<Rational>) -> Vec<Rational> {
    let d = m.degree().expect("nonzero modulus");
    // m(Y) = Y^d + a_{d-1} Y^{d-1} + ... + a_0
    let a = |i: usize| m.coeff(i);
    let mut p = vec![Rational::from_integer(d.into())];
    for k in 1..d {
        let mut acc = -Rational::from_integer(k.into()) * a(d - k);
        for i in 1..k {
            acc -= a(d - i) * &p[k - i];
        }
        p.push(acc);
    }
    p
}

impl NumberField {
    /// Creates the field for `modulus`, made monic. Irreducibility over `Q`
    /// is the caller's responsibility.
    pub fn new(modulus: &Poly<Rational>) -> Result<Self> {
        let poly = modulus.monic().ok_or(Error::ZeroPolynomial)?;
        if poly.degree() == Some(0) {
            return Err(Error::Parse(
                "number field modulus must have positive degree".into(),
            ));
        }
        let power_sums = newton_power_sums(&poly);
        Ok(NumberField(Arc::new(Modulus { poly, power_sums })))
    }

    pub fn modulus(&self) -> &Poly<Rational> {
        &self.0.poly
    }

    pub fn degree(&self) -> usize {
        self.0.poly.degree().unwrap()
    }

    /// Reduces `residue` modulo the field polynomial.
    pub fn element(&self, residue: &Poly<Rational>) -> NumberFieldElement {
        let residue = residue.rem(&self.0.poly).expect("nonzero modulus");
        NumberFieldElement {
            residue,
            field: Some(self.clone()),
        }
    }

    /// The class of `Y`, a generic root of the modulus.
    pub fn generator(&self) -> NumberFieldElement {
        self.element(&Poly::x())
    }

    pub fn constant(&self, q: &Rational) -> NumberFieldElement {
        self.element(&Poly::constant(q.clone()))
    }

    /// Trace `Tr_{R/Q}(x)`, the sum of `x` over all embeddings, computed as
    /// `Σ_k c_k·p_k` from the cached power sums.
    ///
    /// An element not attached to any field is a rational constant and is
    /// traced in this field. Panics if `x` belongs to a different field.
    pub fn trace(&self, x: &NumberFieldElement) -> Rational {
        if let Some(f) = &x.field {
            assert!(
                f == self,
                "trace of an element from a different number field"
            );
        }
        let reduced = x.residue.rem(&self.0.poly).expect("nonzero modulus");
        reduced
            .coeffs()
            .iter()
            .zip(&self.0.power_sums)
            .map(|(c, p)| c * p)
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Matrix of multiplication by `x` on the basis `1, Y, …, Y^{d-1}`.
    /// Column `k` holds the coordinates of `x·Y^k`.
    pub fn multiplication_matrix(&self, x: &NumberFieldElement) -> Matrix<Rational> {
        let d = self.degree();
        let x = self.attach(x);
        let mut out = Matrix::zeros(d);
        let mut basis = self.constant(&Rational::one());
        let y = self.generator();
        for col in 0..d {
            let prod = x.mul_ref(&basis);
            for row in 0..d {
                out.set(row, col, prod.residue.coeff(row));
            }
            basis = basis.mul_ref(&y);
        }
        out
    }

    /// Attaches a field-less constant to this field.
    pub fn attach(&self, x: &NumberFieldElement) -> NumberFieldElement {
        match &x.field {
            Some(f) => {
                assert!(f == self, "element belongs to a different number field");
                x.clone()
            }
            None => self.element(&x.residue),
        }
    }
}

/// An element of some `Q[Y]/(m(Y))`.
///
/// Elements built from rationals through [`Field::from_rational`] (including
/// zero and one) carry no field; they act as constants and adopt the field
/// of whatever they are combined with. Combining elements of two different
/// fields is a programming error and panics.
#[derive(Clone)]
pub struct NumberFieldElement {
    residue: Poly<Rational>,
    field: Option<NumberField>,
}

impl NumberFieldElement {
    pub fn residue(&self) -> &Poly<Rational> {
        &self.residue
    }

    pub fn field(&self) -> Option<&NumberField> {
        self.field.as_ref()
    }

    fn join(&self, rhs: &Self) -> Option<NumberField> {
        match (&self.field, &rhs.field) {
            (Some(a), Some(b)) => {
                assert!(a == b, "arithmetic across different number fields");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn build(residue: Poly<Rational>, field: Option<NumberField>) -> Self {
        match field {
            Some(f) => f.element(&residue),
            None => NumberFieldElement {
                residue,
                field: None,
            },
        }
    }

    /// Inverse through the extended Euclidean algorithm on the residue and
    /// the modulus.
    pub fn invert(&self) -> Result<Self> {
        if self.residue.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.field {
            None => {
                let c = self.residue.coeff(0);
                Ok(NumberFieldElement {
                    residue: Poly::constant(c.recip()),
                    field: None,
                })
            }
            Some(f) => {
                let (g, s, _) = Poly::ext_gcd(&self.residue, f.modulus())?;
                if g.degree() != Some(0) {
                    // Only possible if the modulus is reducible.
                    return Err(Error::DivisionByZero);
                }
                Ok(f.element(&s))
            }
        }
    }
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        if let (Some(a), Some(b)) = (&self.field, &other.field) {
            if a != b {
                return false;
            }
        }
        self.residue == other.residue
    }
}

impl Field for NumberFieldElement {
    fn zero() -> Self {
        NumberFieldElement {
            residue: Poly::zero(),
            field: None,
        }
    }
    fn one() -> Self {
        NumberFieldElement {
            residue: Poly::one(),
            field: None,
        }
    }
    fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let field = self.join(rhs);
        NumberFieldElement::build(&self.residue + &rhs.residue, field)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let field = self.join(rhs);
        NumberFieldElement::build(&self.residue - &rhs.residue, field)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let field = self.join(rhs);
        NumberFieldElement::build(&self.residue * &rhs.residue, field)
    }
    fn neg_ref(&self) -> Self {
        NumberFieldElement {
            residue: -&self.residue,
            field: self.field.clone(),
        }
    }
    fn inv_ref(&self) -> Option<Self> {
        self.invert().ok()
    }
    fn from_rational(q: &Rational) -> Self {
        NumberFieldElement {
            residue: Poly::constant(q.clone()),
            field: None,
        }
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue.display_in("Y"))
    }
}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            Some(field) => write!(f, "[{}] mod ({})", self, field.modulus().display_in("Y")),
            None => write!(f, "[{}]", self),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn field(coeffs: &[i64]) -> NumberField {
        NumberField::new(&Poly::from_i64s(coeffs)).unwrap()
    }

    #[test]
    fn invert_examples() {
        let k = field(&[-2, 0, 1]);
        let y = k.generator();
        assert_eq!(
            y.invert().unwrap(),
            k.element(&Poly::new(vec![q(0, 1), q(1, 2)]))
        );

        let g = field(&[1, 0, 1]);
        assert_eq!(g.constant(&q(3, 1)).invert().unwrap(), g.constant(&q(1, 3)));

        let one_plus_y = k.constant(&q(1, 1)).add_ref(&y);
        let inv = one_plus_y.invert().unwrap();
        assert_eq!(inv, k.element(&Poly::from_i64s(&[-1, 1])));
        assert!(one_plus_y.mul_ref(&inv).is_one());

        assert_eq!(k.constant(&q(0, 1)).invert(), Err(Error::DivisionByZero));
    }

    #[test]
    fn trace_examples() {
        let k = field(&[-2, 0, 1]);
        assert_eq!(k.trace(&k.generator()), q(0, 1));
        assert_eq!(k.trace(&k.constant(&q(3, 1))), q(6, 1));
        let y2 = k.generator().mul_ref(&k.generator());
        assert_eq!(k.trace(&y2), q(4, 1));
        // A field-less constant is traced in the field it is handed to.
        assert_eq!(k.trace(&NumberFieldElement::from_i64(3)), q(6, 1));
    }

    #[test]
    fn trace_matches_multiplication_matrix() {
        let k = field(&[1, -1, 0, 1]); // Y^3 - Y + 1
        let x = k.element(&Poly::from_i64s(&[2, -3, 5]));
        let m = k.multiplication_matrix(&x);
        let diag = (0..3).fold(q(0, 1), |acc, i| acc + m.get(i, i));
        assert_eq!(k.trace(&x), diag);
    }

    #[test]
    fn newton_sums_of_cubic() {
        // roots of Y^3 - 6Y^2 + 11Y - 6 are 1, 2, 3
        let p = newton_power_sums(&Poly::from_i64s(&[-6, 11, -6, 1]));
        assert_eq!(p, vec![q(3, 1), q(6, 1), q(14, 1)]);
    }

    #[test]
    fn constants_adopt_field() {
        let k = field(&[-2, 0, 1]);
        let c = NumberFieldElement::from_i64(5);
        let s = c.add_ref(&k.generator());
        assert_eq!(s.field(), Some(&k));
        assert_eq!(s.residue(), &Poly::from_i64s(&[5, 1]));
    }
}
