//! Factorization over `Q`: Yun squarefree split, then for each squarefree
//! part a modular factorization, multifactor Hensel lifting and subset
//! recombination (Zassenhaus).

use std::cmp::Ordering;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{PolyP, Zp};
use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(16);

/// Widest subset tried during recombination.
const RECOMBINATION_WIDTH_CAP: usize = 8;

/// Good primes examined before settling on the one with fewest factors.
const PRIME_CANDIDATES: usize = 5;

pub fn default_degree_cap() -> usize {
    DEGREE_CAP.load(AtomicOrdering::Relaxed)
}

/// Changes the process-wide cap used by [`factor_rational`].
pub fn set_default_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, AtomicOrdering::Relaxed);
}

/// A rational polynomial split into distinct monic irreducible factors
/// with multiplicities. The factor `X`, when present, is stored last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredMinPoly {
    pub factors: Vec<(Poly<Rational>, usize)>,
    /// Leading coefficient of the factored input.
    pub leading: Rational,
}

impl FactoredMinPoly {
    /// Builds from arbitrary factors, normalizing each to monic and
    /// sorting into canonical order.
    pub fn from_factors(mut factors: Vec<(Poly<Rational>, usize)>) -> Self {
        for (f, _) in factors.iter_mut() {
            *f = f.monic().expect("nonzero factor");
        }
        factors.sort_by(|a, b| canonical_order(&a.0, &b.0));
        FactoredMinPoly {
            factors,
            leading: <Rational as Field>::one(),
        }
    }

    /// Number of irreducible factors `r`.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of factors other than `X` (`r'`).
    pub fn nonzero_count(&self) -> usize {
        self.factors.len() - usize::from(self.has_zero_eigenvalue())
    }

    pub fn has_zero_eigenvalue(&self) -> bool {
        self.factors.last().is_some_and(|(f, _)| f.is_x())
    }

    pub fn zero_factor_index(&self) -> Option<usize> {
        self.has_zero_eigenvalue().then(|| self.factors.len() - 1)
    }

    /// Multiplicity of `X`, or zero.
    pub fn zero_multiplicity(&self) -> usize {
        if self.has_zero_eigenvalue() {
            self.factors.last().unwrap().1
        } else {
            0
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors
            .iter()
            .map(|(f, _)| f.degree().unwrap())
            .collect()
    }

    /// `Π m_i^{μ_i}` (monic).
    pub fn product(&self) -> Poly<Rational> {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, (f, e)| &acc * &f.pow(*e as u32))
    }

    /// `Π m_i` (monic), the squarefree radical.
    pub fn radical(&self) -> Poly<Rational> {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, (f, _)| &acc * f)
    }
}

/// Degree first, then coefficients from the constant term upward; the
/// polynomial `X` sorts after everything else.
pub(crate) fn canonical_order(a: &Poly<Rational>, b: &Poly<Rational>) -> Ordering {
    match (a.is_x(), b.is_x()) {
        (true, true) => return Ordering::Equal,
        (true, false) => return Ordering::Greater,
        (false, true) => return Ordering::Less,
        _ => {}
    }
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Complete factorization over `Q` with the process-wide degree cap.
pub fn factor_rational(p: &Poly<Rational>) -> Result<FactoredMinPoly> {
    factor_rational_with_cap(p, default_degree_cap())
}

pub fn factor_rational_with_cap(p: &Poly<Rational>, cap: usize) -> Result<FactoredMinPoly> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    if degree > cap {
        return Err(Error::DegreeCapExceeded { degree, cap });
    }
    let leading = p.leading().unwrap().clone();
    let mut factors = Vec::new();
    for (part, multiplicity) in p.yun()? {
        for g in factor_squarefree_integer(&primitive_integer_part(&part))? {
            factors.push((integer_to_poly(&g).monic().unwrap(), multiplicity));
        }
    }
    let mut out = FactoredMinPoly::from_factors(factors);
    out.leading = leading;
    Ok(out)
}

/// Primitive integer polynomial proportional to `p`, positive leading
/// coefficient.
pub(crate) fn primitive_integer_part(p: &Poly<Rational>) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) {
        -1
    } else {
        1
    };
    ints.into_iter()
        .map(|c| c / &content * BigInt::from(sign))
        .collect()
}

fn integer_to_poly(c: &[BigInt]) -> Poly<Rational> {
    Poly::new(
        c.iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers, coefficients reduced modulo m where noted.

type PolyZ = Vec<BigInt>;

fn trim_z(mut a: PolyZ) -> PolyZ {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn reduce(a: &[BigInt], m: &BigInt) -> PolyZ {
    trim_z(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Symmetric residues in `(-m/2, m/2]`.
fn symmetric(a: &[BigInt], m: &BigInt) -> PolyZ {
    let half = m / 2;
    trim_z(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn add_z(a: &[BigInt], b: &[BigInt]) -> PolyZ {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim_z(
        (0..n)
            .map(|k| a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero))
            .collect(),
    )
}

fn sub_z(a: &[BigInt], b: &[BigInt]) -> PolyZ {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim_z(
        (0..n)
            .map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))
            .collect(),
    )
}

fn mul_z(a: &[BigInt], b: &[BigInt]) -> PolyZ {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(out)
}

/// Division by a polynomial whose leading coefficient is 1 modulo m.
fn div_rem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (PolyZ, PolyZ) {
    let db = b.len() - 1;
    debug_assert!(b[db].mod_floor(m).is_one() || m.is_one());
    let mut r = reduce(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k - db + j] = (&r[k - db + j] - &c * bj).mod_floor(m);
        }
        q[k - db] = c;
    }
    r.truncate(db);
    (trim_z(q), trim_z(r))
}

fn to_modp(a: &[BigInt], z: Zp) -> PolyP {
    let p = BigInt::from(z.p);
    z.trim(
        a.iter()
            .map(|c| c.mod_floor(&p).to_u64().unwrap())
            .collect(),
    )
}

fn from_modp(a: &[u64]) -> PolyZ {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// One quadratic Hensel step from modulus `m` to `m²`.
///
/// Requires `f ≡ g·h`, `s·g + t·h ≡ 1 (mod m)`, `h` monic.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (PolyZ, PolyZ, PolyZ, PolyZ) {
    let m2 = m * m;
    let e = reduce(&sub_z(f, &mul_z(g, h)), &m2);
    let (q, r) = div_rem_monic(&mul_z(s, &e), h, &m2);
    let g1 = reduce(&add_z(&add_z(g, &mul_z(t, &e)), &mul_z(&q, g)), &m2);
    let h1 = reduce(&add_z(h, &r), &m2);
    let b = reduce(
        &sub_z(&add_z(&mul_z(s, &g1), &mul_z(t, &h1)), &[BigInt::one()]),
        &m2,
    );
    let (c, d) = div_rem_monic(&mul_z(s, &b), &h1, &m2);
    let s1 = reduce(&sub_z(s, &d), &m2);
    let t1 = reduce(&sub_z(&sub_z(t, &mul_z(t, &b)), &mul_z(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lifts `f ≡ lc(f)·Π factors (mod p)` to monic factors modulo `p^(2^steps)`.
fn multifactor_lift(f: &[BigInt], factors: &[PolyP], z: Zp, steps: u32) -> Vec<PolyZ> {
    let p = BigInt::from(z.p);
    let modulus = p.pow(1u32 << steps);
    if factors.len() == 1 {
        let lc = f.last().unwrap();
        let inv = mod_inverse(lc, &modulus);
        let scaled: PolyZ = f.iter().map(|c| c * &inv).collect();
        return vec![reduce(&scaled, &modulus)];
    }
    let k = factors.len() / 2;
    let (left, right) = factors.split_at(k);
    let lc_p = to_modp(&[f.last().unwrap().clone()], z)[0];
    let g0 = z.scale(
        &left.iter().fold(vec![1u64], |acc, q| z.mul_poly(&acc, q)),
        lc_p,
    );
    let h0 = right.iter().fold(vec![1u64], |acc, q| z.mul_poly(&acc, q));
    let (one, s0, t0) = z.ext_gcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (
        from_modp(&g0),
        from_modp(&h0),
        from_modp(&s0),
        from_modp(&t0),
    );
    let mut m = p.clone();
    for _ in 0..steps {
        let fm = reduce(f, &(&m * &m));
        (g, h, s, t) = hensel_step(&fm, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = multifactor_lift(&g, left, z, steps);
    out.extend(multifactor_lift(&h, right, z, steps));
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| {
        (3..)
            .step_by(2)
            .take_while(|d| d * d <= n)
            .all(|d| n % d != 0)
    })
}

/// Exact division over `Z`; `None` when `b` does not divide `a`.
fn divide_exact_z(a: &[BigInt], b: &[BigInt]) -> Option<PolyZ> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let lc = b.last().unwrap();
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (db..a.len()).rev() {
        let (quo, rem) = r[k].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k - db + j] -= &quo * bj;
        }
        q[k - db] = quo;
    }
    r.iter().all(|c| c.is_zero()).then(|| trim_z(q))
}

fn primitive(a: &[BigInt]) -> PolyZ {
    let content = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if a.last().is_some_and(|c| c.is_negative()) {
        -1
    } else {
        1
    };
    a.iter()
        .map(|c| c / &content * BigInt::from(sign))
        .collect()
}

/// Irreducible factors of a primitive squarefree integer polynomial.
fn factor_squarefree_integer(f: &[BigInt]) -> Result<Vec<PolyZ>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let lc = f.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d696e646563);

    let mut best: Option<(Zp, Vec<PolyP>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if tried >= PRIME_CANDIDATES {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let z = Zp { p };
        let fp = to_modp(f, z);
        if fp.len() != f.len() || !z.is_squarefree(&fp) {
            continue;
        }
        tried += 1;
        let factors = z.factor_squarefree(&fp, &mut rng);
        if factors.len() == 1 {
            return Ok(vec![f.to_vec()]);
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((z, factors));
        }
    }
    let (z, modular) = best.expect("some prime is good for a squarefree polynomial");

    // Coefficient bound for lc·g over all factors g of f.
    let norm2 = f.iter().fold(BigInt::zero(), |acc, c| acc + c * c).sqrt() + 1u32;
    let bound = lc.abs() * (BigInt::one() << n) * norm2;
    let target = bound * 2u32 + 1u32;
    let p = BigInt::from(z.p);
    let mut steps = 0u32;
    while p.pow(1u32 << steps) <= target {
        steps += 1;
    }
    let modulus = p.pow(1u32 << steps);
    let mut lifted = multifactor_lift(f, &modular, z, steps);

    let mut found = Vec::new();
    let mut rest = f.to_vec();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        if size > RECOMBINATION_WIDTH_CAP {
            return Err(Error::RecombinationCapExceeded {
                cap: RECOMBINATION_WIDTH_CAP,
            });
        }
        let lc_rest = rest.last().unwrap().clone();
        for subset in Combinations::new(lifted.len(), size) {
            let product = subset.iter().fold(vec![lc_rest.clone()], |acc, &i| {
                reduce(&mul_z(&acc, &lifted[i]), &modulus)
            });
            let candidate = primitive(&symmetric(&product, &modulus));
            if let Some(q) = divide_exact_z(&rest, &candidate) {
                found.push(candidate);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.len() > 1 {
        found.push(primitive(&rest));
    }
    Ok(found)
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::from_i64s(c)
    }

    fn factor_list(f: &Poly<Rational>) -> Vec<(Poly<Rational>, usize)> {
        factor_rational(f).unwrap().factors
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(
            factor_list(&p(&[-1, 0, 1])),
            vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]
        );
    }

    #[test]
    fn quartic_into_quadratics() {
        assert_eq!(
            factor_list(&p(&[-4, 0, 0, 0, 1])),
            vec![(p(&[-2, 0, 1]), 1), (p(&[2, 0, 1]), 1)]
        );
    }

    #[test]
    fn irreducible_quadratic() {
        assert_eq!(factor_list(&p(&[1, 0, 1])), vec![(p(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn zero_factor_goes_last() {
        let f = &p(&[0, 0, 1]) * &p(&[-3, 1]);
        let fm = factor_rational(&f).unwrap();
        assert_eq!(fm.factors, vec![(p(&[-3, 1]), 1), (p(&[0, 1]), 2)]);
        assert!(fm.has_zero_eigenvalue());
        assert_eq!(fm.nonzero_count(), 1);
    }

    #[test]
    fn swinnerton_dyer_like_input() {
        // X^4 - 10X^2 + 1 is irreducible but splits into quadratics mod every prime.
        assert_eq!(
            factor_list(&p(&[1, 0, -10, 0, 1])),
            vec![(p(&[1, 0, -10, 0, 1]), 1)]
        );
    }

    #[test]
    fn non_monic_rational_input() {
        // (2X - 1)(3X^2 + 1)/6 scaled by rationals
        let f = (&p(&[-1, 2]) * &p(&[1, 0, 3])).scale(&Rational::new(5.into(), 7.into()));
        let fm = factor_rational(&f).unwrap();
        let half = Rational::new(1.into(), 2.into());
        let third = Rational::new(1.into(), 3.into());
        assert_eq!(
            fm.factors,
            vec![
                (Poly::new(vec![-half, <Rational as Field>::one()]), 1),
                (
                    Poly::new(vec![
                        third,
                        <Rational as Field>::zero(),
                        <Rational as Field>::one()
                    ]),
                    1
                )
            ]
        );
        assert_eq!(fm.product().scale(&fm.leading), f);
    }

    #[test]
    fn degree_cap() {
        let f = Poly::<Rational>::monomial(<Rational as Field>::one(), 17);
        assert_eq!(
            factor_rational(&f),
            Err(Error::DegreeCapExceeded {
                degree: 17,
                cap: 16
            })
        );
        assert_eq!(factor_rational(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn high_degree_product() {
        // cyclotomic pieces of X^12 - 1
        let f = &p(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]) * &p(&[-2, 0, 0, 1]);
        let fm = factor_rational(&f).unwrap();
        assert_eq!(fm.product(), f);
        assert_eq!(fm.len(), 7);
    }

    #[test]
    fn combinations_enumerate() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
    }
}
