//! Polynomials over `Z/pZ` for a small odd prime, and their factorization
//! by distinct-degree plus Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Dense polynomial over `Z/pZ`, coefficients in `0..p`, trimmed.
pub(crate) type PolyP = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Zp {
    pub p: u64,
}

impl Zp {
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn trim(self, mut a: PolyP) -> PolyP {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    #[cfg(test)]
    pub fn add_poly(self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|k| self.add(*a.get(k).unwrap_or(&0), *b.get(k).unwrap_or(&0)))
            .collect();
        self.trim(v)
    }

    pub fn sub_poly(self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|k| self.sub(*a.get(k).unwrap_or(&0), *b.get(k).unwrap_or(&0)))
            .collect();
        self.trim(v)
    }

    pub fn mul_poly(self, a: &[u64], b: &[u64]) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        self.trim(out)
    }

    pub fn scale(self, a: &[u64], c: u64) -> PolyP {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn monic(self, a: &[u64]) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn div_rem(self, a: &[u64], b: &[u64]) -> (PolyP, PolyP) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), self.trim(r));
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (db..r.len()).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            let f = self.mul(c, inv);
            q[k - db] = f;
            for (j, &bj) in b.iter().enumerate() {
                r[k - db + j] = self.sub(r[k - db + j], self.mul(f, bj));
            }
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> PolyP {
        self.div_rem(a, b).1
    }

    pub fn gcd(self, a: &[u64], b: &[u64]) -> PolyP {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s·a + t·b = g` monic.
    pub fn ext_gcd(self, a: &[u64], b: &[u64]) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("gcd of zero polynomials"));
        (
            self.scale(&r0, inv),
            self.scale(&s0, inv),
            self.scale(&t0, inv),
        )
    }

    pub fn derivative(self, a: &[u64]) -> PolyP {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| self.mul(c, k as u64 % self.p))
                .collect(),
        )
    }

    /// `base^e mod modulus`.
    pub fn pow_mod(self, base: &[u64], e: &BigUint, modulus: &[u64]) -> PolyP {
        let mut result = vec![1u64];
        let base = self.rem(base, modulus);
        for bit in (0..e.bits()).rev() {
            result = self.rem(&self.mul_poly(&result, &result), modulus);
            if e.bit(bit) {
                result = self.rem(&self.mul_poly(&result, &base), modulus);
            }
        }
        result
    }

    pub fn is_squarefree(self, a: &[u64]) -> bool {
        let g = self.gcd(a, &self.derivative(a));
        g.len() == 1
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn factor_squarefree(self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<PolyP> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut d = 1usize;
        let p_big = BigUint::from(self.p);
        while rest.len() > 1 && 2 * d < rest.len() {
            h = self.pow_mod(&h, &p_big, &rest);
            let g = self.gcd(&self.sub_poly(&h, &x), &rest);
            if g.len() > 1 {
                self.split_equal_degree(&g, d, rng, &mut out);
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
            }
            d += 1;
        }
        if rest.len() > 1 {
            out.push(rest);
        }
        out
    }

    fn split_equal_degree(self, g: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<PolyP>) {
        let n = g.len() - 1;
        if n == d {
            out.push(g.to_vec());
            return;
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: PolyP = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub_poly(&self.pow_mod(&a, &e, g), &[1]);
            let u = self.gcd(&b, g);
            if u.len() > 1 && u.len() < g.len() {
                let v = self.div_rem(g, &u).0;
                self.split_equal_degree(&u, d, rng, out);
                self.split_equal_degree(&self.monic(&v), d, rng, out);
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_multiply_back() {
        let z = Zp { p: 7 };
        // (x+1)(x+2)(x^2+1)(x^3+x+1) mod 7
        let parts: Vec<PolyP> = vec![vec![1, 1], vec![2, 1], vec![1, 0, 1], vec![1, 1, 0, 1]];
        let f = parts.iter().fold(vec![1u64], |acc, p| z.mul_poly(&acc, p));
        assert!(z.is_squarefree(&f));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut got = z.factor_squarefree(&f, &mut rng);
        got.sort();
        let prod = got.iter().fold(vec![1u64], |acc, p| z.mul_poly(&acc, p));
        assert_eq!(prod, f);
        let mut degrees: Vec<usize> = got.iter().map(|g| g.len() - 1).collect();
        degrees.sort();
        assert_eq!(degrees, vec![1, 1, 2, 3]);
    }

    #[test]
    fn ext_gcd_identity() {
        let z = Zp { p: 11 };
        let a = vec![3, 0, 1];
        let b = vec![5, 1];
        let (g, s, t) = z.ext_gcd(&a, &b);
        assert_eq!(g, vec![1]);
        let lhs = z.add_poly(&z.mul_poly(&s, &a), &z.mul_poly(&t, &b));
        assert_eq!(lhs, vec![1]);
    }
}
