//! Deterministic benchmark fixtures.

use mindec::generate::{Generator, Shape, SvdKind};
use mindec::{Matrix, Poly, Rational};

const SEED: u64 = 0xbe7c;

/// Structured matrices of the given order with mixed spectra.
pub fn structured(order: usize, count: usize) -> Vec<Matrix<Rational>> {
    let shape = Shape {
        max_order: order,
        ..Shape::default()
    };
    let mut g = Generator::new(SEED ^ order as u64);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = g.structured(&shape).matrix;
        if m.order() == order {
            out.push(m);
        }
    }
    out
}

/// Nonsingular matrices whose factors have degree at most 2.
pub fn real_closed(count: usize) -> Vec<Matrix<Rational>> {
    let mut g = Generator::new(SEED + 1);
    (0..count)
        .map(|_| g.structured(&Shape::real_closed()).matrix)
        .collect()
}

pub fn svd_inputs(order: usize, count: usize) -> Vec<Matrix<Rational>> {
    let mut g = Generator::new(SEED + 2);
    (0..count)
        .map(|_| g.svd_case(order, SvdKind::General).matrix)
        .collect()
}

/// A degree-10 polynomial for function evaluation.
pub fn test_polynomial() -> Poly<Rational> {
    Poly::from_i64s(&[1, -2, 0, 3, 0, 0, -1, 0, 2, 0, 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_requested_order() {
        assert!(structured(5, 3).iter().all(|m| m.order() == 5));
        assert_eq!(real_closed(2).len(), 2);
        assert!(svd_inputs(3, 2).iter().all(|m| m.order() == 3));
    }
}
