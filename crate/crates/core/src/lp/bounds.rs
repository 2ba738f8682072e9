use num_traits::One;

use super::LpError;
use crate::arith::{rational, Rational};

/// `(d + 3) / 6`, valid for connected subcubic graphs of diameter `d`.
pub fn bound_diameter(d: u32) -> Rational {
    rational(i64::from(d) + 3, 6)
}

/// `n / (2 + 3d)` for `Δ = 3`; `n (r - 1) / (Δ r^d - 3)` with `r = (Δ - 1)/2` for `Δ >= 4`.
pub fn bound_order_degree(n: usize, max_degree: usize, d: u32) -> Result<Rational, LpError> {
    if max_degree <= 2 {
        return Err(LpError::UnsupportedDegree(max_degree));
    }
    if d == 0 {
        return Err(LpError::DiameterTooSmall);
    }
    let n = Rational::from_integer((n as i64).into());
    if max_degree == 3 {
        return Ok(n / rational(2 + 3 * i64::from(d), 1));
    }
    let delta = Rational::from_integer((max_degree as i64).into());
    let r = rational(max_degree as i64 - 1, 2);
    let rd = num_traits::pow(r.clone(), d as usize);
    Ok(n * (r - Rational::one()) / (delta * rd - rational(3, 1)))
}

/// `(√(2n + 49/36) + 7/6) / 6`, the order-only bound for subcubic trees.
pub fn bound_subcubic_order(n: usize) -> f64 {
    ((2.0 * n as f64 + 49.0 / 36.0).sqrt() + 7.0 / 6.0) / 6.0
}

/// `max{(d + 3)/6, n/(2 + 3d)}`, the exact bound the order-only one relaxes.
/// For `d = 0` only the first term applies.
pub fn max_form_bound(n: usize, d: u32) -> Rational {
    let a = bound_diameter(d);
    match bound_order_degree(n, 3, d) {
        Ok(b) if b > a => b,
        _ => a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(bound_diameter(3), rational(1, 1));
        assert_eq!(bound_diameter(0), rational(1, 2));
        assert_eq!(bound_diameter(9), rational(2, 1));
        assert_eq!(bound_order_degree(8, 3, 2), Ok(rational(1, 1)));
        assert_eq!(bound_order_degree(5, 4, 1), Ok(rational(5, 6)));
        assert_eq!(bound_order_degree(22, 3, 6), Ok(rational(11, 10)));
        assert_eq!(bound_order_degree(5, 2, 1), Err(LpError::UnsupportedDegree(2)));
        assert_eq!(bound_order_degree(5, 3, 0), Err(LpError::DiameterTooSmall));
    }

    #[test]
    fn order_only_bound() {
        assert!((bound_subcubic_order(1) - 0.5).abs() < 1e-12);
        // √(44 + 49/36) = √1633 / 6
        let expected = (1633f64.sqrt() / 6.0 + 7.0 / 6.0) / 6.0;
        assert!((bound_subcubic_order(22) - expected).abs() < 1e-12);
        assert!((bound_subcubic_order(22) - 1.3169554083987085).abs() < 1e-9);
    }

    #[test]
    fn max_form_dominates_order_bound() {
        use num_traits::ToPrimitive;
        for n in 1..40usize {
            // a connected graph of order n >= 2 has diameter between 1 and n - 1
            for d in (n > 1) as u32..n.max(2) as u32 {
                let m = max_form_bound(n, d).to_f64().unwrap();
                assert!(m + 1e-9 >= bound_subcubic_order(n), "n={n} d={d}");
            }
        }
    }
}
