//! Gamma function at the arguments the sphere formulas need.
//!
//! Every Gamma argument in this crate is an integer or half-integer
//! `(v+1)/2`. Small arguments are assembled exactly — a big-integer
//! factorial or double factorial, a power of two, and one `√π` — so the
//! golden values in the tests are anchored by rational arithmetic. Large
//! arguments go through a Stirling-series `ln_gamma` that stays in log
//! space and keeps at least 12 significant digits.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Largest argument (doubled) served by the exact rational path.
pub const EXACT_LIMIT_TWICE: u32 = 100;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

/// Γ(two_z / 2) for two_z ≥ 1, exact assembly for arguments up to 50.
pub fn gamma_half_integer(two_z: u32) -> Result<f64> {
    if two_z == 0 {
        return Err(Error::InvalidParameter("gamma pole at 0".into()));
    }
    if two_z > EXACT_LIMIT_TWICE {
        return Ok(ln_gamma(f64::from(two_z) / 2.0).exp());
    }
    if two_z.is_multiple_of(2) {
        // Γ(n) = (n-1)!
        Ok(big_to_f64(factorial(two_z / 2 - 1)))
    } else {
        // Γ(n + 1/2) = (2n-1)!! / 2^n · √π
        let n = two_z / 2;
        let odd = double_factorial_odd(n);
        Ok(big_to_f64(odd) * 0.5f64.powi(n as i32) * std::f64::consts::PI.sqrt())
    }
}

/// ln Γ(two_z / 2); exact path below the limit, Stirling series above.
pub fn ln_gamma_half_integer(two_z: u32) -> Result<f64> {
    if two_z == 0 {
        return Err(Error::InvalidParameter("gamma pole at 0".into()));
    }
    if two_z <= EXACT_LIMIT_TWICE {
        Ok(gamma_half_integer(two_z)?.ln())
    } else {
        Ok(ln_gamma(f64::from(two_z) / 2.0))
    }
}

/// ln Γ(x) for x > 0 by the Stirling asymptotic series, shifting the
/// argument up by the recurrence Γ(x) = Γ(x+1)/x until the series applies.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument, got {x}");
    const SHIFT_THRESHOLD: f64 = 16.0;
    // B_{2k} / (2k (2k-1)) for k = 1..8
    const COEFFS: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];

    let mut shift = 0.0;
    let mut z = x;
    while z < SHIFT_THRESHOLD {
        shift -= z.ln();
        z += 1.0;
    }

    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in COEFFS {
        series += c * pow;
        pow *= inv2;
    }
    shift + (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series
}

fn factorial(n: u32) -> BigUint {
    (1..=u64::from(n)).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// (2n-1)!! = 1·3·5···(2n-1), with (−1)!! = 1 for n = 0.
fn double_factorial_odd(n: u32) -> BigUint {
    (0..u64::from(n)).fold(BigUint::from(1u32), |acc, k| acc * (2 * k + 1))
}

fn big_to_f64(n: BigUint) -> f64 {
    n.to_f64().expect("BigUint magnitudes here fit in f64 range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn exact_integer_values() {
        assert_eq!(gamma_half_integer(2).unwrap(), 1.0); // Γ(1)
        assert_eq!(gamma_half_integer(8).unwrap(), 6.0); // Γ(4) = 3!
        assert_eq!(gamma_half_integer(10).unwrap(), 24.0); // Γ(5) = 4!
        // Γ(50) = 49!
        assert_relative_eq!(
            gamma_half_integer(100).unwrap(),
            6.082818640342675e62,
            max_relative = 1e-14
        );
    }

    #[test]
    fn exact_half_integer_values() {
        assert_relative_eq!(gamma_half_integer(1).unwrap(), PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(
            gamma_half_integer(3).unwrap(),
            PI.sqrt() / 2.0,
            max_relative = 1e-15
        );
        // Γ(5/2) = 3√π/4, Γ(7/2) = 15√π/8
        assert_relative_eq!(
            gamma_half_integer(5).unwrap(),
            3.0 * PI.sqrt() / 4.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            gamma_half_integer(7).unwrap(),
            15.0 * PI.sqrt() / 8.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn stirling_matches_exact_path() {
        for two_z in 1..=EXACT_LIMIT_TWICE {
            let exact = gamma_half_integer(two_z).unwrap().ln();
            let series = ln_gamma(f64::from(two_z) / 2.0);
            assert_relative_eq!(series, exact, max_relative = 1e-13, epsilon = 1e-13);
        }
    }

    #[test]
    fn large_argument_reference() {
        // ln Γ(500.5), reference from a 40-digit evaluation
        assert_relative_eq!(
            ln_gamma(500.5),
            2_608.222_904_410_986_7,
            max_relative = 1e-14
        );
    }

    #[test]
    fn pole_rejected() {
        assert!(gamma_half_integer(0).is_err());
        assert!(ln_gamma_half_integer(0).is_err());
    }
}
