//! Exact integer combinatorics and small numeric helpers.

use num_traits::Float;

/// `n!` as an exact integer, `n ≤ 34`.
pub fn factorial_u128(n: u32) -> u128 {
    assert!(n <= 34, "{n}! overflows u128");
    (1..=n as u128).product()
}

/// `n!` rounded once from its exact integer value (exact in f64 up to 22!).
pub fn factorial(n: u32) -> f64 {
    if n <= 34 {
        factorial_u128(n) as f64
    } else {
        (35..=n).fold(factorial_u128(34) as f64, |acc, k| acc * k as f64)
    }
}

/// Falling factorial `n (n-1) ... (n-k+1)`; zero when `k > n`.
pub fn falling(n: usize, k: u32) -> f64 {
    let k = k as usize;
    if k > n {
        return 0.0;
    }
    (n - k + 1..=n).fold(1.0, |acc, j| acc * j as f64)
}

/// Binomial coefficient `C(n, k)` in floating point.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Coefficient `(m!)² / ((m-p)! (p!)²)` of `a†ᵖaᵖ` in the normal-ordered
/// expansion of `aᵐa†ᵐ`.
pub fn antinormal_coefficient(m: u32, p: u32) -> f64 {
    assert!(p <= m && m <= 20);
    let mf = factorial_u128(m);
    let pf = factorial_u128(p);
    // C(m, p) * m! / p!, both factors exact in u128 for m ≤ 20
    let c = mf / (factorial_u128(m - p) * pf);
    (c * (mf / pf)) as f64
}

/// Symmetric relative difference `|a - b| / max(|a|, |b|)`, zero when both
/// vanish.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = Float::max(Float::abs(a), Float::abs(b));
    if scale == 0.0 {
        0.0
    } else {
        Float::abs(a - b) / scale
    }
}

/// Sign with a dead band: values with `|x| < band` map to zero.
pub fn sign_with_band(x: f64, band: f64) -> i8 {
    if Float::abs(x) < band {
        0
    } else if x > 0.0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    #[test]
    fn factorials_exact() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(10), 3_628_800.0);
        assert_eq!(factorial_u128(16), 20_922_789_888_000);
    }

    #[test]
    fn falling_and_binomial() {
        assert_eq!(falling(5, 0), 1.0);
        assert_eq!(falling(5, 2), 20.0);
        assert_eq!(falling(2, 3), 0.0);
        assert_eq!(binomial(10, 3), 120.0);
        assert_eq!(binomial(3, 5), 0.0);
    }

    #[test]
    fn antinormal_coefficients() {
        assert_eq!(antinormal_coefficient(1, 0), 1.0);
        assert_eq!(antinormal_coefficient(1, 1), 1.0);
        assert_eq!(antinormal_coefficient(2, 0), 2.0);
        assert_eq!(antinormal_coefficient(2, 1), 4.0);
        assert_eq!(antinormal_coefficient(2, 2), 1.0);
        // a³a†³ = a†³a³ + 9a†²a² + 18a†a + 6
        let row: Vec<f64> = (0..=3).map(|p| antinormal_coefficient(3, p)).collect();
        assert_eq!(row, vec![6.0, 18.0, 9.0, 1.0]);
    }

    #[test]
    fn dead_band() {
        assert_eq!(sign_with_band(1e-13, 1e-12), 0);
        assert_eq!(sign_with_band(-2e-12, 1e-12), -1);
        assert_eq!(sign_with_band(0.5, 1e-12), 1);
    }
}
