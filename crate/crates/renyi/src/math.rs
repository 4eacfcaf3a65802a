//! Thin wrappers over `libm` so transcendental results are identical on
//! every platform, which the reproducibility guarantees rely on.

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[cfg(test)]
pub(crate) fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

/// `x^a` for `x >= 0`, with exact fast paths for the handful of exponents
/// that dominate diagram queries. Integer exponents up to 8 use binary
/// exponentiation (multiplications only), everything else goes through
/// `libm::pow`.
#[inline]
pub(crate) fn powf(x: f64, a: f64) -> f64 {
    if a == 2.0 {
        return x * x;
    }
    if a == 0.5 {
        return sqrt(x);
    }
    if a == floor(a) && (1.0..=8.0).contains(&a) {
        return powi(x, a as u32);
    }
    libm::pow(x, a)
}

#[inline]
fn powi(x: f64, mut n: u32) -> f64 {
    let mut base = x;
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_matches_libm_pow() {
        for n in 1..=8u32 {
            for &x in &[0.1, 0.5, 0.9, 1.0, 3.7] {
                let a = powf(x, n as f64);
                let b = libm::pow(x, n as f64);
                assert!((a - b).abs() <= 1e-15 * b.abs().max(1.0), "x={x} n={n}");
            }
        }
    }

    #[test]
    fn powf_half_is_sqrt() {
        assert_eq!(powf(2.0, 0.5), sqrt(2.0));
    }
}
