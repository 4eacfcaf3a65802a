//! Scalar bisection on a bracketed monotone function.
//!
//! Bisection is used for every inversion in the crate: the derivative of
//! H_α along a mixture segment has removable forms at the endpoints, so
//! Newton steps are fragile exactly where bound queries cluster, while
//! bisection needs only the monotonicity the property suite certifies.

/// Outcome of a bisection run.
pub(crate) struct Root {
    /// Argument with |f| at or below tolerance (or the best representable
    /// midpoint if the bracket shrank to adjacent floats first).
    pub x: f64,
    /// Residual f(x).
    pub residual: f64,
}

/// Find x in [lo, hi] with f(x) = 0 given f(lo) <= 0 <= f(hi).
///
/// Iterates until |f(mid)| <= `f_tol` or the bracket is exhausted at f64
/// resolution. Near a Hölder-type endpoint (f ~ C·x^α with α < 1) a fixed
/// iteration count cannot reach a given residual, so the loop runs to
/// resolution instead; that is at most ~1100 halvings.
pub(crate) fn bisect(mut lo: f64, mut hi: f64, f_tol: f64, mut f: impl FnMut(f64) -> f64) -> Root {
    debug_assert!(lo <= hi);
    let mut best = Root {
        x: lo,
        residual: f64::INFINITY,
    };
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return best;
        }
        let fm = f(mid);
        if fm.abs() < best.residual.abs() {
            best = Root {
                x: mid,
                residual: fm,
            };
        }
        if fm.abs() <= f_tol {
            return best;
        }
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}
