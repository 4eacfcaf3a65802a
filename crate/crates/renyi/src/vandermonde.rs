//! Generalized Vandermonde determinants det(xᵢ^{βⱼ}) and the Jacobian
//! orientation-sign diagnostic for the entropy map.
//!
//! For sorted positive x and strictly increasing exponents β the
//! generalized Vandermonde determinant is non-negative, and zero exactly
//! when two x values coincide. That positivity is what forces boundary
//! points of a joint entropy range onto mixtures of few uniform
//! distributions, so this module carries both the determinant itself and a
//! cross-checked sign computation for the full Jacobian block.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::order::Order;

/// Inputs to the generalized Vandermonde determinant: positive bases
/// sorted non-decreasing and strictly increasing real exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeInstance {
    xs: Vec<f64>,
    betas: Vec<f64>,
}

impl VandermondeInstance {
    /// Validate and wrap the inputs.
    pub fn new(xs: Vec<f64>, betas: Vec<f64>) -> Result<VandermondeInstance> {
        if xs.is_empty() {
            return Err(Error::LengthMismatch {
                what: "vandermonde inputs",
                expected: 1,
                actual: 0,
            });
        }
        if xs.len() != betas.len() {
            return Err(Error::LengthMismatch {
                what: "vandermonde xs vs betas",
                expected: xs.len(),
                actual: betas.len(),
            });
        }
        for (index, &value) in xs.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidEntry { index, value });
            }
        }
        if xs.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotSorted {
                what: "xs must be sorted non-decreasing",
            });
        }
        if betas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotSorted {
                what: "betas must be strictly increasing",
            });
        }
        Ok(VandermondeInstance { xs, betas })
    }

    /// Matrix dimension ℓ.
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    /// Always at least 1×1 by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The bases.
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    /// The exponents.
    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    /// Scale-relative threshold below which a computed determinant is
    /// indistinguishable from zero: 1e-12 · (max entry)^ℓ · ℓ!. Floating
    /// point cannot certify exact zero, so the "zero iff duplicate x"
    /// dichotomy is tested against this.
    pub fn zero_tolerance(&self) -> f64 {
        let (matrix, _) = power_matrix(&self.xs, &self.betas);
        zero_tolerance_for(&matrix, self.len())
    }
}

/// det((xᵢ^{βⱼ})ᵢⱼ) by LU factorization with partial pivoting.
///
/// ℓ stays small (≤ 8 in every use), so pivoted LU is both fast and
/// well-conditioned enough; degenerate inputs yield ~0, which is a
/// legitimate value rather than an error.
pub fn gen_vandermonde_det(v: &VandermondeInstance) -> f64 {
    let (mut matrix, _) = power_matrix(&v.xs, &v.betas);
    lu_det(&mut matrix, v.len())
}

/// Sign of a determinant diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// Determinant below the zero threshold in magnitude.
    Zero,
    /// Positive determinant.
    Positive,
    /// Negative determinant.
    Negative,
}

impl Sign {
    /// −1, 0 or +1.
    pub fn as_i8(&self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// Sign of the (m+1)×(m+1) Jacobian block of the entropy map at a point
/// with `m + 1` distinct point probabilities, computed along two routes
/// that must agree: LU on the assembled matrix, and the factored form
/// (order/denominator prefactors × generalized Vandermonde determinant
/// with exponents α−1 plus the all-ones row as exponent 0).
///
/// `probs` are the distinct point probabilities sorted non-decreasing (a
/// repeated value legitimately makes the sign zero); `orders` are the m
/// entropy orders, strictly increasing within (0, ∞) \ {1}; `denominators`
/// are the power sums Σⱼ pⱼ^{αᵢ} of the full distribution the probs were
/// taken from. A denominator that is non-positive, non-finite, or smaller
/// than the partial power sum over `probs` (impossible for any superset)
/// is replaced by that partial sum: the prefactor affects magnitude and
/// sign only through known positive factors, so healing it keeps the
/// diagnostic trustworthy.
pub fn orientation_sign(probs: &[f64], orders: &[Order], denominators: &[f64]) -> Result<Sign> {
    let (direct, factored, tol_direct, tol_factored) =
        jacobian_determinants(probs, orders, denominators)?;
    let ds = classify(direct, tol_direct);
    let fs = classify(factored, tol_factored);
    if ds != fs {
        return Err(Error::InternalInconsistency {
            what: "direct and factored Jacobian determinant signs disagree",
        });
    }
    Ok(ds)
}

/// The two redundant Jacobian-block determinant values behind
/// [`orientation_sign`]: `(direct, factored, direct_zero_tol,
/// factored_zero_tol)`. Exposed so consistency of the factorization can be
/// checked in value, not just in sign.
pub fn jacobian_determinants(
    probs: &[f64],
    orders: &[Order],
    denominators: &[f64],
) -> Result<(f64, f64, f64, f64)> {
    let m = orders.len();
    if m == 0 || probs.len() != m + 1 {
        return Err(Error::LengthMismatch {
            what: "orientation probs vs orders",
            expected: m + 1,
            actual: probs.len(),
        });
    }
    if denominators.len() != m {
        return Err(Error::LengthMismatch {
            what: "orientation denominators vs orders",
            expected: m,
            actual: denominators.len(),
        });
    }
    for (index, &value) in probs.iter().enumerate() {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::InvalidEntry { index, value });
        }
    }
    if probs.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::NotSorted {
            what: "probs must be sorted non-decreasing",
        });
    }
    for pair in orders.windows(2) {
        if pair[0].value() >= pair[1].value() {
            return Err(Error::NotSorted {
                what: "orders must be strictly increasing",
            });
        }
    }
    for &a in orders {
        let v = a.value();
        if !v.is_finite() || v <= 0.0 || v == 1.0 {
            return Err(Error::InvalidOrder { value: v });
        }
    }

    // Self-heal denominators against the partial power sums.
    let healed: Vec<f64> = orders
        .iter()
        .zip(denominators)
        .map(|(a, &d)| {
            let partial: f64 = probs.iter().map(|&p| math::powf(p, a.value())).sum();
            if !d.is_finite() || d <= 0.0 || d < partial * (1.0 - 1e-9) {
                partial
            } else {
                d
            }
        })
        .collect();

    // Direct route: assemble the (m+1)x(m+1) block and run LU on it.
    let dim = m + 1;
    let mut matrix = vec![0.0; dim * dim];
    let mut max_entry = 1.0f64; // the all-ones row
    for (i, a) in orders.iter().enumerate() {
        let alpha = a.value();
        let prefactor = alpha / (1.0 - alpha) / healed[i];
        for (j, &p) in probs.iter().enumerate() {
            let entry = prefactor * math::powf(p, alpha - 1.0);
            if entry.abs() > max_entry {
                max_entry = entry.abs();
            }
            matrix[i * dim + j] = entry;
        }
    }
    for j in 0..dim {
        matrix[m * dim + j] = 1.0;
    }
    let tol_direct = zero_tolerance_for_max(max_entry, dim);
    let direct = lu_det(&mut matrix, dim);

    // Factored route: pull out the row prefactors, then the remaining
    // matrix is a generalized Vandermonde with exponents α−1 together with
    // exponent 0 for the ones row. Sorting the exponents moves the 0 row
    // up past every α > 1 row, so the permutation contributes (−1)^r with
    // r the number of orders above 1.
    let mut prefactor = 1.0;
    for (a, d) in orders.iter().zip(&healed) {
        let alpha = a.value();
        prefactor *= alpha / (1.0 - alpha) / d;
    }
    let mut betas: Vec<f64> = orders.iter().map(|a| a.value() - 1.0).collect();
    betas.push(0.0);
    betas.sort_unstable_by(f64::total_cmp);
    let above_one = orders.iter().filter(|a| a.value() > 1.0).count();
    let perm_sign = if above_one % 2 == 0 { 1.0 } else { -1.0 };

    let (mut vmatrix, vmax) = power_matrix(probs, &betas);
    let vdet = lu_det(&mut vmatrix, dim);
    let factored = prefactor * perm_sign * vdet;
    let tol_factored = prefactor.abs() * zero_tolerance_for_max(vmax, dim);

    Ok((direct, factored, tol_direct, tol_factored))
}

fn classify(det: f64, tol: f64) -> Sign {
    if det.abs() <= tol {
        Sign::Zero
    } else if det > 0.0 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Row-major matrix of powers, rows indexed by exponent: M[j][i] = xᵢ^{βⱼ}.
/// Also returns the largest entry magnitude for tolerance scaling.
fn power_matrix(xs: &[f64], betas: &[f64]) -> (Vec<f64>, f64) {
    let l = xs.len();
    debug_assert_eq!(l, betas.len());
    let mut matrix = vec![0.0; l * l];
    let mut max_entry = 0.0f64;
    for (j, &beta) in betas.iter().enumerate() {
        for (i, &x) in xs.iter().enumerate() {
            let entry = math::powf(x, beta);
            if entry.abs() > max_entry {
                max_entry = entry.abs();
            }
            matrix[j * l + i] = entry;
        }
    }
    (matrix, max_entry)
}

fn zero_tolerance_for(matrix: &[f64], dim: usize) -> f64 {
    let max_entry = matrix.iter().fold(0.0f64, |m, &e| m.max(e.abs()));
    zero_tolerance_for_max(max_entry, dim)
}

fn zero_tolerance_for_max(max_entry: f64, dim: usize) -> f64 {
    let mut scale = 1e-12;
    for k in 1..=dim {
        scale *= max_entry * k as f64;
    }
    scale
}

/// Determinant of a row-major `dim`×`dim` matrix by in-place LU with
/// partial pivoting. A vanishing pivot short-circuits to 0.
fn lu_det(matrix: &mut [f64], dim: usize) -> f64 {
    debug_assert_eq!(matrix.len(), dim * dim);
    let mut det = 1.0;
    for col in 0..dim {
        let mut pivot_row = col;
        let mut pivot_mag = matrix[col * dim + col].abs();
        for row in col + 1..dim {
            let mag = matrix[row * dim + col].abs();
            if mag > pivot_mag {
                pivot_row = row;
                pivot_mag = mag;
            }
        }
        if pivot_mag == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            for k in 0..dim {
                matrix.swap(col * dim + k, pivot_row * dim + k);
            }
            det = -det;
        }
        let pivot = matrix[col * dim + col];
        det *= pivot;
        for row in col + 1..dim {
            let factor = matrix[row * dim + col] / pivot;
            if factor != 0.0 {
                for k in col + 1..dim {
                    matrix[row * dim + k] -= factor * matrix[col * dim + k];
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(xs: &[f64], betas: &[f64]) -> f64 {
        gen_vandermonde_det(&VandermondeInstance::new(xs.to_vec(), betas.to_vec()).unwrap())
    }

    #[test]
    fn one_by_one() {
        assert!((det(&[2.0], &[3.0]) - 8.0).abs() <= 1e-12);
    }

    #[test]
    fn repeated_base_is_zero() {
        let v = VandermondeInstance::new(vec![1.0, 1.0], vec![0.0, 1.0]).unwrap();
        assert!(gen_vandermonde_det(&v).abs() <= v.zero_tolerance());
    }

    #[test]
    fn classical_vandermonde() {
        // prod_{i<j} (x_j - x_i) = 1 * 2 * 1 = 2.
        assert!((det(&[1.0, 2.0, 3.0], &[0.0, 1.0, 2.0]) - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn fractional_exponents_frozen_value() {
        // 1^0.5 * 2^1.7 - 2^0.5 * 1^1.7, from a 60-digit mpmath run.
        assert!((det(&[1.0, 2.0], &[0.5, 1.7]) - 1.834796023051847).abs() <= 1e-14);
    }

    #[test]
    fn rejects_bad_instances() {
        assert!(VandermondeInstance::new(vec![], vec![]).is_err());
        assert!(VandermondeInstance::new(vec![2.0, 1.0], vec![0.0, 1.0]).is_err());
        assert!(VandermondeInstance::new(vec![1.0, 2.0], vec![1.0, 1.0]).is_err());
        assert!(VandermondeInstance::new(vec![0.0, 2.0], vec![0.0, 1.0]).is_err());
        assert!(VandermondeInstance::new(vec![1.0, 2.0], vec![0.0]).is_err());
    }

    fn orders(values: &[f64]) -> Vec<Order> {
        values.iter().map(|&v| Order::new(v).unwrap()).collect()
    }

    #[test]
    fn orientation_m1_frozen_value() {
        // 2x2 block: det = 1.6 by hand (and the mpmath run).
        let (direct, factored, _, _) =
            jacobian_determinants(&[0.25, 0.75], &orders(&[2.0]), &[0.625]).unwrap();
        assert!((direct - 1.6).abs() <= 1e-12);
        assert!((factored - 1.6).abs() <= 1e-12);
        let sign = orientation_sign(&[0.25, 0.75], &orders(&[2.0]), &[0.625]).unwrap();
        assert_eq!(sign, Sign::Positive);
    }

    #[test]
    fn orientation_m2_frozen_value() {
        // 3x3 block with orders (0.5, 2) at p = (0.1, 0.3, 0.6):
        // det = 0.78014840327615665 from the mpmath run.
        let probs = [0.1, 0.3, 0.6];
        let dens = [1.6385469927634874, 0.46];
        let (direct, factored, _, _) =
            jacobian_determinants(&probs, &orders(&[0.5, 2.0]), &dens).unwrap();
        assert!((direct - 0.78014840327615665).abs() <= 1e-12, "{direct}");
        assert!((factored - 0.78014840327615665).abs() <= 1e-12, "{factored}");
        assert_eq!(
            orientation_sign(&probs, &orders(&[0.5, 2.0]), &dens).unwrap(),
            Sign::Positive
        );
    }

    #[test]
    fn repeated_probability_gives_zero_sign() {
        let sign = orientation_sign(&[0.2, 0.2, 0.6], &orders(&[0.5, 2.0]), &[1.0, 1.0]).unwrap();
        assert_eq!(sign, Sign::Zero);
    }

    #[test]
    fn denominators_self_heal() {
        // Denominators far below the partial power sums are impossible;
        // the sign must come out as if they were recomputed.
        let probs = [0.1, 0.3, 0.6];
        let good = orientation_sign(
            &probs,
            &orders(&[0.5, 2.0]),
            &[1.6385469927634874, 0.46],
        )
        .unwrap();
        let healed = orientation_sign(&probs, &orders(&[0.5, 2.0]), &[1e-30, -3.0]).unwrap();
        assert_eq!(good, healed);
    }

    #[test]
    fn rejects_special_orders() {
        assert!(orientation_sign(&[0.4, 0.6], &[Order::ONE], &[1.0]).is_err());
        assert!(orientation_sign(&[0.4, 0.6], &[Order::INFINITY], &[1.0]).is_err());
        assert!(orientation_sign(&[0.4, 0.6], &[Order::ZERO], &[1.0]).is_err());
    }
}
