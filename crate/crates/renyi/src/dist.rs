use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest tolerated deviation of a raw input sum from 1 before
/// construction refuses to rescale.
pub(crate) const NORMALIZATION_SLACK: f64 = 1e-9;

/// A finite discrete probability distribution p₁,…,pₙ.
///
/// Entries are non-negative and sum to 1; construction rescales inputs
/// whose sum deviates from 1 by at most 1e-9 (CSV-ingested data carries
/// rounding noise) and records the pre-normalization deviation. A larger
/// deviation is an error rather than silently absorbed.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
    deviation: f64,
}

impl ProbVector {
    /// Wrap entries already known to sum to 1 up to float accumulation,
    /// without rescaling. Keeps realized mixtures bit-identical to their
    /// run-length view.
    pub(crate) fn from_normalized(probs: Vec<f64>) -> ProbVector {
        debug_assert!((probs.iter().sum::<f64>() - 1.0).abs() <= NORMALIZATION_SLACK);
        ProbVector {
            probs,
            deviation: 0.0,
        }
    }

    /// Build a distribution from raw entries, rescaling small rounding
    /// noise. Entries equal to 0.0 stay exactly 0.0 through rescaling.
    pub fn new(probs: Vec<f64>) -> Result<ProbVector> {
        if probs.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidEntry { index, value });
            }
        }
        // Canonical summation order: permuted copies of the same entries
        // must see the identical rescale factor, or bit-exact permutation
        // invariance dies right here in the constructor.
        let mut sorted = probs.clone();
        sorted.sort_unstable_by(f64::total_cmp);
        let sum: f64 = sorted.iter().sum();
        let deviation = sum - 1.0;
        if deviation.abs() > NORMALIZATION_SLACK {
            return Err(Error::NotNormalized { sum });
        }
        let mut probs = probs;
        if deviation != 0.0 {
            for p in probs.iter_mut() {
                *p /= sum;
            }
        }
        Ok(ProbVector { probs, deviation })
    }

    /// Number of alphabet symbols, including zero-probability ones.
    #[inline]
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    /// A distribution always has at least one entry.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The entries, in construction order.
    #[inline]
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// How far the raw input sum was from 1 before rescaling.
    #[inline]
    pub fn normalization_deviation(&self) -> f64 {
        self.deviation
    }

    /// Number of entries that are exactly nonzero. Thresholding is
    /// deliberately not applied: it would silently change H₀.
    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|&&p| p > 0.0).count()
    }

    /// Largest entry.
    pub fn max_entry(&self) -> f64 {
        self.probs.iter().fold(0.0, |m, &p| if p > m { p } else { m })
    }
}

/// The uniform distribution on `k` points, (1/k, …, 1/k).
pub fn uniform(k: usize) -> Result<ProbVector> {
    if k == 0 {
        return Err(Error::ZeroSupport);
    }
    let p = 1.0 / k as f64;
    ProbVector::new(vec![p; k])
}

/// One `(support, weight)` component of a [`UniformMixture`].
pub type MixtureComponent = (usize, f64);

/// A convex combination of uniform distributions U_{k₁},…,U_{k_ℓ} on
/// pairwise distinct supports, stored sorted by descending support.
///
/// With each U_k right-aligned (k uniform entries preceded by zeros), any
/// such mixture realizes a probability vector with non-decreasing entries;
/// these mixtures parametrize the boundary of every joint entropy range.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformMixture {
    components: Vec<MixtureComponent>,
}

impl UniformMixture {
    /// Build a mixture. Supports must be distinct and at least 1; weights
    /// must lie in [0, 1] and sum to 1 within 1e-12. Components are sorted
    /// by descending support.
    pub fn new(components: Vec<MixtureComponent>) -> Result<UniformMixture> {
        if components.is_empty() {
            return Err(Error::EmptyMixture);
        }
        let mut sum = 0.0;
        for &(support, weight) in &components {
            if support == 0 {
                return Err(Error::ZeroSupport);
            }
            if !weight.is_finite() || !(0.0..=1.0).contains(&weight) {
                return Err(Error::InvalidWeight { value: weight });
            }
            sum += weight;
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::WeightsNotNormalized { sum });
        }
        let mut components = components;
        components.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        for pair in components.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateSupport { support: pair[0].0 });
            }
        }
        Ok(UniformMixture { components })
    }

    /// Mixture with a single component U_k.
    pub fn pure(k: usize) -> Result<UniformMixture> {
        UniformMixture::new(vec![(k, 1.0)])
    }

    /// Components sorted by descending support.
    #[inline]
    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    /// Largest support, which is also the realized vector length.
    #[inline]
    pub fn alphabet_size(&self) -> usize {
        self.components[0].0
    }

    /// The realized entries as `(value, multiplicity)` runs in ascending
    /// value order. This is the O(ℓ) view all entropy evaluation uses; it
    /// matches [`realize_mixture`] entry for entry.
    ///
    /// With supports k₁ > … > k_ℓ, the first k₁−k₂ entries receive only the
    /// U_{k₁} contribution, the next k₂−k₃ also the U_{k₂} one, and so on;
    /// prefix sums of w_i/k_i therefore enumerate the distinct values.
    pub fn value_runs(&self) -> Vec<(f64, u64)> {
        let l = self.components.len();
        let mut runs = Vec::with_capacity(l);
        let mut value = 0.0;
        for (i, &(support, weight)) in self.components.iter().enumerate() {
            value += weight / support as f64;
            let next_support = if i + 1 < l { self.components[i + 1].0 } else { 0 };
            runs.push((value, (support - next_support) as u64));
        }
        runs
    }
}

/// Materialize a mixture as an explicit probability vector of length
/// max(k_i), each U_k right-aligned (zeros padded on the left). Entries
/// are non-decreasing.
pub fn realize_mixture(m: &UniformMixture) -> ProbVector {
    let n = m.alphabet_size();
    let mut probs = Vec::with_capacity(n);
    for j in 0..n {
        // Entry j is covered by U_k exactly when k >= n - j; accumulating
        // in fixed descending-support order keeps entries non-decreasing.
        let mut v = 0.0;
        for &(support, weight) in m.components() {
            if support >= n - j {
                v += weight / support as f64;
            }
        }
        probs.push(v);
    }
    ProbVector::from_normalized(probs)
}

/// The product distribution p ⊗ q, flattened row-major to length n_p·n_q.
pub fn product_distribution(p: &ProbVector, q: &ProbVector) -> ProbVector {
    let mut probs = Vec::with_capacity(p.len() * q.len());
    for &a in p.probs() {
        for &b in q.probs() {
            probs.push(a * b);
        }
    }
    ProbVector::new(probs).expect("product of normalized vectors")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(actual: &ProbVector, expected: &[f64]) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.probs().iter().zip(expected) {
            assert!((a - e).abs() <= 1e-15, "{:?} vs {:?}", actual.probs(), expected);
        }
    }

    #[test]
    fn construction_normalizes_small_noise() {
        let p = ProbVector::new(vec![0.5, 0.5 + 3e-10]).unwrap();
        assert!((p.probs().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        assert!((p.normalization_deviation() - 3e-10).abs() < 1e-12);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(ProbVector::new(vec![]), Err(Error::EmptyDistribution));
        assert!(matches!(
            ProbVector::new(vec![0.5, -0.5]),
            Err(Error::InvalidEntry { index: 1, .. })
        ));
        assert!(matches!(
            ProbVector::new(vec![0.5, 0.4]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            ProbVector::new(vec![0.5, f64::NAN]),
            Err(Error::InvalidEntry { .. })
        ));
    }

    #[test]
    fn zero_entries_survive_rescaling_exactly() {
        let p = ProbVector::new(vec![0.0, 1.0 - 2e-10, 2e-10]).unwrap();
        assert_eq!(p.probs()[0], 0.0);
        assert_eq!(p.support_size(), 2);
    }

    #[test]
    fn uniform_examples() {
        assert_close(&uniform(1).unwrap(), &[1.0]);
        assert_close(&uniform(4).unwrap(), &[0.25; 4]);
        let third = 1.0 / 3.0;
        assert_close(&uniform(3).unwrap(), &[third; 3]);
        assert_eq!(uniform(0), Err(Error::ZeroSupport));
    }

    #[test]
    fn realize_single_component() {
        let m = UniformMixture::new(vec![(2, 1.0)]).unwrap();
        assert_close(&realize_mixture(&m), &[0.5, 0.5]);
    }

    #[test]
    fn realize_two_components() {
        let m = UniformMixture::new(vec![(2, 0.5), (1, 0.5)]).unwrap();
        assert_close(&realize_mixture(&m), &[0.25, 0.75]);
    }

    #[test]
    fn realize_three_components() {
        let m = UniformMixture::new(vec![(3, 0.3), (2, 0.3), (1, 0.4)]).unwrap();
        assert_close(&realize_mixture(&m), &[0.1, 0.25, 0.65]);
    }

    #[test]
    fn mixture_sorts_and_rejects_duplicates() {
        let m = UniformMixture::new(vec![(1, 0.4), (3, 0.6)]).unwrap();
        assert_eq!(m.components(), &[(3, 0.6), (1, 0.4)]);
        assert!(matches!(
            UniformMixture::new(vec![(2, 0.5), (2, 0.5)]),
            Err(Error::DuplicateSupport { support: 2 })
        ));
        assert!(matches!(
            UniformMixture::new(vec![(2, 0.7), (1, 0.7)]),
            Err(Error::WeightsNotNormalized { .. })
        ));
    }

    #[test]
    fn value_runs_match_realized_entries() {
        let m = UniformMixture::new(vec![(5, 0.2), (3, 0.5), (1, 0.3)]).unwrap();
        let realized = realize_mixture(&m);
        let runs = m.value_runs();
        let mut expanded = Vec::new();
        for (value, count) in runs {
            for _ in 0..count {
                expanded.push(value);
            }
        }
        assert_eq!(expanded, realized.probs());
    }

    #[test]
    fn product_examples() {
        let one = ProbVector::new(vec![1.0]).unwrap();
        let half = ProbVector::new(vec![0.5, 0.5]).unwrap();
        assert_close(&product_distribution(&one, &half), &[0.5, 0.5]);
        assert_close(&product_distribution(&half, &half), &[0.25; 4]);
        let p = ProbVector::new(vec![0.7, 0.3]).unwrap();
        let q = ProbVector::new(vec![0.6, 0.4]).unwrap();
        assert_close(&product_distribution(&p, &q), &[0.42, 0.28, 0.18, 0.12]);
    }
}
