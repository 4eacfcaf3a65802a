//! Independent brute-force ground truth: simplex sampling and enumeration,
//! empirical entropy envelopes, and bound-violation checks.
//!
//! The oracle evaluates entropies through the same core as everything
//! else, but derives its envelopes purely empirically — the analytic bound
//! formulas appear only as the comparison target of the `check_*`
//! functions, never as an ingredient of the oracle data.
//!
//! Reproducibility: Monte-Carlo sampling uses ChaCha12 (`rand_chacha`)
//! seeded via `seed_from_u64`; one sample consumes exactly `n` draws, so a
//! given `(seed, n, count)` always yields the identical stream on every
//! platform. Parallel runs can split a job into chunks with distinct
//! seeds and combine results with the `merge` operations, which are
//! associative and order-independent.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::diagram2::{self, BoundQuery2};
use crate::diagram3::{self, BoundQuery3};
use crate::dist::ProbVector;
use crate::entropy::{renyi_entropy, EntropyValue};
use crate::error::{Error, Result};
use crate::math;
use crate::order::Order;

/// How the oracle draws distributions from the simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// I.i.d. uniform (flat Dirichlet) samples via normalized exponentials
    /// of the seeded generator.
    MonteCarlo,
    /// Every lattice point (c₁/R, …, cₙ/R) with Σcᵢ = R; exhaustive and
    /// deterministic, `count` is ignored.
    Lattice,
}

/// Configuration of one oracle sampling run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    /// Alphabet size n ≥ 1.
    pub n: usize,
    /// Number of Monte-Carlo samples (ignored in lattice mode).
    pub count: u64,
    /// Seed of the deterministic generator.
    pub seed: u64,
    /// Sampling mode.
    pub mode: SampleMode,
    /// Lattice denominator R (ignored in Monte-Carlo mode).
    pub lattice_resolution: u64,
}

impl SampleConfig {
    /// Validate a configuration.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::ZeroSupport);
        }
        match self.mode {
            SampleMode::MonteCarlo if self.count == 0 => Err(Error::OutOfRange {
                what: "sample count",
                value: 0.0,
                min: 1.0,
                max: f64::INFINITY,
            }),
            SampleMode::Lattice if self.lattice_resolution == 0 => Err(Error::OutOfRange {
                what: "lattice resolution",
                value: 0.0,
                min: 1.0,
                max: f64::INFINITY,
            }),
            _ => Ok(()),
        }
    }
}

/// Number of lattice points: the compositions of R into n parts,
/// C(R + n − 1, n − 1).
pub fn lattice_size(n: usize, resolution: u64) -> u128 {
    let r = resolution as u128;
    let k = (n - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (r + i) / i;
    }
    acc
}

enum SamplerState {
    MonteCarlo {
        rng: ChaCha12Rng,
        remaining: u64,
    },
    Lattice {
        counts: Vec<u64>,
        resolution: u64,
        done: bool,
    },
}

/// Deterministic stream of simplex points; see [`sample_simplex`].
pub struct SimplexSampler {
    n: usize,
    state: SamplerState,
}

/// Stream of probability vectors per the configuration: flat Dirichlet
/// draws in Monte-Carlo mode, exhaustive lattice enumeration (descending
/// lexicographic in the count vector) in lattice mode. Identical
/// configurations produce identical streams.
pub fn sample_simplex(cfg: &SampleConfig) -> Result<SimplexSampler> {
    cfg.validate()?;
    let state = match cfg.mode {
        SampleMode::MonteCarlo => SamplerState::MonteCarlo {
            rng: ChaCha12Rng::seed_from_u64(cfg.seed),
            remaining: cfg.count,
        },
        SampleMode::Lattice => {
            let mut counts = alloc::vec![0u64; cfg.n];
            counts[0] = cfg.lattice_resolution;
            SamplerState::Lattice {
                counts,
                resolution: cfg.lattice_resolution,
                done: false,
            }
        }
    };
    Ok(SimplexSampler { n: cfg.n, state })
}

#[inline]
fn unit_f64(x: u64) -> f64 {
    // 53 high bits -> [0, 1).
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl Iterator for SimplexSampler {
    type Item = ProbVector;

    fn next(&mut self) -> Option<ProbVector> {
        match &mut self.state {
            SamplerState::MonteCarlo { rng, remaining } => {
                if *remaining == 0 {
                    return None;
                }
                *remaining -= 1;
                loop {
                    let mut probs = Vec::with_capacity(self.n);
                    let mut sum = 0.0;
                    for _ in 0..self.n {
                        // -ln of a (0, 1] uniform is a standard exponential.
                        let e = -math::ln(1.0 - unit_f64(rng.next_u64()));
                        probs.push(e);
                        sum += e;
                    }
                    if sum > 0.0 {
                        for p in probs.iter_mut() {
                            *p /= sum;
                        }
                        // Normalize the leftover division noise.
                        return Some(ProbVector::new(probs).expect("normalized exponentials"));
                    }
                }
            }
            SamplerState::Lattice {
                counts,
                resolution,
                done,
            } => {
                if *done {
                    return None;
                }
                let r = *resolution as f64;
                let probs: Vec<f64> = counts.iter().map(|&c| c as f64 / r).collect();
                let n = counts.len();
                // Advance to the next composition: move one unit from the
                // rightmost positive entry before the tail into the next
                // slot, folding the tail back in.
                let tail = counts[n - 1];
                match (0..n - 1).rev().find(|&i| counts[i] > 0) {
                    Some(i) => {
                        counts[i] -= 1;
                        counts[n - 1] = 0;
                        counts[i + 1] = tail + 1;
                    }
                    None => *done = true,
                }
                Some(ProbVector::new(probs).expect("lattice point sums to 1"))
            }
        }
    }
}

/// One h₁ bin of an empirical envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeBin {
    /// Bin index: floor(h₁ / bin_width).
    pub index: i64,
    /// Center of the bin, (index + ½)·bin_width.
    pub h1_center: f64,
    /// Smallest observed H_{α₂} in the bin.
    pub min_h2: f64,
    /// Largest observed H_{α₂} in the bin.
    pub max_h2: f64,
    /// Number of samples that fell in the bin.
    pub count: u64,
}

/// Empirical min/max of H_{α₂} conditioned on binned H_{α₁}: the
/// brute-force envelope the analytic bounds are validated against. Bins
/// nobody hit are omitted.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeReport {
    /// Bin width in nats.
    pub bin_width: f64,
    /// Populated bins, ascending by index.
    pub bins: Vec<EnvelopeBin>,
}

impl EnvelopeReport {
    /// Combine two envelopes of the same bin width. Associative and
    /// commutative, so chunked runs merge in any order.
    pub fn merge(&self, other: &EnvelopeReport) -> Result<EnvelopeReport> {
        if self.bin_width != other.bin_width {
            return Err(Error::InternalInconsistency {
                what: "cannot merge envelopes with different bin widths",
            });
        }
        let mut map: BTreeMap<i64, EnvelopeBin> = BTreeMap::new();
        for bin in self.bins.iter().chain(&other.bins) {
            map.entry(bin.index)
                .and_modify(|b| {
                    b.min_h2 = b.min_h2.min(bin.min_h2);
                    b.max_h2 = b.max_h2.max(bin.max_h2);
                    b.count += bin.count;
                })
                .or_insert(*bin);
        }
        Ok(EnvelopeReport {
            bin_width: self.bin_width,
            bins: map.into_values().collect(),
        })
    }
}

/// Bin a sample stream by H_{α₁} and record the extreme H_{α₂} per bin.
pub fn empirical_envelope(
    samples: impl Iterator<Item = ProbVector>,
    alpha1: Order,
    alpha2: Order,
    bin_width: f64,
) -> Result<EnvelopeReport> {
    if !(bin_width > 0.0) || !bin_width.is_finite() {
        return Err(Error::OutOfRange {
            what: "bin width",
            value: bin_width,
            min: f64::MIN_POSITIVE,
            max: f64::INFINITY,
        });
    }
    let mut map: BTreeMap<i64, EnvelopeBin> = BTreeMap::new();
    for p in samples {
        let h1 = renyi_entropy(&p, alpha1).nats();
        let h2 = renyi_entropy(&p, alpha2).nats();
        let index = math::floor(h1 / bin_width) as i64;
        map.entry(index)
            .and_modify(|b| {
                b.min_h2 = b.min_h2.min(h2);
                b.max_h2 = b.max_h2.max(h2);
                b.count += 1;
            })
            .or_insert(EnvelopeBin {
                index,
                h1_center: (index as f64 + 0.5) * bin_width,
                min_h2: h2,
                max_h2: h2,
                count: 1,
            });
    }
    Ok(EnvelopeReport {
        bin_width,
        bins: map.into_values().collect(),
    })
}

/// Which analytic bound a sample violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Two-order upper bound.
    Upper2,
    /// Two-order fixed-n lower bound.
    Lower2,
    /// Three-order upper bound.
    Upper3,
    /// Three-order fixed-n lower bound.
    Lower3,
}

impl core::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BoundKind::Upper2 => write!(f, "upper2"),
            BoundKind::Lower2 => write!(f, "lower2"),
            BoundKind::Upper3 => write!(f, "upper3"),
            BoundKind::Lower3 => write!(f, "lower3"),
        }
    }
}

/// One sample that broke a bound by more than the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// Position of the sample in its stream.
    pub sample_index: u64,
    /// The offending distribution.
    pub dist: ProbVector,
    /// Which bound broke.
    pub kind: BoundKind,
    /// The analytic bound value, nats.
    pub bound: f64,
    /// The observed entropy, nats.
    pub observed: f64,
    /// Signed overshoot beyond the bound (always > tolerance).
    pub excess: f64,
}

/// Outcome of a bound-checking run. Violations are data, not errors: a
/// clean run has `violations.is_empty()`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ViolationReport {
    /// How many samples were checked.
    pub total_checked: u64,
    /// Samples that broke a bound, ascending by sample index.
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    /// Combine two reports (associative; order-independent because the
    /// result is re-sorted by sample index).
    pub fn merge(&self, other: &ViolationReport) -> ViolationReport {
        let mut violations: Vec<Violation> = self
            .violations
            .iter()
            .chain(&other.violations)
            .cloned()
            .collect();
        violations.sort_by(|a, b| {
            (a.sample_index, a.kind as u8).cmp(&(b.sample_index, b.kind as u8))
        });
        ViolationReport {
            total_checked: self.total_checked + other.total_checked,
            violations,
        }
    }
}

/// Entropy of a sample clamped into [0, log n]: sample entropies carry
/// float error of a few ulps which must not push a query out of range.
fn clamped_entropy(p: &ProbVector, a: Order, log_n: f64) -> f64 {
    renyi_entropy(p, a).nats().clamp(0.0, log_n)
}

/// Check every sample against the two-order sandwich
/// lower_bound_fixed_n(h₁) − tol ≤ H_{α₂} ≤ upper_bound(h₁) + tol.
pub fn check_bounds2(
    samples: impl Iterator<Item = ProbVector>,
    alpha1: Order,
    alpha2: Order,
    n: usize,
    tolerance: f64,
) -> Result<ViolationReport> {
    let log_n = math::ln(n as f64);
    let mut report = ViolationReport::default();
    for (i, p) in samples.enumerate() {
        let h1 = clamped_entropy(&p, alpha1, log_n);
        let h2 = renyi_entropy(&p, alpha2).nats();
        let q = BoundQuery2::new(alpha1, alpha2, EntropyValue::from_nats(h1), Some(n))?;
        let upper = diagram2::upper_bound(&q)?.bound.nats();
        let lower = diagram2::lower_bound_fixed_n(&q)?.bound.nats();
        record_sandwich(
            &mut report,
            i as u64,
            &p,
            h2,
            lower,
            upper,
            tolerance,
            BoundKind::Lower2,
            BoundKind::Upper2,
        );
        report.total_checked += 1;
    }
    Ok(report)
}

/// Check every sample against the three-order sandwich
/// lower_bound3(h₁, h₂) − tol ≤ H_{α₃} ≤ upper_bound3(h₁, h₂) + tol.
pub fn check_bounds3(
    samples: impl Iterator<Item = ProbVector>,
    alpha1: Order,
    alpha2: Order,
    alpha3: Order,
    n: usize,
    tolerance: f64,
) -> Result<ViolationReport> {
    let log_n = math::ln(n as f64);
    let mut report = ViolationReport::default();
    for (i, p) in samples.enumerate() {
        let h1 = clamped_entropy(&p, alpha1, log_n);
        let h2 = clamped_entropy(&p, alpha2, log_n);
        let h3 = renyi_entropy(&p, alpha3).nats();
        let q = BoundQuery3::new(
            alpha1,
            alpha2,
            alpha3,
            EntropyValue::from_nats(h1),
            EntropyValue::from_nats(h2),
            Some(n),
        )?;
        let upper = diagram3::upper_bound3(&q)?.bound.nats();
        let lower = diagram3::lower_bound3(&q)?.bound.nats();
        record_sandwich(
            &mut report,
            i as u64,
            &p,
            h3,
            lower,
            upper,
            tolerance,
            BoundKind::Lower3,
            BoundKind::Upper3,
        );
        report.total_checked += 1;
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn record_sandwich(
    report: &mut ViolationReport,
    index: u64,
    p: &ProbVector,
    observed: f64,
    lower: f64,
    upper: f64,
    tolerance: f64,
    lower_kind: BoundKind,
    upper_kind: BoundKind,
) {
    if observed > upper + tolerance {
        report.violations.push(Violation {
            sample_index: index,
            dist: p.clone(),
            kind: upper_kind,
            bound: upper,
            observed,
            excess: observed - upper,
        });
    }
    if observed < lower - tolerance {
        report.violations.push(Violation {
            sample_index: index,
            dist: p.clone(),
            kind: lower_kind,
            bound: lower,
            observed,
            excess: lower - observed,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn mc(n: usize, count: u64, seed: u64) -> SampleConfig {
        SampleConfig {
            n,
            count,
            seed,
            mode: SampleMode::MonteCarlo,
            lattice_resolution: 0,
        }
    }

    fn lattice(n: usize, r: u64) -> SampleConfig {
        SampleConfig {
            n,
            count: 0,
            seed: 0,
            mode: SampleMode::Lattice,
            lattice_resolution: r,
        }
    }

    #[test]
    fn lattice_enumeration_smallest_cases() {
        let pts: Vec<Vec<f64>> = sample_simplex(&lattice(2, 2))
            .unwrap()
            .map(|p| p.probs().to_vec())
            .collect();
        assert_eq!(pts, [vec![1.0, 0.0], vec![0.5, 0.5], vec![0.0, 1.0]]);

        let count = sample_simplex(&lattice(3, 2)).unwrap().count();
        assert_eq!(count, 6);
        assert_eq!(lattice_size(3, 2), 6);
    }

    #[test]
    fn lattice_count_matches_composition_formula() {
        for (n, r) in [(2usize, 7u64), (3, 9), (4, 5), (5, 4)] {
            let count = sample_simplex(&lattice(n, r)).unwrap().count() as u128;
            assert_eq!(count, lattice_size(n, r), "n={n} R={r}");
        }
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let a: Vec<Vec<f64>> = sample_simplex(&mc(4, 50, 7))
            .unwrap()
            .map(|p| p.probs().to_vec())
            .collect();
        let b: Vec<Vec<f64>> = sample_simplex(&mc(4, 50, 7))
            .unwrap()
            .map(|p| p.probs().to_vec())
            .collect();
        assert_eq!(a, b);
        let c: Vec<Vec<f64>> = sample_simplex(&mc(4, 50, 8))
            .unwrap()
            .map(|p| p.probs().to_vec())
            .collect();
        assert_ne!(a, c);
    }

    #[test]
    fn monte_carlo_samples_live_on_the_simplex() {
        for p in sample_simplex(&mc(5, 200, 3)).unwrap() {
            assert!((p.probs().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            assert!(p.probs().iter().all(|&v| v >= 0.0));
        }
    }

    #[test]
    fn envelope_single_uniform_sample() {
        let u = crate::dist::uniform(2).unwrap();
        let rep = empirical_envelope(
            core::iter::once(u),
            Order::ONE,
            Order::new(2.0).unwrap(),
            0.01,
        )
        .unwrap();
        assert_eq!(rep.bins.len(), 1);
        let bin = rep.bins[0];
        assert_eq!(bin.count, 1);
        assert_eq!(bin.min_h2, bin.max_h2);
        assert!((bin.min_h2 - math::ln(2.0)).abs() <= 1e-12);
    }

    #[test]
    fn envelope_uniform_only_bins_have_min_equal_max() {
        let samples = (1..=6).map(|k| crate::dist::uniform(k).unwrap());
        let rep =
            empirical_envelope(samples, Order::ONE, Order::new(2.0).unwrap(), 0.01).unwrap();
        for bin in &rep.bins {
            assert_eq!(bin.min_h2, bin.max_h2);
        }
    }

    #[test]
    fn envelope_merge_matches_single_pass() {
        let a2 = Order::new(2.0).unwrap();
        let all = empirical_envelope(
            sample_simplex(&mc(3, 400, 11)).unwrap(),
            Order::ONE,
            a2,
            0.05,
        )
        .unwrap();
        let first = empirical_envelope(
            sample_simplex(&mc(3, 400, 11)).unwrap().take(150),
            Order::ONE,
            a2,
            0.05,
        )
        .unwrap();
        let second = empirical_envelope(
            sample_simplex(&mc(3, 400, 11)).unwrap().skip(150),
            Order::ONE,
            a2,
            0.05,
        )
        .unwrap();
        assert_eq!(first.merge(&second).unwrap(), all);
        assert_eq!(second.merge(&first).unwrap(), all);
    }

    #[test]
    fn check_bounds2_clean_run() {
        let rep = check_bounds2(
            sample_simplex(&mc(4, 2000, 5)).unwrap(),
            Order::ONE,
            Order::new(2.0).unwrap(),
            4,
            1e-9,
        )
        .unwrap();
        assert_eq!(rep.total_checked, 2000);
        assert!(rep.violations.is_empty(), "{:?}", rep.violations.first());
    }

    #[test]
    fn corrupted_bound_shows_up_as_violations() {
        // Harness self-test: shift the upper bound down by 0.1 and the
        // checker must start reporting.
        let a1 = Order::ONE;
        let a2 = Order::new(2.0).unwrap();
        let mut violations = 0u64;
        for p in sample_simplex(&mc(3, 500, 9)).unwrap() {
            let h1 = clamped_entropy(&p, a1, math::ln(3.0));
            let h2 = renyi_entropy(&p, a2).nats();
            let q = BoundQuery2::new(a1, a2, EntropyValue::from_nats(h1), Some(3)).unwrap();
            let corrupted = diagram2::upper_bound(&q).unwrap().bound.nats() - 0.1;
            if h2 > corrupted + 1e-9 {
                violations += 1;
            }
        }
        assert!(violations > 0);
    }

    #[test]
    fn n2_samples_lie_on_the_curve_region() {
        // For a 2-point alphabet both arcs coincide as sets; every sample
        // must sit inside the closed region they bound.
        let rep = check_bounds2(
            sample_simplex(&mc(2, 2000, 13)).unwrap(),
            Order::ONE,
            Order::new(2.0).unwrap(),
            2,
            1e-9,
        )
        .unwrap();
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn violation_report_merge_is_order_independent() {
        let v = |i: u64| Violation {
            sample_index: i,
            dist: crate::dist::uniform(2).unwrap(),
            kind: BoundKind::Upper2,
            bound: 0.5,
            observed: 0.7,
            excess: 0.2,
        };
        let a = ViolationReport {
            total_checked: 10,
            violations: vec![v(3), v(7)],
        };
        let b = ViolationReport {
            total_checked: 5,
            violations: vec![v(1)],
        };
        assert_eq!(a.merge(&b), b.merge(&a));
        assert_eq!(a.merge(&b).violations.len(), 3);
        assert_eq!(a.merge(&b).total_checked, 15);
    }
}
