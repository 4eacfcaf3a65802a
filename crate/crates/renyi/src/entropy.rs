use alloc::vec::Vec;
use core::fmt;

use crate::dist::{ProbVector, UniformMixture};
use crate::math;
use crate::order::{Order, OrderKind};

/// Below this distance from α = 1 the generic formula is a 0/0 form;
/// evaluation switches to the Shannon sum instead.
const SHANNON_SWITCH: f64 = 1e-7;

/// Output log base for presenting an [`EntropyValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    /// Natural logarithm (nats). The internal convention.
    #[default]
    E,
    /// Base 2 (bits).
    Two,
    /// Base 10 (dits).
    Ten,
}

impl LogBase {
    /// ln of the base, the exact conversion divisor.
    #[inline]
    pub fn ln(&self) -> f64 {
        match self {
            LogBase::E => 1.0,
            LogBase::Two => core::f64::consts::LN_2,
            LogBase::Ten => core::f64::consts::LN_10,
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogBase::E => write!(f, "e"),
            LogBase::Two => write!(f, "2"),
            LogBase::Ten => write!(f, "10"),
        }
    }
}

/// An entropy, stored in natural-log units. Base conversion is an exact
/// ratio of logarithms applied only at the presentation boundary, so no
/// double-conversion can creep into the math.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct EntropyValue {
    nats: f64,
}

impl EntropyValue {
    /// Wrap a value given in nats. Negative zero flushes to plain zero so
    /// degenerate entropies print as `0`.
    #[inline]
    pub fn from_nats(nats: f64) -> EntropyValue {
        EntropyValue { nats: nats + 0.0 }
    }

    /// The value in natural-log units.
    #[inline]
    pub fn nats(&self) -> f64 {
        self.nats
    }

    /// The value converted to the given base.
    #[inline]
    pub fn in_base(&self, base: LogBase) -> f64 {
        self.nats / base.ln()
    }

    /// The value in bits.
    #[inline]
    pub fn bits(&self) -> f64 {
        self.in_base(LogBase::Two)
    }
}

/// The Rényi entropy H_α(P), in nats.
///
/// - α = 0: log of the number of entries that are exactly nonzero.
/// - α = 1 (or within 1e-7 of it): −Σ p log p with 0·log 0 = 0.
/// - α = ∞: −log max_i p_i.
/// - otherwise: log(Σ pᵅ)/(1−α), with the power sum scaled by the largest
///   α·log p before summing so it cannot underflow.
///
/// Summation order is canonicalized (entries sorted ascending first), so
/// the result is bit-identical under any permutation of the input.
pub fn renyi_entropy(p: &ProbVector, a: Order) -> EntropyValue {
    match a.kind() {
        OrderKind::Zero => EntropyValue::from_nats(math::ln(p.support_size() as f64)),
        OrderKind::Infinity => EntropyValue::from_nats(-math::ln(p.max_entry())),
        OrderKind::One => {
            let sorted = sorted_nonzero(p);
            EntropyValue::from_nats(shannon_from_sorted(&sorted))
        }
        OrderKind::FiniteGeneric => {
            let sorted = sorted_nonzero(p);
            if (a.value() - 1.0).abs() < SHANNON_SWITCH {
                EntropyValue::from_nats(shannon_from_sorted(&sorted))
            } else {
                let log_sum = log_power_sum(sorted.iter().map(|&v| (v, 1.0)), a.value());
                EntropyValue::from_nats(log_sum / (1.0 - a.value()))
            }
        }
    }
}

/// H_α of a uniform mixture, evaluated from its `(value, multiplicity)`
/// runs in O(components) independent of the alphabet size. Agrees with
/// `renyi_entropy(realize_mixture(m))` to float accumulation error; the
/// run view is what makes bound queries on alphabets of 10⁵+ points cheap.
pub fn mixture_entropy(m: &UniformMixture, a: Order) -> EntropyValue {
    let runs = m.value_runs();
    EntropyValue::from_nats(entropy_of_runs(&runs, a))
}

/// H_α from ascending `(value, multiplicity)` runs. Internal work-horse
/// shared by mixtures and diagram queries. The `+ 0.0` flushes the −0.0
/// that −Σ-style formulas produce on degenerate inputs.
pub(crate) fn entropy_of_runs(runs: &[(f64, u64)], a: Order) -> f64 {
    0.0 + match a.kind() {
        OrderKind::Zero => {
            let support: u64 = runs.iter().filter(|r| r.0 > 0.0).map(|r| r.1).sum();
            math::ln(support as f64)
        }
        OrderKind::Infinity => -math::ln(runs[runs.len() - 1].0),
        OrderKind::One => shannon_of_runs(runs),
        OrderKind::FiniteGeneric => {
            if (a.value() - 1.0).abs() < SHANNON_SWITCH {
                shannon_of_runs(runs)
            } else {
                let terms = runs
                    .iter()
                    .filter(|r| r.0 > 0.0)
                    .map(|&(v, c)| (v, c as f64));
                log_power_sum(terms, a.value()) / (1.0 - a.value())
            }
        }
    }
}

fn shannon_of_runs(runs: &[(f64, u64)]) -> f64 {
    let mut acc = 0.0;
    for &(v, c) in runs {
        if v > 0.0 {
            acc += c as f64 * v * math::ln(v);
        }
    }
    -acc
}

/// log Σ cᵢ·vᵢᵅ over ascending positive values, computed as
/// α·log v_max + log Σ cᵢ·(vᵢ/v_max)ᵅ. The scaled terms lie in (0, 1], so
/// the sum is at least 1 and never under- or overflows; terms too small to
/// matter flush to zero, which is their correct relative contribution.
fn log_power_sum(terms: impl Iterator<Item = (f64, f64)> + Clone, alpha: f64) -> f64 {
    let v_max = terms
        .clone()
        .fold(0.0f64, |m, (v, _)| if v > m { v } else { m });
    let mut acc = 0.0;
    for (v, c) in terms {
        acc += c * math::powf(v / v_max, alpha);
    }
    alpha * math::ln(v_max) + math::ln(acc)
}

/// Nonzero entries sorted ascending: the canonical summation order.
fn sorted_nonzero(p: &ProbVector) -> Vec<f64> {
    let mut v: Vec<f64> = p.probs().iter().copied().filter(|&x| x > 0.0).collect();
    v.sort_unstable_by(f64::total_cmp);
    v
}

fn shannon_from_sorted(sorted: &[f64]) -> f64 {
    let mut acc = 0.0;
    for &v in sorted {
        acc += v * math::ln(v);
    }
    -acc
}
