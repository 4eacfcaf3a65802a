//! Joint range of two Rényi entropies H_{α₁}, H_{α₂} with 0 < α₁ < α₂:
//! tight bound queries, the closed boundary curve, and the unbounded-
//! alphabet asymptotics.
//!
//! Every boundary point of the joint range is the image of a mixture of
//! two uniform distributions. The upper bound given H_{α₁} = h₁ is
//! attained on the segment between U_k and U_{k+1} where
//! log k ≤ h₁ < log (k+1), independent of the alphabet size; the lower
//! bound for a fixed alphabet of n points is attained on the segment
//! between U_n and U_1. Without a bound on n the infimum is 0 for α₁ ≤ 1
//! and a straight line of slope (α₂/(α₂−1))·((α₁−1)/α₁) for α₁ > 1, and is
//! never attained.
//!
//! No bound here has a closed form: the inverse of s ↦ H_α(s·U_a +
//! (1−s)·U_b) is not an elementary function, so inversion is numeric
//! (bisection against a monotone map the property suite certifies).

use alloc::vec;
use alloc::vec::Vec;

use crate::dist::{ProbVector, UniformMixture};
use crate::entropy::{entropy_of_runs, mixture_entropy, EntropyValue};
use crate::error::{Error, Result};
use crate::math;
use crate::order::Order;
use crate::solve;

/// Query values within this distance of a diagonal point log k are
/// treated as exactly diagonal; avoids empty bisection brackets born from
/// rounding in user-supplied h values.
pub(crate) const DIAGONAL_TOL: f64 = 1e-12;

/// Residual tolerance all segment inversions converge to.
const INVERT_TOL: f64 = 1e-12;

/// Largest accepted conditioning value. Beyond e^34 ≈ 5.8e14 the gap
/// between log k and log (k+1) drops under the diagonal resolution and
/// witness supports stop being exactly representable, so queries this
/// large are refused rather than answered with mush.
pub(crate) const MAX_H: f64 = 34.0;

/// A bound query for the two-order diagram: which orders, the conditioning
/// value h₁ = H_{α₁}(P), and an optional alphabet cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundQuery2 {
    alpha1: Order,
    alpha2: Order,
    h1: EntropyValue,
    n: Option<usize>,
}

impl BoundQuery2 {
    /// Validate a query: 0 < α₁ < α₂ as extended reals (equal orders
    /// degenerate the diagram to its diagonal and are rejected), h₁ ≥ 0,
    /// and h₁ ≤ log n when an alphabet cap is present.
    pub fn new(alpha1: Order, alpha2: Order, h1: EntropyValue, n: Option<usize>) -> Result<Self> {
        if alpha1.value() <= 0.0 || alpha1.value() >= alpha2.value() {
            return Err(Error::OrdersNotIncreasing);
        }
        if !h1.nats().is_finite() || h1.nats() < 0.0 || h1.nats() > MAX_H {
            return Err(Error::OutOfRange {
                what: "h1",
                value: h1.nats(),
                min: 0.0,
                max: MAX_H,
            });
        }
        if let Some(n) = n {
            if n == 0 {
                return Err(Error::ZeroSupport);
            }
            let log_n = math::ln(n as f64);
            if h1.nats() > log_n + DIAGONAL_TOL {
                return Err(Error::OutOfRange {
                    what: "h1",
                    value: h1.nats(),
                    min: 0.0,
                    max: log_n,
                });
            }
        }
        Ok(BoundQuery2 {
            alpha1,
            alpha2,
            h1,
            n,
        })
    }

    /// The smaller order α₁.
    pub fn alpha1(&self) -> Order {
        self.alpha1
    }

    /// The larger order α₂.
    pub fn alpha2(&self) -> Order {
        self.alpha2
    }

    /// The conditioning value h₁ = H_{α₁}(P).
    pub fn h1(&self) -> EntropyValue {
        self.h1
    }

    /// The alphabet cap, if any.
    pub fn n(&self) -> Option<usize> {
        self.n
    }
}

/// A tight bound value plus the witness mixture attaining (or, for
/// unbounded-alphabet infima, approaching) it.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    /// The bound, in nats.
    pub bound: EntropyValue,
    /// Mixture attaining the bound; absent for infima.
    pub witness: Option<UniformMixture>,
    /// True when the bound is attained by the witness; false only for
    /// unbounded-alphabet lower bounds, which are strict infima.
    pub attained: bool,
}

/// The point s·U_{k_hi} + (1−s)·U_{k_lo} on the segment Δ_{k_hi,k_lo};
/// s = 1 gives U_{k_hi}, s = 0 gives U_{k_lo}.
pub fn segment_point(k_hi: usize, k_lo: usize, s: f64) -> Result<ProbVector> {
    let m = segment_mixture(k_hi, k_lo, s)?;
    Ok(crate::dist::realize_mixture(&m))
}

fn segment_mixture(k_hi: usize, k_lo: usize, s: f64) -> Result<UniformMixture> {
    if k_lo == 0 || k_hi <= k_lo {
        return Err(Error::InvalidSegment { k_hi, k_lo });
    }
    if !(0.0..=1.0).contains(&s) || !s.is_finite() {
        return Err(Error::OutOfRange {
            what: "segment parameter s",
            value: s,
            min: 0.0,
            max: 1.0,
        });
    }
    UniformMixture::new(vec![(k_hi, s), (k_lo, 1.0 - s)])
}

/// The two `(value, multiplicity)` runs of the segment point, bypassing
/// mixture construction; used inside bisection loops.
#[inline]
fn segment_runs(k_hi: usize, k_lo: usize, s: f64) -> [(f64, u64); 2] {
    let small = s / k_hi as f64;
    [
        (small, (k_hi - k_lo) as u64),
        (small + (1.0 - s) / k_lo as f64, k_lo as u64),
    ]
}

/// H_a at the segment point, in nats, in O(1).
pub(crate) fn entropy_on_segment(k_hi: usize, k_lo: usize, s: f64, a: Order) -> f64 {
    entropy_of_runs(&segment_runs(k_hi, k_lo, s), a)
}

/// Invert h = H_a along the segment Δ_{k_hi,k_lo}: the unique s with
/// H_a(segment_point(k_hi, k_lo, s)) = h, to within 1e-11 in h.
///
/// Valid h lie between H_a(U_{k_lo}) = log k_lo and H_a(U_{k_hi}) =
/// log k_hi; values within 1e-12 of an endpoint clamp to it. Bisection is
/// justified by the strict monotonicity of s ↦ H_a along the segment,
/// which the property suite verifies on a dense grid.
pub fn invert_on_segment(k_hi: usize, k_lo: usize, a: Order, h: EntropyValue) -> Result<f64> {
    if k_lo == 0 || k_hi <= k_lo {
        return Err(Error::InvalidSegment { k_hi, k_lo });
    }
    let h = h.nats();
    let lo_val = math::ln(k_lo as f64);
    let hi_val = math::ln(k_hi as f64);
    if (h - lo_val).abs() <= DIAGONAL_TOL {
        return Ok(0.0);
    }
    if (h - hi_val).abs() <= DIAGONAL_TOL {
        return Ok(1.0);
    }
    if h < lo_val || h > hi_val {
        return Err(Error::OutOfRange {
            what: "h along segment",
            value: h,
            min: lo_val,
            max: hi_val,
        });
    }
    let root = solve::bisect(0.0, 1.0, INVERT_TOL, |s| {
        entropy_on_segment(k_hi, k_lo, s, a) - h
    });
    if root.residual.abs() > 1e-11 {
        return Err(Error::InternalInconsistency {
            what: "segment bisection failed to converge",
        });
    }
    Ok(root.x)
}

/// The bucket k with log k ≤ h < log (k+1), closed on the left, robust to
/// the float rounding of exp/log near the diagonal points.
pub(crate) fn bucket(h: f64) -> usize {
    debug_assert!(h >= 0.0);
    let mut k = math::floor(math::exp(h)) as usize;
    if k == 0 {
        k = 1;
    }
    // exp may land a hair on the wrong side of an integer.
    while math::ln((k + 1) as f64) <= h + DIAGONAL_TOL {
        k += 1;
    }
    while k > 1 && math::ln(k as f64) > h + DIAGONAL_TOL {
        k -= 1;
    }
    k
}

fn diagonal_result(k: usize) -> BoundResult {
    BoundResult {
        bound: EntropyValue::from_nats(math::ln(k as f64)),
        witness: Some(UniformMixture::pure(k).expect("k >= 1")),
        attained: true,
    }
}

/// Tight upper bound on H_{α₂} given H_{α₁} = h₁, attained by a mixture of
/// U_k and U_{k+1} where log k ≤ h₁ < log (k+1). Does not depend on the
/// alphabet cap (beyond the query's own h₁ ≤ log n check).
pub fn upper_bound(q: &BoundQuery2) -> Result<BoundResult> {
    let h1 = q.h1.nats();
    let k = bucket(h1);
    if (h1 - math::ln(k as f64)).abs() <= DIAGONAL_TOL {
        return Ok(diagonal_result(k));
    }
    let s = invert_on_segment(k + 1, k, q.alpha1, q.h1)?;
    let witness = segment_mixture(k + 1, k, s)?;
    let bound = mixture_entropy(&witness, q.alpha2);
    Ok(BoundResult {
        bound,
        witness: Some(witness),
        attained: true,
    })
}

/// Tight lower bound on H_{α₂} given H_{α₁} = h₁ for distributions on n
/// points, attained by a mixture of U_n and U_1.
pub fn lower_bound_fixed_n(q: &BoundQuery2) -> Result<BoundResult> {
    let n = q.n.ok_or(Error::MissingAlphabetSize)?;
    let h1 = q.h1.nats();
    if h1 <= DIAGONAL_TOL {
        return Ok(diagonal_result(1));
    }
    if (h1 - math::ln(n as f64)).abs() <= DIAGONAL_TOL {
        return Ok(diagonal_result(n));
    }
    let t = invert_on_segment(n, 1, q.alpha1, q.h1)?;
    let witness = segment_mixture(n, 1, t)?;
    let bound = mixture_entropy(&witness, q.alpha2);
    Ok(BoundResult {
        bound,
        witness: Some(witness),
        attained: true,
    })
}

/// Greatest lower bound on H_{α₂} given H_{α₁} = h₁ > 0 with no
/// restriction on the alphabet size: 0 for α₁ ≤ 1, otherwise the line
/// (α₂/(α₂−1))·((α₁−1)/α₁)·h₁ (with α₂/(α₂−1) → 1 as α₂ → ∞). The
/// infimum is strict — no distribution attains it — so no witness is
/// returned and `attained` is false.
pub fn lower_bound_unbounded(q: &BoundQuery2) -> Result<BoundResult> {
    let a1 = q.alpha1.value();
    let bound = if a1 <= 1.0 {
        0.0
    } else {
        let a2_factor = if q.alpha2.is_infinite() {
            1.0
        } else {
            let a2 = q.alpha2.value();
            a2 / (a2 - 1.0)
        };
        a2_factor * ((a1 - 1.0) / a1) * q.h1.nats()
    };
    Ok(BoundResult {
        bound: EntropyValue::from_nats(bound),
        witness: None,
        attained: false,
    })
}

/// One arc of a [`DiagramCurve`]: the image of the oriented segment
/// Δ_{from,to}, traversed from U_{from} to U_{to}.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSegment {
    /// Support at the start of the arc.
    pub from_support: usize,
    /// Support at the end of the arc.
    pub to_support: usize,
    /// Sampled (h₁, h₂) pairs in nats, endpoints included.
    pub points: Vec<[f64; 2]>,
}

/// The closed boundary curve of the two-order diagram for alphabet size n:
/// the arcs Δ_{n,n−1}, …, Δ_{2,1} along the diagonal and the closing arc
/// Δ_{1,n} underneath, visiting Φ(U_n), Φ(U_{n−1}), …, Φ(U_1) in order.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramCurve {
    /// Orders the curve was sampled for.
    pub alpha1: Order,
    /// Second order.
    pub alpha2: Order,
    /// Alphabet size.
    pub n: usize,
    /// Arcs in traversal order.
    pub segments: Vec<CurveSegment>,
    /// Always true: the traversal returns to Φ(U_n).
    pub closed: bool,
}

impl DiagramCurve {
    /// All sampled vertices in traversal order (seam points appear once
    /// per adjacent arc).
    pub fn vertices(&self) -> impl Iterator<Item = [f64; 2]> + '_ {
        self.segments.iter().flat_map(|s| s.points.iter().copied())
    }
}

/// Sample the closed boundary curve. Sampling is uniform in the mixture
/// parameter (not arc length), `samples_per_segment` points per arc with
/// both endpoints included.
pub fn boundary_curve(
    alpha1: Order,
    alpha2: Order,
    n: usize,
    samples_per_segment: usize,
) -> Result<DiagramCurve> {
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "curve alphabet size n",
            value: n as f64,
            min: 2.0,
            max: f64::INFINITY,
        });
    }
    if samples_per_segment < 2 {
        return Err(Error::OutOfRange {
            what: "samples per segment",
            value: samples_per_segment as f64,
            min: 2.0,
            max: f64::INFINITY,
        });
    }
    if alpha1.value() <= 0.0 || alpha1.value() >= alpha2.value() {
        return Err(Error::OrdersNotIncreasing);
    }
    let mut segments = Vec::with_capacity(n);
    // Down the diagonal: U_n -> U_{n-1} -> ... -> U_1.
    for k in (1..n).rev() {
        segments.push(sample_arc(k + 1, k, alpha1, alpha2, samples_per_segment, true));
    }
    // Closing arc from U_1 back to U_n.
    segments.push(sample_arc(n, 1, alpha1, alpha2, samples_per_segment, false));
    Ok(DiagramCurve {
        alpha1,
        alpha2,
        n,
        segments,
        closed: true,
    })
}

fn sample_arc(
    k_hi: usize,
    k_lo: usize,
    alpha1: Order,
    alpha2: Order,
    samples: usize,
    from_hi: bool,
) -> CurveSegment {
    let mut points = Vec::with_capacity(samples);
    for i in 0..samples {
        let frac = i as f64 / (samples - 1) as f64;
        let s = if from_hi { 1.0 - frac } else { frac };
        points.push([
            entropy_on_segment(k_hi, k_lo, s, alpha1),
            entropy_on_segment(k_hi, k_lo, s, alpha2),
        ]);
    }
    let (from_support, to_support) = if from_hi { (k_hi, k_lo) } else { (k_lo, k_hi) };
    CurveSegment {
        from_support,
        to_support,
        points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::renyi_entropy;

    fn order(a: f64) -> Order {
        Order::new(a).unwrap()
    }

    fn ev(nats: f64) -> EntropyValue {
        EntropyValue::from_nats(nats)
    }

    #[test]
    fn segment_point_endpoints() {
        assert_eq!(segment_point(2, 1, 1.0).unwrap().probs(), &[0.5, 0.5]);
        assert_eq!(segment_point(2, 1, 0.0).unwrap().probs(), &[0.0, 1.0]);
    }

    #[test]
    fn segment_point_quarter_mix() {
        // s = 0.5 on the U_4/U_1 segment: (t/n, ..., t/n + 1 - t) at t = 0.5.
        let p = segment_point(4, 1, 0.5).unwrap();
        let expected = [0.125, 0.125, 0.125, 0.625];
        for (a, e) in p.probs().iter().zip(&expected) {
            assert!((a - e).abs() <= 1e-15);
        }
    }

    #[test]
    fn segment_point_rejects_bad_shape() {
        assert!(matches!(
            segment_point(2, 2, 0.5),
            Err(Error::InvalidSegment { .. })
        ));
        assert!(matches!(
            segment_point(1, 2, 0.5),
            Err(Error::InvalidSegment { .. })
        ));
        assert!(segment_point(2, 1, 1.5).is_err());
    }

    #[test]
    fn invert_endpoints_and_clamping() {
        for k in 1..6usize {
            let a = order(2.0);
            assert_eq!(
                invert_on_segment(k + 1, k, a, ev(math::ln(k as f64))).unwrap(),
                0.0
            );
            assert_eq!(
                invert_on_segment(k + 1, k, a, ev(math::ln((k + 1) as f64))).unwrap(),
                1.0
            );
        }
    }

    #[test]
    fn invert_frozen_value_shannon_half_nat() {
        // s solving H_1(s U_2 + (1-s) U_1) = 0.5, from the mpmath run.
        let s = invert_on_segment(2, 1, Order::ONE, ev(0.5)).unwrap();
        assert!((s - 0.39941980510795439).abs() <= 1e-10, "{s}");
        let p = segment_point(2, 1, s).unwrap();
        assert!((renyi_entropy(&p, Order::ONE).nats() - 0.5).abs() <= 1e-11);
    }

    #[test]
    fn invert_out_of_range() {
        assert!(matches!(
            invert_on_segment(3, 2, order(2.0), ev(math::ln(3.5))),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            invert_on_segment(3, 2, order(2.0), ev(0.2)),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn bucket_is_closed_on_the_left() {
        assert_eq!(bucket(0.0), 1);
        assert_eq!(bucket(math::ln(3.0)), 3);
        assert_eq!(bucket(math::ln(3.0) - 1e-9), 2);
        assert_eq!(bucket(math::ln(3.0) + 1e-9), 3);
        assert_eq!(bucket(1.0), 2);
    }

    #[test]
    fn upper_bound_diagonal_point() {
        let q = BoundQuery2::new(Order::ONE, order(2.0), ev(math::ln(3.0)), None).unwrap();
        let r = upper_bound(&q).unwrap();
        assert!((r.bound.nats() - math::ln(3.0)).abs() <= 1e-12);
        assert_eq!(r.witness.unwrap().components(), &[(3, 1.0)]);
        assert!(r.attained);
    }

    #[test]
    fn upper_bound_frozen_value() {
        // Orders (1, 2), h1 = 1 nat: bucket k = 2; expected value from the
        // mpmath run (the acceptance lattice oracle re-derives it to 5e-3).
        let q = BoundQuery2::new(Order::ONE, order(2.0), ev(1.0), None).unwrap();
        let r = upper_bound(&q).unwrap();
        assert!(
            (r.bound.nats() - 0.94173036053709081).abs() <= 1e-10,
            "{}",
            r.bound.nats()
        );
        let w = r.witness.unwrap();
        assert_eq!(w.alphabet_size(), 3);
        // Witness re-evaluation reproduces (h1, bound).
        assert!((mixture_entropy(&w, Order::ONE).nats() - 1.0).abs() <= 1e-11);
    }

    #[test]
    fn upper_bound_at_infinite_order_diagonal() {
        let q = BoundQuery2::new(Order::ONE, Order::INFINITY, ev(math::ln(2.0)), None).unwrap();
        let r = upper_bound(&q).unwrap();
        assert!((r.bound.nats() - math::ln(2.0)).abs() <= 1e-12);
    }

    #[test]
    fn lower_bound_fixed_n_endpoints_and_frozen_value() {
        let q = BoundQuery2::new(Order::ONE, order(2.0), ev(0.0), Some(4)).unwrap();
        let r = lower_bound_fixed_n(&q).unwrap();
        assert_eq!(r.bound.nats(), 0.0);
        assert_eq!(r.witness.unwrap().components(), &[(1, 1.0)]);

        let q = BoundQuery2::new(Order::ONE, order(2.0), ev(math::ln(4.0)), Some(4)).unwrap();
        let r = lower_bound_fixed_n(&q).unwrap();
        assert!((r.bound.nats() - math::ln(4.0)).abs() <= 1e-12);

        // Frozen interior value from the mpmath run.
        let q = BoundQuery2::new(Order::ONE, order(2.0), ev(1.0), Some(4)).unwrap();
        let r = lower_bound_fixed_n(&q).unwrap();
        assert!((r.bound.nats() - 0.72739293943138289).abs() <= 1e-10);
        assert!(r.attained);
    }

    #[test]
    fn lower_bound_unbounded_cases() {
        // alpha1 <= 1: infimum 0.
        let q = BoundQuery2::new(order(0.5), order(2.0), ev(3.0), None).unwrap();
        let r = lower_bound_unbounded(&q).unwrap();
        assert_eq!(r.bound.nats(), 0.0);
        assert!(!r.attained);
        assert!(r.witness.is_none());

        // Slope formula: (3/2)·(1/2)·2.0 = 1.5.
        let q = BoundQuery2::new(order(2.0), order(3.0), ev(2.0), None).unwrap();
        let r = lower_bound_unbounded(&q).unwrap();
        assert!((r.bound.nats() - 1.5).abs() <= 1e-15);

        // alpha2 = inf: the factor alpha2/(alpha2-1) tends to 1.
        let q = BoundQuery2::new(order(2.0), Order::INFINITY, ev(1.0), None).unwrap();
        let r = lower_bound_unbounded(&q).unwrap();
        assert!((r.bound.nats() - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn query_rejects_degenerate_orders() {
        assert!(matches!(
            BoundQuery2::new(order(2.0), order(2.0), ev(1.0), None),
            Err(Error::OrdersNotIncreasing)
        ));
        assert!(matches!(
            BoundQuery2::new(Order::ZERO, order(2.0), ev(1.0), None),
            Err(Error::OrdersNotIncreasing)
        ));
        assert!(matches!(
            BoundQuery2::new(order(3.0), order(2.0), ev(1.0), None),
            Err(Error::OrdersNotIncreasing)
        ));
    }

    #[test]
    fn query_rejects_h1_above_log_n() {
        assert!(BoundQuery2::new(Order::ONE, order(2.0), ev(1.2), Some(4)).is_ok());
        assert!(matches!(
            BoundQuery2::new(Order::ONE, order(2.0), ev(1.2), Some(3)),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn curve_visits_diagonal_points_in_order() {
        let c = boundary_curve(Order::ONE, order(2.0), 4, 5).unwrap();
        assert!(c.closed);
        assert_eq!(c.segments.len(), 4);
        // Segments run U_4 -> U_3 -> U_2 -> U_1, then U_1 -> U_4.
        let supports: Vec<(usize, usize)> = c
            .segments
            .iter()
            .map(|s| (s.from_support, s.to_support))
            .collect();
        assert_eq!(supports, [(4, 3), (3, 2), (2, 1), (1, 4)]);
        for seg in &c.segments {
            for (support, point) in [
                (seg.from_support, seg.points[0]),
                (seg.to_support, *seg.points.last().unwrap()),
            ] {
                let d = math::ln(support as f64);
                assert!((point[0] - d).abs() <= 1e-12);
                assert!((point[1] - d).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn two_point_curve_arcs_coincide_as_sets() {
        let c = boundary_curve(Order::ONE, order(2.0), 2, 33).unwrap();
        assert_eq!(c.segments.len(), 2);
        let forward = &c.segments[0].points;
        let mut back = c.segments[1].points.clone();
        back.reverse();
        for (a, b) in forward.iter().zip(&back) {
            assert!((a[0] - b[0]).abs() <= 1e-12);
            assert!((a[1] - b[1]).abs() <= 1e-12);
        }
    }
}
