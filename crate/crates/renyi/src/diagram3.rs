//! Joint range of three Rényi entropies H_{α₁}, H_{α₂}, H_{α₃} with
//! 0 < α₁ < α₂ < α₃ ≤ ∞: boundary surfaces, 2-D inversion, and tight
//! bounds on H_{α₃} given (H_{α₁}, H_{α₂}).
//!
//! The boundary of the three-order range is a closed surface made of
//! images of simplices of three uniform distributions, in two sheets:
//!
//! - the simplices Δ_{m,m−1,1} (an adjacent support pair plus a point
//!   mass), m = 3, 4, …. Projected to the (H_{α₁}, H_{α₂}) plane these
//!   tile the two-order range without overlap, so every point has a
//!   unique preimage (m; x, y, z). Among all distributions with the same
//!   (H_{α₁}, H_{α₂}), this preimage *minimizes* H_{α₃}; the resulting
//!   lower bound does not depend on the alphabet size.
//! - the simplices Δ_{n,m,m−1} (the full-support uniform plus an adjacent
//!   pair), m = 2..n−1. Their projections may overlap; the largest
//!   H_{α₃} among the preimages is the tight *upper* bound, and it
//!   genuinely depends on n.
//!
//! Which sheet carries which extreme is fixed by the numerics (the
//! verification oracle brute-forces it): mixing toward the full-support
//! uniform pushes H_{α₃} up at fixed (H_{α₁}, H_{α₂}), mixing toward a
//! point mass pushes it down.
//!
//! Inversion inside one simplex is a nested bisection: the outer loop
//! moves the weight x on the largest uniform, the inner loop re-solves
//! H_{α₂} along the edge direction between the two smaller uniforms,
//! reusing the certified 1-D machinery. The outer variable must be the
//! weight whose vanishing creates a zero point-probability: for α < 1 the
//! entropies have a |∂H/∂x| ~ x^{α−1} singularity there, and bisecting in
//! x keeps full float resolution next to it. Newton with the analytic
//! Jacobian was rejected for the same reason: the Jacobian degenerates on
//! exactly the edges where bound queries cluster.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram2::{self, BoundQuery2, BoundResult, DIAGONAL_TOL};
use crate::dist::{ProbVector, UniformMixture};
use crate::entropy::{entropy_of_runs, EntropyValue};
use crate::error::{Error, Result};
use crate::math;
use crate::order::Order;
use crate::solve;

/// Slack allowed when checking (h₁, h₂) against the two-order range;
/// matches the Monte-Carlo sandwich tolerance so samples sitting on the
/// boundary up to float error stay answerable.
const RANGE_SLACK: f64 = 1e-9;

/// Residual tolerances of the nested bisection. The inner H_{α₂} solve
/// must out-resolve the outer H_{α₁} one or the outer residual gets noisy.
const INNER_TOL: f64 = 1e-13;
const OUTER_TOL: f64 = 1e-11;

/// Largest support the unique-preimage cell search will grow to. Queries
/// closer to the unbounded-alphabet infimum than this allows have
/// astronomically large witnesses and are refused.
const MAX_SUPPORT: usize = 1 << 48;

/// A bound query for the three-order diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundQuery3 {
    alpha1: Order,
    alpha2: Order,
    alpha3: Order,
    h1: EntropyValue,
    h2: EntropyValue,
    n: Option<usize>,
}

impl BoundQuery3 {
    /// Validate a query: strictly increasing positive orders, and
    /// (h₁, h₂) inside the two-order joint range for (α₁, α₂) — below the
    /// upper boundary, above the unbounded-alphabet infimum, and when an
    /// alphabet cap is present above the fixed-n lower boundary, all with
    /// 1e-9 slack.
    pub fn new(
        alpha1: Order,
        alpha2: Order,
        alpha3: Order,
        h1: EntropyValue,
        h2: EntropyValue,
        n: Option<usize>,
    ) -> Result<Self> {
        if alpha2.value() >= alpha3.value() {
            return Err(Error::OrdersNotIncreasing);
        }
        let q2 = BoundQuery2::new(alpha1, alpha2, h1, n)?;
        if !h2.nats().is_finite() || h2.nats() < 0.0 {
            return Err(Error::OutOfRange {
                what: "h2",
                value: h2.nats(),
                min: 0.0,
                max: h1.nats(),
            });
        }
        let ub = diagram2::upper_bound(&q2)?.bound.nats();
        if h2.nats() > ub + RANGE_SLACK {
            return Err(Error::OutOfRange {
                what: "h2 against the two-order upper bound",
                value: h2.nats(),
                min: 0.0,
                max: ub,
            });
        }
        let floor = match n {
            Some(_) => diagram2::lower_bound_fixed_n(&q2)?.bound.nats(),
            None => diagram2::lower_bound_unbounded(&q2)?.bound.nats(),
        };
        if h2.nats() < floor - RANGE_SLACK {
            return Err(Error::OutOfRange {
                what: "h2 against the two-order lower bound",
                value: h2.nats(),
                min: floor,
                max: ub,
            });
        }
        Ok(BoundQuery3 {
            alpha1,
            alpha2,
            alpha3,
            h1,
            h2,
            n,
        })
    }

    /// The smallest order α₁.
    pub fn alpha1(&self) -> Order {
        self.alpha1
    }

    /// The middle order α₂.
    pub fn alpha2(&self) -> Order {
        self.alpha2
    }

    /// The largest order α₃.
    pub fn alpha3(&self) -> Order {
        self.alpha3
    }

    /// The conditioning value h₁ = H_{α₁}(P).
    pub fn h1(&self) -> EntropyValue {
        self.h1
    }

    /// The conditioning value h₂ = H_{α₂}(P).
    pub fn h2(&self) -> EntropyValue {
        self.h2
    }

    /// The alphabet cap, if any.
    pub fn n(&self) -> Option<usize> {
        self.n
    }
}

/// A point of one boundary simplex Δ_{k₁,k₂,k₃}: the three supports in
/// strictly decreasing order and barycentric weights summing to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceCell {
    supports: (usize, usize, usize),
    barycentric: (f64, f64, f64),
}

impl SurfaceCell {
    /// Validate supports (strictly decreasing, positive) and barycentric
    /// weights (non-negative, summing to 1 within 1e-12).
    pub fn new(supports: (usize, usize, usize), barycentric: (f64, f64, f64)) -> Result<Self> {
        let (a, b, c) = supports;
        if c == 0 || b <= c || a <= b {
            return Err(Error::NotSorted {
                what: "cell supports must be strictly decreasing and positive",
            });
        }
        let (x, y, z) = barycentric;
        for w in [x, y, z] {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeight { value: w });
            }
        }
        if (x + y + z - 1.0).abs() > 1e-12 {
            return Err(Error::WeightsNotNormalized { sum: x + y + z });
        }
        Ok(SurfaceCell {
            supports,
            barycentric,
        })
    }

    /// The supports (k₁, k₂, k₃), strictly decreasing.
    pub fn supports(&self) -> (usize, usize, usize) {
        self.supports
    }

    /// The weights (x, y, z) on (U_{k₁}, U_{k₂}, U_{k₃}).
    pub fn barycentric(&self) -> (f64, f64, f64) {
        self.barycentric
    }

    /// The cell as a mixture value.
    pub fn mixture(&self) -> UniformMixture {
        let (a, b, c) = self.supports;
        let (x, y, z) = self.barycentric;
        UniformMixture::new(vec![(a, x), (b, y), (c, z)]).expect("validated at construction")
    }

    /// H_a at this cell point, in nats, in O(1).
    pub fn entropy(&self, a: Order) -> EntropyValue {
        EntropyValue::from_nats(cell_entropy(self.supports, self.barycentric, a))
    }
}

/// Materialize the cell's mixture x·U_{k₁} + y·U_{k₂} + z·U_{k₃}.
pub fn simplex_point(c: &SurfaceCell) -> ProbVector {
    crate::dist::realize_mixture(&c.mixture())
}

/// The three `(value, multiplicity)` runs of a cell point; same arithmetic
/// as the mixture path but allocation-free for the solver loops.
#[inline]
fn cell_runs(supports: (usize, usize, usize), w: (f64, f64, f64)) -> [(f64, u64); 3] {
    let (a, b, c) = supports;
    let (x, y, z) = w;
    let v1 = x / a as f64;
    let v2 = v1 + y / b as f64;
    let v3 = v2 + z / c as f64;
    [(v1, (a - b) as u64), (v2, (b - c) as u64), (v3, c as u64)]
}

#[inline]
fn cell_entropy(supports: (usize, usize, usize), w: (f64, f64, f64), a: Order) -> f64 {
    entropy_of_runs(&cell_runs(supports, w), a)
}

/// Weights at outer coordinate x (largest support) and inner coordinate t:
/// the rest splits between the middle support (t = 1) and the smallest
/// (t = 0).
#[inline]
fn nested_weights(x: f64, t: f64) -> (f64, f64, f64) {
    let rest = 1.0 - x;
    (x, rest * t, rest * (1.0 - t))
}

/// Solve H_{α₂} = h₂ along the inner edge direction at fixed x. Strict
/// monotonicity in t holds by majorization: moving rest mass from the
/// smallest to the middle uniform only spreads the distribution. Endpoint
/// overshoots from float slop clamp to the endpoint.
fn inner_solve(supports: (usize, usize, usize), alpha2: Order, h2: f64, x: f64) -> f64 {
    let f = |t: f64| cell_entropy(supports, nested_weights(x, t), alpha2) - h2;
    if f(0.0) >= 0.0 {
        return 0.0;
    }
    if f(1.0) <= 0.0 {
        return 1.0;
    }
    solve::bisect(0.0, 1.0, INNER_TOL, f).x
}

/// Try to invert (H_{α₁}, H_{α₂}) = (h₁, h₂) inside the simplex on the
/// given supports. Returns the barycentric weights if the simplex contains
/// a preimage, `None` if it provably does not: along the h₂ level curve,
/// H_{α₁} is strictly monotone (the §-independent Jacobian positivity —
/// see the `vandermonde` module — keeps the map an immersion off the
/// edges), so a missing sign change between the admissible x endpoints is
/// conclusive.
fn invert_in_cell(
    supports: (usize, usize, usize),
    alpha1: Order,
    alpha2: Order,
    h1: f64,
    h2: f64,
) -> Result<Option<(f64, f64, f64)>> {
    let (a, b, c) = supports;
    let log_a = math::ln(a as f64);
    let log_b = math::ln(b as f64);
    let log_c = math::ln(c as f64);
    if h2 > log_a + DIAGONAL_TOL || h2 < log_c - DIAGONAL_TOL {
        return Ok(None);
    }

    // Admissible x range: the inner bracket H(t=0) <= h2 <= H(t=1) holds
    // exactly for x in [x_lo, x_hi], by monotonicity of both edge curves.
    let x_hi = match diagram2::invert_on_segment(a, c, alpha2, EntropyValue::from_nats(h2)) {
        Ok(s) => s,
        Err(Error::OutOfRange { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let x_lo = if h2 <= log_b + DIAGONAL_TOL {
        0.0
    } else {
        match diagram2::invert_on_segment(a, b, alpha2, EntropyValue::from_nats(h2)) {
            Ok(s) => s,
            Err(Error::OutOfRange { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    };
    if x_lo > x_hi {
        return Ok(None);
    }

    let residual = |x: f64| {
        let t = inner_solve(supports, alpha2, h2, x);
        let w = nested_weights(x, t);
        (cell_entropy(supports, w, alpha1) - h1, w)
    };

    let (g_lo, w_lo) = residual(x_lo);
    if g_lo.abs() <= OUTER_TOL {
        return Ok(Some(w_lo));
    }
    let (g_hi, w_hi) = residual(x_hi);
    if g_hi.abs() <= OUTER_TOL {
        return Ok(Some(w_hi));
    }
    if (g_lo > 0.0) == (g_hi > 0.0) {
        return Ok(None);
    }

    let flip = if g_lo > 0.0 { -1.0 } else { 1.0 };
    let root = solve::bisect(x_lo, x_hi, OUTER_TOL, |x| flip * residual(x).0);
    let (g, w) = residual(root.x);
    if g.abs() > 1e-9 {
        return Err(Error::InternalInconsistency {
            what: "cell inversion failed to converge in the outer variable",
        });
    }
    Ok(Some(w))
}

/// H_{α₂} on the seam arc Δ_{m,1} at the point where H_{α₁} = h₁. These
/// values decrease in m, which is what the unique-sheet cell search walks.
fn seam_value(m: usize, alpha1: Order, alpha2: Order, h1: f64) -> Result<f64> {
    let s = diagram2::invert_on_segment(m, 1, alpha1, EntropyValue::from_nats(h1))?;
    Ok(diagram2::entropy_on_segment(m, 1, s, alpha2))
}

/// Invert Φ = (H_{α₁}, H_{α₂}) on the sheet of simplices Δ_{m,m−1,1}: the
/// unique cell (m; x, y, z) with Φ(x·U_m + y·U_{m−1} + z·U_1) = (h₁, h₂),
/// to within 1e-9 in both coordinates. This is the sheet that minimizes
/// H_{α₃}; no alphabet size enters.
///
/// The candidate m is located by walking the seam arcs Δ_{m,1} (whose
/// H_{α₂} at fixed h₁ decreases in m) with an exponential-then-binary
/// search, followed by the nested-bisection inversion in that single cell.
/// Points on the two-order upper boundary come back with z = 0, diagonal
/// points (log m, log m) as the vertex (1, 0, 0).
pub fn invert_point_mass_sheet(
    alpha1: Order,
    alpha2: Order,
    h1: EntropyValue,
    h2: EntropyValue,
) -> Result<SurfaceCell> {
    let q2 = BoundQuery2::new(alpha1, alpha2, h1, None)?;
    let h1 = h1.nats();
    let mut h2 = h2.nats();
    if !h2.is_finite() || h2 < 0.0 {
        return Err(Error::OutOfRange {
            what: "h2",
            value: h2,
            min: 0.0,
            max: h1,
        });
    }

    // Everything at h1 ~ 0 is the U_1 vertex.
    if h1 <= DIAGONAL_TOL {
        if h2 > DIAGONAL_TOL {
            return Err(Error::OutOfRange {
                what: "h2 at h1 = 0",
                value: h2,
                min: 0.0,
                max: 0.0,
            });
        }
        return SurfaceCell::new((3, 2, 1), (0.0, 0.0, 1.0));
    }

    let ub = diagram2::upper_bound(&q2)?.bound.nats();
    if h2 > ub + RANGE_SLACK {
        return Err(Error::OutOfRange {
            what: "h2 against the two-order upper bound",
            value: h2,
            min: 0.0,
            max: ub,
        });
    }
    if h2 > ub {
        h2 = ub;
    }

    // At or below the unbounded-alphabet infimum no finite cell reaches.
    let lbu = diagram2::lower_bound_unbounded(&q2)?.bound.nats();
    if h2 <= lbu + DIAGONAL_TOL {
        return Err(Error::NoPreimage { h1, h2 });
    }

    // Diagonal points are uniform distributions.
    let k = diagram2::bucket(h1);
    if (h1 - math::ln(k as f64)).abs() <= DIAGONAL_TOL && (h2 - h1).abs() <= DIAGONAL_TOL {
        return match k {
            1 => SurfaceCell::new((3, 2, 1), (0.0, 0.0, 1.0)),
            2 => SurfaceCell::new((3, 2, 1), (0.0, 1.0, 0.0)),
            _ => SurfaceCell::new((k, k - 1, 1), (1.0, 0.0, 0.0)),
        };
    }

    // Smallest m >= m_start whose seam arc Δ_{m,1} dips to h₂ at this h₁:
    // the point then lies in cell m's band, between seams m−1 and m.
    let m_start = if (h1 - math::ln(k as f64)).abs() <= DIAGONAL_TOL {
        k.max(3)
    } else {
        (k + 1).max(3)
    };
    let mut m = m_start;
    if seam_value(m, alpha1, alpha2, h1)? > h2 + DIAGONAL_TOL {
        let mut lo = m;
        let mut hi = m;
        loop {
            hi = (hi * 2).min(MAX_SUPPORT);
            if seam_value(hi, alpha1, alpha2, h1)? <= h2 + DIAGONAL_TOL {
                break;
            }
            if hi == MAX_SUPPORT {
                return Err(Error::NoPreimage { h1, h2 });
            }
            lo = hi;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if seam_value(mid, alpha1, alpha2, h1)? <= h2 + DIAGONAL_TOL {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        m = hi;
    }

    // Seam-tolerance slop can park the point a hair outside cell m; its
    // neighbors cover that.
    let mut candidates = vec![m, m + 1];
    if m > m_start {
        candidates.push(m - 1);
    }
    for candidate in candidates {
        if let Some((x, y, z)) =
            invert_in_cell((candidate, candidate - 1, 1), alpha1, alpha2, h1, h2)?
        {
            return SurfaceCell::new((candidate, candidate - 1, 1), (x, y, z));
        }
    }
    Err(Error::NoPreimage { h1, h2 })
}

/// All preimages of (h₁, h₂) on the sheet of simplices Δ_{n,m,m−1},
/// m = 2..n−1 (the single Δ_{3,2,1} when n = 3). This sheet maximizes
/// H_{α₃}; its projection may overlap itself, so callers get every
/// preimage found and can inspect the multiplicity.
pub fn full_support_sheet_preimages(
    alpha1: Order,
    alpha2: Order,
    h1: EntropyValue,
    h2: EntropyValue,
    n: usize,
) -> Result<Vec<SurfaceCell>> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "surface alphabet size n",
            value: n as f64,
            min: 3.0,
            max: f64::INFINITY,
        });
    }
    let h1 = h1.nats();
    let h2 = h2.nats();
    let mut cells = Vec::new();
    if n == 3 {
        if let Some(w) = invert_in_cell((3, 2, 1), alpha1, alpha2, h1, h2)? {
            cells.push(SurfaceCell::new((3, 2, 1), w)?);
        }
        return Ok(cells);
    }
    for m in 2..n {
        if let Some(w) = invert_in_cell((n, m, m - 1), alpha1, alpha2, h1, h2)? {
            cells.push(SurfaceCell::new((n, m, m - 1), w)?);
        }
    }
    Ok(cells)
}

/// Tight upper bound on H_{α₃} given (H_{α₁}, H_{α₂}) = (h₁, h₂) for
/// distributions on n points: the largest H_{α₃} among the preimages on
/// the Δ_{n,m,m−1} sheet. Requires the alphabet cap — this bound genuinely
/// grows with n.
pub fn upper_bound3(q: &BoundQuery3) -> Result<BoundResult> {
    let n = q.n.ok_or(Error::MissingAlphabetSize)?;
    let h1 = q.h1.nats();
    let mut h2 = q.h2.nats();

    if (h1 - math::ln(n as f64)).abs() <= DIAGONAL_TOL && (h2 - h1).abs() <= DIAGONAL_TOL {
        return Ok(BoundResult {
            bound: EntropyValue::from_nats(math::ln(n as f64)),
            witness: Some(UniformMixture::pure(n).expect("n >= 1")),
            attained: true,
        });
    }
    if h1 <= DIAGONAL_TOL && h2 <= DIAGONAL_TOL {
        return Ok(BoundResult {
            bound: EntropyValue::from_nats(0.0),
            witness: Some(UniformMixture::pure(1).expect("support 1")),
            attained: true,
        });
    }

    // Snap h2 onto the attainable band; query validation already allowed
    // only 1e-9 of slack beyond it.
    let q2 = BoundQuery2::new(q.alpha1, q.alpha2, q.h1, Some(n))?;
    let ub2 = diagram2::upper_bound(&q2)?.bound.nats();
    let lb2 = diagram2::lower_bound_fixed_n(&q2)?.bound.nats();
    h2 = h2.clamp(lb2, ub2);

    let cells = full_support_sheet_preimages(
        q.alpha1,
        q.alpha2,
        EntropyValue::from_nats(h1),
        EntropyValue::from_nats(h2),
        n,
    )?;
    let mut best: Option<(f64, SurfaceCell)> = None;
    for cell in cells {
        let h3 = cell_entropy(cell.supports(), cell.barycentric(), q.alpha3);
        if best.as_ref().map_or(true, |(b, _)| h3 > *b) {
            best = Some((h3, cell));
        }
    }
    match best {
        Some((h3, cell)) => Ok(BoundResult {
            bound: EntropyValue::from_nats(h3),
            witness: Some(cell.mixture()),
            attained: true,
        }),
        None => Err(Error::NoPreimage { h1, h2 }),
    }
}

/// Tight lower bound on H_{α₃} given (H_{α₁}, H_{α₂}) = (h₁, h₂): the
/// H_{α₃} value at the unique Δ_{m,m−1,1}-sheet preimage. Independent of
/// the alphabet cap, which is only used (when present) to validate that
/// (h₁, h₂) is reachable on n points at all.
pub fn lower_bound3(q: &BoundQuery3) -> Result<BoundResult> {
    let cell = invert_point_mass_sheet(q.alpha1, q.alpha2, q.h1, q.h2)?;
    Ok(BoundResult {
        bound: cell.entropy(q.alpha3),
        witness: Some(cell.mixture()),
        attained: true,
    })
}

/// Which boundary sheet a [`DiagramSurface`] samples. Named by the side of
/// the H_{α₃} sandwich the sheet is tight for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    /// Δ_{n,m,m−1}, m = 2..n−1: the sheet of tight upper bounds on
    /// H_{α₃}.
    Upper,
    /// Δ_{m,m−1,1}, m = 3..n: the sheet of tight lower bounds on H_{α₃}.
    Lower,
}

/// One simplex of a surface mesh: its supports and the ids of its grid
/// points in barycentric row-major order (x-numerator descending, then
/// y-numerator descending).
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexGrid {
    /// Supports (k₁, k₂, k₃) of the simplex.
    pub supports: (usize, usize, usize),
    /// Vertex ids into [`DiagramSurface::vertices`].
    pub vertex_ids: Vec<usize>,
}

/// A triangulated sample of one boundary sheet with per-vertex entropy
/// coordinates. Vertices shared between adjacent simplices (the seam arcs)
/// are deduplicated by their exact rational barycentric key, so the mesh
/// is watertight.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramSurface {
    /// Smallest order.
    pub alpha1: Order,
    /// Middle order.
    pub alpha2: Order,
    /// Largest order.
    pub alpha3: Order,
    /// Alphabet size.
    pub n: usize,
    /// Which sheet.
    pub kind: SurfaceKind,
    /// Points per simplex edge used for sampling.
    pub resolution: usize,
    /// (H_{α₁}, H_{α₂}, H_{α₃}) per vertex, nats.
    pub vertices: Vec<[f64; 3]>,
    /// The simplex each vertex was first produced by.
    pub vertex_labels: Vec<(usize, usize, usize)>,
    /// Triangles as vertex-id triples, consistently wound per grid.
    pub triangles: Vec<[usize; 3]>,
    /// Per-simplex grids in the sheet's orientation order.
    pub grids: Vec<SimplexGrid>,
}

/// Sample one boundary sheet on a barycentric grid with `resolution`
/// points per simplex edge; resolution 2 samples only the three uniform
/// vertices of each simplex.
pub fn surface_mesh(
    alpha1: Order,
    alpha2: Order,
    alpha3: Order,
    n: usize,
    kind: SurfaceKind,
    resolution: usize,
) -> Result<DiagramSurface> {
    if alpha1.value() <= 0.0
        || alpha1.value() >= alpha2.value()
        || alpha2.value() >= alpha3.value()
    {
        return Err(Error::OrdersNotIncreasing);
    }
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "surface alphabet size n",
            value: n as f64,
            min: 3.0,
            max: f64::INFINITY,
        });
    }
    if resolution < 2 {
        return Err(Error::OutOfRange {
            what: "surface resolution",
            value: resolution as f64,
            min: 2.0,
            max: f64::INFINITY,
        });
    }
    let simplices: Vec<(usize, usize, usize)> = match kind {
        SurfaceKind::Upper => {
            if n == 3 {
                vec![(3, 2, 1)]
            } else {
                (2..n).map(|m| (n, m, m - 1)).collect()
            }
        }
        SurfaceKind::Lower => (3..=n).map(|m| (m, m - 1, 1)).collect(),
    };

    let denom = resolution - 1;
    let mut vertices: Vec<[f64; 3]> = Vec::new();
    let mut vertex_labels: Vec<(usize, usize, usize)> = Vec::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let mut grids: Vec<SimplexGrid> = Vec::new();
    // Dedup key: the reduced mixture as exact rationals (support,
    // weight-numerator), zero weights dropped.
    let mut seen: BTreeMap<Vec<(usize, usize)>, usize> = BTreeMap::new();

    for supports in simplices {
        let (a, b, c) = supports;
        let mut vertex_ids = Vec::new();
        let mut row_starts = Vec::new();
        // Row r holds the r + 1 points with x-numerator denom - r.
        for r in 0..=denom {
            row_starts.push(vertex_ids.len());
            let i = denom - r;
            for t in 0..=r {
                let j = r - t;
                let k = t;
                let mut key: Vec<(usize, usize)> = Vec::with_capacity(3);
                for (support, numer) in [(a, i), (b, j), (c, k)] {
                    if numer > 0 {
                        key.push((support, numer));
                    }
                }
                key.sort_unstable();
                let id = *seen.entry(key).or_insert_with(|| {
                    let w = (
                        i as f64 / denom as f64,
                        j as f64 / denom as f64,
                        k as f64 / denom as f64,
                    );
                    vertices.push([
                        cell_entropy(supports, w, alpha1),
                        cell_entropy(supports, w, alpha2),
                        cell_entropy(supports, w, alpha3),
                    ]);
                    vertex_labels.push(supports);
                    vertices.len() - 1
                });
                vertex_ids.push(id);
            }
        }
        for r in 0..denom {
            let row = row_starts[r];
            let next = row_starts[r + 1];
            for t in 0..=r {
                triangles.push([
                    vertex_ids[row + t],
                    vertex_ids[next + t],
                    vertex_ids[next + t + 1],
                ]);
                if t < r {
                    triangles.push([
                        vertex_ids[row + t],
                        vertex_ids[next + t + 1],
                        vertex_ids[row + t + 1],
                    ]);
                }
            }
        }
        grids.push(SimplexGrid {
            supports,
            vertex_ids,
        });
    }

    Ok(DiagramSurface {
        alpha1,
        alpha2,
        alpha3,
        n,
        kind,
        resolution,
        vertices,
        vertex_labels,
        triangles,
        grids,
    })
}
