//! The five subcommand implementations. Each returns rendered output;
//! writing to a file or stdout and turning errors into exit codes is the
//! binary's job.

use renyi::diagram2::{
    boundary_curve, lower_bound_fixed_n, lower_bound_unbounded, upper_bound, BoundQuery2,
};
use renyi::diagram3::{lower_bound3, surface_mesh, upper_bound3, BoundQuery3, SurfaceKind};
use renyi::verify::{
    check_bounds2, check_bounds3, empirical_envelope, sample_simplex, SampleConfig, SampleMode,
};
use renyi::{
    renyi_entropy, BoundResult, EntropyValue, LogBase, Order, ProbVector, UniformMixture,
};

use crate::dto::*;
use crate::formats::*;
use crate::parse::require_increasing;
use crate::svg::curve_svg;
use crate::{CliError, CommandOutput};

/// Output format of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Which bound side a `bound` invocation asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    fn as_str(&self) -> &'static str {
        match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Input(format!("JSON encoding failed: {e}")))
}

fn witness_dto(witness: &Option<UniformMixture>) -> Option<Vec<WitnessComponent>> {
    witness.as_ref().map(|m| {
        m.components()
            .iter()
            .map(|&(support, weight)| WitnessComponent { support, weight })
            .collect()
    })
}

/// Entropies of one distribution at the requested orders.
pub fn cmd_entropy(
    dist: &ProbVector,
    orders: &[Order],
    format: Format,
    base: LogBase,
) -> Result<CommandOutput, CliError> {
    if orders.is_empty() {
        return Err(CliError::Input("no orders requested".into()));
    }
    let out = EntropyOut {
        base: base_name(base),
        dist: dist.probs().to_vec(),
        entropies: orders
            .iter()
            .map(|&a| EntropyRow {
                order: a.to_string(),
                entropy: renyi_entropy(dist, a).in_base(base),
            })
            .collect(),
    };
    let text = match format {
        Format::Csv => entropy_csv(&out, base),
        Format::Json => to_json(&out)?,
        Format::Svg => {
            return Err(CliError::Range(
                "svg output is only available for the curve command".into(),
            ))
        }
    };
    Ok(CommandOutput::clean(text))
}

/// Tight bound query for two or three orders. `h` values are read in the
/// output base.
pub fn cmd_bound(
    orders: &[Order],
    h: &[f64],
    n: Option<usize>,
    side: Side,
    format: Format,
    base: LogBase,
) -> Result<CommandOutput, CliError> {
    require_increasing(orders)?;
    if h.len() + 1 != orders.len() {
        return Err(CliError::Input(format!(
            "{} orders need {} conditioning value(s), got {}",
            orders.len(),
            orders.len() - 1,
            h.len()
        )));
    }
    let h_nats: Vec<f64> = h.iter().map(|v| v * base.ln()).collect();
    let result: BoundResult = match orders.len() {
        2 => {
            let q = BoundQuery2::new(
                orders[0],
                orders[1],
                EntropyValue::from_nats(h_nats[0]),
                n,
            )?;
            match side {
                Side::Upper => upper_bound(&q)?,
                Side::Lower => match n {
                    Some(_) => lower_bound_fixed_n(&q)?,
                    None => lower_bound_unbounded(&q)?,
                },
            }
        }
        3 => {
            let q = BoundQuery3::new(
                orders[0],
                orders[1],
                orders[2],
                EntropyValue::from_nats(h_nats[0]),
                EntropyValue::from_nats(h_nats[1]),
                n,
            )?;
            match side {
                Side::Upper => upper_bound3(&q)?,
                Side::Lower => lower_bound3(&q)?,
            }
        }
        k => {
            return Err(CliError::Input(format!(
                "bound queries take 2 or 3 orders, got {k}"
            )))
        }
    };
    let out = BoundOut {
        base: base_name(base),
        orders: orders.iter().map(|o| o.to_string()).collect(),
        h: h.to_vec(),
        n,
        side: side.as_str().into(),
        bound: result.bound.in_base(base),
        attained: result.attained,
        witness: witness_dto(&result.witness),
    };
    let text = match format {
        Format::Csv => bound_csv(&out, base),
        Format::Json => to_json(&out)?,
        Format::Svg => {
            return Err(CliError::Range(
                "svg output is only available for the curve command".into(),
            ))
        }
    };
    Ok(CommandOutput::clean(text))
}

/// The closed two-order boundary curve.
pub fn cmd_curve(
    orders: &[Order],
    n: usize,
    samples_per_segment: usize,
    format: Format,
    base: LogBase,
) -> Result<CommandOutput, CliError> {
    if orders.len() != 2 {
        return Err(CliError::Input(format!(
            "the curve command takes exactly 2 orders, got {}",
            orders.len()
        )));
    }
    require_increasing(orders)?;
    let curve = boundary_curve(orders[0], orders[1], n, samples_per_segment)?;
    let text = match format {
        Format::Svg => curve_svg(&curve, base),
        Format::Csv | Format::Json => {
            let conv = |h: f64| h / base.ln();
            let out = CurveOut {
                base: base_name(base),
                orders: orders.iter().map(|o| o.to_string()).collect(),
                n,
                closed: curve.closed,
                segments: curve
                    .segments
                    .iter()
                    .map(|s| CurveSegmentOut {
                        from_support: s.from_support,
                        to_support: s.to_support,
                        points: s.points.iter().map(|p| [conv(p[0]), conv(p[1])]).collect(),
                    })
                    .collect(),
            };
            match format {
                Format::Csv => curve_csv(&out, base),
                _ => to_json(&out)?,
            }
        }
    };
    Ok(CommandOutput::clean(text))
}

/// Both boundary sheets of the three-order diagram as a triangulated
/// mesh. SVG is refused: the mesh is 3-D, export it as CSV instead.
pub fn cmd_surface(
    orders: &[Order],
    n: usize,
    resolution: usize,
    format: Format,
    base: LogBase,
) -> Result<CommandOutput, CliError> {
    if orders.len() != 3 {
        return Err(CliError::Input(format!(
            "the surface command takes exactly 3 orders, got {}",
            orders.len()
        )));
    }
    require_increasing(orders)?;
    if format == Format::Svg {
        return Err(CliError::Range(
            "svg is not available for surfaces (3-D); use --format csv for the mesh".into(),
        ));
    }
    let conv = |h: f64| h / base.ln();
    let mut sheets = Vec::new();
    for (kind, name) in [(SurfaceKind::Upper, "upper"), (SurfaceKind::Lower, "lower")] {
        let mesh = surface_mesh(orders[0], orders[1], orders[2], n, kind, resolution)?;
        sheets.push(SheetOut {
            sheet: name.into(),
            vertices: mesh
                .vertices
                .iter()
                .map(|v| [conv(v[0]), conv(v[1]), conv(v[2])])
                .collect(),
            vertex_labels: mesh
                .vertex_labels
                .iter()
                .map(|&(a, b, c)| [a, b, c])
                .collect(),
            triangles: mesh.triangles.clone(),
        });
    }
    let out = SurfaceOut {
        base: base_name(base),
        orders: orders.iter().map(|o| o.to_string()).collect(),
        n,
        resolution,
        sheets,
    };
    let text = match format {
        Format::Csv => surface_csv(&out, base),
        Format::Json => to_json(&out)?,
        Format::Svg => unreachable!(),
    };
    Ok(CommandOutput::clean(text))
}

/// Which sampling mode a `verify` invocation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    MonteCarlo,
    Lattice,
}

/// Brute-force verification run: checks every sample against the
/// analytic sandwich, reports violations, and in lattice mode also emits
/// the empirical envelope. Exit is 1 when violations exist; the report is
/// emitted either way.
#[allow(clippy::too_many_arguments)]
pub fn cmd_verify(
    orders: &[Order],
    n: usize,
    mode: VerifyMode,
    count: u64,
    resolution: u64,
    seed: u64,
    tolerance: f64,
    bin_width: f64,
    format: Format,
    base: LogBase,
) -> Result<CommandOutput, CliError> {
    require_increasing(orders)?;
    if !(tolerance >= 0.0) {
        return Err(CliError::Input(format!(
            "tolerance must be non-negative, got {tolerance}"
        )));
    }
    let cfg = SampleConfig {
        n,
        count,
        seed,
        mode: match mode {
            VerifyMode::MonteCarlo => SampleMode::MonteCarlo,
            VerifyMode::Lattice => SampleMode::Lattice,
        },
        lattice_resolution: resolution,
    };
    // Sampling-configuration problems are input errors (exit 2), not
    // domain errors.
    cfg.validate()
        .map_err(|e| CliError::Input(e.to_string()))?;

    let report = match orders.len() {
        2 => check_bounds2(sample_simplex(&cfg)?, orders[0], orders[1], n, tolerance)?,
        3 => check_bounds3(
            sample_simplex(&cfg)?,
            orders[0],
            orders[1],
            orders[2],
            n,
            tolerance,
        )?,
        k => {
            return Err(CliError::Input(format!(
                "verification takes 2 or 3 orders, got {k}"
            )))
        }
    };

    // In lattice mode the empirical envelope of the first two orders is
    // part of the report.
    let conv = |h: f64| h / base.ln();
    let envelope = if mode == VerifyMode::Lattice {
        let env = empirical_envelope(sample_simplex(&cfg)?, orders[0], orders[1], bin_width)?;
        Some(EnvelopeOut {
            bin_width: conv(env.bin_width),
            bins: env
                .bins
                .iter()
                .map(|b| EnvelopeBinOut {
                    index: b.index,
                    h1_center: conv(b.h1_center),
                    min_h2: conv(b.min_h2),
                    max_h2: conv(b.max_h2),
                    count: b.count,
                })
                .collect(),
        })
    } else {
        None
    };

    let out = VerifyOut {
        base: base_name(base),
        orders: orders.iter().map(|o| o.to_string()).collect(),
        n,
        mode: match mode {
            VerifyMode::MonteCarlo => "mc".into(),
            VerifyMode::Lattice => "lattice".into(),
        },
        count: (mode == VerifyMode::MonteCarlo).then_some(count),
        resolution: (mode == VerifyMode::Lattice).then_some(resolution),
        seed,
        tolerance,
        total_checked: report.total_checked,
        violations: report
            .violations
            .iter()
            .map(|v| ViolationOut {
                sample_index: v.sample_index,
                kind: v.kind.to_string(),
                bound: conv(v.bound),
                observed: conv(v.observed),
                excess: conv(v.excess),
                dist: v.dist.probs().to_vec(),
            })
            .collect(),
        envelope,
    };

    let text = match format {
        Format::Json => to_json(&out)?,
        Format::Csv => match &out.envelope {
            // Lattice runs export the envelope; violations still decide
            // the exit code and are in the JSON form.
            Some(env) if out.violations.is_empty() => envelope_csv(env, base),
            _ => violations_csv(&out, base),
        },
        Format::Svg => {
            return Err(CliError::Range(
                "svg output is only available for the curve command".into(),
            ))
        }
    };
    Ok(CommandOutput {
        text,
        violations: !out.violations.is_empty(),
    })
}
