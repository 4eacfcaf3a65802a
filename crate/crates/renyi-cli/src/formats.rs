//! CSV schemas. Header row mandatory, floats printed with 17 significant
//! digits so every emitted value parses back bit-identically, UTF-8, LF.
//! The entropy unit is carried in the column names (`h1_bits`, …), which
//! is how the parsers recover the base without side channels.

use renyi::LogBase;

use crate::dto::*;
use crate::CliError;

/// 17 significant digits: lossless f64 round trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Column suffix for a base.
pub fn base_suffix(base: LogBase) -> &'static str {
    match base {
        LogBase::E => "nats",
        LogBase::Two => "bits",
        LogBase::Ten => "dits",
    }
}

/// Recover the base from a column suffix.
pub fn suffix_base(suffix: &str) -> Result<LogBase, CliError> {
    match suffix {
        "nats" => Ok(LogBase::E),
        "bits" => Ok(LogBase::Two),
        "dits" => Ok(LogBase::Ten),
        other => Err(CliError::Input(format!("unknown entropy unit '{other}'"))),
    }
}

pub fn base_name(base: LogBase) -> String {
    base.to_string()
}

fn parse_field_f64(field: &str, what: &str) -> Result<f64, CliError> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| CliError::Input(format!("{what}: '{field}' is not a number")))
}

fn parse_field_u64(field: &str, what: &str) -> Result<u64, CliError> {
    field
        .trim()
        .parse::<u64>()
        .map_err(|_| CliError::Input(format!("{what}: '{field}' is not an integer")))
}

// --- entropy ---

pub fn entropy_csv(out: &EntropyOut, base: LogBase) -> String {
    let mut s = format!("order,entropy_{}\n", base_suffix(base));
    for row in &out.entropies {
        s.push_str(&format!("{},{}\n", row.order, fmt_f64(row.entropy)));
    }
    s
}

pub fn parse_entropy_csv(text: &str) -> Result<(LogBase, Vec<EntropyRow>), CliError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Input("empty entropy CSV".into()))?;
    let suffix = header
        .trim()
        .strip_prefix("order,entropy_")
        .ok_or_else(|| CliError::Input(format!("unexpected entropy header '{header}'")))?;
    let base = suffix_base(suffix)?;
    let mut rows = Vec::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let (order, value) = line
            .split_once(',')
            .ok_or_else(|| CliError::Input(format!("malformed entropy row '{line}'")))?;
        rows.push(EntropyRow {
            order: order.trim().to_string(),
            entropy: parse_field_f64(value, "entropy value")?,
        });
    }
    Ok((base, rows))
}

// --- witness ---

pub fn witness_field(witness: &Option<Vec<WitnessComponent>>) -> String {
    match witness {
        None => String::new(),
        Some(parts) => parts
            .iter()
            .map(|c| format!("{}:{}", c.support, fmt_f64(c.weight)))
            .collect::<Vec<_>>()
            .join(";"),
    }
}

pub fn parse_witness_field(field: &str) -> Result<Option<Vec<WitnessComponent>>, CliError> {
    let field = field.trim();
    if field.is_empty() {
        return Ok(None);
    }
    let mut parts = Vec::new();
    for item in field.split(';') {
        let (support, weight) = item
            .split_once(':')
            .ok_or_else(|| CliError::Input(format!("malformed witness component '{item}'")))?;
        parts.push(WitnessComponent {
            support: parse_field_u64(support, "witness support")? as usize,
            weight: parse_field_f64(weight, "witness weight")?,
        });
    }
    Ok(Some(parts))
}

// --- bound ---

pub fn bound_csv(out: &BoundOut, base: LogBase) -> String {
    let u = base_suffix(base);
    let mut header = Vec::new();
    for i in 1..=out.orders.len() {
        header.push(format!("alpha{i}"));
    }
    for i in 1..out.orders.len() {
        header.push(format!("h{i}_{u}"));
    }
    header.extend(["n".into(), "side".into(), format!("bound_{u}"), "attained".into(), "witness".into()]);
    let mut row = out.orders.clone();
    row.extend(out.h.iter().map(|h| fmt_f64(*h)));
    row.push(out.n.map(|n| n.to_string()).unwrap_or_default());
    row.push(out.side.clone());
    row.push(fmt_f64(out.bound));
    row.push(out.attained.to_string());
    row.push(witness_field(&out.witness));
    format!("{}\n{}\n", header.join(","), row.join(","))
}

pub fn parse_bound_csv(text: &str) -> Result<(LogBase, BoundOut), CliError> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| CliError::Input("empty bound CSV".into()))?
        .split(',')
        .collect();
    let row: Vec<&str> = lines
        .next()
        .ok_or_else(|| CliError::Input("bound CSV has no data row".into()))?
        .split(',')
        .collect();
    if header.len() != row.len() {
        return Err(CliError::Input("bound CSV header/row mismatch".into()));
    }
    let m = header.iter().filter(|h| h.starts_with("alpha")).count();
    let bound_col = header
        .iter()
        .position(|h| h.starts_with("bound_"))
        .ok_or_else(|| CliError::Input("bound CSV lacks a bound column".into()))?;
    let base = suffix_base(header[bound_col].trim_start_matches("bound_"))?;
    let orders: Vec<String> = row[..m].iter().map(|s| s.trim().to_string()).collect();
    let mut h = Vec::new();
    for i in 0..m - 1 {
        h.push(parse_field_f64(row[m + i], "conditioning value")?);
    }
    let n_field = row[2 * m - 1].trim();
    let n = if n_field.is_empty() {
        None
    } else {
        Some(parse_field_u64(n_field, "alphabet size")? as usize)
    };
    Ok((
        base,
        BoundOut {
            base: base_name(base),
            orders,
            h,
            n,
            side: row[2 * m].trim().to_string(),
            bound: parse_field_f64(row[bound_col], "bound value")?,
            attained: row[bound_col + 1].trim() == "true",
            witness: parse_witness_field(row[bound_col + 2])?,
        },
    ))
}

// --- curve ---

pub fn curve_csv(out: &CurveOut, base: LogBase) -> String {
    let u = base_suffix(base);
    let mut s = format!("h1_{u},h2_{u},segment\n");
    for seg in &out.segments {
        let label = format!("{}-{}", seg.from_support, seg.to_support);
        for p in &seg.points {
            s.push_str(&format!("{},{},{label}\n", fmt_f64(p[0]), fmt_f64(p[1])));
        }
    }
    s
}

pub fn parse_curve_csv(text: &str) -> Result<(LogBase, Vec<CurveSegmentOut>), CliError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Input("empty curve CSV".into()))?;
    let suffix = header
        .split(',')
        .next()
        .and_then(|c| c.strip_prefix("h1_"))
        .ok_or_else(|| CliError::Input(format!("unexpected curve header '{header}'")))?;
    let base = suffix_base(suffix)?;
    let mut segments: Vec<CurveSegmentOut> = Vec::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(CliError::Input(format!("malformed curve row '{line}'")));
        }
        let h1 = parse_field_f64(fields[0], "h1")?;
        let h2 = parse_field_f64(fields[1], "h2")?;
        let (from, to) = fields[2]
            .trim()
            .split_once('-')
            .ok_or_else(|| CliError::Input(format!("malformed segment label '{}'", fields[2])))?;
        let from = parse_field_u64(from, "segment start")? as usize;
        let to = parse_field_u64(to, "segment end")? as usize;
        match segments.last_mut() {
            Some(seg) if seg.from_support == from && seg.to_support == to => {
                seg.points.push([h1, h2]);
            }
            _ => segments.push(CurveSegmentOut {
                from_support: from,
                to_support: to,
                points: vec![[h1, h2]],
            }),
        }
    }
    Ok((base, segments))
}

// --- surface ---

pub fn surface_csv(out: &SurfaceOut, base: LogBase) -> String {
    let u = base_suffix(base);
    let mut s = format!("h1_{u},h2_{u},h3_{u},sheet,segment\n");
    for sheet in &out.sheets {
        for (v, label) in sheet.vertices.iter().zip(&sheet.vertex_labels) {
            s.push_str(&format!(
                "{},{},{},{},{}-{}-{}\n",
                fmt_f64(v[0]),
                fmt_f64(v[1]),
                fmt_f64(v[2]),
                sheet.sheet,
                label[0],
                label[1],
                label[2]
            ));
        }
    }
    s
}

/// Parses back what [`surface_csv`] wrote: per-sheet vertex lists with
/// their simplex labels (triangles live only in the JSON form).
pub fn parse_surface_csv(
    text: &str,
) -> Result<(LogBase, Vec<(String, Vec<[f64; 3]>, Vec<[usize; 3]>)>), CliError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Input("empty surface CSV".into()))?;
    let suffix = header
        .split(',')
        .next()
        .and_then(|c| c.strip_prefix("h1_"))
        .ok_or_else(|| CliError::Input(format!("unexpected surface header '{header}'")))?;
    let base = suffix_base(suffix)?;
    let mut sheets: Vec<(String, Vec<[f64; 3]>, Vec<[usize; 3]>)> = Vec::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(CliError::Input(format!("malformed surface row '{line}'")));
        }
        let v = [
            parse_field_f64(fields[0], "h1")?,
            parse_field_f64(fields[1], "h2")?,
            parse_field_f64(fields[2], "h3")?,
        ];
        let sheet = fields[3].trim().to_string();
        let label_parts: Vec<&str> = fields[4].trim().split('-').collect();
        if label_parts.len() != 3 {
            return Err(CliError::Input(format!(
                "malformed simplex label '{}'",
                fields[4]
            )));
        }
        let label = [
            parse_field_u64(label_parts[0], "simplex support")? as usize,
            parse_field_u64(label_parts[1], "simplex support")? as usize,
            parse_field_u64(label_parts[2], "simplex support")? as usize,
        ];
        match sheets.last_mut() {
            Some((name, vs, ls)) if *name == sheet => {
                vs.push(v);
                ls.push(label);
            }
            _ => sheets.push((sheet, vec![v], vec![label])),
        }
    }
    Ok((base, sheets))
}

// --- verify ---

pub fn violations_csv(out: &VerifyOut, base: LogBase) -> String {
    let u = base_suffix(base);
    let mut s = format!("sample_index,kind,bound_{u},observed_{u},excess_{u},dist\n");
    for v in &out.violations {
        let dist = v
            .dist
            .iter()
            .map(|p| fmt_f64(*p))
            .collect::<Vec<_>>()
            .join(";");
        s.push_str(&format!(
            "{},{},{},{},{},{dist}\n",
            v.sample_index,
            v.kind,
            fmt_f64(v.bound),
            fmt_f64(v.observed),
            fmt_f64(v.excess)
        ));
    }
    s
}

pub fn parse_violations_csv(text: &str) -> Result<(LogBase, Vec<ViolationOut>), CliError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Input("empty violations CSV".into()))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() != 6 {
        return Err(CliError::Input(format!(
            "unexpected violations header '{header}'"
        )));
    }
    let base = suffix_base(cols[2].trim_start_matches("bound_"))?;
    let mut rows = Vec::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(CliError::Input(format!("malformed violation row '{line}'")));
        }
        let mut dist = Vec::new();
        for p in fields[5].split(';').filter(|p| !p.trim().is_empty()) {
            dist.push(parse_field_f64(p, "violation dist entry")?);
        }
        rows.push(ViolationOut {
            sample_index: parse_field_u64(fields[0], "sample index")?,
            kind: fields[1].trim().to_string(),
            bound: parse_field_f64(fields[2], "bound")?,
            observed: parse_field_f64(fields[3], "observed")?,
            excess: parse_field_f64(fields[4], "excess")?,
            dist,
        });
    }
    Ok((base, rows))
}

pub fn envelope_csv(env: &EnvelopeOut, base: LogBase) -> String {
    let u = base_suffix(base);
    let mut s = format!("bin_index,h1_center_{u},min_h2_{u},max_h2_{u},count\n");
    for b in &env.bins {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            b.index,
            fmt_f64(b.h1_center),
            fmt_f64(b.min_h2),
            fmt_f64(b.max_h2),
            b.count
        ));
    }
    s
}

pub fn parse_envelope_csv(text: &str) -> Result<(LogBase, Vec<EnvelopeBinOut>), CliError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Input("empty envelope CSV".into()))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() != 5 {
        return Err(CliError::Input(format!(
            "unexpected envelope header '{header}'"
        )));
    }
    let base = suffix_base(cols[1].trim_start_matches("h1_center_"))?;
    let mut bins = Vec::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(CliError::Input(format!("malformed envelope row '{line}'")));
        }
        bins.push(EnvelopeBinOut {
            index: fields[0]
                .trim()
                .parse::<i64>()
                .map_err(|_| CliError::Input(format!("bad bin index '{}'", fields[0])))?,
            h1_center: parse_field_f64(fields[1], "bin center")?,
            min_h2: parse_field_f64(fields[2], "bin min")?,
            max_h2: parse_field_f64(fields[3], "bin max")?,
            count: parse_field_u64(fields[4], "bin count")?,
        });
    }
    Ok((base, bins))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_formatting_round_trips_exactly() {
        for x in [
            0.1,
            1.0 / 3.0,
            std::f64::consts::LN_2,
            1.0986122886681098,
            1e-300,
            0.0,
        ] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn witness_field_round_trips() {
        let w = Some(vec![
            WitnessComponent {
                support: 4,
                weight: 1.0 / 3.0,
            },
            WitnessComponent {
                support: 1,
                weight: 2.0 / 3.0,
            },
        ]);
        assert_eq!(parse_witness_field(&witness_field(&w)).unwrap(), w);
        assert_eq!(parse_witness_field("").unwrap(), None);
    }
}
