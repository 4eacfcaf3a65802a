//! Flag-value parsing: orders, bases, inline and file-borne
//! distributions. Errors name the offending field.

use renyi::{LogBase, Order, ProbVector};

use crate::CliError;

/// Parse one order token: `0`, `1`, `inf`, or a decimal literal.
pub fn parse_order(token: &str) -> Result<Order, String> {
    let t = token.trim();
    let value = match t {
        "inf" | "infinity" | "oo" => f64::INFINITY,
        _ => t
            .parse::<f64>()
            .map_err(|_| format!("order '{t}' is not a number or 'inf'"))?,
    };
    Order::new(value).map_err(|e| e.to_string())
}

/// Parse an output base token: `e`, `2` or `10`.
pub fn parse_base(token: &str) -> Result<LogBase, String> {
    match token.trim() {
        "e" => Ok(LogBase::E),
        "2" => Ok(LogBase::Two),
        "10" => Ok(LogBase::Ten),
        other => Err(format!("base must be e, 2 or 10, got '{other}'")),
    }
}

/// Parse an inline comma-separated distribution.
pub fn parse_dist(text: &str) -> Result<ProbVector, CliError> {
    let mut probs = Vec::new();
    for (i, field) in text.split(',').enumerate() {
        let f = field.trim();
        let value = f.parse::<f64>().map_err(|_| {
            CliError::Input(format!(
                "entry {} of the distribution ('{f}') is not a number",
                i + 1
            ))
        })?;
        probs.push(value);
    }
    ProbVector::new(probs).map_err(CliError::from)
}

/// Read a distribution from a CSV file: one value per row (or
/// comma-separated values); a non-numeric first row is treated as the
/// header.
pub fn parse_dist_file(content: &str) -> Result<ProbVector, CliError> {
    let mut probs = Vec::new();
    let mut field_no = 0usize;
    for (row, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        for field in line.split(',') {
            let f = field.trim();
            if f.is_empty() {
                continue;
            }
            field_no += 1;
            match f.parse::<f64>() {
                Ok(v) => probs.push(v),
                Err(_) if row == 0 => {
                    // Header row.
                    field_no = 0;
                    probs.clear();
                    break;
                }
                Err(_) => {
                    return Err(CliError::Input(format!(
                        "field {field_no} of the distribution file ('{f}') is not a number"
                    )));
                }
            }
        }
    }
    if probs.is_empty() {
        return Err(CliError::Input(
            "distribution file contains no values".into(),
        ));
    }
    ProbVector::new(probs).map_err(CliError::from)
}

/// Check an orders list is strictly increasing.
pub fn require_increasing(orders: &[Order]) -> Result<(), CliError> {
    for pair in orders.windows(2) {
        if pair[0].value() >= pair[1].value() {
            return Err(CliError::Range(format!(
                "orders must be strictly increasing, got {} before {}",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_tokens() {
        assert!(parse_order("inf").unwrap().is_infinite());
        assert!(parse_order("0").unwrap().is_zero());
        assert!(parse_order("1").unwrap().is_one());
        assert_eq!(parse_order("2.5").unwrap().value(), 2.5);
        assert!(parse_order("-1").is_err());
        assert!(parse_order("two").is_err());
    }

    #[test]
    fn dist_error_names_the_field() {
        let err = parse_dist("0.5,0.x5,0.25").unwrap_err();
        assert!(matches!(err, CliError::Input(ref m) if m.contains("entry 2")));
    }

    #[test]
    fn dist_file_with_header() {
        let p = parse_dist_file("p\n0.5\n0.25\n0.25\n").unwrap();
        assert_eq!(p.len(), 3);
        let p = parse_dist_file("0.5,0.5\n").unwrap();
        assert_eq!(p.len(), 2);
        let err = parse_dist_file("p\n0.5\nbad\n").unwrap_err();
        assert!(matches!(err, CliError::Input(ref m) if m.contains("'bad'")));
    }
}
