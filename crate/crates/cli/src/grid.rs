//! Scalar and grid parsing for CLI flags. Grids use the inclusive
//! `start:stop:count` form; scalars accept plain floats and `pi` fractions
//! such as `pi/2` or `3pi/4`.

use std::f64::consts::PI;

pub fn parse_scalar(token: &str) -> Result<f64, String> {
    let s = token.trim();
    let (sign, s) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s),
    };
    if let Some(idx) = s.find("pi") {
        let (coef_str, rest) = s.split_at(idx);
        let coef_str = coef_str.strip_suffix('*').unwrap_or(coef_str);
        let coef = if coef_str.is_empty() {
            1.0
        } else {
            coef_str
                .parse::<f64>()
                .map_err(|_| format!("bad coefficient in '{token}'"))?
        };
        let rest = &rest[2..];
        let denom = if rest.is_empty() {
            1.0
        } else if let Some(d) = rest.strip_prefix('/') {
            d.parse::<f64>()
                .map_err(|_| format!("bad denominator in '{token}'"))?
        } else {
            return Err(format!("cannot parse '{token}'"));
        };
        Ok(sign * coef * PI / denom)
    } else {
        s.parse::<f64>()
            .map(|v| sign * v)
            .map_err(|_| format!("cannot parse '{token}' as a number"))
    }
}

/// `start:stop:count`, inclusive at both ends; `count = 1` requires
/// `start == stop`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid '{spec}' must have the form start:stop:count"));
    }
    let start = parse_scalar(parts[0])?;
    let stop = parse_scalar(parts[1])?;
    let count: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| format!("bad count in grid '{spec}'"))?;
    match count {
        0 => Err(format!("grid '{spec}' must have at least one point")),
        1 if start != stop => Err(format!(
            "grid '{spec}' with a single point needs start == stop"
        )),
        1 => Ok(vec![start]),
        _ => Ok((0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect()),
    }
}
