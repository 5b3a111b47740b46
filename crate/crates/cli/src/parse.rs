//! Parsers for grid, list and data-preset arguments.

use std::path::Path;

use laplext::kernels::OscillatorParam;
use laplext::solvers::InitialData;

use crate::CliError;

/// `min:max:count` with inclusive endpoints; `count = 1` gives `[min]`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Invalid(format!("grid {spec:?}: {why} (expected min:max:count)"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("wrong number of fields"));
    }
    let min: f64 = parts[0].trim().parse().map_err(|_| bad("min is not a number"))?;
    let max: f64 = parts[1].trim().parse().map_err(|_| bad("max is not a number"))?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad("count is not a positive integer"))?;
    if !(min.is_finite() && max.is_finite()) {
        return Err(bad("bounds must be finite"));
    }
    if count == 0 {
        return Err(bad("count must be at least 1"));
    }
    if count == 1 {
        return Ok(vec![min]);
    }
    if min >= max {
        return Err(bad("min must be below max"));
    }
    let step = (max - min) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { max } else { min + step * i as f64 })
        .collect())
}

/// Comma-separated reals.
pub fn parse_list(spec: &str) -> Result<Vec<f64>, CliError> {
    let values = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Invalid(format!("{s:?} is not a finite number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(CliError::Invalid("empty list".into()));
    }
    Ok(values)
}

/// Either a single value or a grid, whichever was given.
pub fn points(single: Option<f64>, grid: Option<&str>, name: &str) -> Result<Vec<f64>, CliError> {
    match (single, grid) {
        (Some(v), None) => Ok(vec![v]),
        (None, Some(g)) => parse_grid(g),
        (Some(_), Some(_)) => Err(CliError::Invalid(format!("give --{name} or --{name}-grid, not both"))),
        (None, None) => Err(CliError::Invalid(format!("--{name} or --{name}-grid is required"))),
    }
}

/// Data presets:
///
/// * `gaussian:CENTER,WIDTH`
/// * `bump:CENTER,RADIUS`
/// * `exponential:RATE`
/// * `power:EXPONENT`
/// * `eigenfunction:N` (uses the problem's `a`)
/// * `sampled:PATH`, a CSV file with header and columns `x,value`
pub fn parse_data(spec: &str, a: Option<OscillatorParam>) -> Result<InitialData, CliError> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let nums = |n: usize| -> Result<Vec<f64>, CliError> {
        let v = parse_list(rest).map_err(|_| CliError::Invalid(format!("data {spec:?}: bad parameters")))?;
        if v.len() != n {
            return Err(CliError::Invalid(format!("data {spec:?}: expected {n} parameter(s)")));
        }
        Ok(v)
    };
    let data = match kind {
        "gaussian" => {
            let v = nums(2)?;
            InitialData::Gaussian { center: v[0], width: v[1] }
        }
        "bump" => {
            let v = nums(2)?;
            InitialData::Bump { center: v[0], radius: v[1] }
        }
        "exponential" => InitialData::Exponential { rate: nums(1)?[0] },
        "power" => InitialData::Power { exponent: nums(1)?[0] },
        "eigenfunction" => {
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| CliError::Invalid(format!("data {spec:?}: index must be a non-negative integer")))?;
            let a = a.ok_or_else(|| CliError::Invalid("eigenfunction data needs --a".into()))?;
            InitialData::Eigenfunction { n, a }
        }
        "sampled" => read_samples(Path::new(rest))?,
        _ => {
            return Err(CliError::Invalid(format!(
                "unknown data preset {kind:?}; expected gaussian, bump, exponential, power, eigenfunction or sampled"
            )))
        }
    };
    data.validate()?;
    Ok(data)
}

fn read_samples(path: &Path) -> Result<InitialData, CliError> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::Invalid(format!("cannot read samples from {}: {e}", path.display())))?;
    let (mut xs, mut vs) = (Vec::new(), Vec::new());
    for row in reader.deserialize::<(f64, f64)>() {
        let (x, v) = row.map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        xs.push(x);
        vs.push(v);
    }
    Ok(InitialData::sampled(xs, vs)?)
}
