//! Flag-value parsing and construction of library inputs.

use osbound::{Distribution, WeightVector};

use crate::{CliError, DistArgs, DistKind, WeightArgs};

pub fn usage(err: impl std::fmt::Display) -> CliError {
    CliError::Usage(err.to_string())
}

pub fn fault(err: impl std::fmt::Display) -> CliError {
    CliError::Fault(err.to_string())
}

/// Maps a library error escaping a computation: non-convergence is a
/// runtime fault, everything else is a configuration problem.
pub fn computation(err: osbound::Error) -> CliError {
    match err {
        osbound::Error::QuadratureNonConvergence { .. } => fault(err),
        other => usage(other),
    }
}

/// One numeric token, either a decimal ("0.5") or a fraction ("5/9").
pub fn parse_ratio(token: &str) -> Result<f64, CliError> {
    let t = token.trim();
    let bad = || usage(format!("cannot parse {t:?} as a decimal or fraction"));
    if let Some((num, den)) = t.split_once('/') {
        let n: f64 = num.trim().parse().map_err(|_| bad())?;
        let d: f64 = den.trim().parse().map_err(|_| bad())?;
        if !n.is_finite() || !d.is_finite() || d == 0.0 {
            return Err(bad());
        }
        Ok(n / d)
    } else {
        let v: f64 = t.parse().map_err(|_| bad())?;
        if !v.is_finite() {
            return Err(bad());
        }
        Ok(v)
    }
}

/// Comma-separated numeric tokens, fractions allowed.
pub fn parse_ratio_list(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',').map(parse_ratio).collect()
}

/// `parse_ratio` adapted to clap's value-parser signature.
pub fn ratio_value(token: &str) -> Result<f64, String> {
    parse_ratio(token).map_err(|e| e.message().to_string())
}

/// Comma-separated sequence indices.
pub fn parse_m_list(list: &str) -> Result<Vec<u64>, CliError> {
    list.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>()
                .map_err(|_| usage(format!("cannot parse {t:?} as a sequence index")))
        })
        .collect()
}

pub fn build_dist(args: &DistArgs) -> Result<Distribution, CliError> {
    if args.kind != DistKind::Empirical && args.data.is_some() {
        return Err(usage("--data applies only to --dist empirical"));
    }
    match args.kind {
        DistKind::Uniform => {
            let vals = parse_ratio_list(args.params.as_deref().unwrap_or("0,1"))?;
            if vals.len() != 2 {
                return Err(usage(format!(
                    "uniform takes two parameters \"a,b\", got {}",
                    vals.len()
                )));
            }
            Distribution::uniform(vals[0], vals[1]).map_err(usage)
        }
        DistKind::Normal => {
            if args.params.is_some() {
                return Err(usage("normal is standard N(0,1) and takes no --params"));
            }
            Ok(Distribution::std_normal())
        }
        DistKind::Exp => {
            let vals = parse_ratio_list(args.params.as_deref().unwrap_or("1"))?;
            if vals.len() != 1 {
                return Err(usage(format!(
                    "exp takes one rate parameter, got {}",
                    vals.len()
                )));
            }
            Distribution::exponential(vals[0]).map_err(usage)
        }
        DistKind::Empirical => {
            if args.params.is_some() {
                return Err(usage("empirical takes no --params; supply --data"));
            }
            let path = args
                .data
                .as_ref()
                .ok_or_else(|| usage("--dist empirical requires --data FILE"))?;
            Distribution::empirical_from_file(path).map_err(usage)
        }
    }
}

/// Resolves the selected weight source. An explicit --weights list
/// defines its own length; --m and --uniform build vectors of length
/// `n`.
pub fn resolve_weights(args: &WeightArgs, n: usize) -> Result<WeightVector, CliError> {
    if let Some(list) = &args.weights {
        let vals = parse_ratio_list(list)?;
        WeightVector::new(&vals).map_err(usage)
    } else if let Some(m) = args.m {
        Ok(WeightVector::sequence(n, m))
    } else {
        Ok(WeightVector::uniform(n))
    }
}
