use std::path::{Path, PathBuf};

use wr_core::extremal::builtin_graph;
use wr_core::graphs::parse_edge_list;
use wr_core::occupancy::ActivityPair;
use wr_core::{Error, Graph, Rational, Result};

/// Graph plus the label used in reports.
pub fn load_graph(builtin: Option<&str>, file: Option<&Path>) -> Result<(String, Graph)> {
    match (builtin, file) {
        (Some(spec), None) => Ok((spec.to_string(), builtin_graph(spec)?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            let g = parse_edge_list(&text).map_err(|e| match e {
                Error::Parse { line, msg } => Error::Parse {
                    line,
                    msg: format!("{}: {msg}", path.display()),
                },
                other => other,
            })?;
            Ok((path.display().to_string(), g))
        }
        _ => Err(Error::Usage("give exactly one of --builtin or --file".into())),
    }
}

pub fn positive_rational(text: &str, what: &str) -> Result<Rational> {
    let x: Rational = text
        .parse()
        .map_err(|_| Error::Usage(format!("{what} must be an exact rational p/q, got {text:?}")))?;
    if !x.is_positive() {
        return Err(Error::Domain(format!("{what} must be positive, got {x}")));
    }
    Ok(x)
}

/// Decimal or `p/q`; only the sampler takes floating activities.
pub fn positive_float(text: &str, what: &str) -> Result<f64> {
    let x = match text.parse::<Rational>() {
        Ok(r) => r.to_f64(),
        Err(_) => text
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::Usage(format!("{what} must be a number, got {text:?}")))?,
    };
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain(format!("{what} must be positive, got {text}")));
    }
    Ok(x)
}

fn entries(grid: &str) -> impl Iterator<Item = &str> {
    grid.split(';').map(str::trim).filter(|s| !s.is_empty())
}

pub fn activity_grid(grid: &str) -> Result<Vec<Rational>> {
    let out = entries(grid)
        .map(|t| positive_rational(t, "grid activity"))
        .collect::<Result<Vec<_>>>()?;
    if out.is_empty() {
        return Err(Error::Usage("activity grid is empty".into()));
    }
    Ok(out)
}

/// `λ1,λ2;λ1,λ2;…`; a lone value means `λ1 = λ2`.
pub fn pair_grid(grid: &str) -> Result<Vec<ActivityPair>> {
    let out = entries(grid)
        .map(|t| match t.split_once(',') {
            Some((a, b)) => ActivityPair::new(positive_rational(a, "λ1")?, positive_rational(b, "λ2")?),
            None => ActivityPair::symmetric(positive_rational(t, "λ")?),
        })
        .collect::<Result<Vec<_>>>()?;
    if out.is_empty() {
        return Err(Error::Usage("activity grid is empty".into()));
    }
    Ok(out)
}

pub fn write_output(path: &PathBuf, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}
