use std::path::Path;

use lie_maxclass::{Family, GradedLieAlgebra};
use serde::Serialize;

use crate::CliError;

/// A resolved `--algebra` argument.
pub enum Target {
    Finite {
        algebra: GradedLieAlgebra,
        family: Option<Family>,
    },
    Infinite(Family),
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraInfo {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<u32>,
    pub graded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
}

/// Resolves `m0`, `m2` (with `n`), `m0-infinite`, `m2-infinite`, or a path
/// to an algebra file. Validation problems in files are printed as warnings.
pub fn resolve(spec: &str, n: Option<u32>) -> Result<(Target, AlgebraInfo), CliError> {
    if let Some(fam) = spec.strip_suffix("-infinite") {
        let family: Family = fam
            .parse()
            .map_err(|e: lie_maxclass::Error| CliError::Usage(e.to_string()))?;
        if n.is_some() {
            return Err(CliError::Usage(
                "--n does not apply to an infinite algebra".into(),
            ));
        }
        let info = AlgebraInfo {
            name: spec.to_string(),
            dim: None,
            graded: true,
            max_degree: None,
        };
        return Ok((Target::Infinite(family), info));
    }
    if let Ok(family) = spec.parse::<Family>() {
        let n = n.ok_or_else(|| CliError::Usage(format!("--n is required for `{spec}`")))?;
        let algebra = family
            .truncation(n)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let info = AlgebraInfo {
            name: format!("{family}({n})"),
            dim: Some(n),
            graded: true,
            max_degree: None,
        };
        return Ok((
            Target::Finite {
                algebra,
                family: Some(family),
            },
            info,
        ));
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(CliError::Usage(format!(
            "`{spec}` is neither m0, m2, m0-infinite, m2-infinite nor a readable file"
        )));
    }
    if n.is_some() {
        return Err(CliError::Usage(
            "--n does not apply to an algebra file".into(),
        ));
    }
    let algebra = load_file(path)?;
    let info = AlgebraInfo {
        name: spec.to_string(),
        dim: Some(algebra.dim()),
        graded: algebra.is_graded(),
        max_degree: None,
    };
    Ok((
        Target::Finite {
            algebra,
            family: None,
        },
        info,
    ))
}

pub fn load_file(path: &Path) -> Result<GradedLieAlgebra, CliError> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let loaded = GradedLieAlgebra::load(&src, false)?;
    if !loaded.warnings.is_valid() {
        eprintln!("warning: {}: {}", path.display(), loaded.warnings);
    }
    Ok(loaded.algebra)
}
