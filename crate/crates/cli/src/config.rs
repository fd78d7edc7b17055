use std::path::Path;

use fht_core::fht::{QuadratureConfig, QuadratureMode};
use serde::Deserialize;

use crate::args::{Mode, QuadArgs};
use crate::failure::Failure;

pub const TOL_ENV: &str = "FHT_DEFAULT_TOL";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    tol: Option<f64>,
    max_depth: Option<usize>,
    endpoint_margin: Option<f64>,
    mode: Option<String>,
}

fn parse_mode(text: &str) -> Result<QuadratureMode, Failure> {
    match text {
        "smooth" => Ok(QuadratureMode::SmoothSubtraction),
        "chebyshev" => Ok(QuadratureMode::ChebyshevSubstitution),
        other => Err(Failure::usage(format!("unknown quadrature mode {other:?}"))),
    }
}

/// Quoted and bare string values are both accepted.
fn read_file(path: &Path) -> Result<FileConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
    let quoted: String = text
        .lines()
        .map(|line| match line.split_once('=') {
            Some((key, value)) if key.trim() == "mode" && !value.trim().starts_with('"') => {
                format!("mode = \"{}\"", value.trim())
            }
            _ => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n");
    toml::from_str(&quoted)
        .map_err(|e| Failure::usage(format!("config {}: {}", path.display(), e.message())))
}

/// Layers, lowest priority first: `base`, config file, environment, flags.
pub fn resolve(
    base: QuadratureConfig,
    file: Option<&Path>,
    env_tol: Option<String>,
    flags: &QuadArgs,
) -> Result<QuadratureConfig, Failure> {
    let mut cfg = base;
    if let Some(path) = file {
        let fc = read_file(path)?;
        cfg.tol = fc.tol.unwrap_or(cfg.tol);
        cfg.max_depth = fc.max_depth.unwrap_or(cfg.max_depth);
        cfg.endpoint_margin = fc.endpoint_margin.unwrap_or(cfg.endpoint_margin);
        if let Some(mode) = fc.mode {
            cfg.mode = parse_mode(&mode)?;
        }
    }
    if let Some(text) = env_tol {
        cfg.tol = text
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{TOL_ENV}: not a number: {text:?}")))?;
    }
    cfg.tol = flags.tol.unwrap_or(cfg.tol);
    cfg.max_depth = flags.max_depth.unwrap_or(cfg.max_depth);
    cfg.endpoint_margin = flags.endpoint_margin.unwrap_or(cfg.endpoint_margin);
    if let Some(mode) = flags.mode {
        cfg.mode = match mode {
            Mode::Smooth => QuadratureMode::SmoothSubtraction,
            Mode::Chebyshev => QuadratureMode::ChebyshevSubstitution,
        };
    }
    cfg.validate()?;
    Ok(cfg)
}
