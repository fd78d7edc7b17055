use std::fmt::Write as _;
use std::path::Path;

use fht_core::classifier::{classify_space, ClassificationReport, Location};
use fht_core::eigen::{g_lambda, EigenFunction, WeightW};
use fht_core::fht::{
    eigen_residual, fht_grid, identity_suite, interior_grid, KnownFunction, QuadratureConfig,
};
use fht_core::region::{boundary_csv, boundary_svg, region_boundary_sample, region_membership};
use fht_core::spaces::{profile_of, SpaceSpec};
use fht_core::Complex64;
use serde_json::json;

use crate::args::Format;
use crate::failure::{Failure, EXIT_BOUNDS, EXIT_CHECK_FAILED};

/// Text for stdout plus the exit code.
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

fn require_format(format: Format, allowed: &[Format], verb: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::usage(format!("{verb} does not support {format:?} output")))
    }
}

/// Parses `a+bi`, `a-bi`, `bi` and `a`, with `.` as decimal point.
pub fn parse_complex(text: &str) -> Result<Complex64, Failure> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let value: Complex64 = compact
        .parse()
        .map_err(|_| Failure::usage(format!("not a complex number: {text:?}")))?;
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Failure::usage(format!("non-finite complex number: {text:?}")))
    }
}

fn parse_space(text: &str) -> Result<SpaceSpec, Failure> {
    Ok(text.parse::<SpaceSpec>()?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).unwrap_or_default()
}

pub fn classify(space: &str, format: Format) -> Result<Output, Failure> {
    require_format(format, &[Format::Json, Format::Text], "classify")?;
    let spec = parse_space(space)?;
    let profile = profile_of(&spec)?;
    let spectra = classify_space(&spec)?;
    let report = ClassificationReport::new(Some(spec.to_string()), profile, spectra);
    let stdout = match format {
        Format::Text => report.render_text(),
        _ => report.to_json() + "\n",
    };
    Ok(Output {
        stdout,
        code: report.exit_code(),
    })
}

pub fn member(lambda: &str, p: Option<f64>, space: Option<&str>, format: Format) -> Result<Output, Failure> {
    require_format(format, &[Format::Json, Format::Text], "member")?;
    let lambda = parse_complex(lambda)?;
    let (verdict, code, extra) = match (p, space) {
        (Some(p), _) => {
            let class = region_membership(lambda, p)?;
            (format!("{class:?}"), 0, json!({ "p": p }))
        }
        (None, Some(space)) => {
            let spec = parse_space(space)?;
            let location = classify_space(&spec)?.locate(lambda)?;
            let code = if location == Location::Undetermined {
                EXIT_BOUNDS
            } else {
                0
            };
            let name = serde_json::to_value(location)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default();
            (name, code, json!({ "space": spec.to_string() }))
        }
        (None, None) => return Err(Failure::usage("member needs --p or --space")),
    };
    let stdout = match format {
        Format::Text => format!("{verdict}\n"),
        _ => {
            let mut body = json!({ "lambda": [lambda.re, lambda.im], "verdict": verdict });
            if let (Some(obj), Some(more)) = (body.as_object_mut(), extra.as_object()) {
                obj.extend(more.clone());
            }
            to_json(&body) + "\n"
        }
    };
    Ok(Output { stdout, code })
}

pub fn eigencheck(lambda: &str, n: usize, cfg: QuadratureConfig, format: Format) -> Result<Output, Failure> {
    require_format(format, &[Format::Json, Format::Csv, Format::Text], "eigencheck")?;
    let lambda = parse_complex(lambda)?;
    if n == 0 {
        return Err(Failure::usage("--n must be positive"));
    }
    let grid = interior_grid(n, cfg.endpoint_margin);
    let report = eigen_residual(lambda, &grid, &cfg)?;
    let threshold = 100.0 * report.config.tol;
    let code = if report.max_residual <= threshold {
        0
    } else {
        EXIT_CHECK_FAILED
    };
    let stdout = match format {
        Format::Csv => {
            let mut out = String::from("t,residual\n");
            for (t, r) in report.grid.iter().zip(&report.residuals) {
                let _ = writeln!(out, "{t},{r:e}");
            }
            out
        }
        Format::Text => format!(
            "λ = {lambda}: max residual {:.3e} over {} points (threshold {threshold:.1e})\n",
            report.max_residual,
            report.grid.len()
        ),
        _ => to_json(&report) + "\n",
    };
    Ok(Output { stdout, code })
}

fn parse_real_list(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Failure::usage(format!("not a number: {c:?}")))
        })
        .collect()
}

fn transform_values(function: &str, grid: &[f64], cfg: &QuadratureConfig) -> Result<Vec<Complex64>, Failure> {
    let (kind, arg) = function.split_once(':').unwrap_or((function, ""));
    let values = match kind {
        "inv-w" => fht_grid(&KnownFunction::InverseWeight, grid, cfg)?,
        "w" => fht_grid(&WeightW, grid, cfg)?,
        "ix-w" => fht_grid(&KnownFunction::IxOverWeight, grid, cfg)?,
        "xi" => fht_grid(&EigenFunction::new(parse_complex(arg)?)?, grid, cfg)?,
        "g" => {
            let lambda: f64 = arg
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("g: not a real number: {arg:?}")))?;
            g_lambda(lambda, 0.0)?;
            let g = move |x: f64| g_lambda(lambda, x).unwrap_or_default();
            fht_grid(&g, grid, cfg)?
        }
        "poly" => {
            let coeffs = parse_real_list(arg)?;
            let poly = move |x: f64| Complex64::new(coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c), 0.0);
            fht_grid(&poly, grid, cfg)?
        }
        other => return Err(Failure::usage(format!("unknown function {other:?}"))),
    };
    Ok(values)
}

pub fn transform(function: &str, points: &[f64], n: usize, cfg: QuadratureConfig, format: Format) -> Result<Output, Failure> {
    require_format(format, &[Format::Json, Format::Csv, Format::Text], "transform")?;
    let grid = if points.is_empty() {
        if n == 0 {
            return Err(Failure::usage("--n must be positive"));
        }
        interior_grid(n, cfg.endpoint_margin)
    } else {
        points.to_vec()
    };
    let values = transform_values(function, &grid, &cfg)?;
    let stdout = match format {
        Format::Csv => {
            let mut out = String::from("t,re,im\n");
            for (t, v) in grid.iter().zip(&values) {
                let _ = writeln!(out, "{t},{:e},{:e}", v.re, v.im);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (t, v) in grid.iter().zip(&values) {
                let _ = writeln!(out, "T f({t}) = {v}");
            }
            out
        }
        _ => {
            let rows: Vec<_> = grid
                .iter()
                .zip(&values)
                .map(|(t, v)| json!({ "t": t, "re": v.re, "im": v.im }))
                .collect();
            to_json(&json!({ "function": function, "config": cfg, "values": rows })) + "\n"
        }
    };
    Ok(Output::ok(stdout))
}

pub fn region(p: f64, n: usize, svg: Option<&Path>, csv: Option<&Path>) -> Result<Output, Failure> {
    let arcs = region_boundary_sample(p, n)?;
    if let Some(path) = svg {
        std::fs::write(path, boundary_svg(p, &arcs))?;
        return Ok(Output::ok(format!("wrote {}\n", path.display())));
    }
    let body = boundary_csv(&arcs);
    match csv {
        Some(path) if path != Path::new("-") => {
            std::fs::write(path, body)?;
            Ok(Output::ok(format!("wrote {}\n", path.display())))
        }
        Some(_) => Ok(Output::ok(body)),
        None => Err(Failure::usage("region needs --svg or --csv")),
    }
}

pub fn identities(n: usize, cfg: QuadratureConfig, format: Format) -> Result<Output, Failure> {
    require_format(format, &[Format::Json, Format::Text], "identities")?;
    if n == 0 {
        return Err(Failure::usage("--n must be positive"));
    }
    let checks = identity_suite(&cfg, n, 100.0 * cfg.tol)?;
    let code = if checks.iter().all(|c| c.passed()) {
        0
    } else {
        EXIT_CHECK_FAILED
    };
    let stdout = match format {
        Format::Text => {
            let mut out = String::new();
            for c in &checks {
                let residual = c
                    .max_residual
                    .map(|r| format!("{r:.3e}"))
                    .unwrap_or_else(|| "n/a".into());
                let _ = writeln!(out, "{:<32} max residual {residual:<10} {:?}", c.name, c.outcome);
            }
            out
        }
        _ => to_json(&checks) + "\n",
    };
    Ok(Output { stdout, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0+1i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("0.3-1.2i").unwrap(), Complex64::new(0.3, -1.2));
        assert_eq!(parse_complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_complex("-1").unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(parse_complex(" 1e-3 + 2i ").unwrap(), Complex64::new(1e-3, 2.0));
        for bad in ["", "1+", "i+i", "1,5", "nan", "abc"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }
}
