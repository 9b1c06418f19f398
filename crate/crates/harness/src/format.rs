//! Report rendering. Text tables use the `a(n)` notation for `a * 10^n`
//! with the mantissa in `[0.1, 1)`.

use std::io::Write;

use serde::Serialize;

use crate::config::{ExperimentConfig, Mode, OutputFormat};
use crate::error::HarnessError;
use crate::experiment::TrialReport;

/// `v` as `m(e)` with `0.1 <= |m| < 1` and `digits` digits after the point.
pub fn mantissa_exponent(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{:.*}(0)", digits, v);
    }
    let mut exp = v.abs().log10().floor() as i32 + 1;
    let mut m = v / 10f64.powi(exp);
    // log10 can land one off near exact powers of ten.
    if m.abs() >= 1.0 {
        m /= 10.0;
        exp += 1;
    } else if m.abs() < 0.1 {
        m *= 10.0;
        exp -= 1;
    }
    let mut text = format!("{:.*}", digits, m);
    if text.trim_start_matches('-').starts_with('1') {
        // Rounded up to 1.000...; renormalize.
        exp += 1;
        text = format!("{:.*}", digits, m / 10.0);
    }
    format!("{text}({exp})")
}

/// As [`mantissa_exponent`] with trailing zeros dropped, e.g. `0.1(-2)`.
pub fn short_mantissa_exponent(v: f64) -> String {
    let full = mantissa_exponent(v, 6);
    let (m, e) = full.split_at(full.find('(').unwrap());
    let m = m.trim_end_matches('0');
    let m = if m.ends_with('.') {
        format!("{m}0")
    } else {
        m.to_string()
    };
    format!("{m}{e}")
}

pub fn write_report(
    out: &mut impl Write,
    config: &ExperimentConfig,
    reports: &[TrialReport],
    format: OutputFormat,
) -> Result<(), HarnessError> {
    match format {
        OutputFormat::Text => write_text(out, config, reports),
        OutputFormat::Csv => write_csv(out, config, reports),
        OutputFormat::Json => write_json(out, config, reports),
    }
}

pub fn write_text(
    out: &mut impl Write,
    config: &ExperimentConfig,
    reports: &[TrialReport],
) -> Result<(), HarnessError> {
    writeln!(
        out,
        "{}, n = {}, s = {}, trials = {}, seed = {}",
        config.family, config.n, config.s, config.trials, config.seed
    )?;
    let weak: Vec<_> = reports.iter().filter(|r| r.mode == Mode::Weak).collect();
    let quasi: Vec<_> = reports.iter().filter(|r| r.mode == Mode::Quasi).collect();
    if !weak.is_empty() || reports.is_empty() {
        writeln!(out)?;
        writeln!(out, "Weak orthogonality")?;
        writeln!(out, "{:<10}  inner products", "eps")?;
        for r in weak {
            writeln!(
                out,
                "{:<10}  {}",
                short_mantissa_exponent(r.epsilon),
                mantissa_exponent(r.max_inner_product, 6)
            )?;
        }
    }
    if !quasi.is_empty() || reports.is_empty() {
        writeln!(out)?;
        writeln!(out, "Quasi almost orthogonality")?;
        writeln!(out, "{:<10}  {:<14}  inner products", "eps", "zero distance")?;
        for r in quasi {
            writeln!(
                out,
                "{:<10}  {:<14}  {}",
                short_mantissa_exponent(r.epsilon),
                mantissa_exponent(r.max_zero_distance, 6),
                mantissa_exponent(r.max_inner_product, 6)
            )?;
        }
    }
    Ok(())
}

/// Floats in the shortest form that parses back to the same value.
fn float(v: f64) -> String {
    format!("{v:?}")
}

/// One row per trial and mode. Weak rows fill the `f_j` columns and quasi
/// rows the `g_j` columns; the other group is left blank.
pub fn write_csv(out: &mut impl Write, config: &ExperimentConfig, reports: &[TrialReport]) -> Result<(), HarnessError> {
    let n = config.n;
    let (has_f, has_g) = (config.mode.runs_weak(), config.mode.runs_quasi());
    let mut header: Vec<String> = [
        "family",
        "n",
        "s",
        "eps",
        "trial",
        "seed",
        "max_zero_distance",
        "max_inner_product",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    if has_f {
        header.extend((0..=n).map(|j| format!("f_{j}")));
    }
    if has_g {
        header.extend((0..=n).map(|j| format!("g_{j}")));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&header)?;
    for r in reports {
        for t in &r.trials {
            let mut row = vec![
                config.family.name().to_string(),
                n.to_string(),
                config.s.to_string(),
                float(r.epsilon),
                t.index.to_string(),
                config.seed.to_string(),
                float(t.zero_distance),
                float(t.inner_product),
            ];
            let filled = |row: &mut Vec<String>, mine: bool| {
                if mine {
                    row.extend(t.profile.iter().map(|v| float(*v)));
                } else {
                    row.extend((0..=n).map(|_| String::new()));
                }
            };
            if has_f {
                filled(&mut row, r.mode == Mode::Weak);
            }
            if has_g {
                filled(&mut row, r.mode == Mode::Quasi);
            }
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonTrial<'a> {
    mode: Mode,
    eps: f64,
    trial: usize,
    seed: u64,
    deltas: &'a [f64],
    max_zero_distance: f64,
    max_inner_product: f64,
    profile: &'a [f64],
}

#[derive(Serialize)]
struct JsonSummary {
    mode: Mode,
    eps: f64,
    max_zero_distance: f64,
    mean_zero_distance: f64,
    max_inner_product: f64,
    mean_inner_product: f64,
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    config: &'a ExperimentConfig,
    trials: Vec<JsonTrial<'a>>,
    summary: Vec<JsonSummary>,
}

pub fn write_json(
    out: &mut impl Write,
    config: &ExperimentConfig,
    reports: &[TrialReport],
) -> Result<(), HarnessError> {
    let trials = reports
        .iter()
        .flat_map(|r| {
            r.trials.iter().map(move |t| JsonTrial {
                mode: r.mode,
                eps: r.epsilon,
                trial: t.index,
                seed: config.seed,
                deltas: &t.deltas,
                max_zero_distance: t.zero_distance,
                max_inner_product: t.inner_product,
                profile: &t.profile,
            })
        })
        .collect();
    let doc = JsonDocument {
        config,
        trials,
        summary: reports
            .iter()
            .map(|r| JsonSummary {
                mode: r.mode,
                eps: r.epsilon,
                max_zero_distance: r.max_zero_distance,
                mean_zero_distance: r.mean_zero_distance,
                max_inner_product: r.max_inner_product,
                mean_inner_product: r.mean_inner_product,
            })
            .collect(),
    };
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_notation() {
        assert_eq!(mantissa_exponent(0.00446765, 6), "0.446765(-2)");
        assert_eq!(mantissa_exponent(2.31992, 6), "0.231992(1)");
        assert_eq!(mantissa_exponent(0.167538, 6), "0.167538(0)");
        assert_eq!(mantissa_exponent(0.1, 6), "0.100000(0)");
        assert_eq!(mantissa_exponent(1.0, 6), "0.100000(1)");
        assert_eq!(mantissa_exponent(0.9999999, 6), "0.100000(1)");
        assert_eq!(mantissa_exponent(-0.0125, 3), "-0.125(-1)");
        assert_eq!(short_mantissa_exponent(1e-2), "0.1(-1)");
        assert_eq!(short_mantissa_exponent(1e-5), "0.1(-4)");
        assert_eq!(short_mantissa_exponent(2.5e-3), "0.25(-2)");
    }

    #[test]
    fn empty_report_is_header_only() {
        let config = ExperimentConfig::default();
        let mut buf = Vec::new();
        write_text(&mut buf, &config, &[]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("Weak orthogonality") && text.contains("Quasi almost orthogonality"));
        assert!(!text.contains("0.1("));

        let mut buf = Vec::new();
        write_csv(&mut buf, &config, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1);
    }
}
