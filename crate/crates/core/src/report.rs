//! Metrics CSV and the sample-complexity table.
//!
//! The metrics file is the interface to plotting tools: header
//! `play,policy,avg_reward,pct_optimal,avg_cum_regret`, one row per policy
//! and play (policies in config order, plays ascending from 1), numbers
//! printed like C's `%.10g`, LF line endings.

use std::fmt::Write as _;
use std::path::Path;

use crate::bounds::{sample_size_beta1, sample_size_dependent, g_table_row, Beta1SampleSpec};
use crate::sim::RunMetrics;
use crate::{Error, Result};

pub const CSV_HEADER: &str = "play,policy,avg_reward,pct_optimal,avg_cum_regret";

/// Formats `x` with 10 significant digits, as `printf("%.10g")` does.
///
/// Negative zero prints as `0`.
pub fn format_sig10(x: f64) -> String {
    const P: i32 = 10;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // the exponent after rounding to P digits decides the style
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (P - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn metrics_csv(metrics: &[RunMetrics]) -> Result<String> {
    if metrics.is_empty() {
        return Err(Error::Config("no metrics to write".into()));
    }
    let rows: usize = metrics.iter().map(RunMetrics::horizon).sum();
    let mut out = String::with_capacity(48 * (rows + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for m in metrics {
        for t in 0..m.horizon() {
            writeln!(
                out,
                "{},{},{},{},{}",
                t + 1,
                m.label,
                format_sig10(m.avg_reward[t]),
                format_sig10(m.pct_optimal[t]),
                format_sig10(m.avg_cum_regret[t]),
            )
            .expect("writing to a String");
        }
    }
    Ok(out)
}

pub fn write_metrics_csv(metrics: &[RunMetrics], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = metrics_csv(metrics)?;
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// One parsed row of a metrics CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub play: usize,
    pub policy: String,
    pub avg_reward: f64,
    pub pct_optimal: f64,
    pub avg_cum_regret: f64,
}

/// Reads a metrics CSV back, enforcing the exact header.
pub fn parse_metrics_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.split('\n');
    match lines.next() {
        Some(CSV_HEADER) => {}
        Some(h) => return Err(Error::Config(format!("bad header {h:?}, expected {CSV_HEADER:?}"))),
        None => return Err(Error::Config("empty CSV".into())),
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = i + 2;
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 5 {
            return Err(Error::Config(format!("row {row}: expected 5 columns, got {}", cells.len())));
        }
        let num = |col: usize| -> Result<f64> {
            cells[col].parse().map_err(|_| {
                Error::Config(format!("row {row}, column {}: {:?} is not a number", col + 1, cells[col]))
            })
        };
        rows.push(CsvRow {
            play: cells[0]
                .parse()
                .map_err(|_| Error::Config(format!("row {row}, column 1: {:?} is not a play number", cells[0])))?,
            policy: cells[1].to_string(),
            avg_reward: num(2)?,
            pct_optimal: num(3)?,
            avg_cum_regret: num(4)?,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundsParams {
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub mu_t: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub n: u64,
    pub n_ln_n: f64,
    pub g: f64,
    pub n_g: f64,
    /// Per-arm pulls for `beta = 1`, given `eps` and `delta`.
    pub beta1_pulls: Option<u64>,
    /// Per-arm pulls from the dependent bound, given `mu_t` and `delta`.
    pub dependent_pulls: Option<u64>,
}

pub fn bounds_rows(ns: &[u64], params: BoundsParams) -> Result<Vec<BoundsRow>> {
    if ns.is_empty() {
        return Err(Error::param("n", "list is empty"));
    }
    ns.iter()
        .map(|&n| {
            let row = g_table_row(n)?;
            let beta1_pulls = match (params.eps, params.delta) {
                (Some(eps), Some(delta)) => Some(sample_size_beta1(Beta1SampleSpec {
                    eps,
                    delta,
                    n: n as usize,
                })?),
                _ => None,
            };
            let dependent_pulls = match (params.mu_t, params.delta) {
                (Some(mu_t), Some(delta)) => Some(sample_size_dependent(n as usize, mu_t, delta)?),
                _ => None,
            };
            Ok(BoundsRow {
                n,
                n_ln_n: row.weaker,
                g: row.g,
                n_g: row.proposed,
                beta1_pulls,
                dependent_pulls,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Text,
    Csv,
}

pub fn bounds_report(rows: &[BoundsRow], format: TableFormat) -> String {
    let with_beta1 = rows.iter().any(|r| r.beta1_pulls.is_some());
    let with_dep = rows.iter().any(|r| r.dependent_pulls.is_some());
    let mut header = vec!["n", "n_ln_n", "g", "n_g"];
    if with_beta1 {
        header.push("beta1_pulls");
    }
    if with_dep {
        header.push("dependent_pulls");
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut c = match format {
                TableFormat::Csv => vec![r.n.to_string(), format_sig10(r.n_ln_n), format_sig10(r.g), format_sig10(r.n_g)],
                TableFormat::Text => vec![
                    r.n.to_string(),
                    format!("{:.0}", r.n_ln_n),
                    format!("{:.4}", r.g),
                    format!("{:.0}", r.n_g),
                ],
            };
            let opt = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
            if with_beta1 {
                c.push(opt(r.beta1_pulls));
            }
            if with_dep {
                c.push(opt(r.dependent_pulls));
            }
            c
        })
        .collect();

    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str(&header.join(","));
            out.push('\n');
            for c in &cells {
                out.push_str(&c.join(","));
                out.push('\n');
            }
        }
        TableFormat::Text => {
            let widths: Vec<usize> = (0..header.len())
                .map(|k| cells.iter().map(|c| c[k].len()).chain([header[k].len()]).max().unwrap_or(0))
                .collect();
            let line = |items: Vec<&str>| -> String {
                let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(header.clone()));
            for c in &cells {
                out.push_str(&line(c.iter().map(String::as_str).collect()));
            }
            out.push_str("# n_ln_n and n_g are direct evaluations, not rounded to a few significant figures\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig10_matches_printf() {
        let cases = [
            (0.0, "0"),
            (-0.0, "0"),
            (1.0, "1"),
            (0.5, "0.5"),
            (-2.25, "-2.25"),
            (1.0 / 3.0, "0.3333333333"),
            (2.0 / 3.0, "0.6666666667"),
            (123456.789, "123456.789"),
            (1234567890.0, "1234567890"),
            (12345678901.0, "1.23456789e+10"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (9999999999.5, "1e+10"),
            (0.99999999999, "1"),
            (1e100, "1e+100"),
            (113.4526066750254, "113.4526067"),
        ];
        for (x, want) in cases {
            assert_eq!(format_sig10(x), want, "{x:e}");
        }
    }

    fn metrics(label: &str, horizon: usize) -> RunMetrics {
        RunMetrics {
            label: label.into(),
            n_tasks: 1,
            avg_reward: (0..horizon).map(|t| t as f64 * 0.5).collect(),
            pct_optimal: vec![1.0; horizon],
            avg_cum_regret: vec![0.25; horizon],
            avg_pseudo_regret: vec![0.0; horizon],
            mean_optimal_mean: 1.0,
        }
    }

    #[test]
    fn csv_shape() {
        let text = metrics_csv(&[metrics("a", 3)]).unwrap();
        assert_eq!(text, format!("{CSV_HEADER}\n1,a,0,1,0.25\n2,a,0.5,1,0.25\n3,a,1,1,0.25\n"));
        let text = metrics_csv(&[metrics("a", 1000), metrics("b", 1000)]).unwrap();
        assert_eq!(text.lines().count(), 2001);
        assert!(!text.contains('\r'));
        assert!(metrics_csv(&[]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let m = [metrics("x", 4), metrics("y", 4)];
        let rows = parse_metrics_csv(&metrics_csv(&m).unwrap()).unwrap();
        assert_eq!(rows.len(), 8);
        assert_eq!(rows[5].policy, "y");
        assert_eq!(rows[5].play, 2);
        assert_eq!(rows[5].avg_reward, 0.5);
    }

    #[test]
    fn csv_reader_rejects_bad_input() {
        assert!(parse_metrics_csv("").is_err());
        assert!(parse_metrics_csv("Play,policy,avg_reward,pct_optimal,avg_cum_regret\n").is_err());
        let e = parse_metrics_csv(&format!("{CSV_HEADER}\n1,a,x,1,0\n")).unwrap_err().to_string();
        assert!(e.contains("row 2") && e.contains("column 3"), "{e}");
    }

    #[test]
    fn bounds_table() {
        let rows = bounds_rows(&[2, 5, 1000], BoundsParams::default()).unwrap();
        assert!((rows[1].g - 1.669).abs() < 1e-3);
        assert_eq!(rows[2].n_ln_n.round(), 6908.0);
        assert!((rows[2].g - 1.0108).abs() < 1e-4);
        assert_eq!(rows[2].n_g.round(), 1011.0);
        assert!(bounds_rows(&[1], BoundsParams::default()).is_err());

        let text = bounds_report(&rows, TableFormat::Text);
        assert!(text.lines().nth(3).unwrap().ends_with("1011"), "{text}");
        assert!(text.ends_with("figures\n"));
        let csv = bounds_report(&rows, TableFormat::Csv);
        assert_eq!(csv.lines().next(), Some("n,n_ln_n,g,n_g"));
    }

    #[test]
    fn bounds_table_with_sample_sizes() {
        let p = BoundsParams {
            eps: Some(0.1),
            delta: Some(0.1),
            mu_t: Some(0.5),
        };
        let rows = bounds_rows(&[10], p).unwrap();
        assert_eq!(rows[0].beta1_pulls, Some(1060));
        assert!(rows[0].dependent_pulls.is_some());
        let csv = bounds_report(&rows, TableFormat::Csv);
        assert!(csv.starts_with("n,n_ln_n,g,n_g,beta1_pulls,dependent_pulls\n10,"), "{csv}");
    }
}
