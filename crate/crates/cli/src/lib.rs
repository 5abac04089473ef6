//! Report generation on top of the census core: parallel sweeps, CSV/JSON
//! serialization, and the verification suite behind `verify`.

pub mod verify;

use std::io::Write;

use monoid_census::asymptotics::{constants, figure_series, FigureRow};
use monoid_census::census::{
    psi_ev_hist_for_modulus, psi_odd_hist_for_modulus, report_from_sweeps, CensusReport,
};
use monoid_census::inverse::totient_sieve;
use monoid_census::quadratics::{for_each_reduced, QuadIrr};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Cumulative `Psi_ev` / `Psi_odd` sweeps, split over moduli.
///
/// Each modulus contributes an independent histogram; histograms are merged
/// by integer addition, so the result is identical for any thread count.
pub fn psi_sweeps_parallel(n_max: u64) -> anyhow::Result<(Vec<u64>, Vec<u64>)> {
    anyhow::ensure!(n_max >= 3, "psi sweeps require n_max >= 3");
    let len = n_max as usize + 1;
    let zero = || vec![0u64; len];
    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    let mut ev = (1..n_max)
        .into_par_iter()
        .fold(zero, |mut h, q| {
            psi_ev_hist_for_modulus(q, n_max, &mut h);
            h
        })
        .reduce(zero, merge);
    let mut odd = (1..n_max.div_ceil(2))
        .into_par_iter()
        .fold(zero, |mut h, a| {
            psi_odd_hist_for_modulus(a, n_max, &mut h);
            h
        })
        .reduce(zero, merge);
    for s in 3..len {
        ev[s] += ev[s - 1];
        odd[s] += odd[s - 1];
    }
    Ok((ev, odd))
}

/// Census table for `N <= n_max`, computed with the parallel sweeps.
pub fn census_report(n_max: u64) -> anyhow::Result<CensusReport> {
    let (ev, odd) = psi_sweeps_parallel(n_max)?;
    Ok(report_from_sweeps(&ev, &odd))
}

fn write_json_rows(
    out: &mut dyn Write,
    rows: impl Iterator<Item = serde_json::Value>,
) -> anyhow::Result<()> {
    let all: Vec<serde_json::Value> = rows.collect();
    serde_json::to_writer_pretty(&mut *out, &all)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_census(report: &CensusReport, format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "N,psi_ev,psi_odd,psi,phi,main_term,residual,residual_over_N175")?;
            for r in &report.rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.n, r.psi_ev, r.psi_odd, r.psi, r.phi, r.main_term, r.residual,
                    r.residual_scaled
                )?;
            }
        }
        Format::Json => write_json_rows(
            out,
            report.rows.iter().map(|r| {
                serde_json::json!({
                    "N": r.n,
                    "psi_ev": r.psi_ev,
                    "psi_odd": r.psi_odd,
                    "psi": r.psi,
                    "phi": r.phi,
                    "main_term": r.main_term,
                    "residual": r.residual,
                    "residual_over_N175": r.residual_scaled,
                })
            }),
        )?,
    }
    Ok(())
}

pub fn figure_rows(n_max: u64) -> anyhow::Result<Vec<FigureRow>> {
    let tot = totient_sieve(n_max / 2 + 1);
    let k = constants();
    Ok(figure_series(n_max, &tot, &k)?)
}

pub fn write_figures(rows: &[FigureRow], format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "N,s_n,c_n,s_minus_c,fig2")?;
            for r in rows {
                writeln!(out, "{},{},{},{},{}", r.n, r.s_n, r.c_n, r.s_minus_c, r.fig2)?;
            }
        }
        Format::Json => write_json_rows(
            out,
            rows.iter().map(|r| {
                serde_json::json!({
                    "N": r.n,
                    "s_n": r.s_n,
                    "c_n": r.c_n,
                    "s_minus_c": r.s_minus_c,
                    "fig2": r.fig2,
                })
            }),
        )?,
    }
    Ok(())
}

fn period_string(q: &QuadIrr) -> String {
    let digits: Vec<String> = q.period.digits().iter().map(|a| a.to_string()).collect();
    digits.join("-")
}

/// Catalog of reduced quadratic irrationals with `u0 <= trace_bound`,
/// sorted by `(rho, period)`. `rho` is strictly increasing in `u0`, so the
/// sort key is the exact pair `(u0, period digits)`.
pub fn quadratic_rows(trace_bound: u64) -> anyhow::Result<Vec<QuadIrr>> {
    let mut rows = Vec::new();
    if trace_bound >= 3 {
        for_each_reduced(trace_bound, &mut |q| {
            rows.push(q);
            Ok(())
        })?;
    }
    rows.sort_by(|x, y| x.u0.cmp(&y.u0).then_with(|| x.period.digits().cmp(y.period.digits())));
    Ok(rows)
}

pub fn write_quadratics(rows: &[QuadIrr], format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "period,per,eper,Delta,u0,v0,rho")?;
            for q in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    period_string(q),
                    q.per,
                    q.eper,
                    q.delta,
                    q.u0,
                    q.v0,
                    q.rho
                )?;
            }
        }
        Format::Json => write_json_rows(
            out,
            rows.iter().map(|q| {
                serde_json::json!({
                    "period": period_string(q),
                    "per": q.per,
                    "eper": q.eper,
                    "Delta": q.delta,
                    "u0": q.u0,
                    "v0": q.v0,
                    "rho": q.rho,
                })
            }),
        )?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use monoid_census::census;

    #[test]
    fn parallel_sweeps_match_serial() {
        let (ev, odd) = psi_sweeps_parallel(300).unwrap();
        let (ev_s, odd_s) = census::psi_sweeps(300).unwrap();
        assert_eq!(ev, ev_s);
        assert_eq!(odd, odd_s);
    }

    #[test]
    fn census_csv_shape() {
        let report = census_report(4).unwrap();
        let mut buf = Vec::new();
        write_census(&report, Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "N,psi_ev,psi_odd,psi,phi,main_term,residual,residual_over_N175");
        assert!(lines[1].starts_with("3,1,0,2,2,"));
        assert!(lines[2].starts_with("4,3,1,8,6,"));
        assert_eq!(lines.len(), 3);
        assert!(!text.contains('\r'));
    }

    #[test]
    fn census_json_shape() {
        let report = census_report(3).unwrap();
        let mut buf = Vec::new();
        write_census(&report, Format::Json, &mut buf).unwrap();
        let val: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let rows = val.as_array().unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0]["N"], 3);
        assert_eq!(rows[0]["psi"], 2);
    }

    #[test]
    fn quadratics_rows_sorted() {
        let rows = quadratic_rows(4).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(period_string(&rows[0]), "1");
        assert_eq!(rows[0].delta, 5);
        assert_eq!((rows[0].u0, rows[0].v0), (3, 1));
        // the two conjugate periods of trace 4, in digit order
        assert_eq!(period_string(&rows[1]), "1-2");
        assert_eq!(period_string(&rows[2]), "2-1");
        assert!(rows.windows(2).all(|w| w[0].rho <= w[1].rho));
        assert!(quadratic_rows(2).unwrap().is_empty());
    }

    #[test]
    fn figures_first_rows() {
        let rows = figure_rows(10).unwrap();
        assert_eq!(rows[0].n, 3);
        assert!((rows[0].fig2 - (-0.367836)).abs() < 1e-5);
        assert!((rows[1].s_n - 2.0).abs() < 1e-12);
    }
}
