//! Dispersive-limit parameter sweeps and their CSV form.
//!
//! Columns: `s,n,g,Delta,residual_norm,fitted_slope,fidelity`. One row per
//! coupling; `fitted_slope` repeats the fit over the whole sweep and is empty
//! when fewer than two couplings were given. `fidelity` holds the worst-case
//! matrix deviation of the evolved interaction from the ideal `C(Z_n)` at
//! exact `χt = 2π/n` (0 is perfect).

use std::io::{self, Write};

use crate::physics::{dispersive_residual, gate_fidelity_vs_ideal, HamiltonianSpec};
use crate::{Error, Result};

pub const CSV_HEADER: &str = "s,n,g,Delta,residual_norm,fitted_slope,fidelity";

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub s: f64,
    pub n: usize,
    pub g: f64,
    pub delta: f64,
    pub residual_norm: f64,
    pub fitted_slope: Option<f64>,
    pub fidelity: f64,
}

/// `steps` logarithmically spaced couplings from `g_max` down to `g_min`.
pub fn log_spaced(g_min: f64, g_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(g_min > 0.0 && g_max >= g_min && g_max.is_finite()) {
        return Err(Error::domain(format!("need 0 < g_min <= g_max, got {g_min}, {g_max}")));
    }
    match steps {
        0 => Err(Error::domain("need at least one coupling")),
        1 => Ok(vec![g_max]),
        _ => {
            let (lo, hi) = (g_min.ln(), g_max.ln());
            Ok((0..steps)
                .map(|i| (hi + (lo - hi) * i as f64 / (steps - 1) as f64).exp())
                .collect())
        }
    }
}

pub fn run_sweep(spec: &HamiltonianSpec, g_values: &[f64]) -> Result<Vec<SweepRow>> {
    let report = dispersive_residual(spec, g_values)?;
    let fidelity = gate_fidelity_vs_ideal(spec, 1.0)?.deviation;
    Ok(report
        .residuals
        .iter()
        .map(|&(g, residual_norm)| SweepRow {
            s: spec.spin.value(),
            n: spec.qudit_dim(),
            g,
            delta: spec.detuning(),
            residual_norm,
            fitted_slope: report.slope,
            fidelity,
        })
        .collect())
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        let slope = r.fitted_slope.map(|s| format!("{s:?}")).unwrap_or_default();
        writeln!(
            out,
            "{:?},{},{:?},{:?},{:?},{},{:?}",
            r.s, r.n, r.g, r.delta, r.residual_norm, slope, r.fidelity
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::Spin;

    #[test]
    fn log_spacing_is_descending_and_bounded() {
        let g = log_spaced(1e-3, 1e-2, 5).unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[0] - 1e-2).abs() < 1e-15 && (g[4] - 1e-3).abs() < 1e-15);
        assert!(g.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(log_spaced(1e-3, 1e-2, 1).unwrap(), vec![1e-2]);
        assert!(log_spaced(0.0, 1e-2, 3).is_err());
        assert!(log_spaced(1e-2, 1e-3, 3).is_err());
        assert!(log_spaced(1e-3, 1e-2, 0).is_err());
    }

    #[test]
    fn single_coupling_leaves_slope_empty() {
        let rows = run_sweep(&HamiltonianSpec::default(), &[5e-3]).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let line = text.lines().nth(1).unwrap();
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 7);
        assert_eq!(fields[5], "");
        assert!(fields[4].parse::<f64>().unwrap() > 0.0);
    }

    #[test]
    fn spin_one_row_has_exact_gate() {
        let spec = HamiltonianSpec {
            spin: Spin::from_twice(2),
            ..HamiltonianSpec::default()
        };
        let rows = run_sweep(&spec, &log_spaced(1e-3, 1e-2, 4).unwrap()).unwrap();
        for r in &rows {
            assert_eq!(r.n, 3);
            assert!(r.fidelity < 1e-10);
            assert!((r.fitted_slope.unwrap() - 3.0).abs() < 0.2);
        }
    }

    #[test]
    fn csv_is_deterministic() {
        let g = log_spaced(1e-3, 1e-2, 4).unwrap();
        let render = || {
            let mut buf = Vec::new();
            write_csv(&run_sweep(&HamiltonianSpec::default(), &g).unwrap(), &mut buf).unwrap();
            buf
        };
        assert_eq!(render(), render());
    }
}
