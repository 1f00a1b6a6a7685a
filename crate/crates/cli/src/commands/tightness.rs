use entrobound::classical::extremal_marginal_with_tail;
use entrobound::qbounds::{vn_continuity_bound, winter_bound_alpha};

use crate::cli::TightnessArgs;
use crate::config::{Axis, Grid, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{emit, Cell, Table};

pub const DEFAULT_DIM: usize = 4096;
pub const GAP_TOL: f64 = 1e-8;
/// Geometric tail budget of the extremal construction. At `d = 4096` the
/// grid corner `E = 8`, `ε = E/(20(E+1))` leaves about `1.2e-10`.
pub const TAIL_BUDGET: f64 = 1e-9;
/// ε axis as fractions of `E/(E+1)`.
pub const DEFAULT_GRID: &str = "0.05:1:20,0.25:8:20";
pub const RATIO_TOL: f64 = 0.15;

pub fn default_grid() -> Grid {
    DEFAULT_GRID.parse().expect("default grid")
}

/// `(ε, E, bound, achieved, gap, tail_mass)` with ε given as fractions of
/// the critical value `E/(E+1)`.
pub fn tightness_table(grid: &Grid, d: usize) -> CliResult<Table> {
    let mut t = Table::new(["epsilon", "E", "bound", "achieved", "gap", "tail_mass"]);
    for e in grid.energy.values() {
        let crit = e / (e + 1.0);
        for frac in grid.eps.values() {
            let eps = (frac * crit).min(crit);
            let bound = vn_continuity_bound(eps, e)?.value;
            let p = extremal_marginal_with_tail(eps, e, d, TAIL_BUDGET)?;
            let achieved = p.shannon_entropy();
            t.push(vec![
                eps.into(),
                e.into(),
                bound.into(),
                achieved.into(),
                (bound - achieved).abs().into(),
                p.tail_mass().into(),
            ]);
        }
    }
    Ok(t)
}

fn num(c: &Cell) -> f64 {
    match c {
        Cell::Num(x) => *x,
        _ => f64::NAN,
    }
}

/// Row index and value of the largest gap.
pub fn worst_gap(t: &Table) -> (usize, f64) {
    let ig = t.column("gap").unwrap();
    t.rows
        .iter()
        .enumerate()
        .map(|(i, r)| (i, num(&r[ig])))
        .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
}

/// `K(ε, 1/n, eⁿ)/(ε·n)` for `n = 5..=20`.
pub fn asymptotic_table(eps: f64) -> CliResult<Table> {
    let mut t = Table::new(["n", "alpha", "E", "K", "ratio"]);
    for n in 5..=20u64 {
        let a = 1.0 / n as f64;
        let e = (n as f64).exp();
        let k = winter_bound_alpha(eps, e, a)?.value;
        t.push(vec![n.into(), a.into(), e.into(), k.into(), (k / (eps * n as f64)).into()]);
    }
    Ok(t)
}

/// Strictly decreasing ratios, and the last one within [`RATIO_TOL`] of 1.
pub fn asymptotic_checks(t: &Table) -> (bool, bool, f64) {
    let ir = t.column("ratio").unwrap();
    let r: Vec<f64> = t.rows.iter().map(|row| num(&row[ir])).collect();
    let monotone = r.windows(2).all(|w| w[1] < w[0]);
    let last = *r.last().unwrap();
    (monotone, (last - 1.0).abs() <= RATIO_TOL, last)
}

pub fn run(args: &TightnessArgs) -> CliResult<()> {
    let cfg = RunConfig::from_args(&args.common)?;
    if args.asymptotic {
        let eps = cfg.eps.unwrap_or(0.3);
        let t = asymptotic_table(eps)?;
        emit(&t.render(cfg.format), cfg.output_path.as_deref())?;
        let (monotone, close, last) = asymptotic_checks(&t);
        if !(monotone && close) {
            return Err(CliError::Tolerance(format!(
                "ratio K/(eps n): decreasing={monotone}, final value {last} (needs |ratio-1| <= {RATIO_TOL})"
            )));
        }
        return Ok(());
    }
    let mut grid = cfg.grid.unwrap_or_else(default_grid);
    if let Some(e) = cfg.energy {
        grid.energy = Axis::fixed(e);
    }
    let t = tightness_table(&grid, cfg.dim_or(DEFAULT_DIM))?;
    emit(&t.render(cfg.format), cfg.output_path.as_deref())?;
    let (i, gap) = worst_gap(&t);
    if gap > GAP_TOL {
        let row: Vec<String> = t.rows[i].iter().map(|c| format!("{c:?}")).collect();
        return Err(CliError::Tolerance(format!(
            "gap {gap:e} exceeds {GAP_TOL:e} at row {} ({})",
            i,
            row.join(", ")
        )));
    }
    Ok(())
}
