use entrobound::qbounds::{vn_continuity_bound, winter_bound_alpha, winter_bound_number_op};
use serde::Serialize;

use crate::cli::SweepArgs;
use crate::config::{Axis, Grid, RunConfig};
use crate::error::CliResult;
use crate::output::{emit, Table};

pub const DEFAULT_GRID: &str = "0.045:0.9:20,0.25:8:20";
pub const DEFAULT_ALPHAS: [f64; 4] = [0.05, 0.1, 0.2, 0.4];

pub fn grid(cfg: &RunConfig) -> Grid {
    let mut g = cfg.grid.unwrap_or_else(|| DEFAULT_GRID.parse().expect("default grid"));
    if let Some(e) = cfg.energy {
        g.energy = Axis::fixed(e);
    }
    if let Some(eps) = cfg.eps {
        g.eps = Axis::fixed(eps);
    }
    g
}

pub fn columns(alphas: &[f64]) -> Vec<String> {
    let mut c: Vec<String> = ["epsilon", "E", "bound_tight", "bound_winter3"].map(String::from).to_vec();
    c.extend(alphas.iter().map(|a| format!("bound_winter2_a{a}")));
    c.push("diff_w3".into());
    c.extend(alphas.iter().map(|a| format!("diff_w2_a{a}")));
    c
}

/// Rows ordered with `E` outer and `ε` inner.
pub fn sweep_table(grid: &Grid, alphas: &[f64], cfg: &RunConfig) -> CliResult<Table> {
    let k = cfg.log_base.factor();
    let mut t = Table::new(columns(alphas));
    for e in grid.energy.values() {
        for eps in grid.eps.values() {
            let tight = vn_continuity_bound(eps, e)?.value * k;
            let w3 = winter_bound_number_op(eps, e)?.value * k;
            let w2 = alphas
                .iter()
                .map(|a| Ok(winter_bound_alpha(eps, e, *a)?.value * k))
                .collect::<CliResult<Vec<f64>>>()?;
            let mut row = vec![eps.into(), e.into(), tight.into(), w3.into()];
            row.extend(w2.iter().map(|v| (*v).into()));
            row.push((w3 - tight).into());
            row.extend(w2.iter().map(|v| (v - tight).into()));
            t.push(row);
        }
    }
    Ok(t)
}

/// Where the α-bound drops below the number-operator bound, per `E` and α.
#[derive(Debug, Clone, Serialize)]
pub struct Crossing {
    pub energy: f64,
    pub alpha: f64,
    /// Grid ε values at which `winter2 < winter3`.
    pub eps_below_w3: Vec<f64>,
}

pub fn crossings(t: &Table, alphas: &[f64]) -> Vec<Crossing> {
    use crate::output::Cell;
    let num = |c: &Cell| match c {
        Cell::Num(x) => *x,
        _ => f64::NAN,
    };
    let (ie, ieps, iw3) = (t.column("E").unwrap(), t.column("epsilon").unwrap(), t.column("bound_winter3").unwrap());
    let mut out: Vec<Crossing> = Vec::new();
    for a in alphas {
        let ia = t.column(&format!("bound_winter2_a{a}")).unwrap();
        for row in &t.rows {
            let e = num(&row[ie]);
            let idx = match out.iter().position(|c| c.energy == e && c.alpha == *a) {
                Some(i) => i,
                None => {
                    out.push(Crossing { energy: e, alpha: *a, eps_below_w3: Vec::new() });
                    out.len() - 1
                }
            };
            if num(&row[ia]) < num(&row[iw3]) {
                out[idx].eps_below_w3.push(num(&row[ieps]));
            }
        }
    }
    out
}

pub fn run(args: &SweepArgs) -> CliResult<()> {
    let cfg = RunConfig::from_args(&args.common)?;
    let alphas = cfg.alphas_or(&DEFAULT_ALPHAS);
    let t = sweep_table(&grid(&cfg), &alphas, &cfg)?;
    for c in crossings(&t, &alphas).iter().filter(|c| !c.eps_below_w3.is_empty()) {
        eprintln!(
            "E={} alpha={}: winter2 below winter3 at {} grid eps values",
            c.energy,
            c.alpha,
            c.eps_below_w3.len()
        );
    }
    emit(&t.render(cfg.format), cfg.output_path.as_deref())
}
