//! Row sums versus order statistics as approximations of the eigenvalues
//! (the data behind the err_row / err_order histograms).
//!
//! cargo run --release --example approximation_errors [reps]

use heavycov::harness::summary::histogram_with_edges;
use heavycov::harness::{run, ExperimentKind, ExperimentSpec};
use heavycov::{EnsembleConfig, GrowthRule, TailModel};

fn main() -> heavycov::Result<()> {
    let reps: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    for n in [250, 1000] {
        let cfg = EnsembleConfig::new(n, GrowthRule::new(1.0, 0.2)?, TailModel::paper(1.6)?, 0xC0FFEE)?;
        let out = run(&ExperimentSpec::new(ExperimentKind::Approx, cfg.clone(), reps))?;
        println!("n = {n}, p = {}, {reps} replications", cfg.p());
        for name in ["err_row", "err_col", "err_order", "offdiag_ratio"] {
            let s = out.summary_of(name).unwrap();
            println!(
                "  {name:<14} median {:.5}  [q05 {:.5}, q95 {:.5}]",
                s.quantiles.q50, s.quantiles.q05, s.quantiles.q95
            );
        }
        // shared bins up to the 95% point of err_order; larger values are
        // counted in the overflow line
        let row = out.column("err_row").unwrap();
        let order = out.column("err_order").unwrap();
        let hi = out.summary_of("err_order").unwrap().quantiles.q95;
        let edges: Vec<f64> = (0..=12).map(|i| hi * i as f64 / 12.0).collect();
        let hr = histogram_with_edges(&row, &edges)?;
        let ho = histogram_with_edges(&order, &edges)?;
        println!("  {:>18}  {:>7} {:>9}", "bin", "err_row", "err_order");
        for i in 0..12 {
            println!("  [{:.4}, {:.4})  {:>7} {:>9}", edges[i], edges[i + 1], hr.counts[i], ho.counts[i]);
        }
        let over = |v: &[f64]| v.iter().filter(|&&x| x > hi).count();
        println!("  {:>18}  {:>7} {:>9}", format!("> {hi:.4}"), over(&row), over(&order));
    }
    Ok(())
}
