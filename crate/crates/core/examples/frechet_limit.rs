//! lambda_(1) / a_np^2 against its Frechet(alpha/2) limit.
//!
//! cargo run --release --example frechet_limit [reps]

use heavycov::extremes::{frechet_ks, FrechetLaw};
use heavycov::harness::summary::quantile_sorted;
use heavycov::harness::{run, ExperimentKind, ExperimentSpec};
use heavycov::{EnsembleConfig, GrowthRule, TailModel};

fn main() -> heavycov::Result<()> {
    let reps: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(300);
    for alpha in [0.8, 1.6] {
        let law = FrechetLaw::for_tail_index(alpha)?;
        println!("alpha = {alpha}: limit Frechet with shape {}", law.shape);
        for n in [100, 400, 1000] {
            let cfg = EnsembleConfig::new(n, GrowthRule::new(1.0, 0.2)?, TailModel::paper(alpha)?, 0xC0FFEE)?;
            let out = run(&ExperimentSpec::new(ExperimentKind::Frechet, cfg.clone(), reps))?;
            let mut top = out.column("top1").unwrap();
            let ks = frechet_ks(&top, &law)?;
            top.sort_by(f64::total_cmp);
            let qs: Vec<String> = [0.1, 0.5, 0.9]
                .iter()
                .map(|&q| format!("{:.3}/{:.3}", quantile_sorted(&top, q), law.quantile(q).unwrap()))
                .collect();
            println!(
                "  n = {n:>4}, p = {:>3}: KS = {ks:.4}  quantiles (sample/limit) at 0.1, 0.5, 0.9: {}",
                cfg.p(),
                qs.join("  ")
            );
        }
    }
    Ok(())
}
