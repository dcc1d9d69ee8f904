//! Singular values of lagged sample autocovariance matrices Z(0,0) Z(s,k)'.
//!
//! cargo run --release --example autocovariance_lags [reps]

use heavycov::autocov::{joint_lag_points, lag_diagnostics, lag_spread};
use heavycov::harness::summary::median;
use heavycov::matgen::generate;
use heavycov::{EnsembleConfig, GrowthRule, TailModel};

fn main() -> heavycov::Result<()> {
    let reps: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(40);
    let max_lag = 3;
    for n in [250, 1000] {
        let cfg = EnsembleConfig::new(n, GrowthRule::new(1.0, 0.2)?, TailModel::paper(1.6)?, 0xC0FFEE)?;
        let a = cfg.a_np_sq();
        let mut tops = vec![Vec::new(); max_lag + 1];
        let mut errs = vec![Vec::new(); max_lag + 1];
        let mut cross = Vec::new();
        let mut spread = Vec::new();
        for rep in 0..reps {
            let field = generate(&cfg, rep, max_lag, 1)?;
            for s in 0..=max_lag {
                let d = lag_diagnostics(&field, s as i64, 0, a)?;
                tops[s].push(d.top_norm);
                errs[s].push(d.err_row.unwrap());
            }
            // a time shift destroys the diagonal structure
            cross.push(lag_diagnostics(&field, 0, 1, a)?.top_norm);
            spread.push(lag_spread(&joint_lag_points(&field, max_lag, a, 1)?, 0));
        }
        println!("n = {n}, p = {}, {reps} replications", cfg.p());
        for s in 0..=max_lag {
            println!(
                "  s = {s}: median lambda_1(s,0)/a_np^2 = {:.4}, err_row = {:.2e}",
                median(&tops[s])?,
                median(&errs[s])?
            );
        }
        println!("  median lambda_1(0,1)/a_np^2 = {:.4}", median(&cross)?);
        println!("  median spread of lambda_1 across lags = {:.2e}", median(&spread)?);
    }
    Ok(())
}
