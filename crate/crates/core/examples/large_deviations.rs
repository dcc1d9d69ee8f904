//! Monte Carlo checks of the heavy-tail large-deviation and single-big-jump
//! statements, next to their exact probabilities where one exists.
//!
//! cargo run --release --example large_deviations

use heavycov::ldp::{
    admissible_epsilon, karamata_sum_ratio, kth_order_event, nagaev_ratio_grid, sum_minus_max, two_large_entries,
};
use heavycov::{CounterRng, TailModel};

fn main() -> heavycov::Result<()> {
    let rng = CounterRng::new(0xC0FFEE);
    let n = 1000;

    println!("P(S_n > x) / (n P(|Z| > x)), common random numbers, 20000 sums:");
    for dist in [TailModel::paper(1.6)?, TailModel::positive_pareto(1.6, 1.0)?] {
        let a_n = dist.norming_constant(n as u64)?;
        let mults = [2.0, 5.0, 10.0, 20.0];
        let xs: Vec<f64> = mults.iter().map(|m| m * a_n).collect();
        let grid = nagaev_ratio_grid(&dist, n, &xs, 20_000, &rng)?;
        let cells: Vec<String> = mults
            .iter()
            .zip(&grid)
            .map(|(m, g)| format!("{m}a_n: {:.3}{}", g.ratio, if g.low_confidence { "*" } else { "" }))
            .collect();
        println!("  {dist:<32} target {:.1}  {}", grid[0].target, cells.join("  "));
    }

    let dist = TailModel::positive_pareto(1.6, 1.0)?;
    let k = karamata_sum_ratio(&dist, n, 0.8, 10.0 * dist.norming_constant(n as u64)?, 20_000, &rng)?;
    println!("\nE[|S_n/x|^0.8; |S_n| > x] / (n P(|Z| > x)) = {:.3} (target {:.3})", k.ratio, k.target);

    let dist = TailModel::paper(1.6)?;
    let (m, eps) = (200, 0.3);
    let q = dist.tail_prob(dist.norming_constant(m as u64)?.powf(1.0 - eps));
    // P(Bin(m, q) >= rank) by summing the pmf below rank
    let mut pmf = (1.0 - q).powi(m as i32);
    let mut below = 0.0;
    for rank in 1..=3 {
        below += pmf;
        pmf *= (m - rank + 1) as f64 / rank as f64 * q / (1.0 - q);
        let e = kth_order_event(&dist, m, eps, rank, 20_000, &rng)?;
        println!(
            "P(order statistic {rank} of {m} draws > a_n^0.7) = {:.4} +- {:.4}, exact {:.4}",
            e.estimate,
            e.std_err,
            1.0 - below
        );
    }

    let (n2, p2, delta) = (100, 20, 0.5);
    let e = two_large_entries(&dist, n2, p2, delta, 20_000, &rng)?;
    let q = dist.tail_prob(dist.norming_constant((n2 * p2) as u64)?.powf(delta));
    let exact = 1.0 - ((1.0 - q).powi(n2 as i32 - 1) * (1.0 + (n2 as f64 - 1.0) * q)).powi(p2 as i32);
    println!("P(some row has two entries > a_np^0.5) = {:.4} +- {:.4}, exact {exact:.4}", e.estimate, e.std_err);

    let base = TailModel::positive_pareto(0.8, 1.0)?;
    let sup = admissible_epsilon(0.4, 1.0).unwrap();
    println!("\nsum minus max of squared Pareto(0.8) rows; proved for epsilon < {sup:.4}");
    for eps in [0.05, 0.1, 0.3] {
        let cells: Vec<String> = [250, 1000]
            .iter()
            .map(|&n| {
                let e = sum_minus_max(&base.squared(), n, n / 5, eps, 500, &rng).unwrap();
                format!("n = {n}: {:.3}", e.estimate)
            })
            .collect();
        println!("  epsilon = {eps}: {}", cells.join("  "));
    }
    Ok(())
}
