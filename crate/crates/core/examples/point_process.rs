//! Top eigenvalues as a point process: Gamma-point limit, spacings and the
//! self-normalized trace ratio.
//!
//! cargo run --release --example point_process [reps]

use heavycov::extremes::{frechet_ks, gamma_points, limit_trace_ratio, FrechetLaw};
use heavycov::harness::summary::median;
use heavycov::harness::{run, ExperimentKind, ExperimentSpec};
use heavycov::{CounterRng, EnsembleConfig, GrowthRule, TailModel};

fn main() -> heavycov::Result<()> {
    let reps: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let alpha = 1.6;
    let root = CounterRng::new(0xC0FFEE);

    // limit: Gamma_i^(-2/alpha), first point is Frechet(alpha/2)
    let mut limit_top = vec![Vec::new(); 3];
    let mut limit_ratio = Vec::new();
    for r in 0..reps as u64 {
        let pts = gamma_points(3, alpha, &mut root.split(r))?;
        for i in 0..3 {
            limit_top[i].push(pts.points[i]);
        }
        limit_ratio.push(limit_trace_ratio(alpha, 10_000, &mut root.split(1 << 40 | r))?.ratio);
    }
    let ks = frechet_ks(&limit_top[0], &FrechetLaw::for_tail_index(alpha)?)?;
    println!("limit: KS(Gamma_1^(-2/alpha), Frechet) = {ks:.4} over {reps} draws");

    let cfg = EnsembleConfig::new(1000, GrowthRule::new(1.0, 0.2)?, TailModel::paper(alpha)?, 0xC0FFEE)?;
    let mut spec = ExperimentSpec::new(ExperimentKind::Pointproc, cfg, reps);
    spec.k_top = 3;
    let out = run(&spec)?;

    println!("{:<12} {:>12} {:>12}", "median", "matrix", "limit");
    for i in 0..3 {
        println!(
            "{:<12} {:>12.4} {:>12.4}",
            format!("top_{}", i + 1),
            median(&out.column(&format!("top_{}", i + 1)).unwrap())?,
            median(&limit_top[i])?
        );
    }
    let gaps: Vec<f64> = limit_top[0].iter().zip(&limit_top[1]).map(|(a, b)| a - b).collect();
    println!("{:<12} {:>12.4} {:>12.4}", "spacing_1", median(&out.column("spacing_1").unwrap())?, median(&gaps)?);
    println!(
        "{:<12} {:>12.4} {:>12.4}",
        "trace_ratio",
        median(&out.column("trace_ratio").unwrap())?,
        median(&limit_ratio)?
    );
    Ok(())
}
