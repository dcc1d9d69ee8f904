//! The top eigenvectors concentrate on the rows with the largest row sums.
//!
//! cargo run --release --example eigenvector_localization [reps]

use heavycov::diagnostics::{localization, row_sums};
use heavycov::harness::summary::median;
use heavycov::matgen::generate_matrix;
use heavycov::spectra::gram_eigs;
use heavycov::{EnsembleConfig, GrowthRule, TailModel};

fn main() -> heavycov::Result<()> {
    let reps: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    let dist = TailModel::positive_pareto(0.8, 1.0)?;
    for n in [100, 250, 1000] {
        let cfg = EnsembleConfig::new(n, GrowthRule::new(1.0, 0.2)?, dist.clone(), 0xC0FFEE)?;
        let mut dist_k = vec![Vec::new(); 3];
        let mut mass_k = vec![Vec::new(); 3];
        for rep in 0..reps {
            let z = generate_matrix(&cfg, rep);
            let eig = gram_eigs(&z, true)?;
            for k in 1..=3 {
                let r = localization(&z, &eig, k)?;
                dist_k[k - 1].push(r.distance);
                mass_k[k - 1].push(r.mass_top);
            }
        }
        print!("n = {n:>4}, p = {:>3}:", cfg.p());
        for k in 0..3 {
            print!("  v{}: |v - e_L| {:.2e}, mass {:.4}", k + 1, median(&dist_k[k])?, median(&mass_k[k])?);
        }
        println!();
    }

    // one sample in detail: the heaviest components of v_1
    let cfg = EnsembleConfig::new(250, GrowthRule::new(1.0, 0.2)?, dist, 0xC0FFEE)?;
    let z = generate_matrix(&cfg, 0);
    let eig = gram_eigs(&z, true)?;
    let v1 = eig.vector(0).unwrap();
    let rows = row_sums(&z);
    let mut idx: Vec<usize> = (0..v1.len()).collect();
    idx.sort_by(|&a, &b| v1[b].abs().total_cmp(&v1[a].abs()));
    println!("\nrep 0, n = 250: largest |v_1| components (row, value, row sum / a_np^2)");
    for &i in &idx[..5] {
        println!("  {i:>4}  {:+.6}  {:.4}", v1[i], rows[i] / cfg.a_np_sq());
    }
    Ok(())
}
