//! The dimension rule p = floor(ell * n^beta) and counter-based data fields.
//!
//! cargo run --example ensemble_generation

use heavycov::matgen::{entry_uniform, generate, generate_matrix, shifted_view};
use heavycov::{EnsembleConfig, GrowthRule, TailModel};

fn main() -> heavycov::Result<()> {
    for (beta, ell) in [(1.0, 0.2), (0.5, 1.0), (1.5, 0.01)] {
        let g = GrowthRule::new(beta, ell)?;
        let ps: Vec<String> = [100, 250, 1000, 4000].iter().map(|&n| g.dimension_p(n).to_string()).collect();
        println!("beta = {beta}, ell = {ell}: p(n) for n = 100, 250, 1000, 4000 -> {}", ps.join(", "));
    }

    let cfg = EnsembleConfig::new(250, GrowthRule::new(1.0, 0.2)?, TailModel::paper(1.6)?, 0xC0FFEE)?;
    println!("\nn = {}, p = {}, a_np = {:.3}, a_np^2 = {:.1}", cfg.n, cfg.p(), cfg.a_np(), cfg.a_np_sq());

    // entries are a pure function of (seed, replication, i, t)
    println!("u(seed, rep 0, i 1, t 1) = {:.12}", entry_uniform(cfg.seed, 0, 1, 1));
    let z = generate_matrix(&cfg, 0);
    let again = generate_matrix(&cfg, 0);
    println!("regenerated matrix identical: {}", z == again);

    // a padded field holds the lagged views Z(s, k) of the same replication
    let field = generate(&cfg, 0, 2, 1)?;
    println!("padded field base equals the plain matrix: {}", field.base() == z);
    let lag = shifted_view(&field, 1, 0)?;
    let same = (1..cfg.p()).all(|r| lag.row(r) == z.row(r - 1));
    println!("row i of Z(1,0) is row i-1 of Z: {same}");
    println!("Z(0,1)[0,0] = Z[0,-1] from the padding: {:.4}", shifted_view(&field, 0, 1)?[(0, 0)]);

    let biggest = z.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    println!("max |Z_it| / a_np = {:.3}", biggest / cfg.a_np());
    Ok(())
}
