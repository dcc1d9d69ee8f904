//! Spectrum of ZZ' via the smaller Gram side, and Weyl's inequality for the
//! split ZZ' = diag(ZZ') + off-diagonal part.
//!
//! cargo run --example gram_spectrum

use heavycov::matgen::generate_matrix;
use heavycov::spectra::{gram_eigs, spectral_norm, weyl_gap};
use heavycov::{EnsembleConfig, GrowthRule, TailModel};
use nalgebra::DMatrix;

fn main() -> heavycov::Result<()> {
    for beta in [0.8, 1.0, 1.2] {
        let cfg = EnsembleConfig::new(300, GrowthRule::new(beta, 0.5)?, TailModel::paper(1.6)?, 0xC0FFEE)?;
        let z = generate_matrix(&cfg, 0);
        let eig = gram_eigs(&z, true)?;
        let top: Vec<String> = eig.values[..4].iter().map(|l| format!("{:.4}", l / cfg.a_np_sq())).collect();
        println!("beta = {beta}: {}x{} matrix, top eigenvalues / a_np^2: {}", z.nrows(), z.ncols(), top.join(" "));

        // orthonormal eigenvectors even when the n x n side was decomposed
        let v = eig.vectors.as_ref().unwrap();
        let defect = (v.transpose() * v - DMatrix::identity(z.nrows(), z.nrows())).amax();
        println!("  max |V'V - I| = {defect:.2e}");

        let g = &z * z.transpose();
        let d = DMatrix::from_diagonal(&g.diagonal());
        let off = &g - &d;
        let w = weyl_gap(&d, &off)?;
        println!(
            "  max |lambda_i(ZZ') - lambda_i(diag)| = {:.4e}  <=  ||offdiag|| = {:.4e}  ({})",
            w.max_shift,
            w.bound,
            if w.holds() { "holds" } else { "VIOLATED" }
        );
        println!("  ||Z||_2^2 / a_np^2 = {:.4}", spectral_norm(&z)?.powi(2) / cfg.a_np_sq());
    }
    Ok(())
}
