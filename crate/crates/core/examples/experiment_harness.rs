//! Driving the replication engine from code: build a spec, run it, write the
//! CSV records and JSON summary, and check the output digest.
//!
//! cargo run --release --example experiment_harness [out_dir]

use std::path::PathBuf;

use heavycov::harness::output::{digest, records_csv, summary_json, write_outputs};
use heavycov::harness::{run, ExperimentKind, ExperimentSpec, OutputFormat};
use heavycov::{EnsembleConfig, GrowthRule, TailModel};

fn main() -> heavycov::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("heavycov-example"));

    let ensemble = EnsembleConfig::new(400, GrowthRule::new(1.0, 0.2)?, TailModel::paper(1.6)?, 0xC0FFEE)?;
    let mut spec = ExperimentSpec::new(ExperimentKind::Approx, ensemble, 64);
    spec.bins = 20;
    spec.validate()?;

    // identical bytes whatever the worker count
    let mut digests = Vec::new();
    for threads in [1, 4] {
        spec.threads = Some(threads);
        let out = run(&spec)?;
        let mut bytes = records_csv(&spec, &out)?;
        bytes.extend(summary_json(&spec, &out, false)?);
        digests.push(digest(&bytes));
    }
    println!("sha256 with 1 thread : {}", digests[0]);
    println!("sha256 with 4 threads: {}", digests[1]);

    spec.threads = None;
    let out = run(&spec)?;
    for s in &out.summary {
        println!("{:<14} n={} mean={:.5} median={:.5}", s.statistic, s.count, s.mean, s.quantiles.q50);
    }

    spec.out = Some(dir.join("approx.csv"));
    for path in write_outputs(&spec, &out)? {
        println!("wrote {}", path.display());
    }
    spec.format = OutputFormat::Json;
    spec.out = Some(dir.join("approx.json"));
    for path in write_outputs(&spec, &out)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
