//! Coverage and ASE versus inter-site distance for the default setup.
//!
//! Run with `cargo run --release --example delta_profile`.

use ceilsim::engine::{run_batch, SimulationConfig};

fn main() {
    let mut cfg = SimulationConfig::baseline();
    cfg.trials = 4000;
    println!("{:>8} {:>10} {:>12}", "delta_m", "coverage", "ase");
    for delta in [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0] {
        cfg.delta = delta;
        let row = run_batch(&cfg).unwrap();
        println!("{delta:>8} {:>10.4} {:>12.6}", row.coverage, row.ase);
    }
}
