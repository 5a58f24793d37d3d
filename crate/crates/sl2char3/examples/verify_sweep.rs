//! A small cross-check of the two routes, the library form of
//! `sl2char3 verify`.
//!
//! ```bash
//! cargo run --release --example verify_sweep
//! ```

use sl2char3::cli::verify::{verify, Scope, VerifyConfig};
use sl2char3::oracle::Options;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = VerifyConfig {
        degree: 1,
        scope: Scope::Table(3),
        seed: 0,
        jobs: None,
        options: Options::default(),
        cap: 6,
        timings: false,
    };
    let report = verify(&cfg)?;
    print!("{}", report.render());

    let literal = VerifyConfig {
        scope: Scope::Table(4),
        options: Options { paper_literal: true },
        ..cfg
    };
    let report = verify(&literal)?;
    println!();
    print!("{}", report.render());
    println!("passed: {}", report.passed());
    Ok(())
}
