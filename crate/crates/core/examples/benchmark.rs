//! Runs a benchmark from a spec string, as `gvsql --bench` does, and prints
//! the CSV report.
//!
//!     cargo run --release --example benchmark -- kind=reach-filtered,n=2000,m=20000

use gvsql::bench::{self, BenchSpec};

fn main() {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "kind=reach,n=2000,m=20000,queries=20".into());
    let spec = match BenchSpec::parse(&arg) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    match bench::run(&spec) {
        Ok(report) => {
            print!("{}", report.to_csv());
            if let Some(m) = report.mismatch() {
                eprintln!("checksum mismatch: {m}");
                std::process::exit(3);
            }
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    }
}
