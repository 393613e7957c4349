//! Runs the full verification suite on a generated spectrum and prints
//! one report per check, then shows how a doctored spectrum (a fake
//! next eigenvalue pushed above its Yang bound) is caught with a
//! negative-slack witness.
//!
//! Run with: cargo run --example verify_theorems

use eigenbounds::{
    fd_laplacian_1d, run_suite, BoundProfile, IndexOrigin, Spectrum, SuiteConfig,
};

fn print_reports(reports: &[eigenbounds::CheckReport]) {
    for r in reports {
        println!(
            "  {:<28} pass={:<5} slack={:+.3e} tol={:.1e}",
            r.check, r.pass, r.slack, r.tolerance
        );
    }
}

fn main() {
    let profile = BoundProfile::classical_membrane(1);
    let spectrum = fd_laplacian_1d(std::f64::consts::PI, 499, 8).unwrap();
    let cfg = SuiteConfig::default();

    println!("FD interval spectrum, classical profile, m = 5:");
    let reports = run_suite(&profile, &spectrum, 5, &cfg).unwrap();
    print_reports(&reports);
    let all = reports.iter().all(|r| r.pass);
    println!("  => suite {}", if all { "PASSES" } else { "FAILS" });

    println!();
    println!("Doctored spectrum [1, 2, 4.5] (lambda_3 above the Yang bound 4.2247...):");
    let doctored = Spectrum::new(vec![1.0, 2.0, 4.5], IndexOrigin::One).unwrap();
    let profile2 = BoundProfile::classical_membrane(2);
    let reports = run_suite(&profile2, &doctored, 2, &cfg).unwrap();
    print_reports(&reports);
    let failing: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    println!("  => {} failing check(s); the p = 2 witness:", failing.len());
    for r in failing {
        println!("     {} slack={} witness={}", r.check, r.slack, r.witness);
    }
}
