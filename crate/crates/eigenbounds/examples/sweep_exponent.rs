//! Sweeps the bound over the exponent p across both regimes and prints
//! plot-ready CSV: sigma_p decreases on [0, 2] down to the Yang minimum
//! and sigma_tilde_p increases again beyond it, a V shape with its vertex
//! at p = 2.
//!
//! Run with: cargo run --example sweep_exponent

use eigenbounds::solvers::bound_at;
use eigenbounds::{BoundProfile, IndexOrigin, Spectrum};

fn main() {
    let profile = BoundProfile::classical_membrane(2);
    let spectrum = Spectrum::new(vec![1.0, 2.0, 2.8, 3.1], IndexOrigin::One).unwrap();
    let m = spectrum.len();

    println!("p,sigma");
    let mut k = 0;
    loop {
        let p = 0.25 * f64::from(k);
        if p > 4.0 {
            break;
        }
        match bound_at(&profile, &spectrum, m, p) {
            Ok(r) => println!("{p},{:.15}", r.value),
            Err(e) => eprintln!("p={p}: {e}"),
        }
        k += 1;
    }

    eprintln!();
    eprintln!("(m = 1 collapses the sweep to a flat line on [0, 2]: every");
    eprintln!(" sigma_p equals (1 + c) lambda_1.)");
    for p in [0.0, 0.5, 1.0, 1.5, 2.0] {
        let r = bound_at(&profile, &spectrum, 1, p).unwrap();
        eprintln!(" p={p:<4} sigma={:.15}", r.value);
    }
}
