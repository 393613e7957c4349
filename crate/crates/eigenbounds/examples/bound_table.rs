//! Computes every bound for `lambda_{m+1}` on a small spectrum and on an
//! analytic box spectrum, showing how the family members relate:
//! PPW >= HP >= Yang 2 >= Yang 1, then sigma_tilde_p growing again for
//! p > 2.
//!
//! Run with: cargo run --example bound_table

use eigenbounds::solvers::{bound_table, hp_bound, ppw_bound, yang1_bound, yang2_bound};
use eigenbounds::{box_spectrum, BoundProfile, IndexOrigin, Spectrum};

fn print_table(title: &str, profile: &BoundProfile, spectrum: &Spectrum, m: usize) {
    println!("{title}");
    println!("  profile: {} (c={}, w(l)={}l+{})", profile.name, profile.c, profile.a, profile.b);
    println!("  first {m} eigenvalues: {:?}", &spectrum.values()[..m]);

    for (label, result) in [
        ("PPW   ", ppw_bound(profile, spectrum, m)),
        ("HP    ", hp_bound(profile, spectrum, m)),
        ("Yang 2", yang2_bound(profile, spectrum, m)),
        ("Yang 1", yang1_bound(profile, spectrum, m)),
    ] {
        let r = result.expect("closed-form bound");
        println!("  {label}  {:<22.15} residual {:.1e}", r.value, r.residual);
    }

    let rows = bound_table(profile, spectrum, m, &[0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0])
        .expect("bound table");
    println!("  generic solver over the p-family:");
    for row in &rows {
        match (&row.p, &row.result) {
            (None, Ok(r)) => println!("    p=--    {:<22.15} [{}]", r.value, r.method),
            (Some(p), Ok(r)) => println!(
                "    p={p:<5} {:<22.15} [{}] residual {:.1e}, {} iterations",
                r.value, r.method, r.residual, r.iterations
            ),
            (p, Err(e)) => println!("    p={p:?}: failed: {e}"),
        }
    }
    println!();
}

fn main() {
    let profile = BoundProfile::classical_membrane(2);
    let spectrum = Spectrum::new(vec![1.0, 2.0], IndexOrigin::One).unwrap();
    print_table("Reference spectrum [1, 2]:", &profile, &spectrum, 2);

    // Unit square: lambda_k = pi^2 (j^2 + k^2), so the true lambda_6 is
    // known and every bound must lie above it.
    let square = box_spectrum(&[1.0, 1.0], 8).unwrap();
    print_table("Unit square (analytic):", &profile, &square, 5);
    println!(
        "  true lambda_6 = {:.15} (every bound above must dominate it)",
        square.values()[5]
    );
}
