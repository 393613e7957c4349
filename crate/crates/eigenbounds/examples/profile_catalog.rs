//! Builds every cataloged problem profile and prints its reduced
//! parameters (coefficient c, affine weight, index origin), plus the
//! regime coefficient K(p) at a few exponents.
//!
//! Run with: cargo run --example profile_catalog

use eigenbounds::BoundProfile;

fn main() {
    let profiles: Vec<BoundProfile> = vec![
        BoundProfile::classical_membrane(1),
        BoundProfile::classical_membrane(2),
        BoundProfile::classical_membrane(3),
        BoundProfile::inhomogeneous_membrane(2, 1.0, 4.0).unwrap(),
        BoundProfile::sphere_cap_2d(std::f64::consts::FRAC_PI_2).unwrap(),
        BoundProfile::sphere_n(2),
        BoundProfile::sphere_n(3),
        BoundProfile::hyperbolic_2d(4.0, 1.0).unwrap(),
        BoundProfile::minimal_submanifold(2),
        BoundProfile::homogeneous_manifold(1.0).unwrap(),
        BoundProfile::schrodinger_like(3, 1.0),
        BoundProfile::elliptic_constant_coeff(&[4.0, 0.0, 0.0, 1.0], &[2.0, 0.0]).unwrap(),
        BoundProfile::sturm_liouville(|x| 1.0 + x * x, |_| 0.0, (0.0, 1.0), 10_000).unwrap(),
    ];

    println!(
        "{:<44} {:>10} {:>7} {:>10} {:>7} {:>8} {:>8}",
        "profile", "c", "a", "b", "origin", "K(1)", "K(4)"
    );
    for p in &profiles {
        println!(
            "{:<44} {:>10.6} {:>7.3} {:>10.6} {:>7} {:>8.4} {:>8.4}",
            p.name,
            p.c,
            p.a,
            p.b,
            u8::from(p.index_origin),
            p.coefficient(1.0),
            p.coefficient(4.0),
        );
    }

    println!();
    println!("Sphere cap c approaches the flat value 2 as the cap shrinks:");
    for theta in [1.0, 0.1, 0.01, 1e-5] {
        let p = BoundProfile::sphere_cap_2d(theta).unwrap();
        println!("  theta = {theta:<8} c = {:.12}", p.c);
    }

    println!();
    println!("JSON forms (raw and named-constructor) both round-trip:");
    let p = BoundProfile::schrodinger_like(3, 1.0);
    println!("  {}", serde_json::to_string(&p).unwrap());
    let from_kind: BoundProfile =
        serde_json::from_str(r#"{"kind": "schrodinger", "n": 3, "m": 1.0}"#).unwrap();
    println!("  rebuilt from kind form: c = {}, b = {}", from_kind.c, from_kind.b);
}
