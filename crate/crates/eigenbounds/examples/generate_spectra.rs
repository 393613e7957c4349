//! Exercises every spectrum generator and compares the low modes against
//! analytic references where they exist.
//!
//! Run with: cargo run --example generate_spectra

use std::f64::consts::PI;

use eigenbounds::{
    box_spectrum, fd_laplacian_1d, fd_laplacian_2d_kronecker, inhomogeneous_fd_1d,
    sturm_liouville_fd, SpectrumSource,
};

fn main() {
    println!("Unit square, analytic: pi^2 (j^2 + k^2)");
    let s = box_spectrum(&[1.0, 1.0], 6).unwrap();
    for (i, v) in s.values().iter().enumerate() {
        println!("  lambda_{} = {v:.12}  ({:.6} pi^2)", i + 1, v / (PI * PI));
    }

    println!();
    println!("FD Laplacian on (0, pi), 199 points: converging to k^2");
    let s = fd_laplacian_1d(PI, 199, 5).unwrap();
    for (i, v) in s.values().iter().enumerate() {
        let exact = ((i + 1) * (i + 1)) as f64;
        println!("  lambda_{} = {v:.10}  (exact {exact}, error {:.2e})", i + 1, v - exact);
    }

    println!();
    println!("FD Laplacian on the unit square, 100x100 grid vs analytic:");
    let fd = fd_laplacian_2d_kronecker(1.0, 1.0, 100, 100, 4).unwrap();
    let exact = box_spectrum(&[1.0, 1.0], 4).unwrap();
    for (f, e) in fd.values().iter().zip(exact.values()) {
        println!("  fd {f:.6}  analytic {e:.6}  rel {:.2e}", (f - e) / e);
    }

    println!();
    println!("Sturm-Liouville -(p u')' + q u with p = 1 + x^2 on (0, 1):");
    let s = sturm_liouville_fd(|x| 1.0 + x * x, |_| 0.0, (0.0, 1.0), 999, 4).unwrap();
    println!("  {:?}", s.values());

    println!();
    println!("Inhomogeneous membrane -u'' = lambda (1+x) u on (0, 1):");
    let s = inhomogeneous_fd_1d(|x| 1.0 + x, (0.0, 1.0), 999, 3).unwrap();
    println!("  {:?}", s.values());
    println!(
        "  ground state sits between the uniform-density brackets {:.4} and {:.4}",
        PI * PI / 2.0,
        PI * PI
    );

    println!();
    println!("The same sources are file-driven through SpectrumSource JSON:");
    let src: SpectrumSource = serde_json::from_str(
        r#"{"kind":"sturm_liouville_fd","p":"const:1","q":"const:5",
            "interval":[0.0,3.141592653589793],"grid":499,"count":3}"#,
    )
    .unwrap();
    let s = src.generate().unwrap();
    println!("  {} -> {:?}", serde_json::to_string(&src).unwrap(), s.values());
}
