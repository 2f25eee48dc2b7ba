//! Sample boundary points deterministically and classify each one:
//! eigenvalues, signature, q-convexity margin, pseudoconvexity, Z(q).
//!
//! Run with: cargo run --example boundary_scan

use levikohn::levi::{classify_point, sample_boundary, DefiningFunction, FrameMode, RealBox};
use levikohn::parse::parse_polynomial;
use num_complex::Complex64;

fn main() -> levikohn::Result<()> {
    let src = "-x3 - z1*conj(z1)*z2*conj(z2) + (1/4)*(z1*conj(z1))^2 + (3/4)*(z2*conj(z2))^2";
    let d = DefiningFunction::new(parse_polynomial(src, 3)?)?;
    let q = 2;

    // classification at the origin first
    let origin = vec![Complex64::new(0.0, 0.0); 3];
    let rep = classify_point(&d, &origin, q, FrameMode::Projection, 1e-9)?;
    println!(
        "origin: eigenvalues {:?}, signature (+{} -{} 0:{}), Z({q}) = {}",
        rep.eigenvalues, rep.signature.0, rep.signature.1, rep.signature.2, rep.z_q
    );

    let out = sample_boundary(&d, &RealBox::cube(3, 0.8), 24, 7)?;
    if let Some(w) = &out.warning {
        println!("warning: {w}");
    }
    println!();
    println!("{} sampled boundary points (|r| <= 1e-12 each):", out.points.len());
    println!("{:>10} {:>10} {:>11} {:>8} {:>7} {:>6}", "lambda_1", "lambda_2", "q-margin", "psc", "q-cvx", "Z(q)");
    let mut min_margin = f64::INFINITY;
    let mut any_negative = false;
    for p in &out.points {
        let rep = classify_point(&d, p, q, FrameMode::Projection, 1e-9)?;
        min_margin = min_margin.min(rep.q_margin);
        any_negative |= rep.eigenvalues[0] < -1e-9;
        println!(
            "{:>10.4} {:>10.4} {:>11.3e} {:>8} {:>7} {:>6}",
            rep.eigenvalues[0],
            rep.eigenvalues[1],
            rep.q_margin,
            rep.pseudoconvex,
            rep.q_convex,
            rep.z_q
        );
    }
    println!();
    println!("minimum q={q} margin over samples: {min_margin:.3e}");
    println!("some point has a negative eigenvalue (not pseudoconvex): {any_negative}");
    Ok(())
}
