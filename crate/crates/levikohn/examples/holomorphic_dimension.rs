//! Holomorphic dimension of varieties in a boundary: the shrinking-radius
//! scan of dim_C(T^C V intersect Ker L) with its per-radius audit table.
//!
//! Run with: cargo run --example holomorphic_dimension

use levikohn::levi::DefiningFunction;
use levikohn::parse::parse_polynomial;
use levikohn::variety::{holomorphic_dimension, levi_kernel_at, VarietyIdeal};
use num_complex::Complex64;

fn scan(
    d: &DefiningFunction,
    v: &VarietyIdeal,
    z0: &[Complex64],
    label: &str,
) -> levikohn::Result<()> {
    let hd = holomorphic_dimension(d, v, z0, 0.5, 16, 11, 1e-7)?;
    println!("{label}");
    println!("  {:>9} {:>8} {:>8}", "radius", "samples", "min dim");
    for row in &hd.per_radius {
        println!(
            "  {:>9.5} {:>8} {:>8}",
            row.radius, row.samples_used, row.min_dim
        );
    }
    println!("  holomorphic dimension: {}", hd.value);
    if hd.rank_jump_detected {
        println!("  note: Jacobian rank jumped across samples; non-modal points excluded");
    }
    println!();
    Ok(())
}

fn main() -> levikohn::Result<()> {
    // Levi-flat boundary: the kernel is everything, hol dim is n - 1
    let d = DefiningFunction::new(parse_polynomial("2*x2", 2)?)?;
    let v = VarietyIdeal::new(vec![parse_polynomial("x2", 2)?])?;
    let origin2 = vec![Complex64::new(0.0, 0.0); 2];
    println!("Levi kernel at 0 has dimension {}", levi_kernel_at(&d, &origin2, 1e-9)?.len());
    scan(&d, &v, &origin2, "V = bOmega for r = 2 x2 (flat)")?;

    // strictly pseudoconvex: kernel trivial, hol dim 0
    let ball = DefiningFunction::new(parse_polynomial("z1*conj(z1) + z2*conj(z2) - 1", 2)?)?;
    let vb = VarietyIdeal::new(vec![parse_polynomial("z1*conj(z1) + z2*conj(z2) - 1", 2)?])?;
    let p = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    scan(&ball, &vb, &p, "V = bOmega for the unit ball (strictly pseudoconvex)")?;

    // one flat complex line inside an otherwise curved boundary
    let d3 = DefiningFunction::new(parse_polynomial("-x3 + z2*conj(z2)", 3)?)?;
    let v3 = VarietyIdeal::new(vec![
        parse_polynomial("x2", 3)?,
        parse_polynomial("y2", 3)?,
        parse_polynomial("x3", 3)?,
    ])?;
    let origin3 = vec![Complex64::new(0.0, 0.0); 3];
    scan(&d3, &v3, &origin3, "V = {z2 = 0, x3 = 0} in r = -x3 + |z2|^2")?;
    Ok(())
}
