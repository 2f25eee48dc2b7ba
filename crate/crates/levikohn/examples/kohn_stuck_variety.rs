//! A chain that stabilizes instead of certifying: on the flat half-space
//! boundary the ideal stops growing, the run reports the stuck variety, and
//! the holomorphic-dimension scan confirms the variety carries complex
//! directions inside the Levi kernel (the dichotomy's other branch).
//!
//! Run with: cargo run --example kohn_stuck_variety

use levikohn::kohn::{run_chain, ChainConfig};
use levikohn::levi::DefiningFunction;
use levikohn::parse::parse_polynomial;
use levikohn::variety::{holomorphic_dimension, VarietyIdeal};
use num_complex::Complex64;

fn main() -> levikohn::Result<()> {
    let q = 1;
    let d = DefiningFunction::new(parse_polynomial("2*x2", 2)?)?;
    println!("r = {}  (half-space boundary, Levi-flat)", d.r());

    let run = run_chain(&d, q, 8, &ChainConfig::default()).expect("chain run");
    println!(
        "status: {} at step {:?}",
        run.state.status.label(),
        run.state.status.step()
    );
    println!("ideal generators when the chain stabilized:");
    for g in &run.state.ideal.generators {
        println!("  {g}");
    }

    let vgens = run.state.ideal.variety_generators();
    println!("stuck variety V (real equations):");
    for g in &vgens {
        println!("  {g} = 0");
    }

    let v = VarietyIdeal::new(vgens)?;
    let origin = vec![Complex64::new(0.0, 0.0); 2];
    let hd = holomorphic_dimension(&d, &v, &origin, 0.5, 16, 11, 1e-7)?;
    println!();
    println!("holomorphic dimension of V at 0: {}", hd.value);
    println!("per-radius scan (radius, samples, min dim):");
    for row in &hd.per_radius {
        println!(
            "  {:>8.5}  {:>3}  {}",
            row.radius, row.samples_used, row.min_dim
        );
    }
    println!();
    if hd.value >= q {
        println!(
            "hol dim {} >= q = {q}: the variety explains the stuck chain; the",
            hd.value
        );
        println!("boundary carries complex directions that no multiplier can cut.");
    }
    Ok(())
}
