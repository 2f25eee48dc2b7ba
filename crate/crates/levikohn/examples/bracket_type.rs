//! Lie-bracket geometry of submanifolds: the bracket flag of a spanning
//! family of the complex tangent distribution, finite bracket type, and
//! involutivity, on three contrasting manifolds.
//!
//! Run with: cargo run --example bracket_type

use levikohn::levi::RealBox;
use levikohn::parse::parse_polynomial;
use levikohn::poly::HermitianPolynomial;
use levikohn::rational::GaussianRational;
use levikohn::variety::{
    bracket_flag, involutivity_check, lie_bracket, FieldKind, PolyVectorField, VarietyIdeal,
};
use num_complex::Complex64;

fn field(n: usize, coeffs: Vec<HermitianPolynomial>) -> PolyVectorField {
    PolyVectorField::new(FieldKind::Real, n, coeffs).expect("field")
}

fn main() -> levikohn::Result<()> {
    let n = 2;
    let origin = vec![Complex64::new(0.0, 0.0); n];
    let p = |s: &str| parse_polynomial(s, n).unwrap();
    let zero = HermitianPolynomial::zero(n);
    let one = HermitianPolynomial::one(n);
    let two = GaussianRational::from_int(2);

    // M = {x2 = |z1|^2}: the model CR manifold of hypersurface type.
    // X, Y are the real and imaginary parts of the CR field d/dz1 + 2 conj(z1) d/dz2.
    let m = VarietyIdeal::new(vec![p("x2 - z1*conj(z1)")])?;
    let x = field(n, vec![one.clone(), p("x1").scale(&two), zero.clone(), p("y1").scale(&two).negate()]);
    let y = field(n, vec![zero.clone(), p("y1").scale(&two), one.clone(), p("x1").scale(&two)]);
    let b = lie_bracket(&x, &y)?;
    let cells: Vec<String> = b.coefficients.iter().map(|c| c.to_string()).collect();
    println!("M = {{x2 = |z1|^2}}, CR frame X, Y");
    println!("[X, Y] = ({})", cells.join(", "));
    let flag = bracket_flag(&[x.clone(), y.clone()], &m, &origin, 4, 100_000)?;
    println!(
        "flag dims {:?}, manifold dim {}, finite bracket type: {}",
        flag.dims, flag.manifold_dim, flag.finite_type
    );
    let invol = involutivity_check(&[x, y], &m, &RealBox::cube(n, 0.8), 12, 5, 1e-7)?;
    println!("involutive: {invol}  (one bracket escapes the span)");
    println!();

    // a complex line: the distribution is the whole tangent bundle already,
    // brackets contribute nothing
    let line = VarietyIdeal::new(vec![p("x2"), p("y2")])?;
    let ex = field(n, vec![one.clone(), zero.clone(), zero.clone(), zero.clone()]);
    let ey = field(n, vec![zero.clone(), zero.clone(), one.clone(), zero.clone()]);
    let flag = bracket_flag(&[ex.clone(), ey.clone()], &line, &origin, 4, 100_000)?;
    println!("M = {{z2 = 0}} (a complex line), coordinate frame");
    println!(
        "flag dims {:?}, manifold dim {}, finite bracket type: {}",
        flag.dims, flag.manifold_dim, flag.finite_type
    );
    let invol = involutivity_check(&[ex, ey], &line, &RealBox::cube(n, 0.8), 12, 5, 1e-7)?;
    println!("involutive: {invol}");
    println!();

    // a totally real line: no complex tangent directions at all
    let real_line = VarietyIdeal::new(vec![p("y1"), p("x2"), p("y2")])?;
    let flag = bracket_flag(&[], &real_line, &origin, 4, 100_000)?;
    println!("M = {{y1 = x2 = y2 = 0}} (totally real)");
    println!(
        "flag dims {:?}, manifold dim {}, finite bracket type: {}",
        flag.dims, flag.manifold_dim, flag.finite_type
    );
    Ok(())
}
