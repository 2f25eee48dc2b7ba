//! Order of tangency of parametrized complex curves to a boundary: the
//! composition r(phi(w)) is expanded exactly, so "contained in the boundary"
//! is an exact zero, not a numerically small residual.
//!
//! Run with: cargo run --example tangency_order

use levikohn::levi::DefiningFunction;
use levikohn::parse::{parse_map_component, parse_polynomial};
use levikohn::variety::{tangency_order, HoloMap, TangencyOrder};

fn show(d: &DefiningFunction, label: &str, components: &[&str]) -> levikohn::Result<()> {
    let comps: levikohn::Result<Vec<_>> = components
        .iter()
        .map(|c| parse_map_component(c, 1))
        .collect();
    let phi = HoloMap::new(1, comps?)?;
    match tangency_order(d, &phi, 24)? {
        TangencyOrder::IdenticallyZero => {
            println!("{label}: r(phi(w)) = 0 exactly -- the image lies in the boundary")
        }
        TangencyOrder::Finite(k) => println!("{label}: tangent of order {k}"),
        TangencyOrder::AboveMax(cap) => {
            println!("{label}: no term up to degree {cap} (inconclusive)")
        }
    }
    Ok(())
}

fn main() -> levikohn::Result<()> {
    let src = "-x3 - z1*conj(z1)*z2*conj(z2) + (1/4)*(z1*conj(z1))^2 + (3/4)*(z2*conj(z2))^2";
    let d = DefiningFunction::new(parse_polynomial(src, 3)?)?;
    println!("r = {}", d.r());
    println!();

    // the diagonal curve: the |z1|^2 |z2|^2 cross term exactly cancels the
    // quartic terms along z1 = z2
    show(&d, "phi(w) = (w, w, 0)", &["w1", "w1", "0"])?;
    // a coordinate axis touches at order 4
    show(&d, "phi(w) = (w, 0, 0)", &["w1", "0", "0"])?;
    show(&d, "phi(w) = (0, w, 0)", &["0", "w1", "0"])?;
    // scaling the diagonal breaks the cancellation
    show(&d, "phi(w) = (w, 2w, 0)", &["w1", "2*w1", "0"])?;

    println!();
    let ball = DefiningFunction::new(parse_polynomial("z1*conj(z1) + z2*conj(z2) - 1", 2)?)?;
    println!("r = {}", ball.r());
    let comps = vec![
        parse_map_component("1 + w1", 1)?,
        parse_map_component("0", 1)?,
    ];
    let phi = HoloMap::new(1, comps)?;
    match tangency_order(&ball, &phi, 24)? {
        TangencyOrder::Finite(k) => {
            println!("phi(w) = (1 + w, 0): order {k} -- transverse at the base point")
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
