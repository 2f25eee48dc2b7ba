//! Run the multiplier-ideal chain on 1-forms for two strictly and weakly
//! pseudoconvex domains, print the certified step, and replay the
//! certificate: every recorded minor, every closure identity, and the
//! cofactor witness for 1.
//!
//! Run with: cargo run --example kohn_certificate

use levikohn::kohn::{run_chain, verify_trace, ChainConfig};
use levikohn::levi::DefiningFunction;
use levikohn::parse::parse_polynomial;
use levikohn::poly::HermitianPolynomial;

fn demo(src: &str, n: usize, q: usize) -> levikohn::Result<()> {
    let d = DefiningFunction::new(parse_polynomial(src, n)?)?;
    println!("r = {}", d.r());
    let run = run_chain(&d, q, 8, &ChainConfig::default()).expect("chain run");
    println!("status: {} at step {:?}", run.state.status.label(), run.state.status.step());
    println!("final generators:");
    for g in &run.state.ideal.generators {
        println!("  {g}");
    }
    if run.trace.heuristic_fired {
        println!("radical heuristic fired: a generator split as a sum of norm-squares");
    }
    if let Some(witness) = &run.trace.one_witness {
        println!("certificate: 1 = sum of cofactor * generator with cofactors");
        let mut acc = HermitianPolynomial::zero(n);
        for (c, g) in witness.iter().zip(&run.state.ideal.generators) {
            if !c.is_zero() {
                println!("  ({c}) * ({g})");
            }
            acc = acc.add(&c.mul(g));
        }
        println!("recombined product-sum: {acc}");
        assert_eq!(acc, HermitianPolynomial::one(n));
    }
    verify_trace(&run)?;
    println!("trace replay: all minors, closure identities and witnesses verify");
    println!();
    Ok(())
}

fn main() -> levikohn::Result<()> {
    println!("== unit ball in C^2, q = 1 (strictly pseudoconvex) ==");
    demo("z1*conj(z1) + z2*conj(z2) - 1", 2, 1)?;

    println!("== |z1|^2 + |z2|^4 = 1, q = 1 (weakly pseudoconvex circle) ==");
    demo("z1*conj(z1) + (z2*conj(z2))^2 - 1", 2, 1)?;

    println!("== mixed-signature boundary in C^3, q = 2 ==");
    demo(
        "-x3 - z1*conj(z1)*z2*conj(z2) + (1/4)*(z1*conj(z1))^2 + (3/4)*(z2*conj(z2))^2",
        3,
        2,
    )?;
    Ok(())
}
