//! A tour of the exact cyclotomic arithmetic: root powers, ring
//! operations, canonical reduction, integer extraction, conjugation,
//! and the cyclotomic polynomials backing it all.
//!
//! Run with: cargo run -p dwcount --example cyclotomic_ring

use dwcount::{cyclotomic_polynomial, euler_phi, CycloValue, Result};
use num_bigint::BigInt;

fn main() -> Result<()> {
    // zeta_12 and friends
    let z = CycloValue::root_power(12, 1)?;
    let z4 = CycloValue::root_power(12, 4)?;

    let sum = z.add(&z4)?;
    println!("zeta + zeta^4        = {}", sum.reduce());
    println!("(zeta + zeta^4)^2    = {}", sum.mul(&sum)?.reduce());
    println!("conj(zeta + zeta^4)  = {}", sum.conjugate().reduce());
    println!("approx               = {}", sum.approx());

    // a full orbit collapses to zero, exactly
    let orbit = (0..12).try_fold(CycloValue::zero(12)?, |acc, e| {
        acc.add(&CycloValue::root_power(12, e)?)
    })?;
    println!("sum of all 12th roots = {}", orbit.reduce());
    assert_eq!(orbit.to_integer()?, BigInt::from(0));

    // semantic equality sees through representation differences
    let minus_one = CycloValue::from_integer(12, -1)?;
    let z6 = CycloValue::root_power(12, 6)?;
    assert!(z6.semantically_equal(&minus_one)?);
    println!("zeta^6 == -1: confirmed");

    // the polynomials that define the canonical form
    println!("\nfirst cyclotomic polynomials (little-endian coefficients):");
    for n in 1..=12u64 {
        let phi = cyclotomic_polynomial(n)?;
        let coeffs: Vec<String> = phi.iter().map(|c| c.to_string()).collect();
        println!("  Phi_{n:<2} (degree {:>2}) = [{}]", euler_phi(n), coeffs.join(", "));
    }
    Ok(())
}
