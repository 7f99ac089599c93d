//! Exact invariant tables l -> Z^l(M) for a few Seifert manifolds,
//! printed alongside their complex approximations, plus the two
//! structural facts worth seeing once: m * Z^0 counts homomorphisms,
//! and Z^(m-l) is the conjugate of Z^l.
//!
//! Run with: cargo run -p dwcount --example dw_invariants

use dwcount::{count_homs, dw_all, validate_seifert, Result, WorkBudget};
use num_bigint::BigInt;

fn main() -> Result<()> {
    let budget = WorkBudget::default();
    let cases = [
        (validate_seifert(0, &[(1, 1)])?, 5u64),  // S^3 -> lens space target
        (validate_seifert(0, &[(1, 2)])?, 2),      // RP^3
        (validate_seifert(0, &[(2, 1), (3, 1), (5, 1)])?, 6),
        (validate_seifert(1, &[(3, 2)])?, 4),
    ];

    for (manifold, m) in &cases {
        let m = *m;
        println!("{manifold}, group Z/{m}:");
        let table = dw_all(manifold, m, &budget)?;
        for l in 0..m {
            let v = table.get(l);
            let a = v.approx();
            println!("  Z^{l} = {:<18} ~ {:.6}{:+.6}i", v.reduce().to_string(), a.re, a.im);
        }

        let hom = count_homs(manifold, m)?;
        let recovered = table.get(0).scale(&BigInt::from(m)).to_integer()?;
        println!("  m * Z^0 = {recovered} = #hom(pi_1, Z/{m}) = {hom}");

        let sym = (1..m).all(|l| table.get(m - l).reduce() == table.get(l).conjugate().reduce());
        println!("  conjugation symmetry Z^(m-l) = conj(Z^l): {sym}\n");
        assert!(sym);
    }
    Ok(())
}
