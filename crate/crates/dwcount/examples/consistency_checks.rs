//! The verification machinery: structural consistency checks on the
//! exact pipeline, extended with the brute-force and floating-point
//! oracles, across a small randomized family.
//!
//! Run with: cargo run -p dwcount --example consistency_checks

use dwcount::{cross_validate, validate_seifert, verify_consistency, Result, WorkBudget};

fn main() -> Result<()> {
    let budget = WorkBudget::default();

    let manifold = validate_seifert(0, &[(3, 1), (5, 2)])?;
    let report = verify_consistency(&manifold, 4, &budget)?;
    println!("{manifold}, m=4, structural checks:");
    println!("  hom_count            = {}", report.hom_count);
    println!("  sum_of_counts        = {}", report.sum_of_counts);
    println!("  totals_match         = {}", report.totals_match);
    println!("  trivial_class_check  = {}", report.trivial_class_check);
    println!("  nonnegativity        = {}", report.nonnegativity);
    println!("  roundtrip            = {}", report.roundtrip);
    println!("  conjugation_symmetry = {}", report.conjugation_symmetry);
    assert!(report.all_pass());

    // the oracle-extended report adds enumeration and float agreement
    let report = cross_validate(&manifold, 4, &budget)?;
    println!("  oracle_hom_match     = {:?}", report.oracle_hom_match);
    println!("  float_agreement      = {:?}", report.float_agreement);
    assert!(report.all_pass());

    // a pseudo-random family, all of which must pass every check
    println!("\nsweep:");
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move |bound: u64| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state % bound
    };
    for _ in 0..12 {
        let genus = next(3) as i64;
        let r = next(4) as usize;
        let pairs: Vec<(i64, i64)> = (0..r)
            .map(|_| (next(6) as i64 + 1, next(13) as i64 - 6))
            .collect();
        let manifold = validate_seifert(genus, &pairs)?;
        let m = next(7) + 2;
        let report = cross_validate(&manifold, m, &budget)?;
        println!(
            "  {manifold} m={m}: {} (hom = {})",
            if report.all_pass() { "ok" } else { "FAILED" },
            report.hom_count
        );
        assert!(report.all_pass(), "{:?}", report.failures);
    }
    Ok(())
}
