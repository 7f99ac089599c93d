//! Counting based homotopy classes of mappings by degree: the count
//! table per residue class, single-degree queries at arbitrary integers,
//! and the periodicity guarantee.
//!
//! Run with: cargo run -p dwcount --example degree_counts

use dwcount::{degree_count, degree_count_table, validate_seifert, Result, WorkBudget};

fn main() -> Result<()> {
    let budget = WorkBudget::default();

    // Which degrees admit mappings RP^3 -> RP^3? Every one, one class each.
    let rp3 = validate_seifert(0, &[(1, 2)])?;
    let t = degree_count_table(&rp3, 2, &budget)?;
    println!("{rp3}, m=2:");
    for (k, c) in t.counts().iter().enumerate() {
        println!("  degrees = {k} (mod 2): {c} class(es)");
    }

    // Mappings out of S^3 exist only in degrees divisible by m.
    let sphere = validate_seifert(0, &[(1, 1)])?;
    for m in [3u64, 4, 5] {
        let t = degree_count_table(&sphere, m, &budget)?;
        let row: Vec<String> = t.counts().iter().map(|c| c.to_string()).collect();
        println!("{sphere}, m={m}: counts = [{}]", row.join(", "));
    }

    // A richer manifold; queries reduce modulo m, negative degrees included.
    let manifold = validate_seifert(1, &[(2, 1), (5, 3)])?;
    let m = 5;
    let t = degree_count_table(&manifold, m, &budget)?;
    println!("\n{manifold}, m={m}:");
    let row: Vec<String> = t.counts().iter().map(|c| c.to_string()).collect();
    println!("  table      = [{}]", row.join(", "));
    println!("  total      = {} (= #hom)", t.total());
    for k in [-7i64, 3, 13, 10_000_003] {
        println!("  #deg^-1({k}) = {}", degree_count(&manifold, m, k, &budget)?);
    }
    // the same residue class always answers the query
    assert_eq!(t.count(3), t.count(13));
    assert_eq!(t.count(3), t.count(3 - 2 * m as i64));
    Ok(())
}
