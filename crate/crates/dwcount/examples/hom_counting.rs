//! First-homology bookkeeping: presentation matrix, Smith normal form,
//! and the closed-form homomorphism count, cross-checked against brute
//! enumeration.
//!
//! Run with: cargo run -p dwcount --example hom_counting

use dwcount::{
    brute_count_homs, count_homs, presentation_matrix, smith_normal_form, validate_seifert,
    Result, WorkBudget,
};

fn main() -> Result<()> {
    let budget = WorkBudget::default();
    let manifolds = [
        validate_seifert(0, &[(1, 2)])?,          // RP^3
        validate_seifert(0, &[(2, 1), (3, 1), (5, -4)])?,
        validate_seifert(1, &[])?,                // base contributes a free part
        validate_seifert(2, &[(4, 3)])?,
    ];

    for manifold in &manifolds {
        println!("{manifold}");
        let pm = presentation_matrix(manifold);
        println!("  relation matrix (free rank {}):", pm.free_rank);
        for row in &pm.entries {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            println!("    [{}]", cells.join(" "));
        }
        let snf = smith_normal_form(&pm.entries);
        let diag: Vec<String> = snf.diag.iter().map(|d| d.to_string()).collect();
        println!("  invariant factors: ({})", diag.join(", "));

        for m in [2u64, 3, 4, 5, 6] {
            let closed = count_homs(manifold, m)?;
            let brute = brute_count_homs(manifold, m, &budget)?;
            assert_eq!(closed, brute);
            println!("  #hom(pi_1, Z/{m}) = {closed}");
        }
        println!();
    }
    Ok(())
}
