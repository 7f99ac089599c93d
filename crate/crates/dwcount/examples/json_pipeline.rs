//! Programmatic use of the JSON machinery behind the CLI: parse the
//! textual Seifert notation, compute the full result bundle, and emit
//! the line-oriented JSON consumed by downstream tooling.
//!
//! Run with: cargo run -p dwcount --example json_pipeline

use dwcount::cli::{compute_bundle, emit_json, parse_seifert};
use dwcount::{Result, WorkBudget};

fn main() -> Result<()> {
    let budget = WorkBudget::default();
    let requests = [
        ("MO(0;(1,2))", 2u64),
        ("MO(0;(1,1))", 4),
        ("MO(1;(3,-2))", 3),
    ];

    for (text, m) in requests {
        let manifold = parse_seifert(text)?;
        let bundle = compute_bundle(&manifold, m, false, &budget)?;
        println!("{}", emit_json(&bundle));
    }

    // the same format the `dwcount batch` subcommand streams, one JSON
    // object per input line:
    //
    //   printf '{"manifold":"MO(0;(1,2))","m":2}\n' | dwcount batch
    Ok(())
}
