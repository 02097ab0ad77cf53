//! Differentiate each group pair at the identity and compare the recovered
//! brackets, character, and derivation against the algebra catalog entry the
//! pair declares, through its stated linear identification.

use bicrossed::groups::catalog::group_catalog;
use bicrossed::groups::verify::match_to_catalog;

fn main() {
    println!(
        "{:<14} {:<18} {:>12} {:>12}  {}",
        "group pair", "algebra target", "residual", "fd bound", "verdict"
    );
    for pair in group_catalog() {
        let Some(target) = pair.algebra_entry() else {
            println!("{:<14} (no declared target)", pair.full_name());
            continue;
        };
        if pair.second().lie_dim() != 1 {
            println!(
                "{:<14} {:<18} complement is {}-dimensional, finite differences need a line",
                pair.full_name(),
                target,
                pair.second().lie_dim()
            );
            continue;
        }
        let m = match_to_catalog(&pair).expect("finite differences");
        println!(
            "{:<14} {:<18} {:>12.3e} {:>12.3e}  {}",
            pair.full_name(),
            m.target,
            m.residual,
            m.bound,
            if m.ok { "pass" } else { "FAIL" }
        );
        assert!(m.ok, "{} should match its target", pair.full_name());
    }
}
