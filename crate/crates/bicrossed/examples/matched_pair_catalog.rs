//! Walk the full algebra catalog: every entry is checked exactly, then
//! summarized with its trichotomy class, extension group dimension, and the
//! group and bialgebra families it points to.

use bicrossed::catalog::catalog;
use bicrossed::cohomology::extension_group_dim;
use bicrossed::matched::trichotomy;

fn main() {
    println!(
        "{:<20} {:<20} {:>8}  {:<8} {}",
        "entry", "trichotomy", "ext dim", "group", "bialgebra"
    );
    for e in catalog() {
        assert!(e.data.check().unwrap().ok(), "{}", e.name);
        let pair = e.data.matched_pair().unwrap();
        assert!(pair.check().unwrap().ok(), "{}", e.name);

        let class = trichotomy(&e.data).unwrap();
        let ext = extension_group_dim(&e.data).unwrap();
        println!(
            "{:<20} {:<20} {:>8}  {:<8} {}",
            e.full_name(),
            class.as_str(),
            ext,
            e.group_entry.as_deref().unwrap_or("-"),
            e.bialgebra_entry.as_deref().unwrap_or("-"),
        );
    }
}
