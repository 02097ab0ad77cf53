//! Resolve a catalog entry and print its exact structure data: the brackets
//! of the distinguished factor, the character, and the derivation that
//! describe how the complement generator acts.

use bicrossed::catalog::entry;
use bicrossed::scalar::fmt_ratio;
use num_traits::Zero;

fn main() {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "2+1/4.1".into());
    let e = entry(&spec).expect("catalog entry");
    let data = &e.data;
    let labels = data.g1.labels();
    let n = data.dim();

    println!("entry {}", e.full_name());

    println!("brackets of the factor:");
    let mut printed = false;
    for i in 0..n {
        for j in i + 1..n {
            let terms: Vec<String> = (0..n)
                .filter_map(|k| {
                    let c = data.g1.structure_constant(i, j, k);
                    if c.is_zero() {
                        return None;
                    }
                    Some(format!("{} {}", fmt_ratio(c), labels[k]))
                })
                .collect();
            if !terms.is_empty() {
                println!("  [{}, {}] = {}", labels[i], labels[j], terms.join(" + "));
                printed = true;
            }
        }
    }
    if !printed {
        println!("  the factor is abelian");
    }

    println!("action of the complement generator:");
    for (i, label) in labels.iter().enumerate() {
        let mut unit = vec![bicrossed::scalar::qi(0); n];
        unit[i] = bicrossed::scalar::qi(1);
        let beta = data.beta_of(&unit);
        let mut terms: Vec<String> = (0..n)
            .filter(|&k| !beta[k].is_zero())
            .map(|k| format!("{} {}", fmt_ratio(&beta[k]), labels[k]))
            .collect();
        let chi = data.chi_of(&unit);
        if !chi.is_zero() {
            terms.push(format!("{} {}", fmt_ratio(&chi), data.a_label));
        }
        let rhs = if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        };
        println!("  [{}, {}] = {}", label, data.a_label, rhs);
    }

    let report = data.check().expect("well-formed data");
    println!("defining identities: {}", if report.ok() { "hold" } else { "violated" });
    let ambient = data.build_ambient(None).expect("ambient algebra");
    println!(
        "ambient Jacobi identity: {}",
        if ambient.check_jacobi().ok() { "holds" } else { "violated" }
    );
}
