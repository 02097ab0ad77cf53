//! Evaluate the mutual actions of a group pair at concrete points, watch the
//! factorization law hold numerically, and run the full sampled identity
//! check. Pass a catalog entry such as `2.1?r=1/2` or `4.1?d=-1&b=1` as the
//! first argument; the default is `4.2`.

use bicrossed::groups::catalog::group_pair;
use bicrossed::groups::verify::{check_group_matched_pair, SampleConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fmt(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.4}")).collect();
    format!("({})", parts.join(", "))
}

fn main() {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "4.2".into());
    let pair = group_pair(&spec).expect("catalog entry");
    println!("entry {}", pair.full_name());
    println!(
        "factors of dimension {} and {} inside an ambient chart of dimension {}",
        pair.first().lie_dim(),
        pair.second().lie_dim(),
        pair.ambient().lie_dim()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = pair.first().sample_point(&mut rng);
    let s = pair.second().sample_point(&mut rng);
    let a = pair.alpha(&g, &s);
    let b = pair.beta(&s, &g);
    println!("\ng        = {}", fmt(&g));
    println!("s        = {}", fmt(&s));
    println!("alpha_g s = {}", fmt(&a));
    println!("beta_s g  = {}", fmt(&b));

    // The actions are the two halves of refactoring s * g in the ambient
    // group as (alpha_g s) * (beta_s g).
    let amb = pair.ambient();
    let lhs = amb.multiply(&pair.embed_second(&s), &pair.embed_first(&g));
    let rhs = amb.multiply(&pair.embed_second(&a), &pair.embed_first(&b));
    println!(
        "\nfactorization residual at this point: {:.3e}",
        amb.distance(&lhs, &rhs)
    );

    let cfg = SampleConfig::with_samples(500);
    let report = check_group_matched_pair(&pair, &cfg).expect("sampling");
    println!("\nsampled identities ({} draws, seed {}):", cfg.samples, cfg.seed);
    for (name, residual) in &report.residuals {
        println!("  {name:<24} {residual:.3e}");
    }
    let verdict = if report.ok(cfg.tol) { "pass" } else { "FAIL" };
    println!("worst residual {:.3e} vs tolerance {:.0e}: {verdict}", report.max(), cfg.tol);
}
