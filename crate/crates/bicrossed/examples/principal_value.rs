//! Numerical integration toolbox in action: adaptive quadrature, periodic
//! integrals, and principal values with excised singularities, ending with
//! the pole-log integral whose value collapses to a sign formula.

use std::f64::consts::PI;

use bicrossed::groups::cocycles::{pole_log_closed, pole_log_integral};
use bicrossed::numerics::pv::{pv_interval, pv_real_line};
use bicrossed::numerics::quadrature::{integrate, periodic_integral};

fn show(label: &str, value: f64, err: f64, reference: f64) {
    println!(
        "{label:<44} {value:>13.9} (err est {err:.1e}, true {reference:.9}, off by {:.1e})",
        (value - reference).abs()
    );
}

fn main() {
    let q = integrate(&|x: f64| x.exp(), 0.0, 1.0, 1e-12);
    show("integral of e^x on [0,1]", q.value, q.error_estimate, 1.0f64.exp() - 1.0);

    let q = periodic_integral(&|t: f64| (t.cos()).exp(), 1e-12);
    // Modified Bessel I_0(1) times 2*pi, summed from the series.
    let bessel: f64 = (0..20)
        .map(|k| {
            let kf: f64 = (1..=k).product::<u64>() as f64;
            (0.25f64).powi(k as i32) / (kf * kf)
        })
        .sum();
    show("integral of e^{cos t} over a period", q.value, q.error_estimate, 2.0 * PI * bessel);

    // Principal value across a simple pole: PV of 1/(x-1/2) over [0,2] is
    // ln((2-1/2)/(1/2)) = ln 3.
    let q = pv_interval(&|x: f64| 1.0 / (x - 0.5), 0.0, 2.0, &[0.5]);
    show("PV of 1/(x-1/2) on [0,2]", q.value, q.error_estimate, 3.0f64.ln());

    // Whole-line principal value: PV of 1/(x(x^2+1)) vanishes by oddness.
    let q = pv_real_line(&|x: f64| 1.0 / (x * (x * x + 1.0)), &[0.0]);
    show("PV of 1/(x(x^2+1)) on the line", q.value, q.error_estimate, 0.0);

    // The pole-log integral PV of c/(cr+d) ln|ar+b| dr is pi^2/2 times the
    // sign of b/a - d/c, independent of the magnitudes.
    println!();
    for (a, b, c, d) in [(1.0, 2.0, 1.0, -1.0), (3.0, -1.0, 2.0, 5.0), (-1.0, 0.3, 0.7, 0.9)] {
        let q = pole_log_integral(a, b, c, d);
        let closed = pole_log_closed(a, b, c, d);
        show(
            &format!("pole-log at (a,b,c,d)=({a},{b},{c},{d})"),
            q.value,
            q.error_estimate,
            closed,
        );
        assert!((q.value - closed).abs() <= 1e-5);
    }
}
