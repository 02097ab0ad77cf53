//! Principal-value integrals. Singular points are excised symmetrically at
//! a ladder of shrinking radii; simple poles cancel between the two sides
//! of each excision, and the remaining drift in the radius is removed by
//! collocating the model `I(eps) = I0 + alpha*eps + beta*eps*ln(eps)` on
//! the last ladder rungs.

use super::quadrature::integrate;
use super::QuadResult;

const LADDER_RUNGS: usize = 12;
const SEGMENT_TOL: f64 = 1e-12;

/// Principal value of the integral of `f` over `[a, b]`, excising the
/// given singular points. Points may also sit at the endpoints when the
/// singularity there is integrable (one-sided excision).
pub fn pv_interval(f: &dyn Fn(f64) -> f64, a: f64, b: f64, singular: &[f64]) -> QuadResult {
    assert!(a < b, "interval must be ordered");
    let mut points: Vec<f64> = singular
        .iter()
        .copied()
        .filter(|s| *s >= a && *s <= b)
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    if points.is_empty() {
        return integrate(f, a, b, SEGMENT_TOL);
    }

    // Largest excision radius that keeps all excised balls disjoint and
    // inside the interval.
    let mut gap = b - a;
    let mut bounds = vec![a];
    bounds.extend(points.iter().copied());
    bounds.push(b);
    for w in bounds.windows(2) {
        let d = w[1] - w[0];
        if d > 0.0 {
            gap = gap.min(d);
        }
    }
    let eps0 = gap / 8.0;

    // Base value at the widest excision.
    let mut value = 0.0;
    let mut quad_err = 0.0;
    let mut segments = Vec::new();
    let mut left = a;
    for s in &points {
        let right = s - eps0;
        if right > left {
            segments.push((left, right));
        }
        left = s + eps0;
    }
    if b > left {
        segments.push((left, b));
    }
    for (sa, sb) in segments {
        let r = integrate(f, sa, sb, SEGMENT_TOL);
        value += r.value;
        quad_err += r.error_estimate;
    }

    // Shrink the radius, widening every segment by the collar just
    // uncovered on each side of each singular point.
    let mut ladder = vec![(eps0, value)];
    let mut eps = eps0;
    for _ in 1..LADDER_RUNGS {
        let next = eps / 2.0;
        for s in &points {
            let collars = [((s - eps).max(a), s - next), (s + next, (s + eps).min(b))];
            for (lo, hi) in collars {
                if hi > lo {
                    let r = integrate(f, lo, hi, SEGMENT_TOL);
                    value += r.value;
                    quad_err += r.error_estimate;
                }
            }
        }
        eps = next;
        ladder.push((eps, value));
    }

    // Collocate I(eps) = I0 + alpha*eps + beta*eps*ln(eps) on the last
    // three rungs; the previous three give the error estimate.
    let i0 = collocate(&ladder[LADDER_RUNGS - 3..]);
    let i0_prev = collocate(&ladder[LADDER_RUNGS - 4..LADDER_RUNGS - 1]);
    QuadResult {
        value: i0,
        error_estimate: (i0 - i0_prev).abs() + quad_err,
    }
}

/// Principal value over the whole real line, including the symmetric limit
/// at infinity. Tails beyond a finite box are folded to the origin by
/// `u = 1/r`, pairing `r` with `-r` so the odd leading part cancels.
pub fn pv_real_line(f: &dyn Fn(f64) -> f64, singular: &[f64]) -> QuadResult {
    let extent = singular.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    let r0 = 10.0f64.max(2.0 * extent + 1.0);
    let core = pv_interval(f, -r0, r0, singular);
    let tail_f = move |u: f64| (f(1.0 / u) + f(-1.0 / u)) / (u * u);
    let tail = pv_interval(&tail_f, 0.0, 1.0 / r0, &[0.0]);
    QuadResult {
        value: core.value + tail.value,
        error_estimate: core.error_estimate + tail.error_estimate,
    }
}

fn collocate(rungs: &[(f64, f64)]) -> f64 {
    // Solve the 3x3 collocation system for I0 by Cramer elimination.
    let (e1, v1) = rungs[0];
    let (e2, v2) = rungs[1];
    let (e3, v3) = rungs[2];
    let row = |e: f64| [1.0, e, e * e.ln()];
    let m = [row(e1), row(e2), row(e3)];
    let rhs = [v1, v2, v3];
    let det3 = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det3(&m);
    let mut m0 = m;
    for i in 0..3 {
        m0[i][0] = rhs[i];
    }
    det3(&m0) / d
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn odd_pole_cancels_symmetrically() {
        let r = pv_interval(&|x| 1.0 / x, -1.0, 1.0, &[0.0]);
        assert!(r.value.abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn off_center_pole_leaves_the_log_ratio() {
        // P.V. of 1/x over [-1, 2] is ln 2.
        let r = pv_interval(&|x| 1.0 / x, -1.0, 2.0, &[0.0]);
        assert!((r.value - 2.0f64.ln()).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn pole_with_smooth_weight() {
        // P.V. of cos(x)/x over [-pi, pi] vanishes by parity.
        let r = pv_interval(&|x: f64| x.cos() / x, -PI, PI, &[0.0]);
        assert!(r.value.abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn real_line_pole_against_lorentzian() {
        // P.V. of 1/((x - a)(x^2 + 1)) over the line is -pi*a/(1 + a^2).
        for a in [1.0, -0.5, 3.0] {
            let r = pv_real_line(&move |x: f64| 1.0 / ((x - a) * (x * x + 1.0)), &[a]);
            let exact = -PI * a / (1.0 + a * a);
            assert!((r.value - exact).abs() < 1e-7, "a={}: {} vs {}", a, r.value, exact);
        }
    }

    #[test]
    fn sign_oracle_for_log_against_pole() {
        // P.V. over the line of c/(cr + d) * ln|ar + b| is
        // (pi^2/2) * sgn(b/a - d/c).
        for (a, b, c, d) in [
            (1.0, 1.0, 1.0, -1.0),
            (2.0, -1.0, 1.0, 1.0),
            (1.0, 0.5, 3.0, 2.0),
            (-1.0, 2.0, 2.0, -3.0),
        ] {
            let f = move |r: f64| c / (c * r + d) * (a * r + b).abs().ln();
            let res = pv_real_line(&f, &[-d / c, -b / a]);
            let exact = 0.5 * PI * PI * (b / a - d / c).signum();
            assert!(
                (res.value - exact).abs() < 1e-5,
                "({},{},{},{}): {} vs {}",
                a,
                b,
                c,
                d,
                res.value,
                exact
            );
        }
    }

    #[test]
    fn endpoint_log_singularity_is_recovered() {
        let r = pv_interval(&|x: f64| x.ln(), 0.0, 1.0, &[0.0]);
        assert!((r.value + 1.0).abs() < 1e-7, "{}", r.value);
    }
}
