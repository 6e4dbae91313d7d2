//! Adaptive Simpson quadrature.

/// Integrates `f` over `[a, b]` to a relative tolerance, recursing at most
/// `max_depth` levels.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, max_depth: u32) -> f64 {
    // A coarse composite pass sets the absolute scale for the tolerance.
    const PANELS: usize = 16;
    let h = (b - a) / PANELS as f64;
    let mut panels = Vec::with_capacity(PANELS);
    let mut coarse = 0.0;
    for i in 0..PANELS {
        let lo = a + h * i as f64;
        let hi = if i + 1 == PANELS { b } else { lo + h };
        let (flo, fhi) = (f(lo), f(hi));
        let fm = f(0.5 * (lo + hi));
        let s = simpson(lo, hi, flo, fm, fhi);
        coarse += s;
        panels.push((lo, hi, flo, fm, fhi, s));
    }
    let eps = (rel_tol * coarse.abs()).max(f64::MIN_POSITIVE) / PANELS as f64;
    panels
        .into_iter()
        .map(|(lo, hi, flo, fm, fhi, s)| refine(&f, lo, hi, flo, fm, fhi, s, eps, max_depth))
        .sum()
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    // Below a few ulps of the panel sum the error estimate is pure roundoff.
    let noise = 64.0 * f64::EPSILON * (left.abs() + right.abs());
    if depth == 0 || delta.abs() <= (15.0 * eps).max(noise) {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}
