//! Scalar numerics: a guarded bracketing root finder, adaptive quadrature
//! and the Lobachevsky function.
//!
//! Everything here is pure and allocation-light; no global state.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Convergence controls shared by the root finder and the quadrature rules.
///
/// `max_iter` is the iteration cap for [`find_root`], the recursion depth cap
/// for [`integrate`] and the subdivision cap for [`integrate_gk`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_iter: 200,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::domain(format!("abs_tol must be positive, got {abs_tol}")));
        }
        if !(rel_tol >= 0.0 && rel_tol.is_finite()) {
            return Err(Error::domain(format!("rel_tol must be nonnegative, got {rel_tol}")));
        }
        if max_iter == 0 {
            return Err(Error::domain("max_iter must be at least 1"));
        }
        Ok(Tolerance {
            abs_tol,
            rel_tol,
            max_iter,
        })
    }

    /// Same absolute and relative tolerance, default iteration cap.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol, Tolerance::default().max_iter)
    }

    /// Allowed error around a value of magnitude `scale`.
    pub fn allowance(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale.abs()
    }
}

/// A closed interval `[lo, hi]` with `lo < hi`.
///
/// The endpoints may be given in either order; they are sorted on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::domain("bracket endpoints must be finite"));
        }
        if a == b {
            return Err(Error::domain(format!("degenerate bracket [{a}, {b}]")));
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        Ok(Bracket { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}

/// Finds a root of `f` inside `bracket`.
///
/// Secant steps are taken when they land well inside the current bracket;
/// otherwise, or when two consecutive steps failed to halve the bracket, the
/// step is a bisection. The bracket therefore shrinks at least as fast as
/// plain bisection every second iteration.
pub fn find_root<F>(f: F, bracket: Bracket, tol: &Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::domain("function is NaN at a bracket endpoint"));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket { lo: a, hi: b });
    }

    let mut width_two_steps_ago = b - a;
    for iter in 0..tol.max_iter {
        let width = b - a;
        let best = if fa.abs() < fb.abs() { a } else { b };
        if width <= 2.0 * tol.allowance(best) {
            return Ok(best);
        }

        let mid = 0.5 * (a + b);
        let force_bisect = iter % 2 == 1 && width > 0.5 * width_two_steps_ago;
        if iter % 2 == 1 {
            width_two_steps_ago = width;
        }
        let guard = 0.01 * width;
        let secant = b - fb * (b - a) / (fb - fa);
        let x = if !force_bisect && secant.is_finite() && secant > a + guard && secant < b - guard {
            secant
        } else {
            mid
        };

        let fx = f(x);
        if fx.is_nan() {
            return Err(Error::domain(format!("function is NaN at {x}")));
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Err(Error::Convergence {
        iterations: tol.max_iter,
    })
}

/// Relative offset of the split point used at a log-singular endpoint.
const SINGULAR_SPLIT: f64 = 1e-6;
/// Hard cap on integrand evaluations for a single call.
const MAX_EVALUATIONS: usize = 20_000_000;

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// An endpoint where `f` is not finite is treated as an integrable
/// (logarithmic type) singularity: the interval is split at
/// `a + 1e-6 (b - a)` and the short piece next to the singularity is
/// integrated after the substitution `x = a + h u^2`, which removes it.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_dyn(&f, a, b, tol)
}

fn integrate_dyn(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: &Tolerance) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::domain("integration limits must be finite"));
    }
    if a > b {
        return integrate_dyn(f, b, a, tol).map(|v| -v);
    }

    let fa = f(a);
    let fb = f(b);
    if !fa.is_finite() {
        let split = a + SINGULAR_SPLIT * (b - a);
        let near = integrate_singular_left(&f, a, split, tol)?;
        return Ok(near + integrate_dyn(f, split, b, tol)?);
    }
    if !fb.is_finite() {
        let split = b - SINGULAR_SPLIT * (b - a);
        let near = integrate_singular_left(&|x: f64| f(a + b - x), a, a + (b - split), tol)?;
        return Ok(integrate_dyn(f, a, split, tol)? + near);
    }
    simpson_adaptive(&f, a, b, fa, fb, tol)
}

/// Integrates over `[a, s]` where `f(a)` is singular, via `x = a + (s - a) u^2`.
fn integrate_singular_left<F>(f: &F, a: f64, s: f64, tol: &Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let h = s - a;
    let g = |u: f64| {
        if u == 0.0 {
            0.0
        } else {
            f(a + h * u * u) * 2.0 * h * u
        }
    };
    let g1 = g(1.0);
    if !g1.is_finite() {
        return Err(Error::domain("integrand singular on both sides of the split point"));
    }
    simpson_adaptive(&g, 0.0, 1.0, 0.0, g1, tol)
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    depth: usize,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) * (fa + 4.0 * fm + fb) / 6.0
}

fn simpson_adaptive<F>(f: &F, a: f64, b: f64, fa: f64, fb: f64, tol: &Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    // Coarse 16-panel composite estimate sets the relative part of the target.
    let n = 16;
    let step = (b - a) / n as f64;
    let mut coarse = 0.0;
    let mut evals = 0usize;
    let mut stack = Vec::with_capacity(64);
    let mut left = fa;
    for i in 0..n {
        let pa = a + step * i as f64;
        let pb = if i + 1 == n { b } else { pa + step };
        let right = if i + 1 == n { fb } else { f(pb) };
        let fm = f(0.5 * (pa + pb));
        evals += 2;
        if !fm.is_finite() || !right.is_finite() {
            return Err(Error::domain("integrand is not finite inside the interval"));
        }
        let whole = simpson(pa, pb, left, fm, right);
        coarse += whole;
        stack.push(Panel {
            a: pa,
            b: pb,
            fa: left,
            fm,
            fb: right,
            whole,
            depth: 0,
        });
        left = right;
    }

    let target = tol.allowance(coarse);
    let width = b - a;
    let mut total = 0.0;
    // Kahan summation keeps the accumulated error well below the target.
    let mut carry = 0.0;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = f(lm);
        let frm = f(rm);
        evals += 2;
        if !flm.is_finite() || !frm.is_finite() {
            return Err(Error::domain("integrand is not finite inside the interval"));
        }
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let diff = left + right - p.whole;
        let local = target * (p.b - p.a) / width;
        if diff.abs() <= 15.0 * local {
            let y = left + right + diff / 15.0 - carry;
            let t = total + y;
            carry = (t - total) - y;
            total = t;
            continue;
        }
        if p.depth + 1 >= tol.max_iter || !(lm > p.a && rm < p.b && m > lm && m < rm) || evals > MAX_EVALUATIONS {
            return Err(Error::Convergence {
                iterations: p.depth + 1,
            });
        }
        stack.push(Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
            depth: p.depth + 1,
        });
        stack.push(Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
            depth: p.depth + 1,
        });
    }
    Ok(total)
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for GK_NODES[1], [3], [5], [7].
const GAUSS7_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let fc = f(center);
    let mut kronrod = GK_WEIGHTS[7] * fc;
    let mut gauss = GAUSS7_WEIGHTS[3] * fc;
    for i in 0..7 {
        let dx = half * GK_NODES[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += GK_WEIGHTS[i] * pair;
        if i % 2 == 1 {
            gauss += GAUSS7_WEIGHTS[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Globally adaptive 7/15-point Gauss–Kronrod quadrature for smooth integrands.
///
/// Used as the building block of the tensor-product rules over floors; the
/// worst panel is bisected until the summed error estimate meets the
/// tolerance or `max_iter` panels have been split.
pub fn integrate_gk<F>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::domain("integration limits must be finite"));
    }
    let (value, err) = kronrod15(&f, a, b);
    let mut panels = vec![(a, b, value, err)];
    for _ in 0..=tol.max_iter {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let error: f64 = panels.iter().map(|p| p.3).sum();
        if !total.is_finite() {
            return Err(Error::domain("integrand is not finite inside the interval"));
        }
        if error <= tol.allowance(total) {
            return Ok(total);
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("at least one panel");
        let (pa, pb, _, _) = panels.swap_remove(worst);
        let m = 0.5 * (pa + pb);
        if !(m != pa && m != pb) {
            break;
        }
        let (lv, le) = kronrod15(&f, pa, m);
        let (rv, re) = kronrod15(&f, m, pb);
        panels.push((pa, m, lv, le));
        panels.push((m, pb, rv, re));
    }
    Err(Error::Convergence {
        iterations: tol.max_iter,
    })
}

/// The Lobachevsky function `Λ(θ) = -∫₀^θ ln|2 sin u| du` on `[0, π/2]`.
pub fn lobachevsky(theta: f64) -> Result<f64> {
    lobachevsky_with(theta, &Tolerance::default())
}

pub fn lobachevsky_with(theta: f64, tol: &Tolerance) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::domain(format!("lobachevsky argument {theta} outside [0, pi/2]")));
    }
    if theta == 0.0 {
        return Ok(0.0);
    }
    let v = integrate(|u| (2.0 * u.sin()).abs().ln(), 0.0, theta, tol)?;
    Ok(-v)
}
