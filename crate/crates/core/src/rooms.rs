//! Rooms over geodesic floors: volumes and ceiling areas in Fermi
//! coordinates, the constant-height comparison room, the constant `H`, and the
//! cusp-prism volume bound in the projective model.
//!
//! The metric is `dh² + cosh²h (dr² + sinh²r dθ²)` with `(r, θ)` polar
//! coordinates on the floor plane and `h` the height above it.

use std::cell::Cell;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{find_root, integrate_gk, Bracket, Tolerance};

/// A triangle in the projective (Klein) disk model of the hyperbolic plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectiveTriangle {
    vertices: [[f64; 2]; 3],
}

impl ProjectiveTriangle {
    pub fn new(vertices: [[f64; 2]; 3]) -> Result<Self> {
        for v in &vertices {
            if !v.iter().all(|c| c.is_finite()) {
                return Err(Error::domain("triangle vertices must be finite"));
            }
            if v[0] * v[0] + v[1] * v[1] >= 1.0 {
                return Err(Error::domain(format!(
                    "vertex ({}, {}) is not strictly inside the unit disk",
                    v[0], v[1]
                )));
            }
        }
        let tri = ProjectiveTriangle { vertices };
        if tri.jacobian().abs() < 1e-14 {
            return Err(Error::domain("triangle vertices are collinear"));
        }
        Ok(tri)
    }

    pub fn vertices(&self) -> [[f64; 2]; 3] {
        self.vertices
    }

    /// `det(B - A, C - B)`, twice the signed Euclidean area.
    fn jacobian(&self) -> f64 {
        let [a, b, c] = self.vertices;
        (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
    }

    /// Collapsed-square parametrization `(u, v) ∈ [0,1]² → triangle`.
    fn point(&self, u: f64, v: f64) -> [f64; 2] {
        let [a, b, c] = self.vertices;
        [
            a[0] + u * (b[0] - a[0]) + u * v * (c[0] - b[0]),
            a[1] + u * (b[1] - a[1]) + u * v * (c[1] - b[1]),
        ]
    }

    /// Hyperbolic area from the angle defect.
    pub fn hyperbolic_area(&self) -> f64 {
        let lift = |p: [f64; 2]| {
            let w = 1.0 / (1.0 - p[0] * p[0] - p[1] * p[1]).sqrt();
            [p[0] * w, p[1] * w, w]
        };
        let minkowski = |x: [f64; 3], y: [f64; 3]| x[0] * y[0] + x[1] * y[1] - x[2] * y[2];
        let pts = self.vertices.map(lift);
        let mut angle_sum = 0.0;
        for i in 0..3 {
            let (p, a, b) = (pts[i], pts[(i + 1) % 3], pts[(i + 2) % 3]);
            // Tangent vectors at p pointing towards a and b.
            let ta = {
                let k = minkowski(p, a);
                [a[0] + k * p[0], a[1] + k * p[1], a[2] + k * p[2]]
            };
            let tb = {
                let k = minkowski(p, b);
                [b[0] + k * p[0], b[1] + k * p[1], b[2] + k * p[2]]
            };
            let cos = minkowski(ta, tb) / (minkowski(ta, ta) * minkowski(tb, tb)).sqrt();
            angle_sum += cos.clamp(-1.0, 1.0).acos();
        }
        PI - angle_sum
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum FloorShape {
    /// Disk of the given hyperbolic radius centred at the polar origin.
    PolarDisk {
        radius: f64,
    },
    ProjectiveTriangle(ProjectiveTriangle),
}

/// A floor region in the plane `h = 0` with its hyperbolic area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FloorRegion {
    shape: FloorShape,
    area: f64,
}

impl FloorRegion {
    pub fn disk(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::domain(format!("disk radius must be positive, got {radius}")));
        }
        Ok(FloorRegion {
            shape: FloorShape::PolarDisk { radius },
            area: 2.0 * PI * (radius.cosh() - 1.0),
        })
    }

    pub fn triangle(tri: ProjectiveTriangle) -> Self {
        FloorRegion {
            shape: FloorShape::ProjectiveTriangle(tri),
            area: tri.hyperbolic_area(),
        }
    }

    pub fn shape(&self) -> &FloorShape {
        &self.shape
    }

    pub fn area(&self) -> f64 {
        self.area
    }
}

type HeightFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type GradientFn = Arc<dyn Fn(f64, f64) -> (f64, f64) + Send + Sync>;

/// Central-difference step for ceilings without an analytic gradient.
pub const FD_STEP: f64 = 1e-6;

/// A nonnegative height function `g(r, θ)` over a floor.
#[derive(Clone)]
pub struct CeilingFunction {
    height: HeightFn,
    gradient: Option<GradientFn>,
}

impl fmt::Debug for CeilingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CeilingFunction")
            .field("analytic_gradient", &self.gradient.is_some())
            .finish()
    }
}

impl CeilingFunction {
    /// Ceiling with gradients from central differences.
    pub fn new(height: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        CeilingFunction {
            height: Arc::new(height),
            gradient: None,
        }
    }

    pub fn with_gradient(
        height: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(f64, f64) -> (f64, f64) + Send + Sync + 'static,
    ) -> Self {
        CeilingFunction {
            height: Arc::new(height),
            gradient: Some(Arc::new(gradient)),
        }
    }

    pub fn constant(h: f64) -> Self {
        CeilingFunction::with_gradient(move |_, _| h, |_, _| (0.0, 0.0))
    }

    pub fn has_analytic_gradient(&self) -> bool {
        self.gradient.is_some()
    }

    pub fn height(&self, r: f64, theta: f64) -> f64 {
        (self.height)(r, theta)
    }

    /// `(∂g/∂r, ∂g/∂θ)`.
    pub fn gradient(&self, r: f64, theta: f64) -> (f64, f64) {
        if let Some(grad) = &self.gradient {
            return grad(r, theta);
        }
        let h = FD_STEP;
        let g = |r, t| (self.height)(r, t);
        let gr = if r > h {
            (g(r + h, theta) - g(r - h, theta)) / (2.0 * h)
        } else {
            (g(r + h, theta) - g(r, theta)) / h
        };
        let gt = (g(r, theta + h) - g(r, theta - h)) / (2.0 * h);
        (gr, gt)
    }

    fn checked_height(&self, r: f64, theta: f64) -> Result<f64> {
        let g = self.height(r, theta);
        if !(g >= 0.0 && g.is_finite()) {
            return Err(Error::domain(format!(
                "ceiling height {g} at (r={r}, theta={theta}) is not a finite nonnegative number"
            )));
        }
        Ok(g)
    }
}

/// Nested Gauss–Kronrod rule over `x ∈ [a, b]`, `y ∈ [c, d]`.
fn integrate_rectangle<F>(f: F, (a, b): (f64, f64), (c, d): (f64, f64), tol: &Tolerance) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let failure: Cell<Option<Error>> = Cell::new(None);
    let inner_tol = Tolerance {
        abs_tol: tol.abs_tol / (10.0 * (b - a)),
        ..*tol
    };
    let outer = |x: f64| {
        let row = integrate_gk(
            |y| match f(x, y) {
                Ok(v) => v,
                Err(e) => {
                    failure.set(Some(e));
                    f64::NAN
                }
            },
            c,
            d,
            &inner_tol,
        );
        match row {
            Ok(v) => v,
            Err(e) => {
                let previous = failure.take();
                failure.set(Some(previous.unwrap_or(e)));
                f64::NAN
            }
        }
    };
    let result = integrate_gk(outer, a, b, tol);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    result
}

/// Integrates a density given per unit hyperbolic area over the floor.
/// For disks the caller supplies the density already multiplied by the
/// polar Jacobian `sinh r`, so it stays regular at the origin.
fn integrate_floor<P, A>(floor: &FloorRegion, tol: &Tolerance, polar: P, per_area: A) -> Result<f64>
where
    P: Fn(f64, f64) -> Result<f64>,
    A: Fn(f64, f64) -> Result<f64>,
{
    match floor.shape {
        FloorShape::PolarDisk { radius } => {
            integrate_rectangle(|theta, r| polar(r, theta), (0.0, 2.0 * PI), (0.0, radius), tol)
        }
        FloorShape::ProjectiveTriangle(tri) => {
            let jac = tri.jacobian().abs();
            integrate_rectangle(
                |u, v| {
                    let [x, y] = tri.point(u, v);
                    let rho2 = x * x + y * y;
                    let area_element = (1.0 - rho2).powf(-1.5);
                    let r = rho2.sqrt().atanh();
                    let theta = y.atan2(x);
                    Ok(per_area(r, theta)? * area_element * u * jac)
                },
                (0.0, 1.0),
                (0.0, 1.0),
                tol,
            )
        }
    }
}

/// `∬_F ¼(sinh 2g + 2g) dA`.
pub fn room_volume(floor: &FloorRegion, g: &CeilingFunction, tol: &Tolerance) -> Result<f64> {
    let density = |r: f64, theta: f64| -> Result<f64> {
        let h = g.checked_height(r, theta)?;
        Ok(0.25 * ((2.0 * h).sinh() + 2.0 * h))
    };
    integrate_floor(floor, tol, |r: f64, t: f64| Ok(density(r, t)? * r.sinh()), density)
}

/// `∬_F cosh g √((g_r² + cosh² g) sinh² r + g_θ²) dr dθ`.
pub fn ceiling_area(floor: &FloorRegion, g: &CeilingFunction, tol: &Tolerance) -> Result<f64> {
    let polar = |r: f64, theta: f64| -> Result<f64> {
        let h = g.checked_height(r, theta)?;
        let (gr, gt) = g.gradient(r, theta);
        let (ch, sh) = (h.cosh(), r.sinh());
        Ok(ch * ((gr * gr + ch * ch) * sh * sh + gt * gt).sqrt())
    };
    let per_area = |r: f64, theta: f64| -> Result<f64> {
        let h = g.checked_height(r, theta)?;
        let (gr, gt) = g.gradient(r, theta);
        let ch = h.cosh();
        let sh = r.sinh();
        // g_θ vanishes like r at the origin for a smooth ceiling.
        let angular = if sh > 1e-300 { gt / sh } else { 0.0 };
        Ok(ch * (gr * gr + ch * ch + angular * angular).sqrt())
    };
    integrate_floor(floor, tol, polar, per_area)
}

/// `∬_F cosh² g dA`, the area bound obtained by dropping the gradient terms.
pub fn ceiling_area_lower_bound(floor: &FloorRegion, g: &CeilingFunction, tol: &Tolerance) -> Result<f64> {
    let density = |r: f64, theta: f64| -> Result<f64> { Ok(g.checked_height(r, theta)?.cosh().powi(2)) };
    integrate_floor(floor, tol, |r: f64, t: f64| Ok(density(r, t)? * r.sinh()), density)
}

fn check_volume_and_area(volume: f64, floor_area: f64) -> Result<()> {
    if !(volume >= 0.0 && volume.is_finite()) {
        return Err(Error::domain(format!("volume must be nonnegative, got {volume}")));
    }
    if !(floor_area > 0.0 && floor_area.is_finite()) {
        return Err(Error::domain(format!("floor area must be positive, got {floor_area}")));
    }
    Ok(())
}

/// Height `H ≥ 0` of the constant-height room with the given volume:
/// the solution of `sinh 2H + 2H = 4V / A_F`.
pub fn nice_height(volume: f64, floor_area: f64) -> Result<f64> {
    check_volume_and_area(volume, floor_area)?;
    if volume == 0.0 {
        return Ok(0.0);
    }
    let c = 4.0 * volume / floor_area;
    // Each term is an upper bound for the root.
    let hi = (c / 2.0).min(0.5 * (2.0 * c + 1.0).ln());
    let f = |h: f64| (2.0 * h).sinh() + 2.0 * h - c;
    if f(hi) == 0.0 {
        return Ok(hi);
    }
    find_root(f, Bracket::new(0.0, hi)?, &Tolerance::default())
}

/// Ceiling area of the constant-height room with the given volume,
/// `(A_F + √(A_F² + 4(2V − H A_F)²)) / 2`.
pub fn nice_ceiling_area(volume: f64, floor_area: f64) -> Result<f64> {
    let h = nice_height(volume, floor_area)?;
    let k = 2.0 * volume - h * floor_area;
    Ok((floor_area + (floor_area * floor_area + 4.0 * k * k).sqrt()) / 2.0)
}

/// The positive solution `H = 1.199678…` of `x = coth x`.
pub fn constant_h() -> f64 {
    static H: OnceLock<f64> = OnceLock::new();
    *H.get_or_init(|| {
        find_root(
            |x| x - 1.0 / x.tanh(),
            Bracket::new(1.0, 2.0).expect("static bracket"),
            &Tolerance::default(),
        )
        .expect("x = coth x has a root in [1, 2]")
    })
}

/// Ceiling area over volume of a constant-height room,
/// `4 cosh² H / (sinh 2H + 2H)`, independent of the floor.
pub fn nice_room_ratio(h: f64) -> Result<f64> {
    if !(h > 0.0) || h.is_nan() {
        return Err(Error::domain(format!("height must be positive, got {h}")));
    }
    if h > 20.0 {
        // Scaled by e^{-2H} to stay finite for large heights.
        let e = (-2.0 * h).exp();
        return Ok((1.0 + e).powi(2) / ((1.0 - e * e) / 2.0 + 2.0 * h * e));
    }
    Ok(4.0 * h.cosh().powi(2) / ((2.0 * h).sinh() + 2.0 * h))
}

/// A room with its volume, ceiling area, and the equal-volume constant-height
/// comparison room.
#[derive(Debug, Clone)]
pub struct RoomSpec {
    pub floor: FloorRegion,
    pub ceiling: CeilingFunction,
    pub volume: f64,
    pub ceiling_area: f64,
    pub nice_height: f64,
    pub nice_ceiling_area: f64,
}

/// One line of a sweep report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoomRecord {
    #[serde(rename = "V")]
    pub volume: f64,
    #[serde(rename = "A_C")]
    pub ceiling_area: f64,
    #[serde(rename = "A_S")]
    pub nice_ceiling_area: f64,
    #[serde(rename = "H_equiv")]
    pub nice_height: f64,
    pub margin: f64,
}

impl RoomSpec {
    /// `A_C − A_S`, nonnegative up to quadrature error.
    pub fn margin(&self) -> f64 {
        self.ceiling_area - self.nice_ceiling_area
    }

    pub fn record(&self) -> RoomRecord {
        RoomRecord {
            volume: self.volume,
            ceiling_area: self.ceiling_area,
            nice_ceiling_area: self.nice_ceiling_area,
            nice_height: self.nice_height,
            margin: self.margin(),
        }
    }
}

/// Computes a room and checks `Area(C) ≥ Area(S)` and `Vol(R) < (H/2) Area(C)`.
///
/// Both checks allow `abs_tol + rel_tol·|value|` of slack: the constant
/// ceiling attains the first with equality, and the constant ceiling at
/// height `H` attains the second.
pub fn isoperimetric_check(floor: &FloorRegion, g: &CeilingFunction, tol: &Tolerance) -> Result<RoomSpec> {
    let volume = room_volume(floor, g, tol)?;
    let ceiling_area = ceiling_area(floor, g, tol)?;
    let a_f = floor.area();
    let nice_height = nice_height(volume, a_f)?;
    let nice_area = nice_ceiling_area(volume, a_f)?;
    let spec = RoomSpec {
        floor: *floor,
        ceiling: g.clone(),
        volume,
        ceiling_area,
        nice_height,
        nice_ceiling_area: nice_area,
    };
    if ceiling_area < nice_area - tol.allowance(nice_area) {
        return Err(Error::InequalityViolation(format!(
            "ceiling area {ceiling_area} below constant-height ceiling area {nice_area}"
        )));
    }
    let cap = constant_h() / 2.0 * ceiling_area;
    if volume > cap + tol.allowance(cap) {
        return Err(Error::InequalityViolation(format!(
            "room volume {volume} exceeds (H/2) * ceiling area = {cap}"
        )));
    }
    Ok(spec)
}

/// Volume and floor area of the cusp prism over a projective triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CuspPrism {
    pub volume: f64,
    pub floor_area: f64,
}

/// Computes `½∬ dx dy/(1 − x² − y²)` and `∬ dx dy/(1 − x² − y²)^{3/2}` over
/// the triangle and checks that the first is below half the second.
pub fn cusp_prism_check(tri: &ProjectiveTriangle, tol: &Tolerance) -> Result<CuspPrism> {
    let jac = tri.jacobian().abs();
    let over = |weight: fn(f64) -> f64| {
        integrate_rectangle(
            |u, v| {
                let [x, y] = tri.point(u, v);
                Ok(weight(1.0 - x * x - y * y) * u * jac)
            },
            (0.0, 1.0),
            (0.0, 1.0),
            tol,
        )
    };
    let volume = 0.5 * over(|s| 1.0 / s)?;
    let floor_area = over(|s| s.powf(-1.5))?;
    if volume >= floor_area / 2.0 {
        return Err(Error::InequalityViolation(format!(
            "cusp prism volume {volume} is not below half the floor area {floor_area}"
        )));
    }
    Ok(CuspPrism { volume, floor_area })
}

/// A random smooth ceiling over a disk of the given radius, with heights in
/// `[0, 3]` and an analytic gradient.
///
/// `g = c + a₁ tanh r sin(θ+φ₁) + a₂ (r/R)² cos(2θ+φ₂) + a₃ cos(πr/R)`.
pub fn random_ceiling<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> CeilingFunction {
    let amplitude_budget = rng.gen_range(0.0..1.5);
    let weights: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
    let total: f64 = weights.iter().sum::<f64>().max(f64::MIN_POSITIVE);
    let [a1, a2, a3] = weights.map(|w| amplitude_budget * w / total);
    let base = rng.gen_range(amplitude_budget..=(3.0 - amplitude_budget));
    let (phi1, phi2) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
    let big_r = radius;
    CeilingFunction::with_gradient(
        move |r, t| {
            base + a1 * r.tanh() * (t + phi1).sin()
                + a2 * (r / big_r).powi(2) * (2.0 * t + phi2).cos()
                + a3 * (PI * r / big_r).cos()
        },
        move |r, t| {
            let sech2 = 1.0 / r.cosh().powi(2);
            let gr = a1 * sech2 * (t + phi1).sin() + a2 * 2.0 * r / (big_r * big_r) * (2.0 * t + phi2).cos()
                - a3 * PI / big_r * (PI * r / big_r).sin();
            let gt = a1 * r.tanh() * (t + phi1).cos() - 2.0 * a2 * (r / big_r).powi(2) * (2.0 * t + phi2).sin();
            (gr, gt)
        },
    )
}

/// Random projective triangle with vertices in the disk of Euclidean radius
/// `max_radius < 1`, rejecting near-degenerate ones.
pub fn random_triangle<R: Rng + ?Sized>(rng: &mut R, max_radius: f64) -> ProjectiveTriangle {
    loop {
        let mut vertex = || {
            let rho = max_radius * rng.gen::<f64>().sqrt();
            let t = rng.gen_range(0.0..2.0 * PI);
            [rho * t.cos(), rho * t.sin()]
        };
        let vertices = [vertex(), vertex(), vertex()];
        if let Ok(tri) = ProjectiveTriangle::new(vertices) {
            if tri.jacobian().abs() > 1e-3 {
                return tri;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn floors_validate() {
        assert!(FloorRegion::disk(0.0).is_err());
        assert!(FloorRegion::disk(f64::INFINITY).is_err());
        assert!(ProjectiveTriangle::new([[0.0, 0.0], [1.0, 0.0], [0.0, 0.5]]).is_err());
        assert!(ProjectiveTriangle::new([[0.0, 0.0], [0.2, 0.2], [0.4, 0.4]]).is_err());
        assert!(ProjectiveTriangle::new([[0.0, 0.0], [0.0, 0.0], [0.4, 0.1]]).is_err());
        let disk = FloorRegion::disk(1.0).unwrap();
        assert!((disk.area() - 2.0 * PI * (1f64.cosh() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn empty_room() {
        let floor = FloorRegion::disk(1.0).unwrap();
        let g = CeilingFunction::constant(0.0);
        assert_eq!(room_volume(&floor, &g, &tol()).unwrap(), 0.0);
        let a = ceiling_area(&floor, &g, &tol()).unwrap();
        assert!((a - floor.area()).abs() < 1e-11);
    }

    #[test]
    fn constant_room_closed_forms() {
        let floor = FloorRegion::disk(1.3).unwrap();
        let h = 0.8;
        let g = CeilingFunction::constant(h);
        let v = room_volume(&floor, &g, &tol()).unwrap();
        let expected_v = floor.area() * 0.25 * ((2.0 * h).sinh() + 2.0 * h);
        assert!((v - expected_v).abs() < 1e-11);
        let a = ceiling_area(&floor, &g, &tol()).unwrap();
        assert!((a - floor.area() * h.cosh().powi(2)).abs() < 1e-11);
    }

    #[test]
    fn negative_ceiling_rejected() {
        let floor = FloorRegion::disk(1.0).unwrap();
        let g = CeilingFunction::new(|r, _| r - 0.5);
        assert!(room_volume(&floor, &g, &tol()).unwrap_err().is_domain());
    }

    #[test]
    fn finite_difference_fallback_matches() {
        let floor = FloorRegion::disk(1.0).unwrap();
        let exact = CeilingFunction::with_gradient(
            |r, t| 1.0 + 0.3 * r * r * t.cos(),
            |r, t| (0.6 * r * t.cos(), -0.3 * r * r * t.sin()),
        );
        let fd = CeilingFunction::new(|r, t| 1.0 + 0.3 * r * r * t.cos());
        assert!(!fd.has_analytic_gradient());
        let a = ceiling_area(&floor, &exact, &tol()).unwrap();
        let b = ceiling_area(&floor, &fd, &tol()).unwrap();
        assert!((a - b).abs() < 1e-7, "{a} vs {b}");
        let c = ceiling_area(&floor, &CeilingFunction::new(|_, _| 0.7), &tol()).unwrap();
        assert!((c - floor.area() * 0.7f64.cosh().powi(2)).abs() < 1e-10);
    }

    #[test]
    fn nice_height_values() {
        assert_eq!(nice_height(0.0, 1.0).unwrap(), 0.0);
        let v = 0.25 * (2f64.sinh() + 2.0);
        assert!((nice_height(v, 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(nice_height(-1.0, 1.0).is_err());
        assert!(nice_height(1.0, 0.0).is_err());
    }

    #[test]
    fn nice_ceiling_values() {
        assert!((nice_ceiling_area(0.0, 2.5).unwrap() - 2.5).abs() < 1e-15);
        let v = 0.25 * (2f64.sinh() + 2.0);
        let a = nice_ceiling_area(v, 1.0).unwrap();
        assert!((a - 1f64.cosh().powi(2)).abs() < 1e-12);
        assert!((a - 2.381_097_845_541_816).abs() < 1e-12);
    }

    #[test]
    fn h_constant() {
        let h = constant_h();
        assert!((h - 1.199678).abs() < 1e-6);
        assert!((1.0 / h.tanh() - h).abs() < 1e-10);
        assert!((2.0 / h - 1.667113).abs() < 1e-6);
    }

    #[test]
    fn ratio_limits() {
        let h = constant_h();
        assert!((nice_room_ratio(h).unwrap() - 2.0 / h).abs() < 1e-12);
        assert!((nice_room_ratio(20.0).unwrap() - 2.0).abs() < 1e-6);
        assert!(nice_room_ratio(1e-4).unwrap() > 1e3);
        // Both branches agree where they meet.
        let below = 4.0 * 20f64.cosh().powi(2) / (40f64.sinh() + 40.0);
        assert!((nice_room_ratio(20.0).unwrap() - below).abs() < 1e-12);
        assert!(nice_room_ratio(0.0).is_err());
        assert!(nice_room_ratio(-1.0).is_err());
    }

    #[test]
    fn constant_ceiling_equality_case() {
        let floor = FloorRegion::disk(0.9).unwrap();
        let spec = isoperimetric_check(&floor, &CeilingFunction::constant(0.6), &tol()).unwrap();
        assert!(spec.margin().abs() < 1e-10);
        // The constant room at height H attains the volume bound exactly.
        let at_h = isoperimetric_check(&floor, &CeilingFunction::constant(constant_h()), &tol()).unwrap();
        assert!((at_h.volume - constant_h() / 2.0 * at_h.ceiling_area).abs() < 1e-10);
    }

    #[test]
    fn strict_gap_for_tilted_ceiling() {
        let floor = FloorRegion::disk(1.0).unwrap();
        let g = CeilingFunction::with_gradient(
            |r, t| 0.5 + 0.3 * t.sin() * r.tanh(),
            |r, t| (0.3 * t.sin() / r.cosh().powi(2), 0.3 * t.cos() * r.tanh()),
        );
        let spec = isoperimetric_check(&floor, &g, &tol()).unwrap();
        assert!(spec.margin() > 1e-4, "{}", spec.margin());
    }

    #[test]
    fn record_field_names() {
        let floor = FloorRegion::disk(1.0).unwrap();
        let spec = isoperimetric_check(&floor, &CeilingFunction::constant(1.0), &tol()).unwrap();
        let json = serde_json::to_value(spec.record()).unwrap();
        for key in ["V", "A_C", "A_S", "H_equiv", "margin"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn cusp_prism_small_triangle() {
        let tri = ProjectiveTriangle::new([[0.0, 0.0], [0.01, 0.0], [0.0, 0.01]]).unwrap();
        let prism = cusp_prism_check(&tri, &tol()).unwrap();
        let ratio = prism.volume / prism.floor_area;
        assert!(ratio < 0.5 && ratio > 0.5 - 1e-4, "{ratio}");
    }

    #[test]
    fn cusp_prism_equilateral() {
        let c = 0.9;
        let v = |k: f64| {
            let t = 2.0 * PI * k / 3.0;
            [c * t.cos(), c * t.sin()]
        };
        let tri = ProjectiveTriangle::new([v(0.0), v(1.0), v(2.0)]).unwrap();
        let prism = cusp_prism_check(&tri, &tol()).unwrap();
        assert!(prism.volume < prism.floor_area / 2.0);
        assert!((prism.floor_area - tri.hyperbolic_area()).abs() < 1e-8);
    }
}
