//! Regular truncated 3-simplices `T_θ`, the density `ρ₃`, and lower bounds on
//! return-path angles.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{integrate, lobachevsky, Tolerance};
use crate::trig::{require_hyperbolic, turnover_area, TurnoverSignature};

fn check_angle(theta: f64) -> Result<()> {
    if !(0.0..FRAC_PI_3).contains(&theta) {
        return Err(Error::domain(format!("dihedral angle {theta} outside [0, pi/3)")));
    }
    Ok(())
}

/// `acosh(1 + x)` without cancellation for small `x`.
fn acosh_1p(x: f64) -> f64 {
    (x + (x * (x + 2.0)).sqrt()).ln_1p()
}

/// Edge length `l` of `T_θ` between truncating planes:
/// `cosh l = cos θ / (2 cos θ − 1)`.
pub fn edge_from_angle(theta: f64) -> Result<f64> {
    check_angle(theta)?;
    let s = (theta / 2.0).sin();
    Ok(acosh_1p(2.0 * s * s / (2.0 * theta.cos() - 1.0)))
}

/// Dihedral angle of the regular truncated simplex with edge length `l`.
pub fn angle_from_edge(l: f64) -> Result<f64> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::domain(format!(
            "edge length must be positive and finite, got {l}"
        )));
    }
    // 1 - cos θ = 2 sinh²(l/2) / (2 cosh l − 1)
    let sh = (l / 2.0).sinh();
    let denom = 2.0 * l.cosh() - 1.0;
    let half = if denom.is_finite() {
        (sh * sh / denom).sqrt()
    } else {
        0.5
    };
    Ok(2.0 * half.min(1.0).asin())
}

/// `Vol(T_θ) = 8Λ(π/4) − 3∫₀^θ acosh(cos t/(2cos t − 1)) dt`.
pub fn truncated_simplex_volume(theta: f64) -> Result<f64> {
    check_angle(theta)?;
    let octahedron = 8.0 * lobachevsky(FRAC_PI_4)?;
    if theta == 0.0 {
        return Ok(octahedron);
    }
    let swept = integrate(
        |t| {
            let s = (t / 2.0).sin();
            acosh_1p(2.0 * s * s / (2.0 * t.cos() - 1.0))
        },
        0.0,
        theta,
        &Tolerance::default(),
    )?;
    Ok(octahedron - 3.0 * swept)
}

/// A regular truncated simplex with its edge length, volume and density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSimplexSpec {
    pub theta: f64,
    pub edge_length: f64,
    pub volume: f64,
    pub rho3: f64,
}

impl TruncatedSimplexSpec {
    pub fn from_angle(theta: f64) -> Result<Self> {
        let volume = truncated_simplex_volume(theta)?;
        Ok(TruncatedSimplexSpec {
            theta,
            edge_length: edge_from_angle(theta)?,
            volume,
            rho3: volume / (4.0 * (PI - 3.0 * theta)),
        })
    }

    pub fn from_edge(l: f64) -> Result<Self> {
        let theta = angle_from_edge(l)?;
        check_angle(theta)?;
        let volume = truncated_simplex_volume(theta)?;
        Ok(TruncatedSimplexSpec {
            theta,
            edge_length: l,
            volume,
            rho3: volume / (4.0 * (PI - 3.0 * theta)),
        })
    }
}

/// Ratio of `Vol(T_θ)` to the area `4(π − 3θ)` of its truncation triangles,
/// where `T_θ` has edge length `2r`.
pub fn rho3(r: f64) -> Result<f64> {
    if !(r > 0.0) || r.is_nan() {
        return Err(Error::domain(format!("rho3 needs r > 0, got {r}")));
    }
    Ok(TruncatedSimplexSpec::from_edge(2.0 * r)?.rho3)
}

/// A shortest return path from a turnover boundary: `k` is the order of the
/// maximal elliptic axis it lies on (1 when it avoids the singular locus).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReturnPathCase {
    pub boundary: TurnoverSignature,
    pub k: u32,
    pub closed: bool,
    pub chi: f64,
    pub theta: f64,
    pub min_length: f64,
}

impl ReturnPathCase {
    pub fn new(boundary: TurnoverSignature, k: u32, closed: bool) -> Result<Self> {
        require_hyperbolic(boundary)?;
        if k != 1 && boundary.multiplicity(k) == 0 {
            return Err(Error::domain(format!(
                "k = {k} is neither 1 nor a cone order of {boundary}"
            )));
        }
        let chi = boundary.euler_char();
        let theta = theta_formula(chi, k, closed)?;
        Ok(ReturnPathCase {
            boundary,
            k,
            closed,
            chi,
            theta,
            min_length: edge_from_angle(theta)?,
        })
    }
}

fn theta_formula(chi: f64, k: u32, closed: bool) -> Result<f64> {
    if !(chi < 0.0) {
        return Err(Error::domain(format!("Euler characteristic {chi} is not negative")));
    }
    let weight = if closed { k as f64 } else { k as f64 / 2.0 };
    Ok(PI / (3.0 * (1.0 - weight * chi)))
}

/// `π/(3(1 − kχ))` for closed paths, `π/(3(1 − (k/2)χ))` otherwise.
pub fn return_path_theta(case: &ReturnPathCase) -> Result<f64> {
    theta_formula(case.chi, case.k, case.closed)
}

/// `ρ₃(l/2) · Area(∂Q)`.
pub fn miyamoto_lower_bound(boundary_area: f64, l: f64) -> Result<f64> {
    if !(boundary_area > 0.0 && boundary_area.is_finite()) {
        return Err(Error::domain(format!(
            "boundary area must be positive, got {boundary_area}"
        )));
    }
    Ok(rho3(l / 2.0)? * boundary_area)
}

/// [`miyamoto_lower_bound`] with the boundary area of a turnover.
pub fn turnover_lower_bound(boundary: TurnoverSignature, l: f64) -> Result<f64> {
    miyamoto_lower_bound(turnover_area(boundary)?, l)
}

/// Minimum return-path length forced by an embedded boundary disk of radius
/// `r`: `cosh l = cosh 2r / (cosh 2r − 1)`.
pub fn length_from_disk_radius(disk_r: f64) -> Result<f64> {
    if !(disk_r > 0.0) || disk_r.is_nan() {
        return Err(Error::domain(format!("disk radius must be positive, got {disk_r}")));
    }
    let sh = disk_r.sinh();
    Ok(acosh_1p(1.0 / (2.0 * sh * sh)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: u32, q: u32, r: u32) -> TurnoverSignature {
        TurnoverSignature::new(p, q, r).unwrap()
    }

    #[test]
    fn edge_values() {
        assert_eq!(edge_from_angle(0.0).unwrap(), 0.0);
        let e = edge_from_angle(FRAC_PI_4).unwrap();
        assert!((e - (1.0 / (2.0 - 2f64.sqrt())).acosh()).abs() < 1e-14);
        assert!((e - 1.128_383_964_966_301).abs() < 1e-12);
        assert!(edge_from_angle(FRAC_PI_3 - 1e-6).unwrap() > 7.0);
        assert!(edge_from_angle(FRAC_PI_3).unwrap_err().is_domain());
        assert!(edge_from_angle(-0.1).is_err());
        assert!(edge_from_angle(f64::NAN).is_err());
    }

    #[test]
    fn round_trip() {
        for theta in [1e-3, 0.1, 0.5, 1.0, FRAC_PI_3 - 1e-3] {
            let back = angle_from_edge(edge_from_angle(theta).unwrap()).unwrap();
            assert!((back - theta).abs() < 1e-10, "{theta} -> {back}");
        }
        assert!(angle_from_edge(0.0).is_err());
        assert!(angle_from_edge(-1.0).is_err());
        assert!((angle_from_edge(1e6).unwrap() - FRAC_PI_3).abs() < 1e-12);
        assert!(angle_from_edge(f64::INFINITY).is_err());
    }

    #[test]
    fn volume_anchors() {
        let v0 = truncated_simplex_volume(0.0).unwrap();
        assert!((v0 - 3.663_862_376_708_876).abs() < 1e-10);
        let v = truncated_simplex_volume(FRAC_PI_4).unwrap();
        assert!((v - 2.573_105_460_241_291_7).abs() < 1e-9);
        assert!(truncated_simplex_volume(1.1).unwrap_err().is_domain());
    }

    #[test]
    fn volume_decreases() {
        let mut last = f64::INFINITY;
        for i in 0..20 {
            let theta = i as f64 * 0.05;
            let v = truncated_simplex_volume(theta).unwrap();
            assert!(v < last && v > 0.0);
            last = v;
        }
    }

    #[test]
    fn rho3_values() {
        let r = edge_from_angle(FRAC_PI_4).unwrap() / 2.0;
        assert!((r - 0.564_191_982_483_150_5).abs() < 1e-12);
        let value = rho3(r).unwrap();
        assert!((value * PI / 6.0 - 0.428_850_91).abs() < 1e-8);
        assert!(rho3(0.0).is_err());
    }

    #[test]
    fn return_path_thetas() {
        let case = ReturnPathCase::new(sig(3, 3, 4), 4, true).unwrap();
        assert!((case.theta - FRAC_PI_4).abs() < 1e-15);
        assert!((return_path_theta(&case).unwrap() - FRAC_PI_4).abs() < 1e-15);
        let open = ReturnPathCase::new(sig(3, 3, 4), 1, false).unwrap();
        assert!((open.theta - 1.005_309_649_148_733_8).abs() < 1e-14);
        assert!(ReturnPathCase::new(sig(3, 3, 4), 5, true).is_err());
        assert!(ReturnPathCase::new(sig(3, 3, 3), 1, true).is_err());
        assert!(theta_formula(0.0, 1, true).is_err());
        let near_flat = theta_formula(-1e-12, 1, true).unwrap();
        assert!((near_flat - FRAC_PI_3).abs() < 1e-10);
    }

    #[test]
    fn disk_radius_chain() {
        let disk_r = (2f64.sqrt() * (PI / 5.0).cos()).acosh();
        let l = length_from_disk_radius(disk_r).unwrap();
        assert!((l.cosh() - 2.618_033_988_749_895).abs() < 1e-12);
        let theta = angle_from_edge(l).unwrap();
        assert!((theta - 0.904_556_894_302_381_4).abs() < 1e-10);
        let bound = turnover_lower_bound(sig(2, 4, 5), l).unwrap();
        assert!((bound - 0.383_986_071_605_212_3).abs() < 1e-9);
        assert!(length_from_disk_radius(0.0).is_err());
        assert!(length_from_disk_radius(30.0).unwrap() < 1e-10);
    }

    #[test]
    fn bound_scales_with_area() {
        let l = edge_from_angle(0.5).unwrap();
        let a = miyamoto_lower_bound(1.0, l).unwrap();
        let b = miyamoto_lower_bound(1e-9, l).unwrap();
        assert!((b - a * 1e-9).abs() < 1e-20);
        assert!(miyamoto_lower_bound(0.0, l).is_err());
    }
}
