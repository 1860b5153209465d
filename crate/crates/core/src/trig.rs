//! Turnover signatures, their geometry classes, and the hyperbolic
//! trigonometry of `(π/p, π/q, π/r)` triangles plus the polygon laws used by
//! the return-path estimates.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest cone order accepted by [`TurnoverSignature::new`].
pub const MAX_CONE_ORDER: u32 = 1_000_000;

/// Cone orders `(p, q, r)` of a turnover, stored sorted so `p ≤ q ≤ r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u32; 3]", into = "[u32; 3]")]
pub struct TurnoverSignature {
    p: u32,
    q: u32,
    r: u32,
}

impl TurnoverSignature {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self> {
        let mut orders = [a, b, c];
        for &n in &orders {
            if n < 2 {
                return Err(Error::domain(format!("cone order {n} is below 2")));
            }
            if n > MAX_CONE_ORDER {
                return Err(Error::domain(format!(
                    "cone order {n} exceeds the cap {MAX_CONE_ORDER}"
                )));
            }
        }
        orders.sort_unstable();
        Ok(TurnoverSignature {
            p: orders[0],
            q: orders[1],
            r: orders[2],
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn orders(&self) -> [u32; 3] {
        [self.p, self.q, self.r]
    }

    /// How many of the three cone points have order `n`.
    pub fn multiplicity(&self, n: u32) -> usize {
        self.orders().iter().filter(|&&m| m == n).count()
    }

    /// `1 - 1/p - 1/q - 1/r` as an exact fraction `(numerator, denominator)`,
    /// denominator positive.
    pub fn defect(&self) -> Fraction {
        let (p, q, r) = (self.p as i128, self.q as i128, self.r as i128);
        Fraction::new(p * q * r - q * r - p * r - p * q, p * q * r)
    }

    /// Orbifold Euler characteristic `1/p + 1/q + 1/r - 1`.
    pub fn euler_char(&self) -> f64 {
        1.0 / self.p as f64 + 1.0 / self.q as f64 + 1.0 / self.r as f64 - 1.0
    }
}

impl fmt::Display for TurnoverSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

impl TryFrom<[u32; 3]> for TurnoverSignature {
    type Error = Error;

    fn try_from(v: [u32; 3]) -> Result<Self> {
        TurnoverSignature::new(v[0], v[1], v[2])
    }
}

impl From<TurnoverSignature> for [u32; 3] {
    fn from(s: TurnoverSignature) -> Self {
        s.orders()
    }
}

impl FromStr for TurnoverSignature {
    type Err = Error;

    /// Accepts `2,4,5`, `(2,4,5)`, `2 4 5` and `(2, 4, 5)`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = match (trimmed.strip_prefix('('), trimmed.strip_suffix(')')) {
            (Some(_), Some(_)) if trimmed.len() >= 2 => &trimmed[1..trimmed.len() - 1],
            (None, None) => trimmed,
            _ => return Err(Error::Parse(format!("unbalanced parentheses in {s:?}"))),
        };
        let parts: Vec<&str> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three cone orders in {s:?}")));
        }
        let mut orders = [0u32; 3];
        for (slot, part) in orders.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::Parse(format!("invalid cone order {part:?}")))?;
        }
        TurnoverSignature::try_from(orders)
    }
}

/// An exact rational with positive denominator, used for budget comparisons
/// where floating point would blur equality cases.
#[derive(Debug, Clone, Copy)]
pub struct Fraction {
    pub num: i128,
    pub den: i128,
}

impl Fraction {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            Fraction { num: -num, den: -den }
        } else {
            Fraction { num, den }
        }
    }

    pub fn scale(self, mul: i128, div: i128) -> Self {
        Fraction::new(self.num * mul, self.den * div)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn signum(self) -> i32 {
        self.num.signum() as i32
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Fraction {}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryClass {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for GeometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryClass::Spherical => "spherical",
            GeometryClass::Euclidean => "euclidean",
            GeometryClass::Hyperbolic => "hyperbolic",
        })
    }
}

/// Exact classification by the sign of `1/p + 1/q + 1/r - 1`.
pub fn classify(sig: TurnoverSignature) -> GeometryClass {
    match sig.defect().signum() {
        1 => GeometryClass::Hyperbolic,
        0 => GeometryClass::Euclidean,
        _ => GeometryClass::Spherical,
    }
}

pub(crate) fn require_hyperbolic(sig: TurnoverSignature) -> Result<()> {
    match classify(sig) {
        GeometryClass::Hyperbolic => Ok(()),
        class => Err(Error::domain(format!("{sig} is {class}, not hyperbolic"))),
    }
}

/// Area `2π(1 - 1/p - 1/q - 1/r)` of a hyperbolic turnover.
pub fn turnover_area(sig: TurnoverSignature) -> Result<f64> {
    require_hyperbolic(sig)?;
    Ok(2.0 * PI * sig.defect().to_f64())
}

/// Side lengths and areas of the `(π/p, π/q, π/r)` triangle whose double is
/// the turnover.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleGeometry {
    pub signature: TurnoverSignature,
    /// `[π/p, π/q, π/r]`.
    pub angles: [f64; 3],
    /// `sides[i]` is opposite `angles[i]`.
    pub sides: [f64; 3],
    pub area_triangle: f64,
    pub area_turnover: f64,
    pub euler_char: f64,
    /// Longest side, which realizes the largest distance between two points
    /// of the triangle.
    pub diameter: f64,
}

impl TriangleGeometry {
    /// Length of the side joining vertices `i` and `j` (indices into the
    /// sorted orders).
    pub fn side_between(&self, i: usize, j: usize) -> f64 {
        assert!(i < 3 && j < 3 && i != j, "vertex indices must be distinct and < 3");
        self.sides[3 - i - j]
    }

    /// Length of the side joining a vertex of order `a` to one of order `b`.
    pub fn side_between_orders(&self, a: u32, b: u32) -> Option<f64> {
        let orders = self.signature.orders();
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && orders[i] == a && orders[j] == b)
            .map(|(i, j)| self.side_between(i, j))
    }
}

/// Side opposite `gamma` in a triangle with angles `alpha, beta, gamma`,
/// from the hyperbolic law of cosines for angles.
fn opposite_side(alpha: f64, beta: f64, gamma: f64) -> f64 {
    let c = (gamma.cos() + alpha.cos() * beta.cos()) / (alpha.sin() * beta.sin());
    // Rounding can push an exact 1 just below it.
    c.max(1.0).acosh()
}

pub fn triangle_geometry(sig: TurnoverSignature) -> Result<TriangleGeometry> {
    let area_turnover = turnover_area(sig)?;
    let angles = sig.orders().map(|n| PI / n as f64);
    let sides = [
        opposite_side(angles[1], angles[2], angles[0]),
        opposite_side(angles[0], angles[2], angles[1]),
        opposite_side(angles[0], angles[1], angles[2]),
    ];
    let diameter = sides.iter().copied().fold(0.0, f64::max);
    Ok(TriangleGeometry {
        signature: sig,
        angles,
        sides,
        area_triangle: area_turnover / 2.0,
        area_turnover,
        euler_char: sig.euler_char(),
        diameter,
    })
}

/// Strict lower bound `asinh(1/sinh d)` for the free leg of the almost-right
/// quadrilateral whose opposite side has length `d`.
pub fn lambert_leg_bound(d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::domain(format!("length must be positive, got {d}")));
    }
    Ok((1.0 / d.sinh()).asinh())
}

/// Side `d` of an all-right hexagon whose alternate sides have lengths `l`,
/// `l` and `l_prime`, where `d` joins the two sides of length `l`:
/// `cosh d = (cosh² l + cosh l') / sinh² l`.
pub fn hexagon_side(l: f64, l_prime: f64) -> Result<f64> {
    if !(l > 0.0) || !(l_prime > 0.0) {
        return Err(Error::domain(format!(
            "hexagon sides must be positive, got {l} and {l_prime}"
        )));
    }
    let c = l.cosh();
    let value = (c * c + l_prime.cosh()) / l.sinh().powi(2);
    Ok(value.max(1.0).acosh())
}
