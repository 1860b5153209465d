//! Distance bounds between elliptic axes, the injectivity-radius bound for
//! turnovers, the table of turnover supergroups, and the cone-order
//! sets they induce.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trig::{classify, triangle_geometry, turnover_area, GeometryClass, TurnoverSignature};

/// Orders `n ≥ max(3, m)` of two elliptic isometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EllipticPair {
    n: u32,
    m: u32,
}

impl EllipticPair {
    /// Builds a pair from unordered orders; the larger becomes `n`.
    pub fn new(a: u32, b: u32) -> Result<Self> {
        let (n, m) = if a >= b { (a, b) } else { (b, a) };
        if m < 2 {
            return Err(Error::domain(format!("elliptic order {m} is below 2")));
        }
        if n < 3 {
            return Err(Error::domain(format!("pair ({a}, {b}) needs one order at least 3")));
        }
        Ok(EllipticPair { n, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }
}

/// The piecewise constant `c(n, m)` of the Gehring–Martin axial distance bound.
pub fn c_bound(pair: EllipticPair) -> f64 {
    let (n, m) = (pair.n, pair.m);
    match n {
        7.. => (2.0 * (2.0 * PI / n as f64).cos() - 1.0).sqrt() / 2.0,
        6 if m >= 3 => (PI / m as f64).cos() / 2.0,
        6 => 1.0 / 8f64.sqrt(),
        5 => ((5f64.sqrt() - 1.0) / 16.0).sqrt(),
        4 => ((3f64.sqrt() - 1.0) / 8.0).sqrt(),
        _ => ((5f64.sqrt() - 2.0) / 8.0).sqrt(),
    }
}

/// Lower bound `δ(n, m)` on the distance between disjoint axes of elliptics of
/// orders `n` and `m` generating a discrete non-elementary group.
pub fn delta(pair: EllipticPair) -> f64 {
    let s = (PI / pair.n as f64).sin() * (PI / pair.m as f64).sin();
    (c_bound(pair) / s).asinh()
}

/// Closed form `δ(n, n) = 2 acosh(1 / (2 sin(π/n)))` for `n ≥ 7`.
pub fn delta_nn(n: u32) -> Result<f64> {
    if n < 7 {
        return Err(Error::domain(format!("delta_nn needs n >= 7, got {n}")));
    }
    Ok(2.0 * (1.0 / (2.0 * (PI / n as f64).sin())).acosh())
}

/// Radius `ln((2 + √7)/√3)` of the largest disk embedded in a thrice-punctured
/// sphere; every embedded disk in a hyperbolic turnover is smaller.
pub fn max_injectivity_radius() -> f64 {
    ((2.0 + 7f64.sqrt()) / 3f64.sqrt()).ln()
}

/// Whether an order-`n` elliptic axis can meet a turnover plane obliquely:
/// its collar of radius `δ(n,n)/2` must fit under the injectivity radius.
pub fn oblique_order_admissible(n: u32) -> Result<bool> {
    Ok(delta_nn(n)? / 2.0 < max_injectivity_radius())
}

/// Translation distance of `z ↦ z + 4` at a point of height `b` in the upper
/// half-plane, `2 ln((2 + √(b² + 4))/b)`.
pub fn translate_distance(height: f64) -> Result<f64> {
    if !(height > 0.0) {
        return Err(Error::domain(format!("height must be positive, got {height}")));
    }
    Ok(2.0 * ((2.0 + (height * height + 4.0).sqrt()) / height).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    S,
    T,
}

/// One entry of a signature pattern: a fixed order or a multiple of a
/// parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderPattern {
    Fixed(u32),
    Scaled { factor: u32, param: Param },
}

impl OrderPattern {
    fn eval(self, s: Option<u32>, t: Option<u32>) -> Option<u32> {
        match self {
            OrderPattern::Fixed(n) => Some(n),
            OrderPattern::Scaled { factor, param } => {
                let v = match param {
                    Param::S => s?,
                    Param::T => t?,
                };
                factor.checked_mul(v)
            }
        }
    }
}

impl fmt::Display for OrderPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OrderPattern::Fixed(n) => write!(f, "{n}"),
            OrderPattern::Scaled { factor, param } => {
                if factor != 1 {
                    write!(f, "{factor}")?;
                }
                f.write_str(match param {
                    Param::S => "s",
                    Param::T => "t",
                })
            }
        }
    }
}

impl FromStr for OrderPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid order pattern {s:?}"));
        let (digits, param) = match s.chars().last() {
            Some('s') => (&s[..s.len() - 1], Some(Param::S)),
            Some('t') => (&s[..s.len() - 1], Some(Param::T)),
            Some(_) => (s, None),
            None => return Err(bad()),
        };
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        match param {
            Some(param) => {
                let factor = if digits.is_empty() {
                    1
                } else {
                    digits.parse().map_err(|_| bad())?
                };
                if factor == 0 {
                    return Err(bad());
                }
                Ok(OrderPattern::Scaled { factor, param })
            }
            None => {
                let n: u32 = digits.parse().map_err(|_| bad())?;
                if n < 2 {
                    return Err(bad());
                }
                Ok(OrderPattern::Fixed(n))
            }
        }
    }
}

/// A triple of order patterns such as `(2,s,2t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignaturePattern(pub [OrderPattern; 3]);

impl SignaturePattern {
    pub fn instantiate(&self, s: Option<u32>, t: Option<u32>) -> Option<TurnoverSignature> {
        let [a, b, c] = self.0.map(|o| o.eval(s, t));
        TurnoverSignature::new(a?, b?, c?).ok()
    }

    pub fn uses(&self, param: Param) -> bool {
        self.0
            .iter()
            .any(|o| matches!(o, OrderPattern::Scaled { param: p, .. } if *p == param))
    }

    /// Parameter assignments under which this pattern equals `sig` as a
    /// multiset of orders.
    fn matches(&self, sig: TurnoverSignature) -> Vec<(Option<u32>, Option<u32>)> {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let orders = sig.orders();
        let mut found = Vec::new();
        'perm: for perm in PERMS {
            let (mut s, mut t) = (None, None);
            for (slot, &idx) in perm.iter().enumerate() {
                let value = orders[idx];
                match self.0[slot] {
                    OrderPattern::Fixed(n) if n == value => {}
                    OrderPattern::Fixed(_) => continue 'perm,
                    OrderPattern::Scaled { factor, param } => {
                        if !value.is_multiple_of(factor) {
                            continue 'perm;
                        }
                        let v = value / factor;
                        let bound = match param {
                            Param::S => &mut s,
                            Param::T => &mut t,
                        };
                        match *bound {
                            Some(prev) if prev != v => continue 'perm,
                            _ => *bound = Some(v),
                        }
                    }
                }
            }
            if !found.contains(&(s, t)) {
                found.push((s, t));
            }
        }
        found
    }
}

impl fmt::Display for SignaturePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for SignaturePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("pattern {s:?} must be parenthesized")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("pattern {s:?} needs three entries")));
        }
        Ok(SignaturePattern([
            parts[0].parse()?,
            parts[1].parse()?,
            parts[2].parse()?,
        ]))
    }
}

/// One row of the supergroup table: `super ≥ sub` with the given index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SupergroupEntry {
    pub super_pattern: SignaturePattern,
    pub sub_pattern: SignaturePattern,
    pub index: u32,
    pub normal: bool,
}

impl SupergroupEntry {
    /// Instantiates the row, returning `(super, sub)` when both are hyperbolic.
    pub fn instantiate(&self, s: Option<u32>, t: Option<u32>) -> Option<(TurnoverSignature, TurnoverSignature)> {
        let sup = self.super_pattern.instantiate(s, t)?;
        let sub = self.sub_pattern.instantiate(s, t)?;
        let hyperbolic = |x| classify(x) == GeometryClass::Hyperbolic;
        (hyperbolic(sup) && hyperbolic(sub)).then_some((sup, sub))
    }

    pub fn parameters(&self) -> Vec<Param> {
        [Param::S, Param::T]
            .into_iter()
            .filter(|&p| self.super_pattern.uses(p) || self.sub_pattern.uses(p))
            .collect()
    }
}

impl fmt::Display for SupergroupEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} >= {} | {} | {}",
            self.super_pattern,
            self.sub_pattern,
            self.index,
            if self.normal { "yes" } else { "no" }
        )
    }
}

impl FromStr for SupergroupEntry {
    type Err = Error;

    /// Parses `(2,3,2t) >= (t,t,t) | 6 | yes`.
    fn from_str(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("table row {line:?} needs three fields")));
        }
        let (sup, sub) = fields[0]
            .split_once(">=")
            .ok_or_else(|| Error::Parse(format!("table row {line:?} lacks '>='")))?;
        let index: u32 = fields[1]
            .parse()
            .map_err(|_| Error::Parse(format!("invalid index {:?}", fields[1])))?;
        if index < 2 {
            return Err(Error::Parse(format!("index {index} must be at least 2")));
        }
        let normal = match fields[2] {
            "yes" => true,
            "no" => false,
            other => return Err(Error::Parse(format!("normality must be yes/no, got {other:?}"))),
        };
        let entry = SupergroupEntry {
            super_pattern: sup.parse()?,
            sub_pattern: sub.parse()?,
            index,
            normal,
        };
        for p in [Param::S, Param::T] {
            if entry.super_pattern.uses(p) && !entry.sub_pattern.uses(p) {
                return Err(Error::Parse(format!(
                    "row {line:?}: supergroup parameter not determined by the subgroup"
                )));
            }
        }
        Ok(entry)
    }
}

/// Inclusions between triangle groups.
pub const SUPERGROUP_TABLE: &str = "\
(3,3,t)  >= (t,t,t)    | 3  | yes
(2,3,2t) >= (t,t,t)    | 6  | yes
(2,s,2t) >= (s,s,t)    | 2  | yes
(2,3,7)  >= (7,7,7)    | 24 | no
(2,3,7)  >= (2,7,7)    | 9  | no
(2,3,7)  >= (3,3,7)    | 8  | no
(2,3,8)  >= (4,8,8)    | 12 | no
(2,3,8)  >= (3,8,8)    | 10 | no
(2,3,9)  >= (9,9,9)    | 12 | no
(2,4,5)  >= (4,4,5)    | 6  | no
(2,3,4t) >= (t,4t,4t)  | 6  | no
(2,4,2t) >= (t,2t,2t)  | 4  | no
(2,3,3t) >= (3,t,3t)   | 4  | no
(2,3,2t) >= (2,t,2t)   | 3  | no
";

pub fn parse_table(text: &str) -> Result<Vec<SupergroupEntry>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

/// The fourteen rows of [`SUPERGROUP_TABLE`].
pub fn supergroup_table() -> &'static [SupergroupEntry] {
    static TABLE: OnceLock<Vec<SupergroupEntry>> = OnceLock::new();
    TABLE.get_or_init(|| parse_table(SUPERGROUP_TABLE).expect("built-in supergroup table parses"))
}

/// JSON form of a table row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(rename = "super")]
    pub super_pattern: String,
    #[serde(rename = "sub")]
    pub sub_pattern: String,
    pub index: u32,
    pub normal: bool,
}

pub fn table_rows() -> Vec<TableRow> {
    supergroup_table()
        .iter()
        .map(|e| TableRow {
            super_pattern: e.super_pattern.to_string(),
            sub_pattern: e.sub_pattern.to_string(),
            index: e.index,
            normal: e.normal,
        })
        .collect()
}

/// Checks `Area(sub) = index · Area(super)` for every row instantiated at
/// each parameter value in `values` where both sides are hyperbolic.
/// Returns the number of instantiations checked.
pub fn area_ratio_self_test(values: impl IntoIterator<Item = u32> + Clone) -> Result<usize> {
    let mut checked = 0;
    for entry in supergroup_table() {
        let params = entry.parameters();
        let s_values: Vec<Option<u32>> = if params.contains(&Param::S) {
            values.clone().into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        let t_values: Vec<Option<u32>> = if params.contains(&Param::T) {
            values.clone().into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        for &s in &s_values {
            for &t in &t_values {
                let Some((sup, sub)) = entry.instantiate(s, t) else {
                    continue;
                };
                let exact = sub.defect() == sup.defect().scale(entry.index as i128, 1);
                let ratio = turnover_area(sub)? / turnover_area(sup)?;
                if !exact || (ratio - entry.index as f64).abs() > 1e-10 {
                    return Err(Error::InequalityViolation(format!(
                        "{sup} >= {sub}: area ratio {ratio} differs from index {}",
                        entry.index
                    )));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Supergroup {
    pub signature: TurnoverSignature,
    pub index: u32,
    pub normal: bool,
}

/// Every turnover group containing `sig` according to the table. An empty
/// result means `sig` is maximal.
pub fn supergroups(sig: TurnoverSignature) -> Vec<Supergroup> {
    let mut out: Vec<Supergroup> = Vec::new();
    for entry in supergroup_table() {
        for (s, t) in entry.sub_pattern.matches(sig) {
            let Some((sup, sub)) = entry.instantiate(s, t) else {
                continue;
            };
            if sub != sig {
                continue;
            }
            let found = Supergroup {
                signature: sup,
                index: entry.index,
                normal: entry.normal,
            };
            if !out.contains(&found) {
                out.push(found);
            }
        }
    }
    out
}

/// A finite ascending set of cone orders.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConeOrderSet(BTreeSet<u32>);

impl ConeOrderSet {
    pub fn new(orders: impl IntoIterator<Item = u32>) -> Self {
        ConeOrderSet(orders.into_iter().filter(|&n| n >= 2).collect())
    }

    pub fn contains(&self, n: u32) -> bool {
        self.0.contains(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &ConeOrderSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl FromIterator<u32> for ConeOrderSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        ConeOrderSet::new(iter)
    }
}

impl fmt::Display for ConeOrderSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|n| n.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// `{2,…,9} ∪ {p, q, r, 2p, 2q, 2r}`: the orders a cone point of a boundary
/// turnover in the complement of an immersed `sig` can have.
pub fn cone_order_universe(sig: TurnoverSignature) -> ConeOrderSet {
    let [p, q, r] = sig.orders();
    (2..=9).chain([p, q, r, 2 * p, 2 * q, 2 * r]).collect()
}

/// Which filters acted on each order of the universe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderFilterReport {
    pub signature: TurnoverSignature,
    pub universe: ConeOrderSet,
    pub diameter: f64,
    /// Orders whose axial distance bound exceeds the triangle diameter.
    pub delta_excluded: ConeOrderSet,
    /// Delta-excluded orders kept because a supergroup carries them.
    pub table_protected: ConeOrderSet,
    pub orders: ConeOrderSet,
}

/// Smallest order the distance filter is applied to; smaller orders can
/// share a finite vertex stabilizer with the turnover's cone points.
const DELTA_FILTER_MIN_ORDER: u32 = 6;

pub fn order_filter_report(sig: TurnoverSignature) -> Result<OrderFilterReport> {
    let geometry = triangle_geometry(sig)?;
    let universe = cone_order_universe(sig);
    let vertex_orders = sig.orders();
    let supergroup_orders: BTreeSet<u32> = supergroups(sig).iter().flat_map(|s| s.signature.orders()).collect();

    let mut delta_excluded = BTreeSet::new();
    let mut table_protected = BTreeSet::new();
    let mut orders = BTreeSet::new();
    for n in universe.iter() {
        // An oblique order-n axis meets the turnover plane within one diameter
        // of every cone point, so one vertex whose collar bound is larger
        // rules it out.
        let too_far = n >= DELTA_FILTER_MIN_ORDER
            && !vertex_orders.contains(&n)
            && vertex_orders
                .iter()
                .any(|&m| EllipticPair::new(n, m).map(delta).unwrap_or(0.0) > geometry.diameter);
        if !too_far {
            orders.insert(n);
            continue;
        }
        delta_excluded.insert(n);
        if supergroup_orders.contains(&n) {
            table_protected.insert(n);
            orders.insert(n);
        }
    }
    Ok(OrderFilterReport {
        signature: sig,
        universe,
        diameter: geometry.diameter,
        delta_excluded: ConeOrderSet(delta_excluded),
        table_protected: ConeOrderSet(table_protected),
        orders: ConeOrderSet(orders),
    })
}

/// The cone-order universe after the axial-distance and supergroup filters.
pub fn refined_boundary_orders(sig: TurnoverSignature) -> Result<ConeOrderSet> {
    Ok(order_filter_report(sig)?.orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: u32, q: u32, r: u32) -> TurnoverSignature {
        TurnoverSignature::new(p, q, r).unwrap()
    }

    fn pair(a: u32, b: u32) -> EllipticPair {
        EllipticPair::new(a, b).unwrap()
    }

    #[test]
    fn pair_normalization() {
        assert_eq!(pair(2, 6), pair(6, 2));
        assert_eq!(pair(4, 5).n(), 5);
        assert!(EllipticPair::new(2, 2).is_err());
        assert!(EllipticPair::new(1, 7).is_err());
    }

    #[test]
    fn c_bound_branches() {
        assert!((c_bound(pair(6, 2)) - 1.0 / 8f64.sqrt()).abs() < 1e-15);
        assert!((c_bound(pair(6, 4)) - (PI / 4.0).cos() / 2.0).abs() < 1e-15);
        let c5 = ((5f64.sqrt() - 1.0) / 16.0).sqrt();
        for m in 2..=5 {
            assert_eq!(c_bound(pair(5, m)), c5);
        }
        assert!((c5 - 0.277_946_485_125_710_6).abs() < 1e-15);
        assert!((c_bound(pair(7, 2)) - 0.248_485_212_697_590_45).abs() < 1e-15);
        assert!((c_bound(pair(4, 3)) - ((3f64.sqrt() - 1.0) / 8.0).sqrt()).abs() < 1e-15);
        assert!((c_bound(pair(3, 3)) - ((5f64.sqrt() - 2.0) / 8.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn delta_values() {
        assert!((delta(pair(5, 5)) - 0.736175).abs() < 1e-6);
        assert!((delta(pair(5, 4)) - 0.626869).abs() < 1e-6);
        assert!((delta(pair(7, 7)) - delta_nn(7).unwrap()).abs() < 1e-10);
        assert!((delta_nn(7).unwrap() - 1.090_549_663_507_086).abs() < 1e-12);
    }

    #[test]
    fn delta_nn_behaviour() {
        assert!(delta_nn(9).unwrap() > delta_nn(8).unwrap());
        assert!(delta_nn(1_000_000).unwrap() > 20.0);
        assert!(delta_nn(6).unwrap_err().is_domain());
    }

    #[test]
    fn injectivity_radius() {
        let r = max_injectivity_radius();
        assert!((r - 0.986647).abs() < 1e-6);
        assert!((r.exp() * 3f64.sqrt() - (2.0 + 7f64.sqrt())).abs() < 1e-13);
        assert!(2.0 * r > delta_nn(9).unwrap());
        assert!(2.0 * r < delta_nn(10).unwrap());
        // The translate distance at the orthocenter height √3 is twice r_max.
        assert!((translate_distance(3f64.sqrt()).unwrap() - 2.0 * r).abs() < 1e-14);
        assert!(translate_distance(2.0).unwrap() < 2.0 * r);
    }

    #[test]
    fn oblique_orders() {
        assert!(oblique_order_admissible(7).unwrap());
        assert!(oblique_order_admissible(9).unwrap());
        assert!(!oblique_order_admissible(10).unwrap());
        assert!(!oblique_order_admissible(1_000_000).unwrap());
        assert!(oblique_order_admissible(6).is_err());
    }

    #[test]
    fn table_has_fourteen_rows_and_round_trips() {
        let table = supergroup_table();
        assert_eq!(table.len(), 14);
        for row in table {
            let again: SupergroupEntry = row.to_string().parse().unwrap();
            assert_eq!(&again, row);
        }
    }

    #[test]
    fn area_ratios() {
        // 7 fixed rows, 6 rows in t, 1 row in (s, t).
        assert_eq!(area_ratio_self_test(4..=12).unwrap(), 7 + 6 * 9 + 81);
    }

    #[test]
    fn bad_rows_rejected() {
        for bad in [
            "",
            "(3,3,t) (t,t,t) | 3 | yes",
            "(3,3,t) >= (t,t,t) | 3",
            "(3,3,t) >= (t,t,t) | x | yes",
            "(3,3,t) >= (t,t,t) | 3 | maybe",
            "(3,3,q) >= (t,t,t) | 3 | yes",
            "(3,3,s) >= (t,t,t) | 3 | yes",
            "(3,3) >= (t,t,t) | 3 | yes",
            "(0t,3,3) >= (t,t,t) | 3 | yes",
            "(1,3,3) >= (t,t,t) | 3 | yes",
        ] {
            assert!(bad.parse::<SupergroupEntry>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn supergroups_of_777() {
        let found = supergroups(sig(7, 7, 7));
        let has = |s: TurnoverSignature, i: u32, normal: bool| {
            found
                .iter()
                .any(|x| x.signature == s && x.index == i && x.normal == normal)
        };
        assert!(has(sig(3, 3, 7), 3, true));
        assert!(has(sig(2, 3, 14), 6, true));
        assert!(has(sig(2, 3, 7), 24, false));
    }

    #[test]
    fn supergroups_misc() {
        assert!(supergroups(sig(2, 4, 5)).is_empty());
        assert!(supergroups(sig(2, 3, 7)).is_empty());
        let found = supergroups(sig(4, 8, 8));
        assert!(found.contains(&Supergroup {
            signature: sig(2, 3, 8),
            index: 12,
            normal: false
        }));
        // (3,3,4) = (s,s,t) with s=3, t=4 sits in (2,3,8) with index 2.
        assert!(supergroups(sig(3, 3, 4))
            .iter()
            .any(|x| x.signature == sig(2, 3, 8) && x.index == 2));
    }

    #[test]
    fn universes() {
        assert_eq!(cone_order_universe(sig(2, 4, 5)).to_vec(), (2..=10).collect::<Vec<_>>());
        let mut expected: Vec<u32> = (2..=9).collect();
        expected.push(14);
        assert_eq!(cone_order_universe(sig(7, 7, 7)).to_vec(), expected);
        assert_eq!(cone_order_universe(sig(2, 3, 7)).to_vec(), expected);
    }

    #[test]
    fn refined_orders_245() {
        let report = order_filter_report(sig(2, 4, 5)).unwrap();
        assert_eq!(report.orders.to_vec(), vec![2, 3, 4, 5]);
        assert_eq!(report.delta_excluded.to_vec(), vec![6, 7, 8, 9, 10]);
        assert!(report.table_protected.is_empty());
    }

    #[test]
    fn refined_orders_keep_vertices() {
        let s = sig(2, 3, 7);
        let orders = refined_boundary_orders(s).unwrap();
        assert!(orders.contains(7));
        assert!(orders.is_subset(&cone_order_universe(s)));
    }
}
