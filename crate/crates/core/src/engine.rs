//! Volume budgets for immersed turnovers and the case analysis that rules
//! out boundary turnovers of the complementary core.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::collars::{refined_boundary_orders, ConeOrderSet};
use crate::error::{Error, Result};
use crate::rooms::constant_h;
use crate::simplices::{
    angle_from_edge, edge_from_angle, length_from_disk_radius, miyamoto_lower_bound, ReturnPathCase,
};
use crate::trig::{
    classify, lambert_leg_bound, require_hyperbolic, triangle_geometry, turnover_area, Fraction, GeometryClass,
    TurnoverSignature,
};

/// Smallest area of a hyperbolic 2-orbifold, that of the `(2,3,7)` triangle.
pub const MIN_PIECE_AREA: f64 = PI / 21.0;

/// Volume and boundary-area budgets attached to an immersed turnover.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundLedger {
    pub signature: TurnoverSignature,
    /// 2 when the turnover group sits in a ℤ/2 reflection extension.
    pub extension_index: u32,
    pub area: f64,
    /// Bound on the total area of the boundary turnovers, `2·area/ext`.
    pub two_sided_budget: f64,
    /// `H · area / ext`.
    pub upper_bound_with_boundary: f64,
    /// `area / ext`.
    pub upper_bound_no_boundary: f64,
    /// `⌊two_sided_budget / (π/21)⌋`.
    pub max_boundary_pieces: u32,
}

impl BoundLedger {
    /// The budget in units of `2π`, exactly.
    pub fn budget_fraction(&self) -> Fraction {
        self.signature.defect().scale(2, self.extension_index as i128)
    }
}

pub fn make_ledger(sig: TurnoverSignature, extension_index: u32) -> Result<BoundLedger> {
    require_hyperbolic(sig)?;
    if !(1..=2).contains(&extension_index) {
        return Err(Error::domain(format!(
            "extension index must be 1 or 2, got {extension_index}"
        )));
    }
    let area = turnover_area(sig)?;
    let ext = extension_index as f64;
    let no_boundary = area / ext;
    // budget / (π/21) = 84 · defect / ext
    let defect = sig.defect();
    let pieces = (84 * defect.num) / (defect.den * extension_index as i128);
    Ok(BoundLedger {
        signature: sig,
        extension_index,
        area,
        two_sided_budget: 2.0 * area / ext,
        upper_bound_with_boundary: constant_h() * no_boundary,
        upper_bound_no_boundary: no_boundary,
        max_boundary_pieces: pieces as u32,
    })
}

/// A possible boundary turnover with its area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub sig: TurnoverSignature,
    pub area: f64,
}

/// Hyperbolic signatures over `orders` whose area is strictly below the
/// ledger's boundary budget, by increasing area.
pub fn boundary_candidates(ledger: &BoundLedger, orders: &ConeOrderSet) -> Vec<Candidate> {
    let budget = ledger.budget_fraction();
    let pool = orders.to_vec();
    let mut out = Vec::new();
    for (i, &p) in pool.iter().enumerate() {
        for (j, &q) in pool.iter().enumerate().skip(i) {
            for &r in &pool[j..] {
                let Ok(sig) = TurnoverSignature::new(p, q, r) else {
                    continue;
                };
                if classify(sig) != GeometryClass::Hyperbolic || sig.defect() >= budget {
                    continue;
                }
                if let Ok(area) = turnover_area(sig) {
                    out.push(Candidate { sig, area });
                }
            }
        }
    }
    out.sort_by(|a, b| a.sig.defect().cmp(&b.sig.defect()).then(a.sig.cmp(&b.sig)));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Excluded,
    Survives,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Excluded => "Excluded",
            Verdict::Survives => "Survives",
        })
    }
}

fn compare(bound: f64, limit: f64) -> Verdict {
    if bound > limit {
        Verdict::Excluded
    } else {
        Verdict::Survives
    }
}

/// One return-path case with its volume lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub boundary: TurnoverSignature,
    pub k: u32,
    pub closed: bool,
    pub theta: f64,
    pub lower_bound: f64,
    pub verdict: Verdict,
}

/// Which return-path cases a scan leaves out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ScanPolicy {
    /// Every `k ∈ {1} ∪ orders`, closed or not.
    #[default]
    AllCases,
    /// Drop open paths along an axis whose cone order occurs once on the
    /// boundary: such a path must return to its starting cone point.
    SkipForcedOpen,
}

/// Lower bounds for every return-path case of a boundary turnover.
pub fn miyamoto_case_scan(
    ledger: &BoundLedger,
    boundary: TurnoverSignature,
    policy: ScanPolicy,
) -> Result<Vec<CaseResult>> {
    require_hyperbolic(boundary)?;
    let area = turnover_area(boundary)?;
    let mut ks = vec![1];
    for n in boundary.orders() {
        if !ks.contains(&n) {
            ks.push(n);
        }
    }
    let mut out = Vec::new();
    for k in ks {
        for closed in [true, false] {
            if policy == ScanPolicy::SkipForcedOpen && !closed && k != 1 && boundary.multiplicity(k) == 1 {
                continue;
            }
            let case = ReturnPathCase::new(boundary, k, closed)?;
            let lower_bound = miyamoto_lower_bound(area, edge_from_angle(case.theta)?)?;
            out.push(CaseResult {
                boundary,
                k,
                closed,
                theta: case.theta,
                lower_bound,
                verdict: compare(lower_bound, ledger.upper_bound_with_boundary),
            });
        }
    }
    Ok(out)
}

/// Length, angle and bound produced by a refinement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinementOutcome {
    pub length: f64,
    pub theta: f64,
    pub lower_bound: f64,
    pub verdict: Verdict,
}

fn refine_with_length(ledger: &BoundLedger, boundary: TurnoverSignature, l: f64) -> Result<RefinementOutcome> {
    let theta = angle_from_edge(l)?;
    let lower_bound = miyamoto_lower_bound(turnover_area(boundary)?, l)?;
    Ok(RefinementOutcome {
        length: l,
        theta,
        lower_bound,
        verdict: compare(lower_bound, ledger.upper_bound_with_boundary),
    })
}

/// Bound from an embedded boundary disk of radius `disk_radius` around the
/// cone point the return path starts at.
pub fn order4_refinement(
    ledger: &BoundLedger,
    boundary: TurnoverSignature,
    disk_radius: f64,
) -> Result<RefinementOutcome> {
    refine_with_length(ledger, boundary, length_from_disk_radius(disk_radius)?)
}

/// Bound from a path that must cross between two axes at distance at least
/// `separation`, so has length at least `2·separation`.
pub fn order5_refinement(
    ledger: &BoundLedger,
    boundary: TurnoverSignature,
    separation: f64,
) -> Result<RefinementOutcome> {
    if !(separation > 0.0) || separation.is_nan() {
        return Err(Error::domain(format!("separation must be positive, got {separation}")));
    }
    refine_with_length(ledger, boundary, 2.0 * separation)
}

/// A closed orbifold with no embedded turnovers has volume below the area of
/// each immersed turnover; otherwise below `H` times that area.
pub fn exclusion_by_volume(
    orbifold_volume: f64,
    sig: TurnoverSignature,
    has_embedded_turnovers: bool,
) -> Result<Verdict> {
    if !(orbifold_volume > 0.0 && orbifold_volume.is_finite()) {
        return Err(Error::domain(format!("volume must be positive, got {orbifold_volume}")));
    }
    let area = turnover_area(sig)?;
    let cap = if has_embedded_turnovers {
        constant_h() * area
    } else {
        area
    };
    Ok(if cap < orbifold_volume {
        Verdict::Excluded
    } else {
        Verdict::Survives
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RefinementInput {
    DiskRadius(f64),
    Separation(f64),
}

/// Geometric input for ruling out the cases of one boundary with return
/// paths along an order-`k` axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub name: String,
    pub boundary: TurnoverSignature,
    pub k: u32,
    pub input: RefinementInput,
}

impl Refinement {
    pub fn evaluate(&self, ledger: &BoundLedger) -> Result<RefinementResult> {
        let outcome = match self.input {
            RefinementInput::DiskRadius(r) => order4_refinement(ledger, self.boundary, r)?,
            RefinementInput::Separation(s) => order5_refinement(ledger, self.boundary, s)?,
        };
        Ok(RefinementResult {
            name: self.name.clone(),
            boundary: self.boundary,
            k: self.k,
            input: self.input,
            length: outcome.length,
            theta: outcome.theta,
            lower_bound: outcome.lower_bound,
            verdict: outcome.verdict,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementResult {
    pub name: String,
    pub boundary: TurnoverSignature,
    pub k: u32,
    pub input: RefinementInput,
    pub length: f64,
    pub theta: f64,
    pub lower_bound: f64,
    pub verdict: Verdict,
}

/// Refinement inputs known for a signature, derived from its triangle.
///
/// For `(2,4,5)`: a return path at the order-4 point leaves an embedded disk
/// whose radius is the side from the order-4 to the order-2 vertex, and one at
/// the order-5 point must cross the perpendicular from the order-5 axis to
/// the opposite side, whose length is bounded by the Lambert leg over the
/// longest side.
pub fn known_refinements(sig: TurnoverSignature) -> Result<Vec<Refinement>> {
    if sig.orders() != [2, 4, 5] {
        return Ok(Vec::new());
    }
    let geometry = triangle_geometry(sig)?;
    let disk_radius = geometry.side_between_orders(2, 4).expect("order 2 and 4 vertices");
    let longest = geometry.side_between_orders(4, 5).expect("order 4 and 5 vertices");
    Ok(vec![
        Refinement {
            name: "order-4 disk".into(),
            boundary: sig,
            k: 4,
            input: RefinementInput::DiskRadius(disk_radius),
        },
        Refinement {
            name: "order-5 separation".into(),
            boundary: sig,
            k: 5,
            input: RefinementInput::Separation(lambert_leg_bound(longest)?),
        },
    ])
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub refinements: Vec<Refinement>,
    pub policy: ScanPolicy,
    /// Replaces the refined boundary orders when set.
    pub orders: Option<ConeOrderSet>,
}

impl AnalysisOptions {
    pub fn with_known_refinements(sig: TurnoverSignature) -> Result<Self> {
        Ok(AnalysisOptions {
            refinements: known_refinements(sig)?,
            ..AnalysisOptions::default()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub with_boundary: f64,
    pub no_boundary: f64,
    pub budget: f64,
    pub max_pieces: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    NoEmbeddedTurnovers,
    CandidatesRemain,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::NoEmbeddedTurnovers => "NoEmbeddedTurnovers",
            Conclusion::CandidatesRemain => "CandidatesRemain",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub signature: TurnoverSignature,
    pub extension_index: u32,
    pub bounds: Bounds,
    pub orders: ConeOrderSet,
    pub candidates: Vec<Candidate>,
    pub cases: Vec<CaseResult>,
    pub refinements: Vec<RefinementResult>,
    pub conclusion: Conclusion,
}

impl AnalysisReport {
    pub fn ledger(&self) -> Result<BoundLedger> {
        make_ledger(self.signature, self.extension_index)
    }

    fn refined_away(&self, case: &CaseResult) -> bool {
        self.refinements
            .iter()
            .any(|r| r.boundary == case.boundary && r.k == case.k && r.verdict == Verdict::Excluded)
    }

    /// Cases excluded neither by the scan nor by a refinement.
    pub fn open_cases(&self) -> Vec<&CaseResult> {
        self.cases
            .iter()
            .filter(|c| c.verdict == Verdict::Survives && !self.refined_away(c))
            .collect()
    }
}

/// Budgets, candidates, case scans and refinements for an immersed turnover.
pub fn analyze(sig: TurnoverSignature, extension_index: u32, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let ledger = make_ledger(sig, extension_index)?;
    let orders = match &options.orders {
        Some(orders) => orders.clone(),
        None => refined_boundary_orders(sig)?,
    };
    let candidates = boundary_candidates(&ledger, &orders);
    let mut cases = Vec::new();
    for c in &candidates {
        cases.extend(miyamoto_case_scan(&ledger, c.sig, options.policy)?);
    }
    let refinements = options
        .refinements
        .iter()
        .filter(|r| candidates.iter().any(|c| c.sig == r.boundary))
        .map(|r| r.evaluate(&ledger))
        .collect::<Result<Vec<_>>>()?;
    let mut report = AnalysisReport {
        signature: sig,
        extension_index,
        bounds: Bounds {
            with_boundary: ledger.upper_bound_with_boundary,
            no_boundary: ledger.upper_bound_no_boundary,
            budget: ledger.two_sided_budget,
            max_pieces: ledger.max_boundary_pieces,
        },
        orders,
        candidates,
        cases,
        refinements,
        conclusion: Conclusion::CandidatesRemain,
    };
    if report.open_cases().is_empty() {
        report.conclusion = Conclusion::NoEmbeddedTurnovers;
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbifoldKind {
    Tetrahedral,
    Prism,
}

/// A cited orbifold with its volume and the turnovers it is known to carry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub name: String,
    pub kind: OrbifoldKind,
    /// Edge orders `[l₁,l₂,l₃; m₁,m₂,m₃]` of a tetrahedron, when labelled.
    pub edge_orders: Option<[u32; 6]>,
    /// Base order `p` of a `(2,4,p)` prism; `None` for `p = ∞`.
    pub prism_order: Option<u32>,
    pub volume: Option<f64>,
    pub volume_cited: bool,
    pub extension_index: u32,
    pub has_embedded_turnovers: bool,
    pub known_immersed: Vec<TurnoverSignature>,
    pub known_embedded: Vec<TurnoverSignature>,
}

fn sigs(list: &[[u32; 3]]) -> Vec<TurnoverSignature> {
    list.iter()
        .map(|&[p, q, r]| TurnoverSignature::new(p, q, r).expect("static signature"))
        .collect()
}

pub fn registry() -> Vec<RegistryEntry> {
    let tetra = |name: &str, edges: Option<[u32; 6]>, volume, ext, immersed: &[[u32; 3]]| RegistryEntry {
        name: name.into(),
        kind: OrbifoldKind::Tetrahedral,
        edge_orders: edges,
        prism_order: None,
        volume: Some(volume),
        volume_cited: true,
        extension_index: ext,
        has_embedded_turnovers: false,
        known_immersed: sigs(immersed),
        known_embedded: Vec::new(),
    };
    let prism = |name: &str, p: Option<u32>, volume, immersed: &[[u32; 3]], embedded: &[[u32; 3]]| RegistryEntry {
        name: name.into(),
        kind: OrbifoldKind::Prism,
        edge_orders: None,
        prism_order: p,
        volume: Some(volume),
        volume_cited: true,
        extension_index: 2,
        has_embedded_turnovers: true,
        known_immersed: sigs(immersed),
        known_embedded: sigs(embedded),
    };
    vec![
        tetra("Q3", None, 0.071770, 2, &[[2, 4, 5]]),
        tetra("Q10", None, 0.211446, 2, &[[2, 4, 6]]),
        tetra("O8", Some([2, 3, 4, 2, 3, 5]), 0.717306, 1, &[[3, 4, 5], [4, 5, 5]]),
        tetra("O9", Some([2, 3, 5, 2, 3, 5]), 1.004261, 1, &[[3, 5, 5], [5, 5, 5]]),
        prism("Q_{2,4,7}", Some(7), 0.325947, &[[2, 4, 7]], &[[2, 3, 7]]),
        prism("Q_{2,4,inf}", None, 0.501921, &[], &[]),
    ]
}
