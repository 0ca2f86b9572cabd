//! Per-slope reports of the four Heegaard phenomena, the core trichotomy,
//! and slope surveys.
//!
//! Filling a knot exterior can change its Heegaard structure in four ways:
//! the genus can decrease, a new Heegaard surface can appear, an old
//! non-stabilized surface can destabilize, and non-isotopic surfaces can
//! become isotopic. For torus-knot exteriors all four are decided by slope
//! arithmetic: the special slope sets are `N_X = {1/0}` and
//! `H_X = L_{pq/1} ∪ L_{0/1}`, and outside `N_X ∪ H_X` nothing changes.
//!
//! After filling, the core of the attached solid torus relates to each
//! Heegaard surface in one of three ways: it is isotopic into the surface
//! which remains a surface of the exterior (C), isotopic into the surface
//! which is new (H), or not isotopic into the surface at all (N). The only
//! N filling is `1/0`, where the core is a bridge-position torus knot with
//! respect to the Heegaard sphere.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::canopy::{
    filling_case_forced, s_is_unit_residue, vertical_orbit_labels, FillingCase, InadmissibleKnot,
    Sign, SurfaceClass, SurfaceKind,
};
use crate::seifert::fiber_flippable;
use crate::slope::{Int, Slope};
use crate::torus_knot::TorusKnot;

/// Per-knot data reused across many slopes: the tunnel fibers' flippability
/// never changes, so the two possible orbit structures of the six oriented
/// verticals are computed once, keyed by whether the new fiber flips.
struct KnotContext {
    classes: [Vec<BTreeSet<String>>; 2],
}

impl KnotContext {
    fn new(knot: &TorusKnot) -> Self {
        let flip_i = fiber_flippable(knot.p(), knot.q()).expect("p >= 2");
        let flip_o = fiber_flippable(knot.q(), knot.p()).expect("q >= 2");
        let table = |flip_new: bool| {
            let mut flippable = BTreeMap::new();
            flippable.insert(String::from("f_i"), flip_i);
            flippable.insert(String::from("f_o"), flip_o);
            flippable.insert(String::from("f_new"), flip_new);
            vertical_orbit_labels(&flippable, "f_new")
                .into_iter()
                .map(|(labels, _)| labels)
                .collect()
        };
        KnotContext { classes: [table(false), table(true)] }
    }
}

/// Isotopy identifications among the six oriented vertical splittings
/// `{i+, i−, m+, m−, o+, o−}` after filling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Identifications {
    /// The connected-sum filling: which old vertical becomes which of the
    /// four oriented sum classes is not determined, so no partition is
    /// claimed.
    Unknown,
    /// Partition into isotopy classes, each class a set of oriented labels.
    Classes(Vec<BTreeSet<String>>),
}

impl Identifications {
    /// Number of classes, when known.
    pub fn class_count(&self) -> Option<usize> {
        match self {
            Identifications::Unknown => None,
            Identifications::Classes(cs) => Some(cs.len()),
        }
    }
}

/// Which old vertical surfaces flip after filling, keyed `"i"`, `"m"`, `"o"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlipsOld {
    /// Not determined (connected-sum filling).
    Unknown,
    /// Flip status per label.
    Known(BTreeMap<String, bool>),
}

/// The three possible relations of the filled solid torus core to a
/// Heegaard surface family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrichotomyClass {
    /// The core is not isotopic into the surface.
    NotLevel,
    /// The core is isotopic into the surface, which is new.
    HorizontalNotCore,
    /// The core is a core: the surface survives from the knot exterior.
    Core,
}

impl TrichotomyClass {
    fn short(&self) -> &'static str {
        match self {
            TrichotomyClass::NotLevel => "N",
            TrichotomyClass::HorizontalNotCore => "H",
            TrichotomyClass::Core => "C",
        }
    }
}

impl fmt::Display for TrichotomyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

/// Surface families a trichotomy entry can refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceFamily {
    /// The Heegaard sphere of `S³`.
    Sphere,
    /// The Heegaard torus of a lens space.
    Torus,
    /// The horizontal splitting.
    Horizontal,
    /// The vertical splittings inherited from the exterior.
    Verticals,
}

impl SurfaceFamily {
    fn short(&self) -> &'static str {
        match self {
            SurfaceFamily::Sphere => "S2",
            SurfaceFamily::Torus => "T",
            SurfaceFamily::Horizontal => "H",
            SurfaceFamily::Verticals => "V",
        }
    }
}

/// Per-family core trichotomy for one filling, with the bridge number
/// attached at the unique not-level slope `1/0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trichotomy {
    /// `(family, class)` entries in a fixed order.
    pub entries: Vec<(SurfaceFamily, TrichotomyClass)>,
    /// Bridge number of the core with respect to the sphere sweepout, at
    /// `1/0` only.
    pub bridge: Option<Int>,
}

impl fmt::Display for Trichotomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (family, class)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{}:{}", family.short(), class.short())?;
            if *class == TrichotomyClass::NotLevel {
                if let Some(b) = &self.bridge {
                    write!(f, "(b={b})")?;
                }
            }
        }
        Ok(())
    }
}

/// Everything that happens to the Heegaard structure at one filling slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhenomenaReport {
    /// The filling slope.
    pub slope: Slope,
    /// Canopy case of the filled manifold.
    pub case: FillingCase,
    /// Heegaard genus of the knot exterior (always 2 here).
    pub genus_before: Int,
    /// Heegaard genus after filling.
    pub genus_after: Int,
    /// New non-stabilized surfaces, absent from the exterior.
    pub new_surfaces: Vec<SurfaceClass>,
    /// Old splittings that destabilize, as labels `"i"`, `"m"`, `"o"`.
    pub destabilized_old: BTreeSet<String>,
    /// Isotopy identifications among the six oriented verticals.
    pub identifications: Identifications,
    /// Which old splittings flip.
    pub flips_old: FlipsOld,
    /// Core trichotomy per surface family.
    pub trichotomy: Trichotomy,
    /// `slope ∈ N_X`, i.e. `slope = 1/0`.
    pub in_nx: bool,
    /// `slope ∈ H_X = L_{pq/1} ∪ L_{0/1}`, by direct slope arithmetic.
    pub in_hx: bool,
}

/// Heegaard genus of the filled manifold: 0 for `S³`, 1 for lens spaces,
/// and 2 otherwise.
pub fn genus_filled(knot: &TorusKnot, alpha: &Slope) -> Result<Int, InadmissibleKnot> {
    Ok(genus_for_case(crate::canopy::filling_case(knot, alpha)?))
}

fn genus_for_case(case: FillingCase) -> Int {
    match case {
        FillingCase::C1S3 => Int::zero(),
        FillingCase::C2Lens => Int::one(),
        _ => Int::from(2),
    }
}

/// The new non-stabilized Heegaard surfaces of the filled manifold, as
/// oriented classes: the sphere, the lens tori, or the horizontal pair.
/// Connected-sum, generic and two-vertical fillings produce none.
pub fn new_surfaces(knot: &TorusKnot, alpha: &Slope) -> Result<Vec<SurfaceClass>, InadmissibleKnot> {
    crate::canopy::filling_case(knot, alpha)?;
    Ok(new_surfaces_forced(knot, alpha))
}

fn new_surfaces_forced(knot: &TorusKnot, alpha: &Slope) -> Vec<SurfaceClass> {
    new_surfaces_for_case(knot, alpha, filling_case_forced(knot, alpha))
}

fn new_surfaces_for_case(knot: &TorusKnot, alpha: &Slope, case: FillingCase) -> Vec<SurfaceClass> {
    let mut out = Vec::new();
    match case {
        FillingCase::C1S3 => out.push(SurfaceClass {
            kind: SurfaceKind::Sphere,
            sign: None,
            genus: Int::zero(),
            merged: BTreeSet::new(),
            flips: true,
        }),
        FillingCase::C2Lens => {
            let flips = match knot.moser_classify(alpha).kind() {
                crate::torus_knot::ManifoldKind::Lens(l) => l.torus_flips(),
                _ => unreachable!("C2 is a lens space"),
            };
            if flips {
                out.push(SurfaceClass {
                    kind: SurfaceKind::Torus,
                    sign: None,
                    genus: Int::one(),
                    merged: BTreeSet::new(),
                    flips: true,
                });
            } else {
                for sign in [Sign::Plus, Sign::Minus] {
                    out.push(SurfaceClass {
                        kind: SurfaceKind::Torus,
                        sign: Some(sign),
                        genus: Int::one(),
                        merged: BTreeSet::new(),
                        flips: false,
                    });
                }
            }
        }
        FillingCase::C5SfsHorizontal | FillingCase::C7SfsTwoVerticalHorizontal => {
            for sign in [Sign::Plus, Sign::Minus] {
                out.push(SurfaceClass {
                    kind: SurfaceKind::Horizontal,
                    sign: Some(sign),
                    genus: knot.horizontal_genus(),
                    merged: BTreeSet::new(),
                    flips: false,
                });
            }
        }
        FillingCase::C3ConnSum | FillingCase::C4SfsGeneric | FillingCase::C6SfsTwoVertical => {}
    }
    out
}

/// The old splittings that destabilize after the filling: all three exactly
/// when the filled manifold is `S³` or a lens space (`|a| = 1`), none
/// otherwise.
pub fn destabilizations(knot: &TorusKnot, alpha: &Slope) -> Result<BTreeSet<String>, InadmissibleKnot> {
    let case = crate::canopy::filling_case(knot, alpha)?;
    Ok(destabilizations_for_case(case))
}

fn destabilizations_for_case(case: FillingCase) -> BTreeSet<String> {
    match case {
        FillingCase::C1S3 | FillingCase::C2Lens => {
            ["i", "m", "o"].iter().map(|s| s.to_string()).collect()
        }
        _ => BTreeSet::new(),
    }
}

/// Isotopy identifications among the oriented verticals: everything
/// collapses on the lens line, verticals merge in pairs on `LL_{pq/1}`,
/// six distinct classes in the generic and horizontal cases, and unknown
/// for the connected sum.
pub fn identifications(knot: &TorusKnot, alpha: &Slope) -> Result<Identifications, InadmissibleKnot> {
    crate::canopy::filling_case(knot, alpha)?;
    Ok(identifications_forced(knot, alpha))
}

fn identifications_forced(knot: &TorusKnot, alpha: &Slope) -> Identifications {
    let case = filling_case_forced(knot, alpha);
    identifications_with(knot, alpha, case, &KnotContext::new(knot))
}

fn identifications_with(
    knot: &TorusKnot,
    alpha: &Slope,
    case: FillingCase,
    ctx: &KnotContext,
) -> Identifications {
    match case {
        FillingCase::C1S3 | FillingCase::C2Lens => {
            let all: BTreeSet<String> =
                ["i+", "i-", "m+", "m-", "o+", "o-"].iter().map(|s| s.to_string()).collect();
            Identifications::Classes(alloc::vec![all])
        }
        FillingCase::C3ConnSum => Identifications::Unknown,
        _ => {
            // The new fiber (a, b) flips iff s ≡ ±1 (mod |a|), since
            // s·b ≡ 1 (mod a) for any longitude.
            let flip_new = s_is_unit_residue(alpha.denominator(), &knot.moser_a(alpha));
            Identifications::Classes(ctx.classes[usize::from(flip_new)].clone())
        }
    }
}

/// Whether each old splitting flips: a label flips exactly when its two
/// orientations share an identifications class.
pub fn flips_old(knot: &TorusKnot, alpha: &Slope) -> Result<FlipsOld, InadmissibleKnot> {
    Ok(flips_from_identifications(&identifications(knot, alpha)?))
}

fn flips_from_identifications(ids: &Identifications) -> FlipsOld {
    match ids {
        Identifications::Unknown => FlipsOld::Unknown,
        Identifications::Classes(classes) => {
            let mut map = BTreeMap::new();
            for label in ["i", "m", "o"] {
                let plus = format!("{label}+");
                let minus = format!("{label}-");
                let flips = classes.iter().any(|c| c.contains(&plus) && c.contains(&minus));
                map.insert(label.to_string(), flips);
            }
            FlipsOld::Known(map)
        }
    }
}

/// Core trichotomy per surface family at this slope.
pub fn trichotomy(knot: &TorusKnot, alpha: &Slope) -> Result<Trichotomy, InadmissibleKnot> {
    let case = crate::canopy::filling_case(knot, alpha)?;
    Ok(trichotomy_for(knot, case))
}

fn trichotomy_for(knot: &TorusKnot, case: FillingCase) -> Trichotomy {
    let mut entries = Vec::new();
    let mut bridge = None;
    match case {
        FillingCase::C1S3 => {
            entries.push((SurfaceFamily::Sphere, TrichotomyClass::NotLevel));
            bridge = Some(knot.bridge_number());
        }
        FillingCase::C2Lens => {
            entries.push((SurfaceFamily::Torus, TrichotomyClass::HorizontalNotCore));
        }
        FillingCase::C5SfsHorizontal | FillingCase::C7SfsTwoVerticalHorizontal => {
            entries.push((SurfaceFamily::Horizontal, TrichotomyClass::HorizontalNotCore));
        }
        FillingCase::C3ConnSum | FillingCase::C4SfsGeneric | FillingCase::C6SfsTwoVertical => {}
    }
    entries.push((SurfaceFamily::Verticals, TrichotomyClass::Core));
    Trichotomy { entries, bridge }
}

/// True iff `alpha ∈ H_X = L_{pq/1} ∪ L_{0/1}`, by slope arithmetic alone.
pub fn in_hx(knot: &TorusKnot, alpha: &Slope) -> bool {
    knot.fiber_slope().delta(alpha).is_one() || alpha.numerator().abs().is_one()
}

/// True iff `alpha ∈ N_X = {1/0}`.
pub fn in_nx(alpha: &Slope) -> bool {
    alpha.is_infinity()
}

/// The full per-slope phenomena report.
pub fn report(knot: &TorusKnot, alpha: &Slope) -> Result<PhenomenaReport, InadmissibleKnot> {
    crate::canopy::filling_case(knot, alpha)?;
    Ok(report_forced(knot, alpha))
}

/// [`report`] without the admissibility gate.
pub fn report_forced(knot: &TorusKnot, alpha: &Slope) -> PhenomenaReport {
    report_with(knot, alpha, &KnotContext::new(knot))
}

fn report_with(knot: &TorusKnot, alpha: &Slope, ctx: &KnotContext) -> PhenomenaReport {
    let case = filling_case_forced(knot, alpha);
    let identifications = identifications_with(knot, alpha, case, ctx);
    let flips = flips_from_identifications(&identifications);
    PhenomenaReport {
        slope: alpha.clone(),
        case,
        genus_before: Int::from(2),
        genus_after: genus_for_case(case),
        new_surfaces: new_surfaces_for_case(knot, alpha, case),
        destabilized_old: destabilizations_for_case(case),
        identifications,
        flips_old: flips,
        trichotomy: trichotomy_for(knot, case),
        in_nx: in_nx(alpha),
        in_hx: in_hx(knot, alpha),
    }
}

impl PhenomenaReport {
    /// Short names of the new surfaces, e.g. `["H+", "H-"]`.
    pub fn new_surface_names(&self) -> Vec<String> {
        self.new_surfaces
            .iter()
            .map(|s| {
                let base = match s.kind {
                    SurfaceKind::Sphere => "S2",
                    SurfaceKind::Torus => "T",
                    SurfaceKind::Horizontal => "H",
                    _ => "?",
                };
                match s.sign {
                    Some(sig) => format!("{base}{sig}"),
                    None => base.to_string(),
                }
            })
            .collect()
    }

    /// Serializes the report as one JSON object.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        out.push_str(&format!(
            "\"r\":{},\"s\":{}",
            self.slope.numerator(),
            self.slope.denominator()
        ));
        out.push_str(&format!(",\"case\":\"{}\"", self.case.name()));
        out.push_str(&format!(",\"genus_before\":{}", self.genus_before));
        out.push_str(&format!(",\"genus\":{}", self.genus_after));
        let news: Vec<String> =
            self.new_surface_names().iter().map(|n| format!("\"{n}\"")).collect();
        out.push_str(&format!(",\"new\":[{}]", news.join(",")));
        let destab: Vec<String> =
            self.destabilized_old.iter().map(|n| format!("\"{n}\"")).collect();
        out.push_str(&format!(",\"destab\":[{}]", destab.join(",")));
        match &self.identifications {
            Identifications::Unknown => out.push_str(",\"classes\":null"),
            Identifications::Classes(cs) => {
                let rendered: Vec<String> = cs
                    .iter()
                    .map(|c| {
                        let ls: Vec<String> = c.iter().map(|l| format!("\"{l}\"")).collect();
                        format!("[{}]", ls.join(","))
                    })
                    .collect();
                out.push_str(&format!(",\"classes\":[{}]", rendered.join(",")));
            }
        }
        match &self.flips_old {
            FlipsOld::Unknown => out.push_str(",\"flips\":null"),
            FlipsOld::Known(map) => {
                let entries: Vec<String> =
                    map.iter().map(|(k, v)| format!("\"{k}\":{v}")).collect();
                out.push_str(&format!(",\"flips\":{{{}}}", entries.join(",")));
            }
        }
        let entries: Vec<String> = self
            .trichotomy
            .entries
            .iter()
            .map(|(fam, class)| format!("[\"{}\",\"{}\"]", fam.short(), class.short()))
            .collect();
        let bridge = match &self.trichotomy.bridge {
            Some(b) => b.to_string(),
            None => "null".to_string(),
        };
        out.push_str(&format!(
            ",\"trichotomy\":{{\"entries\":[{}],\"bridge\":{}}}",
            entries.join(","),
            bridge
        ));
        out.push_str(&format!(",\"in_nx\":{},\"in_hx\":{}", self.in_nx, self.in_hx));
        out.push('}');
        out
    }

    /// One CSV record matching [`Survey::csv_header`].
    pub fn to_csv_row(&self) -> String {
        let classes = match &self.identifications {
            Identifications::Unknown => "?".to_string(),
            Identifications::Classes(cs) => {
                let rendered: Vec<String> =
                    cs.iter().map(|c| c.iter().cloned().collect::<Vec<_>>().join("")).collect();
                rendered.join("|")
            }
        };
        let flips = match &self.flips_old {
            FlipsOld::Unknown => "?".to_string(),
            FlipsOld::Known(map) => {
                let flipping: Vec<&str> =
                    map.iter().filter(|(_, v)| **v).map(|(k, _)| k.as_str()).collect();
                flipping.join(";")
            }
        };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.slope.numerator(),
            self.slope.denominator(),
            self.case.name(),
            self.genus_after,
            self.new_surface_names().join(";"),
            self.destabilized_old.iter().cloned().collect::<Vec<_>>().join(";"),
            classes,
            flips,
            self.trichotomy
        )
    }
}

/// Errors from [`survey`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurveyError {
    /// The knot fails admissibility and forcing was not requested.
    Inadmissible(InadmissibleKnot),
    /// `r_max` must be at least 1 so the range contains a slope.
    EmptyRange,
}

impl fmt::Display for SurveyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurveyError::Inadmissible(e) => write!(f, "{e}"),
            SurveyError::EmptyRange => write!(f, "survey range must satisfy r_max >= 1"),
        }
    }
}

impl core::error::Error for SurveyError {}

impl From<InadmissibleKnot> for SurveyError {
    fn from(e: InadmissibleKnot) -> Self {
        SurveyError::Inadmissible(e)
    }
}

/// A classified slope table over `|r| ≤ r_max`, `0 ≤ s ≤ s_max`, with a
/// case histogram. Rows are in the canonical `(s, |r|, r)` order and two
/// runs over the same range are byte-identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survey {
    rows: Vec<PhenomenaReport>,
    histogram: BTreeMap<FillingCase, usize>,
}

impl Survey {
    /// The rows, one per normalized slope in range.
    pub fn rows(&self) -> &[PhenomenaReport] {
        &self.rows
    }

    /// Case counts over the surveyed range.
    pub fn histogram(&self) -> &BTreeMap<FillingCase, usize> {
        &self.histogram
    }

    /// Slopes of the rows landing in `case`.
    pub fn slopes_in_case(&self, case: FillingCase) -> Vec<Slope> {
        self.rows.iter().filter(|r| r.case == case).map(|r| r.slope.clone()).collect()
    }

    /// CSV header for [`PhenomenaReport::to_csv_row`].
    pub fn csv_header() -> &'static str {
        "r,s,case,genus,new,destab,classes,flips,trichotomy"
    }

    /// The whole table as CSV.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::csv_header());
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_csv_row());
            out.push('\n');
        }
        out
    }

    /// The whole table as JSON lines, one report per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&row.to_json());
            out.push('\n');
        }
        out
    }

    /// Human-readable histogram block, one `case: count` line per case.
    pub fn histogram_lines(&self) -> String {
        let mut out = String::new();
        for case in FillingCase::ALL {
            let count = self.histogram.get(&case).copied().unwrap_or(0);
            out.push_str(&format!("{}: {}\n", case.name(), count));
        }
        out
    }
}

/// Surveys every normalized slope with `|r| ≤ r_max` and `0 ≤ s ≤ s_max`.
pub fn survey(knot: &TorusKnot, r_max: &Int, s_max: &Int) -> Result<Survey, SurveyError> {
    let admissibility = knot.admissibility();
    if !admissibility.is_admissible() {
        return Err(SurveyError::Inadmissible(InadmissibleKnot {
            p: knot.p().clone(),
            q: knot.q().clone(),
            admissibility,
        }));
    }
    survey_forced(knot, r_max, s_max)
}

/// [`survey`] without the admissibility gate.
pub fn survey_forced(knot: &TorusKnot, r_max: &Int, s_max: &Int) -> Result<Survey, SurveyError> {
    if !r_max.is_positive() {
        return Err(SurveyError::EmptyRange);
    }
    let ctx = KnotContext::new(knot);
    let mut rows = Vec::new();
    let mut histogram = BTreeMap::new();
    let mut s = Int::zero();
    while s <= *s_max {
        let mut numerators: Vec<Int> = Vec::new();
        if s.is_zero() {
            numerators.push(Int::one());
        } else {
            // In (s, |r|, r) order within this denominator.
            let mut abs_r = Int::zero();
            while abs_r <= *r_max {
                if abs_r.gcd(&s).is_one() {
                    if !abs_r.is_zero() {
                        numerators.push(-abs_r.clone());
                    }
                    if !abs_r.is_zero() || s.is_one() {
                        numerators.push(abs_r.clone());
                    }
                }
                abs_r += 1;
            }
        }
        for r in numerators {
            let alpha = Slope::new(r, s.clone()).expect("primitive in-range pair");
            let row = report_with(knot, &alpha, &ctx);
            *histogram.entry(row.case).or_insert(0) += 1;
            rows.push(row);
        }
        s += 1;
    }
    Ok(Survey { rows, histogram })
}

/// The fixed swap diagram: the chain of genus-two surfaces that become
/// isotopic in every lens-space filling, connected by swaps along annuli of
/// the fiber slope. Knot-independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapDiagram {
    nodes: [&'static str; 8],
    edges: [(usize, usize); 7],
}

/// Returns the constant eight-node swap chain from `Σ_i^+` to `Σ_i^-`.
pub fn swap_diagram() -> SwapDiagram {
    SwapDiagram {
        nodes: [
            "Sigma_i+", "S(T_i)-", "Sigma_m+", "S(T_o)+", "Sigma_m-", "S(T_i)+", "Sigma_o+",
            "Sigma_i-",
        ],
        edges: [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)],
    }
}

impl SwapDiagram {
    /// Node labels, left to right.
    pub fn nodes(&self) -> &[&'static str; 8] {
        &self.nodes
    }

    /// Edges as index pairs.
    pub fn edges(&self) -> &[(usize, usize); 7] {
        &self.edges
    }

    /// The two chain endpoints.
    pub fn endpoints(&self) -> (&'static str, &'static str) {
        (self.nodes[0], self.nodes[self.nodes.len() - 1])
    }

    /// DOT rendering of the chain.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph swaps {\n");
        for n in self.nodes {
            out.push_str(&format!("  \"{n}\";\n"));
        }
        for (a, b) in self.edges {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", self.nodes[a], self.nodes[b]));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canopy::build_canopy;

    fn knot(p: i64, q: i64) -> TorusKnot {
        TorusKnot::new(p, q).unwrap()
    }

    fn slope(r: i64, s: i64) -> Slope {
        Slope::new(r, s).unwrap()
    }

    fn big(x: i64) -> Int {
        Int::from(x)
    }

    #[test]
    fn genus_examples() {
        let k = knot(9, 7);
        assert_eq!(genus_filled(&k, &Slope::infinity()).unwrap(), big(0));
        assert_eq!(genus_filled(&k, &slope(64, 1)).unwrap(), big(1));
        assert_eq!(genus_filled(&k, &slope(63, 1)).unwrap(), big(2));
        assert_eq!(genus_filled(&k, &slope(5, 2)).unwrap(), big(2));
    }

    #[test]
    fn new_surface_examples() {
        let k = knot(9, 7);
        let s3 = new_surfaces(&k, &Slope::infinity()).unwrap();
        assert_eq!(s3.len(), 1);
        assert_eq!(s3[0].kind, SurfaceKind::Sphere);
        assert_eq!(s3[0].genus, big(0));

        let horiz = new_surfaces(&k, &slope(1, 2)).unwrap();
        assert_eq!(horiz.len(), 2);
        assert!(horiz.iter().all(|s| s.kind == SurfaceKind::Horizontal && s.genus == big(96)));

        assert!(new_surfaces(&k, &slope(5, 2)).unwrap().is_empty());
        assert!(new_surfaces(&k, &slope(63, 1)).unwrap().is_empty());
        assert!(new_surfaces(&k, &slope(1, 1)).unwrap().is_empty());

        let lens = new_surfaces(&k, &slope(64, 1)).unwrap();
        assert_eq!(lens.len(), 2);
        assert!(lens.iter().all(|s| s.kind == SurfaceKind::Torus));
    }

    #[test]
    fn destabilization_examples() {
        let k = knot(9, 7);
        let all: BTreeSet<String> = ["i", "m", "o"].iter().map(|s| s.to_string()).collect();
        assert_eq!(destabilizations(&k, &slope(64, 1)).unwrap(), all);
        assert_eq!(destabilizations(&k, &Slope::infinity()).unwrap(), all);
        assert!(destabilizations(&k, &slope(5, 2)).unwrap().is_empty());
        assert!(destabilizations(&k, &slope(63, 1)).unwrap().is_empty());
    }

    #[test]
    fn identification_examples() {
        let k = knot(9, 7);
        match identifications(&k, &slope(64, 1)).unwrap() {
            Identifications::Classes(cs) => {
                assert_eq!(cs.len(), 1);
                assert_eq!(cs[0].len(), 6);
            }
            other => panic!("expected classes, got {other:?}"),
        }
        match identifications(&k, &slope(2, 1)).unwrap() {
            Identifications::Classes(cs) => {
                assert_eq!(cs.len(), 4);
                let pair: BTreeSet<String> =
                    ["i+", "o-"].iter().map(|s| s.to_string()).collect();
                assert!(cs.contains(&pair));
            }
            other => panic!("expected classes, got {other:?}"),
        }
        assert_eq!(
            identifications(&k, &slope(5, 2)).unwrap().class_count(),
            Some(6)
        );
        assert_eq!(identifications(&k, &slope(63, 1)).unwrap(), Identifications::Unknown);
    }

    #[test]
    fn flip_examples() {
        let k = knot(9, 7);
        match flips_old(&k, &slope(64, 1)).unwrap() {
            FlipsOld::Known(map) => assert!(map.values().all(|v| *v)),
            other => panic!("expected known flips, got {other:?}"),
        }
        match flips_old(&k, &slope(2, 1)).unwrap() {
            FlipsOld::Known(map) => assert!(map.values().all(|v| !*v)),
            other => panic!("expected known flips, got {other:?}"),
        }
        match flips_old(&k, &slope(5, 2)).unwrap() {
            FlipsOld::Known(map) => assert!(map.values().all(|v| !*v)),
            other => panic!("expected known flips, got {other:?}"),
        }
        assert_eq!(flips_old(&k, &slope(63, 1)).unwrap(), FlipsOld::Unknown);
    }

    #[test]
    fn trichotomy_examples() {
        let k = knot(9, 7);
        let t = trichotomy(&k, &Slope::infinity()).unwrap();
        assert_eq!(t.entries[0], (SurfaceFamily::Sphere, TrichotomyClass::NotLevel));
        assert_eq!(t.bridge, Some(big(7)));

        let t = trichotomy(&k, &slope(64, 1)).unwrap();
        assert_eq!(t.entries[0], (SurfaceFamily::Torus, TrichotomyClass::HorizontalNotCore));
        assert_eq!(t.entries[1], (SurfaceFamily::Verticals, TrichotomyClass::Core));

        let t = trichotomy(&k, &slope(5, 2)).unwrap();
        assert_eq!(t.entries, alloc::vec![(SurfaceFamily::Verticals, TrichotomyClass::Core)]);
    }

    #[test]
    fn report_is_internally_consistent() {
        let k = knot(9, 7);
        for (r, s) in
            [(1i64, 0i64), (64, 1), (62, 1), (63, 1), (5, 2), (2, 1), (1, 2), (-1, 1), (1, 1)]
        {
            let alpha = slope(r, s);
            let rep = report(&k, &alpha).unwrap();
            assert!(rep.genus_after <= rep.genus_before);
            // Genus agrees with the canopy leaves.
            let g = build_canopy(&k, &alpha).unwrap();
            assert_eq!(rep.genus_after, g.min_leaf_genus(), "at {alpha}");
            // Collapse to one class, full destabilization and genus drop
            // happen together.
            let one_class = rep.identifications.class_count() == Some(1);
            assert_eq!(one_class, !rep.destabilized_old.is_empty(), "at {alpha}");
            assert_eq!(one_class, rep.genus_after < big(2), "at {alpha}");
            // New surfaces only inside N_X ∪ H_X.
            if !rep.new_surfaces.is_empty() {
                assert!(rep.in_nx || rep.in_hx, "at {alpha}");
            }
        }
    }

    #[test]
    fn survey_small_range() {
        let k = knot(9, 7);
        let s = survey(&k, &big(130), &big(2)).unwrap();
        let lens = s.slopes_in_case(FillingCase::C2Lens);
        let want: Vec<Slope> =
            [(62, 1), (64, 1), (125, 2), (127, 2)].iter().map(|&(r, s)| slope(r, s)).collect();
        assert_eq!(lens, want);
        assert_eq!(s.slopes_in_case(FillingCase::C1S3), alloc::vec![Slope::infinity()]);
        assert_eq!(s.slopes_in_case(FillingCase::C3ConnSum), alloc::vec![slope(63, 1)]);
        assert_eq!(
            s.slopes_in_case(FillingCase::C7SfsTwoVerticalHorizontal),
            alloc::vec![slope(-1, 1)]
        );
        // Both ±1/2 give a strongly irreducible horizontal splitting; 1/1
        // lands in C6 instead.
        assert_eq!(
            s.slopes_in_case(FillingCase::C5SfsHorizontal),
            alloc::vec![slope(-1, 2), slope(1, 2)]
        );
        assert!(s.slopes_in_case(FillingCase::C6SfsTwoVertical).contains(&slope(1, 1)));

        let total: usize = s.histogram().values().sum();
        assert_eq!(total, s.rows().len());

        // Determinism, byte for byte.
        let again = survey(&k, &big(130), &big(2)).unwrap();
        assert_eq!(s.to_csv(), again.to_csv());
        assert_eq!(s.to_json_lines(), again.to_json_lines());

        assert_eq!(survey(&k, &big(0), &big(2)), Err(SurveyError::EmptyRange));
    }

    #[test]
    fn survey_rows_are_sorted_and_unique() {
        let k = knot(9, 7);
        let s = survey(&k, &big(15), &big(4)).unwrap();
        let slopes: Vec<Slope> = s.rows().iter().map(|r| r.slope.clone()).collect();
        let mut sorted = slopes.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(slopes, sorted);
        // Exhaustive cross-check of the enumeration.
        let mut expect = BTreeSet::new();
        for r in -15i64..=15 {
            for s in 0i64..=4 {
                if let Ok(a) = Slope::new(r, s) {
                    if a.numerator().abs() <= big(15) {
                        expect.insert(a);
                    }
                }
            }
        }
        assert_eq!(slopes.len(), expect.len());
    }

    #[test]
    fn csv_and_json_shapes() {
        let k = knot(9, 7);
        let rep = report(&k, &slope(2, 1)).unwrap();
        assert_eq!(
            rep.to_csv_row(),
            "2,1,C6_SFS_TwoVertical,2,,,i+o-|i-o+|m+|m-,,V:C"
        );
        let rep = report(&k, &Slope::infinity()).unwrap();
        assert!(rep.to_csv_row().starts_with("1,0,C1_S3,0,S2,i;m;o,"));
        assert!(rep.to_csv_row().ends_with("S2:N(b=7);V:C"));
        // JSON parses.
        let parsed: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(parsed["case"], "C1_S3");
        assert_eq!(parsed["genus"], 0);
        assert_eq!(parsed["flips"]["i"], true);
    }

    #[test]
    fn swap_diagram_fixture() {
        let d = swap_diagram();
        assert_eq!(d.nodes().len(), 8);
        assert_eq!(d.edges().len(), 7);
        assert_eq!(d.endpoints(), ("Sigma_i+", "Sigma_i-"));
        let dot = d.to_dot();
        assert!(dot.contains("\"Sigma_i+\" -- \"S(T_i)-\";"));
    }
}
