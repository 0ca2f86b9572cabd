//! Canopies of oriented Heegaard trees for filled torus-knot exteriors.
//!
//! The oriented Heegaard tree of a manifold has a vertex for each isotopy
//! class of oriented Heegaard surfaces and an edge for each single
//! stabilization. Its *canopy* is the smallest subgraph with the same
//! number of components that contains every leaf (non-stabilized
//! splitting). For fillings of an admissible torus-knot exterior the canopy
//! takes one of seven shapes, dispatched on the filling slope `r/s` with
//! `a = pqs − r`:
//!
//! | case | condition                                   | shape |
//! |------|---------------------------------------------|-------|
//! | C1   | `α = 1/0` (`S³`)                            | a single self-flipping sphere |
//! | C2   | `\|a\| = 1` (lens space)                    | `T⁺, T⁻` joined at `S(T)` |
//! | C3   | `a = 0` (connected sum)                     | four `T₁#T₂` leaves joined at genus 3 |
//! | C4   | generic SFS                                 | six vertical leaves joined at genus 3 |
//! | C5   | `α = ±1/n`, `n ≥ 2` (horizontal exists)     | C4 plus a horizontal pair and a stabilization chain |
//! | C6   | `α ∈ LL_{pq/1}`, no horizontal              | vertical leaves merge in pairs: `Σ_i^± = Σ_o^∓` |
//! | C7   | `α = −1/1` (both exceptions)                | C6 plus the horizontal pair and chain |
//!
//! The stabilization chain between the genus-3 apex and the horizontal apex
//! carries no information beyond its genus range, so it is elided to a
//! single annotated edge by default and can be materialized on demand.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::lens::engmann_class_count;
use crate::seifert::{fiber_flippable, isotopy_classes, Label, OrientedPartition};
use crate::slope::{Int, Slope};
use crate::torus_knot::{Admissibility, FilledManifold, ManifoldKind, TorusKnot};

/// The knot fails one of the admissibility conditions, so canopy-level
/// claims are not available without forcing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InadmissibleKnot {
    /// Larger knot parameter.
    pub p: Int,
    /// Smaller knot parameter.
    pub q: Int,
    /// Which conditions failed.
    pub admissibility: Admissibility,
}

impl fmt::Display for InadmissibleKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "torus knot T({},{}) is not admissible", self.p, self.q)?;
        for failure in self.admissibility.failed() {
            write!(f, "; fails {failure}")?;
        }
        Ok(())
    }
}

impl core::error::Error for InadmissibleKnot {}

fn check_admissible(knot: &TorusKnot) -> Result<(), InadmissibleKnot> {
    let admissibility = knot.admissibility();
    if admissibility.is_admissible() {
        Ok(())
    } else {
        Err(InadmissibleKnot { p: knot.p().clone(), q: knot.q().clone(), admissibility })
    }
}

/// Orientation sign of a Heegaard surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    /// Orientation points into the handlebody.
    Plus,
    /// Orientation points into the compression body.
    Minus,
}

impl Sign {
    fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// What kind of Heegaard surface a canopy vertex stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    /// The Heegaard sphere of `S³`.
    Sphere,
    /// The Heegaard torus of a lens space.
    Torus,
    /// A connected sum of two Heegaard tori, tagged with their signs.
    ConnSumTorus(Sign, Sign),
    /// The vertical splitting through the inner exceptional fiber.
    VerticalInner,
    /// The vertical splitting dual to the cabling annulus.
    VerticalMiddle,
    /// The vertical splitting through the outer exceptional fiber.
    VerticalOuter,
    /// The horizontal splitting built from the punctured fiber surface.
    Horizontal,
    /// A one-fold stabilization joining non-isotopic leaves.
    StabilizedApex,
    /// An interior vertex of a materialized stabilization chain.
    ChainNode,
}

impl SurfaceKind {
    fn rank(&self) -> u8 {
        match self {
            SurfaceKind::Sphere => 0,
            SurfaceKind::Torus => 1,
            SurfaceKind::ConnSumTorus(..) => 2,
            SurfaceKind::VerticalInner => 3,
            SurfaceKind::VerticalMiddle => 4,
            SurfaceKind::VerticalOuter => 5,
            SurfaceKind::Horizontal => 6,
            SurfaceKind::StabilizedApex => 7,
            SurfaceKind::ChainNode => 8,
        }
    }

    fn json_name(&self) -> &'static str {
        match self {
            SurfaceKind::Sphere => "Sphere",
            SurfaceKind::Torus => "Torus",
            SurfaceKind::ConnSumTorus(..) => "ConnSumTorus",
            SurfaceKind::VerticalInner => "VerticalInner",
            SurfaceKind::VerticalMiddle => "VerticalMiddle",
            SurfaceKind::VerticalOuter => "VerticalOuter",
            SurfaceKind::Horizontal => "Horizontal",
            SurfaceKind::StabilizedApex => "StabilizedApex",
            SurfaceKind::ChainNode => "ChainNode",
        }
    }
}

/// An isotopy class of oriented Heegaard surfaces, as a canopy vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceClass {
    /// What the surface is.
    pub kind: SurfaceKind,
    /// Orientation sign; apexes and self-flipping classes carry none.
    pub sign: Option<Sign>,
    /// Genus of the surface.
    pub genus: Int,
    /// Oriented labels this class absorbed, e.g. `{"i+", "o-"}` for a
    /// merged vertical class. Singleton for unmerged leaves, empty for
    /// apexes and chain nodes.
    pub merged: BTreeSet<String>,
    /// True when the class contains its own orientation reversal.
    pub flips: bool,
}

impl SurfaceClass {
    /// True for the non-stabilized splittings, i.e. the canopy leaves.
    pub fn is_leaf(&self) -> bool {
        !matches!(self.kind, SurfaceKind::StabilizedApex | SurfaceKind::ChainNode)
    }

    /// Stable node name, e.g. `"vert_i+"`, `"apex_g3"`, `"horiz-"`.
    pub fn name(&self) -> String {
        let sign_suffix = |s: &Option<Sign>| s.map(|s| s.as_char().to_string()).unwrap_or_default();
        match &self.kind {
            SurfaceKind::Sphere => "sphere".to_string(),
            SurfaceKind::Torus => format!("torus{}", sign_suffix(&self.sign)),
            SurfaceKind::ConnSumTorus(s1, s2) => format!("connsum{}{}", s1, s2),
            SurfaceKind::VerticalInner | SurfaceKind::VerticalMiddle | SurfaceKind::VerticalOuter => {
                let rep = self.merged.iter().next().map(String::as_str).unwrap_or("?");
                format!("vert_{rep}")
            }
            SurfaceKind::Horizontal => format!("horiz{}", sign_suffix(&self.sign)),
            SurfaceKind::StabilizedApex => format!("apex_g{}{}", self.genus, sign_suffix(&self.sign)),
            SurfaceKind::ChainNode => format!("chain_g{}", self.genus),
        }
    }

    /// Human label for DOT output, e.g. `"Sigma_i+ (g=2)"`.
    pub fn dot_label(&self) -> String {
        let body = match &self.kind {
            SurfaceKind::Sphere => "S2".to_string(),
            SurfaceKind::Torus => match self.sign {
                Some(s) => format!("T{s}"),
                None => "T".to_string(),
            },
            SurfaceKind::ConnSumTorus(s1, s2) => format!("T1{s1}#T2{s2}"),
            SurfaceKind::VerticalInner | SurfaceKind::VerticalMiddle | SurfaceKind::VerticalOuter => {
                let sigmas: Vec<String> =
                    self.merged.iter().map(|l| format!("Sigma_{l}")).collect();
                sigmas.join("=")
            }
            SurfaceKind::Horizontal => match self.sign {
                Some(s) => format!("Sigma_h{s}"),
                None => "Sigma_h".to_string(),
            },
            SurfaceKind::StabilizedApex => match self.sign {
                Some(s) => format!("Sigma_3{s}"),
                None => "S".to_string(),
            },
            SurfaceKind::ChainNode => "S".to_string(),
        };
        format!("{body} (g={})", self.genus)
    }

    fn sort_key(&self) -> (u8, u8, Int, String) {
        let sign_rank = match self.sign {
            Some(Sign::Plus) => 0,
            Some(Sign::Minus) => 1,
            None => 2,
        };
        let merged: Vec<&str> = self.merged.iter().map(String::as_str).collect();
        (self.kind.rank(), sign_rank, self.genus.clone(), merged.join(","))
    }
}

/// The seven canopy case shapes, one per filling slope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FillingCase {
    /// The trivial filling: `S³`.
    C1S3,
    /// Lens space fillings, `|a| = 1`.
    C2Lens,
    /// The connected-sum filling `a = 0`.
    C3ConnSum,
    /// Generic Seifert fibered fillings.
    C4SfsGeneric,
    /// Three vertical splittings plus a strongly irreducible horizontal.
    C5SfsHorizontal,
    /// Two vertical splittings, no horizontal: `α ∈ LL_{pq/1}`.
    C6SfsTwoVertical,
    /// Two vertical splittings and a horizontal: `α = −1/1` only.
    C7SfsTwoVerticalHorizontal,
}

impl FillingCase {
    /// All cases in order.
    pub const ALL: [FillingCase; 7] = [
        FillingCase::C1S3,
        FillingCase::C2Lens,
        FillingCase::C3ConnSum,
        FillingCase::C4SfsGeneric,
        FillingCase::C5SfsHorizontal,
        FillingCase::C6SfsTwoVertical,
        FillingCase::C7SfsTwoVerticalHorizontal,
    ];

    /// Stable textual name, e.g. `"C4_SFS_Generic"`.
    pub fn name(&self) -> &'static str {
        match self {
            FillingCase::C1S3 => "C1_S3",
            FillingCase::C2Lens => "C2_Lens",
            FillingCase::C3ConnSum => "C3_ConnSum",
            FillingCase::C4SfsGeneric => "C4_SFS_Generic",
            FillingCase::C5SfsHorizontal => "C5_SFS_Horizontal",
            FillingCase::C6SfsTwoVertical => "C6_SFS_TwoVertical",
            FillingCase::C7SfsTwoVerticalHorizontal => "C7_SFS_TwoVertical_Horizontal",
        }
    }

    fn from_name(name: &str) -> Option<FillingCase> {
        FillingCase::ALL.iter().copied().find(|c| c.name() == name)
    }
}

impl fmt::Display for FillingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether the drawn canopy shape is proved or only conjectured.
///
/// Everything here is proved except the connected-sum shape for knots that
/// satisfy condition (1) but not condition (2), where distinctness of the
/// four oriented surfaces is conjectural.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    /// The shape is a theorem for this filling.
    Proven,
    /// The shape is conjectural (connected sums failing condition (2)).
    Conjectured,
}

impl Certainty {
    fn name(&self) -> &'static str {
        match self {
            Certainty::Proven => "proven",
            Certainty::Conjectured => "conjectured",
        }
    }
}

/// Whether an edge is a genuine single stabilization or the elided
/// stand-in for a whole chain of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// One stabilization.
    Stabilization,
    /// The elided chain between the genus-3 apex and the horizontal apex.
    ChainElided,
}

/// An edge of the canopy, by vertex indices with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Lower endpoint index.
    pub a: usize,
    /// Upper endpoint index.
    pub b: usize,
    /// Stabilization or elided chain.
    pub kind: EdgeKind,
}

/// Options for [`build_canopy_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct CanopyOptions {
    /// Build for inadmissible knots too, merging leaves as the failed
    /// conditions dictate.
    pub force: bool,
    /// Materialize the stabilization chain instead of eliding it.
    pub expand_chain: bool,
}

/// The canopy of an oriented Heegaard tree: a forest whose leaves are the
/// non-stabilized oriented Heegaard surfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanopyGraph {
    case: Option<FillingCase>,
    certainty: Certainty,
    vertices: Vec<SurfaceClass>,
    edges: Vec<Edge>,
    chain_elided: bool,
    chain_span: Option<(Int, Int)>,
}

impl CanopyGraph {
    /// The filling case, or `None` for the knot-exterior canopy.
    pub fn case(&self) -> Option<FillingCase> {
        self.case
    }

    /// Proof status of the drawn shape.
    pub fn certainty(&self) -> Certainty {
        self.certainty
    }

    /// Vertices in canonical `(kind, sign, genus)` order.
    pub fn vertices(&self) -> &[SurfaceClass] {
        &self.vertices
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges; an elided chain counts once.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True when the stabilization chain is elided to one edge.
    pub fn chain_elided(&self) -> bool {
        self.chain_elided
    }

    /// Genus span `(low, high)` of the elided chain, when elided.
    pub fn chain_span(&self) -> Option<(&Int, &Int)> {
        self.chain_span.as_ref().map(|(a, b)| (a, b))
    }

    /// The leaves: every non-apex, non-chain vertex.
    pub fn leaves(&self) -> Vec<&SurfaceClass> {
        self.vertices.iter().filter(|v| v.is_leaf()).collect()
    }

    /// Minimum genus over the leaves: the Heegaard genus of the manifold.
    pub fn min_leaf_genus(&self) -> Int {
        self.leaves()
            .iter()
            .map(|v| v.genus.clone())
            .min()
            .expect("canopies have at least one leaf")
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut i = i;
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for e in &self.edges {
            let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// True when every component is a tree.
    pub fn is_forest(&self) -> bool {
        self.vertices.len() == self.edges.len() + self.component_count()
    }

    /// Deterministic DOT rendering with quoted stable node names.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph canopy {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{}\" [label=\"{}\"];\n", v.name(), v.dot_label()));
        }
        for e in &self.edges {
            let (na, nb) = (self.vertices[e.a].name(), self.vertices[e.b].name());
            match e.kind {
                EdgeKind::Stabilization => out.push_str(&format!("  \"{na}\" -- \"{nb}\";\n")),
                EdgeKind::ChainElided => {
                    let (lo, hi) = self.chain_span().expect("elided edge has a span");
                    out.push_str(&format!(
                        "  \"{na}\" -- \"{nb}\" [style=dashed, label=\"chain_elided g={lo}..{hi}\"];\n"
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Deterministic JSON rendering; [`CanopyGraph::from_json`] inverts it.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        match self.case {
            Some(c) => out.push_str(&format!("\"case\":\"{}\"", c.name())),
            None => out.push_str("\"case\":null"),
        }
        out.push_str(&format!(",\"certainty\":\"{}\"", self.certainty.name()));
        out.push_str(&format!(",\"chain_elided\":{}", self.chain_elided));
        match &self.chain_span {
            Some((lo, hi)) => out.push_str(&format!(",\"chain_span\":[{lo},{hi}]")),
            None => out.push_str(",\"chain_span\":null"),
        }
        out.push_str(",\"vertices\":[");
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let sign = match v.sign {
                Some(s) => format!("\"{s}\""),
                None => "null".to_string(),
            };
            let merged: Vec<String> = v.merged.iter().map(|l| format!("\"{l}\"")).collect();
            out.push_str(&format!(
                "{{\"name\":\"{}\",\"kind\":\"{}\",\"sign\":{},\"genus\":{},\"merged\":[{}],\"flips\":{}}}",
                v.name(),
                v.kind.json_name(),
                sign,
                v.genus,
                merged.join(","),
                v.flips
            ));
        }
        out.push_str("],\"edges\":[");
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let kind = match e.kind {
                EdgeKind::Stabilization => "stabilization",
                EdgeKind::ChainElided => "chain_elided",
            };
            out.push_str(&format!(
                "{{\"from\":\"{}\",\"to\":\"{}\",\"kind\":\"{kind}\"}}",
                self.vertices[e.a].name(),
                self.vertices[e.b].name()
            ));
        }
        out.push_str("]}");
        out
    }

    /// Parses a graph back from [`CanopyGraph::to_json`] output.
    pub fn from_json(text: &str) -> Result<CanopyGraph, String> {
        use serde_json::Value;
        let root: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let obj = root.as_object().ok_or("expected a JSON object")?;
        let case = match obj.get("case").ok_or("missing case")? {
            Value::Null => None,
            Value::String(s) => Some(FillingCase::from_name(s).ok_or("unknown case")?),
            _ => return Err("bad case".into()),
        };
        let certainty = match obj.get("certainty").and_then(Value::as_str) {
            Some("proven") => Certainty::Proven,
            Some("conjectured") => Certainty::Conjectured,
            _ => return Err("bad certainty".into()),
        };
        let chain_elided =
            obj.get("chain_elided").and_then(Value::as_bool).ok_or("bad chain_elided")?;
        let chain_span = match obj.get("chain_span").ok_or("missing chain_span")? {
            Value::Null => None,
            Value::Array(pair) if pair.len() == 2 => Some((
                value_to_int(&pair[0]).ok_or("bad span")?,
                value_to_int(&pair[1]).ok_or("bad span")?,
            )),
            _ => return Err("bad chain_span".into()),
        };
        let mut vertices = Vec::new();
        let mut names = Vec::new();
        for v in obj.get("vertices").and_then(Value::as_array).ok_or("bad vertices")? {
            let vo = v.as_object().ok_or("bad vertex")?;
            let name = vo.get("name").and_then(Value::as_str).ok_or("bad name")?.to_string();
            let sign = match vo.get("sign").ok_or("missing sign")? {
                Value::Null => None,
                Value::String(s) if s.len() == 1 => Sign::from_char(s.chars().next().unwrap()),
                _ => return Err("bad sign".into()),
            };
            let genus = value_to_int(vo.get("genus").ok_or("missing genus")?).ok_or("bad genus")?;
            let mut merged = BTreeSet::new();
            for l in vo.get("merged").and_then(Value::as_array).ok_or("bad merged")? {
                merged.insert(l.as_str().ok_or("bad merged label")?.to_string());
            }
            let flips = vo.get("flips").and_then(Value::as_bool).ok_or("bad flips")?;
            let kind = match vo.get("kind").and_then(Value::as_str).ok_or("bad kind")? {
                "Sphere" => SurfaceKind::Sphere,
                "Torus" => SurfaceKind::Torus,
                "ConnSumTorus" => {
                    let rep = merged.iter().next().ok_or("connsum without labels")?;
                    let mut chars = rep.chars();
                    let s1 = chars.next().and_then(Sign::from_char).ok_or("bad connsum label")?;
                    let s2 = chars.next().and_then(Sign::from_char).ok_or("bad connsum label")?;
                    SurfaceKind::ConnSumTorus(s1, s2)
                }
                "VerticalInner" => SurfaceKind::VerticalInner,
                "VerticalMiddle" => SurfaceKind::VerticalMiddle,
                "VerticalOuter" => SurfaceKind::VerticalOuter,
                "Horizontal" => SurfaceKind::Horizontal,
                "StabilizedApex" => SurfaceKind::StabilizedApex,
                "ChainNode" => SurfaceKind::ChainNode,
                _ => return Err("unknown kind".into()),
            };
            names.push(name);
            vertices.push(SurfaceClass { kind, sign, genus, merged, flips });
        }
        let mut edges = Vec::new();
        for e in obj.get("edges").and_then(Value::as_array).ok_or("bad edges")? {
            let eo = e.as_object().ok_or("bad edge")?;
            let from = eo.get("from").and_then(Value::as_str).ok_or("bad from")?;
            let to = eo.get("to").and_then(Value::as_str).ok_or("bad to")?;
            let kind = match eo.get("kind").and_then(Value::as_str) {
                Some("stabilization") => EdgeKind::Stabilization,
                Some("chain_elided") => EdgeKind::ChainElided,
                _ => return Err("bad edge kind".into()),
            };
            let idx = |n: &str| names.iter().position(|m| m == n).ok_or("unknown edge endpoint");
            let (a, b) = (idx(from)?, idx(to)?);
            edges.push(Edge { a: a.min(b), b: a.max(b), kind });
        }
        Ok(CanopyGraph { case, certainty, vertices, edges, chain_elided, chain_span })
    }
}

fn value_to_int(v: &serde_json::Value) -> Option<Int> {
    match v {
        serde_json::Value::Number(n) => n.to_string().parse().ok(),
        _ => None,
    }
}

/// Dispatches a filling slope into its canopy case. Errors on inadmissible
/// knots; see [`filling_case_forced`] to classify regardless.
pub fn filling_case(knot: &TorusKnot, alpha: &Slope) -> Result<FillingCase, InadmissibleKnot> {
    check_admissible(knot)?;
    Ok(filling_case_forced(knot, alpha))
}

/// Case dispatch without the admissibility gate. The slope conditions are
/// the same for every torus knot; for inadmissible knots the case names
/// describe the slope, not necessarily the leaf count.
pub fn filling_case_forced(knot: &TorusKnot, alpha: &Slope) -> FillingCase {
    if alpha.is_infinity() {
        return FillingCase::C1S3;
    }
    let a = knot.moser_a(alpha);
    if a.abs().is_one() {
        return FillingCase::C2Lens;
    }
    if a.is_zero() {
        return FillingCase::C3ConnSum;
    }
    let minus_one = Slope::new(-1, 1).expect("slope");
    if *alpha == minus_one {
        return FillingCase::C7SfsTwoVerticalHorizontal;
    }
    if alpha.numerator().abs().is_one() {
        // On L_{0/1} with n ∉ {−1, 0, 1}: a strongly irreducible horizontal
        // splitting exists except at 1/1, which lies on LL instead.
        let one_one = Slope::new(1, 1).expect("slope");
        if *alpha == one_one {
            return FillingCase::C6SfsTwoVertical;
        }
        return FillingCase::C5SfsHorizontal;
    }
    // For the fiber slope, LL membership reduces to s ≡ ±1 (mod |a|): with
    // s invertible mod a, this is the flip criterion b ≡ ±1 for the new
    // fiber. Equality with the general on_line_of_lines test is covered by
    // the oracle tests.
    if s_is_unit_residue(alpha.denominator(), &a) {
        return FillingCase::C6SfsTwoVertical;
    }
    FillingCase::C4SfsGeneric
}

pub(crate) fn s_is_unit_residue(s: &Int, a: &Int) -> bool {
    use num_integer::Integer;
    let am = a.abs();
    let rem = s.mod_floor(&am);
    rem.is_one() || rem == am - Int::one()
}

/// The classical oriented label (`"i+"`, `"m-"`, ...) of a vertical
/// splitting, read off from the side of the partition holding `special`
/// (the new fiber after filling, or the boundary for the exterior).
fn classic_label(p: &OrientedPartition, special: &str) -> String {
    let (sign, side) = if p.side1().contains(special) {
        ('+', p.side1())
    } else {
        ('-', p.side2())
    };
    let letter = if side.len() == 1 {
        'm'
    } else {
        let companion = side.iter().find(|l| *l != special).expect("two-element side");
        match companion.as_str() {
            "f_i" => 'i',
            "f_o" => 'o',
            other => panic!("unexpected companion label {other}"),
        }
    };
    format!("{letter}{sign}")
}

fn vertical_kind(rep: &str) -> SurfaceKind {
    match rep.as_bytes()[0] {
        b'i' => SurfaceKind::VerticalInner,
        b'm' => SurfaceKind::VerticalMiddle,
        b'o' => SurfaceKind::VerticalOuter,
        _ => unreachable!("classic labels start with i, m or o"),
    }
}

/// Isotopy classes of the six oriented vertical splittings, as classic
/// label sets with a flip marker, using the actual flippability of each
/// fiber. `special` names the third, non-tunnel label.
pub(crate) fn vertical_orbit_labels(
    flippable: &BTreeMap<Label, bool>,
    special: &str,
) -> Vec<(BTreeSet<String>, bool)> {
    let labels: BTreeSet<Label> = flippable.keys().cloned().collect();
    let classes = isotopy_classes(&labels, flippable).expect("three labels");
    let mut out: Vec<(BTreeSet<String>, bool)> = classes
        .classes()
        .iter()
        .map(|orbit| {
            let labels: BTreeSet<String> =
                orbit.iter().map(|p| classic_label(p, special)).collect();
            let flips = orbit.contains(&orbit[0].reversed());
            (labels, flips)
        })
        .collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Flippability of the three fibers of a filled SFS, keyed by label.
pub(crate) fn sfs_flippability_of(knot: &TorusKnot, filled: &FilledManifold) -> BTreeMap<Label, bool> {
    let mut map = BTreeMap::new();
    map.insert(
        Label::from("f_i"),
        fiber_flippable(knot.p(), knot.q()).expect("p >= 2"),
    );
    map.insert(
        Label::from("f_o"),
        fiber_flippable(knot.q(), knot.p()).expect("q >= 2"),
    );
    map.insert(
        Label::from("f_new"),
        fiber_flippable(filled.a(), filled.b_raw()).expect("|a| >= 2 in the SFS case"),
    );
    map
}

/// The genus-2 vertical leaf classes of a filled SFS.
fn vertical_leaves(knot: &TorusKnot, filled: &FilledManifold) -> Vec<SurfaceClass> {
    let flippable = sfs_flippability_of(knot, filled);
    vertical_orbit_labels(&flippable, "f_new")
        .into_iter()
        .map(|(merged, flips)| {
            let rep = merged.iter().next().expect("non-empty orbit").clone();
            let sign = if flips { None } else { Sign::from_char(rep.chars().nth(1).unwrap()) };
            SurfaceClass {
                kind: vertical_kind(&rep),
                sign,
                genus: Int::from(2),
                merged,
                flips,
            }
        })
        .collect()
}

fn apex(genus: Int, sign: Option<Sign>, flips: bool) -> SurfaceClass {
    SurfaceClass { kind: SurfaceKind::StabilizedApex, sign, genus, merged: BTreeSet::new(), flips }
}

/// Assembles a graph from classes and name-keyed edges, sorting vertices
/// canonically.
fn assemble(
    case: Option<FillingCase>,
    certainty: Certainty,
    mut vertices: Vec<SurfaceClass>,
    named_edges: Vec<(String, String, EdgeKind)>,
    chain_elided: bool,
    chain_span: Option<(Int, Int)>,
) -> CanopyGraph {
    vertices.sort_by_key(|v| v.sort_key());
    let index_of = |name: &str| -> usize {
        vertices
            .iter()
            .position(|v| v.name() == name)
            .unwrap_or_else(|| panic!("edge endpoint {name} missing"))
    };
    let mut edges: Vec<Edge> = named_edges
        .into_iter()
        .map(|(x, y, kind)| {
            let (a, b) = (index_of(&x), index_of(&y));
            Edge { a: a.min(b), b: a.max(b), kind }
        })
        .collect();
    edges.sort_by_key(|e| (e.a, e.b));
    let graph = CanopyGraph { case, certainty, vertices, edges, chain_elided, chain_span };
    debug_assert!(graph.is_forest());
    graph
}

/// Builds the canopy for an admissible knot with default options.
pub fn build_canopy(knot: &TorusKnot, alpha: &Slope) -> Result<CanopyGraph, InadmissibleKnot> {
    build_canopy_with(knot, alpha, &CanopyOptions::default())
}

/// Builds the canopy of the oriented Heegaard tree of the filled manifold.
pub fn build_canopy_with(
    knot: &TorusKnot,
    alpha: &Slope,
    options: &CanopyOptions,
) -> Result<CanopyGraph, InadmissibleKnot> {
    if !options.force {
        check_admissible(knot)?;
    }
    let case = filling_case_forced(knot, alpha);
    let filled = knot.moser_classify(alpha);
    let mut vertices: Vec<SurfaceClass> = Vec::new();
    let mut edges: Vec<(String, String, EdgeKind)> = Vec::new();
    let mut certainty = Certainty::Proven;
    let mut chain_elided = false;
    let mut chain_span = None;

    match case {
        FillingCase::C1S3 => {
            vertices.push(SurfaceClass {
                kind: SurfaceKind::Sphere,
                sign: None,
                genus: Int::zero(),
                merged: BTreeSet::new(),
                flips: true,
            });
        }
        FillingCase::C2Lens => {
            let lens = match filled.kind() {
                ManifoldKind::Lens(l) => l.clone(),
                other => unreachable!("C2 classifies as a lens space, got {other:?}"),
            };
            if lens.torus_flips() {
                // Only reachable by forcing: the 5/1 filling of T(3,2).
                vertices.push(SurfaceClass {
                    kind: SurfaceKind::Torus,
                    sign: None,
                    genus: Int::one(),
                    merged: BTreeSet::new(),
                    flips: true,
                });
            } else {
                for sign in [Sign::Plus, Sign::Minus] {
                    vertices.push(SurfaceClass {
                        kind: SurfaceKind::Torus,
                        sign: Some(sign),
                        genus: Int::one(),
                        merged: BTreeSet::new(),
                        flips: false,
                    });
                }
                vertices.push(apex(Int::from(2), None, true));
                edges.push(("torus+".into(), "apex_g2".into(), EdgeKind::Stabilization));
                edges.push(("torus-".into(), "apex_g2".into(), EdgeKind::Stabilization));
            }
        }
        FillingCase::C3ConnSum => {
            let (l1, l2) = match filled.kind() {
                ManifoldKind::ConnSum(l1, l2) => (l1.clone(), l2.clone()),
                other => unreachable!("C3 classifies as a connected sum, got {other:?}"),
            };
            certainty = if engmann_class_count(&l1, &l2).guaranteed_distinct {
                Certainty::Proven
            } else {
                Certainty::Conjectured
            };
            // Orbits of the four oriented sums under flips of flipping
            // summand tori; for admissible knots nothing flips.
            let all = [
                (Sign::Plus, Sign::Plus),
                (Sign::Plus, Sign::Minus),
                (Sign::Minus, Sign::Plus),
                (Sign::Minus, Sign::Minus),
            ];
            let flip1 = l1.torus_flips();
            let flip2 = l2.torus_flips();
            let canon = |pair: (Sign, Sign)| -> (Sign, Sign) {
                // Orbit representative under the allowed coordinate flips.
                match (flip1, flip2) {
                    (false, false) => pair,
                    (true, false) => (Sign::Plus, pair.1),
                    (false, true) => (pair.0, Sign::Plus),
                    (true, true) => (Sign::Plus, Sign::Plus),
                }
            };
            let mut orbits: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
            let pair_label = |p: (Sign, Sign)| format!("{}{}", p.0, p.1);
            for pair in all {
                orbits.entry(pair_label(canon(pair))).or_default().insert(pair_label(pair));
            }
            for (_, merged) in orbits {
                let rep = merged.iter().next().unwrap().clone();
                let mut chars = rep.chars();
                let s1 = Sign::from_char(chars.next().unwrap()).unwrap();
                let s2 = Sign::from_char(chars.next().unwrap()).unwrap();
                // The reversal of (s1, s2) is (−s1, −s2).
                let reversed = format!(
                    "{}{}",
                    if s1 == Sign::Plus { Sign::Minus } else { Sign::Plus },
                    if s2 == Sign::Plus { Sign::Minus } else { Sign::Plus }
                );
                let flips = merged.contains(&reversed);
                let leaf = SurfaceClass {
                    kind: SurfaceKind::ConnSumTorus(s1, s2),
                    sign: None,
                    genus: Int::from(2),
                    merged,
                    flips,
                };
                vertices.push(leaf);
            }
            if vertices.len() > 1 {
                vertices.push(apex(Int::from(3), None, true));
                for v in vertices.clone() {
                    if v.is_leaf() {
                        edges.push((v.name(), "apex_g3".into(), EdgeKind::Stabilization));
                    }
                }
            }
        }
        FillingCase::C4SfsGeneric
        | FillingCase::C5SfsHorizontal
        | FillingCase::C6SfsTwoVertical
        | FillingCase::C7SfsTwoVerticalHorizontal => {
            let leaves = vertical_leaves(knot, &filled);
            let single_leaf = leaves.len() == 1;
            for leaf in &leaves {
                vertices.push(leaf.clone());
            }
            if !single_leaf {
                vertices.push(apex(Int::from(3), None, true));
                for leaf in &leaves {
                    edges.push((leaf.name(), "apex_g3".into(), EdgeKind::Stabilization));
                }
            }
            let horizontal = matches!(
                case,
                FillingCase::C5SfsHorizontal | FillingCase::C7SfsTwoVerticalHorizontal
            );
            if horizontal {
                let hg = knot.horizontal_genus();
                let top = &hg + Int::one();
                for sign in [Sign::Plus, Sign::Minus] {
                    vertices.push(SurfaceClass {
                        kind: SurfaceKind::Horizontal,
                        sign: Some(sign),
                        genus: hg.clone(),
                        merged: BTreeSet::new(),
                        flips: false,
                    });
                }
                vertices.push(apex(top.clone(), None, true));
                let top_name = format!("apex_g{top}");
                edges.push(("horiz+".into(), top_name.clone(), EdgeKind::Stabilization));
                edges.push(("horiz-".into(), top_name.clone(), EdgeKind::Stabilization));
                if options.expand_chain {
                    // Interior chain vertices at genus 4 ..= hg.
                    let mut prev = String::from("apex_g3");
                    let mut g = Int::from(4);
                    while g <= hg {
                        let node = SurfaceClass {
                            kind: SurfaceKind::ChainNode,
                            sign: None,
                            genus: g.clone(),
                            merged: BTreeSet::new(),
                            flips: true,
                        };
                        let name = node.name();
                        vertices.push(node);
                        edges.push((prev.clone(), name.clone(), EdgeKind::Stabilization));
                        prev = name;
                        g += 1;
                    }
                    edges.push((prev, top_name, EdgeKind::Stabilization));
                } else {
                    chain_elided = true;
                    chain_span = Some((Int::from(3), top.clone()));
                    edges.push(("apex_g3".into(), top_name, EdgeKind::ChainElided));
                }
            }
        }
    }

    Ok(assemble(Some(case), certainty, vertices, edges, chain_elided, chain_span))
}

/// Canopy of the oriented Heegaard tree of the knot exterior itself: two
/// components (one per orientation of the boundary partition), each with
/// the tunnel splittings at genus 2 under a genus-3 apex.
pub fn canopy_for_exterior(knot: &TorusKnot) -> Result<CanopyGraph, InadmissibleKnot> {
    check_admissible(knot)?;
    Ok(canopy_for_exterior_forced(knot))
}

/// Exterior canopy without the admissibility gate; leaves merge exactly as
/// the failed conditions dictate.
pub fn canopy_for_exterior_forced(knot: &TorusKnot) -> CanopyGraph {
    let mut flippable = BTreeMap::new();
    flippable.insert(Label::from("f_i"), fiber_flippable(knot.p(), knot.q()).expect("p >= 2"));
    flippable.insert(Label::from("f_o"), fiber_flippable(knot.q(), knot.p()).expect("q >= 2"));
    flippable.insert(Label::from("bdry"), false);
    let orbits = vertical_orbit_labels(&flippable, "bdry");
    let mut vertices: Vec<SurfaceClass> = Vec::new();
    let mut edges: Vec<(String, String, EdgeKind)> = Vec::new();
    for component in [Sign::Plus, Sign::Minus] {
        let apex_vertex = apex(Int::from(3), Some(component), false);
        let apex_name = apex_vertex.name();
        vertices.push(apex_vertex);
        for (merged, flips) in &orbits {
            // The boundary never flips, so orbits stay within one sign
            // component and nothing in the exterior self-flips.
            debug_assert!(!flips);
            let rep = merged.iter().next().expect("non-empty orbit");
            if !rep.ends_with(component.as_char()) {
                continue;
            }
            let leaf = SurfaceClass {
                kind: vertical_kind(rep),
                sign: Some(component),
                genus: Int::from(2),
                merged: merged.clone(),
                flips: false,
            };
            edges.push((leaf.name(), apex_name.clone(), EdgeKind::Stabilization));
            vertices.push(leaf);
        }
    }
    assemble(None, Certainty::Proven, vertices, edges, false, None)
}
