//! The `(p,q)`-torus-knot exterior and Moser's classification of its Dehn
//! fillings.
//!
//! For the filling slope `r/s`, the algebraic intersection number
//! `a = pqs − r` between the regular-fiber slope `pq/1` and the filling
//! slope determines the filled manifold:
//!
//! - `a = 0`: the connected sum `L(p,q) # L(q,p)`,
//! - `|a| = 1`: the lens space `L(|r|, sq²)` (`S³` when `|r| = 1`),
//! - `|a| > 1`: the Seifert fibered space over `S²` with exceptional fibers
//!   `(p,q)`, `(q,p)` and `(a,b)`, where `b = pqu − t` for any longitude
//!   `t/u` of the attached solid torus.
//!
//! Equivalently: `a = 0` iff the slope is `pq/1`, and `|a| = 1` iff the
//! slope lies on the line `L_{pq/1}`.
//!
//! Knots are *admissible* when two modular conditions hold: (1)
//! `p ≢ ±1 (mod q)` and `q ≢ ±1 (mod p)`, so the three tunnel splittings
//! are pairwise non-isotopic; (2) `q² ≢ ±1 (mod p)` and `p² ≢ ±1 (mod q)`,
//! so the connected-sum filling has four distinct oriented Heegaard
//! surfaces. Classification itself is valid for every non-trivial torus
//! knot; only the canopy and phenomena claims need admissibility.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lens::LensSpace;
use crate::seifert::{normalize_b, ExceptionalFiber};
use crate::slope::{Int, Slope};

/// Errors from knot construction and knot-level queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotError {
    /// `p` and `q` must be coprime.
    NotCoprime,
    /// Torus knots with `min(p, q) < 2` are trivial.
    TrivialKnot,
    /// The horizontal-splitting test is defined only on the line `L_{0/1}`,
    /// i.e. for slopes `±1/n`.
    NotOnHorizontalLine,
}

impl fmt::Display for KnotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotError::NotCoprime => write!(f, "torus knot parameters must be coprime"),
            KnotError::TrivialKnot => write!(f, "torus knot parameters must both be at least 2"),
            KnotError::NotOnHorizontalLine => {
                write!(f, "slope is not of the form 1/n, so no horizontal splitting arises")
            }
        }
    }
}

impl core::error::Error for KnotError {}

/// The modular admissibility conditions for a `(p,q)`-torus knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Admissibility {
    /// `p ≢ ±1 (mod q)` and `q ≢ ±1 (mod p)`: the inner, middle and outer
    /// splittings of the exterior are pairwise non-isotopic.
    pub condition1: bool,
    /// `q² ≢ ±1 (mod p)` and `p² ≢ ±1 (mod q)`: the connected-sum filling
    /// has four distinct oriented Heegaard surfaces.
    pub condition2: bool,
}

impl Admissibility {
    /// Both conditions hold.
    pub fn is_admissible(&self) -> bool {
        self.condition1 && self.condition2
    }

    /// Names of the failed conditions, for diagnostics.
    pub fn failed(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.condition1 {
            out.push("condition (1): p = ±1 (mod q) or q = ±1 (mod p)");
        }
        if !self.condition2 {
            out.push("condition (2): q^2 = ±1 (mod p) or p^2 = ±1 (mod q)");
        }
        out
    }
}

/// A non-trivial torus knot, normalized so that `p > q ≥ 2` and
/// `gcd(p, q) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusKnot {
    p: Int,
    q: Int,
}

impl TorusKnot {
    /// Builds the knot, swapping the parameters into `p > q` order.
    /// Non-coprime pairs and trivial knots (`min < 2`) are rejected.
    pub fn new(p: impl Into<Int>, q: impl Into<Int>) -> Result<Self, KnotError> {
        let (a, b) = (p.into(), q.into());
        let (p, q) = if a >= b { (a, b) } else { (b, a) };
        if q < Int::from(2) {
            return Err(KnotError::TrivialKnot);
        }
        if !p.gcd(&q).is_one() {
            return Err(KnotError::NotCoprime);
        }
        Ok(TorusKnot { p, q })
    }

    /// Larger parameter.
    pub fn p(&self) -> &Int {
        &self.p
    }

    /// Smaller parameter.
    pub fn q(&self) -> &Int {
        &self.q
    }

    /// Evaluates both admissibility conditions.
    pub fn admissibility(&self) -> Admissibility {
        let pm1 = |x: &Int, m: &Int| {
            let r = x.mod_floor(m);
            r.is_one() || r == m - Int::one()
        };
        let p2 = &self.p * &self.p;
        let q2 = &self.q * &self.q;
        Admissibility {
            condition1: !pm1(&self.p, &self.q) && !pm1(&self.q, &self.p),
            condition2: !pm1(&q2, &self.p) && !pm1(&p2, &self.q),
        }
    }

    /// Shorthand for `admissibility().is_admissible()`.
    pub fn is_admissible(&self) -> bool {
        self.admissibility().is_admissible()
    }

    /// Slope `pq/1` of a regular fiber of the Seifert fibration.
    pub fn fiber_slope(&self) -> Slope {
        Slope::new(&self.p * &self.q, Int::one()).expect("pq/1 is a slope")
    }

    /// The algebraic intersection number `a = pqs − r` between the
    /// regular-fiber slope and the filling slope.
    pub fn moser_a(&self, alpha: &Slope) -> Int {
        &self.p * &self.q * alpha.denominator() - alpha.numerator()
    }

    /// Classifies the `alpha`-filling of the knot exterior.
    ///
    /// Valid for every slope on every non-trivial torus knot; admissibility
    /// only matters for canopy-level claims.
    pub fn moser_classify(&self, alpha: &Slope) -> FilledManifold {
        let a = self.moser_a(alpha);
        let (t, u) = longitude_pair(alpha);
        let pq = &self.p * &self.q;
        let b = &pq * &u - &t;
        let b_normalized = if a.is_zero() { None } else { Some(normalize_b(&a, &b).expect("a != 0")) };
        let kind = if a.is_zero() {
            ManifoldKind::ConnSum(
                LensSpace::normal_form(self.p.clone(), self.q.clone()).expect("coprime"),
                LensSpace::normal_form(self.q.clone(), self.p.clone()).expect("coprime"),
            )
        } else if a.abs().is_one() {
            let order = alpha.numerator().abs();
            let l = LensSpace::normal_form(order, alpha.denominator() * &self.q * &self.q)
                .expect("|r| and s q^2 are coprime when |a| = 1");
            if l.is_s3() {
                ManifoldKind::S3
            } else {
                ManifoldKind::Lens(l)
            }
        } else {
            let fibers = [
                ExceptionalFiber::new(self.p.clone(), self.q.clone(), "f_i").expect("p >= 2"),
                ExceptionalFiber::new(self.q.clone(), self.p.clone(), "f_o").expect("q >= 2"),
                ExceptionalFiber::new(a.clone(), b.clone(), "f_new").expect("|a| >= 2"),
            ];
            debug_assert!(a.gcd(&b).is_one());
            ManifoldKind::Sfs(fibers)
        };
        let longitude = Slope::new(t, u).expect("longitudes are primitive");
        FilledManifold { kind, a, b_raw: b, b_normalized, longitude }
    }

    /// Genus of the horizontal Heegaard surface arising from the once
    /// punctured fiber surface: `2(p−1)(q−1)`.
    ///
    /// This is the doubled fiber genus as used for the splitting; note the
    /// Seifert surface of the knot itself has genus `(p−1)(q−1)/2`, so the
    /// value here is a convention of the splitting construction, kept
    /// verbatim.
    pub fn horizontal_genus(&self) -> Int {
        Int::from(2) * (&self.p - Int::one()) * (&self.q - Int::one())
    }

    /// For `alpha = ±1/n` on the line `L_{0/1}`: true iff the horizontal
    /// splitting of the filled manifold is strongly irreducible, i.e.
    /// `|a| = |pqn − 1| > lcm(p,q) = pq`.
    pub fn horizontal_strongly_irreducible(&self, alpha: &Slope) -> Result<bool, KnotError> {
        if !alpha.numerator().abs().is_one() {
            return Err(KnotError::NotOnHorizontalLine);
        }
        Ok(self.moser_a(alpha).abs() > &self.p * &self.q)
    }

    /// Bridge number of the knot with respect to a sweepout of `S³` by
    /// spheres: `min(p, q)`.
    pub fn bridge_number(&self) -> Int {
        self.q.clone()
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.p, self.q)
    }
}

/// The canonical longitude pair `(t, u)` for `alpha = r/s`: the unique
/// solution of `r·u − t·s = 1` with `1 ≤ u ≤ s`, and `(0, 1)` for `1/0`.
///
/// Any longitude differs by a multiple of `(r, s)`; the determinant is
/// `+1` exactly, which pins the sign of `b = pqu − t` before reduction.
pub fn longitude_pair(alpha: &Slope) -> (Int, Int) {
    let (r, s) = (alpha.numerator(), alpha.denominator());
    if s.is_zero() {
        return (Int::zero(), Int::one());
    }
    let egcd = r.mod_floor(s).extended_gcd(s);
    let u0 = egcd.x.mod_floor(s);
    let u = if u0.is_zero() { s.clone() } else { u0 };
    let t = (r * &u - Int::one()) / s;
    debug_assert!((r * &u - &t * s).is_one());
    (t, u)
}

/// The canonical longitude of `alpha` as a normalized slope.
pub fn longitude(alpha: &Slope) -> Slope {
    let (t, u) = longitude_pair(alpha);
    Slope::new(t, u).expect("longitudes are primitive")
}

/// The type of a filled manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldKind {
    /// The trivial filling `1/0` restores `S³`.
    S3,
    /// A lens space, from fillings on the line `L_{pq/1}`.
    Lens(LensSpace),
    /// `L(p,q) # L(q,p)`, from the fiber-slope filling `pq/1`.
    ConnSum(LensSpace, LensSpace),
    /// A Seifert fibered space over `S²` with three exceptional fibers
    /// `(p,q)`, `(q,p)`, `(a,b)`.
    Sfs([ExceptionalFiber; 3]),
}

/// A classified Dehn filling, together with the derived invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilledManifold {
    kind: ManifoldKind,
    a: Int,
    b_raw: Int,
    b_normalized: Option<Int>,
    longitude: Slope,
}

impl FilledManifold {
    /// The manifold type.
    pub fn kind(&self) -> &ManifoldKind {
        &self.kind
    }

    /// The signed invariant `a = pqs − r`. Every classification condition
    /// uses `|a|`; the sign is retained for reproducibility.
    pub fn a(&self) -> &Int {
        &self.a
    }

    /// `b = pqu − t` for the canonical longitude `t/u`.
    pub fn b_raw(&self) -> &Int {
        &self.b_raw
    }

    /// `b mod |a|`, the longitude-independent residue; `None` when `a = 0`.
    pub fn b_normalized(&self) -> Option<&Int> {
        self.b_normalized.as_ref()
    }

    /// The canonical longitude used to compute `b`.
    pub fn longitude(&self) -> &Slope {
        &self.longitude
    }

    /// Serializes to the tagged JSON record, e.g.
    /// `{"type":"SFS","fibers":[[9,7],[7,9],[62,63]],"a":62,"b_normalized":1}`.
    pub fn to_json(&self) -> String {
        match &self.kind {
            ManifoldKind::S3 => String::from("{\"type\":\"S3\"}"),
            ManifoldKind::Lens(l) => format!(
                "{{\"type\":\"Lens\",\"p\":{},\"q\":{},\"a\":{}}}",
                l.p(),
                l.q(),
                self.a
            ),
            ManifoldKind::ConnSum(l1, l2) => format!(
                "{{\"type\":\"ConnSum\",\"summands\":[[{},{}],[{},{}]],\"a\":0}}",
                l1.p(),
                l1.q(),
                l2.p(),
                l2.q()
            ),
            ManifoldKind::Sfs(fs) => format!(
                "{{\"type\":\"SFS\",\"fibers\":[[{},{}],[{},{}],[{},{}]],\"a\":{},\"b_normalized\":{}}}",
                fs[0].multiplicity(),
                fs[0].b_raw(),
                fs[1].multiplicity(),
                fs[1].b_raw(),
                fs[2].multiplicity(),
                fs[2].b_raw(),
                self.a,
                self.b_normalized.as_ref().expect("SFS has a != 0")
            ),
        }
    }
}

impl fmt::Display for FilledManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ManifoldKind::S3 => write!(f, "S3"),
            ManifoldKind::Lens(l) => write!(f, "{l}"),
            ManifoldKind::ConnSum(l1, l2) => write!(f, "{l1} # {l2}"),
            ManifoldKind::Sfs(fs) => {
                write!(f, "SFS{{S2 | {},{},{}}}", fs[0], fs[1], fs[2])
            }
        }
    }
}
