//! Exact arithmetic on slopes of a boundary torus.
//!
//! A slope is the isotopy class of an essential simple closed curve on a
//! torus. With a fixed meridian/longitude basis, slopes are identified with
//! `Q ∪ {∞}` and written as reduced fractions `r/s`, where `1/0` denotes
//! the meridian of the trivial filling. This module provides:
//!
//! - [`Slope`]: normalized primitive pairs with `s ≥ 0`
//! - [`Slope::delta`]: the geometric intersection number `Δ(α,β) = |r_α s_β − r_β s_α|`
//! - [`Slope::on_line`]: membership in the line `L_α = {β : Δ(α,β) = 1}`
//! - [`Slope::on_line_of_lines`]: membership in `LL_α`, the slopes at Farey
//!   distance at most two from `α`
//! - [`Slope::enumerate_line`]: bounded enumeration of `L_α`
//! - [`Unimodular`]: determinant-`±1` changes of basis
//!
//! All arithmetic is exact and arbitrary precision; there are no overflow or
//! tolerance questions anywhere in this module.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision signed integer used throughout the crate.
pub type Int = BigInt;

/// Errors from slope construction and slope queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlopeError {
    /// `(0, 0)` does not represent a curve.
    ZeroZero,
    /// Line enumeration requires a positive height bound.
    NonPositiveHeight,
    /// The matrix does not have determinant `±1`.
    NotUnimodular,
    /// The text form is not `r/s` with an optional leading minus on `r`.
    Parse(String),
}

impl fmt::Display for SlopeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeError::ZeroZero => write!(f, "(0, 0) is not a slope"),
            SlopeError::NonPositiveHeight => write!(f, "height bound must be positive"),
            SlopeError::NotUnimodular => write!(f, "matrix determinant is not ±1"),
            SlopeError::Parse(s) => write!(f, "cannot parse slope from {s:?}"),
        }
    }
}

impl core::error::Error for SlopeError {}

/// A slope on the boundary torus, stored in lowest terms.
///
/// Invariants, enforced by every constructor:
///
/// - `gcd(|r|, s) = 1`
/// - `s ≥ 0`, and `s = 0` implies `r = 1` (every `k/0` is the slope `∞`)
/// - `(r, s) ≠ (0, 0)`
///
/// Equality is structural, so two `Slope`s are equal exactly when they name
/// the same curve. The `Ord` instance is the canonical enumeration order
/// `(s, |r|, r)` used by [`Slope::enumerate_line`] and witness searches.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    r: Int,
    s: Int,
}

impl Slope {
    /// Builds the normalized slope `r/s`: divides by the gcd and flips both
    /// signs if needed so that `s ≥ 0`, sending every `±k/0` to `1/0`.
    ///
    /// Rejects `(0, 0)`. Idempotent on already-normal pairs.
    pub fn new(r: impl Into<Int>, s: impl Into<Int>) -> Result<Self, SlopeError> {
        let (mut r, mut s) = (r.into(), s.into());
        if r.is_zero() && s.is_zero() {
            return Err(SlopeError::ZeroZero);
        }
        let g = r.gcd(&s);
        r /= &g;
        s /= &g;
        if s.is_negative() || (s.is_zero() && r.is_negative()) {
            r = -r;
            s = -s;
        }
        Ok(Slope { r, s })
    }

    /// The slope `∞ = 1/0`, the meridian of the trivial filling.
    pub fn infinity() -> Self {
        Slope {
            r: Int::one(),
            s: Int::zero(),
        }
    }

    /// Numerator; carries the sign.
    pub fn numerator(&self) -> &Int {
        &self.r
    }

    /// Denominator; always non-negative.
    pub fn denominator(&self) -> &Int {
        &self.s
    }

    /// True for the slope `1/0`.
    pub fn is_infinity(&self) -> bool {
        self.s.is_zero()
    }

    /// Signed intersection number `r_α s_β − r_β s_α`, the determinant of
    /// the coordinate pairs. Antisymmetric.
    pub fn delta_signed(&self, other: &Slope) -> Int {
        &self.r * &other.s - &other.r * &self.s
    }

    /// Geometric intersection number `Δ(α,β) = |r_α s_β − r_β s_α|`.
    ///
    /// Symmetric, zero exactly on equal slopes, and invariant under
    /// simultaneous unimodular changes of basis.
    pub fn delta(&self, other: &Slope) -> Int {
        self.delta_signed(other).abs()
    }

    /// True iff `other` lies on the line `L_self`, i.e. `Δ(self, other) = 1`.
    pub fn on_line(&self, other: &Slope) -> bool {
        self.delta(other).is_one()
    }

    /// All slopes `β ∈ L_self` with `max(|r_β|, s_β) ≤ height`, in the
    /// canonical `(s, |r|, r)` order.
    pub fn enumerate_line(&self, height: &Int) -> Result<Vec<Slope>, SlopeError> {
        if !height.is_positive() {
            return Err(SlopeError::NonPositiveHeight);
        }
        // Solutions of r_α·u − s_α·t = 1 form the family (t0 + k·r_α, u0 + k·s_α);
        // normalization folds the −1 solutions into the same family.
        let egcd = self.r.extended_gcd(&self.s);
        let (t0, u0) = (-egcd.y, egcd.x);
        // Slack bounds on k; out-of-range pairs are filtered below. A
        // normalized slope with s = 0 is 1/0, where the family runs over the
        // numerator instead.
        let bound_on = if self.s.is_zero() { (&t0, &self.r) } else { (&u0, &self.s) };
        let kmin = (-height - bound_on.0).div_floor(bound_on.1);
        let kmax = (height - bound_on.0).div_floor(bound_on.1);
        let mut out = BTreeSet::new();
        let mut k = kmin;
        while k <= kmax {
            let t = &t0 + &k * &self.r;
            let u = &u0 + &k * &self.s;
            if t.abs() <= *height && u.abs() <= *height {
                let beta = Slope::new(t, u).expect("line solutions are primitive");
                debug_assert!(self.on_line(&beta));
                out.insert(beta);
            }
            k += 1;
        }
        Ok(out.into_iter().collect())
    }

    /// True iff `gamma ∈ LL_self`: some `β` meets both `self` and `gamma`
    /// exactly once. Equivalently, `gamma` has Farey distance at most two
    /// from `self`.
    ///
    /// Decided by a change of basis sending `self` to `1/0`, after which
    /// `gamma ↦ c1/c2` qualifies iff `c2 ≤ 1` or `c1 ≡ ±1 (mod c2)`.
    pub fn on_line_of_lines(&self, gamma: &Slope) -> bool {
        let m = Unimodular::basis_to_infinity(self);
        let g = m.apply(gamma);
        if g.s <= Int::one() {
            return true;
        }
        let rem = g.r.mod_floor(&g.s);
        rem.is_one() || rem == &g.s - Int::one()
    }

    /// A slope `β` with `Δ(self, β) = Δ(β, gamma) = 1`, when one exists;
    /// the returned witness is minimal in the canonical `(s, |r|, r)` order.
    pub fn find_ll_witness(&self, gamma: &Slope) -> Option<Slope> {
        let m = Unimodular::basis_to_infinity(self);
        let minv = m.inverse();
        let g = m.apply(gamma);
        // In the new basis L_{1/0} = {b/1}, and b must satisfy |b·c2 − c1| = 1.
        let mut candidates: Vec<Int> = Vec::new();
        if g.s.is_zero() {
            // gamma = self: every b works; scan the window around the value
            // minimizing the pulled-back sort key.
            let (den, num) = if !minv.m[2].is_zero() {
                (minv.m[2].clone(), minv.m[3].clone())
            } else {
                (minv.m[0].clone(), minv.m[1].clone())
            };
            let vertex = (-num).div_floor(&den);
            for off in -1i8..=2 {
                candidates.push(&vertex + Int::from(off));
            }
        } else if g.s.is_one() {
            candidates.push(&g.r - Int::one());
            candidates.push(&g.r + Int::one());
        } else {
            let up = &g.r + Int::one();
            let down = &g.r - Int::one();
            if down.is_multiple_of(&g.s) {
                candidates.push(down / &g.s);
            }
            if up.is_multiple_of(&g.s) {
                candidates.push(up / &g.s);
            }
        }
        candidates
            .into_iter()
            .map(|b| {
                let beta = minv.apply(&Slope { r: b, s: Int::one() });
                debug_assert!(self.on_line(&beta) && gamma.on_line(&beta));
                beta
            })
            .min()
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        self.s
            .cmp(&other.s)
            .then_with(|| self.r.abs().cmp(&other.r.abs()))
            .then_with(|| self.r.cmp(&other.r))
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.r, self.s)
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    /// Parses the text form `r/s`, with an optional leading minus on `r`
    /// only, and normalizes.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let bad = || SlopeError::Parse(String::from(input));
        let (r_text, s_text) = input.split_once('/').ok_or_else(bad)?;
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        let r_ok = digits(r_text.strip_prefix('-').unwrap_or(r_text));
        if !r_ok || !digits(s_text) {
            return Err(bad());
        }
        let r: Int = r_text.parse().map_err(|_| bad())?;
        let s: Int = s_text.parse().map_err(|_| bad())?;
        Slope::new(r, s)
    }
}

/// A `2×2` integer matrix with determinant `±1`, acting on slopes as a
/// change of basis of the boundary torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unimodular {
    /// Row-major entries `[m11, m12, m21, m22]`.
    m: [Int; 4],
}

impl Unimodular {
    /// Builds the matrix `[[m11, m12], [m21, m22]]`, rejecting determinants
    /// other than `±1`.
    pub fn new(
        m11: impl Into<Int>,
        m12: impl Into<Int>,
        m21: impl Into<Int>,
        m22: impl Into<Int>,
    ) -> Result<Self, SlopeError> {
        let m = [m11.into(), m12.into(), m21.into(), m22.into()];
        let det = &m[0] * &m[3] - &m[1] * &m[2];
        if det.abs().is_one() {
            Ok(Unimodular { m })
        } else {
            Err(SlopeError::NotUnimodular)
        }
    }

    /// The identity matrix.
    pub fn identity() -> Self {
        Unimodular {
            m: [Int::one(), Int::zero(), Int::zero(), Int::one()],
        }
    }

    /// A determinant `+1` matrix sending `alpha` to `1/0`, built from an
    /// extended-gcd solution of `x·r + y·s = 1`.
    pub fn basis_to_infinity(alpha: &Slope) -> Self {
        let egcd = alpha.r.extended_gcd(&alpha.s);
        Unimodular {
            m: [egcd.x, egcd.y, -alpha.s.clone(), alpha.r.clone()],
        }
    }

    /// Determinant, always `+1` or `−1`.
    pub fn det(&self) -> Int {
        &self.m[0] * &self.m[3] - &self.m[1] * &self.m[2]
    }

    /// The inverse matrix, again unimodular.
    pub fn inverse(&self) -> Self {
        let d = self.det();
        Unimodular {
            m: [
                &self.m[3] * &d,
                -(&self.m[1] * &d),
                -(&self.m[2] * &d),
                &self.m[0] * &d,
            ],
        }
    }

    /// Applies the matrix to a slope and normalizes the image:
    /// `(r, s) ↦ (m11·r + m12·s, m21·r + m22·s)`.
    pub fn apply(&self, alpha: &Slope) -> Slope {
        let r = &self.m[0] * &alpha.r + &self.m[1] * &alpha.s;
        let s = &self.m[2] * &alpha.r + &self.m[3] * &alpha.s;
        Slope::new(r, s).expect("unimodular images of slopes are nonzero")
    }
}
