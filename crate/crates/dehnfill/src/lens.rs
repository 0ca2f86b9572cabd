//! Lens space normal forms and the distinctness tests used for fillings
//! with `|a| ≤ 1`.
//!
//! A lens space `L(p, q)` is stored with the canonical residue `0 ≤ q < p`;
//! `L(1, 0)` is the representative of `S³`. Homeomorphism ignores
//! orientation throughout: `L(p, q₁) ≅ L(p, q₂)` iff `q₂ ≡ ±q₁^{±1} (mod p)`.
//! The unique Heegaard torus of a lens space *flips* (is isotopic to itself
//! with reversed orientation) exactly when the space is homeomorphic to some
//! `L(k, 1)`, i.e. when `q ≡ ±1 (mod p)`.

use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::slope::Int;

/// Errors from lens space construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LensError {
    /// The order `p` must be at least 1.
    NonPositiveOrder,
    /// `p` and `q` must be coprime.
    NotCoprime,
}

impl fmt::Display for LensError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LensError::NonPositiveOrder => write!(f, "lens space order p must be positive"),
            LensError::NotCoprime => write!(f, "lens space parameters must be coprime"),
        }
    }
}

impl core::error::Error for LensError {}

/// A lens space `L(p, q)` in normal form: `p ≥ 1`, `0 ≤ q < p` for `p ≥ 2`,
/// `gcd(p, q) = 1`, and `p = 1` forces `q = 0` (the `S³` representative).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LensSpace {
    p: Int,
    q: Int,
}

impl LensSpace {
    /// Reduces `q` mod `p` and builds the normal form. `p = 1` yields the
    /// `S³` representative; `p ≤ 0` and non-coprime pairs are rejected.
    pub fn normal_form(p: impl Into<Int>, q: impl Into<Int>) -> Result<Self, LensError> {
        let (p, q) = (p.into(), q.into());
        if !p.is_positive() {
            return Err(LensError::NonPositiveOrder);
        }
        let q = q.mod_floor(&p);
        if !p.gcd(&q).is_one() {
            return Err(LensError::NotCoprime);
        }
        Ok(LensSpace { p, q })
    }

    /// Order `p` of the fundamental group.
    pub fn p(&self) -> &Int {
        &self.p
    }

    /// Canonical residue `q`.
    pub fn q(&self) -> &Int {
        &self.q
    }

    /// True for the `S³` representative `L(1, 0)`.
    pub fn is_s3(&self) -> bool {
        self.p.is_one()
    }

    /// Orientation-ignoring homeomorphism: equal `p` and `q₂ ≡ ±q₁^{±1} (mod p)`.
    pub fn homeomorphic(&self, other: &LensSpace) -> bool {
        if self.p != other.p {
            return false;
        }
        if self.is_s3() {
            return true;
        }
        let candidates = residue_and_inverse_signs(&self.q, &self.p);
        candidates.contains(&other.q)
    }

    /// True iff the Heegaard torus flips, i.e. the space is homeomorphic to
    /// `L(k, 1)`: `q ∈ {1, p − 1}`, and vacuously true for `S³`.
    pub fn torus_flips(&self) -> bool {
        if self.is_s3() {
            return true;
        }
        self.q.is_one() || self.q == &self.p - Int::one()
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_s3() {
            write!(f, "S3")
        } else {
            write!(f, "L({},{})", self.p, self.q)
        }
    }
}

/// The residues `{q, −q, q⁻¹, −q⁻¹} mod p`, for `p ≥ 2` and `gcd(p, q) = 1`.
fn residue_and_inverse_signs(q: &Int, p: &Int) -> [Int; 4] {
    let inv = mod_inverse(q, p);
    [
        q.mod_floor(p),
        (-q).mod_floor(p),
        inv.mod_floor(p),
        (-inv).mod_floor(p),
    ]
}

/// Inverse of `q` mod `p`; requires `gcd(p, q) = 1`.
fn mod_inverse(q: &Int, p: &Int) -> Int {
    let egcd = q.extended_gcd(p);
    debug_assert!(egcd.gcd.is_one());
    egcd.x.mod_floor(p)
}

/// Which of the two distinctness exceptions fired, if any. When both hold,
/// the squared-residue exception `A` is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngmannException {
    /// No exception: the four oriented surfaces are distinct up to isotopy.
    None,
    /// `qᵢ² ≡ ±1 (mod pᵢ)` for some summand.
    A,
    /// `p₁ = p₂` and `q₁q₂⁻¹ ≡ ±1 (mod p₁)`.
    B,
}

/// Distinctness outcome for the four oriented Heegaard surfaces of
/// `L(p₁,q₁) # L(p₂,q₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngmannResult {
    /// True when neither exception holds and the four oriented surfaces are
    /// guaranteed distinct up to isotopy.
    pub guaranteed_distinct: bool,
    /// Which exception fired. When an exception holds the count of isotopy
    /// classes is not determined here; the result is a guarantee flag, not
    /// a smaller number.
    pub exception: EngmannException,
}

/// Tests whether the connected sum of two lens spaces is guaranteed to have
/// four distinct oriented Heegaard surfaces up to isotopy.
///
/// `S³` summands trivially trip exception `A` (`0² ≡ ... (mod 1)` makes every
/// residue condition vacuous), matching the degenerate geometry.
pub fn engmann_class_count(l1: &LensSpace, l2: &LensSpace) -> EngmannResult {
    let square_exception = |l: &LensSpace| {
        if l.is_s3() {
            return true;
        }
        let sq = (&l.q * &l.q).mod_floor(&l.p);
        sq.is_one() || sq == &l.p - Int::one()
    };
    if square_exception(l1) || square_exception(l2) {
        return EngmannResult { guaranteed_distinct: false, exception: EngmannException::A };
    }
    if l1.p == l2.p {
        let ratio = (&l1.q * mod_inverse(&l2.q, &l2.p)).mod_floor(&l1.p);
        if ratio.is_one() || ratio == &l1.p - Int::one() {
            return EngmannResult { guaranteed_distinct: false, exception: EngmannException::B };
        }
    }
    EngmannResult { guaranteed_distinct: true, exception: EngmannException::None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec::Vec;

    fn lens(p: i64, q: i64) -> LensSpace {
        LensSpace::normal_form(p, q).unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(lens(5, 9), lens(5, 4));
        assert_eq!(lens(64, 49).q(), &Int::from(49));
        assert!(lens(1, 0).is_s3());
        assert!(lens(1, 7).is_s3());
        assert_eq!(LensSpace::normal_form(0, 1), Err(LensError::NonPositiveOrder));
        assert_eq!(LensSpace::normal_form(6, 3), Err(LensError::NotCoprime));
        assert_eq!(lens(5, -1), lens(5, 4));
    }

    /// Exhaustive ±q^{±1} oracle for the homeomorphism test.
    fn homeomorphic_oracle(a: &LensSpace, b: &LensSpace) -> bool {
        if a.p() != b.p() {
            return false;
        }
        if a.is_s3() {
            return true;
        }
        let p = a.p().clone();
        let mut set = Vec::new();
        // All residues u with u ≡ ±q or u·q ≡ ±1.
        let mut u = Int::from(0);
        while u < p {
            let prod = (&u * a.q()).mod_floor(&p);
            if u == a.q().mod_floor(&p)
                || u == (-a.q()).mod_floor(&p)
                || prod.is_one()
                || prod == &p - Int::one()
            {
                set.push(u.clone());
            }
            u += 1;
        }
        set.contains(b.q())
    }

    #[test]
    fn homeomorphism_examples() {
        assert!(lens(7, 2).homeomorphic(&lens(7, 4))); // 2·4 ≡ 1 (mod 7)
        assert!(lens(7, 2).homeomorphic(&lens(7, 3))); // 3 ≡ 2⁻¹·(−1)... = −4 (mod 7)
        assert!(lens(5, 2).homeomorphic(&lens(5, 3))); // 3 ≡ −2 (mod 5)
        assert!(!lens(7, 2).homeomorphic(&lens(5, 2)));
        assert!(lens(9, 7).homeomorphic(&lens(9, 7)));
        assert!(!lens(64, 49).homeomorphic(&lens(64, 3)));
    }

    #[test]
    fn homeomorphism_matches_oracle_and_is_equivalence() {
        let mut spaces = Vec::new();
        for p in 1i64..=50 {
            for q in 0..p.max(1) {
                if let Ok(l) = LensSpace::normal_form(p, q) {
                    spaces.push(l);
                }
            }
        }
        for a in &spaces {
            assert!(a.homeomorphic(a));
            for b in &spaces {
                let ab = a.homeomorphic(b);
                assert_eq!(ab, homeomorphic_oracle(a, b), "{a} vs {b}");
                assert_eq!(ab, b.homeomorphic(a), "symmetry {a} vs {b}");
            }
        }
        // Transitivity, exhaustively per p.
        for p in 2i64..=30 {
            let per_p: Vec<&LensSpace> = spaces.iter().filter(|l| l.p() == &Int::from(p)).collect();
            for a in &per_p {
                for b in &per_p {
                    for c in &per_p {
                        if a.homeomorphic(b) && b.homeomorphic(c) {
                            assert!(a.homeomorphic(c), "transitivity {a} {b} {c}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn torus_flip_examples() {
        assert!(lens(5, 4).torus_flips());
        assert!(!lens(64, 49).torus_flips());
        assert!(lens(2, 1).torus_flips());
        assert!(lens(1, 0).torus_flips());
        assert!(!lens(7, 3).torus_flips());
    }

    #[test]
    fn torus_flips_iff_homeomorphic_to_lk1() {
        for p in 2i64..=40 {
            for q in 1..p {
                if let Ok(l) = LensSpace::normal_form(p, q) {
                    let lk1 = LensSpace::normal_form(p, 1).unwrap();
                    assert_eq!(l.torus_flips(), l.homeomorphic(&lk1), "{l}");
                }
            }
        }
    }

    #[test]
    fn engmann_examples() {
        let r = engmann_class_count(&lens(9, 7), &lens(7, 9));
        assert!(r.guaranteed_distinct);
        assert_eq!(r.exception, EngmannException::None);

        // 2² = 4 ≡ −1 (mod 5).
        let r = engmann_class_count(&lens(5, 2), &lens(7, 3));
        assert!(!r.guaranteed_distinct);
        assert_eq!(r.exception, EngmannException::A);

        let l = lens(11, 3); // 9 ≢ ±1 (mod 11)
        let r = engmann_class_count(&l, &l);
        assert!(!r.guaranteed_distinct);
        assert_eq!(r.exception, EngmannException::B);
    }

    #[test]
    fn display_forms() {
        assert_eq!(format!("{}", lens(5, 4)), "L(5,4)");
        assert_eq!(format!("{}", lens(1, 0)), "S3");
    }
}
