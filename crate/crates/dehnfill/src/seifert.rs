//! Seifert invariants of exceptional fibers and the partition calculus for
//! oriented vertical Heegaard splittings.
//!
//! An oriented vertical splitting of a Seifert fibered space over `S²` is
//! identified by an ordered partition of the exceptional fibers into two
//! non-empty sides; the first side belongs to the first compression body.
//! A fiber with invariants `(a, b)` can be *flipped* from one side of the
//! partition to the other exactly when `b ≡ ±1 (mod a)`, and such flips are
//! the only way distinct vertical splittings become isotopic. The orbits of
//! the flip moves therefore enumerate vertical splittings up to isotopy.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::slope::Int;

/// Fiber label, e.g. `"f_i"`, `"f_o"`, `"f_new"`.
pub type Label = String;

/// Errors from fiber and partition construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeifertError {
    /// An exceptional fiber needs multiplicity `|a| ≥ 2`.
    MultiplicityTooSmall,
    /// Residues mod `a` are undefined for `a = 0`.
    ZeroMultiplicity,
    /// Both sides of an oriented partition must be non-empty and disjoint.
    InvalidPartition,
    /// Partition enumeration needs at least two labels.
    TooFewLabels,
}

impl fmt::Display for SeifertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeifertError::MultiplicityTooSmall => write!(f, "fiber multiplicity |a| must be at least 2"),
            SeifertError::ZeroMultiplicity => write!(f, "residue mod a is undefined for a = 0"),
            SeifertError::InvalidPartition => {
                write!(f, "partition sides must be disjoint and non-empty")
            }
            SeifertError::TooFewLabels => write!(f, "need at least two labels to partition"),
        }
    }
}

impl core::error::Error for SeifertError {}

/// An exceptional fiber with unnormalized Seifert invariants `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalFiber {
    a: Int,
    b: Int,
    label: Label,
}

impl ExceptionalFiber {
    /// Builds a fiber, rejecting multiplicities with `|a| < 2`.
    pub fn new(a: impl Into<Int>, b: impl Into<Int>, label: impl Into<Label>) -> Result<Self, SeifertError> {
        let a = a.into();
        if a.abs() < Int::from(2) {
            return Err(SeifertError::MultiplicityTooSmall);
        }
        Ok(ExceptionalFiber { a, b: b.into(), label: label.into() })
    }

    /// Multiplicity `a`.
    pub fn multiplicity(&self) -> &Int {
        &self.a
    }

    /// Unnormalized second invariant `b`.
    pub fn b_raw(&self) -> &Int {
        &self.b
    }

    /// Canonical residue `b mod |a|` in `[0, |a|)`.
    pub fn b_normalized(&self) -> Int {
        normalize_b(&self.a, &self.b).expect("|a| >= 2")
    }

    /// The fiber's label.
    pub fn label(&self) -> &Label {
        &self.label
    }

    /// True iff the fiber can be flipped across a vertical splitting, i.e.
    /// `b ≡ ±1 (mod |a|)`.
    pub fn flippable(&self) -> bool {
        fiber_flippable(&self.a, &self.b).expect("|a| >= 2")
    }
}

impl fmt::Display for ExceptionalFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// True iff a fiber with invariants `(a, b)` flips: `b ≡ ±1 (mod |a|)`.
///
/// Rejects `|a| < 2`.
pub fn fiber_flippable(a: &Int, b: &Int) -> Result<bool, SeifertError> {
    let m = a.abs();
    if m < Int::from(2) {
        return Err(SeifertError::MultiplicityTooSmall);
    }
    let rem = b.mod_floor(&m);
    Ok(rem.is_one() || rem == &m - Int::one())
}

/// Canonical residue `b mod |a|` in `[0, |a|)`.
///
/// Changing the chosen longitude shifts `b` by multiples of `a`, so the
/// residue is the basis-free invariant. Rejects `a = 0`.
pub fn normalize_b(a: &Int, b: &Int) -> Result<Int, SeifertError> {
    if a.is_zero() {
        return Err(SeifertError::ZeroMultiplicity);
    }
    Ok(b.mod_floor(&a.abs()))
}

/// An ordered partition of fiber labels into two non-empty sides.
///
/// The first side is the first compression body, which fixes the sign of
/// the corresponding oriented splitting; swapping the sides reverses the
/// orientation. Prints as `{f_i,f_new || f_o}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedPartition {
    side1: BTreeSet<Label>,
    side2: BTreeSet<Label>,
}

impl OrientedPartition {
    /// Builds a partition; the sides must be disjoint and non-empty.
    pub fn new(side1: BTreeSet<Label>, side2: BTreeSet<Label>) -> Result<Self, SeifertError> {
        if side1.is_empty() || side2.is_empty() || !side1.is_disjoint(&side2) {
            return Err(SeifertError::InvalidPartition);
        }
        Ok(OrientedPartition { side1, side2 })
    }

    /// Labels on the first (positive) side.
    pub fn side1(&self) -> &BTreeSet<Label> {
        &self.side1
    }

    /// Labels on the second side.
    pub fn side2(&self) -> &BTreeSet<Label> {
        &self.side2
    }

    /// All labels, both sides.
    pub fn universe(&self) -> BTreeSet<Label> {
        self.side1.union(&self.side2).cloned().collect()
    }

    /// The partition with the two sides swapped: the same splitting with
    /// reversed orientation.
    pub fn reversed(&self) -> Self {
        OrientedPartition { side1: self.side2.clone(), side2: self.side1.clone() }
    }
}

impl fmt::Display for OrientedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |side: &BTreeSet<Label>| {
            let mut out = String::new();
            for (i, l) in side.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(l);
            }
            out
        };
        write!(f, "{{{} || {}}}", join(&self.side1), join(&self.side2))
    }
}

/// Canonical enumeration position: bitmask of side-1 members over the
/// sorted label universe.
fn partition_mask(p: &OrientedPartition, universe: &[Label]) -> u64 {
    let mut mask = 0u64;
    for (i, l) in universe.iter().enumerate() {
        if p.side1.contains(l) {
            mask |= 1 << i;
        }
    }
    mask
}

/// All ordered partitions of `labels` into two non-empty sides, in the
/// canonical order. There are `2^n − 2` of them; a partition and its
/// reversal are distinct because orientation matters.
pub fn enumerate_oriented_partitions(labels: &BTreeSet<Label>) -> Result<Vec<OrientedPartition>, SeifertError> {
    let n = labels.len();
    if n < 2 {
        return Err(SeifertError::TooFewLabels);
    }
    assert!(n <= 62, "label sets this large are not supported");
    let universe: Vec<Label> = labels.iter().cloned().collect();
    let mut out = Vec::with_capacity((1usize << n) - 2);
    for mask in 1u64..((1 << n) - 1) {
        let mut side1 = BTreeSet::new();
        let mut side2 = BTreeSet::new();
        for (i, l) in universe.iter().enumerate() {
            if mask & (1 << i) != 0 {
                side1.insert(l.clone());
            } else {
                side2.insert(l.clone());
            }
        }
        out.push(OrientedPartition { side1, side2 });
    }
    Ok(out)
}

/// The partitions reachable from `p` by one legal flip: each flippable
/// fiber moves to the other side, but only when both sides stay non-empty.
///
/// Labels missing from `flippable` are treated as not flippable. The result
/// is deduplicated and returned in canonical order.
pub fn flip_moves(p: &OrientedPartition, flippable: &BTreeMap<Label, bool>) -> Vec<OrientedPartition> {
    let universe: Vec<Label> = p.universe().into_iter().collect();
    let mut seen = BTreeSet::new();
    for label in &universe {
        if !flippable.get(label).copied().unwrap_or(false) {
            continue;
        }
        let mut side1 = p.side1.clone();
        let mut side2 = p.side2.clone();
        if side1.contains(label) {
            side1.remove(label);
            side2.insert(label.clone());
        } else {
            side2.remove(label);
            side1.insert(label.clone());
        }
        if side1.is_empty() || side2.is_empty() {
            continue;
        }
        seen.insert(OrientedPartition { side1, side2 });
    }
    let mut out: Vec<OrientedPartition> = seen.into_iter().collect();
    out.sort_by_key(|q| partition_mask(q, &universe));
    out
}

/// Isotopy classes of oriented vertical splittings: the orbits of the
/// partitions of `labels` under [`flip_moves`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotopyClasses {
    classes: Vec<Vec<OrientedPartition>>,
}

impl IsotopyClasses {
    /// The orbits. Each orbit is sorted canonically; orbits are ordered by
    /// their least member, so `classes[i][0]` is the representative.
    pub fn classes(&self) -> &[Vec<OrientedPartition>] {
        &self.classes
    }

    /// Number of isotopy classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    /// True when there are no classes (empty label set edge case never
    /// produces this; kept for iterator hygiene).
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The orbit containing `p`, if `p` belongs to the enumerated universe.
    pub fn class_of(&self, p: &OrientedPartition) -> Option<&[OrientedPartition]> {
        self.classes.iter().find(|c| c.contains(p)).map(|c| c.as_slice())
    }

    /// True when the orbit of `p` also contains its reversal, i.e. the
    /// corresponding oriented surface flips.
    pub fn class_flips(&self, p: &OrientedPartition) -> Option<bool> {
        self.class_of(p).map(|c| c.contains(&p.reversed()))
    }
}

/// Computes the isotopy classes by breadth-first traversal of the flip-move
/// graph on all `2^n − 2` oriented partitions of `labels`.
pub fn isotopy_classes(
    labels: &BTreeSet<Label>,
    flippable: &BTreeMap<Label, bool>,
) -> Result<IsotopyClasses, SeifertError> {
    let all = enumerate_oriented_partitions(labels)?;
    let universe: Vec<Label> = labels.iter().cloned().collect();
    let mut unvisited: BTreeSet<OrientedPartition> = all.iter().cloned().collect();
    let mut classes = Vec::new();
    for start in &all {
        if !unvisited.remove(start) {
            continue;
        }
        let mut orbit = alloc::vec![start.clone()];
        let mut queue = alloc::vec![start.clone()];
        while let Some(p) = queue.pop() {
            for q in flip_moves(&p, flippable) {
                if unvisited.remove(&q) {
                    orbit.push(q.clone());
                    queue.push(q);
                }
            }
        }
        orbit.sort_by_key(|q| partition_mask(q, &universe));
        classes.push(orbit);
    }
    classes.sort_by_key(|c| partition_mask(&c[0], &universe));
    Ok(IsotopyClasses { classes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> BTreeSet<Label> {
        names.iter().map(|s| String::from(*s)).collect()
    }

    fn part(side1: &[&str], side2: &[&str]) -> OrientedPartition {
        OrientedPartition::new(labels(side1), labels(side2)).unwrap()
    }

    fn flippable_map(entries: &[(&str, bool)]) -> BTreeMap<Label, bool> {
        entries.iter().map(|&(l, b)| (String::from(l), b)).collect()
    }

    #[test]
    fn flippable_examples() {
        assert!(fiber_flippable(&Int::from(62), &Int::from(63)).unwrap());
        assert!(!fiber_flippable(&Int::from(121), &Int::from(61)).unwrap());
        assert!(fiber_flippable(&Int::from(2), &Int::from(1)).unwrap());
        assert!(fiber_flippable(&Int::from(5), &Int::from(-1)).unwrap());
        assert_eq!(
            fiber_flippable(&Int::from(1), &Int::from(0)),
            Err(SeifertError::MultiplicityTooSmall)
        );
    }

    #[test]
    fn normalize_b_examples() {
        assert_eq!(normalize_b(&Int::from(62), &Int::from(63)).unwrap(), Int::from(1));
        assert_eq!(normalize_b(&Int::from(121), &Int::from(61)).unwrap(), Int::from(61));
        assert_eq!(normalize_b(&Int::from(9), &Int::from(0)).unwrap(), Int::from(0));
        assert_eq!(normalize_b(&Int::from(-7), &Int::from(-1)).unwrap(), Int::from(6));
        assert_eq!(normalize_b(&Int::from(0), &Int::from(3)), Err(SeifertError::ZeroMultiplicity));
    }

    #[test]
    fn fiber_construction() {
        let f = ExceptionalFiber::new(62, 63, "f_new").unwrap();
        assert_eq!(f.b_normalized(), Int::from(1));
        assert!(f.flippable());
        assert_eq!(ExceptionalFiber::new(1, 5, "x"), Err(SeifertError::MultiplicityTooSmall));
    }

    #[test]
    fn enumerate_three_labels() {
        let ps = enumerate_oriented_partitions(&labels(&["1", "2", "3"])).unwrap();
        assert_eq!(ps.len(), 6);
        assert!(ps.contains(&part(&["1"], &["2", "3"])));
        assert!(ps.contains(&part(&["2", "3"], &["1"])));
        let two = enumerate_oriented_partitions(&labels(&["a", "b"])).unwrap();
        assert_eq!(two.len(), 2);
        assert!(enumerate_oriented_partitions(&labels(&["a"])).is_err());
    }

    #[test]
    fn flip_move_examples() {
        // Flipping f_new carries {f_i,f_new || f_o} to {f_i || f_new,f_o}.
        let p = part(&["f_i", "f_new"], &["f_o"]);
        let only_new = flippable_map(&[("f_new", true)]);
        assert_eq!(flip_moves(&p, &only_new), alloc::vec![part(&["f_i"], &["f_new", "f_o"])]);

        // A move that would empty a side is illegal.
        let q = part(&["f_new"], &["f_i", "f_o"]);
        assert!(flip_moves(&q, &only_new).is_empty());

        // Nothing flippable, nothing moves.
        let none = flippable_map(&[]);
        assert!(flip_moves(&p, &none).is_empty());
    }

    #[test]
    fn flip_moves_symmetric() {
        let ls = labels(&["f_i", "f_new", "f_o"]);
        for bits in 0u8..8 {
            let flip = flippable_map(&[
                ("f_i", bits & 1 != 0),
                ("f_new", bits & 2 != 0),
                ("f_o", bits & 4 != 0),
            ]);
            for p in enumerate_oriented_partitions(&ls).unwrap() {
                for q in flip_moves(&p, &flip) {
                    assert!(flip_moves(&q, &flip).contains(&p), "asymmetric move {p} -> {q}");
                }
            }
        }
    }

    #[test]
    fn orbit_counts() {
        let ls = labels(&["f_i", "f_new", "f_o"]);
        let none = flippable_map(&[]);
        assert_eq!(isotopy_classes(&ls, &none).unwrap().len(), 6);

        let only_new = flippable_map(&[("f_new", true)]);
        let classes = isotopy_classes(&ls, &only_new).unwrap();
        assert_eq!(classes.len(), 4);
        // The merged pairs are {Σ_i^+, Σ_o^-} and {Σ_i^-, Σ_o^+}; the middle
        // splittings stay alone.
        let inner_plus = part(&["f_i", "f_new"], &["f_o"]);
        let outer_minus = part(&["f_i"], &["f_new", "f_o"]);
        assert_eq!(classes.class_of(&inner_plus).unwrap().len(), 2);
        assert!(classes.class_of(&inner_plus).unwrap().contains(&outer_minus));
        let middle_plus = part(&["f_new"], &["f_i", "f_o"]);
        assert_eq!(classes.class_of(&middle_plus).unwrap().len(), 1);
        assert_eq!(classes.class_flips(&inner_plus), Some(false));

        let all = flippable_map(&[("f_i", true), ("f_new", true), ("f_o", true)]);
        assert_eq!(isotopy_classes(&ls, &all).unwrap().len(), 1);
    }

    #[test]
    fn orbits_partition_everything() {
        let ls = labels(&["f_i", "f_new", "f_o"]);
        for bits in 0u8..8 {
            let flip = flippable_map(&[
                ("f_i", bits & 1 != 0),
                ("f_new", bits & 2 != 0),
                ("f_o", bits & 4 != 0),
            ]);
            let classes = isotopy_classes(&ls, &flip).unwrap();
            let mut seen = BTreeSet::new();
            for c in classes.classes() {
                for p in c {
                    assert!(seen.insert(p.clone()), "orbits overlap");
                }
            }
            assert_eq!(seen.len(), 6);

            // Reversal equivariance: reversing all partitions maps orbits to
            // orbits.
            for c in classes.classes() {
                let rev: BTreeSet<OrientedPartition> = c.iter().map(|p| p.reversed()).collect();
                let target: BTreeSet<OrientedPartition> =
                    classes.class_of(&c[0].reversed()).unwrap().iter().cloned().collect();
                assert_eq!(rev, target);
            }
        }
    }

    #[test]
    fn partition_display() {
        let p = part(&["f_i", "f_new"], &["f_o"]);
        assert_eq!(alloc::format!("{p}"), "{f_i,f_new || f_o}");
    }
}
