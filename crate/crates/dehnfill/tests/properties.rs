//! Property tests: algebraic invariants checked against brute-force
//! oracles on randomly sampled inputs.

use std::collections::BTreeSet;

use proptest::prelude::*;

use dehnfill::lens::LensSpace;
use dehnfill::seifert::{self, Label, OrientedPartition};
use dehnfill::slope::{Int, Slope, Unimodular};
use num_traits::Signed;
use dehnfill::torus_knot::{longitude_pair, TorusKnot};

fn slope_strategy() -> impl Strategy<Value = Slope> {
    (-60i64..=60, 0i64..=40)
        .prop_filter_map("nonzero pair", |(r, s)| Slope::new(r, s).ok())
}

/// A random unimodular matrix as a word in the shear and rotation
/// generators, so the determinant is ±1 by construction.
fn unimodular_strategy() -> impl Strategy<Value = Unimodular> {
    proptest::collection::vec((-4i64..=4, proptest::bool::ANY), 0..6).prop_map(|word| {
        let mut m = [Int::from(1), Int::from(0), Int::from(0), Int::from(1)];
        for (shear, rotate) in word {
            // Right-multiply by [[1, shear], [0, 1]].
            m = [
                m[0].clone(),
                &m[0] * shear + &m[1],
                m[2].clone(),
                &m[2] * shear + &m[3],
            ];
            if rotate {
                // Right-multiply by [[0, -1], [1, 0]].
                m = [m[1].clone(), -m[0].clone(), m[3].clone(), -m[2].clone()];
            }
        }
        Unimodular::new(m[0].clone(), m[1].clone(), m[2].clone(), m[3].clone())
            .expect("generator words are unimodular")
    })
}

proptest! {
    #[test]
    fn delta_is_symmetric_and_signed_antisymmetric(a in slope_strategy(), b in slope_strategy()) {
        prop_assert_eq!(a.delta(&b), b.delta(&a));
        prop_assert_eq!(a.delta_signed(&b), -b.delta_signed(&a));
        prop_assert_eq!(a.delta(&b) == Int::from(0), a == b);
    }

    #[test]
    fn delta_is_unimodular_invariant(
        a in slope_strategy(),
        b in slope_strategy(),
        m in unimodular_strategy(),
    ) {
        prop_assert_eq!(m.apply(&a).delta(&m.apply(&b)), a.delta(&b));
    }

    #[test]
    fn normalization_is_idempotent_and_round_trips(a in slope_strategy()) {
        let renorm = Slope::new(a.numerator().clone(), a.denominator().clone()).unwrap();
        prop_assert_eq!(&renorm, &a);
        let parsed: Slope = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn line_and_self_lie_on_line_of_lines(a in slope_strategy(), b in slope_strategy()) {
        prop_assert!(a.on_line_of_lines(&a));
        if a.on_line(&b) {
            prop_assert!(a.on_line_of_lines(&b));
            prop_assert!(b.on_line_of_lines(&a));
        }
    }

    #[test]
    fn enumerate_line_matches_exhaustive_scan(a in slope_strategy(), h in 1i64..=15) {
        let got = a.enumerate_line(&Int::from(h)).unwrap();
        let mut scan = Vec::new();
        for s in 0..=h {
            for r in -h..=h {
                if let Ok(beta) = Slope::new(r, s) {
                    if a.on_line(&beta)
                        && beta.numerator().clone().abs() <= Int::from(h)
                        && !scan.contains(&beta)
                    {
                        scan.push(beta);
                    }
                }
            }
        }
        scan.sort();
        prop_assert_eq!(got, scan);
    }
}

/// Brute-force LL membership: scan every candidate witness with entries
/// bounded by 500, using plain machine integers.
fn ll_by_witness_search(alpha: &Slope, gamma: &Slope) -> bool {
    let to_i64 = |x: &Int| i64::try_from(x).expect("test slopes are small");
    let (ar, as_) = (to_i64(alpha.numerator()), to_i64(alpha.denominator()));
    let (gr, gs) = (to_i64(gamma.numerator()), to_i64(gamma.denominator()));
    const BOUND: i64 = 500;
    for bs in 0..=BOUND {
        for br in -BOUND..=BOUND {
            if (ar * bs - br * as_).abs() == 1 && (br * gs - gr * bs).abs() == 1 {
                return true;
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn line_of_lines_agrees_with_witness_search(
        (ar, as_) in (-50i64..=50, 0i64..=50),
        (gr, gs) in (-50i64..=50, 0i64..=50),
    ) {
        let (Ok(alpha), Ok(gamma)) = (Slope::new(ar, as_), Slope::new(gr, gs)) else {
            return Ok(());
        };
        let fast = alpha.on_line_of_lines(&gamma);
        let brute = ll_by_witness_search(&alpha, &gamma);
        prop_assert_eq!(fast, brute, "alpha = {}, gamma = {}", alpha, gamma);
        if fast {
            let witness = alpha.find_ll_witness(&gamma).expect("member has a witness");
            prop_assert!(alpha.on_line(&witness) && gamma.on_line(&witness));
        } else {
            prop_assert_eq!(alpha.find_ll_witness(&gamma), None);
        }
    }
}

proptest! {
    #[test]
    fn longitude_solves_the_determinant_equation(a in slope_strategy()) {
        let (t, u) = longitude_pair(&a);
        prop_assert_eq!(a.numerator() * &u - &t * a.denominator(), Int::from(1));
    }

    #[test]
    fn moser_b_residue_is_longitude_independent(
        p in 2i64..=40,
        q in 2i64..=40,
        a in slope_strategy(),
        k in -5i64..=5,
    ) {
        let Ok(knot) = TorusKnot::new(p, q) else { return Ok(()) };
        let moser_a = knot.moser_a(&a);
        if moser_a == Int::from(0) {
            return Ok(());
        }
        let (t, u) = longitude_pair(&a);
        let pq = knot.p() * knot.q();
        let b1 = dehnfill::seifert::normalize_b(&moser_a, &(&pq * &u - &t)).unwrap();
        let t2 = &t + Int::from(k) * a.numerator();
        let u2 = &u + Int::from(k) * a.denominator();
        let b2 = dehnfill::seifert::normalize_b(&moser_a, &(&pq * &u2 - &t2)).unwrap();
        prop_assert_eq!(b1, b2);
    }

    #[test]
    fn moser_remark_equivalences(p in 2i64..=40, q in 2i64..=40, alpha in slope_strategy()) {
        let Ok(knot) = TorusKnot::new(p, q) else { return Ok(()) };
        let a = knot.moser_a(&alpha);
        let fiber = knot.fiber_slope();
        prop_assert_eq!(a == Int::from(0), alpha == fiber);
        prop_assert_eq!(a.clone().abs() == Int::from(1), fiber.delta(&alpha) == Int::from(1));
    }
}

/// Independent orbit oracle: union-find over explicitly listed flip moves,
/// with partitions encoded as side-1 bitmasks over the sorted labels.
fn orbits_by_union_find(n_labels: usize, flippable_bits: u32) -> Vec<BTreeSet<u32>> {
    let full = (1u32 << n_labels) - 1;
    let masks: Vec<u32> = (1..full).collect();
    let mut parent: Vec<usize> = (0..masks.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (idx, &mask) in masks.iter().enumerate() {
        for bit in 0..n_labels {
            if flippable_bits & (1 << bit) == 0 {
                continue;
            }
            let moved = mask ^ (1 << bit);
            if moved == 0 || moved == full {
                continue;
            }
            let j = masks.iter().position(|&m| m == moved).unwrap();
            let (ri, rj) = (find(&mut parent, idx), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
            }
        }
    }
    let mut orbits: std::collections::BTreeMap<usize, BTreeSet<u32>> = Default::default();
    for (idx, &mask) in masks.iter().enumerate() {
        orbits.entry(find(&mut parent, idx)).or_default().insert(mask);
    }
    orbits.into_values().collect()
}

fn partition_to_mask(p: &OrientedPartition, universe: &[Label]) -> u32 {
    let mut mask = 0;
    for (i, l) in universe.iter().enumerate() {
        if p.side1().contains(l) {
            mask |= 1 << i;
        }
    }
    mask
}

proptest! {
    /// Four labels exercise the partition calculus beyond the three-fiber
    /// case the closed manifolds need.
    #[test]
    fn isotopy_classes_match_union_find_on_four_labels(flippable_bits in 0u32..16) {
        let names = ["a", "b", "c", "d"];
        let labels: std::collections::BTreeSet<Label> =
            names.iter().map(|s| Label::from(*s)).collect();
        let universe: Vec<Label> = labels.iter().cloned().collect();
        let flippable = universe
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), flippable_bits & (1 << i) != 0))
            .collect();
        let got: BTreeSet<BTreeSet<u32>> = seifert::isotopy_classes(&labels, &flippable)
            .unwrap()
            .classes()
            .iter()
            .map(|orbit| orbit.iter().map(|p| partition_to_mask(p, &universe)).collect())
            .collect();
        let want: BTreeSet<BTreeSet<u32>> =
            orbits_by_union_find(4, flippable_bits).into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn lens_homeomorphism_is_an_equivalence(p in 1i64..=80, q1 in 0i64..=79, q2 in 0i64..=79) {
        let (Ok(a), Ok(b)) = (LensSpace::normal_form(p, q1), LensSpace::normal_form(p, q2)) else {
            return Ok(());
        };
        prop_assert!(a.homeomorphic(&a));
        prop_assert_eq!(a.homeomorphic(&b), b.homeomorphic(&a));
        let lk1 = LensSpace::normal_form(p, 1).unwrap();
        prop_assert_eq!(a.torus_flips(), a.homeomorphic(&lk1));
    }
}
