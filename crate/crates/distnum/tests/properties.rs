//! Property-based checks: permutation algebra, an independent brute-force
//! oracle for the solver, monotonicity, fixed-point immunity, relabeling
//! invariance, and the orbit-size law for coset actions.

use proptest::prelude::*;

use distnum::constructions::{symmetric_natural, with_fixed_points};
use distnum::distinguishing::{distinguishing_number, is_distinguishing};
use distnum::group::PermGroup;
use distnum::perm::Permutation;

fn shuffled_images(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    shuffled_images(n).prop_map(|v| Permutation::from_images(v).unwrap())
}

/// A small group generated by two random permutations.
fn arb_group(n: usize) -> impl Strategy<Value = PermGroup> {
    (arb_perm(n), arb_perm(n))
        .prop_map(move |(a, b)| PermGroup::generate(n, vec![a, b]).unwrap())
}

/// Exact distinguishing number by full labeling enumeration; the
/// independent oracle for the backtracking solver.
fn brute_force_d(g: &PermGroup) -> u32 {
    let n = g.degree();
    for d in 1..=(n as u32) {
        let total = (d as u64).pow(n as u32);
        for code in 0..total {
            let mut x = code;
            let mut labels = vec![0u32; n];
            for l in labels.iter_mut() {
                *l = (x % d as u64) as u32 + 1;
                x /= d as u64;
            }
            if is_distinguishing(g, &labels).unwrap() {
                return d;
            }
        }
    }
    unreachable!("all-distinct labels distinguish");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative((a, b, c) in (arb_perm(7), arb_perm(7), arb_perm(7))) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
    }

    #[test]
    fn inverse_cancels(a in arb_perm(7)) {
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert!(a.inverse().then(&a).is_identity());
    }

    #[test]
    fn display_parse_round_trip(a in arb_perm(8)) {
        let text = a.to_string();
        prop_assert_eq!(Permutation::parse(&text, 8).unwrap(), a);
    }

    #[test]
    fn parity_is_a_homomorphism((a, b) in (arb_perm(6), arb_perm(6))) {
        prop_assert_eq!(a.then(&b).is_even(), a.is_even() == b.is_even());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_matches_brute_force_oracle(g in arb_group(5)) {
        let res = distinguishing_number(&g, None).unwrap();
        prop_assert!(is_distinguishing(&g, &res.witness).unwrap());
        prop_assert_eq!(res.d, brute_force_d(&g));
    }

    #[test]
    fn subgroups_never_need_more_labels(g in arb_group(6)) {
        let d = distinguishing_number(&g, None).unwrap().d;
        let stab = g.point_stabilizer(0);
        prop_assert!(distinguishing_number(stab.group(), None).unwrap().d <= d);
        let sq = g.squares_subgroup();
        prop_assert!(distinguishing_number(sq.group(), None).unwrap().d <= d);
    }

    #[test]
    fn fixed_points_do_not_change_d((g, t) in (arb_group(6), 1usize..=3)) {
        let d = distinguishing_number(&g, None).unwrap().d;
        let ext = with_fixed_points(&g, t).unwrap();
        prop_assert_eq!(distinguishing_number(&ext, None).unwrap().d, d);
    }

    #[test]
    fn relabeling_points_preserves_d((g, pi) in (arb_group(6), arb_perm(6))) {
        let d = distinguishing_number(&g, None).unwrap().d;
        let conj = g.conjugate_by(&pi).unwrap();
        prop_assert_eq!(distinguishing_number(&conj, None).unwrap().d, d);
    }

    #[test]
    fn group_text_round_trip(g in arb_group(6)) {
        let parsed = PermGroup::parse_text(&g.to_text()).unwrap();
        prop_assert_eq!(parsed.elements(), g.elements());
    }

    #[test]
    fn kernels_are_normal(g in arb_group(6)) {
        for orbit in g.orbits() {
            prop_assert!(g.kernel_on_subset(&orbit).unwrap().is_normal());
        }
    }
}

/// For n = 5, 6, 7 the faithful transitive actions on fewer than C(n,2)
/// points come from point stabilizers and their even halves: degrees n and
/// 2n exactly.
#[test]
fn orbit_size_law_for_coset_actions() {
    for n in [5usize, 6, 7] {
        let sn = symmetric_natural(n).unwrap();
        let point_stab = PermGroup::from_elements(
            n,
            sn.elements()
                .iter()
                .filter(|e| e.apply(n - 1) == n - 1)
                .cloned()
                .collect(),
        )
        .unwrap();
        let even_stab = PermGroup::from_elements(
            n,
            point_stab
                .elements()
                .iter()
                .filter(|e| e.is_even())
                .cloned()
                .collect(),
        )
        .unwrap();
        for (h, expected_degree) in [(point_stab, n), (even_stab, 2 * n)] {
            let (img, ker) = distnum::constructions::coset_action(&sn, &h).unwrap();
            assert_eq!(img.degree(), expected_degree);
            assert!(img.is_transitive());
            assert_eq!(ker.order(), 1);
            assert_eq!(img.order(), sn.order());
        }
    }
}

/// A large orbit (size >= C(n,2)) admits a regular set, so D = 2 there.
#[test]
fn large_coset_action_has_regular_set() {
    let s7 = symmetric_natural(7).unwrap();
    let h = PermGroup::from_elements(
        7,
        s7.elements()
            .iter()
            .filter(|e| e.apply(5) == 5 && e.apply(6) == 6)
            .cloned()
            .collect(),
    )
    .unwrap();
    let (img, _) = distnum::constructions::coset_action(&s7, &h).unwrap();
    assert_eq!(img.degree(), 42);
    let set = distnum::distinguishing::regular_set(&img, None)
        .unwrap()
        .expect("large orbits admit regular sets");
    assert_eq!(img.setwise_stabilizer(&set).order(), 1);
}
