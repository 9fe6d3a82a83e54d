use holo_core::omega::*;
use proptest::prelude::*;

/// Independent oracle for the bad set of smooth reconstruction: some sub-word
/// of `omega` resolves to a pattern containing `(4)` or `(3,3)` as a sub-word.
fn hits_forbidden_germ(omega: &Pattern) -> bool {
    fn is_subsequence(needle: &[u32], hay: &[u32]) -> bool {
        let mut it = hay.iter();
        needle.iter().all(|x| it.any(|y| y == x))
    }
    let entries = omega.entries();
    let q = entries.len();
    let forbidden: [&[u32]; 2] = [&[4], &[3, 3]];
    for mask in 1u32..(1 << q) {
        let sub: Vec<u32> = (0..q).filter(|i| mask & (1 << i) != 0).map(|i| entries[i]).collect();
        let sub_norm: u32 = sub.iter().sum();
        for target in patterns_up_to_norm(sub_norm) {
            if resolves_to(&sub, target.entries()) && forbidden.iter().any(|f| is_subsequence(f, target.entries())) {
                return true;
            }
        }
    }
    false
}

#[test]
fn decompose_succeeds_iff_even_odd_count() {
    for omega in patterns_up_to_norm(10) {
        let even = omega.odd_count() % 2 == 0;
        match decompose(&omega) {
            Ok(d) => {
                assert!(even, "{omega}");
                assert_eq!(d.flatten(), omega.entries());
                for part in &d.parts {
                    match part.kind {
                        PartKind::Atom => {
                            assert_eq!(part.len(), 1);
                            assert_eq!(part.entries[0] % 2, 0);
                        }
                        PartKind::String => {
                            let e = &part.entries;
                            assert!(e.len() >= 2);
                            assert_eq!(e[0] % 2, 1);
                            assert_eq!(e[e.len() - 1] % 2, 1);
                            assert!(e[1..e.len() - 1].iter().all(|m| m % 2 == 0));
                        }
                    }
                }
            }
            Err(OmegaError::OddParity(_)) => assert!(!even, "{omega}"),
            Err(e) => panic!("unexpected {e}"),
        }
    }
}

#[test]
fn order_is_partial_order_on_small_poset() {
    let view = enumerate_poset(2).unwrap();
    let els = &view.elements;
    for a in els {
        assert!(leq(a, a));
        for b in els {
            if a != b && leq(a, b) {
                assert!(!leq(b, a), "antisymmetry {a} {b}");
            }
            for c in els {
                if leq(a, b) && leq(b, c) {
                    assert!(leq(a, c), "transitivity {a} {b} {c}");
                }
            }
        }
    }
}

#[test]
fn order_strictly_decreases_reduced_norm() {
    let view = enumerate_poset(4).unwrap();
    for a in &view.elements {
        for b in &view.elements {
            if leq(a, b) {
                assert!(a.reduced_norm() >= b.reduced_norm());
                assert_eq!(a.reduced_norm() == b.reduced_norm(), a == b, "{a} {b}");
            }
        }
    }
}

#[test]
fn transversal_segment_is_unique_maximum() {
    let top: Pattern = "11".parse().unwrap();
    for n in 0..=MAX_POSET_BOUND {
        let view = enumerate_poset(n).unwrap();
        assert_eq!(view.maximal_elements(), vec![&top], "n={n}");
        for &(a, b) in &view.covers {
            assert!(view.elements[a].reduced_norm() > view.elements[b].reduced_norm());
        }
        assert!(view.elements.iter().all(|p| p.reduced_norm() <= n));
    }
}

#[test]
fn closed_form_matches_down_set_oracle() {
    for omega in patterns_up_to_norm(8) {
        assert_eq!(
            is_smoothly_reconstructible(&omega),
            !hits_forbidden_germ(&omega),
            "{omega}"
        );
    }
}

#[test]
fn bound_two_brute_force() {
    // brute force: every composition of norm <= 2n + 2 that is one atom or one string
    let n = 2;
    let mut expected: Vec<Pattern> = patterns_up_to_norm(2 * n + 2)
        .into_iter()
        .filter(|p| p.reduced_norm() <= n)
        .filter(|p| decompose(p).map(|d| d.parts.len() == 1).unwrap_or(false))
        .collect();
    expected.sort();
    let mut got = enumerate_poset(n).unwrap().elements;
    got.sort();
    assert_eq!(got, expected);
}

proptest! {
    #[test]
    fn text_round_trip(entries in prop::collection::vec(1u32..20, 1..8)) {
        let p = Pattern::new(entries).unwrap();
        let back: Pattern = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        let back: Pattern = format!("({})", p.to_list_string()).parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn decomposition_round_trip(entries in prop::collection::vec(1u32..9, 1..12)) {
        let p = Pattern::new(entries).unwrap();
        if let Ok(d) = decompose(&p) {
            prop_assert_eq!(d.flatten(), p.entries().to_vec());
        }
    }
}
