mod common;

use arrowform_core::engine::{check_formula, evaluate, homogeneous_components, solve_formula_space, SolverOptions};
use arrowform_core::format::{parse_diagram, parse_lincomb, write_diagram, write_lincomb};
use arrowform_core::pairing::{pair_norm, sign_expand_s, subdiagram_expand_i};
use arrowform_core::{ratio, ArrowDiagram, Formula, GaussDiagram, LinComb, MarkingWindow, Provenance, Sign};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{naive_key, random_diagram, rotate};

const MARKS: [i64; 4] = [-1, 0, 1, 2];

fn gauss(seed: u64, n: usize) -> GaussDiagram {
    random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), n, &MARKS, 2)
}

fn combination(seed: u64, terms: usize, max_degree: usize) -> LinComb<ArrowDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = LinComb::zero();
    for _ in 0..terms {
        let n = rng.gen_range(0..=max_degree);
        let d: ArrowDiagram = random_diagram(&mut rng, n, &MARKS, 2);
        v.add_term(d, ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_the_cut(seed: u64, n in 0usize..6, r in 0usize..12) {
        let g = gauss(seed, n);
        let h = rotate(&g, r);
        prop_assert_eq!(&h, &g);
        prop_assert_eq!(GaussDiagram::from_word(&g.word()), g.clone());
        prop_assert_eq!(naive_key(&h), naive_key(&g));
    }

    #[test]
    fn automorphisms_divide_the_length(seed: u64, n in 1usize..6) {
        let g = gauss(seed, n);
        let mut own = g.arrows().to_vec();
        own.sort();
        let rotations = (0..2 * n)
            .filter(|&r| {
                let mut x = g.rotated_arrows(r);
                x.sort();
                x == own
            })
            .count();
        prop_assert_eq!(g.aut_order(), rotations);
        prop_assert_eq!((2 * n) % g.aut_order(), 0);
    }

    #[test]
    fn diagram_text_round_trips(seed: u64, n in 0usize..6) {
        let g = gauss(seed, n);
        let text = write_diagram(&g);
        let back = parse_diagram::<Sign>(&text).unwrap();
        prop_assert_eq!(write_diagram(&back), text);
        prop_assert_eq!(back, g);
    }

    #[test]
    fn combination_text_round_trips(seed: u64, terms in 0usize..6) {
        let v = combination(seed, terms, 4);
        let text = write_lincomb(&v);
        let back = parse_lincomb::<()>(&text).unwrap();
        prop_assert_eq!(write_lincomb(&back), text);
        prop_assert_eq!(back, v);
    }

    #[test]
    fn evaluation_is_the_pairing_of_s_and_i(seed: u64, terms in 0usize..4, n in 0usize..5) {
        let v = combination(seed, terms, 3);
        let g = gauss(seed ^ 0x5a5a, n);
        let f = Formula::new(2, v.clone(), Provenance::File).unwrap();
        let naive = pair_norm(&sign_expand_s(&v), &subdiagram_expand_i(&LinComb::single(g.clone())));
        prop_assert_eq!(evaluate(&f, &g).unwrap(), naive);
    }

    #[test]
    fn evaluation_ignores_rotation(seed: u64, n in 0usize..6, r in 0usize..12) {
        let v = combination(seed, 3, 3);
        let g = gauss(seed.wrapping_add(1), n);
        let f = Formula::new(2, v, Provenance::File).unwrap();
        let h = GaussDiagram::from_word(&g.word().rotated(r % (2 * n).max(1)));
        prop_assert_eq!(evaluate(&f, &g).unwrap(), evaluate(&f, &h).unwrap());
    }

    #[test]
    fn linear_combinations_form_a_vector_space(a: u64, b: u64) {
        let x = combination(a, 4, 3);
        let y = combination(b, 4, 3);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert!((&x - &x).is_zero());
        let c = ratio(3, 2);
        prop_assert_eq!(x.scale(&c).scale(&ratio(2, 3)), x);
    }
}

#[test]
fn homogeneous_parts_of_invariants_pass() {
    let w = MarkingWindow::new([1, 2, 3], 4);
    let mut v = LinComb::zero();
    for n in 1..=2 {
        for (i, f) in solve_formula_space(n, &w, &SolverOptions::uncached()).unwrap().iter().enumerate() {
            v = &v + &f.vector.scale(&ratio(i as i64 + 1, n as i64));
        }
    }
    let f = Formula::new(4, v, Provenance::File).unwrap();
    assert!(check_formula(&f, None).unwrap().passed());
    let parts = homogeneous_components(&f);
    assert_eq!(parts.len(), 2);
    for p in parts {
        assert!(check_formula(&p, None).unwrap().passed());
    }
}
