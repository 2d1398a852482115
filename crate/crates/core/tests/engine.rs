mod common;

use arrowform_core::engine::solver::{cache_path, SolverOptions};
use arrowform_core::engine::{check_formula, evaluate, solve_formula_space, verify_invariance, WalkConfig};
use arrowform_core::moves::random_start;
use arrowform_core::{ArrowDiagram, Formula, GaussDiagram, LinComb, MarkingWindow, Provenance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{arrow_diagram, random_diagram};

#[test]
fn single_diagrams_are_caught_by_the_walks() {
    let w = MarkingWindow::new([1, 2, 3, 4], 5);
    let cfg = WalkConfig { marks: w.values(), max_degree: 9 };
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for spec in [[(0, 2, 1), (1, 3, 2)], [(0, 1, 2), (2, 3, 3)], [(0, 3, 4), (1, 2, 4)]] {
        let f = Formula::new(5, LinComb::single(arrow_diagram(5, &spec)), Provenance::File).unwrap();
        assert!(!check_formula(&f, None).unwrap().passed());
        // violations of the third move need a triangle with fitting markings: search over starts
        let found = (0..200).find_map(|s| {
            let g0 = random_start(&mut rng, 5, &w.values(), 1, 1);
            verify_invariance(&f, &g0, 50, 20, s, &cfg).unwrap().violation
        });
        let v = found.expect("a violating move");
        assert_ne!(v.expected, v.found);
        assert_eq!(evaluate(&f, &v.after).unwrap(), v.found);
        assert_eq!(evaluate(&f, &v.before).unwrap(), v.expected);
    }
}

#[test]
fn higher_degree_formulas_vanish_on_small_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a: ArrowDiagram = random_diagram(&mut rng, 3, &[1, 2], 3);
    let f = Formula::new(3, LinComb::single(a), Provenance::File).unwrap();
    for n in 0..3 {
        let g: GaussDiagram = random_diagram(&mut rng, n, &[1, 2], 3);
        assert_eq!(evaluate(&f, &g).unwrap(), arrowform_core::rat(0));
    }
    let empty = Formula::new(3, LinComb::zero(), Provenance::File).unwrap();
    assert_eq!(evaluate(&empty, &random_diagram(&mut rng, 4, &[1, 2], 3)).unwrap(), arrowform_core::rat(0));
}

#[test]
fn degree_three_basis_passes_the_checks() {
    let w = MarkingWindow::new([1, 2, 3, 4], 5);
    let basis = solve_formula_space(3, &w, &SolverOptions::uncached()).unwrap();
    assert!(!basis.is_empty());
    for f in &basis {
        let r = check_formula(f, None).unwrap();
        assert!(r.passed() && r.consistent());
    }
}

#[test]
fn cached_bases_are_reused_byte_for_byte() {
    let dir = std::env::temp_dir().join(format!("arrowform-engine-test-{}", std::process::id()));
    let w = MarkingWindow::new([1, 2, 3], 4);
    let opts = SolverOptions { cache_dir: Some(dir.clone()), ..SolverOptions::uncached() };
    let first = solve_formula_space(2, &w, &opts).unwrap();
    let path = cache_path(&dir, 2, &w);
    let bytes = std::fs::read(&path).unwrap();
    let again = solve_formula_space(2, &w, &opts).unwrap();
    assert_eq!(first.iter().map(|f| &f.vector).collect::<Vec<_>>(), again.iter().map(|f| &f.vector).collect::<Vec<_>>());
    assert_eq!(std::fs::read(&path).unwrap(), bytes);
    assert!(path.starts_with(dir.join("4").join("2")));
    std::fs::remove_dir_all(&dir).unwrap();
}
