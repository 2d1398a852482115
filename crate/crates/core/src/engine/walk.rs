//! Random Reidemeister walks checking that a formula is invariant.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{evaluate, EngineError, Formula};
use crate::diagram::GaussDiagram;
use crate::lincomb::Rational;
use crate::moves::{apply_r_move, random_move, RMove};

/// The sampler behind the walks: bigon markings are drawn from `marks`,
/// kink markings are forced, and no diagram grows beyond `max_degree` arrows.
#[derive(Clone, Debug)]
pub struct WalkConfig {
    pub marks: Vec<i64>,
    pub max_degree: usize,
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub trial: usize,
    pub step: usize,
    pub mv: RMove,
    pub before: GaussDiagram,
    pub after: GaussDiagram,
    pub expected: Rational,
    pub found: Rational,
}

#[derive(Clone, Debug)]
pub struct WalkReport {
    pub trials: usize,
    pub moves: usize,
    /// Moves per kind, in the order `R1+ R1- R2+ R2- R3`.
    pub kinds: [usize; 5],
    pub violation: Option<Violation>,
}

impl WalkReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Per-trial generator, independent of the thread count.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn kind_index(mv: &RMove) -> usize {
    match mv {
        RMove::R1Add { .. } => 0,
        RMove::R1Remove { .. } => 1,
        RMove::R2Add { .. } => 2,
        RMove::R2Remove { .. } => 3,
        RMove::R3 { .. } => 4,
    }
}

struct Trial {
    moves: usize,
    kinds: [usize; 5],
    violation: Option<Violation>,
}

fn run_trial(f: &Formula, g0: &GaussDiagram, expected: &Rational, trial: usize, len: usize, seed: u64, cfg: &WalkConfig) -> Trial {
    let mut rng = trial_rng(seed, trial);
    let mut g = g0.clone();
    let mut out = Trial { moves: 0, kinds: [0; 5], violation: None };
    for step in 0..len {
        let Some(mv) = random_move(&g, &mut rng, &cfg.marks, cfg.max_degree) else { break };
        let next = apply_r_move(&g, &mv).expect("sampled moves apply");
        out.moves += 1;
        out.kinds[kind_index(&mv)] += 1;
        let found = evaluate(f, &next).expect("moves keep K");
        if &found != expected {
            out.violation = Some(Violation { trial, step, mv, before: g, after: next, expected: expected.clone(), found });
            return out;
        }
        g = next;
    }
    out
}

/// Runs `trials` independent walks of `walk_length` moves from `g0` and
/// reports the first move (lowest trial, then step) changing the value.
pub fn verify_invariance(
    f: &Formula,
    g0: &GaussDiagram,
    trials: usize,
    walk_length: usize,
    seed: u64,
    cfg: &WalkConfig,
) -> Result<WalkReport, EngineError> {
    let expected = evaluate(f, g0)?;
    let results: Vec<Trial> =
        (0..trials).into_par_iter().map(|t| run_trial(f, g0, &expected, t, walk_length, seed, cfg)).collect();
    let mut report = WalkReport { trials, moves: 0, kinds: [0; 5], violation: None };
    for r in results {
        report.moves += r.moves;
        for (a, b) in report.kinds.iter_mut().zip(r.kinds) {
            *a += b;
        }
        if report.violation.is_none() {
            report.violation = r.violation;
        }
    }
    Ok(report)
}
