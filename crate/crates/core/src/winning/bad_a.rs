//! NBA over play letters accepting exactly the plays that contain a bad
//! A-trace, and its determinized complement.
//!
//! The automaton fuses the four-automata pipeline into one: the marked-trace
//! components of the extended alphabet become nondeterministic guesses (the
//! alphabet projection), and the absence of an R-thread in the marked trace
//! is verified by a Miyano-Hayashi breakpoint pair over the thread-tracking
//! co-Büchi automaton, whose runs advance along the chosen block connection.
//!
//! Every trace is only finitely spawning and the quantifier of a trace can
//! only change at a spawning connection, so each A-trace has an all-A,
//! spawn-free suffix beginning at an A-block extracted by rule (AA) or (EA).
//! Those blocks are visible in the letters; the automaton leaves its waiting
//! state exactly there and follows non-spawning descendants, which keeps the
//! guessed trace-shape condition (the trace checker and its two-flag product
//! with the thread part) implicit instead of carrying flag and quantifier
//! components through the subset construction.

use crate::automata::{
    complement_dpa, determinize_nba_capped, AcceptanceKind, Automaton, AutomatonLogic, Priority,
    StateId, StatePool,
};
use crate::formula::{FormulaId, Kind};
use crate::game::{block_descendants, PlayLetter, Problem, Quant, SetId};
use std::sync::Arc;

/// Thread-tracker states: the waiting state or an R-/XR-formula of the
/// closure currently tracked inside the marked block.
const CA_WAIT: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum BadAState {
    Waiting,
    /// Following an A-block through non-spawning connections, with the
    /// obligation half of the Miyano-Hayashi pair over the thread tracker:
    /// the runs still owing a departure from the tracking states. The full
    /// run set needs no storage: the waiting state re-guesses every R/XR
    /// member of the marked block at each step, so it is always exactly
    /// {W} plus the R/XR members of the block.
    Tracking { block: SetId, owing: Arc<[u32]> },
}

struct BadALogic {
    problem: Arc<Problem>,
    /// FL_R members, index = tracker state id.
    flr: Vec<FormulaId>,
    pool: Arc<StatePool<BadAState>>,
}

/// Read access to the NBA's interned states, for the test oracles that
/// decode an accepting run back into the marked trace it guessed.
pub struct BadAProbe {
    pool: Arc<StatePool<BadAState>>,
}

impl BadAProbe {
    /// The marked block of a tracking state, `None` for the waiting state.
    pub fn tracked_block(&self, q: StateId) -> Option<(Quant, SetId)> {
        match self.pool.get(q) {
            BadAState::Waiting => None,
            BadAState::Tracking { block, .. } => Some((Quant::A, block)),
        }
    }
}

/// The A-block extracted into its own singleton by this letter, if any:
/// rule (AA) is `(A, _, A phi, 0)`, rule (EA) is `(E, _, A phi, 0)`.
fn spawned_a_block(problem: &Problem, letter: &PlayLetter) -> Option<SetId> {
    match *letter {
        PlayLetter::Rule { principal, branch: 0, .. } => match problem.table.kind(principal) {
            Kind::Forall(g) => Some(problem.intern_set(vec![g])),
            _ => None,
        },
        _ => None,
    }
}

impl BadALogic {
    fn flr_index(&self, f: FormulaId) -> Option<u32> {
        self.flr.binary_search(&f).ok().map(|i| i as u32)
    }

    /// Successors of one tracker run along the chosen block connection.
    fn ca_step(
        &self,
        ca: u32,
        letter: &PlayLetter,
        src: SetId,
        dst: SetId,
        out: &mut Vec<u32>,
    ) {
        let p = &self.problem;
        if ca == CA_WAIT {
            out.push(CA_WAIT);
            for &f in p.set(dst).iter() {
                if let Some(i) = self.flr_index(f) {
                    out.push(i);
                }
            }
            return;
        }
        let chi = self.flr[ca as usize];
        match *letter {
            PlayLetter::X0 | PlayLetter::X1 { .. } => {
                if let Kind::Next(g) = p.table.kind(chi) {
                    if p.set_contains(dst, g) {
                        out.push(self.flr_index(g).expect("stripped XR-formula is in FL_R"));
                    }
                }
            }
            PlayLetter::Rule { quant: Quant::A, block, principal, .. }
                if block == src && principal == chi =>
            {
                // (AR) on the tracked formula: follow the X-unfolding only.
                let x = p.table.next_of(chi).expect("X-form of an R-formula");
                if p.set_contains(dst, x) {
                    out.push(self.flr_index(x).expect("XR-formula is in FL_R"));
                }
            }
            _ => {
                if p.set_contains(dst, chi) {
                    out.push(ca);
                }
            }
        }
    }

    fn mh_advance(
        &self,
        letter: &PlayLetter,
        src: SetId,
        dst: SetId,
        owing: &[u32],
    ) -> Arc<[u32]> {
        let step_set = |set: &[u32]| -> Vec<u32> {
            let mut out = Vec::new();
            for &ca in set {
                self.ca_step(ca, letter, src, dst, &mut out);
            }
            out.sort();
            out.dedup();
            out
        };
        let owing2: Vec<u32> = if owing.is_empty() {
            // refill: all tracker runs alive in the target block owe again
            self.problem
                .set(dst)
                .iter()
                .filter_map(|&f| self.flr_index(f))
                .collect()
        } else {
            step_set(owing).into_iter().filter(|&ca| ca != CA_WAIT).collect()
        };
        let mut owing2 = owing2;
        owing2.sort();
        owing2.dedup();
        owing2.into()
    }
}

impl AutomatonLogic<PlayLetter> for BadALogic {
    fn successors(&self, q: StateId, letter: &PlayLetter) -> Vec<StateId> {
        let mut out = Vec::new();
        match self.pool.get(q) {
            BadAState::Waiting => {
                out.push(self.pool.intern(BadAState::Waiting));
                if let Some(block) = spawned_a_block(&self.problem, letter) {
                    out.push(self.pool.intern(BadAState::Tracking {
                        block,
                        owing: Vec::new().into(),
                    }));
                }
            }
            BadAState::Tracking { block, owing } => {
                for (dq, db, spawning) in
                    block_descendants(&self.problem, letter, (Quant::A, block))
                {
                    if spawning {
                        continue;
                    }
                    debug_assert_eq!(dq, Quant::A, "non-spawning connections keep the quantifier");
                    let owing2 = self.mh_advance(letter, block, db, &owing);
                    out.push(self.pool.intern(BadAState::Tracking { block: db, owing: owing2 }));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn priority(&self, q: StateId) -> Priority {
        match self.pool.get(q) {
            BadAState::Tracking { owing, .. } if owing.is_empty() => 2,
            _ => 1,
        }
    }

    fn state_label(&self, q: StateId) -> String {
        match self.pool.get(q) {
            BadAState::Waiting => "W".to_string(),
            BadAState::Tracking { block, owing } => {
                let t = &self.problem.table;
                let name = |ca: &u32| -> String {
                    if *ca == CA_WAIT {
                        "W".to_string()
                    } else {
                        t.display(self.flr[*ca as usize])
                    }
                };
                format!(
                    "(A{{{}}},O={{{}}})",
                    t.display_set(&self.problem.set(block)),
                    owing.iter().map(name).collect::<Vec<_>>().join(","),
                )
            }
        }
    }
}

/// NBA accepting exactly the plays containing a bad A-trace.
pub fn build_bad_a_nba(problem: &Arc<Problem>) -> Automaton<PlayLetter> {
    build_bad_a_nba_with_probe(problem).0
}

pub fn build_bad_a_nba_with_probe(problem: &Arc<Problem>) -> (Automaton<PlayLetter>, BadAProbe) {
    let flr: Vec<FormulaId> =
        problem.table.fl_ids().filter(|&f| problem.table.is_fl_r(f)).collect();
    let pool = Arc::new(StatePool::new());
    let initial = pool.intern(BadAState::Waiting);
    let probe = BadAProbe { pool: pool.clone() };
    let logic = BadALogic { problem: problem.clone(), flr, pool };
    (Automaton::new(AcceptanceKind::Nba, initial, Arc::new(logic)), probe)
}

/// DPA accepting exactly the plays without a bad A-trace, by Piterman
/// determinization and parity complement. The cap bounds live NBA states for
/// the priority encoding; callers that know the reachable state count pass
/// it, everything else uses the default.
pub fn build_a_dpa_capped(problem: &Arc<Problem>, cap: Option<u64>) -> Automaton<PlayLetter> {
    let nba = build_bad_a_nba(problem);
    let dpa = match cap {
        Some(c) => determinize_nba_capped(&nba, c),
        None => crate::automata::determinize_nba(&nba),
    };
    complement_dpa(&dpa)
}

pub fn build_a_dpa(problem: &Arc<Problem>) -> Automaton<PlayLetter> {
    build_a_dpa_capped(problem, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Lasso;
    use crate::formula::{parse, to_nnf, FormulaTable};

    fn problem(text: &str) -> Arc<Problem> {
        Arc::new(Problem::new(FormulaTable::build(&to_nnf(&parse(text).unwrap()))))
    }

    #[test]
    fn no_a_quantifier_and_no_extraction_means_no_bad_a_trace() {
        // Plays of E(p U q) never contain an A-block.
        let p = problem("E (p U q)");
        let nba = build_bad_a_nba(&p);
        let mut cfg = p.initial_configuration();
        let mut letters = Vec::new();
        for _ in 0..6 {
            let e = crate::game::successors(&p, cfg);
            if e.moves.is_empty() {
                break;
            }
            // prefer the unfolding branch to get a cycle
            let (l, c) = *e.moves.last().unwrap();
            letters.push(l);
            cfg = c;
        }
        assert!(!letters.is_empty());
        let w = Lasso::new(Vec::new(), letters);
        assert!(!nba.lasso_accepts(&w));
    }
}
