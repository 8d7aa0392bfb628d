//! The CTL+ co-Büchi automaton detecting a bad A-trace. For CTL+ a trace is
//! bad iff some block at or after an X-stable position carries neither an
//! R- nor an XR-formula, so no thread tracking is needed: the automaton
//! guesses the trace's last spawning connection (a jump out of the waiting
//! state on the letters that extract an A-quantified formula into its own
//! block), follows the block through its non-spawning descendants, raises a
//! flag at the first modal letter and moves to the final flag once an
//! R/XR-free block shows up.

use crate::automata::{AcceptanceKind, Automaton, AutomatonLogic, Priority, StateId, StatePool};
use crate::formula::Kind;
use crate::game::{block_descendants, PlayLetter, Problem, Quant, SetId};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum CtlPlusState {
    Waiting,
    Track { block: SetId, flag: u8 },
}

struct CtlPlusLogic {
    problem: Arc<Problem>,
    pool: StatePool<CtlPlusState>,
}

impl CtlPlusLogic {
    fn has_r_or_xr(&self, block: SetId) -> bool {
        self.problem
            .set(block)
            .iter()
            .any(|&f| self.problem.table.is_fl_r(f))
    }

    /// The spawned A-block of a letter extracting `A phi`, if any:
    /// `(A, _, A phi, 0)` for rule (AA) or `(E, _, A phi, 0)` for rule (EA).
    fn spawned_a_block(&self, letter: &PlayLetter) -> Option<SetId> {
        match *letter {
            PlayLetter::Rule { quant: _, block: _, principal, branch: 0 } => {
                match self.problem.table.kind(principal) {
                    Kind::Forall(g) => Some(self.problem.intern_set(vec![g])),
                    _ => None,
                }
            }
            _ => None,
        }
    }
}

impl AutomatonLogic<PlayLetter> for CtlPlusLogic {
    fn successors(&self, q: StateId, letter: &PlayLetter) -> Vec<StateId> {
        let mut out = Vec::new();
        match self.pool.get(q) {
            CtlPlusState::Waiting => {
                out.push(self.pool.intern(CtlPlusState::Waiting));
                if let Some(block) = self.spawned_a_block(letter) {
                    out.push(self.pool.intern(CtlPlusState::Track { block, flag: 0 }));
                }
            }
            CtlPlusState::Track { block, flag } => {
                for (dq, db, spawning) in
                    block_descendants(&self.problem, letter, (Quant::A, block))
                {
                    if spawning {
                        continue;
                    }
                    debug_assert_eq!(dq, Quant::A, "non-spawning connections keep the quantifier");
                    let base = if flag == 0 {
                        u8::from(letter.is_modal())
                    } else {
                        flag
                    };
                    let next = if base >= 1 && (flag == 2 || !self.has_r_or_xr(db)) {
                        2
                    } else {
                        base
                    };
                    out.push(self.pool.intern(CtlPlusState::Track { block: db, flag: next }));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn priority(&self, q: StateId) -> Priority {
        match self.pool.get(q) {
            CtlPlusState::Track { flag: 2, .. } => 0,
            _ => 1,
        }
    }

    fn state_label(&self, q: StateId) -> String {
        match self.pool.get(q) {
            CtlPlusState::Waiting => "W".to_string(),
            CtlPlusState::Track { block, flag } => format!(
                "({{{}}},{flag})",
                self.problem.table.display_set(&self.problem.set(block))
            ),
        }
    }
}

/// NcoBA accepting exactly the plays that contain a bad A-trace, valid for
/// formulas of the (unfolding-extended) CTL+ grammar.
pub fn build_ctlplus_bad_a_ncoba(problem: &Arc<Problem>) -> Automaton<PlayLetter> {
    let pool = StatePool::new();
    let initial = pool.intern(CtlPlusState::Waiting);
    let logic = CtlPlusLogic { problem: problem.clone(), pool };
    Automaton::new(AcceptanceKind::NcoBa, initial, Arc::new(logic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Lasso;
    use crate::formula::{parse, to_nnf, FormulaTable};
    use crate::game::successors;

    fn problem(text: &str) -> Arc<Problem> {
        Arc::new(Problem::new(FormulaTable::build(&to_nnf(&parse(text).unwrap()))))
    }

    /// Drive the game until a configuration repeats, preferring the first or
    /// last successor that is consistent and can continue an infinite play.
    fn drive_until_cycle(p: &Arc<Problem>, prefer_last: bool) -> Lasso<PlayLetter> {
        let mut cfg = p.initial_configuration();
        let mut seen = vec![cfg];
        let mut letters = Vec::new();
        loop {
            let e = successors(p, cfg);
            assert!(!e.moves.is_empty(), "play ended before a cycle appeared");
            let live: Vec<usize> = (0..e.moves.len())
                .filter(|&i| {
                    p.is_consistent(e.moves[i].1)
                        && !successors(p, e.moves[i].1).moves.is_empty()
                })
                .collect();
            let i = match (&live[..], prefer_last) {
                ([], _) => panic!("play ended before a cycle appeared"),
                (l, false) => l[0],
                (l, true) => *l.last().unwrap(),
            };
            let (l, c) = e.moves[i];
            letters.push(l);
            if let Some(pos) = seen.iter().position(|&x| x == c) {
                let prefix = letters[..pos].to_vec();
                let cycle = letters[pos..].to_vec();
                return Lasso::new(prefix, cycle);
            }
            seen.push(c);
            cfg = c;
        }
    }

    #[test]
    fn endlessly_postponed_af_is_a_bad_a_trace() {
        // A(F p) alone: always choose the unfolding; the trace never gains
        // an R-formula after X-stability.
        let p = problem("A F p");
        let ncoba = build_ctlplus_bad_a_ncoba(&p);
        let w = drive_until_cycle(&p, true);
        assert!(ncoba.lasso_accepts(&w));
    }

    #[test]
    fn ag_always_keeps_an_xr_formula() {
        // A(G p): the tracked block always contains X G p.
        let p = problem("A G p");
        let ncoba = build_ctlplus_bad_a_ncoba(&p);
        let w = drive_until_cycle(&p, false);
        assert!(!ncoba.lasso_accepts(&w));
    }

    #[test]
    fn formulas_without_a_blocks_have_empty_language() {
        let p = problem("E G p");
        let ncoba = build_ctlplus_bad_a_ncoba(&p);
        let w = drive_until_cycle(&p, true);
        assert!(!ncoba.lasso_accepts(&w));
    }
}
