//! The k-component round-robin DBA accepting exactly the plays without a bad
//! E-trace. Component i waits for the i-th U-formula to be unfolded inside an
//! E-block, then follows that block until the formula is fulfilled or the
//! trace ends. The stored block is the unfolding's successor block, so it
//! always names the thread's block in the configuration about to be read.

use crate::automata::{AcceptanceKind, Automaton, AutomatonLogic, Priority, StateId, StatePool};
use crate::game::{con_e, PlayLetter, Problem, Quant, SetId};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EDbaState {
    Wait(u32),
    Track(u32, SetId),
    /// Rule (X0) while tracking; impossible on plays of the game.
    Dead,
}

struct EDbaLogic {
    problem: Arc<Problem>,
    k: u32,
    pool: StatePool<EDbaState>,
}

impl EDbaLogic {
    fn until(&self, i: u32) -> crate::formula::FormulaId {
        self.problem.table.untils()[i as usize]
    }

    fn step(&self, st: EDbaState, r: &PlayLetter) -> EDbaState {
        match st {
            EDbaState::Dead => EDbaState::Dead,
            EDbaState::Wait(i) => match *r {
                PlayLetter::Rule { quant: Quant::E, block, principal, branch: 1 }
                    if principal == self.until(i) =>
                {
                    let succ = con_e(&self.problem, r, block)
                        .expect("the unfolding branch has a block descendant");
                    EDbaState::Track(i, succ)
                }
                PlayLetter::X0 | PlayLetter::X1 { .. } => EDbaState::Wait((i + 1) % self.k),
                _ => EDbaState::Wait(i),
            },
            EDbaState::Track(i, block) => match *r {
                PlayLetter::Rule { quant: Quant::E, block: b, principal, branch: 0 }
                    if b == block && principal == self.until(i) =>
                {
                    EDbaState::Wait((i + 1) % self.k)
                }
                PlayLetter::X0 => EDbaState::Dead,
                _ => match con_e(&self.problem, r, block) {
                    Some(next) => EDbaState::Track(i, next),
                    None => EDbaState::Wait((i + 1) % self.k),
                },
            },
        }
    }
}

impl AutomatonLogic<PlayLetter> for EDbaLogic {
    fn successors(&self, q: StateId, letter: &PlayLetter) -> Vec<StateId> {
        let next = self.step(self.pool.get(q), letter);
        vec![self.pool.intern(next)]
    }

    fn priority(&self, q: StateId) -> Priority {
        match self.pool.get(q) {
            EDbaState::Wait(0) => 2,
            _ => 1,
        }
    }

    fn state_label(&self, q: StateId) -> String {
        match self.pool.get(q) {
            EDbaState::Wait(i) => format!("{i}"),
            EDbaState::Track(i, s) => {
                format!("({i},{{{}}})", self.problem.table.display_set(&self.problem.set(s)))
            }
            EDbaState::Dead => "dead".to_string(),
        }
    }
}

/// True iff the automaton state is the documented-unreachable dead state;
/// used by the size-bound assertions.
pub fn e_dba_state_is_dead(a: &Automaton<PlayLetter>, q: StateId) -> bool {
    a.state_label(q) == "dead"
}

pub fn build_e_dba(problem: &Arc<Problem>) -> Automaton<PlayLetter> {
    let k = problem.table.untils().len() as u32;
    if k == 0 {
        return crate::automata::all_accepting_dba();
    }
    let pool = StatePool::new();
    let initial = pool.intern(EDbaState::Wait(0));
    let logic = EDbaLogic { problem: problem.clone(), k, pool };
    Automaton::new(AcceptanceKind::Dba, initial, Arc::new(logic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, to_nnf, FormulaTable};
    use crate::game::{successors, ConfigId, ExpansionKind};

    fn problem(text: &str) -> Arc<Problem> {
        Arc::new(Problem::new(FormulaTable::build(&to_nnf(&parse(text).unwrap()))))
    }

    /// Drive the game from the initial configuration, choosing moves by
    /// index, and collect the emitted letters.
    fn play(p: &Arc<Problem>, picks: &[usize]) -> (Vec<PlayLetter>, Vec<ConfigId>) {
        let mut cfg = p.initial_configuration();
        let mut letters = Vec::new();
        let mut cfgs = vec![cfg];
        let mut picks = picks.iter().copied();
        loop {
            let e = successors(p, cfg);
            if e.moves.is_empty() {
                break;
            }
            let i = match e.kind {
                ExpansionKind::Rule(_) | ExpansionKind::Modal if e.moves.len() > 1 => {
                    match picks.next() {
                        Some(i) => i,
                        None => break,
                    }
                }
                _ => 0,
            };
            let (letter, next) = e.moves[i].clone();
            letters.push(letter);
            cfgs.push(next);
            cfg = next;
        }
        (letters, cfgs)
    }

    #[test]
    fn modal_letters_advance_the_component() {
        let p = problem("E (p U q) & E (r U s)");
        let a = build_e_dba(&p);
        let q0 = a.initial();
        let q1 = a.step(q0, &PlayLetter::X0).unwrap();
        assert_eq!(a.state_label(q0), "0");
        assert_eq!(a.state_label(q1), "1");
        let q2 = a.step(q1, &PlayLetter::X1 { block: p.empty_set() }).unwrap();
        assert_eq!(a.state_label(q2), "0");
        assert_eq!(a.priority(q0), 2);
        assert_eq!(a.priority(q1), 1);
    }

    #[test]
    fn fulfilling_the_until_returns_to_the_waiting_round() {
        // Drive E(p U q) choosing the unfolding branch once, then fulfil.
        let p = problem("E (p U q)");
        let a = build_e_dba(&p);
        // picks: EU branch 1 (unfold), then at the modal stage pick the only
        // E-block, then EU branch 0 (fulfil).
        let (letters, _) = play(&p, &[1, 0]);
        let mut q = a.initial();
        let mut labels = vec![a.state_label(q)];
        for l in &letters {
            q = a.step(q, l).expect("total on played letters");
            labels.push(a.state_label(q));
        }
        // The unfold enters a tracking state, the fulfil leaves it.
        assert!(
            labels.iter().any(|l| l.starts_with("(0,")),
            "never tracked: {labels:?}"
        );
        assert_eq!(labels.last().map(|s| s.as_str()), Some("0"));
    }

    #[test]
    fn formula_without_untils_gets_the_universal_dba() {
        let p = problem("A G p");
        // G p = ff R p has no U-subformulas
        let a = build_e_dba(&p);
        assert_eq!(a.priority(a.initial()), 2);
    }
}
