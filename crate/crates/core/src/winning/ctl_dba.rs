//! The CTL thread DBA: the k-component round-robin of the E-trace automaton
//! following single formulas instead of blocks. Component i watches the
//! unfoldings of the i-th U-formula; a play is accepted iff it contains no
//! U-thread.

use crate::automata::{AcceptanceKind, Automaton, AutomatonLogic, Priority, StateId, StatePool};
use crate::formula::{FormulaId, Kind};
use crate::game::{CtlLetter, Problem};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum CtlDbaState {
    Wait(u32),
    Track(u32, FormulaId),
    Dead,
}

struct CtlDbaLogic {
    problem: Arc<Problem>,
    k: u32,
    pool: StatePool<CtlDbaState>,
}

impl CtlDbaLogic {
    fn until(&self, i: u32) -> FormulaId {
        self.problem.table.untils()[i as usize]
    }

    /// Is `f` a `Q(phi_i U psi_i)` for component i?
    fn quantified_until(&self, i: u32, f: FormulaId) -> bool {
        match self.problem.table.kind(f) {
            Kind::Exists(b) | Kind::Forall(b) => b == self.until(i),
            _ => false,
        }
    }

    fn step(&self, st: CtlDbaState, r: &CtlLetter) -> CtlDbaState {
        let t = &self.problem.table;
        let k = self.k;
        match st {
            CtlDbaState::Dead => CtlDbaState::Dead,
            CtlDbaState::Wait(i) => match *r {
                CtlLetter::Rule { principal, branch: 1 } if self.quantified_until(i, principal) => {
                    let wrapper = t
                        .ctl_unfold_wrapper(principal)
                        .expect("unfolding wrapper is in the table");
                    CtlDbaState::Track(i, wrapper)
                }
                CtlLetter::X0 | CtlLetter::X1 { .. } => CtlDbaState::Wait((i + 1) % k),
                _ => CtlDbaState::Wait(i),
            },
            CtlDbaState::Track(i, chi) => match t.kind(chi) {
                // chi = Q(phi_i U psi_i), waiting to be unfolded again
                Kind::Exists(b) | Kind::Forall(b) if !matches!(t.kind(b), Kind::Next(_)) => {
                    match *r {
                        CtlLetter::Rule { principal, branch } if principal == chi => {
                            if branch == 0 {
                                CtlDbaState::Wait((i + 1) % k)
                            } else {
                                let wrapper = t.ctl_unfold_wrapper(chi).expect("wrapper");
                                CtlDbaState::Track(i, wrapper)
                            }
                        }
                        // an unquantified-U formula cannot survive to a modal stage
                        CtlLetter::X0 | CtlLetter::X1 { .. } => CtlDbaState::Wait((i + 1) % k),
                        _ => CtlDbaState::Track(i, chi),
                    }
                }
                // chi = Q X Q(phi_i U psi_i)
                Kind::Exists(b) | Kind::Forall(b) => {
                    let stripped = match t.kind(b) {
                        Kind::Next(g) => g,
                        _ => unreachable!(),
                    };
                    let universal = matches!(t.kind(chi), Kind::Forall(_));
                    match *r {
                        CtlLetter::X0 => {
                            if universal {
                                CtlDbaState::Track(i, stripped)
                            } else {
                                // (X0) despite a pending EX-formula: impossible in plays
                                CtlDbaState::Dead
                            }
                        }
                        CtlLetter::X1 { chosen } => {
                            if universal || chosen == chi {
                                CtlDbaState::Track(i, stripped)
                            } else {
                                CtlDbaState::Wait((i + 1) % k)
                            }
                        }
                        _ => CtlDbaState::Track(i, chi),
                    }
                }
                other => unreachable!("tracked formula with kind {other:?}"),
            },
        }
    }
}

impl AutomatonLogic<CtlLetter> for CtlDbaLogic {
    fn successors(&self, q: StateId, letter: &CtlLetter) -> Vec<StateId> {
        let next = self.step(self.pool.get(q), letter);
        vec![self.pool.intern(next)]
    }

    fn priority(&self, q: StateId) -> Priority {
        match self.pool.get(q) {
            CtlDbaState::Wait(0) => 2,
            _ => 1,
        }
    }

    fn state_label(&self, q: StateId) -> String {
        match self.pool.get(q) {
            CtlDbaState::Wait(i) => format!("{i}"),
            CtlDbaState::Track(i, f) => format!("({i},{})", self.problem.table.display(f)),
            CtlDbaState::Dead => "dead".to_string(),
        }
    }
}

pub fn build_ctl_dba(problem: &Arc<Problem>) -> Automaton<CtlLetter> {
    let k = problem.table.untils().len() as u32;
    if k == 0 {
        return crate::automata::all_accepting_dba();
    }
    let pool = StatePool::new();
    let initial = pool.intern(CtlDbaState::Wait(0));
    let logic = CtlDbaLogic { problem: problem.clone(), k, pool };
    Automaton::new(AcceptanceKind::Dba, initial, Arc::new(logic))
}
