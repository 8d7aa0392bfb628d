//! Complementation, the Miyano-Hayashi breakpoint construction, the three
//! products and the alphabet projection. Every construction is a lazy
//! transition oracle over interned state data; partial inputs are completed
//! with an implicit dead state where complementation requires it.

use super::{AcceptanceKind, Automaton, AutomatonLogic, Priority, StateId, StatePool};
use std::hash::Hash;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Completed {
    Orig(StateId),
    Dead,
}

struct ComplementLogic<L> {
    inner: Automaton<L>,
    pool: StatePool<Completed>,
    orig_priority: fn(Priority) -> Priority,
    dead_priority: Priority,
}

impl<L: Clone + Eq + Hash + Send + Sync + 'static> AutomatonLogic<L> for ComplementLogic<L> {
    fn successors(&self, q: StateId, letter: &L) -> Vec<StateId> {
        match self.pool.get(q) {
            Completed::Dead => vec![q],
            Completed::Orig(s) => match self.inner.step(s, letter) {
                Some(s2) => vec![self.pool.intern(Completed::Orig(s2))],
                None => vec![self.pool.intern(Completed::Dead)],
            },
        }
    }

    fn priority(&self, q: StateId) -> Priority {
        match self.pool.get(q) {
            Completed::Dead => self.dead_priority,
            Completed::Orig(s) => (self.orig_priority)(self.inner.priority(s)),
        }
    }

    fn state_label(&self, q: StateId) -> String {
        match self.pool.get(q) {
            Completed::Dead => "dead".to_string(),
            Completed::Orig(s) => self.inner.state_label(s),
        }
    }

    fn state_bound(&self) -> Option<u64> {
        self.inner.state_bound().map(|n| n + 1)
    }
}

/// Complement a DcoBA into a DBA on the same transition structure: final
/// states become priority 1, all others 2. A stuck original run rejects, so
/// its completion accepts.
pub fn complement_dcoba<L: Clone + Eq + Hash + Send + Sync + 'static>(
    a: &Automaton<L>,
) -> Automaton<L> {
    assert_eq!(a.kind(), AcceptanceKind::DcoBa);
    let pool = StatePool::new();
    let initial = pool.intern(Completed::Orig(a.initial()));
    let logic = ComplementLogic {
        inner: a.clone(),
        pool,
        orig_priority: |p| if p == 0 { 1 } else { 2 },
        dead_priority: 2,
    };
    Automaton::new(AcceptanceKind::Dba, initial, Arc::new(logic))
}

/// Complement a DPA by shifting every priority up by one.
pub fn complement_dpa<L: Clone + Eq + Hash + Send + Sync + 'static>(
    a: &Automaton<L>,
) -> Automaton<L> {
    assert_eq!(a.kind(), AcceptanceKind::Dpa);
    let pool = StatePool::new();
    let initial = pool.intern(Completed::Orig(a.initial()));
    let logic = ComplementLogic {
        inner: a.clone(),
        pool,
        orig_priority: |p| p + 1,
        dead_priority: 0,
    };
    Automaton::new(AcceptanceKind::Dpa, initial, Arc::new(logic))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct MhState {
    all: Arc<[StateId]>,
    owing: Arc<[StateId]>,
}

struct MhLogic<L> {
    inner: Automaton<L>,
    pool: StatePool<MhState>,
}

impl<L: Clone + Eq + Hash> MhLogic<L> {
    fn post(&self, set: &[StateId], letter: &L) -> Vec<StateId> {
        let mut out: Vec<StateId> = set
            .iter()
            .flat_map(|&s| self.inner.successors(s, letter))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl<L: Clone + Eq + Hash + Send + Sync + 'static> AutomatonLogic<L> for MhLogic<L> {
    fn successors(&self, q: StateId, letter: &L) -> Vec<StateId> {
        let st = self.pool.get(q);
        let all = self.post(&st.all, letter);
        let owing: Vec<StateId> = if st.owing.is_empty() {
            all.iter().copied().filter(|&s| self.inner.is_final(s)).collect()
        } else {
            self.post(&st.owing, letter)
                .into_iter()
                .filter(|&s| self.inner.is_final(s))
                .collect()
        };
        vec![self.pool.intern(MhState { all: all.into(), owing: owing.into() })]
    }

    fn priority(&self, q: StateId) -> Priority {
        if self.pool.get(q).owing.is_empty() {
            2
        } else {
            1
        }
    }

    fn state_label(&self, q: StateId) -> String {
        let st = self.pool.get(q);
        format!(
            "({{{}}},{{{}}})",
            st.all.iter().map(|s| self.inner.state_label(*s)).collect::<Vec<_>>().join(","),
            st.owing.iter().map(|s| self.inner.state_label(*s)).collect::<Vec<_>>().join(","),
        )
    }

    fn state_bound(&self) -> Option<u64> {
        self.inner.state_bound().map(|n| 3u64.saturating_pow(n.min(40) as u32))
    }
}

/// Miyano-Hayashi breakpoint complement of an NcoBA into a DBA of at most
/// 3^n reachable states. The first component tracks all runs, the second the
/// runs still owing a visit outside the final set since the last breakpoint;
/// the obligation refills from the final-set states when it empties, and
/// breakpoint states (empty obligation) are accepting.
pub fn mh_complement_ncoba<L: Clone + Eq + Hash + Send + Sync + 'static>(
    a: &Automaton<L>,
) -> Automaton<L> {
    assert_eq!(a.kind(), AcceptanceKind::NcoBa);
    let pool = StatePool::new();
    let all: Arc<[StateId]> = vec![a.initial()].into();
    let owing: Arc<[StateId]> = if a.is_final(a.initial()) {
        all.clone()
    } else {
        Vec::new().into()
    };
    let initial = pool.intern(MhState { all, owing });
    let logic = MhLogic { inner: a.clone(), pool };
    Automaton::new(AcceptanceKind::Dba, initial, Arc::new(logic))
}

struct DbaDpaLogic<L> {
    a: Automaton<L>,
    b: Automaton<L>,
    pool: StatePool<(StateId, StateId, Priority)>,
}

impl<L: Clone + Eq + Hash + Send + Sync + 'static> AutomatonLogic<L> for DbaDpaLogic<L> {
    fn successors(&self, q: StateId, letter: &L) -> Vec<StateId> {
        let (qa, qb, p) = self.pool.get(q);
        let (Some(qa2), Some(qb2)) = (self.a.step(qa, letter), self.b.step(qb, letter)) else {
            return vec![];
        };
        let pb = self.b.priority(qb2);
        let p2 = if self.a.is_final(qa) { pb } else { p.max(pb) };
        vec![self.pool.intern((qa2, qb2, p2))]
    }

    fn priority(&self, q: StateId) -> Priority {
        let (qa, _, p) = self.pool.get(q);
        if self.a.is_final(qa) {
            p + 2
        } else {
            1
        }
    }

    fn state_label(&self, q: StateId) -> String {
        let (qa, qb, p) = self.pool.get(q);
        format!("({},{},{p})", self.a.state_label(qa), self.b.state_label(qb))
    }

    fn state_bound(&self) -> Option<u64> {
        // n * m * k with k unknown in general; fall back to n * m * (max prio + 1)
        None
    }
}

/// Intersection of a DBA with a DPA as a DPA: the third component records
/// the maximal DPA priority seen since the DBA's last final visit, examined
/// (shifted by two) exactly at final visits and a low odd priority elsewhere.
pub fn intersect_dba_dpa<L: Clone + Eq + Hash + Send + Sync + 'static>(
    a: &Automaton<L>,
    b: &Automaton<L>,
) -> Automaton<L> {
    assert_eq!(a.kind(), AcceptanceKind::Dba);
    assert_eq!(b.kind(), AcceptanceKind::Dpa);
    let pool = StatePool::new();
    let initial = pool.intern((a.initial(), b.initial(), b.priority(b.initial())));
    let logic = DbaDpaLogic { a: a.clone(), b: b.clone(), pool };
    Automaton::new(AcceptanceKind::Dpa, initial, Arc::new(logic))
}

struct DbaDcobaLogic<L> {
    a: Automaton<L>,
    b: Automaton<L>,
    pool: StatePool<(StateId, StateId, u8)>,
}

impl<L: Clone + Eq + Hash + Send + Sync + 'static> AutomatonLogic<L> for DbaDcobaLogic<L> {
    fn successors(&self, q: StateId, letter: &L) -> Vec<StateId> {
        let (qa, qb, flag) = self.pool.get(q);
        let (Some(qa2), Some(qb2)) = (self.a.step(qa, letter), self.b.step(qb, letter)) else {
            return vec![];
        };
        match flag {
            0 => {
                let mut out = vec![self.pool.intern((qa2, qb2, 0))];
                if self.b.is_final(qb2) {
                    out.push(self.pool.intern((qa2, qb2, 1)));
                }
                out
            }
            _ => {
                if self.b.is_final(qb2) {
                    vec![self.pool.intern((qa2, qb2, 1))]
                } else {
                    vec![]
                }
            }
        }
    }

    fn priority(&self, q: StateId) -> Priority {
        let (qa, qb, flag) = self.pool.get(q);
        if flag == 1 && self.a.is_final(qa) && self.b.is_final(qb) {
            2
        } else {
            1
        }
    }

    fn state_label(&self, q: StateId) -> String {
        let (qa, qb, flag) = self.pool.get(q);
        format!("({},{},{flag})", self.a.state_label(qa), self.b.state_label(qb))
    }
}

/// Intersection of a DBA with a DcoBA as an NBA of at most n*m*2 states: a
/// nondeterministic jump into the second copy guesses the point from which
/// the DcoBA run stays final forever.
pub fn intersect_dba_dcoba<L: Clone + Eq + Hash + Send + Sync + 'static>(
    a: &Automaton<L>,
    b: &Automaton<L>,
) -> Automaton<L> {
    assert_eq!(a.kind(), AcceptanceKind::Dba);
    assert_eq!(b.kind(), AcceptanceKind::DcoBa);
    let pool = StatePool::new();
    let initial = pool.intern((a.initial(), b.initial(), 0));
    let logic = DbaDcobaLogic { a: a.clone(), b: b.clone(), pool };
    Automaton::new(AcceptanceKind::Nba, initial, Arc::new(logic))
}

struct DbaDbaLogic<L> {
    a: Automaton<L>,
    b: Automaton<L>,
    pool: StatePool<(StateId, StateId, u8)>,
}

impl<L: Clone + Eq + Hash> DbaDbaLogic<L> {
    fn is_final_state(&self, qb: StateId, phase: u8) -> bool {
        phase == 1 && self.b.is_final(qb)
    }
}

impl<L: Clone + Eq + Hash + Send + Sync + 'static> AutomatonLogic<L> for DbaDbaLogic<L> {
    fn successors(&self, q: StateId, letter: &L) -> Vec<StateId> {
        let (qa, qb, phase) = self.pool.get(q);
        let (Some(qa2), Some(qb2)) = (self.a.step(qa, letter), self.b.step(qb, letter)) else {
            return vec![];
        };
        // A final visit closes the round and the search for the a-final restarts.
        let effective = if self.is_final_state(qb, phase) { 0 } else { phase };
        let phase2 = if effective == 0 {
            u8::from(self.a.is_final(qa2))
        } else {
            1
        };
        vec![self.pool.intern((qa2, qb2, phase2))]
    }

    fn priority(&self, q: StateId) -> Priority {
        let (_, qb, phase) = self.pool.get(q);
        if self.is_final_state(qb, phase) {
            2
        } else {
            1
        }
    }

    fn state_label(&self, q: StateId) -> String {
        let (qa, qb, phase) = self.pool.get(q);
        format!("({},{},{phase})", self.a.state_label(qa), self.b.state_label(qb))
    }
}

/// Intersection of two DBAs with the two-phase flag product: phase 0 waits
/// for a final visit of the first automaton, phase 1 for one of the second;
/// completing a round is accepting.
pub fn intersect_dba_dba<L: Clone + Eq + Hash + Send + Sync + 'static>(
    a: &Automaton<L>,
    b: &Automaton<L>,
) -> Automaton<L> {
    assert_eq!(a.kind(), AcceptanceKind::Dba);
    assert_eq!(b.kind(), AcceptanceKind::Dba);
    let pool = StatePool::new();
    let phase0 = u8::from(a.is_final(a.initial()));
    let initial = pool.intern((a.initial(), b.initial(), phase0));
    let logic = DbaDbaLogic { a: a.clone(), b: b.clone(), pool };
    Automaton::new(AcceptanceKind::Dba, initial, Arc::new(logic))
}

struct ProjectLogic<A, B, F> {
    inner: Automaton<(A, B)>,
    right_components: F,
}

impl<A, B, F> AutomatonLogic<A> for ProjectLogic<A, B, F>
where
    A: Clone + Eq + Hash + Send + Sync + 'static,
    B: Clone + Eq + Hash + Send + Sync + 'static,
    F: Fn(&A) -> Vec<B> + Send + Sync,
{
    fn successors(&self, q: StateId, letter: &A) -> Vec<StateId> {
        let mut out: Vec<StateId> = (self.right_components)(letter)
            .into_iter()
            .flat_map(|b| self.inner.successors(q, &(letter.clone(), b)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn priority(&self, q: StateId) -> Priority {
        self.inner.priority(q)
    }

    fn state_label(&self, q: StateId) -> String {
        self.inner.state_label(q)
    }

    fn state_bound(&self) -> Option<u64> {
        self.inner.state_bound()
    }
}

/// Existential projection of an NBA over a pair alphabet onto the left
/// component. The feasible right components are enumerated per left letter
/// by the supplied function; the state space is unchanged.
pub fn project_nba<A, B, F>(c: &Automaton<(A, B)>, right_components: F) -> Automaton<A>
where
    A: Clone + Eq + Hash + Send + Sync + 'static,
    B: Clone + Eq + Hash + Send + Sync + 'static,
    F: Fn(&A) -> Vec<B> + Send + Sync + 'static,
{
    assert_eq!(c.kind(), AcceptanceKind::Nba);
    let logic = ProjectLogic { inner: c.clone(), right_components };
    Automaton::new(AcceptanceKind::Nba, c.initial(), Arc::new(logic))
}

struct AllAcceptingLogic;

impl<L: Send + Sync> AutomatonLogic<L> for AllAcceptingLogic {
    fn successors(&self, _q: StateId, _letter: &L) -> Vec<StateId> {
        vec![0]
    }

    fn priority(&self, _q: StateId) -> Priority {
        2
    }

    fn state_bound(&self) -> Option<u64> {
        Some(1)
    }
}

/// The one-state DBA accepting every word.
pub fn all_accepting_dba<L: Clone + Eq + Hash + Send + Sync + 'static>() -> Automaton<L> {
    Automaton::new(AcceptanceKind::Dba, 0, Arc::new(AllAcceptingLogic))
}

#[cfg(test)]
mod tests {
    use super::super::{ExplicitAutomaton, Lasso};
    use super::*;

    fn lasso(prefix: &[u8], cycle: &[u8]) -> Lasso<u8> {
        Lasso::new(prefix.to_vec(), cycle.to_vec())
    }

    #[test]
    fn complement_of_the_universal_dcoba_is_empty() {
        let a = ExplicitAutomaton::builder(1)
            .priority(0, 0)
            .edge(0, 0u8, 0)
            .edge(0, 1u8, 0)
            .build(AcceptanceKind::DcoBa, 0);
        let c = complement_dcoba(&a);
        for w in [lasso(&[], &[0]), lasso(&[1], &[0, 1])] {
            assert!(a.lasso_accepts(&w));
            assert!(!c.lasso_accepts(&w));
        }
    }

    #[test]
    fn complement_dpa_flips_the_all_zero_automaton() {
        let a = ExplicitAutomaton::builder(1)
            .priority(0, 0)
            .edge(0, 0u8, 0)
            .build(AcceptanceKind::Dpa, 0);
        let c = complement_dpa(&a);
        let w = lasso(&[], &[0]);
        assert!(a.lasso_accepts(&w));
        assert!(!c.lasso_accepts(&w));
    }

    #[test]
    fn mh_complement_of_a_omega() {
        // one state, final, self loop on a only: L = a^omega
        let a = ExplicitAutomaton::builder(1)
            .priority(0, 0)
            .edge(0, 0u8, 0)
            .build(AcceptanceKind::NcoBa, 0);
        let c = mh_complement_ncoba(&a);
        assert!(!c.lasso_accepts(&lasso(&[], &[0])));
        assert!(c.lasso_accepts(&lasso(&[], &[1])));
        assert!(c.lasso_accepts(&lasso(&[], &[0, 1])));
    }

    #[test]
    fn mh_complement_of_the_empty_ncoba_is_universal() {
        // no final states: no co-Büchi run can accept
        let a = ExplicitAutomaton::builder(1)
            .priority(0, 1)
            .edge(0, 0u8, 0)
            .edge(0, 1u8, 0)
            .build(AcceptanceKind::NcoBa, 0);
        let c = mh_complement_ncoba(&a);
        assert!(c.lasso_accepts(&lasso(&[], &[0])));
        assert!(c.lasso_accepts(&lasso(&[0, 1], &[1, 0])));
    }

    #[test]
    fn dba_dpa_product_with_universal_dpa_is_the_dba() {
        let dba = ExplicitAutomaton::builder(2)
            .priority(0, 2)
            .priority(1, 1)
            .edge(0, 0u8, 0)
            .edge(0, 1u8, 1)
            .edge(1, 0u8, 0)
            .edge(1, 1u8, 1)
            .build(AcceptanceKind::Dba, 0);
        let dpa = ExplicitAutomaton::builder(1)
            .priority(0, 0)
            .edge(0, 0u8, 0)
            .edge(0, 1u8, 0)
            .build(AcceptanceKind::Dpa, 0);
        let prod = intersect_dba_dpa(&dba, &dpa);
        for w in [lasso(&[], &[0]), lasso(&[], &[1]), lasso(&[1], &[0, 1]), lasso(&[0], &[1])] {
            assert_eq!(prod.lasso_accepts(&w), dba.lasso_accepts(&w), "{w:?}");
        }
    }

    #[test]
    fn dba_dcoba_product_needs_both() {
        // DBA: infinitely many a; DcoBA: eventually only a.
        let dba = ExplicitAutomaton::builder(2)
            .priority(0, 2)
            .priority(1, 1)
            .edge(0, 0u8, 0)
            .edge(0, 1u8, 1)
            .edge(1, 0u8, 0)
            .edge(1, 1u8, 1)
            .build(AcceptanceKind::Dba, 0);
        let dcoba = ExplicitAutomaton::builder(2)
            .priority(0, 0)
            .priority(1, 1)
            .edge(0, 0u8, 0)
            .edge(0, 1u8, 1)
            .edge(1, 0u8, 0)
            .edge(1, 1u8, 1)
            .build(AcceptanceKind::DcoBa, 0);
        let prod = intersect_dba_dcoba(&dba, &dcoba);
        assert!(prod.lasso_accepts(&lasso(&[1, 1], &[0])));
        assert!(!prod.lasso_accepts(&lasso(&[], &[0, 1])));
        assert!(!prod.lasso_accepts(&lasso(&[], &[1])));
    }

    #[test]
    fn dba_dba_product_requires_both_final_sets_infinitely_often() {
        // a-DBA: infinitely many a; b-DBA: infinitely many b.
        let build = |final_letter: u8| {
            ExplicitAutomaton::builder(2)
                .priority(0, 2)
                .priority(1, 1)
                .edge(0, final_letter, 0)
                .edge(0, 1 - final_letter, 1)
                .edge(1, final_letter, 0)
                .edge(1, 1 - final_letter, 1)
                .build(AcceptanceKind::Dba, 0)
        };
        let a = build(0);
        let b = build(1);
        let prod = intersect_dba_dba(&a, &b);
        assert!(prod.lasso_accepts(&lasso(&[], &[0, 1])));
        assert!(!prod.lasso_accepts(&lasso(&[1], &[0])));
        assert!(!prod.lasso_accepts(&lasso(&[0], &[1])));
    }

    #[test]
    fn projection_erases_the_right_component() {
        // NBA over pairs accepting words whose right component is eventually 1
        // while the left alternates freely.
        let nba = ExplicitAutomaton::builder(2)
            .priority(0, 1)
            .priority(1, 2)
            .edge(0, (0u8, 0u8), 0)
            .edge(0, (1u8, 0u8), 0)
            .edge(0, (0u8, 1u8), 1)
            .edge(0, (1u8, 1u8), 1)
            .edge(1, (0u8, 1u8), 1)
            .edge(1, (1u8, 1u8), 1)
            .build(AcceptanceKind::Nba, 0);
        let proj = project_nba(&nba, |_l: &u8| vec![0u8, 1u8]);
        // every left word has a right labelling that is eventually 1
        assert!(proj.lasso_accepts(&Lasso::new(vec![], vec![0])));
        assert!(proj.lasso_accepts(&Lasso::new(vec![1, 0], vec![1])));
        // restricting the right components to 0 kills acceptance
        let proj0 = project_nba(&nba, |_l: &u8| vec![0u8]);
        assert!(!proj0.lasso_accepts(&Lasso::new(vec![], vec![0])));
    }
}
