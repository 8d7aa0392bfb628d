//! Acceptance-typed omega-word automata over lazily enumerated alphabets.
//!
//! States are opaque ids created on demand by each construction's own
//! interner; transitions are oracle functions memoized per (state, letter).
//! Priorities follow the max-parity, acceptance-even convention: NBA/DBA use
//! priorities {1,2} with the final set at 2, NcoBA/DcoBA use {0,1} with the
//! final set at 0, DPA priorities are arbitrary.

mod ops;
mod piterman;

pub use ops::{
    all_accepting_dba, complement_dcoba, complement_dpa, intersect_dba_dba, intersect_dba_dcoba,
    intersect_dba_dpa, mh_complement_ncoba, project_nba,
};
pub use piterman::{determinize_nba, determinize_nba_capped};

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

pub type StateId = u32;
pub type Priority = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcceptanceKind {
    Nba,
    NcoBa,
    Dba,
    DcoBa,
    Dpa,
}

impl AcceptanceKind {
    pub fn is_deterministic(self) -> bool {
        matches!(self, AcceptanceKind::Dba | AcceptanceKind::DcoBa | AcceptanceKind::Dpa)
    }
}

/// Transition oracle of an automaton. Deterministic kinds return at most one
/// successor; an empty result is a stuck (rejecting) run.
pub trait AutomatonLogic<L>: Send + Sync {
    fn successors(&self, q: StateId, letter: &L) -> Vec<StateId>;
    fn priority(&self, q: StateId) -> Priority;
    fn state_label(&self, q: StateId) -> String {
        format!("q{q}")
    }
    /// Total state count when the automaton is explicitly finite.
    fn state_bound(&self) -> Option<u64> {
        None
    }
}

pub struct Automaton<L> {
    kind: AcceptanceKind,
    initial: StateId,
    logic: Arc<dyn AutomatonLogic<L>>,
}

impl<L> Clone for Automaton<L> {
    fn clone(&self) -> Self {
        Automaton { kind: self.kind, initial: self.initial, logic: self.logic.clone() }
    }
}

impl<L: Clone + Eq + Hash> Automaton<L> {
    pub fn new(
        kind: AcceptanceKind,
        initial: StateId,
        logic: Arc<dyn AutomatonLogic<L>>,
    ) -> Self {
        Automaton { kind, initial, logic }
    }

    pub fn kind(&self) -> AcceptanceKind {
        self.kind
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn successors(&self, q: StateId, letter: &L) -> Vec<StateId> {
        self.logic.successors(q, letter)
    }

    /// The unique successor of a deterministic automaton, `None` when stuck.
    pub fn step(&self, q: StateId, letter: &L) -> Option<StateId> {
        debug_assert!(self.kind.is_deterministic());
        let succ = self.logic.successors(q, letter);
        debug_assert!(succ.len() <= 1, "deterministic automaton with {} successors", succ.len());
        succ.first().copied()
    }

    pub fn priority(&self, q: StateId) -> Priority {
        self.logic.priority(q)
    }

    /// Membership in the final set for (co-)Büchi kinds.
    pub fn is_final(&self, q: StateId) -> bool {
        match self.kind {
            AcceptanceKind::Nba | AcceptanceKind::Dba => self.priority(q) == 2,
            AcceptanceKind::NcoBa | AcceptanceKind::DcoBa => self.priority(q) == 0,
            AcceptanceKind::Dpa => panic!("final set is not defined for parity automata"),
        }
    }

    pub fn state_label(&self, q: StateId) -> String {
        self.logic.state_label(q)
    }

    pub fn state_bound(&self) -> Option<u64> {
        self.logic.state_bound()
    }

    /// Decide membership of the ultimately periodic word `w` in the
    /// automaton's language. Deterministic kinds run the unique run and
    /// evaluate the priorities on the eventual cycle; nondeterministic kinds
    /// search the product of states and lasso positions for an accepting
    /// cycle.
    pub fn lasso_accepts(&self, w: &Lasso<L>) -> bool {
        assert!(!w.cycle.is_empty(), "lasso cycle must be non-empty");
        if self.kind.is_deterministic() {
            self.lasso_accepts_det(w)
        } else {
            self.lasso_accepts_nondet(w)
        }
    }

    fn lasso_accepts_det(&self, w: &Lasso<L>) -> bool {
        let mut q = self.initial;
        for l in &w.prefix {
            match self.step(q, l) {
                Some(q2) => q = q2,
                None => return false,
            }
        }
        // Iterate laps of the cycle until a lap-start state repeats; the
        // states seen between the two occurrences are visited infinitely.
        let mut lap_starts: Vec<StateId> = vec![q];
        let mut lap_prios: Vec<Vec<Priority>> = Vec::new();
        loop {
            let mut prios = vec![self.priority(q)];
            for l in &w.cycle {
                match self.step(q, l) {
                    Some(q2) => q = q2,
                    None => return false,
                }
                prios.push(self.priority(q));
            }
            lap_prios.push(prios);
            if let Some(first) = lap_starts.iter().position(|&s| s == q) {
                let max = lap_prios[first..]
                    .iter()
                    .flatten()
                    .copied()
                    .max()
                    .expect("at least one lap");
                return max % 2 == 0;
            }
            lap_starts.push(q);
        }
    }

    fn lasso_accepts_nondet(&self, w: &Lasso<L>) -> bool {
        let len = w.prefix.len() + w.cycle.len();
        let letter_at = |t: usize| -> &L {
            if t < w.prefix.len() {
                &w.prefix[t]
            } else {
                &w.cycle[t - w.prefix.len()]
            }
        };
        let next_pos = |t: usize| -> usize {
            if t + 1 < len {
                t + 1
            } else {
                w.prefix.len()
            }
        };
        // Explore the reachable product of automaton states and positions.
        let mut index: HashMap<(StateId, usize), usize> = HashMap::new();
        let mut nodes: Vec<(StateId, usize)> = Vec::new();
        let mut adj: Vec<Vec<usize>> = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        let start = (self.initial, 0);
        index.insert(start, 0);
        nodes.push(start);
        adj.push(Vec::new());
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            let (q, t) = nodes[i];
            for q2 in self.successors(q, letter_at(t)) {
                let succ = (q2, next_pos(t));
                let j = *index.entry(succ).or_insert_with(|| {
                    nodes.push(succ);
                    adj.push(Vec::new());
                    queue.push_back(nodes.len() - 1);
                    nodes.len() - 1
                });
                adj[i].push(j);
            }
        }
        match self.kind {
            AcceptanceKind::Nba => {
                // accepting cycle through a final state
                let comp = scc(&adj);
                has_cyclic_component_with(&adj, &comp, |i| self.is_final(nodes[i].0))
            }
            AcceptanceKind::NcoBa => {
                // cycle that avoids non-final states entirely
                let keep: Vec<bool> =
                    (0..nodes.len()).map(|i| self.is_final(nodes[i].0)).collect();
                let restricted: Vec<Vec<usize>> = adj
                    .iter()
                    .enumerate()
                    .map(|(i, out)| {
                        if keep[i] {
                            out.iter().copied().filter(|&j| keep[j]).collect()
                        } else {
                            Vec::new()
                        }
                    })
                    .collect();
                let comp = scc(&restricted);
                has_cyclic_component_with(&restricted, &comp, |i| keep[i])
            }
            _ => unreachable!(),
        }
    }
}

/// The ultimately periodic word `prefix . cycle^omega`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso<L> {
    pub prefix: Vec<L>,
    pub cycle: Vec<L>,
}

impl<L> Lasso<L> {
    pub fn new(prefix: Vec<L>, cycle: Vec<L>) -> Self {
        assert!(!cycle.is_empty());
        Lasso { prefix, cycle }
    }
}

/// Iterative Tarjan SCC; returns a component index per node.
pub(crate) fn scc(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut counter = 0usize;
    let mut comps = 0usize;
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut ei)) = call.last_mut() {
            if *ei == 0 {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*ei) {
                *ei += 1;
                if index[w] == usize::MAX {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = comps;
                        if w == v {
                            break;
                        }
                    }
                    comps += 1;
                }
                let finished = v;
                call.pop();
                if let Some(&mut (parent, _)) = call.last_mut() {
                    low[parent] = low[parent].min(low[finished]);
                }
            }
        }
    }
    comp
}

/// True iff some component containing a node satisfying `pred` has an
/// internal edge (a real cycle).
pub(crate) fn has_cyclic_component_with(
    adj: &[Vec<usize>],
    comp: &[usize],
    pred: impl Fn(usize) -> bool,
) -> bool {
    let n = adj.len();
    let ncomp = comp.iter().copied().filter(|&c| c != usize::MAX).max().map_or(0, |m| m + 1);
    let mut cyclic = vec![false; ncomp];
    for v in 0..n {
        for &w in &adj[v] {
            if comp[w] == comp[v] {
                cyclic[comp[v]] = true;
            }
        }
    }
    (0..n).any(|v| pred(v) && cyclic[comp[v]])
}

/// Explicit finite automaton for tests and small fixed pipelines.
pub struct ExplicitAutomaton<L> {
    priorities: Vec<Priority>,
    transitions: HashMap<(StateId, L), Vec<StateId>>,
}

impl<L: Clone + Eq + Hash + Send + Sync + 'static> ExplicitAutomaton<L> {
    pub fn builder(n_states: usize) -> ExplicitBuilder<L> {
        ExplicitBuilder {
            priorities: vec![1; n_states],
            transitions: HashMap::new(),
        }
    }
}

pub struct ExplicitBuilder<L> {
    priorities: Vec<Priority>,
    transitions: HashMap<(StateId, L), Vec<StateId>>,
}

impl<L: Clone + Eq + Hash + Send + Sync + 'static> ExplicitBuilder<L> {
    pub fn priority(mut self, q: StateId, p: Priority) -> Self {
        self.priorities[q as usize] = p;
        self
    }

    pub fn edge(mut self, q: StateId, letter: L, q2: StateId) -> Self {
        self.transitions.entry((q, letter)).or_default().push(q2);
        self
    }

    pub fn build(self, kind: AcceptanceKind, initial: StateId) -> Automaton<L> {
        let logic = ExplicitAutomaton {
            priorities: self.priorities,
            transitions: self.transitions,
        };
        Automaton::new(kind, initial, Arc::new(logic))
    }
}

impl<L: Clone + Eq + Hash + Send + Sync> AutomatonLogic<L> for ExplicitAutomaton<L> {
    fn successors(&self, q: StateId, letter: &L) -> Vec<StateId> {
        self.transitions.get(&(q, letter.clone())).cloned().unwrap_or_default()
    }

    fn priority(&self, q: StateId) -> Priority {
        self.priorities[q as usize]
    }

    fn state_bound(&self) -> Option<u64> {
        Some(self.priorities.len() as u64)
    }
}

/// Interner shared by the on-demand constructions.
pub(crate) struct StatePool<T: Clone + Eq + Hash> {
    inner: Mutex<(HashMap<T, StateId>, Vec<T>)>,
}

impl<T: Clone + Eq + Hash> StatePool<T> {
    pub fn new() -> Self {
        StatePool { inner: Mutex::new((HashMap::new(), Vec::new())) }
    }

    pub fn intern(&self, item: T) -> StateId {
        let mut g = self.inner.lock().unwrap();
        if let Some(&id) = g.0.get(&item) {
            return id;
        }
        let id = g.1.len() as StateId;
        g.1.push(item.clone());
        g.0.insert(item, id);
        id
    }

    pub fn get(&self, id: StateId) -> T {
        self.inner.lock().unwrap().1[id as usize].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// DBA over {a=0, b=1} accepting "infinitely many a".
    fn inf_a_dba() -> Automaton<u8> {
        ExplicitAutomaton::builder(2)
            .priority(0, 2)
            .priority(1, 1)
            .edge(0, 0, 0)
            .edge(0, 1, 1)
            .edge(1, 0, 0)
            .edge(1, 1, 1)
            .build(AcceptanceKind::Dba, 0)
    }

    #[test]
    fn deterministic_lasso_run_evaluates_the_cycle() {
        let a = inf_a_dba();
        assert!(a.lasso_accepts(&Lasso::new(vec![], vec![0])));
        assert!(a.lasso_accepts(&Lasso::new(vec![1, 1], vec![0, 1])));
        assert!(!a.lasso_accepts(&Lasso::new(vec![0, 0, 0], vec![1])));
    }

    #[test]
    fn stuck_deterministic_run_rejects() {
        let a = ExplicitAutomaton::builder(1)
            .priority(0, 2)
            .edge(0, 0u8, 0)
            .build(AcceptanceKind::Dba, 0);
        assert!(a.lasso_accepts(&Lasso::new(vec![], vec![0])));
        assert!(!a.lasso_accepts(&Lasso::new(vec![], vec![1])));
    }

    #[test]
    fn nondeterministic_buchi_needs_final_on_cycle() {
        // NBA over {a=0,b=1} for "finitely many b": guess the last b.
        let a = ExplicitAutomaton::builder(2)
            .priority(0, 1)
            .priority(1, 2)
            .edge(0, 0, 0)
            .edge(0, 1, 0)
            .edge(0, 0, 1)
            .edge(1, 0, 1)
            .build(AcceptanceKind::Nba, 0);
        assert!(a.lasso_accepts(&Lasso::new(vec![1, 1], vec![0])));
        assert!(!a.lasso_accepts(&Lasso::new(vec![], vec![0, 1])));
    }

    #[test]
    fn co_buchi_cycle_must_avoid_non_final() {
        // NcoBA accepting words that are eventually all a.
        let a = ExplicitAutomaton::builder(2)
            .priority(0, 1)
            .priority(1, 0)
            .edge(0, 0, 0)
            .edge(0, 1, 0)
            .edge(0, 0, 1)
            .edge(1, 0, 1)
            .build(AcceptanceKind::NcoBa, 0);
        assert!(a.lasso_accepts(&Lasso::new(vec![1], vec![0])));
        assert!(!a.lasso_accepts(&Lasso::new(vec![], vec![0, 1])));
    }

    #[test]
    fn scc_handles_nested_cycles() {
        // 0 -> 1 -> 2 -> 0, 3 isolated, 4 -> 4
        let adj = vec![vec![1], vec![2], vec![0], vec![], vec![4]];
        let comp = scc(&adj);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[1], comp[2]);
        assert_ne!(comp[0], comp[3]);
        assert!(has_cyclic_component_with(&adj, &comp, |v| v == 4));
        assert!(!has_cyclic_component_with(&adj, &comp, |v| v == 3));
    }
}
