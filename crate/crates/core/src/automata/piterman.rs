//! NBA determinization into a DPA via compact Safra trees with dynamic node
//! renaming. Fresh nodes are named above every live name and names are
//! re-compacted to {1..#nodes} after each transition, so a persistent node's
//! name only ever decreases and parents stay below their children. The event
//! on the smallest name decides each transition's priority: the death of
//! name e beats a green event on f iff e <= f, and an event-free transition
//! is weaker than everything. Max-parity encoding relative to the name cap
//! N: death(e) -> 2(N-e)+3, green(f) -> 2(N-f)+2, no event -> 1. The death
//! of the root (name 1) leads to the absorbing empty tree and so occurs at
//! most once per run; it shares the value of death(2) to save a priority.

use super::{AcceptanceKind, Automaton, AutomatonLogic, Priority, StateId, StatePool};
use std::hash::Hash;
use std::sync::Arc;

const DEFAULT_NAME_CAP: u64 = 4096;
const UNNAMED: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Node {
    name: u32,
    label: Vec<StateId>,
    children: Vec<Node>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct TreeState {
    root: Option<Node>,
    prio: Priority,
}

struct PitermanLogic<L> {
    inner: Automaton<L>,
    cap: u32,
    pool: StatePool<Arc<TreeState>>,
}

impl<L: Clone + Eq + Hash> PitermanLogic<L> {
    fn neutral(&self) -> Priority {
        1
    }

    fn death(&self, name: u32) -> Priority {
        let name = if name == 1 && self.cap >= 2 { 2 } else { name };
        2 * (self.cap - name) + 3
    }

    fn green(&self, name: u32) -> Priority {
        2 * (self.cap - name) + 2
    }

    fn post(&self, set: &[StateId], letter: &L) -> Vec<StateId> {
        let mut out: Vec<StateId> = set
            .iter()
            .flat_map(|&s| self.inner.successors(s, letter))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn transition(&self, tree: &TreeState, letter: &L) -> TreeState {
        let Some(root) = &tree.root else {
            return TreeState { root: None, prio: self.neutral() };
        };
        let mut root = root.clone();
        let mut min_dead: Option<u32> = None;
        let mut min_green: Option<u32> = None;

        self.move_and_spawn(&mut root, letter);
        let mut claimed = Vec::new();
        horizontal_merge(&mut root, &mut claimed);
        let alive = remove_empty(&mut root, &mut min_dead);
        let root = if alive {
            let mut root = root;
            vertical_merge(&mut root, &mut min_green);
            name_new_nodes(&mut root);
            compact_names(&mut root);
            Some(root)
        } else {
            min_dead = Some(min_name(&root).min(min_dead.unwrap_or(u32::MAX)));
            None
        };

        let mut prio = self.neutral();
        if let Some(e) = min_dead {
            prio = prio.max(self.death(e));
        }
        if let Some(f) = min_green {
            prio = prio.max(self.green(f));
        }
        if let Some(r) = &root {
            assert!(
                max_name(r) <= self.cap,
                "Safra tree name overflow: raise the determinization cap"
            );
        }
        TreeState { root, prio }
    }

    /// Subset-move every label, then give each original node a youngest
    /// child holding its final-set part.
    fn move_and_spawn(&self, node: &mut Node, letter: &L) {
        node.label = self.post(&node.label, letter);
        for child in &mut node.children {
            self.move_and_spawn(child, letter);
        }
        let finals: Vec<StateId> = node
            .label
            .iter()
            .copied()
            .filter(|&s| self.inner.is_final(s))
            .collect();
        if !finals.is_empty() {
            node.children.push(Node { name: UNNAMED, label: finals, children: Vec::new() });
        }
    }
}

/// Keep each state only in the oldest subtree claiming it.
fn horizontal_merge(node: &mut Node, claimed: &mut Vec<StateId>) {
    node.label.retain(|s| !claimed.contains(s));
    let mut claimed_here: Vec<StateId> = Vec::new();
    for child in &mut node.children {
        // states owned by older siblings are gone from this whole subtree
        let mut barrier: Vec<StateId> = claimed.clone();
        barrier.extend_from_slice(&claimed_here);
        horizontal_merge_subtree(child, &barrier);
        claimed_here.extend_from_slice(&child.label);
    }
    claimed.extend_from_slice(&claimed_here);
}

fn horizontal_merge_subtree(node: &mut Node, barrier: &[StateId]) {
    node.label.retain(|s| !barrier.contains(s));
    let mut claimed_here: Vec<StateId> = Vec::new();
    for child in &mut node.children {
        let mut b: Vec<StateId> = barrier.to_vec();
        b.extend_from_slice(&claimed_here);
        horizontal_merge_subtree(child, &b);
        claimed_here.extend_from_slice(&child.label);
    }
}

/// Drop empty nodes bottom-up, recording the smallest dying name.
/// Returns false when the node itself dies.
fn remove_empty(node: &mut Node, min_dead: &mut Option<u32>) -> bool {
    node.children.retain_mut(|child| {
        let alive = remove_empty(child, min_dead);
        if !alive && child.name != UNNAMED {
            let e = (*min_dead).unwrap_or(u32::MAX).min(child.name);
            *min_dead = Some(e);
        }
        alive
    });
    !node.label.is_empty()
}

/// A node whose label is covered by its children is green: its descendants
/// are removed (their deaths are dominated by the green and not recorded).
fn vertical_merge(node: &mut Node, min_green: &mut Option<u32>) {
    if !node.children.is_empty() {
        let mut covered: Vec<StateId> =
            node.children.iter().flat_map(|c| c.label.iter().copied()).collect();
        covered.sort();
        covered.dedup();
        if covered == node.label {
            node.children.clear();
            if node.name != UNNAMED {
                let f = (*min_green).unwrap_or(u32::MAX).min(node.name);
                *min_green = Some(f);
            }
            return;
        }
    }
    for child in &mut node.children {
        vertical_merge(child, min_green);
    }
}

fn collect_names(node: &Node, out: &mut Vec<u32>) {
    if node.name != UNNAMED {
        out.push(node.name);
    }
    for c in &node.children {
        collect_names(c, out);
    }
}

fn min_name(node: &Node) -> u32 {
    let mut names = Vec::new();
    collect_names(node, &mut names);
    names.into_iter().min().unwrap_or(UNNAMED)
}

fn max_name(node: &Node) -> u32 {
    let mut names = Vec::new();
    collect_names(node, &mut names);
    names.into_iter().max().unwrap_or(0)
}

/// Fresh nodes are named above every live name in DFS order; the subsequent
/// compaction keeps the name space dense while preserving the order, so
/// parents always carry smaller names than their children.
fn name_new_nodes(root: &mut Node) {
    let mut next = max_name(root) + 1;
    assign_names(root, &mut next);
}

fn assign_names(node: &mut Node, next: &mut u32) {
    if node.name == UNNAMED {
        node.name = *next;
        *next += 1;
    }
    for c in &mut node.children {
        assign_names(c, next);
    }
}

/// Order-preserving renaming onto {1..k}.
fn compact_names(root: &mut Node) {
    let mut names = Vec::new();
    collect_names(root, &mut names);
    names.sort();
    rename(root, &names);
}

fn rename(node: &mut Node, sorted: &[u32]) {
    node.name = sorted.binary_search(&node.name).unwrap() as u32 + 1;
    for c in &mut node.children {
        rename(c, sorted);
    }
}

impl<L: Clone + Eq + Hash + Send + Sync + 'static> AutomatonLogic<L> for PitermanLogic<L> {
    fn successors(&self, q: StateId, letter: &L) -> Vec<StateId> {
        let tree = self.pool.get(q);
        let next = self.transition(&tree, letter);
        vec![self.pool.intern(Arc::new(next))]
    }

    fn priority(&self, q: StateId) -> Priority {
        self.pool.get(q).prio
    }

    fn state_label(&self, q: StateId) -> String {
        fn render(n: &Node, inner: &dyn Fn(StateId) -> String, out: &mut String) {
            out.push_str(&format!(
                "{}:{{{}}}",
                n.name,
                n.label.iter().map(|s| inner(*s)).collect::<Vec<_>>().join(",")
            ));
            if !n.children.is_empty() {
                out.push('[');
                for (i, c) in n.children.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    render(c, inner, out);
                }
                out.push(']');
            }
        }
        let tree = self.pool.get(q);
        match &tree.root {
            None => "empty".to_string(),
            Some(r) => {
                let mut s = String::new();
                let inner = |id: StateId| self.inner.state_label(id);
                render(r, &inner, &mut s);
                s
            }
        }
    }

    fn state_bound(&self) -> Option<u64> {
        self.inner
            .state_bound()
            .map(|n| n.saturating_pow(2 * n.min(16) as u32 + 2))
    }
}

/// Determinize an NBA into a language-equivalent DPA. The name cap (an upper
/// bound on live NBA states, hence tree names) fixes the priority encoding;
/// it defaults to the explicit state count when the input knows one.
pub fn determinize_nba_capped<L: Clone + Eq + Hash + Send + Sync + 'static>(
    a: &Automaton<L>,
    cap: u64,
) -> Automaton<L> {
    assert_eq!(a.kind(), AcceptanceKind::Nba);
    let cap = u32::try_from(cap.max(1)).expect("name cap out of range");
    let pool = StatePool::new();
    let root = Node { name: 1, label: vec![a.initial()], children: Vec::new() };
    let initial = pool.intern(Arc::new(TreeState { root: Some(root), prio: 3 }));
    let logic = PitermanLogic { inner: a.clone(), cap, pool };
    Automaton::new(AcceptanceKind::Dpa, initial, Arc::new(logic))
}

pub fn determinize_nba<L: Clone + Eq + Hash + Send + Sync + 'static>(
    a: &Automaton<L>,
) -> Automaton<L> {
    let cap = a.state_bound().unwrap_or(DEFAULT_NAME_CAP);
    determinize_nba_capped(a, cap)
}

#[cfg(test)]
mod tests {
    use super::super::{ExplicitAutomaton, Lasso};
    use super::*;

    /// NBA over {a=0,b=1} for "finitely many b".
    fn fin_b_nba() -> Automaton<u8> {
        ExplicitAutomaton::builder(2)
            .priority(0, 1)
            .priority(1, 2)
            .edge(0, 0, 0)
            .edge(0, 1, 0)
            .edge(0, 0, 1)
            .edge(1, 0, 1)
            .build(AcceptanceKind::Nba, 0)
    }

    #[test]
    fn determinization_of_finitely_many_b() {
        let dpa = determinize_nba(&fin_b_nba());
        assert!(dpa.lasso_accepts(&Lasso::new(vec![], vec![0])));
        assert!(dpa.lasso_accepts(&Lasso::new(vec![1, 1, 1], vec![0, 0])));
        assert!(!dpa.lasso_accepts(&Lasso::new(vec![], vec![0, 1])));
        assert!(!dpa.lasso_accepts(&Lasso::new(vec![0], vec![1])));
    }

    #[test]
    fn determinization_of_empty_language_rejects_everything() {
        // final state unreachable from any cycle
        let a = ExplicitAutomaton::builder(2)
            .priority(0, 1)
            .priority(1, 2)
            .edge(0, 0u8, 0)
            .edge(1, 0u8, 0)
            .build(AcceptanceKind::Nba, 0);
        let dpa = determinize_nba(&a);
        assert!(!dpa.lasso_accepts(&Lasso::new(vec![], vec![0])));
        assert!(!dpa.lasso_accepts(&Lasso::new(vec![0, 0], vec![0])));
    }

    #[test]
    fn determinization_preserves_deterministic_input_language() {
        // DBA "infinitely many a" viewed as an NBA
        let a = ExplicitAutomaton::builder(2)
            .priority(0, 2)
            .priority(1, 1)
            .edge(0, 0u8, 0)
            .edge(0, 1u8, 1)
            .edge(1, 0u8, 0)
            .edge(1, 1u8, 1)
            .build(AcceptanceKind::Nba, 0);
        let dpa = determinize_nba(&a);
        for (w, expect) in [
            (Lasso::new(vec![], vec![0]), true),
            (Lasso::new(vec![], vec![1]), false),
            (Lasso::new(vec![0], vec![1, 0]), true),
            (Lasso::new(vec![0, 0], vec![1, 1]), false),
        ] {
            assert_eq!(dpa.lasso_accepts(&w), expect, "{w:?}");
        }
    }
}
