//! Strategy-enumeration oracle for small parity games: a node is winning for
//! player 0 iff some positional player-0 strategy makes every cycle reachable
//! from it even-dominated. Relies on positional determinacy.

use super::{Owner, ParityGame};
use crate::automata::scc;

pub const DEFAULT_BRUTE_BOUND: usize = 12;

/// Winner per node, or `None` when the game exceeds the node bound.
pub fn brute_force_solve(g: &ParityGame, bound: usize) -> Option<Vec<Owner>> {
    let n = g.nodes.len();
    if n > bound {
        return None;
    }
    let p0_nodes: Vec<usize> =
        (0..n).filter(|&v| g.nodes[v].owner == Owner::Zero).collect();
    let mut win0 = vec![false; n];
    let mut picks = vec![0usize; p0_nodes.len()];
    loop {
        // fixed strategy: player-0 nodes keep a single successor
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|v| match p0_nodes.iter().position(|&u| u == v) {
                Some(slot) => vec![g.nodes[v].succs[picks[slot]]],
                None => g.nodes[v].succs.clone(),
            })
            .collect();
        for v in 0..n {
            if !win0[v] && all_reachable_cycles_even(g, &adj, v) {
                win0[v] = true;
            }
        }
        // advance the strategy counter
        let mut slot = 0;
        loop {
            if slot == picks.len() {
                let winner = (0..n)
                    .map(|v| if win0[v] { Owner::Zero } else { Owner::One })
                    .collect();
                return Some(winner);
            }
            picks[slot] += 1;
            if picks[slot] < g.nodes[p0_nodes[slot]].succs.len() {
                break;
            }
            picks[slot] = 0;
            slot += 1;
        }
    }
}

fn all_reachable_cycles_even(g: &ParityGame, adj: &[Vec<usize>], from: usize) -> bool {
    let n = adj.len();
    let mut reach = vec![false; n];
    let mut stack = vec![from];
    reach[from] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !reach[w] {
                reach[w] = true;
                stack.push(w);
            }
        }
    }
    // a reachable cycle with odd maximum exists iff for some odd p, the
    // subgraph of reachable nodes with priority <= p has a cycle through a
    // priority-p node
    let mut odd_prios: Vec<u32> =
        (0..n).filter(|&v| reach[v]).map(|v| g.nodes[v].priority).filter(|p| p % 2 == 1).collect();
    odd_prios.sort();
    odd_prios.dedup();
    for p in odd_prios {
        let keep: Vec<bool> =
            (0..n).map(|v| reach[v] && g.nodes[v].priority <= p).collect();
        let sub: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                if keep[v] {
                    adj[v].iter().copied().filter(|&w| keep[w]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let comp = scc(&sub);
        let mut cyclic = std::collections::HashSet::new();
        for (v, out) in sub.iter().enumerate() {
            for &w in out {
                if comp[v] == comp[w] {
                    cyclic.insert(comp[v]);
                }
            }
        }
        let bad = (0..n).any(|v| {
            keep[v] && g.nodes[v].priority == p && cyclic.contains(&comp[v])
        });
        if bad {
            return false;
        }
    }
    true
}
