//! Test-support oracles over play lassos: exhaustive trace/thread
//! enumeration on the block and formula connection graphs, independent of
//! the acceptance automata they are used to check.

use crate::automata::{scc, Automaton, Lasso, StateId};
use crate::formula::Kind;
use crate::game::{
    block_descendants, ctl_formula_descendants, ctl_is_consistent, ctl_successors,
    formula_descendants, successors, Block, ConfigId, CtlLetter, PlayLetter, Problem, Quant,
    SetId,
};
use std::collections::HashMap;

/// An ultimately periodic play: `configs[i] --letters[i]--> configs[i+1]`,
/// with `configs[len] == configs[stem_len]`.
#[derive(Debug, Clone)]
pub struct PlayLasso {
    pub configs: Vec<ConfigId>,
    pub letters: Vec<PlayLetter>,
    pub stem_len: usize,
}

impl PlayLasso {
    pub fn word(&self) -> Lasso<PlayLetter> {
        Lasso::new(
            self.letters[..self.stem_len].to_vec(),
            self.letters[self.stem_len..].to_vec(),
        )
    }

    fn next_pos(&self, pos: usize) -> usize {
        if pos + 1 < self.letters.len() {
            pos + 1
        } else {
            self.stem_len
        }
    }
}

#[derive(Debug, Clone)]
pub struct CtlPlayLasso {
    pub configs: Vec<SetId>,
    pub letters: Vec<CtlLetter>,
    pub stem_len: usize,
}

impl CtlPlayLasso {
    pub fn word(&self) -> Lasso<CtlLetter> {
        Lasso::new(
            self.letters[..self.stem_len].to_vec(),
            self.letters[self.stem_len..].to_vec(),
        )
    }
}

/// Depth-first enumeration of infinite plays of the CTL* game, as lassos.
/// Only consistent configurations are entered, matching the game's node set.
pub fn enumerate_play_lassos(
    problem: &Problem,
    max_visited: usize,
    max_lassos: usize,
) -> Vec<PlayLasso> {
    let mut lassos = Vec::new();
    let mut visited = 0usize;
    let mut path: Vec<(ConfigId, PlayLetter)> = Vec::new();
    // stack of (config, pending moves)
    let init = problem.initial_configuration();
    let mut stack = vec![(init, successors(problem, init).moves, 0usize)];
    while let Some((cfg, moves, idx)) = stack.last().cloned() {
        if lassos.len() >= max_lassos || visited >= max_visited {
            break;
        }
        if idx >= moves.len() {
            stack.pop();
            path.pop();
            continue;
        }
        stack.last_mut().unwrap().2 += 1;
        let (letter, succ) = moves[idx];
        if !problem.is_consistent(succ) {
            continue;
        }
        visited += 1;
        // the path stores (config, letter-taken-from-it); the stack mirrors
        // it with one extra entry for the current configuration
        let closes_at = if path.is_empty() && stack[0].0 == succ {
            Some(0)
        } else {
            path.iter().position(|&(c, _)| c == succ)
        };
        let closes_at = closes_at.or((stack.last().unwrap().0 == succ).then_some(stack.len() - 1));
        if let Some(start) = closes_at {
            let mut configs: Vec<ConfigId> = stack.iter().map(|(c, _, _)| *c).collect();
            let mut letters: Vec<PlayLetter> = path.iter().map(|&(_, l)| l).collect();
            letters.push(letter);
            configs.push(succ);
            lassos.push(PlayLasso { configs, letters, stem_len: start });
            continue;
        }
        path.push((cfg, letter));
        let next_moves = successors(problem, succ).moves;
        if next_moves.is_empty() {
            path.pop();
            continue;
        }
        stack.push((succ, next_moves, 0));
    }
    lassos
}

/// Depth-first enumeration of infinite CTL plays, as lassos.
pub fn enumerate_ctl_play_lassos(
    problem: &Problem,
    max_visited: usize,
    max_lassos: usize,
) -> Vec<CtlPlayLasso> {
    let mut lassos = Vec::new();
    let mut visited = 0usize;
    let mut path: Vec<(SetId, CtlLetter)> = Vec::new();
    let init = crate::game::ctl_initial_configuration(problem);
    let mut stack = vec![(init, ctl_successors(problem, init).moves, 0usize)];
    while let Some((cfg, moves, idx)) = stack.last().cloned() {
        if lassos.len() >= max_lassos || visited >= max_visited {
            break;
        }
        if idx >= moves.len() {
            stack.pop();
            path.pop();
            continue;
        }
        stack.last_mut().unwrap().2 += 1;
        let (letter, succ) = moves[idx];
        if !ctl_is_consistent(problem, succ) {
            continue;
        }
        visited += 1;
        let closes_at = path
            .iter()
            .position(|&(c, _)| c == succ)
            .or((stack.last().unwrap().0 == succ).then_some(stack.len() - 1));
        if let Some(start) = closes_at {
            let mut configs: Vec<SetId> = stack.iter().map(|(c, _, _)| *c).collect();
            let mut letters: Vec<CtlLetter> = path.iter().map(|&(_, l)| l).collect();
            letters.push(letter);
            configs.push(succ);
            lassos.push(CtlPlayLasso { configs, letters, stem_len: start });
            continue;
        }
        path.push((cfg, letter));
        let next_moves = ctl_successors(problem, succ).moves;
        if next_moves.is_empty() {
            path.pop();
            continue;
        }
        stack.push((succ, next_moves, 0));
    }
    lassos
}

/// Nodes of the formula-position graph of a play lasso.
type FNode = (usize, Block, crate::formula::FormulaId);

fn formula_graph(problem: &Problem, lasso: &PlayLasso) -> (Vec<FNode>, Vec<Vec<usize>>) {
    let mut index: HashMap<FNode, usize> = HashMap::new();
    let mut nodes: Vec<FNode> = Vec::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let root = problem.config(lasso.configs[0]);
    assert_eq!(root.blocks.len(), 1, "lassos must start at the initial configuration");
    let root_block = root.blocks[0];
    let start_formulas: Vec<_> = problem.set(root_block.1).to_vec();
    let mut queue = std::collections::VecDeque::new();
    for f in start_formulas {
        let n = (0usize, root_block, f);
        index.insert(n, nodes.len());
        queue.push_back(nodes.len());
        nodes.push(n);
        adj.push(Vec::new());
    }
    while let Some(i) = queue.pop_front() {
        let (pos, block, f) = nodes[i];
        let letter = lasso.letters[pos];
        let next = lasso.next_pos(pos);
        for (dq, db, _) in block_descendants(problem, &letter, block) {
            for f2 in formula_descendants(problem, &letter, block, f, (dq, db)) {
                let n = (next, (dq, db), f2);
                let j = *index.entry(n).or_insert_with(|| {
                    nodes.push(n);
                    adj.push(Vec::new());
                    queue.push_back(nodes.len() - 1);
                    nodes.len() - 1
                });
                adj[i].push(j);
            }
        }
    }
    (nodes, adj)
}

/// Exact: does the play lasso contain a bad E-trace (an eventually-all-E
/// trace with a U-thread)? A witness is a reachable cycle in the formula
/// connection graph that stays within E-blocks and passes a U-formula.
pub fn bad_e_trace_exists(problem: &Problem, lasso: &PlayLasso) -> bool {
    let (nodes, adj) = formula_graph(problem, lasso);
    let restricted: Vec<Vec<usize>> = adj
        .iter()
        .enumerate()
        .map(|(i, out)| {
            if nodes[i].1 .0 == Quant::E {
                out.iter().copied().filter(|&j| nodes[j].1 .0 == Quant::E).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let comp = scc(&restricted);
    let mut cyclic = vec![false; nodes.len().max(1)];
    for (i, out) in restricted.iter().enumerate() {
        for &j in out {
            if comp[i] == comp[j] {
                cyclic[i] = true;
            }
        }
    }
    // mark whole components cyclic
    let mut comp_cyclic: HashMap<usize, bool> = HashMap::new();
    for i in 0..nodes.len() {
        if cyclic[i] {
            comp_cyclic.insert(comp[i], true);
        }
    }
    (0..nodes.len()).any(|i| {
        matches!(problem.table.kind(nodes[i].2), Kind::Until(..))
            && *comp_cyclic.get(&comp[i]).unwrap_or(&false)
    })
}

/// A candidate A-trace on a lasso: the block at each trace position, with
/// the position in the lasso it sits at.
#[derive(Debug, Clone)]
pub struct TraceWitness {
    pub positions: Vec<(usize, Block)>,
    pub cycle_start: usize,
}

/// Exact check: is the given eventually-periodic trace an A-trace without an
/// R-thread? The thread search runs on the formula graph along the trace.
pub fn trace_is_bad_a(problem: &Problem, lasso: &PlayLasso, w: &TraceWitness) -> bool {
    // all blocks on the cycle must be A-quantified
    if w.positions[w.cycle_start..].iter().any(|(_, b)| b.0 != Quant::A) {
        return false;
    }
    // connectivity of consecutive positions
    let len = w.positions.len();
    for i in 0..len {
        let (pos, block) = w.positions[i];
        let (npos, nblock) = if i + 1 < len {
            w.positions[i + 1]
        } else {
            w.positions[w.cycle_start]
        };
        assert_eq!(lasso.next_pos(pos), npos, "trace positions must be consecutive");
        let ok = block_descendants(problem, &lasso.letters[pos], block)
            .iter()
            .any(|&(q, s, _)| (q, s) == nblock);
        if !ok {
            return false;
        }
    }
    // threads inside the trace: formula graph over trace indices
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut nodes: Vec<(usize, crate::formula::FormulaId)> = Vec::new();
    let mut index: HashMap<(usize, crate::formula::FormulaId), usize> = HashMap::new();
    for (ti, (_, block)) in w.positions.iter().enumerate() {
        for &f in problem.set(block.1).iter() {
            index.insert((ti, f), nodes.len());
            nodes.push((ti, f));
            adj.push(Vec::new());
        }
    }
    for i in 0..nodes.len() {
        let (ti, f) = nodes[i];
        let (pos, block) = w.positions[ti];
        let tn = if ti + 1 < len { ti + 1 } else { w.cycle_start };
        let nblock = w.positions[tn].1;
        for f2 in formula_descendants(problem, &lasso.letters[pos], block, f, nblock) {
            if let Some(&j) = index.get(&(tn, f2)) {
                adj[i].push(j);
            }
        }
    }
    let comp = scc(&adj);
    let mut comp_cyclic: HashMap<usize, bool> = HashMap::new();
    for (i, out) in adj.iter().enumerate() {
        for &j in out {
            if comp[i] == comp[j] {
                comp_cyclic.insert(comp[i], true);
            }
        }
    }
    let has_r_thread = (0..nodes.len()).any(|i| {
        matches!(problem.table.kind(nodes[i].1), Kind::Release(..))
            && *comp_cyclic.get(&comp[i]).unwrap_or(&false)
    });
    !has_r_thread
}

/// Bounded search for a bad A-trace: all block paths from the root block,
/// closing a cycle in the A-region, up to `max_len` steps, each candidate
/// checked exactly with [`trace_is_bad_a`]. Sound but only complete up to
/// the bound: composite cycles longer than `max_len` are missed.
pub fn find_bad_a_trace(
    problem: &Problem,
    lasso: &PlayLasso,
    max_len: usize,
) -> Option<TraceWitness> {
    let root = problem.config(lasso.configs[0]);
    let root_block = root.blocks[0];
    let mut path: Vec<(usize, Block)> = vec![(0, root_block)];
    find_bad_a_rec(problem, lasso, &mut path, max_len)
}

fn find_bad_a_rec(
    problem: &Problem,
    lasso: &PlayLasso,
    path: &mut Vec<(usize, Block)>,
    max_len: usize,
) -> Option<TraceWitness> {
    let &(pos, block) = path.last().unwrap();
    let next = lasso.next_pos(pos);
    for (dq, db, _) in block_descendants(problem, &lasso.letters[pos], block) {
        let nb = (next, (dq, db));
        if let Some(start) = path.iter().position(|&p| p == nb) {
            let w = TraceWitness { positions: path[start..].to_vec(), cycle_start: 0 };
            // only cycles count; the stem is path[..start]
            let full = TraceWitness { positions: path.clone(), cycle_start: start };
            if w.positions.iter().all(|(_, b)| b.0 == Quant::A)
                && trace_is_bad_a(problem, lasso, &full)
            {
                return Some(full);
            }
            continue;
        }
        if path.len() >= max_len {
            continue;
        }
        path.push(nb);
        if let Some(w) = find_bad_a_rec(problem, lasso, path, max_len) {
            return Some(w);
        }
        path.pop();
    }
    None
}

/// Exact: does the CTL play lasso contain a U-thread? A witness is a
/// reachable cycle in the formula connection graph passing a quantified
/// U-formula.
pub fn ctl_u_thread_exists(problem: &Problem, lasso: &CtlPlayLasso) -> bool {
    let mut index: HashMap<(usize, crate::formula::FormulaId), usize> = HashMap::new();
    let mut nodes: Vec<(usize, crate::formula::FormulaId)> = Vec::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for &f in problem.set(lasso.configs[0]).iter() {
        index.insert((0, f), nodes.len());
        queue.push_back(nodes.len());
        nodes.push((0, f));
        adj.push(Vec::new());
    }
    let next_pos = |pos: usize| {
        if pos + 1 < lasso.letters.len() {
            pos + 1
        } else {
            lasso.stem_len
        }
    };
    while let Some(i) = queue.pop_front() {
        let (pos, f) = nodes[i];
        let letter = lasso.letters[pos];
        let np = next_pos(pos);
        let target = lasso.configs[pos + 1];
        for f2 in ctl_formula_descendants(problem, &letter, f, target) {
            let n = (np, f2);
            let j = *index.entry(n).or_insert_with(|| {
                nodes.push(n);
                adj.push(Vec::new());
                queue.push_back(nodes.len() - 1);
                nodes.len() - 1
            });
            adj[i].push(j);
        }
    }
    let comp = scc(&adj);
    let mut comp_cyclic: HashMap<usize, bool> = HashMap::new();
    for (i, out) in adj.iter().enumerate() {
        for &j in out {
            if comp[i] == comp[j] {
                comp_cyclic.insert(comp[i], true);
            }
        }
    }
    (0..nodes.len()).any(|i| {
        let quantified_until = match problem.table.kind(nodes[i].1) {
            Kind::Exists(b) | Kind::Forall(b) => {
                matches!(problem.table.kind(b), Kind::Until(..))
            }
            _ => false,
        };
        quantified_until && *comp_cyclic.get(&comp[i]).unwrap_or(&false)
    })
}

/// Extract the marked blocks of an accepting run of the bad-A NBA on the
/// lasso, as a trace witness for the exact checker. Returns `None` when the
/// NBA rejects.
pub fn bad_a_run_witness(
    nba: &Automaton<PlayLetter>,
    probe: &crate::winning::BadAProbe,
    lasso: &PlayLasso,
) -> Option<TraceWitness> {
    let word = lasso.word();
    let len = word.prefix.len() + word.cycle.len();
    let letter_at = |t: usize| -> PlayLetter {
        if t < word.prefix.len() {
            word.prefix[t]
        } else {
            word.cycle[t - word.prefix.len()]
        }
    };
    let next_t = |t: usize| if t + 1 < len { t + 1 } else { word.prefix.len() };
    // product graph
    let mut index: HashMap<(StateId, usize), usize> = HashMap::new();
    let mut nodes: Vec<(StateId, usize)> = Vec::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    index.insert((nba.initial(), 0), 0);
    nodes.push((nba.initial(), 0));
    adj.push(Vec::new());
    queue.push_back(0usize);
    while let Some(i) = queue.pop_front() {
        let (q, t) = nodes[i];
        for q2 in nba.successors(q, &letter_at(t)) {
            let n = (q2, next_t(t));
            let j = *index.entry(n).or_insert_with(|| {
                nodes.push(n);
                adj.push(Vec::new());
                queue.push_back(nodes.len() - 1);
                nodes.len() - 1
            });
            adj[i].push(j);
        }
    }
    let comp = scc(&adj);
    let mut comp_cyclic: HashMap<usize, bool> = HashMap::new();
    for (i, out) in adj.iter().enumerate() {
        for &j in out {
            if comp[i] == comp[j] {
                comp_cyclic.insert(comp[i], true);
            }
        }
    }
    let target = (0..nodes.len())
        .find(|&i| nba.priority(nodes[i].0) == 2 && *comp_cyclic.get(&comp[i]).unwrap_or(&false))?;
    // stem: path 0 -> target; cycle: target -> target within its component
    let stem = bfs_path(&adj, 0, target, None)?;
    let cycle = {
        let mut best: Option<Vec<usize>> = None;
        for &j in &adj[target] {
            if comp[j] == comp[target] {
                if j == target {
                    best = Some(vec![target]);
                    break;
                }
                if let Some(mut p) = bfs_path(&adj, j, target, Some((&comp, comp[target]))) {
                    p.insert(0, target);
                    p.pop();
                    best = Some(p);
                    break;
                }
            }
        }
        best?
    };
    // Decode: drop the waiting prefix, keep (lasso position, marked block).
    let mut positions = Vec::new();
    let mut cycle_start = None;
    for (k, &i) in stem.iter().chain(cycle.iter()).enumerate() {
        let (q, t) = nodes[i];
        if k >= stem.len() && cycle_start.is_none() {
            cycle_start = Some(positions.len());
        }
        match probe.tracked_block(q) {
            Some(block) => positions.push((t, block)),
            None => {
                debug_assert!(k < stem.len(), "accepting cycles never wait");
            }
        }
    }
    let cycle_start = cycle_start?;
    if positions.is_empty() {
        return None;
    }
    Some(TraceWitness { positions, cycle_start })
}

fn bfs_path(
    adj: &[Vec<usize>],
    from: usize,
    to: usize,
    within: Option<(&[usize], usize)>,
) -> Option<Vec<usize>> {
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(from);
    prev.insert(from, from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in &adj[v] {
            if let Some((comp, c)) = within {
                if comp[w] != c {
                    continue;
                }
            }
            prev.entry(w).or_insert_with(|| {
                queue.push_back(w);
                v
            });
        }
    }
    None
}

