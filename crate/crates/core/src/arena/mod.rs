//! The satisfiability parity/Büchi game: on-the-fly product of the
//! configuration graph with the acceptance automaton, plus solvers.

mod brute;
mod buchi;
mod zielonka;

pub use brute::{brute_force_solve, DEFAULT_BRUTE_BOUND};
pub use buchi::solve_buchi;
pub use zielonka::solve_parity;

use crate::automata::{Automaton, StateId};
use crate::formula::Kind;
use crate::game::{
    ctl_initial_configuration, ctl_is_consistent, ctl_successors, successors, ConfigId,
    CtlEngine, CtlLetter, CtlStarEngine, Expansion, ExpansionKind, Owner, PlayLetter, SetId,
};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;
use thiserror::Error;

#[derive(Debug, Clone)]
pub struct NodeData {
    pub owner: Owner,
    pub priority: u32,
    pub succs: Vec<usize>,
}

/// A total parity game. Nodes 0 and 1 are the win_0/win_1 sinks realizing
/// the dead-end convention; Büchi games restrict priorities to {0,1,2}.
#[derive(Debug, Clone)]
pub struct ParityGame {
    pub nodes: Vec<NodeData>,
    pub initial: usize,
}

pub const WIN0: usize = 0;
pub const WIN1: usize = 1;

impl ParityGame {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().map(|n| n.succs.len()).sum()
    }

    pub fn priorities(&self) -> Vec<u32> {
        let mut ps: Vec<u32> = self.nodes.iter().map(|n| n.priority).collect();
        ps.sort();
        ps.dedup();
        ps
    }

    pub fn is_buchi(&self) -> bool {
        self.nodes.iter().all(|n| n.priority <= 2)
    }
}

/// Positional strategies and the winner partition of a solved game.
#[derive(Debug, Clone)]
pub struct Strategy {
    pub winner: Vec<Owner>,
    /// The winning owner's move at each node they win and own.
    pub choice: Vec<Option<usize>>,
}

impl Strategy {
    pub fn player0_wins(&self, v: usize) -> bool {
        self.winner[v] == Owner::Zero
    }
}

/// Expansion source driving the product construction, implemented by the
/// CTL* and CTL rule systems.
pub trait RuleEngine {
    type Letter: Clone + Eq + Hash;
    type Config: Copy + Eq + Hash;

    fn initial(&self) -> Self::Config;
    fn expand(&self, c: Self::Config) -> Expansion<Self::Letter, Self::Config>;
    fn is_consistent(&self, c: Self::Config) -> bool;
    fn label(&self, c: Self::Config) -> String;
    fn positive_props(&self, c: Self::Config) -> Vec<String>;
}

impl RuleEngine for CtlStarEngine<'_> {
    type Letter = PlayLetter;
    type Config = ConfigId;

    fn initial(&self) -> ConfigId {
        self.problem.initial_configuration()
    }

    fn expand(&self, c: ConfigId) -> Expansion<PlayLetter, ConfigId> {
        successors(self.problem, c)
    }

    fn is_consistent(&self, c: ConfigId) -> bool {
        self.problem.is_consistent(c)
    }

    fn label(&self, c: ConfigId) -> String {
        self.problem.dump_configuration(c)
    }

    fn positive_props(&self, c: ConfigId) -> Vec<String> {
        let data = self.problem.config(c);
        let mut props = Vec::new();
        for &l in &data.literals {
            if let Kind::Prop(p) = self.problem.table.kind(l) {
                props.push(self.problem.table.prop_name(p).to_string());
            }
        }
        props.sort();
        props
    }
}

impl RuleEngine for CtlEngine<'_> {
    type Letter = CtlLetter;
    type Config = SetId;

    fn initial(&self) -> SetId {
        ctl_initial_configuration(self.problem)
    }

    fn expand(&self, c: SetId) -> Expansion<CtlLetter, SetId> {
        ctl_successors(self.problem, c)
    }

    fn is_consistent(&self, c: SetId) -> bool {
        ctl_is_consistent(self.problem, c)
    }

    fn label(&self, c: SetId) -> String {
        self.problem.table.display_set(&self.problem.set(c))
    }

    fn positive_props(&self, c: SetId) -> Vec<String> {
        let mut props = Vec::new();
        for &f in self.problem.set(c).iter() {
            if let Kind::Prop(p) = self.problem.table.kind(f) {
                props.push(self.problem.table.prop_name(p).to_string());
            }
        }
        props.sort();
        props
    }
}

/// Product node bookkeeping kept alongside the game for model extraction,
/// statistics and export.
pub struct BuiltGame<C> {
    pub game: ParityGame,
    /// Per node: the (configuration, acceptance state) pair; sinks have none.
    pub product: Vec<Option<(C, StateId)>>,
    pub expansion_kinds: Vec<Option<ExpansionKind>>,
    pub acc_states: usize,
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("node budget of {budget} exceeded while building the game")]
    BudgetExceeded { budget: usize },
    #[error("acceptance automaton is stuck on an emitted play letter at {at}")]
    AcceptanceStuck { at: String },
}

/// Walk the forced part of a play: from `(cfg, q)` follow rule expansions
/// with exactly one consistent move until a modal, terminal, branching or
/// dead configuration shows up, folding the priorities of the skipped
/// interior nodes into a running maximum (sound for max-parity: a play
/// passing the chain infinitely often sees all of its priorities infinitely
/// often). Returns the endpoint and the folded priority, or `None` when the
/// chain dead-ends (player 0 owns every interior node and loses).
#[allow(clippy::type_complexity)]
fn chase_forced<E: RuleEngine>(
    engine: &E,
    acceptance: &Automaton<E::Letter>,
    mut cfg: E::Config,
    mut q: StateId,
) -> Result<Option<(E::Config, StateId, Priority)>, BuildError> {
    let mut folded: Priority = 0;
    loop {
        let exp = engine.expand(cfg);
        match exp.kind {
            ExpansionKind::Terminal | ExpansionKind::Modal => {
                return Ok(Some((cfg, q, folded)))
            }
            ExpansionKind::Stuck => return Ok(None),
            ExpansionKind::Rule(_) => {
                let consistent: Vec<_> = exp
                    .moves
                    .iter()
                    .filter(|(_, c)| engine.is_consistent(*c))
                    .collect();
                match consistent.len() {
                    0 => return Ok(None),
                    1 => {
                        folded = folded.max(acceptance.priority(q));
                        let (letter, next) = consistent[0];
                        q = acceptance.step(q, letter).ok_or_else(|| {
                            BuildError::AcceptanceStuck { at: engine.label(cfg) }
                        })?;
                        cfg = *next;
                    }
                    _ => return Ok(Some((cfg, q, folded))),
                }
            }
        }
    }
}

use crate::automata::Priority;

/// Breadth-first reachable product of the configuration graph with the
/// deterministic acceptance automaton. Inconsistent successors are pruned
/// from the owner's move set; dead ends get an edge to the sink won by the
/// opponent; terminal consistent-literal nodes self-loop with priority 0.
/// Forced chains of unary rule applications are contracted: only modal,
/// terminal and player-choice configurations become nodes, with the skipped
/// priorities folded into the node they lead to (kept as a running max in
/// `folded`, raising the target's effective priority along that edge is
/// avoided by giving the chain's maximum to the source side of the edge via
/// an interposed priority: see below).
pub fn build_game<E: RuleEngine>(
    engine: &E,
    acceptance: &Automaton<E::Letter>,
    node_budget: usize,
) -> Result<BuiltGame<E::Config>, BuildError> {
    let mut nodes = vec![
        NodeData { owner: Owner::Zero, priority: 0, succs: vec![WIN0] },
        NodeData { owner: Owner::One, priority: 1, succs: vec![WIN1] },
    ];
    let mut product: Vec<Option<(E::Config, StateId)>> = vec![None, None];
    let mut kinds: Vec<Option<ExpansionKind>> = vec![None, None];
    let mut index: HashMap<(E::Config, StateId), usize> = HashMap::new();
    let mut acc_seen: std::collections::HashSet<StateId> = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();

    let init = engine.initial();
    let initial = if engine.is_consistent(init) {
        let id = nodes.len();
        nodes.push(NodeData { owner: Owner::Zero, priority: 0, succs: vec![] });
        product.push(Some((init, acceptance.initial())));
        kinds.push(None);
        index.insert((init, acceptance.initial()), id);
        acc_seen.insert(acceptance.initial());
        queue.push_back(id);
        id
    } else {
        WIN1
    };

    while let Some(id) = queue.pop_front() {
        let (cfg, q) = product[id].expect("queued nodes are product nodes");
        let exp = engine.expand(cfg);
        kinds[id] = Some(exp.kind);
        nodes[id].owner = exp.owner;
        match exp.kind {
            ExpansionKind::Terminal => {
                nodes[id].priority = 0;
                nodes[id].succs = vec![id];
            }
            ExpansionKind::Stuck => {
                nodes[id].priority = 1;
                nodes[id].succs =
                    vec![if exp.owner == Owner::Zero { WIN1 } else { WIN0 }];
            }
            ExpansionKind::Rule(_) | ExpansionKind::Modal => {
                nodes[id].priority = acceptance.priority(q);
                let mut succs = Vec::new();
                for (letter, succ_cfg) in &exp.moves {
                    if !engine.is_consistent(*succ_cfg) {
                        // An inconsistent configuration is lost by player 0.
                        // Pruning it is only sound for her own choices; for
                        // player 1 (the CTL (X1) rule can reach clashing
                        // literal sets) the move must stay available as a
                        // win for him.
                        if exp.owner == Owner::One && !succs.contains(&WIN1) {
                            succs.push(WIN1);
                        }
                        continue;
                    }
                    let q2 = acceptance.step(q, letter).ok_or_else(|| {
                        BuildError::AcceptanceStuck { at: engine.label(cfg) }
                    })?;
                    let key = (*succ_cfg, q2);
                    let succ_id = *index.entry(key).or_insert_with(|| {
                        let nid = nodes.len();
                        nodes.push(NodeData {
                            owner: Owner::Zero,
                            priority: 0,
                            succs: vec![],
                        });
                        product.push(Some(key));
                        kinds.push(None);
                        acc_seen.insert(q2);
                        queue.push_back(nid);
                        nid
                    });
                    succs.push(succ_id);
                }
                if succs.is_empty() {
                    succs.push(if exp.owner == Owner::Zero { WIN1 } else { WIN0 });
                }
                nodes[id].succs = succs;
            }
        }
        if nodes.len() > node_budget {
            return Err(BuildError::BudgetExceeded { budget: node_budget });
        }
    }

    Ok(BuiltGame {
        game: ParityGame { nodes, initial },
        product,
        expansion_kinds: kinds,
        acc_states: acc_seen.len(),
    })
}

/// Distinct automaton states reachable along consistent plays; used to size
/// the determinization cap and the automaton statistics.
pub fn reachable_automaton_states<E: RuleEngine>(
    engine: &E,
    automaton: &Automaton<E::Letter>,
    node_budget: usize,
) -> Result<Vec<StateId>, BuildError> {
    let mut seen_pairs: std::collections::HashSet<(E::Config, StateId)> =
        std::collections::HashSet::new();
    let mut states: std::collections::HashSet<StateId> = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    let init = engine.initial();
    if !engine.is_consistent(init) {
        return Ok(vec![automaton.initial()]);
    }
    seen_pairs.insert((init, automaton.initial()));
    states.insert(automaton.initial());
    queue.push_back((init, automaton.initial()));
    while let Some((cfg, q)) = queue.pop_front() {
        for (letter, succ) in engine.expand(cfg).moves {
            if !engine.is_consistent(succ) {
                continue;
            }
            for q2 in automaton.successors(q, &letter) {
                states.insert(q2);
                if seen_pairs.insert((succ, q2)) {
                    queue.push_back((succ, q2));
                }
                if seen_pairs.len() > node_budget {
                    return Err(BuildError::BudgetExceeded { budget: node_budget });
                }
            }
        }
    }
    let mut out: Vec<StateId> = states.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Line-based export: `node <id> <owner> <priority> <succ,...> "<label>"`.
pub fn export_game<C>(built: &BuiltGame<C>, label: impl Fn(&C) -> String) -> String {
    let mut out = String::new();
    for (id, node) in built.game.nodes.iter().enumerate() {
        let succs: Vec<String> = node.succs.iter().map(|s| s.to_string()).collect();
        let name = match (id, &built.product[id]) {
            (_, Some((c, q))) => format!("{} | q{}", label(c), q),
            (WIN0, None) => "win_0".to_string(),
            (WIN1, None) => "win_1".to_string(),
            _ => String::new(),
        };
        let owner = match node.owner {
            Owner::Zero => 0,
            Owner::One => 1,
        };
        let _ = writeln!(
            out,
            "node {id} {owner} {} {} \"{name}\"",
            node.priority,
            succs.join(",")
        );
    }
    let _ = writeln!(out, "initial {}", built.game.initial);
    out
}

/// Player-`p` attractor of `target` within `mask`; records the attracting
/// move for `p`-owned nodes newly added.
pub(crate) fn attractor(
    g: &ParityGame,
    mask: &[bool],
    target: &[bool],
    player: Owner,
    choice: &mut [Option<usize>],
) -> Vec<bool> {
    let n = g.nodes.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut out_deg = vec![0usize; n];
    for v in 0..n {
        if !mask[v] {
            continue;
        }
        for &w in &g.nodes[v].succs {
            if mask[w] {
                preds[w].push(v);
                out_deg[v] += 1;
            }
        }
    }
    let mut attr: Vec<bool> = (0..n).map(|v| mask[v] && target[v]).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| attr[v]).collect();
    while let Some(v) = queue.pop() {
        for &u in &preds[v] {
            if attr[u] {
                continue;
            }
            if g.nodes[u].owner == player {
                attr[u] = true;
                if choice[u].is_none() {
                    choice[u] = Some(v);
                }
                queue.push(u);
            } else {
                out_deg[u] -= 1;
                if out_deg[u] == 0 {
                    attr[u] = true;
                    queue.push(u);
                }
            }
        }
    }
    attr
}
