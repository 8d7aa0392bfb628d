//! Shared helpers for the integration suites: seeded RNG, random formulas
//! per fragment, random automata, lassos and parity games.

#![allow(dead_code)]

use branchsat::arena::{NodeData, ParityGame};
use branchsat::automata::{AcceptanceKind, Automaton, ExplicitAutomaton, Lasso};
use branchsat::formula::Fragment;
use branchsat::game::Owner;
use branchsat::Ast;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Seed for all randomized suites, overridable via BRANCHSAT_SEED.
pub fn seed() -> u64 {
    std::env::var("BRANCHSAT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0xB5EED)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt)
}

const PROPS: [&str; 3] = ["p", "q", "r"];

fn literal(rng: &mut ChaCha8Rng) -> Ast {
    match rng.random_range(0..8) {
        0 => Ast::True,
        1 => Ast::False,
        n if n % 2 == 0 => Ast::Prop(PROPS[rng.random_range(0..PROPS.len())].into()),
        _ => Ast::Prop(PROPS[rng.random_range(0..PROPS.len())].into()).not(),
    }
}

fn split(rng: &mut ChaCha8Rng, budget: usize) -> (usize, usize) {
    let left = rng.random_range(1..budget.max(2));
    (left, budget.saturating_sub(left).max(1))
}

/// Random NNF formula of the given fragment with roughly `budget` nodes.
pub fn random_formula(rng: &mut ChaCha8Rng, frag: Fragment, budget: usize) -> Ast {
    match frag {
        Fragment::Ctl => ctl_state(rng, budget),
        Fragment::CtlPlus => ctlplus_state(rng, budget),
        Fragment::CtlStar => star(rng, budget),
    }
}

fn ctl_state(rng: &mut ChaCha8Rng, budget: usize) -> Ast {
    if budget <= 1 {
        return literal(rng);
    }
    match rng.random_range(0..4) {
        0 => {
            let (l, r) = split(rng, budget - 1);
            Ast::And(Box::new(ctl_state(rng, l)), Box::new(ctl_state(rng, r)))
        }
        1 => {
            let (l, r) = split(rng, budget - 1);
            Ast::Or(Box::new(ctl_state(rng, l)), Box::new(ctl_state(rng, r)))
        }
        _ => {
            let path = ctl_path(rng, budget - 2);
            if rng.random_bool(0.5) {
                Ast::Exists(Box::new(path))
            } else {
                Ast::Forall(Box::new(path))
            }
        }
    }
}

fn ctl_path(rng: &mut ChaCha8Rng, budget: usize) -> Ast {
    match rng.random_range(0..3) {
        0 => Ast::Next(Box::new(ctl_state(rng, budget.saturating_sub(1).max(1)))),
        1 => {
            let (l, r) = split(rng, budget.max(2) - 1);
            Ast::Until(Box::new(ctl_state(rng, l)), Box::new(ctl_state(rng, r)))
        }
        _ => {
            let (l, r) = split(rng, budget.max(2) - 1);
            Ast::Release(Box::new(ctl_state(rng, l)), Box::new(ctl_state(rng, r)))
        }
    }
}

fn ctlplus_state(rng: &mut ChaCha8Rng, budget: usize) -> Ast {
    if budget <= 1 {
        return literal(rng);
    }
    match rng.random_range(0..4) {
        0 => {
            let (l, r) = split(rng, budget - 1);
            Ast::And(Box::new(ctlplus_state(rng, l)), Box::new(ctlplus_state(rng, r)))
        }
        1 => {
            let (l, r) = split(rng, budget - 1);
            Ast::Or(Box::new(ctlplus_state(rng, l)), Box::new(ctlplus_state(rng, r)))
        }
        _ => {
            let path = ctlplus_path(rng, budget - 2);
            if rng.random_bool(0.5) {
                Ast::Exists(Box::new(path))
            } else {
                Ast::Forall(Box::new(path))
            }
        }
    }
}

fn ctlplus_path(rng: &mut ChaCha8Rng, budget: usize) -> Ast {
    if budget <= 1 {
        return literal(rng);
    }
    match rng.random_range(0..5) {
        0 => {
            let (l, r) = split(rng, budget - 1);
            Ast::And(Box::new(ctlplus_path(rng, l)), Box::new(ctlplus_path(rng, r)))
        }
        1 => {
            let (l, r) = split(rng, budget - 1);
            Ast::Or(Box::new(ctlplus_path(rng, l)), Box::new(ctlplus_path(rng, r)))
        }
        2 => Ast::Next(Box::new(ctlplus_state(rng, budget - 1))),
        3 => {
            let (l, r) = split(rng, budget - 1);
            Ast::Until(Box::new(ctlplus_state(rng, l)), Box::new(ctlplus_state(rng, r)))
        }
        _ => {
            let (l, r) = split(rng, budget - 1);
            Ast::Release(Box::new(ctlplus_state(rng, l)), Box::new(ctlplus_state(rng, r)))
        }
    }
}

fn star(rng: &mut ChaCha8Rng, budget: usize) -> Ast {
    if budget <= 1 {
        return literal(rng);
    }
    match rng.random_range(0..7) {
        0 => {
            let (l, r) = split(rng, budget - 1);
            Ast::And(Box::new(star(rng, l)), Box::new(star(rng, r)))
        }
        1 => {
            let (l, r) = split(rng, budget - 1);
            Ast::Or(Box::new(star(rng, l)), Box::new(star(rng, r)))
        }
        2 => Ast::Next(Box::new(star(rng, budget - 1))),
        3 => {
            let (l, r) = split(rng, budget - 1);
            Ast::Until(Box::new(star(rng, l)), Box::new(star(rng, r)))
        }
        4 => {
            let (l, r) = split(rng, budget - 1);
            Ast::Release(Box::new(star(rng, l)), Box::new(star(rng, r)))
        }
        5 => Ast::Exists(Box::new(star(rng, budget - 1))),
        _ => Ast::Forall(Box::new(star(rng, budget - 1))),
    }
}

/// Random explicit automaton over letters `0..n_letters`. Deterministic
/// kinds have at most one successor per pair and may be stuck; priorities
/// match the acceptance kind's range.
pub fn random_automaton(
    rng: &mut ChaCha8Rng,
    kind: AcceptanceKind,
    n_states: u32,
    n_letters: u8,
) -> Automaton<u8> {
    let mut b = ExplicitAutomaton::<u8>::builder(n_states as usize);
    for q in 0..n_states {
        let prio = match kind {
            AcceptanceKind::Nba | AcceptanceKind::Dba => rng.random_range(1..=2),
            AcceptanceKind::NcoBa | AcceptanceKind::DcoBa => rng.random_range(0..=1),
            AcceptanceKind::Dpa => rng.random_range(0..=4),
        };
        b = b.priority(q, prio);
        for l in 0..n_letters {
            if kind.is_deterministic() {
                if rng.random_bool(0.9) {
                    b = b.edge(q, l, rng.random_range(0..n_states));
                }
            } else {
                for _ in 0..rng.random_range(0..=2) {
                    b = b.edge(q, l, rng.random_range(0..n_states));
                }
            }
        }
    }
    b.build(kind, 0)
}

pub fn random_lasso(rng: &mut ChaCha8Rng, n_letters: u8, max_total: usize) -> Lasso<u8> {
    let cycle_len = rng.random_range(1..=max_total.saturating_sub(1).max(1));
    let prefix_len = rng.random_range(0..=max_total - cycle_len);
    let mut letter = || rng.random_range(0..n_letters);
    let prefix = (0..prefix_len).map(|_| letter()).collect();
    let cycle = (0..cycle_len).map(|_| letter()).collect();
    Lasso::new(prefix, cycle)
}

/// Random total parity game.
pub fn random_game(rng: &mut ChaCha8Rng, n_nodes: usize, max_prio: u32) -> ParityGame {
    let nodes = (0..n_nodes)
        .map(|_| {
            let owner = if rng.random_bool(0.5) { Owner::Zero } else { Owner::One };
            let priority = rng.random_range(0..=max_prio);
            let degree = rng.random_range(1..=3.min(n_nodes));
            let succs = (0..degree).map(|_| rng.random_range(0..n_nodes)).collect();
            NodeData { owner, priority, succs }
        })
        .collect();
    ParityGame { nodes, initial: 0 }
}

/// Deterministic walk of an automaton along a lasso, collecting the states
/// actually visited (for reachable size-bound checks).
pub fn walk_states(a: &Automaton<u8>, w: &Lasso<u8>, laps: usize) -> Vec<u32> {
    let mut states = vec![a.initial()];
    let mut q = a.initial();
    for l in &w.prefix {
        match a.step(q, l) {
            Some(n) => q = n,
            None => return states,
        }
        states.push(q);
    }
    for _ in 0..laps {
        for l in &w.cycle {
            match a.step(q, l) {
                Some(n) => q = n,
                None => return states,
            }
            states.push(q);
        }
    }
    states.sort();
    states.dedup();
    states
}
