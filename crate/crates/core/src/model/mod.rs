//! Finite models: extraction from player 0's winning strategy, an
//! independent CTL model checker, and import/export.

mod export;
mod mc;

pub use export::{export_dot, export_json, import_json, ExportError};
pub use mc::{check_ctl, McError};

use crate::arena::{BuiltGame, RuleEngine, Strategy};
use crate::game::ExpansionKind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A total labelled transition system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionSystem {
    pub initial: usize,
    pub states: Vec<ModelState>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelState {
    pub id: usize,
    pub props: Vec<String>,
}

impl TransitionSystem {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn successors(&self, s: usize) -> Vec<usize> {
        self.edges.iter().filter(|(a, _)| *a == s).map(|(_, b)| *b).collect()
    }

    pub fn is_total(&self) -> bool {
        (0..self.states.len()).all(|s| self.edges.iter().any(|(a, _)| *a == s))
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.states.len())
            .map(|s| self.edges.iter().filter(|(a, _)| *a == s).count())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("player 0 does not win the initial node; there is no model")]
    InitialLost,
}

/// Extract the canonic model from player 0's winning strategy: restrict the
/// game to the strategy, collapse every non-modal chain to its unique
/// modal-or-terminal endpoint, self-loop the terminals, and label states
/// with the positive propositions of their configurations.
pub fn extract_model<E: RuleEngine>(
    engine: &E,
    built: &BuiltGame<E::Config>,
    strategy: &Strategy,
) -> Result<TransitionSystem, ExtractError> {
    let g = &built.game;
    if !strategy.player0_wins(g.initial) {
        return Err(ExtractError::InitialLost);
    }

    let chase = |mut v: usize| -> usize {
        let mut steps = 0usize;
        loop {
            match built.expansion_kinds[v] {
                Some(ExpansionKind::Rule(_)) => {
                    v = strategy.choice[v]
                        .expect("interior nodes of the winning region have a strategy move");
                }
                Some(ExpansionKind::Modal) | Some(ExpansionKind::Terminal) => return v,
                other => panic!("strategy chase reached {other:?}"),
            }
            steps += 1;
            assert!(
                steps <= g.node_count(),
                "non-modal chains are finite on winning plays"
            );
        }
    };

    let root = chase(g.initial);
    let mut ids = std::collections::HashMap::new();
    let mut order = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    ids.insert(root, 0usize);
    order.push(root);
    queue.push_back(root);
    let mut edges = Vec::new();
    while let Some(s) = queue.pop_front() {
        let sid = ids[&s];
        let targets: Vec<usize> = match built.expansion_kinds[s] {
            Some(ExpansionKind::Terminal) => vec![s],
            Some(ExpansionKind::Modal) => {
                g.nodes[s].succs.iter().map(|&w| chase(w)).collect()
            }
            other => panic!("model states are modal or terminal, found {other:?}"),
        };
        for t in targets {
            let tid = *ids.entry(t).or_insert_with(|| {
                order.push(t);
                queue.push_back(t);
                order.len() - 1
            });
            if !edges.contains(&(sid, tid)) {
                edges.push((sid, tid));
            }
        }
    }

    let states = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let (cfg, _) = built.product[v].expect("model states are product nodes");
            ModelState { id: i, props: engine.positive_props(cfg) }
        })
        .collect();
    edges.sort();
    Ok(TransitionSystem { initial: 0, states, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{build_game, solve_buchi};
    use crate::automata::all_accepting_dba;
    use crate::formula::{parse, to_nnf, FormulaTable};
    use crate::game::{CtlStarEngine, PlayLetter, Problem};
    use std::sync::Arc;

    #[test]
    fn single_proposition_yields_the_one_state_model() {
        let p = Arc::new(Problem::new(FormulaTable::build(&to_nnf(&parse("p").unwrap()))));
        let engine = CtlStarEngine::new(&p);
        let acc = all_accepting_dba::<PlayLetter>();
        let built = build_game(&engine, &acc, 1000).unwrap();
        let strat = solve_buchi(&built.game);
        let ts = extract_model(&engine, &built, &strat).unwrap();
        assert_eq!(ts.state_count(), 1);
        assert_eq!(ts.states[0].props, vec!["p"]);
        assert_eq!(ts.edges, vec![(0, 0)]);
        assert!(ts.is_total());
    }
}
