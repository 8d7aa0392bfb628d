//! End-to-end solving: fragment selection, acceptance construction, game
//! build, solving, and model extraction.

use crate::arena::{
    build_game, export_game, reachable_automaton_states, solve_buchi, solve_parity, BuildError,
    BuiltGame, RuleEngine, Strategy,
};
use crate::automata::{
    complement_dpa, determinize_nba_capped, intersect_dba_dba, intersect_dba_dpa,
    mh_complement_ncoba, Automaton,
};
use crate::formula::{Ast, FormulaTable, Fragment, ParseError};
use crate::game::{CtlEngine, CtlStarEngine, Problem};
use crate::model::{extract_model, TransitionSystem};
use crate::winning::{
    build_bad_a_nba, build_ctl_dba, build_ctlplus_bad_a_ncoba, build_e_dba, GameKind,
};
use serde::Serialize;
use std::sync::Arc;
use std::time::Instant;
use thiserror::Error;

pub const DEFAULT_NODE_BUDGET: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Sat => write!(f, "SAT"),
            Verdict::Unsat => write!(f, "UNSAT"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Pipeline override; the detected fragment when absent.
    pub logic: Option<Fragment>,
    pub node_budget: usize,
    pub want_model: bool,
    pub want_game_export: bool,
    pub want_acceptance_dump: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            logic: None,
            node_budget: DEFAULT_NODE_BUDGET,
            want_model: true,
            want_game_export: false,
            want_acceptance_dump: false,
        }
    }
}

/// Sizes observed while building, including the automaton statistics the
/// theorem bounds are asserted against.
#[derive(Debug, Clone, Default, Serialize)]
pub struct SolveStats {
    pub fragment: String,
    pub pipeline: String,
    pub game_kind: String,
    pub game_nodes: usize,
    pub game_edges: usize,
    pub game_priorities: Vec<u32>,
    pub acceptance_states: usize,
    pub subformulas: u32,
    pub closure_size: u32,
    pub until_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_dba_states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bad_a_nba_states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_dpa_states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_dpa_priorities: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ncoba_states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mh_dba_states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ctl_dba_states: Option<usize>,
}

#[derive(Debug)]
pub struct SolveReport {
    pub verdict: Verdict,
    pub fragment: Fragment,
    pub pipeline: Fragment,
    pub stats: SolveStats,
    pub model: Option<TransitionSystem>,
    pub game_export: Option<String>,
    pub acceptance_dump: Option<String>,
    pub wall: std::time::Duration,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("--logic {requested} is below the formula's fragment {actual}")]
    FragmentOverride { actual: Fragment, requested: Fragment },
    #[error("node budget exceeded ({budget} nodes)")]
    Budget { budget: usize },
}

impl From<BuildError> for SolveError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::BudgetExceeded { budget } => SolveError::Budget { budget },
            BuildError::AcceptanceStuck { at } => {
                panic!("acceptance automaton not total on play letters at {at}")
            }
        }
    }
}

pub fn solve(text: &str, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    let ast = crate::formula::parse(text)?;
    solve_ast(&ast, opts)
}

pub fn solve_ast(ast: &Ast, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let nnf = crate::formula::to_nnf(ast);
    let table = FormulaTable::build(&nnf);
    let fragment = table.fragment();
    let pipeline = opts.logic.unwrap_or(fragment);
    if pipeline < fragment {
        return Err(SolveError::FragmentOverride { actual: fragment, requested: pipeline });
    }
    let problem = Arc::new(Problem::new(table));

    let mut stats = SolveStats {
        fragment: fragment.to_string(),
        pipeline: pipeline.to_string(),
        subformulas: problem.table.subf_count(),
        closure_size: problem.table.fl_count(),
        until_count: problem.table.untils().len(),
        ..SolveStats::default()
    };

    let mut report = match pipeline {
        Fragment::Ctl => {
            let engine = CtlEngine::new(&problem);
            let acc = build_ctl_dba(&problem);
            stats.ctl_dba_states =
                Some(reachable_automaton_states(&engine, &acc, opts.node_budget)?.len());
            run_pipeline(&engine, &acc, GameKind::Buchi, opts, &mut stats)?
        }
        Fragment::CtlPlus => {
            let engine = CtlStarEngine::new(&problem);
            let ncoba = build_ctlplus_bad_a_ncoba(&problem);
            stats.ncoba_states =
                Some(reachable_automaton_states(&engine, &ncoba, opts.node_budget)?.len());
            let mh = mh_complement_ncoba(&ncoba);
            stats.mh_dba_states =
                Some(reachable_automaton_states(&engine, &mh, opts.node_budget)?.len());
            let e = build_e_dba(&problem);
            stats.e_dba_states =
                Some(reachable_automaton_states(&engine, &e, opts.node_budget)?.len());
            let acc = intersect_dba_dba(&e, &mh);
            run_pipeline(&engine, &acc, GameKind::Buchi, opts, &mut stats)?
        }
        Fragment::CtlStar => {
            let engine = CtlStarEngine::new(&problem);
            let nba = build_bad_a_nba(&problem);
            let nba_states = reachable_automaton_states(&engine, &nba, opts.node_budget)?;
            stats.bad_a_nba_states = Some(nba_states.len());
            let dpa = complement_dpa(&determinize_nba_capped(&nba, nba_states.len() as u64));
            let dpa_states = reachable_automaton_states(&engine, &dpa, opts.node_budget)?;
            let dpa_prios: std::collections::BTreeSet<u32> =
                dpa_states.iter().map(|&q| dpa.priority(q)).collect();
            stats.a_dpa_states = Some(dpa_states.len());
            stats.a_dpa_priorities = Some(dpa_prios.len());
            let e = build_e_dba(&problem);
            stats.e_dba_states =
                Some(reachable_automaton_states(&engine, &e, opts.node_budget)?.len());
            let acc = intersect_dba_dpa(&e, &dpa);
            run_pipeline(&engine, &acc, GameKind::Parity, opts, &mut stats)?
        }
    };

    report.fragment = fragment;
    report.pipeline = pipeline;
    report.stats = stats;
    report.wall = start.elapsed();
    Ok(report)
}

fn run_pipeline<E: RuleEngine>(
    engine: &E,
    acceptance: &Automaton<E::Letter>,
    kind: GameKind,
    opts: &SolveOptions,
    stats: &mut SolveStats,
) -> Result<SolveReport, SolveError> {
    let built = build_game(engine, acceptance, opts.node_budget)?;
    let strategy = match kind {
        GameKind::Buchi => solve_buchi(&built.game),
        GameKind::Parity => solve_parity(&built.game),
    };
    stats.game_kind = match kind {
        GameKind::Buchi => "buchi".to_string(),
        GameKind::Parity => "parity".to_string(),
    };
    stats.game_nodes = built.game.node_count();
    stats.game_edges = built.game.edge_count();
    stats.game_priorities = built.game.priorities();
    stats.acceptance_states = built.acc_states;

    let verdict = if strategy.player0_wins(built.game.initial) {
        Verdict::Sat
    } else {
        Verdict::Unsat
    };
    let model = if verdict == Verdict::Sat && opts.want_model {
        Some(extract_model(engine, &built, &strategy).expect("winning initial node"))
    } else {
        None
    };
    let game_export = opts
        .want_game_export
        .then(|| export_game(&built, |c| engine.label(*c)));
    let acceptance_dump = opts
        .want_acceptance_dump
        .then(|| dump_acceptance::<E>(acceptance, &built));

    Ok(SolveReport {
        verdict,
        fragment: Fragment::CtlStar,
        pipeline: Fragment::CtlStar,
        stats: SolveStats::default(),
        model,
        game_export,
        acceptance_dump,
        wall: std::time::Duration::ZERO,
    })
}

fn dump_acceptance<E: RuleEngine>(
    acceptance: &Automaton<E::Letter>,
    built: &BuiltGame<E::Config>,
) -> String {
    let mut states: Vec<crate::automata::StateId> =
        built.product.iter().flatten().map(|&(_, q)| q).collect();
    states.sort();
    states.dedup();
    let mut out = String::new();
    for q in states {
        out.push_str(&format!(
            "q{q} priority={} {}\n",
            acceptance.priority(q),
            acceptance.state_label(q)
        ));
    }
    out
}

/// Verdict plus the solved game's strategy, for callers that inspect both.
pub fn solve_report_strategy<E: RuleEngine>(
    engine: &E,
    acceptance: &Automaton<E::Letter>,
    kind: GameKind,
    budget: usize,
) -> Result<(BuiltGame<E::Config>, Strategy), SolveError> {
    let built = build_game(engine, acceptance, budget)?;
    let strategy = match kind {
        GameKind::Buchi => solve_buchi(&built.game),
        GameKind::Parity => solve_parity(&built.game),
    };
    Ok((built, strategy))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(text: &str) -> Verdict {
        solve(text, &SolveOptions::default()).unwrap().verdict
    }

    #[test]
    fn trivial_sat_and_unsat() {
        assert_eq!(verdict("p"), Verdict::Sat);
        assert_eq!(verdict("p & !p"), Verdict::Unsat);
        assert_eq!(verdict("tt"), Verdict::Sat);
        assert_eq!(verdict("ff"), Verdict::Unsat);
    }

    #[test]
    fn ctl_basics() {
        assert_eq!(verdict("E (p U q)"), Verdict::Sat);
        assert_eq!(verdict("A X p & E X !p"), Verdict::Unsat);
        assert_eq!(verdict("E X p & E X !p"), Verdict::Sat);
        assert_eq!(verdict("A F p & E G !p"), Verdict::Unsat);
    }

    #[test]
    fn running_example_is_sat() {
        let report = solve("A F G p & E G E F !p", &SolveOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Sat);
        assert_eq!(report.fragment, Fragment::CtlStar);
        let model = report.model.unwrap();
        assert!(model.is_total());
    }

    #[test]
    fn logic_override_must_not_shrink() {
        let err = solve(
            "A F G p",
            &SolveOptions { logic: Some(Fragment::Ctl), ..SolveOptions::default() },
        )
        .unwrap_err();
        assert!(matches!(err, SolveError::FragmentOverride { .. }));
    }

    #[test]
    fn ctl_formula_solves_under_all_pipelines() {
        for logic in [Fragment::Ctl, Fragment::CtlPlus, Fragment::CtlStar] {
            let opts = SolveOptions { logic: Some(logic), ..SolveOptions::default() };
            assert_eq!(solve("E (p U q)", &opts).unwrap().verdict, Verdict::Sat, "{logic}");
            assert_eq!(
                solve("A F p & E G !p", &opts).unwrap().verdict,
                Verdict::Unsat,
                "{logic}"
            );
        }
    }
}
