//! Per-fragment construction of the deterministic acceptance automaton whose
//! language is exactly the set of infinite plays won by player 0.

mod bad_a;
mod ctl_dba;
mod ctlplus;
mod e_dba;
pub mod lasso_oracle;

pub use bad_a::{build_a_dpa, build_a_dpa_capped, build_bad_a_nba, build_bad_a_nba_with_probe, BadAProbe};
pub use ctl_dba::build_ctl_dba;
pub use ctlplus::build_ctlplus_bad_a_ncoba;
pub use e_dba::{build_e_dba, e_dba_state_is_dead};

use crate::automata::{
    intersect_dba_dba, intersect_dba_dpa, mh_complement_ncoba, Automaton,
};
use crate::formula::Fragment;
use crate::game::{CtlLetter, PlayLetter, Problem};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameKind {
    Parity,
    Buchi,
}

/// The acceptance automaton, typed by the alphabet its pipeline plays over.
pub enum AcceptanceAutomaton {
    Play(Automaton<PlayLetter>),
    Ctl(Automaton<CtlLetter>),
}

#[derive(Debug, Error)]
pub enum AcceptanceError {
    #[error("formula is in {actual} but the {requested} pipeline was requested")]
    FragmentMismatch { actual: Fragment, requested: Fragment },
}

/// Compose the per-fragment acceptance automaton:
/// CTL* intersects the E-trace DBA with the determinized A-trace DPA (parity
/// game); CTL+ replaces the DPA by the Miyano-Hayashi complement of the
/// co-Büchi bad-A-trace automaton (Büchi game); CTL uses the thread DBA
/// directly (Büchi game).
pub fn build_acceptance(
    problem: &Arc<Problem>,
    pipeline: Fragment,
) -> Result<(AcceptanceAutomaton, GameKind), AcceptanceError> {
    build_acceptance_capped(problem, pipeline, None)
}

/// As [`build_acceptance`], with an explicit cap on live bad-A NBA states
/// for the determinization's priority encoding.
pub fn build_acceptance_capped(
    problem: &Arc<Problem>,
    pipeline: Fragment,
    nba_cap: Option<u64>,
) -> Result<(AcceptanceAutomaton, GameKind), AcceptanceError> {
    let actual = problem.table.fragment();
    if pipeline < actual {
        return Err(AcceptanceError::FragmentMismatch { actual, requested: pipeline });
    }
    Ok(match pipeline {
        Fragment::Ctl => (AcceptanceAutomaton::Ctl(build_ctl_dba(problem)), GameKind::Buchi),
        Fragment::CtlPlus => {
            let e = build_e_dba(problem);
            let a = mh_complement_ncoba(&build_ctlplus_bad_a_ncoba(problem));
            (AcceptanceAutomaton::Play(intersect_dba_dba(&e, &a)), GameKind::Buchi)
        }
        Fragment::CtlStar => {
            let e = build_e_dba(problem);
            let a = build_a_dpa_capped(problem, nba_cap);
            (AcceptanceAutomaton::Play(intersect_dba_dpa(&e, &a)), GameKind::Parity)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::AcceptanceKind;
    use crate::formula::{parse, to_nnf, FormulaTable};

    fn problem(text: &str) -> Arc<Problem> {
        Arc::new(Problem::new(FormulaTable::build(&to_nnf(&parse(text).unwrap()))))
    }

    #[test]
    fn pipelines_match_fragments() {
        let p = problem("A (p U q)");
        let (acc, kind) = build_acceptance(&p, Fragment::Ctl).unwrap();
        assert!(matches!(acc, AcceptanceAutomaton::Ctl(_)));
        assert_eq!(kind, GameKind::Buchi);

        let (acc, kind) = build_acceptance(&p, Fragment::CtlPlus).unwrap();
        match acc {
            AcceptanceAutomaton::Play(a) => assert_eq!(a.kind(), AcceptanceKind::Dba),
            _ => panic!("CTL+ pipeline must run over play letters"),
        }
        assert_eq!(kind, GameKind::Buchi);

        let (acc, kind) = build_acceptance(&p, Fragment::CtlStar).unwrap();
        match acc {
            AcceptanceAutomaton::Play(a) => assert_eq!(a.kind(), AcceptanceKind::Dpa),
            _ => panic!("CTL* pipeline must run over play letters"),
        }
        assert_eq!(kind, GameKind::Parity);
    }

    #[test]
    fn smaller_pipeline_than_fragment_is_rejected() {
        let p = problem("A F G p");
        assert!(build_acceptance(&p, Fragment::Ctl).is_err());
        assert!(build_acceptance(&p, Fragment::CtlPlus).is_err());
        assert!(build_acceptance(&p, Fragment::CtlStar).is_ok());
    }
}
