//! The CTL game rules. Configurations are plain sets of state formulas (and
//! `E X`/`A X`-prefixed state formulas); blocks are not needed because every
//! unfolding re-quantifies immediately.

use super::{Expansion, ExpansionKind, Owner, Problem, Quant, RuleName, SetId};
use crate::formula::{FormulaId, Kind};

/// One symbolic CTL rule application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CtlLetter {
    Rule { principal: FormulaId, branch: u8 },
    X0,
    /// The modal rule choosing one `E X phi` formula.
    X1 { chosen: FormulaId },
}

impl CtlLetter {
    pub fn is_modal(&self) -> bool {
        matches!(self, CtlLetter::X0 | CtlLetter::X1 { .. })
    }
}

pub fn ctl_initial_configuration(problem: &Problem) -> SetId {
    problem.intern_set(vec![problem.table.root()])
}

pub fn ctl_is_consistent(problem: &Problem, c: SetId) -> bool {
    let t = &problem.table;
    let members = problem.set(c);
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for &f in members.iter() {
        match t.kind(f) {
            Kind::Ff => return false,
            Kind::Prop(p) => pos.push(p),
            Kind::NegProp(p) => neg.push(p),
            _ => {}
        }
    }
    !pos.iter().any(|p| neg.contains(p))
}

/// Modal members: `E X phi` / `A X phi`.
fn modal_body(problem: &Problem, f: FormulaId) -> Option<(Quant, FormulaId)> {
    match problem.table.kind(f) {
        Kind::Exists(b) => match problem.table.kind(b) {
            Kind::Next(g) => Some((Quant::E, g)),
            _ => None,
        },
        Kind::Forall(b) => match problem.table.kind(b) {
            Kind::Next(g) => Some((Quant::A, g)),
            _ => None,
        },
        _ => None,
    }
}

fn is_ctl_candidate(problem: &Problem, f: FormulaId) -> bool {
    let t = &problem.table;
    match t.kind(f) {
        Kind::And(..) | Kind::Or(..) => true,
        Kind::Exists(b) | Kind::Forall(b) => {
            matches!(t.kind(b), Kind::Until(..) | Kind::Release(..))
        }
        _ => false,
    }
}

/// Largest-formula scheduling, mirroring the CTL* policy.
pub fn ctl_select_principal(problem: &Problem, c: SetId) -> Option<FormulaId> {
    let t = &problem.table;
    problem
        .set(c)
        .iter()
        .copied()
        .filter(|&f| is_ctl_candidate(problem, f))
        .min_by_key(|&f| (std::cmp::Reverse(t.size(f)), f))
}

fn with_rest(
    problem: &Problem,
    c: SetId,
    principal: FormulaId,
    extra: &[FormulaId],
) -> SetId {
    let mut v: Vec<FormulaId> = problem
        .set(c)
        .iter()
        .copied()
        .filter(|&f| f != principal)
        .collect();
    v.extend_from_slice(extra);
    problem.intern_set(v)
}

/// Per-branch descendants of a principal CTL formula.
pub fn ctl_rule_branches(problem: &Problem, principal: FormulaId) -> Vec<Vec<FormulaId>> {
    let t = &problem.table;
    match t.kind(principal) {
        Kind::And(l, r) => vec![vec![l, r]],
        Kind::Or(l, r) => vec![vec![l], vec![r]],
        Kind::Exists(b) | Kind::Forall(b) => {
            let wrapper = t
                .ctl_unfold_wrapper(principal)
                .expect("CTL unfolding wrapper is pre-registered");
            match t.kind(b) {
                Kind::Until(l, r) => vec![vec![r], vec![l, wrapper]],
                Kind::Release(l, r) => vec![vec![l, r], vec![r, wrapper]],
                _ => panic!("not a CTL unfolding principal"),
            }
        }
        other => panic!("not a CTL principal: {other:?}"),
    }
}

pub fn ctl_successors(problem: &Problem, c: SetId) -> Expansion<CtlLetter, SetId> {
    let t = &problem.table;

    if let Some(principal) = ctl_select_principal(problem, c) {
        let rule = match t.kind(principal) {
            Kind::And(..) => RuleName::EAnd,
            Kind::Or(..) => RuleName::EOr,
            Kind::Exists(b) => match t.kind(b) {
                Kind::Until(..) => RuleName::EUntil,
                _ => RuleName::ERelease,
            },
            Kind::Forall(b) => match t.kind(b) {
                Kind::Until(..) => RuleName::AUntil,
                _ => RuleName::ARelease,
            },
            _ => unreachable!(),
        };
        let moves = ctl_rule_branches(problem, principal)
            .into_iter()
            .enumerate()
            .map(|(branch, extra)| {
                (
                    CtlLetter::Rule { principal, branch: branch as u8 },
                    with_rest(problem, c, principal, &extra),
                )
            })
            .collect();
        return Expansion { owner: Owner::Zero, kind: ExpansionKind::Rule(rule), moves };
    }

    let members = problem.set(c);
    let mut ex = Vec::new();
    let mut ax = Vec::new();
    for &f in members.iter() {
        match modal_body(problem, f) {
            Some((Quant::E, g)) => ex.push((f, g)),
            Some((Quant::A, g)) => ax.push(g),
            None => debug_assert!(
                t.is_literal(f),
                "non-literal, non-modal member {} at the modal stage",
                t.display(f)
            ),
        }
    }

    if !ex.is_empty() {
        let moves = ex
            .iter()
            .map(|&(f, g)| {
                let mut v = ax.clone();
                v.push(g);
                (CtlLetter::X1 { chosen: f }, problem.intern_set(v))
            })
            .collect();
        return Expansion { owner: Owner::One, kind: ExpansionKind::Modal, moves };
    }
    if !ax.is_empty() {
        let succ = problem.intern_set(ax);
        return Expansion {
            owner: Owner::Zero,
            kind: ExpansionKind::Modal,
            moves: vec![(CtlLetter::X0, succ)],
        };
    }
    Expansion { owner: Owner::Zero, kind: ExpansionKind::Terminal, moves: vec![] }
}

/// The formula-level connection relation for CTL plays: all members of `c2`
/// connected to `chi` in `c` under `letter`.
pub fn ctl_formula_descendants(
    problem: &Problem,
    letter: &CtlLetter,
    chi: FormulaId,
    c2: SetId,
) -> Vec<FormulaId> {
    let member = |f: FormulaId| problem.set_contains(c2, f);
    match *letter {
        CtlLetter::Rule { principal, branch } if principal == chi => {
            ctl_rule_branches(problem, chi)[branch as usize]
                .iter()
                .copied()
                .filter(|&f| member(f))
                .collect()
        }
        CtlLetter::Rule { .. } => {
            if member(chi) {
                vec![chi]
            } else {
                vec![]
            }
        }
        CtlLetter::X0 => match modal_body(problem, chi) {
            Some((Quant::A, g)) if member(g) => vec![g],
            _ => vec![],
        },
        CtlLetter::X1 { chosen } => match modal_body(problem, chi) {
            Some((Quant::A, g)) if member(g) => vec![g],
            Some((Quant::E, g)) if chi == chosen && member(g) => vec![g],
            _ => vec![],
        },
    }
}

/// Rule engine driving the CTL satisfiability game.
pub struct CtlEngine<'p> {
    pub problem: &'p Problem,
}

impl<'p> CtlEngine<'p> {
    pub fn new(problem: &'p Problem) -> Self {
        CtlEngine { problem }
    }
}
