//! Standalone CTL model checker by bottom-up fixpoint labeling. Kept
//! independent of the game machinery: it evaluates the surface syntax tree
//! directly over an explicit transition system.

use super::TransitionSystem;
use crate::formula::{classify_fragment, Ast, Fragment};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum McError {
    #[error("formula is {0}, not CTL")]
    NotCtl(Fragment),
    #[error("transition system is not total")]
    NotTotal,
}

/// Truth of a CTL formula at the initial state.
pub fn check_ctl(ts: &TransitionSystem, f: &Ast) -> Result<bool, McError> {
    let frag = classify_fragment(f);
    if frag != Fragment::Ctl {
        return Err(McError::NotCtl(frag));
    }
    if !ts.is_total() {
        return Err(McError::NotTotal);
    }
    let succs: Vec<Vec<usize>> = (0..ts.state_count()).map(|s| ts.successors(s)).collect();
    let sat = eval(ts, &succs, f);
    Ok(sat[ts.initial])
}

fn eval(ts: &TransitionSystem, succs: &[Vec<usize>], f: &Ast) -> Vec<bool> {
    let n = ts.state_count();
    match f {
        Ast::True => vec![true; n],
        Ast::False => vec![false; n],
        Ast::Prop(name) => (0..n).map(|s| ts.states[s].props.iter().any(|p| p == name)).collect(),
        Ast::Not(inner) => match &**inner {
            Ast::Prop(name) => (0..n)
                .map(|s| !ts.states[s].props.iter().any(|p| p == name))
                .collect(),
            _ => unreachable!("NNF negation"),
        },
        Ast::And(l, r) => zip_with(&eval(ts, succs, l), &eval(ts, succs, r), |a, b| a && b),
        Ast::Or(l, r) => zip_with(&eval(ts, succs, l), &eval(ts, succs, r), |a, b| a || b),
        Ast::Exists(path) => eval_quantified(ts, succs, path, false),
        Ast::Forall(path) => eval_quantified(ts, succs, path, true),
        _ => unreachable!("CTL formulas quantify every temporal operator"),
    }
}

fn eval_quantified(
    ts: &TransitionSystem,
    succs: &[Vec<usize>],
    path: &Ast,
    universal: bool,
) -> Vec<bool> {
    let pre = |set: &[bool]| -> Vec<bool> {
        succs
            .iter()
            .map(|out| {
                if universal {
                    out.iter().all(|&w| set[w])
                } else {
                    out.iter().any(|&w| set[w])
                }
            })
            .collect()
    };
    match path {
        Ast::Next(g) => pre(&eval(ts, succs, g)),
        Ast::Until(l, r) => {
            let sl = eval(ts, succs, l);
            let sr = eval(ts, succs, r);
            // least fixpoint of X = r | (l & pre X)
            let mut x = sr;
            loop {
                let px = pre(&x);
                let next: Vec<bool> =
                    (0..x.len()).map(|s| x[s] || (sl[s] && px[s])).collect();
                if next == x {
                    return x;
                }
                x = next;
            }
        }
        Ast::Release(l, r) => {
            let sl = eval(ts, succs, l);
            let sr = eval(ts, succs, r);
            // greatest fixpoint of X = r & (l | pre X)
            let mut x = vec![true; ts.state_count()];
            loop {
                let px = pre(&x);
                let next: Vec<bool> =
                    (0..x.len()).map(|s| sr[s] && (sl[s] || px[s])).collect();
                if next == x {
                    return x;
                }
                x = next;
            }
        }
        _ => unreachable!("CTL path formulas are X, U or R"),
    }
}

fn zip_with(a: &[bool], b: &[bool], f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}
