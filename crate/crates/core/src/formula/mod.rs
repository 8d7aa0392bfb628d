//! Branching-time formulas: surface syntax, negation normal form and the
//! Fischer-Ladner closure table everything downstream is indexed by.

mod nnf;
mod parse;
mod table;

pub use nnf::{is_nnf, to_nnf};
pub use parse::{parse, ParseError};
pub use table::{FormulaId, FormulaTable, Kind, PropId};

use std::fmt;

/// Surface syntax tree. Negation may occur anywhere; `F`, `G` and `->` are
/// expanded during parsing and never appear here.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ast {
    True,
    False,
    Prop(String),
    Not(Box<Ast>),
    And(Box<Ast>, Box<Ast>),
    Or(Box<Ast>, Box<Ast>),
    Next(Box<Ast>),
    Until(Box<Ast>, Box<Ast>),
    Release(Box<Ast>, Box<Ast>),
    Exists(Box<Ast>),
    Forall(Box<Ast>),
}

/// Syntactic fragment of the branching-time language, ordered by inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Fragment {
    Ctl,
    CtlPlus,
    CtlStar,
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fragment::Ctl => write!(f, "CTL"),
            Fragment::CtlPlus => write!(f, "CTL+"),
            Fragment::CtlStar => write!(f, "CTL*"),
        }
    }
}

impl Fragment {
    pub fn parse_name(s: &str) -> Option<Fragment> {
        match s {
            "ctl" => Some(Fragment::Ctl),
            "ctlplus" | "ctl+" => Some(Fragment::CtlPlus),
            "ctlstar" | "ctl*" => Some(Fragment::CtlStar),
            _ => None,
        }
    }
}

impl Ast {
    pub fn not(self) -> Ast {
        Ast::Not(Box::new(self))
    }

    /// `F phi` is sugar for `tt U phi`.
    pub fn finally(self) -> Ast {
        Ast::Until(Box::new(Ast::True), Box::new(self))
    }

    /// `G phi` is sugar for `ff R phi`.
    pub fn globally(self) -> Ast {
        Ast::Release(Box::new(Ast::False), Box::new(self))
    }
}

/// Smallest fragment whose grammar generates `f`. Expects NNF input; the
/// CTL+ check uses the unfolding-extended grammar that also admits
/// `X (phi U psi)` and `X (phi R psi)` as path formulas.
pub fn classify_fragment(f: &Ast) -> Fragment {
    if is_ctl_state(f) {
        Fragment::Ctl
    } else if is_ctlplus_state(f) {
        Fragment::CtlPlus
    } else {
        Fragment::CtlStar
    }
}

fn is_literal(f: &Ast) -> bool {
    matches!(f, Ast::True | Ast::False | Ast::Prop(_))
        || matches!(f, Ast::Not(inner) if matches!(**inner, Ast::Prop(_)))
}

fn is_ctl_state(f: &Ast) -> bool {
    match f {
        _ if is_literal(f) => true,
        Ast::And(l, r) | Ast::Or(l, r) => is_ctl_state(l) && is_ctl_state(r),
        Ast::Exists(p) | Ast::Forall(p) => match &**p {
            Ast::Next(g) => is_ctl_state(g),
            Ast::Until(l, r) | Ast::Release(l, r) => is_ctl_state(l) && is_ctl_state(r),
            _ => false,
        },
        _ => false,
    }
}

fn is_ctlplus_state(f: &Ast) -> bool {
    match f {
        _ if is_literal(f) => true,
        Ast::And(l, r) | Ast::Or(l, r) => is_ctlplus_state(l) && is_ctlplus_state(r),
        Ast::Exists(p) | Ast::Forall(p) => is_ctlplus_path(p),
        _ => false,
    }
}

fn is_ctlplus_path(f: &Ast) -> bool {
    if is_ctlplus_state(f) {
        return true;
    }
    match f {
        Ast::And(l, r) | Ast::Or(l, r) => is_ctlplus_path(l) && is_ctlplus_path(r),
        Ast::Next(g) => match &**g {
            Ast::Until(l, r) | Ast::Release(l, r) => {
                is_ctlplus_state(l) && is_ctlplus_state(r)
            }
            _ => is_ctlplus_state(g),
        },
        Ast::Until(l, r) | Ast::Release(l, r) => is_ctlplus_state(l) && is_ctlplus_state(r),
        _ => false,
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, 0, f)
    }
}

/// Printer precedence levels; higher binds tighter. Sugared `F`/`G` forms
/// print as unary operators and take unary precedence.
fn prec(f: &Ast) -> u8 {
    match f {
        Ast::Or(..) => 1,
        Ast::And(..) => 2,
        Ast::Until(l, _) if matches!(**l, Ast::True) => 4,
        Ast::Release(l, _) if matches!(**l, Ast::False) => 4,
        Ast::Until(..) | Ast::Release(..) => 3,
        _ => 4,
    }
}

fn fmt_prec(f: &Ast, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let p = prec(f);
    if p < min {
        write!(out, "(")?;
        fmt_inner(f, out)?;
        write!(out, ")")
    } else {
        fmt_inner(f, out)
    }
}

fn fmt_inner(f: &Ast, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Ast::True => write!(out, "tt"),
        Ast::False => write!(out, "ff"),
        Ast::Prop(name) => write!(out, "{name}"),
        Ast::Not(g) => {
            write!(out, "!")?;
            fmt_prec(g, 4, out)
        }
        Ast::And(l, r) => {
            fmt_prec(l, 3, out)?;
            write!(out, " & ")?;
            fmt_prec(r, 3, out)
        }
        Ast::Or(l, r) => {
            fmt_prec(l, 2, out)?;
            write!(out, " | ")?;
            fmt_prec(r, 2, out)
        }
        // U and R are right-associative, so the left operand needs a level up.
        Ast::Until(l, r) => {
            if matches!(**l, Ast::True) {
                write!(out, "F ")?;
                return fmt_prec(r, 4, out);
            }
            fmt_prec(l, 4, out)?;
            write!(out, " U ")?;
            fmt_prec(r, 3, out)
        }
        Ast::Release(l, r) => {
            if matches!(**l, Ast::False) {
                write!(out, "G ")?;
                return fmt_prec(r, 4, out);
            }
            fmt_prec(l, 4, out)?;
            write!(out, " R ")?;
            fmt_prec(r, 3, out)
        }
        Ast::Next(g) => {
            write!(out, "X ")?;
            fmt_prec(g, 4, out)
        }
        Ast::Exists(g) => {
            write!(out, "E ")?;
            fmt_prec(g, 4, out)
        }
        Ast::Forall(g) => {
            write!(out, "A ")?;
            fmt_prec(g, 4, out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let ctl = to_nnf(&parse("A (p U q)").unwrap());
        assert_eq!(classify_fragment(&ctl), Fragment::Ctl);
        let plus = to_nnf(&parse("E ((p U q) & (r R s))").unwrap());
        assert_eq!(classify_fragment(&plus), Fragment::CtlPlus);
        let star = to_nnf(&parse("A F G p").unwrap());
        assert_eq!(classify_fragment(&star), Fragment::CtlStar);
    }

    #[test]
    fn ctl_requires_quantified_temporal() {
        // `E p` is only CTL+ : the CTL grammar forces a temporal operator
        // directly under every path quantifier.
        let f = to_nnf(&parse("E p").unwrap());
        assert_eq!(classify_fragment(&f), Fragment::CtlPlus);
    }

    #[test]
    fn extended_ctlplus_grammar_admits_x_unfoldings() {
        let f = to_nnf(&parse("E (X (p U q))").unwrap());
        assert_eq!(classify_fragment(&f), Fragment::CtlPlus);
        let g = to_nnf(&parse("E (X (p U q) & G r)").unwrap());
        assert_eq!(classify_fragment(&g), Fragment::CtlPlus);
    }

    #[test]
    fn fragments_are_nested() {
        for text in ["A (p U q)", "E X p & A X q", "A G (p -> E X p)"] {
            let f = to_nnf(&parse(text).unwrap());
            assert_eq!(classify_fragment(&f), Fragment::Ctl);
            assert!(is_ctlplus_state(&f), "CTL formula must satisfy CTL+ grammar");
        }
        for text in ["E (F p & F q)", "A (p U q | G r)"] {
            let f = to_nnf(&parse(text).unwrap());
            assert!(is_ctlplus_state(&f));
        }
    }
}
