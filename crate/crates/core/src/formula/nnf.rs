//! Negation normal form: push negation down to propositions using De Morgan,
//! the U/R fixpoint duality and `!X phi = X !phi`.

use super::Ast;

pub fn to_nnf(f: &Ast) -> Ast {
    match f {
        Ast::Not(inner) => negate(inner),
        Ast::True | Ast::False | Ast::Prop(_) => f.clone(),
        Ast::And(l, r) => Ast::And(Box::new(to_nnf(l)), Box::new(to_nnf(r))),
        Ast::Or(l, r) => Ast::Or(Box::new(to_nnf(l)), Box::new(to_nnf(r))),
        Ast::Next(g) => Ast::Next(Box::new(to_nnf(g))),
        Ast::Until(l, r) => Ast::Until(Box::new(to_nnf(l)), Box::new(to_nnf(r))),
        Ast::Release(l, r) => Ast::Release(Box::new(to_nnf(l)), Box::new(to_nnf(r))),
        Ast::Exists(g) => Ast::Exists(Box::new(to_nnf(g))),
        Ast::Forall(g) => Ast::Forall(Box::new(to_nnf(g))),
    }
}

fn negate(f: &Ast) -> Ast {
    match f {
        Ast::True => Ast::False,
        Ast::False => Ast::True,
        Ast::Prop(_) => Ast::Not(Box::new(f.clone())),
        Ast::Not(inner) => to_nnf(inner),
        Ast::And(l, r) => Ast::Or(Box::new(negate(l)), Box::new(negate(r))),
        Ast::Or(l, r) => Ast::And(Box::new(negate(l)), Box::new(negate(r))),
        Ast::Next(g) => Ast::Next(Box::new(negate(g))),
        Ast::Until(l, r) => Ast::Release(Box::new(negate(l)), Box::new(negate(r))),
        Ast::Release(l, r) => Ast::Until(Box::new(negate(l)), Box::new(negate(r))),
        Ast::Exists(g) => Ast::Forall(Box::new(negate(g))),
        Ast::Forall(g) => Ast::Exists(Box::new(negate(g))),
    }
}

/// True iff negation occurs only directly on propositions.
pub fn is_nnf(f: &Ast) -> bool {
    match f {
        Ast::True | Ast::False | Ast::Prop(_) => true,
        Ast::Not(inner) => matches!(**inner, Ast::Prop(_)),
        Ast::And(l, r) | Ast::Or(l, r) | Ast::Until(l, r) | Ast::Release(l, r) => {
            is_nnf(l) && is_nnf(r)
        }
        Ast::Next(g) | Ast::Exists(g) | Ast::Forall(g) => is_nnf(g),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn de_morgan_on_conjunction() {
        let f = to_nnf(&parse("!(p & q)").unwrap());
        assert_eq!(f, parse("!p | !q").unwrap());
    }

    #[test]
    fn fixpoint_duality() {
        let f = to_nnf(&parse("!(p U q)").unwrap());
        assert_eq!(f, parse("!p R !q").unwrap());
        let g = to_nnf(&parse("!(p R q)").unwrap());
        assert_eq!(g, parse("!p U !q").unwrap());
    }

    #[test]
    fn negation_commutes_with_next() {
        let f = to_nnf(&parse("!X p").unwrap());
        assert_eq!(f, parse("X !p").unwrap());
    }

    #[test]
    fn quantifier_duality() {
        let f = to_nnf(&parse("!A F G p").unwrap());
        assert_eq!(f, parse("E G F !p").unwrap());
        assert!(is_nnf(&f));
    }

    #[test]
    fn idempotent_and_double_negation_stable() {
        for text in ["!(p U (q & !X r))", "!E (p U !A G q)", "p -> q -> r"] {
            let once = to_nnf(&parse(text).unwrap());
            assert!(is_nnf(&once));
            assert_eq!(to_nnf(&once), once, "to_nnf not idempotent on {text}");
            let neg_neg = to_nnf(&Ast::Not(Box::new(to_nnf(&Ast::Not(Box::new(once.clone()))))));
            assert_eq!(neg_neg, once, "double negation not stable on {text}");
        }
    }
}
