//! Hash-consed formula table indexed by Fischer-Ladner closure position.
//!
//! Ids are assigned post-order over the input, then the `X`-guarded copies of
//! every U/R formula are appended. The id order is the canonical total order
//! used for principal selection, the U-enumeration and set canonicalization.

use super::{classify_fragment, is_nnf, Ast, Fragment};
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormulaId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropId(pub u32);

impl FormulaId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Tt,
    Ff,
    Prop(PropId),
    NegProp(PropId),
    And(FormulaId, FormulaId),
    Or(FormulaId, FormulaId),
    Next(FormulaId),
    Until(FormulaId, FormulaId),
    Release(FormulaId, FormulaId),
    Exists(FormulaId),
    Forall(FormulaId),
}

#[derive(Debug)]
pub struct FormulaTable {
    root: FormulaId,
    kinds: Vec<Kind>,
    cons: HashMap<Kind, FormulaId>,
    prop_names: Vec<String>,
    prop_ids: HashMap<String, PropId>,
    /// Number of distinct subformulas per id ("size" in the principal order).
    sizes: Vec<u32>,
    subf_len: u32,
    fl_len: u32,
    /// U-formulas of the closure in ascending id order.
    untils: Vec<FormulaId>,
    fragment: Fragment,
}

impl FormulaTable {
    /// Build the table for an NNF formula. For CTL input the quantified
    /// `Q X Q(U/R)` unfolding wrappers are registered past the closure so the
    /// CTL rules can emit them without mutating the table later.
    pub fn build(nnf: &Ast) -> FormulaTable {
        assert!(is_nnf(nnf), "formula table requires NNF input");
        let fragment = classify_fragment(nnf);
        let mut t = FormulaTable {
            root: FormulaId(0),
            kinds: Vec::new(),
            cons: HashMap::new(),
            prop_names: Vec::new(),
            prop_ids: HashMap::new(),
            sizes: Vec::new(),
            subf_len: 0,
            fl_len: 0,
            untils: Vec::new(),
            fragment,
        };
        t.root = t.ingest(nnf);
        t.subf_len = t.kinds.len() as u32;

        // Close under X(phi U psi) / X(phi R psi).
        for i in 0..t.subf_len {
            let f = FormulaId(i);
            if matches!(t.kinds[f.index()], Kind::Until(..) | Kind::Release(..)) {
                t.intern(Kind::Next(f));
            }
        }
        t.fl_len = t.kinds.len() as u32;

        t.untils = (0..t.fl_len)
            .map(FormulaId)
            .filter(|f| matches!(t.kind(*f), Kind::Until(..)))
            .collect();

        if fragment == Fragment::Ctl {
            for i in 0..t.subf_len {
                let f = FormulaId(i);
                let wrap = match t.kinds[f.index()] {
                    Kind::Exists(body) | Kind::Forall(body) => {
                        matches!(t.kinds[body.index()], Kind::Until(..) | Kind::Release(..))
                    }
                    _ => false,
                };
                if wrap {
                    let x = t.intern(Kind::Next(f));
                    match t.kinds[f.index()] {
                        Kind::Exists(_) => t.intern(Kind::Exists(x)),
                        Kind::Forall(_) => t.intern(Kind::Forall(x)),
                        _ => unreachable!(),
                    };
                }
            }
        }
        t
    }

    fn ingest(&mut self, f: &Ast) -> FormulaId {
        let kind = match f {
            Ast::True => Kind::Tt,
            Ast::False => Kind::Ff,
            Ast::Prop(name) => Kind::Prop(self.prop(name)),
            Ast::Not(inner) => match &**inner {
                Ast::Prop(name) => Kind::NegProp(self.prop(name)),
                _ => unreachable!("non-NNF negation"),
            },
            Ast::And(l, r) => {
                let (l, r) = (self.ingest(l), self.ingest(r));
                Kind::And(l, r)
            }
            Ast::Or(l, r) => {
                let (l, r) = (self.ingest(l), self.ingest(r));
                Kind::Or(l, r)
            }
            Ast::Next(g) => {
                let g = self.ingest(g);
                Kind::Next(g)
            }
            Ast::Until(l, r) => {
                let (l, r) = (self.ingest(l), self.ingest(r));
                Kind::Until(l, r)
            }
            Ast::Release(l, r) => {
                let (l, r) = (self.ingest(l), self.ingest(r));
                Kind::Release(l, r)
            }
            Ast::Exists(g) => {
                let g = self.ingest(g);
                Kind::Exists(g)
            }
            Ast::Forall(g) => {
                let g = self.ingest(g);
                Kind::Forall(g)
            }
        };
        self.intern(kind)
    }

    fn prop(&mut self, name: &str) -> PropId {
        if let Some(&id) = self.prop_ids.get(name) {
            return id;
        }
        let id = PropId(self.prop_names.len() as u32);
        self.prop_names.push(name.to_string());
        self.prop_ids.insert(name.to_string(), id);
        id
    }

    fn intern(&mut self, kind: Kind) -> FormulaId {
        if let Some(&id) = self.cons.get(&kind) {
            return id;
        }
        let id = FormulaId(self.kinds.len() as u32);
        self.kinds.push(kind);
        let size = match kind {
            Kind::Tt | Kind::Ff | Kind::Prop(_) | Kind::NegProp(_) => 1,
            Kind::Next(g) | Kind::Exists(g) | Kind::Forall(g) => {
                1 + self.count_subf_union(&[g])
            }
            Kind::And(l, r) | Kind::Or(l, r) | Kind::Until(l, r) | Kind::Release(l, r) => {
                1 + self.count_subf_union(&[l, r])
            }
        };
        self.sizes.push(size);
        self.cons.insert(kind, id);
        id
    }

    /// Distinct subformulas of the given (already interned) formulas.
    fn count_subf_union(&self, roots: &[FormulaId]) -> u32 {
        let mut seen = vec![false; self.kinds.len()];
        let mut stack: Vec<FormulaId> = roots.to_vec();
        let mut count = 0;
        while let Some(f) = stack.pop() {
            if seen[f.index()] {
                continue;
            }
            seen[f.index()] = true;
            count += 1;
            match self.kinds[f.index()] {
                Kind::Tt | Kind::Ff | Kind::Prop(_) | Kind::NegProp(_) => {}
                Kind::Next(g) | Kind::Exists(g) | Kind::Forall(g) => stack.push(g),
                Kind::And(l, r)
                | Kind::Or(l, r)
                | Kind::Until(l, r)
                | Kind::Release(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
            }
        }
        count
    }

    pub fn root(&self) -> FormulaId {
        self.root
    }

    pub fn kind(&self, f: FormulaId) -> Kind {
        self.kinds[f.index()]
    }

    pub fn fragment(&self) -> Fragment {
        self.fragment
    }

    /// Number of distinct subformulas, the paper's |formula| size measure.
    pub fn size(&self, f: FormulaId) -> u32 {
        self.sizes[f.index()]
    }

    pub fn root_size(&self) -> u32 {
        self.size(self.root)
    }

    pub fn subf_count(&self) -> u32 {
        self.subf_len
    }

    pub fn fl_count(&self) -> u32 {
        self.fl_len
    }

    pub fn fl_ids(&self) -> impl Iterator<Item = FormulaId> + '_ {
        (0..self.fl_len).map(FormulaId)
    }

    /// The k enumerated U-formulas of the closure.
    pub fn untils(&self) -> &[FormulaId] {
        &self.untils
    }

    pub fn until_index(&self, f: FormulaId) -> Option<usize> {
        self.untils.binary_search(&f).ok()
    }

    /// Members of FL_R: R-formulas and X-guarded R-formulas.
    pub fn is_fl_r(&self, f: FormulaId) -> bool {
        match self.kind(f) {
            Kind::Release(..) => true,
            Kind::Next(g) => matches!(self.kind(g), Kind::Release(..)),
            _ => false,
        }
    }

    pub fn is_literal(&self, f: FormulaId) -> bool {
        matches!(
            self.kind(f),
            Kind::Tt | Kind::Ff | Kind::Prop(_) | Kind::NegProp(_)
        )
    }

    pub fn lookup(&self, kind: Kind) -> Option<FormulaId> {
        self.cons.get(&kind).copied()
    }

    /// `X f`, which exists for every U/R formula of the closure and every
    /// CTL unfolding wrapper.
    pub fn next_of(&self, f: FormulaId) -> Option<FormulaId> {
        self.lookup(Kind::Next(f))
    }

    /// For a CTL formula `Q(phi U psi)` / `Q(phi R psi)` the pre-registered
    /// `Q X Q(...)` wrapper emitted by the unfolding rules.
    pub fn ctl_unfold_wrapper(&self, f: FormulaId) -> Option<FormulaId> {
        let x = self.next_of(f)?;
        match self.kind(f) {
            Kind::Exists(_) => self.lookup(Kind::Exists(x)),
            Kind::Forall(_) => self.lookup(Kind::Forall(x)),
            _ => None,
        }
    }

    pub fn prop_name(&self, p: PropId) -> &str {
        &self.prop_names[p.0 as usize]
    }

    pub fn prop_count(&self) -> usize {
        self.prop_names.len()
    }

    /// Render in the surface syntax, re-sugaring `tt U`/`ff R` to `F`/`G`.
    pub fn display(&self, f: FormulaId) -> String {
        self.to_ast(f).to_string()
    }

    pub fn to_ast(&self, f: FormulaId) -> Ast {
        match self.kind(f) {
            Kind::Tt => Ast::True,
            Kind::Ff => Ast::False,
            Kind::Prop(p) => Ast::Prop(self.prop_name(p).to_string()),
            Kind::NegProp(p) => Ast::Prop(self.prop_name(p).to_string()).not(),
            Kind::And(l, r) => Ast::And(Box::new(self.to_ast(l)), Box::new(self.to_ast(r))),
            Kind::Or(l, r) => Ast::Or(Box::new(self.to_ast(l)), Box::new(self.to_ast(r))),
            Kind::Next(g) => Ast::Next(Box::new(self.to_ast(g))),
            Kind::Until(l, r) => {
                Ast::Until(Box::new(self.to_ast(l)), Box::new(self.to_ast(r)))
            }
            Kind::Release(l, r) => {
                Ast::Release(Box::new(self.to_ast(l)), Box::new(self.to_ast(r)))
            }
            Kind::Exists(g) => Ast::Exists(Box::new(self.to_ast(g))),
            Kind::Forall(g) => Ast::Forall(Box::new(self.to_ast(g))),
        }
    }

    /// Comma-separated rendering of a formula set, ascending id order.
    pub fn display_set(&self, fs: &[FormulaId]) -> String {
        let mut s = String::new();
        for (i, f) in fs.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{}", self.display(*f));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse, to_nnf};
    use super::*;

    fn table(text: &str) -> FormulaTable {
        FormulaTable::build(&to_nnf(&parse(text).unwrap()))
    }

    #[test]
    fn closure_of_quantified_until() {
        let t = table("E (p U q)");
        // FL = { E(pUq), pUq, X(pUq), p, q }
        assert_eq!(t.fl_count(), 5);
        assert_eq!(t.subf_count(), 4);
        assert_eq!(t.untils().len(), 1);
        let u = t.untils()[0];
        assert!(matches!(t.kind(u), Kind::Until(..)));
        assert!(t.next_of(u).is_some());
    }

    #[test]
    fn closure_of_literal_is_singleton() {
        let t = table("p");
        assert_eq!(t.fl_count(), 1);
        assert!(t.is_literal(t.root()));
    }

    #[test]
    fn closure_of_running_example() {
        let t = table("A F G p & E G E F !p");
        assert!(t.fl_count() <= 2 * t.subf_count());
        // X F G p, X G p, X G E F !p, X F !p must all be present.
        let mut x_forms = 0;
        for f in t.fl_ids() {
            if let Kind::Next(g) = t.kind(f) {
                assert!(matches!(t.kind(g), Kind::Until(..) | Kind::Release(..)));
                x_forms += 1;
            }
        }
        assert_eq!(x_forms, 4);
        assert_eq!(t.untils().len(), 2);
        assert_eq!(t.fragment(), Fragment::CtlStar);
    }

    #[test]
    fn hash_consing_dedups_structurally_equal_nodes() {
        let t = table("(p & q) | (p & q)");
        let root = t.root();
        match t.kind(root) {
            Kind::Or(l, r) => assert_eq!(l, r),
            other => panic!("unexpected root {other:?}"),
        }
    }

    #[test]
    fn sizes_count_distinct_subformulas() {
        let t = table("p & p");
        // subf(p & p) = { p & p, p }
        assert_eq!(t.size(t.root()), 2);
        let t = table("A F G p");
        // subf = { AFGp, tt U Gp, tt, ff R p, ff, p }
        assert_eq!(t.size(t.root()), 6);
    }

    #[test]
    fn ctl_tables_carry_unfolding_wrappers() {
        let t = table("E (p U q) & A (p R q)");
        assert_eq!(t.fragment(), Fragment::Ctl);
        for f in t.fl_ids() {
            if matches!(t.kind(f), Kind::Exists(b) | Kind::Forall(b)
                if matches!(t.kind(b), Kind::Until(..) | Kind::Release(..)))
            {
                assert!(t.ctl_unfold_wrapper(f).is_some());
            }
        }
    }

    #[test]
    fn until_enumeration_is_id_ordered_and_stable() {
        let t = table("E (p U q) & E (q U p)");
        let ids: Vec<u32> = t.untils().iter().map(|f| f.0).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn display_resugars() {
        let t = table("A F G p");
        assert_eq!(t.display(t.root()), "A F G p");
        let t = table("E (p U q)");
        assert_eq!(t.display(t.root()), "E (p U q)");
    }
}
