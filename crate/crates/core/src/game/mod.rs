//! Configurations, quantifier-bound blocks and the symbolic alphabet of rule
//! applications, shared by the CTL* and CTL rule systems.

mod ctl;
mod rules;

pub use ctl::{
    ctl_formula_descendants, ctl_initial_configuration, ctl_is_consistent, ctl_rule_branches,
    ctl_select_principal, ctl_successors, CtlEngine, CtlLetter,
};
pub use rules::{
    apply_rule, block_descendants, con_e, formula_descendants, select_principal, successors,
    strip_x_set, CtlStarEngine,
};

use crate::formula::{FormulaId, FormulaTable, Kind};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Block quantifier. `A` sorts before `E`; A-blocks are disjunctions,
/// E-blocks conjunctions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quant {
    A,
    E,
}

impl fmt::Display for Quant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quant::A => write!(f, "A"),
            Quant::E => write!(f, "E"),
        }
    }
}

/// Interned sorted formula set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetId(pub u32);

/// Interned canonical configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConfigId(pub u32);

/// A quantifier-bound formula block.
pub type Block = (Quant, SetId);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConfigData {
    /// Deduplicated, sorted by (quantifier, member ids).
    pub blocks: Vec<Block>,
    /// Top-level literal part, `tt` dropped.
    pub literals: Vec<FormulaId>,
    pub consistent: bool,
}

/// One symbolic rule application, the letters of the play alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlayLetter {
    /// A non-modal rule: principal block, principal formula, branch index.
    /// Branch 0 is the left successor as printed in the rules, 1 the right;
    /// unary rules use 0 only.
    Rule {
        quant: Quant,
        block: SetId,
        principal: FormulaId,
        branch: u8,
    },
    /// Removal of an empty E-block.
    Ett,
    X0,
    /// The modal rule choosing one E-block (content as in the source, i.e.
    /// still X-prefixed).
    X1 { block: SetId },
}

impl PlayLetter {
    pub fn is_modal(&self) -> bool {
        matches!(self, PlayLetter::X0 | PlayLetter::X1 { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleName {
    AAnd,
    AOr,
    ALit,
    AUntil,
    ARelease,
    AE,
    AA,
    EAnd,
    EOr,
    ELit,
    EUntil,
    ERelease,
    EE,
    EA,
    Ett,
    X0,
    X1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Owner {
    Zero,
    One,
}

/// Result of expanding a configuration: its owner and outgoing moves.
#[derive(Debug, Clone)]
pub struct Expansion<L, C> {
    pub owner: Owner,
    pub kind: ExpansionKind,
    pub moves: Vec<(L, C)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionKind {
    /// Consistent or not, only literals remain; no moves.
    Terminal,
    /// No rule applies (an empty A-block denotes ff); lost by the owner.
    Stuck,
    Rule(RuleName),
    Modal,
}

/// Per-problem context: the formula table plus the set and configuration
/// interners. Interners are behind mutexes so automata oracles may be
/// queried concurrently; ids are handed out in first-come order.
pub struct Problem {
    pub table: FormulaTable,
    sets: Mutex<Interner<Arc<[FormulaId]>>>,
    configs: Mutex<Interner<Arc<ConfigData>>>,
}

struct Interner<T: Clone + Eq + std::hash::Hash> {
    map: HashMap<T, u32>,
    items: Vec<T>,
}

impl<T: Clone + Eq + std::hash::Hash> Interner<T> {
    fn new() -> Self {
        Interner { map: HashMap::new(), items: Vec::new() }
    }

    fn intern(&mut self, item: T) -> u32 {
        if let Some(&id) = self.map.get(&item) {
            return id;
        }
        let id = self.items.len() as u32;
        self.items.push(item.clone());
        self.map.insert(item, id);
        id
    }

    fn get(&self, id: u32) -> T {
        self.items[id as usize].clone()
    }
}

impl Problem {
    pub fn new(table: FormulaTable) -> Problem {
        Problem {
            table,
            sets: Mutex::new(Interner::new()),
            configs: Mutex::new(Interner::new()),
        }
    }

    pub fn intern_set(&self, mut members: Vec<FormulaId>) -> SetId {
        members.sort();
        members.dedup();
        SetId(self.sets.lock().unwrap().intern(members.into()))
    }

    pub fn empty_set(&self) -> SetId {
        self.intern_set(Vec::new())
    }

    pub fn set(&self, id: SetId) -> Arc<[FormulaId]> {
        self.sets.lock().unwrap().get(id.0)
    }

    pub fn set_contains(&self, id: SetId, f: FormulaId) -> bool {
        self.set(id).binary_search(&f).is_ok()
    }

    /// Canonicalize and intern a configuration. Duplicate blocks collapse,
    /// `tt` is dropped from the literal part, and a configuration that would
    /// become empty is the trivially true `{tt}`.
    pub fn intern_config(
        &self,
        mut blocks: Vec<Block>,
        mut literals: Vec<FormulaId>,
    ) -> ConfigId {
        let tt = self.table.lookup(Kind::Tt);
        literals.retain(|f| Some(*f) != tt);
        literals.sort();
        literals.dedup();
        blocks.sort_by_cached_key(|b| (b.0, self.set(b.1)));
        blocks.dedup();
        if blocks.is_empty() && literals.is_empty() {
            let tt = tt.expect("tt must be interned to canonicalize the empty configuration");
            literals.push(tt);
        }
        let consistent = self.literals_consistent(&literals);
        let data = Arc::new(ConfigData { blocks, literals, consistent });
        ConfigId(self.configs.lock().unwrap().intern(data))
    }

    fn literals_consistent(&self, literals: &[FormulaId]) -> bool {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for &f in literals {
            match self.table.kind(f) {
                Kind::Ff => return false,
                Kind::Prop(p) => pos.push(p),
                Kind::NegProp(p) => neg.push(p),
                _ => {}
            }
        }
        !pos.iter().any(|p| neg.contains(p))
    }

    pub fn config(&self, id: ConfigId) -> Arc<ConfigData> {
        self.configs.lock().unwrap().get(id.0)
    }

    /// `E{root}` for CTL* and CTL+.
    pub fn initial_configuration(&self) -> ConfigId {
        let block = self.intern_set(vec![self.table.root()]);
        self.intern_config(vec![(Quant::E, block)], Vec::new())
    }

    pub fn is_consistent(&self, id: ConfigId) -> bool {
        self.config(id).consistent
    }

    /// Debug dump in the paper's notation, e.g. `A(G p, X F G p), E(E F !p)`.
    pub fn dump_configuration(&self, id: ConfigId) -> String {
        let data = self.config(id);
        let mut parts = Vec::new();
        for (q, s) in &data.blocks {
            parts.push(format!("{q}({})", self.table.display_set(&self.set(*s))));
        }
        if !data.literals.is_empty() {
            parts.push(self.table.display_set(&data.literals));
        }
        parts.join(", ")
    }
}
