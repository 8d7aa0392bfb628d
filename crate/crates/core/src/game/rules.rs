//! The CTL* game rules: principal scheduling, successor generation with
//! symbolic letters, and the block/formula connection relation the winning
//! condition automata follow.

use super::{
    Block, ConfigId, Expansion, ExpansionKind, Owner, PlayLetter, Problem, Quant, RuleName, SetId,
};
use crate::formula::{FormulaId, Kind};

/// Rule for a principal formula of the given kind inside a block.
fn rule_for(quant: Quant, kind: Kind) -> RuleName {
    match (quant, kind) {
        (Quant::A, Kind::And(..)) => RuleName::AAnd,
        (Quant::A, Kind::Or(..)) => RuleName::AOr,
        (Quant::A, Kind::Until(..)) => RuleName::AUntil,
        (Quant::A, Kind::Release(..)) => RuleName::ARelease,
        (Quant::A, Kind::Exists(_)) => RuleName::AE,
        (Quant::A, Kind::Forall(_)) => RuleName::AA,
        (Quant::E, Kind::And(..)) => RuleName::EAnd,
        (Quant::E, Kind::Or(..)) => RuleName::EOr,
        (Quant::E, Kind::Until(..)) => RuleName::EUntil,
        (Quant::E, Kind::Release(..)) => RuleName::ERelease,
        (Quant::E, Kind::Exists(_)) => RuleName::EE,
        (Quant::E, Kind::Forall(_)) => RuleName::EA,
        (Quant::A, _) => RuleName::ALit,
        (Quant::E, _) => RuleName::ELit,
    }
}

fn is_choice(rule: RuleName) -> bool {
    matches!(
        rule,
        RuleName::ALit
            | RuleName::AA
            | RuleName::AE
            | RuleName::EOr
            | RuleName::EUntil
            | RuleName::ERelease
    )
}

/// The deterministic scheduling policy: among all formulas inside blocks
/// whose outermost connective is not X, pick one of maximal size. Ties break
/// towards the smallest closure index, A-blocks before E-blocks, then the
/// lexicographically smallest block content. Returns `None` at the modal
/// stage (only X-formulas and literals remain) and on stuck configurations.
pub fn select_principal(
    problem: &Problem,
    config: ConfigId,
) -> Option<(Quant, SetId, FormulaId, RuleName)> {
    let data = problem.config(config);
    let table = &problem.table;
    let mut best: Option<(u32, FormulaId, Quant, SetId)> = None;
    for &(q, s) in &data.blocks {
        let members = problem.set(s);
        for &f in members.iter() {
            if matches!(table.kind(f), Kind::Next(_)) {
                continue;
            }
            let size = table.size(f);
            let better = match &best {
                None => true,
                Some((bsize, bf, bq, bs)) => {
                    let cand_content = problem.set(s);
                    let best_content = problem.set(*bs);
                    (std::cmp::Reverse(size), f, q, cand_content)
                        < (std::cmp::Reverse(*bsize), *bf, *bq, best_content)
                }
            };
            if better {
                best = Some((size, f, q, s));
            }
        }
    }
    best.map(|(_, f, q, s)| (q, s, f, rule_for(q, kind_of(problem, f))))
}

fn kind_of(problem: &Problem, f: FormulaId) -> Kind {
    problem.table.kind(f)
}

/// Strip the outer X from every member of a modal-stage block.
pub fn strip_x_set(problem: &Problem, s: SetId) -> SetId {
    let members = problem.set(s);
    let stripped: Vec<FormulaId> = members
        .iter()
        .map(|&f| match problem.table.kind(f) {
            Kind::Next(g) => g,
            _ => panic!("block member without leading X at the modal stage"),
        })
        .collect();
    problem.intern_set(stripped)
}

/// Descendant blocks for a branch of a rule application, together with the
/// literals that move into the literal part, and the formula-level
/// descendants of the principal in each block.
struct BranchSpec {
    blocks: Vec<(Quant, Vec<FormulaId>, bool, Vec<FormulaId>)>,
    literal: Option<FormulaId>,
}

fn branch_specs(
    problem: &Problem,
    quant: Quant,
    block: SetId,
    principal: FormulaId,
    rule: RuleName,
) -> Vec<BranchSpec> {
    let table = &problem.table;
    let rest: Vec<FormulaId> = problem
        .set(block)
        .iter()
        .copied()
        .filter(|&f| f != principal)
        .collect();
    let with = |extra: &[FormulaId]| {
        let mut v = rest.clone();
        v.extend_from_slice(extra);
        v
    };
    let q = quant;
    match (rule, table.kind(principal)) {
        (RuleName::AAnd | RuleName::EAnd, Kind::And(l, r)) => {
            if q == Quant::A {
                vec![BranchSpec {
                    blocks: vec![
                        (q, with(&[l]), false, vec![l]),
                        (q, with(&[r]), false, vec![r]),
                    ],
                    literal: None,
                }]
            } else {
                vec![BranchSpec {
                    blocks: vec![(q, with(&[l, r]), false, vec![l, r])],
                    literal: None,
                }]
            }
        }
        (RuleName::AOr | RuleName::EOr, Kind::Or(l, r)) => {
            if q == Quant::A {
                vec![BranchSpec {
                    blocks: vec![(q, with(&[l, r]), false, vec![l, r])],
                    literal: None,
                }]
            } else {
                vec![
                    BranchSpec { blocks: vec![(q, with(&[l]), false, vec![l])], literal: None },
                    BranchSpec { blocks: vec![(q, with(&[r]), false, vec![r])], literal: None },
                ]
            }
        }
        (RuleName::AUntil | RuleName::EUntil, Kind::Until(l, r)) => {
            let x = table.next_of(principal).expect("X-form is in the closure");
            if q == Quant::A {
                vec![BranchSpec {
                    blocks: vec![
                        (q, with(&[r, l]), false, vec![r, l]),
                        (q, with(&[r, x]), false, vec![r, x]),
                    ],
                    literal: None,
                }]
            } else {
                vec![
                    BranchSpec { blocks: vec![(q, with(&[r]), false, vec![r])], literal: None },
                    BranchSpec {
                        blocks: vec![(q, with(&[l, x]), false, vec![l, x])],
                        literal: None,
                    },
                ]
            }
        }
        (RuleName::ARelease | RuleName::ERelease, Kind::Release(l, r)) => {
            let x = table.next_of(principal).expect("X-form is in the closure");
            if q == Quant::A {
                vec![BranchSpec {
                    blocks: vec![
                        (q, with(&[r]), false, vec![r]),
                        (q, with(&[l, x]), false, vec![l, x]),
                    ],
                    literal: None,
                }]
            } else {
                vec![
                    BranchSpec {
                        blocks: vec![(q, with(&[r, l]), false, vec![r, l])],
                        literal: None,
                    },
                    BranchSpec {
                        blocks: vec![(q, with(&[r, x]), false, vec![r, x])],
                        literal: None,
                    },
                ]
            }
        }
        (RuleName::AA, Kind::Forall(g)) => vec![
            BranchSpec { blocks: vec![(Quant::A, vec![g], true, vec![g])], literal: None },
            BranchSpec { blocks: vec![(Quant::A, rest.clone(), false, vec![])], literal: None },
        ],
        (RuleName::AE, Kind::Exists(g)) => vec![
            BranchSpec { blocks: vec![(Quant::E, vec![g], true, vec![g])], literal: None },
            BranchSpec { blocks: vec![(Quant::A, rest.clone(), false, vec![])], literal: None },
        ],
        (RuleName::EE, Kind::Exists(g)) => vec![BranchSpec {
            blocks: vec![
                (Quant::E, vec![g], true, vec![g]),
                (Quant::E, rest.clone(), false, vec![]),
            ],
            literal: None,
        }],
        (RuleName::EA, Kind::Forall(g)) => vec![BranchSpec {
            blocks: vec![
                (Quant::A, vec![g], true, vec![g]),
                (Quant::E, rest.clone(), false, vec![]),
            ],
            literal: None,
        }],
        (RuleName::ALit, _) => vec![
            BranchSpec { blocks: vec![], literal: Some(principal) },
            BranchSpec { blocks: vec![(Quant::A, rest.clone(), false, vec![])], literal: None },
        ],
        (RuleName::ELit, _) => vec![BranchSpec {
            blocks: vec![(Quant::E, rest.clone(), false, vec![])],
            literal: Some(principal),
        }],
        (rule, kind) => panic!("rule {rule:?} does not match principal kind {kind:?}"),
    }
}

/// Apply the scheduled rule, producing one `(letter, successor)` per branch.
pub fn apply_rule(
    problem: &Problem,
    config: ConfigId,
    quant: Quant,
    block: SetId,
    principal: FormulaId,
    rule: RuleName,
) -> Vec<(PlayLetter, ConfigId)> {
    let data = problem.config(config);
    let specs = branch_specs(problem, quant, block, principal, rule);
    debug_assert_eq!(specs.len(), if is_choice(rule) { 2 } else { 1 });
    let mut moves = Vec::new();
    for (branch, spec) in specs.iter().enumerate() {
        let mut blocks: Vec<Block> = data
            .blocks
            .iter()
            .copied()
            .filter(|&b| b != (quant, block))
            .collect();
        for (q, members, _, _) in &spec.blocks {
            blocks.push((*q, problem.intern_set(members.clone())));
        }
        let mut literals = data.literals.clone();
        if let Some(l) = spec.literal {
            literals.push(l);
        }
        let letter = PlayLetter::Rule {
            quant,
            block,
            principal,
            branch: branch as u8,
        };
        moves.push((letter, problem.intern_config(blocks, literals)));
    }
    moves
}

/// Expand a configuration into its moves. Owner is player 1 exactly when
/// rule (X1) applies; dead ends (stuck or terminal) have no moves and the
/// arena realizes the dead-end convention with win sinks.
pub fn successors(problem: &Problem, config: ConfigId) -> Expansion<PlayLetter, ConfigId> {
    let data = problem.config(config);

    // An empty A-block denotes ff; nothing sensible can be done with it.
    if data
        .blocks
        .iter()
        .any(|&(q, s)| q == Quant::A && problem.set(s).is_empty())
    {
        return Expansion { owner: Owner::Zero, kind: ExpansionKind::Stuck, moves: vec![] };
    }

    // An empty E-block denotes tt and is removed first.
    if let Some(&(_, s)) = data
        .blocks
        .iter()
        .find(|&&(q, s)| q == Quant::E && problem.set(s).is_empty())
    {
        let blocks: Vec<Block> = data
            .blocks
            .iter()
            .copied()
            .filter(|&b| b != (Quant::E, s))
            .collect();
        let succ = problem.intern_config(blocks, data.literals.clone());
        return Expansion {
            owner: Owner::Zero,
            kind: ExpansionKind::Rule(RuleName::Ett),
            moves: vec![(PlayLetter::Ett, succ)],
        };
    }

    if let Some((quant, block, principal, rule)) = select_principal(problem, config) {
        let moves = apply_rule(problem, config, quant, block, principal, rule);
        return Expansion { owner: Owner::Zero, kind: ExpansionKind::Rule(rule), moves };
    }

    // Modal stage: all block members carry a leading X.
    let e_blocks: Vec<SetId> = data
        .blocks
        .iter()
        .filter(|(q, _)| *q == Quant::E)
        .map(|(_, s)| *s)
        .collect();
    let a_blocks: Vec<SetId> = data
        .blocks
        .iter()
        .filter(|(q, _)| *q == Quant::A)
        .map(|(_, s)| *s)
        .collect();

    if !e_blocks.is_empty() {
        let stripped_a: Vec<Block> = a_blocks
            .iter()
            .map(|&s| (Quant::A, strip_x_set(problem, s)))
            .collect();
        let moves = e_blocks
            .iter()
            .map(|&s| {
                let mut blocks = stripped_a.clone();
                blocks.push((Quant::E, strip_x_set(problem, s)));
                (
                    PlayLetter::X1 { block: s },
                    problem.intern_config(blocks, Vec::new()),
                )
            })
            .collect();
        return Expansion { owner: Owner::One, kind: ExpansionKind::Modal, moves };
    }

    if !a_blocks.is_empty() {
        let blocks: Vec<Block> = a_blocks
            .iter()
            .map(|&s| (Quant::A, strip_x_set(problem, s)))
            .collect();
        let succ = problem.intern_config(blocks, Vec::new());
        return Expansion {
            owner: Owner::Zero,
            kind: ExpansionKind::Modal,
            moves: vec![(PlayLetter::X0, succ)],
        };
    }

    Expansion { owner: Owner::Zero, kind: ExpansionKind::Terminal, moves: vec![] }
}

/// All blocks connected to `b` under the rule application `letter`, each
/// tagged whether the connection is spawning. The same target block can
/// appear twice with different tags when a spawned singleton coincides with
/// the shrunken principal block.
pub fn block_descendants(
    problem: &Problem,
    letter: &PlayLetter,
    b: Block,
) -> Vec<(Quant, SetId, bool)> {
    let (q, s) = b;
    match *letter {
        PlayLetter::Ett => {
            if q == Quant::E && problem.set(s).is_empty() {
                vec![]
            } else {
                vec![(q, s, false)]
            }
        }
        PlayLetter::X0 => {
            debug_assert_eq!(q, Quant::A, "rule (X0) applies only without E-blocks");
            if q == Quant::A {
                vec![(Quant::A, strip_x_set(problem, s), false)]
            } else {
                vec![]
            }
        }
        PlayLetter::X1 { block } => {
            if q == Quant::A {
                vec![(Quant::A, strip_x_set(problem, s), false)]
            } else if s == block {
                vec![(Quant::E, strip_x_set(problem, s), false)]
            } else {
                vec![]
            }
        }
        PlayLetter::Rule { quant, block, principal, branch } => {
            if (q, s) != (quant, block) {
                return vec![(q, s, false)];
            }
            let rule = rule_for(quant, problem.table.kind(principal));
            let specs = branch_specs(problem, quant, block, principal, rule);
            let spec = &specs[branch as usize];
            spec.blocks
                .iter()
                .map(|(bq, members, spawning, _)| {
                    (*bq, problem.intern_set(members.clone()), *spawning)
                })
                .collect()
        }
    }
}

/// The paper's con^E: the unique non-spawning E-block descendant, if any.
pub fn con_e(problem: &Problem, letter: &PlayLetter, s: SetId) -> Option<SetId> {
    let mut out = None;
    for (q, d, spawning) in block_descendants(problem, letter, (Quant::E, s)) {
        if q == Quant::E && !spawning {
            debug_assert!(out.is_none(), "con_e must be unique");
            out = Some(d);
        }
    }
    out
}

/// All formulas in the target block `b2` connected to `chi` in block `b`
/// under `letter`.
pub fn formula_descendants(
    problem: &Problem,
    letter: &PlayLetter,
    b: Block,
    chi: FormulaId,
    b2: Block,
) -> Vec<FormulaId> {
    debug_assert!(problem.set_contains(b.1, chi), "chi must occur in the source block");
    let copy = |target: SetId| -> Vec<FormulaId> {
        if problem.set_contains(target, chi) {
            vec![chi]
        } else {
            vec![]
        }
    };
    match *letter {
        PlayLetter::Ett => copy(b2.1),
        PlayLetter::X0 | PlayLetter::X1 { .. } => match problem.table.kind(chi) {
            Kind::Next(g) => {
                if problem.set_contains(b2.1, g) {
                    vec![g]
                } else {
                    vec![]
                }
            }
            _ => vec![],
        },
        PlayLetter::Rule { quant, block, principal, branch } => {
            if (b.0, b.1) != (quant, block) || chi != principal {
                return copy(b2.1);
            }
            let rule = rule_for(quant, problem.table.kind(principal));
            let specs = branch_specs(problem, quant, block, principal, rule);
            let spec = &specs[branch as usize];
            let mut out = Vec::new();
            for (bq, members, _, desc) in &spec.blocks {
                let sid = problem.intern_set(members.clone());
                if (*bq, sid) == b2 {
                    for &d in desc {
                        if !out.contains(&d) {
                            out.push(d);
                        }
                    }
                }
            }
            out
        }
    }
}

/// Rule engine driving the CTL*/CTL+ satisfiability game.
pub struct CtlStarEngine<'p> {
    pub problem: &'p Problem,
}

impl<'p> CtlStarEngine<'p> {
    pub fn new(problem: &'p Problem) -> Self {
        CtlStarEngine { problem }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, to_nnf, FormulaTable};

    fn problem(text: &str) -> Problem {
        Problem::new(FormulaTable::build(&to_nnf(&parse(text).unwrap())))
    }

    fn dump_moves(p: &Problem, e: &Expansion<PlayLetter, ConfigId>) -> Vec<String> {
        e.moves.iter().map(|(_, c)| p.dump_configuration(*c)).collect()
    }

    #[test]
    fn e_conjunction_unfolds_in_place() {
        // E{E(p & q)} --(EE)-> {E{p&q}, E()} --(Ett)-> {E{p&q}} --(E&)-> E(p, q)
        let p = problem("E (p & q)");
        let mut c = p.initial_configuration();
        c = successors(&p, c).moves[0].1;
        c = successors(&p, c).moves[0].1;
        let (q, _, f, rule) = select_principal(&p, c).unwrap();
        assert_eq!(q, Quant::E);
        assert_eq!(rule, RuleName::EAnd);
        assert!(matches!(p.table.kind(f), Kind::And(..)));
        let e = successors(&p, c);
        assert_eq!(dump_moves(&p, &e), vec!["E(p, q)"]);
        assert_eq!(e.owner, Owner::Zero);
    }

    #[test]
    fn eu_rule_produces_fulfil_and_unfold_branches() {
        let p = problem("E (p U q)");
        let c = p.initial_configuration();
        // First step: (EE) is not applicable, the principal E(pUq) sits under
        // the initial E-block and spawns via (EE).
        let e = successors(&p, c);
        assert_eq!(e.kind, ExpansionKind::Rule(RuleName::EE));
        let (_, c1) = e.moves[0];
        assert_eq!(p.dump_configuration(c1), "E(), E(p U q)");
        let e1 = successors(&p, c1);
        assert_eq!(e1.kind, ExpansionKind::Rule(RuleName::Ett));
        let (_, c2) = e1.moves[0];
        assert_eq!(p.dump_configuration(c2), "E(p U q)");
        let e2 = successors(&p, c2);
        assert_eq!(e2.kind, ExpansionKind::Rule(RuleName::EUntil));
        assert_eq!(dump_moves(&p, &e2), vec!["E(q)", "E(p, X (p U q))"]);
        // branch 1 is the X-unfolding successor
        match e2.moves[1].0 {
            PlayLetter::Rule { branch, .. } => assert_eq!(branch, 1),
            ref other => panic!("unexpected letter {other:?}"),
        }
    }

    #[test]
    fn modal_stage_with_e_blocks_belongs_to_player_one() {
        // {E{Xp}, A{Xq}, r}: one (X1) successor per E-block.
        let p = problem("E X p & A X q & r");
        let c = p.initial_configuration();
        let mut cur = c;
        loop {
            let e = successors(&p, cur);
            match e.kind {
                ExpansionKind::Modal => {
                    assert_eq!(e.owner, Owner::One);
                    assert_eq!(e.moves.len(), 1);
                    assert_eq!(dump_moves(&p, &e), vec!["A(q), E(p)"]);
                    return;
                }
                ExpansionKind::Rule(_) => cur = e.moves[0].1,
                other => panic!("unexpected expansion {other:?}"),
            }
        }
    }

    #[test]
    fn x0_strips_all_a_blocks() {
        let p = problem("A X p & A X q");
        let c = p.initial_configuration();
        let mut cur = c;
        loop {
            let e = successors(&p, cur);
            match e.kind {
                ExpansionKind::Modal => {
                    assert_eq!(e.owner, Owner::Zero);
                    assert_eq!(dump_moves(&p, &e), vec!["A(p), A(q)"]);
                    return;
                }
                ExpansionKind::Rule(r) => {
                    // player 0 picks the non-literal branches on the way
                    let pick = if is_choice(r) { e.moves.len() - 1 } else { 0 };
                    cur = e.moves[pick].1;
                }
                other => panic!("unexpected expansion {other:?}"),
            }
        }
    }

    #[test]
    fn empty_a_block_is_stuck() {
        let p = problem("A p");
        let t = &p.table;
        let empty = p.empty_set();
        let c = p.intern_config(vec![(Quant::A, empty)], vec![]);
        let e = successors(&p, c);
        assert_eq!(e.kind, ExpansionKind::Stuck);
        assert!(e.moves.is_empty());
        let _ = t;
    }

    #[test]
    fn principal_selection_prefers_larger_formulas() {
        let p = problem("A F G p & E G E F !p");
        let c = p.initial_configuration();
        // Root configuration E{AFGp & EGEF!p}: the conjunction is principal.
        let (_, _, f, rule) = select_principal(&p, c).unwrap();
        assert_eq!(rule, RuleName::EAnd);
        assert_eq!(f, p.table.root());
        // After (E&): E{AFGp, EGEF!p}; EGEF!p is larger (7 vs 6 subformulas).
        let e = successors(&p, c);
        let c1 = e.moves[0].1;
        let (_, _, f1, rule1) = select_principal(&p, c1).unwrap();
        assert_eq!(rule1, RuleName::EE);
        assert_eq!(p.table.display(f1), "E G E F !p");
    }

    #[test]
    fn block_descendants_of_a_conjunction_split() {
        // (A&) on A(phi & psi): descendants A(phi, S) and A(psi, S).
        let p = problem("A ((p & q) U r)");
        let t = &p.table;
        let and = t
            .fl_ids()
            .find(|f| matches!(t.kind(*f), Kind::And(..)))
            .unwrap();
        let (l, r) = match t.kind(and) {
            Kind::And(l, r) => (l, r),
            _ => unreachable!(),
        };
        let other = t.fl_ids().find(|f| matches!(t.kind(*f), Kind::Until(..))).unwrap();
        let block = p.intern_set(vec![and, other]);
        let letter = PlayLetter::Rule { quant: Quant::A, block, principal: and, branch: 0 };
        let desc = block_descendants(&p, &letter, (Quant::A, block));
        assert_eq!(desc.len(), 2);
        assert!(desc.iter().all(|(q, _, sp)| *q == Quant::A && !sp));
        let contents: Vec<_> = desc.iter().map(|(_, s, _)| p.set(*s)).collect();
        assert!(contents.iter().any(|c| c.contains(&l) && !c.contains(&r)));
        assert!(contents.iter().any(|c| c.contains(&r) && !c.contains(&l)));
        // formula descendants of the principal: {l} resp. {r}
        for (i, (bq, bs, _)) in desc.iter().enumerate() {
            let fd = formula_descendants(&p, &letter, (Quant::A, block), and, (*bq, *bs));
            assert_eq!(fd.len(), 1, "branch {i}");
        }
        // a non-principal member is copied
        let fd = formula_descendants(
            &p,
            &letter,
            (Quant::A, block),
            other,
            (desc[0].0, desc[0].1),
        );
        assert_eq!(fd, vec![other]);
    }

    #[test]
    fn spawning_tags_only_on_quantifier_extraction_rules() {
        let p = problem("A (q U E (p U q))");
        let t = &p.table;
        let eu = t
            .fl_ids()
            .find(|f| matches!(t.kind(*f), Kind::Exists(_)))
            .unwrap();
        let q = t.fl_ids().find(|f| t.display(*f) == "q").unwrap();
        let block = p.intern_set(vec![q, eu]);
        // (AE) branch 0 spawns E{p U q}
        let letter = PlayLetter::Rule { quant: Quant::A, block, principal: eu, branch: 0 };
        let desc = block_descendants(&p, &letter, (Quant::A, block));
        assert_eq!(desc.len(), 1);
        assert_eq!(desc[0].0, Quant::E);
        assert!(desc[0].2, "extraction must be spawning");
        // branch 1 keeps the A-block
        let letter1 = PlayLetter::Rule { quant: Quant::A, block, principal: eu, branch: 1 };
        let desc1 = block_descendants(&p, &letter1, (Quant::A, block));
        assert_eq!(desc1.len(), 1);
        assert_eq!(desc1[0].0, Quant::A);
        assert!(!desc1[0].2);
    }

    #[test]
    fn ar_branch_descendants_match_the_rule_shape() {
        let p = problem("A (p R q)");
        let t = &p.table;
        let rel = t.fl_ids().find(|f| matches!(t.kind(*f), Kind::Release(..))).unwrap();
        let (l, _r) = match t.kind(rel) {
            Kind::Release(l, r) => (l, r),
            _ => unreachable!(),
        };
        let x = t.next_of(rel).unwrap();
        let block = p.intern_set(vec![rel]);
        let letter = PlayLetter::Rule { quant: Quant::A, block, principal: rel, branch: 0 };
        let desc = block_descendants(&p, &letter, (Quant::A, block));
        assert_eq!(desc.len(), 2);
        let unfold = desc
            .iter()
            .find(|(_, s, _)| p.set_contains(*s, x))
            .expect("one branch holds the X-unfolding");
        let fd = formula_descendants(&p, &letter, (Quant::A, block), rel, (unfold.0, unfold.1));
        assert_eq!(fd, vec![l, x]);
    }

    #[test]
    fn modal_letters_strip_x_in_formula_descendants() {
        let p = problem("A X (p U q)");
        let t = &p.table;
        let u = t.fl_ids().find(|f| matches!(t.kind(*f), Kind::Until(..))).unwrap();
        let xu = t.next_of(u).unwrap();
        let block = p.intern_set(vec![xu]);
        let target = p.intern_set(vec![u]);
        let fd = formula_descendants(
            &p,
            &PlayLetter::X0,
            (Quant::A, block),
            xu,
            (Quant::A, target),
        );
        assert_eq!(fd, vec![u]);
    }
}
