use branchsat::arena::reachable_automaton_states;
use branchsat::automata::{all_accepting_dba, determinize_nba_capped};
use branchsat::game::successors;
use std::collections::{HashSet, VecDeque};

fn main() {
    let ast = branchsat::parse("A (G F p -> F q)").unwrap();
    let nnf = branchsat::to_nnf(&ast);
    let table = branchsat::formula::FormulaTable::build(&nnf);
    let problem = std::sync::Arc::new(branchsat::game::Problem::new(table));
    // configs alone
    let mut seen = HashSet::new();
    let mut q = VecDeque::new();
    let init = problem.initial_configuration();
    seen.insert(init);
    q.push_back(init);
    while let Some(c) = q.pop_front() {
        for (_, s) in successors(&problem, c).moves {
            if problem.is_consistent(s) && seen.insert(s) {
                q.push_back(s);
            }
        }
    }
    println!("configs = {}", seen.len());
    let engine = branchsat::game::CtlStarEngine::new(&problem);
    let nba = branchsat::winning::build_bad_a_nba(&problem);
    let nba_states = reachable_automaton_states(&engine, &nba, 5_000_000).unwrap();
    println!("nba reach = {}", nba_states.len());
    let dpa = determinize_nba_capped(&nba, nba_states.len() as u64);
    let t = std::time::Instant::now();
    match reachable_automaton_states(&engine, &dpa, 200_000) {
        Ok(s) => {
            let mut prios = HashSet::new();
            let mut labels = HashSet::new();
            for &st in &s {
                prios.insert(dpa.priority(st));
                labels.insert(dpa.state_label(st));
            }
            println!("dpa reach = {} trees = {} prios = {} in {:?}", s.len(), labels.len(), prios.len(), t.elapsed());
        }
        Err(e) => println!("dpa: {e} in {:?}", t.elapsed()),
    }
    let _ = all_accepting_dba::<branchsat::game::PlayLetter>();
}
