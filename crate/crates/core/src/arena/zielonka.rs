//! Zielonka's recursive algorithm with positional strategy extraction.
//! Priorities are gap-compressed up front to keep the recursion shallow.

use super::{attractor, Owner, ParityGame, Strategy};

pub fn solve_parity(g: &ParityGame) -> Strategy {
    let n = g.nodes.len();
    let compressed = compress_priorities(g);
    let mut winner = vec![Owner::Zero; n];
    let mut choice = vec![None; n];
    let mask = vec![true; n];
    solve_rec(&compressed, &mask, &mut winner, &mut choice);
    Strategy { winner, choice }
}

fn compress_priorities(g: &ParityGame) -> ParityGame {
    let mut distinct: Vec<u32> = g.nodes.iter().map(|n| n.priority).collect();
    distinct.sort();
    distinct.dedup();
    // consecutive distinct priorities of equal parity collapse
    let mut map = std::collections::HashMap::new();
    let mut next = 0u32;
    for &p in &distinct {
        if p % 2 != next % 2 {
            next += 1;
        }
        map.insert(p, next);
    }
    let mut out = g.clone();
    for node in &mut out.nodes {
        node.priority = map[&node.priority];
    }
    out
}

fn solve_rec(g: &ParityGame, mask: &[bool], winner: &mut [Owner], choice: &mut [Option<usize>]) {
    let n = g.nodes.len();
    let Some(d) = (0..n).filter(|&v| mask[v]).map(|v| g.nodes[v].priority).max() else {
        return;
    };
    let player = if d % 2 == 0 { Owner::Zero } else { Owner::One };
    let opponent = if player == Owner::Zero { Owner::One } else { Owner::Zero };

    let top: Vec<bool> = (0..n).map(|v| mask[v] && g.nodes[v].priority == d).collect();
    let mut attr_choice = vec![None; n];
    let a = attractor(g, mask, &top, player, &mut attr_choice);

    let rest: Vec<bool> = (0..n).map(|v| mask[v] && !a[v]).collect();
    let mut sub_winner = vec![Owner::Zero; n];
    let mut sub_choice = vec![None; n];
    solve_rec(g, &rest, &mut sub_winner, &mut sub_choice);

    let opponent_wins_rest =
        (0..n).any(|v| rest[v] && sub_winner[v] == opponent);
    if !opponent_wins_rest {
        // `player` wins the whole subgame
        for v in 0..n {
            if !mask[v] {
                continue;
            }
            winner[v] = player;
            if g.nodes[v].owner != player {
                continue;
            }
            choice[v] = if rest[v] {
                sub_choice[v]
            } else if top[v] {
                // any successor inside the subgame keeps the play here
                g.nodes[v].succs.iter().copied().find(|&w| mask[w])
            } else {
                attr_choice[v]
            };
        }
    } else {
        let opp_region: Vec<bool> =
            (0..n).map(|v| rest[v] && sub_winner[v] == opponent).collect();
        let mut opp_attr_choice = vec![None; n];
        let b = attractor(g, mask, &opp_region, opponent, &mut opp_attr_choice);
        let remaining: Vec<bool> = (0..n).map(|v| mask[v] && !b[v]).collect();
        let mut rem_winner = vec![Owner::Zero; n];
        let mut rem_choice = vec![None; n];
        solve_rec(g, &remaining, &mut rem_winner, &mut rem_choice);
        for v in 0..n {
            if !mask[v] {
                continue;
            }
            if b[v] {
                winner[v] = opponent;
                if g.nodes[v].owner == opponent {
                    choice[v] = if opp_region[v] {
                        sub_choice[v].or_else(|| {
                            // opponent's strategy inside their winning region
                            g.nodes[v].succs.iter().copied().find(|&w| opp_region[w])
                        })
                    } else {
                        opp_attr_choice[v]
                    };
                }
            } else {
                winner[v] = rem_winner[v];
                if g.nodes[v].owner == rem_winner[v] {
                    choice[v] = rem_choice[v];
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{NodeData, WIN0, WIN1};
    use super::*;

    fn node(owner: Owner, priority: u32, succs: Vec<usize>) -> NodeData {
        NodeData { owner, priority, succs }
    }

    #[test]
    fn self_loops_decide_by_parity() {
        let g = ParityGame {
            nodes: vec![
                node(Owner::Zero, 0, vec![0]),
                node(Owner::Zero, 1, vec![1]),
            ],
            initial: 0,
        };
        let s = solve_parity(&g);
        assert_eq!(s.winner[0], Owner::Zero);
        assert_eq!(s.winner[1], Owner::One);
    }

    #[test]
    fn player0_escapes_to_the_even_loop() {
        // 2 (owned by 0, prio 1) -> {0: prio 2 loop, 1: prio 1 loop}
        let g = ParityGame {
            nodes: vec![
                node(Owner::One, 2, vec![0]),
                node(Owner::One, 1, vec![1]),
                node(Owner::Zero, 1, vec![0, 1]),
            ],
            initial: 2,
        };
        let s = solve_parity(&g);
        assert_eq!(s.winner[2], Owner::Zero);
        assert_eq!(s.choice[2], Some(0));
    }

    #[test]
    fn alternation_favors_the_higher_priority() {
        // cycle 0 <-> 1 with priorities 1 and 2: max is even, player 0 wins
        // regardless of ownership.
        let g = ParityGame {
            nodes: vec![
                node(Owner::One, 1, vec![1]),
                node(Owner::One, 2, vec![0]),
            ],
            initial: 0,
        };
        let s = solve_parity(&g);
        assert_eq!(s.winner[0], Owner::Zero);
        assert_eq!(s.winner[1], Owner::Zero);
    }

    #[test]
    fn sink_conventions() {
        let g = ParityGame {
            nodes: vec![
                node(Owner::Zero, 0, vec![WIN0]),
                node(Owner::One, 1, vec![WIN1]),
                node(Owner::Zero, 1, vec![WIN1]),
            ],
            initial: 2,
        };
        let s = solve_parity(&g);
        assert_eq!(s.winner[WIN0], Owner::Zero);
        assert_eq!(s.winner[WIN1], Owner::One);
        assert_eq!(s.winner[2], Owner::One);
    }
}
