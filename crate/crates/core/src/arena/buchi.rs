//! Büchi game solver: repeated attractor computation. Player 0 wins iff she
//! can force visiting an even-priority node infinitely often.

use super::{attractor, Owner, ParityGame, Strategy};

pub fn solve_buchi(g: &ParityGame) -> Strategy {
    assert!(g.is_buchi(), "solve_buchi requires priorities <= 2");
    let n = g.nodes.len();
    let mut removed = vec![false; n];
    let mut winner = vec![Owner::Zero; n];
    let mut choice: Vec<Option<usize>> = vec![None; n];

    loop {
        let live: Vec<bool> = (0..n).map(|v| !removed[v]).collect();
        if live.iter().all(|&l| !l) {
            break;
        }
        let target: Vec<bool> =
            (0..n).map(|v| live[v] && g.nodes[v].priority % 2 == 0).collect();
        let mut reach_choice = vec![None; n];
        let reach = attractor(g, &live, &target, Owner::Zero, &mut reach_choice);
        let trap: Vec<bool> = (0..n).map(|v| live[v] && !reach[v]).collect();
        if trap.iter().all(|&t| !t) {
            // player 0 wins everywhere still live
            for v in 0..n {
                if !live[v] {
                    continue;
                }
                winner[v] = Owner::Zero;
                if g.nodes[v].owner == Owner::Zero {
                    choice[v] = if target[v] {
                        // restart the attractor from the target set
                        g.nodes[v].succs.iter().copied().find(|&w| live[w])
                    } else {
                        reach_choice[v]
                    };
                }
            }
            break;
        }
        // player 1 traps these nodes away from the target set forever
        let mut trap_choice = vec![None; n];
        let b = attractor(g, &live, &trap, Owner::One, &mut trap_choice);
        for v in 0..n {
            if !live[v] || !b[v] {
                continue;
            }
            removed[v] = true;
            winner[v] = Owner::One;
            if g.nodes[v].owner == Owner::One {
                let stay = g.nodes[v].succs.iter().copied().find(|&w| trap[w]);
                // successors outside `live` lie in previously removed
                // player-1 regions and are equally winning
                let fallback = g.nodes[v].succs.first().copied();
                choice[v] = if trap[v] { stay.or(fallback) } else { trap_choice[v] };
            }
        }
    }
    Strategy { winner, choice }
}

#[cfg(test)]
mod tests {
    use super::super::NodeData;
    use super::*;

    fn node(owner: Owner, priority: u32, succs: Vec<usize>) -> NodeData {
        NodeData { owner, priority, succs }
    }

    #[test]
    fn even_self_loop_wins_for_player0() {
        let g = ParityGame { nodes: vec![node(Owner::One, 2, vec![0])], initial: 0 };
        assert_eq!(solve_buchi(&g).winner[0], Owner::Zero);
    }

    #[test]
    fn odd_cycle_without_even_visits_wins_for_player1() {
        let g = ParityGame {
            nodes: vec![node(Owner::Zero, 1, vec![1]), node(Owner::Zero, 1, vec![0])],
            initial: 0,
        };
        let s = solve_buchi(&g);
        assert_eq!(s.winner[0], Owner::One);
        assert_eq!(s.winner[1], Owner::One);
    }

    #[test]
    fn player1_can_avoid_the_target() {
        // 0 (owner 1, prio 1) chooses between the even loop 1 and odd loop 2
        let g = ParityGame {
            nodes: vec![
                node(Owner::One, 1, vec![1, 2]),
                node(Owner::One, 2, vec![1]),
                node(Owner::One, 1, vec![2]),
            ],
            initial: 0,
        };
        let s = solve_buchi(&g);
        assert_eq!(s.winner[0], Owner::One);
        assert_eq!(s.winner[1], Owner::Zero);
        assert_eq!(s.winner[2], Owner::One);
        assert_eq!(s.choice[0], Some(2));
    }
}
