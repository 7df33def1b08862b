//! Two-player Büchi games on finite graphs.
//!
//! Eve wants to visit target positions infinitely often, Adam wants to
//! avoid that. The winning regions are computed by the classical nested
//! fixpoint: repeatedly remove Adam's attractor to the complement of Eve's
//! attractor to the targets. Eve's positional strategy on her region comes
//! from the last attractor computation.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuchiGame {
    eve: Vec<bool>,
    target: Vec<bool>,
    succ: Vec<Vec<usize>>,
}

/// Winning region and strategy of Eve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub eve_wins: Vec<bool>,
    /// For each Eve position she wins from: the successor she moves to.
    pub strategy: Vec<Option<usize>>,
}

impl BuchiGame {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a position owned by Eve (`eve`) or Adam and returns its index.
    pub fn add_position(&mut self, eve: bool, target: bool) -> usize {
        self.eve.push(eve);
        self.target.push(target);
        self.succ.push(Vec::new());
        self.eve.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        if !self.succ[from].contains(&to) {
            self.succ[from].push(to);
        }
    }

    pub fn positions(&self) -> usize {
        self.eve.len()
    }

    pub fn is_eve(&self, v: usize) -> bool {
        self.eve[v]
    }

    pub fn is_target(&self, v: usize) -> bool {
        self.target[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    /// Positions of `eve_player` (true for Eve) can force a visit to
    /// `goal` inside `active`. Returns membership and, for Eve, the chosen
    /// successor of each attracted Eve position outside `goal`.
    fn attractor(
        &self,
        eve_player: bool,
        goal: &[bool],
        active: &[bool],
        pred: &[Vec<usize>],
    ) -> (Vec<bool>, Vec<Option<usize>>) {
        let n = self.positions();
        let mut inside = vec![false; n];
        let mut choice = vec![None; n];
        let mut remaining: Vec<usize> = (0..n)
            .map(|v| self.succ[v].iter().filter(|&&w| active[w]).count())
            .collect();
        let mut queue = VecDeque::new();
        for v in 0..n {
            if active[v] && goal[v] {
                inside[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(w) = queue.pop_front() {
            for &p in &pred[w] {
                if !active[p] || inside[p] {
                    continue;
                }
                if self.eve[p] == eve_player {
                    inside[p] = true;
                    choice[p] = Some(w);
                    queue.push_back(p);
                } else {
                    remaining[p] -= 1;
                    if remaining[p] == 0 {
                        inside[p] = true;
                        queue.push_back(p);
                    }
                }
            }
        }
        (inside, choice)
    }

    /// Solves the game. Every position must have a successor.
    pub fn solve(&self) -> Result<Solution> {
        let n = self.positions();
        if let Some(v) = (0..n).find(|&v| self.succ[v].is_empty()) {
            return Err(Error::Invariant(format!("game position {v} has no move")));
        }
        let mut pred = vec![Vec::new(); n];
        for v in 0..n {
            for &w in &self.succ[v] {
                pred[w].push(v);
            }
        }
        let mut active = vec![true; n];
        loop {
            let (reach, choice) = self.attractor(true, &self.target, &active, &pred);
            let trap: Vec<bool> = (0..n).map(|v| active[v] && !reach[v]).collect();
            if !trap.iter().any(|&t| t) {
                let strategy = (0..n)
                    .map(|v| {
                        if !active[v] || !self.eve[v] {
                            None
                        } else if self.target[v] {
                            self.succ[v].iter().copied().find(|&w| active[w])
                        } else {
                            choice[v]
                        }
                    })
                    .collect();
                return Ok(Solution {
                    eve_wins: active,
                    strategy,
                });
            }
            let (lost, _) = self.attractor(false, &trap, &active, &pred);
            for v in 0..n {
                if lost[v] {
                    active[v] = false;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eve_cycles_through_target() {
        let mut g = BuchiGame::new();
        let a = g.add_position(true, false);
        let b = g.add_position(true, true);
        let c = g.add_position(true, false);
        g.add_edge(a, c);
        g.add_edge(a, b);
        g.add_edge(b, a);
        g.add_edge(c, c);
        let s = g.solve().unwrap();
        assert_eq!(s.eve_wins, vec![true, true, false]);
        assert_eq!(s.strategy[a], Some(b));
        assert_eq!(s.strategy[b], Some(a));
    }

    #[test]
    fn adam_escapes() {
        let mut g = BuchiGame::new();
        let a = g.add_position(false, true);
        let b = g.add_position(true, false);
        g.add_edge(a, a);
        g.add_edge(a, b);
        g.add_edge(b, b);
        let s = g.solve().unwrap();
        assert_eq!(s.eve_wins, vec![false, false]);
    }

    #[test]
    fn dead_ends_are_rejected() {
        let mut g = BuchiGame::new();
        g.add_position(true, false);
        assert!(g.solve().is_err());
    }
}
