//! Maximum bipartite matching (Hopcroft–Karp) and the Hall-deficiency
//! closure of its unmatched left vertices.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Bipartite graph with left vertices `0..left` and right vertices
/// `0..right`; `adj[u]` lists the right neighbours of `u`.
#[derive(Clone, Debug)]
pub struct Bipartite {
    pub right: usize,
    pub adj: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    /// `left_mate[u]` is the right vertex matched to `u`.
    pub left_mate: Vec<Option<usize>>,
    pub right_mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left_mate.iter().flatten().count()
    }
}

impl Bipartite {
    pub fn left(&self) -> usize {
        self.adj.len()
    }

    /// Hopcroft–Karp. Neighbour lists are scanned in the order given, so the
    /// result is deterministic.
    pub fn maximum_matching(&self) -> Matching {
        let left = self.left();
        let mut lm = vec![NIL; left];
        let mut rm = vec![NIL; self.right];
        let mut dist = vec![0usize; left];
        loop {
            // layered BFS from free left vertices
            let mut queue = VecDeque::new();
            for u in 0..left {
                if lm[u] == NIL {
                    dist[u] = 0;
                    queue.push_back(u);
                } else {
                    dist[u] = usize::MAX;
                }
            }
            let mut found = false;
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    let m = rm[w];
                    if m == NIL {
                        found = true;
                    } else if dist[m] == usize::MAX {
                        dist[m] = dist[u] + 1;
                        queue.push_back(m);
                    }
                }
            }
            if !found {
                break;
            }
            let mut it = vec![0usize; left];
            for u in 0..left {
                if lm[u] == NIL {
                    self.augment(u, &mut lm, &mut rm, &mut dist, &mut it);
                }
            }
        }
        Matching {
            left_mate: lm.iter().map(|&w| (w != NIL).then_some(w)).collect(),
            right_mate: rm.iter().map(|&u| (u != NIL).then_some(u)).collect(),
        }
    }

    fn augment(
        &self,
        u: usize,
        lm: &mut [usize],
        rm: &mut [usize],
        dist: &mut [usize],
        it: &mut [usize],
    ) -> bool {
        while it[u] < self.adj[u].len() {
            let w = self.adj[u][it[u]];
            it[u] += 1;
            let m = rm[w];
            if m == NIL || (dist[m] == dist[u] + 1 && self.augment(m, lm, rm, dist, it)) {
                lm[u] = w;
                rm[w] = u;
                return true;
            }
        }
        dist[u] = usize::MAX;
        false
    }

    /// Left vertices reachable from unmatched left vertices by alternating
    /// paths (non-matching edge left→right, matching edge right→left). For a
    /// maximum matching every vertex outside this set is matched, and the set
    /// is the largest one whose Hall deficiency equals the number of
    /// unmatched vertices.
    pub fn deficiency_closure(&self, m: &Matching) -> Vec<bool> {
        let mut in_closure = vec![false; self.left()];
        let mut seen_right = vec![false; self.right];
        let mut queue: VecDeque<usize> = (0..self.left())
            .filter(|&u| m.left_mate[u].is_none())
            .collect();
        for &u in &queue {
            in_closure[u] = true;
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if seen_right[w] {
                    continue;
                }
                seen_right[w] = true;
                let mate = m.right_mate[w].expect("maximum matching has no augmenting path");
                if !in_closure[mate] {
                    in_closure[mate] = true;
                    queue.push_back(mate);
                }
            }
        }
        in_closure
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_max(b: &Bipartite) -> usize {
        fn go(b: &Bipartite, u: usize, used: &mut Vec<bool>) -> usize {
            if u == b.left() {
                return 0;
            }
            let mut best = go(b, u + 1, used);
            for &w in &b.adj[u] {
                if !used[w] {
                    used[w] = true;
                    best = best.max(1 + go(b, u + 1, used));
                    used[w] = false;
                }
            }
            best
        }
        go(b, 0, &mut vec![false; b.right])
    }

    #[test]
    fn two_left_one_right() {
        let b = Bipartite {
            right: 1,
            adj: vec![vec![0], vec![0]],
        };
        let m = b.maximum_matching();
        assert_eq!(m.size(), 1);
        assert_eq!(b.deficiency_closure(&m), vec![true, true]);
    }

    #[test]
    fn perfect_matching_has_empty_closure() {
        let b = Bipartite {
            right: 3,
            adj: vec![vec![0, 1], vec![0], vec![1, 2]],
        };
        let m = b.maximum_matching();
        assert_eq!(m.size(), 3);
        assert!(b.deficiency_closure(&m).iter().all(|&x| !x));
    }

    #[test]
    fn matches_brute_force_on_random_instances() {
        let mut rng = crate::rng::rng_from_seed(9);
        for _ in 0..300 {
            let left = 1 + crate::rng::below(&mut rng, 7);
            let right = 1 + crate::rng::below(&mut rng, 7);
            let adj: Vec<Vec<usize>> = (0..left)
                .map(|_| {
                    (0..right)
                        .filter(|_| crate::rng::bernoulli(&mut rng, 0.35))
                        .collect()
                })
                .collect();
            let b = Bipartite { right, adj };
            let m = b.maximum_matching();
            assert_eq!(m.size(), brute_max(&b));
            for (u, w) in m.left_mate.iter().enumerate() {
                if let Some(w) = w {
                    assert!(b.adj[u].contains(w));
                    assert_eq!(m.right_mate[*w], Some(u));
                }
            }
            // outside the closure everything is matched, and the closure's
            // neighbourhood is fully matched into it
            let a = b.deficiency_closure(&m);
            for u in 0..left {
                if !a[u] {
                    assert!(m.left_mate[u].is_some());
                }
            }
            for u in (0..left).filter(|&u| a[u]) {
                for &w in &b.adj[u] {
                    let mate = m.right_mate[w].unwrap();
                    assert!(a[mate]);
                }
            }
        }
    }
}
