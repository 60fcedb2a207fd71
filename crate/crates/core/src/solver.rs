//! Exact cop-win oracle by retrograde analysis.
//!
//! A state is `(cop multiset, robber vertex, side to move)`. Cop positions
//! are kept as sorted multisets, indexed by their lexicographic rank, which
//! quotients out the permutations of the cops. Labels are computed by
//! synchronous sweeps: in sweep `h` a cops-to-move state becomes winning if
//! some cop move reaches a capture or a robber-to-move state labelled before
//! sweep `h`, and a robber-to-move state becomes winning if every robber
//! move (staying included) runs into a cop or into a cops-to-move state
//! labelled before sweep `h`. The label of a state is the sweep in which it
//! was won, so following a label-minimizing cop move always makes progress.
//!
//! Sweeps are parallel over cop multisets; since each sweep only reads
//! labels from earlier sweeps the result is identical to a sequential run.

use std::sync::Arc;

use rayon::prelude::*;

use crate::engine::{CopStrategy, CopView};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_MAX_STATES: u64 = 50_000_000;

const UNSOLVED: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    pub max_states: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

/// Lexicographic ranking of non-decreasing `k`-tuples over `0..n`.
#[derive(Clone, Debug)]
struct MultisetIndex {
    n: usize,
    k: usize,
    /// `prefix[j][x]` = number of size-`j` multisets over `0..n` whose
    /// smallest element is `< x`, where elements are drawn from `x.. n`.
    prefix: Vec<Vec<u64>>,
    total: u64,
}

fn multiset_count(symbols: u64, size: u64) -> u64 {
    // C(symbols + size - 1, size), saturating
    if size == 0 {
        return 1;
    }
    if symbols == 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..size as u128 {
        acc = acc * (symbols as u128 + i) / (i + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

impl MultisetIndex {
    fn new(n: usize, k: usize) -> Self {
        let mut prefix = vec![vec![0u64; n + 1]; k + 1];
        for (j, row) in prefix.iter_mut().enumerate() {
            for x in 0..n {
                // tuples of length j starting with x: the rest is a multiset
                // of size j-1 over x..n
                let c = if j == 0 {
                    0
                } else {
                    multiset_count((n - x) as u64, j as u64 - 1)
                };
                row[x + 1] = row[x].saturating_add(c);
            }
        }
        let total = multiset_count(n as u64, k as u64);
        MultisetIndex {
            n,
            k,
            prefix,
            total,
        }
    }

    fn rank(&self, sorted: &[usize]) -> usize {
        let mut r = 0u64;
        let mut lo = 0;
        for (i, &a) in sorted.iter().enumerate() {
            let j = self.k - i;
            r += self.prefix[j][a] - self.prefix[j][lo];
            lo = a;
        }
        r as usize
    }

    fn all(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.total as usize);
        let mut cur = vec![0usize; self.k];
        loop {
            out.push(cur.clone());
            // next non-decreasing tuple in lexicographic order
            let mut i = self.k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] + 1 < self.n {
                    let v = cur[i] + 1;
                    for c in &mut cur[i..] {
                        *c = v;
                    }
                    break;
                }
            }
        }
    }
}

/// Solved game for a fixed graph and number of cops.
#[derive(Clone, Debug)]
pub struct Solution {
    graph: Graph,
    k: usize,
    index: MultisetIndex,
    /// Indexed `multiset * n + robber`.
    cop_level: Vec<u32>,
    robber_level: Vec<u32>,
    pub sweeps: u32,
    pub placement: Option<Vec<usize>>,
}

impl Solution {
    pub fn cops(&self) -> usize {
        self.k
    }

    pub fn cops_win(&self) -> bool {
        self.placement.is_some()
    }

    pub fn state_count(&self) -> usize {
        self.cop_level.len() * 2
    }

    /// Sweep label of the cops-to-move state, `None` if the robber escapes.
    pub fn cop_label(&self, cops: &[usize], robber: usize) -> Option<u32> {
        let mut s = cops.to_vec();
        s.sort_unstable();
        let l = self.cop_level[self.index.rank(&s) * self.graph.vertex_count() + robber];
        (l != UNSOLVED).then_some(l)
    }

    /// Upper bound on the capture round from the winning placement.
    pub fn capture_bound(&self) -> Option<usize> {
        let p = self.placement.as_ref()?;
        let n = self.graph.vertex_count();
        let row = self.index.rank(p);
        let worst = (0..n)
            .map(|r| self.cop_level[row * n + r])
            .max()
            .unwrap_or(0);
        Some(worst as usize)
    }

    /// The stored winning reply for cops at `cops` (any order) against a
    /// robber at `robber`: the label-minimizing move, lowest sorted tuple on
    /// ties. Entry `i` of the result is the new vertex of cop `i`.
    pub fn best_move(&self, cops: &[usize], robber: usize) -> Option<Vec<usize>> {
        let n = self.graph.vertex_count();
        let mut order: Vec<usize> = (0..cops.len()).collect();
        order.sort_by_key(|&i| (cops[i], i));
        let sorted: Vec<usize> = order.iter().map(|&i| cops[i]).collect();
        let here = self.cop_level[self.index.rank(&sorted) * n + robber];
        if here == UNSOLVED {
            return None;
        }
        let mut best: Option<(u32, usize, Vec<usize>)> = None;
        for_each_cop_move(&self.graph, &sorted, |targets, succ_sorted| {
            let rank = self.index.rank(succ_sorted);
            let label = if succ_sorted.binary_search(&robber).is_ok() {
                0
            } else {
                self.robber_level[rank * n + robber]
            };
            let better = match &best {
                None => true,
                Some((bl, br, _)) => (label, rank) < (*bl, *br),
            };
            if better {
                best = Some((label, rank, targets.to_vec()));
            }
        });
        let (label, _, targets) = best?;
        if label >= here {
            return None;
        }
        let mut out = vec![0; cops.len()];
        for (pos, &i) in order.iter().enumerate() {
            out[i] = targets[pos];
        }
        Some(out)
    }
}

/// Calls `f(targets, sorted_targets)` for every joint cop move from the
/// sorted multiset `cops`, where `targets[i]` is the destination of the
/// `i`-th cop of `cops`.
fn for_each_cop_move(g: &Graph, cops: &[usize], mut f: impl FnMut(&[usize], &[usize])) {
    let options: Vec<Vec<usize>> = cops
        .iter()
        .map(|&c| crate::engine::closed_neighborhood(g, c))
        .collect();
    let k = cops.len();
    let mut idx = vec![0usize; k];
    let mut targets = vec![0usize; k];
    let mut sorted = vec![0usize; k];
    loop {
        for i in 0..k {
            targets[i] = options[i][idx[i]];
        }
        sorted.copy_from_slice(&targets);
        sorted.sort_unstable();
        f(&targets, &sorted);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < options[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Number of states `2 * n * C(n + k - 1, k)`, saturating.
pub fn state_count(n: usize, k: usize) -> u64 {
    multiset_count(n as u64, k as u64)
        .saturating_mul(n as u64)
        .saturating_mul(2)
}

/// Full retrograde solve for `k` cops.
pub fn solve(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<Solution> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if !g.is_connected() {
        return Err(Error::invalid("the solver needs a connected graph"));
    }
    let n = g.vertex_count();
    let states = state_count(n, k);
    if states > cfg.max_states {
        return Err(Error::ResourceLimit(format!(
            "{states} states for n = {n}, k = {k} exceed the budget of {}",
            cfg.max_states
        )));
    }
    let index = MultisetIndex::new(n, k);
    let multisets = index.all();
    debug_assert_eq!(multisets.len() as u64, index.total);
    let m = multisets.len();

    let mut cop_level = vec![UNSOLVED; m * n];
    let mut robber_level = vec![UNSOLVED; m * n];
    for (row, c) in multisets.iter().enumerate() {
        for &v in c {
            cop_level[row * n + v] = 0;
            robber_level[row * n + v] = 0;
        }
    }
    let succ_ranks = |c: &Vec<usize>| {
        let mut out = Vec::new();
        for_each_cop_move(g, c, |_, s| out.push((index.rank(s), s.to_vec())));
        out.sort_unstable_by_key(|x| x.0);
        out.dedup_by_key(|x| x.0);
        out
    };

    let mut sweep: u32 = 0;
    loop {
        sweep += 1;
        let h = sweep;
        let rl = &robber_level;
        let cop_changed: usize = cop_level
            .par_chunks_mut(n)
            .enumerate()
            .map(|(row, labels)| {
                if labels.iter().all(|&l| l != UNSOLVED) {
                    return 0;
                }
                let succ = succ_ranks(&multisets[row]);
                let mut changed = 0;
                for (r, label) in labels.iter_mut().enumerate() {
                    if *label != UNSOLVED {
                        continue;
                    }
                    let wins = succ
                        .iter()
                        .any(|(s, set)| set.binary_search(&r).is_ok() || rl[s * n + r] < h);
                    if wins {
                        *label = h;
                        changed += 1;
                    }
                }
                changed
            })
            .sum();
        let cl = &cop_level;
        let robber_changed: usize = robber_level
            .par_chunks_mut(n)
            .enumerate()
            .map(|(row, labels)| {
                let mut changed = 0;
                for (r, label) in labels.iter_mut().enumerate() {
                    if *label != UNSOLVED {
                        continue;
                    }
                    let trapped = crate::engine::closed_neighborhood(g, r)
                        .into_iter()
                        .all(|to| cl[row * n + to] < h);
                    if trapped {
                        *label = h;
                        changed += 1;
                    }
                }
                changed
            })
            .sum();
        if cop_changed == 0 && robber_changed == 0 {
            break;
        }
    }

    let placement = multisets
        .iter()
        .enumerate()
        .find(|(row, _)| (0..n).all(|r| cop_level[row * n + r] != UNSOLVED))
        .map(|(_, c)| c.clone());

    Ok(Solution {
        graph: g.clone(),
        k,
        index,
        cop_level,
        robber_level,
        sweeps: sweep,
        placement,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopWin {
    pub wins: bool,
    pub placement: Option<Vec<usize>>,
}

pub fn is_k_copwin(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<CopWin> {
    let s = solve(g, k, cfg)?;
    Ok(CopWin {
        wins: s.cops_win(),
        placement: s.placement,
    })
}

/// Least `k <= k_max` for which `k` cops win; `Ok(None)` when even `k_max`
/// cops lose.
pub fn cop_number(g: &Graph, k_max: usize, cfg: &SolverConfig) -> Result<Option<usize>> {
    if !g.is_connected() {
        return Err(Error::invalid(
            "the cop number is defined for connected graphs",
        ));
    }
    // n cops always win, so the search can stop there
    for k in 1..=k_max.min(g.vertex_count()) {
        if is_k_copwin(g, k, cfg)?.wins {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Repeatedly removes the lowest-id corner (a vertex whose closed
/// neighbourhood is contained in that of another remaining vertex).
/// Returns whether the graph dismantles to a single vertex, and the
/// elimination order (the survivor last when successful).
pub fn is_dismantlable(g: &Graph) -> (bool, Vec<usize>) {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut order = Vec::new();
    let closed_within = |u: usize, w: usize, alive: &[bool]| {
        // N[u] ⊆ N[w] among alive vertices
        g.neighbors(u)
            .iter()
            .filter(|&&x| alive[x])
            .all(|&x| x == w || g.has_edge(w, x))
            && g.has_edge(u, w)
    };
    let mut remaining = n;
    while remaining > 1 {
        let corner = (0..n).find(|&u| {
            alive[u] && (0..n).any(|w| w != u && alive[w] && closed_within(u, w, &alive))
        });
        match corner {
            Some(u) => {
                alive[u] = false;
                order.push(u);
                remaining -= 1;
            }
            None => return (false, order),
        }
    }
    order.extend((0..n).filter(|&v| alive[v]));
    (true, order)
}

/// Replays the solver's winning strategy inside the engine.
#[derive(Clone, Debug)]
pub struct SolverCops {
    solution: Arc<Solution>,
}

impl SolverCops {
    pub fn new(solution: Arc<Solution>) -> Result<Self> {
        if !solution.cops_win() {
            return Err(Error::invalid("no winning strategy to replay"));
        }
        Ok(SolverCops { solution })
    }
}

impl CopStrategy for SolverCops {
    fn name(&self) -> String {
        format!("oracle(k={})", self.solution.k)
    }

    fn place(&mut self, _g: &Graph) -> Result<Vec<usize>> {
        Ok(self.solution.placement.clone().unwrap())
    }

    fn step(&mut self, _g: &Graph, view: &CopView<'_>) -> Result<Vec<usize>> {
        let r = view
            .robber
            .ok_or_else(|| Error::invalid("oracle strategy needs a visible robber"))?;
        self.solution
            .best_move(view.cops, r)
            .ok_or_else(|| Error::StrategyFault {
                agent: "cops".into(),
                round: view.round,
                msg: "position is not winning for the cops".into(),
            })
    }

    fn memo_key(&self) -> Vec<u64> {
        Vec::new()
    }
}
