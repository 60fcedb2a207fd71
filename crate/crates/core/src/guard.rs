//! A single cop guarding a geodesic `p_0..p_L`.
//!
//! The robber's shadow is `p_j` with `j = min(d(p_0, r), L)`, distances taken
//! inside the region where the path is a geodesic. One robber step moves the
//! shadow by at most one index. The cop first walks to the nearest path
//! vertex, then moves along the path toward the shadow; once it stands on the
//! shadow it follows it forever, and a robber stepping onto `p_j` finds the
//! cop moving onto `p_j` next.
//!
//! Walking along the path keeps the gap `|cop index - shadow index|` from
//! growing and makes `gap + distance of the shadow to the far end` drop by one
//! per round, so the cop settles within `L` rounds of reaching the path.

use serde::Serialize;

use crate::engine::{CopStrategy, CopView};
use crate::error::{Error, Result};
use crate::graph::{Distances, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GuardPhase {
    Approaching,
    Guarding,
}

#[derive(Clone, Debug)]
pub struct GuardState {
    pub path: Vec<usize>,
    pub phase: GuardPhase,
    pub cop_position: usize,
    /// `d(p_0, .)` inside the region.
    from_start: Distances,
    /// Distance to the nearest path vertex in the travel graph.
    to_path: Distances,
    index_of: Vec<Option<usize>>,
}

/// Distances from `source` using only vertices of `region`.
pub fn region_distances(g: &Graph, region: &VertexSet, source: usize) -> Distances {
    let mut dist = vec![None; g.vertex_count()];
    if !region.contains(source) {
        return dist;
    }
    dist[source] = Some(0);
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap() + 1;
        for &w in g.neighbors(u) {
            if region.contains(w) && dist[w].is_none() {
                dist[w] = Some(d);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Checks that `path` is a geodesic of the subgraph induced by `region` and
/// returns `d(p_0, .)` in that subgraph.
fn geodesic_field(g: &Graph, region: &VertexSet, path: &[usize]) -> Result<Distances> {
    let n = g.vertex_count();
    let Some(&p0) = path.first() else {
        return Err(Error::invalid("empty path"));
    };
    if path.iter().any(|&v| v >= n || !region.contains(v)) {
        return Err(Error::invalid("path leaves the region"));
    }
    if path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return Err(Error::invalid("path is not a walk"));
    }
    let field = region_distances(g, region, p0);
    let last = *path.last().unwrap();
    if field[last] != Some(path.len() - 1) {
        return Err(Error::invalid("path is not a geodesic"));
    }
    Ok(field)
}

/// Shadow index of `r` on the geodesic `path` of `g`.
pub fn shadow(g: &Graph, path: &[usize], r: usize) -> Result<usize> {
    let field = geodesic_field(g, &g.vertices(), path)?;
    let d = field.get(r).copied().flatten().ok_or(Error::NoPath {
        from: path[0],
        to: r,
    })?;
    Ok(d.min(path.len() - 1))
}

/// Rounds after which the guard is in its guarding phase whatever the robber
/// does: the eccentricity bound of the travel graph plus the path length.
pub fn settle_bound(g: &Graph, path: &[usize]) -> usize {
    let comp = g.component_of(path[0]);
    let diam = comp.iter().map(|v| g.eccentricity(v)).max().unwrap_or(0);
    diam + path.len() - 1
}

impl GuardState {
    /// Guard for a geodesic of the whole graph.
    pub fn new(g: &Graph, path: Vec<usize>, start: usize) -> Result<Self> {
        Self::in_region(g, &g.vertices(), path, start)
    }

    /// Guard for a geodesic of the subgraph induced by `region`. The cop
    /// itself may travel anywhere in `g`.
    pub fn in_region(
        g: &Graph,
        region: &VertexSet,
        path: Vec<usize>,
        start: usize,
    ) -> Result<Self> {
        if start >= g.vertex_count() {
            return Err(Error::invalid(format!("start vertex {start} out of range")));
        }
        let from_start = geodesic_field(g, region, &path)?;
        let on_path = VertexSet::from_vertices(g.vertex_count(), path.iter().copied());
        let to_path = g.bfs_distances(&on_path)?;
        if to_path[start].is_none() {
            return Err(Error::invalid("the guard cannot reach its path"));
        }
        let mut index_of = vec![None; g.vertex_count()];
        for (i, &v) in path.iter().enumerate() {
            index_of[v] = Some(i);
        }
        Ok(GuardState {
            path,
            phase: GuardPhase::Approaching,
            cop_position: start,
            from_start,
            to_path,
            index_of,
        })
    }

    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.path.len() == 1
    }

    /// Shadow index of `r`, `None` outside the region.
    pub fn shadow_of(&self, r: usize) -> Option<usize> {
        self.from_start
            .get(r)
            .copied()
            .flatten()
            .map(|d| d.min(self.len()))
    }

    pub fn on_path(&self, v: usize) -> bool {
        self.index_of[v].is_some()
    }

    /// Restarts the guard from `pos` (the engine's record of where it is).
    pub fn reset_position(&mut self, pos: usize) {
        self.cop_position = pos;
    }
}

/// One cop half-move. Needs the robber's position.
pub fn guard_step(g: &Graph, gs: &mut GuardState, robber: Option<usize>) -> Result<usize> {
    let r = robber.ok_or_else(|| Error::invalid("the guard needs to see the robber"))?;
    let cop = gs.cop_position;
    let next = if r == cop || g.has_edge(cop, r) {
        r
    } else {
        match (gs.phase, gs.shadow_of(r)) {
            (GuardPhase::Guarding, Some(j)) => gs.path[j],
            (GuardPhase::Guarding, None) => cop,
            (GuardPhase::Approaching, shadow) => match gs.index_of[cop] {
                Some(c) => match shadow {
                    Some(j) => {
                        gs.path[if c < j {
                            c + 1
                        } else {
                            c.saturating_sub((c > j) as usize)
                        }]
                    }
                    None => cop,
                },
                None => g.descend(cop, &gs.to_path).expect("path reachable")[1],
            },
        }
    };
    // standing on the robber's shadow, however the cop got there
    if gs.phase == GuardPhase::Approaching && gs.shadow_of(r).is_some_and(|j| gs.path[j] == next) {
        gs.phase = GuardPhase::Guarding;
    }
    gs.cop_position = next;
    Ok(next)
}

/// The guard as a one-cop strategy.
#[derive(Clone, Debug)]
pub struct GuardCop {
    pub state: GuardState,
    start: usize,
}

impl GuardCop {
    pub fn new(g: &Graph, path: Vec<usize>, start: usize) -> Result<Self> {
        Ok(GuardCop {
            state: GuardState::new(g, path, start)?,
            start,
        })
    }

    pub fn phase(&self) -> GuardPhase {
        self.state.phase
    }
}

impl CopStrategy for GuardCop {
    fn name(&self) -> String {
        format!("guard(L={})", self.state.len())
    }

    fn place(&mut self, _g: &Graph) -> Result<Vec<usize>> {
        self.state.phase = GuardPhase::Approaching;
        self.state.cop_position = self.start;
        Ok(vec![self.start])
    }

    fn step(&mut self, g: &Graph, view: &CopView<'_>) -> Result<Vec<usize>> {
        self.state.reset_position(view.cops[0]);
        Ok(vec![guard_step(g, &mut self.state, view.robber)?])
    }

    fn memo_key(&self) -> Vec<u64> {
        vec![(self.state.phase == GuardPhase::Guarding) as u64]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{explore_robber_lines, play, GameConfig, ScriptedRobber};
    use crate::generators::*;

    #[test]
    fn shadow_examples() {
        let c6 = cycle(6).unwrap();
        let p = [0, 1, 2, 3];
        assert_eq!(shadow(&c6, &p, 2).unwrap(), 2);
        assert_eq!(shadow(&c6, &p, 5).unwrap(), 1);
        assert_eq!(shadow(&c6, &p, 4).unwrap(), 2);
        let p5 = path(6).unwrap();
        assert_eq!(shadow(&p5, &[0, 1, 2], 5).unwrap(), 2);
        assert!(shadow(&c6, &[0, 1, 2, 3, 4], 1).is_err());
        assert!(shadow(&c6, &[0, 2], 1).is_err());
    }

    #[test]
    fn settle_bound_examples() {
        let c6 = cycle(6).unwrap();
        assert_eq!(settle_bound(&c6, &[0]), 3);
        assert!(settle_bound(&c6, &[0, 1, 2, 3]) <= 6);
        assert_eq!(settle_bound(&complete(5).unwrap(), &[1, 2]), 2);
    }

    #[test]
    fn stationary_robber_gets_guarded() {
        let g = grid(4, 4).unwrap();
        let p = g.shortest_path(0, 3).unwrap();
        let mut cop = GuardCop::new(&g, p.clone(), 15).unwrap();
        let mut robber = ScriptedRobber { line: vec![13] };
        let bound = settle_bound(&g, &p);
        let t = play(&g, &mut cop, &mut robber, &GameConfig::new(1, bound)).unwrap();
        assert!(!t.outcome.is_caught());
        assert_eq!(cop.phase(), GuardPhase::Guarding);
        // d(0, 13) = 4 clamps to the far end
        assert_eq!(t.rounds.last().unwrap().cops[0], p[3]);
    }

    #[test]
    fn robber_stepping_on_guarded_path_is_caught() {
        let g = path(5).unwrap();
        let mut cop = GuardCop::new(&g, vec![0, 1, 2, 3, 4], 2).unwrap();
        let mut robber = ScriptedRobber {
            line: vec![4, 4, 4, 3],
        };
        let t = play(&g, &mut cop, &mut robber, &GameConfig::new(1, 10)).unwrap();
        assert!(t.outcome.is_caught());
    }

    #[test]
    fn c6_robber_confined_after_settling() {
        let g = cycle(6).unwrap();
        let p = vec![0, 1, 2, 3];
        let bound = settle_bound(&g, &p);
        let cop = GuardCop::new(&g, p.clone(), 0).unwrap();
        let depth = bound + 8;
        let rep = explore_robber_lines(&g, &cop, &GameConfig::new(1, depth), depth, |node, s| {
            if node.round > bound {
                if s.phase() != GuardPhase::Guarding {
                    return Err("not settled".into());
                }
                let caught = node.reply.is_none_or(|m| m.contains(&node.robber));
                if ![4, 5].contains(&node.robber) && !caught {
                    return Err(format!("robber at {} after settling", node.robber));
                }
            }
            Ok(())
        })
        .unwrap();
        assert!(rep.violation.is_none(), "{:?}", rep.violation);
        assert!(rep.some_line_survives);
    }

    #[test]
    fn arriving_on_the_shadow_settles() {
        let g = path(7).unwrap();
        let mut cop = GuardCop::new(&g, vec![6], 3).unwrap();
        let mut robber = ScriptedRobber { line: vec![0] };
        play(&g, &mut cop, &mut robber, &GameConfig::new(1, 3)).unwrap();
        assert_eq!(cop.phase(), GuardPhase::Guarding);
    }

    #[test]
    fn guard_needs_visibility() {
        let g = path(3).unwrap();
        let mut gs = GuardState::new(&g, vec![0, 1], 2).unwrap();
        assert!(guard_step(&g, &mut gs, None).is_err());
    }

    #[test]
    fn region_geodesic_may_not_be_global() {
        // 0-1-2-3 with a shortcut through 4; inside {0,1,2,3} the path is geodesic
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)]).unwrap();
        assert!(GuardState::new(&g, vec![0, 1, 2, 3], 4).is_err());
        let region = VertexSet::from_vertices(5, [0, 1, 2, 3]);
        let gs = GuardState::in_region(&g, &region, vec![0, 1, 2, 3], 4).unwrap();
        assert_eq!(gs.shadow_of(4), None);
        assert_eq!(gs.shadow_of(3), Some(3));
    }
}
