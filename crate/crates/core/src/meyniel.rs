//! The recursive strategy: while the robber's region has large diameter, one
//! cop guards a longest geodesic of it and the game continues in the
//! robber's component of what is left; once the diameter is at most the
//! threshold, an expander team finishes the job inside that component.
//!
//! The recursion tree over regions is computed before the game: every
//! component the robber could end up in gets its geodesic (or, at a leaf, its
//! cop-set family with a plan for every start vertex). The team is sized for
//! the most expensive branch; cops a branch does not need stay idle.
//!
//! Thresholds here are desk-scale overrides. The asymptotic regime lives in
//! [`crate::bounds`] and is never mixed in.

use std::sync::Arc;

use serde::Serialize;

use crate::engine::{play, CopStrategy, CopView, GameConfig, Outcome, RobberStrategy, Transcript};
use crate::error::{Error, Result};
use crate::expander::{
    select_family, team_positions, CopSetFamily, LevelDecomposition, StrategyParams,
};
use crate::graph::{Graph, Subgraph, VertexSet};
use crate::guard::{settle_bound, GuardPhase, GuardState};
use crate::rng::derive_seed;

/// Above this many vertices the guarded geodesic comes from a double sweep
/// instead of an exact diametral pair.
pub const EXACT_DIAMETER_LIMIT: usize = 500;

#[derive(Clone, Debug, Serialize)]
pub struct ExpanderSpec {
    pub lambda: f64,
    pub density: f64,
    /// `None`: `ceil(log2 diameter)` of each leaf.
    pub levels: Option<usize>,
    pub resample_limit: usize,
}

impl Default for ExpanderSpec {
    fn default() -> Self {
        ExpanderSpec {
            lambda: 2.0,
            density: 0.5,
            levels: None,
            resample_limit: crate::expander::DEFAULT_RESAMPLE_LIMIT,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MeynielConfig {
    /// Regions of diameter at most this go to the expander team.
    pub threshold: usize,
    pub expander: ExpanderSpec,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct LeafTeam {
    pub sub: Subgraph,
    pub family: CopSetFamily,
    pub plans: Vec<Arc<LevelDecomposition>>,
    /// Family cop vertices in `g`.
    pub layout: Vec<usize>,
    pub resamples: usize,
}

#[derive(Clone, Debug)]
pub enum NodeKind {
    Split {
        path: Vec<usize>,
        children: Vec<usize>,
    },
    Leaf(Box<LeafTeam>),
    /// No family with a plan for every start vertex was found.
    FailedLeaf {
        reason: String,
    },
}

#[derive(Clone, Debug)]
pub struct RegionNode {
    pub region: VertexSet,
    pub depth: usize,
    pub diameter: usize,
    pub kind: NodeKind,
}

#[derive(Clone, Debug)]
pub struct RecursionTree {
    pub nodes: Vec<RegionNode>,
    /// Cops needed by the most expensive branch.
    pub team: usize,
    /// Upper bound on the game length for any robber.
    pub round_bound: usize,
    /// Vertex where every cop starts.
    pub origin: usize,
}

fn leaf_params(spec: &ExpanderSpec, leaf: &Graph) -> Result<StrategyParams> {
    let mut p = StrategyParams::desk_default(leaf);
    p.lambda = spec.lambda;
    p.density = spec.density;
    if let Some(t) = spec.levels {
        p.levels = t;
    }
    p.resample_limit = spec.resample_limit;
    p.validate()?;
    Ok(p)
}

fn region_geodesic(sub: &Subgraph) -> Vec<usize> {
    let h = &sub.graph;
    let (a, b) = if h.vertex_count() <= EXACT_DIAMETER_LIMIT {
        h.diametral_pair()
    } else {
        h.double_sweep(0)
    };
    let p = h.shortest_path(a, b).expect("region is connected");
    p.into_iter().map(|v| sub.new_to_old[v]).collect()
}

impl RecursionTree {
    pub fn build(g: &Graph, cfg: &MeynielConfig) -> Result<RecursionTree> {
        if cfg.threshold == 0 {
            return Err(Error::invalid("threshold must be at least 1"));
        }
        if !g.is_connected() {
            return Err(Error::invalid("the graph must be connected"));
        }
        let mut nodes: Vec<RegionNode> = Vec::new();
        let mut queue = vec![(g.vertices(), 0usize)];
        // Breadth-first: node ids are queue positions, children in order of their smallest vertex.
        let mut head = 0;
        while head < queue.len() {
            let (region, depth) = queue[head].clone();
            head += 1;
            let sub = g.induced_subgraph(&region);
            let h = &sub.graph;
            let diameter = if h.vertex_count() <= EXACT_DIAMETER_LIMIT {
                h.diameter().expect("region is connected")
            } else {
                let (a, b) = h.double_sweep(0);
                h.bfs_from(a)[b].unwrap()
            };
            let id = nodes.len();
            let kind = if diameter <= cfg.threshold {
                let params = leaf_params(&cfg.expander, h)?;
                match select_family(h, &params, derive_seed(cfg.seed, "leaf-family", id as u64))? {
                    Some(sel) => {
                        let layout = sel
                            .family
                            .cops()
                            .iter()
                            .map(|c| sub.new_to_old[c.vertex])
                            .collect();
                        NodeKind::Leaf(Box::new(LeafTeam {
                            sub: sub.clone(),
                            family: sel.family,
                            plans: sel.plans,
                            layout,
                            resamples: sel.resamples,
                        }))
                    }
                    None => NodeKind::FailedLeaf {
                        reason: format!(
                            "no family with plans for all {} start vertices after {} resamples",
                            h.vertex_count(),
                            params.resample_limit
                        ),
                    },
                }
            } else {
                let path = region_geodesic(&sub);
                let rest = region.difference(&VertexSet::from_vertices(
                    g.vertex_count(),
                    path.iter().copied(),
                ));
                let comps = if rest.is_empty() {
                    Vec::new()
                } else {
                    let s = g.induced_subgraph(&rest);
                    s.graph
                        .components()
                        .into_iter()
                        .map(|c| {
                            VertexSet::from_vertices(
                                g.vertex_count(),
                                c.iter().map(|v| s.new_to_old[v]),
                            )
                        })
                        .collect()
                };
                let children = (queue.len()..queue.len() + comps.len()).collect();
                queue.extend(comps.into_iter().map(|c| (c, depth + 1)));
                NodeKind::Split { path, children }
            };
            nodes.push(RegionNode {
                region,
                depth,
                diameter,
                kind,
            });
        }
        let origin = match &nodes[0].kind {
            NodeKind::Split { path, .. } => path[0],
            NodeKind::Leaf(l) => l.layout.first().copied().unwrap_or(0),
            NodeKind::FailedLeaf { .. } => 0,
        };
        let diam = g.diameter().unwrap();
        let mut tree = RecursionTree {
            nodes,
            team: 0,
            round_bound: 0,
            origin,
        };
        let (team, rounds) = tree.cost(0, diam);
        tree.team = team.max(1);
        tree.round_bound = rounds;
        Ok(tree)
    }

    /// (cops, rounds) of the most expensive branch below `id`.
    fn cost(&self, id: usize, diam: usize) -> (usize, usize) {
        match &self.nodes[id].kind {
            NodeKind::Split { path, children } => {
                // guard settles, then at most one round waiting on the path
                let here = diam + path.len() - 1 + 2;
                let (c, r) = children
                    .iter()
                    .map(|&ch| self.cost(ch, diam))
                    .fold((0, 0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
                (1 + c, here + r)
            }
            NodeKind::Leaf(l) => {
                let deadline = l
                    .plans
                    .iter()
                    .map(|p| p.capture_deadline())
                    .max()
                    .unwrap_or(0);
                (l.family.total_cops(), diam + deadline + 2)
            }
            NodeKind::FailedLeaf { .. } => (0, 0),
        }
    }

    pub fn guards_on_deepest_branch(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n.kind, NodeKind::Split { .. }))
            .map(|n| n.depth + 1)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Stage {
    /// The guard of the current node is settling.
    Settling,
    /// Family cops walk to their layout.
    Gathering,
    Executing {
        start_round: usize,
        plan_start: usize,
    },
    /// The robber reached a leaf without a usable family.
    Stuck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Event {
    pub round: usize,
    pub what: String,
}

/// The recursive cop team as a strategy.
#[derive(Clone, Debug)]
pub struct MeynielCops {
    tree: Arc<RecursionTree>,
    node: usize,
    stage: Stage,
    /// One guard per split node on the current branch, by depth.
    guards: Vec<GuardState>,
    pub events: Vec<Event>,
}

impl MeynielCops {
    pub fn new(g: &Graph, cfg: &MeynielConfig) -> Result<Self> {
        let tree = RecursionTree::build(g, cfg)?;
        Ok(Self::from_tree(Arc::new(tree)))
    }

    pub fn from_tree(tree: Arc<RecursionTree>) -> Self {
        MeynielCops {
            tree,
            node: 0,
            stage: Stage::Settling,
            guards: Vec::new(),
            events: Vec::new(),
        }
    }

    pub fn tree(&self) -> &RecursionTree {
        &self.tree
    }

    /// Guards deployed so far on the realized branch.
    pub fn guards_used(&self) -> usize {
        self.guards.len()
    }

    /// `Σ |C_j|` of the leaf reached, 0 before reaching one.
    pub fn family_cops(&self) -> usize {
        match (&self.stage, &self.tree.nodes[self.node].kind) {
            (Stage::Gathering | Stage::Executing { .. }, NodeKind::Leaf(l)) => {
                l.family.total_cops()
            }
            _ => 0,
        }
    }

    pub fn cops_used(&self) -> usize {
        self.guards_used() + self.family_cops()
    }

    pub fn current_node(&self) -> usize {
        self.node
    }

    fn enter(&mut self, g: &Graph, id: usize, cops: &[usize], round: usize) -> Result<()> {
        self.node = id;
        match &self.tree.nodes[id].kind {
            NodeKind::Split { path, .. } => {
                let d = self.guards.len();
                let gs =
                    GuardState::in_region(g, &self.tree.nodes[id].region, path.clone(), cops[d])?;
                self.guards.push(gs);
                self.stage = Stage::Settling;
                self.events.push(Event {
                    round,
                    what: format!(
                        "guard {d} assigned to a geodesic of length {}",
                        path.len() - 1
                    ),
                });
            }
            NodeKind::Leaf(l) => {
                self.stage = Stage::Gathering;
                self.events.push(Event {
                    round,
                    what: format!(
                        "expander team of {} cops for a region of {} vertices",
                        l.family.total_cops(),
                        l.sub.graph.vertex_count()
                    ),
                });
            }
            NodeKind::FailedLeaf { reason } => {
                self.stage = Stage::Stuck;
                self.events.push(Event {
                    round,
                    what: format!("no expander team: {reason}"),
                });
            }
        }
        Ok(())
    }

    /// Child of the current split node holding `r`, if any.
    fn child_with(&self, r: usize) -> Option<usize> {
        let NodeKind::Split { children, .. } = &self.tree.nodes[self.node].kind else {
            return None;
        };
        children
            .iter()
            .copied()
            .find(|&c| self.tree.nodes[c].region.contains(r))
    }
}

impl CopStrategy for MeynielCops {
    fn name(&self) -> String {
        format!("meyniel(team={})", self.tree.team)
    }

    fn place(&mut self, g: &Graph) -> Result<Vec<usize>> {
        self.guards.clear();
        self.events.clear();
        let cops = vec![self.tree.origin; self.tree.team];
        match &self.tree.nodes[0].kind {
            NodeKind::Leaf(l) => {
                self.node = 0;
                self.stage = Stage::Gathering;
                let mut pos = cops;
                pos[..l.layout.len()].copy_from_slice(&l.layout);
                Ok(pos)
            }
            _ => {
                self.enter(g, 0, &cops, 0)?;
                Ok(cops)
            }
        }
    }

    fn step(&mut self, g: &Graph, view: &CopView<'_>) -> Result<Vec<usize>> {
        let r = view
            .robber
            .ok_or_else(|| Error::invalid("the recursive strategy needs to see the robber"))?;
        for (d, gs) in self.guards.iter_mut().enumerate() {
            gs.reset_position(view.cops[d]);
        }
        // Descend once the current guard has settled and the robber is off its path.
        if self.stage == Stage::Settling {
            let d = self.guards.len() - 1;
            if self.guards[d].phase == GuardPhase::Guarding && !self.guards[d].on_path(r) {
                if let Some(child) = self.child_with(r) {
                    self.events.push(Event {
                        round: view.round,
                        what: format!("guard {d} settled"),
                    });
                    self.enter(g, child, view.cops, view.round)?;
                }
            }
        }
        let mut next = view.cops.to_vec();
        for (d, gs) in self.guards.iter_mut().enumerate() {
            next[d] = crate::guard::guard_step(g, gs, Some(r))?;
        }
        let g0 = self.guards.len();
        if let NodeKind::Leaf(l) = &self.tree.nodes[self.node].kind {
            let slots = g0..g0 + l.layout.len();
            if self.stage == Stage::Gathering && view.cops[slots.clone()] == l.layout[..] {
                match l.sub.old_to_new[r] {
                    Some(v) => {
                        self.stage = Stage::Executing {
                            start_round: view.round,
                            plan_start: v,
                        };
                        self.events.push(Event {
                            round: view.round,
                            what: format!("expander plan for start vertex {r}"),
                        });
                    }
                    // The robber stepped onto a guarded path; its guard moves in now.
                    None => {}
                }
            }
            match self.stage {
                Stage::Gathering => {
                    for (i, slot) in slots.enumerate() {
                        let target = l.layout[i];
                        let cur = view.cops[slot];
                        if cur != target {
                            next[slot] = g.shortest_path(cur, target)?[1];
                        }
                    }
                }
                Stage::Executing {
                    start_round,
                    plan_start,
                } => {
                    let rel = view.round - start_round + 1;
                    let local = team_positions(&l.family, &l.plans[plan_start], rel);
                    for (i, slot) in slots.enumerate() {
                        next[slot] = l.sub.new_to_old[local[i]];
                    }
                }
                _ => {}
            }
        }
        Ok(next)
    }

    fn memo_key(&self) -> Vec<u64> {
        let mut key = vec![self.node as u64, self.guards.len() as u64];
        key.push(
            self.guards
                .iter()
                .filter(|g| g.phase == GuardPhase::Guarding)
                .count() as u64,
        );
        match self.stage {
            Stage::Settling => key.push(0),
            Stage::Gathering => key.push(1),
            Stage::Executing {
                start_round,
                plan_start,
            } => {
                key.extend([2, start_round as u64, plan_start as u64]);
            }
            Stage::Stuck => key.push(3),
        }
        key
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MeynielRun {
    pub transcript: Transcript,
    pub team: usize,
    pub guards: usize,
    pub family_cops: usize,
    /// `guards + family_cops` on the realized branch.
    pub cops_used: usize,
    pub events: Vec<Event>,
    /// Set when the robber reached a leaf with no usable family.
    pub failure: Option<String>,
    pub regime: &'static str,
    pub round_bound: usize,
}

/// Plays the recursive strategy against `robber`.
pub fn run_meyniel(
    g: &Graph,
    cfg: &MeynielConfig,
    robber: &mut dyn RobberStrategy,
    max_rounds: Option<usize>,
) -> Result<MeynielRun> {
    let mut cops = MeynielCops::new(g, cfg)?;
    let tree = cops.tree.clone();
    let game = GameConfig {
        cop_count: tree.team,
        max_rounds: max_rounds.unwrap_or(tree.round_bound).max(1),
        robber_visible: true,
        seed: cfg.seed,
    };
    let transcript = play(g, &mut cops, robber, &game)?;
    let failure = match (&transcript.outcome, &tree.nodes[cops.node].kind) {
        (Outcome::RobberWins { .. }, NodeKind::FailedLeaf { reason }) => Some(reason.clone()),
        (Outcome::RobberWins { .. }, _) => Some("robber survived the round bound".into()),
        _ => None,
    };
    Ok(MeynielRun {
        team: tree.team,
        guards: cops.guards_used(),
        family_cops: cops.family_cops(),
        cops_used: cops.cops_used(),
        events: cops.events.clone(),
        failure,
        regime: "desk-scale thresholds",
        round_bound: tree.round_bound,
        transcript,
    })
}

/// Rounds the guard at `depth` may need to settle, for reports.
pub fn guard_settle_bounds(g: &Graph, tree: &RecursionTree) -> Vec<(usize, usize)> {
    tree.nodes
        .iter()
        .enumerate()
        .filter_map(|(i, n)| match &n.kind {
            NodeKind::Split { path, .. } => Some((i, settle_bound(g, path))),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{
        adversarial_robber_search, validate_transcript, GreedyFarRobber, RandomRobber,
    };
    use crate::generators::*;

    fn cfg(threshold: usize) -> MeynielConfig {
        MeynielConfig {
            threshold,
            expander: ExpanderSpec::default(),
            seed: 7,
        }
    }

    #[test]
    fn small_diameter_goes_straight_to_expander() {
        let g = petersen();
        let tree = RecursionTree::build(&g, &cfg(3)).unwrap();
        assert_eq!(tree.nodes.len(), 1);
        assert!(matches!(tree.nodes[0].kind, NodeKind::Leaf(_)));
        let run = run_meyniel(&g, &cfg(3), &mut GreedyFarRobber::new(), None).unwrap();
        assert!(run.transcript.outcome.is_caught());
        assert_eq!(run.guards, 0);
        assert_eq!(run.cops_used, run.family_cops);
    }

    #[test]
    fn cycle_splits_into_a_path() {
        let g = cycle(20).unwrap();
        let tree = RecursionTree::build(&g, &cfg(3)).unwrap();
        let NodeKind::Split { path, children } = &tree.nodes[0].kind else {
            panic!()
        };
        assert_eq!(path.len(), 11);
        assert_eq!(children.len(), 1);
        for seed in 0..5 {
            let run = run_meyniel(&g, &cfg(3), &mut RandomRobber::new(seed), None).unwrap();
            assert!(run.transcript.outcome.is_caught(), "{:?}", run.events);
            assert_eq!(run.cops_used, run.guards + run.family_cops);
            validate_transcript(&g, &run.transcript).unwrap();
        }
    }

    #[test]
    fn path_against_adversary() {
        let g = path(12).unwrap();
        let c = cfg(3);
        let cops = MeynielCops::new(&g, &c).unwrap();
        let bound = cops.tree().round_bound;
        let game = GameConfig::new(cops.tree().team, bound);
        let rep = adversarial_robber_search(&g, &cops, &game, bound).unwrap();
        assert!(rep.all_lines_caught);
    }

    #[test]
    fn tree_children_cover_the_rest() {
        let g = grid(6, 3).unwrap();
        let tree = RecursionTree::build(&g, &cfg(2)).unwrap();
        for n in &tree.nodes {
            if let NodeKind::Split { path, children } = &n.kind {
                let mut covered = VertexSet::from_vertices(g.vertex_count(), path.iter().copied());
                for &c in children {
                    assert!(tree.nodes[c].region.is_subset(&n.region));
                    assert!(tree.nodes[c].region.len() < n.region.len());
                    covered = covered.union(&tree.nodes[c].region);
                }
                assert_eq!(covered, n.region);
            }
        }
    }

    #[test]
    fn zero_threshold_rejected() {
        assert!(RecursionTree::build(&path(3).unwrap(), &cfg(0)).is_err());
    }
}
