//! Expansion-based cop team for graphs of small diameter.
//!
//! Cops are drawn as independent random sets `C_1..C_{t+1}` (one cop per
//! pair `(j, v)` with `v ∈ C_j`). Against a robber starting at `v` the plan
//! splits the robber's reachable region level by level:
//!
//! - level 1: candidate `B(v, 1)`, matching radius 1, deadline round 1;
//! - level `i + 1`: candidate `B(A_i, 2^(i-1))`, radius `2^i`, deadline `2^i`.
//!
//! At each level a maximum matching from the candidate set into the level's
//! cops (within the radius) is computed; the core `A_i` is the Hall-deficiency
//! closure of the unmatched candidates and the shell `D_i` is the rest, which
//! is completely matched. Matched cops walk to their shell vertex by the
//! deadline and then hold. A robber still free after round `2^(i-1)` is in
//! `A_i`, so once some `A_s` is empty the robber is caught by round `2^(s-1)`.

use std::sync::Arc;

use serde::Serialize;

use crate::engine::{
    play, CopStrategy, CopView, GameConfig, RandomRobber, RobberStrategy, Transcript,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::matching::Bipartite;
use crate::rng::{below, bernoulli, derive_seed, rng_from_seed, Rng};

pub const DEFAULT_RESAMPLE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrategyParams {
    /// Expansion factor.
    pub lambda: f64,
    /// Probability of putting a vertex into each cop set.
    pub density: f64,
    /// `t`: the family has `t + 1` sets.
    pub levels: usize,
    pub resample_limit: usize,
}

impl StrategyParams {
    pub fn new(lambda: f64, density: f64, levels: usize) -> Result<Self> {
        let p = StrategyParams {
            lambda,
            density,
            levels,
            resample_limit: DEFAULT_RESAMPLE_LIMIT,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.density > 0.0 && self.density <= 1.0) {
            return Err(Error::invalid("density must lie in (0, 1]"));
        }
        if !(self.lambda > 1.0) {
            return Err(Error::invalid("lambda must exceed 1"));
        }
        if self.levels == 0 {
            return Err(Error::invalid("levels must be at least 1"));
        }
        Ok(())
    }

    /// Desk-scale defaults: `lambda = 2`, `p = 0.5`, `t = ceil(log2 diameter)`
    /// (at least 1).
    pub fn desk_default(g: &Graph) -> Self {
        let d = g.diameter().unwrap_or(g.vertex_count()).max(1);
        let t = (usize::BITS - (d - 1).leading_zeros()) as usize;
        StrategyParams {
            lambda: 2.0,
            density: 0.5,
            levels: t.max(1),
            resample_limit: DEFAULT_RESAMPLE_LIMIT,
        }
    }
}

/// The asymptotic parameter choice for an `n`-vertex graph, as floats:
/// `lambda = 2^sqrt(log n)`, `p = log(n)^2 / lambda`, `t = sqrt(log n) - 3 log log n`.
/// Only meaningful for astronomically large `n`; see [`crate::bounds`].
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticParams {
    pub log_n: f64,
    pub lambda: f64,
    pub density: f64,
    pub levels: f64,
}

pub fn asymptotic_params(log_n: f64) -> AsymptoticParams {
    let s = log_n.sqrt();
    AsymptoticParams {
        log_n,
        lambda: s.exp2(),
        density: log_n * log_n * (-s).exp2(),
        levels: s - 3.0 * log_n.log2(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopSetFamily {
    /// `sets[j - 1]` is `C_j`.
    #[serde(serialize_with = "ser_sets")]
    pub sets: Vec<VertexSet>,
    pub density_ppm: u64,
    pub seed: u64,
}

fn ser_sets<S: serde::Serializer>(
    sets: &[VertexSet],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(sets.len()))?;
    for set in sets {
        seq.serialize_element(&set.to_vec())?;
    }
    seq.end()
}

/// One cop of the family: the level `j` of the set it was drawn for and
/// its vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCop {
    pub level: usize,
    pub vertex: usize,
}

impl CopSetFamily {
    pub fn from_sets(sets: Vec<VertexSet>, seed: u64) -> Self {
        CopSetFamily {
            sets,
            density_ppm: 0,
            seed,
        }
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(VertexSet::len).collect()
    }

    /// `Σ |C_j|`: the number of cops the family deploys.
    pub fn total_cops(&self) -> usize {
        self.sets.iter().map(VertexSet::len).sum()
    }

    /// Cops ordered by level, then vertex. The position in this list is the
    /// cop's index inside the team.
    pub fn cops(&self) -> Vec<FamilyCop> {
        self.sets
            .iter()
            .enumerate()
            .flat_map(|(j, s)| {
                s.iter().map(move |v| FamilyCop {
                    level: j + 1,
                    vertex: v,
                })
            })
            .collect()
    }

    pub fn cop_index(&self, level: usize, vertex: usize) -> Option<usize> {
        let set = self.sets.get(level.checked_sub(1)?)?;
        if !set.contains(vertex) {
            return None;
        }
        let before: usize = self.sets[..level - 1].iter().map(VertexSet::len).sum();
        Some(before + set.iter().take_while(|&v| v < vertex).count())
    }

    /// Flags families larger than `2 (t + 1) p n`, twice the expected size.
    pub fn oversized(&self, density: f64) -> bool {
        let n = self.sets.first().map_or(0, VertexSet::universe) as f64;
        self.total_cops() as f64 > 2.0 * self.set_count() as f64 * density * n
    }
}

/// Independent Bernoulli(`p`) sets `C_1..C_{t+1}`, drawn set by set and
/// vertex by vertex from the stream seeded with `seed`.
pub fn sample_cop_sets(g: &Graph, params: &StrategyParams, seed: u64) -> Result<CopSetFamily> {
    params.validate()?;
    let n = g.vertex_count();
    let mut rng = rng_from_seed(seed);
    let sets = (0..=params.levels)
        .map(|_| {
            VertexSet::from_vertices(n, (0..n).filter(|_| bernoulli(&mut rng, params.density)))
        })
        .collect();
    Ok(CopSetFamily {
        sets,
        density_ppm: (params.density * 1e6).round() as u64,
        seed,
    })
}

/// A matched cop: index into [`CopSetFamily::cops`], the shell vertex it
/// occupies and its walk there (`route[0]` is the cop's start).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub cop: usize,
    pub target: usize,
    pub route: Vec<usize>,
}

impl Assignment {
    /// Position after `steps` moves along the route.
    pub fn position_after(&self, steps: usize) -> usize {
        self.route[steps.min(self.route.len() - 1)]
    }

    pub fn len(&self) -> usize {
        self.route.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.route.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSplit {
    pub core: VertexSet,
    pub shell: VertexSet,
    /// `(cop vertex, shell vertex, route)` per shell vertex.
    pub pairs: Vec<(usize, usize, Vec<usize>)>,
}

/// Splits `candidate` into a core and a shell that is completely matched
/// into `cops` within distance `radius`.
pub fn decompose_level(
    g: &Graph,
    candidate: &VertexSet,
    cops: &VertexSet,
    radius: usize,
) -> Result<LevelSplit> {
    if candidate.is_empty() {
        return Err(Error::invalid("empty candidate set"));
    }
    let left: Vec<usize> = candidate.to_vec();
    let right: Vec<usize> = cops.to_vec();
    let mut right_pos = vec![usize::MAX; g.vertex_count()];
    for (i, &w) in right.iter().enumerate() {
        right_pos[w] = i;
    }
    let fields: Vec<_> = left.iter().map(|&u| g.bfs_from(u)).collect();
    let adj = fields
        .iter()
        .map(|dist| {
            right
                .iter()
                .enumerate()
                .filter(|(_, &w)| matches!(dist[w], Some(d) if d <= radius))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let b = Bipartite {
        right: right.len(),
        adj,
    };
    let m = b.maximum_matching();
    let closure = b.deficiency_closure(&m);
    let n = g.vertex_count();
    let mut core = VertexSet::new(n);
    let mut shell = VertexSet::new(n);
    let mut pairs = Vec::new();
    for (i, &u) in left.iter().enumerate() {
        if closure[i] {
            core.insert(u);
        } else {
            shell.insert(u);
            let w = right[m.left_mate[i].expect("shell vertices are matched")];
            let route = g.descend(w, &fields[i]).expect("matched within radius");
            pairs.push((w, u, route));
        }
    }
    Ok(LevelSplit { core, shell, pairs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanLevel {
    /// 1-based level `i`.
    pub index: usize,
    #[serde(serialize_with = "ser_set")]
    pub candidate: VertexSet,
    #[serde(serialize_with = "ser_set")]
    pub core: VertexSet,
    #[serde(serialize_with = "ser_set")]
    pub shell: VertexSet,
    pub radius: usize,
    /// Cumulative round by which the shell is occupied.
    pub deadline: usize,
    pub assignments: Vec<Assignment>,
    /// `|B(A_i, 2^(i-1))|` when the core is nonempty (the next candidate size).
    pub core_ball: Option<usize>,
    /// Whether `|B(A_i, 2^(i-1))| <= lambda |A_i|` held. Logged, not assumed.
    pub within_lambda: Option<bool>,
}

fn ser_set<S: serde::Serializer>(set: &VertexSet, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(set.iter())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelDecomposition {
    pub start: usize,
    /// Set when a cop of `C_1` already sits in `B(v, 1)` and `|B(v, 1)| >= lambda`.
    pub immediate: Option<Assignment>,
    pub levels: Vec<PlanLevel>,
    /// `s`: the level whose core is empty (1 for an immediate capture).
    pub terminal: usize,
}

impl LevelDecomposition {
    /// Round by which the robber is caught: `2^(s-1)`.
    pub fn capture_deadline(&self) -> usize {
        1 << (self.terminal - 1)
    }

    pub fn assignments(&self) -> impl Iterator<Item = &Assignment> {
        self.immediate
            .iter()
            .chain(self.levels.iter().flat_map(|l| l.assignments.iter()))
    }

    /// Longest route among the assigned cops.
    pub fn longest_route(&self) -> usize {
        self.assignments().map(Assignment::len).max().unwrap_or(0)
    }

    /// Core `A_i` for 1-based level `i`, if the plan reached it.
    pub fn core(&self, level: usize) -> Option<&VertexSet> {
        self.levels.get(level.checked_sub(1)?).map(|l| &l.core)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum PlanFailure {
    LevelsExhausted { levels: Vec<PlanLevel> },
}

/// Builds the level decomposition for a robber starting at `v`.
pub fn build_plan(
    g: &Graph,
    v: usize,
    family: &CopSetFamily,
    params: &StrategyParams,
) -> Result<std::result::Result<LevelDecomposition, PlanFailure>> {
    params.validate()?;
    let n = g.vertex_count();
    if v >= n {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    if family.set_count() != params.levels + 1 {
        return Err(Error::invalid("family size does not match t + 1"));
    }
    if family.sets.iter().any(|s| s.universe() != n) {
        return Err(Error::invalid("family drawn for a different graph"));
    }
    let start_ball = g.ball(&VertexSet::singleton(n, v), 1)?;
    if start_ball.len() as f64 >= params.lambda {
        if let Some(w) = family.sets[0].intersection(&start_ball).iter().next() {
            let route = if w == v { vec![v] } else { vec![w, v] };
            return Ok(Ok(LevelDecomposition {
                start: v,
                immediate: Some(Assignment {
                    cop: family.cop_index(1, w).unwrap(),
                    target: v,
                    route,
                }),
                levels: Vec::new(),
                terminal: 1,
            }));
        }
    }
    let mut levels = Vec::new();
    let mut candidate = start_ball;
    for level in 1..=params.levels + 1 {
        let radius = 1usize << (level - 1);
        let split = decompose_level(g, &candidate, &family.sets[level - 1], radius)?;
        let assignments = split
            .pairs
            .iter()
            .map(|(w, u, route)| Assignment {
                cop: family.cop_index(level, *w).unwrap(),
                target: *u,
                route: route.clone(),
            })
            .collect();
        let (core_ball, within_lambda, next) = if split.core.is_empty() {
            (None, None, None)
        } else {
            let ball = g.ball(&split.core, radius)?;
            let size = ball.len();
            let ok = size as f64 <= params.lambda * split.core.len() as f64;
            (Some(size), Some(ok), Some(ball))
        };
        let done = split.core.is_empty();
        levels.push(PlanLevel {
            index: level,
            candidate: candidate.clone(),
            core: split.core,
            shell: split.shell,
            radius,
            deadline: radius,
            assignments,
            core_ball,
            within_lambda,
        });
        if done {
            return Ok(Ok(LevelDecomposition {
                start: v,
                immediate: None,
                terminal: level,
                levels,
            }));
        }
        candidate = next.unwrap();
    }
    Ok(Err(PlanFailure::LevelsExhausted { levels }))
}

/// Plans for every start vertex, or the first vertex whose plan fails.
pub fn plans_for_all(
    g: &Graph,
    family: &CopSetFamily,
    params: &StrategyParams,
) -> Result<std::result::Result<Vec<Arc<LevelDecomposition>>, usize>> {
    let mut out = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        match build_plan(g, v, family, params)? {
            Ok(p) => out.push(Arc::new(p)),
            Err(_) => return Ok(Err(v)),
        }
    }
    Ok(Ok(out))
}

/// A family that admits a plan from every start vertex, found by sampling
/// with derived seeds `derive_seed(seed, "cop-sets", attempt)`.
#[derive(Clone, Debug)]
pub struct SelectedFamily {
    pub family: CopSetFamily,
    pub plans: Vec<Arc<LevelDecomposition>>,
    /// 0 when the first sample worked.
    pub resamples: usize,
}

pub fn select_family(
    g: &Graph,
    params: &StrategyParams,
    seed: u64,
) -> Result<Option<SelectedFamily>> {
    for attempt in 0..=params.resample_limit {
        let family = sample_cop_sets(g, params, derive_seed(seed, "cop-sets", attempt as u64))?;
        if let Ok(plans) = plans_for_all(g, &family, params)? {
            return Ok(Some(SelectedFamily {
                family,
                plans,
                resamples: attempt,
            }));
        }
    }
    Ok(None)
}

/// Positions of the family cops `rel` rounds into the execution of `plan`
/// (rel = 0 is the starting layout).
pub fn team_positions(family: &CopSetFamily, plan: &LevelDecomposition, rel: usize) -> Vec<usize> {
    let mut pos: Vec<usize> = family.cops().iter().map(|c| c.vertex).collect();
    for a in plan.assignments() {
        pos[a.cop] = a.position_after(rel);
    }
    pos
}

fn check_plan_matches(g: &Graph, family: &CopSetFamily, plan: &LevelDecomposition) -> Result<()> {
    let cops = family.cops();
    for a in plan.assignments() {
        let Some(c) = cops.get(a.cop) else {
            return Err(Error::invalid(format!(
                "plan uses cop {} not in the family",
                a.cop
            )));
        };
        if a.route.first() != Some(&c.vertex) || a.route.last() != Some(&a.target) {
            return Err(Error::invalid("plan route does not start at its cop"));
        }
        if a.route.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return Err(Error::invalid("plan route is not a walk in the graph"));
        }
    }
    Ok(())
}

/// Visible-robber execution: the plan for the robber's start vertex is
/// followed to the letter. Cop moves depend only on the start vertex and
/// the round, never on later robber moves.
#[derive(Clone, Debug)]
pub struct ExpanderCops {
    family: Arc<CopSetFamily>,
    /// Plan per start vertex (`None` when absent).
    plans: Arc<Vec<Option<Arc<LevelDecomposition>>>>,
    /// A plan to follow regardless of where the robber starts.
    fixed: Option<Arc<LevelDecomposition>>,
    active: Option<Arc<LevelDecomposition>>,
}

impl ExpanderCops {
    pub fn new(family: CopSetFamily, plans: Vec<Arc<LevelDecomposition>>) -> Self {
        ExpanderCops {
            family: Arc::new(family),
            plans: Arc::new(plans.into_iter().map(Some).collect()),
            fixed: None,
            active: None,
        }
    }

    pub fn from_selected(sel: &SelectedFamily) -> Self {
        Self::new(sel.family.clone(), sel.plans.clone())
    }

    pub fn family(&self) -> &CopSetFamily {
        &self.family
    }

    /// The plan in force (after round 1).
    pub fn active_plan(&self) -> Option<&LevelDecomposition> {
        self.active.as_deref()
    }

    pub fn plan_for(&self, v: usize) -> Option<&LevelDecomposition> {
        self.plans.get(v).and_then(|p| p.as_deref())
    }
}

/// Strategy that executes one fixed plan.
pub fn execute_plan(
    g: &Graph,
    plan: &LevelDecomposition,
    family: &CopSetFamily,
) -> Result<ExpanderCops> {
    check_plan_matches(g, family, plan)?;
    Ok(ExpanderCops {
        family: Arc::new(family.clone()),
        plans: Arc::new(Vec::new()),
        fixed: Some(Arc::new(plan.clone())),
        active: None,
    })
}

impl CopStrategy for ExpanderCops {
    fn name(&self) -> String {
        format!("expander(cops={})", self.family.total_cops())
    }

    fn place(&mut self, _g: &Graph) -> Result<Vec<usize>> {
        if self.family.total_cops() == 0 {
            return Err(Error::invalid("the family has no cops"));
        }
        self.active = None;
        Ok(self.family.cops().iter().map(|c| c.vertex).collect())
    }

    fn step(&mut self, _g: &Graph, view: &CopView<'_>) -> Result<Vec<usize>> {
        if self.active.is_none() {
            let plan =
                match &self.fixed {
                    Some(p) => p.clone(),
                    None => {
                        let v = view
                            .robber
                            .ok_or_else(|| Error::invalid("the robber's start must be visible"))?;
                        self.plans.get(v).cloned().flatten().ok_or_else(|| {
                            Error::StrategyFault {
                                agent: "cops".into(),
                                round: view.round,
                                msg: format!("no plan for start vertex {v}"),
                            }
                        })?
                    }
                };
            self.active = Some(plan);
        }
        Ok(team_positions(
            &self.family,
            self.active.as_ref().unwrap(),
            view.round,
        ))
    }

    fn memo_key(&self) -> Vec<u64> {
        vec![self.active.as_ref().map_or(0, |p| p.start as u64 + 1)]
    }
}

/// Exhaustive check of the claim for every nonempty `A` with
/// `|A| <= n / lambda`, every `i <= t` with `|B(A, 2^i)| >= lambda |A|` and
/// every `j`: `|B(A, 2^i) ∩ C_j| >= |A|`.
pub fn verify_claim(
    g: &Graph,
    family: &CopSetFamily,
    params: &StrategyParams,
    max_subsets: u64,
) -> Result<bool> {
    params.validate()?;
    let n = g.vertex_count();
    if n >= 63 || (1u64 << n) - 1 > max_subsets {
        return Err(Error::ResourceLimit(format!(
            "2^{n} subsets exceed the budget of {max_subsets}"
        )));
    }
    let closed: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, &w| m | 1 << w))
        .collect();
    let expand = |set: u64| {
        let mut out = set;
        let mut s = set;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            out |= closed[v];
        }
        out
    };
    let cop_masks: Vec<u64> = family
        .sets
        .iter()
        .map(|s| s.iter().fold(0u64, |m, v| m | 1 << v))
        .collect();
    let size_cap = n as f64 / params.lambda;
    for a in 1u64..(1u64 << n) {
        let size = a.count_ones() as usize;
        if size as f64 > size_cap {
            continue;
        }
        let mut ball = a;
        let mut radius = 0usize;
        for i in 0..=params.levels {
            let target = 1usize << i;
            while radius < target {
                let next = expand(ball);
                radius += 1;
                if next == ball {
                    radius = target;
                    break;
                }
                ball = next;
            }
            if (ball.count_ones() as f64) < params.lambda * size as f64 {
                continue;
            }
            if cop_masks
                .iter()
                .any(|c| ((ball & c).count_ones() as usize) < size)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Brute force over subsets: the largest `X ⊆ candidate` with
/// `|B(X, radius)| < lambda |X|` (lowest bitmask among the largest), or the
/// empty set if none exists. Exponential; candidate size must be at most 20.
pub fn largest_nonexpanding_subset(
    g: &Graph,
    candidate: &VertexSet,
    radius: usize,
    lambda: f64,
) -> Result<VertexSet> {
    let verts = candidate.to_vec();
    if verts.len() > 20 {
        return Err(Error::ResourceLimit(
            "candidate too large for subset enumeration".into(),
        ));
    }
    let n = g.vertex_count();
    let mut best = VertexSet::new(n);
    for mask in 1u32..(1u32 << verts.len()) {
        let size = mask.count_ones() as usize;
        if size <= best.len() {
            continue;
        }
        let x = VertexSet::from_vertices(
            n,
            verts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v),
        );
        if (g.ball(&x, radius)?.len() as f64) < lambda * size as f64 {
            best = x;
        }
    }
    Ok(best)
}

/// Invisible-robber play: the cops repeatedly guess the robber's start
/// uniformly, run the plan for the guess, walk back to the family layout and
/// guess again.
#[derive(Clone, Debug)]
pub struct InvisibleExpanderCops {
    family: Arc<CopSetFamily>,
    plans: Arc<Vec<Option<Arc<LevelDecomposition>>>>,
    rng: Rng,
    max_repeats: usize,
    phase: Phase,
    /// First round of each repeat.
    pub repeat_starts: Vec<usize>,
}

#[derive(Clone, Debug)]
enum Phase {
    Ready,
    Execute {
        plan: Arc<LevelDecomposition>,
        from: usize,
    },
    Return {
        plan: Arc<LevelDecomposition>,
        from: usize,
    },
    Wasted,
    Exhausted,
}

impl InvisibleExpanderCops {
    pub fn new(
        g: &Graph,
        family: CopSetFamily,
        params: &StrategyParams,
        seed: u64,
        max_repeats: usize,
    ) -> Result<Self> {
        let plans = (0..g.vertex_count())
            .map(|v| build_plan(g, v, &family, params).map(|r| r.ok().map(Arc::new)))
            .collect::<Result<Vec<_>>>()?;
        Ok(InvisibleExpanderCops {
            family: Arc::new(family),
            plans: Arc::new(plans),
            rng: rng_from_seed(seed),
            max_repeats,
            phase: Phase::Ready,
            repeat_starts: Vec::new(),
        })
    }

    /// Rounds needed for `max_repeats` full repeats.
    pub fn round_budget(&self) -> usize {
        let per = self
            .plans
            .iter()
            .flatten()
            .map(|p| p.capture_deadline() + p.longest_route())
            .max()
            .unwrap_or(0)
            .max(1);
        self.max_repeats * per
    }

    /// 1-based repeat during which `round` was played.
    pub fn repeat_of(&self, round: usize) -> usize {
        self.repeat_starts
            .iter()
            .filter(|&&s| s <= round)
            .count()
            .max(1)
    }

    fn layout(&self) -> Vec<usize> {
        self.family.cops().iter().map(|c| c.vertex).collect()
    }
}

impl CopStrategy for InvisibleExpanderCops {
    fn name(&self) -> String {
        format!("expander-invisible(cops={})", self.family.total_cops())
    }

    fn place(&mut self, _g: &Graph) -> Result<Vec<usize>> {
        if self.family.total_cops() == 0 {
            return Err(Error::invalid("the family has no cops"));
        }
        Ok(self.layout())
    }

    fn step(&mut self, g: &Graph, view: &CopView<'_>) -> Result<Vec<usize>> {
        let round = view.round;
        loop {
            match &self.phase {
                Phase::Exhausted => return Ok(view.cops.to_vec()),
                Phase::Ready => {
                    if self.repeat_starts.len() == self.max_repeats {
                        self.phase = Phase::Exhausted;
                        continue;
                    }
                    self.repeat_starts.push(round);
                    let guess = below(&mut self.rng, g.vertex_count());
                    self.phase = match &self.plans[guess] {
                        Some(p) => Phase::Execute {
                            plan: p.clone(),
                            from: round,
                        },
                        None => Phase::Wasted,
                    };
                }
                Phase::Wasted => {
                    self.phase = Phase::Ready;
                    return Ok(view.cops.to_vec());
                }
                Phase::Execute { plan, from } => {
                    let rel = round - from + 1;
                    if rel <= plan.capture_deadline() {
                        return Ok(team_positions(&self.family, plan, rel));
                    }
                    self.phase = Phase::Return {
                        plan: plan.clone(),
                        from: round,
                    };
                }
                Phase::Return { plan, from } => {
                    let back = round - from + 1;
                    if back <= plan.longest_route() {
                        let mut pos = self.layout();
                        for a in plan.assignments() {
                            pos[a.cop] = a.route[a.len().saturating_sub(back)];
                        }
                        return Ok(pos);
                    }
                    self.phase = Phase::Ready;
                }
            }
        }
    }

    fn memo_key(&self) -> Vec<u64> {
        let word = self.rng.get_word_pos();
        let mut key = vec![
            self.repeat_starts.len() as u64,
            word as u64,
            (word >> 64) as u64,
        ];
        key.push(match &self.phase {
            Phase::Ready => 0,
            Phase::Execute { plan, from } => {
                1 + ((plan.start as u64) << 8) + ((*from as u64) << 32)
            }
            Phase::Return { plan, from } => 2 + ((plan.start as u64) << 8) + ((*from as u64) << 32),
            Phase::Wasted => 3,
            Phase::Exhausted => 4,
        });
        key
    }
}

#[derive(Clone, Debug)]
pub struct InvisibleReport {
    pub transcript: Transcript,
    /// Repeat (1-based) in which the robber was caught.
    pub repeats: Option<usize>,
}

/// Plays the invisible-robber strategy against `robber` (a seeded random
/// robber when `None`) for at most `max_repeats` guesses.
pub fn invisible_mode(
    g: &Graph,
    family: &CopSetFamily,
    params: &StrategyParams,
    seed: u64,
    max_repeats: usize,
    robber: Option<&mut dyn RobberStrategy>,
) -> Result<InvisibleReport> {
    if max_repeats == 0 {
        return Err(Error::invalid("max_repeats must be at least 1"));
    }
    let mut cops = InvisibleExpanderCops::new(
        g,
        family.clone(),
        params,
        derive_seed(seed, "guess", 0),
        max_repeats,
    )?;
    let cfg = GameConfig {
        cop_count: family.total_cops(),
        max_rounds: cops.round_budget().max(1),
        robber_visible: false,
        seed,
    };
    let mut default_robber = RandomRobber::new(derive_seed(seed, "robber", 0));
    let robber: &mut dyn RobberStrategy = match robber {
        Some(r) => r,
        None => &mut default_robber,
    };
    let transcript = play(g, &mut cops, robber, &cfg)?;
    let repeats = match transcript.outcome {
        crate::engine::Outcome::Caught { round } => Some(cops.repeat_of(round)),
        _ => None,
    };
    Ok(InvisibleReport {
        transcript,
        repeats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{adversarial_robber_search, GreedyFarRobber, Outcome};
    use crate::generators::*;

    fn full_family(n: usize, sets: usize) -> CopSetFamily {
        CopSetFamily::from_sets(vec![VertexSet::full(n); sets], 0)
    }

    #[test]
    fn nonexpanding_subsets() {
        let p5 = path(5).unwrap();
        let all = largest_nonexpanding_subset(&p5, &p5.vertices(), 1, 2.0).unwrap();
        assert_eq!(all.len(), 5);
        let c8 = cycle(8).unwrap();
        let cand = |vs: &[usize]| VertexSet::from_vertices(8, vs.iter().copied());
        // a ball of radius 1 around one or two consecutive vertices is too big
        assert!(largest_nonexpanding_subset(&c8, &cand(&[0, 1]), 1, 2.0).unwrap().is_empty());
        // 5 < 2 * 3
        let three = largest_nonexpanding_subset(&c8, &cand(&[0, 1, 2, 5]), 1, 2.0).unwrap();
        assert_eq!(three.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn params_validation() {
        assert!(StrategyParams::new(2.0, 0.0, 1).is_err());
        assert!(StrategyParams::new(1.0, 0.5, 1).is_err());
        assert!(StrategyParams::new(2.0, 0.5, 0).is_err());
        assert!(StrategyParams::new(2.0, 1.0, 1).is_ok());
        let p = StrategyParams::desk_default(&cycle(10).unwrap());
        assert_eq!(p.levels, 3);
    }

    #[test]
    fn sampling_replays_and_full_density() {
        let g = petersen();
        let params = StrategyParams::new(2.0, 1.0, 2).unwrap();
        let f = sample_cop_sets(&g, &params, 3).unwrap();
        assert!(f.sets.iter().all(|s| s.len() == 10));
        assert_eq!(f.total_cops(), 30);
        let params = StrategyParams::new(2.0, 0.4, 2).unwrap();
        assert_eq!(
            sample_cop_sets(&g, &params, 3).unwrap(),
            sample_cop_sets(&g, &params, 3).unwrap()
        );
        assert_ne!(
            sample_cop_sets(&g, &params, 3).unwrap(),
            sample_cop_sets(&g, &params, 4).unwrap()
        );
    }

    #[test]
    fn decompose_identity_and_forced_deficiency() {
        let g = path(4).unwrap();
        let cand = VertexSet::from_vertices(4, [1, 2]);
        let split = decompose_level(&g, &cand, &VertexSet::full(4), 0).unwrap();
        assert!(split.core.is_empty());
        assert!(split.pairs.iter().all(|(w, u, r)| w == u && r.len() == 1));

        // a and b both only reach cop vertex c
        let star = star(2).unwrap(); // 1 - 0 - 2
        let cand = VertexSet::from_vertices(3, [1, 2]);
        let split = decompose_level(&star, &cand, &VertexSet::singleton(3, 0), 1).unwrap();
        assert_eq!(split.core.to_vec(), vec![1, 2]);
        assert!(split.shell.is_empty());
    }

    #[test]
    fn complete_graph_immediate_capture() {
        let g = complete(5).unwrap();
        let params = StrategyParams::new(2.0, 1.0, 1).unwrap();
        let fam = full_family(5, 2);
        let plan = build_plan(&g, 3, &fam, &params).unwrap().unwrap();
        assert!(plan.immediate.is_some());
        assert_eq!(plan.capture_deadline(), 1);
    }

    #[test]
    fn star_centre_first_level() {
        let g = star(5).unwrap();
        let params = StrategyParams::new(3.0, 1.0, 1).unwrap();
        // C_1 = V but with lambda above |B(v,1)| the precheck does not fire
        let params_big = StrategyParams {
            lambda: 7.0,
            ..params.clone()
        };
        let fam = full_family(6, 2);
        let plan = build_plan(&g, 0, &fam, &params_big).unwrap().unwrap();
        assert!(plan.immediate.is_none());
        assert_eq!(plan.terminal, 1);
        assert!(plan.levels[0].core.is_empty());
        let mut cops = ExpanderCops::new(
            fam.clone(),
            plans_for_all(&g, &fam, &params_big).unwrap().unwrap(),
        );
        let t = play(
            &g,
            &mut cops,
            &mut GreedyFarRobber::new(),
            &GameConfig::new(fam.total_cops(), 5),
        )
        .unwrap();
        assert!(matches!(t.outcome, Outcome::Caught { round } if round <= 1));
    }

    #[test]
    fn sparse_family_on_path_fails() {
        let g = path(10).unwrap();
        let params = StrategyParams::new(2.0, 0.02, 3).unwrap();
        let fam = CopSetFamily::from_sets(vec![VertexSet::new(10); 4], 0);
        let r = build_plan(&g, 4, &fam, &params).unwrap();
        assert!(matches!(r, Err(PlanFailure::LevelsExhausted { .. })));
    }

    #[test]
    fn stationary_robber_is_caught() {
        let g = cycle(8).unwrap();
        let params = StrategyParams::new(2.0, 0.6, 2).unwrap();
        let sel = select_family(&g, &params, 5)
            .unwrap()
            .expect("dense family works");
        let mut cops = ExpanderCops::from_selected(&sel);
        let mut robber = crate::engine::ScriptedRobber { line: vec![3] };
        let t = play(
            &g,
            &mut cops,
            &mut robber,
            &GameConfig::new(sel.family.total_cops(), 16),
        )
        .unwrap();
        assert!(t.outcome.is_caught());
    }

    #[test]
    fn adversary_is_caught_by_deadline() {
        let g = grid(3, 3).unwrap();
        let params = StrategyParams::new(2.0, 0.5, 2).unwrap();
        let sel = select_family(&g, &params, 11).unwrap().expect("family");
        let cops = ExpanderCops::from_selected(&sel);
        let worst = sel
            .plans
            .iter()
            .map(|p| p.capture_deadline())
            .max()
            .unwrap();
        let cfg = GameConfig::new(sel.family.total_cops(), worst);
        let rep = adversarial_robber_search(&g, &cops, &cfg, worst).unwrap();
        assert!(rep.all_lines_caught);
    }

    #[test]
    fn claim_trivial_cases() {
        let g = cycle(6).unwrap();
        let params = StrategyParams::new(2.0, 0.5, 1).unwrap();
        assert!(verify_claim(&g, &full_family(6, 2), &params, 1 << 20).unwrap());
        let empty = CopSetFamily::from_sets(vec![VertexSet::new(6); 2], 0);
        assert!(!verify_claim(&g, &empty, &params, 1 << 20).unwrap());
        assert!(matches!(
            verify_claim(&g, &empty, &params, 10),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn execute_plan_rejects_mismatch() {
        let g = complete(4).unwrap();
        let params = StrategyParams::new(2.0, 1.0, 1).unwrap();
        let fam = full_family(4, 2);
        let plan = build_plan(&g, 0, &fam, &params).unwrap().unwrap();
        let other = CopSetFamily::from_sets(vec![VertexSet::new(4); 2], 0);
        assert!(execute_plan(&g, &plan, &other).is_err());
        assert!(execute_plan(&g, &plan, &fam).is_ok());
    }

    #[test]
    fn invisible_on_complete_graph() {
        let g = complete(5).unwrap();
        let params = StrategyParams::new(2.0, 1.0, 1).unwrap();
        let rep = invisible_mode(&g, &full_family(5, 2), &params, 1, 50, None).unwrap();
        assert_eq!(rep.repeats, Some(1));
    }

    #[test]
    fn invisible_with_failing_family_hits_limit() {
        let g = path(6).unwrap();
        let params = StrategyParams::new(2.0, 0.5, 1).unwrap();
        // one cop at a leaf never covers the other end
        let fam = CopSetFamily::from_sets(vec![VertexSet::singleton(6, 0), VertexSet::new(6)], 0);
        let rep = invisible_mode(&g, &fam, &params, 2, 5, None).unwrap();
        assert!(!rep.transcript.outcome.is_caught() || rep.repeats.is_some());
        let fam = CopSetFamily::from_sets(vec![VertexSet::singleton(6, 5), VertexSet::new(6)], 0);
        let mut robber = crate::engine::ScriptedRobber { line: vec![0] };
        let rep = invisible_mode(&g, &fam, &params, 2, 5, Some(&mut robber)).unwrap();
        assert_eq!(rep.repeats, None);
        assert!(matches!(rep.transcript.outcome, Outcome::RobberWins { .. }));
    }
}
