//! Game mechanics: placement, alternating moves (cops first), capture
//! detection, replayable transcripts and an exhaustive robber adversary.
//!
//! Round 0 is placement: the cops place, then the robber places knowing
//! where the cops are. Round `r >= 1` is the cop half-move `r` followed by
//! the robber half-move `r`. Capture is checked after every half-move, and
//! a robber stepping onto a cop is caught.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{below, rng_from_seed, Rng};

pub const TRANSCRIPT_SCHEMA: &str = "cops-transcript/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub cop_count: usize,
    pub max_rounds: usize,
    pub robber_visible: bool,
    pub seed: u64,
}

impl GameConfig {
    pub fn new(cop_count: usize, max_rounds: usize) -> Self {
        GameConfig {
            cop_count,
            max_rounds,
            robber_visible: true,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cop_count == 0 {
            return Err(Error::invalid("at least one cop is required"));
        }
        if self.max_rounds == 0 {
            return Err(Error::invalid("max_rounds must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Cops,
    Robber,
}

/// Full game position as the engine (and the robber) sees it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    pub cops: Vec<usize>,
    pub robber: Option<usize>,
    pub round: usize,
    pub to_move: Side,
}

/// What the cops are shown before their half-move of `round`. `robber` is
/// `None` when the robber is invisible.
#[derive(Clone, Copy, Debug)]
pub struct CopView<'a> {
    pub round: usize,
    pub cops: &'a [usize],
    pub robber: Option<usize>,
}

/// A cop team. Strategies may keep internal state but must be deterministic
/// functions of what they have been shown (plus their own seeded stream), so
/// a game replays exactly.
pub trait CopStrategy {
    fn name(&self) -> String;

    /// Initial cop positions, one per cop.
    fn place(&mut self, g: &Graph) -> Result<Vec<usize>>;

    /// New position for every cop (stay or move along an edge).
    fn step(&mut self, g: &Graph, view: &CopView<'_>) -> Result<Vec<usize>>;

    /// Encodes all internal state that influences future moves. Two
    /// strategies with equal keys shown equal views must move identically;
    /// the adversarial search memoizes on it.
    fn memo_key(&self) -> Vec<u64>;
}

pub trait RobberStrategy {
    fn name(&self) -> String;
    fn place(&mut self, g: &Graph, cops: &[usize]) -> usize;
    fn step(&mut self, g: &Graph, state: &GameState) -> usize;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Caught { round: usize },
    RobberWins { cutoff: usize },
}

impl Outcome {
    pub fn is_caught(&self) -> bool {
        matches!(self, Outcome::Caught { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub n: usize,
    pub m: usize,
    pub sha256: String,
}

impl GraphInfo {
    pub fn of(g: &Graph) -> Self {
        GraphInfo {
            n: g.vertex_count(),
            m: g.edge_count(),
            sha256: g.fingerprint(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub cops: Vec<usize>,
    pub robber: usize,
}

/// Positions at the end of each half-move of one round. `robber` is `None`
/// when the game ended on the cop half-move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    pub cops: Vec<usize>,
    pub robber: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub schema: String,
    pub graph: GraphInfo,
    pub config: GameConfig,
    pub cop_strategy: String,
    pub robber_strategy: String,
    pub placements: Placement,
    pub rounds: Vec<RoundRecord>,
    pub outcome: Outcome,
}

impl Transcript {
    /// Robber position at the end of `round` (0 = placement), if still free.
    pub fn robber_after(&self, round: usize) -> Option<usize> {
        if round == 0 {
            return Some(self.placements.robber);
        }
        self.rounds.get(round - 1).and_then(|r| r.robber)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }
}

fn check_positions(g: &Graph, cops: &[usize], k: usize, agent: &str, round: usize) -> Result<()> {
    if cops.len() != k {
        return Err(Error::StrategyFault {
            agent: agent.into(),
            round,
            msg: format!("expected {k} cop positions, got {}", cops.len()),
        });
    }
    if let Some(&v) = cops.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::StrategyFault {
            agent: agent.into(),
            round,
            msg: format!("vertex {v} out of range"),
        });
    }
    Ok(())
}

fn check_cop_moves(g: &Graph, from: &[usize], to: &[usize], round: usize) -> Result<()> {
    check_positions(g, to, from.len(), "cops", round)?;
    for (i, (&a, &b)) in from.iter().zip(to).enumerate() {
        if !g.is_move(a, b) {
            return Err(Error::StrategyFault {
                agent: format!("cop {i}"),
                round,
                msg: format!("illegal move {a} -> {b}"),
            });
        }
    }
    Ok(())
}

/// Plays one game to capture or to `cfg.max_rounds`.
pub fn play<C, R>(g: &Graph, cops: &mut C, robber: &mut R, cfg: &GameConfig) -> Result<Transcript>
where
    C: CopStrategy + ?Sized,
    R: RobberStrategy + ?Sized,
{
    cfg.validate()?;
    if !g.is_connected() {
        return Err(Error::invalid("games are played on connected graphs"));
    }
    let k = cfg.cop_count;
    let mut cop_pos = cops.place(g)?;
    check_positions(g, &cop_pos, k, "cops", 0)?;
    let r0 = robber.place(g, &cop_pos);
    if r0 >= g.vertex_count() {
        return Err(Error::StrategyFault {
            agent: "robber".into(),
            round: 0,
            msg: format!("vertex {r0} out of range"),
        });
    }
    let mut transcript = Transcript {
        schema: TRANSCRIPT_SCHEMA.into(),
        graph: GraphInfo::of(g),
        config: cfg.clone(),
        cop_strategy: cops.name(),
        robber_strategy: robber.name(),
        placements: Placement {
            cops: cop_pos.clone(),
            robber: r0,
        },
        rounds: Vec::new(),
        outcome: Outcome::RobberWins {
            cutoff: cfg.max_rounds,
        },
    };
    if cop_pos.contains(&r0) {
        transcript.outcome = Outcome::Caught { round: 0 };
        return Ok(transcript);
    }
    let mut rob = r0;
    for round in 1..=cfg.max_rounds {
        let view = CopView {
            round,
            cops: &cop_pos,
            robber: cfg.robber_visible.then_some(rob),
        };
        let next = cops.step(g, &view)?;
        check_cop_moves(g, &cop_pos, &next, round)?;
        cop_pos = next;
        if cop_pos.contains(&rob) {
            transcript.rounds.push(RoundRecord {
                round,
                cops: cop_pos,
                robber: None,
            });
            transcript.outcome = Outcome::Caught { round };
            return Ok(transcript);
        }
        let state = GameState {
            cops: cop_pos.clone(),
            robber: Some(rob),
            round,
            to_move: Side::Robber,
        };
        let to = robber.step(g, &state);
        if to >= g.vertex_count() || !g.is_move(rob, to) {
            return Err(Error::StrategyFault {
                agent: "robber".into(),
                round,
                msg: format!("illegal move {rob} -> {to}"),
            });
        }
        rob = to;
        transcript.rounds.push(RoundRecord {
            round,
            cops: cop_pos.clone(),
            robber: Some(rob),
        });
        if cop_pos.contains(&rob) {
            transcript.outcome = Outcome::Caught { round };
            return Ok(transcript);
        }
    }
    Ok(transcript)
}

/// Checks a transcript against the rules without using the engine: legal
/// placements, one edge (or stay) per agent per half-move, and an outcome
/// consistent with the positions.
pub fn validate_transcript(g: &Graph, t: &Transcript) -> std::result::Result<(), String> {
    let n = g.vertex_count();
    if t.graph != GraphInfo::of(g) {
        return Err("transcript belongs to a different graph".into());
    }
    let k = t.config.cop_count;
    if t.placements.cops.len() != k {
        return Err(format!(
            "placement has {} cops, config says {k}",
            t.placements.cops.len()
        ));
    }
    if t.placements
        .cops
        .iter()
        .chain([&t.placements.robber])
        .any(|&v| v >= n)
    {
        return Err("placement out of range".into());
    }
    let mut cops = t.placements.cops.clone();
    let mut robber = t.placements.robber;
    let mut caught_at = cops.contains(&robber).then_some(0);
    for (i, rec) in t.rounds.iter().enumerate() {
        if caught_at.is_some() {
            return Err(format!("round {} recorded after capture", rec.round));
        }
        if rec.round != i + 1 {
            return Err(format!("round numbering broken at index {i}"));
        }
        if rec.cops.len() != k {
            return Err(format!("round {}: wrong number of cops", rec.round));
        }
        for (j, (&a, &b)) in cops.iter().zip(&rec.cops).enumerate() {
            if b >= n || !(a == b || g.neighbors(a).contains(&b)) {
                return Err(format!("round {}: cop {j} moved {a} -> {b}", rec.round));
            }
        }
        cops = rec.cops.clone();
        if cops.contains(&robber) {
            if rec.robber.is_some() {
                return Err(format!("round {}: robber moved after capture", rec.round));
            }
            caught_at = Some(rec.round);
            continue;
        }
        let Some(next) = rec.robber else {
            return Err(format!(
                "round {}: robber missing but not caught",
                rec.round
            ));
        };
        if next >= n || !(next == robber || g.neighbors(robber).contains(&next)) {
            return Err(format!(
                "round {}: robber moved {robber} -> {next}",
                rec.round
            ));
        }
        robber = next;
        if cops.contains(&robber) {
            caught_at = Some(rec.round);
        }
    }
    match (t.outcome, caught_at) {
        (Outcome::Caught { round }, Some(r)) if round == r => Ok(()),
        (Outcome::RobberWins { cutoff }, None)
            if cutoff == t.config.max_rounds && t.rounds.len() == cutoff =>
        {
            Ok(())
        }
        (o, c) => Err(format!(
            "outcome {o:?} inconsistent with positions (capture at {c:?})"
        )),
    }
}

/// Closed neighbourhood of `v` in increasing id order.
pub fn closed_neighborhood(g: &Graph, v: usize) -> Vec<usize> {
    let mut out: Vec<usize> = g.neighbors(v).to_vec();
    let pos = out.partition_point(|&w| w < v);
    out.insert(pos, v);
    out
}

/// Robber that maximizes its distance to the nearest cop, lowest id on ties.
#[derive(Clone, Debug, Default)]
pub struct GreedyFarRobber {
    dist: Vec<Vec<Option<usize>>>,
}

impl GreedyFarRobber {
    pub fn new() -> Self {
        Self::default()
    }

    fn ensure(&mut self, g: &Graph) {
        if self.dist.len() != g.vertex_count() {
            self.dist = (0..g.vertex_count()).map(|v| g.bfs_from(v)).collect();
        }
    }

    fn score(&self, v: usize, cops: &[usize]) -> usize {
        cops.iter()
            .map(|&c| self.dist[c][v].unwrap_or(usize::MAX))
            .min()
            .unwrap_or(usize::MAX)
    }

    fn best(&self, candidates: impl Iterator<Item = usize>, cops: &[usize]) -> usize {
        let mut best: Option<(usize, usize)> = None;
        for v in candidates {
            let s = self.score(v, cops);
            if best.is_none_or(|(bs, _)| s > bs) {
                best = Some((s, v));
            }
        }
        best.expect("nonempty candidate set").1
    }
}

/// Greedy move for a robber at `robber` against cops at `cops`.
pub fn robber_greedy_far(g: &Graph, state: &GameState) -> usize {
    let mut r = GreedyFarRobber::new();
    r.step(g, state)
}

impl RobberStrategy for GreedyFarRobber {
    fn name(&self) -> String {
        "greedy-far".into()
    }

    fn place(&mut self, g: &Graph, cops: &[usize]) -> usize {
        self.ensure(g);
        self.best(0..g.vertex_count(), cops)
    }

    fn step(&mut self, g: &Graph, state: &GameState) -> usize {
        self.ensure(g);
        let r = state.robber.expect("robber placed");
        self.best(closed_neighborhood(g, r).into_iter(), &state.cops)
    }
}

/// Robber choosing uniformly among the vertices of its closed
/// neighbourhood not occupied by a cop (staying put if all are).
#[derive(Clone, Debug)]
pub struct RandomRobber {
    rng: Rng,
    seed: u64,
}

impl RandomRobber {
    pub fn new(seed: u64) -> Self {
        RandomRobber {
            rng: rng_from_seed(seed),
            seed,
        }
    }
}

/// One random robber move drawn from a fresh stream seeded with `seed`.
pub fn robber_random(g: &Graph, state: &GameState, seed: u64) -> usize {
    RandomRobber::new(seed).step(g, state)
}

impl RobberStrategy for RandomRobber {
    fn name(&self) -> String {
        format!("random(seed={})", self.seed)
    }

    fn place(&mut self, g: &Graph, cops: &[usize]) -> usize {
        let free: Vec<usize> = (0..g.vertex_count())
            .filter(|v| !cops.contains(v))
            .collect();
        if free.is_empty() {
            return 0;
        }
        free[below(&mut self.rng, free.len())]
    }

    fn step(&mut self, g: &Graph, state: &GameState) -> usize {
        let r = state.robber.expect("robber placed");
        let free: Vec<usize> = closed_neighborhood(g, r)
            .into_iter()
            .filter(|v| !state.cops.contains(v))
            .collect();
        if free.is_empty() {
            return r;
        }
        free[below(&mut self.rng, free.len())]
    }
}

/// Replays a fixed line: `line[0]` is the placement, `line[r]` the move of
/// round `r`. Stays put once the line is exhausted.
#[derive(Clone, Debug)]
pub struct ScriptedRobber {
    pub line: Vec<usize>,
}

impl RobberStrategy for ScriptedRobber {
    fn name(&self) -> String {
        "scripted".into()
    }

    fn place(&mut self, _g: &Graph, _cops: &[usize]) -> usize {
        self.line[0]
    }

    fn step(&mut self, _g: &Graph, state: &GameState) -> usize {
        let r = state.robber.expect("robber placed");
        self.line.get(state.round).copied().unwrap_or(r)
    }
}

/// Cops that never move.
#[derive(Clone, Debug)]
pub struct StaticCops {
    pub positions: Vec<usize>,
}

impl CopStrategy for StaticCops {
    fn name(&self) -> String {
        "static".into()
    }

    fn place(&mut self, _g: &Graph) -> Result<Vec<usize>> {
        Ok(self.positions.clone())
    }

    fn step(&mut self, _g: &Graph, view: &CopView<'_>) -> Result<Vec<usize>> {
        Ok(view.cops.to_vec())
    }

    fn memo_key(&self) -> Vec<u64> {
        Vec::new()
    }
}

/// Every cop steps along the lowest-id geodesic towards the robber; holds
/// when the robber is invisible.
#[derive(Clone, Debug)]
pub struct ChaseCops {
    pub start: Vec<usize>,
}

impl CopStrategy for ChaseCops {
    fn name(&self) -> String {
        "chase".into()
    }

    fn place(&mut self, g: &Graph) -> Result<Vec<usize>> {
        if self.start.iter().any(|&v| v >= g.vertex_count()) {
            return Err(Error::invalid("start vertex out of range"));
        }
        Ok(self.start.clone())
    }

    fn step(&mut self, g: &Graph, view: &CopView<'_>) -> Result<Vec<usize>> {
        let Some(r) = view.robber else {
            return Ok(view.cops.to_vec());
        };
        let to_r = g.bfs_from(r);
        Ok(view
            .cops
            .iter()
            .map(|&c| {
                g.descend(c, &to_r)
                    .map_or(c, |p| p.get(1).copied().unwrap_or(c))
            })
            .collect())
    }

    fn memo_key(&self) -> Vec<u64> {
        Vec::new()
    }
}

/// Result of [`adversarial_robber_search`].
#[derive(Clone, Debug)]
pub struct AdversaryReport {
    /// The longest-surviving robber line, replayed through [`play`].
    pub transcript: Transcript,
    /// True iff every robber line is caught within the depth.
    pub all_lines_caught: bool,
    /// Latest capture round over all lines when `all_lines_caught`.
    pub worst_capture_round: Option<usize>,
    pub nodes: usize,
}

type MemoKey = (Vec<u64>, Vec<usize>, usize, usize);

struct Search<'g, C> {
    g: &'g Graph,
    depth: usize,
    visible: bool,
    memo: HashMap<MemoKey, (usize, usize)>,
    _marker: std::marker::PhantomData<C>,
}

fn deterministic_step<C: CopStrategy + Clone>(
    g: &Graph,
    strat: &C,
    view: &CopView<'_>,
) -> Result<(C, Vec<usize>)> {
    let mut a = strat.clone();
    let mut b = strat.clone();
    let ma = a.step(g, view)?;
    let mb = b.step(g, view)?;
    if ma != mb || a.memo_key() != b.memo_key() {
        return Err(Error::StrategyFault {
            agent: "cops".into(),
            round: view.round,
            msg: "nondeterministic strategy: same input, different output".into(),
        });
    }
    check_cop_moves(g, view.cops, &ma, view.round)?;
    Ok((a, ma))
}

impl<C: CopStrategy + Clone> Search<'_, C> {
    /// Value of a position at the start of `round`: the capture round, or
    /// `depth + 1` if the robber survives every round up to `depth`.
    fn value(&mut self, strat: &C, cops: &[usize], robber: usize, round: usize) -> Result<usize> {
        if round > self.depth {
            return Ok(self.depth + 1);
        }
        let key = (strat.memo_key(), cops.to_vec(), robber, round);
        if let Some(&(v, _)) = self.memo.get(&key) {
            return Ok(v);
        }
        let view = CopView {
            round,
            cops,
            robber: self.visible.then_some(robber),
        };
        let (next, moved) = deterministic_step(self.g, strat, &view)?;
        let mut best = (round, robber);
        if !moved.contains(&robber) {
            best = (0, robber);
            for to in closed_neighborhood(self.g, robber) {
                let v = if moved.contains(&to) {
                    round
                } else {
                    self.value(&next, &moved, to, round + 1)?
                };
                if v > best.0 {
                    best = (v, to);
                }
            }
        }
        self.memo.insert(key, best);
        Ok(best.0)
    }
}

/// Exhaustive robber adversary against a deterministic cop strategy. The cop
/// moves are a function of the visible history, so the game tree only
/// branches on robber choices; positions are memoized on
/// `(strategy state, cops, robber, round)`.
pub fn adversarial_robber_search<C: CopStrategy + Clone>(
    g: &Graph,
    cops: &C,
    cfg: &GameConfig,
    depth: usize,
) -> Result<AdversaryReport> {
    cfg.validate()?;
    if depth == 0 || depth > cfg.max_rounds {
        return Err(Error::invalid(
            "depth must satisfy 1 <= depth <= max_rounds",
        ));
    }
    if !g.is_connected() {
        return Err(Error::invalid("games are played on connected graphs"));
    }
    let mut a = cops.clone();
    let mut b = cops.clone();
    let start = a.place(g)?;
    if b.place(g)? != start || a.memo_key() != b.memo_key() {
        return Err(Error::StrategyFault {
            agent: "cops".into(),
            round: 0,
            msg: "nondeterministic placement".into(),
        });
    }
    check_positions(g, &start, cfg.cop_count, "cops", 0)?;
    let mut search = Search {
        g,
        depth,
        visible: cfg.robber_visible,
        memo: HashMap::new(),
        _marker: std::marker::PhantomData::<C>,
    };
    let mut best = (0, 0);
    let mut first = true;
    for r in 0..g.vertex_count() {
        let v = if start.contains(&r) {
            0
        } else {
            search.value(&a, &start, r, 1)?
        };
        if first || v > best.0 {
            best = (v, r);
            first = false;
        }
    }
    // Reconstruct the chosen line by following the memoized best replies.
    let mut line = vec![best.1];
    let mut strat = a.clone();
    let mut cop_pos = start.clone();
    let mut robber = best.1;
    let mut round = 1;
    while !cop_pos.contains(&robber) && round <= depth {
        let key = (strat.memo_key(), cop_pos.clone(), robber, round);
        let &(_, to) = search.memo.get(&key).expect("searched position");
        let view = CopView {
            round,
            cops: &cop_pos,
            robber: cfg.robber_visible.then_some(robber),
        };
        let (next, moved) = deterministic_step(g, &strat, &view)?;
        if moved.contains(&robber) {
            break;
        }
        line.push(to);
        strat = next;
        cop_pos = moved;
        robber = to;
        round += 1;
    }
    let mut replay_cfg = cfg.clone();
    replay_cfg.max_rounds = depth;
    let mut cops_replay = cops.clone();
    let mut scripted = ScriptedRobber { line };
    let mut transcript = play(g, &mut cops_replay, &mut scripted, &replay_cfg)?;
    transcript.robber_strategy = "adversary".into();
    let all = best.0 <= depth;
    Ok(AdversaryReport {
        transcript,
        all_lines_caught: all,
        worst_capture_round: all.then_some(best.0),
        nodes: search.memo.len(),
    })
}

/// One position reached during [`explore_robber_lines`]: the start of
/// `round`, with `cops` and `robber` as they stood at the end of the
/// previous round. `reply` is the cop half-move the strategy plays from
/// here, or `None` past the depth.
#[derive(Clone, Copy, Debug)]
pub struct NodeView<'a> {
    pub round: usize,
    pub cops: &'a [usize],
    pub robber: usize,
    pub reply: Option<&'a [usize]>,
}

#[derive(Clone, Debug, Default)]
pub struct ExploreReport {
    pub nodes: usize,
    /// First violation found and the robber line (placement first) leading to it.
    pub violation: Option<(String, Vec<usize>)>,
    /// Robber lines that survived the whole depth exist.
    pub some_line_survives: bool,
}

/// Visits every position reachable by some robber line against a
/// deterministic cop strategy (up to `depth` rounds) and runs `check` on
/// each, stopping at the first violation.
pub fn explore_robber_lines<C, F>(
    g: &Graph,
    cops: &C,
    cfg: &GameConfig,
    depth: usize,
    mut check: F,
) -> Result<ExploreReport>
where
    C: CopStrategy + Clone,
    F: FnMut(&NodeView<'_>, &C) -> std::result::Result<(), String>,
{
    cfg.validate()?;
    let mut strat = cops.clone();
    let start = strat.place(g)?;
    check_positions(g, &start, cfg.cop_count, "cops", 0)?;
    let mut seen: HashSet<MemoKey> = HashSet::new();
    let mut report = ExploreReport::default();
    // Depth-first over (strategy, cops, robber, round, line).
    let mut stack: Vec<(C, Vec<usize>, usize, usize, Vec<usize>)> = (0..g.vertex_count())
        .rev()
        .filter(|r| !start.contains(r))
        .map(|r| (strat.clone(), start.clone(), r, 1, vec![r]))
        .collect();
    while let Some((s, cop_pos, robber, round, line)) = stack.pop() {
        if !seen.insert((s.memo_key(), cop_pos.clone(), robber, round)) {
            continue;
        }
        report.nodes += 1;
        if round > depth {
            report.some_line_survives = true;
            let node = NodeView {
                round,
                cops: &cop_pos,
                robber,
                reply: None,
            };
            if let Err(msg) = check(&node, &s) {
                report.violation = Some((msg, line));
                return Ok(report);
            }
            continue;
        }
        let view = CopView {
            round,
            cops: &cop_pos,
            robber: cfg.robber_visible.then_some(robber),
        };
        let (next, moved) = deterministic_step(g, &s, &view)?;
        let node = NodeView {
            round,
            cops: &cop_pos,
            robber,
            reply: Some(&moved),
        };
        if let Err(msg) = check(&node, &s) {
            report.violation = Some((msg, line));
            return Ok(report);
        }
        if moved.contains(&robber) {
            continue;
        }
        for to in closed_neighborhood(g, robber).into_iter().rev() {
            if moved.contains(&to) {
                continue;
            }
            let mut l = line.clone();
            l.push(to);
            stack.push((next.clone(), moved.clone(), to, round + 1, l));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};

    #[test]
    fn p2_capture_in_round_one() {
        let g = path(2).unwrap();
        let mut cops = ChaseCops { start: vec![0] };
        let mut robber = GreedyFarRobber::new();
        let t = play(&g, &mut cops, &mut robber, &GameConfig::new(1, 10)).unwrap();
        assert_eq!(t.placements.robber, 1);
        assert_eq!(t.outcome, Outcome::Caught { round: 1 });
        validate_transcript(&g, &t).unwrap();
    }

    #[test]
    fn cops_everywhere_catch_at_placement() {
        let g = complete(4).unwrap();
        let mut cops = StaticCops {
            positions: vec![0, 1, 2, 3],
        };
        let t = play(
            &g,
            &mut cops,
            &mut GreedyFarRobber::new(),
            &GameConfig::new(4, 5),
        )
        .unwrap();
        assert_eq!(t.outcome, Outcome::Caught { round: 0 });
        validate_transcript(&g, &t).unwrap();
    }

    #[test]
    fn one_cop_loses_on_c4() {
        let g = cycle(4).unwrap();
        let mut cops = ChaseCops { start: vec![0] };
        let t = play(
            &g,
            &mut cops,
            &mut GreedyFarRobber::new(),
            &GameConfig::new(1, 50),
        )
        .unwrap();
        assert_eq!(t.outcome, Outcome::RobberWins { cutoff: 50 });
        validate_transcript(&g, &t).unwrap();
        let rep = adversarial_robber_search(
            &g,
            &ChaseCops { start: vec![0] },
            &GameConfig::new(1, 30),
            30,
        )
        .unwrap();
        assert!(!rep.all_lines_caught);
        assert_eq!(rep.transcript.outcome, Outcome::RobberWins { cutoff: 30 });
    }

    #[test]
    fn p3_centre_cop_catches_every_line() {
        let g = path(3).unwrap();
        let rep =
            adversarial_robber_search(&g, &ChaseCops { start: vec![1] }, &GameConfig::new(1, 5), 5)
                .unwrap();
        assert!(rep.all_lines_caught);
        assert_eq!(rep.worst_capture_round, Some(1));
        validate_transcript(&g, &rep.transcript).unwrap();
    }

    #[test]
    fn greedy_examples() {
        let g = path(5).unwrap();
        let s = GameState {
            cops: vec![0],
            robber: Some(2),
            round: 1,
            to_move: Side::Robber,
        };
        assert_eq!(robber_greedy_far(&g, &s), 3);
        // all moves equally bad: every vertex of K3 is at distance 1 from the cop
        let k3 = complete(3).unwrap();
        let s = GameState {
            cops: vec![0],
            robber: Some(2),
            round: 1,
            to_move: Side::Robber,
        };
        assert_eq!(robber_greedy_far(&k3, &s), 1);
    }

    #[test]
    fn random_robber_replays() {
        let g = cycle(9).unwrap();
        let s = GameState {
            cops: vec![0],
            robber: Some(4),
            round: 1,
            to_move: Side::Robber,
        };
        assert_eq!(robber_random(&g, &s, 11), robber_random(&g, &s, 11));
        let run = |seed| {
            play(
                &g,
                &mut ChaseCops { start: vec![0] },
                &mut RandomRobber::new(seed),
                &GameConfig::new(1, 40),
            )
            .unwrap()
        };
        assert_eq!(run(5), run(5));
    }

    #[test]
    fn illegal_cop_move_is_a_fault() {
        struct Teleport;
        impl CopStrategy for Teleport {
            fn name(&self) -> String {
                "teleport".into()
            }
            fn place(&mut self, _g: &Graph) -> Result<Vec<usize>> {
                Ok(vec![0])
            }
            fn step(&mut self, _g: &Graph, _v: &CopView<'_>) -> Result<Vec<usize>> {
                Ok(vec![4])
            }
            fn memo_key(&self) -> Vec<u64> {
                vec![]
            }
        }
        let g = path(5).unwrap();
        let err = play(
            &g,
            &mut Teleport,
            &mut GreedyFarRobber::new(),
            &GameConfig::new(1, 5),
        )
        .unwrap_err();
        assert!(matches!(err, Error::StrategyFault { round: 1, .. }));
    }

    #[test]
    fn nondeterminism_is_detected() {
        #[derive(Clone)]
        struct Flaky(std::rc::Rc<std::cell::Cell<u64>>);
        impl CopStrategy for Flaky {
            fn name(&self) -> String {
                "flaky".into()
            }
            fn place(&mut self, _g: &Graph) -> Result<Vec<usize>> {
                Ok(vec![0])
            }
            fn step(&mut self, _g: &Graph, v: &CopView<'_>) -> Result<Vec<usize>> {
                self.0.set(self.0.get() + 1);
                Ok(vec![if self.0.get().is_multiple_of(2) {
                    v.cops[0]
                } else {
                    1
                }])
            }
            fn memo_key(&self) -> Vec<u64> {
                vec![]
            }
        }
        let g = path(4).unwrap();
        let err =
            adversarial_robber_search(&g, &Flaky(Default::default()), &GameConfig::new(1, 5), 5)
                .unwrap_err();
        assert!(matches!(err, Error::StrategyFault { .. }));
    }

    #[test]
    fn validator_rejects_tampering() {
        let g = path(6).unwrap();
        let mut t = play(
            &g,
            &mut ChaseCops { start: vec![0] },
            &mut GreedyFarRobber::new(),
            &GameConfig::new(1, 20),
        )
        .unwrap();
        validate_transcript(&g, &t).unwrap();
        t.rounds[0].cops = vec![3];
        assert!(validate_transcript(&g, &t).is_err());
    }

    #[test]
    fn disconnected_graph_rejected() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let err = play(
            &g,
            &mut ChaseCops { start: vec![0] },
            &mut GreedyFarRobber::new(),
            &GameConfig::new(1, 5),
        );
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }
}
