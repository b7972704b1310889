//! Seeded simulation of the chain `X_{n+1} = phi_{xi_n}(X_n)` on infinite
//! configurations.
//!
//! Randomness comes from ChaCha8 seeded with a `u64`; independent replicas use
//! distinct ChaCha streams of the same seed, so results depend only on
//! `(seed, replica index)` and never on scheduling.

mod dist;
mod stats;

pub use dist::{DistKind, DistributionSpec};
pub use stats::{
    detect_period, overlaps, sample_size, tv_distance, tv_noise_sigma, Histogram, TV_NOISE_SIGMAS,
};

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Configuration;
use crate::coupling::CouplingPlan;
use crate::error::{Error, Result};
use crate::lazy::LazyInfiniteConfiguration;
use crate::word::MoveWord;

/// Steps inspected for periodicity after burn-in.
pub const PERIOD_WINDOW: u64 = 10_000;

/// Generator for `(seed, stream)`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Transient discarded before periodicity and front-speed estimates:
/// `max(10 * support_max, 1000)` steps.
pub fn burn_in(dist: &DistributionSpec) -> u64 {
    (10 * dist.support_max()).max(1000)
}

/// Runs `n` independent jobs indexed `0..n` and returns results in index order.
pub trait ReplicaMap {
    fn map<T: Send, F: Fn(u64) -> T + Sync>(&self, n: u64, f: F) -> Vec<T>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SequentialMap;

impl ReplicaMap for SequentialMap {
    fn map<T: Send, F: Fn(u64) -> T + Sync>(&self, n: u64, f: F) -> Vec<T> {
        (0..n).map(f).collect()
    }
}

/// The most recent move types, oldest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveLog {
    moves: VecDeque<u64>,
    capacity: usize,
}

impl MoveLog {
    pub fn new(capacity: usize) -> Self {
        Self { moves: VecDeque::with_capacity(capacity), capacity }
    }

    pub fn push(&mut self, m: u64) {
        if self.capacity == 0 {
            return;
        }
        if self.moves.len() == self.capacity {
            self.moves.pop_front();
        }
        self.moves.push_back(m);
    }

    pub fn recent(&self) -> impl Iterator<Item = u64> + '_ {
        self.moves.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Whether the trailing moves spell `word`.
    pub fn ends_with(&self, word: &MoveWord) -> bool {
        let n = word.len() as usize;
        n <= self.moves.len() && self.moves.iter().skip(self.moves.len() - n).copied().eq(word.moves())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainState {
    pub config: LazyInfiniteConfiguration,
    pub step: u64,
    pub bins_created: u64,
    pub move_log: Option<MoveLog>,
}

impl ChainState {
    pub fn new(config: LazyInfiniteConfiguration, log_window: Option<usize>) -> Self {
        let bins_created = config.shift();
        Self { config, step: 0, bins_created, move_log: log_window.map(MoveLog::new) }
    }

    /// One chain step with move type `xi`; returns whether a bin was created.
    pub fn advance(&mut self, xi: u64) -> Result<bool> {
        let created = self.config.apply_move(xi)?;
        self.step += 1;
        self.bins_created = self.config.shift();
        if let Some(log) = &mut self.move_log {
            log.push(xi);
        }
        Ok(created)
    }
}

pub fn step_chain(state: &ChainState, xi: u64) -> Result<ChainState> {
    let mut next = state.clone();
    next.advance(xi)?;
    Ok(next)
}

/// Online detector for occurrences (overlapping ones included) of a fixed move
/// sequence, by Knuth-Morris-Pratt.
#[derive(Debug, Clone)]
pub struct WordMatcher {
    pattern: Vec<u64>,
    failure: Vec<usize>,
    matched: usize,
}

impl WordMatcher {
    pub fn new(word: &MoveWord) -> Self {
        let pattern: Vec<u64> = word.moves().collect();
        let mut failure = vec![0; pattern.len()];
        let mut k = 0;
        for i in 1..pattern.len() {
            while k > 0 && pattern[i] != pattern[k] {
                k = failure[k - 1];
            }
            if pattern[i] == pattern[k] {
                k += 1;
            }
            failure[i] = k;
        }
        Self { pattern, failure, matched: 0 }
    }

    /// Feeds one move; true when the pattern ends at this move.
    pub fn feed(&mut self, m: u64) -> bool {
        if self.pattern.is_empty() {
            return true;
        }
        if self.matched == self.pattern.len() {
            self.matched = self.failure[self.matched - 1];
        }
        while self.matched > 0 && self.pattern[self.matched] != m {
            self.matched = self.failure[self.matched - 1];
        }
        if self.pattern[self.matched] == m {
            self.matched += 1;
        }
        self.matched == self.pattern.len()
    }
}

/// A coupling word to watch for, with the projection it forces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Watch {
    pub word: MoveWord,
    /// `(balls, projection)` every firing must exhibit, if known.
    pub expected: Option<(u64, Configuration)>,
}

impl Watch {
    pub fn from_plan(plan: &CouplingPlan) -> Self {
        Self {
            word: plan.word.clone(),
            expected: Some((plan.coupled_balls(), plan.target.clone())),
        }
    }

    pub fn word(word: MoveWord) -> Self {
        Self { word, expected: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    /// Number of rightmost bins in the histogram vectors.
    pub depth: usize,
    pub watch: Option<Watch>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { depth: 2, watch: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub steps: u64,
    pub seed: u64,
    pub distribution: DistributionSpec,
    pub initial: LazyInfiniteConfiguration,
    pub depth: usize,
    pub burn_in: u64,
    pub bins_created: u64,
    /// `bins_created / steps`.
    pub front_speed: f64,
    /// Bins created per step after burn-in, when the run is longer than it.
    pub front_speed_after_burn_in: Option<f64>,
    /// Steps (move counts) at which the watched word has just completed.
    pub regeneration_times: Vec<u64>,
    /// Firings whose projection differed from the watch's expected target.
    pub regeneration_mismatches: u64,
    /// Window positions at which the watched word could occur.
    pub watch_positions: u64,
    /// Top-bin vectors, sampled at regeneration times when watching and at
    /// every step after burn-in otherwise.
    pub top_bin_histogram: Histogram,
    /// Period of the top-bin sequence after burn-in, for deterministic laws.
    pub detected_period: Option<u64>,
}

fn check_run(steps: u64, depth: usize) -> Result<()> {
    if steps == 0 {
        return Err(Error::InvalidDistribution("need at least one step".into()));
    }
    if depth == 0 {
        return Err(Error::InvalidDistribution("depth must be positive".into()));
    }
    Ok(())
}

pub fn run_chain(
    initial: &LazyInfiniteConfiguration,
    dist: &DistributionSpec,
    steps: u64,
    seed: u64,
    options: &RunOptions,
) -> Result<SimulationReport> {
    run_chain_observed(initial, dist, steps, seed, options, &mut |_| {})
}

/// [`run_chain`], calling `observer` after every step.
pub fn run_chain_observed(
    initial: &LazyInfiniteConfiguration,
    dist: &DistributionSpec,
    steps: u64,
    seed: u64,
    options: &RunOptions,
    observer: &mut dyn FnMut(&ChainState),
) -> Result<SimulationReport> {
    check_run(steps, options.depth)?;
    let depth = options.depth;
    let burn = burn_in(dist);
    let mut rng = rng_for(seed, 0);
    let log_window = options.watch.as_ref().map(|w| w.word.len() as usize);
    let mut state = ChainState::new(initial.clone(), log_window);
    let mut matcher = options.watch.as_ref().map(|w| WordMatcher::new(&w.word));
    let track_period = dist.is_deterministic();
    let mut period_seq: Vec<Vec<u64>> = Vec::new();
    let mut regeneration_times = Vec::new();
    let mut mismatches = 0;
    let mut histogram = Histogram::new();
    let mut bins_at_burn_in = None;
    let mut top = vec![0u64; depth];

    for _ in 0..steps {
        let xi = dist.sample(&mut rng);
        state.advance(xi)?;
        let t = state.step;
        let fill_top = |top: &mut [u64], state: &ChainState| {
            for (j, slot) in top.iter_mut().rev().enumerate() {
                *slot = state.config.bin(j);
            }
        };
        if let (Some(m), Some(watch)) = (matcher.as_mut(), options.watch.as_ref()) {
            if m.feed(xi) {
                regeneration_times.push(t);
                if let Some((balls, target)) = &watch.expected {
                    if state.config.project(*balls).ok().as_ref() != Some(target) {
                        mismatches += 1;
                    }
                }
                fill_top(&mut top, &state);
                stats::record(&mut histogram, &top);
            }
        } else if t > burn {
            fill_top(&mut top, &state);
            stats::record(&mut histogram, &top);
        }
        if t == burn {
            bins_at_burn_in = Some(state.bins_created);
        }
        if track_period && t > burn && t <= burn + PERIOD_WINDOW {
            period_seq.push(state.config.top_bins(depth));
        }
        observer(&state);
    }

    let watch_positions = match &options.watch {
        Some(w) => (steps + 1).saturating_sub(w.word.len()),
        None => 0,
    };
    Ok(SimulationReport {
        steps,
        seed,
        distribution: dist.clone(),
        initial: initial.clone(),
        depth,
        burn_in: burn,
        bins_created: state.bins_created - initial.shift(),
        front_speed: (state.bins_created - initial.shift()) as f64 / steps as f64,
        front_speed_after_burn_in: bins_at_burn_in
            .filter(|_| steps > burn)
            .map(|b| (state.bins_created - b) as f64 / (steps - burn) as f64),
        regeneration_times,
        regeneration_mismatches: mismatches,
        watch_positions,
        top_bin_histogram: histogram,
        detected_period: detect_period(&period_seq).map(|p| p as u64),
    })
}

/// Empirical TV distance between the two chains' top-bin laws at one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TvPoint {
    pub step: u64,
    pub tv: f64,
    pub noise_sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoChainOptions {
    pub depth: usize,
    /// Word whose first trailing occurrence in the shared noise is reported.
    pub watch: Option<MoveWord>,
    /// Extra independent replica pairs used for the TV series; 0 disables it.
    pub replicas: u64,
    /// Steps at which the TV series is evaluated; empty selects powers of two
    /// up to the horizon, plus the horizon.
    pub checkpoints: Vec<u64>,
}

impl Default for TwoChainOptions {
    fn default() -> Self {
        Self { depth: 2, watch: None, replicas: 0, checkpoints: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoChainReport {
    pub steps: u64,
    pub seed: u64,
    pub distribution: DistributionSpec,
    pub initial_a: LazyInfiniteConfiguration,
    pub initial_b: LazyInfiniteConfiguration,
    /// Projection size compared between the chains (the support maximum).
    pub coupled_balls: u64,
    /// First step from which the projections agree, if they ever do.
    pub agreement_time: Option<u64>,
    /// Steps after the agreement time at which the projections differed.
    pub disagreements_after_agreement: u64,
    pub first_watch_end: Option<u64>,
    pub watch_occurrences: u64,
    pub watch_positions: u64,
    pub tv_distance_series: Vec<TvPoint>,
}

impl TwoChainReport {
    pub fn agreement_persisted(&self) -> bool {
        self.agreement_time.is_some() && self.disagreements_after_agreement == 0
    }
}

fn default_checkpoints(steps: u64) -> Vec<u64> {
    let mut points: Vec<u64> = core::iter::successors(Some(1u64), |&s| s.checked_mul(2))
        .take_while(|&s| s < steps)
        .collect();
    points.push(steps);
    points
}

/// Top-bin vectors of both chains at each checkpoint, for one replica pair on
/// its own stream.
pub fn two_chain_replica(
    a: &LazyInfiniteConfiguration,
    b: &LazyInfiniteConfiguration,
    dist: &DistributionSpec,
    seed: u64,
    stream: u64,
    depth: usize,
    checkpoints: &[u64],
) -> Vec<(Vec<u64>, Vec<u64>)> {
    let mut rng = rng_for(seed, stream);
    let (mut x, mut y) = (a.clone(), b.clone());
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut t = 0u64;
    for &cp in checkpoints {
        while t < cp {
            let xi = dist.sample(&mut rng);
            x.apply_move(xi).expect("positive move");
            y.apply_move(xi).expect("positive move");
            t += 1;
        }
        out.push((x.top_bins(depth), y.top_bins(depth)));
    }
    out
}

/// Both chains driven by the same noise. Stream 0 of `seed` drives the main
/// pair; replicas use streams `1..=replicas`.
pub fn run_two_chain_coupling<M: ReplicaMap>(
    a: &LazyInfiniteConfiguration,
    b: &LazyInfiniteConfiguration,
    dist: &DistributionSpec,
    steps: u64,
    seed: u64,
    options: &TwoChainOptions,
    map: &M,
) -> Result<TwoChainReport> {
    check_run(steps, options.depth)?;
    let balls = dist.support_max();
    let mut rng = rng_for(seed, 0);
    let (mut x, mut y) = (a.clone(), b.clone());
    let mut matcher = options.watch.as_ref().map(WordMatcher::new);
    let mut agreement_time = x.projections_agree(&y, balls).then_some(0);
    let mut disagreements = 0;
    let mut first_watch_end = None;
    let mut occurrences = 0;
    for t in 1..=steps {
        let xi = dist.sample(&mut rng);
        x.apply_move(xi)?;
        y.apply_move(xi)?;
        if let Some(m) = matcher.as_mut() {
            if m.feed(xi) {
                occurrences += 1;
                first_watch_end.get_or_insert(t);
            }
        }
        let agree = x.projections_agree(&y, balls);
        match agreement_time {
            None if agree => agreement_time = Some(t),
            Some(_) if !agree => disagreements += 1,
            _ => {}
        }
    }

    let checkpoints = if options.checkpoints.is_empty() {
        default_checkpoints(steps)
    } else {
        let mut c: Vec<u64> = options.checkpoints.iter().copied().filter(|&s| s <= steps).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let tv_distance_series = if options.replicas == 0 {
        Vec::new()
    } else {
        let samples = map.map(options.replicas, |r| {
            two_chain_replica(a, b, dist, seed, r + 1, options.depth, &checkpoints)
        });
        checkpoints
            .iter()
            .enumerate()
            .map(|(i, &step)| {
                let mut ha = Histogram::new();
                let mut hb = Histogram::new();
                for s in &samples {
                    stats::record(&mut ha, &s[i].0);
                    stats::record(&mut hb, &s[i].1);
                }
                TvPoint { step, tv: tv_distance(&ha, &hb), noise_sigma: tv_noise_sigma(&ha, &hb) }
            })
            .collect()
    };

    Ok(TwoChainReport {
        steps,
        seed,
        distribution: dist.clone(),
        initial_a: a.clone(),
        initial_b: b.clone(),
        coupled_balls: balls,
        agreement_time,
        disagreements_after_agreement: disagreements,
        first_watch_end,
        watch_occurrences: occurrences,
        watch_positions: match &options.watch {
            Some(w) => (steps + 1).saturating_sub(w.len()),
            None => 0,
        },
        tv_distance_series,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseTv {
    pub a: usize,
    pub b: usize,
    pub tv: f64,
    pub noise_sigma: f64,
    /// `tv <= TV_NOISE_SIGMAS * noise_sigma`.
    pub within_noise: bool,
    /// The two histograms share at least one cell.
    pub overlap: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryEstimate {
    pub distribution: DistributionSpec,
    pub depth: usize,
    pub steps: u64,
    pub replicas: u64,
    pub seed: u64,
    pub initials: Vec<LazyInfiniteConfiguration>,
    /// One histogram per initial configuration, at the final step.
    pub histograms: Vec<Histogram>,
    pub pairs: Vec<PairwiseTv>,
}

impl StationaryEstimate {
    pub fn all_within_noise(&self) -> bool {
        self.pairs.iter().all(|p| p.within_noise)
    }
}

/// Top-bin vector after `steps` moves from `initial`, on its own stream.
pub fn stationary_sample(
    initial: &LazyInfiniteConfiguration,
    dist: &DistributionSpec,
    depth: usize,
    steps: u64,
    seed: u64,
    stream: u64,
) -> Vec<u64> {
    let mut rng = rng_for(seed, stream);
    let mut x = initial.clone();
    for _ in 0..steps {
        x.apply_move(dist.sample(&mut rng)).expect("positive move");
    }
    x.top_bins(depth)
}

/// Independent replicas from each initial configuration (replica `r` of
/// initial `i` uses stream `(i << 32) | r`), compared pairwise at the horizon.
pub fn estimate_stationary<M: ReplicaMap>(
    dist: &DistributionSpec,
    depth: usize,
    initials: &[LazyInfiniteConfiguration],
    replicas: u64,
    steps: u64,
    seed: u64,
    map: &M,
) -> Result<StationaryEstimate> {
    if dist.is_deterministic() {
        return Err(Error::InvalidDistribution(
            "stationary estimates need a non-constant move law".into(),
        ));
    }
    if depth == 0 || replicas == 0 || initials.is_empty() {
        return Err(Error::InvalidDistribution(
            "need positive depth, replicas and at least one initial configuration".into(),
        ));
    }
    let jobs = initials.len() as u64 * replicas;
    let samples = map.map(jobs, |job| {
        let (i, r) = (job / replicas, job % replicas);
        stationary_sample(&initials[i as usize], dist, depth, steps, seed, (i << 32) | r)
    });
    let histograms: Vec<Histogram> = samples
        .chunks(replicas as usize)
        .map(|chunk| {
            let mut h = Histogram::new();
            for s in chunk {
                stats::record(&mut h, s);
            }
            h
        })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..histograms.len() {
        for j in i + 1..histograms.len() {
            let (ha, hb) = (&histograms[i], &histograms[j]);
            let tv = tv_distance(ha, hb);
            let noise_sigma = tv_noise_sigma(ha, hb);
            pairs.push(PairwiseTv {
                a: i,
                b: j,
                tv,
                noise_sigma,
                within_noise: tv <= TV_NOISE_SIGMAS * noise_sigma,
                overlap: overlaps(ha, hb),
            });
        }
    }
    Ok(StationaryEstimate {
        distribution: dist.clone(),
        depth,
        steps,
        replicas,
        seed,
        initials: initials.to_vec(),
        histograms,
        pairs,
    })
}
