//! JSON records for plans, verification reports, synchronizing words and
//! simulation results. Configurations and words appear in their text formats.

use infbin_core::simulate::{Histogram, PairwiseTv, StationaryEstimate, TvPoint};
use infbin_core::{
    CheckResult, CouplingPlan, DistributionSpec, SimulationReport, SyncResult, TwoChainReport,
    VerificationReport,
};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PlanRecord {
    pub k: u64,
    pub l: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub d: Option<u64>,
    pub r: Option<u64>,
    #[serde(rename = "M")]
    pub m: Option<u64>,
    pub word: String,
    pub length: u64,
    pub bound: u64,
    pub target: String,
    pub coupled_balls: u64,
    pub psi1_length: u64,
    pub psi_length: u64,
    pub tail_length: u64,
    /// Closed-form length as printed, plus the tail.
    pub printed_length_formula: Option<u64>,
    pub derivation_bound: u64,
    pub target_rightmost: u64,
    pub target_rightmost_at_least_k: bool,
}

impl From<&CouplingPlan> for PlanRecord {
    fn from(plan: &CouplingPlan) -> Self {
        let acc = plan.accounting();
        Self {
            k: plan.k,
            l: plan.l,
            n: plan.n,
            d: plan.params.map(|p| p.d),
            r: plan.params.map(|p| p.r),
            m: plan.params.map(|p| p.m),
            word: plan.word.to_string(),
            length: acc.actual,
            bound: acc.bound,
            target: plan.target.to_string(),
            coupled_balls: plan.coupled_balls(),
            psi1_length: plan.psi1_len,
            psi_length: plan.psi_len,
            tail_length: plan.tail_len,
            printed_length_formula: acc.printed_formula,
            derivation_bound: acc.derivation_bound,
            target_rightmost: plan.target.rightmost(),
            target_rightmost_at_least_k: plan.target.rightmost() >= plan.k,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckRecord {
    pub name: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<String>,
    pub details: Option<String>,
}

impl From<&CheckResult> for CheckRecord {
    fn from(c: &CheckResult) -> Self {
        let cx = c.counterexample.as_ref();
        Self {
            name: c.name,
            passed: c.passed,
            cases: c.cases,
            counterexample: cx.and_then(|x| x.config.as_ref()).map(|x| x.to_string()),
            details: cx.map(|x| x.details.clone()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationRecord {
    pub k: u64,
    pub l: u64,
    #[serde(rename = "N")]
    pub n: Option<u64>,
    pub d: Option<u64>,
    pub r: Option<u64>,
    #[serde(rename = "M")]
    pub m: Option<u64>,
    pub universe_size: u64,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    pub elapsed_ms: f64,
}

impl From<&VerificationReport> for VerificationRecord {
    fn from(r: &VerificationReport) -> Self {
        Self {
            k: r.k,
            l: r.l,
            n: r.n,
            d: r.params.map(|p| p.d),
            r: r.params.map(|p| p.r),
            m: r.params.map(|p| p.m),
            universe_size: r.universe_size,
            passed: r.passed(),
            checks: r.checks.iter().map(CheckRecord::from).collect(),
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SyncRecord {
    pub l: u64,
    pub alphabet: Vec<u64>,
    pub method: &'static str,
    pub word: String,
    pub length: u64,
    pub terminal: String,
    pub optimal: bool,
    /// Occurrence probability over length, when a move law was given.
    pub probability_length_ratio: Option<f64>,
}

impl SyncRecord {
    pub fn new(l: u64, alphabet: &[u64], result: &SyncResult, dist: Option<&DistributionSpec>) -> Self {
        Self {
            l,
            alphabet: alphabet.to_vec(),
            method: result.method.as_str(),
            word: result.word.to_string(),
            length: result.word.len(),
            terminal: result.terminal.to_string(),
            optimal: result.is_optimal,
            probability_length_ratio: dist.and_then(|d| result.probability_length_ratio(d)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HistogramEntry {
    pub top: Vec<u64>,
    pub count: u64,
}

pub fn histogram_entries(h: &Histogram) -> Vec<HistogramEntry> {
    h.iter().map(|(k, &count)| HistogramEntry { top: k.clone(), count }).collect()
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SimulationRecord {
    pub steps: u64,
    pub seed: u64,
    pub distribution: String,
    pub initial: String,
    pub depth: usize,
    pub burn_in: u64,
    pub bins_created: u64,
    pub front_speed_estimate: f64,
    pub front_speed_after_burn_in: Option<f64>,
    pub watch_word: Option<String>,
    pub regeneration_times: Vec<u64>,
    pub regeneration_mismatches: u64,
    pub watch_positions: u64,
    pub top_bin_histogram: Vec<HistogramEntry>,
    pub detected_period: Option<u64>,
}

impl SimulationRecord {
    pub fn new(r: &SimulationReport, watch_word: Option<String>) -> Self {
        Self {
            steps: r.steps,
            seed: r.seed,
            distribution: r.distribution.to_string(),
            initial: r.initial.to_string(),
            depth: r.depth,
            burn_in: r.burn_in,
            bins_created: r.bins_created,
            front_speed_estimate: r.front_speed,
            front_speed_after_burn_in: r.front_speed_after_burn_in,
            watch_word,
            regeneration_times: r.regeneration_times.clone(),
            regeneration_mismatches: r.regeneration_mismatches,
            watch_positions: r.watch_positions,
            top_bin_histogram: histogram_entries(&r.top_bin_histogram),
            detected_period: r.detected_period,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TvRecord {
    pub step: u64,
    pub tv: f64,
    pub noise_sigma: f64,
}

impl From<&TvPoint> for TvRecord {
    fn from(p: &TvPoint) -> Self {
        Self { step: p.step, tv: p.tv, noise_sigma: p.noise_sigma }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoChainRecord {
    pub steps: u64,
    pub seed: u64,
    pub distribution: String,
    pub initial_a: String,
    pub initial_b: String,
    pub coupled_balls: u64,
    pub agreement_time: Option<u64>,
    pub agreement_persisted: bool,
    pub disagreements_after_agreement: u64,
    pub watch_word: Option<String>,
    pub first_watch_end: Option<u64>,
    pub watch_occurrences: u64,
    pub watch_positions: u64,
    pub tv_distance_series: Vec<TvRecord>,
}

impl TwoChainRecord {
    pub fn new(r: &TwoChainReport, watch_word: Option<String>) -> Self {
        Self {
            steps: r.steps,
            seed: r.seed,
            distribution: r.distribution.to_string(),
            initial_a: r.initial_a.to_string(),
            initial_b: r.initial_b.to_string(),
            coupled_balls: r.coupled_balls,
            agreement_time: r.agreement_time,
            agreement_persisted: r.agreement_persisted(),
            disagreements_after_agreement: r.disagreements_after_agreement,
            watch_word,
            first_watch_end: r.first_watch_end,
            watch_occurrences: r.watch_occurrences,
            watch_positions: r.watch_positions,
            tv_distance_series: r.tv_distance_series.iter().map(TvRecord::from).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairRecord {
    pub a: usize,
    pub b: usize,
    pub tv: f64,
    pub noise_sigma: f64,
    pub within_noise: bool,
    pub overlap: bool,
}

impl From<&PairwiseTv> for PairRecord {
    fn from(p: &PairwiseTv) -> Self {
        Self {
            a: p.a,
            b: p.b,
            tv: p.tv,
            noise_sigma: p.noise_sigma,
            within_noise: p.within_noise,
            overlap: p.overlap,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StationaryRecord {
    pub distribution: String,
    pub depth: usize,
    pub steps: u64,
    pub replicas: u64,
    pub seed: u64,
    pub initials: Vec<String>,
    pub histograms: Vec<Vec<HistogramEntry>>,
    pub pairs: Vec<PairRecord>,
    pub all_within_noise: bool,
}

impl From<&StationaryEstimate> for StationaryRecord {
    fn from(e: &StationaryEstimate) -> Self {
        Self {
            distribution: e.distribution.to_string(),
            depth: e.depth,
            steps: e.steps,
            replicas: e.replicas,
            seed: e.seed,
            initials: e.initials.iter().map(|x| x.to_string()).collect(),
            histograms: e.histograms.iter().map(histogram_entries).collect(),
            pairs: e.pairs.iter().map(PairRecord::from).collect(),
            all_within_noise: e.all_within_noise(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_json_fields() {
        let plan = CouplingPlan::build(2, 5, 5).unwrap();
        let v = serde_json::to_value(PlanRecord::from(&plan)).unwrap();
        assert_eq!(v["N"], 5);
        assert_eq!(v["M"], 5);
        assert_eq!(v["d"], 2);
        assert_eq!(v["r"], 1);
        assert_eq!(v["word"], "2^6 5^4 2^3");
        assert_eq!(v["length"], 13);
        assert_eq!(v["bound"], 105);
        assert_eq!(v["target"], "[2,2,1]");
        assert_eq!(v["targetRightmostAtLeastK"], false);
        let v = serde_json::to_value(PlanRecord::from(&CouplingPlan::build(1, 2, 4).unwrap())).unwrap();
        assert_eq!(v["word"], "1^4");
        assert!(v["d"].is_null());
    }
}
