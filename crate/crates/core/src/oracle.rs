//! Brute-force verification of the coupling construction.
//!
//! Every statement about "all `l`-configurations" is checked by running over
//! the full universe of compositions of `l`. Exhaustive checks implement
//! [`ConfigCheck`] so a caller can split the mask range across threads; the
//! merge keeps the counterexample with the smallest mask, so reports do not
//! depend on how the work was split.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;
use core::time::Duration;

use crate::config::Configuration;
use crate::coupling::{make_y, CouplingParams, CouplingPlan};
use crate::enumerate::{check_universe, config_from_mask, universe_size};
use crate::error::Result;
use crate::lazy::LazyInfiniteConfiguration;
use crate::word::MoveWord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub config: Option<Configuration>,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Number of individual cases examined.
    pub cases: u64,
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    fn from_failures(name: &'static str, cases: u64, failure: Option<Counterexample>) -> Self {
        Self { name, passed: failure.is_none(), cases, counterexample: failure }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub k: u64,
    pub l: u64,
    pub n: Option<u64>,
    pub params: Option<CouplingParams>,
    pub universe_size: u64,
    pub checks: Vec<CheckResult>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// A property quantified over every configuration with `l()` balls.
pub trait ConfigCheck: Sync {
    fn name(&self) -> &'static str;
    fn l(&self) -> u64;
    /// `Err(details)` when `x` violates the property.
    fn check(&self, x: &Configuration) -> Result<(), String>;
}

/// Result of running a check over a slice of the universe.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RangeOutcome {
    pub cases: u64,
    pub failure: Option<(u32, Counterexample)>,
}

impl RangeOutcome {
    pub fn merge(self, other: Self) -> Self {
        let failure = match (self.failure, other.failure) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        Self { cases: self.cases + other.cases, failure }
    }

    pub fn into_result(self, name: &'static str) -> CheckResult {
        CheckResult::from_failures(name, self.cases, self.failure.map(|(_, c)| c))
    }
}

/// Runs `check` on the configurations with masks in `masks`, stopping at the
/// first failure.
pub fn run_range(check: &dyn ConfigCheck, masks: Range<u32>) -> RangeOutcome {
    let l = check.l();
    let end = masks.end.min(universe_size(l) as u32);
    let mut cases = 0;
    for mask in masks.start..end {
        let x = config_from_mask(l, mask);
        cases += 1;
        if let Err(details) = check.check(&x) {
            let cx = Counterexample { config: Some(x), details };
            return RangeOutcome { cases, failure: Some((mask, cx)) };
        }
    }
    RangeOutcome { cases, failure: None }
}

/// Strategy for running exhaustive checks.
pub trait Runner {
    fn run(&self, check: &dyn ConfigCheck) -> CheckResult;
}

/// Runs the whole universe on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Runner for Sequential {
    fn run(&self, check: &dyn ConfigCheck) -> CheckResult {
        let all = 0..universe_size(check.l()) as u32;
        run_range(check, all).into_result(check.name())
    }
}

/// `X_0 = [k, .., k, r]` computed from scratch by searching for `l = k d + r`,
/// kept apart from the constructors in [`crate::coupling`].
fn reference_x0(k: u64, l: u64) -> Configuration {
    let (d, r) = (1..=l)
        .flat_map(|d| (1..=k).map(move |r| (d, r)))
        .find(|&(d, r)| k * d + r == l)
        .expect("l > k has a decomposition");
    let mut bins = vec![k; d as usize];
    bins.push(r);
    Configuration::new(bins).expect("positive bins")
}

fn apply(word: &MoveWord, x: &Configuration) -> Result<Configuration, String> {
    word.apply(x).map_err(|e| format!("{e}"))
}

/// Psi1 sends everything into the `X` family.
pub struct KCycleCheck {
    params: CouplingParams,
    psi1: MoveWord,
    family: Vec<Configuration>,
}

impl KCycleCheck {
    pub fn new(params: CouplingParams) -> Self {
        Self { params, psi1: params.psi1(), family: params.x_family() }
    }
}

impl ConfigCheck for KCycleCheck {
    fn name(&self) -> &'static str {
        "kcycle"
    }

    fn l(&self) -> u64 {
        self.params.l
    }

    fn check(&self, x: &Configuration) -> Result<(), String> {
        let y = apply(&self.psi1, x)?;
        if !self.family.contains(&y) {
            return Err(format!("Psi1 gives {y}, outside the X family"));
        }
        // Family characterization: bins hold at most k balls and every inner bin exactly k.
        let k = self.params.k;
        let bins = y.bins();
        let inner_ok = bins.len() < 3 || bins[1..bins.len() - 1].iter().all(|&b| b == k);
        if !(inner_ok && bins.iter().all(|&b| b <= k)) {
            return Err(format!("Psi1 gives {y}, violating the bin-shape characterization"));
        }
        Ok(())
    }
}

/// `Psi(X_i) = X_{f(i)}` for every `i`.
pub fn verify_lemma_psiaction(params: &CouplingParams) -> CheckResult {
    let psi = params.psi();
    let mut failure = None;
    for i in 0..params.k {
        let xi = params.x(i).expect("index in range");
        let fi = params.f(i).expect("index in range");
        let got = psi.apply(&xi).expect("moves of type <= l");
        let want = params.x(fi).expect("f maps into range");
        if got != want {
            failure = Some(Counterexample {
                config: Some(xi),
                details: format!("Psi(X_{i}) = {got}, expected X_{fi} = {want}"),
            });
            break;
        }
    }
    CheckResult::from_failures("psiaction", params.k, failure)
}

/// `f(0) = 0`, `f(i) < i` for `i >= 1`, `f` nondecreasing, and `f^(k-1) = 0`.
pub fn verify_lemma_fproperties(params: &CouplingParams) -> CheckResult {
    let k = params.k;
    let f: Vec<u64> = (0..k).map(|i| params.f(i).expect("index in range")).collect();
    let fail = |details: String| Some(Counterexample { config: None, details });
    let failure = if f[0] != 0 {
        fail(format!("f(0) = {}", f[0]))
    } else if let Some(i) = (1..k as usize).find(|&i| f[i] >= i as u64) {
        fail(format!("f({i}) = {} is not below {i}", f[i]))
    } else if let Some(i) = (1..k as usize).find(|&i| f[i] < f[i - 1]) {
        fail(format!("f decreases at {i}: {} < {}", f[i], f[i - 1]))
    } else {
        (0..k as usize)
            .find_map(|i| {
                let mut v = i;
                for _ in 0..k - 1 {
                    v = f[v] as usize;
                }
                (v != 0).then(|| format!("f^(k-1)({i}) = {v}"))
            })
            .and_then(fail)
    };
    CheckResult::from_failures("fproperties", k, failure)
}

/// `phi_l^n([i_1..i_p]) = Y_{l - i_p}` with `n = sum_{j <= p-2} (p-1-j) i_j`.
pub struct KlActionPart1Check {
    l: u64,
}

impl KlActionPart1Check {
    pub fn new(l: u64) -> Self {
        Self { l }
    }
}

impl ConfigCheck for KlActionPart1Check {
    fn name(&self) -> &'static str {
        "klaction"
    }

    fn l(&self) -> u64 {
        self.l
    }

    fn check(&self, x: &Configuration) -> Result<(), String> {
        let bins = x.bins();
        let p = bins.len();
        let n: u64 = (0..p.saturating_sub(2)).map(|j| (p - 2 - j) as u64 * bins[j]).sum();
        let got = apply(&MoveWord::power(self.l, n), x)?;
        let j = self.l - x.rightmost();
        let want = make_y(self.l, j).map_err(|e| format!("{e}"))?;
        if got != want {
            return Err(format!("phi_l^{n} gives {got}, expected Y_{j} = {want}"));
        }
        Ok(())
    }
}

/// Second half of the `phi_k`/`phi_l` lemma: `phi_k^(l-k)(Y_j) = X_{(k-l+j)+}`.
pub fn verify_klaction_part2(params: &CouplingParams) -> CheckResult {
    let (k, l) = (params.k, params.l);
    let word = MoveWord::power(k, l - k);
    let mut failure = None;
    for j in 0..l {
        let y = make_y(l, j).expect("index in range");
        let got = word.apply(&y).expect("k < l");
        let idx = (k + j).saturating_sub(l);
        let want = params.x(idx).expect("index below k");
        if got != want {
            failure = Some(Counterexample {
                config: Some(y),
                details: format!("phi_k^(l-k)(Y_{j}) = {got}, expected X_{idx} = {want}"),
            });
            break;
        }
    }
    CheckResult::from_failures("klaction", l, failure)
}

/// Both parts of the `phi_k`/`phi_l` lemma.
pub fn verify_lemma_klaction(params: &CouplingParams, runner: &dyn Runner) -> CheckResult {
    let part1 = runner.run(&KlActionPart1Check::new(params.l));
    let part2 = verify_klaction_part2(params);
    CheckResult {
        name: "klaction",
        passed: part1.passed && part2.passed,
        cases: part1.cases + part2.cases,
        counterexample: part1.counterexample.or(part2.counterexample),
    }
}

pub fn verify_lemma_kcycle(params: &CouplingParams, runner: &dyn Runner) -> CheckResult {
    runner.run(&KCycleCheck::new(*params))
}

/// The weighted ball-distance sum of `pi_k(X)` is at most `k(k-1)/2`, with
/// equality exactly at the all-ones projection, and `phi_k` applied that many
/// times fills the original rightmost bin up to `k` balls.
pub struct WeightedDistanceCheck {
    k: u64,
    l: u64,
}

impl WeightedDistanceCheck {
    pub fn new(k: u64, l: u64) -> Self {
        Self { k, l }
    }
}

/// `sum_{j=1}^{p-1} (p-j) i_j` for the `p`-tuple `[i_1, .., i_p]`.
pub fn weighted_distance(projection: &Configuration) -> u64 {
    let bins = projection.bins();
    let p = bins.len();
    bins.iter().enumerate().map(|(j, &i)| (p - 1 - j) as u64 * i).sum()
}

impl ConfigCheck for WeightedDistanceCheck {
    fn name(&self) -> &'static str {
        "weighted_distance"
    }

    fn l(&self) -> u64 {
        self.l
    }

    fn check(&self, x: &Configuration) -> Result<(), String> {
        let k = self.k;
        let proj = x.project(k).map_err(|e| format!("{e}"))?;
        let sum = weighted_distance(&proj);
        let max = k * (k - 1) / 2;
        if sum > max {
            return Err(format!("weighted sum {sum} of {proj} exceeds {max}"));
        }
        let all_ones = proj.len() as u64 == k;
        if (sum == max) != all_ones {
            return Err(format!("weighted sum {sum} of {proj}: equality must hold iff all ones"));
        }
        let mut lazy = LazyInfiniteConfiguration::from_configuration(1, x).expect("valid");
        MoveWord::power(k, sum).apply_infinite_in_place(&mut lazy);
        let original = lazy.bin(lazy.shift() as usize);
        let want = x.rightmost().max(k);
        if original != want {
            return Err(format!(
                "after phi_k^{sum} the original rightmost bin holds {original}, expected {want}"
            ));
        }
        Ok(())
    }
}

/// `pi_n(phi_k(X)) = phi_k(pi_n(X))` for every `k <= n <= m`.
pub struct CommutationCheck {
    m: u64,
}

impl CommutationCheck {
    pub fn new(m: u64) -> Self {
        Self { m }
    }
}

/// Checks commutation of all moves and projections on a single configuration.
pub fn commutation_holds(x: &Configuration) -> Result<(), String> {
    let m = x.total();
    for n in 1..=m {
        let projected = x.project(n).expect("n <= m");
        for k in 1..=n {
            let lhs = x.apply_move(k).and_then(|y| y.project(n));
            let rhs = projected.apply_move(k);
            if lhs != rhs {
                return Err(format!("n={n}, k={k}: {lhs:?} != {rhs:?}"));
            }
        }
    }
    Ok(())
}

impl ConfigCheck for CommutationCheck {
    fn name(&self) -> &'static str {
        "commutation"
    }

    fn l(&self) -> u64 {
        self.m
    }

    fn check(&self, x: &Configuration) -> Result<(), String> {
        commutation_holds(x)
    }
}

/// How a plan's word is applied to the universe.
#[derive(Debug, Clone)]
enum Embedding {
    /// Finite `l`-configurations, compared on `balls` rightmost balls.
    Finite { balls: u64 },
    /// Each `l`-configuration on top of a constant base, compared on `balls`.
    Lazy { bases: Vec<u64>, balls: u64 },
}

/// All starting configurations end with the same projection.
pub struct TheoremCouplingCheck {
    k: u64,
    l: u64,
    word: MoveWord,
    embedding: Embedding,
    reference: Configuration,
    /// `Psi2 Psi1` and the expected checkpoint `X_0`, when `k >= 2`.
    checkpoint: Option<(MoveWord, Configuration)>,
}

impl TheoremCouplingCheck {
    pub fn new(plan: &CouplingPlan) -> Self {
        let (k, l, n) = (plan.k, plan.l, plan.n);
        let embedding = if n <= l {
            Embedding::Finite { balls: if k == 1 { n } else { l } }
        } else {
            let mut bases = vec![1, 2, k, l];
            bases.sort_unstable();
            bases.dedup();
            Embedding::Lazy { bases, balls: n }
        };
        let checkpoint = plan
            .params
            .map(|p| (p.psi2_psi1(), reference_x0(k, l)));
        let mut check = Self {
            k,
            l,
            word: plan.word.clone(),
            embedding,
            reference: Configuration::ones(1),
            checkpoint,
        };
        let first = config_from_mask(l, 0);
        check.reference = check.outcomes(&first).expect("mask 0 applies cleanly")[0].clone();
        check
    }

    /// The common projection every start must reach.
    pub fn reference(&self) -> &Configuration {
        &self.reference
    }

    fn outcomes(&self, x: &Configuration) -> Result<Vec<Configuration>, String> {
        match &self.embedding {
            Embedding::Finite { balls } => {
                let y = apply(&self.word, x)?;
                Ok(vec![y.project(*balls).map_err(|e| format!("{e}"))?])
            }
            Embedding::Lazy { bases, balls } => bases
                .iter()
                .map(|&b| {
                    let start = LazyInfiniteConfiguration::from_configuration(b, x)
                        .map_err(|e| format!("{e}"))?;
                    let end = self.word.apply_infinite(&start);
                    end.project(*balls).map_err(|e| format!("{e}"))
                })
                .collect(),
        }
    }
}

impl ConfigCheck for TheoremCouplingCheck {
    fn name(&self) -> &'static str {
        "theorem_coupling"
    }

    fn l(&self) -> u64 {
        self.l
    }

    fn check(&self, x: &Configuration) -> Result<(), String> {
        for (i, y) in self.outcomes(x)?.iter().enumerate() {
            if *y != self.reference {
                return Err(format!("outcome #{i} is {y}, other starts give {}", self.reference));
            }
        }
        if let Some((prefix, x0)) = &self.checkpoint {
            let y = apply(prefix, x)?;
            if y != *x0 {
                return Err(format!("Psi2 Psi1 gives {y}, expected X_0 = {x0} (k={})", self.k));
            }
        }
        Ok(())
    }
}

/// Every start reaches one configuration whose rightmost bin holds exactly
/// `k` balls after `Psi2 Psi1 phi_k^(k-r)`.
pub struct RightmostBinCheck {
    k: u64,
    l: u64,
    word: MoveWord,
    reference: Configuration,
}

impl RightmostBinCheck {
    pub fn new(params: &CouplingParams) -> Self {
        let word = params.full_rightmost_bin_word();
        let reference = word.apply(&config_from_mask(params.l, 0)).expect("moves <= l");
        Self { k: params.k, l: params.l, word, reference }
    }
}

impl ConfigCheck for RightmostBinCheck {
    fn name(&self) -> &'static str {
        "rightmost_bin"
    }

    fn l(&self) -> u64 {
        self.l
    }

    fn check(&self, x: &Configuration) -> Result<(), String> {
        let y = apply(&self.word, x)?;
        if y != self.reference {
            return Err(format!("ends at {y}, other starts give {}", self.reference));
        }
        if y.rightmost() != self.k {
            return Err(format!("ends at {y} with {} != k balls on the right", y.rightmost()));
        }
        Ok(())
    }
}

/// The coupling check for one `(k, l, N)`: common projection equal to the
/// plan target, `Psi2 Psi1` checkpoint, and the length bound.
pub fn verify_theorem_coupling(k: u64, l: u64, n: u64, runner: &dyn Runner) -> Result<Vec<CheckResult>> {
    check_universe(l)?;
    let plan = CouplingPlan::build(k, l, n)?;
    let check = TheoremCouplingCheck::new(&plan);
    let mut result = runner.run(&check);
    if result.passed && check.reference() != &plan.target {
        result.passed = false;
        result.counterexample = Some(Counterexample {
            config: Some(check.reference().clone()),
            details: format!("common outcome differs from the plan target {}", plan.target),
        });
    }
    let acc = plan.accounting();
    let length = CheckResult::from_failures(
        "length_bound",
        1,
        (!acc.within_bound()).then(|| Counterexample {
            config: None,
            details: format!("word length {} is not below N + 4l^2 = {}", acc.actual, acc.bound),
        }),
    );
    Ok(vec![result, length])
}

/// All lemma checks for `params`.
pub fn verify_lemmas(params: &CouplingParams, runner: &dyn Runner) -> Result<Vec<CheckResult>> {
    check_universe(params.l)?;
    Ok(vec![
        verify_lemma_kcycle(params, runner),
        verify_lemma_psiaction(params),
        verify_lemma_fproperties(params),
        verify_lemma_klaction(params, runner),
        runner.run(&WeightedDistanceCheck::new(params.k, params.l)),
        runner.run(&RightmostBinCheck::new(params)),
    ])
}

/// Lemma checks (when `k >= 2`) followed by the coupling check for `N`.
pub fn verify_all(k: u64, l: u64, n: u64, runner: &dyn Runner) -> Result<VerificationReport> {
    check_universe(l)?;
    let plan = CouplingPlan::build(k, l, n)?;
    let mut checks = match &plan.params {
        Some(p) => verify_lemmas(p, runner)?,
        None => Vec::new(),
    };
    checks.extend(verify_theorem_coupling(k, l, n, runner)?);
    Ok(VerificationReport {
        k,
        l,
        n: Some(n),
        params: plan.params,
        universe_size: universe_size(l),
        checks,
        elapsed: Duration::ZERO,
    })
}

/// Lemma checks only; requires `2 <= k < l`.
pub fn verify_lemma_report(k: u64, l: u64, runner: &dyn Runner) -> Result<VerificationReport> {
    check_universe(l)?;
    let params = CouplingParams::derive(k, l)?;
    Ok(VerificationReport {
        k,
        l,
        n: None,
        params: Some(params),
        universe_size: universe_size(l),
        checks: verify_lemmas(&params, runner)?,
        elapsed: Duration::ZERO,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn c(bins: &[u64]) -> Configuration {
        Configuration::new(bins.to_vec()).unwrap()
    }

    #[test]
    fn kcycle_lands_in_family() {
        let p = CouplingParams::derive(2, 5).unwrap();
        let r = verify_lemma_kcycle(&p, &Sequential);
        assert!(r.passed);
        assert_eq!(r.cases, 16);
        let p = CouplingParams::derive(2, 4).unwrap();
        assert!(verify_lemma_kcycle(&p, &Sequential).passed);
        // X_0 stays inside the family.
        assert!(KCycleCheck::new(p).check(&p.x(0).unwrap()).is_ok());
    }

    #[test]
    fn psiaction_examples() {
        let p = CouplingParams::derive(2, 5).unwrap();
        assert_eq!(p.psi().apply(&p.x(1).unwrap()).unwrap(), p.x(0).unwrap());
        assert_eq!(p.psi().apply(&p.x(0).unwrap()).unwrap(), p.x(0).unwrap());
        let p = CouplingParams::derive(4, 5).unwrap();
        assert_eq!(p.psi().apply(&p.x(3).unwrap()).unwrap(), p.x(2).unwrap());
        assert!(verify_lemma_psiaction(&p).passed);
    }

    #[test]
    fn fproperties_examples() {
        let p = CouplingParams::derive(4, 5).unwrap();
        assert!(verify_lemma_fproperties(&p).passed);
        assert!(verify_lemma_fproperties(&CouplingParams::derive(2, 3).unwrap()).passed);
    }

    #[test]
    fn klaction_instances() {
        // n = (p-1-1) * i_1 = 1 for [1,1,3].
        let w = MoveWord::power(5, 1);
        assert_eq!(w.apply(&c(&[1, 1, 3])).unwrap(), c(&[2, 3]));
        // Weighting by (p-j) instead would overshoot to Y_0.
        assert_eq!(MoveWord::power(5, 3).apply(&c(&[1, 1, 3])).unwrap(), c(&[5]));
        assert!(KlActionPart1Check::new(5).check(&c(&[1, 1, 3])).is_ok());
        assert!(KlActionPart1Check::new(5).check(&c(&[4, 1])).is_ok());
        assert_eq!(MoveWord::power(2, 3).apply(&c(&[5])).unwrap(), c(&[2, 2, 1]));
        let p = CouplingParams::derive(2, 5).unwrap();
        assert!(verify_lemma_klaction(&p, &Sequential).passed);
    }

    #[test]
    fn weighted_distance_values() {
        assert_eq!(weighted_distance(&c(&[1, 1, 1])), 3);
        assert_eq!(weighted_distance(&c(&[2, 1])), 2);
        assert_eq!(weighted_distance(&c(&[3])), 0);
        assert!(run_range(&WeightedDistanceCheck::new(3, 6), 0..32).failure.is_none());
    }

    #[test]
    fn theorem_examples() {
        let checks = verify_theorem_coupling(2, 5, 5, &Sequential).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        assert_eq!(checks[0].cases, 16);
        let check = TheoremCouplingCheck::new(&CouplingPlan::build(2, 5, 5).unwrap());
        assert_eq!(check.reference(), &c(&[2, 2, 1]));

        let check = TheoremCouplingCheck::new(&CouplingPlan::build(1, 2, 3).unwrap());
        assert_eq!(check.reference(), &c(&[1, 1, 1]));
        assert!(Sequential.run(&check).passed);

        assert!(verify_theorem_coupling(2, 4, 6, &Sequential).unwrap().iter().all(|c| c.passed));
    }

    #[test]
    fn broken_word_yields_counterexample() {
        let plan = CouplingPlan::build(2, 5, 5).unwrap();
        let mut check = TheoremCouplingCheck::new(&plan);
        check.word = MoveWord::power(2, 1);
        check.checkpoint = None;
        check.reference = check.outcomes(&config_from_mask(5, 0)).unwrap()[0].clone();
        let r = Sequential.run(&check);
        assert!(!r.passed);
        assert!(r.counterexample.unwrap().config.is_some());
    }

    #[test]
    fn report_aggregates() {
        let report = verify_all(2, 5, 5, &Sequential).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.universe_size, 16);
        assert!(report.check("kcycle").is_some());
        assert!(matches!(
            verify_all(2, 30, 30, &Sequential),
            Err(Error::UniverseTooLarge { .. })
        ));
    }

    #[test]
    fn reference_x0_matches_family() {
        for l in 3..=12 {
            for k in 2..l {
                let p = CouplingParams::derive(k, l).unwrap();
                assert_eq!(reference_x0(k, l), p.x(0).unwrap());
            }
        }
    }

    #[test]
    fn merge_prefers_smallest_mask() {
        let cx = |s: &str| Counterexample { config: None, details: s.into() };
        let a = RangeOutcome { cases: 3, failure: Some((7, cx("a"))) };
        let b = RangeOutcome { cases: 2, failure: Some((2, cx("b"))) };
        let m = a.merge(b);
        assert_eq!(m.cases, 5);
        assert_eq!(m.failure.unwrap().0, 2);
    }
}
