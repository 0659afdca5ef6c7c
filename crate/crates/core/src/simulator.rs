//! Discrete-event Monte Carlo simulation of the physical repair system.
//!
//! The simulator tracks the number of failed units, who occupies the single
//! repair facility, and three clocks: failure of the operating unit, completion
//! of the current repair, and expiry of the regular repairer's patience. It is
//! an independent check on the analytic engine and also handles the one-spare
//! system, which the analytic engine does not.
//!
//! Cycles are delimited the same way as in the cycle-length recursion: a cycle
//! ends on the first entry into state 2 (regular repairer starts a fresh repair
//! with one failed unit) that directly follows an expert departure, either via
//! the idle state or by hand-over of the last waiting unit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{validate, ExpertPolicy, ModelSpec, PatiencePolicy};
use crate::smp::CostParams;

/// Minimum number of completed cycles per replication for cycle statistics.
pub const MIN_CYCLES: u64 = 30;

/// Fraction of the horizon discarded as warmup when none is given.
pub const DEFAULT_WARMUP_FRACTION: f64 = 0.05;

/// How remaining deterministic patience is set when the regular repairer is
/// working with a unit waiting (state 4 for two spares).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelMode {
    /// Every entry into state 4 draws the remaining patience from the analytic
    /// model's state-4 kernel: with a fresh `X ~ exp(λ)`, patience runs out
    /// after `T − X` if `X < T` and never otherwise. This reproduces the
    /// analytic P₄₅ and μ₄ exactly.
    PaperFaithful,
    /// The deadline is `T` after the start of the current repair; a repair
    /// started on hand-over from the expert gets a fresh deadline.
    Physical,
}

impl KernelMode {
    pub fn name(self) -> &'static str {
        match self {
            KernelMode::PaperFaithful => "paper_faithful",
            KernelMode::Physical => "physical",
        }
    }
}

impl std::str::FromStr for KernelMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "paper_faithful" | "paper" => Ok(KernelMode::PaperFaithful),
            "physical" => Ok(KernelMode::Physical),
            other => Err(format!(
                "unknown kernel mode `{other}` (expected paper_faithful or physical)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Number of cold-standby spares.
    pub spares: u32,
    /// Simulated time per replication, warmup included.
    pub horizon: Option<f64>,
    /// Alternative stopping rule: completed cycles per replication after warmup.
    pub n_cycles: Option<u64>,
    /// Simulated time discarded before accumulating. Defaults to 5% of the
    /// horizon, or zero with a cycle-count stopping rule.
    pub warmup: Option<f64>,
    pub seed: u64,
    pub replications: usize,
    pub kernel_mode: KernelMode,
}

impl SimConfig {
    pub fn with_horizon(horizon: f64, replications: usize, seed: u64) -> Self {
        Self {
            spares: 2,
            horizon: Some(horizon),
            n_cycles: None,
            warmup: None,
            seed,
            replications,
            kernel_mode: KernelMode::PaperFaithful,
        }
    }

    pub fn with_cycles(n_cycles: u64, replications: usize, seed: u64) -> Self {
        Self {
            horizon: None,
            n_cycles: Some(n_cycles),
            ..Self::with_horizon(0.0, replications, seed)
        }
    }

    pub fn spares(mut self, spares: u32) -> Self {
        self.spares = spares;
        self
    }

    pub fn kernel_mode(mut self, mode: KernelMode) -> Self {
        self.kernel_mode = mode;
        self
    }

    pub fn warmup(mut self, warmup: f64) -> Self {
        self.warmup = Some(warmup);
        self
    }

    pub fn stopping_rule(&self) -> Result<StoppingRule> {
        match (self.horizon, self.n_cycles) {
            (Some(h), None) => {
                if !(h.is_finite() && h > 0.0) {
                    return Err(Error::Config(format!("horizon must be positive, got {h}")));
                }
                Ok(StoppingRule::Horizon(h))
            }
            (None, Some(n)) => {
                if n == 0 {
                    return Err(Error::Config("n_cycles must be at least 1".into()));
                }
                Ok(StoppingRule::Cycles(n))
            }
            (None, None) => Err(Error::Config(
                "no stopping rule: set exactly one of horizon or n_cycles".into(),
            )),
            (Some(_), Some(_)) => Err(Error::Config("both horizon and n_cycles set: set exactly one".into())),
        }
    }

    fn warmup_time(&self, rule: StoppingRule) -> Result<f64> {
        let w = match (self.warmup, rule) {
            (Some(w), _) => w,
            (None, StoppingRule::Horizon(h)) => DEFAULT_WARMUP_FRACTION * h,
            (None, StoppingRule::Cycles(_)) => 0.0,
        };
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::Config(format!("warmup must be non-negative, got {w}")));
        }
        if let StoppingRule::Horizon(h) = rule {
            if w >= h {
                return Err(Error::Config(format!("warmup {w} leaves nothing of horizon {h}")));
            }
        }
        Ok(w)
    }

    pub fn validate(&self) -> Result<StoppingRule> {
        if self.spares == 0 {
            return Err(Error::Config("spares must be at least 1".into()));
        }
        if self.kernel_mode == KernelMode::PaperFaithful && self.spares > 2 {
            return Err(Error::Config(
                "paper_faithful kernel is defined for at most two spares".into(),
            ));
        }
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        let rule = self.stopping_rule()?;
        self.warmup_time(rule)?;
        Ok(rule)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StoppingRule {
    Horizon(f64),
    Cycles(u64),
}

/// Point estimate with its standard error across replications.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    /// Zero when there is a single replication.
    pub se: f64,
}

impl Estimate {
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let se = if samples.len() > 1 {
            let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        } else {
            0.0
        };
        Self { mean, se }
    }

    /// `(mean − reference) / se`.
    pub fn z_score(&self, reference: f64) -> f64 {
        (self.mean - reference) / self.se
    }

    /// `|mean − reference| ≤ k·se`.
    pub fn within(&self, reference: f64, k: f64) -> bool {
        (self.mean - reference).abs() <= k * self.se
    }
}

/// Raw accumulators of one replication, after warmup.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ReplicationStats {
    pub total_time: f64,
    pub up_time: f64,
    pub down_time: f64,
    pub regular_busy: f64,
    pub expert_busy: f64,
    pub idle_time: f64,
    pub visits: u64,
    pub cycles: u64,
    pub cycle_time: f64,
    /// Visits that began inside a completed cycle.
    pub cycle_visits: u64,
    pub events: u64,
}

impl ReplicationStats {
    pub fn a_inf(&self) -> f64 {
        self.up_time / self.total_time
    }

    pub fn theta_r(&self) -> f64 {
        self.regular_busy / self.total_time
    }

    pub fn theta_e(&self) -> f64 {
        self.expert_busy / self.total_time
    }

    pub fn tau(&self) -> f64 {
        self.cycle_time / self.cycles as f64
    }

    pub fn visit_rate(&self) -> f64 {
        self.visits as f64 / self.total_time
    }

    /// Visit rate times cycle length, both measured over the completed
    /// cycles only. Counting over the same window keeps the partial cycles
    /// at either end from biasing a ratio that is often exactly one.
    pub fn visits_per_cycle(&self) -> f64 {
        self.cycle_visits as f64 / self.cycles as f64
    }

    /// Realized profit per unit time, with one trip charge per actual visit.
    pub fn omega(&self, costs: &CostParams<f64>) -> f64 {
        (costs.net_revenue_rate * self.up_time
            - costs.c_r * self.regular_busy
            - costs.c_e * self.expert_busy
            - costs.c_l * self.visits as f64)
            / self.total_time
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimEstimate {
    pub a_inf: Estimate,
    pub theta_r: Estimate,
    pub theta_e: Estimate,
    pub tau: Estimate,
    pub visit_rate: Estimate,
    pub omega: Estimate,
    /// Per-replication `visit_rate × tau` over the completed cycles, i.e.
    /// expert visits per cycle; one when every cycle holds exactly one visit.
    pub wald_ratio: Estimate,
    pub n_cycles_observed: u64,
    pub total_time: f64,
    pub replications: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleStats {
    pub tau: Estimate,
    pub visit_rate: Estimate,
    pub wald_ratio: Estimate,
}

/// Mean cycle length, expert-visit rate and their product across replications.
pub fn cycle_statistics(reps: &[ReplicationStats]) -> Result<CycleStats> {
    if reps.is_empty() {
        return Err(Error::Config("no replications".into()));
    }
    if let Some((replication, r)) = reps.iter().enumerate().find(|(_, r)| r.cycles < MIN_CYCLES) {
        return Err(Error::InsufficientCycles {
            replication,
            observed: r.cycles,
            required: MIN_CYCLES,
        });
    }
    let taus: Vec<f64> = reps.iter().map(ReplicationStats::tau).collect();
    let rates: Vec<f64> = reps.iter().map(ReplicationStats::visit_rate).collect();
    let ratios: Vec<f64> = reps.iter().map(ReplicationStats::visits_per_cycle).collect();
    Ok(CycleStats {
        tau: Estimate::from_samples(&taus),
        visit_rate: Estimate::from_samples(&rates),
        wald_ratio: Estimate::from_samples(&ratios),
    })
}

/// Runs all replications (in parallel) and aggregates them.
pub fn simulate(spec: &ModelSpec<f64>, costs: &CostParams<f64>, config: &SimConfig) -> Result<SimEstimate> {
    let spec = validate(*spec)?;
    costs.validate()?;
    config.validate()?;

    let reps = (0..config.replications)
        .into_par_iter()
        .map(|rep| simulate_replication(&spec, config, rep))
        .collect::<Result<Vec<_>>>()?;

    let cycles = cycle_statistics(&reps)?;
    let collect =
        |f: &dyn Fn(&ReplicationStats) -> f64| Estimate::from_samples(&reps.iter().map(f).collect::<Vec<_>>());
    Ok(SimEstimate {
        a_inf: collect(&ReplicationStats::a_inf),
        theta_r: collect(&ReplicationStats::theta_r),
        theta_e: collect(&ReplicationStats::theta_e),
        tau: cycles.tau,
        visit_rate: cycles.visit_rate,
        omega: collect(&|r| r.omega(costs)),
        wald_ratio: cycles.wald_ratio,
        n_cycles_observed: reps.iter().map(|r| r.cycles).sum(),
        total_time: reps.iter().map(|r| r.total_time).sum(),
        replications: reps.len(),
    })
}

/// One replication on its own random stream, derived from `(seed, rep)`.
pub fn simulate_replication(spec: &ModelSpec<f64>, config: &SimConfig, rep: usize) -> Result<ReplicationStats> {
    let rule = config.validate()?;
    let warmup = config.warmup_time(rule)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(rep as u64);

    let mut sim = Trajectory::new(spec, config, warmup, rng)?;
    sim.run(rule);
    Ok(sim.stats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Server {
    Idle,
    Regular,
    Expert,
}

enum Patience {
    Random(Exp<f64>),
    Deterministic(f64),
}

struct Trajectory {
    life: Exp<f64>,
    regular: Exp<f64>,
    expert: Exp<f64>,
    patience: Patience,
    expert_policy: ExpertPolicy,
    kernel_mode: KernelMode,
    spares: u32,
    warmup: f64,
    rng: ChaCha8Rng,

    now: f64,
    failed: u32,
    server: Server,
    failure_at: f64,
    repair_at: f64,
    deadline_at: f64,
    /// Set when the expert leaves with at most one failed unit; the next entry
    /// into state 2 then closes a cycle.
    released: bool,
    cycle_start: Option<f64>,
    open_visits: u64,
    stats: ReplicationStats,
}

fn exp_dist(rate: f64) -> Result<Exp<f64>> {
    Exp::new(rate).map_err(|e| Error::Config(format!("bad rate {rate}: {e}")))
}

impl Trajectory {
    fn new(spec: &ModelSpec<f64>, config: &SimConfig, warmup: f64, mut rng: ChaCha8Rng) -> Result<Self> {
        let life = exp_dist(spec.rates.lambda)?;
        let patience = match spec.patience {
            PatiencePolicy::Random { alpha } => Patience::Random(exp_dist(alpha)?),
            PatiencePolicy::Deterministic { duration } => Patience::Deterministic(duration),
        };
        let failure_at = life.sample(&mut rng);
        Ok(Self {
            life,
            regular: exp_dist(spec.rates.beta)?,
            expert: exp_dist(spec.rates.gamma)?,
            patience,
            expert_policy: spec.expert,
            kernel_mode: config.kernel_mode,
            spares: config.spares,
            warmup,
            rng,
            now: 0.0,
            failed: 0,
            server: Server::Idle,
            failure_at,
            repair_at: f64::INFINITY,
            deadline_at: f64::INFINITY,
            released: true,
            cycle_start: None,
            open_visits: 0,
            stats: ReplicationStats::default(),
        })
    }

    fn is_down(&self) -> bool {
        self.failed > self.spares
    }

    fn run(&mut self, rule: StoppingRule) {
        let end = match rule {
            StoppingRule::Horizon(h) => h,
            StoppingRule::Cycles(_) => f64::INFINITY,
        };
        loop {
            let next = self.failure_at.min(self.deadline_at).min(self.repair_at);
            if next >= end {
                self.advance(end);
                break;
            }
            self.advance(next);
            self.stats.events += 1;
            // Ties: failure, then patience expiry, then repair completion.
            if self.failure_at <= self.deadline_at && self.failure_at <= self.repair_at {
                self.on_failure();
            } else if self.deadline_at <= self.repair_at {
                self.call_expert();
            } else {
                self.on_repair_done();
            }
            if let StoppingRule::Cycles(n) = rule {
                if self.stats.cycles >= n {
                    break;
                }
            }
        }
    }

    /// Moves the clock to `t`, accumulating the post-warmup part of the
    /// elapsed segment.
    fn advance(&mut self, t: f64) {
        let from = self.now.max(self.warmup);
        if t > from {
            let dt = t - from;
            self.stats.total_time += dt;
            if self.is_down() {
                self.stats.down_time += dt;
            } else {
                self.stats.up_time += dt;
            }
            match self.server {
                Server::Idle => self.stats.idle_time += dt,
                Server::Regular => self.stats.regular_busy += dt,
                Server::Expert => self.stats.expert_busy += dt,
            }
        }
        self.now = t;
    }

    fn on_failure(&mut self) {
        self.failed += 1;
        self.failure_at = if self.is_down() {
            f64::INFINITY
        } else {
            self.now + self.life.sample(&mut self.rng)
        };
        match self.server {
            Server::Idle => self.start_regular(),
            Server::Regular if self.is_down() => self.call_expert(),
            Server::Regular => {
                if self.kernel_mode == KernelMode::PaperFaithful {
                    self.deadline_at = self.kernel_deadline();
                }
            }
            Server::Expert => {}
        }
    }

    /// The expert takes over the unit under repair; partial work is lost.
    fn call_expert(&mut self) {
        self.server = Server::Expert;
        self.deadline_at = f64::INFINITY;
        self.repair_at = self.now + self.expert.sample(&mut self.rng);
        if self.now >= self.warmup {
            self.stats.visits += 1;
        }
        if self.cycle_start.is_some() {
            self.open_visits += 1;
        }
    }

    fn on_repair_done(&mut self) {
        let was_down = self.is_down();
        self.failed -= 1;
        if was_down {
            self.failure_at = self.now + self.life.sample(&mut self.rng);
        }
        match self.server {
            Server::Regular => {
                if self.failed == 0 {
                    self.go_idle();
                } else {
                    self.start_regular();
                }
            }
            Server::Expert => match self.expert_policy {
                ExpertPolicy::Mre if self.failed > 0 => {
                    self.repair_at = self.now + self.expert.sample(&mut self.rng);
                }
                ExpertPolicy::Mre => {
                    self.released = true;
                    self.go_idle();
                }
                ExpertPolicy::Sre => {
                    if self.failed <= 1 {
                        self.released = true;
                    }
                    if self.failed == 0 {
                        self.go_idle();
                    } else {
                        self.start_regular();
                    }
                }
            },
            Server::Idle => unreachable!("repair completion with idle facility"),
        }
    }

    fn go_idle(&mut self) {
        self.server = Server::Idle;
        self.repair_at = f64::INFINITY;
        self.deadline_at = f64::INFINITY;
    }

    /// Regular repairer starts a fresh repair on a waiting unit.
    fn start_regular(&mut self) {
        self.server = Server::Regular;
        self.repair_at = self.now + self.regular.sample(&mut self.rng);
        self.deadline_at = if self.failed >= 2 && self.kernel_mode == KernelMode::PaperFaithful {
            self.kernel_deadline()
        } else {
            match self.patience {
                Patience::Random(d) => self.now + d.sample(&mut self.rng),
                Patience::Deterministic(t) => self.now + t,
            }
        };
        if self.failed == 1 && self.released {
            self.released = false;
            self.close_cycle();
        }
    }

    /// Remaining-patience deadline from the analytic state-4 kernel.
    fn kernel_deadline(&mut self) -> f64 {
        match self.patience {
            Patience::Random(d) => self.now + d.sample(&mut self.rng),
            Patience::Deterministic(t) => {
                let x = self.life.sample(&mut self.rng);
                if x < t {
                    self.now + (t - x)
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    fn close_cycle(&mut self) {
        if self.now < self.warmup {
            self.cycle_start = None;
            return;
        }
        if let Some(start) = self.cycle_start {
            self.stats.cycles += 1;
            self.stats.cycle_time += self.now - start;
            self.stats.cycle_visits += self.open_visits;
        }
        self.open_visits = 0;
        self.cycle_start = Some(self.now);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{PatiencePolicy, RateParams};
    use crate::smp::evaluate_model;

    fn spec(expert: ExpertPolicy, patience: PatiencePolicy<f64>) -> ModelSpec<f64> {
        ModelSpec::new(RateParams::new(0.5, 0.35, 0.75), patience, expert)
    }

    fn costs() -> CostParams<f64> {
        CostParams::new(20.0, 1.0, 5.0, 3.0)
    }

    const RPT: PatiencePolicy<f64> = PatiencePolicy::Random { alpha: 0.3 };

    #[test]
    fn stopping_rule_errors() {
        let mut c = SimConfig::with_horizon(100.0, 2, 1);
        c.n_cycles = Some(10);
        assert!(matches!(
            simulate(&spec(ExpertPolicy::Mre, RPT), &costs(), &c),
            Err(Error::Config(_))
        ));
        c.horizon = None;
        c.n_cycles = None;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        assert!(SimConfig::with_horizon(100.0, 0, 1).validate().is_err());
        assert!(SimConfig::with_horizon(100.0, 1, 1).spares(0).validate().is_err());
        assert!(SimConfig::with_horizon(100.0, 1, 1).spares(3).validate().is_err());
        assert!(SimConfig::with_horizon(100.0, 1, 1)
            .spares(3)
            .kernel_mode(KernelMode::Physical)
            .validate()
            .is_ok());
        assert!(SimConfig::with_horizon(100.0, 1, 1).warmup(100.0).validate().is_err());
    }

    #[test]
    fn same_seed_same_output() {
        let s = spec(ExpertPolicy::Sre, PatiencePolicy::Deterministic { duration: 1.5 });
        let c = SimConfig::with_horizon(20_000.0, 4, 99);
        let a = simulate(&s, &costs(), &c).unwrap();
        let b = simulate(&s, &costs(), &c).unwrap();
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
        let other = simulate(&s, &costs(), &SimConfig { seed: 100, ..c }).unwrap();
        assert_ne!(a.a_inf.mean, other.a_inf.mean);
    }

    #[test]
    fn accounting_identities_hold() {
        for expert in [ExpertPolicy::Mre, ExpertPolicy::Sre] {
            for patience in [RPT, PatiencePolicy::Deterministic { duration: 1.5 }] {
                for spares in [1, 2] {
                    for mode in [KernelMode::PaperFaithful, KernelMode::Physical] {
                        let c = SimConfig::with_horizon(5_000.0, 1, 3).spares(spares).kernel_mode(mode);
                        let r = simulate_replication(&spec(expert, patience), &c, 0).unwrap();
                        let total = 5_000.0 * (1.0 - DEFAULT_WARMUP_FRACTION);
                        assert!((r.total_time - total).abs() < 1e-6);
                        assert!((r.up_time + r.down_time - r.total_time).abs() < 1e-6);
                        assert!((r.regular_busy + r.expert_busy + r.idle_time - r.total_time).abs() < 1e-6);
                    }
                }
            }
        }
    }

    #[test]
    fn cycle_stopping_rule_counts_cycles() {
        let c = SimConfig::with_cycles(500, 3, 5);
        let est = simulate(&spec(ExpertPolicy::Mre, RPT), &costs(), &c).unwrap();
        assert_eq!(est.n_cycles_observed, 1500);
    }

    #[test]
    fn too_few_cycles_reported() {
        let c = SimConfig::with_horizon(50.0, 2, 5);
        assert!(matches!(
            simulate(&spec(ExpertPolicy::Mre, RPT), &costs(), &c),
            Err(Error::InsufficientCycles { .. })
        ));
    }

    #[test]
    fn mre_rpt_matches_analytic() {
        let s = spec(ExpertPolicy::Mre, RPT);
        let exact = evaluate_model(&s, &costs()).unwrap();
        let est = simulate(&s, &costs(), &SimConfig::with_horizon(200_000.0, 10, 11)).unwrap();
        assert!(est.a_inf.within(exact.a_inf, 3.0), "{:?} vs {}", est.a_inf, exact.a_inf);
        assert!(est.tau.within(exact.tau, 3.0), "{:?} vs {}", est.tau, exact.tau);
        assert!(est.wald_ratio.within(1.0, 3.0), "{:?}", est.wald_ratio);
    }

    #[test]
    fn fast_expert_does_not_hurt_availability() {
        let s = spec(ExpertPolicy::Mre, RPT);
        let slow = evaluate_model(&s, &costs()).unwrap().a_inf;
        let mut fast = s;
        fast.rates.gamma = 1e3;
        let est = simulate(&fast, &costs(), &SimConfig::with_horizon(100_000.0, 5, 2)).unwrap();
        assert!(est.a_inf.mean >= slow);
    }

    #[test]
    fn physical_mode_differs_for_mre_dpt() {
        let s = spec(ExpertPolicy::Mre, PatiencePolicy::Deterministic { duration: 1.5 });
        let exact = evaluate_model(&s, &costs()).unwrap();
        let c = SimConfig::with_horizon(200_000.0, 10, 8).kernel_mode(KernelMode::Physical);
        let est = simulate(&s, &costs(), &c).unwrap();
        assert!(
            est.theta_e.z_score(exact.theta_e).abs() > 5.0,
            "{:?} vs {}",
            est.theta_e,
            exact.theta_e
        );
    }

    #[test]
    fn estimate_statistics() {
        let e = Estimate::from_samples(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(e.mean, 2.5);
        assert!((e.se - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert_eq!(Estimate::from_samples(&[7.0]).se, 0.0);
    }

    #[test]
    fn kernel_mode_names() {
        for m in [KernelMode::PaperFaithful, KernelMode::Physical] {
            assert_eq!(m.name().parse::<KernelMode>().unwrap(), m);
        }
    }
}
