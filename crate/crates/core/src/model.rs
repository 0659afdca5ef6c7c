//! Domain types and the embedded semi-Markov kernel of the four repair models.
//!
//! States are numbered 1..=6 throughout the public surface:
//!
//! | state | units        | meaning                                         |
//! |-------|--------------|-------------------------------------------------|
//! | 1     | (p, s, s)    | one operating, two spares, repair facility idle |
//! | 2     | (r, p, s)    | regular repairer working, one spare left        |
//! | 3     | (e, p, s)    | expert working, one spare left                  |
//! | 4     | (r, w, p)    | regular working, one unit waiting, no spare     |
//! | 5     | (e, w, p)    | expert working, one unit waiting, no spare      |
//! | 6     | (e, w, w)    | all three units down, expert working            |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const NUM_STATES: usize = 6;

/// One value per state, indexed zero-based (`v[0]` is state 1).
pub type StateVector<F> = [F; NUM_STATES];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateParams<F> {
    /// Failure rate of the operating unit.
    pub lambda: F,
    /// Repair rate of the regular repairer.
    pub beta: F,
    /// Repair rate of the expert.
    pub gamma: F,
}

impl<F: Scalar> RateParams<F> {
    pub fn new(lambda: F, beta: F, gamma: F) -> Self {
        Self { lambda, beta, gamma }
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("lambda", self.lambda)?;
        check_positive("beta", self.beta)?;
        check_positive("gamma", self.gamma)
    }
}

/// How long the regular repairer may work on a unit before the expert is
/// called.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PatiencePolicy<F> {
    /// Exponential patience time with rate `alpha` (RPT).
    Random { alpha: F },
    /// Fixed patience time measured from the start of the current repair (DPT).
    Deterministic { duration: F },
}

impl<F: Scalar> PatiencePolicy<F> {
    pub fn family(&self) -> PatienceFamily {
        match self {
            PatiencePolicy::Random { .. } => PatienceFamily::Rpt,
            PatiencePolicy::Deterministic { .. } => PatienceFamily::Dpt,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PatiencePolicy::Random { alpha } => check_positive("alpha", alpha),
            PatiencePolicy::Deterministic { duration } => check_positive("T", duration),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatienceFamily {
    Rpt,
    Dpt,
}

/// Number of units the expert repairs per visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExpertPolicy {
    /// Multiple repair: the expert stays until no failed unit remains.
    Mre,
    /// Single repair: the expert leaves after one repair.
    Sre,
}

impl ExpertPolicy {
    pub fn name(self) -> &'static str {
        match self {
            ExpertPolicy::Mre => "mre",
            ExpertPolicy::Sre => "sre",
        }
    }
}

impl fmt::Display for ExpertPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExpertPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mre" => Ok(ExpertPolicy::Mre),
            "sre" => Ok(ExpertPolicy::Sre),
            other => Err(format!("unknown expert policy `{other}` (expected mre or sre)")),
        }
    }
}

/// The four repair models, in their conventional order (1)..(4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelKind {
    MreRpt,
    SreRpt,
    MreDpt,
    SreDpt,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::MreRpt,
        ModelKind::SreRpt,
        ModelKind::MreDpt,
        ModelKind::SreDpt,
    ];

    pub fn new(expert: ExpertPolicy, family: PatienceFamily) -> Self {
        match (expert, family) {
            (ExpertPolicy::Mre, PatienceFamily::Rpt) => ModelKind::MreRpt,
            (ExpertPolicy::Sre, PatienceFamily::Rpt) => ModelKind::SreRpt,
            (ExpertPolicy::Mre, PatienceFamily::Dpt) => ModelKind::MreDpt,
            (ExpertPolicy::Sre, PatienceFamily::Dpt) => ModelKind::SreDpt,
        }
    }

    pub fn expert(self) -> ExpertPolicy {
        match self {
            ModelKind::MreRpt | ModelKind::MreDpt => ExpertPolicy::Mre,
            ModelKind::SreRpt | ModelKind::SreDpt => ExpertPolicy::Sre,
        }
    }

    pub fn family(self) -> PatienceFamily {
        match self {
            ModelKind::MreRpt | ModelKind::SreRpt => PatienceFamily::Rpt,
            ModelKind::MreDpt | ModelKind::SreDpt => PatienceFamily::Dpt,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::MreRpt => "mre-rpt",
            ModelKind::SreRpt => "sre-rpt",
            ModelKind::MreDpt => "mre-dpt",
            ModelKind::SreDpt => "sre-dpt",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown model `{s}` (expected one of mre-rpt, sre-rpt, mre-dpt, sre-dpt)"))
    }
}

/// Complete description of one repair model at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec<F> {
    pub rates: RateParams<F>,
    pub patience: PatiencePolicy<F>,
    pub expert: ExpertPolicy,
}

impl<F: Scalar> ModelSpec<F> {
    pub fn new(rates: RateParams<F>, patience: PatiencePolicy<F>, expert: ExpertPolicy) -> Self {
        Self {
            rates,
            patience,
            expert,
        }
    }

    pub fn kind(&self) -> ModelKind {
        ModelKind::new(self.expert, self.patience.family())
    }

    pub fn validate(self) -> Result<Self> {
        validate(self)
    }
}

/// Returns the spec unchanged when every rate and duration is finite and
/// strictly positive.
pub fn validate<F: Scalar>(spec: ModelSpec<F>) -> Result<ModelSpec<F>> {
    spec.rates.validate()?;
    spec.patience.validate()?;
    Ok(spec)
}

pub(crate) fn check_positive<F: Scalar>(field: &'static str, value: F) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFiniteParameter {
            field,
            value: value.as_f64(),
        });
    }
    if value <= F::zero() {
        return Err(Error::NonPositiveParameter {
            field,
            value: value.as_f64(),
        });
    }
    Ok(())
}

/// A state of the six-state process, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StateId(u8);

impl StateId {
    pub const ALL: [StateId; NUM_STATES] = [StateId(1), StateId(2), StateId(3), StateId(4), StateId(5), StateId(6)];
    pub const DOWN: StateId = StateId(6);

    pub fn new(value: u8) -> Option<Self> {
        (1..=NUM_STATES as u8).contains(&value).then_some(StateId(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn is_up(self) -> bool {
        self != Self::DOWN
    }

    pub fn label(self) -> &'static str {
        ["(p,s,s)", "(r,p,s)", "(e,p,s)", "(r,w,p)", "(e,w,p)", "(e,w,w)"][self.index()]
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Row-stochastic transition matrix of the embedded jump chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionMatrix<F> {
    entries: [[F; NUM_STATES]; NUM_STATES],
}

impl<F: Scalar> TransitionMatrix<F> {
    /// Wraps raw entries; no stochasticity check is made.
    pub fn from_entries(entries: [[F; NUM_STATES]; NUM_STATES]) -> Self {
        Self { entries }
    }

    /// `P_ij` with 1-based state numbers, so `p(2, 3)` is P₂₃.
    #[inline]
    pub fn p(&self, from: usize, to: usize) -> F {
        self.entries[from - 1][to - 1]
    }

    pub fn get(&self, from: StateId, to: StateId) -> F {
        self.entries[from.index()][to.index()]
    }

    pub fn entries(&self) -> &[[F; NUM_STATES]; NUM_STATES] {
        &self.entries
    }

    pub fn row_sums(&self) -> StateVector<F> {
        self.entries.map(|row| row.iter().fold(F::zero(), |s, &v| s + v))
    }
}

/// Expected sojourn time per visit to each state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SojournMeans<F> {
    pub mu: StateVector<F>,
}

impl<F: Scalar> SojournMeans<F> {
    /// μ_k with a 1-based state number.
    #[inline]
    pub fn mu(&self, state: usize) -> F {
        self.mu[state - 1]
    }
}

/// Probability that the remaining deterministic patience runs out in state 4
/// before either the new unit fails or the repair finishes:
/// `λ e^{-λT} (1 - e^{-βT}) / β`.
pub fn p45_dpt<F: Scalar>(lambda: F, beta: F, t: F) -> F {
    lambda * (-lambda * t).exp() * (-(-beta * t).exp_m1()) / beta
}

/// Exit probabilities (P₄₂, P₄₅, P₄₆) and mean sojourn μ₄ of state 4.
fn state4_kernel<F: Scalar>(spec: &ModelSpec<F>) -> ([F; 3], F) {
    let RateParams { lambda, beta, .. } = spec.rates;
    match spec.patience {
        PatiencePolicy::Random { alpha } => {
            let total = lambda + alpha + beta;
            ([beta / total, alpha / total, lambda / total], total.recip())
        }
        PatiencePolicy::Deterministic { duration } => {
            let p45 = p45_dpt(lambda, beta, duration);
            let rest = F::one() - p45;
            let lb = lambda + beta;
            ([rest * beta / lb, p45, rest * lambda / lb], rest / lb)
        }
    }
}

/// Exit probabilities (P₂₁, P₂₃, P₂₄) and mean sojourn μ₂ of state 2.
fn state2_kernel<F: Scalar>(spec: &ModelSpec<F>) -> ([F; 3], F) {
    let RateParams { lambda, beta, .. } = spec.rates;
    match spec.patience {
        PatiencePolicy::Random { alpha } => {
            let total = lambda + alpha + beta;
            ([beta / total, alpha / total, lambda / total], total.recip())
        }
        PatiencePolicy::Deterministic { duration } => {
            let lb = lambda + beta;
            // P(min(X, Y) < T) without cancellation for small T.
            let finished = -(-lb * duration).exp_m1();
            (
                [beta * finished / lb, (-lb * duration).exp(), lambda * finished / lb],
                finished / lb,
            )
        }
    }
}

/// Embedded jump-chain matrix for a validated spec.
pub fn build_transition_matrix<F: Scalar>(spec: &ModelSpec<F>) -> TransitionMatrix<F> {
    let RateParams { lambda, gamma, .. } = spec.rates;
    let z = F::zero();
    let mut m = [[z; NUM_STATES]; NUM_STATES];

    m[0][1] = F::one();

    let ([p21, p23, p24], _) = state2_kernel(spec);
    m[1][0] = p21;
    m[1][2] = p23;
    m[1][3] = p24;

    let lg = lambda + gamma;
    m[2][0] = gamma / lg;
    m[2][4] = lambda / lg;

    let ([p42, p45, p46], _) = state4_kernel(spec);
    m[3][1] = p42;
    m[3][4] = p45;
    m[3][5] = p46;

    m[4][5] = lambda / lg;
    match spec.expert {
        ExpertPolicy::Mre => {
            m[4][2] = gamma / lg;
            m[5][4] = F::one();
        }
        ExpertPolicy::Sre => {
            m[4][1] = gamma / lg;
            m[5][3] = F::one();
        }
    }
    TransitionMatrix::from_entries(m)
}

/// Expected sojourn time in each state for a validated spec.
pub fn sojourn_means<F: Scalar>(spec: &ModelSpec<F>) -> SojournMeans<F> {
    let RateParams { lambda, gamma, .. } = spec.rates;
    let (_, mu2) = state2_kernel(spec);
    let (_, mu4) = state4_kernel(spec);
    let expert_or_failure = (lambda + gamma).recip();
    SojournMeans {
        mu: [
            lambda.recip(),
            mu2,
            expert_or_failure,
            mu4,
            expert_or_failure,
            gamma.recip(),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rates() -> RateParams<f64> {
        RateParams::new(0.5, 0.35, 0.75)
    }

    fn spec(expert: ExpertPolicy, patience: PatiencePolicy<f64>) -> ModelSpec<f64> {
        ModelSpec::new(rates(), patience, expert)
    }

    /// Adaptive Simpson quadrature, used only as an independent oracle.
    fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
            let m = 0.5 * (a + b);
            let fm = f(m);
            ((b - a) / 6.0 * (f(a) + 4.0 * fm + f(b)), fm)
        }
        fn recurse(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let (left, _) = simpson(f, a, m);
            let (right, _) = simpson(f, m, b);
            if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
                return left + right + (left + right - whole) / 15.0;
            }
            recurse(f, a, m, left, tol / 2.0, depth - 1) + recurse(f, m, b, right, tol / 2.0, depth - 1)
        }
        let (whole, _) = simpson(f, a, b);
        recurse(f, a, b, whole, tol, 50)
    }

    #[test]
    fn accepts_reference_parameters() {
        let s = spec(ExpertPolicy::Mre, PatiencePolicy::Random { alpha: 0.3 });
        assert_eq!(validate(s), Ok(s));
    }

    #[test]
    fn rejects_zero_lambda() {
        let mut s = spec(ExpertPolicy::Mre, PatiencePolicy::Random { alpha: 0.3 });
        s.rates.lambda = 0.0;
        assert_eq!(
            validate(s),
            Err(Error::NonPositiveParameter {
                field: "lambda",
                value: 0.0
            })
        );
    }

    #[test]
    fn rejects_zero_patience_duration() {
        let s = spec(ExpertPolicy::Sre, PatiencePolicy::Deterministic { duration: 0.0 });
        assert!(matches!(
            validate(s),
            Err(Error::NonPositiveParameter { field: "T", .. })
        ));
    }

    #[test]
    fn rejects_non_finite() {
        let mut s = spec(ExpertPolicy::Sre, PatiencePolicy::Random { alpha: f64::NAN });
        assert!(matches!(
            validate(s),
            Err(Error::NonFiniteParameter { field: "alpha", .. })
        ));
        s.patience = PatiencePolicy::Random { alpha: 0.3 };
        s.rates.gamma = f64::INFINITY;
        assert!(matches!(
            validate(s),
            Err(Error::NonFiniteParameter { field: "gamma", .. })
        ));
    }

    #[test]
    fn p45_matches_quadrature() {
        let (lambda, beta, t) = (0.5, 0.35, 1.5);
        let integrand = |x: f64| (-(lambda + beta) * (t - x)).exp() * lambda * (-lambda * x).exp();
        let oracle = adaptive_simpson(&integrand, 0.0, t, 1e-14);
        assert!((p45_dpt(lambda, beta, t) - oracle).abs() < 1e-10);
    }

    #[test]
    fn p45_limits() {
        assert!(p45_dpt(0.5, 0.35, 1e-12) < 1e-11);
        assert!(p45_dpt(0.5, 0.35, 30.0) < 1e-5);
    }

    #[test]
    fn mre_rpt_row2_matches_printed_entries() {
        let p = build_transition_matrix(&spec(ExpertPolicy::Mre, PatiencePolicy::Random { alpha: 0.3 }));
        assert!((p.p(2, 1) - 0.35 / 1.15).abs() < 1e-15);
        assert!((p.p(2, 3) - 0.3 / 1.15).abs() < 1e-15);
        assert!((p.p(2, 4) - 0.5 / 1.15).abs() < 1e-15);
    }

    #[test]
    fn row_one_is_deterministic_failure() {
        for kind in ModelKind::ALL {
            let patience = match kind.family() {
                PatienceFamily::Rpt => PatiencePolicy::Random { alpha: 0.3 },
                PatienceFamily::Dpt => PatiencePolicy::Deterministic { duration: 1.5 },
            };
            let p = build_transition_matrix(&spec(kind.expert(), patience));
            assert_eq!(p.entries()[0], [0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        }
    }

    #[test]
    fn mre_dpt_entries() {
        let p = build_transition_matrix(&spec(
            ExpertPolicy::Mre,
            PatiencePolicy::Deterministic { duration: 1.5 },
        ));
        assert!((p.p(2, 3) - (-0.85f64 * 1.5).exp()).abs() < 1e-15);
        assert_eq!(p.p(4, 5), p45_dpt(0.5, 0.35, 1.5));
        // P₄₂ and P₄₆ split the remainder in proportion β : λ.
        let rest = 1.0 - p.p(4, 5);
        assert!((p.p(4, 2) - rest * 0.35 / 0.85).abs() < 1e-15);
        assert!((p.p(4, 6) - rest * 0.5 / 0.85).abs() < 1e-15);
    }

    #[test]
    fn row_six_target_depends_on_expert_policy() {
        let mre = build_transition_matrix(&spec(ExpertPolicy::Mre, PatiencePolicy::Random { alpha: 0.3 }));
        let sre = build_transition_matrix(&spec(ExpertPolicy::Sre, PatiencePolicy::Random { alpha: 0.3 }));
        assert_eq!(mre.p(6, 5), 1.0);
        assert_eq!(sre.p(6, 4), 1.0);
        assert_eq!(mre.p(5, 3), sre.p(5, 2));
    }

    #[test]
    fn sojourn_reference_values() {
        let rpt = sojourn_means(&spec(ExpertPolicy::Mre, PatiencePolicy::Random { alpha: 0.3 }));
        assert!((rpt.mu(2) - 1.0 / 1.15).abs() < 1e-15);
        assert!((rpt.mu(4) - 1.0 / 1.15).abs() < 1e-15);
        assert!((rpt.mu(1) - 2.0).abs() < 1e-15);
        assert!((rpt.mu(3) - 1.0 / 1.25).abs() < 1e-15);
        assert!((rpt.mu(6) - 1.0 / 0.75).abs() < 1e-15);

        let dpt = sojourn_means(&spec(
            ExpertPolicy::Sre,
            PatiencePolicy::Deterministic { duration: 100.0 },
        ));
        assert!((dpt.mu(2) - 1.0 / 0.85).abs() < 1e-10);
        assert!((dpt.mu(6) - 1.0 / 0.75).abs() < 1e-15);
    }

    #[test]
    fn dpt_mu4_matches_printed_form() {
        let (l, b, t) = (0.5f64, 0.35f64, 2.19f64);
        let printed = 1.0 / (l + b) - l * ((b * t).exp() - 1.0) * (-(l + b) * t).exp() / (b * (l + b));
        let mu = sojourn_means(&spec(ExpertPolicy::Mre, PatiencePolicy::Deterministic { duration: t }));
        assert!((mu.mu(4) - printed).abs() < 1e-14);
    }

    #[test]
    fn model_kind_round_trip_names() {
        for kind in ModelKind::ALL {
            assert_eq!(kind.name().parse::<ModelKind>().unwrap(), kind);
            assert_eq!(ModelKind::new(kind.expert(), kind.family()), kind);
        }
        assert!("mre-xyz".parse::<ModelKind>().is_err());
    }

    #[test]
    fn state_ids() {
        assert_eq!(StateId::new(0), None);
        assert_eq!(StateId::new(7), None);
        assert!(StateId::ALL.iter().filter(|s| !s.is_up()).eq([&StateId::DOWN]));
        assert_eq!(StateId::new(4).unwrap().label(), "(r,w,p)");
    }

    fn arb_rates() -> impl Strategy<Value = RateParams<f64>> {
        (0.01f64..10.0, 0.01f64..10.0, 0.01f64..10.0).prop_map(|(l, b, g)| RateParams::new(l, b, g))
    }

    fn arb_spec() -> impl Strategy<Value = ModelSpec<f64>> {
        (
            arb_rates(),
            prop_oneof![
                (0.01f64..10.0).prop_map(|alpha| PatiencePolicy::Random { alpha }),
                (0.01f64..20.0).prop_map(|duration| PatiencePolicy::Deterministic { duration }),
            ],
            prop_oneof![Just(ExpertPolicy::Mre), Just(ExpertPolicy::Sre)],
        )
            .prop_map(|(r, p, e)| ModelSpec::new(r, p, e))
    }

    proptest! {
        #[test]
        fn rows_are_stochastic(s in arb_spec()) {
            let p = build_transition_matrix(&s);
            for (i, sum) in p.row_sums().iter().enumerate() {
                prop_assert!((sum - 1.0).abs() < 1e-12, "row {} sums to {}", i + 1, sum);
            }
            for row in p.entries() {
                for &v in row {
                    prop_assert!((0.0..=1.0).contains(&v));
                }
            }
        }

        #[test]
        fn expert_policy_changes_only_rows_five_and_six(s in arb_spec()) {
            let mre = build_transition_matrix(&ModelSpec { expert: ExpertPolicy::Mre, ..s });
            let sre = build_transition_matrix(&ModelSpec { expert: ExpertPolicy::Sre, ..s });
            for i in 0..4 {
                prop_assert_eq!(mre.entries()[i], sre.entries()[i]);
            }
        }

        #[test]
        fn patience_family_shares_rows(r in arb_rates(), alpha in 0.01f64..10.0, t in 0.01f64..20.0) {
            for (expert, shared) in [(ExpertPolicy::Mre, &[1usize, 3, 5, 6][..]), (ExpertPolicy::Sre, &[1, 3][..])] {
                let rpt = build_transition_matrix(&ModelSpec::new(r, PatiencePolicy::Random { alpha }, expert));
                let dpt = build_transition_matrix(&ModelSpec::new(r, PatiencePolicy::Deterministic { duration: t }, expert));
                for &row in shared {
                    prop_assert_eq!(rpt.entries()[row - 1], dpt.entries()[row - 1]);
                }
            }
        }

        #[test]
        fn dpt_mu2_bounded(r in arb_rates(), t in 0.001f64..50.0) {
            let mu = sojourn_means(&ModelSpec::new(r, PatiencePolicy::Deterministic { duration: t }, ExpertPolicy::Mre));
            let lb = r.lambda + r.beta;
            prop_assert!(mu.mu(2) < t);
            if lb * t < 30.0 {
                prop_assert!(mu.mu(2) < 1.0 / lb);
            } else {
                prop_assert!(mu.mu(2) <= 1.0 / lb);
            }
            prop_assert!(mu.mu.iter().all(|&m| m > 0.0));
        }

        #[test]
        fn p45_in_open_interval(l in 0.01f64..10.0, b in 0.01f64..10.0, t in 0.001f64..10.0) {
            let p = p45_dpt(l, b, t);
            prop_assert!(p > 0.0);
            prop_assert!(p < l / (l + b));
        }
    }

    #[test]
    fn dpt_row2_tends_to_rpt_with_zero_alpha() {
        let r = rates();
        let rpt_limit = [r.beta / (r.lambda + r.beta), 0.0, r.lambda / (r.lambda + r.beta)];
        let mut last = f64::INFINITY;
        for t in [5.0, 10.0, 20.0, 40.0] {
            let p = build_transition_matrix(&ModelSpec::new(
                r,
                PatiencePolicy::Deterministic { duration: t },
                ExpertPolicy::Mre,
            ));
            let err = [p.p(2, 1), p.p(2, 3), p.p(2, 4)]
                .iter()
                .zip(rpt_limit)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(err < last);
            last = err;
        }
        assert!(last < 1e-14);
    }

    #[test]
    fn f32_matrix_is_stochastic() {
        let s = ModelSpec::new(
            RateParams::new(0.5f32, 0.35, 0.75),
            PatiencePolicy::Deterministic { duration: 1.5 },
            ExpertPolicy::Sre,
        );
        let p = build_transition_matrix(&s);
        for sum in p.row_sums() {
            assert!((sum - 1.0).abs() < 1e-6);
        }
    }
}
