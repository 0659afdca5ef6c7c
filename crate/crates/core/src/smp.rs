//! Stationary analysis of the semi-Markov process: occupancy, availability,
//! busy fractions, cycle length and long-run profit rate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    build_transition_matrix, sojourn_means, validate, ExpertPolicy, ModelSpec, SojournMeans, StateVector,
    TransitionMatrix, NUM_STATES,
};
use crate::scalar::Scalar;

/// Revenue and repair-cost rates. `net_revenue_rate` stands for the revenue
/// rate minus the operating cost rate while the system is up.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostParams<F> {
    pub net_revenue_rate: F,
    /// Regular repairer cost per unit busy time.
    pub c_r: F,
    /// Expert cost per unit busy time.
    pub c_e: F,
    /// Trip charge per expert visit.
    pub c_l: F,
}

impl<F: Scalar> CostParams<F> {
    pub fn new(net_revenue_rate: F, c_r: F, c_e: F, c_l: F) -> Self {
        Self {
            net_revenue_rate,
            c_r,
            c_e,
            c_l,
        }
    }

    pub fn from_revenue_and_cost(revenue: F, operating_cost: F, c_r: F, c_e: F, c_l: F) -> Self {
        Self::new(revenue - operating_cost, c_r, c_e, c_l)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.net_revenue_rate.is_finite() {
            return Err(Error::NonFiniteParameter {
                field: "net_revenue_rate",
                value: self.net_revenue_rate.as_f64(),
            });
        }
        for (field, value) in [("c_r", self.c_r), ("c_e", self.c_e), ("c_l", self.c_l)] {
            if !value.is_finite() {
                return Err(Error::NonFiniteParameter {
                    field,
                    value: value.as_f64(),
                });
            }
            if value < F::zero() {
                return Err(Error::NegativeCost {
                    field,
                    value: value.as_f64(),
                });
            }
        }
        Ok(())
    }
}

/// The quantities the profit rate depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfitInputs<F> {
    pub a_inf: F,
    pub theta_r: F,
    pub theta_e: F,
    pub tau: F,
}

/// Full analytic output for one model at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmpSolution<F> {
    pub pi: StateVector<F>,
    pub mu: StateVector<F>,
    pub theta: StateVector<F>,
    pub a_inf: F,
    pub theta_r: F,
    pub theta_e: F,
    pub tau: F,
    pub omega: F,
}

impl<F: Scalar> SmpSolution<F> {
    pub fn profit_inputs(&self) -> ProfitInputs<F> {
        ProfitInputs {
            a_inf: self.a_inf,
            theta_r: self.theta_r,
            theta_e: self.theta_e,
            tau: self.tau,
        }
    }

    /// Expert visits per unit time as implied by the cycle length.
    pub fn visit_rate(&self) -> F {
        self.tau.recip()
    }
}

/// Stationary distribution of the embedded chain.
///
/// Uses the GTH elimination, which never subtracts, so states with very
/// little mass (long patience windows push some below 1e-40) keep full
/// relative accuracy. Fails with [`Error::ReducibleChain`] unless every
/// state can reach every other one through positive transitions.
pub fn stationary_distribution<F: Scalar>(p: &TransitionMatrix<F>) -> Result<StateVector<F>> {
    const N: usize = NUM_STATES;
    let mut a = *p.entries();
    if !strongly_connected(&a) {
        return Err(Error::ReducibleChain);
    }

    for k in (1..N).rev() {
        let s = a[k][..k].iter().fold(F::zero(), |acc, &v| acc + v);
        if !(s > F::zero()) {
            return Err(Error::ReducibleChain);
        }
        for i in 0..k {
            a[i][k] = a[i][k] / s;
        }
        for i in 0..k {
            let aik = a[i][k];
            if aik == F::zero() {
                continue;
            }
            for j in 0..k {
                a[i][j] = a[i][j] + aik * a[k][j];
            }
        }
    }

    let mut pi = [F::zero(); N];
    pi[0] = F::one();
    for k in 1..N {
        pi[k] = (0..k).fold(F::zero(), |acc, i| acc + pi[i] * a[i][k]);
    }
    let total = pi.iter().fold(F::zero(), |s, &v| s + v);
    let pi = pi.map(|v| v / total);
    if pi.iter().any(|&v| !(v > F::zero())) {
        return Err(Error::ReducibleChain);
    }
    Ok(pi)
}

fn strongly_connected<F: Scalar>(e: &[[F; NUM_STATES]; NUM_STATES]) -> bool {
    let mut reach: [[bool; NUM_STATES]; NUM_STATES] =
        std::array::from_fn(|i| std::array::from_fn(|j| i == j || e[i][j] > F::zero()));
    for k in 0..NUM_STATES {
        for i in 0..NUM_STATES {
            if reach[i][k] {
                for j in 0..NUM_STATES {
                    reach[i][j] |= reach[k][j];
                }
            }
        }
    }
    reach.iter().all(|row| row.iter().all(|&r| r))
}

/// Long-run fraction of time in each state: `θ_k = π_k μ_k / Σ_j π_j μ_j`.
pub fn occupancy_fractions<F: Scalar>(pi: &StateVector<F>, mu: &SojournMeans<F>) -> StateVector<F> {
    let weighted: StateVector<F> = std::array::from_fn(|k| pi[k] * mu.mu[k]);
    let total = weighted.iter().fold(F::zero(), |s, &v| s + v);
    weighted.map(|w| w / total)
}

/// `1 - θ₆`; state 6 is the only down state.
pub fn limiting_availability<F: Scalar>(theta: &StateVector<F>) -> F {
    F::one() - theta[NUM_STATES - 1]
}

/// `(Θ_r, Θ_e)`: regular busy in states 2 and 4, expert busy in 3, 5 and 6.
pub fn busy_fractions<F: Scalar>(theta: &StateVector<F>) -> (F, F) {
    (theta[1] + theta[3], theta[2] + theta[4] + theta[5])
}

/// Expected cycle length τ for a validated spec.
pub fn expected_cycle_length<F: Scalar>(spec: &ModelSpec<F>) -> Result<F> {
    let p = build_transition_matrix(spec);
    let mu = sojourn_means(spec);
    cycle_length_from_kernel(&p, &mu, spec.expert)
}

/// Solves the first-passage recursions for the unknowns
/// `(τ, σ₃₂, σ₄₂, σ₅₂)`, where `σ_k2` is the expected time to reach a
/// cycle-ending entry into state 2 from state `k`.
///
/// A cycle starts on entry to state 2 and ends on the next entry to state 2
/// made after the expert has finished a visit: via 3 → 1 → 2, or via 5 → 2
/// under SRE. A 2 → 1 → 2 or 4 → 2 return without such a visit restarts the
/// count, which is where the `τ` terms on the right-hand side come from.
/// Under MRE state 6 returns to 5; under SRE it returns to 4.
pub fn cycle_length_from_kernel<F: Scalar>(
    p: &TransitionMatrix<F>,
    mu: &SojournMeans<F>,
    expert: ExpertPolicy,
) -> Result<F> {
    let q = |i, j| p.p(i, j);
    let m = |k| mu.mu(k);
    // The recursion is eliminated by hand so that every denominator is a
    // sum of kernel entries. For long patience windows the cycle length
    // grows like exp((λ+β)T) and a generic solve loses it to cancellation.
    let head = m(2) + q(2, 1) * m(1);
    let m5 = m(5) + q(5, 6) * m(6);
    let tau = match expert {
        ExpertPolicy::Mre => {
            // σ₅₂ = m5/P₅₃ + σ₃₂ and σ₃₂ P₃₁ = μ₃ + P₃₁μ₁ + P₃₅ m5/P₅₃.
            let s32 = (m(3) + q(3, 1) * m(1) + q(3, 5) * m5 / q(5, 3)) / q(3, 1);
            let s52 = m5 / q(5, 3) + s32;
            let leave4 = q(4, 5) + q(4, 6);
            let num = head + q(2, 3) * s32 + q(2, 4) * (m(4) + q(4, 6) * m(6) + leave4 * s52);
            num / (q(2, 3) + q(2, 4) * leave4)
        }
        ExpertPolicy::Sre => {
            // σ₄₂ D₄ = N₄ + P₄₂τ with D₄ = 1 − P₄₆ − P₄₅P₅₆.
            let d4 = q(4, 2) + q(4, 5) * q(5, 2);
            let n4 = m(4) + q(4, 5) * m5 + q(4, 6) * m(6);
            let k = q(2, 3) * q(3, 5) * q(5, 6) + q(2, 4);
            let c3 = m(3) + q(3, 1) * m(1) + q(3, 5) * m5;
            let num = (head + q(2, 3) * c3) * d4 + k * n4;
            let den =
                q(2, 3) * (q(4, 2) * (q(3, 1) + q(3, 5) * q(5, 2)) + q(4, 5) * q(5, 2)) + q(2, 4) * q(4, 5) * q(5, 2);
            num / den
        }
    };
    if !(tau > F::zero()) || !tau.is_finite() {
        return Err(Error::SingularRecursion);
    }
    Ok(tau)
}

/// `ω = A∞ (R_p − C_p) − [Θ_r C_r + Θ_e C_e + C_l / τ]`.
pub fn limiting_profit<F: Scalar>(inputs: &ProfitInputs<F>, costs: &CostParams<F>) -> F {
    inputs.a_inf * costs.net_revenue_rate
        - (inputs.theta_r * costs.c_r + inputs.theta_e * costs.c_e + costs.c_l / inputs.tau)
}

/// Validates the inputs and runs the whole analytic pipeline.
pub fn evaluate_model<F: Scalar>(spec: &ModelSpec<F>, costs: &CostParams<F>) -> Result<SmpSolution<F>> {
    let spec = validate(*spec)?;
    costs.validate()?;
    let p = build_transition_matrix(&spec);
    let mu = sojourn_means(&spec);
    let pi = stationary_distribution(&p)?;
    let theta = occupancy_fractions(&pi, &mu);
    let a_inf = limiting_availability(&theta);
    let (theta_r, theta_e) = busy_fractions(&theta);
    let tau = cycle_length_from_kernel(&p, &mu, spec.expert)?;
    let inputs = ProfitInputs {
        a_inf,
        theta_r,
        theta_e,
        tau,
    };
    Ok(SmpSolution {
        pi,
        mu: mu.mu,
        theta,
        a_inf,
        theta_r,
        theta_e,
        tau,
        omega: limiting_profit(&inputs, costs),
    })
}
