//! One-dimensional searches over the patience time and the expert cost rate.
//!
//! Every objective is evaluated with the analytic engine. Root searches scan
//! the bracket on a fixed grid and refine each sign-change cell with Brent's
//! method; maximization scans a coarse grid and polishes the best cell with a
//! golden-section search.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ExpertPolicy, ModelKind, ModelSpec, PatienceFamily, PatiencePolicy, RateParams};
use crate::scalar::Scalar;
use crate::smp::{evaluate_model, CostParams, SmpSolution};

/// Cells scanned for sign changes before refinement.
pub const ROOT_SCAN_POINTS: usize = 512;
/// Coarse grid size for maximization.
pub const MAX_SCAN_POINTS: usize = 256;
/// Required `|f(root)|`.
pub const ROOT_VALUE_TOL: f64 = 1e-9;
/// Reported bracket half-width around each root.
pub const ROOT_BRACKET_TOL: f64 = 1e-6;

const MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridScale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid<F> {
    pub start: F,
    pub stop: F,
    pub points: usize,
    pub scale: GridScale,
}

impl<F: Scalar> SweepGrid<F> {
    pub fn new(start: F, stop: F, points: usize, scale: GridScale) -> Result<Self> {
        let grid = Self {
            start,
            stop,
            points,
            scale,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn linear(start: F, stop: F, points: usize) -> Result<Self> {
        Self::new(start, stop, points, GridScale::Linear)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if !(self.start < self.stop) {
            return Err(Error::InvalidGrid(format!(
                "start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidGrid("at least two points required".into()));
        }
        if self.scale == GridScale::Log && !(self.start > F::zero()) {
            return Err(Error::InvalidGrid("log grid needs a positive start".into()));
        }
        Ok(())
    }

    /// Same bounds and scale, different resolution.
    pub fn with_points(&self, points: usize) -> Self {
        Self { points, ..*self }
    }

    pub fn values(&self) -> Vec<F> {
        let n = self.points;
        let last = F::lit((n - 1) as f64);
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.stop;
                }
                let frac = F::lit(i as f64) / last;
                match self.scale {
                    GridScale::Linear => self.start + (self.stop - self.start) * frac,
                    GridScale::Log => {
                        let (a, b) = (self.start.ln(), self.stop.ln());
                        (a + (b - a) * frac).exp()
                    }
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingResult<F> {
    pub roots: Vec<F>,
    /// Value shared by both sides at each root (e.g. the common A∞ or ω).
    pub common_values: Vec<F>,
    pub bracket_tolerance: F,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow<F> {
    pub model: ModelKind,
    pub t: F,
    pub a_inf: F,
    pub theta_r: F,
    pub theta_e: F,
    pub tau: F,
    pub omega: F,
}

/// Patience time at which random and deterministic patience give the same
/// availability for the one-spare system: `ln(1 + (λ+β)/α) / (λ+β)`.
pub fn t_star_one_spare<F: Scalar>(lambda: F, beta: F, alpha: F) -> F {
    let lb = lambda + beta;
    (lb / alpha).ln_1p() / lb
}

fn rpt_spec<F: Scalar>(expert: ExpertPolicy, rates: RateParams<F>, alpha: F) -> ModelSpec<F> {
    ModelSpec::new(rates, PatiencePolicy::Random { alpha }, expert)
}

fn dpt_spec<F: Scalar>(expert: ExpertPolicy, rates: RateParams<F>, t: F) -> ModelSpec<F> {
    ModelSpec::new(rates, PatiencePolicy::Deterministic { duration: t }, expert)
}

fn zero_costs<F: Scalar>() -> CostParams<F> {
    CostParams::new(F::zero(), F::zero(), F::zero(), F::zero())
}

/// Patience times where deterministic-patience availability equals the
/// random-patience availability with rate `alpha`.
pub fn find_equal_availability_t<F: Scalar>(
    expert: ExpertPolicy,
    rates: RateParams<F>,
    alpha: F,
    bracket: &SweepGrid<F>,
) -> Result<CrossingResult<F>> {
    let reference = evaluate_model(&rpt_spec(expert, rates, alpha), &zero_costs())?.a_inf;
    let diff =
        |t: F| -> Result<F> { Ok(evaluate_model(&dpt_spec(expert, rates, t), &zero_costs())?.a_inf - reference) };
    let roots = find_roots(&diff, bracket)?;
    Ok(CrossingResult {
        common_values: vec![reference; roots.len()],
        roots,
        bracket_tolerance: F::lit(ROOT_BRACKET_TOL),
    })
}

/// Patience times where deterministic-patience profit equals the
/// random-patience profit.
pub fn find_profit_crossings<F: Scalar>(
    expert: ExpertPolicy,
    rates: RateParams<F>,
    alpha: F,
    costs: &CostParams<F>,
    bracket: &SweepGrid<F>,
) -> Result<CrossingResult<F>> {
    let reference = evaluate_model(&rpt_spec(expert, rates, alpha), costs)?.omega;
    let diff = |t: F| -> Result<F> { Ok(evaluate_model(&dpt_spec(expert, rates, t), costs)?.omega - reference) };
    let roots = find_roots(&diff, bracket)?;
    Ok(CrossingResult {
        common_values: vec![reference; roots.len()],
        roots,
        bracket_tolerance: F::lit(ROOT_BRACKET_TOL),
    })
}

/// Deterministic patience time maximizing the profit rate on the bracket.
/// Returns `(T_opt, ω(T_opt))`; an endpoint when ω is monotone there.
pub fn maximize_profit_t<F: Scalar>(
    expert: ExpertPolicy,
    rates: RateParams<F>,
    costs: &CostParams<F>,
    bracket: &SweepGrid<F>,
) -> Result<(F, F)> {
    let objective = |t: F| -> Result<F> { Ok(evaluate_model(&dpt_spec(expert, rates, t), costs)?.omega) };
    maximize(&objective, bracket)
}

/// Expert cost rate at which MRE and SRE earn the same profit, for fixed
/// patience. `costs.c_e` is ignored; `[lo, hi]` brackets the search.
pub fn expert_cost_threshold<F: Scalar>(
    rates: RateParams<F>,
    patience: PatiencePolicy<F>,
    costs: &CostParams<F>,
    lo: F,
    hi: F,
) -> Result<CrossingResult<F>> {
    let bracket = SweepGrid::linear(lo, hi, ROOT_SCAN_POINTS)?;
    let at = |c_e: F, expert| -> Result<SmpSolution<F>> {
        let costs = CostParams { c_e, ..*costs };
        evaluate_model(&ModelSpec::new(rates, patience, expert), &costs)
    };
    let diff = |c_e: F| -> Result<F> { Ok(at(c_e, ExpertPolicy::Mre)?.omega - at(c_e, ExpertPolicy::Sre)?.omega) };
    let roots = find_roots(&diff, &bracket)?;
    let common_values = roots
        .iter()
        .map(|&r| at(r, ExpertPolicy::Mre).map(|s| s.omega))
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossingResult {
        roots,
        common_values,
        bracket_tolerance: F::lit(ROOT_BRACKET_TOL),
    })
}

/// Evaluates each requested model at each patience time. Rows are ordered by
/// model, then by `t`; random-patience rows repeat the same values for every
/// `t`.
pub fn sweep<F: Scalar>(
    models: &[ModelKind],
    rates: RateParams<F>,
    alpha: Option<F>,
    t_values: &[F],
    costs: &CostParams<F>,
) -> Result<Vec<SweepRow<F>>> {
    let mut rows = Vec::with_capacity(models.len() * t_values.len());
    for &model in models {
        let fixed = match model.family() {
            PatienceFamily::Rpt => {
                let alpha = alpha.ok_or(Error::MissingParameter("alpha"))?;
                Some(evaluate_model(&rpt_spec(model.expert(), rates, alpha), costs)?)
            }
            PatienceFamily::Dpt => None,
        };
        for &t in t_values {
            let sol = match fixed {
                Some(sol) => sol,
                None => evaluate_model(&dpt_spec(model.expert(), rates, t), costs)?,
            };
            rows.push(SweepRow {
                model,
                t,
                a_inf: sol.a_inf,
                theta_r: sol.theta_r,
                theta_e: sol.theta_e,
                tau: sol.tau,
                omega: sol.omega,
            });
        }
    }
    Ok(rows)
}

/// All sign changes of `f` on the bracket, each refined independently.
pub fn find_roots<F: Scalar>(f: &dyn Fn(F) -> Result<F>, bracket: &SweepGrid<F>) -> Result<Vec<F>> {
    bracket.validate()?;
    let xs = bracket.with_points(bracket.points.max(ROOT_SCAN_POINTS)).values();
    let ys = xs.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
    let mut roots = Vec::new();
    for i in 0..xs.len() - 1 {
        let (y0, y1) = (ys[i], ys[i + 1]);
        if y0 == F::zero() {
            roots.push(xs[i]);
        } else if (y0 < F::zero()) != (y1 < F::zero()) && y1 != F::zero() {
            roots.push(brent_root(f, xs[i], xs[i + 1], y0, y1)?);
        }
    }
    if ys[ys.len() - 1] == F::zero() {
        roots.push(xs[xs.len() - 1]);
    }
    if roots.is_empty() {
        return Err(Error::NoSignChange {
            start: bracket.start.as_f64(),
            stop: bracket.stop.as_f64(),
        });
    }
    Ok(roots)
}

/// Brent's method on a bracket with `fa` and `fb` of opposite sign.
fn brent_root<F: Scalar>(f: &dyn Fn(F) -> Result<F>, a: F, b: F, fa: F, fb: F) -> Result<F> {
    let two = F::lit(2.0);
    let three = F::lit(3.0);
    let half = F::lit(0.5);
    let ftol = F::lit(ROOT_VALUE_TOL);
    let xtol = F::lit(ROOT_BRACKET_TOL * 1e-4);

    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if (fb > F::zero()) == (fc > F::zero()) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = two * F::epsilon() * b.abs() + half * xtol;
        let m = half * (c - b);
        if fb == F::zero() || (m.abs() <= tol && fb.abs() < ftol) || m.abs() <= two * F::epsilon() * b.abs() {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * m * s;
                q = F::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * m * qa * (qa - r) - (b - a) * (r - F::one()));
                q = (qa - F::one()) * (r - F::one()) * (s - F::one());
            }
            if p > F::zero() {
                q = -q;
            } else {
                p = -p;
            }
            if two * p < (three * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol {
            b + d
        } else if m > F::zero() {
            b + tol
        } else {
            b - tol
        };
        fb = f(b)?;
    }
    Ok(b)
}

/// Coarse grid scan, then golden-section search in the best cell.
pub fn maximize<F: Scalar>(f: &dyn Fn(F) -> Result<F>, bracket: &SweepGrid<F>) -> Result<(F, F)> {
    bracket.validate()?;
    let xs = bracket.with_points(bracket.points.max(MAX_SCAN_POINTS)).values();
    let ys = xs.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
    let best = (0..xs.len())
        .max_by(|&i, &j| ys[i].partial_cmp(&ys[j]).unwrap_or(std::cmp::Ordering::Equal))
        .unwrap_or(0);
    let lo = xs[best.saturating_sub(1)];
    let hi = xs[(best + 1).min(xs.len() - 1)];
    let (x, y) = golden_section_max(f, lo, hi)?;
    Ok(if y >= ys[best] { (x, y) } else { (xs[best], ys[best]) })
}

fn golden_section_max<F: Scalar>(f: &dyn Fn(F) -> Result<F>, lo: F, hi: F) -> Result<(F, F)> {
    let inv_phi = F::lit((5f64.sqrt() - 1.0) / 2.0);
    let xtol = F::lit(1e-10);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..MAX_ITER {
        if (b - a).abs() <= xtol * (F::one() + a.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let candidates = [(c, fc), (d, fd), (lo, f(lo)?), (hi, f(hi)?)];
    Ok(candidates
        .into_iter()
        .fold(candidates[0], |best, cand| if cand.1 > best.1 { cand } else { best }))
}
