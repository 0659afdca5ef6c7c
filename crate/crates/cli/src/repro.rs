//! End-to-end run at the reference parameter set: every reported number is
//! recomputed and printed as a PASS/FAIL line.

use std::io::Write;

use coldstandby::model::{ExpertPolicy, ModelKind, PatienceFamily};
use coldstandby::optimizer;
use coldstandby::SweepGrid;
use coldstandby::{evaluate_model, simulate, Costs, ModelSpec, Patience, RateParams, SimConfig, SimEstimate};

use crate::commands::{create_file, csv_writer, num, write_sweep_csv};
use crate::{CliError, Params};

pub const LAMBDA: f64 = 0.5;
pub const ALPHA: f64 = 0.3;
pub const BETA: f64 = 0.35;
pub const GAMMA: f64 = 0.75;
pub const NET_REVENUE: f64 = 20.0;
pub const C_R: f64 = 1.0;
pub const C_E: f64 = 5.0;
pub const C_L: f64 = 3.0;
/// Patience time used for the expert-cost comparison under DPT.
pub const DPT_THRESHOLD_T: f64 = 1.5;

/// Reported values are rounded to two decimals; a simulated estimate
/// "brackets" one when it is within half a unit of the last digit plus
/// three standard errors.
pub const ROUNDING_HALF_WIDTH: f64 = 0.005;
pub const SE_MULTIPLIER: f64 = 3.0;

pub fn rates() -> RateParams {
    RateParams::new(LAMBDA, BETA, GAMMA)
}

pub fn costs() -> Costs {
    Costs::new(NET_REVENUE, C_R, C_E, C_L)
}

pub fn spec(kind: ModelKind, t: f64) -> ModelSpec {
    let patience = match kind.family() {
        PatienceFamily::Rpt => Patience::Random { alpha: ALPHA },
        PatienceFamily::Dpt => Patience::Deterministic { duration: t },
    };
    ModelSpec::new(rates(), patience, kind.expert())
}

struct Report<'a> {
    out: &'a mut dyn Write,
    passed: usize,
    failed: usize,
}

impl Report<'_> {
    fn check(&mut self, name: &str, pass: bool, detail: String) -> Result<(), CliError> {
        let tag = if pass { "PASS" } else { "FAIL" };
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        writeln!(self.out, "{tag} {name}: {detail}")?;
        Ok(())
    }
}

fn near(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn brackets(e: &coldstandby::Estimate, target: f64) -> bool {
    (e.mean - target).abs() <= ROUNDING_HALF_WIDTH + SE_MULTIPLIER * e.se
}

pub fn run(p: &Params, out: &mut dyn Write) -> Result<(), CliError> {
    let horizon = p.horizon.unwrap_or(2.0e5);
    let reps = p.reps.unwrap_or(10);
    let seed = p.seed.unwrap_or(1);
    let costs = costs();
    let rates = rates();
    let window = SweepGrid::linear(0.05, 10.0, optimizer::ROOT_SCAN_POINTS)?;
    let mut r = Report {
        out,
        passed: 0,
        failed: 0,
    };

    let t_star = optimizer::t_star_one_spare(LAMBDA, BETA, ALPHA);
    r.check(
        "one-spare T*",
        near(t_star, 1.58, 0.005),
        format!("T*={t_star:.6} (expected 1.58)"),
    )?;

    for (expert, t_exp, a_exp) in [(ExpertPolicy::Mre, 1.62, 0.84), (ExpertPolicy::Sre, 1.66, 0.80)] {
        let res = optimizer::find_equal_availability_t(expert, rates, ALPHA, &window)?;
        let ok = res.roots.len() == 1 && near(res.roots[0], t_exp, 0.02) && near(res.common_values[0], a_exp, 0.005);
        r.check(
            &format!("equal availability {expert}"),
            ok,
            format!(
                "T={:?} A_inf={:?} (expected {t_exp}, {a_exp})",
                res.roots, res.common_values
            ),
        )?;
    }

    for (expert, hi, w) in [(ExpertPolicy::Mre, 3.26, 14.07), (ExpertPolicy::Sre, 3.29, 13.64)] {
        let res = optimizer::find_profit_crossings(expert, rates, ALPHA, &costs, &window)?;
        let ok = res.roots.len() == 2
            && near(res.roots[0], 1.45, 0.05)
            && near(res.roots[1], hi, 0.05)
            && res.common_values.iter().all(|&v| near(v, w, 0.02));
        r.check(
            &format!("profit crossings {expert}"),
            ok,
            format!(
                "T={:?} omega={:.4} (expected [1.45, {hi}], {w})",
                res.roots, res.common_values[0]
            ),
        )?;
    }

    let mut maximizers = Vec::new();
    for (expert, w) in [(ExpertPolicy::Mre, 14.08), (ExpertPolicy::Sre, 13.65)] {
        let (t, omega) = optimizer::maximize_profit_t(expert, rates, &costs, &window)?;
        maximizers.push(t);
        r.check(
            &format!("profit maximum {expert}-dpt"),
            near(t, 2.19, 0.02) && near(omega, w, 0.02),
            format!("T={t:.4} omega={omega:.4} (expected 2.19, {w})"),
        )?;
    }
    r.check(
        "common maximizer",
        near(maximizers[0], maximizers[1], 0.02),
        format!("MRE {:.4} vs SRE {:.4}", maximizers[0], maximizers[1]),
    )?;

    let grid = SweepGrid::linear(0.2, 5.0, 100)?;
    let rows = optimizer::sweep(&ModelKind::ALL, rates, Some(ALPHA), &grid.values(), &costs)?;
    let n = grid.points;
    for family in [PatienceFamily::Rpt, PatienceFamily::Dpt] {
        let (m, s) = match family {
            PatienceFamily::Rpt => (0, 1),
            PatienceFamily::Dpt => (2, 3),
        };
        let mre = &rows[m * n..(m + 1) * n];
        let sre = &rows[s * n..(s + 1) * n];
        let a_ok = mre.iter().zip(sre).all(|(a, b)| a.a_inf > b.a_inf);
        let w_ok = mre.iter().zip(sre).all(|(a, b)| a.omega > b.omega);
        let label = if family == PatienceFamily::Rpt { "rpt" } else { "dpt" };
        r.check(
            &format!("MRE dominates SRE in A_inf ({label})"),
            a_ok,
            format!("{n} grid points on [0.2, 5]"),
        )?;
        r.check(
            &format!("MRE dominates SRE in omega ({label})"),
            w_ok,
            format!("{n} grid points on [0.2, 5]"),
        )?;
    }

    let rpt = evaluate_model(&spec(ModelKind::MreRpt, 0.0), &costs)?;
    let mut window_ok = true;
    for t in SweepGrid::linear(1.45, 1.62, 20)?.values() {
        let dpt = evaluate_model(&spec(ModelKind::MreDpt, t), &costs)?;
        window_ok &= dpt.a_inf >= rpt.a_inf - 1e-9 && dpt.omega >= rpt.omega - 1e-9;
    }
    r.check(
        "MRE-DPT beats MRE-RPT on [1.45, 1.62]",
        window_ok,
        "20 grid points".into(),
    )?;

    for (label, patience) in [
        ("rpt", Patience::Random { alpha: ALPHA }),
        (
            "dpt",
            Patience::Deterministic {
                duration: DPT_THRESHOLD_T,
            },
        ),
    ] {
        let res = optimizer::expert_cost_threshold(rates, patience, &costs, 0.0, 50.0);
        let at5 = |e| evaluate_model(&ModelSpec::new(rates, patience, e), &costs).map(|s| s.omega);
        let diff5 = at5(ExpertPolicy::Mre)? - at5(ExpertPolicy::Sre)?;
        let (ok, roots) = match res {
            Ok(res) => (res.roots.len() == 1 && diff5 > 0.0, format!("{:?}", res.roots)),
            Err(e) => (false, e.to_string()),
        };
        r.check(
            &format!("expert cost threshold ({label})"),
            ok,
            format!("c_e roots {roots}, omega_MRE - omega_SRE at c_e=5: {diff5:.4}"),
        )?;
    }

    // Simulation: one spare against two.
    let sim = |kind: ModelKind, spares: u32| -> Result<SimEstimate, CliError> {
        let config = SimConfig::with_horizon(horizon, reps, seed).spares(spares);
        Ok(simulate(&spec(kind, t_star), &costs, &config)?)
    };
    for kind in ModelKind::ALL {
        let two = sim(kind, 2)?;
        let one = sim(kind, 1)?;
        let gap = |a: &coldstandby::Estimate, b: &coldstandby::Estimate| {
            (a.mean - b.mean) / (a.se * a.se + b.se * b.se).sqrt()
        };
        let (za, zw) = (gap(&two.a_inf, &one.a_inf), gap(&two.omega, &one.omega));
        r.check(
            &format!("two spares beat one ({kind})"),
            za > SE_MULTIPLIER && zw > SE_MULTIPLIER,
            format!(
                "A_inf {:.4} vs {:.4} (z={za:.1}), omega {:.4} vs {:.4} (z={zw:.1})",
                two.a_inf.mean, one.a_inf.mean, two.omega.mean, one.omega.mean
            ),
        )?;
        if kind.family() == PatienceFamily::Dpt {
            let (a_exp, w_exp) = match kind.expert() {
                ExpertPolicy::Sre => (0.74, 11.92),
                ExpertPolicy::Mre => (0.79, 12.48),
            };
            r.check(
                &format!("one-spare A_inf ({kind})"),
                brackets(&one.a_inf, a_exp),
                format!("{:.4} +- {:.4} (expected {a_exp})", one.a_inf.mean, one.a_inf.se),
            )?;
            r.check(
                &format!("one-spare omega ({kind})"),
                brackets(&one.omega, w_exp),
                format!("{:.4} +- {:.4} (expected {w_exp})", one.omega.mean, one.omega.se),
            )?;
        }
    }

    if let Some(dir) = &p.out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
        write_sweep_csv(create_file(&dir.join("patience_sweep.csv"))?, &rows)?;
        write_expert_cost_csv(&dir.join("expert_cost_sweep.csv"))?;
    }

    writeln!(r.out, "{} passed, {} failed", r.passed, r.failed)?;
    Ok(())
}

fn write_expert_cost_csv(path: &std::path::Path) -> Result<(), CliError> {
    let mut w = csv_writer(create_file(path)?);
    w.write_record(["patience", "c_e", "omega_mre", "omega_sre", "difference"])?;
    for (label, patience) in [
        ("rpt", Patience::Random { alpha: ALPHA }),
        (
            "dpt",
            Patience::Deterministic {
                duration: DPT_THRESHOLD_T,
            },
        ),
    ] {
        for c_e in SweepGrid::linear(0.0, 50.0, 101)?.values() {
            let c = Costs { c_e, ..costs() };
            let m = evaluate_model(&ModelSpec::new(rates(), patience, ExpertPolicy::Mre), &c)?.omega;
            let s = evaluate_model(&ModelSpec::new(rates(), patience, ExpertPolicy::Sre), &c)?.omega;
            w.write_record([label.to_string(), num(c_e), num(m), num(s), num(m - s)])?;
        }
    }
    w.flush()?;
    Ok(())
}
