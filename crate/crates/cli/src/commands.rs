use std::fs::File;
use std::io::Write;
use std::path::Path;

use coldstandby::model::{ExpertPolicy, ModelKind, PatienceFamily, StateId};
use coldstandby::optimizer::{self, GridScale, ROOT_SCAN_POINTS};
use coldstandby::{evaluate_model, simulate as run_simulation, Estimate, Patience, SmpSolution, SweepGrid, SweepRow};

use crate::config::required;
use crate::{CliError, Params};

pub const SWEEP_HEADER: [&str; 7] = ["model", "T", "a_inf", "theta_r", "theta_e", "tau", "omega"];
pub const SIMULATE_HEADER: [&str; 6] = ["model", "metric", "estimate", "se", "analytic", "z"];

/// CSV writer with LF line endings.
pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

/// Shortest decimal text that reads back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x}")
}

pub fn create_file(path: &Path) -> Result<File, CliError> {
    File::create(path).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn eval(p: &Params, out: &mut dyn Write) -> Result<(), CliError> {
    let models = p.models()?;
    let costs = p.costs()?;
    let mut results = Vec::with_capacity(models.len());
    for &kind in &models {
        results.push((kind, evaluate_model(&p.spec(kind)?, &costs)?));
    }

    for (i, (kind, sol)) in results.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        write_eval_block(out, *kind, p, sol)?;
    }

    if let Some(path) = &p.out {
        let mut w = csv_writer(create_file(path)?);
        let mut header = vec!["model".to_string()];
        header.extend((1..=6).map(|k| format!("pi_{k}")));
        header.extend((1..=6).map(|k| format!("theta_{k}")));
        header.extend(["a_inf", "theta_r", "theta_e", "tau", "omega"].map(String::from));
        w.write_record(&header)?;
        for (kind, sol) in &results {
            let mut row = vec![kind.name().to_string()];
            row.extend(sol.pi.iter().chain(&sol.theta).map(|&v| num(v)));
            row.extend([sol.a_inf, sol.theta_r, sol.theta_e, sol.tau, sol.omega].map(num));
            w.write_record(&row)?;
        }
        w.flush()?;
    }
    Ok(())
}

fn write_eval_block(out: &mut dyn Write, kind: ModelKind, p: &Params, sol: &SmpSolution) -> Result<(), CliError> {
    let patience = match kind.family() {
        PatienceFamily::Rpt => format!("alpha={}", p.alpha()?),
        PatienceFamily::Dpt => format!("T={}", p.patience_time()?),
    };
    let r = p.rates()?;
    writeln!(
        out,
        "[{kind}] lambda={} beta={} gamma={} {patience}",
        r.lambda, r.beta, r.gamma
    )?;
    writeln!(out, "  {:<10} {:>12} {:>12}", "state", "pi", "theta")?;
    for s in StateId::ALL {
        let k = s.index();
        writeln!(out, "  {:<10} {:>12.8} {:>12.8}", s.label(), sol.pi[k], sol.theta[k])?;
    }
    writeln!(out, "  A_inf    {:.8}", sol.a_inf)?;
    writeln!(out, "  Theta_r  {:.8}", sol.theta_r)?;
    writeln!(out, "  Theta_e  {:.8}", sol.theta_e)?;
    writeln!(out, "  tau      {:.8}", sol.tau)?;
    writeln!(out, "  omega    {:.8}", sol.omega)?;
    Ok(())
}

pub fn sweep(p: &Params, out: &mut dyn Write) -> Result<(), CliError> {
    let models = p.models()?;
    let rows = optimizer::sweep(&models, p.rates()?, p.alpha, &p.grid()?.values(), &p.costs()?)?;
    match &p.out {
        Some(path) => write_sweep_csv(create_file(path)?, &rows),
        None => write_sweep_csv(out, &rows),
    }
}

pub fn write_sweep_csv<W: Write>(w: W, rows: &[SweepRow]) -> Result<(), CliError> {
    let mut w = csv_writer(w);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.write_record([
            r.model.name().to_string(),
            num(r.t),
            num(r.a_inf),
            num(r.theta_r),
            num(r.theta_e),
            num(r.tau),
            num(r.omega),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn simulate(p: &Params, out: &mut dyn Write) -> Result<(), CliError> {
    let models = p.models()?;
    let costs = p.costs()?;
    let config = p.sim_config()?;
    let mut rows: Vec<[String; 6]> = Vec::new();

    for (i, &kind) in models.iter().enumerate() {
        let spec = p.spec(kind)?;
        let est = run_simulation(&spec, &costs, &config)?;
        // The analytic model only covers two spares.
        let analytic = if config.spares == 2 {
            Some(evaluate_model(&spec, &costs)?)
        } else {
            None
        };
        let metrics: [(&str, Estimate, Option<f64>); 7] = [
            ("a_inf", est.a_inf, analytic.map(|s| s.a_inf)),
            ("theta_r", est.theta_r, analytic.map(|s| s.theta_r)),
            ("theta_e", est.theta_e, analytic.map(|s| s.theta_e)),
            ("tau", est.tau, analytic.map(|s| s.tau)),
            ("visit_rate", est.visit_rate, analytic.map(|s| s.tau.recip())),
            ("omega", est.omega, analytic.map(|s| s.omega)),
            ("wald_ratio", est.wald_ratio, analytic.map(|_| 1.0)),
        ];

        if i > 0 {
            writeln!(out)?;
        }
        writeln!(
            out,
            "[{kind}] spares={} replications={} cycles={} time={} kernel={}",
            config.spares,
            est.replications,
            est.n_cycles_observed,
            est.total_time,
            config.kernel_mode.name()
        )?;
        writeln!(
            out,
            "  {:<11} {:>12} {:>12} {:>12} {:>8}",
            "metric", "estimate", "se", "analytic", "z"
        )?;
        for (name, e, reference) in metrics {
            match reference {
                Some(a) => writeln!(
                    out,
                    "  {:<11} {:>12.6} {:>12.6} {:>12.6} {:>8.2}",
                    name,
                    e.mean,
                    e.se,
                    a,
                    e.z_score(a)
                )?,
                None => writeln!(out, "  {:<11} {:>12.6} {:>12.6}", name, e.mean, e.se)?,
            }
            rows.push([
                kind.name().to_string(),
                name.to_string(),
                num(e.mean),
                num(e.se),
                reference.map(num).unwrap_or_default(),
                reference.map(|a| num(e.z_score(a))).unwrap_or_default(),
            ]);
        }
    }

    if let Some(path) = &p.out {
        let mut w = csv_writer(create_file(path)?);
        w.write_record(SIMULATE_HEADER)?;
        for row in &rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    Ok(())
}

/// Distinct expert policies among the selected models, MRE first.
fn experts(models: &[ModelKind]) -> Vec<ExpertPolicy> {
    [ExpertPolicy::Mre, ExpertPolicy::Sre]
        .into_iter()
        .filter(|e| models.iter().any(|m| m.expert() == *e))
        .collect()
}

fn default_t_bracket(points: usize) -> SweepGrid {
    SweepGrid::new(0.05, 10.0, points, GridScale::Linear).expect("valid default bracket")
}

pub fn optimize(p: &Params, out: &mut dyn Write) -> Result<(), CliError> {
    let objective = p
        .objective
        .as_deref()
        .ok_or_else(|| CliError::Config("missing required parameter `objective`".into()))?;
    match objective {
        "t-star" => {
            let lambda = required(p.lambda, "lambda")?;
            let beta = required(p.beta, "beta")?;
            let t = optimizer::t_star_one_spare(lambda, beta, p.alpha()?);
            writeln!(out, "t-star T={t:.8}")?;
        }
        "max-omega" => {
            let models: Vec<ModelKind> = p
                .models()?
                .into_iter()
                .filter(|m| m.family() == PatienceFamily::Dpt)
                .collect();
            if models.is_empty() {
                return Err(CliError::Config("model: max-omega needs a deterministic-patience model".into()));
            }
            let bracket = p.grid_or(default_t_bracket(256))?;
            let (rates, costs) = (p.rates()?, p.costs()?);
            for kind in models {
                let (t, omega) = optimizer::maximize_profit_t(kind.expert(), rates, &costs, &bracket)?;
                writeln!(out, "[{kind}] max-omega T={t:.8} omega={omega:.8}")?;
            }
        }
        "equal-availability" | "profit-crossings" => {
            let bracket = p.grid_or(default_t_bracket(ROOT_SCAN_POINTS))?;
            let (rates, alpha) = (p.rates()?, p.alpha()?);
            let costs = if objective == "profit-crossings" { Some(p.costs()?) } else { None };
            for expert in experts(&p.models()?) {
                let result = match &costs {
                    Some(c) => optimizer::find_profit_crossings(expert, rates, alpha, c, &bracket)?,
                    None => optimizer::find_equal_availability_t(expert, rates, alpha, &bracket)?,
                };
                let value = if costs.is_some() { "omega" } else { "a_inf" };
                for (t, v) in result.roots.iter().zip(&result.common_values) {
                    writeln!(out, "[{}] {objective} T={t:.8} {value}={v:.8}", expert)?;
                }
            }
        }
        "expert-threshold" => {
            let bracket = p.grid_or(SweepGrid::linear(0.0, 50.0, ROOT_SCAN_POINTS).expect("valid default bracket"))?;
            // The expert cost rate is the unknown here.
            let costs = Params {
                ce: Some(p.ce.unwrap_or(0.0)),
                ..p.clone()
            }
            .costs()?;
            let rates = p.rates()?;
            let models = p.models()?;
            for family in [PatienceFamily::Rpt, PatienceFamily::Dpt] {
                if !models.iter().any(|m| m.family() == family) {
                    continue;
                }
                let (label, patience) = match family {
                    PatienceFamily::Rpt => ("rpt", Patience::Random { alpha: p.alpha()? }),
                    PatienceFamily::Dpt => ("dpt", Patience::Deterministic { duration: p.patience_time()? }),
                };
                let result = optimizer::expert_cost_threshold(rates, patience, &costs, bracket.start, bracket.stop)?;
                for (ce, v) in result.roots.iter().zip(&result.common_values) {
                    writeln!(out, "[{label}] expert-threshold ce={ce:.8} omega={v:.8}")?;
                }
            }
        }
        other => {
            return Err(CliError::Config(format!(
                "objective: unknown `{other}` (expected max-omega, equal-availability, profit-crossings, expert-threshold or t-star)"
            )))
        }
    }
    Ok(())
}
