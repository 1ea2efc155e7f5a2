//! One handler per subcommand; each returns a [`Report`].

use zeno_core::design::{asymptotic_params, franson_error, kappa_required};
use zeno_core::gate::{gate_error, propagate, BranchAmplitudes, Scenario};
use zeno_core::optimizer::{
    control_loss_inflation, control_loss_sweep, franson_min_kappa, minimize_kappa_with, reproduce_table1_with,
    tradeoff_curve_for,
};
use zeno_core::oracle::{gate_concurrence, ControlLevel, JointDensityState, TargetLevel};
use zeno_core::rates::{
    collective_enhancement, interference_frequency, min_pump_detuning, molecule_count, one_photon_ratio,
    p_two_photon, pump_excitation_ratio,
};
use zeno_core::units::Intensity;
use zeno_core::Error;

use crate::config::{Command, ConfigDocument, SweepKind};
use crate::error::CliError;
use crate::report::{Cell, Report};

fn invalid(msg: String) -> CliError {
    CliError::validation(vec![msg])
}

fn config_json(doc: &ConfigDocument) -> serde_json::Value {
    serde_json::to_value(doc).expect("configuration serializes")
}

pub fn run_command(command: Command, doc: &ConfigDocument) -> Result<Report, CliError> {
    match command {
        Command::Simulate => simulate(doc),
        Command::Optimize => optimize(doc),
        Command::Table1 => table1(doc),
        Command::Rates => rates(doc),
        Command::Sweep => sweep(doc),
        Command::Franson => franson(doc),
    }
}

fn simulate(doc: &ConfigDocument) -> Result<Report, CliError> {
    let cfg = doc.gate_config().map_err(invalid)?;
    let budget = gate_error(&cfg);
    let mut r = Report::new(
        "simulate",
        config_json(doc),
        vec![
            "scenario",
            "p_success",
            "p_absorbed",
            "p_wrong_branch",
            "p_control_lost",
            "amp_upper",
            "amp_middle",
            "amp_lower",
        ],
    );
    for s in Scenario::ALL {
        let o = budget.outcome(s);
        let out = propagate(&cfg, s.control_present(), BranchAmplitudes::basis(s.input_branch()));
        r.push_row(vec![
            s.as_str().into(),
            o.p_success.into(),
            o.p_absorbed.into(),
            o.p_wrong_branch.into(),
            o.p_control_lost.into(),
            out.upper.into(),
            out.middle.into(),
            out.lower.into(),
        ]);
    }
    r.add_summary("p_error_sum", budget.p_error_sum);
    r.add_summary("p_error_max", budget.p_error_max);

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let input = JointDensityState::superposition(&[
        (TargetLevel::Upper, ControlLevel::Absent, h),
        (TargetLevel::Upper, ControlLevel::Present, h),
    ])?;
    match gate_concurrence(&cfg, &input) {
        Ok(c) => {
            r.add_summary("concurrence", c.concurrence);
            r.add_summary("postselect_probability", c.postselect_probability);
        }
        Err(Error::Degenerate { probability }) => {
            r.add_summary("concurrence", Cell::Null);
            r.add_summary("postselect_probability", probability);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn optimize(doc: &ConfigDocument) -> Result<Report, CliError> {
    let problem = doc.problem_config().map_err(invalid)?;
    let settings = doc.search_settings().map_err(invalid)?;
    let res = minimize_kappa_with(&problem, &settings)?;
    let (p_two, p_one) = res.segment_probabilities();
    let mut r = Report::new(
        "optimize",
        config_json(doc),
        vec![
            "segments",
            "target_error",
            "epsilon",
            "xi_one",
            "xi_two",
            "xi_control",
            "kappa",
            "achieved_error",
            "p_two_segment",
            "p_one_segment",
        ],
    );
    r.push_row(vec![
        problem.segments.into(),
        problem.target_error.into(),
        res.epsilon.into(),
        res.xi_one.into(),
        res.xi_two.into(),
        res.xi_control.into(),
        res.kappa.into(),
        res.achieved_error.into(),
        p_two.into(),
        p_one.into(),
    ]);
    r.add_summary("converged", res.converged);
    r.add_summary("evaluations", res.evaluations);
    r.add_summary("grid_kappa", res.grid_kappa);
    Ok(r)
}

fn table1(doc: &ConfigDocument) -> Result<Report, CliError> {
    let problem = doc.problem_config().map_err(invalid)?;
    let scenario = doc.physical_scenario().map_err(invalid)?;
    let rows = reproduce_table1_with(problem.aggregate, problem.epsilon_search, &scenario)?;
    let mut r = Report::new(
        "table1",
        config_json(doc),
        vec!["p_error", "segments", "p_two_segment", "p_one_segment", "kappa", "n_or_ns"],
    );
    for row in rows {
        r.push_row(vec![
            row.target_error.into(),
            row.segments.into(),
            row.p_two_segment.into(),
            row.p_one_segment.into(),
            row.kappa.into(),
            row.repetitions.into(),
        ]);
    }
    r.add_summary("one_photon_ratio", one_photon_ratio(&scenario));
    Ok(r)
}

fn rates(doc: &ConfigDocument) -> Result<Report, CliError> {
    let sc = doc.physical_scenario().map_err(invalid)?;
    let pump = doc.pump_config().map_err(invalid)?;
    let ens = doc.ensemble_config().map_err(invalid)?;
    let mut r = Report::new("rates", config_json(doc), vec!["quantity", "value", "unit"]);
    let mut row = |q: &str, v: Cell, unit: &str| r.push_row(vec![q.into(), v, unit.into()]);

    row("p_two_photon", p_two_photon(&sc)?.into(), "1");
    row("one_photon_ratio", one_photon_ratio(&sc).into(), "1");
    let ratio = pump_excitation_ratio(&sc, &pump)?;
    row("pump_excitation_ratio", ratio.into(), "1");
    row("pump_detuning", pump.delta().angular().into(), "rad/s");
    let floor = min_pump_detuning(
        Intensity::from_w_per_cm2(pump.intensity_one().to_w_per_cm2().max(pump.intensity_two().to_w_per_cm2())),
        sc.ell_atom(),
    )?;
    row("min_pump_detuning", floor.angular().into(), "rad/s");
    let count = molecule_count(&ens, sc.area())?;
    row("molecules_total", count.total.into(), "1");
    row("molecules_active", count.active.into(), "1");
    row("excitations", ens.excitations.into(), "1");
    row("collective_enhancement", collective_enhancement(&ens)?.into(), "1");
    let nu = interference_frequency(sc.e12(), sc.mass(), sc.ell_atom());
    let in_domain = nu.is_ok();
    row("interference_frequency", nu.ok().map(|f| f.angular()).into(), "rad/s");
    r.add_summary("interference_frequency_in_domain", in_domain);
    Ok(r)
}

fn sweep(doc: &ConfigDocument) -> Result<Report, CliError> {
    let s = doc.sweep.clone().ok_or_else(|| invalid("missing [sweep] section".into()))?;
    let p = s.target_error.expect("resolved");
    match s.kind.unwrap_or_default() {
        SweepKind::Tradeoff => {
            let template = doc.problem_config().map_err(invalid)?;
            let template = zeno_core::optimizer::OptimizationProblem { target_error: p, ..template };
            let points = tradeoff_curve_for(&template, s.segment_counts.as_deref().unwrap_or_default())?;
            let mut r = Report::new("sweep", config_json(doc), vec!["segments", "kappa", "feasible"]);
            for pt in points {
                let k = pt.kappa();
                r.push_row(vec![pt.segments.into(), k.into(), k.is_some().into()]);
            }
            r.add_summary("kind", "tradeoff");
            r.add_summary("kappa_required", kappa_required(p)?);
            Ok(r)
        }
        SweepKind::ControlLoss => {
            let large_n = s.large_segments.expect("resolved");
            let sweep = control_loss_sweep(p, large_n, s.fractions.as_deref().unwrap_or_default())?;
            let report = control_loss_inflation(p, large_n)?;
            let mut r = Report::new("sweep", config_json(doc), vec!["fraction", "xi_control", "kappa", "ratio"]);
            for pt in sweep {
                r.push_row(vec![pt.fraction.into(), pt.xi_control.into(), pt.kappa.into(), pt.ratio.into()]);
            }
            r.add_summary("kind", "control_loss");
            r.add_summary("inflation_factor", report.ratio);
            r.add_summary("reference_factor", report.reference_factor);
            r.add_summary("model", report.model);
            Ok(r)
        }
    }
}

fn franson(doc: &ConfigDocument) -> Result<Report, CliError> {
    let problem = doc.problem_config().map_err(invalid)?;
    let (p, n) = (problem.target_error, problem.segments);
    let required = kappa_required(p)?;
    let fr = franson_min_kappa(p, n)?;
    let mut r = Report::new("franson", config_json(doc), vec!["scheme", "kappa", "xi_one", "xi_two"]);
    let law = asymptotic_params(p, n)?;
    r.push_row(vec!["three_level".into(), required.into(), law.xi_one.into(), law.xi_two.into()]);
    r.push_row(vec!["franson".into(), fr.kappa.into(), fr.xi_one.into(), fr.xi_two.into()]);
    r.add_summary("ratio", fr.kappa / required);
    let err = franson_error(n, law.xi_one, law.xi_two)?;
    r.add_summary("franson_error_at_three_level_params", err);
    r.add_summary("nonphysical", !(0.0..=1.0).contains(&err));
    Ok(r)
}
