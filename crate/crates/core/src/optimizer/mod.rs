//! Minimal absorption ratio `kappa = xi_two / xi_one` at a fixed error budget.
//!
//! The search is a logarithmic grid over the two exponents followed by a
//! Nelder–Mead refinement of `ln xi_one` (and the splitter angle when it is
//! scanned). For every candidate `xi_one` the smallest feasible `xi_two` is
//! found by bisection, so each objective value is a feasible `kappa` or `+inf`.

pub mod simplex;

use std::cell::Cell;
use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::design::{absorption_prob_from_xi, franson_error, kappa_required};
use crate::error::{domain, invalid, open_unit, Error, Result};
use crate::gate::{gate_error, scenario_outcome, Aggregate, GateConfig, Scenario};
use crate::rates::{required_repetitions, PhysicalScenario};

pub use simplex::{nelder_mead, Minimum, NelderMeadSettings};

/// Slack allowed when re-verifying a result with [`gate_error`].
pub const FEASIBILITY_SLACK: f64 = 1e-6;

/// How the control photon's per-segment loss relates to the gate parameters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControlLossMode {
    #[default]
    None,
    /// `xi_control = xi_one`: the control photon suffers the target's one-photon loss.
    EqualToTarget,
    /// `xi_control = fraction * xi_one`.
    Proportional(f64),
    /// Constant `xi_control`.
    Fixed(f64),
}

impl ControlLossMode {
    pub fn xi_control(self, xi_one: f64) -> f64 {
        match self {
            ControlLossMode::None => 0.0,
            ControlLossMode::EqualToTarget => xi_one,
            ControlLossMode::Proportional(f) => f * xi_one,
            ControlLossMode::Fixed(x) => x,
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            ControlLossMode::Proportional(f) if !(f >= 0.0 && f.is_finite()) => {
                Err(invalid("control_loss_fraction", f, "must be finite and non-negative"))
            }
            ControlLossMode::Fixed(x) if !(x >= 0.0 && x.is_finite()) => {
                Err(invalid("xi_control", x, "must be finite and non-negative"))
            }
            _ => Ok(()),
        }
    }
}

/// Treatment of the splitter angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsilonSearch {
    /// `epsilon = pi / (sqrt(2) N)`.
    #[default]
    Asymptotic,
    /// `epsilon` scanned over `[0.5, 1.5] * pi / (sqrt(2) N)`.
    Scan,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizationProblem {
    pub segments: usize,
    pub target_error: f64,
    #[serde(default)]
    pub aggregate: Aggregate,
    #[serde(default)]
    pub control_loss: ControlLossMode,
    #[serde(default)]
    pub epsilon_search: EpsilonSearch,
}

impl OptimizationProblem {
    pub fn new(segments: usize, target_error: f64) -> Result<Self> {
        let p = Self {
            segments,
            target_error,
            aggregate: Aggregate::default(),
            control_loss: ControlLossMode::default(),
            epsilon_search: EpsilonSearch::default(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_aggregate(mut self, aggregate: Aggregate) -> Self {
        self.aggregate = aggregate;
        self
    }

    pub fn with_control_loss(mut self, mode: ControlLossMode) -> Result<Self> {
        mode.validate()?;
        self.control_loss = mode;
        Ok(self)
    }

    pub fn with_epsilon_search(mut self, search: EpsilonSearch) -> Self {
        self.epsilon_search = search;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.segments == 0 {
            return Err(invalid("segments", 0.0, "at least one segment is required"));
        }
        open_unit("target_error", self.target_error)?;
        self.control_loss.validate()
    }

    fn asymptotic_epsilon(&self) -> f64 {
        PI / (SQRT_2 * self.segments as f64)
    }
}

/// Grid and refinement parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchSettings {
    pub points_per_decade: usize,
    pub xi_one_range: (f64, f64),
    pub xi_two_range: (f64, f64),
    /// Multiply both ranges by `min(1, 10 / N)`.
    pub scale_with_segments: bool,
    /// Splitter-angle factors `(low, high, count)` used in scan mode.
    pub epsilon_factors: (f64, f64, usize),
    pub max_iterations: usize,
}

impl Default for SearchSettings {
    fn default() -> Self {
        Self {
            points_per_decade: 40,
            xi_one_range: (1e-4, 1.0),
            xi_two_range: (1e-2, 1e2),
            scale_with_segments: true,
            epsilon_factors: (0.5, 1.5, 21),
            max_iterations: 500,
        }
    }
}

impl SearchSettings {
    fn scaled_ranges(&self, segments: usize) -> ((f64, f64), (f64, f64)) {
        let s = if self.scale_with_segments {
            (10.0 / segments as f64).min(1.0)
        } else {
            1.0
        };
        let (a, b) = self.xi_one_range;
        let (c, d) = self.xi_two_range;
        ((a * s, b * s), (c * s, d * s))
    }

    pub fn validate(&self) -> Result<()> {
        if self.points_per_decade == 0 {
            return Err(invalid("points_per_decade", 0.0, "must be positive"));
        }
        for (name, (lo, hi)) in [("xi_one_range", self.xi_one_range), ("xi_two_range", self.xi_two_range)] {
            if !(lo > 0.0 && hi > lo && hi.is_finite()) {
                return Err(invalid(name, lo, "range must satisfy 0 < low < high"));
            }
        }
        let (lo, hi, count) = self.epsilon_factors;
        if !(lo > 0.0 && hi >= lo) || count == 0 {
            return Err(invalid("epsilon_factors", lo, "need 0 < low <= high and at least one point"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub epsilon: f64,
    pub xi_one: f64,
    pub xi_two: f64,
    pub xi_control: f64,
    pub kappa: f64,
    pub achieved_error: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// Best ratio found by the grid stage alone.
    pub grid_kappa: f64,
}

impl OptimizationResult {
    pub fn config(&self, segments: usize) -> Result<GateConfig> {
        GateConfig::new(segments, self.epsilon, self.xi_one, self.xi_two)?.with_control_loss(self.xi_control)
    }

    /// Per-segment absorption probabilities `(two-photon, one-photon)`.
    pub fn segment_probabilities(&self) -> (f64, f64) {
        (
            absorption_prob_from_xi(self.xi_two).unwrap_or(f64::NAN),
            absorption_prob_from_xi(self.xi_one).unwrap_or(f64::NAN),
        )
    }
}

fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let decades = (hi / lo).log10();
    let steps = (decades * per_decade as f64).round().max(1.0) as usize;
    (0..=steps)
        .map(|k| lo * 10f64.powf(decades * k as f64 / steps as f64))
        .collect()
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
        .collect()
}

/// Objective pieces at a fixed splitter angle.
struct Slice {
    segments: usize,
    epsilon: f64,
}

impl Slice {
    fn config(&self, xi: f64) -> GateConfig {
        GateConfig::new(self.segments, self.epsilon, xi, xi).expect("slice parameters were validated")
    }

    /// Worst control-absent failure; depends on `xi_one` only.
    fn absent_failure(&self, xi_one: f64) -> f64 {
        let cfg = self.config(xi_one);
        Scenario::ALL
            .iter()
            .filter(|s| !s.control_present())
            .map(|&s| scenario_outcome(&cfg, s).failure())
            .fold(0.0, f64::max)
    }

    /// Smallest control-present success without control loss; depends on `xi_two` only.
    fn present_success(&self, xi_two: f64) -> f64 {
        let cfg = self.config(xi_two);
        Scenario::ALL
            .iter()
            .filter(|s| s.control_present())
            .map(|&s| scenario_outcome(&cfg, s).p_success)
            .fold(f64::INFINITY, f64::min)
    }
}

struct Candidate {
    epsilon: f64,
    xi_one: f64,
    xi_two: f64,
    kappa: f64,
}

impl Candidate {
    fn better_than(&self, other: &Candidate) -> bool {
        (self.kappa, self.epsilon, self.xi_one, self.xi_two) < (other.kappa, other.epsilon, other.xi_one, other.xi_two)
    }
}

struct Search<'a> {
    problem: &'a OptimizationProblem,
    xi_one_bounds: (f64, f64),
    xi_two_bounds: (f64, f64),
    evaluations: Cell<usize>,
}

impl Search<'_> {
    fn survival(&self, xi_one: f64) -> f64 {
        (-2.0 * self.problem.segments as f64 * self.problem.control_loss.xi_control(xi_one)).exp()
    }

    fn feasible(&self, absent_failure: f64, present_success: f64, survival: f64) -> bool {
        let present_failure = 1.0 - present_success * survival;
        self.problem.aggregate.combine(absent_failure, present_failure) <= self.problem.target_error
    }

    fn grid_stage(&self, epsilon: f64, settings: &SearchSettings) -> Option<Candidate> {
        let slice = Slice {
            segments: self.problem.segments,
            epsilon,
        };
        let xs1 = log_grid(self.xi_one_bounds.0, self.xi_one_bounds.1, settings.points_per_decade);
        let xs2 = log_grid(self.xi_two_bounds.0, self.xi_two_bounds.1, settings.points_per_decade);
        let absent: Vec<f64> = xs1.par_iter().map(|&x| slice.absent_failure(x)).collect();
        let present: Vec<f64> = xs2.par_iter().map(|&x| slice.present_success(x)).collect();
        self.evaluations.set(self.evaluations.get() + xs1.len() + xs2.len());

        let mut best: Option<Candidate> = None;
        for (&x1, &fa) in xs1.iter().zip(&absent) {
            let surv = self.survival(x1);
            let hit = xs2
                .iter()
                .zip(&present)
                .find(|(&x2, &s)| x2 >= x1 && self.feasible(fa, s, surv));
            if let Some((&x2, _)) = hit {
                let c = Candidate {
                    epsilon,
                    xi_one: x1,
                    xi_two: x2,
                    kappa: x2 / x1,
                };
                if best.as_ref().is_none_or(|b| c.better_than(b)) {
                    best = Some(c);
                }
            }
        }
        best
    }

    /// Smallest feasible `xi_two` for the given angle and `xi_one`, or `None`.
    fn min_xi_two(&self, epsilon: f64, xi_one: f64) -> Option<f64> {
        let slice = Slice {
            segments: self.problem.segments,
            epsilon,
        };
        let count = |n: usize| self.evaluations.set(self.evaluations.get() + n);
        let fa = slice.absent_failure(xi_one);
        let surv = self.survival(xi_one);
        count(1);
        let ok = |x2: f64| {
            count(1);
            self.feasible(fa, slice.present_success(x2), surv)
        };
        let mut lo = self.xi_two_bounds.0.max(xi_one);
        let mut hi = self.xi_two_bounds.1;
        if lo > hi || !ok(hi) {
            return None;
        }
        if ok(lo) {
            return Some(lo);
        }
        for _ in 0..200 {
            if (hi / lo).ln() <= 1e-13 {
                break;
            }
            let mid = (lo * hi).sqrt();
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }

    fn angle_ok(epsilon: f64) -> bool {
        (0.0..PI / 2.0).contains(&epsilon)
    }

    fn refine(&self, start: &Candidate, settings: &SearchSettings) -> (Candidate, bool) {
        let eps0 = self.problem.asymptotic_epsilon();
        let (flo, fhi, count) = settings.epsilon_factors;
        let scan = self.problem.epsilon_search == EpsilonSearch::Scan;
        let (l1, h1) = (self.xi_one_bounds.0.ln(), self.xi_one_bounds.1.ln());
        let decode = |x: &[f64]| {
            let eps = if scan { x[1] * eps0 } else { eps0 };
            (eps, x[0])
        };
        let objective = |x: &[f64]| {
            let (eps, ln1) = decode(x);
            if !(l1..=h1).contains(&ln1) || !Self::angle_ok(eps) {
                return f64::INFINITY;
            }
            if scan && !(flo..=fhi).contains(&x[1]) {
                return f64::INFINITY;
            }
            let x1 = ln1.exp();
            self.min_xi_two(eps, x1).map_or(f64::INFINITY, |x2| x2 / x1)
        };
        let grid_step = std::f64::consts::LN_10 / settings.points_per_decade as f64;
        let (x0, steps) = if scan {
            let fstep = if count > 1 { (fhi - flo) / (count - 1) as f64 } else { 0.05 };
            (vec![start.xi_one.ln(), start.epsilon / eps0], vec![2.0 * grid_step, fstep])
        } else {
            (vec![start.xi_one.ln()], vec![2.0 * grid_step])
        };
        let nm = NelderMeadSettings {
            max_iterations: settings.max_iterations,
            ..Default::default()
        };
        let m = nelder_mead(objective, &x0, &steps, &nm);
        let (eps, ln1) = decode(&m.point);
        let x1 = ln1.exp();
        match self.min_xi_two(eps, x1) {
            Some(x2) if m.value.is_finite() => (
                Candidate {
                    epsilon: eps,
                    xi_one: x1,
                    xi_two: x2,
                    kappa: x2 / x1,
                },
                m.converged,
            ),
            _ => (
                Candidate {
                    epsilon: start.epsilon,
                    xi_one: start.xi_one,
                    xi_two: start.xi_two,
                    kappa: start.kappa,
                },
                false,
            ),
        }
    }

    fn verify(&self, c: &Candidate) -> Option<(f64, f64)> {
        let xi_c = self.problem.control_loss.xi_control(c.xi_one);
        let cfg = GateConfig::new(self.problem.segments, c.epsilon, c.xi_one, c.xi_two)
            .and_then(|g| g.with_control_loss(xi_c))
            .ok()?;
        let achieved = gate_error(&cfg).aggregate(self.problem.aggregate);
        (achieved <= self.problem.target_error + FEASIBILITY_SLACK).then_some((achieved, xi_c))
    }
}

/// Minimal-`kappa` gate parameters with the default search settings.
pub fn minimize_kappa(problem: &OptimizationProblem) -> Result<OptimizationResult> {
    minimize_kappa_with(problem, &SearchSettings::default())
}

pub fn minimize_kappa_with(problem: &OptimizationProblem, settings: &SearchSettings) -> Result<OptimizationResult> {
    problem.validate()?;
    settings.validate()?;
    let infeasible = || Error::Infeasible {
        segments: problem.segments,
        target_error: problem.target_error,
    };
    let (r1, r2) = settings.scaled_ranges(problem.segments);
    let search = Search {
        problem,
        xi_one_bounds: r1,
        xi_two_bounds: r2,
        evaluations: Cell::new(0),
    };

    let eps0 = problem.asymptotic_epsilon();
    let angles: Vec<f64> = match problem.epsilon_search {
        EpsilonSearch::Asymptotic => vec![eps0],
        EpsilonSearch::Scan => {
            let (lo, hi, n) = settings.epsilon_factors;
            linspace(lo, hi, n).into_iter().map(|f| f * eps0).collect()
        }
    };
    let mut grid_best: Option<Candidate> = None;
    for eps in angles.into_iter().filter(|&e| Search::angle_ok(e)) {
        if let Some(c) = search.grid_stage(eps, settings) {
            if grid_best.as_ref().is_none_or(|b| c.better_than(b)) {
                grid_best = Some(c);
            }
        }
    }
    let grid_best = grid_best.ok_or_else(infeasible)?;

    let grid_kappa = grid_best.kappa;
    let (refined, converged) = search.refine(&grid_best, settings);
    let (best, converged) = if refined.kappa <= grid_best.kappa {
        (refined, converged)
    } else {
        (grid_best, false)
    };
    let (best, (achieved, xi_c)) = match search.verify(&best) {
        Some(v) => (best, v),
        None => return Err(infeasible()),
    };
    Ok(OptimizationResult {
        epsilon: best.epsilon,
        xi_one: best.xi_one,
        xi_two: best.xi_two,
        xi_control: xi_c,
        kappa: best.xi_two / best.xi_one,
        achieved_error: achieved,
        evaluations: search.evaluations.get(),
        converged,
        grid_kappa,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffPoint {
    pub segments: usize,
    pub result: std::result::Result<OptimizationResult, Error>,
}

impl TradeoffPoint {
    pub fn kappa(&self) -> Option<f64> {
        self.result.as_ref().ok().map(|r| r.kappa)
    }
}

/// Minimal `kappa` for each segment count with the default problem settings.
pub fn tradeoff_curve(p_error: f64, segments: &[usize]) -> Result<Vec<TradeoffPoint>> {
    let template = OptimizationProblem::new(1, p_error)?;
    tradeoff_curve_for(&template, segments)
}

/// Like [`tradeoff_curve`], taking all settings except `segments` from `template`.
pub fn tradeoff_curve_for(template: &OptimizationProblem, segments: &[usize]) -> Result<Vec<TradeoffPoint>> {
    template.validate()?;
    Ok(segments
        .iter()
        .map(|&n| TradeoffPoint {
            segments: n,
            result: minimize_kappa(&OptimizationProblem { segments: n, ..*template }),
        })
        .collect())
}

/// Description of the control-loss model attached to inflation reports.
pub const CONTROL_LOSS_MODEL: &str = "control photon damped by exp(-xi_control) per segment \
(probability exp(-2 N xi_control) to survive the gate); xi_control = fraction * xi_one; \
a lost control counts as a failure of the control-present scenarios";

/// Factor quoted for equal control and target loss.
pub const REFERENCE_INFLATION_FACTOR: f64 = 25.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InflationReport {
    pub target_error: f64,
    pub segments: usize,
    pub aggregate: Aggregate,
    pub kappa_without_loss: f64,
    pub kappa_with_loss: f64,
    pub ratio: f64,
    pub reference_factor: f64,
    pub model: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    /// `xi_control / xi_one`.
    pub fraction: f64,
    pub kappa: f64,
    pub ratio: f64,
    pub xi_control: f64,
}

fn large_n_problem(p_error: f64, segments: usize) -> Result<OptimizationProblem> {
    if segments < 1000 {
        return Err(domain("large_n", segments as f64, "inflation is defined for N >= 1000"));
    }
    OptimizationProblem::new(segments, p_error)
}

/// `min kappa` with `xi_control = xi_one` over `min kappa` without control loss.
pub fn control_loss_inflation(p_error: f64, large_n: usize) -> Result<InflationReport> {
    let base = large_n_problem(p_error, large_n)?;
    let without = minimize_kappa(&base)?;
    let with = minimize_kappa(&base.with_control_loss(ControlLossMode::EqualToTarget)?)?;
    Ok(InflationReport {
        target_error: p_error,
        segments: large_n,
        aggregate: base.aggregate,
        kappa_without_loss: without.kappa,
        kappa_with_loss: with.kappa,
        ratio: with.kappa / without.kappa,
        reference_factor: REFERENCE_INFLATION_FACTOR,
        model: CONTROL_LOSS_MODEL.to_string(),
    })
}

/// Inflation as the control loss grows from zero to the target's loss.
pub fn control_loss_sweep(p_error: f64, large_n: usize, fractions: &[f64]) -> Result<Vec<SweepPoint>> {
    let base = large_n_problem(p_error, large_n)?;
    let reference = minimize_kappa(&base)?;
    fractions
        .iter()
        .map(|&f| {
            let r = minimize_kappa(&base.with_control_loss(ControlLossMode::Proportional(f))?)?;
            Ok(SweepPoint {
                fraction: f,
                kappa: r.kappa,
                ratio: r.kappa / reference.kappa,
                xi_control: r.xi_control,
            })
        })
        .collect()
}

/// Optimum of the reference scheme with absorbers in every rail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FransonOptimum {
    pub target_error: f64,
    pub segments: usize,
    pub xi_one: f64,
    pub xi_two: f64,
    pub kappa: f64,
    /// `kappa` divided by `pi^2 / (2 P^2)`.
    pub ratio_to_required: f64,
}

/// Minimizes `xi_two / xi_one` subject to the reference-scheme error equal to `P`.
///
/// For fixed `a = N xi_one` the budget fixes `xi_two`; `kappa(a)` is then
/// minimized by golden-section search on `(0, P/4)`.
pub fn franson_min_kappa(p_error: f64, segments: usize) -> Result<FransonOptimum> {
    let p = open_unit("p_error", p_error)?;
    if segments == 0 {
        return Err(invalid("segments", 0.0, "at least one segment is required"));
    }
    let n = segments as f64;
    // xi_two saturating the budget for a given xi_one
    let xi_two_for = |xi_one: f64| 2.0 * PI * PI / (n * (p - 4.0 * n * xi_one));
    let kappa = |a: f64| xi_two_for(a / n) / (a / n);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0, p / 4.0);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (kappa(c), kappa(d));
    for _ in 0..200 {
        if hi - lo <= 1e-15 * p {
            break;
        }
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = kappa(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = kappa(d);
        }
    }
    let xi_one = 0.5 * (lo + hi) / n;
    let xi_two = xi_two_for(xi_one);
    let err = franson_error(segments, xi_one, xi_two)?;
    debug_assert!((err - p).abs() <= 1e-9 * p);
    let k = xi_two / xi_one;
    Ok(FransonOptimum {
        target_error: p,
        segments,
        xi_one,
        xi_two,
        kappa: k,
        ratio_to_required: k / kappa_required(p)?,
    })
}

/// Inputs of the example table: `(P, N, reference kappa)`.
pub const TABLE1_ROWS: [(f64, usize, f64); 3] = [(0.5, 10, 12.0), (0.25, 25, 75.0), (0.1, 60, 760.0)];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub target_error: f64,
    pub segments: usize,
    pub p_two_segment: f64,
    pub p_one_segment: f64,
    pub kappa: f64,
    pub repetitions: u64,
    pub reference_kappa: f64,
    pub result: OptimizationResult,
}

/// Example table with the default problem settings and physical scenario.
pub fn reproduce_table1() -> Result<Vec<Table1Row>> {
    reproduce_table1_with(Aggregate::default(), EpsilonSearch::default(), &PhysicalScenario::default())
}

pub fn reproduce_table1_with(
    aggregate: Aggregate,
    epsilon_search: EpsilonSearch,
    scenario: &PhysicalScenario,
) -> Result<Vec<Table1Row>> {
    TABLE1_ROWS
        .iter()
        .map(|&(p, n, reference)| {
            let problem = OptimizationProblem::new(n, p)?
                .with_aggregate(aggregate)
                .with_epsilon_search(epsilon_search);
            let r = minimize_kappa(&problem)?;
            let (p_two, p_one) = r.segment_probabilities();
            Ok(Table1Row {
                target_error: p,
                segments: n,
                p_two_segment: p_two,
                p_one_segment: p_one,
                kappa: r.kappa,
                repetitions: required_repetitions(r.kappa, scenario)?,
                reference_kappa: reference,
                result: r,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_logarithmic() {
        let g = log_grid(1e-4, 1.0, 40);
        assert_eq!(g.len(), 161);
        assert!((g[40] / 1e-3 - 1.0).abs() < 1e-12);
        assert!((g[160] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_segment_is_infeasible() {
        let p = OptimizationProblem::new(1, 0.5).unwrap().with_aggregate(Aggregate::Sum);
        assert!(matches!(minimize_kappa(&p), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn invalid_problems_are_rejected() {
        assert!(OptimizationProblem::new(0, 0.5).is_err());
        assert!(OptimizationProblem::new(10, 1.0).is_err());
        assert!(OptimizationProblem::new(10, 0.5)
            .unwrap()
            .with_control_loss(ControlLossMode::Fixed(-1.0))
            .is_err());
    }

    #[test]
    fn result_is_feasible_and_consistent() {
        let p = OptimizationProblem::new(10, 0.5).unwrap();
        let r = minimize_kappa(&p).unwrap();
        assert!(r.achieved_error <= 0.5 + FEASIBILITY_SLACK);
        assert!((r.kappa - r.xi_two / r.xi_one).abs() <= 1e-12 * r.kappa);
        assert!(r.kappa <= r.grid_kappa);
        let again = minimize_kappa(&p).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn franson_optimum_is_64_times_required() {
        for p in [0.5, 0.25, 0.1] {
            let f = franson_min_kappa(p, 100).unwrap();
            assert!((f.ratio_to_required / 64.0 - 1.0).abs() < 1e-6, "{p}: {}", f.ratio_to_required);
        }
    }

    #[test]
    fn large_n_sum_optimum_respects_required_ratio() {
        for p in [0.1, 0.05] {
            let problem = OptimizationProblem::new(1000, p).unwrap().with_aggregate(Aggregate::Sum);
            let r = minimize_kappa(&problem).unwrap();
            assert!(r.kappa >= 0.95 * kappa_required(p).unwrap(), "{p}: {}", r.kappa);
        }
    }

    #[test]
    fn tradeoff_is_non_increasing() {
        let curve = tradeoff_curve(0.5, &[8, 10, 16, 22, 44]).unwrap();
        let ks: Vec<f64> = curve.iter().map(|t| t.kappa().unwrap()).collect();
        assert!(ks.windows(2).all(|w| w[1] <= w[0]), "{ks:?}");
    }

    #[test]
    fn scanning_the_angle_never_hurts() {
        let base = OptimizationProblem::new(25, 0.25).unwrap();
        let fixed = minimize_kappa(&base).unwrap();
        let scanned = minimize_kappa(&base.with_epsilon_search(EpsilonSearch::Scan)).unwrap();
        assert!(scanned.kappa <= fixed.kappa * (1.0 + 1e-9));
        assert!(scanned.achieved_error <= 0.25 + FEASIBILITY_SLACK);
    }

    #[test]
    fn control_loss_raises_kappa() {
        let base = OptimizationProblem::new(40, 0.25).unwrap();
        let mut last = 0.0;
        for f in [0.0, 0.5, 1.0] {
            let r = minimize_kappa(&base.with_control_loss(ControlLossMode::Proportional(f)).unwrap()).unwrap();
            assert!(r.kappa >= last);
            assert!(r.achieved_error <= 0.25 + FEASIBILITY_SLACK);
            last = r.kappa;
        }
        let eq = minimize_kappa(&base.with_control_loss(ControlLossMode::EqualToTarget).unwrap()).unwrap();
        assert_eq!(eq.kappa, last);
    }

    #[test]
    fn inflation_requires_large_n() {
        assert!(control_loss_inflation(0.1, 100).is_err());
    }
}
