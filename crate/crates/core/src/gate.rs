//! Amplitude-level model of the segmented three-branch interferometer.
//!
//! The target photon occupies three rails, ordered `upper = 0`, `middle = 1`,
//! `lower = 2`. One segment is a beam splitter between the upper and middle
//! rails, an absorber on the middle rail with survival amplitude `e^{-xi}`, and
//! a beam splitter between the middle and lower rails. The control photon,
//! when present, sits in the middle rail and switches the absorber exponent
//! from `xi_one` to `xi_two`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Tolerance used for every exact identity (norms, partitions, ratios).
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

/// Parameters of a single segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentParams {
    epsilon: f64,
    xi: f64,
}

impl SegmentParams {
    pub fn new(epsilon: f64, xi: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        check_exponent("xi", xi)?;
        Ok(Self { epsilon, xi })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && (0.0..FRAC_PI_2).contains(&epsilon) {
        Ok(())
    } else {
        Err(invalid("epsilon", epsilon, "mixing angle must lie in [0, pi/2)"))
    }
}

fn check_exponent(name: &'static str, xi: f64) -> Result<()> {
    // +inf is a legitimate limit (perfect absorber).
    if xi >= 0.0 && !xi.is_nan() {
        Ok(())
    } else {
        Err(invalid(name, xi, "absorber exponent must be non-negative"))
    }
}

/// Full parameterization of an N-segment gate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGateConfig", into = "RawGateConfig")]
pub struct GateConfig {
    segments: usize,
    epsilon: f64,
    xi_one: f64,
    xi_two: f64,
    xi_control: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGateConfig {
    segments: usize,
    epsilon: f64,
    xi_one: f64,
    xi_two: f64,
    #[serde(default)]
    xi_control: f64,
}

impl TryFrom<RawGateConfig> for GateConfig {
    type Error = crate::Error;

    fn try_from(raw: RawGateConfig) -> Result<Self> {
        GateConfig::new(raw.segments, raw.epsilon, raw.xi_one, raw.xi_two)?
            .with_control_loss(raw.xi_control)
    }
}

impl From<GateConfig> for RawGateConfig {
    fn from(c: GateConfig) -> Self {
        RawGateConfig {
            segments: c.segments,
            epsilon: c.epsilon,
            xi_one: c.xi_one,
            xi_two: c.xi_two,
            xi_control: c.xi_control,
        }
    }
}

impl GateConfig {
    /// Builds a gate with no control-photon loss.
    ///
    /// `epsilon = 0` is accepted so that the identity gate can be expressed.
    pub fn new(segments: usize, epsilon: f64, xi_one: f64, xi_two: f64) -> Result<Self> {
        if segments == 0 {
            return Err(invalid("segments", 0.0, "at least one segment is required"));
        }
        check_epsilon(epsilon)?;
        check_exponent("xi_one", xi_one)?;
        check_exponent("xi_two", xi_two)?;
        if xi_one > xi_two {
            return Err(invalid(
                "xi_two",
                xi_two,
                "two-photon exponent must not be smaller than xi_one",
            ));
        }
        Ok(Self {
            segments,
            epsilon,
            xi_one,
            xi_two,
            xi_control: 0.0,
        })
    }

    /// Sets the per-segment loss exponent of the control photon.
    pub fn with_control_loss(mut self, xi_control: f64) -> Result<Self> {
        check_exponent("xi_control", xi_control)?;
        self.xi_control = xi_control;
        Ok(self)
    }

    pub fn with_segments(mut self, segments: usize) -> Result<Self> {
        if segments == 0 {
            return Err(invalid("segments", 0.0, "at least one segment is required"));
        }
        self.segments = segments;
        Ok(self)
    }

    pub fn segments(&self) -> usize {
        self.segments
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn xi_one(&self) -> f64 {
        self.xi_one
    }

    pub fn xi_two(&self) -> f64 {
        self.xi_two
    }

    pub fn xi_control(&self) -> f64 {
        self.xi_control
    }

    /// Absorber exponent seen by the target photon.
    pub fn target_exponent(&self, control_present: bool) -> f64 {
        if control_present {
            self.xi_two
        } else {
            self.xi_one
        }
    }

    /// Probability that the control photon survives all N segments.
    pub fn control_survival(&self) -> f64 {
        (-2.0 * self.segments as f64 * self.xi_control).exp()
    }

    pub fn segment(&self, control_present: bool) -> SegmentParams {
        SegmentParams {
            epsilon: self.epsilon,
            xi: self.target_exponent(control_present),
        }
    }
}

/// Rail index of the target photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Upper = 0,
    Middle = 1,
    Lower = 2,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::Upper, Branch::Middle, Branch::Lower];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Real amplitudes of the target photon over the three rails.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BranchAmplitudes {
    pub upper: f64,
    pub middle: f64,
    pub lower: f64,
}

impl BranchAmplitudes {
    /// Validated constructor; the norm may not exceed one.
    pub fn new(upper: f64, middle: f64, lower: f64) -> Result<Self> {
        let a = Self {
            upper,
            middle,
            lower,
        };
        let n = a.norm_squared();
        if !n.is_finite() || n > 1.0 + IDENTITY_TOLERANCE {
            return Err(invalid("input", n, "squared norm of the amplitudes exceeds one"));
        }
        Ok(a)
    }

    /// All amplitude in a single rail.
    pub fn basis(branch: Branch) -> Self {
        let mut v = [0.0; 3];
        v[branch.index()] = 1.0;
        Self::from_array(v)
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        Self {
            upper: v[0],
            middle: v[1],
            lower: v[2],
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.upper, self.middle, self.lower]
    }

    pub fn get(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Upper => self.upper,
            Branch::Middle => self.middle,
            Branch::Lower => self.lower,
        }
    }

    pub fn norm_squared(&self) -> f64 {
        self.upper * self.upper + self.middle * self.middle + self.lower * self.lower
    }

    fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.upper, self.middle, self.lower)
    }

    fn from_vector(v: Vector3<f64>) -> Self {
        Self::from_array([v[0], v[1], v[2]])
    }
}

/// Transfer matrix of one segment.
///
/// Equals `BS(middle, lower) * diag(1, e^{-xi}, 1) * BS(upper, middle)` where
/// each beam splitter is the rotation `[[c, -s], [s, c]]` on its two rails.
pub fn segment_matrix(p: SegmentParams) -> Matrix3<f64> {
    let (s, c) = p.epsilon.sin_cos();
    let d = (-p.xi).exp();
    Matrix3::new(
        c, -s, 0.0, //
        d * c * s, d * c * c, -s, //
        d * s * s, d * c * s, c,
    )
}

/// Applies the N-segment transfer matrix to `input`.
///
/// The matrix power is taken by repeated multiplication so that results are
/// reproducible bit for bit.
pub fn propagate(config: &GateConfig, control_present: bool, input: BranchAmplitudes) -> BranchAmplitudes {
    let m = segment_matrix(config.segment(control_present));
    let mut v = input.to_vector();
    for _ in 0..config.segments {
        v = m * v;
    }
    BranchAmplitudes::from_vector(v)
}

/// One of the four computational-basis situations the gate must handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    ControlAbsentUpper,
    ControlAbsentLower,
    ControlPresentUpper,
    ControlPresentLower,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [
        Scenario::ControlAbsentUpper,
        Scenario::ControlAbsentLower,
        Scenario::ControlPresentUpper,
        Scenario::ControlPresentLower,
    ];

    pub fn control_present(self) -> bool {
        matches!(self, Scenario::ControlPresentUpper | Scenario::ControlPresentLower)
    }

    pub fn input_branch(self) -> Branch {
        match self {
            Scenario::ControlAbsentUpper | Scenario::ControlPresentUpper => Branch::Upper,
            Scenario::ControlAbsentLower | Scenario::ControlPresentLower => Branch::Lower,
        }
    }

    /// Absent control swaps upper and lower; present control freezes the target.
    pub fn designated_branch(self) -> Branch {
        match self {
            Scenario::ControlAbsentUpper => Branch::Lower,
            Scenario::ControlAbsentLower => Branch::Upper,
            Scenario::ControlPresentUpper => Branch::Upper,
            Scenario::ControlPresentLower => Branch::Lower,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::ControlAbsentUpper => "control_absent_upper",
            Scenario::ControlAbsentLower => "control_absent_lower",
            Scenario::ControlPresentUpper => "control_present_upper",
            Scenario::ControlPresentLower => "control_present_lower",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Probability partition of one scenario. The four entries sum to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioOutcome {
    pub p_success: f64,
    pub p_absorbed: f64,
    pub p_wrong_branch: f64,
    pub p_control_lost: f64,
}

impl ScenarioOutcome {
    pub fn failure(&self) -> f64 {
        1.0 - self.p_success
    }

    pub fn total(&self) -> f64 {
        self.p_success + self.p_absorbed + self.p_wrong_branch + self.p_control_lost
    }

    fn from_output(output: BranchAmplitudes, designated: Branch, control_survival: f64) -> Self {
        let kept = output.norm_squared();
        let in_branch = output.get(designated).powi(2);
        Self {
            p_success: in_branch * control_survival,
            p_absorbed: 1.0 - kept,
            p_wrong_branch: kept - in_branch,
            p_control_lost: in_branch * (1.0 - control_survival),
        }
    }
}

/// How scenario failures are combined into a single gate error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregate {
    /// Worst control-absent failure plus worst control-present failure.
    Sum,
    /// Worst failure over all four scenarios.
    #[default]
    Max,
}

impl Aggregate {
    /// Combines the worst failure of each control group.
    pub fn combine(self, absent_failure: f64, present_failure: f64) -> f64 {
        match self {
            Aggregate::Sum => absent_failure + present_failure,
            Aggregate::Max => absent_failure.max(present_failure),
        }
    }
}

impl fmt::Display for Aggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregate::Sum => "sum",
            Aggregate::Max => "max",
        })
    }
}

impl std::str::FromStr for Aggregate {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sum" => Ok(Aggregate::Sum),
            "max" => Ok(Aggregate::Max),
            other => Err(format!("unknown aggregate `{other}` (expected sum or max)")),
        }
    }
}

/// Per-scenario partitions and the two aggregate error figures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    pub per_scenario: BTreeMap<Scenario, ScenarioOutcome>,
    pub p_error_sum: f64,
    pub p_error_max: f64,
}

impl ErrorBudget {
    pub fn outcome(&self, scenario: Scenario) -> &ScenarioOutcome {
        &self.per_scenario[&scenario]
    }

    pub fn worst_failure(&self, control_present: bool) -> f64 {
        self.per_scenario
            .iter()
            .filter(|(s, _)| s.control_present() == control_present)
            .map(|(_, o)| o.failure())
            .fold(0.0, f64::max)
    }

    pub fn aggregate(&self, aggregate: Aggregate) -> f64 {
        match aggregate {
            Aggregate::Sum => self.p_error_sum,
            Aggregate::Max => self.p_error_max,
        }
    }
}

/// Evaluates one scenario of the gate.
pub fn scenario_outcome(config: &GateConfig, scenario: Scenario) -> ScenarioOutcome {
    let present = scenario.control_present();
    let out = propagate(config, present, BranchAmplitudes::basis(scenario.input_branch()));
    let survival = if present { config.control_survival() } else { 1.0 };
    ScenarioOutcome::from_output(out, scenario.designated_branch(), survival)
}

/// Error budget of the gate over all four basis scenarios.
pub fn gate_error(config: &GateConfig) -> ErrorBudget {
    let per_scenario: BTreeMap<_, _> = Scenario::ALL
        .iter()
        .map(|&s| (s, scenario_outcome(config, s)))
        .collect();
    let worst = |present: bool| {
        per_scenario
            .iter()
            .filter(|(s, _)| s.control_present() == present)
            .map(|(_, o)| o.failure())
            .fold(0.0, f64::max)
    };
    let (absent, present) = (worst(false), worst(true));
    ErrorBudget {
        p_error_sum: Aggregate::Sum.combine(absent, present),
        p_error_max: Aggregate::Max.combine(absent, present),
        per_scenario,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::{PI, SQRT_2};

    #[test]
    fn zero_angle_is_identity() {
        let m = segment_matrix(SegmentParams::new(0.0, 0.0).unwrap());
        assert_eq!(m, Matrix3::identity());
    }

    #[test]
    fn right_angle_limit_permutes_rails() {
        // pi/2 itself is excluded from SegmentParams; evaluate the formula directly.
        let p = SegmentParams { epsilon: FRAC_PI_2, xi: 0.0 };
        let m = segment_matrix(p);
        let expected = Matrix3::new(0.0, -1.0, 0.0, 0.0, 0.0, -1.0, 1.0, 0.0, 0.0);
        assert_abs_diff_eq!(m, expected, epsilon = 1e-15);
    }

    #[test]
    fn middle_entry_matches_scalar_evaluation() {
        let m = segment_matrix(SegmentParams::new(0.2221, 1.498).unwrap());
        let oracle = (-1.498f64).exp() * 0.2221f64.cos().powi(2);
        assert_abs_diff_eq!(m[(1, 1)], oracle, epsilon = 1e-15);
        assert_relative_eq!(m[(1, 1)], 0.2126, max_relative = 1e-3);
    }

    #[test]
    fn matrix_factorizes_into_splitters_and_absorber() {
        let (eps, xi) = (0.37f64, 0.81f64);
        let (s, c) = f64::sin_cos(eps);
        let bs_um = Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0);
        let bs_ml = Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c);
        let absorb = Matrix3::from_diagonal(&Vector3::new(1.0, (-xi).exp(), 1.0));
        let m = segment_matrix(SegmentParams::new(eps, xi).unwrap());
        assert_abs_diff_eq!(m, bs_ml * absorb * bs_um, epsilon = 1e-15);
    }

    #[test]
    fn rejects_out_of_range_segment_parameters() {
        assert!(SegmentParams::new(FRAC_PI_2, 0.0).is_err());
        assert!(SegmentParams::new(-0.1, 0.0).is_err());
        assert!(SegmentParams::new(0.1, -1e-3).is_err());
        assert!(SegmentParams::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn gate_config_invariants() {
        assert!(GateConfig::new(0, 0.1, 0.0, 0.0).is_err());
        assert!(GateConfig::new(10, 0.1, 0.2, 0.1).is_err());
        assert!(GateConfig::new(10, 0.1, 0.1, 0.2).unwrap().with_control_loss(-1.0).is_err());
        assert!(GateConfig::new(10, 0.1, 0.1, 0.2).is_ok());
    }

    #[test]
    fn lossless_swap_at_ten_segments() {
        let n = 10;
        let cfg = GateConfig::new(n, PI / (SQRT_2 * n as f64), 0.0, 0.0).unwrap();
        let out = propagate(&cfg, false, BranchAmplitudes::basis(Branch::Upper));
        // Frozen from an independent numpy matrix_power evaluation.
        assert_abs_diff_eq!(out.upper, -0.006178510, epsilon = 1e-8);
        assert_abs_diff_eq!(out.middle, -0.108559750, epsilon = 1e-8);
        assert_abs_diff_eq!(out.lower, 0.994070730, epsilon = 1e-8);
        assert!(out.lower.powi(2) >= 0.95);
    }

    #[test]
    fn strong_absorption_freezes_target() {
        let n = 10;
        let cfg = GateConfig::new(n, PI / (SQRT_2 * n as f64), 0.0, PI * PI / (n as f64 * 0.5)).unwrap();
        let out = propagate(&cfg, true, BranchAmplitudes::basis(Branch::Upper));
        assert!(out.upper.powi(2) >= 0.5, "upper^2 = {}", out.upper.powi(2));
    }

    #[test]
    fn identity_limit_keeps_control_present_scenarios() {
        let cfg = GateConfig::new(7, 0.0, 0.0, 0.0).unwrap();
        let b = gate_error(&cfg);
        assert_eq!(b.outcome(Scenario::ControlPresentUpper).p_success, 1.0);
        assert_eq!(b.outcome(Scenario::ControlPresentLower).p_success, 1.0);
        assert_eq!(b.outcome(Scenario::ControlAbsentUpper).p_wrong_branch, 1.0);
    }

    #[test]
    fn control_loss_moves_success_into_control_lost() {
        let cfg = GateConfig::new(5, 0.0, 0.0, 0.0).unwrap().with_control_loss(0.01).unwrap();
        let o = scenario_outcome(&cfg, Scenario::ControlPresentUpper);
        assert_abs_diff_eq!(o.p_control_lost, 1.0 - (-0.1f64).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(o.total(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn input_norm_is_validated() {
        assert!(BranchAmplitudes::new(1.0, 0.1, 0.0).is_err());
        assert!(BranchAmplitudes::new(0.6, 0.8, 0.0).is_ok());
    }

    #[test]
    fn aggregate_parses() {
        assert_eq!("sum".parse::<Aggregate>().unwrap(), Aggregate::Sum);
        assert_eq!("max".parse::<Aggregate>().unwrap(), Aggregate::Max);
        assert!("mean".parse::<Aggregate>().is_err());
    }

    #[test]
    fn control_present_success_grows_with_absorption() {
        for n in [10usize, 25, 60] {
            let eps = PI / (SQRT_2 * n as f64);
            let mut last = 0.0;
            for k in 0..=160 {
                let xi = 1e-2 * 10f64.powf(k as f64 / 40.0);
                let cfg = GateConfig::new(n, eps, xi, xi).unwrap();
                let success = Scenario::ALL
                    .iter()
                    .filter(|s| s.control_present())
                    .map(|&s| scenario_outcome(&cfg, s).p_success)
                    .fold(f64::INFINITY, f64::min);
                assert!(success >= last - 1e-12, "N={n} xi={xi}: {success} < {last}");
                last = success;
            }
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(1000))]

        #[test]
        fn lossless_segment_is_orthogonal(eps in 0.0f64..std::f64::consts::FRAC_PI_2) {
            let m = segment_matrix(SegmentParams::new(eps, 0.0).unwrap());
            let err = (m.transpose() * m - Matrix3::identity()).abs().max();
            proptest::prop_assert!(err <= IDENTITY_TOLERANCE);
        }

        #[test]
        fn segment_never_increases_norm(
            eps in 0.0f64..std::f64::consts::FRAC_PI_2,
            xi in 0.0f64..20.0,
            v in proptest::array::uniform3(-1.0f64..1.0),
        ) {
            let m = segment_matrix(SegmentParams::new(eps, xi).unwrap());
            let psi = Vector3::from(v);
            proptest::prop_assert!((m * psi).norm() <= psi.norm() * (1.0 + 1e-15));
        }
    }

    proptest::proptest! {
        #[test]
        fn partitions_sum_to_one(
            n in 1usize..80,
            eps in 0.0f64..1.5,
            xi_one in 0.0f64..2.0,
            extra in 0.0f64..50.0,
            xi_c in 0.0f64..0.5,
        ) {
            let cfg = GateConfig::new(n, eps, xi_one, xi_one + extra).unwrap().with_control_loss(xi_c).unwrap();
            let budget = gate_error(&cfg);
            for o in budget.per_scenario.values() {
                proptest::prop_assert!((o.total() - 1.0).abs() <= IDENTITY_TOLERANCE);
                proptest::prop_assert!(o.p_success >= 0.0 && o.p_absorbed >= -1e-15 && o.p_wrong_branch >= -1e-15);
            }
            proptest::prop_assert!(budget.p_error_max <= budget.p_error_sum);
        }
    }
}
