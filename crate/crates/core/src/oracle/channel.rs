use num_complex::Complex64;

use super::state::{JointDensityState, JointMatrix};
use super::{joint_index, ControlLevel, TargetLevel};
use crate::gate::GateConfig;

/// A 12x12 Kraus operator.
pub type Operator = JointMatrix;

/// An ordered set of Kraus operators forming one CPTP map.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    pub label: &'static str,
    pub operators: Vec<Operator>,
}

impl KrausSet {
    pub fn apply(&self, rho: &JointMatrix) -> JointMatrix {
        self.operators
            .iter()
            .fold(JointMatrix::zeros(), |acc, k| acc + k * rho * k.adjoint())
    }

    /// Largest entry of `|sum K^dagger K - I|`.
    pub fn completeness_error(&self) -> f64 {
        let sum = self
            .operators
            .iter()
            .fold(JointMatrix::zeros(), |acc, k| acc + k.adjoint() * k);
        (sum - JointMatrix::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// True when the set is a single unitary operator.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.operators.len() == 1 && self.completeness_error() <= tol && {
            let k = &self.operators[0];
            (k * k.adjoint() - JointMatrix::identity())
                .iter()
                .all(|z| z.norm() <= tol)
        }
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Rotation `[[c, -s], [s, c]]` between two target rails, identity elsewhere.
fn beam_splitter(a: TargetLevel, b: TargetLevel, epsilon: f64) -> KrausSet {
    let (s, c) = epsilon.sin_cos();
    let mut k = Operator::identity();
    for control in ControlLevel::ALL {
        let (i, j) = (joint_index(a, control), joint_index(b, control));
        k[(i, i)] = re(c);
        k[(i, j)] = re(-s);
        k[(j, i)] = re(s);
        k[(j, j)] = re(c);
    }
    KrausSet {
        label: if a == TargetLevel::Upper {
            "beam_splitter_upper_middle"
        } else {
            "beam_splitter_middle_lower"
        },
        operators: vec![k],
    }
}

/// Amplitude damping of the target middle rail.
///
/// The exponent depends on the control sector: `xi_two` with the control
/// present (a jump removes both photons), `xi_one` otherwise.
fn middle_absorption(config: &GateConfig) -> KrausSet {
    let sectors = [
        (ControlLevel::Absent, config.xi_one(), ControlLevel::Absent),
        (ControlLevel::Present, config.xi_two(), ControlLevel::Lost),
        (ControlLevel::Lost, config.xi_one(), ControlLevel::Lost),
    ];
    let mut no_jump = Operator::identity();
    let mut jumps = Vec::new();
    for (control, xi, control_after) in sectors {
        let survival = (-xi).exp();
        let from = joint_index(TargetLevel::Middle, control);
        no_jump[(from, from)] = re(survival);
        // sqrt(1 - e^{-2 xi}) without cancellation for small xi
        let jump_amp = (-(-2.0 * xi).exp_m1()).sqrt();
        if jump_amp > 0.0 {
            let mut k = Operator::zeros();
            k[(joint_index(TargetLevel::Lost, control_after), from)] = re(jump_amp);
            jumps.push(k);
        }
    }
    let mut operators = vec![no_jump];
    operators.extend(jumps);
    KrausSet {
        label: "middle_absorption",
        operators,
    }
}

/// One-photon loss of the control photon, `present -> lost`, coherent in the target.
fn control_loss(config: &GateConfig) -> KrausSet {
    let xi = config.xi_control();
    let survival = (-xi).exp();
    let jump_amp = (-(-2.0 * xi).exp_m1()).sqrt();
    let mut no_jump = Operator::identity();
    let mut jump = Operator::zeros();
    for target in TargetLevel::ALL {
        let from = joint_index(target, ControlLevel::Present);
        no_jump[(from, from)] = re(survival);
        jump[(joint_index(target, ControlLevel::Lost), from)] = re(jump_amp);
    }
    let mut operators = vec![no_jump];
    if jump_amp > 0.0 {
        operators.push(jump);
    }
    KrausSet {
        label: "control_loss",
        operators,
    }
}

/// Channels of one segment in application order:
/// upper/middle splitter, middle absorption, control loss, middle/lower splitter.
pub fn build_segment_channel(config: &GateConfig) -> Vec<KrausSet> {
    vec![
        beam_splitter(TargetLevel::Upper, TargetLevel::Middle, config.epsilon()),
        middle_absorption(config),
        control_loss(config),
        beam_splitter(TargetLevel::Middle, TargetLevel::Lower, config.epsilon()),
    ]
}

/// Applies the segment channel sequence `N` times.
pub fn evolve(rho: &JointDensityState, config: &GateConfig) -> JointDensityState {
    let channels = build_segment_channel(config);
    let mut m = *rho.matrix();
    for _ in 0..config.segments() {
        for ch in &channels {
            m = ch.apply(&m);
        }
    }
    JointDensityState::from_matrix_unchecked(m)
}
