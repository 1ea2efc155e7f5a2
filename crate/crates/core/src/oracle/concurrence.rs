use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::channel::evolve;
use super::state::JointDensityState;
use super::{joint_index, ControlLevel, TargetLevel, JOINT_DIM};
use crate::error::{domain, Error, Result};
use crate::gate::GateConfig;

/// Joint indices of the logical two-qubit subspace, in the order
/// `|00>, |01>, |10>, |11>` with the target qubit first
/// (`upper = 0`, `lower = 1`) and the control qubit second (`absent = 0`, `present = 1`).
pub const LOGICAL_INDICES: [usize; 4] = [
    joint_index(TargetLevel::Upper, ControlLevel::Absent),
    joint_index(TargetLevel::Upper, ControlLevel::Present),
    joint_index(TargetLevel::Lower, ControlLevel::Absent),
    joint_index(TargetLevel::Lower, ControlLevel::Present),
];

const MIN_POSTSELECTION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceReport {
    pub concurrence: f64,
    pub postselect_probability: f64,
}

fn hermitian_sqrt(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let eig = SymmetricEigen::new((m + m.adjoint()).scale(0.5));
    let roots = eig.eigenvalues.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    eig.eigenvectors * Matrix4::from_diagonal(&roots) * eig.eigenvectors.adjoint()
}

/// Wootters concurrence of a normalized two-qubit density matrix.
///
/// Uses the eigenvalues of the Hermitian matrix `sqrt(rho) rho~ sqrt(rho)`, whose
/// square roots are the singular values entering `max(0, l1 - l2 - l3 - l4)`.
pub fn wootters_concurrence(rho: &Matrix4<Complex64>) -> f64 {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    // sigma_y (x) sigma_y
    let yy = Matrix4::new(
        z, z, z, -one, //
        z, z, one, z, //
        z, one, z, z, //
        -one, z, z, z,
    );
    let flipped = yy * rho.conjugate() * yy;
    let root = hermitian_sqrt(rho);
    let r = root * flipped * root;
    let eig = SymmetricEigen::new((r + r.adjoint()).scale(0.5));
    let mut lambdas: Vec<f64> = eig.eigenvalues.iter().map(|&m| m.max(0.0).sqrt()).collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

fn check_logical_support(input: &JointDensityState) -> Result<()> {
    let m = input.matrix();
    for i in 0..JOINT_DIM {
        for j in 0..JOINT_DIM {
            let inside = LOGICAL_INDICES.contains(&i) && LOGICAL_INDICES.contains(&j);
            if !inside && m[(i, j)].norm() > 1e-12 {
                return Err(domain(
                    "input",
                    m[(i, j)].norm(),
                    "state must be supported on target {upper, lower} x control {absent, present}",
                ));
            }
        }
    }
    Ok(())
}

/// Runs the gate on a logical input, post-selects onto the logical subspace and
/// returns the concurrence of the renormalized two-qubit state.
pub fn gate_concurrence(config: &GateConfig, input: &JointDensityState) -> Result<ConcurrenceReport> {
    check_logical_support(input)?;
    let out = evolve(input, config);
    let m = out.matrix();
    let sub = Matrix4::from_fn(|i, j| m[(LOGICAL_INDICES[i], LOGICAL_INDICES[j])]);
    let p = sub.trace().re;
    if !(p >= MIN_POSTSELECTION) {
        return Err(Error::Degenerate { probability: p });
    }
    Ok(ConcurrenceReport {
        concurrence: wootters_concurrence(&sub.unscale(p)),
        postselect_probability: p,
    })
}
