use nalgebra::{SMatrix, SVector, SymmetricEigen};
use num_complex::Complex64;

use super::{joint_index, ControlLevel, TargetLevel, JOINT_DIM};
use crate::error::{invalid, Result};

pub(crate) type JointMatrix = SMatrix<Complex64, JOINT_DIM, JOINT_DIM>;

/// Density matrix over the 12 joint levels.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDensityState {
    rho: JointMatrix,
}

/// Distance of a state from the density-matrix axioms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateCheck {
    /// Largest entry of `|rho - rho^dagger|`.
    pub hermiticity_error: f64,
    /// `|tr(rho) - 1|`.
    pub trace_error: f64,
    pub min_eigenvalue: f64,
}

impl StateCheck {
    pub fn is_valid(&self, identity_tol: f64, eigen_tol: f64) -> bool {
        self.hermiticity_error <= identity_tol
            && self.trace_error <= identity_tol
            && self.min_eigenvalue >= -eigen_tol
    }
}

impl JointDensityState {
    /// Wraps a matrix after checking hermiticity, unit trace and positivity.
    pub fn from_matrix(rho: JointMatrix) -> Result<Self> {
        let state = Self { rho };
        let check = state.check();
        if !check.is_valid(1e-12, 1e-10) {
            return Err(invalid(
                "rho",
                check.trace_error.max(check.hermiticity_error).max(-check.min_eigenvalue),
                "not a density matrix (hermitian, unit trace, positive)",
            ));
        }
        Ok(state)
    }

    pub(crate) fn from_matrix_unchecked(rho: JointMatrix) -> Self {
        Self { rho }
    }

    /// Pure state `|psi><psi|`; `psi` is normalized first.
    pub fn pure(psi: &[Complex64; JOINT_DIM]) -> Result<Self> {
        let v = SVector::<Complex64, JOINT_DIM>::from_column_slice(psi);
        let norm = v.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(invalid("psi", norm, "state vector must have a finite non-zero norm"));
        }
        let v = v.unscale(norm);
        Ok(Self { rho: v * v.adjoint() })
    }

    /// Product basis state `|target, control>`.
    pub fn basis(target: TargetLevel, control: ControlLevel) -> Self {
        let mut rho = JointMatrix::zeros();
        let i = joint_index(target, control);
        rho[(i, i)] = Complex64::new(1.0, 0.0);
        Self { rho }
    }

    /// Real-amplitude pure state from `(target, control, amplitude)` terms.
    pub fn superposition(terms: &[(TargetLevel, ControlLevel, f64)]) -> Result<Self> {
        let mut psi = [Complex64::new(0.0, 0.0); JOINT_DIM];
        for &(t, c, a) in terms {
            psi[joint_index(t, c)] += Complex64::new(a, 0.0);
        }
        Self::pure(&psi)
    }

    pub fn matrix(&self) -> &JointMatrix {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn population(&self, target: TargetLevel, control: ControlLevel) -> f64 {
        let i = joint_index(target, control);
        self.rho[(i, i)].re
    }

    /// Marginal population of a target level, summed over control levels.
    pub fn target_population(&self, target: TargetLevel) -> f64 {
        ControlLevel::ALL.iter().map(|&c| self.population(target, c)).sum()
    }

    pub fn control_population(&self, control: ControlLevel) -> f64 {
        TargetLevel::ALL.iter().map(|&t| self.population(t, control)).sum()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (self.rho + self.rho.adjoint()).scale(0.5);
        SymmetricEigen::new(herm).eigenvalues.min()
    }

    pub fn check(&self) -> StateCheck {
        let diff = self.rho - self.rho.adjoint();
        StateCheck {
            hermiticity_error: diff.iter().map(|z| z.norm()).fold(0.0, f64::max),
            trace_error: (self.rho.trace() - Complex64::new(1.0, 0.0)).norm(),
            min_eigenvalue: self.min_eigenvalue(),
        }
    }

    /// Largest entry-wise distance to another state.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.rho - other.rho).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_state_is_valid() {
        let s = JointDensityState::basis(TargetLevel::Lower, ControlLevel::Present);
        assert!(s.check().is_valid(1e-12, 1e-10));
        assert_eq!(s.population(TargetLevel::Lower, ControlLevel::Present), 1.0);
        assert_eq!(joint_index(TargetLevel::Lower, ControlLevel::Present), 7);
    }

    #[test]
    fn superposition_is_normalized() {
        let s = JointDensityState::superposition(&[
            (TargetLevel::Upper, ControlLevel::Absent, 1.0),
            (TargetLevel::Upper, ControlLevel::Present, 1.0),
        ])
        .unwrap();
        assert!((s.trace() - 1.0).abs() < 1e-15);
        assert!((s.control_population(ControlLevel::Present) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_density_matrices() {
        let mut m = JointMatrix::zeros();
        m[(0, 0)] = Complex64::new(2.0, 0.0);
        assert!(JointDensityState::from_matrix(m).is_err());
        let mut m = JointMatrix::zeros();
        m[(0, 0)] = Complex64::new(1.5, 0.0);
        m[(1, 1)] = Complex64::new(-0.5, 0.0);
        assert!(JointDensityState::from_matrix(m).is_err());
        assert!(JointDensityState::pure(&[Complex64::new(0.0, 0.0); JOINT_DIM]).is_err());
    }
}
