//! Density-matrix model of the joint target/control system.
//!
//! This is an independent route to the gate dynamics: instead of multiplying
//! real amplitude vectors, every element of a segment is a Kraus channel acting
//! on a 12-dimensional density matrix, and absorption is a quantum jump into
//! explicit "lost" levels.
//!
//! Basis ordering: `index = 3 * target + control` with
//! target `upper = 0, middle = 1, lower = 2, lost = 3` and
//! control `absent = 0, present = 1, lost = 2`.

mod channel;
mod concurrence;
mod state;

pub use channel::{build_segment_channel, evolve, KrausSet, Operator};
pub use concurrence::{gate_concurrence, wootters_concurrence, ConcurrenceReport, LOGICAL_INDICES};
pub use state::{JointDensityState, StateCheck};

use serde::{Deserialize, Serialize};

/// Dimension of the joint Hilbert space.
pub const JOINT_DIM: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetLevel {
    Upper = 0,
    Middle = 1,
    Lower = 2,
    Lost = 3,
}

impl TargetLevel {
    pub const ALL: [TargetLevel; 4] = [
        TargetLevel::Upper,
        TargetLevel::Middle,
        TargetLevel::Lower,
        TargetLevel::Lost,
    ];
}

impl From<crate::gate::Branch> for TargetLevel {
    fn from(b: crate::gate::Branch) -> Self {
        match b {
            crate::gate::Branch::Upper => TargetLevel::Upper,
            crate::gate::Branch::Middle => TargetLevel::Middle,
            crate::gate::Branch::Lower => TargetLevel::Lower,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControlLevel {
    Absent = 0,
    Present = 1,
    Lost = 2,
}

impl ControlLevel {
    pub const ALL: [ControlLevel; 3] = [ControlLevel::Absent, ControlLevel::Present, ControlLevel::Lost];
}

/// Position of `|target, control>` in the joint basis.
pub const fn joint_index(target: TargetLevel, control: ControlLevel) -> usize {
    3 * target as usize + control as usize
}
