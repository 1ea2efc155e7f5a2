//! Feasibility formulas for the two-photon absorber: absorption probability,
//! competing one-photon scattering, multi-pass and collective enhancement,
//! pump requirements and ensemble sizing.
//!
//! All inputs are unit-carrying newtypes from [`crate::units`]; formulas are
//! evaluated in natural units.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Result};
use crate::units::{Area, Frequency, Intensity, Length, Mass, UnitSystem};

/// Relative tolerance of the resonance and phase-matching conditions.
pub const MATCHING_TOLERANCE: f64 = 1e-6;

/// O(1) factor in the one-photon scattering ratio; `scatter_constant * pi^3 = 52.9`
/// reproduces the repetition column for a diffraction-limited focus.
pub const DEFAULT_SCATTER_CONSTANT: f64 = 1.706;

fn alpha() -> f64 {
    UnitSystem::CODATA.alpha_qed
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Laboratory quantities entering the absorption and scattering formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalScenario {
    omega_one: Frequency,
    omega_two: Frequency,
    e12: Frequency,
    e23: Frequency,
    delta: Frequency,
    delta_control: Frequency,
    ell_atom: Length,
    area: Area,
    mass: Mass,
    scatter_constant: f64,
}

impl PhysicalScenario {
    /// Fully explicit constructor; checks resonance and the detuning definition.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        omega_one: Frequency,
        omega_two: Frequency,
        e12: Frequency,
        e23: Frequency,
        delta: Frequency,
        delta_control: Frequency,
        ell_atom: Length,
        area: Area,
    ) -> Result<Self> {
        let sc = Self {
            omega_one,
            omega_two,
            e12,
            e23,
            delta,
            delta_control,
            ell_atom,
            area,
            mass: Mass::electron(),
            scatter_constant: DEFAULT_SCATTER_CONSTANT,
        };
        sc.validate()?;
        Ok(sc)
    }

    /// Level spacings chosen for exact two-photon resonance:
    /// `E12 = omega_one + delta`, `E23 = omega_two - delta`.
    pub fn resonant(
        omega_one: Frequency,
        omega_two: Frequency,
        delta: Frequency,
        delta_control: Frequency,
        ell_atom: Length,
        area: Area,
    ) -> Result<Self> {
        Self::new(
            omega_one,
            omega_two,
            omega_one + delta,
            omega_two - delta,
            delta,
            delta_control,
            ell_atom,
            area,
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("omega_one", self.omega_one.natural()),
            ("omega_two", self.omega_two.natural()),
            ("e12", self.e12.natural()),
            ("e23", self.e23.natural()),
            ("ell_atom", self.ell_atom.natural()),
            ("area", self.area.natural()),
            ("scatter_constant", self.scatter_constant),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(name, v, "must be positive and finite"));
            }
        }
        let photons = (self.omega_one + self.omega_two).natural();
        let levels = (self.e12 + self.e23).natural();
        if relative_gap(photons, levels) > MATCHING_TOLERANCE {
            return Err(invalid("e23", self.e23.natural(), "omega_one + omega_two must equal E12 + E23"));
        }
        let detuning = (self.e12 - self.omega_one).natural();
        if (detuning - self.delta.natural()).abs() > MATCHING_TOLERANCE * self.e12.natural() {
            return Err(invalid("delta", self.delta.natural(), "delta must equal E12 - omega_one"));
        }
        Ok(())
    }

    pub fn with_area(mut self, area: Area) -> Result<Self> {
        self.area = area;
        self.validate()?;
        Ok(self)
    }

    pub fn with_ell_atom(mut self, ell: Length) -> Result<Self> {
        self.ell_atom = ell;
        self.validate()?;
        Ok(self)
    }

    pub fn with_mass(mut self, mass: Mass) -> Self {
        self.mass = mass;
        self
    }

    pub fn with_scatter_constant(mut self, k: f64) -> Result<Self> {
        self.scatter_constant = k;
        self.validate()?;
        Ok(self)
    }

    /// Moves the target detuning while keeping the photons and resonance fixed.
    pub fn with_delta(self, delta: Frequency) -> Result<Self> {
        Self::resonant(self.omega_one, self.omega_two, delta, self.delta_control, self.ell_atom, self.area)
            .map(|s| s.with_mass(self.mass))
            .and_then(|s| s.with_scatter_constant(self.scatter_constant))
    }

    pub fn omega_one(&self) -> Frequency {
        self.omega_one
    }
    pub fn omega_two(&self) -> Frequency {
        self.omega_two
    }
    pub fn e12(&self) -> Frequency {
        self.e12
    }
    pub fn e23(&self) -> Frequency {
        self.e23
    }
    pub fn delta(&self) -> Frequency {
        self.delta
    }
    pub fn delta_control(&self) -> Frequency {
        self.delta_control
    }
    pub fn ell_atom(&self) -> Length {
        self.ell_atom
    }
    pub fn area(&self) -> Area {
        self.area
    }
    pub fn mass(&self) -> Mass {
        self.mass
    }
    pub fn scatter_constant(&self) -> f64 {
        self.scatter_constant
    }
}

impl Default for PhysicalScenario {
    /// 500 nm photons, `delta = 3e12 s^-1`, control detuning `3e13 s^-1`,
    /// six Bohr radii dipole length, diffraction-limited focus.
    fn default() -> Self {
        let lambda = Length::from_nm(500.0);
        let w = Frequency::from_wavelength(lambda);
        Self::resonant(
            w,
            w,
            Frequency::from_angular(3e12),
            Frequency::from_angular(3e13),
            Length::from_bohr(6.0),
            Area::diffraction_limited(lambda),
        )
        .expect("default scenario is resonant")
    }
}

/// Two-photon absorption probability per pass,
/// `4 alpha^2 / (pi^2 w1 w2) * E12^2 E23^2 / delta^2 * l^4 / A^2`.
pub fn p_two_photon(sc: &PhysicalScenario) -> Result<f64> {
    let delta = sc.delta.natural();
    if delta == 0.0 {
        return Err(domain("delta", delta, "perturbation theory diverges at zero detuning"));
    }
    let a = alpha();
    let (w1, w2) = (sc.omega_one.natural(), sc.omega_two.natural());
    let (e12, e23) = (sc.e12.natural(), sc.e23.natural());
    let l2 = sc.ell_atom.natural().powi(2);
    let area = sc.area.natural();
    Ok(4.0 * a * a / (PI * PI * w1 * w2) * (e12 * e12 * e23 * e23) / (delta * delta) * (l2 * l2) / (area * area))
}

/// Ratio of two-photon absorption to one-photon scattering per pass,
/// `1 / (scatter_constant * pi * w1 w2 * A)`.
pub fn one_photon_ratio(sc: &PhysicalScenario) -> f64 {
    1.0 / (sc.scatter_constant * PI * sc.omega_one.natural() * sc.omega_two.natural() * sc.area.natural())
}

/// Passes needed to lift the per-pass ratio to `kappa`.
pub fn required_repetitions(kappa: f64, sc: &PhysicalScenario) -> Result<u64> {
    if !(kappa >= 1.0) || !kappa.is_finite() {
        return Err(domain("kappa", kappa, "required ratio must be finite and at least one"));
    }
    Ok((kappa / one_photon_ratio(sc)).ceil() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepetitionGain {
    /// Phase-matched two-photon amplitudes add: `n^2`.
    pub coherent_gain: f64,
    /// Scattering probabilities add: `n`.
    pub incoherent_gain: f64,
}

impl RepetitionGain {
    pub fn kappa_gain(&self) -> f64 {
        self.coherent_gain / self.incoherent_gain
    }
}

pub fn repetition_scaling(n: u64) -> Result<RepetitionGain> {
    if n == 0 {
        return Err(domain("n", 0.0, "at least one pass is required"));
    }
    let n = n as f64;
    Ok(RepetitionGain {
        coherent_gain: n * n,
        incoherent_gain: n,
    })
}

/// True when `k_sum * length` is within `tolerance * 2 pi` of a positive multiple of `2 pi`.
pub fn phase_match(k_sum_per_m: f64, length_m: f64, tolerance: f64) -> bool {
    if !(length_m > 0.0) {
        return false;
    }
    let turns = k_sum_per_m * length_m / (2.0 * PI);
    let nearest = turns.round();
    nearest >= 1.0 && (turns - nearest).abs() <= tolerance
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseMatch {
    pub first: bool,
    pub second: bool,
    pub combined: bool,
}

/// Phase-matching flags for each photon alone and for the pair.
pub fn phase_match_report(k_one_per_m: f64, k_two_per_m: f64, length_m: f64, tolerance: f64) -> PhaseMatch {
    PhaseMatch {
        first: phase_match(k_one_per_m, length_m, tolerance),
        second: phase_match(k_two_per_m, length_m, tolerance),
        combined: phase_match(k_one_per_m + k_two_per_m, length_m, tolerance),
    }
}

/// Pump beams sustaining the collective excitation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpConfig {
    omega_one: Frequency,
    omega_two: Frequency,
    delta: Frequency,
    intensity_one: Intensity,
    intensity_two: Intensity,
    /// m^-1
    k_sum_per_m: f64,
}

impl PumpConfig {
    /// Explicit pump; must share the photons' temporal and spatial phase matching.
    pub fn new(
        sc: &PhysicalScenario,
        omega_one: Frequency,
        omega_two: Frequency,
        delta: Frequency,
        intensity_one: Intensity,
        intensity_two: Intensity,
        k_sum_per_m: f64,
    ) -> Result<Self> {
        let pump = Self {
            omega_one,
            omega_two,
            delta,
            intensity_one,
            intensity_two,
            k_sum_per_m,
        };
        pump.validate(sc)?;
        Ok(pump)
    }

    /// Collinear vacuum pumps detuned by `delta` from `E12`, summing to the photon energies.
    pub fn detuned(sc: &PhysicalScenario, delta: Frequency, intensity_one: Intensity, intensity_two: Intensity) -> Result<Self> {
        let omega_one = sc.e12 - delta;
        let omega_two = sc.omega_one + sc.omega_two - omega_one;
        let k_sum = (omega_one + omega_two).wave_number_per_m();
        Self::new(sc, omega_one, omega_two, delta, intensity_one, intensity_two, k_sum)
    }

    pub fn validate(&self, sc: &PhysicalScenario) -> Result<()> {
        for (name, v) in [
            ("omega_one", self.omega_one.natural()),
            ("omega_two", self.omega_two.natural()),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(name, v, "pump frequency must be positive"));
            }
        }
        for (name, v) in [
            ("intensity_one", self.intensity_one.natural()),
            ("intensity_two", self.intensity_two.natural()),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(name, v, "intensity must be non-negative"));
            }
        }
        let pump_sum = (self.omega_one + self.omega_two).natural();
        let photon_sum = (sc.omega_one + sc.omega_two).natural();
        if relative_gap(pump_sum, photon_sum) > MATCHING_TOLERANCE {
            return Err(invalid("omega_two", self.omega_two.natural(), "pump frequencies must sum to omega_one + omega_two"));
        }
        let photon_k = (sc.omega_one + sc.omega_two).wave_number_per_m();
        if relative_gap(self.k_sum_per_m, photon_k) > MATCHING_TOLERANCE {
            return Err(invalid("k_sum", self.k_sum_per_m, "pump wave numbers must sum to k_one + k_two"));
        }
        Ok(())
    }

    pub fn with_intensities(mut self, one: Intensity, two: Intensity) -> Self {
        self.intensity_one = one;
        self.intensity_two = two;
        self
    }

    pub fn omega_one(&self) -> Frequency {
        self.omega_one
    }
    pub fn omega_two(&self) -> Frequency {
        self.omega_two
    }
    pub fn delta(&self) -> Frequency {
        self.delta
    }
    pub fn intensity_one(&self) -> Intensity {
        self.intensity_one
    }
    pub fn intensity_two(&self) -> Intensity {
        self.intensity_two
    }
    pub fn k_sum_per_m(&self) -> f64 {
        self.k_sum_per_m
    }
}

/// Excitation ratio `s/S` sustained by the pumps:
/// `(4 pi alpha E12 E23 l^2 / (w1' w2' (w1' + w2') delta'))^2 I1 I2`.
pub fn pump_excitation_ratio(sc: &PhysicalScenario, pump: &PumpConfig) -> Result<f64> {
    pump.validate(sc)?;
    let dp = pump.delta.natural();
    if dp == 0.0 {
        return Err(domain("delta_p", dp, "pump detuning must be non-zero"));
    }
    let (w1, w2) = (pump.omega_one.natural(), pump.omega_two.natural());
    let amp = 4.0 * PI * alpha() * sc.e12.natural() * sc.e23.natural() * sc.ell_atom.natural().powi(2)
        / (w1 * w2 * (w1 + w2) * dp);
    Ok(amp * amp * pump.intensity_one.natural() * pump.intensity_two.natural())
}

/// Lower bound on the pump detuning, `sqrt(4 pi alpha I) * l`.
pub fn min_pump_detuning(intensity: Intensity, ell: Length) -> Result<Frequency> {
    let i = intensity.natural();
    if !(i >= 0.0) {
        return Err(domain("intensity", i, "intensity must be non-negative"));
    }
    Ok(Frequency::from_angular((4.0 * PI * alpha() * i).sqrt() * ell.natural()))
}

/// Absorbing ensemble and its collective excitation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    /// molecules per cm^3
    pub number_density_per_cm3: f64,
    pub thickness: Length,
    pub active_fraction: f64,
    /// Optically active emitters `S`.
    pub active_count: u64,
    /// Collective excitations `s`.
    pub excitations: u64,
    /// Effective two-photon coupling `g` (s^-1); carried for reporting only.
    pub effective_coupling: f64,
}

impl Default for EnsembleConfig {
    /// 10 um glass plate, 3.2e22 cm^-3, one percent active.
    fn default() -> Self {
        Self {
            number_density_per_cm3: 3.2e22,
            thickness: Length::from_um(10.0),
            active_fraction: 0.01,
            active_count: 200_000_000,
            excitations: 4_000,
            effective_coupling: 0.0,
        }
    }
}

impl EnsembleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.number_density_per_cm3 >= 0.0) {
            return Err(invalid("number_density", self.number_density_per_cm3, "must be non-negative"));
        }
        if !(self.thickness.natural() > 0.0) {
            return Err(invalid("thickness", self.thickness.to_m(), "must be positive"));
        }
        if !(0.0..=1.0).contains(&self.active_fraction) {
            return Err(invalid("active_fraction", self.active_fraction, "must lie in [0, 1]"));
        }
        if self.excitations > self.active_count {
            return Err(domain("excitations", self.excitations as f64, "s cannot exceed S"));
        }
        Ok(())
    }

    /// Sets `S` from the active molecules in `area` and `s = S * ratio`.
    pub fn with_counts_from(mut self, area: Area, excitation_ratio: f64) -> Result<Self> {
        let count = molecule_count(&self, area)?;
        self.active_count = count.active.round() as u64;
        self.excitations = (self.active_count as f64 * excitation_ratio).round() as u64;
        self.validate()?;
        Ok(self)
    }
}

/// Collective transition strength `(S - s)(s + 1)` relative to one unexcited emitter.
pub fn collective_enhancement(ens: &EnsembleConfig) -> Result<f64> {
    if ens.excitations > ens.active_count {
        return Err(domain("excitations", ens.excitations as f64, "s cannot exceed S"));
    }
    let big_s = ens.active_count as u128;
    let s = ens.excitations as u128;
    Ok(((big_s - s) * (s + 1)) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoleculeCount {
    pub total: f64,
    pub active: f64,
}

/// Molecules in the focal volume `area * thickness`.
pub fn molecule_count(ens: &EnsembleConfig, area: Area) -> Result<MoleculeCount> {
    let a = area.to_m2();
    if !(a > 0.0) || !(ens.thickness.natural() > 0.0) {
        return Err(domain("area", a, "area and thickness must be positive"));
    }
    let per_m3 = ens.number_density_per_cm3 * 1e6;
    let total = per_m3 * a * ens.thickness.to_m();
    Ok(MoleculeCount {
        total,
        active: total * ens.active_fraction,
    })
}

/// Photon frequency `E12 sqrt(1 - 2 m l^2 E12)` at which the two scattering
/// contributions interfere destructively.
pub fn interference_frequency(e12: Frequency, mass: Mass, ell: Length) -> Result<Frequency> {
    let e = e12.natural();
    let x = 2.0 * mass.natural() * ell.natural().powi(2) * e;
    if x > 1.0 {
        return Err(domain("2 m l^2 E12", x, "radicand 1 - 2 m l^2 E12 is negative"));
    }
    Ok(Frequency::from_angular(e * (1.0 - x).sqrt()))
}
