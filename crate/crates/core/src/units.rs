//! Laboratory units and the natural unit system `hbar = c = eps0 = 1`.
//!
//! The second is the base unit: lengths become times (`x / c`), angular
//! frequencies stay in s^-1, masses become `m c^2 / hbar` and intensities
//! carry dimension s^-4. Every physical quantity in [`crate::rates`] is held in
//! one of the newtypes below, so all conversions go through a single place.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// Physical constants (SI) defining the conversions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    pub alpha_qed: f64,
    /// m/s
    pub speed_of_light: f64,
    /// J s
    pub hbar: f64,
    /// m
    pub bohr_radius: f64,
    /// kg
    pub electron_mass: f64,
}

impl UnitSystem {
    /// CODATA 2018 values.
    pub const CODATA: UnitSystem = UnitSystem {
        alpha_qed: 7.297_352_569_3e-3,
        speed_of_light: 299_792_458.0,
        hbar: 1.054_571_817e-34,
        bohr_radius: 5.291_772_109_03e-11,
        electron_mass: 9.109_383_701_5e-31,
    };

    pub fn length_to_natural(&self, meters: f64) -> f64 {
        meters / self.speed_of_light
    }

    pub fn length_from_natural(&self, seconds: f64) -> f64 {
        seconds * self.speed_of_light
    }

    pub fn area_to_natural(&self, square_meters: f64) -> f64 {
        square_meters / (self.speed_of_light * self.speed_of_light)
    }

    pub fn area_from_natural(&self, natural: f64) -> f64 {
        natural * self.speed_of_light * self.speed_of_light
    }

    /// W/cm^2 to s^-4.
    pub fn intensity_to_natural(&self, w_per_cm2: f64) -> f64 {
        w_per_cm2 * 1e4 * self.speed_of_light * self.speed_of_light / self.hbar
    }

    pub fn intensity_from_natural(&self, natural: f64) -> f64 {
        natural * self.hbar / (self.speed_of_light * self.speed_of_light) / 1e4
    }

    /// kg to s^-1 (rest energy over hbar).
    pub fn mass_to_natural(&self, kg: f64) -> f64 {
        kg * self.speed_of_light * self.speed_of_light / self.hbar
    }

    pub fn mass_from_natural(&self, natural: f64) -> f64 {
        natural * self.hbar / (self.speed_of_light * self.speed_of_light)
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::CODATA
    }
}

const UNITS: UnitSystem = UnitSystem::CODATA;

/// Length, stored in natural units (seconds).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Length(f64);

impl Length {
    pub fn from_m(m: f64) -> Self {
        Self(UNITS.length_to_natural(m))
    }

    pub fn from_nm(nm: f64) -> Self {
        Self::from_m(nm * 1e-9)
    }

    pub fn from_um(um: f64) -> Self {
        Self::from_m(um * 1e-6)
    }

    pub fn from_bohr(radii: f64) -> Self {
        Self::from_m(radii * UNITS.bohr_radius)
    }

    pub fn natural(self) -> f64 {
        self.0
    }

    pub fn to_m(self) -> f64 {
        UNITS.length_from_natural(self.0)
    }

    pub fn to_nm(self) -> f64 {
        self.to_m() * 1e9
    }

    pub fn to_um(self) -> f64 {
        self.to_m() * 1e6
    }

    pub fn squared(self) -> Area {
        Area(self.0 * self.0)
    }
}

/// Area, stored in natural units (s^2).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Area(f64);

impl Area {
    pub fn from_m2(m2: f64) -> Self {
        Self(UNITS.area_to_natural(m2))
    }

    pub fn from_nm2(nm2: f64) -> Self {
        Self::from_m2(nm2 * 1e-18)
    }

    /// Diffraction-limited focus `(lambda / 2)^2`.
    pub fn diffraction_limited(wavelength: Length) -> Self {
        Length(wavelength.0 / 2.0).squared()
    }

    pub fn natural(self) -> f64 {
        self.0
    }

    pub fn to_m2(self) -> f64 {
        UNITS.area_from_natural(self.0)
    }

    pub fn to_nm2(self) -> f64 {
        self.to_m2() * 1e18
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self(self.0 * factor)
    }
}

/// Angular frequency in s^-1 (identical in both unit systems).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Frequency(f64);

impl Frequency {
    /// Laboratory "Hz" values are read as angular frequencies.
    pub fn from_angular(per_second: f64) -> Self {
        Self(per_second)
    }

    /// Vacuum photon frequency `2 pi c / lambda`.
    pub fn from_wavelength(wavelength: Length) -> Self {
        Self(2.0 * PI / wavelength.0)
    }

    pub fn natural(self) -> f64 {
        self.0
    }

    pub fn angular(self) -> f64 {
        self.0
    }

    /// Vacuum wave number in m^-1.
    pub fn wave_number_per_m(self) -> f64 {
        self.0 / UNITS.speed_of_light
    }

    pub fn to_wavelength(self) -> Length {
        Length(2.0 * PI / self.0)
    }
}

impl std::ops::Add for Frequency {
    type Output = Frequency;

    fn add(self, rhs: Frequency) -> Frequency {
        Frequency(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Frequency {
    type Output = Frequency;

    fn sub(self, rhs: Frequency) -> Frequency {
        Frequency(self.0 - rhs.0)
    }
}

/// Intensity, stored in natural units (s^-4).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Intensity(f64);

impl Intensity {
    pub fn from_w_per_cm2(i: f64) -> Self {
        Self(UNITS.intensity_to_natural(i))
    }

    pub fn from_w_per_m2(i: f64) -> Self {
        Self::from_w_per_cm2(i * 1e-4)
    }

    pub fn natural(self) -> f64 {
        self.0
    }

    pub fn to_w_per_cm2(self) -> f64 {
        UNITS.intensity_from_natural(self.0)
    }
}

/// Mass, stored in natural units (s^-1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Mass(f64);

impl Mass {
    pub fn from_kg(kg: f64) -> Self {
        Self(UNITS.mass_to_natural(kg))
    }

    pub fn electron() -> Self {
        Self::from_kg(UNITS.electron_mass)
    }

    pub fn natural(self) -> f64 {
        self.0
    }

    pub fn to_kg(self) -> f64 {
        UNITS.mass_from_natural(self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn optical_frequency() {
        let w = Frequency::from_wavelength(Length::from_nm(500.0));
        assert!(rel(w.angular(), 2.0 * PI * 299_792_458.0 / 500e-9) < 1e-15);
    }

    #[test]
    fn diffraction_limited_area_times_frequency_squared_is_pi_squared() {
        let l = Length::from_nm(500.0);
        let w = Frequency::from_wavelength(l);
        let a = Area::diffraction_limited(l);
        assert!(rel(w.natural().powi(2) * a.natural(), PI * PI) < 1e-14);
    }

    #[test]
    fn bohr_radius_in_seconds() {
        let l = Length::from_bohr(6.0);
        assert!(rel(l.natural(), 6.0 * 5.29177210903e-11 / 299_792_458.0) < 1e-15);
    }

    proptest! {
        #[test]
        fn conversions_round_trip(x in 1e-30f64..1e30) {
            prop_assert!(rel(Length::from_m(x).to_m(), x) <= 1e-12);
            prop_assert!(rel(Length::from_nm(x).to_nm(), x) <= 1e-12);
            prop_assert!(rel(Length::from_um(x).to_um(), x) <= 1e-12);
            prop_assert!(rel(Area::from_m2(x).to_m2(), x) <= 1e-12);
            prop_assert!(rel(Area::from_nm2(x).to_nm2(), x) <= 1e-12);
            prop_assert!(rel(Intensity::from_w_per_cm2(x).to_w_per_cm2(), x) <= 1e-12);
            prop_assert!(rel(Mass::from_kg(x).to_kg(), x) <= 1e-12);
            prop_assert!(rel(Frequency::from_angular(x).angular(), x) <= 1e-12);
        }
    }
}
