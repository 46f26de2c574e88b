//! Two-level atomic-vapor medium model: complex susceptibility, Kerr
//! coefficients, saturation intensity and feasibility numbers for driving a
//! vapor cell near (but safely detuned from) an electronic resonance.
//!
//! All internal computation is in SI; the [`units`] helpers convert to the
//! mixed laboratory units (cm^-3, W/cm^2, MHz, mm) used at the CLI surface.

use num_complex::Complex64;
use thiserror::Error;

/// Speed of light in vacuum, m/s.
pub const C: f64 = 299_792_458.0;
/// Vacuum permittivity, F/m.
pub const EPS0: f64 = 8.854_187_8128e-12;
/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

#[derive(Debug, Error, PartialEq)]
pub enum VaporError {
    #[error("detuning is zero: far-detuned expansion invalid")]
    ZeroDetuning,
    #[error("tabulated resonant saturation intensity {tabulated:e} W/m^2 deviates {deviation:.0}% from c eps0 hbar^2 Gamma^2 / (4 mu^2) = {derived:e}")]
    InconsistentSaturationIntensity {
        tabulated: f64,
        derived: f64,
        deviation: f64,
    },
}

/// Which density power multiplies `mu^2` in the susceptibility prefactor.
///
/// The printed form of the two-level susceptibility carries `mu^2 n_a^2`,
/// but its first-order expansion and the quoted Rb-85 numbers are linear in
/// `n_a`; [`Prefactor::DensityLinear`] is therefore the default and
/// [`Prefactor::DensitySquared`] reproduces the printed form verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Prefactor {
    #[default]
    DensityLinear,
    DensitySquared,
}

/// Effective two-level atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelAtom {
    /// Dipole matrix element mu, C m.
    pub dipole_moment: f64,
    /// Transition linewidth Gamma, rad/s.
    pub linewidth: f64,
    /// Transition wavelength, m.
    pub transition_wavelength: f64,
    /// Tabulated resonant saturation intensity I_s^0, W/m^2.
    pub saturation_intensity_resonant: f64,
}

impl TwoLevelAtom {
    /// Checks the tabulated `I_s^0` against `c eps0 hbar^2 Gamma^2 / (4 mu^2)`
    /// to 10%, which catches most unit mistakes in the inputs.
    pub fn new(
        dipole_moment: f64,
        linewidth: f64,
        transition_wavelength: f64,
        saturation_intensity_resonant: f64,
    ) -> Result<Self, VaporError> {
        let atom = Self {
            dipole_moment,
            linewidth,
            transition_wavelength,
            saturation_intensity_resonant,
        };
        let derived = atom.saturation_intensity_derived();
        let deviation = (saturation_intensity_resonant - derived).abs() / derived;
        if deviation > 0.10 {
            return Err(VaporError::InconsistentSaturationIntensity {
                tabulated: saturation_intensity_resonant,
                derived,
                deviation: deviation * 100.0,
            });
        }
        Ok(atom)
    }

    /// `I_s^0 = c eps0 hbar^2 Gamma^2 / (4 mu^2)`, W/m^2.
    pub fn saturation_intensity_derived(&self) -> f64 {
        C * EPS0 * HBAR * HBAR * self.linewidth * self.linewidth
            / (4.0 * self.dipole_moment * self.dipole_moment)
    }

    /// D2 line of Rb-85 with the effective far-detuned dipole moment for
    /// linearly polarized light (accounts for the hyperfine structure).
    pub fn rb85_d2() -> Self {
        Self {
            dipole_moment: 2.069e-29,
            linewidth: 2.0 * std::f64::consts::PI * 6.06e6,
            transition_wavelength: 780e-9,
            // 2.5 mW/cm^2
            saturation_intensity_resonant: 25.0,
        }
    }
}

/// Medium state: density, drive detuning and drive intensity (SI).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VaporConditions {
    /// Atomic density n_a, m^-3.
    pub atomic_density: f64,
    /// Detuning delta = omega_0 - omega_a, rad/s, signed.
    pub detuning: f64,
    /// Drive intensity I, W/m^2.
    pub drive_intensity: f64,
}

impl VaporConditions {
    /// `|delta| >= 10 Gamma`: absorption may be dropped.
    pub fn is_far_detuned(&self, atom: &TwoLevelAtom) -> bool {
        self.detuning.abs() >= 10.0 * atom.linewidth
    }

    /// `I / I_s <= 0.2`: the first-order Kerr expansion is trustworthy.
    pub fn is_kerr_valid(&self, atom: &TwoLevelAtom) -> bool {
        let i_s = saturation_intensity(atom, self.detuning);
        i_s > 0.0 && self.drive_intensity / i_s <= 0.2
    }

    /// Rabi frequency squared from the drive intensity,
    /// `Omega_R^2 = 2 mu^2 I / (c eps0 hbar^2)`.
    pub fn rabi_frequency_sq(&self, atom: &TwoLevelAtom) -> f64 {
        2.0 * atom.dipole_moment * atom.dipole_moment * self.drive_intensity
            / (C * EPS0 * HBAR * HBAR)
    }
}

/// Complex two-level susceptibility
/// `chi = -(mu^2 n_a / hbar eps0) (delta - i Gamma/2) / (delta^2 + Gamma^2/4 + Omega_R^2/2)`
/// (with the density power selected by `prefactor`).
pub fn susceptibility_with(
    atom: &TwoLevelAtom,
    conditions: &VaporConditions,
    prefactor: Prefactor,
) -> Complex64 {
    let n_a = match prefactor {
        Prefactor::DensityLinear => conditions.atomic_density,
        Prefactor::DensitySquared => conditions.atomic_density * conditions.atomic_density,
    };
    let mu2 = atom.dipole_moment * atom.dipole_moment;
    let delta = conditions.detuning;
    let gamma = atom.linewidth;
    let denom = delta * delta + gamma * gamma / 4.0 + conditions.rabi_frequency_sq(atom) / 2.0;
    -(mu2 * n_a / (HBAR * EPS0)) * Complex64::new(delta, -gamma / 2.0) / denom
}

/// [`susceptibility_with`] under the default (internally consistent)
/// linear-density prefactor.
pub fn susceptibility(atom: &TwoLevelAtom, conditions: &VaporConditions) -> Complex64 {
    susceptibility_with(atom, conditions, Prefactor::DensityLinear)
}

/// First-order Kerr expansion of the susceptibility in `I / I_s`:
///
/// ```text
/// n0 = 1 - (n_a mu^2 / 2 eps0 hbar Gamma) / (delta/Gamma)
/// n2 = (n_a mu^4 / 2 c eps0^2 hbar^3 Gamma^3) / (delta/Gamma)^3
/// ```
///
/// `n2` comes out in m^2/W; its sign follows the sign of the detuning, so
/// red-detuned driving (`delta < 0`) gives a self-defocusing medium.
pub fn kerr_coefficients(
    atom: &TwoLevelAtom,
    atomic_density: f64,
    detuning: f64,
) -> Result<(f64, f64), VaporError> {
    if detuning == 0.0 {
        return Err(VaporError::ZeroDetuning);
    }
    let mu2 = atom.dipole_moment * atom.dipole_moment;
    let gamma = atom.linewidth;
    let d = detuning / gamma;
    let n0 = 1.0 - atomic_density * mu2 / (2.0 * EPS0 * HBAR * gamma) / d;
    let n2 = atomic_density * mu2 * mu2
        / (2.0 * C * EPS0 * EPS0 * HBAR.powi(3) * gamma.powi(3))
        / d.powi(3);
    Ok((n0, n2))
}

/// Far-detuned saturation intensity `I_s = 4 (delta/Gamma)^2 I_s^0`, W/m^2.
/// Degenerates to 0 at `delta = 0`.
pub fn saturation_intensity(atom: &TwoLevelAtom, detuning: f64) -> f64 {
    let d = detuning / atom.linewidth;
    4.0 * d * d * atom.saturation_intensity_resonant
}

/// Probe beam for a feasibility estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beam {
    /// Drive intensity, W/m^2.
    pub intensity: f64,
    /// Vacuum wavelength, m.
    pub wavelength: f64,
}

/// Experiment feasibility numbers for a vapor-cell two-stream setup.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub n0: f64,
    /// m^2/W.
    pub n2: f64,
    /// Index modulation `Delta n = n2 I`.
    pub delta_n: f64,
    pub i_over_is: f64,
    /// `lambda0 / |Delta n|`, m; `None` when `Delta n = 0` (divergent).
    pub length_scale: Option<f64>,
    /// `5 lambda0 / |Delta n|`, m.
    pub recommended_length: Option<f64>,
    /// Handoff to the fluid scales: `chi3 |E0|^2 = 2 n0 n2 I` (from
    /// `n^2 = n0^2 + chi3 |E0|^2` to first order). Dimensionless.
    pub chi3_e0_squared: f64,
    pub far_detuned: bool,
    pub kerr_valid: bool,
}

/// Computes the sample-length requirement and the scales handoff for one
/// operating point. The Kerr-validity and far-detuning flags are reported,
/// not enforced.
pub fn feasibility_report(
    atom: &TwoLevelAtom,
    conditions: &VaporConditions,
    beam: &Beam,
) -> Result<FeasibilityReport, VaporError> {
    let (n0, n2) = kerr_coefficients(atom, conditions.atomic_density, conditions.detuning)?;
    let delta_n = n2 * beam.intensity;
    let i_s = saturation_intensity(atom, conditions.detuning);
    let i_over_is = if i_s > 0.0 { beam.intensity / i_s } else { f64::INFINITY };
    let length_scale = if delta_n != 0.0 {
        Some(beam.wavelength / delta_n.abs())
    } else {
        None
    };
    Ok(FeasibilityReport {
        n0,
        n2,
        delta_n,
        i_over_is,
        length_scale,
        recommended_length: length_scale.map(|l| 5.0 * l),
        chi3_e0_squared: 2.0 * n0 * n2 * beam.intensity,
        far_detuned: conditions.is_far_detuned(atom),
        kerr_valid: conditions.is_kerr_valid(atom),
    })
}

/// One row of a detuning scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub delta_over_gamma: f64,
    /// m^-3.
    pub atomic_density: f64,
    /// m^2/W.
    pub n2: f64,
    /// W/m^2.
    pub i_s: f64,
}

/// Kerr index and saturation intensity over a detuning range for several
/// densities. `|n2|` falls off as `|delta|^-3` while `I_s` grows as
/// `delta^2`.
pub fn detuning_scan(
    atom: &TwoLevelAtom,
    densities: &[f64],
    detunings: &[f64],
) -> Result<Vec<ScanRow>, VaporError> {
    let mut rows = Vec::with_capacity(densities.len() * detunings.len());
    for &n_a in densities {
        for &delta in detunings {
            let (_, n2) = kerr_coefficients(atom, n_a, delta)?;
            rows.push(ScanRow {
                delta_over_gamma: delta / atom.linewidth,
                atomic_density: n_a,
                n2,
                i_s: saturation_intensity(atom, delta),
            });
        }
    }
    Ok(rows)
}

/// Converters between SI and the laboratory units used at the CLI surface.
pub mod units {
    /// cm^-3 -> m^-3.
    pub fn per_cm3_to_per_m3(x: f64) -> f64 {
        x * 1e6
    }
    /// m^-3 -> cm^-3.
    pub fn per_m3_to_per_cm3(x: f64) -> f64 {
        x * 1e-6
    }
    /// W/cm^2 -> W/m^2.
    pub fn w_per_cm2_to_w_per_m2(x: f64) -> f64 {
        x * 1e4
    }
    /// W/m^2 -> W/cm^2.
    pub fn w_per_m2_to_w_per_cm2(x: f64) -> f64 {
        x * 1e-4
    }
    /// m^2/W -> cm^2/W.
    pub fn m2_per_w_to_cm2_per_w(x: f64) -> f64 {
        x * 1e4
    }
    /// MHz (ordinary frequency) -> rad/s.
    pub fn mhz_to_rad_per_s(x: f64) -> f64 {
        x * 2.0 * std::f64::consts::PI * 1e6
    }
    /// rad/s -> MHz (ordinary frequency).
    pub fn rad_per_s_to_mhz(x: f64) -> f64 {
        x / (2.0 * std::f64::consts::PI * 1e6)
    }
    /// m -> mm.
    pub fn m_to_mm(x: f64) -> f64 {
        x * 1e3
    }
}
