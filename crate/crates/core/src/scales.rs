//! Conversion between physical optical parameters and the dimensionless
//! fluid description, plus flow-geometry relations.
//!
//! All solver-facing quantities are dimensionless: transverse and
//! longitudinal coordinates are measured in units of `(n k0)^-1` and the
//! field is normalized so that the background density is `rho0`. Physical
//! values (wavelength, susceptibility, intensity) enter the model only
//! through this module.

use thiserror::Error;

/// Default soft bound on the transverse flow speed above which the paraxial
/// ordering becomes questionable.
pub const PARAXIAL_WARN_THRESHOLD: f64 = 0.3;

#[derive(Debug, Error, PartialEq)]
pub enum ScalesError {
    /// `chi3 >= 0`: attractive photon interactions. The defocusing fluid
    /// quantities (sound speed, healing length) are undefined there.
    #[error("focusing regime (chi3 = {chi3:e} >= 0): fluid sound speed undefined")]
    FocusingRegime { chi3: f64 },
    #[error("invalid medium: {0}")]
    InvalidMedium(String),
    #[error("angle {angle} rad outside [0, pi/2)")]
    AngleOutOfRange { angle: f64 },
    #[error("negative background intensity {0}")]
    NegativeIntensity(f64),
    #[error("two-fluid sound speed is zero: Mach number undefined")]
    ZeroSoundSpeed,
}

/// Bulk Kerr medium carrying a single optical carrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalMedium {
    /// Vacuum wavelength of the carrier, m.
    pub wavelength_vacuum: f64,
    /// Homogeneous linear refractive index `n = sqrt(1 + chi1)`.
    pub n_linear: f64,
    /// Third-order (Kerr) susceptibility, m^2/V^2, signed. Negative values
    /// give the defocusing (repulsive-photon) fluid regime.
    pub chi3: f64,
}

impl OpticalMedium {
    pub fn new(wavelength_vacuum: f64, n_linear: f64, chi3: f64) -> Result<Self, ScalesError> {
        if !(wavelength_vacuum > 0.0) {
            return Err(ScalesError::InvalidMedium(format!(
                "wavelength_vacuum = {wavelength_vacuum} must be > 0"
            )));
        }
        if !(n_linear >= 1.0) {
            return Err(ScalesError::InvalidMedium(format!(
                "n_linear = {n_linear} must be >= 1"
            )));
        }
        Ok(Self {
            wavelength_vacuum,
            n_linear,
            chi3,
        })
    }

    /// Vacuum wavenumber `k0 = 2 pi / lambda0`.
    pub fn k0(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.wavelength_vacuum
    }

    /// True for `chi3 >= 0` (attractive photon interactions).
    pub fn is_focusing(&self) -> bool {
        self.chi3 >= 0.0
    }
}

/// Derived quantities linking the optical parameters to the dimensionless
/// fluid model.
///
/// Two healing lengths are carried on purpose. The single-fluid Bogoliubov
/// crossover happens at `q ~ 1/xi_single` with `xi_single = 1/cs_single`,
/// while the two-fluid dispersion relation is organized around
/// `xi_two = 1/cs_two` with `cs_two = sqrt(2 rho0 g)`. Exposing both avoids
/// silent factor-sqrt(2) mistakes when moving between the two pictures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidScales {
    /// Background density (|E0|^2 in physical units, or 1 in solver units).
    pub rho0: f64,
    /// Dimensionless interaction strength, `g = -chi3 / (2 n^2)` after the
    /// coordinate rescaling; > 0 in the defocusing regime.
    pub g: f64,
    /// Single-fluid sound speed `cs' = sqrt(g rho0)` (dimensionless).
    pub cs_single: f64,
    /// Two-fluid sound speed `cs = sqrt(2 rho0 g) = sqrt(2) cs'`.
    pub cs_two: f64,
    /// `xi' = 1 / cs'`.
    pub xi_single: f64,
    /// `xi = 1 / cs`.
    pub xi_two: f64,
    /// Healing length restored to physical units,
    /// `k0^-1 sqrt(-2 / (chi3 |E0|^2))`, m.
    pub xi_physical: f64,
}

impl FluidScales {
    /// Dimensionless scales for a solver-units model: `rho0` and `g` given
    /// directly, no physical handoff (`xi_physical` is reported as the
    /// dimensionless `xi_single`).
    pub fn from_dimensionless(g: f64, rho0: f64) -> Result<Self, ScalesError> {
        if g <= 0.0 {
            return Err(ScalesError::FocusingRegime { chi3: g });
        }
        if rho0 < 0.0 {
            return Err(ScalesError::NegativeIntensity(rho0));
        }
        let cs_single = (g * rho0).sqrt();
        let cs_two = std::f64::consts::SQRT_2 * cs_single;
        Ok(Self {
            rho0,
            g,
            cs_single,
            cs_two,
            xi_single: 1.0 / cs_single,
            xi_two: 1.0 / cs_two,
            xi_physical: 1.0 / cs_single,
        })
    }

    /// True when the zero-interaction or zero-density limit was reached and
    /// the healing lengths are divergent.
    pub fn is_divergent(&self) -> bool {
        !self.xi_physical.is_finite()
    }
}

/// Transverse flow geometry: propagation angle inside the medium, incidence
/// angle outside, and the dimensionless transverse flow speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowGeometry {
    /// Internal propagation angle theta, rad.
    pub theta_internal: f64,
    /// Incidence angle theta_i, rad (related by Snell's law).
    pub theta_incidence: f64,
    /// `v = sin(theta) = sin(theta_i) / n`, dimensionless.
    pub v: f64,
}

impl FlowGeometry {
    /// Whether `v` exceeds the soft paraxial bound.
    pub fn exceeds_paraxial_bound(&self, threshold: f64) -> bool {
        self.v > threshold
    }
}

/// Maps optical parameters onto the dimensionless fluid scales.
///
/// In the rescaled coordinates the solver coupling is `g = -chi3 / (2 n^2)`,
/// the single-fluid sound speed `cs' = n^-1 sqrt(-chi3 |E0|^2 / 2)` and the
/// physical healing length `xi = k0^-1 sqrt(-2 / (chi3 |E0|^2))`.
///
/// `chi3 -> 0^-` or `background_intensity -> 0` drive `cs' -> 0` and a
/// divergent healing length; the result is returned with infinite `xi`
/// fields and flagged by [`FluidScales::is_divergent`] rather than as NaN.
pub fn derive_scales(
    medium: &OpticalMedium,
    background_intensity: f64,
) -> Result<FluidScales, ScalesError> {
    if medium.is_focusing() {
        return Err(ScalesError::FocusingRegime { chi3: medium.chi3 });
    }
    if background_intensity < 0.0 {
        return Err(ScalesError::NegativeIntensity(background_intensity));
    }
    let n = medium.n_linear;
    let g = -medium.chi3 / (2.0 * n * n);
    let rho0 = background_intensity;
    let cs_single = (g * rho0).sqrt();
    let cs_two = std::f64::consts::SQRT_2 * cs_single;
    let xi_physical = if cs_single > 0.0 {
        (-2.0 / (medium.chi3 * background_intensity)).sqrt() / medium.k0()
    } else {
        f64::INFINITY
    };
    Ok(FluidScales {
        rho0,
        g,
        cs_single,
        cs_two,
        xi_single: 1.0 / cs_single,
        xi_two: 1.0 / cs_two,
        xi_physical,
    })
}

/// Flow geometry from the internal propagation angle.
pub fn flow_speed_internal(theta_internal: f64, n: f64) -> Result<FlowGeometry, ScalesError> {
    if !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta_internal) {
        return Err(ScalesError::AngleOutOfRange {
            angle: theta_internal,
        });
    }
    let v = theta_internal.sin();
    Ok(FlowGeometry {
        theta_internal,
        theta_incidence: (n * v).min(1.0).asin(),
        v,
    })
}

/// Flow geometry from the incidence angle, `v = sin(theta_i) / n`.
pub fn flow_speed_incidence(theta_incidence: f64, n: f64) -> Result<FlowGeometry, ScalesError> {
    if !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta_incidence) {
        return Err(ScalesError::AngleOutOfRange {
            angle: theta_incidence,
        });
    }
    let v = theta_incidence.sin() / n;
    Ok(FlowGeometry {
        theta_internal: v.asin(),
        theta_incidence,
        v,
    })
}

/// Mach number `beta = v / cs` with the two-fluid sound speed.
pub fn mach_number(v: f64, scales: &FluidScales) -> Result<f64, ScalesError> {
    if scales.cs_two == 0.0 {
        return Err(ScalesError::ZeroSoundSpeed);
    }
    Ok(v / scales.cs_two)
}
