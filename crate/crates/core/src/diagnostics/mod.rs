//! Hydrodynamic fields and experiment-style observables extracted from a
//! propagated field: Madelung variables, far-field spectra, density-mode
//! histories with exponential-growth fits, vortex detection and synthetic
//! holograms.

pub mod raster;
pub mod vortex;

pub use vortex::{detect_vortices, VortexRecord};

use num_complex::Complex64;
use thiserror::Error;

use crate::solver::{FieldState, Fft2d, Grid};

#[derive(Debug, Error, PartialEq)]
pub enum DiagnosticsError {
    #[error("growth fit needs at least {needed} samples in the window, found {found}")]
    TooFewSamples { needed: usize, found: usize },
    #[error("mode history samples must have strictly increasing z (got {prev} then {next})")]
    NonMonotonicZ { prev: f64, next: f64 },
    #[error("wavenumber ({0}, {1}) is not on the lattice")]
    OffLattice(f64, f64),
}

/// Madelung variables of a field. Velocity is computed from the
/// gauge-invariant current `Im(psi* grad psi) / rho` with spectral
/// gradients, which stays single-valued in the presence of vortices where
/// naive 2D phase unwrapping is path-dependent. Cells whose density falls
/// below the floor are masked.
#[derive(Debug, Clone)]
pub struct HydroFields {
    pub density: Vec<f64>,
    pub velocity: Vec<[f64; 2]>,
    /// Wrapped phase, reference only.
    pub phase: Vec<f64>,
    pub mask: Vec<bool>,
    pub grid: Grid,
}

/// Default density floor relative to the density maximum.
pub const DENSITY_FLOOR_REL: f64 = 1e-10;

pub fn madelung(state: &FieldState, density_floor: Option<f64>) -> HydroFields {
    let grid = state.grid;
    let density: Vec<f64> = state.psi.iter().map(|p| p.norm_sqr()).collect();
    let rho_max = density.iter().cloned().fold(0.0, f64::max);
    let floor = density_floor.unwrap_or(DENSITY_FLOOR_REL * rho_max);
    let mut fft = Fft2d::for_grid(&grid);
    let (gx, gy) = fft.gradient(&grid, &state.psi);
    let mut velocity = Vec::with_capacity(grid.cells());
    let mut mask = Vec::with_capacity(grid.cells());
    for idx in 0..grid.cells() {
        let rho = density[idx];
        let ok = rho_max > 0.0 && rho > floor;
        mask.push(ok);
        if ok {
            let current = [
                (state.psi[idx].conj() * gx[idx]).im,
                (state.psi[idx].conj() * gy[idx]).im,
            ];
            velocity.push([current[0] / rho, current[1] / rho]);
        } else {
            velocity.push([0.0, 0.0]);
        }
    }
    HydroFields {
        density,
        velocity,
        phase: state.psi.iter().map(|p| p.arg()).collect(),
        mask,
        grid,
    }
}

/// Far-field power spectrum `|psi_hat(q)|^2`, DC bin at the raster center.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Row-major, `ny` rows of `nx` bins, centered (bin `(nx/2, ny/2)` is DC).
    pub power: Vec<f64>,
    pub grid: Grid,
}

impl Spectrum {
    /// Wavenumber of a centered bin.
    pub fn q_at(&self, i: usize, j: usize) -> [f64; 2] {
        let mx = i as i64 - (self.grid.nx / 2) as i64;
        let my = j as i64 - (self.grid.ny / 2) as i64;
        [
            2.0 * std::f64::consts::PI * mx as f64 / self.grid.lx,
            2.0 * std::f64::consts::PI * my as f64 / self.grid.ly,
        ]
    }

    /// Wavenumber-space cell area.
    pub fn cell_area_q(&self) -> f64 {
        (2.0 * std::f64::consts::PI).powi(2) / (self.grid.lx * self.grid.ly)
    }

    /// `sum power dA_q`; equals `norm * (2 pi)^2 / (lx ly)` by Parseval.
    pub fn total(&self) -> f64 {
        self.power.iter().sum::<f64>() * self.cell_area_q()
    }

    /// Power integrated over bins with `q_lo < |q| < q_hi`.
    pub fn band_power(&self, q_lo: f64, q_hi: f64) -> f64 {
        let mut sum = 0.0;
        for j in 0..self.grid.ny {
            for i in 0..self.grid.nx {
                let q = self.q_at(i, j);
                let qn = (q[0] * q[0] + q[1] * q[1]).sqrt();
                if qn > q_lo && qn < q_hi {
                    sum += self.power[j * self.grid.nx + i];
                }
            }
        }
        sum * self.cell_area_q()
    }
}

pub fn far_field(state: &FieldState) -> Spectrum {
    let grid = state.grid;
    let mut hat = state.psi.clone();
    Fft2d::for_grid(&grid).forward(&mut hat);
    // |psi_hat|^2 normalized so that sum power dA_q = norm (2 pi)^2 / (lx ly).
    let scale = grid.cell_area() / grid.cells() as f64;
    let mut power = vec![0.0; grid.cells()];
    for j in 0..grid.ny {
        let js = (j + grid.ny / 2) % grid.ny;
        for i in 0..grid.nx {
            let is = (i + grid.nx / 2) % grid.nx;
            power[js * grid.nx + is] = hat[j * grid.nx + i].norm_sqr() * scale;
        }
    }
    Spectrum { power, grid }
}

/// Normalized Fourier coefficient of the density contrast at lattice mode
/// `(mx, my)`: `(1/N) sum (rho - rho_mean) exp(-i q r)`. A perturbation
/// `rho_mean * a * cos(q x)` gives `|coefficient| = rho_mean * a / 2`.
pub fn density_mode(rho: &[f64], grid: &Grid, mode: (i64, i64)) -> Complex64 {
    let mean = rho.iter().sum::<f64>() / rho.len() as f64;
    let qx = 2.0 * std::f64::consts::PI * mode.0 as f64 / grid.lx;
    let qy = 2.0 * std::f64::consts::PI * mode.1 as f64 / grid.ly;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..grid.ny {
        let y = j as f64 * grid.dy();
        for i in 0..grid.nx {
            let x = i as f64 * grid.dx();
            acc += (rho[grid.idx(i, j)] - mean) * Complex64::new(0.0, -(qx * x + qy * y)).exp();
        }
    }
    acc / grid.cells() as f64
}

/// Complex amplitude of one density mode sampled along the propagation.
#[derive(Debug, Clone)]
pub struct ModeHistory {
    /// Probed wavenumber.
    pub q: [f64; 2],
    /// Background density the relative amplitudes refer to.
    pub background: f64,
    /// `(z, delta_rho_hat(q, z))`, z strictly increasing.
    pub samples: Vec<(f64, Complex64)>,
}

impl ModeHistory {
    pub fn new(q: [f64; 2], background: f64) -> Self {
        Self {
            q,
            background,
            samples: Vec::new(),
        }
    }

    pub fn push(&mut self, z: f64, amplitude: Complex64) -> Result<(), DiagnosticsError> {
        if let Some(&(prev, _)) = self.samples.last() {
            if z <= prev {
                return Err(DiagnosticsError::NonMonotonicZ { prev, next: z });
            }
        }
        self.samples.push((z, amplitude));
        Ok(())
    }
}

/// Amplitude window selecting the linear regime of an instability run,
/// relative to the background density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthWindow {
    pub amp_lo: f64,
    pub amp_hi: f64,
}

impl Default for GrowthWindow {
    fn default() -> Self {
        Self {
            amp_lo: 1e-5,
            amp_hi: 1e-2,
        }
    }
}

/// Result of an exponential-growth fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFit {
    pub gamma: f64,
    pub uncertainty: f64,
    pub samples_used: usize,
}

/// Least-squares slope of `ln |delta_rho_hat|` over the first contiguous
/// stretch where the relative amplitude sits inside the window: fitting
/// starts when the amplitude first reaches `amp_lo` and stops as soon as it
/// exceeds `amp_hi`. Samples from a later re-entry into the window (the mode
/// ringing down after saturation) are ignored, as they would otherwise drag
/// the slope towards zero. The uncertainty comes from the residual variance.
/// At least 5 samples are required.
pub fn fit_growth_rate(
    history: &ModeHistory,
    window: GrowthWindow,
) -> Result<GrowthFit, DiagnosticsError> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let mut started = false;
    for &(z, a) in &history.samples {
        let rel = a.norm() / history.background;
        if !started {
            if rel < window.amp_lo {
                continue;
            }
            started = true;
        }
        if rel > window.amp_hi {
            break;
        }
        pts.push((z, a.norm().ln()));
    }
    if pts.len() < 5 {
        return Err(DiagnosticsError::TooFewSamples {
            needed: 5,
            found: pts.len(),
        });
    }
    let n = pts.len() as f64;
    let zbar = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let ybar = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let szz = pts.iter().map(|p| (p.0 - zbar).powi(2)).sum::<f64>();
    let szy = pts.iter().map(|p| (p.0 - zbar) * (p.1 - ybar)).sum::<f64>();
    let gamma = szy / szz;
    let residual_var = pts
        .iter()
        .map(|p| (p.1 - ybar - gamma * (p.0 - zbar)).powi(2))
        .sum::<f64>()
        / (n - 2.0);
    Ok(GrowthFit {
        gamma,
        uncertainty: (residual_var / szz).sqrt(),
        samples_used: pts.len(),
    })
}

/// Intensity of the field interfered with a reference plane wave,
/// `|psi + A exp(i k r)|^2` per cell. `ref_k` is a lattice mode pair.
pub fn hologram(state: &FieldState, reference_amplitude: f64, ref_k: (i64, i64)) -> Vec<f64> {
    let grid = state.grid;
    let kx = 2.0 * std::f64::consts::PI * ref_k.0 as f64 / grid.lx;
    let ky = 2.0 * std::f64::consts::PI * ref_k.1 as f64 / grid.ly;
    let mut intensity = Vec::with_capacity(grid.cells());
    for j in 0..grid.ny {
        let y = j as f64 * grid.dy();
        for i in 0..grid.nx {
            let x = i as f64 * grid.dx();
            let reference = reference_amplitude * Complex64::new(0.0, kx * x + ky * y).exp();
            intensity.push((state.psi[grid.idx(i, j)] + reference).norm_sqr());
        }
    }
    intensity
}

/// Number of bright fringes along one raster row, counted as rising zero
/// crossings of the intensity about its row mean. A charge-1 vortex between
/// two cuts shows up as a fringe-count difference of one (fork dislocation).
pub fn fringe_count(intensity: &[f64], grid: &Grid, row: usize) -> usize {
    let row = &intensity[row * grid.nx..(row + 1) * grid.nx];
    let mean = row.iter().sum::<f64>() / row.len() as f64;
    let mut crossings = 0;
    for i in 0..grid.nx {
        let a = row[i] - mean;
        let b = row[(i + 1) % grid.nx] - mean;
        if a <= 0.0 && b > 0.0 {
            crossings += 1;
        }
    }
    crossings
}
