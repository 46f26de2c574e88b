//! Dimensionless 2D NLS propagator:
//! `i dpsi/dz = -1/2 lap psi + [V0 + g |psi|^2] psi` on a periodic lattice,
//! advanced by symmetric (Strang) splitting: half kinetic step in spectral
//! space, exact local nonlinear phase step in real space, half kinetic step.
//! Both sub-steps preserve the norm exactly, so norm drift is pure roundoff.
//!
//! Two representations of the two-stream configuration are available:
//! a single coherent field carrying both plane waves, and a pair of
//! envelopes coupled only through the total density `|psi1|^2 + |psi2|^2`.
//! The dual-envelope model is the one whose linearization reproduces the
//! two-fluid dispersion relation exactly; the single-field superposition
//! adds interference terms on top of it.

pub mod grid;
pub mod snapshot;
pub mod spectral;
pub mod state;

pub use grid::Grid;
pub use spectral::Fft2d;
pub use state::FieldState;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("{0}")]
    BadGrid(String),
    #[error("invalid run spec: {0}")]
    BadSpec(String),
    #[error(
        "flow speed v0 = {v0} is not commensurate with lx = {lx}; \
         nearest commensurate values are {lower} and {upper}"
    )]
    IncommensurateFlow {
        v0: f64,
        lx: f64,
        lower: f64,
        upper: f64,
    },
    #[error("non-finite field values at z = {z}")]
    NonFinite { z: f64 },
}

/// How the two streams are represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StreamModel {
    /// One coherent field, `psi = sqrt(rho0) (1 + exp(i v0 x)) + noise`.
    SingleField,
    /// Two envelopes coupled through the total density. Default; this is
    /// the model the two-fluid linear theory describes.
    #[default]
    DualEnvelope,
}

/// Parameters of a two-stream propagation run.
#[derive(Debug, Clone)]
pub struct RunSpec {
    /// Interaction strength (defocusing: g > 0).
    pub g: f64,
    /// Optional external potential `V0(x, y)`, row-major.
    pub potential: Option<Vec<f64>>,
    /// Transverse stream speed; must satisfy `v0 lx / 2 pi` integer.
    pub v0: f64,
    /// Background density per stream.
    pub rho0: f64,
    /// Relative RMS of the white seed perturbation, in `[0, 1e-2]`.
    pub noise_amplitude: f64,
    pub noise_seed: u64,
    pub z_end: f64,
    /// Emit a snapshot every this many steps.
    pub snapshot_every: usize,
    pub model: StreamModel,
    /// 2/3-rule spectral truncation of the nonlinear term.
    pub dealias: bool,
}

impl Default for RunSpec {
    fn default() -> Self {
        Self {
            g: 0.5,
            potential: None,
            v0: 0.0,
            rho0: 1.0,
            noise_amplitude: 1e-6,
            noise_seed: 0,
            z_end: 1.0,
            snapshot_every: 1,
            model: StreamModel::DualEnvelope,
            dealias: false,
        }
    }
}

impl RunSpec {
    pub fn validate(&self, grid: &Grid) -> Result<(), SolverError> {
        if !(0.0..=1e-2).contains(&self.noise_amplitude) {
            return Err(SolverError::BadSpec(format!(
                "noise_amplitude = {} outside [0, 1e-2]",
                self.noise_amplitude
            )));
        }
        if self.snapshot_every == 0 {
            return Err(SolverError::BadSpec("snapshot_every must be >= 1".into()));
        }
        if self.z_end < 0.0 {
            return Err(SolverError::BadSpec(format!("z_end = {} < 0", self.z_end)));
        }
        if self.rho0 < 0.0 {
            return Err(SolverError::BadSpec(format!("rho0 = {} < 0", self.rho0)));
        }
        if let Some(v) = &self.potential {
            if v.len() != grid.cells() {
                return Err(SolverError::BadSpec(format!(
                    "potential has {} cells, grid has {}",
                    v.len(),
                    grid.cells()
                )));
            }
        }
        check_commensurate(self.v0, grid.lx)?;
        Ok(())
    }
}

/// A periodic tilted plane wave requires `v0 lx / 2 pi` integer.
pub fn check_commensurate(v0: f64, lx: f64) -> Result<(), SolverError> {
    let m = v0 * lx / (2.0 * std::f64::consts::PI);
    if (m - m.round()).abs() > 1e-9 * m.abs().max(1.0) {
        let step = 2.0 * std::f64::consts::PI / lx;
        return Err(SolverError::IncommensurateFlow {
            v0,
            lx,
            lower: m.floor() * step,
            upper: m.ceil() * step,
        });
    }
    Ok(())
}

/// One or two coupled fields plus the stepping machinery for a run.
#[derive(Debug)]
pub struct TwoStreamSystem {
    pub model: StreamModel,
    pub fields: Vec<FieldState>,
}

impl TwoStreamSystem {
    pub fn z(&self) -> f64 {
        self.fields[0].z
    }

    pub fn grid(&self) -> &Grid {
        &self.fields[0].grid
    }

    /// Total density per cell, summed over envelopes.
    pub fn total_density(&self) -> Vec<f64> {
        let mut rho = vec![0.0; self.grid().cells()];
        for field in &self.fields {
            for (r, p) in rho.iter_mut().zip(&field.psi) {
                *r += p.norm_sqr();
            }
        }
        rho
    }
}

/// White complex noise with the requested RMS, band-limited by discarding
/// the highest 10% of the wavenumber lattice (per axis) so the seed does not
/// alias immediately, then rescaled back to the exact RMS.
pub fn filtered_noise(grid: &Grid, rms: f64, rng: &mut ChaCha12Rng, fft: &mut Fft2d) -> Vec<Complex64> {
    if rms == 0.0 {
        return vec![Complex64::new(0.0, 0.0); grid.cells()];
    }
    // Uniform components scaled so E|eta|^2 = rms^2.
    let half_width = rms * (1.5f64).sqrt();
    let mut eta: Vec<Complex64> = (0..grid.cells())
        .map(|_| {
            Complex64::new(
                rng.gen_range(-half_width..half_width),
                rng.gen_range(-half_width..half_width),
            )
        })
        .collect();
    fft.forward(&mut eta);
    for j in 0..grid.ny {
        let my = Grid::mode_number(j, grid.ny).unsigned_abs() as f64 / (grid.ny / 2) as f64;
        for i in 0..grid.nx {
            let mx = Grid::mode_number(i, grid.nx).unsigned_abs() as f64 / (grid.nx / 2) as f64;
            if mx.max(my) > 0.9 {
                eta[grid.idx(i, j)] = Complex64::new(0.0, 0.0);
            }
        }
    }
    fft.inverse(&mut eta);
    let actual_rms =
        (eta.iter().map(|e| e.norm_sqr()).sum::<f64>() / grid.cells() as f64).sqrt();
    if actual_rms > 0.0 {
        let scale = rms / actual_rms;
        for e in &mut eta {
            *e *= scale;
        }
    }
    eta
}

/// Builds the initial two-stream configuration: one stream at rest, the
/// other tilted by `exp(i v0 x)`, plus the seeded white perturbation.
/// Identical inputs give bit-identical states.
pub fn init_two_stream(grid: &Grid, spec: &RunSpec) -> Result<TwoStreamSystem, SolverError> {
    spec.validate(grid)?;
    let mut rng = ChaCha12Rng::seed_from_u64(spec.noise_seed);
    let mut fft = Fft2d::for_grid(grid);
    let amp = spec.rho0.sqrt();
    let rms = spec.noise_amplitude * amp;
    let fields = match spec.model {
        StreamModel::SingleField => {
            let eta = filtered_noise(grid, rms, &mut rng, &mut fft);
            let mut state = FieldState::from_fn(*grid, |x, _| {
                amp * (Complex64::new(1.0, 0.0) + Complex64::new(0.0, spec.v0 * x).exp())
            });
            for (p, e) in state.psi.iter_mut().zip(&eta) {
                *p += e;
            }
            vec![state]
        }
        StreamModel::DualEnvelope => {
            let eta1 = filtered_noise(grid, rms, &mut rng, &mut fft);
            let eta2 = filtered_noise(grid, rms, &mut rng, &mut fft);
            let mut rest = FieldState::uniform(*grid, Complex64::new(amp, 0.0));
            let mut flowing =
                FieldState::from_fn(*grid, |x, _| amp * Complex64::new(0.0, spec.v0 * x).exp());
            for (p, e) in rest.psi.iter_mut().zip(&eta1) {
                *p += e;
            }
            for (p, e) in flowing.psi.iter_mut().zip(&eta2) {
                *p += e;
            }
            vec![rest, flowing]
        }
    };
    Ok(TwoStreamSystem {
        model: spec.model,
        fields,
    })
}

/// Multiplies the density by `1 + amplitude cos(q x)` with `q` the lattice
/// mode `mode_x`, leaving the phase untouched. Used to seed a single
/// collective mode for spectroscopy and growth measurements.
pub fn seed_density_mode(state: &mut FieldState, mode_x: i64, amplitude: f64) {
    let q = 2.0 * std::f64::consts::PI * mode_x as f64 / state.grid.lx;
    let grid = state.grid;
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let x = i as f64 * grid.dx();
            let factor = (1.0 + amplitude * (q * x).cos()).max(0.0).sqrt();
            state.psi[grid.idx(i, j)] *= factor;
        }
    }
}

/// Strang split-step integrator bound to one grid and step size.
pub struct SplitStep {
    fft: Fft2d,
    /// `exp(-i k^2 dz / 4)` per cell (half kinetic step).
    half_kinetic: Vec<Complex64>,
    dealias_mask: Option<Vec<bool>>,
    dz: f64,
}

impl SplitStep {
    pub fn new(grid: &Grid) -> Self {
        Self::build(grid, false)
    }

    pub fn with_dealiasing(grid: &Grid) -> Self {
        Self::build(grid, true)
    }

    fn build(grid: &Grid, dealias: bool) -> Self {
        let mut half_kinetic = Vec::with_capacity(grid.cells());
        for j in 0..grid.ny {
            let ky = grid.ky(j);
            for i in 0..grid.nx {
                let kx = grid.kx(i);
                let k_sq = kx * kx + ky * ky;
                half_kinetic.push(Complex64::new(0.0, -k_sq * grid.dz / 4.0).exp());
            }
        }
        let dealias_mask = dealias.then(|| {
            let mut mask = Vec::with_capacity(grid.cells());
            for j in 0..grid.ny {
                let my = Grid::mode_number(j, grid.ny).unsigned_abs() as usize;
                for i in 0..grid.nx {
                    let mx = Grid::mode_number(i, grid.nx).unsigned_abs() as usize;
                    mask.push(mx <= grid.nx / 3 && my <= grid.ny / 3);
                }
            }
            mask
        });
        Self {
            fft: Fft2d::for_grid(grid),
            half_kinetic,
            dealias_mask,
            dz: grid.dz,
        }
    }

    pub fn fft_mut(&mut self) -> &mut Fft2d {
        &mut self.fft
    }

    fn half_kinetic_step(&mut self, psi: &mut [Complex64]) {
        self.fft.forward(psi);
        for (p, k) in psi.iter_mut().zip(&self.half_kinetic) {
            *p *= k;
        }
        if let Some(mask) = &self.dealias_mask {
            for (p, keep) in psi.iter_mut().zip(mask) {
                if !keep {
                    *p = Complex64::new(0.0, 0.0);
                }
            }
        }
        self.fft.inverse(psi);
    }

    /// One Strang step of a single field; `z` advances by `dz`.
    pub fn step(
        &mut self,
        state: &mut FieldState,
        g: f64,
        potential: Option<&[f64]>,
    ) -> Result<(), SolverError> {
        self.half_kinetic_step(&mut state.psi);
        for (idx, p) in state.psi.iter_mut().enumerate() {
            let v0 = potential.map_or(0.0, |v| v[idx]);
            let phase = -(v0 + g * p.norm_sqr()) * self.dz;
            *p *= Complex64::new(0.0, phase).exp();
        }
        self.half_kinetic_step(&mut state.psi);
        state.z += self.dz;
        if !state.is_finite() {
            return Err(SolverError::NonFinite { z: state.z });
        }
        Ok(())
    }

    /// One Strang step of two envelopes coupled through the total density.
    pub fn step_coupled(
        &mut self,
        a: &mut FieldState,
        b: &mut FieldState,
        g: f64,
        potential: Option<&[f64]>,
    ) -> Result<(), SolverError> {
        self.half_kinetic_step(&mut a.psi);
        self.half_kinetic_step(&mut b.psi);
        for idx in 0..a.psi.len() {
            let v0 = potential.map_or(0.0, |v| v[idx]);
            let rho = a.psi[idx].norm_sqr() + b.psi[idx].norm_sqr();
            let rot = Complex64::new(0.0, -(v0 + g * rho) * self.dz).exp();
            a.psi[idx] *= rot;
            b.psi[idx] *= rot;
        }
        self.half_kinetic_step(&mut a.psi);
        self.half_kinetic_step(&mut b.psi);
        a.z += self.dz;
        b.z += self.dz;
        if !a.is_finite() || !b.is_finite() {
            return Err(SolverError::NonFinite { z: a.z });
        }
        Ok(())
    }

    /// Advances a system (single or dual) by one step.
    pub fn step_system(
        &mut self,
        system: &mut TwoStreamSystem,
        g: f64,
        potential: Option<&[f64]>,
    ) -> Result<(), SolverError> {
        match system.model {
            StreamModel::SingleField => {
                let field = &mut system.fields[0];
                self.step(field, g, potential)
            }
            StreamModel::DualEnvelope => {
                let (a, rest) = system.fields.split_at_mut(1);
                self.step_coupled(&mut a[0], &mut rest[0], g, potential)
            }
        }
    }
}

/// Repeats [`SplitStep::step_system`] until `z_end`, invoking the callback
/// on the initial state and on every `snapshot_every`-th step (the final
/// state is always reported). Returns the number of snapshots emitted.
pub fn propagate(
    system: &mut TwoStreamSystem,
    spec: &RunSpec,
    mut on_snapshot: impl FnMut(&TwoStreamSystem),
) -> Result<usize, SolverError> {
    let grid = *system.grid();
    spec.validate(&grid)?;
    let mut stepper = if spec.dealias {
        SplitStep::with_dealiasing(&grid)
    } else {
        SplitStep::new(&grid)
    };
    let n_steps = ((spec.z_end - system.z()) / grid.dz - 1e-9).ceil().max(0.0) as usize;
    let mut emitted = 1;
    on_snapshot(system);
    for step in 1..=n_steps {
        stepper.step_system(system, spec.g, spec.potential.as_deref())?;
        if step % spec.snapshot_every == 0 || step == n_steps {
            on_snapshot(system);
            emitted += 1;
        }
    }
    Ok(emitted)
}
