//! Periodic 2D lattice for the spectral propagator. Coordinates are
//! dimensionless (units of `(n k0)^-1`); the wavenumber lattice is
//! `k_j = 2 pi m / l` with `m` in `[-n/2, n/2)`.

use super::SolverError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    /// Propagation step size.
    pub dz: f64,
}

impl Grid {
    pub fn new(nx: usize, ny: usize, lx: f64, ly: f64, dz: f64) -> Result<Self, SolverError> {
        if nx < 8 || ny < 8 {
            return Err(SolverError::BadGrid(format!(
                "grid {nx}x{ny} too small, need at least 8x8"
            )));
        }
        if !(lx > 0.0 && ly > 0.0 && dz > 0.0) {
            return Err(SolverError::BadGrid(format!(
                "lx = {lx}, ly = {ly}, dz = {dz} must all be > 0"
            )));
        }
        Ok(Self { nx, ny, lx, ly, dz })
    }

    pub fn cells(&self) -> usize {
        self.nx * self.ny
    }

    pub fn dx(&self) -> f64 {
        self.lx / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.ly / self.ny as f64
    }

    /// Cell area `dx dy`.
    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    /// Signed mode number for FFT bin `i`: `m` in `[-n/2, n/2)`.
    pub fn mode_number(i: usize, n: usize) -> i64 {
        if i < n / 2 {
            i as i64
        } else {
            i as i64 - n as i64
        }
    }

    pub fn kx(&self, i: usize) -> f64 {
        2.0 * std::f64::consts::PI * Self::mode_number(i, self.nx) as f64 / self.lx
    }

    pub fn ky(&self, j: usize) -> f64 {
        2.0 * std::f64::consts::PI * Self::mode_number(j, self.ny) as f64 / self.ly
    }

    /// Row-major cell index (row `j` = y, column `i` = x).
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Conservative default step:
    /// `min(0.1 dx^2, 0.01 / (g rho_max))`, resolving both the kinetic phase
    /// advance at the Nyquist scale and the nonlinear phase advance.
    pub fn default_dz(dx: f64, g: f64, rho_max: f64) -> f64 {
        let kinetic = 0.1 * dx * dx;
        if g * rho_max > 0.0 {
            kinetic.min(0.01 / (g * rho_max))
        } else {
            kinetic
        }
    }
}
