//! In-place 2D FFT on row-major `Vec<Complex64>` buffers, plus spectral
//! derivatives. Forward transforms are unnormalized; the inverse carries the
//! `1/(nx ny)` factor, so a forward/inverse round trip is the identity.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

use super::grid::Grid;

pub struct Fft2d {
    nx: usize,
    ny: usize,
    row_fwd: Arc<dyn Fft<f64>>,
    row_inv: Arc<dyn Fft<f64>>,
    col_fwd: Arc<dyn Fft<f64>>,
    col_inv: Arc<dyn Fft<f64>>,
    column_buf: Vec<Complex64>,
}

impl Fft2d {
    pub fn new(nx: usize, ny: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            nx,
            ny,
            row_fwd: planner.plan_fft_forward(nx),
            row_inv: planner.plan_fft_inverse(nx),
            col_fwd: planner.plan_fft_forward(ny),
            col_inv: planner.plan_fft_inverse(ny),
            column_buf: vec![Complex64::new(0.0, 0.0); ny],
        }
    }

    pub fn for_grid(grid: &Grid) -> Self {
        Self::new(grid.nx, grid.ny)
    }

    pub fn forward(&mut self, field: &mut [Complex64]) {
        debug_assert_eq!(field.len(), self.nx * self.ny);
        for row in field.chunks_exact_mut(self.nx) {
            self.row_fwd.process(row);
        }
        for i in 0..self.nx {
            for j in 0..self.ny {
                self.column_buf[j] = field[j * self.nx + i];
            }
            self.col_fwd.process(&mut self.column_buf);
            for j in 0..self.ny {
                field[j * self.nx + i] = self.column_buf[j];
            }
        }
    }

    pub fn inverse(&mut self, field: &mut [Complex64]) {
        debug_assert_eq!(field.len(), self.nx * self.ny);
        for row in field.chunks_exact_mut(self.nx) {
            self.row_inv.process(row);
        }
        let scale = 1.0 / (self.nx * self.ny) as f64;
        for i in 0..self.nx {
            for j in 0..self.ny {
                self.column_buf[j] = field[j * self.nx + i];
            }
            self.col_inv.process(&mut self.column_buf);
            for j in 0..self.ny {
                field[j * self.nx + i] = self.column_buf[j] * scale;
            }
        }
    }

    /// Spectral gradient `(d/dx, d/dy)` of a complex field.
    pub fn gradient(&mut self, grid: &Grid, field: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut hat = field.to_vec();
        self.forward(&mut hat);
        let mut gx = hat.clone();
        let mut gy = hat;
        for j in 0..grid.ny {
            let ky = grid.ky(j);
            for i in 0..grid.nx {
                let kx = grid.kx(i);
                let idx = grid.idx(i, j);
                gx[idx] *= Complex64::new(0.0, kx);
                gy[idx] *= Complex64::new(0.0, ky);
            }
        }
        self.inverse(&mut gx);
        self.inverse(&mut gy);
        (gx, gy)
    }
}
