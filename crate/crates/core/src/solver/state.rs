//! Field state and its conserved observables.

use num_complex::Complex64;

use super::grid::Grid;
use super::spectral::Fft2d;

/// Complex scalar field on a periodic lattice at propagation coordinate `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub psi: Vec<Complex64>,
    pub z: f64,
    pub grid: Grid,
}

impl FieldState {
    pub fn uniform(grid: Grid, value: Complex64) -> Self {
        Self {
            psi: vec![value; grid.cells()],
            z: 0.0,
            grid,
        }
    }

    pub fn from_fn(grid: Grid, mut f: impl FnMut(f64, f64) -> Complex64) -> Self {
        let mut psi = Vec::with_capacity(grid.cells());
        for j in 0..grid.ny {
            let y = j as f64 * grid.dy();
            for i in 0..grid.nx {
                let x = i as f64 * grid.dx();
                psi.push(f(x, y));
            }
        }
        Self { psi, z: 0.0, grid }
    }

    /// `N = sum |psi|^2 dA`.
    pub fn norm(&self) -> f64 {
        self.psi.iter().map(|p| p.norm_sqr()).sum::<f64>() * self.grid.cell_area()
    }

    /// `P = sum Im(psi* grad psi) dA`, evaluated in spectral space.
    pub fn momentum(&self, fft: &mut Fft2d) -> [f64; 2] {
        let mut hat = self.psi.clone();
        fft.forward(&mut hat);
        let (mut px, mut py) = (0.0, 0.0);
        for j in 0..self.grid.ny {
            let ky = self.grid.ky(j);
            for i in 0..self.grid.nx {
                let w = hat[self.grid.idx(i, j)].norm_sqr();
                px += self.grid.kx(i) * w;
                py += ky * w;
            }
        }
        let scale = self.grid.cell_area() / self.grid.cells() as f64;
        [px * scale, py * scale]
    }

    /// `H = sum [ |grad psi|^2 / 2 + V0 |psi|^2 + (g/2) |psi|^4 ] dA`.
    pub fn hamiltonian(&self, fft: &mut Fft2d, g: f64, potential: Option<&[f64]>) -> f64 {
        let mut hat = self.psi.clone();
        fft.forward(&mut hat);
        let mut kinetic = 0.0;
        for j in 0..self.grid.ny {
            let ky = self.grid.ky(j);
            for i in 0..self.grid.nx {
                let kx = self.grid.kx(i);
                kinetic += (kx * kx + ky * ky) * hat[self.grid.idx(i, j)].norm_sqr();
            }
        }
        kinetic *= 0.5 * self.grid.cell_area() / self.grid.cells() as f64;
        let mut local = 0.0;
        for (idx, p) in self.psi.iter().enumerate() {
            let rho = p.norm_sqr();
            let v0 = potential.map_or(0.0, |v| v[idx]);
            local += v0 * rho + 0.5 * g * rho * rho;
        }
        kinetic + local * self.grid.cell_area()
    }

    pub fn is_finite(&self) -> bool {
        self.psi.iter().all(|p| p.re.is_finite() && p.im.is_finite())
    }

    /// FNV-1a hash of the raw field bytes; used by the determinism contract.
    pub fn checksum(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bits: u64| {
            for byte in bits.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x1000_0000_01b3);
            }
        };
        for p in &self.psi {
            eat(p.re.to_bits());
            eat(p.im.to_bits());
        }
        h
    }
}
