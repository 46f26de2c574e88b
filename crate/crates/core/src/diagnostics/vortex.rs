//! Quantum-vortex detection by plaquette phase winding.

use crate::solver::FieldState;

use super::DENSITY_FLOOR_REL;

/// A phase singularity: plaquette-center position (cell coordinates) and
/// integer winding number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VortexRecord {
    pub x: f64,
    pub y: f64,
    pub charge: i32,
}

fn wrap_phase(d: f64) -> f64 {
    // Map to (-pi, pi].
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut d = d % two_pi;
    if d <= -std::f64::consts::PI {
        d += two_pi;
    } else if d > std::f64::consts::PI {
        d -= two_pi;
    }
    d
}

/// Scans every 2x2 plaquette (periodic wrap included) whose four corners sit
/// above the density floor and records nonzero phase windings. The winding
/// is the sum of the four wrapped phase differences divided by 2 pi, an
/// exact integer; on a periodic domain the total charge is always zero.
pub fn detect_vortices(state: &FieldState, density_floor: Option<f64>) -> Vec<VortexRecord> {
    let grid = state.grid;
    let rho_max = state.psi.iter().map(|p| p.norm_sqr()).fold(0.0, f64::max);
    let floor = density_floor.unwrap_or(DENSITY_FLOOR_REL * rho_max);
    let phase: Vec<f64> = state.psi.iter().map(|p| p.arg()).collect();
    let dense: Vec<bool> = state.psi.iter().map(|p| p.norm_sqr() > floor).collect();
    let mut records = Vec::new();
    for j in 0..grid.ny {
        let jn = (j + 1) % grid.ny;
        for i in 0..grid.nx {
            let in_ = (i + 1) % grid.nx;
            let corners = [
                grid.idx(i, j),
                grid.idx(in_, j),
                grid.idx(in_, jn),
                grid.idx(i, jn),
            ];
            if !corners.iter().all(|&c| dense[c]) {
                continue;
            }
            let winding: f64 = (0..4)
                .map(|k| wrap_phase(phase[corners[(k + 1) % 4]] - phase[corners[k]]))
                .sum();
            let charge = (winding / (2.0 * std::f64::consts::PI)).round() as i32;
            if charge != 0 {
                records.push(VortexRecord {
                    x: i as f64 + 0.5,
                    y: j as f64 + 0.5,
                    charge,
                });
            }
        }
    }
    records
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Grid;
    use num_complex::Complex64;

    fn grid() -> Grid {
        Grid::new(64, 64, 16.0, 16.0, 0.01).unwrap()
    }

    #[test]
    fn plane_wave_has_no_vortices() {
        let grid = grid();
        let k = grid.kx(3);
        let state = FieldState::from_fn(grid, |x, _| Complex64::new(0.0, k * x).exp());
        assert!(detect_vortices(&state, None).is_empty());
    }

    #[test]
    fn single_vortex_detected() {
        let grid = grid();
        // Keep the singularity strictly inside a plaquette; a zero exactly
        // on a grid line makes the winding of the touching plaquettes
        // ill-defined.
        let (cx, cy) = (
            grid.lx / 2.0 + 0.3 * grid.dx(),
            grid.ly / 2.0 + 0.3 * grid.dy(),
        );
        let core = grid.dx();
        let state = FieldState::from_fn(grid, |x, y| {
            Complex64::new(x - cx, y - cy) / ((x - cx).powi(2) + (y - cy).powi(2) + core * core).sqrt()
        });
        let records = detect_vortices(&state, None);
        // One positive vortex at the center; the periodic continuation forces
        // a compensating winding along the seam, so restrict to the interior.
        let interior: Vec<_> = records
            .iter()
            .filter(|r| {
                r.x > 8.0 && r.x < grid.nx as f64 - 8.0 && r.y > 8.0 && r.y < grid.ny as f64 - 8.0
            })
            .collect();
        assert_eq!(interior.len(), 1);
        assert_eq!(interior[0].charge, 1);
        assert!((interior[0].x - grid.nx as f64 / 2.0).abs() <= 1.0);
        assert!((interior[0].y - grid.ny as f64 / 2.0).abs() <= 1.0);
        // Net charge on the periodic domain is zero.
        let net: i32 = records.iter().map(|r| r.charge).sum();
        assert_eq!(net, 0);
    }

    #[test]
    fn vortex_antivortex_pair() {
        let grid = grid();
        let core = grid.dx();
        // Off the grid lines in both coordinates (see above).
        let yc = grid.ly * 0.5 + 0.3 * grid.dy();
        let (x1, y1) = (grid.lx * 0.35 + 0.3 * grid.dx(), yc);
        let (x2, y2) = (grid.lx * 0.65 + 0.3 * grid.dx(), yc);
        let state = FieldState::from_fn(grid, |x, y| {
            let a = Complex64::new(x - x1, y - y1)
                / ((x - x1).powi(2) + (y - y1).powi(2) + core * core).sqrt();
            let b = Complex64::new(x - x2, -(y - y2))
                / ((x - x2).powi(2) + (y - y2).powi(2) + core * core).sqrt();
            a * b
        });
        let records = detect_vortices(&state, None);
        let net: i32 = records.iter().map(|r| r.charge).sum();
        assert_eq!(net, 0);
        let positive: Vec<_> = records.iter().filter(|r| r.charge == 1).collect();
        let negative: Vec<_> = records.iter().filter(|r| r.charge == -1).collect();
        assert_eq!(positive.len(), 1);
        assert_eq!(negative.len(), 1);
        // Positions to one cell.
        assert!((positive[0].x - 0.35 * grid.nx as f64).abs() <= 1.0);
        assert!((negative[0].x - 0.65 * grid.nx as f64).abs() <= 1.0);
    }
}
