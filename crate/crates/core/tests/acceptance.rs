//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; a FAIL line is always followed by the panic that
//! fails the corresponding test.

use num_complex::Complex64;
use photonfluid::diagnostics::{
    density_mode, detect_vortices, far_field, fit_growth_rate, fringe_count, hologram,
    GrowthWindow, ModeHistory,
};
use photonfluid::dispersion::{
    bogoliubov, dispersion_residual, doppler_bogoliubov, growth_rate, two_stream_roots,
    two_stream_roots_oracle, unstable_band, ModeQuery, Sign,
};
use photonfluid::solver::{
    init_two_stream, propagate, seed_density_mode, FieldState, Grid, RunSpec, SplitStep,
    StreamModel,
};
use photonfluid::vapor::{
    feasibility_report, units, Beam, TwoLevelAtom, VaporConditions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn report(criterion: &str, what: &str, ok: bool) {
    println!(
        "{criterion} {what} ... {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{criterion} failed: {what}");
}

#[test]
fn ac1_band_exactness() {
    let mut ok = true;
    for beta in [0.5, 1.0, 1.99, 2.0, 2.01, 3.0, 5.0] {
        let band = unstable_band(beta);
        // Analytic edges.
        let lo = (beta * beta - 4.0).max(0.0).sqrt();
        ok &= (band.q_lo - lo).abs() < 1e-12 && (band.q_hi - beta).abs() < 1e-12;
        for j in 1..=2000 {
            let q = j as f64 * 6.0 / 2000.0;
            let gamma = growth_rate(&ModeQuery::new(q, beta).unwrap());
            let inside = q > lo && q < beta;
            if inside != (gamma > 0.0) {
                ok = false;
            }
        }
    }
    report("AC-1", "unstable band exact for all sampled (Q, beta)", ok);
}

#[test]
fn ac2_closed_form_vs_oracle() {
    let mut rng = ChaCha12Rng::seed_from_u64(2);
    let mut max_dist: f64 = 0.0;
    let mut max_residual: f64 = 0.0;
    for _ in 0..10_000 {
        let q = rng.gen_range(f64::EPSILON..=5.0);
        let beta = rng.gen_range(f64::EPSILON..=5.0);
        let query = ModeQuery::new(q, beta).unwrap();
        let closed = two_stream_roots(&query);
        let oracle = two_stream_roots_oracle(&query);
        for (a, b) in closed.sorted().iter().zip(&oracle.sorted()) {
            max_dist = max_dist.max((a - b).norm());
        }
        for (root, on_pole) in closed.roots.iter().zip(&closed.pole_flags) {
            if !on_pole {
                if let Some(res) = dispersion_residual(&query, *root) {
                    max_residual = max_residual.max(res);
                }
            }
        }
    }
    report(
        "AC-2",
        &format!("closed form vs oracle (max dist {max_dist:.2e}, max residual {max_residual:.2e})"),
        max_dist < 1e-9 && max_residual < 1e-8,
    );
}

/// Runs one dual-envelope instability simulation seeded at a single
/// transverse lattice mode and returns the fitted growth rate.
fn measured_growth(mode: i64, z_end: f64, amp_hi: f64) -> f64 {
    let lx = 20.0 * std::f64::consts::PI;
    let grid = Grid::new(256, 256, lx, lx, 0.05).unwrap();
    let spec = RunSpec {
        g: 0.5,  // rho0 = 1 per stream: cs = sqrt(2 g rho0) = 1, xi = 1
        v0: 1.0, // beta = 1, lattice mode 10 of lx
        rho0: 1.0,
        // No broadband noise: the whole unstable band would otherwise grow
        // alongside the probe and saturate the run before the fit window of
        // the slower modes closes. Only the probed mode is seeded.
        noise_amplitude: 0.0,
        noise_seed: 42,
        z_end,
        snapshot_every: 10,
        model: StreamModel::DualEnvelope,
        ..RunSpec::default()
    };
    let mut system = init_two_stream(&grid, &spec).unwrap();
    // Seed the probed collective mode well below the fit window so the
    // transient sorts itself out before the window opens.
    let seed = 1e-5;
    for field in &mut system.fields {
        seed_density_mode(field, mode, seed);
    }
    let q = 2.0 * std::f64::consts::PI * mode as f64 / lx;
    let mut history = ModeHistory::new([q, 0.0], 2.0 * spec.rho0);
    propagate(&mut system, &spec, |s| {
        let rho = s.total_density();
        let amp = density_mode(&rho, s.grid(), (mode, 0));
        history.push(s.z(), amp).unwrap();
    })
    .unwrap();
    // Open the window well above the seed amplitude: below that the stable
    // branches (which keep the seed's magnitude) still bias the slope. The
    // top of the window is per mode, see the caller.
    let window = GrowthWindow { amp_lo: 1e-4, amp_hi };
    fit_growth_rate(&history, window).unwrap().gamma
}

#[test]
fn ac3_instability_growth_matches_linear_theory() {
    let mut ok = true;
    let mut detail = String::new();
    // Mode 3 gets a lower window top: its second harmonic (Q = 0.6) grows
    // faster than the fundamental and wrecks the run while the probe is
    // still around a relative amplitude of 1e-3.
    for (mode, z_end, amp_hi) in [(3_i64, 80.0, 1e-3), (5, 70.0, 1e-2), (7, 55.0, 1e-2)] {
        let q = 0.1 * mode as f64;
        let expected = growth_rate(&ModeQuery::new(q, 1.0).unwrap());
        let fitted = measured_growth(mode, z_end, amp_hi);
        let rel = (fitted - expected).abs() / expected;
        detail.push_str(&format!(
            "Q={q}: fitted {fitted:.4}, theory {expected:.4} ({:.1}%); ",
            rel * 100.0
        ));
        ok &= rel < 0.10;
    }
    report("AC-3", &format!("dynamic growth vs linear theory [{detail}]"), ok);
}

#[test]
fn ac4_bogoliubov_spectroscopy() {
    let lx = 8.0 * std::f64::consts::PI;
    let grid = Grid::new(128, 16, lx, lx / 8.0, 0.01).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for mode in [1_i64, 2, 4, 8] {
        let q = 2.0 * std::f64::consts::PI * mode as f64 / lx;
        // g rho0 = 1 so the single-fluid units have cs' = 1, xi' = 1.
        let mut state = FieldState::uniform(grid, Complex64::new(1.0, 0.0));
        seed_density_mode(&mut state, mode, 1e-4);
        let mut stepper = SplitStep::new(&grid);
        let mut samples = Vec::new();
        for _ in 0..2000 {
            stepper.step(&mut state, 1.0, None).unwrap();
            let rho: Vec<f64> = state.psi.iter().map(|p| p.norm_sqr()).collect();
            samples.push(density_mode(&rho, &grid, (mode, 0)).re);
        }
        // cos(Omega dz) from the three-point recurrence of a sampled cosine.
        let (mut num, mut den) = (0.0, 0.0);
        for n in 1..samples.len() - 1 {
            num += samples[n] * (samples[n + 1] + samples[n - 1]);
            den += 2.0 * samples[n] * samples[n];
        }
        let omega = (num / den).clamp(-1.0, 1.0).acos() / grid.dz;
        let expected = bogoliubov(q, Sign::Plus);
        let rel = (omega - expected).abs() / expected;
        detail.push_str(&format!("q={q}: {:.2}%; ", rel * 100.0));
        ok &= rel < 0.01;
    }
    report("AC-4", &format!("seeded-mode frequencies [{detail}]"), ok);
}

#[test]
fn ac5_conservation_and_convergence() {
    let make_state = |grid: Grid| {
        FieldState::from_fn(grid, |x, y| {
            let a = 1.0
                + 0.2 * (2.0 * std::f64::consts::PI * x / grid.lx).cos()
                + 0.1 * (4.0 * std::f64::consts::PI * y / grid.ly).sin();
            Complex64::new(a, 0.1 * (2.0 * std::f64::consts::PI * (x + y) / grid.lx).sin())
        })
    };
    let grid = Grid::new(64, 64, 16.0, 16.0, 0.005).unwrap();
    let mut state = make_state(grid);
    let mut stepper = SplitStep::new(&grid);
    let n0 = state.norm();
    let p0 = state.momentum(stepper.fft_mut());
    for _ in 0..1000 {
        stepper.step(&mut state, 1.0, None).unwrap();
    }
    let norm_drift = ((state.norm() - n0) / n0).abs();
    let p1 = state.momentum(stepper.fft_mut());
    let momentum_drift = ((p1[0] - p0[0]).abs()).max((p1[1] - p0[1]).abs()) / n0.max(1.0);

    let mut errors = Vec::new();
    for dz in [0.005, 0.0025] {
        let grid = Grid::new(64, 64, 16.0, 16.0, dz).unwrap();
        let mut state = make_state(grid);
        let mut stepper = SplitStep::new(&grid);
        let h0 = state.hamiltonian(stepper.fft_mut(), 1.0, None);
        for _ in 0..(0.5 / dz).round() as usize {
            stepper.step(&mut state, 1.0, None).unwrap();
        }
        errors.push((state.hamiltonian(stepper.fft_mut(), 1.0, None) - h0).abs());
    }
    let ratio = errors[0] / errors[1];
    report(
        "AC-5",
        &format!(
            "conservation (norm {norm_drift:.1e}, momentum {momentum_drift:.1e}, H ratio {ratio:.2})"
        ),
        norm_drift < 1e-10 && momentum_drift < 1e-8 && (3.5..=4.5).contains(&ratio),
    );
}

#[test]
fn ac6_vapor_numbers() {
    let atom = TwoLevelAtom::rb85_d2();
    let conditions = VaporConditions {
        atomic_density: units::per_cm3_to_per_m3(1e12),
        detuning: -units::mhz_to_rad_per_s(120.0),
        drive_intensity: units::w_per_cm2_to_w_per_m2(0.4),
    };
    let beam = Beam {
        intensity: conditions.drive_intensity,
        wavelength: atom.transition_wavelength,
    };
    let rep = feasibility_report(&atom, &conditions, &beam).unwrap();
    let n2_cm = units::m2_per_w_to_cm2_per_w(rep.n2);
    let i_s_cm = units::w_per_m2_to_w_per_cm2(photonfluid::vapor::saturation_intensity(
        &atom,
        conditions.detuning,
    ));
    let length_mm = units::m_to_mm(rep.length_scale.unwrap());
    let checks = [
        ("n2", n2_cm, -7.5e-5, 0.15),
        ("I_s", i_s_cm, 4.0, 0.10),
        ("|dn|", rep.delta_n.abs(), 3e-5, 0.15),
        ("lambda/dn", length_mm, 26.0, 0.15),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for (name, value, target, tol) in checks {
        let rel = (value - target).abs() / target.abs();
        detail.push_str(&format!("{name} = {value:.3e} ({:.1}%); ", rel * 100.0));
        ok &= rel < tol;
    }
    report("AC-6", &format!("vapor feasibility numbers [{detail}]"), ok);
}

#[test]
fn ac7_limits() {
    let mut ok = true;
    // At rest the four roots split into the in-phase pair, which is the
    // single-fluid pair with the doubled interaction (sound speed sqrt(2)
    // times the per-stream one, i.e. the unit sound speed of these units),
    // and the out-of-phase free-particle pair +-Q^2/2.
    for j in 1..=50 {
        let q = j as f64 * 0.1;
        let set = two_stream_roots(&ModeQuery::new(q, 0.0).unwrap());
        let sorted = set.sorted();
        let bog = bogoliubov(q, Sign::Plus);
        let free = q * q / 2.0;
        let mut expected = [-bog, -free, free, bog];
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (root, want) in sorted.iter().zip(&expected) {
            ok &= (root.im).abs() < 1e-12 && (root.re - want).abs() < 1e-12;
        }
    }
    // Doppler pair at v0 = 0 collapses onto +-Bogoliubov.
    for j in 1..=50 {
        let q = j as f64 * 0.1;
        let (up, down) = doppler_bogoliubov(q, 0.0, 1.0);
        ok &= (up - bogoliubov(q, Sign::Plus)).abs() < 1e-12;
        ok &= (down - bogoliubov(q, Sign::Minus)).abs() < 1e-12;
    }
    // beta = 10: stable up to the lower band edge sqrt(96).
    let q_max = 96.0_f64.sqrt() - 0.01;
    for j in 0..=2000 {
        let q = j as f64 * q_max / 2000.0;
        ok &= growth_rate(&ModeQuery::new(q, 10.0).unwrap()) == 0.0;
    }
    report("AC-7", "rest, Doppler and deep-supersonic limits", ok);
}

#[test]
fn ac8_diagnostics_oracles() {
    let mut ok = true;
    let grid = Grid::new(128, 128, 32.0, 32.0, 0.01).unwrap();
    // Keep the phase singularity strictly inside a plaquette.
    let (cx, cy) = (
        grid.lx / 2.0 + 0.3 * grid.dx(),
        grid.ly / 2.0 + 0.3 * grid.dy(),
    );
    let core = 2.0 * grid.dx();
    let vortex = |charge: f64| {
        FieldState::from_fn(grid, move |x, y| {
            let (dx, dy) = (x - cx, y - cy);
            Complex64::new(dx, charge * dy) / (dx * dx + dy * dy + core * core).sqrt()
        })
    };
    for charge in [1.0, -1.0] {
        // The periodic continuation carries the compensating winding along
        // the seam; the imprinted singularity lives in the interior.
        let records = detect_vortices(&vortex(charge), None);
        let interior: Vec<_> = records
            .iter()
            .filter(|r| {
                (r.x - grid.nx as f64 / 2.0).abs() < 16.0
                    && (r.y - grid.ny as f64 / 2.0).abs() < 16.0
            })
            .collect();
        ok &= interior.len() == 1 && interior[0].charge == charge as i32;
        ok &= records.iter().map(|r| r.charge).sum::<i32>() == 0;
    }
    // Parseval.
    let state = FieldState::from_fn(grid, |x, y| {
        Complex64::new((0.3 * x).sin(), (0.2 * y).cos())
    });
    let expected = state.norm() * (2.0 * std::f64::consts::PI).powi(2) / (grid.lx * grid.ly);
    let total = far_field(&state).total();
    ok &= ((total - expected) / expected).abs() < 1e-10;
    // Exact growth fit on a synthetic exponential.
    let mut history = ModeHistory::new([1.0, 0.0], 1.0);
    for n in 0..200 {
        let z = n as f64 * 0.1;
        let a = 2e-5 * (0.3 * z).exp();
        history.push(z, Complex64::new(a, 0.0)).unwrap();
    }
    let fit = fit_growth_rate(&history, GrowthWindow::default()).unwrap();
    ok &= (fit.gamma - 0.3).abs() < 1e-6;
    // Fork dislocation across a unit vortex.
    let intensity = hologram(&vortex(1.0), 1.0, (12, 0));
    let below = fringe_count(&intensity, &grid, grid.ny / 4);
    let above = fringe_count(&intensity, &grid, 3 * grid.ny / 4);
    ok &= (below as i64 - above as i64).abs() == 1;
    report("AC-8", "vortex, Parseval, growth-fit and hologram oracles", ok);
}
