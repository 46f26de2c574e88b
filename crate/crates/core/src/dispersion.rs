//! Linear-stability engine for the two-fluid problem.
//!
//! Everything here is expressed in the two-fluid normalization: wavenumbers
//! as `Q = q xi`, frequencies as `W = Omega xi^2`, flow through the Mach
//! number `beta = v0 / cs` (`xi = 1/cs`, `cs = sqrt(2 rho0 g)`). In these
//! units the dispersion relation of two coupled streams reads
//!
//! ```text
//! 1 - (Q^2/2) [ 1/(W^2 - Q^4/4) + 1/((W - beta Q)^2 - Q^4/4) ] = 0
//! ```
//!
//! with closed-form roots
//!
//! ```text
//! W = (Q/2) [ beta +- sqrt( 2 + beta^2 + Q^2 +- 2 sqrt(1 + 2 beta^2 + beta^2 Q^2) ) ].
//! ```
//!
//! Clearing denominators and substituting `u = W - beta Q / 2` gives the
//! biquadratic used by the independent oracle: with `m = Q^4/4`,
//! `s = beta Q / 2`, `K = Q^2`,
//!
//! ```text
//! [(u+s)^2 - m][(u-s)^2 - m] - (K/2)[((u+s)^2 - m) + ((u-s)^2 - m)]
//!   = u^4 - u^2 (2m + 2s^2 + K) + (s^2 - m)(s^2 - m - K) = 0.
//! ```
//!
//! The oracle solves this quartic by Durand-Kerner simultaneous iteration,
//! never via the closed form, so the two routes stay independent.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

/// Imaginary parts below this magnitude are floating-point noise from the
/// complex square root and are clamped to the real axis.
pub const IM_CLAMP: f64 = 1e-12;

/// Denominators of the dispersion relation closer than this to zero mark a
/// resonance pole; the residual check is skipped there.
pub const POLE_GUARD: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum DispersionError {
    #[error("negative wavenumber Q = {0}")]
    NegativeWavenumber(f64),
    #[error("negative Mach number beta = {0}")]
    NegativeMach(f64),
    #[error("alignment {0} outside [-1, 1]")]
    BadAlignment(f64),
}

/// A point of the two-fluid spectrum: wavenumber `Q = q xi`, Mach number
/// `beta`, and the cosine of the angle between the flow and `q`
/// (1 = collinear, the case treated in the underlying model; other values
/// enter only through `beta_eff = beta * alignment`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeQuery {
    pub q: f64,
    pub beta: f64,
    pub alignment: f64,
}

impl ModeQuery {
    pub fn new(q: f64, beta: f64) -> Result<Self, DispersionError> {
        Self::with_alignment(q, beta, 1.0)
    }

    pub fn with_alignment(q: f64, beta: f64, alignment: f64) -> Result<Self, DispersionError> {
        if q < 0.0 {
            return Err(DispersionError::NegativeWavenumber(q));
        }
        if beta < 0.0 {
            return Err(DispersionError::NegativeMach(beta));
        }
        if !(-1.0..=1.0).contains(&alignment) {
            return Err(DispersionError::BadAlignment(alignment));
        }
        Ok(Self { q, beta, alignment })
    }

    /// Effective collinear Mach number `beta * alignment`.
    pub fn beta_eff(&self) -> f64 {
        self.beta * self.alignment
    }
}

/// Sign choice in the closed-form root expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// (outer, inner) sign pair of the nested square roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchLabel {
    pub outer: Sign,
    pub inner: Sign,
}

pub const BRANCHES: [BranchLabel; 4] = [
    BranchLabel { outer: Sign::Plus, inner: Sign::Plus },
    BranchLabel { outer: Sign::Minus, inner: Sign::Plus },
    BranchLabel { outer: Sign::Plus, inner: Sign::Minus },
    BranchLabel { outer: Sign::Minus, inner: Sign::Minus },
];

/// The four mode frequencies `W = Omega xi^2` at one `(Q, beta)` point.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: [Complex64; 4],
    pub branch_labels: [BranchLabel; 4],
    /// Roots sitting on a resonance pole of the dispersion relation
    /// (`W^2 = Q^4/4` or the Doppler-shifted counterpart); the residual
    /// check is meaningless there.
    pub pole_flags: [bool; 4],
}

impl RootSet {
    /// Roots sorted by (Re, Im), for multiset comparison.
    pub fn sorted(&self) -> [Complex64; 4] {
        let mut r = self.roots;
        r.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        r
    }

    /// The root with the largest imaginary part (the unstable mode when any
    /// root is complex; ties broken by real part for determinism).
    pub fn unstable_mode(&self) -> Complex64 {
        *self
            .roots
            .iter()
            .max_by(|a, b| {
                a.im.partial_cmp(&b.im)
                    .unwrap()
                    .then(a.re.partial_cmp(&b.re).unwrap())
            })
            .unwrap()
    }

    pub fn max_imag(&self) -> f64 {
        self.roots.iter().map(|r| r.im).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Flow regime of a stability band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Subsonic,
    Supersonic,
    Marginal,
}

/// Open interval of unstable wavenumbers for a given Mach number:
/// `max(0, sqrt(beta^2 - 4)) < Q < beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityBand {
    pub q_lo: f64,
    pub q_hi: f64,
    pub regime: Regime,
}

impl StabilityBand {
    pub fn is_empty(&self) -> bool {
        self.q_hi <= self.q_lo || self.q_hi == 0.0
    }

    /// Whether `q` lies strictly inside the open band.
    pub fn contains(&self, q: f64) -> bool {
        q > self.q_lo && q < self.q_hi
    }
}

/// Single-fluid Bogoliubov dispersion in units `cs' = 1`, `xi' = 1`:
/// `Omega = sign * sqrt(q^2 + q^4/4)`. Acoustic (`Omega ~ q`) at low `q`,
/// free-particle (`Omega ~ q^2/2`) at high `q`.
pub fn bogoliubov(q: f64, sign: Sign) -> f64 {
    sign.as_f64() * (q * q + q.powi(4) / 4.0).sqrt()
}

/// Doppler-shifted single-fluid pair
/// `Omega = v0 q alignment +- sqrt(q^2 + q^4/4)`.
pub fn doppler_bogoliubov(q: f64, v0: f64, alignment: f64) -> (f64, f64) {
    let shift = v0 * q * alignment;
    let b = bogoliubov(q, Sign::Plus);
    (shift + b, shift - b)
}

/// Inner radicand `1 + 2 beta^2 + beta^2 Q^2`; always >= 1.
fn inner_radicand(q: f64, beta: f64) -> f64 {
    1.0 + beta * beta * (2.0 + q * q)
}

/// Outer radicand `2 + beta^2 + Q^2 +- 2 sqrt(inner)`; its sign decides
/// stability of the corresponding branch pair. Values within roundoff of
/// zero are snapped to zero so the band edges (where the radicand vanishes
/// analytically) come out exactly marginal.
fn outer_radicand(q: f64, beta: f64, inner: Sign) -> f64 {
    let scale = 2.0 + beta * beta + q * q;
    let rad = scale + inner.as_f64() * 2.0 * inner_radicand(q, beta).sqrt();
    if rad.abs() < 1e-13 * scale {
        0.0
    } else {
        rad
    }
}

/// Closed-form roots of the two-fluid dispersion relation.
///
/// The inner radicand is always positive; the outer one is evaluated as a
/// real number and its sign dispatched explicitly, so stable branches come
/// out exactly real and unstable ones exactly conjugate.
pub fn two_stream_roots(query: &ModeQuery) -> RootSet {
    let q = query.q;
    let beta = query.beta_eff();
    let mut roots = [Complex64::new(0.0, 0.0); 4];
    for (i, label) in BRANCHES.iter().enumerate() {
        let rad = outer_radicand(q, beta, label.inner);
        let root = if rad >= 0.0 {
            Complex64::new(q / 2.0 * (beta + label.outer.as_f64() * rad.sqrt()), 0.0)
        } else {
            Complex64::new(
                q / 2.0 * beta,
                label.outer.as_f64() * q / 2.0 * (-rad).sqrt(),
            )
        };
        roots[i] = clamp_im(root);
    }
    let pole_flags = pole_flags(q, beta, &roots);
    RootSet {
        roots,
        branch_labels: BRANCHES,
        pole_flags,
    }
}

fn clamp_im(z: Complex64) -> Complex64 {
    if z.im.abs() < IM_CLAMP {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

fn pole_flags(q: f64, beta: f64, roots: &[Complex64; 4]) -> [bool; 4] {
    let m = q.powi(4) / 4.0;
    let mut flags = [false; 4];
    for (flag, w) in flags.iter_mut().zip(roots) {
        let d1 = w * w - m;
        let shifted = w - beta * q;
        let d2 = shifted * shifted - m;
        *flag = d1.norm() < POLE_GUARD || d2.norm() < POLE_GUARD;
    }
    flags
}

/// Residual of the dispersion relation at a candidate root; `None` when a
/// denominator is within [`POLE_GUARD`] of zero.
pub fn dispersion_residual(query: &ModeQuery, w: Complex64) -> Option<f64> {
    let q = query.q;
    let beta = query.beta_eff();
    let m = q.powi(4) / 4.0;
    let d1 = w * w - m;
    let shifted = w - beta * q;
    let d2 = shifted * shifted - m;
    if d1.norm() < POLE_GUARD || d2.norm() < POLE_GUARD {
        return None;
    }
    let res = Complex64::new(1.0, 0.0) - q * q / 2.0 * (d1.inv() + d2.inv());
    Some(res.norm())
}

/// Durand-Kerner simultaneous iteration on a monic quartic
/// `u^4 + c[3] u^3 + c[2] u^2 + c[1] u + c[0]`.
fn quartic_roots(c: [f64; 4]) -> [Complex64; 4] {
    let eval = |u: Complex64| (((u + c[3]) * u + c[2]) * u + c[1]) * u + c[0];
    // Standard seeds: powers of a point off every symmetry axis.
    let seed = Complex64::new(0.4, 0.9);
    let mut roots = [seed, seed * seed, seed * seed * seed, seed * seed * seed * seed];
    for _ in 0..500 {
        let prev = roots;
        let mut max_step = 0.0_f64;
        for i in 0..4 {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..4 {
                if j != i {
                    denom *= prev[i] - prev[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let delta = eval(prev[i]) / denom;
            roots[i] = prev[i] - delta;
            max_step = max_step.max(delta.norm() / roots[i].norm().max(1.0));
        }
        if max_step < 1e-15 {
            break;
        }
    }
    roots
}

/// Independent root finder: solves the biquadratic
/// `u^4 - u^2 (2m + 2s^2 + K) + (s^2 - m)(s^2 - m - K) = 0`
/// (see module docs for the derivation) by Durand-Kerner iteration, then
/// shifts back by `+ beta Q / 2`. Branch labels are assigned by nearest
/// closed-form root purely for reporting.
pub fn two_stream_roots_oracle(query: &ModeQuery) -> RootSet {
    let q = query.q;
    let beta = query.beta_eff();
    let s = beta * q / 2.0;
    let m = q.powi(4) / 4.0;
    let k = q * q;
    // u^4 + c2 u^2 + c0 = 0
    let c2 = -(2.0 * m + 2.0 * s * s + k);
    let c0 = (s * s - m) * (s * s - m - k);
    let mut roots = [Complex64::new(0.0, 0.0); 4];
    if q > 0.0 {
        for (root, u) in roots.iter_mut().zip(quartic_roots([c0, 0.0, c2, 0.0])) {
            *root = clamp_im(Complex64::new(u.re + s, u.im));
        }
    }
    // q = 0: the quartic degenerates to u^4 = 0, all four modes at rest.
    let closed = two_stream_roots(query);
    let labels = label_by_nearest(&roots, &closed);
    let pole_flags = pole_flags(q, beta, &roots);
    RootSet {
        roots,
        branch_labels: labels,
        pole_flags,
    }
}

fn label_by_nearest(roots: &[Complex64; 4], reference: &RootSet) -> [BranchLabel; 4] {
    let mut labels = [BRANCHES[0]; 4];
    for (label, r) in labels.iter_mut().zip(roots) {
        let (idx, _) = reference
            .roots
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                (*a - r).norm().partial_cmp(&(*b - r).norm()).unwrap()
            })
            .unwrap();
        *label = reference.branch_labels[idx];
    }
    labels
}

/// Largest imaginary part over the four modes, clamped to zero outside the
/// unstable band. Analytically
/// `gamma = (Q/2) sqrt(max(0, 2 sqrt(1 + 2 beta^2 + beta^2 Q^2) - (2 + beta^2 + Q^2)))`.
pub fn growth_rate(query: &ModeQuery) -> f64 {
    let q = query.q;
    let beta = query.beta_eff().abs();
    let rad = outer_radicand(q, beta, Sign::Minus);
    if rad < 0.0 {
        q / 2.0 * (-rad).sqrt()
    } else {
        0.0
    }
}

/// Unstable wavenumber interval for Mach number `beta`:
/// `(max(0, sqrt(beta^2 - 4)), beta)`, empty at `beta = 0`.
pub fn unstable_band(beta: f64) -> StabilityBand {
    let q_lo = (beta * beta - 4.0).max(0.0).sqrt();
    let regime = if beta < 2.0 {
        Regime::Subsonic
    } else if beta == 2.0 {
        Regime::Marginal
    } else {
        Regime::Supersonic
    };
    StabilityBand {
        q_lo,
        q_hi: beta,
        regime,
    }
}

/// Lower supersonic band edge from the stream-Bogoliubov resonance
/// `beta Q / 2 = sqrt(Q^2 + Q^4/4)`, i.e. `Q = sqrt(beta^2 - 4)`.
/// Used as a cross-check on [`unstable_band`].
pub fn streaming_resonance_q(beta: f64) -> Option<f64> {
    if beta >= 2.0 {
        Some((beta * beta - 4.0).sqrt())
    } else {
        None
    }
}

/// Argmax and max of [`growth_rate`] over the unstable band, by
/// golden-section search on the analytic growth expression.
/// Returns `(None, 0.0)` when the band is empty.
pub fn max_growth(beta: f64) -> (Option<f64>, f64) {
    let band = unstable_band(beta);
    if band.is_empty() {
        return (None, 0.0);
    }
    let gamma = |q: f64| growth_rate(&ModeQuery { q, beta, alignment: 1.0 });
    let (mut a, mut b) = (band.q_lo, band.q_hi);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (gamma(c), gamma(d));
    while b - a > 1e-12 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = gamma(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = gamma(d);
        }
    }
    let q_star = 0.5 * (a + b);
    (Some(q_star), gamma(q_star))
}

/// One cell of a stability raster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityCell {
    pub q: f64,
    pub beta: f64,
    pub growth: f64,
}

impl StabilityCell {
    pub fn unstable(&self) -> bool {
        self.growth > 0.0
    }
}

/// Classifies every `(Q, beta)` grid cell by its growth rate. Rows are
/// evaluated in parallel; output is deterministic regardless of scheduling.
pub fn stability_map(beta_grid: &[f64], q_grid: &[f64]) -> Vec<Vec<StabilityCell>> {
    beta_grid
        .par_iter()
        .map(|&beta| {
            q_grid
                .iter()
                .map(|&q| StabilityCell {
                    q,
                    beta,
                    growth: growth_rate(&ModeQuery { q, beta, alignment: 1.0 }),
                })
                .collect()
        })
        .collect()
}
