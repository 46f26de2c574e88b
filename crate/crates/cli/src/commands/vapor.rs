//! `vapor`: feasibility report for one operating point plus the detuning
//! scan table, using the Rb-85 D2 defaults.

use std::fmt::Write as _;
use std::path::Path;

use photonfluid::vapor::{
    detuning_scan, feasibility_report, saturation_intensity, units, Beam, TwoLevelAtom,
    VaporConditions,
};

use crate::config::Config;
use crate::error::CliError;

pub fn run(config: &Config, digest: &str, out: &Path) -> Result<(), CliError> {
    let cfg = &config.vapor;
    if cfg.detuning_mhz == 0.0 {
        return Err(CliError::usage("vapor.detuning_mhz must be nonzero"));
    }
    if cfg.scan_detunings_mhz.iter().any(|&d| d == 0.0) {
        return Err(CliError::usage("vapor.scan_detunings_mhz must exclude 0"));
    }
    std::fs::create_dir_all(out)?;

    let atom = TwoLevelAtom::rb85_d2();
    let detuning = units::mhz_to_rad_per_s(cfg.detuning_mhz);
    let conditions = VaporConditions {
        atomic_density: units::per_cm3_to_per_m3(cfg.atomic_density),
        detuning,
        drive_intensity: units::w_per_cm2_to_w_per_m2(cfg.intensity),
    };
    let beam = Beam {
        intensity: conditions.drive_intensity,
        wavelength: atom.transition_wavelength,
    };
    let report = feasibility_report(&atom, &conditions, &beam)?;

    let mut text = String::new();
    writeln!(text, "vapor feasibility (config digest {digest})").unwrap();
    writeln!(text, "  atomic density     {:.3e} cm^-3", cfg.atomic_density).unwrap();
    writeln!(
        text,
        "  detuning           {:.2} MHz ({:.1} linewidths)",
        cfg.detuning_mhz,
        detuning / atom.linewidth
    )
    .unwrap();
    writeln!(text, "  drive intensity    {:.3} W/cm^2", cfg.intensity).unwrap();
    writeln!(text, "  n0                 {:.8}", report.n0).unwrap();
    writeln!(
        text,
        "  n2                 {:.4e} cm^2/W",
        units::m2_per_w_to_cm2_per_w(report.n2)
    )
    .unwrap();
    writeln!(
        text,
        "  I_s                {:.3} W/cm^2",
        units::w_per_m2_to_w_per_cm2(saturation_intensity(&atom, detuning))
    )
    .unwrap();
    writeln!(text, "  I / I_s            {:.3}", report.i_over_is).unwrap();
    writeln!(text, "  |dn|               {:.3e}", report.delta_n.abs()).unwrap();
    match report.length_scale {
        Some(l) => {
            writeln!(text, "  lambda0 / dn       {:.2} mm", units::m_to_mm(l)).unwrap();
            writeln!(
                text,
                "  recommended length {:.2} mm (5x)",
                units::m_to_mm(report.recommended_length.unwrap())
            )
            .unwrap();
        }
        None => writeln!(text, "  lambda0 / dn       divergent (dn = 0)").unwrap(),
    }
    writeln!(text, "  chi3 |E0|^2        {:.4e}", report.chi3_e0_squared).unwrap();
    writeln!(text, "  far detuned        {}", report.far_detuned).unwrap();
    writeln!(text, "  kerr valid         {}", report.kerr_valid).unwrap();
    print!("{text}");
    std::fs::write(out.join("feasibility.txt"), &text)?;

    let densities: Vec<f64> = cfg
        .scan_densities
        .iter()
        .map(|&n| units::per_cm3_to_per_m3(n))
        .collect();
    let detunings: Vec<f64> = cfg
        .scan_detunings_mhz
        .iter()
        .map(|&d| units::mhz_to_rad_per_s(d))
        .collect();
    let rows = detuning_scan(&atom, &densities, &detunings)?;
    let mut csv = String::new();
    writeln!(csv, "# config_digest: {digest}").unwrap();
    writeln!(csv, "delta_over_gamma,atomic_density_cm3,n2_cm2_per_w,i_s_w_cm2").unwrap();
    for row in rows {
        writeln!(
            csv,
            "{},{},{},{}",
            row.delta_over_gamma,
            units::per_m3_to_per_cm3(row.atomic_density),
            units::m2_per_w_to_cm2_per_w(row.n2),
            units::w_per_m2_to_w_per_cm2(row.i_s)
        )
        .unwrap();
    }
    std::fs::write(out.join("detuning_scan.csv"), csv)?;
    Ok(())
}
