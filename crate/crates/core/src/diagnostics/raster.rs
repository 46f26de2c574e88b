//! Real-valued raster output (magic `PRAS`, layout otherwise identical to
//! the field snapshot format) and CSV emitters for diagnostics tables.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::solver::snapshot::SnapshotError;
use crate::solver::Grid;

use super::{ModeHistory, VortexRecord};

pub const PRAS_MAGIC: [u8; 4] = *b"PRAS";
pub const PRAS_VERSION: u16 = 1;

pub fn write_pras(path: &Path, grid: &Grid, z: f64, values: &[f64]) -> Result<(), SnapshotError> {
    assert_eq!(values.len(), grid.cells());
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(&PRAS_MAGIC)?;
    w.write_all(&PRAS_VERSION.to_le_bytes())?;
    w.write_all(&(grid.nx as u32).to_le_bytes())?;
    w.write_all(&(grid.ny as u32).to_le_bytes())?;
    w.write_all(&grid.lx.to_le_bytes())?;
    w.write_all(&grid.ly.to_le_bytes())?;
    w.write_all(&z.to_le_bytes())?;
    for v in values {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_pras(path: &Path) -> Result<(Grid, f64, Vec<f64>), SnapshotError> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if magic != PRAS_MAGIC {
        return Err(SnapshotError::BadMagic(magic));
    }
    let version = u16::from_le_bytes(read_array(&mut r)?);
    if version != PRAS_VERSION {
        return Err(SnapshotError::BadVersion(version));
    }
    let nx = u32::from_le_bytes(read_array(&mut r)?) as usize;
    let ny = u32::from_le_bytes(read_array(&mut r)?) as usize;
    let lx = f64::from_le_bytes(read_array(&mut r)?);
    let ly = f64::from_le_bytes(read_array(&mut r)?);
    let z = f64::from_le_bytes(read_array(&mut r)?);
    let grid = Grid::new(nx, ny, lx, ly, 1.0)
        .map_err(|e| SnapshotError::BadHeader(e.to_string()))?;
    let mut values = Vec::with_capacity(grid.cells());
    for _ in 0..grid.cells() {
        values.push(f64::from_le_bytes(read_array(&mut r)?));
    }
    Ok((grid, z, values))
}

fn read_array<const N: usize>(r: &mut impl Read) -> Result<[u8; N], SnapshotError> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

/// `z, re, im, abs` rows for one mode history. `comment` lines (config
/// digest and the like) are emitted with a leading `#`.
pub fn write_mode_history_csv(
    out: &mut impl Write,
    history: &ModeHistory,
    comment: &str,
) -> io::Result<()> {
    if !comment.is_empty() {
        writeln!(out, "# {comment}")?;
    }
    writeln!(out, "# q = ({}, {}), background = {}", history.q[0], history.q[1], history.background)?;
    writeln!(out, "z,re,im,abs")?;
    for (z, a) in &history.samples {
        writeln!(out, "{z:.12e},{:.12e},{:.12e},{:.12e}", a.re, a.im, a.norm())?;
    }
    Ok(())
}

/// `x, y, charge` rows (cell coordinates).
pub fn write_vortices_csv(
    out: &mut impl Write,
    records: &[VortexRecord],
    comment: &str,
) -> io::Result<()> {
    if !comment.is_empty() {
        writeln!(out, "# {comment}")?;
    }
    writeln!(out, "x,y,charge")?;
    for r in records {
        writeln!(out, "{},{},{}", r.x, r.y, r.charge)?;
    }
    Ok(())
}
