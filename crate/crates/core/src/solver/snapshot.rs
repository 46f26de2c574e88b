//! Snapshot file format, bit-exact:
//! magic `PFLD`, format version u16, nx u32, ny u32, lx f64, ly f64, z f64,
//! then `nx * ny` interleaved (re, im) f64 pairs, row-major (row = y),
//! little-endian. One file per snapshot; an index file lists z values.
//!
//! The step size is a run parameter, not part of the snapshot; states read
//! back carry a placeholder `dz = 1`.

use num_complex::Complex64;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;
use thiserror::Error;

use super::grid::Grid;
use super::state::FieldState;

pub const PFLD_MAGIC: [u8; 4] = *b"PFLD";
pub const PFLD_VERSION: u16 = 1;

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("bad magic {0:?}, not a PFLD file")]
    BadMagic([u8; 4]),
    #[error("unsupported PFLD version {0}")]
    BadVersion(u16),
    #[error("corrupt header: {0}")]
    BadHeader(String),
    #[error("malformed index line: {0:?}")]
    BadIndexLine(String),
}

pub fn write_pfld(path: &Path, state: &FieldState) -> Result<(), SnapshotError> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(&PFLD_MAGIC)?;
    w.write_all(&PFLD_VERSION.to_le_bytes())?;
    w.write_all(&(state.grid.nx as u32).to_le_bytes())?;
    w.write_all(&(state.grid.ny as u32).to_le_bytes())?;
    w.write_all(&state.grid.lx.to_le_bytes())?;
    w.write_all(&state.grid.ly.to_le_bytes())?;
    w.write_all(&state.z.to_le_bytes())?;
    for p in &state.psi {
        w.write_all(&p.re.to_le_bytes())?;
        w.write_all(&p.im.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_pfld(path: &Path) -> Result<FieldState, SnapshotError> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if magic != PFLD_MAGIC {
        return Err(SnapshotError::BadMagic(magic));
    }
    let version = u16::from_le_bytes(read_array(&mut r)?);
    if version != PFLD_VERSION {
        return Err(SnapshotError::BadVersion(version));
    }
    let nx = u32::from_le_bytes(read_array(&mut r)?) as usize;
    let ny = u32::from_le_bytes(read_array(&mut r)?) as usize;
    let lx = f64::from_le_bytes(read_array(&mut r)?);
    let ly = f64::from_le_bytes(read_array(&mut r)?);
    let z = f64::from_le_bytes(read_array(&mut r)?);
    let grid = Grid::new(nx, ny, lx, ly, 1.0)
        .map_err(|e| SnapshotError::BadHeader(e.to_string()))?;
    let mut psi = Vec::with_capacity(grid.cells());
    for _ in 0..grid.cells() {
        let re = f64::from_le_bytes(read_array(&mut r)?);
        let im = f64::from_le_bytes(read_array(&mut r)?);
        psi.push(Complex64::new(re, im));
    }
    Ok(FieldState { psi, z, grid })
}

fn read_array<const N: usize>(r: &mut impl Read) -> Result<[u8; N], SnapshotError> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

/// One line per snapshot: `filename,z`.
pub fn write_index(path: &Path, entries: &[(String, f64)]) -> Result<(), SnapshotError> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "file,z")?;
    for (file, z) in entries {
        writeln!(w, "{file},{z:.17e}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_index(path: &Path) -> Result<Vec<(String, f64)>, SnapshotError> {
    let r = BufReader::new(File::open(path)?);
    let mut entries = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        if lineno == 0 || line.trim().is_empty() {
            continue;
        }
        let (file, z) = line
            .rsplit_once(',')
            .ok_or_else(|| SnapshotError::BadIndexLine(line.clone()))?;
        let z: f64 = z
            .trim()
            .parse()
            .map_err(|_| SnapshotError::BadIndexLine(line.clone()))?;
        entries.push((file.to_string(), z));
    }
    Ok(entries)
}
