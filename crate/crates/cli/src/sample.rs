use std::io::Write;

use phasewall::starcalc::PhaseGrid;
use phasewall::wigner::CatalogEntry;

use crate::config::GridSpec;
use crate::fmt17;

#[derive(Debug, thiserror::Error)]
pub enum SampleError {
    #[error("unknown case `{0}`; expected wall, wall_printed, square_well, square_well_sqrt_e, delta_well, half_sho, half_sho_printed or free_mixed")]
    UnknownCase(String),
    #[error("no case given; pass --case or set \"case\" in the config file")]
    Missing,
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn entry(case: Option<&str>, energy: Option<f64>, n: Option<u32>) -> Result<CatalogEntry, SampleError> {
    let name = case.ok_or(SampleError::Missing)?;
    CatalogEntry::by_name(name, energy, n).ok_or_else(|| SampleError::UnknownCase(name.into()))
}

/// `x,p,value` rows, x-major, on the periodic grid (upper endpoints excluded).
pub fn write_csv<W: Write + ?Sized>(entry: &CatalogEntry, grid: &GridSpec, w: &mut W) -> Result<(), SampleError> {
    let g = PhaseGrid::new(grid.x, grid.nx, grid.p, grid.np).map_err(|e| SampleError::Grid(e.to_string()))?;
    w.write_all(b"x,p,value\n")?;
    for i in 0..g.nx {
        let x = g.x(i);
        for j in 0..g.np {
            let p = g.p(j);
            writeln!(w, "{},{},{}", fmt17(x), fmt17(p), fmt17(entry.value(x, p)))?;
        }
    }
    Ok(())
}
