//! Feasibility maps over the `(p, R)` plane for fixed `(d1, d2)`.

mod crossover;
mod svg;

use std::fmt;
use std::io::Write;
use std::path::Path;

pub use crossover::{crossover, Crossover, CrossoverRoot, CROSSOVER_SCAN_POINTS, CROSSOVER_TOLERANCE};
pub use svg::{write_svg, Palette};

use crate::bounds::{theorem1_feasible, theorem2_feasible, trivial_feasible, LinearParams};
use crate::{Error, Result};

pub const DEFAULT_GRID: (usize, usize) = (400, 400);
/// Upper end of the default rate axis.
pub const DEFAULT_R_MAX: f64 = 1.25;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub d1: f64,
    pub d2: f64,
    pub p_range: (f64, f64),
    pub r_range: (f64, f64),
    /// Cell counts along `p` and `R`.
    pub grid: (usize, usize),
}

impl SweepConfig {
    /// Default plot window: `d1/2 <= p <= 1/2`, `d2 <= R <= 1.25`, 400 x 400 cells.
    pub fn new(d1: f64, d2: f64) -> Self {
        Self {
            d1,
            d2,
            p_range: (d1 / 2.0, 0.5),
            r_range: (d2, DEFAULT_R_MAX.max(d2 + 0.25)),
            grid: DEFAULT_GRID,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        let (d1, d2) = (self.d1, self.d2);
        let (p0, p1) = self.p_range;
        let (r0, r1) = self.r_range;
        if !(0.0..=1.0).contains(&d1) {
            return bad(format!("d1 must lie in [0, 1], got {d1}"));
        }
        if !(d2 >= 0.0 && d2.is_finite()) {
            return bad(format!("d2 must be a nonnegative number, got {d2}"));
        }
        if !(p0 >= d1 / 2.0) {
            return bad(format!("p_min >= d1/2 violated: p_min = {p0}, d1/2 = {}", d1 / 2.0));
        }
        if !(p1 <= 0.5) {
            return bad(format!("p_max <= 1/2 violated: p_max = {p1}"));
        }
        if !(p0 < p1) {
            return bad(format!("p_min < p_max violated: [{p0}, {p1}]"));
        }
        if !(r0 >= d2) {
            return bad(format!("R_min >= d2 violated: R_min = {r0}, d2 = {d2}"));
        }
        if !(r0 < r1 && r1.is_finite()) {
            return bad(format!("R_min < R_max violated: [{r0}, {r1}]"));
        }
        Ok(())
    }

    fn p_at(&self, i: usize) -> f64 {
        let (a, b) = self.p_range;
        a + (b - a) * (i as f64 + 0.5) / self.grid.0 as f64
    }

    fn r_at(&self, j: usize) -> f64 {
        let (a, b) = self.r_range;
        a + (b - a) * (j as f64 + 0.5) / self.grid.1 as f64
    }
}

/// Which of the two converses a rate point satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellClass {
    Both,
    /// Only the degree bound holds.
    DegreeOnly,
    /// Only the clique bound holds.
    CliqueOnly,
    Neither,
}

impl CellClass {
    pub const ALL: [CellClass; 4] = [Self::Both, Self::DegreeOnly, Self::CliqueOnly, Self::Neither];

    pub fn from_flags(theorem1: bool, theorem2: bool) -> Self {
        match (theorem1, theorem2) {
            (true, true) => Self::Both,
            (true, false) => Self::DegreeOnly,
            (false, true) => Self::CliqueOnly,
            (false, false) => Self::Neither,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Both => "both",
            Self::DegreeOnly => "degree_only",
            Self::CliqueOnly => "clique_only",
            Self::Neither => "neither",
        }
    }
}

impl fmt::Display for CellClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub p: f64,
    pub rate: f64,
    pub theorem1: bool,
    pub theorem2: bool,
    /// `R >= h2(p)`.
    pub trivial: bool,
    pub class: CellClass,
}

/// Cells are stored `p`-major: index `i * n_R + j` for the `i`-th `p` and `j`-th `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionGrid {
    pub config: SweepConfig,
    pub cells: Vec<Cell>,
}

impl RegionGrid {
    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[i * self.config.grid.1 + j]
    }

    pub fn count(&self, class: CellClass) -> usize {
        self.cells.iter().filter(|c| c.class == class).count()
    }

    /// Writes the header `p,R,theorem1,theorem2,trivial,class` and one row per cell.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "p,R,theorem1,theorem2,trivial,class")?;
        for c in &self.cells {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                c.p, c.rate, c.theorem1, c.theorem2, c.trivial, c.class
            )?;
        }
        Ok(())
    }
}

/// Classifies every cell center of the configured grid.
pub fn region_sweep(cfg: &SweepConfig) -> Result<RegionGrid> {
    cfg.validate()?;
    let (np, nr) = cfg.grid;
    let mut cells = Vec::with_capacity(np * nr);
    for i in 0..np {
        let p = cfg.p_at(i);
        for j in 0..nr {
            let rate = cfg.r_at(j);
            let params = LinearParams::new(cfg.d1, cfg.d2, p, rate)?;
            let theorem1 = theorem1_feasible(&params);
            let theorem2 = theorem2_feasible(&params)?;
            cells.push(Cell {
                p,
                rate,
                theorem1,
                theorem2,
                trivial: trivial_feasible(&params),
                class: CellClass::from_flags(theorem1, theorem2),
            });
        }
    }
    Ok(RegionGrid {
        config: cfg.clone(),
        cells,
    })
}

pub fn emit_csv(grid: &RegionGrid, path: impl AsRef<Path>) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    grid.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}

pub fn emit_svg(grid: &RegionGrid, path: impl AsRef<Path>) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_svg(grid, &Palette::default(), &mut out)?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(d1: f64, d2: f64, np: usize, nr: usize) -> SweepConfig {
        SweepConfig {
            grid: (np, nr),
            ..SweepConfig::new(d1, d2)
        }
    }

    #[test]
    fn config_errors_name_the_invariant() {
        let mut c = SweepConfig::new(0.2, 0.21);
        c.r_range.0 = 0.1;
        let e = c.validate().unwrap_err().to_string();
        assert!(e.contains("R_min >= d2"), "{e}");
        let mut c = SweepConfig::new(0.2, 0.21);
        c.p_range.0 = 0.05;
        assert!(c.validate().unwrap_err().to_string().contains("p_min >= d1/2"));
        let mut c = SweepConfig::new(0.2, 0.21);
        c.p_range.1 = 0.6;
        assert!(matches!(region_sweep(&c), Err(Error::Config(_))));
    }

    #[test]
    fn csv_shape() {
        let g = region_sweep(&small(0.2, 0.21, 2, 2)).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "p,R,theorem1,theorem2,trivial,class");
        assert_eq!(lines.len(), 5);
        assert!(g.cells.iter().all(|c| c.rate >= 0.21));
    }

    #[test]
    fn classes_partition_and_agree_with_predicates() {
        let g = region_sweep(&small(0.2, 0.21, 40, 30)).unwrap();
        let total: usize = CellClass::ALL.iter().map(|&c| g.count(c)).sum();
        assert_eq!(total, g.cells.len());
        for c in &g.cells {
            assert_eq!(c.class == CellClass::Both, c.theorem1 && c.theorem2);
        }
    }

    #[test]
    fn feasibility_is_monotone_in_rate() {
        for (d1, d2) in [(0.2, 0.21), (0.2, 0.19), (0.05, 0.3)] {
            let g = region_sweep(&small(d1, d2, 25, 60)).unwrap();
            for i in 0..25 {
                for j in 1..60 {
                    let (a, b) = (g.cell(i, j - 1), g.cell(i, j));
                    assert!(!a.theorem1 || b.theorem1);
                    assert!(!a.theorem2 || b.theorem2);
                    assert!(!a.trivial || b.trivial);
                }
            }
        }
    }

    #[test]
    fn reproducible() {
        let c = small(0.2, 0.19, 17, 23);
        assert_eq!(region_sweep(&c).unwrap(), region_sweep(&c).unwrap());
    }
}
