//! Formula-versus-oracle comparison over parameter grids.
//!
//! Cells are independent, so with the `parallel` feature they are evaluated
//! on the rayon pool; results are always collected in cell order.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::formulas::{self, BandBandCase, LoewyReport, ModuleSpec};
use crate::gf2e::{Field, FieldElem};
use crate::words;

/// Oracle dimension cap used when `LOEWY_MAX_DIM` is not set.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Reads `LOEWY_MAX_DIM`, falling back to [`DEFAULT_MAX_DIM`].
pub fn max_dim_from_env() -> usize {
    std::env::var("LOEWY_MAX_DIM")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs sequentially.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Signature of a formula engine; swapped out in tests to inject faults.
pub type FormulaFn = dyn Fn(&ModuleSpec, &ModuleSpec, u64, &Field) -> Result<LoewyReport> + Sync;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub left: ModuleSpec,
    pub right: ModuleSpec,
}

impl Cell {
    pub fn new(left: ModuleSpec, right: ModuleSpec) -> Self {
        Cell { left, right }
    }

    /// Dimension of the tensor product.
    pub fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }
}

#[derive(Debug, Clone)]
pub struct Grid {
    pub name: String,
    pub q: u64,
    pub field: Field,
    pub cells: Vec<Cell>,
    /// Cells dropped for exceeding the dimension cap.
    pub skipped: usize,
}

impl Grid {
    fn new(
        name: impl Into<String>,
        q: u64,
        field: Field,
        cells: Vec<Cell>,
        max_dim: usize,
    ) -> Self {
        let total = cells.len();
        let cells: Vec<Cell> = cells.into_iter().filter(|c| c.dim() <= max_dim).collect();
        Grid {
            name: name.into(),
            q,
            field,
            skipped: total - cells.len(),
            cells,
        }
    }
}

/// All `(l1, l2)` with `1 <= l1, l2 <= max` and `l1 + l2` even; other leg
/// pairs do not close up into a band word.
fn band_legs(max: u64) -> impl Iterator<Item = (u64, u64)> {
    (1..=max).flat_map(move |l1| {
        (1..=max)
            .filter(move |l2| (l1 + l2) % 2 == 0)
            .map(move |l2| (l1, l2))
    })
}

fn band(l1: u64, l2: u64, rho: FieldElem, inverted: bool) -> ModuleSpec {
    let word = words::two_leg_band_word(l1 as usize, l2 as usize).expect("legs have even sum");
    ModuleSpec::Band {
        word: if inverted { word.inverse() } else { word },
        rho,
        n: 1,
    }
}

fn uniserial(kind: words::Kind, l: u64) -> ModuleSpec {
    match kind {
        words::Kind::A => ModuleSpec::UniserialA(l),
        words::Kind::B => ModuleSpec::UniserialB(l),
    }
}

const KINDS: [words::Kind; 2] = [words::Kind::A, words::Kind::B];

/// `M(K_l) ⊗ M(K'_m)` for all kinds and `l <= max_l`, `m <= max_m`, both
/// capped at `2q - 1`.
pub fn uniserial_grid(q: u64, field: &Field, max_l: u64, max_m: u64, max_dim: usize) -> Grid {
    let top = 2 * q - 1;
    let mut cells = Vec::new();
    for kl in KINDS {
        for kr in KINDS {
            for l in 0..=max_l.min(top) {
                for m in 0..=max_m.min(top) {
                    cells.push(Cell::new(uniserial(kl, l), uniserial(kr, m)));
                }
            }
        }
    }
    Grid::new(format!("uniserial q={q}"), q, field.clone(), cells, max_dim)
}

/// Two-leg bands (given directly and inverted) against uniserial modules of
/// both kinds, for every nonzero parameter of `field`.
pub fn band_string_grid(q: u64, field: &Field, max_l: u64, max_m: u64, max_dim: usize) -> Grid {
    let top = 2 * q - 1;
    let mut cells = Vec::new();
    for (l1, l2) in band_legs(max_l.min(top)) {
        for rho in field.nonzero_elements() {
            for inverted in [false, true] {
                for kr in KINDS {
                    for m in 0..=max_m.min(top) {
                        cells.push(Cell::new(band(l1, l2, rho, inverted), uniserial(kr, m)));
                    }
                }
            }
        }
    }
    Grid::new(
        format!("band x string q={q} {field}"),
        q,
        field.clone(),
        cells,
        max_dim,
    )
}

/// Pairs of two-leg bands over all parameters; the right band appears in
/// both orientations.
pub fn band_band_grid(q: u64, field: &Field, max_l: u64, max_m: u64, max_dim: usize) -> Grid {
    let top = 2 * q - 1;
    let mut cells = Vec::new();
    for (l1, l2) in band_legs(max_l.min(top)) {
        for (m1, m2) in band_legs(max_m.min(top)) {
            for rho in field.nonzero_elements() {
                for sigma in field.nonzero_elements() {
                    for inverted in [false, true] {
                        cells.push(Cell::new(
                            band(l1, l2, rho, false),
                            band(m1, m2, sigma, inverted),
                        ));
                    }
                }
            }
        }
    }
    Grid::new(
        format!("band x band q={q} {field}"),
        q,
        field.clone(),
        cells,
        max_dim,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellOutcome {
    pub formula: u64,
    pub oracle: u64,
    /// Decided independently of the length.
    pub projective: bool,
    pub band_cases: Vec<BandBandCase>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub cell: Cell,
    pub formula: u64,
    pub oracle: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (x) {}: formula {} oracle {}",
            self.cell.left, self.cell.right, self.formula, self.oracle
        )
    }
}

/// A cell where the projective-summand criterion disagrees with `length = 2q+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveException {
    pub cell: Cell,
    pub projective: bool,
    pub formula: u64,
    pub oracle: u64,
}

impl fmt::Display for ProjectiveException {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (x) {}: projective={} formula {} oracle {}",
            self.cell.left, self.cell.right, self.projective, self.formula, self.oracle
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GridReport {
    pub name: String,
    pub cells_checked: usize,
    pub skipped: usize,
    pub mismatches: Vec<Mismatch>,
    pub projective_exceptions: Vec<ProjectiveException>,
    pub case_hits: BTreeMap<BandBandCase, usize>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.projective_exceptions.is_empty()
    }

    /// Folds another report into this one.
    pub fn merge(&mut self, other: GridReport) {
        if self.name.is_empty() {
            self.name = other.name;
        } else if !other.name.is_empty() {
            self.name = format!("{}; {}", self.name, other.name);
        }
        self.cells_checked += other.cells_checked;
        self.skipped += other.skipped;
        self.mismatches.extend(other.mismatches);
        self.projective_exceptions
            .extend(other.projective_exceptions);
        for (case, n) in other.case_hits {
            *self.case_hits.entry(case).or_default() += n;
        }
    }
}

impl fmt::Display for GridReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} cells, {} mismatches, {} projective exceptions, {} skipped",
            self.name,
            self.cells_checked,
            self.mismatches.len(),
            self.projective_exceptions.len(),
            self.skipped
        )?;
        for m in self.mismatches.iter().take(10) {
            writeln!(f, "  mismatch {m}")?;
        }
        for p in self.projective_exceptions.iter().take(10) {
            writeln!(f, "  projective {p}")?;
        }
        Ok(())
    }
}

/// Evaluates one cell with both engines.
pub fn check_cell(cell: &Cell, q: u64, field: &Field, formula: &FormulaFn) -> Result<CellOutcome> {
    let report = formula(&cell.left, &cell.right, q, field)?;
    let oracle = formulas::loewy_oracle(&cell.left, &cell.right, q, field)?;
    let projective = formulas::projective_summand(&cell.left, &cell.right, q, field)?;
    Ok(CellOutcome {
        formula: report.length,
        oracle,
        projective,
        band_cases: report.band_cases,
    })
}

fn map_cells<T: Send>(
    cells: &[Cell],
    exec: Execution,
    f: impl Fn(&Cell) -> T + Sync + Send,
) -> Vec<T> {
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            cells.par_iter().map(f).collect()
        }
        _ => cells.iter().map(f).collect(),
    }
}

/// Runs both engines on every cell and compares lengths and the projective criterion.
pub fn run_cells(
    name: &str,
    cells: &[Cell],
    q: u64,
    field: &Field,
    formula: &FormulaFn,
    exec: Execution,
) -> Result<GridReport> {
    let outcomes = map_cells(cells, exec, |c| check_cell(c, q, field, formula));
    let top = 2 * q + 1;
    let mut report = GridReport {
        name: name.to_string(),
        ..GridReport::default()
    };
    for (cell, outcome) in cells.iter().zip(outcomes) {
        let o = outcome?;
        report.cells_checked += 1;
        for case in &o.band_cases {
            *report.case_hits.entry(*case).or_default() += 1;
        }
        if o.formula != o.oracle {
            report.mismatches.push(Mismatch {
                cell: cell.clone(),
                formula: o.formula,
                oracle: o.oracle,
            });
        }
        if o.projective != (o.formula == top) || o.projective != (o.oracle == top) {
            report.projective_exceptions.push(ProjectiveException {
                cell: cell.clone(),
                projective: o.projective,
                formula: o.formula,
                oracle: o.oracle,
            });
        }
    }
    Ok(report)
}

pub fn run_grid(grid: &Grid, formula: &FormulaFn, exec: Execution) -> Result<GridReport> {
    let mut report = run_cells(&grid.name, &grid.cells, grid.q, &grid.field, formula, exec)?;
    report.skipped = grid.skipped;
    Ok(report)
}

/// The uniserial, band-with-string and band-with-band grids for `q` over
/// `field`, bounded by `max_l` on the left and `max_m` on the right.
pub fn standard_grids(q: u64, field: &Field, max_l: u64, max_m: u64, max_dim: usize) -> Vec<Grid> {
    vec![
        uniserial_grid(q, field, max_l, max_m, max_dim),
        band_string_grid(q, field, max_l, max_m, max_dim),
        band_band_grid(q, field, max_l, max_m, max_dim),
    ]
}
