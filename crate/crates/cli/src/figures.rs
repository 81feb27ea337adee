//! Data for the eleven figure panels: one long-format CSV per curve family and
//! a JSON manifest holding every parameter needed to regenerate them.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use mzi_parity::StateKind;
use serde::Serialize;

use crate::config::{Axis, AxisRange, Constraint, Spacing, Squeezing, SweepConfig, DEFAULT_COUNT};
use crate::error::{io_err, CliError, Result};
use crate::sweep::{run_scenario_sweep, SweepTable};
use crate::table::{write_csv, Cell};

/// Tags marking grid points a curve cannot reach (too few photons to share);
/// they leave gaps rather than count as failures.
pub const GAP_TAGS: [&str; 2] = ["unattainable", "negative_coherent"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig1a,
    Fig1b,
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
    Fig5,
    Fig6,
    Fig7,
}

impl FigureId {
    pub const ALL: [FigureId; 11] = [
        FigureId::Fig1a,
        FigureId::Fig1b,
        FigureId::Fig2a,
        FigureId::Fig2b,
        FigureId::Fig3a,
        FigureId::Fig3b,
        FigureId::Fig4a,
        FigureId::Fig4b,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig1a => "fig1a",
            FigureId::Fig1b => "fig1b",
            FigureId::Fig2a => "fig2a",
            FigureId::Fig2b => "fig2b",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or(CliError::UnknownFigure(s))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub label: String,
    pub config: SweepConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Family {
    pub name: String,
    pub curves: Vec<Curve>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigurePlan {
    pub figure: FigureId,
    pub description: &'static str,
    /// Column holding the plotted quantity.
    pub y_column: &'static str,
    pub families: Vec<Family>,
}

fn ops_label(kind: StateKind, ops: u32) -> String {
    match kind {
        StateKind::Subtracted => format!("l={ops}"),
        _ => format!("k={ops}"),
    }
}

/// k = 0 / l = 0 is the plain squeezed vacuum.
fn kind_for(kind: StateKind, ops: u32) -> StateKind {
    if ops == 0 {
        StateKind::Plain
    } else {
        kind
    }
}

/// Added and subtracted families over `ops`, each curve built by `make`.
fn two_families(ops: &[u32], mut make: impl FnMut(StateKind, u32) -> SweepConfig) -> Vec<Family> {
    [(StateKind::Added, "added"), (StateKind::Subtracted, "subtracted")]
        .into_iter()
        .map(|(kind, name)| Family {
            name: name.to_string(),
            curves: ops
                .iter()
                .map(|&m| Curve {
                    label: ops_label(kind, m),
                    config: make(kind_for(kind, m), m),
                })
                .collect(),
        })
        .collect()
}

fn lin(start: f64, stop: f64) -> AxisRange {
    AxisRange::linear(start, stop, DEFAULT_COUNT)
}

fn phase(kind: StateKind, ops: u32, squeezing: Squeezing, nz: f64, range: AxisRange) -> SweepConfig {
    SweepConfig::phase_sweep(kind, ops, squeezing, nz, range)
}

fn total_nbar(kind: StateKind, ops: u32, squeezing: Squeezing, constraint: Constraint, phi: f64, range: AxisRange) -> SweepConfig {
    SweepConfig {
        axis: Axis::TotalNbar,
        constraint: Some(constraint),
        phi,
        ..phase(kind, ops, squeezing, 0.0, range)
    }
}

const FIG2_OPS: [u32; 4] = [0, 1, 2, 3];
const FIG3_OPS: [u32; 4] = [0, 1, 2, 3];
const FIG5_OPS: [u32; 5] = [0, 1, 2, 3, 6];
/// Squeezed-port photon number held fixed in the second family of figs 5 and 6.
pub const FIXED_SQUEEZED_NBAR: f64 = 16.0;

fn total_nbar_families(phi: f64) -> Vec<Family> {
    let mut fams = Vec::new();
    for (suffix, constraint, squeezing, range) in [
        ("split", Constraint::FixNbarSplit, Squeezing::TargetNbar(0.0), lin(4.0, 200.0)),
        (
            "fixed_nbar",
            Constraint::FixNbarSqueezed,
            Squeezing::TargetNbar(FIXED_SQUEEZED_NBAR),
            lin(FIXED_SQUEEZED_NBAR, 200.0),
        ),
    ] {
        for mut f in two_families(&FIG5_OPS, |k, m| total_nbar(k, m, squeezing, constraint, phi, range)) {
            f.name = format!("{}_{suffix}", f.name);
            fams.push(f);
        }
    }
    fams
}

/// Curves against total N̄ at r = 0.9, plus the same states against the
/// coherent photon number, which pairs added and subtracted points at equal α.
fn fig7_families() -> Vec<Family> {
    let mut fams = two_families(&FIG5_OPS, |k, m| {
        total_nbar(k, m, Squeezing::R(0.9), Constraint::FixR, 1e-4, lin(1.0, 200.0))
    });
    for mut f in two_families(&FIG5_OPS, |k, m| SweepConfig {
        axis: Axis::Nz,
        phi: 1e-4,
        ..phase(k, m, Squeezing::R(0.9), 0.0, lin(1.0, 200.0))
    }) {
        f.name = format!("{}_equal_nz", f.name);
        fams.push(f);
    }
    fams
}

pub fn figure_plan(id: FigureId) -> FigurePlan {
    use std::f64::consts::PI;
    let (description, y_column, families) = match id {
        FigureId::Fig1a => (
            "mean photon number of the squeezed port against the number of operations, fixed r",
            "nbar_squeezed",
            [(StateKind::Added, "added"), (StateKind::Subtracted, "subtracted")]
                .into_iter()
                .map(|(kind, name)| Family {
                    name: name.into(),
                    curves: [0.3, 0.9]
                        .into_iter()
                        .map(|r| Curve {
                            label: format!("r={r}"),
                            config: SweepConfig {
                                axis: Axis::Ops,
                                ..phase(kind, 0, Squeezing::R(r), 0.0, AxisRange::linear(0.0, 10.0, 11))
                            },
                        })
                        .collect(),
                })
                .collect(),
        ),
        FigureId::Fig1b => (
            "mean photon number of the squeezed port against r",
            "nbar_squeezed",
            two_families(&FIG5_OPS, |k, m| SweepConfig {
                axis: Axis::R,
                ..phase(k, m, Squeezing::R(0.0), 0.0, lin(0.01, 2.0))
            }),
        ),
        FigureId::Fig2a => (
            "parity against phase at r = 0.3, z = 2",
            "parity",
            two_families(&FIG2_OPS, |k, m| phase(k, m, Squeezing::R(0.3), 4.0, lin(-PI, PI))),
        ),
        FigureId::Fig2b => (
            "parity against phase at equal squeezed-port photon number 4, z = 2",
            "parity",
            two_families(&FIG2_OPS, |k, m| phase(k, m, Squeezing::TargetNbar(4.0), 4.0, lin(-PI, PI))),
        ),
        FigureId::Fig3a => (
            "phase uncertainty against phase, squeezed and coherent photon numbers 4",
            "delta_phi",
            two_families(&FIG3_OPS, |k, m| phase(k, m, Squeezing::TargetNbar(4.0), 4.0, lin(0.0, 0.4))),
        ),
        FigureId::Fig3b => (
            "phase uncertainty against phase, squeezed and coherent photon numbers 16",
            "delta_phi",
            two_families(&FIG3_OPS, |k, m| phase(k, m, Squeezing::TargetNbar(16.0), 16.0, lin(0.0, 0.1))),
        ),
        FigureId::Fig4a => (
            "phase uncertainty against phase at r = 0.9, coherent photon number 100",
            "delta_phi",
            two_families(&FIG3_OPS, |k, m| phase(k, m, Squeezing::R(0.9), 100.0, lin(0.0, 0.1))),
        ),
        FigureId::Fig4b => (
            "phase uncertainty against phase, squeezed photon number 16, coherent 100",
            "delta_phi",
            two_families(&FIG3_OPS, |k, m| phase(k, m, Squeezing::TargetNbar(16.0), 100.0, lin(0.0, 0.1))),
        ),
        FigureId::Fig5 => (
            "phase uncertainty against total photon number at phi = 1e-4",
            "delta_phi",
            total_nbar_families(1e-4),
        ),
        FigureId::Fig6 => (
            "phase uncertainty against total photon number at phi = 0.015",
            "delta_phi",
            total_nbar_families(0.015),
        ),
        FigureId::Fig7 => (
            "phase uncertainty against total photon number at r = 0.9, phi = 1e-4",
            "delta_phi",
            fig7_families(),
        ),
    };
    FigurePlan {
        figure: id,
        description,
        y_column,
        families,
    }
}

/// Every curve of a figure, evaluated.
#[derive(Debug, Clone)]
pub struct FigureData {
    pub plan: FigurePlan,
    /// `tables[f][c]` belongs to `plan.families[f].curves[c]`.
    pub tables: Vec<Vec<SweepTable>>,
}

impl FigureData {
    pub fn family(&self, name: &str) -> Option<(&Family, &[SweepTable])> {
        let i = self.plan.families.iter().position(|f| f.name == name)?;
        Some((&self.plan.families[i], &self.tables[i]))
    }

    /// The table of one curve, looked up by family and label.
    pub fn curve(&self, family: &str, label: &str) -> Option<&SweepTable> {
        let (fam, tables) = self.family(family)?;
        let c = fam.curves.iter().position(|c| c.label == label)?;
        Some(&tables[c])
    }

    /// Rows failing for a reason other than an unreachable grid point.
    pub fn hard_failures(&self) -> usize {
        self.tables
            .iter()
            .flatten()
            .flat_map(|t| &t.rows)
            .filter(|r| r.error.as_deref().is_some_and(|e| !GAP_TAGS.contains(&e)))
            .count()
    }
}

pub fn figure_data(id: FigureId) -> Result<FigureData> {
    let plan = figure_plan(id);
    let tables = plan
        .families
        .iter()
        .map(|f| f.curves.iter().map(|c| run_scenario_sweep(&c.config)).collect())
        .collect::<Result<_>>()?;
    Ok(FigureData { plan, tables })
}

#[derive(Serialize)]
struct ManifestFamily<'a> {
    name: &'a str,
    file: String,
    curves: &'a [Curve],
}

#[derive(Serialize)]
struct Manifest<'a> {
    figure: FigureId,
    description: &'a str,
    code_version: &'static str,
    points_per_curve: usize,
    spacing: Spacing,
    y_column: &'a str,
    families: Vec<ManifestFamily<'a>>,
}

fn csv_name(id: FigureId, family: &str) -> String {
    format!("{id}_{family}.csv")
}

/// Writes the family CSVs and `<id>.json` into `dir`; returns the files written.
pub fn write_figure(data: &FigureData, dir: &Path, gnuplot: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let id = data.plan.figure;
    let mut written = Vec::new();
    for (family, tables) in data.plan.families.iter().zip(&data.tables) {
        let mut header = vec!["curve"];
        header.extend(tables[0].header());
        let mut rows = Vec::new();
        for (curve, table) in family.curves.iter().zip(tables) {
            for mut cells in table.cells() {
                cells.insert(0, Cell::Text(curve.label.clone()));
                rows.push(cells);
            }
        }
        let path = dir.join(csv_name(id, &family.name));
        let file = fs::File::create(&path).map_err(io_err(&path))?;
        write_csv(std::io::BufWriter::new(file), &header, &rows)?;
        written.push(path);
    }

    let manifest = Manifest {
        figure: id,
        description: data.plan.description,
        code_version: env!("CARGO_PKG_VERSION"),
        points_per_curve: DEFAULT_COUNT,
        spacing: Spacing::Linear,
        y_column: data.plan.y_column,
        families: data
            .plan
            .families
            .iter()
            .map(|f| ManifestFamily {
                name: &f.name,
                file: csv_name(id, &f.name),
                curves: &f.curves,
            })
            .collect(),
    };
    let path = dir.join(format!("{id}.json"));
    let mut json = serde_json::to_string_pretty(&manifest)?;
    json.push('\n');
    fs::write(&path, json).map_err(io_err(&path))?;
    written.push(path);

    if gnuplot {
        let path = dir.join(format!("{id}.gp"));
        fs::write(&path, gnuplot_script(data)).map_err(io_err(&path))?;
        written.push(path);
    }
    Ok(written)
}

fn gnuplot_script(data: &FigureData) -> String {
    let id = data.plan.figure;
    let header = data.tables[0][0].header();
    // +1 for the leading curve column, +1 for 1-based indexing
    let col = |name: &str| header.iter().position(|h| *h == name).map_or(0, |i| i + 2);
    let (x, y) = (col("axis_value"), col(data.plan.y_column));
    let mut s = format!(
        "# {}\nset datafile separator ','\nset key autotitle columnhead\nset xlabel '{}'\nset ylabel '{}'\n",
        data.plan.description,
        axis_name(data.tables[0][0].config.axis),
        data.plan.y_column
    );
    if data.plan.y_column == "delta_phi" {
        s.push_str("set logscale y\n");
    }
    let mut plots = Vec::new();
    for (family, _) in data.plan.families.iter().zip(&data.tables) {
        let file = csv_name(id, &family.name);
        for curve in &family.curves {
            plots.push(format!(
                "'{file}' using (strcol(1) eq '{label}' ? ${x} : 1/0):{y} with lines title '{name} {label}'",
                label = curve.label,
                name = family.name
            ));
        }
    }
    if data.plan.y_column == "delta_phi" {
        let file = csv_name(id, &data.plan.families[0].name);
        let first = &data.plan.families[0].curves[0].label;
        for (ref_col, title) in [("snl", "SNL"), ("hl", "HL")] {
            plots.push(format!(
                "'{file}' using (strcol(1) eq '{first}' ? ${x} : 1/0):{} with lines dashtype 2 title '{title}'",
                col(ref_col)
            ));
        }
    }
    s.push_str("plot ");
    s.push_str(&plots.join(", \\\n     "));
    s.push('\n');
    s
}

fn axis_name(axis: Axis) -> &'static str {
    match axis {
        Axis::Phi => "phi",
        Axis::TotalNbar => "total_nbar",
        Axis::R => "r",
        Axis::Ops => "ops",
        Axis::Nz => "nz",
    }
}
