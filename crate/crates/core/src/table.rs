//! HDDS tables: conditional and marginal densities of a target variable laid
//! out like a contingency table, each half disk scaled by the probability of
//! its conditioning event.

use std::collections::{BTreeMap, HashMap};

use crate::color::{make_context, HclColor, ShadingContext};
use crate::density::{
    discrete_bounds, estimate, quantile_sorted, truncation_bounds, DensityGrid, Kind, Sample,
    SupportBounds, DEFAULT_BINS, DEFAULT_COVERAGE,
};
use crate::error::{Error, Result};
use crate::geometry::{diameter_scale, format_tick, DEFAULT_K};

/// Categorical column: level labels plus one level index per record.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditioningColumn {
    name: String,
    levels: Vec<String>,
    codes: Vec<usize>,
}

impl ConditioningColumn {
    pub fn new(name: impl Into<String>, levels: Vec<String>, codes: Vec<usize>) -> Result<Self> {
        if let Some(c) = codes.iter().find(|&&c| c >= levels.len()) {
            return Err(Error::InvalidParameter(format!(
                "level index {c} out of range for {} levels",
                levels.len()
            )));
        }
        Ok(Self {
            name: name.into(),
            levels,
            codes,
        })
    }

    /// Levels in order of first appearance.
    pub fn from_labels<S: AsRef<str>>(name: impl Into<String>, labels: &[S]) -> Self {
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut levels = Vec::new();
        let codes = labels
            .iter()
            .map(|l| {
                let l = l.as_ref();
                *index.entry(l).or_insert_with(|| {
                    levels.push(l.to_string());
                    levels.len() - 1
                })
            })
            .collect();
        Self {
            name: name.into(),
            levels,
            codes,
        }
    }

    /// Puts the listed levels first, in the given order; unlisted observed
    /// levels follow in their current order. Listed but unobserved levels are
    /// kept and yield empty cells.
    pub fn reordered<S: AsRef<str>>(&self, order: &[S]) -> Self {
        let mut levels: Vec<String> = Vec::new();
        for l in order {
            if !levels.iter().any(|x| x == l.as_ref()) {
                levels.push(l.as_ref().to_string());
            }
        }
        for l in &self.levels {
            if !levels.contains(l) {
                levels.push(l.clone());
            }
        }
        let remap: Vec<usize> = self
            .levels
            .iter()
            .map(|l| levels.iter().position(|x| x == l).unwrap())
            .collect();
        Self {
            name: self.name.clone(),
            codes: self.codes.iter().map(|&c| remap[c]).collect(),
            levels,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn levels(&self) -> &[String] {
        &self.levels
    }

    pub fn codes(&self) -> &[usize] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    /// Record-wise level labels.
    pub fn labels(&self) -> Vec<&str> {
        self.codes
            .iter()
            .map(|&c| self.levels[c].as_str())
            .collect()
    }

    fn subset(&self, keep: &[usize]) -> Self {
        Self {
            name: self.name.clone(),
            levels: self.levels.clone(),
            codes: keep.iter().map(|&i| self.codes[i]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub target: Sample,
    pub cond_x: ConditioningColumn,
    pub cond_y: Option<ConditioningColumn>,
    pub source_label: String,
}

impl Dataset {
    pub fn new(
        target: Sample,
        cond_x: ConditioningColumn,
        cond_y: Option<ConditioningColumn>,
        source_label: impl Into<String>,
    ) -> Result<Self> {
        let n = target.len();
        for col in std::iter::once(&cond_x).chain(cond_y.as_ref()) {
            if col.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: col.len(),
                });
            }
        }
        Ok(Self {
            target,
            cond_x,
            cond_y,
            source_label: source_label.into(),
        })
    }

    /// Dataset with a single conditioning level, for plain strips.
    pub fn unconditioned(target: Sample, source_label: impl Into<String>) -> Self {
        let n = target.len();
        Self {
            target,
            cond_x: ConditioningColumn {
                name: String::new(),
                levels: vec!["all".into()],
                codes: vec![0; n],
            },
            cond_y: None,
            source_label: source_label.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    /// Records of one level of `cond_x`, with `cond_x` left in place.
    pub fn split_by_x(&self, level: usize) -> Option<Dataset> {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| self.cond_x.codes[i] == level)
            .collect();
        Some(Dataset {
            target: self.target.subset(&keep)?,
            cond_x: self.cond_x.subset(&keep),
            cond_y: self.cond_y.as_ref().map(|c| c.subset(&keep)),
            source_label: self.cond_x.levels[level].clone(),
        })
    }
}

/// Percentile cut points for a continuous conditioning variable.
///
/// Classes are `[e0, e1), [e1, e2), …, [e(n-1), en]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinningRule {
    pub n_classes: usize,
    pub edges: Vec<f64>,
}

impl BinningRule {
    /// Cut points at the `100·j/n_classes` percentiles of `values`.
    pub fn from_values(values: &[f64], n_classes: usize) -> Result<Self> {
        if n_classes < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 classes, got {n_classes}"
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSample(
                "non-finite value in binning input".into(),
            ));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut distinct = sorted.clone();
        distinct.dedup();
        if distinct.len() <= n_classes {
            return Err(Error::DegenerateBinning {
                distinct: distinct.len(),
                classes: n_classes,
            });
        }
        let edges: Vec<f64> = (0..=n_classes)
            .map(|j| quantile_sorted(&sorted, j as f64 / n_classes as f64))
            .collect();
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::DegenerateBinning {
                distinct: distinct.len(),
                classes: n_classes,
            });
        }
        Ok(Self { n_classes, edges })
    }

    pub fn class_of(&self, v: f64) -> usize {
        self.edges[1..self.n_classes].partition_point(|&e| e <= v)
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.n_classes)
            .map(|c| {
                let close = if c + 1 == self.n_classes { ']' } else { ')' };
                format!(
                    "[{}, {}{close}",
                    format_tick(self.edges[c]),
                    format_tick(self.edges[c + 1])
                )
            })
            .collect()
    }
}

/// Class membership of each value under equally spaced percentile cuts.
pub fn bin_continuous(
    name: impl Into<String>,
    values: &[f64],
    n_classes: usize,
) -> Result<(ConditioningColumn, BinningRule)> {
    let rule = BinningRule::from_values(values, n_classes)?;
    let codes = values.iter().map(|&v| rule.class_of(v)).collect();
    let col = ConditioningColumn::new(name, rule.labels(), codes)?;
    Ok((col, rule))
}

/// Joint and marginal relative frequencies of the two conditioning columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbTable {
    pub joint: Vec<Vec<f64>>,
    pub row_marg: Vec<f64>,
    pub col_marg: Vec<f64>,
    pub counts: Vec<Vec<u64>>,
    pub n: u64,
}

impl ProbTable {
    pub fn row_counts(&self) -> Vec<u64> {
        self.counts.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_counts(&self) -> Vec<u64> {
        let cols = self.counts.first().map_or(0, Vec::len);
        (0..cols)
            .map(|j| self.counts.iter().map(|r| r[j]).sum())
            .collect()
    }
}

fn count_table(x: &ConditioningColumn, y: Option<&ConditioningColumn>) -> Vec<Vec<u64>> {
    let cols = y.map_or(1, ConditioningColumn::n_levels);
    let mut counts = vec![vec![0u64; cols]; x.n_levels()];
    for (i, &cx) in x.codes.iter().enumerate() {
        let cy = y.map_or(0, |c| c.codes[i]);
        counts[cx][cy] += 1;
    }
    counts
}

pub fn joint_probabilities(ds: &Dataset) -> Result<ProbTable> {
    let y = ds
        .cond_y
        .as_ref()
        .ok_or_else(|| Error::Usage("joint probabilities need two conditioning columns".into()))?;
    let counts = count_table(&ds.cond_x, Some(y));
    let n = ds.len() as u64;
    let nf = n as f64;
    let mut table = ProbTable {
        joint: counts
            .iter()
            .map(|r| r.iter().map(|&c| c as f64 / nf).collect())
            .collect(),
        row_marg: Vec::new(),
        col_marg: Vec::new(),
        counts,
        n,
    };
    table.row_marg = table.row_counts().iter().map(|&c| c as f64 / nf).collect();
    table.col_marg = table.col_counts().iter().map(|&c| c as f64 / nf).collect();
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellRole {
    Joint,
    RowMarginal,
    ColMarginal,
    GrandMarginal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub role: CellRole,
    pub probability: f64,
    pub diameter: f64,
    pub count: usize,
    /// Absent for empty cells and cells under the minimum count.
    pub grid: Option<DensityGrid>,
    /// Target values falling in the cell.
    pub sample: Option<Sample>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableConfig {
    pub coverage: f64,
    pub lower_known: Option<f64>,
    pub n_bins: usize,
    pub bandwidth: Option<f64>,
    pub k: f64,
    pub d_base: f64,
    pub base: HclColor,
    pub base2: HclColor,
    pub gamma: f64,
    /// Cells with fewer records show data only.
    pub min_count: usize,
}

impl Default for TableConfig {
    fn default() -> Self {
        Self {
            coverage: DEFAULT_COVERAGE,
            lower_known: None,
            n_bins: DEFAULT_BINS,
            bandwidth: None,
            k: DEFAULT_K,
            d_base: 160.0,
            base: HclColor::default_base(),
            base2: HclColor::default_second(),
            gamma: 1.0,
            min_count: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HddsTable {
    /// `(I+1) × (J+1)` cells, or `(I+1) × 1` without a second conditioner.
    pub cells: Vec<Vec<Cell>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub row_name: String,
    pub col_name: String,
    pub ctx: ShadingContext,
    pub bounds: SupportBounds,
    pub k: f64,
    pub d_base: f64,
    pub source_label: String,
}

impl HddsTable {
    pub fn corner(&self) -> &Cell {
        self.cells.last().unwrap().last().unwrap()
    }

    pub fn grids(&self) -> impl Iterator<Item = &DensityGrid> {
        self.cells.iter().flatten().filter_map(|c| c.grid.as_ref())
    }
}

fn support_for(sample: &Sample, cfg: &TableConfig) -> Result<SupportBounds> {
    match sample.kind() {
        Kind::Continuous => truncation_bounds(sample, cfg.coverage, cfg.lower_known),
        Kind::Discrete => discrete_bounds(sample),
    }
}

fn validate(cfg: &TableConfig) -> Result<()> {
    // diameter_scale checks k and d_base
    diameter_scale(1.0, cfg.k, cfg.d_base)?;
    if !(cfg.gamma > 0.0 && cfg.gamma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "gamma must be positive, got {}",
            cfg.gamma
        )));
    }
    Ok(())
}

/// Row indices of each cell, laid out like the final table.
fn cell_members(ds: &Dataset) -> Vec<Vec<(CellRole, Vec<usize>)>> {
    let ni = ds.cond_x.n_levels();
    let y = ds.cond_y.as_ref();
    let nj = y.map_or(0, ConditioningColumn::n_levels);
    let mut joint = vec![vec![Vec::new(); nj]; ni];
    let mut rows = vec![Vec::new(); ni];
    let mut cols = vec![Vec::new(); nj];
    for r in 0..ds.len() {
        let i = ds.cond_x.codes[r];
        rows[i].push(r);
        if let Some(y) = y {
            let j = y.codes[r];
            joint[i][j].push(r);
            cols[j].push(r);
        }
    }
    let all: Vec<usize> = (0..ds.len()).collect();
    let mut out: Vec<Vec<(CellRole, Vec<usize>)>> = Vec::with_capacity(ni + 1);
    for (i, row) in rows.into_iter().enumerate() {
        let mut line: Vec<(CellRole, Vec<usize>)> =
            joint[i].drain(..).map(|m| (CellRole::Joint, m)).collect();
        line.push((CellRole::RowMarginal, row));
        out.push(line);
    }
    let mut last: Vec<(CellRole, Vec<usize>)> = cols
        .into_iter()
        .map(|m| (CellRole::ColMarginal, m))
        .collect();
    last.push((CellRole::GrandMarginal, all));
    out.push(last);
    out
}

fn build_cells(
    ds: &Dataset,
    bounds: &SupportBounds,
    cfg: &TableConfig,
    base: HclColor,
) -> Result<(Vec<Vec<Cell>>, ShadingContext)> {
    let n = ds.len();
    let mut cells = Vec::new();
    for line in cell_members(ds) {
        let mut row = Vec::with_capacity(line.len());
        for (role, members) in line {
            let count = members.len();
            // corner probability is exactly one
            let probability = if role == CellRole::GrandMarginal {
                1.0
            } else {
                count as f64 / n as f64
            };
            let sample = ds.target.subset(&members);
            let grid = match &sample {
                Some(s) if count >= cfg.min_count => {
                    match estimate(s, bounds, cfg.n_bins, cfg.bandwidth) {
                        Ok(g) => Some(g),
                        Err(Error::DegenerateDensity { .. }) => None,
                        Err(e) => return Err(e),
                    }
                }
                _ => None,
            };
            row.push(Cell {
                role,
                probability,
                diameter: diameter_scale(probability, cfg.k, cfg.d_base)?,
                count,
                grid,
                sample,
            });
        }
        cells.push(row);
    }
    let grids: Vec<&DensityGrid> = cells
        .iter()
        .flatten()
        .filter_map(|c| c.grid.as_ref())
        .collect();
    let ctx = if grids.is_empty() {
        ShadingContext::with_norm(base, cfg.gamma, 1.0)?
    } else {
        make_context(grids, base, cfg.gamma)?
    };
    Ok((cells, ctx))
}

fn labels_of(ds: &Dataset) -> (Vec<String>, Vec<String>) {
    let mut rows = ds.cond_x.levels.clone();
    rows.push("all".into());
    let mut cols: Vec<String> = ds
        .cond_y
        .as_ref()
        .map_or_else(Vec::new, |y| y.levels.clone());
    cols.push("all".into());
    (rows, cols)
}

/// Builds the full table: shared bounds from the whole target sample, one
/// grid per populated cell, one shading context over every grid.
pub fn build_table(ds: &Dataset, cfg: &TableConfig) -> Result<HddsTable> {
    validate(cfg)?;
    if ds.is_empty() {
        return Err(Error::NoRecords(ds.source_label.clone()));
    }
    let bounds = support_for(&ds.target, cfg)?;
    let (cells, ctx) = build_cells(ds, &bounds, cfg, cfg.base)?;
    let (row_labels, col_labels) = labels_of(ds);
    Ok(HddsTable {
        cells,
        row_labels,
        col_labels,
        row_name: ds.cond_x.name.clone(),
        col_name: ds
            .cond_y
            .as_ref()
            .map_or_else(String::new, |y| y.name.clone()),
        ctx,
        bounds,
        k: cfg.k,
        d_base: cfg.d_base,
        source_label: ds.source_label.clone(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonCell {
    pub top: Cell,
    pub bottom: Cell,
}

/// Two sources on one layout: source A in the upper half disks, source B in
/// the lower ones.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub cells: Vec<Vec<ComparisonCell>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub row_name: String,
    pub col_name: String,
    pub ctx_top: ShadingContext,
    pub ctx_bottom: ShadingContext,
    pub bounds: SupportBounds,
    pub k: f64,
    pub d_base: f64,
    pub source_labels: (String, String),
}

fn level_diff(axis: &str, a: &ConditioningColumn, b: &ConditioningColumn) -> Option<String> {
    let only_a: Vec<&String> = a.levels.iter().filter(|l| !b.levels.contains(l)).collect();
    let only_b: Vec<&String> = b.levels.iter().filter(|l| !a.levels.contains(l)).collect();
    if only_a.is_empty() && only_b.is_empty() {
        return None;
    }
    Some(format!(
        "{axis}: only in first {only_a:?}, only in second {only_b:?}"
    ))
}

/// Brings `b`'s conditioning columns to `a`'s level order, or reports the
/// levels that differ.
fn align_levels(a: &Dataset, b: &Dataset) -> Result<Dataset> {
    let mut problems = Vec::new();
    if let Some(d) = level_diff("x", &a.cond_x, &b.cond_x) {
        problems.push(d);
    }
    match (&a.cond_y, &b.cond_y) {
        (Some(ya), Some(yb)) => {
            if let Some(d) = level_diff("y", ya, yb) {
                problems.push(d);
            }
        }
        (None, None) => {}
        _ => problems.push("y: present in only one source".into()),
    }
    if !problems.is_empty() {
        return Err(Error::LevelMismatch(problems.join("; ")));
    }
    Ok(Dataset {
        target: b.target.clone(),
        cond_x: b.cond_x.reordered(&a.cond_x.levels),
        cond_y: b
            .cond_y
            .as_ref()
            .zip(a.cond_y.as_ref())
            .map(|(yb, ya)| yb.reordered(&ya.levels)),
        source_label: b.source_label.clone(),
    })
}

pub fn build_comparison(a: &Dataset, b: &Dataset, cfg: &TableConfig) -> Result<ComparisonTable> {
    validate(cfg)?;
    if a.is_empty() {
        return Err(Error::NoRecords(a.source_label.clone()));
    }
    if b.is_empty() {
        return Err(Error::NoRecords(b.source_label.clone()));
    }
    let b = align_levels(a, b)?;
    let pooled = a.target.pooled(&b.target)?;
    let bounds = support_for(&pooled, cfg)?;
    let (top, ctx_top) = build_cells(a, &bounds, cfg, cfg.base)?;
    let (bottom, ctx_bottom) = build_cells(&b, &bounds, cfg, cfg.base2)?;
    let cells = top
        .into_iter()
        .zip(bottom)
        .map(|(rt, rb)| {
            rt.into_iter()
                .zip(rb)
                .map(|(top, bottom)| ComparisonCell { top, bottom })
                .collect()
        })
        .collect();
    let (row_labels, col_labels) = labels_of(a);
    Ok(ComparisonTable {
        cells,
        row_labels,
        col_labels,
        row_name: a.cond_x.name.clone(),
        col_name: a
            .cond_y
            .as_ref()
            .map_or_else(String::new, |y| y.name.clone()),
        ctx_top,
        ctx_bottom,
        bounds,
        k: cfg.k,
        d_base: cfg.d_base,
        source_labels: (a.source_label.clone(), b.source_label.clone()),
    })
}

/// Replaces `cond_y` by its product with `extra`; levels are the observed
/// pairs in lexicographic level order, labelled `y×w`. Without a `cond_y`,
/// `extra` becomes it.
pub fn compose_conditioning(ds: &Dataset, extra: &ConditioningColumn) -> Result<Dataset> {
    if extra.len() != ds.len() {
        return Err(Error::LengthMismatch {
            expected: ds.len(),
            found: extra.len(),
        });
    }
    let Some(y) = &ds.cond_y else {
        return Ok(Dataset {
            cond_y: Some(extra.clone()),
            ..ds.clone()
        });
    };
    let observed: BTreeMap<(usize, usize), usize> = y
        .codes
        .iter()
        .zip(&extra.codes)
        .map(|(&a, &b)| ((a, b), 0))
        .collect();
    let mut index = BTreeMap::new();
    let mut levels = Vec::with_capacity(observed.len());
    for (pos, &(a, b)) in observed.keys().enumerate() {
        index.insert((a, b), pos);
        levels.push(format!("{}×{}", y.levels[a], extra.levels[b]));
    }
    let codes = y
        .codes
        .iter()
        .zip(&extra.codes)
        .map(|(&a, &b)| index[&(a, b)])
        .collect();
    let composite = ConditioningColumn {
        name: format!("{}×{}", y.name, extra.name),
        levels,
        codes,
    };
    Ok(Dataset {
        cond_y: Some(composite),
        ..ds.clone()
    })
}
