//! CSV ingestion into a [`Dataset`].

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use crate::density::{Kind, Sample};
use crate::error::{Error, Result};
use crate::geometry::format_tick;
use crate::table::{bin_continuous, compose_conditioning, ConditioningColumn, Dataset};

/// Integer columns with at most this many distinct values are discrete.
pub const MAX_DISCRETE_LEVELS: usize = 25;

const MISSING: [&str; 7] = ["", "NA", "na", "NaN", "nan", "null", "."];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnKind {
    Continuous,
    Discrete,
    Categorical,
}

impl FromStr for ColumnKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "continuous" => Ok(ColumnKind::Continuous),
            "discrete" => Ok(ColumnKind::Discrete),
            "categorical" => Ok(ColumnKind::Categorical),
            other => Err(Error::InvalidParameter(format!(
                "unknown column type `{other}` (continuous, discrete, categorical)"
            ))),
        }
    }
}

/// Which columns to read and how.
#[derive(Debug, Clone, PartialEq)]
pub struct IngestSpec {
    pub target: String,
    pub by_x: Option<String>,
    pub by_y: Option<String>,
    pub compose: Option<String>,
    pub hints: BTreeMap<String, ColumnKind>,
    pub levels: BTreeMap<String, Vec<String>>,
    /// Classes for continuous conditioners.
    pub classes: usize,
}

impl IngestSpec {
    pub fn new(target: impl Into<String>) -> Self {
        Self {
            target: target.into(),
            by_x: None,
            by_y: None,
            compose: None,
            hints: BTreeMap::new(),
            levels: BTreeMap::new(),
            classes: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ingested {
    pub dataset: Dataset,
    pub rows: usize,
    pub dropped: usize,
}

fn is_missing(s: &str) -> bool {
    MISSING.contains(&s)
}

fn parse_number(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn is_int(v: f64) -> bool {
    v.fract() == 0.0 && v.abs() < 9.0e15
}

/// Kind of a column from its non-missing cells.
pub fn infer_kind<'a, I: IntoIterator<Item = &'a str>>(cells: I) -> ColumnKind {
    let mut numeric = true;
    let mut integral = true;
    let mut distinct = BTreeSet::new();
    for c in cells {
        if is_missing(c) {
            continue;
        }
        match parse_number(c) {
            Some(v) => {
                if is_int(v) {
                    if distinct.len() <= MAX_DISCRETE_LEVELS {
                        distinct.insert(v as i64);
                    }
                } else {
                    integral = false;
                }
            }
            None => {
                numeric = false;
                break;
            }
        }
    }
    if !numeric {
        ColumnKind::Categorical
    } else if integral && distinct.len() <= MAX_DISCRETE_LEVELS {
        ColumnKind::Discrete
    } else {
        ColumnKind::Continuous
    }
}

fn cell_ok(cell: &str, kind: ColumnKind) -> bool {
    if is_missing(cell) {
        return false;
    }
    match kind {
        ColumnKind::Categorical => true,
        ColumnKind::Continuous => parse_number(cell).is_some(),
        ColumnKind::Discrete => parse_number(cell).is_some_and(is_int),
    }
}

struct Column {
    name: String,
    kind: ColumnKind,
    cells: Vec<String>,
}

fn conditioning_column(
    col: &Column,
    rows: &[usize],
    spec: &IngestSpec,
) -> Result<ConditioningColumn> {
    let cells: Vec<&str> = rows.iter().map(|&r| col.cells[r].as_str()).collect();
    let built = match col.kind {
        ColumnKind::Categorical => ConditioningColumn::from_labels(col.name.clone(), &cells),
        ColumnKind::Discrete => {
            let values: Vec<i64> = cells
                .iter()
                .map(|c| parse_number(c).unwrap() as i64)
                .collect();
            let levels: Vec<i64> = values
                .iter()
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let codes = values
                .iter()
                .map(|v| levels.binary_search(v).unwrap())
                .collect();
            let labels = levels.iter().map(|&v| format_tick(v as f64)).collect();
            ConditioningColumn::new(col.name.clone(), labels, codes)?
        }
        ColumnKind::Continuous => {
            let values: Vec<f64> = cells.iter().map(|c| parse_number(c).unwrap()).collect();
            bin_continuous(col.name.clone(), &values, spec.classes)?.0
        }
    };
    Ok(match spec.levels.get(&col.name) {
        Some(order) => built.reordered(order),
        None => built,
    })
}

/// Reads a CSV with a header row. Records whose target or conditioning cells
/// are missing or unparseable are dropped and counted.
pub fn ingest_reader<R: Read>(
    reader: R,
    source_label: &str,
    spec: &IngestSpec,
) -> Result<Ingested> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr.headers()?.clone();
    let wanted: Vec<&String> = std::iter::once(&spec.target)
        .chain(spec.by_x.as_ref())
        .chain(spec.by_y.as_ref())
        .chain(spec.compose.as_ref())
        .collect();
    let mut indices = Vec::with_capacity(wanted.len());
    for name in &wanted {
        let idx = header
            .iter()
            .position(|h| h == name.as_str())
            .ok_or_else(|| Error::UnknownColumn((*name).clone()))?;
        indices.push(idx);
    }
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); wanted.len()];
    let mut rows = 0;
    for record in rdr.records() {
        let record = record?;
        rows += 1;
        for (slot, &idx) in cells.iter_mut().zip(&indices) {
            slot.push(record.get(idx).unwrap_or("").to_string());
        }
    }
    let columns: Vec<Column> = wanted
        .iter()
        .zip(cells)
        .map(|(name, cells)| {
            let kind = spec
                .hints
                .get(name.as_str())
                .copied()
                .unwrap_or_else(|| infer_kind(cells.iter().map(String::as_str)));
            Column {
                name: (*name).clone(),
                kind,
                cells,
            }
        })
        .collect();

    let target = &columns[0];
    let target_kind = match target.kind {
        ColumnKind::Continuous => Kind::Continuous,
        ColumnKind::Discrete => Kind::Discrete,
        ColumnKind::Categorical => {
            return Err(Error::Usage(format!(
                "target column `{}` is not numeric",
                target.name
            )))
        }
    };
    let usable: Vec<usize> = (0..rows)
        .filter(|&r| columns.iter().all(|c| cell_ok(&c.cells[r], c.kind)))
        .collect();
    if usable.is_empty() {
        return Err(Error::NoRecords(source_label.to_string()));
    }
    let values = usable
        .iter()
        .map(|&r| parse_number(&target.cells[r]).unwrap())
        .collect();
    let sample = Sample::new(values, target_kind)?;

    // columns follow the order of `wanted`
    let mut rest = columns[1..].iter();
    let x_col = spec.by_x.as_ref().and_then(|_| rest.next());
    let y_col = spec.by_y.as_ref().and_then(|_| rest.next());
    let w_col = spec.compose.as_ref().and_then(|_| rest.next());

    let mut dataset = match x_col {
        Some(c) => Dataset::new(
            sample,
            conditioning_column(c, &usable, spec)?,
            y_col
                .map(|c| conditioning_column(c, &usable, spec))
                .transpose()?,
            source_label,
        )?,
        None => Dataset::unconditioned(sample, source_label),
    };
    if let Some(w) = w_col {
        dataset = compose_conditioning(&dataset, &conditioning_column(w, &usable, spec)?)?;
    }
    Ok(Ingested {
        dataset,
        rows,
        dropped: rows - usable.len(),
    })
}

/// [`ingest_reader`] on a file; the file stem labels the source.
pub fn ingest_path(path: &Path, spec: &IngestSpec) -> Result<Ingested> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let label = path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    );
    ingest_reader(file, &label, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(csv: &str, spec: &IngestSpec) -> Result<Ingested> {
        ingest_reader(csv.as_bytes(), "test", spec)
    }

    #[test]
    fn blank_target_dropped() {
        let got = run("z,g\n1.5,a\n,b\n2.5,a\n", &IngestSpec::new("z")).unwrap();
        assert_eq!(got.rows, 3);
        assert_eq!(got.dropped, 1);
        assert_eq!(got.dataset.target.values(), &[1.5, 2.5]);
    }

    #[test]
    fn header_only_has_no_records() {
        let err = run("z,g\n", &IngestSpec::new("z")).unwrap_err();
        assert!(matches!(err, Error::NoRecords(_)));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unknown_column_named() {
        let err = run("z,g\n1,a\n", &IngestSpec::new("income")).unwrap_err();
        assert!(err.to_string().contains("income"));
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn inference_rules() {
        assert_eq!(infer_kind(["1", "2", "", "3"]), ColumnKind::Discrete);
        assert_eq!(infer_kind(["1", "2.5"]), ColumnKind::Continuous);
        let many: Vec<String> = (0..30).map(|i| i.to_string()).collect();
        assert_eq!(
            infer_kind(many.iter().map(String::as_str)),
            ColumnKind::Continuous
        );
        assert_eq!(infer_kind(["1", "x"]), ColumnKind::Categorical);
        assert_eq!(infer_kind(["inf", "1"]), ColumnKind::Categorical);
    }

    #[test]
    fn conditioners_and_levels() {
        let csv = "z,g,e\n1,f,b\n2,m,a\n3,f,a\n4,m,NA\n";
        let mut spec = IngestSpec::new("z");
        spec.by_x = Some("g".into());
        spec.by_y = Some("e".into());
        spec.levels.insert("g".into(), vec!["m".into(), "f".into()]);
        let got = run(csv, &spec).unwrap();
        assert_eq!(got.dropped, 1);
        let ds = got.dataset;
        assert_eq!(ds.cond_x.levels(), &["m", "f"]);
        assert_eq!(ds.cond_x.codes(), &[1, 0, 1]);
        assert_eq!(ds.cond_y.unwrap().levels(), &["b", "a"]);
        assert_eq!(ds.target.kind(), Kind::Discrete);
    }

    #[test]
    fn continuous_conditioner_is_binned() {
        let mut csv = String::from("z,inc\n");
        for i in 0..30 {
            csv.push_str(&format!("{},{}.5\n", i % 4, i));
        }
        let mut spec = IngestSpec::new("z");
        spec.by_x = Some("inc".into());
        spec.classes = 3;
        let ds = run(&csv, &spec).unwrap().dataset;
        assert_eq!(ds.cond_x.n_levels(), 3);
    }

    #[test]
    fn categorical_target_rejected() {
        let err = run("z\na\nb\n", &IngestSpec::new("z")).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn hints_override_inference() {
        let mut spec = IngestSpec::new("z");
        spec.hints.insert("z".into(), ColumnKind::Continuous);
        let ds = run("z\n1\n2\n2\n", &spec).unwrap().dataset;
        assert_eq!(ds.target.kind(), Kind::Continuous);
    }

    #[test]
    fn short_rows_count_as_missing() {
        let mut spec = IngestSpec::new("z");
        spec.by_x = Some("g".into());
        let got = run("z,g\n1.5,a\n2.5\n3.5,b\n", &spec).unwrap();
        assert_eq!(got.dropped, 1);
    }

    #[test]
    fn composite_column() {
        let csv = "z,x,y,w\n1,a,u,k\n2,a,v,l\n3,b,u,k\n4,b,v,k\n";
        let mut spec = IngestSpec::new("z");
        spec.by_x = Some("x".into());
        spec.by_y = Some("y".into());
        spec.compose = Some("w".into());
        let ds = run(csv, &spec).unwrap().dataset;
        assert_eq!(ds.cond_y.unwrap().levels(), &["u×k", "v×k", "v×l"]);
    }
}
