//! CSV and JSON-lines report files.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sumfree_core::{AbelianGroup, BoundReport, Outcome};

use crate::config::Format;
use crate::sweep::Entry;

pub const COLUMNS: [&str; 8] = [
    "check_name",
    "group",
    "subset",
    "char",
    "params",
    "lhs",
    "rhs",
    "holds",
];

/// One report row, all fields in their serialized text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub check_name: String,
    pub group: String,
    pub subset: String,
    pub char: String,
    pub params: String,
    pub lhs: String,
    pub rhs: String,
    /// `true`, `false`, or `n/a` when the check's preconditions are not met.
    pub holds: String,
}

#[derive(Serialize, Deserialize)]
struct JsonRow {
    check_name: String,
    group: String,
    subset: String,
    char: String,
    params: String,
    lhs: String,
    rhs: String,
    holds: Option<bool>,
}

impl Row {
    pub fn new(group: &AbelianGroup, subset: &str, r: &BoundReport) -> Self {
        Row {
            check_name: r.check.as_str().to_string(),
            group: group.to_string(),
            subset: subset.to_string(),
            char: r.character_label(),
            params: r.params.to_string(),
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            holds: r.outcome.as_str().to_string(),
        }
    }

    pub fn from_entry(groups: &[AbelianGroup], e: &Entry) -> Self {
        Row::new(&groups[e.group_idx], &e.subset, &e.report)
    }

    pub fn outcome(&self) -> Result<Outcome> {
        Ok(match self.holds.as_str() {
            "true" => Outcome::Holds,
            "false" => Outcome::Fails,
            "n/a" => Outcome::NotApplicable,
            other => bail!("bad holds value {other:?}"),
        })
    }

    fn to_json(&self) -> Result<JsonRow> {
        let holds = match self.outcome()? {
            Outcome::Holds => Some(true),
            Outcome::Fails => Some(false),
            Outcome::NotApplicable => None,
        };
        Ok(JsonRow {
            check_name: self.check_name.clone(),
            group: self.group.clone(),
            subset: self.subset.clone(),
            char: self.char.clone(),
            params: self.params.clone(),
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
            holds,
        })
    }

    fn from_json(j: JsonRow) -> Self {
        let holds = match j.holds {
            Some(true) => "true",
            Some(false) => "false",
            None => "n/a",
        };
        Row {
            check_name: j.check_name,
            group: j.group,
            subset: j.subset,
            char: j.char,
            params: j.params,
            lhs: j.lhs,
            rhs: j.rhs,
            holds: holds.to_string(),
        }
    }
}

pub fn write_rows<W: Write>(
    w: W,
    format: Format,
    rows: impl IntoIterator<Item = Row>,
) -> Result<()> {
    match format {
        Format::Csv => {
            let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
            out.write_record(COLUMNS)?;
            for row in rows {
                out.serialize(row)?;
            }
            out.flush()?;
        }
        Format::Jsonl => {
            let mut out = BufWriter::new(w);
            for row in rows {
                serde_json::to_writer(&mut out, &row.to_json()?)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

/// Writes to a temporary file beside `path` and renames it into place, so a
/// failed run never leaves a partial report behind.
pub fn write_report(
    path: &Path,
    format: Format,
    rows: impl IntoIterator<Item = Row>,
) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    write_rows(BufWriter::new(tmp.as_file()), format, rows)
        .with_context(|| format!("writing {}", path.display()))?;
    tmp.as_file()
        .sync_all()
        .with_context(|| format!("writing {}", path.display()))?;
    tmp.persist(path)
        .with_context(|| format!("moving report into {}", path.display()))?;
    Ok(())
}

pub fn read_rows(path: &Path, format: Format) -> Result<Vec<Row>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    match format {
        Format::Csv => {
            let mut rdr = csv::Reader::from_reader(file);
            let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
            if header != COLUMNS {
                bail!("{}: unexpected header {header:?}", path.display());
            }
            rdr.deserialize()
                .map(|r| r.with_context(|| format!("reading {}", path.display())))
                .collect()
        }
        Format::Jsonl => BufReader::new(file)
            .lines()
            .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
            .map(|l| {
                let l = l?;
                let j: JsonRow = serde_json::from_str(&l)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(Row::from_json(j))
            })
            .collect(),
    }
}
