//! Output plumbing shared by every serialized artifact: the provenance
//! stamp, 17-significant-digit decimals and atomic file replacement.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};
use crate::pmf::CONVENTION_SIGMA;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance carried by every artifact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stamp {
    pub version: String,
    pub seed: Option<u64>,
    pub convention_sigma: i64,
}

impl Stamp {
    pub fn new(seed: Option<u64>) -> Self {
        Self {
            version: VERSION.to_string(),
            seed,
            convention_sigma: CONVENTION_SIGMA,
        }
    }

    /// `# key=value` lines written ahead of a CSV header.
    pub fn csv_preamble(&self) -> String {
        let seed = self.seed.map(|s| s.to_string()).unwrap_or_else(|| "none".into());
        format!(
            "# version={}\n# seed={}\n# convention_sigma={}\n",
            self.version, seed, self.convention_sigma
        )
    }

    /// Splits a CSV document into its stamp and the remaining body.
    pub fn split_csv(text: &str) -> Result<(Stamp, String)> {
        match Self::split_csv_optional(text)? {
            (Some(stamp), body) => Ok((stamp, body)),
            (None, _) => Err(WalkError::Parse("missing version stamp".into())),
        }
    }

    /// As [`Stamp::split_csv`], but a document without any metadata lines
    /// is accepted.
    pub fn split_csv_optional(text: &str) -> Result<(Option<Stamp>, String)> {
        let mut version = None;
        let mut seed = None;
        let mut sigma = None;
        let mut body = String::with_capacity(text.len());
        for line in text.lines() {
            if let Some(meta) = line.strip_prefix('#') {
                let (key, value) = meta
                    .trim()
                    .split_once('=')
                    .ok_or_else(|| WalkError::Parse(format!("malformed metadata line `{line}`")))?;
                match key.trim() {
                    "version" => version = Some(value.trim().to_string()),
                    "seed" => {
                        let v = value.trim();
                        seed = Some(if v == "none" {
                            None
                        } else {
                            Some(v.parse::<u64>().map_err(|e| WalkError::Parse(format!("seed: {e}")))?)
                        })
                    }
                    "convention_sigma" => {
                        sigma = Some(
                            value
                                .trim()
                                .parse::<i64>()
                                .map_err(|e| WalkError::Parse(format!("convention_sigma: {e}")))?,
                        )
                    }
                    _ => {}
                }
            } else {
                body.push_str(line);
                body.push('\n');
            }
        }
        if version.is_none() && seed.is_none() && sigma.is_none() {
            return Ok((None, body));
        }
        let stamp = Stamp {
            version: version.ok_or_else(|| WalkError::Parse("missing version stamp".into()))?,
            seed: seed.ok_or_else(|| WalkError::Parse("missing seed stamp".into()))?,
            convention_sigma: sigma.ok_or_else(|| WalkError::Parse("missing convention_sigma stamp".into()))?,
        };
        Ok((Some(stamp), body))
    }
}

/// Scientific notation with 17 significant digits; parses back to the same
/// `f64` bit pattern.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn parse_f64(field: &str) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|e| WalkError::Parse(format!("`{field}`: {e}")))
}

/// Writes through a temporary file in the destination directory and renames
/// it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    // keep an existing file's mode; new files get the usual 0644 rather
    // than the private mode of a temporary file
    match std::fs::metadata(path) {
        Ok(meta) => tmp.as_file().set_permissions(meta.permissions())?,
        Err(_) => {
            #[cfg(unix)]
            {
                use std::os::unix::fs::PermissionsExt;
                tmp.as_file().set_permissions(std::fs::Permissions::from_mode(0o644))?;
            }
        }
    }
    tmp.persist(path).map_err(|e| WalkError::Io(e.error))?;
    Ok(())
}

/// A table cell: integers stay integers, reals use [`fmt17`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl Cell {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Cell::Int(i) => i as f64,
            Cell::Real(x) => x,
        }
    }

    fn render(&self) -> String {
        match *self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => fmt17(x),
        }
    }

    fn parse(field: &str) -> Result<Self> {
        let field = field.trim();
        match field.parse::<i64>() {
            Ok(i) => Ok(Cell::Int(i)),
            Err(_) => parse_f64(field).map(Cell::Real),
        }
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

/// A stamped rectangular table with a CSV form and a JSON mirror.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    #[serde(flatten)]
    pub stamp: Stamp,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(seed: Option<u64>, columns: &[&str]) -> Self {
        Self {
            stamp: Stamp::new(seed),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.stamp.csv_preamble();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let (stamp, body) = Stamp::split_csv(text)?;
        let mut reader = csv::Reader::from_reader(body.as_bytes());
        let columns: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            rows.push(record.iter().map(Cell::parse).collect::<Result<Vec<_>>>()?);
        }
        Ok(Self { stamp, columns, rows })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
