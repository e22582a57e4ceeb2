use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};
use crate::io::Stamp;

/// Observed outcomes of `n` independent `k`-step walks from the origin.
///
/// Positions use the closed-form displacement index (see
/// [`crate::pmf::CONVENTION_SIGMA`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TrialDataset {
    Positions { k: usize, positions: Vec<i64> },
    ReturnCounts { k: usize, n: u64, n0: u64 },
}

impl TrialDataset {
    pub fn positions(k: usize, positions: Vec<i64>) -> Result<Self> {
        let data = Self::Positions { k, positions };
        data.validate()?;
        Ok(data)
    }

    pub fn return_counts(k: usize, n: u64, n0: u64) -> Result<Self> {
        let data = Self::ReturnCounts { k, n, n0 };
        data.validate()?;
        Ok(data)
    }

    pub fn k(&self) -> usize {
        match self {
            Self::Positions { k, .. } | Self::ReturnCounts { k, .. } => *k,
        }
    }

    /// Number of trials.
    pub fn n(&self) -> u64 {
        match self {
            Self::Positions { positions, .. } => positions.len() as u64,
            Self::ReturnCounts { n, .. } => *n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Positions { k, positions } => {
                let ki = *k as i64;
                if let Some(&d) = positions.iter().find(|&&d| d.abs() > ki || (ki - d).rem_euclid(2) != 0) {
                    return Err(WalkError::ParityInvalid { k: *k, d });
                }
                Ok(())
            }
            Self::ReturnCounts { n, n0, .. } => {
                if n0 > n {
                    Err(WalkError::CountsInvalid { n0: *n0, n: *n })
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// A stamped dataset; hand-written CSV files may omit the stamp. CSV layout is `k,d` (one row per sample) for
/// positions and a single `k,n,n0` row for return counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetDocument {
    #[serde(flatten)]
    pub stamp: Stamp,
    pub data: TrialDataset,
}

impl DatasetDocument {
    pub fn new(data: TrialDataset, seed: Option<u64>) -> Self {
        Self {
            stamp: Stamp::new(seed),
            data,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.stamp.csv_preamble();
        match &self.data {
            TrialDataset::Positions { k, positions } => {
                out.push_str("k,d\n");
                for d in positions {
                    out.push_str(&format!("{k},{d}\n"));
                }
            }
            TrialDataset::ReturnCounts { k, n, n0 } => {
                out.push_str(&format!("k,n,n0\n{k},{n},{n0}\n"));
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let (stamp, body) = Stamp::split_csv_optional(text)?;
        let stamp = stamp.unwrap_or_else(|| Stamp::new(None));
        let mut reader = csv::Reader::from_reader(body.as_bytes());
        let headers: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
        let int = |field: &str, name: &str| -> Result<i64> {
            field
                .trim()
                .parse::<i64>()
                .map_err(|e| WalkError::Parse(format!("{name} `{field}`: {e}")))
        };
        let nonneg = |v: i64, name: &str| -> Result<u64> {
            u64::try_from(v).map_err(|_| WalkError::Parse(format!("{name} must be non-negative")))
        };
        let data = match headers.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
            ["k", "d"] => {
                let mut k = None;
                let mut positions = Vec::new();
                for record in reader.records() {
                    let record = record?;
                    let rk = nonneg(int(&record[0], "k")?, "k")? as usize;
                    if *k.get_or_insert(rk) != rk {
                        return Err(WalkError::Parse("k must be constant across rows".into()));
                    }
                    positions.push(int(&record[1], "d")?);
                }
                let k = k.ok_or(WalkError::EmptyData)?;
                TrialDataset::Positions { k, positions }
            }
            ["k", "n", "n0"] => {
                let mut records = reader.records();
                let record = records.next().ok_or(WalkError::EmptyData)??;
                if records.next().is_some() {
                    return Err(WalkError::Parse("return-count file has more than one row".into()));
                }
                TrialDataset::ReturnCounts {
                    k: nonneg(int(&record[0], "k")?, "k")? as usize,
                    n: nonneg(int(&record[1], "n")?, "n")?,
                    n0: nonneg(int(&record[2], "n0")?, "n0")?,
                }
            }
            other => return Err(WalkError::Parse(format!("unrecognised dataset header {other:?}"))),
        };
        data.validate()?;
        Ok(Self { stamp, data })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text)?;
        doc.data.validate()?;
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(TrialDataset::positions(4, vec![0, -2, 4]).is_ok());
        assert!(matches!(
            TrialDataset::positions(4, vec![0, 1]),
            Err(WalkError::ParityInvalid { d: 1, .. })
        ));
        assert!(TrialDataset::positions(4, vec![6]).is_err());
        assert!(matches!(
            TrialDataset::return_counts(2, 3, 4),
            Err(WalkError::CountsInvalid { .. })
        ));
    }

    #[test]
    fn round_trips() {
        for data in [
            TrialDataset::positions(6, vec![0, 2, -6, 4]).unwrap(),
            TrialDataset::return_counts(8, 100, 37).unwrap(),
        ] {
            let doc = DatasetDocument::new(data, Some(5));
            assert_eq!(DatasetDocument::from_csv(&doc.to_csv()).unwrap(), doc);
            assert_eq!(DatasetDocument::from_json(&doc.to_json().unwrap()).unwrap(), doc);
        }
    }

    #[test]
    fn malformed_files() {
        let pre = Stamp::new(Some(1)).csv_preamble();
        assert!(DatasetDocument::from_csv(&format!("{pre}k,x\n2,0\n")).is_err());
        assert!(DatasetDocument::from_csv(&format!("{pre}k,d\n2,zero\n")).is_err());
        assert!(DatasetDocument::from_csv(&format!("{pre}k,d\n2,1\n")).is_err());
        assert!(DatasetDocument::from_csv(&format!("{pre}k,n,n0\n2,5,-1\n")).is_err());
        assert!(DatasetDocument::from_json("{\"kind\":\"positions\"}").is_err());
        let bare = DatasetDocument::from_csv("k,d\n4,0\n4,-2\n").unwrap();
        assert_eq!(bare.data, TrialDataset::Positions { k: 4, positions: vec![0, -2] });
    }
}
