use serde::{Deserialize, Serialize};

use super::table::Pmf;
use crate::error::{Result, WalkError};
use crate::io::{fmt17, parse_f64, Stamp};

/// A stamped [`Pmf`] in its on-disk forms: CSV with columns
/// `k,d,r,lambda,p` and a JSON mirror.
#[derive(Debug, Clone, PartialEq)]
pub struct PmfDocument {
    pub stamp: Stamp,
    pub pmf: Pmf<f64>,
}

#[derive(Serialize, Deserialize)]
struct JsonRow {
    d: i64,
    r: f64,
    p: f64,
}

#[derive(Serialize, Deserialize)]
struct JsonPmf {
    #[serde(flatten)]
    stamp: Stamp,
    k: usize,
    lambda: f64,
    table: Vec<JsonRow>,
}

fn reluctance(d: i64, k: usize) -> f64 {
    if k == 0 {
        0.0
    } else {
        d as f64 / k as f64
    }
}

impl PmfDocument {
    pub fn new(pmf: Pmf<f64>, seed: Option<u64>) -> Self {
        Self {
            stamp: Stamp::new(seed),
            pmf,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.stamp.csv_preamble();
        out.push_str("k,d,r,lambda,p\n");
        let k = self.pmf.k();
        let lambda = fmt17(self.pmf.lambda());
        for (d, p) in self.pmf.iter() {
            out.push_str(&format!("{k},{d},{},{lambda},{}\n", fmt17(reluctance(d, k)), fmt17(p)));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let (stamp, body) = Stamp::split_csv(text)?;
        let mut reader = csv::Reader::from_reader(body.as_bytes());
        let headers = reader.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["k", "d", "r", "lambda", "p"] {
            return Err(WalkError::Parse(format!("unexpected pmf header {headers:?}")));
        }
        let mut k = None;
        let mut lambda = None;
        let mut entries = Vec::new();
        for record in reader.records() {
            let record = record?;
            let rk: usize = record[0]
                .parse()
                .map_err(|e| WalkError::Parse(format!("k: {e}")))?;
            let d: i64 = record[1]
                .parse()
                .map_err(|e| WalkError::Parse(format!("d: {e}")))?;
            let rl = parse_f64(&record[3])?;
            if *k.get_or_insert(rk) != rk || lambda.get_or_insert(rl).to_bits() != rl.to_bits() {
                return Err(WalkError::Parse("k and lambda must be constant across rows".into()));
            }
            entries.push((d, parse_f64(&record[4])?));
        }
        let (k, lambda) = k
            .zip(lambda)
            .ok_or_else(|| WalkError::Parse("pmf table has no rows".into()))?;
        Ok(Self {
            stamp,
            pmf: Pmf::from_table(k, lambda, entries),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let k = self.pmf.k();
        let doc = JsonPmf {
            stamp: self.stamp.clone(),
            k,
            lambda: self.pmf.lambda(),
            table: self
                .pmf
                .iter()
                .map(|(d, p)| JsonRow {
                    d,
                    r: reluctance(d, k),
                    p,
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: JsonPmf = serde_json::from_str(text)?;
        Ok(Self {
            stamp: doc.stamp,
            pmf: Pmf::from_table(doc.k, doc.lambda, doc.table.into_iter().map(|r| (r.d, r.p)).collect()),
        })
    }
}
