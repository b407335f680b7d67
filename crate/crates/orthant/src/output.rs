//! CSV layouts for breakpoint tables, sampled trajectories and oracle fits.
//!
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so a table written and read again is bit-for-bit identical.

use std::io::{Read, Write};

use orthant_core::oracle::OrthantFit;
use orthant_core::{GramMask, RegPath};

use crate::error::{Error, Result};

fn num(v: f64) -> String {
    // Folds −0 into 0.
    format!("{:?}", v + 0.0)
}

fn beta_headers(p: usize) -> impl Iterator<Item = String> {
    (1..=p).map(|j| format!("beta_{j}"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BreakpointRow {
    pub lambda: f64,
    pub beta: Vec<f64>,
    pub criterion: f64,
}

/// Breakpoints in order of strictly increasing `λ`, at least two of them.
#[derive(Debug, Clone, PartialEq)]
pub struct BreakpointTable {
    rows: Vec<BreakpointRow>,
}

impl BreakpointTable {
    pub fn new(rows: Vec<BreakpointRow>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Shape(format!("a breakpoint table needs at least 2 rows, found {}", rows.len())));
        }
        let p = rows[0].beta.len();
        if rows.iter().any(|r| r.beta.len() != p) {
            return Err(Error::Shape("breakpoint rows differ in length".into()));
        }
        if rows.windows(2).any(|w| !(w[0].lambda < w[1].lambda)) {
            return Err(Error::Shape("breakpoint lambdas must be strictly increasing".into()));
        }
        Ok(BreakpointTable { rows })
    }

    pub fn from_path(path: &RegPath) -> Self {
        BreakpointTable {
            rows: path
                .breakpoints()
                .iter()
                .map(|b| BreakpointRow { lambda: b.lambda, beta: b.beta.clone(), criterion: b.criterion })
                .collect(),
        }
    }

    pub fn rows(&self) -> &[BreakpointRow] {
        &self.rows
    }

    pub fn p(&self) -> usize {
        self.rows[0].beta.len()
    }

    /// Header `lambda,beta_1,...,beta_p,criterion`.
    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(
            std::iter::once("lambda".to_string()).chain(beta_headers(self.p())).chain(["criterion".into()]),
        )?;
        for r in &self.rows {
            w.write_record(
                std::iter::once(num(r.lambda)).chain(r.beta.iter().map(|&b| num(b))).chain([num(r.criterion)]),
            )?;
        }
        w.flush().map_err(|e| Error::io("output", e))
    }

    pub fn read<R: Read>(input: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(input);
        let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        let p = header.len().saturating_sub(2);
        let want: Vec<String> =
            std::iter::once("lambda".to_string()).chain(beta_headers(p)).chain(["criterion".into()]).collect();
        if header.len() < 3 || header != want {
            return Err(Error::Shape(format!("unexpected breakpoint header {}", header.join(","))));
        }
        let mut rows = Vec::new();
        for (k, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let vals = rec
                .iter()
                .enumerate()
                .map(|(c, s)| {
                    s.parse::<f64>().map_err(|_| Error::Parse {
                        row: k + 2,
                        col: c + 1,
                        message: format!("{s:?} is not a number"),
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            rows.push(BreakpointRow { lambda: vals[0], beta: vals[1..=p].to_vec(), criterion: vals[p + 1] });
        }
        Self::new(rows)
    }
}

/// Long format `lambda,coef_index,value,orthant`, `samples` evenly spaced
/// points per segment with both endpoints, each evaluated with its
/// segment's orthant formula. Coefficient indices are 1-based.
pub fn write_trajectory<W: Write>(path: &RegPath, gm: &GramMask, samples: usize, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["lambda", "coef_index", "value", "orthant"])?;
    let orthants: Vec<String> = path.breakpoints().iter().map(|b| b.segment_orthant.to_string()).collect();
    for (k, lambda, beta) in path.sample_segments(gm, samples)? {
        for (j, b) in beta.iter().enumerate() {
            w.write_record([num(lambda), (j + 1).to_string(), num(*b), orthants[k].clone()])?;
        }
    }
    w.flush().map_err(|e| Error::io("trajectory output", e))
}

/// Header `lambda,orthant,beta_1,...,beta_p,criterion`, one row per fit.
pub fn write_oracle<W: Write>(fits: &[OrthantFit], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let p = fits.first().map_or(0, |f| f.beta.len());
    w.write_record(
        ["lambda".to_string(), "orthant".into()].into_iter().chain(beta_headers(p)).chain(["criterion".into()]),
    )?;
    for f in fits {
        w.write_record(
            [num(f.lambda), f.orthant.to_string()]
                .into_iter()
                .chain(f.beta.iter().map(|&b| num(b)))
                .chain([num(f.criterion)]),
        )?;
    }
    w.flush().map_err(|e| Error::io("output", e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(lambda: f64, beta: &[f64], criterion: f64) -> BreakpointRow {
        BreakpointRow { lambda, beta: beta.to_vec(), criterion }
    }

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.1142857142857143, 14.0, f64::MIN_POSITIVE] {
            assert_eq!(num(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
        assert_eq!(num(-0.0), "0.0");
    }

    #[test]
    fn table_invariants() {
        assert!(BreakpointTable::new(vec![row(0.0, &[1.0], 1.0)]).is_err());
        assert!(BreakpointTable::new(vec![row(1.0, &[1.0], 1.0), row(1.0, &[0.0], 2.0)]).is_err());
        assert!(BreakpointTable::new(vec![row(0.0, &[1.0], 1.0), row(1.0, &[0.0, 0.0], 2.0)]).is_err());
    }

    #[test]
    fn write_then_read() {
        let t =
            BreakpointTable::new(vec![row(0.0, &[0.1, -2.0 / 3.0], 0.8428571428571429), row(14.0, &[0.0, 0.0], 7.0)])
                .unwrap();
        let mut buf = Vec::new();
        t.write(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("lambda,beta_1,beta_2,criterion\n"));
        assert_eq!(BreakpointTable::read(buf.as_slice()).unwrap(), t);
    }

    #[test]
    fn read_rejects_foreign_header() {
        assert!(BreakpointTable::read("l,b,c\n0,1,2\n1,0,3\n".as_bytes()).is_err());
    }
}
