use std::io::{self, Write};

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::matrix::{big_ln, word_counts, TransitionMatrix};
use crate::numfmt::{sig15, LogBase};

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub k: usize,
    pub wk: BigUint,
    /// `ln w(k) / k`.
    pub log_growth: f64,
    /// `ln(w(k+1) / w(k))`.
    pub ratio: f64,
    /// `ln w(k + n0) / k`, present after [`ConvergenceReport::with_witness`].
    pub witness: Option<f64>,
}

/// Word-growth estimates of the entropy, ordered by `k`. Values are in nats.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// `ln r(A)` when `A` is irreducible.
    pub target: Option<f64>,
    pub n0: Option<usize>,
}

impl ConvergenceReport {
    /// Add the column `ln w(n + n0) / n` of witness dimensions, with `n = k`.
    pub fn with_witness(mut self, a: &TransitionMatrix, n0: usize) -> Self {
        assert!(n0 >= 1, "n0 must be positive");
        let k_max = self.rows.last().map_or(0, |r| r.k);
        let counts = word_counts(a, k_max + n0);
        for row in &mut self.rows {
            row.witness = Some(big_ln(&counts[row.k + n0 - 1]) / row.k as f64);
        }
        self.n0 = Some(n0);
        self
    }

    fn header(&self) -> Vec<&'static str> {
        let mut h = vec!["k", "w_k", "eq3", "ratio"];
        if self.n0.is_some() {
            h.push("witness");
        }
        h
    }

    fn cells(&self, row: &ConvergenceRow, base: LogBase) -> Vec<String> {
        let mut c = vec![
            row.k.to_string(),
            row.wk.to_string(),
            sig15(base.convert(row.log_growth)),
            sig15(base.convert(row.ratio)),
        ];
        if let Some(w) = row.witness {
            c.push(sig15(base.convert(w)));
        }
        c
    }

    /// Comma-separated table with a header line.
    pub fn write_csv<W: Write>(&self, mut out: W, base: LogBase) -> io::Result<()> {
        writeln!(out, "{}", self.header().join(","))?;
        for row in &self.rows {
            writeln!(out, "{}", self.cells(row, base).join(","))?;
        }
        Ok(())
    }

    pub fn to_csv(&self, base: LogBase) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, base).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii")
    }

    pub fn to_json(&self, base: LogBase) -> Value {
        let header = self.header();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, Value> =
                    header.iter().zip(self.cells(row, base)).map(|(h, c)| (h.to_string(), Value::String(c))).collect();
                Value::Object(obj)
            })
            .collect();
        json!({
            "base": base.to_string(),
            "target": self.target.map(|t| sig15(base.convert(t))),
            "n0": self.n0,
            "rows": rows,
        })
    }
}
