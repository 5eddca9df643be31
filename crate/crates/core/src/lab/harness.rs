//! Batch runs of the extraction pipelines over generated graphs, tabulated
//! as CSV.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::generate::{generate, GeneratorSpec};
use crate::certificate::verify;
use crate::error::Result;
use crate::profile::ConstantsProfile;
use crate::rational;
use crate::round2::{eh_extract, polynomial_rodl};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pipeline {
    /// [`polynomial_rodl`] at `ε = 1/4`.
    Rodl,
    /// [`eh_extract`].
    Eh,
}

impl Pipeline {
    pub fn as_str(self) -> &'static str {
        match self {
            Pipeline::Rodl => "rodl",
            Pipeline::Eh => "eh",
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pipeline {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rodl" => Ok(Pipeline::Rodl),
            "eh" => Ok(Pipeline::Eh),
            _ => Err(format!("unknown pipeline `{s}` (rodl, eh)")),
        }
    }
}

/// One CSV row. Summary rows carry `summary-median` or `summary-min` as
/// their id and an empty `n`, `seed` and `set_size`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub instance_id: String,
    pub family: String,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub pipeline: String,
    pub result_kind: String,
    pub set_size: Option<usize>,
    /// `ln |S| / ln n`, six decimal places.
    pub exponent: String,
    pub certificate_ok: u8,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub rows: Vec<Row>,
    /// Exponents of the instance rows, in instance order.
    pub exponents: Vec<f64>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).expect("in-memory CSV write");
        }
        String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
    }

    pub fn min_exponent(&self) -> Option<f64> {
        self.exponents.iter().copied().reduce(f64::min)
    }

    pub fn median_exponent(&self) -> Option<f64> {
        let mut v = self.exponents.clone();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        let m = v.len() / 2;
        Some(if v.len() % 2 == 1 { v[m] } else { (v[m - 1] + v[m]) / 2.0 })
    }
}

#[derive(Debug, Clone)]
pub struct HarnessOptions {
    pub pipeline: Pipeline,
    pub profile: ConstantsProfile,
    /// Record wall-clock milliseconds; off, the column is 0 and the CSV is
    /// byte-for-byte reproducible.
    pub timing: bool,
}

fn exponent(size: usize, n: usize) -> f64 {
    if n <= 1 {
        1.0
    } else {
        (size.max(1) as f64).ln() / (n as f64).ln()
    }
}

fn run_one(index: usize, spec: &GeneratorSpec, opts: &HarnessOptions) -> Result<(Row, f64)> {
    let g = generate(spec)?;
    let start = Instant::now();
    let (kind, size, ok) = match opts.pipeline {
        Pipeline::Rodl => {
            let r = polynomial_rodl(&g, &rational::ratio(1, 4), &opts.profile, spec.seed)?;
            let ok = verify(&r.certificate(&opts.profile), &g).is_ok_and(|v| v.accepted());
            (format!("restricted-{}", r.side.as_str()), r.set.len(), ok)
        }
        Pipeline::Eh => {
            let r = eh_extract(&g, &opts.profile, spec.seed)?;
            let ok = verify(&r.certificate(&opts.profile), &g).is_ok_and(|v| v.accepted());
            (r.kind.as_str().to_string(), r.set.len(), ok)
        }
    };
    let millis = if opts.timing { start.elapsed().as_millis() as u64 } else { 0 };
    let e = exponent(size, g.n());
    let row = Row {
        instance_id: index.to_string(),
        family: spec.label(),
        n: Some(g.n()),
        seed: Some(spec.seed),
        pipeline: opts.pipeline.to_string(),
        result_kind: kind,
        set_size: Some(size),
        exponent: format!("{e:.6}"),
        certificate_ok: ok as u8,
        millis,
    };
    Ok((row, e))
}

/// Generates and runs every instance on the rayon pool; rows come out in
/// instance order whatever the completion order, followed by the two
/// summary rows. The first failing instance aborts the batch.
pub fn exponent_harness(specs: &[GeneratorSpec], opts: &HarnessOptions) -> Result<Table> {
    let results: Vec<(Row, f64)> =
        specs.par_iter().enumerate().map(|(i, spec)| run_one(i, spec, opts)).collect::<Result<_>>()?;
    let (mut rows, exponents): (Vec<Row>, Vec<f64>) = results.into_iter().unzip();
    let mut table = Table { rows: Vec::new(), exponents };
    let summary = |id: &str, value: Option<f64>| Row {
        instance_id: id.into(),
        family: "all".into(),
        n: None,
        seed: None,
        pipeline: opts.pipeline.to_string(),
        result_kind: "summary".into(),
        set_size: None,
        exponent: value.map_or_else(String::new, |v| format!("{v:.6}")),
        certificate_ok: rows.iter().all(|r| r.certificate_ok == 1) as u8,
        millis: rows.iter().map(|r| r.millis).sum(),
    };
    let median = summary("summary-median", table.median_exponent());
    let min = summary("summary-min", table.min_exponent());
    rows.push(median);
    rows.push(min);
    table.rows = rows;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::Family;

    fn opts(pipeline: Pipeline) -> HarnessOptions {
        HarnessOptions {
            pipeline,
            profile: ConstantsProfile::demo_small(),
            timing: false,
        }
    }

    #[test]
    fn rows_in_order_and_reproducible() {
        let specs: Vec<_> = (0..6).map(|i| GeneratorSpec::new(Family::Cograph, 20 + 5 * i, i as u64)).collect();
        let a = exponent_harness(&specs, &opts(Pipeline::Eh)).unwrap();
        let b = exponent_harness(&specs, &opts(Pipeline::Eh)).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        let ids: Vec<_> = a.rows.iter().map(|r| r.instance_id.as_str()).collect();
        assert_eq!(ids, ["0", "1", "2", "3", "4", "5", "summary-median", "summary-min"]);
        assert!(a.rows.iter().all(|r| r.certificate_ok == 1));
        assert!(a.min_exponent().unwrap() >= 0.5);
        assert!(a.to_csv().starts_with(
            "instance_id,family,n,seed,pipeline,result_kind,set_size,exponent,certificate_ok,millis\n"
        ));
    }

    #[test]
    fn median_of_even_count() {
        let t = Table {
            rows: Vec::new(),
            exponents: vec![0.2, 0.8, 0.4, 0.6],
        };
        assert_eq!(t.median_exponent(), Some(0.5));
        assert_eq!(t.min_exponent(), Some(0.2));
    }
}
