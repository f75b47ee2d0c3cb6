//! Weight-grid scans with an append-only journal.
//!
//! Grid syntax: descriptor alternatives separated by `|`; inside each, any
//! pairing may be an inclusive integer range `a..b`. `verma:-3..3` expands
//! to seven descriptors, `irr:0..1,2|verma:1/2,0` to three.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Mutex;

use anyhow::{Context as _, Result};
use rayon::prelude::*;

use crate::case::{split_descriptor, Case, Descriptor};
use hwtensor::tensor::{Conclusion, TensorProduct};
use hwtensor::CartanType;

pub const HEADER: [&str; 4] = ["v", "z", "conclusion", "defect_drop"];

fn expand_coord(c: &str) -> Result<Vec<String>> {
    let c = c.trim();
    match c.split_once("..") {
        Some((a, b)) => {
            let a: i64 = a
                .trim()
                .parse()
                .with_context(|| format!("invalid range start in `{c}`"))?;
            let b: i64 = b
                .trim()
                .parse()
                .with_context(|| format!("invalid range end in `{c}`"))?;
            Ok((a..=b).map(|x| x.to_string()).collect())
        }
        None => Ok(vec![c.to_string()]),
    }
}

/// All descriptors named by a grid expression, in row-major order.
pub fn expand_grid(expr: &str) -> Result<Vec<Descriptor>> {
    let mut out = Vec::new();
    for alt in expr.split('|').map(str::trim).filter(|s| !s.is_empty()) {
        let (kind, coords) = split_descriptor(alt)?;
        let mut combos = vec![String::new()];
        for c in coords.split(',') {
            let vals = expand_coord(c)?;
            combos = combos
                .iter()
                .flat_map(|p| {
                    vals.iter()
                        .map(move |v| if p.is_empty() { v.clone() } else { format!("{p},{v}") })
                })
                .collect();
        }
        for c in combos {
            out.push(format!("{kind}:{c}").parse()?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub v: String,
    pub z: String,
    pub conclusion: String,
    pub defect_drop: String,
}

impl Row {
    fn key(&self) -> (String, String) {
        (self.v.clone(), self.z.clone())
    }

    fn fields(&self) -> [&str; 4] {
        [&self.v, &self.z, &self.conclusion, &self.defect_drop]
    }
}

fn evaluate(datum: CartanType, v: &Descriptor, z: &Descriptor, height: u32) -> Result<Row> {
    let case = Case::new(datum, v.clone(), z.clone(), Some(height))?;
    let ctx = case.context()?;
    let vm = case.v.build(&ctx, height)?;
    let zm = case.z.build(&ctx, height)?;
    let verdict = TensorProduct::new(&vm, &zm, height)?.verdict(false)?;
    Ok(Row {
        v: v.to_string(),
        z: z.to_string(),
        conclusion: verdict.conclusion.to_string(),
        defect_drop: match &verdict.conclusion {
            Conclusion::DefectAt(d) => d.to_string(),
            Conclusion::CompletelyReducibleUpTo(_) => String::new(),
        },
    })
}

fn read_journal(path: &Path) -> Result<BTreeMap<(String, String), Row>> {
    let mut rows = BTreeMap::new();
    if !path.exists() {
        return Ok(rows);
    }
    let f = File::open(path).with_context(|| format!("cannot open journal {}", path.display()))?;
    for line in BufReader::new(f).lines() {
        let line = line?;
        let parts: Vec<&str> = line.split('\t').collect();
        // a torn final line from an interrupted run is dropped and recomputed
        if parts.len() != 4 {
            continue;
        }
        let row = Row {
            v: parts[0].into(),
            z: parts[1].into(),
            conclusion: parts[2].into(),
            defect_drop: parts[3].into(),
        };
        rows.insert(row.key(), row);
    }
    Ok(rows)
}

/// One verdict per grid pair (V outer, Z inner), reusing journaled rows and
/// journaling each new one as soon as it is computed.
pub fn run(datum: CartanType, v_grid: &str, z_grid: &str, height: u32, journal: Option<&Path>) -> Result<Vec<Row>> {
    let vs = expand_grid(v_grid)?;
    let zs = expand_grid(z_grid)?;
    let pairs: Vec<(Descriptor, Descriptor)> = vs
        .iter()
        .flat_map(|v| zs.iter().map(move |z| (v.clone(), z.clone())))
        .collect();
    let done = match journal {
        Some(p) => read_journal(p)?,
        None => BTreeMap::new(),
    };
    let sink = match journal {
        Some(p) => {
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
                .with_context(|| format!("cannot open journal {}", p.display()))?;
            // finish any torn line so appended rows start cleanly
            if p.metadata()?.len() > 0 && !std::fs::read(p)?.ends_with(b"\n") {
                f.write_all(b"\n")?;
            }
            Some(Mutex::new(f))
        }
        None => None,
    };
    pairs
        .par_iter()
        .map(|(v, z)| {
            if let Some(row) = done.get(&(v.to_string(), z.to_string())) {
                return Ok(row.clone());
            }
            let row = evaluate(datum, v, z, height).with_context(|| format!("case v={v} z={z}"))?;
            if let Some(f) = &sink {
                let mut f = f.lock().expect("journal lock");
                writeln!(f, "{}", row.fields().join("\t"))?;
                f.flush()?;
            }
            Ok(row)
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_expansion() {
        let g: Vec<String> = expand_grid("verma:-1..1")
            .unwrap()
            .iter()
            .map(|d| d.to_string())
            .collect();
        assert_eq!(g, ["verma:-1", "verma:0", "verma:1"]);
        let g: Vec<String> = expand_grid("irr:0..1,2|verma:1/2,0")
            .unwrap()
            .iter()
            .map(|d| d.to_string())
            .collect();
        assert_eq!(g, ["irr:0,2", "irr:1,2", "verma:1/2,0"]);
        assert!(expand_grid("verma:3..2").unwrap().is_empty());
        assert!(expand_grid("").unwrap().is_empty());
        assert!(expand_grid("verma:a..2").is_err());
    }

    #[test]
    fn journal_replay_is_idempotent() {
        let dir = tempfile::tempdir().unwrap();
        let j = dir.path().join("scan.journal");
        let first = run(CartanType::A1, "irr:1", "verma:-2..0", 3, Some(&j)).unwrap();
        let lines = std::fs::read_to_string(&j).unwrap().lines().count();
        assert_eq!(lines, 3);
        let second = run(CartanType::A1, "irr:1", "verma:-2..0", 3, Some(&j)).unwrap();
        assert_eq!(first, second);
        assert_eq!(std::fs::read_to_string(&j).unwrap().lines().count(), 3);
    }
}
