//! Volumes of every two-bridge knot up to a given `p`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use twobridge::knotparams::cf_positive;
use twobridge::volume::{volume_with, VolumeConfig};
use twobridge::{make_params, BridgeParams};

use crate::{fixed12, CliError};

/// Environment variable capping the number of worker threads.
pub const THREADS_VAR: &str = "TWOBRIDGE_THREADS";

pub const CSV_HEADER: [&str; 6] = ["p", "q", "ratio", "volume", "cf_len", "ell"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub p: u64,
    pub q: u64,
    pub ratio: f64,
    pub volume: f64,
    pub cf_len: usize,
    pub ell: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Valid `(p, q)` with `3 <= p <= pmax`, in `(p, q)` order.
pub fn valid_pairs(pmax: u64) -> Vec<BridgeParams> {
    (3..=pmax as i64)
        .step_by(2)
        .flat_map(|p| (1..p).step_by(2).map(move |q| (p, q)))
        .filter_map(|(p, q)| make_params(p, q).ok())
        .collect()
}

fn record(params: &BridgeParams, cfg: &VolumeConfig) -> Result<ScanRecord, CliError> {
    let (p, q) = (params.p(), params.q());
    let v = volume_with(params, cfg)?;
    Ok(ScanRecord {
        p,
        q,
        ratio: q as f64 / p as f64,
        volume: v.volume,
        cf_len: cf_positive(p as i64, q as i64)?.len(),
        ell: params.ell(),
    })
}

fn thread_limit() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Invalid(format!(
                "{THREADS_VAR} must be a positive integer, got {s:?}"
            ))),
        },
    }
}

pub fn scan(pmax: u64) -> Result<Vec<ScanRecord>, CliError> {
    scan_with(pmax, &VolumeConfig::default())
}

/// One record per valid pair, computed in parallel and returned sorted.
pub fn scan_with(pmax: u64, cfg: &VolumeConfig) -> Result<Vec<ScanRecord>, CliError> {
    if pmax < 3 {
        return Err(CliError::Invalid(format!(
            "pmax must be at least 3, got {pmax}"
        )));
    }
    let pairs = valid_pairs(pmax);
    let run = || {
        pairs
            .par_iter()
            .map(|prm| record(prm, cfg))
            .collect::<Result<Vec<_>, _>>()
    };
    let records = match thread_limit()? {
        None => run(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Computation(e.to_string()))?
            .install(run),
    }?;
    // par_iter().collect() keeps input order, which is already (p, q) order
    Ok(records)
}

pub fn to_csv(records: &[ScanRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in records {
        w.write_record([
            r.p.to_string(),
            r.q.to_string(),
            fixed12(r.ratio),
            fixed12(r.volume),
            r.cf_len.to_string(),
            r.ell.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn from_csv(text: &str) -> Result<Vec<ScanRecord>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect()
}

pub fn to_json(records: &[ScanRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn render(records: &[ScanRecord], format: Format) -> String {
    match format {
        Format::Csv => to_csv(records),
        Format::Json => to_json(records),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmax_five_rows() {
        let records = scan(5).unwrap();
        let pairs: Vec<_> = records.iter().map(|r| (r.p, r.q)).collect();
        assert_eq!(pairs, vec![(3, 1), (5, 1), (5, 3)]);
        assert_eq!(records[0].volume, 0.0);
        assert_eq!(fixed12(records[2].volume), "2.029883212819");
    }

    #[test]
    fn csv_round_trip_at_printed_precision() {
        let records = scan(11).unwrap();
        let text = to_csv(&records);
        assert!(text.starts_with("p,q,ratio,volume,cf_len,ell\n"));
        assert!(
            text.contains("\n7,3,0.428571428571,2.828122088331,2,9\n"),
            "{text}"
        );
        let parsed = from_csv(&text).unwrap();
        assert_eq!(parsed.len(), records.len());
        assert_eq!(to_csv(&parsed), text);
        for (a, b) in parsed.iter().zip(&records) {
            assert_eq!(fixed12(a.volume), fixed12(b.volume));
            assert_eq!((a.p, a.q, a.cf_len, a.ell), (b.p, b.q, b.cf_len, b.ell));
        }
    }

    #[test]
    fn rejects_small_pmax() {
        assert_eq!(scan(2).unwrap_err().exit_code(), 2);
    }
}
