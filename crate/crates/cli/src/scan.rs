//! Grid scan over `(p, m)`: one exact determinant per cell by all three
//! methods, computed in parallel and emitted in sorted order.

use std::io::Write;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use maillet_core::exact_linalg::{det_bareiss, det_modular_crt};
use maillet_core::matrices::build_a;
use maillet_core::spectral::det_spectral_exact;
use maillet_core::verify::digits;
use maillet_core::{EntryVector, OddPrime, PrimitiveRoot};

pub const CSV_HEADER: &str = "p,m,det_is_zero,det_digits,mod4_ok,modp_ok,methods_agree,primitive_used,elapsed_ms";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub p: u64,
    pub m: u32,
    pub det_is_zero: bool,
    pub det_digits: usize,
    /// `det = 0 mod 4`; vacuously true for `p = 3`, where it is not claimed.
    pub mod4_ok: bool,
    pub modp_ok: bool,
    pub methods_agree: bool,
    pub primitive_used: u64,
    pub elapsed_ms: u64,
}

impl ScanRecord {
    /// A vanishing determinant with `m >= 2`.
    pub fn is_counterexample(&self) -> bool {
        self.det_is_zero && self.m >= 2
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.p,
            self.m,
            self.det_is_zero,
            self.det_digits,
            self.mod4_ok,
            self.modp_ok,
            self.methods_agree,
            self.primitive_used,
            self.elapsed_ms
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub p_min: u64,
    pub p_max: u64,
    pub m_min: u32,
    pub m_max: u32,
    pub jobs: usize,
    pub timings: bool,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.m_min < 1 {
            return Err("--m-min must be at least 1".into());
        }
        if self.m_min > self.m_max {
            return Err(format!("--m-min {} exceeds --m-max {}", self.m_min, self.m_max));
        }
        if self.p_max < 3 || self.p_min > self.p_max {
            return Err(format!("empty prime range {}..={}", self.p_min, self.p_max));
        }
        if self.jobs == 0 {
            return Err("--jobs must be at least 1".into());
        }
        Ok(())
    }

    /// Cells sorted by `p`, then `m`.
    pub fn cells(&self) -> Vec<(OddPrime, u32)> {
        OddPrime::up_to(self.p_max)
            .into_iter()
            .filter(|p| p.get() >= self.p_min)
            .flat_map(|p| (self.m_min..=self.m_max).map(move |m| (p, m)))
            .collect()
    }
}

pub fn scan_cell(p: OddPrime, m: u32, timings: bool) -> ScanRecord {
    let start = Instant::now();
    let h = PrimitiveRoot::smallest(p);
    let a = build_a(p, m).expect("m >= 1");
    let bareiss = det_bareiss(&a).expect("square");
    let crt = det_modular_crt(&a).expect("square");
    let spectral = det_spectral_exact(&EntryVector::powers(p, m), h).expect("length p - 1");
    let methods_agree = bareiss == crt && bareiss == spectral;
    let elapsed_ms = if timings {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    ScanRecord {
        p: p.get(),
        m,
        det_is_zero: bareiss.is_zero(),
        det_digits: digits(&bareiss),
        mod4_ok: p.get() == 3 || (&bareiss % 4u32).is_zero(),
        modp_ok: (&bareiss % p.get()).is_zero(),
        methods_agree,
        primitive_used: h.value(),
        elapsed_ms,
    }
}

/// Runs every cell on a pool of `config.jobs` threads; results come back in
/// cell order whatever the thread count.
pub fn run_scan(config: &ScanConfig) -> Result<Vec<ScanRecord>, String> {
    config.validate()?;
    let cells = config.cells();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| e.to_string())?;
    Ok(pool.install(|| {
        cells
            .par_iter()
            .map(|&(p, m)| scan_cell(p, m, config.timings))
            .collect()
    }))
}

pub fn write_records(out: &mut impl Write, records: &[ScanRecord], format: ScanFormat) -> std::io::Result<()> {
    match format {
        ScanFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                writeln!(out, "{}", r.to_csv())?;
            }
        }
        ScanFormat::Jsonl => {
            for r in records {
                writeln!(out, "{}", serde_json::to_string(r).expect("record serializes"))?;
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSummary {
    pub cells: usize,
    pub counterexamples: Vec<(u64, u32)>,
    pub disagreements: Vec<(u64, u32)>,
}

impl ScanSummary {
    pub fn of(records: &[ScanRecord]) -> Self {
        ScanSummary {
            cells: records.len(),
            counterexamples: records
                .iter()
                .filter(|r| r.is_counterexample())
                .map(|r| (r.p, r.m))
                .collect(),
            disagreements: records
                .iter()
                .filter(|r| !r.methods_agree)
                .map(|r| (r.p, r.m))
                .collect(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty() && self.disagreements.is_empty()
    }

    pub fn line(&self) -> String {
        let list = |v: &[(u64, u32)]| {
            if v.is_empty() {
                "none".to_owned()
            } else {
                v.iter().map(|(p, m)| format!("(p={p},m={m})")).collect::<Vec<_>>().join(" ")
            }
        };
        format!(
            "scanned {} cells; counterexamples (det = 0, m >= 2): {}; method disagreements: {}",
            self.cells,
            list(&self.counterexamples),
            list(&self.disagreements)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(p_max: u64, m_min: u32, m_max: u32, jobs: usize) -> ScanConfig {
        ScanConfig {
            p_min: 3,
            p_max,
            m_min,
            m_max,
            jobs,
            timings: false,
        }
    }

    #[test]
    fn small_grid() {
        let records = run_scan(&config(13, 1, 3, 2)).unwrap();
        assert_eq!(records.len(), 5 * 3);
        for r in &records {
            assert!(r.methods_agree && r.modp_ok && r.mod4_ok);
            assert_eq!(r.det_is_zero, r.m == 1 && r.p >= 5, "{r:?}");
            assert!(!r.is_counterexample());
        }
        let first = &records[0];
        assert_eq!((first.p, first.m, first.det_digits, first.primitive_used), (3, 1, 1, 2));
    }

    #[test]
    fn ordering_independent_of_jobs() {
        let a = run_scan(&config(19, 2, 4, 1)).unwrap();
        let b = run_scan(&config(19, 2, 4, 3)).unwrap();
        assert_eq!(a, b);
        let mut buf_a = Vec::new();
        let mut buf_b = Vec::new();
        write_records(&mut buf_a, &a, ScanFormat::Csv).unwrap();
        write_records(&mut buf_b, &b, ScanFormat::Csv).unwrap();
        assert_eq!(buf_a, buf_b);
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(config(13, 0, 3, 1).validate().is_err());
        assert!(config(13, 4, 3, 1).validate().is_err());
        assert!(config(2, 1, 3, 1).validate().is_err());
        assert!(config(13, 1, 3, 0).validate().is_err());
    }

    #[test]
    fn summary_flags_counterexamples() {
        let mut r = scan_cell(OddPrime::new(5).unwrap(), 2, false);
        assert!(ScanSummary::of(&[r.clone()]).is_clean());
        r.det_is_zero = true;
        let s = ScanSummary::of(&[r]);
        assert_eq!(s.counterexamples, vec![(5, 2)]);
        assert!(s.line().contains("(p=5,m=2)"));
    }

    #[test]
    fn jsonl_record_fields() {
        let r = scan_cell(OddPrime::new(7).unwrap(), 2, false);
        let mut buf = Vec::new();
        write_records(&mut buf, &[r], ScanFormat::Jsonl).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        let header: Vec<&str> = CSV_HEADER.split(',').collect();
        let mut sorted = header.clone();
        sorted.sort_unstable();
        let mut k = keys.clone();
        k.sort_unstable();
        assert_eq!(k, sorted);
    }
}
