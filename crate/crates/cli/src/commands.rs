use std::fs;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::json;

use maillet_core::exact_linalg::{det_bareiss, det_modular_crt};
use maillet_core::matrices::{build_a, build_a_c};
use maillet_core::spectral::{det_spectral_exact, spectrum};
use maillet_core::verify::{self, DEFAULT_SEED};
use maillet_core::wavelet::{check_tau_order, TauVerdict};
use maillet_core::{EntryVector, ExactMatrix, OddPrime, PrimitiveRoot};

use crate::args::{
    Command, DetArgs, DetMethod, EntrySource, MailletArgs, MatrixArgs, MatrixFormat, OutFormat,
    ScanArgs, SpectrumArgs, VerifyArgs, WaveletArgs,
};
use crate::scan::{run_scan, write_records, ScanConfig, ScanFormat, ScanSummary};
use crate::{CliError, EXIT_FAILURE, EXIT_OK};

type CmdResult = Result<u8, CliError>;

/// Environment variable holding the verifier's PRNG seed.
pub const SEED_ENV: &str = "MAILLET_SEED";

pub fn dispatch(command: Command, out: &mut impl Write) -> CmdResult {
    match command {
        Command::Matrix(a) => cmd_matrix(a, out),
        Command::Det(a) => cmd_det(a, out),
        Command::Spectrum(a) => cmd_spectrum(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Scan(a) => cmd_scan(a, out),
        Command::Maillet(a) => cmd_maillet(a, out),
        Command::Wavelet(a) => cmd_wavelet(a, out),
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Failed(format!("write failed: {e}"))
}

fn prime(p: u64) -> Result<OddPrime, CliError> {
    Ok(OddPrime::new(p)?)
}

fn exponent(m: u32) -> Result<u32, CliError> {
    if m == 0 {
        Err(CliError::Usage("m must be at least 1".into()))
    } else {
        Ok(m)
    }
}

fn primitive(p: OddPrime, h: Option<u64>) -> Result<PrimitiveRoot, CliError> {
    match h {
        Some(h) => Ok(PrimitiveRoot::new(h, p)?),
        None => Ok(PrimitiveRoot::smallest(p)),
    }
}

/// One integer per line, exactly `p - 1` lines; trailing blank lines are ignored.
pub fn read_c_file(path: &Path, p: OddPrime) -> Result<EntryVector, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let lines: Vec<&str> = text.trim_end().lines().collect();
    let values = lines
        .iter()
        .enumerate()
        .map(|(i, line)| {
            line.trim().parse::<BigInt>().map_err(|_| {
                CliError::Usage(format!("{}:{}: not an integer: {line:?}", path.display(), i + 1))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    EntryVector::new(p, values).map_err(|_| {
        CliError::Usage(format!(
            "{}: expected exactly {} lines, found {}",
            path.display(),
            p.order(),
            lines.len()
        ))
    })
}

fn entries(p: OddPrime, source: &EntrySource) -> Result<(EntryVector, Option<u32>), CliError> {
    match (source.m, &source.c_file) {
        (Some(m), _) => Ok((EntryVector::powers(p, exponent(m)?), Some(m))),
        (None, Some(path)) => Ok((read_c_file(path, p)?, None)),
        (None, None) => Err(CliError::Usage("either -m or --c-file is required".into())),
    }
}

fn matrix_for(p: OddPrime, c: &EntryVector, m: Option<u32>) -> Result<ExactMatrix, CliError> {
    Ok(match m {
        Some(m) => build_a(p, m)?,
        None => build_a_c(p, c)?,
    })
}

fn cmd_matrix(args: MatrixArgs, out: &mut impl Write) -> CmdResult {
    let p = prime(args.p)?;
    let (c, m) = entries(p, &args.source)?;
    let a = matrix_for(p, &c, m)?;
    if args.json || args.format == MatrixFormat::Json {
        let doc = json!({ "p": p.get(), "m": m, "rows": a.to_string_rows() });
        writeln!(out, "{doc}").map_err(io)?;
    } else {
        write!(out, "{}", a.to_text()).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_det(args: DetArgs, out: &mut impl Write) -> CmdResult {
    let p = prime(args.p)?;
    let (c, m) = entries(p, &args.source)?;
    let h = primitive(p, args.h)?;
    let a = matrix_for(p, &c, m)?;
    let methods: &[DetMethod] = match args.method {
        DetMethod::All => &[DetMethod::Bareiss, DetMethod::Crt, DetMethod::Spectral],
        DetMethod::Bareiss => &[DetMethod::Bareiss],
        DetMethod::Crt => &[DetMethod::Crt],
        DetMethod::Spectral => &[DetMethod::Spectral],
    };
    let mut values = Vec::new();
    for &method in methods {
        let (name, v) = match method {
            DetMethod::Bareiss => ("bareiss", det_bareiss(&a)?),
            DetMethod::Crt => ("crt", det_modular_crt(&a)?),
            DetMethod::Spectral => ("spectral", det_spectral_exact(&c, h)?),
            DetMethod::All => unreachable!(),
        };
        values.push((name, v));
    }
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    if args.json {
        let methods: serde_json::Map<String, serde_json::Value> = values
            .iter()
            .map(|(n, v)| (n.to_string(), json!(v.to_string())))
            .collect();
        let doc = json!({
            "p": p.get(),
            "m": m,
            "h": h.value(),
            "det": values[0].1.to_string(),
            "methods": methods,
            "agree": agree,
        });
        writeln!(out, "{doc}").map_err(io)?;
    } else if agree {
        writeln!(out, "{}", values[0].1).map_err(io)?;
        if values.len() > 1 {
            let names: Vec<&str> = values.iter().map(|(n, _)| *n).collect();
            writeln!(out, "agree: {}", names.join(", ")).map_err(io)?;
        }
    } else {
        for (name, v) in &values {
            writeln!(out, "{name}: {v}").map_err(io)?;
        }
    }
    if agree {
        Ok(EXIT_OK)
    } else {
        Err(CliError::Failed("determinant methods disagree".into()))
    }
}

fn cmd_spectrum(args: SpectrumArgs, out: &mut impl Write) -> CmdResult {
    let p = prime(args.p)?;
    let (c, m) = entries(p, &args.source)?;
    let h = primitive(p, args.h)?;
    let spec = spectrum(&c, h)?;
    if args.json {
        let rows: Vec<_> = spec
            .eigenpairs
            .iter()
            .map(|e| {
                json!({
                    "l": e.ell,
                    "re": e.lambda.re,
                    "im": e.lambda.im,
                    "exactly_zero": e.exactly_zero,
                    "symmetry": e.symmetry,
                })
            })
            .collect();
        let doc = json!({ "p": p.get(), "m": m, "h": h.value(), "eigenvalues": rows });
        writeln!(out, "{doc}").map_err(io)?;
        return Ok(EXIT_OK);
    }
    let label = m.map_or_else(|| format!("c={}", verify::digest(&c)), |m| format!("m={m}"));
    writeln!(out, "# p={} {label} h={}", p, h).map_err(io)?;
    writeln!(out, "{:>4} {:>24} {:>24} {:>12} {:>10}", "l", "re", "im", "exactly_zero", "symmetry").map_err(io)?;
    for e in &spec.eigenpairs {
        // Exact zeros print as exact zeros, not as rounding noise.
        let (re, im) = if e.exactly_zero { (0.0, 0.0) } else { (e.lambda.re, e.lambda.im) };
        writeln!(
            out,
            "{:>4} {:>24.12e} {:>24.12e} {:>12} {:>10}",
            e.ell, re, im, e.exactly_zero, e.symmetry
        )
        .map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV} must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn cmd_verify(args: VerifyArgs, out: &mut impl Write) -> CmdResult {
    let p = prime(args.p)?;
    let h = primitive(p, args.h)?;
    if !(args.tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let report = match &args.general {
        Some(files) => {
            let c = read_c_file(&files[0], p)?;
            let c2 = read_c_file(&files[1], p)?;
            verify::verify_general(p, &c, &c2, h, args.tol)?
        }
        None => {
            let m = exponent(args.m.expect("required by clap"))?;
            verify::verify_all(p, m, h, args.tol, seed_from_env()?)?
        }
    };
    if args.json {
        writeln!(out, "{}", report.to_json()).map_err(io)?;
    } else {
        write!(out, "{}", report.to_text()).map_err(io)?;
    }
    Ok(if report.overall { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_scan(args: ScanArgs, out: &mut impl Write) -> CmdResult {
    let config = ScanConfig {
        p_min: args.p_min,
        p_max: args.p_max,
        m_min: args.m_min,
        m_max: args.m_max,
        jobs: args
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        timings: args.timings,
    };
    let records = run_scan(&config).map_err(CliError::Usage)?;
    let format = match args.out {
        OutFormat::Csv => ScanFormat::Csv,
        OutFormat::Jsonl => ScanFormat::Jsonl,
    };
    write_records(out, &records, format).map_err(io)?;
    out.flush().map_err(io)?;
    let summary = ScanSummary::of(&records);
    eprintln!("{}", summary.line());
    Ok(if summary.is_clean() { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_maillet(args: MailletArgs, out: &mut impl Write) -> CmdResult {
    let p = prime(args.p)?;
    let r = verify::maillet_determinant(p)?;
    let exponent = (p.get() - 3) / 2;
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&r).expect("serializes")).map_err(io)?;
    } else {
        writeln!(out, "{}", r.value).map_err(io)?;
        writeln!(out, "divisible by {p}^{exponent}: {}", r.divisible_by_p_power).map_err(io)?;
        writeln!(out, "nonzero: {}", r.nonzero).map_err(io)?;
        if let Some(k) = &r.quotient {
            writeln!(out, "quotient: {k}").map_err(io)?;
        }
    }
    Ok(if r.nonzero && r.divisible_by_p_power { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_wavelet(args: WaveletArgs, out: &mut impl Write) -> CmdResult {
    let p = prime(args.p)?;
    let m = exponent(args.m)?;
    let check = check_tau_order(p, m, args.tol)?;
    let word = match check.verdict {
        TauVerdict::Holds => "holds",
        TauVerdict::Fails => "fails",
        TauVerdict::Indeterminate => "indeterminate",
    };
    if args.json {
        let doc = json!({ "p": p.get(), "m": m, "tol": args.tol, "check": check });
        writeln!(out, "{doc}").map_err(io)?;
    } else {
        writeln!(out, "{word}").map_err(io)?;
        writeln!(out, "max |D^m tau| at zero points: {:.6e} (numeric, tol {:e})", check.max_entry, args.tol).map_err(io)?;
        writeln!(out, "min |D^m R| at zero points: {:.6e}", check.min_mask_derivative).map_err(io)?;
        if check.verdict == TauVerdict::Indeterminate {
            writeln!(out, "A_(p,m) is singular; the criterion does not apply").map_err(io)?;
        }
    }
    Ok(if check.verdict == TauVerdict::Fails { EXIT_FAILURE } else { EXIT_OK })
}
