//! Library side of the `harper-bands` command: argument handling, the
//! commands themselves and their encoders, kept out of `main` for testing.

pub mod config;
pub mod output;
pub mod verify;

use std::fs;
use std::io::Write;

use harper_core::bands::{coeff_bands, mathieu_bands, BandOptions};
use harper_core::genmathieu::{harmonic_normalize, harmonic_truncation_spectrum, multivariate_reduce, MultivarSpec, SURROGATE_LABEL};
use harper_core::qseries::sigma_limits_report;
use harper_core::recurrence::{Angle, Variant};
use num_integer::Integer;
use rayon::prelude::*;
use serde_json::json;

use config::{Command, Format, RunConfig};
use output::{BandTable, Entry};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("verification failed")]
    Verify,
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verify => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<harper_core::Error> for CliError {
    fn from(e: harper_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn options(cfg: &RunConfig) -> BandOptions {
    BandOptions { tol: cfg.tol, merge_tol: cfg.merge_tol }
}

fn entry(cfg: &RunConfig, p: i64, q: u64) -> Result<Entry, harper_core::Error> {
    let bs = mathieu_bands(cfg.kappa, p, q, cfg.variant.into(), options(cfg))?;
    Ok(Entry { q, p, bands: bs.intervals().iter().map(|&(a, b)| [a, b]).collect() })
}

fn table(cfg: &RunConfig, entries: Vec<Entry>) -> BandTable {
    BandTable {
        kappa: cfg.kappa,
        variant: Variant::from(cfg.variant).as_str().to_string(),
        entries,
        tol: Some(cfg.tol),
        merge_tol: Some(cfg.merge_tol),
    }
}

fn encode(cfg: &RunConfig, t: &BandTable) -> String {
    match cfg.format {
        Format::Csv => output::to_csv(t),
        Format::Json => output::to_json(t),
        Format::Svg => output::to_svg(t),
    }
}

/// Bands at the configured frequency.
pub fn run_bands(cfg: &RunConfig) -> Result<String, CliError> {
    let f = cfg.frac.ok_or_else(|| CliError::Usage("bands needs --frac P/Q".into()))?;
    let e = entry(cfg, f.p, f.q)?;
    let t = table(cfg, vec![e]);
    if cfg.format == Format::Json {
        // one frequency: add the discriminant degree to the metadata
        let mut v = serde_json::to_value(&t).expect("serializes");
        v["disc_degree"] = json!(f.q);
        return Ok(serde_json::to_string_pretty(&v).expect("serializes") + "\n");
    }
    Ok(encode(cfg, &t))
}

/// Every reduced `p/q` with `0 <= p < q <= qmax`, ordered by `(q, p)`.
pub fn butterfly_pairs(qmax: u64) -> Vec<(i64, u64)> {
    let mut out = Vec::new();
    for q in 1..=qmax {
        for p in 0..q {
            if p.gcd(&q) == 1 {
                out.push((p as i64, q));
            }
        }
    }
    out
}

pub fn run_butterfly(cfg: &RunConfig) -> Result<String, CliError> {
    if cfg.qmax < 1 {
        return Err(CliError::Usage("--qmax must be at least 1".into()));
    }
    let pairs = butterfly_pairs(cfg.qmax);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    // p and q - p give the same diagonal, so only half the pairs are solved
    let half: Vec<(i64, u64)> = pairs.iter().copied().filter(|&(p, q)| 2 * p as u64 <= q).collect();
    let solved: Vec<Entry> = pool.install(|| {
        half.par_iter()
            .map(|&(p, q)| entry(cfg, p, q))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let entries = pairs
        .iter()
        .map(|&(p, q)| {
            let rep = p.min(q as i64 - p);
            let i = half.binary_search_by_key(&(q, rep), |&(p, q)| (q, p)).expect("representative solved");
            Entry { q, p, bands: solved[i].bands.clone() }
        })
        .collect();
    Ok(encode(cfg, &table(cfg, entries)))
}

pub fn run_sigma(cfg: &RunConfig) -> Result<String, CliError> {
    let rows = sigma_limits_report(cfg.lmax)?;
    match cfg.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|r| json!({ "L": r.l, "sigma": r.sigma, "deviation": r.deviation }))
                .collect();
            Ok(serde_json::to_string_pretty(&v).expect("serializes") + "\n")
        }
        _ => {
            let mut s = String::from("L,sigma_4L,sigma_4L+1,sigma_4L+2,sigma_4L+3,dev_4L,dev_4L+1,dev_4L+2,dev_4L+3\n");
            for r in rows {
                let cells: Vec<String> =
                    r.sigma.iter().chain(&r.deviation).map(|&x| output::fmt_float(x)).collect();
                s.push_str(&format!("{},{}\n", r.l, cells.join(",")));
            }
            Ok(s)
        }
    }
}

pub fn run_multivar(cfg: &RunConfig) -> Result<String, CliError> {
    let angles = cfg
        .angles
        .iter()
        .map(|f| Angle::rational(f.p, f.q))
        .collect::<Result<Vec<_>, _>>()?;
    let red = multivariate_reduce(&MultivarSpec::new(cfg.kappa, angles, 0.0)?)?;
    let variant = Variant::from(cfg.variant);
    let seq = red.coeffs.shifted(variant.shift());
    let bs = coeff_bands(&seq, cfg.kappa, options(cfg))?;
    let period = red.period.unwrap_or(0) as u64;
    let e = Entry { q: period, p: 0, bands: bs.intervals().iter().map(|&(a, b)| [a, b]).collect() };
    let t = table(cfg, vec![e]);
    if cfg.format == Format::Json {
        let mut v = serde_json::to_value(&t).expect("serializes");
        v["angles"] = json!(cfg.angles.iter().map(|f| format!("{}/{}", f.p, f.q)).collect::<Vec<_>>());
        v["period"] = json!(period);
        return Ok(serde_json::to_string_pretty(&v).expect("serializes") + "\n");
    }
    Ok(encode(cfg, &t))
}

pub fn run_harmonic(cfg: &RunConfig) -> Result<String, CliError> {
    let hr = harmonic_normalize(&cfg.kappas, &cfg.psis, cfg.theta)?;
    let eigs = harmonic_truncation_spectrum(&hr, cfg.size)?;
    match cfg.format {
        Format::Json => {
            let v = json!({
                "label": SURROGATE_LABEL,
                "m": hr.m(),
                "theta": cfg.theta,
                "size": cfg.size,
                "eigenvalues": eigs,
            });
            Ok(serde_json::to_string_pretty(&v).expect("serializes") + "\n")
        }
        Format::Svg => Err(CliError::Usage("harmonic supports csv and json".into())),
        Format::Csv => {
            let mut s = format!("# {SURROGATE_LABEL}\nindex,eigenvalue\n");
            for (i, e) in eigs.iter().enumerate() {
                s.push_str(&format!("{i},{}\n", output::fmt_float(*e)));
            }
            Ok(s)
        }
    }
}

/// Run the configured command; returns the text to emit on stdout (empty
/// when written to `--out`).
pub fn run(cfg: &RunConfig) -> Result<String, CliError> {
    cfg.validate()?;
    let (text, verify_failed) = match cfg.command {
        Command::Bands => (run_bands(cfg)?, false),
        Command::Butterfly => (run_butterfly(cfg)?, false),
        Command::Sigma => (run_sigma(cfg)?, false),
        Command::Multivar => (run_multivar(cfg)?, false),
        Command::Harmonic => (run_harmonic(cfg)?, false),
        Command::Verify => {
            let res = verify::run(cfg.suite, cfg.max_degree);
            (verify::render(&res), res.iter().any(|r| !r.pass))
        }
    };
    let shown = match &cfg.out {
        Some(path) => {
            let mut f = fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            f.write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            String::new()
        }
        None => text,
    };
    if verify_failed {
        print!("{shown}");
        return Err(CliError::Verify);
    }
    Ok(shown)
}
