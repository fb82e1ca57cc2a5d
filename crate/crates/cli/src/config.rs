//! Command-line arguments.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use harper_core::recurrence::Variant;
use num_integer::Integer;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Lambda bands at one rational frequency.
    Bands,
    /// Bands for every reduced p/q with q <= qmax.
    Butterfly,
    /// sigma_K table and its limits.
    Sigma,
    /// Run the identity and containment suites.
    Verify,
    /// Bands of a lattice problem reduced to one index.
    Multivar,
    /// Finite-section spectrum of a multi-harmonic potential.
    Harmonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    R,
    S,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::R => Variant::R,
            VariantArg::S => Variant::S,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Wronskian,
    Block,
    Factorization,
    ClosedForms,
    OddVanishing,
    #[value(alias = "prop6")]
    SineProduct,
    Sigma,
    Containment,
}

/// A reduced fraction `p/q`, `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac {
    pub p: i64,
    pub q: u64,
}

impl FromStr for Frac {
    type Err = String;

    fn from_str(s: &str) -> Result<Frac, String> {
        let (a, b) = s.split_once('/').ok_or_else(|| format!("expected P/Q, got {s:?}"))?;
        let p: i64 = a.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: i64 = b.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if q <= 0 {
            return Err(format!("denominator must be positive in {s:?}"));
        }
        let g = p.gcd(&q);
        Ok(Frac { p: p / g, q: (q / g) as u64 })
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "harper-bands", version, about = "Band spectra of almost Mathieu type operators")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Coupling kappa (sigma = 2 / kappa).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub kappa: f64,
    /// Frequency p/q (bands).
    #[arg(long)]
    pub frac: Option<Frac>,
    /// Largest denominator (butterfly).
    #[arg(long, default_value_t = 20)]
    pub qmax: u64,
    #[arg(long, value_enum, default_value_t = VariantArg::R)]
    pub variant: VariantArg,
    /// Root isolation width.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Bands closer than this (in t) are merged.
    #[arg(long = "merge-tol", default_value_t = 1e-10)]
    pub merge_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Verification suite.
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Largest odd root-of-unity degree for the sine-product suite.
    #[arg(long = "max-degree", default_value_t = 41)]
    pub max_degree: usize,
    /// Rows of the sigma table.
    #[arg(long, default_value_t = 50)]
    pub lmax: usize,
    /// Lattice angles as comma-separated fractions of 2 pi (multivar).
    #[arg(long, value_delimiter = ',')]
    pub angles: Vec<Frac>,
    /// Harmonic amplitudes kappa_1..kappa_m (harmonic).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub kappas: Vec<f64>,
    /// Harmonic phases psi_1..psi_m (harmonic).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub psis: Vec<f64>,
    /// Harmonic angle theta in radians (harmonic).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Truncation size (harmonic).
    #[arg(long, default_value_t = 200)]
    pub size: usize,
}

impl RunConfig {
    /// Command-specific checks beyond what clap enforces.
    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |m: &str| Err(CliError::Usage(m.to_string()));
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return usage("--tol must be positive");
        }
        if !(self.merge_tol >= 0.0) || !self.merge_tol.is_finite() {
            return usage("--merge-tol must be nonnegative");
        }
        if !self.kappa.is_finite() || self.kappa == 0.0 {
            return usage("--kappa must be finite and nonzero");
        }
        match self.command {
            Command::Bands if self.frac.is_none() => usage("bands needs --frac P/Q"),
            Command::Butterfly if self.qmax < 1 => usage("--qmax must be at least 1"),
            Command::Multivar if self.angles.is_empty() => usage("multivar needs --angles"),
            Command::Harmonic if self.kappas.is_empty() || self.kappas.len() != self.psis.len() => {
                usage("harmonic needs --kappas and --psis of equal length")
            }
            Command::Sigma if self.lmax < 1 => usage("--lmax must be at least 1"),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_reduce() {
        assert_eq!("2/4".parse::<Frac>().unwrap(), Frac { p: 1, q: 2 });
        assert_eq!("0/7".parse::<Frac>().unwrap(), Frac { p: 0, q: 1 });
        assert_eq!("-3/9".parse::<Frac>().unwrap(), Frac { p: -1, q: 3 });
        assert!("1/0".parse::<Frac>().is_err());
        assert!("3".parse::<Frac>().is_err());
        assert!("a/2".parse::<Frac>().is_err());
    }

    #[test]
    fn parse_and_validate() {
        let c = RunConfig::try_parse_from(["harper-bands", "bands", "--frac", "1/2"]).unwrap();
        assert!(c.validate().is_ok());
        let c = RunConfig::try_parse_from(["harper-bands", "bands"]).unwrap();
        assert!(c.validate().is_err());
        let c = RunConfig::try_parse_from(["harper-bands", "bands", "--kappa", "0", "--frac", "1/2"]).unwrap();
        assert!(c.validate().is_err());
        let c = RunConfig::try_parse_from(["harper-bands", "multivar", "--angles", "1/3,1/2"]).unwrap();
        assert_eq!(c.angles.len(), 2);
        assert!(RunConfig::try_parse_from(["harper-bands", "nope"]).is_err());
    }
}
