use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ellhyp::C64;

#[derive(Parser, Debug)]
#[command(
    name = "ellhyp",
    version,
    about = "Elliptic gamma functions and certified elliptic hypergeometric identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one special function at a point.
    Eval(EvalArgs),
    /// Run an identity battery or a suite of batteries.
    Verify(VerifyArgs),
    /// Compute a superconformal index from a theory spec.
    Index(IndexArgs),
    /// Check the anomaly equations of a theory or a dual pair in exact arithmetic.
    Anomaly(AnomalyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Double,
    Extended,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Elliptic nome p, e.g. `0.3`, `0.2-0.1i`, `0.25@1.2` (modulus@argument).
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_opt_c64")]
    pub p: Option<C64>,
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_opt_c64")]
    pub q: Option<C64>,
    /// Rarefication order.
    #[arg(long, global = true)]
    pub r: Option<u32>,
    /// Discrete shift; integer or half-integer.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_half)]
    pub nu: Option<i64>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub draws: Option<usize>,
    /// Pass threshold replacing each check's default.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Quadrature node cap per dimension for one-dimensional integrals.
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Precision::Double)]
    pub precision: Precision,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[value(rename_all = "snake_case")]
#[serde(rename_all = "snake_case")]
pub enum Function {
    Theta,
    Egamma,
    Egamma2,
    EgammaMod,
    Hgamma,
    Regamma,
    Vfunction,
    Vseries,
}

#[derive(Args, Debug, Serialize)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_opt_c64")]
    pub z: Option<C64>,
    /// Third base of the two-parameter gamma function.
    #[arg(long = "t", value_parser = parse_complex, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_opt_c64")]
    pub t: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_opt_c64")]
    pub u: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_opt_c64")]
    pub omega1: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_opt_c64")]
    pub omega2: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_opt_c64")]
    pub omega3: Option<C64>,
    /// Parameters of the V-function (8) or of the series (t0 first).
    #[arg(long, value_parser = parse_complex_list, allow_hyphen_values = true)]
    pub params: Option<CList>,
    /// `t1,t2,t3,t5` of the terminating summation; builds the series parameters.
    #[arg(long, value_parser = parse_complex_list, allow_hyphen_values = true)]
    pub ft: Option<CList>,
    /// Termination index of the series.
    #[arg(long = "N")]
    pub n: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Identity id (e.g. `elbeta`, `e7_2`) or suite name.
    pub target: String,
    /// One draw per battery and the slow batteries skipped.
    #[arg(long)]
    pub quick: bool,
    /// Explicit parameters for a single check of `elbeta`, `e7_*`, `eheq1` or `vdet`.
    #[arg(long = "params", value_parser = parse_complex_list, allow_hyphen_values = true)]
    pub params: Option<CList>,
}

#[derive(Args, Debug, Serialize)]
pub struct IndexArgs {
    /// `builtin:<name>` or a path to a theory spec JSON file.
    pub source: String,
    #[arg(long = "Nc")]
    pub nc: Option<usize>,
    #[arg(long = "Nf")]
    pub nf: Option<usize>,
    /// Flavor fugacities, one per flavor coordinate.
    #[arg(long, value_parser = parse_complex_list, allow_hyphen_values = true)]
    pub y: Option<CList>,
    /// Quark parameters of the Seiberg specs.
    #[arg(long, value_parser = parse_complex_list, allow_hyphen_values = true)]
    pub s: Option<CList>,
    /// Antiquark parameters of the Seiberg specs.
    #[arg(long = "t", value_parser = parse_complex_list, allow_hyphen_values = true)]
    pub t: Option<CList>,
}

#[derive(Args, Debug, Serialize)]
pub struct AnomalyArgs {
    /// `builtin:<name>` or a path to a theory spec JSON file.
    pub source: String,
    /// Dual theory; Seiberg builtins pair up automatically.
    #[arg(long)]
    pub dual: Option<String>,
    #[arg(long = "Nc")]
    pub nc: Option<usize>,
    #[arg(long = "Nf")]
    pub nf: Option<usize>,
}

fn ser_opt_c64<S: serde::Serializer>(v: &Option<C64>, s: S) -> Result<S::Ok, S::Error> {
    v.map(|z| [z.re, z.im]).serialize(s)
}

/// Comma-separated list of complex numbers given as one argument.
#[derive(Clone, Debug)]
pub struct CList(pub Vec<C64>);

impl Serialize for CList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
    }
}

impl std::ops::Deref for CList {
    type Target = [C64];
    fn deref(&self) -> &[C64] {
        &self.0
    }
}

/// Accepts `a`, `bi`, `a+bi`, `a-bi`, `[a,b]` and polar `r@phi`.
pub fn parse_complex(text: &str) -> Result<C64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let num = |t: &str, at: usize| -> Result<f64, String> {
        t.parse::<f64>().map_err(|_| format!("cannot parse {t:?} as a number at position {at} of {text:?}"))
    };
    if s.is_empty() {
        return Err("empty complex number".into());
    }
    if let Some(inner) = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
        let (a, b) = inner.split_once(',').ok_or_else(|| format!("expected [re,im] in {text:?}"))?;
        return Ok(C64::new(num(a, 1)?, num(b, a.len() + 2)?));
    }
    if let Some((r, phi)) = s.split_once('@') {
        return Ok(C64::from_polar(num(r, 0)?, num(phi, r.len() + 1)?));
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Ok(C64::new(num(&s, 0)?, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k], 0)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => num(x, body.len() - x.len())?,
    };
    Ok(C64::new(re, im))
}

/// Comma-separated complex numbers; `[a,b]` pairs are kept together.
pub fn parse_complex_list(text: &str) -> Result<CList, String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (k, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(parse_complex(&text[start..k]).map_err(|e| format!("entry {}: {e}", out.len() + 1))?);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(parse_complex(&text[start..]).map_err(|e| format!("entry {}: {e}", out.len() + 1))?);
    Ok(CList(out))
}

/// Twice a value that must be an integer or a half-integer.
pub fn parse_half(text: &str) -> Result<i64, String> {
    let v: f64 = text.trim().parse().map_err(|_| format!("cannot parse {text:?} as a number"))?;
    let twice = 2.0 * v;
    if (twice - twice.round()).abs() > 1e-12 {
        return Err(format!("{text} is not an integer or half-integer"));
    }
    Ok(twice.round() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(parse_complex("0.5+0.25i").unwrap(), C64::new(0.5, 0.25));
        assert_eq!(parse_complex("1e-3-2e-2i").unwrap(), C64::new(1e-3, -2e-2));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("[1,-2]").unwrap(), C64::new(1.0, -2.0));
        assert!((parse_complex("2@0").unwrap() - C64::new(2.0, 0.0)).norm() < 1e-15);
        assert!(parse_complex("0.3+xi").unwrap_err().contains("position"));
        assert_eq!(parse_complex_list("1,[0,1],2-i").unwrap().len(), 3);
        assert!(parse_complex_list("1,,2").unwrap_err().starts_with("entry 2"));
        assert_eq!(parse_half("-1.5").unwrap(), -3);
        assert!(parse_half("0.3").is_err());
    }
}
