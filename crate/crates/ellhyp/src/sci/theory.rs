//! Field content of a gauge theory and the representation weights it uses.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::base::{C64, ONE};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaugeKind {
    SU,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeGroup {
    #[serde(rename = "type")]
    pub kind: GaugeKind,
    #[serde(rename = "N")]
    pub n: usize,
}

impl GaugeGroup {
    pub fn su(n: usize) -> Self {
        GaugeGroup { kind: GaugeKind::SU, n }
    }

    pub fn rank(&self) -> usize {
        self.n.saturating_sub(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Vector,
    Chiral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rep {
    Fundamental,
    Antifundamental,
    Adjoint,
    Trivial,
    Antisym2,
}

mod ratio_str {
    use num_rational::Ratio;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
        let s = String::deserialize(d)?;
        let r: Ratio<i64> =
            s.trim().parse().map_err(|_| D::Error::custom(format!("expected a rational \"a/b\", got {s:?}")))?;
        Ok(r)
    }
}

fn one() -> i32 {
    1
}

/// One multiplet: gauge representation, flavor weights `m^{(a)}` (exponent vectors over the
/// flavor fugacities), R-charge and the multiplicity sign `epsilon`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldContent {
    pub kind: FieldKind,
    pub gauge_rep: Rep,
    pub flavor_weights: Vec<Vec<i32>>,
    #[serde(rename = "R", with = "ratio_str")]
    pub r_charge: Ratio<i64>,
    #[serde(default = "one")]
    pub epsilon: i32,
}

impl FieldContent {
    pub fn chiral(gauge_rep: Rep, flavor_weights: Vec<Vec<i32>>, r_charge: Ratio<i64>) -> Self {
        FieldContent { kind: FieldKind::Chiral, gauge_rep, flavor_weights, r_charge, epsilon: 1 }
    }

    pub fn vector(flavor_rank: usize) -> Self {
        FieldContent {
            kind: FieldKind::Vector,
            gauge_rep: Rep::Adjoint,
            flavor_weights: vec![vec![0; flavor_rank]],
            r_charge: Ratio::from_integer(1),
            epsilon: 1,
        }
    }
}

/// Gauge group, flavor torus of rank `flavor_rank` (independent coordinates) and matter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheorySpec {
    pub name: String,
    pub gauge: GaugeGroup,
    pub flavor_rank: usize,
    pub fields: Vec<FieldContent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_minus: Option<i64>,
}

fn schema(pointer: String, message: impl Into<String>) -> Error {
    Error::Schema { pointer, message: message.into() }
}

impl TheorySpec {
    /// Parses and validates a JSON document; errors carry a JSON pointer.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let spec: TheorySpec = serde_path_to_error::deserialize(de).map_err(|e| {
            let mut pointer = String::new();
            for seg in e.path().iter() {
                use serde_path_to_error::Segment;
                match seg {
                    Segment::Seq { index } => pointer.push_str(&format!("/{index}")),
                    Segment::Map { key } | Segment::Enum { variant: key } => pointer.push_str(&format!("/{key}")),
                    Segment::Unknown => pointer.push_str("/?"),
                }
            }
            schema(pointer, e.inner().to_string())
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("theory spec serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.gauge.n == 0 {
            return Err(schema("/gauge/N".into(), "SU(N) needs N >= 1"));
        }
        let mut vectors = 0;
        for (a, f) in self.fields.iter().enumerate() {
            let at = |k: &str| format!("/fields/{a}/{k}");
            if f.flavor_weights.is_empty() {
                return Err(schema(at("flavor_weights"), "at least one flavor weight is required"));
            }
            for (k, w) in f.flavor_weights.iter().enumerate() {
                if w.len() != self.flavor_rank {
                    return Err(schema(
                        format!("/fields/{a}/flavor_weights/{k}"),
                        format!("weight has {} entries, flavor rank is {}", w.len(), self.flavor_rank),
                    ));
                }
            }
            if *f.r_charge.denom() <= 0 {
                return Err(schema(at("R"), "denominator must be positive"));
            }
            if f.epsilon == 0 {
                return Err(schema(at("epsilon"), "multiplicity must be nonzero"));
            }
            if f.gauge_rep == Rep::Antisym2 && self.gauge.n < 2 {
                return Err(Error::InvalidRep(format!("field {a}: antisymmetric square of SU(1)")));
            }
            if f.kind == FieldKind::Vector {
                vectors += 1;
                if f.gauge_rep != Rep::Adjoint {
                    return Err(schema(at("gauge_rep"), "vector multiplets are adjoint"));
                }
                if f.r_charge != Ratio::from_integer(1) {
                    return Err(schema(at("R"), "vector multiplets have R = 1"));
                }
                if f.epsilon != 1 || f.flavor_weights.len() != 1 || f.flavor_weights[0].iter().any(|&m| m != 0) {
                    return Err(schema(at("flavor_weights"), "vector multiplets are flavor singlets with epsilon = 1"));
                }
            }
        }
        if vectors > 1 || (self.gauge.n >= 2 && vectors == 0) {
            return Err(schema("/fields".into(), format!("SU({}) needs exactly one vector multiplet", self.gauge.n)));
        }
        Ok(())
    }

    pub fn gauge_rank(&self) -> usize {
        self.gauge.rank()
    }
}

/// Weights of `rep` of SU(n) in independent coordinates `z_1..z_{n-1}`, with `z_n = 1/(z_1...z_{n-1})`.
/// Zero weights of the adjoint are listed (n - 1 of them).
pub fn su_weights(rep: Rep, n: usize) -> Result<Vec<Vec<i32>>> {
    if n == 0 {
        return Err(Error::InvalidRep("SU(0)".into()));
    }
    let unit = |k: usize| -> Vec<i32> {
        let mut w = vec![0; n];
        w[k] = 1;
        w
    };
    let full: Vec<Vec<i32>> = match rep {
        Rep::Trivial => vec![vec![0; n]],
        Rep::Fundamental => (0..n).map(unit).collect(),
        Rep::Antifundamental => (0..n).map(|k| unit(k).iter().map(|x| -x).collect()).collect(),
        Rep::Adjoint => {
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let mut w = unit(i);
                        w[j] -= 1;
                        out.push(w);
                    }
                }
            }
            out.extend(std::iter::repeat_n(vec![0; n], n - 1));
            out
        }
        Rep::Antisym2 => {
            if n < 2 {
                return Err(Error::InvalidRep("antisymmetric square of SU(1)".into()));
            }
            let mut out = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let mut w = unit(i);
                    w[j] += 1;
                    out.push(w);
                }
            }
            out
        }
    };
    Ok(full.into_iter().map(|w| (0..n - 1).map(|a| w[a] - w[n - 1]).collect()).collect())
}

/// Positive roots `z_i/z_j` (`i < j`) in independent coordinates.
pub fn positive_roots(n: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut w = vec![0; n];
            w[i] = 1;
            w[j] = -1;
            out.push((0..n - 1).map(|a| w[a] - w[n - 1]).collect());
        }
    }
    out
}

pub(crate) fn monomial(x: &[C64], m: &[i32]) -> C64 {
    x.iter().zip(m).fold(ONE, |acc, (xi, &mi)| acc * xi.powi(mi))
}

/// Character of `rep` at a full torus point `z` (`prod z_j = 1`).
pub fn character(rep: Rep, n: usize, z: &[C64]) -> Result<C64> {
    if z.len() != n {
        return Err(Error::InvalidArgument(format!("SU({n}) torus point needs {n} entries")));
    }
    let prod: C64 = z.iter().product();
    if (prod - 1.0).norm() > 1e-12 {
        return Err(Error::InvalidArgument(format!("torus point has prod z = {prod}, expected 1")));
    }
    let w = su_weights(rep, n)?;
    Ok(w.iter().map(|m| monomial(&z[..n - 1], m)).sum())
}

fn l_block(nf: usize, k: usize, sign: i32) -> Vec<i32> {
    let mut w = vec![0; nf - 1];
    if k + 1 < nf {
        w[k] = sign;
    } else {
        w.iter_mut().for_each(|x| *x = -sign);
    }
    w
}

/// Flavor coordinates `[y_l(1..Nf-1), y_r(1..Nf-1), b]` where `b^{Ñc}` carries one unit of U(1)_B.
fn seiberg_weight(nf: usize, l: Option<(usize, i32)>, r: Option<(usize, i32)>, b: i32) -> Vec<i32> {
    let zero = vec![0; nf - 1];
    let mut w = l.map_or(zero.clone(), |(k, s)| l_block(nf, k, s));
    w.extend(r.map_or(zero, |(k, s)| l_block(nf, k, s)));
    w.push(b);
    w
}

fn seiberg_check(nc: usize, nf: usize) -> Result<()> {
    if nc < 2 || nf <= nc {
        return Err(Error::InvalidArgument(format!("Seiberg pair needs 2 <= Nc < Nf, got Nc = {nc}, Nf = {nf}")));
    }
    Ok(())
}

/// SU(Nc) with `Nf` flavors of quarks `Q` and antiquarks `Q~` at `R = Ñc/Nf`.
pub fn seiberg_electric(nc: usize, nf: usize) -> Result<TheorySpec> {
    seiberg_check(nc, nf)?;
    let nct = (nf - nc) as i32;
    let r = Ratio::new(nct as i64, nf as i64);
    let rank = 2 * nf - 1;
    Ok(TheorySpec {
        name: "seiberg_electric".into(),
        gauge: GaugeGroup::su(nc),
        flavor_rank: rank,
        fields: vec![
            FieldContent::chiral(
                Rep::Fundamental,
                (0..nf).map(|k| seiberg_weight(nf, Some((k, 1)), None, nct)).collect(),
                r,
            ),
            FieldContent::chiral(
                Rep::Antifundamental,
                (0..nf).map(|k| seiberg_weight(nf, None, Some((k, -1)), -nct)).collect(),
                r,
            ),
            FieldContent::vector(rank),
        ],
        r_minus: None,
    })
}

/// SU(Nf - Nc) with dual quarks `q`, `q~` at `R = Nc/Nf` and the meson `M` at `R = 2Ñc/Nf`.
pub fn seiberg_magnetic(nc: usize, nf: usize) -> Result<TheorySpec> {
    seiberg_check(nc, nf)?;
    let nct = nf - nc;
    let r = Ratio::new(nc as i64, nf as i64);
    let rank = 2 * nf - 1;
    let mut mesons = Vec::new();
    for i in 0..nf {
        for j in 0..nf {
            mesons.push(seiberg_weight(nf, Some((i, 1)), Some((j, -1)), 0));
        }
    }
    Ok(TheorySpec {
        name: "seiberg_magnetic".into(),
        gauge: GaugeGroup::su(nct),
        flavor_rank: rank,
        fields: vec![
            FieldContent::chiral(
                Rep::Fundamental,
                (0..nf).map(|k| seiberg_weight(nf, Some((k, -1)), None, nc as i32)).collect(),
                r,
            ),
            FieldContent::chiral(
                Rep::Antifundamental,
                (0..nf).map(|k| seiberg_weight(nf, None, Some((k, 1)), -(nc as i32))).collect(),
                r,
            ),
            FieldContent::chiral(Rep::Trivial, mesons, Ratio::new(2 * nct as i64, nf as i64)),
            FieldContent::vector(rank),
        ],
        r_minus: None,
    })
}

pub const BUILTIN_NAMES: [&str; 2] = ["seiberg_electric", "seiberg_magnetic"];

pub fn builtin(name: &str, nc: usize, nf: usize) -> Result<TheorySpec> {
    match name {
        "seiberg_electric" => seiberg_electric(nc, nf),
        "seiberg_magnetic" => seiberg_magnetic(nc, nf),
        _ => Err(Error::InvalidArgument(format!("unknown built-in theory {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn characters() {
        for n in 1..=4 {
            let z = vec![ONE; n];
            assert_eq!(character(Rep::Adjoint, n, &z).unwrap(), c((n * n - 1) as f64, 0.0));
            assert_eq!(character(Rep::Fundamental, n, &z).unwrap(), c(n as f64, 0.0));
        }
        let z = C64::from_polar(0.9, 0.4);
        let v = character(Rep::Fundamental, 2, &[z, 1.0 / z]).unwrap();
        assert!((v - (z + 1.0 / z)).norm() < 1e-14);
        let adj = character(Rep::Adjoint, 2, &[z, 1.0 / z]).unwrap();
        assert!((adj - (z * z + 1.0 / (z * z) + 1.0)).norm() < 1e-13);
        assert_eq!(character(Rep::Antisym2, 6, &[ONE; 6]).unwrap(), c(15.0, 0.0));
        let y = [c(0.5, 0.1), c(1.2, -0.3), c(0.8, 0.6)];
        let y3 = [y[0], y[1], 1.0 / (y[0] * y[1])];
        let direct = y3[0] * y3[1] + y3[0] * y3[2] + y3[1] * y3[2];
        assert!((character(Rep::Antisym2, 3, &y3).unwrap() - direct).norm() < 1e-13);
        let conj = character(Rep::Antifundamental, 3, &y3).unwrap();
        assert!((conj - y3.iter().map(|x| 1.0 / x).sum::<C64>()).norm() < 1e-13);
        assert!(character(Rep::Fundamental, 2, &[c(2.0, 0.0), ONE]).is_err());
        assert!(matches!(su_weights(Rep::Antisym2, 1), Err(Error::InvalidRep(_))));
    }

    #[test]
    fn builtins_validate_and_round_trip() {
        for (nc, nf) in [(2, 3), (2, 4), (3, 5)] {
            for name in BUILTIN_NAMES {
                let s = builtin(name, nc, nf).unwrap();
                s.validate().unwrap();
                let back = TheorySpec::from_json(&s.to_json()).unwrap();
                assert_eq!(back, s);
            }
        }
        assert!(seiberg_electric(2, 2).is_err());
        assert!(builtin("sqcd", 2, 3).is_err());
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let bad = r#"{"name":"x","gauge":{"type":"SU","N":2},"flavor_rank":1,
            "fields":[{"kind":"chiral","gauge_rep":"fundamental","flavor_weights":[[1]],"R":"one third"}]}"#;
        match TheorySpec::from_json(bad) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/fields/0/R"),
            other => panic!("{other:?}"),
        }
        let no_vector = r#"{"name":"x","gauge":{"type":"SU","N":2},"flavor_rank":1,
            "fields":[{"kind":"chiral","gauge_rep":"fundamental","flavor_weights":[[1]],"R":"1/3"}]}"#;
        assert!(matches!(TheorySpec::from_json(no_vector), Err(Error::Schema { .. })));
        let arity = r#"{"name":"x","gauge":{"type":"SU","N":1},"flavor_rank":2,
            "fields":[{"kind":"chiral","gauge_rep":"trivial","flavor_weights":[[1]],"R":"2/3"}]}"#;
        match TheorySpec::from_json(arity) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/fields/0/flavor_weights/0"),
            other => panic!("{other:?}"),
        }
        let ok = r#"{"name":"x","gauge":{"type":"SU","N":1},"flavor_rank":1,
            "fields":[{"kind":"chiral","gauge_rep":"trivial","flavor_weights":[[1]],"R":"2/3"}],"r_minus":0}"#;
        let s = TheorySpec::from_json(ok).unwrap();
        assert_eq!(s.fields[0].r_charge, Ratio::new(2, 3));
        assert_eq!(s.fields[0].epsilon, 1);
    }
}
