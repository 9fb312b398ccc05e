//! Domain descriptions: a self-describing JSON document or shorthand flags.
//!
//! ```json
//! {"kind": "polymap", "coeffs": [1, [0.5, 0.0]]}
//! {"kind": "annulus", "r": 1, "R": 2}
//! {"kind": "confocal", "r": 1.2, "R": 2.5}
//! {"kind": "monomial-level", "n": 3, "C": 0.5}
//! ```
//!
//! Polymap coefficients are a₁, …, aₙ of φ(z) = Σ a_k z^k; each is a real
//! number or a `[re, im]` pair.

use std::path::Path;

use bergman_core::polydomain::{AnnulusDomain, ConfocalDomain, MapCoeffs, MonomialLevelParams};
use bergman_core::Complex64;
use serde::Deserialize;

use crate::json::Json;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum CoeffInput {
    Real(f64),
    Pair([f64; 2]),
}

impl CoeffInput {
    fn value(&self) -> Complex64 {
        match *self {
            CoeffInput::Real(x) => Complex64::new(x, 0.0),
            CoeffInput::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DomainSpec {
    Polymap {
        coeffs: Vec<CoeffInput>,
    },
    Annulus {
        r: f64,
        #[serde(rename = "R")]
        big_r: f64,
    },
    Confocal {
        r: f64,
        #[serde(rename = "R")]
        big_r: f64,
    },
    MonomialLevel {
        n: u32,
        #[serde(rename = "C")]
        c: f64,
    },
}

/// A validated domain.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    Polymap(MapCoeffs),
    Annulus(AnnulusDomain),
    Confocal(ConfocalDomain),
    MonomialLevel(MonomialLevelParams),
}

impl DomainSpec {
    /// Inline JSON when the argument starts with `{`, otherwise a file path.
    pub fn from_arg(arg: &str) -> Result<Self, CliError> {
        let text = if arg.trim_start().starts_with('{') {
            arg.to_string()
        } else {
            std::fs::read_to_string(Path::new(arg))
                .map_err(|e| CliError::Validation(format!("cannot read domain file {arg}: {e}")))?
        };
        serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("invalid domain document: {e}")))
    }

    pub fn validate(&self) -> Result<Domain, CliError> {
        let invalid = |e: bergman_core::Error| CliError::Validation(e.to_string());
        match self {
            DomainSpec::Polymap { coeffs } => {
                if coeffs.is_empty() {
                    return Err(CliError::Validation("coefficient list is empty".into()));
                }
                let values: Vec<Complex64> = coeffs.iter().map(CoeffInput::value).collect();
                MapCoeffs::new(&values).map(Domain::Polymap).map_err(invalid)
            }
            DomainSpec::Annulus { r, big_r } => {
                AnnulusDomain::new(*r, *big_r).map(Domain::Annulus).map_err(invalid)
            }
            DomainSpec::Confocal { r, big_r } => {
                ConfocalDomain::new(*r, *big_r).map(Domain::Confocal).map_err(invalid)
            }
            DomainSpec::MonomialLevel { n, c } => {
                MonomialLevelParams::new(*n, *c).map(Domain::MonomialLevel).map_err(invalid)
            }
        }
    }
}

impl Domain {
    pub fn kind(&self) -> &'static str {
        match self {
            Domain::Polymap(_) => "polymap",
            Domain::Annulus(_) => "annulus",
            Domain::Confocal(_) => "confocal",
            Domain::MonomialLevel(_) => "monomial-level",
        }
    }

    /// Normalized echo of the input, with coefficients as [re, im] pairs.
    pub fn echo(&self) -> Json {
        let base = Json::obj().str("kind", self.kind());
        match self {
            Domain::Polymap(map) => base
                .field(
                    "coeffs",
                    Json::Arr(map.coeffs().iter().map(|c| Json::nums([c.re, c.im])).collect()),
                )
                .build(),
            Domain::Annulus(d) => base.num("r", d.inner()).num("R", d.outer()).build(),
            Domain::Confocal(d) => base.num("r", d.inner()).num("R", d.outer()).build(),
            Domain::MonomialLevel(p) => base.int("n", p.n as i64).num("C", p.c).build(),
        }
    }
}

fn parse_reals(text: &str, count: usize, flag: &str) -> Result<Vec<f64>, CliError> {
    let values: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match values {
        Ok(v) if v.len() == count => Ok(v),
        _ => Err(CliError::Validation(format!(
            "--{flag} expects {count} comma-separated numbers, got {text:?}"
        ))),
    }
}

/// `--coeffs` accepts a JSON array (`[1, [0.5, 0.2]]`) or a comma list of
/// reals (`1,0.5`).
pub fn coeffs_flag(text: &str) -> Result<DomainSpec, CliError> {
    let coeffs = if text.trim_start().starts_with('[') {
        serde_json::from_str(text)
            .map_err(|e| CliError::Validation(format!("invalid --coeffs list: {e}")))?
    } else {
        text.split(',')
            .map(|s| s.trim().parse::<f64>().map(CoeffInput::Real))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Validation(format!("invalid --coeffs list {text:?}: {e}")))?
    };
    Ok(DomainSpec::Polymap { coeffs })
}

pub fn annulus_flag(text: &str) -> Result<DomainSpec, CliError> {
    let v = parse_reals(text, 2, "annulus")?;
    Ok(DomainSpec::Annulus { r: v[0], big_r: v[1] })
}

pub fn confocal_flag(text: &str) -> Result<DomainSpec, CliError> {
    let v = parse_reals(text, 2, "confocal")?;
    Ok(DomainSpec::Confocal { r: v[0], big_r: v[1] })
}

pub fn monomial_flag(text: &str) -> Result<DomainSpec, CliError> {
    let v = parse_reals(text, 2, "monomial")?;
    if v[0].fract() != 0.0 || v[0] < 0.0 || v[0] > u32::MAX as f64 {
        return Err(CliError::Validation(format!("--monomial degree must be an integer, got {}", v[0])));
    }
    Ok(DomainSpec::MonomialLevel { n: v[0] as u32, c: v[1] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let p = DomainSpec::from_arg(r#"{"kind":"polymap","coeffs":[1,[0.5,0.25]]}"#).unwrap();
        assert_eq!(
            p,
            DomainSpec::Polymap {
                coeffs: vec![CoeffInput::Real(1.0), CoeffInput::Pair([0.5, 0.25])]
            }
        );
        assert!(matches!(
            DomainSpec::from_arg(r#"{"kind":"annulus","r":1,"R":2}"#).unwrap(),
            DomainSpec::Annulus { .. }
        ));
        assert!(matches!(
            DomainSpec::from_arg(r#"{"kind":"confocal","r":1.2,"R":2.5}"#).unwrap(),
            DomainSpec::Confocal { .. }
        ));
        assert!(matches!(
            DomainSpec::from_arg(r#"{"kind":"monomial-level","n":3,"C":0.5}"#).unwrap(),
            DomainSpec::MonomialLevel { n: 3, .. }
        ));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(DomainSpec::from_arg(r#"{"kind":"square"}"#).is_err());
        assert!(DomainSpec::from_arg(r#"{"kind":"annulus","r":1}"#).is_err());
        assert!(DomainSpec::from_arg(r#"{"kind":"annulus","r":1,"R":2,"x":0}"#).is_err());
        assert!(DomainSpec::from_arg(r#"{"kind":"polymap","coeffs":[[1,2,3]]}"#).is_err());
        let empty = DomainSpec::from_arg(r#"{"kind":"polymap","coeffs":[]}"#).unwrap();
        assert!(empty.validate().is_err());
        let degenerate = DomainSpec::from_arg(r#"{"kind":"annulus","r":1,"R":1}"#).unwrap();
        assert!(degenerate.validate().is_err());
    }

    #[test]
    fn shorthand_flags() {
        assert_eq!(
            coeffs_flag("1, 0.5").unwrap(),
            DomainSpec::Polymap {
                coeffs: vec![CoeffInput::Real(1.0), CoeffInput::Real(0.5)]
            }
        );
        assert!(matches!(coeffs_flag("[1,[0,0.1]]").unwrap(), DomainSpec::Polymap { .. }));
        assert_eq!(annulus_flag("1,2").unwrap(), DomainSpec::Annulus { r: 1.0, big_r: 2.0 });
        assert!(annulus_flag("1").is_err());
        assert!(monomial_flag("3.5,0.1").is_err());
        assert_eq!(monomial_flag("3,0.5").unwrap(), DomainSpec::MonomialLevel { n: 3, c: 0.5 });
    }
}
