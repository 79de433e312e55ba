//! JSON forms of measure families. Rationals are strings `p` or `p/q` in
//! lowest terms, so a file written here reads back and writes out again
//! byte for byte.

use fairfan_core::geometry::Point;
use fairfan_core::measures::{Atom, DiscreteMeasure, MeasureFamily};
use fairfan_core::rational;
use fairfan_core::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub fn rat(v: &Rational) -> String {
    rational::format(v)
}

pub fn parse_rat(s: &str) -> CliResult<Rational> {
    rational::parse(s).ok_or_else(|| CliError::Rational(s.to_string()))
}

pub fn rats(vs: &[Rational]) -> Vec<String> {
    vs.iter().map(rat).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomFile {
    pub point: Vec<String>,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureFile {
    pub label: String,
    pub bump_radius: String,
    pub atoms: Vec<AtomFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub dim: usize,
    pub measures: Vec<MeasureFile>,
}

impl FamilyFile {
    pub fn from_family(family: &MeasureFamily) -> Self {
        let measures = family
            .measures()
            .iter()
            .map(|mu| MeasureFile {
                label: mu.label().to_string(),
                bump_radius: rat(mu.bump_radius()),
                atoms: mu
                    .atoms()
                    .iter()
                    .map(|a| AtomFile {
                        point: rats(a.point.coords()),
                        weight: rat(&a.weight),
                    })
                    .collect(),
            })
            .collect();
        Self {
            dim: family.dim(),
            measures,
        }
    }

    pub fn to_family(&self) -> CliResult<MeasureFamily> {
        let mut measures = Vec::with_capacity(self.measures.len());
        for m in &self.measures {
            let atoms = m
                .atoms
                .iter()
                .map(|a| {
                    let coords = a.point.iter().map(|s| parse_rat(s)).collect::<CliResult<Vec<_>>>()?;
                    Ok(Atom::new(Point::new(coords), parse_rat(&a.weight)?))
                })
                .collect::<CliResult<Vec<_>>>()?;
            measures.push(DiscreteMeasure::new(m.label.clone(), atoms, parse_rat(&m.bump_radius)?)?);
        }
        let family = MeasureFamily::new(measures)?;
        if family.dim() != self.dim {
            return Err(fairfan_core::Error::DimensionMismatch {
                expected: self.dim,
                found: family.dim(),
            }
            .into());
        }
        Ok(family)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn family_to_json(family: &MeasureFamily) -> CliResult<String> {
    to_json(&FamilyFile::from_family(family))
}

pub fn family_from_json(text: &str) -> CliResult<MeasureFamily> {
    let file: FamilyFile = serde_json::from_str(text)?;
    file.to_family()
}

#[cfg(test)]
mod tests {
    use super::*;
    use fairfan_core::rational::frac;

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(rat(&frac(6, 4)), "3/2");
        assert_eq!(rat(&frac(-4, 2)), "-2");
        assert_eq!(parse_rat(" 6/4 ").unwrap(), frac(3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn noncanonical_input_is_normalised() {
        let text = r#"{"dim":1,"measures":[{"label":"a","bump_radius":"2/8","atoms":[{"point":["4/2"],"weight":"3"}]}]}"#;
        let family = family_from_json(text).unwrap();
        let once = family_to_json(&family).unwrap();
        assert!(once.contains("\"1/4\"") && once.contains("\"2\""));
        assert_eq!(family_to_json(&family_from_json(&once).unwrap()).unwrap(), once);
    }

    #[test]
    fn unknown_fields_and_bad_dims_fail() {
        assert!(family_from_json(r#"{"dim":1,"measures":[],"x":1}"#).is_err());
        let text = r#"{"dim":2,"measures":[{"label":"a","bump_radius":"1","atoms":[{"point":["1"],"weight":"1"}]}]}"#;
        assert!(family_from_json(text).is_err());
    }
}
