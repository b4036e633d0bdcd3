//! JSON file formats. Rationals are text `"p/q"` (or JSON integers on
//! input); floating point is rejected everywhere.

use std::fmt;
use std::path::Path;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use pwa_bounds_core::certify::SetSpec;
use pwa_bounds_core::numeric::{format_rational, int, parse_rational, Rational};
use pwa_bounds_core::polyhedra::{Halfspace, PolyCone, PolyUnion, Polyhedron};
use pwa_bounds_core::pwa::MinMaxFunction;

use crate::InputError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

struct RatVisitor;

impl Visitor<'_> for RatVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as text \"p/q\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
        parse_rational(v).map(Rat).map_err(|e| E::custom(e.to_string()))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
        Ok(Rat(int(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
        Ok(Rat(Rational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rat, E> {
        Err(E::custom(format!("floating point value {v} not allowed; write \"p/q\"")))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        d.deserialize_any(RatVisitor)
    }
}

fn rats(v: &[Rational]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

fn unrat(v: &[Rat]) -> Vec<Rational> {
    v.iter().map(|r| r.0.clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub a: Rat,
    pub v: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceFile {
    pub terms: Vec<TermFile>,
}

/// `f(x) = min over pieces of max over terms of (a + <v, x>)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub dim: usize,
    pub pieces: Vec<PieceFile>,
}

impl FunctionFile {
    pub fn from_function(f: &MinMaxFunction) -> Self {
        FunctionFile {
            dim: f.dimension(),
            pieces: f
                .pieces()
                .iter()
                .map(|p| PieceFile {
                    terms: p
                        .terms()
                        .iter()
                        .map(|t| TermFile {
                            a: Rat(t.offset.clone()),
                            v: rats(&t.gradient),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_function(&self) -> Result<MinMaxFunction, InputError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| p.terms.iter().map(|t| (t.a.0.clone(), unrat(&t.v))).collect())
            .collect();
        MinMaxFunction::from_terms(self.dim, pieces).map_err(InputError::from)
    }
}

/// `A x <= b`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowsFile {
    #[serde(rename = "A")]
    pub a: Vec<Vec<Rat>>,
    pub b: Vec<Rat>,
}

impl RowsFile {
    pub fn from_polyhedron(p: &Polyhedron) -> Self {
        RowsFile {
            a: p.inequalities().iter().map(|h| rats(&h.normal)).collect(),
            b: p.inequalities().iter().map(|h| Rat(h.rhs.clone())).collect(),
        }
    }

    fn to_polyhedron(&self, dim: usize) -> Result<Polyhedron, InputError> {
        if self.a.len() != self.b.len() {
            return Err(InputError::new(format!(
                "A has {} rows but b has {} entries",
                self.a.len(),
                self.b.len()
            )));
        }
        let rows = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(w, c)| Halfspace::new(unrat(w), c.0.clone()))
            .collect();
        Polyhedron::new(dim, rows).map_err(InputError::from)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetFile {
    Full {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
    Box {
        lo: Vec<Rat>,
        hi: Vec<Rat>,
    },
    Polyunion {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        pieces: Vec<RowsFile>,
    },
    /// `{x | A x <= 0}`
    Cone {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        #[serde(rename = "A")]
        a: Vec<Vec<Rat>>,
    },
    Points {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        points: Vec<Vec<Rat>>,
    },
    /// `{x | f(x) < rho}` for the function the set is paired with.
    StrictSublevel { rho: Rat },
}

fn resolve(dim: Option<usize>, f: &MinMaxFunction) -> Result<usize, InputError> {
    match dim {
        Some(d) if d != f.dimension() => Err(InputError::new(format!(
            "set dimension {d} does not match function dimension {}",
            f.dimension()
        ))),
        _ => Ok(f.dimension()),
    }
}

impl SetFile {
    pub fn from_set(v: &SetSpec) -> Result<Self, InputError> {
        Ok(match v {
            SetSpec::FullSpace(d) => SetFile::Full { dim: Some(*d) },
            SetSpec::Box { lo, hi } => SetFile::Box {
                lo: rats(lo),
                hi: rats(hi),
            },
            SetSpec::PolyUnion(u) => SetFile::Polyunion {
                dim: Some(u.dimension()),
                pieces: u.pieces().iter().map(RowsFile::from_polyhedron).collect(),
            },
            SetSpec::Cone(c) => SetFile::Cone {
                dim: Some(c.dimension()),
                a: c.normals()?.iter().map(|w| rats(w)).collect(),
            },
            SetSpec::Points { dimension, points } => SetFile::Points {
                dim: Some(*dimension),
                points: points.iter().map(|p| rats(p)).collect(),
            },
            SetSpec::StrictSublevel { rho, .. } => SetFile::StrictSublevel { rho: Rat(rho.clone()) },
        })
    }

    pub fn to_set(&self, f: &MinMaxFunction) -> Result<SetSpec, InputError> {
        Ok(match self {
            SetFile::Full { dim } => SetSpec::FullSpace(resolve(*dim, f)?),
            SetFile::Box { lo, hi } => {
                resolve(Some(lo.len()), f)?;
                SetSpec::new_box(unrat(lo), unrat(hi))?
            }
            SetFile::Polyunion { dim, pieces } => {
                let d = resolve(*dim, f)?;
                let polys = pieces.iter().map(|p| p.to_polyhedron(d)).collect::<Result<_, _>>()?;
                SetSpec::PolyUnion(PolyUnion::new(d, polys)?)
            }
            SetFile::Cone { dim, a } => {
                let d = resolve(*dim, f)?;
                SetSpec::Cone(PolyCone::from_inequalities(d, a.iter().map(|w| unrat(w)).collect())?)
            }
            SetFile::Points { dim, points } => {
                let d = resolve(*dim, f)?;
                SetSpec::points(d, points.iter().map(|p| unrat(p)).collect())?
            }
            SetFile::StrictSublevel { rho } => SetSpec::StrictSublevel {
                function: f.clone(),
                rho: rho.0.clone(),
            },
        })
    }
}

/// A parsed input file with the SHA-256 digest of its bytes.
#[derive(Debug, Clone)]
pub struct Loaded<T> {
    pub value: T,
    pub name: String,
    pub sha256: String,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(name: &str, bytes: &[u8]) -> Result<Loaded<T>, InputError> {
    let value = serde_json::from_slice(bytes).map_err(|e| {
        InputError::new(format!(
            "{name}: line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    Ok(Loaded {
        value,
        name: name.to_string(),
        sha256: digest(bytes),
    })
}

pub fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Loaded<T>, InputError> {
    let name = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| InputError::new(format!("{name}: {e}")))?;
    parse_json(&name, &bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pwa_bounds_core::numeric::rat;
    use pwa_bounds_core::pwa::fixtures;

    #[test]
    fn function_round_trip() {
        let f = fixtures::final_4_3_pair();
        let text = serde_json::to_string(&FunctionFile::from_function(&f)).unwrap();
        let back: FunctionFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_function().unwrap(), f);
    }

    #[test]
    fn rationals_as_text_or_integers() {
        let t: TermFile = serde_json::from_str(r#"{"a": "-3/6", "v": [2, "1/3"]}"#).unwrap();
        assert_eq!(t.a.0, rat(-1, 2));
        assert_eq!(t.v[0].0, int(2));
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"a":"-1/2","v":["2","1/3"]}"#);
    }

    #[test]
    fn floats_rejected() {
        let err = serde_json::from_str::<TermFile>(r#"{"a": 0.5, "v": [1]}"#).unwrap_err();
        assert!(err.to_string().contains("floating point"));
        assert!(serde_json::from_str::<TermFile>(r#"{"a": "1.5", "v": [1]}"#).is_err());
    }

    #[test]
    fn set_kinds() {
        let f = fixtures::final_4_3_pair();
        let cases = [
            r#"{"kind": "full"}"#,
            r#"{"kind": "box", "lo": [-1, -1], "hi": [1, 1]}"#,
            r#"{"kind": "polyunion", "pieces": [{"A": [[1, 0]], "b": ["10"]}]}"#,
            r#"{"kind": "cone", "A": [[-1, 1], [-1, -1]]}"#,
            r#"{"kind": "points", "points": [[1, 1], ["1/2", 3]]}"#,
            r#"{"kind": "strict_sublevel", "rho": "1"}"#,
        ];
        for text in cases {
            let file: SetFile = serde_json::from_str(text).unwrap();
            let set = file.to_set(&f).unwrap();
            let again = SetFile::from_set(&set).unwrap().to_set(&f).unwrap();
            assert_eq!(set, again, "{text}");
        }
        let bad: SetFile = serde_json::from_str(r#"{"kind": "full", "dim": 3}"#).unwrap();
        assert!(bad.to_set(&f).is_err());
        assert!(serde_json::from_str::<SetFile>(r#"{"kind": "ball"}"#).is_err());
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = parse_json::<FunctionFile>("f.json", b"{\n  \"dim\": 1,\n  \"pieces\": [\n}").unwrap_err();
        assert!(err.to_string().contains("f.json: line 4"));
    }
}
