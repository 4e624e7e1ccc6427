//! Named group builders and group-spec files.
//!
//! Entry names: `a<n>` (alternating), `s<n>` (symmetric), `d<2n>` (dihedral
//! of order `2n`, acting on an `n`-gon), `z<n>` (cyclic), `q8`,
//! `psl2_<q>`, and `file:<path>`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use crate::gf::{prime_power, FiniteField};
use crate::group::GroupSpec;
use crate::perm::{PermError, Permutation};

pub const MAX_ALTERNATING: u32 = 9;
pub const MAX_SYMMETRIC: u32 = 9;
pub const PSL2_FIELDS: [u32; 10] = [4, 5, 7, 8, 9, 11, 13, 16, 17, 19];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown corpus entry {0:?}")]
    UnknownEntry(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: line {line}, column {column}: {message}")]
    Json {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: generators[{index}]: {source}")]
    Generator {
        path: PathBuf,
        index: usize,
        source: PermError,
    },
    #[error("{path}: {message}")]
    Spec { path: PathBuf, message: String },
    #[error("{name}: built order {found}, expected {expected}")]
    OrderMismatch {
        name: String,
        expected: u64,
        found: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builder {
    Alternating(u32),
    Symmetric(u32),
    /// Symmetries of an `n`-gon, order `2n`.
    Dihedral(u32),
    Quaternion8,
    Cyclic(u32),
    Psl2(u32),
    FromFile(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub builder: Builder,
    pub expected_order: Option<u64>,
}

fn factorial(n: u32) -> u64 {
    (1..=u64::from(n)).product()
}

impl Builder {
    pub fn expected_order(&self) -> Option<u64> {
        Some(match *self {
            Builder::Alternating(n) if n >= 2 => factorial(n) / 2,
            Builder::Alternating(_) => 1,
            Builder::Symmetric(n) => factorial(n),
            Builder::Dihedral(n) => 2 * u64::from(n),
            Builder::Quaternion8 => 8,
            Builder::Cyclic(n) => u64::from(n),
            Builder::Psl2(q) => {
                let q = u64::from(q);
                q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 }
            }
            Builder::FromFile(_) => return None,
        })
    }

    pub fn build(&self, name: &str) -> Result<GroupSpec, CorpusError> {
        let generators = match self {
            Builder::Alternating(n) => alternating(*n)?,
            Builder::Symmetric(n) => symmetric(*n)?,
            Builder::Dihedral(n) => dihedral(*n)?,
            Builder::Quaternion8 => quaternion8(),
            Builder::Cyclic(n) => cyclic(*n)?,
            Builder::Psl2(q) => return build_psl2(*q),
            Builder::FromFile(path) => return load_group_spec(path),
        };
        Ok(GroupSpec::new(name, generators))
    }
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, builder: Builder) -> Self {
        let expected_order = builder.expected_order();
        Self {
            name: name.into(),
            builder,
            expected_order,
        }
    }

    pub fn spec(&self) -> Result<GroupSpec, CorpusError> {
        self.builder.build(&self.name)
    }

    /// Compares a built group's order against the expected one.
    pub fn check_order(&self, order: usize) -> Result<(), CorpusError> {
        match self.expected_order {
            Some(expected) if expected != order as u64 => Err(CorpusError::OrderMismatch {
                name: self.name.clone(),
                expected,
                found: order as u64,
            }),
            _ => Ok(()),
        }
    }
}

impl FromStr for CorpusEntry {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let unknown = || CorpusError::UnknownEntry(s.to_string());
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(CorpusEntry::new(s, Builder::FromFile(PathBuf::from(path))));
        }
        if s == "q8" {
            return Ok(CorpusEntry::new(s, Builder::Quaternion8));
        }
        let number = |rest: &str| rest.parse::<u32>().map_err(|_| unknown());
        let builder = if let Some(q) = s.strip_prefix("psl2_") {
            Builder::Psl2(number(q)?)
        } else if let Some(n) = s.strip_prefix('a') {
            Builder::Alternating(number(n)?)
        } else if let Some(n) = s.strip_prefix('s') {
            Builder::Symmetric(number(n)?)
        } else if let Some(n) = s.strip_prefix('d') {
            let order = number(n)?;
            if order % 2 != 0 {
                return Err(CorpusError::OutOfRange(format!(
                    "{s}: dihedral order must be even"
                )));
            }
            Builder::Dihedral(order / 2)
        } else if let Some(n) = s.strip_prefix('z') {
            Builder::Cyclic(number(n)?)
        } else {
            return Err(unknown());
        };
        Ok(CorpusEntry::new(s, builder))
    }
}

impl fmt::Display for CorpusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn cycle(degree: usize, points: impl IntoIterator<Item = u32>) -> Permutation {
    let pts: Vec<u32> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[&pts]).expect("valid cycle")
}

fn alternating(n: u32) -> Result<Vec<Permutation>, CorpusError> {
    if n == 0 || n > MAX_ALTERNATING {
        return Err(CorpusError::OutOfRange(format!(
            "alternating degree {n} not in 1..={MAX_ALTERNATING}"
        )));
    }
    let d = n as usize;
    if n < 3 {
        return Ok(vec![Permutation::identity(d)]);
    }
    // (0 1 2) with the n-cycle (n odd) or the (n-1)-cycle on 1..n (n even)
    let long = if n % 2 == 1 {
        cycle(d, 0..n)
    } else {
        cycle(d, 1..n)
    };
    Ok(vec![cycle(d, 0..3), long])
}

fn symmetric(n: u32) -> Result<Vec<Permutation>, CorpusError> {
    if n == 0 || n > MAX_SYMMETRIC {
        return Err(CorpusError::OutOfRange(format!(
            "symmetric degree {n} not in 1..={MAX_SYMMETRIC}"
        )));
    }
    let d = n as usize;
    if n == 1 {
        return Ok(vec![Permutation::identity(1)]);
    }
    Ok(vec![cycle(d, 0..2), cycle(d, 0..n)])
}

fn dihedral(n: u32) -> Result<Vec<Permutation>, CorpusError> {
    if n < 3 {
        return Err(CorpusError::OutOfRange(format!(
            "dihedral group needs an n-gon with n >= 3, got n = {n}"
        )));
    }
    let d = n as usize;
    let reflection = Permutation::new((0..n).map(|i| (n - i) % n).collect()).expect("bijection");
    Ok(vec![cycle(d, 0..n), reflection])
}

fn cyclic(n: u32) -> Result<Vec<Permutation>, CorpusError> {
    if n == 0 {
        return Err(CorpusError::OutOfRange(
            "cyclic order must be positive".into(),
        ));
    }
    if n == 1 {
        return Ok(vec![Permutation::identity(1)]);
    }
    Ok(vec![cycle(n as usize, 0..n)])
}

/// Right-regular representation of Q8. Points 0..8 are
/// `1, -1, i, -i, j, -j, k, -k`; generators are `x ↦ x·i` and `x ↦ x·j`.
pub fn quaternion8() -> Vec<Permutation> {
    let right_i = Permutation::new(vec![2, 3, 1, 0, 7, 6, 4, 5]).expect("bijection");
    let right_j = Permutation::new(vec![4, 5, 6, 7, 1, 0, 3, 2]).expect("bijection");
    vec![right_i, right_j]
}

/// PSL(2, q) acting on the projective line: points `0..q` are field
/// elements and point `q` is ∞. Generators are `x ↦ x + 1`, `x ↦ −1/x`, and
/// `x ↦ ζ²x` for a primitive `ζ`; the last is needed when `q` is not prime,
/// since the first two only generate PSL(2, p) there.
pub fn build_psl2(q: u32) -> Result<GroupSpec, CorpusError> {
    if !PSL2_FIELDS.contains(&q) || prime_power(q).is_none() {
        return Err(CorpusError::OutOfRange(format!(
            "psl2 field size {q} not in {PSL2_FIELDS:?}"
        )));
    }
    let field = FiniteField::new(q).expect("prime power");
    let inf = q;
    let translate: Vec<u32> = (0..=q)
        .map(|x| if x == inf { inf } else { field.add(x, 1) })
        .collect();
    let invert: Vec<u32> = (0..=q)
        .map(|x| match x {
            x if x == inf => 0,
            0 => inf,
            x => field.neg(field.inv(x).expect("nonzero")),
        })
        .collect();
    let zeta = field.primitive_element();
    let square = field.mul(zeta, zeta);
    let dilate: Vec<u32> = (0..=q)
        .map(|x| if x == inf { inf } else { field.mul(square, x) })
        .collect();
    let generators = [translate, invert, dilate]
        .into_iter()
        .map(|v| Permutation::new(v).expect("field maps are bijections"))
        .collect();
    Ok(GroupSpec::new(format!("psl2_{q}"), generators))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    name: String,
    degree: usize,
    generators: Vec<Vec<u32>>,
}

pub fn parse_group_spec(text: &str, path: &Path) -> Result<GroupSpec, CorpusError> {
    let raw: SpecFile = serde_json::from_str(text).map_err(|e| CorpusError::Json {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.generators.is_empty() {
        return Err(CorpusError::Spec {
            path: path.to_path_buf(),
            message: "generators: list is empty".into(),
        });
    }
    let generators = raw
        .generators
        .into_iter()
        .enumerate()
        .map(|(index, images)| {
            if images.len() != raw.degree {
                return Err(CorpusError::Spec {
                    path: path.to_path_buf(),
                    message: format!(
                        "generators[{index}]: has {} images, degree is {}",
                        images.len(),
                        raw.degree
                    ),
                });
            }
            Permutation::new(images).map_err(|source| CorpusError::Generator {
                path: path.to_path_buf(),
                index,
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupSpec::new(raw.name, generators))
}

/// Reads a group-spec JSON file:
/// `{"name": str, "degree": int, "generators": [[int, ...], ...]}`.
pub fn load_group_spec(path: &Path) -> Result<GroupSpec, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_group_spec(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate;

    fn order_of(entry: &str) -> usize {
        let e: CorpusEntry = entry.parse().unwrap();
        let g = enumerate(&e.spec().unwrap()).unwrap();
        e.check_order(g.order()).unwrap();
        g.order()
    }

    #[test]
    fn psl2_orders() {
        assert_eq!(order_of("psl2_5"), 60);
        assert_eq!(order_of("psl2_7"), 168);
        assert_eq!(order_of("psl2_4"), 60);
        assert_eq!(order_of("psl2_8"), 504);
        assert_eq!(order_of("psl2_9"), 360);
    }

    #[test]
    fn psl2_rejects_bad_fields() {
        for q in [2, 3, 6, 10, 23, 25] {
            assert!(matches!(build_psl2(q), Err(CorpusError::OutOfRange(_))));
        }
    }

    #[test]
    fn named_entries() {
        for (name, order) in [
            ("a4", 12),
            ("a5", 60),
            ("a6", 360),
            ("s3", 6),
            ("s4", 24),
            ("s5", 120),
            ("d12", 12),
            ("d8", 8),
            ("z6", 6),
            ("z1", 1),
            ("q8", 8),
            ("a1", 1),
        ] {
            assert_eq!(order_of(name), order, "{name}");
        }
    }

    #[test]
    fn entry_parse_errors() {
        assert!(matches!(
            "x7".parse::<CorpusEntry>(),
            Err(CorpusError::UnknownEntry(_))
        ));
        assert!(matches!(
            "a".parse::<CorpusEntry>(),
            Err(CorpusError::UnknownEntry(_))
        ));
        assert!(matches!(
            "d7".parse::<CorpusEntry>(),
            Err(CorpusError::OutOfRange(_))
        ));
        let a10: CorpusEntry = "a10".parse().unwrap();
        assert!(matches!(a10.spec(), Err(CorpusError::OutOfRange(_))));
        assert!(matches!(
            "d4".parse::<CorpusEntry>().unwrap().spec(),
            Err(CorpusError::OutOfRange(_))
        ));
    }

    #[test]
    fn spec_file_parsing() {
        let path = Path::new("g.json");
        let ok = r#"{"name": "s3", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}"#;
        let spec = parse_group_spec(ok, path).unwrap();
        assert_eq!(spec.name, "s3");
        assert_eq!(enumerate(&spec).unwrap().order(), 6);

        let repeated = r#"{"name": "x", "degree": 3, "generators": [[1, 0, 2], [1, 1, 0]]}"#;
        let err = parse_group_spec(repeated, path).unwrap_err();
        assert!(matches!(err, CorpusError::Generator { index: 1, .. }));
        assert!(err.to_string().contains("generators[1]"));

        let short = r#"{"name": "x", "degree": 4, "generators": [[1, 0, 2]]}"#;
        assert!(parse_group_spec(short, path)
            .unwrap_err()
            .to_string()
            .contains("generators[0]"));

        let broken = "{\"name\": \"x\",\n \"degree\": 3,\n \"generators\": [[1, 0, 2],]}";
        match parse_group_spec(broken, path).unwrap_err() {
            CorpusError::Json { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
    }
}
