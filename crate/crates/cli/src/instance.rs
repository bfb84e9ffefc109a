use std::fmt;
use std::path::Path;

use glaurent::{ActionSpec, DegreeVector, Error, IntMatrix};
use num_bigint::BigInt;
use serde::Deserialize;

/// On-disk description of a grading.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub name: Option<String>,
    pub p: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
    pub r: usize,
    pub s: usize,
    #[serde(rename = "L")]
    pub weights: Vec<Vec<i64>>,
}

#[derive(Debug)]
pub enum LoadError {
    /// Unreadable file, malformed document or inconsistent dimensions.
    Parse(String),
    /// Well-formed but not a faithful action with valid torsion orders.
    Invalid(Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Parse(msg) => write!(f, "parse error: {msg}"),
            LoadError::Invalid(e) => write!(f, "invalid instance: {e}"),
        }
    }
}

pub struct Instance {
    pub name: String,
    pub spec: ActionSpec,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, LoadError> {
        toml::from_str(text).map_err(|e| LoadError::Parse(e.message().to_string()))
    }

    pub fn into_instance(self, fallback_name: &str) -> Result<Instance, LoadError> {
        let m = self.p + self.torsion.len();
        let n = self.r + self.s;
        if self.weights.len() != m {
            return Err(LoadError::Parse(format!(
                "L has {} rows, expected p + |torsion| = {m}",
                self.weights.len()
            )));
        }
        if let Some((i, row)) = self.weights.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(LoadError::Parse(format!(
                "row {} of L has {} entries, expected r + s = {n}",
                i + 1,
                row.len()
            )));
        }
        let weights = IntMatrix::from_rows(&self.weights, n).map_err(|e| LoadError::Parse(e.to_string()))?;
        let torsion = self.torsion.iter().map(|&d| BigInt::from(d)).collect();
        let spec = ActionSpec::new(self.r, self.s, self.p, torsion, weights).map_err(|e| match e {
            Error::DimensionMismatch { .. } => LoadError::Parse(e.to_string()),
            other => LoadError::Invalid(other),
        })?;
        Ok(Instance {
            name: self.name.unwrap_or_else(|| fallback_name.to_string()),
            spec,
        })
    }
}

pub fn load(path: &Path) -> Result<Instance, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Parse(format!("{}: {e}", path.display())))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
    InstanceFile::parse(&text)?.into_instance(stem)
}

/// Splits `a1,a2,...` into the torus part and the torsion residues.
pub fn parse_degree(spec: &ActionSpec, text: &str) -> Result<DegreeVector, LoadError> {
    let values = text
        .split(',')
        .map(|t| t.trim().parse::<BigInt>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| LoadError::Parse(format!("degree {text:?}: {e}")))?;
    if values.len() != spec.m() {
        return Err(LoadError::Parse(format!(
            "degree has {} entries, expected {}",
            values.len(),
            spec.m()
        )));
    }
    spec.degree_from_lift(&values).map_err(|e| LoadError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let ok = InstanceFile::parse("p = 1\nr = 2\ns = 0\nL = [[1, 1]]\n").unwrap();
        let inst = ok.into_instance("x").unwrap();
        assert_eq!(inst.name, "x");
        assert_eq!(inst.spec.n(), 2);

        let bad_rows = InstanceFile::parse("p = 1\nr = 2\ns = 0\nL = [[1, 1], [0, 1]]\n").unwrap();
        assert!(matches!(bad_rows.into_instance("x"), Err(LoadError::Parse(_))));

        let unfaithful = InstanceFile::parse("p = 2\nr = 2\ns = 0\nL = [[1, 1], [2, 2]]\n").unwrap();
        assert!(matches!(unfaithful.into_instance("x"), Err(LoadError::Invalid(_))));

        let bad_torsion = InstanceFile::parse("p = 0\ntorsion = [1]\nr = 2\ns = 0\nL = [[1, 1]]\n").unwrap();
        assert!(matches!(bad_torsion.into_instance("x"), Err(LoadError::Invalid(_))));

        assert!(InstanceFile::parse("p = 1\nr = 2\nL = [[1, 1]]\n").is_err());
        assert!(InstanceFile::parse("p = 1\nr = 2\ns = 0\nL = [[1, 1]]\nq = 3\n").is_err());
    }

    #[test]
    fn degrees() {
        let inst = InstanceFile::parse("p = 1\ntorsion = [2]\nr = 2\ns = 0\nL = [[1, 1], [1, 0]]\n")
            .unwrap()
            .into_instance("x")
            .unwrap();
        let a = parse_degree(&inst.spec, "-3, 5").unwrap();
        assert_eq!(a.free, vec![BigInt::from(-3)]);
        assert_eq!(a.torsion, vec![BigInt::from(1)]);
        assert!(parse_degree(&inst.spec, "1").is_err());
        assert!(parse_degree(&inst.spec, "1,x").is_err());
    }
}
