//! JSON file formats for configurations, Hermitian forms and decorated
//! triangulations. Scalars are exact strings such as `"1/2-3i"`.
//!
//! Configuration:
//! `{"kind": "complete", "n": 3, "flags": [{"subspaces": [[["1","0","0"]], ...]}, ...]}`.
//! Each flag lists its subspaces from smallest to largest, each subspace as a
//! list of spanning vectors. Line-hyperplane flags give `[line, hyperplane]`,
//! planes give `[plane]`, isotropic lines give `[line]`, and complete flags give
//! any chain of subspaces whose dimensions run through `1..n-1`.
//!
//! Hermitian form: `{"matrix": [["0","0","1"], ...]}`.
//!
//! Triangulation: `{"n": 3, "tetrahedra": [{"flags": [flag, flag, flag, flag]}],
//! "gluings": [{"tet_a": 0, "face_a": 0, "tet_b": 1, "face_b": 1, "bijection": [1,0,2,3]}],
//! "paths": {"name": [[tet, face], ...]}}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flags::{
    CompleteConfig, ConfigKind, Configuration, Flag, FlagError, IsotropicLinesConfig, LineHyperplaneConfig, LineHyperplaneFlag,
    PlanesConfig,
};
use crate::numeric::{GaussianRational, Matrix, NumericError, ParseScalarError, Vector};
use crate::realforms::{HermitianForm, RealFormError};
use crate::triangulation::{Crossing, DecoratedTriangulation, Gluing, TriangulationError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemaError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid scalar at {path}: {source}")]
    Scalar { path: String, source: ParseScalarError },
    #[error("unknown configuration kind {0:?}")]
    UnknownKind(String),
    #[error("{path}: {message}")]
    Shape { path: String, message: String },
    #[error("{path}: {source}")]
    Flag { path: String, source: FlagError },
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("hermitian form: {0}")]
    Form(#[from] RealFormError),
    #[error("triangulation: {0}")]
    Triangulation(#[from] TriangulationError),
}

type Raw = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagEntry {
    pub subspaces: Vec<Raw>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub kind: String,
    pub n: usize,
    pub flags: Vec<FlagEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub matrix: Raw,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TetrahedronEntry {
    pub flags: Vec<FlagEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingEntry {
    pub tet_a: usize,
    pub face_a: usize,
    pub tet_b: usize,
    pub face_b: usize,
    pub bijection: [usize; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationFile {
    pub n: usize,
    pub tetrahedra: Vec<TetrahedronEntry>,
    pub gluings: Vec<GluingEntry>,
    #[serde(default)]
    pub paths: BTreeMap<String, Vec<[usize; 2]>>,
}

fn shape(path: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError::Shape { path: path.into(), message: message.into() }
}

fn parse_vector(raw: &[String], n: usize, path: &str) -> Result<Vector, SchemaError> {
    if raw.len() != n {
        return Err(shape(path, format!("vector has {} entries, expected {n}", raw.len())));
    }
    raw.iter()
        .enumerate()
        .map(|(k, s)| s.parse().map_err(|source| SchemaError::Scalar { path: format!("{path}[{k}]"), source }))
        .collect()
}

fn parse_span(raw: &Raw, n: usize, path: &str) -> Result<Matrix, SchemaError> {
    if raw.is_empty() {
        return Err(shape(path, "subspace has no spanning vectors"));
    }
    let vectors = raw.iter().enumerate().map(|(k, v)| parse_vector(v, n, &format!("{path}[{k}]"))).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_columns(n, &vectors)?)
}

fn flag_error(path: &str) -> impl Fn(FlagError) -> SchemaError + '_ {
    move |source| SchemaError::Flag { path: path.to_string(), source }
}

fn parse_spans(entry: &FlagEntry, n: usize, path: &str, count: Option<usize>) -> Result<Vec<Matrix>, SchemaError> {
    if let Some(c) = count {
        if entry.subspaces.len() != c {
            return Err(shape(path, format!("expected {c} subspaces, got {}", entry.subspaces.len())));
        }
    }
    entry.subspaces.iter().enumerate().map(|(k, s)| parse_span(s, n, &format!("{path}.subspaces[{k}]"))).collect()
}

fn parse_complete(entry: &FlagEntry, n: usize, path: &str) -> Result<Flag, SchemaError> {
    let flag = Flag::from_chain(n, &parse_spans(entry, n, path, None)?).map_err(flag_error(path))?;
    if !flag.is_complete() {
        return Err(shape(path, format!("not a complete flag: dimensions {:?}", flag.dims())));
    }
    Ok(flag)
}

fn single_vector(span: &Matrix, path: &str) -> Result<Vector, SchemaError> {
    if span.rank() != 1 {
        return Err(shape(path, "expected a line"));
    }
    Ok(span.columns().into_iter().find(|c| c.iter().any(|x| !num_traits::Zero::is_zero(x))).expect("rank one"))
}

/// Parses a configuration document.
pub fn parse_configuration(text: &str) -> Result<Configuration, SchemaError> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))?;
    configuration_from_file(&file)
}

pub fn configuration_from_file(file: &ConfigFile) -> Result<Configuration, SchemaError> {
    let kind = ConfigKind::parse(&file.kind).ok_or_else(|| SchemaError::UnknownKind(file.kind.clone()))?;
    let n = file.n;
    if n < 2 {
        return Err(shape("n", "ambient dimension must be at least 2"));
    }
    let path = |i: usize| format!("flags[{i}]");
    let indexed = || file.flags.iter().enumerate();
    Ok(match kind {
        ConfigKind::LineHyperplane => {
            let flags = indexed()
                .map(|(i, f)| {
                    let p = path(i);
                    let spans = parse_spans(f, n, &p, Some(2))?;
                    LineHyperplaneFlag::from_subspaces(&spans[0], &spans[1]).map_err(flag_error(&p))
                })
                .collect::<Result<_, _>>()?;
            Configuration::LineHyperplane(LineHyperplaneConfig::new(flags).map_err(flag_error("flags"))?)
        }
        ConfigKind::PlanesIn4 => {
            if n != 4 {
                return Err(shape("n", "planes-in-4 requires n = 4"));
            }
            let planes = indexed().map(|(i, f)| Ok(parse_spans(f, n, &path(i), Some(1))?.remove(0))).collect::<Result<_, SchemaError>>()?;
            Configuration::Planes(PlanesConfig::new(planes).map_err(flag_error("flags"))?)
        }
        ConfigKind::Complete => {
            let flags = indexed().map(|(i, f)| parse_complete(f, n, &path(i))).collect::<Result<_, _>>()?;
            Configuration::Complete(CompleteConfig::new(flags).map_err(flag_error("flags"))?)
        }
        ConfigKind::IsotropicLines => {
            let lines = indexed()
                .map(|(i, f)| {
                    let p = path(i);
                    single_vector(&parse_spans(f, n, &p, Some(1))?[0], &p)
                })
                .collect::<Result<_, _>>()?;
            Configuration::IsotropicLines(IsotropicLinesConfig::new(lines).map_err(flag_error("flags"))?)
        }
    })
}

fn raw_columns(m: &Matrix) -> Raw {
    m.columns().iter().map(|c| c.iter().map(GaussianRational::to_string).collect()).collect()
}

fn flag_entry(spans: &[Matrix]) -> FlagEntry {
    FlagEntry { subspaces: spans.iter().map(raw_columns).collect() }
}

fn complete_entry(f: &Flag) -> FlagEntry {
    flag_entry(&f.subspaces())
}

/// The document describing `c`; parsing it back gives an equal configuration
/// up to the choice of spanning vectors.
pub fn configuration_to_file(c: &Configuration) -> ConfigFile {
    let flags = match c {
        Configuration::LineHyperplane(x) => x
            .flags()
            .iter()
            .map(|f| flag_entry(&[Matrix::from_columns(f.n(), &[f.v().clone()]).expect("vector"), f.hyperplane_basis()]))
            .collect(),
        Configuration::Planes(x) => x.planes().iter().map(|w| flag_entry(std::slice::from_ref(w))).collect(),
        Configuration::Complete(x) => x.flags().iter().map(complete_entry).collect(),
        Configuration::IsotropicLines(x) => {
            x.lines().iter().map(|v| flag_entry(&[Matrix::from_columns(v.len(), &[v.clone()]).expect("vector")])).collect()
        }
    };
    ConfigFile { kind: c.kind().as_str().into(), n: c.n(), flags }
}

pub fn parse_form(text: &str) -> Result<HermitianForm, SchemaError> {
    let file: FormFile = serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))?;
    let n = file.matrix.len();
    let rows = file.matrix.iter().enumerate().map(|(i, r)| parse_vector(r, n, &format!("matrix[{i}]"))).collect::<Result<Vec<_>, _>>()?;
    Ok(HermitianForm::new(Matrix::from_rows(rows)?)?)
}

pub fn parse_triangulation(text: &str) -> Result<DecoratedTriangulation, SchemaError> {
    let file: TriangulationFile = serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))?;
    triangulation_from_file(&file)
}

pub fn triangulation_from_file(file: &TriangulationFile) -> Result<DecoratedTriangulation, SchemaError> {
    let n = file.n;
    let tetrahedra = file
        .tetrahedra
        .iter()
        .enumerate()
        .map(|(t, entry)| {
            if entry.flags.len() != 4 {
                return Err(shape(format!("tetrahedra[{t}]"), format!("expected 4 flags, got {}", entry.flags.len())));
            }
            let flags = entry
                .flags
                .iter()
                .enumerate()
                .map(|(v, f)| parse_complete(f, n, &format!("tetrahedra[{t}].flags[{v}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(std::array::from_fn(|k| flags[k].clone()))
        })
        .collect::<Result<Vec<[Flag; 4]>, _>>()?;
    let gluings = file
        .gluings
        .iter()
        .map(|g| Gluing { tet_a: g.tet_a, face_a: g.face_a, tet_b: g.tet_b, face_b: g.face_b, bijection: g.bijection })
        .collect();
    let paths = file
        .paths
        .iter()
        .map(|(name, steps)| (name.clone(), steps.iter().map(|&[tet, face]| Crossing { tet, face }).collect()))
        .collect();
    Ok(DecoratedTriangulation::new(tetrahedra, gluings, paths)?)
}

pub fn triangulation_to_file(t: &DecoratedTriangulation) -> TriangulationFile {
    TriangulationFile {
        n: t.n(),
        tetrahedra: t.tetrahedra().iter().map(|tet| TetrahedronEntry { flags: tet.iter().map(complete_entry).collect() }).collect(),
        gluings: t
            .gluings()
            .iter()
            .map(|g| GluingEntry { tet_a: g.tet_a, face_a: g.face_a, tet_b: g.tet_b, face_b: g.face_b, bijection: g.bijection })
            .collect(),
        paths: t.paths().iter().map(|(k, v)| (k.clone(), v.iter().map(|c| [c.tet, c.face]).collect())).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn line_hyperplane_document() {
        let text = r#"{"kind": "line-hyperplane", "n": 3, "flags": [
            {"subspaces": [[["1","0","0"]], [["1","0","0"], ["0","1","0"]]]},
            {"subspaces": [[["0","1","0"]], [["0","1","0"], ["0","0","1"]]]},
            {"subspaces": [[["0","0","1"]], [["0","0","1"], ["1","0","0"]]]}]}"#;
        let c = parse_configuration(text).unwrap();
        assert_eq!(c.kind(), ConfigKind::LineHyperplane);
        assert_eq!(c.as_line_hyperplane().unwrap().r(), 3);
    }

    #[test]
    fn rejections() {
        assert!(matches!(parse_configuration("{"), Err(SchemaError::Json(_))));
        assert!(matches!(parse_configuration(r#"{"kind": "cubes", "n": 3, "flags": []}"#), Err(SchemaError::UnknownKind(_))));
        let bad_scalar = r#"{"kind": "isotropic-lines", "n": 2, "flags": [{"subspaces": [[["1","x"]]]}]}"#;
        assert!(matches!(parse_configuration(bad_scalar), Err(SchemaError::Scalar { .. })));
        let not_in = r#"{"kind": "line-hyperplane", "n": 2, "flags": [{"subspaces": [[["1","0"]], [["0","1"]]]}]}"#;
        assert!(matches!(parse_configuration(not_in), Err(SchemaError::Flag { .. })));
        assert!(matches!(parse_form(r#"{"matrix": [["1","i"],["i","1"]]}"#), Err(SchemaError::Form(RealFormError::NotHermitian))));
    }

    #[test]
    fn round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let c = Configuration::Complete(sample::generic_complete_config(&mut rng, 4, 3, 3));
        let text = serde_json::to_string(&configuration_to_file(&c)).unwrap();
        let back = parse_configuration(&text).unwrap();
        let same = back.as_complete().unwrap().flags().iter().zip(c.as_complete().unwrap().flags()).all(|(a, b)| a.same_flag(b));
        assert!(same);

        let flags = sample::generic_complete_config(&mut rng, 3, 4, 3);
        let g = sample::special_linear(&mut rng, 3, 4);
        let t = DecoratedTriangulation::doubled_tetrahedron(std::array::from_fn(|k| flags.flags()[k].clone()), &g).unwrap();
        let text = serde_json::to_string(&triangulation_to_file(&t)).unwrap();
        let back = parse_triangulation(&text).unwrap();
        assert_eq!(back.gluings(), t.gluings());
    }
}
