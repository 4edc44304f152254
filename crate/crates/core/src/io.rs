//! Loading models, observations, subspaces and designs from files.
//!
//! Structured files are JSON or TOML, chosen by extension (anything other
//! than `.toml` is read as JSON). Observations may also be CSV trajectories
//! with `t,y` columns, which are projected onto the eigenbasis.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::processes::{bridge_model, project_trajectory, wiener_model, Grid};
use crate::spectral::{HVector, SpectralModel, Subspace};

pub fn read_structured<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    } else {
        Ok(serde_json::from_str(&text)?)
    }
}

/// `wiener:N`, `bridge:N`, or the path of a model file.
pub fn parse_model_spec(spec: &str) -> Result<SpectralModel> {
    if let Some((name, n)) = spec.split_once(':') {
        let builder = match name {
            "wiener" => Some(wiener_model as fn(usize) -> Result<SpectralModel>),
            "bridge" => Some(bridge_model as fn(usize) -> Result<SpectralModel>),
            _ => None,
        };
        if let Some(build) = builder {
            let n = n
                .parse()
                .map_err(|_| Error::Config(format!("bad truncation level in `{spec}`")))?;
            return build(n);
        }
    }
    match spec {
        "wiener" => wiener_model(256),
        "bridge" => bridge_model(256),
        path => read_structured(Path::new(path)),
    }
}

/// Sparse `[[mode, value], ...]` list.
pub type SparseEntries = Vec<(usize, f64)>;

#[derive(Deserialize)]
#[serde(untagged)]
enum VectorFile {
    Dense(Vec<f64>),
    Coeffs { coeffs: Vec<f64> },
    Sparse { modes: SparseEntries },
}

/// Observation or functional in eigenbasis coordinates.
///
/// A `.csv` file is a sampled trajectory `t,y` and needs an analytic basis.
pub fn load_vector(path: &Path, model: &SpectralModel) -> Result<HVector> {
    if path.extension().is_some_and(|e| e == "csv") {
        let mut reader = csv::Reader::from_path(path)?;
        let mut ts = Vec::new();
        let mut ys = Vec::new();
        for row in reader.deserialize() {
            let (t, y): (f64, f64) = row?;
            ts.push(t);
            ys.push(y);
        }
        return project_trajectory(model, &Grid::new(ts)?, &ys);
    }
    let y = match read_structured::<VectorFile>(path)? {
        VectorFile::Dense(c) | VectorFile::Coeffs { coeffs: c } => HVector::new(c)?,
        VectorFile::Sparse { modes } => HVector::from_modes(model.dim(), &modes)?,
    };
    if y.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            found: y.dim(),
        });
    }
    Ok(y)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SubspaceFile {
    Modes { modes: Vec<usize> },
    Frame { vectors: Vec<Vec<f64>> },
}

pub fn load_subspace(path: &Path, model: &SpectralModel) -> Result<Subspace> {
    match read_structured::<SubspaceFile>(path)? {
        SubspaceFile::Modes { modes } => Subspace::modes(model.dim(), &modes),
        SubspaceFile::Frame { vectors } => Subspace::frame(
            model,
            vectors.into_iter().map(HVector::new).collect::<Result<_>>()?,
        ),
    }
}

/// Comma-separated mode list such as `4,5,6`.
pub fn parse_modes(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Config(format!("`{s}` is not a mode index")))
        })
        .collect()
}

/// A mode list, or failing that the path of a subspace file.
pub fn parse_subspace(text: &str, model: &SpectralModel) -> Result<Subspace> {
    match parse_modes(text) {
        Ok(modes) => Subspace::modes(model.dim(), &modes),
        Err(_) => load_subspace(Path::new(text), model),
    }
}

/// Comma-separated `mode:value` pairs such as `4:1.41,7:-0.5`.
pub fn parse_sparse(text: &str) -> Result<SparseEntries> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let bad = || Error::Config(format!("`{item}` is not `mode:value`"));
            let (m, v) = item.trim().split_once(':').ok_or_else(bad)?;
            Ok((m.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

/// Comma-separated reals.
pub fn parse_reals(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Config(format!("`{s}` is not a number")))
        })
        .collect()
}

/// Design file: `{"columns": [[...], ...]}` in eigenbasis coordinates.
#[derive(Debug, Deserialize)]
pub struct DesignFile {
    pub columns: Vec<Vec<f64>>,
}

pub fn load_design(path: &Path) -> Result<Vec<HVector>> {
    let file: DesignFile = read_structured(path)?;
    file.columns.into_iter().map(HVector::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::BasisKind;
    use std::io::Write;

    fn temp_file(suffix: &str, body: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
        f.write_all(body.as_bytes()).unwrap();
        f
    }

    #[test]
    fn model_shorthands() {
        let w = parse_model_spec("wiener:12").unwrap();
        assert_eq!((w.dim(), w.basis()), (12, BasisKind::Wiener));
        assert_eq!(parse_model_spec("bridge").unwrap().dim(), 256);
        assert!(parse_model_spec("wiener:x").is_err());
        assert!(parse_model_spec("/nonexistent/model.json").is_err());
    }

    #[test]
    fn model_file_round_trip() {
        let m = parse_model_spec("bridge:5").unwrap();
        let f = temp_file(".json", &serde_json::to_string(&m).unwrap());
        assert_eq!(parse_model_spec(f.path().to_str().unwrap()).unwrap(), m);
        let f = temp_file(".toml", "dim = 2\neigenvalues = [1.0, 0.5]\n");
        let m = parse_model_spec(f.path().to_str().unwrap()).unwrap();
        assert_eq!(m.basis(), BasisKind::Abstract);
        let f = temp_file(".toml", "dim = 3\neigenvalues = [1.0, 0.5]\n");
        assert!(parse_model_spec(f.path().to_str().unwrap()).is_err());
    }

    #[test]
    fn vector_formats() {
        let m = parse_model_spec("wiener:3").unwrap();
        let dense = temp_file(".json", "[1.0, 2.0, 3.0]");
        let sparse = temp_file(".json", r#"{"modes": [[2, 5.0]]}"#);
        let short = temp_file(".json", "[1.0]");
        assert_eq!(load_vector(dense.path(), &m).unwrap(), HVector::from(vec![1.0, 2.0, 3.0]));
        assert_eq!(load_vector(sparse.path(), &m).unwrap(), HVector::from(vec![0.0, 5.0, 0.0]));
        assert!(load_vector(short.path(), &m).is_err());
    }

    #[test]
    fn trajectory_csv_is_projected() {
        let m = parse_model_spec("wiener:4").unwrap();
        let mut body = String::from("t,y\n");
        for i in 0..=2000 {
            let t = i as f64 / 2000.0;
            body.push_str(&format!("{t},{}\n", crate::processes::eval_basis(&m, 2, t).unwrap()));
        }
        let f = temp_file(".csv", &body);
        let y = load_vector(f.path(), &m).unwrap();
        assert!((y[1] - 1.0).abs() < 1e-5 && y[0].abs() < 1e-5);
    }

    #[test]
    fn list_parsers() {
        assert_eq!(parse_modes("4, 5,6").unwrap(), vec![4, 5, 6]);
        assert_eq!(parse_sparse("4:1.5,7:-2").unwrap(), vec![(4, 1.5), (7, -2.0)]);
        assert!(parse_sparse("4=1").is_err());
        assert_eq!(parse_reals("1,-0.5").unwrap(), vec![1.0, -0.5]);
        let m = parse_model_spec("wiener:8").unwrap();
        let f = temp_file(".json", r#"{"modes": [2, 3]}"#);
        let s = parse_subspace(f.path().to_str().unwrap(), &m).unwrap();
        assert_eq!(s.as_modes().unwrap().modes(), &[2, 3]);
    }
}
