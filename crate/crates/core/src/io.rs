//! JSON laminate files.
//!
//! ```json
//! {"breakpoints": [-1, 0, 1], "angles_deg": [0, 90], "name": "cross-ply"}
//! ```
//!
//! Angles are stored in degrees and converted to radians on load. Unknown
//! fields are rejected.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laminate::{normalize_breakpoints, StepLaminate};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaminateFile {
    pub breakpoints: Vec<f64>,
    pub angles_deg: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl LaminateFile {
    pub fn from_laminate(t: &StepLaminate, name: Option<String>) -> Self {
        Self {
            breakpoints: t.breakpoints().to_vec(),
            angles_deg: t.angles().iter().map(|a| a.to_degrees()).collect(),
            name,
        }
    }

    /// Converts to radians and validates. With `normalize`, the breakpoints
    /// are first mapped affinely onto `[-1, 1]`.
    pub fn to_laminate(&self, normalize: bool) -> Result<StepLaminate> {
        let breakpoints = if normalize {
            normalize_breakpoints(&self.breakpoints)?
        } else {
            self.breakpoints.clone()
        };
        let angles = self.angles_deg.iter().map(|d| d.to_radians()).collect();
        StepLaminate::new(breakpoints, angles)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("laminate file serializes")
    }
}

pub fn read_laminate_file(path: impl AsRef<Path>) -> Result<LaminateFile> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    LaminateFile::from_json(&text)
        .map_err(|e| Error::Parse(format!("{}: {}", path.display(), e)))
}

pub fn load_laminate(path: impl AsRef<Path>, normalize: bool) -> Result<StepLaminate> {
    read_laminate_file(path)?.to_laminate(normalize)
}

pub fn save_laminate(t: &StepLaminate, path: impl AsRef<Path>) -> Result<()> {
    save_laminate_named(t, None, path)
}

pub fn save_laminate_named(
    t: &StepLaminate,
    name: Option<String>,
    path: impl AsRef<Path>,
) -> Result<()> {
    let mut text = LaminateFile::from_laminate(t, name).to_json();
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_and_two_ply() {
        let t = LaminateFile::from_json(r#"{"breakpoints":[-1,1],"angles_deg":[0]}"#)
            .unwrap()
            .to_laminate(false)
            .unwrap();
        assert_eq!(t.angles(), &[0.0]);

        let t = LaminateFile::from_json(r#"{"breakpoints":[-1,0,1],"angles_deg":[0,90]}"#)
            .unwrap()
            .to_laminate(false)
            .unwrap();
        assert_eq!(t.ply_count(), 2);
        assert_eq!(t.angles()[1], std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn length_mismatch_is_an_invariant_violation() {
        let err = LaminateFile::from_json(r#"{"breakpoints":[-1,1],"angles_deg":[0,90]}"#)
            .unwrap()
            .to_laminate(false)
            .unwrap_err();
        assert!(matches!(
            err,
            Error::InvariantViolation {
                field: "angles",
                ..
            }
        ));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err =
            LaminateFile::from_json(r#"{"breakpoints":[-1,1],"angles":[0]}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field"), "{err}");
        assert!(LaminateFile::from_json("not json").is_err());
    }

    #[test]
    fn normalization_is_opt_in() {
        let file = LaminateFile::from_json(r#"{"breakpoints":[0,1,4],"angles_deg":[0,45]}"#)
            .unwrap();
        assert!(file.to_laminate(false).is_err());
        let t = file.to_laminate(true).unwrap();
        assert_eq!(t.breakpoints(), &[-1.0, -0.5, 1.0]);
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("lam.json");
        let t = StepLaminate::new(vec![-1.0, -0.123_456_789, 0.7, 1.0], vec![0.1, -2.9, 3.1])
            .unwrap();
        save_laminate_named(&t, Some("mixed".into()), &path).unwrap();
        let file = read_laminate_file(&path).unwrap();
        assert_eq!(file.name.as_deref(), Some("mixed"));
        let back = file.to_laminate(false).unwrap();
        assert_eq!(back.breakpoints(), t.breakpoints());
        for (a, b) in back.angles().iter().zip(t.angles()) {
            assert!((a - b).abs() <= 1e-15 * b.abs().max(1.0));
        }
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("lam.json");
        let t = StepLaminate::constant(0.0).unwrap();
        assert!(matches!(save_laminate(&t, &path), Err(Error::Io(_))));
        assert!(matches!(load_laminate(&path, false), Err(Error::Io(_))));
    }
}
