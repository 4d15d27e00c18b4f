//! JSON arrangement files.
//!
//! ```json
//! {"cameras": [[[1,0,0,0],[0,1,0,0],[0,0,1,"1/2"]], ...]}
//! {"kind": "translational", "t": [[0,0,0],[1,0,0]]}
//! {"kind": "euclidean", "q": [[1,0,0,0], ...], "t": [[0,0,0], ...]}
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::camera::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::Rational;

/// A rational entry written as an integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Entry::Int(v) => Ok(Rational::from_int(*v)),
            Entry::Text(s) => s.trim().parse(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        match (r.is_integer(), r.to_string().parse::<i64>()) {
            (true, Ok(v)) => Entry::Int(v),
            _ => Entry::Text(r.to_string()),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Int(v) => write!(f, "{v}"),
            Entry::Text(s) => write!(f, "{s}"),
        }
    }
}

pub type CameraSpec = Vec<Vec<Entry>>;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cameras: Option<Vec<CameraSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<Vec<Entry>>>,
}

fn vector<const N: usize>(v: &[Entry], what: &str) -> Result<[Rational; N]> {
    if v.len() != N {
        return Err(Error::Parse(format!("{what} must have {N} entries, got {}", v.len())));
    }
    let vals: Vec<Rational> = v.iter().map(Entry::to_rational).collect::<Result<_>>()?;
    Ok(vals.try_into().expect("length checked"))
}

impl ArrangementFile {
    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let kind = self.kind.as_deref().unwrap_or(if self.cameras.is_some() { "raw" } else { "translational" });
        match kind {
            "raw" => {
                let cams = self.cameras.as_ref().ok_or_else(|| Error::Parse("missing `cameras`".into()))?;
                let mats = cams
                    .iter()
                    .map(|rows| {
                        let rows: Vec<Vec<Rational>> = rows
                            .iter()
                            .map(|r| r.iter().map(Entry::to_rational).collect::<Result<_>>())
                            .collect::<Result<_>>()?;
                        QMatrix::from_rows(rows)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Arrangement::raw(mats)
            }
            "translational" => {
                let ts = self.t.as_ref().ok_or_else(|| Error::Parse("missing `t`".into()))?;
                let ts: Vec<[Rational; 3]> = ts.iter().map(|t| vector(t, "t")).collect::<Result<_>>()?;
                Arrangement::translational(&ts)
            }
            "euclidean" => {
                let ts = self.t.as_ref().ok_or_else(|| Error::Parse("missing `t`".into()))?;
                let qs = self.q.as_ref().ok_or_else(|| Error::Parse("missing `q`".into()))?;
                if ts.len() != qs.len() {
                    return Err(Error::Parse("`q` and `t` differ in length".into()));
                }
                let specs = qs
                    .iter()
                    .zip(ts)
                    .map(|(q, t)| Ok((vector(q, "q")?, vector(t, "t")?)))
                    .collect::<Result<Vec<_>>>()?;
                Arrangement::euclidean(&specs)
            }
            other => Err(Error::Parse(format!("unknown arrangement kind `{other}`"))),
        }
    }

    pub fn from_arrangement(arr: &Arrangement) -> Self {
        ArrangementFile {
            cameras: Some(
                arr.cameras()
                    .iter()
                    .map(|c| c.matrix().to_rows().iter().map(|r| r.iter().map(Entry::from_rational).collect()).collect())
                    .collect(),
            ),
            ..Default::default()
        }
    }
}

impl Arrangement {
    pub fn from_json(s: &str) -> Result<Self> {
        let file: ArrangementFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        file.to_arrangement()
    }

    /// Raw `{"cameras": ...}` form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ArrangementFile::from_arrangement(self)).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_and_raw_forms_agree() {
        let a = Arrangement::from_json(r#"{"kind":"translational","t":[[0,0,0],[1,"1/2",0]]}"#).unwrap();
        let b = Arrangement::from_json(&a.to_json()).unwrap();
        assert_eq!(a, b);
        assert!(a.to_json().contains("\"1/2\""));
        let c = Arrangement::from_json(r#"{"t":[[0,0,0],[1,"1/2",0]]}"#).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn euclidean_form() {
        let a = Arrangement::from_json(r#"{"kind":"euclidean","q":[[1,0,0,0],[0,1,0,0]],"t":[[0,0,0],[1,2,3]]}"#)
            .unwrap();
        assert_eq!(a.n(), 2);
        assert!(a.first_normalized());
    }

    #[test]
    fn rejects_bad_files() {
        for s in [
            r#"{"cameras":[[[1,0,0,0],[2,0,0,0],[0,0,1,0]],[[1,0,0,0],[0,1,0,0],[0,0,1,0]]]}"#,
            r#"{"cameras":[[[1,0,0,0],[0,1,0,0],[0,0,1,0]]]}"#,
            r#"{"kind":"translational","t":[[0,0],[1,0,0]]}"#,
            r#"{"kind":"translational","t":[[0,0,"x"],[1,0,0]]}"#,
            r#"{"kind":"spherical"}"#,
            r#"{"cameras":[], "extra": 1}"#,
            "not json",
        ] {
            assert!(Arrangement::from_json(s).is_err(), "{s}");
        }
    }
}
