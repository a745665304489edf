//! JSON grading files.
//!
//! ```json
//! {
//!   "group": "Z2",
//!   "n": 2,
//!   "components": [
//!     { "degree": "0", "basis": [[[1, 1, "1"]], [[2, 2, "1"]]] },
//!     { "degree": "1", "basis": [[[1, 2, "1"]]] }
//!   ]
//! }
//! ```
//!
//! Each basis matrix is a list of nonzero entries `[i, j, "p/q"]` with
//! `1 <= i <= j <= n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{raw_components, verify_grading, Grading};
use crate::group::GroupElement;
use crate::matrix::{Scalar, UTMatrix};
use crate::syntax::{parse_element, parse_group};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradingFile {
    pub group: String,
    pub n: usize,
    pub components: Vec<ComponentFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentFile {
    pub degree: String,
    pub basis: Vec<SparseMatrix>,
}

pub type SparseMatrix = Vec<(usize, usize, String)>;

pub fn sparse(m: &UTMatrix) -> SparseMatrix {
    m.nonzero_entries()
        .into_iter()
        .map(|(i, j, v)| (i, j, v.to_string()))
        .collect()
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    s.trim()
        .parse::<Scalar>()
        .map_err(|_| Error::Parse(format!("bad scalar {s:?}")))
}

pub fn dense(n: usize, entries: &[(usize, usize, String)]) -> Result<UTMatrix> {
    let mut m = UTMatrix::zero(n);
    for (i, j, v) in entries {
        if *i < 1 || i > j || *j > n {
            return Err(Error::IndexOutOfRange(format!("entry ({i},{j}) outside UJ_{n}")));
        }
        m.set(*i, *j, parse_scalar(v)?);
    }
    Ok(m)
}

impl GradingFile {
    pub fn from_grading(grading: &Grading) -> Self {
        GradingFile {
            group: grading.group().to_string(),
            n: grading.size(),
            components: raw_components(grading)
                .into_iter()
                .map(|(g, basis)| ComponentFile {
                    degree: g.to_string(),
                    basis: basis.iter().map(sparse).collect(),
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("grading file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Parses degrees and matrices, then runs the full grading verification.
    pub fn to_grading(&self) -> Result<Grading> {
        let group = parse_group(&self.group)?;
        let raw = self
            .components
            .iter()
            .map(|c| {
                let g: GroupElement = parse_element(&group, &c.degree)?;
                let basis = c
                    .basis
                    .iter()
                    .map(|m| dense(self.n, m))
                    .collect::<Result<Vec<_>>>()?;
                Ok((g, basis))
            })
            .collect::<Result<Vec<_>>>()?;
        verify_grading(&group, self.n, raw)
    }
}

pub fn read_grading(text: &str) -> Result<Grading> {
    GradingFile::parse(text)?.to_grading()
}

pub fn write_grading(grading: &Grading) -> String {
    GradingFile::from_grading(grading).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{elementary_grading, mt_grading};
    use crate::group::FiniteAbelianGroup;

    #[test]
    fn round_trip() {
        let g = FiniteAbelianGroup::cyclic(4);
        let t = g.element(&[2]).unwrap();
        let eta = vec![g.element(&[1]).unwrap(), g.element(&[3]).unwrap()];
        for gr in [elementary_grading(&g, &eta).unwrap(), mt_grading(&g, 4, &t, &eta).unwrap()] {
            assert_eq!(read_grading(&write_grading(&gr)).unwrap(), gr);
        }
    }

    #[test]
    fn documented_example_is_the_classical_grading() {
        let text = r#"{"group":"Z2","n":2,"components":[
            {"degree":"0","basis":[[[1,1,"1"]],[[2,2,"1"]]]},
            {"degree":"1","basis":[[[1,2,"1"]]]}]}"#;
        let g = FiniteAbelianGroup::cyclic(2);
        let expected = elementary_grading(&g, &[g.element(&[1]).unwrap()]).unwrap();
        assert_eq!(read_grading(text).unwrap(), expected);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(GradingFile::parse("{"), Err(Error::Parse(_))));
        let bad_scalar = r#"{"group":"Z2","n":1,"components":[{"degree":"0","basis":[[[1,1,"x"]]]}]}"#;
        assert!(matches!(read_grading(bad_scalar), Err(Error::Parse(_))));
        let bad_index = r#"{"group":"Z2","n":1,"components":[{"degree":"0","basis":[[[1,2,"1"]]]}]}"#;
        assert!(matches!(read_grading(bad_index), Err(Error::IndexOutOfRange(_))));
        let not_closed = r#"{"group":"Z2","n":1,"components":[{"degree":"1","basis":[[[1,1,"1"]]]}]}"#;
        assert!(matches!(read_grading(not_closed), Err(Error::NotAGrading(_))));
    }
}
