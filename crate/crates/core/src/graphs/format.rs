use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{rank_sums, GraphError, GraphSpec, Representation};
use crate::exactnum::{Basis, ExactError, FieldElement};

pub const FORMAT_VERSION: u32 = 1;

/// On-disk form of a representation together with the graph it represents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub format_version: u32,
    pub graph: GraphSpec,
    pub basis: Vec<String>,
    pub ranks: Vec<Vec<String>>,
    pub thresholds: Vec<Vec<String>>,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("unsupported format_version {0}")]
    Version(u32),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<ExactError> for FormatError {
    fn from(e: ExactError) -> Self {
        FormatError::Graph(e.into())
    }
}

impl RepresentationFile {
    pub fn new(graph: &GraphSpec, rep: &Representation) -> Self {
        RepresentationFile {
            format_version: FORMAT_VERSION,
            graph: graph.clone(),
            basis: rep.basis().to_strings(),
            ranks: rep.ranks().iter().map(FieldElement::coeff_strings).collect(),
            thresholds: rep.thresholds().iter().map(FieldElement::coeff_strings).collect(),
        }
    }

    /// Decodes the numbers and checks that there is one rank per vertex.
    pub fn decode(&self) -> Result<(GraphSpec, Representation), FormatError> {
        if self.format_version != FORMAT_VERSION {
            return Err(FormatError::Version(self.format_version));
        }
        let basis = Arc::new(Basis::parse_strings(&self.basis).map_err(ExactError::from)?);
        let parse = |items: &Vec<Vec<String>>| -> Result<Vec<FieldElement>, ExactError> {
            items.iter().map(|c| FieldElement::parse_coeffs(&basis, c)).collect()
        };
        let ranks = parse(&self.ranks)?;
        let thresholds = parse(&self.thresholds)?;
        if ranks.len() != self.graph.vertex_count() {
            return Err(GraphError::VertexCountMismatch {
                graph: self.graph.vertex_count(),
                ranks: ranks.len(),
            }
            .into());
        }
        Ok((self.graph.clone(), Representation::new(basis, ranks, thresholds)?))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Parses and decodes a representation file in one step.
pub fn parse_representation(s: &str) -> Result<(GraphSpec, Representation), FormatError> {
    RepresentationFile::from_json(s)?.decode()
}

/// Audit dump of the edge and nonedge rank sums, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumsFile {
    pub format_version: u32,
    pub basis: Vec<String>,
    pub edge_sums: Vec<Vec<String>>,
    pub nonedge_sums: Vec<Vec<String>>,
}

impl SumsFile {
    pub fn new(graph: &GraphSpec, rep: &Representation) -> Result<Self, GraphError> {
        let mut sums = rank_sums(rep, graph)?;
        sums.edge.sort();
        sums.nonedge.sort();
        let coeffs = |v: &[FieldElement]| v.iter().map(FieldElement::coeff_strings).collect();
        Ok(SumsFile {
            format_version: FORMAT_VERSION,
            basis: rep.basis().to_strings(),
            edge_sums: coeffs(&sums.edge),
            nonedge_sums: coeffs(&sums.nonedge),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn sample() -> (GraphSpec, Representation) {
        let g = GraphSpec::disjoint_cliques(1, 3).unwrap();
        let rep = Representation::from_rationals(&[int(2), int(4), int(6)], &[int(5), int(7), int(8), int(11)]).unwrap();
        (g, rep)
    }

    #[test]
    fn round_trip_is_exact() {
        let (g, rep) = sample();
        let file = RepresentationFile::new(&g, &rep);
        let text = file.to_json();
        assert_eq!(RepresentationFile::from_json(&text).unwrap(), file);
        assert_eq!(parse_representation(&text).unwrap(), (g, rep));
        assert!(text.contains("\"format_version\": 1"));
        assert!(text.contains("\"6/1\""));
    }

    #[test]
    fn rejects_bad_files() {
        let (g, rep) = sample();
        let mut file = RepresentationFile::new(&g, &rep);
        file.ranks.pop();
        assert!(matches!(
            file.decode(),
            Err(FormatError::Graph(GraphError::VertexCountMismatch { graph: 3, ranks: 2 }))
        ));
        let mut file = RepresentationFile::new(&g, &rep);
        file.format_version = 2;
        assert!(matches!(file.decode(), Err(FormatError::Version(2))));
        let mut file = RepresentationFile::new(&g, &rep);
        file.thresholds.swap(0, 1);
        assert!(file.decode().is_err());
        let mut file = RepresentationFile::new(&g, &rep);
        file.ranks[0] = vec!["1/2".into(), "1/1".into()];
        assert!(file.decode().is_err());
        assert!(RepresentationFile::from_json("{\"format_version\":1}").is_err());
    }

    #[test]
    fn sums_are_sorted() {
        let (g, rep) = sample();
        let sums = SumsFile::new(&g, &rep).unwrap();
        assert_eq!(sums.edge_sums, vec![vec!["6/1"], vec!["8/1"], vec!["10/1"]]);
        assert!(sums.nonedge_sums.is_empty());
    }
}
