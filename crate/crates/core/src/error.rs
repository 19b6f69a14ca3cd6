use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("UnpairedFace: face {tet}.{face} {msg}")]
    UnpairedFace { tet: usize, face: u8, msg: String },
    #[error("NonOrientable: {0}")]
    NonOrientable(String),
    #[error("CyclicTriangle: face {face} of tetrahedron {tet} is cyclically oriented")]
    CyclicTriangle { tet: usize, face: u8 },
    #[error("NonStandardDual: region dual to edge class {edge_class} is not a disc ({msg})")]
    NonStandardDual { edge_class: usize, msg: String },
    #[error("Disconnected: tetrahedron {0} is not reachable from tetrahedron 0")]
    Disconnected(usize),
    #[error("SelfAdjacentFace: face class {0} joins a tetrahedron to itself")]
    SelfAdjacentFace(usize),
    #[error("ResultNonStandard: {0}")]
    ResultNonStandard(String),
    #[error("NotApplicable: {0}")]
    NotApplicable(String),
    #[error("Stuck: no applicable move at step {0}")]
    Stuck(usize),
    #[error("InconsistentAnchor: {0}")]
    InconsistentAnchor(String),
    #[error("RelatorNotKilled: relator {0} does not map to 1")]
    RelatorNotKilled(usize),
    #[error("NotAcyclicNoBasis: homology in degree {0} is nonzero and no basis was supplied")]
    NotAcyclicNoBasis(usize),
    #[error("BasisRankMismatch: degree {degree} expects {expected} vectors, got {got}")]
    BasisRankMismatch { degree: usize, expected: usize, got: usize },
    #[error("TransportFailure: {0}")]
    TransportFailure(String),
    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// True for errors raised while reading or validating input.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnpairedFace { .. }
                | Error::NonOrientable(_)
                | Error::CyclicTriangle { .. }
                | Error::NonStandardDual { .. }
                | Error::Disconnected(_)
        )
    }

    /// Short machine name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "Syntax",
            Error::UnpairedFace { .. } => "UnpairedFace",
            Error::NonOrientable(_) => "NonOrientable",
            Error::CyclicTriangle { .. } => "CyclicTriangle",
            Error::NonStandardDual { .. } => "NonStandardDual",
            Error::Disconnected(_) => "Disconnected",
            Error::SelfAdjacentFace(_) => "SelfAdjacentFace",
            Error::ResultNonStandard(_) => "ResultNonStandard",
            Error::NotApplicable(_) => "NotApplicable",
            Error::Stuck(_) => "Stuck",
            Error::InconsistentAnchor(_) => "InconsistentAnchor",
            Error::RelatorNotKilled(_) => "RelatorNotKilled",
            Error::NotAcyclicNoBasis(_) => "NotAcyclicNoBasis",
            Error::BasisRankMismatch { .. } => "BasisRankMismatch",
            Error::TransportFailure(_) => "TransportFailure",
            Error::Usage(_) => "Usage",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
