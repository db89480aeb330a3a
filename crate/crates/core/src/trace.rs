//! Per-iteration records emitted by the scan.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geom::Point;

/// Which construction produced an iteration's subpath.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    #[serde(rename = "C1.1")]
    C1_1,
    #[serde(rename = "C1.2")]
    C1_2,
    #[serde(rename = "C1.3-by")]
    C1_3By,
    #[serde(rename = "C1.3-by'")]
    C1_3ByPrime,
    #[serde(rename = "C2.1")]
    C2_1,
    #[serde(rename = "C2.2-l'")]
    C2_2LPrime,
    #[serde(rename = "C2.2-r'")]
    C2_2RPrime,
    #[serde(rename = "C2.2-v")]
    C2_2V,
    #[serde(rename = "C3a.1-cy")]
    C3a1Cy,
    #[serde(rename = "C3a.1-cy'")]
    C3a1CyPrime,
    #[serde(rename = "C3a.2")]
    C3a2,
    #[serde(rename = "C3b-l'")]
    C3bLPrime,
    #[serde(rename = "C3b-r'")]
    C3bRPrime,
    #[serde(rename = "C3b-al")]
    C3bAl,
    #[serde(rename = "C3b-z-right")]
    C3bZRight,
    #[serde(rename = "C3b-d")]
    C3bD,
    #[serde(rename = "C3b-e")]
    C3bE,
    #[serde(rename = "C3b-f")]
    C3bF,
    #[serde(rename = "DEGEN-SOLVER")]
    DegenSolver,
    #[serde(rename = "FINAL-TAIL")]
    FinalTail,
}

impl CaseId {
    pub const ALL: [CaseId; 20] = [
        CaseId::C1_1,
        CaseId::C1_2,
        CaseId::C1_3By,
        CaseId::C1_3ByPrime,
        CaseId::C2_1,
        CaseId::C2_2LPrime,
        CaseId::C2_2RPrime,
        CaseId::C2_2V,
        CaseId::C3a1Cy,
        CaseId::C3a1CyPrime,
        CaseId::C3a2,
        CaseId::C3bLPrime,
        CaseId::C3bRPrime,
        CaseId::C3bAl,
        CaseId::C3bZRight,
        CaseId::C3bD,
        CaseId::C3bE,
        CaseId::C3bF,
        CaseId::DegenSolver,
        CaseId::FinalTail,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CaseId::C1_1 => "C1.1",
            CaseId::C1_2 => "C1.2",
            CaseId::C1_3By => "C1.3-by",
            CaseId::C1_3ByPrime => "C1.3-by'",
            CaseId::C2_1 => "C2.1",
            CaseId::C2_2LPrime => "C2.2-l'",
            CaseId::C2_2RPrime => "C2.2-r'",
            CaseId::C2_2V => "C2.2-v",
            CaseId::C3a1Cy => "C3a.1-cy",
            CaseId::C3a1CyPrime => "C3a.1-cy'",
            CaseId::C3a2 => "C3a.2",
            CaseId::C3bLPrime => "C3b-l'",
            CaseId::C3bRPrime => "C3b-r'",
            CaseId::C3bAl => "C3b-al",
            CaseId::C3bZRight => "C3b-z-right",
            CaseId::C3bD => "C3b-d",
            CaseId::C3bE => "C3b-e",
            CaseId::C3bF => "C3b-f",
            CaseId::DegenSolver => "DEGEN-SOLVER",
            CaseId::FinalTail => "FINAL-TAIL",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReflectionFlags {
    /// Left-right mirror: the roles of (l', l) and (r', r) are exchanged.
    pub vertical_mirror: bool,
    /// Mirror about the x-axis.
    pub horizontal_mirror: bool,
}

impl ReflectionFlags {
    pub(crate) fn map(&self, p: &Point) -> Point {
        let x = if self.vertical_mirror { -&p.x } else { p.x.clone() };
        let y = if self.horizontal_mirror { -&p.y } else { p.y.clone() };
        Point::new(x, y)
    }

    pub(crate) fn flip_x(self) -> Self {
        ReflectionFlags { vertical_mirror: !self.vertical_mirror, ..self }
    }

    pub(crate) fn flip_y(self) -> Self {
        ReflectionFlags { horizontal_mirror: !self.horizontal_mirror, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedPoint {
    pub name: String,
    pub point: Point,
}

/// One scan iteration, in the solver's working coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub case_id: CaseId,
    /// The endpoint being extended; `None` only when the whole input is a
    /// single monotone chain.
    pub anchor: Option<Point>,
    /// Points consumed, in increasing x.
    pub consumed: Vec<Point>,
    /// Vertices added after the anchor.
    pub appended_vertices: Vec<Point>,
    pub aux_points: Vec<NamedPoint>,
    pub roles: Vec<NamedPoint>,
    pub reflection_flags: ReflectionFlags,
    /// Segment budget handed to the window search.
    pub budget: Option<usize>,
    /// Set when the window fell back to a chain that may exceed its budget.
    pub fallback: bool,
}

impl IterationTrace {
    pub fn appended_segments(&self) -> usize {
        match self.anchor {
            Some(_) => self.appended_vertices.len(),
            None => self.appended_vertices.len().saturating_sub(1),
        }
    }
}
