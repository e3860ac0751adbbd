use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::poly::scalar::{self, Scalar};
use crate::switching::{EdgePoint, FilippovClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleType {
    Aa,
    Bb,
    Aba,
    Bab,
}

impl CycleType {
    pub const ALL: [CycleType; 4] = [CycleType::Aa, CycleType::Bb, CycleType::Aba, CycleType::Bab];

    /// Maximum number of isolated cycles of this type for a degree-`n` integral.
    pub fn bound(self, n: u32) -> usize {
        let n = n as usize;
        match self {
            CycleType::Aa | CycleType::Bb => n.saturating_sub(1),
            CycleType::Aba | CycleType::Bab => n * n.saturating_sub(1),
        }
    }

    /// Canonical crossing word one period of the cycle produces.
    pub fn expected_word(self) -> &'static str {
        match self {
            CycleType::Aa => "a",
            CycleType::Bb => "b",
            CycleType::Aba | CycleType::Bab => "ab",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CycleType::Aa => "aa",
            CycleType::Bb => "bb",
            CycleType::Aba => "aba",
            CycleType::Bab => "bab",
        }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CycleType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "aa" => Ok(CycleType::Aa),
            "bb" => Ok(CycleType::Bb),
            "aba" => Ok(CycleType::Aba),
            "bab" => Ok(CycleType::Bab),
            other => Err(format!("unknown cycle type {other:?}")),
        }
    }
}

/// Smallest string among the rotations of `word` and of its reversal.
pub fn canonical_word(word: &str) -> String {
    let chars: Vec<char> = word.chars().collect();
    if chars.is_empty() {
        return String::new();
    }
    let mut best: Option<String> = None;
    for seq in [chars.clone(), chars.iter().rev().copied().collect()] {
        for r in 0..seq.len() {
            let s: String = seq[r..].iter().chain(seq[..r].iter()).collect();
            if best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        }
    }
    best.unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    Interior,
    ClosingResidual,
    Simple,
    Transversal,
    DistinctLevels,
    Nondegenerate,
    Verified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterVerdict {
    Pass,
    Fail,
    /// Could not be decided at the working tolerance (e.g. a root within
    /// `boundary_epsilon` of the square's side).
    Ambiguous,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FilterRecord {
    pub filter: Filter,
    pub verdict: FilterVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// One seam coordinate: refined value, exact value when rational, and the
/// certified bracket when it came from root isolation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeamCoordinate {
    pub value: f64,
    #[serde(
        serialize_with = "scalar::serialize_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub exact: Option<Scalar>,
    #[serde(skip)]
    pub bracket: Option<(Scalar, Scalar)>,
}

impl SeamCoordinate {
    pub fn float(value: f64) -> Self {
        Self {
            value,
            exact: None,
            bracket: None,
        }
    }

    pub fn exact(v: Scalar) -> Self {
        Self {
            value: scalar::to_f64(&v),
            bracket: Some((v.clone(), v.clone())),
            exact: Some(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Seam {
    /// `x₀` for bb, `y₀` for aa.
    Single { coordinate: SeamCoordinate },
    /// `(x, y)` for aba/bab: seam points `(0,y)`, `(x,1)`, `(x,0)`, `(1,y)`.
    Pair {
        x: SeamCoordinate,
        y: SeamCoordinate,
    },
}

impl Seam {
    /// Float coordinates, one or two entries.
    pub fn values(&self) -> Vec<f64> {
        match self {
            Seam::Single { coordinate } => vec![coordinate.value],
            Seam::Pair { x, y } => vec![x.value, y.value],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleCandidate {
    pub cycle_type: CycleType,
    pub seam: Seam,
    /// `H` on each arc: one value for aa/bb, `(H(0,y), H(x,0))` for aba/bab.
    pub levels: Vec<f64>,
    #[serde(skip)]
    pub exact_levels: Vec<Option<Scalar>>,
    /// Multiplicity of the underlying root of the closing polynomial (or resultant).
    pub multiplicity: usize,
    /// Largest closing-equation residual, relative to the coefficient scale.
    pub closing_residual: f64,
    pub seam_points: Vec<EdgePoint>,
    pub seam_classes: Vec<FilippovClass>,
    pub filters: Vec<FilterRecord>,
}

impl CycleCandidate {
    pub fn record(&mut self, filter: Filter, verdict: FilterVerdict, detail: Option<String>) {
        self.filters.retain(|r| r.filter != filter);
        self.filters.push(FilterRecord {
            filter,
            verdict,
            detail,
        });
    }

    pub fn verdict(&self, filter: Filter) -> Option<FilterVerdict> {
        self.filters
            .iter()
            .find(|r| r.filter == filter)
            .map(|r| r.verdict)
    }

    /// Passed every filter that was run.
    pub fn accepted(&self) -> bool {
        self.filters
            .iter()
            .all(|r| matches!(r.verdict, FilterVerdict::Pass | FilterVerdict::Skipped))
    }

    /// First seam point; the natural trace start.
    pub fn start(&self) -> &EdgePoint {
        &self.seam_points[0]
    }
}
