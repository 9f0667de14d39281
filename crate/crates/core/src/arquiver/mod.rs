//! Coordinates on the AR quiver of the string objects, the chart that turns a
//! coordinate into a string complex, Hom-hammocks, meshes, rays and triangles.
//!
//! A coordinate is written `F:k:i:j`, e.g. `X:0:2:5`, `X:1:-inf:3`, `Y:0:inf:2`,
//! `Z:0:inf` (the two-sided object) or `Z:1:4` (the ladder beam).

mod chart;
mod hammock;
mod mesh;
mod render;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chart::{chart_strategy, strategy_names, Chart, ChartStrategy, FiniteChart, InfiniteChart};
pub use hammock::{Decision, Hammocks};
pub use mesh::{check_chain, check_mesh, check_triangle, cone_window_words, find_cone, mesh_map, Mesh, Triangle, TriangleCheck, WindowedMap};
pub use render::{window_dot, window_json, NodeJson, QuiverJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    X,
    Y,
    Z,
    /// `X^k_{i,∞}`
    Xinf,
    /// `X^k_{−∞,j}`
    XminusInf,
    /// `Y^k_{∞,j}`
    Yinf,
    /// `Y^k_{i,−∞}`
    YminusInf,
    /// `Z^k_∞`
    Zinf,
    /// `Z^k_i`, the beam of a ladder component
    ZLadder,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::X,
        Family::Y,
        Family::Z,
        Family::Xinf,
        Family::XminusInf,
        Family::Yinf,
        Family::YminusInf,
        Family::Zinf,
        Family::ZLadder,
    ];

    fn letter(self) -> char {
        match self {
            Family::X | Family::Xinf | Family::XminusInf => 'X',
            Family::Y | Family::Yinf | Family::YminusInf => 'Y',
            Family::Z | Family::Zinf | Family::ZLadder => 'Z',
        }
    }
}

/// An index in `Z ∪ {±∞}`; `−∞ < n < ∞` for every integer `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Index {
    NegInf,
    Fin(i64),
    PosInf,
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |x: &Index| match x {
            Index::NegInf => (0, 0),
            Index::Fin(n) => (1, *n),
            Index::PosInf => (2, 0),
        };
        rank(self).cmp(&rank(other))
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::NegInf => write!(f, "-inf"),
            Index::Fin(n) => write!(f, "{n}"),
            Index::PosInf => write!(f, "inf"),
        }
    }
}

impl FromStr for Index {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" => Ok(Index::PosInf),
            "-inf" => Ok(Index::NegInf),
            t => t
                .parse::<i64>()
                .map(Index::Fin)
                .map_err(|_| Error::Parse { offset: 0, message: format!("bad index `{t}`") }),
        }
    }
}

/// A vertex of the AR quiver. Fields a family does not use are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArCoordinate {
    pub family: Family,
    pub k: i64,
    pub i: i64,
    pub j: i64,
}

impl ArCoordinate {
    pub fn x(k: i64, i: i64, j: i64) -> Self {
        Self { family: Family::X, k, i, j }
    }
    pub fn y(k: i64, i: i64, j: i64) -> Self {
        Self { family: Family::Y, k, i, j }
    }
    pub fn z(k: i64, i: i64, j: i64) -> Self {
        Self { family: Family::Z, k, i, j }
    }
    pub fn x_inf(k: i64, i: i64) -> Self {
        Self { family: Family::Xinf, k, i, j: 0 }
    }
    pub fn x_minus_inf(k: i64, j: i64) -> Self {
        Self { family: Family::XminusInf, k, i: 0, j }
    }
    pub fn y_inf(k: i64, j: i64) -> Self {
        Self { family: Family::Yinf, k, i: 0, j }
    }
    pub fn y_minus_inf(k: i64, i: i64) -> Self {
        Self { family: Family::YminusInf, k, i, j: 0 }
    }
    pub fn z_inf(k: i64) -> Self {
        Self { family: Family::Zinf, k, i: 0, j: 0 }
    }
    pub fn z_ladder(k: i64, i: i64) -> Self {
        Self { family: Family::ZLadder, k, i, j: 0 }
    }

    /// First index, with infinities.
    pub fn row(&self) -> Index {
        match self.family {
            Family::X | Family::Y | Family::Z | Family::Xinf | Family::YminusInf | Family::ZLadder => Index::Fin(self.i),
            Family::XminusInf => Index::NegInf,
            Family::Yinf | Family::Zinf => Index::PosInf,
        }
    }

    /// Second index, with infinities; `None` for families with a single index.
    pub fn col(&self) -> Option<Index> {
        match self.family {
            Family::X | Family::Y | Family::Z | Family::XminusInf | Family::Yinf => Some(Index::Fin(self.j)),
            Family::Xinf => Some(Index::PosInf),
            Family::YminusInf => Some(Index::NegInf),
            Family::Zinf | Family::ZLadder => None,
        }
    }

    /// Checks the index shape: `j ≥ i` on `X`, `j ≤ i` on `Y`, `0 ≤ k < r`.
    pub fn check(&self, r: i64) -> Result<()> {
        if !(0..r).contains(&self.k) {
            return Err(Error::Parameter(format!("{self}: k must lie in 0..{r}")));
        }
        match self.family {
            Family::X if self.j < self.i => Err(Error::Parameter(format!("{self}: X needs j ≥ i"))),
            Family::Y if self.j > self.i => Err(Error::Parameter(format!("{self}: Y needs j ≤ i"))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ArCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.family.letter();
        match self.col() {
            Some(col) => write!(f, "{c}:{}:{}:{}", self.k, self.row(), col),
            None => write!(f, "{c}:{}:{}", self.k, self.row()),
        }
    }
}

impl FromStr for ArCoordinate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { offset: 0, message: format!("coordinate `{s}`: {msg}") };
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(bad("expected F:k:i[:j]"));
        }
        let k: i64 = parts[1].trim().parse().map_err(|_| bad("k is not an integer"))?;
        let i: Index = parts[2].parse().map_err(|_| bad("bad first index"))?;
        let j: Option<Index> = parts.get(3).map(|t| t.parse()).transpose().map_err(|_| bad("bad second index"))?;
        use Index::*;
        let c = match (parts[0].trim(), i, j) {
            ("X", Fin(i), Some(Fin(j))) => ArCoordinate::x(k, i, j),
            ("X", Fin(i), Some(PosInf)) => ArCoordinate::x_inf(k, i),
            ("X", NegInf, Some(Fin(j))) => ArCoordinate::x_minus_inf(k, j),
            ("Y", Fin(i), Some(Fin(j))) => ArCoordinate::y(k, i, j),
            ("Y", PosInf, Some(Fin(j))) => ArCoordinate::y_inf(k, j),
            ("Y", Fin(i), Some(NegInf)) => ArCoordinate::y_minus_inf(k, i),
            ("Z", Fin(i), Some(Fin(j))) => ArCoordinate::z(k, i, j),
            ("Z", PosInf, None) => ArCoordinate::z_inf(k),
            ("Z", Fin(i), None) => ArCoordinate::z_ladder(k, i),
            _ => return Err(bad("unknown family or index pattern")),
        };
        Ok(c)
    }
}

/// `a′`, `a″` and `ā` for an object in component `k`.
#[derive(Debug, Clone, Copy)]
pub struct PrimedIndex {
    pub r: i64,
    pub n: i64,
    pub m: i64,
}

impl PrimedIndex {
    /// `a + r + m` on the last component, `a` otherwise.
    pub fn prime(&self, a: i64, k: i64) -> i64 {
        if k == self.r - 1 {
            a + self.r + self.m
        } else {
            a
        }
    }

    /// `a + r − n` on the last component, `a` otherwise.
    pub fn double_prime(&self, a: i64, k: i64) -> i64 {
        if k == self.r - 1 {
            a + self.r - self.n
        } else {
            a
        }
    }

    /// `a − r − m` on component 0, `a` otherwise.
    pub fn bar(&self, a: i64, k: i64) -> i64 {
        if k == 0 {
            a - self.r - self.m
        } else {
            a
        }
    }
}

#[cfg(test)]
mod tests;
