//! Hom-hammocks: which objects receive a nonzero map from a given one.
//!
//! Membership is decided by a printed formula whenever one of the two objects
//! is not compact. Between two compact objects the answer comes from the Hom
//! oracle, which is exact there because both complexes are bounded on the
//! relevant side.

// index bounds are kept in the `x - 1` form the tables use
#![allow(clippy::int_plus_one)]

use std::collections::BTreeSet;

use crate::error::Result;
use crate::homlab::Oracle;

use super::chart::{ChartStrategy, EndPoints};
use super::{ArCoordinate, Family};

/// How a membership question is settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Formula(bool),
    /// `Hom(A, B) ≠ 0`, asked of the oracle.
    Oracle(ArCoordinate, ArCoordinate),
}

fn next(e: &EndPoints, k: i64) -> i64 {
    (k + 1).rem_euclid(e.r())
}

fn prev(e: &EndPoints, k: i64) -> i64 {
    (k - 1).rem_euclid(e.r())
}

/// The finite global dimension formulas.
pub(crate) fn finite_forward(s: &dyn ChartStrategy, e: &EndPoints, a: &ArCoordinate, b: &ArCoordinate) -> Result<Decision> {
    use Family::*;
    if s.is_compact(a) && s.is_compact(b) {
        return Ok(Decision::Oracle(*a, *b));
    }
    let k = a.k;
    let k1 = next(e, k);
    let pr = e.primes;
    let (fb, l, i, j) = (b.family, b.k, b.i, b.j);
    let member = match a.family {
        X => {
            let (a0, b0) = (a.i, a.j);
            let (a1, b1) = (pr.prime(a0, k), pr.prime(b0, k));
            (fb == Xinf && l == k && a0 <= i && i <= b0) || (fb == XminusInf && l == k1 && a1 - 1 <= j && j <= b1 - 1)
        }
        Y => {
            let (a0, b0) = (a.i, a.j);
            let (a2, b2) = (pr.double_prime(a0, k), pr.double_prime(b0, k));
            (fb == Yinf && l == k && b0 <= j && j <= a0) || (fb == YminusInf && l == k1 && b2 - 1 <= i && i <= a2 - 1)
        }
        Z => {
            let a1 = pr.prime(a.i, k);
            let b2 = pr.double_prime(a.j, k);
            l == k1
                && match fb {
                    XminusInf => j >= a1 - 1,
                    Xinf => i <= a1 - 1,
                    Zinf => true,
                    YminusInf => i >= b2 - 1,
                    Yinf => j <= b2 - 1,
                    _ => false,
                }
        }
        Xinf => {
            let a0 = a.i;
            let a1 = pr.prime(a0, k);
            (l == k && fb == Xinf && i >= a0)
                || (l == k && fb == Z && i >= a0)
                || (l == k1 && fb == XminusInf && j >= a1 - 1)
                || (l == k1 && fb == X && i <= a1 - 1 && j >= a1 - 1)
        }
        XminusInf => {
            let b0 = a.j;
            l == k
                && match fb {
                    XminusInf => j >= b0,
                    X => i <= b0 && j >= b0,
                    Xinf => i <= b0,
                    Yinf => true,
                    Z => i <= b0,
                    Zinf => true,
                    _ => false,
                }
        }
        Yinf => {
            let b0 = a.j;
            let b2 = pr.double_prime(b0, k);
            (l == k && fb == Yinf && j >= b0)
                || (l == k && fb == Z && j >= b0)
                || (l == k1 && fb == YminusInf && i >= b2 - 1)
                || (l == k1 && fb == Y && i >= b2 - 1 && j <= b2 - 1)
        }
        YminusInf => {
            let a0 = a.i;
            l == k
                && match fb {
                    YminusInf => i >= a0,
                    Y => i >= a0 && j <= a0,
                    Yinf => j <= a0,
                    Xinf => true,
                    Z => j <= a0,
                    Zinf => true,
                    _ => false,
                }
        }
        // the printed list omits the identity of `Z^k_∞` itself
        Zinf => l == k && matches!(fb, Xinf | Yinf | Z | Zinf),
        ZLadder => false,
    };
    Ok(Decision::Formula(member))
}

/// The infinite global dimension formulas. `Z^k_∞` has no printed forward
/// hammock; its membership is read backwards through the explicit `H⁻`
/// formulas where they apply and asked of the oracle otherwise.
pub(crate) fn infinite_forward(s: &dyn ChartStrategy, e: &EndPoints, a: &ArCoordinate, b: &ArCoordinate) -> Result<Decision> {
    use Family::*;
    let k = a.k;
    let k1 = next(e, k);
    let pr = e.primes;
    let (fb, l, i) = (b.family, b.k, b.i);
    let member = match a.family {
        X => {
            if s.is_compact(b) {
                return Ok(Decision::Oracle(*a, *b));
            }
            fb == Xinf && l == k && a.i <= i && i <= a.j
        }
        ZLadder => {
            if s.is_compact(b) {
                return Ok(Decision::Oracle(*a, *b));
            }
            let a1 = pr.prime(a.i, k);
            (fb == Zinf && l == k1) || (fb == Xinf && l == k1 && i <= a1 - 1)
        }
        Xinf => {
            if s.is_compact(b) {
                return Ok(Decision::Oracle(ArCoordinate::z_ladder(k, a.i), *b));
            }
            (fb == Zinf && l == k1) || (fb == Xinf && l == k && i >= a.i)
        }
        Zinf => match fb {
            Xinf | ZLadder => return infinite_backward(s, e, b, a),
            _ => return Ok(Decision::Oracle(*a, *b)),
        },
        _ => false,
    };
    Ok(Decision::Formula(member))
}

/// `B ∈ H⁻(A)` in infinite global dimension.
pub(crate) fn infinite_backward(s: &dyn ChartStrategy, e: &EndPoints, a: &ArCoordinate, b: &ArCoordinate) -> Result<Decision> {
    use Family::*;
    let k = a.k;
    match a.family {
        Xinf => {
            let z = ArCoordinate::z_ladder(prev(e, k), e.primes.bar(a.i, k));
            infinite_forward(s, e, &z, b)
        }
        ZLadder => {
            if s.is_compact(b) {
                return Ok(Decision::Oracle(*b, *a));
            }
            let member = (b.family == Zinf && b.k == k) || (b.family == Xinf && b.k == k && b.i <= a.i);
            Ok(Decision::Formula(member))
        }
        _ => infinite_forward(s, e, b, a),
    }
}

/// Membership queries against a chart, settling oracle decisions with an [`Oracle`].
pub struct Hammocks<'a> {
    pub chart: &'a super::Chart,
    pub oracle: &'a Oracle,
}

impl<'a> Hammocks<'a> {
    pub fn new(chart: &'a super::Chart, oracle: &'a Oracle) -> Self {
        Self { chart, oracle }
    }

    pub fn settle(&self, d: Decision) -> Result<bool> {
        match d {
            Decision::Formula(x) => Ok(x),
            Decision::Oracle(a, b) => self.nonzero(&a, &b),
        }
    }

    /// `Hom(A, B) ≠ 0` by the oracle.
    pub fn nonzero(&self, a: &ArCoordinate, b: &ArCoordinate) -> Result<bool> {
        Ok(self.hom_dim(a, b)? > 0)
    }

    pub fn hom_dim(&self, a: &ArCoordinate, b: &ArCoordinate) -> Result<usize> {
        let ca = self.chart.complex(a)?;
        let cb = self.chart.complex(b)?;
        Ok(self.oracle.hom_dim(&ca, &cb)?.hom_dim)
    }

    /// `B ∈ H⁺(A)`.
    pub fn forward_member(&self, a: &ArCoordinate, b: &ArCoordinate) -> Result<bool> {
        self.settle(self.chart.forward_decision(a, b)?)
    }

    /// `B ∈ H⁻(A)`.
    pub fn backward_member(&self, a: &ArCoordinate, b: &ArCoordinate) -> Result<bool> {
        self.settle(self.chart.backward_decision(a, b)?)
    }

    /// `H⁺(A)` restricted to a window.
    pub fn window(&self, a: &ArCoordinate, window: &[ArCoordinate]) -> Result<BTreeSet<ArCoordinate>> {
        let mut out = BTreeSet::new();
        for b in window {
            if self.forward_member(a, b)? {
                out.insert(*b);
            }
        }
        Ok(out)
    }
}
