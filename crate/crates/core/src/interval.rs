//! Closed intervals with Moore arithmetic, the generalized Hukuhara
//! difference and the endpoint dominance order.
//!
//! An [`Interval`] is an immutable value `[lo, hi]` with `lo <= hi`.
//! Endpoints may be infinite; only the dominance order is defined for
//! non-finite intervals, the arithmetic operations reject them.

use crate::error::{Error, Result};

/// A closed real interval `[lo, hi]`, possibly with infinite endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// Outcome of comparing two intervals in the endpoint dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceRelation {
    Equal,
    Dominates,
    StrictlyDominates,
    DominatedBy,
    StrictlyDominatedBy,
    NotComparable,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    /// Builds `[lo, hi]`, rejecting `lo > hi` and NaN endpoints.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[v, v]` embedding a real number.
    pub fn point(v: f64) -> Self {
        debug_assert!(!v.is_nan());
        Interval { lo: v, hi: v }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    fn require_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::ExtendedArithmetic {
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    /// Moore addition `[lo+lo', hi+hi']`.
    pub fn add(self, rhs: Interval) -> Result<Interval> {
        self.require_finite()?;
        rhs.require_finite()?;
        Ok(Interval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        })
    }

    /// Moore subtraction `[lo-hi', hi-lo']`. Note `X ⊖ X` is not zero
    /// unless `X` is degenerate.
    pub fn moore_sub(self, rhs: Interval) -> Result<Interval> {
        self.require_finite()?;
        rhs.require_finite()?;
        Ok(Interval {
            lo: self.lo - rhs.hi,
            hi: self.hi - rhs.lo,
        })
    }

    /// Moore multiplication: min/max of the four endpoint products.
    pub fn mul(self, rhs: Interval) -> Result<Interval> {
        self.require_finite()?;
        rhs.require_finite()?;
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = p.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = p.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok(Interval { lo, hi })
    }

    /// Scalar multiple; a negative scalar swaps the endpoints.
    pub fn scalar_mul(self, k: f64) -> Interval {
        if k >= 0.0 {
            Interval {
                lo: k * self.lo,
                hi: k * self.hi,
            }
        } else {
            Interval {
                lo: k * self.hi,
                hi: k * self.lo,
            }
        }
    }

    /// Generalized Hukuhara difference:
    /// `[min{lo-lo', hi-hi'}, max{lo-lo', hi-hi'}]`.
    ///
    /// Unlike Moore subtraction, `X ⊖_gH X = [0, 0]` for every `X`.
    pub fn gh_sub(self, rhs: Interval) -> Interval {
        let a = self.lo - rhs.lo;
        let b = self.hi - rhs.hi;
        Interval {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    /// Compares `self` against `rhs` in the endpoint order: `self`
    /// dominates `rhs` when both endpoints of `self` are no larger.
    pub fn dominance(self, rhs: Interval) -> DominanceRelation {
        if self == rhs {
            return DominanceRelation::Equal;
        }
        let fwd = self.lo <= rhs.lo && self.hi <= rhs.hi;
        let bwd = rhs.lo <= self.lo && rhs.hi <= self.hi;
        match (fwd, bwd) {
            (true, false) => {
                if self.lo < rhs.lo || self.hi < rhs.hi {
                    DominanceRelation::StrictlyDominates
                } else {
                    DominanceRelation::Dominates
                }
            }
            (false, true) => {
                if rhs.lo < self.lo || rhs.hi < self.hi {
                    DominanceRelation::StrictlyDominatedBy
                } else {
                    DominanceRelation::DominatedBy
                }
            }
            // fwd && bwd with self != rhs cannot happen for valid endpoints;
            // neither direction means not comparable.
            _ => DominanceRelation::NotComparable,
        }
    }

    /// Tolerant dominance test: `self ⪯ rhs` up to `tol` per endpoint.
    pub fn preceq(self, rhs: Interval, tol: f64) -> bool {
        self.lo <= rhs.lo + tol && self.hi <= rhs.hi + tol
    }

    /// Strict dominance `self ≺ rhs` at exact comparison.
    pub fn prec(self, rhs: Interval) -> bool {
        (self.lo <= rhs.lo && self.hi < rhs.hi) || (self.lo < rhs.lo && self.hi <= rhs.hi)
    }

    /// Set containment `self ⊆ rhs`.
    pub fn subset_of(self, rhs: Interval) -> bool {
        rhs.lo <= self.lo && self.hi <= rhs.hi
    }

    /// Width `hi - lo`.
    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    /// Norm `max{|lo|, |hi|}`.
    pub fn norm(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Componentwise binary operation selector for interval vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementwiseOp {
    Add,
    MooreSub,
    GhSub,
}

/// An ordered, nonempty tuple of intervals (an element of `I(R)^n`).
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalVector {
    items: Vec<Interval>,
}

impl IntervalVector {
    pub fn new(items: Vec<Interval>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        Ok(IntervalVector { items })
    }

    /// The zero vector `(0, ..., 0)` of length `n`.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![Interval::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn items(&self) -> &[Interval] {
        &self.items
    }

    /// Sum of the component norms.
    pub fn norm(&self) -> f64 {
        self.items.iter().map(|x| x.norm()).sum()
    }

    fn check_len(&self, other: &IntervalVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(())
    }

    /// Applies `op` componentwise.
    pub fn elementwise(&self, op: ElementwiseOp, other: &IntervalVector) -> Result<IntervalVector> {
        self.check_len(other)?;
        let items = self
            .items
            .iter()
            .zip(&other.items)
            .map(|(a, b)| match op {
                ElementwiseOp::Add => a.add(*b),
                ElementwiseOp::MooreSub => a.moore_sub(*b),
                ElementwiseOp::GhSub => Ok(a.gh_sub(*b)),
            })
            .collect::<Result<Vec<_>>>()?;
        IntervalVector::new(items)
    }

    /// Componentwise dominance `self ⪯ other` up to `tol`.
    pub fn preceq(&self, other: &IntervalVector, tol: f64) -> Result<bool> {
        self.check_len(other)?;
        Ok(self
            .items
            .iter()
            .zip(&other.items)
            .all(|(a, b)| a.preceq(*b, tol)))
    }

    pub fn scalar_mul(&self, k: f64) -> IntervalVector {
        IntervalVector {
            items: self.items.iter().map(|x| x.scalar_mul(k)).collect(),
        }
    }

    /// The product `v^T ⊙ self`: the Moore sum of `v_i ⊙ self_i`.
    pub fn inner_product(&self, v: &[f64]) -> Result<Interval> {
        if v.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: v.len(),
            });
        }
        let mut acc = Interval::ZERO;
        for (vi, gi) in v.iter().zip(&self.items) {
            acc = acc.add(gi.scalar_mul(*vi))?;
        }
        Ok(acc)
    }
}

/// Endpoint-wise infimum and supremum of a nonempty family of intervals.
pub fn family_inf_sup(family: &[Interval]) -> Result<(Interval, Interval)> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut inf_lo = f64::INFINITY;
    let mut inf_hi = f64::INFINITY;
    let mut sup_lo = f64::NEG_INFINITY;
    let mut sup_hi = f64::NEG_INFINITY;
    for x in family {
        inf_lo = inf_lo.min(x.lo());
        inf_hi = inf_hi.min(x.hi());
        sup_lo = sup_lo.max(x.lo());
        sup_hi = sup_hi.max(x.hi());
    }
    Ok((
        Interval::new(inf_lo, inf_hi)?,
        Interval::new(sup_lo, sup_hi)?,
    ))
}
