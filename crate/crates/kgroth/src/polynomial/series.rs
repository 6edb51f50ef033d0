use std::fmt;

use super::monomial::Grading;
use super::poly::Poly;
use super::PolyError;

/// A polynomial known up to a graded cutoff. `exact` stays true only while no
/// term above the cutoff has ever been discarded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    body: Poly,
    grading: Grading,
    cutoff: u32,
    exact: bool,
}

impl TruncSeries {
    /// Truncates `p`; exact iff nothing was cut.
    pub fn new(p: Poly, grading: Grading, cutoff: u32) -> TruncSeries {
        let body = p.truncate(grading, cutoff);
        let exact = body.len() == p.len();
        TruncSeries { body, grading, cutoff, exact }
    }

    /// A series whose body is already known to be the full value.
    pub fn exact(p: Poly, grading: Grading, cutoff: u32) -> TruncSeries {
        TruncSeries::new(p, grading, cutoff)
    }

    /// A truncation of something infinite (or not known to be finite).
    pub fn inexact(p: Poly, grading: Grading, cutoff: u32) -> TruncSeries {
        TruncSeries { body: p.truncate(grading, cutoff), grading, cutoff, exact: false }
    }

    pub fn zero(grading: Grading, cutoff: u32) -> TruncSeries {
        TruncSeries { body: Poly::zero(), grading, cutoff, exact: true }
    }

    pub fn one(grading: Grading, cutoff: u32) -> TruncSeries {
        TruncSeries { body: Poly::one(), grading, cutoff, exact: true }
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn into_body(self) -> Poly {
        self.body
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn with_exact(mut self, exact: bool) -> TruncSeries {
        self.exact = exact;
        self
    }

    fn check(&self, other: &TruncSeries) -> Result<(), PolyError> {
        if self.grading != other.grading {
            Err(PolyError::GradingMismatch)
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &TruncSeries) -> Result<TruncSeries, PolyError> {
        self.check(other)?;
        let cutoff = self.cutoff.min(other.cutoff);
        let sum = &self.body + &other.body;
        let t = TruncSeries::new(sum, self.grading, cutoff);
        Ok(TruncSeries { exact: t.exact && self.exact && other.exact, ..t })
    }

    pub fn checked_sub(&self, other: &TruncSeries) -> Result<TruncSeries, PolyError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &TruncSeries) -> Result<TruncSeries, PolyError> {
        self.check(other)?;
        let cutoff = self.cutoff.min(other.cutoff);
        let (body, dropped) = self.body.mul_truncated(&other.body, self.grading, cutoff);
        Ok(TruncSeries { body, grading: self.grading, cutoff, exact: self.exact && other.exact && !dropped })
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries { body: -&self.body, ..self.clone() }
    }

    /// Multiplication by a polynomial treated as exact.
    pub fn mul_poly(&self, p: &Poly) -> TruncSeries {
        let (body, dropped) = self.body.mul_truncated(p, self.grading, self.cutoff);
        TruncSeries { body, grading: self.grading, cutoff: self.cutoff, exact: self.exact && !dropped }
    }

    /// Multiplicative inverse; requires constant term `1` and every other
    /// term of positive degree.
    pub fn inverse(&self) -> Result<TruncSeries, PolyError> {
        if !self.body.constant_term().is_one() {
            return Err(PolyError::NonUnitConstant);
        }
        let rest = &self.body - &Poly::one();
        if rest.min_degree_in(self.grading).is_some_and(|d| d == 0) {
            return Err(PolyError::NonUnitConstant);
        }
        // 1/(1+r) = sum (-r)^k, each power raising the degree by at least one
        let neg_rest = -&rest;
        let mut acc = Poly::one();
        let mut power = Poly::one();
        for _ in 0..self.cutoff {
            power = power.mul_truncated(&neg_rest, self.grading, self.cutoff).0;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(TruncSeries { body: acc, grading: self.grading, cutoff: self.cutoff, exact: rest.is_zero() })
    }

    /// Re-truncation to a lower cutoff.
    pub fn retruncate(&self, cutoff: u32) -> TruncSeries {
        let cutoff = cutoff.min(self.cutoff);
        let t = TruncSeries::new(self.body.clone(), self.grading, cutoff);
        TruncSeries { exact: t.exact && self.exact, ..t }
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)?;
        if !self.exact {
            write!(f, " + O(deg {})", self.cutoff + 1)?;
        }
        Ok(())
    }
}
