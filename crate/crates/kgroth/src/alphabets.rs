//! Signed formal alphabets and supersymmetric `h`, `e`, `p`, including the
//! `⊖` series and coefficient extraction from products of linear factors.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::polynomial::{Family, Grading, Poly, PolyError, TruncSeries, Variable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlphabetError {
    #[error("factor has constant term other than 1 in its expansion variable")]
    NonUnitFactor,
    #[error("factor mixes positive and negative powers of the expansion variable")]
    MixedDirection,
    #[error("expansion does not terminate: {0}")]
    NonTerminating(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A signed variable, `+v` or `-v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub var: Variable,
    pub negated: bool,
}

impl Atom {
    pub fn pos(var: Variable) -> Atom {
        Atom { var, negated: false }
    }

    pub fn neg(var: Variable) -> Atom {
        Atom { var, negated: true }
    }

    pub fn value(&self) -> Poly {
        let v = Poly::var(self.var);
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn is_graded(&self, g: Grading) -> bool {
        g.contains(self.var.family)
    }
}

/// Formal difference `plus / minus` of two finite multisets of atoms, kept
/// reduced (no atom on both sides) and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiffAlphabet {
    plus: Vec<Atom>,
    minus: Vec<Atom>,
}

/// Which interval alphabet: `A_i = {-alpha_1, ..., -alpha_i}` or
/// `B_i = {beta_1, ..., beta_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Interval bound types `[i,j]`, `[i,j)`, `(i,j]`, `(i,j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bounds {
    Closed,
    ClosedOpen,
    OpenClosed,
    Open,
}

impl DiffAlphabet {
    pub fn empty() -> DiffAlphabet {
        DiffAlphabet::default()
    }

    pub fn new(plus: Vec<Atom>, minus: Vec<Atom>) -> DiffAlphabet {
        let mut plus = plus;
        let mut minus = minus;
        plus.sort();
        minus.sort();
        let (mut p, mut m) = (Vec::new(), Vec::new());
        let (mut i, mut j) = (0, 0);
        while i < plus.len() && j < minus.len() {
            match plus[i].cmp(&minus[j]) {
                std::cmp::Ordering::Less => {
                    p.push(plus[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    m.push(minus[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        p.extend_from_slice(&plus[i..]);
        m.extend_from_slice(&minus[j..]);
        DiffAlphabet { plus: p, minus: m }
    }

    pub fn honest(atoms: Vec<Atom>) -> DiffAlphabet {
        DiffAlphabet::new(atoms, Vec::new())
    }

    pub fn plus(&self) -> &[Atom] {
        &self.plus
    }

    pub fn minus(&self) -> &[Atom] {
        &self.minus
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    /// `x_1, ..., x_n`.
    pub fn xs(n: usize) -> DiffAlphabet {
        DiffAlphabet::honest((1..=n).map(|i| Atom::pos(Variable::x(i))).collect())
    }

    pub fn ys(n: usize) -> DiffAlphabet {
        DiffAlphabet::honest((1..=n).map(|i| Atom::pos(Variable::y(i))).collect())
    }

    /// `x_{[r,s]} = X_s / X_{r-1}`, negative when `s < r - 1`.
    pub fn x_range(r: i64, s: i64) -> DiffAlphabet {
        let xs = |k: i64| DiffAlphabet::xs(k.max(0) as usize);
        &xs(s) - &xs(r - 1)
    }

    /// `A_i` for `side = A`, `B_i` for `side = B`; empty for `i <= 0`.
    pub fn prefix(side: Side, i: i64) -> DiffAlphabet {
        let atoms = (1..=i.max(0) as usize)
            .map(|k| match side {
                Side::A => Atom::neg(Variable::alpha(k)),
                Side::B => Atom::pos(Variable::beta(k)),
            })
            .collect();
        DiffAlphabet::honest(atoms)
    }

    pub fn a(i: i64) -> DiffAlphabet {
        DiffAlphabet::prefix(Side::A, i)
    }

    pub fn b(i: i64) -> DiffAlphabet {
        DiffAlphabet::prefix(Side::B, i)
    }

    /// Interval alphabet with the reversal convention: every interval is a
    /// difference of prefixes, e.g. `A_[i,j) = A_{j-1} / A_{i-1}`, so reversed
    /// bounds give negative alphabets.
    pub fn interval(side: Side, bounds: Bounds, i: i64, j: i64) -> DiffAlphabet {
        let (hi, lo) = match bounds {
            Bounds::Closed => (j, i - 1),
            Bounds::ClosedOpen => (j - 1, i - 1),
            Bounds::OpenClosed => (j, i),
            Bounds::Open => (j - 1, i),
        };
        &DiffAlphabet::prefix(side, hi) - &DiffAlphabet::prefix(side, lo)
    }

    /// True when every atom belongs to a family counted by `g`.
    pub fn is_graded(&self, g: Grading) -> bool {
        self.plus.iter().chain(&self.minus).all(|a| a.is_graded(g))
    }

    /// Replaces every atom `a` by `-a`.
    pub fn negate_atoms(&self) -> DiffAlphabet {
        let flip = |v: &[Atom]| v.iter().map(|a| Atom { var: a.var, negated: !a.negated }).collect();
        DiffAlphabet::new(flip(&self.plus), flip(&self.minus))
    }

    /// Renames the variable family of every atom (used to build y-copies).
    pub fn map_vars<F: Fn(Variable) -> Variable>(&self, f: F) -> DiffAlphabet {
        let m = |v: &[Atom]| v.iter().map(|a| Atom { var: f(a.var), negated: a.negated }).collect();
        DiffAlphabet::new(m(&self.plus), m(&self.minus))
    }

    /// Shifts the index of every `x` atom by `k` (`x_i -> x_{i+k}`).
    pub fn shift_x(&self, k: usize) -> DiffAlphabet {
        self.map_vars(|v| if v.family == Family::X { Variable::x(v.index as usize + k) } else { v })
    }
}

impl Add for &DiffAlphabet {
    type Output = DiffAlphabet;
    fn add(self, rhs: &DiffAlphabet) -> DiffAlphabet {
        DiffAlphabet::new(
            self.plus.iter().chain(&rhs.plus).copied().collect(),
            self.minus.iter().chain(&rhs.minus).copied().collect(),
        )
    }
}

impl Sub for &DiffAlphabet {
    type Output = DiffAlphabet;
    fn sub(self, rhs: &DiffAlphabet) -> DiffAlphabet {
        self + &(-rhs)
    }
}

impl Neg for &DiffAlphabet {
    type Output = DiffAlphabet;
    fn neg(self) -> DiffAlphabet {
        DiffAlphabet { plus: self.minus.clone(), minus: self.plus.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DiffAlphabet {
            type Output = DiffAlphabet;
            fn $m(self, rhs: DiffAlphabet) -> DiffAlphabet {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);

/// Coefficients `h_0, ..., h_m` of `H(t) = prod(1 - y t) / prod(1 - x t)`.
pub fn h_series(alph: &DiffAlphabet, m: usize) -> Vec<Poly> {
    let mut c = vec![Poly::zero(); m + 1];
    c[0] = Poly::one();
    for a in &alph.plus {
        let v = a.value();
        for k in 1..=m {
            let add = &v * &c[k - 1];
            c[k] = &c[k] + &add;
        }
    }
    for a in &alph.minus {
        let v = a.value();
        for k in (1..=m).rev() {
            let sub = &v * &c[k - 1];
            c[k] = &c[k] - &sub;
        }
    }
    c
}

/// Coefficients `e_0, ..., e_m` of `E(t) = prod(1 + x t) / prod(1 + y t)`.
pub fn e_series(alph: &DiffAlphabet, m: usize) -> Vec<Poly> {
    let mut c = vec![Poly::zero(); m + 1];
    c[0] = Poly::one();
    for a in &alph.plus {
        let v = a.value();
        for k in (1..=m).rev() {
            let add = &v * &c[k - 1];
            c[k] = &c[k] + &add;
        }
    }
    for a in &alph.minus {
        let v = a.value();
        for k in 1..=m {
            let sub = &v * &c[k - 1];
            c[k] = &c[k] - &sub;
        }
    }
    c
}

/// `h_m(X/Y)`; zero for negative `m`.
pub fn hsym(m: i64, alph: &DiffAlphabet) -> Poly {
    if m < 0 {
        return Poly::zero();
    }
    h_series(alph, m as usize).pop().unwrap()
}

/// `e_m(X/Y)`; zero for negative `m`.
pub fn esym(m: i64, alph: &DiffAlphabet) -> Poly {
    if m < 0 {
        return Poly::zero();
    }
    e_series(alph, m as usize).pop().unwrap()
}

/// `h_m((x_1..x_n ⊔ S.plus) / S.minus)`.
pub fn hsym_n(m: i64, n: usize, s: &DiffAlphabet) -> Poly {
    hsym(m, &(&DiffAlphabet::xs(n) + s))
}

pub fn esym_n(m: i64, n: usize, s: &DiffAlphabet) -> Poly {
    esym(m, &(&DiffAlphabet::xs(n) + s))
}

/// Power sum `p_m(X/Y) = p_m(X) - p_m(Y)`.
pub fn psum(m: u32, alph: &DiffAlphabet) -> Poly {
    let mut acc = Poly::zero();
    for a in &alph.plus {
        acc = &acc + &a.value().pow(m);
    }
    for a in &alph.minus {
        acc = &acc - &a.value().pow(m);
    }
    acc
}

/// The pair `X ⊖ Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OminusPair {
    pub x: DiffAlphabet,
    pub shift: DiffAlphabet,
}

impl OminusPair {
    pub fn new(x: DiffAlphabet, shift: DiffAlphabet) -> OminusPair {
        OminusPair { x, shift }
    }

    /// `x_1..x_n ⊖ shift`.
    pub fn with_xvars(n: usize, shift: DiffAlphabet) -> OminusPair {
        OminusPair { x: DiffAlphabet::xs(n), shift }
    }
}

#[derive(Clone, Copy)]
enum Kind {
    H,
    E,
}

fn ominus(kind: Kind, m: i64, pair: &OminusPair, g: Grading, cutoff: u32) -> Result<TruncSeries, AlphabetError> {
    let y = &pair.shift;
    let b_lo = (-m).max(0) as usize;
    // h(Y) is a polynomial when Y has only denominator atoms, e(Y) when it
    // has only numerator atoms
    let (finite_side, infinite_side) = match kind {
        Kind::H => (&y.minus, &y.plus),
        Kind::E => (&y.plus, &y.minus),
    };
    let finite = infinite_side.is_empty();
    let b_hi = if finite {
        finite_side.len()
    } else {
        if !y.is_graded(g) {
            return Err(AlphabetError::NonTerminating("shift alphabet has ungraded atoms"));
        }
        cutoff as usize
    };
    if b_lo > b_hi {
        return Ok(TruncSeries::zero(g, cutoff));
    }
    let series = |alph: &DiffAlphabet, d: usize| match kind {
        Kind::H => h_series(alph, d),
        Kind::E => e_series(alph, d),
    };
    let xs = series(&pair.x, (m + b_hi as i64).max(0) as usize);
    let ys = series(y, b_hi);
    let mut acc = TruncSeries::zero(g, cutoff);
    let mut exact = true;
    for b in b_lo..=b_hi {
        let xa = &xs[(m + b as i64) as usize];
        if xa.is_zero() || ys[b].is_zero() {
            continue;
        }
        let (prod, dropped) = xa.mul_truncated(&ys[b], g, cutoff);
        exact &= !dropped;
        acc = acc.checked_add(&TruncSeries::exact(prod, g, cutoff))?;
    }
    if !finite {
        exact = false;
    }
    Ok(acc.with_exact(exact))
}

/// `h_m(X ⊖ Y) = sum_{a-b=m} h_a(X) h_b(Y)`, truncated at (alpha,beta)-degree
/// `cutoff`.
pub fn h_ominus(m: i64, pair: &OminusPair, cutoff: u32) -> Result<TruncSeries, AlphabetError> {
    ominus(Kind::H, m, pair, Grading::AB, cutoff)
}

/// `e_m(X ⊖ Y) = sum_{a-b=m} e_a(X) e_b(Y)`.
pub fn e_ominus(m: i64, pair: &OminusPair, cutoff: u32) -> Result<TruncSeries, AlphabetError> {
    ominus(Kind::E, m, pair, Grading::AB, cutoff)
}

/// Same as [`h_ominus`] with an explicit grading.
pub fn h_ominus_graded(m: i64, pair: &OminusPair, g: Grading, cutoff: u32) -> Result<TruncSeries, AlphabetError> {
    ominus(Kind::H, m, pair, g, cutoff)
}

pub fn e_ominus_graded(m: i64, pair: &OminusPair, g: Grading, cutoff: u32) -> Result<TruncSeries, AlphabetError> {
    ominus(Kind::E, m, pair, g, cutoff)
}

/// Expansion variable direction for a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Power series in `w`.
    W,
    /// Power series in `w^{-1}`.
    WInv,
}

/// A Laurent polynomial in `w` with polynomial coefficients, placed in the
/// numerator or denominator of a generating function.
#[derive(Clone, Debug)]
pub struct Factor {
    pub terms: BTreeMap<i32, Poly>,
    pub denominator: bool,
    pub direction: Direction,
}

impl Factor {
    /// `1 + c w^{power}` in the numerator.
    pub fn num(c: Poly, power: i32) -> Factor {
        Factor::linear(c, power, false)
    }

    /// `1 / (1 + c w^{power})`.
    pub fn den(c: Poly, power: i32) -> Factor {
        Factor::linear(c, power, true)
    }

    fn linear(c: Poly, power: i32, denominator: bool) -> Factor {
        let mut terms = BTreeMap::new();
        terms.insert(0, Poly::one());
        terms.insert(power, c);
        let direction = if power < 0 { Direction::WInv } else { Direction::W };
        Factor { terms, denominator, direction }
    }
}

/// A product of factors times `w^{shift}`.
#[derive(Clone, Debug, Default)]
pub struct GenFun {
    pub factors: Vec<Factor>,
    pub shift: i32,
}

type Laurent = BTreeMap<i32, Poly>;

fn laurent_mul(a: &Laurent, b: &Laurent, g: Grading, cutoff: u32, lo: i32, hi: i32, dropped: &mut bool) -> Laurent {
    let mut out: Laurent = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea + eb;
            if e < lo || e > hi {
                continue;
            }
            let (p, d) = ca.mul_truncated(cb, g, cutoff);
            *dropped |= d;
            if p.is_zero() {
                continue;
            }
            let slot = out.entry(e).or_insert_with(Poly::zero);
            *slot = &*slot + &p;
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Product of one side's factors. Denominators are expanded as geometric
/// series; termination comes from the grading cutoff or the exponent window.
fn side_product(factors: &[&Factor], g: Grading, cutoff: u32, lo: i32, hi: i32, dropped: &mut bool) -> Result<Laurent, AlphabetError> {
    let mut acc: Laurent = BTreeMap::from([(0, Poly::one())]);
    for f in factors {
        if !f.terms.get(&0).is_some_and(|c| c.is_one()) {
            return Err(AlphabetError::NonUnitFactor);
        }
        if !f.denominator {
            acc = laurent_mul(&acc, &f.terms, g, cutoff, lo, hi, dropped);
            continue;
        }
        // 1/(1 + r) = sum_k (-r)^k
        let mut r: Laurent = f.terms.iter().filter(|(e, _)| **e != 0).map(|(e, c)| (*e, -c)).collect();
        r.retain(|_, p| !p.is_zero());
        let mut inv: Laurent = BTreeMap::from([(0, Poly::one())]);
        let mut power: Laurent = inv.clone();
        loop {
            power = laurent_mul(&power, &r, g, cutoff, lo, hi, dropped);
            if power.is_empty() {
                break;
            }
            for (e, c) in &power {
                let slot = inv.entry(*e).or_insert_with(Poly::zero);
                *slot = &*slot + c;
            }
        }
        inv.retain(|_, p| !p.is_zero());
        acc = laurent_mul(&acc, &inv, g, cutoff, lo, hi, dropped);
    }
    Ok(acc)
}

/// Coefficient of `w^m` in `genfun`, each factor expanded in its declared
/// direction and everything truncated at `g`-degree `cutoff`. Factors
/// expanded in `w^{-1}` must have graded coefficients so that their part
/// of the product is finite.
pub fn coeff_of(genfun: &GenFun, m: i32, g: Grading, cutoff: u32) -> Result<TruncSeries, AlphabetError> {
    let m = m - genfun.shift;
    let mut neg_side = Vec::new();
    let mut pos_side = Vec::new();
    for f in &genfun.factors {
        let has_pos = f.terms.keys().any(|&e| e > 0);
        let has_neg = f.terms.keys().any(|&e| e < 0);
        match (has_pos, has_neg, f.direction) {
            (true, true, _) => return Err(AlphabetError::MixedDirection),
            (true, false, Direction::WInv) | (false, true, Direction::W) => return Err(AlphabetError::MixedDirection),
            (_, _, Direction::WInv) => neg_side.push(f),
            _ => pos_side.push(f),
        }
    }
    for f in &neg_side {
        if f.denominator && f.terms.iter().any(|(e, c)| *e != 0 && c.min_degree_in(g).is_some_and(|d| d == 0)) {
            return Err(AlphabetError::NonTerminating("w^-1 series with ungraded coefficients"));
        }
    }
    let mut dropped = false;
    let left = side_product(&neg_side, g, cutoff, i32::MIN / 4, 0, &mut dropped)?;
    let depth = left.keys().next().map(|e| -e).unwrap_or(0);
    let right = side_product(&pos_side, g, cutoff, 0, (m + depth).max(0), &mut dropped)?;
    let mut acc = Poly::zero();
    for (e, c) in &left {
        if let Some(d) = right.get(&(m - e)) {
            let (p, dr) = c.mul_truncated(d, g, cutoff);
            dropped |= dr;
            acc = &acc + &p;
        }
    }
    Ok(TruncSeries::exact(acc, g, cutoff).with_exact(!dropped))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn intervals() {
        let a = DiffAlphabet::interval(Side::A, Bounds::Closed, 2, 4);
        assert_eq!(a.plus(), &[Atom::neg(Variable::alpha(2)), Atom::neg(Variable::alpha(3)), Atom::neg(Variable::alpha(4))]);
        assert!(a.minus().is_empty());
        assert!(DiffAlphabet::interval(Side::A, Bounds::ClosedOpen, 3, 3).is_empty());
        let b = DiffAlphabet::interval(Side::B, Bounds::ClosedOpen, 3, 1);
        assert!(b.plus().is_empty());
        assert_eq!(b.minus(), &[Atom::pos(Variable::beta(1)), Atom::pos(Variable::beta(2))]);
    }

    #[test]
    fn interval_additivity() {
        for i in -2..=5 {
            for j in -2..=5 {
                for k in -2..=5 {
                    for side in [Side::A, Side::B] {
                        let ij = DiffAlphabet::interval(side, Bounds::ClosedOpen, i, j);
                        let jk = DiffAlphabet::interval(side, Bounds::ClosedOpen, j, k);
                        let ik = DiffAlphabet::interval(side, Bounds::ClosedOpen, i, k);
                        assert_eq!(&ij + &jk, ik);
                        let ij = DiffAlphabet::interval(side, Bounds::OpenClosed, i, j);
                        let jk = DiffAlphabet::interval(side, Bounds::OpenClosed, j, k);
                        let ik = DiffAlphabet::interval(side, Bounds::OpenClosed, i, k);
                        for m in 0..=3 {
                            assert_eq!(hsym(m, &(&ij + &jk)), hsym(m, &ik));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn h_and_e_values() {
        assert_eq!(hsym_n(0, 3, &DiffAlphabet::empty()), Poly::one());
        assert_eq!(hsym_n(1, 2, &DiffAlphabet::empty()), p("x1 + x2"));
        assert_eq!(hsym(-1, &DiffAlphabet::xs(2)), Poly::zero());
        let uv = DiffAlphabet::new(vec![Atom::pos(Variable::aux("u"))], vec![Atom::pos(Variable::aux("v"))]);
        assert_eq!(hsym(2, &uv), p("u^2 - u*v"));
        assert_eq!(esym_n(3, 2, &DiffAlphabet::empty()), Poly::zero());
        assert_eq!(esym_n(0, 0, &DiffAlphabet::empty()), Poly::one());
        let minus_v = DiffAlphabet::new(vec![], vec![Atom::pos(Variable::aux("v"))]);
        assert_eq!(esym(1, &minus_v), p("-v"));
        assert_eq!(esym(2, &minus_v), p("v^2"));
        assert_eq!(hsym(2, &minus_v), Poly::zero());
    }

    #[test]
    fn defining_sum_matches_generating_function() {
        let x = DiffAlphabet::honest(vec![Atom::pos(Variable::x(1)), Atom::neg(Variable::alpha(2))]);
        let y = DiffAlphabet::honest(vec![Atom::pos(Variable::beta(1)), Atom::pos(Variable::beta(3))]);
        let xy = &x - &y;
        for m in 0..=4i64 {
            let direct: Poly = (0..=m)
                .map(|k| {
                    let s = if (m - k) % 2 == 0 { Poly::one() } else { -Poly::one() };
                    s * hsym(k, &x) * esym(m - k, &y)
                })
                .sum();
            assert_eq!(hsym(m, &xy), direct);
        }
    }

    #[test]
    fn supersymmetric_cancellation_and_duality() {
        let x = DiffAlphabet::honest(vec![Atom::pos(Variable::x(1)), Atom::neg(Variable::alpha(1)), Atom::pos(Variable::beta(2))]);
        let y = DiffAlphabet::honest(vec![Atom::pos(Variable::x(2)), Atom::pos(Variable::beta(1))]);
        let z = &x - &x;
        assert!(z.is_empty());
        for m in 0..=5 {
            assert_eq!(hsym(m, &z), if m == 0 { Poly::one() } else { Poly::zero() });
            let sign = if m % 2 == 0 { Poly::one() } else { -Poly::one() };
            assert_eq!(esym(m, &(&x - &y)), sign * hsym(m, &(&y - &x)));
        }
    }

    #[test]
    fn ominus_cases() {
        let empty = OminusPair::with_xvars(2, DiffAlphabet::empty());
        for m in -2..=3 {
            let s = h_ominus(m, &empty, 4).unwrap();
            assert!(s.is_exact());
            assert_eq!(s.body(), &hsym_n(m, 2, &DiffAlphabet::empty()));
        }
        let b1 = OminusPair::new(DiffAlphabet::empty(), DiffAlphabet::b(1));
        let s = h_ominus(0, &b1, 5).unwrap();
        assert_eq!(s.body(), &Poly::one());
        // h_{-1}(x1 ⊖ {b1}) = sum_{b>=1} x1^{b-1} b1^b
        let pair = OminusPair::with_xvars(1, DiffAlphabet::b(1));
        let s = h_ominus(-1, &pair, 3).unwrap();
        assert_eq!(s.body(), &p("b1 + x1*b1^2 + x1^2*b1^3"));
        assert!(!s.is_exact());
        // a purely negative shift terminates
        let neg = OminusPair::with_xvars(1, -&DiffAlphabet::b(2));
        let s = h_ominus(0, &neg, 6).unwrap();
        assert!(s.is_exact());
        assert_eq!(s.body(), &p("1 - x1*b1 - x1*b2 + x1^2*b1*b2"));
    }

    #[test]
    fn coefficient_extraction() {
        let g = Grading::AB;
        let geo = GenFun { factors: vec![Factor::den(-Poly::x(1), 1)], shift: 0 };
        assert_eq!(coeff_of(&geo, 2, g, 3).unwrap().body(), &p("x1^2"));
        let inv = GenFun { factors: vec![Factor::den(-Poly::beta(1), -1)], shift: 0 };
        assert_eq!(coeff_of(&inv, 1, g, 3).unwrap().body(), &Poly::zero());
        assert_eq!(coeff_of(&inv, -2, g, 3).unwrap().body(), &p("b1^2"));
        // the h_ominus example as a contour coefficient
        let mixed = GenFun { factors: vec![Factor::den(-Poly::x(1), 1), Factor::den(-Poly::beta(1), -1)], shift: 0 };
        let pair = OminusPair::with_xvars(1, DiffAlphabet::b(1));
        assert_eq!(coeff_of(&mixed, -1, g, 3).unwrap().body(), h_ominus(-1, &pair, 3).unwrap().body());
        let mut bad = Factor::den(Poly::x(1), 1);
        bad.terms.insert(0, Poly::constant(2));
        assert_eq!(coeff_of(&GenFun { factors: vec![bad], shift: 0 }, 0, g, 2).unwrap_err(), AlphabetError::NonUnitFactor);
        let ungraded = GenFun { factors: vec![Factor::den(-Poly::x(1), -1)], shift: 0 };
        assert!(coeff_of(&ungraded, 0, g, 2).is_err());
    }

    #[test]
    fn branching_of_unions() {
        let x = DiffAlphabet::xs(2);
        let xp = DiffAlphabet::honest(vec![Atom::pos(Variable::x(3))]);
        let y = DiffAlphabet::b(2);
        let yp = DiffAlphabet::a(1);
        let whole = &(&x + &xp) - &(&y + &yp);
        for m in 0..=4 {
            let split: Poly = (0..=m).map(|a| hsym(a, &(&x - &y)) * hsym(m - a, &(&xp - &yp))).sum();
            assert_eq!(hsym(m, &whole), split);
        }
    }
}
