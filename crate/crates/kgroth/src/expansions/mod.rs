//! Expansion coefficients between the deformed bases: the matrix elements
//! `I`, `E`, `D` and their e-analogues, the one-parameter reduction
//! coefficients `b` and `B`, corner decompositions, and Schur expansions.

mod schur;

pub use schur::{schur_expand, schur_expand_through, SchurExpansion};

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::alphabets::{esym, hsym, Bounds, DiffAlphabet, Side};
use crate::grothendieck::{build_matrix, GrothError, Variant};
use crate::partitions::{Partition, SkewShape};
use crate::polynomial::{determinant, Grading, Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExpansionError {
    #[error(transparent)]
    Groth(#[from] GrothError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("polynomial is not symmetric in x1..x{0}")]
    NotSymmetric(usize),
    #[error("term of degree {degree} lies outside the faithful window {faithful}")]
    Unfaithful { degree: usize, faithful: usize },
    #[error("{0}")]
    Invalid(String),
}

/// The coefficient families. `LittleB` is `b^μ_λ`, `BigB` is `B^μ_λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffKind {
    I,
    ITilde,
    E,
    ETilde,
    D,
    DTilde,
    LittleB,
    BigB,
}

impl CoeffKind {
    pub const ALL: [CoeffKind; 8] = [
        CoeffKind::I,
        CoeffKind::ITilde,
        CoeffKind::E,
        CoeffKind::ETilde,
        CoeffKind::D,
        CoeffKind::DTilde,
        CoeffKind::LittleB,
        CoeffKind::BigB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoeffKind::I => "I",
            CoeffKind::ITilde => "Itilde",
            CoeffKind::E => "E",
            CoeffKind::ETilde => "Etilde",
            CoeffKind::D => "D",
            CoeffKind::DTilde => "Dtilde",
            CoeffKind::LittleB => "b",
            CoeffKind::BigB => "B",
        }
    }

    pub fn parse(s: &str) -> Option<CoeffKind> {
        CoeffKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

fn a(i: i64) -> DiffAlphabet {
    DiffAlphabet::a(i)
}

fn b(i: i64) -> DiffAlphabet {
    DiffAlphabet::b(i)
}

fn b_int(bounds: Bounds, i: i64, j: i64) -> DiffAlphabet {
    DiffAlphabet::interval(Side::B, bounds, i, j)
}

fn det_of<F>(l: usize, f: F) -> Result<Poly, ExpansionError>
where
    F: Fn(i64, i64) -> Poly + Sync,
{
    let m = build_matrix(l, |i, j| Ok(f(i, j)))?;
    Ok(determinant(&m)?)
}

/// The coefficient with subscript `lower` and superscript `upper`, e.g.
/// `coeff_matrix(I, λ, ν) = I^ν_λ` and `coeff_matrix(LittleB, λ, μ) = b^μ_λ`.
pub fn coeff_matrix(kind: CoeffKind, lower: &Partition, upper: &Partition) -> Result<Poly, ExpansionError> {
    coeff_matrix_padded(kind, lower, upper, lower.len().max(upper.len()))
}

/// As [`coeff_matrix`] with an explicit determinant size `l`.
pub fn coeff_matrix_padded(kind: CoeffKind, lower: &Partition, upper: &Partition, l: usize) -> Result<Poly, ExpansionError> {
    if l < lower.len().max(upper.len()) {
        return Err(ExpansionError::Invalid(format!("size {l} below the lengths of {lower} and {upper}")));
    }
    let (lo, up) = (lower, upper);
    match kind {
        CoeffKind::I => det_of(l, |i, j| hsym(up.at(i) - lo.at(j) - i + j, &(&a(lo.at(j)) - &b(j - 1)))),
        CoeffKind::ITilde => det_of(l, |i, j| esym(up.at(i) - lo.at(j) - i + j, &(&a(j - 1) - &b(lo.at(j))))),
        CoeffKind::D => det_of(l, |i, j| hsym(up.at(i) - lo.at(j) - i + j, &(&b(i) - &a(up.at(i))))),
        CoeffKind::DTilde => det_of(l, |i, j| esym(up.at(i) - lo.at(j) - i + j, &(&b(up.at(i)) - &a(i)))),
        CoeffKind::E => det_of(l, |i, j| hsym(lo.at(i) - up.at(j) - i + j, &(&b(i - 1) - &a(lo.at(i) - 1)))),
        CoeffKind::ETilde => det_of(l, |i, j| esym(lo.at(i) - up.at(j) - i + j, &(&b(lo.at(i) - 1) - &a(i - 1)))),
        CoeffKind::LittleB => det_of(l, |i, j| {
            hsym(lo.at(i) - up.at(j) - i + j, &(&b_int(Bounds::ClosedOpen, j, i) - &a(lo.at(i) - 1)))
        }),
        CoeffKind::BigB => det_of(l, |i, j| {
            hsym(-lo.at(i) + up.at(j) + i - j, &(&a(lo.at(i)) - &b_int(Bounds::ClosedOpen, j, i)))
        }),
    }
}

/// `b^μ_λ` or `B^μ_λ` from the determinant over conjugate shapes, of size
/// `l ≥ λ_1, μ_1`.
pub fn coeff_matrix_conjugate(kind: CoeffKind, lower: &Partition, upper: &Partition, l: usize) -> Result<Poly, ExpansionError> {
    if l < lower.first().max(upper.first()) {
        return Err(ExpansionError::Invalid(format!("size {l} below the first parts of {lower} and {upper}")));
    }
    let (lc, uc) = (lower.conjugate(), upper.conjugate());
    let diff = lower.size() as i64 - upper.size() as i64;
    let d = match kind {
        CoeffKind::LittleB => det_of(l, |i, j| {
            hsym(lc.at(i) - uc.at(j) - i + j, &(&a(i - 1) - &b_int(Bounds::Open, uc.at(j), lc.at(i))))
        })?,
        CoeffKind::BigB => det_of(l, |i, j| {
            hsym(-lc.at(i) + uc.at(j) + i - j, &(&b_int(Bounds::Closed, uc.at(j), lc.at(i)) - &a(i - 1)))
        })?,
        _ => return Err(ExpansionError::Invalid(format!("no conjugate determinant for {}", kind.name()))),
    };
    Ok(if diff % 2 == 0 { d } else { -d })
}

/// `det[h_{λ_i-μ_j-i+j}((A_{μ_j} ⊔ B_{i-1}) / (A_{λ_i-1} ⊔ B_{j-1}))]`, the
/// pairing of the upper bra of `μ` with the upper ket of `λ`.
pub fn duality_pairing(lam: &Partition, mu: &Partition) -> Result<Poly, ExpansionError> {
    duality_pairing_padded(lam, mu, lam.len().max(mu.len()))
}

/// As [`duality_pairing`] with an explicit determinant size `l`.
pub fn duality_pairing_padded(lam: &Partition, mu: &Partition, l: usize) -> Result<Poly, ExpansionError> {
    det_of(l, |i, j| {
        let plus = &a(mu.at(j)) + &b(i - 1);
        let minus = &a(lam.at(i) - 1) + &b(j - 1);
        hsym(lam.at(i) - mu.at(j) - i + j, &(&plus - &minus))
    })
}

/// Direction of a corner decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CornerDirection {
    /// The single-bracket bra of `μ` in terms of double-bracket bras.
    Forward,
    /// The double-bracket bra of `μ` in terms of single-bracket bras.
    Inverse,
}

/// `α_j + β_i` for the cell in row `i`, column `j`.
pub fn cell_weight(i: usize, j: usize) -> Poly {
    &Poly::alpha(j) + &Poly::beta(i)
}

/// Forward: `ν` runs over corner-deleted shapes with weight `Π -(α_j + β_i)`.
/// Inverse: `ν` runs over all subshapes with weight `Π (α_j + β_i)`. Cells
/// `(i, j)` are row and column of `μ/ν`.
pub fn corner_expand(mu: &Partition, dir: CornerDirection) -> Vec<(Partition, Poly)> {
    let mut out: Vec<(Partition, Poly)> = match dir {
        CornerDirection::Forward => mu
            .corner_removals()
            .into_iter()
            .map(|(nu, cells)| (nu, cells.iter().map(|&(i, j)| -cell_weight(i, j)).product()))
            .collect(),
        CornerDirection::Inverse => Partition::empty()
            .between(mu)
            .into_iter()
            .map(|nu| {
                let w = SkewShape::new(mu.clone(), nu.clone()).cells().into_iter().map(|(i, j)| cell_weight(i, j)).product();
                (nu, w)
            })
            .collect(),
    };
    out.sort_by(|x, y| y.0.cmp(&x.0));
    out
}

/// Composes the forward and inverse corner expansions of `mu` as formal
/// combinations of single-bracket bras; the result is `{μ: 1}` exactly.
pub fn corner_roundtrip(mu: &Partition) -> BTreeMap<Partition, Poly> {
    let mut acc: BTreeMap<Partition, Poly> = BTreeMap::new();
    for (nu, w) in corner_expand(mu, CornerDirection::Forward) {
        for (eta, v) in corner_expand(&nu, CornerDirection::Inverse) {
            let e = acc.entry(eta).or_insert_with(Poly::zero);
            *e = &*e + &(&w * &v);
        }
    }
    acc.retain(|_, p| !p.is_zero());
    acc
}

/// Coefficients of `g_λ(x;α,β)` in the `g_μ(x;0,β)` (all `μ ⊆ λ`), or of
/// `G_λ(x;α,β)` in the `G_μ(x;0,β)` for `λ ⊆ μ`, `|μ| ≤ |λ| + budget`.
/// Zero coefficients are dropped.
pub fn decompose_one_param(lam: &Partition, side: Variant, budget: usize) -> Result<BTreeMap<Partition, Poly>, ExpansionError> {
    let shapes: Vec<Partition> = match side {
        Variant::Dual => Partition::empty().between(lam),
        Variant::G => {
            let top = lam.size() + budget;
            (lam.size()..=top).flat_map(|s| Partition::of_size(s, s)).filter(|mu| mu.contains(lam)).collect()
        }
        Variant::Gds => return Err(ExpansionError::Invalid("one-parameter decompositions cover g and G".into())),
    };
    let kind = if side == Variant::Dual { CoeffKind::LittleB } else { CoeffKind::BigB };
    let vals: Vec<(Partition, Poly)> = shapes
        .into_par_iter()
        .map(|mu| coeff_matrix(kind, lam, &mu).map(|c| (mu, c)))
        .collect::<Result<_, _>>()?;
    Ok(vals.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

fn shapes_above(lam: &Partition, extra: usize, max_len: usize) -> Vec<Partition> {
    (lam.size()..=lam.size() + extra)
        .flat_map(|s| Partition::of_size(s, max_len))
        .filter(|nu| nu.contains(lam))
        .collect()
}

/// The Schur-expansion sums for `G_{λ/μ}` (`D s I`), `G_{λ⫽μ}` (`E* s I`)
/// and `g_{λ/μ}` (`I* s E`) in `x_1..x_n`. The `G` sums are infinite and
/// are cut at (α,β)-degree `cutoff`; the `g` sum is exact.
pub fn matrix_element_sum(lam: &Partition, mu: &Partition, variant: Variant, n: usize, cutoff: u32) -> Result<Poly, ExpansionError> {
    let x = DiffAlphabet::xs(n);
    let c = cutoff as usize;
    let mut terms: Vec<(Partition, Partition, Poly)> = Vec::new();
    match variant {
        Variant::Dual => {
            for eta in mu.between(lam) {
                let left = coeff_matrix(CoeffKind::I, mu, &eta)?;
                if left.is_zero() {
                    continue;
                }
                for nu in eta.between(lam) {
                    let right = coeff_matrix(CoeffKind::E, lam, &nu)?;
                    terms.push((nu, eta.clone(), &left * &right));
                }
            }
        }
        Variant::G | Variant::Gds => {
            if !lam.contains(mu) {
                return Err(ExpansionError::Invalid("matrix-element sums need μ ⊆ λ".into()));
            }
            let etas: Vec<Partition> = Partition::empty().between(mu).into_iter().filter(|e| mu.size() - e.size() <= c).collect();
            let nus = shapes_above(lam, c, lam.len() + n);
            for eta in &etas {
                let left = match variant {
                    Variant::G => coeff_matrix(CoeffKind::D, eta, mu)?,
                    _ => coeff_matrix(CoeffKind::E, mu, eta)?,
                };
                if left.is_zero() {
                    continue;
                }
                for nu in &nus {
                    if (nu.size() - lam.size()) + (mu.size() - eta.size()) > c {
                        continue;
                    }
                    let right = coeff_matrix(CoeffKind::I, lam, nu)?;
                    terms.push((nu.clone(), eta.clone(), &left * &right));
                }
            }
        }
    }
    let parts: Vec<Poly> = terms
        .into_par_iter()
        .filter(|(_, _, k)| !k.is_zero())
        .map(|(nu, eta, k)| &k * &crate::grothendieck::schur_skew(&nu, &eta, &x))
        .collect();
    let total: Poly = parts.into_iter().sum();
    Ok(if variant == Variant::Dual { total } else { total.truncate(Grading::AB, cutoff) })
}

/// Every coefficient nonnegative.
pub fn is_nonnegative(p: &Poly) -> bool {
    p.terms().iter().all(|(_, c)| !c.is_negative())
}

/// `p ∈ ℤ≥0[-α, -β]`: each coefficient has the sign of `(-1)^degree`.
pub fn is_nonnegative_in_negated(p: &Poly) -> bool {
    p.terms().iter().all(|(m, c)| c.is_zero() || (c.is_negative() == (m.degree_in(Grading::AB) % 2 == 1)))
}
