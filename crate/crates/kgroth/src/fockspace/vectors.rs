use crate::alphabets::{Bounds, DiffAlphabet, Side};
use crate::partitions::Partition;
use crate::polynomial::{Grading, Poly, TruncSeries};

use super::{FockError, FockVector};

pub use crate::grothendieck::Variant;

/// Index window `[lo, hi)` of a Fock computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    /// `[-(l + lambda_1 + cutoff + 2), lambda_1 + 2 cutoff + 2)`; the
    /// conjugated creation operators of the upper kets climb up to two
    /// sites per unit of cutoff.
    pub fn default_for(l: usize, lambda1: usize, cutoff: u32) -> Window {
        let (l, w, c) = (l as i64, lambda1 as i64, cutoff as i64);
        Window { lo: -(l + w + c + 2), hi: w + 2 * c + 2 }
    }

    /// Smallest default window that serves both shapes.
    pub fn for_pair(lam: &Partition, mu: &Partition, l: usize, cutoff: u32) -> Window {
        Window::default_for(l, lam.first().max(mu.first()), cutoff)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KetKind {
    /// `|lambda>^{[alpha,beta]}`, a truncated series.
    Upper,
    /// The same vector built from the `sigma_l = 0` presentation.
    UpperAlternate,
    /// `|lambda>_{[alpha,beta]}`, finite.
    Lower,
    /// The Schur basis vector `|lambda>`.
    Schur,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraKind {
    /// `^{[alpha,beta]}<mu|`, the dual of the lower ket.
    Upper,
    /// `_{[alpha,beta]}<mu|`, the dual of the upper ket.
    Lower,
    /// `^{[[alpha,beta]]}<mu|`.
    DoubleBracket,
    Schur,
}

fn a(i: i64) -> DiffAlphabet {
    DiffAlphabet::a(i)
}

fn b(i: i64) -> DiffAlphabet {
    DiffAlphabet::b(i)
}

fn single_beta(i: i64) -> DiffAlphabet {
    DiffAlphabet::interval(Side::B, Bounds::Closed, i, i)
}

/// `e^{H(S)} psi_n e^{-H(S)}` (or the starred exponentials) applied to `v`.
fn conjugated(v: &FockVector, s: &DiffAlphabet, n: i64, dual: bool, star_psi: bool) -> Result<FockVector, FockError> {
    let w = v.exp_alphabet(s, -1, dual)?;
    let w = if star_psi { w.psi_star(n)? } else { w.psi(n)? };
    w.exp_alphabet(s, 1, dual)
}

/// The canonical kets with `sigma = lambda`, built on `|-l>`. Upper kets are
/// truncated at (alpha,beta)-degree `cutoff`.
pub fn canonical_ket(kind: KetKind, lam: &Partition, l: usize, win: Window, cutoff: u32) -> Result<FockVector, FockError> {
    if l < lam.len() {
        return Err(FockError::Shape(format!("padded length {l} shorter than {lam}")));
    }
    let li = l as i64;
    let vac = FockVector::vacuum(-li, win.lo, win.hi)?;
    match kind {
        KetKind::Schur => FockVector::basis(lam, 0, win.lo, win.hi),
        KetKind::Lower => {
            let mut v = vac;
            for i in (1..=li).rev() {
                let ai = a(lam.at(i) - 1);
                v = v.exp_alphabet(&ai, 1, false)?;
                v = v.exp_alphabet(&single_beta(i), 1, false)?;
                v = v.psi(lam.at(i) - i)?;
                v = v.exp_alphabet(&ai, -1, false)?;
            }
            Ok(v)
        }
        KetKind::Upper => {
            let mut v = vac.with_truncation(Grading::AB, cutoff);
            v = v.exp_alphabet(&a(lam.at(li)), 1, true)?;
            for i in (1..=li).rev() {
                let ai = a(lam.at(i));
                v = v.exp_alphabet(&ai, -1, true)?;
                v = v.exp_alphabet(&single_beta(i), -1, true)?;
                v = v.psi(lam.at(i) - i)?;
                v = v.exp_alphabet(&ai, 1, true)?;
            }
            Ok(v)
        }
        KetKind::UpperAlternate => {
            if lam.at(li) != 0 {
                return Err(FockError::Shape("alternate form needs a trailing zero part".into()));
            }
            let mut v = vac.with_truncation(Grading::AB, cutoff);
            for i in (1..=li).rev() {
                let s = &a(lam.at(i)) + &DiffAlphabet::interval(Side::B, Bounds::Closed, i, li);
                v = conjugated(&v, &s, lam.at(i) - i, true, false)?;
            }
            v.exp_alphabet(&b(li), -1, true)
        }
    }
}

/// The ket `|w*>` representing the bra `<w|`.
pub fn canonical_bra_star(kind: BraKind, mu: &Partition, l: usize, win: Window, cutoff: u32) -> Result<FockVector, FockError> {
    match kind {
        BraKind::Upper => canonical_ket(KetKind::Lower, mu, l, win, cutoff),
        BraKind::Lower => canonical_ket(KetKind::Upper, mu, l, win, cutoff),
        BraKind::Schur => canonical_ket(KetKind::Schur, mu, l, win, cutoff),
        BraKind::DoubleBracket => {
            if l < mu.len() {
                return Err(FockError::Shape(format!("padded length {l} shorter than {mu}")));
            }
            let li = l as i64;
            let mut v = FockVector::vacuum(-li, win.lo, win.hi)?;
            for i in (1..=li).rev() {
                let s = &b(i) - &a(mu.at(i));
                v = conjugated(&v, &s, mu.at(i) - i, false, false)?;
            }
            Ok(v)
        }
    }
}

/// Conjugate-shape presentations built on `|l>` with `l >= lambda_1`:
/// returns the ket for `lambda'` (lower or upper) or the star of the
/// double-bracket bra of `lambda'`.
pub fn conjugate_ket(kind: BraOrKet, lam: &Partition, l: usize, win: Window, cutoff: u32) -> Result<FockVector, FockError> {
    if l < lam.first() || l < lam.len() {
        return Err(FockError::Shape(format!("padded length {l} too small for {lam}")));
    }
    let li = l as i64;
    let sign = if lam.size() % 2 == 0 { 1 } else { -1 };
    let vac = FockVector::vacuum(li, win.lo, win.hi)?;
    let v = match kind {
        BraOrKet::LowerKet => {
            let mut v = vac;
            for i in (1..=li).rev() {
                let s = &b(lam.at(i) - 1) - &a(i - 1);
                v = conjugated(&v, &s, i - 1 - lam.at(i), false, true)?;
            }
            v
        }
        BraOrKet::UpperKet => {
            let mut v = vac.with_truncation(Grading::AB, cutoff);
            let ll = lam.at(li);
            for i in (1..=li).rev() {
                let s = &DiffAlphabet::interval(Side::B, Bounds::Closed, lam.at(i), ll)
                    - &DiffAlphabet::interval(Side::A, Bounds::OpenClosed, i, li);
                v = conjugated(&v, &s, i - 1 - lam.at(i), true, true)?;
            }
            v.exp_alphabet(&(&a(li) - &b(ll)), 1, true)?
        }
        BraOrKet::DoubleBracketStar => {
            let mut v = vac;
            for i in (1..=li).rev() {
                let s = &b(lam.at(i)) - &a(i);
                v = conjugated(&v, &s, i - 1 - lam.at(i), false, true)?;
            }
            v
        }
    };
    Ok(v.scale(&Poly::constant(sign)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraOrKet {
    LowerKet,
    UpperKet,
    DoubleBracketStar,
}

/// `<bra| e^{H(X)} |ket>` for the pair of vectors defining each variant.
/// G-side values are truncated at (alpha,beta)-degree `cutoff`; the dual
/// variant is exact.
pub fn fock_matrix_element(
    mu: &Partition,
    lam: &Partition,
    variant: Variant,
    x: &DiffAlphabet,
    win: Option<Window>,
    cutoff: u32,
) -> Result<TruncSeries, FockError> {
    let l = lam.len().max(mu.len()) + 1;
    match variant {
        Variant::G | Variant::Gds => {
            let win = win.unwrap_or_else(|| Window::for_pair(lam, mu, l, cutoff));
            let ket = canonical_ket(KetKind::Upper, lam, l, win, cutoff)?.exp_alphabet(x, 1, false)?;
            let bra_kind = if variant == Variant::G { BraKind::DoubleBracket } else { BraKind::Upper };
            let bra = canonical_bra_star(bra_kind, mu, l, win, cutoff)?;
            let val = bra.pair(&ket)?;
            Ok(TruncSeries::inexact(val, Grading::AB, cutoff))
        }
        Variant::Dual => {
            let need = (lam.size() as i64 - mu.size() as i64).max(0) as u32;
            let win = win.unwrap_or_else(|| Window::for_pair(lam, mu, l, need));
            let ket = canonical_ket(KetKind::Lower, lam, l, win, 0)?.exp_alphabet(x, 1, false)?;
            let bra = canonical_bra_star(BraKind::Lower, mu, l, win, need)?;
            Ok(TruncSeries::exact(bra.pair(&ket)?, Grading::AB, cutoff))
        }
    }
}

/// The staged fermionic expression for the row-flagged `G` with
/// `r = (1, ..., 1)` and flags `s`, one per row.
pub fn flagged_fock_element(lam: &Partition, mu: &Partition, s: &[usize], cutoff: u32) -> Result<TruncSeries, FockError> {
    let l = s.len();
    if l < lam.len() || l < mu.len() {
        return Err(FockError::Shape("one flag per row is required".into()));
    }
    let li = l as i64;
    let smax = s.iter().copied().max().unwrap_or(0);
    let win = Window::default_for(l, lam.first().max(mu.first()), cutoff + smax as u32);
    let mut v = FockVector::vacuum(-li, win.lo, win.hi)?.with_truncation(Grading::AB, cutoff);
    for i in (1..=li).rev() {
        let xi = DiffAlphabet::xs(s[i as usize - 1]);
        let si = &a(lam.at(i)) + &DiffAlphabet::interval(Side::B, Bounds::Closed, i, li);
        v = v.exp_alphabet(&xi, -1, false)?;
        v = conjugated(&v, &si, lam.at(i) - i, true, false)?;
        v = v.exp_alphabet(&xi, 1, false)?;
    }
    let mut bra = FockVector::vacuum(-li, win.lo, win.hi)?;
    for j in (1..=li).rev() {
        let t = &a(mu.at(j)) + &DiffAlphabet::interval(Side::B, Bounds::OpenClosed, j, li);
        bra = conjugated(&bra, &-&t, mu.at(j) - j, false, false)?;
    }
    let pre: Poly = (1..=l)
        .flat_map(|i| (1..=s[i - 1]).map(move |k| &Poly::one() - &(Poly::beta(i) * Poly::x(k))))
        .product();
    let val = bra.pair(&v)?;
    let (body, _) = val.mul_truncated(&pre, Grading::AB, cutoff);
    Ok(TruncSeries::inexact(body, Grading::AB, cutoff))
}
