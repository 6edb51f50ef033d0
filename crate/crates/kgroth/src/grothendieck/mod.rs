//! Jacobi-Trudi evaluators for `G_{λ/μ}`, `G_{λ⫽μ}` and `g_{λ/μ}`, together
//! with the alternative determinant, integral and flagged formulas.
//!
//! The `G`-side functions are power series in the (α,β)-variables once α is
//! nonzero, so they are returned as [`TruncSeries`] in (α,β)-degree. A result
//! is accepted only when recomputing at `cutoff + 2` reproduces it.

mod flagged;
mod integral;

pub use flagged::{det_formula_g, flagged_g, flagged_g_gdet, single_row_g};
pub use integral::{integral_jt, IntegralFormula};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabets::{esym, h_ominus, e_ominus, hsym, AlphabetError, Bounds, DiffAlphabet, OminusPair, Side};
use crate::partitions::Partition;
use crate::polynomial::{determinant, determinant_series, Grading, Poly, PolyError, TruncSeries};

/// Default (α,β)-degree cutoff for `G`-side values.
pub const DEFAULT_CUTOFF: u32 = 3;
/// Largest cutoff tried by the stability loop.
pub const MAX_CUTOFF: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// `G_{λ/μ}`.
    G,
    /// `G_{λ⫽μ}`.
    Gds,
    /// `g_{λ/μ}`.
    #[serde(rename = "g")]
    Dual,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::G => "G",
            Variant::Gds => "Gds",
            Variant::Dual => "g",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "G" => Some(Variant::G),
            "Gds" => Some(Variant::Gds),
            "g" => Some(Variant::Dual),
            _ => None,
        }
    }

    pub const ALL: [Variant; 3] = [Variant::G, Variant::Gds, Variant::Dual];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form {
    H,
    E,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrothError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("result not stable under truncation (last cutoff tried: {cutoff})")]
    Unstable { cutoff: u32 },
    #[error("inadmissible flags: {0}")]
    Flag(String),
    #[error("{0}")]
    Invalid(String),
}

/// A Jacobi-Trudi evaluation request. `pad` appends that many zero parts on
/// top of the minimal padded length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JTRequest {
    pub outer: Partition,
    pub inner: Partition,
    pub nvars: usize,
    pub variant: Variant,
    pub form: Form,
    pub cutoff: Option<u32>,
    pub pad: usize,
}

impl JTRequest {
    pub fn new(outer: Partition, inner: Partition, nvars: usize, variant: Variant) -> JTRequest {
        JTRequest { outer, inner, nvars, variant, form: Form::H, cutoff: None, pad: 0 }
    }

    pub fn form(mut self, form: Form) -> JTRequest {
        self.form = form;
        self
    }

    pub fn cutoff(mut self, c: u32) -> JTRequest {
        self.cutoff = Some(c);
        self
    }

    pub fn pad(mut self, pad: usize) -> JTRequest {
        self.pad = pad;
        self
    }
}

fn a_int(b: Bounds, i: i64, j: i64) -> DiffAlphabet {
    DiffAlphabet::interval(Side::A, b, i, j)
}

fn b_int(b: Bounds, i: i64, j: i64) -> DiffAlphabet {
    DiffAlphabet::interval(Side::B, b, i, j)
}

/// Builds an `l x l` matrix with entries computed in parallel.
pub(crate) fn build_matrix<T, F>(l: usize, f: F) -> Result<Vec<Vec<T>>, GrothError>
where
    T: Send,
    F: Fn(i64, i64) -> Result<T, GrothError> + Sync,
{
    let flat: Vec<T> = (0..l * l)
        .into_par_iter()
        .map(|k| f((k / l) as i64 + 1, (k % l) as i64 + 1))
        .collect::<Result<_, _>>()?;
    let mut it = flat.into_iter();
    Ok((0..l).map(|_| it.by_ref().take(l).collect()).collect())
}

/// `s_{λ/μ}(X) = det[h_{λ_i-μ_j-i+j}(X)]`.
pub fn schur_skew(lam: &Partition, mu: &Partition, x: &DiffAlphabet) -> Poly {
    let l = lam.len().max(mu.len());
    let m = build_matrix(l, |i, j| Ok(hsym(lam.at(i) - mu.at(j) - i + j, x))).expect("infallible");
    determinant(&m).expect("matrix within size limit")
}

/// `Π_i Π_{x in X} (1 - β_i x)` for `i = 1..l`.
fn c_prefactor(l: usize, x: &DiffAlphabet) -> Result<Poly, GrothError> {
    if !x.minus().is_empty() {
        return Err(GrothError::Invalid("prefactor needs an honest x-alphabet".into()));
    }
    Ok((1..=l)
        .flat_map(|i| x.plus().iter().map(move |a| &Poly::one() - &(Poly::beta(i) * a.value())))
        .product())
}

/// `Π_i Π_{x in X} (1 + α_i x)` for `i = 1..l`, the inverse of `C'`.
fn c_prime_inverse(l: usize, x: &DiffAlphabet) -> Result<Poly, GrothError> {
    if !x.minus().is_empty() {
        return Err(GrothError::Invalid("prefactor needs an honest x-alphabet".into()));
    }
    Ok((1..=l)
        .flat_map(|i| x.plus().iter().map(move |a| &Poly::one() + &(Poly::alpha(i) * a.value())))
        .product())
}

fn padded_lengths(lam: &Partition, mu: &Partition, form: Form, pad: usize) -> usize {
    match form {
        Form::H => lam.len().max(mu.len()) + pad,
        Form::E => lam.first().max(mu.first()) + pad,
    }
}

/// `g_{λ/μ}(X; α, β)` for an arbitrary (difference) x-alphabet.
pub fn jt_g_alphabet(lam: &Partition, mu: &Partition, form: Form, x: &DiffAlphabet, pad: usize) -> Result<Poly, GrothError> {
    let l = padded_lengths(lam, mu, form, pad);
    let m = match form {
        Form::H => build_matrix(l, |i, j| {
            let (li, mj) = (lam.at(i), mu.at(j));
            let s = x + &(&a_int(Bounds::Closed, li, mj) + &b_int(Bounds::ClosedOpen, j, i));
            Ok(hsym(li - mj - i + j, &s))
        })?,
        Form::E => {
            let (lc, mc) = (lam.conjugate(), mu.conjugate());
            build_matrix(l, |i, j| {
                let (li, mj) = (lc.at(i), mc.at(j));
                let s = x + &(&a_int(Bounds::ClosedOpen, i, j) + &b_int(Bounds::Open, mj, li));
                Ok(esym(li - mj - i + j, &s))
            })?
        }
    };
    Ok(determinant(&m)?)
}

/// `G_{λ/μ}` or `G_{λ⫽μ}` for an honest x-alphabet at a fixed cutoff, with
/// no stability check.
///
/// For `G_{λ⫽μ}` the pairing of the dressed fermions only sees sites at or
/// above the vacuum level, which cuts the bra-side sum short whenever a part
/// of `μ` inside the padded length is zero. The plain determinant of
/// `h(X ⊖ (A_[μ_j,λ_i] ⊔ B_[i,j)))` ignores this and is available as
/// [`jt_gds_literal`]; here the cut sums are used.
pub fn jt_big_g_alphabet(
    lam: &Partition,
    mu: &Partition,
    variant: Variant,
    form: Form,
    x: &DiffAlphabet,
    pad: usize,
    cutoff: u32,
) -> Result<TruncSeries, GrothError> {
    match (variant, form) {
        (Variant::G, _) => jt_shifted(lam, mu, variant, form, x, pad, cutoff),
        (Variant::Gds, Form::H) => gds_h(lam, mu, x, pad, cutoff),
        (Variant::Gds, Form::E) => gds_e(lam, mu, x, pad, cutoff),
        (Variant::Dual, _) => Err(GrothError::Invalid("dual variant is polynomial".into())),
    }
}

/// The determinant of `h(X ⊖ (A_[μ_j,λ_i] ⊔ B_[i,j)))` (or its `e`
/// counterpart) times the prefactor, taken literally.
pub fn jt_gds_literal(
    lam: &Partition,
    mu: &Partition,
    form: Form,
    x: &DiffAlphabet,
    pad: usize,
    cutoff: u32,
) -> Result<TruncSeries, GrothError> {
    jt_shifted(lam, mu, Variant::Gds, form, x, pad, cutoff)
}

fn jt_shifted(
    lam: &Partition,
    mu: &Partition,
    variant: Variant,
    form: Form,
    x: &DiffAlphabet,
    pad: usize,
    cutoff: u32,
) -> Result<TruncSeries, GrothError> {
    let g = Grading::AB;
    let l = padded_lengths(lam, mu, form, pad);
    let unit = TruncSeries::one(g, cutoff);
    match form {
        Form::H => {
            let m = build_matrix(l, |i, j| {
                let (li, mj) = (lam.at(i), mu.at(j));
                let shift = match variant {
                    Variant::G => &a_int(Bounds::OpenClosed, mj, li) + &b_int(Bounds::Closed, i, j),
                    _ => &a_int(Bounds::Closed, mj, li) + &b_int(Bounds::ClosedOpen, i, j),
                };
                Ok(h_ominus(li - mj - i + j, &OminusPair::new(x.clone(), shift), cutoff)?)
            })?;
            let d = determinant_series(&m, &unit)?;
            Ok(d.mul_poly(&c_prefactor(l, x)?))
        }
        Form::E => {
            let (lc, mc) = (lam.conjugate(), mu.conjugate());
            let m = build_matrix(l, |i, j| {
                let (li, mj) = (lc.at(i), mc.at(j));
                let shift = match variant {
                    Variant::G => &a_int(Bounds::Open, j, i) + &b_int(Bounds::OpenClosed, li, mj),
                    _ => &a_int(Bounds::ClosedOpen, j, i) + &b_int(Bounds::Open, li, mj),
                };
                Ok(e_ominus(li - mj - i + j, &OminusPair::new(x.clone(), shift), cutoff)?)
            })?;
            let d = determinant_series(&m, &unit)?;
            let inv = TruncSeries::exact(c_prime_inverse(l, x)?, g, cutoff).inverse()?;
            Ok(d.checked_mul(&inv)?)
        }
    }
}

/// Row form of `G_{λ⫽μ}`: entries
/// `Σ_{k ≤ μ_j-j+l} (-1)^k e_k(A_{μ_j-1} ⊔ B_[j,l]) h_{λ_i-μ_j-i+j+k}(X ⊖ (A_{λ_i} ⊔ B_[i,l]))`.
fn gds_h(lam: &Partition, mu: &Partition, x: &DiffAlphabet, pad: usize, cutoff: u32) -> Result<TruncSeries, GrothError> {
    let g = Grading::AB;
    let l = padded_lengths(lam, mu, Form::H, pad);
    let li_ = l as i64;
    let m = build_matrix(l, |i, j| {
        let (lmi, mj) = (lam.at(i), mu.at(j));
        let t = &DiffAlphabet::a(lmi) + &b_int(Bounds::Closed, i, li_);
        let s = &DiffAlphabet::a(mj - 1) + &b_int(Bounds::Closed, j, li_);
        let top = (mj - j + li_).min(cutoff as i64);
        let pair = OminusPair::new(x.clone(), t);
        let mut acc = TruncSeries::zero(g, cutoff);
        for k in 0..=top {
            let ek = esym(k, &s);
            if ek.is_zero() {
                continue;
            }
            let sign = if k % 2 == 0 { Poly::one() } else { Poly::constant(-1) };
            let h = h_ominus(lmi - mj - i + j + k, &pair, cutoff)?;
            acc = acc.checked_add(&h.mul_poly(&(&sign * &ek)))?;
        }
        Ok(acc)
    })?;
    let d = determinant_series(&m, &TruncSeries::one(g, cutoff))?;
    Ok(d.mul_poly(&c_prefactor(l, x)?))
}

/// Column form of `G_{λ⫽μ}` built on the conjugate shapes with `l >= λ_1`.
/// With `L = λ'_l`, `U_j = A_{j-1} - A_l + B_L - B_{μ'_j-1}` and
/// `R_i = B_L - B_{λ'_i-1} - A_l + A_i`, the entries are
/// `Σ_{k ≤ l-j+μ'_j} h_k(U_j) Σ_{p-q = d} (-1)^{p+q} e_p(R_i) e_q(X)` with
/// `d = μ'_j - λ'_i + i - j - k`, and the prefactor is
/// `(-1)^{|λ|+|μ|} Π_{i ≤ l} Π_x (1 + α_i x)^{-1} Π_{k ≤ L} Π_x (1 - β_k x)`.
/// Column form of `G_{λ⫽μ}`: with `T_i = ∅/(A_[i,l] ⊔ B_{λ'_i})` and
/// `S_j = ∅/(A_[j,l] ⊔ B_{μ'_j-1})`, entries
/// `Σ_{k ≤ μ'_j-j+l} (-1)^k h_k(S_j) e_{λ'_i-μ'_j-i+j+k}(X ⊖ T_i)`.
fn gds_e(lam: &Partition, mu: &Partition, x: &DiffAlphabet, pad: usize, cutoff: u32) -> Result<TruncSeries, GrothError> {
    let g = Grading::AB;
    let l = padded_lengths(lam, mu, Form::E, pad);
    let li_ = l as i64;
    let (lc, mc) = (lam.conjugate(), mu.conjugate());
    let m = build_matrix(l, |i, j| {
        let t = -&(&a_int(Bounds::Closed, i, li_) + &DiffAlphabet::b(lc.at(i)));
        let s = -&(&a_int(Bounds::Closed, j, li_) + &DiffAlphabet::b(mc.at(j) - 1));
        let top = (mc.at(j) - j + li_).min(cutoff as i64);
        let pair = OminusPair::new(x.clone(), t);
        let mut acc = TruncSeries::zero(g, cutoff);
        for k in 0..=top {
            let hk = hsym(k, &s);
            if hk.is_zero() {
                continue;
            }
            let sign = if k % 2 == 0 { Poly::one() } else { Poly::constant(-1) };
            let e = e_ominus(lc.at(i) - mc.at(j) - i + j + k, &pair, cutoff)?;
            acc = acc.checked_add(&e.mul_poly(&(&sign * &hk)))?;
        }
        Ok(acc)
    })?;
    let d = determinant_series(&m, &TruncSeries::one(g, cutoff))?;
    let inv = TruncSeries::exact(c_prime_inverse(l, x)?, g, cutoff).inverse()?;
    Ok(d.checked_mul(&inv)?)
}

/// Runs `f` at `c` and `c + 2`, doubling `c` until the truncations agree.
pub fn stable<F>(cutoff: u32, f: F) -> Result<TruncSeries, GrothError>
where
    F: Fn(u32) -> Result<TruncSeries, GrothError>,
{
    let mut c = cutoff;
    loop {
        let lo = f(c)?;
        let hi = f(c + 2)?;
        if hi.retruncate(c).body() == lo.body() {
            return Ok(lo);
        }
        if c >= MAX_CUTOFF {
            return Err(GrothError::Unstable { cutoff: c + 2 });
        }
        c = (c * 2).clamp(1, MAX_CUTOFF);
    }
}

/// `g_{λ/μ}(x_1..x_n; α, β)`.
pub fn jt_g(req: &JTRequest) -> Result<Poly, GrothError> {
    if req.variant != Variant::Dual {
        return Err(GrothError::Invalid("jt_g evaluates the dual variant".into()));
    }
    jt_g_alphabet(&req.outer, &req.inner, req.form, &DiffAlphabet::xs(req.nvars), req.pad)
}

/// `G_{λ/μ}` or `G_{λ⫽μ}` in `x_1..x_n`, stability-checked.
#[allow(non_snake_case)]
pub fn jt_G(req: &JTRequest) -> Result<TruncSeries, GrothError> {
    if req.variant == Variant::Dual {
        return Err(GrothError::Invalid("jt_G evaluates the G variants".into()));
    }
    let x = DiffAlphabet::xs(req.nvars);
    stable(req.cutoff.unwrap_or(DEFAULT_CUTOFF), |c| {
        jt_big_g_alphabet(&req.outer, &req.inner, req.variant, req.form, &x, req.pad, c)
    })
}

/// Any variant as a truncated series; `g` is returned exactly.
pub fn jacobi_trudi(req: &JTRequest) -> Result<TruncSeries, GrothError> {
    match req.variant {
        Variant::Dual => {
            let p = jt_g(req)?;
            let d = p.max_degree_in(Grading::AB).unwrap_or(0);
            Ok(TruncSeries::exact(p, Grading::AB, d.max(req.cutoff.unwrap_or(DEFAULT_CUTOFF))))
        }
        _ => jt_G(req),
    }
}
