//! Identity sweeps over the shapes in a box. Identities with infinite sums
//! or series sides are compared modulo total degree `degree` in all
//! variables; unless stability is disabled every case is rerun with its
//! summation bounds (and truncation) raised by one.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::alphabets::DiffAlphabet;
use crate::expansions::{
    corner_expand, corner_roundtrip, duality_pairing_padded, schur_expand, CornerDirection, ExpansionError,
};
use crate::fockspace::{fock_matrix_element, flagged_fock_element, FockError};
use crate::grothendieck::{
    det_formula_g, flagged_g, flagged_g_gdet, integral_jt, jacobi_trudi, jt_big_g_alphabet, jt_g_alphabet, stable, Form,
    GrothError, IntegralFormula, JTRequest, Variant,
};
use crate::partitions::{Partition, SkewShape};
use crate::polynomial::{Family, Grading, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Groth(#[from] GrothError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Fock(#[from] FockError),
}

impl VerifyError {
    /// The cutoff reached when a series failed to stabilize.
    pub fn unstable_cutoff(&self) -> Option<u32> {
        match self {
            VerifyError::Groth(GrothError::Unstable { cutoff }) => Some(*cutoff),
            VerifyError::Expansion(ExpansionError::Groth(GrothError::Unstable { cutoff })) => Some(*cutoff),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Duality,
    Forms,
    Branching,
    Cauchy,
    Pieri,
    FockOracle,
    Omega,
    Corners,
    Integral,
    Flagged,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Duality,
        Suite::Forms,
        Suite::Branching,
        Suite::Cauchy,
        Suite::Pieri,
        Suite::FockOracle,
        Suite::Omega,
        Suite::Corners,
        Suite::Integral,
        Suite::Flagged,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Duality => "duality",
            Suite::Forms => "forms",
            Suite::Branching => "branching",
            Suite::Cauchy => "cauchy",
            Suite::Pieri => "pieri",
            Suite::FockOracle => "fock-oracle",
            Suite::Omega => "omega",
            Suite::Corners => "corners",
            Suite::Integral => "integral",
            Suite::Flagged => "flagged",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub rows: usize,
    pub cols: usize,
    pub nvars: usize,
    /// Total-degree truncation for identities between series.
    pub degree: u32,
    /// (α,β)-cutoff for suites comparing two evaluations of one function.
    pub cutoff: u32,
    pub seed: u64,
    /// Check only this many cases, drawn with `seed`.
    pub sample: Option<usize>,
    pub stability: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { rows: 2, cols: 2, nvars: 2, degree: 4, cutoff: 3, seed: 0, sample: None, stability: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub nvars: usize,
    pub cutoff: u32,
    pub detail: String,
    #[serde(skip)]
    weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The failing case with the fewest cells.
    pub fn minimal_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }
}

/// Runs one suite over the shapes in the `rows x cols` box.
pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<Report, VerifyError> {
    let shapes = Partition::in_box(opts.rows, opts.cols);
    let pairs: Vec<(Partition, Partition)> =
        shapes.iter().flat_map(|l| shapes.iter().map(move |m| (l.clone(), m.clone()))).collect();
    let ctx = Ctx::new(opts.degree);
    match suite {
        Suite::Duality => sweep(suite, opts, pairs, opts.degree, |(l, m), extra| {
            let k = l.len().max(m.len()) + extra as usize;
            let want = if l == m { Poly::one() } else { Poly::zero() };
            let got = duality_pairing_padded(l, m, k)?;
            Ok(differ(&got, &want, &format!("{l} {m}")))
        }),
        Suite::Forms => {
            let cases: Vec<(Partition, Partition, Variant)> = pairs
                .iter()
                .flat_map(|(l, m)| Variant::ALL.into_iter().map(move |v| (l.clone(), m.clone(), v)))
                .collect();
            sweep(suite, opts, cases, opts.cutoff, |(l, m, v), extra| {
                let c = opts.cutoff + extra;
                let r = JTRequest::new(l.clone(), m.clone(), opts.nvars, *v).cutoff(c);
                let h = jacobi_trudi(&r)?.retruncate(c);
                let e = jacobi_trudi(&r.clone().form(Form::E))?.retruncate(c);
                Ok(differ(h.body(), e.body(), "h-form vs e-form"))
            })
        }
        Suite::Branching => {
            let cases: Vec<(Partition, Partition, Variant)> = pairs
                .iter()
                .flat_map(|(l, m)| Variant::ALL.into_iter().map(move |v| (l.clone(), m.clone(), v)))
                .collect();
            sweep(suite, opts, cases, opts.degree, |(l, m, v), extra| branching(&ctx, l, m, *v, opts.nvars, extra))
        }
        Suite::Cauchy => {
            let cases: Vec<(Partition, Partition, u8)> =
                pairs.iter().flat_map(|(l, m)| (1..=4).map(move |k| (l.clone(), m.clone(), k))).collect();
            sweep(suite, opts, cases, opts.degree, |(mu, nu, k), extra| cauchy(&ctx, mu, nu, *k, opts.nvars, extra))
        }
        Suite::Pieri => {
            let cases: Vec<(Partition, Partition, u8)> =
                pairs.iter().flat_map(|(l, m)| (1..=4).map(move |k| (l.clone(), m.clone(), k))).collect();
            sweep(suite, opts, cases, opts.degree, |(mu, nu, k), extra| pieri(&ctx, mu, nu, *k, opts.nvars, extra))
        }
        Suite::FockOracle => {
            let cases: Vec<(Partition, Partition, Variant)> = pairs
                .iter()
                .flat_map(|(l, m)| Variant::ALL.into_iter().map(move |v| (l.clone(), m.clone(), v)))
                .collect();
            sweep(suite, opts, cases, opts.cutoff, |(l, m, v), extra| {
                let c = opts.cutoff + extra;
                let x = DiffAlphabet::xs(opts.nvars);
                let f = fock_matrix_element(m, l, *v, &x, None, c)?.retruncate(c);
                let j = jacobi_trudi(&JTRequest::new(l.clone(), m.clone(), opts.nvars, *v).cutoff(c))?.retruncate(c);
                Ok(differ(f.body(), j.body(), "Fock vs Jacobi-Trudi"))
            })
        }
        Suite::Omega => {
            let cases: Vec<(Partition, Partition)> = pairs.into_iter().filter(|(l, m)| l.contains(m)).collect();
            sweep(suite, opts, cases, 0, |(l, m), extra| {
                let n = l.size().max(opts.nvars).max(1) + extra as usize;
                let x = DiffAlphabet::xs(n);
                let lhs = schur_expand(&jt_g_alphabet(l, m, Form::H, &x, 0)?, n)?.omega()?.swap_alpha_beta();
                let rhs = schur_expand(&jt_g_alphabet(&l.conjugate(), &m.conjugate(), Form::H, &x, 0)?, n)?;
                Ok(differ(&lhs.to_poly(), &rhs.to_poly(), "ω").or_else(|| {
                    (lhs.terms != rhs.terms).then(|| "Schur coefficients differ".to_string())
                }))
            })
        }
        Suite::Corners => sweep(suite, opts, pairs, opts.cutoff, |(l, m), extra| corners(l, m, opts.nvars, opts.cutoff + extra)),
        Suite::Integral => {
            let cases: Vec<(Partition, Partition, IntegralFormula)> = pairs
                .iter()
                .flat_map(|(l, m)| IntegralFormula::ALL.into_iter().map(move |w| (l.clone(), m.clone(), w)))
                .collect();
            sweep(suite, opts, cases, opts.cutoff, |(l, m, w), extra| {
                let c = opts.cutoff + extra;
                let a = integral_jt(*w, l, m, opts.nvars, Some(c))?.retruncate(c);
                let b = jacobi_trudi(&JTRequest::new(l.clone(), m.clone(), opts.nvars, w.variant()).cutoff(c))?.retruncate(c);
                Ok(differ(a.body(), b.body(), &format!("{w:?} integral vs Jacobi-Trudi")))
            })
        }
        Suite::Flagged => {
            let mut cases: Vec<(Partition, Partition, Vec<usize>)> = Vec::new();
            for (l, m) in &pairs {
                cases.push((l.clone(), m.clone(), Vec::new()));
                let k = l.len().max(m.len()).max(1);
                for s in flags(k, opts.nvars) {
                    cases.push((l.clone(), m.clone(), s));
                }
            }
            sweep(suite, opts, cases, opts.cutoff, |(l, m, s), extra| flagged_case(l, m, s, opts.nvars, opts.cutoff + extra))
        }
    }
}

type Checked = Result<Option<String>, VerifyError>;

fn differ(a: &Poly, b: &Poly, what: &str) -> Option<String> {
    (a != b).then(|| format!("{what}: {} != {}", a.render(false), b.render(false)))
}

trait CaseLabel {
    fn label(&self) -> (String, usize);
}

impl CaseLabel for (Partition, Partition) {
    fn label(&self) -> (String, usize) {
        (format!("{}/{}", self.0, self.1), self.0.size() + self.1.size())
    }
}

impl CaseLabel for (Partition, Partition, Variant) {
    fn label(&self) -> (String, usize) {
        (format!("{} {}/{}", self.2.name(), self.0, self.1), self.0.size() + self.1.size())
    }
}

impl CaseLabel for (Partition, Partition, u8) {
    fn label(&self) -> (String, usize) {
        (format!("variant {} mu={} nu={}", self.2, self.0, self.1), self.0.size() + self.1.size())
    }
}

impl CaseLabel for (Partition, Partition, IntegralFormula) {
    fn label(&self) -> (String, usize) {
        (format!("{:?} {}/{}", self.2, self.0, self.1), self.0.size() + self.1.size())
    }
}

impl CaseLabel for (Partition, Partition, Vec<usize>) {
    fn label(&self) -> (String, usize) {
        let what = if self.2.is_empty() { "unflagged".to_string() } else { format!("flags {:?}", self.2) };
        (format!("{what} {}/{}", self.0, self.1), self.0.size() + self.1.size())
    }
}

fn sweep<C, F>(suite: Suite, opts: &VerifyOptions, mut cases: Vec<C>, cutoff: u32, check: F) -> Result<Report, VerifyError>
where
    C: CaseLabel + Send + Sync,
    F: Fn(&C, u32) -> Checked + Sync,
{
    if let Some(k) = opts.sample.filter(|&k| k < cases.len()) {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut keep: Vec<usize> = sample(&mut rng, cases.len(), k).into_vec();
        keep.sort_unstable();
        let mut it = keep.into_iter().peekable();
        cases = cases
            .into_iter()
            .enumerate()
            .filter_map(|(i, c)| (it.peek() == Some(&i)).then(|| { it.next(); c }))
            .collect();
    }
    let results: Vec<Option<Failure>> = cases
        .par_iter()
        .map(|case| {
            let (label, weight) = case.label();
            let passes: &[u32] = if opts.stability { &[0, 1] } else { &[0] };
            for &extra in passes {
                let outcome = match check(case, extra) {
                    Ok(r) => r,
                    Err(e) if e.unstable_cutoff().is_some() => return Err(e),
                    Err(e) => Some(format!("error: {e}")),
                };
                if let Some(detail) = outcome {
                    let detail = if extra > 0 { format!("with bounds raised by one: {detail}") } else { detail };
                    return Ok(Some(Failure { case: label, nvars: opts.nvars, cutoff: cutoff + extra, detail, weight }));
                }
            }
            Ok(None)
        })
        .collect::<Result<_, VerifyError>>()?;
    let mut failures: Vec<Failure> = results.into_iter().flatten().collect();
    failures.sort_by(|a, b| a.weight.cmp(&b.weight).then_with(|| a.case.cmp(&b.case)));
    Ok(Report { suite: suite.name().to_string(), cases: cases.len(), failures })
}

/// Which honest alphabet a function is evaluated on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum On {
    X(usize),
    Y(usize),
    XY(usize, usize),
}

impl On {
    fn alphabet(self) -> DiffAlphabet {
        match self {
            On::X(n) => DiffAlphabet::xs(n),
            On::Y(m) => DiffAlphabet::ys(m),
            On::XY(n, m) => &DiffAlphabet::xs(n) + &DiffAlphabet::ys(m),
        }
    }

    fn count(self) -> usize {
        match self {
            On::X(n) | On::Y(n) => n,
            On::XY(n, m) => n + m,
        }
    }
}

type Key = (Partition, Partition, Variant, On);

/// Cached evaluations truncated at total degree `degree`.
struct Ctx {
    degree: u32,
    cache: Mutex<HashMap<Key, Poly>>,
}

impl Ctx {
    fn new(degree: u32) -> Ctx {
        Ctx { degree, cache: Mutex::new(HashMap::new()) }
    }

    fn trunc(&self, p: &Poly, extra: u32) -> Poly {
        p.truncate(Grading::ALL, self.degree + extra)
    }

    fn mul(&self, a: &Poly, b: &Poly, extra: u32) -> Poly {
        a.mul_truncated(b, Grading::ALL, self.degree + extra).0
    }

    /// `G_{λ/μ}`, `G_{λ⫽μ}` or `g_{λ/μ}` on `on`, truncated at total degree
    /// `degree + 1` so that both passes share the cache.
    fn eval(&self, lam: &Partition, mu: &Partition, v: Variant, on: On) -> Result<Poly, VerifyError> {
        let key = (lam.clone(), mu.clone(), v, on);
        if let Some(p) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(p.clone());
        }
        let top = (self.degree + 1) as i64;
        let k = lam.size() as i64 - mu.size() as i64;
        let x = on.alphabet();
        let p = match v {
            Variant::Dual if k > top => Poly::zero(),
            Variant::Dual => jt_g_alphabet(lam, mu, Form::H, &x, 0)?,
            _ if k.abs() > top || (lam.contains(mu) && too_tall(lam, mu, on.count())) => Poly::zero(),
            // G is homogeneous of degree k with deg x = 1, deg α = deg β = -1, so
            // a term of total degree t has (α,β)-degree (t - k) / 2
            _ => stable(((top - k) / 2) as u32, |c| jt_big_g_alphabet(lam, mu, v, Form::H, &x, 0, c))?.into_body(),
        };
        let p = p.truncate(Grading::ALL, top as u32);
        self.cache.lock().expect("cache lock").insert(key, p.clone());
        Ok(p)
    }
}

/// A column of `λ/μ` longer than `n`; every Schur term `s_{ν/η}(x_1..x_n)`
/// with `ν ⊇ λ`, `η ⊆ μ` then vanishes, and so do `G_{λ/μ}` and `G_{λ⫽μ}`.
fn too_tall(lam: &Partition, mu: &Partition, n: usize) -> bool {
    let (lc, mc) = (lam.conjugate(), mu.conjugate());
    (1..=lc.len()).any(|j| lc.part(j) - mc.part(j).min(lc.part(j)) > n)
}

/// `(β, α)` and/or `x ↦ -x`.
fn twist(p: &Poly, swap: bool, negate_x: bool) -> Poly {
    let p = if swap { p.swap_alpha_beta() } else { p.clone() };
    if negate_x {
        p.substitute_with(|v| (v.family == Family::X).then(|| -Poly::var(v)))
    } else {
        p
    }
}

/// `Π 1/(1 - x_i y_j)` (`plus = false`) or `Π (1 + x_i y_j)`, truncated.
fn kernel(ctx: &Ctx, n: usize, m: usize, plus: bool, extra: u32) -> Poly {
    let top = ctx.degree + extra;
    let mut acc = Poly::one();
    for i in 1..=n {
        for j in 1..=m {
            let xy = &Poly::x(i) * &Poly::y(j);
            let f = if plus { &Poly::one() + &xy } else { (0..=top / 2).map(|k| xy.pow(k)).sum() };
            acc = ctx.mul(&acc, &f, extra);
        }
    }
    acc
}

fn shapes_up_to(size: usize) -> Vec<Partition> {
    (0..=size).flat_map(|s| Partition::of_size(s, s)).collect()
}

fn branching(ctx: &Ctx, lam: &Partition, mu: &Partition, v: Variant, n: usize, extra: u32) -> Checked {
    let (x, y, xy) = (On::X(n), On::Y(n), On::XY(n, n));
    let lhs = ctx.trunc(&ctx.eval(lam, mu, v, xy)?, extra);
    let mut rhs = Poly::zero();
    for nu in Partition::empty().between(lam) {
        let term = match v {
            Variant::G => ctx.mul(&ctx.eval(lam, &nu, Variant::Gds, y)?, &ctx.eval(&nu, mu, Variant::G, x)?, extra),
            Variant::Gds if nu.contains(mu) => {
                ctx.mul(&ctx.eval(lam, &nu, Variant::Gds, y)?, &ctx.eval(&nu, mu, Variant::Gds, x)?, extra)
            }
            Variant::Dual if nu.contains(mu) => {
                ctx.mul(&ctx.eval(lam, &nu, Variant::Dual, y)?, &ctx.eval(&nu, mu, Variant::Dual, x)?, extra)
            }
            _ => continue,
        };
        rhs = &rhs + &term;
    }
    Ok(differ(&lhs, &rhs, "branching"))
}

/// The four skew Cauchy identities; `k` selects the variant.
fn cauchy(ctx: &Ctx, mu: &Partition, nu: &Partition, k: u8, n: usize, extra: u32) -> Checked {
    let (x, y) = (On::X(n), On::Y(n));
    // (conjugate the G side, conjugate the g side)
    let (cg, cd) = match k {
        1 => (false, false),
        2 => (true, false),
        3 => (false, true),
        _ => (true, true),
    };
    let big = |l: &Partition, m: &Partition| -> Result<Poly, VerifyError> {
        if cg {
            Ok(twist(&ctx.eval(&l.conjugate(), &m.conjugate(), Variant::Gds, x)?, true, false))
        } else {
            ctx.eval(l, m, Variant::Gds, x)
        }
    };
    let small = |l: &Partition, m: &Partition| -> Result<Poly, VerifyError> {
        if cd {
            Ok(twist(&ctx.eval(&l.conjugate(), &m.conjugate(), Variant::Dual, y)?, true, false))
        } else {
            ctx.eval(l, m, Variant::Dual, y)
        }
    };
    let bound = mu.size() + (ctx.degree + extra) as usize;
    let mut lhs = Poly::zero();
    for lam in shapes_up_to(bound) {
        if !lam.contains(mu) || !lam.contains(nu) {
            continue;
        }
        lhs = &lhs + &ctx.mul(&big(&lam, mu)?, &small(&lam, nu)?, extra);
    }
    let mut sum = Poly::zero();
    for eta in Partition::empty().between(mu) {
        if eta.contains(nu) || nu.contains(&eta) {
            sum = &sum + &ctx.mul(&big(nu, &eta)?, &small(mu, &eta)?, extra);
        }
    }
    let rhs = ctx.mul(&kernel(ctx, n, n, cg != cd, extra), &sum, extra);
    Ok(differ(&lhs, &rhs, "Cauchy"))
}

/// The four skew Pieri-type identities; `k` selects the variant.
fn pieri(ctx: &Ctx, mu: &Partition, nu: &Partition, k: u8, n: usize, extra: u32) -> Checked {
    let (x, y) = (On::X(n), On::Y(n));
    let ev = |l: &Partition, m: &Partition, v: Variant, on: On, conj: bool, neg: bool| -> Result<Poly, VerifyError> {
        if conj {
            Ok(twist(&ctx.eval(&l.conjugate(), &m.conjugate(), v, on)?, true, neg))
        } else {
            Ok(twist(&ctx.eval(l, m, v, on)?, false, neg))
        }
    };
    // first two factors live on x, the last on y
    let (first, second, third, conj_first) = match k {
        1 => (Variant::Gds, Variant::Gds, Variant::Dual, false),
        2 => (Variant::Dual, Variant::Dual, Variant::Gds, false),
        3 => (Variant::Gds, Variant::Gds, Variant::Dual, true),
        _ => (Variant::Dual, Variant::Dual, Variant::Gds, true),
    };
    let bound = if third == Variant::Dual { mu.size() } else { nu.size() } + (ctx.degree + extra) as usize;
    let mut lhs = Poly::zero();
    for lam in shapes_up_to(bound) {
        if !lam.contains(mu) {
            continue;
        }
        let a = ev(&lam, mu, first, x, conj_first, false)?;
        if a.is_zero() {
            continue;
        }
        for eta in Partition::empty().between(nu) {
            if !lam.contains(&eta) {
                continue;
            }
            let b = ev(nu, &eta, second, x, !conj_first, true)?;
            let c = ev(&lam, &eta, third, y, false, false)?;
            lhs = &lhs + &ctx.mul(&ctx.mul(&a, &b, extra), &c, extra);
        }
    }
    let target = if third == Variant::Dual { ctx.eval(mu, nu, Variant::Dual, y)? } else { ctx.eval(mu, nu, Variant::Gds, y)? };
    let rhs = ctx.mul(&kernel(ctx, n, n, conj_first, extra), &target, extra);
    Ok(differ(&lhs, &rhs, "Pieri"))
}

fn big_g(lam: &Partition, mu: &Partition, v: Variant, n: usize, c: u32) -> Result<Poly, VerifyError> {
    Ok(jacobi_trudi(&JTRequest::new(lam.clone(), mu.clone(), n, v).cutoff(c))?.retruncate(c).into_body())
}

fn corners(lam: &Partition, mu: &Partition, n: usize, c: u32) -> Checked {
    let tr = |p: Poly| p.truncate(Grading::AB, c);
    let ds = big_g(lam, mu, Variant::Gds, n, c)?;
    let fwd: Poly = corner_expand(mu, CornerDirection::Forward)
        .into_iter()
        .map(|(nu, w)| big_g(lam, &nu, Variant::G, n, c).map(|g| &w * &g))
        .sum::<Result<Poly, _>>()?;
    if let Some(d) = differ(&ds, &tr(fwd), "corner decomposition") {
        return Ok(Some(d));
    }
    let single = big_g(lam, mu, Variant::G, n, c)?;
    let inv: Poly = corner_expand(mu, CornerDirection::Inverse)
        .into_iter()
        .map(|(nu, w)| big_g(lam, &nu, Variant::Gds, n, c).map(|g| &w * &g))
        .sum::<Result<Poly, _>>()?;
    if let Some(d) = differ(&single, &tr(inv), "inverse corner decomposition") {
        return Ok(Some(d));
    }
    if corner_roundtrip(mu).into_iter().collect::<Vec<_>>() != vec![(mu.clone(), Poly::one())] {
        return Ok(Some("corner roundtrip does not collapse".into()));
    }
    if !lam.contains(mu) {
        let cap = lam.intersection(mu);
        let w: Poly = SkewShape::new(mu.clone(), lam.clone())
            .cells()
            .into_iter()
            .map(|(i, j)| crate::expansions::cell_weight(i, j))
            .product();
        let want = tr(&w * &big_g(lam, &cap, Variant::G, n, c)?);
        if let Some(d) = differ(&single, &want, "single-slash factorization") {
            return Ok(Some(d));
        }
        if !ds.is_zero() {
            return Ok(Some(format!("G⫽ should vanish: {}", ds.render(false))));
        }
    } else if lam == mu {
        let at_zero = ds.substitute_with(|v| (v.family == Family::X).then(Poly::zero));
        if at_zero != Poly::one() {
            return Ok(Some(format!("G_(λ⫽λ) at x = 0 is {}", at_zero.render(false))));
        }
    }
    Ok(None)
}

/// Weakly increasing flag vectors of length `k` with entries in `1..=n`.
fn flags(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|f: Vec<usize>| {
                let lo = f.last().copied().unwrap_or(1);
                (lo..=n).map(move |v| {
                    let mut g = f.clone();
                    g.push(v);
                    g
                })
            })
            .collect();
    }
    out
}

fn flagged_case(lam: &Partition, mu: &Partition, s: &[usize], n: usize, c: u32) -> Checked {
    if s.is_empty() {
        for v in [Variant::G, Variant::Gds] {
            let a = det_formula_g(lam, mu, n, v, Some(c))?.retruncate(c);
            let b = big_g(lam, mu, v, n, c)?;
            if let Some(d) = differ(a.body(), &b, &format!("{} single-row determinant", v.name())) {
                return Ok(Some(d));
            }
        }
        let k = lam.len().max(mu.len()).max(1);
        let full = flagged_g(lam, mu, &vec![1; k], &vec![n; k], Some(c))?.retruncate(c);
        return Ok(differ(full.body(), &big_g(lam, mu, Variant::G, n, c)?, "full flags"));
    }
    let r = vec![1; s.len()];
    let a = match flagged_g(lam, mu, &r, s, Some(c)) {
        Ok(a) => a.retruncate(c),
        Err(GrothError::Flag(_)) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let b = flagged_g_gdet(lam, mu, s, Some(c))?.retruncate(c);
    if let Some(d) = differ(a.body(), b.body(), "two flagged determinants") {
        return Ok(Some(d));
    }
    let f = flagged_fock_element(lam, mu, s, c)?.retruncate(c);
    Ok(differ(a.body(), f.body(), "flagged determinant vs Fock"))
}
