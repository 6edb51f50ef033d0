//! Free fermions on a finite window of the semi-infinite wedge.
//!
//! States are Maya diagrams stored as `u128` occupation masks over
//! `[lo, hi)`: every site below `lo` is filled and every site at or above
//! `hi` is empty. Any operation that would disturb those two regions fails
//! with [`FockError::Window`] instead of silently clipping.
//!
//! Bras are never stored. A bra `<w|` is represented by the ket `|w*>` under
//! the anti-involution `*` (`psi_n* = psi*_n`, `a_k* = a_{-k}`,
//! `(e^H)* = e^{H*}`), and `<w|v>` is the coordinate-wise pairing
//! [`FockVector::pair`].

mod vectors;
mod wick;

pub use vectors::{
    canonical_bra_star, canonical_ket, conjugate_ket, fock_matrix_element, flagged_fock_element, BraKind, BraOrKet, KetKind,
    Variant, Window,
};
pub use wick::{wick_pfaffian, wick_vev, wick_vev_direct, DressedFermion, FermionKind};

use std::collections::BTreeMap;

use crate::alphabets::DiffAlphabet;
use crate::partitions::{maya, MayaWindow, Partition};
use crate::polynomial::{Coeff, Grading, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("operator reaches outside the window [{lo}, {hi}) at site {site}")]
    Window { lo: i64, hi: i64, site: i64 },
    #[error("vectors live on different windows")]
    WindowMismatch,
    #[error("non-integral coefficient in exponential series (step {0})")]
    Inexact(usize),
    #[error("raising exponential needs a graded parameter and a cutoff")]
    NoCutoff,
    #[error("{0}")]
    Shape(String),
}

/// Finite linear combination of Maya states with polynomial coefficients.
/// When `trunc` is set, coefficients are kept only up to that graded degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector {
    lo: i64,
    hi: i64,
    trunc: Option<(Grading, u32)>,
    exact: bool,
    terms: BTreeMap<u128, Poly>,
}

impl FockVector {
    pub fn zero(lo: i64, hi: i64) -> FockVector {
        assert!(hi >= lo && hi - lo <= MayaWindow::MAX_WIDTH, "window [{lo},{hi}) too wide");
        FockVector { lo, hi, trunc: None, exact: true, terms: BTreeMap::new() }
    }

    /// The shifted vacuum `|m>`.
    pub fn vacuum(m: i64, lo: i64, hi: i64) -> Result<FockVector, FockError> {
        FockVector::basis(&Partition::empty(), m, lo, hi)
    }

    /// The basis state of `lambda` at charge `m`.
    pub fn basis(lambda: &Partition, m: i64, lo: i64, hi: i64) -> Result<FockVector, FockError> {
        let st = maya(lambda, m, (lo, hi)).map_err(|_| FockError::Window { lo, hi, site: m })?;
        let mut v = FockVector::zero(lo, hi);
        v.terms.insert(st.bits, Poly::one());
        Ok(v)
    }

    pub fn with_truncation(mut self, g: Grading, cutoff: u32) -> FockVector {
        self.trunc = Some((g, cutoff));
        self.apply_trunc();
        self
    }

    fn apply_trunc(&mut self) {
        if let Some((g, c)) = self.trunc {
            let mut cut = false;
            for p in self.terms.values_mut() {
                let t = p.truncate(g, c);
                if t.len() != p.len() {
                    cut = true;
                    *p = t;
                }
            }
            if cut {
                self.exact = false;
            }
            self.terms.retain(|_, p| !p.is_zero());
        }
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn truncation(&self) -> Option<(Grading, u32)> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// `(state, coefficient)` pairs in a fixed order.
    pub fn terms(&self) -> impl Iterator<Item = (MayaWindow, &Poly)> {
        let (lo, hi) = (self.lo, self.hi);
        self.terms.iter().map(move |(b, p)| (MayaWindow { lo, hi, bits: *b }, p))
    }

    pub fn coeff(&self, lambda: &Partition, charge: i64) -> Poly {
        match maya(lambda, charge, (self.lo, self.hi)) {
            Ok(st) => self.terms.get(&st.bits).cloned().unwrap_or_default(),
            Err(_) => Poly::zero(),
        }
    }

    fn same_shape(&self, other: &FockVector) -> Result<(), FockError> {
        if self.lo != other.lo || self.hi != other.hi {
            Err(FockError::WindowMismatch)
        } else {
            Ok(())
        }
    }

    fn merge_trunc(&self, other: &FockVector) -> Option<(Grading, u32)> {
        match (self.trunc, other.trunc) {
            (Some((g, a)), Some((_, b))) => Some((g, a.min(b))),
            (a, b) => a.or(b),
        }
    }

    pub fn add(&self, other: &FockVector) -> Result<FockVector, FockError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        out.trunc = self.merge_trunc(other);
        out.exact = self.exact && other.exact;
        for (b, p) in &other.terms {
            out.add_term(*b, p);
        }
        out.apply_trunc();
        Ok(out)
    }

    pub fn sub(&self, other: &FockVector) -> Result<FockVector, FockError> {
        self.add(&other.scale(&Poly::constant(-1)))
    }

    fn add_term(&mut self, bits: u128, p: &Poly) {
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(bits) {
            Entry::Vacant(v) => {
                v.insert(p.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + p;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Multiplies every coefficient by `c`, truncating if required.
    pub fn scale(&self, c: &Poly) -> FockVector {
        let mut out = FockVector { terms: BTreeMap::new(), ..self.clone() };
        for (b, p) in &self.terms {
            let prod = match self.trunc {
                Some((g, cut)) => {
                    let (q, dropped) = p.mul_truncated(c, g, cut);
                    if dropped {
                        out.exact = false;
                    }
                    q
                }
                None => p * c,
            };
            out.add_term(*b, &prod);
        }
        out
    }

    fn occupied(&self, bits: u128, n: i64) -> bool {
        if n < self.lo {
            true
        } else if n >= self.hi {
            false
        } else {
            bits >> (n - self.lo) & 1 == 1
        }
    }

    /// Parity of the number of occupied sites strictly above `n`.
    fn parity_above(&self, bits: u128, n: i64) -> bool {
        if n >= self.hi {
            return false;
        }
        let shift = (n - self.lo + 1).max(0) as u32;
        let above = if shift >= 128 { 0 } else { bits >> shift };
        above.count_ones() % 2 == 1
    }

    fn err(&self, site: i64) -> FockError {
        FockError::Window { lo: self.lo, hi: self.hi, site }
    }

    fn map_states<F>(&self, f: F) -> Result<FockVector, FockError>
    where
        F: Fn(u128) -> Result<Vec<(u128, i64)>, FockError>,
    {
        let mut out = FockVector { terms: BTreeMap::new(), ..self.clone() };
        for (b, p) in &self.terms {
            for (nb, s) in f(*b)? {
                out.add_term(nb, &p.scale(&Coeff::from(s)));
            }
        }
        Ok(out)
    }

    fn create(&self, bits: u128, n: i64) -> Result<Option<(u128, i64)>, FockError> {
        if self.occupied(bits, n) {
            return Ok(None);
        }
        if n >= self.hi {
            return Err(self.err(n));
        }
        let sign = if self.parity_above(bits, n) { -1 } else { 1 };
        Ok(Some((bits | 1u128 << (n - self.lo), sign)))
    }

    fn annihilate(&self, bits: u128, n: i64) -> Result<Option<(u128, i64)>, FockError> {
        if !self.occupied(bits, n) {
            return Ok(None);
        }
        if n < self.lo {
            return Err(self.err(n));
        }
        let sign = if self.parity_above(bits, n) { -1 } else { 1 };
        Ok(Some((bits & !(1u128 << (n - self.lo)), sign)))
    }

    /// `psi_n`: inserts `v_n` at the front of the wedge.
    pub fn psi(&self, n: i64) -> Result<FockVector, FockError> {
        self.map_states(|b| Ok(self.create(b, n)?.into_iter().collect()))
    }

    /// `psi*_n`: removes `v_n`.
    pub fn psi_star(&self, n: i64) -> Result<FockVector, FockError> {
        self.map_states(|b| Ok(self.annihilate(b, n)?.into_iter().collect()))
    }

    fn charge_of(&self, bits: u128) -> i64 {
        MayaWindow { lo: self.lo, hi: self.hi, bits }.charge()
    }

    fn energy_of(&self, bits: u128) -> i64 {
        MayaWindow { lo: self.lo, hi: self.hi, bits }.to_partition().0.size() as i64
    }

    /// The current `a_k = sum_i :psi_i psi*_{i+k}:`.
    pub fn current(&self, k: i64) -> Result<FockVector, FockError> {
        if k == 0 {
            return self.map_states(|b| Ok(vec![(b, self.charge_of(b))]));
        }
        self.map_states(|b| {
            if k < 0 {
                // a sea particle could jump into a hole just above lo
                for n in self.lo..(self.lo - k).min(self.hi) {
                    if !self.occupied(b, n) {
                        return Err(self.err(n + k));
                    }
                }
            }
            let mut out = Vec::new();
            for j in self.lo..self.hi {
                let i = j - k;
                if !self.occupied(b, j) {
                    continue;
                }
                let (b1, s1) = match self.annihilate(b, j)? {
                    Some(t) => t,
                    None => continue,
                };
                if let Some((b2, s2)) = self.create(b1, i)? {
                    out.push((b2, s1 * s2));
                }
            }
            Ok(out)
        })
    }

    /// `e^{sign * H(gamma)}` (lowering) or, with `dual`, `e^{sign * H*(gamma)}`
    /// (raising) for a single parameter `gamma`. Uses the recursion
    /// `i f_i = sign * sum_k a_{+-k} f_{i-k}`.
    pub fn exp_h(&self, gamma: &Poly, sign: i64, dual: bool) -> Result<FockVector, FockError> {
        if gamma.is_zero() || self.is_zero() {
            return Ok(self.clone());
        }
        let (max_i, gamma_deg) = if dual {
            let (g, cut) = self.trunc.ok_or(FockError::NoCutoff)?;
            let d = gamma.min_degree_in(g).unwrap_or(0);
            if d == 0 {
                return Err(FockError::NoCutoff);
            }
            let base = self.terms.values().filter_map(|p| p.min_degree_in(g)).min().unwrap_or(0);
            (((cut.saturating_sub(base)) / d) as usize, d)
        } else {
            (self.terms.keys().map(|b| self.energy_of(*b)).max().unwrap_or(0) as usize, 0)
        };
        let mut fs: Vec<FockVector> = vec![self.clone()];
        let mut result = self.clone();
        let mut gamma_pow = Poly::one();
        for i in 1..=max_i {
            let mut acc = FockVector { terms: BTreeMap::new(), ..self.clone() };
            for k in 1..=i {
                let src = &fs[i - k];
                if src.is_zero() {
                    continue;
                }
                let step = src.current(if dual { -(k as i64) } else { k as i64 })?;
                acc = acc.add(&step)?;
            }
            let div = Coeff::from((i as i64) * sign);
            let mut fi = FockVector { terms: BTreeMap::new(), ..self.clone() };
            // monomials that will exceed the cutoff once multiplied by gamma^i
            let room = match (dual, self.trunc) {
                (true, Some((g, cut))) => Some((g, cut.checked_sub(i as u32 * gamma_deg))),
                _ => None,
            };
            for (b, p) in &acc.terms {
                let p = match room {
                    Some((_, None)) => continue,
                    Some((g, Some(r))) => p.truncate(g, r),
                    None => p.clone(),
                };
                let q = p.exact_divide(&Poly::constant(div.clone())).map_err(|_| FockError::Inexact(i))?;
                fi.add_term(*b, &q);
            }
            gamma_pow = &gamma_pow * gamma;
            result = result.add(&fi.scale(&gamma_pow))?;
            fs.push(fi);
        }
        if dual {
            result.exact = false;
        }
        Ok(result)
    }

    /// `e^{sign * H(X/Y)} = prod_x e^{sign H(x)} prod_y e^{-sign H(y)}`.
    pub fn exp_alphabet(&self, alph: &DiffAlphabet, sign: i64, dual: bool) -> Result<FockVector, FockError> {
        let mut v = self.clone();
        for a in alph.plus() {
            v = v.exp_h(&a.value(), sign, dual)?;
        }
        for a in alph.minus() {
            v = v.exp_h(&a.value(), -sign, dual)?;
        }
        Ok(v)
    }

    /// `e^{J(gamma)} = e^{-H(-gamma)}`.
    pub fn exp_j(&self, gamma: &Poly) -> Result<FockVector, FockError> {
        self.exp_h(&-gamma, -1, false)
    }

    /// `<self* | other>`: the sum of products of matching coordinates.
    pub fn pair(&self, other: &FockVector) -> Result<Poly, FockError> {
        self.same_shape(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc = Poly::zero();
        for (b, p) in &small.terms {
            if let Some(q) = large.terms.get(b) {
                acc = &acc + &(p * q);
            }
        }
        Ok(acc)
    }

    /// Coordinates of `self` against the Schur basis of charge 0.
    pub fn schur_coordinates(&self) -> BTreeMap<Partition, Poly> {
        self.terms()
            .filter_map(|(st, p)| {
                let (lam, c) = st.to_partition();
                (c == 0).then(|| (lam, p.clone()))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Variable;
    use rand::{Rng, SeedableRng};

    const LO: i64 = -12;
    const HI: i64 = 12;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    fn random_state(rng: &mut impl Rng) -> FockVector {
        let parts: Vec<usize> = {
            let mut v: Vec<usize> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..4)).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        };
        let lam = Partition::new(parts).unwrap();
        let charge = rng.gen_range(-2..=2);
        FockVector::basis(&lam, charge, LO, HI).unwrap()
    }

    #[test]
    fn vacuum_annihilation() {
        let vac = FockVector::vacuum(0, LO, HI).unwrap();
        for n in -4..0 {
            assert!(vac.psi(n).unwrap().is_zero());
        }
        for m in 0..4 {
            assert!(vac.psi_star(m).unwrap().is_zero());
        }
        assert_eq!(vac.psi(0).unwrap(), FockVector::vacuum(1, LO, HI).unwrap());
        for k in 1..4 {
            assert!(vac.current(k).unwrap().is_zero());
        }
    }

    #[test]
    fn window_violations_are_errors() {
        let vac = FockVector::vacuum(0, LO, HI).unwrap();
        assert!(matches!(vac.psi(HI), Err(FockError::Window { .. })));
        assert!(matches!(vac.psi_star(LO - 1), Err(FockError::Window { .. })));
        let holed = FockVector::vacuum(LO, LO, HI).unwrap();
        assert!(matches!(holed.current(-1), Err(FockError::Window { .. })));
    }

    #[test]
    fn clifford_relations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let v = random_state(&mut rng);
            let m = rng.gen_range(-5..5);
            let n = rng.gen_range(-5..5);
            let lhs = v.psi_star(n).unwrap().psi(m).unwrap().add(&v.psi(m).unwrap().psi_star(n).unwrap()).unwrap();
            let rhs = if m == n { v.clone() } else { FockVector::zero(LO, HI) };
            assert_eq!(lhs, rhs);
            let pp = v.psi(n).unwrap().psi(m).unwrap().add(&v.psi(m).unwrap().psi(n).unwrap()).unwrap();
            assert!(pp.is_zero());
            let ss = v.psi_star(n).unwrap().psi_star(m).unwrap().add(&v.psi_star(m).unwrap().psi_star(n).unwrap()).unwrap();
            assert!(ss.is_zero());
        }
    }

    #[test]
    fn current_commutators() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let v = random_state(&mut rng);
            let m = rng.gen_range(-3..=3);
            let k = rng.gen_range(-3..=3);
            let lhs = v.current(k).unwrap().current(m).unwrap().sub(&v.current(m).unwrap().current(k).unwrap()).unwrap();
            let rhs = if m == -k { v.scale(&Poly::constant(m)) } else { FockVector::zero(LO, HI) };
            assert_eq!(lhs, rhs, "m={m} k={k}");
            let j = rng.gen_range(-2..=2);
            let lhs = v.psi(j).unwrap().current(m).unwrap().sub(&v.current(m).unwrap().psi(j).unwrap()).unwrap();
            assert_eq!(lhs, v.psi(j - m).unwrap());
            let lhs = v.psi_star(j).unwrap().current(m).unwrap().sub(&v.current(m).unwrap().psi_star(j).unwrap()).unwrap();
            assert_eq!(lhs, v.psi_star(j + m).unwrap().scale(&Poly::constant(-1)));
        }
    }

    #[test]
    fn skew_schur_matrix_elements() {
        use crate::grothendieck::schur_skew;
        let x = DiffAlphabet::xs(2);
        for lam in Partition::in_box(2, 2) {
            let ket = FockVector::basis(&lam, 0, LO, HI).unwrap().exp_alphabet(&x, 1, false).unwrap();
            for mu in Partition::in_box(2, 2) {
                let bra = FockVector::basis(&mu, 0, LO, HI).unwrap();
                assert_eq!(bra.pair(&ket).unwrap(), schur_skew(&lam, &mu, &x), "{lam}/{mu}");
            }
        }
    }

    #[test]
    fn exp_h_commutes_with_raising_current() {
        // [e^{H(g)}, a_{-k}] = g^k e^{H(g)}
        let g = Poly::var(Variable::aux("g"));
        let vac = FockVector::vacuum(0, LO, HI).unwrap();
        for k in 1..=3 {
            let lhs = vac.current(-k).unwrap().exp_h(&g, 1, false).unwrap();
            let rhs = vac.exp_h(&g, 1, false).unwrap().current(-k).unwrap();
            let diff = lhs.sub(&rhs).unwrap();
            let expect = vac.exp_h(&g, 1, false).unwrap().scale(&g.pow(k as u32));
            assert_eq!(diff, expect);
        }
    }

    #[test]
    fn exponential_inverse_pairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let v = random_state(&mut rng);
            let g = p("-a1");
            let back = v.exp_h(&g, 1, false).unwrap().exp_h(&g, -1, false).unwrap();
            assert_eq!(back, v);
            let vt = v.clone().with_truncation(Grading::AB, 3);
            let up = vt.exp_h(&Poly::beta(1), 1, true).unwrap().exp_h(&Poly::beta(1), -1, true).unwrap();
            assert_eq!(up.terms().map(|(s, c)| (s, c.clone())).collect::<Vec<_>>(), vt.terms().map(|(s, c)| (s, c.clone())).collect::<Vec<_>>());
        }
    }

    #[test]
    fn conjugate_op_star_relation() {
        // e^{H*(B_l)} e^{H(x)} e^{-H*(B_l)} = prod (1 - beta_j x_k) e^{H(x)}
        let l = 2;
        let cut = 3;
        let b = DiffAlphabet::b(l);
        let x = DiffAlphabet::xs(1);
        for lam in Partition::in_box(2, 2) {
            let v = FockVector::basis(&lam, 0, -10, 10).unwrap().with_truncation(Grading::AB, cut);
            let lhs = v.exp_alphabet(&b, -1, true).unwrap().exp_alphabet(&x, 1, false).unwrap().exp_alphabet(&b, 1, true).unwrap();
            let c: Poly = (1..=l).map(|j| &Poly::one() - &(Poly::beta(j as usize) * Poly::x(1))).product();
            let rhs = v.exp_alphabet(&x, 1, false).unwrap().scale(&c);
            assert_eq!(lhs.sub(&rhs).unwrap().terms().count(), 0, "{lam}");
        }
    }
}
