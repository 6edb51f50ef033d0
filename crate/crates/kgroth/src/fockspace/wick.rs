use std::collections::BTreeMap;

use crate::polynomial::{determinant, Poly};

use super::{FockError, FockVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FermionKind {
    Psi,
    PsiStar,
}

/// A finite combination `sum_k c_k psi_k` (or of `psi*_k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DressedFermion {
    pub kind: FermionKind,
    pub support: BTreeMap<i64, Poly>,
}

impl DressedFermion {
    pub fn single(kind: FermionKind, k: i64) -> DressedFermion {
        DressedFermion { kind, support: BTreeMap::from([(k, Poly::one())]) }
    }

    fn apply(&self, v: &FockVector) -> Result<FockVector, FockError> {
        let (lo, hi) = v.window();
        let mut acc = FockVector::zero(lo, hi);
        for (k, c) in &self.support {
            let w = match self.kind {
                FermionKind::Psi => v.psi(*k)?,
                FermionKind::PsiStar => v.psi_star(*k)?,
            };
            acc = acc.add(&w.scale(c))?;
        }
        Ok(acc)
    }
}

/// `<m| f_i f_j |m>` for two dressed fermions.
fn contraction(f: &DressedFermion, g: &DressedFermion, m: i64) -> Poly {
    let filled = |k: i64| k < m;
    let keep: fn(bool) -> bool = match (f.kind, g.kind) {
        (FermionKind::Psi, FermionKind::PsiStar) => |occ| occ,
        (FermionKind::PsiStar, FermionKind::Psi) => |occ| !occ,
        _ => return Poly::zero(),
    };
    f.support
        .iter()
        .filter(|(k, _)| keep(filled(**k)))
        .filter_map(|(k, c)| g.support.get(k).map(|d| c * d))
        .sum()
}

fn pfaffian(m: &[Vec<Poly>], idx: &[usize]) -> Poly {
    if idx.is_empty() {
        return Poly::one();
    }
    let first = idx[0];
    let mut acc = Poly::zero();
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        if m[first][j].is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx.iter().copied().enumerate().filter(|&(p, _)| p != 0 && p != pos).map(|(_, v)| v).collect();
        let term = &m[first][j] * &pfaffian(m, &rest);
        acc = if pos % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `<-l| Q_r ... Q_1 P_1 ... P_r |-l>` for dressed `psi*`'s `Q_j` and
/// dressed `psi`'s `P_i`: the determinant of `sum_{k >= -l} d_k c_k`.
pub fn wick_vev(bras: &[DressedFermion], kets: &[DressedFermion], l: i64) -> Result<Poly, FockError> {
    if bras.len() != kets.len() {
        return Err(FockError::Shape("unequal numbers of creation and annihilation operators".into()));
    }
    if bras.iter().any(|q| q.kind != FermionKind::PsiStar) || kets.iter().any(|p| p.kind != FermionKind::Psi) {
        return Err(FockError::Shape("bras must be psi*, kets psi".into()));
    }
    let m: Vec<Vec<Poly>> = kets
        .iter()
        .map(|p| bras.iter().map(|q| contraction(q, p, -l)).collect())
        .collect();
    determinant(&m).map_err(|e| FockError::Shape(e.to_string()))
}

/// `<m| f_1 ... f_n |m>` for an arbitrary word of dressed fermions: the
/// Pfaffian of the pairwise contractions.
pub fn wick_pfaffian(ops: &[DressedFermion], m: i64) -> Poly {
    if ops.len() % 2 == 1 {
        return Poly::zero();
    }
    let n = ops.len();
    let mut mat = vec![vec![Poly::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            mat[i][j] = contraction(&ops[i], &ops[j], m);
        }
    }
    pfaffian(&mat, &(0..n).collect::<Vec<_>>())
}

/// The same expectation computed by acting on `|m>` inside a window.
pub fn wick_vev_direct(ops: &[DressedFermion], m: i64, lo: i64, hi: i64) -> Result<Poly, FockError> {
    let vac = FockVector::vacuum(m, lo, hi)?;
    let mut v = vac.clone();
    for f in ops.iter().rev() {
        v = f.apply(&v)?;
    }
    vac.pair(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_fermion(rng: &mut impl Rng, kind: FermionKind) -> DressedFermion {
        let support = (0..3).map(|_| (rng.gen_range(-3..3), Poly::constant(rng.gen_range(-3..=3)))).collect();
        DressedFermion { kind, support }
    }

    #[test]
    fn wick_matches_direct_action() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = 2 * rng.gen_range(1..=3);
            let ops: Vec<DressedFermion> = (0..n)
                .map(|_| {
                    let kind = if rng.gen_bool(0.5) { FermionKind::Psi } else { FermionKind::PsiStar };
                    random_fermion(&mut rng, kind)
                })
                .collect();
            let m = rng.gen_range(-1..=1);
            assert_eq!(wick_pfaffian(&ops, m), wick_vev_direct(&ops, m, -8, 8).unwrap());
        }
    }

    #[test]
    fn wick_determinant_matches_direct_action() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for r in 1..=3 {
            for _ in 0..10 {
                let l = rng.gen_range(0..=2);
                let bras: Vec<_> = (0..r).map(|_| random_fermion(&mut rng, FermionKind::PsiStar)).collect();
                let kets: Vec<_> = (0..r).map(|_| random_fermion(&mut rng, FermionKind::Psi)).collect();
                let word: Vec<_> = bras.iter().rev().chain(kets.iter()).cloned().collect();
                assert_eq!(wick_vev(&bras, &kets, l).unwrap(), wick_vev_direct(&word, -l, -8, 8).unwrap());
            }
        }
    }

    #[test]
    fn vacuum_pairing() {
        for m in -3..3 {
            for n in -3..3 {
                let word = [DressedFermion::single(FermionKind::Psi, m), DressedFermion::single(FermionKind::PsiStar, n)];
                let expect = if m == n && m < 0 { Poly::one() } else { Poly::zero() };
                assert_eq!(wick_pfaffian(&word, 0), expect);
            }
        }
    }

    #[test]
    fn generating_function_pairing() {
        // <-l| psi*(w) psi(z) |-l> = sum_{p >= -l} z^p w^p, multiplied through by (zw)^l
        let l = 2;
        let (z, w) = (Poly::var(crate::polynomial::Variable::aux("z")), Poly::var(crate::polynomial::Variable::aux("w")));
        let top = 4;
        let psi_z = DressedFermion { kind: FermionKind::Psi, support: (-l..=top).map(|p| (p, z.pow((p + l) as u32))).collect() };
        let psi_w = DressedFermion { kind: FermionKind::PsiStar, support: (-l..=top).map(|p| (p, w.pow((p + l) as u32))).collect() };
        let got = wick_vev(&[psi_w], &[psi_z], l).unwrap();
        let expect: Poly = (0..=top + l).map(|k| (&z * &w).pow(k as u32)).sum();
        assert_eq!(got, expect);
    }
}
