use serde::{Deserialize, Serialize};

use std::collections::BTreeMap;

use crate::alphabets::{coeff_of, Direction, Factor, GenFun};
use crate::partitions::Partition;
use crate::polynomial::{determinant_series, Grading, Poly, TruncSeries};

use super::{build_matrix, c_prefactor, c_prime_inverse, stable, GrothError, DEFAULT_CUTOFF};
use crate::alphabets::DiffAlphabet;

/// The six contour-integral determinants: three with `l >= l(λ)` rows and
/// three conjugate ones with `l' >= λ_1` rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IntegralFormula {
    /// `g_{λ/μ}`, `l x l`.
    Dual,
    /// `G_{λ/μ}`, `l x l`.
    G,
    /// `G_{λ⫽μ}`, `l x l`.
    Gds,
    /// `g_{λ/μ}`, `l' x l'`.
    DualConj,
    /// `G_{λ/μ}`, `l' x l'`.
    GConj,
    /// `G_{λ⫽μ}`, `l' x l'`.
    GdsConj,
}

impl IntegralFormula {
    pub const ALL: [IntegralFormula; 6] = [
        IntegralFormula::Dual,
        IntegralFormula::G,
        IntegralFormula::Gds,
        IntegralFormula::DualConj,
        IntegralFormula::GConj,
        IntegralFormula::GdsConj,
    ];

    pub fn variant(self) -> super::Variant {
        use super::Variant;
        match self {
            IntegralFormula::Dual | IntegralFormula::DualConj => Variant::Dual,
            IntegralFormula::G | IntegralFormula::GConj => Variant::G,
            IntegralFormula::Gds | IntegralFormula::GdsConj => Variant::Gds,
        }
    }

    fn conjugate(self) -> bool {
        matches!(self, IntegralFormula::DualConj | IntegralFormula::GConj | IntegralFormula::GdsConj)
    }
}

/// Integrand factors `(1 + c w^p)^{±1}`, with numerator/denominator pairs
/// cancelled before expansion.
#[derive(Default)]
struct Integrand {
    num: Vec<(Poly, i32)>,
    den: Vec<(Poly, i32)>,
    other: Vec<Factor>,
}

impl Integrand {
    fn push(&mut self, c: Poly, p: i32, denominator: bool) {
        let (same, other) = if denominator { (&mut self.den, &mut self.num) } else { (&mut self.num, &mut self.den) };
        if let Some(k) = other.iter().position(|(oc, op)| *oc == c && *op == p) {
            other.swap_remove(k);
        } else {
            same.push((c, p));
        }
    }

    /// `Π_{k=1}^{upto} (1 + sign * var_k w^p)`.
    fn range(&mut self, var: fn(usize) -> Poly, sign: i64, upto: i64, p: i32, denominator: bool) {
        for k in 1..=upto.max(0) as usize {
            self.push(var(k).scale(&sign.into()), p, denominator);
        }
    }

    /// `Π_{k=from}^{to} (1 + sign * var_k w^{-1})` with every power of
    /// `w^{-1}` above `keep` dropped.
    fn cut_product(&mut self, var: fn(usize) -> Poly, sign: i64, from: i64, to: i64, keep: i64) {
        let mut terms: BTreeMap<i32, Poly> = BTreeMap::from([(0, Poly::one())]);
        for k in from.max(1)..=to {
            let c = var(k as usize).scale(&sign.into());
            let mut next = terms.clone();
            for (&e, p) in &terms {
                if i64::from(1 - e) <= keep {
                    let t = next.entry(e - 1).or_insert_with(Poly::zero);
                    *t = &*t + &(p * &c);
                }
            }
            terms = next;
        }
        self.other.push(Factor { terms, denominator: false, direction: Direction::WInv });
    }

    fn genfun(self) -> GenFun {
        let mut factors: Vec<Factor> = self.num.into_iter().map(|(c, p)| Factor::num(c, p)).collect();
        factors.extend(self.other);
        factors.extend(self.den.into_iter().map(|(c, p)| Factor::den(c, p)));
        GenFun { factors, shift: 0 }
    }
}

/// The printed integrands cancel the bra-side and ket-side factors against
/// each other. When the bra-side part of `μ` (or `μ'`) is zero, the pairing
/// at the vacuum level keeps only the powers `w^{-k}` with `k <= l - j` of
/// the bra-side product, so for `G_{λ⫽μ}` those entries are built from the
/// uncancelled products with that cut.
fn entry(which: IntegralFormula, lam: &Partition, mu: &Partition, n: usize, l: i64, i: i64, j: i64) -> (GenFun, i32) {
    use IntegralFormula::*;
    let (li, mj) = (lam.at(i), mu.at(j));
    let mut f = Integrand::default();
    let (al, be) = (Poly::alpha as fn(usize) -> Poly, Poly::beta as fn(usize) -> Poly);
    match which {
        Dual => {
            f.range(al, 1, li - 1, 1, false);
            f.range(be, -1, j - 1, 1, false);
            f.range(al, 1, mj, 1, true);
            f.range(be, -1, i - 1, 1, true);
        }
        G => {
            f.range(al, 1, mj, -1, false);
            f.range(be, -1, i - 1, -1, false);
            f.range(al, 1, li, -1, true);
            f.range(be, -1, j, -1, true);
        }
        Gds if mj == 0 => {
            f.cut_product(be, -1, j, l, l - j);
            f.range(al, 1, li, -1, true);
            for k in i.max(1)..=l {
                f.push(-Poly::beta(k as usize), -1, true);
            }
        }
        Gds => {
            f.range(al, 1, mj - 1, -1, false);
            f.range(be, -1, i - 1, -1, false);
            f.range(al, 1, li, -1, true);
            f.range(be, -1, j - 1, -1, true);
        }
        DualConj => {
            f.range(al, -1, j - 1, 1, false);
            f.range(be, 1, li - 1, 1, false);
            f.range(al, -1, i - 1, 1, true);
            f.range(be, 1, mj, 1, true);
        }
        GConj => {
            f.range(al, -1, i - 1, -1, false);
            f.range(be, 1, mj, -1, false);
            f.range(al, -1, j, -1, true);
            f.range(be, 1, li, -1, true);
        }
        GdsConj if mj == 0 => {
            f.cut_product(al, -1, j, l, l - j);
            f.range(be, 1, li, -1, true);
            for k in i.max(1)..=l {
                f.push(-Poly::alpha(k as usize), -1, true);
            }
        }
        GdsConj => {
            f.range(al, -1, i - 1, -1, false);
            f.range(be, 1, mj - 1, -1, false);
            f.range(al, -1, j - 1, -1, true);
            f.range(be, 1, li, -1, true);
        }
    }
    let conj = which.conjugate();
    for m in 1..=n {
        if conj {
            f.push(Poly::x(m), 1, false);
        } else {
            f.push(-Poly::x(m), 1, true);
        }
    }
    (f.genfun(), (li - mj - i + j) as i32)
}

fn integral_raw(which: IntegralFormula, lam: &Partition, mu: &Partition, n: usize, pad: usize, cutoff: u32) -> Result<TruncSeries, GrothError> {
    let conj = which.conjugate();
    let (lam_e, mu_e) = if conj { (lam.conjugate(), mu.conjugate()) } else { (lam.clone(), mu.clone()) };
    let l = lam_e.len().max(mu_e.len()) + pad;
    let dual = which.variant() == super::Variant::Dual;
    // the dual integrands are polynomial in w-expansion, so no truncation is needed
    let (g, c) = if dual { (Grading::NONE, 0) } else { (Grading::AB, cutoff) };
    let m = build_matrix(l, |i, j| {
        let (gf, k) = entry(which, &lam_e, &mu_e, n, l as i64, i, j);
        Ok(coeff_of(&gf, k, g, c)?)
    })?;
    let d = determinant_series(&m, &TruncSeries::one(g, c))?;
    if dual {
        return Ok(TruncSeries::exact(d.into_body(), Grading::AB, cutoff.max(64)));
    }
    let x = DiffAlphabet::xs(n);
    if conj {
        let inv = TruncSeries::exact(c_prime_inverse(l, &x)?, g, c).inverse()?;
        Ok(d.checked_mul(&inv)?)
    } else {
        Ok(d.mul_poly(&c_prefactor(l, &x)?))
    }
}

/// Evaluates one of the integral formulas by coefficient extraction; the
/// contour data fixes which factors are expanded in `w` and which in `w^{-1}`.
pub fn integral_jt(which: IntegralFormula, lam: &Partition, mu: &Partition, n: usize, cutoff: Option<u32>) -> Result<TruncSeries, GrothError> {
    let c = cutoff.unwrap_or(DEFAULT_CUTOFF);
    if which.variant() == super::Variant::Dual {
        return integral_raw(which, lam, mu, n, 0, c);
    }
    stable(c, |c| integral_raw(which, lam, mu, n, 0, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grothendieck::{jacobi_trudi, JTRequest};

    #[test]
    fn integrals_match_jacobi_trudi() {
        for lam in Partition::in_box(2, 2) {
            for mu in Partition::in_box(2, 2) {
                for which in IntegralFormula::ALL {
                    let a = integral_jt(which, &lam, &mu, 2, Some(2)).unwrap();
                    let b = jacobi_trudi(&JTRequest::new(lam.clone(), mu.clone(), 2, which.variant()).cutoff(2)).unwrap();
                    assert_eq!(a.retruncate(2).body(), b.retruncate(2).body(), "{which:?} {lam}/{mu}");
                }
            }
        }
    }

    #[test]
    fn empty_shape() {
        for which in IntegralFormula::ALL {
            let e = Partition::empty();
            assert_eq!(integral_jt(which, &e, &e, 2, None).unwrap().body(), &Poly::one());
        }
    }
}
