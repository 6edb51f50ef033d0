use crate::alphabets::{esym, h_ominus, hsym, Bounds, DiffAlphabet, OminusPair, Side};
use crate::partitions::Partition;
use crate::polynomial::{determinant_series, Grading, Poly, TruncSeries, Variable};

use super::{build_matrix, stable, GrothError, Variant, DEFAULT_CUTOFF};

/// Coefficient of `z^k` in `(1 - β z^{-1})^{-1} Π_{j=r}^{s} (1 - β x_j)/(1 - x_j z)`,
/// with the first factor expanded in `z^{-1}`. The unflagged polynomial is
/// `r = 1, s = n`.
pub fn single_row_g(k: i64, beta: Variable, r: usize, s: usize) -> Poly {
    let xs = DiffAlphabet::x_range(r as i64, s as i64);
    let nv = (s + 1).saturating_sub(r);
    // the value has β-degree below nv + max(-k, 0)
    let cap = nv + (-k).max(0) as usize + 1;
    let b = Poly::var(beta);
    let pre: Poly = (r..=s).map(|j| &Poly::one() - &(&b * &Poly::x(j))).product();
    let sum: Poly = (0..=cap).map(|e| b.pow(e as u32) * hsym(k + e as i64, &xs)).sum();
    let full = &pre * &sum;
    Poly::from_terms(full.terms().iter().filter(|(m, _)| (m.exponent(beta) as usize) <= cap).cloned())
}

fn a_pre(i: i64) -> DiffAlphabet {
    DiffAlphabet::a(i)
}

fn b_int(b: Bounds, i: i64, j: i64) -> DiffAlphabet {
    DiffAlphabet::interval(Side::B, b, i, j)
}

fn a_int(b: Bounds, i: i64, j: i64) -> DiffAlphabet {
    DiffAlphabet::interval(Side::A, b, i, j)
}

fn det_formula_raw(lam: &Partition, mu: &Partition, n: usize, variant: Variant, cutoff: u32) -> Result<TruncSeries, GrothError> {
    let g = Grading::AB;
    let l = lam.len().max(mu.len()) + 1;
    let li = l as i64;
    let m = build_matrix(l, |i, j| {
        let hal = &a_pre(lam.at(i)) + &b_int(Bounds::OpenClosed, i, li);
        let (eal, kmax) = match variant {
            Variant::G => (&a_pre(mu.at(j)) + &b_int(Bounds::OpenClosed, j, li), i64::MAX),
            Variant::Gds => (&a_pre(mu.at(j) - 1) + &b_int(Bounds::Closed, j, li), mu.at(j) - j + li),
            Variant::Dual => return Err(GrothError::Invalid("determinant formula covers G and Gds".into())),
        };
        let base = lam.at(i) - mu.at(j) - i + j;
        let mut acc = Poly::zero();
        for mm in 0..=cutoff as i64 {
            for k in 0..=mm.min(kmax) {
                let coef = esym(k, &eal) * hsym(mm - k, &hal);
                if coef.is_zero() {
                    continue;
                }
                let gk = single_row_g(base + mm, Variable::beta(i as usize), 1, n);
                let term = coef.mul_truncated(&gk, g, cutoff).0;
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
            }
        }
        Ok(TruncSeries::inexact(acc, g, cutoff))
    })?;
    Ok(determinant_series(&m, &TruncSeries::one(g, cutoff))?)
}

/// The single-row determinant formula for `G_{λ/μ}` and `G_{λ⫽μ}`.
pub fn det_formula_g(lam: &Partition, mu: &Partition, n: usize, variant: Variant, cutoff: Option<u32>) -> Result<TruncSeries, GrothError> {
    stable(cutoff.unwrap_or(DEFAULT_CUTOFF), |c| det_formula_raw(lam, mu, n, variant, c))
}

fn check_flags(lam: &Partition, mu: &Partition, r: &[usize], s: &[usize]) -> Result<usize, GrothError> {
    let l = r.len();
    if s.len() != l {
        return Err(GrothError::Flag("r and s must have the same length".into()));
    }
    if l < lam.len() || l < mu.len() {
        return Err(GrothError::Flag(format!("need at least {} flags", lam.len().max(mu.len()))));
    }
    for i in 0..l {
        if r[i] == 0 || r[i] > s[i] {
            return Err(GrothError::Flag(format!("row {}: need 1 <= r <= s", i + 1)));
        }
    }
    for i in 1..l {
        let row = i as i64;
        if mu.at(row) < lam.at(row + 1) && (r[i - 1] > r[i] || s[i - 1] > s[i]) {
            return Err(GrothError::Flag(format!("rows {} and {}: flags must increase", i, i + 1)));
        }
    }
    Ok(l)
}

fn flagged_raw(lam: &Partition, mu: &Partition, r: &[usize], s: &[usize], cutoff: u32) -> Result<TruncSeries, GrothError> {
    let g = Grading::AB;
    let l = r.len();
    let m = build_matrix(l, |i, j| {
        let (li, mj) = (lam.at(i), mu.at(j));
        let x = DiffAlphabet::x_range(r[j as usize - 1] as i64, s[i as usize - 1] as i64);
        let shift = &a_int(Bounds::OpenClosed, mj, li) + &b_int(Bounds::Closed, i, j);
        Ok(h_ominus(li - mj - i + j, &OminusPair::new(x, shift), cutoff)?)
    })?;
    let d = determinant_series(&m, &TruncSeries::one(g, cutoff))?;
    let pre: Poly = (1..=l)
        .flat_map(|i| (r[i - 1]..=s[i - 1]).map(move |k| &Poly::one() - &(Poly::beta(i) * Poly::x(k))))
        .product();
    Ok(d.mul_poly(&pre))
}

/// Row-flagged `G^{row(r,s)}_{λ/μ}` from its defining determinant.
pub fn flagged_g(lam: &Partition, mu: &Partition, r: &[usize], s: &[usize], cutoff: Option<u32>) -> Result<TruncSeries, GrothError> {
    check_flags(lam, mu, r, s)?;
    stable(cutoff.unwrap_or(DEFAULT_CUTOFF), |c| flagged_raw(lam, mu, r, s, c))
}

fn flagged_gdet_raw(lam: &Partition, mu: &Partition, s: &[usize], cutoff: u32) -> Result<TruncSeries, GrothError> {
    let g = Grading::AB;
    let l = s.len();
    let m = build_matrix(l, |i, j| {
        let (li, mj) = (lam.at(i), mu.at(j));
        let alph = &a_int(Bounds::OpenClosed, mj, li) + &b_int(Bounds::OpenClosed, i, j);
        let mut acc = Poly::zero();
        for mm in 0..=cutoff as i64 {
            let h = hsym(mm, &alph);
            if h.is_zero() {
                continue;
            }
            let gk = single_row_g(li - mj - i + j + mm, Variable::beta(i as usize), 1, s[i as usize - 1]);
            acc = &acc + &h.mul_truncated(&gk, g, cutoff).0;
        }
        Ok(TruncSeries::inexact(acc, g, cutoff))
    })?;
    Ok(determinant_series(&m, &TruncSeries::one(g, cutoff))?)
}

/// The flagged single-row determinant, valid for `r = (1, ..., 1)`.
pub fn flagged_g_gdet(lam: &Partition, mu: &Partition, s: &[usize], cutoff: Option<u32>) -> Result<TruncSeries, GrothError> {
    let r = vec![1; s.len()];
    check_flags(lam, mu, &r, s)?;
    stable(cutoff.unwrap_or(DEFAULT_CUTOFF), |c| flagged_gdet_raw(lam, mu, s, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grothendieck::{jt_G, JTRequest};

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn single_row_values() {
        let b = Variable::beta(1);
        assert_eq!(single_row_g(0, b, 1, 3), Poly::one());
        assert_eq!(single_row_g(1, b, 1, 1), Poly::x(1));
        assert_eq!(single_row_g(-2, b, 1, 2), Poly::beta(1).pow(2));
        // hook expansion sum_a (-β)^a s_{k 1^a}
        let x = DiffAlphabet::xs(3);
        let hooks: Poly = (0..3u32)
            .map(|a| {
                let mut parts = vec![2];
                parts.extend(std::iter::repeat(1).take(a as usize));
                (-Poly::beta(1)).pow(a) * crate::grothendieck::schur_skew(&Partition::new(parts).unwrap(), &Partition::empty(), &x)
            })
            .sum();
        assert_eq!(single_row_g(2, b, 1, 3), hooks);
    }

    #[test]
    fn det_formula_matches_jacobi_trudi() {
        for lam in Partition::in_box(2, 2) {
            for mu in Partition::in_box(2, 2) {
                for v in [Variant::G, Variant::Gds] {
                    let a = det_formula_g(&lam, &mu, 2, v, Some(2)).unwrap();
                    let b = jt_G(&JTRequest::new(lam.clone(), mu.clone(), 2, v).cutoff(2)).unwrap();
                    assert_eq!(a.body(), b.body(), "{v:?} {lam}/{mu}");
                }
            }
        }
    }

    #[test]
    fn full_flags_are_unflagged() {
        for lam in Partition::in_box(2, 2) {
            for mu in Partition::in_box(2, 1) {
                let l = 2;
                let f = flagged_g(&lam, &mu, &vec![1; l], &vec![2; l], Some(2)).unwrap();
                let j = jt_G(&JTRequest::new(lam.clone(), mu.clone(), 2, Variant::G).cutoff(2)).unwrap();
                assert_eq!(f.body(), j.body(), "{lam}/{mu}");
            }
        }
    }

    #[test]
    fn two_flagged_determinants_agree() {
        let cases = [("2,1", "", vec![1, 2]), ("2,2", "1", vec![1, 2]), ("2", "", vec![2]), ("3,1", "1", vec![1, 3])];
        for (l, m, s) in cases {
            let (lam, mu) = (part(l), part(m));
            let a = flagged_g(&lam, &mu, &vec![1; s.len()], &s, Some(2)).unwrap();
            let b = flagged_g_gdet(&lam, &mu, &s, Some(2)).unwrap();
            assert_eq!(a.body(), b.body(), "{lam}/{mu} {s:?}");
        }
    }

    #[test]
    fn inadmissible_flags() {
        assert!(matches!(flagged_g(&part("2,1"), &Partition::empty(), &[1, 1], &[2, 1], None), Err(GrothError::Flag(_))));
        assert!(matches!(flagged_g(&part("2,1"), &Partition::empty(), &[1], &[2], None), Err(GrothError::Flag(_))));
    }
}
