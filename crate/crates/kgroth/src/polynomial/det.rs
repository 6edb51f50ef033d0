use super::poly::Poly;
use super::series::TruncSeries;
use super::PolyError;

/// Matrices larger than this are rejected.
pub const DEFAULT_MAX_SIZE: usize = 12;

/// Commutative ring operations needed by the determinant routines.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero()
    }
    fn one_like(&self) -> Self {
        Poly::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

/// Entries of one matrix always share a grading; a mismatch is a bug.
impl Ring for TruncSeries {
    fn zero_like(&self) -> Self {
        TruncSeries::zero(self.grading(), self.cutoff())
    }
    fn one_like(&self) -> Self {
        TruncSeries::one(self.grading(), self.cutoff())
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("series grading mismatch")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("series grading mismatch")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("series grading mismatch")
    }
    fn is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }
}

fn check_square<T>(m: &[Vec<T>], max: usize) -> Result<usize, PolyError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(PolyError::NotSquare);
    }
    if n > max {
        return Err(PolyError::MatrixTooLarge(n, max));
    }
    Ok(n)
}

/// Cofactor expansion along rows, memoized over the set of used columns.
/// Uses only ring operations, so it is valid for truncated series. The
/// empty matrix has determinant `unit`.
pub fn det_cofactor<T: Ring>(m: &[Vec<T>], unit: &T) -> Result<T, PolyError> {
    let n = check_square(m, DEFAULT_MAX_SIZE)?;
    if n == 0 {
        return Ok(unit.one_like());
    }
    let mut layer: Vec<(u32, T)> = vec![(0, unit.one_like())];
    for row in m {
        let mut next: std::collections::BTreeMap<u32, T> = std::collections::BTreeMap::new();
        for (mask, val) in &layer {
            if val.is_zero() {
                continue;
            }
            for (j, entry) in row.iter().enumerate() {
                if mask & (1 << j) != 0 || entry.is_zero() {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let prod = val.mul(entry);
                let slot = next.entry(mask | (1 << j)).or_insert_with(|| unit.zero_like());
                *slot = if above % 2 == 0 { slot.add(&prod) } else { slot.sub(&prod) };
            }
        }
        layer = next.into_iter().collect();
    }
    Ok(layer.pop().map(|(_, v)| v).unwrap_or_else(|| unit.zero_like()))
}

/// Fraction-free Bareiss elimination over the integral domain of polynomials.
pub fn det_bareiss(m: &[Vec<Poly>]) -> Result<Poly, PolyError> {
    let n = check_square(m, DEFAULT_MAX_SIZE)?;
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(Poly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_divide(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

/// Exact polynomial determinant: cofactor expansion up to size 5, Bareiss
/// above that.
pub fn determinant(m: &[Vec<Poly>]) -> Result<Poly, PolyError> {
    if m.len() <= 5 {
        det_cofactor(m, &Poly::one())
    } else {
        det_bareiss(m)
    }
}

/// Determinant of a matrix of truncated series.
pub fn determinant_series(m: &[Vec<TruncSeries>], unit: &TruncSeries) -> Result<TruncSeries, PolyError> {
    det_cofactor(m, unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Grading;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(determinant(&[vec![Poly::one()]]).unwrap(), Poly::one());
        let m = vec![vec![p("a1"), p("b1")], vec![p("x1"), p("x2")]];
        assert_eq!(determinant(&m).unwrap(), p("a1*x2 - b1*x1"));
        assert_eq!(det_bareiss(&m).unwrap(), p("a1*x2 - b1*x1"));
        assert_eq!(determinant(&[]).unwrap(), Poly::one());
        assert_eq!(determinant(&[vec![Poly::one(), Poly::one()]]), Err(PolyError::NotSquare));
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = vec![
            vec![Poly::zero(), p("x1"), Poly::one()],
            vec![p("x2"), Poly::zero(), p("a1")],
            vec![Poly::one(), p("b1"), Poly::zero()],
        ];
        assert_eq!(det_bareiss(&m).unwrap(), det_cofactor(&m, &Poly::one()).unwrap());
    }

    #[test]
    fn vandermonde() {
        let n = 6;
        let m: Vec<Vec<Poly>> = (1..=n).map(|i| (0..n).map(|j| Poly::x(i).pow(j as u32)).collect()).collect();
        let mut expect = Poly::one();
        for i in 1..=n {
            for j in i + 1..=n {
                expect = &expect * &(&Poly::x(j) - &Poly::x(i));
            }
        }
        assert_eq!(determinant(&m).unwrap(), expect);
        assert_eq!(det_cofactor(&m, &Poly::one()).unwrap(), expect);
    }

    #[test]
    fn series_determinant() {
        let g = Grading::AB;
        let s = |t: &str| TruncSeries::exact(p(t), g, 2);
        let m = vec![vec![s("1 + a1"), s("b1")], vec![s("b1^2"), s("1 - a1")]];
        let d = determinant_series(&m, &TruncSeries::one(g, 2)).unwrap();
        assert_eq!(d.body(), &p("1 - a1^2"));
        assert!(!d.is_exact());
    }
}
