//! Partitions, skew shapes, corners and Maya diagrams.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("invalid part {token:?} at position {position}")]
    BadPart { position: usize, token: String },
    #[error("parts must be weakly decreasing (position {position})")]
    NotDecreasing { position: usize },
    #[error("Maya window [{lo}, {hi}) cannot hold the state")]
    WindowTooSmall { lo: i64, hi: i64 },
}

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// stripped on construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if let Some(p) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing { position: p + 1 });
        }
        if let Some(p) = parts.iter().position(|&x| x == 0) {
            return Err(PartitionError::NotDecreasing { position: p });
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn from_slice(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).expect("invalid partition literal")
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `parts[i]` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `lambda_i` with 1-based `i` as a signed integer; zero outside `1..=len`.
    pub fn at(&self, i: i64) -> i64 {
        if i < 1 {
            0
        } else {
            self.part(i as usize - 1) as i64
        }
    }

    pub fn first(&self) -> usize {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.first();
        let parts = (1..=width).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        Partition { parts }
    }

    /// True iff `mu_i <= self_i` for all `i`.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.parts.iter().zip(&self.parts).all(|(m, l)| m <= l)
    }

    pub fn intersection(&self, other: &Partition) -> Partition {
        Partition { parts: self.parts.iter().zip(&other.parts).map(|(a, b)| *a.min(b)).collect() }
    }

    /// Removable corner cells `(i, j)`, 1-based, top to bottom.
    pub fn corners(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&i| self.part(i + 1) < self.part(i))
            .map(|i| (i + 1, self.part(i)))
            .collect()
    }

    /// All partitions obtained by deleting a subset of the corners, paired
    /// with the deleted cells.
    pub fn corner_removals(&self) -> Vec<(Partition, Vec<(usize, usize)>)> {
        let corners = self.corners();
        (0..1u32 << corners.len())
            .map(|mask| {
                let mut parts = self.parts.clone();
                let mut removed = Vec::new();
                for (k, &(i, j)) in corners.iter().enumerate() {
                    if mask & (1 << k) != 0 {
                        parts[i - 1] -= 1;
                        removed.push((i, j));
                    }
                }
                (Partition::new(parts).expect("corner removal keeps a partition"), removed)
            })
            .collect()
    }

    /// Partitions with at most `rows` parts, each at most `cols`, in
    /// lexicographic order.
    pub fn in_box(rows: usize, cols: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: cur.clone() });
            if cur.len() == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        rec(rows, cols, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Partitions of `n` with at most `max_len` parts.
    pub fn of_size(n: usize, max_len: usize) -> Vec<Partition> {
        Partition::in_box(max_len, n).into_iter().filter(|p| p.size() == n).collect()
    }

    /// All `nu` with `self ⊆ nu ⊆ outer`.
    pub fn between(&self, outer: &Partition) -> Vec<Partition> {
        Partition::in_box(outer.len(), outer.first())
            .into_iter()
            .filter(|nu| outer.contains(nu) && nu.contains(self))
            .collect()
    }

    /// The parts padded with zeros to length `l` (never truncates).
    pub fn padded(&self, l: usize) -> Vec<i64> {
        (0..l.max(self.len())).map(|i| self.part(i) as i64).collect()
    }

    pub fn to_text(&self) -> String {
        self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Comma-separated parts, e.g. `"3,1"`; the empty string is `()`.
    /// Brackets as in a JSON array are accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']).trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for (i, tok) in t.split(',').enumerate() {
            let v: usize = tok
                .trim()
                .parse()
                .map_err(|_| PartitionError::BadPart { position: i, token: tok.trim().to_string() })?;
            parts.push(v);
        }
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Skew shape `outer / inner`. The inner shape need not be contained in the
/// outer one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> SkewShape {
        SkewShape { outer, inner }
    }

    /// Cells `(i, j)` with `inner_i < j <= outer_i`, 1-based.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let rows = self.outer.len();
        (0..rows)
            .flat_map(|i| ((self.inner.part(i) + 1)..=self.outer.part(i)).map(move |j| (i + 1, j)))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.cells().len()
    }
}

/// Occupation pattern of a semi-infinite wedge restricted to `[lo, hi)`:
/// every site below `lo` is filled and every site at or above `hi` is empty.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MayaWindow {
    pub lo: i64,
    pub hi: i64,
    pub bits: u128,
}

impl MayaWindow {
    pub const MAX_WIDTH: i64 = 128;

    pub fn new(lo: i64, hi: i64, bits: u128) -> Result<MayaWindow, PartitionError> {
        if hi < lo || hi - lo > Self::MAX_WIDTH {
            return Err(PartitionError::WindowTooSmall { lo, hi });
        }
        Ok(MayaWindow { lo, hi, bits })
    }

    /// The vacuum of charge `m`: sites `< m` filled.
    pub fn vacuum(m: i64, lo: i64, hi: i64) -> Result<MayaWindow, PartitionError> {
        maya(&Partition::empty(), m, (lo, hi))
    }

    pub fn is_occupied(&self, n: i64) -> bool {
        if n < self.lo {
            true
        } else if n >= self.hi {
            false
        } else {
            self.bits >> (n - self.lo) & 1 == 1
        }
    }

    pub fn occupied(&self) -> Vec<i64> {
        (self.lo..self.hi).rev().filter(|&n| self.is_occupied(n)).collect()
    }

    /// Particles at sites `>= 0` minus holes at sites `< 0`.
    pub fn charge(&self) -> i64 {
        let mut c = 0;
        for n in self.lo.min(0)..self.hi.max(0) {
            match (n >= 0, self.is_occupied(n)) {
                (true, true) => c += 1,
                (false, false) => c -= 1,
                _ => {}
            }
        }
        c
    }

    /// The partition and charge of this state.
    pub fn to_partition(&self) -> (Partition, i64) {
        let c = self.charge();
        let occ = self.occupied();
        let mut parts = Vec::new();
        for (k, &p) in occ.iter().enumerate() {
            let part = p - c + (k as i64 + 1);
            if part <= 0 {
                break;
            }
            parts.push(part as usize);
        }
        (Partition::new(parts).expect("Maya state gives a partition"), c)
    }

    /// Window occupation as a 0/1 string from `lo` upward.
    pub fn to_bitstring(&self) -> String {
        (self.lo..self.hi).map(|n| if self.is_occupied(n) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for MayaWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Maya[{},{})<{}>", self.lo, self.hi, self.to_bitstring())
    }
}

/// Encodes `lambda` at `charge` as the occupied set `{lambda_i - i + charge}`.
pub fn maya(lambda: &Partition, charge: i64, window: (i64, i64)) -> Result<MayaWindow, PartitionError> {
    let (lo, hi) = window;
    let err = PartitionError::WindowTooSmall { lo, hi };
    if hi < lo || hi - lo > MayaWindow::MAX_WIDTH {
        return Err(err);
    }
    let l = lambda.len() as i64;
    let in_state = |n: i64| n <= charge - l - 1 || (1..=l).any(|i| lambda.at(i) - i + charge == n);
    if lambda.at(1) - 1 + charge >= hi || (lo.min(charge - l)..lo).any(|n| !in_state(n)) {
        return Err(err);
    }
    let mut bits = 0u128;
    for n in lo..hi {
        if in_state(n) {
            bits |= 1u128 << (n - lo);
        }
    }
    Ok(MayaWindow { lo, hi, bits })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn conjugation() {
        assert_eq!(p("5,4,3,2,1").conjugate(), p("5,4,3,2,1"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
    }

    #[test]
    fn containment() {
        assert!(p("2,2").contains(&p("1")));
        assert!(!p("1").contains(&p("2")));
        assert!(p("3,1").contains(&p("3,1")));
        assert!(!p("2").contains(&p("1,1")));
    }

    #[test]
    fn corner_subsets() {
        let r = p("1").corner_removals();
        assert_eq!(r, vec![(p("1"), vec![]), (p(""), vec![(1, 1)])]);
        assert_eq!(Partition::empty().corner_removals(), vec![(p(""), vec![])]);
        let r = p("2,1").corner_removals();
        assert_eq!(r.len(), 4);
        assert_eq!(p("2,1").corners(), vec![(1, 2), (2, 1)]);
        assert!(r.iter().all(|(nu, _)| p("2,1").contains(nu)));
    }

    #[test]
    fn parsing() {
        assert_eq!(p("[3, 1]"), Partition::from_slice(&[3, 1]));
        assert_eq!(p("3,1,0,0"), p("3,1"));
        assert_eq!("1,2".parse::<Partition>(), Err(PartitionError::NotDecreasing { position: 1 }));
        assert!(matches!("3,x".parse::<Partition>(), Err(PartitionError::BadPart { position: 1, .. })));
        let json: Partition = serde_json::from_str("[2,2,1]").unwrap();
        assert_eq!(json, p("2,2,1"));
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    fn box_enumeration() {
        assert_eq!(Partition::in_box(2, 2).len(), 6);
        assert_eq!(Partition::in_box(3, 3).len(), 20);
        assert_eq!(Partition::of_size(4, 4).len(), 5);
        assert_eq!(p("1").between(&p("2,1")).len(), 4);
    }

    #[test]
    fn skew_cells() {
        let s = SkewShape::new(p("3,2"), p("1"));
        assert_eq!(s.cells(), vec![(1, 2), (1, 3), (2, 1), (2, 2)]);
        assert!(SkewShape::new(p("1"), p("2")).cells().is_empty());
    }

    #[test]
    fn maya_examples() {
        let vac = maya(&Partition::empty(), 0, (-4, 4)).unwrap();
        assert_eq!(vac.occupied(), vec![-1, -2, -3, -4]);
        let one = maya(&p("1"), 0, (-4, 4)).unwrap();
        assert_eq!(one.occupied(), vec![0, -2, -3, -4]);
        assert_eq!(one.charge(), 0);
        assert_eq!(one.to_partition(), (p("1"), 0));
        assert!(maya(&p("5"), 0, (-4, 4)).is_err());
        assert!(maya(&p("1,1,1,1,1"), 0, (-4, 4)).is_err());
        let shifted = maya(&p("2,1"), -3, (-8, 4)).unwrap();
        assert_eq!(shifted.to_partition(), (p("2,1"), -3));
    }

    #[test]
    fn maya_conjugation_law() {
        for lam in Partition::in_box(4, 4) {
            let a = maya(&lam, 0, (-6, 6)).unwrap();
            let b = maya(&lam.conjugate(), 0, (-6, 6)).unwrap();
            for n in -6..6 {
                assert_eq!(a.is_occupied(n), !b.is_occupied(-1 - n), "{lam}");
            }
        }
    }
}
