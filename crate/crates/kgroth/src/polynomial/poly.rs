use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rustc_hash::FxHashMap;

use super::coeff::Coeff;
use super::monomial::{Family, Grading, Monomial, Variable};
use super::PolyError;

/// Exact sparse polynomial over the integers. Terms are kept sorted in
/// descending graded-lex order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Coeff)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn constant(c: impl Into<Coeff>) -> Poly {
        Poly::term(Monomial::ONE, c.into())
    }

    pub fn term(m: Monomial, c: Coeff) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Variable) -> Poly {
        Poly::term(Monomial::var(v), Coeff::ONE)
    }

    pub fn x(i: usize) -> Poly {
        Poly::var(Variable::x(i))
    }
    pub fn y(i: usize) -> Poly {
        Poly::var(Variable::y(i))
    }
    pub fn alpha(i: usize) -> Poly {
        Poly::var(Variable::alpha(i))
    }
    pub fn beta(i: usize) -> Poly {
        Poly::var(Variable::beta(i))
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(it: I) -> Poly {
        let mut acc: FxHashMap<Monomial, Coeff> = FxHashMap::default();
        for (m, c) in it {
            accumulate(&mut acc, m, c);
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: FxHashMap<Monomial, Coeff>) -> Poly {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Coeff::ZERO,
        }
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Coeff::ZERO,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn max_degree_in(&self, g: Grading) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree_in(g)).max()
    }

    pub fn min_degree_in(&self, g: Grading) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree_in(g)).min()
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut seen = [false; super::monomial::SLOTS];
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| Variable::from_slot(i)).collect()
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, d)| (*m, d * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        // multiplying by a monomial preserves the order
        Poly { terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Drops every term whose `g`-degree exceeds `cutoff`.
    pub fn truncate(&self, g: Grading, cutoff: u32) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.degree_in(g) <= cutoff).cloned().collect() }
    }

    /// Product with terms of `g`-degree above `cutoff` never formed. The flag
    /// reports whether any skipped pair existed.
    pub fn mul_truncated(&self, other: &Poly, g: Grading, cutoff: u32) -> (Poly, bool) {
        // terms of `other` grouped by degree, so that only admissible pairs are visited
        let mut by_degree: Vec<Vec<&(Monomial, Coeff)>> = vec![Vec::new(); cutoff as usize + 1];
        let mut dropped = false;
        for t in &other.terms {
            match by_degree.get_mut(t.0.degree_in(g) as usize) {
                Some(bucket) => bucket.push(t),
                None => dropped = true,
            }
        }
        let mut acc: FxHashMap<Monomial, Coeff> = FxHashMap::default();
        for (ma, ca) in &self.terms {
            let da = ma.degree_in(g);
            if da > cutoff {
                dropped = true;
                continue;
            }
            for (db, bucket) in by_degree.iter().enumerate() {
                if da + db as u32 > cutoff {
                    dropped |= !bucket.is_empty();
                    continue;
                }
                for (mb, cb) in bucket {
                    accumulate(&mut acc, ma.mul(mb), ca * cb);
                }
            }
        }
        (Poly::from_map(acc), dropped)
    }

    /// Exact quotient `self / den`, or an error when `den` does not divide.
    pub fn exact_divide(&self, den: &Poly) -> Result<Poly, PolyError> {
        let (lm, lc) = match den.leading() {
            Some(t) => t.clone(),
            None => return Err(PolyError::DivisionByZero),
        };
        if let Some(c) = den.as_constant() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, d) in &self.terms {
                terms.push((*m, d.div_exact(&c).ok_or(PolyError::NotDivisible)?));
            }
            return Ok(Poly { terms });
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Coeff)> = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            let qm = m.div(&lm).ok_or(PolyError::NotDivisible)?;
            let qc = c.div_exact(&lc).ok_or(PolyError::NotDivisible)?;
            rem = &rem - &den.mul_monomial(&qm, &qc);
            quot.push((qm, qc));
        }
        Ok(Poly::from_terms(quot))
    }

    /// Simultaneous substitution; variables missing from the map are kept.
    pub fn substitute(&self, map: &BTreeMap<Variable, Poly>) -> Poly {
        self.substitute_with(|v| map.get(&v).cloned())
    }

    pub fn substitute_with<F: Fn(Variable) -> Option<Poly>>(&self, f: F) -> Poly {
        let mut images: FxHashMap<Variable, Option<Vec<Poly>>> = FxHashMap::default();
        let mut acc: FxHashMap<Monomial, Coeff> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut kept = Monomial::ONE;
            let mut prod = Poly::constant(c.clone());
            for (v, e) in m.support() {
                let img = images.entry(v).or_insert_with(|| f(v).map(|p| vec![Poly::one(), p]));
                match img {
                    None => kept.0[v.slot()] = e,
                    Some(powers) => {
                        while powers.len() <= e as usize {
                            let next = &powers[powers.len() - 1] * &powers[1];
                            powers.push(next);
                        }
                        prod = &prod * &powers[e as usize];
                    }
                }
            }
            for (pm, pc) in prod.terms {
                accumulate(&mut acc, pm.mul(&kept), pc);
            }
        }
        Poly::from_map(acc)
    }

    /// Renames variables monomial-wise.
    pub fn rename<F: Fn(Variable) -> Variable>(&self, f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::ONE;
            for (v, e) in m.support() {
                let w = f(v);
                out.0[w.slot()] += e;
            }
            (out, c.clone())
        }))
    }

    /// Exchanges `alpha_i` and `beta_i` for every `i`.
    pub fn swap_alpha_beta(&self) -> Poly {
        self.rename(|v| match v.family {
            Family::Alpha => Variable::new(Family::Beta, v.index),
            Family::Beta => Variable::new(Family::Alpha, v.index),
            _ => v,
        })
    }

    /// Sends every `alpha_i` to the aux variable `a` and every `beta_j` to `b`.
    pub fn specialize_one_param(&self) -> Poly {
        let a = Variable::aux("a");
        let b = Variable::aux("b");
        self.rename(|v| match v.family {
            Family::Alpha => a,
            Family::Beta => b,
            _ => v,
        })
    }

    /// Groups terms by their x-exponent vector on `x_1..x_n`; the values
    /// carry the remaining variables.
    pub fn split_x(&self, n: usize) -> BTreeMap<Vec<u8>, Poly> {
        let mut groups: BTreeMap<Vec<u8>, Vec<(Monomial, Coeff)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.x_exponents(n);
            let mut rest = *m;
            for s in rest.0[..n].iter_mut() {
                *s = 0;
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        groups.into_iter().map(|(k, v)| (k, Poly::from_terms(v))).collect()
    }

    /// Rendering in descending graded-lex order, e.g. `x1^2 - b1^2`.
    pub fn render(&self, unicode: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.render(unicode));
            } else {
                out.push_str(&format!("{abs}*{}", m.render(unicode)));
            }
        }
        out
    }

    /// Parses the ASCII rendering produced by [`Poly::render`].
    pub fn parse(s: &str) -> Result<Poly, PolyError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(PolyError::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(cur.is_empty() && i == 0) {
                if cur.is_empty() {
                    return Err(PolyError::Parse(format!("dangling sign at {i}")));
                }
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' {
                neg = true;
            } else if ch != '+' {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(PolyError::Parse("trailing sign".into()));
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            let mut c = Coeff::ONE;
            let mut m = Monomial::ONE;
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(PolyError::Parse(format!("empty factor in {chunk}")));
                }
                if factor.chars().all(|ch| ch.is_ascii_digit()) {
                    let k: Coeff = factor.parse().map_err(|_| PolyError::Parse(factor.into()))?;
                    c = &c * &k;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u8>().map_err(|_| PolyError::Parse(factor.into()))?),
                    None => (factor, 1),
                };
                let v = Variable::parse(name).ok_or_else(|| PolyError::Parse(format!("unknown variable {name}")))?;
                m = m.mul(&Monomial::var_pow(v, e));
            }
            terms.push((m, if neg { -c } else { c }));
        }
        Ok(Poly::from_terms(terms))
    }
}

pub(crate) fn accumulate(acc: &mut FxHashMap<Monomial, Coeff>, m: Monomial, c: Coeff) {
    use std::collections::hash_map::Entry;
    match acc.entry(m) {
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            *o.get_mut() = s;
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

fn merge(a: &Poly, b: &Poly, negate_b: bool) -> Poly {
    use std::cmp::Ordering;
    let mut terms = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    let nb = |c: &Coeff| if negate_b { -c } else { c.clone() };
    while i < a.terms.len() && j < b.terms.len() {
        match a.terms[i].0.cmp(&b.terms[j].0) {
            Ordering::Greater => {
                terms.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                terms.push((b.terms[j].0, nb(&b.terms[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a.terms[i].1 - &b.terms[j].1 } else { &a.terms[i].1 + &b.terms[j].1 };
                if !c.is_zero() {
                    terms.push((a.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    terms.extend(a.terms[i..].iter().cloned());
    terms.extend(b.terms[j..].iter().map(|(m, c)| (*m, nb(c))));
    Poly { terms }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        merge(self, rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        merge(self, rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            return rhs.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        if rhs.terms.len() == 1 {
            return self.mul_monomial(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        let mut acc: FxHashMap<Monomial, Coeff> = FxHashMap::default();
        acc.reserve(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                accumulate(&mut acc, ma.mul(mb), ca * cb);
            }
        }
        Poly::from_map(acc)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = &*self - rhs;
    }
}

impl From<i64> for Poly {
    fn from(v: i64) -> Self {
        Poly::constant(v)
    }
}

impl From<Variable> for Poly {
    fn from(v: Variable) -> Self {
        Poly::var(v)
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        Poly::from_terms(iter.flat_map(|p| p.terms.into_iter()))
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |a, b| &a * &b)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}
