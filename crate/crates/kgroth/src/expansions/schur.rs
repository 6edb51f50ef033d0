use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::alphabets::DiffAlphabet;
use crate::grothendieck::schur_skew;
use crate::partitions::Partition;
use crate::polynomial::{poly_from_json, poly_to_json, Family, Grading, Poly, Variable};

use super::ExpansionError;

/// `Σ c_λ s_λ(x_1..x_n)` with coefficients free of `x`. Conjugating indices
/// is only meaningful for terms of degree at most `faithful_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurExpansion {
    pub nvars: usize,
    pub terms: BTreeMap<Partition, Poly>,
    pub faithful_degree: usize,
}

impl SchurExpansion {
    pub fn coeff(&self, lam: &Partition) -> Poly {
        self.terms.get(lam).cloned().unwrap_or_else(Poly::zero)
    }

    /// `Σ c_λ s_λ(x_1..x_n)`.
    pub fn to_poly(&self) -> Poly {
        let x = DiffAlphabet::xs(self.nvars);
        self.terms.iter().map(|(lam, c)| c * &schur_skew(lam, &Partition::empty(), &x)).sum()
    }

    /// `s_λ ↦ s_{λ'}`.
    pub fn omega(&self) -> Result<SchurExpansion, ExpansionError> {
        if let Some(lam) = self.terms.keys().find(|l| l.size() > self.faithful_degree) {
            return Err(ExpansionError::Unfaithful { degree: lam.size(), faithful: self.faithful_degree });
        }
        let terms = self.terms.iter().map(|(l, c)| (l.conjugate(), c.clone())).collect();
        Ok(SchurExpansion { terms, ..self.clone() })
    }

    /// Exchanges `α_i` and `β_i` in every coefficient.
    pub fn swap_alpha_beta(&self) -> SchurExpansion {
        let terms = self.terms.iter().map(|(l, c)| (l.clone(), c.swap_alpha_beta())).collect();
        SchurExpansion { terms, ..self.clone() }
    }

    /// Drops terms with `|λ| > d`.
    pub fn through_degree(&self, d: usize) -> SchurExpansion {
        let terms = self.terms.iter().filter(|(l, _)| l.size() <= d).map(|(l, c)| (l.clone(), c.clone())).collect();
        SchurExpansion { terms, ..self.clone() }
    }

    /// `{"n": 4, "terms": [{"shape": [2, 1], "coeff": ...}]}`, shapes in
    /// increasing order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(l, c)| json!({ "shape": l.parts(), "coeff": poly_to_json(c) })).collect();
        json!({ "n": self.nvars, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<SchurExpansion, ExpansionError> {
        let bad = |w: &str| ExpansionError::Invalid(format!("schur json: {w}"));
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing n"))? as usize;
        let mut terms = BTreeMap::new();
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))? {
            let shape: Vec<usize> = serde_json::from_value(t.get("shape").cloned().ok_or_else(|| bad("missing shape"))?)
                .map_err(|_| bad("bad shape"))?;
            let lam = Partition::new(shape).map_err(|_| bad("shape is not a partition"))?;
            let c = poly_from_json(t.get("coeff").ok_or_else(|| bad("missing coeff"))?)?;
            terms.insert(lam, c);
        }
        Ok(SchurExpansion { nvars: n, terms, faithful_degree: n })
    }
}

fn swap_adjacent(p: &Poly, k: usize) -> Poly {
    p.rename(|v| match v.family {
        Family::X if v.index as usize == k => Variable::x(k + 1),
        Family::X if v.index as usize == k + 1 => Variable::x(k),
        _ => v,
    })
}

/// Expands a polynomial symmetric in `x_1..x_n` (any other variables are
/// coefficients) by repeatedly removing the leading Schur polynomial.
pub fn schur_expand(p: &Poly, n: usize) -> Result<SchurExpansion, ExpansionError> {
    if p.variables().iter().any(|v| v.family == Family::X && v.index as usize > n) {
        return Err(ExpansionError::Invalid(format!("input involves variables beyond x{n}")));
    }
    for k in 1..n {
        if swap_adjacent(p, k) != *p {
            return Err(ExpansionError::NotSymmetric(n));
        }
    }
    let x = DiffAlphabet::xs(n);
    let mut cache: HashMap<Partition, Poly> = HashMap::new();
    let mut rest = p.clone();
    let mut terms = BTreeMap::new();
    while !rest.is_zero() {
        let groups = rest.split_x(n);
        let (key, coeff) = groups
            .into_iter()
            .max_by(|(a, _), (b, _)| {
                let (da, db): (u32, u32) = (a.iter().map(|&e| e as u32).sum(), b.iter().map(|&e| e as u32).sum());
                da.cmp(&db).then_with(|| a.cmp(b))
            })
            .expect("nonzero polynomial has a term");
        if key.windows(2).any(|w| w[0] < w[1]) {
            return Err(ExpansionError::NotSymmetric(n));
        }
        let lam = Partition::new(key.iter().map(|&e| e as usize).collect()).expect("weakly decreasing exponents");
        let s = cache.entry(lam.clone()).or_insert_with(|| schur_skew(&lam, &Partition::empty(), &x));
        rest = &rest - &(&coeff * &*s);
        terms.insert(lam, coeff);
    }
    Ok(SchurExpansion { nvars: n, terms, faithful_degree: n })
}

/// [`schur_expand`] of the part of `p` with x-degree at most `max_degree`.
pub fn schur_expand_through(p: &Poly, n: usize, max_degree: u32) -> Result<SchurExpansion, ExpansionError> {
    schur_expand(&p.truncate(Grading::of(&[Family::X]), max_degree), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grothendieck::{jt_G, jt_g, JTRequest, Variant};

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn elementary_cases() {
        let se = schur_expand(&p("x1 + x2"), 2).unwrap();
        assert_eq!(se.terms, [(part("1"), Poly::one())].into_iter().collect());
        for lam in Partition::in_box(3, 2) {
            let s = schur_skew(&lam, &Partition::empty(), &DiffAlphabet::xs(3));
            let se = schur_expand(&s, 3).unwrap();
            let want: BTreeMap<_, _> = if s.is_zero() { BTreeMap::new() } else { [(lam.clone(), Poly::one())].into() };
            assert_eq!(se.terms, want, "{lam}");
        }
    }

    #[test]
    fn rejects_non_symmetric() {
        assert_eq!(schur_expand(&p("x1"), 2), Err(ExpansionError::NotSymmetric(2)));
        assert!(schur_expand(&p("x3"), 2).is_err());
    }

    #[test]
    fn reconstructs_dual_grothendieck() {
        let req = JTRequest::new(part("2,1"), Partition::empty(), 3, Variant::Dual);
        let g = jt_g(&req).unwrap();
        let se = schur_expand(&g, 3).unwrap();
        assert_eq!(se.to_poly(), g);
        assert_eq!(se.coeff(&part("2,1")), Poly::one());
    }

    #[test]
    fn omega_guard_and_involution() {
        let se = SchurExpansion { nvars: 2, terms: [(part("1"), Poly::one())].into(), faithful_degree: 2 };
        assert_eq!(se.omega().unwrap(), se);
        let se = SchurExpansion { nvars: 2, terms: [(part("2,1"), p("a1"))].into(), faithful_degree: 2 };
        assert!(matches!(se.omega(), Err(ExpansionError::Unfaithful { degree: 3, faithful: 2 })));
        let se = SchurExpansion { nvars: 3, terms: [(part("2,1"), p("a1")), (part("2"), p("b2"))].into(), faithful_degree: 3 };
        assert_eq!(se.omega().unwrap().omega().unwrap(), se);
    }

    #[test]
    fn omega_exchanges_parameters() {
        for lam in [part("2,1"), part("2"), part("1,1"), part("3,1")] {
            let n = lam.size();
            let lhs = schur_expand(&jt_g(&JTRequest::new(lam.clone(), Partition::empty(), n, Variant::Dual)).unwrap(), n)
                .unwrap()
                .omega()
                .unwrap()
                .swap_alpha_beta();
            let rhs = schur_expand(&jt_g(&JTRequest::new(lam.conjugate(), Partition::empty(), n, Variant::Dual)).unwrap(), n).unwrap();
            assert_eq!(lhs.terms, rhs.terms, "{lam}");
        }
    }

    #[test]
    fn g11_schur_coefficients() {
        let req = JTRequest::new(part("1,1"), Partition::empty(), 4, Variant::G).cutoff(3);
        let g = jt_G(&req).unwrap();
        let se = schur_expand_through(g.body(), 4, 4).unwrap();
        let want: BTreeMap<Partition, Poly> = [
            ("1,1", "1"),
            ("2,1", "-a1"),
            ("1,1,1", "-b1 - b2"),
            ("3,1", "a1^2"),
            ("2,1,1", "a1*b1 + a1*b2"),
            ("1,1,1,1", "b1^2 + b1*b2 + b2^2"),
        ]
        .into_iter()
        .map(|(s, q)| (part(s), p(q)))
        .collect();
        assert_eq!(se.terms, want);
        assert!(se.coeff(&part("2,2")).is_zero());
    }

    #[test]
    fn json_roundtrip() {
        let se = SchurExpansion { nvars: 4, terms: [(part("2,1"), p("-a1")), (part("1"), Poly::one())].into(), faithful_degree: 4 };
        let v = se.to_json();
        assert_eq!(v["terms"][0]["shape"], json!([1]));
        assert_eq!(SchurExpansion::from_json(&v).unwrap(), se);
    }
}
