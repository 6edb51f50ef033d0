use serde_json::{json, Map, Value};

use super::coeff::Coeff;
use super::monomial::{Monomial, Variable};
use super::poly::Poly;
use super::PolyError;

/// `[{"exponents": {"x1": 2, "b3": 1}, "coeff": "-4"}, ...]` in canonical term order.
pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(m, c)| {
                let mut exps = Map::new();
                for (v, e) in m.support() {
                    exps.insert(v.name(), json!(e));
                }
                json!({ "exponents": Value::Object(exps), "coeff": c.to_string() })
            })
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<Poly, PolyError> {
    let bad = |what: &str| PolyError::Parse(format!("poly json: {what}"));
    let arr = v.as_array().ok_or_else(|| bad("expected array"))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let exps = t.get("exponents").and_then(Value::as_object).ok_or_else(|| bad("missing exponents"))?;
        let mut m = Monomial::ONE;
        for (k, e) in exps {
            let var = Variable::parse(k).ok_or_else(|| bad(&format!("unknown variable {k}")))?;
            let e = e.as_u64().filter(|&e| e <= u8::MAX as u64).ok_or_else(|| bad("bad exponent"))?;
            m = m.mul(&Monomial::var_pow(var, e as u8));
        }
        let c: Coeff = match t.get("coeff") {
            Some(Value::String(s)) => s.parse().map_err(|_| bad("bad coeff"))?,
            Some(Value::Number(n)) => n.as_i64().ok_or_else(|| bad("bad coeff"))?.into(),
            _ => return Err(bad("missing coeff")),
        };
        terms.push((m, c));
    }
    Ok(Poly::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let p = Poly::parse("x1^2*b3 - 4*a1 + 123456789012345678901234567890").unwrap();
        let v = poly_to_json(&p);
        assert_eq!(v[0]["exponents"]["x1"], 2);
        assert_eq!(v[0]["coeff"], "1");
        assert_eq!(poly_from_json(&v).unwrap(), p);
        assert!(poly_from_json(&json!([{"exponents": {"q": 1}, "coeff": "1"}])).is_err());
    }
}
