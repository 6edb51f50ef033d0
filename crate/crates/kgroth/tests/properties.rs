use kgroth::grothendieck::{jacobi_trudi, jt_g, Form, JTRequest, Variant};
use kgroth::polynomial::{poly_from_json, poly_to_json, Family, Monomial};
use kgroth::{Coeff, Grading, Partition, Poly, Variable};
use proptest::prelude::*;

fn shape(max_part: usize, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn partition() -> impl Strategy<Value = Partition> {
    shape(4, 3)
}

fn small_shape() -> impl Strategy<Value = Partition> {
    shape(2, 2)
}

fn variable() -> impl Strategy<Value = Variable> {
    prop_oneof![
        (1usize..3).prop_map(Variable::x),
        (1usize..3).prop_map(Variable::alpha),
        (1usize..3).prop_map(Variable::beta),
    ]
}

fn poly() -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec((variable(), 0u8..3), 0..3), -4i64..5)
        .prop_map(|(pairs, c)| (Monomial::from_pairs(&pairs), Coeff::from(c)));
    prop::collection::vec(term, 0..5).prop_map(Poly::from_terms)
}

fn swap_x12(p: &Poly) -> Poly {
    p.rename(|v| match (v.family, v.index) {
        (Family::X, 1) => Variable::x(2),
        (Family::X, 2) => Variable::x(1),
        _ => v,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(lam in partition()) {
        prop_assert_eq!(lam.conjugate().conjugate(), lam.clone());
        prop_assert_eq!(lam.conjugate().size(), lam.size());
    }

    #[test]
    fn containment_matches_conjugates(lam in partition(), mu in partition()) {
        prop_assert_eq!(lam.contains(&mu), lam.conjugate().contains(&mu.conjugate()));
        let meet = lam.intersection(&mu);
        prop_assert!(lam.contains(&meet) && mu.contains(&meet));
    }

    #[test]
    fn ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn render_parse_roundtrip(p in poly()) {
        prop_assert_eq!(Poly::parse(&p.render(false)).unwrap(), p.clone());
        prop_assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn truncated_product_matches_truncation(p in poly(), q in poly(), c in 0u32..5) {
        let (t, _) = p.mul_truncated(&q, Grading::AB, c);
        prop_assert_eq!(t, (&p * &q).truncate(Grading::AB, c));
    }

    #[test]
    fn dual_is_symmetric_and_homogeneous(lam in small_shape(), mu in small_shape()) {
        let g = jt_g(&JTRequest::new(lam.clone(), mu.clone(), 2, Variant::Dual)).unwrap();
        prop_assert_eq!(swap_x12(&g), g.clone());
        let k = lam.size() as i64 - mu.size() as i64;
        for (m, _) in g.terms() {
            prop_assert_eq!(m.degree() as i64, k);
        }
    }

    #[test]
    fn big_g_is_symmetric_and_homogeneous(lam in small_shape(), mu in small_shape(), slash in any::<bool>()) {
        let v = if slash { Variant::Gds } else { Variant::G };
        let s = jacobi_trudi(&JTRequest::new(lam.clone(), mu.clone(), 2, v).cutoff(3)).unwrap();
        let g = s.body();
        prop_assert_eq!(swap_x12(g), g.clone());
        let k = lam.size() as i64 - mu.size() as i64;
        for (m, _) in g.terms() {
            prop_assert_eq!(m.degree_in(Grading::XY) as i64 - m.degree_in(Grading::AB) as i64, k);
        }
    }

    #[test]
    fn forms_agree(lam in small_shape(), mu in small_shape(), which in 0usize..3) {
        let v = [Variant::G, Variant::Gds, Variant::Dual][which];
        let req = JTRequest::new(lam, mu, 2, v).cutoff(3);
        let h = jacobi_trudi(&req.clone().form(Form::H)).unwrap();
        let e = jacobi_trudi(&req.form(Form::E)).unwrap();
        prop_assert_eq!(h.body(), e.body());
    }
}
