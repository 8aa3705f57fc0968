use partact::exactmath::{
    dot, replay, span_projection, staged_feasibility, ConstraintSystem, Feasibility, Poly, Rat,
    Scalar,
};
use partact::functors::{FunctorSpec, Label, SpanElement};
use partact::partitions::{
    enumerate, enumerate_projective, vertical_concat, CategorySpec, Partition,
};
use partact::rigidity::{is_projection, minimal_projection};
use partact::tensorrep::t_p;
use partact::yd::{Maps, Span, YDCollection};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn partition(upper: usize, lower: usize) -> impl Strategy<Value = Partition> {
    let n = upper + lower;
    proptest::collection::vec(0..n.max(1), n)
        .prop_map(move |labels| Partition::from_labels(upper, lower, &labels))
}

fn any_partition(max_row: usize) -> impl Strategy<Value = Partition> {
    (0..=max_row, 0..=max_row).prop_flat_map(|(u, l)| partition(u, l))
}

/// p ∈ P(a, b), q ∈ P(b, c), r ∈ P(c, d).
fn chain(max_row: usize) -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (0..=max_row, 0..=max_row, 0..=max_row, 0..=max_row)
        .prop_flat_map(|(a, b, c, d)| (partition(a, b), partition(b, c), partition(c, d)))
}

fn compose(q: &Partition, p: &Partition) -> (Partition, usize) {
    vertical_concat(q, p).unwrap()
}

fn crosses(p: &Partition) -> bool {
    let c = p.circular_labels();
    let n = c.len();
    for a in 0..n {
        for b in a + 1..n {
            for x in b + 1..n {
                for d in x + 1..n {
                    if c[a] == c[x] && c[b] == c[d] && c[a] != c[b] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..9, -20i64..20, 1i64..9)
        .prop_map(|(a, b, c, d)| Scalar::with_root(Rat::new(a, b), Rat::new(c, d), 5))
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-9i64..10, 1i64..5).prop_map(|(a, b)| Scalar::frac(a, b))
}

fn categories() -> Vec<CategorySpec> {
    vec![
        CategorySpec::nc2(),
        CategorySpec::nc(),
        CategorySpec::nc_even(),
        CategorySpec::nc_12(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn composition_is_associative_and_loops_add((p, q, r) in chain(3)) {
        let (qp, a) = compose(&q, &p);
        let (r_qp, b) = compose(&r, &qp);
        let (rq, c) = compose(&r, &q);
        let (rq_p, d) = compose(&rq, &p);
        prop_assert_eq!(r_qp, rq_p);
        prop_assert_eq!(a + b, c + d);
    }

    #[test]
    fn involution_reverses_composition((p, q, _) in chain(3)) {
        let (qp, a) = compose(&q, &p);
        let (ps_qs, b) = compose(&p.involution(), &q.involution());
        prop_assert_eq!(qp.involution(), ps_qs);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn involution_distributes_over_tensor(p in any_partition(3), q in any_partition(3)) {
        prop_assert_eq!(p.horizontal_concat(&q).involution(), p.involution().horizontal_concat(&q.involution()));
        prop_assert_eq!(p.involution().involution(), p);
    }

    #[test]
    fn noncrossing_matches_pattern_search(p in any_partition(4)) {
        prop_assert_eq!(p.is_noncrossing(), !crosses(&p));
    }

    #[test]
    fn categories_are_closed(p in any_partition(3), q in any_partition(3)) {
        for cat in categories() {
            if !(cat.contains(&p) && cat.contains(&q)) {
                continue;
            }
            prop_assert!(cat.contains(&p.horizontal_concat(&q)), "{} ⊙", cat.name());
            prop_assert!(cat.contains(&p.involution()), "{} *", cat.name());
            if p.lower() == q.upper() {
                prop_assert!(cat.contains(&compose(&q, &p).0), "{} ∘", cat.name());
            }
        }
    }

    #[test]
    fn conjugation_keeps_loop_counts(
        (p, r, q) in (1usize..=3, 0usize..=3).prop_flat_map(|(k, l)| {
            let projective = enumerate_projective(&CategorySpec::all(), k).unwrap();
            (proptest::sample::select(projective), partition(k, l), partition(l, l))
        })
    ) {
        let (rp, _) = compose(&r, &p);
        let (rprs, _) = compose(&rp, &r.involution());
        prop_assert_eq!(compose(&q, &rp).1, compose(&q, &rprs).1);
    }

    #[test]
    fn partition_maps_follow_the_rules((p, q, _) in chain(2), n in 2usize..=3) {
        let (qp, loops) = compose(&q, &p);
        let lhs = t_p(&q, n).unwrap().compose(&t_p(&p, n).unwrap()).unwrap().to_matrix();
        let rhs = t_p(&qp, n).unwrap().scale(&Scalar::int(n.pow(loops as u32) as i64)).to_matrix();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(t_p(&p.involution(), n).unwrap().to_matrix(), t_p(&p, n).unwrap().adjoint().to_matrix());
        let pq = p.horizontal_concat(&q);
        prop_assert_eq!(t_p(&pq, n).unwrap().to_matrix(), t_p(&p, n).unwrap().tensor(&t_p(&q, n).unwrap()).unwrap().to_matrix());
    }

    #[test]
    fn field_arithmetic(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn span_projections(vs in proptest::collection::vec(proptest::collection::vec(rational(), 4), 0..4)) {
        let p = span_projection(vs.iter(), 4);
        prop_assert_eq!(p.mul(&p), p.clone());
        prop_assert_eq!(p.transpose(), p.clone());
        for v in &vs {
            prop_assert_eq!(&p.mul_vec(v), v);
        }
    }

    #[test]
    fn solver_respects_planted_solutions(
        values in proptest::collection::vec(rational(), 4),
        rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 4), 1..5),
        quad in proptest::collection::vec((0u32..4, 0u32..4), 0..3),
    ) {
        let mut sys = ConstraintSystem::new(0);
        for v in 0..4 {
            sys.add_var(format!("x{v}"));
        }
        let value = |v: u32| values[v as usize].clone();
        for (i, row) in rows.iter().enumerate() {
            let mut p = Poly::zero();
            for (v, c) in row.iter().enumerate() {
                p = p.add(&Poly::var(v as u32).scale(&Scalar::int(*c)));
            }
            let shift = p.eval(&value);
            sys.push(format!("lin {i}"), p.sub(&Poly::constant(shift)));
        }
        for (i, (a, b)) in quad.iter().enumerate() {
            let p = Poly::var(*a).mul(&Poly::var(*b));
            let shift = p.eval(&value);
            sys.push(format!("quad {i}"), p.sub(&Poly::constant(shift)));
        }
        match staged_feasibility(&sys).unwrap() {
            Feasibility::Feasible(w) => prop_assert!(sys.satisfied_by(&|v| w.get(&v).cloned().unwrap_or_default()).is_ok()),
            Feasibility::Infeasible(_) => prop_assert!(false, "a system with a planted solution was declared infeasible"),
            Feasibility::Undecided { .. } => {}
        }
    }

    #[test]
    fn solver_certificates_replay(
        values in proptest::collection::vec(rational(), 3),
        extra in proptest::collection::vec((0u32..3, 0u32..3, -3i64..4), 0..4),
        shift in 1i64..5,
    ) {
        let mut sys = ConstraintSystem::new(0);
        for v in 0..3 {
            sys.add_var(format!("x{v}"));
        }
        let value = |v: u32| values[v as usize].clone();
        for v in 0..3u32 {
            sys.push(format!("fix {v}"), Poly::var(v).sub(&Poly::constant(value(v))));
        }
        for (i, (a, b, c)) in extra.iter().enumerate() {
            let p = Poly::var(*a).mul(&Poly::var(*b)).scale(&Scalar::int(*c));
            let s = p.eval(&value);
            sys.push(format!("extra {i}"), p.sub(&Poly::constant(s)));
        }
        let x0 = value(0);
        sys.push("clash", Poly::var(0).sub(&Poly::constant(&x0 + &Scalar::int(shift))));
        match staged_feasibility(&sys).unwrap() {
            Feasibility::Infeasible(cert) => prop_assert!(replay(&sys, &cert).is_ok()),
            other => prop_assert!(false, "expected a contradiction, got {:?}", other),
        }
    }

    #[test]
    fn phi_matches_partition_maps(
        coeffs in proptest::collection::vec(-4i64..5, 5),
        other in proptest::collection::vec(-4i64..5, 5),
        pick in any::<prop::sample::Index>(),
        l in 0usize..=3,
    ) {
        for cat in [CategorySpec::nc(), CategorySpec::nc2()] {
            let spec = FunctorSpec::projective(cat.clone(), 3).unwrap();
            let k = 2;
            let element = |c: &[i64]| {
                let mut x = SpanElement::zero(k);
                for (lab, c) in spec.basis(k).unwrap().into_iter().zip(c) {
                    x.add_term(lab, &Scalar::int(*c));
                }
                x
            };
            let (x, y) = (element(&coeffs), element(&other));
            let cx = spec.concretize(&x).unwrap();
            let cy = spec.concretize(&y).unwrap();
            prop_assert_eq!(spec.inner(&x, &y).unwrap(), dot(&cx, &cy));
            let rs = enumerate(&cat, k, l).unwrap();
            if rs.is_empty() {
                continue;
            }
            let r = pick.get(&rs);
            let rx = spec.phi(r, &x).unwrap();
            let direct = t_p(r, 3).unwrap().apply(&cx).unwrap();
            prop_assert_eq!(spec.norm_sq(&rx).unwrap(), dot(&direct, &direct));
            prop_assert_eq!(spec.concretize(&rx).unwrap(), direct);
        }
    }

    #[test]
    fn iterates_of_any_collection_compose(coeffs in proptest::collection::vec(-3i64..4, 64), k in 0usize..=1) {
        let spec = FunctorSpec::line(CategorySpec::nc2(), CategorySpec::nc2(), 0, 3).unwrap();
        let kmax = 4;
        let mut it = coeffs.iter().cycle();
        let maps: Vec<BTreeMap<Label, SpanElement>> = (0..=kmax)
            .map(|d| {
                let targets = spec.basis(d + 2).unwrap();
                spec.basis(d)
                    .unwrap()
                    .into_iter()
                    .map(|l| {
                        let mut img = SpanElement::zero(d + 2);
                        for t in &targets {
                            img.add_term(t.clone(), &Scalar::int(*it.next().unwrap()));
                        }
                        (l, img)
                    })
                    .collect()
            })
            .collect();
        let c = YDCollection::explicit(spec.clone(), kmax, "random", maps).unwrap();
        for lab in spec.basis(k).unwrap() {
            let x = Span::basis(k, lab);
            let whole = c.iterate(2, &x).unwrap();
            let split = c.apply(&c.apply(&x).unwrap()).unwrap();
            prop_assert!(spec.equal(&whole.to_element(), &split.to_element()).unwrap());
        }
    }

    #[test]
    fn minimal_projections_are_projections(k in 1usize..=2, pick in any::<prop::sample::Index>(), n in 4u32..=5) {
        for cat in [CategorySpec::nc(), CategorySpec::nc2()] {
            let ps = enumerate_projective(&cat, k).unwrap();
            let p = pick.get(&ps);
            let m = minimal_projection(&cat, p, n).unwrap();
            prop_assert!(is_projection(&m));
            prop_assert_eq!(m.transpose(), m);
        }
    }
}
