use super::*;
use crate::exactmath::{dot, Matrix};
use crate::partitions::{enumerate, named::*};

fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

fn raw_vector(p: &Partition, n: usize) -> Vector {
    let m = p.lower();
    let dim = n.pow(m as u32);
    (0..dim)
        .map(|pos| {
            let idx = multi_index(pos, n, m);
            let ok = p
                .blocks()
                .iter()
                .all(|b| b.iter().all(|&i| idx[i - 1] == idx[b[0] - 1]));
            if ok {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect()
}

fn proj(cat: CategorySpec, n: u32) -> FunctorSpec {
    FunctorSpec::projective(cat, n).unwrap()
}

#[test]
fn gram_nc_degree_one() {
    for n in 2..6u32 {
        let g = gram(&proj(CategorySpec::nc(), n), 1).unwrap();
        assert_eq!(
            g.labels,
            vec![Label::Part(identity(1)), Label::Part(singletons())]
        );
        let want = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(1), s(n as i64)]]);
        assert_eq!(g.matrix, want);
        assert_eq!(g.rank(), 2);
    }
}

#[test]
fn gram_matches_concrete_vectors() {
    let n = 3u32;
    let specs = vec![
        proj(CategorySpec::nc(), n),
        proj(CategorySpec::nc2(), n),
        FunctorSpec::projective_zero(CategorySpec::nc2(), CategorySpec::nc(), n).unwrap(),
        FunctorSpec::line(CategorySpec::nc2(), CategorySpec::nc(), 0, n).unwrap(),
        FunctorSpec::line(CategorySpec::nc(), CategorySpec::nc(), 1, n).unwrap(),
        FunctorSpec::line(CategorySpec::nc2(), CategorySpec::nc(), 2, n).unwrap(),
        FunctorSpec::canonical(CategorySpec::nc(), n).unwrap(),
    ];
    for spec in &specs {
        for deg in 0..=3 {
            let g = gram(spec, deg).unwrap();
            assert!(g.is_psd(), "{}", spec.describe());
            let vecs: Vec<Vector> = g
                .labels
                .iter()
                .map(|l| {
                    spec.concretize(&SpanElement::basis(deg, l.clone()))
                        .unwrap()
                })
                .collect();
            for i in 0..g.len() {
                for j in 0..g.len() {
                    assert_eq!(
                        &dot(&vecs[i], &vecs[j]),
                        g.matrix.get(i, j),
                        "{} degree {deg}",
                        spec.describe()
                    );
                }
            }
        }
    }
}

#[test]
fn gram_ranks_of_examples() {
    for n in [4u32, 5] {
        for k in 0..=3 {
            let g = gram(&proj(CategorySpec::nc2(), n), k).unwrap();
            assert_eq!(g.rank(), g.len());
        }
    }
    let even = proj(CategorySpec::nc_even(), 4);
    let g = gram(&even, 2).unwrap();
    let sub = g
        .restricted(&[Label::Part(identity(2)), Label::Part(p4())])
        .unwrap();
    assert_eq!(sub.rank(), 1);
    assert_eq!(k_dim(&proj(CategorySpec::nc2(), 4), 2).unwrap(), 2);
    assert_eq!(k_dim(&proj(CategorySpec::nc(), 4), 1).unwrap(), 2);
    assert_eq!(k_dim(&proj(CategorySpec::nc(), 4), 2).unwrap(), 5);
}

#[test]
fn phi_examples() {
    let spec = proj(CategorySpec::nc2(), 4);
    let x = SpanElement::of(2, identity(2));
    assert_eq!(spec.phi(&pair_upper(), &x).unwrap(), spec.unit());
    let y = SpanElement::of(2, d(1));
    assert_eq!(
        spec.phi(&pair_upper(), &y).unwrap(),
        spec.unit().scale(&s(4))
    );
    assert!(matches!(
        spec.phi(&singletons(), &SpanElement::of(1, identity(1))),
        Err(Error::NotInCategory(_))
    ));
    assert!(matches!(
        spec.phi(&pair_upper(), &SpanElement::of(1, identity(1))),
        Err(Error::DegreeMismatch(_))
    ));

    let line = FunctorSpec::line(CategorySpec::nc(), CategorySpec::nc(), 0, 4).unwrap();
    for p in enumerate(&CategorySpec::nc(), 0, 3).unwrap() {
        let t = SpanElement::of(3, p);
        assert_eq!(line.phi(&identity(3), &t).unwrap(), t);
    }
}

#[test]
fn phi_is_t_r_on_projective_vectors() {
    // the norm identity ‖Σ λ_p N^{rl(r,p)} η_{rpr*}‖ = ‖T_r(Σ λ_p η_p)‖
    let n = 3u32;
    let spec = proj(CategorySpec::nc(), n);
    for k in 0..=2 {
        let g = gram(&spec, k).unwrap();
        let coeffs: Vec<Scalar> = (0..g.len())
            .map(|i| Scalar::int(i as i64 * 2 - 3))
            .collect();
        let x = g.element(&coeffs);
        let vx = spec.concretize(&x).unwrap();
        for l in 0..=2 {
            for r in enumerate(&CategorySpec::nc(), k, l).unwrap() {
                let lhs = spec.norm_sq(&spec.phi(&r, &x).unwrap()).unwrap();
                let tv = crate::tensorrep::t_p(&r, n as usize)
                    .unwrap()
                    .apply(&vx)
                    .unwrap();
                assert_eq!(lhs, dot(&tv, &tv), "r = {r}");
            }
        }
    }
}

#[test]
fn iota_examples() {
    let spec = proj(CategorySpec::nc(), 4);
    let bar = SpanElement::of(1, identity(1));
    assert_eq!(
        spec.iota(&bar, &bar).unwrap(),
        SpanElement::of(2, identity(2))
    );
}

#[test]
fn shift_one_matches_pointwise_product() {
    let n = 3usize;
    let spec = FunctorSpec::line(CategorySpec::nc(), CategorySpec::all(), 1, n as u32).unwrap();
    for a in 1..=3 {
        for b in 1..=(4 - a) {
            for p in enumerate(&CategorySpec::all(), 0, a).unwrap() {
                for q in enumerate(&CategorySpec::all(), 0, b).unwrap() {
                    let (vp, vq) = (raw_vector(&p, n), raw_vector(&q, n));
                    let (k, l) = (a - 1, b - 1);
                    let mut want = vec![Scalar::zero(); n.pow((k + l + 1) as u32)];
                    for pos in 0..want.len() {
                        let idx = multi_index(pos, n, k + l + 1);
                        let last = idx[k + l];
                        let ip: Vec<usize> = idx[..k].iter().copied().chain([last]).collect();
                        let iq: Vec<usize> = idx[k..k + l].iter().copied().chain([last]).collect();
                        want[pos] = &vp[index_of(&ip, n)] * &vq[index_of(&iq, n)];
                    }
                    let got = spec
                        .iota(
                            &SpanElement::of(k, p.clone()),
                            &SpanElement::of(l, q.clone()),
                        )
                        .unwrap();
                    let got_vec: Vector = spec
                        .concretize(&got)
                        .unwrap()
                        .iter()
                        .map(|x| x * &Scalar::half_power(n as u32, 1))
                        .collect();
                    assert_eq!(got_vec, want, "p = {p}, q = {q}");
                }
            }
        }
    }
}

#[test]
fn shift_two_matches_matrix_product() {
    // e_a ⊗ e_b ↦ E_{ba}; then E_{ba} E_{dc} = δ_{ad} E_{bc} ↦ e_c ⊗ e_b
    let n = 3usize;
    let spec = FunctorSpec::line(CategorySpec::nc(), CategorySpec::all(), 2, n as u32).unwrap();
    for a in 2..=3 {
        for b in 2..=(5 - a).min(3) {
            for p in enumerate(&CategorySpec::all(), 0, a).unwrap() {
                for q in enumerate(&CategorySpec::all(), 0, b).unwrap() {
                    let (vp, vq) = (raw_vector(&p, n), raw_vector(&q, n));
                    let (k, l) = (a - 2, b - 2);
                    let m = k + l + 2;
                    let mut want = vec![Scalar::zero(); n.pow(m as u32)];
                    for pos in 0..want.len() {
                        let idx = multi_index(pos, n, m);
                        let (c, bb) = (idx[m - 2], idx[m - 1]);
                        let mut acc = Scalar::zero();
                        for x in 1..=n {
                            let ip: Vec<usize> = idx[..k].iter().copied().chain([x, bb]).collect();
                            let iq: Vec<usize> =
                                idx[k..k + l].iter().copied().chain([c, x]).collect();
                            acc += &(&vp[index_of(&ip, n)] * &vq[index_of(&iq, n)]);
                        }
                        want[pos] = acc;
                    }
                    let got = spec
                        .iota(
                            &SpanElement::of(k, p.clone()),
                            &SpanElement::of(l, q.clone()),
                        )
                        .unwrap();
                    let got_vec: Vector = spec
                        .concretize(&got)
                        .unwrap()
                        .iter()
                        .map(|x| x * &Scalar::half_power(n as u32, 1))
                        .collect();
                    assert_eq!(got_vec, want, "p = {p}, q = {q}");
                }
            }
        }
    }
}

#[test]
fn concretize_examples() {
    let spec = proj(CategorySpec::nc2(), 3);
    let dv = spec.concretize(&SpanElement::of(2, d(1))).unwrap();
    let mut want = vec![Scalar::zero(); 9];
    for j in 1..=3 {
        want[index_of(&[j, j], 3)] = Scalar::one();
    }
    assert_eq!(dv, want);
    let bars = spec.concretize(&SpanElement::of(2, identity(2))).unwrap();
    let mut want = vec![Scalar::zero(); 9];
    want[0] = Scalar::one();
    assert_eq!(bars, want);
}

#[test]
fn j_map_examples() {
    let cg = FunctorSpec::canonical(CategorySpec::nc(), 3).unwrap();
    for k in 0..=3 {
        let j = j_map(&cg, k).unwrap();
        for (p, l) in j.form.labels.iter().enumerate() {
            let mut e = vec![Scalar::zero(); j.form.len()];
            e[p] = Scalar::one();
            let img = j.form.element(&j.apply(&e));
            let rev: Vec<usize> = l.index().unwrap().iter().rev().copied().collect();
            assert_eq!(img, SpanElement::basis(k, Label::Index(rev)));
        }
        assert!(j.is_involutive());
    }
    let spec = proj(CategorySpec::nc2(), 4);
    let j = j_map(&spec, 1).unwrap();
    let bar = SpanElement::of(1, identity(1));
    assert!(spec.equal(&j.apply_span(&bar).unwrap(), &bar).unwrap());
    let specs = [
        proj(CategorySpec::nc(), 4),
        proj(CategorySpec::nc_even(), 4),
        FunctorSpec::line(CategorySpec::nc2(), CategorySpec::nc(), 0, 4).unwrap(),
        FunctorSpec::line(CategorySpec::nc(), CategorySpec::nc(), 1, 4).unwrap(),
        FunctorSpec::line(CategorySpec::nc2(), CategorySpec::nc2(), 2, 4).unwrap(),
    ];
    for spec in &specs {
        for k in 0..=2 {
            assert!(
                j_map(spec, k).unwrap().is_involutive(),
                "{} degree {k}",
                spec.describe()
            );
        }
    }
}

#[test]
fn axioms_hold_for_projective_modules() {
    for cat in [CategorySpec::nc2(), CategorySpec::nc()] {
        let r = verify_functor_axioms(&proj(cat, 4), 3).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures().next());
    }
}

#[test]
fn axioms_hold_for_line_models() {
    let specs = [
        FunctorSpec::line(CategorySpec::nc2(), CategorySpec::nc(), 0, 3).unwrap(),
        FunctorSpec::line(CategorySpec::nc(), CategorySpec::nc(), 1, 3).unwrap(),
        FunctorSpec::line(CategorySpec::nc2(), CategorySpec::nc2(), 2, 3).unwrap(),
        FunctorSpec::canonical(CategorySpec::nc(), 3).unwrap(),
    ];
    for spec in &specs {
        let r = verify_functor_axioms(spec, 2).unwrap();
        assert!(
            r.all_pass(),
            "{}: {:?}",
            spec.describe(),
            r.failures().next()
        );
    }
}

#[test]
fn shift_two_needs_a_one_dimensional_k0() {
    // NC(0,2) has two partitions, so K_0 is not spanned by the unit and the
    // matrix product cannot be isometric
    let spec = FunctorSpec::line(CategorySpec::nc2(), CategorySpec::nc(), 2, 3).unwrap();
    assert_eq!(k_dim(&spec, 0).unwrap(), 2);
    let r = verify_functor_axioms(&spec, 1).unwrap();
    assert!(r.failed("iota isometry"));
    assert!(!r.failed("composition") && !r.failed("adjoint") && !r.failed("tensor naturality"));
}

#[test]
fn dropped_loop_factor_breaks_adjointness() {
    let spec = proj(CategorySpec::nc2(), 4).with_mutation(Mutation::DropLoopFactor);
    let r = verify_functor_axioms(&spec, 2).unwrap();
    assert!(r.failed("adjoint"));
    assert!(r.failures().all(|c| c.counterexample.is_some()));
}

#[test]
fn restriction() {
    let spec = proj(CategorySpec::nc(), 4);
    let small = restrict(&spec, &CategorySpec::nc2()).unwrap();
    assert_eq!(small.category, CategorySpec::nc2());
    assert!(verify_functor_axioms(&small, 2).unwrap().all_pass());
    let same = restrict(&spec, &CategorySpec::nc()).unwrap();
    assert_eq!(same.category, spec.category);
    assert_eq!(same.model, spec.model);
    assert!(matches!(
        restrict(&small, &CategorySpec::nc()),
        Err(Error::NotASubcategory(_))
    ));
    let zero = FunctorSpec::projective_zero(CategorySpec::nc2(), CategorySpec::nc(), 4).unwrap();
    assert_eq!(module_audit(&zero, 3), Ok(()));
    assert_eq!(module_audit(&spec, 3), Ok(()));
}
