use super::*;
use crate::exactmath::{Matrix, Scalar};
use crate::partitions::{named, CategorySpec, Partition};
use crate::tensorrep::{basis_vector, flip_sigma, tensor_vectors, vector_a};

fn s2() -> Partition {
    Partition::from_labels(1, 1, &[0, 1])
}

/// dim H_n from u¹⊠uⁿ = uⁿ⁻¹ ⊕ uⁿ ⊕ uⁿ⁺¹ (free permutations) or
/// uⁿ⁻¹ ⊕ uⁿ⁺¹ (free orthogonal).
fn irrep_dims(n: i64, upto: usize, orthogonal: bool) -> Vec<i64> {
    let mut d = vec![1, if orthogonal { n } else { n - 1 }];
    while d.len() <= upto {
        let m = d.len();
        let next = if orthogonal {
            n * d[m - 1] - d[m - 2]
        } else {
            (n - 2) * d[m - 1] - d[m - 2]
        };
        d.push(next);
    }
    d
}

#[test]
fn normalized_operators() {
    let n = 4;
    assert_eq!(
        q_matrix(&named::identity(1), n).unwrap(),
        Matrix::identity(4)
    );
    let q = q_matrix(&s2(), n).unwrap();
    assert_eq!(q, Matrix::from_fn(4, 4, |_, _| Scalar::frac(1, 4)));
    assert_eq!(q.rank(), 1);
    let qd = q_matrix(&named::d(1), n).unwrap();
    let expect = Matrix::from_fn(16, 16, |r, c| {
        if r / 4 == r % 4 && c / 4 == c % 4 {
            Scalar::frac(1, 4)
        } else {
            Scalar::zero()
        }
    });
    assert_eq!(qd, expect);
    assert!(is_projection(&qd));
    assert!(matches!(
        q_matrix(&named::pair_lower(), n),
        Err(crate::Error::NotProjective(_))
    ));
}

#[test]
fn identity_projections() {
    assert_eq!(
        p_identity_projection(&CategorySpec::nc2(), 1, 4).unwrap(),
        Matrix::identity(4)
    );
    let p = p_identity_projection(&CategorySpec::nc(), 1, 4).unwrap();
    let expect = Matrix::identity(4).sub(&Matrix::from_fn(4, 4, |_, _| Scalar::frac(1, 4)));
    assert_eq!(p, expect);
    assert_eq!(p.trace(), Scalar::int(3));
    assert_eq!(p.rank(), 3);
}

#[test]
fn highest_weight_complement_is_spanned_by_two_families() {
    for k in 1..=3 {
        let families = highest_weight_span_families(k, 4).unwrap();
        let dim = 4usize.pow(k as u32);
        let from_families = crate::exactmath::span_projection(&families, dim);
        assert_eq!(
            from_families,
            r_identity_projection(&CategorySpec::nc(), k, 4).unwrap(),
            "k = {k}"
        );
    }
}

#[test]
fn projection_bundles() {
    for (cat, k) in [
        (CategorySpec::nc(), 1),
        (CategorySpec::nc(), 2),
        (CategorySpec::nc2(), 2),
    ] {
        let b = minimal_projections(&cat, k, 4).unwrap();
        b.audit()
            .unwrap_or_else(|e| panic!("{} k = {k}: {e}", cat.name()));
    }
    let b = minimal_projections(&CategorySpec::nc(), 1, 4).unwrap();
    assert_eq!(b.get(&named::identity(1)).unwrap().trace(), Scalar::int(3));
    // equivalent projections (one through-block each) need not be orthogonal
    let b = minimal_projections(&CategorySpec::nc(), 2, 4).unwrap();
    let full = b.get(&Partition::from_labels(2, 2, &[0, 0, 0, 0])).unwrap();
    let side = b.get(&Partition::from_labels(2, 2, &[0, 1, 0, 2])).unwrap();
    assert!(!full.mul(side).is_zero());
    let b2 = minimal_projections(&CategorySpec::nc2(), 2, 4).unwrap();
    assert_eq!(b2.minimal.len(), 2);
    assert!(b2.minimal[0].1.mul(&b2.minimal[1].1).is_zero());
    let all = CategorySpec::all();
    assert!(matches!(
        minimal_projections(&all, 2, 4),
        Err(crate::Error::NotNonCrossing(_))
    ));
}

#[test]
fn partition_expansion_recovers_the_operator() {
    let nc = CategorySpec::nc();
    let p = p_identity_projection(&nc, 1, 4).unwrap();
    let terms = partition_expansion(&p, &nc, 1, 1, 4).unwrap();
    let mut sum = Matrix::zeros(4, 4);
    for (r, c) in &terms {
        sum = sum.add(&crate::tensorrep::t_p(r, 4).unwrap().to_matrix().scale(c));
    }
    assert_eq!(sum, p);
    let off = Matrix::from_fn(4, 4, |i, j| {
        if i == 0 && j == 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    assert!(matches!(
        partition_expansion(&off, &nc, 1, 1, 4),
        Err(crate::Error::InconsistentSystem(_))
    ));
}

fn check_decomposition(cat: &CategorySpec, size: u32, k: usize) {
    let orthogonal = cat.name() == "NC2";
    let dims = irrep_dims(size as i64, 2 * k, orthogonal);
    let ps = fusion_decomposition(cat, size, k).unwrap();
    let pp = tensor_square(&p_identity_projection(cat, k, size).unwrap());
    let mut total = Matrix::zeros(pp.rows(), pp.cols());
    for (i, f) in ps.iter().enumerate() {
        assert!(is_projection(&f.operator), "n = {}", f.n);
        assert_eq!(
            f.trace,
            Scalar::int(dims[f.n]),
            "trace of P_{}^{{{k},{k}}} at N = {size}",
            f.n
        );
        for g in &ps[i + 1..] {
            assert!(
                f.operator.mul(&g.operator).is_zero(),
                "P_{} P_{} ≠ 0",
                f.n,
                g.n
            );
        }
        total = total.add(&f.operator);
    }
    assert_eq!(total, pp, "{} k = {k} N = {size}", cat.name());
}

#[test]
fn fusion_projections_are_complete_k1() {
    for size in [4, 5] {
        check_decomposition(&CategorySpec::nc(), size, 1);
        check_decomposition(&CategorySpec::nc2(), size, 1);
    }
    let traces: Vec<Scalar> = (0..=2)
        .map(|n| fusion_projection(4, 1, n).unwrap().trace)
        .collect();
    let sum = traces.iter().fold(Scalar::zero(), |a, b| &a + b);
    assert_eq!(sum, Scalar::int(9));
}

#[test]
fn fusion_projections_are_complete_k2() {
    check_decomposition(&CategorySpec::nc(), 4, 2);
    check_decomposition(&CategorySpec::nc2(), 4, 2);
}

#[test]
fn chain_construction_is_the_filtration() {
    // The chain range is P_n^{k,k} for n ≤ 1 and Σ_{m ≤ n} P_m^{k,k} above.
    for k in 1..=2 {
        let ps = fusion_decomposition(&CategorySpec::nc(), 4, k).unwrap();
        let mut below = Matrix::zeros(ps[0].operator.rows(), ps[0].operator.cols());
        for f in &ps {
            below = below.add(&f.operator);
            let chain = fusion_range_from_chain(&CategorySpec::nc(), 4, k, f.n).unwrap();
            let expected = if f.n <= 1 { &f.operator } else { &below };
            assert_eq!(chain, *expected, "k = {k} n = {}", f.n);
            assert_eq!(chain == f.operator, f.n <= 1, "k = {k} n = {}", f.n);
        }
    }
    let nc2 = CategorySpec::nc2();
    for (n, same) in [(0, true), (2, true), (4, false)] {
        let a = fusion_projection_in(&nc2, 4, 2, n).unwrap().operator;
        let b = fusion_range_from_chain(&nc2, 4, 2, n).unwrap();
        assert_eq!(a == b, same, "NC2 n = {n}");
        assert_eq!(b.mul(&a), a);
    }
}

#[test]
fn fusion_preconditions() {
    assert!(matches!(
        fusion_projection(4, 1, 3),
        Err(crate::Error::OutOfRange(_))
    ));
    assert!(matches!(
        fusion_projection_in(&CategorySpec::nc2(), 4, 2, 1),
        Err(crate::Error::OutOfRange(_))
    ));
    assert!(matches!(
        fusion_projection(4, 5, 2),
        Err(crate::Error::BoundExceeded(_))
    ));
}

#[test]
fn witness_index_recipe() {
    assert_eq!(witness_indices(2, 1), (vec![1, 2], vec![2, 3]));
    assert_eq!(witness_indices(3, 1), (vec![1, 2, 1], vec![1, 3, 2]));
    assert_eq!(witness_indices(4, 1), (vec![1, 2, 1, 2], vec![2, 3, 1, 3]));
}

fn fusion_norms(w: &Witness) -> Vec<Scalar> {
    fusion_decomposition(&CategorySpec::nc(), w.size, w.k)
        .unwrap()
        .iter()
        .map(|f| {
            let v = f.operator.mul_vec(&w.eta);
            crate::exactmath::dot(&v, &v)
        })
        .collect()
}

#[test]
fn witness_odd_case_values() {
    let w = witness(4, 2, 3).unwrap();
    assert_eq!(w.c1, Scalar::frac(1, 2));
    assert_eq!(w.c2, Scalar::zero());
    assert_eq!(w.verdict, Verdict::Neither);
    // c₁ = l − (l+1)/N with l = 1
    for size in [4u32, 5] {
        let w = witness(size, 2, 3).unwrap();
        assert_eq!(w.c1, &Scalar::one() - &Scalar::frac(2, size as i64));
        assert_eq!(w.c2, Scalar::zero());
    }
}

#[test]
fn a_vectors_leave_the_top_component() {
    // A_𝐢 = e_𝐢 − ẽ_𝐢 is not orthogonal to 𝟙⊗e_N, so it is not in H_2.
    let p = p_identity_projection(&CategorySpec::nc(), 2, 4).unwrap();
    let a = vector_a(&[1, 2], 4).unwrap();
    assert_ne!(p.mul_vec(&a), a);
    let families = highest_weight_span_families(2, 4).unwrap();
    assert!(families
        .iter()
        .any(|f| !crate::exactmath::dot(f, &a).is_zero()));
    for k in [1] {
        let p1 = p_identity_projection(&CategorySpec::nc(), k, 4).unwrap();
        let a1 = vector_a(&[1], 4).unwrap();
        assert_eq!(p1.mul_vec(&a1), a1);
    }
}

#[test]
fn witness_eta_spreads_over_lower_components() {
    // Frozen component norms ‖P_m η‖², m = 0..4, at N = 4, k = 2.
    let w = witness(4, 2, 3).unwrap();
    assert!(!w.member);
    assert!(!w.is_sound());
    let f = Scalar::frac;
    assert_eq!(
        fusion_norms(&w),
        vec![
            f(5, 2304),
            f(33, 2560),
            f(77, 2304),
            f(7, 160),
            Scalar::zero()
        ]
    );
    assert_eq!(w.eta_pairings, (f(59, 144), f(-1, 144)));
    // ⟨η, A_𝐢⊗A_𝐢′⟩ = ⟨ξ, (P⊗P)(A_𝐢⊗A_𝐢′)⟩ with P built from the spanning families
    let pf = Matrix::identity(16).sub(&crate::exactmath::span_projection(
        &highest_weight_span_families(2, 4).unwrap(),
        16,
    ));
    let (i, ip) = &w.indices;
    let fwd = tensor_vectors(
        &pf.mul_vec(&vector_a(i, 4).unwrap()),
        &pf.mul_vec(&vector_a(ip, 4).unwrap()),
    );
    assert_eq!(crate::exactmath::dot(&w.xi, &fwd), w.eta_pairings.0);

    let w = witness(4, 2, 2).unwrap();
    assert!(!w.member);
    assert_eq!(
        fusion_norms(&w),
        vec![
            f(5, 144),
            f(5, 32),
            f(35, 144),
            Scalar::zero(),
            Scalar::zero()
        ]
    );
    let w = witness(4, 2, 4).unwrap();
    assert!(!w.member);
    assert!(fusion_norms(&w).iter().all(|s| !s.is_zero()));
}

#[test]
fn witness_verdicts() {
    for (size, n) in [(4, 2), (4, 3), (4, 4), (5, 4), (5, 2), (5, 3)] {
        let w = witness(size, 2, n).unwrap();
        assert_eq!(w.verdict, Verdict::Neither, "N = {size}, n = {n}");
        assert!(w.projected_is_witness(), "N = {size}, n = {n}");
        let p = fusion_projection(size, 2, n).unwrap().operator;
        assert_eq!(p.mul_vec(&w.projected), w.projected);
    }
    let w = witness_in(&CategorySpec::nc2(), 4, 2, 2).unwrap();
    assert_eq!(w.verdict, Verdict::Neither);
    assert!(w.projected_is_witness());
    assert!(matches!(
        witness(3, 2, 3),
        Err(crate::Error::Precondition(_))
    ));
    assert!(matches!(
        witness(4, 2, 1),
        Err(crate::Error::Precondition(_))
    ));
}

#[test]
fn verdicts() {
    let x = vector_a(&[1, 2], 4).unwrap();
    let y = basis_vector(&[3, 1], 4).unwrap();
    let xx = tensor_vectors(&x, &x);
    assert_eq!(eigenspace_verdict(&[xx], 4, 2).unwrap(), Verdict::Symmetric);
    let anti: Vec<Scalar> = tensor_vectors(&x, &y)
        .iter()
        .zip(&tensor_vectors(&y, &x))
        .map(|(a, b)| a - b)
        .collect();
    assert_eq!(
        eigenspace_verdict(&[anti.clone()], 4, 2).unwrap(),
        Verdict::Antisymmetric
    );
    assert_eq!(
        eigenspace_verdict(&[tensor_vectors(&x, &y)], 4, 2).unwrap(),
        Verdict::Neither
    );
    assert!(eigenspace_verdict(&[x], 4, 2).is_err());
    // a basis of Ran P_3^{2,2}
    let p = fusion_projection(4, 2, 3).unwrap().operator;
    let cols: Vec<_> = p.column_basis().into_iter().map(|j| p.column(j)).collect();
    assert_eq!(eigenspace_verdict(&cols, 4, 2).unwrap(), Verdict::Neither);
    let sigma = flip_sigma(4, 2).unwrap();
    assert_eq!(
        sigma
            .apply(&anti)
            .unwrap()
            .iter()
            .zip(&anti)
            .filter(|(a, b)| *a != *b)
            .count()
            > 0,
        true
    );
}

#[test]
fn first_column_algebra_is_commutative() {
    let a = first_column_algebra(4).unwrap();
    assert_eq!(a.dim, 4);
    assert_eq!(a.multiplicity, 1);
    assert!(a.has_unit());
    assert!(a.is_commutative());
    assert!(a.is_associative());
}

#[test]
fn trivial_component_is_gram_consistent() {
    // the B₀ coordinate of (f⊗h)(f⊗h') is a fixed multiple of ⟨h, h'⟩
    let a = first_column_algebra(4).unwrap();
    let nc = CategorySpec::nc();
    let p1 = p_identity_projection(&nc, 1, 4).unwrap();
    let hs: Vec<_> = p1
        .column_basis()
        .into_iter()
        .map(|j| p1.column(j))
        .collect();
    let mut ratio: Option<Scalar> = None;
    for x in 1..a.dim {
        for y in 1..a.dim {
            let g = crate::exactmath::dot(&hs[x - 1], &hs[y - 1]);
            let b0 = &a.structure[x][y][0];
            let r = b0 / &g;
            assert!(!b0.is_zero());
            match &ratio {
                None => ratio = Some(r),
                Some(r0) => assert_eq!(*r0, r),
            }
        }
    }
}
