use epkit::ep_oracle::{self, CharacterizationId, Facts};
use epkit::gen_inverse::{self, InverseKind};
use epkit::*;
use proptest::prelude::*;

fn q(k: usize) -> Ring<RationalMatrices> {
    Ring::new(MatrixRing::new(k, RationalScalars::new(), Involution::Transpose).unwrap())
}

fn qi(k: usize) -> Ring<GaussianMatrices> {
    Ring::new(MatrixRing::new(k, GaussianScalars::new(), Involution::ConjugateTranspose).unwrap())
}

fn gf3() -> Ring<ModularMatrices> {
    Ring::new(MatrixRing::new(3, Modular::new(3).unwrap(), Involution::Transpose).unwrap())
}

fn build<S: Scalars>(ring: &Ring<MatrixRing<S>>, re: &[i64], im: &[i64]) -> Matrix<S::Value> {
    let s = ring.scalars();
    let k = ring.dim();
    let i = if s.conj_is_trivial() { s.zero() } else { s.parse("i").unwrap() };
    let data = (0..k * k).map(|n| s.add(&s.from_i64(re[n]), &s.mul(&s.from_i64(im[n]), &i))).collect();
    Matrix::from_vec(k, k, data)
}

fn entries(k: usize) -> impl Strategy<Value = Vec<i64>> {
    // a third of the entries are zero so that singular matrices are common
    prop::collection::vec(prop_oneof![Just(0i64), -3i64..=3], k * k)
}

fn rank_one_biased(k: usize) -> impl Strategy<Value = Vec<i64>> {
    prop_oneof![
        entries(k),
        (prop::collection::vec(-3i64..=3, k), prop::collection::vec(-3i64..=3, k))
            .prop_map(move |(u, v)| (0..k * k).map(|n| u[n / k] * v[n % k]).collect()),
    ]
}

fn involution_laws<R: StarRing>(ring: &Ring<R>, a: &R::Elem, b: &R::Elem) -> Result<(), TestCaseError> {
    prop_assert_eq!(&ring.star(&ring.star(a)), a);
    prop_assert_eq!(ring.star(&ring.add(a, b)), ring.add(&ring.star(a), &ring.star(b)));
    prop_assert_eq!(ring.star(&ring.mul(a, b)), ring.mul(&ring.star(b), &ring.star(a)));
    prop_assert_eq!(ring.star(&ring.one()), ring.one());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involution_laws_hold(a in entries(3), b in entries(3), ai in entries(2), bi in entries(2), ci in entries(2), di in entries(2)) {
        let r = q(3);
        involution_laws(&r, &build(&r, &a, &[0; 9]), &build(&r, &b, &[0; 9]))?;
        let g = qi(2);
        involution_laws(&g, &build(&g, &ai, &bi), &build(&g, &ci, &di))?;
        let f = gf3();
        involution_laws(&f, &build(&f, &a, &[0; 9]), &build(&f, &b, &[0; 9]))?;
        let z = Ring::new(ModularIntegers::new(12).unwrap());
        let (x, y) = (a[0].rem_euclid(12) as u64, b[0].rem_euclid(12) as u64);
        involution_laws(&z, &x, &y)?;
    }

    #[test]
    fn moore_penrose_always_exists_over_q(a in rank_one_biased(3)) {
        let r = q(3);
        let a = build(&r, &a, &[0; 9]);
        let m = gen_inverse::moore_penrose(&r, &a).unwrap().expect("every rational matrix has a pseudoinverse");
        prop_assert!(gen_inverse::is_inverse(&r, &a, &m, InverseKind::MoorePenrose));
        if let Some(inv) = r.unit_inverse(&a) {
            prop_assert_eq!(m, inv);
        }
    }

    #[test]
    fn gaussian_inverses_certify(re in rank_one_biased(2), im in entries(2)) {
        let g = qi(2);
        let a = build(&g, &re, &im);
        let bundle = gen_inverse::inverse_bundle(&g, &a).unwrap();
        prop_assert!(bundle.mp.is_some());
        for (kind, certs) in &bundle.certificates {
            prop_assert!(certs.iter().all(|c| c.holds), "{} fails", kind);
        }
    }

    #[test]
    fn group_inverse_iff_rank_is_stable(a in rank_one_biased(3)) {
        let r = q(3);
        let a = build(&r, &a, &[0; 9]);
        let lin = r.linear().unwrap();
        let stable = lin.rank(&a) == lin.rank(&r.mul(&a, &a));
        prop_assert_eq!(gen_inverse::group_inverse(&r, &a).unwrap().is_some(), stable);
        prop_assert_eq!(gen_inverse::core_inverse(&r, &a).unwrap().is_some(), stable);
        prop_assert_eq!(gen_inverse::dual_core_inverse(&r, &a).unwrap().is_some(), stable);
    }

    #[test]
    fn characterizations_agree_on_rational_matrices(a in rank_one_biased(2)) {
        let r = q(2);
        let a = build(&r, &a, &[0; 4]);
        let f = Facts::new(&r, &a).unwrap();
        let v = ep_oracle::ep_check(&r, &f, &CharacterizationId::all(3)).unwrap();
        let bad: Vec<String> = v.disagreements().map(|(id, _)| id.to_string()).collect();
        prop_assert!(bad.is_empty(), "{} disagrees on {}", bad.join(","), r.render(&a));
    }

    #[test]
    fn ep_is_symmetric_under_star(a in rank_one_biased(3)) {
        let r = q(3);
        let a = build(&r, &a, &[0; 9]);
        prop_assert_eq!(ep_oracle::ep_baseline(&r, &a).unwrap(), ep_oracle::ep_baseline(&r, &r.star(&a)).unwrap());
    }

    #[test]
    fn hermitian_matrices_are_ep(a in entries(3)) {
        let r = q(3);
        let m = build(&r, &a, &[0; 9]);
        let h = r.add(&m, &r.star(&m));
        prop_assert!(ep_oracle::ep_baseline(&r, &h).unwrap());
        let mp = gen_inverse::moore_penrose(&r, &h).unwrap();
        prop_assert_eq!(mp, gen_inverse::core_inverse(&r, &h).unwrap());
    }

    #[test]
    fn rendered_elements_reparse(re in entries(2), im in entries(2)) {
        let g = qi(2);
        let a = build(&g, &re, &im);
        let m = gen_inverse::moore_penrose(&g, &a).unwrap().unwrap();
        prop_assert_eq!(g.parse_element(&g.render(&m)).unwrap(), m);
    }
}
