use proptest::prelude::*;
use tripole_core::matching::abelian_matching;
use tripole_core::oracle::{oracle_compare_with, oracle_group};
use tripole_core::*;

fn models() -> Vec<AbelianModel> {
    vec![
        AbelianModel::cyclic(7, 2, 3).unwrap(),
        AbelianModel::cyclic(11, 3, 5).unwrap(),
        AbelianModel::cyclic(9, 8, 2).unwrap(),
        AbelianModel::new(vec![3, 3], vec![vec![0, 1], vec![1, 0]], 2).unwrap(),
        AbelianModel::new(vec![2, 4], vec![vec![1, 0], vec![2, 3]], 2).unwrap(),
        AbelianModel::new(vec![2, 2, 2], vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]], 3).unwrap(),
        AbelianModel::new(vec![5, 5], vec![vec![0, 1], vec![1, 0]], 2).unwrap(),
    ]
}

/// A model index plus three raw elements (reduced mod the group order).
fn config() -> impl Strategy<Value = (usize, u32, u32, u32)> {
    (0..models().len(), any::<u32>(), any::<u32>(), any::<u32>())
}

fn noninvariant(m: &AbelianModel, raw: u32) -> Elem {
    let pool: Vec<Elem> = m.group().elements().filter(|&e| !m.is_invariant(e)).collect();
    pool[raw as usize % pool.len()]
}

fn elem(m: &AbelianModel, raw: u32) -> Elem {
    Elem(raw % m.group().order())
}

/// `#{(j,k,m) : σ^j θ₁ + σ^k θ₂ + σ^m χ = 0}` straight from the shift maps.
fn triple_count(m: &AbelianModel, t1: Elem, t2: Elem, chi: Elem) -> u32 {
    let g = m.group();
    let p = m.p() as i64;
    let mut n = 0;
    for j in 0..p {
        for k in 0..p {
            for l in 0..p {
                let s = g.add(g.add(m.shift(t1, j), m.shift(t2, k)), m.shift(chi, l));
                n += (s == g.zero()) as u32;
            }
        }
    }
    n
}

proptest! {
    #[test]
    fn shift_is_additive((i, a, _, _) in config(), j in -20i64..20, k in -20i64..20) {
        let m = &models()[i];
        let e = elem(m, a);
        prop_assert_eq!(m.shift(m.shift(e, j), k), m.shift(e, j + k));
        prop_assert_eq!(m.shift(e, m.p() as i64), e);
    }

    #[test]
    fn dual_is_an_involution((i, a, _, _) in config()) {
        let model: RepModel = models()[i].clone().into();
        let m = &models()[i];
        let x = CuspidalLabel::abelian(elem(m, a));
        prop_assert_eq!(model.dual(&model.dual(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn twists_compose((i, a, b, c) in config()) {
        let m = &models()[i];
        let model: RepModel = m.clone().into();
        let (x, u, v) = (elem(m, a), elem(m, b), elem(m, c));
        let lab = CuspidalLabel::abelian;
        let lhs = model.twist(&model.twist(&lab(x), &lab(u)).unwrap(), &lab(v)).unwrap();
        let rhs = model.twist(&lab(x), &lab(m.group().add(u, v))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matching_is_a_bounded_partial_permutation((i, a, b, c) in config()) {
        let m = &models()[i];
        let mm = abelian_matching(m, noninvariant(m, a), noninvariant(m, b), elem(m, c)).unwrap();
        prop_assert!(mm.is_partial_permutation());
        prop_assert!(mm.ell() <= m.p());
    }

    #[test]
    fn simultaneous_shift_count((i, a, b, c) in config()) {
        let m = &models()[i];
        let (t1, t2, chi) = (noninvariant(m, a), noninvariant(m, b), elem(m, c));
        let ell = abelian_matching(m, t1, t2, chi).unwrap().ell();
        prop_assert_eq!(triple_count(m, t1, t2, chi), m.p() * ell);
    }

    #[test]
    fn factor_poles_sum_to_ell((i, a, b, c) in config()) {
        let m = &models()[i];
        let model: RepModel = m.clone().into();
        let lab = CuspidalLabel::abelian;
        let pi1 = CuspidalDatumF::induced_from(&model, lab(noninvariant(m, a))).unwrap();
        let pi2 = CuspidalDatumF::induced_from(&model, lab(noninvariant(m, b))).unwrap();
        let chi = lab(elem(m, c));
        let factors = factorize(&model, &pi1, &pi2, &chi).unwrap();
        prop_assert_eq!(factors.len() as u32, m.p() * m.p());
        let total: u32 = factors.iter().map(|f| f.pole_order).sum();
        prop_assert_eq!(total, triple_pole_order(&model, &pi1, &pi2, &chi).unwrap());
    }

    #[test]
    fn p2_double_pole_forces_invariant_chi((i, a, b, c) in config()) {
        let m = &models()[i];
        prop_assume!(m.p() == 2);
        let chi = elem(m, c);
        let ell = abelian_matching(m, noninvariant(m, a), noninvariant(m, b), chi).unwrap().ell();
        prop_assert!(ell < 2 || m.is_invariant(chi));
    }

    #[test]
    fn base_change_of_induction_is_the_orbit((i, a, _, _) in config()) {
        let m = &models()[i];
        let model: RepModel = m.clone().into();
        let chi = elem(m, a);
        let ai = automorphic_induction(&model, &CuspidalLabel::abelian(chi)).unwrap();
        prop_assert_eq!(ai.is_cuspidal(), !m.is_invariant(chi));
        let bc = ai.base_change(&model).unwrap();
        let mut got: Vec<Elem> = bc.constituents().iter().map(|l| l.as_abelian().unwrap()).collect();
        let mut want = m.orbit(chi);
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn oracle_multiplicity_equals_ell((i, a, b, c) in config()) {
        let m = &models()[i];
        let g = oracle_group(m).unwrap();
        let r = oracle_compare_with(m, &g, noninvariant(m, a), noninvariant(m, b), elem(m, c), false).unwrap();
        prop_assert_eq!(r.equal, Some(true));
    }

    #[test]
    fn generic_degree_mismatch_has_no_pole(d1 in 1u32..6, d2 in 1u32..6, p in prop::sample::select(vec![2u32, 3, 5])) {
        prop_assume!(d1 != d2);
        let decl = RelationDeclaration {
            atoms: vec![
                Atom { name: "a".into(), degree: d1, noninvariant: true },
                Atom { name: "b".into(), degree: d2, noninvariant: true },
            ],
            theta1: "a".into(),
            theta2: "b".into(),
            chi_invariant: false,
            relations: vec![],
        };
        let model: RepModel = GenericRelationModel::new(CyclicData::new(p).unwrap(), decl).unwrap().into();
        let pi1 = CuspidalDatumF::induced_from(&model, model.atom("a", 0).unwrap()).unwrap();
        let pi2 = CuspidalDatumF::induced_from(&model, model.atom("b", 0).unwrap()).unwrap();
        let chi = CuspidalLabel::generic_chi(0);
        prop_assert_eq!(dispatch_case(&pi1, &pi2), DispatchCase::DegreeMismatch);
        prop_assert_eq!(triple_pole_order(&model, &pi1, &pi2, &chi).unwrap(), 0);
    }
}
