use proptest::prelude::*;
use rweyl::rootsys::{
    build_root_system, simple_types_up_to, weight_convert, weyl_apply, weyl_dimension, Coords, RootSystem, TypeLetter,
    Weight, WeylWord,
};
use rweyl::Rat;

fn small_types() -> Vec<RootSystem> {
    simple_types_up_to(4).into_iter().map(|ct| RootSystem::of_type(ct).unwrap()).collect()
}

fn system_and_weight() -> impl Strategy<Value = (RootSystem, Vec<i64>)> {
    let systems = small_types();
    (0..systems.len()).prop_flat_map(move |k| {
        let rs = systems[k].clone();
        let r = rs.rank();
        (Just(rs), prop::collection::vec(-6i64..=6, r))
    })
}

fn system_weight_word() -> impl Strategy<Value = (RootSystem, Vec<i64>, Vec<usize>)> {
    system_and_weight().prop_flat_map(|(rs, w)| {
        let r = rs.rank();
        (Just(rs), Just(w), prop::collection::vec(0..r, 0..12))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn word_then_reverse_is_identity((rs, w, word) in system_weight_word()) {
        let word = WeylWord(word);
        let x = Weight::from_fw_int(&rs, &w);
        let y = weyl_apply(&rs, &word, &x).unwrap();
        let back = weyl_apply(&rs, &word.inverse(), &y).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn reflections_are_orthogonal((rs, w, word) in system_weight_word(), v in prop::collection::vec(-4i64..=4, 4)) {
        let word = WeylWord(word);
        let v: Vec<i64> = v.into_iter().take(rs.rank()).collect();
        let x = Weight::from_fw_int(&rs, &w);
        let y = Weight::from_fw_int(&rs, &v);
        let wx = weyl_apply(&rs, &word, &x).unwrap();
        let wy = weyl_apply(&rs, &word, &y).unwrap();
        prop_assert_eq!(rs.inner_fw(wx.fw(), wy.fw()), rs.inner_fw(x.fw(), y.fw()));
    }

    #[test]
    fn simple_reflection_formula((rs, w) in system_and_weight(), i in 0usize..4) {
        let i = i % rs.rank();
        let x = Weight::from_fw_int(&rs, &w);
        let y = weyl_apply(&rs, &WeylWord(vec![i]), &x).unwrap();
        // s_i(x) = x - <x, alpha_i^vee> alpha_i, and <x, alpha_i^vee> is the i-th fw coordinate
        let mut expect = x.root().to_vec();
        expect[i] = &expect[i] - &Rat::from_int(w[i]);
        prop_assert_eq!(y.root(), &expect[..]);
    }

    #[test]
    fn conversion_round_trips((rs, w) in system_and_weight(), den in 1i64..5) {
        let fw: Vec<Rat> = w.iter().map(|&c| Rat::new(c, den)).collect();
        let x = weight_convert(&rs, Coords::Fundamental(fw.clone()));
        let y = weight_convert(&rs, Coords::SimpleRoot(x.root().to_vec()));
        prop_assert_eq!(y.fw(), &fw[..]);
        prop_assert_eq!(y.in_q(), x.in_q());
    }

    #[test]
    fn lattice_membership_is_additive((rs, a) in system_and_weight(), b in prop::collection::vec(-6i64..=6, 4), i in 0usize..4) {
        let b: Vec<i64> = b.into_iter().take(rs.rank()).collect();
        let x = Weight::from_fw_int(&rs, &a);
        let y = Weight::from_fw_int(&rs, &b);
        if x.in_q() && y.in_q() {
            prop_assert!(x.add(&y).in_q());
        }
        let alpha = Weight::from_fw_int(&rs, &rs.simple_root_fw(i % rs.rank()));
        prop_assert_eq!(x.add(&alpha).in_q(), x.in_q());
    }

    #[test]
    fn weyl_dimension_is_one_only_at_zero((rs, w) in system_and_weight()) {
        let lambda: Vec<i64> = w.iter().map(|c| c.abs() % 4).collect();
        let d = weyl_dimension(&rs, &lambda).unwrap();
        prop_assert!(d >= 1);
        prop_assert_eq!(d == 1, lambda.iter().all(|&c| c == 0));
    }
}

/// Number of classes of `P/Q`, by sorting the fundamental-weight box
/// `[0, d)^r` into cosets of `Q`.
fn index_of_root_lattice(rs: &RootSystem, d: i64) -> usize {
    let r = rs.rank();
    let mut reps: Vec<Weight> = Vec::new();
    let mut c = vec![0i64; r];
    loop {
        let x = Weight::from_fw_int(rs, &c);
        if !reps.iter().any(|y| x.add(&y.neg()).in_q()) {
            reps.push(x);
        }
        let mut i = 0;
        loop {
            if i == r {
                return reps.len();
            }
            c[i] += 1;
            if c[i] < d {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn root_lattice_index_is_the_cartan_determinant() {
    for ct in simple_types_up_to(6) {
        let rs = RootSystem::of_type(ct).unwrap();
        let det = rs.cartan_determinant();
        // d * P lies in Q, so the box [0, d)^r meets every coset
        assert_eq!(index_of_root_lattice(&rs, det) as i64, det, "{}", ct);
    }
}

#[test]
fn weyl_orders_by_orbit_enumeration() {
    for ct in simple_types_up_to(6) {
        let rs = RootSystem::of_type(ct).unwrap();
        let order = rs.weyl_orbit_size(&rs.rho(), 100_000).unwrap();
        assert_eq!(order as u128, ct.weyl_order(), "{}", ct);
        assert_eq!(rs.positive_roots().len(), ct.positive_root_count(), "{}", ct);
    }
}

#[test]
fn listed_examples() {
    let b2 = build_root_system(TypeLetter::B, 2).unwrap();
    assert_eq!(b2.all_roots().len(), 8);
    let e6 = build_root_system(TypeLetter::E, 6).unwrap();
    assert_eq!(e6.all_roots().len(), 72);
    let a2 = build_root_system(TypeLetter::A, 2).unwrap();
    let w = Weight::from_fw_int(&a2, &[1, 0]);
    assert_eq!(w.root(), &[Rat::new(2, 3), Rat::new(1, 3)]);
    assert!(!w.in_q());
    let flipped = weyl_apply(&a2, &WeylWord(vec![0, 1, 0]), &w).unwrap();
    assert_eq!(flipped, Weight::from_fw_int(&a2, &[0, -1]));
    assert!(build_root_system(TypeLetter::E, 5).is_err());
}
