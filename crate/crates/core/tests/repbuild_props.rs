use proptest::prelude::*;
use rweyl::repbuild::tensor::{pure_tensor, TensorVec};
use rweyl::repbuild::{
    build_module, cartan_project, multiplicity_freudenthal, multiplicity_oracle, tensor_module, DominantCharacter,
    Gen, IrreducibleModule,
};
use rweyl::rootsys::{weyl_dimension, RootSystem};
use rweyl::Rat;

fn rs(t: &str) -> RootSystem {
    RootSystem::of_type(t.parse().unwrap()).unwrap()
}

/// A small type and a dominant weight of dimension at most 300.
fn small_module() -> impl Strategy<Value = (RootSystem, Vec<i64>)> {
    let types = ["A1", "A2", "B2", "G2", "A3", "B3", "C3"];
    (0..types.len(), prop::collection::vec(0i64..=3, 3))
        .prop_map(move |(k, c)| {
            let rs = rs(types[k]);
            let lambda: Vec<i64> = c.into_iter().take(rs.rank()).collect();
            (rs, lambda)
        })
        .prop_filter("dimension cap", |(rs, l)| weyl_dimension(rs, l).unwrap() <= 300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn multiplicities_sum_to_weyl_dimension((rs, l) in small_module()) {
        let ch = DominantCharacter::new(&rs, &l).unwrap();
        prop_assert_eq!(ch.dimension(&rs), weyl_dimension(&rs, &l).unwrap());
    }

    #[test]
    fn multiplicities_are_weyl_invariant((rs, l) in small_module(), i in 0usize..3) {
        let i = i % rs.rank();
        let ch = DominantCharacter::new(&rs, &l).unwrap();
        for (mu, m) in ch.all_weights(&rs) {
            let mut nu = mu.clone();
            rs.reflect_fw(i, &mut nu);
            prop_assert_eq!(multiplicity_freudenthal(&rs, &l, &nu).unwrap(), m);
        }
    }

    #[test]
    fn built_modules_match_their_characters((rs, l) in small_module()) {
        let m = build_module(&rs, &l, 300).unwrap();
        prop_assert_eq!(m.dim() as u128, weyl_dimension(&rs, &l).unwrap());
        for s in m.spaces() {
            prop_assert_eq!(s.dim as u64, multiplicity_freudenthal(&rs, &l, &s.weight).unwrap());
        }
    }

    #[test]
    fn e_and_f_are_adjoint_for_the_form((rs, l) in small_module(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), i in 0usize..3) {
        let m = build_module(&rs, &l, 300).unwrap();
        let i = i % rs.rank();
        let u = m.from_sparse(&[(a.index(m.dim()), Rat::one())]);
        let v = m.from_sparse(&[(b.index(m.dim()), Rat::one())]);
        prop_assert_eq!(m.form(&m.apply(Gen::E(i), &u), &v), m.form(&u, &m.apply(Gen::F(i), &v)));
    }
}

fn unit(m: &IrreducibleModule, k: usize) -> Vec<(usize, Rat)> {
    vec![(k % m.dim(), Rat::one())]
}

fn add(a: &TensorVec, b: &TensorVec) -> TensorVec {
    let mut out = a.clone();
    for (k, c) in b {
        let slot = out.entry(*k).or_insert_with(Rat::zero);
        *slot += c.clone();
        if slot.is_zero() {
            out.remove(k);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cartan_projection_is_an_idempotent_module_map(a in 0usize..64, b in 0usize..64, c in 0usize..64, g in 0usize..4) {
        let a2 = rs("A2");
        let m1 = build_module(&a2, &[1, 0], 100).unwrap();
        let m2 = build_module(&a2, &[1, 1], 100).unwrap();
        let t = tensor_module(&m1, &m2, 1000).unwrap();
        let v = add(&pure_tensor(&unit(&m1, a), &unit(&m2, b)), &pure_tensor(&unit(&m1, c), &unit(&m2, a + c)));
        let p = cartan_project(&t, &v).unwrap();
        prop_assert_eq!(cartan_project(&t, &p).unwrap(), p.clone());
        let gen = [Gen::E(0), Gen::E(1), Gen::F(0), Gen::F(1)][g];
        prop_assert_eq!(cartan_project(&t, &t.apply(gen, &v)).unwrap(), t.apply(gen, &p));
    }
}

#[test]
fn clebsch_gordan_for_a2() {
    let a2 = rs("A2");
    let m1 = build_module(&a2, &[1, 0], 100).unwrap();
    let m2 = build_module(&a2, &[0, 1], 100).unwrap();
    let t = tensor_module(&m1, &m2, 100).unwrap();
    assert_eq!(t.dim(), 9);
    // Cartan component V_{(1,1)}: one dimension at each root weight, two at zero
    let ch = DominantCharacter::new(&a2, &[1, 1]).unwrap();
    let mut total = 0;
    for (mu, m) in ch.all_weights(&a2) {
        let n = t.cartan_component_basis(&mu).unwrap().len();
        assert_eq!(n as u64, m, "{:?}", mu);
        total += n;
    }
    assert_eq!(total, 8);
    let top = t.top_vector();
    assert_eq!(cartan_project(&t, &top).unwrap(), top);
    assert!(cartan_project(&t, &TensorVec::new()).unwrap().is_empty());
}

#[test]
fn cartan_product_of_zero_weight_vectors_is_nonzero() {
    let a1 = rs("A1");
    let m = build_module(&a1, &[2], 10).unwrap();
    let t = tensor_module(&m, &m, 100).unwrap();
    let z = m.zero_space().unwrap();
    let u = m.to_sparse(&m.basis_vector(z, 0));
    let p = cartan_project(&t, &pure_tensor(&u, &u)).unwrap();
    assert!(!p.is_empty());
}

#[test]
fn oracle_examples() {
    let a1 = rs("A1");
    let a2 = rs("A2");
    let b2 = rs("B2");
    assert_eq!(multiplicity_oracle(&a2, &[1, 1], &[0, 0]).unwrap(), 2);
    assert_eq!(multiplicity_oracle(&a1, &[4], &[2]).unwrap(), 1);
    assert_eq!(multiplicity_oracle(&b2, &[0, 1], &[0, 0]).unwrap(), 0);
    assert_eq!(multiplicity_freudenthal(&a2, &[1, 0], &[0, 0]).unwrap(), 0);
    let m = build_module(&b2, &[1, 0], 10).unwrap();
    assert_eq!((m.dim(), m.weight_dim(&[0, 0])), (5, 1));
}
