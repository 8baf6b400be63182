use std::collections::{HashMap, HashSet};

use proptest::prelude::*;
use rweyl::invariants::{adjoint_check, compute_report, l_invariant_basis, Classification};
use rweyl::linalg;
use rweyl::realform::{catalog_entry, restricted_w0_lift, Catalog, RealFormEntry};
use rweyl::repbuild::build_module;
use rweyl::rootsys::{normalize_type_name, weyl_dimension, Weight};
use rweyl::signtable::{predict_split_sign, split_entries, SplitSignTable};
use rweyl::Rat;

fn entries() -> Vec<RealFormEntry> {
    let c = Catalog::default();
    c.records().iter().map(|r| c.entry(&r.label).unwrap()).collect()
}

fn neg(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| -x).collect()
}

fn int_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&c| Rat::from_int(c)).collect()
}

#[test]
fn restricted_roots_are_closed_with_invariant_multiplicities() {
    for e in entries() {
        let rs = &e.rs;
        let r = &e.restricted;
        let mult: HashMap<Vec<Rat>, u32> =
            r.roots.iter().flat_map(|(v, m)| [(v.clone(), *m), (neg(v), *m)]).collect();
        for (beta, _) in &r.roots {
            let bb = rs.inner_root(beta, beta);
            for (gamma, m) in &mult {
                let c = Rat::from_int(2) * rs.inner_root(gamma, beta) / &bb;
                assert!(c.is_integer(), "{}: non-integral pairing", e.label);
                let img: Vec<Rat> = gamma.iter().zip(beta).map(|(g, x)| g - &(&c * x)).collect();
                assert_eq!(mult.get(&img), Some(m), "{}", e.label);
            }
        }
        let total: u32 = r.roots.iter().map(|(_, m)| 2 * m).sum();
        assert_eq!(total as usize + r.delta0.len(), rs.all_roots().len(), "{}", e.label);
    }
}

#[test]
fn known_restricted_types() {
    let cases = [
        ("sl(4,R)", "A3"),
        ("su(1,3)", "BC1"),
        ("su(2,3)", "BC2"),
        ("su(3,3)", "C3"),
        ("so(2,7)", "B2"),
        ("so(3,3)", "D3"),
        ("so(4,4)", "D4"),
        ("sp(1,3)", "BC1"),
        ("sp(2,3)", "BC2"),
        ("EIV", "A2"),
    ];
    for (label, ty) in cases {
        let e = catalog_entry(label).unwrap();
        assert_eq!(normalize_type_name(&e.restricted.type_name), normalize_type_name(ty), "{}", label);
    }
    let e = catalog_entry("so(2,9)").unwrap();
    assert_eq!(e.restricted.multiplicities, vec![7, 1]);
    assert_eq!(e.restricted.delta0.len(), 18);
    assert!(catalog_entry("su(3)-compact").unwrap().restricted.roots.is_empty());
}

#[test]
fn lifts_are_involutive_on_a_and_permute_delta0() {
    for e in entries().into_iter().filter(|e| !e.is_compact()) {
        let rs = &e.rs;
        let w = restricted_w0_lift(&e).unwrap();
        let m = w.root_matrix(rs).unwrap();
        let delta0: HashSet<Vec<Rat>> = e.restricted.delta0.iter().map(|v| int_vec(v)).collect();
        for d in &delta0 {
            assert!(delta0.contains(&linalg::mat_vec(&m, d)), "{}: lift moves a root of delta0 out", e.label);
        }
        for (beta, _) in &e.restricted.roots {
            // pick a root over beta and push it through the lift
            let over = rs
                .positive_roots()
                .iter()
                .map(|r| int_vec(r))
                .find(|r| e.restrict(r) == *beta)
                .unwrap();
            let image = e.restrict(&linalg::mat_vec(&m, &over));
            assert!(e.restricted.roots.iter().any(|(g, _)| neg(g) == image), "{}: chamber not reversed", e.label);
            let twice = e.restrict(&linalg::mat_vec(&m, &linalg::mat_vec(&m, &over)));
            assert_eq!(&twice, beta, "{}", e.label);
        }
    }
}

#[test]
fn adjoint_modules_carry_the_restricted_w0() {
    for e in entries().into_iter().filter(|e| !e.is_compact()) {
        adjoint_check(&e, 100).unwrap_or_else(|err| panic!("{}: {}", e.label, err));
    }
}

fn split_weights(e: &RealFormEntry, max_coord: i64, dim_cap: u128) -> Vec<Vec<i64>> {
    let r = e.rs.rank();
    let mut out = Vec::new();
    let mut c = vec![0i64; r];
    loop {
        if Weight::from_fw_int(&e.rs, &c).in_q() && weyl_dimension(&e.rs, &c).unwrap() <= dim_cap {
            out.push(c.clone());
        }
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            c[i] += 1;
            if c[i] <= max_coord {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn split_zero_weight_space_is_all_invariant() {
    for e in split_entries(3).unwrap() {
        for w in split_weights(&e, 2, 500) {
            let m = build_module(&e.rs, &w, 500).unwrap();
            let (dim_v0, basis) = l_invariant_basis(&e, &m);
            assert_eq!(basis.len(), dim_v0, "{} {:?}", e.label, w);
            assert_eq!(linalg::rank(&basis), dim_v0, "{} {:?}", e.label, w);
        }
    }
}

#[test]
fn sign_table_predictions_match_the_pipeline() {
    let table = SplitSignTable::default_table().unwrap();
    let mut decided = 0;
    for e in split_entries(3).unwrap() {
        let (max_coord, cap) = if e.rs.rank() == 1 { (120, 3000) } else { (40, 3000) };
        for w in split_weights(&e, max_coord, cap) {
            let Some(pred) = predict_split_sign(&e, &Weight::from_fw_int(&e.rs, &w), &table).unwrap() else {
                continue;
            };
            let r = compute_report(&e, &w, cap).unwrap();
            assert_eq!(pred, r.classification, "{} {:?}", e.label, w);
            decided += 1;
        }
    }
    assert!(decided > 50);
}

#[test]
fn rank_one_signs_alternate() {
    let e = catalog_entry("sl(2,R)").unwrap();
    for k in 1..=6i64 {
        let r = compute_report(&e, &[2 * k], 100).unwrap();
        let want = if k % 2 == 1 { Classification::MinusId } else { Classification::PlusId };
        assert_eq!(r.classification, want);
        assert_eq!(r.w0_matrix, vec![vec![Rat::from_int(if k % 2 == 1 { -1 } else { 1 })]]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn w0_matrices_are_involutions(k in 0usize..6, c in prop::collection::vec(0i64..=2, 3)) {
        let label = ["sl(3,R)", "so(2,3)", "su(1,2)", "so(2,5)", "sp(1,2)", "sl(4,R)"][k];
        let e = catalog_entry(label).unwrap();
        let w: Vec<i64> = c.into_iter().take(e.rs.rank()).collect();
        prop_assume!(weyl_dimension(&e.rs, &w).unwrap() <= 400);
        let r = compute_report(&e, &w, 400).unwrap();
        prop_assert!(r.check().is_ok());
        if !r.w0_matrix.is_empty() {
            prop_assert!(linalg::is_identity(&linalg::mat_mul(&r.w0_matrix, &r.w0_matrix)));
        }
        prop_assert!(r.dim_vl() <= r.dim_v0);
    }
}
