use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tensorhom_core::algebra::{by_name, load_algebra, multiplication_op};
use tensorhom_core::bicomplex::{bracket_with_m_decomposition, d1, d2, total_cohomology, Bicomplex, Window};
use tensorhom_core::exactla::{kernel_basis, rank};
use tensorhom_core::operators::{bracket, insertion, oracle_identity_holds};
use tensorhom_core::{Matrix, MultilinearOp, OpSum, Scalar};

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |xs| {
            let rows: Vec<Vec<i64>> = xs.chunks(c).map(<[i64]>::to_vec).collect();
            Matrix::from_int_rows(&rows)
        })
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in small_matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        prop_assert_eq!(rank(&m) + kernel_basis(&m).len(), m.cols());
        for v in kernel_basis(&m) {
            prop_assert!(m.apply(&v).is_empty());
        }
    }

    #[test]
    fn scalar_field_laws(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let x = Scalar::new(a, b).unwrap();
        let y = Scalar::new(c, d).unwrap();
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) * &y.inv().unwrap(), x.clone());
        }
        let back: Scalar = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn oracle_identity_on_random_pairs(seed in any::<u64>(), dim in 1usize..=2, k1 in 0usize..=2, l1 in 0usize..=2, k2 in 0usize..=2, l2 in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = MultilinearOp::random(&mut rng, dim, k1, l1, 0.7);
        let g = MultilinearOp::random(&mut rng, dim, k2, l2, 0.7);
        prop_assert!(oracle_identity_holds(&f, &g, k1 + k2).unwrap());
    }

    #[test]
    fn bidifferential_on_random_psi(seed in any::<u64>(), which in 0usize..4, k in 0usize..=3, l in 0usize..=2) {
        let a = by_name(["C", "dual", "sq0-n2", "poly0-n1-D3"][which]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = MultilinearOp::random(&mut rng, a.dim(), k, l, 0.6);
        prop_assert!(bracket_with_m_decomposition(&a, &psi).is_ok());
        let x = d1(&a, &psi).unwrap();
        prop_assert!(d1(&a, &x).unwrap().is_zero());
        if let Some(y) = d2(&a, &psi).unwrap() {
            prop_assert!(d1(&a, &y).unwrap().add(&d2(&a, &x).unwrap().unwrap()).unwrap().is_zero());
        }
    }
}

#[test]
fn algebra_json_round_trip() {
    let json = r#"{"name":"dual-json","basis":["1","x"],"mult":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]],"unit":0}"#;
    let a = load_algebra(json).unwrap();
    assert_eq!(a.unit(), Some(0));
    let m = OpSum::from(multiplication_op(&a));
    assert!(bracket(&m, &m).unwrap().is_zero());
    let again = load_algebra(&serde_json::to_string(&a.to_spec()).unwrap()).unwrap();
    assert_eq!(multiplication_op(&again), multiplication_op(&a));
}

#[test]
fn insertion_of_identity_counts_placements() {
    let id = MultilinearOp::identity(2, 1);
    let i3 = insertion(&id, 3).unwrap();
    assert_eq!(i3, Matrix::identity(8).scale(&Scalar::from_int(3)));
}

#[test]
fn bidegree_window_cohomology_is_consistent() {
    let a = by_name("poly0-n1-D2").unwrap();
    let b = Bicomplex::assemble(&a, Window::Bidegree { p: 1, q: 1 }).unwrap();
    b.verify().unwrap();
    let t = total_cohomology(&b).unwrap();
    assert_eq!(t.reliable_dims().get(&0), Some(&1));
    assert_eq!(t.total(), 1);
    let d = &b.d1;
    for ((k, l), m) in d {
        if let Some(next) = d.get(&(k + 1, *l)) {
            assert!(next.mul(m).unwrap().is_zero());
        }
    }
}
