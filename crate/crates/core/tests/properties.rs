use proptest::collection::{hash_set, vec};
use proptest::prelude::*;
use weyl_transfer::graded::{rsk, young_transfer, YoungLattice};
use weyl_transfer::measure_lab::chi_square;
use weyl_transfer::perm_limits::{delete_one, matrix_decode, matrix_encode, ComparisonMatrix};
use weyl_transfer::transfer_tri::{
    delta_relation_check, estimate_first, marked_positions, reconstruct, shift, transfer, translate_iperm,
};
use weyl_transfer::weyl_codec::{encode, iperm_from_path, iperm_of, path_from_iperm};
use weyl_transfer::{ExactSample, IPerm, Perm, Rational, Sample, Sample32, TriPath};

/// Distinct coordinates on a grid strictly inside (0,1), in random order.
fn point(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    hash_set(1u32..1_000_000, 1..max_len).prop_map(|s| s.into_iter().collect::<Vec<_>>()).prop_shuffle()
}

fn as_f64(v: &[u32]) -> Sample {
    Sample::new(v.iter().map(|&u| f64::from(u) / 1e6).collect()).unwrap()
}

fn perm(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..max_len).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn codes_are_in_range_and_invert(v in point(80)) {
        let x = as_f64(&v);
        let t = encode(&x);
        for (k, &r) in t.ranks().iter().enumerate() {
            prop_assert!((1..=k + 1).contains(&r));
        }
        prop_assert_eq!(iperm_from_path(&t), iperm_of(&x));
        prop_assert_eq!(path_from_iperm(&iperm_of(&x)), t);
    }

    #[test]
    fn codes_ignore_monotone_reparametrisation(v in point(50)) {
        let x = as_f64(&v);
        let squared = Sample::new(x.values().iter().map(|u| u * u).collect()).unwrap();
        prop_assert_eq!(encode(&x), encode(&squared));
    }

    #[test]
    fn scalar_types_agree(v in point(40)) {
        let x = as_f64(&v);
        let exact = ExactSample::new(v.iter().map(|&u| Rational::new(u.into(), 1_000_000.into())).collect()).unwrap();
        prop_assert_eq!(encode(&exact), encode(&x));
        let narrow = Sample32::new(v.iter().map(|&u| u as f32 / 1e6).collect());
        if let Ok(narrow) = narrow {
            prop_assert_eq!(iperm_of(&narrow), iperm_of(&x));
        }
    }

    #[test]
    fn transfer_is_conjugate_to_shift(v in point(120)) {
        prop_assume!(v.len() >= 2);
        let x = as_f64(&v);
        let t = encode(&x);
        let y = shift(&x).unwrap();
        prop_assert_eq!(transfer(&t).unwrap(), encode(&y));
        prop_assert_eq!(translate_iperm(&iperm_of(&x)).unwrap(), iperm_of(&y));
        prop_assert!(delta_relation_check(&t));
    }

    #[test]
    fn marks_count_coordinates_not_above_the_first(v in point(100)) {
        let x = as_f64(&v);
        let m = marked_positions(&encode(&x));
        let below = x.values().iter().filter(|&&u| u < x.values()[0]).count();
        prop_assert_eq!(m.total(), below + 1);
        let d: f64 = estimate_first(&encode(&x));
        prop_assert!((0.0..=1.0).contains(&d));
        let r: Vec<f64> = reconstruct(&encode(&x), x.len()).unwrap();
        prop_assert!(r.iter().all(|&u| u > 0.0 && u < 1.0));
    }

    #[test]
    fn comparison_matrix_round_trips(v in point(60)) {
        let x = as_f64(&v);
        let m = matrix_encode(&x);
        prop_assert!(m.is_realizable());
        prop_assert_eq!(matrix_decode(&m).unwrap(), iperm_of(&x));
        prop_assert_eq!(m.to_string().parse::<ComparisonMatrix>().unwrap(), m);
    }

    #[test]
    fn text_and_json_round_trips(v in perm(12)) {
        let k = IPerm::new(v.clone()).unwrap();
        prop_assert_eq!(k.to_string().parse::<IPerm>().unwrap(), k.clone());
        let t = path_from_iperm(&k);
        let json = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<TriPath>(&json).unwrap(), t);
        let g = Perm::new(v).unwrap();
        prop_assert_eq!(g.inverse().inverse(), g);
    }

    #[test]
    fn delete_one_yields_permutations(v in perm(12)) {
        prop_assume!(v.len() >= 2);
        let d = delete_one(&Perm::new(v).unwrap()).unwrap();
        prop_assert!(Perm::new(d.images().to_vec()).is_ok());
    }

    #[test]
    fn chi_square_is_nonnegative(counts in vec(0u64..500, 2..12)) {
        prop_assume!(counts.iter().sum::<u64>() > 0);
        let k = counts.len();
        let s = chi_square(&counts, &vec![1.0 / k as f64; k]).unwrap();
        prop_assert!(s >= 0.0);
        let scaled: Vec<u64> = vec![7; k];
        prop_assert!(chi_square(&scaled, &vec![1.0 / k as f64; k]).unwrap().abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recording_tableaux_intertwine_shift(v in point(10)) {
        prop_assume!(v.len() >= 2);
        let x = as_f64(&v);
        let lattice = YoungLattice::new(x.len()).unwrap();
        let (p, q) = rsk(&x);
        let p_shape: Vec<usize> = p.iter().map(Vec::len).collect();
        prop_assert_eq!(q.shape().parts().to_vec(), p_shape);
        let image = young_transfer(&lattice, &q.to_path(&lattice.graph).unwrap()).unwrap();
        let shifted = rsk(&shift(&x).unwrap()).1.to_path(&lattice.graph).unwrap();
        prop_assert_eq!(image, shifted);
    }
}
