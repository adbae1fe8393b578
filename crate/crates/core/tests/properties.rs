use proptest::prelude::*;

use superweights::affine::{
    affine_kac_character, chi_period, level_forced_zero, verify_chi_certificate, AffineCharacter, AffineWeight,
    ChiData,
};
use superweights::algebra::SuperAlgebra;
use superweights::arith::{Cyclotomic, Poly};
use superweights::combinatorics::{closed_subsets, cone_member, shadow_from_inj};
use superweights::modules::{even_part_simple, finite_simple_module, kac_module_type_one, tensor};
use superweights::roots::{build_root_system, Family, RootVector};

fn cyc() -> impl Strategy<Value = Cyclotomic> {
    (-6i64..=6, 1i64..=4, 0i64..12, -3i64..=3, 1i64..=3).prop_map(|(a, b, k, c, d)| {
        &Cyclotomic::ratio(a, b) + &(&Cyclotomic::ratio(c, d) * &Cyclotomic::zeta_pow(12, k))
    })
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn cyclotomic_field_axioms(x in cyc(), y in cyc(), z in cyc()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), Cyclotomic::one());
        }
        let parsed: Cyclotomic = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed, x);
    }

    #[test]
    fn products_of_distinct_roots_are_squarefree(roots in proptest::collection::btree_set(-8i64..=8, 1..5)) {
        let p = roots.iter().fold(Poly::one(), |acc, &a| acc.mul(&Poly::linear_root(&Cyclotomic::integer(a))));
        prop_assert!(p.is_squarefree());
        let doubled = p.mul(&Poly::linear_root(&Cyclotomic::integer(*roots.iter().next().unwrap())));
        prop_assert!(!doubled.is_squarefree());
        for &a in &roots {
            prop_assert!(p.eval(&Cyclotomic::integer(a)).is_zero());
        }
    }

    #[test]
    fn nonnegative_combinations_lie_in_the_cone(
        gens in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 1..4),
        coeffs in proptest::collection::vec(0i64..=5, 4),
    ) {
        let lambda: Vec<i64> = (0..3).map(|j| gens.iter().zip(&coeffs).map(|(g, c)| g[j] * c).sum()).collect();
        let gens: Vec<RootVector> = gens.into_iter().map(RootVector).collect();
        prop_assert!(cone_member(&gens, &RootVector(lambda)));
    }

    #[test]
    fn chi_certificates_validate(
        pts in proptest::collection::btree_set(-5i64..=5, 1..4),
        ws in proptest::collection::vec(-3i64..=3, 4),
    ) {
        let points: Vec<Cyclotomic> = pts.iter().filter(|&&p| p != 0).map(|&p| Cyclotomic::integer(p)).collect();
        prop_assume!(!points.is_empty());
        let weights: Vec<Vec<Cyclotomic>> = ws.iter().take(points.len()).map(|&x| vec![Cyclotomic::integer(x)]).collect();
        let chi = ChiData::new(points, weights).unwrap();
        if let Ok(p) = chi_period(&chi) {
            prop_assert!(verify_chi_certificate(&chi, &p));
            prop_assert!(p.r <= 2, "real points give r ∈ {{1, 2}}, got {}", p.r);
        }
    }

    #[test]
    fn only_level_zero_is_admissible(h in 1i64..=9, dim in 1usize..=10, k in -10i64..=10) {
        let ok = level_forced_zero(&Cyclotomic::integer(h), dim, &Cyclotomic::integer(k)).unwrap();
        prop_assert_eq!(ok, k == 0);
    }

    #[test]
    fn tensor_products_respect_the_bracket(a in 0i64..=3, b in 0i64..=3) {
        let sl2 = SuperAlgebra::by_id("sl2").unwrap();
        let t = tensor(
            &finite_simple_module(&sl2, &vec![Cyclotomic::integer(a)]).unwrap(),
            &finite_simple_module(&sl2, &vec![Cyclotomic::integer(b)]).unwrap(),
        ).unwrap();
        prop_assert_eq!(t.dim() as i64, (a + 1) * (b + 1));
        let (h, e, f) = (sl2.index_of("h").unwrap(), sl2.index_of("e").unwrap(), sl2.index_of("f").unwrap());
        for i in 0..t.dim() {
            let mut v = vec![Cyclotomic::zero(); t.dim()];
            v[i] = Cyclotomic::one();
            let ef = t.act(e, &t.act(f, &v).unwrap()).unwrap();
            let fe = t.act(f, &t.act(e, &v).unwrap()).unwrap();
            let hv = t.act(h, &v).unwrap();
            let diff: Vec<Cyclotomic> = ef.iter().zip(&fe).map(|(x, y)| x - y).collect();
            prop_assert_eq!(diff, hv);
        }
    }

    #[test]
    fn kac_module_dimension_and_affine_mass(l1 in 0i64..=3, l2 in -4i64..=4) {
        let a = SuperAlgebra::by_id("sl21").unwrap();
        let s = even_part_simple(&a, &vec![Cyclotomic::integer(l1), Cyclotomic::integer(l2)]).unwrap();
        let k = kac_module_type_one(&a, &s).unwrap();
        prop_assert_eq!(k.dim(), 4 * s.dim());
        let ch = AffineCharacter::point(AffineWeight { finite: vec![Cyclotomic::zero(); 3], level: Cyclotomic::zero(), degree: 0 });
        prop_assert_eq!(affine_kac_character(&a, &ch, 0).unwrap().mass(), 4);
    }
}

#[test]
fn shadows_partition_the_roots() {
    let rs = build_root_system(&Family::A { m: 1, n: 0 }).unwrap();
    for inj in closed_subsets(&rs) {
        let s = shadow_from_inj(&rs, &inj).unwrap();
        assert_eq!(s.i.len() + s.f.len() + s.plus.len() + s.minus.len(), rs.len());
        let neg: Vec<RootVector> = s.plus.iter().map(|a| -a).collect();
        let mut minus = s.minus.clone();
        minus.sort();
        let mut neg_sorted = neg;
        neg_sorted.sort();
        assert_eq!(minus, neg_sorted);
        assert!(inj.iter().all(|a| s.i.contains(a) || s.minus.contains(a)));
    }
}
