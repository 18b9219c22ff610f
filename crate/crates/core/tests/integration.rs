//! Cross-module invariants on random complete fans. The seed is the proptest
//! input, so a failing case shrinks to a reproducible instance.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weighted_ehrhart::algebra::{int, rat, FracPoly};
use weighted_ehrhart::fuzz::{random_complete_instance, random_polytope, Instance};
use weighted_ehrhart::polytope::ehrhart;
use weighted_ehrhart::reciprocity::{
    group_betti_to_delta, hibi_check, orbifold_betti, pyramid_delta, verify_boundary_identity,
    verify_ehrhart_reciprocity, verify_low_coefficients, verify_weighted_reciprocity, ClassData,
    Triangulation,
};
use weighted_ehrhart::weighted::checks::{
    verify_local_vs_count, verify_symmetry, verify_weighted_h_duality,
};
use weighted_ehrhart::weighted::{delta0_local, weighted_delta, LambdaFunction};

fn planar(seed: u64, random_multipliers: bool) -> (Instance, ClassData) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = random_complete_instance(&mut rng, 2, random_multipliers);
    let data = ClassData::new(&inst.fan, 6).unwrap();
    (inst, data)
}

fn lambda_for(seed: u64, n: usize) -> LambdaFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choices = [rat(-2, 3), rat(-1, 2), int(0), rat(1, 4), rat(2, 3), int(1)];
    LambdaFunction::new((0..n).map(|_| choices[rng.gen_range(0..choices.len())].clone()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn local_formula_matches_counting(seed in any::<u64>(), am in any::<bool>()) {
        let (inst, _) = planar(seed, am);
        let fan = &inst.fan;
        let zero = LambdaFunction::zero(fan.rays().len());
        prop_assert!(verify_local_vs_count(fan, &zero, 6).is_ok());
        let w = weighted_delta(fan, &zero, 6).unwrap();
        prop_assert_eq!(&w.specialized, &delta0_local(fan));
        let lambda = lambda_for(seed, fan.rays().len());
        let r = verify_local_vs_count(fan, &lambda, 8);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn reciprocity_holds(seed in any::<u64>(), am in any::<bool>()) {
        let (inst, data) = planar(seed, am);
        let fan = &inst.fan;
        prop_assert!(verify_weighted_reciprocity(fan, &data, 4).is_ok());
        prop_assert!(verify_ehrhart_reciprocity(fan, &data, 3).is_ok());
        prop_assert!(verify_boundary_identity(fan, &data, 4).is_ok());
    }

    #[test]
    fn betti_numbers_group_to_delta(seed in any::<u64>(), am in any::<bool>()) {
        let (inst, data) = planar(seed, am);
        let grouped = FracPoly::from_coeffs(group_betti_to_delta(&orbifold_betti(&inst.fan)));
        prop_assert_eq!(grouped, data.delta_q());
        prop_assert!(verify_low_coefficients(&inst.fan).is_ok());
    }

    #[test]
    fn palindromy_iff_integral_psi(seed in any::<u64>(), am in any::<bool>()) {
        let (inst, data) = planar(seed, am);
        let r = hibi_check(&inst.fan, &data).unwrap();
        prop_assert_eq!(r.palindromic, r.psi_piecewise_linear);
    }

    #[test]
    fn symmetry_for_all_lambda(seed in any::<u64>(), am in any::<bool>()) {
        let (inst, _) = planar(seed, am);
        let fan = &inst.fan;
        let lambda = lambda_for(seed ^ 1, fan.rays().len());
        prop_assert!(verify_symmetry(fan, &lambda, 6).is_ok());
        let r = verify_weighted_h_duality(fan, &lambda, 4, seed);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn pyramid_recovers_ehrhart_delta(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_polytope(&mut rng, 2, 3, false);
        let want = FracPoly::from_coeffs(ehrhart(&p, 6).unwrap().delta);
        let t = Triangulation::pulling(&p);
        prop_assert_eq!(pyramid_delta(&p, &t).unwrap(), want.clone());
        let fine = t.refine_at_lattice_points(&p);
        prop_assert!(fine.is_unimodular());
        prop_assert_eq!(fine.h_vector(), want);
    }
}
