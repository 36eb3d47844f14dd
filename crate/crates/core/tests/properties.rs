use proptest::prelude::*;

use ordfix::compfn::{gamma_beta, gamma_beta_valid, ScalarGauge};
use ordfix::contract::{check_contraction, ContractionVariant};
use ordfix::instances::{gen_random_space, gen_theorem_instance, GeneratorParams};
use ordfix::maia::{build_maia_metric, verify_maia_properties, DEFAULT_TOL};
use ordfix::oracle::{brute_picard_check, enumerate_fixed_points, theorem_suite, TheoremId};
use ordfix::picard::{classify_picard, classify_picard_with, orbit, PicardMode};
use ordfix::schema::{export_instance, parse_instance};
use ordfix::spaces::AxiomMode;
use ordfix::{Distance, Exec};

fn target() -> impl Strategy<Value = TheoremId> {
    prop::sample::select(vec![
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::C1,
        TheoremId::C2,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
        TheoremId::T9,
    ])
}

fn params() -> impl Strategy<Value = GeneratorParams> {
    (any::<u64>(), 1usize..=7, 0.0f64..=1.0, 0.0f64..0.5, target()).prop_map(
        |(seed, n, order_density, quasi, target)| GeneratorParams {
            seed,
            n,
            order_density,
            quasi,
            target,
            ..GeneratorParams::default()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_spaces_satisfy_axioms(p in params()) {
        let s = gen_random_space(&p).unwrap();
        prop_assert!(s.check_axioms(AxiomMode::Metric).all_pass());
        prop_assert!(s.check_axioms(AxiomMode::QuasiOrder).all_pass());
    }

    #[test]
    fn generation_is_deterministic_and_round_trips(p in params()) {
        let a = gen_theorem_instance(&p).unwrap();
        let b = gen_theorem_instance(&p).unwrap();
        prop_assert_eq!(export_instance(&a), export_instance(&b));
        let back = parse_instance(&export_instance(&a)).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert!(a.space.check_axioms(AxiomMode::Metric).all_pass());
        prop_assert!(a.space.check_axioms(AxiomMode::QuasiOrder).all_pass());
    }

    #[test]
    fn generated_instances_respect_their_theorem(p in params()) {
        let spec = gen_theorem_instance(&p).unwrap();
        let v = theorem_suite(&spec.space, p.target, &spec.suite_params(p.target).unwrap()).unwrap();
        prop_assert!(v.hypotheses_hold);
        prop_assert!(v.implication_respected, "{:?}", v);
    }

    #[test]
    fn engine_agrees_with_brute_force(p in params(), leq in any::<bool>()) {
        let spec = gen_theorem_instance(&p).unwrap();
        let mode = if leq { PicardMode::ModuloCLeq } else { PicardMode::ModuloD };
        let engine = classify_picard(&spec.space, mode).unwrap();
        prop_assert_eq!(&engine, &brute_picard_check(&spec.space, mode).unwrap());
        prop_assert_eq!(&engine, &classify_picard_with(Exec::Sequential, &spec.space, mode).unwrap());
        prop_assert_eq!(&engine.fix_set, &enumerate_fixed_points(&spec.space).unwrap());
    }

    #[test]
    fn maia_properties_on_t2_instances(seed in any::<u64>(), n in 1usize..=7, lam in 0.05f64..0.95) {
        let p = GeneratorParams { seed, n, target: TheoremId::T2, ..GeneratorParams::default() };
        let spec = gen_theorem_instance(&p).unwrap();
        let lambda = 1.0 + lam * (1.0 / p.alpha - 1.0);
        let dm = build_maia_metric(&spec.space, p.alpha, Some(lambda), DEFAULT_TOL).unwrap();
        let rep = verify_maia_properties(&dm).unwrap();
        prop_assert!(rep.all_pass(), "{:?}", rep);
        let b04 = check_contraction(&spec.space, &dm, &ContractionVariant::PlainLinear { alpha: dm.mu() }, dm.check_slack()).unwrap();
        prop_assert!(b04.holds);
    }

    #[test]
    fn orbits_are_paths_of_the_map(p in params(), start in 0usize..7) {
        let spec = gen_theorem_instance(&p).unwrap();
        let s = &spec.space;
        let x = start % s.len();
        let tr = orbit(s, s, x, s.len()).unwrap();
        let t = s.selfmap().unwrap();
        for w in tr.points.windows(2) {
            prop_assert_eq!(t[w[0]], w[1]);
        }
        for (k, d) in tr.step_distances.iter().enumerate() {
            prop_assert_eq!(*d, s.dist(tr.points[k], tr.points[k + 1]));
        }
    }

    #[test]
    fn gamma_beta_is_valid(gamma in 0.01f64..5.0, c in 0.1f64..3.0) {
        let phi = ScalarGauge::rational(c);
        let beta = gamma_beta(&phi, gamma).unwrap().unwrap();
        prop_assert!(beta > 0.0);
        prop_assert!(gamma_beta_valid(&phi, gamma, beta).unwrap());
    }

    #[test]
    fn falsify_is_exec_independent(seed in 0u64..1000, drop in prop::sample::select(vec!["b03", "a02", "b02"])) {
        let base = GeneratorParams { seed, target: TheoremId::T2, drop: Some(drop.into()), ..GeneratorParams::default() };
        let a = ordfix::instances::falsify(Exec::Sequential, &base, 40).unwrap();
        let b = ordfix::instances::falsify(Exec::Parallel, &base, 40).unwrap();
        prop_assert_eq!(a, b);
    }
}
