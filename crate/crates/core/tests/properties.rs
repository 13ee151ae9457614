use proptest::prelude::*;
use serde_json::Value;

use soinv_core::analysis::{
    commutant_dimension, intertwiner_space, is_irreducible, q_separation, AnalysisError,
    SeparationVerdict,
};
use soinv_core::report::{run_suite, RunConfig, Suite};
use soinv_core::so::{eta_a, random_so, sigma_involution, sym2_action, sym2_gram};
use soinv_core::{
    evaluate, q_n, Complex64, Form, GaussianRational, GroupTag, Matrix, Representation, Tolerance,
};

fn pairs(a: &Representation<Complex64>, b: &Representation<Complex64>) -> Vec<(Matrix<Complex64>, Matrix<Complex64>)> {
    a.generators()
        .iter()
        .map(|(g, m)| (m.clone(), b.generators()[g].clone()))
        .collect()
}

fn eta(seed: u64) -> Representation<Complex64> {
    let tol = Tolerance::default();
    eta_a(&random_so::<Complex64>(6, seed).unwrap(), 7, 11, 3, &tol).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn commutant_dimension_is_conjugation_invariant(seed in 0u64..10_000, conj in 0u64..10_000) {
        let tol = Tolerance::default();
        let rho = eta(seed);
        let reducible = rho.direct_sum(&eta(seed + 1)).unwrap();
        for rep in [rho, reducible] {
            let q = random_so::<Complex64>(rep.dim(), conj).unwrap();
            let moved = rep.conjugate(&q, &q.transpose()).unwrap();
            let gens = |r: &Representation<Complex64>| r.generators().values().cloned().collect::<Vec<_>>();
            prop_assert_eq!(
                commutant_dimension(&gens(&rep), &tol).unwrap(),
                commutant_dimension(&gens(&moved), &tol).unwrap()
            );
        }
    }

    #[test]
    fn intertwiners_are_symmetric_and_intertwine(seed in 0u64..10_000) {
        let tol = Tolerance::default();
        let rho = eta(seed);
        let sigma = sigma_involution(&rho).unwrap();
        let forward = intertwiner_space(&pairs(&rho, &sigma), &tol).unwrap();
        let backward = intertwiner_space(&pairs(&sigma, &rho), &tol).unwrap();
        prop_assert_eq!(forward.len(), backward.len());
        for t in &forward {
            for (a, b) in pairs(&rho, &sigma) {
                let lhs = t.mul(&a).unwrap();
                let rhs = b.mul(t).unwrap();
                prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-8 * (1.0 + t.max_magnitude()));
            }
        }
    }

    #[test]
    fn sym2_action_preserves_the_inner_product(seed in 0u64..10_000) {
        let a = random_so::<GaussianRational>(5, seed).unwrap();
        let s = sym2_action(&a).unwrap();
        let g = sym2_gram::<GaussianRational>();
        prop_assert_eq!(s.transpose().mul(&g).unwrap().mul(&s).unwrap(), g);
    }

    #[test]
    fn separation_witness_reproduces(seed in 0u64..10_000) {
        let tol = Tolerance::default();
        let gens = [random_so::<GaussianRational>(4, seed).unwrap(), random_so::<GaussianRational>(4, seed + 1).unwrap()];
        let rep = Representation::new(Form::Standard, GroupTag::Free, [(1, gens[0].clone()), (2, gens[1].clone())]).unwrap();
        let sigma = sigma_involution(&rep).unwrap();
        let report = q_separation(&rep, &sigma, 2, &tol).unwrap();
        if report.verdict == SeparationVerdict::Separated {
            let w = report.witness.unwrap();
            let qa = q_n(&evaluate(&w, &rep.assignment().unwrap()).unwrap()).unwrap();
            let qb = q_n(&evaluate(&w, &sigma.assignment().unwrap()).unwrap()).unwrap();
            prop_assert_ne!(qa, qb);
        }
    }
}

#[test]
fn irreducibility_needs_finite_orders() {
    let a = random_so::<Complex64>(4, 3).unwrap();
    let rep = Representation::new(Form::Standard, GroupTag::Free, [(1, a)]).unwrap();
    assert!(matches!(
        is_irreducible(&rep, &Tolerance::default()),
        Err(AnalysisError::NotApplicable(_))
    ));
}

fn strip_runtimes(mut v: Value) -> Value {
    if let Some(checks) = v["checks"].as_array_mut() {
        for c in checks {
            c.as_object_mut().unwrap().remove("runtime_ms");
        }
    }
    v
}

#[test]
fn reports_are_deterministic() {
    let cfg = RunConfig {
        samples: Some(2),
        max_n: 3,
        max_len: 2,
        ..RunConfig::default()
    };
    for suite in [Suite::Identities, Suite::Separation, Suite::Counterexample] {
        let a = serde_json::to_value(run_suite(&cfg, suite).unwrap()).unwrap();
        let b = serde_json::to_value(run_suite(&cfg, suite).unwrap()).unwrap();
        assert_eq!(strip_runtimes(a), strip_runtimes(b), "{suite}");
    }
}
