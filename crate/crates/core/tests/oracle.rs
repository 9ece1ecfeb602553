use std::sync::Arc;

use nearly::demo::corpus;
use nearly::functions::{
    Function, PointwiseSequence, RampSpike, ReciprocalRamp, ShrinkingIndicator, StepDecay, StepFunction, XOverN,
};
use nearly::interval::{int, rat, Interval, IntervalSet};
use nearly::oracle::{mutation_suite, verify, Inputs, MutationOutcome, VerifyOptions};
use nearly::principles::{
    dini_index, egoroff_classical, egoroff_dini, fourth_principle, lusin, lusin_classical, lusin_step,
    principle1_decompose, Certificate, DiniAlgorithm, DEFAULT_CAP,
};

fn unit() -> Interval {
    Interval::closed(int(0), int(1)).unwrap()
}

fn three_value_step() -> StepFunction {
    StepFunction::new(
        unit(),
        vec![
            (IntervalSet::parse("[0,1/4) u [1/2,3/4)", unit()).unwrap(), int(0).into()),
            (IntervalSet::parse("[1/4,1/2) u (7/8,1]", unit()).unwrap(), int(2).into()),
            (IntervalSet::parse("[3/4,7/8]", unit()).unwrap(), rat(-1, 3).into()),
        ],
    )
    .unwrap()
}

fn spike() -> PointwiseSequence {
    let f = RampSpike::new(int(0), int(1), unit()).unwrap();
    PointwiseSequence::from_monotone(f.limit(), Arc::new(f)).unwrap()
}

fn assert_passes(cert: &Certificate, inputs: &Inputs) {
    let report = verify(cert, inputs, &VerifyOptions::default()).unwrap();
    assert!(report.passed(), "{}", report.to_json());
}

#[test]
fn demo_corpus_passes_and_every_mutation_is_caught() {
    for case in corpus().unwrap() {
        assert_passes(&case.cert, &case.inputs);
        for r in mutation_suite(&case.cert, &case.inputs, &VerifyOptions::default()).unwrap() {
            assert_eq!(r.outcome, MutationOutcome::Rejected, "{}: {:?}", case.name, r.mutation);
        }
    }
}

#[test]
fn wider_corpus_passes() {
    let eps = rat(1, 100);
    let recip: Function = ReciprocalRamp::new(int(0), int(1), int(1), unit()).unwrap().into();
    let step: Function = three_value_step().into();
    let mut runs: Vec<(Certificate, Inputs)> = vec![
        (
            principle1_decompose(&IntervalSet::parse("(0,1/3) u [1/2,1)", unit()).unwrap(), &eps).unwrap().into(),
            Inputs::Set(IntervalSet::parse("(0,1/3) u [1/2,1)", unit()).unwrap()),
        ),
        (fourth_principle(&step, &eps, DEFAULT_CAP).unwrap().into(), Inputs::Function(step.clone())),
        (lusin_step(&three_value_step(), &rat(1, 1000)).unwrap().into(), Inputs::Function(step.clone())),
    ];
    for path in [lusin, lusin_classical] {
        runs.push((path(&step, &rat(1, 10), 8, DEFAULT_CAP).unwrap().into(), Inputs::Function(step.clone())));
        runs.push((path(&recip, &rat(1, 10), 4, DEFAULT_CAP).unwrap().into(), Inputs::Function(recip.clone())));
    }
    let decay = StepDecay::new(IntervalSet::full(unit()), IntervalSet::full(unit())).unwrap();
    let decay = PointwiseSequence::from_monotone(decay.limit(), Arc::new(decay)).unwrap();
    let ind = ShrinkingIndicator::new(int(0), int(1), unit()).unwrap();
    let env = PointwiseSequence::from_envelope(ind.limit(), Arc::new(ind.clone()), Arc::new(ind.envelope()), 16).unwrap();
    for seq in [spike(), decay] {
        for e in [rat(1, 10), rat(1, 100)] {
            runs.push((egoroff_classical(&seq, &e, 6, DEFAULT_CAP).unwrap().into(), Inputs::Sequence(seq.clone())));
            runs.push((egoroff_dini(&seq, &e, 6, DEFAULT_CAP).unwrap().into(), Inputs::Sequence(seq.clone())));
        }
    }
    runs.push((egoroff_classical(&env, &rat(1, 10), 4, DEFAULT_CAP).unwrap().into(), Inputs::Sequence(env)));
    let x = XOverN::new(int(0), int(1), unit()).unwrap();
    for alg in [DiniAlgorithm::Sup, DiniAlgorithm::Cover] {
        let c = dini_index(&x, &x.limit(), &IntervalSet::full(unit()), &rat(1, 10), alg, 100).unwrap();
        runs.push((c.into(), Inputs::Dini { terms: Arc::new(x.clone()), limit: x.limit() }));
    }
    for (cert, inputs) in &runs {
        assert_passes(cert, inputs);
    }
}

#[test]
fn inflated_egoroff_set_fails_with_witness() {
    let seq = spike();
    let Certificate::Egoroff(mut c) = egoroff_classical(&seq, &rat(1, 10), 2, DEFAULT_CAP).unwrap().into() else {
        unreachable!()
    };
    let extra = IntervalSet::parse("[99/100,1]", unit()).unwrap();
    c.k = c.k.union(&extra).unwrap();
    c.loss = IntervalSet::full(unit()).difference(&c.k).unwrap().measure();
    let report = verify(&c.into(), &Inputs::Sequence(seq), &VerifyOptions::default()).unwrap();
    assert!(!report.passed());
    let sampled = report.sampled_checks.iter().find(|c| !c.passed).expect("a sampled check fails");
    assert!(sampled.witness.is_some());
}

#[test]
fn lowered_bound_fails() {
    let f: Function = ReciprocalRamp::new(int(0), int(1), int(1), unit()).unwrap().into();
    let mut c = fourth_principle(&f, &rat(1, 10), DEFAULT_CAP).unwrap();
    c.bound = int(20);
    let report = verify(&c.into(), &Inputs::Function(f), &VerifyOptions::default()).unwrap();
    let failed: Vec<_> = report.failures().map(|c| c.name.as_str()).collect();
    assert!(failed.contains(&"|f| ≤ bound on K"), "{failed:?}");
}

#[test]
fn decremented_index_fails_on_strictness() {
    let seq = spike();
    let mut c = egoroff_classical(&seq, &rat(1, 10), 2, DEFAULT_CAP).unwrap();
    c.index_table[1] = 40;
    let report = verify(&c.into(), &Inputs::Sequence(seq), &VerifyOptions::default()).unwrap();
    assert!(report.failures().any(|c| c.name == "budget for 1/2"));
}

#[test]
fn mismatched_inputs_are_an_error() {
    let c = principle1_decompose(&IntervalSet::full(unit()), &rat(1, 10)).unwrap();
    assert!(verify(&c.into(), &Inputs::Sequence(spike()), &VerifyOptions::default()).is_err());
}

#[test]
fn coarse_grid_keeps_structural_verdicts() {
    let options = VerifyOptions { grid_density: Some(rat(1, 4)), ..Default::default() };
    for case in corpus().unwrap() {
        assert!(verify(&case.cert, &case.inputs, &options).unwrap().passed(), "{}", case.name);
    }
}
