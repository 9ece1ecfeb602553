//! The built-in corpus: one small, fully checkable run per statement.

use std::sync::Arc;

use crate::error::Result;
use crate::functions::{Function, PointwiseSequence, RampSpike, ReciprocalRamp, StepFunction, XOverN};
use crate::interval::{int, rat, Interval, IntervalSet};
use crate::oracle::Inputs;
use crate::principles::{
    dini_index, egoroff_classical, egoroff_dini, fourth_principle, lusin, Certificate, DiniAlgorithm, DEFAULT_CAP,
};

#[derive(Debug, Clone)]
pub struct DemoCase {
    pub name: &'static str,
    /// The statement being illustrated.
    pub statement: &'static str,
    pub cert: Certificate,
    pub inputs: Inputs,
}

fn unit() -> Interval {
    Interval::closed(int(0), int(1)).expect("0 < 1")
}

pub fn corpus() -> Result<Vec<DemoCase>> {
    let eps = rat(1, 10);
    let recip: Function = ReciprocalRamp::new(int(0), int(1), int(1), unit())?.into();
    let spike = RampSpike::new(int(0), int(1), unit())?;
    let spike = PointwiseSequence::from_monotone(spike.limit(), Arc::new(spike))?;
    let step: Function = StepFunction::new(
        unit(),
        vec![
            (IntervalSet::parse("[0,1/2)", unit())?, int(0).into()),
            (IntervalSet::parse("[1/2,1]", unit())?, int(1).into()),
        ],
    )?
    .into();
    let x_over_n = XOverN::new(int(0), int(1), unit())?;
    let x_limit = x_over_n.limit();
    Ok(vec![
        DemoCase {
            name: "reciprocal bound",
            statement: "nearly bounded: 1/x is bounded on a closed set of almost full measure",
            cert: fourth_principle(&recip, &eps, DEFAULT_CAP)?.into(),
            inputs: Inputs::Function(recip),
        },
        DemoCase {
            name: "ramp spike, classical Egoroff",
            statement: "nearly uniform: ramp spikes converge uniformly off a small set",
            cert: egoroff_classical(&spike, &eps, 4, DEFAULT_CAP)?.into(),
            inputs: Inputs::Sequence(spike.clone()),
        },
        DemoCase {
            name: "ramp spike, Egoroff via Dini",
            statement: "nearly uniform, through Lusin and Dini",
            cert: egoroff_dini(&spike, &eps, 4, DEFAULT_CAP)?.into(),
            inputs: Inputs::Sequence(spike),
        },
        DemoCase {
            name: "two-piece step, Lusin",
            statement: "nearly continuous: a jump is cut out by a small gap",
            cert: lusin(&step, &eps, 8, DEFAULT_CAP)?.into(),
            inputs: Inputs::Function(step),
        },
        DemoCase {
            name: "x/n, Dini index",
            statement: "monotone convergence on a compact set is uniform",
            cert: dini_index(&x_over_n, &x_limit, &IntervalSet::full(unit()), &eps, DiniAlgorithm::Sup, DEFAULT_CAP)?
                .into(),
            inputs: Inputs::Dini { terms: Arc::new(x_over_n), limit: x_limit },
        },
    ])
}
