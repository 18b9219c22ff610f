//! Every applicable identity run against one input, as a list of named
//! results. Checks whose hypotheses fail are reported as skipped.

use crate::error::Result;
use crate::fan::StackyFan;
use crate::polytope::LatticePolytope;
use crate::reciprocity::{
    hibi_check, verify_boundary_identity, verify_ehrhart_reciprocity, verify_grouping,
    verify_low_coefficients, verify_planar_closed_forms, verify_polytope_reciprocity,
    verify_weighted_reciprocity, ClassData,
};
use crate::report::{CheckResult, Status};
use crate::weighted::checks::{
    betke_mcmullen_decomposition, verify_local_vs_count, verify_symmetry,
    verify_weighted_h_duality,
};
use crate::weighted::{default_horizon, LambdaFunction};

pub struct SuiteInput<'a> {
    pub fan: &'a StackyFan,
    pub polytope: Option<&'a LatticePolytope>,
    pub lambda: Option<&'a LambdaFunction>,
    pub horizon: usize,
}

/// Samples per interior cone for the evaluation identity.
pub const DUALITY_SAMPLES: usize = 20;

pub fn verify_all(input: &SuiteInput) -> Vec<CheckResult> {
    let fan = input.fan;
    let d = fan.rank();
    let horizon = input.horizon.max(2 * d + 2);
    let zero = LambdaFunction::zero(fan.rays().len());
    let mut hyps = vec![
        format!("complete: {}", fan.is_complete()),
        format!("dim: {d}"),
    ];
    let data = ClassData::new(fan, horizon);
    let with_data = |f: &dyn Fn(&ClassData) -> Result<String>| match &data {
        Ok(c) => f(c),
        Err(e) => Err(e.clone()),
    };
    let mut out = Vec::new();
    let mut push = |name: &str, hyps: &[String], r: Result<String>| {
        out.push(CheckResult::from_result(name, hyps.to_vec(), r));
    };
    push("local-vs-count", &hyps, verify_local_vs_count(fan, &zero, horizon));
    push("symmetry", &hyps, verify_symmetry(fan, &zero, horizon));
    push(
        "weighted-reciprocity",
        &hyps,
        with_data(&|c| verify_weighted_reciprocity(fan, c, 5)),
    );
    push(
        "ehrhart-reciprocity",
        &hyps,
        with_data(&|c| verify_ehrhart_reciprocity(fan, c, 3)),
    );
    if let Some(p) = input.polytope {
        push("polytope-reciprocity", &hyps, verify_polytope_reciprocity(p, 3));
    }
    push(
        "boundary-count",
        &hyps,
        with_data(&|c| verify_boundary_identity(fan, c, 5)),
    );
    push("low-coefficients", &hyps, verify_low_coefficients(fan));
    push(
        "palindromy-criterion",
        &hyps,
        with_data(&|c| {
            hibi_check(fan, c).map(|r| {
                format!(
                    "palindromic: {}, psi piecewise linear: {}",
                    r.palindromic, r.psi_piecewise_linear
                )
            })
        }),
    );
    push("betti-grouping", &hyps, with_data(&|c| verify_grouping(fan, c)));
    push(
        "planar-closed-forms",
        &hyps,
        with_data(&|c| verify_planar_closed_forms(fan, c)),
    );
    push(
        "betke-mcmullen",
        &hyps,
        betke_mcmullen_decomposition(fan, horizon).map(|(a, b)| format!("a = {a}, b = {b}")),
    );
    push(
        "weighted-h-duality",
        &hyps,
        verify_weighted_h_duality(fan, &zero, DUALITY_SAMPLES, 0),
    );
    if let Some(lambda) = input.lambda.filter(|l| !l.is_zero()) {
        hyps.push(format!(
            "lambda above -1: {}",
            lambda.rays_above_minus_one()
        ));
        let h = horizon.max(default_horizon(fan, lambda));
        push(
            "local-vs-count-lambda",
            &hyps,
            verify_local_vs_count(fan, lambda, h),
        );
        push("symmetry-lambda", &hyps, verify_symmetry(fan, lambda, h));
        push(
            "weighted-h-duality-lambda",
            &hyps,
            verify_weighted_h_duality(fan, lambda, DUALITY_SAMPLES, 0),
        );
    }
    out
}

/// Exit status for a list of results: 1 on any failure, else 2 on any
/// skip, else 0.
pub fn exit_code(results: &[CheckResult]) -> i32 {
    if results.iter().any(|r| r.status == Status::Fail) {
        1
    } else if results.iter().any(|r| r.status == Status::Skipped) {
        2
    } else {
        0
    }
}
