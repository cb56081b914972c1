//! Randomized checks of the tensor-product identities: the factorization
//! `det(Q) = ±det(F)^3 * Res`, the corner-power collapse, block
//! multidegrees, weight homogeneity, deformation valuations, and the exact
//! symbolic base case.

use super::report::{Sign, Status, VerificationReport};
use super::{
    corrupt_field_matrix, expected_block_degree, expected_t_valuation, expected_weight_exponent,
    trial_rng, DetTarget, ScalingWeight, TrialConfig, VerifyError, LAMBDA_CHECKS, MAX_REDRAWS,
};
use crate::builders::{
    corner_template, tensor_moving_plane, tensor_moving_quadric, Axis, FieldAssignment,
    LinearTemplate, PolyAssignment, QuadricTemplate,
};
use crate::exactalg::{symbolic_det, PolyMatrix, PrimeField, UniPoly};
use crate::resultant::{dixon_matrix, dixon_polynomial, tensor_resultant, CoefficientGrid};
use num_traits::Signed;
use rand::Rng;
use serde_json::json;
use std::time::Instant;

pub(super) fn sign_of(field: PrimeField, got: u64, expect: u64) -> Option<Sign> {
    if got == expect {
        Some(Sign::Plus)
    } else if got == field.neg(expect) {
        Some(Sign::Minus)
    } else {
        None
    }
}

/// Fold per-trial signs into (status, reported sign): pass needs every
/// completed trial consistent and a single sign across all of them.
/// `signs` holds one entry per completed trial, `None` meaning the identity
/// failed outright for that draw.
fn conclude_signed(signs: &[Option<Sign>]) -> (Status, Option<Sign>) {
    let mismatches = signs.iter().filter(|s| s.is_none()).count();
    let completed: Vec<Sign> = signs.iter().flatten().copied().collect();
    let observed: std::collections::BTreeSet<&'static str> =
        completed.iter().map(|s| s.as_str()).collect();
    if mismatches > 0 || observed.len() > 1 {
        let sign = match observed.len() {
            0 => None,
            1 => Some(completed[0]),
            _ => Some(Sign::Undetermined),
        };
        return (Status::Fail, sign);
    }
    if completed.is_empty() {
        return (Status::Inconclusive, None);
    }
    (Status::Pass, Some(completed[0]))
}

/// Check the factorization identity `det(Q_{m,n}) = s * det(F_{m,n})^3 *
/// Res_{m,n}` over random assignments, requiring a single sign `s` across
/// all trials. Degenerate draws (vanishing factor) are redrawn.
///
/// Mutation target: the specialized quadric matrix.
pub fn factorization_identity(
    m: i64,
    n: i64,
    cfg: &TrialConfig,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let field = cfg.field()?;
    let plane = tensor_moving_plane(m, n)?;
    let quad = tensor_moving_quadric(m, n)?;
    let support = plane.support().to_vec();
    let stream = format!("identity/{m}/{n}");
    let mut trials = Vec::new();
    let mut signs = Vec::new();
    let mut degenerate = 0u32;
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, &stream, trial as u64);
        let mut redraws = 0u32;
        let mut outcome = None;
        for _ in 0..MAX_REDRAWS {
            let asg = FieldAssignment::random(field, &support, &mut rng);
            let f = plane.specialize(&asg)?.det()?;
            let g1 = CoefficientGrid::from_assignment(&asg, 1, m, n)?;
            let g2 = CoefficientGrid::from_assignment(&asg, 2, m, n)?;
            let g3 = CoefficientGrid::from_assignment(&asg, 3, m, n)?;
            let r = tensor_resultant(&g1, &g2, &g3)?;
            if f == 0 || r == 0 {
                redraws += 1;
                continue;
            }
            let mut qm = quad.specialize(&asg)?;
            if let Some(ms) = cfg.mutation {
                corrupt_field_matrix(&mut qm, ms, "identity");
            }
            let q = qm.det()?;
            let rhs = field.mul(field.pow(f, 3), r);
            outcome = Some((redraws, sign_of(field, q, rhs), f, q, r));
            break;
        }
        match outcome {
            None => {
                degenerate += 1;
                trials.push(json!({"trial": trial, "redraws": redraws, "degenerate": true}));
            }
            Some((redraws, s, f, q, r)) => {
                trials.push(json!({
                    "trial": trial,
                    "redraws": redraws,
                    "sign": s.map(|s| s.as_str()).unwrap_or("mismatch"),
                    "det_plane": f.to_string(),
                    "det_quadric": q.to_string(),
                    "resultant": r.to_string(),
                }));
                signs.push(s);
            }
        }
    }
    let (status, sign) = conclude_signed(&signs);
    Ok(VerificationReport {
        check: "identity".into(),
        params: json!({"m": m, "n": n}),
        status,
        sign,
        observed: json!({
            "identity_degree": 18 * m * n,
            "degenerate_trials": degenerate,
        }),
        trials,
        config: cfg.echo(),
        timing_ms: None,
    }
    .with_timing(start))
}

fn target_value(
    target: DetTarget,
    m: i64,
    n: i64,
    plane: &LinearTemplate,
    quad: Option<&QuadricTemplate>,
    asg: &FieldAssignment,
    corrupt: Option<u64>,
) -> Result<u64, VerifyError> {
    let mut matrix = match target {
        DetTarget::Plane => plane.specialize(asg)?,
        DetTarget::Quadric => quad.expect("quadric template").specialize(asg)?,
        DetTarget::Resultant => {
            let g1 = CoefficientGrid::from_assignment(asg, 1, m, n)?;
            let g2 = CoefficientGrid::from_assignment(asg, 2, m, n)?;
            let g3 = CoefficientGrid::from_assignment(asg, 3, m, n)?;
            dixon_matrix(&dixon_polynomial(&g1, &g2, &g3)?, m, n)
        }
    };
    if let Some(ms) = corrupt {
        corrupt_field_matrix(&mut matrix, ms, &format!("multidegree/{target}"));
    }
    Ok(matrix.det()?)
}

/// Check that scaling one block's coefficients by `lambda` scales the
/// chosen determinant by `lambda^d` with the structural exponent `d`, at
/// `LAMBDA_CHECKS` random scaling factors per trial.
///
/// Mutation target: the base (unscaled) specialized matrix.
pub fn block_degree(
    m: i64,
    n: i64,
    target: DetTarget,
    block: u8,
    cfg: &TrialConfig,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    if !(1..=4).contains(&block) {
        return Err(VerifyError::InvalidBlock(block));
    }
    let field = cfg.field()?;
    let plane = tensor_moving_plane(m, n)?;
    let quad = match target {
        DetTarget::Quadric => Some(tensor_moving_quadric(m, n)?),
        _ => None,
    };
    let support = plane.support().to_vec();
    let expected = expected_block_degree(target, block, m, n);
    let stream = format!("multidegree/{target}/{block}/{m}/{n}");
    let mut trials = Vec::new();
    let mut degenerate = 0u32;
    let mut failures = 0u32;
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, &stream, trial as u64);
        let mut redraws = 0u32;
        let mut outcome = None;
        for _ in 0..MAX_REDRAWS {
            let asg = FieldAssignment::random(field, &support, &mut rng);
            let clean = target_value(target, m, n, &plane, quad.as_ref(), &asg, None)?;
            if clean == 0 {
                redraws += 1;
                continue;
            }
            let base = match cfg.mutation {
                Some(ms) => target_value(target, m, n, &plane, quad.as_ref(), &asg, Some(ms))?,
                None => clean,
            };
            let mut ok = true;
            for _ in 0..LAMBDA_CHECKS {
                let lambda = field.rand_scaling(&mut rng);
                let scaled_asg = asg.scale_block(block, lambda);
                let v = target_value(target, m, n, &plane, quad.as_ref(), &scaled_asg, None)?;
                if v != field.mul(field.pow(lambda, expected), base) {
                    ok = false;
                }
            }
            outcome = Some((redraws, ok));
            break;
        }
        match outcome {
            None => {
                degenerate += 1;
                trials.push(json!({"trial": trial, "redraws": redraws, "degenerate": true}));
            }
            Some((redraws, ok)) => {
                if !ok {
                    failures += 1;
                }
                trials.push(json!({"trial": trial, "redraws": redraws, "ok": ok}));
            }
        }
    }
    let status = if degenerate == cfg.trials {
        Status::Inconclusive
    } else if failures > 0 {
        Status::Fail
    } else {
        Status::Pass
    };
    Ok(VerificationReport {
        check: "multidegree".into(),
        params: json!({"m": m, "n": n, "target": target.to_string(), "block": block}),
        status,
        sign: None,
        observed: json!({"exponent": expected, "degenerate_trials": degenerate}),
        trials,
        config: cfg.echo(),
        timing_ms: None,
    }
    .with_timing(start))
}

/// Check weight homogeneity of `det F`: replacing `c_{ia}` by
/// `lambda^{w(a)} c_{ia}` scales the determinant by `lambda` to the
/// structural weight (`2m^2 n`, `2mn^2`, or `4mn` for uniform scaling).
///
/// Mutation target: the base specialized matrix.
pub fn weight_homogeneity(
    m: i64,
    n: i64,
    scaling: ScalingWeight,
    cfg: &TrialConfig,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let field = cfg.field()?;
    let plane = tensor_moving_plane(m, n)?;
    let support = plane.support().to_vec();
    let expected = expected_weight_exponent(scaling, m, n);
    let axis = match scaling {
        ScalingWeight::Axis(a) => Some(a),
        ScalingWeight::Uniform => None,
    };
    let stream = format!("isobaric/{scaling}/{m}/{n}");
    let mut trials = Vec::new();
    let mut degenerate = 0u32;
    let mut failures = 0u32;
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, &stream, trial as u64);
        let mut redraws = 0u32;
        let mut outcome = None;
        for _ in 0..MAX_REDRAWS {
            let asg = FieldAssignment::random(field, &support, &mut rng);
            let clean = plane.specialize(&asg)?.det()?;
            if clean == 0 {
                redraws += 1;
                continue;
            }
            let base = match cfg.mutation {
                Some(ms) => {
                    let mut mat = plane.specialize(&asg)?;
                    corrupt_field_matrix(&mut mat, ms, "isobaric");
                    mat.det()?
                }
                None => clean,
            };
            let mut ok = true;
            for _ in 0..LAMBDA_CHECKS {
                let lambda = field.rand_scaling(&mut rng);
                let v = plane.specialize(&asg.scale_weight(axis, lambda))?.det()?;
                if v != field.mul(field.pow(lambda, expected), base) {
                    ok = false;
                }
            }
            outcome = Some((redraws, ok));
            break;
        }
        match outcome {
            None => {
                degenerate += 1;
                trials.push(json!({"trial": trial, "redraws": redraws, "degenerate": true}));
            }
            Some((redraws, ok)) => {
                if !ok {
                    failures += 1;
                }
                trials.push(json!({"trial": trial, "redraws": redraws, "ok": ok}));
            }
        }
    }
    let status = if degenerate == cfg.trials {
        Status::Inconclusive
    } else if failures > 0 {
        Status::Fail
    } else {
        Status::Pass
    };
    Ok(VerificationReport {
        check: "isobaric".into(),
        params: json!({"m": m, "n": n, "weight": scaling.to_string()}),
        status,
        sign: None,
        observed: json!({"exponent": expected, "degenerate_trials": degenerate}),
        trials,
        config: cfg.echo(),
        timing_ms: None,
    }
    .with_timing(start))
}

/// Check the corner specialization: with random values on the four corner
/// coefficients and zeros elsewhere, `det F` collapses to `±Delta^{mn}`
/// where `Delta` is the 4x4 corner determinant; the sign must be constant
/// across trials.
///
/// Mutation target: the specialized (corner-assigned) plane matrix.
pub fn corner_power(m: i64, n: i64, cfg: &TrialConfig) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let field = cfg.field()?;
    let plane = tensor_moving_plane(m, n)?;
    let corner = corner_template(m, n)?;
    let stream = format!("corner/{m}/{n}");
    let mut trials = Vec::new();
    let mut signs = Vec::new();
    let mut degenerate = 0u32;
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, &stream, trial as u64);
        let mut redraws = 0u32;
        let mut outcome = None;
        for _ in 0..MAX_REDRAWS {
            let asg = FieldAssignment::corner_random(field, m, n, &mut rng);
            let delta = corner.specialize(&asg)?.det()?;
            if delta == 0 {
                redraws += 1;
                continue;
            }
            let mut fm = plane.specialize(&asg)?;
            if let Some(ms) = cfg.mutation {
                corrupt_field_matrix(&mut fm, ms, "corner");
            }
            let f = fm.det()?;
            let rhs = field.pow(delta, (m * n) as u64);
            outcome = Some((redraws, sign_of(field, f, rhs), delta, f));
            break;
        }
        match outcome {
            None => {
                degenerate += 1;
                trials.push(json!({"trial": trial, "redraws": redraws, "degenerate": true}));
            }
            Some((redraws, s, delta, f)) => {
                trials.push(json!({
                    "trial": trial,
                    "redraws": redraws,
                    "sign": s.map(|s| s.as_str()).unwrap_or("mismatch"),
                    "corner_det": delta.to_string(),
                    "det_plane": f.to_string(),
                }));
                signs.push(s);
            }
        }
    }
    let (status, sign) = conclude_signed(&signs);
    Ok(VerificationReport {
        check: "corner".into(),
        params: json!({"m": m, "n": n}),
        status,
        sign,
        observed: json!({"power": m * n, "degenerate_trials": degenerate}),
        trials,
        config: cfg.echo(),
        timing_ms: None,
    }
    .with_timing(start))
}

/// Check the deformation valuation: multiply the coefficient layer whose
/// chosen exponent coordinate vanishes by `t` and require the lowest
/// `t`-exponent of `det F` to be `2n` (axis 1) resp. `2m` (axis 2). The
/// determinant is computed by evaluation/interpolation over `F_p[t]`.
///
/// A draw whose observed valuation exceeds the expected one has a vanishing
/// lowest coefficient and is redrawn; persistent vanishing fails the trial.
///
/// Mutation target: one entry in a forced-`t` column of the deformed
/// matrix, shifted by a nonzero constant.
pub fn t_valuation(
    m: i64,
    n: i64,
    axis: Axis,
    cfg: &TrialConfig,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let field = cfg.field()?;
    let plane = tensor_moving_plane(m, n)?;
    let support = plane.support().to_vec();
    let expected = expected_t_valuation(axis, m, n);
    let forced_cols: Vec<usize> = plane
        .cols()
        .iter()
        .enumerate()
        .filter(|(_, b)| axis.coord(**b) == 0)
        .map(|(c, _)| c)
        .collect();
    let stream = format!("valuation/{axis}/{m}/{n}");
    let mut trials = Vec::new();
    let mut failures = 0u32;
    let mut observed_vals = std::collections::BTreeSet::new();
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, &stream, trial as u64);
        let mut redraws = 0u32;
        let mut outcome = None;
        for _ in 0..MAX_REDRAWS {
            let pasg = PolyAssignment::t_layer_random(field, &support, axis, &mut rng);
            let mut pm = plane.specialize_poly(&pasg)?;
            if let Some(ms) = cfg.mutation {
                corrupt_poly_matrix(&mut pm, &forced_cols, ms);
            }
            let bound = pm.rows() * pm.max_entry_degree().max(1);
            let det = pm.det_interpolated(bound)?;
            let val = match det.valuation() {
                None => {
                    redraws += 1;
                    continue;
                }
                Some(v) => v,
            };
            if val > expected && cfg.mutation.is_none() {
                // lowest coefficient vanished for this draw
                redraws += 1;
                continue;
            }
            outcome = Some((redraws, val));
            break;
        }
        match outcome {
            None => {
                // persistent vanishing is a failure, not an inconclusive draw
                failures += 1;
                trials.push(json!({
                    "trial": trial,
                    "redraws": redraws,
                    "persistent_vanishing": true,
                }));
            }
            Some((redraws, val)) => {
                observed_vals.insert(val);
                if val != expected {
                    failures += 1;
                }
                trials.push(json!({
                    "trial": trial,
                    "redraws": redraws,
                    "valuation": val,
                    "ok": val == expected,
                }));
            }
        }
    }
    let status = if failures > 0 {
        Status::Fail
    } else {
        Status::Pass
    };
    Ok(VerificationReport {
        check: "valuation".into(),
        params: json!({"m": m, "n": n, "axis": axis.index()}),
        status,
        sign: None,
        observed: json!({
            "expected_valuation": expected,
            "observed_valuations": observed_vals.iter().collect::<Vec<_>>(),
        }),
        trials,
        config: cfg.echo(),
        timing_ms: None,
    }
    .with_timing(start))
}

fn corrupt_poly_matrix(pm: &mut PolyMatrix, forced_cols: &[usize], mutation_seed: u64) {
    let mut rng = trial_rng(mutation_seed, "mutation/valuation", 0);
    let r = rng.gen_range(0..pm.rows());
    let c = forced_cols[rng.gen_range(0..forced_cols.len())];
    let delta = pm.field().rand_nonzero(&mut rng);
    let bumped = pm
        .get(r, c)
        .add(&UniPoly::constant(pm.field(), delta))
        .expect("same field");
    pm.set(r, c, bumped);
}

/// Exact symbolic checks on the 4x4 base case: its determinant has 24
/// terms, all coefficients ±1, content 1, total degree 4, both coordinate
/// weights 2, and degree 1 in each coefficient block.
///
/// Mutation target: one entry of the symbolic matrix, shifted by a small
/// nonzero integer constant.
pub fn symbolic_base_case(cfg: &TrialConfig) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let plane = tensor_moving_plane(1, 1)?;
    let (universe, mut matrix) = plane.symbolic_matrix();
    let nvars = universe.len();
    if let Some(ms) = cfg.mutation {
        let mut rng = trial_rng(ms, "mutation/symbolic", 0);
        let r = rng.gen_range(0..matrix.len());
        let c = rng.gen_range(0..matrix.len());
        let bump = rng.gen_range(1..=9i64);
        matrix[r][c] = matrix[r][c]
            .add(&crate::exactalg::IntMultiPoly::constant(nvars, bump))
            .expect("same universe");
    }
    let det = symbolic_det(&matrix)?;
    let terms = det.num_terms();
    let unit_coeffs = det
        .terms()
        .all(|(_, c)| c.abs() == num_bigint::BigInt::from(1));
    let content = det.content();
    let total: Vec<i64> = det.total_degrees().into_iter().collect();
    let w1: Vec<i64> = det
        .weighted_term_degrees(&universe.iter().map(|u| u.point.a1).collect::<Vec<_>>())
        .into_iter()
        .collect();
    let w2: Vec<i64> = det
        .weighted_term_degrees(&universe.iter().map(|u| u.point.a2).collect::<Vec<_>>())
        .into_iter()
        .collect();
    let mut block_degrees = Vec::new();
    for block in 1..=4u8 {
        let w: Vec<i64> = universe
            .iter()
            .map(|u| if u.block == block { 1 } else { 0 })
            .collect();
        block_degrees.push(
            det.weighted_term_degrees(&w)
                .into_iter()
                .collect::<Vec<_>>(),
        );
    }
    let pass = terms == 24
        && unit_coeffs
        && content == num_bigint::BigInt::from(1)
        && total == vec![4]
        && w1 == vec![2]
        && w2 == vec![2]
        && block_degrees.iter().all(|d| *d == vec![1]);
    Ok(VerificationReport {
        check: "symbolic".into(),
        params: json!({"m": 1, "n": 1}),
        status: if pass { Status::Pass } else { Status::Fail },
        sign: None,
        observed: json!({
            "terms": terms,
            "unit_coefficients": unit_coeffs,
            "content": content.to_string(),
            "total_degrees": total,
            "weight_degrees_axis1": w1,
            "weight_degrees_axis2": w2,
            "block_degrees": block_degrees,
        }),
        trials: vec![],
        config: cfg.echo(),
        timing_ms: None,
    }
    .with_timing(start))
}
