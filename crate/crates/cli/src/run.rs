//! Dispatch from a validated spec to the criteria and the oracle.

use lattice_sampling::criteria::{
    decide_orthogonality, decide_tightness, pair_group_sum, recheck_orthogonality_witness,
    recheck_tightness_witness, shared_group_sum, tightness_sum, OrthogonalityCriterion,
    OrthogonalityVerdict, OrthogonalityWitness, TightnessVerdict, TightnessWitness,
};
use lattice_sampling::cyclotomic::{ExponentialSum, DEFAULT_TOLERANCE};
use lattice_sampling::geometry::{Band, RatBox};
use lattice_sampling::lattice::{
    group_shifts, group_shifts_paired, DualPointInfo, ShiftGroup, ShiftKey,
};
use lattice_sampling::oracle::{verify_orthogonal, verify_tight, OracleConfig};
use lattice_sampling::rational::{parse_rational, to_f64, IntVector, RatVector, Rational};
use lattice_sampling::Error;
use num_bigint::BigInt;

use crate::report::{
    exit_code, ConfigReport, LatticeLine, OracleReport, OracleStatus, Report, Verdict,
    WitnessReport,
};
use crate::spec::{BoxEntry, ProblemSpec, Question, SpecError};

/// Command-line overrides. `None` falls back to the spec's oracle block, then
/// to the defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Flags {
    pub verify: bool,
    pub radius: Option<u64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
}

pub fn oracle_config(spec: &ProblemSpec, flags: &Flags) -> OracleConfig {
    let d = OracleConfig::default();
    let o = &spec.oracle;
    OracleConfig {
        radius: flags.radius.or(o.radius).unwrap_or(d.radius),
        trials: flags.trials.or(o.trials).unwrap_or(d.trials),
        seed: flags.seed.or(o.seed).unwrap_or(d.seed),
        tolerance: flags.tolerance.or(o.tolerance).unwrap_or(d.tolerance),
        resolution: o.resolution.unwrap_or(d.resolution),
        execution: d.execution,
    }
}

fn config_report(cfg: &OracleConfig) -> ConfigReport {
    ConfigReport {
        radius: cfg.radius,
        trials: cfg.trials,
        seed: cfg.seed,
        tolerance: cfg.tolerance,
        resolution: cfg.resolution,
        numeric_tolerance: DEFAULT_TOLERANCE,
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn int_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn key_strings(k: &ShiftKey) -> Vec<String> {
    match k {
        ShiftKey::Exact(v) => strings(v),
        ShiftKey::Numeric(v) => v.iter().map(|x| x.to_string()).collect(),
    }
}

fn band_entries(b: &Band) -> Vec<BoxEntry> {
    b.boxes()
        .iter()
        .map(|x| BoxEntry {
            lower: strings(x.lower()),
            upper: strings(x.upper()),
        })
        .collect()
}

fn sum_value(s: &ExponentialSum) -> [f64; 2] {
    let v = s.evaluate();
    [v.re, v.im]
}

fn empty_witness(kind: &str) -> WitnessReport {
    WitnessReport {
        kind: kind.into(),
        lattice: None,
        alpha: None,
        z: None,
        k: None,
        m: None,
        q: None,
        members: None,
        overlap: None,
        sum: None,
        sum_value: None,
    }
}

fn tightness_witness_report(w: &TightnessWitness) -> WitnessReport {
    WitnessReport {
        lattice: Some(w.lattice),
        alpha: Some(strings(&w.alpha)),
        z: Some(int_strings(&w.z)),
        members: Some(w.members.clone()),
        overlap: Some(band_entries(&w.overlap)),
        sum: w.sum.as_ref().map(ToString::to_string),
        sum_value: w.sum.as_ref().map(sum_value),
        ..empty_witness("dual-point")
    }
}

fn orthogonality_witness_report(w: &OrthogonalityWitness) -> WitnessReport {
    match w {
        OrthogonalityWitness::Translate { lattice, k } => WitnessReport {
            lattice: Some(*lattice),
            k: Some(int_strings(k)),
            ..empty_witness("translate")
        },
        OrthogonalityWitness::DualPoint {
            alpha,
            overlap,
            group,
            sum,
        } => WitnessReport {
            alpha: Some(strings(alpha)),
            q: Some(key_strings(&group.key)),
            members: Some(group.members.clone()),
            overlap: Some(band_entries(overlap)),
            sum: Some(sum.to_string()),
            sum_value: Some(sum_value(sum)),
            ..empty_witness("dual-point")
        },
        OrthogonalityWitness::IntegerShift { m, group, sum } => WitnessReport {
            m: Some(int_strings(m)),
            q: Some(key_strings(&group.key)),
            members: Some(group.members.clone()),
            sum: Some(sum.to_string()),
            sum_value: Some(sum_value(sum)),
            ..empty_witness("integer-shift")
        },
    }
}

/// Report for a spec that failed to parse or validate.
pub fn input_error_report(err: &SpecError) -> Report {
    let mut report = Report {
        name: None,
        question: None,
        verdict: Verdict::InputError,
        mode: None,
        criterion: None,
        k: None,
        per_lattice: Vec::new(),
        witness: None,
        oracle: None,
        config: None,
        error: Some(err.to_string()),
        exit_code: 0,
    };
    report.exit_code = exit_code(&report);
    report
}

fn base_report(spec: &ProblemSpec, cfg: &OracleConfig) -> Report {
    Report {
        name: spec.name.clone(),
        question: Some(spec.question.to_string()),
        verdict: Verdict::InputError,
        mode: None,
        criterion: None,
        k: None,
        per_lattice: Vec::new(),
        witness: None,
        oracle: None,
        config: Some(config_report(cfg)),
        error: None,
        exit_code: 0,
    }
}

fn finish_error(mut report: Report, err: Error) -> Report {
    report.verdict = match err {
        Error::NoCriterion(_) => Verdict::NoCriterion,
        _ => Verdict::InputError,
    };
    report.error = Some(err.to_string());
    report
}

fn tight_status(holds: bool, deviation: f64, spread: f64, tol: f64) -> OracleStatus {
    match (holds, deviation <= tol, spread > tol) {
        (true, true, _) => OracleStatus::Agree,
        (true, false, _) => OracleStatus::Disagree,
        (false, _, true) => OracleStatus::Agree,
        (false, _, false) => OracleStatus::Inconclusive,
    }
}

fn orthogonal_status(holds: bool, magnitude: f64, tol: f64) -> OracleStatus {
    match (holds, magnitude <= tol) {
        (true, true) => OracleStatus::Agree,
        (true, false) => OracleStatus::Disagree,
        (false, false) => OracleStatus::Agree,
        (false, true) => OracleStatus::Inconclusive,
    }
}

fn run_tight(spec: &ProblemSpec, flags: &Flags, cfg: &OracleConfig, mut report: Report) -> Report {
    let verdict: TightnessVerdict =
        match decide_tightness(&spec.band_e, &spec.system_a, DEFAULT_TOLERANCE) {
            Ok(v) => v,
            Err(e) => return finish_error(report, e),
        };
    report.verdict = if verdict.tight {
        Verdict::Tight
    } else {
        Verdict::NotTight
    };
    report.mode = Some(verdict.mode.to_string());
    report.criterion = Some(
        if spec.system_a.is_unshifted() {
            "unshifted"
        } else {
            "shifted"
        }
        .into(),
    );
    report.k = verdict.constant.as_ref().map(ToString::to_string);
    report.per_lattice = verdict
        .per_lattice
        .iter()
        .enumerate()
        .map(|(index, k)| LatticeLine {
            index,
            density: k.to_string(),
            orthogonal: None,
        })
        .collect();
    report.witness = verdict.witness.as_ref().map(tightness_witness_report);
    if flags.verify {
        match verify_tight(&spec.band_e, &spec.system_a, cfg) {
            Ok(est) => {
                report.oracle = Some(OracleReport {
                    expected: Some(est.expected),
                    deviation: Some(est.max_relative_deviation),
                    spread: Some(est.spread),
                    magnitude: None,
                    indicator_magnitude: None,
                    tail: est.tails.iter().copied().fold(0.0, f64::max),
                    status: tight_status(
                        verdict.tight,
                        est.max_relative_deviation,
                        est.spread,
                        cfg.tolerance,
                    ),
                })
            }
            Err(e) => return finish_error(report, e),
        }
    }
    report
}

fn run_orthogonal(
    spec: &ProblemSpec,
    flags: &Flags,
    cfg: &OracleConfig,
    mut report: Report,
) -> Report {
    let (f, b) = (
        spec.band_f
            .as_ref()
            .expect("validated orthogonality spec has band_f"),
        spec.system_b
            .as_ref()
            .expect("validated orthogonality spec has system_b"),
    );
    let a = &spec.system_a;
    let verdict: OrthogonalityVerdict =
        match decide_orthogonality(&spec.band_e, f, a, b, DEFAULT_TOLERANCE) {
            Ok(v) => v,
            Err(e) => return finish_error(report, e),
        };
    report.verdict = if verdict.orthogonal {
        Verdict::Orthogonal
    } else {
        Verdict::NotOrthogonal
    };
    report.mode = Some(verdict.mode.to_string());
    report.criterion = Some(verdict.criterion.to_string());
    report.per_lattice = a
        .iter()
        .enumerate()
        .map(|(index, l)| LatticeLine {
            index,
            density: l.density().to_string(),
            orthogonal: (verdict.criterion == OrthogonalityCriterion::Unshifted)
                .then(|| verdict.per_lattice[index]),
        })
        .collect();
    report.witness = verdict.witness.as_ref().map(orthogonality_witness_report);
    if flags.verify {
        match verify_orthogonal(&spec.band_e, f, a, b, cfg) {
            Ok(est) => {
                let scale = to_f64(&(spec.band_e.measure() * f.measure())).sqrt();
                report.oracle = Some(OracleReport {
                    expected: None,
                    deviation: None,
                    spread: None,
                    magnitude: Some(est.max_magnitude),
                    indicator_magnitude: Some(est.indicator.norm() / scale),
                    tail: est.tails.iter().copied().fold(0.0, f64::max),
                    status: orthogonal_status(verdict.orthogonal, est.max_magnitude, cfg.tolerance),
                })
            }
            Err(e) => return finish_error(report, e),
        }
    }
    report
}

/// Runs the analytic check and, with `flags.verify`, the oracle.
pub fn run(spec: &ProblemSpec, flags: &Flags) -> Report {
    let cfg = oracle_config(spec, flags);
    let report = base_report(spec, &cfg);
    let mut report = match spec.question {
        Question::Tight => run_tight(spec, flags, &cfg, report),
        Question::Orthogonal => run_orthogonal(spec, flags, &cfg, report),
    };
    report.exit_code = exit_code(&report);
    report
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RevalidationError {
    #[error("report has no witness")]
    NoWitness,
    #[error("witness field {0} is missing")]
    Missing(&'static str),
    #[error("witness field {field} is malformed: {message}")]
    Malformed {
        field: &'static str,
        message: String,
    },
    #[error("no shift class with members {0:?}")]
    UnknownClass(Vec<usize>),
    #[error("printed {field} {printed:?} does not match recomputed {fresh:?}")]
    Mismatch {
        field: &'static str,
        printed: String,
        fresh: String,
    },
    #[error("criteria error: {0}")]
    Criteria(String),
}

fn need<'a, T>(v: &'a Option<T>, field: &'static str) -> Result<&'a T, RevalidationError> {
    v.as_ref().ok_or(RevalidationError::Missing(field))
}

fn parse_rats(v: &[String], field: &'static str) -> Result<RatVector, RevalidationError> {
    v.iter()
        .map(|s| {
            parse_rational(s).map_err(|e| RevalidationError::Malformed {
                field,
                message: e.to_string(),
            })
        })
        .collect()
}

fn parse_ints(v: &[String], field: &'static str) -> Result<IntVector, RevalidationError> {
    v.iter()
        .map(|s| {
            s.parse::<BigInt>()
                .map_err(|e| RevalidationError::Malformed {
                    field,
                    message: e.to_string(),
                })
        })
        .collect()
}

fn parse_band(boxes: &[BoxEntry], dim: usize) -> Result<Band, RevalidationError> {
    let malformed = |e: Error| RevalidationError::Malformed {
        field: "overlap",
        message: e.to_string(),
    };
    let boxes = boxes
        .iter()
        .map(|b| {
            RatBox::new(
                parse_rats(&b.lower, "overlap")?,
                parse_rats(&b.upper, "overlap")?,
            )
            .map_err(malformed)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Band::new(dim, boxes).map_err(malformed)
}

fn criteria(e: Error) -> RevalidationError {
    RevalidationError::Criteria(e.to_string())
}

fn check_sum(w: &WitnessReport, fresh: &ExponentialSum) -> Result<(), RevalidationError> {
    let printed = need(&w.sum, "sum")?;
    let fresh = fresh.to_string();
    if printed != &fresh {
        return Err(RevalidationError::Mismatch {
            field: "sum",
            printed: printed.clone(),
            fresh,
        });
    }
    Ok(())
}

fn find_class(groups: Vec<ShiftGroup>, w: &WitnessReport) -> Result<ShiftGroup, RevalidationError> {
    let members = need(&w.members, "members")?;
    let group = groups
        .into_iter()
        .find(|g| &g.members == members)
        .ok_or_else(|| RevalidationError::UnknownClass(members.clone()))?;
    let q = key_strings(&group.key);
    if let Some(printed) = &w.q {
        if printed != &q {
            return Err(RevalidationError::Mismatch {
                field: "q",
                printed: printed.join(", "),
                fresh: q.join(", "),
            });
        }
    }
    Ok(group)
}

/// Rebuilds the witness printed in `report` from its fields alone and
/// re-checks it against the criteria. `Ok(true)` means the witness is a
/// genuine violation of the cited condition.
pub fn revalidate_witness(spec: &ProblemSpec, report: &Report) -> Result<bool, RevalidationError> {
    let w = report
        .witness
        .as_ref()
        .ok_or(RevalidationError::NoWitness)?;
    let d = spec.dimension;
    let tol = report
        .config
        .map_or(DEFAULT_TOLERANCE, |c| c.numeric_tolerance);
    let a = &spec.system_a;
    match spec.question {
        Question::Tight => {
            let alpha = parse_rats(need(&w.alpha, "alpha")?, "alpha")?;
            let members = need(&w.members, "members")?.clone();
            let sum = if w.sum.is_some() {
                let fresh = tightness_sum(
                    a,
                    &DualPointInfo {
                        alpha: alpha.clone(),
                        members: members.clone(),
                    },
                );
                check_sum(w, &fresh)?;
                Some(fresh)
            } else {
                None
            };
            let witness = TightnessWitness {
                lattice: *need(&w.lattice, "lattice")?,
                z: parse_ints(need(&w.z, "z")?, "z")?,
                overlap: parse_band(need(&w.overlap, "overlap")?, d)?,
                alpha,
                members,
                sum,
            };
            recheck_tightness_witness(&spec.band_e, a, &witness, tol).map_err(criteria)
        }
        Question::Orthogonal => {
            let f = spec
                .band_f
                .as_ref()
                .ok_or(RevalidationError::Missing("band_f"))?;
            let b = spec
                .system_b
                .as_ref()
                .ok_or(RevalidationError::Missing("system_b"))?;
            let witness = match w.kind.as_str() {
                "translate" => OrthogonalityWitness::Translate {
                    lattice: *need(&w.lattice, "lattice")?,
                    k: parse_ints(need(&w.k, "k")?, "k")?,
                },
                "dual-point" => {
                    let alpha = parse_rats(need(&w.alpha, "alpha")?, "alpha")?;
                    let info = DualPointInfo {
                        members: a.members(&alpha),
                        alpha: alpha.clone(),
                    };
                    let gammas = b.shifts();
                    let group = find_class(group_shifts(&info, &a.shifts(), &gammas).groups, w)?;
                    let sum = shared_group_sum(a, &gammas, &group, &alpha);
                    check_sum(w, &sum)?;
                    OrthogonalityWitness::DualPoint {
                        overlap: parse_band(need(&w.overlap, "overlap")?, d)?,
                        alpha,
                        group,
                        sum,
                    }
                }
                "integer-shift" => {
                    let (Some(am), Some(bm)) = (a.single_matrix(), b.single_matrix()) else {
                        return Ok(false);
                    };
                    let m = parse_ints(need(&w.m, "m")?, "m")?;
                    let gammas = b.shifts();
                    let groups =
                        group_shifts_paired(am, &a.shifts(), bm, &gammas).map_err(criteria)?;
                    let group = find_class(groups.groups, w)?;
                    let v = bm.dual().map_err(criteria)?.mul_int_vec(&m);
                    let sum = pair_group_sum(&gammas, &group, &v);
                    check_sum(w, &sum)?;
                    OrthogonalityWitness::IntegerShift { m, group, sum }
                }
                other => {
                    return Err(RevalidationError::Malformed {
                        field: "kind",
                        message: format!("unknown witness kind {other:?}"),
                    })
                }
            };
            recheck_orthogonality_witness(&spec.band_e, f, a, b, &witness, tol).map_err(criteria)
        }
    }
}
