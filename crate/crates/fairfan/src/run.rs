//! One runner per construction: build, certify, report.

use fairfan_core::adversarial::{gen_adversarial, oracle_1d, verify_adversarial, CandidateOutcome};
use fairfan_core::arrangement::{build_poset, formula_checks, summarize, Variant};
use fairfan_core::fan::{build_fan, expected_anchor_counts};
use fairfan_core::measures::{coverage_counts, evaluate_matrix, MassMatrix, MeasureFamily};
use fairfan_core::partition::ConvexPartition;
use fairfan_core::pipelines::{
    epsilon_bound, equiparts_sum, fraction_pipeline, plan_alpha_groups, plan_epsilon_groups, coverage_pipeline,
    AuxKind, FractionReport, GroupPlan,
};
use fairfan_core::rational::int;
use fairfan_core::Rational;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::format::{rat, rats, to_json};
use crate::generate::{random_candidates, random_family};
use crate::poset::{to_dot, to_json_value, PosetJson};
use crate::render::render_svg;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    Fan,
    T5,
    T7,
    T8,
    Optimal,
    Poset,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub theorem: Theorem,
    pub d: Option<usize>,
    pub n: Option<usize>,
    pub c: Option<usize>,
    pub m: Option<usize>,
    pub alpha: Option<Rational>,
    pub seed: u64,
    pub family: Option<MeasureFamily>,
    pub mode: Option<String>,
    pub candidates: usize,
    pub cap: usize,
}

impl RunConfig {
    pub fn new(theorem: Theorem) -> Self {
        Self {
            theorem,
            d: None,
            n: None,
            c: None,
            m: None,
            alpha: None,
            seed: 0,
            family: None,
            mode: None,
            candidates: 1000,
            cap: fairfan_core::arrangement::DEFAULT_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: String,
    pub certified: bool,
    pub svg: Option<String>,
    pub dot: Option<String>,
}

fn need(v: Option<usize>, flag: &str) -> CliResult<usize> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

/// The input family, or a seeded random one of `m` measures.
fn family_or_random(config: &RunConfig, d: usize, m: usize) -> CliResult<MeasureFamily> {
    match &config.family {
        Some(f) => Ok(f.clone()),
        None => random_family(d, config.m.unwrap_or(m), config.seed),
    }
}

pub fn run(config: &RunConfig) -> CliResult<Outcome> {
    match config.theorem {
        Theorem::Fan => run_fan(config),
        Theorem::T5 => run_t5(config),
        Theorem::T7 | Theorem::T8 => run_fraction(config),
        Theorem::Optimal => run_optimal(config),
        Theorem::Poset => run_poset(config),
    }
}

fn matrix_json(m: &MassMatrix) -> Vec<Vec<String>> {
    m.entries.iter().map(|row| rats(row)).collect()
}

#[derive(Serialize)]
struct FanReport {
    construction: &'static str,
    d: usize,
    n: usize,
    c: usize,
    m: usize,
    apex_basepoint: Vec<String>,
    apex_directions: Vec<Vec<String>>,
    /// Ambient ray directions, counter-clockwise about the apex.
    rays: Vec<Vec<String>>,
    apex_measures: Vec<usize>,
    rotated_measure: usize,
    anchor_counts: Vec<usize>,
    expected_anchor_counts: Option<Vec<usize>>,
    coverage: Vec<usize>,
    masses: Vec<Vec<String>>,
    certified: bool,
}

fn run_fan(config: &RunConfig) -> CliResult<Outcome> {
    let d = config.family.as_ref().map(MeasureFamily::dim).or(config.d).unwrap_or(2);
    let (n, c) = (need(config.n, "n")?, need(config.c, "c")?);
    if c < d {
        return Err(fairfan_core::Error::Hypothesis("fan construction requires c ≥ d".into()).into());
    }
    let family = family_or_random(config, d, n * (c - d) + d)?;
    let fan = build_fan(&family, n, c)?;
    let partition = fan.to_partition()?;
    let valid = partition.validate().is_ok();
    let coverage = coverage_counts(&family, &partition, &int(0));
    let matrix = evaluate_matrix(&family, &partition)?;
    let anchor_counts = fan.anchor_counts();
    let expected = (c > d).then(|| expected_anchor_counts(family.len(), n, c, d));
    let certified = valid
        && coverage.iter().all(|&k| k >= c)
        && matrix.rows_conserved()
        && expected.as_ref().is_none_or(|e| e == &anchor_counts);
    let report = FanReport {
        construction: "fan",
        d,
        n,
        c,
        m: family.len(),
        apex_basepoint: rats(fan.apex.basepoint.coords()),
        apex_directions: fan.apex.directions.iter().map(|v| rats(v)).collect(),
        rays: fan.rays.iter().map(|r| rats(&fan.frame.lift(r))).collect(),
        apex_measures: fan.face.clone(),
        rotated_measure: fan.w,
        anchor_counts,
        expected_anchor_counts: expected,
        coverage,
        masses: matrix_json(&matrix),
        certified,
    };
    Ok(Outcome {
        report: to_json(&report)?,
        certified,
        svg: render_svg(&family, Some(&partition), &format!("{n}-fan, c = {c}")),
        dot: None,
    })
}

#[derive(Serialize)]
struct CoverageJson {
    construction: &'static str,
    auxiliary: &'static str,
    n: usize,
    c: usize,
    m: usize,
    first_mass: Vec<String>,
    first_target: String,
    auxiliary_mass: Vec<String>,
    auxiliary_target: String,
    supports_touched: Vec<usize>,
    coverage: Vec<usize>,
    masses: Vec<Vec<String>>,
    /// Present when measures 2..m share one total.
    equiparts_tail_sum: Option<bool>,
    equiparts_full_sum: Option<bool>,
    certified: bool,
}

fn run_t5(config: &RunConfig) -> CliResult<Outcome> {
    let (n, c) = (need(config.n, "n")?, need(config.c, "c")?);
    if c < 2 {
        return Err(fairfan_core::Error::Hypothesis("need c ≥ d = 2".into()).into());
    }
    let kind = match config.mode.as_deref() {
        None | Some("nu") => AuxKind::Nu,
        Some("point") => AuxKind::PointMeasure,
        Some(other) => return Err(CliError::Usage(format!("--mode must be point or nu, got {other}"))),
    };
    let family = family_or_random(config, 2, n * (c - 2) + 2)?;
    let (eq, report) = coverage_pipeline(&family, n, c, kind)?;
    let totals = family.totals();
    let equal_tail = totals.len() > 1 && totals[1..].iter().all(|t| t == &totals[1]);
    let (tail, full) = if equal_tail && kind == AuxKind::Nu {
        let tail: Vec<usize> = (1..family.len()).collect();
        let all: Vec<usize> = (0..family.len()).collect();
        (Some(equiparts_sum(&report.matrix, &tail)), Some(equiparts_sum(&report.matrix, &all)))
    } else {
        (None, None)
    };
    let certified = report.certified && tail != Some(false) && full != Some(false);
    let json = CoverageJson {
        construction: "equipartition with coverage",
        auxiliary: if kind == AuxKind::Nu { "nu" } else { "point" },
        n,
        c,
        m: family.len(),
        first_mass: rats(&report.first_mass),
        first_target: rat(&report.first_target),
        auxiliary_mass: rats(&report.aux_mass),
        auxiliary_target: rat(&report.aux_target),
        supports_touched: report.supports_touched.clone(),
        coverage: report.coverage.clone(),
        masses: matrix_json(&report.matrix),
        equiparts_tail_sum: tail,
        equiparts_full_sum: full,
        certified,
    };
    Ok(Outcome {
        report: to_json(&json)?,
        certified,
        svg: render_svg(&family, Some(&eq.partition), &format!("{n} cells, c = {c}")),
        dot: None,
    })
}

#[derive(Serialize)]
struct CertifiedMeasure {
    measure: usize,
    fraction: String,
}

#[derive(Serialize)]
struct GroupJson {
    /// `ν_k(C_i)`, equal to `m_k/n`.
    group_mass: String,
    /// `r_k - 1 + target·(m_k - r_k + 1)`
    threshold: String,
    measures: Vec<CertifiedMeasure>,
}

#[derive(Serialize)]
struct FractionJson {
    construction: &'static str,
    n: usize,
    c: usize,
    d: usize,
    m: usize,
    target: String,
    epsilon_floor: Option<String>,
    alpha_ratio: Option<String>,
    alpha_required_m: Option<usize>,
    alpha_integer_ratio_m: Option<usize>,
    quotas: Vec<usize>,
    groups: Vec<Vec<usize>>,
    regions: Vec<Vec<GroupJson>>,
    certified: bool,
}

fn fraction_regions(report: &FractionReport) -> Vec<Vec<GroupJson>> {
    report
        .regions
        .iter()
        .map(|r| {
            r.groups
                .iter()
                .map(|g| GroupJson {
                    group_mass: rat(&g.group_mass),
                    threshold: rat(&g.hypothesis),
                    measures: g
                        .measures
                        .iter()
                        .map(|(j, f)| CertifiedMeasure {
                            measure: *j,
                            fraction: rat(f),
                        })
                        .collect(),
                })
                .collect()
        })
        .collect()
}

fn run_fraction(config: &RunConfig) -> CliResult<Outcome> {
    let d = config.family.as_ref().map(MeasureFamily::dim).or(config.d).unwrap_or(2);
    let (n, c) = (need(config.n, "n")?, need(config.c, "c")?);
    let mut json = FractionJson {
        construction: "",
        n,
        c,
        d,
        m: 0,
        target: String::new(),
        epsilon_floor: None,
        alpha_ratio: None,
        alpha_required_m: None,
        alpha_integer_ratio_m: None,
        quotas: Vec::new(),
        groups: Vec::new(),
        regions: Vec::new(),
        certified: false,
    };
    let (plan, target, family): (GroupPlan, Rational, MeasureFamily) = if config.theorem == Theorem::T7 {
        let bound = epsilon_bound(n, c, d)?;
        let m = n * (c - d) + d;
        let family = family_or_random(config, d, m)?;
        let plan = plan_epsilon_groups(family.len(), n, c, d)?;
        json.construction = "epsilon fractions";
        json.epsilon_floor = Some(rat(&bound.floor));
        (plan, bound.epsilon, family)
    } else {
        let alpha = config
            .alpha
            .clone()
            .ok_or_else(|| CliError::Usage("--alpha is required".into()))?;
        let a = plan_alpha_groups(n, c, d, &alpha)?;
        let family = family_or_random(config, d, a.min_m())?;
        if family.len() < a.plan.total_size() {
            return Err(fairfan_core::Error::Hypothesis(format!(
                "alpha plan requires m ≥ {}, got {}",
                a.plan.total_size(),
                family.len()
            ))
            .into());
        }
        json.construction = "alpha fractions";
        json.alpha_ratio = Some(rat(&a.ratio));
        json.alpha_required_m = Some(a.required_m);
        json.alpha_integer_ratio_m = a.integer_ratio_m;
        (a.plan, alpha, family)
    };
    let (eq, report) = fraction_pipeline(&family, n, c, &plan, &target)?;
    json.m = family.len();
    json.target = rat(&target);
    json.quotas = plan.quotas.clone();
    json.groups = plan.groups.clone();
    json.regions = fraction_regions(&report);
    json.certified = report.certified;
    Ok(Outcome {
        report: to_json(&json)?,
        certified: report.certified,
        svg: render_svg(&family, Some(&eq.partition), &format!("{n} cells, fraction {}", rat(&target))),
        dot: None,
    })
}

#[derive(Serialize)]
struct CandidateJson {
    index: usize,
    outcome: &'static str,
    region: Option<usize>,
    coverage: Option<usize>,
    detail: Option<String>,
}

#[derive(Serialize)]
struct OptimalJson {
    construction: &'static str,
    d: usize,
    n: usize,
    c: usize,
    m: usize,
    /// Whether the interval oracle can serve every part along the line.
    line_feasible: bool,
    examined: usize,
    rejected: usize,
    witnessed: usize,
    counterexamples: Vec<usize>,
    candidates: Vec<CandidateJson>,
    certified: bool,
}

fn candidate_json(index: usize, o: &CandidateOutcome) -> CandidateJson {
    let (outcome, region, coverage, detail) = match o {
        CandidateOutcome::Rejected(why) => ("rejected", None, None, Some(why.clone())),
        CandidateOutcome::Witness { region, coverage } => ("witness", Some(*region), Some(*coverage), None),
        CandidateOutcome::Counterexample { coverage } => ("counterexample", None, None, Some(format!("{coverage:?}"))),
    };
    CandidateJson {
        index,
        outcome,
        region,
        coverage,
        detail,
    }
}

fn run_optimal(config: &RunConfig) -> CliResult<Outcome> {
    let d = config.family.as_ref().map(MeasureFamily::dim).or(config.d).unwrap_or(1);
    let (n, c) = (need(config.n, "n")?, need(config.c, "c")?);
    let family = match &config.family {
        Some(f) => f.clone(),
        None => gen_adversarial(d, n, c)?,
    };
    let candidates: Vec<ConvexPartition> = random_candidates(&family, n, config.candidates, config.seed);
    let first = candidates.first().cloned();
    let report = verify_adversarial(&family, n, c, candidates)?;
    let m = family.len();
    let certified = report.line_infeasible && report.counterexamples().is_empty();
    let json = OptimalJson {
        construction: "lower-bound family",
        d,
        n,
        c,
        m,
        line_feasible: oracle_1d(m + 1 - d, n, c + 1 - d),
        examined: report.examined(),
        rejected: report.rejected(),
        witnessed: report.witnessed(),
        counterexamples: report.counterexamples(),
        candidates: report
            .outcomes
            .iter()
            .enumerate()
            .map(|(i, o)| candidate_json(i, o))
            .collect(),
        certified,
    };
    Ok(Outcome {
        report: to_json(&json)?,
        certified,
        svg: render_svg(&family, first.as_ref(), &format!("lower-bound family, n = {n}, c = {c}")),
        dot: None,
    })
}

#[derive(Serialize)]
struct CheckJson {
    name: &'static str,
    applies: bool,
    expected: i64,
    found: i64,
    holds: bool,
}

#[derive(Serialize)]
struct PosetReport {
    construction: &'static str,
    m: usize,
    n: usize,
    c: usize,
    variant: String,
    elements: usize,
    hasse_edges: usize,
    order_complex_dim: i64,
    fiber_dim: i64,
    fiber_size: usize,
    has_top: bool,
    q_prime: Vec<Vec<usize>>,
    q_prime_dim: i64,
    checks: Vec<CheckJson>,
    notes: Vec<String>,
    poset: PosetJson,
    certified: bool,
}

fn run_poset(config: &RunConfig) -> CliResult<Outcome> {
    let (m, n, c) = (need(config.m, "m")?, need(config.n, "n")?, need(config.c, "c")?);
    let variant = match config.mode.as_deref() {
        None | Some("a") => Variant::A,
        Some("tilde") => Variant::ATilde,
        Some(other) => return Err(CliError::Usage(format!("--mode must be a or tilde, got {other}"))),
    };
    let poset = build_poset(m, n, c, variant, config.cap)?;
    let summary = summarize(m, n, c, variant, config.cap.max(1 << 20))?;
    let top = poset.top_mask();
    let image = poset.phi_image();
    let checks: Vec<CheckJson> = formula_checks(&summary)
        .into_iter()
        .map(|f| CheckJson {
            name: f.name,
            applies: f.applies,
            expected: f.expected,
            found: f.found,
            holds: f.holds(),
        })
        .collect();
    let consistent = summary.elements == poset.len() as u128
        && summary.poset_dim == poset.order_complex_dim()
        && summary.fiber_dim == poset.fiber_dim(top)
        && summary.has_top == image.has_top;
    let mut notes = Vec::new();
    let fiber_size = poset.fiber(top).len();
    if variant == Variant::A && (m, n, c) == (4, 2, 3) {
        notes.push(format!(
            "the fiber over the full column set has {fiber_size} elements: zeros in both columns need at least \
             2(m−c+1) = 4 zeros in 3 rows, forcing an all-zero row; a two-point fiber is not obtained"
        ));
    }
    if !consistent {
        notes.push("explicit enumeration and row-class summary disagree".into());
    }
    let certified = consistent && checks.iter().all(|c| c.holds);
    let report = PosetReport {
        construction: "intersection poset",
        m,
        n,
        c,
        variant: format!("{variant:?}"),
        elements: poset.len(),
        hasse_edges: poset.hasse.len(),
        order_complex_dim: poset.order_complex_dim(),
        fiber_dim: poset.fiber_dim(top),
        fiber_size,
        has_top: image.has_top,
        q_prime: image
            .sets
            .iter()
            .map(|&q| (0..n).filter(|&k| q >> k & 1 == 1).map(|k| k + 1).collect())
            .collect(),
        q_prime_dim: image.order_complex_dim(),
        checks,
        notes,
        poset: to_json_value(&poset),
        certified,
    };
    Ok(Outcome {
        report: to_json(&report)?,
        certified,
        svg: None,
        dot: Some(to_dot(&poset)),
    })
}

#[derive(Serialize)]
struct BatchReport {
    instances: Vec<serde_json::Value>,
    certified: bool,
}

/// Runs `count` instances with seeds `seed, seed + 1, …` on worker threads.
/// Instances are independent and the report lists them by index, so the
/// output does not depend on scheduling.
pub fn run_batch(config: &RunConfig, count: usize) -> CliResult<Outcome> {
    if config.family.is_some() {
        return Err(CliError::Usage("--batch generates its own instances; drop --in".into()));
    }
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(count.max(1));
    let mut slots: Vec<Option<CliResult<Outcome>>> = (0..count).map(|_| None).collect();
    std::thread::scope(|scope| {
        for (w, chunk) in slots.chunks_mut(count.div_ceil(workers).max(1)).enumerate() {
            let base = w * count.div_ceil(workers).max(1);
            scope.spawn(move || {
                for (i, slot) in chunk.iter_mut().enumerate() {
                    let mut c = config.clone();
                    c.seed = config.seed.wrapping_add((base + i) as u64);
                    *slot = Some(run(&c));
                }
            });
        }
    });
    let mut instances = Vec::with_capacity(count);
    let mut certified = true;
    for slot in slots {
        let outcome = slot.expect("every slot is filled")?;
        certified &= outcome.certified;
        instances.push(serde_json::from_str(&outcome.report)?);
    }
    let report = BatchReport { instances, certified };
    Ok(Outcome {
        report: to_json(&report)?,
        certified,
        svg: None,
        dot: None,
    })
}
