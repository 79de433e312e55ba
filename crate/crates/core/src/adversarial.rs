//! Families of `n(c-d)+d-1` single-bump measures on which every convex
//! `n`-partition equiparting the first `d-1` measures leaves some part with
//! positive mass in at most `c-1` of them, and the interval oracles behind
//! that bound.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::geometry::Point;
use crate::measures::{touches, Atom, DiscreteMeasure, MeasureFamily};
use crate::partition::{ConvexPartition, Provenance};
use crate::rational::frac;
use crate::{Error, Rational, Result};

/// Line bumps are spaced 2 apart, simplex vertices at least `√2` apart;
/// the radius is 1/8 of the line gap.
fn bump_radius() -> Rational {
    frac(1, 4)
}

pub fn adversarial_size(d: usize, n: usize, c: usize) -> Result<usize> {
    if d < 1 || n < 2 || c < d {
        return Err(Error::Hypothesis("need d ≥ 1, n ≥ 2 and c ≥ d".into()));
    }
    let m = n * (c - d) + d - 1;
    if m == 0 {
        return Err(Error::Hypothesis("the family would be empty (d = c = 1)".into()));
    }
    Ok(m)
}

fn single(label: String, point: Point) -> Result<DiscreteMeasure> {
    DiscreteMeasure::new(label, alloc::vec![Atom::new(point, Rational::one())], bump_radius())
}

/// Vertices of a `(d-2)`-simplex centred at `-e_d` in
/// `-e_d + span(e_1, …, e_{d-2})`: `2e_1, …, 2e_{d-2}, 0` shifted to their
/// centroid.
fn simplex_vertices(d: usize) -> Vec<Point> {
    let k = d - 1;
    let shift = frac(2, k as i64);
    (0..k)
        .map(|v| {
            let mut coords = alloc::vec![Rational::zero(); d];
            for (i, x) in coords.iter_mut().enumerate().take(d - 2) {
                *x = if i == v { frac(2, 1) } else { Rational::zero() } - &shift;
            }
            coords[d - 1] = -Rational::one();
            Point::new(coords)
        })
        .collect()
}

/// Positions `2i - (L-1)` on the line, centred at the origin of the line.
fn line_positions(len: usize) -> Vec<Rational> {
    (0..len)
        .map(|i| Rational::from_integer((2 * i as i64 - (len as i64 - 1)).into()))
        .collect()
}

/// The family for `d = 1`: `n(c-1)` bumps on the real line; for `d ≥ 2`:
/// `d-1` simplex bumps (measures `0..d-1`) followed by `n(c-d)` bumps on
/// the line `e_d + span(e_{d-1})`.
pub fn gen_adversarial(d: usize, n: usize, c: usize) -> Result<MeasureFamily> {
    let m = adversarial_size(d, n, c)?;
    let mut measures = Vec::with_capacity(m);
    if d == 1 {
        for (i, x) in line_positions(m).into_iter().enumerate() {
            measures.push(single(alloc::format!("bump{i}"), Point::new(alloc::vec![x]))?);
        }
        return MeasureFamily::new(measures);
    }
    for (i, v) in simplex_vertices(d).into_iter().enumerate() {
        measures.push(single(alloc::format!("simplex{i}"), v)?);
    }
    for (i, t) in line_positions(m - (d - 1)).into_iter().enumerate() {
        let mut coords = alloc::vec![Rational::zero(); d];
        coords[d - 2] = t;
        coords[d - 1] = Rational::one();
        measures.push(single(alloc::format!("line{i}"), Point::new(coords))?);
    }
    MeasureFamily::new(measures)
}

/// Whether the bump balls of a family are pairwise disjoint.
pub fn bumps_disjoint(family: &MeasureFamily) -> bool {
    let balls: Vec<(&Point, &Rational)> = family
        .measures()
        .iter()
        .flat_map(|mu| mu.atoms().iter().map(move |a| (&a.point, mu.bump_radius())))
        .collect();
    balls.iter().enumerate().all(|(i, (p, r))| {
        balls[i + 1..].iter().all(|(q, s)| {
            let reach = *r + *s;
            p.distance_sq(q) > &reach * &reach
        })
    })
}

/// Whether `m` bumps in a row can be covered by `n` consecutive intervals,
/// neighbours sharing at most one bump, each interval meeting at least `c`
/// bumps.
pub fn oracle_1d(m: usize, n: usize, c: usize) -> bool {
    if c == 0 {
        return true;
    }
    if n == 0 || m < c {
        return false;
    }
    // reach[p]: the intervals placed so far can end exactly at bump p.
    let mut reach = alloc::vec![false; m];
    for b in c - 1..m {
        reach[b] = true;
    }
    for _ in 1..n {
        let mut next = alloc::vec![false; m];
        for p in (0..m).filter(|&p| reach[p]) {
            // Sharing bump p gives the widest choice.
            for b in p + c - 1..m {
                next[b] = true;
            }
        }
        reach = next;
    }
    reach.iter().any(|&r| r)
}

pub fn oracle_1d_closed_form(m: usize, n: usize, c: usize) -> bool {
    c == 0 || m >= n * (c - 1) + 1
}

/// Minimum coverage over all interval partitions of `m` bumps into `n`
/// intervals, maximised, by trying every combinatorial placement of the
/// `n-1` breakpoints: each lies in one of the `m+1` gaps or inside one of
/// the `m` bumps.
pub fn exhaustive_1d(m: usize, n: usize) -> usize {
    let slots = 2 * m + 1;
    let mut best = 0;
    let mut cuts = alloc::vec![0usize; n.saturating_sub(1)];
    loop {
        best = best.max(slot_min_coverage(m, &cuts));
        // Next nondecreasing sequence.
        let mut i = cuts.len();
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if cuts[i] + 1 < slots {
                let v = cuts[i] + 1;
                for c in &mut cuts[i..] {
                    *c = v;
                }
                break;
            }
        }
    }
}

/// Slot `2j` is the gap before bump `j`, slot `2j+1` the inside of bump `j`.
fn slot_min_coverage(m: usize, cuts: &[usize]) -> usize {
    let mut lo = 0;
    let mut min = usize::MAX;
    for i in 0..=cuts.len() {
        let hi = cuts.get(i).copied().unwrap_or(2 * m);
        let count = (0..m).filter(|&j| 2 * j + 1 >= lo && 2 * j + 1 <= hi).count();
        min = min.min(count);
        lo = hi;
    }
    min
}

/// `m - (d-1) ≥ n(c-d) + 1`, the interval condition along the line, and
/// `m ≥ n(c-d)+d`, the same inequality rearranged.
pub fn line_reduction(m: usize, n: usize, c: usize, d: usize) -> (bool, bool) {
    let lhs = m as i64 - (d as i64 - 1) >= n as i64 * (c as i64 - d as i64) + 1;
    let rhs = m as i64 >= n as i64 * (c as i64 - d as i64) + d as i64;
    (lhs, rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CandidateOutcome {
    /// Outside the theorem's quantifier.
    Rejected(String),
    /// Region `region` meets only `coverage ≤ c-1` supports.
    Witness { region: usize, coverage: usize },
    /// Every region meets at least `c` supports.
    Counterexample { coverage: Vec<usize> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AdversarialReport {
    pub outcomes: Vec<CandidateOutcome>,
    /// Whether the interval structure along the line is infeasible.
    pub line_infeasible: bool,
}

impl AdversarialReport {
    pub fn examined(&self) -> usize {
        self.outcomes.len()
    }

    pub fn rejected(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| matches!(o, CandidateOutcome::Rejected(_)))
            .count()
    }

    pub fn witnessed(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| matches!(o, CandidateOutcome::Witness { .. }))
            .count()
    }

    pub fn counterexamples(&self) -> Vec<usize> {
        self.outcomes
            .iter()
            .enumerate()
            .filter(|(_, o)| matches!(o, CandidateOutcome::Counterexample { .. }))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Coverage of each interval by single-bump measures on the line, without
/// the general polyhedral machinery.
fn interval_coverage(family: &MeasureFamily, breakpoints: &[Rational]) -> Vec<usize> {
    (0..=breakpoints.len())
        .map(|i| {
            let lo = i.checked_sub(1).map(|k| &breakpoints[k]);
            let hi = breakpoints.get(i);
            family
                .measures()
                .iter()
                .filter(|mu| {
                    let r = mu.bump_radius();
                    mu.atoms().iter().any(|a| {
                        let x = &a.point.coords()[0];
                        lo.is_none_or(|lo| lo < &(x + r)) && hi.is_none_or(|hi| hi > &(x - r))
                    })
                })
                .count()
        })
        .collect()
}

/// Runs candidate partitions against an adversarial family for dimension
/// `d`. Candidates with the wrong number of parts, invalid geometry, or a
/// part missing one of the first `d-1` measures are rejected.
pub fn verify_adversarial<I>(family: &MeasureFamily, n: usize, c: usize, candidates: I) -> Result<AdversarialReport>
where
    I: IntoIterator<Item = ConvexPartition>,
{
    let d = family.dim();
    let m = adversarial_size(d, n, c)?;
    if family.len() != m {
        return Err(Error::Hypothesis(alloc::format!(
            "expected {m} measures for d = {d}, n = {n}, c = {c}, got {}",
            family.len()
        )));
    }
    let mut report = AdversarialReport {
        line_infeasible: !oracle_1d(m + 1 - d, n, c + 1 - d),
        ..Default::default()
    };
    for candidate in candidates {
        report.outcomes.push(judge(family, n, c, &candidate));
    }
    Ok(report)
}

fn judge(family: &MeasureFamily, n: usize, c: usize, candidate: &ConvexPartition) -> CandidateOutcome {
    let d = family.dim();
    if candidate.dim() != d || candidate.len() != n {
        return CandidateOutcome::Rejected("wrong dimension or number of parts".into());
    }
    if let Err(e) = candidate.validate() {
        return CandidateOutcome::Rejected(alloc::format!("{e}"));
    }
    let coverage = match candidate.provenance() {
        Provenance::Intervals { breakpoints } => interval_coverage(family, breakpoints),
        _ => {
            let regions = candidate.regions();
            let simplex = &family.measures()[..d - 1];
            if let Some(i) = regions
                .iter()
                .position(|r| simplex.iter().any(|mu| !touches(mu, r)))
            {
                return CandidateOutcome::Rejected(alloc::format!(
                    "part {i} misses a measure that must be equiparted"
                ));
            }
            regions
                .iter()
                .map(|r| family.measures().iter().filter(|mu| touches(mu, r)).count())
                .collect()
        }
    };
    match coverage.iter().position(|&k| k < c) {
        Some(region) => CandidateOutcome::Witness {
            region,
            coverage: coverage[region],
        },
        None => CandidateOutcome::Counterexample { coverage },
    }
}
