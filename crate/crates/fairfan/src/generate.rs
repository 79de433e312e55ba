//! Seeded instance and candidate generators.

use std::collections::BTreeSet;

use fairfan_core::geometry::{Flat, PlaneFrame, Point};
use fairfan_core::measures::{Atom, DiscreteMeasure, MeasureFamily};
use fairfan_core::partition::{ConvexPartition, Provenance};
use fairfan_core::rational::{frac, int, to_f64};
use fairfan_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Distinct integer points in `[-span, span]^d`.
fn distinct_points(rng: &mut ChaCha8Rng, d: usize, count: usize, span: i64) -> Vec<Point> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let coords: Vec<i64> = (0..d).map(|_| rng.random_range(-span..=span)).collect();
        if seen.insert(coords.clone()) {
            out.push(Point::from_ints(&coords));
        }
    }
    out
}

/// `m` measures of one to three atoms each, integer coordinates in
/// `[-100, 100]^d`, weights 1 to 9, all atoms distinct; bump radius a
/// quarter of the closest pair.
pub fn random_family(d: usize, m: usize, seed: u64) -> CliResult<MeasureFamily> {
    if d == 0 || m == 0 {
        return Err(CliError::Usage("need d ≥ 1 and m ≥ 1".into()));
    }
    let mut rng = rng(seed);
    let sizes: Vec<usize> = (0..m).map(|_| rng.random_range(1..=3)).collect();
    let mut points = distinct_points(&mut rng, d, sizes.iter().sum(), 100).into_iter();
    let mut measures = Vec::with_capacity(m);
    for (j, &k) in sizes.iter().enumerate() {
        let atoms = (0..k)
            .map(|_| Atom::new(points.next().expect("enough points"), int(rng.random_range(1..=9))))
            .collect();
        measures.push(DiscreteMeasure::new(format!("mu{}", j + 1), atoms, int(1))?);
    }
    Ok(MeasureFamily::new(measures)?.with_default_radius()?)
}

/// Two planar measures of `atoms` atoms each on a shared grid.
pub fn random_planar_pair(atoms: usize, seed: u64) -> CliResult<MeasureFamily> {
    let mut rng = rng(seed);
    let points = distinct_points(&mut rng, 2, 2 * atoms, 10_000);
    let measures = points
        .chunks(atoms)
        .enumerate()
        .map(|(j, chunk)| {
            let atoms = chunk
                .iter()
                .map(|p| Atom::new(p.clone(), int(rng.random_range(1..=9))))
                .collect();
            DiscreteMeasure::new(if j == 0 { "red" } else { "blue" }, atoms, int(1))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MeasureFamily::new(measures)?.with_default_radius()?)
}

/// Rescales every measure but the first so that measures `1..` share the
/// total of measure 1.
pub fn equalize_tail(family: &MeasureFamily) -> CliResult<MeasureFamily> {
    let target = family.measure(family.len().min(2) - 1).total();
    let measures = family
        .measures()
        .iter()
        .enumerate()
        .map(|(j, mu)| if j == 0 { Ok(mu.clone()) } else { mu.scaled(&(&target / mu.total())) })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MeasureFamily::new(measures)?)
}

fn jitter(rng: &mut ChaCha8Rng, radius: &Rational, parts: i64) -> Rational {
    // Strictly inside (-radius/2, radius/2) on a grid of `parts` steps.
    let k = rng.random_range(-(parts - 1)..parts);
    radius * frac(k, 2 * parts)
}

/// `n - 1` strictly increasing breakpoints on a 1/16 grid, a quarter of
/// them placed exactly on a bump centre or bump edge.
pub fn random_breakpoints(rng: &mut ChaCha8Rng, family: &MeasureFamily, n: usize) -> Vec<Rational> {
    let marks: Vec<Rational> = family
        .measures()
        .iter()
        .flat_map(|mu| {
            let r = mu.bump_radius().clone();
            mu.atoms()
                .iter()
                .flat_map(move |a| {
                    let x = a.point.coords()[0].clone();
                    [&x - &r, x.clone(), &x + &r]
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let lo = marks.iter().min().cloned().unwrap_or_else(|| int(0)) - int(1);
    let hi = marks.iter().max().cloned().unwrap_or_else(|| int(0)) + int(1);
    let steps = ((to_f64(&(&hi - &lo)) * 16.0) as i64).max(1);
    loop {
        let mut set = BTreeSet::new();
        while set.len() < n - 1 {
            let b = if rng.random_range(0..4) == 0 && !marks.is_empty() {
                marks[rng.random_range(0..marks.len())].clone()
            } else {
                &lo + frac(rng.random_range(0..=steps), 16)
            };
            set.insert(b);
        }
        let out: Vec<Rational> = set.into_iter().collect();
        if out.len() == n - 1 {
            return out;
        }
    }
}

/// A random `n`-fan whose apex passes through the first `d - 1` bumps of
/// the family, so every wedge meets them. Half of the rays aim at random
/// atoms of the remaining measures.
pub fn random_fan(rng: &mut ChaCha8Rng, family: &MeasureFamily, n: usize) -> Option<ConvexPartition> {
    let d = family.dim();
    let apex_points: Vec<Point> = family.measures()[..d - 1]
        .iter()
        .map(|mu| {
            let a = &mu.atoms()[rng.random_range(0..mu.atoms().len())].point;
            let r = mu.bump_radius().clone();
            let delta: Vec<Rational> = (0..d).map(|_| jitter(rng, &r, 64) / int(d as i64)).collect();
            a.offset(&delta)
        })
        .collect();
    let apex = Flat::through(&apex_points).ok()?;
    if apex.dim() + 2 != d {
        return None;
    }
    let frame = PlaneFrame::orthogonal_to(&apex).ok()?;
    let targets: Vec<&Point> = family.measures()[d - 1..]
        .iter()
        .flat_map(|mu| mu.atoms().iter().map(|a| &a.point))
        .collect();
    let mut rays: Vec<[Rational; 2]> = Vec::with_capacity(n);
    for _ in 0..n {
        let ray = if !targets.is_empty() && rng.random_bool(0.5) {
            let t = frame.coefficients(targets[rng.random_range(0..targets.len())]);
            let s = frac(rng.random_range(-8..=8), 64);
            [&t[0] + &s, &t[1] - &s]
        } else {
            [int(rng.random_range(-20..=20)), int(rng.random_range(-20..=20))]
        };
        if ray[0] == int(0) && ray[1] == int(0) {
            return None;
        }
        rays.push(ray);
    }
    rays.sort_by(|u, v| {
        let a = to_f64(&u[1]).atan2(to_f64(&u[0]));
        let b = to_f64(&v[1]).atan2(to_f64(&v[0]));
        a.total_cmp(&b)
    });
    let mut regions = Vec::with_capacity(n);
    for i in 0..n {
        regions.push(frame.wedge(&rays[i], &rays[(i + 1) % n]).ok()?);
    }
    let partition = ConvexPartition::new(d, regions, Provenance::Fan { apex, rays }).ok()?;
    partition.validate().ok()?;
    Some(partition)
}

/// `count` candidate partitions for an adversarial family: interval
/// partitions on the line, fans about the simplex bumps otherwise.
pub fn random_candidates(family: &MeasureFamily, n: usize, count: usize, seed: u64) -> Vec<ConvexPartition> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = if family.dim() == 1 {
            ConvexPartition::intervals(random_breakpoints(&mut rng, family, n)).ok()
        } else {
            random_fan(&mut rng, family, n)
        };
        out.extend(candidate);
    }
    out
}
