//! Rotating-hyperplane fans.
//!
//! One anchor point per measure, a ridge `F` of their hull, and a hyperplane
//! through `F` rotated until `c - d` anchors lie strictly on its positive
//! side. The remaining anchors, read in angular order about `F`, pick out the
//! fan's half-hyperplanes.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::geometry::{
    cross2, dot2, find_ridge, in_general_position, project_about_flat, AngularProjection, ConvexRegion, Flat,
    PlaneFrame, Point,
};
use crate::measures::MeasureFamily;
use crate::partition::{ConvexPartition, Provenance};
use crate::rational::int;
use crate::{Error, Rational, Result};

/// Largest exponent tried when shrinking the anchor perturbation.
const MAX_HALVINGS: u32 = 96;

/// One anchor per measure: the centre of its heaviest atom, nudged along
/// the moment curve until no `d + 1` anchors share a hyperplane. Every
/// nudge is shorter than the smallest bump radius.
pub fn choose_anchors(family: &MeasureFamily) -> Result<Vec<Point>> {
    let d = family.dim();
    let m = family.len();
    if m < d {
        return Err(Error::TooFewPoints { needed: d, got: m });
    }
    let base: Vec<Point> = family
        .measures()
        .iter()
        .map(|mu| mu.atoms()[mu.anchor_index()].point.clone())
        .collect();
    if in_general_position(&base) {
        return Ok(base);
    }
    let radius = family
        .measures()
        .iter()
        .map(|mu| mu.bump_radius().clone())
        .min()
        .unwrap_or_else(Rational::one);
    let offsets: Vec<Vec<Rational>> = (0..m)
        .map(|j| {
            let t = BigInt::from(j + 1);
            let mut power = BigInt::one();
            (0..d)
                .map(|_| {
                    power *= &t;
                    Rational::from_integer(power.clone())
                })
                .collect()
        })
        .collect();
    // ‖offset‖₂ ≤ ‖offset‖₁ ≤ bound, so δ·bound < r keeps each nudge inside.
    let bound = offsets
        .iter()
        .map(|o| o.iter().fold(Rational::zero(), |acc, v| acc + v))
        .max()
        .unwrap_or_else(Rational::one);
    let mut delta = radius / bound / int(2);
    for _ in 0..MAX_HALVINGS {
        let moved: Vec<Point> = base
            .iter()
            .zip(&offsets)
            .map(|(p, o)| p.offset(&o.iter().map(|v| v * &delta).collect::<Vec<_>>()))
            .collect();
        if in_general_position(&moved) {
            return Ok(moved);
        }
        delta /= int(2);
    }
    Err(Error::PerturbationFailed)
}

/// A hyperplane through the apex flat, rotated away from the supporting
/// position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotatedCut {
    /// Image positions in counter-clockwise order, starting next to the
    /// supporting boundary.
    pub order: Vec<usize>,
    /// Image position of the point on the rotated hyperplane.
    pub w: usize,
    /// Plane direction of `w`; the hyperplane is the line it spans.
    pub direction: [Rational; 2],
}

impl RotatedCut {
    /// Strictly on the positive side: clockwise of `direction`.
    pub fn strictly_positive(&self, coeffs: &[Rational; 2]) -> bool {
        cross2(&self.direction, coeffs).is_negative()
    }

    pub fn on_hyperplane(&self, coeffs: &[Rational; 2]) -> bool {
        cross2(&self.direction, coeffs).is_zero()
    }
}

/// Counter-clockwise order of the images, which must lie in an open
/// half-plane, starting from the most clockwise one.
pub fn angular_order(projection: &AngularProjection) -> Result<Vec<usize>> {
    let images = &projection.images;
    let k = images.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let reference = images[0].coords.clone();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| crate::geometry::angular_cmp(&reference, &images[a].coords, &images[b].coords));
    if k == 1 {
        return Ok(order);
    }
    let mut start = None;
    for s in 0..k {
        let u = &images[order[(s + k - 1) % k]].coords;
        let v = &images[order[s]].coords;
        let c = cross2(u, v);
        if c.is_zero() {
            if dot2(u, v).is_positive() {
                return Err(Error::Degenerate);
            }
            return Err(Error::NotAFace);
        }
        // A counter-clockwise gap wider than a half-turn.
        if c.is_negative() {
            if start.is_some() {
                return Err(Error::NotAFace);
            }
            start = Some(s);
        }
    }
    let start = start.ok_or(Error::NotAFace)?;
    order.rotate_left(start);
    Ok(order)
}

/// Rotates the supporting hyperplane about the flat until `target` images
/// lie strictly on its positive side and one more lies on it.
pub fn rotate_to_cut(projection: &AngularProjection, target: usize) -> Result<RotatedCut> {
    let k = projection.images.len();
    if target >= k {
        return Err(Error::TooFewPoints {
            needed: target + 1,
            got: k,
        });
    }
    let order = angular_order(projection)?;
    let w = order[target];
    let direction = projection.images[w].coords.clone();
    Ok(RotatedCut { order, w, direction })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanPartition {
    pub apex: Flat,
    pub frame: PlaneFrame,
    /// Counter-clockwise ray directions in frame coefficients.
    pub rays: Vec<[Rational; 2]>,
    pub regions: Vec<ConvexRegion>,
    /// The (possibly nudged) anchor of every measure.
    pub anchors: Vec<Point>,
    /// Measures whose anchors span the apex.
    pub face: Vec<usize>,
    /// Measure whose anchor lies on the rotated hyperplane.
    pub w: usize,
}

impl FanPartition {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn to_partition(&self) -> Result<ConvexPartition> {
        ConvexPartition::new(
            self.apex.ambient_dim(),
            self.regions.clone(),
            Provenance::Fan {
                apex: self.apex.clone(),
                rays: self.rays.clone(),
            },
        )
    }

    /// Anchors in each closed region, tested directly in ℝ^d.
    pub fn anchor_counts(&self) -> Vec<usize> {
        self.regions
            .iter()
            .map(|r| self.anchors.iter().filter(|a| r.contains_closed(a)).count())
            .collect()
    }
}

/// Builds an `n`-fan each of whose regions meets the support of at least
/// `c` measures. Needs `d ≥ 2`, `n ≥ 2`, `c ≥ d` and `m ≥ n(c-d)+d`.
pub fn build_fan(family: &MeasureFamily, n: usize, c: usize) -> Result<FanPartition> {
    let d = family.dim();
    let m = family.len();
    if d < 2 {
        return Err(Error::Hypothesis("fans need dimension d ≥ 2".into()));
    }
    if n < 2 {
        return Err(Error::Hypothesis("fans need n ≥ 2 regions".into()));
    }
    if c < d {
        return Err(Error::Hypothesis("fans need c ≥ d".into()));
    }
    if m < n * (c - d) + d {
        return Err(Error::Hypothesis(alloc::format!(
            "fan construction requires m ≥ n(c−d)+d = {}, got m = {m}",
            n * (c - d) + d
        )));
    }

    let anchors = choose_anchors(family)?;
    let ridge = find_ridge(&anchors)?;
    let off: Vec<usize> = (0..m).filter(|j| !ridge.indices.contains(j)).collect();
    let off_points: Vec<Point> = off.iter().map(|&j| anchors[j].clone()).collect();
    let projection = project_about_flat(&off_points, &ridge.flat)?;
    let t = c - d;
    let cut = rotate_to_cut(&projection, t)?;
    let w = off[cut.w];
    let frame = projection.frame.clone();
    let p = cut.direction.clone();
    let minus_p = [-p[0].clone(), -p[1].clone()];

    let rays: Vec<[Rational; 2]> = if t > 0 {
        // K_i is the direction of order[t + i] for 1 ≤ i ≤ m - c.
        let k = |i: usize| projection.images[cut.order[t + i]].coords.clone();
        let mut rays = Vec::with_capacity(n);
        rays.push(p);
        for j in 1..n - 1 {
            rays.push(k(j * t));
        }
        rays.push(minus_p);
        rays
    } else {
        shadow_rays(&frame, family, w, &p, n)?
    };

    let mut regions = Vec::with_capacity(n);
    for i in 0..n {
        regions.push(frame.wedge(&rays[i], &rays[(i + 1) % n])?);
    }
    Ok(FanPartition {
        apex: ridge.flat,
        frame,
        rays,
        regions,
        anchors,
        face: ridge.indices,
        w,
    })
}

/// With `c = d` every region only needs the apex measures and `w`. Put
/// `n - 1` rays through the bump of `w`'s anchor atom and close the fan with
/// the ray opposite `w`.
fn shadow_rays(
    frame: &PlaneFrame,
    family: &MeasureFamily,
    w: usize,
    p: &[Rational; 2],
    n: usize,
) -> Result<Vec<[Rational; 2]>> {
    let minus_p = [-p[0].clone(), -p[1].clone()];
    if n == 2 {
        return Ok(alloc::vec![p.clone(), minus_p]);
    }
    let mu = family.measure(w);
    let center = frame.coefficients(&mu.atoms()[mu.anchor_index()].point);
    let r2 = mu.bump_radius() * mu.bump_radius();
    let perp = frame.perpendicular(p);
    let ray = |s: &Rational| [&p[0] + s * &perp[0], &p[1] + s * &perp[1]];
    let mut s_max = Rational::one();
    for _ in 0..MAX_HALVINGS {
        let lo = ray(&-s_max.clone());
        let hi = ray(&s_max);
        if ray_distance_sq(frame, &center, &lo) < r2 && ray_distance_sq(frame, &center, &hi) < r2 {
            let steps = int((n - 2) as i64);
            let mut rays = Vec::with_capacity(n);
            for i in 0..n - 1 {
                let s = -s_max.clone() + int(2) * &s_max * int(i as i64) / &steps;
                rays.push(ray(&s));
            }
            rays.push(minus_p);
            return Ok(rays);
        }
        s_max /= int(2);
    }
    Err(Error::PerturbationFailed)
}

/// Squared distance, in the true metric, from `q` to the ray spanned by `u`.
fn ray_distance_sq(frame: &PlaneFrame, q: &[Rational; 2], u: &[Rational; 2]) -> Rational {
    let qq = frame.length_sq(q);
    let qu = frame.inner(q, u);
    if qu.is_positive() {
        qq - &qu * &qu / frame.length_sq(u)
    } else {
        qq
    }
}

/// Anchors expected in each closed region when `c > d`: `c` everywhere except
/// the region before the closing ray, which absorbs the surplus.
pub fn expected_anchor_counts(m: usize, n: usize, c: usize, d: usize) -> Vec<usize> {
    let mut counts = alloc::vec![c; n];
    if n >= 2 {
        counts[n - 2] = (m + n * d) - (n * c + d) + c;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::orientation;
    use crate::measures::{coverage_counts, Atom, DiscreteMeasure};
    use crate::rational::frac;
    use alloc::vec;

    fn family(points: &[&[i64]], radius: Rational) -> MeasureFamily {
        MeasureFamily::new(
            points
                .iter()
                .map(|p| DiscreteMeasure::new("m", vec![Atom::new(Point::from_ints(p), int(1))], radius.clone()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn anchors_of_collinear_measures_are_nudged() {
        let f = family(&[&[0, 0], &[1, 0], &[2, 0]], frac(1, 4));
        let anchors = choose_anchors(&f).unwrap();
        assert_ne!(orientation(&anchors).unwrap().as_i8(), 0);
        for (a, mu) in anchors.iter().zip(f.measures()) {
            assert!(a.distance_sq(&mu.atoms()[0].point) < frac(1, 16));
        }
        let short = family(&[&[0, 0, 0], &[1, 0, 0]], frac(1, 4));
        assert!(matches!(choose_anchors(&short), Err(Error::TooFewPoints { .. })));
    }

    #[test]
    fn rotation_picks_the_next_point() {
        // Images at increasing angles in the upper half-plane about the origin.
        let vertex = Flat::through(&[Point::from_ints(&[0, 0])]).unwrap();
        let pts: Vec<Point> = [[10, 2], [10, 4], [10, 7], [10, 9], [10, 12]]
            .iter()
            .rev()
            .map(|p| Point::from_ints(p))
            .collect();
        let proj = project_about_flat(&pts, &vertex).unwrap();
        let cut = rotate_to_cut(&proj, 1).unwrap();
        assert_eq!(cut.order, vec![4, 3, 2, 1, 0]);
        assert_eq!(cut.w, 3);
        let positive: Vec<usize> = (0..5).filter(|&i| cut.strictly_positive(&proj.images[i].coords)).collect();
        assert_eq!(positive, vec![4]);
        assert!(cut.on_hyperplane(&proj.images[3].coords));
        assert!(rotate_to_cut(&proj, 5).is_err());
        let zero = rotate_to_cut(&proj, 0).unwrap();
        assert!((0..5).all(|i| !zero.strictly_positive(&proj.images[i].coords)));
    }

    #[test]
    fn not_a_face_when_images_surround_the_flat() {
        let vertex = Flat::through(&[Point::from_ints(&[0, 0])]).unwrap();
        let pts = [Point::from_ints(&[1, 0]), Point::from_ints(&[-1, 1]), Point::from_ints(&[-1, -1])];
        let proj = project_about_flat(&pts, &vertex).unwrap();
        assert_eq!(rotate_to_cut(&proj, 0), Err(Error::NotAFace));
    }

    #[test]
    fn two_halves_when_c_equals_d() {
        let f = family(&[&[0, 0], &[4, 1]], frac(1, 2));
        let fan = build_fan(&f, 2, 2).unwrap();
        let partition = fan.to_partition().unwrap();
        partition.validate().unwrap();
        assert_eq!(coverage_counts(&f, &partition, &int(0)), vec![2, 2]);
    }

    #[test]
    fn shadow_rays_cover_w_for_many_regions() {
        let f = family(&[&[0, 0], &[4, 1], &[7, -3]], frac(1, 2));
        for n in 2..6 {
            let fan = build_fan(&f, n, 2).unwrap();
            let partition = fan.to_partition().unwrap();
            partition.validate().unwrap();
            assert!(coverage_counts(&f, &partition, &int(0)).iter().all(|&c| c >= 2), "n = {n}");
        }
    }

    #[test]
    fn hypothesis_is_checked() {
        let f = family(&[&[0, 0], &[4, 1], &[7, -3]], frac(1, 2));
        assert!(matches!(build_fan(&f, 2, 3), Err(Error::Hypothesis(_))));
        assert!(matches!(build_fan(&f, 1, 2), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn expected_counts_formula() {
        assert_eq!(expected_anchor_counts(12, 5, 4, 2), vec![4, 4, 4, 4, 4]);
        assert_eq!(expected_anchor_counts(13, 5, 4, 2), vec![4, 4, 4, 5, 4]);
    }
}
