//! Exact geometric primitives.
//!
//! All predicates work on [`Rational`] coordinates, so sidedness, incidence
//! and angular order are decided without tolerance. Convex regions are kept
//! as half-space lists; they are usually unbounded and are never converted
//! to vertex lists.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{self, dot, norm_sq, sub};
use crate::rational::{int, sqrt_f64 as sqrt, to_f64};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Self::new(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn offset(&self, delta: &[Rational]) -> Self {
        Self::new(linalg::add(&self.coords, delta))
    }

    /// `self - other` as a vector.
    pub fn diff(&self, other: &Point) -> Vec<Rational> {
        sub(&self.coords, &other.coords)
    }

    pub fn distance_sq(&self, other: &Point) -> Rational {
        norm_sq(&self.diff(other))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(to_f64).collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Negative,
    Degenerate,
    Positive,
}

impl Orientation {
    pub fn as_i8(self) -> i8 {
        match self {
            Orientation::Negative => -1,
            Orientation::Degenerate => 0,
            Orientation::Positive => 1,
        }
    }

    fn from_i8(v: i8) -> Self {
        match v {
            1 => Orientation::Positive,
            -1 => Orientation::Negative,
            _ => Orientation::Degenerate,
        }
    }
}

/// Sign of the determinant of the lifted `(d+1) × (d+1)` matrix whose rows
/// are `(1, p_i)`. Zero exactly when the points are affinely dependent.
pub fn orientation(points: &[Point]) -> Result<Orientation> {
    let d = points.len().saturating_sub(1);
    for p in points {
        check_dim(d, p.dim())?;
    }
    let rows: Vec<Vec<Rational>> = points[1..].iter().map(|p| p.diff(&points[0])).collect();
    Ok(Orientation::from_i8(linalg::det_sign(&rows)))
}

/// No `d + 1` of the points lie on a common affine hyperplane. With at most
/// `d` points this means affine independence.
pub fn in_general_position(points: &[Point]) -> bool {
    let Some(first) = points.first() else {
        return true;
    };
    let d = first.dim();
    if points.iter().any(|p| p.dim() != d) {
        return false;
    }
    if points.len() <= d + 1 {
        let diffs: Vec<_> = points[1..].iter().map(|p| p.diff(first)).collect();
        return linalg::rank(&diffs) == diffs.len();
    }
    // Lifted rows `(1, p)` scaled to integers once; each subset is then a
    // fraction-free determinant.
    let lifted: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut row = vec![Rational::one()];
            row.extend(p.coords.iter().cloned());
            linalg::integer_row(&row)
        })
        .collect();
    combinations(points.len(), d + 1)
        .into_iter()
        .all(|idx| linalg::det_sign_int(idx.iter().map(|&i| lifted[i].clone()).collect()) != 0)
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `{x : ⟨normal, x⟩ = offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if linalg::is_zero(&normal) {
            return Err(Error::Hypothesis("hyperplane normal must be nonzero".into()));
        }
        Ok(Self { normal, offset })
    }

    /// The hyperplane through `point` with the given normal.
    pub fn through(point: &Point, normal: Vec<Rational>) -> Result<Self> {
        let offset = dot(&normal, point.coords());
        Self::new(normal, offset)
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `⟨normal, p⟩ - offset`.
    pub fn eval(&self, p: &Point) -> Rational {
        dot(&self.normal, p.coords()) - &self.offset
    }

    pub fn side_of(&self, p: &Point) -> Ordering {
        self.eval(p).cmp(&Rational::zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `⟨normal, x⟩ ≤ offset`
    Le,
    /// `⟨normal, x⟩ ≥ offset`
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub plane: Hyperplane,
    pub side: Side,
}

impl HalfSpace {
    pub fn new(plane: Hyperplane, side: Side) -> Self {
        Self { plane, side }
    }

    /// `(a, b)` with the half-space written as `⟨a, x⟩ ≤ b`.
    pub fn as_le(&self) -> (Vec<Rational>, Rational) {
        match self.side {
            Side::Le => (self.plane.normal.clone(), self.plane.offset.clone()),
            Side::Ge => (
                self.plane.normal.iter().map(|v| -v).collect(),
                -self.plane.offset.clone(),
            ),
        }
    }

    /// Signed slack: nonnegative inside the closed half-space.
    pub fn slack(&self, p: &Point) -> Rational {
        match self.side {
            Side::Le => -self.plane.eval(p),
            Side::Ge => self.plane.eval(p),
        }
    }

    pub fn contains_closed(&self, p: &Point) -> bool {
        !self.slack(p).is_negative()
    }

    pub fn contains_open(&self, p: &Point) -> bool {
        self.slack(p).is_positive()
    }

    pub fn complement(&self) -> Self {
        let side = match self.side {
            Side::Le => Side::Ge,
            Side::Ge => Side::Le,
        };
        Self::new(self.plane.clone(), side)
    }
}

/// Intersection of closed half-spaces. The empty list is all of ℝ^d.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexRegion {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
}

impl ConvexRegion {
    pub fn whole(dim: usize) -> Self {
        Self {
            dim,
            halfspaces: Vec::new(),
        }
    }

    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        for h in &halfspaces {
            check_dim(dim, h.plane.dim())?;
        }
        Ok(Self { dim, halfspaces })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn with(&self, h: HalfSpace) -> Self {
        let mut halfspaces = self.halfspaces.clone();
        halfspaces.push(h);
        Self {
            dim: self.dim,
            halfspaces,
        }
    }

    pub fn contains_closed(&self, p: &Point) -> bool {
        self.halfspaces.iter().all(|h| h.contains_closed(p))
    }

    pub fn contains_open(&self, p: &Point) -> bool {
        self.halfspaces.iter().all(|h| h.contains_open(p))
    }

    /// A rational point strictly inside every half-space, if one exists.
    pub fn interior_point(&self) -> Option<Point> {
        let rows = self.halfspaces.iter().map(HalfSpace::as_le).collect();
        strict_feasible(rows, self.dim).map(Point::new)
    }

    pub fn has_interior(&self) -> bool {
        self.interior_point().is_some()
    }

    /// Whether the interiors of `self` and `other` meet.
    pub fn interiors_meet(&self, other: &ConvexRegion) -> bool {
        let rows = self
            .halfspaces
            .iter()
            .chain(&other.halfspaces)
            .map(HalfSpace::as_le)
            .collect();
        strict_feasible(rows, self.dim).is_some()
    }

    /// Exact squared Euclidean distance from `p` to the closed region, or
    /// `None` for an empty region.
    ///
    /// The nearest point is the projection of `p` onto the affine hull of
    /// the face containing it, so it suffices to project onto every affine
    /// subspace cut out by at most `d` independent active constraints and
    /// keep the feasible candidates.
    pub fn distance_sq(&self, p: &Point) -> Option<Rational> {
        if self.contains_closed(p) {
            return Some(Rational::zero());
        }
        let rows: Vec<_> = self.halfspaces.iter().map(HalfSpace::as_le).collect();
        let mut best: Option<Rational> = None;
        for size in 1..=self.dim.min(rows.len()) {
            for subset in combinations(rows.len(), size) {
                let gram: Vec<Vec<Rational>> = subset
                    .iter()
                    .map(|&i| subset.iter().map(|&j| dot(&rows[i].0, &rows[j].0)).collect())
                    .collect();
                let rhs: Vec<Rational> = subset
                    .iter()
                    .map(|&i| dot(&rows[i].0, p.coords()) - &rows[i].1)
                    .collect();
                let Some(lambda) = linalg::solve(gram, rhs) else {
                    continue;
                };
                let mut x = p.coords().to_vec();
                for (l, &i) in lambda.iter().zip(&subset) {
                    x = sub(&x, &linalg::scale(&rows[i].0, l));
                }
                let candidate = Point::new(x);
                if !self.contains_closed(&candidate) {
                    continue;
                }
                let d2 = p.distance_sq(&candidate);
                if best.as_ref().is_none_or(|b| &d2 < b) {
                    best = Some(d2);
                }
            }
        }
        best
    }

    /// Whether the open ball `B(center, radius)` meets the interior. Exact;
    /// assumes the region has nonempty interior.
    pub fn ball_meets_interior(&self, center: &Point, radius: &Rational) -> bool {
        self.distance_sq(center)
            .is_some_and(|d2| d2 < radius * radius)
    }
}

/// Fourier-Motzkin elimination for a strict system `⟨a_i, x⟩ < b_i`,
/// returning a witness by back-substitution.
fn strict_feasible(rows: Vec<(Vec<Rational>, Rational)>, dim: usize) -> Option<Vec<Rational>> {
    let rows = normalise_rows(rows);
    if dim == 0 {
        return rows.iter().all(|(_, b)| b.is_positive()).then(Vec::new);
    }
    let last = dim - 1;
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut reduced = Vec::new();
    for (a, b) in rows {
        match linalg::sign(&a[last]) {
            0 => reduced.push((a[..last].to_vec(), b)),
            1 => upper.push((a, b)),
            _ => lower.push((a, b)),
        }
    }
    for (au, bu) in &upper {
        for (al, bl) in &lower {
            let su = &au[last];
            let sl = -al[last].clone();
            let a: Vec<Rational> = (0..last).map(|i| &au[i] / su + &al[i] / &sl).collect();
            let b = bu / su + bl / &sl;
            reduced.push((a, b));
        }
    }
    let mut x = strict_feasible(reduced, last)?;
    // x_last is bounded by (b - a'·x') / a_last on each side.
    let bound = |(a, b): &(Vec<Rational>, Rational)| (b - dot(&a[..last], &x)) / &a[last];
    let hi = upper.iter().map(bound).min();
    let lo = lower.iter().map(bound).max();
    let value = match (lo, hi) {
        (Some(lo), Some(hi)) => {
            if lo >= hi {
                return None;
            }
            (lo + hi) / int(2)
        }
        (Some(lo), None) => lo + Rational::one(),
        (None, Some(hi)) => hi - Rational::one(),
        (None, None) => Rational::zero(),
    };
    x.push(value);
    Some(x)
}

/// Scales each row so its first nonzero coefficient has absolute value one
/// and drops rows dominated by an identical left-hand side.
fn normalise_rows(rows: Vec<(Vec<Rational>, Rational)>) -> Vec<(Vec<Rational>, Rational)> {
    let mut out: Vec<(Vec<Rational>, Rational)> = Vec::with_capacity(rows.len());
    for (a, b) in rows {
        let (a, b) = match a.iter().find(|v| !v.is_zero()) {
            Some(lead) => {
                let s = lead.abs();
                (a.iter().map(|v| v / &s).collect::<Vec<_>>(), b / s)
            }
            None => (a, b),
        };
        match out.iter_mut().find(|(oa, _)| *oa == a) {
            Some(existing) => {
                if b < existing.1 {
                    existing.1 = b;
                }
            }
            None => out.push((a, b)),
        }
    }
    out
}

/// An affine flat given by a basepoint and independent direction vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub basepoint: Point,
    pub directions: Vec<Vec<Rational>>,
}

impl Flat {
    /// The affine hull of affinely independent points.
    pub fn through(points: &[Point]) -> Result<Self> {
        let base = points.first().ok_or(Error::TooFewPoints { needed: 1, got: 0 })?.clone();
        let directions: Vec<_> = points[1..].iter().map(|p| p.diff(&base)).collect();
        if linalg::rank(&directions) != directions.len() {
            return Err(Error::Degenerate);
        }
        Ok(Self {
            basepoint: base,
            directions,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.basepoint.dim()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn contains(&self, p: &Point) -> bool {
        let mut rows = self.directions.clone();
        rows.push(p.diff(&self.basepoint));
        linalg::rank(&rows) == self.directions.len()
    }
}

/// A `(d-2)`-face of the convex hull of a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ridge {
    /// The `d - 1` vertex indices spanning the face.
    pub indices: Vec<usize>,
    pub flat: Flat,
    /// A hyperplane through the face with every input point satisfying
    /// `⟨normal, x⟩ ≤ offset`.
    pub support: Hyperplane,
}

/// Finds a `(d-2)`-face of the hull of `points` by `d - 2` gift-wrapping
/// pivots from the lexicographically smallest point.
pub fn find_ridge(points: &[Point]) -> Result<Ridge> {
    let first = points.first().ok_or(Error::TooFewPoints { needed: 2, got: 0 })?;
    let d = first.dim();
    if d < 2 {
        return Err(Error::Hypothesis("ridges need dimension at least 2".into()));
    }
    if points.len() < d {
        return Err(Error::TooFewPoints {
            needed: d,
            got: points.len(),
        });
    }
    for p in points {
        check_dim(d, p.dim())?;
    }
    if !in_general_position(points) {
        return Err(Error::Degenerate);
    }

    let start = (0..points.len()).min_by(|&a, &b| points[a].cmp(&points[b])).unwrap_or(0);
    let s0 = points[start].clone();
    let mut face = vec![start];
    let mut normal = vec![Rational::zero(); d];
    normal[0] = -Rational::one();

    while face.len() < d - 1 {
        let on_plane = (0..points.len())
            .find(|i| !face.contains(i) && dot(&normal, &points[*i].diff(&s0)).is_zero());
        if let Some(i) = on_plane {
            face.push(i);
            continue;
        }
        // Rotate about a codimension-two flat through the face, inside the
        // plane spanned by the normal and a direction orthogonal to it.
        let mut span: Vec<Vec<Rational>> = face[1..].iter().map(|&i| points[i].diff(&s0)).collect();
        span.push(normal.clone());
        let turn = linalg::orthogonal_complement(&span, d)
            .into_iter()
            .next()
            .ok_or(Error::Degenerate)?;
        let mut best_pos: Option<(Rational, usize)> = None;
        let mut best_neg: Option<(Rational, usize)> = None;
        for (i, p) in points.iter().enumerate() {
            if face.contains(&i) {
                continue;
            }
            let v = p.diff(&s0);
            let alpha = dot(&normal, &v);
            let beta = dot(&turn, &v);
            if beta.is_positive() {
                let t = -alpha / beta;
                if best_pos.as_ref().is_none_or(|(b, _)| &t < b) {
                    best_pos = Some((t, i));
                }
            } else if beta.is_negative() {
                let t = alpha / beta;
                if best_neg.as_ref().is_none_or(|(b, _)| &t < b) {
                    best_neg = Some((t, i));
                }
            }
        }
        let (t, i, dir) = match (best_pos, best_neg) {
            (Some((t, i)), _) => (t, i, Rational::one()),
            (None, Some((t, i))) => (t, i, -Rational::one()),
            (None, None) => return Err(Error::Degenerate),
        };
        normal = linalg::add(&normal, &linalg::scale(&turn, &(t * dir)));
        face.push(i);
    }

    let vertices: Vec<Point> = face.iter().map(|&i| points[i].clone()).collect();
    let flat = Flat::through(&vertices)?;
    let support = Hyperplane::through(&s0, normal)?;
    Ok(Ridge {
        indices: face,
        flat,
        support,
    })
}

/// Whether some hyperplane containing the points `face` has every point of
/// `points` on one closed side.
pub fn supports(points: &[Point], face: &[usize], plane: &Hyperplane) -> bool {
    face.iter().all(|&i| plane.eval(&points[i]).is_zero())
        && (points.iter().all(|p| !plane.eval(p).is_positive())
            || points.iter().all(|p| !plane.eval(p).is_negative()))
}

pub(crate) fn cross2(u: &[Rational; 2], v: &[Rational; 2]) -> Rational {
    &u[0] * &v[1] - &u[1] * &v[0]
}

pub(crate) fn dot2(u: &[Rational; 2], v: &[Rational; 2]) -> Rational {
    &u[0] * &v[0] + &u[1] * &v[1]
}

/// Half-turn class of `v` relative to `reference`: 0 along it, 1 strictly
/// counter-clockwise within a half-turn, 2 opposite, 3 strictly clockwise.
fn angular_class(reference: &[Rational; 2], v: &[Rational; 2]) -> u8 {
    let c = cross2(reference, v);
    if c.is_zero() {
        if dot2(reference, v).is_positive() {
            0
        } else {
            2
        }
    } else if c.is_positive() {
        1
    } else {
        3
    }
}

/// Counter-clockwise angle order of `u` and `v` measured from `reference`,
/// in `[0, 2π)`. Exact and independent of vector lengths.
pub fn angular_cmp(reference: &[Rational; 2], u: &[Rational; 2], v: &[Rational; 2]) -> Ordering {
    let (cu, cv) = (angular_class(reference, u), angular_class(reference, v));
    cu.cmp(&cv).then_with(|| {
        let c = cross2(u, v);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// A 2-plane coordinate system orthogonal to a flat. Coordinates are the
/// coefficients of the orthogonal component in the (orthogonal, not
/// normalised) axes, so they stay rational; cyclic order, incidence and
/// antipodality are exactly those of the true angles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneFrame {
    pub origin: Point,
    pub axes: [Vec<Rational>; 2],
    axis_norms_sq: [Rational; 2],
}

impl PlaneFrame {
    pub fn orthogonal_to(flat: &Flat) -> Result<Self> {
        let d = flat.ambient_dim();
        if flat.dim() + 2 != d {
            return Err(Error::Hypothesis("apex flat must have codimension two".into()));
        }
        let mut comp = linalg::orthogonal_complement(&flat.directions, d);
        if comp.len() != 2 {
            return Err(Error::Degenerate);
        }
        let b = comp.pop().unwrap_or_default();
        let a = comp.pop().unwrap_or_default();
        let norms = [norm_sq(&a), norm_sq(&b)];
        Ok(Self {
            origin: flat.basepoint.clone(),
            axes: [a, b],
            axis_norms_sq: norms,
        })
    }

    pub fn coefficients(&self, p: &Point) -> [Rational; 2] {
        let v = p.diff(&self.origin);
        [
            dot(&self.axes[0], &v) / &self.axis_norms_sq[0],
            dot(&self.axes[1], &v) / &self.axis_norms_sq[1],
        ]
    }

    /// Squared true length of a plane vector given in coefficients.
    pub fn length_sq(&self, u: &[Rational; 2]) -> Rational {
        &u[0] * &u[0] * &self.axis_norms_sq[0] + &u[1] * &u[1] * &self.axis_norms_sq[1]
    }

    /// True inner product of two plane vectors given in coefficients.
    pub fn inner(&self, u: &[Rational; 2], v: &[Rational; 2]) -> Rational {
        &u[0] * &v[0] * &self.axis_norms_sq[0] + &u[1] * &v[1] * &self.axis_norms_sq[1]
    }

    /// A vector perpendicular to `u` in the true metric, turned
    /// counter-clockwise in coefficient order.
    pub fn perpendicular(&self, u: &[Rational; 2]) -> [Rational; 2] {
        [-&u[1] * &self.axis_norms_sq[1], &u[0] * &self.axis_norms_sq[0]]
    }

    /// The ambient direction vector of a plane direction.
    pub fn lift(&self, u: &[Rational; 2]) -> Vec<Rational> {
        linalg::add(
            &linalg::scale(&self.axes[0], &u[0]),
            &linalg::scale(&self.axes[1], &u[1]),
        )
    }

    /// The closed half-space `{x : cross(u, coeffs(x)) ≥ 0}`, whose boundary
    /// is the hyperplane through the flat spanned by `u`.
    pub fn left_of(&self, u: &[Rational; 2]) -> Result<HalfSpace> {
        let normal = linalg::sub(
            &linalg::scale(&self.axes[1], &(&u[0] / &self.axis_norms_sq[1])),
            &linalg::scale(&self.axes[0], &(&u[1] / &self.axis_norms_sq[0])),
        );
        Ok(HalfSpace::new(Hyperplane::through(&self.origin, normal)?, Side::Ge))
    }

    /// Closed wedge swept counter-clockwise from `from` to `to`; the sweep
    /// must be at most a half-turn.
    pub fn wedge(&self, from: &[Rational; 2], to: &[Rational; 2]) -> Result<ConvexRegion> {
        let c = cross2(from, to);
        let half_turn = c.is_zero() && dot2(from, to).is_negative();
        if !(c.is_positive() || half_turn) {
            return Err(Error::Hypothesis("fan wedge wider than a half-turn".into()));
        }
        let first = self.left_of(from)?;
        let mut halfspaces = vec![first];
        if !half_turn {
            halfspaces.push(self.left_of(&[-to[0].clone(), -to[1].clone()])?);
        }
        ConvexRegion::new(self.origin.dim(), halfspaces)
    }

    /// Whether `coeffs` lies in the closed wedge from `from` to `to`.
    pub fn in_closed_wedge(from: &[Rational; 2], to: &[Rational; 2], coeffs: &[Rational; 2]) -> bool {
        if coeffs.iter().all(Zero::is_zero) {
            return true;
        }
        let a = cross2(from, coeffs);
        let b = cross2(coeffs, to);
        if cross2(from, to).is_zero() {
            !a.is_negative()
        } else {
            !a.is_negative() && !b.is_negative()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedPoint {
    pub index: usize,
    pub coords: [Rational; 2],
}

/// Points mapped into the 2-plane orthogonal to a flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngularProjection {
    pub frame: PlaneFrame,
    pub images: Vec<ProjectedPoint>,
}

impl AngularProjection {
    /// Angle in `[0, 2π)` of image `i`, measured in the true metric.
    pub fn angle(&self, i: usize) -> f64 {
        let [x, y] = self.true_coords(i);
        let a = libm_atan2(y, x);
        if a < 0.0 {
            a + 2.0 * core::f64::consts::PI
        } else {
            a
        }
    }

    pub fn radius(&self, i: usize) -> f64 {
        let [x, y] = self.true_coords(i);
        sqrt(x * x + y * y)
    }

    fn true_coords(&self, i: usize) -> [f64; 2] {
        let c = &self.images[i].coords;
        [
            to_f64(&c[0]) * sqrt(to_f64(&self.frame.axis_norms_sq[0])),
            to_f64(&c[1]) * sqrt(to_f64(&self.frame.axis_norms_sq[1])),
        ]
    }
}

/// Projects each point into the plane orthogonal to `flat`.
pub fn project_about_flat(points: &[Point], flat: &Flat) -> Result<AngularProjection> {
    let frame = PlaneFrame::orthogonal_to(flat)?;
    let mut images = Vec::with_capacity(points.len());
    for (index, p) in points.iter().enumerate() {
        check_dim(flat.ambient_dim(), p.dim())?;
        let coords = frame.coefficients(p);
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::PointOnFlat { index });
        }
        images.push(ProjectedPoint { index, coords });
    }
    Ok(AngularProjection { frame, images })
}

fn libm_atan2(y: f64, x: f64) -> f64 {
    use core::f64::consts::{FRAC_PI_2, PI};
    if x == 0.0 && y == 0.0 {
        return 0.0;
    }
    if x.abs() >= y.abs() {
        let a = atan_unit(y / x);
        if x > 0.0 {
            a
        } else if y >= 0.0 {
            a + PI
        } else {
            a - PI
        }
    } else {
        let a = atan_unit(x / y);
        if y > 0.0 {
            FRAC_PI_2 - a
        } else {
            -FRAC_PI_2 - a
        }
    }
}

/// arctan on `[-1, 1]` by argument halving and a Taylor series.
fn atan_unit(t: f64) -> f64 {
    // atan(t) = 2 atan(t / (1 + sqrt(1 + t²)))
    let mut t = t;
    let mut factor = 1.0;
    for _ in 0..3 {
        t /= 1.0 + sqrt(1.0 + t * t);
        factor *= 2.0;
    }
    let t2 = t * t;
    let mut term = t;
    let mut acc = 0.0;
    let mut k = 0;
    while k < 40 {
        acc += term / (2 * k + 1) as f64;
        term *= -t2;
        k += 1;
    }
    factor * acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&[p(&[0, 0]), p(&[1, 0]), p(&[0, 1])]).unwrap().as_i8(), 1);
        assert_eq!(orientation(&[p(&[0, 0]), p(&[1, 0]), p(&[2, 0])]).unwrap().as_i8(), 0);
        let simplex = [p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[0, 0, 1])];
        assert_eq!(orientation(&simplex).unwrap().as_i8(), 1);
        assert!(matches!(
            orientation(&[p(&[0, 0]), p(&[1, 0, 0]), p(&[0, 1])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn ridge_in_the_plane_is_a_vertex() {
        let square = [p(&[0, 0]), p(&[2, 0]), p(&[2, 2]), p(&[0, 2])];
        // corners of a square are not in general position only if three are
        // collinear, which they are not.
        let ridge = find_ridge(&square).unwrap();
        assert_eq!(ridge.indices.len(), 1);
        assert!(supports(&square, &ridge.indices, &ridge.support));
    }

    #[test]
    fn ridge_rejects_collinear() {
        let pts = [p(&[0, 0]), p(&[1, 1]), p(&[2, 2])];
        assert_eq!(find_ridge(&pts), Err(Error::Degenerate));
        assert!(matches!(
            find_ridge(&[p(&[0, 0, 0]), p(&[1, 0, 0])]),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn projection_examples() {
        let vertex = Flat::through(&[p(&[0, 0])]).unwrap();
        let proj = project_about_flat(&[p(&[1, 1])], &vertex).unwrap();
        assert!((proj.angle(0) - core::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!((proj.radius(0) - 2f64.sqrt()).abs() < 1e-12);

        let axis = Flat::through(&[p(&[0, 0, 0]), p(&[0, 0, 1])]).unwrap();
        let proj = project_about_flat(&[p(&[1, 0, 5])], &axis).unwrap();
        assert!(proj.angle(0).abs() < 1e-12);
        assert!((proj.radius(0) - 1.0).abs() < 1e-12);

        assert_eq!(
            project_about_flat(&[p(&[0, 0, 3])], &axis),
            Err(Error::PointOnFlat { index: 0 })
        );
    }

    #[test]
    fn float_helpers_match_std_values() {
        for (y, x) in [(1.0, 1.0), (-1.0, 0.5), (0.3, -2.0), (-4.0, -0.1), (2.0, 0.0)] {
            let expected = f64_atan2_reference(y, x);
            assert!((libm_atan2(y, x) - expected).abs() < 1e-12, "{y} {x}");
        }
        assert!((sqrt(2.0) - core::f64::consts::SQRT_2).abs() < 1e-15);
    }

    // atan2 via a fine bisection on the unit circle, independent of the series.
    fn f64_atan2_reference(y: f64, x: f64) -> f64 {
        let (mut lo, mut hi) = (-core::f64::consts::PI, core::f64::consts::PI);
        let target = [x, y];
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            // compare angle of target with mid using cos/sin-free cross test
            let (s, c) = sin_cos(mid);
            let cross = c * target[1] - s * target[0];
            let dotv = c * target[0] + s * target[1];
            if cross > 0.0 || (cross == 0.0 && dotv < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn sin_cos(a: f64) -> (f64, f64) {
        let (mut s, mut c) = (0.0, 0.0);
        let mut term = 1.0;
        for k in 0..60 {
            if k % 2 == 0 {
                c += if (k / 2) % 2 == 0 { term } else { -term };
            } else {
                s += if (k / 2) % 2 == 0 { term } else { -term };
            }
            term *= a / (k + 1) as f64;
        }
        (s, c)
    }

    #[test]
    fn interior_point_and_distance() {
        let x_ge_0 = HalfSpace::new(Hyperplane::new(vec![int(1), int(0)], int(0)).unwrap(), Side::Ge);
        let y_ge_0 = HalfSpace::new(Hyperplane::new(vec![int(0), int(1)], int(0)).unwrap(), Side::Ge);
        let quadrant = ConvexRegion::new(2, vec![x_ge_0.clone(), y_ge_0.clone()]).unwrap();
        let inner = quadrant.interior_point().unwrap();
        assert!(quadrant.contains_open(&inner));
        assert_eq!(quadrant.distance_sq(&p(&[-3, -4])), Some(int(25)));
        assert_eq!(quadrant.distance_sq(&p(&[-3, 4])), Some(int(9)));
        assert_eq!(quadrant.distance_sq(&p(&[1, 1])), Some(int(0)));
        assert!(quadrant.ball_meets_interior(&p(&[-1, 1]), &frac(3, 2)));
        assert!(!quadrant.ball_meets_interior(&p(&[-1, 1]), &int(1)));

        let slab_empty = ConvexRegion::new(2, vec![x_ge_0.clone(), x_ge_0.complement()]).unwrap();
        assert!(!slab_empty.has_interior());
        let opposite = ConvexRegion::new(2, vec![x_ge_0.complement()]).unwrap();
        assert!(!quadrant.interiors_meet(&opposite));
        assert!(quadrant.interiors_meet(&ConvexRegion::whole(2)));
    }

    #[test]
    fn wedge_membership() {
        let axis = Flat::through(&[p(&[0, 0])]).unwrap();
        let frame = PlaneFrame::orthogonal_to(&axis).unwrap();
        let e1 = [int(1), int(0)];
        let e2 = [int(0), int(1)];
        let w = frame.wedge(&e1, &e2).unwrap();
        assert!(w.contains_open(&p(&[1, 1])));
        assert!(!w.contains_closed(&p(&[-1, 1])));
        let half = frame.wedge(&e1, &[int(-1), int(0)]).unwrap();
        assert_eq!(half.halfspaces().len(), 1);
        assert!(half.contains_open(&p(&[-5, 1])));
        assert!(frame.wedge(&e2, &e1).is_err());
    }

    #[test]
    fn angular_order_from_reference() {
        let r = [int(1), int(0)];
        let mut dirs = vec![[int(0), int(-1)], [int(-1), int(0)], [int(1), int(1)], [int(1), int(0)]];
        dirs.sort_by(|u, v| angular_cmp(&r, u, v));
        assert_eq!(dirs[0], [int(1), int(0)]);
        assert_eq!(dirs[1], [int(1), int(1)]);
        assert_eq!(dirs[2], [int(-1), int(0)]);
        assert_eq!(dirs[3], [int(0), int(-1)]);
    }
}
