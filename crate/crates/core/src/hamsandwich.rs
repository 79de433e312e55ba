//! Planar ham-sandwich cuts with fractional boundary shares, and their
//! recursion into `2^k` convex cells.
//!
//! A line is a valid cut when each open side carries at most half of each
//! colour. Atoms on the line are then split fractionally so that both
//! closed sides get exactly half; a bump centred on the cut line really
//! does put mass on both sides.
//!
//! Any valid line can be translated until it meets an atom without
//! changing its validity, so it suffices to search lines through atoms. For
//! each pivot the lines through it are swept by angle; between consecutive
//! events the open-side masses are constant, so one representative per arc
//! is enough. Coordinates and weights are scaled to integers first, which
//! keeps the sweep on `i128` for ordinary inputs.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::geometry::{ConvexRegion, HalfSpace, Hyperplane, Point, Side};
use crate::measures::DiscreteMeasure;
use crate::partition::{BoundaryShare, ConvexPartition, CutTree, Provenance};
use crate::{Error, Rational, Result};

/// A piece of an atom inside a cell: `weight` is what remains of it there.
///
/// `point` is where the cut search sees the atom. It starts at the atom's
/// `center` and may be pulled into a cell's interior, always by less than
/// the bump radius, when the atom sits on the cell boundary and no cut
/// through the boundary positions exists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellAtom {
    pub color: usize,
    pub index: usize,
    pub point: Point,
    pub center: Point,
    pub weight: Rational,
}

impl CellAtom {
    pub fn new(color: usize, index: usize, point: Point, weight: Rational) -> Self {
        Self {
            color,
            index,
            center: point.clone(),
            point,
            weight,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCut {
    /// The `≤` side is "left".
    pub line: Hyperplane,
    pub shares: Vec<BoundaryShare>,
}

impl SplitCut {
    /// Mass of `measure` (as colour `color`) on the left and right closed
    /// sides after applying the boundary shares.
    pub fn side_masses(&self, measure: &DiscreteMeasure, color: usize) -> (Rational, Rational) {
        let mut left = Rational::zero();
        let mut right = Rational::zero();
        for (i, a) in measure.atoms().iter().enumerate() {
            match self.line.side_of(&a.point) {
                Ordering::Less => left += &a.weight,
                Ordering::Greater => right += &a.weight,
                Ordering::Equal => {
                    let share = self.shares.iter().find(|s| s.color == color && s.atom == i);
                    if let Some(s) = share {
                        left += &a.weight * &s.left;
                        right += &a.weight * &s.right;
                    }
                }
            }
        }
        (left, right)
    }
}

/// A ham-sandwich cut of two planar measures.
pub fn ham_sandwich_cut(red: &DiscreteMeasure, blue: &DiscreteMeasure) -> Result<SplitCut> {
    if red.dim() != 2 || blue.dim() != 2 {
        return Err(Error::ScopeLimit("ham-sandwich cuts are implemented in the plane only".into()));
    }
    let atoms = tag_measures(red, blue);
    let cut = cut_cell(&atoms, &ConvexRegion::whole(2))?;
    Ok(SplitCut {
        line: cut.line,
        shares: cut.shares,
    })
}

fn tag_measures(red: &DiscreteMeasure, blue: &DiscreteMeasure) -> Vec<CellAtom> {
    let mut atoms = Vec::with_capacity(red.atoms().len() + blue.atoms().len());
    for (color, m) in [red, blue].into_iter().enumerate() {
        for (index, a) in m.atoms().iter().enumerate() {
            atoms.push(CellAtom::new(color, index, a.point.clone(), a.weight.clone()));
        }
    }
    atoms
}

/// A `2^k`-cell partition equiparting both colours, with the per-cell
/// pieces of every atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equipartition {
    pub partition: ConvexPartition,
    pub pieces: Vec<Vec<CellAtom>>,
}

impl Equipartition {
    pub fn tree(&self) -> Option<&CutTree> {
        match self.partition.provenance() {
            Provenance::CutTree(t) => Some(t),
            _ => None,
        }
    }

    pub fn color_mass(&self, region: usize, color: usize) -> Rational {
        self.pieces[region]
            .iter()
            .filter(|a| a.color == color)
            .fold(Rational::zero(), |acc, a| acc + &a.weight)
    }

    pub fn atom_mass(&self, region: usize, color: usize, index: usize) -> Rational {
        self.pieces[region]
            .iter()
            .filter(|a| a.color == color && a.index == index)
            .fold(Rational::zero(), |acc, a| acc + &a.weight)
    }
}

/// Recursively cuts the plane `k` times, equiparting `red` and `blue` into
/// `2^k` convex cells.
pub fn equipartition_2pow(red: &DiscreteMeasure, blue: &DiscreteMeasure, k: u32) -> Result<Equipartition> {
    if red.dim() != 2 || blue.dim() != 2 {
        return Err(Error::ScopeLimit("equipartitions are implemented in the plane only".into()));
    }
    let radius = red.bump_radius().min(blue.bump_radius()).clone();
    equipartition_atoms(tag_measures(red, blue), k, &radius)
}

/// [`equipartition_2pow`] on pre-tagged atoms of colours 0 and 1 whose
/// bumps all have radius at least `radius`.
pub fn equipartition_atoms(atoms: Vec<CellAtom>, k: u32, radius: &Rational) -> Result<Equipartition> {
    if atoms.iter().any(|a| a.point.dim() != 2) {
        return Err(Error::ScopeLimit("equipartitions are implemented in the plane only".into()));
    }
    let mut pieces = Vec::new();
    let mut regions = Vec::new();
    let tree = split(atoms, ConvexRegion::whole(2), k, radius, &mut pieces, &mut regions)?;
    let partition = ConvexPartition::new(2, regions, Provenance::CutTree(tree))?;
    Ok(Equipartition { partition, pieces })
}

fn split(
    atoms: Vec<CellAtom>,
    cell: ConvexRegion,
    depth: u32,
    radius: &Rational,
    pieces: &mut Vec<Vec<CellAtom>>,
    regions: &mut Vec<ConvexRegion>,
) -> Result<CutTree> {
    if depth == 0 {
        let region = regions.len();
        regions.push(cell);
        pieces.push(atoms);
        return Ok(CutTree::Leaf { region });
    }
    let cut = match cut_cell(&atoms, &cell) {
        Err(Error::NoCutFound) => cut_cell(&pull_inside(atoms, &cell, radius)?, &cell)?,
        other => other?,
    };
    let left_cell = cell.with(HalfSpace::new(cut.line.clone(), Side::Le));
    let right_cell = cell.with(HalfSpace::new(cut.line.clone(), Side::Ge));
    // Halve the pull budget per level so the total drift stays below radius.
    let budget = radius / Rational::from_integer(2.into());
    let left = split(cut.left, left_cell, depth - 1, &budget, pieces, regions)?;
    let right = split(cut.right, right_cell, depth - 1, &budget, pieces, regions)?;
    Ok(CutTree::Cut {
        line: cut.line,
        shares: cut.shares,
        left: Box::new(left),
        right: Box::new(right),
    })
}

/// Moves atoms on the cell boundary a little towards an interior point.
/// Every line through an interior position splits the cell, so a cut then
/// always exists.
fn pull_inside(mut atoms: Vec<CellAtom>, cell: &ConvexRegion, radius: &Rational) -> Result<Vec<CellAtom>> {
    let inner = cell.interior_point().ok_or(Error::NoCutFound)?;
    for a in &mut atoms {
        if cell.contains_open(&a.point) {
            continue;
        }
        let delta = inner.diff(&a.point);
        let l1 = delta.iter().fold(Rational::one(), |acc, v| acc + v.abs());
        // |η·delta|₂ ≤ η·|delta|₁ < radius / 2
        let eta = radius / (Rational::from_integer(2.into()) * l1);
        let step: Vec<Rational> = delta.iter().map(|v| v * &eta).collect();
        a.point = a.point.offset(&step);
    }
    Ok(atoms)
}

struct CellCut {
    line: Hyperplane,
    shares: Vec<BoundaryShare>,
    left: Vec<CellAtom>,
    right: Vec<CellAtom>,
}

/// Finds a valid cut of the atoms splitting `cell` into two parts with
/// nonempty interior, and distributes the atoms.
fn cut_cell(atoms: &[CellAtom], cell: &ConvexRegion) -> Result<CellCut> {
    let line = if atoms.is_empty() {
        let p = cell.interior_point().ok_or(Error::NoCutFound)?;
        line_through(&p, &[Rational::one(), Rational::zero()])
    } else {
        find_line(atoms, cell)?
    };
    distribute(atoms, line)
}

fn splits_cell(cell: &ConvexRegion, line: &Hyperplane) -> bool {
    cell.with(HalfSpace::new(line.clone(), Side::Le)).has_interior()
        && cell.with(HalfSpace::new(line.clone(), Side::Ge)).has_interior()
}

/// The line through `p` with direction `v`, oriented so that points
/// counter-clockwise of `v` are on the `≤` side.
fn line_through(p: &Point, v: &[Rational; 2]) -> Hyperplane {
    let mut normal = vec![v[1].clone(), -v[0].clone()];
    // Scale to coprime integers for readable output.
    let den = normal.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let num_gcd = normal
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(&(x.numer() * (&den / x.denom()))));
    if !num_gcd.is_zero() {
        let s = Rational::new(den, num_gcd);
        normal = normal.iter().map(|x| x * &s).collect();
    }
    let offset = crate::linalg::dot(&normal, p.coords());
    Hyperplane { normal, offset }
}

fn distribute(atoms: &[CellAtom], line: Hyperplane) -> Result<CellCut> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut on_line: Vec<&CellAtom> = Vec::new();
    let mut totals = [Rational::zero(), Rational::zero()];
    let mut open_left = [Rational::zero(), Rational::zero()];
    let mut open_right = [Rational::zero(), Rational::zero()];
    for a in atoms {
        totals[a.color] += &a.weight;
        match line.side_of(&a.point) {
            Ordering::Less => {
                open_left[a.color] += &a.weight;
                left.push(a.clone());
            }
            Ordering::Greater => {
                open_right[a.color] += &a.weight;
                right.push(a.clone());
            }
            Ordering::Equal => on_line.push(a),
        }
    }
    let two = Rational::from_integer(2.into());
    let mut need_left = [Rational::zero(), Rational::zero()];
    for c in 0..2 {
        let half = &totals[c] / &two;
        if open_left[c] > half || open_right[c] > half {
            return Err(Error::NoCutFound);
        }
        need_left[c] = half - &open_left[c];
    }
    on_line.sort_by_key(|a| (a.color, a.index));
    let mut shares = Vec::with_capacity(on_line.len());
    for a in on_line {
        let need = &mut need_left[a.color];
        let take = if *need >= a.weight { a.weight.clone() } else { need.clone() };
        *need -= &take;
        let rest = &a.weight - &take;
        shares.push(BoundaryShare {
            color: a.color,
            atom: a.index,
            left: &take / &a.weight,
            right: &rest / &a.weight,
        });
        if take.is_positive() {
            left.push(CellAtom {
                weight: take,
                ..a.clone()
            });
        }
        if rest.is_positive() {
            right.push(CellAtom {
                weight: rest,
                ..a.clone()
            });
        }
    }
    Ok(CellCut {
        line,
        shares,
        left,
        right,
    })
}

/// Exact ring operations needed by the sweep.
trait Exact: Clone + Ord {
    fn nil() -> Self;
    fn unit() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn sign(&self) -> Ordering;
    fn to_rational(&self) -> Rational;
}

impl Exact for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn to_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(*self))
    }
}

impl Exact for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sign(&self) -> Ordering {
        self.cmp(&<BigInt as Zero>::zero())
    }
    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.clone())
    }
}

/// Distinct atom positions with integer coordinates and per-colour integer
/// weights, all scaled by common denominators.
struct Grid<T> {
    points: Vec<Point>,
    coords: Vec<[T; 2]>,
    weights: Vec<[T; 2]>,
    totals: [T; 2],
}

impl<T: Exact> Grid<T> {
    fn valid(&self, left: &[T; 2], right: &[T; 2]) -> bool {
        (0..2).all(|c| left[c].add(&left[c]) <= self.totals[c] && right[c].add(&right[c]) <= self.totals[c])
    }
}

fn cross<T: Exact>(a: &[T; 2], b: &[T; 2]) -> T {
    a[0].mul(&b[1]).sub(&a[1].mul(&b[0]))
}

struct Scaled {
    points: Vec<Point>,
    coords: Vec<[BigInt; 2]>,
    weights: Vec<[BigInt; 2]>,
    totals: [BigInt; 2],
}

fn scale(atoms: &[CellAtom]) -> Scaled {
    let mut points: Vec<Point> = Vec::new();
    let mut raw_weights: Vec<[Rational; 2]> = Vec::new();
    {
        let mut order: Vec<usize> = (0..atoms.len()).collect();
        order.sort_by(|&a, &b| atoms[a].point.cmp(&atoms[b].point).then(a.cmp(&b)));
        // Position indices follow the first occurrence in input order.
        let mut first_of: Vec<(usize, usize)> = Vec::new(); // (first atom, group start in order)
        let mut i = 0;
        while i < order.len() {
            let mut j = i;
            while j < order.len() && atoms[order[j]].point == atoms[order[i]].point {
                j += 1;
            }
            first_of.push((order[i..j].iter().copied().min().unwrap_or(0), i));
            i = j;
        }
        first_of.sort();
        for (_, start) in first_of {
            let p = &atoms[order[start]].point;
            let mut w = [Rational::zero(), Rational::zero()];
            let mut j = start;
            while j < order.len() && &atoms[order[j]].point == p {
                let a = &atoms[order[j]];
                w[a.color] += &a.weight;
                j += 1;
            }
            points.push(p.clone());
            raw_weights.push(w);
        }
    }
    let coord_den = points
        .iter()
        .flat_map(|p| p.coords().iter())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut weight_den = [BigInt::one(), BigInt::one()];
    for w in &raw_weights {
        for c in 0..2 {
            weight_den[c] = weight_den[c].lcm(w[c].denom());
        }
    }
    let coords: Vec<[BigInt; 2]> = points
        .iter()
        .map(|p| {
            let c = p.coords();
            [
                (&c[0] * Rational::from_integer(coord_den.clone())).to_integer(),
                (&c[1] * Rational::from_integer(coord_den.clone())).to_integer(),
            ]
        })
        .collect();
    let weights: Vec<[BigInt; 2]> = raw_weights
        .iter()
        .map(|w| {
            [
                (&w[0] * Rational::from_integer(weight_den[0].clone())).to_integer(),
                (&w[1] * Rational::from_integer(weight_den[1].clone())).to_integer(),
            ]
        })
        .collect();
    let mut totals = [BigInt::zero(), BigInt::zero()];
    for w in &weights {
        totals[0] += &w[0];
        totals[1] += &w[1];
    }
    Scaled {
        points,
        coords,
        weights,
        totals,
    }
}

fn find_line(atoms: &[CellAtom], cell: &ConvexRegion) -> Result<Hyperplane> {
    let s = scale(atoms);
    let coord_limit = BigInt::one() << 61;
    let weight_limit = BigInt::one() << 120;
    let fits = s.coords.iter().flatten().all(|x| x.abs() < coord_limit)
        && s.totals.iter().all(|t| t < &weight_limit);
    if fits {
        let to = |x: &BigInt| x.to_i128().unwrap_or(0);
        let grid = Grid::<i128> {
            points: s.points,
            coords: s.coords.iter().map(|c| [to(&c[0]), to(&c[1])]).collect(),
            weights: s.weights.iter().map(|w| [to(&w[0]), to(&w[1])]).collect(),
            totals: [to(&s.totals[0]), to(&s.totals[1])],
        };
        search(&grid, cell)
    } else {
        let grid = Grid::<BigInt> {
            points: s.points,
            coords: s.coords,
            weights: s.weights,
            totals: s.totals,
        };
        search(&grid, cell)
    }
}

/// Tries pivots in index order. For a pivot, valid lines through a second
/// position come first (smallest such index first), then valid lines through
/// the pivot alone.
fn search<T: Exact>(grid: &Grid<T>, cell: &ConvexRegion) -> Result<Hyperplane> {
    let n = grid.coords.len();
    for p in 0..n {
        let origin = &grid.coords[p];
        // (position, direction folded into [0, π), folded?)
        let mut items: Vec<(usize, [T; 2], bool)> = (0..n)
            .filter(|&q| q != p)
            .map(|q| {
                let v = [grid.coords[q][0].sub(&origin[0]), grid.coords[q][1].sub(&origin[1])];
                let upper = v[1].sign() == Ordering::Greater
                    || (v[1].sign() == Ordering::Equal && v[0].sign() == Ordering::Greater);
                if upper {
                    (q, v, false)
                } else {
                    (q, [v[0].neg(), v[1].neg()], true)
                }
            })
            .collect();
        items.sort_by(|a, b| cross(&b.1, &a.1).sign().then(a.0.cmp(&b.0)));

        let zero = [T::nil(), T::nil()];
        let mut left = zero.clone();
        let mut right = zero;
        for (q, _, folded) in &items {
            let side = if *folded { &mut right } else { &mut left };
            for c in 0..2 {
                side[c] = side[c].add(&grid.weights[*q][c]);
            }
        }

        let mut groups: Vec<(usize, usize)> = Vec::new();
        let mut i = 0;
        while i < items.len() {
            let mut j = i + 1;
            while j < items.len() && cross(&items[i].1, &items[j].1).sign() == Ordering::Equal {
                j += 1;
            }
            groups.push((i, j));
            i = j;
        }

        let mut events: Vec<(usize, [T; 2])> = Vec::new();
        let mut arcs: Vec<[T; 2]> = Vec::new();
        for (g, &(start, end)) in groups.iter().enumerate() {
            for (q, _, folded) in &items[start..end] {
                let side = if *folded { &mut right } else { &mut left };
                for c in 0..2 {
                    side[c] = side[c].sub(&grid.weights[*q][c]);
                }
            }
            if grid.valid(&left, &right) {
                let min_q = items[start..end].iter().map(|it| it.0).min().unwrap_or(0);
                events.push((min_q, items[start].1.clone()));
            }
            for (q, _, folded) in &items[start..end] {
                let side = if *folded { &mut left } else { &mut right };
                for c in 0..2 {
                    side[c] = side[c].add(&grid.weights[*q][c]);
                }
            }
            if grid.valid(&left, &right) {
                let v = &items[start].1;
                let dir = if g + 1 < groups.len() {
                    let w = &items[groups[g + 1].0].1;
                    [v[0].add(&w[0]), v[1].add(&w[1])]
                } else if groups.len() >= 2 {
                    let w = &items[groups[0].0].1;
                    [v[0].sub(&w[0]), v[1].sub(&w[1])]
                } else {
                    [v[1].neg(), v[0].clone()]
                };
                arcs.push(dir);
            }
        }
        if items.is_empty() {
            arcs.push([T::unit(), T::nil()]);
        }
        events.sort_by_key(|e| e.0);
        let candidates = events.into_iter().map(|e| e.1).chain(arcs);
        for dir in candidates {
            let v = [dir[0].to_rational(), dir[1].to_rational()];
            let line = line_through(&grid.points[p], &v);
            if splits_cell(cell, &line) {
                return Ok(line);
            }
        }
    }
    Err(Error::NoCutFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::Atom;
    use crate::rational::{frac, int};

    fn measure(points: &[(i64, i64, i64)]) -> DiscreteMeasure {
        let atoms = points
            .iter()
            .map(|&(x, y, w)| Atom::new(Point::from_ints(&[x, y]), int(w)))
            .collect();
        DiscreteMeasure::new("m", atoms, frac(1, 10)).unwrap()
    }

    fn halves(cut: &SplitCut, m: &DiscreteMeasure, color: usize) {
        let (l, r) = cut.side_masses(m, color);
        assert_eq!(&l + &r, m.total());
        assert_eq!(l, r);
    }

    #[test]
    fn cross_shaped_pair() {
        let red = measure(&[(-1, 0, 1), (1, 0, 1)]);
        let blue = measure(&[(0, -1, 1), (0, 1, 1)]);
        let cut = ham_sandwich_cut(&red, &blue).unwrap();
        halves(&cut, &red, 0);
        halves(&cut, &blue, 1);
        assert_eq!(cut.line.side_of(&Point::from_ints(&[0, 0])), Ordering::Equal);
    }

    #[test]
    fn single_atoms_are_split_in_half() {
        let red = measure(&[(0, 0, 3)]);
        let blue = measure(&[(2, 5, 7)]);
        let cut = ham_sandwich_cut(&red, &blue).unwrap();
        assert_eq!(cut.line.side_of(&red.atoms()[0].point), Ordering::Equal);
        assert_eq!(cut.line.side_of(&blue.atoms()[0].point), Ordering::Equal);
        assert!(cut.shares.iter().all(|s| s.left == frac(1, 2)));
        halves(&cut, &red, 0);
        halves(&cut, &blue, 1);
    }

    #[test]
    fn identical_measures() {
        let red = measure(&[(0, 0, 1), (3, 1, 2), (5, -2, 1), (-1, 4, 5)]);
        let cut = ham_sandwich_cut(&red, &red).unwrap();
        halves(&cut, &red, 0);
        halves(&cut, &red, 1);
    }

    #[test]
    fn collinear_inputs() {
        let red = measure(&[(0, 0, 1), (1, 0, 1), (2, 0, 1)]);
        let blue = measure(&[(3, 0, 1), (4, 0, 2)]);
        let cut = ham_sandwich_cut(&red, &blue).unwrap();
        halves(&cut, &red, 0);
        halves(&cut, &blue, 1);
    }

    #[test]
    fn equipartition_small_levels() {
        let red = measure(&[(0, 0, 1), (3, 1, 2), (5, -2, 1), (-1, 4, 5), (2, 2, 1)]);
        let blue = measure(&[(1, -3, 2), (4, 4, 1), (-2, -1, 1), (6, 0, 3)]);
        for k in 0..=2 {
            let eq = equipartition_2pow(&red, &blue, k);
            let eq = eq.unwrap();
            let n = 1usize << k;
            assert_eq!(eq.partition.len(), n);
            eq.partition.validate().unwrap();
            for i in 0..n {
                assert_eq!(eq.color_mass(i, 0), red.total() / int(n as i64));
                assert_eq!(eq.color_mass(i, 1), blue.total() / int(n as i64));
                for a in &eq.pieces[i] {
                    assert!(eq.partition.regions()[i].contains_closed(&a.point));
                    assert!(a.point.distance_sq(&a.center) < frac(1, 400));
                }
            }
        }
    }
}
