//! Weighted atom clouds standing in for absolutely continuous measures.
//!
//! Each atom is the centre of a small open "bump" ball of common radius; the
//! union of the bumps plays the role of the support. A measure has positive
//! mass on a region when some bump meets the region's interior.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::geometry::{ConvexRegion, Point};
use crate::partition::ConvexPartition;
use crate::rational::{self, int, sqrt_lower_bound};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub point: Point,
    pub weight: Rational,
}

impl Atom {
    pub fn new(point: Point, weight: Rational) -> Self {
        Self { point, weight }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscreteMeasure {
    label: String,
    atoms: Vec<Atom>,
    bump_radius: Rational,
}

impl DiscreteMeasure {
    pub fn new(label: impl Into<String>, atoms: Vec<Atom>, bump_radius: Rational) -> Result<Self> {
        let label = label.into();
        let Some(first) = atoms.first() else {
            return Err(Error::InvalidMeasure(alloc::format!("{label}: no atoms")));
        };
        let d = first.point.dim();
        if d == 0 {
            return Err(Error::InvalidMeasure(alloc::format!("{label}: zero-dimensional atom")));
        }
        for a in &atoms {
            if a.point.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: a.point.dim(),
                });
            }
            if !a.weight.is_positive() {
                return Err(Error::InvalidMeasure(alloc::format!("{label}: nonpositive weight")));
            }
        }
        if !bump_radius.is_positive() {
            return Err(Error::InvalidMeasure(alloc::format!("{label}: nonpositive bump radius")));
        }
        Ok(Self {
            label,
            atoms,
            bump_radius,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn bump_radius(&self) -> &Rational {
        &self.bump_radius
    }

    pub fn dim(&self) -> usize {
        self.atoms[0].point.dim()
    }

    pub fn total(&self) -> Rational {
        rational::sum(self.atoms.iter().map(|a| &a.weight))
    }

    /// Index of the heaviest atom; ties go to the lowest index.
    pub fn anchor_index(&self) -> usize {
        let mut best = 0;
        for (i, a) in self.atoms.iter().enumerate() {
            if a.weight > self.atoms[best].weight {
                best = i;
            }
        }
        best
    }

    /// The same measure with every weight multiplied by `factor > 0`.
    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom::new(a.point.clone(), &a.weight * factor))
            .collect();
        Self::new(self.label.clone(), atoms, self.bump_radius.clone())
    }

    pub fn with_radius(&self, bump_radius: Rational) -> Result<Self> {
        Self::new(self.label.clone(), self.atoms.clone(), bump_radius)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MeasureFamily {
    dim: usize,
    measures: Vec<DiscreteMeasure>,
}

impl MeasureFamily {
    pub fn new(measures: Vec<DiscreteMeasure>) -> Result<Self> {
        let first = measures
            .first()
            .ok_or_else(|| Error::InvalidMeasure("a family needs at least one measure".into()))?;
        let dim = first.dim();
        for m in &measures {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
        }
        Ok(Self { dim, measures })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.measures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measures.is_empty()
    }

    pub fn measures(&self) -> &[DiscreteMeasure] {
        &self.measures
    }

    pub fn measure(&self, j: usize) -> &DiscreteMeasure {
        &self.measures[j]
    }

    pub fn totals(&self) -> Vec<Rational> {
        self.measures.iter().map(DiscreteMeasure::total).collect()
    }

    /// Every measure rescaled to total mass 1.
    pub fn normalised(&self) -> Result<Self> {
        let measures = self
            .measures
            .iter()
            .map(|m| m.scaled(&(Rational::from_integer(1.into()) / m.total())))
            .collect::<Result<_>>()?;
        Self::new(measures)
    }

    /// Sets every bump radius to [`default_bump_radius`] of all atoms.
    pub fn with_default_radius(&self) -> Result<Self> {
        let points: Vec<&Point> = self
            .measures
            .iter()
            .flat_map(|m| m.atoms.iter().map(|a| &a.point))
            .collect();
        let r = default_bump_radius(&points)
            .ok_or_else(|| Error::InvalidMeasure("coincident atoms leave no room for bumps".into()))?;
        let measures = self
            .measures
            .iter()
            .map(|m| m.with_radius(r.clone()))
            .collect::<Result<_>>()?;
        Self::new(measures)
    }
}

/// A rational lower bound for a quarter of the minimum pairwise distance.
/// `None` for coincident points; a single point gets radius 1/4.
pub fn default_bump_radius(points: &[&Point]) -> Option<Rational> {
    let mut min: Option<Rational> = None;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let d2 = p.distance_sq(q);
            if min.as_ref().is_none_or(|m| &d2 < m) {
                min = Some(d2);
            }
        }
    }
    match min {
        None => Some(Rational::new(1.into(), 4.into())),
        Some(d2) if d2.is_zero() => None,
        Some(d2) => Some(sqrt_lower_bound(&d2) / int(4)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MassMode {
    /// Atom centres in the closed region. Inside a partition the lowest
    /// region index wins on shared boundaries; see [`evaluate_matrix`].
    Strict,
    /// Atoms whose bump ball meets the region's interior.
    Closed,
}

fn atom_counts(measure: &DiscreteMeasure, atom: &Atom, region: &ConvexRegion, mode: MassMode) -> bool {
    match mode {
        MassMode::Strict => region.contains_closed(&atom.point),
        MassMode::Closed => bump_meets(region, &atom.point, &measure.bump_radius),
    }
}

fn bump_meets(region: &ConvexRegion, center: &Point, radius: &Rational) -> bool {
    region.contains_closed(center) || region.ball_meets_interior(center, radius)
}

/// Mass of `measure` on a single region.
pub fn mass(measure: &DiscreteMeasure, region: &ConvexRegion, mode: MassMode) -> Result<Rational> {
    if measure.dim() != region.dim() {
        return Err(Error::DimensionMismatch {
            expected: region.dim(),
            found: measure.dim(),
        });
    }
    Ok(rational::sum(
        measure
            .atoms
            .iter()
            .filter(|a| atom_counts(measure, a, region, mode))
            .map(|a| &a.weight),
    ))
}

/// Whether some bump of `measure` meets the interior of `region`.
pub fn touches(measure: &DiscreteMeasure, region: &ConvexRegion) -> bool {
    measure
        .atoms
        .iter()
        .any(|a| bump_meets(region, &a.point, &measure.bump_radius))
}

/// `m × n` masses, rows indexed by measure and columns by region.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MassMatrix {
    pub entries: Vec<Vec<Rational>>,
    pub row_totals: Vec<Rational>,
}

impl MassMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn get(&self, j: usize, i: usize) -> &Rational {
        &self.entries[j][i]
    }

    /// Mass of the sum of the listed measures on region `i`.
    pub fn aggregate(&self, rows: &[usize], i: usize) -> Rational {
        rational::sum(rows.iter().map(|&j| &self.entries[j][i]))
    }

    pub fn rows_conserved(&self) -> bool {
        self.entries
            .iter()
            .zip(&self.row_totals)
            .all(|(row, t)| &rational::sum(row) == t)
    }

    /// Per region, the number of rows holding at least `fraction` of their
    /// total.
    pub fn fraction_counts(&self, fraction: &Rational) -> Vec<usize> {
        (0..self.cols())
            .map(|i| {
                (0..self.rows())
                    .filter(|&j| self.entries[j][i] >= fraction * &self.row_totals[j])
                    .count()
            })
            .collect()
    }
}

/// Strict-mode mass matrix: every atom goes to the lowest-index region
/// whose closure contains its centre, so rows sum to totals exactly.
pub fn evaluate_matrix(family: &MeasureFamily, partition: &ConvexPartition) -> Result<MassMatrix> {
    let n = partition.len();
    let mut entries = Vec::with_capacity(family.len());
    for m in family.measures() {
        let mut row = alloc::vec![Rational::zero(); n];
        for a in m.atoms() {
            let i = partition.locate(&a.point)?;
            row[i] += &a.weight;
        }
        entries.push(row);
    }
    Ok(MassMatrix {
        entries,
        row_totals: family.totals(),
    })
}

/// Closed-mode mass matrix.
pub fn closed_matrix(family: &MeasureFamily, partition: &ConvexPartition) -> Result<MassMatrix> {
    let mut entries = Vec::with_capacity(family.len());
    for m in family.measures() {
        let row = partition
            .regions()
            .iter()
            .map(|r| mass(m, r, MassMode::Closed))
            .collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    Ok(MassMatrix {
        entries,
        row_totals: family.totals(),
    })
}

/// For each region, the number of measures whose closed-mode mass exceeds
/// `tau`.
pub fn coverage_counts(family: &MeasureFamily, partition: &ConvexPartition, tau: &Rational) -> Vec<usize> {
    partition
        .regions()
        .iter()
        .map(|region| {
            family
                .measures()
                .iter()
                .filter(|m| {
                    if tau.is_zero() {
                        touches(m, region)
                    } else {
                        mass(m, region, MassMode::Closed).is_ok_and(|v| &v > tau)
                    }
                })
                .count()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{HalfSpace, Hyperplane, Side};
    use crate::partition::{ConvexPartition, Provenance};
    use crate::rational::frac;
    use alloc::vec;

    fn halfplanes() -> ConvexPartition {
        let plane = Hyperplane::new(vec![int(1), int(0)], int(0)).unwrap();
        let right = ConvexRegion::new(2, vec![HalfSpace::new(plane.clone(), Side::Ge)]).unwrap();
        let left = ConvexRegion::new(2, vec![HalfSpace::new(plane, Side::Le)]).unwrap();
        ConvexPartition::new(2, vec![right, left], Provenance::Free).unwrap()
    }

    fn measure(points: &[[i64; 2]]) -> DiscreteMeasure {
        let atoms = points.iter().map(|p| Atom::new(Point::from_ints(p), int(1))).collect();
        DiscreteMeasure::new("m", atoms, frac(1, 4)).unwrap()
    }

    #[test]
    fn closed_mode_counts_boundary_atoms_on_both_sides() {
        let m = measure(&[[0, 0]]);
        let p = halfplanes();
        assert_eq!(mass(&m, &p.regions()[0], MassMode::Closed).unwrap(), int(1));
        assert_eq!(mass(&m, &p.regions()[1], MassMode::Closed).unwrap(), int(1));
        let family = MeasureFamily::new(vec![m]).unwrap();
        let matrix = evaluate_matrix(&family, &p).unwrap();
        assert_eq!(matrix.entries[0], vec![int(1), int(0)]);
        assert!(matrix.rows_conserved());
    }

    #[test]
    fn far_region_gets_nothing() {
        let m = measure(&[[5, 0]]);
        let p = halfplanes();
        assert_eq!(mass(&m, &p.regions()[1], MassMode::Closed).unwrap(), int(0));
        assert_eq!(mass(&m, &p.regions()[0], MassMode::Strict).unwrap(), int(1));
    }

    #[test]
    fn symmetric_split_and_coverage() {
        let family = MeasureFamily::new(vec![measure(&[[-1, 0], [1, 0]]), measure(&[[2, 1], [-2, 1]])]).unwrap();
        let p = halfplanes();
        let matrix = evaluate_matrix(&family, &p).unwrap();
        for row in &matrix.entries {
            assert_eq!(row, &vec![int(1), int(1)]);
        }
        assert_eq!(coverage_counts(&family, &p, &int(0)), vec![2, 2]);
        assert_eq!(coverage_counts(&family, &p, &int(1)), vec![0, 0]);
        assert_eq!(matrix.fraction_counts(&frac(1, 2)), vec![2, 2]);
    }

    #[test]
    fn measure_validation() {
        assert!(DiscreteMeasure::new("x", vec![], int(1)).is_err());
        let a = Atom::new(Point::from_ints(&[0]), int(0));
        assert!(DiscreteMeasure::new("x", vec![a], int(1)).is_err());
        let a = Atom::new(Point::from_ints(&[0]), int(1));
        assert!(DiscreteMeasure::new("x", vec![a], int(0)).is_err());
    }

    #[test]
    fn default_radius_is_a_quarter_distance_lower_bound() {
        let p = Point::from_ints(&[0, 0]);
        let q = Point::from_ints(&[3, 4]);
        let r = default_bump_radius(&[&p, &q]).unwrap();
        assert!(r <= frac(5, 4));
        assert!(r > frac(124, 100));
        assert!(default_bump_radius(&[&p, &p]).is_none());
    }

    #[test]
    fn anchor_prefers_heaviest_then_lowest_index() {
        let atoms = vec![
            Atom::new(Point::from_ints(&[0]), int(1)),
            Atom::new(Point::from_ints(&[1]), int(3)),
            Atom::new(Point::from_ints(&[2]), int(3)),
        ];
        let m = DiscreteMeasure::new("x", atoms, int(1)).unwrap();
        assert_eq!(m.anchor_index(), 1);
    }
}
