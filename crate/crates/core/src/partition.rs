//! Convex partitions of ℝ^d and how they were built.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::geometry::{ConvexRegion, Flat, HalfSpace, Hyperplane, Point, Side};
use crate::{Error, Rational, Result};

/// Fractional split of an atom lying on a cut line. `left` is the share of
/// the `⟨normal, x⟩ ≤ offset` side, as a fraction of the atom's weight
/// entering the cell; `right = 1 - left`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryShare {
    pub color: usize,
    pub atom: usize,
    pub left: Rational,
    pub right: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CutTree {
    Leaf {
        region: usize,
    },
    Cut {
        line: Hyperplane,
        shares: Vec<BoundaryShare>,
        left: Box<CutTree>,
        right: Box<CutTree>,
    },
}

impl CutTree {
    pub fn depth(&self) -> usize {
        match self {
            CutTree::Leaf { .. } => 0,
            CutTree::Cut { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Leaf regions in index order, each the intersection of the half-planes
    /// on its root path.
    pub fn regions(&self, dim: usize) -> Result<Vec<ConvexRegion>> {
        let mut out = Vec::new();
        self.collect(&ConvexRegion::whole(dim), &mut out)?;
        out.sort_by_key(|(i, _)| *i);
        Ok(out.into_iter().map(|(_, r)| r).collect())
    }

    fn collect(&self, cell: &ConvexRegion, out: &mut Vec<(usize, ConvexRegion)>) -> Result<()> {
        match self {
            CutTree::Leaf { region } => out.push((*region, cell.clone())),
            CutTree::Cut { line, left, right, .. } => {
                left.collect(&cell.with(HalfSpace::new(line.clone(), Side::Le)), out)?;
                right.collect(&cell.with(HalfSpace::new(line.clone(), Side::Ge)), out)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Wedges about `apex`, bounded by rays given in the plane frame
    /// orthogonal to it, in counter-clockwise order.
    Fan {
        apex: Flat,
        rays: Vec<[Rational; 2]>,
    },
    CutTree(CutTree),
    /// Consecutive intervals of the line, split at the sorted breakpoints.
    Intervals {
        breakpoints: Vec<Rational>,
    },
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPartition {
    dim: usize,
    regions: Vec<ConvexRegion>,
    provenance: Provenance,
}

impl ConvexPartition {
    pub fn new(dim: usize, regions: Vec<ConvexRegion>, provenance: Provenance) -> Result<Self> {
        if regions.is_empty() {
            return Err(Error::Hypothesis("a partition needs at least one region".into()));
        }
        for r in &regions {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.dim(),
                });
            }
        }
        Ok(Self {
            dim,
            regions,
            provenance,
        })
    }

    /// Consecutive intervals of ℝ cut at `breakpoints`, which must be
    /// strictly increasing.
    pub fn intervals(breakpoints: Vec<Rational>) -> Result<Self> {
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Hypothesis("breakpoints must increase strictly".into()));
        }
        let one = Rational::from_integer(1.into());
        let mut regions = Vec::with_capacity(breakpoints.len() + 1);
        for i in 0..=breakpoints.len() {
            let mut hs = Vec::new();
            if i > 0 {
                let plane = Hyperplane::new(alloc::vec![one.clone()], breakpoints[i - 1].clone())?;
                hs.push(HalfSpace::new(plane, Side::Ge));
            }
            if i < breakpoints.len() {
                let plane = Hyperplane::new(alloc::vec![one.clone()], breakpoints[i].clone())?;
                hs.push(HalfSpace::new(plane, Side::Le));
            }
            regions.push(ConvexRegion::new(1, hs)?);
        }
        Self::new(1, regions, Provenance::Intervals { breakpoints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn regions(&self) -> &[ConvexRegion] {
        &self.regions
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The lowest-index region whose closure contains `p`.
    pub fn locate(&self, p: &Point) -> Result<usize> {
        self.regions
            .iter()
            .position(|r| r.contains_closed(p))
            .ok_or_else(|| Error::Hypothesis("partition does not cover a point".into()))
    }

    /// Checks nonempty interiors, pairwise disjoint interiors, and that the
    /// regions cover space as their provenance says they should.
    pub fn validate(&self) -> Result<()> {
        for r in &self.regions {
            if !r.has_interior() {
                return Err(Error::Hypothesis("a region has empty interior".into()));
            }
        }
        for (i, a) in self.regions.iter().enumerate() {
            for b in &self.regions[i + 1..] {
                if a.interiors_meet(b) {
                    return Err(Error::Hypothesis("two regions overlap".into()));
                }
            }
        }
        match &self.provenance {
            Provenance::Fan { rays, .. } => {
                if rays.len() != self.regions.len() || !winds_once(rays) {
                    return Err(Error::Hypothesis("fan rays do not wind once around the apex".into()));
                }
            }
            Provenance::CutTree(tree) => {
                let regions = tree.regions(self.dim)?;
                if regions != self.regions {
                    return Err(Error::Hypothesis("regions disagree with the cut tree".into()));
                }
            }
            Provenance::Intervals { breakpoints } => {
                if breakpoints.len() + 1 != self.regions.len() {
                    return Err(Error::Hypothesis("interval count mismatch".into()));
                }
            }
            Provenance::Free => {}
        }
        Ok(())
    }
}

/// Whether the rays are strictly counter-clockwise sorted from `rays[0]`
/// with every gap, including the closing one, at most a half-turn. Such a
/// sequence turns exactly once around the apex.
pub(crate) fn winds_once(rays: &[[Rational; 2]]) -> bool {
    use crate::geometry::{angular_cmp, cross2, dot2};
    use core::cmp::Ordering;
    use num_traits::{Signed, Zero};
    let n = rays.len();
    if n < 2 {
        return false;
    }
    let r0 = &rays[0];
    let sorted = rays.windows(2).all(|w| angular_cmp(r0, &w[0], &w[1]) == Ordering::Less);
    let gaps_ok = (0..n).all(|i| {
        let (u, v) = (&rays[i], &rays[(i + 1) % n]);
        let c = cross2(u, v);
        c.is_positive() || (c.is_zero() && dot2(u, v).is_negative())
    });
    sorted && gaps_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    #[test]
    fn intervals_cover_the_line() {
        let p = ConvexPartition::intervals(vec![int(0), int(2)]).unwrap();
        assert_eq!(p.len(), 3);
        p.validate().unwrap();
        assert_eq!(p.locate(&Point::from_ints(&[0])).unwrap(), 0);
        assert_eq!(p.locate(&Point::from_ints(&[1])).unwrap(), 1);
        assert_eq!(p.locate(&Point::from_ints(&[5])).unwrap(), 2);
        assert!(ConvexPartition::intervals(vec![int(1), int(1)]).is_err());
    }

    #[test]
    fn overlapping_regions_fail_validation() {
        let whole = ConvexRegion::whole(2);
        let p = ConvexPartition::new(2, vec![whole.clone(), whole], Provenance::Free).unwrap();
        assert!(p.validate().is_err());
    }

    #[test]
    fn winding_examples() {
        let e = |x: i64, y: i64| [int(x), int(y)];
        assert!(winds_once(&[e(1, 0), e(-1, 0)]));
        assert!(winds_once(&[e(1, 0), e(0, 1), e(-1, -1)]));
        assert!(!winds_once(&[e(1, 0), e(-1, -1), e(0, 1)]));
        assert!(!winds_once(&[e(1, 0), e(0, 1)]));
        assert!(!winds_once(&[e(1, 0), e(0, 1), e(-1, 0), e(0, -1), e(1, 1)]));
    }
}
