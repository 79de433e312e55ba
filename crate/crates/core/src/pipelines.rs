//! Aggregate-measure reductions, the pigeonhole selector, and the group
//! planners for guaranteed fractions.
//!
//! All pipelines run in the plane, where two measures can be equiparted
//! into `2^k` convex cells by repeated ham-sandwich cuts.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::hamsandwich::{equipartition_atoms, CellAtom, Equipartition};
use crate::measures::{evaluate_matrix, touches, Atom, DiscreteMeasure, MassMatrix, MeasureFamily};
use crate::rational::{ceil_to_usize, int};
use crate::{Error, Rational, Result};

/// A sum of source measures, each optionally rescaled to total 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregateMeasure {
    pub sources: Vec<usize>,
    pub normalized: bool,
    pub measure: DiscreteMeasure,
    /// `(source measure, source atom)` for every atom of `measure`.
    pub origin: Vec<(usize, usize)>,
}

fn min_radius(family: &MeasureFamily, indices: &[usize]) -> Rational {
    indices
        .iter()
        .map(|&j| family.measure(j).bump_radius().clone())
        .min()
        .unwrap_or_else(Rational::one)
}

fn check_indices(family: &MeasureFamily, indices: &[usize]) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::Hypothesis("an aggregate needs at least one source".into()));
    }
    if let Some(&j) = indices.iter().find(|&&j| j >= family.len()) {
        return Err(Error::Hypothesis(alloc::format!("measure index {j} out of range")));
    }
    Ok(())
}

/// `ν = Σ μ_j / μ_j(ℝ^d)` over `indices`; its total is `|indices|`.
pub fn build_nu(family: &MeasureFamily, indices: &[usize]) -> Result<AggregateMeasure> {
    check_indices(family, indices)?;
    let mut atoms = Vec::new();
    let mut origin = Vec::new();
    for &j in indices {
        let mu = family.measure(j);
        let total = mu.total();
        if !total.is_positive() {
            return Err(Error::InvalidMeasure(alloc::format!("measure {j} has zero mass")));
        }
        for (a, atom) in mu.atoms().iter().enumerate() {
            atoms.push(Atom::new(atom.point.clone(), &atom.weight / &total));
            origin.push((j, a));
        }
    }
    let label = String::from("nu");
    Ok(AggregateMeasure {
        sources: indices.to_vec(),
        normalized: true,
        measure: DiscreteMeasure::new(label, atoms, min_radius(family, indices))?,
        origin,
    })
}

/// Unit atoms at the heaviest atom of each source.
pub fn point_measure(family: &MeasureFamily, indices: &[usize]) -> Result<AggregateMeasure> {
    check_indices(family, indices)?;
    let mut atoms = Vec::new();
    let mut origin = Vec::new();
    for &j in indices {
        let mu = family.measure(j);
        let a = mu.anchor_index();
        atoms.push(Atom::new(mu.atoms()[a].point.clone(), Rational::one()));
        origin.push((j, a));
    }
    Ok(AggregateMeasure {
        sources: indices.to_vec(),
        normalized: false,
        measure: DiscreteMeasure::new("V", atoms, min_radius(family, indices))?,
        origin,
    })
}

/// `r - 1 + ε(m - r + 1)`.
pub fn pigeonhole_threshold<T>(m: usize, r: usize, eps: &T) -> T
where
    T: Clone + Num + FromPrimitive,
{
    let c = |v: usize| T::from_usize(v).unwrap_or_else(T::zero);
    c(r) - T::one() + eps.clone() * c(m + 1 - r)
}

/// If the values sum to at least `r - 1 + ε(m - r + 1)`, the indices (in
/// increasing order) of the `r` largest values, each of which is then at
/// least `ε`. `None` when the hypothesis fails.
pub fn pigeonhole_indices<T>(xs: &[T], r: usize, eps: &T) -> Result<Option<Vec<usize>>>
where
    T: Clone + PartialOrd + Num + FromPrimitive,
{
    let m = xs.len();
    if r < 1 || r > m {
        return Err(Error::Hypothesis(alloc::format!("need 1 ≤ r ≤ m, got r = {r}, m = {m}")));
    }
    let unit = |x: &T| *x >= T::zero() && *x <= T::one();
    if !xs.iter().all(unit) || !unit(eps) {
        return Err(Error::Hypothesis("values and ε must lie in [0, 1]".into()));
    }
    let sum = xs.iter().cloned().fold(T::zero(), |acc, x| acc + x);
    if sum < pigeonhole_threshold(m, r, eps) {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        xs[b]
            .partial_cmp(&xs[a])
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut chosen = order[..r].to_vec();
    chosen.sort_unstable();
    Ok(Some(chosen))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonBound {
    /// `1 / (n((n-1)(⌈c/d⌉-1)+1))`
    pub epsilon: Rational,
    /// `d / (c n²)`
    pub floor: Rational,
}

fn check_ncd(n: usize, c: usize, d: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Hypothesis("need n ≥ 2".into()));
    }
    if d < 2 {
        return Err(Error::Hypothesis("need d ≥ 2".into()));
    }
    if c < d {
        return Err(Error::Hypothesis("need c ≥ d".into()));
    }
    Ok(())
}

pub fn epsilon_bound(n: usize, c: usize, d: usize) -> Result<EpsilonBound> {
    check_ncd(n, c, d)?;
    let ceil = c.div_ceil(d);
    let denom = n * ((n - 1) * (ceil - 1) + 1);
    let epsilon = Rational::new(1.into(), denom.into());
    let floor = Rational::new(d.into(), (c * n * n).into());
    Ok(EpsilonBound { epsilon, floor })
}

/// Disjoint measure groups, each with a quota of measures that must reach
/// the group's fraction in every region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPlan {
    pub groups: Vec<Vec<usize>>,
    pub quotas: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Fraction guaranteed for the quota measures of each group.
    pub fractions: Vec<Rational>,
}

impl GroupPlan {
    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn total_quota(&self) -> usize {
        self.quotas.iter().sum()
    }

    fn from_sizes(quotas: Vec<usize>, sizes: Vec<usize>, fractions: Vec<Rational>) -> Self {
        let mut groups = Vec::with_capacity(sizes.len());
        let mut next = 0;
        for &s in &sizes {
            groups.push((next..next + s).collect());
            next += s;
        }
        Self {
            groups,
            quotas,
            sizes,
            fractions,
        }
    }
}

/// `d` quotas summing to `c`, the larger ones first.
fn balanced_quotas(c: usize, d: usize) -> Vec<usize> {
    (0..d).map(|k| c / d + usize::from(k < c % d)).collect()
}

/// Groups of sizes `n(r_k - 1) + 1` with quotas `⌊c/d⌋` or `⌈c/d⌉`.
pub fn plan_epsilon_groups(m: usize, n: usize, c: usize, d: usize) -> Result<GroupPlan> {
    check_ncd(n, c, d)?;
    let quotas = balanced_quotas(c, d);
    let sizes: Vec<usize> = quotas.iter().map(|&r| n * (r - 1) + 1).collect();
    let need: usize = sizes.iter().sum();
    if m < need {
        return Err(Error::Hypothesis(alloc::format!("plan needs m ≥ n(c−d)+d = {need}, got m = {m}")));
    }
    let fractions = sizes
        .iter()
        .zip(&quotas)
        .map(|(&s, &r)| Rational::new(1.into(), (n * (s - r + 1)).into()))
        .collect();
    Ok(GroupPlan::from_sizes(quotas, sizes, fractions))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaPlan {
    pub plan: GroupPlan,
    pub alpha: Rational,
    /// `(1-α)/(1/n-α)`
    pub ratio: Rational,
    /// `(c-d)·ratio`
    pub leading: Rational,
    /// `(c-d)·ratio + d - 1`
    pub bound: Rational,
    /// `⌈bound⌉`, enough measures in general.
    pub required_m: usize,
    /// `(c-d)·ratio` when the ratio is an integer, which then suffices.
    pub integer_ratio_m: Option<usize>,
}

impl AlphaPlan {
    /// The smallest family size the planner certifies.
    pub fn min_m(&self) -> usize {
        self.integer_ratio_m.unwrap_or(self.required_m)
    }
}

/// Groups for guaranteeing a fraction `α` in `c` measures per region.
pub fn plan_alpha_groups(n: usize, c: usize, d: usize, alpha: &Rational) -> Result<AlphaPlan> {
    check_ncd(n, c, d)?;
    if c < 2 * d {
        return Err(Error::Hypothesis("the α planner needs c ≥ 2d".into()));
    }
    let inv_n = Rational::new(1.into(), n.into());
    if !alpha.is_positive() || alpha >= &inv_n {
        return Err(Error::Hypothesis("need 0 < α < 1/n".into()));
    }
    let ratio = (Rational::one() - alpha) / (inv_n - alpha);
    let quotas = balanced_quotas(c, d);
    let sizes = quotas
        .iter()
        .map(|&r| ceil_to_usize(&(int((r - 1) as i64) * &ratio)).ok_or(Error::Degenerate))
        .collect::<Result<Vec<_>>>()?;
    let leading = int((c - d) as i64) * &ratio;
    let bound = &leading + int(d as i64 - 1);
    let required_m = ceil_to_usize(&bound).ok_or(Error::Degenerate)?;
    let integer_ratio_m = if ratio.is_integer() {
        ceil_to_usize(&leading)
    } else {
        None
    };
    let plan = GroupPlan::from_sizes(quotas.clone(), sizes, alloc::vec![alpha.clone(); d]);
    Ok(AlphaPlan {
        plan,
        alpha: alpha.clone(),
        ratio,
        leading,
        bound,
        required_m,
        integer_ratio_m,
    })
}

fn log2_exact(n: usize) -> Result<u32> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::ScopeLimit(alloc::format!(
            "constructive equipartitions exist here only for n a power of two, got n = {n}"
        )));
    }
    Ok(n.trailing_zeros())
}

fn require_plane(family: &MeasureFamily) -> Result<()> {
    if family.dim() != 2 {
        return Err(Error::ScopeLimit(alloc::format!(
            "aggregate pipelines need a planar equipartition engine; d = {} is not supported",
            family.dim()
        )));
    }
    Ok(())
}

/// Which auxiliary measure the aggregate reduction equiparts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AuxKind {
    /// Unit atoms at one point of each remaining measure.
    PointMeasure,
    /// Sum of the remaining measures, each normalised to total 1.
    Nu,
}

/// How aggregate weight maps back to source mass, per colour.
struct ColorSource<'a> {
    origin: &'a [(usize, usize)],
    /// Source mass per unit of aggregate weight, indexed by source; `None`
    /// when aggregate weight does not represent source mass.
    unit: Option<Vec<Rational>>,
}

fn tag(color: usize, measure: &DiscreteMeasure) -> Vec<CellAtom> {
    measure
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, a)| CellAtom::new(color, i, a.point.clone(), a.weight.clone()))
        .collect()
}

/// Strict masses with rows of measures entering the cuts replaced by their
/// share-exact values.
fn share_matrix(family: &MeasureFamily, eq: &Equipartition, colors: [ColorSource<'_>; 2]) -> Result<MassMatrix> {
    let mut matrix = evaluate_matrix(family, &eq.partition)?;
    for (color, src) in colors.iter().enumerate() {
        let Some(unit) = &src.unit else { continue };
        let mut rows: Vec<usize> = src.origin.iter().map(|o| o.0).collect();
        rows.sort_unstable();
        rows.dedup();
        for &j in &rows {
            for v in matrix.entries[j].iter_mut() {
                *v = Rational::zero();
            }
        }
        for (i, pieces) in eq.pieces.iter().enumerate() {
            for p in pieces.iter().filter(|p| p.color == color) {
                let j = src.origin[p.index].0;
                matrix.entries[j][i] += &p.weight * &unit[j];
            }
        }
    }
    Ok(matrix)
}

/// Distinct sources with a positive piece of colour `color` in region `i`.
fn sources_touched(eq: &Equipartition, i: usize, color: usize, origin: &[(usize, usize)]) -> usize {
    let mut sources: Vec<usize> = eq.pieces[i]
        .iter()
        .filter(|p| p.color == color && p.weight.is_positive())
        .map(|p| origin[p.index].0)
        .collect();
    sources.sort_unstable();
    sources.dedup();
    sources.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub kind: AuxKind,
    pub n: usize,
    pub c: usize,
    /// `μ_1(C_i)` with boundary shares.
    pub first_mass: Vec<Rational>,
    pub first_target: Rational,
    /// Auxiliary mass per region.
    pub aux_mass: Vec<Rational>,
    /// `(n(c-d)+1)/n`
    pub aux_target: Rational,
    /// Distinct remaining measures with a positive share per region.
    pub supports_touched: Vec<usize>,
    /// Closed-mode coverage per region over the whole family.
    pub coverage: Vec<usize>,
    /// Strict masses with share-exact rows where available.
    pub matrix: MassMatrix,
    pub certified: bool,
}

/// Equiparts `μ_1` and an auxiliary measure built from `μ_2, …, μ_m`, and
/// certifies that every region meets at least `c` supports.
pub fn coverage_pipeline(
    family: &MeasureFamily,
    n: usize,
    c: usize,
    kind: AuxKind,
) -> Result<(Equipartition, CoverageReport)> {
    require_plane(family)?;
    let d = 2;
    if c < d {
        return Err(Error::Hypothesis("need c ≥ d".into()));
    }
    let k = log2_exact(n)?;
    if n < 2 {
        return Err(Error::Hypothesis("need n ≥ 2".into()));
    }
    let m = family.len();
    if m != n * (c - d) + d {
        return Err(Error::Hypothesis(alloc::format!(
            "this reduction takes exactly m = n(c−d)+d = {} measures, got {m}",
            n * (c - d) + d
        )));
    }
    let rest: Vec<usize> = (1..m).collect();
    let aux = match kind {
        AuxKind::PointMeasure => point_measure(family, &rest)?,
        AuxKind::Nu => build_nu(family, &rest)?,
    };
    let first = family.measure(0);
    let mut atoms = tag(0, first);
    atoms.extend(tag(1, &aux.measure));
    let radius = min_radius(family, &(0..m).collect::<Vec<_>>());
    let eq = equipartition_atoms(atoms, k, &radius)?;

    let first_origin: Vec<(usize, usize)> = (0..first.atoms().len()).map(|a| (0, a)).collect();
    let mut first_unit = alloc::vec![Rational::zero(); m];
    first_unit[0] = Rational::one();
    let aux_unit = match kind {
        AuxKind::Nu => Some(family.totals()),
        AuxKind::PointMeasure => None,
    };
    let matrix = share_matrix(
        family,
        &eq,
        [
            ColorSource {
                origin: &first_origin,
                unit: Some(first_unit),
            },
            ColorSource {
                origin: &aux.origin,
                unit: aux_unit,
            },
        ],
    )?;

    let n_q = int(n as i64);
    let first_target = first.total() / &n_q;
    let aux_target = Rational::new((n * (c - d) + 1).into(), n.into());
    let first_mass: Vec<Rational> = (0..n).map(|i| eq.color_mass(i, 0)).collect();
    let aux_mass: Vec<Rational> = (0..n).map(|i| eq.color_mass(i, 1)).collect();
    let supports_touched: Vec<usize> = (0..n).map(|i| sources_touched(&eq, i, 1, &aux.origin)).collect();
    let coverage: Vec<usize> = eq
        .partition
        .regions()
        .iter()
        .map(|r| family.measures().iter().filter(|mu| touches(mu, r)).count())
        .collect();
    let certified = first_mass.iter().all(|v| v == &first_target)
        && aux_mass.iter().all(|v| v == &aux_target)
        && supports_touched.iter().all(|&s| s > c - d)
        && coverage.iter().all(|&s| s >= c);
    let report = CoverageReport {
        kind,
        n,
        c,
        first_mass,
        first_target,
        aux_mass,
        aux_target,
        supports_touched,
        coverage,
        matrix,
        certified,
    };
    Ok((eq, report))
}

/// Whether every region carries exactly `1/n` of the summed rows.
pub fn equiparts_sum(matrix: &MassMatrix, rows: &[usize]) -> bool {
    let n = matrix.cols();
    let total = rows
        .iter()
        .fold(Rational::zero(), |acc, &j| acc + &matrix.row_totals[j]);
    let share = total / int(n as i64);
    (0..n).all(|i| matrix.aggregate(rows, i) == share)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCertificate {
    /// `ν_k(C_i)`
    pub group_mass: Rational,
    /// `r_k - 1 + target·(m_k - r_k + 1)`
    pub hypothesis: Rational,
    /// Certified measures and their fractions `μ(C_i)/μ(ℝ^d)`.
    pub measures: Vec<(usize, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionFractions {
    pub groups: Vec<GroupCertificate>,
}

impl RegionFractions {
    pub fn certified_count(&self) -> usize {
        self.groups.iter().map(|g| g.measures.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionReport {
    pub n: usize,
    pub c: usize,
    pub target: Rational,
    pub regions: Vec<RegionFractions>,
    pub matrix: MassMatrix,
    pub certified: bool,
}

/// Equiparts the two group aggregates and certifies, in every region, at
/// least `c` measures holding fraction `target` of their totals.
pub fn fraction_pipeline(
    family: &MeasureFamily,
    n: usize,
    c: usize,
    plan: &GroupPlan,
    target: &Rational,
) -> Result<(Equipartition, FractionReport)> {
    require_plane(family)?;
    let k = log2_exact(n)?;
    if plan.groups.len() != 2 {
        return Err(Error::Hypothesis("a planar plan has exactly two groups".into()));
    }
    if plan.total_quota() != c {
        return Err(Error::Hypothesis("plan quotas must sum to c".into()));
    }
    if plan.total_size() > family.len() {
        return Err(Error::Hypothesis(alloc::format!(
            "plan uses {} measures, family has {}",
            plan.total_size(),
            family.len()
        )));
    }
    for (g, (&r, &s)) in plan.quotas.iter().zip(&plan.sizes).enumerate() {
        if r < 1 || r > s || plan.groups[g].len() != s {
            return Err(Error::Hypothesis("plan quotas and sizes disagree".into()));
        }
        let lhs = Rational::new(s.into(), n.into());
        if lhs < pigeonhole_threshold(s, r, target) {
            return Err(Error::Hypothesis(alloc::format!(
                "group {g} cannot guarantee the target: m_k/n < r_k−1+target·(m_k−r_k+1)"
            )));
        }
    }
    let nus = [build_nu(family, &plan.groups[0])?, build_nu(family, &plan.groups[1])?];
    let mut atoms = tag(0, &nus[0].measure);
    atoms.extend(tag(1, &nus[1].measure));
    let radius = min_radius(family, &(0..family.len()).collect::<Vec<_>>());
    let eq = equipartition_atoms(atoms, k, &radius)?;
    let totals = family.totals();
    let matrix = share_matrix(
        family,
        &eq,
        [
            ColorSource {
                origin: &nus[0].origin,
                unit: Some(totals.clone()),
            },
            ColorSource {
                origin: &nus[1].origin,
                unit: Some(totals.clone()),
            },
        ],
    )?;

    let mut regions = Vec::with_capacity(n);
    let mut certified = true;
    for i in 0..n {
        let mut groups = Vec::with_capacity(2);
        for (g, members) in plan.groups.iter().enumerate() {
            let fractions: Vec<Rational> = members.iter().map(|&j| &matrix.entries[j][i] / &totals[j]).collect();
            let group_mass = eq.color_mass(i, g);
            let hypothesis = pigeonhole_threshold(members.len(), plan.quotas[g], target);
            let picked = pigeonhole_indices(&fractions, plan.quotas[g], target)?.unwrap_or_default();
            let measures: Vec<(usize, Rational)> = picked
                .iter()
                .map(|&p| (members[p], fractions[p].clone()))
                .collect();
            certified &= group_mass == Rational::new(members.len().into(), n.into())
                && measures.len() == plan.quotas[g]
                && measures.iter().all(|(_, f)| f >= target);
            groups.push(GroupCertificate {
                group_mass,
                hypothesis,
                measures,
            });
        }
        let region = RegionFractions { groups };
        certified &= region.certified_count() >= c;
        regions.push(region);
    }
    let report = FractionReport {
        n,
        c,
        target: target.clone(),
        regions,
        matrix,
        certified,
    };
    Ok((eq, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::rational::frac;
    use alloc::vec;

    #[test]
    fn pigeonhole_examples() {
        let xs = [frac(1, 1), frac(1, 1), frac(1, 2)];
        assert_eq!(pigeonhole_indices(&xs, 2, &frac(1, 2)).unwrap(), Some(vec![0, 1]));
        let zeros = vec![frac(0, 1); 3];
        assert_eq!(pigeonhole_indices(&zeros, 1, &frac(1, 10)).unwrap(), None);
        assert!(pigeonhole_indices(&zeros, 4, &frac(1, 10)).is_err());
        assert!(pigeonhole_indices(&[2.0f64], 1, &0.5).is_err());
        assert_eq!(pigeonhole_indices(&[0.2f64, 0.9, 0.4], 1, &0.3), Ok(Some(vec![1])));
    }

    #[test]
    fn epsilon_examples() {
        let b = epsilon_bound(2, 4, 2).unwrap();
        assert_eq!(b.epsilon, frac(1, 4));
        assert_eq!(b.floor, frac(1, 8));
        let b = epsilon_bound(3, 5, 2).unwrap();
        assert_eq!(b.epsilon, frac(1, 15));
        assert_eq!(b.floor, frac(2, 45));
        assert_eq!(epsilon_bound(5, 3, 3).unwrap().epsilon, frac(1, 5));
        assert!(epsilon_bound(1, 3, 2).is_err());
    }

    #[test]
    fn epsilon_plans() {
        let p = plan_epsilon_groups(6, 2, 4, 2).unwrap();
        assert_eq!(p.quotas, vec![2, 2]);
        assert_eq!(p.sizes, vec![3, 3]);
        assert_eq!(p.groups, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let p = plan_epsilon_groups(8, 2, 5, 2).unwrap();
        assert_eq!(p.quotas, vec![3, 2]);
        assert_eq!(p.sizes, vec![5, 3]);
        let p = plan_epsilon_groups(2, 4, 2, 2).unwrap();
        assert_eq!(p.sizes, vec![1, 1]);
        assert_eq!(p.fractions, vec![frac(1, 4), frac(1, 4)]);
        assert!(plan_epsilon_groups(5, 2, 4, 2).is_err());
    }

    #[test]
    fn alpha_plans() {
        let p = plan_alpha_groups(2, 4, 2, &frac(1, 5)).unwrap();
        assert_eq!(p.ratio, frac(8, 3));
        assert_eq!(p.plan.sizes, vec![3, 3]);
        assert_eq!(p.required_m, 7);
        assert_eq!(p.integer_ratio_m, None);
        let p = plan_alpha_groups(3, 6, 2, &frac(1, 5)).unwrap();
        assert_eq!(p.ratio, int(6));
        assert_eq!(p.integer_ratio_m, Some(24));
        assert!(plan_alpha_groups(2, 3, 2, &frac(1, 5)).is_err());
        assert!(plan_alpha_groups(2, 4, 2, &frac(1, 2)).is_err());
    }

    fn family(points: &[&[(i64, i64)]]) -> MeasureFamily {
        MeasureFamily::new(
            points
                .iter()
                .map(|ps| {
                    let atoms = ps
                        .iter()
                        .map(|&(x, y)| Atom::new(Point::from_ints(&[x, y]), int(1)))
                        .collect();
                    DiscreteMeasure::new("m", atoms, frac(1, 8)).unwrap()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn t5_small_instance() {
        let f = family(&[
            &[(0, 0), (5, 1), (2, 7)],
            &[(9, 3), (1, 4)],
            &[(-3, 2), (6, -4), (3, 3)],
            &[(7, 8)],
        ]);
        for kind in [AuxKind::PointMeasure, AuxKind::Nu] {
            let (eq, report) = coverage_pipeline(&f, 2, 3, kind).unwrap();
            eq.partition.validate().unwrap();
            assert!(report.certified, "{kind:?}: {report:?}");
            assert_eq!(report.aux_target, frac(3, 2));
        }
        assert!(matches!(coverage_pipeline(&f, 3, 2, AuxKind::Nu), Err(Error::ScopeLimit(_))));
    }

    #[test]
    fn scaling_nu_sources() {
        let f = family(&[&[(0, 0), (1, 1)], &[(3, 3), (4, 4), (5, 6), (7, 1), (2, 9)]]);
        let nu = build_nu(&f, &[0, 1]).unwrap();
        assert_eq!(nu.measure.total(), int(2));
        let single = build_nu(&f, &[1]).unwrap();
        assert_eq!(single.measure.total(), int(1));
    }
}
