//! Intersection posets of the zero-pattern arrangements `A(m, n, c)` and
//! `Ã(m, n, c)`, the column map `φ`, and longest chains.
//!
//! An element is a rows × n zero pattern. Each column's zero set is empty
//! or has at least `m-c+1` rows (a union of generators), no row is all
//! zero, and for `Ã` no column is all zero either. Order is containment of
//! zero sets. A pattern covers exactly the patterns obtained by deleting
//! one zero, or by clearing a column that holds exactly `m-c+1` zeros.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// One equiparted measure: `(m-1) × n` patterns.
    A,
    /// Equiparted sum: `m × n` patterns, no all-zero column.
    ATilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub m: usize,
    pub n: usize,
    pub c: usize,
    pub variant: Variant,
}

impl Params {
    pub fn new(m: usize, n: usize, c: usize, variant: Variant) -> Result<Self> {
        if m < 2 || n < 1 || c < 2 || c > m {
            return Err(Error::Hypothesis(alloc::format!(
                "need m ≥ 2, n ≥ 1 and 2 ≤ c ≤ m, got m = {m}, n = {n}, c = {c}"
            )));
        }
        let p = Self { m, n, c, variant };
        if p.rows() > 32 || n > 16 {
            return Err(Error::ScopeLimit("patterns are limited to 32 rows and 16 columns".into()));
        }
        Ok(p)
    }

    pub fn rows(&self) -> usize {
        match self.variant {
            Variant::A => self.m - 1,
            Variant::ATilde => self.m,
        }
    }

    /// Generator size `m - c + 1`.
    pub fn generator(&self) -> usize {
        self.m - self.c + 1
    }

    fn column_ok(&self, count: usize) -> bool {
        count == 0 || (count >= self.generator() && (self.variant == Variant::A || count < self.rows()))
    }

    /// Whether the top element `1̂` of the simplex face poset lies in `φ(P)`
    /// according to the closed-form criterion.
    pub fn has_top_formula(&self) -> bool {
        let (m, n, c) = (self.m as i64, self.n as i64, self.c as i64);
        match self.variant {
            Variant::A => n * (c - 2) + 1 >= m,
            Variant::ATilde => n * (c - 1) >= m,
        }
    }
}

/// Zero pattern stored by column: bit `j` of `columns[k]` is set when entry
/// `(j, k)` is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroPattern {
    pub rows: usize,
    pub columns: Vec<u32>,
}

impl ZeroPattern {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn is_zero(&self, j: usize, k: usize) -> bool {
        self.columns[k] >> j & 1 == 1
    }

    pub fn zeros(&self) -> usize {
        self.columns.iter().map(|c| c.count_ones() as usize).sum()
    }

    /// Columns containing a zero, as a bit mask.
    pub fn phi(&self) -> u32 {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .fold(0, |acc, (k, _)| acc | 1 << k)
    }

    /// Column `k` moves to position `perm[k]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        let mut columns = alloc::vec![0; self.cols()];
        for (k, &c) in self.columns.iter().enumerate() {
            columns[perm[k]] = c;
        }
        Self {
            rows: self.rows,
            columns,
        }
    }

    /// Whether every zero of `self` is a zero of `other`.
    pub fn leq(&self, other: &Self) -> bool {
        self.columns.iter().zip(&other.columns).all(|(a, b)| a & !b == 0)
    }

    pub fn is_admissible(&self, params: &Params) -> bool {
        let full = full_mask(self.rows);
        self.rows == params.rows()
            && self.cols() == params.n
            && self.zeros() > 0
            && self.columns.iter().all(|c| c & !full == 0 && params.column_ok(c.count_ones() as usize))
            && self.columns.iter().fold(full, |acc, c| acc & c) == 0
    }

    /// Patterns covered by this one.
    pub fn lower_covers(&self, params: &Params) -> Vec<ZeroPattern> {
        let s = params.generator();
        let mut out = Vec::new();
        for (k, &col) in self.columns.iter().enumerate() {
            let count = col.count_ones() as usize;
            if count > s || count == 1 {
                for j in 0..self.rows {
                    if col >> j & 1 == 1 {
                        let mut p = self.clone();
                        p.columns[k] &= !(1 << j);
                        out.push(p);
                    }
                }
            } else if count == s {
                let mut p = self.clone();
                p.columns[k] = 0;
                out.push(p);
            }
        }
        out.retain(|p| p.zeros() > 0);
        out
    }
}

fn full_mask(rows: usize) -> u32 {
    if rows >= 32 {
        u32::MAX
    } else {
        (1u32 << rows) - 1
    }
}

/// Maximum poset size enumerated explicitly unless a caller asks otherwise.
pub const DEFAULT_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoset {
    pub params: Params,
    pub elements: Vec<ZeroPattern>,
    /// `(lower, upper)` index pairs of covering relations.
    pub hasse: Vec<(usize, usize)>,
}

/// Enumerates every element explicitly, refusing past `cap` elements.
pub fn build_poset(m: usize, n: usize, c: usize, variant: Variant, cap: usize) -> Result<IntersectionPoset> {
    let params = Params::new(m, n, c, variant)?;
    let rows = params.rows();
    if rows > 20 {
        return Err(Error::CapExceeded { cap });
    }
    let options: Vec<u32> = (0..=full_mask(rows))
        .filter(|c| params.column_ok(c.count_ones() as usize))
        .collect();
    let mut elements = Vec::new();
    let mut current = alloc::vec![0u32; n];
    enumerate_columns(&params, &options, 0, &mut current, &mut elements, cap)?;
    elements.sort_by(|a, b| a.zeros().cmp(&b.zeros()).then_with(|| a.cmp(b)));
    let index: BTreeMap<&ZeroPattern, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut hasse = Vec::new();
    for (i, p) in elements.iter().enumerate() {
        for q in p.lower_covers(&params) {
            if let Some(&lo) = index.get(&q) {
                hasse.push((lo, i));
            }
        }
    }
    hasse.sort_unstable();
    hasse.dedup();
    Ok(IntersectionPoset {
        params,
        elements,
        hasse,
    })
}

fn enumerate_columns(
    params: &Params,
    options: &[u32],
    k: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<ZeroPattern>,
    cap: usize,
) -> Result<()> {
    if k == current.len() {
        let p = ZeroPattern {
            rows: params.rows(),
            columns: current.clone(),
        };
        if p.is_admissible(params) {
            if out.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            out.push(p);
        }
        return Ok(());
    }
    let so_far = current[..k].iter().fold(full_mask(params.rows()), |acc, c| acc & c);
    for &opt in options {
        // Only the last column can complete an all-zero row, so prune there.
        if k + 1 == current.len() && so_far & opt != 0 {
            continue;
        }
        current[k] = opt;
        enumerate_columns(params, options, k + 1, current, out, cap)?;
    }
    current[k] = 0;
    Ok(())
}

/// Longest chain length (elements minus one) among `members`, using cover
/// edges between members; `-1` when there are none.
fn longest_chain(len: usize, members: &[bool], hasse: &[(usize, usize)]) -> i64 {
    // Elements are sorted by zero count, so edges go forward.
    let mut best = alloc::vec![0i64; len];
    let mut out = -1;
    let mut edges = hasse.to_vec();
    edges.sort_by_key(|&(_, hi)| hi);
    let mut e = 0;
    for i in 0..len {
        if !members[i] {
            continue;
        }
        while e < edges.len() && edges[e].1 < i {
            e += 1;
        }
        let mut f = e;
        while f < edges.len() && edges[f].1 == i {
            let lo = edges[f].0;
            if members[lo] {
                best[i] = best[i].max(best[lo] + 1);
            }
            f += 1;
        }
        out = out.max(best[i]);
    }
    out
}

impl IntersectionPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn order_complex_dim(&self) -> i64 {
        longest_chain(self.len(), &alloc::vec![true; self.len()], &self.hasse)
    }

    /// Indices of elements with `φ = q`.
    pub fn fiber(&self, q: u32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.elements[i].phi() == q).collect()
    }

    pub fn top_mask(&self) -> u32 {
        full_mask(self.params.n)
    }

    pub fn fiber_dim(&self, q: u32) -> i64 {
        let mut members = alloc::vec![false; self.len()];
        for i in self.fiber(q) {
            members[i] = true;
        }
        longest_chain(self.len(), &members, &self.hasse)
    }

    pub fn phi_image(&self) -> PhiImage {
        let mut sets: Vec<u32> = self.elements.iter().map(ZeroPattern::phi).collect();
        sets.sort_unstable();
        sets.dedup();
        let top = self.top_mask();
        let has_top = sets.contains(&top);
        PhiImage { sets, has_top }
    }

    /// Whether every column permutation maps elements to elements and
    /// commutes with `φ`.
    pub fn is_equivariant(&self) -> bool {
        let index: BTreeMap<&ZeroPattern, ()> = self.elements.iter().map(|p| (p, ())).collect();
        let n = self.params.n;
        let perms = permutations(n);
        self.elements.iter().all(|p| {
            perms.iter().all(|perm| {
                let q = p.permute_columns(perm);
                let phi_perm = (0..n)
                    .filter(|&k| p.phi() >> k & 1 == 1)
                    .fold(0u32, |acc, k| acc | 1 << perm[k]);
                index.contains_key(&q) && q.phi() == phi_perm
            })
        })
    }
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permute(&mut current, 0, &mut out);
    out
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiImage {
    /// `Q'` as column masks.
    pub sets: Vec<u32>,
    pub has_top: bool,
}

impl PhiImage {
    /// Whether `Q'` is closed under taking nonempty subsets.
    pub fn is_downward_closed(&self) -> bool {
        self.sets.iter().all(|&q| {
            let mut sub = q;
            loop {
                sub = sub.wrapping_sub(1) & q;
                if sub == 0 {
                    return true;
                }
                if self.sets.binary_search(&sub).is_err() {
                    return false;
                }
            }
        })
    }

    /// Longest chain of `Q'` under inclusion.
    pub fn order_complex_dim(&self) -> i64 {
        self.sets.iter().map(|q| q.count_ones() as i64 - 1).max().unwrap_or(-1)
    }
}

/// Counts of the poset computed on row-permutation classes, which keeps
/// the whole test grid small. Cover steps commute with row permutations,
/// so chain lengths are the same as on the full poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementSummary {
    pub params: Params,
    pub elements: u128,
    /// Row-permutation classes visited.
    pub classes: usize,
    pub poset_dim: i64,
    /// `dim Δ(φ⁻¹(1̂))`, `-1` when the fiber is empty.
    pub fiber_dim: i64,
    pub q_dim: i64,
    pub has_top: bool,
    /// Zero counts of the maximal and minimal fiber elements.
    pub fiber_max_zeros: Vec<usize>,
    pub fiber_min_zeros: Vec<usize>,
}

type Class = Vec<u8>;

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Summary over row-permutation classes, refusing past `cap` classes.
pub fn summarize(m: usize, n: usize, c: usize, variant: Variant, cap: usize) -> Result<ArrangementSummary> {
    let params = Params::new(m, n, c, variant)?;
    if n > 8 {
        return Err(Error::ScopeLimit("row classes are limited to n ≤ 8".into()));
    }
    let rows = params.rows();
    let full = full_mask(n);
    // Row types are the zero sets of a row; the full set is excluded.
    let types = full as usize;
    let estimate = binomial((rows + types - 1) as u128, rows as u128);
    if estimate > cap as u128 {
        return Err(Error::CapExceeded { cap });
    }
    let mut classes: Vec<Class> = Vec::new();
    let mut counts = alloc::vec![0u8; types];
    compositions(rows, 0, &mut counts, &mut classes);
    let col_counts = |cl: &Class| -> Vec<usize> {
        (0..n)
            .map(|k| (0..types).filter(|&t| t >> k & 1 == 1).map(|t| cl[t] as usize).sum())
            .collect()
    };
    let zeros = |cl: &Class| -> usize { (0..types).map(|t| cl[t] as usize * (t as u32).count_ones() as usize).sum() };
    let valid = |cl: &Class| -> bool { zeros(cl) > 0 && col_counts(cl).iter().all(|&k| params.column_ok(k)) };
    let mut elements: Vec<Class> = classes.into_iter().filter(|cl| valid(cl)).collect();
    elements.sort_by_key(|cl| zeros(cl));
    let index: BTreeMap<Class, usize> = elements.iter().cloned().enumerate().map(|(i, cl)| (cl, i)).collect();
    let s = params.generator();

    let covers = |cl: &Class| -> Vec<usize> {
        let cc = col_counts(cl);
        let mut out = Vec::new();
        for k in 0..n {
            if cc[k] > s || cc[k] == 1 {
                for t in (0..types).filter(|&t| t >> k & 1 == 1 && cl[t] > 0) {
                    let mut next = cl.clone();
                    next[t] -= 1;
                    next[t & !(1 << k)] += 1;
                    if let Some(&i) = index.get(&next) {
                        out.push(i);
                    }
                }
            } else if cc[k] == s {
                let mut next = alloc::vec![0u8; types];
                for t in 0..types {
                    next[t & !(1 << k)] += cl[t];
                }
                if let Some(&i) = index.get(&next) {
                    out.push(i);
                }
            }
        }
        out
    };
    let in_fiber = |cl: &Class| col_counts(cl).iter().all(|&k| k > 0);

    let mut whole = alloc::vec![0i64; elements.len()];
    let mut fiber = alloc::vec![-1i64; elements.len()];
    let mut total: u128 = 0;
    let mut q_dim = -1;
    let mut fiber_max_zeros = Vec::new();
    let mut fiber_min_zeros = Vec::new();
    for (i, cl) in elements.iter().enumerate() {
        total += multinomial(rows, cl);
        let phi_size = col_counts(cl).iter().filter(|&&k| k > 0).count() as i64;
        q_dim = q_dim.max(phi_size - 1);
        let lower = covers(cl);
        whole[i] = lower.iter().map(|&lo| whole[lo] + 1).max().unwrap_or(0);
        if in_fiber(cl) {
            fiber[i] = lower
                .iter()
                .filter(|&&lo| fiber[lo] >= 0)
                .map(|&lo| fiber[lo] + 1)
                .max()
                .unwrap_or(0);
            if lower.iter().all(|&lo| fiber[lo] < 0) {
                fiber_min_zeros.push(zeros(cl));
            }
            if is_maximal(&params, cl, &index) {
                fiber_max_zeros.push(zeros(cl));
            }
        }
    }
    for v in [&mut fiber_max_zeros, &mut fiber_min_zeros] {
        v.sort_unstable();
        v.dedup();
    }
    Ok(ArrangementSummary {
        params,
        elements: total,
        classes: elements.len(),
        poset_dim: whole.iter().copied().max().unwrap_or(-1),
        fiber_dim: fiber.iter().copied().max().unwrap_or(-1),
        q_dim,
        has_top: q_dim == n as i64 - 1,
        fiber_max_zeros,
        fiber_min_zeros,
    })
}

fn is_maximal(params: &Params, cl: &Class, index: &BTreeMap<Class, usize>) -> bool {
    let n = params.n;
    let types = cl.len();
    // Adding one zero; filling an empty column is impossible in the fiber.
    for t in (0..types).filter(|&t| cl[t] > 0) {
        for k in (0..n).filter(|&k| t >> k & 1 == 0) {
            let up = t | 1 << k;
            if up >= types {
                continue;
            }
            let mut next = cl.clone();
            next[t] -= 1;
            next[up] += 1;
            if index.contains_key(&next) {
                return false;
            }
        }
    }
    true
}

fn compositions(left: usize, t: usize, counts: &mut Class, out: &mut Vec<Class>) {
    if t + 1 == counts.len() {
        counts[t] = left as u8;
        out.push(counts.clone());
        counts[t] = 0;
        return;
    }
    for k in 0..=left {
        counts[t] = k as u8;
        compositions(left - k, t + 1, counts, out);
    }
    counts[t] = 0;
}

fn multinomial(rows: usize, cl: &Class) -> u128 {
    let mut left = rows as u128;
    let mut acc = 1u128;
    for &k in cl {
        acc *= binomial(left, k as u128);
        left -= k as u128;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaCheck {
    pub name: &'static str,
    pub applies: bool,
    pub expected: i64,
    pub found: i64,
}

impl FormulaCheck {
    pub fn holds(&self) -> bool {
        !self.applies || self.expected == self.found
    }
}

/// Every closed form that speaks about these parameters, compared with the
/// enumerated values. Inequalities are reported with `expected` as the
/// bound and `found` as the value, holding when `found ≤ expected`.
pub fn formula_checks(s: &ArrangementSummary) -> Vec<FormulaCheck> {
    let p = &s.params;
    let (m, n, c) = (p.m as i64, p.n as i64, p.c as i64);
    let mut out = alloc::vec![FormulaCheck {
        name: "has_top",
        applies: true,
        expected: i64::from(p.has_top_formula()),
        found: i64::from(s.has_top),
    }];
    match p.variant {
        Variant::A => {
            out.push(FormulaCheck {
                name: "fiber_dim",
                applies: s.has_top,
                expected: n * c - m - 2 * n + 1,
                found: s.fiber_dim,
            });
            out.push(FormulaCheck {
                name: "poset_dim",
                applies: n >= 2,
                expected: n * c - n - c,
                found: s.poset_dim,
            });
        }
        Variant::ATilde => {
            let fiber = s.fiber_dim >= 0;
            out.push(FormulaCheck {
                name: "fiber_dim",
                applies: fiber,
                expected: n * c - n - m.max(n),
                found: s.fiber_dim,
            });
            out.push(FormulaCheck {
                // The largest maximal elements; smaller maximal ones exist.
                name: "fiber_max_zeros",
                applies: fiber,
                expected: m * n - m.max(n),
                found: s.fiber_max_zeros.iter().copied().max().unwrap_or(0) as i64,
            });
            out.push(FormulaCheck {
                name: "fiber_min_zeros",
                applies: fiber,
                expected: n * (m - c + 1),
                found: s.fiber_min_zeros.iter().copied().min().unwrap_or(0) as i64,
            });
        }
    }
    out.push(FormulaCheck {
        name: "q_dim_bound",
        applies: !s.has_top,
        expected: n - 2,
        found: s.q_dim.min(n - 2),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_covers(poset: &IntersectionPoset) -> Vec<(usize, usize)> {
        let e = &poset.elements;
        let lt = |a: usize, b: usize| a != b && e[a].leq(&e[b]);
        let mut out = Vec::new();
        for a in 0..e.len() {
            for b in 0..e.len() {
                if lt(a, b) && !(0..e.len()).any(|x| lt(a, x) && lt(x, b)) {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn hasse_matches_transitive_reduction() {
        for (m, n, c) in [(3, 2, 3), (4, 2, 3), (4, 3, 3), (5, 2, 4), (4, 2, 2), (4, 3, 4)] {
            for v in [Variant::A, Variant::ATilde] {
                let p = build_poset(m, n, c, v, DEFAULT_CAP).unwrap();
                assert_eq!(p.hasse, brute_covers(&p), "{m} {n} {c} {v:?}");
                assert!(p.is_equivariant());
                assert!(p.phi_image().is_downward_closed());
            }
        }
    }

    #[test]
    fn figure_one_parameters() {
        let p = build_poset(4, 2, 3, Variant::A, DEFAULT_CAP).unwrap();
        assert_eq!(p.len(), 8);
        assert!(p.fiber(p.top_mask()).is_empty());
        assert_eq!(p.fiber_dim(p.top_mask()), -1);
        assert!(!p.phi_image().has_top);
        assert_eq!(p.order_complex_dim(), 1);
    }

    #[test]
    fn small_examples() {
        let p = build_poset(3, 2, 3, Variant::A, DEFAULT_CAP).unwrap();
        assert!(p.phi_image().has_top);
        assert_eq!(p.fiber_dim(p.top_mask()), 0);
        let p = build_poset(4, 1, 3, Variant::A, DEFAULT_CAP).unwrap();
        assert!(p.is_empty());
        assert_eq!(p.order_complex_dim(), -1);
        assert!(matches!(build_poset(7, 4, 7, Variant::ATilde, 10), Err(Error::CapExceeded { .. })));
        assert!(build_poset(3, 2, 4, Variant::A, DEFAULT_CAP).is_err());
    }

    #[test]
    fn summary_agrees_with_explicit_poset() {
        for m in 2..=5 {
            for n in 1..=3 {
                for c in 2..=m {
                    for v in [Variant::A, Variant::ATilde] {
                        let p = build_poset(m, n, c, v, DEFAULT_CAP).unwrap();
                        let s = summarize(m, n, c, v, DEFAULT_CAP).unwrap();
                        let top = p.top_mask();
                        assert_eq!(s.elements, p.len() as u128, "{m} {n} {c} {v:?}");
                        assert_eq!(s.poset_dim, p.order_complex_dim());
                        assert_eq!(s.fiber_dim, p.fiber_dim(top));
                        assert_eq!(s.has_top, p.phi_image().has_top);
                        assert_eq!(s.q_dim, p.phi_image().order_complex_dim());
                    }
                }
            }
        }
    }

    #[test]
    fn formulas_hold_on_small_grid() {
        for m in 2..=5 {
            for n in 1..=3 {
                for c in 2..=m {
                    for v in [Variant::A, Variant::ATilde] {
                        let s = summarize(m, n, c, v, DEFAULT_CAP).unwrap();
                        for f in formula_checks(&s) {
                            assert!(f.holds(), "{m} {n} {c} {v:?} {f:?}");
                        }
                    }
                }
            }
        }
        // Not every maximal fiber element is as large as the largest.
        let s = summarize(3, 3, 3, Variant::ATilde, DEFAULT_CAP).unwrap();
        assert_eq!(s.fiber_max_zeros, alloc::vec![5, 6]);
    }
}
