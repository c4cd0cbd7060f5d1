//! Multigraded Betti numbers and Castelnuovo–Mumford regularity.
//!
//! Two independent engines compute `β_{i,a}(I)`:
//!
//! * [`BettiMethod::Taylor`]: for each `a` in the lcm lattice, the strand of
//!   the Taylor complex tensored with `K` in multidegree `a`. Its basis in
//!   position `i` is the `(i+1)`-subsets `σ ⊆ G(I)` with `lcm(σ) = a`, and
//!   the differential keeps only facets `σ \ {u}` with the same lcm. Cost is
//!   `2^μ`, so it is guarded by a cap on `μ(I)`.
//! * [`BettiMethod::UpperKoszul`]: `β_{i,a} = dim H̃_{i-1}(K^a(I))` where
//!   `K^a(I) = {F ⊆ supp(a) : x^{a-F} ∈ I}`. Cost is governed by the box
//!   under `lcm(G(I))` instead of `μ`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::homology::{rank_exact, reduced_homology, CoefficientField};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::stanley_reisner::SimplicialComplex;

pub const DEFAULT_TAYLOR_CAP: usize = 16;
pub const DEFAULT_AUTO_TAYLOR_MAX: usize = 10;
pub const DEFAULT_KOSZUL_BOX_CAP: u64 = 4_000_000;

/// `reg(M)`, with `-∞` for the zero module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regularity {
    MinusInfinity,
    Finite(i64),
}

impl Regularity {
    pub fn finite(&self) -> Option<i64> {
        match self {
            Regularity::Finite(r) => Some(*r),
            Regularity::MinusInfinity => None,
        }
    }
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regularity::MinusInfinity => write!(f, "-inf"),
            Regularity::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for Regularity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Regularity::MinusInfinity => s.serialize_str("-inf"),
            Regularity::Finite(r) => s.serialize_i64(*r),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BettiMethod {
    Taylor,
    UpperKoszul,
    /// Taylor when `μ(I)` is at most `auto_taylor_max`, upper Koszul otherwise.
    #[default]
    Auto,
}

impl std::str::FromStr for BettiMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "taylor" => Ok(BettiMethod::Taylor),
            "koszul" => Ok(BettiMethod::UpperKoszul),
            "auto" => Ok(BettiMethod::Auto),
            _ => Err(Error::Malformed(format!(
                "unknown Betti method {s:?}; expected taylor, koszul or auto"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiOptions {
    pub method: BettiMethod,
    /// Largest `μ(I)` the Taylor engine accepts.
    pub taylor_cap: usize,
    pub auto_taylor_max: usize,
    /// Largest box volume under `lcm(G(I))` the upper Koszul engine scans.
    pub koszul_box_cap: u64,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions {
            method: BettiMethod::Auto,
            taylor_cap: DEFAULT_TAYLOR_CAP,
            auto_taylor_max: DEFAULT_AUTO_TAYLOR_MAX,
            koszul_box_cap: DEFAULT_KOSZUL_BOX_CAP,
        }
    }
}

impl BettiOptions {
    pub fn taylor() -> Self {
        BettiOptions {
            method: BettiMethod::Taylor,
            ..Default::default()
        }
    }

    pub fn upper_koszul() -> Self {
        BettiOptions {
            method: BettiMethod::UpperKoszul,
            ..Default::default()
        }
    }
}

/// Nonzero `β_{i,a}` keyed by `(i, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    field: CoefficientField,
    entries: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn get(&self, i: usize, a: &Monomial) -> usize {
        self.entries.get(&(i, a.clone())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, usize)> + '_ {
        self.entries.iter().map(|((i, a), &b)| (*i, a, b))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Graded table `β_{i,j} = Σ_{|a| = j} β_{i,a}`.
    pub fn coarse(&self) -> BTreeMap<(usize, u64), usize> {
        let mut out = BTreeMap::new();
        for ((i, a), b) in &self.entries {
            *out.entry((*i, a.degree())).or_insert(0) += b;
        }
        out
    }

    /// Projective dimension: largest `i` with a nonzero entry.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    pub fn regularity(&self) -> Regularity {
        self.entries
            .keys()
            .map(|(i, a)| a.degree() as i64 - *i as i64)
            .max()
            .map_or(Regularity::MinusInfinity, Regularity::Finite)
    }
}

/// Betti table by the restricted Taylor complex with the default `μ` cap.
pub fn betti_table(ideal: &MonomialIdeal, field: CoefficientField) -> Result<BettiTable> {
    betti_table_with(ideal, field, &BettiOptions::taylor())
}

pub fn betti_table_with(
    ideal: &MonomialIdeal,
    field: CoefficientField,
    opts: &BettiOptions,
) -> Result<BettiTable> {
    if ideal.is_zero() {
        return Err(Error::domain("Betti numbers of the zero ideal"));
    }
    let entries = match opts.method {
        BettiMethod::Taylor => taylor_entries(ideal, field, opts.taylor_cap)?,
        BettiMethod::UpperKoszul => koszul_entries(ideal, field, opts.koszul_box_cap)?,
        BettiMethod::Auto => {
            if ideal.mu() <= opts.auto_taylor_max.min(opts.taylor_cap) {
                taylor_entries(ideal, field, opts.taylor_cap)?
            } else {
                koszul_entries(ideal, field, opts.koszul_box_cap)?
            }
        }
    };
    Ok(BettiTable { field, entries })
}

/// `reg(I)` from the restricted Taylor engine; `-∞` for the zero ideal.
pub fn regularity(ideal: &MonomialIdeal, field: CoefficientField) -> Result<Regularity> {
    regularity_with(ideal, field, &BettiOptions::taylor())
}

pub fn regularity_with(
    ideal: &MonomialIdeal,
    field: CoefficientField,
    opts: &BettiOptions,
) -> Result<Regularity> {
    if ideal.is_zero() {
        return Ok(Regularity::MinusInfinity);
    }
    Ok(betti_table_with(ideal, field, opts)?.regularity())
}

/// Subsets of `G(I)` (as bit masks over generator indices) grouped by lcm.
pub(crate) fn taylor_classes(ideal: &MonomialIdeal) -> HashMap<Monomial, Vec<u32>> {
    let gens = ideal.generators();
    let mu = gens.len();
    let mut lcms: Vec<Monomial> = Vec::with_capacity(1 << mu);
    lcms.push(Monomial::one(ideal.nvars()));
    let mut classes: HashMap<Monomial, Vec<u32>> = HashMap::new();
    for mask in 1u32..(1u32 << mu) {
        let low = mask.trailing_zeros() as usize;
        let l = lcms[(mask & (mask - 1)) as usize].lcm(&gens[low]);
        classes.entry(l.clone()).or_default().push(mask);
        lcms.push(l);
    }
    classes
}

fn taylor_entries(
    ideal: &MonomialIdeal,
    field: CoefficientField,
    cap: usize,
) -> Result<BTreeMap<(usize, Monomial), usize>> {
    if ideal.mu() > cap {
        return Err(Error::resource(
            format!("Taylor complex on {} generators", ideal.mu()),
            cap as u64,
        ));
    }
    let mut entries = BTreeMap::new();
    for (a, subsets) in taylor_classes(ideal) {
        for (i, b) in strand_homology(&subsets, field) {
            entries.insert((i, a.clone()), b);
        }
    }
    Ok(entries)
}

/// Homology of one multidegree strand of the Taylor complex.
fn strand_homology(subsets: &[u32], field: CoefficientField) -> Vec<(usize, usize)> {
    let top = subsets.iter().map(|s| s.count_ones()).max().unwrap_or(0) as usize;
    // by_size[k] = subsets with k elements, homological position k - 1.
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    for &s in subsets {
        by_size[s.count_ones() as usize].push(s);
    }
    for v in &mut by_size {
        v.sort_unstable();
    }
    // ranks[k] = rank of the differential out of size-k subsets.
    let mut ranks = vec![0usize; top + 2];
    for k in 2..=top {
        if by_size[k].is_empty() || by_size[k - 1].is_empty() {
            continue;
        }
        let index: HashMap<u32, usize> = by_size[k - 1]
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, i))
            .collect();
        let rows: Vec<Vec<i64>> = by_size[k]
            .iter()
            .map(|&s| {
                let mut row = vec![0i64; index.len()];
                let mut t = 0;
                let mut rest = s;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    if let Some(&col) = index.get(&(s & !bit)) {
                        row[col] = if t % 2 == 0 { 1 } else { -1 };
                    }
                    t += 1;
                    rest &= rest - 1;
                }
                row
            })
            .collect();
        ranks[k] = rank_exact(&rows, field);
    }
    (1..=top)
        .filter_map(|k| {
            let b = by_size[k].len() - ranks[k] - ranks[k + 1];
            (b > 0).then_some((k - 1, b))
        })
        .collect()
}

/// Points of the box `0 <= a <= bound`, lexicographic order.
pub(crate) struct BoxIter {
    bound: Vec<u32>,
    next: Option<Vec<u32>>,
}

impl BoxIter {
    pub(crate) fn new(bound: Vec<u32>) -> Self {
        let start = vec![0; bound.len()];
        BoxIter {
            bound,
            next: Some(start),
        }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        for j in (0..succ.len()).rev() {
            if succ[j] < self.bound[j] {
                succ[j] += 1;
                self.next = Some(succ);
                return Some(cur);
            }
            succ[j] = 0;
        }
        Some(cur)
    }
}

pub(crate) fn box_volume(bound: &[u32]) -> u64 {
    bound
        .iter()
        .try_fold(1u64, |acc, &b| acc.checked_mul(b as u64 + 1))
        .unwrap_or(u64::MAX)
}

/// `K^a(I) = {F ⊆ supp(a) : x^{a-F} ∈ I}`.
pub fn upper_koszul_complex(ideal: &MonomialIdeal, a: &Monomial) -> SimplicialComplex {
    let n = ideal.nvars();
    let supp = a.support_mask();
    let mut faces = Vec::new();
    let mut sub = supp;
    loop {
        let shifted = a.colon(&Monomial::from_mask(n, sub));
        if ideal.contains_unchecked(&shifted) {
            faces.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & supp;
    }
    SimplicialComplex::from_faces(n, faces)
}

fn in_lcm_lattice(ideal: &MonomialIdeal, a: &Monomial) -> bool {
    let mut acc: Option<Monomial> = None;
    for g in ideal.generators().iter().filter(|g| g.divides(a)) {
        acc = Some(match acc {
            None => g.clone(),
            Some(l) => l.lcm(g),
        });
    }
    acc.is_some_and(|l| &l == a)
}

fn koszul_entries(
    ideal: &MonomialIdeal,
    field: CoefficientField,
    box_cap: u64,
) -> Result<BTreeMap<(usize, Monomial), usize>> {
    let bound = ideal.per_variable_max()?;
    let volume = box_volume(&bound);
    if volume > box_cap {
        return Err(Error::resource(
            format!("upper Koszul scan over {volume} multidegrees"),
            box_cap,
        ));
    }
    let mut entries = BTreeMap::new();
    for point in BoxIter::new(bound) {
        let a = Monomial::new(point);
        if !in_lcm_lattice(ideal, &a) {
            continue;
        }
        let h = reduced_homology(&upper_koszul_complex(ideal, &a), field);
        for (i, d) in h.nonzero() {
            entries.insert(((i + 1) as usize, a.clone()), d);
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoefficientField = CoefficientField::Rationals;

    fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, rows).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn both(i: &MonomialIdeal) -> BettiTable {
        let t = betti_table_with(i, Q, &BettiOptions::taylor()).unwrap();
        let k = betti_table_with(i, Q, &BettiOptions::upper_koszul()).unwrap();
        assert_eq!(t, k, "engines disagree on {i}");
        t
    }

    #[test]
    fn koszul_two_variables() {
        let t = both(&ideal(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(t.get(0, &m(&[1, 0])), 1);
        assert_eq!(t.get(0, &m(&[0, 1])), 1);
        assert_eq!(t.get(1, &m(&[1, 1])), 1);
        assert_eq!(t.len(), 3);
        assert_eq!(t.regularity(), Regularity::Finite(1));
    }

    #[test]
    fn regular_sequence_of_squares() {
        let t = both(&ideal(2, &[&[2, 0], &[0, 2]]));
        assert_eq!(t.get(1, &m(&[2, 2])), 1);
        assert_eq!(t.len(), 3);
        assert_eq!(t.regularity(), Regularity::Finite(3));
    }

    #[test]
    fn square_of_maximal_ideal_is_linear() {
        let t = both(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        let coarse = t.coarse();
        assert_eq!(coarse.get(&(0, 2)), Some(&3));
        assert_eq!(coarse.get(&(1, 3)), Some(&2));
        assert_eq!(coarse.len(), 2);
        assert_eq!(t.regularity(), Regularity::Finite(2));
    }

    #[test]
    fn zero_and_unit_ideals() {
        assert_eq!(
            regularity(&MonomialIdeal::zero(2), Q).unwrap(),
            Regularity::MinusInfinity
        );
        assert!(betti_table(&MonomialIdeal::zero(2), Q).is_err());
        let unit = both(&MonomialIdeal::unit(2));
        assert_eq!(unit.regularity(), Regularity::Finite(0));
    }

    #[test]
    fn taylor_cap_names_the_cap() {
        let max = ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let big = max.power(5).unwrap(); // 21 generators
        match betti_table(&big, Q) {
            Err(Error::Resource { cap, .. }) => assert_eq!(cap, 16),
            other => panic!("expected resource error, got {other:?}"),
        }
        let reg = regularity_with(&big, Q, &BettiOptions::default()).unwrap();
        assert_eq!(reg, Regularity::Finite(5));
    }

    #[test]
    fn minus_infinity_sorts_first() {
        assert!(Regularity::MinusInfinity < Regularity::Finite(-100));
        assert_eq!(serde_json::to_string(&Regularity::MinusInfinity).unwrap(), "\"-inf\"");
        assert_eq!(serde_json::to_string(&Regularity::Finite(3)).unwrap(), "3");
    }

    #[test]
    fn box_iter_is_lexicographic() {
        let pts: Vec<Vec<u32>> = BoxIter::new(vec![1, 2]).collect();
        assert_eq!(
            pts,
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]
        );
        assert_eq!(BoxIter::new(vec![]).count(), 1);
    }
}
