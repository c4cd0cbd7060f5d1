//! Monomials and monomial ideals over `n` variables.
//!
//! A [`MonomialIdeal`] always stores its unique minimal generating set,
//! sorted lexicographically, so two ideals are equal exactly when their
//! generator lists are equal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Variable count limit; faces of simplicial complexes are `u64` bit-sets.
pub const MAX_VARS: usize = 64;

/// Exponent vector of a monomial `x_1^{a_1} ... x_n^{a_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_j` (zero-based `j`).
    pub fn var(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        Monomial(e)
    }

    /// `x_F` for a vertex bit-set `F`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Monomial((0..n).map(|j| ((mask >> j) & 1) as u32).collect())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Bit `j` is set iff `x_j` divides the monomial.
    pub fn support_mask(&self) -> u64 {
        debug_assert!(self.0.len() <= MAX_VARS);
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (j, _)| m | (1 << j))
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn squarefree_part(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| e.min(1)).collect())
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn checked_pow(&self, k: u32) -> Result<Monomial> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// `self / gcd(self, other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    pub fn clamp(&self, bound: &[u32]) -> Monomial {
        Monomial(self.0.iter().zip(bound).map(|(a, b)| *a.min(b)).collect())
    }
}

impl From<Vec<u32>> for Monomial {
    fn from(v: Vec<u32>) -> Self {
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", j + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Divisibility-minimal elements, sorted lexicographically.
fn minimal_elements(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        // A proper divisor has strictly smaller degree, so it was seen earlier.
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

/// A monomial ideal, stored by its minimal generators.
///
/// The zero ideal has no generators; the unit ideal has the single
/// generator `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, reduced to `G(I)`.
    pub fn minimize(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::Malformed(format!(
                "{n} variables exceeds the limit of {MAX_VARS}"
            )));
        }
        if let Some(bad) = gens.iter().find(|g| g.nvars() != n) {
            return Err(Error::Malformed(format!(
                "monomial {:?} has {} exponents, expected {n}",
                bad.exponents(),
                bad.nvars()
            )));
        }
        Ok(MonomialIdeal {
            n,
            gens: minimal_elements(gens),
        })
    }

    /// Convenience constructor from raw exponent rows.
    pub fn from_exponents(n: usize, rows: &[&[u32]]) -> Result<Self> {
        Self::minimize(n, rows.iter().map(|r| Monomial::new(r.to_vec())).collect())
    }

    fn from_gens_unchecked(n: usize, gens: Vec<Monomial>) -> Self {
        MonomialIdeal {
            n,
            gens: minimal_elements(gens),
        }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    /// The monomial prime `(x_j : j in mask)`.
    pub fn prime(n: usize, mask: u64) -> Self {
        MonomialIdeal {
            n,
            gens: minimal_elements(
                (0..n)
                    .filter(|j| (mask >> j) & 1 == 1)
                    .map(|j| Monomial::var(n, j))
                    .collect(),
            ),
        }
    }

    /// The squarefree ideal generated by `x_F` for each bit-set `F`.
    pub fn squarefree(n: usize, masks: &[u64]) -> Self {
        Self::from_gens_unchecked(n, masks.iter().map(|&m| Monomial::from_mask(n, m)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    fn check_len(&self, u: &Monomial) -> Result<()> {
        if u.nvars() != self.n {
            return Err(Error::Malformed(format!(
                "monomial has {} exponents, ideal has {} variables",
                u.nvars(),
                self.n
            )));
        }
        Ok(())
    }

    fn check_same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if other.n != self.n {
            return Err(Error::Malformed(format!(
                "ideals live in {} and {} variables",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// Membership of a monomial: some generator divides `u`.
    pub fn contains(&self, u: &Monomial) -> Result<bool> {
        self.check_len(u)?;
        Ok(self.contains_unchecked(u))
    }

    pub(crate) fn contains_unchecked(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_same_ring(other)?;
        Ok(self.gens.iter().all(|g| other.contains_unchecked(g)))
    }

    pub fn multiply(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_ring(other)?;
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for u in &self.gens {
            for v in &other.gens {
                prods.push(u.checked_mul(v)?);
            }
        }
        Ok(Self::from_gens_unchecked(self.n, prods))
    }

    /// `I^m` for `m >= 1`.
    pub fn power(&self, m: u32) -> Result<MonomialIdeal> {
        if m == 0 {
            return Err(Error::domain("power exponent must be at least 1"));
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_ring(other)?;
        let mut lcms = Vec::with_capacity(self.gens.len() * other.gens.len());
        for u in &self.gens {
            for v in &other.gens {
                lcms.push(u.lcm(v));
            }
        }
        Ok(Self::from_gens_unchecked(self.n, lcms))
    }

    /// `I : v`.
    pub fn colon(&self, v: &Monomial) -> Result<MonomialIdeal> {
        self.check_len(v)?;
        Ok(self.colon_unchecked(v))
    }

    pub(crate) fn colon_unchecked(&self, v: &Monomial) -> MonomialIdeal {
        if self.contains_unchecked(v) {
            return MonomialIdeal::unit(self.n);
        }
        Self::from_gens_unchecked(self.n, self.gens.iter().map(|u| u.colon(v)).collect())
    }

    /// `I : v^∞`, by iterating `I : v` to a fixed point.
    pub fn saturate(&self, v: &Monomial) -> Result<MonomialIdeal> {
        self.check_len(v)?;
        let mut cur = self.clone();
        loop {
            let next = cur.colon_unchecked(v);
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    pub fn radical(&self) -> MonomialIdeal {
        Self::from_gens_unchecked(self.n, self.gens.iter().map(Monomial::squarefree_part).collect())
    }

    /// Smallest positive exponent of any variable in any minimal generator.
    pub fn gamma(&self) -> Result<u32> {
        if !self.is_proper_nonzero() {
            return Err(Error::domain("gamma is defined for proper nonzero ideals"));
        }
        Ok(self
            .gens
            .iter()
            .flat_map(|g| g.exponents().iter().copied().filter(|&e| e > 0))
            .min()
            .expect("a proper ideal has a nonconstant generator"))
    }

    /// Number of minimal generators.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    pub fn lcm_of_gens(&self) -> Result<Monomial> {
        if self.is_zero() {
            return Err(Error::domain("lcm of generators of the zero ideal"));
        }
        Ok(self
            .gens
            .iter()
            .fold(Monomial::one(self.n), |acc, g| acc.lcm(g)))
    }

    /// `rho_j = max_u deg_{x_j}(u)` over minimal generators.
    pub fn per_variable_max(&self) -> Result<Vec<u32>> {
        self.lcm_of_gens().map(|m| m.exponents().to_vec())
    }

    /// Generator-support hypergraph as bit-sets.
    pub fn support_masks(&self) -> Vec<u64> {
        self.gens.iter().map(Monomial::support_mask).collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        if self.gens.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}
