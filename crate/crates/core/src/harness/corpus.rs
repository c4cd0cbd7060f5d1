//! Reproducible corpora of small monomial ideals.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::stanley_reisner::Face;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusMode {
    /// All proper nonzero squarefree ideals on `n` variables up to relabeling.
    ExhaustiveSquarefree,
    RandomMonomial,
    /// Edge ideals of small graphs and powers of maximal ideals.
    NamedFamily,
    /// Union of the three modes with the acceptance parameters.
    Acceptance,
}

impl FromStr for CorpusMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive-squarefree" => Ok(CorpusMode::ExhaustiveSquarefree),
            "random-monomial" => Ok(CorpusMode::RandomMonomial),
            "named-family" => Ok(CorpusMode::NamedFamily),
            "acceptance" => Ok(CorpusMode::Acceptance),
            _ => Err(Error::Malformed(format!(
                "unknown corpus mode {s:?}; expected exhaustive-squarefree, \
                 random-monomial, named-family or acceptance"
            ))),
        }
    }
}

impl fmt::Display for CorpusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CorpusMode::ExhaustiveSquarefree => "exhaustive-squarefree",
            CorpusMode::RandomMonomial => "random-monomial",
            CorpusMode::NamedFamily => "named-family",
            CorpusMode::Acceptance => "acceptance",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub n: usize,
    pub mode: CorpusMode,
    /// Largest total degree of a random generator.
    pub degree_cap: u32,
    /// Largest number of random generators drawn per ideal.
    pub mu_cap: usize,
    /// Number of random ideals.
    pub count: usize,
    pub seed: u64,
}

impl CorpusSpec {
    /// The corpus the acceptance criteria are stated over.
    pub fn acceptance() -> Self {
        CorpusSpec {
            n: 3,
            mode: CorpusMode::Acceptance,
            degree_cap: 3,
            mu_cap: 4,
            count: 100,
            seed: 42,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.degree_cap == 0 || self.mu_cap == 0 {
            return Err(Error::Malformed(
                "corpus n, degree cap and mu cap must be positive".into(),
            ));
        }
        if matches!(
            self.mode,
            CorpusMode::ExhaustiveSquarefree | CorpusMode::Acceptance
        ) && self.n > 4
        {
            return Err(Error::resource("exhaustive squarefree enumeration variables", 4));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusItem {
    pub name: String,
    pub ideal: MonomialIdeal,
}

pub fn generate(spec: &CorpusSpec) -> Result<Vec<CorpusItem>> {
    spec.validate()?;
    Ok(match spec.mode {
        CorpusMode::ExhaustiveSquarefree => exhaustive_squarefree(spec.n),
        CorpusMode::RandomMonomial => {
            random_monomial(spec.n, spec.degree_cap, spec.mu_cap, spec.count, spec.seed)
        }
        CorpusMode::NamedFamily => named_families(),
        CorpusMode::Acceptance => {
            let mut items = exhaustive_squarefree(spec.n);
            items.extend(random_monomial(
                spec.n,
                spec.degree_cap,
                spec.mu_cap,
                spec.count,
                spec.seed,
            ));
            items.extend(named_families());
            items
        }
    })
}

fn relabel_mask(mask: Face, perm: &[usize]) -> Face {
    (0..perm.len())
        .filter(|&v| (mask >> v) & 1 == 1)
        .fold(0, |acc, v| acc | (1 << perm[v]))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Antichains of nonempty subsets of `[n]`, one per relabeling orbit.
pub fn exhaustive_squarefree(n: usize) -> Vec<CorpusItem> {
    let subsets: Vec<Face> = (1..(1u64 << n)).collect();
    let perms = permutations(n);
    let mut orbits: BTreeSet<Vec<Face>> = BTreeSet::new();
    for choice in 1u64..(1u64 << subsets.len()) {
        let family: Vec<Face> = subsets
            .iter()
            .enumerate()
            .filter(|(i, _)| (choice >> i) & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        let antichain = family
            .iter()
            .all(|&a| family.iter().all(|&b| a == b || a & !b != 0));
        if !antichain {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| {
                let mut img: Vec<Face> = family.iter().map(|&f| relabel_mask(f, p)).collect();
                img.sort_unstable();
                img
            })
            .min()
            .expect("at least one permutation");
        orbits.insert(canonical);
    }
    let mut items: Vec<CorpusItem> = orbits
        .into_iter()
        .map(|family| MonomialIdeal::squarefree(n, &family))
        .map(|ideal| CorpusItem { name: String::new(), ideal })
        .collect();
    items.sort_by(|a, b| {
        (a.ideal.mu(), a.ideal.generators()).cmp(&(b.ideal.mu(), b.ideal.generators()))
    });
    for (k, item) in items.iter_mut().enumerate() {
        item.name = format!("sqfree-n{n}-{k:02}");
    }
    items
}

/// Seeded random ideals; each draws up to `mu_cap` generators of total
/// degree between 1 and `degree_cap`.
pub fn random_monomial(
    n: usize,
    degree_cap: u32,
    mu_cap: usize,
    count: usize,
    seed: u64,
) -> Vec<CorpusItem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let mu = rng.gen_range(1..=mu_cap);
            let gens: Vec<Monomial> = (0..mu)
                .map(|_| {
                    let d = rng.gen_range(1..=degree_cap);
                    let mut e = vec![0u32; n];
                    for _ in 0..d {
                        e[rng.gen_range(0..n)] += 1;
                    }
                    Monomial::new(e)
                })
                .collect();
            CorpusItem {
                name: format!("random-s{seed}-{k:03}"),
                ideal: MonomialIdeal::minimize(n, gens).expect("generated with n exponents"),
            }
        })
        .collect()
}

fn edge_ideal(n: usize, edges: &[(usize, usize)]) -> MonomialIdeal {
    let masks: Vec<Face> = edges.iter().map(|&(a, b)| (1 << a) | (1 << b)).collect();
    MonomialIdeal::squarefree(n, &masks)
}

/// Paths, cycles and complete graphs on at most 5 vertices, and
/// `(x_1..x_n)^d` for `n, d <= 3`. Duplicate ideals keep their first name.
pub fn named_families() -> Vec<CorpusItem> {
    let mut items: Vec<CorpusItem> = Vec::new();
    let mut push = |name: String, ideal: MonomialIdeal| {
        if !items.iter().any(|it| it.ideal == ideal) {
            items.push(CorpusItem { name, ideal });
        }
    };
    for k in 2..=5 {
        let edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
        push(format!("path-P{k}"), edge_ideal(k, &edges));
    }
    for k in 3..=5 {
        let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        push(format!("cycle-C{k}"), edge_ideal(k, &edges));
    }
    for k in 2..=5 {
        let edges: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        push(format!("complete-K{k}"), edge_ideal(k, &edges));
    }
    for n in 1..=3 {
        let max = MonomialIdeal::prime(n, (1 << n) - 1);
        for d in 1..=3 {
            push(
                format!("maximal-n{n}^{d}"),
                max.power(d).expect("small powers do not overflow"),
            );
        }
    }
    items
}
