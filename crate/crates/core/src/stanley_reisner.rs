//! Simplicial complexes on `{0..n-1}` and the Stanley–Reisner dictionary.
//!
//! Faces are `u64` bit-sets. A complex is stored by its facets, which keeps
//! the void complex (no faces) and the irrelevant complex (only `∅`)
//! distinct: the former has no facets, the latter has the single facet `0`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monomial::{MonomialIdeal, MAX_VARS};

pub type Face = u64;

/// Vertices of a face in increasing order.
pub fn face_vertices(face: Face) -> Vec<usize> {
    (0..64).filter(|j| (face >> j) & 1 == 1).collect()
}

fn is_subset(a: Face, b: Face) -> bool {
    a & !b == 0
}

/// Canonical order on faces: by cardinality, then by bit pattern.
fn face_key(f: &Face) -> (u32, u64) {
    (f.count_ones(), *f)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// The complex generated by `faces`: every subset of a listed face.
    pub fn from_faces(n: usize, faces: impl IntoIterator<Item = Face>) -> Self {
        debug_assert!(n <= MAX_VARS);
        let mut all: Vec<Face> = faces.into_iter().collect();
        all.sort_by_key(|f| std::cmp::Reverse(face_key(f)));
        all.dedup();
        let mut facets: Vec<Face> = Vec::new();
        for f in all {
            if !facets.iter().any(|g| is_subset(f, *g)) {
                facets.push(f);
            }
        }
        facets.sort_by_key(face_key);
        SimplicialComplex { n, facets }
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: Vec::new(),
        }
    }

    pub fn irrelevant(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![0] }
    }

    /// The full simplex on the vertex set `face`.
    pub fn simplex(n: usize, face: Face) -> Self {
        SimplicialComplex {
            n,
            facets: vec![face],
        }
    }

    /// Boundary of the simplex on `face`: all proper subsets.
    pub fn simplex_boundary(n: usize, face: Face) -> Self {
        Self::from_faces(n, face_vertices(face).into_iter().map(|v| face & !(1 << v)))
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.facets == [0]
    }

    pub fn contains_face(&self, face: Face) -> bool {
        self.facets.iter().any(|g| is_subset(face, *g))
    }

    /// Dimension, `None` for the void complex (the irrelevant complex has dimension -1).
    pub fn dim(&self) -> Option<i32> {
        self.facets
            .iter()
            .map(|f| f.count_ones() as i32 - 1)
            .max()
    }

    /// All faces in canonical order.
    pub fn faces(&self) -> Vec<Face> {
        let mut set = BTreeSet::new();
        for &facet in &self.facets {
            // Enumerate all submasks of the facet.
            let mut sub = facet;
            loop {
                set.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & facet;
            }
        }
        let mut faces: Vec<Face> = set.into_iter().collect();
        faces.sort_by_key(face_key);
        faces
    }

    /// `f_i` = number of faces with `i + 1` vertices, indexed from `i = -1`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for face in self.faces() {
            let k = face.count_ones() as usize;
            if f.len() <= k {
                f.resize(k + 1, 0);
            }
            f[k] += 1;
        }
        f
    }

    /// Image under the vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let map = |f: Face| {
            face_vertices(f)
                .into_iter()
                .fold(0u64, |acc, v| acc | (1 << perm[v]))
        };
        Self::from_faces(self.n, self.facets.iter().map(|&f| map(f)))
    }
}

/// `lk_D(F) = {G ⊆ [n] \ F : G ∪ F ∈ D}`.
pub fn link(complex: &SimplicialComplex, face: Face) -> Result<SimplicialComplex> {
    if !complex.contains_face(face) {
        return Err(Error::domain(format!(
            "face {:?} is not in the complex",
            face_vertices(face)
        )));
    }
    Ok(SimplicialComplex::from_faces(
        complex.n,
        complex
            .facets
            .iter()
            .filter(|&&g| is_subset(face, g))
            .map(|&g| g & !face),
    ))
}

/// Stanley–Reisner complex of a squarefree ideal.
///
/// `F` is a face iff `[n] \ F` meets every generator support, so the facets
/// are the complements of the minimal transversals.
pub fn stanley_reisner(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    if !ideal.is_squarefree() {
        return Err(Error::domain(format!(
            "Stanley-Reisner complex needs a squarefree ideal, got {ideal}"
        )));
    }
    let n = ideal.nvars();
    let full = full_mask(n);
    let covers = minimal_transversals(&ideal.support_masks());
    Ok(SimplicialComplex::from_faces(
        n,
        covers.into_iter().map(|c| full & !c),
    ))
}

pub(crate) fn full_mask(n: usize) -> Face {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Inclusion-minimal vertex sets meeting every edge.
///
/// Branches on the vertices of the first unhit edge; vertices tried in an
/// earlier sibling branch are excluded from later ones, so each candidate
/// set is produced at most once. An empty edge admits no transversal.
pub fn minimal_transversals(edges: &[Face]) -> Vec<Face> {
    if edges.contains(&0) {
        return Vec::new();
    }
    let mut edges = edges.to_vec();
    // Short edges first keeps the branching factor low near the root.
    edges.sort_by_key(face_key);
    edges.dedup();
    let mut found = Vec::new();
    branch(&edges, 0, 0, &mut found);
    found.retain(|&c| is_minimal_transversal(&edges, c));
    found.sort_by_key(face_key);
    found.dedup();
    found
}

fn branch(edges: &[Face], chosen: Face, excluded: Face, found: &mut Vec<Face>) {
    if found.iter().any(|&f| is_subset(f, chosen)) {
        return;
    }
    let Some(&edge) = edges.iter().find(|&&e| e & chosen == 0) else {
        found.push(chosen);
        return;
    };
    let mut excluded = excluded;
    for v in face_vertices(edge & !excluded) {
        branch(edges, chosen | (1 << v), excluded, found);
        excluded |= 1 << v;
    }
}

fn is_transversal(edges: &[Face], set: Face) -> bool {
    edges.iter().all(|&e| e & set != 0)
}

fn is_minimal_transversal(edges: &[Face], set: Face) -> bool {
    is_transversal(edges, set)
        && face_vertices(set)
            .into_iter()
            .all(|v| !is_transversal(edges, set & !(1 << v)))
}

/// Minimal primes of `I`, each as the bit-set of its variables.
pub fn minimal_primes(ideal: &MonomialIdeal) -> Result<Vec<Face>> {
    if !ideal.is_proper_nonzero() {
        return Err(Error::domain("minimal primes need a proper nonzero ideal"));
    }
    Ok(minimal_transversals(&ideal.support_masks()))
}

pub fn height(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(minimal_primes(ideal)?
        .into_iter()
        .map(|c| c.count_ones() as usize)
        .min()
        .expect("a proper ideal has a minimal prime"))
}
