//! Reduced simplicial homology over `Q` or `GF(p)`, by exact rank computation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::stanley_reisner::{face_vertices, Face, SimplicialComplex};

/// Coefficient field for homology and Betti numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum CoefficientField {
    #[default]
    Rationals,
    /// Prime field of the given characteristic.
    Prime(u64),
}

impl CoefficientField {
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::domain(format!(
                "{p} is not a supported prime characteristic"
            )));
        }
        Ok(CoefficientField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::Prime(p) => *p,
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "q"),
            CoefficientField::Prime(2) => write!(f, "f2"),
            CoefficientField::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for CoefficientField {
    type Err = Error;

    /// Accepts `q`, `f2`, or `fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "q" | "qq" | "rationals" => Ok(CoefficientField::Rationals),
            "f2" => Ok(CoefficientField::Prime(2)),
            other => match other.strip_prefix("fp:") {
                Some(p) => {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| Error::Malformed(format!("bad characteristic in {s:?}")))?;
                    CoefficientField::prime(p)
                }
                None => Err(Error::Malformed(format!(
                    "unknown field {s:?}; expected q, f2 or fp:<p>"
                ))),
            },
        }
    }
}

impl Serialize for CoefficientField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CoefficientField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `dim H̃_i` for `i >= -1`; absent indices are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ChainComplexDims {
    dims: BTreeMap<i32, usize>,
}

impl ChainComplexDims {
    pub fn get(&self, i: i32) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    /// Indices with nonzero homology, ascending.
    pub fn nonzero(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.dims.iter().map(|(&i, &d)| (i, d))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// `Σ (-1)^i dim H̃_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&i, &d)| if i.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Rank of an integer matrix, read over the given field.
pub fn rank_exact(rows: &[Vec<i64>], field: CoefficientField) -> usize {
    match field {
        CoefficientField::Rationals => {
            rank_integer_fraction_free(rows).unwrap_or_else(|| rank_big_rational(rows))
        }
        CoefficientField::Prime(p) => rank_mod_p(rows, p),
    }
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

/// Integer row reduction with content normalization; `None` on overflow.
fn rank_integer_fraction_free(rows: &[Vec<i64>]) -> Option<usize> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .filter(|r: &Vec<i128>| r.iter().any(|&x| x != 0))
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col];
        for r in rank + 1..m.len() {
            let f = m[r][col];
            if f == 0 {
                continue;
            }
            let mut content = 0i128;
            for c in col..ncols {
                let v = m[r][c]
                    .checked_mul(pivot)?
                    .checked_sub(m[rank][c].checked_mul(f)?)?;
                m[r][c] = v;
                content = gcd_i128(content, v);
            }
            if content > 1 {
                for c in col..ncols {
                    m[r][c] /= content;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

fn rank_big_rational(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..ncols {
                let delta = &f * &m[rank][c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let reduce = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| reduce(x)).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        // Fermat: a^(p-2).
        let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let pinv = inv(m[rank][col]);
        for r in rank + 1..m.len() {
            if m[r][col] == 0 {
                continue;
            }
            let f = mulmod(m[r][col], pinv);
            for c in col..ncols {
                let sub = mulmod(f, m[rank][c]);
                m[r][c] = (m[r][c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Boundary matrix from faces with `k + 1` vertices to faces with `k`
/// vertices; removing the vertex at position `t` carries sign `(-1)^t`.
fn boundary_matrix(upper: &[Face], lower_index: &HashMap<Face, usize>) -> Vec<Vec<i64>> {
    upper
        .iter()
        .map(|&face| {
            let mut row = vec![0i64; lower_index.len()];
            for (t, v) in face_vertices(face).into_iter().enumerate() {
                let col = lower_index[&(face & !(1 << v))];
                row[col] = if t % 2 == 0 { 1 } else { -1 };
            }
            row
        })
        .collect()
}

/// Reduced homology of the augmented chain complex.
///
/// The void complex has no homology at all; the irrelevant complex `{∅}` has
/// `dim H̃_{-1} = 1`; any complex with a vertex has `dim H̃_{-1} = 0`.
pub fn reduced_homology(complex: &SimplicialComplex, field: CoefficientField) -> ChainComplexDims {
    let mut dims = BTreeMap::new();
    let Some(top) = complex.dim() else {
        return ChainComplexDims { dims };
    };
    // by_size[k] = faces with k vertices, i.e. dimension k - 1.
    let mut by_size: Vec<Vec<Face>> = vec![Vec::new(); (top + 2) as usize];
    for f in complex.faces() {
        by_size[f.count_ones() as usize].push(f);
    }
    // ranks[k] = rank of the boundary out of faces with k vertices.
    let mut ranks = vec![0usize; by_size.len() + 1];
    for k in 1..by_size.len() {
        let index: HashMap<Face, usize> = by_size[k - 1]
            .iter()
            .enumerate()
            .map(|(i, &f)| (f, i))
            .collect();
        ranks[k] = rank_exact(&boundary_matrix(&by_size[k], &index), field);
    }
    for k in 0..by_size.len() {
        let h = by_size[k].len() - ranks[k] - ranks[k + 1];
        if h > 0 {
            dims.insert(k as i32 - 1, h);
        }
    }
    ChainComplexDims { dims }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: CoefficientField = CoefficientField::Rationals;
    const F2: CoefficientField = CoefficientField::Prime(2);

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<CoefficientField>().unwrap(), Q);
        assert_eq!("f2".parse::<CoefficientField>().unwrap(), F2);
        assert_eq!(
            "fp:7".parse::<CoefficientField>().unwrap(),
            CoefficientField::Prime(7)
        );
        assert!("fp:9".parse::<CoefficientField>().is_err());
        assert!("r".parse::<CoefficientField>().is_err());
        assert_eq!(CoefficientField::Prime(5).to_string(), "fp:5");
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_exact(&[vec![0, 0], vec![0, 0]], Q), 0);
        let id: Vec<Vec<i64>> = (0..3)
            .map(|i| (0..3).map(|j| (i == j) as i64).collect())
            .collect();
        assert_eq!(rank_exact(&id, Q), 3);
        assert_eq!(rank_exact(&id, F2), 3);
        assert_eq!(rank_exact(&[], Q), 0);
    }

    #[test]
    fn hollow_triangle_edge_boundary_has_rank_two() {
        // Edges {0,1}, {1,2}, {0,2} against vertices 0, 1, 2.
        let d1 = vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
        assert_eq!(rank_exact(&d1, Q), 2);
        assert_eq!(rank_exact(&d1, F2), 2);
    }

    #[test]
    fn characteristic_matters_for_rank() {
        let m = vec![vec![2, 0], vec![0, 1]];
        assert_eq!(rank_exact(&m, Q), 2);
        assert_eq!(rank_exact(&m, F2), 1);
    }

    #[test]
    fn homology_conventions() {
        assert!(reduced_homology(&SimplicialComplex::void(3), Q).is_zero());
        let irr = reduced_homology(&SimplicialComplex::irrelevant(3), Q);
        assert_eq!(irr.get(-1), 1);
        assert_eq!(irr.nonzero().count(), 1);
        let point = reduced_homology(&SimplicialComplex::simplex(3, 0b1), Q);
        assert!(point.is_zero());
    }

    #[test]
    fn homology_examples() {
        let hollow = SimplicialComplex::from_faces(3, [0b011, 0b110, 0b101]);
        let h = reduced_homology(&hollow, Q);
        assert_eq!(h.get(1), 1);
        assert_eq!(h.nonzero().count(), 1);
        let two_points = SimplicialComplex::from_faces(2, [0b01, 0b10]);
        let h = reduced_homology(&two_points, Q);
        assert_eq!(h.get(0), 1);
        assert_eq!(h.nonzero().count(), 1);
    }

    #[test]
    fn simplex_boundaries_are_spheres() {
        for d in 1..=4u32 {
            let face = (1u64 << (d + 1)) - 1;
            let sphere = SimplicialComplex::simplex_boundary(d as usize + 1, face);
            for field in [Q, F2] {
                let h = reduced_homology(&sphere, field);
                assert_eq!(h.get(d as i32 - 1), 1, "d = {d}");
                assert_eq!(h.nonzero().count(), 1, "d = {d}");
            }
        }
    }

    #[test]
    fn real_projective_plane_depends_on_characteristic() {
        // Six-vertex triangulation of RP^2.
        let tris = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let rp2 = SimplicialComplex::from_faces(
            6,
            tris.iter().map(|t| t.iter().fold(0u64, |m, &v| m | (1 << v))),
        );
        assert!(reduced_homology(&rp2, Q).is_zero());
        let h2 = reduced_homology(&rp2, F2);
        assert_eq!(h2.get(1), 1);
        assert_eq!(h2.get(2), 1);
    }

    #[test]
    fn big_rational_path_agrees() {
        let rows = vec![vec![3, 6, 9], vec![1, 2, 3], vec![0, 1, 1]];
        assert_eq!(rank_big_rational(&rows), 2);
        assert_eq!(rank_integer_fraction_free(&rows), Some(2));
        let huge = vec![vec![i64::MAX, 1], vec![i64::MAX - 1, 1]];
        assert_eq!(rank_big_rational(&huge), 2);
        assert_eq!(rank_exact(&huge, Q), 2);
    }

    fn arb_complex(n: usize) -> impl Strategy<Value = SimplicialComplex> {
        prop::collection::vec(0u64..(1 << n), 0..6)
            .prop_map(move |f| SimplicialComplex::from_faces(n, f))
    }

    proptest! {
        #[test]
        fn euler_poincare(d in arb_complex(5)) {
            let f = d.f_vector();
            // f[k] counts faces with k vertices (dimension k - 1).
            let chi: i64 = f.iter().enumerate()
                .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { -(c as i64) })
                .sum::<i64>();
            for field in [Q, F2] {
                // Σ_{i>=-1} (-1)^i f_i equals Σ (-1)^i dim H̃_i.
                prop_assert_eq!(chi, reduced_homology(&d, field).euler_characteristic());
            }
        }

        #[test]
        fn relabeling_invariance(d in arb_complex(4), perm in Just(vec![0usize,1,2,3]).prop_shuffle()) {
            let r = d.relabel(&perm);
            prop_assert_eq!(reduced_homology(&d, Q), reduced_homology(&r, Q));
        }

        #[test]
        fn integer_and_rational_ranks_agree(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 0..5)) {
            prop_assert_eq!(rank_exact(&rows, Q), rank_big_rational(&rows));
        }
    }
}
