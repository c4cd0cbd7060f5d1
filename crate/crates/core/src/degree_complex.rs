//! Degree complexes `Δ_a(J) = Δ(√(J : x^a))` and the regularity witness search.
//!
//! `reg(J)` is the maximum of `|a| + i + 1` over `a ∈ N^n`, `i >= 0` and faces
//! `F ∈ Δ_a(J)` disjoint from `supp(a)` with `H̃_{i-1}(lk F) ≠ 0`. The search
//! only scans `0 <= a_j <= max(ρ_j - 1, 0)`. If a witness had `a_j >= ρ_j`,
//! raising `a_j` would leave `J : x^a`, `supp(a)` and `F` unchanged while
//! increasing `|a|`, so witness values would be unbounded; hence no witness
//! has `a_j >= ρ_j`. This finiteness argument is ours and is checked
//! empirically by comparing against the Betti-number oracle.

use serde::{Serialize, Serializer};

use crate::betti::{box_volume, BoxIter};
use crate::error::{Error, Result};
use crate::homology::{reduced_homology, CoefficientField};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::powers::integral_closure_power;
use crate::stanley_reisner::{face_vertices, link, stanley_reisner, Face, SimplicialComplex};

pub const DEFAULT_WITNESS_BOX_CAP: u64 = 200_000;

/// A certificate `reg(J) >= |a| + i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegWitness {
    pub a: Monomial,
    pub i: usize,
    #[serde(serialize_with = "serialize_face")]
    pub face: Face,
    pub value: i64,
    pub field: CoefficientField,
}

fn serialize_face<S: Serializer>(face: &Face, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(face_vertices(*face))
}

pub fn degree_complex(ideal: &MonomialIdeal, a: &Monomial) -> Result<SimplicialComplex> {
    if ideal.is_zero() {
        return Err(Error::domain("degree complex of the zero ideal"));
    }
    stanley_reisner(&ideal.colon(a)?.radical())
}

/// Box bound `max(ρ_j - 1, 0)` for the witness search.
pub fn witness_box(ideal: &MonomialIdeal) -> Result<Vec<u32>> {
    Ok(ideal
        .per_variable_max()?
        .into_iter()
        .map(|r| r.saturating_sub(1))
        .collect())
}

/// Arg-max witness over the clamped box, refusing boxes above `box_cap`.
pub fn reg_witness_search(ideal: &MonomialIdeal, field: CoefficientField) -> Result<RegWitness> {
    reg_witness_search_capped(ideal, field, DEFAULT_WITNESS_BOX_CAP)
}

pub fn reg_witness_search_capped(
    ideal: &MonomialIdeal,
    field: CoefficientField,
    box_cap: u64,
) -> Result<RegWitness> {
    if !ideal.is_proper_nonzero() {
        return Err(Error::domain("witness search needs a proper nonzero ideal"));
    }
    let bound = witness_box(ideal)?;
    let volume = box_volume(&bound);
    if volume > box_cap {
        return Err(Error::resource(
            format!("witness box of {volume} exponent vectors"),
            box_cap,
        ));
    }
    reg_witness_search_in_box(ideal, field, &bound)
}

/// Lower-bound mode: best witness with `a <= bound`; a valid lower bound on
/// `reg(J)` for any bound.
pub fn reg_witness_search_in_box(
    ideal: &MonomialIdeal,
    field: CoefficientField,
    bound: &[u32],
) -> Result<RegWitness> {
    if !ideal.is_proper_nonzero() {
        return Err(Error::domain("witness search needs a proper nonzero ideal"));
    }
    if bound.len() != ideal.nvars() {
        return Err(Error::Malformed(format!(
            "box has {} coordinates, ideal has {} variables",
            bound.len(),
            ideal.nvars()
        )));
    }
    let mut points: Vec<Monomial> = BoxIter::new(bound.to_vec()).map(Monomial::new).collect();
    points.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.cmp(y)));

    let mut best: Option<RegWitness> = None;
    for a in points {
        let delta = degree_complex(ideal, &a)?;
        if delta.is_void() {
            continue;
        }
        let supp = a.support_mask();
        for face in delta.faces() {
            if face & supp != 0 {
                continue;
            }
            let lk = link(&delta, face)?;
            // Highest nonvanishing H̃_{i-1} gives the largest value at this cell.
            let Some((top, _)) = reduced_homology(&lk, field).nonzero().last() else {
                continue;
            };
            let i = (top + 1) as usize;
            let value = a.degree() as i64 + i as i64 + 1;
            if best.as_ref().is_none_or(|b| value > b.value) {
                best = Some(RegWitness {
                    a: a.clone(),
                    i,
                    face,
                    value,
                    field,
                });
            }
        }
    }
    best.ok_or_else(|| Error::Inconsistent(format!("no regularity witness found for {ideal}")))
}

/// Re-derives a witness from scratch.
pub fn verify_witness(ideal: &MonomialIdeal, w: &RegWitness) -> Result<bool> {
    let delta = degree_complex(ideal, &w.a)?;
    if !delta.contains_face(w.face) || w.face & w.a.support_mask() != 0 {
        return Ok(false);
    }
    let h = reduced_homology(&link(&delta, w.face)?, w.field);
    Ok(h.get(w.i as i32 - 1) >= 1 && w.value == w.a.degree() as i64 + w.i as i64 + 1)
}

/// Compares `Δ_a(I^s)` (or `Δ_a(\overline{I^s})` when `closed`) with `Δ(√I)`.
pub fn check_delta_stability(
    ideal: &MonomialIdeal,
    s: u32,
    a: &Monomial,
    closed: bool,
) -> Result<bool> {
    let power = if closed {
        integral_closure_power(ideal, s)?
    } else {
        ideal.power(s)?
    };
    check_delta_stability_against(ideal, &power, s, a)
}

/// As [`check_delta_stability`] with `I^s` or its closure precomputed.
pub fn check_delta_stability_against(
    ideal: &MonomialIdeal,
    power: &MonomialIdeal,
    s: u32,
    a: &Monomial,
) -> Result<bool> {
    let threshold = ideal.gamma()? as u64 * s as u64;
    if a.degree() + 1 > threshold {
        return Err(Error::domain(format!(
            "|a| = {} exceeds gamma(I)*s - 1 = {}",
            a.degree(),
            threshold as i64 - 1
        )));
    }
    let lhs = degree_complex(power, a)?;
    let rhs = stanley_reisner(&ideal.radical())?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::{regularity_with, BettiOptions, Regularity};

    const Q: CoefficientField = CoefficientField::Rationals;

    fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, rows).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degree_complex_examples() {
        let sq = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(
            degree_complex(&sq, &m(&[0, 0])).unwrap(),
            stanley_reisner(&sq.radical()).unwrap()
        );
        assert!(degree_complex(&sq, &m(&[1, 0])).unwrap().is_irrelevant());
        assert!(degree_complex(&sq, &m(&[2, 0])).unwrap().is_void());
    }

    #[test]
    fn witness_for_maximal_ideal_uses_empty_face() {
        let w = reg_witness_search(&MonomialIdeal::prime(2, 0b11), Q).unwrap();
        assert_eq!(w.a, m(&[0, 0]));
        assert_eq!(w.face, 0);
        assert_eq!(w.i, 0);
        assert_eq!(w.value, 1);
    }

    #[test]
    fn witness_examples_match_betti_oracle() {
        for i in [
            ideal(2, &[&[2, 0], &[0, 2]]),
            MonomialIdeal::squarefree(3, &[0b011, 0b110, 0b101]),
        ] {
            let w = reg_witness_search(&i, Q).unwrap();
            let reg = regularity_with(&i, Q, &BettiOptions::taylor()).unwrap();
            assert_eq!(Regularity::Finite(w.value), reg);
            assert!(verify_witness(&i, &w).unwrap());
        }
        assert_eq!(reg_witness_search(&ideal(2, &[&[2, 0], &[0, 2]]), Q).unwrap().value, 3);
        assert_eq!(
            reg_witness_search(&MonomialIdeal::squarefree(3, &[0b011, 0b110, 0b101]), Q)
                .unwrap()
                .value,
            2
        );
    }

    #[test]
    fn witness_search_errors() {
        assert!(reg_witness_search(&MonomialIdeal::unit(2), Q).is_err());
        let big = ideal(2, &[&[30, 0], &[0, 30]]);
        assert!(matches!(
            reg_witness_search_capped(&big, Q, 100),
            Err(Error::Resource { cap: 100, .. })
        ));
        assert!(reg_witness_search_in_box(&big, Q, &[1]).is_err());
    }

    #[test]
    fn lower_bound_mode_is_a_lower_bound() {
        let i = ideal(2, &[&[3, 0], &[1, 1], &[0, 3]]);
        let full = reg_witness_search(&i, Q).unwrap();
        let partial = reg_witness_search_in_box(&i, Q, &[0, 0]).unwrap();
        assert!(partial.value <= full.value);
    }

    #[test]
    fn delta_stability_examples() {
        let sq = ideal(2, &[&[2, 0], &[0, 2]]);
        assert!(check_delta_stability(&sq, 1, &m(&[1, 0]), false).unwrap());
        assert!(check_delta_stability(&sq, 2, &m(&[1, 1]), true).unwrap());
        let tri = MonomialIdeal::squarefree(3, &[0b011, 0b110, 0b101]);
        assert!(check_delta_stability(&tri, 1, &m(&[0, 0, 0]), false).unwrap());
        assert!(matches!(
            check_delta_stability(&sq, 1, &m(&[2, 0]), false),
            Err(Error::Domain(_))
        ));
    }
}
