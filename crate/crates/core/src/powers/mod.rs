//! Symbolic powers and integral closures of powers.
//!
//! Integral closure is computed from the Newton polyhedron: `x^a` lies in
//! `\overline{I^s}` iff `a ∈ s·conv(G(I)) + R^n_{>=0}`, decided by an exact
//! LP. Minimal generators of `\overline{I^s}` lie in the box
//! `0 <= a_j <= s·ρ_j(I)`: if `a_j` exceeds every vertex's `j`-coordinate
//! scaled by `s`, the point minus `e_j` is still in the polyhedron.

pub mod lp;

use num_rational::BigRational;

use crate::betti::{box_volume, BoxIter};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::stanley_reisner::{full_mask, minimal_primes};

pub const DEFAULT_CLOSURE_BOX_CAP: u64 = 2_000_000;

/// `I^(m)` via saturation: `∩_C (I^m : (∏_{j ∉ C} x_j)^∞)` over minimal primes `C`.
pub fn symbolic_power_by_saturation(ideal: &MonomialIdeal, m: u32) -> Result<MonomialIdeal> {
    check_symbolic_args(ideal, m)?;
    let n = ideal.nvars();
    let pm = ideal.power(m)?;
    let mut acc: Option<MonomialIdeal> = None;
    for cover in minimal_primes(ideal)? {
        let outside = Monomial::from_mask(n, full_mask(n) & !cover);
        let local = pm.saturate(&outside)?;
        acc = Some(match acc {
            None => local,
            Some(prev) => prev.intersect(&local)?,
        });
    }
    Ok(acc.expect("a proper ideal has a minimal prime"))
}

/// `I^(m) = ∩ p^m` over minimal primes; only valid for squarefree `I`.
pub fn symbolic_power_squarefree(ideal: &MonomialIdeal, m: u32) -> Result<MonomialIdeal> {
    check_symbolic_args(ideal, m)?;
    if !ideal.is_squarefree() {
        return Err(Error::domain("prime-power intersection needs a squarefree ideal"));
    }
    let n = ideal.nvars();
    let mut acc: Option<MonomialIdeal> = None;
    for cover in minimal_primes(ideal)? {
        let pm = MonomialIdeal::prime(n, cover).power(m)?;
        acc = Some(match acc {
            None => pm,
            Some(prev) => prev.intersect(&pm)?,
        });
    }
    Ok(acc.expect("a proper ideal has a minimal prime"))
}

fn check_symbolic_args(ideal: &MonomialIdeal, m: u32) -> Result<()> {
    if !ideal.is_proper_nonzero() {
        return Err(Error::domain("symbolic powers need a proper nonzero ideal"));
    }
    if m == 0 {
        return Err(Error::domain("symbolic power exponent must be at least 1"));
    }
    Ok(())
}

/// `I^(m)`. Squarefree inputs are computed along both routes, which must agree.
pub fn symbolic_power(ideal: &MonomialIdeal, m: u32) -> Result<MonomialIdeal> {
    let general = symbolic_power_by_saturation(ideal, m)?;
    if ideal.is_squarefree() {
        let fast = symbolic_power_squarefree(ideal, m)?;
        if fast != general {
            return Err(Error::Inconsistent(format!(
                "symbolic power {m} of {ideal}: saturation gives {general}, prime powers give {fast}"
            )));
        }
    }
    Ok(general)
}

/// Is `target ∈ scale · NP(vertices)`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonMembershipQuery {
    pub target: Monomial,
    pub vertices: Vec<Monomial>,
    pub scale: u32,
}

impl NewtonMembershipQuery {
    pub fn new(target: Monomial, ideal: &MonomialIdeal, scale: u32) -> Self {
        NewtonMembershipQuery {
            target,
            vertices: ideal.generators().to_vec(),
            scale,
        }
    }
}

/// Exists `λ >= 0` with `Σλ = s` and `Σ λ_u u <= target`, decided exactly.
pub fn newton_member(q: &NewtonMembershipQuery) -> bool {
    let n = q.target.nvars();
    let k = q.vertices.len();
    if k == 0 {
        return false;
    }
    let int = |v: i64| BigRational::from_integer(v.into());
    // Columns: λ_1..λ_k, then one slack per coordinate.
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row: Vec<BigRational> = q
            .vertices
            .iter()
            .map(|v| int(v.exponents()[j] as i64))
            .collect();
        row.extend((0..n).map(|t| int((t == j) as i64)));
        a.push(row);
        b.push(int(q.target.exponents()[j] as i64));
    }
    let mut sum_row: Vec<BigRational> = vec![int(1); k];
    sum_row.extend((0..n).map(|_| int(0)));
    a.push(sum_row);
    b.push(int(q.scale as i64));
    lp::feasible(&a, &b)
}

/// `\overline{I^s}` by scanning the box `0 <= a <= s·ρ(I)`.
pub fn integral_closure_power(ideal: &MonomialIdeal, s: u32) -> Result<MonomialIdeal> {
    integral_closure_power_with(ideal, s, DEFAULT_CLOSURE_BOX_CAP)
}

pub fn integral_closure_power_with(
    ideal: &MonomialIdeal,
    s: u32,
    box_cap: u64,
) -> Result<MonomialIdeal> {
    if ideal.is_zero() {
        return Err(Error::domain("integral closure of the zero ideal"));
    }
    if s == 0 {
        return Err(Error::domain("closure power must be at least 1"));
    }
    let n = ideal.nvars();
    if ideal.is_unit() {
        return Ok(MonomialIdeal::unit(n));
    }
    let bound: Vec<u32> = ideal
        .per_variable_max()?
        .iter()
        .map(|&r| r.checked_mul(s).ok_or(Error::Overflow))
        .collect::<Result<_>>()?;
    let volume = box_volume(&bound);
    if volume > box_cap {
        return Err(Error::resource(
            format!("integral closure box of {volume} lattice points"),
            box_cap,
        ));
    }
    let power = ideal.power(s)?;
    let min_degree = ideal.generators().iter().map(Monomial::degree).min().unwrap_or(0);
    let floor = min_degree * s as u64;

    // Row-major membership bitmap over the box (last coordinate fastest,
    // matching `BoxIter`).
    let mut strides = vec![1usize; n];
    for j in (0..n.saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * (bound[j + 1] as usize + 1);
    }
    let mut member = vec![false; volume as usize];
    let mut points = Vec::with_capacity(volume as usize);
    for (idx, point) in BoxIter::new(bound).enumerate() {
        let a = Monomial::new(point);
        member[idx] = if power.contains_unchecked(&a) {
            true
        } else if a.degree() < floor {
            false
        } else {
            newton_member(&NewtonMembershipQuery::new(a.clone(), ideal, s))
        };
        points.push(a);
    }
    // Members form an up-set; the minimal ones have every decrement outside.
    let gens: Vec<Monomial> = points
        .into_iter()
        .enumerate()
        .filter(|(idx, a)| {
            member[*idx]
                && a.exponents()
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| e == 0 || !member[idx - strides[j]])
        })
        .map(|(_, a)| a)
        .collect();
    MonomialIdeal::minimize(n, gens)
}

pub fn is_integrally_closed(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(&integral_closure_power(ideal, 1)? == ideal)
}

/// Least `s` with `u^s ∈ I^s` for every `u ∈ G(\overline I)`.
pub fn remint_s(ideal: &MonomialIdeal, s_cap: u32) -> Result<u32> {
    if !ideal.is_proper_nonzero() {
        return Err(Error::domain("remint_s needs a proper nonzero ideal"));
    }
    let closure = integral_closure_power(ideal, 1)?;
    for s in 1..=s_cap {
        let power = ideal.power(s)?;
        let mut ok = true;
        for u in closure.generators() {
            if !power.contains_unchecked(&u.checked_pow(s)?) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(s);
        }
    }
    Err(Error::resource(
        format!("no s <= {s_cap} puts every closure generator's s-th power in I^s"),
        s_cap as u64,
    ))
}

/// Smallest `k <= k_max` with `u^k ∈ I^{sk}`, the defining criterion for
/// `u ∈ \overline{I^s}`; `None` if no such `k` is found.
pub fn power_membership_witness(
    ideal: &MonomialIdeal,
    u: &Monomial,
    s: u32,
    k_max: u32,
) -> Result<Option<u32>> {
    for k in 1..=k_max {
        let power = ideal.power(s * k)?;
        if power.contains(&u.checked_pow(k)?)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, rows).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn triangle() -> MonomialIdeal {
        MonomialIdeal::squarefree(3, &[0b011, 0b110, 0b101])
    }

    #[test]
    fn symbolic_square_of_triangle() {
        // (x,y)^2 ∩ (y,z)^2 ∩ (x,z)^2 by pairwise lcm.
        let p = |mask| MonomialIdeal::prime(3, mask).power(2).unwrap();
        let oracle = p(0b011)
            .intersect(&p(0b110))
            .unwrap()
            .intersect(&p(0b101))
            .unwrap();
        let got = symbolic_power(&triangle(), 2).unwrap();
        assert_eq!(got, oracle);
        assert_eq!(
            got,
            ideal(3, &[&[1, 1, 1], &[2, 2, 0], &[0, 2, 2], &[2, 0, 2]])
        );
    }

    #[test]
    fn symbolic_power_identities() {
        assert_eq!(symbolic_power(&triangle(), 1).unwrap(), triangle());
        let max = MonomialIdeal::prime(2, 0b11);
        assert_eq!(symbolic_power(&max, 3).unwrap(), max.power(3).unwrap());
        assert!(symbolic_power(&MonomialIdeal::unit(2), 2).is_err());
        assert!(symbolic_power(&triangle(), 0).is_err());
        assert!(symbolic_power_squarefree(&ideal(1, &[&[2]]), 1).is_err());
    }

    #[test]
    fn symbolic_power_of_non_squarefree_uses_saturation() {
        // (x^2, xy): minimal prime (x); I^(1) = I : y^∞ = (x).
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(symbolic_power(&i, 1).unwrap(), ideal(2, &[&[1, 0]]));
    }

    #[test]
    fn newton_membership_examples() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        assert!(newton_member(&NewtonMembershipQuery::new(m(&[1, 1]), &i, 1)));
        assert!(!newton_member(&NewtonMembershipQuery::new(m(&[1, 0]), &i, 1)));
        assert!(newton_member(&NewtonMembershipQuery::new(m(&[2, 2]), &i, 2)));
        assert!(!newton_member(&NewtonMembershipQuery::new(m(&[2, 1]), &i, 2)));
    }

    #[test]
    fn closure_examples() {
        let sq = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(
            integral_closure_power(&sq, 1).unwrap(),
            ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])
        );
        let max = MonomialIdeal::prime(2, 0b11);
        assert_eq!(integral_closure_power(&max, 1).unwrap(), max);
        let cubes = ideal(2, &[&[3, 0], &[0, 3]]);
        assert_eq!(
            integral_closure_power(&cubes, 1).unwrap(),
            ideal(2, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]])
        );
    }

    #[test]
    fn closure_box_cap() {
        let sq = ideal(2, &[&[2, 0], &[0, 2]]);
        match integral_closure_power_with(&sq, 1, 4) {
            Err(Error::Resource { cap, .. }) => assert_eq!(cap, 4),
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn integrally_closed_examples() {
        assert!(is_integrally_closed(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap());
        assert!(!is_integrally_closed(&ideal(2, &[&[2, 0], &[0, 2]])).unwrap());
        assert!(is_integrally_closed(&triangle()).unwrap());
    }

    #[test]
    fn remint_examples() {
        assert_eq!(remint_s(&MonomialIdeal::prime(2, 0b11), 8).unwrap(), 1);
        assert_eq!(remint_s(&ideal(2, &[&[2, 0], &[0, 2]]), 8).unwrap(), 2);
        // Brute force for (x^3, y^3): the closure adds x^2y and xy^2.
        let cubes = ideal(2, &[&[3, 0], &[0, 3]]);
        let brute = (1..=8)
            .find(|&s| {
                let p = cubes.power(s).unwrap();
                [m(&[2, 1]), m(&[1, 2])]
                    .iter()
                    .all(|u| p.contains(&u.checked_pow(s).unwrap()).unwrap())
            })
            .unwrap();
        assert_eq!(brute, 3);
        assert_eq!(remint_s(&cubes, 8).unwrap(), brute);
        assert!(matches!(remint_s(&cubes, 2), Err(Error::Resource { cap: 2, .. })));
    }

    #[test]
    fn power_membership_witness_examples() {
        let sq = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(power_membership_witness(&sq, &m(&[1, 1]), 1, 6).unwrap(), Some(2));
        assert_eq!(power_membership_witness(&sq, &m(&[1, 0]), 1, 6).unwrap(), None);
    }
}
