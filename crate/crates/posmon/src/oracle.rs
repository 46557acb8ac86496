//! Independent brute-force factorizer.
//!
//! The engine in [`crate::monoid`] enumerates factorizations through
//! Archimedean strata; this module answers the same questions by the most
//! direct means available so the two can be checked against each other.
//! Over Q that means a plain depth-first search with per-variable bounds
//! `c_i <= x / g_i` and no pruning beyond nonnegativity. Over Q(X) the
//! instance is evaluated at rational substitution points large enough to
//! keep every generator positive; the per-point candidate sets are
//! intersected and the survivors verified symbolically, which is sound and
//! complete: a true factorization survives every evaluation, and any false
//! candidate dies at the exact check.
//!
//! Performance is a non-goal here; the oracle is deliberately naive.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::rational::{nth_prime, Rational};
use crate::field::{FieldElem, FieldTag};

/// Exponent vector over the generator list exactly as given (no sorting,
/// no dedup); callers map positions to atom indices themselves.
pub type ExponentVec = Vec<u64>;

/// All nonnegative integer solutions of `sum c_i * gens_i = x` over Q.
pub fn oracle_factorizations_q(gens: &[Rational], x: &Rational) -> Result<BTreeSet<ExponentVec>> {
    for g in gens {
        if !g.is_positive() {
            return Err(Error::Domain(format!("generator {g} is not positive")));
        }
    }
    if x.is_negative() {
        return Err(Error::Domain(format!("target {x} is negative")));
    }
    // Clear denominators once; the search itself runs on integers.
    let mut lcm = x.denom().clone();
    for g in gens {
        lcm = lcm.lcm(g.denom());
    }
    let weights: Vec<BigInt> = gens.iter().map(|g| g.numer() * (&lcm / g.denom())).collect();
    let target = x.numer() * (&lcm / x.denom());

    let mut out = BTreeSet::new();
    if let (Some(w), Some(t)) = (
        weights.iter().map(|w| w.to_u128()).collect::<Option<Vec<_>>>(),
        target.to_u128(),
    ) {
        let mut counts = vec![0u64; w.len()];
        search_u128(&w, t, 0, &mut counts, &mut out);
    } else {
        let mut counts = vec![0u64; weights.len()];
        search_big(&weights, target, 0, &mut counts, &mut out);
    }
    Ok(out)
}

fn search_u128(w: &[u128], rem: u128, i: usize, counts: &mut Vec<u64>, out: &mut BTreeSet<ExponentVec>) {
    if i == w.len() {
        if rem == 0 {
            out.insert(counts.clone());
        }
        return;
    }
    let bound = rem / w[i];
    for c in 0..=bound {
        counts[i] = c as u64;
        search_u128(w, rem - c * w[i], i + 1, counts, out);
    }
    counts[i] = 0;
}

fn search_big(w: &[BigInt], rem: BigInt, i: usize, counts: &mut Vec<u64>, out: &mut BTreeSet<ExponentVec>) {
    if i == w.len() {
        if rem.is_zero() {
            out.insert(counts.clone());
        }
        return;
    }
    let bound = (&rem / &w[i]).to_u64().expect("count fits in 64 bits");
    for c in 0..=bound {
        counts[i] = c;
        search_big(w, &rem - &w[i] * BigInt::from(c), i + 1, counts, out);
    }
    counts[i] = 0;
}

/// Candidate exponent vectors from a single substitution point `X := t`.
///
/// Every generator must evaluate to a positive rational at `t` (else an
/// invalid-eval-point error); a target that evaluates negatively simply has
/// no candidates. Exposed for diagnostics: intersecting over more points
/// can only shrink this set.
pub fn qx_candidates(
    gens: &[FieldElem],
    x: &FieldElem,
    t: &Rational,
) -> Result<BTreeSet<ExponentVec>> {
    let mut evaluated = Vec::with_capacity(gens.len());
    for g in gens {
        let v = g.eval_at(t)?;
        if !v.is_positive() {
            return Err(Error::InvalidEvalPoint(format!("generator {g} evaluates to {v} at X={t}")));
        }
        evaluated.push(v);
    }
    let x_val = x.eval_at(t)?;
    if x_val.is_negative() {
        // No nonnegative combination of positive values can reach it.
        return Ok(BTreeSet::new());
    }
    oracle_factorizations_q(&evaluated, &x_val)
}

/// All factorizations of `x` over `gens` in Q(X), by evaluation at the
/// given points, intersection, and exact symbolic verification.
pub fn oracle_factorizations_qx(
    gens: &[FieldElem],
    x: &FieldElem,
    eval_points: &[Rational],
) -> Result<BTreeSet<ExponentVec>> {
    for g in gens {
        if g.tag() != FieldTag::QX {
            return Err(Error::TagMismatch(FieldTag::QX, g.tag()));
        }
        if !g.is_positive() {
            return Err(Error::Domain(format!("generator {g} is not positive")));
        }
    }
    if x.tag() != FieldTag::QX {
        return Err(Error::TagMismatch(FieldTag::QX, x.tag()));
    }
    if x.is_negative() {
        return Err(Error::Domain(format!("target {x} is negative")));
    }
    if eval_points.is_empty() {
        return Err(Error::Domain("at least one evaluation point is required".into()));
    }

    let mut survivors: Option<BTreeSet<ExponentVec>> = None;
    for t in eval_points {
        let candidates = qx_candidates(gens, x, t)?;
        survivors = Some(match survivors {
            None => candidates,
            Some(acc) => acc.intersection(&candidates).cloned().collect(),
        });
    }

    let mut verified = BTreeSet::new();
    for counts in survivors.unwrap_or_default() {
        let mut sum = FieldElem::zero(FieldTag::QX);
        for (g, &c) in gens.iter().zip(&counts) {
            sum = sum.add(&g.scale_nat(c)).expect("same tag");
        }
        if &sum == x {
            verified.insert(counts);
        }
    }
    Ok(verified)
}

/// The default substitution points: the three smallest primes beyond every
/// real root of every numerator and denominator in sight, so that each
/// generator stays positive. The threshold is `1 + max |coefficient|`,
/// raised by the Cauchy bound `1 + max |coefficient| / |leading|` when a
/// leading coefficient is smaller than one.
pub fn default_eval_points(gens: &[FieldElem], x: &FieldElem) -> Result<Vec<Rational>> {
    let mut threshold = Rational::zero();
    for elem in gens.iter().chain([x]) {
        if let FieldElem::QX(r) = elem {
            for poly in [r.num(), r.den()] {
                let Some(lead) = poly.leading() else { continue };
                let lead = lead.abs();
                for c in poly.coeffs() {
                    let c = c.abs();
                    if c > threshold {
                        threshold = c.clone();
                    }
                    let cauchy = c / &lead;
                    if cauchy > threshold {
                        threshold = cauchy;
                    }
                }
            }
        }
    }
    threshold += Rational::one();
    let mut points = Vec::with_capacity(3);
    let mut k = 1;
    while points.len() < 3 {
        let p = Rational::from_integer(nth_prime(k)?.into());
        if p > threshold {
            points.push(p);
        }
        k += 1;
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::Poly;
    use crate::field::rational::{rat, ratio};

    fn qx_poly(coeffs: &[i64]) -> FieldElem {
        FieldElem::from_poly(Poly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect()))
    }

    #[test]
    fn three_five_fifteen() {
        let out = oracle_factorizations_q(&[rat(3), rat(5)], &rat(15)).unwrap();
        let expected: BTreeSet<ExponentVec> = [vec![5, 0], vec![0, 3]].into();
        assert_eq!(out, expected);
    }

    #[test]
    fn zero_target_gives_zero_vector() {
        let out = oracle_factorizations_q(&[rat(3), rat(5)], &rat(0)).unwrap();
        assert_eq!(out, BTreeSet::from([vec![0, 0]]));
    }

    #[test]
    fn unreachable_target_gives_empty_set() {
        assert!(oracle_factorizations_q(&[rat(3), rat(5)], &rat(1)).unwrap().is_empty());
    }

    #[test]
    fn rational_generators_are_scaled_exactly() {
        // 1 = 2*(1/2) = 3*(1/3) = (1/2 + 1/2) ...
        let out = oracle_factorizations_q(&[ratio(1, 2), ratio(1, 3)], &rat(1)).unwrap();
        assert_eq!(out, BTreeSet::from([vec![2, 0], vec![0, 3]]));
    }

    #[test]
    fn qx_substitution_oracle() {
        let gens = [qx_poly(&[0, 2]), qx_poly(&[1, 1]), qx_poly(&[1])];
        let x = qx_poly(&[2, 3]);
        let points = [rat(10), rat(11), rat(13)];
        let out = oracle_factorizations_qx(&gens, &x, &points).unwrap();
        assert_eq!(out, BTreeSet::from([vec![1, 1, 1]]));

        let zero = FieldElem::zero(FieldTag::QX);
        let out = oracle_factorizations_qx(&gens, &zero, &points).unwrap();
        assert_eq!(out, BTreeSet::from([vec![0, 0, 0]]));

        let out = oracle_factorizations_qx(
            &[qx_poly(&[0, 1])],
            &FieldElem::one(FieldTag::QX),
            &points,
        )
        .unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn invalid_point_is_reported() {
        // X - 3 is positive in the cone but negative at X = 2.
        let gens = [qx_poly(&[-3, 1])];
        let err = oracle_factorizations_qx(&gens, &qx_poly(&[0, 1]), &[rat(2)]);
        assert!(matches!(err, Err(Error::InvalidEvalPoint(_))));
    }

    #[test]
    fn default_points_keep_generators_positive() {
        let gens = [qx_poly(&[-3, 1]), qx_poly(&[5, 0, 2])];
        let x = qx_poly(&[0, 0, 2]);
        let points = default_eval_points(&gens, &x).unwrap();
        assert_eq!(points.len(), 3);
        for t in &points {
            for g in &gens {
                assert!(g.eval_at(t).unwrap().is_positive());
            }
        }
        // Fractional leading coefficient: (1/10)X - 5 has its root at 50.
        let tricky = FieldElem::from_poly(Poly::from_coeffs(vec![rat(-5), ratio(1, 10)]));
        let points = default_eval_points(&[tricky.clone()], &x).unwrap();
        for t in &points {
            assert!(tricky.eval_at(t).unwrap().is_positive(), "point {t}");
        }
    }

    #[test]
    fn more_points_never_grow_the_candidate_set() {
        let gens = [qx_poly(&[0, 2]), qx_poly(&[1, 1]), qx_poly(&[1])];
        let x = qx_poly(&[2, 3]);
        let points = [rat(10), rat(11), rat(13)];
        let mut acc: Option<BTreeSet<ExponentVec>> = None;
        let mut sizes = Vec::new();
        for t in &points {
            let c = qx_candidates(&gens, &x, t).unwrap();
            acc = Some(match acc {
                None => c,
                Some(prev) => prev.intersection(&c).cloned().collect(),
            });
            sizes.push(acc.as_ref().unwrap().len());
        }
        assert!(sizes.windows(2).all(|w| w[1] <= w[0]));
    }
}
