//! Finitely generated positive-monoid snapshots.
//!
//! A [`FinMonoid`] is a sorted, deduplicated list of positive generators in
//! one ambient field together with its cached atoms and Archimedean strata.
//! Factorization sets are enumerated stratum by stratum: atoms of the same
//! Archimedean class share a degree, so inside a stratum the exponents must
//! solve an exact linear equation on leading coefficients, and what remains
//! after subtracting a stratum's contribution drops to a strictly smaller
//! class. Every enumeration is exact and terminates because all generators
//! are positive, which bounds the solution polytope at every level.
//!
//! In Q there is a single stratum and the leading-coefficient equation is
//! the knapsack equation `sum c_i * a_i = x` itself.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::rational::Rational;
use crate::field::{ArchClass, FieldElem, FieldTag};

/// A factorization: a finite exponent map over the atom list of a monoid.
///
/// Keys are indices into the sorted atom list; values are positive counts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Factorization {
    exponents: BTreeMap<usize, u64>,
}

impl Factorization {
    /// The empty factorization (of the identity element).
    pub fn empty() -> Factorization {
        Factorization::default()
    }

    fn set(&mut self, index: usize, count: u64) {
        if count > 0 {
            self.exponents.insert(index, count);
        }
    }

    /// Pairs `(atom index, count)` with positive counts, in index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.exponents.iter().map(|(&i, &c)| (i, c))
    }

    /// The length `|z|`: total number of atoms counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.exponents.values().sum()
    }

    /// `|z|_A`: the number of atoms from the index subset `A` showing in
    /// `z`, counted with multiplicity.
    pub fn length_restricted(&self, subset: &BTreeSet<usize>) -> u64 {
        self.iter().filter(|(i, _)| subset.contains(i)).map(|(_, c)| c).sum()
    }

    /// The factorization homomorphism: the element this factorization
    /// represents over the given atom list.
    pub fn value(&self, atoms: &[FieldElem], tag: FieldTag) -> FieldElem {
        let mut acc = FieldElem::zero(tag);
        for (i, c) in self.iter() {
            acc = acc.add(&atoms[i].scale_nat(c)).expect("same tag");
        }
        acc
    }

    /// The homomorphism restricted to the index subset `A`: atoms outside
    /// `A` are sent to zero.
    pub fn value_restricted(
        &self,
        atoms: &[FieldElem],
        tag: FieldTag,
        subset: &BTreeSet<usize>,
    ) -> FieldElem {
        let mut acc = FieldElem::zero(tag);
        for (i, c) in self.iter() {
            if subset.contains(&i) {
                acc = acc.add(&atoms[i].scale_nat(c)).expect("same tag");
            }
        }
        acc
    }

    /// Dense exponent vector over an atom list of length `len`.
    pub fn to_dense(&self, len: usize) -> Vec<u64> {
        let mut v = vec![0; len];
        for (i, c) in self.iter() {
            v[i] = c;
        }
        v
    }

    /// Builds from a dense exponent vector.
    pub fn from_dense(counts: &[u64]) -> Factorization {
        let mut z = Factorization::empty();
        for (i, &c) in counts.iter().enumerate() {
            z.set(i, c);
        }
        z
    }
}

/// One Archimedean stratum of a sorted element list: a run of consecutive
/// elements sharing a class, with their leading coefficients.
#[derive(Debug, Clone)]
struct Stratum {
    deg: i64,
    start: usize,
    elems: Vec<FieldElem>,
    leads: Vec<Rational>,
}

/// A sorted positive element list grouped by Archimedean class, in class
/// order (largest degree first), ready for stratified enumeration.
#[derive(Debug, Clone)]
struct Basis {
    strata: Vec<Stratum>,
}

impl Basis {
    /// `elems` must be strictly increasing and positive.
    fn new(elems: &[FieldElem]) -> Basis {
        let mut strata: Vec<Stratum> = Vec::new();
        for (i, e) in elems.iter().enumerate() {
            let deg = e.arch_class().expect("positive element").deg;
            match strata.last_mut() {
                Some(s) if s.deg == deg => {
                    s.elems.push(e.clone());
                    s.leads.push(e.leading_coeff());
                }
                _ => strata.push(Stratum {
                    deg,
                    start: i,
                    elems: vec![e.clone()],
                    leads: vec![e.leading_coeff()],
                }),
            }
        }
        // Ascending elements give ascending degrees; enumeration wants the
        // largest class first.
        strata.reverse();
        Basis { strata }
    }

    /// Walks every factorization of `x` in deterministic order: strata from
    /// the largest degree down, atoms inside a stratum in increasing order,
    /// exponents descending from their bound. The visitor may stop the walk.
    fn walk(&self, x: &FieldElem, visit: &mut dyn FnMut(&Factorization) -> ControlFlow<()>) {
        let mut acc = Factorization::empty();
        let _ = self.walk_strata(0, x.clone(), &mut acc, visit);
    }

    fn walk_strata(
        &self,
        s: usize,
        rem: FieldElem,
        acc: &mut Factorization,
        visit: &mut dyn FnMut(&Factorization) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if rem.is_zero() {
            return visit(acc);
        }
        // rem > 0: some stratum must still absorb it.
        let Some(stratum) = self.strata.get(s) else {
            return ControlFlow::Continue(());
        };
        let deg = rem.arch_class().expect("rem positive").deg;
        if deg > stratum.deg {
            // Everything from here on lives in strictly smaller classes.
            return ControlFlow::Continue(());
        }
        if deg < stratum.deg {
            // Any positive count here would dominate the remainder.
            return self.walk_strata(s + 1, rem, acc, visit);
        }
        // Same class: exponents must solve the leading-coefficient equation.
        let (scaled, target) = scale_to_integers(&stratum.leads, &rem.leading_coeff());
        // Any suffix of the weights can only produce multiples of its gcd;
        // checking divisibility at each level cuts off infeasible subtrees
        // (this is the denominator-valuation argument in integer form).
        let mut suffix_gcd = vec![BigInt::zero(); scaled.len()];
        let mut g = BigInt::zero();
        for i in (0..scaled.len()).rev() {
            g = g.gcd(&scaled[i]);
            suffix_gcd[i] = g.clone();
        }
        let mut counts = vec![0u64; scaled.len()];
        self.stratum_rec(s, 0, &scaled, &suffix_gcd, target, &rem, &mut counts, acc, visit)
    }

    /// Depth-first search inside one stratum: assign counts to atoms in
    /// increasing order so that `sum counts * leads` hits the remainder's
    /// leading coefficient exactly, then hand the reduced remainder to the
    /// next stratum.
    ///
    /// Over Q the leading coefficients are the elements themselves, so the
    /// integer target determines the remainder exactly: it is zero at every
    /// completed assignment and never negative, and no element arithmetic
    /// is needed inside the loop.
    #[allow(clippy::too_many_arguments)]
    fn stratum_rec(
        &self,
        s: usize,
        i: usize,
        scaled: &[BigInt],
        suffix_gcd: &[BigInt],
        target: BigInt,
        rem: &FieldElem,
        counts: &mut Vec<u64>,
        acc: &mut Factorization,
        visit: &mut dyn FnMut(&Factorization) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let stratum = &self.strata[s];
        let track_tail = matches!(rem, FieldElem::QX(_));
        if !(&target % &suffix_gcd[i]).is_zero() {
            return ControlFlow::Continue(());
        }
        if i + 1 == scaled.len() {
            // Last atom of the stratum: the count is forced.
            let (q, r) = target.div_rem(&scaled[i]);
            if !r.is_zero() {
                return ControlFlow::Continue(());
            }
            let c = q.to_u64().expect("count fits in 64 bits");
            let rem2 = if track_tail {
                let rem2 = rem.sub(&stratum.elems[i].scale_nat(c)).expect("same tag");
                if rem2.is_negative() {
                    return ControlFlow::Continue(());
                }
                rem2
            } else {
                FieldElem::zero(FieldTag::Q)
            };
            counts[i] = c;
            for (j, &cj) in counts.iter().enumerate() {
                acc.set(stratum.start + j, cj);
            }
            let flow = self.walk_strata(s + 1, rem2, acc, visit);
            for j in 0..counts.len() {
                acc.exponents.remove(&(stratum.start + j));
            }
            return flow;
        }
        let bound = (&target / &scaled[i]).to_u64().expect("bound fits in 64 bits");
        for c in (0..=bound).rev() {
            let next_target = &target - &scaled[i] * BigInt::from(c);
            counts[i] = c;
            if track_tail {
                let rem2 = rem.sub(&stratum.elems[i].scale_nat(c)).expect("same tag");
                if rem2.is_negative() {
                    // Leading coefficients still fit but the tail already
                    // went under zero; smaller counts can only help.
                    continue;
                }
                self.stratum_rec(s, i + 1, scaled, suffix_gcd, next_target, &rem2, counts, acc, visit)?;
            } else {
                self.stratum_rec(s, i + 1, scaled, suffix_gcd, next_target, rem, counts, acc, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn exists(&self, x: &FieldElem) -> bool {
        let mut found = false;
        self.walk(x, &mut |_| {
            found = true;
            ControlFlow::Break(())
        });
        found
    }

    fn enumerate(&self, x: &FieldElem, cap: Option<usize>) -> (Vec<Factorization>, bool) {
        let mut out = Vec::new();
        let mut truncated = false;
        self.walk(x, &mut |z| {
            if let Some(k) = cap {
                if out.len() == k {
                    truncated = true;
                    return ControlFlow::Break(());
                }
            }
            out.push(z.clone());
            ControlFlow::Continue(())
        });
        (out, truncated)
    }
}

/// Clears denominators: returns integer weights and the integer target of
/// `sum c_i * leads_i = target_lead`, scaled by one common denominator.
fn scale_to_integers(leads: &[Rational], target: &Rational) -> (Vec<BigInt>, BigInt) {
    let mut lcm = target.denom().clone();
    for l in leads {
        lcm = lcm.lcm(l.denom());
    }
    let scaled = leads.iter().map(|l| l.numer() * (&lcm / l.denom())).collect();
    (scaled, target.numer() * (&lcm / target.denom()))
}

/// A finitely generated positive-monoid snapshot.
#[derive(Debug, Clone)]
pub struct FinMonoid {
    tag: FieldTag,
    gens: Vec<FieldElem>,
    atoms: Vec<FieldElem>,
    gens_basis: Basis,
    atoms_basis: Basis,
}

impl PartialEq for FinMonoid {
    fn eq(&self, other: &FinMonoid) -> bool {
        self.tag == other.tag && self.gens == other.gens
    }
}
impl Eq for FinMonoid {}

impl FinMonoid {
    /// Builds a snapshot from generators in the given ambient field.
    ///
    /// Zero generators are dropped (the identity is always present),
    /// duplicates are removed, and the rest are sorted increasingly. Atoms
    /// are the generators not reachable from their predecessors, which for
    /// a sorted list is exactly the minimal generating set.
    pub fn build(tag: FieldTag, gens: Vec<FieldElem>) -> Result<FinMonoid> {
        let mut clean = Vec::with_capacity(gens.len());
        for g in gens {
            if g.tag() != tag {
                return Err(Error::TagMismatch(tag, g.tag()));
            }
            if g.is_negative() {
                return Err(Error::InvalidGenerator(g.to_string()));
            }
            if !g.is_zero() {
                clean.push(g);
            }
        }
        clean.sort();
        clean.dedup();
        let gens_basis = Basis::new(&clean);

        let mut atoms = Vec::new();
        for (i, g) in clean.iter().enumerate() {
            let prefix = Basis::new(&clean[..i]);
            if !prefix.exists(g) {
                atoms.push(g.clone());
            }
        }
        let atoms_basis = Basis::new(&atoms);

        Ok(FinMonoid { tag, gens: clean, atoms, gens_basis, atoms_basis })
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    /// Sorted, deduplicated generators.
    pub fn gens(&self) -> &[FieldElem] {
        &self.gens
    }

    /// The atoms, a subsequence of the generators. They generate the same
    /// monoid and form its unique minimal generating set.
    pub fn atoms(&self) -> &[FieldElem] {
        &self.atoms
    }

    /// Generators grouped by Archimedean class, largest degree first.
    pub fn class_partition(&self) -> Vec<(ArchClass, Vec<FieldElem>)> {
        self.gens_basis
            .strata
            .iter()
            .map(|s| (ArchClass { deg: s.deg }, s.elems.clone()))
            .collect()
    }

    fn check_tag(&self, x: &FieldElem) -> Result<()> {
        if x.tag() != self.tag {
            return Err(Error::TagMismatch(self.tag, x.tag()));
        }
        Ok(())
    }

    fn check_nonnegative(&self, x: &FieldElem) -> Result<()> {
        self.check_tag(x)?;
        if x.is_negative() {
            return Err(Error::Domain(format!("{x} is negative")));
        }
        Ok(())
    }

    /// Is `x` a nonnegative-integer combination of the generators?
    pub fn member(&self, x: &FieldElem) -> Result<bool> {
        self.check_nonnegative(x)?;
        Ok(x.is_zero() || self.gens_basis.exists(x))
    }

    /// The complete factorization set `Z(x)` over the atoms, in the
    /// deterministic stratified order. `Z(0)` is the singleton empty
    /// factorization.
    pub fn factorizations(&self, x: &FieldElem) -> Result<Vec<Factorization>> {
        Ok(self.factorizations_capped(x, None)?.0)
    }

    /// Like [`factorizations`](Self::factorizations) but stops after `cap`
    /// results; the flag reports whether the output was truncated.
    pub fn factorizations_capped(
        &self,
        x: &FieldElem,
        cap: Option<usize>,
    ) -> Result<(Vec<Factorization>, bool)> {
        self.check_nonnegative(x)?;
        Ok(self.atoms_basis.enumerate(x, cap))
    }

    /// The length set `L(x) = { |z| : z in Z(x) }`.
    pub fn length_set(&self, x: &FieldElem) -> Result<BTreeSet<u64>> {
        Ok(self.factorizations(x)?.iter().map(Factorization::length).collect())
    }

    /// Does `a` divide `x` inside the monoid? Both must be members.
    pub fn divides(&self, a: &FieldElem, x: &FieldElem) -> Result<bool> {
        for e in [a, x] {
            self.check_nonnegative(e)?;
            if !self.member(e)? {
                return Err(Error::NotAnElement(e.to_string()));
            }
        }
        let diff = x.sub(a)?;
        if diff.is_negative() {
            return Ok(false);
        }
        self.member(&diff)
    }

    /// The nested divisor-closed filtration `F_1 <= F_2 <= ... = M`:
    /// `F_n` is generated by every generator from the n smallest classes
    /// (in increasing element order). In Q the list is just `[M]`.
    pub fn strata(&self) -> Vec<FinMonoid> {
        if self.gens.is_empty() {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        let mut upto = Vec::new();
        for stratum in self.gens_basis.strata.iter().rev() {
            upto.extend(stratum.elems.iter().cloned());
            out.push(FinMonoid::build(self.tag, upto.clone()).expect("gens already validated"));
        }
        out
    }

    /// Sample-based divisor-closedness certificate for a submonoid.
    ///
    /// Requires every generator of `sub` and every sample to be a member of
    /// `self`. Returns true when, for each sample `x`, every atom of `self`
    /// dividing `x` already lies in `sub`. This certifies divisor-closedness
    /// over the samples; it is not a proof for all of `sub`.
    pub fn check_divisor_closed(&self, sub: &FinMonoid, samples: &[FieldElem]) -> Result<bool> {
        for g in sub.gens() {
            if !self.member(g)? {
                return Err(Error::NotASubmonoid(g.to_string()));
            }
        }
        for x in samples {
            self.check_nonnegative(x)?;
            if !self.member(x)? {
                return Err(Error::NotAnElement(x.to_string()));
            }
        }
        for x in samples {
            for a in self.atoms() {
                if self.divides(a, x)? && !sub.member(a)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The complete finite set `{ m in M : m <= bound }`, sorted increasing.
    ///
    /// Errors with an infinite-set report when the set is provably infinite,
    /// which happens exactly when some generator lies in a strictly smaller
    /// Archimedean class than the bound (then every multiple of it stays
    /// under the bound). In Q, and whenever all classes match, the set is
    /// finite.
    pub fn enumerate_below(&self, bound: &FieldElem) -> Result<Vec<FieldElem>> {
        self.check_tag(bound)?;
        if bound.is_negative() {
            return Err(Error::Domain(format!("bound {bound} is negative")));
        }
        let zero = FieldElem::zero(self.tag);
        if bound.is_zero() || self.gens.is_empty() {
            return Ok(vec![zero]);
        }
        let bound_deg = bound.arch_class().expect("bound positive").deg;
        for a in self.atoms() {
            if a.arch_class().expect("atom positive").deg < bound_deg {
                return Err(Error::InfiniteSet(format!(
                    "every multiple of the generator {a} stays below {bound}"
                )));
            }
        }
        // Only atoms in the bound's own class can appear with a positive
        // count; larger classes would dominate the bound.
        let in_class: Vec<&FieldElem> = self
            .atoms()
            .iter()
            .filter(|a| a.arch_class().expect("positive").deg == bound_deg)
            .collect();
        let mut values = BTreeSet::new();
        below_rec(&in_class, 0, bound.clone(), zero, &mut values);
        Ok(values.into_iter().collect())
    }

    /// A strict upper bound witness for a finitely generated monoid of
    /// Q(X): the square of the largest generator when that generator is
    /// infinitely large, X itself when every generator is finite. Monoids
    /// of Q have no upper bound, so the result is `None` there.
    pub fn fg_upper_bound(&self) -> Option<FieldElem> {
        if self.tag == FieldTag::Q {
            return None;
        }
        match self.gens.last() {
            Some(top) if top.arch_class().expect("positive").deg >= 1 => {
                Some(top.mul(top).expect("same tag"))
            }
            _ => Some(FieldElem::x()),
        }
    }
}

/// Depth-first enumeration of all combination values `<= rem + built so
/// far`; counts descend so output insertion order follows the factorization
/// enumeration convention (the set is sorted anyway).
fn below_rec(
    atoms: &[&FieldElem],
    i: usize,
    rem: FieldElem,
    value: FieldElem,
    out: &mut BTreeSet<FieldElem>,
) {
    if i == atoms.len() {
        out.insert(value);
        return;
    }
    let lead_bound = rem.leading_coeff() / atoms[i].leading_coeff();
    let bound = num_traits::Signed::abs(&lead_bound.floor().to_integer())
        .to_u64()
        .expect("bound fits in 64 bits");
    for c in (0..=bound).rev() {
        let delta = atoms[i].scale_nat(c);
        let rem2 = rem.sub(&delta).expect("same tag");
        if rem2.is_negative() {
            continue;
        }
        below_rec(atoms, i + 1, rem2, value.add(&delta).expect("same tag"), out);
    }
}

impl fmt::Display for FinMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::Poly;
    use crate::field::rational::{rat, ratio};

    fn q_monoid(gens: &[i64]) -> FinMonoid {
        FinMonoid::build(FieldTag::Q, gens.iter().map(|&g| FieldElem::Q(rat(g))).collect())
            .unwrap()
    }

    fn q_elem(n: i64) -> FieldElem {
        FieldElem::Q(rat(n))
    }

    fn qx_poly(coeffs: &[i64]) -> FieldElem {
        FieldElem::from_poly(Poly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect()))
    }

    #[test]
    fn build_discards_reachable_generators() {
        let m = q_monoid(&[4, 6, 10]);
        assert_eq!(m.atoms(), &[q_elem(4), q_elem(6)]);
        assert_eq!(m.gens().len(), 3);
    }

    #[test]
    fn build_keeps_qx_atoms() {
        // X^3, X+X^2, X+2X^2 are pairwise independent.
        let m = FinMonoid::build(
            FieldTag::QX,
            vec![qx_poly(&[0, 0, 0, 1]), qx_poly(&[0, 1, 1]), qx_poly(&[0, 1, 2])],
        )
        .unwrap();
        assert_eq!(m.atoms().len(), 3);
        // Sorted increasing: the degree-2 elements come before X^3.
        assert_eq!(m.gens()[2], qx_poly(&[0, 0, 0, 1]));
    }

    #[test]
    fn single_generator_is_an_atom() {
        let m = FinMonoid::build(FieldTag::Q, vec![FieldElem::Q(ratio(3, 2))]).unwrap();
        assert_eq!(m.atoms(), &[FieldElem::Q(ratio(3, 2))]);
    }

    #[test]
    fn duplicates_and_zeros_are_dropped() {
        let m = FinMonoid::build(
            FieldTag::Q,
            vec![q_elem(3), q_elem(0), q_elem(3), q_elem(5)],
        )
        .unwrap();
        assert_eq!(m.gens(), &[q_elem(3), q_elem(5)]);
        assert!(FinMonoid::build(FieldTag::Q, vec![q_elem(-1)]).is_err());
        assert!(FinMonoid::build(FieldTag::Q, vec![FieldElem::x()]).is_err());
    }

    #[test]
    fn membership_in_three_five() {
        let m = q_monoid(&[3, 5]);
        assert!(!m.member(&q_elem(7)).unwrap());
        assert!(m.member(&q_elem(8)).unwrap());
        assert!(m.member(&q_elem(0)).unwrap());
        assert!(m.member(&q_elem(15)).unwrap());
        assert!(matches!(m.member(&q_elem(-2)), Err(Error::Domain(_))));
    }

    #[test]
    fn factorizations_of_fifteen() {
        let m = q_monoid(&[3, 5]);
        let zs = m.factorizations(&q_elem(15)).unwrap();
        let dense: Vec<Vec<u64>> = zs.iter().map(|z| z.to_dense(2)).collect();
        assert_eq!(dense, vec![vec![5, 0], vec![0, 3]]);
    }

    #[test]
    fn factorization_of_zero_is_the_empty_one() {
        let m = q_monoid(&[3, 5]);
        let zs = m.factorizations(&q_elem(0)).unwrap();
        assert_eq!(zs, vec![Factorization::empty()]);
        assert_eq!(zs[0].length(), 0);
    }

    #[test]
    fn stratified_enumeration_in_qx() {
        // atoms 1, X+1, 2X; target 3X+2 factors exactly one way.
        let m = FinMonoid::build(
            FieldTag::QX,
            vec![qx_poly(&[0, 2]), qx_poly(&[1, 1]), qx_poly(&[1])],
        )
        .unwrap();
        assert_eq!(m.atoms().len(), 3);
        let target = qx_poly(&[2, 3]);
        let zs = m.factorizations(&target).unwrap();
        assert_eq!(zs.len(), 1);
        assert_eq!(zs[0].to_dense(3), vec![1, 1, 1]);
        assert_eq!(zs[0].value(m.atoms(), FieldTag::QX), target);
    }

    #[test]
    fn length_sets() {
        let halves = FinMonoid::build(
            FieldTag::Q,
            vec![FieldElem::Q(ratio(1, 2)), FieldElem::Q(ratio(1, 3))],
        )
        .unwrap();
        let ls = halves.length_set(&q_elem(1)).unwrap();
        assert_eq!(ls.into_iter().collect::<Vec<_>>(), vec![2, 3]);

        let m = q_monoid(&[3, 5]);
        assert_eq!(m.length_set(&q_elem(12)).unwrap().into_iter().collect::<Vec<_>>(), vec![4]);
        assert_eq!(m.length_set(&q_elem(0)).unwrap().into_iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn divisibility() {
        let m = q_monoid(&[3, 5]);
        assert!(m.divides(&q_elem(3), &q_elem(8)).unwrap());
        assert!(!m.divides(&q_elem(5), &q_elem(6)).unwrap());
        assert!(m.divides(&q_elem(0), &q_elem(6)).unwrap());
        assert!(matches!(m.divides(&q_elem(7), &q_elem(8)), Err(Error::NotAnElement(_))));
    }

    #[test]
    fn strata_are_nested_prefixes() {
        let m = FinMonoid::build(
            FieldTag::QX,
            vec![qx_poly(&[0, 1, 1]), qx_poly(&[0, 1, 2]), qx_poly(&[0, 0, 0, 1])],
        )
        .unwrap();
        let strata = m.strata();
        assert_eq!(strata.len(), 2);
        assert_eq!(strata[0].gens(), &[qx_poly(&[0, 1, 1]), qx_poly(&[0, 1, 2])]);
        assert_eq!(&strata[1], &m);

        let q = q_monoid(&[3, 5]);
        assert_eq!(q.strata(), vec![q.clone()]);

        let powers = FinMonoid::build(
            FieldTag::QX,
            vec![qx_poly(&[1]), qx_poly(&[0, 1]), qx_poly(&[0, 0, 1])],
        )
        .unwrap();
        let strata = powers.strata();
        assert_eq!(strata.len(), 3);
        assert_eq!(strata[0].gens(), &[qx_poly(&[1])]);
        assert_eq!(strata[1].gens(), &[qx_poly(&[1]), qx_poly(&[0, 1])]);
        assert_eq!(strata[2].gens().len(), 3);
    }

    #[test]
    fn divisor_closed_certificates() {
        let m = FinMonoid::build(
            FieldTag::QX,
            vec![qx_poly(&[0, 1, 1]), qx_poly(&[0, 1, 2]), qx_poly(&[0, 0, 0, 1])],
        )
        .unwrap();
        let f1 = m.strata()[0].clone();
        let sample = qx_poly(&[0, 2, 3]); // (X+X^2) + (X+2X^2)
        assert!(m.check_divisor_closed(&f1, &[sample]).unwrap());

        let m = q_monoid(&[3, 5]);
        let sub = q_monoid(&[3]);
        assert!(m.check_divisor_closed(&sub, &[q_elem(6)]).unwrap());
        assert!(!m.check_divisor_closed(&sub, &[q_elem(8)]).unwrap());
        // Samples must at least be members of the ambient monoid.
        assert!(matches!(
            m.check_divisor_closed(&sub, &[q_elem(7)]),
            Err(Error::NotAnElement(_))
        ));
        let not_sub = q_monoid(&[4]);
        assert!(matches!(
            m.check_divisor_closed(&not_sub, &[q_elem(6)]),
            Err(Error::NotASubmonoid(_))
        ));
    }

    #[test]
    fn enumerate_below_three_five() {
        let m = q_monoid(&[3, 5]);
        let below = m.enumerate_below(&q_elem(20)).unwrap();
        assert_eq!(below.len(), 17);
        assert_eq!(below.first(), Some(&q_elem(0)));
        assert_eq!(below.last(), Some(&q_elem(20)));
        assert!(below.windows(2).all(|w| w[0] < w[1]));

        assert_eq!(m.enumerate_below(&q_elem(2)).unwrap(), vec![q_elem(0)]);
    }

    #[test]
    fn enumerate_below_rejects_infinite_sets() {
        let m = FinMonoid::build(FieldTag::QX, vec![qx_poly(&[1]), qx_poly(&[0, 1])]).unwrap();
        let two_x = qx_poly(&[0, 2]);
        assert!(matches!(m.enumerate_below(&two_x), Err(Error::InfiniteSet(_))));
        // Same class everywhere: finite.
        let below = m.enumerate_below(&q_elem_in_qx(2)).unwrap();
        assert_eq!(below, vec![q_elem_in_qx(0), q_elem_in_qx(1), q_elem_in_qx(2)]);
    }

    fn q_elem_in_qx(n: i64) -> FieldElem {
        FieldElem::constant(FieldTag::QX, rat(n))
    }

    #[test]
    fn upper_bound_witnesses() {
        let m = FinMonoid::build(FieldTag::QX, vec![qx_poly(&[0, 1]), qx_poly(&[1, 1])]).unwrap();
        // (X+1)^2
        assert_eq!(m.fg_upper_bound(), Some(qx_poly(&[1, 2, 1])));

        let finite = FinMonoid::build(
            FieldTag::QX,
            vec![
                FieldElem::constant(FieldTag::QX, ratio(3, 2)),
                FieldElem::constant(FieldTag::QX, ratio(5, 2)),
            ],
        )
        .unwrap();
        assert_eq!(finite.fg_upper_bound(), Some(FieldElem::x()));

        assert_eq!(q_monoid(&[3, 5]).fg_upper_bound(), None);
    }

    #[test]
    fn restricted_homomorphism() {
        let m = q_monoid(&[3, 5]);
        let z = m
            .factorizations(&q_elem(11))
            .unwrap()
            .into_iter()
            .next()
            .unwrap();
        // 11 = 2*3 + 1*5
        assert_eq!(z.to_dense(2), vec![2, 1]);
        assert_eq!(z.length(), 3);
        let only_three: BTreeSet<usize> = [0].into();
        assert_eq!(z.length_restricted(&only_three), 2);
        assert_eq!(z.value_restricted(m.atoms(), FieldTag::Q, &only_three), q_elem(6));
        assert_eq!(z.value(m.atoms(), FieldTag::Q), q_elem(11));
    }

    #[test]
    fn capped_enumeration_flags_truncation() {
        let m = q_monoid(&[1]);
        let (zs, truncated) = m.factorizations_capped(&q_elem(5), Some(1)).unwrap();
        assert_eq!(zs.len(), 1);
        assert!(!truncated); // only one factorization exists
        let m2 = q_monoid(&[2, 3]);
        let (zs, truncated) = m2.factorizations_capped(&q_elem(6), Some(1)).unwrap();
        assert_eq!(zs.len(), 1);
        assert!(truncated); // 6 = 2+2+2 = 3+3
    }

    #[test]
    fn empty_monoid_is_the_trivial_one() {
        let m = FinMonoid::build(FieldTag::Q, vec![]).unwrap();
        assert!(m.member(&q_elem(0)).unwrap());
        assert!(!m.member(&q_elem(1)).unwrap());
        assert_eq!(m.factorizations(&q_elem(0)).unwrap().len(), 1);
        assert_eq!(m.enumerate_below(&q_elem(5)).unwrap(), vec![q_elem(0)]);
        assert_eq!(m.strata().len(), 1);
    }
}
