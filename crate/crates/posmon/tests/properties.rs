//! Property tests for the library invariants: canonical forms, order and
//! valuation laws, factorization soundness/completeness, sub-level
//! enumeration closure, renderer round trips, and family diagnostics.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use posmon::expr::{eval_expr, parse_expr, render, Expr};
use posmon::families::paper_example;
use posmon::field::poly::Poly;
use posmon::field::rational::{padic_valuation, rat, ratio, Rational, Valuation};
use posmon::field::{FieldElem, FieldTag};
use posmon::monoid::FinMonoid;
use posmon::oracle::oracle_factorizations_q;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20).prop_map(|(n, d)| ratio(n, d))
}

fn arb_positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=20, 1i64..=20).prop_map(|(n, d)| ratio(n, d))
}

fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(arb_rational(), 1..=max_deg + 1).prop_map(Poly::from_coeffs)
}

fn arb_nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    arb_poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

/// Arbitrary element of Q(X) of degree at most 4 in numerator and
/// denominator.
fn arb_qx() -> impl Strategy<Value = FieldElem> {
    (arb_poly(4), arb_nonzero_poly(4))
        .prop_map(|(num, den)| FieldElem::from_polys(num, den).unwrap())
}

fn arb_nonzero_qx() -> impl Strategy<Value = FieldElem> {
    arb_qx().prop_filter("nonzero", |e| !e.is_zero())
}

fn arb_positive_qx() -> impl Strategy<Value = FieldElem> {
    arb_qx().prop_map(|e| if e.is_negative() { e.neg() } else { e }).prop_filter("positive", |e| e.is_positive())
}

proptest! {
    #[test]
    fn canonical_form_is_idempotent_for_rationals(q in arb_rational()) {
        prop_assert_eq!(Rational::new(q.numer().clone(), q.denom().clone()), q);
    }

    #[test]
    fn canonical_form_is_idempotent_for_polys(p in arb_poly(4)) {
        prop_assert_eq!(Poly::from_coeffs(p.coeffs().to_vec()), p.clone());
    }

    #[test]
    fn canonical_form_is_idempotent_for_qx(e in arb_qx()) {
        if let FieldElem::QX(r) = &e {
            let rebuilt = FieldElem::from_polys(r.num().clone(), r.den().clone()).unwrap();
            prop_assert_eq!(rebuilt, e.clone());
        }
    }

    #[test]
    fn order_is_translation_invariant(a in arb_qx(), b in arb_qx(), c in arb_qx()) {
        if a.compare(&b).unwrap() == std::cmp::Ordering::Less {
            let left = a.add(&c).unwrap();
            let right = b.add(&c).unwrap();
            prop_assert_eq!(left.compare(&right).unwrap(), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn positives_are_closed_under_product(a in arb_positive_qx(), b in arb_positive_qx()) {
        prop_assert!(a.mul(&b).unwrap().is_positive());
    }

    #[test]
    fn archimedean_valuation_is_a_homomorphism(a in arb_nonzero_qx(), b in arb_nonzero_qx()) {
        let prod = a.mul(&b).unwrap();
        prop_assert_eq!(
            prod.arch_class().unwrap().deg,
            a.arch_class().unwrap().deg + b.arch_class().unwrap().deg
        );
    }

    #[test]
    fn sum_of_positives_has_the_max_class(a in arb_positive_qx(), b in arb_positive_qx()) {
        let sum = a.add(&b).unwrap();
        let expected = a.arch_class().unwrap().deg.max(b.arch_class().unwrap().deg);
        prop_assert_eq!(sum.arch_class().unwrap().deg, expected);
    }

    #[test]
    fn padic_valuation_is_additive(
        q in arb_rational().prop_filter("nonzero", |q| !num_traits::Zero::is_zero(q)),
        r in arb_rational().prop_filter("nonzero", |q| !num_traits::Zero::is_zero(q)),
        p in prop::sample::select(vec![2i64, 3, 5, 7]),
    ) {
        let p = BigInt::from(p);
        let (vq, vr, vqr) = (
            padic_valuation(&p, &q).unwrap(),
            padic_valuation(&p, &r).unwrap(),
            padic_valuation(&p, &(q.clone() * r.clone())).unwrap(),
        );
        match (vq, vr, vqr) {
            (Valuation::Finite(a), Valuation::Finite(b), Valuation::Finite(c)) => {
                prop_assert_eq!(a + b, c);
            }
            _ => prop_assert!(false, "nonzero rationals have finite valuations"),
        }
    }
}

/// Small monoids whose generators stay within one order of magnitude of 1,
/// keeping every enumeration in this file a few thousand nodes at most.
fn small_q_monoid() -> impl Strategy<Value = FinMonoid> {
    prop::collection::vec((1i64..=8, 1i64..=3), 1..=4).prop_map(|pairs| {
        let gens = pairs.into_iter().map(|(n, d)| FieldElem::Q(ratio(n, d))).collect();
        FinMonoid::build(FieldTag::Q, gens).unwrap()
    })
}

/// The naive search box for `x` over `gens`, divided by k!.
fn cost_estimate(m: &FinMonoid, x: &Rational) -> f64 {
    let xf = x.to_f64().unwrap_or(f64::MAX);
    let mut product = 1f64;
    let mut factorial = 1f64;
    for (i, g) in m.gens().iter().enumerate() {
        let gf = g.as_rational().unwrap().to_f64().unwrap_or(f64::MAX);
        product *= 1.0 + xf / gf;
        factorial *= (i + 1) as f64;
    }
    product / factorial
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorizations_are_sound_and_complete(
        m in small_q_monoid(),
        coeffs in prop::collection::vec(0u64..=2, 4),
    ) {
        let mut x = FieldElem::zero(FieldTag::Q);
        for (g, &c) in m.gens().iter().zip(&coeffs) {
            x = x.add(&g.scale_nat(c)).unwrap();
        }
        prop_assume!(cost_estimate(&m, &x.as_rational().unwrap()) < 20_000.0);
        let zs = m.factorizations(&x).unwrap();
        // Soundness: every factorization reproduces x over the atoms.
        for z in &zs {
            prop_assert_eq!(z.value(m.atoms(), FieldTag::Q), x.clone());
        }
        // Completeness: exactly the oracle's solution set.
        let atoms: Vec<Rational> = m.atoms().iter().map(|a| a.as_rational().unwrap()).collect();
        let engine: BTreeSet<Vec<u64>> = zs.iter().map(|z| z.to_dense(atoms.len())).collect();
        let oracle = oracle_factorizations_q(&atoms, &x.as_rational().unwrap()).unwrap();
        prop_assert_eq!(engine, oracle);
        // BF bound: no length exceeds floor(x / smallest generator).
        let min_gen = m.gens()[0].as_rational().unwrap();
        let cap = (x.as_rational().unwrap() / min_gen).floor().to_integer();
        for z in &zs {
            prop_assert!(BigInt::from(z.length()) <= cap);
        }
    }

    #[test]
    fn membership_agrees_with_nonempty_factorization_over_gens(
        m in small_q_monoid(),
        num in 0i64..=12,
        den in 1i64..=4,
    ) {
        let x = FieldElem::Q(ratio(num, den));
        prop_assume!(cost_estimate(&m, &x.as_rational().unwrap()) < 20_000.0);
        let gens: Vec<Rational> = m.gens().iter().map(|g| g.as_rational().unwrap()).collect();
        let oracle_nonempty = !oracle_factorizations_q(&gens, &x.as_rational().unwrap())
            .unwrap()
            .is_empty();
        prop_assert_eq!(m.member(&x).unwrap(), oracle_nonempty);
    }

    #[test]
    fn enumerate_below_is_sorted_and_closed(
        m in small_q_monoid(),
        bound in 1i64..=8,
    ) {
        let b = FieldElem::Q(rat(bound));
        prop_assume!(cost_estimate(&m, &b.as_rational().unwrap()) < 20_000.0);
        let below = m.enumerate_below(&b).unwrap();
        // Strictly increasing, so no strictly decreasing chain can be
        // longer than the set itself.
        prop_assert!(below.windows(2).all(|w| w[0] < w[1]));
        let set: BTreeSet<&FieldElem> = below.iter().collect();
        // Closed under subtracting a generator while staying a member.
        for e in &below {
            for g in m.gens() {
                let diff = e.sub(g).unwrap();
                if !diff.is_negative() && m.member(&diff).unwrap() {
                    prop_assert!(set.contains(&diff), "missing {diff} = {e} - {g}");
                }
            }
        }
        // And every element is a member below the bound.
        for e in &below {
            prop_assert!(m.member(e).unwrap());
            prop_assert!(e <= &b);
        }
    }

    #[test]
    fn prefix_atoms_ignore_later_generators(
        raw in prop::collection::btree_set((1i64..=9, 1i64..=9), 2..=5),
    ) {
        // Increasing generator lists: the atom set of a prefix agrees with
        // the atoms of any longer prefix restricted to it.
        let gens: Vec<FieldElem> = raw.into_iter().map(|(n, d)| FieldElem::Q(ratio(n, d))).collect();
        let full = FinMonoid::build(FieldTag::Q, gens).unwrap();
        let sorted = full.gens().to_vec();
        let full_atoms: BTreeSet<&FieldElem> = full.atoms().iter().collect();
        for k in 1..sorted.len() {
            let prefix = FinMonoid::build(FieldTag::Q, sorted[..k].to_vec()).unwrap();
            let prefix_atoms: BTreeSet<&FieldElem> = prefix.atoms().iter().collect();
            let restricted: BTreeSet<&FieldElem> = full_atoms
                .iter()
                .copied()
                .filter(|a| sorted[..k].contains(a))
                .collect();
            prop_assert_eq!(prefix_atoms, restricted);
        }
    }
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u64..=120).prop_map(Expr::nat),
        Just(Expr::VarX),
        Just(Expr::VarN),
    ];
    leaf.prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), 0u32..=4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            inner.clone().prop_map(|a| Expr::Prime(Box::new(a))),
            inner.prop_map(|a| Expr::Floor(Box::new(a))),
        ]
    })
}

proptest! {
    #[test]
    fn rendering_round_trips_structurally(e in arb_expr()) {
        let printed = render(&e);
        let reparsed = parse_expr(&printed)
            .unwrap_or_else(|err| panic!("{printed}: {err}"));
        prop_assert_eq!(reparsed, e);
    }

    #[test]
    fn evaluation_is_referentially_transparent(e in arb_expr(), n in 1u64..=6) {
        let a = eval_expr(&e, n, FieldTag::QX);
        let b = eval_expr(&e, n, FieldTag::QX);
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normalization_round_trips(
        qs in prop::collection::vec(arb_positive_rational(), 1..=4),
        shift in 0usize..=2,
    ) {
        // Build gens = q_i * X^shift / (X+1): all pairwise ratios rational.
        let base = FieldElem::from_polys(
            Poly::monomial(rat(1), shift),
            Poly::from_coeffs(vec![rat(1), rat(1)]),
        )
        .unwrap();
        let gens: Vec<FieldElem> = qs
            .iter()
            .map(|q| base.mul(&FieldElem::constant(FieldTag::QX, q.clone())).unwrap())
            .collect();
        let (scale, rats) = posmon::families::puiseux_normalize(FieldTag::QX, &gens)
            .unwrap()
            .expect("rational multiples of one element normalize");
        prop_assert_eq!(rats.len(), gens.len());
        for (q, g) in rats.iter().zip(&gens) {
            let back = FieldElem::constant(FieldTag::QX, q.clone()).div(&scale).unwrap();
            prop_assert_eq!(back, g.clone());
        }
    }
}

#[test]
fn growth_counts_never_decrease_on_registry_families() {
    for (id, target) in [("inf-z3", rat(3)), ("decreasing-not-bf", rat(1)), ("halving", ratio(1, 2))] {
        let family = paper_example(id).unwrap();
        let rows = family.growth(&FieldElem::Q(target), 1, 6).unwrap();
        assert!(
            rows.windows(2).all(|w| w[0].count <= w[1].count),
            "{id}: counts decreased: {rows:?}"
        );
    }
}

#[test]
fn ff_family_counts_stabilize() {
    // Fix x = 10/3 + 6/5, a member from the first index on. Only atoms with
    // small denominators can divide it, so counts must stop growing.
    let family = paper_example("ff-not-increasing").unwrap();
    let target = FieldElem::Q(ratio(10, 3) + ratio(6, 5));
    let rows = family.growth(&target, 1, 8).unwrap();
    assert!(rows[0].count >= 1, "member from N=1 on");
    assert!(rows.windows(2).all(|w| w[0].count <= w[1].count));
    let tail: Vec<u64> = rows[5..].iter().map(|r| r.count).collect();
    assert!(
        tail.windows(2).all(|w| w[0] == w[1]),
        "counts should have stabilized by N=6: {rows:?}"
    );
    // Independent check of the stabilized count at a mid-size truncation.
    let m = family.truncate(6).unwrap();
    let atoms: Vec<Rational> = m.atoms().iter().map(|a| a.as_rational().unwrap()).collect();
    let oracle = oracle_factorizations_q(&atoms, &(ratio(10, 3) + ratio(6, 5))).unwrap();
    assert_eq!(rows[5].count as usize, oracle.len());
}

#[test]
fn increasing_families_have_stable_atoms_across_the_window() {
    let family = paper_example("classic-strongly-increasing").unwrap();
    assert_eq!(
        family.classify_monotone(6).unwrap(),
        posmon::families::Monotonicity::Increasing
    );
    let report = family.atom_stability(1, 6).unwrap();
    assert!(report
        .flags
        .iter()
        .all(|(_, f)| *f == posmon::families::StabilityFlag::StableAtom));
}
