//! Parametric generator families, truncation, and stability diagnostics.
//!
//! An infinite positive monoid enters the workbench as a generator family:
//! an explicit list, a term in the index variable n, several terms paired
//! per index, or powers of a fixed element (optionally rescaled per index,
//! which covers families like (1/2)^n / p(n+1) whose exponents cannot be
//! written in the term grammar). Truncating a family at N produces the
//! finitely generated snapshot of its first N index values; every property
//! reported here is evidence about a window of truncations, never a verdict
//! about the infinite limit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::{eval_expr, render, Expr, MonoidSpec, SpecSource};
use crate::field::rational::{is_prime, padic_valuation, Rational, Valuation};
use crate::field::{FieldElem, FieldTag};
use crate::monoid::FinMonoid;

/// How a family produces its generators.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyKind {
    /// A fixed finite list; truncation ignores N and uses the whole list.
    Explicit(Vec<FieldElem>),
    /// One term evaluated at n = n_start, n_start+1, ...
    Parametric(Expr),
    /// Several terms, all evaluated at each n before moving to n+1.
    PairedParametric(Vec<Expr>),
    /// `coeff(n) * base^n`; `coeff` defaults to 1.
    Powers { base: FieldElem, coeff: Option<Expr> },
}

/// A generator family over one ambient field.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorFamily {
    tag: FieldTag,
    kind: FamilyKind,
    n_start: u32,
}

/// Monotonicity of the raw term sequence over a truncation window.
///
/// The comparison is non-strict: repeated values do not break a monotone
/// classification, and a constant sequence is reported as such.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
    Neither,
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Monotonicity::Increasing => "increasing",
            Monotonicity::Decreasing => "decreasing",
            Monotonicity::Constant => "constant",
            Monotonicity::Neither => "neither",
        };
        write!(f, "{s}")
    }
}

/// Fate of one generator across a window of truncations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityFlag {
    /// Atom at every truncation where it is present, including one
    /// lookahead step past the window's end.
    StableAtom,
    /// Atom at some truncation, no longer an atom at a later one.
    Unstable,
    /// Never an atom.
    NonAtom,
}

impl fmt::Display for StabilityFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StabilityFlag::StableAtom => "stable-atom",
            StabilityFlag::Unstable => "unstable",
            StabilityFlag::NonAtom => "non-atom",
        };
        write!(f, "{s}")
    }
}

/// Atom sets per truncation plus per-generator stability flags.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub atoms_by_n: BTreeMap<u32, Vec<FieldElem>>,
    /// One flag per distinct generator of the largest truncation, in
    /// increasing element order.
    pub flags: Vec<(FieldElem, StabilityFlag)>,
}

/// One row of a growth table: |Z(target)| and max L(target) at truncation n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: u32,
    pub count: u64,
    pub max_length: Option<u64>,
}

/// Window evidence about denominators of a rational (or rationalizable)
/// family: the paper's boundedness condition is approximated by watching
/// the maximal denominator, its prime support, and the minimal p-adic
/// valuation per support prime.
#[derive(Debug, Clone)]
pub struct DenominatorReport {
    /// True when the maximal denominator did not grow at the window's
    /// final step (no growth observed; a single-step window reports true).
    pub bounded_flag: bool,
    pub max_denominator: BigInt,
    pub prime_support: BTreeSet<BigInt>,
    /// Minimal v_p over the window's generators, for each support prime.
    pub min_valuations: BTreeMap<BigInt, i64>,
}

impl GeneratorFamily {
    pub fn explicit(tag: FieldTag, gens: Vec<FieldElem>) -> Result<GeneratorFamily> {
        for g in &gens {
            if g.tag() != tag {
                return Err(Error::TagMismatch(tag, g.tag()));
            }
        }
        Ok(GeneratorFamily { tag, kind: FamilyKind::Explicit(gens), n_start: 1 })
    }

    pub fn parametric(tag: FieldTag, term: Expr, n_start: u32) -> GeneratorFamily {
        GeneratorFamily { tag, kind: FamilyKind::Parametric(term), n_start }
    }

    pub fn paired(tag: FieldTag, terms: Vec<Expr>, n_start: u32) -> GeneratorFamily {
        GeneratorFamily { tag, kind: FamilyKind::PairedParametric(terms), n_start }
    }

    pub fn powers(
        tag: FieldTag,
        base: FieldElem,
        coeff: Option<Expr>,
        n_start: u32,
    ) -> Result<GeneratorFamily> {
        if base.tag() != tag {
            return Err(Error::TagMismatch(tag, base.tag()));
        }
        if !base.is_positive() {
            return Err(Error::FamilyEval(format!("power base {base} is not positive")));
        }
        Ok(GeneratorFamily { tag, kind: FamilyKind::Powers { base, coeff }, n_start })
    }

    pub fn from_spec(spec: &MonoidSpec) -> Result<GeneratorFamily> {
        match &spec.source {
            SpecSource::Explicit(exprs) => {
                let mut gens = Vec::with_capacity(exprs.len());
                for e in exprs {
                    gens.push(eval_expr(e, 1, spec.field)?);
                }
                GeneratorFamily::explicit(spec.field, gens)
            }
            SpecSource::Family { terms, n_start } => {
                Ok(GeneratorFamily { tag: spec.field, kind: FamilyKind::PairedParametric(terms.clone()), n_start: *n_start })
            }
        }
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn n_start(&self) -> u32 {
        self.n_start
    }

    /// A compact description, e.g. `1/p(n)` or `(1/2)^n * 1/p(n+1)`.
    pub fn describe(&self) -> String {
        match &self.kind {
            FamilyKind::Explicit(gens) => {
                let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                parts.join(", ")
            }
            FamilyKind::Parametric(term) => render(term),
            FamilyKind::PairedParametric(terms) => {
                let parts: Vec<String> = terms.iter().map(render).collect();
                parts.join(", ")
            }
            FamilyKind::Powers { base, coeff } => match coeff {
                None => format!("({base})^n"),
                Some(c) => format!("({base})^n * {}", render(c)),
            },
        }
    }

    fn eval_positive(&self, value: FieldElem, n: u32) -> Result<FieldElem> {
        if value.is_positive() {
            Ok(value)
        } else {
            Err(Error::FamilyEval(format!("term value {value} at n={n} is not positive")))
        }
    }

    /// The raw generator sequence of the first `count` index values, in
    /// index order (all terms of a paired family per index), before any
    /// sorting or deduplication. Explicit families return their whole list.
    pub fn raw_terms(&self, count: u32) -> Result<Vec<FieldElem>> {
        match &self.kind {
            FamilyKind::Explicit(gens) => Ok(gens.clone()),
            FamilyKind::Parametric(term) => {
                let mut out = Vec::new();
                for n in self.n_start..self.n_start + count {
                    let v = eval_expr(term, n as u64, self.tag)
                        .map_err(|e| Error::FamilyEval(format!("term at n={n}: {e}")))?;
                    out.push(self.eval_positive(v, n)?);
                }
                Ok(out)
            }
            FamilyKind::PairedParametric(terms) => {
                let mut out = Vec::new();
                for n in self.n_start..self.n_start + count {
                    for term in terms {
                        let v = eval_expr(term, n as u64, self.tag)
                            .map_err(|e| Error::FamilyEval(format!("term at n={n}: {e}")))?;
                        out.push(self.eval_positive(v, n)?);
                    }
                }
                Ok(out)
            }
            FamilyKind::Powers { base, coeff } => {
                let mut out = Vec::new();
                for n in self.n_start..self.n_start + count {
                    let mut v = base.pow(n);
                    if let Some(c) = coeff {
                        let cv = eval_expr(c, n as u64, self.tag)
                            .map_err(|e| Error::FamilyEval(format!("coefficient at n={n}: {e}")))?;
                        v = v.mul(&cv).expect("same tag");
                    }
                    out.push(self.eval_positive(v, n)?);
                }
                Ok(out)
            }
        }
    }

    /// The finitely generated snapshot of the first `n` index values.
    pub fn truncate(&self, n: u32) -> Result<FinMonoid> {
        if n == 0 {
            return Err(Error::Domain("truncation size must be at least 1".into()));
        }
        FinMonoid::build(self.tag, self.raw_terms(n)?)
    }

    /// Classifies the raw term sequence over a window of `n` index values.
    pub fn classify_monotone(&self, n: u32) -> Result<Monotonicity> {
        if n < 2 {
            return Err(Error::Domain("monotonicity needs a window of at least 2".into()));
        }
        let seq = self.raw_terms(n)?;
        let mut increasing = true;
        let mut decreasing = true;
        for w in seq.windows(2) {
            match w[0].compare(&w[1])? {
                std::cmp::Ordering::Less => decreasing = false,
                std::cmp::Ordering::Greater => increasing = false,
                std::cmp::Ordering::Equal => {}
            }
        }
        Ok(match (increasing, decreasing) {
            (true, true) => Monotonicity::Constant,
            (true, false) => Monotonicity::Increasing,
            (false, true) => Monotonicity::Decreasing,
            (false, false) => Monotonicity::Neither,
        })
    }

    /// Atom sets across a window of truncations, with a stability flag per
    /// generator.
    ///
    /// A generator is a stable atom when it is an atom at every truncation
    /// from its first appearance through one step past the window (the
    /// lookahead is what lets the final window point be judged); unstable
    /// when it is an atom somewhere and a non-atom later; a non-atom when
    /// it never is one. Once a generator stops being an atom it can never
    /// become one again, since enlarging the generator list only adds ways
    /// to reach it.
    pub fn atom_stability(&self, lo: u32, hi: u32) -> Result<StabilityReport> {
        if lo < 1 || lo > hi {
            return Err(Error::Domain("stability window must be nonempty and start at 1 or later".into()));
        }
        let mut atoms_by_n = BTreeMap::new();
        let mut atom_sets: BTreeMap<u32, BTreeSet<FieldElem>> = BTreeMap::new();
        let mut gen_sets: BTreeMap<u32, BTreeSet<FieldElem>> = BTreeMap::new();
        for n in lo..=hi + 1 {
            let m = self.truncate(n)?;
            if n <= hi {
                atoms_by_n.insert(n, m.atoms().to_vec());
            }
            atom_sets.insert(n, m.atoms().iter().cloned().collect());
            gen_sets.insert(n, m.gens().iter().cloned().collect());
        }
        let universe = gen_sets[&hi].clone();
        let mut flags = Vec::new();
        for g in universe {
            let mut seen_atom = false;
            let mut died = false;
            for n in lo..=hi + 1 {
                if !gen_sets[&n].contains(&g) {
                    continue;
                }
                if atom_sets[&n].contains(&g) {
                    seen_atom = true;
                } else if seen_atom {
                    died = true;
                }
            }
            let flag = match (seen_atom, died) {
                (false, _) => StabilityFlag::NonAtom,
                (true, false) => StabilityFlag::StableAtom,
                (true, true) => StabilityFlag::Unstable,
            };
            flags.push((g, flag));
        }
        Ok(StabilityReport { atoms_by_n, flags })
    }

    /// Exact |Z(target)| and max L(target) per truncation in the window.
    pub fn growth(&self, target: &FieldElem, lo: u32, hi: u32) -> Result<Vec<GrowthRow>> {
        if lo < 1 || lo > hi {
            return Err(Error::Domain("growth window must be nonempty and start at 1 or later".into()));
        }
        let mut rows = Vec::new();
        for n in lo..=hi {
            let m = self.truncate(n)?;
            let zs = m.factorizations(target)?;
            rows.push(GrowthRow {
                n,
                count: zs.len() as u64,
                max_length: zs.iter().map(|z| z.length()).max(),
            });
        }
        Ok(rows)
    }

    /// Window evidence for denominator boundedness; the family must be
    /// rational or rationalizable by a single scale (see
    /// [`puiseux_normalize`]).
    pub fn denominator_boundedness(&self, n: u32) -> Result<DenominatorReport> {
        if n == 0 {
            return Err(Error::Domain("window must be at least 1".into()));
        }
        let rationals_at = |k: u32| -> Result<Vec<Rational>> {
            let gens = self.truncate(k)?.gens().to_vec();
            match puiseux_normalize(self.tag, &gens)? {
                Some((_, rats)) => Ok(rats),
                None => Err(Error::NotApplicable(
                    "family is not rationalizable: generator ratios leave Q".into(),
                )),
            }
        };
        let max_den = |rats: &[Rational]| -> BigInt {
            rats.iter().map(|q| q.denom().clone()).max().unwrap_or_else(BigInt::one)
        };

        let rats = rationals_at(n)?;
        let max_denominator = max_den(&rats);
        let bounded_flag = if n == 1 {
            true
        } else {
            max_den(&rationals_at(n - 1)?) == max_denominator
        };

        let mut prime_support = BTreeSet::new();
        let mut d = BigInt::from(2);
        let largest = max_denominator.clone();
        while &d <= &largest {
            if is_prime(&d) && rats.iter().any(|q| (q.denom() % &d).is_zero()) {
                prime_support.insert(d.clone());
            }
            d += 1;
        }
        let mut min_valuations = BTreeMap::new();
        for p in &prime_support {
            let mut min_v = i64::MAX;
            for q in &rats {
                if let Valuation::Finite(v) = padic_valuation(p, q)? {
                    min_v = min_v.min(v);
                }
            }
            min_valuations.insert(p.clone(), min_v);
        }
        Ok(DenominatorReport { bounded_flag, max_denominator, prime_support, min_valuations })
    }

    /// For an explicit family: can its underlying set be enumerated both
    /// increasingly and decreasingly? (Always yes for a finite set; the
    /// check actually builds and verifies both enumerations.) Parametric
    /// families return `None`: the question is about the infinite object.
    pub fn set_is_increasing_and_decreasing(&self) -> Option<bool> {
        let FamilyKind::Explicit(gens) = &self.kind else {
            return None;
        };
        let mut sorted = gens.clone();
        sorted.sort();
        let increasing = sorted.windows(2).all(|w| w[0] <= w[1]);
        let decreasing = sorted.iter().rev().collect::<Vec<_>>().windows(2).all(|w| w[0] >= w[1]);
        Some(increasing && decreasing)
    }
}

/// Rescales a generator list into Q when possible.
///
/// Returns `Some((a, rationals))` with `a * g_i` rational for every i —
/// the scale is `1/g_1`, so the first generator normalizes to 1 — or
/// `None` when some ratio `g_i / g_1` leaves Q. Lists that are already
/// rational are returned unchanged under scale 1; the empty list yields
/// scale 1 and no generators. All generators must be positive.
pub fn puiseux_normalize(
    tag: FieldTag,
    gens: &[FieldElem],
) -> Result<Option<(FieldElem, Vec<Rational>)>> {
    for g in gens {
        if g.tag() != tag {
            return Err(Error::TagMismatch(tag, g.tag()));
        }
        if !g.is_positive() {
            return Err(Error::Domain(format!("generator {g} is not positive")));
        }
    }
    let one = FieldElem::one(tag);
    if gens.is_empty() {
        return Ok(Some((one, Vec::new())));
    }
    if let Some(rats) = gens.iter().map(FieldElem::as_rational).collect::<Option<Vec<_>>>() {
        return Ok(Some((one, rats)));
    }
    let scale = one.div(&gens[0])?;
    let mut rats = Vec::with_capacity(gens.len());
    for g in gens {
        match scale.mul(g)?.as_rational() {
            Some(q) => rats.push(q),
            None => return Ok(None),
        }
    }
    Ok(Some((scale, rats)))
}

/// One entry of the worked-example registry.
#[derive(Debug, Clone)]
pub struct ExampleEntry {
    pub id: &'static str,
    /// What the example demonstrates, in one line.
    pub summary: &'static str,
    /// A canonical target whose factorization growth the example is about,
    /// if it has one (as a term string).
    pub canonical_target: Option<&'static str>,
}

/// The registry of worked examples, in a fixed presentation order.
pub fn registry() -> &'static [ExampleEntry] {
    &[
        ExampleEntry {
            id: "inf-z3",
            summary: "all atoms lie strictly between 1 and 2, yet Z(3) grows without bound",
            canonical_target: Some("3"),
        },
        ExampleEntry {
            id: "classic-strongly-increasing",
            summary: "(p(n)^2+1)/p(n): increasing and unbounded over Q, with stable atoms",
            canonical_target: Some("5/2"),
        },
        ExampleEntry {
            id: "decreasing-not-bf",
            summary: "1/p(n): decreasing; 1 is a sum of p_n copies of 1/p_n, so L(1) is unbounded",
            canonical_target: Some("1"),
        },
        ExampleEntry {
            id: "ff-not-increasing",
            summary: "interleaved unbounded and near-1 atoms: finite factorizations without monotonicity",
            canonical_target: None,
        },
        ExampleEntry {
            id: "qx-P",
            summary: "X^n over Q(X): one generator per Archimedean class",
            canonical_target: None,
        },
        ExampleEntry {
            id: "qx-Pprime",
            summary: "X^3 and X+n*X^2 over Q(X): infinitely many atoms below an atom",
            canonical_target: None,
        },
        ExampleEntry {
            id: "halving",
            summary: "1/2^n: every truncation keeps a single atom 1/2^N; no atom survives",
            canonical_target: None,
        },
        ExampleEntry {
            id: "not-hereditarily-atomic",
            summary: "1/(2^n p_n) over the odd primes: atomic with unbounded lengths of 1",
            canonical_target: Some("1"),
        },
    ]
}

/// Builds the family registered under `id`.
pub fn paper_example(id: &str) -> Result<GeneratorFamily> {
    use crate::expr::parse_expr;
    use crate::field::rational::ratio;

    let parse = |s: &str| parse_expr(s).expect("registry term parses");
    match id {
        "inf-z3" => Ok(GeneratorFamily::paired(
            FieldTag::Q,
            vec![parse("(p(n)+floor(p(n)/2))/p(n)"), parse("(2*p(n)-floor(p(n)/2))/p(n)")],
            1,
        )),
        "classic-strongly-increasing" => {
            Ok(GeneratorFamily::parametric(FieldTag::Q, parse("(p(n)^2+1)/p(n)"), 1))
        }
        "decreasing-not-bf" => Ok(GeneratorFamily::parametric(FieldTag::Q, parse("1/p(n)"), 1)),
        "ff-not-increasing" => Ok(GeneratorFamily::paired(
            FieldTag::Q,
            vec![parse("(p(2*n)^2+1)/p(2*n)"), parse("(p(2*n+1)+1)/p(2*n+1)")],
            1,
        )),
        "qx-P" => GeneratorFamily::powers(FieldTag::QX, FieldElem::x(), None, 1),
        "qx-Pprime" => Ok(GeneratorFamily::paired(
            FieldTag::QX,
            vec![parse("X^3"), parse("X+n*X^2")],
            1,
        )),
        "halving" => GeneratorFamily::powers(
            FieldTag::Q,
            FieldElem::Q(ratio(1, 2)),
            None,
            1,
        ),
        // The paper's family runs over the odd primes, hence p(n+1).
        "not-hereditarily-atomic" => GeneratorFamily::powers(
            FieldTag::Q,
            FieldElem::Q(ratio(1, 2)),
            Some(parse("1/p(n+1)")),
            1,
        ),
        _ => Err(Error::UnknownExample(id.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::field::poly::Poly;
    use crate::field::rational::{rat, ratio};
    use num_bigint::BigInt;

    fn family(term: &str) -> GeneratorFamily {
        GeneratorFamily::parametric(FieldTag::Q, parse_expr(term).unwrap(), 1)
    }

    fn q(n: i64, d: i64) -> FieldElem {
        FieldElem::Q(ratio(n, d))
    }

    #[test]
    fn truncate_classic_family() {
        let m = family("(p(n)^2+1)/p(n)").truncate(3).unwrap();
        assert_eq!(m.gens(), &[q(5, 2), q(10, 3), q(26, 5)]);
    }

    #[test]
    fn truncate_reciprocal_primes() {
        let m = family("1/p(n)").truncate(3).unwrap();
        assert_eq!(m.gens(), &[q(1, 5), q(1, 3), q(1, 2)]);
    }

    #[test]
    fn paired_terms_coincide_and_dedup() {
        let f = paper_example("inf-z3").unwrap();
        let m = f.truncate(1).unwrap();
        assert_eq!(m.gens(), &[q(3, 2)]);
    }

    #[test]
    fn nonpositive_term_is_a_family_error() {
        let f = family("n-3");
        assert!(matches!(f.truncate(4), Err(Error::FamilyEval(_))));
        // Window below the bad index is fine.
        assert!(family("n-3").truncate(1).is_err()); // n=1 gives -2
    }

    #[test]
    fn classify_windows() {
        assert_eq!(family("(p(n)^2+1)/p(n)").classify_monotone(5).unwrap(), Monotonicity::Increasing);
        assert_eq!(family("1/p(n)").classify_monotone(5).unwrap(), Monotonicity::Decreasing);
        assert_eq!(
            paper_example("ff-not-increasing").unwrap().classify_monotone(6).unwrap(),
            Monotonicity::Neither
        );
        assert_eq!(family("7/2").classify_monotone(3).unwrap(), Monotonicity::Constant);
        assert!(family("n").classify_monotone(1).is_err());
    }

    #[test]
    fn halving_atoms_shift_and_die() {
        let f = paper_example("halving").unwrap();
        let report = f.atom_stability(1, 5).unwrap();
        for n in 1..=5u32 {
            let expected = FieldElem::Q(Rational::new(1.into(), BigInt::from(2).pow(n)));
            assert_eq!(report.atoms_by_n[&n], vec![expected], "at N={n}");
        }
        assert!(report.flags.iter().all(|(_, f)| *f == StabilityFlag::Unstable));
    }

    #[test]
    fn classic_atoms_are_stable() {
        let f = paper_example("classic-strongly-increasing").unwrap();
        let report = f.atom_stability(1, 5).unwrap();
        assert_eq!(report.flags.len(), 5);
        assert!(report.flags.iter().all(|(_, f)| *f == StabilityFlag::StableAtom));
    }

    #[test]
    fn odd_prime_powers_atoms_are_stable() {
        let f = paper_example("not-hereditarily-atomic").unwrap();
        // Generators 1/6, 1/20, 1/56, 1/176.
        let m = f.truncate(4).unwrap();
        assert_eq!(m.gens()[3], q(1, 6));
        assert_eq!(m.gens()[0], q(1, 176));
        let report = f.atom_stability(1, 4).unwrap();
        assert!(report.flags.iter().all(|(_, f)| *f == StabilityFlag::StableAtom));
        assert_eq!(report.atoms_by_n[&4].len(), 4);
    }

    #[test]
    fn growth_of_three_in_inf_z3() {
        let f = paper_example("inf-z3").unwrap();
        let rows = f.growth(&FieldElem::Q(rat(3)), 1, 5).unwrap();
        let counts: Vec<u64> = rows.iter().map(|r| r.count).collect();
        assert_eq!(counts, vec![1, 2, 3, 4, 5]);
        assert!(rows.iter().all(|r| r.max_length == Some(2)));
    }

    #[test]
    fn growth_of_one_over_reciprocal_primes() {
        let f = paper_example("decreasing-not-bf").unwrap();
        let rows = f.growth(&FieldElem::Q(rat(1)), 1, 4).unwrap();
        let maxes: Vec<u64> = rows.iter().map(|r| r.max_length.unwrap()).collect();
        assert_eq!(maxes, vec![2, 3, 5, 7]);
    }

    #[test]
    fn atoms_factor_uniquely() {
        let f = paper_example("classic-strongly-increasing").unwrap();
        for n in [1u32, 3, 5] {
            let rows = f.growth(&q(5, 2), n, n).unwrap();
            assert_eq!(rows[0].count, 1, "at N={n}");
        }
    }

    #[test]
    fn normalize_scales_first_generator_to_one() {
        // {3X/2, 5X/7} -> a = 2/(3X), images {1, 10/21}
        let g1 = FieldElem::from_polys(
            Poly::from_coeffs(vec![rat(0), ratio(3, 2)]),
            Poly::one(),
        )
        .unwrap();
        let g2 = FieldElem::from_polys(
            Poly::from_coeffs(vec![rat(0), ratio(5, 7)]),
            Poly::one(),
        )
        .unwrap();
        let (scale, rats) = puiseux_normalize(FieldTag::QX, &[g1.clone(), g2.clone()])
            .unwrap()
            .expect("normalizable");
        assert_eq!(rats, vec![rat(1), ratio(10, 21)]);
        // Round trip: dividing the images by the scale returns the inputs.
        let back1 = FieldElem::constant(FieldTag::QX, rats[0].clone()).div(&scale).unwrap();
        let back2 = FieldElem::constant(FieldTag::QX, rats[1].clone()).div(&scale).unwrap();
        assert_eq!(back1, g1);
        assert_eq!(back2, g2);
    }

    #[test]
    fn normalize_rejects_irrational_ratios() {
        let x = FieldElem::x();
        let x2 = x.pow(2);
        assert_eq!(puiseux_normalize(FieldTag::QX, &[x, x2]).unwrap(), None);
    }

    #[test]
    fn normalize_keeps_rational_lists() {
        let gens = [FieldElem::Q(rat(3)), FieldElem::Q(rat(5))];
        let (scale, rats) = puiseux_normalize(FieldTag::Q, &gens).unwrap().unwrap();
        assert_eq!(scale, FieldElem::Q(rat(1)));
        assert_eq!(rats, vec![rat(3), rat(5)]);
        let (scale, rats) = puiseux_normalize(FieldTag::Q, &[]).unwrap().unwrap();
        assert_eq!(scale, FieldElem::Q(rat(1)));
        assert!(rats.is_empty());
    }

    #[test]
    fn denominator_reports() {
        let r = family("1/p(n)").denominator_boundedness(4).unwrap();
        assert_eq!(r.max_denominator, BigInt::from(7));
        let support: Vec<i64> = r.prime_support.iter().map(|p| p.try_into().unwrap()).collect();
        assert_eq!(support, vec![2, 3, 5, 7]);
        assert!(!r.bounded_flag, "denominators keep growing through the window");
        assert_eq!(r.min_valuations[&BigInt::from(7)], -1);

        let r = family("(p(n)^2+1)/p(n)").denominator_boundedness(3).unwrap();
        let support: Vec<i64> = r.prime_support.iter().map(|p| p.try_into().unwrap()).collect();
        assert_eq!(support, vec![2, 3, 5]);

        let r = family("n/1").denominator_boundedness(5).unwrap();
        assert_eq!(r.max_denominator, BigInt::one());
        assert!(r.prime_support.is_empty());
        assert!(r.bounded_flag);
    }

    #[test]
    fn denominator_report_not_applicable_over_qx() {
        let f = paper_example("qx-Pprime").unwrap();
        assert!(matches!(f.denominator_boundedness(3), Err(Error::NotApplicable(_))));
        // But a rationalizable Q(X) family works: constants only.
        let g = GeneratorFamily::parametric(FieldTag::QX, parse_expr("n/2").unwrap(), 1);
        let r = g.denominator_boundedness(3).unwrap();
        assert_eq!(r.max_denominator, BigInt::from(2));
    }

    #[test]
    fn registry_examples() {
        let f = paper_example("qx-Pprime").unwrap();
        let m = f.truncate(4).unwrap();
        // Atoms: {X^3} plus {X+nX^2 : n <= 4}.
        assert_eq!(m.atoms().len(), 5);
        let x3 = FieldElem::x().pow(3);
        assert!(m.atoms().contains(&x3));

        let f = paper_example("halving").unwrap();
        assert_eq!(f.describe(), "(1/2)^n");

        assert!(matches!(paper_example("nope"), Err(Error::UnknownExample(_))));
        assert_eq!(registry().len(), 8);
        for entry in registry() {
            paper_example(entry.id).expect("every registry id builds");
        }
    }

    #[test]
    fn qx_powers_family() {
        let f = paper_example("qx-P").unwrap();
        let m = f.truncate(3).unwrap();
        let x = FieldElem::x();
        assert_eq!(m.gens(), &[x.clone(), x.pow(2), x.pow(3)]);
        assert_eq!(m.atoms().len(), 3);
    }

    #[test]
    fn explicit_sets_are_monotone_both_ways() {
        let f = GeneratorFamily::explicit(
            FieldTag::Q,
            vec![FieldElem::Q(rat(5)), FieldElem::Q(rat(2)), FieldElem::Q(rat(9))],
        )
        .unwrap();
        assert_eq!(f.set_is_increasing_and_decreasing(), Some(true));
        assert_eq!(family("n").set_is_increasing_and_decreasing(), None);
    }
}
