//! Frobenius powers and roots, Frobenius closure, and a test-element
//! bounded approximation of tight closure.
//!
//! Two notions of "root" appear. [`frobenius_root`] is the contraction
//! `{f : f^q ∈ K}`, the largest `J` with `J^[q] ⊆ K`; it is what membership
//! tests `x^q ∈ I^[q]` need. [`minimal_frobenius_root`] is the smallest `J`
//! with `K ⊆ J^[q]`, computed from the basis of `P` over `P^q`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner;
use crate::ideal::{eliminate, Ideal, STANDARD_MONOMIAL_CAP};
use crate::linalg::kernel;
use crate::monomial::Monomial;
use crate::par;
use crate::poly::{Poly, Term};
use crate::quotient::{RingSpec, Tri};
use crate::ring::{ensure_same, RingRef};

pub(crate) fn power_of_p(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or_else(|| Error::overflow(format!("{p}^{e}")))
}

/// `I^[p^e]`, generated by the `p^e`-th powers of the generators.
pub fn bracket_power(i: &Ideal, e: u32) -> Result<Ideal> {
    let mut gens = Vec::with_capacity(i.generators().len());
    for g in i.generators() {
        gens.push(g.frobenius(e)?);
    }
    Ideal::new(i.ring(), gens)
}

/// `{f : f^(p^e) ∈ K}`.
pub fn frobenius_root(k: &Ideal, e: u32) -> Result<Ideal> {
    contraction(k, None, Some(k), e)
}

/// Smallest `J` with `K ⊆ J^[p^e]`: each generator is written as
/// `Σ_μ h_μ^(p^e) μ` over the monomials `μ` with exponents below `p^e`,
/// and the `h_μ` generate `J`.
pub fn minimal_frobenius_root(k: &Ideal, e: u32) -> Result<Ideal> {
    let ring = k.ring();
    let q = power_of_p(ring.characteristic(), e)?;
    let mut gens = Vec::new();
    for g in k.gb() {
        let mut parts: Vec<(Vec<u64>, Vec<Term>)> = Vec::new();
        for (m, c) in g.terms() {
            let rem: Vec<u64> = m.exponents().iter().map(|a| a % q).collect();
            let quo: Vec<u64> = m.exponents().iter().map(|a| a / q).collect();
            let term = (Monomial::from_exponents(&quo)?, *c);
            match parts.iter_mut().find(|(r, _)| *r == rem) {
                Some((_, ts)) => ts.push(term),
                None => parts.push((rem, vec![term])),
            }
        }
        for (_, ts) in parts {
            gens.push(Poly::from_terms(ring, ts));
        }
    }
    Ok(Ideal::from_gens(ring, gens).canonical())
}

/// `{f : c·f^(p^e) ∈ K}` (`c = 1` when absent).
///
/// `floor`, when given, must be contained in the answer. If `P/floor` is
/// finite the answer is `floor + ker(f ↦ NF_K(c f^q))` on the standard
/// monomials of `floor`, which is linear because Frobenius is additive and
/// fixes `F_p`. Otherwise one Frobenius step is eliminated at a time.
pub(crate) fn contraction(k: &Ideal, c: Option<&Poly>, floor: Option<&Ideal>, e: u32) -> Result<Ideal> {
    let ring = k.ring();
    if let Some(c) = c {
        ensure_same(ring, c.ring())?;
    }
    if e == 0 {
        return match c {
            Some(c) => k.colon_poly(c),
            None => Ok(k.canonical()),
        };
    }
    if let Some(l) = floor {
        if l.is_unit() {
            return Ok(l.canonical());
        }
        if l.dimension() == Some(0) {
            return artinian_contraction(k, c, l, e);
        }
    }
    let mut cur = match c {
        Some(c) => k.colon_poly(c)?,
        None => k.canonical(),
    };
    for _ in 0..e {
        cur = contraction_step(&cur)?;
    }
    Ok(cur)
}

fn artinian_contraction(k: &Ideal, c: Option<&Poly>, floor: &Ideal, e: u32) -> Result<Ideal> {
    let ring = k.ring();
    let q = power_of_p(ring.characteristic(), e)?;
    let basis = floor.standard_monomials(STANDARD_MONOMIAL_CAP)?;
    let kgb = k.gb();
    let images = par::map(&basis, |mu| -> Result<Poly> {
        let mut img = Poly::monomial(ring, mu.scale(q)?, 1);
        if let Some(c) = c {
            img = c.mul_unchecked(&img)?;
        }
        Ok(groebner::reduce(img, kgb))
    });
    let images = images.into_iter().collect::<Result<Vec<Poly>>>()?;
    let mut gens = floor.gb().to_vec();
    for v in kernel(ring, &images) {
        let terms: Vec<Term> = v
            .iter()
            .zip(basis.iter())
            .filter(|(a, _)| **a != 0)
            .map(|(a, mu)| (mu.clone(), *a))
            .collect();
        gens.push(Poly::from_terms(ring, terms));
    }
    Ok(Ideal::from_gens(ring, gens).canonical())
}

/// `{f : f^p ∈ K}` as `(K(x) + (x_i^p − y_i)) ∩ F_p[y]`, renamed back.
fn contraction_step(k: &Ideal) -> Result<Ideal> {
    let ring = k.ring();
    if k.is_unit() || k.is_zero() {
        return Ok(k.canonical());
    }
    let n = ring.nvars();
    let p = ring.characteristic();
    let aux: Vec<String> = (0..n).map(|i| format!("@x{i}")).collect();
    let big = ring.with_front_block(&aux);
    let mut gens = Vec::with_capacity(k.gb().len() + n);
    for g in k.gb() {
        gens.push(to_front(&big, g, n));
    }
    let field = big.field();
    for i in 0..n {
        let xp = Poly::var(&big, i).pow(p)?;
        gens.push(xp.add_unchecked(&Poly::var(&big, n + i), field.neg(1)));
    }
    Ok(eliminate(ring, &big, n, &gens))
}

/// Places `g` in the auxiliary front block of `big`.
fn to_front(big: &RingRef, g: &Poly, n: usize) -> Poly {
    let terms = g
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut exps = m.exponents().to_vec();
            exps.extend(std::iter::repeat_n(0, n));
            (Monomial::from_exponents(&exps).expect("same degree"), *c)
        })
        .collect();
    Poly::from_terms(big, terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    Stabilized,
    CapReached,
}

/// Outcome of [`frobenius_closure`].
#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    /// The last computed chain term (contains `A`).
    pub closure: Ideal,
    /// Least `e` with `J_e = J_(e+1)` once nilpotents are dead, when observed below the cap.
    pub stabilization_exponent: Option<u32>,
    /// Least `e` with `N^[p^e] ⊆ A`, `N` the nilradical, when known and at most the cap.
    pub nilpotence_exponent: Option<u32>,
    pub cap: u32,
    pub certified: Certification,
    /// `J_0 ⊆ J_1 ⊆ …` as computed.
    pub chain: Vec<Ideal>,
}

/// Least `e ≤ e_max` with `N^[p^e] ⊆ A`.
fn nilpotence_exponent(spec: &RingSpec, e_max: u32) -> Result<Option<u32>> {
    let Some(nil) = spec.nilradical().ok().flatten() else {
        return Ok(None);
    };
    for e in 0..=e_max {
        if spec.defining().contains(&bracket_power(&nil, e)?)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// `J_e = {f : f^(p^e) ∈ I^[p^e] + A}` for `e = 0, 1, …`, stopped at `e_max`
/// or at the first repetition `J_e = J_(e+1)` with `e` at least the
/// nilpotence exponent of `R`.
///
/// Below that exponent a repetition proves nothing: in `F_2[y]/(y^4)` the
/// chain for `(y^2)` reads `(y^2), (y^2), (y)`. Past it the repetition is
/// still not a proof, so the report keeps stabilization and cap exhaustion
/// apart.
pub fn frobenius_closure(i: &Ideal, spec: &RingSpec, e_max: u32) -> Result<ClosureReport> {
    ensure_same(spec.ring(), i.ring())?;
    let nil_e = nilpotence_exponent(spec, e_max)?;
    let j0 = spec.extend(i)?;
    let mut chain = vec![j0.clone()];
    for e in 1..=e_max {
        let k = spec.extend(&bracket_power(i, e)?)?;
        let je = contraction(&k, None, Some(&j0), e).map_err(|err| match err {
            Error::DegreeOverflow { context } => Error::DegreeOverflow {
                context: format!("{context} (Frobenius exponent {e})"),
            },
            other => other,
        })?;
        let prev = chain.last().expect("nonempty");
        assert!(je.contains(prev)?, "Frobenius closure chain must ascend");
        if je == *prev && nil_e.is_some_and(|n| e > n) {
            let closure = prev.clone();
            return Ok(ClosureReport {
                closure,
                stabilization_exponent: Some(e - 1),
                nilpotence_exponent: nil_e,
                cap: e_max,
                certified: Certification::Stabilized,
                chain,
            });
        }
        chain.push(je);
    }
    Ok(ClosureReport {
        closure: chain.last().expect("nonempty").clone(),
        stabilization_exponent: None,
        nilpotence_exponent: nil_e,
        cap: e_max,
        certified: Certification::CapReached,
        chain,
    })
}

/// Least `e ≤ e_max` with `f^(p^e) ∈ I^[p^e] + A`.
pub fn frobenius_membership(f: &Poly, i: &Ideal, spec: &RingSpec, e_max: u32) -> Result<Option<u32>> {
    ensure_same(spec.ring(), f.ring())?;
    for e in 0..=e_max {
        let k = spec.extend(&bracket_power(i, e)?)?;
        if k.contains_poly(&f.frobenius(e)?)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// `⋂_{e ≤ E} {f : c f^(p^e) ∈ I^[p^e] + A}`, an upper bound for `I*`
/// whenever `c` is a test element.
pub fn tight_closure_upper(i: &Ideal, spec: &RingSpec, c: &Poly, big_e: u32) -> Result<Ideal> {
    ensure_same(spec.ring(), c.ring())?;
    if spec.defining().contains_poly(c)? {
        return Err(Error::precondition("multiplier is zero in R"));
    }
    if spec.in_r_circ(c)? == Tri::No {
        return Err(Error::precondition(format!(
            "multiplier {c} lies in a minimal prime of R"
        )));
    }
    let floor = spec.extend(i)?;
    let exps: Vec<u32> = (0..=big_e).collect();
    let parts = par::map(&exps, |&e| -> Result<Ideal> {
        let k = spec.extend(&bracket_power(i, e)?)?;
        contraction(&k, Some(c), Some(&floor), e)
    });
    let mut acc: Option<Ideal> = None;
    for part in parts {
        let part = part?;
        acc = Some(match acc {
            None => part,
            Some(a) => a.intersect(&part)?,
        });
    }
    Ok(acc.expect("E >= 0 gives at least one term"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketVerdict {
    EqualCertified,
    GapCandidate,
    Inconclusive,
}

/// `I^F ⊆ I* ⊆ upper` sandwich produced by [`closure_equality_check`].
#[derive(Debug, Clone, Serialize)]
pub struct TightClosureBracket {
    pub lower: Ideal,
    pub upper: Ideal,
    #[serde(rename = "E")]
    pub big_e: u32,
    pub e_max: u32,
    pub test_element: Poly,
    pub test_element_in_r_circ: Tri,
    pub verdict: BracketVerdict,
    pub witness: Option<Poly>,
    pub closure: ClosureReport,
}

/// Compares the Frobenius closure with the test-element upper bound.
///
/// `equal-certified` means every element of the upper bound is in `I^F`
/// (so `I^F = I*`); `gap-candidate` names an element of the upper bound
/// with no Frobenius membership up to `e_max`.
pub fn closure_equality_check(
    i: &Ideal,
    spec: &RingSpec,
    c: &Poly,
    big_e: u32,
    e_max: u32,
) -> Result<TightClosureBracket> {
    let report = frobenius_closure(i, spec, e_max)?;
    let status = spec.in_r_circ(c)?;
    let upper = tight_closure_upper(i, spec, c, big_e)?;
    if !upper.contains(&report.closure)? {
        return Err(Error::precondition(format!(
            "{c} is not a test element: the upper bound misses part of the Frobenius closure"
        )));
    }
    let mut lower = report.closure.clone();
    let mut witness = None;
    if !lower.contains(&upper)? {
        for g in upper.gb() {
            if lower.contains_poly(g)? {
                continue;
            }
            if frobenius_membership(g, i, spec, e_max)?.is_none() {
                witness = Some(g.clone());
                break;
            }
        }
        if witness.is_none() {
            lower = upper.clone();
        }
    }
    let verdict = match (&witness, status) {
        (_, Tri::Unknown) => BracketVerdict::Inconclusive,
        (Some(_), _) => BracketVerdict::GapCandidate,
        (None, _) => BracketVerdict::EqualCertified,
    };
    Ok(TightClosureBracket {
        lower,
        upper,
        big_e,
        e_max,
        test_element: c.clone(),
        test_element_in_r_circ: status,
        verdict,
        witness,
        closure: report,
    })
}

/// A parameter ideal is generated by `dim R` elements and is `m`-primary
/// modulo `A`.
pub fn is_parameter_ideal(q: &Ideal, spec: &RingSpec) -> Result<bool> {
    let d = spec.dimension().unwrap_or(0);
    let count = q.generators().len();
    Ok(count == d && spec.extend(q)?.dimension() == Some(0))
}

/// Least `e ≤ e_max` with `(q^F)^[p^e] = q^[p^e]` (modulo `A`) for every
/// sample; a sample-based lower estimate of the Frobenius test exponent.
pub fn fte_estimate(spec: &RingSpec, samples: &[Ideal], e_max: u32) -> Result<Option<u32>> {
    for (k, q) in samples.iter().enumerate() {
        if !is_parameter_ideal(q, spec)? {
            return Err(Error::precondition(format!(
                "sample {k} ({q}) is not a parameter ideal"
            )));
        }
    }
    let closures = par::map(samples, |q| frobenius_closure(q, spec, e_max));
    let closures = closures.into_iter().collect::<Result<Vec<_>>>()?;
    'e: for e in 0..=e_max {
        for (q, rep) in samples.iter().zip(closures.iter()) {
            let lhs = spec.extend(&bracket_power(&rep.closure, e)?)?;
            let rhs = spec.extend(&bracket_power(q, e)?)?;
            if lhs != rhs {
                continue 'e;
            }
        }
        return Ok(Some(e));
    }
    Ok(None)
}

/// Candidate test elements, never trusted automatically: `1` for regular
/// models (`A = 0` or `dim R = 0` after reduction), and the nonzero
/// partial derivatives of a hypersurface equation.
pub fn suggest_test_elements(spec: &RingSpec) -> Vec<Poly> {
    let ring = spec.ring();
    if spec.defining().is_zero() || spec.dimension() == Some(0) {
        return vec![Poly::one(ring)];
    }
    let mut out = Vec::new();
    if let [f] = spec.defining().gb() {
        for v in 0..ring.nvars() {
            let d = f.derivative(v);
            if let Ok(r) = spec.defining().reduce(&d) {
                if !r.is_zero() && !out.contains(&r.monic()) {
                    out.push(r.monic());
                }
            }
        }
    }
    out
}
