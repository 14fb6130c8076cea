//! Filter regular sequences, `H^0_m` through saturation, the (LC) constant
//! and the F-nilpotence pipeline.
//!
//! Local cohomology is never formed as a module. `H^0_m(R/I)` is read off
//! as `(I : m^∞)/I`, and Frobenius actions become Frobenius-closure
//! memberships of saturation generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{self, BracketVerdict, TightClosureBracket};
use crate::ideal::{Ideal, STANDARD_MONOMIAL_CAP};
use crate::monomial::Monomial;
use crate::par;
use crate::poly::Poly;
use crate::quotient::{RingSpec, Tri};
use crate::ring::ensure_same;

/// Candidates tried per slot by [`filter_regular_find`] unless overridden.
pub const DEFAULT_BUDGET: usize = 64;

#[derive(Debug, Clone, Serialize)]
pub struct H0Report {
    pub saturation: Ideal,
    pub finite_length_dim: usize,
    pub steps: usize,
}

/// `H^0_m(R/I) ≅ (I + A : m^∞)/(I + A)`.
pub fn h0_quotient(i: &Ideal, spec: &RingSpec) -> Result<H0Report> {
    let base = spec.extend(i)?;
    let sat = base.saturate(&spec.maximal_ideal())?;
    let len = sat.ideal.quotient_length(&base, STANDARD_MONOMIAL_CAP)?;
    Ok(H0Report {
        saturation: sat.ideal,
        finite_length_dim: len,
        steps: sat.steps,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FilterRegularReport {
    pub sequence: Vec<Poly>,
    pub ok: bool,
    /// 1-based position of the first element failing the criterion.
    pub failing_index: Option<usize>,
    /// Each element cuts the dimension by exactly one.
    pub is_sop: bool,
}

fn check_in_m(xs: &[Poly], spec: &RingSpec) -> Result<()> {
    for (k, x) in xs.iter().enumerate() {
        ensure_same(spec.ring(), x.ring())?;
        if x.constant_term() != 0 {
            return Err(Error::precondition(format!(
                "element {} ({x}) is not in the maximal ideal",
                k + 1
            )));
        }
    }
    Ok(())
}

/// `(Q : x)/Q` has finite length, i.e. `Q : x ⊆ Q : m^∞`.
fn filter_regular_step(q: &Ideal, x: &Poly, spec: &RingSpec) -> Result<bool> {
    let colon = q.colon_poly(x)?;
    if q.contains(&colon)? {
        return Ok(true);
    }
    let sat = q.saturate(&spec.maximal_ideal())?;
    sat.ideal.contains(&colon)
}

pub fn filter_regular_check(xs: &[Poly], spec: &RingSpec) -> Result<FilterRegularReport> {
    check_in_m(xs, spec)?;
    let mut q = spec.defining().clone();
    let mut dim = spec.dimension();
    let mut failing = None;
    let mut is_sop = true;
    for (k, x) in xs.iter().enumerate() {
        if failing.is_none() && !filter_regular_step(&q, x, spec)? {
            failing = Some(k + 1);
        }
        q = q.add_polys(std::slice::from_ref(x))?.canonical();
        let next = q.dimension();
        if dim.is_none() || next.is_none() || next.map(|d| d + 1) != dim {
            is_sop = false;
        }
        dim = next;
    }
    Ok(FilterRegularReport {
        sequence: xs.to_vec(),
        ok: failing.is_none(),
        failing_index: failing,
        is_sop,
    })
}

/// Deterministic stream of candidate elements of `m`: single variables
/// (last first), sums of two variables, then seeded random linear forms
/// and finally linear forms perturbed by random quadratic terms.
struct Candidates<'a> {
    spec: &'a RingSpec,
    rng: ChaCha8Rng,
    stage: usize,
    idx: usize,
}

impl<'a> Candidates<'a> {
    fn new(spec: &'a RingSpec, seed: u64) -> Self {
        Self {
            spec,
            rng: ChaCha8Rng::seed_from_u64(seed),
            stage: 0,
            idx: 0,
        }
    }

    fn random_linear(&mut self) -> Poly {
        let ring = self.spec.ring();
        let p = ring.characteristic();
        let n = ring.nvars();
        loop {
            let terms = (0..n)
                .map(|i| (Monomial::var(n, i), self.rng.gen_range(0..p)))
                .collect();
            let f = Poly::from_terms(ring, terms);
            if !f.is_zero() {
                return f;
            }
        }
    }

    fn next(&mut self) -> Poly {
        let ring = self.spec.ring();
        let n = ring.nvars();
        loop {
            match self.stage {
                0 => {
                    if self.idx < n {
                        self.idx += 1;
                        return ring.var(n - self.idx);
                    }
                    self.stage = 1;
                    self.idx = 0;
                }
                1 => {
                    let pairs = n * (n - 1) / 2;
                    if self.idx < pairs {
                        let mut k = self.idx;
                        self.idx += 1;
                        for i in 0..n {
                            let row = n - 1 - i;
                            if k < row {
                                let j = i + 1 + k;
                                return ring.var(i).add_unchecked(&ring.var(j), 1);
                            }
                            k -= row;
                        }
                    }
                    self.stage = 2;
                    self.idx = 0;
                }
                2 => {
                    if self.idx < 16 {
                        self.idx += 1;
                        return self.random_linear();
                    }
                    self.stage = 3;
                }
                _ => {
                    let p = ring.characteristic();
                    let lin = self.random_linear();
                    let mut terms = lin.terms().to_vec();
                    for _ in 0..2 {
                        let i = self.rng.gen_range(0..n);
                        let j = self.rng.gen_range(0..n);
                        let m = Monomial::var(n, i).mul(&Monomial::var(n, j)).expect("degree 2");
                        terms.push((m, self.rng.gen_range(1..p.max(2))));
                    }
                    return Poly::from_terms(ring, terms);
                }
            }
        }
    }
}

/// Greedily builds a filter regular sequence of length `t` that is part
/// of a system of parameters, trying at most `budget` candidates per slot.
pub fn filter_regular_find(spec: &RingSpec, t: usize, budget: usize, seed: u64) -> Result<Option<Vec<Poly>>> {
    let d = spec.dimension().unwrap_or(0);
    if t > d {
        return Err(Error::precondition(format!("t = {t} exceeds dim R = {d}")));
    }
    let mut seq: Vec<Poly> = Vec::new();
    let mut q = spec.defining().clone();
    for slot in 0..t {
        let mut cands = Candidates::new(spec, seed.wrapping_add(slot as u64));
        let mut found = None;
        for _ in 0..budget {
            let x = cands.next();
            let next = q.add_polys(std::slice::from_ref(&x))?.canonical();
            if next.dimension() != Some(d - slot - 1) {
                continue;
            }
            if filter_regular_step(&q, &x, spec)? {
                found = Some((x, next));
                break;
            }
        }
        match found {
            Some((x, next)) => {
                seq.push(x);
                q = next;
            }
            None => return Ok(None),
        }
    }
    Ok(Some(seq))
}

/// Re-runs the checker on `x_1^(n_1), …, x_t^(n_t)`.
pub fn power_sequence_stability_check(xs: &[Poly], spec: &RingSpec, exponents: &[u64]) -> Result<bool> {
    if xs.len() != exponents.len() {
        return Err(Error::precondition("one exponent per element is required"));
    }
    let mut powered = Vec::with_capacity(xs.len());
    for (x, &n) in xs.iter().zip(exponents) {
        if n == 0 {
            return Err(Error::precondition("exponents must be positive"));
        }
        powered.push(x.pow(n)?);
    }
    Ok(filter_regular_check(&powered, spec)?.ok)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelativeVerdict {
    Yes,
    NoUpToCap,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelativeNilpotence {
    pub saturation: Ideal,
    pub verdict: RelativeVerdict,
    /// Largest Frobenius exponent needed by a saturation generator.
    pub exponent: Option<u32>,
    pub witness: Option<Poly>,
    pub cap: u32,
}

/// Decides `(I + A : K^∞) ⊆ I^F` generator by generator, up to `e_max`.
pub fn relative_h0_nilpotence(i: &Ideal, k: &Ideal, spec: &RingSpec, e_max: u32) -> Result<RelativeNilpotence> {
    let base = spec.extend(i)?;
    let sat = base.saturate(k)?.ideal;
    let mut worst = 0u32;
    for g in sat.gb() {
        match frobenius::frobenius_membership(g, i, spec, e_max)? {
            Some(e) => worst = worst.max(e),
            None => {
                return Ok(RelativeNilpotence {
                    saturation: sat.clone(),
                    verdict: RelativeVerdict::NoUpToCap,
                    exponent: None,
                    witness: Some(g.clone()),
                    cap: e_max,
                })
            }
        }
    }
    Ok(RelativeNilpotence {
        saturation: sat,
        verdict: RelativeVerdict::Yes,
        exponent: Some(worst),
        witness: None,
        cap: e_max,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LowerCell {
    pub s: usize,
    pub e: u32,
    pub verdict: RelativeVerdict,
    pub exponent: Option<u32>,
    pub witness: Option<Poly>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LowerReport {
    pub sequence: Vec<Poly>,
    pub t: usize,
    pub e_max: u32,
    pub cells: Vec<LowerCell>,
    pub passes: bool,
}

fn powered_prefix(xs: &[Poly], s: usize, e: u32, spec: &RingSpec) -> Result<Ideal> {
    let mut gens = Vec::with_capacity(s);
    for x in &xs[..s] {
        gens.push(x.frobenius(e)?);
    }
    Ideal::new(spec.ring(), gens)
}

/// `(x_1^q, …, x_s^q) : m^∞ ⊆ (x_1^q, …, x_s^q)^F` for all `s ≤ t` and
/// `q = p^e`, `e ≤ e_max`.
pub fn lower_cohomology_nilpotence(spec: &RingSpec, xs: &[Poly], t: usize, e_max: u32) -> Result<LowerReport> {
    let d = spec.dimension().unwrap_or(0);
    if t >= d {
        return Err(Error::precondition(format!("t = {t} must be below dim R = {d}")));
    }
    if xs.len() < t {
        return Err(Error::precondition(format!("sequence has {} elements, t = {t}", xs.len())));
    }
    let rep = filter_regular_check(&xs[..t], spec)?;
    if let Some(k) = rep.failing_index {
        return Err(Error::precondition(format!("element {k} is not filter regular")));
    }
    if !rep.is_sop {
        return Err(Error::precondition("sequence is not part of a system of parameters"));
    }
    let grid: Vec<(usize, u32)> = (0..=t).flat_map(|s| (0..=e_max).map(move |e| (s, e))).collect();
    let m = spec.maximal_ideal();
    let cells = par::map(&grid, |&(s, e)| -> Result<LowerCell> {
        let ideal = powered_prefix(xs, s, e, spec)?;
        let r = relative_h0_nilpotence(&ideal, &m, spec, e_max)?;
        Ok(LowerCell {
            s,
            e,
            verdict: r.verdict,
            exponent: r.exponent,
            witness: r.witness,
        })
    });
    let cells = cells.into_iter().collect::<Result<Vec<_>>>()?;
    let passes = cells.iter().all(|c| c.verdict == RelativeVerdict::Yes);
    Ok(LowerReport {
        sequence: xs[..t].to_vec(),
        t,
        e_max,
        cells,
        passes,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LcRow {
    pub e: u32,
    pub q: u64,
    pub n: usize,
    pub ratio: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LcReport {
    pub ideal: Ideal,
    pub table: Vec<LcRow>,
    #[serde(rename = "C")]
    pub c: u64,
    /// Set when the table stopped early (exponent overflow).
    pub truncated: Option<String>,
}

/// `N_e = min{N : m^N · (I^[q] + A : m^∞) ⊆ I^[q] + A}` for `e ≤ E`, and
/// `C = max_e ⌈N_e / p^e⌉`.
pub fn lc_constant(i: &Ideal, spec: &RingSpec, big_e: u32, assume_filter_regular: bool) -> Result<LcReport> {
    if !assume_filter_regular {
        let rep = filter_regular_check(i.generators(), spec)?;
        if !rep.ok {
            return Err(Error::precondition(
                "generators do not form a filter regular sequence",
            ));
        }
    }
    let p = spec.characteristic();
    let m = spec.maximal_ideal();
    let mut table = Vec::new();
    let mut truncated = None;
    for e in 0..=big_e {
        let step = (|| -> Result<LcRow> {
            let q = frobenius::power_of_p(p, e)?;
            let k = spec.extend(&frobenius::bracket_power(i, e)?)?;
            let sat = k.saturate(&m)?;
            let n = sat.steps - 1;
            Ok(LcRow {
                e,
                q,
                n,
                ratio: (n as u64).div_ceil(q),
            })
        })();
        match step {
            Ok(row) => table.push(row),
            Err(Error::DegreeOverflow { context }) => {
                truncated = Some(format!("{context} at e = {e}"));
                break;
            }
            Err(other) => return Err(other),
        }
    }
    let c = table.iter().map(|r| r.ratio).max().unwrap_or(0);
    Ok(LcReport {
        ideal: i.canonical(),
        table,
        c,
        truncated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FVerdict {
    PassesAllChecks,
    FailsWithWitness,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Lower,
    Top,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub element: Poly,
    pub stage: Stage,
    pub t: usize,
    pub e: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct TopCell {
    pub e: u32,
    pub bracket: TightClosureBracket,
}

#[derive(Debug, Clone, Serialize)]
pub struct FNilpotenceReport {
    pub dimension: usize,
    pub sequence: Vec<Poly>,
    pub equidimensional: Tri,
    pub reduced: Tri,
    pub test_element: Option<Poly>,
    pub test_element_source: Option<String>,
    pub lower: Option<LowerReport>,
    pub top: Vec<TopCell>,
    pub verdict: FVerdict,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    pub e_max: u32,
    #[serde(rename = "E")]
    pub big_e: u32,
}

/// Runs the two-stage F-nilpotence test:
///
/// 1. `H^i_m(R)` for `i < d` via saturations of a filter regular sop;
/// 2. `q^F = q*` for `q = (x_1^q, …, x_d^q)`, `e ≤ e_max`, in `R/√0`, with
///    tight closure bounded through the test element `c`.
///
/// The second stage needs `R` equidimensional; the first does not.
pub fn f_nilpotent_test(
    spec: &RingSpec,
    c: Option<&Poly>,
    e_max: u32,
    big_e: u32,
    seed: u64,
) -> Result<FNilpotenceReport> {
    let equi = spec.is_equidimensional();
    if equi == Tri::Unknown {
        return Err(Error::precondition(
            "equidimensionality cannot be decided for this ring; assert it explicitly",
        ));
    }
    let reduced = spec.is_reduced();
    let red = spec.reduced_model()?.ok_or_else(|| {
        Error::precondition("nilradical cannot be determined; assert reducedness or supply it")
    })?;
    let d = spec.dimension().unwrap_or(0);
    let mut report = FNilpotenceReport {
        dimension: d,
        sequence: Vec::new(),
        equidimensional: equi,
        reduced,
        test_element: None,
        test_element_source: None,
        lower: None,
        top: Vec::new(),
        verdict: FVerdict::Inconclusive,
        witnesses: Vec::new(),
        notes: Vec::new(),
        e_max,
        big_e,
    };

    let Some(xs) = filter_regular_find(spec, d, DEFAULT_BUDGET, seed)? else {
        report.notes.push("no filter regular system of parameters found within budget".into());
        return Ok(report);
    };
    report.sequence = xs.clone();

    if d >= 1 {
        let lower = lower_cohomology_nilpotence(spec, &xs, d - 1, e_max)?;
        let failed = lower.cells.iter().find(|c| c.verdict == RelativeVerdict::NoUpToCap).cloned();
        report.lower = Some(lower);
        if let Some(cell) = failed {
            report.verdict = FVerdict::FailsWithWitness;
            report.witnesses.push(Witness {
                element: cell.witness.expect("failing cell carries a witness"),
                stage: Stage::Lower,
                t: cell.s,
                e: cell.e,
            });
            return Ok(report);
        }
    }

    if equi == Tri::No {
        report
            .notes
            .push("ring is not equidimensional; the top-dimensional criterion does not apply".into());
        return Ok(report);
    }

    let (c, source) = match c {
        Some(c) => (c.clone(), "user"),
        None => {
            let regular = red.defining().is_zero() || d == 0;
            let suggestion = frobenius::suggest_test_elements(&red).into_iter().next().ok_or_else(|| {
                Error::precondition("no test element known for this ring; supply one")
            })?;
            (suggestion, if regular { "regular" } else { "suggested" })
        }
    };
    report.test_element = Some(c.clone());
    report.test_element_source = Some(source.into());
    if source == "suggested" {
        report.notes.push(format!("test element {c} is a Jacobian suggestion, not a certified test element"));
    }

    let exps: Vec<u32> = (0..=e_max).collect();
    let cells = par::map(&exps, |&e| -> Result<TopCell> {
        let q = powered_prefix(&xs, d, e, &red)?;
        let bracket = frobenius::closure_equality_check(&q, &red, &c, big_e, e_max)?;
        Ok(TopCell { e, bracket })
    });
    report.top = cells.into_iter().collect::<Result<Vec<_>>>()?;

    let mut inconclusive = source == "suggested";
    for cell in &report.top {
        match cell.bracket.verdict {
            BracketVerdict::GapCandidate => {
                report.witnesses.push(Witness {
                    element: cell.bracket.witness.clone().expect("gap carries a witness"),
                    stage: Stage::Top,
                    t: d,
                    e: cell.e,
                });
            }
            BracketVerdict::Inconclusive => inconclusive = true,
            BracketVerdict::EqualCertified => {}
        }
    }
    report.verdict = if !report.witnesses.is_empty() {
        FVerdict::FailsWithWitness
    } else if inconclusive {
        FVerdict::Inconclusive
    } else {
        FVerdict::PassesAllChecks
    };
    Ok(report)
}

/// Generators of `((x_1..x_t) + A) : x_(t+1)^∞` not already in
/// `(x_1..x_t) + A`, reduced modulo it. Under colon capturing these lie in
/// the tight closure of `(x_1..x_t)`.
pub fn colon_capturing_witnesses(xs: &[Poly], t: usize, spec: &RingSpec) -> Result<Vec<Poly>> {
    check_in_m(xs, spec)?;
    let d = spec.dimension().unwrap_or(0);
    if t >= d {
        return Err(Error::precondition(format!("t = {t} must be below dim R = {d}")));
    }
    if xs.len() <= t {
        return Err(Error::precondition("sequence must have at least t + 1 elements"));
    }
    let q = spec.extend(&Ideal::new(spec.ring(), xs[..t].to_vec())?)?;
    let sat = q.saturate_poly(&xs[t])?;
    let mut out = Vec::new();
    for g in sat.gb() {
        let r = q.reduce(g)?;
        if !r.is_zero() {
            out.push(r.monic());
        }
    }
    Ok(out)
}
