//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use frobnil_cli::execute;
use frobnil_core::cohomology::{f_nilpotent_test, lc_constant, FVerdict};
use frobnil_core::dsl::{parse_ideal, parse_poly, parse_ring};
use frobnil_core::frobenius::{frobenius_closure, frobenius_root};
use frobnil_core::oracle::{
    enumerate_frobenius_closure, enumerate_nilradical, matches_ideal, multiplier_search, random_fixture,
    ArtinianModel,
};
use frobnil_core::par::{self, Mode};
use frobnil_core::{Ideal, Monomial, MonomialOrder, Poly, RingRef, RingSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const T_RING: &str = "F2[T1,T2,T3]/(T1^2*T2,T1^2*T3)";
const FERMAT: &str = "F7[x,y,z]/(x^3+y^3+z^3)";

/// Outcome of one criterion: verdict, explanation and every JSON report
/// produced along the way.
struct Outcome {
    ok: bool,
    detail: String,
    reports: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            ok: true,
            detail: String::new(),
            reports: Vec::new(),
        }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str(&what.into());
        }
    }

    fn cli(&mut self, args: &[&str]) -> Value {
        let mut argv = vec!["frobnil"];
        argv.extend_from_slice(args);
        argv.push("--json");
        let out = execute(argv);
        self.reports.push(out.stdout.clone());
        serde_json::from_str(&out.stdout).expect("cli emits JSON")
    }

    fn record(&mut self, v: Value) {
        self.reports.push(serde_json::to_string(&v).expect("serializable"));
    }
}

fn ring(text: &str) -> RingSpec {
    parse_ring(text, MonomialOrder::Grevlex).unwrap()
}

fn poly(s: &RingSpec, text: &str) -> Poly {
    parse_poly(s.ring(), text).unwrap()
}

fn random_poly(r: &RingRef, rng: &mut ChaCha8Rng, max_deg: u64, max_terms: usize, in_m: bool) -> Poly {
    let n = r.nvars();
    let p = r.characteristic();
    let lo = if in_m { 1 } else { 0 };
    let terms = (0..rng.gen_range(1..=max_terms))
        .map(|_| {
            let deg = rng.gen_range(lo..=max_deg);
            let mut e = vec![0u64; n];
            for _ in 0..deg {
                e[rng.gen_range(0..n)] += 1;
            }
            (Monomial::from_exponents(&e).unwrap(), rng.gen_range(1..p))
        })
        .collect();
    Poly::from_terms(r, terms)
}

fn c1_saturation() -> Outcome {
    let mut o = Outcome::new();
    let sat = o.cli(&["sat", "--ring", T_RING, "--ideal", "(T1+T2)"]);
    let want = o.cli(&["gb", "--ring", T_RING, "--ideal", "(T1+T2, T1^2)"]);
    o.check(sat["status"] == "certified", "saturation not certified");
    o.check(sat["result"]["gb"] == want["result"]["gb"], format!("got {}", sat["result"]["gb"]));
    o
}

fn c2_closure_entry() -> Outcome {
    let mut o = Outcome::new();
    for p in [2u64, 3] {
        let r = T_RING.replacen("F2", &format!("F{p}"), 1);
        let fm = o.cli(&["fmember", "--ring", &r, "--ideal", "(T1+T2)", "--poly", "T1^2", "--emax", "3"]);
        o.check(fm["result"]["exponent"] == 1, format!("p={p}: exponent {}", fm["result"]["exponent"]));
        let bracket = format!("(T1^{p}+T2^{p})");
        let power = format!("T1^{}", 2 * p);
        let mem = o.cli(&["member", "--ring", &r, "--ideal", &bracket, "--poly", &power]);
        o.check(mem["result"]["member"] == true, format!("p={p}: {power} not in {bracket}+A"));
    }
    o
}

fn c3_failure_witness() -> Outcome {
    let mut o = Outcome::new();
    let rel = o.cli(&["relnil", "--ring", T_RING, "--ideal", "(T1^2+T2^2)", "--emax", "3"]);
    o.check(rel["result"]["verdict"] == "no-up-to-cap", format!("verdict {}", rel["result"]["verdict"]));
    o.check(rel["witnesses"][0]["element"] == "T1^2", format!("witness {}", rel["witnesses"]));
    let fnil = o.cli(&["fnilpotent", "--ring", T_RING, "--test-element", "T1+T2+T3", "--emax", "3"]);
    o.check(fnil["result"]["verdict"] == "fails-with-witness", format!("verdict {}", fnil["result"]["verdict"]));
    let w = &fnil["witnesses"][0];
    o.check(w["t"] == 1 && w["element"] == "T1^2", format!("witness {w}"));
    o
}

fn c4_regular_rings() -> Outcome {
    let mut o = Outcome::new();
    for r in ["F3[x,y]", "F2[x,y,z]"] {
        let v = o.cli(&["fnilpotent", "--ring", r, "--emax", "2", "--bigE", "2"]);
        o.check(v["result"]["verdict"] == "passes-all-checks", format!("{r}: {}", v["result"]["verdict"]));
    }
    let s = ring("F3[x,y]");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut closed = 0;
    let mut rows = Vec::new();
    for _ in 0..100 {
        let gens = (0..rng.gen_range(1..=3))
            .map(|_| random_poly(s.ring(), &mut rng, 3, 3, false))
            .collect();
        let i = Ideal::new(s.ring(), gens).unwrap();
        let rep = frobenius_closure(&i, &s, 2).unwrap();
        if rep.closure == i.canonical() {
            closed += 1;
        }
        rows.push(json!({"ideal": i, "closure": rep.closure}));
    }
    o.check(closed == 100, format!("{closed}/100 ideals Frobenius closed"));
    o.record(Value::Array(rows));
    o
}

fn c5_fermat_gap() -> Outcome {
    let mut o = Outcome::new();
    let s = ring(FERMAT);
    let i = parse_ideal(s.ring(), "(y, z)").unwrap();
    let x2 = poly(&s, "x^2");
    let c = multiplier_search(&x2, &i, &s, 3, &[1, 2]).unwrap();
    o.check(c.as_ref().is_some_and(|c| c.degree().unwrap_or(0) <= 3), "no multiplier of degree <= 3");
    o.record(json!({"multiplier": c}));
    let fm = o.cli(&["fmember", "--ring", FERMAT, "--ideal", "(y,z)", "--poly", "x^2", "--emax", "2"]);
    o.check(fm["result"]["exponent"].is_null(), format!("x^2 in closure at {}", fm["result"]["exponent"]));
    let ceq = o.cli(&["ceq", "--ring", FERMAT, "--ideal", "(y,z)", "--emax", "2", "--bigE", "2"]);
    o.check(ceq["result"]["verdict"] == "gap-candidate", format!("verdict {}", ceq["result"]["verdict"]));
    o.check(ceq["witnesses"][0]["element"] == "x^2", format!("witness {}", ceq["witnesses"]));
    o
}

fn c6_root_adjunction() -> Outcome {
    let mut o = Outcome::new();
    let s = ring("F2[x,y,z]");
    let r = s.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut agree, mut members) = (0, 0);
    let mut rows = Vec::new();
    for k in 0..200 {
        let mut gens: Vec<Poly> = (0..rng.gen_range(1..=3)).map(|_| random_poly(r, &mut rng, 4, 3, false)).collect();
        let f = if k % 2 == 0 {
            // half the pairs are built so that f^2 lies in K
            let f = random_poly(r, &mut rng, 2, 2, false);
            let h = random_poly(r, &mut rng, 2, 2, false);
            gens[0] = f.pow(2).unwrap().try_add(&gens[gens.len() - 1].try_mul(&h).unwrap()).unwrap();
            f
        } else {
            random_poly(r, &mut rng, 4, 3, false)
        };
        let kk = Ideal::new(r, gens).unwrap();
        let root = frobenius_root(&kk, 1).unwrap();
        let lhs = root.contains_poly(&f).unwrap();
        let rhs = kk.contains_poly(&f.pow(2).unwrap()).unwrap();
        agree += (lhs == rhs) as usize;
        members += rhs as usize;
        rows.push(json!([f, kk, root, lhs]));
    }
    o.check(agree == 200, format!("{agree}/200 pairs satisfy the adjunction"));
    o.check(members > 0 && members < 200, format!("degenerate sample: {members} members"));
    o.record(Value::Array(rows));
    o
}

fn c7_oracle_equivalence() -> Outcome {
    let mut o = Outcome::new();
    let mut agree = 0;
    let mut rows = Vec::new();
    for seed in 0..50 {
        let fx = random_fixture(2, 7000 + seed, 16).unwrap();
        let model = ArtinianModel::new(&fx.spec).unwrap();
        let rep = frobenius_closure(&fx.ideal, &fx.spec, 4).unwrap();
        let set = enumerate_frobenius_closure(&fx.ideal, &model, 4).unwrap();
        let ok = matches_ideal(&model, &set, &rep.closure).unwrap();
        agree += ok as usize;
        if !ok {
            o.check(false, format!("seed {seed}: {} with I = {}", fx.spec.describe(), fx.ideal));
        }
        rows.push(json!({"ring": fx.spec.describe(), "ideal": fx.ideal, "closure": rep.closure, "elements": set.len()}));
    }
    o.check(agree == 50, format!("{agree}/50 fixtures agree"));
    o.record(Value::Array(rows));
    o
}

fn c8_lc_flatness() -> Outcome {
    let mut o = Outcome::new();
    let v = o.cli(&["lcconst", "--ring", T_RING, "--ideal", "(T1+T2)", "--bigE", "3"]);
    let ratios: Vec<u64> = v["result"]["table"]
        .as_array()
        .map(|t| t.iter().filter_map(|r| r["ratio"].as_u64()).collect())
        .unwrap_or_default();
    o.check(ratios.len() == 4, format!("table has {} rows", ratios.len()));
    if ratios.len() == 4 {
        let earlier = ratios[..3].iter().copied().max().unwrap();
        o.check(ratios[3] <= earlier, format!("ceil ratios {ratios:?} grow at e = 3"));
    }
    // the same computation straight from the library
    let s = ring(T_RING);
    let rep = lc_constant(&parse_ideal(s.ring(), "(T1+T2)").unwrap(), &s, 3, false).unwrap();
    o.check(
        rep.table.iter().all(|r| r.n as u64 <= rep.c * r.q),
        "N_e exceeds C p^e",
    );
    o
}

fn c9_dimension_zero() -> Outcome {
    let mut o = Outcome::new();
    let mut rows = Vec::new();
    for seed in 0..20 {
        let fx = random_fixture(2, 9000 + seed, 16).unwrap();
        let model = ArtinianModel::new(&fx.spec).unwrap();
        let zero = Ideal::zero(fx.spec.ring());
        let cl = frobenius_closure(&zero, &fx.spec, 4).unwrap();
        let nil = enumerate_nilradical(&model).unwrap();
        let ok = matches_ideal(&model, &nil, &cl.closure).unwrap();
        o.check(ok, format!("seed {seed}: 0^F differs from the nilradical"));
        let rep = f_nilpotent_test(&fx.spec, None, 2, 2, seed).unwrap();
        o.check(
            rep.verdict == FVerdict::PassesAllChecks,
            format!("seed {seed}: {} gives {:?}", fx.spec.describe(), rep.verdict),
        );
        rows.push(json!({"ring": fx.spec.describe(), "closure": cl.closure, "report": rep}));
    }
    o.record(Value::Array(rows));
    o
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "T-ring saturation", Duration::from_secs(1), c1_saturation),
        (2, "T-ring closure entry", Duration::from_secs(1), c2_closure_entry),
        (3, "T-ring failure witness", Duration::from_secs(30), c3_failure_witness),
        (4, "regular-ring sanity", Duration::from_secs(120), c4_regular_rings),
        (5, "Fermat-cubic gap", Duration::from_secs(300), c5_fermat_gap),
        (6, "Frobenius-root adjunction", Duration::from_secs(60), c6_root_adjunction),
        (7, "oracle equivalence", Duration::from_secs(300), c7_oracle_equivalence),
        (8, "LC flatness", Duration::from_secs(120), c8_lc_flatness),
        (9, "dimension-0 rings", Duration::from_secs(60), c9_dimension_zero),
    ];
    let mut all_ok = true;
    let mut first_reports = Vec::new();
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let mut out = run();
        let elapsed = start.elapsed();
        if elapsed > budget {
            out.check(false, format!("took {elapsed:.2?}, budget {budget:?}"));
        }
        all_ok &= out.ok;
        let verdict = if out.ok { "PASS" } else { "FAIL" };
        let detail = if out.detail.is_empty() { String::new() } else { format!(" ({})", out.detail) };
        println!("criterion {id:>2} [{name}]: {verdict} in {elapsed:.2?}{detail}");
        first_reports.push(out.reports);
    }

    // criterion 10: identical seeds give byte-identical reports, in both modes
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for mode in [Mode::Parallel, Mode::Sequential] {
        par::set_mode(mode);
        for ((id, _, _, run), first) in criteria.iter().zip(&first_reports) {
            if run().reports != *first {
                mismatches.push(format!("{id} ({mode:?})"));
            }
        }
    }
    par::set_mode(Mode::Parallel);
    let ok = mismatches.is_empty();
    all_ok &= ok;
    let detail = if ok { String::new() } else { format!(" (differs: {})", mismatches.join(", ")) };
    println!(
        "criterion 10 [determinism]: {} in {:.2?}{detail}",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed()
    );
    if !all_ok {
        std::process::exit(1);
    }
}
