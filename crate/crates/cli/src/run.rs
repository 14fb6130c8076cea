use frobnil_core::cohomology::{self, FVerdict, RelativeVerdict};
use frobnil_core::dsl::{parse_ideal, parse_poly, parse_poly_list, parse_ring, print_ring};
use frobnil_core::frobenius::{self, BracketVerdict, Certification};
use frobnil_core::oracle::{self, ArtinianModel};
use frobnil_core::{Error, Ideal, MonomialOrder, Poly, RingSpec, Tri};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::{Command, Global};
use crate::report::{ErrorInfo, Report, Status};

/// Everything a command needs, parsed and validated before any
/// computation starts.
struct Session {
    spec: RingSpec,
    emax: u32,
    opts: Global,
}

impl Session {
    fn ideal(&self, text: &str) -> Result<Ideal, Error> {
        parse_ideal(self.spec.ring(), text)
    }

    fn poly(&self, text: &str) -> Result<Poly, Error> {
        parse_poly(self.spec.ring(), text)
    }

    fn sequence(&self, text: &str) -> Result<Vec<Poly>, Error> {
        let t = text.trim();
        let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
        parse_poly_list(self.spec.ring(), inner)
    }

    fn test_element(&self) -> Result<Option<Poly>, Error> {
        self.opts.test_element.as_deref().map(|t| self.poly(t)).transpose()
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("engine reports serialize")
}

/// Reduced Gröbner basis elements of `j` outside `A`; together with `A`
/// they generate `j`.
fn generators_mod_a(spec: &RingSpec, j: &Ideal) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    for g in j.gb() {
        if !spec.defining().contains_poly(g)? {
            out.push(g.to_string());
        }
    }
    Ok(out)
}

fn put_ideal(r: &mut Report, spec: &RingSpec, j: &Ideal) -> Result<(), Error> {
    r.result.insert("generators".into(), json!(generators_mod_a(spec, j)?));
    r.result.insert("gb".into(), to_value(j));
    Ok(())
}

pub fn execute_command(cmd: &Command, opts: &Global) -> Report {
    let name = cmd.name();
    let order = if opts.lex {
        MonomialOrder::Lex
    } else {
        MonomialOrder::Grevlex
    };
    let spec = match build_spec(cmd.ring(), order, opts) {
        Ok(s) => s,
        Err(e) => return Report::new(name, cmd.ring().to_string()).failed(ErrorInfo::from_engine(&e)),
    };
    let ring = print_ring(&spec);
    let session = Session {
        emax: opts.emax.unwrap_or_else(|| spec.default_emax()),
        spec,
        opts: opts.clone(),
    };
    let mut report = Report::new(name, ring);
    match dispatch(cmd, &session, &mut report) {
        Ok(()) => report,
        Err(e) => report.failed(ErrorInfo::from_engine(&e)),
    }
}

fn build_spec(text: &str, order: MonomialOrder, opts: &Global) -> Result<RingSpec, Error> {
    let mut spec = parse_ring(text, order)?
        .assume_equidimensional(opts.assume_equidimensional)
        .assume_reduced(opts.assume_reduced);
    if let Some(nil) = &opts.nilradical {
        let nil = parse_ideal(spec.ring(), nil)?;
        spec = spec.with_nilradical(nil)?;
    }
    Ok(spec)
}

fn dispatch(cmd: &Command, s: &Session, r: &mut Report) -> Result<(), Error> {
    let spec = &s.spec;
    let emax = s.emax;
    let big_e = s.opts.big_e;
    match cmd {
        Command::Gb(a) => {
            let i = s.ideal(&a.ideal)?;
            r.inputs.insert("ideal".into(), json!(a.ideal));
            put_ideal(r, spec, &spec.extend(&i)?)?;
        }
        Command::Dim { ideal, .. } => {
            let target = match ideal {
                Some(text) => {
                    r.inputs.insert("ideal".into(), json!(text));
                    spec.extend(&s.ideal(text)?)?
                }
                None => spec.defining().clone(),
            };
            r.result.insert("dimension".into(), json!(target.dimension()));
            r.result.insert("equidimensional".into(), to_value(&spec.is_equidimensional()));
            r.result.insert("reduced".into(), to_value(&spec.is_reduced()));
            r.result.insert("homogeneous".into(), json!(spec.is_homogeneous()));
            put_ideal(r, spec, &target)?;
        }
        Command::Member { ideal, poly } => {
            let i = spec.extend(&s.ideal(&ideal.ideal)?)?;
            let f = s.poly(poly)?;
            r.inputs.insert("ideal".into(), json!(ideal.ideal));
            r.inputs.insert("poly".into(), json!(poly));
            let nf = i.reduce(&f)?;
            r.result.insert("member".into(), json!(nf.is_zero()));
            r.result.insert("normal_form".into(), json!(nf.to_string()));
            put_ideal(r, spec, &i)?;
        }
        Command::Colon { ideal, by } => {
            let i = spec.extend(&s.ideal(&ideal.ideal)?)?;
            let j = s.ideal(by)?;
            r.inputs.insert("ideal".into(), json!(ideal.ideal));
            r.inputs.insert("by".into(), json!(by));
            put_ideal(r, spec, &i.colon(&j)?)?;
        }
        Command::Sat { ideal, by } => {
            let i = spec.extend(&s.ideal(&ideal.ideal)?)?;
            let j = match by {
                Some(t) => s.ideal(t)?,
                None => spec.maximal_ideal(),
            };
            r.inputs.insert("ideal".into(), json!(ideal.ideal));
            r.inputs.insert("by".into(), json!(by.clone().unwrap_or_else(|| "m".into())));
            let sat = i.saturate(&j)?;
            put_ideal(r, spec, &sat.ideal)?;
            r.result.insert("steps".into(), json!(sat.steps));
        }
        Command::Bpow { ideal, e } => {
            let i = s.ideal(&ideal.ideal)?;
            r.inputs.insert("ideal".into(), json!(ideal.ideal));
            r.inputs.insert("e".into(), json!(e));
            put_ideal(r, spec, &spec.extend(&frobenius::bracket_power(&i, *e)?)?)?;
        }
        Command::Froot { ideal, e, minimal } => {
            let k = spec.extend(&s.ideal(&ideal.ideal)?)?;
            r.inputs.insert("ideal".into(), json!(ideal.ideal));
            r.inputs.insert("e".into(), json!(e));
            r.inputs.insert("minimal".into(), json!(minimal));
            let root = if *minimal {
                frobenius::minimal_frobenius_root(&k, *e)?
            } else {
                frobenius::frobenius_root(&k, *e)?
            };
            put_ideal(r, spec, &root)?;
            if s.opts.verify_with_oracle {
                let check = match (minimal, k.gb()) {
                    (true, [f]) => {
                        let o = oracle::minimal_root_oracle(f, *e, 2)?;
                        json!({"applicable": true, "agrees": o == root})
                    }
                    _ => json!({"applicable": false}),
                };
                r.result.insert("oracle".into(), check);
            }
        }
        Command::Fclosure(a) => {
            let i = s.ideal(&a.ideal)?;
            r.inputs.insert("ideal".into(), json!(a.ideal));
            r.cap.insert("emax".into(), json!(emax));
            let rep = frobenius::frobenius_closure(&i, spec, emax)?;
            put_ideal(r, spec, &rep.closure)?;
            r.result.insert("stabilization_exponent".into(), json!(rep.stabilization_exponent));
            r.result.insert("nilpotence_exponent".into(), json!(rep.nilpotence_exponent));
            r.result.insert("certified".into(), to_value(&rep.certified));
            r.result.insert("chain".into(), to_value(&rep.chain));
            r.status = match rep.certified {
                Certification::Stabilized => Status::Certified,
                Certification::CapReached => Status::CapReached,
            };
            if s.opts.verify_with_oracle {
                let check = if spec.dimension() == Some(0) {
                    let model = ArtinianModel::new(spec)?;
                    let set = oracle::enumerate_frobenius_closure(&i, &model, emax)?;
                    json!({"applicable": true, "agrees": oracle::matches_ideal(&model, &set, &rep.closure)?})
                } else {
                    json!({"applicable": false})
                };
                r.result.insert("oracle".into(), check);
            }
        }
        Command::Fmember { ideal, poly } => {
            let i = s.ideal(&ideal.ideal)?;
            let f = s.poly(poly)?;
            r.inputs.insert("ideal".into(), json!(ideal.ideal));
            r.inputs.insert("poly".into(), json!(poly));
            r.cap.insert("emax".into(), json!(emax));
            let e = frobenius::frobenius_membership(&f, &i, spec, emax)?;
            r.result.insert("exponent".into(), json!(e));
            r.status = if e.is_some() {
                Status::Certified
            } else {
                Status::CapReached
            };
        }
        Command::Tcupper(a) => {
            let i = s.ideal(&a.ideal)?;
            let (c, source) = choose_test_element(s)?;
            r.inputs.insert("ideal".into(), json!(a.ideal));
            r.inputs.insert("test_element".into(), json!(c.to_string()));
            r.cap.insert("bigE".into(), json!(big_e));
            let up = frobenius::tight_closure_upper(&i, spec, &c, big_e)?;
            put_ideal(r, spec, &up)?;
            r.result.insert("bound".into(), json!("upper"));
            r.result.insert("test_element_source".into(), json!(source));
        }
        Command::Ceq(a) => {
            let i = s.ideal(&a.ideal)?;
            let (c, source) = choose_test_element(s)?;
            r.inputs.insert("ideal".into(), json!(a.ideal));
            r.inputs.insert("test_element".into(), json!(c.to_string()));
            r.cap.insert("emax".into(), json!(emax));
            r.cap.insert("bigE".into(), json!(big_e));
            let br = frobenius::closure_equality_check(&i, spec, &c, big_e, emax)?;
            put_ideal(r, spec, &br.upper)?;
            r.result.insert("lower".into(), to_value(&br.lower));
            r.result.insert("upper".into(), to_value(&br.upper));
            r.result.insert("verdict".into(), to_value(&br.verdict));
            r.result.insert("test_element_in_r_circ".into(), to_value(&br.test_element_in_r_circ));
            r.result.insert("test_element_source".into(), json!(source));
            r.status = match br.verdict {
                BracketVerdict::EqualCertified => Status::Certified,
                BracketVerdict::GapCandidate => Status::Witness,
                BracketVerdict::Inconclusive => Status::CapReached,
            };
            if let Some(w) = &br.witness {
                r.witnesses.push(json!({"element": w.to_string(), "kind": "gap-candidate"}));
            }
        }
        Command::FilterregCheck { sequence, .. } => {
            let xs = s.sequence(sequence)?;
            r.inputs.insert("sequence".into(), json!(sequence));
            let rep = cohomology::filter_regular_check(&xs, spec)?;
            r.result.insert("sequence".into(), to_value(&rep.sequence));
            r.result.insert("ok".into(), json!(rep.ok));
            r.result.insert("failing_index".into(), json!(rep.failing_index));
            r.result.insert("is_sop".into(), json!(rep.is_sop));
        }
        Command::FilterregFind { t, .. } => {
            let t = t.unwrap_or_else(|| spec.dimension().unwrap_or(0));
            r.inputs.insert("t".into(), json!(t));
            r.cap.insert("budget".into(), json!(s.opts.budget));
            r.cap.insert("seed".into(), json!(s.opts.seed));
            let found = cohomology::filter_regular_find(spec, t, s.opts.budget, s.opts.seed)?;
            r.status = if found.is_some() {
                Status::Certified
            } else {
                Status::CapReached
            };
            r.result.insert("sequence".into(), to_value(&found));
        }
        Command::H0(a) => {
            let i = s.ideal(&a.ideal)?;
            r.inputs.insert("ideal".into(), json!(a.ideal));
            let rep = cohomology::h0_quotient(&i, spec)?;
            put_ideal(r, spec, &rep.saturation)?;
            r.result.insert("finite_length_dim".into(), json!(rep.finite_length_dim));
            r.result.insert("steps".into(), json!(rep.steps));
        }
        Command::Relnil { ideal, by } => {
            let i = s.ideal(&ideal.ideal)?;
            let k = match by {
                Some(t) => s.ideal(t)?,
                None => spec.maximal_ideal(),
            };
            r.inputs.insert("ideal".into(), json!(ideal.ideal));
            r.inputs.insert("by".into(), json!(by.clone().unwrap_or_else(|| "m".into())));
            r.cap.insert("emax".into(), json!(emax));
            let rep = cohomology::relative_h0_nilpotence(&i, &k, spec, emax)?;
            put_ideal(r, spec, &rep.saturation)?;
            r.result.insert("verdict".into(), to_value(&rep.verdict));
            r.result.insert("exponent".into(), json!(rep.exponent));
            r.status = match rep.verdict {
                RelativeVerdict::Yes => Status::Certified,
                RelativeVerdict::NoUpToCap => Status::Witness,
            };
            if let Some(w) = &rep.witness {
                r.witnesses.push(json!({"element": w.to_string(), "kind": "not-in-closure"}));
            }
        }
        Command::Lcconst {
            ideal,
            assume_filter_regular,
        } => {
            let i = s.ideal(&ideal.ideal)?;
            r.inputs.insert("ideal".into(), json!(ideal.ideal));
            r.cap.insert("bigE".into(), json!(big_e));
            let rep = cohomology::lc_constant(&i, spec, big_e, *assume_filter_regular)?;
            r.result.insert("table".into(), to_value(&rep.table));
            r.result.insert("C".into(), json!(rep.c));
            r.result.insert("truncated".into(), json!(rep.truncated));
            if rep.truncated.is_some() {
                r.status = Status::CapReached;
            }
        }
        Command::Fnilpotent { .. } => {
            let c = s.test_element()?;
            if let Some(c) = &c {
                r.inputs.insert("test_element".into(), json!(c.to_string()));
            }
            r.cap.insert("emax".into(), json!(emax));
            r.cap.insert("bigE".into(), json!(big_e));
            r.cap.insert("seed".into(), json!(s.opts.seed));
            let rep = cohomology::f_nilpotent_test(spec, c.as_ref(), emax, big_e, s.opts.seed)?;
            let mut full = match to_value(&rep) {
                Value::Object(m) => m,
                _ => Map::new(),
            };
            full.remove("witnesses");
            r.result = full;
            r.status = match rep.verdict {
                FVerdict::PassesAllChecks => Status::Certified,
                FVerdict::FailsWithWitness => Status::Witness,
                FVerdict::Inconclusive => Status::CapReached,
            };
            r.witnesses = rep.witnesses.iter().map(to_value).collect();
            if s.opts.verify_with_oracle {
                let check = if spec.dimension() == Some(0) {
                    let model = ArtinianModel::new(spec)?;
                    let nil = oracle::enumerate_nilradical(&model)?;
                    let zero = Ideal::zero(spec.ring());
                    let cl = frobenius::frobenius_closure(&zero, spec, emax)?;
                    json!({"applicable": true, "agrees": oracle::matches_ideal(&model, &nil, &cl.closure)?})
                } else {
                    json!({"applicable": false})
                };
                r.result.insert("oracle".into(), check);
            }
        }
        Command::Fte { ideals, .. } => {
            let samples = ideals.iter().map(|t| s.ideal(t)).collect::<Result<Vec<_>, _>>()?;
            r.inputs.insert("ideals".into(), json!(ideals));
            r.cap.insert("emax".into(), json!(emax));
            let e = frobenius::fte_estimate(spec, &samples, emax)?;
            r.result.insert("estimate".into(), json!(e));
            r.result.insert("kind".into(), json!("sample lower estimate"));
            r.status = if e.is_some() {
                Status::Certified
            } else {
                Status::CapReached
            };
        }
        Command::Witnesses { sequence, t, .. } => {
            let xs = s.sequence(sequence)?;
            r.inputs.insert("sequence".into(), json!(sequence));
            r.inputs.insert("t".into(), json!(t));
            let ws = cohomology::colon_capturing_witnesses(&xs, *t, spec)?;
            r.result.insert("candidates".into(), to_value(&ws));
            r.witnesses = ws
                .iter()
                .map(|w| json!({"element": w.to_string(), "kind": "colon-capturing"}))
                .collect();
        }
    }
    Ok(())
}

fn choose_test_element(s: &Session) -> Result<(Poly, &'static str), Error> {
    if let Some(c) = s.test_element()? {
        return Ok((c, "user"));
    }
    let spec = &s.spec;
    let regular = spec.defining().is_zero() || (spec.dimension() == Some(0) && spec.is_reduced() == Tri::Yes);
    let c = frobenius::suggest_test_elements(spec)
        .into_iter()
        .find(|c| matches!(spec.in_r_circ(c), Ok(Tri::Yes)))
        .ok_or_else(|| Error::Precondition("no test element known for this ring; pass --test-element".into()))?;
    Ok((c, if regular { "regular" } else { "suggested" }))
}
