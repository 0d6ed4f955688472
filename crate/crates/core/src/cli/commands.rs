use serde_json::{json, Value};

use super::format::{coherent_of, Base, Instance, Object};
use crate::error::{Error, Result};
use crate::functors::{
    flat_cover, l_xi, pullback, pushforward, stabilize, support_cat, support_set, upsilon, xi, ModuleComplex,
};
use crate::homalg::{free_resolution, is_perfect, Ideal, NonPerfectCertificate, Perfectness, PresentedModule};
use crate::matrix::Matrix;
use crate::mf::{contracting_homotopy, hom_cohomology, CoherentFactorization, MFMorphism, MatrixFactorization};
use crate::singcat::{relative_perfect_certificate, verify_main_equivalence, verify_periodicity, Evidence, RelativePerfectness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Contractible,
    Homotopy,
    Cone,
    Shift,
    Dual,
    Dsum,
    Hom,
    Xi,
    Lxi,
    Upsilon,
    Flatcover,
    Stabilize,
    Pullback,
    Pushforward,
    Support,
    Suppcat,
    Resolve,
    Perfect,
    VerifyEquivalence,
    VerifyPeriodicity,
    RelativePerfect,
}

impl Command {
    pub fn name(self) -> String {
        clap::ValueEnum::to_possible_value(&self).expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_degree: u32,
    pub max_syzygy: usize,
    pub max_resolution: usize,
    pub steps: usize,
    pub depth: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 40, max_syzygy: 8, max_resolution: 12, steps: 3, depth: 3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Negative,
    InputError,
    Exhausted,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::InputError => 2,
            Status::Exhausted => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Negative => "negative",
            Status::InputError => "input-error",
            Status::Exhausted => "exhausted",
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::Exhausted(_) => Status::Exhausted,
            _ => Status::InputError,
        }
    }
}

/// What a command produced: a verdict, a JSON summary and the emitted
/// objects as an instance in canonical form.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub emitted: Option<Instance>,
}

impl Outcome {
    fn ok(result: Value, emitted: Instance) -> Self {
        Outcome { status: Status::Ok, result, emitted: Some(emitted) }
    }

    fn verdict(status: Status, result: Value, emitted: Option<Instance>) -> Self {
        Outcome { status, result, emitted }
    }
}

fn arity(names: &[String], n: usize, usage: &str) -> Result<()> {
    if names.len() == n {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("expected {usage}")))
    }
}

/// A valid matrix factorization over `R` (or over an extension).
fn factorization<'a>(inst: &'a Instance, name: &str) -> Result<(&'a MatrixFactorization, Option<&'a String>)> {
    match inst.get(name)? {
        Object::Factorization { mf, over } => {
            if let Some(v) = mf.validate() {
                return Err(Error::InvalidInput(format!("`{name}` is not a matrix factorization: {v}")));
            }
            Ok((mf, over.as_ref()))
        }
        o => Err(Error::InvalidInput(format!("`{name}` is a {}, expected a factorization", o.kind()))),
    }
}

fn plain_factorization<'a>(inst: &'a Instance, name: &str) -> Result<&'a MatrixFactorization> {
    match factorization(inst, name)? {
        (mf, None) => Ok(mf),
        (_, Some(e)) => Err(Error::InvalidInput(format!("`{name}` lives over the extension `{e}`"))),
    }
}

fn valid_coherent(inst: &Instance, name: &str) -> Result<CoherentFactorization> {
    let c = coherent_of(inst, name)?;
    if let Some(v) = c.validate()? {
        return Err(Error::InvalidInput(format!("`{name}` is not a factorization: {v}")));
    }
    Ok(c)
}

fn module<'a>(inst: &'a Instance, name: &str, want: Option<Base>) -> Result<(&'a PresentedModule, Base)> {
    match inst.get(name)? {
        Object::Module { module, base } if want.is_none_or(|b| b == *base) => Ok((module, *base)),
        o => Err(Error::InvalidInput(format!(
            "`{name}` is a {}, expected a module{}",
            o.kind(),
            match want {
                Some(Base::R) => " over R",
                Some(Base::S) => " over S",
                None => "",
            }
        ))),
    }
}

fn morphism<'a>(inst: &'a Instance, name: &str) -> Result<(&'a MFMorphism, &'a str, &'a str)> {
    match inst.get(name)? {
        Object::Morphism { morphism, source, target } => Ok((morphism, source, target)),
        o => Err(Error::InvalidInput(format!("`{name}` is a {}, expected a morphism", o.kind()))),
    }
}

/// Free components are written as a factorization, others as coherent.
fn factorization_object(c: &CoherentFactorization) -> Object {
    match c.as_matrix_factorization() {
        Some(mf) => Object::Factorization { mf, over: None },
        None => Object::Coherent(c.clone()),
    }
}

/// Copies `name` and everything it refers to into `out`, once.
fn carry(inst: &Instance, out: &mut Instance, name: &str) -> Result<()> {
    if out.objects.iter().any(|(n, _)| n == name) {
        return Ok(());
    }
    let obj = inst.get(name)?.clone();
    match &obj {
        Object::Factorization { over: Some(e), .. } => carry(inst, out, e)?,
        Object::Complex { terms, .. } => {
            for t in terms {
                carry(inst, out, t)?;
            }
        }
        Object::Morphism { source, target, .. } => {
            carry(inst, out, source)?;
            carry(inst, out, target)?;
        }
        _ => {}
    }
    out.push(name, obj)
}

fn ideal_module(ideal: &Ideal) -> Result<PresentedModule> {
    Ok(PresentedModule::cyclic(ideal.ring(), ideal.gens()))
}

fn strings(ms: &[Matrix]) -> Value {
    Value::from(ms.iter().map(|m| m.to_string()).collect::<Vec<_>>())
}

pub fn run(cmd: Command, inst: &Instance, names: &[String], limits: &Limits) -> Result<Outcome> {
    let p = &inst.potential;
    let mut out = Instance::new(p);
    match cmd {
        Command::Validate => {
            arity(names, 1, "one factorization")?;
            let name = &names[0];
            let violation = match inst.get(name)? {
                Object::Factorization { mf, .. } => mf.validate(),
                Object::Coherent(c) => c.validate()?,
                o => return Err(Error::InvalidInput(format!("`{name}` is a {}, expected a factorization", o.kind()))),
            };
            carry(inst, &mut out, name)?;
            Ok(match violation {
                None => Outcome::ok(json!({ "valid": true }), out),
                Some(v) => Outcome::verdict(
                    Status::Negative,
                    json!({ "valid": false, "violation": { "composite": v.composite, "row": v.row, "col": v.col } }),
                    Some(out),
                ),
            })
        }
        Command::Contractible => {
            arity(names, 1, "one factorization")?;
            let m = valid_coherent(inst, &names[0])?;
            carry(inst, &mut out, &names[0])?;
            match contracting_homotopy(&m)? {
                Some(h) => {
                    out.push("contraction", Object::Morphism { morphism: h, source: names[0].clone(), target: names[0].clone() })?;
                    Ok(Outcome::ok(json!({ "contractible": true }), out))
                }
                None => Ok(Outcome::verdict(
                    Status::Negative,
                    json!({
                        "contractible": false,
                        "certificate": "the linear system d(h) = id over R has no solution: the identity is not in the image of d modulo relations (Groebner lift failed)",
                    }),
                    Some(out),
                )),
            }
        }
        Command::Homotopy => {
            arity(names, 1, "one morphism")?;
            let (f, s, t) = morphism(inst, &names[0])?;
            if !f.is_closed()? {
                return Err(Error::NotClosed);
            }
            carry(inst, &mut out, &names[0])?;
            match f.null_homotopy()? {
                Some(h) => {
                    out.push("homotopy", Object::Morphism { morphism: h, source: s.to_string(), target: t.to_string() })?;
                    Ok(Outcome::ok(json!({ "null_homotopic": true }), out))
                }
                None => Ok(Outcome::verdict(Status::Negative, json!({ "null_homotopic": false }), Some(out))),
            }
        }
        Command::Cone => {
            arity(names, 1, "one closed morphism")?;
            let (f, _, _) = morphism(inst, &names[0])?;
            let c = f.cone(true)?;
            out.push("cone", factorization_object(&c))?;
            Ok(Outcome::ok(json!({ "rank0": c.m0.gens(), "rank1": c.m1.gens() }), out))
        }
        Command::Shift => {
            arity(names, 1, "one factorization")?;
            let c = valid_coherent(inst, &names[0])?;
            out.push("shift", factorization_object(&c.shift()))?;
            Ok(Outcome::ok(json!({}), out))
        }
        Command::Dual => {
            arity(names, 1, "one matrix factorization")?;
            let d = plain_factorization(inst, &names[0])?.dual();
            let mut out = Instance::new(&d.potential);
            out.push("dual", Object::Factorization { mf: d, over: None })?;
            Ok(Outcome::ok(json!({ "potential": out.potential.w().to_string() }), out))
        }
        Command::Dsum => {
            arity(names, 2, "two factorizations")?;
            let a = valid_coherent(inst, &names[0])?;
            let b = valid_coherent(inst, &names[1])?;
            out.push("dsum", factorization_object(&a.direct_sum(&b)?))?;
            Ok(Outcome::ok(json!({}), out))
        }
        Command::Hom => {
            arity(names, 2, "two matrix factorizations")?;
            let h = hom_cohomology(plain_factorization(inst, &names[0])?, plain_factorization(inst, &names[1])?)?;
            let zero = [h.h0.is_zero()?, h.h1.is_zero()?];
            out.push("H0", Object::Module { module: h.h0, base: Base::S })?;
            out.push("H1", Object::Module { module: h.h1, base: Base::S })?;
            Ok(Outcome::ok(json!({ "h0_zero": zero[0], "h1_zero": zero[1] }), out))
        }
        Command::Xi => {
            arity(names, 1, "one factorization")?;
            let m = xi(&valid_coherent(inst, &names[0])?, true)?;
            out.push("xi", Object::Module { module: m, base: Base::S })?;
            Ok(Outcome::ok(json!({}), out))
        }
        Command::Lxi => {
            arity(names, 1, "one factorization")?;
            let l = l_xi(&valid_coherent(inst, &names[0])?)?;
            let qis = l.comparison_is_quasi_isomorphism()?;
            let strategy = format!("{:?}", l.cover.strategy);
            out.push_complex("lxi", l.complex, Base::S)?;
            Ok(Outcome::ok(json!({ "cover_strategy": strategy, "quasi_isomorphic_to_cokernel": qis }), out))
        }
        Command::Upsilon => {
            arity(names, 1, "one module or complex over S")?;
            let complex = match inst.get(&names[0])? {
                Object::Module { module, base: Base::S } => ModuleComplex::single(module),
                Object::Complex { complex, base: Base::S, .. } => complex.clone(),
                o => return Err(Error::InvalidInput(format!("`{}` is a {}, expected a module or complex over S", names[0], o.kind()))),
            };
            let u = upsilon(p, &complex)?;
            out.push("upsilon", factorization_object(&u))?;
            Ok(Outcome::ok(json!({}), out))
        }
        Command::Flatcover => {
            arity(names, 1, "one factorization")?;
            let c = flat_cover(&valid_coherent(inst, &names[0])?)?;
            carry(inst, &mut out, &names[0])?;
            out.push("cover", factorization_object(&c.cover))?;
            out.push("kernel", factorization_object(&c.kernel))?;
            out.push("map", Object::Morphism { morphism: c.map, source: "cover".into(), target: names[0].clone() })?;
            out.push("inclusion", Object::Morphism { morphism: c.inclusion, source: "kernel".into(), target: "cover".into() })?;
            let contracted = c.kernel_contraction.is_some();
            if let Some(h) = c.kernel_contraction {
                out.push("kernel_contraction", Object::Morphism { morphism: h, source: "kernel".into(), target: "kernel".into() })?;
            }
            Ok(Outcome::ok(json!({ "strategy": format!("{:?}", c.strategy), "kernel_contractible": contracted }), out))
        }
        Command::Stabilize => {
            arity(names, 1, "one module over S")?;
            let (n, _) = module(inst, &names[0], Some(Base::S))?;
            let st = stabilize(p, n, limits.max_syzygy)?;
            let result = json!({ "syzygy_index": st.syzygy_index, "betti": st.betti, "rank": st.factorization.rank() });
            out.push("stabilization", Object::Factorization { mf: st.factorization, over: None })?;
            out.push("presentation", Object::Factorization { mf: st.presentation, over: None })?;
            out.push("syzygy", Object::Module { module: st.syzygy, base: Base::S })?;
            Ok(Outcome::ok(result, out))
        }
        Command::Pullback => {
            arity(names, 2, "a ring map and a factorization")?;
            let f = match inst.get(&names[0])? {
                Object::RingMap(f) => f,
                o => return Err(Error::InvalidInput(format!("`{}` is a {}, expected a ringmap", names[0], o.kind()))),
            };
            let m = pullback(f, plain_factorization(inst, &names[1])?)?;
            let mut out = Instance::new(&m.potential);
            out.push("pullback", Object::Factorization { mf: m, over: None })?;
            Ok(Outcome::ok(json!({ "potential": out.potential.w().to_string() }), out))
        }
        Command::Pushforward => {
            arity(names, 2, "an extension and a factorization over it")?;
            let ext = match inst.get(&names[0])? {
                Object::Extension(e) => e,
                o => return Err(Error::InvalidInput(format!("`{}` is a {}, expected an extension", names[0], o.kind()))),
            };
            let (m, over) = factorization(inst, &names[1])?;
            if over != Some(&names[0]) {
                return Err(Error::InvalidInput(format!("`{}` is not defined over `{}`", names[1], names[0])));
            }
            let pm = pushforward(ext, p, m)?;
            out.push("pushforward", Object::Factorization { mf: pm, over: None })?;
            Ok(Outcome::ok(json!({ "degree": ext.degree() }), out))
        }
        Command::Support | Command::Suppcat => {
            arity(names, 1, "one factorization")?;
            let ideal = if cmd == Command::Support {
                support_set(&valid_coherent(inst, &names[0])?)?
            } else {
                support_cat(plain_factorization(inst, &names[0])?)?
            };
            let gens: Vec<String> = ideal.gens().iter().map(|g| g.to_string()).collect();
            out.push("support", Object::Module { module: ideal_module(&ideal)?, base: Base::R })?;
            Ok(Outcome::ok(json!({ "ideal": gens, "empty": ideal.is_unit()? }), out))
        }
        Command::Resolve => {
            arity(names, 1, "one module")?;
            let (n, base) = module(inst, &names[0], None)?;
            let res = free_resolution(n, limits.max_resolution, n.is_graded() && n.ring().is_graded())?;
            carry(inst, &mut out, &names[0])?;
            for (j, d) in res.maps.iter().enumerate() {
                let degrees = res.degrees.as_ref().and_then(|ds| ds.get(j).cloned());
                out.push(&format!("syzygy_{j}"), Object::Module { module: PresentedModule::new(d.clone(), degrees)?, base })?;
            }
            Ok(Outcome::ok(
                json!({ "betti": res.betti(), "maps": strings(&res.maps), "complete": res.complete, "minimal": res.minimal }),
                out,
            ))
        }
        Command::Perfect => {
            arity(names, 1, "one module")?;
            let (n, _) = module(inst, &names[0], None)?;
            carry(inst, &mut out, &names[0])?;
            Ok(match is_perfect(n, limits.max_resolution)? {
                Perfectness::Yes(pd) => Outcome::ok(json!({ "perfect": true, "pd": pd }), out),
                Perfectness::No(cert) => {
                    let detail = match &cert {
                        NonPerfectCertificate::HypersurfacePair { index, phi, psi } => {
                            json!({ "kind": "hypersurface-pair", "index": index, "phi": phi.to_string(), "psi": psi.to_string() })
                        }
                        NonPerfectCertificate::ImageRepetition { index } => json!({ "kind": "image-repetition", "index": index }),
                    };
                    Outcome::verdict(Status::Negative, json!({ "perfect": false, "certificate": detail }), Some(out))
                }
                Perfectness::Unknown => Outcome::verdict(
                    Status::Exhausted,
                    json!({ "perfect": null, "reason": format!("no verdict within {} resolution steps", limits.max_resolution) }),
                    Some(out),
                ),
            })
        }
        Command::VerifyEquivalence => {
            // Without names: every module over S and every valid factorization over R.
            let chosen: Vec<String> = if names.is_empty() {
                inst.objects
                    .iter()
                    .filter(|(_, o)| match o {
                        Object::Module { base: Base::S, .. } => true,
                        Object::Factorization { mf, over: None } => mf.validate().is_none(),
                        _ => false,
                    })
                    .map(|(n, _)| n.clone())
                    .collect()
            } else {
                names.to_vec()
            };
            let (mut mods, mut facs, mut mod_names, mut fac_names) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for n in &chosen {
                match inst.get(n)? {
                    Object::Module { module, base: Base::S } => {
                        mods.push(module.clone());
                        mod_names.push(n.clone());
                    }
                    Object::Factorization { over: None, .. } => {
                        facs.push(plain_factorization(inst, n)?.clone());
                        fac_names.push(n.clone());
                    }
                    o => return Err(Error::InvalidInput(format!("`{n}` is a {}, expected a module over S or a factorization", o.kind()))),
                }
            }
            let report = verify_main_equivalence(p, &mods, &facs)?;
            let mut checks = Vec::new();
            for c in &report.checks {
                let object = match c.kind {
                    crate::singcat::CheckKind::RoundTripModule => &mod_names[c.object],
                    _ => &fac_names[c.object],
                };
                let evidence = match &c.evidence {
                    Evidence::QuasiIsomorphism(l) => json!({ "cover_strategy": format!("{:?}", l.cover.strategy) }),
                    Evidence::Contraction(u) => json!({ "kernel_rank0": u.kernel.m0.gens(), "kernel_rank1": u.kernel.m1.gens() }),
                    Evidence::Perfect { pd, .. } => json!({ "pd": pd }),
                    Evidence::Failure(why) => json!({ "failure": why }),
                };
                checks.push(json!({ "check": c.kind.to_string(), "object": object, "passed": c.passed, "evidence": evidence }));
            }
            let status = if report.passed() { Status::Ok } else { Status::Negative };
            Ok(Outcome::verdict(status, json!({ "passed": report.passed(), "checks": checks }), None))
        }
        Command::VerifyPeriodicity => {
            arity(names, 1, "one module over S")?;
            let (n, _) = module(inst, &names[0], Some(Base::S))?;
            let rep = verify_periodicity(p, n, limits.steps)?;
            let betti = rep.resolution.betti();
            match (rep.start, rep.factorization) {
                (Some(start), Some(mf)) => {
                    out.push("period", Object::Factorization { mf, over: None })?;
                    Ok(Outcome::ok(json!({ "periodic": true, "start": start, "betti": betti }), out))
                }
                _ => Ok(Outcome::verdict(
                    Status::Exhausted,
                    json!({ "periodic": null, "betti": betti, "reason": format!("no repeating pair within {} steps", limits.steps) }),
                    None,
                )),
            }
        }
        Command::RelativePerfect => {
            arity(names, 1, "one module over S")?;
            let (n, _) = module(inst, &names[0], Some(Base::S))?;
            match relative_perfect_certificate(p, n, limits.depth)? {
                RelativePerfectness::Yes(w) => {
                    out.push("syzygy", Object::Module { module: w.syzygy, base: Base::S })?;
                    out.push("lift", Object::Module { module: w.lift, base: Base::R })?;
                    Ok(Outcome::ok(json!({ "relatively_perfect": true, "depth": w.depth, "betti": w.betti }), out))
                }
                RelativePerfectness::Unknown(d) => Ok(Outcome::verdict(
                    Status::Exhausted,
                    json!({ "relatively_perfect": null, "reason": format!("no witness up to depth {d}") }),
                    None,
                )),
            }
        }
    }
}
