//! The line-based instance format. Every object the CLI emits is written in
//! this format and re-parses to the same text.
//!
//! ```text
//! mfwork-instance v1
//! field QQ
//! vars x y
//! order degrevlex
//! weights 1 1
//! potential x*y
//! factorization M
//!   phi 1x1 [x]
//!   psi 1x1 [y]
//! end
//! module N over S
//!   relations 1x2 [x, y]
//! end
//! ```
//!
//! Header keys: `field` (`QQ` or `GF(p)`), `vars`, `order` (`degrevlex`,
//! `deglex`, `lex`), `weights`, `ideal` (comma separated) and `potential`.
//! Blocks, each closed by `end`, may refer only to names defined above them:
//!
//! - `factorization NAME [over EXT]`: `phi`, `psi`.
//! - `coherent NAME`: `m0`, `m1` (relation matrices), `delta0`, `delta1`.
//! - `module NAME over R|S`: `relations`, optional `degrees`.
//! - `complex NAME over R|S`: `lowest`, then `term MODULE` and `map` lines.
//! - `morphism NAME from A to B degree 0|1`: `f0`, `f1`.
//! - `ringmap NAME`: target ring keys (`field`, `vars`, `order`, `weights`,
//!   `ideal`) and `images`.
//! - `extension NAME`: `var`, `poly` (monic in `var`).

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functors::{FiniteExtension, ModuleComplex, RingMap};
use crate::homalg::{ModuleMap, PresentedModule};
use crate::matrix::Matrix;
use crate::mf::{CoherentFactorization, MFMorphism, MatrixFactorization, Potential};
use crate::ring::{Field, MonomialOrder, OrderKind, PolyRing, Polynomial, Ring, RingPresentation};

pub const INSTANCE_TAG: &str = "mfwork-instance v1";

/// Which ring a module or complex lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    R,
    S,
}

impl Base {
    fn name(self) -> &'static str {
        match self {
            Base::R => "R",
            Base::S => "S",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Object {
    Factorization { mf: MatrixFactorization, over: Option<String> },
    Coherent(CoherentFactorization),
    Module { module: PresentedModule, base: Base },
    Complex { complex: ModuleComplex, base: Base, terms: Vec<String> },
    Morphism { morphism: MFMorphism, source: String, target: String },
    RingMap(RingMap),
    Extension(FiniteExtension),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Factorization { .. } => "factorization",
            Object::Coherent(_) => "coherent",
            Object::Module { .. } => "module",
            Object::Complex { .. } => "complex",
            Object::Morphism { .. } => "morphism",
            Object::RingMap(_) => "ringmap",
            Object::Extension(_) => "extension",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub ring: Ring,
    pub potential: Potential,
    pub objects: Vec<(String, Object)>,
}

impl Instance {
    pub fn new(potential: &Potential) -> Self {
        Instance { ring: potential.ring().clone(), potential: potential.clone(), objects: Vec::new() }
    }

    pub fn get(&self, name: &str) -> Result<&Object> {
        self.objects
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, o)| o)
            .ok_or_else(|| Error::InvalidInput(format!("no object named `{name}`")))
    }

    pub fn push(&mut self, name: &str, obj: Object) -> Result<()> {
        check_name(name)?;
        if self.objects.iter().any(|(n, _)| n == name) {
            return Err(Error::InvalidInput(format!("`{name}` is defined twice")));
        }
        self.objects.push((name.to_string(), obj));
        Ok(())
    }

    /// Adds the terms of `complex` as modules `NAME_t0, NAME_t1, ...` and
    /// then the complex itself.
    pub fn push_complex(&mut self, name: &str, complex: ModuleComplex, base: Base) -> Result<()> {
        let mut terms = Vec::new();
        for (i, t) in complex.terms.iter().enumerate() {
            let tn = format!("{name}_t{i}");
            self.push(&tn, Object::Module { module: t.clone(), base })?;
            terms.push(tn);
        }
        self.push(name, Object::Complex { complex, base, terms })
    }

    pub fn module_ring(&self, base: Base) -> &Ring {
        match base {
            Base::R => &self.ring,
            Base::S => self.potential.zero_locus(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{INSTANCE_TAG}").unwrap();
        write_ring(&mut out, &self.ring, "");
        writeln!(out, "potential {}", self.potential.w()).unwrap();
        for (name, obj) in &self.objects {
            write_object(&mut out, name, obj);
        }
        out
    }
}

fn check_name(name: &str) -> Result<()> {
    let ok = !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '-');
    if ok {
        Ok(())
    } else {
        Err(Error::Parse(format!("invalid object name `{name}`")))
    }
}

fn write_ring(out: &mut String, ring: &Ring, indent: &str) {
    let c = ring.cover();
    writeln!(out, "{indent}field {}", c.field).unwrap();
    writeln!(out, "{indent}vars {}", c.vars.join(" ")).unwrap();
    writeln!(out, "{indent}order {}", c.order.name()).unwrap();
    if let Some(w) = &c.weights {
        let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{indent}weights {}", w.join(" ")).unwrap();
    }
    if !ring.ideal().is_empty() {
        writeln!(out, "{indent}ideal {}", join_polys(ring.ideal())).unwrap();
    }
}

fn join_polys(ps: &[Polynomial]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

fn write_object(out: &mut String, name: &str, obj: &Object) {
    match obj {
        Object::Factorization { mf, over } => {
            match over {
                Some(e) => writeln!(out, "factorization {name} over {e}").unwrap(),
                None => writeln!(out, "factorization {name}").unwrap(),
            }
            writeln!(out, "  phi {}", mf.phi).unwrap();
            writeln!(out, "  psi {}", mf.psi).unwrap();
        }
        Object::Coherent(c) => {
            writeln!(out, "coherent {name}").unwrap();
            writeln!(out, "  m0 {}", c.m0.relations()).unwrap();
            writeln!(out, "  m1 {}", c.m1.relations()).unwrap();
            writeln!(out, "  delta0 {}", c.delta0.matrix).unwrap();
            writeln!(out, "  delta1 {}", c.delta1.matrix).unwrap();
        }
        Object::Module { module, base } => {
            writeln!(out, "module {name} over {}", base.name()).unwrap();
            writeln!(out, "  relations {}", module.relations()).unwrap();
            if let Some(d) = module.declared_degrees() {
                let d: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                writeln!(out, "  degrees {}", d.join(" ")).unwrap();
            }
        }
        Object::Complex { complex, base, terms } => {
            writeln!(out, "complex {name} over {}", base.name()).unwrap();
            writeln!(out, "  lowest {}", complex.lowest).unwrap();
            for t in terms {
                writeln!(out, "  term {t}").unwrap();
            }
            for m in &complex.maps {
                writeln!(out, "  map {}", m.matrix).unwrap();
            }
        }
        Object::Morphism { morphism, source, target } => {
            writeln!(out, "morphism {name} from {source} to {target} degree {}", morphism.degree).unwrap();
            writeln!(out, "  f0 {}", morphism.f0).unwrap();
            writeln!(out, "  f1 {}", morphism.f1).unwrap();
        }
        Object::RingMap(f) => {
            writeln!(out, "ringmap {name}").unwrap();
            write_ring(out, &f.target, "  ");
            writeln!(out, "  images {}", join_polys(&f.images)).unwrap();
        }
        Object::Extension(e) => {
            let c = e.top.cover();
            writeln!(out, "extension {name}").unwrap();
            writeln!(out, "  var {}", c.vars[c.nvars() - 1]).unwrap();
            writeln!(out, "  poly {}", e.top.ideal().last().expect("extension polynomial")).unwrap();
        }
    }
    writeln!(out, "end").unwrap();
}

/// Ring header keys, shared by the instance header and `ringmap` blocks.
#[derive(Default)]
struct RingSpec {
    field: Option<Field>,
    vars: Option<Vec<String>>,
    order: Option<OrderKind>,
    weights: Option<Vec<u32>>,
    ideal: Option<String>,
}

impl RingSpec {
    /// Consumes a header line; false if the key is not a ring key.
    fn accept(&mut self, key: &str, rest: &str, line: usize) -> Result<bool> {
        let dup = |k: &str| Error::Parse(format!("line {line}: `{k}` given twice"));
        match key {
            "field" => {
                if self.field.replace(parse_field(rest, line)?).is_some() {
                    return Err(dup(key));
                }
            }
            "vars" => {
                let vars: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if vars.is_empty() {
                    return Err(Error::Parse(format!("line {line}: no variables")));
                }
                if self.vars.replace(vars).is_some() {
                    return Err(dup(key));
                }
            }
            "order" => {
                let kind = match rest {
                    "degrevlex" => OrderKind::DegRevLex,
                    "deglex" => OrderKind::DegLex,
                    "lex" => OrderKind::Lex,
                    other => return Err(Error::Parse(format!("line {line}: unknown order `{other}`"))),
                };
                if self.order.replace(kind).is_some() {
                    return Err(dup(key));
                }
            }
            "weights" => {
                let w: std::result::Result<Vec<u32>, _> = rest.split_whitespace().map(str::parse).collect();
                let w = w.map_err(|_| Error::Parse(format!("line {line}: weights must be positive integers")))?;
                if self.weights.replace(w).is_some() {
                    return Err(dup(key));
                }
            }
            "ideal" => {
                if self.ideal.replace(rest.to_string()).is_some() {
                    return Err(dup(key));
                }
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn build(self, default_field: Option<&Field>) -> Result<Ring> {
        let field = self.field.or_else(|| default_field.cloned()).ok_or_else(|| Error::Parse("missing `field`".into()))?;
        let vars = self.vars.ok_or_else(|| Error::Parse("missing `vars`".into()))?;
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        for (i, v) in names.iter().enumerate() {
            if !v.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Parse(format!("invalid variable name `{v}`")));
            }
            if names[..i].contains(v) {
                return Err(Error::Parse(format!("variable `{v}` repeated")));
            }
        }
        let mut cover = (*PolyRing::new(field, &names)).clone();
        cover.order = MonomialOrder::new(self.order.unwrap_or(OrderKind::DegRevLex), names.len());
        cover.weights = self.weights;
        let cover = Arc::new(cover);
        let ideal = match self.ideal {
            Some(text) => parse_list(&cover, &text)?,
            None => Vec::new(),
        };
        RingPresentation::new(&cover, ideal)
    }
}

fn parse_field(text: &str, line: usize) -> Result<Field> {
    if text == "QQ" {
        return Ok(Field::Rational);
    }
    let p = text
        .strip_prefix("GF(")
        .and_then(|t| t.strip_suffix(')'))
        .and_then(|t| t.trim().parse::<u64>().ok())
        .ok_or_else(|| Error::Parse(format!("line {line}: field must be QQ or GF(p)")))?;
    Field::prime(p)
}

fn parse_list(cover: &Arc<PolyRing>, text: &str) -> Result<Vec<Polynomial>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| crate::ring::parse_polynomial(cover, s.trim())).collect()
}

struct Line<'a> {
    no: usize,
    key: &'a str,
    rest: &'a str,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let l = raw.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                return None;
            }
            let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            Some(Line { no: i + 1, key, rest: rest.trim() })
        })
        .collect()
}

const BLOCKS: [&str; 7] = ["factorization", "coherent", "module", "complex", "morphism", "ringmap", "extension"];

pub fn parse_instance(text: &str) -> Result<Instance> {
    let ls = lines(text);
    let mut pos = 0;
    if ls.first().is_some_and(|l| format!("{} {}", l.key, l.rest) == INSTANCE_TAG) {
        pos = 1;
    } else if ls.first().is_some_and(|l| l.key == "mfwork-instance") {
        return Err(Error::Parse(format!("unsupported format version `{}`", ls[0].rest)));
    }
    let mut spec = RingSpec::default();
    let mut w_text = None;
    while pos < ls.len() && !BLOCKS.contains(&ls[pos].key) {
        let l = &ls[pos];
        if l.key == "potential" {
            if w_text.replace(l.rest).is_some() {
                return Err(Error::Parse(format!("line {}: `potential` given twice", l.no)));
            }
        } else if !spec.accept(l.key, l.rest, l.no)? {
            return Err(Error::Parse(format!("line {}: unknown header key `{}`", l.no, l.key)));
        }
        pos += 1;
    }
    let ring = spec.build(None)?;
    let w = w_text.ok_or_else(|| Error::Parse("missing `potential`".into()))?;
    let potential = Potential::parse(&ring, w)?;
    let mut inst = Instance::new(&potential);
    while pos < ls.len() {
        let head = &ls[pos];
        let end = ls[pos..]
            .iter()
            .position(|l| l.key == "end")
            .map(|k| pos + k)
            .ok_or_else(|| Error::Parse(format!("line {}: block is not closed by `end`", head.no)))?;
        if !ls[pos + 1..end].iter().all(|l| !BLOCKS.contains(&l.key)) {
            return Err(Error::Parse(format!("line {}: block is not closed by `end`", head.no)));
        }
        let (name, obj) = parse_block(&inst, head, &ls[pos + 1..end])?;
        inst.push(&name, obj)?;
        pos = end + 1;
    }
    Ok(inst)
}

/// Key-value body of a block; repeated keys are kept in order.
struct Body<'a> {
    head: usize,
    entries: Vec<(&'a str, &'a str, usize)>,
}

impl<'a> Body<'a> {
    fn all(&self, key: &str) -> Vec<&'a str> {
        self.entries.iter().filter(|e| e.0 == key).map(|e| e.1).collect()
    }

    fn one(&self, key: &str) -> Result<&'a str> {
        match self.all(key).as_slice() {
            [v] => Ok(v),
            [] => Err(Error::Parse(format!("block at line {}: missing `{key}`", self.head))),
            _ => Err(Error::Parse(format!("block at line {}: `{key}` given twice", self.head))),
        }
    }

    fn opt(&self, key: &str) -> Result<Option<&'a str>> {
        if self.all(key).is_empty() {
            Ok(None)
        } else {
            self.one(key).map(Some)
        }
    }

    fn only(&self, keys: &[&str]) -> Result<()> {
        match self.entries.iter().find(|e| !keys.contains(&e.0)) {
            Some(e) => Err(Error::Parse(format!("line {}: unexpected key `{}`", e.2, e.0))),
            None => Ok(()),
        }
    }
}

fn parse_block(inst: &Instance, head: &Line<'_>, body: &[Line<'_>]) -> Result<(String, Object)> {
    let words: Vec<&str> = head.rest.split_whitespace().collect();
    let name = words.first().ok_or_else(|| Error::Parse(format!("line {}: block needs a name", head.no)))?.to_string();
    let b = Body { head: head.no, entries: body.iter().map(|l| (l.key, l.rest, l.no)).collect() };
    let extra = &words[1..];
    let bad_head = || Error::Parse(format!("line {}: malformed `{}` header", head.no, head.key));
    let r = &inst.ring;
    let obj = match head.key {
        "factorization" => {
            b.only(&["phi", "psi"])?;
            let (potential, over) = match extra {
                [] => (inst.potential.clone(), None),
                ["over", e] => match inst.get(e)? {
                    Object::Extension(ext) => (Potential::new(&ext.top, &ext.embed(inst.potential.w()))?, Some(e.to_string())),
                    _ => return Err(Error::InvalidInput(format!("`{e}` is not an extension"))),
                },
                _ => return Err(bad_head()),
            };
            let ring = potential.ring();
            // Validity is checked by the commands, so that `validate` can report it.
            let mf = MatrixFactorization::unchecked(&potential, Matrix::parse(ring, b.one("phi")?)?, Matrix::parse(ring, b.one("psi")?)?)?;
            Object::Factorization { mf, over }
        }
        "coherent" => {
            b.only(&["m0", "m1", "delta0", "delta1"])?;
            if !extra.is_empty() {
                return Err(bad_head());
            }
            let m0 = PresentedModule::new(Matrix::parse(r, b.one("m0")?)?, None)?;
            let m1 = PresentedModule::new(Matrix::parse(r, b.one("m1")?)?, None)?;
            let d0 = ModuleMap::new(m0.clone(), m1.clone(), Matrix::parse(r, b.one("delta0")?)?)?;
            let d1 = ModuleMap::new(m1, m0, Matrix::parse(r, b.one("delta1")?)?)?;
            Object::Coherent(CoherentFactorization::unchecked(&inst.potential, d0, d1)?)
        }
        "module" => {
            b.only(&["relations", "degrees"])?;
            let base = parse_base(extra).ok_or_else(bad_head)?;
            let ring = inst.module_ring(base);
            let degrees = match b.opt("degrees")? {
                Some(d) => Some(
                    d.split_whitespace()
                        .map(str::parse)
                        .collect::<std::result::Result<Vec<i64>, _>>()
                        .map_err(|_| Error::Parse(format!("block at line {}: degrees must be integers", head.no)))?,
                ),
                None => None,
            };
            let module = PresentedModule::new(Matrix::parse(ring, b.one("relations")?)?, degrees)?;
            Object::Module { module, base }
        }
        "complex" => {
            b.only(&["lowest", "term", "map"])?;
            let base = parse_base(extra).ok_or_else(bad_head)?;
            let ring = inst.module_ring(base);
            let lowest: i64 = b.one("lowest")?.parse().map_err(|_| Error::Parse(format!("block at line {}: bad `lowest`", head.no)))?;
            let terms: Vec<String> = b.all("term").into_iter().map(String::from).collect();
            let mut mods = Vec::new();
            for t in &terms {
                match inst.get(t)? {
                    Object::Module { module, base: tb } if *tb == base => mods.push(module.clone()),
                    _ => return Err(Error::InvalidInput(format!("`{t}` is not a module over {}", base.name()))),
                }
            }
            let texts = b.all("map");
            if mods.is_empty() || texts.len() + 1 != mods.len() {
                return Err(Error::InvalidInput(format!("complex `{name}` needs one map between consecutive terms")));
            }
            let mut maps = Vec::new();
            for (i, t) in texts.iter().enumerate() {
                maps.push(ModuleMap::unchecked(mods[i].clone(), mods[i + 1].clone(), Matrix::parse(ring, t)?)?);
            }
            Object::Complex { complex: ModuleComplex::new(ring, lowest, mods, maps)?, base, terms }
        }
        "morphism" => {
            b.only(&["f0", "f1"])?;
            let words = pairs(extra);
            let [("from", s), ("to", t), ("degree", d)] = words.as_slice() else { return Err(bad_head()) };
            let degree: u8 = match *d {
                "0" => 0,
                "1" => 1,
                _ => return Err(bad_head()),
            };
            let source = coherent_of(inst, s)?;
            let target = coherent_of(inst, t)?;
            let morphism = MFMorphism::new(&source, &target, degree, Matrix::parse(r, b.one("f0")?)?, Matrix::parse(r, b.one("f1")?)?)?;
            Object::Morphism { morphism, source: s.to_string(), target: t.to_string() }
        }
        "ringmap" => {
            if !extra.is_empty() {
                return Err(bad_head());
            }
            let mut spec = RingSpec::default();
            let mut images = None;
            for (k, v, no) in &b.entries {
                if *k == "images" {
                    if images.replace(*v).is_some() {
                        return Err(Error::Parse(format!("line {no}: `images` given twice")));
                    }
                } else if !spec.accept(k, v, *no)? {
                    return Err(Error::Parse(format!("line {no}: unexpected key `{k}`")));
                }
            }
            let target = spec.build(Some(&r.cover().field))?;
            let images = parse_list(target.cover(), images.ok_or_else(|| Error::Parse(format!("block at line {}: missing `images`", head.no)))?)?;
            Object::RingMap(RingMap::new(r, &target, images)?)
        }
        "extension" => {
            b.only(&["var", "poly"])?;
            if !extra.is_empty() {
                return Err(bad_head());
            }
            Object::Extension(FiniteExtension::new(r, b.one("var")?, b.one("poly")?)?)
        }
        other => return Err(Error::Parse(format!("line {}: unknown block `{other}`", head.no))),
    };
    Ok((name, obj))
}

fn pairs<'a>(words: &[&'a str]) -> Vec<(&'a str, &'a str)> {
    if !words.len().is_multiple_of(2) {
        return Vec::new();
    }
    words.chunks(2).map(|c| (c[0], c[1])).collect()
}

fn parse_base(words: &[&str]) -> Option<Base> {
    match words {
        ["over", "R"] => Some(Base::R),
        ["over", "S"] => Some(Base::S),
        _ => None,
    }
}

/// A factorization or coherent factorization over `R`, as coherent.
pub fn coherent_of(inst: &Instance, name: &str) -> Result<CoherentFactorization> {
    match inst.get(name)? {
        Object::Factorization { mf, over: None } => Ok(mf.to_coherent()),
        Object::Coherent(c) => Ok(c.clone()),
        o => Err(Error::InvalidInput(format!("`{name}` is a {}, expected a factorization over R", o.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NODE: &str = "\
# the node
field QQ
vars x y
weights 1 1
potential x*y
factorization M
  phi 2x2 [x, y; 0, -y]   # not minimal
  psi 2x2 [y, y; 0, -x]
end
module k over S
  relations 1x2 [x, y]
end
module Sx over S
  relations 1x1 [x]
end
complex C over S
  lowest -1
  term k
  term Sx
  map 1x1 [0]
end
morphism id from M to M degree 0
  f0 2x2 [1, 0; 0, 1]
  f1 2x2 [1, 0; 0, 1]
end
ringmap diag
  vars t
  images t, t
end
extension E
  var u
  poly u^2 - x
end
factorization U over E
  phi 1x1 [u]
  psi 1x1 [u*y]
end
";

    #[test]
    fn canonical_text_is_a_fixed_point() {
        let inst = parse_instance(NODE).unwrap();
        assert_eq!(inst.objects.len(), 8);
        let text = inst.to_text();
        assert!(text.starts_with(INSTANCE_TAG));
        assert_eq!(parse_instance(&text).unwrap().to_text(), text);
    }

    #[test]
    fn input_errors() {
        let head = "field QQ\nvars x y\npotential x*y\n";
        for bad in [
            "field QQ\nvars x y\n",
            "field RR\nvars x\npotential x\n",
            &format!("{head}factorization M\n  phi 1x2 [x, y]\n  psi 1x1 [x]\nend\n"),
            &format!("{head}module N over T\n  relations 1x1 [x]\nend\n"),
            &format!("{head}module N over S\n  relations 1x1 [x]\n"),
            &format!("{head}module N over S\n  relations 1x1 [x]\nend\nmodule N over S\n  relations 1x1 [y]\nend\n"),
            &format!("{head}morphism f from A to B degree 0\n  f0 0x0 []\n  f1 0x0 []\nend\n"),
            "mfwork-instance v9\nfield QQ\nvars x\npotential x\n",
        ] {
            assert!(parse_instance(bad).is_err(), "accepted:\n{bad}");
        }
    }
}
