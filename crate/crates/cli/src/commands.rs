use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde_json::{json, Map, Value};

use gwops::audit::audit_corpus;
use gwops::cat1::{is_covering_cat1, is_normal_subcat1, quotient_cat1};
use gwops::corpus::{generate_corpus, Profile};
use gwops::equivalences::{
    cat1_morphism_to_xmod, cat1_to_xmod, gpd_morphism_to_xmod, gpd_to_cat1, gpd_to_xmod, roundtrip_cat1, roundtrip_gpd,
    roundtrip_xmod_cat1, roundtrip_xmod_gpd, xmod_morphism_to_cat1, xmod_morphism_to_gpd, xmod_to_cat1, xmod_to_gpd,
};
use gwops::format::{parse, serialize, to_value, AnyMorphism, Metadata, Structure, StructureFile, SubobjectSets};
use gwops::gpd::{
    coset_normality, internal_quotient, is_covering_gpd, is_internal_normal_subgroupoid, is_subgroupoid,
    translation_criterion,
};
use gwops::subset::{is_ideal, is_subobject, quotient as quotient_gwo};
use gwops::xmod::{is_covering_xmod, is_normal_subxmod, is_subxmod, quotient_xmod};
use gwops::{Error, GroupWithOps, IsoWitness, StructureMap, ValidationReport, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Valid => 0,
            Verdict::Invalid => 1,
            Verdict::Error => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Verdict::Valid => "valid",
            Verdict::Invalid => "invalid",
            Verdict::Error => "error",
        }
    }
}

/// Outcome of one command: verdict, human summary, witnesses and any
/// command-specific details.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub summary: Vec<String>,
    pub witnesses: Vec<Value>,
    pub details: Map<String, Value>,
}

impl Report {
    fn new(verdict: Verdict) -> Self {
        Report {
            command: String::new(),
            verdict,
            summary: Vec::new(),
            witnesses: Vec::new(),
            details: Map::new(),
        }
    }

    fn holds(ok: bool) -> Self {
        Self::new(if ok { Verdict::Valid } else { Verdict::Invalid })
    }

    pub fn error(message: String) -> Self {
        let mut r = Self::new(Verdict::Error);
        r.summary.push(message);
        r
    }

    pub fn with_command(mut self, name: &str) -> Self {
        self.command = name.to_string();
        self
    }

    fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    fn detail(&mut self, key: &str, v: Value) {
        self.details.insert(key.to_string(), v);
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "verdict": self.verdict.name(),
            "summary": self.summary,
            "witnesses": self.witnesses,
            "details": self.details,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("report is plain JSON");
        s.push('\n');
        s
    }
}

fn violation_json(v: &Violation) -> Value {
    json!({ "axiom": v.axiom, "witness": v.witness, "detail": v.detail })
}

fn from_validation(what: &str, r: &ValidationReport) -> Report {
    let mut out = Report::holds(r.is_valid());
    if r.is_valid() {
        out.line(format!("{what}: all axioms hold"));
    } else {
        out.line(format!("{what}: {} violation(s)", r.violations.len()));
        for v in &r.violations {
            out.line(format!("  {v}"));
            out.witnesses.push(violation_json(v));
        }
    }
    out
}

fn load(path: &Path) -> Result<StructureFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse(&text).with_context(|| format!("{}", path.display()))
}

fn load_sub(path: &Path) -> Result<SubobjectSets> {
    match load(path)?.structure {
        Structure::Subobject(s) => Ok(s),
        other => bail!("{}: expected a subobject file, found kind {}", path.display(), other.kind().name()),
    }
}

fn describe(f: &StructureFile) -> String {
    let kind = f.structure.kind().name();
    match &f.metadata.name {
        Some(n) => format!("{kind} {n:?}"),
        None => kind.to_string(),
    }
}

fn emit(report: &mut Report, file: StructureFile, output: Option<&Path>) -> Result<()> {
    if let Some(p) = output {
        std::fs::write(p, serialize(&file)).with_context(|| format!("cannot write {}", p.display()))?;
        report.line(format!("wrote {}", p.display()));
    }
    report.detail("output", to_value(&file));
    Ok(())
}

fn check_bound(size: usize, bound: usize) -> Result<()> {
    if size > bound {
        return Err(Error::BoundExceeded { size, bound }.into());
    }
    Ok(())
}

fn structure_report(s: &Structure) -> Result<ValidationReport> {
    Ok(match s {
        Structure::Gwo(g) => g.validate(),
        Structure::Morphism(m) => morphism_report(m)?,
        Structure::Action(a) => {
            let mut r = ValidationReport::new();
            r.absorb("acted", a.acted().validate());
            r.absorb("actor", a.actor().validate());
            r.absorb("derived-action", a.derived_action_report()?);
            r
        }
        Structure::XMod(x) => x.validate()?,
        Structure::Gpd(g) => g.validate(),
        Structure::Cat1(c) => c.validate(),
        Structure::Subobject(_) => {
            bail!("a subobject has no axioms of its own; use check-normal with its parent structure")
        }
    })
}

fn morphism_report(m: &AnyMorphism) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    match m {
        AnyMorphism::Gwo(m) => {
            r.absorb("domain", m.dom().validate());
            r.absorb("codomain", m.cod().validate());
            r.push_opt(m.check());
        }
        AnyMorphism::XMod(m) => {
            r.absorb("domain", m.dom.validate()?);
            r.absorb("codomain", m.cod.validate()?);
            r.push_opt(m.check());
        }
        AnyMorphism::Gpd(m) => {
            r.absorb("domain", m.dom.validate());
            r.absorb("codomain", m.cod.validate());
            r.push_opt(m.check());
        }
        AnyMorphism::Cat1(m) => {
            r.absorb("domain", m.dom.validate());
            r.absorb("codomain", m.cod.validate());
            r.push_opt(m.check());
        }
    }
    Ok(r)
}

pub fn validate(file: &Path) -> Result<Report> {
    let f = load(file)?;
    let r = structure_report(&f.structure)?;
    Ok(from_validation(&describe(&f), &r))
}

fn require_valid(f: &StructureFile) -> Result<Option<Report>> {
    let r = structure_report(&f.structure)?;
    if r.is_valid() {
        Ok(None)
    } else {
        let mut out = from_validation(&describe(f), &r);
        out.line("input is not valid; nothing constructed");
        Ok(Some(out))
    }
}

fn quotient_file(s: Structure, name: &Option<String>, reps: Vec<usize>) -> StructureFile {
    StructureFile::new(
        s,
        Metadata {
            name: name.as_ref().map(|n| format!("{n} quotient")),
            provenance: Some("quotient".into()),
            representatives: Some(reps),
        },
    )
}

fn base_of<'a>(sub: &'a SubobjectSets, what: &str) -> Result<&'a [usize]> {
    sub.base_elements
        .as_deref()
        .with_context(|| format!("a subobject of a {what} needs base_elements"))
}

pub fn quotient(file: &Path, ideal: &Path, output: Option<&Path>) -> Result<Report> {
    let f = load(file)?;
    let sub = load_sub(ideal)?;
    if let Some(r) = require_valid(&f)? {
        return Ok(r);
    }
    let s = &sub.elements;
    let mut report;
    match &f.structure {
        Structure::Gwo(g) => {
            if !is_ideal(g, s)? {
                report = Report::holds(false);
                report.line(format!("{s:?} is not an ideal"));
                report.witnesses.push(json!({ "condition": "ideal", "elements": s }));
                return Ok(report);
            }
            let q = quotient_gwo(g, s)?;
            report = Report::holds(true);
            report.line(format!("quotient of order {}", q.structure.order()));
            let out = quotient_file(Structure::Gwo(q.structure.clone()), &f.metadata.name, q.representatives);
            emit(&mut report, out, output)?;
        }
        Structure::XMod(x) => {
            let t = base_of(&sub, "crossed module")?;
            if !is_subxmod(x, s, t)? {
                report = Report::holds(false);
                report.line("not a subcrossed module");
                report.witnesses.push(json!({ "condition": "subcrossed module" }));
                return Ok(report);
            }
            let n = is_normal_subxmod(x, s, t)?;
            if !n.is_normal() {
                report = Report::holds(false);
                report.line(format!("not normal: {n}"));
                report.witnesses.push(json!({ "failing": n.failing() }));
                return Ok(report);
            }
            let q = quotient_xmod(x, s, t)?;
            report = Report::holds(true);
            report.line(format!(
                "quotient crossed module of orders ({}, {})",
                q.xmod.acted().order(),
                q.xmod.actor().order()
            ));
            report.detail("base_representatives", json!(q.actor.representatives));
            let out = quotient_file(Structure::XMod(q.xmod.clone()), &f.metadata.name, q.acted.representatives);
            emit(&mut report, out, output)?;
        }
        Structure::Gpd(g) => {
            let n0 = base_of(&sub, "groupoid")?;
            if !is_subgroupoid(g, s, n0)? {
                report = Report::holds(false);
                report.line("not a subgroupoid");
                report.witnesses.push(json!({ "condition": "subgroupoid" }));
                return Ok(report);
            }
            if !is_internal_normal_subgroupoid(g, s, n0)? {
                report = Report::holds(false);
                report.line("arrows do not form an ideal");
                report.witnesses.push(json!({ "condition": "internal normality" }));
                return Ok(report);
            }
            let q = internal_quotient(g, s, n0)?;
            report = Report::holds(true);
            report.line(format!(
                "quotient groupoid with {} objects and {} arrows",
                q.groupoid.objects().order(),
                q.groupoid.arrows().order()
            ));
            report.detail("base_representatives", json!(q.objects.representatives));
            let out = quotient_file(Structure::Gpd(q.groupoid.clone()), &f.metadata.name, q.arrows.representatives);
            emit(&mut report, out, output)?;
        }
        Structure::Cat1(c) => {
            if !is_normal_subcat1(c, s)? {
                report = Report::holds(false);
                report.line("not an ideal closed under s and t");
                report.witnesses.push(json!({ "condition": "normal subcat1" }));
                return Ok(report);
            }
            let q = quotient_cat1(c, s)?;
            report = Report::holds(true);
            report.line(format!("quotient cat1-group of order {}", q.cat1.group().order()));
            let out = quotient_file(Structure::Cat1(q.cat1.clone()), &f.metadata.name, q.quotient.representatives);
            emit(&mut report, out, output)?;
        }
        other => bail!("cannot take a quotient of a {} file", other.kind().name()),
    }
    Ok(report)
}

fn load_gwo(path: &Path) -> Result<Arc<GroupWithOps>> {
    match load(path)?.structure {
        Structure::Gwo(g) => Ok(g),
        other => bail!("{}: expected a gwo file, found kind {}", path.display(), other.kind().name()),
    }
}

pub fn semidirect(a: &Path, b: &Path, action: &Path, bound: usize, output: Option<&Path>) -> Result<Report> {
    let (ga, gb) = (load_gwo(a)?, load_gwo(b)?);
    let acts = match load(action)?.structure {
        Structure::Action(x) => x,
        other => bail!("{}: expected an action file, found kind {}", action.display(), other.kind().name()),
    };
    if **acts.acted() != *ga || **acts.actor() != *gb {
        bail!("the action file acts with a different pair of structures than the ones given");
    }
    check_bound(ga.order() * gb.order(), bound)?;
    let product = acts.semidirect()?;
    let r = product.validate();
    let mut report = from_validation("semidirect product", &r);
    if r.is_valid() {
        report.line("the actions are derived actions");
    } else {
        report.line("the actions are not derived actions");
    }
    let out = StructureFile::new(
        Structure::Gwo(product),
        Metadata {
            name: None,
            provenance: Some("semidirect product".into()),
            representatives: None,
        },
    );
    emit(&mut report, out, output)?;
    Ok(report)
}

#[derive(Debug, Clone, Copy)]
pub enum Target {
    Gpd,
    Cat1,
    XMod,
}

pub fn convert(file: &Path, target: Target, bound: usize, output: Option<&Path>) -> Result<Report> {
    let f = load(file)?;
    if let Some(r) = require_valid(&f)? {
        return Ok(r);
    }
    let (structure, provenance) = match (&f.structure, target) {
        (Structure::XMod(x), Target::Gpd) => {
            check_bound(x.acted().order() * x.actor().order(), bound)?;
            (Structure::Gpd(Arc::new(xmod_to_gpd(x)?)), "groupoid of a crossed module")
        }
        (Structure::Cat1(c), Target::Gpd) => {
            check_bound(c.group().order(), bound)?;
            let x = cat1_to_xmod(c)?;
            (Structure::Gpd(Arc::new(xmod_to_gpd(&x.xmod)?)), "groupoid of a cat1-group")
        }
        (Structure::XMod(x), Target::Cat1) => {
            check_bound(x.acted().order() * x.actor().order(), bound)?;
            (Structure::Cat1(Arc::new(xmod_to_cat1(x)?)), "cat1-group of a crossed module")
        }
        (Structure::Gpd(g), Target::Cat1) => {
            check_bound(g.arrows().order(), bound)?;
            (Structure::Cat1(Arc::new(gpd_to_cat1(g)?)), "cat1-group of a groupoid")
        }
        (Structure::Gpd(g), Target::XMod) => (Structure::XMod(gpd_to_xmod(g)?.xmod), "crossed module of a groupoid"),
        (Structure::Cat1(c), Target::XMod) => (Structure::XMod(cat1_to_xmod(c)?.xmod), "crossed module of a cat1-group"),
        (s, t) => bail!("no conversion from {} to {t:?}", s.kind().name()),
    };
    let r = structure_report(&structure)?;
    let mut report = from_validation(provenance, &r);
    let out = StructureFile::new(
        structure,
        Metadata {
            name: f.metadata.name.clone(),
            provenance: Some(provenance.into()),
            representatives: None,
        },
    );
    emit(&mut report, out, output)?;
    Ok(report)
}

pub fn check_normal(file: &Path, sub: &Path) -> Result<Report> {
    let f = load(file)?;
    let sub = load_sub(sub)?;
    let s = &sub.elements;
    let mut report;
    match &f.structure {
        Structure::Gwo(g) => {
            let (so, id) = (is_subobject(g, s)?, is_ideal(g, s)?);
            report = Report::holds(id);
            report.line(format!("subobject: {so}, ideal: {id}"));
            report.detail("subobject", json!(so));
            report.detail("ideal", json!(id));
        }
        Structure::XMod(x) => {
            let t = base_of(&sub, "crossed module")?;
            let is_sub = is_subxmod(x, s, t)?;
            report = Report::holds(false);
            report.detail("subcrossed_module", json!(is_sub));
            if !is_sub {
                report.line("not a subcrossed module");
                report.witnesses.push(json!({ "condition": "subcrossed module" }));
            } else {
                let n = is_normal_subxmod(x, s, t)?;
                report.verdict = if n.is_normal() { Verdict::Valid } else { Verdict::Invalid };
                report.line(format!("{n}"));
                for c in n.failing() {
                    report.witnesses.push(json!({ "condition": c }));
                }
                report.detail(
                    "conditions",
                    json!({
                        "t_ideal": n.t_ideal,
                        "action_on_s": n.action_on_s,
                        "displacement": n.displacement,
                        "star_on_s": n.star_on_s,
                        "star_by_t": n.star_by_t,
                        "s_ideal": n.s_ideal,
                    }),
                );
            }
        }
        Structure::Gpd(g) => {
            let all: Vec<usize> = g.objects().elements().collect();
            let n0 = sub.base_elements.clone().unwrap_or(all.clone());
            let is_sub = is_subgroupoid(g, s, &n0)?;
            report = Report::holds(false);
            report.detail("subgroupoid", json!(is_sub));
            if !is_sub {
                report.line("not a subgroupoid");
                report.witnesses.push(json!({ "condition": "subgroupoid" }));
            } else {
                let internal = is_internal_normal_subgroupoid(g, s, &n0)?;
                report.verdict = if internal { Verdict::Valid } else { Verdict::Invalid };
                report.line(format!("internal-normal (arrows form an ideal): {internal}"));
                report.detail("internal_normal", json!(internal));
                if n0 == all {
                    let (coset, shifted) = (coset_normality(g, s)?, translation_criterion(g, s)?);
                    report.line(format!("coset normality: {coset}, translation criterion: {shifted}"));
                    report.detail("coset_normal", json!(coset));
                    report.detail("translation_criterion", json!(shifted));
                }
                if !internal {
                    report.witnesses.push(json!({ "condition": "arrows form an ideal" }));
                }
            }
        }
        Structure::Cat1(c) => {
            let n = is_normal_subcat1(c, s)?;
            report = Report::holds(n);
            report.line(format!("normal subcat1-group: {n}"));
            if !n {
                report.witnesses.push(json!({ "condition": "ideal closed under s and t" }));
            }
        }
        other => bail!("normality is not defined for a {} file", other.kind().name()),
    }
    Ok(report)
}

pub fn check_covering(path: &Path) -> Result<Report> {
    let f = load(path)?;
    let Structure::Morphism(m) = &f.structure else {
        bail!("{}: expected a morphism file", path.display());
    };
    let r = morphism_report(m)?;
    if !r.is_valid() {
        let mut out = from_validation(&describe(&f), &r);
        out.line("not a morphism; covering undefined");
        return Ok(out);
    }
    let mut report;
    match m {
        AnyMorphism::XMod(m) => {
            let flag = is_covering_xmod(m);
            let g = is_covering_gpd(&xmod_morphism_to_gpd(m)?)?;
            let c = is_covering_cat1(&xmod_morphism_to_cat1(m)?);
            report = Report::holds(flag);
            report.line(format!("covering: {flag} (as groupoid map: {g}, as cat1 map: {c})"));
            report.detail("transported", json!({ "gpd": g, "cat1": c }));
        }
        AnyMorphism::Gpd(m) => {
            let flag = is_covering_gpd(m)?;
            let x = is_covering_xmod(&gpd_morphism_to_xmod(m)?);
            report = Report::holds(flag);
            report.line(format!("covering: {flag} (as crossed-module map: {x})"));
            report.detail("transported", json!({ "xmod": x }));
        }
        AnyMorphism::Cat1(m) => {
            let flag = is_covering_cat1(m);
            let x = is_covering_xmod(&cat1_morphism_to_xmod(m)?);
            report = Report::holds(flag);
            report.line(format!("covering: {flag} (as crossed-module map: {x})"));
            report.detail("transported", json!({ "xmod": x }));
        }
        AnyMorphism::Gwo(_) => bail!("coverings are defined for crossed modules, groupoids and cat1-groups"),
    }
    if report.verdict == Verdict::Invalid {
        report.witnesses.push(json!({ "condition": "covering" }));
    }
    Ok(report)
}

fn witness_json<M: StructureMap>(w: &IsoWitness<M>, maps: impl Fn(&M) -> Value) -> Value {
    json!({ "forward": maps(w.forward()), "backward": maps(w.backward()) })
}

pub fn roundtrip(file: &Path) -> Result<Report> {
    let f = load(file)?;
    if let Some(r) = require_valid(&f)? {
        return Ok(r);
    }
    let mut report = Report::holds(true);
    let fail = |report: &mut Report, what: &str, e: Error| {
        report.verdict = Verdict::Invalid;
        report.line(format!("{what}: {e}"));
        report.witnesses.push(json!({ "roundtrip": what, "error": e.to_string() }));
    };
    let xmod_maps = |m: &gwops::XModMorphism| json!({ "top": m.f.map(), "bottom": m.g.map() });
    match &f.structure {
        Structure::XMod(x) => {
            match roundtrip_xmod_gpd(x) {
                Ok(w) => {
                    report.line("crossed module ≅ crossed module of its groupoid: verified");
                    report.detail("via_groupoid", witness_json(&w, xmod_maps));
                }
                Err(e) => fail(&mut report, "via groupoid", e),
            }
            match roundtrip_xmod_cat1(x) {
                Ok(w) => {
                    report.line("crossed module ≅ crossed module of its cat1-group: verified");
                    report.detail("via_cat1", witness_json(&w, xmod_maps));
                }
                Err(e) => fail(&mut report, "via cat1", e),
            }
        }
        Structure::Gpd(g) => match roundtrip_gpd(g) {
            Ok(w) => {
                report.line("groupoid ≅ groupoid of its crossed module: verified");
                report.detail(
                    "via_xmod",
                    witness_json(&w, |m| json!({ "arrows": m.arrows.map(), "objects": m.objects.map() })),
                );
            }
            Err(e) => fail(&mut report, "via crossed module", e),
        },
        Structure::Cat1(c) => match roundtrip_cat1(c) {
            Ok(w) => {
                report.line("cat1-group ≅ cat1-group of its crossed module: verified");
                report.detail("via_xmod", witness_json(&w, |m| json!({ "map": m.map.map() })));
            }
            Err(e) => fail(&mut report, "via crossed module", e),
        },
        other => bail!("no round trip for a {} file", other.kind().name()),
    }
    Ok(report)
}

pub fn corpus_verify(profile: &str, bound: usize) -> Result<Report> {
    let p = Profile::from_name(profile).with_context(|| {
        let names: Vec<&str> = Profile::ALL.iter().map(|p| p.name()).collect();
        format!("unknown profile {profile:?}; expected one of {}", names.join(", "))
    })?;
    let corpus = generate_corpus(p, bound)?;
    let tallies = audit_corpus(&corpus, bound);
    let failed: usize = tallies.iter().map(|t| t.failed).sum();
    let checked: usize = tallies.iter().map(|t| t.checked).sum();
    let mut report = Report::holds(failed == 0);
    report.line(format!(
        "profile {}: {} objects, {} crossed modules, {} groupoids, {} cat1-groups",
        p.name(),
        corpus.objects.len(),
        corpus.xmods.len(),
        corpus.groupoids.len(),
        corpus.cat1s.len()
    ));
    for t in &tallies {
        report.line(format!("  {t}"));
        for f in &t.failures {
            report.line(format!("    {f}"));
            report.witnesses.push(json!({ "theorem": t.theorem, "failure": f }));
        }
    }
    report.line(format!("{} theorems, {checked} checks, {failed} failed", tallies.len()));
    report.detail(
        "theorems",
        Value::Array(
            tallies
                .iter()
                .map(|t| json!({ "theorem": t.theorem, "checked": t.checked, "failed": t.failed }))
                .collect(),
        ),
    );
    Ok(report)
}
