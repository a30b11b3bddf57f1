//! Crossed modules: validation, subcrossed modules, normality, quotients,
//! kernels, the isomorphism theorem and coverings.

use std::fmt;
use std::sync::Arc;

use crate::actions::{quotient_action, ActionSet};
use crate::error::{Error, Result};
use crate::gwo::{GroupWithOps, TableCell};
use crate::iso::{all_isomorphisms_with, IsoWitness, StructureMap};
use crate::morphism::Morphism;
use crate::report::{first_failure, ValidationReport, Violation};
use crate::subset::{is_ideal, is_subobject, mask_of, quotient, Quotient, Subset};

/// `(A, B, α)` with a family of actions of `B` on `A` and boundary `α: A → B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    action: ActionSet,
    boundary: Morphism,
}

/// A single table entry of a crossed module, for corruption tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XModCell {
    Acted(TableCell),
    Actor(TableCell),
    Dot(usize, usize),
    Star(usize, usize, usize),
    Boundary(usize),
}

impl CrossedModule {
    pub fn new(action: ActionSet, boundary: Morphism) -> Result<Self> {
        if **boundary.dom() != **action.acted() || **boundary.cod() != **action.actor() {
            return Err(Error::Precondition(
                "boundary must run from the acted-on object to the acting one".into(),
            ));
        }
        Ok(CrossedModule { action, boundary })
    }

    /// `(N, G, inclusion)` for an ideal `N` of `G`, acted on by conjugation
    /// and by the operations.
    pub fn from_ideal(parent: &Arc<GroupWithOps>, ideal: &[usize]) -> Result<Self> {
        let (action, inc) = ActionSet::on_ideal(parent, ideal)?;
        Self::new(action, inc)
    }

    /// `(G, G, id)` with conjugation and the operations as actions.
    pub fn identity_on(g: &Arc<GroupWithOps>) -> Result<Self> {
        let all: Vec<usize> = g.elements().collect();
        Self::from_ideal(g, &all)
    }

    /// `(A, B, 0)` with the trivial action; a crossed module iff `A` is singular.
    pub fn trivial_action(acted: Arc<GroupWithOps>, actor: Arc<GroupWithOps>) -> Result<Self> {
        let action = ActionSet::trivial(actor.clone(), acted.clone())?;
        Self::new(action, Morphism::zero(acted, actor)?)
    }

    pub fn action(&self) -> &ActionSet {
        &self.action
    }

    pub fn acted(&self) -> &Arc<GroupWithOps> {
        self.action.acted()
    }

    pub fn actor(&self) -> &Arc<GroupWithOps> {
        self.action.actor()
    }

    pub fn boundary(&self) -> &Morphism {
        &self.boundary
    }

    #[inline]
    pub fn alpha(&self, a: usize) -> usize {
        self.boundary.apply(a)
    }

    /// Both carriers valid, the actions derived, `α` a morphism, then CM1–CM4.
    pub fn validate(&self) -> Result<ValidationReport> {
        let (a, b, act) = (&**self.acted(), &**self.actor(), &self.action);
        let mut report = ValidationReport::new();
        report.absorb("acted", a.validate());
        report.absorb("actor", b.validate());
        report.absorb("derived-action", self.action.derived_action_report()?);
        if let Some(v) = self.boundary.check() {
            report.push(v.prefixed("boundary"));
        }
        let (na, nb) = (a.order(), b.order());
        let al = |x| self.alpha(x);
        let pairs = |n1: usize, n2: usize, f: &dyn Fn(usize, usize) -> bool| {
            first_failure(n1.max(n2), 2, |t| t[0] >= n1 || t[1] >= n2 || f(t[0], t[1]))
        };
        if let Some(w) = pairs(nb, na, &|y, x| al(act.dot(y, x)) == b.conj(y, al(x))) {
            report.push(Violation::new("CM1", w, "α(b·a) != b + α(a) − b"));
        }
        if let Some(w) = pairs(na, na, &|x, x1| act.dot(al(x), x1) == a.conj(x, x1)) {
            report.push(Violation::new("CM2", w, "α(a)·a′ != a + a′ − a"));
        }
        let sig = a.signature();
        for k in 0..sig.binary_count() {
            let s = &sig.binary()[k];
            if let Some(w) = pairs(na, na, &|x, x1| act.star(k, al(x), x1) == a.op(k, x, x1)) {
                report.push(Violation::new(format!("CM3[{s}]"), w, format!("α(a) {s} a′ != a {s} a′")));
            }
            if let Some(w) = pairs(nb, na, &|y, x| al(act.star(k, y, x)) == b.op(k, y, al(x))) {
                report.push(Violation::new(format!("CM4[{s}]"), w, format!("α(b {s} a) != b {s} α(a)")));
            }
            if let Some(w) = pairs(na, nb, &|x, y| al(act.star_right(k, x, y)) == b.op(k, al(x), y)) {
                report.push(Violation::new(format!("CM4[{s}]"), w, format!("α(a {s} b) != α(a) {s} b")));
            }
        }
        Ok(report)
    }

    pub fn is_valid(&self) -> Result<bool> {
        Ok(self.validate()?.is_valid())
    }

    /// Every table entry, in a fixed order.
    pub fn cells(&self) -> Vec<XModCell> {
        let (na, nb) = (self.acted().order(), self.actor().order());
        let mut out: Vec<XModCell> = self.acted().cells().into_iter().map(XModCell::Acted).collect();
        out.extend(self.actor().cells().into_iter().map(XModCell::Actor));
        for y in 0..nb {
            for x in 0..na {
                out.push(XModCell::Dot(y, x));
            }
        }
        for k in 0..self.acted().signature().binary_count() {
            for y in 0..nb {
                for x in 0..na {
                    out.push(XModCell::Star(k, y, x));
                }
            }
        }
        out.extend((0..na).map(XModCell::Boundary));
        out
    }

    /// Largest admissible value for a cell, plus one.
    pub fn cell_range(&self, cell: XModCell) -> usize {
        match cell {
            XModCell::Actor(_) | XModCell::Boundary(_) => self.actor().order(),
            _ => self.acted().order(),
        }
    }

    pub fn cell_value(&self, cell: XModCell) -> usize {
        match cell {
            XModCell::Acted(c) => self.acted().cell_value(c),
            XModCell::Actor(c) => self.actor().cell_value(c),
            XModCell::Dot(y, x) => self.action.dot(y, x),
            XModCell::Star(k, y, x) => self.action.star(k, y, x),
            XModCell::Boundary(x) => self.alpha(x),
        }
    }

    /// Copy with one entry replaced; the result is not validated.
    pub fn with_cell(&self, cell: XModCell, value: usize) -> Result<Self> {
        let (mut a, mut b) = (self.acted().clone(), self.actor().clone());
        let mut action = self.action.clone();
        let mut map = self.boundary.map().to_vec();
        match cell {
            XModCell::Acted(c) => a = Arc::new(a.with_cell(c, value)?),
            XModCell::Actor(c) => b = Arc::new(b.with_cell(c, value)?),
            XModCell::Dot(y, x) => action = action.with_cell(None, y, x, value)?,
            XModCell::Star(k, y, x) => action = action.with_cell(Some(k), y, x, value)?,
            XModCell::Boundary(x) => {
                crate::error::check_index(value, b.order())?;
                map[x] = value;
            }
        }
        let action = action.with_actor_acted(b.clone(), a.clone())?;
        Self::new(action, Morphism::new(a, b, map)?)
    }
}

/// A pair of morphisms `(f: A → A′, g: B → B′)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XModMorphism {
    pub dom: Arc<CrossedModule>,
    pub cod: Arc<CrossedModule>,
    pub f: Morphism,
    pub g: Morphism,
}

impl XModMorphism {
    pub fn new(dom: Arc<CrossedModule>, cod: Arc<CrossedModule>, f: Morphism, g: Morphism) -> Result<Self> {
        if **f.dom() != **dom.acted() || **f.cod() != **cod.acted() || **g.dom() != **dom.actor() || **g.cod() != **cod.actor() {
            return Err(Error::Precondition("component maps do not match the crossed modules".into()));
        }
        Ok(XModMorphism { dom, cod, f, g })
    }

    pub fn from_maps(dom: Arc<CrossedModule>, cod: Arc<CrossedModule>, f: Vec<usize>, g: Vec<usize>) -> Result<Self> {
        let f = Morphism::new(dom.acted().clone(), cod.acted().clone(), f)?;
        let g = Morphism::new(dom.actor().clone(), cod.actor().clone(), g)?;
        Self::new(dom, cod, f, g)
    }

    pub fn identity(x: Arc<CrossedModule>) -> Self {
        XModMorphism {
            f: Morphism::identity(x.acted().clone()),
            g: Morphism::identity(x.actor().clone()),
            dom: x.clone(),
            cod: x,
        }
    }

    pub fn zero(dom: Arc<CrossedModule>, cod: Arc<CrossedModule>) -> Result<Self> {
        let f = Morphism::zero(dom.acted().clone(), cod.acted().clone())?;
        let g = Morphism::zero(dom.actor().clone(), cod.actor().clone())?;
        Self::new(dom, cod, f, g)
    }

    pub fn check(&self) -> Option<Violation> {
        if let Some(v) = self.f.check() {
            return Some(v.prefixed("f"));
        }
        if let Some(v) = self.g.check() {
            return Some(v.prefixed("g"));
        }
        let (d, c) = (&self.dom, &self.cod);
        let (na, nb) = (d.acted().order(), d.actor().order());
        if let Some(w) = first_failure(na, 1, |t| self.g.apply(d.alpha(t[0])) == c.alpha(self.f.apply(t[0]))) {
            return Some(Violation::new("commutes-with-boundary", w, "g(α(a)) != α′(f(a))"));
        }
        let n = na.max(nb);
        let (f, g) = (&self.f, &self.g);
        let in_range = |t: &[usize]| t[0] < nb && t[1] < na;
        if let Some(w) = first_failure(n, 2, |t| {
            !in_range(t) || f.apply(d.action().dot(t[0], t[1])) == c.action().dot(g.apply(t[0]), f.apply(t[1]))
        }) {
            return Some(Violation::new("preserves-action", w, "f(b·a) != g(b)·f(a)"));
        }
        for k in 0..d.acted().signature().binary_count() {
            if let Some(w) = first_failure(n, 2, |t| {
                !in_range(t) || f.apply(d.action().star(k, t[0], t[1])) == c.action().star(k, g.apply(t[0]), f.apply(t[1]))
            }) {
                let s = &d.acted().signature().binary()[k];
                return Some(Violation::new(format!("preserves-action[{s}]"), w, format!("f(b {s} a) != g(b) {s} f(a)")));
            }
        }
        None
    }

    pub fn is_morphism(&self) -> bool {
        self.check().is_none()
    }
}

impl StructureMap for XModMorphism {
    fn verify(&self) -> Result<()> {
        match self.check() {
            None => Ok(()),
            Some(v) => Err(Error::Verification(v.to_string())),
        }
    }

    fn then(&self, next: &Self) -> Result<Self> {
        if *self.cod != *next.dom {
            return Err(Error::Precondition("composing crossed-module maps whose ends do not match".into()));
        }
        Ok(XModMorphism {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            f: self.f.then(&next.f)?,
            g: self.g.then(&next.g)?,
        })
    }

    fn is_identity(&self) -> bool {
        *self.dom == *self.cod && self.f.is_identity() && self.g.is_identity()
    }
}

/// Whether `(S, T)` is a subcrossed module: both subobjects, `α(S) ⊆ T`, and
/// `T` acting on `S` by restriction.
pub fn is_subxmod(x: &CrossedModule, s: &[usize], t: &[usize]) -> Result<bool> {
    if !is_subobject(x.acted(), s)? || !is_subobject(x.actor(), t)? {
        return Ok(false);
    }
    let tm = mask_of(x.actor().order(), t)?;
    if !s.iter().all(|&a| tm[x.alpha(a)]) {
        return Ok(false);
    }
    let sm = mask_of(x.acted().order(), s)?;
    let act = x.action();
    let kc = x.acted().signature().binary_count();
    Ok(t.iter().all(|&b| {
        s.iter()
            .all(|&a| sm[act.dot(b, a)] && (0..kc).all(|k| sm[act.star(k, b, a)]))
    }))
}

/// Outcome of each normality condition for a subcrossed module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalityReport {
    /// `T` is an ideal of `B`.
    pub t_ideal: bool,
    /// `b·s ∈ S`.
    pub action_on_s: bool,
    /// `(t·a) − a ∈ S`.
    pub displacement: bool,
    /// `b ⋆ s ∈ S`.
    pub star_on_s: bool,
    /// `t ⋆ a ∈ S`.
    pub star_by_t: bool,
    /// `S` is an ideal of `A`; implied by the other five.
    pub s_ideal: bool,
}

impl NormalityReport {
    pub fn is_normal(&self) -> bool {
        self.t_ideal && self.action_on_s && self.displacement && self.star_on_s && self.star_by_t
    }

    pub fn failing(&self) -> Vec<&'static str> {
        [
            ("NCM1", self.t_ideal),
            ("NCM2", self.action_on_s),
            ("NCM3", self.displacement),
            ("NCM4", self.star_on_s),
            ("NCM5", self.star_by_t),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n)
        .collect()
    }
}

impl fmt::Display for NormalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_normal() {
            write!(f, "normal (S is an ideal: {})", self.s_ideal)
        } else {
            write!(f, "not normal, failing {}", self.failing().join(", "))
        }
    }
}

/// Evaluates NCM1–NCM5 for a subcrossed module `(S, T)`.
pub fn is_normal_subxmod(x: &CrossedModule, s: &[usize], t: &[usize]) -> Result<NormalityReport> {
    if !is_subxmod(x, s, t)? {
        return Err(Error::Precondition(format!("({s:?}, {t:?}) is not a subcrossed module")));
    }
    let (a, b, act) = (x.acted(), x.actor(), x.action());
    let sm = mask_of(a.order(), s)?;
    let kc = a.signature().binary_count();
    let r = NormalityReport {
        t_ideal: is_ideal(b, t)?,
        action_on_s: b.elements().all(|y| s.iter().all(|&z| sm[act.dot(y, z)])),
        displacement: t.iter().all(|&y| a.elements().all(|z| sm[a.sub(act.dot(y, z), z)])),
        star_on_s: (0..kc).all(|k| b.elements().all(|y| s.iter().all(|&z| sm[act.star(k, y, z)]))),
        star_by_t: (0..kc).all(|k| t.iter().all(|&y| a.elements().all(|z| sm[act.star(k, y, z)]))),
        s_ideal: is_ideal(a, s)?,
    };
    if r.is_normal() && !r.s_ideal {
        return Err(Error::Verification(format!("normal subcrossed module {s:?} is not an ideal")));
    }
    Ok(r)
}

/// A pair of subsets of a crossed module with its flags.
#[derive(Debug, Clone)]
pub struct SubXMod {
    pub parent: Arc<CrossedModule>,
    pub s: Subset,
    pub t: Subset,
    pub is_sub: bool,
    pub is_normal: bool,
}

impl SubXMod {
    pub fn new(parent: Arc<CrossedModule>, s: Vec<usize>, t: Vec<usize>) -> Result<Self> {
        let s = Subset::new(parent.acted().clone(), s)?;
        let t = Subset::new(parent.actor().clone(), t)?;
        let is_sub = is_subxmod(&parent, s.elements(), t.elements())?;
        let is_normal = is_sub && is_normal_subxmod(&parent, s.elements(), t.elements())?.is_normal();
        Ok(SubXMod {
            parent,
            s,
            t,
            is_sub,
            is_normal,
        })
    }

    /// The subcrossed module as a crossed module in its own right, with its
    /// inclusion.
    pub fn structure(&self) -> Result<(Arc<CrossedModule>, XModMorphism)> {
        if !self.is_sub {
            return Err(Error::Precondition("not a subcrossed module".into()));
        }
        let r = self.parent.action().restrict(self.s.elements(), self.t.elements())?;
        let (sa, tb) = (r.action.acted().clone(), r.action.actor().clone());
        let sigma = self
            .parent
            .boundary()
            .restrict(self.s.elements(), sa, self.t.elements(), tb)?;
        let sub = Arc::new(CrossedModule::new(r.action, sigma)?);
        let inc = XModMorphism::new(sub.clone(), self.parent.clone(), r.acted_inclusion, r.actor_inclusion)?;
        Ok((sub, inc))
    }
}

/// `X/(S, T)` with its projection.
#[derive(Debug, Clone)]
pub struct QuotientXMod {
    pub xmod: Arc<CrossedModule>,
    pub acted: Quotient,
    pub actor: Quotient,
    pub projection: XModMorphism,
}

/// `(A/S, B/T, α*)` with `α*([a]) = [α(a)]` and the induced actions.
pub fn quotient_xmod(x: &Arc<CrossedModule>, s: &[usize], t: &[usize]) -> Result<QuotientXMod> {
    let report = is_normal_subxmod(x, s, t)?;
    if !report.is_normal() {
        return Err(Error::Precondition(format!("({s:?}, {t:?}) is {report}")));
    }
    let qa = quotient_action(x.action(), s, t)?;
    let (acted_q, actor_q) = (qa.acted, qa.actor);
    let boundary = Morphism::from_fn(acted_q.structure.clone(), actor_q.structure.clone(), |i| {
        actor_q.class_of(x.alpha(acted_q.representatives[i]))
    })?;
    let q = Arc::new(CrossedModule::new(qa.action, boundary)?);
    let projection = XModMorphism::new(
        x.clone(),
        q.clone(),
        Morphism::new(x.acted().clone(), q.acted().clone(), acted_q.projection.map().to_vec())?,
        Morphism::new(x.actor().clone(), q.actor().clone(), actor_q.projection.map().to_vec())?,
    )?;
    Ok(QuotientXMod {
        xmod: q,
        acted: acted_q,
        actor: actor_q,
        projection,
    })
}

/// `(Ker f, Ker g)`, which is always a normal subcrossed module.
pub fn xmod_kernel(m: &XModMorphism) -> Result<SubXMod> {
    let sub = SubXMod::new(m.dom.clone(), m.f.kernel(), m.g.kernel())?;
    if !sub.is_normal {
        return Err(Error::Verification("kernel of a crossed-module morphism is not normal".into()));
    }
    Ok(sub)
}

/// The image of a morphism and the isomorphism from the quotient by its kernel.
#[derive(Debug, Clone)]
pub struct IsomorphismTheorem {
    pub kernel: SubXMod,
    pub quotient: QuotientXMod,
    pub image: SubXMod,
    pub image_xmod: Arc<CrossedModule>,
    pub witness: IsoWitness<XModMorphism>,
}

/// `X/Ker(f,g) ≅ (f(A), g(B), α′|)` via `[a] ↦ f(a)`, `[b] ↦ g(b)`.
pub fn isomorphism_theorem(m: &XModMorphism) -> Result<IsomorphismTheorem> {
    m.verify()?;
    let kernel = xmod_kernel(m)?;
    let quotient = quotient_xmod(&m.dom, kernel.s.elements(), kernel.t.elements())?;
    let image = SubXMod::new(m.cod.clone(), m.f.image(), m.g.image())?;
    let (image_xmod, _) = image.structure()?;
    let q = &quotient.xmod;
    let index_in = |elems: &[usize], v: usize| elems.binary_search(&v).expect("value lies in the image");
    let fwd_f: Vec<usize> = quotient
        .acted
        .representatives
        .iter()
        .map(|&r| index_in(image.s.elements(), m.f.apply(r)))
        .collect();
    let fwd_g: Vec<usize> = quotient
        .actor
        .representatives
        .iter()
        .map(|&r| index_in(image.t.elements(), m.g.apply(r)))
        .collect();
    let back = |map: &Morphism, elems: &[usize], q: &Quotient| -> Vec<usize> {
        elems
            .iter()
            .map(|&v| q.class_of(map.preimage(&[v])[0]))
            .collect()
    };
    let bwd_f = back(&m.f, image.s.elements(), &quotient.acted);
    let bwd_g = back(&m.g, image.t.elements(), &quotient.actor);
    let forward = XModMorphism::from_maps(q.clone(), image_xmod.clone(), fwd_f, fwd_g)?;
    let backward = XModMorphism::from_maps(image_xmod.clone(), q.clone(), bwd_f, bwd_g)?;
    let witness = IsoWitness::new(forward, backward)?;
    Ok(IsomorphismTheorem {
        kernel,
        quotient,
        image,
        image_xmod,
        witness,
    })
}

/// `A/S ⋊ B/T ≅ (A ⋊ B)/(S ⋊ T)` via `([a],[b]) ↦ [(a,b)]`.
pub fn semidirect_quotient_iso(x: &Arc<CrossedModule>, s: &[usize], t: &[usize]) -> Result<IsoWitness<Morphism>> {
    let q = quotient_xmod(x, s, t)?;
    let left = q.xmod.action().semidirect()?;
    let whole = x.action().semidirect()?;
    let nb = x.actor().order();
    let pairs: Vec<usize> = s
        .iter()
        .flat_map(|&a| t.iter().map(move |&b| GroupWithOps::pair_index(a, b, nb)))
        .collect();
    let right = quotient(&whole, &pairs)?;
    let qnb = q.xmod.actor().order();
    let phi = Morphism::from_fn(left, right.structure.clone(), |e| {
        let (i, j) = GroupWithOps::split_index(e, qnb);
        right.class_of(GroupWithOps::pair_index(
            q.acted.representatives[i],
            q.actor.representatives[j],
            nb,
        ))
    })?;
    IsoWitness::from_bijection(phi)
}

/// A crossed-module morphism is a covering iff its top map is an isomorphism.
pub fn is_covering_xmod(m: &XModMorphism) -> bool {
    m.f.is_isomorphism()
}

/// Some isomorphism of crossed modules `x → y`, searched componentwise.
pub fn find_xmod_isomorphism(x: &Arc<CrossedModule>, y: &Arc<CrossedModule>) -> Option<IsoWitness<XModMorphism>> {
    let fs = all_isomorphisms_with(x.acted(), y.acted(), &[]);
    if fs.is_empty() {
        return None;
    }
    for g in all_isomorphisms_with(x.actor(), y.actor(), &[]) {
        for f in &fs {
            let Ok(m) = XModMorphism::new(x.clone(), y.clone(), f.clone(), g.clone()) else {
                return None;
            };
            if !m.is_morphism() {
                continue;
            }
            let back = XModMorphism::new(y.clone(), x.clone(), f.inverse()?, g.inverse()?).ok()?;
            if let Ok(w) = IsoWitness::new(m, back) {
                return Some(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cyclic_group, cyclic_ring};
    use crate::table::Table;

    fn z4x() -> Arc<CrossedModule> {
        Arc::new(CrossedModule::identity_on(&Arc::new(cyclic_ring(4))).unwrap())
    }

    #[test]
    fn ideal_inclusion_and_identity_are_crossed_modules() {
        let z4 = Arc::new(cyclic_ring(4));
        let x = CrossedModule::from_ideal(&z4, &[0, 2]).unwrap();
        assert!(x.validate().unwrap().is_valid());
        let id = z4x();
        assert!(id.is_valid().unwrap());
        assert!((0..4).all(|b| (0..4).all(|a| id.action().dot(b, a) == a)));
    }

    #[test]
    fn translation_fails_at_derived_action_stage() {
        let z2 = Arc::new(cyclic_group(2));
        let act = ActionSet::new(z2.clone(), z2.clone(), Table::from_fn(2, 2, |b, a| (a + b) % 2), vec![]).unwrap();
        let x = CrossedModule::new(act, Morphism::identity(z2)).unwrap();
        let r = x.validate().unwrap();
        assert!(r.mentions("derived-action"));
    }

    #[test]
    fn trivial_action_needs_singular_acted() {
        let z2 = Arc::new(cyclic_ring(2));
        let bad = CrossedModule::trivial_action(z2.clone(), z2.clone()).unwrap();
        assert!(bad.validate().unwrap().mentions("CM3"));
        let zr = Arc::new(crate::corpus::zero_ring(&cyclic_group(2)));
        let good = CrossedModule::trivial_action(zr, z2).unwrap();
        assert!(good.is_valid().unwrap());
    }

    #[test]
    fn subcrossed_modules() {
        let x = z4x();
        assert!(is_subxmod(&x, &[0, 2], &[0, 2]).unwrap());
        assert!(is_subxmod(&x, &[0], &[0]).unwrap());
        assert!(!is_subxmod(&x, &[0, 2], &[0]).unwrap());
    }

    #[test]
    fn normality_conditions() {
        let x = z4x();
        let r = is_normal_subxmod(&x, &[0, 2], &[0, 2]).unwrap();
        assert!(r.is_normal() && r.s_ideal);
        let r = is_normal_subxmod(&x, &[0, 2], &[0, 1, 2, 3]).unwrap();
        assert!(r.t_ideal);
        assert!(!r.star_by_t);
        assert_eq!(r.failing(), vec!["NCM5"]);
        assert!(is_normal_subxmod(&x, &[0, 2], &[0]).is_err());
    }

    #[test]
    fn quotient_by_two_is_z2_identity() {
        let x = z4x();
        let q = quotient_xmod(&x, &[0, 2], &[0, 2]).unwrap();
        assert!(q.xmod.is_valid().unwrap());
        let z2 = Arc::new(CrossedModule::identity_on(&Arc::new(cyclic_ring(2))).unwrap());
        assert!(find_xmod_isomorphism(&q.xmod, &z2).is_some());
        assert!(q.projection.is_morphism());
        let k = xmod_kernel(&q.projection).unwrap();
        assert_eq!(k.s.elements(), &[0, 2]);
        assert_eq!(k.t.elements(), &[0, 2]);
    }

    #[test]
    fn extreme_quotients_and_kernels() {
        let x = z4x();
        let q = quotient_xmod(&x, &[0], &[0]).unwrap();
        assert!(find_xmod_isomorphism(&q.xmod, &x).is_some());
        let q = quotient_xmod(&x, &[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap();
        assert_eq!((q.xmod.acted().order(), q.xmod.actor().order()), (1, 1));
        let k = xmod_kernel(&XModMorphism::identity(x.clone())).unwrap();
        assert_eq!(k.s.elements(), &[0]);
        let k = xmod_kernel(&XModMorphism::zero(x.clone(), x.clone()).unwrap()).unwrap();
        assert_eq!(k.s.len(), 4);
        assert_eq!(k.t.len(), 4);
    }

    #[test]
    fn isomorphism_theorem_for_reduction() {
        let x = z4x();
        let y = Arc::new(CrossedModule::identity_on(&Arc::new(cyclic_ring(2))).unwrap());
        let m = XModMorphism::from_maps(x, y.clone(), vec![0, 1, 0, 1], vec![0, 1, 0, 1]).unwrap();
        assert!(m.is_morphism());
        let th = isomorphism_theorem(&m).unwrap();
        assert_eq!(th.kernel.s.elements(), &[0, 2]);
        assert_eq!(th.image.s.len(), 2);
        assert_eq!(th.witness.forward().f.map(), &[0, 1]);
        let id = isomorphism_theorem(&XModMorphism::identity(y)).unwrap();
        assert_eq!(id.quotient.xmod.acted().order(), 2);
    }

    #[test]
    fn semidirect_quotients() {
        let x = z4x();
        let w = semidirect_quotient_iso(&x, &[0, 2], &[0, 2]).unwrap();
        assert_eq!(w.forward().dom().order(), 4);
        let w = semidirect_quotient_iso(&x, &[0], &[0]).unwrap();
        assert!(w.forward().map().iter().enumerate().all(|(i, &j)| i == j));
        let w = semidirect_quotient_iso(&x, &[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap();
        assert_eq!(w.forward().dom().order(), 1);
    }

    #[test]
    fn coverings() {
        let z4 = Arc::new(cyclic_ring(4));
        let x = Arc::new(CrossedModule::from_ideal(&z4, &[0, 2]).unwrap());
        let z2 = Arc::new(cyclic_ring(2));
        let zero2 = Arc::new(crate::corpus::zero_ring(&cyclic_group(2)));
        let act = ActionSet::new(
            z2.clone(),
            zero2.clone(),
            Table::from_fn(2, 2, |_, a| a),
            vec![Table::from_fn(2, 2, |b, a| a * b)],
        )
        .unwrap();
        let y = Arc::new(CrossedModule::new(act, Morphism::zero(zero2, z2).unwrap()).unwrap());
        assert!(y.is_valid().unwrap());
        assert!(is_covering_xmod(&XModMorphism::identity(x.clone())));
        let q = quotient_xmod(&z4x(), &[0, 2], &[0, 2]).unwrap();
        assert!(!is_covering_xmod(&q.projection));
        let m = XModMorphism::from_maps(x, y, vec![0, 1], vec![0, 1, 0, 1]).unwrap();
        assert!(m.is_morphism(), "{:?}", m.check());
        assert!(is_covering_xmod(&m));
    }

    #[test]
    fn every_cell_mutation_of_z4_identity_is_caught_or_valid() {
        let x = z4x();
        let cells = x.cells();
        let mut caught = 0;
        for &c in &cells {
            let v = x.cell_value(c);
            let w = (v + 1) % x.cell_range(c);
            let y = x.with_cell(c, w).unwrap();
            if !y.is_valid().unwrap() {
                caught += 1;
            }
        }
        assert_eq!(caught, cells.len());
    }
}
