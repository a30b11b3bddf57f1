//! The functors between crossed modules, internal groupoids and cat¹-groups,
//! their natural isomorphisms, and the transport of normal subobjects,
//! quotients and coverings along them.
//!
//! Semidirect products use the pair encoding `(a, b) ↦ a·|B| + b`.

use std::sync::Arc;

use crate::actions::ActionSet;
use crate::cat1::{is_covering_cat1, is_normal_subcat1, quotient_cat1, Cat1Group, Cat1Morphism};
use crate::error::{Error, Result};
use crate::gpd::{internal_quotient, is_covering_gpd, is_internal_normal_subgroupoid, GpdMorphism, InternalGroupoid};
use crate::gwo::GroupWithOps;
use crate::iso::{IsoWitness, StructureMap};
use crate::morphism::Morphism;
use crate::subset::{quotient, substructure};
use crate::table::Table;
use crate::xmod::{is_covering_xmod, is_normal_subxmod, is_subxmod, quotient_xmod, CrossedModule, NormalityReport, XModMorphism};

fn positions(n: usize, elems: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in elems.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

fn lookup(pos: &[usize], v: usize, what: &str) -> Result<usize> {
    match pos[v] {
        usize::MAX => Err(Error::Verification(format!("{v} falls outside {what}"))),
        p => Ok(p),
    }
}

/// The crossed module of an internal groupoid, with `kernel[i]` the arrow
/// that element `i` of the top object stands for.
#[derive(Debug, Clone)]
pub struct XModOfGroupoid {
    pub xmod: Arc<CrossedModule>,
    pub kernel: Vec<usize>,
}

/// `(Ker d₀, G₀, d₁|)` with `b·a = ε(b) + a − ε(b)` and `b ⋆ a = ε(b) ⋆ a`.
pub fn gpd_to_xmod(g: &InternalGroupoid) -> Result<XModOfGroupoid> {
    let g1 = g.arrows();
    let kernel = g.source_map().kernel();
    let (a, inc) = substructure(g1, &kernel)?;
    let b = g.objects().clone();
    let pos = positions(g1.order(), &kernel);
    let (nb, na) = (b.order(), a.order());
    let mut dot = Table::from_fn(nb, na, |_, _| 0);
    let mut star = Vec::new();
    for y in 0..nb {
        for x in 0..na {
            dot.set(y, x, lookup(&pos, g1.conj(g.eps(y), kernel[x]), "Ker d₀")?);
        }
    }
    for k in 0..g1.signature().binary_count() {
        let mut t = Table::from_fn(nb, na, |_, _| 0);
        for y in 0..nb {
            for x in 0..na {
                t.set(y, x, lookup(&pos, g1.op(k, g.eps(y), kernel[x]), "Ker d₀")?);
            }
        }
        star.push(t);
    }
    let action = ActionSet::new(b.clone(), a.clone(), dot, star)?;
    let boundary = Morphism::from_fn(a, b, |x| g.d1(inc.apply(x)))?;
    Ok(XModOfGroupoid {
        xmod: Arc::new(CrossedModule::new(action, boundary)?),
        kernel,
    })
}

/// Arrows `A ⋊ B`, objects `B`, `d₀(a,b) = b`, `d₁(a,b) = α(a) + b`, `ε(b) = (0,b)`.
pub fn xmod_to_gpd(x: &CrossedModule) -> Result<InternalGroupoid> {
    let arrows = x.action().semidirect()?;
    let b = x.actor().clone();
    let nb = b.order();
    let z = x.acted().zero();
    let d0 = Morphism::from_fn(arrows.clone(), b.clone(), |e| GroupWithOps::split_index(e, nb).1)?;
    let d1 = Morphism::from_fn(arrows.clone(), b.clone(), |e| {
        let (p, q) = GroupWithOps::split_index(e, nb);
        b.add(x.alpha(p), q)
    })?;
    let eps = Morphism::from_fn(b.clone(), arrows, |y| GroupWithOps::pair_index(z, y, nb))?;
    InternalGroupoid::new(d0, d1, eps)
}

/// `(A ⋊ B, s, t)` with `s(a,b) = (0,b)` and `t(a,b) = (0, α(a) + b)`.
pub fn xmod_to_cat1(x: &CrossedModule) -> Result<Cat1Group> {
    let g = x.action().semidirect()?;
    let b = x.actor();
    let nb = b.order();
    let z = x.acted().zero();
    let s = Morphism::from_fn(g.clone(), g.clone(), |e| {
        GroupWithOps::pair_index(z, GroupWithOps::split_index(e, nb).1, nb)
    })?;
    let t = Morphism::from_fn(g.clone(), g.clone(), |e| {
        let (p, q) = GroupWithOps::split_index(e, nb);
        GroupWithOps::pair_index(z, b.add(x.alpha(p), q), nb)
    })?;
    Cat1Group::new(s, t)
}

/// The crossed module of a cat¹-group, with the elements of `Ker s` and
/// `Im s` that its two objects stand for.
#[derive(Debug, Clone)]
pub struct XModOfCat1 {
    pub xmod: Arc<CrossedModule>,
    pub ker_s: Vec<usize>,
    pub im_s: Vec<usize>,
}

/// `(Ker s, Im s, t|)` with `s(g)·k = s(g) + k − s(g)` and `s(g) ⋆ k`.
pub fn cat1_to_xmod(c: &Cat1Group) -> Result<XModOfCat1> {
    let g = c.group();
    let (ker_s, im_s) = (c.ker_s(), c.image_s());
    let (a, _) = substructure(g, &ker_s)?;
    let (b, _) = substructure(g, &im_s)?;
    let (pa, pb) = (positions(g.order(), &ker_s), positions(g.order(), &im_s));
    let (nb, na) = (b.order(), a.order());
    let mut dot = Table::from_fn(nb, na, |_, _| 0);
    for y in 0..nb {
        for x in 0..na {
            dot.set(y, x, lookup(&pa, g.conj(im_s[y], ker_s[x]), "Ker s")?);
        }
    }
    let mut star = Vec::new();
    for k in 0..g.signature().binary_count() {
        let mut t = Table::from_fn(nb, na, |_, _| 0);
        for y in 0..nb {
            for x in 0..na {
                t.set(y, x, lookup(&pa, g.op(k, im_s[y], ker_s[x]), "Ker s")?);
            }
        }
        star.push(t);
    }
    let mut bmap = Vec::with_capacity(na);
    for &k in &ker_s {
        bmap.push(lookup(&pb, c.t(k), "Im s")?);
    }
    let action = ActionSet::new(b.clone(), a.clone(), dot, star)?;
    let boundary = Morphism::new(a, b, bmap)?;
    Ok(XModOfCat1 {
        xmod: Arc::new(CrossedModule::new(action, boundary)?),
        ker_s,
        im_s,
    })
}

/// Internal groupoid to cat¹-group, through crossed modules.
pub fn gpd_to_cat1(g: &InternalGroupoid) -> Result<Cat1Group> {
    xmod_to_cat1(&gpd_to_xmod(g)?.xmod)
}

fn product_map(f: &Morphism, g: &Morphism, dom: Arc<GroupWithOps>, cod: Arc<GroupWithOps>) -> Result<Morphism> {
    let (nb, nb2) = (g.dom().order(), g.cod().order());
    Morphism::from_fn(dom, cod, |e| {
        let (a, b) = GroupWithOps::split_index(e, nb);
        GroupWithOps::pair_index(f.apply(a), g.apply(b), nb2)
    })
}

/// `η(f, g)`: `f × g` on arrows, `g` on objects.
pub fn xmod_morphism_to_gpd(m: &XModMorphism) -> Result<GpdMorphism> {
    let dom = Arc::new(xmod_to_gpd(&m.dom)?);
    let cod = Arc::new(xmod_to_gpd(&m.cod)?);
    let arrows = product_map(&m.f, &m.g, dom.arrows().clone(), cod.arrows().clone())?;
    let objects = Morphism::new(dom.objects().clone(), cod.objects().clone(), m.g.map().to_vec())?;
    GpdMorphism::new(dom, cod, arrows, objects)
}

/// `θ(f, g) = f × g`.
pub fn xmod_morphism_to_cat1(m: &XModMorphism) -> Result<Cat1Morphism> {
    let dom = Arc::new(xmod_to_cat1(&m.dom)?);
    let cod = Arc::new(xmod_to_cat1(&m.cod)?);
    let map = product_map(&m.f, &m.g, dom.group().clone(), cod.group().clone())?;
    Cat1Morphism::new(dom, cod, map)
}

/// `δ(p) = (p₁|Ker d₀, p₀)`.
pub fn gpd_morphism_to_xmod(p: &GpdMorphism) -> Result<XModMorphism> {
    let dom = gpd_to_xmod(&p.dom)?;
    let cod = gpd_to_xmod(&p.cod)?;
    let pos = positions(p.cod.arrows().order(), &cod.kernel);
    let mut f = Vec::with_capacity(dom.kernel.len());
    for &a in &dom.kernel {
        f.push(lookup(&pos, p.arrows.apply(a), "Ker d₀")?);
    }
    XModMorphism::from_maps(dom.xmod, cod.xmod, f, p.objects.map().to_vec())
}

/// `δ¹(p) = (p|Ker s, p|Im s)`.
pub fn cat1_morphism_to_xmod(p: &Cat1Morphism) -> Result<XModMorphism> {
    let dom = cat1_to_xmod(&p.dom)?;
    let cod = cat1_to_xmod(&p.cod)?;
    let n = p.cod.group().order();
    let (pk, pi) = (positions(n, &cod.ker_s), positions(n, &cod.im_s));
    let mut f = Vec::new();
    for &k in &dom.ker_s {
        f.push(lookup(&pk, p.map.apply(k), "Ker s")?);
    }
    let mut g = Vec::new();
    for &b in &dom.im_s {
        g.push(lookup(&pi, p.map.apply(b), "Im s")?);
    }
    XModMorphism::from_maps(dom.xmod, cod.xmod, f, g)
}

/// `X ≅ δη(X)` via `a ↦ (a, 0)` and the identity on `B`.
pub fn roundtrip_xmod_gpd(x: &Arc<CrossedModule>) -> Result<IsoWitness<XModMorphism>> {
    let g = xmod_to_gpd(x)?;
    let back = gpd_to_xmod(&g)?;
    let nb = x.actor().order();
    let pos = positions(g.arrows().order(), &back.kernel);
    let f: Vec<usize> = x
        .acted()
        .elements()
        .map(|a| lookup(&pos, GroupWithOps::pair_index(a, x.actor().zero(), nb), "Ker d₀"))
        .collect::<Result<_>>()?;
    let gmap: Vec<usize> = x.actor().elements().collect();
    iso_from_maps(x.clone(), back.xmod, f, gmap)
}

/// `X ≅ δ¹θ(X)` via `a ↦ (a, 0)` and `b ↦ (0, b)`.
pub fn roundtrip_xmod_cat1(x: &Arc<CrossedModule>) -> Result<IsoWitness<XModMorphism>> {
    let c = xmod_to_cat1(x)?;
    let back = cat1_to_xmod(&c)?;
    let nb = x.actor().order();
    let n = c.group().order();
    let (pk, pi) = (positions(n, &back.ker_s), positions(n, &back.im_s));
    let (za, zb) = (x.acted().zero(), x.actor().zero());
    let f = x
        .acted()
        .elements()
        .map(|a| lookup(&pk, GroupWithOps::pair_index(a, zb, nb), "Ker s"))
        .collect::<Result<Vec<_>>>()?;
    let g = x
        .actor()
        .elements()
        .map(|b| lookup(&pi, GroupWithOps::pair_index(za, b, nb), "Im s"))
        .collect::<Result<Vec<_>>>()?;
    iso_from_maps(x.clone(), back.xmod, f, g)
}

fn iso_from_maps(
    x: Arc<CrossedModule>,
    y: Arc<CrossedModule>,
    f: Vec<usize>,
    g: Vec<usize>,
) -> Result<IsoWitness<XModMorphism>> {
    let fwd = XModMorphism::from_maps(x.clone(), y.clone(), f, g)?;
    let (fi, gi) = (
        fwd.f.inverse().ok_or_else(|| Error::Verification("top map is not bijective".into()))?,
        fwd.g.inverse().ok_or_else(|| Error::Verification("bottom map is not bijective".into()))?,
    );
    let bwd = XModMorphism::new(y, x, fi, gi)?;
    IsoWitness::new(fwd, bwd)
}

/// `θδ¹(C) ≅ C` via `μ(a, s(b)) = a + s(b)`.
pub fn roundtrip_cat1(c: &Arc<Cat1Group>) -> Result<IsoWitness<Cat1Morphism>> {
    let xc = cat1_to_xmod(c)?;
    let back = Arc::new(xmod_to_cat1(&xc.xmod)?);
    let nb = xc.im_s.len();
    let g = c.group();
    let mu = Morphism::from_fn(back.group().clone(), g.clone(), |e| {
        let (a, b) = GroupWithOps::split_index(e, nb);
        g.add(xc.ker_s[a], xc.im_s[b])
    })?;
    let inv = mu.inverse().ok_or_else(|| Error::Verification("μ is not bijective".into()))?;
    IsoWitness::new(
        Cat1Morphism::new(back.clone(), c.clone(), mu)?,
        Cat1Morphism::new(c.clone(), back, inv)?,
    )
}

/// `ηδ(G) ≅ G` via `(a, b) ↦ a + ε(b)` on arrows and the identity on objects.
pub fn roundtrip_gpd(g: &Arc<InternalGroupoid>) -> Result<IsoWitness<GpdMorphism>> {
    let xg = gpd_to_xmod(g)?;
    let back = Arc::new(xmod_to_gpd(&xg.xmod)?);
    let nb = g.objects().order();
    let g1 = g.arrows();
    let arrows = Morphism::from_fn(back.arrows().clone(), g1.clone(), |e| {
        let (a, b) = GroupWithOps::split_index(e, nb);
        g1.add(xg.kernel[a], g.eps(b))
    })?;
    let objects = Morphism::identity(g.objects().clone());
    let (ai, oi) = (
        arrows.inverse().ok_or_else(|| Error::Verification("arrow map is not bijective".into()))?,
        objects.inverse().expect("identity"),
    );
    IsoWitness::new(
        GpdMorphism::new(back.clone(), g.clone(), arrows, objects)?,
        GpdMorphism::new(g.clone(), back, ai, oi)?,
    )
}

/// The four normality verdicts for a pair `(S, T)` of a crossed module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalityVerdicts {
    pub subxmod: bool,
    pub xmod_normal: bool,
    pub semidirect_ideal: bool,
    pub gpd_internal_normal: bool,
    pub cat1_normal: bool,
}

impl NormalityVerdicts {
    pub fn agree(&self) -> bool {
        self.xmod_normal == self.semidirect_ideal
            && self.xmod_normal == self.gpd_internal_normal
            && self.xmod_normal == self.cat1_normal
    }
}

/// Elements of `S ⋊ T` inside `A ⋊ B`.
pub fn semidirect_pairs(x: &CrossedModule, s: &[usize], t: &[usize]) -> Vec<usize> {
    let nb = x.actor().order();
    let mut out: Vec<usize> = s
        .iter()
        .flat_map(|&a| t.iter().map(move |&b| GroupWithOps::pair_index(a, b, nb)))
        .collect();
    out.sort_unstable();
    out
}

/// `η(X)` and `θ(X)`, built once for repeated normality queries.
#[derive(Debug, Clone)]
pub struct XModImages {
    pub gpd: Arc<InternalGroupoid>,
    pub cat1: Arc<Cat1Group>,
}

impl XModImages {
    pub fn of(x: &CrossedModule) -> Result<Self> {
        Ok(XModImages {
            gpd: Arc::new(xmod_to_gpd(x)?),
            cat1: Arc::new(xmod_to_cat1(x)?),
        })
    }
}

/// Decides normality of `(S, T)` in each category: as a subcrossed module,
/// as an ideal `S ⋊ T` of `A ⋊ B`, as the subgroupoid `(S ⋊ T, T)` of `η(X)`
/// and as the subobject `S ⋊ T` of `θ(X)`.
pub fn normality_verdicts(x: &CrossedModule, images: &XModImages, s: &[usize], t: &[usize]) -> Result<NormalityVerdicts> {
    let subxmod = is_subxmod(x, s, t)?;
    let xmod_normal = subxmod && is_normal_subxmod(x, s, t)?.is_normal();
    let pairs = semidirect_pairs(x, s, t);
    let semidirect_ideal = crate::subset::is_ideal(images.gpd.arrows(), &pairs)?;
    let g = &images.gpd;
    let gpd_internal_normal = crate::gpd::is_subgroupoid(g, &pairs, t)? && is_internal_normal_subgroupoid(g, &pairs, t)?;
    let cat1_normal = is_normal_subcat1(&images.cat1, &pairs)?;
    Ok(NormalityVerdicts {
        subxmod,
        xmod_normal,
        semidirect_ideal,
        gpd_internal_normal,
        cat1_normal,
    })
}

/// Normal `(S, T)` in `X` carried to `η(X)`, with
/// `η(X/(S,T)) ≅ η(X)_{S⋊T}` verified.
#[derive(Debug, Clone)]
pub struct XModToGpdNormal {
    pub arrows: Vec<usize>,
    pub objects: Vec<usize>,
    pub quotient_iso: IsoWitness<GpdMorphism>,
}

pub fn transport_normal_xmod_to_gpd(x: &Arc<CrossedModule>, s: &[usize], t: &[usize]) -> Result<XModToGpdNormal> {
    let report = is_normal_subxmod(x, s, t)?;
    if !report.is_normal() {
        return Err(Error::Precondition(format!("source is {report}")));
    }
    let g = Arc::new(xmod_to_gpd(x)?);
    let arrows = semidirect_pairs(x, s, t);
    let mut objects = t.to_vec();
    objects.sort_unstable();
    if !is_internal_normal_subgroupoid(&g, &arrows, &objects)? {
        return Err(Error::Verification("transported subgroupoid is not internal-normal".into()));
    }
    let qx = quotient_xmod(x, s, t)?;
    let left = Arc::new(xmod_to_gpd(&qx.xmod)?);
    let right = internal_quotient(&g, &arrows, &objects)?;
    let nb = x.actor().order();
    let qnb = qx.xmod.actor().order();
    let amap = Morphism::from_fn(left.arrows().clone(), right.groupoid.arrows().clone(), |e| {
        let (i, j) = GroupWithOps::split_index(e, qnb);
        right.arrows.class_of(GroupWithOps::pair_index(
            qx.acted.representatives[i],
            qx.actor.representatives[j],
            nb,
        ))
    })?;
    let omap = Morphism::from_fn(left.objects().clone(), right.groupoid.objects().clone(), |j| {
        right.objects.class_of(qx.actor.representatives[j])
    })?;
    let quotient_iso = gpd_iso(left, right.groupoid.clone(), amap, omap)?;
    Ok(XModToGpdNormal {
        arrows,
        objects,
        quotient_iso,
    })
}

fn gpd_iso(dom: Arc<InternalGroupoid>, cod: Arc<InternalGroupoid>, arrows: Morphism, objects: Morphism) -> Result<IsoWitness<GpdMorphism>> {
    let (ai, oi) = (
        arrows.inverse().ok_or_else(|| Error::Verification("arrow map is not bijective".into()))?,
        objects.inverse().ok_or_else(|| Error::Verification("object map is not bijective".into()))?,
    );
    IsoWitness::new(GpdMorphism::new(dom.clone(), cod.clone(), arrows, objects)?, GpdMorphism::new(cod, dom, ai, oi)?)
}

/// Normal `(S, T)` in `X` carried to `θ(X)`, with `θ(X/(S,T)) ≅ θ(X)/(S⋊T)`.
#[derive(Debug, Clone)]
pub struct XModToCat1Normal {
    pub subset: Vec<usize>,
    pub quotient_iso: IsoWitness<Cat1Morphism>,
}

pub fn transport_normal_xmod_to_cat1(x: &Arc<CrossedModule>, s: &[usize], t: &[usize]) -> Result<XModToCat1Normal> {
    let report = is_normal_subxmod(x, s, t)?;
    if !report.is_normal() {
        return Err(Error::Precondition(format!("source is {report}")));
    }
    let c = Arc::new(xmod_to_cat1(x)?);
    let subset = semidirect_pairs(x, s, t);
    if !is_normal_subcat1(&c, &subset)? {
        return Err(Error::Verification("transported subobject is not a normal subcat¹-group".into()));
    }
    let qx = quotient_xmod(x, s, t)?;
    let left = Arc::new(xmod_to_cat1(&qx.xmod)?);
    let right = quotient_cat1(&c, &subset)?;
    let nb = x.actor().order();
    let qnb = qx.xmod.actor().order();
    let map = Morphism::from_fn(left.group().clone(), right.cat1.group().clone(), |e| {
        let (i, j) = GroupWithOps::split_index(e, qnb);
        right.quotient.class_of(GroupWithOps::pair_index(
            qx.acted.representatives[i],
            qx.actor.representatives[j],
            nb,
        ))
    })?;
    let inv = map.inverse().ok_or_else(|| Error::Verification("quotient map is not bijective".into()))?;
    let quotient_iso = IsoWitness::new(
        Cat1Morphism::new(left.clone(), right.cat1.clone(), map)?,
        Cat1Morphism::new(right.cat1.clone(), left, inv)?,
    )?;
    Ok(XModToCat1Normal { subset, quotient_iso })
}

/// Internal-normal `N` in `G` carried to `(Ker d₀ ∩ N₁, N₀)` in `δ(G)`,
/// with `δ(G_N) ≅ δ(G)/(S,T)`.
#[derive(Debug, Clone)]
pub struct GpdToXModNormal {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub report: NormalityReport,
    pub quotient_iso: IsoWitness<XModMorphism>,
}

pub fn transport_normal_gpd_to_xmod(g: &Arc<InternalGroupoid>, n1: &[usize], n0: &[usize]) -> Result<GpdToXModNormal> {
    if !is_internal_normal_subgroupoid(g, n1, n0)? {
        return Err(Error::Precondition("source is not internal-normal".into()));
    }
    let xg = gpd_to_xmod(g)?;
    let pos = positions(g.arrows().order(), &xg.kernel);
    let mut s: Vec<usize> = n1.iter().filter(|&&a| pos[a] != usize::MAX).map(|&a| pos[a]).collect();
    s.sort_unstable();
    let mut t = n0.to_vec();
    t.sort_unstable();
    let report = is_normal_subxmod(&xg.xmod, &s, &t)?;
    if !report.is_normal() {
        return Err(Error::Verification(format!("transported pair is {report}")));
    }
    let qx = quotient_xmod(&xg.xmod, &s, &t)?;
    let gn = internal_quotient(g, n1, n0)?;
    let right = gpd_to_xmod(&gn.groupoid)?;
    let rpos = positions(gn.groupoid.arrows().order(), &right.kernel);
    let f = qx
        .acted
        .representatives
        .iter()
        .map(|&i| lookup(&rpos, gn.arrows.class_of(xg.kernel[i]), "Ker d₀"))
        .collect::<Result<Vec<_>>>()?;
    let gmap = qx
        .actor
        .representatives
        .iter()
        .map(|&j| gn.objects.class_of(j))
        .collect();
    let quotient_iso = iso_from_maps(qx.xmod.clone(), right.xmod, f, gmap)?;
    Ok(GpdToXModNormal {
        s,
        t,
        report,
        quotient_iso,
    })
}

/// Normal `N` in `C` carried to `(N ∩ Ker s, s(N))` in `δ¹(C)`, with
/// `δ¹(C/N) ≅ δ¹(C)/(S,T)`.
#[derive(Debug, Clone)]
pub struct Cat1ToXModNormal {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub report: NormalityReport,
    pub quotient_iso: IsoWitness<XModMorphism>,
}

pub fn transport_normal_cat1_to_xmod(c: &Arc<Cat1Group>, n: &[usize]) -> Result<Cat1ToXModNormal> {
    if !is_normal_subcat1(c, n)? {
        return Err(Error::Precondition("source is not a normal subcat¹-group".into()));
    }
    let xc = cat1_to_xmod(c)?;
    let size = c.group().order();
    let (pk, pi) = (positions(size, &xc.ker_s), positions(size, &xc.im_s));
    let mut s: Vec<usize> = n.iter().filter(|&&g| pk[g] != usize::MAX).map(|&g| pk[g]).collect();
    s.sort_unstable();
    let mut t: Vec<usize> = n.iter().map(|&g| pi[c.s(g)]).collect();
    t.sort_unstable();
    t.dedup();
    let report = is_normal_subxmod(&xc.xmod, &s, &t)?;
    if !report.is_normal() {
        return Err(Error::Verification(format!("transported pair is {report}")));
    }
    let qx = quotient_xmod(&xc.xmod, &s, &t)?;
    let cn = quotient_cat1(c, n)?;
    let right = cat1_to_xmod(&cn.cat1)?;
    let qn = cn.cat1.group().order();
    let (rk, ri) = (positions(qn, &right.ker_s), positions(qn, &right.im_s));
    let f = qx
        .acted
        .representatives
        .iter()
        .map(|&i| lookup(&rk, cn.quotient.class_of(xc.ker_s[i]), "Ker s"))
        .collect::<Result<Vec<_>>>()?;
    let g = qx
        .actor
        .representatives
        .iter()
        .map(|&j| lookup(&ri, cn.quotient.class_of(xc.im_s[j]), "Im s"))
        .collect::<Result<Vec<_>>>()?;
    let quotient_iso = iso_from_maps(qx.xmod.clone(), right.xmod, f, g)?;
    Ok(Cat1ToXModNormal {
        s,
        t,
        report,
        quotient_iso,
    })
}

/// A transported covering with its covering flag in the target category.
#[derive(Debug, Clone)]
pub struct TransportedCovering<M> {
    pub map: M,
    pub is_covering: bool,
}

fn transported<M>(map: M, is_covering: bool) -> Result<TransportedCovering<M>> {
    if !is_covering {
        return Err(Error::Verification("transported map is not a covering".into()));
    }
    Ok(TransportedCovering { map, is_covering })
}

pub fn covering_xmod_to_gpd(m: &XModMorphism) -> Result<TransportedCovering<GpdMorphism>> {
    m.verify()?;
    if !is_covering_xmod(m) {
        return Err(Error::Precondition("source is not a covering".into()));
    }
    let p = xmod_morphism_to_gpd(m)?;
    p.verify()?;
    let flag = is_covering_gpd(&p)?;
    transported(p, flag)
}

pub fn covering_xmod_to_cat1(m: &XModMorphism) -> Result<TransportedCovering<Cat1Morphism>> {
    m.verify()?;
    if !is_covering_xmod(m) {
        return Err(Error::Precondition("source is not a covering".into()));
    }
    let p = xmod_morphism_to_cat1(m)?;
    p.verify()?;
    let flag = is_covering_cat1(&p);
    transported(p, flag)
}

pub fn covering_cat1_to_xmod(p: &Cat1Morphism) -> Result<TransportedCovering<XModMorphism>> {
    p.verify()?;
    if !is_covering_cat1(p) {
        return Err(Error::Precondition("source is not a covering".into()));
    }
    let m = cat1_morphism_to_xmod(p)?;
    m.verify()?;
    let flag = is_covering_xmod(&m);
    transported(m, flag)
}

pub fn covering_gpd_to_xmod(p: &GpdMorphism) -> Result<TransportedCovering<XModMorphism>> {
    p.verify()?;
    if !is_covering_gpd(p)? {
        return Err(Error::Precondition("source is not a covering".into()));
    }
    let m = gpd_morphism_to_xmod(p)?;
    m.verify()?;
    let flag = is_covering_xmod(&m);
    transported(m, flag)
}

/// Quotient of `A ⋊ B` by `S ⋊ T`, exposed for callers comparing with the
/// semidirect product of quotients.
pub fn semidirect_quotient(x: &CrossedModule, s: &[usize], t: &[usize]) -> Result<crate::subset::Quotient> {
    quotient(&x.action().semidirect()?, &semidirect_pairs(x, s, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat1::StandardKind;
    use crate::corpus::{cyclic_group, cyclic_ring};

    fn z(n: usize) -> Arc<GroupWithOps> {
        Arc::new(cyclic_ring(n))
    }

    fn ideal_xmod() -> Arc<CrossedModule> {
        Arc::new(CrossedModule::from_ideal(&z(4), &[0, 2]).unwrap())
    }

    #[test]
    fn eta_of_ideal_inclusion() {
        let g = xmod_to_gpd(&ideal_xmod()).unwrap();
        assert_eq!((g.arrows().order(), g.objects().order()), (8, 4));
        assert!(g.is_valid(), "{}", g.validate());
        let nb = 4;
        let x = ideal_xmod();
        for (b, a) in g.composable_pairs() {
            let (a1, _) = GroupWithOps::split_index(b, nb);
            let (a0, b0) = GroupWithOps::split_index(a, nb);
            let expected = GroupWithOps::pair_index(x.acted().add(a1, a0), b0, nb);
            assert_eq!(g.compose(b, a), Some(expected));
        }
    }

    #[test]
    fn theta_of_ideal_inclusion() {
        let c = xmod_to_cat1(&ideal_xmod()).unwrap();
        assert_eq!(c.group().order(), 8);
        assert!(c.is_valid());
    }

    #[test]
    fn delta_of_pair_groupoid() {
        let g = InternalGroupoid::pair_groupoid(&z(4)).unwrap();
        let x = gpd_to_xmod(&g).unwrap();
        assert!(x.xmod.is_valid().unwrap());
        assert_eq!(x.xmod.acted().order(), 4);
        assert!(x.xmod.boundary().is_bijective());
    }

    #[test]
    fn delta_one_examples() {
        let id = Cat1Group::standard(StandardKind::Identity, &z(4)).unwrap();
        let x = cat1_to_xmod(&id).unwrap();
        assert_eq!((x.xmod.acted().order(), x.xmod.actor().order()), (1, 4));
        let pair = Cat1Group::standard(StandardKind::Pair, &z(2)).unwrap();
        let x = cat1_to_xmod(&pair).unwrap();
        assert!(x.xmod.is_valid().unwrap());
        assert_eq!((x.xmod.acted().order(), x.xmod.actor().order()), (2, 2));
    }

    #[test]
    fn roundtrips() {
        let x = ideal_xmod();
        roundtrip_xmod_gpd(&x).unwrap();
        roundtrip_xmod_cat1(&x).unwrap();
        let id = Arc::new(CrossedModule::identity_on(&z(4)).unwrap());
        roundtrip_xmod_gpd(&id).unwrap();
        let pair = Arc::new(Cat1Group::standard(StandardKind::Pair, &z(2)).unwrap());
        let w = roundtrip_cat1(&pair).unwrap();
        assert_eq!(w.forward().map.dom().order(), 4);
        let g = Arc::new(InternalGroupoid::pair_groupoid(&z(2)).unwrap());
        roundtrip_gpd(&g).unwrap();
    }

    #[test]
    fn normality_transport() {
        let x = Arc::new(CrossedModule::identity_on(&z(4)).unwrap());
        let im = XModImages::of(&x).unwrap();
        let v = normality_verdicts(&x, &im, &[0, 2], &[0, 2]).unwrap();
        assert!(v.xmod_normal && v.agree());
        let v = normality_verdicts(&x, &im, &[0, 2], &[0, 1, 2, 3]).unwrap();
        assert!(!v.xmod_normal && v.agree());
        let r = transport_normal_xmod_to_gpd(&x, &[0, 2], &[0, 2]).unwrap();
        assert_eq!(r.arrows.len(), 4);
        transport_normal_xmod_to_cat1(&x, &[0, 2], &[0, 2]).unwrap();
        let g = Arc::new(xmod_to_gpd(&x).unwrap());
        let back = transport_normal_gpd_to_xmod(&g, &r.arrows, &r.objects).unwrap();
        assert_eq!((back.s.as_slice(), back.t.as_slice()), (&[0, 2][..], &[0, 2][..]));
        let trivial = transport_normal_xmod_to_gpd(&x, &[0], &[0]).unwrap();
        assert_eq!(trivial.arrows, vec![0]);
    }

    #[test]
    fn cat1_normality_transport() {
        let c = Arc::new(Cat1Group::standard(StandardKind::Pair, &z(4)).unwrap());
        let n: Vec<usize> = [0, 2]
            .iter()
            .flat_map(|&a| [0, 2].map(|b| GroupWithOps::pair_index(a, b, 4)))
            .collect();
        let r = transport_normal_cat1_to_xmod(&c, &n).unwrap();
        assert!(r.report.is_normal());
        assert_eq!(r.s.len(), 2);
    }

    #[test]
    fn covering_transport() {
        let x = ideal_xmod();
        let id = XModMorphism::identity(x.clone());
        let g = covering_xmod_to_gpd(&id).unwrap();
        assert!(g.map.is_identity());
        let c = covering_xmod_to_cat1(&id).unwrap();
        assert!(c.map.is_identity());
        let back = covering_cat1_to_xmod(&c.map).unwrap();
        assert!(back.is_covering);
        let back = covering_gpd_to_xmod(&g.map).unwrap();
        assert!(back.is_covering);
    }

    #[test]
    fn plain_group_xmod_roundtrip() {
        let s3 = Arc::new(crate::corpus::symmetric_group_3());
        let x = Arc::new(CrossedModule::identity_on(&s3).unwrap());
        assert!(x.is_valid().unwrap());
        roundtrip_xmod_gpd(&x).unwrap();
        roundtrip_xmod_cat1(&x).unwrap();
        let zg = Arc::new(cyclic_group(3));
        let triv = Arc::new(CrossedModule::trivial_action(zg.clone(), zg).unwrap());
        roundtrip_xmod_cat1(&triv).unwrap();
    }
}
