//! Internal groupoids: groupoids whose objects, arrows and structure maps all
//! live among groups with operations.
//!
//! Composition is never stored. For composable arrows it is always
//! `b ∘ a = b − ε(d₁ a) + a`, and validation checks the groupoid laws of that
//! computed composition.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gwo::{GroupWithOps, TableCell};
use crate::iso::StructureMap;
use crate::morphism::Morphism;
use crate::report::{ValidationReport, Violation};
use crate::subset::{is_ideal, mask_of, quotient, substructure, Quotient};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalGroupoid {
    source: Morphism,
    target: Morphism,
    identity: Morphism,
}

/// A single table entry of an internal groupoid, for corruption tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpdCell {
    Objects(TableCell),
    Arrows(TableCell),
    Source(usize),
    Target(usize),
    Identity(usize),
}

/// Star, costar, hom-set and vertex group for a pair of objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSets {
    /// Arrows out of `x`.
    pub star: Vec<usize>,
    /// Arrows into `y`.
    pub costar: Vec<usize>,
    /// Arrows `x → y`.
    pub hom: Vec<usize>,
    /// Arrows `x → x`.
    pub vertex_group: Vec<usize>,
}

impl InternalGroupoid {
    /// `d₀, d₁: G₁ → G₀` and `ε: G₀ → G₁`. Only shapes are checked.
    pub fn new(source: Morphism, target: Morphism, identity: Morphism) -> Result<Self> {
        let (g1, g0) = (source.dom(), source.cod());
        if **target.dom() != **g1 || **target.cod() != **g0 || **identity.dom() != **g0 || **identity.cod() != **g1 {
            return Err(Error::Precondition("structure maps do not share objects and arrows".into()));
        }
        Ok(InternalGroupoid {
            source,
            target,
            identity,
        })
    }

    /// `A × A` with `d₀(a,b) = a`, `d₁(a,b) = b`, `ε(a) = (a,a)`.
    pub fn pair_groupoid(a: &Arc<GroupWithOps>) -> Result<Self> {
        let n = a.order();
        let g1 = Arc::new(GroupWithOps::direct_product(a, a)?);
        let d0 = Morphism::from_fn(g1.clone(), a.clone(), |e| GroupWithOps::split_index(e, n).0)?;
        let d1 = Morphism::from_fn(g1.clone(), a.clone(), |e| GroupWithOps::split_index(e, n).1)?;
        let eps = Morphism::from_fn(a.clone(), g1, |x| GroupWithOps::pair_index(x, x, n))?;
        Self::new(d0, d1, eps)
    }

    /// One object, arrows `g`, every structure map zero.
    pub fn one_object(g: &Arc<GroupWithOps>) -> Result<Self> {
        let point = Arc::new(GroupWithOps::trivial(g.signature().clone()));
        let d = Morphism::zero(g.clone(), point.clone())?;
        Self::new(d.clone(), d, Morphism::zero(point, g.clone())?)
    }

    /// Only identity arrows.
    pub fn discrete(g: &Arc<GroupWithOps>) -> Self {
        let id = Morphism::identity(g.clone());
        InternalGroupoid {
            source: id.clone(),
            target: id.clone(),
            identity: id,
        }
    }

    pub fn objects(&self) -> &Arc<GroupWithOps> {
        self.source.cod()
    }

    pub fn arrows(&self) -> &Arc<GroupWithOps> {
        self.source.dom()
    }

    pub fn source_map(&self) -> &Morphism {
        &self.source
    }

    pub fn target_map(&self) -> &Morphism {
        &self.target
    }

    pub fn identity_map(&self) -> &Morphism {
        &self.identity
    }

    #[inline]
    pub fn d0(&self, a: usize) -> usize {
        self.source.apply(a)
    }

    #[inline]
    pub fn d1(&self, a: usize) -> usize {
        self.target.apply(a)
    }

    #[inline]
    pub fn eps(&self, x: usize) -> usize {
        self.identity.apply(x)
    }

    /// `b − ε(d₁ a) + a`, regardless of composability.
    #[inline]
    pub fn compose_unchecked(&self, b: usize, a: usize) -> usize {
        let g1 = self.arrows();
        g1.add(g1.sub(b, self.eps(self.d1(a))), a)
    }

    /// `b ∘ a` ("first `a`, then `b`") when `d₀ b = d₁ a`.
    pub fn compose(&self, b: usize, a: usize) -> Option<usize> {
        (self.d0(b) == self.d1(a)).then(|| self.compose_unchecked(b, a))
    }

    /// `ε(d₁ a) − a + ε(d₀ a)`.
    pub fn inverse(&self, a: usize) -> usize {
        let g1 = self.arrows();
        g1.add(g1.sub(self.eps(self.d1(a)), a), self.eps(self.d0(a)))
    }

    pub fn hom_queries(&self, x: usize, y: usize) -> HomSets {
        let arrows = self.arrows().elements();
        let star: Vec<usize> = arrows.clone().filter(|&a| self.d0(a) == x).collect();
        let costar: Vec<usize> = arrows.clone().filter(|&a| self.d1(a) == y).collect();
        let hom = star.iter().copied().filter(|&a| self.d1(a) == y).collect();
        let vertex_group = star.iter().copied().filter(|&a| self.d1(a) == x).collect();
        HomSets {
            star,
            costar,
            hom,
            vertex_group,
        }
    }

    /// Arrows grouped by source object.
    fn by_source(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.objects().order()];
        for a in self.arrows().elements() {
            out[self.d0(a)].push(a);
        }
        out
    }

    /// All composable pairs `(b, a)` with `d₀ b = d₁ a`, ordered by `(b, a)`.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let by_source = self.by_source();
        let mut out = Vec::new();
        for a in self.arrows().elements() {
            for &b in &by_source[self.d1(a)] {
                out.push((b, a));
            }
        }
        out.sort_unstable();
        out
    }

    /// Connected-component label for every object, labels in order of least member.
    pub fn components(&self) -> Vec<usize> {
        components_of(self.objects().order(), self.arrows().elements().map(|a| (self.d0(a), self.d1(a))))
    }

    pub fn is_transitive(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Objects and arrows valid, structure maps morphisms, the groupoid laws
    /// for the computed composition, and the interchange law for `+`, every
    /// extra binary operation and every unary operation.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let (g0, g1) = (&**self.objects(), &**self.arrows());
        report.absorb("objects", g0.validate());
        report.absorb("arrows", g1.validate());
        for (name, m) in [("source", &self.source), ("target", &self.target), ("identity", &self.identity)] {
            if let Some(v) = m.check() {
                report.push(v.prefixed(name));
            }
        }
        if let Some(x) = g0.elements().find(|&x| self.d0(self.eps(x)) != x) {
            report.push(Violation::new("source-of-identity", vec![x], "d₀(ε(x)) != x"));
        }
        if let Some(x) = g0.elements().find(|&x| self.d1(self.eps(x)) != x) {
            report.push(Violation::new("target-of-identity", vec![x], "d₁(ε(x)) != x"));
        }
        let pairs = self.composable_pairs();
        let comp = |b, a| self.compose_unchecked(b, a);
        if let Some(&(b, a)) = pairs
            .iter()
            .find(|&&(b, a)| self.d0(comp(b, a)) != self.d0(a) || self.d1(comp(b, a)) != self.d1(b))
        {
            report.push(Violation::new("composite-ends", vec![b, a], "ends of b∘a differ from d₀ a, d₁ b"));
        }
        if let Some(a) = g1.elements().find(|&a| {
            comp(self.eps(self.d1(a)), a) != a || comp(a, self.eps(self.d0(a))) != a
        }) {
            report.push(Violation::new("unit", vec![a], "identity arrows are not units for a"));
        }
        if let Some(a) = g1.elements().find(|&a| {
            let inv = self.inverse(a);
            self.d0(inv) != self.d1(a)
                || self.d1(inv) != self.d0(a)
                || comp(inv, a) != self.eps(self.d0(a))
                || comp(a, inv) != self.eps(self.d1(a))
        }) {
            report.push(Violation::new("inverse", vec![a], "ε(d₁a) − a + ε(d₀a) is not a two-sided inverse"));
        }
        let by_source = self.by_source();
        'assoc: for &(b, a) in &pairs {
            for &c in &by_source[self.d1(b)] {
                if comp(comp(c, b), a) != comp(c, comp(b, a)) {
                    report.push(Violation::new("associativity", vec![c, b, a], "(c∘b)∘a != c∘(b∘a)"));
                    break 'assoc;
                }
            }
        }
        let sig = g1.signature();
        let mut ops: Vec<(String, Box<dyn Fn(usize, usize) -> usize + '_>)> =
            vec![("+".to_string(), Box::new(|x, y| g1.add(x, y)))];
        for k in 0..sig.binary_count() {
            ops.push((sig.binary()[k].clone(), Box::new(move |x, y| g1.op(k, x, y))));
        }
        for (sym, op) in &ops {
            'inter: for &(a, c) in &pairs {
                for &(b, d) in &pairs {
                    let (ab, cd) = (op(a, b), op(c, d));
                    let rhs = op(comp(a, c), comp(b, d));
                    if self.d0(ab) != self.d1(cd) || comp(ab, cd) != rhs {
                        report.push(Violation::new(
                            format!("interchange[{sym}]"),
                            vec![a, b, c, d],
                            format!("(a {sym} b)∘(c {sym} d) != (a∘c) {sym} (b∘d)"),
                        ));
                        break 'inter;
                    }
                }
            }
        }
        for u in 0..sig.unary_count() {
            if let Some(&(b, a)) = pairs.iter().find(|&&(b, a)| {
                let (wb, wa) = (g1.unary_op(u, b), g1.unary_op(u, a));
                self.d0(wb) != self.d1(wa) || g1.unary_op(u, comp(b, a)) != comp(wb, wa)
            }) {
                let s = &sig.unary()[u];
                report.push(Violation::new(format!("interchange[{s}]"), vec![b, a], format!("{s}(b∘a) != {s}(b)∘{s}(a)")));
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn cells(&self) -> Vec<GpdCell> {
        let mut out: Vec<GpdCell> = self.objects().cells().into_iter().map(GpdCell::Objects).collect();
        out.extend(self.arrows().cells().into_iter().map(GpdCell::Arrows));
        let n1 = self.arrows().order();
        out.extend((0..n1).map(GpdCell::Source));
        out.extend((0..n1).map(GpdCell::Target));
        out.extend((0..self.objects().order()).map(GpdCell::Identity));
        out
    }

    pub fn cell_range(&self, cell: GpdCell) -> usize {
        match cell {
            GpdCell::Objects(_) | GpdCell::Source(_) | GpdCell::Target(_) => self.objects().order(),
            GpdCell::Arrows(_) | GpdCell::Identity(_) => self.arrows().order(),
        }
    }

    pub fn cell_value(&self, cell: GpdCell) -> usize {
        match cell {
            GpdCell::Objects(c) => self.objects().cell_value(c),
            GpdCell::Arrows(c) => self.arrows().cell_value(c),
            GpdCell::Source(a) => self.d0(a),
            GpdCell::Target(a) => self.d1(a),
            GpdCell::Identity(x) => self.eps(x),
        }
    }

    /// Copy with one entry replaced; the result is not validated.
    pub fn with_cell(&self, cell: GpdCell, value: usize) -> Result<Self> {
        let (mut g0, mut g1) = (self.objects().clone(), self.arrows().clone());
        let (mut d0, mut d1, mut e) = (
            self.source.map().to_vec(),
            self.target.map().to_vec(),
            self.identity.map().to_vec(),
        );
        crate::error::check_index(value, self.cell_range(cell))?;
        match cell {
            GpdCell::Objects(c) => g0 = Arc::new(g0.with_cell(c, value)?),
            GpdCell::Arrows(c) => g1 = Arc::new(g1.with_cell(c, value)?),
            GpdCell::Source(a) => d0[a] = value,
            GpdCell::Target(a) => d1[a] = value,
            GpdCell::Identity(x) => e[x] = value,
        }
        Self::new(
            Morphism::new(g1.clone(), g0.clone(), d0)?,
            Morphism::new(g1.clone(), g0.clone(), d1)?,
            Morphism::new(g0, g1, e)?,
        )
    }
}

pub(crate) fn components_of(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (x, y) in edges {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx != ry {
            parent[rx.max(ry)] = rx.min(ry);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = vec![0; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        out[x] = label[r];
    }
    out
}

/// Whether arrows `n1` over objects `n0` form a subgroupoid: ends in `n0`,
/// identities of `n0` present, closed under composition and inverse.
pub fn is_subgroupoid(g: &InternalGroupoid, n1: &[usize], n0: &[usize]) -> Result<bool> {
    let m1 = mask_of(g.arrows().order(), n1)?;
    let m0 = mask_of(g.objects().order(), n0)?;
    if !n1.iter().all(|&a| m0[g.d0(a)] && m0[g.d1(a)]) || !n0.iter().all(|&x| m1[g.eps(x)]) {
        return Ok(false);
    }
    if !n1.iter().all(|&a| m1[g.inverse(a)]) {
        return Ok(false);
    }
    Ok(n1
        .iter()
        .all(|&a| n1.iter().all(|&b| g.d0(b) != g.d1(a) || m1[g.compose_unchecked(b, a)])))
}

/// A subgroupoid with its flags.
#[derive(Debug, Clone)]
pub struct SubGroupoid {
    pub parent: Arc<InternalGroupoid>,
    pub arrows: Vec<usize>,
    pub objects: Vec<usize>,
    pub is_wide: bool,
    /// Only meaningful for wide subgroupoids; `false` otherwise.
    pub is_normal_higgins: bool,
    pub is_internal_normal: bool,
}

impl SubGroupoid {
    pub fn new(parent: Arc<InternalGroupoid>, mut arrows: Vec<usize>, mut objects: Vec<usize>) -> Result<Self> {
        arrows.sort_unstable();
        arrows.dedup();
        objects.sort_unstable();
        objects.dedup();
        if !is_subgroupoid(&parent, &arrows, &objects)? {
            return Err(Error::Precondition("arrows and objects do not form a subgroupoid".into()));
        }
        let is_wide = objects.len() == parent.objects().order();
        let is_normal_higgins = is_wide && is_normal_subgroupoid_higgins(&parent, &arrows)?;
        let is_internal_normal = is_internal_normal_subgroupoid(&parent, &arrows, &objects)?;
        Ok(SubGroupoid {
            parent,
            arrows,
            objects,
            is_wide,
            is_normal_higgins,
            is_internal_normal,
        })
    }

    /// A subgroupoid given by its arrows; objects are the ends of the arrows.
    pub fn from_arrows(parent: Arc<InternalGroupoid>, arrows: Vec<usize>) -> Result<Self> {
        let objects: BTreeSet<usize> = arrows.iter().flat_map(|&a| [parent.d0(a), parent.d1(a)]).collect();
        Self::new(parent, arrows, objects.into_iter().collect())
    }

    pub fn is_transitive(&self) -> bool {
        let pos: HashMap<usize, usize> = self.objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let g = &self.parent;
        components_of(self.objects.len(), self.arrows.iter().map(|&a| (pos[&g.d0(a)], pos[&g.d1(a)])))
            .iter()
            .all(|&c| c == 0)
    }

    /// The subgroupoid as an internal groupoid, when both parts are subobjects.
    pub fn structure(&self) -> Result<InternalGroupoid> {
        let g = &self.parent;
        let (s1, i1) = substructure(g.arrows(), &self.arrows)?;
        let (s0, i0) = substructure(g.objects(), &self.objects)?;
        InternalGroupoid::new(
            g.source_map().restrict(i1.map(), s1.clone(), i0.map(), s0.clone())?,
            g.target_map().restrict(i1.map(), s1.clone(), i0.map(), s0.clone())?,
            g.identity_map().restrict(i0.map(), s0, i1.map(), s1)?,
        )
    }
}

/// Vertex groups `N(x)` of a set of arrows, indexed by object.
fn vertex_groups(g: &InternalGroupoid, n1: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); g.objects().order()];
    for &a in n1 {
        if g.d0(a) == g.d1(a) {
            out[g.d0(a)].push(a);
        }
    }
    out
}

/// Coset normality of a wide subgroupoid: `g ∘ N(x) = N(y) ∘ g` for every
/// arrow `g: x → y`. The translation criterion `−ε(x) + N(x) = −ε(y) + N(y)`
/// for connected `x, y` is computed independently and must agree.
pub fn is_normal_subgroupoid_higgins(g: &InternalGroupoid, n1: &[usize]) -> Result<bool> {
    require_wide(g, n1)?;
    let vg = vertex_groups(g, n1);
    let coset = coset_normality_with(g, &vg);
    let translated = translation_criterion_with(g, &vg);
    if coset != translated {
        return Err(Error::Verification(format!(
            "coset normality ({coset}) and translation criterion ({translated}) disagree for {n1:?}"
        )));
    }
    Ok(coset)
}

fn require_wide(g: &InternalGroupoid, n1: &[usize]) -> Result<Vec<bool>> {
    let m = mask_of(g.arrows().order(), n1)?;
    if let Some(x) = g.objects().elements().find(|&x| !m[g.eps(x)]) {
        return Err(Error::Precondition(format!("subgroupoid is not wide: missing the identity at {x}")));
    }
    Ok(m)
}

/// `g ∘ N(x) = N(y) ∘ g` as sets, for every arrow `g: x → y`.
pub fn coset_normality(g: &InternalGroupoid, n1: &[usize]) -> Result<bool> {
    require_wide(g, n1)?;
    Ok(coset_normality_with(g, &vertex_groups(g, n1)))
}

fn coset_normality_with(g: &InternalGroupoid, vg: &[Vec<usize>]) -> bool {
    // composing with a fixed arrow is injective, so equal sizes plus one
    // inclusion give equality
    let mut in_right = vec![false; g.arrows().order()];
    for a in g.arrows().elements() {
        let (x, y) = (g.d0(a), g.d1(a));
        if vg[x].len() != vg[y].len() {
            return false;
        }
        for &m in &vg[y] {
            in_right[g.compose_unchecked(m, a)] = true;
        }
        let ok = vg[x].iter().all(|&n| in_right[g.compose_unchecked(a, n)]);
        for &m in &vg[y] {
            in_right[g.compose_unchecked(m, a)] = false;
        }
        if !ok {
            return false;
        }
    }
    true
}

/// `−ε(x) + N(x) = −ε(y) + N(y)` whenever `G(x, y)` is nonempty.
pub fn translation_criterion(g: &InternalGroupoid, n1: &[usize]) -> Result<bool> {
    require_wide(g, n1)?;
    Ok(translation_criterion_with(g, &vertex_groups(g, n1)))
}

fn translation_criterion_with(g: &InternalGroupoid, vg: &[Vec<usize>]) -> bool {
    let g1 = g.arrows();
    let shifted: Vec<Vec<usize>> = g
        .objects()
        .elements()
        .map(|x| {
            let mut v: Vec<usize> = vg[x].iter().map(|&n| g1.add(g1.neg(g.eps(x)), n)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    g1.elements().all(|a| shifted[g.d0(a)] == shifted[g.d1(a)])
}

/// A subgroupoid is internal-normal when its arrows form an ideal of `G₁`;
/// its objects then form an ideal of `G₀`, which is checked.
pub fn is_internal_normal_subgroupoid(g: &InternalGroupoid, n1: &[usize], n0: &[usize]) -> Result<bool> {
    if !is_subgroupoid(g, n1, n0)? {
        return Err(Error::Precondition("not a subgroupoid".into()));
    }
    if !is_ideal(g.arrows(), n1)? {
        return Ok(false);
    }
    if !is_ideal(g.objects(), n0)? {
        return Err(Error::Verification(format!("arrows {n1:?} form an ideal but objects {n0:?} do not")));
    }
    Ok(true)
}

/// `Ker d₀` together with the objects it reaches from `0`, i.e. the
/// transitivity component of the zero object.
pub fn transitivity_component(g: &Arc<InternalGroupoid>) -> Result<SubGroupoid> {
    let comp = g.components();
    let z = comp[g.objects().zero()];
    let objects: Vec<usize> = g.objects().elements().filter(|&x| comp[x] == z).collect();
    let m0 = mask_of(g.objects().order(), &objects)?;
    let arrows = g.arrows().elements().filter(|&a| m0[g.d0(a)]).collect();
    SubGroupoid::new(g.clone(), arrows, objects)
}

/// `G_N`: objects `G₀/N₀`, arrows `G₁/N₁`, induced structure maps.
#[derive(Debug, Clone)]
pub struct InternalQuotient {
    pub groupoid: Arc<InternalGroupoid>,
    pub objects: Quotient,
    pub arrows: Quotient,
    pub projection: GpdMorphism,
}

pub fn internal_quotient(g: &Arc<InternalGroupoid>, n1: &[usize], n0: &[usize]) -> Result<InternalQuotient> {
    if !is_internal_normal_subgroupoid(g, n1, n0)? {
        return Err(Error::Precondition("subgroupoid is not internal-normal".into()));
    }
    let q1 = quotient(g.arrows(), n1)?;
    let q0 = quotient(g.objects(), n0)?;
    let (s1, s0) = (q1.structure.clone(), q0.structure.clone());
    let induced = |m: &Morphism, from: &Quotient, to: &Quotient| -> Result<Morphism> {
        for x in m.dom().elements() {
            let (c, r) = (from.class_of(x), from.representatives[from.class_of(x)]);
            if to.class_of(m.apply(x)) != to.class_of(m.apply(r)) {
                return Err(Error::IllDefined(format!("structure map is not constant on the class {c}")));
            }
        }
        Morphism::from_fn(from.structure.clone(), to.structure.clone(), |c| {
            to.class_of(m.apply(from.representatives[c]))
        })
    };
    let quot = InternalGroupoid::new(
        induced(g.source_map(), &q1, &q0)?,
        induced(g.target_map(), &q1, &q0)?,
        induced(g.identity_map(), &q0, &q1)?,
    )?;
    let quot = Arc::new(quot);
    let projection = GpdMorphism::new(
        g.clone(),
        quot.clone(),
        Morphism::new(g.arrows().clone(), s1, q1.projection.map().to_vec())?,
        Morphism::new(g.objects().clone(), s0, q0.projection.map().to_vec())?,
    )?;
    Ok(InternalQuotient {
        groupoid: quot,
        objects: q0,
        arrows: q1,
        projection,
    })
}

/// A groupoid quotient without algebraic structure: objects are the
/// components of `N`, arrows the classes of `g ∼ n ∘ g ∘ m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainGroupoid {
    pub object_class: Vec<usize>,
    pub arrow_class: Vec<usize>,
    pub objects: usize,
    pub arrows: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub identity: Vec<usize>,
    /// `compose[q * arrows + p]` is `q ∘ p` when defined.
    pub compose: Vec<Option<usize>>,
}

impl PlainGroupoid {
    pub fn compose(&self, q: usize, p: usize) -> Option<usize> {
        self.compose[q * self.arrows + p]
    }
}

/// Quotient by a normal wide subgroupoid. Composition of classes is read off
/// every composable pair of representatives and must not depend on the choice.
pub fn higgins_quotient(g: &InternalGroupoid, n1: &[usize]) -> Result<PlainGroupoid> {
    if !is_normal_subgroupoid_higgins(g, n1)? {
        return Err(Error::Precondition("subgroupoid is not normal".into()));
    }
    let object_class = components_of(g.objects().order(), n1.iter().map(|&a| (g.d0(a), g.d1(a))));
    let objects = object_class.iter().max().map_or(0, |m| m + 1);
    let n = g.arrows().order();
    let mut edges = Vec::new();
    for a in g.arrows().elements() {
        for &m in n1 {
            if let Some(c) = g.compose(a, m) {
                edges.push((a, c));
            }
            if let Some(c) = g.compose(m, a) {
                edges.push((a, c));
            }
        }
    }
    let arrow_class = components_of(n, edges.into_iter());
    let arrows = arrow_class.iter().max().map_or(0, |m| m + 1);
    let mut source = vec![usize::MAX; arrows];
    let mut target = vec![usize::MAX; arrows];
    for a in g.arrows().elements() {
        let c = arrow_class[a];
        let (s, t) = (object_class[g.d0(a)], object_class[g.d1(a)]);
        if source[c] == usize::MAX {
            source[c] = s;
            target[c] = t;
        } else if source[c] != s || target[c] != t {
            return Err(Error::IllDefined(format!("arrow class {c} has inconsistent ends")));
        }
    }
    let mut identity = vec![usize::MAX; objects];
    for x in g.objects().elements() {
        identity[object_class[x]] = arrow_class[g.eps(x)];
    }
    let mut compose = vec![None; arrows * arrows];
    for (b, a) in g.composable_pairs() {
        let (q, p) = (arrow_class[b], arrow_class[a]);
        let r = arrow_class[g.compose_unchecked(b, a)];
        match compose[q * arrows + p] {
            None => compose[q * arrows + p] = Some(r),
            Some(prev) if prev != r => {
                return Err(Error::IllDefined(format!(
                    "composite of classes {q} and {p} is both {prev} and {r}"
                )))
            }
            _ => {}
        }
    }
    Ok(PlainGroupoid {
        object_class,
        arrow_class,
        objects,
        arrows,
        source,
        target,
        identity,
        compose,
    })
}

/// Outcome of comparing the two quotients by a wide internal-normal subgroupoid.
#[derive(Debug, Clone)]
pub struct QuotientComparison {
    pub equal: bool,
    pub transitive: bool,
    pub internal: InternalQuotient,
    pub plain: PlainGroupoid,
}

/// The quotients agree when they partition objects and arrows identically and
/// the induced bijection of arrow classes commutes with composition and ends.
/// That this happens exactly for transitive `N` is checked on every call.
pub fn compare_quotients(g: &Arc<InternalGroupoid>, n1: &[usize]) -> Result<QuotientComparison> {
    let n0: Vec<usize> = g.objects().elements().collect();
    require_wide(g, n1)?;
    let internal = internal_quotient(g, n1, &n0)?;
    let plain = higgins_quotient(g, n1)?;
    let sub = SubGroupoid::new(g.clone(), n1.to_vec(), n0)?;
    let transitive = sub.is_transitive();
    let same_partition = |a: &[usize], b: &[usize]| {
        a.len() == b.len() && {
            let mut fwd = HashMap::new();
            let mut back = HashMap::new();
            a.iter().zip(b).all(|(&x, &y)| *fwd.entry(x).or_insert(y) == y && *back.entry(y).or_insert(x) == x)
        }
    };
    let q = &internal.groupoid;
    let mut equal = same_partition(internal.objects.projection.map(), &plain.object_class)
        && same_partition(internal.arrows.projection.map(), &plain.arrow_class);
    if equal {
        // Class i of the internal quotient corresponds to plain class of its representative.
        let to_plain = |i: usize| plain.arrow_class[internal.arrows.representatives[i]];
        let obj_plain = |i: usize| plain.object_class[internal.objects.representatives[i]];
        'outer: for i in q.arrows().elements() {
            if obj_plain(q.d0(i)) != plain.source[to_plain(i)] || obj_plain(q.d1(i)) != plain.target[to_plain(i)] {
                equal = false;
                break;
            }
            for j in q.arrows().elements() {
                let lhs = q.compose(j, i).map(to_plain);
                if lhs != plain.compose(to_plain(j), to_plain(i)) {
                    equal = false;
                    break 'outer;
                }
            }
        }
    }
    if equal != transitive {
        return Err(Error::Verification(format!(
            "quotients {} but the subgroupoid is {}transitive",
            if equal { "agree" } else { "differ" },
            if transitive { "" } else { "not " }
        )));
    }
    Ok(QuotientComparison {
        equal,
        transitive,
        internal,
        plain,
    })
}

/// Every set partition of `items`, as lists of blocks.
fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, items: &[usize], cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == items.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(items[i]);
            go(i + 1, items, cur, out);
            cur[b].pop();
        }
        cur.push(vec![items[i]]);
        go(i + 1, items, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, items, &mut Vec::new(), &mut out);
    out
}

/// Subgroups of a finite group given by its elements and operation.
fn subgroups(elems: &[usize], op: &dyn Fn(usize, usize) -> usize, unit: usize) -> Vec<Vec<usize>> {
    let close = |seed: &BTreeSet<usize>| -> BTreeSet<usize> {
        let mut set = seed.clone();
        set.insert(unit);
        loop {
            let cur: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &x in &cur {
                for &y in &cur {
                    set.insert(op(x, y));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    };
    let start = close(&BTreeSet::new());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(h) = stack.pop() {
        for &x in elems {
            if !h.contains(&x) {
                let mut s = h.clone();
                s.insert(x);
                let c = close(&s);
                if seen.insert(c.clone()) {
                    stack.push(c);
                }
            }
        }
    }
    seen.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Every wide subgroupoid, as sorted arrow sets. A wide subgroupoid is fixed
/// by a partition of each component's objects, a subgroup `H` of the vertex
/// group at each block's least object `b`, and a coset `g_x ∘ H` of arrows
/// `b → x` for each other object of the block.
pub fn enumerate_wide_subgroupoids(g: &InternalGroupoid, bound: usize) -> Result<Vec<Vec<usize>>> {
    let n1 = g.arrows().order();
    if n1 > bound {
        return Err(Error::BoundExceeded { size: n1, bound });
    }
    let comp = g.components();
    let ncomp = comp.iter().max().map_or(0, |m| m + 1);
    let mut hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for a in g.arrows().elements() {
        hom.entry((g.d0(a), g.d1(a))).or_default().push(a);
    }
    let comp_op = |b: usize, a: usize| g.compose_unchecked(b, a);
    let mut per_component: Vec<Vec<Vec<usize>>> = Vec::new();
    for c in 0..ncomp {
        let objs: Vec<usize> = g.objects().elements().filter(|&x| comp[x] == c).collect();
        let mut configs: Vec<Vec<usize>> = Vec::new();
        for partition in set_partitions(&objs) {
            let mut partial: Vec<Vec<usize>> = vec![Vec::new()];
            for block in &partition {
                let base = block[0];
                let vg = &hom[&(base, base)];
                let mut block_options = Vec::new();
                for h in subgroups(vg, &comp_op, g.eps(base)) {
                    let mut choices: Vec<Vec<usize>> = vec![vec![g.eps(base)]];
                    for &x in &block[1..] {
                        let mut cosets: BTreeSet<usize> = BTreeSet::new();
                        let mut covered = BTreeSet::new();
                        for &a in &hom[&(base, x)] {
                            if covered.insert(a) {
                                cosets.insert(a);
                                for &k in &h {
                                    covered.insert(comp_op(a, k));
                                }
                            }
                        }
                        choices = choices
                            .into_iter()
                            .flat_map(|ch| {
                                cosets.iter().map(move |&r| {
                                    let mut ch = ch.clone();
                                    ch.push(r);
                                    ch
                                })
                            })
                            .collect();
                    }
                    for ch in choices {
                        let mut arrows = BTreeSet::new();
                        for &gx in &ch {
                            let gx_inv = g.inverse(gx);
                            for &gy in &ch {
                                for &k in &h {
                                    arrows.insert(comp_op(gy, comp_op(k, gx_inv)));
                                }
                            }
                        }
                        block_options.push(arrows.into_iter().collect::<Vec<_>>());
                    }
                }
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        block_options.iter().map(move |o| {
                            let mut p = p.clone();
                            p.extend_from_slice(o);
                            p
                        })
                    })
                    .collect();
            }
            configs.extend(partial);
        }
        per_component.push(configs);
    }
    let mut all: Vec<Vec<usize>> = vec![Vec::new()];
    for configs in &per_component {
        all = all
            .into_iter()
            .flat_map(|p| {
                configs.iter().map(move |o| {
                    let mut p = p.clone();
                    p.extend_from_slice(o);
                    p
                })
            })
            .collect();
    }
    for s in &mut all {
        s.sort_unstable();
    }
    all.sort();
    Ok(all)
}

/// A morphism of internal groupoids: maps on arrows and on objects commuting
/// with `d₀`, `d₁` and `ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpdMorphism {
    pub dom: Arc<InternalGroupoid>,
    pub cod: Arc<InternalGroupoid>,
    pub arrows: Morphism,
    pub objects: Morphism,
}

impl GpdMorphism {
    pub fn new(dom: Arc<InternalGroupoid>, cod: Arc<InternalGroupoid>, arrows: Morphism, objects: Morphism) -> Result<Self> {
        if **arrows.dom() != **dom.arrows()
            || **arrows.cod() != **cod.arrows()
            || **objects.dom() != **dom.objects()
            || **objects.cod() != **cod.objects()
        {
            return Err(Error::Precondition("component maps do not match the groupoids".into()));
        }
        Ok(GpdMorphism {
            dom,
            cod,
            arrows,
            objects,
        })
    }

    pub fn from_maps(dom: Arc<InternalGroupoid>, cod: Arc<InternalGroupoid>, arrows: Vec<usize>, objects: Vec<usize>) -> Result<Self> {
        let a = Morphism::new(dom.arrows().clone(), cod.arrows().clone(), arrows)?;
        let o = Morphism::new(dom.objects().clone(), cod.objects().clone(), objects)?;
        Self::new(dom, cod, a, o)
    }

    pub fn identity(g: Arc<InternalGroupoid>) -> Self {
        GpdMorphism {
            arrows: Morphism::identity(g.arrows().clone()),
            objects: Morphism::identity(g.objects().clone()),
            dom: g.clone(),
            cod: g,
        }
    }

    pub fn check(&self) -> Option<Violation> {
        if let Some(v) = self.arrows.check() {
            return Some(v.prefixed("arrows"));
        }
        if let Some(v) = self.objects.check() {
            return Some(v.prefixed("objects"));
        }
        let (d, c, f1, f0) = (&self.dom, &self.cod, &self.arrows, &self.objects);
        if let Some(a) = d.arrows().elements().find(|&a| c.d0(f1.apply(a)) != f0.apply(d.d0(a))) {
            return Some(Violation::new("commutes-with-source", vec![a], "d₀ f(a) != f(d₀ a)"));
        }
        if let Some(a) = d.arrows().elements().find(|&a| c.d1(f1.apply(a)) != f0.apply(d.d1(a))) {
            return Some(Violation::new("commutes-with-target", vec![a], "d₁ f(a) != f(d₁ a)"));
        }
        if let Some(x) = d.objects().elements().find(|&x| f1.apply(d.eps(x)) != c.eps(f0.apply(x))) {
            return Some(Violation::new("commutes-with-identity", vec![x], "f(ε x) != ε f(x)"));
        }
        None
    }

    pub fn is_morphism(&self) -> bool {
        self.check().is_none()
    }
}

impl StructureMap for GpdMorphism {
    fn verify(&self) -> Result<()> {
        match self.check() {
            None => Ok(()),
            Some(v) => Err(Error::Verification(v.to_string())),
        }
    }

    fn then(&self, next: &Self) -> Result<Self> {
        if *self.cod != *next.dom {
            return Err(Error::Precondition("composing groupoid maps whose ends do not match".into()));
        }
        Ok(GpdMorphism {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            arrows: self.arrows.then(&next.arrows)?,
            objects: self.objects.then(&next.objects)?,
        })
    }

    fn is_identity(&self) -> bool {
        *self.dom == *self.cod && self.arrows.is_identity() && self.objects.is_identity()
    }
}

/// Arrows sent to the zero arrow and objects sent to the zero object.
pub fn gpd_kernel(f: &GpdMorphism) -> Result<SubGroupoid> {
    f.verify()?;
    let sub = SubGroupoid::new(f.dom.clone(), f.arrows.kernel(), f.objects.kernel())?;
    if !sub.is_internal_normal {
        return Err(Error::Verification("kernel of a groupoid morphism is not internal-normal".into()));
    }
    Ok(sub)
}

/// A morphism is a covering iff `(p₁, d₀): G̃₁ → G₁ ×_{G₀} G̃₀` is an
/// isomorphism. The star-by-star bijectivity test is computed as well and
/// must agree.
pub fn is_covering_gpd(p: &GpdMorphism) -> Result<bool> {
    let (gt, g) = (&p.dom, &p.cod);
    let nt0 = gt.objects().order();
    let pullback: Vec<(usize, usize)> = g
        .arrows()
        .elements()
        .flat_map(|a| {
            gt.objects()
                .elements()
                .filter(move |&x| g.d0(a) == p.objects.apply(x))
                .map(move |x| (a, x))
        })
        .collect();
    let by_pullback = pullback.len() == gt.arrows().order() && {
        let mut pos = vec![usize::MAX; g.arrows().order() * nt0];
        for (i, &(a, x)) in pullback.iter().enumerate() {
            pos[GroupWithOps::pair_index(a, x, nt0)] = i;
        }
        let (g1, t0) = (g.arrows(), gt.objects());
        let at = |a: usize, x: usize| pos[GroupWithOps::pair_index(a, x, nt0)];
        let pb = GroupWithOps::from_fns(
            g1.signature().clone(),
            pullback.len(),
            at(g1.zero(), t0.zero()),
            |i, j| at(g1.add(pullback[i].0, pullback[j].0), t0.add(pullback[i].1, pullback[j].1)),
            |k, i, j| at(g1.op(k, pullback[i].0, pullback[j].0), t0.op(k, pullback[i].1, pullback[j].1)),
            |u, i| at(g1.unary_op(u, pullback[i].0), t0.unary_op(u, pullback[i].1)),
        )?;
        let map: Vec<usize> = gt.arrows().elements().map(|a| at(p.arrows.apply(a), gt.d0(a))).collect();
        map.iter().all(|&i| i != usize::MAX) && Morphism::new(gt.arrows().clone(), Arc::new(pb), map)?.is_isomorphism()
    };
    let by_stars = gt.objects().elements().all(|x| {
        let star = gt.hom_queries(x, x).star;
        let target = g.hom_queries(p.objects.apply(x), p.objects.apply(x)).star;
        let image: BTreeSet<usize> = star.iter().map(|&a| p.arrows.apply(a)).collect();
        star.len() == target.len() && image.len() == target.len()
    });
    if by_pullback != by_stars {
        return Err(Error::Verification(format!(
            "pullback test says {by_pullback}, star test says {by_stars}"
        )));
    }
    Ok(by_pullback)
}

/// The preimage `Ñ = p⁻¹(N)` and the induced `p*: G̃_Ñ → G_N`.
#[derive(Debug, Clone)]
pub struct PulledBackQuotient {
    pub preimage: SubGroupoid,
    pub induced: GpdMorphism,
    pub is_covering: bool,
}

pub fn covering_pullback_quotient(p: &GpdMorphism, n1: &[usize], n0: &[usize]) -> Result<PulledBackQuotient> {
    p.verify()?;
    if !is_covering_gpd(p)? {
        return Err(Error::Precondition("morphism is not a covering".into()));
    }
    let g = &p.cod;
    let qn = internal_quotient(g, n1, n0)?;
    let preimage = SubGroupoid::new(p.dom.clone(), p.arrows.preimage(n1), p.objects.preimage(n0))?;
    if !preimage.is_internal_normal {
        return Err(Error::Verification("preimage of an internal-normal subgroupoid is not internal-normal".into()));
    }
    let qt = internal_quotient(&p.dom, &preimage.arrows, &preimage.objects)?;
    let induced = GpdMorphism::from_maps(
        qt.groupoid.clone(),
        qn.groupoid.clone(),
        qt.arrows
            .representatives
            .iter()
            .map(|&r| qn.arrows.class_of(p.arrows.apply(r)))
            .collect(),
        qt.objects
            .representatives
            .iter()
            .map(|&r| qn.objects.class_of(p.objects.apply(r)))
            .collect(),
    )?;
    induced.verify()?;
    let is_covering = is_covering_gpd(&induced)?;
    if !is_covering {
        return Err(Error::Verification("induced map on internal quotients is not a covering".into()));
    }
    Ok(PulledBackQuotient {
        preimage,
        induced,
        is_covering,
    })
}
