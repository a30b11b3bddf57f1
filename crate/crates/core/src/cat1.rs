//! Cat¹-groups with operations: a structure `G` with endomorphisms `s, t`
//! such that `st = t`, `ts = s`, and `Ker s`, `Ker t` commute and multiply to zero.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gwo::{GroupWithOps, TableCell};
use crate::iso::{all_isomorphisms_with, IsoWitness, StructureMap};
use crate::morphism::Morphism;
use crate::report::{ValidationReport, Violation};
use crate::subset::{is_ideal, mask_of, quotient, Quotient, Subset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cat1Group {
    source: Morphism,
    target: Morphism,
}

/// A single table entry of a cat¹-group, for corruption tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cat1Cell {
    Group(TableCell),
    Source(usize),
    Target(usize),
}

/// The three standard examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    /// `(B, id, id)`.
    Identity,
    /// `(B, 0, 0)` for singular `B`.
    Singular,
    /// `(B × B, (b,b′) ↦ (b,b), (b,b′) ↦ (b′,b′))`.
    Pair,
}

impl Cat1Group {
    pub fn new(source: Morphism, target: Morphism) -> Result<Self> {
        let g = source.dom();
        if **source.cod() != **g || **target.dom() != **g || **target.cod() != **g {
            return Err(Error::Precondition("s and t must be endomaps of one structure".into()));
        }
        Ok(Cat1Group { source, target })
    }

    pub fn standard(kind: StandardKind, b: &Arc<GroupWithOps>) -> Result<Self> {
        match kind {
            StandardKind::Identity => Self::new(Morphism::identity(b.clone()), Morphism::identity(b.clone())),
            StandardKind::Singular => {
                if !b.is_singular() {
                    return Err(Error::Precondition("the singular example needs an abelian object with vanishing products".into()));
                }
                let z = Morphism::zero(b.clone(), b.clone())?;
                Self::new(z.clone(), z)
            }
            StandardKind::Pair => {
                let n = b.order();
                let g = Arc::new(GroupWithOps::direct_product(b, b)?);
                let s = Morphism::from_fn(g.clone(), g.clone(), |e| {
                    let x = GroupWithOps::split_index(e, n).0;
                    GroupWithOps::pair_index(x, x, n)
                })?;
                let t = Morphism::from_fn(g.clone(), g.clone(), |e| {
                    let y = GroupWithOps::split_index(e, n).1;
                    GroupWithOps::pair_index(y, y, n)
                })?;
                Self::new(s, t)
            }
        }
    }

    pub fn group(&self) -> &Arc<GroupWithOps> {
        self.source.dom()
    }

    pub fn source_map(&self) -> &Morphism {
        &self.source
    }

    pub fn target_map(&self) -> &Morphism {
        &self.target
    }

    #[inline]
    pub fn s(&self, g: usize) -> usize {
        self.source.apply(g)
    }

    #[inline]
    pub fn t(&self, g: usize) -> usize {
        self.target.apply(g)
    }

    pub fn ker_s(&self) -> Vec<usize> {
        self.source.kernel()
    }

    pub fn ker_t(&self) -> Vec<usize> {
        self.target.kernel()
    }

    /// Computed on demand.
    pub fn image_s(&self) -> Vec<usize> {
        self.source.image()
    }

    pub fn validate(&self) -> ValidationReport {
        let g = &**self.group();
        let mut report = ValidationReport::new();
        report.absorb("group", g.validate());
        for (name, m) in [("s", &self.source), ("t", &self.target)] {
            if let Some(v) = m.check() {
                report.push(v.prefixed(name));
            }
        }
        if let Some(x) = g.elements().find(|&x| self.s(self.t(x)) != self.t(x)) {
            report.push(Violation::new("st=t", vec![x], "s(t(g)) != t(g)"));
        }
        if let Some(x) = g.elements().find(|&x| self.t(self.s(x)) != self.s(x)) {
            report.push(Violation::new("ts=s", vec![x], "t(s(g)) != s(g)"));
        }
        let (ks, kt) = (self.ker_s(), self.ker_t());
        let first = |f: &dyn Fn(usize, usize) -> bool| -> Option<Vec<usize>> {
            ks.iter()
                .flat_map(|&k| kt.iter().map(move |&l| (k, l)))
                .find(|&(k, l)| !f(k, l))
                .map(|(k, l)| vec![k, l])
        };
        let z = g.zero();
        if let Some(w) = first(&|k, l| g.sub(g.add(k, l), g.add(l, k)) == z) {
            report.push(Violation::new("kernels-commute", w, "k + l − k − l != 0 for k ∈ Ker s, l ∈ Ker t"));
        }
        let sig = g.signature();
        for op in 0..sig.binary_count() {
            let sym = &sig.binary()[op];
            if let Some(w) = first(&|k, l| g.op(op, k, l) == z && g.op(op, l, k) == z) {
                report.push(Violation::new(
                    format!("kernels-annihilate[{sym}]"),
                    w,
                    format!("k {sym} l or l {sym} k is nonzero for k ∈ Ker s, l ∈ Ker t"),
                ));
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// `s∘s = s` and `t∘t = t`, which follow from the axioms.
    pub fn idempotency_holds(&self) -> bool {
        self.group()
            .elements()
            .all(|x| self.s(self.s(x)) == self.s(x) && self.t(self.t(x)) == self.t(x))
    }

    pub fn cells(&self) -> Vec<Cat1Cell> {
        let n = self.group().order();
        let mut out: Vec<Cat1Cell> = self.group().cells().into_iter().map(Cat1Cell::Group).collect();
        out.extend((0..n).map(Cat1Cell::Source));
        out.extend((0..n).map(Cat1Cell::Target));
        out
    }

    pub fn cell_range(&self, _cell: Cat1Cell) -> usize {
        self.group().order()
    }

    pub fn cell_value(&self, cell: Cat1Cell) -> usize {
        match cell {
            Cat1Cell::Group(c) => self.group().cell_value(c),
            Cat1Cell::Source(x) => self.s(x),
            Cat1Cell::Target(x) => self.t(x),
        }
    }

    pub fn with_cell(&self, cell: Cat1Cell, value: usize) -> Result<Self> {
        let mut g = self.group().clone();
        let (mut s, mut t) = (self.source.map().to_vec(), self.target.map().to_vec());
        crate::error::check_index(value, g.order())?;
        match cell {
            Cat1Cell::Group(c) => g = Arc::new(g.with_cell(c, value)?),
            Cat1Cell::Source(x) => s[x] = value,
            Cat1Cell::Target(x) => t[x] = value,
        }
        Self::new(Morphism::new(g.clone(), g.clone(), s)?, Morphism::new(g.clone(), g, t)?)
    }
}

/// A morphism `f: G → G′` with `f s = s′ f` and `f t = t′ f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cat1Morphism {
    pub dom: Arc<Cat1Group>,
    pub cod: Arc<Cat1Group>,
    pub map: Morphism,
}

impl Cat1Morphism {
    pub fn new(dom: Arc<Cat1Group>, cod: Arc<Cat1Group>, map: Morphism) -> Result<Self> {
        if **map.dom() != **dom.group() || **map.cod() != **cod.group() {
            return Err(Error::Precondition("map does not match the cat¹-groups".into()));
        }
        Ok(Cat1Morphism { dom, cod, map })
    }

    pub fn from_map(dom: Arc<Cat1Group>, cod: Arc<Cat1Group>, map: Vec<usize>) -> Result<Self> {
        let m = Morphism::new(dom.group().clone(), cod.group().clone(), map)?;
        Self::new(dom, cod, m)
    }

    pub fn identity(c: Arc<Cat1Group>) -> Self {
        Cat1Morphism {
            map: Morphism::identity(c.group().clone()),
            dom: c.clone(),
            cod: c,
        }
    }

    pub fn zero(dom: Arc<Cat1Group>, cod: Arc<Cat1Group>) -> Result<Self> {
        let m = Morphism::zero(dom.group().clone(), cod.group().clone())?;
        Self::new(dom, cod, m)
    }

    pub fn check(&self) -> Option<Violation> {
        if let Some(v) = self.map.check() {
            return Some(v);
        }
        let (d, c, f) = (&self.dom, &self.cod, &self.map);
        if let Some(x) = d.group().elements().find(|&x| f.apply(d.s(x)) != c.s(f.apply(x))) {
            return Some(Violation::new("commutes-with-s", vec![x], "f(s(g)) != s′(f(g))"));
        }
        if let Some(x) = d.group().elements().find(|&x| f.apply(d.t(x)) != c.t(f.apply(x))) {
            return Some(Violation::new("commutes-with-t", vec![x], "f(t(g)) != t′(f(g))"));
        }
        None
    }

    pub fn is_morphism(&self) -> bool {
        self.check().is_none()
    }
}

impl StructureMap for Cat1Morphism {
    fn verify(&self) -> Result<()> {
        match self.check() {
            None => Ok(()),
            Some(v) => Err(Error::Verification(v.to_string())),
        }
    }

    fn then(&self, next: &Self) -> Result<Self> {
        if *self.cod != *next.dom {
            return Err(Error::Precondition("composing cat¹ maps whose ends do not match".into()));
        }
        Ok(Cat1Morphism {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            map: self.map.then(&next.map)?,
        })
    }

    fn is_identity(&self) -> bool {
        *self.dom == *self.cod && self.map.is_identity()
    }
}

/// An ideal of `G` mapped into itself by `s` and by `t`.
pub fn is_normal_subcat1(c: &Cat1Group, n: &[usize]) -> Result<bool> {
    let m = mask_of(c.group().order(), n)?;
    let closed = n.iter().all(|&x| m[c.s(x)] && m[c.t(x)]);
    Ok(closed && is_ideal(c.group(), n)?)
}

/// `G/N` with `s[g] = [s g]`, `t[g] = [t g]`, and its projection.
#[derive(Debug, Clone)]
pub struct QuotientCat1 {
    pub cat1: Arc<Cat1Group>,
    pub quotient: Quotient,
    pub projection: Cat1Morphism,
}

pub fn quotient_cat1(c: &Arc<Cat1Group>, n: &[usize]) -> Result<QuotientCat1> {
    if !is_normal_subcat1(c, n)? {
        return Err(Error::Precondition(format!("{n:?} is not a normal subcat¹-group")));
    }
    let q = quotient(c.group(), n)?;
    let induced = |f: &dyn Fn(usize) -> usize| {
        Morphism::from_fn(q.structure.clone(), q.structure.clone(), |i| q.class_of(f(q.representatives[i])))
    };
    let qc = Arc::new(Cat1Group::new(induced(&|x| c.s(x))?, induced(&|x| c.t(x))?)?);
    let projection = Cat1Morphism::from_map(c.clone(), qc.clone(), q.projection.map().to_vec())?;
    Ok(QuotientCat1 {
        cat1: qc,
        quotient: q,
        projection,
    })
}

/// `Ker f`, always a normal subcat¹-group.
pub fn cat1_kernel(f: &Cat1Morphism) -> Result<Subset> {
    f.verify()?;
    let k = f.map.kernel();
    if !is_normal_subcat1(&f.dom, &k)? {
        return Err(Error::Verification("kernel of a cat¹ morphism is not normal".into()));
    }
    Subset::new(f.dom.group().clone(), k)
}

/// A covering restricts to an isomorphism `Ker s̃ → Ker s`.
pub fn is_covering_cat1(p: &Cat1Morphism) -> bool {
    let (ks_dom, ks_cod) = (p.dom.ker_s(), p.cod.ker_s());
    if ks_dom.len() != ks_cod.len() {
        return false;
    }
    let image = p.map.image_of(&ks_dom);
    // Any restriction of a morphism that is a bijection between subobjects has
    // a morphism inverse, but the check is made explicitly.
    if image != ks_cod {
        return false;
    }
    let (Ok((sd, id)), Ok((sc, ic))) = (
        crate::subset::substructure(p.dom.group(), &ks_dom),
        crate::subset::substructure(p.cod.group(), &ks_cod),
    ) else {
        return false;
    };
    p.map
        .restrict(id.map(), sd, ic.map(), sc)
        .is_ok_and(|r| r.is_isomorphism())
}

/// Some isomorphism of cat¹-groups, found by searching group isomorphisms
/// intertwining `s` and `t`.
pub fn find_cat1_isomorphism(a: &Arc<Cat1Group>, b: &Arc<Cat1Group>) -> Option<IsoWitness<Cat1Morphism>> {
    let extra = vec![
        (a.source_map().map().to_vec(), b.source_map().map().to_vec()),
        (a.target_map().map().to_vec(), b.target_map().map().to_vec()),
    ];
    let f = all_isomorphisms_with(a.group(), b.group(), &extra).into_iter().next()?;
    let inv = f.inverse()?;
    let fwd = Cat1Morphism::new(a.clone(), b.clone(), f).ok()?;
    let bwd = Cat1Morphism::new(b.clone(), a.clone(), inv).ok()?;
    IsoWitness::new(fwd, bwd).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cyclic_group, cyclic_ring, zero_ring};

    fn z(n: usize) -> Arc<GroupWithOps> {
        Arc::new(cyclic_ring(n))
    }

    #[test]
    fn standard_examples_validate() {
        let id = Cat1Group::standard(StandardKind::Identity, &z(4)).unwrap();
        assert!(id.is_valid());
        let pair = Cat1Group::standard(StandardKind::Pair, &z(2)).unwrap();
        assert!(pair.is_valid());
        assert_eq!(pair.group().order(), 4);
        assert_eq!(pair.ker_s(), vec![0, 1]);
        assert_eq!(pair.ker_t(), vec![0, 2]);
        let zr = Arc::new(zero_ring(&cyclic_group(2)));
        let sing = Cat1Group::standard(StandardKind::Singular, &zr).unwrap();
        assert!(sing.is_valid());
        assert!(Cat1Group::standard(StandardKind::Singular, &z(2)).is_err());
        for c in [&id, &pair, &sing] {
            assert!(c.idempotency_holds());
        }
    }

    #[test]
    fn zero_source_identity_target_is_invalid() {
        let g = z(4);
        let c = Cat1Group::new(Morphism::zero(g.clone(), g.clone()).unwrap(), Morphism::identity(g)).unwrap();
        let r = c.validate();
        assert!(r.mentions("st=t"));
        assert_eq!(r.violations[0].witness, vec![1]);
    }

    #[test]
    fn pair_quotient() {
        let c = Arc::new(Cat1Group::standard(StandardKind::Pair, &z(4)).unwrap());
        let n: Vec<usize> = [0, 2]
            .iter()
            .flat_map(|&a| [0, 2].map(|b| GroupWithOps::pair_index(a, b, 4)))
            .collect();
        assert!(is_normal_subcat1(&c, &n).unwrap());
        let q = quotient_cat1(&c, &n).unwrap();
        assert!(q.cat1.is_valid());
        let target = Arc::new(Cat1Group::standard(StandardKind::Pair, &z(2)).unwrap());
        assert!(find_cat1_isomorphism(&q.cat1, &target).is_some());
        let k = cat1_kernel(&q.projection).unwrap();
        let mut n = n.clone();
        n.sort();
        assert_eq!(k.elements(), n.as_slice());
    }

    #[test]
    fn extreme_kernels_and_quotients() {
        let c = Arc::new(Cat1Group::standard(StandardKind::Pair, &z(2)).unwrap());
        assert!(is_normal_subcat1(&c, &[0]).unwrap());
        assert_eq!(cat1_kernel(&Cat1Morphism::identity(c.clone())).unwrap().elements(), &[0]);
        assert_eq!(cat1_kernel(&Cat1Morphism::zero(c.clone(), c.clone()).unwrap()).unwrap().len(), 4);
        let q = quotient_cat1(&c, &[0, 1, 2, 3]).unwrap();
        assert_eq!(q.cat1.group().order(), 1);
        let q = quotient_cat1(&c, &[0]).unwrap();
        assert!(find_cat1_isomorphism(&q.cat1, &c).is_some());
        // The diagonal is a subobject closed under s and t but not an ideal.
        assert!(!is_normal_subcat1(&c, &[0, 3]).unwrap());
    }

    #[test]
    fn coverings() {
        let c = Arc::new(Cat1Group::standard(StandardKind::Pair, &z(4)).unwrap());
        assert!(is_covering_cat1(&Cat1Morphism::identity(c.clone())));
        let n: Vec<usize> = [0, 2]
            .iter()
            .flat_map(|&a| [0, 2].map(|b| GroupWithOps::pair_index(a, b, 4)))
            .collect();
        let q = quotient_cat1(&c, &n).unwrap();
        assert!(!is_covering_cat1(&q.projection));
    }
}
