use std::sync::Arc;

use crate::error::{check_index, Error, Result};
use crate::gwo::GroupWithOps;
use crate::report::{first_failure, Violation};
use crate::subset::Subset;

/// A map between two structures of the same signature, given as a table.
///
/// Construction checks shapes only; [`Morphism::check`] decides whether the
/// map preserves `0`, `+` and every extra operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    dom: Arc<GroupWithOps>,
    cod: Arc<GroupWithOps>,
    map: Vec<usize>,
}

impl Morphism {
    pub fn new(dom: Arc<GroupWithOps>, cod: Arc<GroupWithOps>, map: Vec<usize>) -> Result<Self> {
        dom.same_signature(&cod)?;
        if map.len() != dom.order() {
            return Err(Error::Malformed(format!(
                "map has {} entries, domain has {} elements",
                map.len(),
                dom.order()
            )));
        }
        for &x in &map {
            check_index(x, cod.order())?;
        }
        Ok(Morphism { dom, cod, map })
    }

    pub fn from_fn(dom: Arc<GroupWithOps>, cod: Arc<GroupWithOps>, f: impl Fn(usize) -> usize) -> Result<Self> {
        let map = dom.elements().map(f).collect();
        Self::new(dom, cod, map)
    }

    pub fn identity(g: Arc<GroupWithOps>) -> Self {
        let map = g.elements().collect();
        Morphism {
            dom: g.clone(),
            cod: g,
            map,
        }
    }

    pub fn zero(dom: Arc<GroupWithOps>, cod: Arc<GroupWithOps>) -> Result<Self> {
        let z = cod.zero();
        Self::from_fn(dom, cod, |_| z)
    }

    pub fn dom(&self) -> &Arc<GroupWithOps> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<GroupWithOps> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// First violated preservation law, if any.
    pub fn check(&self) -> Option<Violation> {
        let (d, c, f) = (&*self.dom, &*self.cod, &self.map);
        let n = d.order();
        if f[d.zero()] != c.zero() {
            return Some(Violation::new(
                "preserves-zero",
                vec![d.zero()],
                format!("0 maps to {} instead of {}", f[d.zero()], c.zero()),
            ));
        }
        if let Some(w) = first_failure(n, 2, |t| f[d.add(t[0], t[1])] == c.add(f[t[0]], f[t[1]])) {
            return Some(Violation::new("preserves-add", w, "f(a+b) != f(a)+f(b)"));
        }
        if let Some(w) = first_failure(n, 1, |t| f[d.neg(t[0])] == c.neg(f[t[0]])) {
            return Some(Violation::new("preserves-neg", w, "f(-a) != -f(a)"));
        }
        let sig = d.signature();
        for k in 0..sig.binary_count() {
            if let Some(w) = first_failure(n, 2, |t| f[d.op(k, t[0], t[1])] == c.op(k, f[t[0]], f[t[1]])) {
                let s = &sig.binary()[k];
                return Some(Violation::new(format!("preserves[{s}]"), w, format!("f(a {s} b) != f(a) {s} f(b)")));
            }
        }
        for k in 0..sig.unary_count() {
            if let Some(w) = first_failure(n, 1, |t| f[d.unary_op(k, t[0])] == c.unary_op(k, f[t[0]])) {
                let s = &sig.unary()[k];
                return Some(Violation::new(format!("preserves[{s}]"), w, format!("f({s}(a)) != {s}(f(a))")));
            }
        }
        None
    }

    pub fn is_morphism(&self) -> bool {
        self.check().is_none()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        if *self.cod != *next.dom {
            return Err(Error::Precondition("composing maps whose ends do not match".into()));
        }
        let map = self.map.iter().map(|&x| next.map[x]).collect();
        Ok(Morphism {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            map,
        })
    }

    pub fn is_identity(&self) -> bool {
        *self.dom == *self.cod && self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.order()];
        self.map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.order()];
        for &x in &self.map {
            seen[x] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.order() == self.cod.order() && self.is_injective()
    }

    /// Inverse map, when bijective. The result is not re-checked as a morphism.
    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.cod.order()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Some(Morphism {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            map: inv,
        })
    }

    /// Bijective with an inverse that is itself a morphism.
    pub fn is_isomorphism(&self) -> bool {
        self.is_morphism() && self.inverse().is_some_and(|inv| inv.is_morphism())
    }

    /// Preimage of a set of codomain elements, sorted.
    pub fn preimage(&self, targets: &[usize]) -> Vec<usize> {
        let mut mask = vec![false; self.cod.order()];
        for &t in targets {
            mask[t] = true;
        }
        self.dom.elements().filter(|&a| mask[self.map[a]]).collect()
    }

    /// Image of a set of domain elements, sorted and deduplicated.
    pub fn image_of(&self, elements: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = elements.iter().map(|&a| self.map[a]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Kernel and image, with their ideal/subobject flags computed.
    pub fn kernel_and_image(&self) -> Result<(Subset, Subset)> {
        let ker = self.preimage(&[self.cod.zero()]);
        let all: Vec<usize> = self.dom.elements().collect();
        let img = self.image_of(&all);
        Ok((Subset::new(self.dom.clone(), ker)?, Subset::new(self.cod.clone(), img)?))
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.preimage(&[self.cod.zero()])
    }

    pub fn image(&self) -> Vec<usize> {
        let all: Vec<usize> = self.dom.elements().collect();
        self.image_of(&all)
    }

    /// Restriction to a domain substructure and corestriction to a codomain
    /// substructure, both given by their sorted element lists (as produced by
    /// [`crate::subset::substructure`]).
    pub fn restrict(
        &self,
        dom_elems: &[usize],
        sub_dom: Arc<GroupWithOps>,
        cod_elems: &[usize],
        sub_cod: Arc<GroupWithOps>,
    ) -> Result<Morphism> {
        let mut pos = vec![usize::MAX; self.cod.order()];
        for (i, &c) in cod_elems.iter().enumerate() {
            pos[c] = i;
        }
        let mut map = Vec::with_capacity(dom_elems.len());
        for &a in dom_elems {
            let p = pos[self.map[a]];
            if p == usize::MAX {
                return Err(Error::Precondition(format!(
                    "element {a} maps to {} outside the chosen codomain subset",
                    self.map[a]
                )));
            }
            map.push(p);
        }
        Morphism::new(sub_dom, sub_cod, map)
    }
}
