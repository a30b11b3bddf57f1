//! Isomorphism search and self-checking isomorphism certificates.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gwo::GroupWithOps;
use crate::morphism::Morphism;

/// A structure-preserving map in one of the categories handled by the crate.
pub trait StructureMap: Clone {
    /// `Ok` iff the map satisfies every law of its category.
    fn verify(&self) -> Result<()>;
    /// `next ∘ self`.
    fn then(&self, next: &Self) -> Result<Self>;
    fn is_identity(&self) -> bool;
}

impl StructureMap for Morphism {
    fn verify(&self) -> Result<()> {
        match self.check() {
            None => Ok(()),
            Some(v) => Err(Error::Verification(v.to_string())),
        }
    }

    fn then(&self, next: &Self) -> Result<Self> {
        Morphism::then(self, next)
    }

    fn is_identity(&self) -> bool {
        Morphism::is_identity(self)
    }
}

/// A pair of mutually inverse structure-preserving maps. Both directions and
/// both composites are verified whenever a witness is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness<M> {
    forward: M,
    backward: M,
}

impl<M: StructureMap> IsoWitness<M> {
    pub fn new(forward: M, backward: M) -> Result<Self> {
        forward.verify()?;
        backward.verify()?;
        if !forward.then(&backward)?.is_identity() {
            return Err(Error::Verification("backward after forward is not the identity".into()));
        }
        if !backward.then(&forward)?.is_identity() {
            return Err(Error::Verification("forward after backward is not the identity".into()));
        }
        Ok(IsoWitness { forward, backward })
    }

    pub fn forward(&self) -> &M {
        &self.forward
    }

    pub fn backward(&self) -> &M {
        &self.backward
    }

    pub fn inverse(self) -> Self {
        IsoWitness {
            forward: self.backward,
            backward: self.forward,
        }
    }

    /// Re-runs every check; used after deserialization.
    pub fn reverify(&self) -> Result<()> {
        Self::new(self.forward.clone(), self.backward.clone()).map(|_| ())
    }
}

impl IsoWitness<Morphism> {
    /// Witness from a bijective morphism, inverting it.
    pub fn from_bijection(forward: Morphism) -> Result<Self> {
        let backward = forward
            .inverse()
            .ok_or_else(|| Error::Verification("map is not bijective".into()))?;
        Self::new(forward, backward)
    }
}

/// Backtracking search for bijections `a → b` preserving every operation and
/// intertwining each pair `(e_a, e_b)` of extra endomaps (`f ∘ e_a = e_b ∘ f`).
struct Search<'a> {
    a: &'a GroupWithOps,
    b: &'a GroupWithOps,
    extra: &'a [(Vec<usize>, Vec<usize>)],
    inv_a: Vec<Vec<usize>>,
    inv_b: Vec<Vec<usize>>,
    map: Vec<usize>,
    back: Vec<usize>,
    assigned: Vec<usize>,
    limit: usize,
    found: Vec<Vec<usize>>,
}

const UNSET: usize = usize::MAX;

fn invariants(g: &GroupWithOps, extra: &[&[usize]]) -> Vec<Vec<usize>> {
    g.elements()
        .map(|x| {
            let mut v = vec![g.additive_order(x)];
            for k in 0..g.signature().binary_count() {
                v.push(g.additive_order(g.op(k, x, x)));
            }
            for u in 0..g.signature().unary_count() {
                v.push(usize::from(g.unary_op(u, x) == x));
            }
            for e in extra {
                v.push(usize::from(e[x] == x));
                v.push(g.additive_order(e[x]));
            }
            v
        })
        .collect()
}

impl<'a> Search<'a> {
    fn try_assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((p, q)) = queue.pop() {
            if self.map[p] != UNSET {
                if self.map[p] != q {
                    return false;
                }
                continue;
            }
            if self.back[q] != UNSET || self.inv_a[p] != self.inv_b[q] {
                return false;
            }
            self.map[p] = q;
            self.back[q] = p;
            self.assigned.push(p);
            let (a, b) = (self.a, self.b);
            let sig = a.signature();
            queue.push((a.neg(p), b.neg(q)));
            for u in 0..sig.unary_count() {
                queue.push((a.unary_op(u, p), b.unary_op(u, q)));
            }
            for (ea, eb) in self.extra {
                queue.push((ea[p], eb[q]));
            }
            for i in 0..self.assigned.len() {
                let z = self.assigned[i];
                let w = self.map[z];
                queue.push((a.add(p, z), b.add(q, w)));
                queue.push((a.add(z, p), b.add(w, q)));
                for k in 0..sig.binary_count() {
                    queue.push((a.op(k, p, z), b.op(k, q, w)));
                    queue.push((a.op(k, z, p), b.op(k, w, q)));
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let p = self.assigned.pop().unwrap();
            self.back[self.map[p]] = UNSET;
            self.map[p] = UNSET;
        }
    }

    fn run(&mut self) {
        if self.found.len() >= self.limit {
            return;
        }
        let Some(x) = (0..self.map.len()).find(|&x| self.map[x] == UNSET) else {
            self.found.push(self.map.clone());
            return;
        };
        for y in 0..self.back.len() {
            if self.back[y] != UNSET || self.inv_a[x] != self.inv_b[y] {
                continue;
            }
            let mark = self.assigned.len();
            if self.try_assign(x, y) {
                self.run();
            }
            self.undo_to(mark);
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

fn search(
    a: &GroupWithOps,
    b: &GroupWithOps,
    extra: &[(Vec<usize>, Vec<usize>)],
    limit: usize,
) -> Vec<Vec<usize>> {
    if a.order() != b.order() || a.signature() != b.signature() {
        return vec![];
    }
    let ea: Vec<&[usize]> = extra.iter().map(|(x, _)| x.as_slice()).collect();
    let eb: Vec<&[usize]> = extra.iter().map(|(_, y)| y.as_slice()).collect();
    let inv_a = invariants(a, &ea);
    let inv_b = invariants(b, &eb);
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return vec![];
    }
    let n = a.order();
    let mut s = Search {
        a,
        b,
        extra,
        inv_a,
        inv_b,
        map: vec![UNSET; n],
        back: vec![UNSET; n],
        assigned: vec![],
        limit,
        found: vec![],
    };
    if s.try_assign(a.zero(), b.zero()) {
        s.run();
    }
    s.found
}

/// Some isomorphism `a → b`, if one exists. The search is exhaustive.
pub fn find_isomorphism(a: &Arc<GroupWithOps>, b: &Arc<GroupWithOps>) -> Option<Morphism> {
    find_isomorphism_with(a, b, &[])
}

/// Like [`find_isomorphism`], additionally requiring `f ∘ e_a = e_b ∘ f` for
/// every pair of endomaps in `extra`.
pub fn find_isomorphism_with(
    a: &Arc<GroupWithOps>,
    b: &Arc<GroupWithOps>,
    extra: &[(Vec<usize>, Vec<usize>)],
) -> Option<Morphism> {
    search(a, b, extra, 1)
        .into_iter()
        .map(|m| Morphism::new(a.clone(), b.clone(), m).expect("search yields well-formed maps"))
        .find(|f| f.is_isomorphism())
}

/// Every isomorphism `a → b` respecting `extra`, in lexicographic order of maps.
pub fn all_isomorphisms_with(
    a: &Arc<GroupWithOps>,
    b: &Arc<GroupWithOps>,
    extra: &[(Vec<usize>, Vec<usize>)],
) -> Vec<Morphism> {
    search(a, b, extra, usize::MAX)
        .into_iter()
        .map(|m| Morphism::new(a.clone(), b.clone(), m).expect("search yields well-formed maps"))
        .filter(|f| f.is_isomorphism())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cyclic_group, cyclic_ring, klein_group};
    use crate::subset::quotient;

    #[test]
    fn z4_is_isomorphic_to_itself() {
        let z4 = Arc::new(cyclic_ring(4));
        let f = find_isomorphism(&z4, &z4).unwrap();
        assert!(f.is_identity());
    }

    #[test]
    fn z4_and_klein_group_differ() {
        let z4 = Arc::new(cyclic_group(4));
        let k = Arc::new(klein_group());
        assert!(find_isomorphism(&z4, &k).is_none());
        assert!(find_isomorphism(&k, &z4).is_none());
    }

    #[test]
    fn quotient_matches_z2() {
        let z4 = Arc::new(cyclic_ring(4));
        let q = quotient(&z4, &[0, 2]).unwrap();
        let z2 = Arc::new(cyclic_ring(2));
        let f = find_isomorphism(&q.structure, &z2).unwrap();
        IsoWitness::from_bijection(f).unwrap();
    }

    #[test]
    fn automorphism_counts() {
        let z5 = Arc::new(cyclic_group(5));
        assert_eq!(all_isomorphisms_with(&z5, &z5, &[]).len(), 4);
        let k = Arc::new(klein_group());
        assert_eq!(all_isomorphisms_with(&k, &k, &[]).len(), 6);
        // The ring structure kills all nontrivial automorphisms of Z5.
        let r5 = Arc::new(cyclic_ring(5));
        assert_eq!(all_isomorphisms_with(&r5, &r5, &[]).len(), 1);
    }

    #[test]
    fn witness_rejects_non_inverse_pair() {
        let z4 = Arc::new(cyclic_group(4));
        let neg = Morphism::from_fn(z4.clone(), z4.clone(), |a| (4 - a) % 4).unwrap();
        assert!(IsoWitness::new(neg.clone(), neg.clone()).is_ok());
        let id = Morphism::identity(z4);
        assert!(IsoWitness::new(neg, id).is_err());
    }
}
