//! Subobjects, ideals and quotients of a single structure.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{check_index, Error, Result};
use crate::gwo::GroupWithOps;
use crate::morphism::Morphism;
use crate::table::Table;

/// Default ceiling on carrier sizes for exhaustive subset enumeration.
pub const DEFAULT_BOUND: usize = 16;

/// A subset of a structure's carrier with its subobject/ideal status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    parent: Arc<GroupWithOps>,
    elements: Vec<usize>,
    is_subobject: bool,
    is_ideal: bool,
}

impl Subset {
    /// Sorts and deduplicates `elements`; the set must contain `0`.
    pub fn new(parent: Arc<GroupWithOps>, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        for &x in &elements {
            check_index(x, parent.order())?;
        }
        if elements.binary_search(&parent.zero()).is_err() {
            return Err(Error::Precondition("subset does not contain 0".into()));
        }
        let is_subobject = is_subobject(&parent, &elements)?;
        let is_ideal = is_subobject && is_ideal(&parent, &elements)?;
        Ok(Subset {
            parent,
            elements,
            is_subobject,
            is_ideal,
        })
    }

    pub fn parent(&self) -> &Arc<GroupWithOps> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_subobject(&self) -> bool {
        self.is_subobject
    }

    pub fn is_ideal(&self) -> bool {
        self.is_ideal
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

pub(crate) fn mask_of(n: usize, xs: &[usize]) -> Result<Vec<bool>> {
    let mut m = vec![false; n];
    for &x in xs {
        check_index(x, n)?;
        m[x] = true;
    }
    Ok(m)
}

/// Whether `xs` contains `0` and is closed under `+`, `−` and every extra operation.
pub fn is_subobject(g: &GroupWithOps, xs: &[usize]) -> Result<bool> {
    let m = mask_of(g.order(), xs)?;
    if !m[g.zero()] {
        return Ok(false);
    }
    let sig = g.signature();
    for &a in xs {
        if !m[g.neg(a)] {
            return Ok(false);
        }
        for u in 0..sig.unary_count() {
            if !m[g.unary_op(u, a)] {
                return Ok(false);
            }
        }
        for &b in xs {
            if !m[g.add(a, b)] {
                return Ok(false);
            }
            for k in 0..sig.binary_count() {
                if !m[g.op(k, a, b)] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether `xs` is a normal subgroup with operations: a subobject, normal in
/// `(G, +)`, with `a ⋆ n ∈ xs` for every `a ∈ G`, `n ∈ xs` and extra `⋆`.
pub fn is_ideal(g: &GroupWithOps, xs: &[usize]) -> Result<bool> {
    if !is_subobject(g, xs)? {
        return Ok(false);
    }
    let m = mask_of(g.order(), xs)?;
    let kcount = g.signature().binary_count();
    for a in g.elements() {
        for &x in xs {
            if !m[g.conj(a, x)] {
                return Ok(false);
            }
            for k in 0..kcount {
                if !m[g.op(k, a, x)] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Smallest subobject (or ideal, when `ideal` is set) containing `seed`,
/// as a membership mask.
pub fn closure(g: &GroupWithOps, seed: &[usize], ideal: bool) -> Vec<bool> {
    let n = g.order();
    let sig = g.signature();
    let mut mask = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    let push = |x: usize, mask: &mut Vec<bool>, queue: &mut Vec<usize>| {
        if !mask[x] {
            mask[x] = true;
            queue.push(x);
        }
    };
    push(g.zero(), &mut mask, &mut queue);
    for &s in seed {
        push(s, &mut mask, &mut queue);
    }
    while let Some(x) = queue.pop() {
        members.push(x);
        push(g.neg(x), &mut mask, &mut queue);
        for u in 0..sig.unary_count() {
            push(g.unary_op(u, x), &mut mask, &mut queue);
        }
        for i in 0..members.len() {
            let y = members[i];
            push(g.add(x, y), &mut mask, &mut queue);
            push(g.add(y, x), &mut mask, &mut queue);
            for k in 0..sig.binary_count() {
                push(g.op(k, x, y), &mut mask, &mut queue);
                push(g.op(k, y, x), &mut mask, &mut queue);
            }
        }
        if ideal {
            for a in g.elements() {
                push(g.conj(a, x), &mut mask, &mut queue);
                for k in 0..sig.binary_count() {
                    push(g.op(k, a, x), &mut mask, &mut queue);
                    push(g.op(k, x, a), &mut mask, &mut queue);
                }
            }
        }
    }
    mask
}

fn elements_of(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

fn enumerate_closed(g: &GroupWithOps, ideal: bool, seed: &[usize]) -> Vec<Vec<usize>> {
    let n = g.order();
    let start = closure(g, seed, ideal);
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    let mut all = Vec::new();
    while let Some(cur) = frontier.pop() {
        // closure(cur ∪ {x}) only depends on the coset x + cur.
        let mut covered = cur.clone();
        let cur_elems = elements_of(&cur);
        for x in 0..n {
            if covered[x] {
                continue;
            }
            for &c in &cur_elems {
                covered[g.add(x, c)] = true;
            }
            let mut seed = cur_elems.clone();
            seed.push(x);
            let next = closure(g, &seed, ideal);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
        all.push(elements_of(&cur));
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

/// All ideals of `g`, sorted by size then lexicographically.
pub fn enumerate_ideals(g: &Arc<GroupWithOps>, bound: usize) -> Result<Vec<Subset>> {
    if g.order() > bound {
        return Err(Error::BoundExceeded {
            size: g.order(),
            bound,
        });
    }
    enumerate_closed(g, true, &[])
        .into_iter()
        .map(|xs| Subset::new(g.clone(), xs))
        .collect()
}

/// All ideals of `g` containing `seed`, sorted as in [`enumerate_ideals`].
pub fn enumerate_ideals_containing(g: &Arc<GroupWithOps>, seed: &[usize], bound: usize) -> Result<Vec<Subset>> {
    if g.order() > bound {
        return Err(Error::BoundExceeded {
            size: g.order(),
            bound,
        });
    }
    for &x in seed {
        check_index(x, g.order())?;
    }
    enumerate_closed(g, true, seed)
        .into_iter()
        .map(|xs| Subset::new(g.clone(), xs))
        .collect()
}

/// All subobjects of `g`, sorted by size then lexicographically.
pub fn enumerate_subobjects(g: &Arc<GroupWithOps>, bound: usize) -> Result<Vec<Subset>> {
    if g.order() > bound {
        return Err(Error::BoundExceeded {
            size: g.order(),
            bound,
        });
    }
    enumerate_closed(g, false, &[])
        .into_iter()
        .map(|xs| Subset::new(g.clone(), xs))
        .collect()
}

/// The subobject on `xs` as a structure in its own right, elements
/// renumbered in increasing order, together with its inclusion.
pub fn substructure(g: &Arc<GroupWithOps>, xs: &[usize]) -> Result<(Arc<GroupWithOps>, Morphism)> {
    let mut xs = xs.to_vec();
    xs.sort_unstable();
    xs.dedup();
    if !is_subobject(g, &xs)? {
        return Err(Error::Precondition(format!("{xs:?} is not a subobject")));
    }
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in xs.iter().enumerate() {
        pos[x] = i;
    }
    let m = xs.len();
    let sig = g.signature();
    let sub = GroupWithOps::from_tables(
        sig.clone(),
        pos[g.zero()],
        Table::from_fn(m, m, |i, j| pos[g.add(xs[i], xs[j])]),
        xs.iter().map(|&x| pos[g.neg(x)]).collect(),
        (0..sig.binary_count())
            .map(|k| Table::from_fn(m, m, |i, j| pos[g.op(k, xs[i], xs[j])]))
            .collect(),
        (0..sig.unary_count())
            .map(|u| xs.iter().map(|&x| pos[g.unary_op(u, x)]).collect())
            .collect(),
    )?;
    let sub = Arc::new(sub);
    let inclusion = Morphism::new(sub.clone(), g.clone(), xs)?;
    Ok((sub, inclusion))
}

/// A quotient `G/N` with its projection. Element `i` of the quotient is the
/// coset whose least member is `representatives[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub structure: Arc<GroupWithOps>,
    pub projection: Morphism,
    pub representatives: Vec<usize>,
}

impl Quotient {
    /// Class index of `a`.
    pub fn class_of(&self, a: usize) -> usize {
        self.projection.apply(a)
    }

    pub fn parent(&self) -> &Arc<GroupWithOps> {
        self.projection.dom()
    }
}

/// `G/N` for an ideal `N`, with cosets labelled by their least element.
pub fn quotient(g: &Arc<GroupWithOps>, ideal: &[usize]) -> Result<Quotient> {
    if !is_ideal(g, ideal)? {
        return Err(Error::Precondition(format!("{ideal:?} is not an ideal")));
    }
    let (class_of, reps) = cosets(g, ideal);
    let m = reps.len();
    let sig = g.signature();
    let structure = GroupWithOps::from_tables(
        sig.clone(),
        class_of[g.zero()],
        Table::from_fn(m, m, |i, j| class_of[g.add(reps[i], reps[j])]),
        reps.iter().map(|&r| class_of[g.neg(r)]).collect(),
        (0..sig.binary_count())
            .map(|k| Table::from_fn(m, m, |i, j| class_of[g.op(k, reps[i], reps[j])]))
            .collect(),
        (0..sig.unary_count())
            .map(|u| reps.iter().map(|&r| class_of[g.unary_op(u, r)]).collect())
            .collect(),
    )?;
    let structure = Arc::new(structure);
    let projection = Morphism::new(g.clone(), structure.clone(), class_of)?;
    Ok(Quotient {
        structure,
        projection,
        representatives: reps,
    })
}

/// Partition of the carrier into cosets `N + a`; returns the class of each
/// element and the least element of each class, classes ordered by that
/// least element.
pub(crate) fn cosets(g: &GroupWithOps, normal: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut class_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for a in g.elements() {
        if class_of[a] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(a);
        for &x in normal {
            class_of[g.add(x, a)] = c;
        }
    }
    (class_of, reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cyclic_ring, dihedral_group, klein_zero_ring};

    #[test]
    fn subobjects_of_z4() {
        let z4 = cyclic_ring(4);
        assert!(is_subobject(&z4, &[0, 2]).unwrap());
        assert!(!is_subobject(&z4, &[0, 1]).unwrap());
        assert!(is_subobject(&z4, &[0, 1, 2, 3]).unwrap());
        assert!(is_subobject(&z4, &[0, 9]).is_err());
    }

    #[test]
    fn ideals_of_z4() {
        let z4 = Arc::new(cyclic_ring(4));
        assert!(is_ideal(&z4, &[0, 2]).unwrap());
        assert!(is_ideal(&z4, &[0]).unwrap());
        let ideals: Vec<Vec<usize>> = enumerate_ideals(&z4, DEFAULT_BOUND)
            .unwrap()
            .iter()
            .map(|s| s.elements().to_vec())
            .collect();
        assert_eq!(ideals, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        assert_eq!(enumerate_ideals(&Arc::new(cyclic_ring(2)), 16).unwrap().len(), 2);
    }

    #[test]
    fn zero_ring_on_klein_group_has_five_ideals() {
        let k = Arc::new(klein_zero_ring());
        assert_eq!(enumerate_ideals(&k, DEFAULT_BOUND).unwrap().len(), 5);
    }

    #[test]
    fn non_normal_subgroup_of_d4_is_not_an_ideal() {
        let d4 = dihedral_group(4);
        // a reflection together with zero
        let refl = (0..8).find(|&x| x != 0 && d4.add(x, x) == 0 && !d4.elements().all(|g| d4.conj(g, x) == x)).unwrap();
        let xs = [0, refl];
        assert!(is_subobject(&d4, &xs).unwrap());
        assert!(!is_ideal(&d4, &xs).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let z4 = Arc::new(cyclic_ring(4));
        assert!(matches!(enumerate_ideals(&z4, 3), Err(Error::BoundExceeded { size: 4, bound: 3 })));
    }

    #[test]
    fn quotient_of_z4_by_two() {
        let z4 = Arc::new(cyclic_ring(4));
        let q = quotient(&z4, &[0, 2]).unwrap();
        assert_eq!(q.structure.order(), 2);
        assert_eq!(q.representatives, vec![0, 1]);
        assert_eq!(q.projection.map(), &[0, 1, 0, 1]);
        assert!(q.structure.validate().is_valid());
        assert_eq!(q.projection.kernel(), vec![0, 2]);
        assert!(quotient(&z4, &[0, 1]).is_err());
    }

    #[test]
    fn extreme_quotients() {
        let z4 = Arc::new(cyclic_ring(4));
        assert_eq!(quotient(&z4, &[0]).unwrap().structure.order(), 4);
        assert_eq!(quotient(&z4, &[0, 1, 2, 3]).unwrap().structure.order(), 1);
    }

    #[test]
    fn substructure_renumbers() {
        let z4 = Arc::new(cyclic_ring(4));
        let (sub, inc) = substructure(&z4, &[2, 0]).unwrap();
        assert_eq!(sub.order(), 2);
        assert_eq!(inc.map(), &[0, 2]);
        assert!(inc.is_morphism());
        assert!(sub.is_singular());
    }
}
