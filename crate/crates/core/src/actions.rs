//! Derived actions, split extensions and semidirect products.
//!
//! An [`ActionSet`] of `B` on `A` holds one table for the group action
//! `b·a` and one table per extra binary operation for `b ⋆ a`. Whether such a
//! family is a family of derived actions is decided by building `A ⋊ B` and
//! validating it as a group with operations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gwo::GroupWithOps;
use crate::morphism::Morphism;
use crate::report::ValidationReport;
use crate::subset::{is_ideal, is_subobject, mask_of, quotient, substructure, Quotient};
use crate::table::Table;

/// Largest semidirect product the crate will build.
pub const SEMIDIRECT_BOUND: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSet {
    actor: Arc<GroupWithOps>,
    acted: Arc<GroupWithOps>,
    dot: Table,
    star: Vec<Table>,
}

impl ActionSet {
    /// `dot` and each `star` table are indexed `[b][a]`.
    pub fn new(actor: Arc<GroupWithOps>, acted: Arc<GroupWithOps>, dot: Table, star: Vec<Table>) -> Result<Self> {
        actor.same_signature(&acted)?;
        let (nb, na) = (actor.order(), acted.order());
        let shape_ok = |t: &Table| t.rows() == nb && t.cols() == na && t.max_entry().map_or(true, |m| m < na);
        if !shape_ok(&dot) {
            return Err(Error::Malformed(format!("action table must be {nb}x{na} with entries below {na}")));
        }
        if star.len() != actor.signature().binary_count() {
            return Err(Error::SignatureMismatch("one star action table per binary operation".into()));
        }
        if !star.iter().all(shape_ok) {
            return Err(Error::Malformed(format!("star action tables must be {nb}x{na} with entries below {na}")));
        }
        Ok(ActionSet { actor, acted, dot, star })
    }

    /// `b·a = a` and `b ⋆ a = 0`.
    pub fn trivial(actor: Arc<GroupWithOps>, acted: Arc<GroupWithOps>) -> Result<Self> {
        let (nb, na) = (actor.order(), acted.order());
        let z = acted.zero();
        let star = (0..actor.signature().binary_count())
            .map(|_| Table::from_fn(nb, na, |_, _| z))
            .collect();
        Self::new(actor, acted, Table::from_fn(nb, na, |_, a| a), star)
    }

    /// Action of a structure on one of its ideals by conjugation and by the
    /// operations themselves. Returns the action and the ideal's inclusion.
    pub fn on_ideal(parent: &Arc<GroupWithOps>, ideal: &[usize]) -> Result<(Self, Morphism)> {
        if !is_ideal(parent, ideal)? {
            return Err(Error::Precondition(format!("{ideal:?} is not an ideal")));
        }
        let (sub, inc) = substructure(parent, ideal)?;
        let mut pos = vec![usize::MAX; parent.order()];
        for (i, &x) in inc.map().iter().enumerate() {
            pos[x] = i;
        }
        let (nb, na) = (parent.order(), sub.order());
        let el = inc.map();
        let dot = Table::from_fn(nb, na, |b, a| pos[parent.conj(b, el[a])]);
        let star = (0..parent.signature().binary_count())
            .map(|k| Table::from_fn(nb, na, |b, a| pos[parent.op(k, b, el[a])]))
            .collect();
        Ok((Self::new(parent.clone(), sub, dot, star)?, inc))
    }

    pub fn actor(&self) -> &Arc<GroupWithOps> {
        &self.actor
    }

    pub fn acted(&self) -> &Arc<GroupWithOps> {
        &self.acted
    }

    pub fn dot_table(&self) -> &Table {
        &self.dot
    }

    pub fn star_table(&self, k: usize) -> &Table {
        &self.star[k]
    }

    /// `b·a`.
    #[inline]
    pub fn dot(&self, b: usize, a: usize) -> usize {
        self.dot.get(b, a)
    }

    /// `b ⋆ a` for the `k`-th extra operation.
    #[inline]
    pub fn star(&self, k: usize, b: usize, a: usize) -> usize {
        self.star[k].get(b, a)
    }

    /// `a ⋆ b` with `a` acted on and `b` acting, read as `b ⋆° a`.
    #[inline]
    pub fn star_right(&self, k: usize, a: usize, b: usize) -> usize {
        let opp = self.actor.signature().opposite(k);
        self.star[opp].get(b, a)
    }

    /// Copy with one action-table cell replaced; `op = None` addresses the dot table.
    pub fn with_cell(&self, op: Option<usize>, b: usize, a: usize, value: usize) -> Result<Self> {
        crate::error::check_index(value, self.acted.order())?;
        let mut out = self.clone();
        match op {
            None => out.dot.set(b, a, value),
            Some(k) => out.star[k].set(b, a, value),
        }
        Ok(out)
    }

    pub fn with_actor_acted(&self, actor: Arc<GroupWithOps>, acted: Arc<GroupWithOps>) -> Result<Self> {
        Self::new(actor, acted, self.dot.clone(), self.star.clone())
    }

    /// `A ⋊ B` on the carrier `A × B` (element `a·|B| + b`), with
    /// `(a′,b′) + (a,b) = (a′ + b′·a, b′ + b)` and
    /// `(a′,b′) ⋆ (a,b) = (a′⋆a + a′⋆b + b′⋆a, b′⋆b)`.
    ///
    /// For a pair of distinct opposite symbols the later one's table is the
    /// transpose of the earlier one's. The result is not validated.
    pub fn semidirect(&self) -> Result<Arc<GroupWithOps>> {
        let (a_, b_) = (&*self.acted, &*self.actor);
        let nb = b_.order();
        let n = a_.order() * nb;
        if n > SEMIDIRECT_BOUND {
            return Err(Error::BoundExceeded {
                size: n,
                bound: SEMIDIRECT_BOUND,
            });
        }
        let sig = a_.signature();
        let split = |e| GroupWithOps::split_index(e, nb);
        let pair = |x, y| GroupWithOps::pair_index(x, y, nb);
        let add = Table::from_fn(n, n, |e, f| {
            let ((a1, b1), (a, b)) = (split(e), split(f));
            pair(a_.add(a1, self.dot(b1, a)), b_.add(b1, b))
        });
        let neg = (0..n)
            .map(|e| {
                let (a, b) = split(e);
                let nb_ = b_.neg(b);
                pair(self.dot(nb_, a_.neg(a)), nb_)
            })
            .collect();
        let mut binary: Vec<Option<Table>> = vec![None; sig.binary_count()];
        for k in 0..sig.binary_count() {
            if binary[k].is_some() {
                continue;
            }
            let t = Table::from_fn(n, n, |e, f| {
                let ((a1, b1), (a, b)) = (split(e), split(f));
                let first = a_.add(a_.op(k, a1, a), self.star_right(k, a1, b));
                pair(a_.add(first, self.star(k, b1, a)), b_.op(k, b1, b))
            });
            let opp = sig.opposite(k);
            if opp != k {
                binary[opp] = Some(t.transpose());
            }
            binary[k] = Some(t);
        }
        let unary = (0..sig.unary_count())
            .map(|u| {
                (0..n)
                    .map(|e| {
                        let (a, b) = split(e);
                        pair(a_.unary_op(u, a), b_.unary_op(u, b))
                    })
                    .collect()
            })
            .collect();
        let g = GroupWithOps::from_tables(
            sig.clone(),
            pair(a_.zero(), b_.zero()),
            add,
            neg,
            binary.into_iter().map(|t| t.expect("every table filled")).collect(),
            unary,
        )?;
        Ok(Arc::new(g))
    }

    /// The family is a family of derived actions iff `A ⋊ B` is a valid object;
    /// the report forwards the semidirect product's violations.
    pub fn derived_action_report(&self) -> Result<ValidationReport> {
        let mut report = ValidationReport::new();
        report.absorb("semidirect", self.semidirect()?.validate());
        Ok(report)
    }

    pub fn is_derived_action(&self) -> Result<bool> {
        Ok(self.derived_action_report()?.is_valid())
    }

    /// Restriction to an action of the subobject `t ⊆ B` on the subobject
    /// `s ⊆ A`, on renumbered substructures. Fails unless `t` maps `s` into `s`
    /// under every action.
    pub fn restrict(&self, s: &[usize], t: &[usize]) -> Result<RestrictedAction> {
        let (s_sub, s_inc) = substructure(&self.acted, s)?;
        let (t_sub, t_inc) = substructure(&self.actor, t)?;
        let mut pos = vec![usize::MAX; self.acted.order()];
        for (i, &x) in s_inc.map().iter().enumerate() {
            pos[x] = i;
        }
        let (se, te) = (s_inc.map(), t_inc.map());
        let lookup = |v: usize, what: &str, b: usize, a: usize| -> Result<usize> {
            match pos[v] {
                usize::MAX => Err(Error::Precondition(format!(
                    "restriction mismatch: {what} of {b} on {a} leaves the subset"
                ))),
                p => Ok(p),
            }
        };
        let mut dot = Table::from_fn(te.len(), se.len(), |_, _| 0);
        for (i, &b) in te.iter().enumerate() {
            for (j, &a) in se.iter().enumerate() {
                dot.set(i, j, lookup(self.dot(b, a), "action", b, a)?);
            }
        }
        let mut star = Vec::new();
        for k in 0..self.star.len() {
            let mut tab = Table::from_fn(te.len(), se.len(), |_, _| 0);
            for (i, &b) in te.iter().enumerate() {
                for (j, &a) in se.iter().enumerate() {
                    tab.set(i, j, lookup(self.star(k, b, a), "star action", b, a)?);
                }
            }
            star.push(tab);
        }
        Ok(RestrictedAction {
            action: ActionSet::new(t_sub, s_sub, dot, star)?,
            acted_inclusion: s_inc,
            actor_inclusion: t_inc,
        })
    }
}

/// An action restricted to substructures, with their inclusions.
#[derive(Debug, Clone)]
pub struct RestrictedAction {
    pub action: ActionSet,
    pub acted_inclusion: Morphism,
    pub actor_inclusion: Morphism,
}

/// `0 → A →ι E →p B → 0` with a section `s` of `p`.
#[derive(Debug, Clone)]
pub struct SplitExtension {
    pub total: Arc<GroupWithOps>,
    pub inclusion: Morphism,
    pub projection: Morphism,
    pub section: Morphism,
}

impl SplitExtension {
    /// Checks that ι is an injective morphism onto `Ker p`, `p` is a surjective
    /// morphism, and `p ∘ s` is the identity.
    pub fn new(inclusion: Morphism, projection: Morphism, section: Morphism) -> Result<Self> {
        let total = inclusion.cod().clone();
        if **projection.dom() != *total || **section.cod() != *total || **section.dom() != **projection.cod() {
            return Err(Error::Precondition("extension maps do not fit together".into()));
        }
        for (name, m) in [("inclusion", &inclusion), ("projection", &projection), ("section", &section)] {
            if let Some(v) = m.check() {
                return Err(Error::Precondition(format!("{name} is not a morphism: {v}")));
            }
        }
        if !inclusion.is_injective() {
            return Err(Error::Precondition("inclusion is not injective".into()));
        }
        if !projection.is_surjective() {
            return Err(Error::Precondition("projection is not surjective".into()));
        }
        if inclusion.image() != projection.kernel() {
            return Err(Error::Precondition("image of the inclusion is not the kernel of the projection".into()));
        }
        if !section.then(&projection)?.is_identity() {
            return Err(Error::Precondition("projection after section is not the identity".into()));
        }
        Ok(SplitExtension {
            total,
            inclusion,
            projection,
            section,
        })
    }

    /// `A → A ⋊ B → B` with `a ↦ (a,0)`, `(a,b) ↦ b`, `b ↦ (0,b)`.
    pub fn canonical(acts: &ActionSet) -> Result<Self> {
        let e = acts.semidirect()?;
        let (a, b) = (acts.acted().clone(), acts.actor().clone());
        let nb = b.order();
        let (za, zb) = (a.zero(), b.zero());
        let inc = Morphism::from_fn(a, e.clone(), |x| GroupWithOps::pair_index(x, zb, nb))?;
        let proj = Morphism::from_fn(e.clone(), b.clone(), |x| GroupWithOps::split_index(x, nb).1)?;
        let sec = Morphism::from_fn(b, e, |y| GroupWithOps::pair_index(za, y, nb))?;
        Self::new(inc, proj, sec)
    }

    /// Searches every map `s` with `p ∘ s = id` for one that is a morphism.
    pub fn find_section(projection: &Morphism) -> Option<Morphism> {
        let e = projection.dom();
        let b = projection.cod();
        let fibres: Vec<Vec<usize>> = b.elements().map(|y| projection.preimage(&[y])).collect();
        let mut s = vec![usize::MAX; b.order()];
        fn consistent(s: &[usize], e: &GroupWithOps, b: &GroupWithOps, y: usize) -> bool {
            let sig = b.signature();
            let ok = |l: usize, r: usize| s[l] == usize::MAX || s[l] == r;
            if s[y] != usize::MAX && !ok(b.neg(y), e.neg(s[y])) {
                return false;
            }
            for u in 0..sig.unary_count() {
                if !ok(b.unary_op(u, y), e.unary_op(u, s[y])) {
                    return false;
                }
            }
            for z in b.elements().filter(|&z| s[z] != usize::MAX) {
                for (p, q) in [(y, z), (z, y)] {
                    if !ok(b.add(p, q), e.add(s[p], s[q])) {
                        return false;
                    }
                    for k in 0..sig.binary_count() {
                        if !ok(b.op(k, p, q), e.op(k, s[p], s[q])) {
                            return false;
                        }
                    }
                }
            }
            true
        }
        fn go(y: usize, s: &mut Vec<usize>, fib: &[Vec<usize>], e: &GroupWithOps, b: &GroupWithOps) -> bool {
            if y == s.len() {
                return true;
            }
            for &cand in &fib[y] {
                s[y] = cand;
                if consistent(s, e, b, y) && go(y + 1, s, fib, e, b) {
                    return true;
                }
            }
            s[y] = usize::MAX;
            false
        }
        if go(0, &mut s, &fibres, e, b) {
            let m = Morphism::new(b.clone(), e.clone(), s).ok()?;
            m.is_morphism().then_some(m)
        } else {
            None
        }
    }
}

/// The derived actions of a split extension: `b·a = s(b) + a − s(b)` and
/// `b ⋆ a = s(b) ⋆ a`, read back through ι.
pub fn action_from_split_extension(ext: &SplitExtension) -> Result<ActionSet> {
    let e = &ext.total;
    let a = ext.inclusion.dom().clone();
    let b = ext.projection.cod().clone();
    let mut pos = vec![usize::MAX; e.order()];
    for (i, &x) in ext.inclusion.map().iter().enumerate() {
        pos[x] = i;
    }
    let back = |v: usize| -> Result<usize> {
        match pos[v] {
            usize::MAX => Err(Error::Precondition(format!("{v} is outside the image of the inclusion"))),
            p => Ok(p),
        }
    };
    let (nb, na) = (b.order(), a.order());
    let mut dot = Table::from_fn(nb, na, |_, _| 0);
    let mut star = Vec::new();
    for y in 0..nb {
        let sy = ext.section.apply(y);
        for x in 0..na {
            dot.set(y, x, back(e.conj(sy, ext.inclusion.apply(x)))?);
        }
    }
    for k in 0..e.signature().binary_count() {
        let mut t = Table::from_fn(nb, na, |_, _| 0);
        for y in 0..nb {
            let sy = ext.section.apply(y);
            for x in 0..na {
                t.set(y, x, back(e.op(k, sy, ext.inclusion.apply(x)))?);
            }
        }
        star.push(t);
    }
    ActionSet::new(b, a, dot, star)
}

/// The five closure conditions on `(S, T)` together with whether `S × T` is
/// an ideal of `A ⋊ B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealSemidirectConditions {
    /// `S` and `T` are ideals of `A` and `B`.
    pub ideals: bool,
    /// `b·s ∈ S`.
    pub action_on_s: bool,
    /// `(t·a) − a ∈ S`.
    pub displacement: bool,
    /// `b ⋆ s ∈ S`.
    pub star_on_s: bool,
    /// `t ⋆ a ∈ S`.
    pub star_by_t: bool,
    pub semidirect_ideal: bool,
}

impl IdealSemidirectConditions {
    pub fn all_conditions(&self) -> bool {
        self.ideals && self.action_on_s && self.displacement && self.star_on_s && self.star_by_t
    }
}

/// Evaluates the closure conditions for subobjects `s ⊆ A`, `t ⊆ B` and
/// whether `S ⋊ T` is an ideal of `A ⋊ B`. An ideal semidirect product with a
/// failing condition is reported as a verification error.
pub fn ideal_semidirect_conditions(acts: &ActionSet, s: &[usize], t: &[usize]) -> Result<IdealSemidirectConditions> {
    let (a, b) = (acts.acted(), acts.actor());
    if !is_subobject(a, s)? || !is_subobject(b, t)? {
        return Err(Error::Precondition("S and T must be subobjects".into()));
    }
    // T must act on S by restriction.
    acts.restrict(s, t)?;
    let sm = mask_of(a.order(), s)?;
    let kc = a.signature().binary_count();
    let ideals = is_ideal(a, s)? && is_ideal(b, t)?;
    let action_on_s = b.elements().all(|y| s.iter().all(|&x| sm[acts.dot(y, x)]));
    let displacement = t.iter().all(|&y| a.elements().all(|x| sm[a.sub(acts.dot(y, x), x)]));
    let star_on_s = (0..kc).all(|k| b.elements().all(|y| s.iter().all(|&x| sm[acts.star(k, y, x)])));
    let star_by_t = (0..kc).all(|k| t.iter().all(|&y| a.elements().all(|x| sm[acts.star(k, y, x)])));
    let e = acts.semidirect()?;
    let nb = b.order();
    let pairs: Vec<usize> = s
        .iter()
        .flat_map(|&x| t.iter().map(move |&y| GroupWithOps::pair_index(x, y, nb)))
        .collect();
    let semidirect_ideal = is_ideal(&e, &pairs)?;
    let out = IdealSemidirectConditions {
        ideals,
        action_on_s,
        displacement,
        star_on_s,
        star_by_t,
        semidirect_ideal,
    };
    if semidirect_ideal && !out.all_conditions() {
        return Err(Error::Verification(format!(
            "S ⋊ T is an ideal but a closure condition fails: {out:?}"
        )));
    }
    Ok(out)
}

/// An induced action of `B/T` on `A/S`.
#[derive(Debug, Clone)]
pub struct QuotientAction {
    pub action: ActionSet,
    pub acted: Quotient,
    pub actor: Quotient,
}

/// `[b]·[a] = [b·a]` and `[b] ⋆ [a] = [b ⋆ a]`, after checking that the
/// values do not depend on the chosen representatives.
pub fn quotient_action(acts: &ActionSet, s: &[usize], t: &[usize]) -> Result<QuotientAction> {
    let qa = quotient(acts.acted(), s)?;
    let qb = quotient(acts.actor(), t)?;
    let (a, b) = (acts.acted(), acts.actor());
    let check = |name: &str, f: &dyn Fn(usize, usize) -> usize| -> Result<Table> {
        let table = Table::from_fn(qb.representatives.len(), qa.representatives.len(), |i, j| {
            qa.class_of(f(qb.representatives[i], qa.representatives[j]))
        });
        for y in b.elements() {
            for x in a.elements() {
                let (cy, cx) = (qb.class_of(y), qa.class_of(x));
                let expected = table.get(cy, cx);
                let got = qa.class_of(f(y, x));
                if got != expected {
                    let (ry, rx) = (qb.representatives[cy], qa.representatives[cx]);
                    return Err(Error::IllDefined(format!(
                        "{name}: ({y},{x}) and ({ry},{rx}) represent the same pair of classes but give classes {got} and {expected}"
                    )));
                }
            }
        }
        Ok(table)
    };
    let dot = check("action", &|y, x| acts.dot(y, x))?;
    let mut star = Vec::new();
    for k in 0..a.signature().binary_count() {
        star.push(check("star action", &|y, x| acts.star(k, y, x))?);
    }
    let action = ActionSet::new(qb.structure.clone(), qa.structure.clone(), dot, star)?;
    Ok(QuotientAction {
        action,
        acted: qa,
        actor: qb,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cyclic_group, cyclic_ring};

    fn z4() -> Arc<GroupWithOps> {
        Arc::new(cyclic_ring(4))
    }

    #[test]
    fn trivial_action_gives_direct_product() {
        let z2 = Arc::new(cyclic_ring(2));
        let zero_z2 = Arc::new(crate::corpus::zero_ring(&cyclic_group(2)));
        let acts = ActionSet::trivial(zero_z2.clone(), zero_z2.clone()).unwrap();
        let sd = acts.semidirect().unwrap();
        assert_eq!(*sd, GroupWithOps::direct_product(&zero_z2, &zero_z2).unwrap());
        assert!(acts.is_derived_action().unwrap());
        assert_eq!(ActionSet::trivial(z2.clone(), z2).unwrap().semidirect().unwrap().order(), 4);
    }

    #[test]
    fn ring_acting_on_its_ideal_two() {
        let (acts, _) = ActionSet::on_ideal(&z4(), &[0, 2]).unwrap();
        let sd = acts.semidirect().unwrap();
        assert_eq!(sd.order(), 8);
        assert!(sd.validate().is_valid());
        // {0,2} is central, so conjugation is trivial.
        assert!((0..4).all(|b| (0..2).all(|a| acts.dot(b, a) == a)));
    }

    #[test]
    fn translation_is_not_an_action() {
        let z2 = Arc::new(cyclic_group(2));
        let bad = ActionSet::new(z2.clone(), z2.clone(), Table::from_fn(2, 2, |b, a| (a + b) % 2), vec![]).unwrap();
        let report = bad.derived_action_report().unwrap();
        assert!(!report.is_valid());
        assert!(report.mentions("identity"));
    }

    #[test]
    fn split_extension_roundtrip_recovers_tables() {
        let (acts, _) = ActionSet::on_ideal(&z4(), &[0, 2]).unwrap();
        let ext = SplitExtension::canonical(&acts).unwrap();
        let back = action_from_split_extension(&ext).unwrap();
        assert_eq!(back, acts);
    }

    #[test]
    fn product_extension_gives_trivial_dot() {
        let a = Arc::new(cyclic_ring(2));
        let b = Arc::new(cyclic_ring(3));
        let acts = ActionSet::trivial(b, a).unwrap();
        let ext = SplitExtension::canonical(&acts).unwrap();
        let back = action_from_split_extension(&ext).unwrap();
        assert!((0..3).all(|y| (0..2).all(|x| back.dot(y, x) == x && back.star(0, y, x) == 0)));
    }

    #[test]
    fn z4_over_z2_does_not_split() {
        let z4 = Arc::new(cyclic_group(4));
        let z2 = Arc::new(cyclic_group(2));
        let p = Morphism::from_fn(z4, z2, |a| a % 2).unwrap();
        assert!(SplitExtension::find_section(&p).is_none());
    }

    #[test]
    fn klein_over_z2_splits() {
        let k = Arc::new(crate::corpus::klein_group());
        let z2 = Arc::new(cyclic_group(2));
        let p = Morphism::from_fn(k.clone(), z2.clone(), |e| e / 2).unwrap();
        let s = SplitExtension::find_section(&p).unwrap();
        let i = Morphism::from_fn(z2, k, |a| a).unwrap();
        let ext = SplitExtension::new(i, p, s).unwrap();
        assert!(action_from_split_extension(&ext).unwrap().is_derived_action().unwrap());
    }

    #[test]
    fn multiplication_action_conditions() {
        let (acts, _) = ActionSet::on_ideal(&z4(), &[0, 1, 2, 3]).unwrap();
        let c = ideal_semidirect_conditions(&acts, &[0, 2], &[0, 2]).unwrap();
        assert!(c.all_conditions() && c.semidirect_ideal);
        let c = ideal_semidirect_conditions(&acts, &[0], &[0]).unwrap();
        assert!(c.all_conditions() && c.semidirect_ideal);
        let c = ideal_semidirect_conditions(&acts, &[0, 2], &[0, 1, 2, 3]).unwrap();
        assert!(!c.star_by_t);
        assert!(!c.semidirect_ideal);
    }

    #[test]
    fn restriction_mismatch_is_an_error() {
        let (acts, _) = ActionSet::on_ideal(&z4(), &[0, 1, 2, 3]).unwrap();
        assert!(acts.restrict(&[0], &[0, 1, 2, 3]).is_ok());
        let z4g = Arc::new(cyclic_ring(4));
        let shift = ActionSet::new(z4g.clone(), z4g.clone(), Table::from_fn(4, 4, |b, a| (a + b) % 4), vec![Table::from_fn(4, 4, |_, _| 0)]).unwrap();
        assert!(matches!(ideal_semidirect_conditions(&shift, &[0, 2], &[0, 1, 2, 3]), Err(Error::Precondition(_))));
    }

    #[test]
    fn quotient_actions() {
        let (acts, _) = ActionSet::on_ideal(&z4(), &[0, 1, 2, 3]).unwrap();
        let q = quotient_action(&acts, &[0, 2], &[0, 2]).unwrap();
        assert_eq!(q.action.acted().order(), 2);
        assert_eq!(q.action.star(0, 1, 1), 1);
        assert!(q.action.is_derived_action().unwrap());
        let same = quotient_action(&acts, &[0], &[0]).unwrap();
        assert_eq!(same.action.dot_table(), acts.dot_table());

        let (on_two, _) = ActionSet::on_ideal(&z4(), &[0, 2]).unwrap();
        let q = quotient_action(&on_two, &[0, 1], &[0, 2]).unwrap();
        assert_eq!(q.action.acted().order(), 1);
        assert_eq!(q.action.actor().order(), 2);
    }

    #[test]
    fn ill_defined_quotient_action_is_reported() {
        let (acts, _) = ActionSet::on_ideal(&z4(), &[0, 1, 2, 3]).unwrap();
        // T = Z4 collapses B but 1*1 = 1 is not in S = {0,2}.
        let err = quotient_action(&acts, &[0, 2], &[0, 1, 2, 3]).unwrap_err();
        assert!(matches!(err, Error::IllDefined(_)));
    }
}
