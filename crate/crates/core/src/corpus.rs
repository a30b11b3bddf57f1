//! Standard small structures and the deterministic test corpus.

use std::sync::Arc;

use crate::cat1::{Cat1Group, StandardKind};
use crate::equivalences::{xmod_to_cat1, xmod_to_gpd};
use crate::error::{Error, Result};
use crate::gpd::InternalGroupoid;
use crate::gwo::GroupWithOps;
use crate::signature::OpSignature;
use crate::subset::enumerate_ideals;
use crate::xmod::CrossedModule;

/// `Z_n` with addition and multiplication mod `n`.
pub fn cyclic_ring(n: usize) -> GroupWithOps {
    GroupWithOps::from_fns(OpSignature::rings(), n, 0, |a, b| (a + b) % n, |_, a, b| a * b % n, |_, a| a)
        .expect("cyclic ring")
}

/// `Z_n` as a plain group.
pub fn cyclic_group(n: usize) -> GroupWithOps {
    GroupWithOps::from_fns(OpSignature::groups(), n, 0, |a, b| (a + b) % n, |_, _, _| 0, |_, a| a)
        .expect("cyclic group")
}

/// Equips an abelian group (given by its addition) with the ring signature and
/// identically zero multiplication.
pub fn zero_ring(group: &GroupWithOps) -> GroupWithOps {
    let n = group.order();
    let z = group.zero();
    GroupWithOps::from_fns(OpSignature::rings(), n, z, |a, b| group.add(a, b), |_, _, _| z, |_, a| a)
        .expect("zero ring")
}

/// `Z_2 × Z_2` as a plain group.
pub fn klein_group() -> GroupWithOps {
    GroupWithOps::direct_product(&cyclic_group(2), &cyclic_group(2)).expect("klein group")
}

/// `Z_2 × Z_2` with zero multiplication.
pub fn klein_zero_ring() -> GroupWithOps {
    zero_ring(&klein_group())
}

/// Dihedral group of order `2n`; element `i + n·j` is `r^i s^j`.
pub fn dihedral_group(n: usize) -> GroupWithOps {
    let split = |e: usize| (e % n, e / n);
    GroupWithOps::from_fns(
        OpSignature::groups(),
        2 * n,
        0,
        |x, y| {
            let ((i, j), (k, l)) = (split(x), split(y));
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            rot + n * ((j + l) % 2)
        },
        |_, _, _| 0,
        |_, a| a,
    )
    .expect("dihedral group")
}

/// The symmetric group on three letters (dihedral of order 6).
pub fn symmetric_group_3() -> GroupWithOps {
    dihedral_group(3)
}

/// Quaternion group; element `4s + u` is `(−1)^s · [1, i, j, k][u]`.
pub fn quaternion_group() -> GroupWithOps {
    // unit products: (sign, unit)
    const T: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    GroupWithOps::from_fns(
        OpSignature::groups(),
        8,
        0,
        |x, y| {
            let (s, t) = T[x % 4][y % 4];
            let sign = (x / 4 + y / 4 + s) % 2;
            4 * sign + t
        },
        |_, _, _| 0,
        |_, a| a,
    )
    .expect("quaternion group")
}


/// A corpus entry with a descriptive name.
#[derive(Debug, Clone)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

fn named<T>(name: impl Into<String>, value: T) -> Named<T> {
    Named {
        name: name.into(),
        value,
    }
}

/// Corpus selections for generation and verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Empty,
    SmallRings,
    Groups,
    Products,
    Full,
}

impl Profile {
    pub const ALL: [Profile; 5] = [
        Profile::Empty,
        Profile::SmallRings,
        Profile::Groups,
        Profile::Products,
        Profile::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Empty => "empty",
            Profile::SmallRings => "small-rings",
            Profile::Groups => "groups",
            Profile::Products => "products",
            Profile::Full => "full",
        }
    }

    pub fn from_name(s: &str) -> Option<Profile> {
        Profile::ALL.into_iter().find(|p| p.name() == s)
    }
}

/// Largest semidirect product (and hence groupoid arrow object or cat¹
/// group) the generator builds.
pub const CORPUS_PRODUCT_BOUND: usize = 64;

/// Objects, crossed modules, internal groupoids and cat¹-groups of a profile.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub objects: Vec<Named<Arc<GroupWithOps>>>,
    pub xmods: Vec<Named<Arc<CrossedModule>>>,
    pub groupoids: Vec<Named<Arc<InternalGroupoid>>>,
    pub cat1s: Vec<Named<Arc<Cat1Group>>>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.objects.len() + self.xmods.len() + self.groupoids.len() + self.cat1s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn ring_objects() -> Vec<Named<GroupWithOps>> {
    let mut out: Vec<Named<GroupWithOps>> = (1..=8).map(|n| named(format!("Z{n} ring"), cyclic_ring(n))).collect();
    for n in 2..=8 {
        out.push(named(format!("Z{n} zero ring"), zero_ring(&cyclic_group(n))));
    }
    out.push(named("Z2xZ2 zero ring", klein_zero_ring()));
    let z2 = cyclic_group(2);
    let z2z4 = GroupWithOps::direct_product(&z2, &cyclic_group(4)).expect("product");
    out.push(named("Z2xZ4 zero ring", zero_ring(&z2z4)));
    let z2cubed = GroupWithOps::direct_product(&klein_group(), &z2).expect("product");
    out.push(named("Z2xZ2xZ2 zero ring", zero_ring(&z2cubed)));
    out
}

fn group_objects() -> Vec<Named<GroupWithOps>> {
    let mut out: Vec<Named<GroupWithOps>> = (1..=8).map(|n| named(format!("Z{n} group"), cyclic_group(n))).collect();
    out.push(named("Z2xZ2 group", klein_group()));
    out.push(named("S3", symmetric_group_3()));
    out.push(named("D4", dihedral_group(4)));
    out.push(named("Q8", quaternion_group()));
    out
}

fn product_objects() -> Vec<Named<GroupWithOps>> {
    let prod = |a: &GroupWithOps, b: &GroupWithOps| GroupWithOps::direct_product(a, b).expect("product");
    let (r2, r3, r4) = (cyclic_ring(2), cyclic_ring(3), cyclic_ring(4));
    let (g2, g3, g4) = (cyclic_group(2), cyclic_group(3), cyclic_group(4));
    vec![
        named("Z2xZ2 ring", prod(&r2, &r2)),
        named("Z2xZ3 ring", prod(&r2, &r3)),
        named("Z2xZ4 ring", prod(&r2, &r4)),
        named("Z2xZ2xZ2 ring", prod(&prod(&r2, &r2), &r2)),
        named("Z2xZ3 group", prod(&g2, &g3)),
        named("Z2xZ4 group", prod(&g2, &g4)),
        named("Z2xZ2xZ2 group", prod(&prod(&g2, &g2), &g2)),
    ]
}

/// Builds the deterministic corpus of a profile. `bound` caps the order of
/// base objects (ideals are enumerated exhaustively below it).
///
/// Crossed modules: every ideal inclusion `(N, G, ι)` and every trivial-action
/// `(A, B, 0)` with `A` singular and `|A||B| ≤ 64`. Groupoids: `η` of each
/// crossed module, plus pair, discrete and (for singular objects) one-object
/// groupoids. Cat¹-groups: `θ` of each crossed module, plus the identity,
/// pair and (for singular objects) zero examples.
pub fn generate_corpus(profile: Profile, bound: usize) -> Result<Corpus> {
    let mut base = match profile {
        Profile::Empty => vec![],
        Profile::SmallRings => ring_objects(),
        Profile::Groups => group_objects(),
        Profile::Products => product_objects(),
        Profile::Full => {
            let mut all = ring_objects();
            all.extend(group_objects());
            all.extend(product_objects());
            all
        }
    };
    let mut seen = std::collections::HashSet::new();
    base.retain(|o| seen.insert(o.name.clone()));
    if let Some(big) = base.iter().find(|o| o.value.order() > bound) {
        return Err(Error::BoundExceeded {
            size: big.value.order(),
            bound,
        });
    }
    let objects: Vec<Named<Arc<GroupWithOps>>> =
        base.into_iter().map(|o| named(o.name, Arc::new(o.value))).collect();

    let mut xmods = Vec::new();
    for g in &objects {
        for (i, n) in enumerate_ideals(&g.value, bound)?.iter().enumerate() {
            let x = CrossedModule::from_ideal(&g.value, n.elements())?;
            xmods.push(named(format!("ideal {i} of {} into {}", g.name, g.name), Arc::new(x)));
        }
    }
    for a in objects.iter().filter(|a| a.value.is_singular()) {
        for b in &objects {
            if a.value.signature() != b.value.signature() || a.value.order() * b.value.order() > CORPUS_PRODUCT_BOUND {
                continue;
            }
            let x = CrossedModule::trivial_action(a.value.clone(), b.value.clone())?;
            xmods.push(named(format!("({}, {}, 0)", a.name, b.name), Arc::new(x)));
        }
    }

    let mut groupoids = Vec::new();
    let mut cat1s = Vec::new();
    for x in &xmods {
        groupoids.push(named(format!("eta {}", x.name), Arc::new(xmod_to_gpd(&x.value)?)));
        cat1s.push(named(format!("theta {}", x.name), Arc::new(xmod_to_cat1(&x.value)?)));
    }
    for g in &objects {
        if g.value.order() * g.value.order() <= CORPUS_PRODUCT_BOUND {
            groupoids.push(named(format!("pair groupoid on {}", g.name), Arc::new(InternalGroupoid::pair_groupoid(&g.value)?)));
            cat1s.push(named(format!("pair cat1 on {}", g.name), Arc::new(Cat1Group::standard(StandardKind::Pair, &g.value)?)));
        }
        groupoids.push(named(format!("discrete groupoid on {}", g.name), Arc::new(InternalGroupoid::discrete(&g.value))));
        cat1s.push(named(format!("identity cat1 on {}", g.name), Arc::new(Cat1Group::standard(StandardKind::Identity, &g.value)?)));
        if g.value.is_singular() {
            groupoids.push(named(format!("one-object groupoid on {}", g.name), Arc::new(InternalGroupoid::one_object(&g.value)?)));
            cat1s.push(named(format!("zero cat1 on {}", g.name), Arc::new(Cat1Group::standard(StandardKind::Singular, &g.value)?)));
        }
    }
    Ok(Corpus {
        objects,
        xmods,
        groupoids,
        cat1s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_structures_validate() {
        for n in 1..=8 {
            assert!(cyclic_ring(n).is_valid(), "Z{n}");
            assert!(cyclic_group(n).is_valid());
            assert!(zero_ring(&cyclic_group(n)).is_valid());
        }
        assert!(klein_zero_ring().is_valid());
        for n in 2..=4 {
            assert!(dihedral_group(n).is_valid());
        }
        let q = quaternion_group();
        assert!(q.is_valid());
        assert!(!q.is_abelian());
        assert!(!symmetric_group_3().is_abelian());
    }

    #[test]
    fn profiles() {
        assert!(generate_corpus(Profile::Empty, 16).unwrap().is_empty());
        let rings = generate_corpus(Profile::SmallRings, 16).unwrap();
        for name in ["Z2 ring", "Z3 ring", "Z4 ring", "Z2xZ2 zero ring"] {
            assert!(rings.objects.iter().any(|o| o.name == name), "{name}");
        }
        let groups = generate_corpus(Profile::Groups, 16).unwrap();
        let s3 = groups.objects.iter().find(|o| o.name == "S3").unwrap();
        assert!(s3.value.is_valid() && !s3.value.is_abelian());
        assert!(matches!(generate_corpus(Profile::Groups, 4), Err(Error::BoundExceeded { .. })));
    }
}
