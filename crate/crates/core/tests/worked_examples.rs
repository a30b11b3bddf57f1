//! Small worked examples, each checked against the brute-force oracle.

mod oracle;

use std::sync::Arc;

use serde_json::Value;

use gwops::actions::ActionSet;
use gwops::cat1::{find_cat1_isomorphism, quotient_cat1, StandardKind};
use gwops::corpus::{
    cyclic_group, cyclic_ring, dihedral_group, generate_corpus, klein_group, klein_zero_ring, symmetric_group_3,
    zero_ring, Profile,
};
use gwops::equivalences::{cat1_to_xmod, gpd_to_xmod, roundtrip_cat1, xmod_to_cat1, xmod_to_gpd};
use gwops::format::{to_value, Metadata, Structure, StructureFile};
use gwops::gpd::internal_quotient;
use gwops::subset::{enumerate_ideals, is_ideal, is_subobject, quotient};
use gwops::xmod::{find_xmod_isomorphism, is_normal_subxmod, is_subxmod, quotient_xmod};
use gwops::{
    find_isomorphism, Cat1Group, CrossedModule, GroupWithOps, InternalGroupoid, Morphism, Table,
};

use oracle::{semidirect, Sig};

fn value(s: Structure) -> Value {
    to_value(&StructureFile::new(s, Metadata::default()))
}

fn tables(g: &GroupWithOps) -> oracle::Gwo {
    let v = value(Structure::Gwo(Arc::new(g.clone())));
    oracle::gwo(&v["body"], &Sig::of(&v))
}

fn ok(s: Structure) -> bool {
    oracle::file_ok(&value(s))
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

/// Contains 0 and is closed under every operation.
fn oracle_subobject(t: &oracle::Gwo, s: &[usize]) -> bool {
    let mut inn = vec![false; t.n];
    for &x in s {
        inn[x] = true;
    }
    inn[t.zero]
        && s.iter().all(|&x| {
            inn[t.neg[x]]
                && t.unary.iter().all(|u| inn[u[x]])
                && s.iter().all(|&y| inn[t.p(x, y)] && (0..t.ops.len()).all(|k| inn[t.op(k, x, y)]))
        })
}

fn z4() -> Arc<GroupWithOps> {
    Arc::new(cyclic_ring(4))
}

#[test]
fn z4_ring_is_valid_and_a_corrupted_sum_is_not() {
    let g = z4();
    assert!(g.validate().is_valid());
    assert!(tables(&g).ok());
    let mut rows = g.add_table().to_rows();
    rows[1][1] = 3;
    let bad = GroupWithOps::from_tables(
        g.signature().clone(),
        0,
        Table::from_rows(&rows, 4, 4, 4).unwrap(),
        g.neg_table().to_vec(),
        vec![g.binary_table(0).clone()],
        vec![],
    )
    .unwrap();
    let r = bad.validate();
    assert!(r.mentions("associativity") || r.mentions("identity"), "{r}");
    assert!(!tables(&bad).ok());
}

#[test]
fn reduction_mod_two_is_a_morphism_with_kernel_two() {
    let g = z4();
    let z2 = Arc::new(cyclic_ring(2));
    let f = Morphism::new(g.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
    assert!(f.check().is_none());
    assert!(tables(&g).hom(&tables(&z2), f.map()));
    assert_eq!(f.kernel(), vec![0, 2]);
    assert_eq!(f.image(), vec![0, 1]);
}

#[test]
fn subobjects_and_ideals_agree_with_subset_sweep_on_every_corpus_object() {
    let corpus = generate_corpus(Profile::Full, 16).unwrap();
    for o in &corpus.objects {
        let t = tables(&o.value);
        let mut expected = Vec::new();
        for s in subsets(o.value.order()) {
            assert_eq!(is_subobject(&o.value, &s).unwrap(), oracle_subobject(&t, &s), "{} at {s:?}", o.name);
            let ideal = oracle_subobject(&t, &s) && t.is_ideal(&s);
            assert_eq!(is_ideal(&o.value, &s).unwrap(), ideal, "{} at {s:?}", o.name);
            if ideal {
                expected.push(s);
            }
        }
        let mut got: Vec<Vec<usize>> = enumerate_ideals(&o.value, 16).unwrap().iter().map(|s| s.elements().to_vec()).collect();
        got.sort();
        expected.sort();
        assert_eq!(got, expected, "{}", o.name);
    }
}

#[test]
fn ideal_counts_of_small_rings() {
    let count = |g: GroupWithOps| enumerate_ideals(&Arc::new(g), 16).unwrap().len();
    assert_eq!(count(cyclic_ring(4)), 3);
    assert_eq!(count(cyclic_ring(2)), 2);
    assert_eq!(count(klein_zero_ring()), 5);
    // D4 has non-normal subgroups of order 2
    let d4 = Arc::new(dihedral_group(4));
    let t = tables(&d4);
    assert!(subsets(8).any(|s| oracle_subobject(&t, &s) && !t.is_ideal(&s) && !is_ideal(&d4, &s).unwrap()));
}

#[test]
fn z4_mod_two_is_z2_and_differs_from_klein() {
    let q = quotient(&z4(), &[0, 2]).unwrap();
    let z2 = Arc::new(cyclic_ring(2));
    let iso = find_isomorphism(&q.structure, &z2).unwrap();
    assert!(tables(&q.structure).hom(&tables(&z2), iso.map()));
    // element orders 1,2,4,4 against 1,2,2,2
    let (c4, k4) = (Arc::new(cyclic_group(4)), Arc::new(klein_group()));
    assert!(find_isomorphism(&c4, &k4).is_none());
}

#[test]
fn ring_acting_on_its_ideal_two_gives_an_order_eight_product() {
    let x = CrossedModule::from_ideal(&z4(), &[0, 2]).unwrap();
    let v = value(Structure::XMod(Arc::new(x.clone())));
    let o = oracle::xmod(&v["body"], &Sig::of(&v));
    let prod = semidirect(&o.a, &o.b, &o.dot, &o.star);
    assert_eq!(prod.n, 8);
    assert!(prod.ok());
    assert!(x.action().semidirect().unwrap().is_valid());
}

#[test]
fn translation_is_not_a_derived_action() {
    let z2 = Arc::new(cyclic_ring(2));
    let dot = Table::from_fn(2, 2, |b, a| (a + b) % 2);
    let acts = ActionSet::new(z2.clone(), z2.clone(), dot, vec![Table::from_fn(2, 2, |_, _| 0)]).unwrap();
    assert!(!acts.is_derived_action().unwrap());
    let v = value(Structure::Action(acts));
    let sig = Sig::of(&v);
    let b = &v["body"];
    let star = vec![oracle::rows(&b["star"]["*"])];
    let t = oracle::gwo(&b["acted"], &sig);
    assert!(!semidirect(&t, &t, &oracle::rows(&b["dot"]), &star).ok());
}

#[test]
fn normality_in_the_identity_crossed_module_of_z4() {
    let x = Arc::new(CrossedModule::identity_on(&z4()).unwrap());
    assert!(ok(Structure::XMod(x.clone())));
    assert!(is_subxmod(&x, &[0, 2], &[0, 2]).unwrap());
    assert!(!is_subxmod(&x, &[0, 2], &[0]).unwrap());
    assert!(is_normal_subxmod(&x, &[0, 2], &[0, 2]).unwrap().is_normal());
    // t ⋆ a = 1·1 = 1 leaves {0,2}
    let r = is_normal_subxmod(&x, &[0, 2], &[0, 1, 2, 3]).unwrap();
    assert!(!r.star_by_t);
    let q = quotient_xmod(&x, &[0, 2], &[0, 2]).unwrap();
    let z2 = Arc::new(CrossedModule::identity_on(&Arc::new(cyclic_ring(2))).unwrap());
    assert!(find_xmod_isomorphism(&q.xmod, &z2).is_some());
}

#[test]
fn trivial_action_on_a_non_singular_structure_is_not_a_crossed_module() {
    let x = CrossedModule::trivial_action(z4(), Arc::new(cyclic_ring(1))).unwrap();
    assert!(!x.is_valid().unwrap());
    assert!(!ok(Structure::XMod(Arc::new(x))));
    let y = CrossedModule::trivial_action(Arc::new(zero_ring(&cyclic_group(4))), Arc::new(cyclic_ring(1))).unwrap();
    assert!(y.is_valid().unwrap());
}

fn arrow(g: &InternalGroupoid, x: usize, y: usize) -> usize {
    g.arrows().elements().find(|&a| g.d0(a) == x && g.d1(a) == y).unwrap()
}

#[test]
fn pair_groupoid_composition() {
    let g = InternalGroupoid::pair_groupoid(&Arc::new(cyclic_ring(2))).unwrap();
    assert!(ok(Structure::Gpd(Arc::new(g.clone()))));
    let (a, b) = (arrow(&g, 0, 1), arrow(&g, 1, 0));
    assert_eq!(g.compose(b, a), Some(arrow(&g, 0, 0)));
    assert_eq!(g.compose(b, arrow(&g, 1, 1)), Some(b));
    assert_eq!(g.compose(a, a), None);
    assert_eq!(g.inverse(a), b);
}

#[test]
fn groupoid_of_the_ideal_inclusion() {
    let x = CrossedModule::from_ideal(&z4(), &[0, 2]).unwrap();
    let g = xmod_to_gpd(&x).unwrap();
    assert_eq!((g.arrows().order(), g.objects().order()), (8, 4));
    assert!(g.is_valid());
    assert!(ok(Structure::Gpd(Arc::new(g))));
    let c = xmod_to_cat1(&x).unwrap();
    assert_eq!(c.group().order(), 8);
    assert!(ok(Structure::Cat1(Arc::new(c))));
}

#[test]
fn corrupted_identity_map_is_rejected() {
    let g = InternalGroupoid::pair_groupoid(&Arc::new(cyclic_ring(2))).unwrap();
    let mut v = value(Structure::Gpd(Arc::new(g)));
    let id = v.pointer_mut("/body/identity/1").unwrap();
    let old = id.as_u64().unwrap();
    *id = Value::from((old + 1) % 4);
    assert!(!oracle::file_ok(&v));
    let f = gwops::format::parse(&v.to_string()).unwrap();
    let Structure::Gpd(bad) = f.structure else { unreachable!() };
    assert!(!bad.is_valid());
}

#[test]
fn pair_groupoid_quotient_by_pair_groupoid_on_two() {
    let g = Arc::new(InternalGroupoid::pair_groupoid(&z4()).unwrap());
    let n1: Vec<usize> = g.arrows().elements().filter(|&a| g.d0(a) % 2 == 0 && g.d1(a) % 2 == 0).collect();
    let q = internal_quotient(&g, &n1, &[0, 2]).unwrap();
    let p2 = Arc::new(InternalGroupoid::pair_groupoid(&Arc::new(cyclic_ring(2))).unwrap());
    let v = value(Structure::Gpd(Arc::new((*q.groupoid).clone())));
    assert!(oracle::file_ok(&v));
    assert_eq!((q.groupoid.arrows().order(), q.groupoid.objects().order()), (4, 2));
    assert!(find_isomorphism(q.groupoid.arrows(), p2.arrows()).is_some());
}

#[test]
fn zero_source_with_identity_target_is_not_a_cat1_group() {
    let g = z4();
    let c = Cat1Group::new(Morphism::zero(g.clone(), g.clone()).unwrap(), Morphism::identity(g)).unwrap();
    assert!(c.validate().mentions("st=t"));
    assert!(!ok(Structure::Cat1(Arc::new(c))));
}

#[test]
fn pair_cat1_quotient_and_round_trip() {
    let c = Arc::new(Cat1Group::standard(StandardKind::Pair, &z4()).unwrap());
    assert!(ok(Structure::Cat1(c.clone())));
    // pairs with both coordinates in {0,2}
    let n: Vec<usize> = c.group().elements().filter(|&e| (e / 4) % 2 == 0 && (e % 4) % 2 == 0).collect();
    let q = quotient_cat1(&c, &n).unwrap();
    let p2 = Arc::new(Cat1Group::standard(StandardKind::Pair, &Arc::new(cyclic_ring(2))).unwrap());
    assert!(find_cat1_isomorphism(&q.cat1, &p2).is_some());
    let x = cat1_to_xmod(&p2).unwrap();
    assert_eq!((x.xmod.acted().order(), x.xmod.actor().order()), (2, 2));
    assert!(ok(Structure::XMod(x.xmod.clone())));
    let w = roundtrip_cat1(&p2).unwrap();
    assert_eq!(w.forward().map.map().len(), 4);
}

#[test]
fn crossed_module_of_the_pair_groupoid_on_z4() {
    let g = InternalGroupoid::pair_groupoid(&z4()).unwrap();
    let x = gpd_to_xmod(&g).unwrap();
    assert_eq!(x.xmod.acted().order(), 4);
    assert!(x.xmod.boundary().is_isomorphism());
    assert!(ok(Structure::XMod(x.xmod.clone())));
}

#[test]
fn corpus_profiles() {
    let names = |p| generate_corpus(p, 16).unwrap().objects.into_iter().map(|o| o.name).collect::<Vec<_>>();
    let rings = names(Profile::SmallRings);
    for n in ["Z2 ring", "Z3 ring", "Z4 ring", "Z2xZ2 zero ring"] {
        assert!(rings.iter().any(|r| r == n), "{n}");
    }
    let groups = generate_corpus(Profile::Groups, 16).unwrap();
    let s3 = groups.objects.iter().find(|o| o.name == "S3").unwrap();
    assert!(tables(&s3.value).ok());
    assert_eq!(*s3.value, symmetric_group_3());
    assert!(generate_corpus(Profile::Empty, 16).unwrap().is_empty());
}
