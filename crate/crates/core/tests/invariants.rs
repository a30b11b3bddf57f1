//! Property tests over random corpus members, relabelings and corruptions.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use gwops::audit::{internal_normal_pairs, normal_pairs};
use gwops::corpus::{generate_corpus, Corpus, Profile};
use gwops::equivalences::roundtrip_xmod_gpd;
use gwops::format::{parse, serialize, Metadata, Structure, StructureFile};
use gwops::subset::{enumerate_ideals, quotient};
use gwops::xmod::quotient_xmod;
use gwops::{find_isomorphism, GroupWithOps, Morphism, Table};

fn corpus() -> &'static Corpus {
    static C: OnceLock<Corpus> = OnceLock::new();
    C.get_or_init(|| generate_corpus(Profile::Full, 16).unwrap())
}

/// `g` transported along the bijection `x ↦ p[x]` from the new labels to the old.
fn relabel(g: &GroupWithOps, p: &[usize]) -> GroupWithOps {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    GroupWithOps::from_fns(
        g.signature().clone(),
        g.order(),
        inv[g.zero()],
        |a, b| inv[g.add(p[a], p[b])],
        |k, a, b| inv[g.op(k, p[a], p[b])],
        |u, a| inv[g.unary_op(u, p[a])],
    )
    .unwrap()
}

fn object_and_perm() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..corpus().objects.len()).prop_flat_map(|i| {
        let n = corpus().objects[i].value.order();
        (Just(i), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabeling_preserves_validity_and_isomorphism_type((i, p) in object_and_perm()) {
        let g = &corpus().objects[i].value;
        let h = Arc::new(relabel(g, &p));
        prop_assert!(h.is_valid());
        let phi = Morphism::new(h.clone(), g.clone(), p).unwrap();
        prop_assert!(phi.is_isomorphism());
        prop_assert!(find_isomorphism(g, &h).is_some());
        let f = StructureFile::new(Structure::Gwo(h), Metadata::default());
        prop_assert_eq!(parse(&serialize(&f)).unwrap(), f);
    }

    #[test]
    fn any_single_addition_cell_change_is_rejected(i in 0usize..64, cell in 0usize..4096, shift in 1usize..64) {
        let objs: Vec<_> = corpus().objects.iter().filter(|o| o.value.order() > 1).collect();
        let g = &objs[i % objs.len()].value;
        let n = g.order();
        let (r, c) = (cell / n % n, cell % n);
        let mut rows = g.add_table().to_rows();
        rows[r][c] = (rows[r][c] + shift % (n - 1) + 1) % n;
        let add = Table::from_rows(&rows, n, n, n).unwrap();
        let binary = (0..g.signature().binary_count()).map(|k| g.binary_table(k).clone()).collect();
        let unary = (0..g.signature().unary_count()).map(|u| g.unary_table(u).to_vec()).collect();
        let bad = GroupWithOps::from_tables(g.signature().clone(), g.zero(), add, g.neg_table().to_vec(), binary, unary).unwrap();
        prop_assert!(!bad.is_valid());
    }

    #[test]
    fn quotients_have_the_ideal_as_kernel(i in 0usize..64, j in 0usize..1024) {
        let g = &corpus().objects[i % corpus().objects.len()].value;
        let ideals = enumerate_ideals(g, 16).unwrap();
        let n = ideals[j % ideals.len()].elements().to_vec();
        let q = quotient(g, &n).unwrap();
        prop_assert!(q.structure.is_valid());
        prop_assert!(q.projection.check().is_none());
        prop_assert_eq!(q.projection.kernel(), n.clone());
        prop_assert_eq!(q.structure.order() * n.len(), g.order());
        prop_assert_eq!(q.projection.image().len(), q.structure.order());
    }

    #[test]
    fn direct_products_are_valid(i in 0usize..64, j in 0usize..64) {
        let objs = &corpus().objects;
        let (a, b) = (&objs[i % objs.len()].value, &objs[j % objs.len()].value);
        prop_assume!(a.signature() == b.signature() && a.order() * b.order() <= 64);
        let p = GroupWithOps::direct_product(a, b).unwrap();
        prop_assert!(p.is_valid());
        prop_assert_eq!(p.order(), a.order() * b.order());
    }

    #[test]
    fn crossed_module_quotients_are_crossed_modules(i in 0usize..4096, j in 0usize..1024) {
        let xs = &corpus().xmods;
        let x = &xs[i % xs.len()].value;
        let pairs = normal_pairs(x, 16).unwrap();
        let (s, t) = &pairs[j % pairs.len()];
        let q = quotient_xmod(x, s, t).unwrap();
        prop_assert!(q.xmod.is_valid().unwrap());
        prop_assert!(q.projection.is_morphism());
        prop_assert!(roundtrip_xmod_gpd(&q.xmod).is_ok());
    }

    #[test]
    fn groupoid_composition_laws(i in 0usize..4096, a in 0usize..4096, b in 0usize..4096, c in 0usize..4096) {
        let gs = &corpus().groupoids;
        let g = &gs[i % gs.len()].value;
        let n = g.arrows().order();
        let a = a % n;
        let into = |x: usize| -> Vec<usize> { g.arrows().elements().filter(|&e| g.d0(e) == x).collect() };
        let bs = into(g.d1(a));
        let b = bs[b % bs.len()];
        let cs = into(g.d1(b));
        let c = cs[c % cs.len()];
        let ba = g.compose(b, a).unwrap();
        prop_assert_eq!((g.d0(ba), g.d1(ba)), (g.d0(a), g.d1(b)));
        prop_assert_eq!(g.compose(c, ba), g.compose(g.compose(c, b).unwrap(), a));
        let inv = g.inverse(a);
        prop_assert_eq!(g.compose(inv, a), Some(g.eps(g.d0(a))));
        prop_assert_eq!(g.compose(a, inv), Some(g.eps(g.d1(a))));
        prop_assert_eq!(g.compose(a, g.eps(g.d0(a))), Some(a));
    }

    #[test]
    fn internal_normal_subgroupoids_have_ideal_arrows(i in 0usize..4096, j in 0usize..1024) {
        let gs = &corpus().groupoids;
        let g = &gs[i % gs.len()].value;
        let pairs = internal_normal_pairs(g, 64).unwrap();
        let (n1, n0) = &pairs[j % pairs.len()];
        prop_assert!(gwops::subset::is_ideal(g.arrows(), n1).unwrap());
        prop_assert!(gwops::subset::is_ideal(g.objects(), n0).unwrap());
        prop_assert!(n1.iter().all(|&a| n0.contains(&g.d0(a)) && n0.contains(&g.d1(a))));
    }

    #[test]
    fn cat1_source_image_is_its_fixed_points(i in 0usize..4096) {
        let cs = &corpus().cat1s;
        let c = &cs[i % cs.len()].value;
        let fixed: Vec<usize> = c.group().elements().filter(|&x| c.s(x) == x).collect();
        prop_assert_eq!(c.image_s(), fixed);
        prop_assert!(c.ker_s().iter().all(|&k| c.s(k) == c.group().zero()));
    }
}
