//! Theorem-level checks over a generated corpus, with per-theorem tallies.
//!
//! Each check fans out over corpus entries with rayon; results are merged in
//! corpus order so reports are deterministic.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::actions::{action_from_split_extension, SplitExtension};
use crate::cat1::{cat1_kernel, is_covering_cat1, is_normal_subcat1, quotient_cat1, Cat1Group, Cat1Morphism};
use crate::corpus::{Corpus, Named};
use crate::equivalences::{
    cat1_morphism_to_xmod, covering_cat1_to_xmod, covering_gpd_to_xmod, covering_xmod_to_cat1, covering_xmod_to_gpd,
    gpd_morphism_to_xmod, normality_verdicts, roundtrip_cat1, roundtrip_gpd, roundtrip_xmod_cat1, roundtrip_xmod_gpd,
    transport_normal_cat1_to_xmod, transport_normal_gpd_to_xmod, transport_normal_xmod_to_cat1,
    transport_normal_xmod_to_gpd, xmod_morphism_to_cat1, xmod_morphism_to_gpd, XModImages,
};
use crate::error::Result;
use crate::format::{parse, serialize, AnyMorphism, Metadata, Structure, StructureFile, SubobjectSets};
use crate::gpd::{
    compare_quotients, covering_pullback_quotient, enumerate_wide_subgroupoids, gpd_kernel, internal_quotient,
    is_covering_gpd, is_normal_subgroupoid_higgins, GpdMorphism, InternalGroupoid,
};
use crate::subset::{enumerate_ideals, enumerate_ideals_containing, quotient, substructure};
use crate::xmod::{is_covering_xmod, is_subxmod, quotient_xmod, xmod_kernel, CrossedModule, XModMorphism};

/// Largest arrow object for which wide subgroupoids are enumerated.
pub const WIDE_SUBGROUPOID_ARROW_BOUND: usize = 32;

const KEPT_FAILURES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremTally {
    pub theorem: &'static str,
    pub checked: usize,
    pub failed: usize,
    /// The first few failures, in corpus order.
    pub failures: Vec<String>,
}

impl TheoremTally {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for TheoremTally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checked, {} failed",
            self.theorem, self.checked, self.failed
        )
    }
}

#[derive(Default)]
struct Local {
    checked: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Local {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }

    /// Counts an `Err` as a failed check; `Ok` values are passed through
    /// without being counted.
    fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.fail(format!("{}: {e}", what()));
                None
            }
        }
    }
}

fn tally<T: Sync>(theorem: &'static str, items: &[T], f: impl Fn(&T, &mut Local) + Sync) -> TheoremTally {
    let locals: Vec<Local> = items
        .par_iter()
        .map(|it| {
            let mut l = Local::default();
            f(it, &mut l);
            l
        })
        .collect();
    let mut out = TheoremTally {
        theorem,
        checked: 0,
        failed: 0,
        failures: Vec::new(),
    };
    for l in locals {
        out.checked += l.checked;
        out.failed += l.failed;
        for m in l.failures {
            if out.failures.len() < KEPT_FAILURES {
                out.failures.push(m);
            }
        }
    }
    out
}

/// Normal pairs `(S, T)` with `S`, `T` ideals of `A`, `B`.
pub fn normal_pairs(x: &CrossedModule, bound: usize) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    Ok(subxmod_ideal_pairs(x, bound)?
        .into_iter()
        .filter(|(s, t)| crate::xmod::is_normal_subxmod(x, s, t).map(|r| r.is_normal()).unwrap_or(false))
        .collect())
}

/// Pairs of ideals `(S, T)` of `A` and `B` that form a subcrossed module.
pub fn subxmod_ideal_pairs(x: &CrossedModule, bound: usize) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let sa = enumerate_ideals(x.acted(), bound)?;
    let tb = enumerate_ideals(x.actor(), bound)?;
    let mut out = Vec::new();
    for s in &sa {
        for t in &tb {
            if is_subxmod(x, s.elements(), t.elements())? {
                out.push((s.elements().to_vec(), t.elements().to_vec()));
            }
        }
    }
    Ok(out)
}

/// Internal-normal subgroupoids `(N₁, N₀)`: `N₀` an ideal of objects and
/// `N₁` an ideal of arrows containing `ε(N₀)` with both ends in `N₀`.
pub fn internal_normal_pairs(g: &InternalGroupoid, bound: usize) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let mut out = Vec::new();
    for n0 in enumerate_ideals(g.objects(), bound)? {
        let n0 = n0.elements().to_vec();
        let mut in_n0 = vec![false; g.objects().order()];
        for &x in &n0 {
            in_n0[x] = true;
        }
        let seed: Vec<usize> = n0.iter().map(|&x| g.eps(x)).collect();
        for n1 in enumerate_ideals_containing(g.arrows(), &seed, bound)? {
            if n1.elements().iter().all(|&a| in_n0[g.d0(a)] && in_n0[g.d1(a)]) {
                out.push((n1.elements().to_vec(), n0.clone()));
            }
        }
    }
    Ok(out)
}

/// Ideals of `G` closed under `s` and `t`.
pub fn normal_subcat1s(c: &Cat1Group, bound: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for n in enumerate_ideals(c.group(), bound)? {
        if is_normal_subcat1(c, n.elements())? {
            out.push(n.elements().to_vec());
        }
    }
    Ok(out)
}

/// Every theorem-level property, in a fixed order.
pub fn audit_corpus(corpus: &Corpus, bound: usize) -> Vec<TheoremTally> {
    vec![
        validators(corpus),
        split_extensions(corpus, bound),
        roundtrips(corpus),
        normality_transport(corpus, bound),
        quotient_coherence(corpus, bound),
        coset_translation(corpus),
        quotient_comparison(corpus, bound),
        coverings(corpus, bound),
        kernel_duality(corpus, bound),
        serialization(corpus, bound),
    ]
}

pub fn validators(c: &Corpus) -> TheoremTally {
    let mut t = tally("constructed instances validate", &c.objects, |o, l| {
        l.check(o.value.is_valid(), || o.name.clone())
    });
    let more = [
        tally("", &c.xmods, |x, l| {
            let ok = x.value.is_valid().unwrap_or(false);
            l.check(ok, || x.name.clone())
        }),
        tally("", &c.groupoids, |g, l| l.check(g.value.is_valid(), || g.name.clone())),
        tally("", &c.cat1s, |k, l| l.check(k.value.is_valid(), || k.name.clone())),
    ];
    for m in more {
        merge(&mut t, m);
    }
    t
}

fn merge(into: &mut TheoremTally, other: TheoremTally) {
    into.checked += other.checked;
    into.failed += other.failed;
    for f in other.failures {
        if into.failures.len() < KEPT_FAILURES {
            into.failures.push(f);
        }
    }
}

/// The canonical split extension of each crossed module's action, and the
/// extension `N → G → G/N` of each ideal that has a section, give derived
/// actions; every derived action has a valid semidirect product.
pub fn split_extensions(c: &Corpus, bound: usize) -> TheoremTally {
    let mut t = tally("split extensions give derived actions", &c.xmods, |x, l| {
        let acts = x.value.action();
        let Some(ext) = l.ok(SplitExtension::canonical(acts), || x.name.clone()) else {
            return;
        };
        let Some(back) = l.ok(action_from_split_extension(&ext), || x.name.clone()) else {
            return;
        };
        l.check(back == *acts, || format!("{}: action not recovered", x.name));
        let derived = back.is_derived_action().unwrap_or(false);
        l.check(derived, || format!("{}: not derived", x.name));
        if derived {
            let valid = back.semidirect().map(|s| s.is_valid()).unwrap_or(false);
            l.check(valid, || format!("{}: semidirect product invalid", x.name));
        }
    });
    let more = tally("", &c.objects, |g, l| {
        let Some(ideals) = l.ok(enumerate_ideals(&g.value, bound), || g.name.clone()) else {
            return;
        };
        for n in ideals {
            let what = || format!("{} / {:?}", g.name, n.elements());
            let Some(q) = l.ok(quotient(&g.value, n.elements()), what) else {
                continue;
            };
            let Some((_, inc)) = l.ok(substructure(&g.value, n.elements()), what) else {
                continue;
            };
            let Some(section) = SplitExtension::find_section(&q.projection) else {
                continue;
            };
            let Some(ext) = l.ok(SplitExtension::new(inc, q.projection.clone(), section), what) else {
                continue;
            };
            let Some(acts) = l.ok(action_from_split_extension(&ext), what) else {
                continue;
            };
            let derived = acts.is_derived_action().unwrap_or(false);
            l.check(derived, || format!("{}: not derived", what()));
            if derived {
                let valid = acts.semidirect().map(|s| s.is_valid()).unwrap_or(false);
                l.check(valid, || format!("{}: semidirect product invalid", what()));
            }
        }
    });
    merge(&mut t, more);
    t
}

pub fn roundtrips(c: &Corpus) -> TheoremTally {
    let mut t = tally("equivalence roundtrips", &c.xmods, |x, l| {
        let ok = roundtrip_xmod_gpd(&x.value).is_ok();
        l.check(ok, || format!("{}: X vs δη(X)", x.name));
        let ok = roundtrip_xmod_cat1(&x.value).is_ok();
        l.check(ok, || format!("{}: X vs δ¹θ(X)", x.name));
    });
    merge(
        &mut t,
        tally("", &c.cat1s, |k, l| {
            let ok = roundtrip_cat1(&k.value).is_ok();
            l.check(ok, || format!("{}: θδ¹(C) vs C", k.name))
        }),
    );
    merge(
        &mut t,
        tally("", &c.groupoids, |g, l| {
            let ok = roundtrip_gpd(&g.value).is_ok();
            l.check(ok, || format!("{}: ηδ(G) vs G", g.name))
        }),
    );
    t
}

pub fn normality_transport(c: &Corpus, bound: usize) -> TheoremTally {
    tally("normality transport biconditionals", &c.xmods, |x, l| {
        let Some(images) = l.ok(XModImages::of(&x.value), || x.name.clone()) else {
            return;
        };
        let Some(pairs) = l.ok(subxmod_ideal_pairs(&x.value, bound), || x.name.clone()) else {
            return;
        };
        for (s, t) in pairs {
            match normality_verdicts(&x.value, &images, &s, &t) {
                Ok(v) => l.check(v.agree(), || format!("{} at ({s:?}, {t:?}): {v:?}", x.name)),
                Err(e) => l.ok::<()>(Err(e), || format!("{} at ({s:?}, {t:?})", x.name)).unwrap_or(()),
            }
        }
    })
}

pub fn quotient_coherence(c: &Corpus, bound: usize) -> TheoremTally {
    let mut t = tally("quotient coherence", &c.xmods, |x, l| {
        let Some(pairs) = l.ok(normal_pairs(&x.value, bound), || x.name.clone()) else {
            return;
        };
        for (s, t) in pairs {
            let at = || format!("{} at ({s:?}, {t:?})", x.name);
            let ok = crate::xmod::semidirect_quotient_iso(&x.value, &s, &t).is_ok();
            l.check(ok, || format!("{}: semidirect quotient", at()));
            let r = transport_normal_xmod_to_gpd(&x.value, &s, &t);
            l.check(r.is_ok(), || format!("{}: to groupoids: {:?}", at(), r.err()));
            let r = transport_normal_xmod_to_cat1(&x.value, &s, &t);
            l.check(r.is_ok(), || format!("{}: to cat1: {:?}", at(), r.err()));
        }
    });
    merge(
        &mut t,
        tally("", &c.groupoids, |g, l| {
            let Some(pairs) = l.ok(internal_normal_pairs(&g.value, bound.max(g.value.arrows().order())), || g.name.clone()) else {
                return;
            };
            for (n1, n0) in pairs {
                let r = transport_normal_gpd_to_xmod(&g.value, &n1, &n0);
                l.check(r.is_ok(), || format!("{} at {n1:?}: {:?}", g.name, r.err()));
            }
        }),
    );
    merge(
        &mut t,
        tally("", &c.cat1s, |k, l| {
            let Some(ns) = l.ok(normal_subcat1s(&k.value, bound.max(k.value.group().order())), || k.name.clone()) else {
                return;
            };
            for n in ns {
                let r = transport_normal_cat1_to_xmod(&k.value, &n);
                l.check(r.is_ok(), || format!("{} at {n:?}: {:?}", k.name, r.err()));
            }
        }),
    );
    t
}

fn small_groupoids(c: &Corpus) -> Vec<&Named<Arc<InternalGroupoid>>> {
    c.groupoids
        .iter()
        .filter(|g| g.value.arrows().order() <= WIDE_SUBGROUPOID_ARROW_BOUND)
        .collect()
}

pub fn coset_translation(c: &Corpus) -> TheoremTally {
    let gs = small_groupoids(c);
    tally("coset normality equals translation criterion", &gs, |g, l| {
        let Some(wide) = l.ok(enumerate_wide_subgroupoids(&g.value, WIDE_SUBGROUPOID_ARROW_BOUND), || g.name.clone()) else {
            return;
        };
        for n in wide {
            let r = is_normal_subgroupoid_higgins(&g.value, &n);
            l.check(r.is_ok(), || format!("{} at {n:?}: {:?}", g.name, r.err()));
        }
    })
}

pub fn quotient_comparison(c: &Corpus, bound: usize) -> TheoremTally {
    tally("quotients agree exactly for transitive subgroupoids", &c.groupoids, |g, l| {
        let all: Vec<usize> = g.value.objects().elements().collect();
        let seed: Vec<usize> = all.iter().map(|&x| g.value.eps(x)).collect();
        let b = bound.max(g.value.arrows().order());
        let Some(ns) = l.ok(enumerate_ideals_containing(g.value.arrows(), &seed, b), || g.name.clone()) else {
            return;
        };
        for n in ns {
            let r = compare_quotients(&g.value, n.elements());
            l.check(r.is_ok(), || format!("{} at {:?}: {:?}", g.name, n.elements(), r.err()));
        }
    })
}

/// Morphisms of crossed modules used by the covering and kernel checks:
/// identities and every quotient projection.
fn xmod_morphisms(x: &Arc<CrossedModule>, bound: usize) -> Result<Vec<XModMorphism>> {
    let mut out = vec![XModMorphism::identity(x.clone())];
    for (s, t) in normal_pairs(x, bound)? {
        out.push(quotient_xmod(x, &s, &t)?.projection);
    }
    Ok(out)
}

pub fn coverings(c: &Corpus, bound: usize) -> TheoremTally {
    let mut t = tally("covering suite", &c.xmods, |x, l| {
        let Some(ms) = l.ok(xmod_morphisms(&x.value, bound), || x.name.clone()) else {
            return;
        };
        for (i, m) in ms.iter().enumerate() {
            let at = || format!("{} morphism {i}", x.name);
            let flag = is_covering_xmod(m);
            if i == 0 {
                l.check(flag, || format!("{}: identity is not a covering", at()));
            }
            if i > 0 && m.f.kernel().len() > 1 {
                l.check(!flag, || format!("{}: projection with nontrivial kernel is a covering", at()));
            }
            let Some(gm) = l.ok(xmod_morphism_to_gpd(m), at) else {
                continue;
            };
            let Some(cm) = l.ok(xmod_morphism_to_cat1(m), at) else {
                continue;
            };
            let gflag = is_covering_gpd(&gm);
            l.check(gflag.as_ref().ok() == Some(&flag), || format!("{}: groupoid flag {gflag:?}", at()));
            l.check(is_covering_cat1(&cm) == flag, || format!("{}: cat1 flag", at()));
            let back_g = gpd_morphism_to_xmod(&gm).map(|b| is_covering_xmod(&b));
            l.check(back_g.as_ref().ok() == Some(&flag), || format!("{}: back from groupoids {back_g:?}", at()));
            let back_c = cat1_morphism_to_xmod(&cm).map(|b| is_covering_xmod(&b));
            l.check(back_c.as_ref().ok() == Some(&flag), || format!("{}: back from cat1 {back_c:?}", at()));
            if flag {
                l.check(covering_xmod_to_gpd(m).is_ok(), || format!("{}: transport to groupoids", at()));
                l.check(covering_xmod_to_cat1(m).is_ok(), || format!("{}: transport to cat1", at()));
                l.check(covering_gpd_to_xmod(&gm).is_ok(), || format!("{}: transport from groupoids", at()));
                l.check(covering_cat1_to_xmod(&cm).is_ok(), || format!("{}: transport from cat1", at()));
                // identities are covered by the groupoid pass below
                if i > 0 {
                    pullbacks(&gm, bound, l, &at);
                }
            }
        }
    });
    merge(
        &mut t,
        tally("", &c.groupoids, |g, l| {
            let id = GpdMorphism::identity(g.value.clone());
            let r = is_covering_gpd(&id);
            l.check(r == Ok(true), || format!("{}: identity {r:?}", g.name));
            let b = bound.max(g.value.arrows().order());
            let Some(pairs) = l.ok(internal_normal_pairs(&g.value, b), || g.name.clone()) else {
                return;
            };
            for (n1, n0) in &pairs {
                let Some(q) = l.ok(internal_quotient(&g.value, n1, n0), || g.name.clone()) else {
                    continue;
                };
                let flag = is_covering_gpd(&q.projection);
                if n1.len() > n0.len() {
                    l.check(flag == Ok(false), || format!("{} at {n1:?}: projection flag {flag:?}", g.name));
                }
                if let Ok(flag) = flag {
                    let back = gpd_morphism_to_xmod(&q.projection).map(|m| is_covering_xmod(&m));
                    l.check(back == Ok(flag), || format!("{} at {n1:?}: transported flag {back:?}", g.name));
                }
            }
            pullbacks(&id, b, l, &|| g.name.clone());
        }),
    );
    merge(
        &mut t,
        tally("", &c.cat1s, |k, l| {
            let id = Cat1Morphism::identity(k.value.clone());
            l.check(is_covering_cat1(&id), || format!("{}: identity", k.name));
            let b = bound.max(k.value.group().order());
            let Some(ns) = l.ok(normal_subcat1s(&k.value, b), || k.name.clone()) else {
                return;
            };
            let ker_s = k.value.ker_s();
            for n in ns {
                let Some(q) = l.ok(quotient_cat1(&k.value, &n), || k.name.clone()) else {
                    continue;
                };
                let flag = is_covering_cat1(&q.projection);
                if n.iter().any(|&g| g != k.value.group().zero() && ker_s.contains(&g)) {
                    l.check(!flag, || format!("{} at {n:?}: projection is a covering", k.name));
                }
                let back = cat1_morphism_to_xmod(&q.projection).map(|m| is_covering_xmod(&m));
                l.check(back == Ok(flag), || format!("{} at {n:?}: transported flag {back:?}", k.name));
            }
        }),
    );
    t
}

fn pullbacks(p: &GpdMorphism, bound: usize, l: &mut Local, at: &dyn Fn() -> String) {
    let b = bound.max(p.cod.arrows().order());
    let Some(pairs) = l.ok(internal_normal_pairs(&p.cod, b), at) else {
        return;
    };
    for (n1, n0) in pairs {
        let r = covering_pullback_quotient(p, &n1, &n0).and_then(|q| is_covering_gpd(&q.induced));
        l.check(r == Ok(true), || format!("{}: pullback along {n1:?}: {r:?}", at()));
    }
}

pub fn kernel_duality(c: &Corpus, bound: usize) -> TheoremTally {
    let mut t = tally("kernels are exactly the normal subobjects", &c.xmods, |x, l| {
        let Some(pairs) = l.ok(normal_pairs(&x.value, bound), || x.name.clone()) else {
            return;
        };
        for (s, t) in &pairs {
            let k = quotient_xmod(&x.value, s, t).and_then(|q| xmod_kernel(&q.projection));
            let ok = matches!(&k, Ok(k) if k.s.elements() == s.as_slice() && k.t.elements() == t.as_slice() && k.is_normal);
            l.check(ok, || format!("{} at ({s:?}, {t:?})", x.name));
        }
        if let Ok(z) = XModMorphism::zero(x.value.clone(), x.value.clone()) {
            if z.is_morphism() {
                let k = xmod_kernel(&z);
                l.check(matches!(k, Ok(ref k) if k.is_normal), || format!("{}: zero kernel", x.name));
            }
        }
    });
    merge(
        &mut t,
        tally("", &c.groupoids, |g, l| {
            let b = bound.max(g.value.arrows().order());
            let Some(pairs) = l.ok(internal_normal_pairs(&g.value, b), || g.name.clone()) else {
                return;
            };
            for (n1, n0) in &pairs {
                let k = internal_quotient(&g.value, n1, n0).and_then(|q| gpd_kernel(&q.projection));
                let ok = matches!(&k, Ok(k) if &k.arrows == n1 && &k.objects == n0 && k.is_internal_normal);
                l.check(ok, || format!("{} at {n1:?}", g.name));
            }
        }),
    );
    merge(
        &mut t,
        tally("", &c.cat1s, |k, l| {
            let b = bound.max(k.value.group().order());
            let Some(ns) = l.ok(normal_subcat1s(&k.value, b), || k.name.clone()) else {
                return;
            };
            for n in &ns {
                let ker = quotient_cat1(&k.value, n).and_then(|q| cat1_kernel(&q.projection));
                let ok = matches!(&ker, Ok(s) if s.elements() == n.as_slice()
                    && is_normal_subcat1(&k.value, s.elements()).unwrap_or(false));
                l.check(ok, || format!("{} at {n:?}", k.name));
            }
        }),
    );
    t
}

/// Files for every structure of the corpus, plus ideal inclusions, actions,
/// ideals as subobjects, and quotients with representative annotations.
pub fn corpus_files(c: &Corpus, bound: usize) -> Result<Vec<StructureFile>> {
    let mut out = Vec::new();
    for o in &c.objects {
        out.push(StructureFile::new(Structure::Gwo(o.value.clone()), Metadata::named(&o.name)));
        for (i, n) in enumerate_ideals(&o.value, bound)?.iter().enumerate() {
            out.push(StructureFile::new(
                Structure::Subobject(SubobjectSets {
                    elements: n.elements().to_vec(),
                    base_elements: None,
                }),
                Metadata::named(format!("ideal {i} of {}", o.name)),
            ));
            let (_, inc) = substructure(&o.value, n.elements())?;
            out.push(StructureFile::new(Structure::Morphism(AnyMorphism::Gwo(inc)), Metadata::named(format!("inclusion of ideal {i} of {}", o.name))));
            let q = quotient(&o.value, n.elements())?;
            out.push(StructureFile::new(
                Structure::Gwo(q.structure.clone()),
                Metadata {
                    name: Some(format!("{} mod ideal {i}", o.name)),
                    provenance: Some("quotient".into()),
                    representatives: Some(q.representatives.clone()),
                },
            ));
        }
    }
    for x in &c.xmods {
        out.push(StructureFile::new(Structure::XMod(x.value.clone()), Metadata::named(&x.name)));
        out.push(StructureFile::new(
            Structure::Action(x.value.action().clone()),
            Metadata::named(format!("action of {}", x.name)),
        ));
        out.push(StructureFile::new(
            Structure::Morphism(AnyMorphism::XMod(XModMorphism::identity(x.value.clone()))),
            Metadata::named(format!("identity of {}", x.name)),
        ));
    }
    for g in &c.groupoids {
        out.push(StructureFile::new(Structure::Gpd(g.value.clone()), Metadata::named(&g.name)));
        out.push(StructureFile::new(
            Structure::Morphism(AnyMorphism::Gpd(GpdMorphism::identity(g.value.clone()))),
            Metadata::named(format!("identity of {}", g.name)),
        ));
    }
    for k in &c.cat1s {
        out.push(StructureFile::new(Structure::Cat1(k.value.clone()), Metadata::named(&k.name)));
        out.push(StructureFile::new(
            Structure::Morphism(AnyMorphism::Cat1(Cat1Morphism::identity(k.value.clone()))),
            Metadata::named(format!("identity of {}", k.name)),
        ));
    }
    Ok(out)
}

pub fn serialization(c: &Corpus, bound: usize) -> TheoremTally {
    let files = match corpus_files(c, bound) {
        Ok(f) => f,
        Err(e) => {
            return TheoremTally {
                theorem: "serialization roundtrip",
                checked: 1,
                failed: 1,
                failures: vec![e.to_string()],
            }
        }
    };
    tally("serialization roundtrip", &files, |f, l| {
        let text = serialize(f);
        let back = parse(&text);
        let name = || f.metadata.name.clone().unwrap_or_default();
        l.check(back.as_ref() == Ok(f), || format!("{}: parse mismatch", name()));
        if let Ok(b) = back {
            l.check(serialize(&b) == text, || format!("{}: bytes differ", name()));
        }
    })
}
