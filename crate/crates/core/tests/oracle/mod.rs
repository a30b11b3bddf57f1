//! Brute-force axiom checks written straight from the definitions, reading the
//! raw tables of a serialized structure file. Shares no code with the library
//! validators beyond the file layout.
#![allow(dead_code)]

use serde_json::Value;

pub struct Sig {
    pub binary: Vec<String>,
    pub opposite: Vec<usize>,
    pub unary: Vec<String>,
}

impl Sig {
    pub fn of(file: &Value) -> Sig {
        let names = |v: &Value| -> Vec<String> {
            v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
        };
        let s = &file["signature"];
        let binary = names(&s["binary"]);
        let opposite = names(&s["opposite"])
            .iter()
            .map(|o| binary.iter().position(|b| b == o).unwrap())
            .collect();
        Sig { binary, opposite, unary: names(&s["unary"]) }
    }
}

pub fn nums(v: &Value) -> Vec<usize> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect()
}

pub fn rows(v: &Value) -> Vec<Vec<usize>> {
    v.as_array().unwrap().iter().map(nums).collect()
}

/// A group with operations as plain tables; `ops[k]` follows the signature
/// order and `opp[k]` is the index of the opposite operation.
#[derive(Clone, Debug)]
pub struct Gwo {
    pub n: usize,
    pub zero: usize,
    pub add: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    pub ops: Vec<Vec<Vec<usize>>>,
    pub opp: Vec<usize>,
    pub unary: Vec<Vec<usize>>,
}

pub fn gwo(body: &Value, sig: &Sig) -> Gwo {
    let neg = nums(&body["neg"]);
    Gwo {
        n: neg.len(),
        zero: body["zero"].as_u64().unwrap() as usize,
        add: rows(&body["add"]),
        neg,
        ops: sig.binary.iter().map(|s| rows(&body["ops"][s])).collect(),
        opp: sig.opposite.clone(),
        unary: sig.unary.iter().map(|s| nums(&body["unary"][s])).collect(),
    }
}

fn all2(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

impl Gwo {
    pub fn p(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn m(&self, a: usize, b: usize) -> usize {
        self.p(a, self.neg[b])
    }

    pub fn op(&self, k: usize, a: usize, b: usize) -> usize {
        self.ops[k][a][b]
    }

    /// Group laws, opposite pairing, left distributivity and the identities
    /// tying unary operations to `+` and to the binary operations.
    pub fn ok(&self) -> bool {
        let n = self.n;
        let z = self.zero;
        if (0..n).any(|a| self.p(z, a) != a || self.p(a, z) != a) {
            return false;
        }
        if (0..n).any(|a| self.p(a, self.neg[a]) != z || self.p(self.neg[a], a) != z) {
            return false;
        }
        for (a, b) in all2(n) {
            let ab = self.p(a, b);
            if (0..n).any(|c| self.p(ab, c) != self.p(a, self.p(b, c))) {
                return false;
            }
        }
        for k in 0..self.ops.len() {
            for (a, b) in all2(n) {
                if self.op(self.opp[k], a, b) != self.op(k, b, a) {
                    return false;
                }
                if (0..n).any(|c| self.op(k, a, self.p(b, c)) != self.p(self.op(k, a, b), self.op(k, a, c))) {
                    return false;
                }
            }
        }
        for u in &self.unary {
            for (a, b) in all2(n) {
                if u[self.p(a, b)] != self.p(u[a], u[b]) {
                    return false;
                }
                if (0..self.ops.len()).any(|k| self.op(k, u[a], b) != u[self.op(k, a, b)]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn hom(&self, cod: &Gwo, f: &[usize]) -> bool {
        if f.len() != self.n || f.iter().any(|&x| x >= cod.n) {
            return false;
        }
        all2(self.n).all(|(a, b)| {
            f[self.p(a, b)] == cod.p(f[a], f[b])
                && (0..self.ops.len()).all(|k| f[self.op(k, a, b)] == cod.op(k, f[a], f[b]))
        }) && (0..self.unary.len()).all(|u| (0..self.n).all(|a| f[self.unary[u][a]] == cod.unary[u][f[a]]))
    }

    /// Subobject closed under conjugation and under `⋆` with any element on
    /// either side.
    pub fn is_ideal(&self, s: &[usize]) -> bool {
        let mut inn = vec![false; self.n];
        for &x in s {
            inn[x] = true;
        }
        if !inn[self.zero] {
            return false;
        }
        for &x in s {
            if !inn[self.neg[x]] || self.unary.iter().any(|u| !inn[u[x]]) {
                return false;
            }
            if s.iter().any(|&y| !inn[self.p(x, y)]) {
                return false;
            }
            for a in 0..self.n {
                if !inn[self.m(self.p(a, x), a)] {
                    return false;
                }
                if (0..self.ops.len()).any(|k| !inn[self.op(k, a, x)] || !inn[self.op(k, x, a)]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_singular(&self) -> bool {
        all2(self.n).all(|(a, b)| self.p(a, b) == self.p(b, a) && (0..self.ops.len()).all(|k| self.op(k, a, b) == self.zero))
    }
}

/// `A ⋊ B` from the defining formulas, with `(a, b)` at `a·|B| + b`:
/// `(a′,b′) + (a,b) = (a′ + b′·a, b′ + b)` and
/// `(a′,b′) ⋆ (a,b) = (a′⋆a + a′⋆b + b′⋆a, b′⋆b)`, where `a′⋆b` is `b ⋆° a′`.
/// Negatives are found by search; an element without one gets `0` and the
/// product then fails [`Gwo::ok`].
pub fn semidirect(a: &Gwo, b: &Gwo, dot: &[Vec<usize>], star: &[Vec<Vec<usize>>]) -> Gwo {
    let nb = b.n;
    let n = a.n * nb;
    let pair = |x: usize, y: usize| x * nb + y;
    let add: Vec<Vec<usize>> = (0..n)
        .map(|e| {
            let (a1, b1) = (e / nb, e % nb);
            (0..n)
                .map(|f| {
                    let (a0, b0) = (f / nb, f % nb);
                    pair(a.p(a1, dot[b1][a0]), b.p(b1, b0))
                })
                .collect()
        })
        .collect();
    let zero = pair(a.zero, b.zero);
    let neg = (0..n).map(|e| (0..n).find(|&f| add[e][f] == zero).unwrap_or(0)).collect();
    let ops = (0..a.ops.len())
        .map(|k| {
            let o = a.opp[k];
            (0..n)
                .map(|e| {
                    let (a1, b1) = (e / nb, e % nb);
                    (0..n)
                        .map(|f| {
                            let (a0, b0) = (f / nb, f % nb);
                            let first = a.p(a.op(k, a1, a0), star[o][b0][a1]);
                            pair(a.p(first, star[k][b1][a0]), b.op(k, b1, b0))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let unary = (0..a.unary.len())
        .map(|u| (0..n).map(|e| pair(a.unary[u][e / nb], b.unary[u][e % nb])).collect())
        .collect();
    Gwo { n, zero, add, neg, ops, opp: a.opp.clone(), unary }
}

pub struct XMod {
    pub a: Gwo,
    pub b: Gwo,
    pub dot: Vec<Vec<usize>>,
    pub star: Vec<Vec<Vec<usize>>>,
    pub alpha: Vec<usize>,
}

pub fn xmod(body: &Value, sig: &Sig) -> XMod {
    XMod {
        a: gwo(&body["acted"], sig),
        b: gwo(&body["actor"], sig),
        dot: rows(&body["dot"]),
        star: sig.binary.iter().map(|s| rows(&body["star"][s])).collect(),
        alpha: nums(&body["boundary"]),
    }
}

impl XMod {
    pub fn is_derived(&self) -> bool {
        semidirect(&self.a, &self.b, &self.dot, &self.star).ok()
    }

    /// Both structures valid, the actions derived, `α` a morphism and CM1–CM4.
    pub fn ok(&self) -> bool {
        let (a, b, al) = (&self.a, &self.b, &self.alpha);
        if !a.ok() || !b.ok() || !self.is_derived() || !a.hom(b, al) {
            return false;
        }
        for x in 0..b.n {
            for y in 0..a.n {
                // α(b·a) = b + α(a) − b
                if al[self.dot[x][y]] != b.m(b.p(x, al[y]), x) {
                    return false;
                }
            }
        }
        for x in 0..a.n {
            for y in 0..a.n {
                // α(a)·a′ = a + a′ − a
                if self.dot[al[x]][y] != a.m(a.p(x, y), x) {
                    return false;
                }
                for k in 0..a.ops.len() {
                    if self.star[k][al[x]][y] != a.op(k, x, y) {
                        return false;
                    }
                }
            }
        }
        for k in 0..a.ops.len() {
            let o = a.opp[k];
            for x in 0..b.n {
                for y in 0..a.n {
                    // α(b⋆a) = b⋆α(a), α(a⋆b) = α(a)⋆b
                    if al[self.star[k][x][y]] != b.op(k, x, al[y]) || al[self.star[o][x][y]] != b.op(k, al[y], x) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub struct Gpd {
    pub g0: Gwo,
    pub g1: Gwo,
    pub d0: Vec<usize>,
    pub d1: Vec<usize>,
    pub eps: Vec<usize>,
}

pub fn gpd(body: &Value, sig: &Sig) -> Gpd {
    Gpd {
        g0: gwo(&body["objects"], sig),
        g1: gwo(&body["arrows"], sig),
        d0: nums(&body["source"]),
        d1: nums(&body["target"]),
        eps: nums(&body["identity"]),
    }
}

impl Gpd {
    /// `b∘a = b − ε(y) + a` for `d₀b = y = d₁a`.
    pub fn comp(&self, b: usize, a: usize) -> usize {
        let g = &self.g1;
        g.p(g.m(b, self.eps[self.d1[a]]), a)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        all2(self.g1.n).filter(|&(b, a)| self.d0[b] == self.d1[a]).collect()
    }

    /// Internal category: structure maps are morphisms, identities have the
    /// right ends, composition is a category law and every operation satisfies
    /// the interchange law.
    pub fn ok(&self) -> bool {
        let (g0, g1) = (&self.g0, &self.g1);
        if !g0.ok() || !g1.ok() || !g1.hom(g0, &self.d0) || !g1.hom(g0, &self.d1) || !g0.hom(g1, &self.eps) {
            return false;
        }
        if (0..g0.n).any(|x| self.d0[self.eps[x]] != x || self.d1[self.eps[x]] != x) {
            return false;
        }
        let pairs = self.pairs();
        for &(b, a) in &pairs {
            let c = self.comp(b, a);
            if self.d0[c] != self.d0[a] || self.d1[c] != self.d1[b] {
                return false;
            }
        }
        for a in 0..g1.n {
            if self.comp(self.eps[self.d1[a]], a) != a || self.comp(a, self.eps[self.d0[a]]) != a {
                return false;
            }
        }
        for &(b, a) in &pairs {
            for c in (0..g1.n).filter(|&c| self.d0[c] == self.d1[b]) {
                if self.comp(self.comp(c, b), a) != self.comp(c, self.comp(b, a)) {
                    return false;
                }
            }
        }
        let mut ops: Vec<&Vec<Vec<usize>>> = vec![&g1.add];
        ops.extend(g1.ops.iter());
        for t in ops {
            for &(a, c) in &pairs {
                for &(b, d) in &pairs {
                    let (ab, cd) = (t[a][b], t[c][d]);
                    if self.d0[ab] != self.d1[cd] || self.comp(ab, cd) != t[self.comp(a, c)][self.comp(b, d)] {
                        return false;
                    }
                }
            }
        }
        for u in &g1.unary {
            for &(b, a) in &pairs {
                if self.d0[u[b]] != self.d1[u[a]] || u[self.comp(b, a)] != self.comp(u[b], u[a]) {
                    return false;
                }
            }
        }
        true
    }
}

pub struct Cat1 {
    pub g: Gwo,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

pub fn cat1(body: &Value, sig: &Sig) -> Cat1 {
    Cat1 { g: gwo(&body["group"], sig), s: nums(&body["source"]), t: nums(&body["target"]) }
}

impl Cat1 {
    /// `s`, `t` endomorphisms with `st = t`, `ts = s`,
    /// `[Ker s, Ker t] = 0` and `Ker s ⋆ Ker t = 0` for every `⋆`.
    pub fn ok(&self) -> bool {
        let g = &self.g;
        if !g.ok() || !g.hom(g, &self.s) || !g.hom(g, &self.t) {
            return false;
        }
        if (0..g.n).any(|x| self.s[self.t[x]] != self.t[x] || self.t[self.s[x]] != self.s[x]) {
            return false;
        }
        let ks: Vec<usize> = (0..g.n).filter(|&x| self.s[x] == g.zero).collect();
        let kt: Vec<usize> = (0..g.n).filter(|&x| self.t[x] == g.zero).collect();
        for &k in &ks {
            for &l in &kt {
                if g.m(g.m(g.p(k, l), k), l) != g.zero {
                    return false;
                }
                if (0..g.ops.len()).any(|o| g.op(o, k, l) != g.zero) {
                    return false;
                }
            }
        }
        true
    }
}

/// Oracle verdict for a serialized structure of kind gwo, xmod, gpd or cat1.
pub fn file_ok(file: &Value) -> bool {
    let sig = Sig::of(file);
    let body = &file["body"];
    match file["kind"].as_str().unwrap() {
        "gwo" => gwo(body, &sig).ok(),
        "xmod" => xmod(body, &sig).ok(),
        "gpd" => gpd(body, &sig).ok(),
        "cat1" => cat1(body, &sig).ok(),
        k => panic!("no oracle for kind {k}"),
    }
}
