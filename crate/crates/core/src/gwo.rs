//! Finite groups with operations given by explicit tables.

use crate::error::{check_index, Error, Result};
use crate::report::{first_failure, ValidationReport, Violation};
use crate::signature::OpSignature;
use crate::table::Table;

/// A finite group `(G, +, −, 0)` carrying one table per extra binary
/// operation of its signature and one table per extra unary operation.
///
/// Construction only checks the tables' shapes and index ranges. Whether the
/// identities of the category hold is decided by [`GroupWithOps::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupWithOps {
    signature: OpSignature,
    zero: usize,
    add: Table,
    neg: Vec<usize>,
    binary: Vec<Table>,
    unary: Vec<Vec<usize>>,
}

impl GroupWithOps {
    pub fn from_tables(
        signature: OpSignature,
        zero: usize,
        add: Table,
        neg: Vec<usize>,
        binary: Vec<Table>,
        unary: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = add.rows();
        if n == 0 {
            return Err(Error::Malformed("carrier must be nonempty".into()));
        }
        if add.cols() != n {
            return Err(Error::Malformed("addition table is not square".into()));
        }
        check_index(zero, n)?;
        if let Some(m) = add.max_entry() {
            check_index(m, n)?;
        }
        if neg.len() != n {
            return Err(Error::Malformed(format!(
                "negation table has {} entries, expected {n}",
                neg.len()
            )));
        }
        for &x in &neg {
            check_index(x, n)?;
        }
        if binary.len() != signature.binary_count() {
            return Err(Error::SignatureMismatch(format!(
                "{} binary tables for {} binary symbols",
                binary.len(),
                signature.binary_count()
            )));
        }
        for (k, t) in binary.iter().enumerate() {
            if t.rows() != n || t.cols() != n {
                return Err(Error::Malformed(format!(
                    "table of {} is not {n}x{n}",
                    signature.binary()[k]
                )));
            }
            if let Some(m) = t.max_entry() {
                check_index(m, n)?;
            }
        }
        if unary.len() != signature.unary_count() {
            return Err(Error::SignatureMismatch(format!(
                "{} unary tables for {} unary symbols",
                unary.len(),
                signature.unary_count()
            )));
        }
        for (k, t) in unary.iter().enumerate() {
            if t.len() != n {
                return Err(Error::Malformed(format!(
                    "table of {} has {} entries, expected {n}",
                    signature.unary()[k],
                    t.len()
                )));
            }
            for &x in t {
                check_index(x, n)?;
            }
        }
        Ok(GroupWithOps {
            signature,
            zero,
            add,
            neg,
            binary,
            unary,
        })
    }

    /// Builds a structure from closures. Negation is read off the addition
    /// table when `neg` is `None` (falling back to `zero` when no inverse exists,
    /// which validation then reports).
    pub fn from_fns(
        signature: OpSignature,
        order: usize,
        zero: usize,
        add: impl Fn(usize, usize) -> usize,
        binary: impl Fn(usize, usize, usize) -> usize,
        unary: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let add = Table::from_fn(order, order, add);
        let neg = (0..order)
            .map(|a| (0..order).find(|&b| add.get(a, b) == zero).unwrap_or(zero))
            .collect();
        let binary = (0..signature.binary_count())
            .map(|k| Table::from_fn(order, order, |a, b| binary(k, a, b)))
            .collect();
        let unary = (0..signature.unary_count())
            .map(|k| (0..order).map(|a| unary(k, a)).collect())
            .collect();
        Self::from_tables(signature, zero, add, neg, binary, unary)
    }

    /// The one-element structure of the given signature.
    pub fn trivial(signature: OpSignature) -> Self {
        Self::from_fns(signature, 1, 0, |_, _| 0, |_, _, _| 0, |_, _| 0).expect("trivial structure")
    }

    pub fn signature(&self) -> &OpSignature {
        &self.signature
    }

    pub fn order(&self) -> usize {
        self.add.rows()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// `a − b`, i.e. `a + (−b)`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `g + a − g`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.sub(self.add(g, a), g)
    }

    /// `a ⋆ b` for the `k`-th extra binary operation.
    #[inline]
    pub fn op(&self, k: usize, a: usize, b: usize) -> usize {
        self.binary[k].get(a, b)
    }

    /// `ω(a)` for the `k`-th extra unary operation.
    #[inline]
    pub fn unary_op(&self, k: usize, a: usize) -> usize {
        self.unary[k][a]
    }

    pub fn add_table(&self) -> &Table {
        &self.add
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    pub fn binary_table(&self, k: usize) -> &Table {
        &self.binary[k]
    }

    pub fn unary_table(&self, k: usize) -> &[usize] {
        &self.unary[k]
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.add(a, b) == self.add(b, a)))
    }

    /// Abelian with every extra binary operation identically zero.
    pub fn is_singular(&self) -> bool {
        self.is_abelian()
            && (0..self.signature.binary_count()).all(|k| {
                self.elements()
                    .all(|a| self.elements().all(|b| self.op(k, a, b) == self.zero))
            })
    }

    pub fn additive_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.zero && k <= self.order() {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// Exhaustively checks the group laws and the identities required of every
    /// object of the category, reporting one minimal witness per violated law.
    pub fn validate(&self) -> ValidationReport {
        let n = self.order();
        let z = self.zero;
        let mut report = ValidationReport::new();
        report.push_opt(first_failure(n, 1, |t| self.add(z, t[0]) == t[0] && self.add(t[0], z) == t[0]).map(
            |w| Violation::new("identity", w, "0 is not a two-sided additive identity"),
        ));
        report.push_opt(
            first_failure(n, 1, |t| {
                self.add(t[0], self.neg(t[0])) == z && self.add(self.neg(t[0]), t[0]) == z
            })
            .map(|w| Violation::new("inverse", w, "negation table does not give additive inverses")),
        );
        report.push_opt(
            first_failure(n, 3, |t| {
                self.add(self.add(t[0], t[1]), t[2]) == self.add(t[0], self.add(t[1], t[2]))
            })
            .map(|w| Violation::new("associativity", w, "(a+b)+c != a+(b+c)")),
        );
        let sig = &self.signature;
        for k in 0..sig.binary_count() {
            let sym = &sig.binary()[k];
            let opp = sig.opposite(k);
            report.push_opt(first_failure(n, 2, |t| self.op(opp, t[0], t[1]) == self.op(k, t[1], t[0])).map(
                |w| {
                    Violation::new(
                        format!("opposite[{sym}]"),
                        w,
                        format!("a {} b != b {sym} a", sig.binary()[opp]),
                    )
                },
            ));
            report.push_opt(
                first_failure(n, 3, |t| {
                    self.op(k, t[0], self.add(t[1], t[2])) == self.add(self.op(k, t[0], t[1]), self.op(k, t[0], t[2]))
                })
                .map(|w| {
                    Violation::new(
                        format!("distributivity[{sym}]"),
                        w,
                        format!("a {sym} (b+c) != a {sym} b + a {sym} c"),
                    )
                }),
            );
        }
        for u in 0..sig.unary_count() {
            let usym = &sig.unary()[u];
            report.push_opt(
                first_failure(n, 2, |t| {
                    self.unary_op(u, self.add(t[0], t[1])) == self.add(self.unary_op(u, t[0]), self.unary_op(u, t[1]))
                })
                .map(|w| Violation::new(format!("unary-additive[{usym}]"), w, format!("{usym}(a+b) != {usym}(a)+{usym}(b)"))),
            );
            for k in 0..sig.binary_count() {
                let sym = &sig.binary()[k];
                report.push_opt(
                    first_failure(n, 2, |t| {
                        self.op(k, self.unary_op(u, t[0]), t[1]) == self.unary_op(u, self.op(k, t[0], t[1]))
                    })
                    .map(|w| {
                        Violation::new(
                            format!("unary-compatibility[{usym},{sym}]"),
                            w,
                            format!("{usym}(a) {sym} b != {usym}(a {sym} b)"),
                        )
                    }),
                );
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub(crate) fn same_signature(&self, other: &Self) -> Result<()> {
        if self.signature == other.signature {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!(
                "{:?} vs {:?}",
                self.signature.binary(),
                other.signature.binary()
            )))
        }
    }

    /// Index of the pair `(a, b)` in a product carrier `A × B`.
    #[inline]
    pub fn pair_index(a: usize, b: usize, b_order: usize) -> usize {
        a * b_order + b
    }

    /// Inverse of [`GroupWithOps::pair_index`].
    #[inline]
    pub fn split_index(e: usize, b_order: usize) -> (usize, usize) {
        (e / b_order, e % b_order)
    }

    /// Componentwise product `A × B`, elements encoded by [`GroupWithOps::pair_index`].
    pub fn direct_product(a: &Self, b: &Self) -> Result<Self> {
        a.same_signature(b)?;
        let nb = b.order();
        let n = a.order() * nb;
        let split = |e| Self::split_index(e, nb);
        let pair = |x, y| Self::pair_index(x, y, nb);
        Self::from_fns(
            a.signature.clone(),
            n,
            pair(a.zero, b.zero),
            |e, f| {
                let ((x, y), (u, v)) = (split(e), split(f));
                pair(a.add(x, u), b.add(y, v))
            },
            |k, e, f| {
                let ((x, y), (u, v)) = (split(e), split(f));
                pair(a.op(k, x, u), b.op(k, y, v))
            },
            |k, e| {
                let (x, y) = split(e);
                pair(a.unary_op(k, x), b.unary_op(k, y))
            },
        )
    }

    /// Copy of this structure with one table cell replaced, used for
    /// mutation testing of the validators.
    pub fn with_cell(&self, cell: TableCell, value: usize) -> Result<Self> {
        check_index(value, self.order())?;
        let mut out = self.clone();
        match cell {
            TableCell::Zero => out.zero = value,
            TableCell::Add(a, b) => out.add.set(a, b, value),
            TableCell::Neg(a) => out.neg[a] = value,
            TableCell::Binary(k, a, b) => out.binary[k].set(a, b, value),
            TableCell::Unary(k, a) => out.unary[k][a] = value,
        }
        Ok(out)
    }

    /// Every addressable cell of every table, in a fixed order.
    pub fn cells(&self) -> Vec<TableCell> {
        let n = self.order();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                out.push(TableCell::Add(a, b));
            }
        }
        out.extend((0..n).map(TableCell::Neg));
        for k in 0..self.signature.binary_count() {
            for a in 0..n {
                for b in 0..n {
                    out.push(TableCell::Binary(k, a, b));
                }
            }
        }
        for k in 0..self.signature.unary_count() {
            out.extend((0..n).map(|a| TableCell::Unary(k, a)));
        }
        out
    }

    pub fn cell_value(&self, cell: TableCell) -> usize {
        match cell {
            TableCell::Zero => self.zero,
            TableCell::Add(a, b) => self.add(a, b),
            TableCell::Neg(a) => self.neg(a),
            TableCell::Binary(k, a, b) => self.op(k, a, b),
            TableCell::Unary(k, a) => self.unary_op(k, a),
        }
    }
}

/// Address of one entry of a structure's tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableCell {
    Zero,
    Add(usize, usize),
    Neg(usize),
    Binary(usize, usize, usize),
    Unary(usize, usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn_ring(n: usize) -> GroupWithOps {
        GroupWithOps::from_fns(OpSignature::rings(), n, 0, |a, b| (a + b) % n, |_, a, b| a * b % n, |_, a| a).unwrap()
    }

    #[test]
    fn z4_ring_is_valid() {
        assert!(zn_ring(4).validate().is_valid());
    }

    #[test]
    fn trivial_structure_is_valid() {
        let t = GroupWithOps::trivial(OpSignature::rings());
        assert_eq!(t.order(), 1);
        assert!(t.validate().is_valid());
    }

    #[test]
    fn corrupted_addition_is_reported() {
        let bad = zn_ring(4).with_cell(TableCell::Add(1, 1), 3).unwrap();
        let report = bad.validate();
        assert!(report.mentions("associativity") || report.mentions("identity"));
        // (0,1,1): (0+1)+1 = 3 but 0+(1+1) = 0+3 = 3; (1,1,1): 3+1 = 0 vs 1+3 = 0;
        // first failing triple in lexicographic order is computed by the sweep.
        let assoc = report.violations.iter().find(|v| v.axiom == "associativity").unwrap();
        let w = &assoc.witness;
        assert_ne!(bad.add(bad.add(w[0], w[1]), w[2]), bad.add(w[0], bad.add(w[1], w[2])));
    }

    #[test]
    fn structural_errors_are_not_axiom_failures() {
        let add = Table::from_fn(2, 2, |a, b| (a + b) % 2);
        let err = GroupWithOps::from_tables(OpSignature::groups(), 0, add.clone(), vec![0], vec![], vec![]);
        assert!(matches!(err, Err(Error::Malformed(_))));
        let err = GroupWithOps::from_tables(OpSignature::groups(), 2, add.clone(), vec![0, 1], vec![], vec![]);
        assert!(matches!(err, Err(Error::OutOfRange { .. })));
        let err = GroupWithOps::from_tables(OpSignature::rings(), 0, add, vec![0, 1], vec![], vec![]);
        assert!(matches!(err, Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn product_orders_multiply() {
        let p = GroupWithOps::direct_product(&zn_ring(2), &zn_ring(3)).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.validate().is_valid());
    }

    #[test]
    fn nonsymmetric_opposite_pair_is_checked() {
        // Z2 with a ⋆ b = a*b and ⋆° deliberately wrong.
        let sig = OpSignature::new(&[("<", ">")], &[] as &[&str]).unwrap();
        let g = GroupWithOps::from_fns(sig, 2, 0, |a, b| (a + b) % 2, |k, a, b| if k == 0 { a * b } else { 0 }, |_, a| a).unwrap();
        let r = g.validate();
        assert!(r.mentions("opposite[<]"));
    }
}
