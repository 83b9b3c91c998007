//! Dense multiplication tables for small finite groups.
//!
//! Elements are indices `0..n`; a group is its full n × n multiplication
//! table plus the derived identity and inverse data. At the scales this crate
//! targets (|G| ≤ 512 by default) the tables are small enough that every
//! invariant — closure, identity, inverses, associativity — is checked
//! exhaustively at construction time.

use std::collections::BTreeMap;

use crate::{Error, Result};

pub use crate::nt::unit_group;

/// A finite group as a dense multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    /// Row-major products: `mul[x * n + y]` is x·y.
    mul: Vec<usize>,
    id: usize,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl GroupTable {
    /// Build a table from explicit rows, deriving the identity and inverses.
    ///
    /// Fails unless the rows form a genuine group table: square shape, entries
    /// in range, a unique two-sided identity, a unique two-sided inverse for
    /// every element, and full associativity (checked on all n³ triples).
    pub fn from_mul(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidOrder);
        }
        let mut mul = Vec::with_capacity(n * n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {x} has length {} in a table of order {n}",
                    row.len()
                )));
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::MalformedTable(format!(
                        "entry ({x}, {y}) = {v} is out of range for order {n}"
                    )));
                }
                mul.push(v);
            }
        }
        Self::from_flat(n, mul)
    }

    pub(crate) fn from_flat(n: usize, mul: Vec<usize>) -> Result<Self> {
        debug_assert_eq!(mul.len(), n * n);
        let ids: Vec<usize> = (0..n)
            .filter(|&e| (0..n).all(|x| mul[e * n + x] == x && mul[x * n + e] == x))
            .collect();
        let id = match ids.as_slice() {
            [e] => *e,
            [] => return Err(Error::MalformedTable("no two-sided identity".into())),
            _ => return Err(Error::MalformedTable("multiple two-sided identities".into())),
        };
        let mut inv = vec![0usize; n];
        for x in 0..n {
            let invs: Vec<usize> = (0..n)
                .filter(|&y| mul[x * n + y] == id && mul[y * n + x] == id)
                .collect();
            match invs.as_slice() {
                [y] => inv[x] = *y,
                _ => {
                    return Err(Error::MalformedTable(format!(
                        "element {x} has {} two-sided inverses",
                        invs.len()
                    )))
                }
            }
        }
        let g = GroupTable { n, mul, id, inv, labels: None };
        if let Some((x, y, z)) = g.associativity_counterexample() {
            return Err(Error::MalformedTable(format!(
                "associativity fails at ({x}, {y}, {z})"
            )));
        }
        Ok(g)
    }

    /// First triple (x, y, z) with (xy)z ≠ x(yz), if any.
    pub fn associativity_counterexample(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul[x * n + y];
                for z in 0..n {
                    if self.mul[xy * n + z] != self.mul[x * n + self.mul[y * n + z]] {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Number of elements.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Identity element index.
    #[inline]
    pub fn id(&self) -> usize {
        self.id
    }

    /// Product x·y.
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y]
    }

    /// Inverse of x.
    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// x^e for e ≥ 0 by repeated multiplication.
    pub fn pow(&self, x: usize, e: usize) -> usize {
        let mut acc = self.id;
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Multiplicative order of x: the least e ≥ 1 with x^e = 1.
    pub fn order_of(&self, x: usize) -> usize {
        let mut acc = x;
        let mut e = 1;
        while acc != self.id {
            acc = self.mul(acc, x);
            e += 1;
            debug_assert!(e <= self.n, "order search exceeded group order");
        }
        e
    }

    /// Histogram of element orders: order ↦ number of elements of that order.
    pub fn order_spectrum(&self) -> BTreeMap<usize, usize> {
        let mut spectrum = BTreeMap::new();
        for x in 0..self.n {
            *spectrum.entry(self.order_of(x)).or_insert(0) += 1;
        }
        spectrum
    }

    /// Whether all pairs commute.
    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|x| (x..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Discrete logarithm of x to the given base: least e ≥ 0 with base^e = x,
    /// or `None` if x is not a power of base.
    pub fn dlog(&self, base: usize, x: usize) -> Option<usize> {
        let mut acc = self.id;
        for e in 0..self.n {
            if acc == x {
                return Some(e);
            }
            acc = self.mul(acc, base);
        }
        None
    }

    /// Subgroup generated by the given elements, as a sorted member list.
    pub fn generated_by(&self, gens: &[usize]) -> Subset {
        let mut seen = vec![false; self.n];
        seen[self.id] = true;
        let mut frontier = vec![self.id];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        Subset::new((0..self.n).filter(|&x| seen[x]).collect())
    }

    /// Optional element names.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Attach element names; the list length must equal the order.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::MalformedTable(format!(
                "{} labels for a table of order {}",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Printable name of an element: its label if present, else its index.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// Full multiplication table as rows, for serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|x| self.mul[x * self.n..(x + 1) * self.n].to_vec())
            .collect()
    }
}

/// The cyclic group Z_n with elements 0..n under addition mod n.
///
/// Element 1 is the canonical generator when n ≥ 2; Z_1 is the trivial group.
pub fn cyclic_group(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            mul.push((x + y) % n);
        }
    }
    let mut inv = vec![0usize; n];
    for (x, slot) in inv.iter_mut().enumerate() {
        *slot = (n - x) % n;
    }
    Ok(GroupTable { n, mul, id: 0, inv, labels: None })
}

/// Direct product G₁ × G₂ with index (x₁, x₂) ↦ x₁·|G₂| + x₂.
pub fn direct_product(g1: &GroupTable, g2: &GroupTable) -> GroupTable {
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1 * n2;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (x1, x2) = (x / n2, x % n2);
        for y in 0..n {
            let (y1, y2) = (y / n2, y % n2);
            mul.push(g1.mul(x1, y1) * n2 + g2.mul(x2, y2));
        }
    }
    let id = g1.id() * n2 + g2.id();
    let mut inv = vec![0usize; n];
    for (x, slot) in inv.iter_mut().enumerate() {
        *slot = g1.inv(x / n2) * n2 + g2.inv(x % n2);
    }
    GroupTable { n, mul, id, inv, labels: None }
}

/// A subset of a group's elements, stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    members: Vec<usize>,
}

impl Subset {
    /// Normalize an arbitrary member list.
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subset { members }
    }

    /// Sorted members.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// Whether s is a subgroup of g: non-empty, in range, and closed under
/// multiplication. (For a non-empty subset of a finite group, closure already
/// forces the identity and inverses to be present.)
pub fn is_subgroup(g: &GroupTable, s: &Subset) -> bool {
    if s.is_empty() || s.members().iter().any(|&x| x >= g.order()) {
        return false;
    }
    s.members()
        .iter()
        .all(|&x| s.members().iter().all(|&y| s.contains(g.mul(x, y))))
}

/// Re-index a subgroup as a standalone group table.
///
/// Returns the subgroup's own table (elements 0..|S| in the order of the
/// sorted member list) plus the member list mapping positions back to parent
/// elements. Fails if s is not a subgroup of g.
pub fn subgroup_table(g: &GroupTable, s: &Subset) -> Result<(GroupTable, Vec<usize>)> {
    if !is_subgroup(g, s) {
        return Err(Error::MalformedTable("subset is not a subgroup".into()));
    }
    let members = s.members().to_vec();
    let pos: BTreeMap<usize, usize> =
        members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let k = members.len();
    let mut mul = Vec::with_capacity(k * k);
    for &x in &members {
        for &y in &members {
            mul.push(pos[&g.mul(x, y)]);
        }
    }
    let id = pos[&g.id()];
    let inv = members.iter().map(|&x| pos[&g.inv(x)]).collect();
    let labels = g
        .labels()
        .map(|l| members.iter().map(|&x| l[x].clone()).collect());
    Ok((GroupTable { n: k, mul, id, inv, labels }, members))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = cyclic_group(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.rows(), vec![vec![0]]);
        assert_eq!(g.id(), 0);
        assert_eq!(g.order_of(0), 1);
    }

    #[test]
    fn zero_order_rejected() {
        assert!(matches!(cyclic_group(0), Err(Error::InvalidOrder)));
    }

    #[test]
    fn z4_table_values() {
        let g = cyclic_group(4).unwrap();
        assert_eq!(g.mul(3, 2), 1);
        assert_eq!(g.inv(3), 1);
        assert_eq!(g.id(), 0);
        assert_eq!(g.order_of(1), 4);
    }

    #[test]
    fn orders_in_z12() {
        let g = cyclic_group(12).unwrap();
        // Oracle: repeated addition until the identity returns.
        let naive = |x: usize| {
            let mut acc = x;
            let mut e = 1;
            while acc != 0 {
                acc = (acc + x) % 12;
                e += 1;
            }
            e
        };
        for x in 0..12 {
            assert_eq!(g.order_of(x), naive(x), "x={x}");
        }
        assert_eq!(g.order_of(5), 12);
        assert_eq!(g.order_of(8), 3);
        assert_eq!(g.order_of(0), 1);
    }

    #[test]
    fn subgroup_judgments_in_z12() {
        let g = cyclic_group(12).unwrap();
        assert!(is_subgroup(&g, &Subset::new(vec![0, 3, 6, 9])));
        assert!(!is_subgroup(&g, &Subset::new(vec![0, 3, 6])));
        assert!(!is_subgroup(&g, &Subset::new(vec![])));
        assert!(is_subgroup(&g, &Subset::new(vec![0])));
        assert!(!is_subgroup(&g, &Subset::new(vec![0, 12])));
    }

    #[test]
    fn spectrum_of_z4() {
        let g = cyclic_group(4).unwrap();
        let s = g.order_spectrum();
        assert_eq!(s, BTreeMap::from([(1, 1), (2, 1), (4, 2)]));
    }

    #[test]
    fn spectrum_of_klein_four() {
        let z2 = cyclic_group(2).unwrap();
        let v = direct_product(&z2, &z2);
        assert_eq!(v.order_spectrum(), BTreeMap::from([(1, 1), (2, 3)]));
        assert!(v.is_abelian());
    }

    #[test]
    fn lagrange_for_direct_products() {
        let z6 = cyclic_group(6).unwrap();
        let z4 = cyclic_group(4).unwrap();
        let g = direct_product(&z6, &z4);
        for x in 0..g.order() {
            assert_eq!(g.order() % g.order_of(x), 0, "x={x}");
        }
    }

    #[test]
    fn malformed_tables_rejected() {
        // Not closed / wrong shape.
        assert!(GroupTable::from_mul(vec![vec![0, 1], vec![1]]).is_err());
        // Entry out of range.
        assert!(GroupTable::from_mul(vec![vec![0, 1], vec![1, 2]]).is_err());
        // No identity: constant table.
        assert!(GroupTable::from_mul(vec![vec![0, 0], vec![0, 0]]).is_err());
        // Magma with identity but no inverse for element 1.
        let no_inverse = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]];
        assert!(GroupTable::from_mul(no_inverse).is_err());
        // Identity and unique inverses survive this corruption of Z5, so the
        // rejection must come from the associativity sweep: (1·1)·2 ≠ 1·(1·2).
        let mut rows: Vec<Vec<usize>> = (0..5)
            .map(|x| (0..5).map(|y| (x + y) % 5).collect())
            .collect();
        rows[1].swap(1, 3);
        assert!(GroupTable::from_mul(rows).is_err());
    }

    #[test]
    fn from_mul_accepts_real_tables() {
        let z6 = cyclic_group(6).unwrap();
        let rebuilt = GroupTable::from_mul(z6.rows()).unwrap();
        assert_eq!(rebuilt.id(), z6.id());
        assert_eq!(rebuilt.order_spectrum(), z6.order_spectrum());
    }

    #[test]
    fn subgroup_reindexing() {
        let g = cyclic_group(12).unwrap();
        let (h, members) = subgroup_table(&g, &Subset::new(vec![0, 3, 6, 9])).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(members, vec![0, 3, 6, 9]);
        // Position 1 is parent element 3, of order 4.
        assert_eq!(h.order_of(1), 4);
        assert_eq!(h.order_spectrum(), cyclic_group(4).unwrap().order_spectrum());
    }

    #[test]
    fn generated_subgroups() {
        let g = cyclic_group(12).unwrap();
        assert_eq!(g.generated_by(&[4]).members(), &[0, 4, 8]);
        assert_eq!(g.generated_by(&[3, 4]).len(), 12);
        assert_eq!(g.generated_by(&[]).members(), &[0]);
    }

    #[test]
    fn dlog_in_z12() {
        let g = cyclic_group(12).unwrap();
        assert_eq!(g.dlog(1, 7), Some(7));
        assert_eq!(g.dlog(2, 8), Some(4));
        assert_eq!(g.dlog(2, 3), None);
    }
}
