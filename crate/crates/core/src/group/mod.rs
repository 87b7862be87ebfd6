//! Finite groups as explicit multiplication tables over dense element
//! indices `0..n`, and subgroups as canonical bitsets of those indices.

mod bits;
mod build;
mod spec;

pub use bits::Bits;
pub use build::{make_group, make_group_seeded, AbelianAction, DEFAULT_SEED, MAX_ORDER};
pub use spec::{ActionMatrix, GroupSpec};

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic,
    Abelian,
    Dihedral,
    Symmetric,
    Quaternion,
    Heisenberg,
    Product,
    Semidirect,
    Quotient,
}

/// A finite group given by its full multiplication table.
#[derive(Debug)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u16>,
    identity: usize,
    inv: Vec<u16>,
    labels: Vec<String>,
    kind: GroupKind,
    name: String,
    /// Semidirect products carry the projection onto the acting factor.
    projection: Option<Vec<usize>>,
    centralizers: OnceLock<Vec<Bits>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            order: self.order,
            mul: self.mul.clone(),
            identity: self.identity,
            inv: self.inv.clone(),
            labels: self.labels.clone(),
            kind: self.kind,
            name: self.name.clone(),
            projection: self.projection.clone(),
            centralizers: OnceLock::new(),
        }
    }
}

/// A subgroup of some parent group, stored as the bitset of its members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupSet {
    bits: Bits,
}

impl SubgroupSet {
    pub(crate) fn from_bits(bits: Bits) -> Self {
        SubgroupSet { bits }
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn order(&self) -> usize {
        self.bits.count()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.bits.contains(g)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.bits.iter().collect()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &SubgroupSet) -> SubgroupSet {
        SubgroupSet {
            bits: self.bits.intersection(&other.bits),
        }
    }

    /// Size of the parent group this set was built against.
    pub fn parent_order(&self) -> usize {
        self.bits.len()
    }
}

impl FiniteGroup {
    /// Builds a group from a raw table and checks every group axiom.
    pub fn from_table(
        mul: Vec<Vec<usize>>,
        labels: Vec<String>,
        kind: GroupKind,
        name: impl Into<String>,
    ) -> Result<Self> {
        let n = mul.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderCap {
                order: n as u64,
                cap: MAX_ORDER as u64,
            });
        }
        if labels.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSpec("table is not square".into()));
        }
        if mul.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidSpec("table entry out of range".into()));
        }
        let flat: Vec<u16> = mul.into_iter().flatten().map(|x| x as u16).collect();
        Self::assemble(n, flat, labels, kind, name.into(), None, DEFAULT_SEED)
    }

    pub(crate) fn assemble(
        order: usize,
        mul: Vec<u16>,
        labels: Vec<String>,
        kind: GroupKind,
        name: String,
        projection: Option<Vec<usize>>,
        seed: u64,
    ) -> Result<Self> {
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x] as usize == x))
            .ok_or_else(|| Error::InvalidSpec("no identity element".into()))?;
        let mut inv = vec![0u16; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| mul[x * order + y] as usize == identity)
                .ok_or_else(|| Error::InvalidSpec(format!("element {x} has no inverse")))?;
            inv[x] = y as u16;
        }
        let g = FiniteGroup {
            order,
            mul,
            identity,
            inv,
            labels,
            kind,
            name,
            projection,
            centralizers: OnceLock::new(),
        };
        g.check_axioms(seed)?;
        Ok(g)
    }

    /// Latin square, identity, inverse and associativity checks. Associativity
    /// is exhaustive up to order 128 and sampled with a seeded RNG above that.
    pub fn check_axioms(&self, seed: u64) -> Result<()> {
        let n = self.order;
        let mut seen = vec![0usize; n];
        for pass in 0..2 {
            for a in 0..n {
                let stamp = pass * n + a + 1;
                for b in 0..n {
                    let v = if pass == 0 {
                        self.mul(a, b)
                    } else {
                        self.mul(b, a)
                    };
                    if seen[v] == stamp {
                        return Err(Error::InvalidSpec("table is not a Latin square".into()));
                    }
                    seen[v] = stamp;
                }
            }
        }
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::InvalidSpec("identity law fails".into()));
            }
            let y = self.inv(x);
            if self.mul(x, y) != self.identity || self.mul(y, x) != self.identity {
                return Err(Error::InvalidSpec("inverse law fails".into()));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= 128 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidSpec(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..100_000 {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if !assoc(a, b, c) {
                    return Err(Error::InvalidSpec(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn projection(&self) -> Option<&[usize]> {
        self.projection.as_deref()
    }

    pub fn element_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    fn check_index(&self, g: usize) -> Result<()> {
        if g >= self.order {
            return Err(Error::IndexOutOfRange {
                index: g,
                order: self.order,
            });
        }
        Ok(())
    }

    /// Centralizer bitsets of every element, computed once.
    pub fn centralizer_bits(&self) -> &[Bits] {
        self.centralizers.get_or_init(|| {
            (0..self.order)
                .map(|g| {
                    Bits::from_indices(self.order, (0..self.order).filter(|&h| self.commute(g, h)))
                })
                .collect()
        })
    }

    pub fn whole(&self) -> SubgroupSet {
        SubgroupSet::from_bits(Bits::full(self.order))
    }

    pub fn trivial(&self) -> SubgroupSet {
        SubgroupSet::from_bits(Bits::from_indices(self.order, [self.identity]))
    }

    pub fn centralizer(&self, g: usize) -> Result<SubgroupSet> {
        self.check_index(g)?;
        Ok(SubgroupSet::from_bits(self.centralizer_bits()[g].clone()))
    }

    /// Elements commuting with every member of `s`.
    pub fn centralizer_of_set(&self, s: &SubgroupSet) -> SubgroupSet {
        let cent = self.centralizer_bits();
        let mut bits = Bits::full(self.order);
        for x in s.bits.iter() {
            bits.intersect_with(&cent[x]);
        }
        SubgroupSet::from_bits(bits)
    }

    pub fn center(&self) -> SubgroupSet {
        self.centralizer_of_set(&self.whole())
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = Vec::new();
            for g in 0..self.order {
                let y = self.conjugate(g, x);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    class.push(y);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Smallest subgroup containing `gens`, by breadth-first closure under
    /// right multiplication by the generators.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Result<SubgroupSet> {
        for &g in gens {
            self.check_index(g)?;
        }
        let mut bits = Bits::from_indices(self.order, [self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if bits.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(SubgroupSet::from_bits(bits))
    }

    /// Closure of a subgroup and one further element that centralizes it:
    /// the product set `H <x>`.
    pub fn extend_abelian(&self, h: &SubgroupSet, x: usize) -> SubgroupSet {
        let mut bits = h.bits.clone();
        let mut power = x;
        let cyclic: Vec<usize> = std::iter::from_fn(|| {
            let cur = power;
            power = self.mul(power, x);
            Some(cur)
        })
        .take(self.element_order(x))
        .collect();
        for a in h.bits.iter() {
            for &c in &cyclic {
                bits.insert(self.mul(a, c));
            }
        }
        SubgroupSet::from_bits(bits)
    }

    pub fn is_subgroup(&self, s: &SubgroupSet) -> bool {
        s.parent_order() == self.order
            && s.contains(self.identity)
            && s.bits.iter().all(|a| {
                s.contains(self.inv(a)) && s.bits.iter().all(|b| s.contains(self.mul(a, b)))
            })
    }

    pub fn is_abelian_subgroup(&self, s: &SubgroupSet) -> bool {
        let cent = self.centralizer_bits();
        s.bits.iter().all(|a| s.bits.is_subset(&cent[a]))
    }

    pub fn is_normal(&self, s: &SubgroupSet) -> bool {
        s.bits
            .iter()
            .all(|x| (0..self.order).all(|g| s.contains(self.conjugate(g, x))))
    }

    /// Derived subgroup, generated by all commutators.
    pub fn derived_subgroup(&self) -> SubgroupSet {
        let mut comms = Bits::new(self.order);
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                comms.insert(c);
            }
        }
        let gens: Vec<usize> = comms.iter().collect();
        self.subgroup_closure(&gens).expect("indices in range")
    }

    /// Coset group `G/N`; the coset of `g` is represented by its smallest
    /// element index.
    pub fn make_quotient(&self, n: &SubgroupSet) -> Result<FiniteGroup> {
        if !self.is_subgroup(n) || !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for x in n.bits.iter() {
                coset_of[self.mul(g, x)] = id;
            }
        }
        let q = reps.len();
        let mut mul = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                mul.push(coset_of[self.mul(a, b)] as u16);
            }
        }
        let labels = reps
            .iter()
            .map(|&r| format!("{}N", self.labels[r]))
            .collect();
        FiniteGroup::assemble(
            q,
            mul,
            labels,
            GroupKind::Quotient,
            format!("{}/N", self.name),
            None,
            DEFAULT_SEED,
        )
    }

    /// Image of a subgroup under the stored projection, as a bitset over
    /// the target's indices.
    pub fn project(&self, s: &SubgroupSet, target_order: usize) -> Option<Bits> {
        let pi = self.projection.as_ref()?;
        Some(Bits::from_indices(
            target_order,
            s.bits.iter().map(|x| pi[x]),
        ))
    }

    /// Table lookup by label pairs, mostly for tests and diagnostics.
    pub fn label_map(&self) -> HashMap<&str, usize> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(spec: GroupSpec) -> FiniteGroup {
        make_group(&spec).unwrap()
    }

    fn s3() -> FiniteGroup {
        group(GroupSpec::Symmetric(3))
    }

    #[test]
    fn cyclic_table() {
        let g = group(GroupSpec::Cyclic(6));
        assert_eq!(g.order(), 6);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(g.mul(i, j), (i + j) % 6);
            }
        }
        assert_eq!(g.conjugacy_classes().len(), 6);
        assert!(g.conjugacy_classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn dihedral_center() {
        let g = group(GroupSpec::Dihedral(4));
        assert_eq!(g.order(), 8);
        assert_eq!(g.center().order(), 2);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(matches!(
            make_group(&GroupSpec::Dihedral(2)),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            make_group(&GroupSpec::Symmetric(8)),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            make_group(&GroupSpec::Heisenberg(4)),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            make_group(&GroupSpec::Cyclic(20001)),
            Err(Error::OrderCap { .. })
        ));
        assert!(matches!(
            make_group(&GroupSpec::product(
                GroupSpec::Cyclic(200),
                GroupSpec::Cyclic(200)
            )),
            Err(Error::OrderCap { .. })
        ));
    }

    #[test]
    fn s3_as_semidirect_has_three_classes() {
        let g = group(GroupSpec::semidirect(
            GroupSpec::Abelian(vec![3]),
            GroupSpec::Cyclic(2),
            vec![vec![vec![2]]],
        ));
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.conjugacy_classes().len(), 3);
    }

    #[test]
    fn bad_actions_rejected() {
        // 3 has order 6 mod 7, not dividing 3
        let spec = GroupSpec::semidirect(
            GroupSpec::Cyclic(7),
            GroupSpec::Cyclic(3),
            vec![vec![vec![3]]],
        );
        assert!(matches!(make_group(&spec), Err(Error::BadAction(_))));
        // not invertible mod 6
        let spec = GroupSpec::semidirect(
            GroupSpec::Cyclic(6),
            GroupSpec::Cyclic(2),
            vec![vec![vec![2]]],
        );
        assert!(matches!(make_group(&spec), Err(Error::BadAction(_))));
        // wrong number of matrices
        let spec = GroupSpec::semidirect(GroupSpec::Cyclic(3), GroupSpec::Cyclic(2), vec![]);
        assert!(matches!(make_group(&spec), Err(Error::BadAction(_))));
        // Z_2 -> Z_4 coordinate map 1 is not well defined
        let spec = GroupSpec::semidirect(
            GroupSpec::Abelian(vec![2, 4]),
            GroupSpec::Cyclic(2),
            vec![vec![vec![1, 0], vec![1, 1]]],
        );
        assert!(matches!(make_group(&spec), Err(Error::BadAction(_))));
        // non-abelian acting group
        let spec = GroupSpec::semidirect(GroupSpec::Cyclic(3), GroupSpec::Symmetric(3), vec![]);
        assert!(matches!(make_group(&spec), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn centralizer_examples() {
        let q8 = group(GroupSpec::Quaternion8);
        let i = q8.element_index("i").unwrap();
        let c = q8.centralizer(i).unwrap();
        let expected: Vec<usize> = ["1", "-1", "i", "-i"]
            .iter()
            .map(|l| q8.element_index(l).unwrap())
            .collect();
        let mut expected = expected;
        expected.sort_unstable();
        assert_eq!(c.elements(), expected);

        let d8 = group(GroupSpec::Dihedral(4));
        let r = d8.element_index("r").unwrap();
        let cr = d8.centralizer(r).unwrap();
        assert_eq!(cr, d8.subgroup_closure(&[r]).unwrap());
        assert_eq!(cr.order(), 4);

        let c5 = group(GroupSpec::Cyclic(5));
        assert_eq!(c5.centralizer(3).unwrap().order(), 5);
        assert_eq!(
            c5.centralizer(9),
            Err(Error::IndexOutOfRange { index: 9, order: 5 })
        );
    }

    #[test]
    fn center_examples() {
        assert_eq!(group(GroupSpec::Cyclic(5)).center().order(), 5);
        assert_eq!(group(GroupSpec::Quaternion8).center().order(), 2);
        assert_eq!(group(GroupSpec::Heisenberg(3)).center().order(), 3);
    }

    #[test]
    fn class_examples() {
        let mut sizes: Vec<usize> = s3().conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(group(GroupSpec::Quaternion8).conjugacy_classes().len(), 5);
    }

    #[test]
    fn closure_examples() {
        let q8 = group(GroupSpec::Quaternion8);
        assert_eq!(q8.subgroup_closure(&[]).unwrap(), q8.trivial());
        let i = q8.element_index("i").unwrap();
        assert_eq!(q8.subgroup_closure(&[i]).unwrap().order(), 4);
        let g = s3();
        let transposition = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let three_cycle = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        assert_eq!(
            g.subgroup_closure(&[transposition, three_cycle]).unwrap(),
            g.whole()
        );
    }

    #[test]
    fn quotient_examples() {
        let q8 = group(GroupSpec::Quaternion8);
        let same = q8.make_quotient(&q8.trivial()).unwrap();
        assert_eq!(same.conjugacy_classes().len(), 5);
        let v4 = q8.make_quotient(&q8.center()).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_abelian());
        assert!((0..4).all(|x| v4.element_order(x) <= 2));

        let g = s3();
        let three_cycle = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let c3 = g.subgroup_closure(&[three_cycle]).unwrap();
        let c2 = g.make_quotient(&c3).unwrap();
        assert_eq!(c2.order(), 2);
        let transposition = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let not_normal = g.subgroup_closure(&[transposition]).unwrap();
        assert_eq!(g.make_quotient(&not_normal).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn abelian_and_normal_predicates() {
        let d8 = group(GroupSpec::Dihedral(4));
        let triv = d8.trivial();
        assert!(d8.is_abelian_subgroup(&triv) && d8.is_normal(&triv));
        let r = d8.element_index("r").unwrap();
        let s = d8.element_index("s").unwrap();
        let rot = d8.subgroup_closure(&[r]).unwrap();
        assert!(d8.is_abelian_subgroup(&rot) && d8.is_normal(&rot));
        let refl = d8.subgroup_closure(&[s]).unwrap();
        assert!(d8.is_abelian_subgroup(&refl) && !d8.is_normal(&refl));
    }

    #[test]
    fn heisenberg_has_exponent_p() {
        let h = group(GroupSpec::Heisenberg(3));
        assert_eq!(h.order(), 27);
        assert!((0..27).all(|x| h.pow(x, 3) == h.identity()));
        assert!(!h.is_abelian());
    }

    #[test]
    fn product_orders_and_centers() {
        let specs = [
            (GroupSpec::Symmetric(3), GroupSpec::Cyclic(2)),
            (GroupSpec::Quaternion8, GroupSpec::Cyclic(3)),
            (GroupSpec::Dihedral(4), GroupSpec::Dihedral(3)),
        ];
        for (a, b) in specs {
            let ga = group(a.clone());
            let gb = group(b.clone());
            let p = group(GroupSpec::product(a, b));
            assert_eq!(p.order(), ga.order() * gb.order());
            assert_eq!(
                p.center().order(),
                ga.center().order() * gb.center().order()
            );
            // center(G x H) = center(G) x center(H) elementwise
            let zb = gb.center().elements();
            let nb = gb.order();
            let expected: Vec<usize> = ga
                .center()
                .elements()
                .iter()
                .flat_map(|&x| zb.iter().map(move |&y| x * nb + y))
                .collect();
            assert_eq!(p.center().elements(), expected);
        }
    }

    #[test]
    fn symmetric_five_class_count() {
        let g = group(GroupSpec::Symmetric(5));
        assert_eq!(g.order(), 120);
        assert_eq!(g.conjugacy_classes().len(), 7);
    }
}
