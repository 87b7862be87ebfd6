//! The poset of abelian subgroups of a finite group, the invariants read off
//! it (`m`, `N_max`, `b`, `M`), and interval Moebius values on the poset
//! with the whole group adjoined as top element.

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::group::{Bits, FiniteGroup, SubgroupSet};

/// Default order cap for abelian-subgroup enumeration.
pub const LATTICE_CAP: usize = 512;

/// Top element of a Moebius interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PosetTop {
    /// The whole group, adjoined when it is not itself abelian.
    Group,
    Member(usize),
}

#[derive(Debug)]
pub struct AbelianPoset {
    group_order: usize,
    subgroups: Vec<SubgroupSet>,
    index: HashMap<Bits, usize>,
    /// Strict supersets of each member, by member index.
    above: Vec<Vec<usize>>,
    /// Index of the whole group when it is abelian.
    whole: Option<usize>,
    moebius: Mutex<HashMap<PosetTop, Vec<Option<i64>>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianStats {
    /// Largest order of an abelian subgroup.
    pub m: usize,
    /// Number of abelian subgroups of order `m`.
    pub n_max: usize,
    /// Second-largest distinct abelian order; 0 for abelian groups.
    pub b: usize,
    /// Number of inclusion-maximal abelian subgroups.
    pub maximal_count: usize,
    pub max_order_witnesses: Vec<SubgroupSet>,
    pub maximal_witnesses: Vec<SubgroupSet>,
}

impl AbelianPoset {
    pub fn build(g: &FiniteGroup) -> Result<Self> {
        Self::build_with_cap(g, LATTICE_CAP)
    }

    /// Seeds with every cyclic subgroup and extends each abelian `H` by
    /// elements of `C_G(H) \ H` until no new subgroup appears.
    pub fn build_with_cap(g: &FiniteGroup, cap: usize) -> Result<Self> {
        if g.order() > cap {
            return Err(Error::OrderCap {
                order: g.order() as u64,
                cap: cap as u64,
            });
        }
        let mut found: HashSet<Bits> = HashSet::new();
        let mut queue: Vec<SubgroupSet> = Vec::new();
        for x in 0..g.order() {
            let cyc = g.subgroup_closure(&[x])?;
            if found.insert(cyc.bits().clone()) {
                queue.push(cyc);
            }
        }
        let mut all = Vec::new();
        while let Some(h) = queue.pop() {
            let cent = g.centralizer_of_set(&h);
            for x in cent.bits().iter() {
                if h.contains(x) {
                    continue;
                }
                let ext = g.extend_abelian(&h, x);
                if found.insert(ext.bits().clone()) {
                    queue.push(ext);
                }
            }
            all.push(h);
        }
        Ok(Self::from_subgroups(g.order(), all))
    }

    fn from_subgroups(group_order: usize, mut subgroups: Vec<SubgroupSet>) -> Self {
        subgroups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.bits().clone(), i))
            .collect();
        let above = (0..subgroups.len())
            .map(|i| {
                (i + 1..subgroups.len())
                    .filter(|&j| {
                        subgroups[j].order() > subgroups[i].order()
                            && subgroups[i].is_subgroup_of(&subgroups[j])
                    })
                    .collect()
            })
            .collect();
        let whole = subgroups.iter().position(|s| s.order() == group_order);
        AbelianPoset {
            group_order,
            subgroups,
            index,
            above,
            whole,
            moebius: Mutex::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Members sorted by ascending order.
    pub fn subgroups(&self) -> &[SubgroupSet] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &SubgroupSet {
        &self.subgroups[i]
    }

    pub fn index_of(&self, s: &SubgroupSet) -> Option<usize> {
        self.index.get(s.bits()).copied()
    }

    pub fn group_is_abelian(&self) -> bool {
        self.whole.is_some()
    }

    /// Containment test `members[i] <= members[j]`.
    pub fn is_below(&self, i: usize, j: usize) -> bool {
        i == j || self.above[i].contains(&j)
    }

    pub fn strict_supersets(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    fn normalize(&self, top: PosetTop) -> PosetTop {
        match (top, self.whole) {
            (PosetTop::Group, Some(w)) => PosetTop::Member(w),
            _ => top,
        }
    }

    fn below_top(&self, i: usize, top: PosetTop) -> bool {
        match top {
            PosetTop::Group => true,
            PosetTop::Member(t) => self.is_below(i, t),
        }
    }

    /// `mu(member, top)` for every member at or below `top`, memoized per top.
    pub fn moebius_column(&self, top: PosetTop) -> Vec<Option<i64>> {
        let top = self.normalize(top);
        if let Some(col) = self
            .moebius
            .lock()
            .expect("moebius memo poisoned")
            .get(&top)
        {
            return col.clone();
        }
        let n = self.subgroups.len();
        let mut col: Vec<Option<i64>> = vec![None; n];
        // supersets have larger indices, so a descending sweep is top-down
        for i in (0..n).rev() {
            if !self.below_top(i, top) {
                continue;
            }
            if top == PosetTop::Member(i) {
                col[i] = Some(1);
                continue;
            }
            let mut sum = if top == PosetTop::Group { 1 } else { 0 };
            for &j in &self.above[i] {
                if let Some(v) = col[j] {
                    sum += v;
                }
            }
            col[i] = Some(-sum);
        }
        self.moebius
            .lock()
            .expect("moebius memo poisoned")
            .entry(top)
            .or_insert(col)
            .clone()
    }

    pub fn moebius(&self, member: usize, top: PosetTop) -> Result<i64> {
        if member >= self.subgroups.len() {
            return Err(Error::NotComparable);
        }
        self.moebius_column(top)[member].ok_or(Error::NotComparable)
    }

    pub fn stats(&self) -> AbelianStats {
        let m = self.subgroups.last().map_or(1, SubgroupSet::order);
        let max_order_witnesses: Vec<SubgroupSet> = self
            .subgroups
            .iter()
            .filter(|s| s.order() == m)
            .cloned()
            .collect();
        let b = if self.whole.is_some() {
            0
        } else {
            self.subgroups
                .iter()
                .map(SubgroupSet::order)
                .filter(|&o| o < m)
                .max()
                .unwrap_or(0)
        };
        let maximal_witnesses: Vec<SubgroupSet> = (0..self.subgroups.len())
            .filter(|&i| self.above[i].is_empty())
            .map(|i| self.subgroups[i].clone())
            .collect();
        AbelianStats {
            m,
            n_max: max_order_witnesses.len(),
            b,
            maximal_count: maximal_witnesses.len(),
            max_order_witnesses,
            maximal_witnesses,
        }
    }
}

pub fn enumerate_abelian_subgroups(g: &FiniteGroup) -> Result<AbelianPoset> {
    AbelianPoset::build(g)
}

pub fn abelian_stats(g: &FiniteGroup) -> Result<AbelianStats> {
    Ok(AbelianPoset::build(g)?.stats())
}

pub fn poset_moebius(poset: &AbelianPoset, member: usize, top: PosetTop) -> Result<i64> {
    poset.moebius(member, top)
}
