//! Oracles shared by the integration suites. None of these go through the
//! centralizer recursion or the abelian-poset code they are checked against.
#![allow(dead_code)]

use std::collections::BTreeSet;

use commhier::arith::ExactRational;
use commhier::corpus::corpus;
use commhier::group::{make_group, FiniteGroup, GroupSpec, SubgroupSet};
use num_bigint::BigInt;

pub fn build(spec: &GroupSpec) -> FiniteGroup {
    make_group(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

pub fn corpus_groups() -> Vec<(GroupSpec, FiniteGroup)> {
    corpus()
        .into_iter()
        .map(|s| {
            let g = build(&s);
            (s, g)
        })
        .collect()
}

pub fn non_abelian_corpus() -> Vec<(GroupSpec, FiniteGroup)> {
    corpus_groups()
        .into_iter()
        .filter(|(_, g)| !g.is_abelian())
        .collect()
}

/// Pairwise commuting r-tuples by plain depth-first extension.
pub fn naive_hom(g: &FiniteGroup, r: u32) -> u64 {
    fn go(g: &FiniteGroup, chosen: &mut Vec<usize>, left: u32) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for x in 0..g.order() {
            if chosen.iter().all(|&y| g.mul(x, y) == g.mul(y, x)) {
                chosen.push(x);
                total += go(g, chosen, left - 1);
                chosen.pop();
            }
        }
        total
    }
    go(g, &mut Vec::new(), r)
}

pub fn naive_prob(g: &FiniteGroup, r: u32) -> ExactRational {
    ExactRational::new(
        BigInt::from(naive_hom(g, r)),
        BigInt::from(g.order()).pow(r),
    )
}

/// Abelian subgroups, as closures of pairwise commuting sets of at most
/// three generators (enough for every corpus member: abelian rank <= 3).
pub fn naive_abelian_subgroups(g: &FiniteGroup) -> BTreeSet<SubgroupSet> {
    let n = g.order();
    let comm = |a: usize, b: usize| g.mul(a, b) == g.mul(b, a);
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i..n {
            if !comm(i, j) {
                continue;
            }
            for k in j..n {
                if comm(i, k) && comm(j, k) {
                    out.insert(g.subgroup_closure(&[i, j, k]).unwrap());
                }
            }
        }
    }
    out
}

/// (m, N_max, b, #maximal) from the naive subgroup list.
pub fn naive_stats(g: &FiniteGroup) -> (usize, usize, usize, usize) {
    let subs = naive_abelian_subgroups(g);
    let m = subs.iter().map(SubgroupSet::order).max().unwrap();
    let n_max = subs.iter().filter(|s| s.order() == m).count();
    let b = if g.is_abelian() {
        0
    } else {
        subs.iter()
            .map(SubgroupSet::order)
            .filter(|&o| o < m)
            .max()
            .unwrap_or(0)
    };
    let maximal = subs
        .iter()
        .filter(|s| !subs.iter().any(|t| t != *s && s.is_subgroup_of(t)))
        .count();
    (m, n_max, b, maximal)
}

pub fn smallest_prime(n: usize) -> usize {
    (2..=n).find(|p| n.is_multiple_of(*p)).unwrap()
}
