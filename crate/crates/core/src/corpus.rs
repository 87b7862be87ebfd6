//! The fixed verification corpus.

use crate::group::GroupSpec;

/// Every corpus member, in report order.
pub fn corpus() -> Vec<GroupSpec> {
    use GroupSpec::*;
    let mut out: Vec<GroupSpec> = (2..=12).map(Cyclic).collect();
    out.extend([
        Abelian(vec![2, 2]),
        Abelian(vec![2, 4]),
        Abelian(vec![3, 3]),
    ]);
    out.extend((3..=8).map(Dihedral));
    out.extend([Symmetric(3), Symmetric(4), Quaternion8, Heisenberg(3)]);
    out.extend([
        GroupSpec::product(Symmetric(3), Cyclic(2)),
        GroupSpec::product(Quaternion8, Cyclic(3)),
        GroupSpec::product(Dihedral(4), Cyclic(2)),
    ]);
    out.extend(split_corpus());
    out
}

/// The semidirect members: `C7 x| C3`, `C5 x| C4`, `(C3 x C3) x| C2`,
/// `C9 x| C2` and the dicyclic `C3 x| C4`.
pub fn split_corpus() -> Vec<GroupSpec> {
    use GroupSpec::*;
    let sd = |a: GroupSpec, k: GroupSpec, m: Vec<Vec<Vec<i64>>>| GroupSpec::semidirect(a, k, m);
    vec![
        sd(Abelian(vec![7]), Cyclic(3), vec![vec![vec![2]]]),
        sd(Abelian(vec![5]), Cyclic(4), vec![vec![vec![2]]]),
        sd(
            Abelian(vec![3, 3]),
            Cyclic(2),
            vec![vec![vec![2, 0], vec![0, 2]]],
        ),
        sd(Abelian(vec![9]), Cyclic(2), vec![vec![vec![8]]]),
        sd(Abelian(vec![3]), Cyclic(4), vec![vec![vec![2]]]),
    ]
}

/// Members whose normal subgroup and acting group have coprime orders.
pub fn coprime_split_corpus() -> Vec<GroupSpec> {
    split_corpus()
        .into_iter()
        .filter(|s| match s {
            GroupSpec::Semidirect { normal, acting, .. } => {
                crate::arith::gcd(normal.order(), acting.order()) == 1
            }
            _ => false,
        })
        .collect()
}
