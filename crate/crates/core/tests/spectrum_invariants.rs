mod common;

use commhier::arith::{rank_exact, ExactMatrix, ExactRational};
use commhier::counting::HomCounter;
use commhier::group::GroupSpec;
use commhier::lattice::AbelianPoset;
use commhier::spectrum::{inverse_spectrum, spectrum_from_moebius};
use common::*;
use num_bigint::BigInt;

#[test]
fn spectrum_reproduces_naive_probabilities() {
    for (spec, g) in non_abelian_corpus()
        .into_iter()
        .filter(|(_, g)| g.order() <= 16)
    {
        let s = spectrum_from_moebius(&g).unwrap();
        for r in 2..=4 {
            assert_eq!(s.eval_pr(r), naive_prob(&g, r), "{spec} r={r}");
        }
    }
}

#[test]
fn leading_data() {
    for (spec, g) in non_abelian_corpus() {
        let s = spectrum_from_moebius(&g).unwrap();
        let (m, n_max, _, _) = naive_stats(&g);
        assert_eq!(s.entries()[0].m as usize, g.order() / m, "{spec}");
        assert_eq!(s.entries()[0].c as usize, n_max, "{spec}");
        assert!(s.entries().windows(2).all(|w| w[0].m < w[1].m));
    }
}

#[test]
fn no_shorter_recurrence() {
    for (spec, g) in non_abelian_corpus() {
        let s = spectrum_from_moebius(&g).unwrap();
        let t = s.len();
        let p: Vec<ExactRational> = (2..=2 * t as u32 + 2).map(|r| s.eval_pr(r)).collect();
        // the (t+1)x(t+1) Hankel matrix is singular, the t x t one is not
        assert_eq!(
            rank_exact(&ExactMatrix::hankel(&p[..2 * t + 1], t + 1).unwrap()),
            t,
            "{spec}"
        );
        assert_eq!(
            rank_exact(&ExactMatrix::hankel(&p[..2 * t - 1], t).unwrap()),
            t,
            "{spec}"
        );
    }
}

#[test]
fn inverse_needs_only_2t_values() {
    for (spec, g) in non_abelian_corpus() {
        let s = spectrum_from_moebius(&g).unwrap();
        let c = HomCounter::new(&g);
        let t = s.len() as u32;
        let values: Vec<ExactRational> = (2..=2 * t + 1).map(|r| c.probability(r)).collect();
        assert!(inverse_spectrum(&values).unwrap().same_terms(&s), "{spec}");
    }
}

#[test]
fn isoclinic_inflation_by_c2() {
    for spec in [
        GroupSpec::Symmetric(3),
        GroupSpec::Quaternion8,
        GroupSpec::Dihedral(5),
        GroupSpec::Heisenberg(3),
    ] {
        let g = build(&spec);
        let h = build(&GroupSpec::product(spec.clone(), GroupSpec::Cyclic(2)));
        let (cg, ch) = (HomCounter::new(&g), HomCounter::new(&h));
        for r in 1..=8 {
            assert_eq!(cg.probability(r), ch.probability(r), "{spec} r={r}");
        }
        for r in 0..=5 {
            assert_eq!(
                ch.kappa(r).unwrap(),
                BigInt::from(2).pow(r) * cg.kappa(r).unwrap()
            );
        }
        let (sg, sh) = (
            AbelianPoset::build(&g).unwrap().stats(),
            AbelianPoset::build(&h).unwrap().stats(),
        );
        assert_eq!(sh.m, 2 * sg.m);
        assert_eq!(sh.n_max, sg.n_max);
        assert!(spectrum_from_moebius(&g)
            .unwrap()
            .same_terms(&spectrum_from_moebius(&h).unwrap()));
    }
}

#[test]
fn isoclinic_pair_d8_q8() {
    let d8 = spectrum_from_moebius(&build(&GroupSpec::Dihedral(4))).unwrap();
    let q8 = spectrum_from_moebius(&build(&GroupSpec::Quaternion8)).unwrap();
    assert_eq!(d8.as_pairs(), vec![(2, 3), (4, -2)]);
    assert!(d8.same_terms(&q8));
    let (g1, g2) = (
        build(&GroupSpec::Dihedral(4)),
        build(&GroupSpec::Quaternion8),
    );
    let (c1, c2) = (HomCounter::new(&g1), HomCounter::new(&g2));
    for r in 0..=16 {
        assert_eq!(c1.probability(r), c2.probability(r));
    }
}
