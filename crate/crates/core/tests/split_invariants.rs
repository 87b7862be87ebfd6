mod common;

use commhier::corpus::{coprime_split_corpus, split_corpus};
use commhier::counting::{hom_count_bruteforce, HomCounter};
use commhier::spectrum::spectrum_from_moebius;
use commhier::split::{LambdaMode, SplitExtension};
use common::*;
use num_bigint::BigInt;

fn extensions() -> Vec<SplitExtension> {
    let mut out: Vec<SplitExtension> = split_corpus()
        .iter()
        .map(|s| SplitExtension::from_spec(s).unwrap())
        .collect();
    out.extend((3..=8).map(|n| SplitExtension::dihedral(n).unwrap()));
    out
}

#[test]
fn all_tuple_count_routes_agree() {
    for ext in extensions() {
        let c = HomCounter::new(ext.group());
        for r in 1..=6 {
            let direct = c.hom_count(r);
            assert_eq!(
                ext.hom_count_split(r, LambdaMode::Enumerate).unwrap(),
                direct
            );
            assert_eq!(
                ext.hom_count_split(r, LambdaMode::TrustCoprime).unwrap(),
                direct
            );
            assert_eq!(ext.hom_count_cyclic(r).unwrap(), direct);
            if r <= 3 {
                assert_eq!(BigInt::from(naive_hom(ext.group(), r)), direct);
                assert_eq!(hom_count_bruteforce(ext.group(), r).unwrap(), direct);
            }
        }
    }
}

#[test]
fn coprime_lifts_collapse() {
    for spec in coprime_split_corpus() {
        let ext = SplitExtension::from_spec(&spec).unwrap();
        for b in ext.k_subgroups() {
            assert_eq!(
                ext.lambda_bruteforce(b).unwrap(),
                ext.lambda_coprime(b).unwrap(),
                "{spec}"
            );
        }
    }
}

#[test]
fn non_coprime_lifts_are_tabulated() {
    // C_n x| C_2 with n even is not coprime; enumeration still gives n/2
    // lifts of the C_2 stratum here, which happens to equal |A : C_B|.
    for (n, want) in [(4u64, 2u64), (6, 3), (8, 4)] {
        let ext = SplitExtension::dihedral(n).unwrap();
        let b = ext.k_subgroups().iter().find(|b| b.order() == 2).unwrap();
        assert_eq!(ext.lambda_bruteforce(b).unwrap(), want, "n={n}");
    }
}

#[test]
fn explicit_spectra_match_moebius() {
    for ext in extensions() {
        let s = ext.spectrum_explicit().unwrap();
        assert!(s.same_terms(&spectrum_from_moebius(ext.group()).unwrap()));
        assert!(ext.spectrum_explicit_cyclic().unwrap().same_terms(&s));
        let terms = ext.explicit_terms(LambdaMode::Enumerate).unwrap();
        assert!(terms.iter().all(|&(m, _)| m >= 2));
    }
}

#[test]
fn leading_coefficient_formula() {
    for ext in extensions() {
        let (m, n_max) = ext.m_and_nmax_formula().unwrap();
        let (nm, nn, _, _) = naive_stats(ext.group());
        assert_eq!((m, n_max), (nm, nn));
    }
}
