//! The finite Dirichlet spectrum `P_r(G) = sum_m c_m m^{-r}` of a non-abelian
//! group, its generating series, the minimal recurrence it induces, exact
//! recovery of the spectrum from finitely many `P_r`, and the entropy data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    primitive_integer_poly, rank_exact, rat, rat_pow, rational_roots, solve_linear_exact,
    ExactMatrix, ExactRational,
};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::{AbelianPoset, AbelianStats, PosetTop};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpectrumEntry {
    /// Support point: an index `|G:A|` of an abelian subgroup.
    pub m: u64,
    pub c: i64,
}

/// Nonzero Dirichlet coefficients sorted by strictly increasing `m >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    entries: Vec<SpectrumEntry>,
    group_order: Option<u64>,
}

impl Spectrum {
    /// Merges repeated support points, drops zero coefficients, and sorts.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (u64, i64)>,
        group_order: Option<u64>,
    ) -> Result<Self> {
        let mut merged: BTreeMap<u64, i64> = BTreeMap::new();
        for (m, c) in terms {
            if m < 2 {
                return Err(Error::InternalInconsistency(format!(
                    "support point {m} < 2"
                )));
            }
            *merged.entry(m).or_default() += c;
        }
        let entries = merged
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(m, c)| SpectrumEntry { m, c })
            .collect();
        Ok(Spectrum {
            entries,
            group_order,
        })
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn support(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.m).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn group_order(&self) -> Option<u64> {
        self.group_order
    }

    pub fn coefficient(&self, m: u64) -> i64 {
        self.entries.iter().find(|e| e.m == m).map_or(0, |e| e.c)
    }

    pub fn as_pairs(&self) -> Vec<(u64, i64)> {
        self.entries.iter().map(|e| (e.m, e.c)).collect()
    }

    /// Same support and coefficients, ignoring the recorded group order.
    pub fn same_terms(&self, other: &Spectrum) -> bool {
        self.entries == other.entries
    }

    /// `P_r = sum_m c_m / m^r`.
    pub fn eval_pr(&self, r: u32) -> ExactRational {
        self.entries
            .iter()
            .map(|e| BigRational::new(BigInt::from(e.c), BigInt::from(e.m).pow(r)))
            .fold(ExactRational::zero(), |a, b| a + b)
    }

    /// `sum_m c_m / (m (m - z))`, the generating series `sum_{r>=2} P_r z^{r-2}`.
    pub fn eval_series(&self, z: &ExactRational) -> Result<ExactRational> {
        let mut total = ExactRational::zero();
        for e in &self.entries {
            let m = rat(e.m as i64);
            let gap = &m - z;
            if gap.is_zero() {
                return Err(Error::PoleHit(z.to_string()));
            }
            total += rat(e.c) / (m * gap);
        }
        Ok(total)
    }

    pub fn special_values(&self) -> SpecialValues {
        let mut sigma = ExactRational::zero();
        let mut alt = ExactRational::zero();
        let mut dirichlet = BigInt::zero();
        for e in &self.entries {
            let (m, c) = (e.m as i64, e.c);
            sigma += rat(c) / rat(m * (m - 1));
            alt += rat(c) / rat(m * (m + 1));
            dirichlet += BigInt::from(c) * BigInt::from(m);
        }
        SpecialValues {
            sigma,
            alt,
            dirichlet_value: dirichlet,
        }
    }

    /// Smallest support point and its pole coefficient `c / m`, checked
    /// against `m_* = |G|/m(G)` and `c_{m_*} = N_max(G)`.
    pub fn first_pole(&self, stats: &AbelianStats) -> Result<(u64, ExactRational)> {
        let first = self
            .entries
            .first()
            .ok_or_else(|| Error::SpectrumStatsMismatch("empty spectrum".into()))?;
        if let Some(order) = self.group_order {
            if first.m * stats.m as u64 != order {
                return Err(Error::SpectrumStatsMismatch(format!(
                    "first support point {} but |G|/m(G) = {order}/{}",
                    first.m, stats.m
                )));
            }
        }
        if first.c != stats.n_max as i64 {
            return Err(Error::SpectrumStatsMismatch(format!(
                "leading coefficient {} but N_max = {}",
                first.c, stats.n_max
            )));
        }
        Ok((first.m, BigRational::new(first.c.into(), first.m.into())))
    }

    /// Elementary symmetric functions `sigma_1..sigma_t` of the reciprocal
    /// support points.
    pub fn recurrence(&self) -> Vec<ExactRational> {
        // coefficients of prod (1 + x / m_j), built incrementally
        let mut e = vec![ExactRational::one()];
        for entry in &self.entries {
            let lambda = BigRational::new(BigInt::one(), BigInt::from(entry.m));
            let mut next = e.clone();
            next.push(ExactRational::zero());
            for k in 1..next.len() {
                next[k] += &e[k - 1] * &lambda;
            }
            e = next;
        }
        e.remove(0);
        e
    }
}

/// Evaluates the signed recurrence
/// `P_{r+t} = sigma_1 P_{r+t-1} - sigma_2 P_{r+t-2} + ... + (-1)^{t-1} sigma_t P_r`
/// from the preceding `t` values (oldest first).
pub fn apply_recurrence(sigma: &[ExactRational], window: &[ExactRational]) -> ExactRational {
    let t = sigma.len();
    let mut acc = ExactRational::zero();
    for (j, s) in sigma.iter().enumerate() {
        let term = s * &window[t - 1 - j];
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialValues {
    /// `sum_{r>=2} P_r`.
    pub sigma: ExactRational,
    /// `sum_{r>=2} (-1)^r P_r`.
    pub alt: ExactRational,
    /// `sum_m c_m m`.
    pub dirichlet_value: BigInt,
}

/// `c_m = -sum over abelian A with |G:A| = m of mu(A, G)` on the abelian
/// poset with `G` adjoined.
pub fn spectrum_from_moebius(g: &FiniteGroup) -> Result<Spectrum> {
    let poset = AbelianPoset::build(g)?;
    spectrum_from_poset(g.order(), &poset)
}

pub fn spectrum_from_poset(order: usize, poset: &AbelianPoset) -> Result<Spectrum> {
    if poset.group_is_abelian() {
        return Err(Error::AbelianGroup);
    }
    let mu = poset.moebius_column(PosetTop::Group);
    let terms = poset.subgroups().iter().zip(mu).map(|(a, mu)| {
        let index = (order / a.order()) as u64;
        (
            index,
            -mu.expect("every member lies below the adjoined top"),
        )
    });
    Spectrum::from_terms(terms, Some(order as u64))
}

pub fn eval_pr(spec: &Spectrum, r: u32) -> ExactRational {
    spec.eval_pr(r)
}

pub fn eval_series(spec: &Spectrum, z: &ExactRational) -> Result<ExactRational> {
    spec.eval_series(z)
}

pub fn recurrence_from_spectrum(spec: &Spectrum) -> Vec<ExactRational> {
    spec.recurrence()
}

/// Rank of the `k x k` Hankel matrix `(v_{i+j})` with `k = ceil(len / 2)`.
pub fn hankel_rank_of_sequence(values: &[ExactRational]) -> usize {
    let k = values.len().div_ceil(2);
    let h = ExactMatrix::hankel(values, k).expect("window fits the data");
    rank_exact(&h)
}

/// Recovers `{(m_j, c_j)}` from `P_2, P_3, ...` (at least `2t` values for a
/// spectrum of size `t`).
///
/// For increasing `k`, solves `H_k beta = (v_k..v_{2k-1})` exactly and keeps
/// the first `k` whose recurrence reproduces every supplied value. Its
/// characteristic polynomial must split into distinct roots `1/m`, `m >= 2`,
/// and the Vandermonde solve must give nonzero integer coefficients. When
/// surplus values confirmed the recurrence, a failed structural check means
/// the sequence is not spectral; without surplus it means more data is
/// needed.
pub fn inverse_spectrum(values: &[ExactRational]) -> Result<Spectrum> {
    let len = values.len();
    if values.iter().all(Zero::is_zero) && len > 0 {
        return Err(Error::NonSpectralSequence("all values vanish".into()));
    }
    if len < 2 {
        return Err(Error::NotEnoughData(format!("{len} value(s) supplied")));
    }
    for k in 1..=len / 2 {
        let h = ExactMatrix::hankel(values, k)?;
        let rhs = &values[k..2 * k];
        let beta = match solve_linear_exact(&h, rhs) {
            Ok(b) => b,
            Err(Error::SingularMatrix) => continue,
            Err(e) => return Err(e),
        };
        let reproduces = (k..len).all(|i| {
            let predicted = beta
                .iter()
                .zip(&values[i - k..i])
                .map(|(b, v)| b * v)
                .fold(ExactRational::zero(), |a, b| a + b);
            predicted == values[i]
        });
        if !reproduces {
            continue;
        }
        let confirmed = len > 2 * k;
        let fail = |msg: String| {
            if confirmed {
                Error::NonSpectralSequence(msg)
            } else {
                Error::NotEnoughData(format!("order-{k} fit is not spectral ({msg})"))
            }
        };
        let mut char_poly: Vec<ExactRational> = beta.iter().map(|b| -b).collect();
        char_poly.push(ExactRational::one());
        let roots = rational_roots(&primitive_integer_poly(&char_poly));
        if roots.len() != k {
            return Err(fail(format!(
                "characteristic polynomial of degree {k} has {} rational roots",
                roots.len()
            )));
        }
        let mut support = Vec::with_capacity(k);
        for root in &roots {
            if !root.is_positive() || !root.numer().is_one() || root.denom() < &BigInt::from(2) {
                return Err(fail(format!("root {root} is not 1/m with m >= 2")));
            }
            support.push(
                root.denom()
                    .to_u64()
                    .ok_or_else(|| fail(format!("root {root} too small")))?,
            );
        }
        support.sort_unstable();
        if support.windows(2).any(|w| w[0] == w[1]) {
            return Err(fail("repeated characteristic root".into()));
        }
        // v_i = sum_j c_j m_j^{-(i+2)}
        let vandermonde = ExactMatrix::from_rows(
            (0..k)
                .map(|i| {
                    support
                        .iter()
                        .map(|&m| rat_pow(&BigRational::new(BigInt::one(), m.into()), i as u32 + 2))
                        .collect()
                })
                .collect(),
        )?;
        let coeffs = solve_linear_exact(&vandermonde, &values[..k])?;
        let mut terms = Vec::with_capacity(k);
        for (&m, c) in support.iter().zip(&coeffs) {
            if !c.is_integer() || c.is_zero() {
                return Err(fail(format!(
                    "coefficient {c} at m = {m} is not a nonzero integer"
                )));
            }
            let c = c
                .to_integer()
                .to_i64()
                .ok_or_else(|| fail(format!("coefficient {c} too large")))?;
            terms.push((m, c));
        }
        let spec = Spectrum::from_terms(terms, None)?;
        for (i, v) in values.iter().enumerate() {
            if &spec.eval_pr(i as u32 + 2) != v {
                return Err(Error::InternalInconsistency(format!(
                    "recovered spectrum misses P_{}",
                    i + 2
                )));
            }
        }
        return Ok(spec);
    }
    Err(Error::NotEnoughData(format!(
        "no recurrence of order <= {} fits {len} values",
        len / 2
    )))
}

/// Growth normalizations of `P_r` and `kappa_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    /// `m(G)/|G|`.
    pub lambda_prob: ExactRational,
    /// `m(G)`.
    pub lambda_orb: u64,
    /// `|G|/m(G)`, the radius of convergence of the generating series.
    pub radius: ExactRational,
    /// `log(|G|/m(G))`, display only.
    pub h_prob: f64,
    /// `log m(G)`, display only.
    pub h_orb: f64,
}

pub fn entropy_report(stats: &AbelianStats, order: usize) -> Result<EntropyReport> {
    let m = stats.m as i64;
    let radius = BigRational::new(BigInt::from(order), BigInt::from(m));
    if &radius * rat(m) != rat(order as i64) {
        return Err(Error::InternalInconsistency("(|G|/m) * m != |G|".into()));
    }
    Ok(EntropyReport {
        lambda_prob: radius.recip(),
        lambda_orb: m as u64,
        h_prob: (order as f64 / m as f64).ln(),
        h_orb: (m as f64).ln(),
        radius,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesReport {
    pub m_star: u64,
    pub pole_coefficient: ExactRational,
    pub special: SpecialValues,
    pub recurrence: Vec<ExactRational>,
    pub hankel_rank: usize,
    pub entropy: EntropyReport,
}

/// Collects the pole, special values, recurrence and entropy data of a
/// non-abelian group.
pub fn series_report(g: &FiniteGroup) -> Result<SeriesReport> {
    let poset = AbelianPoset::build(g)?;
    let stats = poset.stats();
    let spec = spectrum_from_poset(g.order(), &poset)?;
    let (m_star, pole_coefficient) = spec.first_pole(&stats)?;
    let t = spec.len();
    let values: Vec<ExactRational> = (2..2 * t as u32 + 4).map(|r| spec.eval_pr(r)).collect();
    Ok(SeriesReport {
        m_star,
        pole_coefficient,
        special: spec.special_values(),
        recurrence: spec.recurrence(),
        hankel_rank: hankel_rank_of_sequence(&values),
        entropy: entropy_report(&stats, g.order())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::group::{make_group, GroupSpec};
    use crate::lattice::abelian_stats;

    fn group(spec: GroupSpec) -> FiniteGroup {
        make_group(&spec).unwrap()
    }

    fn s3_spec() -> Spectrum {
        spectrum_from_moebius(&group(GroupSpec::Symmetric(3))).unwrap()
    }

    fn q8_spec() -> Spectrum {
        spectrum_from_moebius(&group(GroupSpec::Quaternion8)).unwrap()
    }

    #[test]
    fn moebius_spectra() {
        assert_eq!(s3_spec().as_pairs(), vec![(2, 1), (3, 3), (6, -3)]);
        assert_eq!(q8_spec().as_pairs(), vec![(2, 3), (4, -2)]);
        let h = spectrum_from_moebius(&group(GroupSpec::Heisenberg(3))).unwrap();
        assert_eq!(h.as_pairs(), vec![(3, 4), (9, -3)]);
        assert_eq!(h.eval_pr(2), ratio(11, 27));
        assert_eq!(
            spectrum_from_moebius(&group(GroupSpec::Cyclic(4))),
            Err(Error::AbelianGroup)
        );
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(s3_spec().eval_pr(2), ratio(1, 2));
        assert_eq!(q8_spec().eval_pr(4), ratio(23, 128));
        assert_eq!(s3_spec().eval_pr(5), ratio(7, 162));
    }

    #[test]
    fn series_examples() {
        let s = s3_spec();
        assert_eq!(s.eval_series(&rat(0)).unwrap(), ratio(1, 2));
        assert_eq!(s.eval_series(&rat(1)).unwrap(), ratio(9, 10));
        assert_eq!(s.eval_series(&rat(-1)).unwrap(), ratio(29, 84));
        assert_eq!(s.eval_series(&rat(3)), Err(Error::PoleHit("3".into())));
    }

    #[test]
    fn special_value_examples() {
        let sv = s3_spec().special_values();
        assert_eq!(sv.sigma, ratio(9, 10));
        assert_eq!(sv.alt, ratio(29, 84));
        assert_eq!(sv.dirichlet_value, BigInt::from(-7));
        assert_eq!(q8_spec().special_values().sigma, ratio(4, 3));
    }

    #[test]
    fn first_pole_examples() {
        let cases = [
            (GroupSpec::Symmetric(3), 2, ratio(1, 2)),
            (GroupSpec::Quaternion8, 2, ratio(3, 2)),
            (GroupSpec::Heisenberg(3), 3, ratio(4, 3)),
        ];
        for (spec, m_star, coeff) in cases {
            let g = group(spec);
            let stats = abelian_stats(&g).unwrap();
            let s = spectrum_from_moebius(&g).unwrap();
            assert_eq!(s.first_pole(&stats).unwrap(), (m_star, coeff));
        }
        let g = group(GroupSpec::Symmetric(3));
        let mut stats = abelian_stats(&g).unwrap();
        stats.n_max = 2;
        assert!(matches!(
            s3_spec().first_pole(&stats),
            Err(Error::SpectrumStatsMismatch(_))
        ));
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(q8_spec().recurrence(), vec![ratio(3, 4), ratio(1, 8)]);
        assert_eq!(
            s3_spec().recurrence(),
            vec![rat(1), ratio(11, 36), ratio(1, 36)]
        );
        let single = Spectrum::from_terms([(5, 2)], None).unwrap();
        assert_eq!(single.recurrence(), vec![ratio(1, 5)]);
    }

    #[test]
    fn recurrence_holds() {
        for s in [s3_spec(), q8_spec()] {
            let sigma = s.recurrence();
            let t = sigma.len() as u32;
            for r in 2..=12 {
                let window: Vec<_> = (r..r + t).map(|k| s.eval_pr(k)).collect();
                assert_eq!(apply_recurrence(&sigma, &window), s.eval_pr(r + t));
            }
        }
    }

    #[test]
    fn hankel_rank_examples() {
        assert_eq!(hankel_rank_of_sequence(&vec![rat(1); 6]), 1);
        let q8: Vec<_> = (2..=5).map(|r| q8_spec().eval_pr(r)).collect();
        assert_eq!(hankel_rank_of_sequence(&q8), 2);
        let s3: Vec<_> = (2..=7).map(|r| s3_spec().eval_pr(r)).collect();
        assert_eq!(hankel_rank_of_sequence(&s3), 3);
    }

    #[test]
    fn inverse_examples() {
        let s3_values = vec![
            ratio(1, 2),
            ratio(2, 9),
            ratio(7, 72),
            ratio(7, 162),
            ratio(17, 864),
            ratio(107, 11664),
        ];
        let s3: Vec<_> = (2..=7).map(|r| s3_spec().eval_pr(r)).collect();
        assert_eq!(s3, s3_values);
        assert!(inverse_spectrum(&s3_values).unwrap().same_terms(&s3_spec()));

        let q8 = vec![
            ratio(5, 8),
            ratio(11, 32),
            ratio(23, 128),
            q8_spec().eval_pr(5),
        ];
        assert!(inverse_spectrum(&q8).unwrap().same_terms(&q8_spec()));

        assert!(matches!(
            inverse_spectrum(&vec![rat(1); 6]),
            Err(Error::NonSpectralSequence(_))
        ));
    }

    #[test]
    fn inverse_needs_enough_data() {
        let s3: Vec<_> = (2..=5).map(|r| s3_spec().eval_pr(r)).collect();
        assert!(matches!(
            inverse_spectrum(&s3),
            Err(Error::NotEnoughData(_))
        ));
        assert!(matches!(
            inverse_spectrum(&[ratio(1, 2)]),
            Err(Error::NotEnoughData(_))
        ));
    }

    #[test]
    fn inverse_rejects_non_integer_coefficients() {
        // 1/2 * 2^-r: root 1/2 is fine, coefficient is not an integer
        let values: Vec<_> = (2..=6)
            .map(|r| ratio(1, 2) * rat_pow(&ratio(1, 2), r))
            .collect();
        assert!(matches!(
            inverse_spectrum(&values),
            Err(Error::NonSpectralSequence(_))
        ));
    }

    #[test]
    fn entropy_examples() {
        let s3 = group(GroupSpec::Symmetric(3));
        let e = entropy_report(&abelian_stats(&s3).unwrap(), 6).unwrap();
        assert_eq!((e.lambda_prob.clone(), e.lambda_orb), (ratio(1, 2), 3));
        assert!((e.h_prob - 2f64.ln()).abs() < 1e-12);
        for n in 3..=8u64 {
            let d = group(GroupSpec::Dihedral(n));
            let e = entropy_report(&abelian_stats(&d).unwrap(), d.order()).unwrap();
            assert_eq!((e.lambda_prob, e.lambda_orb), (ratio(1, 2), n));
        }
        let c = group(GroupSpec::Abelian(vec![2, 4]));
        let e = entropy_report(&abelian_stats(&c).unwrap(), 8).unwrap();
        assert_eq!((e.lambda_prob, e.lambda_orb), (rat(1), 8));
    }

    #[test]
    fn series_report_for_s3() {
        let rep = series_report(&group(GroupSpec::Symmetric(3))).unwrap();
        assert_eq!(rep.m_star, 2);
        assert_eq!(rep.pole_coefficient, ratio(1, 2));
        assert_eq!(rep.hankel_rank, 3);
        assert_eq!(rep.special.sigma, ratio(9, 10));
    }
}
