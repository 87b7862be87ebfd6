//! Split extensions `G = A x| K` with `A`, `K` abelian: fixed subgroups
//! `C_B = C_A(B)`, abelian lift multiplicities `lambda(B)`, the stratified
//! tuple count `sum_B lambda(B) |C_B|^r phi_r(B)`, its cyclic specialization
//! through Jordan totients, and the explicit Dirichlet coefficients.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{divisors, gcd, jordan_totient, moebius_mu, pow_u, ExactInteger};
use crate::error::{Error, Result};
use crate::group::{
    make_group, AbelianAction, ActionMatrix, Bits, FiniteGroup, GroupSpec, SubgroupSet,
};
use crate::lattice::{AbelianPoset, AbelianStats, PosetTop, LATTICE_CAP};
use crate::spectrum::{spectrum_from_poset, Spectrum};

/// How `lambda(B)` is obtained inside the stratified sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaMode {
    /// Enumerate abelian lifts in the embedded group.
    Enumerate,
    /// Use `|A : C_B|` on coprime strata, enumeration elsewhere.
    TrustCoprime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumData {
    /// Subgroup of `K`.
    pub b: SubgroupSet,
    /// `C_A(B)` as a subgroup of `A`.
    pub c_b: SubgroupSet,
    pub lambda: u64,
}

pub struct SplitExtension {
    action: AbelianAction,
    a_group: FiniteGroup,
    k_group: FiniteGroup,
    group: FiniteGroup,
    k_poset: AbelianPoset,
    lattice_cap: usize,
    group_poset: OnceLock<Result<AbelianPoset>>,
}

impl std::fmt::Debug for SplitExtension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SplitExtension")
            .field("group", &self.group.name())
            .field("a_factors", &self.action.a_factors())
            .field("k_factors", &self.action.k_factors())
            .finish()
    }
}

impl SplitExtension {
    pub fn new(a_factors: &[u64], k_factors: &[u64], matrices: &[ActionMatrix]) -> Result<Self> {
        Self::from_spec(&GroupSpec::semidirect(
            GroupSpec::Abelian(a_factors.to_vec()),
            GroupSpec::Abelian(k_factors.to_vec()),
            matrices.to_vec(),
        ))
    }

    /// `C_n x| C_2` with the generator acting by inversion.
    pub fn dihedral(n: u64) -> Result<Self> {
        Self::new(&[n], &[2], &[vec![vec![n as i64 - 1]]])
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        Self::from_spec_with_cap(spec, LATTICE_CAP)
    }

    pub fn from_spec_with_cap(spec: &GroupSpec, lattice_cap: usize) -> Result<Self> {
        let GroupSpec::Semidirect {
            normal,
            acting,
            action,
        } = spec
        else {
            return Err(Error::InvalidSpec(format!(
                "{spec} is not a semidirect product"
            )));
        };
        let group = make_group(spec)?;
        let a_factors = normal.abelian_factors().expect("validated by make_group");
        let k_factors = acting.abelian_factors().expect("validated by make_group");
        let action = AbelianAction::new(&a_factors, &k_factors, action)?;
        let a_group = make_group(&GroupSpec::Abelian(a_factors))?;
        let k_group = make_group(&GroupSpec::Abelian(k_factors))?;
        let k_poset = AbelianPoset::build_with_cap(&k_group, lattice_cap.max(k_group.order()))?;
        Ok(SplitExtension {
            action,
            a_group,
            k_group,
            group,
            k_poset,
            lattice_cap,
            group_poset: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn a_group(&self) -> &FiniteGroup {
        &self.a_group
    }

    pub fn k_group(&self) -> &FiniteGroup {
        &self.k_group
    }

    pub fn action(&self) -> &AbelianAction {
        &self.action
    }

    pub fn a_order(&self) -> usize {
        self.a_group.order()
    }

    pub fn k_order(&self) -> usize {
        self.k_group.order()
    }

    /// Projection of a group element onto its `K` coordinate.
    pub fn project(&self, x: usize) -> usize {
        x % self.k_order()
    }

    /// Embedding of `A` into the group.
    pub fn embed_a(&self, a: usize) -> usize {
        a * self.k_order()
    }

    /// All subgroups of `K`, ascending by order.
    pub fn k_subgroups(&self) -> &[SubgroupSet] {
        self.k_poset.subgroups()
    }

    pub fn group_poset(&self) -> Result<&AbelianPoset> {
        self.group_poset
            .get_or_init(|| AbelianPoset::build_with_cap(&self.group, self.lattice_cap))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn group_stats(&self) -> Result<AbelianStats> {
        Ok(self.group_poset()?.stats())
    }

    /// `C_A(B)`: elements of `A` fixed by every element of `B`.
    pub fn fixed_subgroup(&self, b: &SubgroupSet) -> SubgroupSet {
        let fixed =
            (0..self.a_order()).filter(|&a| b.bits().iter().all(|k| self.action.apply(k, a) == a));
        SubgroupSet::from_bits(Bits::from_indices(self.a_order(), fixed))
    }

    /// Number of generating r-tuples of `B <= K`.
    pub fn phi_r(&self, b: &SubgroupSet, r: u32) -> Result<ExactInteger> {
        phi_r(&self.k_poset, b, r)
    }

    /// Abelian `H <= G` with `pi(H) = B` and `H cap A = C_B`, by enumeration.
    pub fn lambda_bruteforce(&self, b: &SubgroupSet) -> Result<u64> {
        let poset = self.group_poset()?;
        let nk = self.k_order();
        let c_b = self.fixed_subgroup(b);
        let kernel = Bits::from_indices(
            self.group.order(),
            c_b.bits().iter().map(|a| self.embed_a(a)),
        );
        let count = poset
            .subgroups()
            .iter()
            .filter(|h| {
                let image = Bits::from_indices(nk, h.bits().iter().map(|x| self.project(x)));
                if &image != b.bits() {
                    return false;
                }
                let in_a = Bits::from_indices(
                    self.group.order(),
                    h.bits().iter().filter(|&x| self.project(x) == 0),
                );
                in_a == kernel
            })
            .count();
        Ok(count as u64)
    }

    /// `|A : C_B|`, valid when `gcd(|A|, |B|) = 1`.
    pub fn lambda_coprime(&self, b: &SubgroupSet) -> Result<u64> {
        let (a, bo) = (self.a_order() as u64, b.order() as u64);
        let g = gcd(a, bo);
        if g != 1 {
            return Err(Error::NotCoprime { a, b: bo, gcd: g });
        }
        Ok(a / self.fixed_subgroup(b).order() as u64)
    }

    fn lambda(&self, b: &SubgroupSet, mode: LambdaMode) -> Result<u64> {
        match mode {
            LambdaMode::TrustCoprime if gcd(self.a_order() as u64, b.order() as u64) == 1 => {
                self.lambda_coprime(b)
            }
            _ => self.lambda_bruteforce(b),
        }
    }

    pub fn strata(&self, mode: LambdaMode) -> Result<Vec<StratumData>> {
        self.k_subgroups()
            .iter()
            .map(|b| {
                Ok(StratumData {
                    b: b.clone(),
                    c_b: self.fixed_subgroup(b),
                    lambda: self.lambda(b, mode)?,
                })
            })
            .collect()
    }

    /// `m = max_B |C_B||B|` and `N_max = sum of lambda(B)` over maximizing
    /// strata, both checked against the abelian poset of the group.
    pub fn m_and_nmax_formula(&self) -> Result<(usize, usize)> {
        let strata = self.strata(LambdaMode::Enumerate)?;
        let m = strata
            .iter()
            .map(|s| s.c_b.order() * s.b.order())
            .max()
            .unwrap_or(1);
        let n_max: u64 = strata
            .iter()
            .filter(|s| s.c_b.order() * s.b.order() == m)
            .map(|s| s.lambda)
            .sum();
        let stats = self.group_stats()?;
        if (m, n_max as usize) != (stats.m, stats.n_max) {
            return Err(Error::FormulaMismatch(format!(
                "formula gives (m, N_max) = ({m}, {n_max}), poset gives ({}, {})",
                stats.m, stats.n_max
            )));
        }
        Ok((m, n_max as usize))
    }

    /// `sum_{B <= K} lambda(B) |C_B|^r phi_r(B)`.
    pub fn hom_count_split(&self, r: u32, mode: LambdaMode) -> Result<ExactInteger> {
        let mut total = BigInt::zero();
        for s in self.strata(mode)? {
            if s.lambda == 0 {
                continue;
            }
            total += pow_u(s.c_b.order() as u64, r) * self.phi_r(&s.b, r)? * s.lambda;
        }
        Ok(total)
    }

    /// A generator of `K` and its order, if `K` is cyclic.
    pub fn cyclic_generator(&self) -> Result<(usize, u64)> {
        let k = &self.k_group;
        (0..k.order())
            .find(|&t| k.element_order(t) == k.order())
            .map(|t| (t, k.order() as u64))
            .ok_or(Error::NotCyclic)
    }

    /// `C_n = C_A(<t^{omega/n}>)` for each divisor `n` of `omega`.
    pub fn cyclic_strata(&self) -> Result<Vec<(u64, SubgroupSet)>> {
        let (t, omega) = self.cyclic_generator()?;
        divisors(omega)?
            .into_iter()
            .map(|n| {
                let b_n = self
                    .k_group
                    .subgroup_closure(&[self.k_group.pow(t, (omega / n) as usize)])?;
                Ok((n, self.fixed_subgroup(&b_n)))
            })
            .collect()
    }

    /// `sum_{n | omega} |A : C_n| |C_n|^r J_r(n)`.
    pub fn hom_count_cyclic(&self, r: u32) -> Result<ExactInteger> {
        let a = self.a_order() as u64;
        let mut total = BigInt::zero();
        for (n, c_n) in self.cyclic_strata()? {
            let c = c_n.order() as u64;
            total += pow_u(c, r) * jordan_totient(r, n)? * (a / c);
        }
        Ok(total)
    }

    /// Every `(m_{B,D}, lambda(B) mu_B(D))` with `m_{B,D} = |A:C_B| |K:D|`.
    pub fn explicit_terms(&self, mode: LambdaMode) -> Result<Vec<(u64, i64)>> {
        let (na, nk) = (self.a_order() as u64, self.k_order() as u64);
        let mut terms = Vec::new();
        for s in self.strata(mode)? {
            if s.lambda == 0 {
                continue;
            }
            let top = self
                .k_poset
                .index_of(&s.b)
                .expect("B is a member of the subgroup lattice of K");
            let column = self.k_poset.moebius_column(PosetTop::Member(top));
            for (d, mu) in self.k_poset.subgroups().iter().zip(column) {
                let Some(mu) = mu else { continue };
                let m = (na / s.c_b.order() as u64) * (nk / d.order() as u64);
                terms.push((m, s.lambda as i64 * mu));
            }
        }
        Ok(terms)
    }

    /// Explicit coefficients from the strata, checked against the Moebius
    /// spectrum of the embedded group.
    pub fn spectrum_explicit(&self) -> Result<Spectrum> {
        let spec = self.spectrum_from_terms(self.explicit_terms(LambdaMode::Enumerate)?)?;
        self.check_against_moebius(spec)
    }

    /// Cyclic form: `m_{n,d} = |A:C_n| omega d / n` with coefficient
    /// `mu(d) |A:C_n|`.
    pub fn spectrum_explicit_cyclic(&self) -> Result<Spectrum> {
        let (_, omega) = self.cyclic_generator()?;
        let a = self.a_order() as u64;
        let mut terms = Vec::new();
        for (n, c_n) in self.cyclic_strata()? {
            let index = a / c_n.order() as u64;
            for d in divisors(n)? {
                let mu = moebius_mu(d)?;
                if mu != 0 {
                    terms.push((index * omega * d / n, mu as i64 * index as i64));
                }
            }
        }
        let spec = self.spectrum_from_terms(terms)?;
        self.check_against_moebius(spec)
    }

    fn spectrum_from_terms(&self, terms: Vec<(u64, i64)>) -> Result<Spectrum> {
        if self.group.is_abelian() {
            return Err(Error::AbelianGroup);
        }
        if let Some(&(m, _)) = terms.iter().find(|&&(m, _)| m < 2) {
            return Err(Error::SpectrumMismatch(format!("stratum index {m} < 2")));
        }
        Spectrum::from_terms(terms, Some(self.group.order() as u64))
    }

    fn check_against_moebius(&self, spec: Spectrum) -> Result<Spectrum> {
        let reference = spectrum_from_poset(self.group.order(), self.group_poset()?)?;
        if !spec.same_terms(&reference) {
            return Err(Error::SpectrumMismatch(format!(
                "strata give {:?}, Moebius gives {:?}",
                spec.as_pairs(),
                reference.as_pairs()
            )));
        }
        Ok(spec)
    }

    /// Closed form when every nontrivial power of the generator of `K` has
    /// the same fixed subgroup `F`: `m = max(|A|, omega |F|)` and `N_max`
    /// is 1, `|A:F|` or `1 + |A:F|` as `|A|` is larger than, smaller than,
    /// or equal to `omega |F|`.
    pub fn uniform_stratum_stats(&self) -> Result<(usize, usize)> {
        let (t, omega) = self.cyclic_generator()?;
        if omega < 2 {
            return Err(Error::HypothesisFails("K is trivial".into()));
        }
        let fixed_by_power = |j: usize| {
            let b = SubgroupSet::from_bits(Bits::from_indices(
                self.k_order(),
                [self.k_group.pow(t, j)],
            ));
            self.fixed_subgroup(&b)
        };
        let f = fixed_by_power(1);
        if let Some(j) = (2..omega as usize).find(|&j| fixed_by_power(j) != f) {
            return Err(Error::HypothesisFails(format!(
                "t^{j} fixes a different subgroup than t"
            )));
        }
        let a = self.a_order();
        let wf = omega as usize * f.order();
        let index = a / f.order();
        let (m, n_max) = match a.cmp(&wf) {
            std::cmp::Ordering::Greater => (a, 1),
            std::cmp::Ordering::Less => (wf, index),
            std::cmp::Ordering::Equal => (a, 1 + index),
        };
        let stats = self.group_stats()?;
        if (m, n_max) != (stats.m, stats.n_max) {
            return Err(Error::FormulaMismatch(format!(
                "uniform-stratum formula gives ({m}, {n_max}), poset gives ({}, {})",
                stats.m, stats.n_max
            )));
        }
        Ok((m, n_max))
    }
}

/// `phi_r(B) = sum_{D <= B} mu(D, B) |D|^r` over the subgroups of `B`, all
/// of which are members of `poset` when `B` is.
pub fn phi_r(poset: &AbelianPoset, b: &SubgroupSet, r: u32) -> Result<ExactInteger> {
    let top = poset.index_of(b).ok_or(Error::NotComparable)?;
    let column = poset.moebius_column(PosetTop::Member(top));
    let mut total = BigInt::zero();
    for (d, mu) in poset.subgroups().iter().zip(column) {
        if let Some(mu) = mu {
            total += pow_u(d.order() as u64, r) * mu;
        }
    }
    Ok(total)
}
