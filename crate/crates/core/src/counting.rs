//! Counting commuting tuples `|Hom(Z^r, G)|`, the probabilities `P_r(G)` and
//! the orbit counts `kappa_r(G)`, each by two independent routes.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{pow_u, ExactInteger, ExactRational};
use crate::error::{Error, Result};
use crate::group::{Bits, FiniteGroup, SubgroupSet};

/// Work cap for [`hom_count_bruteforce`], in `|G|^r` tuples.
pub const BRUTE_HOM_CAP: u64 = 100_000_000;
/// Work cap for [`kappa_orbits_bruteforce`], in `|G|^r` tuples.
pub const BRUTE_ORBIT_CAP: u64 = 10_000_000;

type Children = Arc<Vec<(Bits, u64)>>;

/// Memoized evaluation of
/// `|Comm_r(H)| = sum_{x in H} |Comm_{r-1}(C_H(x))|` keyed by the canonical
/// subgroup bitset. Elements of `H` with equal centralizer in `H` are merged
/// into one child with a multiplicity.
///
/// The caches are behind mutexes that are never held across recursion, so
/// concurrent callers may race to compute an entry; inserts are idempotent.
pub struct HomCounter<'g> {
    group: &'g FiniteGroup,
    values: Mutex<HashMap<(Bits, u32), ExactInteger>>,
    children: Mutex<HashMap<Bits, Children>>,
}

impl<'g> HomCounter<'g> {
    pub fn new(group: &'g FiniteGroup) -> Self {
        HomCounter {
            group,
            values: Mutex::new(HashMap::new()),
            children: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    fn children(&self, h: &Bits) -> Children {
        if let Some(c) = self.children.lock().expect("cache poisoned").get(h) {
            return Arc::clone(c);
        }
        let cent = self.group.centralizer_bits();
        let mut grouped: BTreeMap<Bits, u64> = BTreeMap::new();
        for x in h.iter() {
            *grouped.entry(h.intersection(&cent[x])).or_default() += 1;
        }
        let list: Children = Arc::new(grouped.into_iter().collect());
        self.children
            .lock()
            .expect("cache poisoned")
            .entry(h.clone())
            .or_insert(list)
            .clone()
    }

    fn count_bits(&self, h: &Bits, r: u32) -> ExactInteger {
        match r {
            0 => return BigInt::from(1),
            1 => return BigInt::from(h.count()),
            _ => {}
        }
        let key = (h.clone(), r);
        if let Some(v) = self.values.lock().expect("cache poisoned").get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for (child, mult) in self.children(h).iter() {
            total += self.count_bits(child, r - 1) * *mult;
        }
        self.values
            .lock()
            .expect("cache poisoned")
            .entry(key)
            .or_insert(total)
            .clone()
    }

    /// `|Hom(Z^r, H)|` for a subgroup `H` of the counter's group.
    pub fn hom_count_in(&self, h: &SubgroupSet, r: u32) -> ExactInteger {
        self.count_bits(h.bits(), r)
    }

    pub fn hom_count(&self, r: u32) -> ExactInteger {
        self.count_bits(self.group.whole().bits(), r)
    }

    pub fn probability(&self, r: u32) -> ExactRational {
        BigRational::new(self.hom_count(r), pow_u(self.group.order() as u64, r))
    }

    /// `kappa_r(H) = |H|^{-1} sum_{h in H} |Hom(Z^r, C_H(h))|`.
    pub fn kappa_in(&self, h: &SubgroupSet, r: u32) -> Result<ExactInteger> {
        let cent = self.group.centralizer_bits();
        let sum: BigInt = h
            .bits()
            .iter()
            .map(|x| self.count_bits(&h.bits().intersection(&cent[x]), r))
            .sum();
        let (q, rem) = sum.div_rem(&BigInt::from(h.order()));
        if !rem.is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "Burnside sum {sum} not divisible by |H| = {}",
                h.order()
            )));
        }
        Ok(q)
    }

    /// Burnside route, checked against `kappa_r = |G|^r P_{r+1}`.
    pub fn kappa(&self, r: u32) -> Result<ExactInteger> {
        let whole = self.group.whole();
        let k = self.kappa_in(&whole, r)?;
        let via_probability = self.hom_count(r + 1);
        if &k * self.group.order() != via_probability {
            return Err(Error::InternalInconsistency(format!(
                "kappa_{r} = {k} but |G|^r P_(r+1) = {via_probability}/{}",
                self.group.order()
            )));
        }
        Ok(k)
    }

    /// `kappa_r(G) = sum over classes [g] of kappa_{r-1}(C_G(g))`.
    pub fn kappa_by_classes(&self, r: u32) -> Result<ExactInteger> {
        if r == 0 {
            return Ok(BigInt::from(1));
        }
        let mut total = BigInt::zero();
        for class in self.group.conjugacy_classes() {
            let c = self.group.centralizer(class[0])?;
            total += self.kappa_in(&c, r - 1)?;
        }
        Ok(total)
    }
}

pub fn hom_count(g: &FiniteGroup, r: u32) -> ExactInteger {
    HomCounter::new(g).hom_count(r)
}

pub fn commuting_probability(g: &FiniteGroup, r: u32) -> ExactRational {
    HomCounter::new(g).probability(r)
}

pub fn kappa(g: &FiniteGroup, r: u32) -> Result<ExactInteger> {
    HomCounter::new(g).kappa(r)
}

fn check_work(n: usize, r: u32, cap: u64) -> Result<()> {
    let work = pow_u(n as u64, r);
    if work > BigInt::from(cap) {
        return Err(Error::Infeasible {
            work: format!("{n}^{r}"),
            cap,
        });
    }
    Ok(())
}

pub fn hom_count_bruteforce(g: &FiniteGroup, r: u32) -> Result<ExactInteger> {
    hom_count_bruteforce_with_cap(g, r, BRUTE_HOM_CAP)
}

/// Exhaustive count of pairwise-commuting r-tuples, extending partial tuples
/// only by elements in the intersection of the centralizers chosen so far.
pub fn hom_count_bruteforce_with_cap(g: &FiniteGroup, r: u32, cap: u64) -> Result<ExactInteger> {
    check_work(g.order(), r, cap)?;
    fn extend(g: &FiniteGroup, allowed: &Bits, remaining: u32) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let cent = g.centralizer_bits();
        allowed
            .iter()
            .map(|x| extend(g, &allowed.intersection(&cent[x]), remaining - 1))
            .sum()
    }
    Ok(BigInt::from(extend(g, &Bits::full(g.order()), r)))
}

pub fn kappa_orbits_bruteforce(g: &FiniteGroup, r: u32) -> Result<ExactInteger> {
    kappa_orbits_bruteforce_with_cap(g, r, BRUTE_ORBIT_CAP)
}

/// Counts diagonal-conjugation orbits on commuting r-tuples directly: a
/// tuple is an orbit representative when its base-`|G|` code is minimal
/// among all its conjugates.
pub fn kappa_orbits_bruteforce_with_cap(g: &FiniteGroup, r: u32, cap: u64) -> Result<ExactInteger> {
    check_work(g.order(), r, cap)?;
    let n = g.order();
    let encode = |t: &[usize]| t.iter().fold(0u64, |acc, &x| acc * n as u64 + x as u64);
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for t in &tuples {
            for x in 0..n {
                if t.iter().all(|&y| g.commute(x, y)) {
                    let mut ext = t.clone();
                    ext.push(x);
                    next.push(ext);
                }
            }
        }
        tuples = next;
    }
    let mut orbits = 0u64;
    let mut conj = vec![0usize; r as usize];
    for t in &tuples {
        let code = encode(t);
        let minimal = (0..n).all(|h| {
            for (c, &x) in conj.iter_mut().zip(t) {
                *c = g.conjugate(h, x);
            }
            encode(&conj) >= code
        });
        if minimal {
            orbits += 1;
        }
    }
    Ok(BigInt::from(orbits))
}

/// Exact `P_r` values for `r` in `range`, sharing one counter.
pub fn probability_table(
    g: &FiniteGroup,
    range: std::ops::RangeInclusive<u32>,
) -> Vec<ExactRational> {
    let counter = HomCounter::new(g);
    range.map(|r| counter.probability(r)).collect()
}

/// Lossy view for display only.
pub fn to_f64(q: &ExactRational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}
