use std::collections::HashMap;

use super::{ActionMatrix, FiniteGroup, GroupKind, GroupSpec};
use crate::arith::is_prime;
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 20_000;

/// Seed for the sampled associativity check on groups above order 128.
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    make_group_seeded(spec, DEFAULT_SEED)
}

pub fn make_group_seeded(spec: &GroupSpec, seed: u64) -> Result<FiniteGroup> {
    validate(spec)?;
    let order = spec.order();
    if order > MAX_ORDER as u64 {
        return Err(Error::OrderCap {
            order,
            cap: MAX_ORDER as u64,
        });
    }
    let (mul, labels, kind, projection) = table(spec)?;
    FiniteGroup::assemble(
        order as usize,
        mul,
        labels,
        kind,
        spec.to_string(),
        projection,
        seed,
    )
}

fn validate(spec: &GroupSpec) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidSpec(msg));
    match spec {
        GroupSpec::Cyclic(0) => bad("cyclic(0) is empty".into()),
        GroupSpec::Abelian(ds) if ds.is_empty() => {
            bad("abelian() needs at least one factor".into())
        }
        GroupSpec::Abelian(ds) if ds.contains(&0) => bad("abelian factors must be positive".into()),
        GroupSpec::Dihedral(n) if *n < 3 => bad(format!("dihedral({n}) needs n >= 3")),
        GroupSpec::Symmetric(n) if *n == 0 || *n > 7 => {
            bad(format!("symmetric({n}) needs 1 <= n <= 7"))
        }
        GroupSpec::Heisenberg(p) if !is_prime(*p) => bad(format!("heisenberg({p}) needs a prime")),
        GroupSpec::Product(a, b) => {
            validate(a)?;
            validate(b)
        }
        GroupSpec::Semidirect { normal, acting, .. } => {
            validate(normal)?;
            validate(acting)?;
            if normal.abelian_factors().is_none() {
                return bad("the normal factor must be cyclic(..) or abelian(..)".into());
            }
            if acting.abelian_factors().is_none() {
                return bad("the acting factor must be cyclic(..) or abelian(..)".into());
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

type Table = (Vec<u16>, Vec<String>, GroupKind, Option<Vec<usize>>);

fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<u16> {
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push(f(a, b) as u16);
        }
    }
    mul
}

fn table(spec: &GroupSpec) -> Result<Table> {
    Ok(match spec {
        GroupSpec::Cyclic(n) => {
            let n = *n as usize;
            let labels = (0..n).map(|k| k.to_string()).collect();
            (
                from_fn(n, |a, b| (a + b) % n),
                labels,
                GroupKind::Cyclic,
                None,
            )
        }
        GroupSpec::Abelian(ds) => {
            let radix = Radix::new(ds);
            let n = radix.order();
            let labels = (0..n).map(|x| radix.label(x)).collect();
            (
                from_fn(n, |a, b| radix.add(a, b)),
                labels,
                GroupKind::Abelian,
                None,
            )
        }
        GroupSpec::Dihedral(n) => dihedral(*n as usize),
        GroupSpec::Symmetric(n) => symmetric(*n as usize),
        GroupSpec::Quaternion8 => quaternion8(),
        GroupSpec::Heisenberg(p) => heisenberg(*p as usize),
        GroupSpec::Product(a, b) => {
            let ga = make_group(a)?;
            let gb = make_group(b)?;
            let (na, nb) = (ga.order(), gb.order());
            let labels = (0..na * nb)
                .map(|x| format!("({},{})", ga.label(x / nb), gb.label(x % nb)))
                .collect();
            let mul = from_fn(na * nb, |x, y| {
                ga.mul(x / nb, y / nb) * nb + gb.mul(x % nb, y % nb)
            });
            (mul, labels, GroupKind::Product, None)
        }
        GroupSpec::Semidirect {
            normal,
            acting,
            action,
        } => {
            let a_factors = normal.abelian_factors().expect("validated");
            let k_factors = acting.abelian_factors().expect("validated");
            let act = AbelianAction::new(&a_factors, &k_factors, action)?;
            let (na, nk) = (act.a.order(), act.k.order());
            let mul = from_fn(na * nk, |x, y| {
                let (a1, k1) = (x / nk, x % nk);
                let (a2, k2) = (y / nk, y % nk);
                act.a.add(a1, act.apply(k1, a2)) * nk + act.k.add(k1, k2)
            });
            let labels = (0..na * nk)
                .map(|x| format!("({};{})", act.a.label(x / nk), act.k.label(x % nk)))
                .collect();
            let projection = (0..na * nk).map(|x| x % nk).collect();
            (mul, labels, GroupKind::Semidirect, Some(projection))
        }
    })
}

fn dihedral(n: usize) -> Table {
    // element r^k s^e has index e*n + k
    let mul = from_fn(2 * n, |x, y| {
        let (e1, k1) = (x / n, x % n);
        let (e2, k2) = (y / n, y % n);
        let k = if e1 == 0 { k1 + k2 } else { k1 + n - k2 } % n;
        ((e1 + e2) % 2) * n + k
    });
    let labels = (0..2 * n)
        .map(|x| {
            let (e, k) = (x / n, x % n);
            let r = match k {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{k}"),
            };
            match (e, r.is_empty()) {
                (0, true) => "1".to_string(),
                (0, false) => r,
                _ => format!("{r}s"),
            }
        })
        .collect();
    (mul, labels, GroupKind::Dihedral, None)
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn symmetric(n: usize) -> Table {
    let perms = permutations(n);
    let index: HashMap<&[u8], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    // (p q)(x) = p(q(x))
    let mul = from_fn(perms.len(), |a, b| {
        let composed: Vec<u8> = perms[b].iter().map(|&x| perms[a][x as usize]).collect();
        index[composed.as_slice()]
    });
    let labels = perms
        .iter()
        .map(|p| {
            let digits: Vec<String> = p.iter().map(|d| (d + 1).to_string()).collect();
            format!("[{}]", digits.join(" "))
        })
        .collect();
    (mul, labels, GroupKind::Symmetric, None)
}

fn quaternion8() -> Table {
    // index 2u + s for unit u in (1, i, j, k) and sign s (0 = +, 1 = -)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let mul = from_fn(8, |x, y| {
        let (u, s) = UNIT[x / 2][y / 2];
        2 * u + (s + x % 2 + y % 2) % 2
    });
    let names = ["1", "i", "j", "k"];
    let labels = (0..8)
        .map(|x| {
            let sign = if x % 2 == 1 { "-" } else { "" };
            format!("{sign}{}", names[x / 2])
        })
        .collect();
    (mul, labels, GroupKind::Quaternion, None)
}

fn heisenberg(p: usize) -> Table {
    // (a, b, c) is the matrix [[1, a, c], [0, 1, b], [0, 0, 1]]
    let n = p * p * p;
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let mul = from_fn(n, |x, y| {
        let (a1, b1, c1) = split(x);
        let (a2, b2, c2) = split(y);
        let a = (a1 + a2) % p;
        let b = (b1 + b2) % p;
        let c = (c1 + c2 + a1 * b2) % p;
        a * p * p + b * p + c
    });
    let labels = (0..n)
        .map(|x| {
            let (a, b, c) = split(x);
            format!("({a},{b},{c})")
        })
        .collect();
    (mul, labels, GroupKind::Heisenberg, None)
}

/// Mixed-radix encoding of `Z_{d1} x ... x Z_{dk}`, last coordinate fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Radix {
    factors: Vec<u64>,
}

impl Radix {
    pub(crate) fn new(factors: &[u64]) -> Self {
        Radix {
            factors: factors.to_vec(),
        }
    }

    pub(crate) fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub(crate) fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub(crate) fn decode(&self, mut x: usize) -> Vec<i64> {
        let mut digits = vec![0i64; self.factors.len()];
        for (i, &d) in self.factors.iter().enumerate().rev() {
            digits[i] = (x % d as usize) as i64;
            x /= d as usize;
        }
        digits
    }

    pub(crate) fn encode(&self, digits: &[i64]) -> usize {
        self.factors
            .iter()
            .zip(digits)
            .fold(0usize, |acc, (&d, &v)| {
                acc * d as usize + v.rem_euclid(d as i64) as usize
            })
    }

    pub(crate) fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let sum: Vec<i64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        self.encode(&sum)
    }

    pub(crate) fn label(&self, x: usize) -> String {
        let digits = self.decode(x);
        if digits.len() == 1 {
            return digits[0].to_string();
        }
        let parts: Vec<String> = digits.iter().map(i64::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// An action of an abelian group `K` on an abelian group `A` by integer
/// matrices, tabulated as one permutation of `A` per element of `K`.
#[derive(Debug, Clone)]
pub struct AbelianAction {
    pub(crate) a: Radix,
    pub(crate) k: Radix,
    matrices: Vec<ActionMatrix>,
    table: Vec<Vec<usize>>,
}

impl AbelianAction {
    pub fn new(a_factors: &[u64], k_factors: &[u64], matrices: &[ActionMatrix]) -> Result<Self> {
        let a = Radix::new(a_factors);
        let k = Radix::new(k_factors);
        let dim = a_factors.len();
        if matrices.len() != k_factors.len() {
            return Err(Error::BadAction(format!(
                "{} action matrices for {} generators of the acting group",
                matrices.len(),
                k_factors.len()
            )));
        }
        let mut gens = Vec::with_capacity(matrices.len());
        for (g, m) in matrices.iter().enumerate() {
            if m.len() != dim || m.iter().any(|row| row.len() != dim) {
                return Err(Error::BadAction(format!("matrix {g} is not {dim}x{dim}")));
            }
            // column j sends a generator of Z_{d_j} into Z_{d_i}: needs d_i | d_j m_ij
            for (i, row) in m.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if (v as i128 * a_factors[j] as i128).rem_euclid(a_factors[i] as i128) != 0 {
                        return Err(Error::BadAction(format!(
                            "matrix {g} entry ({i},{j}) does not define a homomorphism"
                        )));
                    }
                }
            }
            let perm: Vec<usize> = (0..a.order())
                .map(|x| {
                    let v = a.decode(x);
                    let image: Vec<i64> = m
                        .iter()
                        .map(|row| row.iter().zip(&v).map(|(c, d)| c * d).sum())
                        .collect();
                    a.encode(&image)
                })
                .collect();
            let mut hit = vec![false; a.order()];
            for &y in &perm {
                if std::mem::replace(&mut hit[y], true) {
                    return Err(Error::BadAction(format!(
                        "matrix {g} is not invertible on A"
                    )));
                }
            }
            let mut power = perm.clone();
            for _ in 1..k_factors[g] {
                power = power.iter().map(|&y| perm[y]).collect();
            }
            if power.iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::BadAction(format!(
                    "matrix {g} does not have order dividing {}",
                    k_factors[g]
                )));
            }
            gens.push(perm);
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let ij: Vec<usize> = gens[j].iter().map(|&y| gens[i][y]).collect();
                let ji: Vec<usize> = gens[i].iter().map(|&y| gens[j][y]).collect();
                if ij != ji {
                    return Err(Error::BadAction(format!(
                        "matrices {i} and {j} do not commute"
                    )));
                }
            }
        }
        let table = (0..k.order())
            .map(|kx| {
                let digits = k.decode(kx);
                let mut perm: Vec<usize> = (0..a.order()).collect();
                for (g, &e) in digits.iter().enumerate() {
                    for _ in 0..e {
                        perm = perm.iter().map(|&y| gens[g][y]).collect();
                    }
                }
                perm
            })
            .collect();
        Ok(AbelianAction {
            a,
            k,
            matrices: matrices.to_vec(),
            table,
        })
    }

    /// Image of `a` under the automorphism attached to `k`.
    pub fn apply(&self, k: usize, a: usize) -> usize {
        self.table[k][a]
    }

    pub fn a_factors(&self) -> &[u64] {
        self.a.factors()
    }

    pub fn k_factors(&self) -> &[u64] {
        self.k.factors()
    }

    pub fn matrices(&self) -> &[ActionMatrix] {
        &self.matrices
    }

    pub fn a_order(&self) -> usize {
        self.a.order()
    }

    pub fn k_order(&self) -> usize {
        self.k.order()
    }
}
