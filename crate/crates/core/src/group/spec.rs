use std::fmt;

/// Integer matrix acting on `Z_{d1} x ... x Z_{dk}` by `a -> M a`, row `i`
/// giving the `i`-th coordinate of the image.
pub type ActionMatrix = Vec<Vec<i64>>;

/// Constructor descriptor for a finite group. `Display` prints the
/// canonical textual form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    /// Direct product of cyclic groups with the given orders.
    Abelian(Vec<u64>),
    /// The dihedral group of order `2n`.
    Dihedral(u64),
    Symmetric(u64),
    Quaternion8,
    /// Upper unitriangular 3x3 matrices over `F_p`, order `p^3`.
    Heisenberg(u64),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// `A x| K` with `A` and `K` abelian and one action matrix per
    /// invariant-factor generator of `K`.
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<ActionMatrix>,
    },
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    pub fn semidirect(normal: GroupSpec, acting: GroupSpec, action: Vec<ActionMatrix>) -> Self {
        GroupSpec::Semidirect {
            normal: Box::new(normal),
            acting: Box::new(acting),
            action,
        }
    }

    /// Invariant factors when the spec names an abelian group directly.
    pub fn abelian_factors(&self) -> Option<Vec<u64>> {
        match self {
            GroupSpec::Cyclic(n) => Some(vec![*n]),
            GroupSpec::Abelian(ds) => Some(ds.clone()),
            _ => None,
        }
    }

    /// Order implied by the spec, saturating on overflow.
    pub fn order(&self) -> u64 {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Abelian(ds) => ds.iter().fold(1u64, |a, &d| a.saturating_mul(d)),
            GroupSpec::Dihedral(n) => n.saturating_mul(2),
            GroupSpec::Symmetric(n) => (1..=*n).fold(1u64, |a, k| a.saturating_mul(k)),
            GroupSpec::Quaternion8 => 8,
            GroupSpec::Heisenberg(p) => p.saturating_mul(*p).saturating_mul(*p),
            GroupSpec::Product(a, b) => a.order().saturating_mul(b.order()),
            GroupSpec::Semidirect { normal, acting, .. } => {
                normal.order().saturating_mul(acting.order())
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[i64]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Abelian(ds) => {
                f.write_str("abelian(")?;
                write_list(f, &ds.iter().map(|&d| d as i64).collect::<Vec<_>>())?;
                f.write_str(")")
            }
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric({n})"),
            GroupSpec::Quaternion8 => f.write_str("quaternion8"),
            GroupSpec::Heisenberg(p) => write!(f, "heisenberg({p})"),
            GroupSpec::Product(a, b) => write!(f, "product({a}, {b})"),
            GroupSpec::Semidirect {
                normal,
                acting,
                action,
            } => {
                write!(f, "semidirect({normal}; {acting}; ")?;
                for (i, m) in action.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("[")?;
                    for (j, row) in m.iter().enumerate() {
                        if j > 0 {
                            f.write_str(",")?;
                        }
                        write_list(f, row)?;
                    }
                    f.write_str("]")?;
                }
                f.write_str(")")
            }
        }
    }
}
