use std::fmt;

use super::field::{prime_power, Field};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A group-construction expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Sym(usize),
    Alt(usize),
    Cyc(usize),
    Dih(usize),
    Psl2(u64),
    Pgl2(u64),
    PGammaL2(u64),
    /// `SL(2, 2^f)`, equal to `PSL(2, 2^f)`.
    Sl2(u64),
    Psl3(u64),
    /// Direct product on the disjoint union of the two point sets.
    Dp(Box<GroupSpec>, Box<GroupSpec>),
    /// Imprimitive wreath product: the second group permutes copies of the first.
    Wr(Box<GroupSpec>, Box<GroupSpec>),
    Perm {
        degree: usize,
        gens: Vec<Permutation>,
    },
}

impl GroupSpec {
    pub fn dp(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Dp(Box::new(a), Box::new(b))
    }

    pub fn wr(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Wr(Box::new(a), Box::new(b))
    }

    /// Checks parameter ranges without building anything.
    pub fn validate(&self) -> Result<()> {
        use GroupSpec::*;
        let field = |name: &str, q: u64| -> Result<(u64, u32)> {
            let pk = prime_power(q).ok_or_else(|| {
                Error::InvalidSpec(format!("{name}({q}): {q} is not a prime power"))
            })?;
            if q > Field::MAX_ORDER {
                return Err(Error::InvalidSpec(format!(
                    "{name}({q}): field order above {}",
                    Field::MAX_ORDER
                )));
            }
            Ok(pk)
        };
        match self {
            Sym(n) | Alt(n) | Cyc(n) if *n == 0 => Err(Error::InvalidSpec(format!(
                "{self}: degree must be positive"
            ))),
            Dih(n) if *n < 3 => Err(Error::InvalidSpec(format!(
                "{self}: dihedral groups need n >= 3"
            ))),
            Sym(_) | Alt(_) | Cyc(_) | Dih(_) => Ok(()),
            Psl2(q) => field("PSL2", *q).map(drop),
            Pgl2(q) => field("PGL2", *q).map(drop),
            PGammaL2(q) => field("PGammaL2", *q).map(drop),
            Psl3(q) => field("PSL3", *q).map(drop),
            Sl2(q) => {
                let (p, _) = field("SL2", *q)?;
                if p != 2 {
                    return Err(Error::InvalidSpec(format!(
                        "SL2({q}): only characteristic 2 is supported"
                    )));
                }
                Ok(())
            }
            Dp(a, b) | Wr(a, b) => {
                a.validate()?;
                b.validate()
            }
            Perm { degree, gens } => {
                if *degree == 0 {
                    return Err(Error::InvalidSpec("Perm: degree must be positive".into()));
                }
                match gens.iter().find(|g| g.degree() != *degree) {
                    Some(g) => Err(Error::DegreeMismatch(*degree, g.degree())),
                    None => Ok(()),
                }
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupSpec::*;
        match self {
            Sym(n) => write!(f, "Sym({n})"),
            Alt(n) => write!(f, "Alt({n})"),
            Cyc(n) => write!(f, "Cyc({n})"),
            Dih(n) => write!(f, "Dih({n})"),
            Psl2(q) => write!(f, "PSL2({q})"),
            Pgl2(q) => write!(f, "PGL2({q})"),
            PGammaL2(q) => write!(f, "PGammaL2({q})"),
            Sl2(q) => write!(f, "SL2({q})"),
            Psl3(q) => write!(f, "PSL3({q})"),
            Dp(a, b) => write!(f, "DP({a},{b})"),
            Wr(a, b) => write!(f, "Wr({a},{b})"),
            Perm { degree, gens } => {
                write!(f, "Perm({degree};")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
        }
    }
}
