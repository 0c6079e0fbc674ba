//! Constructors for the permutation groups named by [`GroupSpec`].

mod classical;
mod field;
mod spec;
mod wreath;

pub use classical::{ProjectiveLine, ProjectivePlane};
pub use field::{prime_power, Field};
pub use spec::GroupSpec;
pub use wreath::{monolith, wreath_embedding, WreathEmbedding};

use crate::chartab::ClassFusion;
use crate::error::{Error, Result};
use crate::perm::{ClassData, PermGroup, Permutation};

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    Permutation::from_cycles(degree, &[points.into_iter().collect()]).unwrap()
}

fn from_gens(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
    if gens.is_empty() {
        PermGroup::trivial(degree)
    } else {
        PermGroup::new(gens).expect("generators share a degree")
    }
}

fn projective_line(q: u64) -> Result<ProjectiveLine> {
    Ok(ProjectiveLine::new(Field::new(q)?))
}

/// Builds the group named by `spec`.
pub fn build(spec: &GroupSpec) -> Result<PermGroup> {
    use GroupSpec::*;
    spec.validate()?;
    Ok(match spec {
        Sym(n) => {
            let n = *n;
            if n == 1 {
                PermGroup::trivial(1)
            } else {
                from_gens(n, vec![cycle(n, [0, 1]), cycle(n, 0..n)])
            }
        }
        Alt(n) => {
            let n = *n;
            from_gens(n, (2..n).map(|i| cycle(n, [0, 1, i])).collect())
        }
        Cyc(n) => from_gens(*n, vec![cycle(*n, 0..*n)]),
        Dih(n) => {
            let n = *n;
            let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
            from_gens(n, vec![cycle(n, 0..n), reflection])
        }
        Psl2(q) | Sl2(q) => {
            let line = projective_line(*q)?;
            from_gens(line.degree(), line.psl_generators())
        }
        Pgl2(q) => {
            let line = projective_line(*q)?;
            let mut gens = line.psl_generators();
            gens.push(line.diagonal());
            from_gens(line.degree(), gens)
        }
        PGammaL2(q) => {
            let line = projective_line(*q)?;
            let mut gens = line.psl_generators();
            gens.push(line.diagonal());
            gens.push(line.frobenius());
            from_gens(line.degree(), gens)
        }
        Psl3(q) => {
            let plane = ProjectivePlane::new(Field::new(*q)?);
            from_gens(plane.point_count(), plane.psl_on_points())
        }
        Dp(a, b) => {
            let (ga, gb) = (build(a)?, build(b)?);
            let (da, db) = (ga.degree(), gb.degree());
            let gens = ga
                .generators()
                .iter()
                .map(|g| g.shifted(0, da + db))
                .chain(gb.generators().iter().map(|g| g.shifted(da, da + db)))
                .collect();
            from_gens(da + db, gens)
        }
        Wr(a, b) => {
            let (ga, top) = (build(a)?, build(b)?);
            wreath_product(&ga, &top)
        }
        Perm { degree, gens } => from_gens(*degree, gens.clone()),
    })
}

/// `G wr P` on `n * d` points, copy `i` of `G` acting on block `i`.
pub fn wreath_product(g: &PermGroup, top: &PermGroup) -> PermGroup {
    let (d, n) = (g.degree(), top.degree());
    let degree = d * n;
    let mut gens = Vec::new();
    for orbit in top.orbits() {
        let block = orbit[0];
        gens.extend(g.generators().iter().map(|x| x.shifted(block * d, degree)));
    }
    for pi in top.generators() {
        let images = (0..degree).map(|x| pi.apply(x / d) * d + x % d).collect();
        gens.push(Permutation::from_images(images).unwrap());
    }
    from_gens(degree, gens)
}

/// A group realizing (part of) `Aut(S)` with a normal copy of `S` inside it.
#[derive(Clone, Debug)]
pub struct AutOvergroup {
    pub overgroup: PermGroup,
    pub subgroup: PermGroup,
    /// Named outer generators; together with `subgroup` they generate `overgroup`.
    pub outer: Vec<(String, Permutation)>,
}

/// The automorphism group of a non-abelian simple `spec`, when one is constructible
/// here: symmetric groups over alternating ones, `PGammaL(2,q)` over `PSL(2,q)`,
/// `PSL(3,q)` with its graph, diagonal and field automorphisms.
pub fn aut_overgroup(spec: &GroupSpec) -> Result<Option<AutOvergroup>> {
    use GroupSpec::*;
    spec.validate()?;
    let line_case = |q: u64| -> Result<AutOvergroup> {
        let line = projective_line(q)?;
        let sub = from_gens(line.degree(), line.psl_generators());
        let mut outer = Vec::new();
        if line.field.p != 2 {
            outer.push(("diagonal".to_string(), line.diagonal()));
        }
        if line.field.k > 1 {
            outer.push(("field".to_string(), line.frobenius()));
        }
        Ok(assemble(sub, outer))
    };
    Ok(match spec {
        Alt(6) => Some(line_case(9)?),
        Alt(n) if *n >= 5 => {
            let sub = build(spec)?;
            Some(assemble(
                sub,
                vec![("transposition".into(), cycle(*n, [0, 1]))],
            ))
        }
        Psl2(q) | Sl2(q) if *q >= 4 => Some(line_case(*q)?),
        Psl3(q) => {
            let plane = ProjectivePlane::new(Field::new(*q)?);
            let sub = from_gens(2 * plane.point_count(), plane.psl_on_points_and_lines());
            let mut outer = vec![("graph".to_string(), plane.graph_automorphism())];
            if (plane.field.q - 1).is_multiple_of(3) {
                outer.push(("diagonal".into(), plane.diagonal_automorphism()));
            }
            if plane.field.k > 1 {
                outer.push(("field".into(), plane.field_automorphism()));
            }
            Some(assemble(sub, outer))
        }
        _ => None,
    })
}

fn assemble(sub: PermGroup, outer: Vec<(String, Permutation)>) -> AutOvergroup {
    let mut gens: Vec<Permutation> = sub.generators().to_vec();
    gens.extend(outer.iter().map(|(_, x)| x.clone()));
    AutOvergroup {
        overgroup: from_gens(sub.degree(), gens),
        subgroup: sub,
        outer,
    }
}

/// `PSL(2, q)` inside `PGammaL(2, q)` with the diagonal and field automorphisms named.
pub fn psl2_with_automorphisms(q: u64) -> Result<(PermGroup, Permutation, Permutation)> {
    let line = projective_line(q)?;
    let sub = from_gens(line.degree(), line.psl_generators());
    Ok((sub, line.diagonal(), line.frobenius()))
}

/// Fusion of the classes of a subgroup into the classes of an overgroup.
pub fn class_fusion(sub: &ClassData, group: &ClassData) -> Result<ClassFusion> {
    ClassFusion::by_membership(sub, group)
}

/// `|PSL(2,q)| = q (q^2 - 1) / gcd(2, q - 1)`.
pub fn psl2_order(q: u64) -> u64 {
    q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 }
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Hypothesis(msg()))
    }
}
