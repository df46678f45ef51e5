//! Explicit generator families, the propagation rules between classes,
//! and the realisability grids for S_n, A_n and PSL(2,q).

mod alt;
mod psl2;
mod solv;
mod sym;

pub use alt::{alt_chiral, alt_class1, alt_small, alt_standard_gens, AltVariant};
pub use psl2::{psl2_class1, psl2_class2_q7, psl2_group, psl2_matrix_perm, Psl2Mat};
pub use solv::{dihedral_spec, edmonds_k8, nilpotent_chiral, nilpotent_class5, v4_rotary};
pub use sym::{sym_chiral, sym_class1, sym_even};

use serde::Serialize;

use crate::classes::{EtClass, Op};
use crate::error::{Error, Result};
use crate::group::{simultaneous_inversion_survey, GroupTable, DEFAULT_CAP};
use crate::map::FlagMap;
use crate::parent::{parent_generators, search_epimorphisms, EpimorphismSpec, Resolved, SearchOptions, SearchOutcome};
use crate::perm::{Perm, PermGroupSpec};

use EtClass::*;

/// 1-indexed permutation from cycles; panics on malformed constants.
pub(crate) fn perm(n: usize, cycles: &[Vec<u32>]) -> Perm {
    let zero: Vec<Vec<u32>> = cycles.iter().map(|c| c.iter().map(|&x| x - 1).collect()).collect();
    let refs: Vec<&[u32]> = zero.iter().map(|c| c.as_slice()).collect();
    Perm::from_cycles(n, &refs).expect("well-formed cycles")
}

pub(crate) fn p(n: usize, s: &str) -> Perm {
    Perm::parse(s, Some(n)).expect("constant cycle string")
}

/// Transpositions `(a, b)` listed as pairs.
pub(crate) fn pairs(n: usize, ps: &[(u32, u32)]) -> Perm {
    let cyc: Vec<Vec<u32>> = ps.iter().map(|&(a, b)| vec![a, b]).collect();
    perm(n, &cyc)
}

pub(crate) fn cycle(n: usize, pts: impl IntoIterator<Item = u32>) -> Perm {
    perm(n, &[pts.into_iter().collect()])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// An exhaustive search (or inversion survey) ran and found nothing.
    Exhausted,
    /// Known result, too large to search here.
    Cited,
}

#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub target: EtClass,
    pub spec: EpimorphismSpec,
    /// Operations taking the built representative map to `target`.
    pub ops: Vec<Op>,
    pub method: String,
}

impl Realization {
    pub fn new(target: EtClass, spec: EpimorphismSpec, method: &str) -> Realization {
        let (rep, ops) = target.route();
        assert_eq!(rep, spec.class, "spec must be in the route representative class");
        Realization { target, spec, ops: ops.to_vec(), method: method.to_string() }
    }

    pub fn resolve(&self) -> Result<Resolved> {
        self.spec.resolve(DEFAULT_CAP)
    }

    pub fn build(&self) -> Result<FlagMap> {
        self.resolve()?.transform(&self.ops)
    }

    /// Class the built map must have, from the forbidden-pattern analysis.
    pub fn expected_class(&self) -> Result<EtClass> {
        let r = self.resolve()?;
        r.check_ok()?;
        Ok(self.ops.iter().fold(r.expected_class(), |c, &o| c.apply(o)))
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Verdict {
    Realizable(Realization),
    Unrealizable { reason: String, provenance: Provenance, checked: Option<u64> },
}

impl Verdict {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Verdict::Realizable(_))
    }

    fn cited(reason: &str) -> Verdict {
        Verdict::Unrealizable { reason: reason.to_string(), provenance: Provenance::Cited, checked: None }
    }
}

/// Groups in the realisation tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum GroupFamily {
    Sym { n: u32 },
    Alt { n: u32 },
    Psl2 { q: u32 },
}

impl GroupFamily {
    pub fn order(self) -> u64 {
        let fact = |n: u32| (1..=n as u64).product::<u64>();
        match self {
            GroupFamily::Sym { n } => fact(n),
            GroupFamily::Alt { n } => (fact(n) / 2).max(1),
            GroupFamily::Psl2 { q } => {
                let q = q as u64;
                q * (q * q - 1) / crate::perm::gcd(2, q - 1)
            }
        }
    }

    pub fn generators(self) -> Result<PermGroupSpec> {
        match self {
            GroupFamily::Sym { n } => {
                let n = n as usize;
                if n <= 1 {
                    return PermGroupSpec::new(vec![Perm::identity(1)]);
                }
                PermGroupSpec::new(vec![cycle(n, 1..=n as u32), p(n, "(1,2)")])
            }
            GroupFamily::Alt { n } => {
                let n = n as usize;
                if n <= 2 {
                    return PermGroupSpec::new(vec![Perm::identity(n.max(1))]);
                }
                PermGroupSpec::new(alt_standard_gens(n, AltVariant::A)?)
            }
            GroupFamily::Psl2 { q } => psl2_group(q),
        }
    }

    pub fn table(self, cap: usize) -> Result<GroupTable> {
        GroupTable::from_permutations(&self.generators()?, cap)
    }
}

/// Is the group in G(T)?
pub fn table1_member(f: GroupFamily, t: EtClass) -> bool {
    let orbit = t.orbit()[0];
    match f {
        GroupFamily::Sym { n } => match orbit {
            C1 => n >= 1,
            C2 | C3 | C4 => n >= 2,
            _ => n >= 6,
        },
        GroupFamily::Alt { n } => match orbit {
            C1 => matches!(n, 1 | 2 | 5) || n >= 9,
            C2 | C3 => n >= 5,
            C2Ex => n >= 8,
            C4 => n >= 4,
            _ => n >= 7,
        },
        GroupFamily::Psl2 { q } => match orbit {
            C1 => !matches!(q, 3 | 7 | 9),
            C2 | C3 => q != 3,
            C4 => true,
            _ => false,
        },
    }
}

/// Is the group in G+(T) (orientable, no boundary)?
pub fn table3_member(f: GroupFamily, t: EtClass) -> bool {
    match f {
        GroupFamily::Sym { n } => match t {
            C1 => !matches!(n, 1 | 5 | 6),
            C2 | C2S => !matches!(n, 1 | 2 | 5 | 6),
            // S_3 fails: s3 must be even, so s3 = 1 and (1,3) swaps s1, s2
            C2P => n >= 4,
            C2Ex | C2SEx => n >= 7,
            C2PEx => n >= 6,
            C3 => n >= 3,
            // 4 and 4* need s even; in S_3 every such triple has a forbidden automorphism
            C4 | C4S => n >= 4,
            C4P => n >= 3,
            C5 | C5S | C5P => n >= 6,
        },
        GroupFamily::Alt { n } => match t {
            C2PEx => n >= 8,
            C5 | C5S => n >= 7,
            _ => false,
        },
        GroupFamily::Psl2 { .. } => false,
    }
}

/// Derivation of a spec in another class from a class-1, 2
/// or 2Pex spec.
pub fn propagate(src: &Resolved, target: EtClass) -> Result<EpimorphismSpec> {
    src.check_ok()?;
    let g = &src.table;
    let im = &src.imgs;
    let t = src.class();
    let ids: Vec<u32> = match (t, target) {
        (C1, C2 | C3 | C4) => {
            if g.is_abelian() {
                return Err(Error::InvalidParameters("abelian source: every class-1 quotient is forced".into()));
            }
            let (mut r0, r1, mut r2) = (im[0], im[1], im[2]);
            if g.element_order(g.mul(r1, r2)) <= 2 {
                // dual map: swap r0 and r2
                std::mem::swap(&mut r0, &mut r2);
            }
            if g.element_order(g.mul(r1, r2)) <= 2 {
                return Err(Error::InvalidParameters("|r1 r2| <= 2 in the map and its dual".into()));
            }
            match target {
                C2 | C4 => vec![r0, r1, r2],
                _ => vec![if r0 != r1 { r2 } else { r0 }, r0, r1, r2],
            }
        }
        (C2, C3) => vec![im[2], im[0], im[1], im[2]],
        (C2, C4) => vec![im[0], im[1], im[2]],
        (C2PEx, C2Ex) => vec![im[1], im[0]],
        (C2PEx, C4) => vec![im[1], im[1], im[0]],
        (C2PEx, C5) => vec![im[0], im[1]],
        (C2PEx, C2) => {
            let (x, y) = (im[0], im[1]);
            let xi = g.inv(x);
            let a = (1..g.order() as u32)
                .find(|&a| g.mul(a, a) == 0 && g.conj(x, a) == xi)
                .ok_or_else(|| Error::InvalidParameters("x is not strongly real".into()))?;
            vec![a, g.mul(a, x), y]
        }
        _ => return Err(Error::InvalidParameters(format!("no propagation rule from {t} to {target}"))),
    };
    Ok(src.spec.with_ids(target, g, &ids))
}

/// First witness of a (possibly even) realisation found by search.
pub fn search_realization(target: EtClass, gens: &PermGroupSpec, even: bool, cap: usize) -> Result<Option<Realization>> {
    let g = GroupTable::from_permutations(gens, cap)?;
    let opts = SearchOptions { limit: Some(1), even, ..Default::default() };
    let out = search_epimorphisms(target, &g, &opts)?;
    let (rep, _) = target.route();
    Ok(out.witnesses().first().map(|w| {
        let perms: Vec<Perm> = w.iter().map(|&x| g.as_perm(x).unwrap()).collect();
        let spec = EpimorphismSpec::from_perms(rep, &perms).expect("witness has the right arity");
        Realization::new(target, spec, "search")
    }))
}

/// Exhaustive search for a realisation; `ProvedEmpty` confirms a negative cell.
pub fn confirm_unrealizable(f: GroupFamily, t: EtClass, even: bool, cap: usize) -> Result<Verdict> {
    if f.order() > cap as u64 {
        return Ok(Verdict::cited("group beyond the search cap"));
    }
    let g = f.table(cap)?;
    let out = search_epimorphisms(t, &g, &SearchOptions { exhaustive: false, limit: Some(1), even, ..Default::default() })?;
    Ok(match out {
        SearchOutcome::ProvedEmpty { checked } => Verdict::Unrealizable {
            reason: format!("exhaustive search over {checked} tuples found no epimorphism"),
            provenance: Provenance::Exhausted,
            checked: Some(checked),
        },
        SearchOutcome::Witnesses { tuples, .. } => {
            return Err(Error::InvalidParameters(format!("search found a witness {:?}", tuples[0])))
        }
    })
}

/// Negative 2ex/5-family cells for a 2-generated group: every generating
/// pair is inverted by an automorphism.
pub fn confirm_by_inversion_survey(f: GroupFamily, cap: usize) -> Result<Verdict> {
    let g = f.table(cap)?;
    let s = simultaneous_inversion_survey(&g, None)?;
    if !s.all_inverted() {
        return Err(Error::InvalidParameters(format!("non-inverted generating pair {:?}", s.first_counterexample)));
    }
    Ok(Verdict::Unrealizable {
        reason: format!("all {} generating pairs are inverted by an automorphism", s.generating_pairs),
        provenance: Provenance::Exhausted,
        checked: Some(s.generating_pairs),
    })
}

fn trivial_class1(n: usize) -> EpimorphismSpec {
    let e = Perm::identity(n.max(1));
    EpimorphismSpec::from_perms(C1, &[e.clone(), e.clone(), e]).unwrap()
}

fn via(src: EpimorphismSpec, target: EtClass, method: &str) -> Result<Realization> {
    let (rep, _) = target.route();
    let spec = if src.class == rep { src } else { propagate(&src.resolve(DEFAULT_CAP)?, rep)? };
    Ok(Realization::new(target, spec, method))
}

/// G(T) verdict with a constructive witness for every positive cell.
/// Negative cells are reported as cited; use `confirm_unrealizable` to
/// exhaust them.
pub fn realize_table1(f: GroupFamily, t: EtClass) -> Result<Verdict> {
    if !table1_member(f, t) {
        return Ok(Verdict::cited("known not to be in G(T)"));
    }
    let orbit = t.orbit()[0];
    let r = match f {
        GroupFamily::Sym { n } => match (orbit, n) {
            (C1, 1) => Realization::new(t, trivial_class1(1), "trivial"),
            (C1, 2) => Realization::new(t, EpimorphismSpec::parse_perms(C1, 2, &["(1,2)", "()", "()"])?, "abelian"),
            (C1, _) => Realization::new(t, sym_class1(n as usize)?, "sym_class1"),
            (_, 2) => search_realization(t, &f.generators()?, false, DEFAULT_CAP)?.expect("S_2 is in the table"),
            (C2 | C3 | C4, _) => via(sym_class1(n as usize)?, t, "sym_class1 + propagate")?,
            _ => via(sym_chiral(n as usize)?, t, "sym_chiral + propagate")?,
        },
        GroupFamily::Alt { n } => match (orbit, n) {
            (C1, 1 | 2) => Realization::new(t, trivial_class1(n as usize), "trivial"),
            (C1, _) => Realization::new(t, alt_class1(n as usize)?, "alt_class1"),
            (C2 | C3 | C4, 5) => via(alt_class1(5)?, t, "alt_class1 + propagate")?,
            (C4, 4) => search_realization(t, &f.generators()?, false, DEFAULT_CAP)?.expect("A_4 is in G(4)"),
            (C2 | C3 | C4, 6..=8) => via(alt_small(C2, n as usize)?, t, "alt_small + propagate")?,
            (C2 | C3 | C4, _) => via(alt_class1(n as usize)?, t, "alt_class1 + propagate")?,
            (C5, 7) => via(alt_small(C5, 7)?, t, "alt_small")?,
            _ => via(alt_chiral(n as usize)?, t, "alt_chiral + propagate")?,
        },
        GroupFamily::Psl2 { q } => match (orbit, q) {
            // exceptional isomorphisms L2(4) = L2(5) = A5, L2(9) = A6, L2(2) = S3, L2(3) = A4
            (_, 4 | 5) => return realize_table1(GroupFamily::Alt { n: 5 }, t),
            (_, 9) => return realize_table1(GroupFamily::Alt { n: 6 }, t),
            (_, 2) => return realize_table1(GroupFamily::Sym { n: 3 }, t),
            (_, 3) => return realize_table1(GroupFamily::Alt { n: 4 }, t),
            (C1, _) => Realization::new(t, psl2_class1(q)?, "psl2_class1"),
            (_, 7) => via(psl2_class2_q7()?, t, "psl2_class2_q7 + propagate")?,
            _ => via(psl2_class1(q)?, t, "psl2_class1 + propagate")?,
        },
    };
    Ok(Verdict::Realizable(r))
}

/// G+(T) verdict: positive cells come with an even construction.
pub fn realize_table3(f: GroupFamily, t: EtClass) -> Result<Verdict> {
    if !table3_member(f, t) {
        return Ok(Verdict::cited("known not to be in G+(T)"));
    }
    match f {
        GroupFamily::Sym { n } => sym_even(t, n as usize).map(Verdict::Realizable),
        GroupFamily::Alt { .. } => {
            // N(T) lies in the even subgroup for 2Pex, 5 and 5*
            let v = realize_table1(f, t)?;
            debug_assert!(v.is_realizable());
            Ok(v)
        }
        GroupFamily::Psl2 { .. } => unreachable!(),
    }
}

/// Names of the parent generators in order, for display.
pub fn generator_names(t: EtClass) -> Vec<&'static str> {
    parent_generators(t.route().0).iter().map(|g| g.name).collect()
}
