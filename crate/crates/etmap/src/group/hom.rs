use rayon::prelude::*;

use super::{closure_size, conjugacy_classes, GroupOps, GroupTable};
use crate::error::{Error, Result};
use crate::perm::PermGroupSpec;

/// If `src[i] -> dst[i]` extends to an automorphism, return it as an id map.
///
/// Walks the Cayley graph on `src` from the identity, pushing images along
/// every edge; any closing edge that disagrees kills the candidate. A
/// conflict returns `None` straight away, so a non-generating `src` is only
/// reported when the walk completes.
pub fn hom_extension<G: GroupOps>(g: &G, src: &[u32], dst: &[u32]) -> Result<Option<Vec<u32>>> {
    if src.len() != dst.len() {
        return Err(Error::InvalidParameters("src and dst lengths differ".into()));
    }
    let n = g.order();
    let e = g.identity();
    let mut img = vec![u32::MAX; n];
    img[e as usize] = e;
    let mut queue = vec![e];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        let fx = img[x as usize];
        for (s, d) in src.iter().zip(dst) {
            let y = g.mul(x, *s);
            let fy = g.mul(fx, *d);
            let slot = &mut img[y as usize];
            if *slot == u32::MAX {
                *slot = fy;
                queue.push(y);
            } else if *slot != fy {
                return Ok(None);
            }
        }
        k += 1;
    }
    if queue.len() != n {
        return Err(Error::NotGenerating);
    }
    let mut hit = vec![false; n];
    for &v in &img {
        if std::mem::replace(&mut hit[v as usize], true) {
            return Ok(None);
        }
    }
    Ok(Some(img))
}

pub fn hom_extension_exists<G: GroupOps>(g: &G, src: &[u32], dst: &[u32]) -> Result<bool> {
    Ok(hom_extension(g, src, dst)?.is_some())
}

/// `A x| <t>` with `t` acting by an involutory automorphism `phi`;
/// `(a, e)` has id `a + e*|A|`.
pub struct Semidirect<'a> {
    pub base: &'a GroupTable,
    pub phi: Vec<u32>,
}

impl Semidirect<'_> {
    pub fn pair(&self, a: u32, e: u32) -> u32 {
        a + e * self.base.order() as u32
    }
}

impl GroupOps for Semidirect<'_> {
    fn order(&self) -> usize {
        2 * self.base.order()
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        let n = self.base.order() as u32;
        let (a, e) = (x % n, x / n);
        let (b, d) = (y % n, y / n);
        let b2 = if e == 1 { self.phi[b as usize] } else { b };
        self.base.mul(a, b2) + ((e ^ d) * n)
    }
}

/// Every homomorphism G -> C2, as a parity bit per element. The trivial one comes first.
pub fn homs_to_c2(g: &GroupTable) -> Vec<Vec<bool>> {
    let k = g.generators().len();
    let n = g.order();
    let mut out = Vec::new();
    'assign: for bits in 0u32..(1 << k) {
        let mut val = vec![u8::MAX; n];
        val[0] = 0;
        let mut queue = vec![0u32];
        let mut q = 0;
        while q < queue.len() {
            let x = queue[q];
            for gi in 0..k {
                let y = g.right_table(gi)[x as usize];
                let v = val[x as usize] ^ ((bits >> gi) & 1) as u8;
                if val[y as usize] == u8::MAX {
                    val[y as usize] = v;
                    queue.push(y);
                } else if val[y as usize] != v {
                    continue 'assign;
                }
            }
            q += 1;
        }
        let h: Vec<bool> = val.iter().map(|&v| v == 1).collect();
        if !out.contains(&h) {
            out.push(h);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct InversionSurvey {
    /// Ordered pairs (x, y) generating G.
    pub generating_pairs: u64,
    /// Of those, pairs inverted simultaneously by some automorphism.
    pub inverted: u64,
    /// Smallest counterexample by (x, y) ids, x a class representative.
    pub first_counterexample: Option<(u32, u32)>,
}

impl InversionSurvey {
    pub fn all_inverted(&self) -> bool {
        self.first_counterexample.is_none()
    }
}

/// Checks every generating pair for an automorphism inverting both entries.
///
/// `x` runs over conjugacy-class representatives and each hit is weighted by
/// the class size; both properties are invariant under simultaneous
/// conjugation. With `aut_action` set, only automorphisms induced by
/// conjugation with elements of that permutation group count.
pub fn simultaneous_inversion_survey(g: &GroupTable, aut_action: Option<&PermGroupSpec>) -> Result<InversionSurvey> {
    g.ensure_dense();
    let classes = conjugacy_classes(g);
    let n = g.order() as u32;
    let auts: Option<Vec<crate::perm::Perm>> = match aut_action {
        Some(spec) => {
            if g.perm_degree() != Some(spec.degree) {
                return Err(Error::InvalidParameters("aut_action degree differs from group".into()));
            }
            Some(spec.elements(super::DEFAULT_CAP)?)
        }
        None => None,
    };
    let jobs: Vec<(u32, u64)> = classes.iter().map(|c| (c[0], c.len() as u64)).collect();
    let per: Vec<(u64, u64, Option<(u32, u32)>)> = jobs
        .par_iter()
        .map(|&(x, weight)| {
            let (mut gen, mut inv, mut first) = (0u64, 0u64, None);
            let xi = g.inv(x);
            for y in 0..n {
                if closure_size(g, &[x, y]) != g.order() {
                    continue;
                }
                gen += weight;
                let ok = match &auts {
                    None => hom_extension_exists(g, &[x, y], &[xi, g.inv(y)]).unwrap_or(false),
                    Some(list) => {
                        let (px, py) = (g.as_perm(x).unwrap(), g.as_perm(y).unwrap());
                        let (pxi, pyi) = (px.inverse(), py.inverse());
                        list.iter().any(|s| px.conjugate(s) == pxi && py.conjugate(s) == pyi)
                    }
                };
                if ok {
                    inv += weight;
                } else if first.is_none() {
                    first = Some((x, y));
                }
            }
            (gen, inv, first)
        })
        .collect();
    let mut out = InversionSurvey { generating_pairs: 0, inverted: 0, first_counterexample: None };
    for (gen, inv, first) in per {
        out.generating_pairs += gen;
        out.inverted += inv;
        if out.first_counterexample.is_none() {
            out.first_counterexample = first;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn table(deg: usize, gens: &[&str]) -> GroupTable {
        GroupTable::from_permutations(&PermGroupSpec::parse(deg, gens).unwrap(), 1 << 20).unwrap()
    }

    fn id(g: &GroupTable, s: &str) -> u32 {
        g.find_perm(&Perm::parse(s, g.perm_degree()).unwrap()).unwrap()
    }

    #[test]
    fn s3_swap_extends() {
        let g = table(3, &["(1,2)", "(2,3)"]);
        let (a, b) = (id(&g, "(1,2)"), id(&g, "(2,3)"));
        assert!(hom_extension_exists(&g, &[a, b], &[b, a]).unwrap());
        assert!(hom_extension_exists(&g, &[a, b], &[a, b]).unwrap());
        assert!(!hom_extension_exists(&g, &[a, b], &[a, a]).unwrap());
        assert!(matches!(hom_extension_exists(&g, &[a], &[a]), Err(Error::NotGenerating)));
    }

    #[test]
    fn s6_chiral_pair_not_inverted() {
        let g = table(6, &["(1,2,3,4,5,6)", "(1,2)"]);
        let x = id(&g, "(1,2,3,4,5,6)");
        let y = id(&g, "(1,2)(3,5)");
        assert!(!hom_extension_exists(&g, &[x, y], &[g.inv(x), g.inv(y)]).unwrap());
    }

    #[test]
    fn parity_homs() {
        let s4 = table(4, &["(1,2,3,4)", "(1,2)"]);
        assert_eq!(homs_to_c2(&s4).len(), 2);
        let v4 = table(4, &["(1,2)", "(3,4)"]);
        assert_eq!(homs_to_c2(&v4).len(), 4);
        let a4 = table(4, &["(1,2,3)", "(2,3,4)"]);
        assert_eq!(homs_to_c2(&a4).len(), 1);
    }
}
