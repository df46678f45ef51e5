//! Parent groups N(T), epimorphism specs, forbidden automorphisms and the
//! coset construction of flag maps.
//!
//! Flags of a built map are pairs `(g, j)` numbered `g * n_T + j`, where `j`
//! indexes the transversal of N(T) in Gamma and `R_i` acts by the rewrite
//! `e_j R_i = w e_k`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{EtClass, Op};
use crate::error::{Error, Result};
use crate::group::{
    extend_by_alpha, hom_extension, hom_extension_exists, homs_to_c2, nilpotent_gpef, GroupTable, Semidirect,
};
use crate::map::FlagMap;
use crate::perm::{Perm, PermGroupSpec};

use EtClass::*;

// rvalue promotion does not reach const fn calls
macro_rules! konst {
    ($t:ty, $e:expr) => {{
        const V: &[$t] = &$e;
        V
    }};
}

/// A parent generator: name, word in R0 R1 R2 (letters 0..2), involutory or free.
#[derive(Clone, Copy, Debug)]
pub struct ParentGen {
    pub name: &'static str,
    pub word: &'static [u8],
    pub involution: bool,
}

const fn inv(name: &'static str, word: &'static [u8]) -> ParentGen {
    ParentGen { name, word, involution: true }
}

const fn free(name: &'static str, word: &'static [u8]) -> ParentGen {
    ParentGen { name, word, involution: false }
}

/// Classes with a direct builder.
pub const REPRESENTATIVES: [EtClass; 7] = [C1, C2, C2Ex, C2PEx, C3, C4, C5];

pub fn parent_generators(t: EtClass) -> &'static [ParentGen] {
    match t {
        C1 => konst!(ParentGen, [inv("R0", &[0]), inv("R1", &[1]), inv("R2", &[2])]),
        C2 => konst!(ParentGen, [inv("S1", &[1]), inv("S2", &[0, 1, 0]), inv("S3", &[2])]),
        C2Ex => konst!(ParentGen, [inv("S1", &[2]), free("S", &[0, 1])]),
        C2PEx => konst!(ParentGen, [free("X", &[1, 2]), inv("Y", &[0, 2])]),
        C3 => konst!(ParentGen, [inv("S0", &[1]), inv("S1", &[0, 1, 0]), inv("S2", &[2, 1, 2]), inv("S3", &[0, 2, 1, 0, 2])]),
        C4 => konst!(ParentGen, [inv("S1", &[1]), inv("S2", &[2, 1, 2]), free("S", &[0, 1, 2, 0])]),
        C5 => konst!(ParentGen, [free("S", &[1, 2]), free("S'", &[0, 1, 2, 0])]),
        _ => konst!(ParentGen, []),
    }
}

fn transversal(t: EtClass) -> &'static [&'static [u8]] {
    match t {
        C1 => &[&[]],
        C2 | C2Ex => &[&[], &[0]],
        C2PEx => &[&[], &[2]],
        _ => &[&[], &[0], &[2], &[0, 2]],
    }
}

/// One rewrite entry: word over parent generators `(index, inverted)` and target index.
pub type Rewrite = (&'static [(usize, bool)], usize);

const ID: &[(usize, bool)] = &[];

/// `e_j R_i = w e_k`, indexed `[j][i]`.
pub fn rewrite_table(t: EtClass) -> Vec<[Rewrite; 3]> {
    const G0: &[(usize, bool)] = &[(0, false)];
    const G1: &[(usize, bool)] = &[(1, false)];
    const G2: &[(usize, bool)] = &[(2, false)];
    const G3: &[(usize, bool)] = &[(3, false)];
    const G0I: &[(usize, bool)] = &[(0, true)];
    const G1I: &[(usize, bool)] = &[(1, true)];
    const G2I: &[(usize, bool)] = &[(2, true)];
    match t {
        C1 => vec![[(G0, 0), (G1, 0), (G2, 0)]],
        C2 => vec![[(ID, 1), (G0, 0), (G2, 0)], [(ID, 0), (G1, 1), (G2, 1)]],
        C2Ex => vec![[(ID, 1), (G1I, 1), (G0, 0)], [(ID, 0), (G1, 0), (G0, 1)]],
        C2PEx => vec![[(G1, 1), (G0, 1), (ID, 1)], [(G1, 0), (G0I, 0), (ID, 0)]],
        C3 => vec![
            [(ID, 1), (G0, 0), (ID, 2)],
            [(ID, 0), (G1, 1), (ID, 3)],
            [(ID, 3), (G2, 2), (ID, 0)],
            [(ID, 2), (G3, 3), (ID, 1)],
        ],
        C4 => vec![
            [(ID, 1), (G0, 0), (ID, 2)],
            [(ID, 0), (G2, 3), (ID, 3)],
            [(ID, 3), (G1, 2), (ID, 0)],
            [(ID, 2), (G2I, 1), (ID, 1)],
        ],
        C5 => vec![
            [(ID, 1), (G0, 2), (ID, 2)],
            [(ID, 0), (G1, 3), (ID, 3)],
            [(ID, 3), (G0I, 0), (ID, 0)],
            [(ID, 2), (G1I, 1), (ID, 1)],
        ],
        _ => Vec::new(),
    }
}

/// Reduced words in Gamma = V4 * C2: syllables are a nonzero V4 mask
/// (bit 0 = R0, bit 1 = R2) or R1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct GammaWord(Vec<u8>);

const R1_TOKEN: u8 = 4;

impl GammaWord {
    fn push(&mut self, letter: u8) {
        if letter == 1 {
            if self.0.last() == Some(&R1_TOKEN) {
                self.0.pop();
            } else {
                self.0.push(R1_TOKEN);
            }
            return;
        }
        let bit = if letter == 0 { 1 } else { 2 };
        match self.0.last_mut() {
            Some(m) if *m != R1_TOKEN => {
                *m ^= bit;
                if *m == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push(bit),
        }
    }

    fn from_letters(ls: &[u8]) -> GammaWord {
        let mut w = GammaWord::default();
        for &l in ls {
            w.push(l);
        }
        w
    }

    fn extend_word(&mut self, ls: &[u8], inverse: bool) {
        // every letter is an involution, so the inverse is the reversal
        if inverse {
            ls.iter().rev().for_each(|&l| self.push(l));
        } else {
            ls.iter().for_each(|&l| self.push(l));
        }
    }
}

/// Checks `e_j R_i = w e_k` in Gamma for every entry. Returns the failures.
pub fn rewrite_soundness(t: EtClass) -> Vec<String> {
    let gens = parent_generators(t);
    let tr = transversal(t);
    let mut bad = Vec::new();
    for (j, row) in rewrite_table(t).iter().enumerate() {
        for (i, &(w, k)) in row.iter().enumerate() {
            let mut lhs = GammaWord::from_letters(tr[j]);
            lhs.push(i as u8);
            let mut rhs = GammaWord::default();
            for &(g, inverse) in w {
                rhs.extend_word(gens[g].word, inverse);
            }
            rhs.extend_word(tr[k], false);
            if lhs != rhs {
                bad.push(format!("class {t}: e_{j} R{i} != w e_{k}"));
            }
        }
    }
    bad
}

/// Composes table entries formally and checks `r_i^2` and `(r0 r2)^2` act
/// trivially on `(g, j)` for a free symbol `g`, reducing in N(T).
pub fn rewrite_relations_hold(t: EtClass) -> bool {
    let table = rewrite_table(t);
    let gens = parent_generators(t);
    let run = |j0: usize, seq: &[usize]| -> bool {
        let mut j = j0;
        let mut word: Vec<(usize, bool)> = Vec::new();
        for &i in seq {
            let (w, k) = table[j][i];
            word.extend_from_slice(w);
            j = k;
        }
        if j != j0 {
            return false;
        }
        if t == C1 {
            let mut g = GammaWord::default();
            for &(s, inverse) in &word {
                g.extend_word(gens[s].word, inverse);
            }
            return g.0.is_empty();
        }
        // free product of C2 and Z factors
        let mut stack: Vec<(usize, i64)> = Vec::new();
        for (s, inverse) in word {
            let e = if inverse { -1 } else { 1 };
            match stack.last_mut() {
                Some((top, ex)) if *top == s => {
                    *ex += e;
                    if gens[s].involution {
                        *ex = ex.rem_euclid(2);
                    }
                    if *ex == 0 {
                        stack.pop();
                    }
                }
                _ => stack.push((s, e)),
            }
        }
        stack.is_empty()
    };
    (0..table.len()).all(|j| [&[0, 0][..], &[1, 1], &[2, 2], &[0, 2, 0, 2]].iter().all(|seq| run(j, seq)))
}

/// A forbidden automorphism: generator `i` maps to `target[i]` (index, inverted).
#[derive(Clone, Copy, Debug)]
pub struct Pattern {
    pub target: &'static [(usize, bool)],
    /// Class of the index-2 overgroup this automorphism lifts to.
    pub overgroup: EtClass,
    pub text: &'static str,
}

pub fn forbidden_patterns(t: EtClass) -> &'static [Pattern] {
    const fn p(target: &'static [(usize, bool)], overgroup: EtClass, text: &'static str) -> Pattern {
        Pattern { target, overgroup, text }
    }
    const F: bool = false;
    const T: bool = true;
    match t {
        C2 => konst!(Pattern, [p(&[(1, F), (0, F), (2, F)], C1, "(S1,S2,S3)->(S2,S1,S3)")]),
        C2Ex => konst!(Pattern, [p(&[(0, F), (1, T)], C1, "(S1,S)->(S1,S^-1)")]),
        C2PEx => konst!(Pattern, [p(&[(0, T), (1, F)], C1, "(X,Y)->(X^-1,Y)")]),
        C3 => konst!(Pattern, [
            p(&[(1, F), (0, F), (3, F), (2, F)], C2S, "(S0 S1)(S2 S3)"),
            p(&[(2, F), (3, F), (0, F), (1, F)], C2, "(S0 S2)(S1 S3)"),
            p(&[(3, F), (2, F), (1, F), (0, F)], C2P, "(S0 S3)(S1 S2)"),
        ]),
        C4 => konst!(Pattern, [p(&[(1, F), (0, F), (2, T)], C2, "(S1,S2,S)->(S2,S1,S^-1)")]),
        C5 => konst!(Pattern, [
            p(&[(0, T), (1, T)], C2, "(S,S')->(S^-1,S'^-1)"),
            p(&[(1, F), (0, F)], C2SEx, "(S,S')->(S',S)"),
            p(&[(1, T), (0, T)], C2PEx, "(S,S')->(S'^-1,S^-1)"),
        ]),
        _ => konst!(Pattern, []),
    }
}

/// Target group description inside a spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDesc {
    Family(Family),
    Perm {
        degree: usize,
        /// Generators of the target, cycle notation. Empty means the group the images generate.
        #[serde(default)]
        generators: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Gpef { p: u32, e: u32, f: u32 },
    Alpha { e: u32 },
}

impl GroupDesc {
    /// Enumerate the described group. A permutation description needs explicit generators.
    pub fn table(&self, cap: usize) -> Result<GroupTable> {
        match self {
            GroupDesc::Perm { degree, generators } => {
                if generators.is_empty() {
                    return Err(Error::InvalidParameters("group needs generators".into()));
                }
                let gs = generators.iter().map(|s| Perm::parse(s, Some(*degree))).collect::<Result<Vec<_>>>()?;
                GroupTable::from_permutations(&PermGroupSpec::new(gs)?, cap)
            }
            GroupDesc::Family(Family::Gpef { p, e, f }) => nilpotent_gpef(*p, *e, *f),
            GroupDesc::Family(Family::Alpha { e }) => Ok(extend_by_alpha(*e)?.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpimorphismSpec {
    pub class: EtClass,
    pub group: GroupDesc,
    /// Parent generator name to image (cycle notation or normal-form exponents).
    pub images: BTreeMap<String, String>,
}

/// A spec with its target enumerated and images as element ids.
pub struct Resolved {
    pub spec: EpimorphismSpec,
    pub table: GroupTable,
    pub imgs: Vec<u32>,
    target_order: Option<usize>,
}

fn parse_exponents(s: &str) -> Result<Vec<u32>> {
    let nums: Vec<u32> = s
        .split(|c: char| !c.is_ascii_digit())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
        .collect::<Result<_>>()?;
    // "g^i h^j a^k" and "i,j,k" both reduce to the exponent list
    Ok(nums)
}

impl EpimorphismSpec {
    pub fn from_json(s: &str) -> Result<EpimorphismSpec> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialisable")
    }

    /// Spec over the permutation group generated by `images` (in parent-generator order).
    pub fn from_perms(class: EtClass, images: &[Perm]) -> Result<EpimorphismSpec> {
        let gens = parent_generators(class);
        if gens.is_empty() {
            return Err(Error::InvalidParameters(format!("class {class} has no direct builder")));
        }
        if gens.len() != images.len() {
            return Err(Error::InvalidParameters(format!("class {class} needs {} images", gens.len())));
        }
        let degree = images[0].degree();
        let images = gens.iter().zip(images).map(|(g, p)| (g.name.to_string(), p.to_string())).collect();
        Ok(EpimorphismSpec { class, group: GroupDesc::Perm { degree, generators: Vec::new() }, images })
    }

    pub fn parse_perms(class: EtClass, degree: usize, images: &[&str]) -> Result<EpimorphismSpec> {
        let ps = images.iter().map(|s| Perm::parse(s, Some(degree))).collect::<Result<Vec<_>>>()?;
        EpimorphismSpec::from_perms(class, &ps)
    }

    /// Same target, with the images replaced by elements of `table` (which must be the resolved target).
    pub fn with_ids(&self, class: EtClass, table: &GroupTable, ids: &[u32]) -> EpimorphismSpec {
        let images = parent_generators(class).iter().zip(ids).map(|(g, &x)| (g.name.to_string(), table.label(x))).collect();
        EpimorphismSpec { class, group: self.group.clone(), images }
    }

    /// Image strings in parent-generator order.
    pub fn ordered_images(&self) -> Result<Vec<&str>> {
        parent_generators(self.class)
            .iter()
            .map(|g| {
                self.images
                    .get(g.name)
                    .map(|s| s.as_str())
                    .ok_or_else(|| Error::InvalidParameters(format!("missing image for {}", g.name)))
            })
            .collect()
    }

    pub fn resolve(&self, cap: usize) -> Result<Resolved> {
        let gens = parent_generators(self.class);
        if gens.is_empty() {
            return Err(Error::InvalidParameters(format!("class {} has no direct builder", self.class)));
        }
        if self.images.len() != gens.len() {
            return Err(Error::InvalidParameters(format!(
                "class {} takes images for {}",
                self.class,
                gens.iter().map(|g| g.name).collect::<Vec<_>>().join(",")
            )));
        }
        let strs = self.ordered_images()?;
        match &self.group {
            GroupDesc::Perm { degree, generators } => {
                let perms = strs.iter().map(|s| Perm::parse(s, Some(*degree))).collect::<Result<Vec<_>>>()?;
                let table = GroupTable::from_permutations(&PermGroupSpec::new(perms)?, cap)?;
                let imgs = table.generators().to_vec();
                let target_order = if generators.is_empty() {
                    None
                } else {
                    let tg = generators.iter().map(|s| Perm::parse(s, Some(*degree))).collect::<Result<Vec<_>>>()?;
                    let missing = tg.iter().any(|p| table.find_perm(p).is_none());
                    let order = PermGroupSpec::new(tg)?.order(cap)?;
                    Some(if missing { 0 } else { order })
                };
                Ok(Resolved { spec: self.clone(), table, imgs, target_order })
            }
            GroupDesc::Family(f) => {
                let table = match f {
                    Family::Gpef { p, e, f } => nilpotent_gpef(*p, *e, *f)?,
                    Family::Alpha { e } => extend_by_alpha(*e)?.0,
                };
                let imgs = strs
                    .iter()
                    .map(|s| {
                        let ex = parse_exponents(s)?;
                        table.find_code(&ex).ok_or_else(|| Error::Parse(format!("bad normal form {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let target_order = Some(table.order());
                Ok(Resolved { spec: self.clone(), table, imgs, target_order })
            }
        }
    }
}

impl Resolved {
    pub fn class(&self) -> EtClass {
        self.spec.class
    }

    /// Relation and generation violations; empty when the spec is sound.
    pub fn check(&self) -> Vec<String> {
        let t = self.class();
        let g = &self.table;
        let gens = parent_generators(t);
        let mut out = Vec::new();
        for (pg, &x) in gens.iter().zip(&self.imgs) {
            if pg.involution && g.mul(x, x) != 0 {
                out.push(format!("{}^2 != 1", pg.name));
            }
        }
        if t == C1 {
            let p = g.mul(self.imgs[0], self.imgs[2]);
            if g.mul(p, p) != 0 {
                out.push("(R0R2)^2 != 1".into());
            }
        }
        let generated = if self.target_order.is_some() && matches!(self.spec.group, GroupDesc::Family(_)) {
            g.generates(&self.imgs)
        } else {
            true
        };
        let target_ok = match (&self.spec.group, self.target_order) {
            (GroupDesc::Perm { .. }, Some(o)) => o == g.order(),
            _ => true,
        };
        if !generated || !target_ok {
            out.push("images do not generate the target".into());
        }
        out
    }

    pub fn check_ok(&self) -> Result<()> {
        let v = self.check();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::SpecViolation(v))
        }
    }

    /// Indices of the matched forbidden patterns.
    pub fn forbidden_matches(&self) -> Vec<usize> {
        matched_patterns(&self.table, self.class(), &self.imgs)
    }

    pub fn has_forbidden_automorphism(&self) -> bool {
        !self.forbidden_matches().is_empty()
    }

    pub fn expected_class(&self) -> EtClass {
        expected_class_of(&self.table, self.class(), &self.imgs)
    }

    pub fn build_map(&self) -> Result<FlagMap> {
        self.check_ok()?;
        Ok(build_flags(&self.table, self.class(), &self.imgs))
    }

    pub fn transform(&self, ops: &[Op]) -> Result<FlagMap> {
        let m = self.build_map()?;
        Ok(ops.iter().fold(m, |m, op| op.apply(&m)))
    }

    /// Can the routed map be orientable without boundary?
    pub fn even_possible(&self, ops: &[Op]) -> bool {
        let req = required_parities(self.class(), ops);
        parity_feasible(&homs_to_c2(&self.table), &self.imgs, &req)
    }
}

fn pattern_images(g: &GroupTable, imgs: &[u32], p: &Pattern) -> Vec<u32> {
    p.target.iter().map(|&(k, inverse)| if inverse { g.inv(imgs[k]) } else { imgs[k] }).collect()
}

/// Cheap necessary condition: orders of images and pairwise products agree.
fn orders_compatible(g: &GroupTable, a: &[u32], b: &[u32]) -> bool {
    for i in 0..a.len() {
        if g.element_order(a[i]) != g.element_order(b[i]) {
            return false;
        }
        for j in i + 1..a.len() {
            if g.element_order(g.mul(a[i], a[j])) != g.element_order(g.mul(b[i], b[j])) {
                return false;
            }
        }
    }
    true
}

pub fn matched_patterns(g: &GroupTable, t: EtClass, imgs: &[u32]) -> Vec<usize> {
    forbidden_patterns(t)
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            let dst = pattern_images(g, imgs, p);
            orders_compatible(g, imgs, &dst) && hom_extension_exists(g, imgs, &dst).unwrap_or(false)
        })
        .map(|(i, _)| i)
        .collect()
}

/// Class of the built map predicted from the matched patterns.
pub fn expected_class_of(g: &GroupTable, t: EtClass, imgs: &[u32]) -> EtClass {
    let pats = forbidden_patterns(t);
    let hits = matched_patterns(g, t, imgs);
    match (t, hits.len()) {
        (_, 0) => t,
        (C2 | C2Ex | C2PEx, _) => C1,
        (C3 | C5, 1) => pats[hits[0]].overgroup,
        (C3 | C5, _) => C1,
        (C4, _) => {
            // Lift to N(2)/M = A x| <t>, t acting by the matched automorphism,
            // and test the class-2 swap there.
            let dst = pattern_images(g, imgs, &pats[0]);
            let phi = hom_extension(g, imgs, &dst).ok().flatten().expect("matched pattern extends");
            let b = Semidirect { base: g, phi };
            let (s1, s) = (imgs[0], imgs[2]);
            let src = [b.pair(s1, 0), b.pair(s, 1), b.pair(0, 1)];
            let swap = [b.pair(s, 1), b.pair(s1, 0), b.pair(0, 1)];
            if hom_extension_exists(&b, &src, &swap).unwrap_or(false) {
                C1
            } else {
                C2
            }
        }
        _ => t,
    }
}

/// Flag map of the epimorphism: flag `(g, j)` has number `g * n + j`.
pub fn build_flags(g: &GroupTable, t: EtClass, imgs: &[u32]) -> FlagMap {
    let table = rewrite_table(t);
    let n = table.len();
    let size = g.order();
    let mut right: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    let element = |w: &[(usize, bool)]| -> u32 {
        w.iter().fold(0u32, |acc, &(k, inverse)| g.mul(acc, if inverse { g.inv(imgs[k]) } else { imgs[k] }))
    };
    let mut r: [Vec<u32>; 3] = [vec![0; size * n], vec![0; size * n], vec![0; size * n]];
    for (j, row) in table.iter().enumerate() {
        for (i, &(w, k)) in row.iter().enumerate() {
            let x = element(w);
            let mult = right.entry(x).or_insert_with(|| g.right_mult(x));
            for a in 0..size {
                r[i][a * n + j] = mult[a] * n as u32 + k as u32;
            }
        }
    }
    let [r0, r1, r2] = r;
    FlagMap::from_images(r0, r1, r2).expect("rewrite tables give a valid connected map")
}

/// Parity each parent generator must have under a hom to C2 for the routed
/// map to be orientable without boundary.
pub fn required_parities(t: EtClass, ops: &[Op]) -> Vec<bool> {
    // final generator i as a mask over the original R0, R1, R2
    let mut masks = [1u8, 2, 4];
    for op in ops {
        masks = match op {
            Op::D => [masks[2], masks[1], masks[0]],
            Op::P => [masks[0] ^ masks[2], masks[1], masks[2]],
        };
    }
    // character c on R0..R2 with c(mask_i) = 1 for every final generator
    let c = (0u8..8)
        .find(|&c| masks.iter().all(|&m| (c & m).count_ones() % 2 == 1))
        .expect("masks form a basis");
    parent_generators(t)
        .iter()
        .map(|pg| pg.word.iter().filter(|&&l| c >> l & 1 == 1).count() % 2 == 1)
        .collect()
}

fn parity_feasible(homs: &[Vec<bool>], imgs: &[u32], req: &[bool]) -> bool {
    homs.iter().any(|h| imgs.iter().zip(req).all(|(&x, &r)| h[x as usize] == r))
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Collect every witness rather than stopping at `limit`.
    pub exhaustive: bool,
    /// Keep one witness per Aut(G)-orbit.
    pub up_to_automorphism: bool,
    pub limit: Option<usize>,
    /// Only accept tuples whose routed map can be orientable without boundary.
    pub even: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum SearchOutcome {
    Witnesses { tuples: Vec<Vec<u32>>, checked: u64 },
    ProvedEmpty { checked: u64 },
}

impl SearchOutcome {
    pub fn is_empty(&self) -> bool {
        matches!(self, SearchOutcome::ProvedEmpty { .. })
    }

    pub fn witnesses(&self) -> &[Vec<u32>] {
        match self {
            SearchOutcome::Witnesses { tuples, .. } => tuples,
            SearchOutcome::ProvedEmpty { .. } => &[],
        }
    }
}

/// Search for epimorphisms N(T) -> G whose routed map lies in class `target`.
///
/// The pivot coordinate runs over conjugacy-class representatives only:
/// generation, forbidden patterns and parity are all invariant under
/// simultaneous conjugation.
pub fn search_epimorphisms(target: EtClass, g: &GroupTable, opts: &SearchOptions) -> Result<SearchOutcome> {
    let (rep, ops) = target.route();
    let gens = parent_generators(rep);
    g.ensure_dense();
    let n = g.order() as u32;
    let homs = homs_to_c2(g);
    let req = required_parities(rep, ops);
    if opts.even && req.contains(&true) && !homs.iter().any(|h| h.contains(&true)) {
        return Ok(SearchOutcome::ProvedEmpty { checked: 0 });
    }
    let invols: Vec<u32> = (0..n).filter(|&x| g.mul(x, x) == 0).collect();
    let everything: Vec<u32> = (0..n).collect();
    let mut is_rep = vec![false; n as usize];
    for c in crate::group::conjugacy_classes(g) {
        is_rep[c[0] as usize] = true;
    }
    let pools: Vec<&[u32]> = gens.iter().map(|pg| if pg.involution { &invols[..] } else { &everything[..] }).collect();
    // class 1 pivots on R1, since R0 and R2 are coupled
    let pivot = if rep == C1 { 1 } else { 0 };
    let pivots: Vec<u32> = pools[pivot].iter().copied().filter(|&x| is_rep[x as usize]).collect();
    let order: Vec<usize> = std::iter::once(pivot).chain((0..gens.len()).filter(|&k| k != pivot)).collect();
    let transitive_target = g.perm_degree().is_some() && {
        let ps: Vec<Perm> = g.generators().iter().map(|&x| g.as_perm(x).unwrap()).collect();
        PermGroupSpec { degree: ps[0].degree(), generators: ps }.is_transitive()
    };

    let accept = |tuple: &[u32]| -> bool {
        if transitive_target && !images_transitive(g, tuple) {
            return false;
        }
        if !g.generates(tuple) {
            return false;
        }
        if opts.even && !parity_feasible(&homs, tuple, &req) {
            return false;
        }
        matched_patterns(g, rep, tuple).is_empty()
    };

    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut checked = 0u64;
    let limit = if opts.exhaustive { usize::MAX } else { opts.limit.unwrap_or(1) };
    for &pv in &pivots {
        // the second coordinate shards the work
        let results: Vec<(u64, Vec<Vec<u32>>)> = if order.len() == 1 {
            let t = vec![pv];
            vec![(1, if accept(&t) { vec![t] } else { Vec::new() })]
        } else {
            pools[order[1]]
                .par_iter()
                .map(|&a| {
                    let mut tuple = vec![0u32; gens.len()];
                    tuple[order[0]] = pv;
                    tuple[order[1]] = a;
                    let mut local = Vec::new();
                    let mut count = 0u64;
                    let mut visit = |t: &[u32]| {
                        count += 1;
                        if accept(t) {
                            local.push(t.to_vec());
                        }
                    };
                    enumerate_rest(g, rep, &order[2..], &pools, &mut tuple, &mut visit);
                    (count, local)
                })
                .collect()
        };
        for (c, w) in results {
            checked += c;
            found.extend(w);
        }
        if found.len() >= limit && !opts.up_to_automorphism {
            break;
        }
    }
    found.sort();
    if opts.up_to_automorphism {
        let mut kept: Vec<Vec<u32>> = Vec::new();
        for w in found {
            if !kept.iter().any(|k| hom_extension_exists(g, &w, k).unwrap_or(false)) {
                kept.push(w);
            }
        }
        found = kept;
    }
    found.truncate(limit);
    Ok(if found.is_empty() {
        SearchOutcome::ProvedEmpty { checked }
    } else {
        SearchOutcome::Witnesses { tuples: found, checked }
    })
}

fn enumerate_rest(
    g: &GroupTable,
    rep: EtClass,
    rest: &[usize],
    pools: &[&[u32]],
    tuple: &mut Vec<u32>,
    f: &mut dyn FnMut(&[u32]),
) {
    let Some((&k, tail)) = rest.split_first() else {
        if rep == C1 {
            let p = g.mul(tuple[0], tuple[2]);
            if g.mul(p, p) != 0 {
                return;
            }
        }
        f(tuple);
        return;
    };
    for &x in pools[k] {
        tuple[k] = x;
        enumerate_rest(g, rep, tail, pools, tuple, f);
    }
}

fn images_transitive(g: &GroupTable, tuple: &[u32]) -> bool {
    let perms: Vec<Perm> = tuple.iter().map(|&x| g.as_perm(x).unwrap()).collect();
    PermGroupSpec { degree: perms[0].degree(), generators: perms }.is_transitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::classify;

    #[test]
    fn rewrite_tables_are_sound() {
        for t in REPRESENTATIVES {
            assert!(rewrite_soundness(t).is_empty(), "{:?}", rewrite_soundness(t));
            assert!(rewrite_relations_hold(t), "{t}");
        }
    }

    #[test]
    fn required_parities_for_routes() {
        assert_eq!(required_parities(C1, &[]), vec![true; 3]);
        assert_eq!(required_parities(C4, &[Op::D, Op::P]), vec![true, true, true]);
        assert_eq!(required_parities(C4, &[]), vec![true, true, false]);
        assert_eq!(required_parities(C5, &[]), vec![false, false]);
        assert_eq!(required_parities(C5, &[Op::D, Op::P]), vec![true, true]);
        assert_eq!(required_parities(C2, &[Op::D, Op::P]), vec![true, true, false]);
        assert_eq!(required_parities(C2Ex, &[Op::D]), vec![true, false]);
    }

    #[test]
    fn spec_json_and_check() {
        let s = EpimorphismSpec::parse_perms(C2PEx, 4, &["(1,2,3,4)", "(1,3)"]).unwrap();
        let back = EpimorphismSpec::from_json(&s.to_json()).unwrap();
        assert_eq!(s, back);
        let r = s.resolve(DEFAULT).unwrap();
        assert!(r.check().is_empty());
        let bad = EpimorphismSpec::parse_perms(C2, 3, &["(1,2,3)", "(1,2)", "(2,3)"]).unwrap();
        assert_eq!(bad.resolve(DEFAULT).unwrap().check(), vec!["S1^2 != 1".to_string()]);
    }

    const DEFAULT: usize = crate::group::DEFAULT_CAP;

    #[test]
    fn classify_matches_expected_on_s4() {
        let g = GroupTable::from_permutations(&PermGroupSpec::parse(4, &["(1,2,3,4)", "(1,2)"]).unwrap(), DEFAULT).unwrap();
        for rep in REPRESENTATIVES {
            let opts = SearchOptions { exhaustive: true, ..Default::default() };
            let SearchOutcome::Witnesses { tuples, .. } = search_epimorphisms(rep, &g, &opts).unwrap() else {
                continue;
            };
            for t in tuples.iter().take(20) {
                let m = build_flags(&g, rep, t);
                assert_eq!(classify(&m), Some(rep), "{rep} {t:?}");
            }
        }
    }

    fn all_generating_tuples(g: &GroupTable, rep: EtClass) -> Vec<Vec<u32>> {
        let n = g.order() as u32;
        let gens = parent_generators(rep);
        let mut out = vec![Vec::new()];
        for pg in gens {
            let pool: Vec<u32> = (0..n).filter(|&x| !pg.involution || g.mul(x, x) == 0).collect();
            out = out.into_iter().flat_map(|t: Vec<u32>| pool.iter().map(move |&x| [t.clone(), vec![x]].concat())).collect();
        }
        out.retain(|t| {
            let ok = rep != C1 || {
                let p = g.mul(t[0], t[2]);
                g.mul(p, p) == 0
            };
            ok && g.generates(t)
        });
        out
    }

    #[test]
    fn expected_class_agrees_with_classify() {
        for gens in [&["(1,2,3,4)", "(1,3)"][..], &["(1,2,3)", "(1,2)(3,4)"], &["(1,2,3,4)", "(1,2)"]] {
            let g = GroupTable::from_permutations(&PermGroupSpec::parse(4, gens).unwrap(), DEFAULT).unwrap();
            g.ensure_dense();
            for rep in REPRESENTATIVES {
                for t in all_generating_tuples(&g, rep).iter().step_by(7) {
                    let m = build_flags(&g, rep, t);
                    assert_eq!(classify(&m), Some(expected_class_of(&g, rep, t)), "{rep} {t:?}");
                }
            }
        }
    }
}
