//! Finite groups as enumerated element sets with a product oracle.
//!
//! Element ids follow breadth-first discovery from the identity (id 0) by
//! right multiplication with the generators in order, so every report built
//! on ids is reproducible.

mod chars;
mod classes;
mod hom;
mod nilpotent;
mod series;

use std::hash::Hash;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroupSpec};

pub use chars::{count_triples_brute, frobenius_count, CharacterTable};
pub use classes::{conjugacy_classes, involutions, strongly_real};
pub use hom::{
    hom_extension, hom_extension_exists, homs_to_c2, simultaneous_inversion_survey, InversionSurvey,
    Semidirect,
};
pub use nilpotent::{extend_by_alpha, nilpotent_gpef, AlphaGens};
pub use series::{
    center, derived_length, derived_series, derived_subgroup, nilpotence_class, quotient,
    upper_central_series, Subgroup,
};

pub const DEFAULT_CAP: usize = 10_000_000;
const DENSE_LIMIT: usize = 2048;

/// Minimal product interface shared by tables and derived views.
pub trait GroupOps: Sync {
    fn order(&self) -> usize;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn identity(&self) -> u32 {
        0
    }
}

pub struct GroupTable {
    gens: Vec<u32>,
    inv: Vec<u32>,
    right: Vec<Vec<u32>>,
    store: Store,
    dense: OnceLock<Vec<u32>>,
    orders: OnceLock<Vec<u32>>,
}

enum Store {
    Perm(PermStore),
    Code(CodeStore),
    Table { n: usize, table: Vec<u32> },
}

impl GroupOps for GroupTable {
    fn order(&self) -> usize {
        self.inv.len()
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        GroupTable::mul(self, a, b)
    }
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable(order {}, {} generators)", self.order(), self.gens.len())
    }
}

struct Bfs {
    parent: Vec<(u32, u32)>,
    right: Vec<Vec<u32>>,
}

impl GroupTable {
    pub fn from_permutations(g: &PermGroupSpec, cap: usize) -> Result<GroupTable> {
        if g.degree > u16::MAX as usize {
            return Err(Error::InvalidParameters(format!("degree {} too large", g.degree)));
        }
        let mut store = PermStore::new(g.degree);
        let id: Vec<u16> = (0..g.degree as u16).collect();
        store.insert(&id);
        let gens16: Vec<Vec<u16>> =
            g.generators.iter().map(|p| p.images().iter().map(|&x| x as u16).collect()).collect();
        let k = gens16.len();
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); k];
        let mut parent = vec![(u32::MAX, u32::MAX)];
        let mut buf = vec![0u16; g.degree];
        let mut cur = 0usize;
        while cur < store.len() {
            for (gi, gp) in gens16.iter().enumerate() {
                let a = store.get(cur as u32);
                for (i, &x) in a.iter().enumerate() {
                    buf[i] = gp[x as usize];
                }
                let (id, fresh) = store.insert(&buf);
                if fresh {
                    if store.len() > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    parent.push((cur as u32, gi as u32));
                }
                right[gi].push(id);
            }
            cur += 1;
        }
        let gens: Vec<u32> = (0..k).map(|gi| right[gi][0]).collect();
        Ok(GroupTable::finish(Store::Perm(store), gens, Bfs { parent, right }))
    }

    /// Generic breadth-first enumeration over any hashable element type.
    fn from_oracle<E: Clone + Eq + Hash>(
        identity: E,
        gens: &[E],
        mul: impl Fn(&E, &E) -> E,
        cap: usize,
    ) -> Result<(Vec<E>, Bfs)> {
        let mut elems = vec![identity.clone()];
        let mut index: FxHashMap<E, u32> = FxHashMap::default();
        index.insert(identity, 0);
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut parent = vec![(u32::MAX, u32::MAX)];
        let mut cur = 0;
        while cur < elems.len() {
            for (gi, g) in gens.iter().enumerate() {
                let p = mul(&elems[cur], g);
                let id = match index.get(&p) {
                    Some(&id) => id,
                    None => {
                        if elems.len() >= cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        let id = elems.len() as u32;
                        index.insert(p.clone(), id);
                        elems.push(p);
                        parent.push((cur as u32, gi as u32));
                        id
                    }
                };
                right[gi].push(id);
            }
            cur += 1;
        }
        Ok((elems, Bfs { parent, right }))
    }

    fn finish(store: Store, gens: Vec<u32>, bfs: Bfs) -> GroupTable {
        let n = bfs.parent.len();
        let mut g = GroupTable {
            gens,
            inv: Vec::new(),
            right: bfs.right,
            store,
            dense: OnceLock::new(),
            orders: OnceLock::new(),
        };
        // inverse of each generator by walking its cycle, then along the BFS tree
        let gen_inv: Vec<u32> = (0..g.gens.len())
            .map(|gi| {
                let mut x = 0u32;
                loop {
                    let y = g.right[gi][x as usize];
                    if y == 0 {
                        return x;
                    }
                    x = y;
                }
            })
            .collect();
        let mut inv = vec![0u32; n];
        for k in 1..n {
            let (p, gi) = bfs.parent[k];
            inv[k] = g.store_mul(gen_inv[gi as usize], inv[p as usize]);
        }
        g.inv = inv;
        g
    }

    /// Dense table given directly; ids are relabelled by BFS from `gens`.
    pub fn from_table(n: usize, table: &[u32], identity: u32, gens: &[u32]) -> Result<GroupTable> {
        if table.len() != n * n {
            return Err(Error::InvalidParameters("table size".into()));
        }
        let (elems, bfs) =
            GroupTable::from_oracle(identity, gens, |&a, &b| table[a as usize * n + b as usize], n)?;
        if elems.len() != n {
            return Err(Error::NotGenerating);
        }
        let mut pos = vec![0u32; n];
        for (i, &e) in elems.iter().enumerate() {
            pos[e as usize] = i as u32;
        }
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                t[a * n + b] = pos[table[elems[a] as usize * n + elems[b] as usize] as usize];
            }
        }
        let new_gens: Vec<u32> = gens.iter().map(|&x| pos[x as usize]).collect();
        Ok(GroupTable::finish(Store::Table { n, table: t }, new_gens, bfs))
    }

    fn from_codes(kind: CodeKind, gens: &[u32], cap: usize) -> Result<GroupTable> {
        let (elems, bfs) = GroupTable::from_oracle(0u32, gens, |&a, &b| kind.mul(a, b), cap)?;
        let mut id_of = vec![u32::MAX; kind.code_space()];
        for (i, &c) in elems.iter().enumerate() {
            id_of[c as usize] = i as u32;
        }
        let gen_ids: Vec<u32> = gens.iter().map(|&c| id_of[c as usize]).collect();
        let store = Store::Code(CodeStore { kind, code: elems, id_of });
        Ok(GroupTable::finish(store, gen_ids, bfs))
    }

    #[inline]
    fn store_mul(&self, a: u32, b: u32) -> u32 {
        match &self.store {
            Store::Perm(s) => s.mul(a, b),
            Store::Code(s) => s.mul(a, b),
            Store::Table { n, table } => table[a as usize * n + b as usize],
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = self.dense.get() {
            return t[a as usize * self.order() + b as usize];
        }
        self.store_mul(a, b)
    }

    /// Precompute the full multiplication table for small groups.
    pub fn ensure_dense(&self) {
        let n = self.order();
        if n > DENSE_LIMIT || matches!(self.store, Store::Table { .. }) {
            return;
        }
        self.dense.get_or_init(|| {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = self.store_mul(a as u32, b as u32);
                }
            }
            t
        });
    }

    pub fn order(&self) -> usize {
        self.inv.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul(a, b);
        self.mul(self.mul(self.inv(a), self.inv(b)), ab)
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, a: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let (mut acc, mut sq) = (0u32, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> u32 {
        if let Some(o) = self.orders.get() {
            return o[a as usize];
        }
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Element orders for the whole group, cached.
    pub fn orders(&self) -> &[u32] {
        self.orders.get_or_init(|| (0..self.order() as u32).map(|a| self.element_order(a)).collect())
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gens;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Right multiplication by generator `gi` as an id map.
    pub fn right_table(&self, gi: usize) -> &[u32] {
        &self.right[gi]
    }

    /// Right multiplication by an arbitrary element.
    pub fn right_mult(&self, x: u32) -> Vec<u32> {
        if let Some(gi) = self.gens.iter().position(|&g| g == x) {
            return self.right[gi].clone();
        }
        (0..self.order() as u32).map(|a| self.mul(a, x)).collect()
    }

    pub fn perm_degree(&self) -> Option<usize> {
        match &self.store {
            Store::Perm(s) => Some(s.degree),
            _ => None,
        }
    }

    pub fn as_perm(&self, a: u32) -> Option<Perm> {
        match &self.store {
            Store::Perm(s) => Some(Perm::from_images_unchecked(s.get(a).iter().map(|&x| x as u32).collect())),
            _ => None,
        }
    }

    pub fn find_perm(&self, p: &Perm) -> Option<u32> {
        match &self.store {
            Store::Perm(s) if s.degree == p.degree() => {
                let img: Vec<u16> = p.images().iter().map(|&x| x as u16).collect();
                s.lookup(&img)
            }
            _ => None,
        }
    }

    /// Normal-form exponent vector for code-backed groups.
    pub fn code_of(&self, a: u32) -> Option<Vec<u32>> {
        match &self.store {
            Store::Code(s) => Some(s.kind.exponents(s.code[a as usize])),
            _ => None,
        }
    }

    pub fn find_code(&self, exps: &[u32]) -> Option<u32> {
        match &self.store {
            Store::Code(s) => {
                let c = s.kind.encode(exps)?;
                s.id_of.get(c as usize).copied().filter(|&x| x != u32::MAX)
            }
            _ => None,
        }
    }

    pub fn label(&self, a: u32) -> String {
        match &self.store {
            Store::Perm(_) => self.as_perm(a).unwrap().to_string(),
            Store::Code(s) => s.kind.label(s.code[a as usize]),
            Store::Table { .. } => format!("#{a}"),
        }
    }

    /// Subgroup generated by `gens` as a sorted member list.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        closure_with(self, gens, usize::MAX).0
    }

    /// True iff `gens` generate the whole group.
    pub fn generates(&self, gens: &[u32]) -> bool {
        closure_with(self, gens, self.order() / 2).1 == self.order()
    }
}

/// BFS closure. Stops early, reporting the full order, once the subgroup
/// exceeds `half` (a subgroup bigger than half the group is the group).
fn closure_with<G: GroupOps>(g: &G, gens: &[u32], half: usize) -> (Vec<u32>, usize) {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = vec![g.identity()];
    seen[g.identity() as usize] = true;
    let mut k = 0;
    while k < out.len() {
        let x = out[k];
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
                if out.len() > half {
                    return (Vec::new(), n);
                }
            }
        }
        k += 1;
    }
    let len = out.len();
    out.sort_unstable();
    (out, len)
}

pub(crate) fn closure_size<G: GroupOps>(g: &G, gens: &[u32]) -> usize {
    closure_with(g, gens, g.order() / 2).1
}

struct PermStore {
    degree: usize,
    flat: Vec<u16>,
    index: PermIndex,
}

enum PermIndex {
    P64(FxHashMap<u64, u32>),
    P128(FxHashMap<u128, u32>),
    Wide(FxHashMap<Box<[u16]>, u32>),
}

impl PermStore {
    fn new(degree: usize) -> PermStore {
        let index = if degree <= 16 {
            PermIndex::P64(FxHashMap::default())
        } else if degree <= 25 {
            PermIndex::P128(FxHashMap::default())
        } else {
            PermIndex::Wide(FxHashMap::default())
        };
        PermStore { degree, flat: Vec::new(), index }
    }

    fn len(&self) -> usize {
        if self.degree == 0 {
            return 1;
        }
        self.flat.len() / self.degree
    }

    #[inline]
    fn get(&self, id: u32) -> &[u16] {
        let d = self.degree;
        &self.flat[id as usize * d..(id as usize + 1) * d]
    }

    #[inline]
    fn pack64(img: &[u16]) -> u64 {
        img.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | (x as u64) << (4 * i))
    }

    #[inline]
    fn pack128(img: &[u16]) -> u128 {
        img.iter().enumerate().fold(0u128, |acc, (i, &x)| acc | (x as u128) << (5 * i))
    }

    fn lookup(&self, img: &[u16]) -> Option<u32> {
        match &self.index {
            PermIndex::P64(m) => m.get(&Self::pack64(img)).copied(),
            PermIndex::P128(m) => m.get(&Self::pack128(img)).copied(),
            PermIndex::Wide(m) => m.get(img).copied(),
        }
    }

    fn insert(&mut self, img: &[u16]) -> (u32, bool) {
        if let Some(id) = self.lookup(img) {
            return (id, false);
        }
        let id = self.len() as u32;
        if self.degree == 0 {
            return (0, id == 0);
        }
        match &mut self.index {
            PermIndex::P64(m) => {
                m.insert(Self::pack64(img), id);
            }
            PermIndex::P128(m) => {
                m.insert(Self::pack128(img), id);
            }
            PermIndex::Wide(m) => {
                m.insert(img.into(), id);
            }
        }
        self.flat.extend_from_slice(img);
        (id, true)
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        let (pa, pb) = (self.get(a), self.get(b));
        match &self.index {
            PermIndex::P64(m) => {
                let mut key = 0u64;
                for (i, &x) in pa.iter().enumerate() {
                    key |= (pb[x as usize] as u64) << (4 * i);
                }
                m[&key]
            }
            PermIndex::P128(m) => {
                let mut key = 0u128;
                for (i, &x) in pa.iter().enumerate() {
                    key |= (pb[x as usize] as u128) << (5 * i);
                }
                m[&key]
            }
            PermIndex::Wide(m) => {
                let img: Vec<u16> = pa.iter().map(|&x| pb[x as usize]).collect();
                m[img.as_slice()]
            }
        }
    }
}

struct CodeStore {
    kind: CodeKind,
    code: Vec<u32>,
    id_of: Vec<u32>,
}

impl CodeStore {
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.id_of[self.kind.mul(self.code[a as usize], self.code[b as usize]) as usize]
    }
}

/// Normal forms `g^i h^j` (and `g^i h^j a^e` for the alpha extension).
#[derive(Clone)]
pub(crate) enum CodeKind {
    Gpef { n: u32, mpow: Vec<u32> },
    Alpha { n: u32, mpow: Vec<u32>, sigma: Vec<u32> },
}

impl CodeKind {
    fn code_space(&self) -> usize {
        match self {
            CodeKind::Gpef { n, .. } => (*n as usize) * (*n as usize),
            CodeKind::Alpha { n, .. } => 2 * (*n as usize) * (*n as usize),
        }
    }

    #[inline]
    fn gmul(n: u32, mpow: &[u32], a: u32, b: u32) -> u32 {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        let i2 = (i + k) % n;
        let j2 = ((mpow[k as usize] as u64 * j as u64 + l as u64) % n as u64) as u32;
        i2 * n + j2
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            CodeKind::Gpef { n, mpow } => Self::gmul(*n, mpow, a, b),
            CodeKind::Alpha { n, mpow, sigma } => {
                let (x, e) = (a >> 1, a & 1);
                let (y, d) = (b >> 1, b & 1);
                let y2 = if e == 1 { sigma[y as usize] } else { y };
                (Self::gmul(*n, mpow, x, y2) << 1) | (e ^ d)
            }
        }
    }

    fn exponents(&self, c: u32) -> Vec<u32> {
        match self {
            CodeKind::Gpef { n, .. } => vec![c / n, c % n],
            CodeKind::Alpha { n, .. } => vec![(c >> 1) / n, (c >> 1) % n, c & 1],
        }
    }

    fn encode(&self, e: &[u32]) -> Option<u32> {
        match (self, e) {
            (CodeKind::Gpef { n, .. }, [i, j]) => Some((i % n) * n + j % n),
            (CodeKind::Alpha { n, .. }, [i, j]) => Some(((i % n) * n + j % n) << 1),
            (CodeKind::Alpha { n, .. }, [i, j, a]) => Some((((i % n) * n + j % n) << 1) | (a & 1)),
            _ => None,
        }
    }

    fn label(&self, c: u32) -> String {
        let e = self.exponents(c);
        match e.as_slice() {
            [i, j] => format!("g^{i} h^{j}"),
            [i, j, a] => format!("g^{i} h^{j} a^{a}"),
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four() {
        let g = GroupTable::from_permutations(&PermGroupSpec::parse(4, &["(1,2)", "(3,4)"]).unwrap(), 100).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        for a in 0..4 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn cap_is_reported() {
        let s5 = PermGroupSpec::parse(5, &["(1,2,3,4,5)", "(1,2)"]).unwrap();
        assert!(matches!(GroupTable::from_permutations(&s5, 50), Err(Error::CapExceeded(50))));
    }

    #[test]
    fn ids_follow_bfs() {
        let s3 = PermGroupSpec::parse(3, &["(1,2)", "(2,3)"]).unwrap();
        let g = GroupTable::from_permutations(&s3, 100).unwrap();
        let labels: Vec<String> = (0..6).map(|a| g.label(a)).collect();
        assert_eq!(labels, ["()", "(1,2)", "(2,3)", "(1,3,2)", "(1,2,3)", "(1,3)"]);
        let elems = s3.elements(100).unwrap();
        for (i, p) in elems.iter().enumerate() {
            assert_eq!(g.find_perm(p), Some(i as u32));
        }
        g.ensure_dense();
        assert_eq!(g.mul(1, 2), 3);
    }
}
