//! Permutations on `{0..n-1}` and the few permutation-group queries the rest
//! of the crate leans on. Composition is left to right: `p.then(q)` applies
//! `p` first. Cycle notation on the outside is 1-indexed.

use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    images: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PermJson {
    degree: usize,
    images: Vec<u32>,
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermJson { degree: self.degree(), images: self.images.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PermJson::deserialize(d)?;
        if raw.images.len() != raw.degree {
            return Err(serde::de::Error::custom("degree does not match images length"));
        }
        Perm::from_images(raw.images).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

/// Cycle lengths in non-increasing order, fixed points included.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleStructure(pub Vec<usize>);

impl CycleStructure {
    pub fn count(&self, len: usize) -> usize {
        self.0.iter().filter(|&&l| l == len).count()
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Perm {
        Perm { images }
    }

    /// Zero-indexed cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Perm> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let a = a as usize;
                if a >= n || used[a] {
                    return Err(Error::NotAPermutation(format!("bad cycle {c:?}")));
                }
                used[a] = true;
                images[a] = c[(k + 1) % c.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Parse 1-indexed cycle notation such as `(1,2)(3,4,5)`. With `degree`
    /// unset the degree is the largest point mentioned.
    pub fn parse(s: &str, degree: Option<usize>) -> Result<Perm> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = compact.as_str();
        if rest == "()" || rest.is_empty() {
            rest = "";
        }
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let mut cyc = Vec::new();
            for tok in body[..close].split(',') {
                let v: u32 = tok.parse().map_err(|_| Error::Parse(format!("bad point {tok:?} in {s:?}")))?;
                if v == 0 {
                    return Err(Error::Parse("points are 1-indexed".into()));
                }
                cyc.push(v - 1);
            }
            cycles.push(cyc);
            rest = &body[close + 1..];
        }
        let max = cycles.iter().flatten().map(|&x| x as usize + 1).max().unwrap_or(1);
        let n = match degree {
            Some(d) if d < max => return Err(Error::Parse(format!("point {max} exceeds degree {d}"))),
            Some(d) => d,
            None => max,
        };
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn compose(&self, q: &Perm) -> Result<Perm> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.then(q))
    }

    /// `self` then `q`. Panics on degree mismatch; see [`Perm::compose`].
    pub fn then(&self, q: &Perm) -> Perm {
        assert_eq!(self.degree(), q.degree(), "degree mismatch");
        Perm { images: self.images.iter().map(|&x| q.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`, i.e. relabel points by `g`.
    pub fn conjugate(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn is_involution_or_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| self.images[x as usize] == i as u32)
    }

    /// Nontrivial cycles, each starting at its smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        self.all_cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    fn all_cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s as u32];
            seen[s] = true;
            let mut x = self.images[s] as usize;
            while x != s {
                seen[x] = true;
                c.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_structure(&self) -> CycleStructure {
        let mut lens: Vec<usize> = self.all_cycles().iter().map(|c| c.len()).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        CycleStructure(lens)
    }

    pub fn parity(&self) -> Parity {
        let ncyc = self.all_cycles().len();
        if (self.degree() - ncyc) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == Parity::Odd
    }

    /// Saturates at `u64::MAX` on overflow.
    pub fn order(&self) -> u64 {
        let mut acc: u64 = 1;
        for c in self.all_cycles() {
            let l = c.len() as u64;
            let g = gcd(acc, l);
            acc = match (acc / g).checked_mul(l) {
                Some(v) => v,
                None => return u64::MAX,
            };
        }
        acc
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 == x).count()
    }

    /// Same permutation acting on `n >= degree` points.
    pub fn extend(&self, n: usize) -> Perm {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..n as u32);
        Perm { images }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// Generators sharing one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroupSpec {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl PermGroupSpec {
    pub fn new(generators: Vec<Perm>) -> Result<PermGroupSpec> {
        let degree = generators
            .first()
            .ok_or_else(|| Error::InvalidParameters("empty generator list".into()))?
            .degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(PermGroupSpec { degree, generators })
    }

    /// Parse 1-indexed cycle strings at a fixed degree.
    pub fn parse(degree: usize, gens: &[&str]) -> Result<PermGroupSpec> {
        let gens = gens.iter().map(|s| Perm::parse(s, Some(degree))).collect::<Result<Vec<_>>>()?;
        PermGroupSpec::new(gens)
    }

    /// Parts sorted by smallest point; points inside a part ascending.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let n = self.degree;
        let mut label = vec![u32::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if label[s] != u32::MAX {
                continue;
            }
            let id = out.len() as u32;
            let mut part = vec![s as u32];
            label[s] = id;
            let mut k = 0;
            while k < part.len() {
                let x = part[k];
                for g in &self.generators {
                    let y = g.apply(x) as usize;
                    if label[y] == u32::MAX {
                        label[y] = id;
                        part.push(y as u32);
                    }
                }
                k += 1;
            }
            part.sort_unstable();
            out.push(part);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Finest block system with `alpha` and `beta` in one block.
    pub fn block_system(&self, alpha: u32, beta: u32) -> Result<Vec<Vec<u32>>> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let n = self.degree;
        let mut uf = UnionFind::new(n);
        let mut queue = Vec::new();
        if uf.union(alpha as usize, beta as usize) {
            queue.push((alpha as usize, beta as usize));
        }
        while let Some((a, b)) = queue.pop() {
            for g in &self.generators {
                let (x, y) = (g.apply(a as u32) as usize, g.apply(b as u32) as usize);
                let (rx, ry) = (uf.find(x), uf.find(y));
                if rx != ry {
                    uf.union(rx, ry);
                    queue.push((rx, ry));
                }
            }
        }
        Ok(uf.parts())
    }

    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        for beta in 1..self.degree as u32 {
            if self.block_system(0, beta)?.len() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Elements in BFS order: word length, then generator index, then discovery.
    pub fn elements(&self, cap: usize) -> Result<Vec<Perm>> {
        let id = Perm::identity(self.degree);
        let mut seen: FxHashMap<Perm, ()> = FxHashMap::default();
        seen.insert(id.clone(), ());
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            for g in &self.generators {
                let p = out[k].then(g);
                if !seen.contains_key(&p) {
                    if out.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    seen.insert(p.clone(), ());
                    out.push(p);
                }
            }
            k += 1;
        }
        Ok(out)
    }

    pub fn order(&self, cap: usize) -> Result<usize> {
        Ok(crate::group::GroupTable::from_permutations(self, cap)?.order())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// True when two classes merged. The smaller root survives.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn parts(&mut self) -> Vec<Vec<u32>> {
        let n = self.parent.len();
        let mut idx: FxHashMap<usize, usize> = FxHashMap::default();
        let mut out: Vec<Vec<u32>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            let k = *idx.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(x as u32);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        Perm::parse(s, None).unwrap()
    }

    #[test]
    fn xy_product_from_six_cycle() {
        let x = p("(1,2,3,4,5,6)");
        let y = Perm::parse("(1,2)(3,5)", Some(6)).unwrap();
        let xy = x.then(&y);
        assert_eq!(xy.to_string(), "(2,5,6)(3,4)");
        assert_eq!(xy.order(), 6);
        assert_eq!(xy.pow(3).to_string(), "(3,4)");
    }

    #[test]
    fn parse_round_trip_and_whitespace() {
        let a = Perm::parse(" (1, 3)( 2,4 ) ", Some(6)).unwrap();
        assert_eq!(a.to_string(), "(1,3)(2,4)");
        assert_eq!(a.degree(), 6);
        assert!(Perm::parse("(1,1)", None).is_err());
        assert!(Perm::parse("(0,1)", None).is_err());
        assert_eq!(Perm::parse("()", Some(3)).unwrap(), Perm::identity(3));
    }

    #[test]
    fn orders_and_structures() {
        assert_eq!(Perm::parse("(2,6,4)(3,5,8,10,7)", Some(14)).unwrap().order(), 15);
        let s = Perm::parse("(1,2)(3,4)", Some(7)).unwrap();
        assert_eq!(s.cycle_structure().0, vec![2, 2, 1, 1, 1]);
        assert_eq!(s.parity(), Parity::Even);
        let r0 = Perm::parse("(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)(13,14)", None).unwrap();
        assert_eq!(r0.cycle_structure().count(2), 7);
        assert_eq!(r0.parity(), Parity::Odd);
        for n in 3..=12 {
            let c = Perm::from_cycles(n, &[&(0..n as u32).collect::<Vec<_>>()]).unwrap();
            assert_eq!(c.order(), n as u64);
            assert!(c.pow(n as i64).is_identity());
        }
    }

    #[test]
    fn orbits_and_blocks() {
        let g = PermGroupSpec::parse(5, &["(1,2)(3,4)"]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2, 3], vec![4]]);
        let hex = PermGroupSpec::parse(6, &["(1,2,3,4,5,6)", "(1,6)(2,5)(3,4)"]).unwrap();
        assert!(!hex.is_primitive().unwrap());
        let mod2 = hex.block_system(0, 2).unwrap();
        assert_eq!(mod2, vec![vec![0, 2, 4], vec![1, 3, 5]]);
        let mod3 = hex.block_system(0, 3).unwrap();
        assert_eq!(mod3.len(), 3);
        assert!(matches!(g.block_system(0, 1), Err(Error::Intransitive)));
    }
}
