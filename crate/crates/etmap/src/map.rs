use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{Perm, UnionFind};

/// A connected map: three involutions on flags with `(r0 r2)^2 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagMap {
    r: [Perm; 3],
}

#[derive(Serialize, Deserialize)]
struct FlagMapJson {
    flags: usize,
    r0: Vec<u32>,
    r1: Vec<u32>,
    r2: Vec<u32>,
}

impl Serialize for FlagMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FlagMapJson {
            flags: self.flags(),
            r0: self.r[0].images().to_vec(),
            r1: self.r[1].images().to_vec(),
            r2: self.r[2].images().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FlagMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = FlagMapJson::deserialize(d)?;
        if [&j.r0, &j.r1, &j.r2].iter().any(|r| r.len() != j.flags) {
            return Err(D::Error::custom("involution length differs from flag count"));
        }
        let p = |v: Vec<u32>| Perm::from_images(v).map_err(D::Error::custom);
        FlagMap::new(p(j.r0)?, p(j.r1)?, p(j.r2)?).map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Genus {
    Orientable(i64),
    NonOrientable(i64),
}

impl std::fmt::Display for Genus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Genus::Orientable(g) => write!(f, "orientable {g}"),
            Genus::NonOrientable(g) => write!(f, "non-orientable {g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSummary {
    pub flags: usize,
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "F")]
    pub f: usize,
    pub chi: i64,
    pub has_boundary: bool,
    pub orientable_no_boundary: bool,
    /// Absent with boundary or free edges, where the orbit count is not a surface invariant.
    pub genus: Option<Genus>,
}

impl FlagMap {
    pub fn new(r0: Perm, r1: Perm, r2: Perm) -> Result<FlagMap> {
        let n = r0.degree();
        if r1.degree() != n || r2.degree() != n {
            return Err(Error::DegreeMismatch(n, if r1.degree() != n { r1.degree() } else { r2.degree() }));
        }
        for (i, r) in [&r0, &r1, &r2].into_iter().enumerate() {
            if !r.is_involution_or_identity() {
                return Err(Error::InvalidMap(format!("r{i} is not an involution")));
            }
        }
        if !r0.then(&r2).is_involution_or_identity() {
            return Err(Error::InvalidMap("(r0 r2)^2 != 1".into()));
        }
        let m = FlagMap { r: [r0, r1, r2] };
        if m.orbit_count(&[0, 1, 2]) != 1 {
            return Err(Error::InvalidMap("flags are not connected".into()));
        }
        Ok(m)
    }

    pub fn from_images(r0: Vec<u32>, r1: Vec<u32>, r2: Vec<u32>) -> Result<FlagMap> {
        FlagMap::new(Perm::from_images(r0)?, Perm::from_images(r1)?, Perm::from_images(r2)?)
    }

    pub fn flags(&self) -> usize {
        self.r[0].degree()
    }

    pub fn r(&self, i: usize) -> &Perm {
        &self.r[i]
    }

    #[inline]
    fn step(&self, i: usize, x: u32) -> u32 {
        self.r[i].images()[x as usize]
    }

    fn orbit_labels(&self, gens: &[usize]) -> (Vec<u32>, usize) {
        let n = self.flags();
        let mut uf = UnionFind::new(n);
        for &i in gens {
            for x in 0..n {
                uf.union(x, self.step(i, x as u32) as usize);
            }
        }
        let parts = uf.parts();
        let mut label = vec![0u32; n];
        for (k, part) in parts.iter().enumerate() {
            for &x in part {
                label[x as usize] = k as u32;
            }
        }
        (label, parts.len())
    }

    fn orbit_count(&self, gens: &[usize]) -> usize {
        self.orbit_labels(gens).1
    }

    pub fn has_boundary(&self) -> bool {
        self.r.iter().any(|r| r.fixed_points() > 0)
    }

    /// Each r_i swaps the two classes of a proper 2-colouring.
    /// Colour of each flag when r0, r1, r2 all swap colours; None if no such colouring.
    fn flag_colouring(&self) -> Option<Vec<u8>> {
        let n = self.flags();
        let mut colour = vec![u8::MAX; n];
        colour[0] = 0;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for i in 0..3 {
                let y = self.step(i, x);
                let want = 1 - colour[x as usize];
                if colour[y as usize] == u8::MAX {
                    colour[y as usize] = want;
                    queue.push_back(y);
                } else if colour[y as usize] != want {
                    return None;
                }
            }
        }
        Some(colour)
    }

    fn two_colourable(&self) -> bool {
        self.flag_colouring().is_some()
    }

    pub fn summary(&self) -> MapSummary {
        let v = self.orbit_count(&[1, 2]);
        let e = self.orbit_count(&[0, 2]);
        let f = self.orbit_count(&[0, 1]);
        let chi = v as i64 - e as i64 + f as i64;
        let has_boundary = self.has_boundary();
        let orientable = !has_boundary && self.two_colourable();
        let free_edges = self.r[0].then(&self.r[2]).fixed_points() > 0;
        let genus = match (has_boundary || free_edges, orientable) {
            (true, _) => None,
            (false, true) => Some(Genus::Orientable((2 - chi) / 2)),
            (false, false) => Some(Genus::NonOrientable(2 - chi)),
        };
        MapSummary { flags: self.flags(), v, e, f, chi, has_boundary, orientable_no_boundary: orientable, genus }
    }

    /// Face length and valency as orders of r0 r1 and r1 r2.
    pub fn map_type(&self) -> (u64, u64) {
        (self.r[0].then(&self.r[1]).order(), self.r[1].then(&self.r[2]).order())
    }

    /// Per-flag invariant preserved by every automorphism and isomorphism.
    fn local_invariant(&self) -> Vec<(u32, u32, u8)> {
        let cycle_len = |a: &Perm, b: &Perm| -> Vec<u32> {
            let p = a.then(b);
            let mut len = vec![0u32; p.degree()];
            for c in p.cycles() {
                for &x in &c {
                    len[x as usize] = c.len() as u32;
                }
            }
            len.iter().map(|&l| l.max(1)).collect()
        };
        let a = cycle_len(&self.r[0], &self.r[1]);
        let b = cycle_len(&self.r[1], &self.r[2]);
        (0..self.flags())
            .map(|x| {
                let fixed = (0..3).fold(0u8, |acc, i| acc | ((self.step(i, x as u32) == x as u32) as u8) << i);
                (a[x], b[x], fixed)
            })
            .collect()
    }

    /// Extend `root -> target` to a flag bijection onto `other` commuting with all r_i.
    fn extend(&self, other: &FlagMap, root: u32, target: u32) -> Option<Vec<u32>> {
        let n = self.flags();
        let mut img = vec![u32::MAX; n];
        let mut used = vec![false; n];
        img[root as usize] = target;
        used[target as usize] = true;
        let mut queue = vec![root];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            let fx = img[x as usize];
            for i in 0..3 {
                let y = self.step(i, x);
                let fy = other.step(i, fx);
                match img[y as usize] {
                    u32::MAX => {
                        if std::mem::replace(&mut used[fy as usize], true) {
                            return None;
                        }
                        img[y as usize] = fy;
                        queue.push(y);
                    }
                    v if v != fy => return None,
                    _ => {}
                }
            }
            k += 1;
        }
        Some(img)
    }

    /// Generators of Aut, found by extending flag 0 to one representative per
    /// orbit of the group found so far; a failed target rules out its whole orbit.
    pub fn aut_generators(&self) -> Vec<Perm> {
        let n = self.flags();
        let inv = self.local_invariant();
        let mut gens: Vec<Perm> = Vec::new();
        let mut in_orbit = vec![false; n];
        let mut rejected = vec![false; n];
        in_orbit[0] = true;
        let mut orbit = vec![0u32];
        for t in 1..n as u32 {
            if in_orbit[t as usize] || rejected[t as usize] || inv[t as usize] != inv[0] {
                continue;
            }
            match self.extend(self, 0, t) {
                Some(img) => {
                    let g = Perm::from_images_unchecked(img);
                    gens.push(g);
                    let mut k = 0;
                    while k < orbit.len() {
                        let x = orbit[k];
                        for h in &gens {
                            let y = h.apply(x);
                            if !in_orbit[y as usize] {
                                in_orbit[y as usize] = true;
                                orbit.push(y);
                            }
                        }
                        k += 1;
                    }
                }
                None => {
                    let mut stack = vec![t];
                    rejected[t as usize] = true;
                    while let Some(x) = stack.pop() {
                        for h in &gens {
                            let y = h.apply(x);
                            if !rejected[y as usize] {
                                rejected[y as usize] = true;
                                stack.push(y);
                            }
                        }
                    }
                }
            }
        }
        gens
    }

    /// Orbit of flag 0 under Aut; Aut acts semiregularly so this has size |Aut|.
    fn aut_root_orbit(&self, gens: &[Perm]) -> Vec<u32> {
        let mut seen = vec![false; self.flags()];
        seen[0] = true;
        let mut orbit = vec![0u32];
        let mut k = 0;
        while k < orbit.len() {
            for h in gens {
                let y = h.apply(orbit[k]);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit
    }

    pub fn aut_order(&self) -> usize {
        self.aut_root_orbit(&self.aut_generators()).len()
    }

    /// All automorphisms, sorted by image of flag 0.
    pub fn automorphisms(&self) -> Vec<Perm> {
        let mut orbit = self.aut_root_orbit(&self.aut_generators());
        orbit.sort_unstable();
        orbit
            .par_iter()
            .map(|&t| Perm::from_images_unchecked(self.extend(self, 0, t).expect("orbit image extends")))
            .collect()
    }

    pub fn is_regular(&self) -> bool {
        self.aut_order() == self.flags()
    }

    pub fn quotient_by_aut(&self) -> FlagMap {
        let gens = self.aut_generators();
        let n = self.flags();
        let mut uf = UnionFind::new(n);
        for h in &gens {
            for x in 0..n {
                uf.union(x, h.apply(x as u32) as usize);
            }
        }
        let parts = uf.parts();
        let mut label = vec![0u32; n];
        for (k, part) in parts.iter().enumerate() {
            for &x in part {
                label[x as usize] = k as u32;
            }
        }
        let induced = |i: usize| -> Perm {
            Perm::from_images_unchecked(parts.iter().map(|p| label[self.step(i, p[0]) as usize]).collect())
        };
        FlagMap { r: [induced(0), induced(1), induced(2)] }
    }

    pub fn is_edge_transitive(&self) -> bool {
        self.quotient_by_aut().summary().e == 1
    }

    pub fn is_isomorphic(&self, other: &FlagMap) -> bool {
        if self.flags() != other.flags() {
            return false;
        }
        let (a, b) = (self.local_invariant(), other.local_invariant());
        let mut sa = a.clone();
        let mut sb = b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
        (0..other.flags() as u32)
            .into_par_iter()
            .filter(|&t| b[t as usize] == a[0])
            .any(|t| self.extend(other, 0, t).is_some())
    }

    /// Isomorphism preserving the orientation fixed by flag 0 on both sides.
    /// Tells a chiral map apart from its mirror image.
    pub fn is_orientably_isomorphic(&self, other: &FlagMap) -> bool {
        let (Some(_), Some(cb)) = (self.flag_colouring(), other.flag_colouring()) else {
            return false;
        };
        if self.flags() != other.flags() {
            return false;
        }
        let (a, b) = (self.local_invariant(), other.local_invariant());
        (0..other.flags() as u32)
            .into_par_iter()
            .filter(|&t| cb[t as usize] == 0 && b[t as usize] == a[0])
            .any(|t| self.extend(other, 0, t).is_some())
    }

    pub fn dual(&self) -> FlagMap {
        FlagMap { r: [self.r[2].clone(), self.r[1].clone(), self.r[0].clone()] }
    }

    pub fn petrie(&self) -> FlagMap {
        FlagMap { r: [self.r[0].then(&self.r[2]), self.r[1].clone(), self.r[2].clone()] }
    }

    /// Component of (0, 0) under the diagonal action, flags numbered in BFS order.
    pub fn join(&self, other: &FlagMap) -> FlagMap {
        let m = other.flags() as u64;
        let mut index: rustc_hash::FxHashMap<u64, u32> = Default::default();
        let mut pairs = vec![(0u32, 0u32)];
        index.insert(0, 0);
        let mut r: [Vec<u32>; 3] = Default::default();
        let mut k = 0;
        while k < pairs.len() {
            let (a, b) = pairs[k];
            for (i, ri) in r.iter_mut().enumerate() {
                let (x, y) = (self.step(i, a), other.step(i, b));
                let key = x as u64 * m + y as u64;
                let next = pairs.len() as u32;
                let id = *index.entry(key).or_insert_with(|| {
                    pairs.push((x, y));
                    next
                });
                ri.push(id);
            }
            k += 1;
        }
        let [r0, r1, r2] = r;
        FlagMap {
            r: [Perm::from_images_unchecked(r0), Perm::from_images_unchecked(r1), Perm::from_images_unchecked(r2)],
        }
    }

    /// Monodromy group as a permutation group on flags.
    pub fn monodromy(&self) -> crate::perm::PermGroupSpec {
        crate::perm::PermGroupSpec::new(self.r.to_vec()).expect("same degree")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<FlagMap> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, r0: &str, r1: &str, r2: &str) -> FlagMap {
        let p = |s| Perm::parse(s, Some(n)).unwrap();
        FlagMap::new(p(r0), p(r1), p(r2)).unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        let p = |s| Perm::parse(s, Some(3)).unwrap();
        assert!(FlagMap::new(p("(1,2,3)"), p("()"), p("()")).is_err());
        assert!(FlagMap::new(p("(1,2)"), p("()"), p("(2,3)")).is_err());
        let q = |s| Perm::parse(s, Some(4)).unwrap();
        assert!(matches!(FlagMap::new(q("(1,2)"), q("()"), q("()")), Err(Error::InvalidMap(_))));
    }

    #[test]
    fn index_four_basic_maps() {
        let m3 = m(4, "(1,2)(3,4)", "()", "(1,4)(2,3)");
        let s = m3.summary();
        assert_eq!((s.v, s.e, s.f), (2, 1, 2));
        assert!(m3.is_regular());
        let m4 = m(4, "(1,2)(3,4)", "(1,4)", "(1,4)(2,3)");
        assert_eq!(m4.aut_order(), 2);
        assert!(!m4.is_regular());
        assert_eq!(m4.monodromy().order(100).unwrap(), 8);
        let m5p = m(4, "(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)");
        let s = m5p.summary();
        assert_eq!(s.chi, 1);
        assert_eq!(s.genus, Some(Genus::NonOrientable(1)));
    }

    #[test]
    fn operations_are_involutions() {
        let x = m(4, "(1,2)(3,4)", "(1,4)", "(1,4)(2,3)");
        assert_eq!(x.petrie().petrie(), x);
        assert_eq!(x.dual().dual(), x);
        assert!(x.join(&x).is_isomorphic(&x));
        let json = x.to_json();
        assert_eq!(FlagMap::from_json(&json).unwrap(), x);
    }
}
