use super::{GroupOps, GroupTable};
use crate::error::{Error, Result};

/// Subgroup as a membership mask over element ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub members: Vec<u32>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn from_members(n: usize, mut members: Vec<u32>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; n];
        for &m in &members {
            mask[m as usize] = true;
        }
        Subgroup { members, mask }
    }

    pub fn generated(g: &GroupTable, gens: &[u32]) -> Subgroup {
        Subgroup::from_members(g.order(), g.closure(gens))
    }

    pub fn whole(g: &GroupTable) -> Subgroup {
        Subgroup::from_members(g.order(), (0..g.order() as u32).collect())
    }

    pub fn trivial(g: &GroupTable) -> Subgroup {
        Subgroup::from_members(g.order(), vec![0])
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.mask[x as usize]
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// A short generating list, chosen greedily in id order.
    pub fn generators(&self, g: &GroupTable) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut have = vec![false; g.order()];
        have[0] = true;
        let mut count = 1;
        for &x in &self.members {
            if have[x as usize] {
                continue;
            }
            gens.push(x);
            let sub = g.closure(&gens);
            for &y in &sub {
                have[y as usize] = true;
            }
            count = sub.len();
            if count == self.order() {
                break;
            }
        }
        debug_assert_eq!(count.max(1), self.order().max(1));
        gens
    }

    pub fn is_normal(&self, g: &GroupTable) -> bool {
        g.generators().iter().all(|&t| self.members.iter().all(|&m| self.contains(g.conj(m, t))))
    }
}

/// Smallest subgroup containing `seeds` and closed under conjugation by `conjugators`.
fn normal_closure(g: &GroupTable, seeds: &[u32], conjugators: &[u32]) -> Subgroup {
    let mut gens: Vec<u32> = seeds.iter().copied().filter(|&s| s != 0).collect();
    loop {
        let sub = Subgroup::generated(g, &gens);
        let mut added = false;
        let mut k = 0;
        while k < gens.len() {
            let x = gens[k];
            for &c in conjugators {
                let y = g.conj(x, c);
                if !sub.contains(y) && !gens.contains(&y) {
                    gens.push(y);
                    added = true;
                }
            }
            k += 1;
        }
        if !added {
            return sub;
        }
    }
}

/// Elements commuting with every generator.
pub fn center(g: &GroupTable) -> Subgroup {
    let members = (0..g.order() as u32)
        .filter(|&x| g.generators().iter().all(|&t| g.mul(x, t) == g.mul(t, x)))
        .collect();
    Subgroup::from_members(g.order(), members)
}

/// Derived subgroup of `h` (a subgroup of `g`).
fn derived_of(g: &GroupTable, h: &Subgroup) -> Subgroup {
    let hg = h.generators(g);
    let mut comms = Vec::new();
    for (i, &a) in hg.iter().enumerate() {
        for &b in &hg[i + 1..] {
            comms.push(g.commutator(a, b));
        }
    }
    normal_closure(g, &comms, &hg)
}

pub fn derived_subgroup(g: &GroupTable) -> Subgroup {
    derived_of(g, &Subgroup::whole(g))
}

/// G = G^(0) > G^(1) > ... until the series stabilises.
pub fn derived_series(g: &GroupTable) -> Vec<Subgroup> {
    let mut out = vec![Subgroup::whole(g)];
    loop {
        let next = derived_of(g, out.last().unwrap());
        if next.order() == out.last().unwrap().order() {
            return out;
        }
        out.push(next);
    }
}

/// None when the group is not solvable.
pub fn derived_length(g: &GroupTable) -> Option<usize> {
    let s = derived_series(g);
    (s.last().unwrap().order() == 1).then(|| s.len() - 1)
}

/// Z_0 < Z_1 < ... ; Z_{i+1} is the preimage of the centre of G/Z_i.
pub fn upper_central_series(g: &GroupTable) -> Vec<Subgroup> {
    let mut out = vec![Subgroup::trivial(g)];
    loop {
        let z = out.last().unwrap();
        let members: Vec<u32> = (0..g.order() as u32)
            .filter(|&x| g.generators().iter().all(|&t| z.contains(g.commutator(x, t))))
            .collect();
        if members.len() == z.order() {
            return out;
        }
        out.push(Subgroup::from_members(g.order(), members));
    }
}

/// Length of the upper central series, or None when it stalls below G.
pub fn nilpotence_class(g: &GroupTable) -> Option<usize> {
    let s = upper_central_series(g);
    (s.last().unwrap().order() == g.order()).then(|| s.len() - 1)
}

/// G/N with cosets as elements; ids re-enumerated from the images of G's generators.
pub fn quotient(g: &GroupTable, n: &Subgroup) -> Result<GroupTable> {
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let size = g.order();
    let mut coset = vec![u32::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size as u32 {
        if coset[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &m in &n.members {
            coset[g.mul(x, m) as usize] = c;
        }
    }
    let k = reps.len();
    if k > 4096 {
        return Err(Error::CapExceeded(4096));
    }
    let mut table = vec![0u32; k * k];
    for a in 0..k {
        for b in 0..k {
            table[a * k + b] = coset[g.mul(reps[a], reps[b]) as usize];
        }
    }
    let gens: Vec<u32> = g.generators().iter().map(|&t| coset[t as usize]).collect();
    GroupTable::from_table(k, &table, coset[0], &gens)
}

#[allow(dead_code)]
pub(crate) fn is_subgroup<G: GroupOps>(g: &G, members: &[u32]) -> bool {
    let n = g.order();
    let mut mask = vec![false; n];
    for &m in members {
        mask[m as usize] = true;
    }
    members.iter().all(|&a| members.iter().all(|&b| mask[g.mul(a, b) as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroupSpec;

    fn sym(n: usize) -> GroupTable {
        let c = format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(","));
        GroupTable::from_permutations(&PermGroupSpec::parse(n, &[&c, "(1,2)"]).unwrap(), 1 << 20).unwrap()
    }

    #[test]
    fn s4_derived_series() {
        let g = sym(4);
        let s = derived_series(&g);
        let orders: Vec<usize> = s.iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert_eq!(derived_length(&g), Some(3));
        assert_eq!(nilpotence_class(&g), None);
        let q = quotient(&g, &derived_subgroup(&g)).unwrap();
        assert_eq!(q.order(), 2);
        assert!(q.is_abelian());
    }

    #[test]
    fn d4_class_two() {
        let g = GroupTable::from_permutations(&PermGroupSpec::parse(4, &["(1,2,3,4)", "(1,3)"]).unwrap(), 100)
            .unwrap();
        assert_eq!(nilpotence_class(&g), Some(2));
        assert_eq!(derived_length(&g), Some(2));
        assert_eq!(center(&g).order(), 2);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = sym(3);
        let h = Subgroup::generated(&g, &[g.generators()[1]]);
        assert!(matches!(quotient(&g, &h), Err(Error::NotNormal)));
    }
}
