use super::GroupTable;

/// Conjugacy classes, each sorted, ordered by smallest member.
pub fn conjugacy_classes(g: &GroupTable) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n as u32 {
        if seen[x as usize] {
            continue;
        }
        seen[x as usize] = true;
        let mut class = vec![x];
        let mut k = 0;
        while k < class.len() {
            let y = class[k];
            for &t in g.generators() {
                let z = g.conj(y, t);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    class.push(z);
                }
            }
            k += 1;
        }
        class.sort_unstable();
        out.push(class);
    }
    out
}

/// Elements of order exactly 2.
pub fn involutions(g: &GroupTable) -> Vec<u32> {
    (1..g.order() as u32).filter(|&x| g.mul(x, x) == 0).collect()
}

/// Identity, an involution, or inverted by conjugation with some involution.
pub fn strongly_real(g: &GroupTable, x: u32) -> bool {
    if g.mul(x, x) == 0 {
        return true;
    }
    let xi = g.inv(x);
    involutions(g).into_iter().any(|t| g.conj(x, t) == xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroupSpec;

    #[test]
    fn s4_classes() {
        let g = GroupTable::from_permutations(&PermGroupSpec::parse(4, &["(1,2,3,4)", "(1,2)"]).unwrap(), 100)
            .unwrap();
        let mut sizes: Vec<usize> = conjugacy_classes(&g).iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(involutions(&g).len(), 9);
        assert!(strongly_real(&g, 0));
    }
}
