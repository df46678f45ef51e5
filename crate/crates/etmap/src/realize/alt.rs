use super::{cycle, p, pairs};
use crate::classes::EtClass::{self, *};
use crate::error::{Error, Result};
use crate::parent::EpimorphismSpec;
use crate::perm::Perm;

/// Generating sets of A_n by 3-cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AltVariant {
    /// (i, i+1, i+2), i = 1..n-2
    A,
    /// (1, i, i+1), i = 2..n-1
    B,
    /// (k, k+1, k+2) taken mod n, with the n-cycle; n odd
    C { k: u32 },
    /// (1, k, k+1) with (2, ..., n); n even, 1 < k < n
    D { k: u32 },
}

pub fn alt_standard_gens(n: usize, v: AltVariant) -> Result<Vec<Perm>> {
    if n < 3 {
        return Err(Error::InvalidParameters("A_n generators need n >= 3".into()));
    }
    let m = n as u32;
    let wrap = |x: u32| (x - 1) % m + 1;
    Ok(match v {
        AltVariant::A => (1..=m - 2).map(|i| cycle(n, [i, i + 1, i + 2])).collect(),
        AltVariant::B => (2..m).map(|i| cycle(n, [1, i, i + 1])).collect(),
        AltVariant::C { k } => {
            if n % 2 == 0 || k == 0 || k > m {
                return Err(Error::InvalidParameters("variant C needs odd n and 1 <= k <= n".into()));
            }
            vec![cycle(n, [wrap(k), wrap(k + 1), wrap(k + 2)]), cycle(n, 1..=m)]
        }
        AltVariant::D { k } => {
            if n % 2 == 1 || n < 4 || k <= 1 || k >= m {
                return Err(Error::InvalidParameters("variant D needs even n >= 4 and 1 < k < n".into()));
            }
            vec![cycle(n, [1, k, k + 1]), cycle(n, 2..=m)]
        }
    })
}

/// Regular map with group A_n, for n = 5 and n >= 9.
pub fn alt_class1(n: usize) -> Result<EpimorphismSpec> {
    if !(n == 5 || n >= 9) {
        return Err(Error::InvalidParameters(format!("A_{n} has no regular map")));
    }
    let m = n as u32;
    let chain = |from: u32, to: u32| -> Vec<(u32, u32)> { (from..to).step_by(2).map(|i| (i, i + 1)).collect() };
    let r0 = match n % 4 {
        3 => pairs(n, &[(1, 4), (2, 3), (5, 6), (m - 2, m - 1)]),
        // (1,2)(3,4) leaves <r0, r1, r2> imprimitive here
        0 => p(n, "(1,2)(3,4)(5,7)(6,8)"),
        _ => p(n, "(1,2)(3,4)"),
    };
    let (r1, r2) = match n % 4 {
        _ if n == 5 => (p(5, "(2,3)(4,5)"), p(5, "(1,4)(2,3)")),
        1 => (pairs(n, &chain(2, m)), pairs(n, &chain(1, m - 1))),
        2 => (pairs(n, &chain(2, m - 1)), pairs(n, &chain(3, m))),
        3 => (pairs(n, &chain(4, m)), pairs(n, &chain(1, m - 3))),
        _ => {
            let mut r1 = chain(2, m - 1);
            r1.push((1, m));
            (pairs(n, &r1), pairs(n, &chain(1, m)))
        }
    };
    EpimorphismSpec::from_perms(C1, &[r0, r1, r2])
}

/// Chiral map (class 2Pex) with group A_n, n >= 8.
pub fn alt_chiral(n: usize) -> Result<EpimorphismSpec> {
    if n < 8 {
        return Err(Error::InvalidParameters("alt_chiral needs n >= 8".into()));
    }
    let m = n as u32;
    let (x, y) = if n % 2 == 0 {
        (cycle(n, 2..=m), p(n, "(1,2)(3,4)"))
    } else {
        (cycle(n, 1..=m), p(n, "(1,2)(3,6)"))
    };
    EpimorphismSpec::from_perms(C2PEx, &[x, y])
}

/// Small cases: class 2 for A_6, A_7, A_8 and class 5 for A_7.
pub fn alt_small(t: EtClass, n: usize) -> Result<EpimorphismSpec> {
    let ims: &[&str] = match (t, n) {
        (C2, 6) => &["(1,2)(3,4)", "(2,6)(4,5)", "(2,3)(4,5)"],
        (C2, 7) => &["(1,2)(3,4)", "(2,6)(5,7)", "(2,3)(4,5)"],
        (C2, 8) => &["(1,2)(3,4)(5,6)(7,8)", "(1,3)(4,6)", "(3,4)(6,7)"],
        (C5, 7) => &["(1,2,3,4,5)", "(1,6,7)(2,4,5)"],
        _ => return Err(Error::InvalidParameters(format!("no small case for A_{n} in class {t}"))),
    };
    EpimorphismSpec::parse_perms(t, n, ims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;
    use crate::perm::PermGroupSpec;

    fn order(gens: Vec<Perm>) -> usize {
        GroupTable::from_permutations(&PermGroupSpec::new(gens).unwrap(), 1 << 20).unwrap().order()
    }

    #[test]
    fn variants_generate_alt() {
        for n in 3..9usize {
            let half = (1..=n).product::<usize>() / 2;
            assert_eq!(order(alt_standard_gens(n, AltVariant::A).unwrap()), half);
            assert_eq!(order(alt_standard_gens(n, AltVariant::B).unwrap()), half);
        }
        assert_eq!(order(alt_standard_gens(7, AltVariant::C { k: 3 }).unwrap()), 2520);
        assert_eq!(order(alt_standard_gens(6, AltVariant::D { k: 3 }).unwrap()), 360);
    }

    #[test]
    fn class1_images_are_even() {
        for n in [5, 9] {
            let r = alt_class1(n).unwrap().resolve(1 << 20).unwrap();
            assert!(r.check_ok().is_ok(), "n = {n}: {:?}", r.check());
            assert_eq!(r.table.order(), (1..=n).product::<usize>() / 2);
        }
        // too big to enumerate: relations, parity and primitivity only
        for n in 10..=21 {
            let s = alt_class1(n).unwrap();
            let ps: Vec<Perm> = s.ordered_images().unwrap().iter().map(|x| Perm::parse(x, Some(n)).unwrap()).collect();
            assert!(ps.iter().all(|x| !x.is_odd() && x.is_involution_or_identity()));
            assert!(ps[0].then(&ps[2]).pow(2).is_identity(), "n = {n}");
            assert!(PermGroupSpec::new(ps).unwrap().is_primitive().unwrap(), "n = {n}");
        }
    }
}
