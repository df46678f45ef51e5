use super::{cycle, p, pairs, Realization};
use crate::classes::EtClass::{self, *};
use crate::error::{Error, Result};
use crate::parent::EpimorphismSpec;
use crate::perm::Perm;

/// Regular map with group S_n: `r0 = (1,2)`, `r1 r2 = (1,2,...,n)`.
pub fn sym_class1(n: usize) -> Result<EpimorphismSpec> {
    if n < 3 {
        return Err(Error::InvalidParameters("sym_class1 needs n >= 3".into()));
    }
    let m = n as u32;
    let r1: Vec<(u32, u32)> = (2..).map(|i| (i, m + 2 - i)).take_while(|(a, b)| a < b).collect();
    let mut r2 = vec![(1, 2)];
    r2.extend((3..).map(|i| (i, m + 3 - i)).take_while(|(a, b)| a < b));
    EpimorphismSpec::from_perms(C1, &[p(n, "(1,2)"), pairs(n, &r1), pairs(n, &r2)])
}

/// Chiral map (class 2Pex) with group S_n, n >= 6.
pub fn sym_chiral(n: usize) -> Result<EpimorphismSpec> {
    let m = n as u32;
    let (x, y) = match n {
        0..=5 => return Err(Error::InvalidParameters("every generating pair of S_n, n <= 5, is inverted".into())),
        6 => (cycle(6, 1..=6), p(6, "(1,2)(3,5)")),
        _ => (cycle(n, 1..m), pairs(n, &[(1, 3), (2, 4), (m - 1, m)])),
    };
    EpimorphismSpec::from_perms(C2PEx, &[x, y])
}

/// Three odd involutions generating S_n with `r0 r2 = r2 r0`.
fn even_class1(n: usize) -> Result<[Perm; 3]> {
    let m = n as u32;
    let k = m / 4;
    let v = match (n % 4, n) {
        (_, 2) => [p(2, "(1,2)"), p(2, "(1,2)"), p(2, "(1,2)")],
        (_, 1 | 5 | 6) => return Err(Error::Unrealizable(format!("S_{n} has no even regular map"))),
        (3, _) => {
            let r0: Vec<_> = (2..=2 * k + 2).map(|i| (i, m + 2 - i)).collect();
            let mut r1 = vec![(1, 2)];
            r1.extend((3..=2 * k + 2).map(|i| (i, m + 3 - i)));
            [pairs(n, &r0), pairs(n, &r1), pairs(n, &[(2 * k + 2, 2 * k + 3)])]
        }
        (0, _) => {
            let r0: Vec<_> = (2..=2 * k).map(|i| (i, m + 1 - i)).collect();
            let mut r1 = vec![(1, 2)];
            r1.extend((3..=2 * k).map(|i| (i, m + 2 - i)));
            [pairs(n, &r0), pairs(n, &r1), pairs(n, &[(1, m)])]
        }
        (1, _) => {
            let r0: Vec<_> = (1..=(m - 3) / 2).map(|i| (2 * i - 1, 2 * i)).collect();
            let mut r2: Vec<_> = (0..=k - 2).flat_map(|j| [(4 * j + 3, 4 * j + 5), (4 * j + 4, 4 * j + 6)]).collect();
            r2.push((m - 2, m - 1));
            let mut r1 = vec![(1, 3)];
            for j in 1..=k.saturating_sub(2) {
                if j == 1 && k % 2 == 1 {
                    r1.extend([(5, 8), (6, 7)]);
                } else {
                    r1.extend([(4 * j + 1, 4 * j + 3), (4 * j + 2, 4 * j + 4)]);
                }
            }
            r1.extend([(m - 4, m - 2), (m - 1, m)]);
            [pairs(n, &r0), pairs(n, &r1), pairs(n, &r2)]
        }
        (_, 10) => [
            pairs(10, &[(1, 2), (3, 4), (5, 6), (7, 8), (9, 10)]),
            p(10, "(2,4)(5,7)(8,10)"),
            p(10, "(3,5)(4,6)(7,8)"),
        ],
        (_, 14) => [
            pairs(14, &(1..=7).map(|i| (2 * i - 1, 2 * i)).collect::<Vec<_>>()),
            p(14, "(2,4)(5,7)(6,8)(9,11)(12,14)"),
            p(14, "(3,5)(4,6)(7,9)(8,10)(11,12)"),
        ],
        _ => {
            // n = 4k + 2 >= 18
            let r0: Vec<_> = (1..=m / 2).map(|i| (2 * i - 1, 2 * i)).collect();
            let mut r1 = vec![(2, 4), (6, 8)];
            r1.extend((2..=k - 3).flat_map(|j| [(4 * j + 1, 4 * j + 3), (4 * j + 2, 4 * j + 4)]));
            r1.extend([(m - 9, m - 7), (m - 5, m - 3), (m - 2, m)]);
            let mut r2: Vec<_> = (0..=k - 2).flat_map(|j| [(4 * j + 3, 4 * j + 5), (4 * j + 4, 4 * j + 6)]).collect();
            r2.push((m - 3, m - 2));
            [pairs(n, &r0), pairs(n, &r1), pairs(n, &r2)]
        }
    };
    Ok(v)
}

/// Four odd involutions for class 3.
fn even_class3(n: usize) -> Result<[Perm; 4]> {
    if n < 3 {
        return Err(Error::Unrealizable(format!("S_{n} has no even class-3 map")));
    }
    let nn = n as u32;
    let r = (n + 1) % 4;
    let m = nn - r as u32;
    let s0: Vec<_> = (1..).step_by(2).take_while(|&i| i < m).map(|i| (i, i + 1)).collect();
    let s1: Vec<_> = (2..).step_by(2).take_while(|&i| i < m).map(|i| (i, i + 1)).collect();
    let (s2, s3) = match r {
        0 => (pairs(n, &[(1, 2)]), pairs(n, &[(1, 2)])),
        1 => (pairs(n, &[(1, nn)]), pairs(n, &[(1, nn)])),
        2 => (pairs(n, &[(1, nn)]), pairs(n, &[(2, nn - 1)])),
        _ => (pairs(n, &[(1, nn), (2, nn - 1), (3, nn - 2)]), pairs(n, &[(1, nn)])),
    };
    Ok([pairs(n, &s0), pairs(n, &s1), s2, s3])
}

fn spec(t: EtClass, ps: &[Perm]) -> Result<EpimorphismSpec> {
    EpimorphismSpec::from_perms(t, ps)
}

fn searched(t: EtClass, n: usize) -> Result<Realization> {
    let gens = super::GroupFamily::Sym { n: n as u32 }.generators()?;
    super::search_realization(t, &gens, true, crate::group::DEFAULT_CAP)?
        .ok_or_else(|| Error::Unrealizable(format!("no even witness for S_{n} in class {t}")))
}

/// Even realisation of S_n in class `t`: the built map is orientable
/// without boundary and lies in `t`.
pub fn sym_even(t: EtClass, n: usize) -> Result<Realization> {
    if !super::table3_member(super::GroupFamily::Sym { n: n as u32 }, t) {
        return Err(Error::Unrealizable(format!("S_{n} is not evenly realised in class {t}")));
    }
    let m = n as u32;
    let r = |spec: EpimorphismSpec, how: &str| Ok(Realization::new(t, spec, how));
    match t {
        C1 => r(spec(C1, &even_class1(n)?)?, "even regular"),
        C2 | C2S => r(spec(C2, &even_class1(n)?)?, "s_i = r_(i-1)"),
        C2P => match n {
            4 => searched(t, n),
            5 => r(spec(C2, &[p(5, "(1,2)"), p(5, "(3,4)"), p(5, "(1,3)(4,5)")])?, "small case"),
            6 => r(spec(C2, &[p(6, "(1,3)"), p(6, "(1,5)(2,3)(4,6)"), p(6, "(1,2)(3,4)")])?, "small case"),
            _ => {
                let [r0, r1, r2] = even_class1(n)?;
                r(spec(C2, &[r0.clone(), r1, r0.then(&r2)])?, "s3 = r0 r2")
            }
        },
        C4 | C4S => match n {
            4..=6 => searched(t, n),
            _ => {
                let [r0, r1, r2] = even_class1(n)?;
                r(spec(C4, &[r0.clone(), r1, r0.then(&r2)])?, "s = r0 r2")
            }
        },
        C4P => match n {
            3 | 4 => searched(t, n),
            5 => r(spec(C4, &[p(5, "(1,2)"), p(5, "(3,4)"), p(5, "(2,3,4,5)")])?, "small case"),
            6 => r(spec(C4, &[p(6, "(1,2)"), p(6, "(3,4)"), p(6, "(1,5,6)(2,3)")])?, "small case"),
            _ => r(spec(C4, &even_class1(n)?)?, "s = r2"),
        },
        C3 => r(spec(C3, &even_class3(n)?)?, "even class 3"),
        C2Ex | C2SEx => {
            // s must be even: an (n-1)-cycle for even n, an n-cycle for odd n
            let s = if n % 2 == 0 { cycle(n, 1..m) } else { cycle(n, 1..=m) };
            r(spec(C2Ex, &[pairs(n, &[(1, 3), (2, 4), (m - 1, m)]), s])?, "chiral pair, even s")
        }
        C2PEx => r(sym_chiral(n)?, "sym_chiral"),
        C5 | C5S | C5P => {
            let pair = match (n, t) {
                (6, _) => [p(6, "(1,2,5,3)"), cycle(6, 1..=6)],
                (_, C5P) if n % 2 == 0 => [p(n, "(1,2)(3,4,5)"), cycle(n, 1..=m)],
                _ => [pairs(n, &[(1, 3), (2, 4), (m - 1, m)]), cycle(n, 1..m)],
            };
            r(spec(C5, &pair)?, "class-5 pair")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class1_product_is_n_cycle() {
        for n in 3..12 {
            let s = sym_class1(n).unwrap();
            let ims = s.ordered_images().unwrap();
            let r1 = Perm::parse(ims[1], Some(n)).unwrap();
            let r2 = Perm::parse(ims[2], Some(n)).unwrap();
            assert_eq!(r1.then(&r2), cycle(n, 1..=n as u32));
        }
    }

    #[test]
    fn even_triples_are_odd_commuting_involutions() {
        for n in [2, 3, 4, 7, 8, 9, 10, 11, 12, 13, 14, 17, 18, 22] {
            let [r0, r1, r2] = even_class1(n).unwrap();
            for r in [&r0, &r1, &r2] {
                assert!(r.is_involution_or_identity() && r.is_odd(), "n={n} {r}");
            }
            assert_eq!(r0.then(&r2), r2.then(&r0), "n={n}");
        }
    }

    #[test]
    fn case3_products_match_quoted_cycles() {
        let [r0, r1, r2] = even_class1(9).unwrap();
        assert_eq!(r0.then(&r1).then(&r2), p(9, "(1,2,5,4)(3,6,8,9,7)"));
        let [r0, r1, r2] = even_class1(13).unwrap();
        assert_eq!(r0.then(&r1).then(&r2), p(13, "(1,2,5,9,8,4)(3,6,10,12,13,11,7)"));
    }

    #[test]
    fn small_quoted_products() {
        let [_, r1, r2] = even_class1(14).unwrap();
        assert_eq!(r1.then(&r2), p(14, "(2,6,10,8,4)(3,5,9,12,14,11,7)"));
        let [_, r1, r2] = even_class1(10).unwrap();
        assert_eq!(r1.then(&r2), p(10, "(2,6,4)(3,5,8,10,7)"));
        let [r0, r1, r2] = even_class1(18).unwrap();
        let c = r1.then(&r2).cycle_structure();
        // two cycles of lengths 2k-3 and 2k-1, two 2-cycles, two fixed points
        assert_eq!((c.count(5), c.count(7), c.count(2), c.count(1)), (1, 1, 2, 2));
        assert_eq!(r0.then(&r2), r2.then(&r0));
        let [s0, s1, ..] = even_class3(11).unwrap();
        assert_eq!(s0.then(&s1), p(11, "(1,3,5,7,9,11,10,8,6,4,2)"));
    }

    #[test]
    fn chiral_quoted_values() {
        let ims = |s: &EpimorphismSpec, n| -> Vec<Perm> {
            s.ordered_images().unwrap().iter().map(|x| Perm::parse(x, Some(n)).unwrap()).collect()
        };
        let v = ims(&sym_chiral(7).unwrap(), 7);
        let comm = v[0].inverse().then(&v[1]).then(&v[0]).then(&v[1]);
        assert_eq!(comm, p(7, "(1,6,7,3,5)"));
        let v = ims(&sym_chiral(6).unwrap(), 6);
        assert_eq!(v[0].then(&v[1]).pow(3), p(6, "(3,4)"));
        assert!(sym_chiral(5).is_err());
    }
}
