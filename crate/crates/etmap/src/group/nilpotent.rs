use super::{CodeKind, GroupTable, DEFAULT_CAP};
use crate::error::{Error, Result};

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn mult_powers(n: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(n as usize);
    let mut x = 1u64;
    for _ in 0..n {
        out.push(x as u32);
        x = x * m as u64 % n as u64;
    }
    out
}

/// `<g, h>` with `h^g = h^(p^f + 1)`, both of order `p^e`. Generators are `[g, h]`.
pub fn nilpotent_gpef(p: u32, e: u32, f: u32) -> Result<GroupTable> {
    if !is_prime(p) || e == 0 || f == 0 || f > e {
        return Err(Error::InvalidParameters(format!("gpef needs p prime and 1 <= f <= e, got ({p},{e},{f})")));
    }
    let n = p.checked_pow(e).filter(|&n| (n as u64) * (n as u64) <= DEFAULT_CAP as u64);
    let n = n.ok_or_else(|| Error::InvalidParameters(format!("{p}^{e} too large")))?;
    let m = (p.pow(f) + 1) % n;
    let kind = CodeKind::Gpef { n, mpow: mult_powers(n, m) };
    GroupTable::from_codes(kind, &[n, 1], DEFAULT_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlphaGens {
    pub g: u32,
    pub h: u32,
    pub alpha: u32,
}

/// `G_{2,e,2}` extended by the involution `g -> gh, h -> h^-1`. Generators are `[g, h, alpha]`.
pub fn extend_by_alpha(e: u32) -> Result<(GroupTable, AlphaGens)> {
    if !(3..=11).contains(&e) {
        return Err(Error::InvalidParameters(format!("alpha extension needs 3 <= e <= 11, got {e}")));
    }
    let n = 1u32 << e;
    let mpow = mult_powers(n, 5);
    let gm = |a: u32, b: u32| CodeKind::gmul(n, &mpow, a, b);
    // sigma(g^i h^j) = (gh)^i h^-j
    let gh = n + 1;
    let mut ghp = vec![0u32; n as usize];
    for i in 1..n as usize {
        ghp[i] = gm(ghp[i - 1], gh);
    }
    let mut sigma = vec![0u32; (n * n) as usize];
    for i in 0..n {
        for j in 0..n {
            sigma[(i * n + j) as usize] = gm(ghp[i as usize], (n - j) % n);
        }
    }
    let kind = CodeKind::Alpha { n, mpow, sigma };
    let t = GroupTable::from_codes(kind, &[n << 1, 1 << 1, 1], DEFAULT_CAP)?;
    let gens = t.generators();
    let ag = AlphaGens { g: gens[0], h: gens[1], alpha: gens[2] };
    Ok((t, ag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::nilpotence_class;

    #[test]
    fn orders_and_relations() {
        assert_eq!(nilpotent_gpef(2, 4, 2).unwrap().order(), 256);
        let g = nilpotent_gpef(3, 2, 1).unwrap();
        assert_eq!(g.order(), 81);
        let (x, h) = (g.generators()[0], g.generators()[1]);
        assert_eq!(g.conj(h, x), g.pow(h, 4));
        assert!(!g.is_abelian());
        assert!(nilpotent_gpef(5, 1, 1).unwrap().is_abelian());
        assert!(nilpotent_gpef(4, 2, 1).is_err());
        assert!(nilpotent_gpef(3, 2, 3).is_err());
    }

    #[test]
    fn alpha_extension() {
        let (a, s) = extend_by_alpha(4).unwrap();
        assert_eq!(a.order(), 512);
        assert_eq!(a.mul(s.alpha, s.alpha), 0);
        assert_eq!(a.conj(s.h, s.alpha), a.pow(s.h, 15));
        assert_eq!(a.conj(s.g, s.alpha), a.mul(s.g, s.h));
        assert_eq!(nilpotence_class(&a), Some(5));
        assert!(extend_by_alpha(2).is_err());
    }
}
