use crate::error::{Error, Result};

/// GF(p^e). An element is the integer `sum c_i p^i` of its coefficient
/// vector modulo the pinned irreducible polynomial.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    prim: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

const MAX_Q: u32 = 1 << 16;

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Split q into (p, e) if it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

fn digits(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic `m`, coefficients low to high.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    for d in 1..=e / 2 {
        for low in 0..p.pow(d as u32) {
            let mut f = digits(low, p, d);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(q: u32) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
        Field::with(p, e)
    }

    pub fn with(p: u32, e: u32) -> Result<Field> {
        if !is_prime(p) || e == 0 || p.checked_pow(e).is_none_or(|q| q > MAX_Q) {
            return Err(Error::InvalidParameters(format!("GF({p}^{e}) unsupported")));
        }
        let q = p.pow(e);
        let modulus = (0..q)
            .map(|low| {
                let mut m = digits(low, p, e as usize);
                m.push(1);
                m
            })
            .find(|m| irreducible(m, p))
            .expect("an irreducible polynomial exists in every degree");
        let mulp = |a: u32, b: u32| -> u32 {
            let prod = poly_mul(&digits(a, p, e as usize), &digits(b, p, e as usize), p);
            undigits(&poly_rem(&prod, &modulus, p), p)
        };
        let order = |x: u32| -> u32 {
            let (mut y, mut k) = (x, 1);
            while y != 1 {
                y = mulp(y, x);
                k += 1;
            }
            k
        };
        let prim = (1..q).find(|&x| order(x) == q - 1).unwrap();
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut y = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = y;
            log[y as usize] = k as u32;
            y = mulp(y, prim);
        }
        Ok(Field { p, e, q, modulus, prim, exp, log })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> u32 {
        self.prim
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (x, y) = (digits(a, self.p, self.e as usize), digits(b, self.p, self.e as usize));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        undigits(&s, self.p)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let x = digits(a, self.p, self.e as usize);
        let s: Vec<u32> = x.iter().map(|u| (self.p - u) % self.p).collect();
        undigits(&s, self.p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.exp[((self.q - 1 - self.log[a as usize]) % (self.q - 1)) as usize])
    }

    pub fn pow(&self, a: u32, k: i64) -> u32 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let m = (self.q - 1) as i64;
        let l = (self.log[a as usize] as i64 * k.rem_euclid(m)).rem_euclid(m);
        self.exp[l as usize]
    }

    pub fn mult_order(&self, a: u32) -> u32 {
        let l = self.log[a as usize];
        (self.q - 1) / crate::perm::gcd(l as u64, (self.q - 1) as u64) as u32
    }

    /// Image of the prime-field integer `k`.
    pub fn int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as i64)
    }

    /// First square root in enumeration order.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        self.elements().find(|&x| self.mul(x, x) == a)
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize] % 2 == 0
    }

    /// Coefficient vector, constant term first.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        digits(a, self.p, self.e as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> u32 {
        undigits(c, self.p)
    }

    pub fn label(&self, a: u32) -> String {
        if self.e == 1 {
            return a.to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs(a).iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// Does some primitive root satisfy `l^(p^f) = l^-1` for some `0 <= f < e`?
pub fn priminv_check(p: u32, e: u32) -> Result<bool> {
    let f = Field::with(p, e)?;
    let q1 = (f.q() - 1) as u64;
    let inverted = (1..f.q()).filter(|&x| f.mult_order(x) as u64 == q1).any(|l| {
        let li = f.inv(l).unwrap();
        let mut y = l;
        for _ in 0..e {
            if y == li {
                return true;
            }
            y = f.frobenius(y);
        }
        false
    });
    Ok(inverted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_and_gf9_pins() {
        let f = Field::new(8).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        assert_eq!(f.primitive(), 2);
        let g = Field::new(9).unwrap();
        assert_eq!(g.modulus(), &[1, 0, 1]);
        assert_eq!(g.primitive(), 4);
        assert_eq!(g.label(4), "w+1");
    }

    #[test]
    fn axioms_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = Field::new(q).unwrap();
            assert_eq!(f.mult_order(f.primitive()), q - 1);
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [0, 1, q - 1] {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn priminv_small() {
        assert!(priminv_check(2, 2).unwrap());
        assert!(!priminv_check(3, 2).unwrap());
        assert!(priminv_check(2, 1).unwrap());
        assert!(priminv_check(3, 1).unwrap());
    }
}
