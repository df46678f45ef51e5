use crate::classes::EtClass::*;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::parent::EpimorphismSpec;
use crate::perm::{Perm, PermGroupSpec};

/// 2x2 matrix of determinant 1, up to sign; entries are field elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Psl2Mat {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Psl2Mat {
    pub fn new(f: &Field, a: u32, b: u32, c: u32, d: u32) -> Result<Psl2Mat> {
        let det = f.sub(f.mul(a, d), f.mul(b, c));
        if det != 1 {
            return Err(Error::InvalidParameters(format!("determinant {} != 1", f.label(det))));
        }
        Ok(Psl2Mat { a, b, c, d })
    }

    /// From prime-field integers.
    pub fn ints(f: &Field, m: [i64; 4]) -> Result<Psl2Mat> {
        Psl2Mat::new(f, f.int(m[0]), f.int(m[1]), f.int(m[2]), f.int(m[3]))
    }

    pub fn mul(&self, f: &Field, o: &Psl2Mat) -> Psl2Mat {
        let dot = |x: u32, y: u32, z: u32, w: u32| f.add(f.mul(x, y), f.mul(z, w));
        Psl2Mat {
            a: dot(self.a, o.a, self.b, o.c),
            b: dot(self.a, o.b, self.b, o.d),
            c: dot(self.c, o.a, self.d, o.c),
            d: dot(self.c, o.b, self.d, o.d),
        }
    }

    pub fn trace(&self, f: &Field) -> u32 {
        f.add(self.a, self.d)
    }
}

/// Right action on row vectors of the projective line: point `i < q` is
/// `(i : 1)`, point `q` is infinity.
pub fn psl2_matrix_perm(f: &Field, m: &Psl2Mat) -> Perm {
    let q = f.q();
    let point = |x: u32, y: u32| if y == 0 { q } else { f.mul(x, f.inv(y).unwrap()) };
    let images = (0..=q)
        .map(|i| {
            let (x, y) = if i == q { (1, 0) } else { (i, 1) };
            point(f.add(f.mul(x, m.a), f.mul(y, m.c)), f.add(f.mul(x, m.b), f.mul(y, m.d)))
        })
        .collect();
    Perm::from_images(images).expect("a matrix of determinant 1 permutes the line")
}

/// PSL(2,q) on q+1 points.
pub fn psl2_group(q: u32) -> Result<PermGroupSpec> {
    let f = Field::new(q)?;
    let w = f.primitive();
    let gens = [
        Psl2Mat::ints(&f, [1, 1, 0, 1])?,
        Psl2Mat::ints(&f, [0, 1, -1, 0])?,
        Psl2Mat::new(&f, w, 0, 0, f.inv(w).unwrap())?,
    ];
    PermGroupSpec::new(gens.iter().map(|m| psl2_matrix_perm(&f, m)).collect())
}

fn target(q: u32) -> Result<Vec<String>> {
    Ok(psl2_group(q)?.generators.iter().map(|p| p.to_string()).collect())
}

fn spec_of(f: &Field, class: crate::classes::EtClass, ms: &[Psl2Mat]) -> Result<EpimorphismSpec> {
    let perms: Vec<Perm> = ms.iter().map(|m| psl2_matrix_perm(f, m)).collect();
    let mut s = EpimorphismSpec::from_perms(class, &perms)?;
    if let crate::parent::GroupDesc::Perm { generators, .. } = &mut s.group {
        *generators = target(f.q())?;
    }
    Ok(s)
}

/// Regular map with group PSL(2,q), q = 8 or q >= 11.
pub fn psl2_class1(q: u32) -> Result<EpimorphismSpec> {
    if q <= 5 || matches!(q, 7 | 9) {
        return Err(Error::InvalidParameters(format!("psl2_class1 needs q = 8 or q >= 11, got {q}")));
    }
    let f = Field::new(q)?;
    let r1 = Psl2Mat::ints(&f, [0, 1, -1, 0])?;
    let a = if q == 11 { f.int(2) } else { f.primitive() };
    let x = Psl2Mat::new(&f, a, 0, 0, f.inv(a).unwrap())?;
    let sq = |t: u32| f.mul(t, t);
    let candidates: Vec<u32> = if q == 11 { vec![f.int(2)] } else { f.elements().collect() };
    for a2 in candidates {
        // b'^2 = -1 - (a a')^2, d' = -a^2 a'
        let rhs = f.sub(f.neg(1), sq(f.mul(a, a2)));
        if a2 == 0 || rhs == 0 || !f.is_square(rhs) {
            continue;
        }
        let b2 = f.sqrt(rhs).unwrap();
        let d2 = f.neg(f.mul(sq(a), a2));
        let z = Psl2Mat::new(&f, a2, b2, b2, d2)?;
        // r0 = x r1^-1, r2 = r1^-1 z, and r1^-1 = r1 in PSL
        let spec = spec_of(&f, C1, &[x.mul(&f, &r1), r1, r1.mul(&f, &z)])?;
        if spec.resolve(crate::group::DEFAULT_CAP)?.check_ok().is_ok() {
            return Ok(spec);
        }
    }
    Err(Error::Unrealizable(format!("no a' found for q = {q}")))
}

/// Class-2 triple for PSL(2,7).
pub fn psl2_class2_q7() -> Result<EpimorphismSpec> {
    let f = Field::new(7)?;
    let ms = [
        Psl2Mat::ints(&f, [0, 1, -1, 0])?,
        Psl2Mat::ints(&f, [0, 2, 3, 0])?,
        Psl2Mat::ints(&f, [1, 3, -3, -1])?,
    ];
    spec_of(&f, C2, &ms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_formula() {
        for q in [4, 5, 7, 8, 9, 11, 13] {
            let want = q as usize * (q as usize * q as usize - 1) / if q % 2 == 0 { 1 } else { 2 };
            assert_eq!(psl2_group(q).unwrap().order(1 << 20).unwrap(), want, "q = {q}");
        }
    }

    #[test]
    fn q7_product_orders() {
        let s = psl2_class2_q7().unwrap();
        let r = s.resolve(1 << 16).unwrap();
        let g = &r.table;
        let o = |i: usize, j: usize| g.element_order(g.mul(r.imgs[i], r.imgs[j]));
        assert_eq!((o(0, 1), o(0, 2), o(1, 2)), (3, 3, 4));
        assert!(r.check_ok().is_ok());
    }
}
