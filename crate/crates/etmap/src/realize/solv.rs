use std::collections::BTreeMap;

use super::pairs;
use crate::classes::EtClass::*;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::parent::{EpimorphismSpec, Family, GroupDesc};
use crate::perm::Perm;

fn family_spec(class: crate::classes::EtClass, family: Family, images: &[(&str, &str)]) -> EpimorphismSpec {
    let images: BTreeMap<String, String> = images.iter().map(|&(k, v)| (k.to_string(), v.to_string())).collect();
    EpimorphismSpec { class, group: GroupDesc::Family(family), images }
}

/// Chiral map with nilpotent 2-group `G_{2,e,2} <alpha>`: X -> g, Y -> alpha.
pub fn nilpotent_chiral(e: u32) -> Result<EpimorphismSpec> {
    if !(4..=11).contains(&e) {
        return Err(Error::InvalidParameters(format!("nilpotent_chiral needs 4 <= e <= 11, got {e}")));
    }
    Ok(family_spec(C2PEx, Family::Alpha { e }, &[("X", "g^1 h^0 a^0"), ("Y", "g^0 h^0 a^1")]))
}

/// Class-5 map with group `G_{p,e,1}`: S -> g, S' -> h.
pub fn nilpotent_class5(p: u32, e: u32) -> EpimorphismSpec {
    family_spec(C5, Family::Gpef { p, e, f: 1 }, &[("S", "g^1 h^0"), ("S'", "g^0 h^1")])
}

/// The {m,2} circuit on the sphere, group D_m x C_2.
pub fn dihedral_spec(m: u32) -> Result<EpimorphismSpec> {
    if m < 3 {
        return Err(Error::InvalidParameters("dihedral_spec needs m >= 3".into()));
    }
    let n = m as usize + 2;
    // reflections i -> -i and i -> 1-i of Z_m, points 1..m
    let refl = |s: u32| -> Perm {
        let ps: Vec<(u32, u32)> = (0..m)
            .map(|i| (i, (s + m - i) % m))
            .filter(|(i, j)| i < j)
            .map(|(i, j)| (i + 1, j + 1))
            .collect();
        pairs(n, &ps)
    };
    EpimorphismSpec::from_perms(C1, &[refl(0), refl(1), pairs(n, &[(m + 1, m + 2)])])
}

/// Rotary map of Gamma+ onto V_4; classifies as 1.
pub fn v4_rotary() -> Result<EpimorphismSpec> {
    EpimorphismSpec::parse_perms(C2PEx, 4, &["(1,2)(3,4)", "(1,3)(2,4)"])
}

/// Edmonds embeddings of K_8: AGL_1(8) on GF(8), x: t -> wt, y: t -> t+1.
/// The second spec uses w^-1 and gives the mirror image.
pub fn edmonds_k8() -> Result<(EpimorphismSpec, EpimorphismSpec)> {
    let f = Field::new(8)?;
    let affine = |a: u32, b: u32| -> Perm {
        Perm::from_images(f.elements().map(|t| f.add(f.mul(a, t), b)).collect()).expect("affine map is bijective")
    };
    let w = f.primitive();
    let y = affine(1, 1);
    let one = EpimorphismSpec::from_perms(C2PEx, &[affine(w, 0), y.clone()])?;
    let two = EpimorphismSpec::from_perms(C2PEx, &[affine(f.inv(w).unwrap(), 0), y])?;
    Ok((one, two))
}
