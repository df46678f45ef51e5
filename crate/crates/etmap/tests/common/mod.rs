#![allow(dead_code)]

use etmap::classes::{classify, EtClass};
use etmap::map::FlagMap;
use etmap::parent::{parent_generators, EpimorphismSpec};
use etmap::perm::{Perm, PermGroupSpec};
use etmap::Result;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const MAX_ORDER: usize = 2000;

fn random_perm(rng: &mut StdRng, d: usize) -> Perm {
    let mut v: Vec<u32> = (0..d as u32).collect();
    v.shuffle(rng);
    Perm::from_images(v).unwrap()
}

/// Product of 1..=d/2 disjoint random transpositions.
fn random_involution(rng: &mut StdRng, d: usize) -> Perm {
    let mut pts: Vec<u32> = (0..d as u32).collect();
    pts.shuffle(rng);
    let k = rng.gen_range(1..=d / 2);
    let mut img: Vec<u32> = (0..d as u32).collect();
    for c in pts.chunks(2).take(k) {
        img[c[0] as usize] = c[1];
        img[c[1] as usize] = c[0];
    }
    Perm::from_images(img).unwrap()
}

/// A random spec for `target`'s representative class over the group its images
/// generate, with that group of order at most MAX_ORDER.
pub fn random_spec(rng: &mut StdRng, target: EtClass) -> EpimorphismSpec {
    let (rep, _) = target.route();
    loop {
        let d = rng.gen_range(3..=7);
        let imgs: Vec<Perm> = parent_generators(rep)
            .iter()
            .map(|g| if g.involution { random_involution(rng, d) } else { random_perm(rng, d) })
            .collect();
        if rep == EtClass::C1 && !imgs[0].then(&imgs[2]).pow(2).is_identity() {
            continue;
        }
        match PermGroupSpec::new(imgs.clone()).unwrap().order(MAX_ORDER) {
            Ok(n) if n > 1 => return EpimorphismSpec::from_perms(rep, &imgs).unwrap(),
            _ => continue,
        }
    }
}

pub struct Sample {
    pub target: EtClass,
    pub spec: EpimorphismSpec,
    pub expected: EtClass,
    pub map: FlagMap,
}

pub fn sample(rng: &mut StdRng) -> Result<Sample> {
    let target = *EtClass::ALL.choose(rng).unwrap();
    let (_, ops) = target.route();
    let spec = random_spec(rng, target);
    let r = spec.resolve(MAX_ORDER)?;
    let expected = ops.iter().fold(r.expected_class(), |c, &o| c.apply(o));
    let map = r.transform(ops)?;
    Ok(Sample { target, spec, expected, map })
}

/// Failures among `count` random specs drawn from `seed`.
pub fn classify_matches_expected(seed: u64, count: usize) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..count {
        match sample(&mut rng) {
            Ok(s) => {
                let got = classify(&s.map);
                if got != Some(s.expected) {
                    bad.push(format!("{}: expected {} got {:?} for {}", s.target, s.expected, got, s.spec.to_json()));
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
    }
    bad
}

/// Ω-equivariance and involutivity of dual and Petrie dual.
pub fn omega_failures(m: &FlagMap) -> Vec<String> {
    let mut bad = Vec::new();
    let c = classify(m);
    if classify(&m.dual()) != c.map(|c| c.dual()) {
        bad.push("dual class".into());
    }
    if classify(&m.petrie()) != c.map(|c| c.petrie()) {
        bad.push("petrie class".into());
    }
    if m.dual().dual() != *m {
        bad.push("dual twice".into());
    }
    if m.petrie().petrie() != *m {
        bad.push("petrie twice".into());
    }
    bad
}

/// Primitive group containing an l-cycle with l <= n - 3 must be A_n or S_n.
/// Returns None when the hypothesis does not apply.
pub fn jordan_holds(gens: &[Perm]) -> Option<bool> {
    let n = gens[0].degree();
    let g = PermGroupSpec::new(gens.to_vec()).ok()?;
    if !g.is_transitive() || !g.is_primitive().ok()? {
        return None;
    }
    let els = g.elements(1 << 20).ok()?;
    let short_cycle = els.iter().any(|x| {
        let c = x.cycles();
        c.len() == 1 && c[0].len() >= 2 && c[0].len() + 3 <= n
    });
    if !short_cycle {
        return None;
    }
    let half: usize = (1..=n).product::<usize>() / 2;
    Some(els.len() == half || els.len() == 2 * half)
}

pub fn random_generators(rng: &mut StdRng, d: usize, k: usize) -> Vec<Perm> {
    (0..k).map(|_| random_perm(rng, d)).collect()
}
