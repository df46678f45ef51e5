use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::map::FlagMap;
use crate::perm::Perm;

/// The fourteen edge-transitive classes. `S` stands for the star.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EtClass {
    C1,
    C2,
    C2S,
    C2P,
    C2Ex,
    C2SEx,
    C2PEx,
    C3,
    C4,
    C4S,
    C4P,
    C5,
    C5S,
    C5P,
}

use EtClass::*;

/// Map operations generating the action on classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    D,
    P,
}

impl Op {
    pub fn apply(self, m: &FlagMap) -> FlagMap {
        match self {
            Op::D => m.dual(),
            Op::P => m.petrie(),
        }
    }
}

impl EtClass {
    pub const ALL: [EtClass; 14] = [C1, C2, C2S, C2P, C2Ex, C2SEx, C2PEx, C3, C4, C4S, C4P, C5, C5S, C5P];

    pub fn label(self) -> &'static str {
        match self {
            C1 => "1",
            C2 => "2",
            C2S => "2s",
            C2P => "2P",
            C2Ex => "2ex",
            C2SEx => "2sex",
            C2PEx => "2Pex",
            C3 => "3",
            C4 => "4",
            C4S => "4s",
            C4P => "4P",
            C5 => "5",
            C5S => "5s",
            C5P => "5P",
        }
    }

    pub fn index(self) -> usize {
        match self {
            C1 => 1,
            C2 | C2S | C2P | C2Ex | C2SEx | C2PEx => 2,
            _ => 4,
        }
    }

    pub fn dual(self) -> EtClass {
        match self {
            C2 => C2S,
            C2S => C2,
            C2Ex => C2SEx,
            C2SEx => C2Ex,
            C4 => C4S,
            C4S => C4,
            C5 => C5S,
            C5S => C5,
            t => t,
        }
    }

    pub fn petrie(self) -> EtClass {
        match self {
            C2S => C2P,
            C2P => C2S,
            C2SEx => C2PEx,
            C2PEx => C2SEx,
            C4S => C4P,
            C4P => C4S,
            C5S => C5P,
            C5P => C5S,
            t => t,
        }
    }

    pub fn apply(self, op: Op) -> EtClass {
        match op {
            Op::D => self.dual(),
            Op::P => self.petrie(),
        }
    }

    /// Classes properly covered by this one.
    pub fn covered(self) -> &'static [EtClass] {
        match self {
            C1 => &[],
            C2 | C2S | C2P | C2Ex | C2SEx | C2PEx => &[C1],
            C3 => &[C1, C2, C2S, C2P],
            C4 => &[C1, C2],
            C4S => &[C1, C2S],
            C4P => &[C1, C2P],
            C5 => &[C1, C2, C2SEx, C2PEx],
            C5S => &[C1, C2S, C2Ex, C2PEx],
            C5P => &[C1, C2P, C2Ex, C2SEx],
        }
    }

    /// Class with a direct builder and the operations taking it here.
    pub fn route(self) -> (EtClass, &'static [Op]) {
        match self {
            C1 | C2 | C2Ex | C2PEx | C3 | C4 | C5 => (self, &[]),
            C2S => (C2, &[Op::D]),
            C2P => (C2, &[Op::D, Op::P]),
            C2SEx => (C2Ex, &[Op::D]),
            C4S => (C4, &[Op::D]),
            C4P => (C4, &[Op::D, Op::P]),
            C5S => (C5, &[Op::D]),
            C5P => (C5, &[Op::D, Op::P]),
        }
    }

    pub fn parent_shape(self) -> &'static str {
        match self {
            C1 => "V4 * C2",
            C2 | C2S | C2P => "C2 * C2 * C2",
            C2Ex | C2SEx | C2PEx => "C2 * Cinf",
            C3 => "C2 * C2 * C2 * C2",
            C4 | C4S | C4P => "C2 * C2 * Cinf",
            C5 | C5S | C5P => "Cinf * Cinf",
        }
    }

    /// Orbit under duality and Petrie duality, in table order.
    pub fn orbit(self) -> &'static [EtClass] {
        match self {
            C1 => &[C1],
            C2 | C2S | C2P => &[C2, C2S, C2P],
            C2Ex | C2SEx | C2PEx => &[C2Ex, C2SEx, C2PEx],
            C3 => &[C3],
            C4 | C4S | C4P => &[C4, C4S, C4P],
            C5 | C5S | C5P => &[C5, C5S, C5P],
        }
    }

    pub fn basic_map(self) -> FlagMap {
        let p = |n: usize, s: &str| Perm::parse(s, Some(n)).expect("constant cycle string");
        // For index 2, r_i is the swap exactly when R_i lies outside the parent group.
        let two = |swaps: [bool; 3]| {
            let r = swaps.map(|s| if s { p(2, "(1,2)") } else { p(2, "()") });
            let [r0, r1, r2] = r;
            FlagMap::new(r0, r1, r2).expect("basic map is valid")
        };
        let four = |r1: &str| FlagMap::new(p(4, "(1,2)(3,4)"), p(4, r1), p(4, "(1,4)(2,3)")).expect("basic map is valid");
        match self {
            C1 => FlagMap::new(p(1, "()"), p(1, "()"), p(1, "()")).unwrap(),
            C2 => two([true, false, false]),
            C2S => two([false, false, true]),
            C2P => two([true, false, true]),
            C2Ex => two([true, true, false]),
            C2SEx => two([false, true, true]),
            C2PEx => two([true, true, true]),
            C3 => four("()"),
            C4 => four("(1,4)"),
            C4S => four("(1,2)"),
            C4P => four("(1,3)"),
            C5 => four("(1,4)(2,3)"),
            C5S => four("(1,2)(3,4)"),
            C5P => four("(1,3)(2,4)"),
        }
    }
}

impl fmt::Display for EtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for EtClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<EtClass> {
        let t = s.trim().replace('*', "s");
        EtClass::ALL
            .into_iter()
            .find(|c| c.label() == t)
            .ok_or_else(|| Error::Parse(format!("unknown class label {s:?}")))
    }
}

impl Serialize for EtClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for EtClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn basic_maps() -> &'static [FlagMap] {
    static CELL: OnceLock<Vec<FlagMap>> = OnceLock::new();
    CELL.get_or_init(|| EtClass::ALL.iter().map(|t| t.basic_map()).collect())
}

/// Class of an edge-transitive map, or None when Aut has more than one edge orbit.
pub fn classify(m: &FlagMap) -> Option<EtClass> {
    let q = m.quotient_by_aut();
    if q.summary().e != 1 {
        return None;
    }
    EtClass::ALL.into_iter().zip(basic_maps()).find(|(_, b)| b.is_isomorphic(&q)).map(|(t, _)| t)
}

/// `omega_dual` and `omega_petrie` by their usual names.
pub fn omega_dual(t: EtClass) -> EtClass {
    t.dual()
}

pub fn omega_petrie(t: EtClass) -> EtClass {
    t.petrie()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for t in EtClass::ALL {
            assert_eq!(t.label().parse::<EtClass>().unwrap(), t);
            let j = serde_json::to_string(&t).unwrap();
            assert_eq!(serde_json::from_str::<EtClass>(&j).unwrap(), t);
        }
        assert_eq!("2*ex".parse::<EtClass>().unwrap(), C2SEx);
    }

    #[test]
    fn omega_is_s3() {
        for t in EtClass::ALL {
            assert_eq!(t.dual().dual(), t);
            assert_eq!(t.petrie().petrie(), t);
            // DPD = PDP in S_3
            assert_eq!(t.dual().petrie().dual(), t.petrie().dual().petrie());
            let (rep, ops) = t.route();
            assert_eq!(ops.iter().fold(rep, |c, &o| c.apply(o)), t);
            for &c in t.covered() {
                assert!(t.dual().covered().contains(&c.dual()));
                assert!(t.petrie().covered().contains(&c.petrie()));
            }
        }
    }

    #[test]
    fn basic_maps_classify_below() {
        assert_eq!(classify(&C1.basic_map()), Some(C1));
        for t in &EtClass::ALL[1..] {
            let c = classify(&t.basic_map());
            assert_ne!(c, Some(*t));
            assert!(c.is_some());
        }
    }
}
