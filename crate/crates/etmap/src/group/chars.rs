use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::GroupTable;
use crate::error::{Error, Result};

/// Character table read from a fixture. Entries are `[re, im]` pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTable {
    pub order: u64,
    /// Permutation generators of the group, for fixtures checked by brute force.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    pub classes: Vec<ClassEntry>,
    pub chars: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassEntry {
    pub size: u64,
    pub label: String,
    /// Optional representative in cycle notation, used to match classes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<String>,
}

const TOL: f64 = 1e-6;

impl CharacterTable {
    pub fn from_json(s: &str) -> Result<CharacterTable> {
        let ct: CharacterTable = serde_json::from_str(s)?;
        ct.validate()?;
        Ok(ct)
    }

    /// Class sizes sum to the order, degrees positive, rows orthonormal.
    pub fn validate(&self) -> Result<()> {
        let k = self.classes.len();
        if self.classes.iter().map(|c| c.size).sum::<u64>() != self.order {
            return Err(Error::BadCharacterTable("class sizes do not sum to the order".into()));
        }
        if self.chars.len() != k || self.chars.iter().any(|r| r.len() != k) {
            return Err(Error::BadCharacterTable("table is not square".into()));
        }
        for (i, row) in self.chars.iter().enumerate() {
            if row[0][0] <= 0.0 || row[0][1].abs() > TOL {
                return Err(Error::BadCharacterTable(format!("row {i} has bad degree")));
            }
            for (j, other) in self.chars.iter().enumerate() {
                let mut re = 0.0;
                let mut im = 0.0;
                for c in 0..k {
                    let (a, b) = (row[c], other[c]);
                    // a * conj(b)
                    re += self.classes[c].size as f64 * (a[0] * b[0] + a[1] * b[1]);
                    im += self.classes[c].size as f64 * (a[1] * b[0] - a[0] * b[1]);
                }
                let want = if i == j { self.order as f64 } else { 0.0 };
                if (re - want).abs() > TOL * self.order as f64 || im.abs() > TOL * self.order as f64 {
                    return Err(Error::BadCharacterTable(format!("rows {i} and {j} not orthonormal")));
                }
            }
        }
        Ok(())
    }
}

fn cmul(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]]
}

/// Number of (a, b, c) in classes A, B, C with abc = 1, by the character sum.
/// Errors when the value is not an integer within tolerance.
pub fn frobenius_count(ct: &CharacterTable, a: usize, b: usize, c: usize) -> Result<u64> {
    let n = ct.order as f64;
    let mut sum = [0.0, 0.0];
    for row in &ct.chars {
        let t = cmul(cmul(row[a], row[b]), row[c]);
        sum[0] += t[0] / row[0][0];
        sum[1] += t[1] / row[0][0];
    }
    let scale = (ct.classes[a].size * ct.classes[b].size * ct.classes[c].size) as f64 / n;
    let (re, im) = (scale * sum[0], scale * sum[1]);
    let rounded = re.round();
    if (re - rounded).abs() > TOL * re.abs().max(1.0) || im.abs() > TOL * re.abs().max(1.0) || rounded < 0.0 {
        return Err(Error::BadCharacterTable(format!("non-integral count {re}+{im}i")));
    }
    Ok(rounded as u64)
}

/// Pairs (a, b) with a in A, b in B and (ab)^-1 in C. Sharded over A; the
/// total does not depend on the split.
pub fn count_triples_brute(g: &GroupTable, a: &[u32], b: &[u32], c: &[u32]) -> u64 {
    let mut in_c = vec![false; g.order()];
    for &x in c {
        in_c[x as usize] = true;
    }
    a.par_iter()
        .map(|&x| b.iter().filter(|&&y| in_c[g.inv(g.mul(x, y)) as usize]).count() as u64)
        .sum()
}
