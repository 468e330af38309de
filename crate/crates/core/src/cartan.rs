//! Root-system data for the simple types: Cartan matrices, the B/C duality
//! and the invariant degrees of the compact subgroup of the dual split group.
//!
//! Matrices are indexed `C[(j, i)]` with `s_i(α_j) = α_j - C[(j, i)] α_i`,
//! so `C_{j,i} = <α_j, α_i^∨>`. Nodes follow the Bourbaki numbering (0-based
//! here). For non-simply-laced types the row of the long simple root carries
//! the `-2` (or `-3` for G2).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple split type such as `A3` or `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<LieType> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InvalidRank { family: family.letter(), rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots, i.e. the length of the longest Weyl element.
    pub fn positive_roots(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 1) / 2,
            Family::B | Family::C => l * l,
            Family::D => l * (l - 1),
            Family::E => match l {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Order of the Weyl group from the classical product formulas.
    pub fn weyl_order(&self) -> u128 {
        let l = self.rank as u128;
        let fact = |n: u128| (1..=n).product::<u128>();
        match self.family {
            Family::A => fact(l + 1),
            Family::B | Family::C => (1u128 << l) * fact(l),
            Family::D => (1u128 << (l - 1)) * fact(l),
            Family::E => match l {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<LieType> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::InvalidType(s.to_string()))?;
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidType(s.to_string()));
        }
        let rank = rest.parse().map_err(|_| Error::InvalidType(s.to_string()))?;
        LieType::new(family, rank)
    }
}

impl Serialize for LieType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LieType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Square integer Cartan matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanMatrix {
    rank: usize,
    entries: Vec<i64>,
}

impl CartanMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> CartanMatrix {
        let rank = rows.len();
        assert!(rows.iter().all(|r| r.len() == rank), "Cartan matrix must be square");
        CartanMatrix { rank, entries: rows.concat() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Entry `C_{j,i}`.
    pub fn get(&self, j: usize, i: usize) -> i64 {
        self.entries[j * self.rank + i]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> CartanMatrix {
        let n = self.rank;
        let mut entries = vec![0; n * n];
        for j in 0..n {
            for i in 0..n {
                entries[i * n + j] = self.entries[j * n + i];
            }
        }
        CartanMatrix { rank: n, entries }
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> i64 {
        let n = self.rank;
        let mut m: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| m[r * n + k] != 0) else {
                    return 0;
                };
                for c in 0..n {
                    m.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            for r in k + 1..n {
                for c in k + 1..n {
                    m[r * n + c] = (m[r * n + c] * m[k * n + k] - m[r * n + k] * m[k * n + c]) / prev;
                }
            }
            prev = m[k * n + k];
        }
        (sign * m[n * n - 1]) as i64
    }

    /// Checks the generalized Cartan matrix axioms and invertibility.
    pub fn is_valid(&self) -> bool {
        let n = self.rank;
        for j in 0..n {
            if self.get(j, j) != 2 {
                return false;
            }
            for i in 0..n {
                if i != j && (self.get(j, i) > 0 || (self.get(j, i) == 0) != (self.get(i, j) == 0)) {
                    return false;
                }
            }
        }
        self.determinant() != 0
    }
}

pub fn cartan_matrix(t: LieType) -> CartanMatrix {
    let l = t.rank();
    let mut m = vec![vec![0i64; l]; l];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |a: usize, b: usize| {
        m[a][b] = -1;
        m[b][a] = -1;
    };
    match t.family() {
        Family::A | Family::B | Family::C | Family::F | Family::G => {
            for i in 0..l - 1 {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..l - 2 {
                link(i, i + 1);
            }
            link(l - 3, l - 1);
        }
        Family::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..l - 1 {
                link(i, i + 1);
            }
        }
    }
    match t.family() {
        Family::B => m[l - 2][l - 1] = -2,
        Family::C => m[l - 1][l - 2] = -2,
        Family::F => m[1][2] = -2,
        Family::G => m[1][0] = -3,
        _ => {}
    }
    CartanMatrix::from_rows(&m)
}

/// Type of the split algebra whose Cartan matrix is the transpose.
pub fn dual_type(t: LieType) -> LieType {
    let family = match t.family() {
        Family::B => Family::C,
        Family::C => Family::B,
        f => f,
    };
    LieType { family, rank: t.rank() }
}

/// Invariants of the maximal compact subgroup of the dual split group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCompactData {
    pub check_k_name: String,
    /// Degrees of the basic invariants, sorted, with multiplicity.
    pub degrees: Vec<u32>,
    pub g: usize,
    pub r: u32,
    pub dim_k: u32,
}

impl DualCompactData {
    pub fn degree_sum(&self) -> u32 {
        self.degrees.iter().sum()
    }
}

pub fn compact_dual_data(t: LieType) -> DualCompactData {
    let l = t.rank() as u32;
    let evens_to = |top: u32| (1..=top / 2).map(|k| 2 * k).collect::<Vec<u32>>();
    let doubled = |v: Vec<u32>| v.into_iter().flat_map(|d| [d, d]).collect::<Vec<u32>>();

    let (name, mut degrees): (String, Vec<u32>) = match t.family() {
        Family::A => {
            let mut d = if l % 2 == 0 { evens_to(l) } else { evens_to(l - 1) };
            if l % 2 == 1 {
                d.push((l + 1) / 2);
            }
            (format!("SO({})", l + 1), d)
        }
        Family::B => (format!("U({l})"), (1..=l).collect()),
        Family::C => {
            let mut d;
            if l % 2 == 0 {
                d = doubled(evens_to(l - 2));
                d.push(l);
                d.push(l / 2);
            } else {
                d = doubled(evens_to(l - 1));
                d.push((l + 1) / 2);
            }
            (format!("SO({l})xSO({})", l + 1), d)
        }
        Family::D => {
            let d = if l % 2 == 0 {
                let mut d = doubled(evens_to(l - 2));
                d.extend([l / 2, l / 2]);
                d
            } else {
                doubled(evens_to(l - 1))
            };
            (format!("SO({l})xSO({l})"), d)
        }
        Family::E => match l {
            6 => ("Sp(4)".to_string(), vec![2, 4, 6, 8]),
            7 => ("SU(8)".to_string(), (2..=8).collect()),
            _ => ("Spin(16)".to_string(), vec![2, 4, 6, 8, 10, 12, 14, 8]),
        },
        Family::F => ("Sp(1)xSp(3)".to_string(), vec![2, 2, 4, 6]),
        Family::G => ("SU(2)xSU(2)".to_string(), vec![2, 2]),
    };
    degrees.sort_unstable();
    let dim_k = degrees.iter().map(|d| 2 * d - 1).sum();
    let r = degrees.iter().map(|d| d - 1).sum();
    DualCompactData { check_k_name: name, g: degrees.len(), degrees, r, dim_k }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(ty("A2").to_string(), "A2");
        assert_eq!(ty("e8").to_string(), "E8");
        assert!("D3".parse::<LieType>().is_err());
        assert!("E9".parse::<LieType>().is_err());
        assert!("G3".parse::<LieType>().is_err());
        assert!("X2".parse::<LieType>().is_err());
        assert!("A".parse::<LieType>().is_err());
        assert!("A-1".parse::<LieType>().is_err());
        assert!("B1".parse::<LieType>().is_err());
        assert!("C2".parse::<LieType>().is_ok());
    }

    #[test]
    fn small_matrices() {
        assert_eq!(cartan_matrix(ty("A2")).rows(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(cartan_matrix(ty("G2")).rows(), vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(cartan_matrix(ty("B2")).rows(), vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(cartan_matrix(ty("C2")).rows(), vec![vec![2, -1], vec![-2, 2]]);
    }

    #[test]
    fn duality() {
        assert_eq!(dual_type(ty("B3")), ty("C3"));
        assert_eq!(dual_type(ty("C3")), ty("B3"));
        assert_eq!(dual_type(ty("A4")), ty("A4"));
        assert_eq!(dual_type(ty("G2")), ty("G2"));
        for s in ["A3", "B4", "C3", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let t = ty(s);
            let c = cartan_matrix(t);
            assert!(c.is_valid(), "{s}");
            if t.family() != Family::F && t.family() != Family::G {
                assert_eq!(cartan_matrix(dual_type(t)), c.transpose(), "{s}");
            }
        }
    }

    #[test]
    fn determinants() {
        // Index of the root lattice in the weight lattice.
        let cases = [("A4", 5), ("B3", 2), ("C3", 2), ("D4", 4), ("D5", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("F4", 1), ("G2", 1)];
        for (s, det) in cases {
            assert_eq!(cartan_matrix(ty(s)).determinant(), det, "{s}");
        }
    }

    #[test]
    fn dual_data_rows() {
        let a2 = compact_dual_data(ty("A2"));
        assert_eq!((a2.check_k_name.as_str(), a2.degrees.clone(), a2.g, a2.r, a2.dim_k), ("SO(3)", vec![2], 1, 1, 3));
        let b3 = compact_dual_data(ty("B3"));
        assert_eq!((b3.check_k_name.as_str(), b3.degrees.clone(), b3.g, b3.r, b3.dim_k), ("U(3)", vec![1, 2, 3], 3, 3, 9));
        let g2 = compact_dual_data(ty("G2"));
        assert_eq!((g2.degrees.clone(), g2.g, g2.r, g2.dim_k), (vec![2, 2], 2, 2, 6));
        assert_eq!(compact_dual_data(ty("C2")).degrees, vec![1, 2]);
        assert_eq!(compact_dual_data(ty("C4")).degrees, vec![2, 2, 2, 4]);
        assert_eq!(compact_dual_data(ty("D4")).degrees, vec![2, 2, 2, 2]);
        assert_eq!(compact_dual_data(ty("A5")).degrees, vec![2, 3, 4]);
        assert_eq!(compact_dual_data(ty("A1")).degrees, vec![1]);
    }

    #[test]
    fn dimension_matches_positive_roots() {
        for s in ["A1", "A2", "A5", "A6", "B2", "B5", "C2", "C3", "C5", "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2"] {
            let t = ty(s);
            let d = compact_dual_data(t);
            assert_eq!(d.dim_k as usize, t.positive_roots(), "{s}");
            assert_eq!(d.r + d.degree_sum(), d.dim_k, "{s}");
        }
    }
}
