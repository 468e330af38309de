//! Blow-up combinatorics of the Toda lattice.
//!
//! A sign vector records the signs of the Toda variables `a_i`. A simple
//! reflection `s_i` acts by `ε_j ↦ ε_j ε_i^{C_{j,i}}`, so only the parity of
//! the Cartan entries matters. Walking a reduced word `s_{j_1} ⋯ s_{j_r}` from
//! `ε` produces the orbit `ε → s_{j_1}ε → s_{j_2}s_{j_1}ε → ⋯ → w^{-1}ε`, and
//! `η(w, ε)` counts the steps taken from a vector whose `j_k`-th sign is `-`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cartan::{cartan_matrix, CartanMatrix, LieType};
use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::weyl::{longest_element, WeylElement, WeylGroup};

/// Element of `{+,-}^l`; bit `i` set means `ε_i = -`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    len: usize,
    minus: u64,
}

impl SignVector {
    pub fn all_minus(len: usize) -> SignVector {
        assert!(len <= 64);
        SignVector { len, minus: if len == 64 { u64::MAX } else { (1u64 << len) - 1 } }
    }

    pub fn all_plus(len: usize) -> SignVector {
        assert!(len <= 64);
        SignVector { len, minus: 0 }
    }

    pub fn from_mask(len: usize, minus: u64) -> SignVector {
        assert!(len <= 64);
        SignVector { len, minus: minus & SignVector::all_minus(len).minus }
    }

    /// Every sign vector of length `len`, all-plus first.
    pub fn all(len: usize) -> impl Iterator<Item = SignVector> {
        assert!(len < 32);
        (0u64..1 << len).map(move |m| SignVector::from_mask(len, m))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn mask(&self) -> u64 {
        self.minus
    }

    pub fn is_minus(&self, i: usize) -> bool {
        self.minus >> i & 1 == 1
    }

    pub fn is_all_minus(&self) -> bool {
        *self == SignVector::all_minus(self.len)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.len == rank {
            Ok(())
        } else {
            Err(Error::SignLength { expected: rank, got: self.len })
        }
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.is_minus(i) { "-" } else { "+" })?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<SignVector> {
        let s = s.trim();
        if s.is_empty() || s.len() > 64 {
            return Err(Error::InvalidSigns(s.to_string()));
        }
        let mut minus = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '-' | '−' => minus |= 1 << i,
                '+' => {}
                _ => return Err(Error::InvalidSigns(s.to_string())),
            }
        }
        Ok(SignVector { len: s.chars().count(), minus })
    }
}

impl Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Precomputed flip masks: `s_i` with `ε_i = -` flips every `ε_j` with
/// `C_{j,i}` odd.
#[derive(Clone, Debug)]
pub struct SignAction {
    flips: Vec<u64>,
}

impl SignAction {
    pub fn new(cartan: &CartanMatrix) -> SignAction {
        let n = cartan.rank();
        let flips = (0..n)
            .map(|i| (0..n).filter(|&j| cartan.get(j, i).rem_euclid(2) == 1).fold(0u64, |m, j| m | 1 << j))
            .collect();
        SignAction { flips }
    }

    pub fn apply(&self, i: usize, eps: SignVector) -> SignVector {
        if eps.is_minus(i) {
            SignVector { len: eps.len, minus: eps.minus ^ self.flips[i] }
        } else {
            eps
        }
    }

    /// Final sign vector and blow-up count along a word.
    pub fn walk(&self, word: &[usize], eps: SignVector) -> (SignVector, u32) {
        word.iter().fold((eps, 0), |(cur, eta), &i| (self.apply(i, cur), eta + cur.is_minus(i) as u32))
    }
}

pub fn sign_act(i: usize, eps: SignVector, cartan: &CartanMatrix) -> Result<SignVector> {
    eps.check_rank(cartan.rank())?;
    if i >= cartan.rank() {
        return Err(Error::IndexOutOfRange { index: i, rank: cartan.rank() });
    }
    Ok(SignAction::new(cartan).apply(i, eps))
}

/// `η(w, ε)` along the stored reduced word of `w`.
pub fn eta(w: &WeylElement, eps: SignVector, cartan: &CartanMatrix) -> Result<u32> {
    eps.check_rank(cartan.rank())?;
    if w.rank() != cartan.rank() {
        return Err(Error::MismatchedTypes);
    }
    Ok(SignAction::new(cartan).walk(w.word(), eps).1)
}

/// `η` for the system of the transposed Cartan matrix.
pub fn eta_dual(w: &WeylElement, eps: SignVector, cartan: &CartanMatrix) -> Result<u32> {
    eta(w, eps, &cartan.transpose())
}

/// `η(w*, ε)` from the longest word, with no enumeration.
pub fn eta_longest(t: LieType, eps: SignVector) -> Result<u32> {
    eta(&longest_element(t), eps, &cartan_matrix(t))
}

/// `η(·, ε)` and the local sign `w^{-1}ε` for every element of a group,
/// indexed like the group.
#[derive(Clone, Debug)]
pub struct EtaTable {
    eps: SignVector,
    values: Vec<u32>,
    local_signs: Vec<SignVector>,
}

impl EtaTable {
    pub fn build(group: &WeylGroup, eps: SignVector) -> Result<EtaTable> {
        EtaTable::build_with(group, group.cartan(), eps)
    }

    /// Same recurrence with the sign action of another Cartan matrix of the
    /// same Coxeter group (the transpose, for `η̌`).
    pub fn build_with(group: &WeylGroup, cartan: &CartanMatrix, eps: SignVector) -> Result<EtaTable> {
        eps.check_rank(group.rank())?;
        if cartan.rank() != group.rank() {
            return Err(Error::MismatchedTypes);
        }
        let action = SignAction::new(cartan);
        let n = group.order();
        let mut values = vec![0u32; n];
        let mut local_signs = vec![eps; n];
        // Breadth-first indices put every parent before its children.
        for idx in 1..n {
            let (p, i) = group.parent(idx).expect("non-identity element has a parent");
            let before = local_signs[p];
            values[idx] = values[p] + before.is_minus(i) as u32;
            local_signs[idx] = action.apply(i, before);
        }
        Ok(EtaTable { eps, values, local_signs })
    }

    pub fn eps(&self) -> SignVector {
        self.eps
    }

    pub fn value(&self, idx: usize) -> u32 {
        self.values[idx]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn local_sign(&self, idx: usize) -> SignVector {
        self.local_signs[idx]
    }

    pub fn max(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

pub fn eta_table(t: LieType, eps: SignVector, cap: usize) -> Result<(WeylGroup, EtaTable)> {
    let group = WeylGroup::enumerate(t, cap)?;
    let table = EtaTable::build(&group, eps)?;
    Ok((group, table))
}

/// `(-1)^{l(w*)} Σ_{w ∈ S} (-1)^{l(w)} q^{η(w,ε)}` over a subset `S` of `W`.
pub fn alternating_sum(group: &WeylGroup, table: &EtaTable, subset: impl IntoIterator<Item = usize>) -> QPoly {
    let top = group.length(group.longest());
    let mut p = QPoly::zero();
    for idx in subset {
        let sign = if (top + group.length(idx)) % 2 == 0 { 1 } else { -1 };
        p.add_term(table.value(idx), BigInt::from(sign));
    }
    p
}

/// The alternating sum of blow-ups `p_ε(q)` over all of `W`.
pub fn p_poly(group: &WeylGroup, eps: SignVector) -> Result<QPoly> {
    let table = EtaTable::build(group, eps)?;
    Ok(alternating_sum(group, &table, 0..group.order()))
}

/// Elements whose sign orbit fixes `(-…-)`, in index order.
pub fn w_minus(group: &WeylGroup) -> Vec<usize> {
    let all = SignVector::all_minus(group.rank());
    let table = EtaTable::build(group, all).expect("rank matches");
    (0..group.order()).filter(|&idx| table.local_sign(idx) == all).collect()
}
