//! Weyl groups as integer matrices acting on the root lattice.
//!
//! An element is stored by its action on the simple roots: column `j` of the
//! row-major matrix holds the coordinates of `w(α_j)` in the simple-root basis.
//! Right multiplication by `s_i` only touches columns, which keeps the
//! breadth-first enumeration cheap, and `l(w s_i) > l(w)` exactly when column
//! `i` is a positive root.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::cartan::{cartan_matrix, CartanMatrix, Family, LieType};
use crate::error::{Error, Result};

/// Default enumeration cap; covers everything through E7.
pub const DEFAULT_CAP: usize = 3_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    action: Vec<i64>,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> WeylElement {
        let mut action = vec![0; rank * rank];
        for i in 0..rank {
            action[i * rank + i] = 1;
        }
        WeylElement { rank, action, word: Vec::new() }
    }

    /// Builds `s_{w[0]} s_{w[1]} ...` and rejects words that are not reduced.
    pub fn from_reduced_word(cartan: &CartanMatrix, word: &[usize]) -> Result<WeylElement> {
        let mut w = WeylElement::identity(cartan.rank());
        for &i in word {
            if i >= w.rank {
                return Err(Error::IndexOutOfRange { index: i, rank: w.rank });
            }
            if !w.is_ascent(i) {
                return Err(Error::NotReduced(format_word(word)));
            }
            w.right_mul_in_place(cartan, i);
        }
        w.word = word.to_vec();
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Row-major matrix of the action on simple roots.
    pub fn action(&self) -> &[i64] {
        &self.action
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.action[row * self.rank + col]
    }

    /// Image of the simple root `α_col`.
    pub fn column(&self, col: usize) -> Vec<i64> {
        (0..self.rank).map(|r| self.entry(r, col)).collect()
    }

    /// True when `w(α_i)` is a positive root, i.e. `l(w s_i) = l(w) + 1`.
    pub fn is_ascent(&self, i: usize) -> bool {
        (0..self.rank).all(|r| self.entry(r, i) >= 0)
    }

    fn right_mul_in_place(&mut self, cartan: &CartanMatrix, i: usize) {
        right_mul_columns(&mut self.action, self.rank, cartan, i);
    }

    /// Matrix of `self * other`; the word is the concatenation and is only
    /// reduced when the lengths add.
    pub fn matrix_product(&self, other: &WeylElement) -> Vec<i64> {
        mat_mul(&self.action, &other.action, self.rank)
    }

    pub fn inverse(&self, cartan: &CartanMatrix) -> WeylElement {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement::from_reduced_word(cartan, &rev).expect("reverse of a reduced word is reduced")
    }

    pub fn word_string(&self) -> String {
        format_word(&self.word)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

/// `e` for the empty word, otherwise `s1s2s1` with 1-based generator labels.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|i| format!("s{}", i + 1)).collect()
}

/// Compact bracket form used in figures: `[121]`.
pub fn bracket_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    let digits: String = word.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{digits}]")
}

fn right_mul_columns<T>(m: &mut [T], n: usize, cartan: &CartanMatrix, i: usize)
where
    T: Copy + Into<i64> + TryFrom<i64>,
    <T as TryFrom<i64>>::Error: fmt::Debug,
{
    // Column i is negated last so the other columns read its old value.
    for j in (0..n).filter(|&j| j != i).chain(std::iter::once(i)) {
        let c = cartan.get(j, i);
        if c == 0 {
            continue;
        }
        for r in 0..n {
            let v: i64 = m[r * n + j].into() - c * m[r * n + i].into();
            m[r * n + j] = T::try_from(v).expect("root coordinate out of range");
        }
    }
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for r in 0..n {
        for k in 0..n {
            let x = a[r * n + k];
            if x == 0 {
                continue;
            }
            for c in 0..n {
                out[r * n + c] += x * b[k * n + c];
            }
        }
    }
    out
}

pub fn simple_reflection(i: usize, cartan: &CartanMatrix) -> Result<WeylElement> {
    let rank = cartan.rank();
    if i >= rank {
        return Err(Error::IndexOutOfRange { index: i, rank });
    }
    WeylElement::from_reduced_word(cartan, &[i])
}

/// Longest element without enumerating the group: start from `-θ`, where `θ`
/// is the diagram automorphism induced by `w*`, and peel off descents.
pub fn longest_element(t: LieType) -> WeylElement {
    let cartan = cartan_matrix(t);
    let n = t.rank();
    let theta: Vec<usize> = match t.family() {
        Family::A => (0..n).rev().collect(),
        Family::D if n % 2 == 1 => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            p
        }
        Family::E if n == 6 => vec![5, 1, 4, 3, 2, 0],
        _ => (0..n).collect(),
    };
    let mut m = vec![0i64; n * n];
    for (j, &tj) in theta.iter().enumerate() {
        m[tj * n + j] = -1;
    }
    let mut peeled = Vec::with_capacity(t.positive_roots());
    loop {
        let descent = (0..n).find(|&i| (0..n).all(|r| m[r * n + i] <= 0));
        let Some(i) = descent else { break };
        right_mul_columns(&mut m, n, &cartan, i);
        peeled.push(i);
    }
    debug_assert!(m == WeylElement::identity(n).action);
    peeled.reverse();
    WeylElement::from_reduced_word(&cartan, &peeled).expect("peeled word is reduced")
}

/// Set of reflections of `W`, stored by matrix, for constant-time cover tests.
#[derive(Clone, Debug)]
pub struct ReflectionSet {
    rank: usize,
    mats: Vec<Vec<i64>>,
    lookup: HashSet<Vec<i64>>,
}

impl ReflectionSet {
    /// Reflections `s_β` for every positive root `β`, via the root orbit.
    pub fn from_roots(cartan: &CartanMatrix) -> ReflectionSet {
        let n = cartan.rank();
        let simple: Vec<WeylElement> = (0..n).map(|i| simple_reflection(i, cartan).unwrap()).collect();
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for (i, s) in simple.iter().enumerate() {
            let mut root = vec![0; n];
            root[i] = 1;
            seen.insert(root.clone(), s.action.clone());
            queue.push_back(root);
        }
        while let Some(root) = queue.pop_front() {
            let refl = seen[&root].clone();
            for s in &simple {
                let image: Vec<i64> = (0..n).map(|r| (0..n).map(|c| s.entry(r, c) * root[c]).sum()).collect();
                if seen.contains_key(&image) {
                    continue;
                }
                let conj = mat_mul(&mat_mul(&s.action, &refl, n), &s.action, n);
                seen.insert(image.clone(), conj);
                queue.push_back(image);
            }
        }
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> =
            seen.into_iter().filter(|(root, _)| root.iter().all(|&x| x >= 0)).collect();
        positive.sort();
        let mats: Vec<Vec<i64>> = positive.into_iter().map(|(_, m)| m).collect();
        let lookup = mats.iter().cloned().collect();
        ReflectionSet { rank: n, mats, lookup }
    }

    /// All conjugates `w s_i w^{-1}` over an enumerated group.
    pub fn from_group(group: &WeylGroup) -> ReflectionSet {
        let n = group.rank();
        let mut lookup = HashSet::new();
        for idx in 0..group.order() {
            let w = group.matrix(idx);
            let winv = group.matrix(group.inverse(idx));
            for i in 0..n {
                let s = group.matrix(group.right_mul(0, i));
                lookup.insert(mat_mul(&mat_mul(&w, &s, n), &winv, n));
            }
        }
        let mut mats: Vec<Vec<i64>> = lookup.iter().cloned().collect();
        mats.sort();
        ReflectionSet { rank: n, mats, lookup }
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.lookup.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &[i64]> {
        self.mats.iter().map(|m| m.as_slice())
    }
}

/// Whether `w1 ⋖ w2` in the Bruhat order.
pub fn bruhat_cover(w1: &WeylElement, w2: &WeylElement, refl: &ReflectionSet, cartan: &CartanMatrix) -> Result<bool> {
    if w1.rank != w2.rank || w1.rank != refl.rank || cartan.rank() != w1.rank {
        return Err(Error::MismatchedTypes);
    }
    if w2.length() != w1.length() + 1 {
        return Ok(false);
    }
    let t = w1.inverse(cartan).matrix_product(w2);
    Ok(refl.contains(&t))
}

const NONE: u32 = u32::MAX;

/// A fully enumerated Weyl group.
///
/// Elements are indexed in breadth-first discovery order, so indices are
/// sorted by length, index 0 is the identity and the last index is `w*`.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    ty: LieType,
    cartan: CartanMatrix,
    rank: usize,
    mats: Vec<i8>,
    lengths: Vec<u32>,
    parent: Vec<(u32, u8)>,
    right: Vec<u32>,
    slots: Vec<u32>,
}

impl WeylGroup {
    pub fn enumerate(t: LieType, cap: usize) -> Result<WeylGroup> {
        let order = t.weyl_order();
        if order > cap as u128 {
            return Err(Error::CapExceeded { ty: t.to_string(), order, cap });
        }
        let cartan = cartan_matrix(t);
        let n = t.rank();
        let stride = n * n;
        let order = order as usize;
        let mut g = WeylGroup {
            ty: t,
            cartan,
            rank: n,
            mats: Vec::with_capacity(order * stride),
            lengths: Vec::with_capacity(order),
            parent: Vec::with_capacity(order),
            right: vec![NONE; order * n],
            slots: vec![NONE; (order * 2).next_power_of_two()],
        };
        let id: Vec<i8> = WeylElement::identity(n).action.iter().map(|&x| x as i8).collect();
        g.insert(&id, 0, (NONE, u8::MAX));

        let mut scratch = vec![0i8; stride];
        let mut head = 0usize;
        while head < g.lengths.len() {
            for i in 0..n {
                if g.right[head * n + i] != NONE {
                    continue;
                }
                scratch.copy_from_slice(&g.mats[head * stride..(head + 1) * stride]);
                let up = (0..n).all(|r| scratch[r * n + i] >= 0);
                right_mul_columns(&mut scratch, n, &g.cartan, i);
                let next = match g.find(&scratch) {
                    Some(idx) => idx,
                    None => {
                        debug_assert!(up);
                        g.insert(&scratch, g.lengths[head] + 1, (head as u32, i as u8))
                    }
                };
                g.right[head * n + i] = next;
                g.right[next as usize * n + i] = head as u32;
            }
            head += 1;
        }
        debug_assert_eq!(g.lengths.len(), order);
        Ok(g)
    }

    fn hash(key: &[i8]) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &b in key {
            h ^= b as u8 as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h ^ (h >> 29)
    }

    fn find(&self, key: &[i8]) -> Option<u32> {
        let stride = self.rank * self.rank;
        let mask = self.slots.len() - 1;
        let mut pos = Self::hash(key) as usize & mask;
        loop {
            let idx = self.slots[pos];
            if idx == NONE {
                return None;
            }
            let start = idx as usize * stride;
            if &self.mats[start..start + stride] == key {
                return Some(idx);
            }
            pos = (pos + 1) & mask;
        }
    }

    fn insert(&mut self, key: &[i8], length: u32, parent: (u32, u8)) -> u32 {
        let idx = self.lengths.len() as u32;
        let mask = self.slots.len() - 1;
        let mut pos = Self::hash(key) as usize & mask;
        while self.slots[pos] != NONE {
            pos = (pos + 1) & mask;
        }
        self.slots[pos] = idx;
        self.mats.extend_from_slice(key);
        self.lengths.push(length);
        self.parent.push(parent);
        idx
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.order() - 1
    }

    pub fn length(&self, idx: usize) -> usize {
        self.lengths[idx] as usize
    }

    /// Index of `w s_i`.
    pub fn right_mul(&self, idx: usize, i: usize) -> usize {
        self.right[idx * self.rank + i] as usize
    }

    pub fn is_ascent(&self, idx: usize, i: usize) -> bool {
        self.length(self.right_mul(idx, i)) > self.length(idx)
    }

    /// The breadth-first parent of a non-identity element and the generator
    /// that reaches it.
    pub fn parent(&self, idx: usize) -> Option<(usize, usize)> {
        let (p, i) = self.parent[idx];
        (p != NONE).then_some((p as usize, i as usize))
    }

    /// Reduced word discovered first by the breadth-first search.
    pub fn word(&self, idx: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(idx));
        let mut cur = idx;
        while let Some((p, i)) = self.parent(cur) {
            word.push(i);
            cur = p;
        }
        word.reverse();
        word
    }

    pub fn key(&self, idx: usize) -> &[i8] {
        let stride = self.rank * self.rank;
        &self.mats[idx * stride..(idx + 1) * stride]
    }

    pub fn matrix(&self, idx: usize) -> Vec<i64> {
        self.key(idx).iter().map(|&x| x as i64).collect()
    }

    pub fn element(&self, idx: usize) -> WeylElement {
        WeylElement { rank: self.rank, action: self.matrix(idx), word: self.word(idx) }
    }

    pub fn index_of_matrix(&self, m: &[i64]) -> Option<usize> {
        let key: Vec<i8> = m.iter().map(|&x| i8::try_from(x).ok()).collect::<Option<_>>()?;
        if key.len() != self.rank * self.rank {
            return None;
        }
        self.find(&key).map(|i| i as usize)
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        if w.rank != self.rank {
            return None;
        }
        self.index_of_matrix(&w.action)
    }

    /// Index of the element with the given (not necessarily reduced) word.
    pub fn index_of_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &i| self.right_mul(acc, i))
    }

    pub fn inverse(&self, idx: usize) -> usize {
        let word = self.word(idx);
        word.iter().rev().fold(0, |acc, &i| self.right_mul(acc, i))
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.word(b).iter().fold(a, |acc, &i| self.right_mul(acc, i))
    }

    /// Number of elements of each length `0..=l(w*)`.
    /// Every reduced word of an element. Exponential in the length.
    pub fn reduced_words(&self, idx: usize) -> Vec<Vec<usize>> {
        if self.lengths[idx] == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in (0..self.rank).filter(|&i| !self.is_ascent(idx, i)) {
            for mut w in self.reduced_words(self.right_mul(idx, i)) {
                w.push(i);
                out.push(w);
            }
        }
        out
    }

    /// Reduced word peeling the largest right descent at each step.
    pub fn last_descent_word(&self, mut idx: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.lengths[idx] as usize);
        while self.lengths[idx] > 0 {
            let i = (0..self.rank).rev().find(|&i| !self.is_ascent(idx, i)).expect("non-identity has a descent");
            word.push(i);
            idx = self.right_mul(idx, i);
        }
        word.reverse();
        word
    }

    pub fn length_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.length(self.longest()) + 1];
        for &l in &self.lengths {
            counts[l as usize] += 1;
        }
        counts
    }

    pub fn reflections(&self) -> ReflectionSet {
        ReflectionSet::from_group(self)
    }

    /// All Bruhat covers `(w, w t)` with `t` a reflection and
    /// `l(w t) = l(w) + 1`, sorted by lower then upper index.
    pub fn covers(&self, refl: &ReflectionSet) -> Vec<(usize, usize)> {
        let n = self.rank;
        let mut out = Vec::new();
        for w in 0..self.order() {
            let m = self.matrix(w);
            let mut ups: Vec<usize> = refl
                .iter()
                .filter_map(|t| self.index_of_matrix(&mat_mul(&m, t, n)))
                .filter(|&u| self.length(u) == self.length(w) + 1)
                .collect();
            ups.sort_unstable();
            out.extend(ups.into_iter().map(|u| (w, u)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn simple_reflection_images() {
        let a2 = cartan_matrix(ty("A2"));
        let s1 = simple_reflection(0, &a2).unwrap();
        assert_eq!(s1.column(0), vec![-1, 0]);
        assert_eq!(s1.column(1), vec![1, 1]);
        let g2 = cartan_matrix(ty("G2"));
        let s2 = simple_reflection(1, &g2).unwrap();
        assert_eq!(s2.column(0), vec![1, 1]);
        assert_eq!(s2.column(1), vec![0, -1]);
        assert!(simple_reflection(2, &g2).is_err());
    }

    #[test]
    fn reflections_are_involutions() {
        for s in ["A3", "B3", "G2", "F4", "E6"] {
            let c = cartan_matrix(ty(s));
            for i in 0..c.rank() {
                let si = simple_reflection(i, &c).unwrap();
                assert_eq!(si.matrix_product(&si), WeylElement::identity(c.rank()).action().to_vec());
            }
        }
    }

    #[test]
    fn non_reduced_word_rejected() {
        let c = cartan_matrix(ty("A2"));
        assert!(WeylElement::from_reduced_word(&c, &[0, 0]).is_err());
        assert!(WeylElement::from_reduced_word(&c, &[0, 1, 0, 1]).is_err());
        assert!(WeylElement::from_reduced_word(&c, &[0, 1, 0]).is_ok());
    }

    #[test]
    fn small_orders() {
        let a2 = WeylGroup::enumerate(ty("A2"), DEFAULT_CAP).unwrap();
        assert_eq!(a2.order(), 6);
        assert_eq!(a2.length_counts(), vec![1, 2, 2, 1]);
        let g2 = WeylGroup::enumerate(ty("G2"), DEFAULT_CAP).unwrap();
        assert_eq!(g2.order(), 12);
        assert_eq!(g2.length_counts(), vec![1, 2, 2, 2, 2, 2, 1]);
        let f4 = WeylGroup::enumerate(ty("F4"), DEFAULT_CAP).unwrap();
        assert_eq!(f4.order(), 1152);
        assert_eq!(f4.order() as u128, 2u128.pow(7) * 9);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(WeylGroup::enumerate(ty("E8"), DEFAULT_CAP), Err(Error::CapExceeded { .. })));
        assert!(matches!(WeylGroup::enumerate(ty("A4"), 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn words_reproduce_matrices() {
        let g = WeylGroup::enumerate(ty("B3"), DEFAULT_CAP).unwrap();
        for idx in 0..g.order() {
            let w = WeylElement::from_reduced_word(g.cartan(), &g.word(idx)).unwrap();
            assert_eq!(w.action(), g.matrix(idx).as_slice());
            assert_eq!(w.length(), g.length(idx));
            assert_eq!(g.multiply(idx, g.inverse(idx)), 0);
        }
    }

    #[test]
    fn group_orders_match_formulas() {
        for s in ["A1", "A4", "B2", "B4", "C3", "D4", "D5", "G2"] {
            let t = ty(s);
            let g = WeylGroup::enumerate(t, DEFAULT_CAP).unwrap();
            assert_eq!(g.order() as u128, t.weyl_order(), "{s}");
            let counts = g.length_counts();
            let rev: Vec<usize> = counts.iter().rev().copied().collect();
            assert_eq!(counts, rev, "{s} length distribution is palindromic");
            assert_eq!(counts.len() - 1, t.positive_roots());
            assert_eq!(counts.iter().filter(|&&c| c == 1).count(), 2);
        }
    }

    #[test]
    fn longest_element_lengths() {
        let expected = [
            ("A1", 1),
            ("A5", 15),
            ("B4", 16),
            ("C3", 9),
            ("D4", 12),
            ("D5", 20),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ];
        for (s, len) in expected {
            let w = longest_element(ty(s));
            assert_eq!(w.length(), len, "{s}");
        }
        let g2 = longest_element(ty("G2"));
        assert!(g2.word() == [0, 1, 0, 1, 0, 1] || g2.word() == [1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn longest_element_agrees_with_enumeration() {
        for s in ["A3", "A4", "B3", "C4", "D4", "D5", "F4", "G2", "E6"] {
            let g = WeylGroup::enumerate(ty(s), DEFAULT_CAP).unwrap();
            let w = longest_element(ty(s));
            assert_eq!(g.index_of(&w), Some(g.longest()), "{s}");
        }
    }

    /// Greedy climb: multiply by any ascent until none is left.
    fn climb(t: LieType) -> WeylElement {
        let c = cartan_matrix(t);
        let mut word = Vec::new();
        let mut w = WeylElement::identity(t.rank());
        while let Some(i) = (0..t.rank()).find(|&i| w.is_ascent(i)) {
            word.push(i);
            w = WeylElement::from_reduced_word(&c, &word).unwrap();
        }
        w
    }

    #[test]
    fn peel_matches_climb_for_e8() {
        let peel = longest_element(ty("E8"));
        let up = climb(ty("E8"));
        assert_eq!(peel.action(), up.action());
        assert_eq!(up.length(), 120);
    }

    #[test]
    fn root_orbit_counts_positive_roots() {
        for s in ["A3", "B3", "D5", "E8", "F4", "G2"] {
            let t = ty(s);
            let r = ReflectionSet::from_roots(&cartan_matrix(t));
            assert_eq!(r.len(), t.positive_roots(), "{s}");
        }
    }

    #[test]
    fn reflection_sets_agree() {
        for s in ["A3", "B3", "G2", "F4"] {
            let g = WeylGroup::enumerate(ty(s), DEFAULT_CAP).unwrap();
            let a = g.reflections();
            let b = ReflectionSet::from_roots(g.cartan());
            let mut x: Vec<_> = a.iter().map(|m| m.to_vec()).collect();
            let mut y: Vec<_> = b.iter().map(|m| m.to_vec()).collect();
            x.sort();
            y.sort();
            assert_eq!(x, y, "{s}");
        }
    }

    /// Subword property oracle: `u <= w` iff `u` is the product of a
    /// subword of a fixed reduced word of `w`.
    fn bruhat_le_by_subwords(g: &WeylGroup, u: usize, w: usize) -> bool {
        let word = g.word(w);
        (0u32..1 << word.len()).any(|mask| {
            let sub: Vec<usize> = word.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
            g.index_of_word(&sub) == u
        })
    }

    #[test]
    fn covers_match_subword_oracle() {
        for s in ["A2", "A3", "B3", "G2"] {
            let g = WeylGroup::enumerate(ty(s), DEFAULT_CAP).unwrap();
            let refl = g.reflections();
            let covers: HashSet<(usize, usize)> = g.covers(&refl).into_iter().collect();
            for a in 0..g.order() {
                for b in 0..g.order() {
                    let oracle = g.length(b) == g.length(a) + 1 && bruhat_le_by_subwords(&g, a, b);
                    let direct = bruhat_cover(&g.element(a), &g.element(b), &refl, g.cartan()).unwrap();
                    assert_eq!(direct, oracle, "{s}: {} vs {}", g.element(a), g.element(b));
                    assert_eq!(covers.contains(&(a, b)), oracle);
                }
            }
        }
    }

    #[test]
    fn a2_cover_examples() {
        let g = WeylGroup::enumerate(ty("A2"), DEFAULT_CAP).unwrap();
        let refl = g.reflections();
        let c = g.cartan();
        let e = WeylElement::identity(2);
        let s1 = WeylElement::from_reduced_word(c, &[0]).unwrap();
        let s2s1 = WeylElement::from_reduced_word(c, &[1, 0]).unwrap();
        let s1s2 = WeylElement::from_reduced_word(c, &[0, 1]).unwrap();
        assert!(bruhat_cover(&e, &s1, &refl, c).unwrap());
        assert!(bruhat_cover(&s1, &s2s1, &refl, c).unwrap());
        assert!(!bruhat_cover(&e, &s1s2, &refl, c).unwrap());
        let g2 = WeylGroup::enumerate(ty("A3"), DEFAULT_CAP).unwrap();
        assert_eq!(bruhat_cover(&e, &s1, &g2.reflections(), c), Err(Error::MismatchedTypes));
    }

    #[test]
    fn ascent_covers_right_multiplication() {
        let g = WeylGroup::enumerate(ty("C3"), DEFAULT_CAP).unwrap();
        let refl = g.reflections();
        for w in 0..g.order() {
            for i in 0..3 {
                let u = g.right_mul(w, i);
                if g.length(u) > g.length(w) {
                    assert!(bruhat_cover(&g.element(w), &g.element(u), &refl, g.cartan()).unwrap());
                }
            }
        }
    }
}
