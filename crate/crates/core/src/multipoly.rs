//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> MultiPoly {
        MultiPoly::constant(nvars, BigRational::one())
    }

    pub fn from_int(nvars: usize, c: i64) -> MultiPoly {
        MultiPoly::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable with the given position.
    pub fn var(nvars: usize, v: usize) -> MultiPoly {
        let mut e = vec![0; nvars];
        e[v] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.add_term(e, BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> MultiPoly {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Multiplies by the variable at position `v`.
    pub fn mul_var(&self, v: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e[v] += 1;
                (e, c.clone())
            })
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    pub fn derivative(&self, v: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[v] -= 1;
            out.add_term(d, c * BigRational::from_integer(BigInt::from(e[v])));
        }
        out
    }

    pub fn total_degree(exps: &[u32]) -> u32 {
        exps.iter().sum()
    }

    /// Least total degree of a stored term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| MultiPoly::total_degree(e)).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| MultiPoly::total_degree(e)).max()
    }

    /// Highest power of the variable at position `v`.
    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    /// The homogeneous component of least total degree.
    pub fn lowest_form(&self) -> MultiPoly {
        let Some(d) = self.min_degree() else { return self.clone() };
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| MultiPoly::total_degree(e) == d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                term *= num_traits::pow(x.clone(), k as usize);
            }
            acc += term;
        }
        acc
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // Lowest total degree first, which is what callers care about.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (MultiPoly::total_degree(e), std::cmp::Reverse((*e).clone())));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            out.push_str(match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let monomial: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&p, _)| p > 0)
                .map(|(&p, n)| if p == 1 { n.clone() } else { format!("{n}^{p}") })
                .collect();
            if monomial.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&monomial.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.to_string_with(&names))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += x * y;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { nvars: self.nvars, terms: acc }
    }
}

/// Terms as `[[exponents], "numerator", "denominator"]`.
impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.numer().to_string(), c.denom().to_string()))?;
        }
        seq.end()
    }
}

/// Determinant by cofactor expansion along rows, memoized over the set of
/// columns still available. Intended for small matrices (`n ≤ 8`).
pub fn determinant(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = m.len();
    assert!(n <= 16 && m.iter().all(|r| r.len() == n));
    let mut memo: Vec<Option<MultiPoly>> = vec![None; 1 << n];
    minor(m, (1u32 << n) - 1, nvars, &mut memo)
}

fn minor(m: &[Vec<MultiPoly>], cols: u32, nvars: usize, memo: &mut Vec<Option<MultiPoly>>) -> MultiPoly {
    if cols == 0 {
        return MultiPoly::one(nvars);
    }
    if let Some(p) = &memo[cols as usize] {
        return p.clone();
    }
    let n = m.len();
    let row = n - cols.count_ones() as usize;
    let mut acc = MultiPoly::zero(nvars);
    let mut sign_pos = 0;
    for c in 0..n {
        if cols >> c & 1 == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let sub = minor(m, cols & !(1 << c), nvars, memo);
            let term = entry * &sub;
            acc = if sign_pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        sign_pos += 1;
    }
    memo[cols as usize] = Some(acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((0u32..3, 0u32..3, -4i64..5), 0..5).prop_map(|terms| {
            let mut p = MultiPoly::zero(2);
            for (a, b, c) in terms {
                p.add_term(vec![a, b], q(c, 1));
            }
            p
        })
    }

    #[test]
    fn arithmetic_and_degrees() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &(&x * &x).scale(&q(1, 2)) - &y;
        assert_eq!(p.min_degree(), Some(1));
        assert_eq!(p.max_degree(), Some(2));
        assert_eq!(p.lowest_form(), -&y);
        assert_eq!(p.to_string(), "-x2 + 1/2*x1^2");
        assert!((&p - &p).is_zero());
        assert_eq!(p.derivative(0), x);
        assert_eq!(MultiPoly::zero(2).min_degree(), None);
    }

    #[test]
    fn small_determinants() {
        let c = |v: i64| MultiPoly::from_int(1, v);
        let m = vec![vec![c(1), c(2)], vec![c(3), c(4)]];
        assert_eq!(determinant(&m, 1), c(-2));
        let x = MultiPoly::var(1, 0);
        let m = vec![vec![x.clone(), c(1), c(0)], vec![c(1), x.clone(), c(1)], vec![c(0), c(1), x.clone()]];
        // x^3 - 2x
        let expected = &(&(&x * &x) * &x) - &x.scale_int(2);
        assert_eq!(determinant(&m, 1), expected);
        assert_eq!(determinant(&[], 1), c(1));
    }

    proptest! {
        #[test]
        fn multiplication_commutes_and_distributes(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn lowest_forms_multiply(a in poly_strategy(), b in poly_strategy()) {
            // Over a field, lowest forms of a product are the product of lowest forms.
            let prod = &a * &b;
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!(prod.lowest_form(), &a.lowest_form() * &b.lowest_form());
            }
        }

        #[test]
        fn evaluation_is_multiplicative(a in poly_strategy(), b in poly_strategy(), x in -3i64..4, y in -3i64..4) {
            let pt = [q(x, 1), q(y, 2)];
            prop_assert_eq!((&a * &b).eval(&pt), a.eval(&pt) * b.eval(&pt));
        }
    }
}
