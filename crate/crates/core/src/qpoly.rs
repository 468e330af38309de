//! Univariate integer polynomials in `q` with arbitrary-precision coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly::default()
    }

    pub fn one() -> QPoly {
        QPoly::monomial(0, 1)
    }

    pub fn monomial(exp: u32, coeff: impl Into<BigInt>) -> QPoly {
        let mut p = QPoly::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// `q^d - 1`.
    pub fn q_power_minus_one(d: u32) -> QPoly {
        let mut p = QPoly::monomial(d, 1);
        p.add_term(0, BigInt::from(-1));
        p
    }

    /// `Π (q^{d_i} - 1)`.
    pub fn product_of_q_minus_one(degrees: &[u32]) -> QPoly {
        degrees.iter().fold(QPoly::one(), |acc, &d| &acc * &QPoly::q_power_minus_one(d))
    }

    pub fn from_pairs<I, C>(pairs: I) -> QPoly
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = QPoly::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut last = self.degree().unwrap_or(0);
        // Horner over the sparse exponents.
        for (&e, c) in self.coeffs.iter().rev() {
            acc *= q.pow(last - e);
            acc += c;
            last = e;
        }
        acc * q.pow(last)
    }

    pub fn eval_i64(&self, q: i64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    /// Exact quotient by `q^d - 1`, if the division leaves no remainder.
    pub fn div_q_power_minus_one(&self, d: u32) -> Option<QPoly> {
        assert!(d > 0);
        let deg = self.degree()?;
        let mut rem: Vec<BigInt> = (0..=deg).map(|e| self.coeff(e)).collect();
        let mut quot = QPoly::zero();
        let mut top = deg as usize;
        while top >= d as usize {
            let c = std::mem::take(&mut rem[top]);
            if !c.is_zero() {
                rem[top - d as usize] += &c;
                quot.add_term(top as u32 - d, c);
            }
            top -= 1;
        }
        rem.iter().all(Zero::is_zero).then_some(quot)
    }

    /// Writes the polynomial as `± q^k Π (q^{d_i} - 1)` when possible.
    /// Returns the sign, the power of `q` and the sorted degrees.
    pub fn factor_q_minus_one(&self) -> Option<(i32, u32, Vec<u32>)> {
        let shift = *self.coeffs.keys().next()?;
        let mut p = QPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e - shift, c.clone())).collect() };
        let mut degrees = Vec::new();
        loop {
            if p.degree() == Some(0) {
                let c = p.coeff(0);
                return if c.abs().is_one() {
                    degrees.sort_unstable();
                    Some((if c.is_positive() { 1 } else { -1 }, shift, degrees))
                } else {
                    None
                };
            }
            let smallest = p.coeffs.keys().find(|&&e| e > 0).copied()?;
            p = p.div_q_power_minus_one(smallest)?;
            degrees.push(smallest);
        }
    }

    /// Human-readable factored form such as `(q^2-1)^2`, if one exists.
    pub fn factored_string(&self) -> Option<String> {
        let (sign, shift, degrees) = self.factor_q_minus_one()?;
        let mut parts = Vec::new();
        if sign < 0 {
            parts.push("-".to_string());
        }
        if shift > 0 {
            parts.push(power("q", shift));
        }
        let mut i = 0;
        while i < degrees.len() {
            let d = degrees[i];
            let mult = degrees[i..].iter().take_while(|&&x| x == d).count() as u32;
            let base = format!("({}-1)", power("q", d));
            parts.push(if mult > 1 { format!("{base}^{mult}") } else { base });
            i += mult as usize;
        }
        if degrees.is_empty() && shift == 0 {
            parts.push("1".to_string());
        }
        Some(parts.concat())
    }

    /// `[exponent, coefficient]` pairs with decimal-string coefficients.
    pub fn to_pairs(&self) -> Vec<(u32, String)> {
        self.coeffs.iter().map(|(&e, c)| (e, c.to_string())).collect()
    }
}

fn power(var: &str, e: u32) -> String {
    match e {
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                f.write_str(&power("q", e))?;
            }
        }
        Ok(())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Serialize for QPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(u32, String)> = Vec::deserialize(d)?;
        let mut p = QPoly::zero();
        for (e, c) in pairs {
            let c: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}
