//! Orders of finite Chevalley groups and brute-force point counts of
//! orthogonal groups over prime fields.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::blowup::{p_poly, SignVector};
use crate::cartan::{compact_dual_data, Family, LieType};
use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::weyl::{WeylGroup, DEFAULT_CAP};

/// Default limit on `p^(n+1)` for sphere counts.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// `|K(F_q)| = q^r · Π (q^{d_i} - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderPoly {
    pub r: u32,
    pub degrees: Vec<u32>,
    pub reduced: QPoly,
}

impl OrderPoly {
    pub fn full(&self) -> QPoly {
        &QPoly::monomial(self.r, 1) * &self.reduced
    }

    pub fn eval(&self, q: i64) -> BigInt {
        self.full().eval_i64(q)
    }
}

pub fn order_poly(t: LieType) -> OrderPoly {
    let data = compact_dual_data(t);
    OrderPoly { r: data.r, reduced: QPoly::product_of_q_minus_one(&data.degrees), degrees: data.degrees }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeField {
    p: u64,
    /// Whether `x² + 1` factors, i.e. `p ≡ 1 (mod 4)`.
    split: bool,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(PrimeField { p, split: p % 4 == 1 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_split(&self) -> bool {
        self.split
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SphereCount {
    pub count: u128,
    /// Set when `p ≡ 3 (mod 4)`: the count need not follow the split closed form.
    pub field_not_split: bool,
}

/// Number of solutions of `x_1² + ⋯ + x_{n+1}² = 1` over `F_p`.
pub fn sphere_count(n: usize, f: PrimeField) -> Result<SphereCount> {
    sphere_count_with_budget(n, f, DEFAULT_BUDGET)
}

pub fn sphere_count_with_budget(n: usize, f: PrimeField, budget: u128) -> Result<SphereCount> {
    if n == 0 {
        return Err(Error::SizeOutOfRange(n));
    }
    let p = f.p as usize;
    let tuples = (f.p as u128).checked_pow(n as u32 + 1).unwrap_or(u128::MAX);
    if tuples > budget {
        return Err(Error::BudgetExceeded { tuples, budget });
    }
    // squares[a] = #{x : x² = a}; convolve it n+1 times.
    let mut squares = vec![0u128; p];
    for x in 0..p {
        squares[x * x % p] += 1;
    }
    let mut dist = squares.clone();
    for _ in 0..n {
        let mut next = vec![0u128; p];
        for (a, &ca) in dist.iter().enumerate().filter(|(_, &c)| c > 0) {
            for (b, &cb) in squares.iter().enumerate().filter(|(_, &c)| c > 0) {
                next[(a + b) % p] += ca * cb;
            }
        }
        dist = next;
    }
    Ok(SphereCount { count: dist[1 % p], field_not_split: !f.split })
}

/// `|SO(n; F_p)| = Π_{k=1}^{n-1} |S^k(F_p)|`.
pub fn so_order_bruteforce(n: usize, f: PrimeField) -> Result<u128> {
    so_order_with_budget(n, f, DEFAULT_BUDGET)
}

pub fn so_order_with_budget(n: usize, f: PrimeField, budget: u128) -> Result<u128> {
    if !(1..=6).contains(&n) {
        return Err(Error::SizeOutOfRange(n));
    }
    if !f.split {
        return Err(Error::FieldNotSplit(f.p));
    }
    (1..n).try_fold(1u128, |acc, k| Ok(acc * sphere_count_with_budget(k, f, budget)?.count))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub lie_type: LieType,
    pub p: u64,
    /// Orthogonal factors `SO(n)` whose orders are multiplied.
    pub factors: Vec<usize>,
    /// `p^r · p(p)` with `p(q)` the blow-up alternating sum.
    pub closed_form: String,
    pub brute_force: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Orthogonal factors of the compact dual group, when it is a product of
/// special orthogonal groups.
pub fn orthogonal_factors(t: LieType) -> Result<Vec<usize>> {
    let l = t.rank();
    match t.family() {
        Family::A => Ok(vec![l + 1]),
        Family::C => Ok(vec![l, l + 1]),
        Family::D => Ok(vec![l, l]),
        _ => Err(Error::NotOrthogonal(t.to_string())),
    }
}

/// Compares `p^r · p(p)`, with `p(q)` from blow-up counting, against a
/// brute-force count of `Ǩ(F_p)`. A disagreement is an error carrying both.
pub fn verify_order(t: LieType, f: PrimeField) -> Result<OrderReport> {
    verify_order_with(t, f, DEFAULT_CAP, DEFAULT_BUDGET)
}

pub fn verify_order_with(t: LieType, f: PrimeField, cap: usize, budget: u128) -> Result<OrderReport> {
    let factors = orthogonal_factors(t)?;
    if !f.split {
        return Err(Error::FieldNotSplit(f.p));
    }
    let group = WeylGroup::enumerate(t, cap)?;
    let p = p_poly(&group, SignVector::all_minus(t.rank()))?;
    let r = compact_dual_data(t).r;
    let closed = BigInt::from(f.p).pow(r) * p.eval_i64(f.p as i64);
    let mut brute = BigInt::one();
    for &n in &factors {
        brute *= so_order_with_budget(n, f, budget)?;
    }
    if closed != brute {
        return Err(Error::Mismatch { closed_form: closed.to_string(), brute_force: brute.to_string() });
    }
    Ok(OrderReport {
        lie_type: t,
        p: f.p,
        factors,
        closed_form: closed.to_string(),
        brute_force: brute.to_string(),
        matches: true,
    })
}
