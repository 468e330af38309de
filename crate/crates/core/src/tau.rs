//! τ-functions of the nilpotent Toda lattice as Schur-type Wronskians.
//!
//! Everything is built from the complete homogeneous functions `h_k` of the
//! flow times `t_j`. Since `∂h_n/∂t_1 = h_{n-1}`, a Wronskian in `t_1` of
//! combinations `Σ c_i h_{n_i}` (with `c_i` free of `t_1`) only needs index
//! shifts, never symbolic differentiation.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::cartan::{Family, LieType};
use crate::error::{Error, Result};
use crate::multipoly::{determinant, MultiPoly};

/// Variable layout: positions `0..t.len()` are `t_{t[i]}`, then optionally `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Variables {
    pub t: Vec<usize>,
    pub s: bool,
}

impl Variables {
    pub fn count(&self) -> usize {
        self.t.len() + self.s as usize
    }

    pub fn names(&self) -> Vec<String> {
        let mut names: Vec<String> = self.t.iter().map(|j| format!("t{j}")).collect();
        if self.s {
            names.push("s".into());
        }
        names
    }

    pub fn position_of_t(&self, j: usize) -> Option<usize> {
        self.t.iter().position(|&x| x == j)
    }

    pub fn s_position(&self) -> Option<usize> {
        self.s.then_some(self.t.len())
    }
}

/// `h_0, h_1, …` for a fixed layout, extended on demand.
#[derive(Clone, Debug)]
pub struct HTable {
    vars: Variables,
    h: Vec<MultiPoly>,
}

impl HTable {
    pub fn new(vars: Variables) -> HTable {
        let h = vec![MultiPoly::one(vars.count())];
        HTable { vars, h }
    }

    pub fn nvars(&self) -> usize {
        self.vars.count()
    }

    /// `h_n`, zero for negative `n`. Uses `k h_k = Σ_j j t_j h_{k-j}`.
    pub fn get(&mut self, n: i64) -> MultiPoly {
        if n < 0 {
            return MultiPoly::zero(self.nvars());
        }
        let n = n as usize;
        while self.h.len() <= n {
            let k = self.h.len();
            let mut acc = MultiPoly::zero(self.nvars());
            for (pos, &j) in self.vars.t.iter().enumerate() {
                if j <= k {
                    acc = &acc + &self.h[k - j].mul_var(pos).scale_int(j as i64);
                }
            }
            let inv = BigRational::new(BigInt::from(1), BigInt::from(k));
            self.h.push(acc.scale(&inv));
        }
        self.h[n].clone()
    }
}

/// `Σ c_i h_{n_i}` with coefficients independent of `t_1`.
#[derive(Clone, Debug)]
pub struct HCombination {
    pub terms: Vec<(MultiPoly, i64)>,
}

impl HCombination {
    pub fn h(nvars: usize, n: i64) -> HCombination {
        HCombination { terms: vec![(MultiPoly::one(nvars), n)] }
    }

    /// `∂^k/∂t_1^k`.
    pub fn shifted(&self, k: i64) -> HCombination {
        HCombination { terms: self.terms.iter().map(|(c, n)| (c.clone(), n - k)).collect() }
    }

    pub fn expand(&self, table: &mut HTable) -> MultiPoly {
        self.terms.iter().fold(MultiPoly::zero(table.nvars()), |acc, (c, n)| &acc + &(c * &table.get(*n)))
    }
}

/// `Wr(f_1, …, f_k)`: determinant of `(∂^{β-1} f_α)`.
pub fn wronskian(funcs: &[HCombination], table: &mut HTable) -> MultiPoly {
    let m: Vec<Vec<MultiPoly>> = funcs
        .iter()
        .map(|f| (0..funcs.len()).map(|b| f.shifted(b as i64).expand(table)).collect())
        .collect();
    determinant(&m, table.nvars())
}

/// `h_k` in the variables `t_j`, `j ∈ active`, all other times set to zero.
pub fn h_poly(k: usize, active: &[usize]) -> MultiPoly {
    HTable::new(Variables { t: active.to_vec(), s: false }).get(k as i64)
}

/// `S_(i_1,…,i_k) = Wr(h_{i_1}, …, h_{i_k})`.
pub fn schur_wronskian(indices: &[usize], active: &[usize]) -> MultiPoly {
    assert!(indices.windows(2).all(|w| w[0] < w[1]), "indices must increase");
    let mut table = HTable::new(Variables { t: active.to_vec(), s: false });
    let funcs: Vec<HCombination> = indices.iter().map(|&i| HCombination::h(table.nvars(), i as i64)).collect();
    wronskian(&funcs, &mut table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TauKind {
    Plain,
    /// Stores `τ_j²`.
    Squared,
    /// Stores `τ_j · τ_{j+1}`.
    Product,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauEntry {
    pub kind: TauKind,
    /// 1-based τ index (the lower one for a product).
    pub index: usize,
    pub poly: MultiPoly,
}

impl TauEntry {
    pub fn label(&self) -> String {
        match self.kind {
            TauKind::Plain => format!("tau{}", self.index),
            TauKind::Squared => format!("tau{}^2", self.index),
            TauKind::Product => format!("tau{}*tau{}", self.index, self.index + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauFamily {
    pub lie_type: LieType,
    pub variables: Variables,
    pub entries: Vec<TauEntry>,
}

/// Largest ranks built by default; term counts grow quickly beyond these.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauBounds {
    pub a: usize,
    pub bcd: usize,
}

impl Default for TauBounds {
    fn default() -> TauBounds {
        TauBounds { a: 6, bcd: 4 }
    }
}

pub fn nilpotent_tau(t: LieType) -> Result<TauFamily> {
    nilpotent_tau_with(t, TauBounds::default())
}

pub fn nilpotent_tau_with(t: LieType, bounds: TauBounds) -> Result<TauFamily> {
    let l = t.rank();
    let bound = match t.family() {
        Family::A => bounds.a,
        Family::B | Family::C | Family::D => bounds.bcd,
        Family::G => 2,
        Family::E | Family::F => return Err(Error::UnsupportedType(t.to_string())),
    };
    if l > bound {
        return Err(Error::RankBound { family: t.family().letter(), rank: l, bound });
    }
    let odd = |top: usize| (1..=top).step_by(2).collect::<Vec<_>>();
    let (vars, entries) = match t.family() {
        Family::A => type_a(l),
        Family::B => type_b(l, odd(2 * l - 1)),
        Family::C => type_c(l, odd(2 * l - 1)),
        Family::D => type_d(l, odd(2 * l - 3)),
        Family::G => type_g2(),
        Family::E | Family::F => unreachable!(),
    };
    Ok(TauFamily { lie_type: t, variables: vars, entries })
}

fn plain(index: usize, poly: MultiPoly) -> TauEntry {
    TauEntry { kind: TauKind::Plain, index, poly }
}

fn h_list(nvars: usize, indices: impl IntoIterator<Item = i64>) -> Vec<HCombination> {
    indices.into_iter().map(|n| HCombination::h(nvars, n)).collect()
}

fn type_a(l: usize) -> (Variables, Vec<TauEntry>) {
    let vars = Variables { t: (1..=l).collect(), s: false };
    let mut table = HTable::new(vars.clone());
    let n = vars.count();
    let entries = (1..=l)
        .map(|k| {
            let w = wronskian(&h_list(n, (l - k + 1..=l).map(|i| i as i64)), &mut table);
            let sign = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
            plain(k, w.scale_int(sign))
        })
        .collect();
    (vars, entries)
}

fn type_b(l: usize, t: Vec<usize>) -> (Variables, Vec<TauEntry>) {
    let vars = Variables { t, s: false };
    let mut table = HTable::new(vars.clone());
    let n = vars.count();
    let top = 2 * l as i64;
    let mut entries: Vec<TauEntry> =
        (1..l).map(|k| plain(k, wronskian(&h_list(n, (0..k as i64).map(|a| top - a)), &mut table))).collect();
    let squared = wronskian(&h_list(n, (0..l as i64).map(|a| top - a)), &mut table);
    entries.push(TauEntry { kind: TauKind::Squared, index: l, poly: squared });
    (vars, entries)
}

fn type_c(l: usize, t: Vec<usize>) -> (Variables, Vec<TauEntry>) {
    let vars = Variables { t, s: false };
    let mut table = HTable::new(vars.clone());
    let n = vars.count();
    let top = 2 * l as i64 - 1;
    let entries = (1..=l).map(|k| plain(k, wronskian(&h_list(n, (0..k as i64).map(|a| top - a)), &mut table))).collect();
    (vars, entries)
}

fn type_d(l: usize, t: Vec<usize>) -> (Variables, Vec<TauEntry>) {
    let vars = Variables { t, s: true };
    let mut table = HTable::new(vars.clone());
    let n = vars.count();
    let s = MultiPoly::var(n, vars.s_position().unwrap());
    let two = MultiPoly::from_int(n, 2);
    let li = l as i64;
    let even = l % 2 == 0;
    // f_α for α = 1..l-1.
    let funcs: Vec<HCombination> = (1..li)
        .map(|a| {
            if even {
                HCombination { terms: vec![(s.clone(), li - a), (two.clone(), 2 * li - 1 - a)] }
            } else if a == 1 {
                HCombination { terms: vec![(&s * &s, 0), (two.clone(), 2 * li - 2)] }
            } else {
                HCombination { terms: vec![(two.clone(), 2 * li - 1 - a)] }
            }
        })
        .collect();
    let mut entries: Vec<TauEntry> = (1..l - 1).map(|k| plain(k, wronskian(&funcs[..k], &mut table))).collect();
    entries.push(TauEntry { kind: TauKind::Product, index: l - 1, poly: wronskian(&funcs, &mut table) });

    // Bordered determinant for τ_l², entries as displayed (1-based r, c).
    let mut m = vec![vec![MultiPoly::zero(n); l]; l];
    for r in 1..=li {
        for c in 1..=li {
            let entry = if r < li && c < li {
                let mut e = table.get(2 * li - r - c).scale_int(2);
                if even {
                    e = &e + &(&s * &table.get(li + 1 - r - c));
                } else if r == 1 && c == 1 {
                    e = &e + &(&s * &s);
                }
                e
            } else if r == li && c == li {
                MultiPoly::from_int(n, if even { 0 } else { 1 })
            } else {
                let k = if r == li { c } else { r };
                let mut e = table.get(li - k);
                if k == 1 {
                    e = &e + &s;
                }
                e
            };
            m[r as usize - 1][c as usize - 1] = entry;
        }
    }
    entries.push(TauEntry { kind: TauKind::Squared, index: l, poly: determinant(&m, n) });
    (vars, entries)
}

fn type_g2() -> (Variables, Vec<TauEntry>) {
    let vars = Variables { t: vec![1, 5], s: false };
    let mut table = HTable::new(vars.clone());
    let n = vars.count();
    let tau1 = table.get(6);
    let tau2 = wronskian(&h_list(n, [6, 5]), &mut table);
    (vars, vec![plain(1, tau1), plain(2, tau2)])
}

pub fn min_degree(p: &MultiPoly) -> Result<u32> {
    p.min_degree().ok_or(Error::ZeroPolynomial)
}

impl TauFamily {
    /// Minimal total degree of each `τ_1, …, τ_l`.
    ///
    /// Squared entries contribute half their degree; a product `τ_j τ_{j+1}`
    /// contributes what remains after `τ_{j+1}`'s share.
    pub fn min_degrees(&self) -> Result<Vec<u32>> {
        let l = self.lie_type.rank();
        let mut out: Vec<Option<u32>> = vec![None; l];
        let mut products = Vec::new();
        for e in &self.entries {
            let d = min_degree(&e.poly)?;
            match e.kind {
                TauKind::Plain => out[e.index - 1] = Some(d),
                TauKind::Squared => {
                    if d % 2 == 1 {
                        return Err(Error::OddSquaredDegree(d as usize));
                    }
                    out[e.index - 1] = Some(d / 2);
                }
                TauKind::Product => products.push((e.index, d)),
            }
        }
        for (j, d) in products {
            let partner = out[j].expect("product partner is stored squared");
            out[j - 1] = Some(d - partner);
        }
        Ok(out.into_iter().map(|d| d.expect("every tau is covered")).collect())
    }

    pub fn multiplicity(&self) -> Result<u32> {
        Ok(self.min_degrees()?.iter().sum())
    }

    pub fn entry(&self, kind: TauKind, index: usize) -> Option<&TauEntry> {
        self.entries.iter().find(|e| e.kind == kind && e.index == index)
    }
}

pub fn multiplicity(t: LieType) -> Result<u32> {
    nilpotent_tau(t)?.multiplicity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::eta_longest;
    use crate::blowup::SignVector;
    use crate::cartan::compact_dual_data;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn monomial(nvars: usize, exps: &[(usize, u32)], c: BigRational) -> MultiPoly {
        let mut e = vec![0; nvars];
        for &(v, p) in exps {
            e[v] = p;
        }
        let mut p = MultiPoly::zero(nvars);
        p.add_term(e, c);
        p
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_poly(0, &[1, 2]), MultiPoly::one(2));
        let h2 = &monomial(2, &[(0, 2)], q(1, 2)) + &monomial(2, &[(1, 1)], q(1, 1));
        assert_eq!(h_poly(2, &[1, 2]), h2);
        let h6 = &monomial(2, &[(0, 6)], q(1, 720)) + &monomial(2, &[(0, 1), (1, 1)], q(1, 1));
        assert_eq!(h_poly(6, &[1, 5]), h6);
        assert_eq!(min_degree(&h6).unwrap(), 2);
    }

    #[test]
    fn h_from_partitions() {
        // Direct sum over k_1 + 2k_2 + 3k_3 = n of Π t_j^{k_j}/k_j!.
        let fact = |k: u32| (1..=k as i64).product::<i64>();
        for n in 0..9u32 {
            let mut expected = MultiPoly::zero(3);
            for k3 in 0..=n / 3 {
                for k2 in 0..=(n - 3 * k3) / 2 {
                    let k1 = n - 3 * k3 - 2 * k2;
                    expected.add_term(vec![k1, k2, k3], q(1, fact(k1) * fact(k2) * fact(k3)));
                }
            }
            assert_eq!(h_poly(n as usize, &[1, 2, 3]), expected, "h_{n}");
        }
    }

    #[test]
    fn derivative_shifts_index() {
        let active = [1, 2, 3, 5];
        for n in 1..=10 {
            assert_eq!(h_poly(n, &active).derivative(0), h_poly(n - 1, &active));
        }
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_wronskian(&[4], &[1, 2, 3]), h_poly(4, &[1, 2, 3]));
        let s12 = &monomial(2, &[(0, 2)], q(1, 2)) - &monomial(2, &[(1, 1)], q(1, 1));
        assert_eq!(schur_wronskian(&[1, 2], &[1, 2]), s12);
        assert_eq!(min_degree(&s12).unwrap(), 1);
        let w = schur_wronskian(&[5, 6], &[1, 5]);
        let direct = &(&h_poly(6, &[1, 5]) * &h_poly(4, &[1, 5])) - &(&h_poly(5, &[1, 5]) * &h_poly(5, &[1, 5]));
        assert_eq!(w, -&direct);
        assert_eq!(direct.lowest_form(), monomial(2, &[(1, 2)], q(-1, 1)));
    }

    #[test]
    fn minimal_degree_lists() {
        let cases: &[(&str, &[u32])] = &[
            ("A1", &[1]),
            ("A2", &[1, 1]),
            ("A3", &[1, 2, 1]),
            ("A4", &[1, 2, 2, 1]),
            ("A5", &[1, 2, 3, 2, 1]),
            ("A6", &[1, 2, 3, 3, 2, 1]),
            ("B2", &[2, 1]),
            ("B3", &[2, 2, 2]),
            ("B4", &[2, 2, 4, 2]),
            ("C2", &[1, 2]),
            ("C3", &[1, 2, 3]),
            ("C4", &[1, 2, 3, 4]),
            ("D4", &[2, 2, 2, 2]),
            ("G2", &[2, 2]),
        ];
        for (t, expected) in cases {
            assert_eq!(nilpotent_tau(ty(t)).unwrap().min_degrees().unwrap(), *expected, "{t}");
        }
    }

    #[test]
    fn multiplicity_matches_blowups_and_degrees() {
        for t in ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2"] {
            let lt = ty(t);
            let d = multiplicity(lt).unwrap();
            assert_eq!(d, eta_longest(lt, SignVector::all_minus(lt.rank())).unwrap(), "{t}");
            assert_eq!(d, compact_dual_data(lt).degree_sum(), "{t}");
        }
    }

    #[test]
    fn lowest_forms_named_in_text() {
        let g2 = nilpotent_tau(ty("G2")).unwrap();
        // τ_1 ∼ t_1 t_5, τ_2 ∼ t_5²
        assert_eq!(g2.entries[0].poly.lowest_form(), monomial(2, &[(0, 1), (1, 1)], q(1, 1)));
        assert_eq!(g2.entries[1].poly.lowest_form().terms().map(|(e, _)| e.to_vec()).collect::<Vec<_>>(), [vec![0, 2]]);
        // D4: τ_1 ∼ s t_3, τ_4² ∼ s²
        let d4 = nilpotent_tau(ty("D4")).unwrap();
        let exps = |e: &TauEntry| e.poly.lowest_form().terms().map(|(e, _)| e.to_vec()).collect::<Vec<_>>();
        assert!(exps(d4.entry(TauKind::Plain, 1).unwrap()).contains(&vec![0, 1, 0, 1]));
        assert!(exps(d4.entry(TauKind::Squared, 4).unwrap()).contains(&vec![0, 0, 0, 4]));
        // B4: τ_4 ∼ t_5^2, so τ_4² ∼ t_5^4
        let b4 = nilpotent_tau(ty("B4")).unwrap();
        assert!(exps(b4.entry(TauKind::Squared, 4).unwrap()).contains(&vec![0, 0, 4, 0]));
    }

    #[test]
    fn rank_five_beyond_default_bound() {
        let bounds = TauBounds { a: 6, bcd: 5 };
        let cases: &[(&str, &[u32])] = &[("D5", &[2, 2, 4, 2, 2]), ("C5", &[1, 2, 3, 4, 5]), ("B5", &[2, 2, 4, 4, 3])];
        for (t, expected) in cases {
            let fam = nilpotent_tau_with(ty(t), bounds).unwrap();
            assert_eq!(fam.min_degrees().unwrap(), *expected, "{t}");
        }
    }

    #[test]
    fn a_type_t1_degrees() {
        for l in 1..=5usize {
            let fam = nilpotent_tau(ty(&format!("A{l}"))).unwrap();
            let mut total = 0;
            for (k, e) in fam.entries.iter().enumerate() {
                let k = k + 1;
                assert_eq!(e.poly.degree_in(0).unwrap() as usize, k * (l - k + 1));
                total += k * (l - k + 1);
            }
            // |2ρ| = Σ over positive roots of the height, = l(l+1)(l+2)/6 for A_l.
            assert_eq!(total, l * (l + 1) * (l + 2) / 6);
        }
    }

    #[test]
    fn product_has_no_lowest_cancellation() {
        for t in ["A2", "A3", "C2", "C3", "G2"] {
            let fam = nilpotent_tau(ty(t)).unwrap();
            let n = fam.variables.count();
            let f = fam.entries.iter().fold(MultiPoly::one(n), |acc, e| &acc * &e.poly);
            assert_eq!(f.min_degree().unwrap(), fam.multiplicity().unwrap(), "{t}");
        }
    }

    #[test]
    fn unsupported_and_bounded() {
        assert_eq!(nilpotent_tau(ty("E6")).unwrap_err(), Error::UnsupportedType("E6".into()));
        assert_eq!(nilpotent_tau(ty("F4")).unwrap_err(), Error::UnsupportedType("F4".into()));
        assert!(matches!(nilpotent_tau(ty("B5")), Err(Error::RankBound { rank: 5, bound: 4, .. })));
        assert!(matches!(nilpotent_tau(ty("A7")), Err(Error::RankBound { .. })));
        assert_eq!(min_degree(&MultiPoly::zero(1)), Err(Error::ZeroPolynomial));
    }
}
