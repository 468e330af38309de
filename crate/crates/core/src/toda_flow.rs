//! Type-A Toda τ-functions along the first flow, written as exponential
//! sums through the Vandermonde diagonalization of the companion matrix,
//! and counting of their real zeros.

use serde::Serialize;

use crate::blowup::{eta_longest, SignVector};
use crate::cartan::{Family, LieType};
use crate::error::{Error, Result};

const MAX_ABS_EIGENVALUE: f64 = 10.0;
/// Default number of grid points for sign-change detection.
pub const DEFAULT_SAMPLES: usize = 20_000;
/// Relative width at which bisection stops.
const BISECTION_WIDTH: f64 = 1e-12;

/// Strictly increasing, trace-free real spectrum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralData {
    eigenvalues: Vec<f64>,
}

impl SpectralData {
    pub fn new(eigenvalues: Vec<f64>) -> Result<SpectralData> {
        let n = eigenvalues.len();
        let degenerate = Error::DegenerateSpectrum { expected: n.max(2) };
        if n < 2 || eigenvalues.iter().any(|x| !x.is_finite() || x.abs() > MAX_ABS_EIGENVALUE) {
            return Err(degenerate);
        }
        if eigenvalues.windows(2).any(|w| w[0] >= w[1]) {
            return Err(degenerate);
        }
        let sum: f64 = eigenvalues.iter().sum();
        if sum.abs() > 1e-9 * eigenvalues.iter().map(|x| x.abs()).sum::<f64>().max(1.0) {
            return Err(degenerate);
        }
        Ok(SpectralData { eigenvalues })
    }

    /// Sorts and shifts arbitrary distinct values to a trace-free spectrum.
    pub fn centered(mut values: Vec<f64>) -> Result<SpectralData> {
        values.sort_by(f64::total_cmp);
        let mean = values.iter().sum::<f64>() / values.len().max(1) as f64;
        SpectralData::new(values.into_iter().map(|x| x - mean).collect())
    }

    pub fn rank(&self) -> usize {
        self.eigenvalues.len() - 1
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn min_gap(&self) -> f64 {
        self.eigenvalues.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    /// `30 / min gap`.
    pub fn default_window(&self) -> f64 {
        30.0 / self.min_gap()
    }
}

/// Which Bruhat cell the flow starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coset {
    /// The open cell through `w*`; trajectories blow up.
    Longest,
    /// The identity coset; trajectories stay regular.
    Identity,
}

/// One exponential `sign · exp(ln_abs + exponent · t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Term {
    pub exponent: f64,
    pub sign: f64,
    pub ln_abs: f64,
}

/// `τ_j(t) = Σ_S c_S exp(t · Σ_{i∈S} λ_i)` over `j`-subsets `S`, with
/// coefficients kept in log form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauSignal {
    pub j: usize,
    /// Sorted by exponent; vanishing coefficients are omitted.
    pub terms: Vec<Term>,
}

impl TauSignal {
    fn top(&self, t: f64) -> f64 {
        self.terms.iter().map(|c| c.ln_abs + c.exponent * t).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `τ_j(t)` divided by its largest term at `t`; same sign, no overflow.
    pub fn eval_scaled(&self, t: f64) -> f64 {
        let top = self.top(t);
        self.terms.iter().map(|c| c.sign * (c.ln_abs + c.exponent * t - top).exp()).sum()
    }

    /// `τ_j'(t)` with the same scaling as [`TauSignal::eval_scaled`].
    fn derivative_scaled(&self, t: f64) -> f64 {
        let top = self.top(t);
        self.terms.iter().map(|c| c.sign * c.exponent * (c.ln_abs + c.exponent * t - top).exp()).sum()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|c| c.sign * (c.ln_abs + c.exponent * t).exp()).sum()
    }

    pub fn log_spread(&self) -> f64 {
        let (lo, hi) = self
            .terms
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| (lo.min(c.ln_abs), hi.max(c.ln_abs)));
        if hi >= lo { hi - lo } else { 0.0 }
    }

    /// Term dominating as `t → +∞` (`forward`) or `t → −∞`.
    pub fn dominant(&self, forward: bool) -> Option<Term> {
        if forward { self.terms.last().copied() } else { self.terms.first().copied() }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// `(sign, ln|Π_{a<b} (x_b − x_a)|)` over indices taken in increasing order.
fn vandermonde(lambda: &[f64], idx: &[usize]) -> (f64, f64) {
    let mut sign = 1.0;
    let mut ln = 0.0;
    for (p, &a) in idx.iter().enumerate() {
        for &b in &idx[p + 1..] {
            let d = lambda[b] - lambda[a];
            sign *= d.signum();
            ln += d.abs().ln();
        }
    }
    (sign, ln)
}

/// Higher times `t_2, …, t_l` fixing a generic starting point; all zero puts
/// the start at the most singular point, where every τ vanishes at `t_1 = 0`.
pub fn default_higher_times(spec: &SpectralData) -> Vec<f64> {
    let scale = spec.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    (2..=spec.rank()).map(|k| 1.0 / (2.0 * k as f64 * scale.powi(k as i32 - 1))).collect()
}

pub fn companion_tau(j: usize, spec: &SpectralData) -> Result<TauSignal> {
    companion_tau_at(j, spec, Coset::Longest, &default_higher_times(spec))
}

/// Leading `j × j` minor of `exp(t C) · h · w`, where `C` is the companion
/// matrix of `Π(x − λ_i)` (ones above the diagonal, coefficients in the last
/// row), `h = exp(Σ_{k≥2} t_k C^k)` and `w` is the antidiagonal permutation
/// or the identity.
///
/// Columns `(1, λ_i, …, λ_i^{n−1})` are eigenvectors of `C`, so with
/// `V_{ik} = λ_i^k` we have `exp(tC)·h = Vᵀ e^{tΛ} diag(μ) V⁻ᵀ`, and
/// Cauchy–Binet plus Jacobi's complementary-minor identity give
/// `c_S = ± μ_S Δ(λ_S) P(λ_{S^c}) Δ(λ_{S^c}) / Δ(λ)` in closed form.
pub fn companion_tau_at(j: usize, spec: &SpectralData, coset: Coset, higher_times: &[f64]) -> Result<TauSignal> {
    let n = spec.eigenvalues.len();
    if j == 0 || j >= n {
        return Err(Error::IndexOutOfRange { index: j, rank: n - 1 });
    }
    let lambda = &spec.eigenvalues;
    let ln_mu: Vec<f64> = lambda
        .iter()
        .map(|&x| higher_times.iter().enumerate().map(|(k, &t)| t * x.powi(k as i32 + 2)).sum())
        .collect();
    let all: Vec<usize> = (0..n).collect();
    let (full_sign, full_ln) = vandermonde(lambda, &all);
    // Rows of V⁻¹ paired with the leading columns of V⁻ᵀ·w.
    let (rows, reversal): (Vec<usize>, f64) = match coset {
        Coset::Longest => ((n - j..n).collect(), if (j * (j - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 }),
        Coset::Identity => ((0..j).collect(), 1.0),
    };
    let row_sum: usize = rows.iter().sum();
    let mut terms = Vec::new();
    for s in subsets(n, j) {
        let rest: Vec<usize> = all.iter().copied().filter(|i| !s.contains(i)).collect();
        let (s_sign, s_ln) = vandermonde(lambda, &s);
        let (r_sign, r_ln) = vandermonde(lambda, &rest);
        // Identity coset: columns j.. of V on rows S^c factor as Π λ_i^j · Δ.
        let (mut p_sign, mut p_ln) = (1.0, 0.0);
        if coset == Coset::Identity {
            for &i in &rest {
                if lambda[i] == 0.0 {
                    p_sign = 0.0;
                }
                p_sign *= lambda[i].signum().powi(j as i32);
                p_ln += j as f64 * lambda[i].abs().ln();
            }
        }
        if p_sign == 0.0 {
            continue;
        }
        let parity = if (row_sum + s.iter().sum::<usize>()) % 2 == 0 { 1.0 } else { -1.0 };
        terms.push(Term {
            exponent: s.iter().map(|&i| lambda[i]).sum(),
            sign: reversal * parity * s_sign * r_sign * p_sign * full_sign,
            ln_abs: s.iter().map(|&i| ln_mu[i]).sum::<f64>() + s_ln + r_ln + p_ln - full_ln,
        });
    }
    terms.sort_by(|a, b| a.exponent.total_cmp(&b.exponent));
    Ok(TauSignal { j, terms })
}

/// `(30 + L) / min gap`, `L` the largest spread of `ln|c_S|` within one
/// signal, so that balancing points of the exponentials fall inside.
pub fn auto_window(spec: &SpectralData, signals: &[TauSignal]) -> f64 {
    let spread = signals.iter().map(TauSignal::log_spread).fold(0.0, f64::max);
    (30.0 + spread) / spec.min_gap()
}

/// Real zeros of `sig` in `[−window, window]`: sign changes on a uniform
/// grid, plus pairs of zeros hiding between two grid points, found by
/// locating the extremum where `τ'` changes sign. Each zero is refined by
/// bisection. Tangential zeros are not detected.
pub fn locate_zeros(sig: &TauSignal, window: f64, samples: usize) -> Result<Vec<f64>> {
    let samples = samples.max(2);
    for (forward, t) in [(false, -window), (true, window)] {
        let c = sig.dominant(forward).ok_or(Error::WindowTooSmall(window))?;
        if sig.eval_scaled(t).signum() != c.sign {
            return Err(Error::WindowTooSmall(window));
        }
    }
    let f = |t: f64| sig.eval_scaled(t);
    let df = |t: f64| sig.derivative_scaled(t);
    let step = 2.0 * window / (samples - 1) as f64;
    let mut zeros = Vec::new();
    let mut a = -window;
    let (mut fa, mut da) = (f(a), df(a));
    for k in 1..samples {
        let b = -window + step * k as f64;
        let (fb, db) = (f(b), df(b));
        if fa == 0.0 {
            zeros.push(a);
        } else if fb != 0.0 && fa.signum() != fb.signum() {
            zeros.push(bisect(&f, a, b));
        } else if fb != 0.0 && da.signum() != db.signum() {
            let m = bisect(&df, a, b);
            if f(m).signum() != fa.signum() {
                zeros.push(bisect(&f, a, m));
                zeros.push(bisect(&f, m, b));
            }
        }
        (a, fa, da) = (b, fb, db);
    }
    Ok(zeros)
}

/// Root of `g` in `[a, b]` given a sign change, to relative width 10⁻¹².
fn bisect(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ga = g(a).signum();
    while (b - a) > BISECTION_WIDTH * a.abs().max(b.abs()).max(1.0) {
        let m = 0.5 * (a + b);
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if gm.signum() == ga {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

pub fn count_zeros(sig: &TauSignal, window: f64, samples: usize) -> Result<usize> {
    Ok(locate_zeros(sig, window, samples)?.len())
}

pub fn total_blowups(spec: &SpectralData) -> Result<usize> {
    Ok(flow_report(spec, None, DEFAULT_SAMPLES, None)?.total)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowReport {
    pub rank: usize,
    pub spectrum: Vec<f64>,
    pub higher_times: Vec<f64>,
    pub window: f64,
    pub per_tau_zeros: Vec<usize>,
    pub total: usize,
    pub eta_wstar: u32,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Counts blow-ups along the `t_1` flow and compares them with `η(w*)` of `A_l`.
pub fn flow_report(spec: &SpectralData, window: Option<f64>, samples: usize, higher_times: Option<Vec<f64>>) -> Result<FlowReport> {
    let rank = spec.rank();
    let higher_times = higher_times.unwrap_or_else(|| default_higher_times(spec));
    let signals = (1..=rank)
        .map(|j| companion_tau_at(j, spec, Coset::Longest, &higher_times))
        .collect::<Result<Vec<_>>>()?;
    let window = window.unwrap_or_else(|| auto_window(spec, &signals));
    let per_tau_zeros = signals.iter().map(|s| count_zeros(s, window, samples)).collect::<Result<Vec<_>>>()?;
    let total = per_tau_zeros.iter().sum();
    let eta_wstar = eta_longest(LieType::new(Family::A, rank)?, SignVector::all_minus(rank))?;
    Ok(FlowReport {
        rank,
        spectrum: spec.eigenvalues.clone(),
        higher_times,
        window,
        per_tau_zeros,
        total,
        eta_wstar,
        matches: total == eta_wstar as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(v: &[f64]) -> SpectralData {
        SpectralData::new(v.to_vec()).unwrap()
    }

    fn random_spectrum(rng: &mut ChaCha8Rng, rank: usize) -> SpectralData {
        loop {
            let raw: Vec<f64> = (0..=rank).map(|_| rng.gen_range(-4.0..4.0)).collect();
            if let Ok(s) = SpectralData::centered(raw) {
                if s.min_gap() > 0.2 {
                    return s;
                }
            }
        }
    }

    fn series_exp(m: &DMatrix<f64>) -> DMatrix<f64> {
        let n = m.nrows();
        let mut term = DMatrix::<f64>::identity(n, n);
        let mut sum = term.clone();
        for k in 1..80 {
            term = &term * m / k as f64;
            sum += &term;
        }
        sum
    }

    #[test]
    fn rejects_degenerate_spectra() {
        assert!(SpectralData::new(vec![1.0, 1.0, -2.0]).is_err());
        assert!(SpectralData::new(vec![-1.0, 2.0]).is_err());
        assert!(SpectralData::new(vec![-11.0, 11.0]).is_err());
        assert!(SpectralData::new(vec![0.0]).is_err());
        assert_eq!(SpectralData::centered(vec![3.0, 1.0]).unwrap().eigenvalues(), &[-1.0, 1.0]);
        assert!(companion_tau(2, &spec(&[-1.0, 1.0])).is_err());
    }

    #[test]
    fn rank_one_is_sinh_and_cosh() {
        let s = spec(&[-1.0, 1.0]);
        let minus = companion_tau(1, &s).unwrap();
        let plus = companion_tau_at(1, &s, Coset::Identity, &[]).unwrap();
        for t in [-2.0, -0.3, 0.0, 0.7, 3.0] {
            assert!((minus.eval(t) - f64::sinh(t)).abs() < 1e-12);
            assert!((plus.eval(t) - f64::cosh(t)).abs() < 1e-12);
        }
        let zeros = locate_zeros(&minus, 10.0, 1001).unwrap();
        assert_eq!(zeros.len(), 1);
        assert!(zeros[0].abs() < 1e-10);
        assert_eq!(count_zeros(&plus, 10.0, 1001).unwrap(), 0);
    }

    #[test]
    fn start_at_singular_point() {
        // Without higher times every τ_j vanishes at t = 0.
        for v in [&[-1.0, 0.0, 1.0][..], &[-1.5, -0.5, 0.5, 1.5], &[-2.0, -0.5, 1.0, 1.5]] {
            let s = spec(v);
            for j in 1..=s.rank() {
                let sig = companion_tau_at(j, &s, Coset::Longest, &vec![0.0; s.rank() - 1]).unwrap();
                assert!(sig.eval(0.0).abs() < 1e-9, "{v:?} j={j}");
            }
        }
    }

    #[test]
    fn rank_two_symmetric_spectrum() {
        let s = spec(&[-1.0, 0.0, 1.0]);
        let r = flow_report(&s, Some(20.0), DEFAULT_SAMPLES, None).unwrap();
        assert_eq!(r.total, 2);
        assert!(r.matches);
    }

    fn minor(m: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> f64 {
        DMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])]).determinant()
    }

    #[test]
    fn matrix_exponential_agrees() {
        let s = spec(&[-1.5, -0.25, 0.5, 1.25]);
        let n = 4;
        // Coefficients of Π(x − λ_i), low degree first.
        let mut poly = vec![1.0];
        for &l in s.eigenvalues() {
            let mut next = vec![0.0; poly.len() + 1];
            for (k, &a) in poly.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= l * a;
            }
            poly = next;
        }
        let c = DMatrix::from_fn(n, n, |i, k| {
            if i == n - 1 {
                -poly[k]
            } else if k == i + 1 {
                1.0
            } else {
                0.0
            }
        });
        let times = [0.3, -0.2];
        let h = series_exp(&(&c * &c * times[0] + &c * &c * &c * times[1]));
        let w = DMatrix::from_fn(n, n, |i, k| if i + k == n - 1 { 1.0 } else { 0.0 });
        for (coset, w) in [(Coset::Longest, w), (Coset::Identity, DMatrix::identity(n, n))] {
            for t in [-0.7, 0.0, 0.8] {
                let g = series_exp(&(&c * t)) * &h * &w;
                for j in 1..n {
                    let lead: Vec<usize> = (0..j).collect();
                    let direct = minor(&g, &lead, &lead);
                    let sig = companion_tau_at(j, &s, coset, &times).unwrap();
                    assert!((direct - sig.eval(t)).abs() < 1e-9 * direct.abs().max(1.0), "{coset:?} t={t} j={j}");
                }
            }
        }
    }

    #[test]
    fn window_too_small_is_reported() {
        let term = |exponent: f64, c: f64| Term { exponent, sign: c.signum(), ln_abs: c.abs().ln() };
        let shifted = TauSignal { j: 1, terms: vec![term(-1.0, -1.0), term(1.0, 1e-6)] };
        assert_eq!(count_zeros(&shifted, 1.0, 100), Err(Error::WindowTooSmall(1.0)));
        assert_eq!(count_zeros(&shifted, 10.0, 1000).unwrap(), 1);
    }

    #[test]
    fn dominant_terms_are_extreme_subsets() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for rank in 1..=4 {
            for _ in 0..10 {
                let s = random_spectrum(&mut rng, rank);
                let lambda = s.eigenvalues();
                for j in 1..=rank {
                    let sig = companion_tau(j, &s).unwrap();
                    let top: f64 = lambda[rank + 1 - j..].iter().sum();
                    let bottom: f64 = lambda[..j].iter().sum();
                    assert!((sig.dominant(true).unwrap().exponent - top).abs() < 1e-9);
                    assert!((sig.dominant(false).unwrap().exponent - bottom).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn blowups_match_eta_for_random_spectra() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for (rank, expected) in [(1, 1), (2, 2), (3, 4), (4, 6)] {
            for _ in 0..20 {
                let s = random_spectrum(&mut rng, rank);
                let r = flow_report(&s, None, DEFAULT_SAMPLES, None).unwrap();
                assert_eq!(r.eta_wstar, expected);
                assert!(r.matches, "{r:?}");
            }
        }
    }

    #[test]
    fn count_is_independent_of_generic_start() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for rank in 2..=4 {
            for _ in 0..10 {
                let s = random_spectrum(&mut rng, rank);
                let times: Vec<f64> = (1..rank).map(|_| rng.gen_range(-0.3..0.3)).collect();
                let r = flow_report(&s, None, DEFAULT_SAMPLES, Some(times)).unwrap();
                assert!(r.matches, "{r:?}");
            }
        }
    }

    #[test]
    fn symmetric_rank_three() {
        assert_eq!(total_blowups(&spec(&[-1.5, -0.5, 0.5, 1.5])).unwrap(), 4);
        assert_eq!(total_blowups(&spec(&[-3.0, -1.0, 1.0, 3.0])).unwrap(), 4);
    }
}
