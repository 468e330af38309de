//! Cochain complexes with incidence numbers `0` or `±2` read off the blow-up
//! graph, and their integral, rational and mod-2 cohomology.
//!
//! Every edge `w1 ⇒ w2` becomes a coefficient `±2` in `δ: C^{l(w1)} → C^{l(w2)}`.
//! The signs are not determined by the graph; they are solved for over `F_2`
//! so that each complete Bruhat diamond anticommutes, which is exactly
//! `δ∘δ = 0`. The complex splits along graph components, so all linear algebra
//! is done one component at a time.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::blowup::SignVector;
use crate::cartan::LieType;
use crate::error::{Error, Result};
use crate::graph::{build_graph_with_covers, bruhat_covers, components, IncidenceGraph};
use crate::weyl::{WeylGroup, DEFAULT_CAP};

/// A length-2 Bruhat interval with both two-edge paths inside the graph.
/// `paths[k]` holds the two edge ids (indices into `IncidenceGraph::edges`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub lower: usize,
    pub upper: usize,
    pub paths: [[usize; 2]; 2],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiamondReport {
    /// Number of length-2 intervals scanned.
    pub intervals: usize,
    pub complete: Vec<Diamond>,
}

/// Scans every length-2 Bruhat interval and checks that 0 or 2 of its paths
/// lie in the graph.
pub fn diamond_check(g: &IncidenceGraph, covers: &[(usize, usize)]) -> Result<DiamondReport> {
    let n = g.vertices.len();
    let mut ups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in covers {
        ups[a].push(b);
    }
    let edge_id: HashMap<(usize, usize), usize> = g.edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut report = DiamondReport::default();
    for w in 0..n {
        let mut tops: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &ups[w] {
            for &u in &ups[v] {
                tops.entry(u).or_default().push(v);
            }
        }
        for (u, middles) in tops {
            report.intervals += 1;
            debug_assert_eq!(middles.len(), 2, "Bruhat intervals of length 2 are diamonds");
            let paths: Vec<[usize; 2]> = middles
                .iter()
                .filter_map(|&v| Some([*edge_id.get(&(w, v))?, *edge_id.get(&(v, u))?]))
                .collect();
            match paths.len() {
                0 => {}
                2 => report.complete.push(Diamond { lower: w, upper: u, paths: [paths[0], paths[1]] }),
                _ => {
                    return Err(Error::DiamondViolation {
                        lower: g.vertices[w].word.clone(),
                        upper: g.vertices[u].word.clone(),
                    })
                }
            }
        }
    }
    Ok(report)
}

/// Order in which edges are offered to the spanning forest that fixes the
/// sign gauge. Different orders give different, equivalent complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gauge {
    Forward,
    Reversed,
}

/// Sparse integer matrix for `δ_k: C^k → C^{k+1}`; rows index length `k+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Differential {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)`, sorted.
    pub entries: Vec<(usize, usize, i64)>,
}

impl Differential {
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            m[r][c] = v;
        }
        m
    }

    /// `self ∘ prev`, as a sparse map of nonzero entries.
    pub fn compose(&self, prev: &Differential) -> BTreeMap<(usize, usize), i64> {
        let mut by_row: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for &(r, c, v) in &prev.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = BTreeMap::new();
        for &(r, mid, v) in &self.entries {
            for &(c, w) in by_row.get(&mid).map(Vec::as_slice).unwrap_or(&[]) {
                *out.entry((r, c)).or_insert(0) += v * w;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainComplex {
    /// Group indices of each length, ascending.
    pub bases: Vec<Vec<usize>>,
    /// `differentials[k]` maps degree `k` to degree `k + 1`.
    pub differentials: Vec<Differential>,
    /// `±1` per graph edge, aligned with `IncidenceGraph::edges`.
    pub edge_signs: Vec<i8>,
    /// Sign bits left undetermined by the diamond equations.
    pub free_bits: usize,
}

impl ChainComplex {
    pub fn squares_to_zero(&self) -> bool {
        self.differentials.windows(2).all(|d| d[1].compose(&d[0]).is_empty())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
}

/// Solution space of the diamond equations under a spanning-forest gauge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSolution {
    /// `true` marks a `-2` edge; free variables are set to `+`.
    pub bits: Vec<bool>,
    /// Basis of edge sets whose simultaneous flip keeps every equation
    /// satisfied. The forest fixes the gauge completely, so each nonzero
    /// combination is a genuinely different complex.
    pub free: Vec<Vec<usize>>,
}

/// Solves `Σ bits = 1` over `F_2` per complete diamond, with spanning-forest
/// edges fixed to `+`.
pub fn solve_signs(g: &IncidenceGraph, diamonds: &DiamondReport, gauge: Gauge) -> Result<SignSolution> {
    let n = g.vertices.len();
    let m = g.edges.len();
    let mut forest = vec![false; m];
    let mut uf = UnionFind((0..n).collect());
    let order: Vec<usize> = match gauge {
        Gauge::Forward => (0..m).collect(),
        Gauge::Reversed => (0..m).rev().collect(),
    };
    for k in order {
        let (a, b) = g.edges[k];
        let (ra, rb) = (uf.find(a), uf.find(b));
        if ra != rb {
            uf.0[ra] = rb;
            forest[k] = true;
        }
    }

    // Equations never couple different components; solve each separately.
    let comps = components(g);
    let mut unknowns: Vec<Vec<usize>> = vec![Vec::new(); comps.count];
    let mut slot = vec![usize::MAX; m];
    for (k, &(a, _)) in g.edges.iter().enumerate() {
        if !forest[k] {
            let c = comps.labels[a];
            slot[k] = unknowns[c].len();
            unknowns[c].push(k);
        }
    }
    let mut equations: Vec<Vec<&Diamond>> = vec![Vec::new(); comps.count];
    for d in &diamonds.complete {
        equations[comps.labels[d.lower]].push(d);
    }

    let mut bits = vec![false; m];
    let mut free = Vec::new();
    for c in 0..comps.count {
        let vars = &unknowns[c];
        let rows: Vec<Vec<bool>> = equations[c]
            .iter()
            .map(|d| {
                let mut row = vec![false; vars.len() + 1];
                row[vars.len()] = true;
                for &e in d.paths.iter().flatten() {
                    if !forest[e] {
                        row[slot[e]] ^= true;
                    }
                }
                row
            })
            .collect();
        let (solution, kernel) = solve_f2(rows, vars.len()).ok_or(Error::Unsolvable)?;
        for (j, &k) in vars.iter().enumerate() {
            bits[k] = solution[j];
        }
        for v in kernel {
            free.push(vars.iter().zip(v).filter(|(_, b)| *b).map(|(&k, _)| k).collect());
        }
    }
    Ok(SignSolution { bits, free })
}

/// Builds the complex with `-2` on the marked edges and checks `δ∘δ = 0`.
pub fn complex_from_bits(g: &IncidenceGraph, bits: &[bool], free_bits: usize) -> Result<ChainComplex> {
    let n = g.vertices.len();
    let edge_signs: Vec<i8> = bits.iter().map(|&b| if b { -1 } else { 1 }).collect();
    let top = g.vertices.iter().map(|v| v.length).max().unwrap_or(0);
    let mut bases = vec![Vec::new(); top + 1];
    let mut local = vec![0; n];
    for v in &g.vertices {
        local[v.index] = bases[v.length].len();
        bases[v.length].push(v.index);
    }
    let mut differentials: Vec<Differential> = (0..top)
        .map(|k| Differential { rows: bases[k + 1].len(), cols: bases[k].len(), entries: Vec::new() })
        .collect();
    for (k, &(a, b)) in g.edges.iter().enumerate() {
        let deg = g.vertices[a].length;
        differentials[deg].entries.push((local[b], local[a], 2 * edge_signs[k] as i64));
    }
    for d in &mut differentials {
        d.entries.sort_unstable();
    }
    let complex = ChainComplex { bases, differentials, edge_signs, free_bits };
    if !complex.squares_to_zero() {
        return Err(Error::Unsolvable);
    }
    Ok(complex)
}

/// The complex for the particular solution of [`solve_signs`].
pub fn assign_signs(g: &IncidenceGraph, diamonds: &DiamondReport, gauge: Gauge) -> Result<ChainComplex> {
    let solution = solve_signs(g, diamonds, gauge)?;
    complex_from_bits(g, &solution.bits, solution.free.len())
}

/// Distinct cohomology results over every solution of the sign equations,
/// or `None` when there are more than `2^max_free` solutions.
pub fn sign_class_groups(g: &IncidenceGraph, diamonds: &DiamondReport, max_free: usize) -> Result<Option<Vec<CohomologyGroups>>> {
    let solution = solve_signs(g, diamonds, Gauge::Forward)?;
    let k = solution.free.len();
    if k > max_free {
        return Ok(None);
    }
    let mut seen: Vec<CohomologyGroups> = Vec::new();
    for mask in 0u64..1 << k {
        let mut bits = solution.bits.clone();
        for (j, flips) in solution.free.iter().enumerate() {
            if mask >> j & 1 == 1 {
                for &e in flips {
                    bits[e] ^= true;
                }
            }
        }
        let groups = cohomology_of(g, &complex_from_bits(g, &bits, k)?);
        if !seen.contains(&groups) {
            seen.push(groups);
        }
    }
    Ok(Some(seen))
}

/// Gaussian elimination over `F_2` on augmented rows (last entry is the right
/// hand side). Returns the solution with free variables at zero and a basis
/// of the kernel.
fn solve_f2(mut rows: Vec<Vec<bool>>, vars: usize) -> Option<(Vec<bool>, Vec<Vec<bool>>)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..vars {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col]) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] {
                for (d, s) in row.iter_mut().zip(&pivot) {
                    *d ^= *s;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[vars]) {
        return None;
    }
    let mut x = vec![false; vars];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i][vars];
    }
    let mut kernel = Vec::new();
    for f in (0..vars).filter(|c| !pivots.contains(c)) {
        let mut v = vec![false; vars];
        v[f] = true;
        for (i, &col) in pivots.iter().enumerate() {
            v[col] = rows[i][f];
        }
        kernel.push(v);
    }
    Some((x, kernel))
}

/// Nonzero diagonal of a diagonal form of `a` (absolute values, unordered).
fn diagonalize(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { return diag };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &pivot;
                for j in t..cols {
                    let delta = &q * &a[t][j];
                    a[i][j] -= delta;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &pivot;
                for i in t..rows {
                    let delta = &q * &a[i][t];
                    a[i][j] -= delta;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                diag.push(pivot.abs());
                break;
            }
        }
    }
    diag
}

/// Rewrites a list of diagonal entries as elementary divisors
/// `d_1 | d_2 | ⋯`, dropping units.
pub fn elementary_divisors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if g.is_zero() {
                continue;
            }
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l.abs();
        }
    }
    d.retain(|x| !x.is_one());
    d.sort();
    d
}

/// Smith normal form invariants of an integer matrix: nonzero elementary
/// divisors including units.
pub fn smith_invariants(a: &[Vec<i64>]) -> Vec<BigInt> {
    let big = a.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let diag = diagonalize(big);
    let rank = diag.len();
    let mut divs = elementary_divisors(diag);
    let mut out = vec![BigInt::one(); rank - divs.len()];
    out.append(&mut divs);
    out
}

fn rank_f2(a: &[Vec<i64>]) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let rows: Vec<Vec<bool>> = a
        .iter()
        .map(|r| {
            let mut row: Vec<bool> = r.iter().map(|x| x.rem_euclid(2) == 1).collect();
            row.push(false);
            row
        })
        .collect();
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    let mut rows = rows;
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col]) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col] {
                for (d, s) in row.iter_mut().zip(&pivot) {
                    *d ^= *s;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn serialize_divisors<S: Serializer>(d: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(d.len()))?;
    for x in d {
        match x.to_u64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    pub free_rank: usize,
    /// Elementary divisors greater than one.
    #[serde(serialize_with = "serialize_divisors")]
    pub torsion: Vec<BigInt>,
    /// Free rank split by the `η` value of the graph component carrying it.
    pub free_by_eta: BTreeMap<u32, usize>,
}

impl CohomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyGroups {
    pub lie_type: LieType,
    pub eps: SignVector,
    pub degrees: Vec<CohomologyGroup>,
    /// Dimensions of cohomology with `F_2` coefficients.
    pub mod2: Vec<usize>,
    pub warnings: Vec<String>,
}

impl CohomologyGroups {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|g| g.free_rank).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().enumerate().map(|(k, g)| if k % 2 == 0 { 1 } else { -1 } * g.free_rank as i64).sum()
    }

    pub fn summary(&self) -> Vec<String> {
        self.degrees.iter().map(ToString::to_string).collect()
    }
}

/// Cohomology of a solved complex, computed one graph component at a time.
pub fn cohomology_of(g: &IncidenceGraph, complex: &ChainComplex) -> CohomologyGroups {
    let comps = components(g);
    let top = complex.bases.len();
    let mut local = vec![0; g.vertices.len()];
    for basis in &complex.bases {
        for (k, &idx) in basis.iter().enumerate() {
            local[idx] = k;
        }
    }
    // Per component and degree: the global basis positions it owns.
    let mut members: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); top]; comps.count];
    for v in &g.vertices {
        members[comps.labels[v.index]][v.length].push(local[v.index]);
    }
    let mut comp_eta = vec![0; comps.count];
    for v in &g.vertices {
        comp_eta[comps.labels[v.index]] = v.eta;
    }
    let mut entries_by: Vec<Vec<Vec<(usize, usize, i64)>>> = vec![vec![Vec::new(); top]; comps.count];
    for (deg, d) in complex.differentials.iter().enumerate() {
        for &(r, c, v) in &d.entries {
            let comp = comps.labels[complex.bases[deg][c]];
            entries_by[comp][deg].push((r, c, v));
        }
    }

    let mut degrees = vec![CohomologyGroup::default(); top];
    let mut mod2 = vec![0; top];
    let mut torsion_raw: Vec<Vec<BigInt>> = vec![Vec::new(); top];
    for c in 0..comps.count {
        let mut rank = vec![0; top];
        let mut rank2 = vec![0; top];
        for deg in 0..top.saturating_sub(1) {
            let entries = &entries_by[c][deg];
            if entries.is_empty() {
                continue;
            }
            let row_pos: HashMap<usize, usize> = members[c][deg + 1].iter().enumerate().map(|(i, &r)| (r, i)).collect();
            let col_pos: HashMap<usize, usize> = members[c][deg].iter().enumerate().map(|(i, &r)| (r, i)).collect();
            let mut dense = vec![vec![0i64; members[c][deg].len()]; members[c][deg + 1].len()];
            for &(r, col, v) in entries {
                dense[row_pos[&r]][col_pos[&col]] = v;
            }
            let inv = smith_invariants(&dense);
            rank[deg] = inv.len();
            rank2[deg] = rank_f2(&dense);
            torsion_raw[deg + 1].extend(inv.into_iter().filter(|d| !d.is_one()));
        }
        for deg in 0..top {
            let dim = members[c][deg].len();
            let before = if deg > 0 { rank[deg - 1] } else { 0 };
            let before2 = if deg > 0 { rank2[deg - 1] } else { 0 };
            let free = dim - rank[deg] - before;
            mod2[deg] += dim - rank2[deg] - before2;
            if free > 0 {
                degrees[deg].free_rank += free;
                *degrees[deg].free_by_eta.entry(comp_eta[c]).or_insert(0) += free;
            }
        }
    }
    let mut warnings = Vec::new();
    for (deg, raw) in torsion_raw.into_iter().enumerate() {
        degrees[deg].torsion = elementary_divisors(raw);
        for d in &degrees[deg].torsion {
            if *d != BigInt::from(2) {
                warnings.push(format!("H^{deg} has torsion Z/{d}"));
            }
        }
    }
    CohomologyGroups { lie_type: g.lie_type, eps: g.eps, degrees, mod2, warnings }
}

/// Graph, diamond scan, sign solution and cohomology for one sign vector.
#[derive(Clone, Debug)]
pub struct Computation {
    pub graph: IncidenceGraph,
    pub diamonds: DiamondReport,
    pub complex: ChainComplex,
    pub groups: CohomologyGroups,
}

pub fn compute(group: &WeylGroup, covers: &[(usize, usize)], eps: SignVector, gauge: Gauge) -> Result<Computation> {
    let graph = build_graph_with_covers(group, eps, covers)?;
    let diamonds = diamond_check(&graph, covers)?;
    let complex = assign_signs(&graph, &diamonds, gauge)?;
    let mut groups = cohomology_of(&graph, &complex);
    if complex.free_bits > 0 {
        groups.warnings.push(format!(
            "sign equations leave {} free bit(s) beyond the gauge; the groups may depend on the solution chosen",
            complex.free_bits
        ));
    }
    Ok(Computation { graph, diamonds, complex, groups })
}

pub fn integral_cohomology_with_cap(t: LieType, eps: SignVector, cap: usize) -> Result<CohomologyGroups> {
    eps.check_rank(t.rank())?;
    let group = WeylGroup::enumerate(t, cap)?;
    let covers = bruhat_covers(&group);
    Ok(compute(&group, &covers, eps, Gauge::Forward)?.groups)
}

pub fn integral_cohomology(t: LieType, eps: SignVector) -> Result<CohomologyGroups> {
    integral_cohomology_with_cap(t, eps, DEFAULT_CAP)
}

pub fn rational_betti(t: LieType, eps: SignVector) -> Result<Vec<usize>> {
    Ok(integral_cohomology(t, eps)?.betti())
}

pub fn mod2_dims(t: LieType, eps: SignVector) -> Result<Vec<usize>> {
    Ok(integral_cohomology(t, eps)?.mod2)
}
