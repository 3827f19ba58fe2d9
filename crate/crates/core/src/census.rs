//! Isotropic 3-planes and lines of a skew net over a small prime field.
//!
//! The enumeration runs on plain `u64` residues and only converts the
//! surviving subspaces back into exact matrices.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, RowSpace};
use crate::netquad::NetOfQuadrics;
use crate::poly::MultiPoly;
use crate::random;
use crate::scalar::{Field, Scalar};
use crate::skewfano::{isotropic, line_detect, LineInX, SkewNet, SubspaceE};

/// Largest prime the point enumeration accepts.
pub const MAX_PRIME: u64 = 13;

/// Entrywise reduction to `F_p`.
pub trait ReduceMod: Sized {
    fn reduce_mod(&self, p: u64) -> Result<Self>;
}

impl ReduceMod for SkewNet {
    fn reduce_mod(&self, p: u64) -> Result<Self> {
        SkewNet::reduce_mod(self, p)
    }
}

impl ReduceMod for MultiPoly {
    fn reduce_mod(&self, p: u64) -> Result<Self> {
        MultiPoly::reduce_mod(self, p)
    }
}

impl ReduceMod for NetOfQuadrics {
    fn reduce_mod(&self, p: u64) -> Result<Self> {
        NetOfQuadrics::reduce_mod(self, p)
    }
}

/// Number of `k`-dimensional subspaces of `F_p^n`.
pub fn gaussian_binomial(n: u32, k: u32, p: u64) -> u64 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let p = p as u128;
    for i in 0..k {
        num *= p.pow(n - i) - 1;
        den *= p.pow(i + 1) - 1;
    }
    (num / den) as u64
}

type Vec7 = [u64; 7];
type Forms = [[[u64; 7]; 7]; 3];
/// RREF rows of a 3-plane, flattened.
type Key = [u64; 21];

#[derive(Clone, Copy)]
struct Fp(u64);

impl Fp {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }
    fn inv(self, a: u64) -> u64 {
        let (mut r, mut b, mut e) = (1, a, self.0 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    fn form(self, m: &[[u64; 7]; 7], u: &[u64], v: &[u64]) -> u64 {
        let mut acc = 0;
        for i in 0..7 {
            if u[i] == 0 {
                continue;
            }
            let mut row = 0;
            for j in 0..7 {
                row += m[i][j] * v[j];
            }
            acc += u[i] * (row % self.0);
        }
        acc % self.0
    }

    /// In-place RREF of `rows` (each of length `n`); returns the pivot columns.
    fn rref(self, rows: &mut [Vec<u64>], n: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
                continue;
            };
            rows.swap(r, k);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for k in 0..rows.len() {
                if k != r && rows[k][c] != 0 {
                    let f = rows[k][c];
                    for j in 0..n {
                        let t = self.mul(f, rows[r][j]);
                        rows[k][j] = self.sub(rows[k][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        pivots
    }

    /// Basis of the right kernel of `rows` (length-`n` vectors).
    fn kernel(self, rows: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
        let mut m = rows.to_vec();
        let pivots = self.rref(&mut m, n);
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0; n];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(0, m[r][free]);
                }
                v
            })
            .collect()
    }

    fn key(self, a: &[u64], b: &[u64], c: &[u64]) -> Option<Key> {
        let mut m = vec![a.to_vec(), b.to_vec(), c.to_vec()];
        if self.rref(&mut m, 7).len() != 3 {
            return None;
        }
        let mut k = [0; 21];
        for r in 0..3 {
            k[7 * r..7 * r + 7].copy_from_slice(&m[r]);
        }
        Some(k)
    }

    fn isotropic(self, eta: &Forms, rows: &[&[u64]]) -> bool {
        for i in 0..rows.len() {
            for j in (i + 1)..rows.len() {
                if eta.iter().any(|m| self.form(m, rows[i], rows[j]) != 0) {
                    return false;
                }
            }
        }
        true
    }
}

/// Calls `f` on every RREF `r x n` matrix of rank `r` over `F_p`.
fn for_each_rref(r: usize, n: usize, p: u64, pivots: &[usize], f: &mut dyn FnMut(&[Vec<u64>])) {
    let mut free: Vec<(usize, usize)> = Vec::new();
    for (i, &pc) in pivots.iter().enumerate() {
        for c in (pc + 1)..n {
            if !pivots.contains(&c) {
                free.push((i, c));
            }
        }
    }
    let mut m = vec![vec![0u64; n]; r];
    for (i, &pc) in pivots.iter().enumerate() {
        m[i][pc] = 1;
    }
    let mut digits = vec![0u64; free.len()];
    loop {
        for (d, &(i, c)) in digits.iter().zip(&free) {
            m[i][c] = *d;
        }
        f(&m);
        let mut k = 0;
        while k < digits.len() {
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == digits.len() {
            return;
        }
    }
}

fn pivot_sets(n: usize, r: usize) -> Vec<Vec<usize>> {
    crate::polymatrix::subsets(n, r)
}

fn residue_forms(eta: &SkewNet) -> Result<(u64, Forms)> {
    let Field::Prime(p) = eta.field() else {
        return Err(Error::EnumerationGuard(
            "census needs a skew net over a prime field; reduce it first".into(),
        ));
    };
    let mut out = [[[0u64; 7]; 7]; 3];
    for (k, m) in eta.forms().iter().enumerate() {
        for i in 0..7 {
            for j in 0..7 {
                out[k][i][j] = match m.get(i, j) {
                    Scalar::Mod { value, .. } => *value,
                    Scalar::Rational(_) => unreachable!("prime field"),
                };
            }
        }
    }
    Ok((p, out))
}

fn to_subspaces(p: u64, keys: BTreeSet<Key>) -> Vec<SubspaceE> {
    let field = Field::Prime(p);
    keys.into_iter()
        .map(|k| {
            let rows = (0..3)
                .map(|r| k[7 * r..7 * r + 7].iter().map(|&v| field.int(v as i64)).collect())
                .collect();
            SubspaceE::new(&Matrix::from_rows(field, 7, rows)).expect("rank 3 by construction")
        })
        .collect()
}

/// All isotropic 3-planes through `p1`.
///
/// With `K = {v : eta(p1, v) = 0}`, every such plane is `<p1> + E'` for a
/// 2-plane `E'` in `K / <p1>` killed by the induced forms. When that quotient
/// is 3-dimensional a 2-plane is the same as a bivector, and the three forms
/// give three linear conditions on it.
fn planes_through(fp: Fp, eta: &Forms, p1: &Vec7, out: &mut Vec<Key>) {
    let conds: Vec<Vec<u64>> = eta
        .iter()
        .map(|m| (0..7).map(|j| fp.form(m, p1, &unit(j))).collect())
        .collect();
    let kernel = fp.kernel(&conds, 7);
    // Basis of K modulo p1.
    let mut span = vec![p1.to_vec()];
    let mut kbar: Vec<Vec<u64>> = Vec::new();
    for v in kernel {
        let mut trial = span.clone();
        trial.push(v.clone());
        if fp.rref(&mut trial, 7).len() == span.len() + 1 {
            span.push(v.clone());
            kbar.push(v);
        }
    }
    let m = kbar.len();
    if m < 2 {
        return;
    }
    let xi = |i: usize, j: usize| -> [u64; 3] { [0, 1, 2].map(|k| fp.form(&eta[k], &kbar[i], &kbar[j])) };
    let lift = |c: &[u64]| -> Vec<u64> {
        (0..7)
            .map(|t| (0..m).fold(0, |acc, i| fp.add(acc, fp.mul(c[i], kbar[i][t]))))
            .collect()
    };
    let mut push = |a: &[u64], b: &[u64]| {
        if let Some(k) = fp.key(p1, &lift(a), &lift(b)) {
            out.push(k);
        }
    };
    if m == 3 {
        let (x01, x02, x12) = (xi(0, 1), xi(0, 2), xi(1, 2));
        let system: Vec<Vec<u64>> = (0..3).map(|k| vec![x01[k], x02[k], x12[k]]).collect();
        let sols = fp.kernel(&system, 3);
        if sols.is_empty() {
            return;
        }
        // Every projective point of the solution space.
        let d = sols.len();
        for pv in pivot_sets(d, 1) {
            for_each_rref(1, d, fp.0, &pv, &mut |c| {
                let w: Vec<u64> = (0..3)
                    .map(|t| (0..d).fold(0, |acc, i| fp.add(acc, fp.mul(c[0][i], sols[i][t]))))
                    .collect();
                // The plane of the bivector w is the kernel of c -> w ^ c.
                let functional = vec![w[2], fp.sub(0, w[1]), w[0]];
                let plane = fp.kernel(&[functional], 3);
                push(&plane[0], &plane[1]);
            });
        }
    } else {
        for pv in pivot_sets(m, 2) {
            for_each_rref(2, m, fp.0, &pv, &mut |c| {
                let ok = (0..3).all(|k| {
                    let mut acc = 0;
                    for i in 0..m {
                        for j in 0..m {
                            let t = fp.mul(fp.mul(c[0][i], c[1][j]), fp.form(&eta[k], &kbar[i], &kbar[j]));
                            acc = fp.add(acc, t);
                        }
                    }
                    acc == 0
                });
                if ok {
                    push(&c[0], &c[1]);
                }
            });
        }
    }
}

fn unit(j: usize) -> Vec7 {
    let mut v = [0; 7];
    v[j] = 1;
    v
}

fn guard(p: u64, eta: &Forms) -> Result<()> {
    if p > MAX_PRIME {
        return Err(Error::EnumerationGuard(format!(
            "p = {p} exceeds the enumeration limit {MAX_PRIME}"
        )));
    }
    if p > 2 && eta.iter().flatten().flatten().all(|&v| v == 0) {
        return Err(Error::EnumerationGuard(format!(
            "zero skew net: every 3-plane over GF({p}) is isotropic"
        )));
    }
    Ok(())
}

/// Isotropic 3-planes over `F_p`, in canonical order.
pub fn enumerate_points(eta: &SkewNet) -> Result<Vec<SubspaceE>> {
    let (p, forms) = residue_forms(eta)?;
    guard(p, &forms)?;
    let fp = Fp(p);
    // Points of P^6 grouped by the position of their leading 1.
    let tasks: Vec<(usize, u64)> = (0..7)
        .flat_map(|lead| (0..p.pow(6 - lead as u32)).map(move |t| (lead, t)))
        .collect();
    let keys: BTreeSet<Key> = tasks
        .par_iter()
        .fold(Vec::new, |mut acc, &(lead, mut t)| {
            let mut p1 = [0u64; 7];
            p1[lead] = 1;
            for c in (lead + 1)..7 {
                p1[c] = t % p;
                t /= p;
            }
            planes_through(fp, &forms, &p1, &mut acc);
            acc
        })
        .map(|v| v.into_iter().collect::<BTreeSet<Key>>())
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(to_subspaces(p, keys))
}

/// Result of the exhaustive scan over canonical 3x7 matrices.
#[derive(Clone, Debug)]
pub struct BruteScan {
    pub visited: u64,
    pub points: Vec<SubspaceE>,
}

/// Checks every RREF 3x7 matrix over `F_2` or `F_3`.
pub fn brute_points(eta: &SkewNet) -> Result<BruteScan> {
    let (p, forms) = residue_forms(eta)?;
    if p > 3 {
        return Err(Error::EnumerationGuard(format!(
            "brute force only for p in {{2, 3}}, got {p}"
        )));
    }
    let fp = Fp(p);
    let (visited, keys) = pivot_sets(7, 3)
        .par_iter()
        .map(|pv| {
            let mut n = 0u64;
            let mut found = BTreeSet::new();
            for_each_rref(3, 7, p, pv, &mut |m| {
                n += 1;
                if fp.isotropic(&forms, &[&m[0], &m[1], &m[2]]) {
                    let mut k = [0; 21];
                    for r in 0..3 {
                        k[7 * r..7 * r + 7].copy_from_slice(&m[r]);
                    }
                    found.insert(k);
                }
            });
            (n, found)
        })
        .reduce(
            || (0, BTreeSet::new()),
            |(n1, mut a), (n2, b)| {
                a.extend(b);
                (n1 + n2, a)
            },
        );
    Ok(BruteScan {
        visited,
        points: to_subspaces(p, keys),
    })
}

fn residues(e: &SubspaceE) -> Vec<Vec<u64>> {
    (0..3)
        .map(|r| {
            e.rows()
                .row(r)
                .iter()
                .map(|s| match s {
                    Scalar::Mod { value, .. } => *value,
                    Scalar::Rational(_) => unreachable!("prime field"),
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct LineSample {
    pub lines: Vec<LineInX>,
    pub pairs_tested: usize,
    /// The budget ran out before all pairs were tried.
    pub truncated: bool,
}

/// Tests pairs `(points[i], points[j])`, `i < j`, in order until `budget`
/// pairs have been tried, keeping one line per pencil span.
pub fn sample_lines(eta: &SkewNet, points: &[SubspaceE], budget: usize) -> Result<LineSample> {
    let total = points.len() * points.len().saturating_sub(1) / 2;
    let mut sample = LineSample {
        lines: Vec::new(),
        pairs_tested: 0,
        truncated: total > budget,
    };
    if points.is_empty() || budget == 0 {
        return Ok(sample);
    }
    let (p, _) = residue_forms(eta)?;
    let fp = Fp(p);
    let rows: Vec<Vec<Vec<u64>>> = points.iter().map(residues).collect();
    let mut spans: Vec<RowSpace> = Vec::new();
    'outer: for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if sample.pairs_tested == budget {
                break 'outer;
            }
            sample.pairs_tested += 1;
            let mut stacked: Vec<Vec<u64>> = rows[i].iter().chain(&rows[j]).cloned().collect();
            if fp.rref(&mut stacked, 7).len() != 4 {
                continue;
            }
            if let Some(line) = line_detect(eta, &points[i], &points[j])? {
                let span = line.span();
                if !spans.contains(&span) {
                    spans.push(span);
                    sample.lines.push(line);
                }
            }
        }
    }
    Ok(sample)
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub seed: u64,
    pub pair_budget: usize,
    pub sample_size: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            seed: 0,
            pair_budget: 200_000,
            sample_size: 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub p: u64,
    pub point_count: usize,
    pub sample_points: Vec<SubspaceE>,
    pub line_count_sampled: usize,
    pub sample_lines: Vec<LineInX>,
    pub pairs_tested: usize,
    pub truncated: bool,
    /// Wall-clock time; the only field that varies between identical runs.
    pub elapsed_ms: u128,
}

/// Points, then lines among a seeded shuffle of the points.
pub fn census(eta: &SkewNet, p: u64, opts: &CensusOptions) -> Result<CensusReport> {
    let start = Instant::now();
    let eta = match eta.field() {
        Field::Rational => eta.reduce_mod(p)?,
        Field::Prime(q) if q == p => eta.clone(),
        Field::Prime(_) => return Err(Error::FieldMismatch),
    };
    let points = enumerate_points(&eta)?;
    let mut order = points.clone();
    order.shuffle(&mut random::rng(opts.seed));
    let lines = sample_lines(&eta, &order, opts.pair_budget)?;
    Ok(CensusReport {
        p,
        point_count: points.len(),
        sample_points: order.iter().take(opts.sample_size).cloned().collect(),
        line_count_sampled: lines.lines.len(),
        sample_lines: lines.lines.into_iter().take(opts.sample_size).collect(),
        pairs_tested: lines.pairs_tested,
        truncated: lines.truncated,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Whether every listed subspace is isotropic, checked with exact matrices.
pub fn all_isotropic(eta: &SkewNet, points: &[SubspaceE]) -> bool {
    points.iter().all(|e| isotropic(eta, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grassmannian_counts() {
        assert_eq!(gaussian_binomial(7, 3, 2), 11811);
        assert_eq!(gaussian_binomial(7, 3, 3), 925771);
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
    }

    #[test]
    fn zero_net_brute_visits_everything() {
        let scan = brute_points(&SkewNet::zero(Field::Prime(2))).unwrap();
        assert_eq!(scan.visited, 11811);
        assert_eq!(scan.points.len(), 11811);
        let smart = enumerate_points(&SkewNet::zero(Field::Prime(2))).unwrap();
        assert_eq!(smart.len(), 11811);
    }

    #[test]
    fn guards() {
        assert!(enumerate_points(&SkewNet::zero(Field::Prime(3))).is_err());
        assert!(enumerate_points(&SkewNet::zero(Field::Prime(17))).is_err());
        assert!(brute_points(&SkewNet::zero(Field::Prime(5))).is_err());
        assert!(enumerate_points(&SkewNet::zero(Field::Rational)).is_err());
    }

    #[test]
    fn empty_and_zero_budget() {
        let eta = SkewNet::zero(Field::Prime(2));
        let s = sample_lines(&eta, &[], 10).unwrap();
        assert!(s.lines.is_empty() && !s.truncated);
        let pts = enumerate_points(&eta).unwrap();
        let s = sample_lines(&eta, &pts[..3], 0).unwrap();
        assert!(s.lines.is_empty() && s.truncated && s.pairs_tested == 0);
    }

    #[test]
    fn fast_kernel() {
        let fp = Fp(5);
        let k = fp.kernel(&[vec![1, 2, 3]], 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 5, 0);
        }
    }
}
