//! Graded minimal free resolutions by degreewise linear algebra, and the
//! duality data of the length-4 resolutions attached to nets of quadrics.

use std::collections::BTreeMap;
use std::fmt;

use crate::apolar::GradedIdeal;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, RowSpace};
use crate::poly::{Monomial, MonomialBasis, MultiPoly, Ring};
use crate::polymatrix::PolyMatrix;
use crate::scalar::Scalar;

/// Monomial bases by degree, built lazily.
struct Bases {
    nvars: usize,
    by_degree: Vec<MonomialBasis>,
}

impl Bases {
    fn new(nvars: usize) -> Bases {
        Bases {
            nvars,
            by_degree: Vec::new(),
        }
    }

    fn get(&mut self, d: u32) -> &MonomialBasis {
        while self.by_degree.len() <= d as usize {
            let k = self.by_degree.len() as u32;
            self.by_degree.push(MonomialBasis::new(self.nvars, k));
        }
        &self.by_degree[d as usize]
    }
}

/// `sum_j R(-a_j)`; elements of degree `t` are flattened coefficient vectors,
/// component by component.
#[derive(Clone, Debug)]
struct Free {
    ring: Ring,
    degs: Vec<u32>,
}

impl Free {
    fn dim(&self, t: u32) -> usize {
        self.degs
            .iter()
            .filter(|&&a| a <= t)
            .map(|&a| self.ring.dim(t - a))
            .sum()
    }

    fn to_vec(&self, elem: &[MultiPoly], t: u32, bases: &mut Bases) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.dim(t));
        for (a, p) in self.degs.iter().zip(elem) {
            if *a > t {
                continue;
            }
            let b = bases.get(t - a);
            if p.is_zero() {
                out.extend(std::iter::repeat_n(self.ring.field.zero(), b.len()));
            } else {
                out.extend(p.to_vector(b));
            }
        }
        out
    }

    fn unflatten(&self, v: &[Scalar], t: u32, bases: &mut Bases) -> Vec<MultiPoly> {
        let mut out = Vec::with_capacity(self.degs.len());
        let mut at = 0;
        for &a in &self.degs {
            if a > t {
                out.push(MultiPoly::zero(self.ring, 0));
                continue;
            }
            let b = bases.get(t - a);
            let n = b.len();
            out.push(MultiPoly::from_vector(self.ring, b, &v[at..at + n]));
            at += n;
        }
        out
    }
}

/// Graded Betti numbers `(homological degree, internal degree) -> rank`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, u32), usize>,
}

impl BettiTable {
    /// Nonzero entries as `(i, j, rank)` in increasing order.
    pub fn triples(&self) -> Vec<(usize, u32, usize)> {
        self.entries
            .iter()
            .filter(|(_, &r)| r > 0)
            .map(|(&(i, j), &r)| (i, j, r))
            .collect()
    }

    pub fn get(&self, i: usize, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .triples()
            .iter()
            .map(|(i, j, r)| format!("({i},{j},{r})"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    ring: Ring,
    /// Generator degrees of `F_0, F_1, ...`.
    degrees: Vec<Vec<u32>>,
    /// `maps[i]` is `d_{i+1}: F_{i+1} -> F_i`; column `c` is the image of generator `c`.
    maps: Vec<PolyMatrix>,
    cap: u32,
    truncated: bool,
    quotient_hf: Vec<usize>,
}

impl Resolution {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Set when the degree cap cut the computation short of the known bound.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn degrees(&self, i: usize) -> &[u32] {
        self.degrees.get(i).map_or(&[], Vec::as_slice)
    }

    /// `d_i: F_i -> F_{i-1}` for `i >= 1`.
    pub fn map(&self, i: usize) -> &PolyMatrix {
        &self.maps[i - 1]
    }

    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for (i, degs) in self.degrees.iter().enumerate() {
            for &d in degs {
                *t.entries.entry((i, d)).or_insert(0) += 1;
            }
        }
        t
    }

    /// `d_i * d_{i+1} = 0` for all consecutive pairs.
    pub fn composes_to_zero(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// No nonzero constant entries in any differential.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| {
            (0..m.rows()).all(|r| {
                (0..m.cols()).all(|c| {
                    let e = m.get(r, c);
                    e.is_zero() || e.degree() > 0
                })
            })
        })
    }

    /// Entry degrees agree with the generator degrees on both sides.
    pub fn degrees_consistent(&self) -> bool {
        self.maps.iter().enumerate().all(|(i, m)| {
            (0..m.rows()).all(|r| {
                (0..m.cols()).all(|c| {
                    let e = m.get(r, c);
                    e.is_zero() || e.degree() + self.degrees[i][r] == self.degrees[i + 1][c]
                })
            })
        })
    }

    /// Alternating Betti sums against the quotient Hilbert function, for
    /// every degree the resolution is complete in.
    pub fn euler_matches_hilbert(&self) -> bool {
        let bt = self.betti();
        let top = if self.truncated {
            self.cap.min(self.quotient_hf.len() as u32 - 1)
        } else {
            self.cap
        };
        (0..=top).all(|t| {
            let mut chi: i64 = 0;
            for ((i, j), r) in &bt.entries {
                if *j <= t {
                    let term = (*r * self.ring.dim(t - j)) as i64;
                    chi += if i % 2 == 0 { term } else { -term };
                }
            }
            let hf = self.quotient_hf.get(t as usize).copied().unwrap_or(0) as i64;
            chi == hf
        })
    }
}

/// Minimal free resolution of `R/I` through internal degree `cap`.
///
/// When `R/I` is Artinian with socle degree `s`, `beta_{i,j}` vanishes for
/// `j > s + i`, so each step only needs degrees up to that bound; the result is
/// flagged truncated if `cap` falls below it. Non-Artinian inputs are
/// resolved through `cap` and always flagged.
pub fn min_res(ideal: &GradedIdeal, cap: u32) -> Resolution {
    let ring = ideal.ring();
    let field = ring.field;
    let nvars = ring.nvars;
    let hf = ideal.quotient_hilbert_function();
    let socle = match hf.iter().position(|&h| h == 0) {
        Some(z) if z > 0 => Some(z as u32 - 1),
        _ => None,
    };
    let mut truncated = socle.is_none();
    let mut bases = Bases::new(nvars);

    let mut degrees: Vec<Vec<u32>> = vec![vec![0]];
    let mut maps: Vec<PolyMatrix> = Vec::new();
    let mut prev_map: Option<(Free, Free, PolyMatrix)> = None;

    for step in 0..nvars {
        let wanted = socle.map_or(cap, |s| s + step as u32 + 1);
        if wanted > cap {
            truncated = true;
        }
        let tmax = wanted.min(cap);
        let src = Free {
            ring,
            degs: degrees[step].clone(),
        };
        let mut new_cols: Vec<(u32, Vec<MultiPoly>)> = Vec::new();
        let mut prev_kernel: Option<Matrix> = None;
        let tmin = src.degs.iter().copied().min().unwrap_or(0);
        for t in tmin..=tmax {
            // K_t: the module whose minimal generators become F_{step+1}.
            let kernel: Matrix = match &prev_map {
                None => {
                    if t > ideal.cap() {
                        break;
                    }
                    ideal.piece(t).basis.clone()
                }
                Some((from, to, d)) => {
                    let rows = map_rows(from, to, d, t, &mut bases);
                    Matrix::from_rows(field, to.dim(t), rows).left_kernel()
                }
            };
            let dim_t = src.dim(t);
            let lower_rows: Vec<Vec<Scalar>> = match &prev_kernel {
                Some(k) if t > tmin => {
                    let mut rows = Vec::new();
                    for r in 0..k.rows() {
                        let elem = src.unflatten(k.row(r), t - 1, &mut bases);
                        for v in 0..nvars {
                            let shifted: Vec<MultiPoly> =
                                elem.iter().map(|p| p.mul_monomial(&Monomial::var(v))).collect();
                            rows.push(src.to_vec(&shifted, t, &mut bases));
                        }
                    }
                    rows
                }
                _ => Vec::new(),
            };
            let lower = RowSpace::from_vectors(field, dim_t, lower_rows);
            let comp = RowSpace::new(&kernel).complement_of(&lower);
            for r in 0..comp.rows() {
                new_cols.push((t, src.unflatten(comp.row(r), t, &mut bases)));
            }
            prev_kernel = Some(kernel);
        }
        if new_cols.is_empty() {
            break;
        }
        let mut entries = vec![Vec::with_capacity(new_cols.len()); src.degs.len()];
        for (_, col) in &new_cols {
            for (r, p) in col.iter().enumerate() {
                entries[r].push(p.clone());
            }
        }
        let d = PolyMatrix::new(ring, entries);
        let tgt = Free {
            ring,
            degs: new_cols.iter().map(|(t, _)| *t).collect(),
        };
        degrees.push(tgt.degs.clone());
        maps.push(d.clone());
        prev_map = Some((tgt, src, d));
    }

    Resolution {
        ring,
        degrees,
        maps,
        cap,
        truncated,
        quotient_hf: hf,
    }
}

/// Rows: images in `to` of the degree-`t` basis of `from` under `d`.
fn map_rows(from: &Free, to: &Free, d: &PolyMatrix, t: u32, bases: &mut Bases) -> Vec<Vec<Scalar>> {
    let mut rows = Vec::with_capacity(from.dim(t));
    for (c, &a) in from.degs.iter().enumerate() {
        if a > t {
            continue;
        }
        let monos = bases.get(t - a).monomials.clone();
        for m in &monos {
            let img: Vec<MultiPoly> = (0..d.rows()).map(|r| d.get(r, c).mul_monomial(m)).collect();
            rows.push(to.to_vec(&img, t, bases));
        }
    }
    rows
}

/// RREF basis of the linear syzygies `(l_1..l_k)` with `sum l_i g_i = 0`, for
/// forms `g_i` of one common degree.
pub fn linear_syzygies(gens: &[MultiPoly]) -> Vec<Vec<MultiPoly>> {
    if gens.is_empty() {
        return vec![];
    }
    let ring = gens[0].ring();
    let e = gens[0].degree();
    let target = ring.monomials(e + 1);
    let mut rows = Vec::new();
    for g in gens {
        assert_eq!(g.degree(), e, "generators of mixed degree");
        for v in 0..ring.nvars {
            rows.push(g.mul_monomial(&Monomial::var(v)).to_vector(&target));
        }
    }
    let k = Matrix::from_rows(ring.field, target.len(), rows).left_kernel();
    let lin = ring.monomials(1);
    (0..k.rows())
        .map(|r| {
            let row = k.row(r);
            (0..gens.len())
                .map(|i| MultiPoly::from_vector(ring, &lin, &row[i * ring.nvars..(i + 1) * ring.nvars]))
                .collect()
        })
        .collect()
}

/// Expected Betti table of `A^q` for a general net of quadrics in four variables.
pub const NET_BETTI: [(usize, u32, usize); 6] = [(0, 0, 1), (1, 2, 7), (2, 3, 8), (2, 4, 3), (3, 5, 8), (4, 6, 3)];

/// Checks the net-of-quadrics shape and returns the two 3x8 / 8x3 blocks
/// `(psi1, psi2)`.
pub fn net_blocks(res: &Resolution) -> Result<(PolyMatrix, PolyMatrix)> {
    let got = res.betti().triples();
    if got != NET_BETTI || res.ring().nvars != 4 {
        return Err(Error::NonMinimalResolution(format!(
            "expected Betti table {:?}, got {:?}",
            NET_BETTI, got
        )));
    }
    let d3 = res.map(3);
    let psi1 = d3.submatrix(&[8, 9, 10], &(0..8).collect::<Vec<_>>());
    Ok((psi1, res.map(4).clone()))
}

/// The skew self-duality `psi2 = sigma * psi1^T * tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityData {
    pub sigma: Matrix,
    pub tau: Matrix,
    /// Dimension of the solution space of the linear system; 1 for general nets.
    pub solution_dim: usize,
}

/// Solves `psi2 * rho = sigma * psi1^T` for scalar `sigma` (8x8) and `rho`
/// (3x3), then sets `tau = rho^{-1}`. A general `sigma` is tried first; if
/// that space is not a line, `sigma` is constrained to be skew.
pub fn tor_duality(res: &Resolution) -> Result<DualityData> {
    let (psi1, psi2) = net_blocks(res)?;
    let field = res.ring().field;
    let general = solve_duality(&psi1, &psi2, false);
    let (sol, dim) = if general.rows() == 1 {
        (general, 1)
    } else {
        let skew = solve_duality(&psi1, &psi2, true);
        let n = skew.rows();
        (skew, n)
    };
    if dim != 1 {
        return Err(Error::non_general(
            "tor_duality",
            format!("duality solution space has dimension {dim}"),
        ));
    }
    let v = sol.row(0);
    let mut sigma = Matrix::zeros(field, 8, 8);
    for i in 0..8 {
        for j in 0..8 {
            sigma.set(i, j, v[i * 8 + j].clone());
        }
    }
    let mut rho = Matrix::zeros(field, 3, 3);
    for i in 0..3 {
        for j in 0..3 {
            rho.set(i, j, v[64 + i * 3 + j].clone());
        }
    }
    if !sigma.is_skew() {
        return Err(Error::non_general("tor_duality", "sigma is not skew"));
    }
    let tau = rho
        .inverse()
        .ok_or_else(|| Error::non_general("tor_duality", "tau is not invertible"))?;
    let data = DualityData {
        sigma,
        tau,
        solution_dim: dim,
    };
    if !duality_holds(&psi1, &psi2, &data) {
        return Err(Error::non_general("tor_duality", "relation fails after solve"));
    }
    Ok(data)
}

/// Kernel of the linear system in the unknowns `(sigma, rho)`, flattened
/// row-major; with `skew` the sigma unknowns are parametrized by `i < j`.
fn solve_duality(psi1: &PolyMatrix, psi2: &PolyMatrix, skew: bool) -> Matrix {
    let ring = psi1.ring();
    let field = ring.field;
    let lin = ring.monomials(1);
    let nv = lin.len();
    let coef = |p: &MultiPoly| -> Vec<Scalar> {
        if p.is_zero() {
            vec![field.zero(); nv]
        } else {
            p.to_vector(&lin)
        }
    };
    let pairs: Vec<(usize, usize)> = (0..8).flat_map(|i| (i + 1..8).map(move |j| (i, j))).collect();
    let n_sigma = if skew { pairs.len() } else { 64 };
    let n = n_sigma + 9;
    let mut rows = Vec::new();
    // (psi2 rho)_{ik} - sum_j sigma_{ij} psi1_{kj}, one equation per monomial.
    for i in 0..8 {
        for k in 0..3 {
            for v in 0..nv {
                let mut row = vec![field.zero(); n];
                for l in 0..3 {
                    row[n_sigma + l * 3 + k] = coef(psi2.get(i, l))[v].clone();
                }
                for j in 0..8 {
                    let c = coef(psi1.get(k, j))[v].clone();
                    if c.is_zero() {
                        continue;
                    }
                    if skew {
                        if i == j {
                            continue;
                        }
                        let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
                        let idx = pairs.iter().position(|&p| p == (a, b)).unwrap();
                        row[idx] = &row[idx] - &(&c * &field.int(s));
                    } else {
                        row[i * 8 + j] = &row[i * 8 + j] - &c;
                    }
                }
                rows.push(row);
            }
        }
    }
    let k = Matrix::from_rows(field, n, rows).kernel();
    if !skew {
        return k;
    }
    // Expand skew parameters back to a full 8x8 block.
    let expanded: Vec<Vec<Scalar>> = (0..k.rows())
        .map(|r| {
            let src = k.row(r);
            let mut out = vec![field.zero(); 73];
            for (idx, &(a, b)) in pairs.iter().enumerate() {
                out[a * 8 + b] = src[idx].clone();
                out[b * 8 + a] = -&src[idx];
            }
            out[64..].clone_from_slice(&src[n_sigma..]);
            out
        })
        .collect();
    Matrix::from_rows(field, 73, expanded)
}

/// `psi2 == sigma * psi1^T * tau` as polynomial matrices.
pub fn duality_holds(psi1: &PolyMatrix, psi2: &PolyMatrix, data: &DualityData) -> bool {
    let ring = psi1.ring();
    let lift = |m: &Matrix| {
        PolyMatrix::new(
            ring,
            m.row_vecs()
                .into_iter()
                .map(|r| r.into_iter().map(|c| MultiPoly::constant(ring, c)).collect())
                .collect(),
        )
    };
    let rhs = lift(&data.sigma).mul(&psi1.transpose()).mul(&lift(&data.tau));
    (0..8).all(|i| (0..3).all(|k| rhs.get(i, k).sub(psi2.get(i, k)).is_zero()))
}

/// The degree -6 / degree -4 structure of `Ext^4(A^q, R)`.
#[derive(Clone, Debug)]
pub struct Ext4Data {
    /// Dimension of the degree -4 piece of the cokernel (1 for general nets).
    pub top_dim: usize,
    /// Degree-2 monomials spanning a complement of `(q^perp)_2`.
    pub a2_basis: Vec<Monomial>,
    /// `pairing[k][j]`: the degree -4 class of `a2_basis[k]` times generator `j`.
    pub pairing: Matrix,
}

/// Computes the cokernel of `d_4^T` in degrees -6 and -4 and the induced
/// pairing between `A_2` and the three generators.
pub fn ext4_identification(res: &Resolution, v_q: &RowSpace) -> Result<Ext4Data> {
    net_blocks(res)?;
    let ring = res.ring();
    let field = ring.field;
    let d4 = res.map(4);
    let quad = ring.monomials(2);
    let lin = ring.monomials(1);
    let nq = quad.len();
    // Degree -4 piece of 3R(6) is R_2^3 (index j*nq + monomial); the image of
    // 8R(5) is spanned by l * (row k of d4) for l in R_1.
    let mut image = Vec::new();
    for k in 0..d4.rows() {
        for l in &lin.monomials {
            let mut v = vec![field.zero(); 3 * nq];
            for j in 0..3 {
                let p = d4.get(k, j);
                if p.is_zero() {
                    continue;
                }
                let pl = p.mul_monomial(l).to_vector(&quad);
                v[j * nq..(j + 1) * nq].clone_from_slice(&pl);
            }
            image.push(v);
        }
    }
    let m = Matrix::from_rows(field, 3 * nq, image);
    // Functionals vanishing on the image.
    let lam = m.kernel();
    let top_dim = lam.rows();
    if top_dim != 1 {
        return Err(Error::non_general(
            "ext4_identification",
            format!("degree -4 cokernel has dimension {top_dim}"),
        ));
    }
    let lam = lam.row(0).to_vec();
    let a2_basis: Vec<Monomial> = (0..nq)
        .filter(|i| !v_q.pivots.contains(i))
        .map(|i| quad.monomials[i])
        .collect();
    if a2_basis.len() != 3 {
        return Err(Error::non_general(
            "ext4_identification",
            format!("A_2 has dimension {}", a2_basis.len()),
        ));
    }
    let pair = |mono_vec: &[Scalar], j: usize| -> Scalar {
        let mut acc = field.zero();
        for (i, c) in mono_vec.iter().enumerate() {
            if !c.is_zero() {
                acc += &(c * &lam[j * nq + i]);
            }
        }
        acc
    };
    // The pairing must vanish on V_q: the cokernel is an A^q-module.
    for r in 0..v_q.basis.rows() {
        for j in 0..3 {
            if !pair(v_q.basis.row(r), j).is_zero() {
                return Err(Error::non_general(
                    "ext4_identification",
                    "pairing does not factor through A_2",
                ));
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = a2_basis
        .iter()
        .map(|m| {
            let e = MultiPoly::term(ring, *m, field.one()).to_vector(&quad);
            (0..3).map(|j| pair(&e, j)).collect()
        })
        .collect();
    let pairing = Matrix::from_rows(field, 3, rows);
    if pairing.rank() != 3 {
        return Err(Error::non_general("ext4_identification", "pairing is degenerate"));
    }
    Ok(Ext4Data {
        top_dim,
        a2_basis,
        pairing,
    })
}
