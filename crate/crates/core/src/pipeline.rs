//! The chain net -> apolar algebra -> resolution -> skew net -> pfaffians ->
//! quartic, with exact comparisons against the discriminant.

use crate::apolar::{dual_socle_of, GradedIdeal};
use crate::error::{Error, Result};
use crate::invariants::covariant_quartic;
use crate::matrix::Matrix;
use crate::netquad::{discriminant, q_perp, NetOfQuadrics};
use crate::poly::{apply, Monomial, MultiPoly, Ring};
use crate::resolve::{ext4_identification, min_res, tor_duality, BettiTable, NET_BETTI};
use crate::scalar::Scalar;
use crate::skewfano::{eta_from_tor, pfaffian_ideal, SkewNet};

pub const PFAFFIAN_HILBERT: [usize; 6] = [1, 3, 6, 3, 1, 0];

/// Result of comparing `lhs` against `lambda * rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// `lhs - lambda * rhs` vanishes term by term.
    Proportional(Scalar),
    /// First monomial (grevlex) where the normalized forms differ.
    Failed {
        witness: Monomial,
        lhs: Scalar,
        rhs: Scalar,
    },
}

impl Comparison {
    pub fn between(lhs: &MultiPoly, rhs: &MultiPoly) -> Comparison {
        if let Some(l) = lhs.proportionality(rhs) {
            if lhs.proportionality_witness(rhs, &l).is_none() {
                return Comparison::Proportional(l);
            }
        }
        let (a, b) = (lhs.normalized(), rhs.normalized().relabel(lhs.ring()));
        let witness = a.sub(&b).leading_term().map(|(m, _)| *m).unwrap_or_else(Monomial::one);
        Comparison::Failed {
            lhs: a.coefficient(&witness),
            rhs: b.coefficient(&witness),
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, Comparison::Proportional(_))
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub name: &'static str,
    pub comparison: Option<Comparison>,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CircleReport {
    pub net: NetOfQuadrics,
    /// `det M(u)`.
    pub s_q: MultiPoly,
    pub betti: BettiTable,
    pub eta: SkewNet,
    pub pfaffians: Vec<MultiPoly>,
    pub pfaffian_hilbert: Vec<usize>,
    /// Dual socle quartic in `N`-coordinates.
    pub f_q_n: MultiPoly,
    /// The same quartic moved to `u`-coordinates.
    pub f_q: MultiPoly,
    /// Covariant quartic of `f_q`.
    pub s_f_q: MultiPoly,
    pub self_covariant: Comparison,
    pub verdicts: Vec<Verdict>,
}

impl CircleReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

/// `A` with `A y` the `u`-coordinates of the point with `N`-coordinates `y`.
pub fn n_to_udual(net: &NetOfQuadrics, q_perp: &GradedIdeal, res: &crate::resolve::Resolution) -> Result<Matrix> {
    let field = net.field();
    let duality = tor_duality(res)?;
    let ext = ext4_identification(res, q_perp.piece(2))?;
    let w = q_perp.ring();
    let quads = net.quadrics();
    let rows = ext
        .a2_basis
        .iter()
        .map(|m| {
            let op = MultiPoly::term(w, *m, field.one());
            quads
                .iter()
                .map(|q| Ok(apply(&op, q)?.coefficient(&Monomial::one())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let g = Matrix::from_rows(field, 3, rows);
    let g_inv = g
        .inverse()
        .ok_or_else(|| Error::non_general("n_to_udual", "quadrics do not pair perfectly with A_2"))?;
    Ok(g_inv.mul(&ext.pairing).mul(&duality.tau.transpose()))
}

fn stage<T>(name: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ (Error::Degenerate { .. } | Error::NonGeneralNet { .. }) => e,
        other => Error::non_general(name, other.to_string()),
    })
}

pub fn circle(q: &NetOfQuadrics, cap: u32) -> Result<CircleReport> {
    if !q.is_nondegenerate() {
        return Err(Error::degenerate("net", "the three quadrics are dependent"));
    }
    let field = q.field();
    let perp = q_perp(q, cap)?;
    let s_q = stage("discriminant", discriminant(q))?;
    let res = min_res(&perp, cap);
    let betti = res.betti();
    if betti.triples() != NET_BETTI.to_vec() || res.truncated() {
        return Err(Error::non_general(
            "resolution",
            format!("Betti table {betti} (truncated: {})", res.truncated()),
        ));
    }
    let a = stage("n_to_udual", n_to_udual(q, &perp, &res))?;
    let a_inv = a
        .inverse()
        .ok_or_else(|| Error::non_general("n_to_udual", "identification is singular"))?;
    let eta = stage("eta", eta_from_tor(&res))?.with_n_to_udual(a);
    let pfaffians = pfaffian_ideal(&eta);
    let ops = Ring::plane_ops(field);
    let pf_ideal = GradedIdeal::from_generators(ops, &pfaffians, 5);
    let pfaffian_hilbert = pf_ideal.quotient_hilbert_function();
    let f_q_n = stage("dual_socle", dual_socle_of(ops, &pfaffians, 4))?;
    // f_q(u) = f_q_n(A^{-1} u).
    let f_q = f_q_n.compose_linear(&a_inv).normalized();
    let s_f_q = stage("covariant", covariant_quartic(&f_q))?;
    let s_q_x = s_q.relabel(f_q.ring());
    let self_covariant = Comparison::between(&s_f_q, &f_q);

    let mut verdicts = vec![Verdict {
        name: "pfaffian_hilbert",
        comparison: None,
        pass: pfaffian_hilbert == PFAFFIAN_HILBERT,
        detail: format!("{pfaffian_hilbert:?}"),
    }];
    let c = Comparison::between(&s_f_q, &s_q_x);
    verdicts.push(Verdict {
        name: "covariant_vs_discriminant",
        pass: c.passed(),
        detail: describe(&c),
        comparison: Some(c),
    });
    if self_covariant.passed() {
        let c = Comparison::between(&f_q, &s_q_x);
        verdicts.push(Verdict {
            name: "dual_socle_vs_discriminant",
            pass: c.passed(),
            detail: describe(&c),
            comparison: Some(c),
        });
    }
    Ok(CircleReport {
        net: q.clone(),
        s_q,
        betti,
        eta,
        pfaffians,
        pfaffian_hilbert,
        f_q_n,
        f_q,
        s_f_q,
        self_covariant,
        verdicts,
    })
}

pub fn describe(c: &Comparison) -> String {
    match c {
        Comparison::Proportional(l) => format!("proportional, lambda = {l}"),
        Comparison::Failed { witness, lhs, rhs } => {
            format!("differs at monomial {:?}: {lhs} vs {rhs}", witness.0)
        }
    }
}
