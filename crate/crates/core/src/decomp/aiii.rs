//! Demultiplexing step: `G = K₁·A·K₂` with `K₁, K₂` block diagonal in the
//! low qubit and `A` a multiplexed X rotation on it.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::DVector;
use num_complex::Complex64;

use super::involution::{parity_block, z_apply, z_conjugate, BlockDiagPair};
use super::Certificate;
use crate::circuit::MultiplexedRotation;
use crate::matcore::{
    c64, canonical_basis, chains, closest_unitary, eig_unitary, eigh, frobenius, Axis, CMatrix,
    UnitaryMatrix,
};
use crate::{Error, Result, Tolerances};

/// Width of the window around `1` and `−1` in which eigenvalues of `M²` are
/// handled as real and paired by subspace rather than one by one.
const REAL_GAP: f64 = 1e-6;

/// `sin 2θ` below which the odd partner of a pair is not determined by `M²`.
const REAL_FLOOR: f64 = 1e-12;

/// `G = K₁·A·K₂`, up to the tracked phase (always zero here; kept for
/// uniformity with the other splits).
#[derive(Clone, Debug)]
pub struct AiiiSplit {
    pub k1: BlockDiagPair,
    pub rotation: MultiplexedRotation,
    pub k2: BlockDiagPair,
    pub certificate: Certificate,
}

struct Pair {
    theta: f64,
    p: DVector<Complex64>,
    m: DVector<Complex64>,
}

/// Splits an `n`-qubit unitary along the `Θ(U) = Z⁽ⁿ⁾UZ⁽ⁿ⁾` involution.
///
/// Eigenvectors `v` of `M² = Z·G†·Z·G` with phase `φ ∈ (0, π)` give the pair
/// `p = (v + Zv)/√2`, `m = (v − Zv)/√2` and rotation angle `φ/2`. Eigenvalues
/// at `±1` have no partner of their own and are paired inside their
/// eigenspace through an SVD of the even/odd cross term.
pub fn demultiplex_aiii(g: &UnitaryMatrix, n: usize, tol: &Tolerances) -> Result<AiiiSplit> {
    let dim = 1usize.checked_shl(n as u32).unwrap_or(0);
    if n < 2 || g.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: g.dim(),
        });
    }
    let gm = g.matrix();
    let m2 = z_conjugate(&gm.adjoint()) * gm;
    let eig = eig_unitary(&UnitaryMatrix::assume(m2.clone()), tol)?;
    let v = eig.vectors.matrix();
    let phases = &eig.phases;

    let near_one = real_cluster(phases, |p| p.abs(), &[]);
    let near_minus_one = real_cluster(phases, |p| PI - p.abs(), &near_one);
    let mut pairs = Vec::with_capacity(dim / 2);
    for cluster in [&near_one, &near_minus_one] {
        if !cluster.is_empty() {
            let w = CMatrix::from_fn(dim, cluster.len(), |r, c| v[(r, cluster[c])]);
            pairs.extend(pair_real_cluster(&w, &m2, tol)?);
        }
    }

    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for (k, &p) in phases.iter().enumerate() {
        if near_one.contains(&k) || near_minus_one.contains(&k) {
            continue;
        }
        if p > 0.0 {
            plus.push(k)
        } else {
            minus.push(k)
        }
    }
    if plus.len() != minus.len() {
        return Err(Error::Pairing(format!(
            "{} eigenphases in (0, π) against {} in (−π, 0)",
            plus.len(),
            minus.len()
        )));
    }
    let pair_tol = tol.degeneracy.max(1e3 * f64::EPSILON * dim as f64);
    let mut used = vec![false; minus.len()];
    for &k in &plus {
        let vk = v.column(k).into_owned();
        let zv = z_apply(&vk);
        let mut best: Option<(usize, f64)> = None;
        for (j, &l) in minus.iter().enumerate() {
            if used[j] || (phases[l] + phases[k]).abs() > pair_tol {
                continue;
            }
            let overlap = zv.dotc(&v.column(l)).norm();
            if best.is_none_or(|(_, o)| overlap > o) {
                best = Some((j, overlap));
            }
        }
        let Some((j, _)) = best else {
            return Err(Error::Pairing(format!(
                "no conjugate partner for eigenphase {}",
                phases[k]
            )));
        };
        used[j] = true;
        let s = c64(FRAC_1_SQRT_2, 0.0);
        pairs.push(Pair {
            theta: phases[k] / 2.0,
            p: (&vk + &zv) * s,
            m: (&vk - &zv) * s,
        });
    }
    if pairs.len() != dim / 2 {
        return Err(Error::Pairing(format!(
            "found {} rotation pairs, expected {}",
            pairs.len(),
            dim / 2
        )));
    }
    // already in ascending θ: the +1 cluster, the conjugate pairs by phase,
    // then the −1 cluster
    for pr in pairs.iter_mut() {
        let lead =
            pr.p.iter()
                .enumerate()
                .fold((0, -1.0), |acc, (i, z)| {
                    if z.norm() > acc.1 {
                        (i, z.norm())
                    } else {
                        acc
                    }
                })
                .0;
        let unit = pr.p[lead].conj() / pr.p[lead].norm();
        pr.p *= unit;
        pr.m *= unit;
    }

    let half = dim / 2;
    let k0d = closest_unitary(&CMatrix::from_fn(half, half, |r, j| pairs[j].p[2 * r]));
    let k1d = closest_unitary(&CMatrix::from_fn(half, half, |r, j| pairs[j].m[2 * r + 1]));
    let k2 = BlockDiagPair::new(
        UnitaryMatrix::assume(k0d.adjoint()),
        UnitaryMatrix::assume(k1d.adjoint()),
    )?;
    let thetas: Vec<f64> = pairs.iter().map(|p| p.theta).collect();
    let rotation = MultiplexedRotation::new(Axis::X, n, (1..n).collect(), thetas)?;
    let a = rotation_matrix(&rotation);
    let k2m = k2.to_matrix();
    let k2d = k2m.matrix().adjoint();
    let k1full = gm * &k2d * a.adjoint();

    let off =
        frobenius(&parity_block(&k1full, 0, 1)).hypot(frobenius(&parity_block(&k1full, 1, 0)));
    let bound = tol.acceptance * (dim as f64).sqrt();
    if off > bound {
        return Err(Error::Structure {
            what: "demultiplexed K1 is not block diagonal",
            residual: off,
            tolerance: bound,
        });
    }
    let k1 = BlockDiagPair::new(
        UnitaryMatrix::assume(closest_unitary(&parity_block(&k1full, 0, 0))),
        UnitaryMatrix::assume(closest_unitary(&parity_block(&k1full, 1, 1))),
    )?;

    let m = &k2d * &a * k2m.matrix();
    let involution = frobenius(&(z_conjugate(&m) - m.adjoint()));
    let square = frobenius(&(&m * &m - &m2));
    let residual = frobenius(&(k1.to_matrix().matrix() * &a * k2m.matrix() - gm));
    if residual > bound {
        return Err(Error::Reconstruction {
            stage: "demultiplex",
            residual,
            tolerance: bound,
        });
    }
    Ok(AiiiSplit {
        k1,
        rotation,
        k2,
        certificate: Certificate::single(involution, square, off, residual),
    })
}

/// Dense `Σ_j |j⟩⟨j| ⊗ e^{iθ_j X}` with the low qubit as target.
fn rotation_matrix(r: &MultiplexedRotation) -> CMatrix {
    let thetas = r.angles();
    let dim = 2 * thetas.len();
    let mut a = CMatrix::zeros(dim, dim);
    for (j, &t) in thetas.iter().enumerate() {
        let (c, s) = (c64(t.cos(), 0.0), c64(0.0, t.sin()));
        a[(2 * j, 2 * j)] = c;
        a[(2 * j + 1, 2 * j + 1)] = c;
        a[(2 * j, 2 * j + 1)] = s;
        a[(2 * j + 1, 2 * j)] = s;
    }
    a
}

/// Indices whose `dist(φ)` chains down to zero in steps of at most `REAL_GAP`.
fn real_cluster(phases: &[f64], dist: impl Fn(f64) -> f64, exclude: &[usize]) -> Vec<usize> {
    let mut idx: Vec<(usize, f64)> = phases
        .iter()
        .enumerate()
        .filter(|(k, _)| !exclude.contains(k))
        .map(|(k, &p)| (k, dist(p)))
        .collect();
    idx.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut out = Vec::new();
    let mut last = 0.0;
    for (k, d) in idx {
        if d - last > REAL_GAP {
            break;
        }
        out.push(k);
        last = d;
    }
    out.sort_unstable();
    out
}

/// Orthonormal basis of the range of `x` (`x†x` has eigenvalues near 0 or 1);
/// exactly `count` columns are expected.
fn range_basis(x: &CMatrix, count: usize) -> Result<CMatrix> {
    let c = x.ncols();
    let (vals, vecs) = eigh(x.adjoint() * x);
    let lo = if c > count { vals[c - count - 1] } else { 0.0 };
    let hi = vals[c - count];
    if lo > 0.25 || hi < 0.75 {
        return Err(Error::Pairing(format!(
            "parity components of a real eigenspace are not balanced (gap {lo:.3e}..{hi:.3e})"
        )));
    }
    let mut b = x * vecs.columns(c - count, count);
    for mut col in b.column_iter_mut() {
        let nrm = col.norm();
        col /= c64(nrm, 0.0);
    }
    Ok(canonical_basis(&b))
}

/// Pairs an eigenspace `W` of `M²` with eigenvalue near `±1`.
///
/// Both parity projections of `W` have half its dimension; let `P`, `Q` be
/// bases of the even and odd parts. The Hermitian part of `M²` restricted to
/// `P` is `diag(cos 2θ_k)` in the right basis, which gives `p_k`; then
/// `M²·p_k − cos 2θ_k·p_k = i·sin 2θ_k·m_k` gives `sin 2θ_k` and `m_k`. Where
/// `sin 2θ_k` vanishes `m_k` is any unused direction of `Q`.
fn pair_real_cluster(w: &CMatrix, m2: &CMatrix, tol: &Tolerances) -> Result<Vec<Pair>> {
    let c = w.ncols();
    if c % 2 == 1 {
        return Err(Error::Pairing(format!(
            "real eigenspace of odd dimension {c}"
        )));
    }
    let h = c / 2;
    let even = CMatrix::from_fn(w.nrows(), c, |r, k| {
        if r & 1 == 0 {
            w[(r, k)]
        } else {
            c64(0.0, 0.0)
        }
    });
    let odd = w - &even;
    let pb = range_basis(&even, h)?;
    let qb = range_basis(&odd, h)?;
    let herm = (m2 + m2.adjoint()) * c64(0.5, 0.0);
    let (cos, mut y) = eigh(pb.adjoint() * &herm * &pb);
    let groups = chains(&cos, tol.degeneracy);
    for r in &groups {
        if r.len() > 1 {
            let block = y.columns(r.start, r.len()).into_owned();
            y.columns_mut(r.start, r.len())
                .copy_from(&canonical_basis(&block));
        }
    }
    // θ ascending means cos 2θ descending; degenerate groups keep basis order
    let mut raw = Vec::with_capacity(h);
    for k in groups.iter().rev().flat_map(|r| r.clone()) {
        let p = &pb * y.column(k);
        let m2p = m2 * &p;
        let cs = p.dotc(&m2p).re;
        let r = (m2p - &p * c64(cs, 0.0)) * c64(0.0, -1.0);
        let sn = r.norm();
        raw.push((sn.atan2(cs) / 2.0, p, r, sn));
    }
    // m vectors: strongest residuals first, then complete from Q
    let mut order: Vec<usize> = (0..h).collect();
    order.sort_by(|&a, &b| raw[b].3.total_cmp(&raw[a].3));
    let mut ms: Vec<Option<DVector<Complex64>>> = vec![None; h];
    let mut basis: Vec<DVector<Complex64>> = Vec::with_capacity(h);
    let orthogonalize = |v: &mut DVector<Complex64>, basis: &[DVector<Complex64>]| {
        for b in basis {
            let c = b.dotc(v);
            *v -= b * c;
        }
        v.norm()
    };
    for &k in &order {
        if raw[k].3 <= REAL_FLOOR {
            break;
        }
        let mut v = &qb * (qb.adjoint() * &raw[k].2);
        let nrm = orthogonalize(&mut v, &basis);
        if nrm <= 0.5 * raw[k].3 {
            return Err(Error::Pairing(
                "odd partners of a real eigenspace are dependent".into(),
            ));
        }
        v /= c64(nrm, 0.0);
        basis.push(v.clone());
        ms[k] = Some(v);
    }
    let mut spare = qb.column_iter().map(|q| q.into_owned());
    for slot in ms.iter_mut().filter(|m| m.is_none()) {
        loop {
            let Some(mut v) = spare.next() else {
                return Err(Error::Pairing(
                    "odd part of a real eigenspace is too small".into(),
                ));
            };
            let nrm = orthogonalize(&mut v, &basis);
            if nrm > 0.5 {
                v /= c64(nrm, 0.0);
                basis.push(v.clone());
                *slot = Some(v);
                break;
            }
        }
    }
    Ok(raw
        .into_iter()
        .zip(ms)
        .map(|((theta, p, _, _), m)| Pair {
            theta,
            p,
            m: m.expect("every slot filled"),
        })
        .collect())
}
