//! Matrices built directly from second-quantized or truncated-oscillator
//! definitions, independent of any Pauli algebra.

use num_complex::Complex64;
use pfg_core::ham::{ladder_matrices, BosonEncoding, VibronicParams};

use super::CMat;

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Fermionic annihilation operator on `n` modes; mode `k` is bit `n-1-k`
/// of the basis index and `1` means occupied.
pub fn annihilation(mode: usize, n: usize) -> CMat {
    let dim = 1usize << n;
    let bit = |s: usize, k: usize| (s >> (n - 1 - k)) & 1;
    let mut m = CMat::zeros(dim, dim);
    for s in 0..dim {
        if bit(s, mode) == 1 {
            let parity: usize = (0..mode).map(|k| bit(s, k)).sum();
            let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
            m[(s ^ (1 << (n - 1 - mode)), s)] = c(sign);
        }
    }
    m
}

/// Fermi-Hubbard with mode `2·site + spin`; two sites share a single bond.
pub fn fermi_hubbard_direct(sites: usize, t: f64, u: f64, periodic: bool) -> CMat {
    let n = 2 * sites;
    let a: Vec<CMat> = (0..n).map(|k| annihilation(k, n)).collect();
    let mut h = CMat::zeros(1 << n, 1 << n);
    let mut bonds: Vec<(usize, usize)> = (0..sites - 1).map(|i| (i, i + 1)).collect();
    if periodic && sites > 2 {
        bonds.push((sites - 1, 0));
    }
    for (i, j) in bonds {
        for spin in 0..2 {
            let (p, q) = (2 * i + spin, 2 * j + spin);
            let hop = a[p].adjoint() * &a[q];
            h -= (&hop + hop.adjoint()).scale(t);
        }
    }
    for i in 0..sites {
        let nu = a[2 * i].adjoint() * &a[2 * i];
        let nd = a[2 * i + 1].adjoint() * &a[2 * i + 1];
        h += (nu * nd).scale(u);
    }
    h
}

/// Kronecker product of per-site operators, site 0 most significant.
pub fn kron_all(ops: &[CMat]) -> CMat {
    ops.iter().skip(1).fold(ops[0].clone(), |acc, m| acc.kronecker(m))
}

/// `op` on site `k` of `sites` sites with `d` levels each.
pub fn on_site(op: &CMat, k: usize, sites: usize, d: usize) -> CMat {
    let ops: Vec<CMat> = (0..sites).map(|s| if s == k { op.clone() } else { CMat::identity(d, d) }).collect();
    kron_all(&ops)
}

/// Bose-Hubbard ring in the level basis.
pub fn bose_hubbard_direct(sites: usize, t: f64, u: f64, d: usize) -> CMat {
    let (b, bd) = ladder_matrices(d);
    let n_op = &bd * &b;
    let inter = &n_op * (&n_op - CMat::identity(d, d));
    let dim = d.pow(sites as u32);
    let mut h = CMat::zeros(dim, dim);
    let mut bonds: Vec<(usize, usize)> = (0..sites - 1).map(|i| (i, i + 1)).collect();
    if sites > 2 {
        bonds.push((sites - 1, 0));
    }
    for (i, j) in bonds {
        let hop = on_site(&bd, i, sites, d) * on_site(&b, j, sites, d);
        h -= (&hop + hop.adjoint()).scale(t);
    }
    for i in 0..sites {
        h += on_site(&inter, i, sites, d).scale(u);
    }
    h
}

/// `½ Σ_j ω_Bj (q_Bj² + p_Bj²)` with the transformed quadratures built as
/// full matrices.
pub fn vibronic_direct(params: &VibronicParams, d: usize) -> CMat {
    let m = params.n_modes();
    let (b, bd) = ladder_matrices(d);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let q = (&b + &bd).scale(r);
    let p = (&bd - &b) * Complex64::new(0.0, r);
    let (ta, tb) = params.transforms();
    let dim = d.pow(m as u32);
    let id = CMat::identity(dim, dim);
    let qs: Vec<CMat> = (0..m).map(|k| on_site(&q, k, m, d)).collect();
    let ps: Vec<CMat> = (0..m).map(|k| on_site(&p, k, m, d)).collect();
    let mut h = CMat::zeros(dim, dim);
    for j in 0..m {
        let mut qb = id.scale(params.delta[j]);
        let mut pb = CMat::zeros(dim, dim);
        for k in 0..m {
            qb += qs[k].scale(ta[(j, k)]);
            pb += ps[k].scale(tb[(j, k)]);
        }
        h += (&qb * &qb + &pb * &pb).scale(0.5 * params.omega_b[j]);
    }
    h
}

/// Reorders a level-basis operator into the qubit basis of `enc`.
pub fn to_qubit_basis(op: &CMat, sites: usize, enc: &BosonEncoding) -> CMat {
    let d = enc.levels();
    let nq = enc.qubits_per_mode();
    let dim = op.nrows();
    let index = |mut l: usize| {
        let mut out = 0usize;
        for s in (0..sites).rev() {
            out |= enc.code(l % d) << (nq * (sites - 1 - s));
            l /= d;
        }
        out
    };
    let mut out = CMat::zeros(dim, dim);
    for r in 0..dim {
        for col in 0..dim {
            out[(index(r), index(col))] = op[(r, col)];
        }
    }
    out
}

pub fn traceless(m: &CMat) -> CMat {
    let n = m.nrows();
    m - CMat::identity(n, n) * (m.trace() / n as f64)
}

pub fn sorted_eigenvalues(m: &CMat) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

