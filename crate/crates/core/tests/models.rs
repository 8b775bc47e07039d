mod common;

use common::oracles::*;
use common::CMat;
use nalgebra::DMatrix;
use pfg_core::ham::{
    bk_update_set, bose_hubbard, fermi_hubbard, load_hamiltonian, save_hamiltonian, vibronic, vibronic_from_params,
    BosonEncoding, EncodingKind, FermionMapping, PauliSumHamiltonian, VibronicParams,
};
use pfg_core::verify::hamiltonian_matrix;

/// Identity terms are dropped on assembly, so matrices are compared
/// after removing their trace.
const TOL: f64 = 1e-10;

fn dense(h: &PauliSumHamiltonian) -> CMat {
    hamiltonian_matrix(h).unwrap()
}

/// Permutation `|f⟩ → |B f⟩` from occupations to Bravyi-Kitaev qubit values.
fn bk_basis_map(n: usize) -> CMat {
    let dim = 1usize << n;
    let mut m = CMat::zeros(dim, dim);
    for f in 0..dim {
        let occ = |k: usize| (f >> (n - 1 - k)) & 1;
        let mut b = 0usize;
        for i in (0..n).filter(|&i| occ(i) == 1) {
            for k in bk_update_set(i, n) {
                b ^= 1 << (n - 1 - k);
            }
        }
        m[(b, f)] = num_complex::Complex64::new(1.0, 0.0);
    }
    m
}

#[test]
fn fermi_hubbard_jordan_wigner_equals_fock_space_matrix() {
    for (sites, periodic) in [(2, true), (3, true), (3, false), (4, true)] {
        for (t, u) in [(1.0, 0.0), (0.0, 4.0), (0.7, 2.3)] {
            let h = fermi_hubbard(sites, t, u, FermionMapping::JordanWigner, periodic).unwrap();
            let direct = fermi_hubbard_direct(sites, t, u, periodic);
            assert!((traceless(&dense(&h)) - traceless(&direct)).norm() < TOL, "sites {sites} t {t} u {u}");
        }
    }
}

#[test]
fn fermi_hubbard_bravyi_kitaev_is_a_basis_change_of_the_fock_matrix() {
    for sites in [2, 3, 4] {
        let n = 2 * sites;
        let direct = fermi_hubbard_direct(sites, 1.0, 4.0, true);
        let h = fermi_hubbard(sites, 1.0, 4.0, FermionMapping::BravyiKitaev, true).unwrap();
        let pm = bk_basis_map(n);
        assert!((traceless(&dense(&h)) - traceless(&(&pm * &direct * pm.adjoint()))).norm() < TOL, "sites {sites}");
        let jw = fermi_hubbard(sites, 1.0, 4.0, FermionMapping::JordanWigner, true).unwrap();
        let (a, b) = (sorted_eigenvalues(&dense(&h)), sorted_eigenvalues(&dense(&jw)));
        assert_eq!(a.len(), 1 << n);
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9));
    }
}

#[test]
fn u_only_hubbard_is_diagonal() {
    let h = fermi_hubbard(3, 0.0, 2.0, FermionMapping::JordanWigner, true).unwrap();
    assert!(h.terms().iter().all(|(_, p)| p.x().is_zero()));
    assert!(h.terms().iter().all(|(_, p)| p.weight() <= 2));
}

#[test]
fn bose_hubbard_matches_truncated_boson_matrices() {
    for kind in [EncodingKind::StandardBinary, EncodingKind::Gray] {
        for (sites, d) in [(2, 4), (3, 4), (2, 8), (2, 2)] {
            let enc = BosonEncoding::new(kind, d).unwrap();
            let h = bose_hubbard(sites, 0.8, 1.3, &enc).unwrap();
            let direct = to_qubit_basis(&bose_hubbard_direct(sites, 0.8, 1.3, d), sites, &enc);
            assert!((traceless(&dense(&h)) - traceless(&direct)).norm() < TOL, "{kind:?} sites {sites} d {d}");
        }
    }
    // Gray and standard give different strings but the same spectrum.
    let e_std = BosonEncoding::new(EncodingKind::StandardBinary, 4).unwrap();
    let e_gray = BosonEncoding::new(EncodingKind::Gray, 4).unwrap();
    let (hs, hg) = (bose_hubbard(2, 1.0, 1.0, &e_std).unwrap(), bose_hubbard(2, 1.0, 1.0, &e_gray).unwrap());
    assert_ne!(hs.to_text(), hg.to_text());
    let (a, b) = (sorted_eigenvalues(&dense(&hs)), sorted_eigenvalues(&dense(&hg)));
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9));
}

#[test]
fn bose_hubbard_without_hopping_is_diagonal() {
    let enc = BosonEncoding::new(EncodingKind::Gray, 4).unwrap();
    let h = bose_hubbard(2, 0.0, 1.0, &enc).unwrap();
    assert!(h.terms().iter().all(|(_, p)| p.x().is_zero()));
}

#[test]
fn vibronic_matches_direct_construction() {
    for kind in [EncodingKind::StandardBinary, EncodingKind::Gray] {
        for seed in [0, 7] {
            let enc = BosonEncoding::new(kind, 4).unwrap();
            let params = VibronicParams::random(2, seed, true);
            let h = vibronic_from_params(&params, &enc).unwrap();
            assert_eq!(h.to_text(), vibronic(2, &enc, seed, true).unwrap().to_text());
            let direct = to_qubit_basis(&vibronic_direct(&params, 4), 2, &enc);
            assert!((traceless(&dense(&h)) - traceless(&direct)).norm() < TOL, "{kind:?} seed {seed}");
        }
    }
}

#[test]
fn undistorted_vibronic_model_decouples() {
    let m = 3;
    let omega = vec![0.6, 1.0, 1.4];
    let params = VibronicParams { s: DMatrix::identity(m, m), omega_a: omega.clone(), omega_b: omega.clone(), delta: vec![0.0; m] };
    let enc = BosonEncoding::new(EncodingKind::Gray, 4).unwrap();
    let h = vibronic_from_params(&params, &enc).unwrap();
    // Every term stays inside one mode's two-qubit block.
    assert!(h.terms().iter().all(|(_, p)| {
        let s = p.support();
        s.first().map(|a| a / 2) == s.last().map(|b| b / 2)
    }));
    for (k, w) in omega.iter().enumerate() {
        let single = VibronicParams {
            s: DMatrix::identity(1, 1),
            omega_a: vec![*w],
            omega_b: vec![*w],
            delta: vec![0.0],
        };
        let hk = vibronic_from_params(&single, &enc).unwrap();
        let embedded: Vec<(f64, String)> = hk
            .terms()
            .iter()
            .map(|(c, p)| {
                let local = p.to_dense_string();
                let mut full = "I".repeat(2 * m);
                full.replace_range(2 * k..2 * k + 2, &local);
                (*c, full)
            })
            .collect();
        for (c, s) in embedded {
            let found = h.terms().iter().find(|(_, p)| p.to_dense_string() == s).map(|(c2, _)| *c2);
            assert!(found.is_some_and(|c2| (c2 - c).abs() < 1e-12), "mode {k} term {s}");
        }
    }
}

#[test]
fn generators_reject_bad_sizes() {
    assert!(fermi_hubbard(1, 1.0, 1.0, FermionMapping::JordanWigner, true).is_err());
    let enc = BosonEncoding::new(EncodingKind::StandardBinary, 4).unwrap();
    assert!(bose_hubbard(1, 1.0, 1.0, &enc).is_err());
    assert!(vibronic(1, &enc, 0, true).is_err());
}

#[test]
fn hamiltonian_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fh.ham");
    let h = fermi_hubbard(3, 1.0, 4.0, FermionMapping::BravyiKitaev, true).unwrap();
    save_hamiltonian(&h, &path).unwrap();
    let back = load_hamiltonian(&path).unwrap();
    assert_eq!(back, h);
    assert_eq!(back.to_text(), std::fs::read_to_string(&path).unwrap());
    let merged = PauliSumHamiltonian::parse("qubits 2\n0.5 ZZ\n0.25 Z0 Z1\n").unwrap();
    assert_eq!(merged.n_terms(), 1);
    assert!((merged.terms()[0].0 - 0.75).abs() < 1e-15);
    assert!(PauliSumHamiltonian::parse("qubits 3\n").unwrap().is_empty());
}
