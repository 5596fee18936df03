use cl2n_core::ideal::{rho_matrix, theta};
use cl2n_core::{
    blade_mul, density_from_generator, BladeIndex, BladeString, CMatrix, Complex64, DenseMultivector, Multivector2,
    PauliLetter, PauliString, SignedBlade,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LETTERS: [PauliLetter; 4] = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn letter_matrix(l: PauliLetter) -> CMatrix {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match l {
        PauliLetter::I => CMatrix::from_rows(&[&[o, z], &[z, o]]),
        PauliLetter::X => CMatrix::from_rows(&[&[z, o], &[o, z]]),
        PauliLetter::Y => CMatrix::from_rows(&[&[z, -i], &[i, z]]),
        PauliLetter::Z => CMatrix::from_rows(&[&[o, z], &[z, -o]]),
    }
}

fn i_pow(k: u8) -> Complex64 {
    [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][usize::from(k & 3)]
}

/// Kronecker product with qubit 0 as the least significant factor.
fn pauli_matrix(p: &PauliString) -> CMatrix {
    let mut m = CMatrix::identity(1);
    for q in (0..p.n()).rev() {
        m = m.kron(&letter_matrix(p.letter(q)));
    }
    m.scale(i_pow(p.phase()))
}

fn all_strings(n: usize) -> Vec<PauliString> {
    (0..4usize.pow(n as u32) * 4)
        .map(|code| {
            let letters: Vec<_> = (0..n).map(|q| LETTERS[code >> (2 * q) & 3]).collect();
            PauliString::from_letters(&letters, (code >> (2 * n)) as u8)
        })
        .collect()
}

fn random_blades(rng: &mut ChaCha8Rng, n: usize) -> BladeString {
    let codes = (0..n).map(|_| BladeIndex::from_bits(rng.random_range(0..4))).collect();
    BladeString::new(codes, rng.random_bool(0.5))
}

fn random_dense(rng: &mut ChaCha8Rng, n: usize) -> DenseMultivector {
    let coeffs = (0..1usize << (2 * n)).map(|_| rng.random_range(-1.0..1.0)).collect();
    DenseMultivector::from_coeffs(n, coeffs).unwrap()
}

#[test]
fn blade_table_matches_two_by_two_matrices() {
    let m = |b: BladeIndex| rho_matrix(&DenseMultivector::local_blade(1, 0, b).unwrap()).unwrap();
    assert_eq!(m(BladeIndex::E1), letter_matrix(PauliLetter::Z));
    assert_eq!(m(BladeIndex::E2), letter_matrix(PauliLetter::X));
    for a in BladeIndex::ALL {
        for b in BladeIndex::ALL {
            let SignedBlade { negative, blade } = blade_mul(a, b);
            let sign = if negative { -1.0 } else { 1.0 };
            assert_eq!(m(a).mul(&m(b)), m(blade).scale(c(sign, 0.0)), "{a} {b}");
            let mv = Multivector2::blade(a).gp(&Multivector2::blade(b));
            assert_eq!(mv.coeff(blade), sign);
        }
    }
}

#[test]
fn pauli_products_match_kronecker_products() {
    for n in 1..=2 {
        let all = all_strings(n);
        for a in &all {
            for b in &all {
                let got = pauli_matrix(&a.mul(b).unwrap());
                let expect = pauli_matrix(a).mul(&pauli_matrix(b));
                assert!(got.max_abs_diff(&expect) <= 1e-12, "{a} · {b}");
                let commute = expect.max_abs_diff(&pauli_matrix(b).mul(&pauli_matrix(a))) <= 1e-12;
                assert_eq!(a.commutes_with(b).unwrap(), commute);
            }
        }
    }
}

#[test]
fn pauli_strings_are_blades_up_to_a_phase() {
    for n in 1..=3 {
        for p in all_strings(n) {
            let (blades, res) = p.to_blade_with_residual();
            let dense = DenseMultivector::from_blade_string(&blades).unwrap();
            let rho = rho_matrix(&dense).unwrap().scale(i_pow(res));
            assert!(rho.max_abs_diff(&pauli_matrix(&p)) <= 1e-12, "{p}");
        }
    }
}

#[test]
fn blade_string_products_match_the_dense_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let dense = |s: &BladeString| DenseMultivector::from_blade_string(s).unwrap();
    for n in 1..=4 {
        for _ in 0..300 {
            let (a, b) = (random_blades(&mut rng, n), random_blades(&mut rng, n));
            let got = dense(&a.mul(&b).unwrap());
            let expect = dense(&a).gp(&dense(&b)).unwrap();
            assert_eq!(got.max_abs_diff(&expect), 0.0, "{a} · {b}");
        }
    }
}

#[test]
fn left_action_intertwines_preparation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in 1..=3 {
        for _ in 0..40 {
            let (g, h) = (random_dense(&mut rng, n), random_dense(&mut rng, n));
            let gh = g.gp(&h).unwrap();
            let lhs = theta(&h).unwrap().left_mul(&g).unwrap();
            assert!(lhs.multivector().max_abs_diff(theta(&gh).unwrap().multivector()) <= 1e-10);
            let m = rho_matrix(&g).unwrap().mul(&rho_matrix(&h).unwrap());
            assert!(m.max_abs_diff(&rho_matrix(&gh).unwrap()) <= 1e-10);
        }
    }
}

#[test]
fn generated_densities_are_rank_one_projectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for n in 1..=3 {
        for _ in 0..30 {
            let rho = density_from_generator(&random_dense(&mut rng, n)).unwrap().normalized();
            assert!(rho.is_hermitian(1e-10));
            assert!(rho.idempotency_defect() <= 1e-9);
            assert!((rho.trace() - 1.0).l1_norm() <= 1e-10);
        }
    }
}
