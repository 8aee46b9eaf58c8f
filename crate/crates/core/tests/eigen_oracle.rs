//! Jacobi eigenvalues against nalgebra's Hermitian solver.

use nalgebra::{Complex, Matrix4 as NaMatrix4};
use qdilemma::channel::{initial_state, DecoherenceParam};
use qdilemma::game::{apply_strategies, ThreeParamStrategy};
use qdilemma::linalg::{hermitian_eigenvalues, Matrix4, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[allow(clippy::needless_range_loop)]
fn random_hermitian(rng: &mut ChaCha8Rng) -> Matrix4 {
    let mut rows = [[C64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        rows[i][i] = C64::new(rng.random_range(-2.0..2.0), 0.0);
        for j in i + 1..4 {
            let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            rows[i][j] = z;
            rows[j][i] = z.conj();
        }
    }
    Matrix4::from_rows(rows)
}

fn oracle(m: &Matrix4) -> [f64; 4] {
    let na = NaMatrix4::from_fn(|i, j| {
        let z = m.get(i, j);
        Complex::new(z.re, z.im)
    });
    let mut ev: Vec<f64> = na.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    [ev[0], ev[1], ev[2], ev[3]]
}

#[test]
#[allow(clippy::needless_range_loop)]
fn random_hermitian_spectra_match() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let m = random_hermitian(&mut rng);
        let ours = hermitian_eigenvalues(&m).unwrap();
        let theirs = oracle(&m);
        for (a, b) in ours.iter().zip(theirs) {
            assert!((a - b).abs() < 1e-10, "{ours:?} vs {theirs:?}");
        }
    }
}

#[test]
fn game_state_spectra_match() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let mu = rng.random_range(0.0..=1.0);
        let s = |rng: &mut ChaCha8Rng| {
            ThreeParamStrategy::new(
                rng.random_range(0.0..=std::f64::consts::PI),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
            )
            .unwrap()
        };
        let (a, b) = (s(&mut rng), s(&mut rng));
        let rho = apply_strategies(
            &initial_state(DecoherenceParam::from_mu(mu).unwrap()),
            &a.unitary(),
            &b.unitary(),
        )
        .unwrap();
        let ours = rho.eigenvalues();
        let theirs = oracle(rho.matrix());
        for (x, y) in ours.iter().zip(theirs) {
            assert!((x - y).abs() < 1e-10);
        }
        // Spectrum of a unitarily rotated state is (1+mu)/2, (1-mu)/2, 0, 0.
        let want = [0.0, 0.0, (1.0 - mu) / 2.0, (1.0 + mu) / 2.0];
        let mut got = ours;
        got.sort_by(f64::total_cmp);
        let mut want = want;
        want.sort_by(f64::total_cmp);
        for (x, y) in got.iter().zip(want) {
            assert!((x - y).abs() < 1e-10);
        }
    }
}
