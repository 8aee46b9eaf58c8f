//! Fixed-size dense complex matrices for one- and two-qubit operators.
//!
//! Two-qubit matrices use the basis order |00>, |01>, |10>, |11> throughout,
//! with the first tensor factor belonging to Alice.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<const N: usize> {
    rows: [[C64; N]; N],
}

pub type Matrix2 = Matrix<2>;
pub type Matrix4 = Matrix<4>;

impl<const N: usize> Matrix<N> {
    /// Builds a matrix without checking finiteness.
    pub const fn from_rows(rows: [[C64; N]; N]) -> Self {
        Self { rows }
    }

    pub fn try_from_rows(rows: [[C64; N]; N]) -> Result<Self> {
        let m = Self { rows };
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub const fn zeros() -> Self {
        Self {
            rows: [[ZERO; N]; N],
        }
    }

    pub fn identity() -> Self {
        Self::diagonal([ONE; N])
    }

    pub fn diagonal(diag: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for (k, d) in diag.into_iter().enumerate() {
            m.rows[k][k] = d;
        }
        m
    }

    /// Projector |v><v| (not normalised).
    pub fn outer(v: &[C64; N]) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.rows[r][c] = v[r] * v[c].conj();
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.rows[row][col]
    }

    pub fn rows(&self) -> &[[C64; N]; N] {
        &self.rows
    }

    pub fn diagonal_entries(&self) -> [C64; N] {
        std::array::from_fn(|k| self.rows[k][k])
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|z| z.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.rows[c][r] = self.rows[r][c].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|k| self.rows[k][k]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        m.rows.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    /// Tr(self * other) without forming the product.
    #[inline]
    pub fn trace_of_product(&self, other: &Self) -> C64 {
        let mut acc = ZERO;
        for j in 0..N {
            for k in 0..N {
                acc += self.rows[j][k] * other.rows[k][j];
            }
        }
        acc
    }

    /// self * other * self^dag.
    #[inline]
    pub fn conjugate(&self, other: &Self) -> Self {
        let left = *self * *other;
        let mut out = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                let mut acc = ZERO;
                for k in 0..N {
                    acc += left.rows[r][k] * self.rows[c][k].conj();
                }
                out.rows[r][c] = acc;
            }
        }
        out
    }

    /// (self + self^dag) / 2.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(C64::new(0.5, 0.0))
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.rows
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// max |m_jk - conj(m_kj)|.
    pub fn hermiticity_defect(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    /// max |U^dag U - I|.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self - Self::identity()).max_abs()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        frobenius_distance(self, other)
    }

    /// Eigenvalues of the Hermitian part in ascending order, by cyclic
    /// complex Jacobi rotations.
    pub fn hermitian_eigenvalues(&self) -> Result<[f64; N]> {
        hermitian_eigenvalues(self)
    }
}

impl<const N: usize> Default for Matrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Add for Matrix<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for r in 0..N {
            for c in 0..N {
                self.rows[r][c] += rhs.rows[r][c];
            }
        }
        self
    }
}

impl<const N: usize> Sub for Matrix<N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for r in 0..N {
            for c in 0..N {
                self.rows[r][c] -= rhs.rows[r][c];
            }
        }
        self
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for r in 0..N {
            for k in 0..N {
                let a = self.rows[r][k];
                for c in 0..N {
                    out.rows[r][c] += a * rhs.rows[k][c];
                }
            }
        }
        out
    }
}

impl<const N: usize> Mul<f64> for Matrix<N> {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        self.scale(C64::new(rhs, 0.0))
    }
}

/// Kronecker product a (x) b; `a` acts on the first qubit.
#[inline]
pub fn tensor_product(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut m = Matrix4::zeros();
    for ar in 0..2 {
        for ac in 0..2 {
            let x = a.rows[ar][ac];
            for br in 0..2 {
                for bc in 0..2 {
                    m.rows[2 * ar + br][2 * ac + bc] = x * b.rows[br][bc];
                }
            }
        }
    }
    m
}

pub fn frobenius_distance<const N: usize>(a: &Matrix<N>, b: &Matrix<N>) -> f64 {
    a.rows
        .iter()
        .flatten()
        .zip(b.rows.iter().flatten())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn off_diagonal_norm<const N: usize>(m: &Matrix<N>) -> f64 {
    let mut acc = 0.0;
    for r in 0..N {
        for c in 0..N {
            if r != c {
                acc += m.rows[r][c].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

pub fn hermitian_eigenvalues<const N: usize>(m: &Matrix<N>) -> Result<[f64; N]> {
    let defect = m.hermiticity_defect();
    if !m.is_finite() || defect > tolerance::EIGEN_HERMITIAN_PRECONDITION {
        return Err(Error::NotHermitian { defect });
    }

    let mut a = m.hermitian_part();
    for _ in 0..tolerance::JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < tolerance::JACOBI_OFF_DIAGONAL {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                jacobi_rotate(&mut a, p, q);
            }
        }
    }

    let mut eig: [f64; N] = std::array::from_fn(|k| a.rows[k][k].re);
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Annihilates a[p][q] (and a[q][p]) with a unitary similarity G^dag a G.
///
/// G is a phase on column q, making the pivot real, followed by a real
/// Givens rotation in the (p, q) plane.
fn jacobi_rotate<const N: usize>(a: &mut Matrix<N>, p: usize, q: usize) {
    let apq = a.rows[p][q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a.rows[p][p].re;
    let aqq = a.rows[q][q].re;

    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // G = V * J with V = diag(.., conj(phase) at q, ..), J = [[c, s], [-s, c]].
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = phase.conj() * (-s);
    let g_qq = phase.conj() * c;

    // a <- a G (columns p, q)
    for row in a.rows.iter_mut() {
        let xp = row[p];
        let xq = row[q];
        row[p] = xp * g_pp + xq * g_qp;
        row[q] = xp * g_pq + xq * g_qq;
    }
    // a <- G^dag a (rows p, q)
    for col in 0..N {
        let xp = a.rows[p][col];
        let xq = a.rows[q][col];
        a.rows[p][col] = g_pp.conj() * xp + g_qp.conj() * xq;
        a.rows[q][col] = g_pq.conj() * xp + g_qq.conj() * xq;
    }
    a.rows[p][q] = ZERO;
    a.rows[q][p] = ZERO;
}

/// A two-qubit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix4 {
    mat: Matrix4,
}

impl DensityMatrix4 {
    pub fn new(mat: Matrix4) -> Result<Self> {
        validate_density(
            &mat,
            tolerance::DENSITY_HERMITIAN,
            tolerance::DENSITY_TRACE,
            tolerance::DENSITY_MIN_EIGENVALUE,
        )?;
        Ok(Self { mat })
    }

    /// Validates with one tolerance shared by all three invariants.
    pub fn with_tolerance(mat: Matrix4, tol: f64) -> Result<Self> {
        validate_density(&mat, tol, tol, -tol)?;
        Ok(Self { mat })
    }

    /// For matrices that are density matrices by construction (e.g. a unitary
    /// conjugation of one).
    pub(crate) fn new_unchecked(mat: Matrix4) -> Self {
        Self { mat }
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix4 {
        self.mat
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        // Hermiticity holds by construction.
        hermitian_eigenvalues(&self.mat).expect("density matrix is Hermitian")
    }

    /// Re-checks all invariants at the default tolerances.
    pub fn validate(&self) -> Result<()> {
        validate_density(
            &self.mat,
            tolerance::DENSITY_HERMITIAN,
            tolerance::DENSITY_TRACE,
            tolerance::DENSITY_MIN_EIGENVALUE,
        )
    }
}

fn validate_density(m: &Matrix4, herm_tol: f64, trace_tol: f64, min_eig: f64) -> Result<()> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = m.hermiticity_defect();
    if defect > herm_tol {
        return Err(Error::ValidationFailed(format!(
            "Hermiticity defect {defect:e} exceeds {herm_tol:e}"
        )));
    }
    let tr = m.trace();
    if (tr - ONE).norm() > trace_tol {
        return Err(Error::ValidationFailed(format!(
            "trace {tr} differs from 1 by more than {trace_tol:e}"
        )));
    }
    let eig = hermitian_eigenvalues(m)?;
    if eig[0] < min_eig {
        return Err(Error::ValidationFailed(format!(
            "eigenvalue {} below {min_eig:e}",
            eig[0]
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random2(rng: &mut impl Rng) -> Matrix2 {
        Matrix2::from_rows(std::array::from_fn(|_| {
            std::array::from_fn(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        }))
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        assert_eq!(
            tensor_product(&Matrix2::identity(), &Matrix2::identity()),
            Matrix4::identity()
        );
    }

    #[test]
    fn tensor_of_diagonals() {
        let d = Matrix2::diagonal([I, -I]);
        let expected = Matrix4::diagonal([c(-1.0, 0.0), ONE, ONE, c(-1.0, 0.0)]);
        assert!(tensor_product(&d, &d).frobenius_distance(&expected) < 1e-15);
    }

    #[test]
    fn mixed_product_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let (a, b, cm, d) = (
                random2(&mut rng),
                random2(&mut rng),
                random2(&mut rng),
                random2(&mut rng),
            );
            let lhs = tensor_product(&a, &b) * tensor_product(&cm, &d);
            let rhs = tensor_product(&(a * cm), &(b * d));
            assert!((lhs - rhs).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn adjoint_cases() {
        assert_eq!(Matrix2::identity().adjoint(), Matrix2::identity());
        let m = Matrix2::from_rows([[ZERO, ONE], [-ONE, ZERO]]);
        assert_eq!(m.adjoint(), Matrix2::from_rows([[ZERO, -ONE], [ONE, ZERO]]));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = random2(&mut rng);
        assert_eq!(r.adjoint().adjoint(), r);
    }

    #[test]
    fn trace_of_tensor_factorises() {
        assert_eq!(Matrix4::identity().trace(), c(4.0, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (a, b) = (random2(&mut rng), random2(&mut rng));
            let lhs = tensor_product(&a, &b).trace();
            assert!((lhs - a.trace() * b.trace()).norm() <= 1e-12);
        }
    }

    #[test]
    fn trace_of_product_matches_explicit_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = tensor_product(&random2(&mut rng), &random2(&mut rng));
        let b = tensor_product(&random2(&mut rng), &random2(&mut rng));
        assert!((a.trace_of_product(&b) - (a * b).trace()).norm() < 1e-12);
    }

    #[test]
    fn frobenius_cases() {
        let id = Matrix4::identity();
        assert_eq!(frobenius_distance(&id, &id), 0.0);
        assert_eq!(frobenius_distance(&id, &Matrix4::zeros()), 2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = tensor_product(&random2(&mut rng), &random2(&mut rng));
        let b = tensor_product(&random2(&mut rng), &random2(&mut rng));
        assert_eq!(frobenius_distance(&a, &b), frobenius_distance(&b, &a));
    }

    #[test]
    fn identity_eigenvalues() {
        assert_eq!(
            Matrix4::identity().hermitian_eigenvalues().unwrap(),
            [1.0; 4]
        );
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let m = Matrix4::from_rows({
            let mut r = [[ZERO; 4]; 4];
            r[0][1] = ONE;
            r
        });
        assert!(matches!(
            m.hermitian_eigenvalues(),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn eigenvalues_of_complex_two_by_two_block() {
        // [[a, b], [conj b, d]] has eigenvalues (a+d)/2 +- sqrt(((a-d)/2)^2 + |b|^2).
        let b = c(0.3, -0.4);
        let mut rows = [[ZERO; 4]; 4];
        rows[0][0] = c(1.0, 0.0);
        rows[3][3] = c(2.0, 0.0);
        rows[0][3] = b;
        rows[3][0] = b.conj();
        rows[1][1] = c(-0.5, 0.0);
        rows[2][2] = c(0.25, 0.0);
        let eig = Matrix4::from_rows(rows).hermitian_eigenvalues().unwrap();
        let rad = (0.25f64 + b.norm_sqr()).sqrt();
        let expected = [-0.5, 0.25, 1.5 - rad, 1.5 + rad];
        let mut sorted = expected;
        sorted.sort_by(f64::total_cmp);
        for (e, x) in eig.iter().zip(sorted) {
            assert!((e - x).abs() < 1e-12, "{eig:?} vs {sorted:?}");
        }
    }

    #[test]
    fn density_rejects_bad_trace_and_negative_eigenvalue() {
        let half = Matrix4::identity() * 0.5;
        assert!(matches!(
            DensityMatrix4::new(half),
            Err(Error::ValidationFailed(_))
        ));
        let neg = Matrix4::diagonal([c(1.5, 0.0), c(-0.5, 0.0), ZERO, ZERO]);
        assert!(matches!(
            DensityMatrix4::new(neg),
            Err(Error::ValidationFailed(_))
        ));
        let nan = Matrix4::diagonal([c(f64::NAN, 0.0), ONE, ZERO, ZERO]);
        assert_eq!(Matrix4::try_from_rows(*nan.rows()), Err(Error::NonFinite));
    }
}
