//! Dirichlet forms `Gamma = (1/n) F diag(gamma) F^{-1}`, the entropy
//! functional and the log-Sobolev objective.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::config::Tolerances;
use crate::dft::root_of_unity;
use crate::error::{check_len, invalid, Error, Result};
use crate::weights::Weight;

/// A vector with nonnegative finite entries.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointVector(Vec<f64>);

impl PointVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if let Some(j) = entries.iter().position(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidInput(format!(
                "entry {j} is {} (must be finite and nonnegative)",
                entries[j]
            )));
        }
        Ok(Self(entries))
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::new(vec![c; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(&self.0)
    }
}

impl AsRef<[f64]> for PointVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// The circulant matrix of a weight together with its spectrum.
#[derive(Clone, Debug)]
pub struct SpectralForm {
    gamma: Weight,
    matrix: DMatrix<f64>,
    eigenvalues: Vec<f64>,
    symmetric: bool,
    max_imaginary: f64,
    complex_matrix: Option<DMatrix<Complex64>>,
}

/// Builds the form with the default tolerances.
pub fn build_form(gamma: &Weight) -> Result<SpectralForm> {
    build_form_with(gamma, &Tolerances::default())
}

/// Builds the form.
///
/// For a symmetric weight the matrix is real up to rounding; an imaginary
/// part above `tol.imaginary_part` is an error. For a non-symmetric weight
/// the real part (the symmetrized form) is used, `is_symmetric()` reports
/// false and the complex matrix is kept.
pub fn build_form_with(gamma: &Weight, tol: &Tolerances) -> Result<SpectralForm> {
    let n = gamma.n();
    let g = gamma.to_f64_vec();
    let scale = 1.0 / (n * n) as f64;
    // Entry (j, l) depends only on d = (j - l) mod n.
    let row: Vec<Complex64> = (0..n)
        .map(|d| {
            g.iter()
                .enumerate()
                .map(|(k, &gk)| root_of_unity(n, (k * d) % n) * gk)
                .sum::<Complex64>()
                * scale
        })
        .collect();
    let max_imaginary = row.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let symmetric = gamma.is_symmetric();
    if symmetric && max_imaginary > tol.imaginary_part {
        return Err(Error::Numerical(format!(
            "imaginary part {max_imaginary:e} in the form of a symmetric weight"
        )));
    }
    let matrix = DMatrix::from_fn(n, n, |j, l| row[(j + n - l) % n].re);
    let complex_matrix = (!symmetric).then(|| DMatrix::from_fn(n, n, |j, l| row[(j + n - l) % n]));
    let eigenvalues = g.iter().map(|v| v / n as f64).collect();
    Ok(SpectralForm {
        gamma: gamma.clone(),
        matrix,
        eigenvalues,
        symmetric,
        max_imaginary,
        complex_matrix,
    })
}

impl SpectralForm {
    pub fn n(&self) -> usize {
        self.gamma.n()
    }

    pub fn gamma(&self) -> &Weight {
        &self.gamma
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `gamma(k) / n`, indexed by frequency; the eigenvector of entry `k`
    /// is the k-th Fourier character.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Largest imaginary magnitude seen before taking real parts.
    pub fn max_imaginary(&self) -> f64 {
        self.max_imaginary
    }

    /// The Hermitian matrix, kept only for non-symmetric weights.
    pub fn complex_matrix(&self) -> Option<&DMatrix<Complex64>> {
        self.complex_matrix.as_ref()
    }

    /// `Gamma v`. Panics on a length mismatch.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n(), "vector length must equal n");
        let n = self.n();
        (0..n)
            .map(|j| (0..n).map(|l| self.matrix[(j, l)] * v[l]).sum())
            .collect()
    }

    /// `<v, Gamma v>`. Panics on a length mismatch.
    pub fn quadratic(&self, v: &[f64]) -> f64 {
        self.apply(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// `2 <v, Gamma v> - H_n[v]` for a nonzero vector; no validation
    /// beyond the length check.
    pub fn objective(&self, v: &[f64]) -> f64 {
        2.0 * self.quadratic(v) - entropy_raw(v)
    }

    /// Gradient of [`Self::objective`].
    pub fn gradient(&self, v: &[f64]) -> Vec<f64> {
        let g = self.apply(v);
        let eg = entropy_gradient_raw(v);
        g.iter().zip(eg).map(|(a, b)| 4.0 * a - b).collect()
    }

    /// Hessian of [`Self::objective`] at a vector with positive entries.
    pub fn hessian(&self, v: &[f64]) -> DMatrix<f64> {
        let n = self.n();
        let s = norm_sq(v);
        let nf = n as f64;
        let mut h = &self.matrix * 4.0;
        for i in 0..n {
            for j in 0..n {
                h[(i, j)] += 4.0 * v[i] * v[j] / (nf * s);
            }
            let li = if v[i] > 0.0 {
                (nf * v[i] * v[i] / s).ln()
            } else {
                f64::NEG_INFINITY
            };
            h[(i, i)] -= 2.0 / nf * (li + 2.0);
        }
        h
    }

    fn check(&self, lambda: &PointVector) -> Result<()> {
        check_len(self.n(), lambda.len())
    }
}

/// `<lambda, Gamma lambda>`.
pub fn dirichlet(form: &SpectralForm, lambda: &PointVector) -> Result<f64> {
    form.check(lambda)?;
    Ok(form.quadratic(lambda.as_slice()))
}

/// `H_n[lambda] = (1/n) sum lambda_k^2 log(n lambda_k^2 / |lambda|^2)`.
pub fn entropy(lambda: &PointVector) -> Result<f64> {
    nonzero(lambda)?;
    Ok(entropy_raw(lambda.as_slice()))
}

/// `2 <lambda, Gamma lambda> - H_n[lambda]`.
pub fn lsi_objective(form: &SpectralForm, lambda: &PointVector) -> Result<f64> {
    form.check(lambda)?;
    nonzero(lambda)?;
    Ok(form.objective(lambda.as_slice()))
}

/// Gradient of [`lsi_objective`]; the entropy part of a zero coordinate is 0.
pub fn lsi_gradient(form: &SpectralForm, lambda: &PointVector) -> Result<Vec<f64>> {
    form.check(lambda)?;
    nonzero(lambda)?;
    Ok(form.gradient(lambda.as_slice()))
}

fn nonzero(lambda: &PointVector) -> Result<()> {
    if lambda.is_empty() || lambda.as_slice().iter().all(|&x| x == 0.0) {
        Err(invalid("entropy of the zero vector"))
    } else {
        Ok(())
    }
}

pub(crate) fn entropy_raw(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let s = norm_sq(v);
    v.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x * (n * x * x / s).ln())
        .sum::<f64>()
        / n
}

pub(crate) fn entropy_gradient_raw(v: &[f64]) -> Vec<f64> {
    let n = v.len() as f64;
    let s = norm_sq(v);
    v.iter()
        .map(|&x| {
            if x > 0.0 {
                2.0 * x / n * (n * x * x / s).ln()
            } else {
                0.0
            }
        })
        .collect()
}

/// The three pieces of `H_2n` for the interleaving of `a` and `b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntropySplit {
    /// `(1/2n) sum a_i^2 log(n a_i^2 / |a|^2)`.
    pub inner_a: f64,
    /// Same for `b`.
    pub inner_b: f64,
    /// `(1/2n) (|a|^2 log(2|a|^2/S) + |b|^2 log(2|b|^2/S))`, `S = |a|^2 + |b|^2`.
    pub outer: f64,
}

impl EntropySplit {
    pub fn total(&self) -> f64 {
        self.inner_a + self.inner_b + self.outer
    }
}

pub fn entropy_split(a: &PointVector, b: &PointVector) -> Result<EntropySplit> {
    check_len(a.len(), b.len())?;
    let n = a.len() as f64;
    let sa = a.norm_sq();
    let sb = b.norm_sq();
    let s = sa + sb;
    if !(s > 0.0) {
        return Err(invalid("entropy split of a zero vector"));
    }
    let half = |v: &[f64], sv: f64| if sv > 0.0 { entropy_raw(v) / 2.0 } else { 0.0 };
    let term = |sv: f64| {
        if sv > 0.0 {
            sv * (2.0 * sv / s).ln()
        } else {
            0.0
        }
    };
    Ok(EntropySplit {
        inner_a: half(a.as_slice(), sa),
        inner_b: half(b.as_slice(), sb),
        outer: (term(sa) + term(sb)) / (2.0 * n),
    })
}

/// `(j/n) -> cos(2 pi j / n)` when the value is rational.
fn rational_cos(m: usize, n: usize) -> Option<Rational64> {
    let m = m % n;
    let r = |a, b| Rational64::new(a, b);
    // reduce m/n
    let g = gcd(m, n);
    match (m / g, n / g) {
        (0, _) => Some(r(1, 1)),
        (1, 2) => Some(r(-1, 1)),
        (1, 4) | (3, 4) => Some(r(0, 1)),
        (1, 3) | (2, 3) => Some(r(-1, 2)),
        (1, 6) | (5, 6) => Some(r(1, 2)),
        _ => None,
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact rational matrix of a symmetric weight on Z_n for n in {1,2,3,4,6},
/// where every `cos(2 pi k / n)` is rational. `None` otherwise.
pub fn exact_form(gamma: &Weight) -> Option<Vec<Vec<Rational64>>> {
    let n = gamma.n();
    if !gamma.is_symmetric() {
        return None;
    }
    let nn = Rational64::from_integer((n * n) as i64);
    let mut row = Vec::with_capacity(n);
    for d in 0..n {
        let mut acc = Rational64::zero();
        for k in 0..n {
            acc += gamma.value(k) * rational_cos(k * d, n)?;
        }
        row.push(acc / nn);
    }
    Some(
        (0..n)
            .map(|j| (0..n).map(|l| row[(j + n - l) % n]).collect())
            .collect(),
    )
}

/// Symmetric eigenvalues of the stored matrix, ascending.
pub fn numerical_spectrum(form: &SpectralForm) -> Vec<f64> {
    let mut ev: Vec<f64> = form
        .matrix
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `<lambda, Gamma lambda>` via `(1/n^2) sum gamma_k |lambda_hat_k|^2`.
pub fn dirichlet_fourier(gamma: &Weight, lambda: &[f64]) -> Result<f64> {
    check_len(gamma.n(), lambda.len())?;
    let hat = crate::dft::dft_real(lambda)?;
    let n = gamma.n() as f64;
    Ok(hat
        .iter()
        .enumerate()
        .map(|(k, z)| gamma.value_f64(k) * z.norm_sqr())
        .sum::<f64>()
        / (n * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{positive_sphere, stream_rng};
    use crate::weights::{phi4, phi6, word_length};
    use approx::assert_relative_eq;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn phi6_matrix_entries() {
        let f = build_form(&phi6()).unwrap();
        let m = f.matrix();
        assert_relative_eq!(m[(0, 0)], 7.0 / 36.0, epsilon = 1e-15);
        assert_relative_eq!(m[(0, 1)], -1.0 / 18.0, epsilon = 1e-15);
        assert_relative_eq!(m[(0, 3)], 1.0 / 36.0, epsilon = 1e-15);
        let e = exact_form(&phi6()).unwrap();
        assert_eq!(e[0][0], r(7, 36));
        assert_eq!(e[0][1], r(-1, 18));
        assert_eq!(e[0][2], r(-1, 18));
        assert_eq!(e[0][3], r(1, 36));
    }

    #[test]
    fn phi4_matrix_entries() {
        let e = exact_form(&phi4()).unwrap();
        assert_eq!(e[0], vec![r(9, 40), r(-1, 10), r(-1, 40), r(-1, 10)]);
    }

    #[test]
    fn two_point_matrix() {
        let f = build_form(&word_length(2).unwrap()).unwrap();
        let m = f.matrix();
        assert_eq!(
            [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]],
            [0.25, -0.25, -0.25, 0.25]
        );
        let v = PointVector::new(vec![1.0, 0.0]).unwrap();
        assert_relative_eq!(dirichlet(&f, &v).unwrap(), 0.25, epsilon = 1e-15);
        let want = 0.5 - 0.5 * 2f64.ln();
        assert_relative_eq!(lsi_objective(&f, &v).unwrap(), want, epsilon = 1e-15);
    }

    #[test]
    fn exact_and_float_forms_agree() {
        for w in [
            phi4(),
            phi6(),
            word_length(2).unwrap(),
            word_length(3).unwrap(),
        ] {
            let f = build_form(&w).unwrap();
            let e = exact_form(&w).unwrap();
            for (j, row) in e.iter().enumerate() {
                for (l, v) in row.iter().enumerate() {
                    assert!((f.matrix()[(j, l)] - crate::weights::to_f64(*v)).abs() < 1e-15);
                }
            }
        }
        assert!(exact_form(&word_length(5).unwrap()).is_none());
    }

    #[test]
    fn circulant_and_symmetric() {
        let f = build_form(&word_length(9).unwrap()).unwrap();
        let m = f.matrix();
        for j in 0..9 {
            for l in 0..9 {
                assert!((m[(j, l)] - m[(l, j)]).abs() < 1e-12);
                assert!((m[(j, l)] - m[((j + 1) % 9, (l + 1) % 9)]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn non_symmetric_weight_is_flagged() {
        let w = Weight::from_integers("skew", &[0, 1, 3]).unwrap();
        let f = build_form(&w).unwrap();
        assert!(!f.is_symmetric());
        assert!(f.complex_matrix().is_some());
        assert!(f.max_imaginary() > 1e-3);
        let m = f.matrix();
        assert!((m[(0, 1)] - m[(1, 0)]).abs() < 1e-15);
    }

    #[test]
    fn spectrum_matches_weight() {
        for w in [phi6(), phi4(), word_length(11).unwrap()] {
            let f = build_form(&w).unwrap();
            let mut want = f.eigenvalues().to_vec();
            want.sort_by(f64::total_cmp);
            let got = numerical_spectrum(&f);
            for (a, b) in want.iter().zip(&got) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn entropy_examples() {
        assert!(
            entropy(&PointVector::constant(5, 0.3).unwrap())
                .unwrap()
                .abs()
                < 1e-16
        );
        let v = PointVector::new(vec![1.0, 0.0]).unwrap();
        assert_relative_eq!(entropy(&v).unwrap(), 0.5 * 2f64.ln(), epsilon = 1e-15);
        assert!(entropy(&PointVector::new(vec![0.0; 3]).unwrap()).is_err());
    }

    #[test]
    fn entropy_is_two_homogeneous() {
        let mut rng = stream_rng(5, 0);
        for _ in 0..20 {
            let v = positive_sphere(&mut rng, 6);
            let h = entropy_raw(&v);
            for a in [0.5, 2.0, 7.0] {
                let w: Vec<f64> = v.iter().map(|x| a * x).collect();
                assert!((entropy_raw(&w) - a * a * h).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fourier_side_agrees() {
        let f = build_form(&phi6()).unwrap();
        let mut rng = stream_rng(6, 0);
        for _ in 0..50 {
            let v = positive_sphere(&mut rng, 6);
            let direct = f.quadratic(&v);
            let fourier = dirichlet_fourier(&phi6(), &v).unwrap();
            assert!((direct - fourier).abs() < 1e-12);
        }
    }

    #[test]
    fn split_examples() {
        let a = PointVector::new(vec![0.3, 0.1, 0.7]).unwrap();
        let s = entropy_split(&a, &a).unwrap();
        assert!(s.outer.abs() < 1e-16);

        let a = PointVector::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let b = PointVector::new(vec![0.0; 4]).unwrap();
        let s = entropy_split(&a, &b).unwrap();
        assert_eq!(s.inner_b, 0.0);
        let lam = crate::dft::interleave(a.as_slice(), b.as_slice()).unwrap();
        assert!((s.total() - entropy_raw(&lam)).abs() < 1e-12);
        assert!(entropy_split(&b, &b).is_err());
    }

    #[test]
    fn gradient_matches_differences() {
        let f = build_form(&phi4()).unwrap();
        let mut rng = stream_rng(7, 0);
        for _ in 0..20 {
            let v: Vec<f64> = positive_sphere(&mut rng, 4)
                .iter()
                .map(|x| x + 0.05)
                .collect();
            let g = f.gradient(&v);
            for i in 0..4 {
                let h = 1e-6;
                let mut p = v.clone();
                let mut m = v.clone();
                p[i] += h;
                m[i] -= h;
                let fd = (f.objective(&p) - f.objective(&m)) / (2.0 * h);
                assert!((fd - g[i]).abs() <= 1e-5 * g[i].abs().max(1e-3));
            }
        }
    }

    #[test]
    fn hessian_matches_gradient_differences() {
        let f = build_form(&phi6()).unwrap();
        let v = vec![0.2, 0.5, 0.3, 0.6, 0.1, 0.4];
        let h = f.hessian(&v);
        for j in 0..6 {
            let e = 1e-6;
            let mut p = v.clone();
            let mut m = v.clone();
            p[j] += e;
            m[j] -= e;
            let gp = f.gradient(&p);
            let gm = f.gradient(&m);
            for i in 0..6 {
                let fd = (gp[i] - gm[i]) / (2.0 * e);
                assert!((fd - h[(i, j)]).abs() < 1e-6, "({i},{j})");
            }
        }
    }

    #[test]
    fn dimension_errors() {
        let f = build_form(&phi4()).unwrap();
        let v = PointVector::new(vec![1.0; 3]).unwrap();
        assert!(dirichlet(&f, &v).is_err());
        assert!(PointVector::new(vec![-1.0]).is_err());
        assert!(PointVector::new(vec![f64::NAN]).is_err());
    }
}
