//! Discrete Fourier transform on Z_n.
//!
//! Convention: `x_hat[k] = sum_j x[j] w^(j k)` with `w = exp(2 pi i / n)`.
//! Powers of `w` are reduced modulo `n` before the trigonometric call so
//! that `F_n` is reproduced to the last bit regardless of `j k`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};

/// `exp(2 pi i m / n)`.
pub fn root_of_unity(n: usize, m: usize) -> Complex64 {
    let m = m % n;
    if m == 0 {
        return Complex64::new(1.0, 0.0);
    }
    // exact values on the axes
    if 4 * m == n {
        return Complex64::new(0.0, 1.0);
    }
    if 2 * m == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * m == 3 * n {
        return Complex64::new(0.0, -1.0);
    }
    let theta = 2.0 * PI * m as f64 / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// The unnormalized matrix `F_n` with entries `w^(j k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl FourierMatrix {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("Fourier matrix of order 0"));
        }
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                entries.push(root_of_unity(n, (j * k) % n));
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.n + k]
    }

    /// `F_n x`.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        crate::error::check_len(self.n, x.len())?;
        Ok((0..self.n)
            .map(|k| {
                let row = &self.entries[k * self.n..(k + 1) * self.n];
                row.iter().zip(x).map(|(w, v)| w * v).sum()
            })
            .collect())
    }

    /// `F_n^{-1} x = (1/n) conj(F_n) x`.
    pub fn apply_inverse(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        crate::error::check_len(self.n, x.len())?;
        let scale = 1.0 / self.n as f64;
        Ok((0..self.n)
            .map(|j| {
                let row = &self.entries[j * self.n..(j + 1) * self.n];
                row.iter()
                    .zip(x)
                    .map(|(w, v)| w.conj() * v)
                    .sum::<Complex64>()
                    * scale
            })
            .collect())
    }

    /// Largest entry of `|(1/n) F^H F - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let s: Complex64 = (0..n)
                    .map(|k| self.entry(k, a).conj() * self.entry(k, b))
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((s / n as f64 - target).norm());
            }
        }
        worst
    }
}

/// `x_hat = F_n x`.
pub fn dft_forward(x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.is_empty() {
        return Err(invalid("DFT of an empty vector"));
    }
    let n = x.len();
    Ok((0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, v)| root_of_unity(n, (j * k) % n) * v)
                .sum()
        })
        .collect())
}

/// `x = F_n^{-1} x_hat`.
pub fn dft_inverse(x_hat: &[Complex64]) -> Result<Vec<Complex64>> {
    if x_hat.is_empty() {
        return Err(invalid("inverse DFT of an empty vector"));
    }
    let n = x_hat.len();
    let scale = 1.0 / n as f64;
    Ok((0..n)
        .map(|j| {
            x_hat
                .iter()
                .enumerate()
                .map(|(k, v)| root_of_unity(n, (j * k) % n).conj() * v)
                .sum::<Complex64>()
                * scale
        })
        .collect())
}

/// DFT of a real vector.
pub fn dft_real(x: &[f64]) -> Result<Vec<Complex64>> {
    let z: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    dft_forward(&z)
}

/// Twiddle factors `D_k = exp(i pi k / n)` joining two `n`-point transforms
/// into one of length `2n`.
///
/// Under the `+w` convention used throughout, the odd samples of an
/// interleaved vector pick up `w_{2n}^k = exp(+i pi k / n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwiddleDiagonal {
    n: usize,
    entries: Vec<Complex64>,
}

impl TwiddleDiagonal {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("twiddle diagonal of order 0"));
        }
        let entries = (0..n).map(|k| root_of_unity(2 * n, k)).collect();
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }
}

/// `(a_0, b_0, a_1, b_1, ...)`.
pub fn interleave(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "halves differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(b).flat_map(|(&x, &y)| [x, y]).collect())
}

/// Splits an interleaved vector back into its even and odd samples.
pub fn deinterleave(lambda: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if lambda.len() % 2 != 0 {
        return Err(invalid("odd-length vector cannot be deinterleaved"));
    }
    let a = lambda.iter().step_by(2).copied().collect();
    let b = lambda.iter().skip(1).step_by(2).copied().collect();
    Ok((a, b))
}

/// DFT of the interleaving of `a` and `b`, assembled from the two
/// half-length transforms.
pub fn cooley_tukey_split(a: &[f64], b: &[f64]) -> Result<Vec<Complex64>> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "halves differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(invalid("empty halves"));
    }
    let n = a.len();
    let a_hat = dft_real(a)?;
    let b_hat = dft_real(b)?;
    let d = TwiddleDiagonal::new(n)?;
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for k in 0..n {
        let t = d.entries[k] * b_hat[k];
        out[k] = a_hat[k] + t;
        out[n + k] = a_hat[k] - t;
    }
    Ok(out)
}
