//! The heat semigroup `P_t = exp(-t A_gamma)` and its hypercontractive times.
//!
//! `A_gamma` multiplies the k-th Fourier coefficient by `gamma(k)`. Norms are
//! taken against the uniform probability measure on Z_n.

use num_complex::Complex64;
use serde::Serialize;
use std::io::Write;

use crate::config::{Defaults, Tolerances};
use crate::dft::{dft_forward, dft_inverse};
use crate::error::{check_len, invalid, Result};
use crate::par;
use crate::sampling::stream_rng;
use crate::weights::Weight;

/// `P_t` for a weight on Z_n.
#[derive(Clone, Debug)]
pub struct SemigroupOperator {
    weight: Weight,
    t: f64,
    multipliers: Vec<f64>,
}

impl SemigroupOperator {
    pub fn new(weight: &Weight, t: f64) -> Result<Self> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(invalid(format!(
                "semigroup time must be finite and >= 0, got {t}"
            )));
        }
        let multipliers = weight.to_f64_vec().iter().map(|g| (-t * g).exp()).collect();
        Ok(Self {
            weight: weight.clone(),
            t,
            multipliers,
        })
    }

    pub fn n(&self) -> usize {
        self.weight.n()
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// `P_t` as a dense row-major matrix: row `j` is `P_t` applied to the
    /// j-th coordinate vector, transposed.
    pub fn kernel_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut m = vec![vec![0.0; n]; n];
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let col = multiply(&self.multipliers, &e);
            for (i, v) in col.into_iter().enumerate() {
                m[i][j] = v;
            }
        }
        m
    }
}

fn multiply(mult: &[f64], f: &[f64]) -> Vec<f64> {
    let z: Vec<Complex64> = f.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut hat = dft_forward(&z).expect("nonempty");
    for (h, m) in hat.iter_mut().zip(mult) {
        *h *= m;
    }
    dft_inverse(&hat)
        .expect("nonempty")
        .iter()
        .map(|c| c.re)
        .collect()
}

/// `F^{-1} diag(exp(-t gamma)) F f`, real part.
pub fn apply_semigroup(op: &SemigroupOperator, f: &[f64]) -> Result<Vec<f64>> {
    check_len(op.n(), f.len())?;
    Ok(multiply(&op.multipliers, f))
}

/// `A_gamma f`, the Fourier multiplier by `gamma`.
pub fn apply_generator(weight: &Weight, f: &[f64]) -> Result<Vec<f64>> {
    check_len(weight.n(), f.len())?;
    Ok(multiply(&weight.to_f64_vec(), f))
}

/// `((1/n) sum |f_j|^p)^(1/p)`.
pub fn lp_norm(f: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(invalid(format!("lp_norm needs finite p >= 1, got {p}")));
    }
    if f.is_empty() {
        return Err(invalid("lp_norm of an empty vector"));
    }
    let n = f.len() as f64;
    Ok((f.iter().map(|v| v.abs().powf(p)).sum::<f64>() / n).powf(1.0 / p))
}

/// Settings for [`max_ratio_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MaxRatioOptions {
    pub starts: usize,
    pub seed: u64,
    /// Search over all real `f` instead of `f >= 0`.
    pub signed: bool,
    pub max_iter: usize,
}

impl Default for MaxRatioOptions {
    fn default() -> Self {
        Self {
            starts: Defaults::default().hyper_starts,
            seed: 0,
            signed: false,
            max_iter: 2000,
        }
    }
}

/// Best ratio found and the function attaining it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioMaximum {
    pub ratio: f64,
    /// Normalized to `|f|_p = 1`.
    pub extremizer: Vec<f64>,
    pub start: usize,
    /// Whether the ascent from the best start met its stopping rule.
    pub converged: bool,
}

/// `|P_t f|_q / |f|_p` maximized over `f >= 0` by multi-start ascent.
/// The result is a lower bound on the operator norm and never below 1.
pub fn max_ratio(weight: &Weight, t: f64, p: f64, q: f64, starts: usize) -> Result<f64> {
    let opts = MaxRatioOptions {
        starts,
        ..MaxRatioOptions::default()
    };
    Ok(max_ratio_with(weight, t, p, q, &opts)?.ratio)
}

fn check_exponents(p: f64, q: f64) -> Result<()> {
    if !(p > 1.0 && q >= p && q.is_finite()) {
        return Err(invalid(format!(
            "need 1 < p <= q < inf, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

struct Ratio {
    kernel: Vec<Vec<f64>>,
    p: f64,
    q: f64,
    signed: bool,
}

impl Ratio {
    fn f_of(&self, u: &[f64]) -> Vec<f64> {
        if self.signed {
            u.to_vec()
        } else {
            u.iter().map(|v| v * v).collect()
        }
    }

    /// `log(|P f|_q / |f|_p)` up to the constant `(1/p - 1/q) log n`, and its
    /// gradient in `u`.
    fn value_grad(&self, u: &[f64]) -> (f64, Vec<f64>) {
        let f = self.f_of(u);
        let g: Vec<f64> = self.kernel.iter().map(|row| dot(row, &f)).collect();
        let sq: f64 = g.iter().map(|v| v.abs().powf(self.q)).sum();
        let sp: f64 = f.iter().map(|v| v.abs().powf(self.p)).sum();
        let value = sq.ln() / self.q - sp.ln() / self.p;
        let wq: Vec<f64> = g
            .iter()
            .map(|v| v.abs().powf(self.q - 1.0) * v.signum())
            .collect();
        // kernel is symmetric for symmetric weights; use the transpose anyway
        let n = f.len();
        let mut grad = vec![0.0; n];
        for (i, row) in self.kernel.iter().enumerate() {
            for j in 0..n {
                grad[j] += row[j] * wq[i] / sq;
            }
        }
        for j in 0..n {
            grad[j] -= f[j].abs().powf(self.p - 1.0) * f[j].signum() / sp;
            if !self.signed {
                grad[j] *= 2.0 * u[j];
            }
        }
        (value, grad)
    }

    fn offset(&self, n: usize) -> f64 {
        (1.0 / self.p - 1.0 / self.q) * (n as f64).ln()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// BFGS ascent. Returns the final point, its value and whether the stopping
/// rule fired before `max_iter`.
fn ascend(obj: &Ratio, mut u: Vec<f64>, max_iter: usize) -> (Vec<f64>, f64, bool) {
    let n = u.len();
    let mut h: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect())
        .collect();
    let (mut val, mut grad) = obj.value_grad(&u);
    let mut stalls = 0;
    for _ in 0..max_iter {
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if gnorm <= 1e-13 || stalls >= 4 {
            return (u, val, true);
        }
        let mut dir: Vec<f64> = h.iter().map(|row| dot(row, &grad)).collect();
        if dot(&dir, &grad) <= 0.0 {
            // lost ascent; restart from steepest ascent
            for (i, row) in h.iter_mut().enumerate() {
                row.iter_mut()
                    .enumerate()
                    .for_each(|(j, v)| *v = f64::from(u8::from(i == j)));
            }
            dir = grad.clone();
        }
        let slope = dot(&dir, &grad);
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> = u.iter().zip(&dir).map(|(a, d)| a + step * d).collect();
            let (tv, tg) = obj.value_grad(&trial);
            if tv.is_finite() && tv >= val + 1e-4 * step * slope {
                accepted = Some((trial, tv, tg));
                break;
            }
            step *= 0.5;
        }
        let Some((nu, nval, ngrad)) = accepted else {
            return (u, val, true);
        };
        let s: Vec<f64> = nu.iter().zip(&u).map(|(a, b)| a - b).collect();
        // ascent on val is descent on -val
        let y: Vec<f64> = grad.iter().zip(&ngrad).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-300 {
            let hy: Vec<f64> = h.iter().map(|row| dot(row, &y)).collect();
            let yhy = dot(&y, &hy);
            let rho = 1.0 / sy;
            for i in 0..n {
                for j in 0..n {
                    h[i][j] +=
                        (1.0 + yhy * rho) * rho * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
                }
            }
        }
        stalls = if nval - val <= 1e-16 * nval.abs().max(1e-300) {
            stalls + 1
        } else {
            0
        };
        // keep the scale fixed; the objective is homogeneous of degree 0
        let scale = nu.iter().map(|v| v * v).sum::<f64>().sqrt() / (n as f64).sqrt();
        u = nu.iter().map(|v| v / scale).collect();
        val = nval;
        grad = ngrad.iter().map(|g| g * scale).collect();
        for row in h.iter_mut() {
            row.iter_mut().for_each(|v| *v /= scale * scale);
        }
    }
    (u, val, false)
}

/// Initial `u` for start `index`: the constant, then cosine and sine bumps of
/// several sizes, then two-level functions, then random draws.
fn start_point(n: usize, index: usize, seed: u64, signed: bool) -> Vec<f64> {
    use rand::Rng;
    use std::f64::consts::TAU;
    let sizes = [0.05, 0.2, 0.5, 0.9];
    let levels = [0.5, 3.0, 20.0];
    let modes = n / 2;
    let waves = 2 * modes * sizes.len();
    let to_u = |f: Vec<f64>| -> Vec<f64> {
        if signed {
            f
        } else {
            f.iter().map(|v| v.max(0.0).sqrt()).collect()
        }
    };
    if index == 0 {
        return vec![1.0; n];
    }
    let i = index - 1;
    if i < waves {
        let k = 1 + i / (2 * sizes.len());
        let eps = sizes[i % sizes.len()];
        let sine = (i / sizes.len()) % 2 == 1;
        return to_u(
            (0..n)
                .map(|j| {
                    let ang = TAU * (k * j) as f64 / n as f64;
                    1.0 + eps * if sine { ang.sin() } else { ang.cos() }
                })
                .collect(),
        );
    }
    let i = i - waves;
    if i < (n - 1) * levels.len() {
        let m = 1 + i / levels.len();
        let a = levels[i % levels.len()];
        return to_u((0..n).map(|j| if j < m { 1.0 + a } else { 1.0 }).collect());
    }
    let mut rng = stream_rng(seed, index as u64);
    (0..n)
        .map(|_| {
            let v: f64 = rng.random_range(0.05..2.0);
            if signed && rng.random_bool(0.3) {
                -v
            } else {
                v
            }
        })
        .collect()
}

pub fn max_ratio_with(
    weight: &Weight,
    t: f64,
    p: f64,
    q: f64,
    opts: &MaxRatioOptions,
) -> Result<RatioMaximum> {
    check_exponents(p, q)?;
    let op = SemigroupOperator::new(weight, t)?;
    let n = op.n();
    let obj = Ratio {
        kernel: op.kernel_matrix(),
        p,
        q,
        signed: opts.signed,
    };
    let offset = obj.offset(n);
    let starts = opts.starts.max(1);
    let best = par::map_reduce(
        starts,
        || None,
        |i| {
            let u0 = start_point(n, i, opts.seed, opts.signed);
            let (u, val, converged) = if i == 0 {
                let (v, _) = obj.value_grad(&u0);
                (u0, v, true)
            } else {
                ascend(&obj, u0, opts.max_iter)
            };
            Some((val, i, u, converged))
        },
        |a, b| match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
        },
    )
    .expect("at least one start");
    let (val, start, u, converged) = best;
    let f = obj.f_of(&u);
    let norm = lp_norm(&f, p)?;
    Ok(RatioMaximum {
        ratio: (val + offset).exp().max(1.0),
        extremizer: f.iter().map(|v| v / norm).collect(),
        start,
        converged,
    })
}

/// One bisection probe.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Probe {
    pub t: f64,
    pub max_ratio: f64,
    pub contractive: bool,
    /// Ratio within ten margins of the threshold.
    pub near_critical: bool,
    pub converged: bool,
    pub extremizer: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypTimeEstimate {
    pub n: usize,
    pub weight: String,
    pub p: f64,
    pub q: f64,
    pub t_star: f64,
    /// `(1/2) log((q - 1)/(p - 1))`.
    pub lower_bound: f64,
    pub bracket: (f64, f64),
    pub probes: Vec<Probe>,
    pub signed: bool,
    /// Set when an inner maximization did not converge.
    pub uncertain: bool,
}

pub fn estimate_optimal_time(weight: &Weight, p: f64, q: f64) -> Result<HypTimeEstimate> {
    estimate_optimal_time_with(
        weight,
        p,
        q,
        &MaxRatioOptions::default(),
        &Tolerances::default(),
    )
}

pub fn estimate_optimal_time_with(
    weight: &Weight,
    p: f64,
    q: f64,
    opts: &MaxRatioOptions,
    tol: &Tolerances,
) -> Result<HypTimeEstimate> {
    check_exponents(p, q)?;
    if !(tol.bisection_width > 0.0) {
        return Err(invalid("bisection width must be positive"));
    }
    let lower_bound = 0.5 * ((q - 1.0) / (p - 1.0)).ln();
    let mut probes = Vec::new();
    let mut probe = |t: f64| -> Result<bool> {
        let m = max_ratio_with(weight, t, p, q, opts)?;
        let threshold = 1.0 + tol.contractive_margin;
        let contractive = m.ratio <= threshold;
        probes.push(Probe {
            t,
            max_ratio: m.ratio,
            contractive,
            near_critical: (m.ratio - threshold).abs() <= 10.0 * tol.contractive_margin,
            converged: m.converged,
            extremizer: m.extremizer,
        });
        Ok(contractive)
    };
    let (mut lo, mut hi) = (0.0, 0.0);
    if !probe(0.0)? {
        hi = lower_bound.max(0.25) * 2.0;
        let mut doublings = 0;
        while !probe(hi)? {
            lo = hi;
            hi *= 2.0;
            doublings += 1;
            if doublings > 20 {
                return Err(crate::error::Error::Numerical(format!(
                    "no contractive time found below {hi}"
                )));
            }
        }
        while hi - lo > tol.bisection_width {
            let mid = 0.5 * (lo + hi);
            if probe(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    let uncertain = probes.iter().any(|p| !p.converged);
    Ok(HypTimeEstimate {
        n: weight.n(),
        weight: weight.label().to_string(),
        p,
        q,
        t_star: 0.5 * (lo + hi),
        lower_bound,
        bracket: (lo, hi),
        probes,
        signed: opts.signed,
        uncertain,
    })
}

/// Optimal `t_{2,q}` on Z_3 with the word-length weight.
pub fn z3_time_formula(q: f64) -> Result<f64> {
    if !(q > 2.0) || !q.is_finite() {
        return Err(invalid(format!("Z_3 time formula needs q > 2, got {q}")));
    }
    let (a, b) = (2.0f64 / 3.0, 1.0f64 / 3.0);
    let e = 2.0 / q - 1.0;
    let num = a * b.powf(e) - b * a.powf(e);
    let den = a.powf(2.0 / q) - b.powf(2.0 / q);
    Ok(0.5 * (num / den).ln())
}

/// `(C/4) log((q - 1)/(p - 1))`.
pub fn gross_time_from_lsi(c: f64, p: f64, q: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(invalid(format!("LSI constant must be positive, got {c}")));
    }
    check_exponents(p, q)?;
    Ok(c / 4.0 * ((q - 1.0) / (p - 1.0)).ln())
}

/// Smallest entry of the kernel of `P_t` at each time.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositivityRecord {
    pub t: f64,
    pub min_kernel_entry: f64,
    pub preserves_positivity: bool,
}

pub fn positivity_report(weight: &Weight, times: &[f64]) -> Result<Vec<PositivityRecord>> {
    times
        .iter()
        .map(|&t| {
            let op = SemigroupOperator::new(weight, t)?;
            let min = op
                .kernel_matrix()
                .iter()
                .flatten()
                .copied()
                .fold(f64::INFINITY, f64::min);
            Ok(PositivityRecord {
                t,
                min_kernel_entry: min,
                preserves_positivity: min >= -1e-12,
            })
        })
        .collect()
}

/// Rows `n, p, q, t_lo, t_hi, t_star, lower_bound`.
pub fn write_time_csv<W: Write>(estimates: &[HypTimeEstimate], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "p", "q", "t_lo", "t_hi", "t_star", "lower_bound"])?;
    for e in estimates {
        w.write_record(&[
            e.n.to_string(),
            e.p.to_string(),
            e.q.to_string(),
            e.bracket.0.to_string(),
            e.bracket.1.to_string(),
            e.t_star.to_string(),
            e.lower_bound.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
