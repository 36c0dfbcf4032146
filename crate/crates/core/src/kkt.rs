//! Stationarity systems of the log-Sobolev objective.
//!
//! On the positive sphere a minimizer of `f = 2<l, G l> - H_n[l]` satisfies
//!
//! ```text
//! 4 G l - (2/n) l log(n l^2) - 2 mu l - nu = 0,   nu >= 0,   l . nu = 0.
//! ```
//!
//! Scaling by `c = exp((n mu + log n) / 2)` absorbs `mu` and leaves the
//! system `4 G l - (4/n) l log l - nu = 0`. A negative value of `f` on the
//! sphere yields a solution of the absorbed system with `0 < |l|^2 < n`, so
//! finding none is evidence for the inequality `f >= 0`.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{check_len, Error, Result};
use crate::par;
use crate::sampling::{mixed_positive_sphere, normalize, positive_sphere, stream_rng};
use crate::spectral::{norm_sq, PointVector, SpectralForm};

/// A candidate `(lambda, nu)` for the absorbed system with its residuals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KktState {
    pub lambda: PointVector,
    pub nu: Vec<f64>,
    /// `4 G l - (4/n) l log l - nu`.
    pub residual_stationarity: Vec<f64>,
    /// `l_j nu_j`.
    pub residual_complementarity: Vec<f64>,
    /// `|l|^2`.
    pub norm_constraint_value: f64,
    /// `nu >= 0`, `0 < |l|^2 < n` and `|l_j nu_j| < tol`.
    pub feasible: bool,
}

impl KktState {
    /// Euclidean norm of the stationarity and complementarity residuals.
    pub fn residual_norm(&self) -> f64 {
        (norm_sq(&self.residual_stationarity) + norm_sq(&self.residual_complementarity)).sqrt()
    }
}

fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `4 G l - (4/n) l log l`, with `0 log 0 = 0`.
pub fn absorbed_map(form: &SpectralForm, lambda: &[f64]) -> Vec<f64> {
    let n = form.n() as f64;
    form.apply(lambda)
        .iter()
        .zip(lambda)
        .map(|(g, &l)| 4.0 * g - 4.0 / n * xlogx(l))
        .collect()
}

pub fn kkt_residual(form: &SpectralForm, lambda: &PointVector, nu: &[f64]) -> Result<KktState> {
    kkt_residual_with(form, lambda, nu, &Tolerances::default())
}

pub fn kkt_residual_with(
    form: &SpectralForm,
    lambda: &PointVector,
    nu: &[f64],
    tol: &Tolerances,
) -> Result<KktState> {
    let n = form.n();
    check_len(n, lambda.len())?;
    check_len(n, nu.len())?;
    let s = absorbed_map(form, lambda.as_slice());
    let residual_stationarity: Vec<f64> = s.iter().zip(nu).map(|(a, b)| a - b).collect();
    let residual_complementarity: Vec<f64> = lambda
        .as_slice()
        .iter()
        .zip(nu)
        .map(|(l, v)| l * v)
        .collect();
    let norm_constraint_value = lambda.norm_sq();
    let feasible = nu.iter().all(|&v| v >= 0.0)
        && norm_constraint_value > 0.0
        && norm_constraint_value < n as f64
        && residual_complementarity
            .iter()
            .all(|c| c.abs() < tol.kkt_residual);
    Ok(KktState {
        lambda: lambda.clone(),
        nu: nu.to_vec(),
        residual_stationarity,
        residual_complementarity,
        norm_constraint_value,
        feasible,
    })
}

/// `c* = exp((n mu + log n) / 2)`.
pub fn absorption_scale(n: usize, mu: f64) -> f64 {
    let n = n as f64;
    ((n * mu + n.ln()) / 2.0).exp()
}

/// `4 G l - (2/n) l log(n l^2) - 2 mu l - nu` for a unit vector `l`.
pub fn sphere_residual(
    form: &SpectralForm,
    lambda: &[f64],
    mu: f64,
    nu: &[f64],
) -> Result<Vec<f64>> {
    let n = form.n();
    check_len(n, lambda.len())?;
    check_len(n, nu.len())?;
    let nf = n as f64;
    Ok(form
        .apply(lambda)
        .iter()
        .zip(lambda)
        .zip(nu)
        .map(|((g, &l), v)| {
            let ent = if l > 0.0 {
                2.0 / nf * l * (nf * l * l).ln()
            } else {
                0.0
            };
            4.0 * g - ent - 2.0 * mu * l - v
        })
        .collect())
}

/// Residual norm of the absorbed system at `(c* lambda, c* nu)`.
///
/// The absorbed residual equals `c*` times the sphere residual, so this is
/// small exactly when the input is a sphere-stationary triple.
pub fn mu_absorption_check(
    form: &SpectralForm,
    lambda_star: &PointVector,
    mu_star: f64,
    nu_star: &[f64],
) -> Result<f64> {
    let n = form.n();
    check_len(n, lambda_star.len())?;
    check_len(n, nu_star.len())?;
    let norm = lambda_star.norm_sq().sqrt();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::Precondition(format!(
            "lambda* must be a unit vector (norm {norm})"
        )));
    }
    let c = absorption_scale(n, mu_star);
    let lam: Vec<f64> = lambda_star.as_slice().iter().map(|x| c * x).collect();
    let nu: Vec<f64> = nu_star.iter().map(|x| c * x).collect();
    let s = absorbed_map(form, &lam);
    Ok(s.iter()
        .zip(&nu)
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        .sqrt())
}

/// Best point found on the positive unit sphere.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SphereMinimum {
    pub lambda: PointVector,
    pub value: f64,
    /// Norm of the projected gradient at `lambda` (free coordinates only).
    pub stationarity: f64,
    pub starts: usize,
}

impl SphereMinimum {
    /// Multipliers `(mu, nu)` of the sphere system at the returned point:
    /// `mu = f(lambda)` by Euler's identity and `nu` is the gradient
    /// excess on zero coordinates.
    pub fn multipliers(&self, form: &SpectralForm) -> (f64, Vec<f64>) {
        let x = self.lambda.as_slice();
        let g = form.gradient(x);
        let mu = self.value;
        let nu = x
            .iter()
            .zip(&g)
            .map(|(&l, &gj)| {
                if l > 0.0 {
                    0.0
                } else {
                    (gj - 2.0 * mu * l).max(0.0)
                }
            })
            .collect();
        (mu, nu)
    }
}

/// Options of [`minimize_on_sphere_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SphereOptions {
    pub max_iter: usize,
    pub polish_iter: usize,
}

impl Default for SphereOptions {
    fn default() -> Self {
        Self {
            max_iter: 300,
            polish_iter: 80,
        }
    }
}

/// Rounding floor of `f` at unit vectors, per coordinate.
const VALUE_RESOLUTION: f64 = 1e-16;

/// Multi-start projected-gradient minimization of `f` over the positive
/// unit sphere, followed by a Newton polish of the best point.
pub fn minimize_on_sphere(form: &SpectralForm, starts: usize, seed: u64) -> SphereMinimum {
    minimize_on_sphere_with(form, starts, seed, &SphereOptions::default())
}

pub fn minimize_on_sphere_with(
    form: &SpectralForm,
    starts: usize,
    seed: u64,
    opts: &SphereOptions,
) -> SphereMinimum {
    let n = form.n();
    let starts = starts.max(1);
    let finals = par::map_range(starts, |i| {
        let mut rng = stream_rng(seed, i as u64);
        let x0 = if i == 0 {
            vec![1.0 / (n as f64).sqrt(); n]
        } else {
            mixed_positive_sphere(&mut rng, n, i)
        };
        let x = projected_descent(form, x0, opts.max_iter);
        (form.objective(&x), x)
    });
    // Values closer than the rounding floor of f on the unit sphere are
    // indistinguishable; among them the lowest start index wins.
    let best_value = finals.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let noise = VALUE_RESOLUTION * n as f64;
    let best = finals
        .into_iter()
        .find(|p| p.0 <= best_value + noise)
        .expect("at least one start");
    let x = newton_polish(form, best.1, opts.polish_iter);
    let value = form.objective(&x);
    let stationarity = projected_gradient_norm(form, &x);
    SphereMinimum {
        lambda: PointVector::new(x).expect("iterates stay nonnegative"),
        value,
        stationarity,
        starts,
    }
}

fn projected_gradient_norm(form: &SpectralForm, x: &[f64]) -> f64 {
    let g = form.gradient(x);
    let gx: f64 = g.iter().zip(x).map(|(a, b)| a * b).sum();
    x.iter()
        .zip(&g)
        .map(|(&xj, &gj)| {
            let t = gj - gx * xj;
            // a zero coordinate only contributes if moving inward helps
            if xj > 0.0 {
                t * t
            } else {
                t.min(0.0).powi(2)
            }
        })
        .sum::<f64>()
        .sqrt()
}

fn project(y: &mut [f64]) -> bool {
    y.iter_mut().for_each(|v| *v = v.max(0.0));
    normalize(y)
}

/// Projected gradient with Armijo backtracking and Barzilai-Borwein steps.
fn projected_descent(form: &SpectralForm, mut x: Vec<f64>, max_iter: usize) -> Vec<f64> {
    let mut fx = form.objective(&x);
    let mut g = form.gradient(&x);
    let mut step = 0.5;
    for _ in 0..max_iter {
        let mut accepted = None;
        let mut alpha = step;
        for _ in 0..40 {
            let mut y: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a - alpha * b).collect();
            if !project(&mut y) {
                alpha *= 0.5;
                continue;
            }
            let fy = form.objective(&y);
            let d2: f64 = y.iter().zip(&x).map(|(a, b)| (a - b).powi(2)).sum();
            if fy <= fx - 1e-4 * d2 / alpha {
                accepted = Some((y, fy, d2));
                break;
            }
            alpha *= 0.5;
        }
        let Some((y, fy, d2)) = accepted else { break };
        let gy = form.gradient(&y);
        // BB1 step on the last displacement
        let sy: f64 = y
            .iter()
            .zip(&x)
            .zip(gy.iter().zip(&g))
            .map(|((a, b), (c, d))| (a - b) * (c - d))
            .sum();
        step = if sy > 0.0 {
            (d2 / sy).clamp(1e-6, 1e3)
        } else {
            (alpha * 2.0).min(1e3)
        };
        x = y;
        fx = fy;
        g = gy;
        if d2 < 1e-28 {
            break;
        }
    }
    x
}

/// Damped Riemannian Newton on the face of the sphere spanned by the
/// positive coordinates of `x`. Steps are accepted when they shrink the
/// projected gradient, which stays accurate far longer than `f` itself
/// near a degenerate minimum.
fn newton_polish(form: &SpectralForm, mut x: Vec<f64>, iters: usize) -> Vec<f64> {
    let support: Vec<usize> = (0..x.len()).filter(|&j| x[j] > 1e-10).collect();
    for (j, v) in x.iter_mut().enumerate() {
        if !support.contains(&j) {
            *v = 0.0;
        }
    }
    if !normalize(&mut x) {
        return x;
    }
    let m = support.len();
    let mut gnorm = tangent_gradient(form, &x, &support).1;
    for _ in 0..iters {
        if gnorm < 1e-16 {
            break;
        }
        let (grad_t, _, gx) = tangent_gradient(form, &x, &support);
        let h = form.hessian(&x);
        let y = DVector::from_iterator(m, support.iter().map(|&j| x[j]));
        let mut tau = gnorm;
        let mut improved = false;
        for _ in 0..8 {
            // bordered system [[Hr + tau I, y], [y^T, 0]]
            let mut a = DMatrix::zeros(m + 1, m + 1);
            for (p, &i) in support.iter().enumerate() {
                for (q, &j) in support.iter().enumerate() {
                    a[(p, q)] = h[(i, j)];
                }
                a[(p, p)] += tau - gx;
                a[(p, m)] = y[p];
                a[(m, p)] = y[p];
            }
            let mut rhs = DVector::zeros(m + 1);
            for p in 0..m {
                rhs[p] = -grad_t[p];
            }
            let Some(sol) = a.lu().solve(&rhs) else {
                tau = tau.max(1e-12) * 10.0;
                continue;
            };
            let mut alpha = 1.0;
            for _ in 0..30 {
                let mut cand = x.clone();
                for (p, &j) in support.iter().enumerate() {
                    cand[j] += alpha * sol[p];
                }
                if support.iter().all(|&j| cand[j] > 0.0) && normalize(&mut cand) {
                    let gn = tangent_gradient(form, &cand, &support).1;
                    if gn < gnorm {
                        x = cand;
                        gnorm = gn;
                        improved = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if improved {
                break;
            }
            tau = tau.max(1e-12) * 10.0;
        }
        if !improved {
            break;
        }
    }
    x
}

/// Tangent gradient on the support, its norm and `<g, x>`.
fn tangent_gradient(form: &SpectralForm, x: &[f64], support: &[usize]) -> (Vec<f64>, f64, f64) {
    let g = form.gradient(x);
    let gx: f64 = support.iter().map(|&j| g[j] * x[j]).sum();
    let t: Vec<f64> = support.iter().map(|&j| g[j] - gx * x[j]).collect();
    let norm = norm_sq(&t).sqrt();
    (t, norm, gx)
}

/// Smallest sampled value of `f` on the positive sphere.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledMinimum {
    pub value: f64,
    pub argmin: Vec<f64>,
    pub index: usize,
    pub samples: usize,
}

/// Evaluates `f` at `samples` seeded points of the positive sphere (one in
/// four supported on a random subset of coordinates).
pub fn sample_objective_minimum(form: &SpectralForm, samples: usize, seed: u64) -> SampledMinimum {
    let n = form.n();
    let (value, index) = par::map_reduce(
        samples,
        || (f64::INFINITY, usize::MAX),
        |i| {
            let x = mixed_positive_sphere(&mut stream_rng(seed, i as u64), n, i);
            (form.objective(&x), i)
        },
        |a, b| if b < a { b } else { a },
    );
    let argmin = if index < samples {
        mixed_positive_sphere(&mut stream_rng(seed, index as u64), n, index)
    } else {
        Vec::new()
    };
    SampledMinimum {
        value,
        argmin,
        index,
        samples,
    }
}

/// Where a single search start ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    /// Converged with `0 < |l|^2 < n`: a genuine counterexample candidate.
    Solution,
    /// Converged to (a neighbourhood of) zero.
    Origin,
    /// Converged with `|l|^2 = n` up to the window margin; the constant
    /// vector `l = 1` always solves the absorbed system.
    Boundary,
    /// Converged outside the window.
    Exterior,
    /// Residual still above tolerance when the iteration stopped.
    Unconverged,
}

/// Options of [`kkt_search_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KktSearchOptions {
    pub max_iter: usize,
    pub tolerances: Tolerances,
}

impl Default for KktSearchOptions {
    fn default() -> Self {
        Self {
            max_iter: 300,
            tolerances: Tolerances::default(),
        }
    }
}

/// Counts of terminal kinds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TerminalCounts {
    pub solution: usize,
    pub origin: usize,
    pub boundary: usize,
    pub exterior: usize,
    pub unconverged: usize,
}

/// One decade of the residual histogram: `[10^lo, 10^(lo+1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HistogramBin {
    pub log10_lo: i32,
    pub count: usize,
}

/// Outcome of [`kkt_search`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KktSearchReport {
    pub n: usize,
    pub weight: String,
    pub starts: usize,
    pub seed: u64,
    /// Deduplicated states solving the absorbed system inside the window.
    pub solutions: Vec<KktState>,
    /// Window solutions that have a zero coordinate.
    pub solutions_with_zero_coordinate: usize,
    pub counts: TerminalCounts,
    /// Final residuals of unconverged starts that stopped inside the window.
    pub window_residual_histogram: Vec<HistogramBin>,
    pub min_window_residual: Option<f64>,
    /// Largest `max_j |l_j - 1|` over boundary states. The constant vector
    /// is a degenerate root, so converged iterates approach it only to about
    /// the square root of the residual tolerance.
    pub boundary_max_deviation: Option<f64>,
}

/// Multi-start search for solutions of the absorbed system in the window
/// `0 < |l|^2 < n`.
///
/// The complementarity problem `0 <= l`, `s(l) >= 0`, `l . s(l) = 0` with
/// `s(l) = 4 G l - (4/n) l log l` is rewritten with the Fischer-Burmeister
/// function and solved by Levenberg-Marquardt; `nu = s(l)` at the end.
pub fn kkt_search(form: &SpectralForm, starts: usize, seed: u64) -> KktSearchReport {
    kkt_search_with(form, starts, seed, &KktSearchOptions::default())
}

pub fn kkt_search_with(
    form: &SpectralForm,
    starts: usize,
    seed: u64,
    opts: &KktSearchOptions,
) -> KktSearchReport {
    let n = form.n();
    let outcomes = par::map_range(starts, |i| {
        let mut rng = stream_rng(seed, i as u64);
        let dir = if i % 2 == 0 {
            positive_sphere(&mut rng, n)
        } else {
            mixed_positive_sphere(&mut rng, n, i / 2)
        };
        let r2: f64 = rng.random_range(0.0..1.0) * n as f64;
        let x0: Vec<f64> = dir.iter().map(|d| d * r2.sqrt()).collect();
        run_start(form, x0, opts)
    });
    summarize(form, starts, seed, outcomes, &opts.tolerances)
}

fn fischer_burmeister(a: f64, b: f64) -> f64 {
    a + b - a.hypot(b)
}

fn fb_residual(form: &SpectralForm, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let s = absorbed_map(form, x);
    let r = x
        .iter()
        .zip(&s)
        .map(|(&a, &b)| fischer_burmeister(a, b))
        .collect();
    (r, s)
}

fn fb_jacobian(form: &SpectralForm, x: &[f64], s: &[f64]) -> DMatrix<f64> {
    let n = x.len();
    let nf = n as f64;
    let mut j = form.matrix() * 4.0;
    for i in 0..n {
        j[(i, i)] -= 4.0 / nf * (x[i].ln() + 1.0);
    }
    for i in 0..n {
        let h = x[i].hypot(s[i]);
        let (da, db) = if h > 0.0 {
            (1.0 - x[i] / h, 1.0 - s[i] / h)
        } else {
            (
                1.0 - std::f64::consts::FRAC_1_SQRT_2,
                1.0 - std::f64::consts::FRAC_1_SQRT_2,
            )
        };
        for k in 0..n {
            j[(i, k)] *= db;
        }
        j[(i, i)] += da;
    }
    j
}

fn run_start(form: &SpectralForm, mut x: Vec<f64>, opts: &KktSearchOptions) -> (Vec<f64>, f64) {
    let floor = opts.tolerances.lambda_floor;
    let n = x.len();
    x.iter_mut().for_each(|v| *v = v.max(floor));
    let (mut r, mut s) = fb_residual(form, &x);
    let mut rn = norm_sq(&r).sqrt();
    let mut mu = 1e-3;
    for _ in 0..opts.max_iter {
        if rn < 1e-14 {
            break;
        }
        let jac = fb_jacobian(form, &x, &s);
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let g = &jt * DVector::from_column_slice(&r);
        let mut accepted = false;
        for _ in 0..12 {
            let mut a = jtj.clone();
            for i in 0..n {
                a[(i, i)] += mu * (1.0 + jtj[(i, i)]);
            }
            if let Some(d) = a.cholesky().map(|c| c.solve(&(-&g))) {
                let cand: Vec<f64> = x
                    .iter()
                    .zip(d.iter())
                    .map(|(a, b)| (a + b).max(floor))
                    .collect();
                let (rc, sc) = fb_residual(form, &cand);
                let rcn = norm_sq(&rc).sqrt();
                if rcn < rn {
                    x = cand;
                    r = rc;
                    s = sc;
                    rn = rcn;
                    mu = (mu / 3.0).max(1e-15);
                    accepted = true;
                    break;
                }
            }
            mu *= 4.0;
        }
        if !accepted {
            break;
        }
    }
    (x, rn)
}

fn summarize(
    form: &SpectralForm,
    starts: usize,
    seed: u64,
    outcomes: Vec<(Vec<f64>, f64)>,
    tol: &Tolerances,
) -> KktSearchReport {
    let n = form.n();
    let nf = n as f64;
    let mut counts = TerminalCounts::default();
    let mut solutions: Vec<KktState> = Vec::new();
    let mut boundary_dev: Option<f64> = None;
    let mut hist = std::collections::BTreeMap::<i32, usize>::new();
    let mut min_window: Option<f64> = None;
    let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol.kkt_dedup);
    for (mut x, res) in outcomes {
        // coordinates pinned at the floor are zeros of the original problem
        x.iter_mut().for_each(|v| {
            if *v <= 10.0 * tol.lambda_floor {
                *v = 0.0
            }
        });
        let ns = norm_sq(&x);
        let in_window = ns >= 0.5 && ns < nf * (1.0 - tol.kkt_window_margin);
        let terminal = if res >= tol.kkt_residual {
            Terminal::Unconverged
        } else if ns < 0.5 {
            Terminal::Origin
        } else if (ns - nf).abs() <= tol.kkt_window_margin * nf {
            Terminal::Boundary
        } else if ns > nf {
            Terminal::Exterior
        } else {
            Terminal::Solution
        };
        match terminal {
            Terminal::Solution => {
                counts.solution += 1;
                if !solutions.iter().any(|s| close(s.lambda.as_slice(), &x)) {
                    let nu: Vec<f64> = absorbed_map(form, &x).iter().map(|v| v.max(0.0)).collect();
                    let lam = PointVector::new(x).expect("nonnegative iterate");
                    let state = kkt_residual_with(form, &lam, &nu, tol).expect("matching sizes");
                    solutions.push(state);
                }
            }
            Terminal::Origin => counts.origin += 1,
            Terminal::Boundary => {
                counts.boundary += 1;
                let dev = x.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
                boundary_dev = Some(boundary_dev.map_or(dev, |d: f64| d.max(dev)));
            }
            Terminal::Exterior => counts.exterior += 1,
            Terminal::Unconverged => {
                counts.unconverged += 1;
                if in_window {
                    min_window = Some(min_window.map_or(res, |m: f64| m.min(res)));
                    *hist.entry(res.log10().floor() as i32).or_default() += 1;
                }
            }
        }
    }
    let solutions_with_zero_coordinate = solutions
        .iter()
        .filter(|s| s.lambda.as_slice().contains(&0.0))
        .count();
    KktSearchReport {
        n,
        weight: form.gamma().label().to_string(),
        starts,
        seed,
        solutions,
        solutions_with_zero_coordinate,
        counts,
        window_residual_histogram: hist
            .into_iter()
            .map(|(log10_lo, count)| HistogramBin { log10_lo, count })
            .collect(),
        min_window_residual: min_window,
        boundary_max_deviation: boundary_dev,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::build_form;
    use crate::weights::{phi4, phi6, word_length, Weight};
    use num_rational::Rational64;

    #[test]
    fn constant_half_vector_residual() {
        let f = build_form(&phi6()).unwrap();
        let lam = PointVector::constant(6, 0.5).unwrap();
        let st = kkt_residual(&f, &lam, &[0.0; 6]).unwrap();
        let want = -(2.0 / 3.0) * 0.5 * 0.5f64.ln();
        for r in &st.residual_stationarity {
            assert!((r - want).abs() < 1e-14);
        }
        assert!((want - 0.23105).abs() < 1e-5);
    }

    #[test]
    fn zero_vector_violates_window() {
        let f = build_form(&phi6()).unwrap();
        let st = kkt_residual(&f, &PointVector::constant(6, 0.0).unwrap(), &[0.0; 6]).unwrap();
        assert!(st.residual_stationarity.iter().all(|&r| r == 0.0));
        assert!(!st.feasible);
    }

    #[test]
    fn phi4_coefficients() {
        let f = build_form(&phi4()).unwrap();
        let lam = PointVector::new(vec![0.3, 1.1, 0.05, 0.7]).unwrap();
        let nu = [0.2, 0.0, 0.4, 0.1];
        let st = kkt_residual(&f, &lam, &nu).unwrap();
        let l = lam.as_slice();
        let c = [9.0 / 10.0, -2.0 / 5.0, -1.0 / 10.0, -2.0 / 5.0];
        for j in 0..4 {
            let lin: f64 = (0..4).map(|k| c[(k + 4 - j) % 4] * l[k]).sum();
            let want = lin - l[j] * l[j].ln() - nu[j];
            assert!((st.residual_stationarity[j] - want).abs() < 1e-14);
        }
    }

    #[test]
    fn absorption_scale_algebra() {
        assert!((absorption_scale(6, -(6f64.ln()) / 6.0) - 1.0).abs() < 1e-15);
        let (a, b) = (absorption_scale(6, -0.1), absorption_scale(6, -0.2));
        assert!((a / b - (6.0 * 0.1 / 2.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn absorption_preserves_residual_at_unit_scale() {
        let f = build_form(&phi6()).unwrap();
        let mut v = vec![0.3, 0.5, 0.2, 0.6, 0.1, 0.4];
        normalize(&mut v);
        let mu = -(6f64.ln()) / 6.0;
        let nu = [0.0; 6];
        let sr = sphere_residual(&f, &v, mu, &nu).unwrap();
        let absorbed = mu_absorption_check(&f, &PointVector::new(v).unwrap(), mu, &nu).unwrap();
        assert!((absorbed - norm_sq(&sr).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn absorption_rejects_non_unit_vector() {
        let f = build_form(&phi6()).unwrap();
        let v = PointVector::constant(6, 1.0).unwrap();
        assert!(mu_absorption_check(&f, &v, 0.0, &[0.0; 6]).is_err());
    }

    #[test]
    fn two_point_minimum_is_constant() {
        let f = build_form(&word_length(2).unwrap()).unwrap();
        let m = minimize_on_sphere(&f, 50, 1);
        assert!(m.value.abs() < 1e-12);
        let c = std::f64::consts::FRAC_1_SQRT_2;
        assert!(m.lambda.as_slice().iter().all(|x| (x - c).abs() < 1e-6));
    }

    #[test]
    fn weakened_weight_gives_stationary_point() {
        let w = word_length(6)
            .unwrap()
            .scaled(Rational64::new(3, 10), "weak")
            .unwrap();
        let f = build_form(&w).unwrap();
        let m = minimize_on_sphere(&f, 200, 3);
        assert!(m.value < 0.0);
        let (mu, nu) = m.multipliers(&f);
        let r = mu_absorption_check(&f, &m.lambda, mu, &nu).unwrap();
        assert!(r < 1e-9, "absorbed residual {r}");
    }

    #[test]
    fn search_finds_solutions_for_weak_weight() {
        let w = word_length(6)
            .unwrap()
            .scaled(Rational64::new(3, 10), "weak")
            .unwrap();
        let f = build_form(&w).unwrap();
        let rep = kkt_search(&f, 300, 5);
        assert!(!rep.solutions.is_empty());
        for s in &rep.solutions {
            assert!(s.feasible);
            assert!(s.residual_norm() < 1e-8);
        }
    }

    #[test]
    fn search_finds_nothing_for_two_points() {
        let f = build_form(&word_length(2).unwrap()).unwrap();
        let rep = kkt_search(&f, 1000, 2);
        assert!(rep.solutions.is_empty(), "{:?}", rep.solutions);
    }

    #[test]
    fn euler_identity() {
        let f = build_form(&Weight::from_integers("w", &[0, 2, 1, 1, 2]).unwrap()).unwrap();
        let mut rng = stream_rng(8, 0);
        for _ in 0..50 {
            let x = positive_sphere(&mut rng, 5);
            let g = f.gradient(&x);
            let lhs: f64 = g.iter().zip(&x).map(|(a, b)| a * b).sum();
            let rhs = 2.0 * f.objective(&x);
            assert!((lhs - rhs).abs() <= 1e-8 * rhs.abs().max(1e-12) + 1e-15);
        }
    }
}
