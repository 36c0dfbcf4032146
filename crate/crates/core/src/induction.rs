//! Lifting an LSI on Z_n to Z_2n.
//!
//! A pair `(gamma_n, gamma_2n)` is usable when it passes the clause check of
//! [`check_pair_condition`] and the scalar quadratic inequality scanned by
//! [`scan_quadratic`]. [`VerifiedPair`] records that both passed, and the
//! comparison and Monte-Carlo chain only accept that type.

use num_complex::Complex64;
use serde::Serialize;

use crate::config::{Defaults, Tolerances};
use crate::dft::{deinterleave, dft_real, interleave, TwiddleDiagonal};
use crate::error::{check_len, invalid, Error, Result};
use crate::par;
use crate::sampling::{mixed_positive_sphere, stream_rng};
use crate::spectral::{build_form, entropy_raw, norm_sq, PointVector, SpectralForm};
use crate::weights::{check_pair_condition, gamma_even_tower, PairReport, Weight};

fn check_sizes(gn: &Weight, g2n: &Weight) -> Result<usize> {
    let n = gn.n();
    if g2n.n() != 2 * n {
        return Err(invalid(format!(
            "pair sizes must be (n, 2n); got ({}, {})",
            n,
            g2n.n()
        )));
    }
    Ok(n)
}

/// Coefficients `(A, B, C)` of `A x^2 + B x + C` for fixed `(r_a, r_b)`.
fn coefficients(gn: &Weight, g2n: &Weight, r_a: f64, r_b: f64) -> (f64, f64, f64) {
    let n = gn.n();
    let g_mid = g2n.value_f64(n);
    if n % 2 == 1 {
        // g_mid (1 - x)^2 - (1 + x^2) + 2x
        let a = g_mid - 1.0;
        return (a, -2.0 * a, a);
    }
    let c = 2.0 * g2n.value_f64(n / 2) - 2.0 * gn.value_f64(n / 2) - 1.0;
    let s = ((1.0 + r_a) * (1.0 + r_b)).sqrt();
    (
        c * r_b + g_mid - 1.0,
        2.0 * s - 2.0 * g_mid,
        c * r_a + g_mid - 1.0,
    )
}

/// Left side of the scalar inequality. For odd `n` the `r` terms are absent
/// and `r_a`, `r_b` are ignored.
pub fn quadratic_lhs(pair: (&Weight, &Weight), x: f64, r_a: f64, r_b: f64) -> Result<f64> {
    let (gn, g2n) = pair;
    check_sizes(gn, g2n)?;
    if !(x >= 0.0) || !(0.0..=1.0).contains(&r_a) || !(0.0..=1.0).contains(&r_b) {
        return Err(invalid(format!(
            "need x >= 0 and r_a, r_b in [0, 1]; got ({x}, {r_a}, {r_b})"
        )));
    }
    let (a, b, c) = coefficients(gn, g2n, r_a, r_b);
    Ok((a * x + b) * x + c)
}

/// A point where the quadratic was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadraticPoint {
    pub x: f64,
    pub r_a: f64,
    pub r_b: f64,
    pub value: f64,
}

impl QuadraticPoint {
    fn lower(self, other: Self) -> Self {
        if other.value < self.value {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadraticScan {
    pub pair: (Weight, Weight),
    pub resolution: usize,
    /// `[0, x_max]`: zero plus `resolution - 1` log-spaced points from `1e-3`.
    pub grid_x: (f64, f64),
    pub grid_r: ((f64, f64), (f64, f64)),
    pub min_value: f64,
    pub min_location: (f64, f64, f64),
    /// Cells where the vertex `-B/2A` was also evaluated.
    pub vertices_evaluated: usize,
    /// For tower pairs: largest gap between the closed-form minimum over x
    /// and the vertex value, over the r-grid.
    pub analytic_minimum_discrepancy: Option<f64>,
    /// Smallest closed-form minimum over the r-grid, for tower pairs.
    pub analytic_minimum: Option<f64>,
    pub witness: Option<QuadraticPoint>,
    pub verdict: bool,
}

/// Closed-form minimum over x for `(gamma_even_tower(n), gamma_even_tower(2n))`.
pub fn tower_quadratic_minimum(n: usize, r_a: f64, r_b: f64) -> f64 {
    let n = n as f64;
    let s = ((1.0 + r_a) * (1.0 + r_b)).sqrt();
    (2.0 * (n - 1.0) * (s - 1.0) + (n - 3.0) * (r_a + r_b)) / (r_b + n - 2.0)
}

fn is_tower_pair(gn: &Weight, g2n: &Weight) -> bool {
    let n = gn.n();
    matches!(
        (gamma_even_tower(n), gamma_even_tower(2 * n)),
        (Ok(a), Ok(b)) if a.values() == gn.values() && b.values() == g2n.values()
    )
}

pub fn scan_quadratic(pair: (&Weight, &Weight), resolution: usize) -> Result<QuadraticScan> {
    scan_quadratic_with(
        pair,
        resolution,
        Defaults::default().quadratic_x_max,
        &Tolerances::default(),
    )
}

pub fn scan_quadratic_with(
    pair: (&Weight, &Weight),
    resolution: usize,
    x_max: f64,
    tol: &Tolerances,
) -> Result<QuadraticScan> {
    let (gn, g2n) = pair;
    let n = check_sizes(gn, g2n)?;
    if resolution < 50 {
        return Err(invalid(format!(
            "resolution must be at least 50, got {resolution}"
        )));
    }
    let x_lo: f64 = 1e-3;
    let mut xs = vec![0.0];
    let span = (x_max / x_lo).ln();
    xs.extend((0..resolution - 1).map(|i| {
        if i == resolution - 2 {
            x_max
        } else {
            x_lo * (span * i as f64 / (resolution - 2) as f64).exp()
        }
    }));
    let rs: Vec<f64> = if n % 2 == 1 {
        vec![0.0]
    } else {
        (0..resolution)
            .map(|i| i as f64 / (resolution - 1) as f64)
            .collect()
    };
    let tower = n % 2 == 0 && is_tower_pair(gn, g2n);

    struct Acc {
        best: QuadraticPoint,
        vertices: usize,
        discrepancy: f64,
        analytic: f64,
    }
    let empty = || Acc {
        best: QuadraticPoint {
            x: f64::NAN,
            r_a: f64::NAN,
            r_b: f64::NAN,
            value: f64::INFINITY,
        },
        vertices: 0,
        discrepancy: 0.0,
        analytic: f64::INFINITY,
    };
    let cells = rs.len() * rs.len();
    let acc = par::map_reduce(
        cells,
        empty,
        |cell| {
            let (r_a, r_b) = (rs[cell / rs.len()], rs[cell % rs.len()]);
            let (a, b, c) = coefficients(gn, g2n, r_a, r_b);
            let eval = |x: f64| QuadraticPoint {
                x,
                r_a,
                r_b,
                value: (a * x + b) * x + c,
            };
            let mut acc = empty();
            for &x in &xs {
                acc.best = acc.best.lower(eval(x));
            }
            if a > 0.0 {
                let vertex = eval((-b / (2.0 * a)).max(0.0));
                acc.best = acc.best.lower(vertex);
                acc.vertices = 1;
                if tower {
                    let closed = tower_quadratic_minimum(n, r_a, r_b);
                    acc.discrepancy = (closed - vertex.value).abs();
                    acc.analytic = closed;
                }
            }
            acc
        },
        |p, q| Acc {
            best: p.best.lower(q.best),
            vertices: p.vertices + q.vertices,
            discrepancy: p.discrepancy.max(q.discrepancy),
            analytic: p.analytic.min(q.analytic),
        },
    );
    let analytic_minimum = tower.then_some(acc.analytic);
    let verdict = acc.best.value >= -tol.slack && analytic_minimum.is_none_or(|m| m >= -tol.slack);
    Ok(QuadraticScan {
        pair: (gn.clone(), g2n.clone()),
        resolution,
        grid_x: (0.0, x_max),
        grid_r: ((rs[0], rs[rs.len() - 1]), (rs[0], rs[rs.len() - 1])),
        min_value: acc.best.value,
        min_location: (acc.best.x, acc.best.r_a, acc.best.r_b),
        vertices_evaluated: acc.vertices,
        analytic_minimum_discrepancy: tower.then_some(acc.discrepancy),
        analytic_minimum,
        witness: (!verdict).then_some(acc.best),
        verdict,
    })
}

/// `r_a (24 r_b + 35) + 5 (-30 sqrt((1 + r_a)(1 + r_b)) + 7 r_b + 30)`.
pub fn corner_function_h(r_a: f64, r_b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r_a) || !(0.0..=1.0).contains(&r_b) {
        return Err(invalid(format!(
            "corner function needs [0, 1]^2, got ({r_a}, {r_b})"
        )));
    }
    let s = ((1.0 + r_a) * (1.0 + r_b)).sqrt();
    Ok(r_a * (24.0 * r_b + 35.0) + 5.0 * (-30.0 * s + 7.0 * r_b + 30.0))
}

/// A pair that passed the clause check and the quadratic scan.
#[derive(Clone, Debug)]
pub struct VerifiedPair {
    gn: Weight,
    g2n: Weight,
    form_n: SpectralForm,
    form_2n: SpectralForm,
    clauses: PairReport,
    scan: QuadraticScan,
}

impl VerifiedPair {
    pub fn new(gn: &Weight, g2n: &Weight) -> Result<Self> {
        Self::with_resolution(gn, g2n, Defaults::default().quadratic_resolution)
    }

    pub fn with_resolution(gn: &Weight, g2n: &Weight, resolution: usize) -> Result<Self> {
        let n = check_sizes(gn, g2n)?;
        if n < 3 {
            return Err(Error::Precondition(format!(
                "the comparison needs n >= 3, got n = {n}"
            )));
        }
        let clauses = check_pair_condition(gn, g2n)?;
        if let Some(name) = clauses.first_failure() {
            return Err(Error::Precondition(format!(
                "pair ({}, {}) fails clause `{name}`",
                gn.label(),
                g2n.label()
            )));
        }
        let scan = scan_quadratic((gn, g2n), resolution)?;
        if let Some(w) = scan.witness {
            return Err(Error::Precondition(format!(
                "pair ({}, {}) fails the quadratic inequality: value {:e} at x = {}, r_a = {}, r_b = {}",
                gn.label(),
                g2n.label(),
                w.value,
                w.x,
                w.r_a,
                w.r_b
            )));
        }
        Ok(Self {
            form_n: build_form(gn)?,
            form_2n: build_form(g2n)?,
            gn: gn.clone(),
            g2n: g2n.clone(),
            clauses,
            scan,
        })
    }

    pub fn n(&self) -> usize {
        self.gn.n()
    }

    pub fn weights(&self) -> (&Weight, &Weight) {
        (&self.gn, &self.g2n)
    }

    pub fn clauses(&self) -> &PairReport {
        &self.clauses
    }

    pub fn scan(&self) -> &QuadraticScan {
        &self.scan
    }

    /// `<a,G(n)a> + <b,G(n)b> + (1/2n)(|a| - |b|)^2`.
    fn middle(&self, a: &[f64], b: &[f64]) -> f64 {
        let n = self.n() as f64;
        let gap = norm_sq(a).sqrt() - norm_sq(b).sqrt();
        self.form_n.quadratic(a) + self.form_n.quadratic(b) + gap * gap / (2.0 * n)
    }

    fn top(&self, lambda: &[f64]) -> f64 {
        2.0 * self.form_2n.quadratic(lambda)
    }
}

/// Both sides of the comparison for the interleaving of `a` and `b`, and
/// whether `lhs <= rhs + slack`.
pub fn compare_dirichlet(
    pair: &VerifiedPair,
    a: &PointVector,
    b: &PointVector,
) -> Result<(f64, f64, bool)> {
    check_len(pair.n(), a.len())?;
    check_len(pair.n(), b.len())?;
    let lambda = interleave(a.as_slice(), b.as_slice())?;
    let lhs = pair.middle(a.as_slice(), b.as_slice());
    let rhs = pair.top(&lambda);
    Ok((lhs, rhs, lhs <= rhs + Tolerances::default().slack))
}

/// `(1/4)(x^2 log(2x^2/(x^2+y^2)) + y^2 log(2y^2/(x^2+y^2)))` and `((x-y)/2)^2`.
pub fn two_point_lsi(x: f64, y: f64) -> Result<(f64, f64)> {
    if !(x >= 0.0 && y >= 0.0) {
        return Err(invalid(format!(
            "two-point inequality needs x, y >= 0, got ({x}, {y})"
        )));
    }
    let s = x * x + y * y;
    if s == 0.0 {
        return Err(invalid("two-point inequality at (0, 0)"));
    }
    let term = |t: f64| {
        if t > 0.0 {
            t * t * (2.0 * t * t / s).ln()
        } else {
            0.0
        }
    };
    Ok(((term(x) + term(y)) / 4.0, (x - y) * (x - y) / 4.0))
}

/// `2 <lambda, Gamma(2n) lambda>` from the half-length transforms of the
/// even and odd samples. Needs even `n` and a symmetric weight.
pub fn fourier_side_dirichlet_2n(g2n: &Weight, lambda: &[f64]) -> Result<f64> {
    check_len(g2n.n(), lambda.len())?;
    let n = g2n.n() / 2;
    if n < 2 || n % 2 != 0 || g2n.n() % 2 != 0 {
        return Err(invalid(format!(
            "block formula needs 2n with n even, got {}",
            g2n.n()
        )));
    }
    if !g2n.is_symmetric() {
        return Err(invalid("block formula needs a symmetric weight"));
    }
    let (a, b) = deinterleave(lambda)?;
    let ah = dft_real(&a)?;
    let bh = dft_real(&b)?;
    let d = TwiddleDiagonal::new(n)?;
    let g = |k: usize| g2n.value_f64(k);
    let nn = (n * n) as f64;
    let h = n / 2;
    let mut total = g(h) / nn * (ah[h].norm_sqr() + bh[h].norm_sqr())
        + g(n) / (2.0 * nn) * (ah[0] - bh[0]).norm_sqr();
    for k in 1..h {
        let cross: Complex64 = ah[k].conj() * d.entries()[k] * bh[k];
        total += (g(k) + g(n - k)) / nn * (ah[k].norm_sqr() + bh[k].norm_sqr());
        total -= 2.0 * (g(n - k) - g(k)) / nn * cross.re;
    }
    Ok(total)
}

/// Smallest slack seen and the sample that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Slack {
    pub min: f64,
    pub sample: Option<usize>,
    pub lambda: Vec<f64>,
}

impl Slack {
    fn none() -> Self {
        Self {
            min: f64::INFINITY,
            sample: None,
            lambda: Vec::new(),
        }
    }

    fn lower(self, other: Self) -> Self {
        // ties go to the lower index so the result is order independent
        match other.min.total_cmp(&self.min) {
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Equal if other.sample < self.sample => other,
            _ => self,
        }
    }
}

/// Monte-Carlo check of `H_2n <= middle <= 2 <lambda, Gamma(2n) lambda>`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InductionReport {
    pub n: usize,
    pub labels: (String, String),
    pub clauses: PairReport,
    pub quadratic_min: f64,
    pub samples: usize,
    pub seed: u64,
    /// `middle - H_2n`.
    pub entropy_slack: Slack,
    /// `2 <lambda, Gamma(2n) lambda> - middle`.
    pub comparison_slack: Slack,
    /// `(H_2n, middle, top)` at the constant vector.
    pub constant_values: (f64, f64, f64),
    pub holds: bool,
}

pub fn induction_step(pair: &VerifiedPair, samples: usize, seed: u64) -> Result<InductionReport> {
    if samples == 0 {
        return Err(invalid("induction step needs at least one sample"));
    }
    let n = pair.n();
    let tol = Tolerances::default();
    let (s1, s2) = par::map_reduce(
        samples,
        || (Slack::none(), Slack::none()),
        |i| {
            let mut rng = stream_rng(seed, i as u64);
            let lambda = mixed_positive_sphere(&mut rng, 2 * n, i);
            let (a, b) = deinterleave(&lambda).expect("even length");
            let middle = pair.middle(&a, &b);
            let slack = |v: f64| Slack {
                min: v,
                sample: Some(i),
                lambda: lambda.clone(),
            };
            (
                slack(middle - entropy_raw(&lambda)),
                slack(pair.top(&lambda) - middle),
            )
        },
        |p, q| (p.0.lower(q.0), p.1.lower(q.1)),
    );
    let ones = vec![1.0; 2 * n];
    let half = vec![1.0; n];
    let constant_values = (
        entropy_raw(&ones),
        pair.middle(&half, &half),
        pair.top(&ones),
    );
    Ok(InductionReport {
        n,
        labels: (pair.gn.label().to_string(), pair.g2n.label().to_string()),
        clauses: pair.clauses.clone(),
        quadratic_min: pair.scan.min_value,
        samples,
        seed,
        holds: s1.min >= -tol.slack && s2.min >= -tol.slack,
        entropy_slack: s1,
        comparison_slack: s2,
        constant_values,
    })
}
