//! Auxiliary-function cascades for the Z_6 and Z_4 base cases.
//!
//! Each case has a scalar function `h` with `h(1) = h'(1) = 0` and a chain
//! `h_1, ..., h_8` of derivative transforms. Positivity of `h_8` propagates
//! back to `h > 0` on `(1, inf)`. Closed forms are polynomials in `x` and
//! `log x`; near `x = 1` they cancel to high order, so inside
//! `|x - 1| <= series_radius` the exact Taylor expansion is used instead.

mod series;

use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

use crate::config::Tolerances;
use crate::error::{invalid, Error, Result};
use crate::par;

/// Which base case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    Z6,
    Z4,
}

/// Names of the chain members, `h` first.
pub const CHAIN_NAMES: [&str; 9] = ["h", "h1", "h2", "h3", "h4", "h5", "h6", "h7", "h8"];

type Terms = &'static [(f64, i32, i32)];

fn series_of(case: Case, index: usize) -> &'static [f64; 32] {
    use series::*;
    let z6 = [
        &Z6_H, &Z6_H1, &Z6_H2, &Z6_H3, &Z6_H4, &Z6_H5, &Z6_H6, &Z6_H7, &Z6_H8,
    ];
    let z4 = [
        &Z4_H, &Z4_H1, &Z4_H2, &Z4_H3, &Z4_H4, &Z4_H5, &Z4_H6, &Z4_H7, &Z4_H8,
    ];
    match case {
        Case::Z6 => z6[index],
        Case::Z4 => z4[index],
    }
}

fn terms_of(case: Case, index: usize) -> Terms {
    match case {
        Case::Z6 => series::Z6_TERMS[index - 1],
        Case::Z4 => series::Z4_TERMS[index - 1],
    }
}

/// `(multiplier power of x, derivative order)` in `h_i = x^p h_{i-1}^{(k)}`
/// for `i >= 2`.
fn relation_shape(case: Case, index: usize) -> (i32, u32) {
    match (case, index) {
        (_, 3) | (_, 5) | (_, 8) => (1, 2),
        (Case::Z4, 7) => (2, 2),
        _ => (1, 1),
    }
}

fn relation_label(case: Case, index: usize) -> String {
    if index == 1 {
        return match case {
            Case::Z6 => "h1 = (x-1)^2 (x^2 + 6x log x - 1)^2 h'".into(),
            Case::Z4 => "h1 = (x-1)^2 (4x log x - (2/5)(x^2-1))^2 h'".into(),
        };
    }
    let (p, k) = relation_shape(case, index);
    let mult = if p == 1 {
        "x".to_string()
    } else {
        format!("x^{p}")
    };
    let primes = "'".repeat(k as usize);
    format!("h{index} = {mult} h{}{primes}", index - 1)
}

/// A sum of `c x^a (log x)^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPoly(Vec<(f64, i32, i32)>);

impl LogPoly {
    pub fn new(terms: &[(f64, i32, i32)]) -> Self {
        let mut p = Self(terms.to_vec());
        p.normalize();
        p
    }

    pub fn eval(&self, x: f64) -> f64 {
        let l = x.ln();
        self.0
            .iter()
            .map(|&(c, a, b)| c * x.powi(a) * l.powi(b))
            .sum()
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(2 * self.0.len());
        for &(c, a, b) in &self.0 {
            if a != 0 {
                out.push((c * a as f64, a - 1, b));
            }
            if b != 0 {
                out.push((c * b as f64, a - 1, b - 1));
            }
        }
        let mut p = Self(out);
        p.normalize();
        p
    }

    pub fn nth_derivative(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    fn normalize(&mut self) {
        let mut merged: BTreeMap<(i32, i32), f64> = BTreeMap::new();
        for &(c, a, b) in &self.0 {
            *merged.entry((a, b)).or_default() += c;
        }
        self.0 = merged
            .into_iter()
            .filter(|&(_, c)| c != 0.0)
            .map(|((a, b), c)| (c, a, b))
            .collect();
    }

    pub fn terms(&self) -> &[(f64, i32, i32)] {
        &self.0
    }
}

/// Closed form of `h_index` (`1..=8`) as a [`LogPoly`].
pub fn chain_closed_form(case: Case, index: usize) -> Result<LogPoly> {
    if !(1..=8).contains(&index) {
        return Err(invalid(format!("chain index {index} outside 1..=8")));
    }
    Ok(LogPoly::new(terms_of(case, index)))
}

fn horner(c: &[f64; 32], e: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * e + v)
}

/// `order`-th derivative of the expansion at offset `e`.
fn horner_derivative(c: &[f64; 32], e: f64, order: u32) -> f64 {
    let k0 = order as usize;
    c.iter()
        .enumerate()
        .skip(k0)
        .rev()
        .fold(0.0, |acc, (k, &v)| {
            let falling: f64 = (0..k0).map(|j| (k - j) as f64).product();
            acc * e + falling * v
        })
}

fn domain(function: &'static str, subexpression: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain {
            function,
            subexpression,
            value,
        })
    }
}

/// The displayed `h` for Z_6, evaluated term by term (no series).
pub fn h_z6_display(x: f64) -> Result<f64> {
    if x == 1.0 {
        return Ok(0.0);
    }
    domain("h_z6", "x", x)?;
    let l = x.ln();
    let n = domain("h_z6", "x^2 + 6 x log x - 1", x * x + 6.0 * x * l - 1.0)?;
    let d = domain("h_z6", "8 (x - 1)", 8.0 * (x - 1.0))?;
    Ok(n.ln() - d.ln() - x * l / (x - 1.0) + 1.0 - (-2.0 * x * x + 4.0 * x * l + 2.0) / n)
}

/// The displayed `h` for Z_4, evaluated term by term (no series).
pub fn h_z4_display(x: f64) -> Result<f64> {
    if x == 1.0 {
        return Ok(0.0);
    }
    domain("h_z4", "x", x)?;
    let l = x.ln();
    let d = domain(
        "h_z4",
        "4 x log x - (2/5)(x^2 - 1)",
        4.0 * x * l - 0.4 * (x * x - 1.0),
    )?;
    let q = domain("h_z4", "16 (x - 1) / 5", 16.0 * (x - 1.0) / 5.0)?;
    let denom = x * x - 10.0 * x * l - 1.0;
    Ok(d.ln() + (-4.0 * x * x + 8.0 * x * l + 4.0) / denom - q.ln() - x * l / (x - 1.0) + 1.0)
}

/// `h` for Z_6 with its continuous extension at 1.
pub fn h_z6(x: f64) -> Result<f64> {
    chain_value(Case::Z6, 0, x)
}

/// `h` for Z_4 with its continuous extension at 1.
pub fn h_z4(x: f64) -> Result<f64> {
    chain_value(Case::Z4, 0, x)
}

/// `h_index(x)`, `index = 0` meaning `h`. Uses the Taylor expansion for
/// `|x - 1| <= 0.3` and the closed form elsewhere.
pub fn chain_value(case: Case, index: usize, x: f64) -> Result<f64> {
    chain_value_offset(case, index, x - 1.0, Tolerances::default().series_radius)
}

fn chain_value_offset(case: Case, index: usize, e: f64, radius: f64) -> Result<f64> {
    if index > 8 {
        return Err(invalid(format!("chain index {index} outside 0..=8")));
    }
    if index == 0 && e < 0.0 {
        // the displayed h takes log(x - 1)
        let name = match case {
            Case::Z6 => "h_z6",
            Case::Z4 => "h_z4",
        };
        return Err(Error::Domain {
            function: name,
            subexpression: "x - 1",
            value: e,
        });
    }
    if e.abs() <= radius {
        return Ok(horner(series_of(case, index), e));
    }
    let x = 1.0 + e;
    match (index, case) {
        (0, Case::Z6) => h_z6_display(x),
        (0, Case::Z4) => h_z4_display(x),
        _ => {
            domain("cascade", "x", x)?;
            Ok(LogPoly::new(terms_of(case, index)).eval(x))
        }
    }
}

/// Right end of the domain of `h`: `+inf` for Z_6, the root of
/// `4 x log x - (2/5)(x^2 - 1)` beyond 1 for Z_4.
pub fn domain_end(case: Case) -> f64 {
    match case {
        Case::Z6 => f64::INFINITY,
        Case::Z4 => {
            let d = |x: f64| 4.0 * x * x.ln() - 0.4 * (x * x - 1.0);
            let (mut lo, mut hi) = (10.0, 100.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if d(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        }
    }
}

/// `(F(x), Theta(x))` with `F(x) = -(2/3) x log x + (2/3) x` and
/// `Theta(x) = F(x) - F(2 - x)`.
pub fn pair_functions(x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0 && x < 2.0) {
        return Err(invalid(format!("pair functions need 0 < x < 2, got {x}")));
    }
    let f = |t: f64| -2.0 / 3.0 * t * t.ln() + 2.0 / 3.0 * t;
    Ok((f(x), f(x) - f(2.0 - x)))
}

/// `Theta'(x) = -(2/3) log(x (2 - x))`.
pub fn theta_derivative(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 2.0) {
        return Err(invalid(format!("Theta' needs 0 < x < 2, got {x}")));
    }
    Ok(-2.0 / 3.0 * (x * (2.0 - x)).ln())
}

/// One derivative relation checked on the grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub max_relative_error: f64,
    pub worst_x: f64,
    pub checked: usize,
    /// Grid points skipped because they lie outside the domain of `h`.
    pub outside_domain: usize,
    pub ok: bool,
}

/// Expected value at `x = 1` and what was found.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignEntry {
    pub name: String,
    pub value: f64,
    pub expected: Expected,
    pub ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Zero,
    Positive,
}

/// Positivity of one chain member on the grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Positivity {
    pub name: String,
    pub positive: bool,
    pub min_value: f64,
    pub first_failure_x: Option<f64>,
    /// Grid points where the function is undefined.
    pub undefined: usize,
}

/// Result of a cascade verification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CascadeReport {
    pub case_id: Case,
    pub x_max: f64,
    pub samples: usize,
    /// The sampled x values, log-spaced in `x - 1` from `1e-6` to `x_max - 1`.
    #[serde(skip)]
    pub grid: Vec<f64>,
    /// `name -> value`, e.g. `"h5'" -> h5'(1)`.
    pub values_at_one: BTreeMap<String, f64>,
    pub sign_table: Vec<SignEntry>,
    pub sign_table_ok: bool,
    /// `name -> positive at every grid point`.
    pub sign_verdicts: BTreeMap<String, bool>,
    pub positivity: Vec<Positivity>,
    pub relations: Vec<RelationCheck>,
    pub relations_ok: bool,
    /// `h8''` from the closed form against its stated simplification.
    pub h8_second_derivative: RelationCheck,
    /// `h8'' > 0` and every chain member positive on the grid.
    pub monotone_chain_ok: bool,
    /// Right end of the domain of `h` when finite.
    pub domain_end: Option<f64>,
    pub flags: Vec<String>,
}

impl CascadeReport {
    pub fn passed(&self) -> bool {
        self.sign_table_ok
            && self.relations_ok
            && self.h8_second_derivative.ok
            && self.monotone_chain_ok
    }
}

/// `x - 1` values, log-spaced from `1e-6` to `x_max - 1`.
pub fn cascade_grid(x_max: f64, samples: usize) -> Vec<f64> {
    let lo: f64 = 1e-6;
    let hi = x_max - 1.0;
    let ratio = (hi / lo).ln();
    (0..samples)
        .map(|i| {
            if i + 1 == samples {
                hi
            } else {
                lo * (ratio * i as f64 / (samples - 1) as f64).exp()
            }
        })
        .collect()
}

pub fn cascade_chain_z6(x_max: f64, samples: usize) -> Result<CascadeReport> {
    cascade_chain(Case::Z6, x_max, samples, &Tolerances::default())
}

pub fn cascade_chain_z4(x_max: f64, samples: usize) -> Result<CascadeReport> {
    cascade_chain(Case::Z4, x_max, samples, &Tolerances::default())
}

/// Values at 1 checked for both cases. Zeros follow from the orders of
/// vanishing; the positive entries are the ones the backward argument uses.
const SIGN_TABLE: [(&str, Expected); 13] = [
    ("h", Expected::Zero),
    ("h'", Expected::Zero),
    ("h1'", Expected::Zero),
    ("h2'", Expected::Zero),
    ("h2''", Expected::Zero),
    ("h3'", Expected::Zero),
    ("h4'", Expected::Zero),
    ("h4''", Expected::Zero),
    ("h5'", Expected::Positive),
    ("h6'", Expected::Positive),
    ("h7'", Expected::Positive),
    ("h7''", Expected::Positive),
    ("h8'", Expected::Positive),
];

pub fn cascade_chain(
    case: Case,
    x_max: f64,
    samples: usize,
    tol: &Tolerances,
) -> Result<CascadeReport> {
    if !(x_max > 1.0) || !x_max.is_finite() {
        return Err(invalid(format!("x_max must exceed 1, got {x_max}")));
    }
    if samples < 100 {
        return Err(invalid(format!("need at least 100 samples, got {samples}")));
    }
    let radius = tol.series_radius;
    let offsets = cascade_grid(x_max, samples);
    let end = domain_end(case);
    let mut flags = Vec::new();
    if case == Case::Z4 {
        flags.push(
            "the h3 relation is listed twice (with h2' and with h2''); h3 = x h2'' is checked"
                .into(),
        );
    }

    // values at 1
    let mut values_at_one = BTreeMap::new();
    let hs = series_of(case, 0);
    values_at_one.insert("h".to_string(), hs[0]);
    values_at_one.insert("h'".to_string(), hs[1]);
    for i in 1..=8 {
        let p = LogPoly::new(terms_of(case, i));
        for k in 0..=2u32 {
            let name = format!("h{i}{}", "'".repeat(k as usize));
            values_at_one.insert(name, p.nth_derivative(k).eval(1.0));
        }
    }
    let sign_table: Vec<SignEntry> = SIGN_TABLE
        .iter()
        .map(|&(name, expected)| {
            let value = values_at_one[name];
            let ok = match expected {
                Expected::Zero => value.abs() < 1e-8,
                Expected::Positive => value > 1e-10,
            };
            SignEntry {
                name: name.to_string(),
                value,
                expected,
                ok,
            }
        })
        .collect();
    let sign_table_ok = sign_table.iter().all(|s| s.ok);

    // positivity on the grid
    let values: Vec<[Option<f64>; 9]> = par::map_range(samples, |i| {
        let e = offsets[i];
        std::array::from_fn(|k| chain_value_offset(case, k, e, radius).ok())
    });
    let positivity: Vec<Positivity> = (0..9)
        .map(|k| {
            let mut min_value = f64::INFINITY;
            let mut first_failure_x = None;
            let mut undefined = 0;
            for (i, v) in values.iter().enumerate() {
                match v[k] {
                    Some(y) => {
                        min_value = min_value.min(y);
                        if !(y > 0.0) && first_failure_x.is_none() {
                            first_failure_x = Some(1.0 + offsets[i]);
                        }
                    }
                    None => {
                        undefined += 1;
                        if first_failure_x.is_none() {
                            first_failure_x = Some(1.0 + offsets[i]);
                        }
                    }
                }
            }
            Positivity {
                name: CHAIN_NAMES[k].to_string(),
                positive: first_failure_x.is_none(),
                min_value,
                first_failure_x,
                undefined,
            }
        })
        .collect();
    if end < x_max {
        flags.push(format!(
            "h is undefined for x >= {end:.12} (log of a nonpositive argument); \
             {} of {samples} grid points lie beyond",
            positivity[0].undefined
        ));
    }
    let sign_verdicts = positivity
        .iter()
        .map(|p| (p.name.clone(), p.positive))
        .collect();

    // derivative relations
    let relations: Vec<RelationCheck> = (1..=8)
        .map(|i| relation_check(case, i, &offsets, end, radius, tol.chain_relative))
        .collect();
    for r in relations.iter().filter(|r| !r.ok) {
        flags.push(format!(
            "relation `{}` off by {:e} (relative) at x = {}",
            r.relation, r.max_relative_error, r.worst_x
        ));
    }
    let relations_ok = relations.iter().all(|r| r.ok);

    let h8_second_derivative = h8_check(case, &offsets);
    let monotone_chain_ok = positivity.iter().all(|p| p.positive)
        && offsets
            .iter()
            .all(|&e| h8_closed_second(case, 1.0 + e) > 0.0);

    Ok(CascadeReport {
        case_id: case,
        x_max,
        samples,
        grid: offsets.iter().map(|e| 1.0 + e).collect(),
        values_at_one,
        sign_table,
        sign_table_ok,
        sign_verdicts,
        positivity,
        relations,
        relations_ok,
        h8_second_derivative,
        monotone_chain_ok,
        domain_end: end.is_finite().then_some(end),
        flags,
    })
}

/// The stated simplification of `h8''`.
fn h8_closed_second(case: Case, x: f64) -> f64 {
    match case {
        Case::Z6 => 3456.0 * (22.0 * x + 1.0) / (x * x),
        Case::Z4 => 1_188_864.0 / (25.0 * x),
    }
}

fn h8_check(case: Case, offsets: &[f64]) -> RelationCheck {
    let p = LogPoly::new(terms_of(case, 8)).nth_derivative(2);
    let mut worst = (0.0f64, 1.0);
    for &e in offsets {
        let x = 1.0 + e;
        let want = h8_closed_second(case, x);
        let err = (p.eval(x) - want).abs() / want.abs();
        if err > worst.0 {
            worst = (err, x);
        }
    }
    let relation = match case {
        Case::Z6 => "h8'' = 3456 (22x + 1) / x^2",
        Case::Z4 => "h8'' = 1188864 / (25 x)",
    };
    RelationCheck {
        relation: relation.into(),
        max_relative_error: worst.0,
        worst_x: worst.1,
        checked: offsets.len(),
        outside_domain: 0,
        ok: worst.0 <= 1e-10,
    }
}

/// Derivative of `h_index`: termwise from the expansion inside the series
/// radius, five-point differences with step `s` outside.
fn derivative_at(case: Case, index: usize, e: f64, s: f64, order: u32, radius: f64) -> Result<f64> {
    if e.abs() <= radius {
        return Ok(horner_derivative(series_of(case, index), e, order));
    }
    stencil(|t| chain_value_offset(case, index, t, radius), e, s, order)
}

/// Five-point derivative of order 1 or 2 in the offset variable.
fn stencil(f: impl Fn(f64) -> Result<f64>, e: f64, s: f64, order: u32) -> Result<f64> {
    let (m2, m1, p1, p2) = (f(e - 2.0 * s)?, f(e - s)?, f(e + s)?, f(e + 2.0 * s)?);
    Ok(match order {
        1 => (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * s),
        _ => (-m2 + 16.0 * m1 - 30.0 * f(e)? + 16.0 * p1 - p2) / (12.0 * s * s),
    })
}

fn relation_check(
    case: Case,
    index: usize,
    offsets: &[f64],
    end: f64,
    radius: f64,
    rel_tol: f64,
) -> RelationCheck {
    let results: Vec<Option<(f64, f64)>> = par::map_range(offsets.len(), |i| {
        let e = offsets[i];
        let x = 1.0 + e;
        // step scaled to the distance from 1 and from the end of the domain
        let mut scale = e;
        if index == 1 && end.is_finite() {
            if x >= end {
                return None;
            }
            scale = scale.min(end - x);
        }
        let s = 1e-3 * scale;
        let lhs = chain_value_offset(case, index, e, radius).ok()?;
        let rhs = if index == 1 {
            let weight = match case {
                Case::Z6 => x * x + 6.0 * x * x.ln() - 1.0,
                Case::Z4 => 4.0 * x * x.ln() - 0.4 * (x * x - 1.0),
            };
            e * e * weight * weight * derivative_at(case, 0, e, s, 1, radius).ok()?
        } else {
            let (p, k) = relation_shape(case, index);
            x.powi(p) * derivative_at(case, index - 1, e, s, k, radius).ok()?
        };
        let err = (lhs - rhs).abs() / lhs.abs().max(f64::MIN_POSITIVE);
        Some((err, x))
    });
    let mut worst = (0.0f64, 1.0);
    let mut checked = 0;
    let mut outside = 0;
    for r in results {
        match r {
            Some((err, x)) => {
                checked += 1;
                if !(err <= worst.0) {
                    worst = (err, x);
                }
            }
            None => outside += 1,
        }
    }
    RelationCheck {
        relation: relation_label(case, index),
        max_relative_error: worst.0,
        worst_x: worst.1,
        checked,
        outside_domain: outside,
        ok: worst.0 <= rel_tol,
    }
}

/// Writes `x, h, h1, ..., h8` for every grid point; undefined values are
/// left empty.
pub fn write_chain_csv<W: Write>(case: Case, x_max: f64, samples: usize, out: W) -> Result<()> {
    let radius = Tolerances::default().series_radius;
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["x".to_string()];
    header.extend(CHAIN_NAMES.iter().map(|s| s.to_string()));
    w.write_record(&header)?;
    for e in cascade_grid(x_max, samples) {
        let mut row = vec![format!("{}", 1.0 + e)];
        for k in 0..9 {
            row.push(
                chain_value_offset(case, k, e, radius)
                    .map(|v| format!("{v:e}"))
                    .unwrap_or_default(),
            );
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
