//! Weight functions on Z_n and the pair condition linking scales n and 2n.
//!
//! Values are exact rationals; floating point enters only when a form is
//! built.

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;
use std::path::Path;

use crate::error::{invalid, Error, Result};

/// A nonnegative symbol on Z_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    label: String,
    values: Vec<Rational64>,
}

impl Weight {
    pub fn new(label: impl Into<String>, values: Vec<Rational64>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("weight on Z_0"));
        }
        if let Some(k) = values.iter().position(|v| *v < Rational64::zero()) {
            return Err(Error::InvalidInput(format!(
                "weight value at k = {k} is negative ({})",
                values[k]
            )));
        }
        Ok(Self {
            label: label.into(),
            values,
        })
    }

    pub fn from_integers(label: impl Into<String>, values: &[i64]) -> Result<Self> {
        Self::new(
            label,
            values
                .iter()
                .map(|&v| Rational64::from_integer(v))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[Rational64] {
        &self.values
    }

    /// `gamma(k mod n)`.
    pub fn value(&self, k: usize) -> Rational64 {
        self.values[k % self.n()]
    }

    pub fn value_f64(&self, k: usize) -> f64 {
        to_f64(self.value(k))
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.values.iter().map(|&v| to_f64(v)).collect()
    }

    /// `gamma(k) = gamma(n - k)` for every k.
    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<usize> {
        let n = self.n();
        (1..n).find(|&k| self.values[k] != self.values[n - k])
    }

    /// Entrywise `self <= other`.
    pub fn dominated_by(&self, other: &Weight) -> Result<bool> {
        crate::error::check_len(self.n(), other.n())?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    /// `factor * gamma` under a new label.
    pub fn scaled(&self, factor: Rational64, label: impl Into<String>) -> Result<Self> {
        Self::new(label, self.values.iter().map(|v| v * factor).collect())
    }

    /// Parses `{"n": int, "label": str, "values": [num | "p/q", ...]}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text)?;
        let obj = doc
            .as_object()
            .ok_or_else(|| Error::WeightFormat("expected a JSON object".into()))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::WeightFormat("missing integer field \"n\"".into()))?
            as usize;
        let label = match obj.get("label") {
            None => format!("custom{n}"),
            Some(Value::String(s)) => s.clone(),
            Some(_) => return Err(Error::WeightFormat("\"label\" must be a string".into())),
        };
        let raw = obj
            .get("values")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::WeightFormat("missing array field \"values\"".into()))?;
        if raw.len() != n {
            return Err(Error::WeightFormat(format!(
                "\"n\" is {n} but {} values were given",
                raw.len()
            )));
        }
        let values = raw
            .iter()
            .enumerate()
            .map(|(k, v)| {
                parse_value(v).map_err(|e| Error::WeightFormat(format!("values[{k}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(label, values)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    /// JSON form; integers are written as numbers, other rationals as "p/q".
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "n": self.n(),
            "label": self.label,
            "values": self.values.iter().map(rational_json).collect::<Vec<_>>(),
        })
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

pub(crate) fn to_f64(r: Rational64) -> f64 {
    r.to_f64().expect("rational within f64 range")
}

fn rational_json(r: &Rational64) -> Value {
    if r.is_integer() {
        Value::from(*r.numer())
    } else {
        Value::from(r.to_string())
    }
}

fn parse_value(v: &Value) -> std::result::Result<Rational64, String> {
    match v {
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(Rational64::from_integer(i))
            } else {
                let x = num.as_f64().ok_or("not representable")?;
                Rational64::approximate_float(x).ok_or_else(|| format!("cannot represent {x}"))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<Rational64>()
            .map_err(|_| format!("\"{s}\" is not of the form p or p/q")),
        _ => Err("expected a number or a rational string".into()),
    }
}

/// `psi_n(k) = min(k, n - k)`.
pub fn word_length(n: usize) -> Result<Weight> {
    if n < 2 {
        return Err(invalid(format!("word length needs n >= 2, got {n}")));
    }
    let v: Vec<i64> = (0..n).map(|k| k.min(n - k) as i64).collect();
    Weight::from_integers(format!("psi{n}"), &v)
}

/// `(0, 1, 8/5, 1)` on Z_4.
pub fn phi4() -> Weight {
    let r = |a, b| Rational64::new(a, b);
    Weight::new("phi4", vec![r(0, 1), r(1, 1), r(8, 5), r(1, 1)]).expect("valid weight")
}

/// `(0, 1, 2, 1, 2, 1)` on Z_6.
pub fn phi6() -> Weight {
    Weight::from_integers("phi6", &[0, 1, 2, 1, 2, 1]).expect("valid weight")
}

fn modified_word_length(n: usize, middle: i64, label: String) -> Result<Weight> {
    let mut v: Vec<i64> = (0..n).map(|k| k.min(n - k) as i64).collect();
    v[n / 2] = middle;
    Weight::from_integers(label, &v)
}

/// Word length with the antipode lowered to 1.
pub fn gamma_odd_base(n: usize) -> Result<Weight> {
    if n < 4 || n % 2 != 0 {
        return Err(invalid(format!(
            "gamma_odd_base needs even n >= 4, got {n}"
        )));
    }
    modified_word_length(n, 1, format!("gamma-odd{n}"))
}

/// Word length with the antipode lowered to `n/2 - 1`.
pub fn gamma_even_tower(n: usize) -> Result<Weight> {
    if n < 6 || n % 2 != 0 {
        return Err(invalid(format!(
            "gamma_even_tower needs even n >= 6, got {n}"
        )));
    }
    modified_word_length(n, n as i64 / 2 - 1, format!("gamma-tower{n}"))
}

/// Outcome of one clause, with the first index that breaks it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub holds: bool,
    pub first_violation: Option<usize>,
}

impl Clause {
    fn from_violation(v: Option<usize>) -> Self {
        Self {
            holds: v.is_none(),
            first_violation: v,
        }
    }
}

/// The five clauses relating a weight on Z_n to one on Z_2n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub n: usize,
    pub labels: (String, String),
    /// `gamma_n(0) = gamma_2n(0) = 0`.
    pub zero_at_origin: Clause,
    pub symmetric_n: Clause,
    pub symmetric_2n: Clause,
    /// `gamma_2n(k) >= gamma_n(k)` for `1 <= k <= (n-1)/2`.
    pub dominates: Clause,
    /// `gamma_2n(n - k) - gamma_2n(k) - 1 >= 0` for `0 <= k <= (n-1)/2`.
    pub gap: Clause,
    pub holds: bool,
}

impl PairReport {
    /// Name of the first failing clause.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            ("zero_at_origin", self.zero_at_origin),
            ("symmetric_n", self.symmetric_n),
            ("symmetric_2n", self.symmetric_2n),
            ("dominates", self.dominates),
            ("gap", self.gap),
        ]
        .into_iter()
        .find(|(_, c)| !c.holds)
        .map(|(name, _)| name)
    }
}

pub fn check_pair_condition(gn: &Weight, g2n: &Weight) -> Result<PairReport> {
    let n = gn.n();
    if g2n.n() != 2 * n {
        return Err(Error::InvalidInput(format!(
            "pair sizes must be (n, 2n); got ({}, {})",
            n,
            g2n.n()
        )));
    }
    let zero = Rational64::zero();
    let one = Rational64::from_integer(1);
    let half = (n - 1) / 2;
    let zero_at_origin = Clause::from_violation(if gn.values[0] != zero || g2n.values[0] != zero {
        Some(0)
    } else {
        None
    });
    let symmetric_n = Clause::from_violation(gn.first_asymmetry());
    let symmetric_2n = Clause::from_violation(g2n.first_asymmetry());
    let dominates = Clause::from_violation((1..=half).find(|&k| g2n.values[k] < gn.values[k]));
    let gap = Clause::from_violation(
        (0..=half).find(|&k| g2n.values[n - k] - g2n.values[k] - one < zero),
    );
    let holds = [zero_at_origin, symmetric_n, symmetric_2n, dominates, gap]
        .iter()
        .all(|c| c.holds);
    Ok(PairReport {
        n,
        labels: (gn.label.clone(), g2n.label.clone()),
        zero_at_origin,
        symmetric_n,
        symmetric_2n,
        dominates,
        gap,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(w: &Weight) -> Vec<f64> {
        w.to_f64_vec()
    }

    #[test]
    fn builder_values() {
        assert_eq!(ints(&word_length(6).unwrap()), [0., 1., 2., 3., 2., 1.]);
        assert_eq!(ints(&word_length(4).unwrap()), [0., 1., 2., 1.]);
        assert_eq!(ints(&word_length(2).unwrap()), [0., 1.]);
        assert!(word_length(1).is_err());
        assert_eq!(ints(&phi4()), [0., 1., 1.6, 1.]);
        assert_eq!(ints(&phi6()), [0., 1., 2., 1., 2., 1.]);
        assert_eq!(
            ints(&gamma_odd_base(10).unwrap()),
            [0., 1., 2., 3., 4., 1., 4., 3., 2., 1.]
        );
        assert_eq!(ints(&gamma_odd_base(4).unwrap()), [0., 1., 1., 1.]);
        assert!(gamma_odd_base(7).is_err());
        assert_eq!(
            ints(&gamma_even_tower(6).unwrap()),
            [0., 1., 2., 2., 2., 1.]
        );
        assert_eq!(
            ints(&gamma_even_tower(8).unwrap()),
            [0., 1., 2., 3., 3., 3., 2., 1.]
        );
        let g12 = gamma_even_tower(12).unwrap();
        for k in 0..12 {
            let expect = if k == 6 { 5.0 } else { k.min(12 - k) as f64 };
            assert_eq!(g12.value_f64(k), expect);
        }
        assert!(gamma_even_tower(4).is_err());
        assert!(gamma_even_tower(9).is_err());
    }

    #[test]
    fn phi_weights_sit_below_word_length() {
        assert!(phi4().dominated_by(&word_length(4).unwrap()).unwrap());
        assert!(phi6().dominated_by(&word_length(6).unwrap()).unwrap());
        assert_eq!(phi6().values(), gamma_odd_base(6).unwrap().values());
        assert!(phi4().is_symmetric() && phi6().is_symmetric());
    }

    #[test]
    fn named_builders_are_symmetric_and_dominated() {
        for n in (4..=64).step_by(2) {
            let psi = word_length(n).unwrap();
            let odd = gamma_odd_base(n).unwrap();
            assert!(odd.is_symmetric() && odd.value(0).is_zero());
            assert!(odd.dominated_by(&psi).unwrap());
            if n >= 6 {
                let tower = gamma_even_tower(n).unwrap();
                assert!(tower.is_symmetric() && tower.value(0).is_zero());
                assert!(tower.dominated_by(&psi).unwrap());
            }
        }
    }

    #[test]
    fn pair_condition_examples() {
        let r = check_pair_condition(&phi6(), &gamma_even_tower(12).unwrap()).unwrap();
        assert!(r.holds, "{r:?}");
        let r = check_pair_condition(&phi4(), &gamma_odd_base(8).unwrap()).unwrap();
        assert!(r.holds, "{r:?}");
        let r = check_pair_condition(&word_length(4).unwrap(), &word_length(8).unwrap()).unwrap();
        assert!(r.gap.holds && r.holds);
        assert!(check_pair_condition(&phi4(), &phi6()).is_err());
    }

    #[test]
    fn pair_condition_reports_first_failure() {
        let bad = Weight::from_integers("flat", &[0, 1, 1, 1, 1, 1, 1, 1]).unwrap();
        let r = check_pair_condition(&phi4(), &bad).unwrap();
        assert!(!r.holds);
        assert_eq!(r.first_failure(), Some("gap"));
        assert_eq!(r.gap.first_violation, Some(1));
    }

    #[test]
    fn negative_values_rejected() {
        assert!(Weight::from_integers("neg", &[0, -1]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let w = phi4();
        let text = w.to_json().to_string();
        assert!(text.contains("\"8/5\""));
        assert_eq!(Weight::from_json_str(&text).unwrap(), w);
        let parsed =
            Weight::from_json_str(r#"{"n": 3, "label": "x", "values": [0, 0.5, "1/2"]}"#).unwrap();
        assert_eq!(parsed.value(1), parsed.value(2));
        assert!(Weight::from_json_str(r#"{"n": 2, "values": [0]}"#).is_err());
        assert!(Weight::from_json_str(r#"{"n": 2, "values": [0, "x/y"]}"#).is_err());
        assert!(Weight::from_json_str("[1, 2]").is_err());
    }
}
