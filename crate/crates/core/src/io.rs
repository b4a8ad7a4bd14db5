//! JSON forms of the core types. Rationals are always strings `"p/q"`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fundamental::FundamentalMatrix;
use crate::linalg::QMatrix;
use crate::multiplier::MultiplierData;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::series::QSeries;

/// A rational given either as a string or as a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalField {
    Text(String),
    Int(i64),
}

impl RationalField {
    pub fn value(&self) -> Result<Rational> {
        match self {
            RationalField::Text(s) => parse_rational(s),
            RationalField::Int(n) => Ok(crate::rational::int(*n)),
        }
    }
}

/// `{"d", "w", "alpha", "beta", "lambda", "chi"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplierSpec {
    pub d: usize,
    pub w: RationalField,
    pub alpha: [usize; 2],
    pub beta: [usize; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<RationalField>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<Vec<RationalField>>>,
}

impl MultiplierSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("spec JSON: {e}")))
    }

    pub fn from_parts(
        m: &MultiplierData,
        lambda: Option<&[Rational]>,
        chi: Option<&QMatrix>,
    ) -> Self {
        let f = |r: &Rational| RationalField::Text(format_rational(r));
        MultiplierSpec {
            d: m.d,
            w: f(&m.w),
            alpha: m.alpha,
            beta: m.beta,
            lambda: lambda.map(|l| l.iter().map(f).collect()),
            chi: chi.map(|c| c.rows().iter().map(|r| r.iter().map(f).collect()).collect()),
        }
    }

    pub fn multiplier(&self) -> Result<MultiplierData> {
        let m = MultiplierData::new(self.d, self.w.value()?, self.alpha, self.beta)?;
        match self.lambda()? {
            Some(l) => m.with_exponent(l),
            None => Ok(m),
        }
    }

    pub fn lambda(&self) -> Result<Option<Vec<Rational>>> {
        self.lambda
            .as_ref()
            .map(|l| l.iter().map(RationalField::value).collect())
            .transpose()
    }

    pub fn require_lambda(&self) -> Result<Vec<Rational>> {
        self.lambda()?
            .ok_or_else(|| Error::InvalidInput("spec: missing \"lambda\"".into()))
    }

    pub fn chi(&self) -> Result<QMatrix> {
        let rows = self
            .chi
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("spec: missing \"chi\"".into()))?;
        if rows.len() != self.d || rows.iter().any(|r| r.len() != self.d) {
            return Err(Error::InvalidInput(format!(
                "spec: \"chi\" must be {0}x{0}",
                self.d
            )));
        }
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(RationalField::value).collect())
                .collect::<Result<_>>()?,
        )
    }
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn matrix_json(m: &QMatrix) -> Value {
    Value::Array(m.rows().iter().map(|r| vector_json(r)).collect())
}

pub fn series_json(s: &QSeries) -> Value {
    json!({"offset": rational_json(s.offset()), "coeffs": vector_json(s.coeffs()), "order": s.order()})
}

pub fn series_from_json(v: &Value) -> Result<QSeries> {
    let bad = |what: &str| Error::InvalidInput(format!("series JSON: {what}"));
    let offset = parse_rational(
        v["offset"]
            .as_str()
            .ok_or_else(|| bad("offset must be a string"))?,
    )?;
    let coeffs = v["coeffs"]
        .as_array()
        .ok_or_else(|| bad("coeffs must be an array"))?
        .iter()
        .map(|c| {
            parse_rational(
                c.as_str()
                    .ok_or_else(|| bad("coefficients must be strings"))?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    QSeries::new(offset, coeffs)
}

pub fn fundamental_json(fm: &FundamentalMatrix) -> Value {
    json!({
        "w": rational_json(&fm.w),
        "order": fm.order(),
        "Lambda": vector_json(&fm.lambda),
        "chi": matrix_json(fm.chi()),
        "Xi": Value::Array(fm.coeffs.iter().map(matrix_json).collect()),
    })
}

pub fn fundamental_from_json(v: &Value) -> Result<FundamentalMatrix> {
    let bad = |what: &str| Error::InvalidInput(format!("fundamental JSON: {what}"));
    let strs = |v: &Value| -> Result<Vec<Rational>> {
        v.as_array()
            .ok_or_else(|| bad("expected an array"))?
            .iter()
            .map(|c| parse_rational(c.as_str().ok_or_else(|| bad("rationals must be strings"))?))
            .collect()
    };
    let w = parse_rational(v["w"].as_str().ok_or_else(|| bad("w"))?)?;
    let lambda = strs(&v["Lambda"])?;
    let coeffs = v["Xi"]
        .as_array()
        .ok_or_else(|| bad("Xi"))?
        .iter()
        .map(|m| {
            let rows = m
                .as_array()
                .ok_or_else(|| bad("Xi entries must be matrices"))?;
            QMatrix::from_rows(rows.iter().map(strs).collect::<Result<_>>()?)
        })
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() < 2 {
        return Err(bad("Xi needs at least two coefficients"));
    }
    Ok(FundamentalMatrix { w, lambda, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms;
    use crate::fundamental::solve_recursion;
    use crate::rational::{int, rat};

    #[test]
    fn spec_round_trip() {
        let text = r#"{"d":2,"w":"0","alpha":[1,1],"beta":[1,1,0],
            "lambda":["1/6","-1"],"chi":[["-4/7","20736/637"],["10368","-1704/7"]]}"#;
        let spec = MultiplierSpec::parse(text).unwrap();
        assert_eq!(spec.require_lambda().unwrap(), vec![rat(1, 6), int(-1)]);
        assert_eq!(spec.chi().unwrap()[(0, 1)], rat(20736, 637));
        let again = MultiplierSpec::parse(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn spec_errors() {
        assert!(MultiplierSpec::parse(r#"{"d":2}"#).is_err());
        assert!(
            MultiplierSpec::parse(r#"{"d":1,"w":0,"alpha":[1,0],"beta":[1,0,0],"bogus":1}"#)
                .is_err()
        );
        let s =
            MultiplierSpec::parse(r#"{"d":1,"w":0,"alpha":[1,0],"beta":[1,0,0],"chi":[["x"]]}"#)
                .unwrap();
        assert!(s.chi().is_err());
    }

    #[test]
    fn series_and_fundamental_round_trip() {
        let j = forms::j_invariant(5);
        assert_eq!(series_from_json(&series_json(&j)).unwrap(), j);
        let fm = solve_recursion(
            &[rat(1, 6), int(-1)],
            &QMatrix::from_rows(vec![
                vec![rat(-4, 7), rat(20736, 637)],
                vec![int(10368), rat(-1704, 7)],
            ])
            .unwrap(),
            &int(0),
            5,
        )
        .unwrap();
        let v = fundamental_json(&fm);
        assert_eq!(fundamental_from_json(&v).unwrap(), fm);
        let text = serde_json::to_string(&v).unwrap();
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
