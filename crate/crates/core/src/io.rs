//! JSON file formats: `(q, φ)` objects, representations over series and
//! trace triples. Exact scalars travel as `"p/q"` strings.

use serde_json::{json, Map, Value};

use crate::homology::Lambda3Form;
use crate::jets::Series;
use crate::linalg::Mat2;
use crate::parallelogram::QuadraticForm;
use crate::scalar::{format_rational, parse_rational, ScalarMode, SeriesScalar};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("missing field {0:?}")]
    Missing(&'static str),
    #[error("{field}: {msg}")]
    Invalid { field: String, msg: String },
}

fn invalid(field: impl Into<String>, msg: impl Into<String>) -> IoError {
    IoError::Invalid { field: field.into(), msg: msg.into() }
}

pub fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

fn rational_of(v: &Value, field: &str) -> Result<Rational, IoError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| invalid(field, e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .or_else(|| n.as_f64().and_then(|f| parse_rational(&f.to_string()).ok()))
            .ok_or_else(|| invalid(field, "not a number")),
        _ => Err(invalid(field, "expected a rational")),
    }
}

/// `{"q": [[…]], "phi": {"i,j,k": "p/q"}}` with 1-based triple keys.
pub fn qphi_from_json(v: &Value) -> Result<(QuadraticForm, Lambda3Form), IoError> {
    let rows = v.get("q").and_then(Value::as_array).ok_or(IoError::Missing("q"))?;
    let n = rows.len();
    let mut q = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| invalid(format!("q[{i}]"), "expected an array"))?;
        if row.len() != n {
            return Err(invalid(format!("q[{i}]"), format!("expected {n} entries")));
        }
        q.push(row.iter().map(|x| rational_of(x, "q")).collect::<Result<Vec<_>, _>>()?);
    }
    let q = QuadraticForm::from_rows(q).map_err(|e| invalid("q", e.to_string()))?;
    let mut phi = Lambda3Form::zero();
    if let Some(obj) = v.get("phi") {
        let obj = obj.as_object().ok_or_else(|| invalid("phi", "expected an object"))?;
        for (key, val) in obj {
            let idx: Vec<usize> = key
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| invalid(format!("phi[{key}]"), "keys are \"i,j,k\""))?;
            let [i, j, k] = idx[..] else {
                return Err(invalid(format!("phi[{key}]"), "keys are \"i,j,k\""));
            };
            if [i, j, k].iter().any(|&x| x == 0 || x > n) {
                return Err(invalid(format!("phi[{key}]"), format!("indices must lie in 1..={n}")));
            }
            phi.add_to(i - 1, j - 1, k - 1, rational_of(val, "phi")?);
        }
    }
    Ok((q, phi))
}

pub fn qphi_to_json(q: &QuadraticForm, phi: &Lambda3Form) -> Value {
    json!({ "q": q.to_json(), "phi": Value::Object(phi.to_json_map()) })
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

/// Mode implied by the scalars in a document: floats if any JSON number is
/// fractional or any entry is an `[re, im]` pair, Gaussian if a string has `i`.
pub fn detect_mode(v: &Value) -> ScalarMode {
    fn walk(v: &Value, mode: &mut ScalarMode) {
        match v {
            Value::Number(n) if n.as_i64().is_none() => *mode = ScalarMode::ComplexFloating,
            Value::String(s) if s.contains('i') && *mode == ScalarMode::ExactRational => {
                *mode = ScalarMode::GaussianRational
            }
            Value::Array(items) => {
                if items.len() == 2
                    && items.iter().all(|x| x.as_f64().is_some())
                    && items.iter().any(|x| x.as_i64().is_none())
                {
                    *mode = ScalarMode::ComplexFloating;
                }
                items.iter().for_each(|x| walk(x, mode));
            }
            Value::Object(m) => m.values().for_each(|x| walk(x, mode)),
            _ => {}
        }
    }
    let mut mode = ScalarMode::ExactRational;
    walk(v, &mut mode);
    mode
}

fn series_of<S: SeriesScalar>(v: &Value, order: usize, field: &str) -> Result<Series<S>, IoError> {
    let items = v.as_array().ok_or_else(|| invalid(field, "expected a coefficient array"))?;
    let coeffs = items
        .iter()
        .map(|x| S::from_json(x).ok_or_else(|| invalid(field, format!("bad scalar {x}"))))
        .collect::<Result<Vec<S>, _>>()?;
    Ok(Series::from_coeffs(coeffs, order))
}

/// Coefficients `c_0 … c_order`, or `{"valuation", "coefficients"}` when there is a pole.
pub fn series_to_json<S: SeriesScalar>(s: &Series<S>, order: usize) -> Value {
    match s.valuation() {
        Some(v) if v < 0 => json!({
            "valuation": v,
            "coefficients": (v..=order as i64).map(|k| s.coefficient(k).to_json()).collect::<Vec<_>>(),
        }),
        _ => Value::Array(s.coefficients_to(order).iter().map(S::to_json).collect()),
    }
}

pub fn mat2_to_json<S: SeriesScalar>(m: &Mat2<Series<S>>, order: usize) -> Value {
    json!([
        [series_to_json(&m.a, order), series_to_json(&m.b, order)],
        [series_to_json(&m.c, order), series_to_json(&m.d, order)]
    ])
}

/// A representation file: generator names in file order, images, order.
#[derive(Debug, Clone, PartialEq)]
pub struct RepFile<S> {
    pub order: usize,
    pub names: Vec<String>,
    pub images: Vec<Mat2<Series<S>>>,
}

fn order_of(v: &Value) -> Result<usize, IoError> {
    v.get("order")
        .ok_or(IoError::Missing("order"))?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| invalid("order", "expected a non-negative integer"))
}

/// `{"order": N, "gens": {"a": [[c₀₀, c₀₁], [c₁₀, c₁₁]]}}` with coefficient arrays.
pub fn rep_from_json<S: SeriesScalar>(v: &Value) -> Result<RepFile<S>, IoError> {
    let order = order_of(v)?;
    let gens = v.get("gens").and_then(Value::as_object).ok_or(IoError::Missing("gens"))?;
    let mut names = Vec::new();
    let mut images = Vec::new();
    for (name, m) in gens {
        let field = format!("gens.{name}");
        let rows = m.as_array().filter(|r| r.len() == 2).ok_or_else(|| invalid(&field, "expected a 2×2 array"))?;
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(|| invalid(&field, "expected a 2×2 array"))?;
            for e in row {
                entries.push(series_of::<S>(e, order, &field)?);
            }
        }
        let [a, b, c, d]: [Series<S>; 4] = entries.try_into().expect("four entries");
        names.push(name.clone());
        images.push(Mat2::new(a, b, c, d));
    }
    Ok(RepFile { order, names, images })
}

pub fn rep_to_json<S: SeriesScalar>(rep: &RepFile<S>) -> Value {
    let gens: Map<String, Value> =
        rep.names.iter().zip(&rep.images).map(|(n, m)| (n.clone(), mat2_to_json(m, rep.order))).collect();
    let mut out = Map::new();
    out.insert("order".into(), json!(rep.order));
    if !S::MODE.is_exact() {
        out.insert("mode".into(), json!("floating"));
    }
    out.insert("gens".into(), Value::Object(gens));
    Value::Object(out)
}

/// `{"order": N, "x": […], "y": […], "z": […]}`.
pub fn traces_from_json<S: SeriesScalar>(v: &Value) -> Result<(usize, [Series<S>; 3]), IoError> {
    let order = order_of(v)?;
    let get =
        |k: &'static str| -> Result<Series<S>, IoError> { series_of(v.get(k).ok_or(IoError::Missing(k))?, order, k) };
    Ok((order, [get("x")?, get("y")?, get("z")?]))
}

pub fn traces_to_json<S: SeriesScalar>(order: usize, x: &Series<S>, y: &Series<S>, z: &Series<S>) -> Value {
    json!({
        "order": order,
        "x": series_to_json(x, order),
        "y": series_to_json(y, order),
        "z": series_to_json(z, order),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::Gaussian;

    #[test]
    fn qphi_round_trip() {
        let v = parse_json(r#"{"q": [["1", "1/2", 0], ["1/2", "0", "0"], ["0", "0", "-3"]], "phi": {"1,2,3": "2"}}"#)
            .unwrap();
        let (q, phi) = qphi_from_json(&v).unwrap();
        assert_eq!(q.get(0, 1), &rat(1, 2));
        assert_eq!(phi.get(0, 1, 2), int(2));
        let back = qphi_from_json(&qphi_to_json(&q, &phi)).unwrap();
        assert_eq!(back, (q, phi));
        assert!(qphi_from_json(&parse_json(r#"{"q": [["1"]], "phi": {"1,2,3": "1"}}"#).unwrap()).is_err());
        assert!(qphi_from_json(&parse_json(r#"{"phi": {}}"#).unwrap()).is_err());
    }

    #[test]
    fn rep_round_trip() {
        let text = r#"{"order": 2, "gens": {"a": [[["1"], ["1"]], [["0"], ["1"]]], "b": [[["1"], ["0"]], [["0", "1"], ["1"]]]}}"#;
        let v = parse_json(text).unwrap();
        assert_eq!(detect_mode(&v), ScalarMode::ExactRational);
        let rep: RepFile<Rational> = rep_from_json(&v).unwrap();
        assert_eq!(rep.names, vec!["a", "b"]);
        assert_eq!(rep.images[1].c.coefficient(1), int(1));
        let again: RepFile<Rational> = rep_from_json(&rep_to_json(&rep)).unwrap();
        assert_eq!(again, rep);
    }

    #[test]
    fn modes() {
        assert_eq!(detect_mode(&parse_json(r#"{"x": ["1+2i"]}"#).unwrap()), ScalarMode::GaussianRational);
        assert_eq!(detect_mode(&parse_json(r#"{"x": [2.5]}"#).unwrap()), ScalarMode::ComplexFloating);
        let (order, [x, _, _]) = traces_from_json::<Gaussian>(
            &parse_json(r#"{"order": 1, "x": ["2", "i"], "y": ["2"], "z": ["2"]}"#).unwrap(),
        )
        .unwrap();
        assert_eq!(order, 1);
        assert_eq!(x.coefficient(1), Gaussian::new(int(0), int(1)));
    }
}
