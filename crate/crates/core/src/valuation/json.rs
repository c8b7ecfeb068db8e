//! JSON encodings. Rationals are `"p/q"` strings and infinity is `"inf"`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{parse_rat, ExtRat, LinearFrame, Rat};

use super::canonical::{canonicalize, CanonicalForm, Terminal};
use super::krull::{Rank2Val, Rank2Value};
use super::point::{DilatationStep, ProjPoint};
use super::qmv::{MonomialWeights, QuasiMonomialVal};
use super::ValuationError;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepJson {
    center: String,
}

type FrameJson = [[String; 2]; 2];

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ValuationJson {
    #[serde(default)]
    steps: Vec<StepJson>,
    #[serde(default)]
    frame: Option<FrameJson>,
    weights: [String; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveJson {
    direction: String,
    weight: String,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum TerminalJson {
    Divisorial(String),
    Curve(CurveJson),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CanonicalJson {
    #[serde(default)]
    steps: Vec<StepJson>,
    terminal: TerminalJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Rank2Json {
    #[serde(default)]
    frame: Option<FrameJson>,
    weights: [[String; 2]; 2],
}

fn format_err(e: impl std::fmt::Display) -> ValuationError {
    ValuationError::Format(e.to_string())
}

fn steps_to_json(steps: &[DilatationStep]) -> Vec<StepJson> {
    steps
        .iter()
        .map(|s| StepJson {
            center: s.center.center_string(),
        })
        .collect()
}

fn steps_from_json(steps: &[StepJson]) -> Result<Vec<DilatationStep>, ValuationError> {
    steps
        .iter()
        .map(|s| ProjPoint::parse_center(&s.center).map(DilatationStep::at))
        .collect()
}

fn frame_to_json(f: &LinearFrame) -> FrameJson {
    let m = f.rows();
    [
        [m[0][0].to_string(), m[0][1].to_string()],
        [m[1][0].to_string(), m[1][1].to_string()],
    ]
}

fn frame_from_json(f: &Option<FrameJson>) -> Result<LinearFrame, ValuationError> {
    match f {
        None => Ok(LinearFrame::identity()),
        Some(m) => {
            let r = |s: &String| parse_rat(s);
            Ok(LinearFrame::new([
                [r(&m[0][0])?, r(&m[0][1])?],
                [r(&m[1][0])?, r(&m[1][1])?],
            ])?)
        }
    }
}

fn ext(s: &str) -> Result<ExtRat, ValuationError> {
    Ok(s.parse::<ExtRat>()?)
}

pub fn qmv_to_value(v: &QuasiMonomialVal) -> Value {
    let j = ValuationJson {
        steps: steps_to_json(v.steps()),
        frame: Some(frame_to_json(v.frame())),
        weights: [v.weights().first().to_string(), v.weights().second().to_string()],
    };
    serde_json::to_value(j).expect("plain data")
}

pub fn qmv_from_value(value: &Value) -> Result<QuasiMonomialVal, ValuationError> {
    let j: ValuationJson = serde_json::from_value(value.clone()).map_err(format_err)?;
    let weights = MonomialWeights::new(ext(&j.weights[0])?, ext(&j.weights[1])?)?;
    QuasiMonomialVal::new(steps_from_json(&j.steps)?, frame_from_json(&j.frame)?, weights)
}

pub fn qmv_from_str(s: &str) -> Result<QuasiMonomialVal, ValuationError> {
    qmv_from_value(&serde_json::from_str(s).map_err(format_err)?)
}

pub fn canonical_to_value(c: &CanonicalForm) -> Value {
    let terminal = match &c.terminal {
        Terminal::Divisorial(g) => TerminalJson::Divisorial(g.to_string()),
        Terminal::Curve { direction, weight } => TerminalJson::Curve(CurveJson {
            direction: direction.to_string(),
            weight: weight.to_string(),
        }),
    };
    serde_json::to_value(CanonicalJson {
        steps: steps_to_json(&c.steps),
        terminal,
    })
    .expect("plain data")
}

/// Parses and validates a canonical form; the result is re-canonicalized,
/// so non-reduced input is accepted and reduced.
pub fn canonical_from_value(value: &Value) -> Result<CanonicalForm, ValuationError> {
    let j: CanonicalJson = serde_json::from_value(value.clone()).map_err(format_err)?;
    let positive = |s: &str| -> Result<Rat, ValuationError> {
        let r = parse_rat(s)?;
        if r > Rat::from_integer(0.into()) {
            Ok(r)
        } else {
            Err(ValuationError::NonPositiveWeight)
        }
    };
    let terminal = match &j.terminal {
        TerminalJson::Divisorial(g) => Terminal::Divisorial(positive(g)?),
        TerminalJson::Curve(c) => Terminal::Curve {
            direction: c.direction.parse()?,
            weight: positive(&c.weight)?,
        },
    };
    let raw = CanonicalForm {
        steps: steps_from_json(&j.steps)?,
        terminal,
    }
    .to_qmv();
    let checked = QuasiMonomialVal::new(raw.steps().to_vec(), raw.frame().clone(), raw.weights().clone())?;
    Ok(canonicalize(&checked))
}

pub fn canonical_from_str(s: &str) -> Result<CanonicalForm, ValuationError> {
    canonical_from_value(&serde_json::from_str(s).map_err(format_err)?)
}

fn pair_to_json(p: &(i64, Rat)) -> [String; 2] {
    [p.0.to_string(), p.1.to_string()]
}

fn pair_from_json(p: &[String; 2]) -> Result<(i64, Rat), ValuationError> {
    let i = p[0]
        .trim()
        .parse::<i64>()
        .map_err(|_| ValuationError::Format(format!("bad integer '{}'", p[0])))?;
    Ok((i, parse_rat(&p[1])?))
}

pub fn rank2_to_value(rho: &Rank2Val) -> Value {
    serde_json::to_value(Rank2Json {
        frame: Some(frame_to_json(&rho.frame)),
        weights: [pair_to_json(&rho.wx), pair_to_json(&rho.wy)],
    })
    .expect("plain data")
}

pub fn rank2_from_value(value: &Value) -> Result<Rank2Val, ValuationError> {
    let j: Rank2Json = serde_json::from_value(value.clone()).map_err(format_err)?;
    Ok(Rank2Val::with_frame(
        frame_from_json(&j.frame)?,
        pair_from_json(&j.weights[0])?,
        pair_from_json(&j.weights[1])?,
    ))
}

pub fn rank2_value_to_value(v: &Rank2Value) -> Value {
    match v {
        Rank2Value::Finite(i, q) => serde_json::json!([i.to_string(), q.to_string()]),
        Rank2Value::Infinity => Value::String("inf".into()),
    }
}

pub fn ext_to_value(v: &ExtRat) -> Value {
    Value::String(v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use serde_json::json;

    #[test]
    fn valuation_round_trip() {
        let v = qmv_from_str(r#"{"weights":["1","3/2"]}"#).unwrap();
        assert_eq!(
            v,
            QuasiMonomialVal::monomial(ExtRat::int(1), ExtRat::ratio(3, 2)).unwrap()
        );
        let full = json!({
            "steps": [{"center": "0"}, {"center": "inf"}],
            "frame": [["1", "0"], ["0", "1"]],
            "weights": ["1", "3/2"]
        });
        let w = qmv_from_value(&full).unwrap();
        assert_eq!(qmv_to_value(&w), full);
        assert_eq!(qmv_from_value(&qmv_to_value(&w)).unwrap(), w);
        let curve = qmv_from_str(r#"{"weights":["1","inf"]}"#).unwrap();
        assert_eq!(qmv_from_value(&qmv_to_value(&curve)).unwrap(), curve);
    }

    #[test]
    fn valuation_rejections() {
        assert!(qmv_from_str(r#"{"weights":["inf","inf"]}"#).is_err());
        assert!(qmv_from_str(r#"{"weights":["0","1"]}"#).is_err());
        assert!(qmv_from_str(r#"{"weights":["1","1"],"extra":1}"#).is_err());
        assert!(qmv_from_str(r#"{"weights":["1","1"],"frame":[["1","1"],["1","1"]]}"#).is_err());
        assert!(qmv_from_str("not json").is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let c = canonicalize(&QuasiMonomialVal::monomial(ExtRat::int(1), ExtRat::ratio(3, 2)).unwrap());
        let v = canonical_to_value(&c);
        assert_eq!(
            v,
            json!({"steps":[{"center":"0"},{"center":"inf"}],"terminal":{"divisorial":"1/2"}})
        );
        assert_eq!(canonical_from_value(&v).unwrap(), c);
        let curve = canonical_from_str(
            r#"{"terminal":{"curve":{"direction":"[0:1]","weight":"1"}}}"#,
        )
        .unwrap();
        assert_eq!(
            curve.terminal,
            Terminal::Curve {
                direction: ProjPoint::Finite(rat(0)),
                weight: rat(1)
            }
        );
        assert_eq!(canonical_from_value(&canonical_to_value(&curve)).unwrap(), curve);
    }

    #[test]
    fn rank2_round_trip() {
        let rho = Rank2Val::new((1, rat(0)), (1, rat(1)));
        let v = rank2_to_value(&rho);
        assert_eq!(v["weights"], json!([["1", "0"], ["1", "1"]]));
        assert_eq!(rank2_from_value(&v).unwrap(), rho);
        assert_eq!(
            rank2_value_to_value(&Rank2Value::Finite(2, rat(1))),
            json!(["2", "1"])
        );
    }
}
