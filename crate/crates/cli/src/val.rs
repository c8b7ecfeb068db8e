use serde_json::{json, Value};

use valtree::algebra::{BivarPoly, ExtRat};
use valtree::testkit::{sampling_leq_oracle, LeqVerdict};
use valtree::valuation::json::{
    canonical_from_value, canonical_to_value, ext_to_value, qmv_from_value, qmv_to_value,
    rank2_to_value, rank2_value_to_value,
};
use valtree::valuation::{
    canonicalize, common_minimizer, compare, homogeneous_witness, inf_finite, krull, Comparison,
    Krull, QuasiMonomialVal, StreamEntry,
};

use crate::{usage, CmdResult, Failure, Output, ValArgs};

/// Accepts both the program form (`weights`) and the canonical form (`terminal`).
fn parse_valuation(src: &str) -> Result<QuasiMonomialVal, Failure> {
    let v: Value = serde_json::from_str(src).map_err(usage)?;
    if v.get("terminal").is_some() {
        Ok(canonical_from_value(&v).map_err(usage)?.to_qmv())
    } else {
        qmv_from_value(&v).map_err(usage)
    }
}

fn valuations(args: &ValArgs) -> Result<Vec<QuasiMonomialVal>, Failure> {
    let mut out = Vec::new();
    for path in &args.inputs {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        out.push(parse_valuation(&src)?);
    }
    for src in &args.valuations {
        out.push(parse_valuation(src)?);
    }
    Ok(out)
}

fn exactly<const N: usize>(args: &ValArgs) -> Result<[QuasiMonomialVal; N], Failure> {
    let vals = valuations(args)?;
    let n = vals.len();
    vals.try_into()
        .map_err(|_| Failure::Usage(format!("expected {N} valuation(s), got {n}")))
}

fn poly(args: &ValArgs) -> Result<BivarPoly, Failure> {
    args.poly
        .as_deref()
        .ok_or_else(|| Failure::Usage("--poly is required".into()))?
        .parse()
        .map_err(usage)
}

fn ext(v: &ExtRat) -> Output {
    Output::new(ext_to_value(v), v.to_string())
}

pub fn run(name: &str, args: &ValArgs) -> CmdResult {
    match name {
        "eval" => {
            let [v] = exactly(args)?;
            Ok(ext(&v.eval(&poly(args)?)))
        }
        "mvalue" => {
            let [v] = exactly(args)?;
            Ok(ext(&ExtRat::Finite(v.m_value())))
        }
        "normalize" => {
            let [v] = exactly(args)?;
            Ok(Output::json_only(qmv_to_value(&v.normalize())))
        }
        "canon" => {
            let [v] = exactly(args)?;
            Ok(Output::json_only(canonical_to_value(&canonicalize(&v))))
        }
        "inf" => {
            let vals = valuations(args)?;
            let m = inf_finite(&vals).map_err(usage)?;
            Ok(Output::json_only(canonical_to_value(&canonicalize(&m))))
        }
        "compare" => run_compare(args),
        "stream" => {
            let [v] = exactly(args)?;
            Ok(report_stream(&v))
        }
        "krull" => run_krull(args),
        "common-min" => {
            let [v, mu] = exactly(args)?;
            let (a, b) = common_minimizer(&v, &mu);
            let form = BivarPoly::linear(a.clone(), b.clone());
            Ok(Output::new(json!([a.to_string(), b.to_string()]), form.to_string()))
        }
        "witness" => {
            let [v] = exactly(args)?;
            Ok(match homogeneous_witness(&v) {
                Some(p) => Output::new(Value::String(p.to_string()), p.to_string()),
                None => Output::new(Value::Null, "none"),
            })
        }
        other => Err(Failure::Usage(format!("unknown command {other}"))),
    }
}

fn run_compare(args: &ValArgs) -> CmdResult {
    let [v, mu] = exactly(args)?;
    let c = compare(&v, &mu);
    let mut out = Output::new(json!({ "comparison": c.to_string() }), c.to_string());
    let Some(n) = args.samples else {
        return Ok(out);
    };
    // Sampling can only refute: check each claimed inequality.
    let mut claims = Vec::new();
    if matches!(c, Comparison::Lt | Comparison::Eq) {
        claims.push((&v, &mu, "first ≤ second"));
    }
    if matches!(c, Comparison::Gt | Comparison::Eq) {
        claims.push((&mu, &v, "second ≤ first"));
    }
    if claims.is_empty() {
        return Ok(out);
    }
    for (a, b, what) in claims {
        if let LeqVerdict::Counterexample(phi) = sampling_leq_oracle(a, b, args.seed, n) {
            out.json["counterexample"] = Value::String(phi.to_string());
            out.text = format!("{c}\ncounterexample to {what}: {phi}");
            return Err(Failure::Check {
                message: format!("sampling refuted {what}"),
                report: out,
            });
        }
    }
    out.json["samples"] = json!(n);
    out.text = format!("{c}\nconsistent on {n} samples (seed {:#x})", args.seed);
    Ok(out)
}

fn run_krull(args: &ValArgs) -> CmdResult {
    let [v] = exactly(args)?;
    let k = krull(&v).map_err(usage)?;
    let phi = args.poly.as_ref().map(|_| poly(args)).transpose()?;
    let (mut json, mut text) = match &k {
        Krull::SameRank1(w) => (
            json!({"krull": "same_rank1", "valuation": qmv_to_value(w)}),
            "same rank 1 valuation".to_string(),
        ),
        Krull::Rank2 { rho, support_generator } => (
            json!({
                "krull": "rank2",
                "rho": rank2_to_value(rho),
                "support_generator": support_generator.to_string(),
            }),
            format!(
                "rank 2, support ({support_generator}), x -> ({}, {}), y -> ({}, {})",
                rho.wx.0, rho.wx.1, rho.wy.0, rho.wy.1
            ),
        ),
    };
    if let Some(phi) = phi {
        let (value, shown) = match &k {
            Krull::SameRank1(w) => {
                let e = w.eval(&phi);
                (ext_to_value(&e), e.to_string())
            }
            Krull::Rank2 { rho, .. } => {
                let r = valtree::valuation::rank2_eval(rho, &phi);
                (rank2_value_to_value(&r), r.to_string())
            }
        };
        json["value"] = value;
        text = format!("{text}\nvalue of {phi}: {shown}");
    }
    Ok(Output::new(json, text))
}

/// Level, center and multiplicity table plus `λ(ν)` and the canonical form.
/// A curve's infinite constant tail is shown once.
pub fn report_stream(v: &QuasiMonomialVal) -> Output {
    let form = canonicalize(v);
    let mut rows = Vec::new();
    let mut text = String::from("level  center  multiplicity\n");
    let mut terminal = Value::Null;
    let real_steps = form.steps.len();
    for entry in form.stream() {
        match entry {
            StreamEntry::Step { level, center, multiplicity } => {
                if form.is_curve() && level >= real_steps {
                    let tail = format!("center {}, m={multiplicity} (repeats)", center.center_string());
                    text.push_str(&format!("{level:>5}  {tail}\n"));
                    terminal = json!({
                        "curve_tail": {"level": level, "center": center.center_string(), "multiplicity": multiplicity.to_string()}
                    });
                    break;
                }
                text.push_str(&format!(
                    "{level:>5}  {:>6}  {multiplicity}\n",
                    center.center_string()
                ));
                rows.push(json!({
                    "level": level,
                    "center": center.center_string(),
                    "multiplicity": multiplicity.to_string(),
                }));
            }
            StreamEntry::Terminal { level, multiplicity } => {
                text.push_str(&format!("{level:>5}  terminal, m={multiplicity}\n"));
                terminal = json!({"divisorial": {"level": level, "multiplicity": multiplicity.to_string()}});
            }
        }
    }
    let lambda = match form.lambda() {
        Some(l) => json!(l),
        None => json!("inf"),
    };
    text.push_str(&format!(
        "lambda = {}\ncanonical form: {form}",
        form.lambda().map_or("inf".to_string(), |l| l.to_string())
    ));
    Output::new(
        json!({
            "rows": rows,
            "terminal": terminal,
            "lambda": lambda,
            "canonical": canonical_to_value(&form),
        }),
        text,
    )
}
