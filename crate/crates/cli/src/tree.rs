use rand::Rng;
use serde_json::{json, Value};

use valtree::algebra::{ExtRat, Rat};
use valtree::testkit::{gen_pos_rat, rng};
use valtree::tree::json::{tree_from_str, TreeFile};
use valtree::tree::{
    ball_in_subbasic_check, exa1_infimum, star_witness, t_axiom_check, t_inf_set, AxiomReport,
    Exa1Infimum, Exa1Model, Exa1Point, Param, SyntheticTree, TangentRef, TreeModel, TreePoint,
};

use crate::{usage, CmdResult, Failure, Output, TreeArgs};

fn load(args: &TreeArgs) -> Result<TreeFile, Failure> {
    let path = args
        .tree
        .as_ref()
        .ok_or_else(|| Failure::Usage("--tree is required".into()))?;
    let src = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    tree_from_str(&src).map_err(usage)
}

fn synthetic(args: &TreeArgs) -> Result<(SyntheticTree, Param), Failure> {
    match load(args)? {
        TreeFile::Synthetic { tree, psi } => Ok((tree, psi)),
        TreeFile::Exa1 => Err(Failure::Usage(
            "this command needs a tree with edges, not the exa1 poset".into(),
        )),
    }
}

fn point(tree: &SyntheticTree, flag: &str, s: Option<&String>) -> Result<TreePoint, Failure> {
    let s = s.ok_or_else(|| Failure::Usage(format!("--{flag} is required")))?;
    tree.parse_point(s).map_err(usage)
}

fn points(tree: &SyntheticTree, args: &TreeArgs) -> Result<Vec<TreePoint>, Failure> {
    args.points
        .iter()
        .map(|s| tree.parse_point(s).map_err(usage))
        .collect()
}

pub fn run(name: &str, args: &TreeArgs) -> CmdResult {
    match name {
        "check" => run_check(args),
        "inf" => run_inf(args),
        "dist" => {
            let (tree, psi) = synthetic(args)?;
            let [p, q]: [TreePoint; 2] = points(&tree, args)?
                .try_into()
                .map_err(|_| Failure::Usage("dist needs exactly two --points".into()))?;
            let d = psi.t_dpsi(&tree, &p, &q).map_err(usage)?;
            Ok(Output::new(Value::String(d.to_string()), d.to_string()))
        }
        "nbhd" => {
            let (tree, _) = synthetic(args)?;
            let base = point(&tree, "base", args.base.as_ref())?;
            let rep = point(&tree, "rep", args.rep.as_ref())?;
            let v = TangentRef::new(base, rep).map_err(usage)?;
            let mut rows = Vec::new();
            let mut text = Vec::new();
            for p in points(&tree, args)? {
                let inside = v.contains(&tree, &p).map_err(usage)?;
                text.push(format!("{}: {}", tree.address(&p), if inside { "in" } else { "out" }));
                rows.push(json!({"point": tree.address(&p), "member": inside}));
            }
            Ok(Output::new(Value::Array(rows), text.join("\n")))
        }
        "ball-check" => {
            let (tree, psi) = synthetic(args)?;
            let sigma = point(&tree, "sigma", args.sigma.as_ref())?;
            let tau = point(&tree, "tau", args.tau.as_ref())?;
            let gamma = point(&tree, "gamma", args.gamma.as_ref())?;
            let rep = ball_in_subbasic_check(&tree, &psi, &sigma, &tau, &gamma, args.grid)
                .map_err(usage)?;
            let text = format!(
                "epsilon {}, {} of {} grid points in the ball, {} outside the tangent vector",
                rep.epsilon,
                rep.in_ball,
                rep.sampled,
                rep.violations.len()
            );
            let out = Output::new(serde_json::to_value(&rep).unwrap(), text);
            if rep.pass() {
                Ok(out)
            } else {
                Err(Failure::Check {
                    message: format!("ball leaves the tangent vector at {}", rep.violations.join(", ")),
                    report: out,
                })
            }
        }
        "countability" => run_countability(args),
        other => Err(Failure::Usage(format!("unknown command {other}"))),
    }
}

fn axiom_output(report: AxiomReport) -> CmdResult {
    let text = report
        .results
        .iter()
        .map(|r| {
            let mut line = format!("{} {}  {}", r.axiom, if r.pass { "PASS" } else { "FAIL" }, r.detail);
            if let Some(w) = &r.witness {
                line.push_str(&format!("\n   witness: {w}"));
            }
            line
        })
        .collect::<Vec<_>>()
        .join("\n");
    let out = Output::new(serde_json::to_value(&report).unwrap(), text);
    if report.all_pass() {
        Ok(out)
    } else {
        let failed: Vec<&str> = report.results.iter().filter(|r| !r.pass).map(|r| r.axiom.as_str()).collect();
        Err(Failure::Check {
            message: format!("axioms failing: {}", failed.join(", ")),
            report: out,
        })
    }
}

fn run_check(args: &TreeArgs) -> CmdResult {
    match load(args)? {
        TreeFile::Synthetic { tree, .. } => axiom_output(t_axiom_check(
            &TreeModel { tree: &tree, grid: args.grid },
            args.subset_bound,
        )),
        TreeFile::Exa1 => axiom_output(t_axiom_check(&Exa1Model { grid: args.grid }, args.subset_bound)),
    }
}

fn run_inf(args: &TreeArgs) -> CmdResult {
    match load(args)? {
        TreeFile::Synthetic { tree, psi } => {
            let set = points(&tree, args)?;
            let tau = match &args.tau {
                Some(s) => tree.parse_point(s).map_err(usage)?,
                None => set
                    .first()
                    .cloned()
                    .ok_or_else(|| Failure::Usage("--points is empty".into()))?,
            };
            let inf = t_inf_set(&tree, &set, &tau, &psi).map_err(usage)?;
            let value = psi.psi(&tree, &inf).map_err(usage)?;
            Ok(Output::new(
                json!({"point": tree.address(&inf), "psi": value.to_string()}),
                format!("{} (psi = {value})", tree.address(&inf)),
            ))
        }
        TreeFile::Exa1 => {
            let set: Vec<Exa1Point> = args
                .points
                .iter()
                .map(|s| Exa1Point::parse(s).map_err(usage))
                .collect::<Result<_, _>>()?;
            match exa1_infimum(&set, args.steps).map_err(usage)? {
                Exa1Infimum::Point(p) => Ok(Output::new(json!({"point": p.to_string()}), p.to_string())),
                Exa1Infimum::None(w) => {
                    let schedule: Vec<String> = w.schedule.iter().map(Rat::to_string).collect();
                    let shown = schedule.iter().rev().take(3).rev().cloned().collect::<Vec<_>>().join(", ");
                    let out = Output::new(
                        json!({"point": Value::Null, "lower_bounds": schedule, "verified": w.verify()}),
                        format!(
                            "no infimum: lower bounds seg@t strictly increase without a greatest one (..., {shown}; {} verified)",
                            w.schedule.len()
                        ),
                    );
                    Err(Failure::Check {
                        message: "no infimum".into(),
                        report: out,
                    })
                }
            }
        }
    }
}

fn run_countability(args: &TreeArgs) -> CmdResult {
    let star = SyntheticTree::star(args.branches);
    let mut r = rng(args.seed);
    let nb: Vec<TangentRef> = (0..args.neighborhoods)
        .map(|_| {
            let branch = r.gen_range(1..=args.branches.max(1));
            let t = ExtRat::Finite(gen_pos_rat(&mut r, 1, 8));
            TangentRef::new(star.point(branch, t).unwrap(), star.root()).unwrap()
        })
        .collect();
    let w = star_witness(&star, &nb).map_err(usage)?;
    let bases: Vec<String> = nb.iter().map(|v| star.address(&v.base)).collect();
    Ok(Output::new(
        json!({
            "seed": args.seed,
            "neighborhood_bases": bases,
            "alpha": star.address(&w.alpha),
            "verified": w.verified,
        }),
        format!(
            "seed {:#x}: alpha = {} lies in all {} neighborhoods and none fits inside its tangent vector towards the center",
            args.seed,
            star.address(&w.alpha),
            w.verified
        ),
    ))
}
