//! Tree description files.
//!
//! ```json
//! {"nodes":{"root":{"children":[{"edge":"3/2","node":{}},{"edge":"inf","node":{}}]}},
//!  "psi":"arclength+1"}
//! ```
//!
//! `psi` may instead be `{"slopes":{"0":"2","0/1":"1/2"}}`; unlisted edges get slope 1.
//! The counterexample poset is `{"poset":"exa1"}`.

use num_traits::One;
use serde_json::{json, Map, Value};

use crate::algebra::{parse_rat, ExtRat, Rat};

use super::param::Param;
use super::synthetic::{SyntheticTree, TreeBuilder};
use super::TreeError;

pub enum TreeFile {
    Synthetic { tree: SyntheticTree, psi: Param },
    Exa1,
}

fn bad(msg: impl Into<String>) -> TreeError {
    TreeError::Format(msg.into())
}

fn add_children(b: &mut TreeBuilder, parent: usize, node: &Value) -> Result<(), TreeError> {
    let obj = node.as_object().ok_or_else(|| bad("node must be an object"))?;
    if let Some(k) = obj.keys().find(|k| k.as_str() != "children") {
        return Err(bad(format!("unknown node field '{k}'")));
    }
    let Some(children) = obj.get("children") else {
        return Ok(());
    };
    for child in children.as_array().ok_or_else(|| bad("children must be a list"))? {
        let c = child.as_object().ok_or_else(|| bad("child must be an object"))?;
        let edge = c
            .get("edge")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("child needs an \"edge\" string"))?;
        let len: ExtRat = edge.parse().map_err(|e| bad(format!("edge '{edge}': {e}")))?;
        let id = b.add_child(parent, len)?;
        let empty = Value::Object(Map::new());
        add_children(b, id, c.get("node").unwrap_or(&empty))?;
    }
    Ok(())
}

pub fn tree_from_value(v: &Value) -> Result<TreeFile, TreeError> {
    let obj = v.as_object().ok_or_else(|| bad("tree file must be an object"))?;
    if let Some(p) = obj.get("poset") {
        return match p.as_str() {
            Some("exa1") => Ok(TreeFile::Exa1),
            _ => Err(bad(format!("unknown poset {p}"))),
        };
    }
    if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "nodes" | "psi")) {
        return Err(bad(format!("unknown field '{k}'")));
    }
    let root = obj
        .get("nodes")
        .and_then(|n| n.get("root"))
        .ok_or_else(|| bad("missing nodes.root"))?;
    let mut b = TreeBuilder::new();
    add_children(&mut b, 0, root)?;
    let tree = b.build();
    let psi = match obj.get("psi") {
        None => Param::arclength_plus_one(&tree),
        Some(Value::String(s)) if s == "arclength+1" => Param::arclength_plus_one(&tree),
        Some(Value::Object(o)) => {
            let slopes_obj = o
                .get("slopes")
                .and_then(Value::as_object)
                .ok_or_else(|| bad("psi object needs \"slopes\""))?;
            let mut slopes = vec![Rat::one(); tree.node_count()];
            for (addr, s) in slopes_obj {
                let node = tree.resolve_node(addr)?;
                let s = s.as_str().ok_or_else(|| bad("slope must be a string"))?;
                slopes[node] = parse_rat(s).map_err(|e| bad(e.to_string()))?;
            }
            Param::new(&tree, slopes)?
        }
        Some(other) => return Err(bad(format!("unknown psi {other}"))),
    };
    Ok(TreeFile::Synthetic { tree, psi })
}

pub fn tree_from_str(s: &str) -> Result<TreeFile, TreeError> {
    tree_from_value(&serde_json::from_str(s).map_err(|e| bad(e.to_string()))?)
}

fn node_value(tree: &SyntheticTree, node: usize) -> Value {
    let children: Vec<Value> = tree
        .children(node)
        .iter()
        .map(|&c| json!({"edge": tree.edge_length(c).to_string(), "node": node_value(tree, c)}))
        .collect();
    if children.is_empty() {
        json!({})
    } else {
        json!({ "children": children })
    }
}

pub fn tree_to_value(tree: &SyntheticTree, psi: &Param) -> Value {
    let slopes: Map<String, Value> = (1..tree.node_count())
        .filter(|&n| !psi.slope(n).is_one())
        .map(|n| (tree.node_address(n), Value::String(psi.slope(n).to_string())))
        .collect();
    let psi_value = if slopes.is_empty() {
        Value::String("arclength+1".into())
    } else {
        json!({ "slopes": slopes })
    };
    json!({"nodes": {"root": node_value(tree, 0)}, "psi": psi_value})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = r#"{"nodes":{"root":{"children":[
            {"edge":"3/2","node":{"children":[{"edge":"1","node":{}}]}},
            {"edge":"inf","node":{}}]}},"psi":"arclength+1"}"#;
        let TreeFile::Synthetic { tree, psi } = tree_from_str(src).unwrap() else {
            panic!()
        };
        assert_eq!(tree.node_count(), 4);
        assert_eq!(tree.edge_length(tree.resolve_node("1").unwrap()), &ExtRat::Infinity);
        let v = tree_to_value(&tree, &psi);
        let TreeFile::Synthetic { tree: t2, psi: p2 } = tree_from_value(&v).unwrap() else {
            panic!()
        };
        assert_eq!(t2, tree);
        assert_eq!(tree_to_value(&t2, &p2), v);
    }

    #[test]
    fn slopes_and_errors() {
        let src = r#"{"nodes":{"root":{"children":[{"edge":"1","node":{}}]}},"psi":{"slopes":{"0":"2"}}}"#;
        let TreeFile::Synthetic { tree, psi } = tree_from_str(src).unwrap() else {
            panic!()
        };
        assert_eq!(psi.psi(&tree, &tree.node_point(1)).unwrap(), ExtRat::int(3));
        assert!(matches!(tree_from_str(r#"{"poset":"exa1"}"#), Ok(TreeFile::Exa1)));
        assert!(tree_from_str(r#"{"nodes":{"root":{"children":[{"edge":"0","node":{}}]}}}"#).is_err());
        assert!(tree_from_str(r#"{"nodes":{"root":{}},"extra":1}"#).is_err());
        assert!(tree_from_str(
            r#"{"nodes":{"root":{"children":[{"edge":"inf","node":{"children":[{"edge":"1"}]}}]}}}"#
        )
        .is_err());
    }
}
