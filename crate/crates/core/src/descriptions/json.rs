//! JSON encoding of language descriptions.
//!
//! The printer emits one canonical layout (objects broken over lines, shape
//! rows and type patterns kept inline), so printing a parsed canonical file
//! reproduces it byte for byte.

use serde_json::{Map, Value};

use super::{Binder, Constraint, Desc, Ident, LanguageDescription, NodeDesc, Shape, TySig, TyPattern};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{path}: {msg}")]
    Schema { path: String, msg: String },
}

fn schema(path: &str, msg: impl Into<String>) -> JsonError {
    JsonError::Schema {
        path: path.to_string(),
        msg: msg.into(),
    }
}

pub fn parse_description(src: &str) -> Result<LanguageDescription, JsonError> {
    let v: Value = serde_json::from_str(src)?;
    let obj = v.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    expect_keys(obj, &["name", "types", "desc"], "$")?;
    let name = get_str(obj, "name", "$")?;
    let types = obj
        .get("types")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("$.types", "expected an array"))?;
    let mut ctors = Vec::new();
    for (i, t) in types.iter().enumerate() {
        let p = format!("$.types[{i}]");
        let o = t.as_object().ok_or_else(|| schema(&p, "expected an object"))?;
        expect_keys(o, &["ctor", "arity"], &p)?;
        ctors.push((Ident::from(get_str(o, "ctor", &p)?), get_nat(o, "arity", &p)?));
    }
    let desc = obj.get("desc").ok_or_else(|| schema("$", "missing `desc`"))?;
    Ok(LanguageDescription {
        name: name.into(),
        tysig: TySig { ctors },
        root: parse_desc(desc, "$.desc")?,
    })
}

fn expect_keys(obj: &Map<String, Value>, keys: &[&str], path: &str) -> Result<(), JsonError> {
    for k in obj.keys() {
        if !keys.contains(&k.as_str()) {
            return Err(schema(path, format!("unexpected key `{k}`")));
        }
    }
    for k in keys {
        if !obj.contains_key(*k) {
            return Err(schema(path, format!("missing `{k}`")));
        }
    }
    Ok(())
}

fn get_str<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a str, JsonError> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| schema(path, format!("`{key}` must be a string")))
}

fn get_nat(obj: &Map<String, Value>, key: &str, path: &str) -> Result<usize, JsonError> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .ok_or_else(|| schema(path, format!("`{key}` must be a natural number")))
}

fn parse_desc(v: &Value, path: &str) -> Result<Desc, JsonError> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    if obj.len() != 1 {
        return Err(schema(path, "expected exactly one of `sg-tag`, `sg-ty`, `node`"));
    }
    let (key, body) = obj.iter().next().expect("one entry");
    let p = format!("{path}.{key}");
    let body_obj = body.as_object().ok_or_else(|| schema(&p, "expected an object"))?;
    match key.as_str() {
        "sg-tag" => {
            expect_keys(body_obj, &["label", "arms"], &p)?;
            let label = get_str(body_obj, "label", &p)?;
            let arms_obj = body_obj
                .get("arms")
                .and_then(Value::as_object)
                .ok_or_else(|| schema(&p, "`arms` must be an object"))?;
            let mut arms = Vec::new();
            for (tag, d) in arms_obj {
                arms.push((Ident::from(tag.as_str()), parse_desc(d, &format!("{p}.arms.{tag}"))?));
            }
            Ok(Desc::SgTag {
                label: label.into(),
                arms,
            })
        }
        "sg-ty" => {
            expect_keys(body_obj, &["binder", "rest"], &p)?;
            let binder = get_str(body_obj, "binder", &p)?;
            let rest = parse_desc(&body_obj["rest"], &format!("{p}.rest"))?;
            Ok(Desc::sg_ty(binder, rest))
        }
        "node" => {
            expect_keys(body_obj, &["n", "shape", "constraint"], &p)?;
            let n = get_nat(body_obj, "n", &p)?;
            let rows = body_obj["shape"]
                .as_array()
                .ok_or_else(|| schema(&p, "`shape` must be an array"))?;
            let mut shape = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                let rp = format!("{p}.shape[{i}]");
                let flags = row.as_array().ok_or_else(|| schema(&rp, "expected an array"))?;
                let mut out = Vec::new();
                for f in flags {
                    out.push(match f.as_str() {
                        Some("bound") => Binder::Bound,
                        Some("unbound") => Binder::Unbound,
                        _ => return Err(schema(&rp, "binder flags are \"bound\" or \"unbound\"")),
                    });
                }
                shape.push(out);
            }
            let eqs = body_obj["constraint"]
                .as_array()
                .ok_or_else(|| schema(&p, "`constraint` must be an array"))?;
            let mut equations = Vec::new();
            for (i, eq) in eqs.iter().enumerate() {
                let ep = format!("{p}.constraint[{i}]");
                match eq.as_array().map(Vec::as_slice) {
                    Some([l, r]) => equations.push((parse_pattern(l, &ep)?, parse_pattern(r, &ep)?)),
                    _ => return Err(schema(&ep, "an equation is a two-element array")),
                }
            }
            Ok(Desc::Node(NodeDesc {
                n,
                shape: Shape::new(shape),
                constraint: Constraint::new(equations),
            }))
        }
        other => Err(schema(path, format!("unknown description form `{other}`"))),
    }
}

fn parse_pattern(v: &Value, path: &str) -> Result<TyPattern, JsonError> {
    let items = v
        .as_array()
        .ok_or_else(|| schema(path, "a type pattern is an array"))?;
    let head = items
        .first()
        .and_then(Value::as_str)
        .ok_or_else(|| schema(path, "a type pattern starts with a string"))?;
    let index = |i: usize| -> Result<usize, JsonError> {
        match (items.len(), items[i].as_u64()) {
            (2, Some(n)) => Ok(n as usize),
            _ => Err(schema(path, format!("[\"{head}\", index] expected"))),
        }
    };
    match head {
        "con" => {
            let ctor = items
                .get(1)
                .and_then(Value::as_str)
                .ok_or_else(|| schema(path, "[\"con\", ctor, ...] expected"))?;
            let args = items[2..]
                .iter()
                .map(|a| parse_pattern(a, path))
                .collect::<Result<_, _>>()?;
            Ok(TyPattern::con(ctor, args))
        }
        "B" => Ok(TyPattern::MetaB(index(1)?)),
        "S" => Ok(TyPattern::MetaS(index(1)?)),
        "R" if items.len() == 1 => Ok(TyPattern::MetaR),
        "P" => match items.as_slice() {
            [_, Value::String(name)] => Ok(TyPattern::payload(name.as_str())),
            _ => Err(schema(path, "[\"P\", name] expected")),
        },
        _ => Err(schema(path, format!("unknown type pattern `{head}`"))),
    }
}

/// Canonical JSON rendering; `parse_description(&print_description(l))`
/// reproduces `l`.
pub fn print_description(lang: &LanguageDescription) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"name\": {},\n", quote(&lang.name)));
    if lang.tysig.ctors.is_empty() {
        out.push_str("  \"types\": [],\n");
    } else {
        out.push_str("  \"types\": [\n");
        let lines: Vec<String> = lang
            .tysig
            .ctors
            .iter()
            .map(|(c, a)| format!("    {{\"ctor\": {}, \"arity\": {a}}}", quote(c)))
            .collect();
        out.push_str(&lines.join(",\n"));
        out.push_str("\n  ],\n");
    }
    out.push_str("  \"desc\": ");
    print_desc(&lang.root, 1, &mut out);
    out.push_str("\n}\n");
    out
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn indent(level: usize) -> String {
    "  ".repeat(level)
}

fn print_desc(d: &Desc, level: usize, out: &mut String) {
    let i1 = indent(level + 1);
    let i2 = indent(level + 2);
    match d {
        Desc::SgTag { label, arms } => {
            out.push_str(&format!("{{\n{i1}\"sg-tag\": {{\n"));
            out.push_str(&format!("{i2}\"label\": {},\n", quote(label)));
            if arms.is_empty() {
                out.push_str(&format!("{i2}\"arms\": {{}}\n"));
            } else {
                out.push_str(&format!("{i2}\"arms\": {{\n"));
                for (i, (tag, arm)) in arms.iter().enumerate() {
                    out.push_str(&format!("{}{}: ", indent(level + 3), quote(tag)));
                    print_desc(arm, level + 3, out);
                    out.push_str(if i + 1 < arms.len() { ",\n" } else { "\n" });
                }
                out.push_str(&format!("{i2}}}\n"));
            }
            out.push_str(&format!("{i1}}}\n{}}}", indent(level)));
        }
        Desc::SgTy { binder, rest } => {
            out.push_str(&format!("{{\n{i1}\"sg-ty\": {{\n"));
            out.push_str(&format!("{i2}\"binder\": {},\n", quote(binder)));
            out.push_str(&format!("{i2}\"rest\": "));
            print_desc(rest, level + 2, out);
            out.push_str(&format!("\n{i1}}}\n{}}}", indent(level)));
        }
        Desc::Node(node) => {
            out.push_str(&format!("{{\n{i1}\"node\": {{\n"));
            out.push_str(&format!("{i2}\"n\": {},\n", node.n));
            let rows: Vec<String> = node
                .shape
                .rows
                .iter()
                .map(|row| {
                    let flags: Vec<String> = row.iter().map(|b| quote(b.as_str())).collect();
                    format!("[{}]", flags.join(", "))
                })
                .collect();
            out.push_str(&format!("{i2}\"shape\": [{}],\n", rows.join(", ")));
            let eqs = &node.constraint.equations;
            if eqs.is_empty() {
                out.push_str(&format!("{i2}\"constraint\": []\n"));
            } else {
                out.push_str(&format!("{i2}\"constraint\": [\n"));
                let lines: Vec<String> = eqs
                    .iter()
                    .map(|(l, r)| {
                        format!("{}[{}, {}]", indent(level + 3), pattern_json(l), pattern_json(r))
                    })
                    .collect();
                out.push_str(&lines.join(",\n"));
                out.push_str(&format!("\n{i2}]\n"));
            }
            out.push_str(&format!("{i1}}}\n{}}}", indent(level)));
        }
    }
}

fn pattern_json(p: &TyPattern) -> String {
    match p {
        TyPattern::Con(c, args) => {
            let mut parts = vec![quote("con"), quote(c)];
            parts.extend(args.iter().map(pattern_json));
            format!("[{}]", parts.join(", "))
        }
        TyPattern::MetaB(i) => format!("[\"B\", {i}]"),
        TyPattern::MetaS(j) => format!("[\"S\", {j}]"),
        TyPattern::MetaR => "[\"R\"]".to_string(),
        TyPattern::MetaP(n) => format!("[\"P\", {}]", quote(n)),
    }
}
