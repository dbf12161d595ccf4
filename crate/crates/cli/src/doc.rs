//! Input documents: JSON descriptions of groups, cocycles and functors,
//! parsed with field paths for error messages and serialized back with
//! sorted keys.

use std::fmt;

use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError {
    /// JSON path such as `$.functor.f0[1]`, or `line L column C` for syntax errors.
    pub location: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for SchemaError {}

pub type SchemaResult<T> = Result<T, SchemaError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDoc {
    pub factors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleDoc {
    /// Flat value lists in lexicographic key order.
    Tables { h: Vec<Vec<i64>>, c: Vec<Vec<i64>> },
    Zero,
    /// `(h_μ, ρ_a)` on `Z/n`.
    HMu { n: u64, mu: Vec<i64>, a: Vec<i64> },
    /// `h = 0` and the biadditive `c` with the given generator values.
    Rho { values: Vec<Vec<i64>> },
    Sphere,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelDoc {
    /// Omitted for the sphere.
    pub g: Option<GroupDoc>,
    pub m: Option<GroupDoc>,
    pub cocycle: CocycleDoc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorDoc {
    pub source: ModelDoc,
    pub target: ModelDoc,
    pub f0: Vec<Vec<i64>>,
    pub f1: Vec<Vec<i64>>,
    /// Flat table over pairs; `None` is the zero constraint.
    pub phi: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Model(ModelDoc),
    Functor(FunctorDoc),
    Pair { left: ModelDoc, right: ModelDoc },
    Groups { g: GroupDoc, m: GroupDoc },
    Sphere { objects: Option<(i64, i64)>, permutation: Option<Vec<usize>> },
    Act { model: ModelDoc, n: i64, eta: i64, at: Vec<i64>, label: Vec<i64> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Strictify,
    Qmap,
    H3sym,
    Equiv,
    Cokernel,
    Les,
    Postnikov,
    Sphere,
    Act,
    Doublecheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Strictify => "strictify",
            Command::Qmap => "qmap",
            Command::H3sym => "h3sym",
            Command::Equiv => "equiv",
            Command::Cokernel => "cokernel",
            Command::Les => "les",
            Command::Postnikov => "postnikov",
            Command::Sphere => "sphere",
            Command::Act => "act",
            Command::Doublecheck => "doublecheck",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub input: Input,
    pub format: Format,
}

/// A JSON value together with its path.
struct Node<'a> {
    value: &'a Value,
    path: String,
}

impl<'a> Node<'a> {
    fn root(value: &'a Value) -> Self {
        Node {
            value,
            path: "$".into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> SchemaError {
        SchemaError {
            location: self.path.clone(),
            message: message.into(),
        }
    }

    fn object(&self) -> SchemaResult<&'a Map<String, Value>> {
        self.value.as_object().ok_or_else(|| self.error("expected an object"))
    }

    fn get(&self, key: &str) -> Option<Node<'a>> {
        self.value.as_object()?.get(key).map(|value| Node {
            value,
            path: format!("{}.{key}", self.path),
        })
    }

    fn field(&self, key: &str) -> SchemaResult<Node<'a>> {
        self.object()?;
        self.get(key).ok_or_else(|| self.error(format!("missing field \"{key}\"")))
    }

    fn items(&self) -> SchemaResult<Vec<Node<'a>>> {
        let arr = self.value.as_array().ok_or_else(|| self.error("expected an array"))?;
        Ok(arr
            .iter()
            .enumerate()
            .map(|(i, value)| Node {
                value,
                path: format!("{}[{i}]", self.path),
            })
            .collect())
    }

    fn int(&self) -> SchemaResult<i64> {
        self.value.as_i64().ok_or_else(|| self.error("expected an integer"))
    }

    fn uint(&self) -> SchemaResult<u64> {
        self.value.as_u64().ok_or_else(|| self.error("expected a non-negative integer"))
    }

    fn str(&self) -> SchemaResult<&'a str> {
        self.value.as_str().ok_or_else(|| self.error("expected a string"))
    }

    fn ints(&self) -> SchemaResult<Vec<i64>> {
        self.items()?.iter().map(Node::int).collect()
    }

    fn int_rows(&self) -> SchemaResult<Vec<Vec<i64>>> {
        self.items()?.iter().map(Node::ints).collect()
    }

    fn only(&self, allowed: &[&str]) -> SchemaResult<()> {
        for key in self.object()?.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(self.error(format!("unknown field \"{key}\"")));
            }
        }
        Ok(())
    }
}

fn parse_group(node: &Node) -> SchemaResult<GroupDoc> {
    node.only(&["factors"])?;
    let f = node.field("factors")?;
    let mut factors = Vec::new();
    for item in f.items()? {
        let d = item.uint()?;
        if d == 1 {
            return Err(item.error("factor 1 is not allowed"));
        }
        factors.push(d);
    }
    Ok(GroupDoc { factors })
}

fn parse_cocycle(node: &Node) -> SchemaResult<CocycleDoc> {
    let form = node.field("form")?;
    match form.str()? {
        "tables" => {
            node.only(&["form", "h", "c"])?;
            Ok(CocycleDoc::Tables {
                h: node.field("h")?.int_rows()?,
                c: node.field("c")?.int_rows()?,
            })
        }
        "zero" => {
            node.only(&["form"])?;
            Ok(CocycleDoc::Zero)
        }
        "h_mu" => {
            node.only(&["form", "n", "mu", "a"])?;
            let a = match node.get("a") {
                Some(a) => a.ints()?,
                None => Vec::new(),
            };
            Ok(CocycleDoc::HMu {
                n: node.field("n")?.uint()?,
                mu: node.field("mu")?.ints()?,
                a,
            })
        }
        "rho" => {
            node.only(&["form", "values"])?;
            Ok(CocycleDoc::Rho {
                values: node.field("values")?.int_rows()?,
            })
        }
        "sphere" => {
            node.only(&["form"])?;
            Ok(CocycleDoc::Sphere)
        }
        other => Err(form.error(format!(
            "unknown cocycle form \"{other}\" (expected tables, zero, h_mu, rho or sphere)"
        ))),
    }
}

fn parse_model(node: &Node) -> SchemaResult<ModelDoc> {
    node.only(&["g", "m", "cocycle"])?;
    let cocycle = parse_cocycle(&node.field("cocycle")?)?;
    let group = |key: &str| -> SchemaResult<Option<GroupDoc>> {
        match node.get(key) {
            Some(n) => parse_group(&n).map(Some),
            None if cocycle == CocycleDoc::Sphere => Ok(None),
            None => Err(node.error(format!("missing field \"{key}\""))),
        }
    };
    let (g, m) = (group("g")?, group("m")?);
    if cocycle == CocycleDoc::Sphere && (g.is_some() || m.is_some()) {
        return Err(node.error("the sphere fixes its own groups; omit \"g\" and \"m\""));
    }
    Ok(ModelDoc { g, m, cocycle })
}

fn parse_functor(node: &Node) -> SchemaResult<FunctorDoc> {
    node.only(&["source", "target", "f0", "f1", "phi"])?;
    let phi = match node.get("phi") {
        None => None,
        Some(p) if p.value.as_str() == Some("zero") => None,
        Some(p) => Some(p.int_rows()?),
    };
    Ok(FunctorDoc {
        source: parse_model(&node.field("source")?)?,
        target: parse_model(&node.field("target")?)?,
        f0: node.field("f0")?.int_rows()?,
        f1: node.field("f1")?.int_rows()?,
        phi,
    })
}

fn parse_input(command: Command, root: &Node) -> SchemaResult<Input> {
    match command {
        Command::Validate => {
            root.only(&["model", "functor"])?;
            match (root.get("model"), root.get("functor")) {
                (Some(m), None) => Ok(Input::Model(parse_model(&m)?)),
                (None, Some(f)) => Ok(Input::Functor(parse_functor(&f)?)),
                _ => Err(root.error("expected exactly one of \"model\" or \"functor\"")),
            }
        }
        Command::Strictify | Command::Qmap | Command::Postnikov => {
            root.only(&["model"])?;
            Ok(Input::Model(parse_model(&root.field("model")?)?))
        }
        Command::Cokernel | Command::Les | Command::Doublecheck => {
            root.only(&["functor"])?;
            Ok(Input::Functor(parse_functor(&root.field("functor")?)?))
        }
        Command::Equiv => {
            root.only(&["left", "right"])?;
            Ok(Input::Pair {
                left: parse_model(&root.field("left")?)?,
                right: parse_model(&root.field("right")?)?,
            })
        }
        Command::H3sym => {
            root.only(&["g", "m"])?;
            Ok(Input::Groups {
                g: parse_group(&root.field("g")?)?,
                m: parse_group(&root.field("m")?)?,
            })
        }
        Command::Sphere => {
            root.only(&["objects", "permutation"])?;
            let objects = match root.get("objects") {
                None => None,
                Some(o) => {
                    let v = o.ints()?;
                    if v.len() != 2 {
                        return Err(o.error("expected two integers"));
                    }
                    Some((v[0], v[1]))
                }
            };
            let permutation = match root.get("permutation") {
                None => None,
                Some(p) => Some(
                    p.items()?
                        .iter()
                        .map(|i| i.uint().map(|v| v as usize))
                        .collect::<SchemaResult<Vec<_>>>()?,
                ),
            };
            if objects.is_none() && permutation.is_none() {
                return Err(root.error("expected \"objects\", \"permutation\" or both"));
            }
            Ok(Input::Sphere { objects, permutation })
        }
        Command::Act => {
            root.only(&["model", "n", "eta", "at", "label"])?;
            let eta_node = root.field("eta")?;
            let eta = eta_node.int()?;
            if !(0..=1).contains(&eta) {
                return Err(eta_node.error("eta must be 0 or 1"));
            }
            Ok(Input::Act {
                model: parse_model(&root.field("model")?)?,
                n: root.field("n")?.int()?,
                eta,
                at: root.field("at")?.ints()?,
                label: root.field("label")?.ints()?,
            })
        }
    }
}

/// Parses the document for `command`.
pub fn parse_document(command: Command, text: &str, format: Format) -> SchemaResult<JobSpec> {
    let value: Value = serde_json::from_str(text).map_err(|e| SchemaError {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let input = parse_input(command, &Node::root(&value))?;
    Ok(JobSpec {
        command,
        input,
        format,
    })
}

pub fn group_json(g: &GroupDoc) -> Value {
    json!({ "factors": g.factors })
}

pub fn cocycle_json(c: &CocycleDoc) -> Value {
    match c {
        CocycleDoc::Tables { h, c } => json!({ "form": "tables", "h": h, "c": c }),
        CocycleDoc::Zero => json!({ "form": "zero" }),
        CocycleDoc::HMu { n, mu, a } => json!({ "form": "h_mu", "n": n, "mu": mu, "a": a }),
        CocycleDoc::Rho { values } => json!({ "form": "rho", "values": values }),
        CocycleDoc::Sphere => json!({ "form": "sphere" }),
    }
}

pub fn model_json(m: &ModelDoc) -> Value {
    let mut out = Map::new();
    if let Some(g) = &m.g {
        out.insert("g".into(), group_json(g));
    }
    if let Some(g) = &m.m {
        out.insert("m".into(), group_json(g));
    }
    out.insert("cocycle".into(), cocycle_json(&m.cocycle));
    Value::Object(out)
}

pub fn functor_json(f: &FunctorDoc) -> Value {
    let phi = match &f.phi {
        None => json!("zero"),
        Some(t) => json!(t),
    };
    json!({
        "source": model_json(&f.source),
        "target": model_json(&f.target),
        "f0": f.f0,
        "f1": f.f1,
        "phi": phi,
    })
}

/// Inverse of [`parse_document`] on the input part.
pub fn input_json(input: &Input) -> Value {
    match input {
        Input::Model(m) => json!({ "model": model_json(m) }),
        Input::Functor(f) => json!({ "functor": functor_json(f) }),
        Input::Pair { left, right } => json!({ "left": model_json(left), "right": model_json(right) }),
        Input::Groups { g, m } => json!({ "g": group_json(g), "m": group_json(m) }),
        Input::Sphere { objects, permutation } => {
            let mut out = Map::new();
            if let Some((m, n)) = objects {
                out.insert("objects".into(), json!([m, n]));
            }
            if let Some(p) = permutation {
                out.insert("permutation".into(), json!(p));
            }
            Value::Object(out)
        }
        Input::Act {
            model,
            n,
            eta,
            at,
            label,
        } => json!({ "model": model_json(model), "n": n, "eta": eta, "at": at, "label": label }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(command: Command, text: &str) -> SchemaResult<Input> {
        parse_document(command, text, Format::Machine).map(|j| j.input)
    }

    #[test]
    fn group_documents() {
        let input = parse(Command::H3sym, r#"{"g":{"factors":[2,4]},"m":{"factors":[2]}}"#).unwrap();
        assert_eq!(
            input,
            Input::Groups {
                g: GroupDoc { factors: vec![2, 4] },
                m: GroupDoc { factors: vec![2] }
            }
        );
        let err = parse(Command::H3sym, r#"{"g":{"factors":[1]},"m":{"factors":[2]}}"#).unwrap_err();
        assert_eq!(err.location, "$.g.factors[0]");
    }

    #[test]
    fn errors_carry_locations() {
        let err = parse(Command::Qmap, "{\"model\": {\n \"g\": 3}}").unwrap_err();
        assert_eq!(err.location, "$.model");
        let err = parse(Command::Qmap, "{\"model\": ").unwrap_err();
        assert!(err.location.starts_with("line 1"));
        let err = parse(
            Command::Qmap,
            r#"{"model":{"g":{"factors":[2]},"m":{"factors":[2]},"cocycle":{"form":"rho","values":[["x"]]}}}"#,
        )
        .unwrap_err();
        assert_eq!(err.location, "$.model.cocycle.values[0][0]");
        let err = parse(Command::Qmap, r#"{"model":{"cocycle":{"form":"sphere"}},"extra":1}"#).unwrap_err();
        assert!(err.message.contains("extra"));
    }

    #[test]
    fn round_trip() {
        let docs = [
            (Command::Qmap, r#"{"model":{"g":{"factors":[2]},"m":{"factors":[2]},"cocycle":{"form":"rho","values":[[1]]}}}"#),
            (Command::Strictify, r#"{"model":{"g":{"factors":[4]},"m":{"factors":[2]},"cocycle":{"form":"h_mu","n":4,"mu":[0],"a":[1]}}}"#),
            (Command::Postnikov, r#"{"model":{"cocycle":{"form":"sphere"}}}"#),
            (Command::Sphere, r#"{"objects":[2,3],"permutation":[2,1,3]}"#),
            (Command::Les, r#"{"functor":{"source":{"g":{"factors":[2]},"m":{"factors":[2]},"cocycle":{"form":"zero"}},"target":{"g":{"factors":[]},"m":{"factors":[2]},"cocycle":{"form":"tables","h":[[0]],"c":[[0]]}},"f0":[],"f1":[[0]],"phi":[[0],[0],[0],[1]]}}"#),
        ];
        for (cmd, text) in docs {
            let first = parse(cmd, text).unwrap();
            let again = parse(cmd, &input_json(&first).to_string()).unwrap();
            assert_eq!(first, again);
        }
    }
}
