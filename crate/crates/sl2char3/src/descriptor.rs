//! Decomposition trees: direct sums, semidirect sums and glue diagrams over
//! irreducible leaves.

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::canon::{canonical_t, CanonicalClass};
use crate::field::{Fe, Field};

/// Generator by which a glue edge acts. `X-` edges are drawn as right
/// arrows and `X+` edges as left arrows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    XPlus,
    XMinus,
}

impl Action {
    pub fn label(self) -> &'static str {
        match self {
            Action::XPlus => "X+",
            Action::XMinus => "X-",
        }
    }
}

/// Edge `from -> to`: acting on the top node `from` lands in `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub action: Action,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlueGraph {
    pub nodes: Vec<CanonicalClass>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Descriptor {
    Leaf(CanonicalClass),
    Sum(Vec<Descriptor>),
    /// Extension with quotient `quo` and submodule `sub`.
    Semi {
        quo: Box<Descriptor>,
        sub: Box<Descriptor>,
    },
    Glue(GlueGraph),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("malformed descriptor JSON: {0}")]
    Json(String),
}

/// Largest glue graph canonicalized by trying every node permutation.
const PERMUTATION_LIMIT: usize = 8;

impl Descriptor {
    pub fn leaf(c: CanonicalClass) -> Descriptor {
        Descriptor::Leaf(c)
    }

    pub fn sum(children: Vec<Descriptor>) -> Descriptor {
        Descriptor::Sum(children)
    }

    pub fn semi(quo: Descriptor, sub: Descriptor) -> Descriptor {
        Descriptor::Semi {
            quo: Box::new(quo),
            sub: Box::new(sub),
        }
    }

    /// Glue graph from `(from, to, action)` triples.
    pub fn glue(nodes: Vec<CanonicalClass>, edges: &[(usize, usize, Action)]) -> Descriptor {
        Descriptor::Glue(GlueGraph {
            nodes,
            edges: edges
                .iter()
                .map(|&(from, to, action)| Edge { from, to, action })
                .collect(),
        })
    }

    /// Total dimension of the leaves.
    pub fn dim(&self) -> usize {
        self.leaves().iter().map(|c| c.dim()).sum()
    }

    /// All irreducible constituents, sorted.
    pub fn leaves(&self) -> Vec<CanonicalClass> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out.sort();
        out
    }

    fn collect_leaves(&self, out: &mut Vec<CanonicalClass>) {
        match self {
            Descriptor::Leaf(c) => out.push(*c),
            Descriptor::Sum(ch) => ch.iter().for_each(|d| d.collect_leaves(out)),
            Descriptor::Semi { quo, sub } => {
                quo.collect_leaves(out);
                sub.collect_leaves(out);
            }
            Descriptor::Glue(g) => out.extend(g.nodes.iter().copied()),
        }
    }

    /// Canonical form: sums flattened and sorted, one-child sums removed,
    /// glue graphs relabelled to their least labelling, and a two-node glue
    /// carrying both an `X+` and an `X-` edge rewritten as a semidirect sum.
    pub fn normalize(&self) -> Descriptor {
        match self {
            Descriptor::Leaf(c) => Descriptor::Leaf(*c),
            Descriptor::Sum(children) => {
                let mut flat = Vec::new();
                for child in children {
                    match child.normalize() {
                        Descriptor::Sum(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                flat.sort();
                if flat.len() == 1 {
                    flat.pop().unwrap()
                } else {
                    Descriptor::Sum(flat)
                }
            }
            Descriptor::Semi { quo, sub } => Descriptor::semi(quo.normalize(), sub.normalize()),
            Descriptor::Glue(g) => normalize_glue(g),
        }
    }

    /// Structural equality after normalization.
    pub fn equal(&self, other: &Descriptor) -> bool {
        self.normalize() == other.normalize()
    }

    pub fn to_json(&self, field: &Field) -> Value {
        match self {
            Descriptor::Leaf(c) => json!({ "irr": class_json(field, c) }),
            Descriptor::Sum(ch) => {
                json!({ "sum": ch.iter().map(|d| d.to_json(field)).collect::<Vec<_>>() })
            }
            Descriptor::Semi { quo, sub } => {
                json!({ "semi": { "quo": quo.to_json(field), "sub": sub.to_json(field) } })
            }
            Descriptor::Glue(g) => json!({
                "glue": {
                    "nodes": g.nodes.iter().map(|c| class_json(field, c)).collect::<Vec<_>>(),
                    "edges": g.edges.iter()
                        .map(|e| json!([e.from, e.to, e.action.label()]))
                        .collect::<Vec<_>>(),
                }
            }),
        }
    }

    pub fn from_json(field: &Field, v: &Value) -> Result<Descriptor, DescriptorError> {
        let bad = |what: &str| DescriptorError::Json(what.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        if let Some(c) = obj.get("irr") {
            return Ok(Descriptor::Leaf(class_from_json(field, c)?));
        }
        if let Some(ch) = obj.get("sum") {
            let items = ch.as_array().ok_or_else(|| bad("sum must be an array"))?;
            let children: Result<Vec<_>, _> = items.iter().map(|d| Descriptor::from_json(field, d)).collect();
            return Ok(Descriptor::Sum(children?));
        }
        if let Some(s) = obj.get("semi") {
            let quo = s.get("quo").ok_or_else(|| bad("semi needs quo"))?;
            let sub = s.get("sub").ok_or_else(|| bad("semi needs sub"))?;
            return Ok(Descriptor::semi(
                Descriptor::from_json(field, quo)?,
                Descriptor::from_json(field, sub)?,
            ));
        }
        if let Some(g) = obj.get("glue") {
            let nodes = g
                .get("nodes")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("glue needs nodes"))?
                .iter()
                .map(|c| class_from_json(field, c))
                .collect::<Result<Vec<_>, _>>()?;
            let mut edges = Vec::new();
            for e in g
                .get("edges")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("glue needs edges"))?
            {
                let parts = e.as_array().ok_or_else(|| bad("edge must be an array"))?;
                let idx = |i: usize| {
                    parts
                        .get(i)
                        .and_then(Value::as_u64)
                        .map(|x| x as usize)
                        .ok_or_else(|| bad("edge endpoint"))
                };
                let action = match parts.get(2).and_then(Value::as_str) {
                    Some("X+") => Action::XPlus,
                    Some("X-") => Action::XMinus,
                    _ => return Err(bad("edge action")),
                };
                edges.push(Edge {
                    from: idx(0)?,
                    to: idx(1)?,
                    action,
                });
            }
            return Ok(Descriptor::Glue(GlueGraph { nodes, edges }));
        }
        Err(bad("unknown descriptor kind"))
    }

    /// Arrow notation: `⊕`, `⊂+`, and arrows `→` (`X-`)
    /// and `←` (`X+`) that always point from the acting node to its target.
    pub fn pretty(&self, field: &Field) -> String {
        match self {
            Descriptor::Leaf(c) => c.format(field),
            Descriptor::Sum(ch) => ch
                .iter()
                .map(|d| d.pretty_nested(field))
                .collect::<Vec<_>>()
                .join(" ⊕ "),
            Descriptor::Semi { quo, sub } => {
                format!("{} ⊂+ {}", quo.pretty_nested(field), sub.pretty_nested(field))
            }
            Descriptor::Glue(g) => pretty_glue(field, g),
        }
    }

    fn pretty_nested(&self, field: &Field) -> String {
        match self {
            Descriptor::Leaf(_) => self.pretty(field),
            _ => format!("({})", self.pretty(field)),
        }
    }

    /// Every parameter mapped into an extension field.
    pub fn lift(&self, from: &Field, to: &Field) -> Result<Descriptor, crate::field::FieldError> {
        Ok(match self {
            Descriptor::Leaf(c) => Descriptor::Leaf(c.lift(from, to)?),
            Descriptor::Sum(ch) => Descriptor::Sum(ch.iter().map(|d| d.lift(from, to)).collect::<Result<Vec<_>, _>>()?),
            Descriptor::Semi { quo, sub } => Descriptor::semi(quo.lift(from, to)?, sub.lift(from, to)?),
            Descriptor::Glue(g) => Descriptor::Glue(GlueGraph {
                nodes: g
                    .nodes
                    .iter()
                    .map(|c| c.lift(from, to))
                    .collect::<Result<Vec<_>, _>>()?,
                edges: g.edges.clone(),
            }),
        })
    }
}

/// Whether two descriptors agree after normalization.
pub fn descriptor_equal(a: &Descriptor, b: &Descriptor) -> bool {
    a.equal(b)
}

fn normalize_glue(g: &GlueGraph) -> Descriptor {
    let mut edges = g.edges.clone();
    edges.sort();
    edges.dedup();
    if g.nodes.len() == 1 && edges.is_empty() {
        return Descriptor::Leaf(g.nodes[0]);
    }
    if g.nodes.len() == 2 && edges.len() == 2 && edges[0].from == edges[1].from {
        let top = edges[0].from;
        let bottom = edges[0].to;
        if edges[1].to == bottom && edges[0].action != edges[1].action {
            return Descriptor::semi(Descriptor::Leaf(g.nodes[top]), Descriptor::Leaf(g.nodes[bottom]));
        }
    }
    let n = g.nodes.len();
    let relabel = |perm: &[usize]| -> GlueGraph {
        // perm[old] = new
        let mut nodes = vec![g.nodes[0]; n];
        for (old, &new) in perm.iter().enumerate() {
            nodes[new] = g.nodes[old];
        }
        let mut es: Vec<Edge> = edges
            .iter()
            .map(|e| Edge {
                from: perm[e.from],
                to: perm[e.to],
                action: e.action,
            })
            .collect();
        es.sort();
        GlueGraph { nodes, edges: es }
    };
    let best = if n <= PERMUTATION_LIMIT {
        let mut best: Option<GlueGraph> = None;
        for perm in permutations(n) {
            let cand = relabel(&perm);
            if best.as_ref().is_none_or(|b| glue_key_cmp(&cand, b) == Ordering::Less) {
                best = Some(cand);
            }
        }
        best.unwrap()
    } else {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| g.nodes[i]);
        let mut perm = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        relabel(&perm)
    };
    Descriptor::Glue(best)
}

fn glue_key_cmp(a: &GlueGraph, b: &GlueGraph) -> Ordering {
    a.nodes.cmp(&b.nodes).then_with(|| a.edges.cmp(&b.edges))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn pretty_glue(field: &Field, g: &GlueGraph) -> String {
    let label = |i: usize| g.nodes[i].format(field);
    if let Some([top, left, right, bottom]) = as_square(g) {
        let square = format!(
            "{} ← {} → {} / {} → {} ← {}",
            label(left),
            label(top),
            label(right),
            label(left),
            label(bottom),
            label(right)
        );
        let is_m1 = g.nodes[top] == CanonicalClass::Two
            && g.nodes[bottom] == CanonicalClass::Two
            && g.nodes[left] == CanonicalClass::One
            && g.nodes[right] == CanonicalClass::One;
        return if is_m1 {
            format!("M1 [{square}]")
        } else {
            format!("[{square}]")
        };
    }
    if let Some(path) = as_path(g) {
        let edge_between = |a: usize, b: usize| {
            g.edges
                .iter()
                .find(|e| (e.from == a && e.to == b) || (e.from == b && e.to == a))
                .expect("consecutive path nodes share an edge")
        };
        // An X- edge is drawn with its source on the left, an X+ edge with its
        // source on the right. A path may need reversing to satisfy both.
        let drawable = |p: &[usize]| {
            p.windows(2).all(|w| {
                let e = edge_between(w[0], w[1]);
                (e.from == w[0]) == (e.action == Action::XMinus)
            })
        };
        let mut reversed = path.clone();
        reversed.reverse();
        if let Some(p) = [path, reversed].into_iter().find(|p| drawable(p)) {
            let mut out = label(p[0]);
            for w in p.windows(2) {
                let symbol = match edge_between(w[0], w[1]).action {
                    Action::XMinus => "→",
                    Action::XPlus => "←",
                };
                out.push_str(&format!(" {symbol} {}", label(w[1])));
            }
            return out;
        }
    }
    let nodes: Vec<String> = (0..g.nodes.len()).map(|i| format!("{}#{i}", label(i))).collect();
    let edges: Vec<String> = g
        .edges
        .iter()
        .map(|e| {
            let (l, r) = if e.action == Action::XMinus {
                (e.from, e.to)
            } else {
                (e.to, e.from)
            };
            let sym = if e.action == Action::XMinus { "→" } else { "←" };
            format!("{} {} {}", nodes[l], sym, nodes[r])
        })
        .collect();
    format!("[{}: {}]", nodes.join(" "), edges.join(", "))
}

/// `[top, left, right, bottom]` when the graph is a square whose top reaches
/// `left` by `X+` and `right` by `X-`, and whose middle nodes reach the
/// bottom by the other generator.
fn as_square(g: &GlueGraph) -> Option<[usize; 4]> {
    if g.nodes.len() != 4 || g.edges.len() != 4 {
        return None;
    }
    let find = |from: usize, action: Action| {
        g.edges
            .iter()
            .find(|e| e.from == from && e.action == action)
            .map(|e| e.to)
    };
    (0..4).find_map(|top| {
        let left = find(top, Action::XPlus)?;
        let right = find(top, Action::XMinus)?;
        let bottom = find(left, Action::XMinus)?;
        let distinct = left != right && bottom != top && bottom != left && bottom != right;
        (distinct && find(right, Action::XPlus) == Some(bottom)).then_some([top, left, right, bottom])
    })
}

/// The node sequence when the graph is a simple path with single edges.
fn as_path(g: &GlueGraph) -> Option<Vec<usize>> {
    let n = g.nodes.len();
    if g.edges.len() + 1 != n {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for e in &g.edges {
        if e.from == e.to || adj[e.from].contains(&e.to) {
            return None;
        }
        adj[e.from].push(e.to);
        adj[e.to].push(e.from);
    }
    if adj.iter().any(|a| a.len() > 2) {
        return None;
    }
    // Start from the end whose label is smaller, for a stable rendering.
    let ends: Vec<usize> = (0..n).filter(|&i| adj[i].len() <= 1).collect();
    let start = *ends.first()?;
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
        path.push(next);
        prev = cur;
        cur = next;
    }
    (path.len() == n).then_some(path)
}

fn fe_json(field: &Field, x: Fe) -> Value {
    if field.degree() == 1 {
        json!(x.code())
    } else {
        json!(field.coeffs(x))
    }
}

fn fe_from_json(field: &Field, v: &Value) -> Result<Fe, DescriptorError> {
    let bad = || DescriptorError::Json(format!("bad field element {v}"));
    if let Some(n) = v.as_i64() {
        return Ok(field.from_i64(n));
    }
    let coeffs: Vec<u8> = v
        .as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|c| c.as_u64().filter(|&c| c < 3).map(|c| c as u8).ok_or_else(bad))
        .collect::<Result<_, _>>()?;
    field.from_coeffs(&coeffs).map_err(|_| bad())
}

fn class_json(field: &Field, c: &CanonicalClass) -> Value {
    match *c {
        CanonicalClass::One => json!("One"),
        CanonicalClass::Two => json!("Two"),
        CanonicalClass::CanTt(b) => json!({ "Tt": [fe_json(field, b)] }),
        CanonicalClass::CanT(b, c, d) => {
            json!({ "T": [fe_json(field, b), fe_json(field, c), fe_json(field, d)] })
        }
    }
}

fn class_from_json(field: &Field, v: &Value) -> Result<CanonicalClass, DescriptorError> {
    let bad = |what: &str| DescriptorError::Json(what.to_string());
    match v {
        Value::String(s) if s == "One" => Ok(CanonicalClass::One),
        Value::String(s) if s == "Two" => Ok(CanonicalClass::Two),
        Value::Object(o) => {
            if let Some(p) = o.get("Tt").and_then(Value::as_array) {
                let b = fe_from_json(field, p.first().ok_or_else(|| bad("Tt needs b"))?)?;
                return Ok(CanonicalClass::CanTt(b));
            }
            if let Some(p) = o.get("T").and_then(Value::as_array) {
                if p.len() != 3 {
                    return Err(bad("T needs three parameters"));
                }
                let b = fe_from_json(field, &p[0])?;
                let c = fe_from_json(field, &p[1])?;
                let d = fe_from_json(field, &p[2])?;
                return Ok(canonical_t(field, b, c, d));
            }
            Err(bad("unknown irreducible"))
        }
        _ => Err(bad("unknown irreducible")),
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
