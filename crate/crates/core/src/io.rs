//! Text formats. Vertex ids are 1-based in every file; 0-based in memory.
//!
//! Graph file: a line `n m`, then `m` lines `u v`. Anything after `#` is ignored.
//! Tour JSON: an array of `{"vertex": id}` or `{"edge": [u, v], "lambda": "p/q"}`,
//! where `lambda` is measured from `u`. A missing closing stop is added.

use crate::coverage::CoverageVerdict;
use crate::graph::{Graph, GraphError, Point};
use crate::rational::{fmt_rational, parse_rational, Rational};
use crate::regimes::SolveReport;
use crate::tour::{Tour, TourError};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("header says {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("tour JSON: {0}")]
    TourJson(String),
    #[error(transparent)]
    Tour(#[from] TourError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Syntax { line, msg: msg.into() }
}

pub fn parse_graph(text: &str) -> Result<Graph, IoError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| syntax(i + 1, format!("not a nonnegative integer: {t:?}"))))
            .collect::<Result<_, _>>()?;
        if nums.len() != 2 {
            return Err(syntax(i + 1, "expected two integers"));
        }
        match header {
            None => header = Some((nums[0], nums[1])),
            Some((n, _)) => {
                for &x in &nums {
                    if x == 0 || x > n {
                        return Err(syntax(i + 1, format!("vertex {x} outside 1..={n}")));
                    }
                }
                edges.push((nums[0] - 1, nums[1] - 1));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| syntax(1, "missing `n m` header"))?;
    if edges.len() != m {
        return Err(IoError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(Graph::new(n, &edges)?)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    s
}

pub fn point_to_json(p: &Point) -> Value {
    match p {
        Point::Vertex(v) => json!({ "vertex": v + 1 }),
        Point::Interior { u, v, lambda } => json!({ "edge": [u + 1, v + 1], "lambda": fmt_rational(lambda) }),
    }
}

pub fn tour_to_json(t: &Tour) -> Value {
    Value::Array(t.stops().iter().map(point_to_json).collect())
}

fn vertex_id(v: &Value, n: usize) -> Result<usize, IoError> {
    let id = v.as_u64().ok_or_else(|| IoError::TourJson(format!("vertex id must be a positive integer, got {v}")))? as usize;
    if id == 0 || id > n {
        return Err(IoError::TourJson(format!("vertex {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

pub fn point_from_json(g: &Graph, v: &Value) -> Result<Point, IoError> {
    let obj = v.as_object().ok_or_else(|| IoError::TourJson(format!("stop must be an object, got {v}")))?;
    if let Some(id) = obj.get("vertex") {
        return Ok(Point::Vertex(vertex_id(id, g.n())?));
    }
    let edge = obj
        .get("edge")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| IoError::TourJson(format!("stop needs \"vertex\" or a two-element \"edge\": {v}")))?;
    let (a, b) = (vertex_id(&edge[0], g.n())?, vertex_id(&edge[1], g.n())?);
    let lam: Rational = match obj.get("lambda") {
        Some(Value::String(s)) => parse_rational(s).map_err(|e| IoError::TourJson(e.to_string()))?,
        Some(Value::Number(x)) => parse_rational(&x.to_string()).map_err(|e| IoError::TourJson(e.to_string()))?,
        _ => return Err(IoError::TourJson(format!("missing \"lambda\" in {v}"))),
    };
    Ok(g.point(a, b, &lam)?)
}

pub fn tour_from_json(g: &Graph, v: &Value) -> Result<Tour, IoError> {
    let arr = v.as_array().ok_or_else(|| IoError::TourJson("top level must be an array".into()))?;
    let mut stops: Vec<Point> = arr.iter().map(|x| point_from_json(g, x)).collect::<Result<_, _>>()?;
    if stops.len() > 1 && stops.first() != stops.last() {
        stops.push(stops[0].clone());
    }
    Ok(Tour::new(g, stops)?)
}

pub fn parse_tour(g: &Graph, text: &str) -> Result<Tour, IoError> {
    tour_from_json(g, &serde_json::from_str(text)?)
}

pub fn verdict_to_json(v: &CoverageVerdict) -> Value {
    json!({
        "edge": [v.edge.0 + 1, v.edge.1 + 1],
        "max_distance": fmt_rational(&v.max_distance),
        "witness": point_to_json(&v.witness),
        "mode": v.mode.label(),
    })
}

fn opt_rat(x: &Option<Rational>) -> Value {
    x.as_ref().map_or(Value::Null, |r| Value::String(fmt_rational(r)))
}

pub fn report_to_json(r: &SolveReport) -> Value {
    json!({
        "delta": fmt_rational(&r.delta),
        "regime": r.regime.label(),
        "length": fmt_rational(&r.length),
        "alpha": r.tour.alpha(),
        "tour": tour_to_json(&r.tour),
        "lower_bounds": r.lower_bounds.iter().map(|(k, v)| json!({ "source": k, "value": fmt_rational(v) })).collect::<Vec<_>>(),
        "best_lower_bound": fmt_rational(&r.best_lower_bound()),
        "theoretical_ratio": opt_rat(&r.theoretical_ratio),
        "certified_ratio": opt_rat(&r.certified_ratio),
        "s_delta": fmt_rational(&r.s_delta),
        "opt_lp": opt_rat(&r.opt_lp),
        "constraints_generated": r.constraints_generated,
        "gamma_vertices": r.gamma_vertices,
        "domset_size": r.domset_size,
        "tree_weight": opt_rat(&r.tree_weight),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn graph_round_trip() {
        let text = "# triangle plus tail\n4 4\n1 2\n2 3 # chord\n3 1\n3 4\n";
        let g = parse_graph(text).unwrap();
        assert_eq!((g.n(), g.m()), (4, 4));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap().edges(), g.edges());
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(parse_graph("3 2\n1 2\n"), Err(IoError::EdgeCount { .. })));
        assert!(matches!(parse_graph("3 1\n1 4\n"), Err(IoError::Syntax { .. })));
        assert!(matches!(parse_graph("3 1\n1 x\n"), Err(IoError::Syntax { .. })));
        assert!(matches!(parse_graph("3 1\n1 2\n"), Err(IoError::Graph(GraphError::Disconnected))));
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn tour_round_trip() {
        let g = parse_graph("3 2\n1 2\n2 3\n").unwrap();
        let text = r#"[{"vertex": 2}, {"edge": [3, 2], "lambda": "1/4"}]"#;
        let t = parse_tour(&g, text).unwrap();
        assert_eq!(t.stops()[1], Point::on_edge(1, 2, rat(3, 4)));
        assert_eq!(t.alpha(), 2);
        let back = tour_from_json(&g, &tour_to_json(&t)).unwrap();
        assert_eq!(back, t);
        assert!(parse_tour(&g, r#"[{"vertex": 9}]"#).is_err());
        assert!(parse_tour(&g, r#"[{"edge": [1, 3], "lambda": "1/2"}]"#).is_err());
        assert!(parse_tour(&g, "{}").is_err());
        let d = parse_tour(&g, r#"[{"edge": [1, 2], "lambda": 0.5}]"#).unwrap();
        assert_eq!(d.stops()[0], Point::on_edge(0, 1, rat(1, 2)));
    }
}
