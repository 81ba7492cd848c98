use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};
use std::str::FromStr;

/// Standard graph families accepted by [`basic_family`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `[n]`: the path on `n` vertices.
    Path,
    /// `[n]`, `n >= 3`: the cycle on `n` vertices.
    Cycle,
    /// `[n]`: the complete graph on `n` vertices.
    Complete,
    /// `[s]`: the star `K_{1,s}` on `s + 1` vertices.
    Star,
    /// `[t_1, ..., t_r]`: the complete multipartite graph with those parts.
    CompleteMultipartite,
    /// `[a, b, c]`: three paths of `a`, `b`, `c` edges sharing one endpoint.
    Spider,
    /// `[s_1, ..., s_m]`: the disjoint union of stars `K_{1,s_i}`; `s_i = 0`
    /// contributes an isolated vertex.
    StarForest,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "complete" => Family::Complete,
            "star" => Family::Star,
            "complete_multipartite" => Family::CompleteMultipartite,
            "spider" => Family::Spider,
            "star_forest" => Family::StarForest,
            other => return Err(Error::InvalidParams(format!("unknown family {other:?}"))),
        })
    }
}

fn single(kind: Family, params: &[usize]) -> Result<usize> {
    match params {
        [x] => Ok(*x),
        _ => Err(Error::InvalidParams(format!(
            "{kind:?} takes exactly one parameter, got {}",
            params.len()
        ))),
    }
}

fn check_order(n: usize) -> Result<usize> {
    if n == 0 || n > MAX_VERTICES {
        Err(Error::VertexCount(n))
    } else {
        Ok(n)
    }
}

pub fn basic_family(kind: Family, params: &[usize]) -> Result<Graph> {
    match kind {
        Family::Path => {
            let n = check_order(single(kind, params)?)?;
            let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            Graph::from_edges(n, &edges)
        }
        Family::Cycle => {
            let n = single(kind, params)?;
            if n < 3 {
                return Err(Error::InvalidParams(format!("cycle needs n >= 3, got {n}")));
            }
            check_order(n)?;
            let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
            Graph::from_edges(n, &edges)
        }
        Family::Complete => {
            let n = check_order(single(kind, params)?)?;
            Ok(Graph::empty(n)?.complement())
        }
        Family::Star => {
            let s = single(kind, params)?;
            check_order(s + 1)?;
            let edges: Vec<_> = (1..=s).map(|v| (0, v)).collect();
            Graph::from_edges(s + 1, &edges)
        }
        Family::CompleteMultipartite => {
            if params.is_empty() || params.contains(&0) {
                return Err(Error::InvalidParams(
                    "complete multipartite needs at least one part, all positive".into(),
                ));
            }
            let n = check_order(params.iter().sum())?;
            let mut part = Vec::with_capacity(n);
            for (i, &size) in params.iter().enumerate() {
                part.extend(std::iter::repeat_n(i, size));
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if part[u] != part[v] {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges)
        }
        Family::Spider => {
            let [a, b, c] = params else {
                return Err(Error::InvalidParams("spider takes three leg lengths".into()));
            };
            if *a == 0 || *b == 0 || *c == 0 {
                return Err(Error::InvalidParams("spider legs must be positive".into()));
            }
            let n = check_order(a + b + c + 1)?;
            let mut edges = Vec::with_capacity(n - 1);
            let mut next = 1;
            for &len in [a, b, c] {
                let mut prev = 0;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            Graph::from_edges(n, &edges)
        }
        Family::StarForest => {
            if params.is_empty() {
                return Err(Error::InvalidParams("star forest needs at least one star".into()));
            }
            let n = check_order(params.iter().map(|s| s + 1).sum())?;
            let mut edges = Vec::new();
            let mut offset = 0;
            for &s in params {
                edges.extend((1..=s).map(|v| (offset, offset + v)));
                offset += s + 1;
            }
            Graph::from_edges(n, &edges)
        }
    }
}
