//! JSON multigraph format: `{"n": 4, "default": 2, "edges": [[0, 1, 3]]}`.
//! Listed pairs override the default. The canonical form takes the most
//! common multiplicity (smallest on ties) as default and lists the other
//! pairs sorted by (u, v), so writing a parsed canonical file reproduces it
//! byte for byte.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use mgx_core::{Mult, Multigraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed multigraph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid multigraph: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    n: usize,
    default: Mult,
    #[serde(default)]
    edges: Vec<(usize, usize, Mult)>,
}

/// Canonical JSON text (single line, no trailing newline).
pub fn to_json(g: &Multigraph) -> String {
    let mut counts: BTreeMap<Mult, usize> = BTreeMap::new();
    for &w in g.weights() {
        *counts.entry(w).or_default() += 1;
    }
    let default = counts.iter().max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(x.0))).map_or(0, |(&w, _)| w);
    let n = g.n();
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter_map(|(u, v)| {
            let w = g.get(u, v);
            (w != default).then_some((u, v, w))
        })
        .collect();
    serde_json::to_string(&Wire { n, default, edges }).expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<Multigraph, IoError> {
    let wire: Wire = serde_json::from_str(text)?;
    let mut g = Multigraph::constant(wire.n, wire.default);
    let mut seen = HashSet::new();
    for (u, v, w) in wire.edges {
        if u == v {
            return Err(IoError::Invalid(format!("loop at vertex {u}")));
        }
        if u >= wire.n || v >= wire.n {
            return Err(IoError::Invalid(format!("pair ({u},{v}) out of range for n = {}", wire.n)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(IoError::Invalid(format!("pair ({u},{v}) listed twice")));
        }
        g.set(u, v, w);
    }
    Ok(g)
}

pub fn read(path: &Path) -> Result<Multigraph, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.display().to_string(), source })?;
    from_json(&text)
}

/// Writes the canonical form followed by a newline.
pub fn write(path: &Path, g: &Multigraph) -> Result<(), IoError> {
    std::fs::write(path, to_json(g) + "\n").map_err(|source| IoError::Write { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_text() {
        let mut g = Multigraph::constant(4, 2);
        g.set(1, 3, 5);
        g.set(0, 2, 0);
        assert_eq!(to_json(&g), r#"{"n":4,"default":2,"edges":[[0,2,0],[1,3,5]]}"#);
        assert_eq!(to_json(&Multigraph::empty(1)), r#"{"n":1,"default":0,"edges":[]}"#);
    }

    #[test]
    fn ties_pick_the_smaller_default() {
        let mut g = Multigraph::constant(3, 1);
        g.set(0, 1, 2);
        g.set(0, 2, 2);
        g.set(1, 2, 3);
        assert_eq!(to_json(&g), r#"{"n":3,"default":2,"edges":[[1,2,3]]}"#);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(from_json(r#"{"n":3,"default":1,"edges":[[0,0,2]]}"#).is_err());
        assert!(from_json(r#"{"n":3,"default":1,"edges":[[0,3,2]]}"#).is_err());
        assert!(from_json(r#"{"n":3,"default":1,"edges":[[0,1,2],[1,0,2]]}"#).is_err());
        assert!(from_json(r#"{"n":3,"default":-1}"#).is_err());
        assert!(from_json(r#"{"n":3,"default":1,"extra":0}"#).is_err());
        let g = from_json(r#"{"n":3,"default":1,"edges":[[2,0,4]]}"#).unwrap();
        assert_eq!(g.get(0, 2), 4);
    }

    proptest! {
        #[test]
        fn round_trip_is_byte_stable(n in 0usize..9, seed in proptest::collection::vec(0u32..5, 36)) {
            let g = Multigraph::from_fn(n, |u, v| seed[(u * 7 + v * 3) % 36]);
            let text = to_json(&g);
            let back = from_json(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(to_json(&back), text);
        }
    }
}
