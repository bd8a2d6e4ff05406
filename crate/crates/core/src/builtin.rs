//! Graphs shipped with the library.

use crate::error::{Error, Result};
use crate::rotation_graph::{parse_rotation_graph, RotationTailedGraph};

const BUILTINS: &[(&str, &str)] = &[
    ("tetrahedron", include_str!("../graphs/tetrahedron.txt")),
    ("k33-10-4-4", include_str!("../graphs/k33-10-4-4.txt")),
    ("k33-6-6-6", include_str!("../graphs/k33-6-6-6.txt")),
    ("k33-18", include_str!("../graphs/k33-18.txt")),
    ("truncated-icosahedron", include_str!("../graphs/truncated-icosahedron.txt")),
];

/// Names accepted by [`builtin`].
pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(n, _)| *n).collect()
}

/// Source text of a built-in graph.
pub fn builtin_text(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn builtin(name: &str) -> Result<RotationTailedGraph> {
    let text = builtin_text(name).ok_or_else(|| {
        Error::Domain(format!(
            "unknown built-in graph {name:?} (known: {})",
            builtin_names().join(", ")
        ))
    })?;
    parse_rotation_graph(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_parse() {
        for name in builtin_names() {
            builtin(name).unwrap();
        }
        assert!(builtin("cube").is_err());
    }

    #[test]
    fn tetrahedron_counts() {
        let g = builtin("tetrahedron").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.arc_count(), 12);
        assert_eq!(g.boundary().len(), 3);
    }

    #[test]
    fn truncated_icosahedron_counts() {
        let g = builtin("truncated-icosahedron").unwrap();
        assert_eq!(g.vertex_count(), 60);
        assert_eq!(g.edge_count(), 90);
        assert_eq!(g.boundary().len(), 6);
    }
}
