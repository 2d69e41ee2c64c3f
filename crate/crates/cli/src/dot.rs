//! Hasse diagrams in Graphviz DOT. Edges point from lesser to greater.

use conical_core::order::Poset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn hasse(poset: &Poset, name: &str) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n", quote(name));
    for label in poset.labels() {
        out.push_str(&format!("  {};\n", quote(label)));
    }
    for (i, j) in poset.hasse_pairs() {
        out.push_str(&format!("  {} -> {};\n", quote(poset.label(i)), quote(poset.label(j))));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_covering_edges() {
        let chain = Poset::chain(vec!["a".into(), "b".into(), "c".into()]);
        let dot = hasse(&chain, "strata");
        assert!(dot.contains("\"a\" -> \"b\";"));
        assert!(dot.contains("\"b\" -> \"c\";"));
        assert!(!dot.contains("\"a\" -> \"c\";"));
    }

    #[test]
    fn single_node() {
        let p = Poset::antichain(vec!["x\"y".into()]);
        assert_eq!(hasse(&p, "s"), "digraph \"s\" {\n  rankdir=BT;\n  \"x\\\"y\";\n}\n");
    }
}
