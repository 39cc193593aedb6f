//! Graphviz export of annotated trees.

use std::fmt::Write as _;

use crate::tree::AnnotatedTree;

/// A `digraph` with one node per sequence; marked nodes get a double ring.
pub fn to_dot(tree: &AnnotatedTree) -> String {
    let mut out = String::from("digraph tree {\n");
    for s in tree.nodes() {
        if tree.is_marked(s) {
            let _ = writeln!(out, "  \"{s}\" [peripheries=2];");
        } else {
            let _ = writeln!(out, "  \"{s}\";");
        }
    }
    for s in tree.nodes() {
        if let Some(p) = s.parent() {
            let _ = writeln!(out, "  \"{p}\" -> \"{s}\";");
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::Ordinal;
    use crate::seq::FinSeq;
    use crate::talpha::talpha_truncate;

    #[test]
    fn small_trees() {
        let t = AnnotatedTree::from_parts([FinSeq::from([0])], [], None);
        assert_eq!(
            to_dot(&t),
            "digraph tree {\n  \"()\";\n  \"(0)\";\n  \"()\" -> \"(0)\";\n}\n"
        );
        assert_eq!(to_dot(&AnnotatedTree::new()), "digraph tree {\n}\n");
        let t1 = to_dot(&talpha_truncate(&Ordinal::one(), 3, 5));
        assert_eq!(t1.matches("peripheries=2").count(), 1);
        assert_eq!(t1.matches(" -> ").count(), 3);
        assert!(t1.contains("\"()\" [peripheries=2];"));
    }
}
