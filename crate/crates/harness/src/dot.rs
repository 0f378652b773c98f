//! DOT export of convergence digraphs, for documentation figures.
//!
//! Diagonal edges are suppressed. Pairs that are present only in the
//! topological reflection (added by transitive closure) are drawn dashed and
//! gray, which makes the failure of transitivity visible at a glance.

use finconv_core::spaces::{reflect_top, PseudoSpace};
use std::fmt::Write as _;

pub fn export_dot(space: &PseudoSpace, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for l in space.carrier().labels() {
        writeln!(out, "  \"{l}\";").unwrap();
    }
    for (a, x) in space.proper_edges() {
        writeln!(
            out,
            "  \"{}\" -> \"{}\";",
            space.carrier().label(a),
            space.carrier().label(x)
        )
        .unwrap();
    }
    let reflected = reflect_top(space);
    for (a, x) in reflected.proper_edges() {
        if !space.conv(a, x) {
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [style=dashed, color=gray];",
                space.carrier().label(a),
                space.carrier().label(x)
            )
            .unwrap();
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use finconv_core::carrier::Carrier;

    #[test]
    fn closure_edges_are_dashed() {
        let s = PseudoSpace::from_edge_labels(
            Carrier::new(["a", "b", "c"]).unwrap(),
            [("a", "b"), ("b", "c")],
        )
        .unwrap();
        let dot = export_dot(&s, "chain");
        assert!(dot.contains("\"a\" -> \"b\";"));
        assert!(dot.contains("\"a\" -> \"c\" [style=dashed, color=gray];"));
        assert!(!dot.contains("\"a\" -> \"a\""));
    }
}
