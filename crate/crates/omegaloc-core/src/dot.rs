use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::automaton::{Automaton, Kind};

/// Graphviz rendering. Büchi states are drawn as double circles, Rabin
/// membership is annotated in the node label (`R1` for R of pair 1, `!I1`
/// for states outside I of pair 1). Uncontrollable events are dashed.
pub fn to_dot(a: &Automaton) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", a.name.replace('"', "'"));
    let _ = writeln!(s, "  rankdir=LR;");
    let _ = writeln!(s, "  node [shape=circle];");
    if let Some(q0) = a.initial() {
        let _ = writeln!(s, "  __init [shape=point];");
        let _ = writeln!(s, "  __init -> {q0};");
    }
    for q in a.states() {
        let mut label = q.to_string();
        if a.kind == Kind::RabinBuchi {
            for (k, p) in a.rabin.iter().enumerate() {
                if p.r.contains(&q) {
                    let _ = write!(label, "\\nR{}", k + 1);
                }
                if !p.i.contains(&q) {
                    let _ = write!(label, "\\n!I{}", k + 1);
                }
            }
        }
        let shape = if a.kind != Kind::Star && a.buchi.contains(&q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(s, "  {q} [label=\"{label}\", shape={shape}];");
    }
    // one edge per (source, target), labels joined
    let mut edges: BTreeMap<(usize, usize, bool), Vec<&str>> = BTreeMap::new();
    for (p, e, q) in a.transitions() {
        let c = a.alphabet().is_controllable(e);
        edges.entry((p, q, c)).or_default().push(a.alphabet().label(e));
    }
    for ((p, q, c), labels) in edges {
        let style = if c { "" } else { ", style=dashed" };
        let _ = writeln!(s, "  {p} -> {q} [label=\"{}\"{style}];", labels.join(","));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    #[test]
    fn renders_acceptance() {
        let al = Alphabet::from_pairs(&[("a", true), ("u", false)]).unwrap();
        let mut a = Automaton::new("x", Kind::Buchi, al, 2);
        a.set(0, 0, 1);
        a.set(1, 1, 0);
        a.buchi.insert(1);
        let d = to_dot(&a);
        assert!(d.contains("1 [label=\"1\", shape=doublecircle]"));
        assert!(d.contains("style=dashed"));
    }
}
