use std::collections::BTreeMap;
use std::fmt::Write;

use super::finite::FiniteLattice;
use super::poset::FinitePoset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl FinitePoset {
    /// Hasse diagram in DOT, bottom-up, one rank per height.
    pub fn to_dot(&self, name: &str) -> String {
        self.to_dot_labelled(name, |i| self.label(i).to_string())
    }

    pub fn to_dot_labelled<F: Fn(usize) -> String>(&self, name: &str, label: F) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", quote(name));
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=plaintext];");
        for i in 0..self.len() {
            let _ = writeln!(out, "  n{i} [label={}];", quote(&label(i)));
        }
        let mut ranks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, h) in self.heights().into_iter().enumerate() {
            ranks.entry(h).or_default().push(i);
        }
        for nodes in ranks.values() {
            let names: Vec<String> = nodes.iter().map(|i| format!("n{i};")).collect();
            let _ = writeln!(out, "  {{ rank=same; {} }}", names.join(" "));
        }
        for (x, y) in self.covers().pairs {
            let _ = writeln!(out, "  n{x} -> n{y};");
        }
        out.push_str("}\n");
        out
    }
}

impl FiniteLattice {
    pub fn to_dot(&self, name: &str) -> String {
        self.poset().to_dot(name)
    }
}
