use std::fmt::Write;

use super::Sfst;

fn quote(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}

impl Sfst {
    /// Graphviz rendering. The start state is a double circle and each node
    /// shows its final output after a `/`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph sfst {\n  rankdir=LR;\n");
        for q in self.states() {
            let shape = if q == self.start { "doublecircle" } else { "circle" };
            let label = format!("{} / {}", self.labels[q.0], self.finals[q.0].join(" "));
            let _ = writeln!(out, "  n{} [shape={shape}, label={}];", q.0, quote(&label));
        }
        for q in self.states() {
            for (s, (r, y)) in self.delta[q.0].iter().enumerate() {
                let label = format!("{}:{}", self.input.symbols()[s], y.join(" "));
                let _ = writeln!(out, "  n{} -> n{} [label={}];", q.0, r.0, quote(&label));
            }
        }
        out.push_str("}\n");
        out
    }
}
