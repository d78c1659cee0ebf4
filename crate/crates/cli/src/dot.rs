//! Graphviz export of the `(i,k)`-colored crystal graph near `1`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use extcrystal_core::ExtElt;

use crate::element::Ctx;

pub struct Ball {
    pub nodes: Vec<ExtElt>,
    pub edges: Vec<(usize, usize, usize, i64)>,
}

/// Elements with at most `radius` boxes reachable from `1` by `F̃_{i,k}` with
/// `k` in the window, in breadth-first order.
///
/// Every element supported in the window is reached this way: the path to `1`
/// always lowers the top occupied component, so it never leaves the window.
pub fn ball(ctx: &Ctx, radius: i64, window: (i64, i64)) -> Ball {
    let x = &ctx.ext;
    let mut nodes = vec![ExtElt::highest()];
    let mut index: HashMap<ExtElt, usize> = HashMap::from([(ExtElt::highest(), 0)]);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        if x.depth(&nodes[u]) >= radius {
            continue;
        }
        for i in 0..x.rank() {
            for k in window.0..=window.1 {
                let v = x.f(i, k, &nodes[u]);
                let id = match index.get(&v) {
                    Some(&id) => id,
                    None => {
                        nodes.push(v.clone());
                        index.insert(v, nodes.len() - 1);
                        queue.push_back(nodes.len() - 1);
                        nodes.len() - 1
                    }
                };
                edges.push((u, id, i, k));
            }
        }
    }
    Ball { nodes, edges }
}

pub fn render(ctx: &Ctx, ball: &Ball) -> String {
    let mut s = format!("digraph \"{}\" {{\n", ctx.type_name());
    for (n, b) in ball.nodes.iter().enumerate() {
        let _ = writeln!(s, "  n{n} [label=\"{}\"];", ctx.to_text(b).replace('"', "\\\""));
    }
    for &(u, v, i, k) in &ball.edges {
        let _ = writeln!(s, "  n{u} -> n{v} [label=\"({},{k})\"];", i + 1);
    }
    s.push_str("}\n");
    s
}
