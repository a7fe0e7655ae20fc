//! Vertex-disjoint path counting by unit-capacity max-flow.

use crate::instance::{GridVertex, HostInstance};
use std::collections::VecDeque;

struct Network {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u8>,
}

const NIL: usize = usize::MAX;

impl Network {
    fn new(nodes: usize) -> Self {
        Network { head: vec![NIL; nodes], next: Vec::new(), to: Vec::new(), cap: Vec::new() }
    }

    fn edge(&mut self, a: usize, b: usize) {
        for (x, y, c) in [(a, b, 1), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(c);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    /// One BFS augmentation; returns whether a path was found.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![NIL; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let mut e = self.head[x];
            while e != NIL {
                let y = self.to[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = e;
                    if y == t {
                        let mut z = t;
                        while z != s {
                            let e = via[z];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            z = self.to[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(y);
                }
                e = self.next[e];
            }
        }
        false
    }
}

/// Maximum number of vertex-disjoint paths in the grid from `a` to `b`,
/// counting shared vertices as trivial paths, capped at `limit`.
pub fn max_disjoint_paths(inst: &HostInstance, a: &[GridVertex], b: &[GridVertex], limit: usize) -> usize {
    let (rows, cols) = (inst.d_r(), inst.d_c());
    let id = |v: GridVertex| v.row * cols + v.col;
    let nv = rows * cols;
    // Vertex v splits into 2v (in) and 2v+1 (out); source and sink follow.
    let (s, t) = (2 * nv, 2 * nv + 1);
    let mut net = Network::new(2 * nv + 2);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            net.edge(2 * v, 2 * v + 1);
            if c + 1 < cols {
                net.edge(2 * v + 1, 2 * (v + 1));
                net.edge(2 * (v + 1) + 1, 2 * v);
            }
            if r + 1 < rows {
                net.edge(2 * v + 1, 2 * (v + cols));
                net.edge(2 * (v + cols) + 1, 2 * v);
            }
        }
    }
    let mut marked = vec![false; nv];
    for v in a.iter().filter(|v| inst.contains_vertex(**v)) {
        if !std::mem::replace(&mut marked[id(*v)], true) {
            net.edge(s, 2 * id(*v));
        }
    }
    marked.iter_mut().for_each(|m| *m = false);
    for v in b.iter().filter(|v| inst.contains_vertex(**v)) {
        if !std::mem::replace(&mut marked[id(*v)], true) {
            net.edge(2 * id(*v) + 1, t);
        }
    }
    let mut flow = 0;
    while flow < limit && net.augment(s, t) {
        flow += 1;
    }
    flow
}
