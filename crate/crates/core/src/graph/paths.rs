//! Lazy simple-path enumeration. This is the shared substrate of every
//! enumeration oracle in the crate.

use super::node::MarkedGraph;
use super::walk::{Step, Walk};
use crate::error::{Error, Result};

/// Depth-first iterator over the simple paths from `a` to `b`.
///
/// Neighbors are visited in index order, which is lexicographic name order, so paths
/// come out sorted by node sequence. Parallel edges between the same pair are visited
/// in mark order and produce distinct paths.
pub struct SimplePaths<'g, G: MarkedGraph> {
    graph: &'g G,
    target: usize,
    on_path: Vec<bool>,
    start: usize,
    steps: Vec<Step>,
    // next incidence position to try at each depth
    cursor: Vec<usize>,
    done: bool,
}

impl<'g, G: MarkedGraph> SimplePaths<'g, G> {
    fn current(&self) -> usize {
        self.steps.last().map_or(self.start, |s| s.to)
    }
}

impl<G: MarkedGraph> Iterator for SimplePaths<'_, G> {
    type Item = Walk;

    fn next(&mut self) -> Option<Walk> {
        if self.done {
            return None;
        }
        loop {
            let v = self.current();
            let depth = self.cursor.len() - 1;
            let inc = self.graph.incident(v);
            let pos = self.cursor[depth];
            if pos < inc.len() && v != self.target {
                self.cursor[depth] += 1;
                let e = inc[pos];
                if self.on_path[e.other] {
                    continue;
                }
                self.steps.push(Step {
                    to: e.other,
                    mark_from: e.near,
                    mark_to: e.far,
                });
                self.on_path[e.other] = true;
                self.cursor.push(0);
                if e.other == self.target {
                    return Some(Walk::new(self.start, self.steps.clone()));
                }
            } else {
                // exhausted this node (or it is the target): backtrack
                self.cursor.pop();
                match self.steps.pop() {
                    Some(s) => self.on_path[s.to] = false,
                    None => {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// Every simple path between two distinct nodes, produced lazily in lexicographic
/// order of node sequences.
pub fn enumerate_simple_paths<G: MarkedGraph>(
    graph: &G,
    a: usize,
    b: usize,
) -> Result<SimplePaths<'_, G>> {
    let n = graph.node_count();
    if a >= n || b >= n {
        return Err(Error::UnknownNode(format!("#{}", a.max(b))));
    }
    if a == b {
        return Err(Error::InvalidQuery(
            "path enumeration needs two distinct endpoints".into(),
        ));
    }
    let mut on_path = vec![false; n];
    on_path[a] = true;
    Ok(SimplePaths {
        graph,
        target: b,
        on_path,
        start: a,
        steps: Vec::new(),
        cursor: vec![0],
        done: false,
    })
}

/// Name-based convenience wrapper around [`enumerate_simple_paths`].
pub fn simple_paths_between<'g, G: MarkedGraph>(
    graph: &'g G,
    a: &str,
    b: &str,
) -> Result<SimplePaths<'g, G>> {
    enumerate_simple_paths(graph, graph.index_of(a)?, graph.index_of(b)?)
}
