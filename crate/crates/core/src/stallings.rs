//! Stallings graphs of finitely generated subgroups of free groups.
//!
//! [`SubgroupGraph::build`] glues one petal per generator at the base vertex,
//! folds with a union-find merge queue until no vertex has two equally
//! labelled outgoing (or incoming) edges, then trims dangling trees. Vertices
//! are finally renumbered by a breadth-first walk from the base taking labels
//! in increasing order, which makes the stored graph a canonical form: two
//! generating sets of the same subgroup build equal graphs.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::word::{Letter, Word};

/// A folded, trimmed, canonically numbered subgroup graph. Vertex 0 is the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupGraph {
    /// Per vertex: signed label → neighbour. An edge `u -g-> v` appears as
    /// `adj[u][+g] = v` and `adj[v][-g] = u`.
    adj: Vec<BTreeMap<Letter, usize>>,
}

struct Folder {
    parent: Vec<usize>,
    adj: Vec<BTreeMap<Letter, usize>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new() -> Self {
        Folder {
            parent: alloc::vec![0],
            adj: alloc::vec![BTreeMap::new()],
            pending: Vec::new(),
        }
    }

    fn add_vertex(&mut self) -> usize {
        let v = self.parent.len();
        self.parent.push(v);
        self.adj.push(BTreeMap::new());
        v
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Adds the half-edge `u -l-> v`, queueing a merge on a label clash.
    fn attach(&mut self, u: usize, l: Letter, v: usize) {
        match self.adj[u].get(&l).copied() {
            Some(w) => self.pending.push((v, w)),
            None => {
                self.adj[u].insert(l, v);
            }
        }
    }

    fn add_edge(&mut self, u: usize, l: Letter, v: usize) {
        let (u, v) = (self.find(u), self.find(v));
        self.attach(u, l, v);
        self.attach(v, l.inverse(), u);
        self.fold();
    }

    fn fold(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            // the smaller id survives so the base stays its own root
            let (keep, gone) = if a < b { (a, b) } else { (b, a) };
            self.parent[gone] = keep;
            let moved = core::mem::take(&mut self.adj[gone]);
            for (l, t) in moved {
                let t = self.find(t);
                self.attach(keep, l, t);
            }
        }
    }

    fn finish(mut self) -> SubgroupGraph {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|v| self.find(v)).collect();
        let mut adj: Vec<BTreeMap<Letter, usize>> = self
            .adj
            .into_iter()
            .enumerate()
            .map(|(v, m)| {
                if roots[v] != v {
                    BTreeMap::new()
                } else {
                    m.into_iter().map(|(l, t)| (l, roots[t])).collect()
                }
            })
            .collect();
        let mut alive: Vec<bool> = (0..n).map(|v| roots[v] == v).collect();

        // trim: repeatedly drop non-base vertices of degree <= 1
        let mut stack: Vec<usize> = (1..n).filter(|&v| alive[v] && adj[v].len() <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] || adj[v].len() > 1 {
                continue;
            }
            alive[v] = false;
            if let Some((&l, &t)) = adj[v].iter().next() {
                adj[t].remove(&l.inverse());
                if t != 0 && adj[t].len() <= 1 {
                    stack.push(t);
                }
            }
            adj[v].clear();
        }

        // canonical renumbering
        let mut number: Vec<Option<usize>> = alloc::vec![None; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        number[0] = Some(0);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &t in adj[v].values() {
                if number[t].is_none() {
                    number[t] = Some(order.len() + queue.len());
                    queue.push_back(t);
                }
            }
        }
        let adj = order
            .iter()
            .map(|&v| {
                adj[v]
                    .iter()
                    .map(|(&l, &t)| (l, number[t].expect("reachable")))
                    .collect()
            })
            .collect();
        SubgroupGraph { adj }
    }
}

impl SubgroupGraph {
    /// The graph of `⟨generators⟩`. Empty words contribute nothing.
    pub fn build(generators: &[Word]) -> Self {
        let mut f = Folder::new();
        for g in generators {
            let letters = g.letters();
            if letters.is_empty() {
                continue;
            }
            let mut cur = 0;
            for (k, &l) in letters.iter().enumerate() {
                let next = if k + 1 == letters.len() { 0 } else { f.add_vertex() };
                f.add_edge(cur, l, next);
                cur = next;
            }
        }
        f.finish()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Positively labelled edges `(source, generator, target)`.
    pub fn edges(&self) -> Vec<(usize, u32, usize)> {
        let mut out = Vec::new();
        for (v, m) in self.adj.iter().enumerate() {
            for (&l, &t) in m {
                if !l.is_inverse() {
                    out.push((v, l.generator(), t));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.keys().filter(|l| !l.is_inverse()).count())
            .sum()
    }

    /// First Betti number `E − V + 1`, the rank of the subgroup.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// True iff `w` spells a closed path at the base.
    pub fn contains(&self, w: &Word) -> bool {
        let mut v = 0;
        for l in w.letters() {
            match self.adj[v].get(l) {
                Some(&t) => v = t,
                None => return false,
            }
        }
        v == 0
    }

    pub fn is_folded(&self) -> bool {
        // a map per vertex admits one edge per signed label by construction;
        // check that each half-edge has its partner
        self.adj.iter().enumerate().all(|(v, m)| {
            m.iter()
                .all(|(l, &t)| self.adj[t].get(&l.inverse()) == Some(&v))
        })
    }

    /// Plain-text edge list: a header line, then `source target label` per edge.
    pub fn to_edge_list(&self, label: impl Fn(u32) -> String) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# vertices {} edges {} base 0",
            self.vertex_count(),
            self.edge_count()
        );
        for (s, g, t) in self.edges() {
            let _ = writeln!(out, "{s} {t} {}", label(g));
        }
        out
    }
}

pub fn build(generators: &[Word]) -> SubgroupGraph {
    SubgroupGraph::build(generators)
}

pub fn membership(graph: &SubgroupGraph, w: &Word) -> bool {
    graph.contains(w)
}

pub fn rank(graph: &SubgroupGraph) -> usize {
    graph.rank()
}

/// True iff the words freely generate the subgroup they generate.
pub fn is_free_basis(generators: &[Word]) -> bool {
    !generators.is_empty() && SubgroupGraph::build(generators).rank() == generators.len()
}
