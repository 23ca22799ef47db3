//! Crystal graphs explored inside a finite height window.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::cartan::Weight;
use crate::crystal::{Crystal, ExtInt, Op};
use crate::error::{CrystalError, Result};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node<E> {
    pub elem: E,
    pub wt: Weight,
    pub eps: Vec<ExtInt>,
    pub phi: Vec<ExtInt>,
    /// `ht(wt(seed) - wt(node))`; negative above the seed.
    pub depth: i64,
}

/// An arrow `from --(index,l)--> to`, meaning `f̃_{index,l}(from) = to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub index: usize,
    pub l: u32,
}

/// A finite window of a crystal graph with cached `wt`, `ε`, `φ`.
#[derive(Debug, Clone)]
pub struct LabelledGraph<E> {
    nodes: Vec<Node<E>>,
    lookup: HashMap<E, usize>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    roots: Vec<usize>,
    budget: u32,
}

impl<E: Clone + Eq + std::hash::Hash> LabelledGraph<E> {
    pub fn nodes(&self) -> &[Node<E>] {
        &self.nodes
    }

    pub fn node(&self, u: usize) -> &Node<E> {
        &self.nodes[u]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn budget(&self) -> u32 {
        self.budget
    }

    /// Largest `l` worth trying on nodes of this window.
    pub fn op_bound(&self) -> u32 {
        self.budget.max(1)
    }

    pub fn index_of(&self, b: &E) -> Option<usize> {
        self.lookup.get(b).copied()
    }

    pub fn contains(&self, b: &E) -> bool {
        self.lookup.contains_key(b)
    }

    pub fn elems(&self) -> impl Iterator<Item = &E> {
        self.nodes.iter().map(|n| &n.elem)
    }

    pub fn out_edges(&self, u: usize) -> impl Iterator<Item = &Edge> {
        self.out[u].iter().map(move |&k| &self.edges[k])
    }

    pub fn in_edges(&self, u: usize) -> impl Iterator<Item = &Edge> {
        self.inc[u].iter().map(move |&k| &self.edges[k])
    }

    /// Number of nodes of each weight.
    pub fn weight_multiplicities(&self) -> BTreeMap<Weight, usize> {
        let mut m = BTreeMap::new();
        for n in &self.nodes {
            *m.entry(n.wt.clone()).or_insert(0) += 1;
        }
        m
    }

    /// Node counts per depth `0..=max`.
    pub fn depth_counts(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for n in &self.nodes {
            *m.entry(n.depth).or_insert(0) += 1;
        }
        m
    }

    /// Induced subgraph on `keep` (by element). Missing elements are skipped.
    pub fn edges_among(&self, keep: &[E]) -> BTreeSet<(usize, usize, usize, u32)> {
        let ids: BTreeSet<usize> = keep.iter().filter_map(|b| self.index_of(b)).collect();
        self.edges
            .iter()
            .filter(|e| ids.contains(&e.from) && ids.contains(&e.to))
            .map(|e| (e.from, e.to, e.index, e.l))
            .collect()
    }

    /// True when `self`'s nodes are a subset of `other`'s, with every edge of
    /// `other` between two such nodes present in `self` and vice versa.
    pub fn is_induced_subgraph_of(&self, other: &LabelledGraph<E>) -> bool {
        let map: Option<Vec<usize>> = self.nodes.iter().map(|n| other.index_of(&n.elem)).collect();
        let Some(map) = map else { return false };
        let mine: BTreeSet<(usize, usize, usize, u32)> = self
            .edges
            .iter()
            .map(|e| (map[e.from], map[e.to], e.index, e.l))
            .collect();
        let inside: BTreeSet<usize> = map.iter().copied().collect();
        let theirs: BTreeSet<(usize, usize, usize, u32)> = other
            .edges
            .iter()
            .filter(|e| inside.contains(&e.from) && inside.contains(&e.to))
            .map(|e| (e.from, e.to, e.index, e.l))
            .collect();
        mine == theirs
    }
}

struct Builder<E> {
    nodes: Vec<(E, Weight, i64)>,
    lookup: HashMap<E, usize>,
    edges: BTreeSet<Edge>,
}

impl<E: Clone + Eq + std::hash::Hash + Send + Sync> Builder<E> {
    fn new() -> Self {
        Builder {
            nodes: Vec::new(),
            lookup: HashMap::new(),
            edges: BTreeSet::new(),
        }
    }

    /// Returns `(index, inserted)`.
    fn insert(&mut self, b: E, wt: Weight, depth: i64) -> (usize, bool) {
        if let Some(&u) = self.lookup.get(&b) {
            return (u, false);
        }
        let u = self.nodes.len();
        self.lookup.insert(b.clone(), u);
        self.nodes.push((b, wt, depth));
        (u, true)
    }

    fn finish<C>(self, s: &C, roots: Vec<usize>, budget: u32, exec: Exec) -> LabelledGraph<E>
    where
        C: Crystal<Elem = E>,
    {
        let stats = exec.map(&self.nodes, |(b, _, _)| (s.eps_all(b), s.phi_all(b)));
        let nodes: Vec<Node<E>> = self
            .nodes
            .into_iter()
            .zip(stats)
            .map(|((elem, wt, depth), (eps, phi))| Node {
                elem,
                wt,
                eps,
                phi,
                depth,
            })
            .collect();
        let edges: Vec<Edge> = self.edges.into_iter().collect();
        let mut out = vec![Vec::new(); nodes.len()];
        let mut inc = vec![Vec::new(); nodes.len()];
        for (k, e) in edges.iter().enumerate() {
            out[e.from].push(k);
            inc[e.to].push(k);
        }
        LabelledGraph {
            nodes,
            lookup: self.lookup,
            edges,
            out,
            inc,
            roots,
            budget,
        }
    }
}

fn interface_violation<C: Crystal>(
    s: &C,
    b: &C::Elem,
    op: Op,
    expected: &Weight,
    actual: &Weight,
) -> CrystalError {
    let d = s.datum();
    CrystalError::InterfaceViolation {
        node: s.render(b),
        index: d.id(op.index()).to_string(),
        l: op.l(),
        expected: d.render_weight(expected),
        actual: d.render_weight(actual),
    }
}

/// Closure of `seeds` under all `f̃_il` whose drop `l` fits in the remaining
/// height budget of the node.
pub fn explore<C: Crystal>(
    s: &C,
    seeds: &[C::Elem],
    budget: u32,
) -> Result<LabelledGraph<C::Elem>> {
    explore_with(s, seeds, budget, Exec::default())
}

pub fn explore_with<C: Crystal>(
    s: &C,
    seeds: &[C::Elem],
    budget: u32,
    exec: Exec,
) -> Result<LabelledGraph<C::Elem>> {
    let d = s.datum();
    let mut g = Builder::new();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); budget as usize + 1];
    let mut roots = Vec::new();
    for b in seeds {
        let (u, fresh) = g.insert(b.clone(), s.wt(b), 0);
        if fresh {
            buckets[0].push(u);
        }
        g.nodes[u].2 = 0;
        if !roots.contains(&u) {
            roots.push(u);
        }
    }
    let all_ops = Op::all_up_to(d, budget);

    for h in 0..=budget as usize {
        let mut layer = std::mem::take(&mut buckets[h]);
        layer.sort_unstable();
        layer.dedup();
        layer.retain(|&u| g.nodes[u].2 == h as i64);
        if layer.is_empty() {
            continue;
        }
        let remaining = budget - h as u32;
        let work: Vec<(usize, C::Elem, Weight)> = layer
            .iter()
            .map(|&u| (u, g.nodes[u].0.clone(), g.nodes[u].1.clone()))
            .collect();
        let children = exec.flat_map(&work, |(u, b, wt)| {
            all_ops
                .iter()
                .filter(|op| op.l() <= remaining)
                .filter_map(|&op| {
                    s.f(op, b).map(|c| {
                        let cw = s.wt(&c);
                        let expected = wt.add_root(op.index(), -op.l_i64());
                        let bad =
                            (cw != expected).then(|| interface_violation(s, b, op, &expected, &cw));
                        (*u, op, c, cw, bad)
                    })
                })
                .collect()
        });
        for (u, op, c, cw, bad) in children {
            if let Some(err) = bad {
                return Err(err);
            }
            let depth = h as i64 + op.l_i64();
            let (v, fresh) = g.insert(c, cw, depth);
            if fresh {
                buckets[depth as usize].push(v);
            } else if g.nodes[v].2 > depth {
                g.nodes[v].2 = depth;
                buckets[depth as usize].push(v);
            }
            g.edges.insert(Edge {
                from: u,
                to: v,
                index: op.index(),
                l: op.l(),
            });
        }
    }
    Ok(g.finish(s, roots, budget, exec))
}

/// Closure of `seed` under both `ẽ_il` and `f̃_il`, restricted to weights
/// whose root part differs from the seed's by at most `budget` in absolute
/// coefficient sum.
pub fn close_component<C: Crystal>(
    s: &C,
    seed: &C::Elem,
    budget: u32,
) -> Result<LabelledGraph<C::Elem>> {
    close_component_with(s, seed, budget, Exec::default())
}

pub fn close_component_with<C: Crystal>(
    s: &C,
    seed: &C::Elem,
    budget: u32,
    exec: Exec,
) -> Result<LabelledGraph<C::Elem>> {
    let d = s.datum();
    let seed_wt = s.wt(seed);
    let in_window = |w: &Weight| {
        let diff = &seed_wt - w;
        diff.is_pure_root() && diff.root_norm() <= budget as i64
    };
    let mut g = Builder::new();
    let (root, _) = g.insert(seed.clone(), seed_wt.clone(), 0);
    let ops = Op::all_up_to(d, budget);
    let mut frontier = vec![root];

    while !frontier.is_empty() {
        let work: Vec<(usize, C::Elem, Weight)> = frontier
            .iter()
            .map(|&u| (u, g.nodes[u].0.clone(), g.nodes[u].1.clone()))
            .collect();
        // (node, op, neighbour, neighbour weight, lowering?, violation)
        let found = exec.flat_map(&work, |(u, b, wt)| {
            let mut acc = Vec::new();
            for &op in &ops {
                let k = op.l_i64();
                for (lowering, next) in [(true, s.f(op, b)), (false, s.e(op, b))] {
                    let Some(c) = next else { continue };
                    let cw = s.wt(&c);
                    let expected = wt.add_root(op.index(), if lowering { -k } else { k });
                    let bad =
                        (cw != expected).then(|| interface_violation(s, b, op, &expected, &cw));
                    acc.push((*u, op, c, cw, lowering, bad));
                }
            }
            acc
        });
        let mut next = Vec::new();
        for (u, op, c, cw, lowering, bad) in found {
            if let Some(err) = bad {
                return Err(err);
            }
            if !in_window(&cw) {
                continue;
            }
            let depth = (&seed_wt - &cw).root_height();
            let (v, fresh) = g.insert(c, cw, depth);
            if fresh {
                next.push(v);
            }
            let (from, to) = if lowering { (u, v) } else { (v, u) };
            g.edges.insert(Edge {
                from,
                to,
                index: op.index(),
                l: op.l(),
            });
        }
        frontier = next;
    }
    Ok(g.finish(s, vec![root], budget, exec))
}

/// Nodes annihilated by every `ẽ_il` with `l` up to the window bound.
pub fn highest_weight_elements<C: Crystal>(s: &C, g: &LabelledGraph<C::Elem>) -> Vec<C::Elem> {
    let ops = Op::all_up_to(s.datum(), g.op_bound());
    g.elems()
        .filter(|b| ops.iter().all(|&op| s.e(op, b).is_none()))
        .cloned()
        .collect()
}

/// Total number of nodes per weight.
pub fn weight_multiplicities<E: Clone + Eq + std::hash::Hash>(
    g: &LabelledGraph<E>,
) -> BTreeMap<Weight, usize> {
    g.weight_multiplicities()
}
