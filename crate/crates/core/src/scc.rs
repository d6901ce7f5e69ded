//! Strong components and their condensation.

use crate::digraph::{Digraph, VertexSet};

/// Strong components of a digraph, listed in a topological order of the
/// condensation: every arc between different components goes from a lower
/// to a higher component index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongDecomposition {
    component_of: Vec<usize>,
    components: Vec<VertexSet>,
    initial: Vec<bool>,
    terminal: Vec<bool>,
}

impl StrongDecomposition {
    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn components(&self) -> &[VertexSet] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_initial(&self, c: usize) -> bool {
        self.initial[c]
    }

    pub fn is_terminal(&self, c: usize) -> bool {
        self.terminal[c]
    }

    pub fn initial_components(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.components
            .iter()
            .zip(&self.initial)
            .filter(|(_, &i)| i)
            .map(|(&c, _)| c)
    }

    pub fn terminal_components(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.components
            .iter()
            .zip(&self.terminal)
            .filter(|(_, &t)| t)
            .map(|(&c, _)| c)
    }

    /// Component indices in topological order (identity by construction).
    pub fn topological_order(&self) -> impl Iterator<Item = usize> {
        0..self.components.len()
    }

    /// Arcs of the condensation as `(from, to)` component pairs, deduplicated.
    pub fn condensation_arcs(&self, d: &Digraph) -> Vec<(usize, usize)> {
        let mut arcs: Vec<(usize, usize)> = d
            .arcs()
            .map(|(u, v)| (self.component_of[u], self.component_of[v]))
            .filter(|(a, b)| a != b)
            .collect();
        arcs.sort_unstable();
        arcs.dedup();
        arcs
    }

    pub fn is_strong(&self) -> bool {
        self.components.len() == 1
    }
}

/// Tarjan's algorithm, iterative, over bitset adjacency.
pub fn strong_decomposition(d: &Digraph) -> StrongDecomposition {
    let rows = d.rows();
    let n = rows.len();
    const UNSEEN: usize = usize::MAX;

    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = 0u64;
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    // (vertex, out-neighbours still to scan)
    let mut call: Vec<(usize, u64)> = Vec::with_capacity(n);
    let mut next_index = 0;
    // Tarjan emits components in reverse topological order
    let mut emitted: Vec<VertexSet> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack |= 1 << root;
        call.push((root, rows[root]));

        while let Some(top) = call.last_mut() {
            let v = top.0;
            if top.1 != 0 {
                let w = top.1.trailing_zeros() as usize;
                top.1 &= top.1 - 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack |= 1 << w;
                    call.push((w, rows[w]));
                } else if on_stack >> w & 1 == 1 {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = VertexSet::EMPTY;
                while let Some(w) = stack.pop() {
                    on_stack &= !(1 << w);
                    comp.insert(w);
                    if w == v {
                        break;
                    }
                }
                emitted.push(comp);
            }
        }
    }

    emitted.reverse();
    let components = emitted;
    let mut component_of = vec![0; n];
    for (c, comp) in components.iter().enumerate() {
        for v in comp.iter() {
            component_of[v] = c;
        }
    }
    let outside_in = |c: VertexSet| d.in_neighbourhood(c).is_empty();
    let outside_out = |c: VertexSet| d.out_neighbourhood(c).is_empty();
    let initial = components.iter().map(|&c| outside_in(c)).collect();
    let terminal = components.iter().map(|&c| outside_out(c)).collect();

    StrongDecomposition {
        component_of,
        components,
        initial,
        terminal,
    }
}
