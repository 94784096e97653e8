//! Intermediate results buffer `P`, one bounded FIFO per partial-result depth.

use std::collections::VecDeque;

use crate::graph::VertexId;

/// A prefix of an embedding: `vertices[i]` is the image of `O[i]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialResult {
    vertices: Vec<VertexId>,
}

impl PartialResult {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        assert!(!vertices.is_empty(), "partial result maps at least the root");
        PartialResult { vertices }
    }

    pub fn root(v: VertexId) -> Self {
        PartialResult { vertices: vec![v] }
    }

    pub fn depth(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Mapping of the query vertex at position `pos` of the matching order.
    pub fn get(&self, pos: usize) -> VertexId {
        self.vertices[pos]
    }

    pub fn extended(&self, v: VertexId) -> Self {
        let mut vertices = Vec::with_capacity(self.vertices.len() + 1);
        vertices.extend_from_slice(&self.vertices);
        vertices.push(v);
        PartialResult { vertices }
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.vertices
    }
}

/// Buffered partial result. `resume` > 0 marks a continuation whose first
/// `resume` candidates were already expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pending {
    pub partial: PartialResult,
    pub resume: usize,
}

/// Per-depth queues for depths `1..order_len`, each holding at most `N_o`
/// entries. Every push checks the bound.
#[derive(Clone, Debug)]
pub struct ResultBuffer {
    levels: Vec<VecDeque<Pending>>,
    capacity: usize,
    peak: usize,
}

impl ResultBuffer {
    pub fn new(order_len: usize, n_o: usize) -> Self {
        assert!(n_o >= 1, "N_o must be at least 1");
        ResultBuffer {
            levels: (0..order_len.saturating_sub(1)).map(|_| VecDeque::new()).collect(),
            capacity: n_o,
            peak: 0,
        }
    }

    /// `N_o`.
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// `(|V(q)| - 1) × N_o`.
    pub fn total_capacity(&self) -> usize {
        self.levels.len() * self.capacity
    }

    pub fn len(&self, depth: usize) -> usize {
        self.levels[depth - 1].len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.iter().all(VecDeque::is_empty)
    }

    /// Room left at `depth`.
    pub fn room(&self, depth: usize) -> usize {
        self.capacity - self.len(depth)
    }

    /// Largest per-level occupancy observed so far.
    pub fn peak_occupancy(&self) -> usize {
        self.peak
    }

    /// Deepest non-empty level.
    pub fn deepest(&self) -> Option<usize> {
        self.levels.iter().rposition(|q| !q.is_empty()).map(|i| i + 1)
    }

    pub fn push(&mut self, partial: PartialResult) {
        let depth = partial.depth();
        self.push_pending(depth, Pending { partial, resume: 0 }, false);
    }

    pub(crate) fn push_front(&mut self, pending: Pending) {
        let depth = pending.partial.depth();
        self.push_pending(depth, pending, true);
    }

    fn push_pending(&mut self, depth: usize, pending: Pending, front: bool) {
        let level = &mut self.levels[depth - 1];
        assert!(
            level.len() < self.capacity,
            "result buffer overflow at depth {depth}: {} entries, N_o = {}",
            level.len(),
            self.capacity
        );
        if front {
            level.push_front(pending);
        } else {
            level.push_back(pending);
        }
        self.peak = self.peak.max(level.len());
    }

    pub(crate) fn pop(&mut self, depth: usize) -> Option<Pending> {
        self.levels[depth - 1].pop_front()
    }
}
