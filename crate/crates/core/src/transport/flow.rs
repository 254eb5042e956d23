//! Successive-shortest-path min-cost flow on integer capacities and costs.
//!
//! Shortest paths are found with a queue-based Bellman-Ford over the residual
//! network, so negative residual costs need no potential bookkeeping. Graphs
//! here have a few hundred arcs at most.

use std::collections::VecDeque;

pub const INFINITE_CAPACITY: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    capacity: i64,
    cost: i64,
}

#[derive(Debug, Clone)]
pub struct MinCostFlow {
    arcs: Vec<Arc>,
    outgoing: Vec<Vec<usize>>,
    original_capacity: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowOutcome {
    pub flow: i64,
    pub cost: i64,
}

impl MinCostFlow {
    pub fn new(node_count: usize) -> Self {
        Self {
            arcs: Vec::new(),
            outgoing: vec![Vec::new(); node_count],
            original_capacity: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.outgoing.len()
    }

    /// Adds an arc and its zero-capacity reverse twin. Returns the arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: i64, cost: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, capacity, cost });
        self.arcs.push(Arc {
            to: from,
            capacity: 0,
            cost: -cost,
        });
        self.outgoing[from].push(id);
        self.outgoing[to].push(id + 1);
        self.original_capacity.push(capacity);
        self.original_capacity.push(0);
        id
    }

    /// Flow currently carried by arc `id`.
    pub fn flow_on(&self, id: usize) -> i64 {
        self.original_capacity[id] - self.arcs[id].capacity
    }

    /// Pushes up to `limit` units from `source` to `sink` at minimum cost.
    pub fn run(&mut self, source: usize, sink: usize, limit: i64) -> FlowOutcome {
        let mut total = FlowOutcome { flow: 0, cost: 0 };
        while total.flow < limit {
            let (dist, parent) = self.shortest_paths(source);
            if dist[sink] == i64::MAX {
                break;
            }
            let mut push = limit - total.flow;
            let mut v = sink;
            while v != source {
                let arc = parent[v];
                push = push.min(self.arcs[arc].capacity);
                v = self.arcs[arc ^ 1].to;
            }
            let mut v = sink;
            while v != source {
                let arc = parent[v];
                self.arcs[arc].capacity -= push;
                self.arcs[arc ^ 1].capacity += push;
                v = self.arcs[arc ^ 1].to;
            }
            total.flow += push;
            total.cost += push * dist[sink];
        }
        total
    }

    fn shortest_paths(&self, source: usize) -> (Vec<i64>, Vec<usize>) {
        let n = self.node_count();
        let mut dist = vec![i64::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queued = vec![false; n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        queued[source] = true;
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            for &id in &self.outgoing[u] {
                let arc = &self.arcs[id];
                if arc.capacity <= 0 {
                    continue;
                }
                let candidate = dist[u] + arc.cost;
                if candidate < dist[arc.to] {
                    dist[arc.to] = candidate;
                    parent[arc.to] = id;
                    if !queued[arc.to] {
                        queued[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        (dist, parent)
    }

    /// Node potentials `p` with `p[to] <= p[from] + cost` on every residual arc.
    ///
    /// Shortest distances from a virtual root joined to every node by a
    /// zero-cost arc. Exists whenever the residual network has no negative
    /// cycle, which holds after [`MinCostFlow::run`].
    pub fn residual_potentials(&self) -> Vec<i64> {
        let n = self.node_count();
        let mut dist = vec![0i64; n];
        let mut queued = vec![true; n];
        let mut queue: VecDeque<usize> = (0..n).collect();
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            for &id in &self.outgoing[u] {
                let arc = &self.arcs[id];
                if arc.capacity <= 0 {
                    continue;
                }
                let candidate = dist[u] + arc.cost;
                if candidate < dist[arc.to] {
                    dist[arc.to] = candidate;
                    if !queued[arc.to] {
                        queued[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        dist
    }
}
