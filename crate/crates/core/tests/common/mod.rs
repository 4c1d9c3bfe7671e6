//! Test-only reference implementations that share no code with the solver.
#![allow(dead_code)]

use std::collections::BTreeSet;

use condcolor::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Adjacency = Vec<Vec<usize>>;

pub fn adjacency(g: &Graph) -> Adjacency {
    let mut adj = vec![Vec::new(); g.order()];
    for (u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// C1 and C2 for an assignment, ignoring surjectivity.
pub fn is_conditional(adj: &Adjacency, colors: &[u32], r: usize) -> bool {
    adj.iter().enumerate().all(|(v, nbrs)| {
        if nbrs.iter().any(|&u| colors[u] == colors[v]) {
            return false;
        }
        let distinct: BTreeSet<u32> = nbrs.iter().map(|&u| colors[u]).collect();
        distinct.len() >= nbrs.len().min(r)
    })
}

/// Calls `f` on every assignment in `{1..k}^n`; stops when `f` returns true.
fn odometer(n: usize, k: usize, mut f: impl FnMut(&[u32]) -> bool) -> bool {
    let mut colors = vec![1u32; n];
    loop {
        if f(&colors) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            if (colors[i] as usize) < k {
                colors[i] += 1;
                break;
            }
            colors[i] = 1;
            i += 1;
        }
    }
}

/// Some assignment over at most `k` colors satisfies C1 and C2.
pub fn brute_feasible(adj: &Adjacency, k: usize, r: usize) -> bool {
    odometer(adj.len(), k, |c| is_conditional(adj, c, r))
}

pub fn brute_chi(adj: &Adjacency, r: usize) -> usize {
    (1..=adj.len())
        .find(|&k| brute_feasible(adj, k, r))
        .expect("n colors always suffice")
}

/// Canonical color-class partitions of every surjective conditional
/// (k, r)-coloring.
pub fn brute_partitions(adj: &Adjacency, k: usize, r: usize) -> BTreeSet<Vec<Vec<usize>>> {
    let mut out = BTreeSet::new();
    odometer(adj.len(), k, |c| {
        let used: BTreeSet<u32> = c.iter().copied().collect();
        if used.len() == k && is_conditional(adj, c, r) {
            let mut blocks: Vec<Vec<usize>> = used
                .iter()
                .map(|&col| (0..c.len()).filter(|&v| c[v] == col).collect())
                .collect();
            blocks.sort();
            out.insert(blocks);
        }
        false
    });
    out
}

/// Smallest k admitting a proper coloring, by plain backtracking.
pub fn proper_chromatic(adj: &Adjacency) -> usize {
    fn extend(adj: &Adjacency, colors: &mut Vec<u32>, k: u32) -> bool {
        let v = colors.len();
        if v == adj.len() {
            return true;
        }
        for c in 1..=k {
            if adj[v].iter().all(|&u| u >= v || colors[u] != c) {
                colors.push(c);
                if extend(adj, colors, k) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (1..=adj.len() as u32)
        .find(|&k| extend(adj, &mut Vec::new(), k))
        .unwrap() as usize
}

fn edge_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

fn mask_connected(n: usize, slots: &[(usize, usize)], mask: u64) -> bool {
    let mut reached = 1u64;
    loop {
        let mut next = reached;
        for (i, &(u, v)) in slots.iter().enumerate() {
            if mask >> i & 1 == 1 && (reached >> u & 1 == 1 || reached >> v & 1 == 1) {
                next |= 1 << u | 1 << v;
            }
        }
        if next == reached {
            return reached.count_ones() as usize == n;
        }
        reached = next;
    }
}

/// Every connected simple graph on `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::from_edges(1, &[]).unwrap()];
    }
    let slots = edge_slots(n);
    let slot_index = |u: usize, v: usize| {
        slots
            .iter()
            .position(|&e| e == (u.min(v), u.max(v)))
            .unwrap()
    };
    let perm_maps: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| slots.iter().map(|&(u, v)| slot_index(p[u], p[v])).collect())
        .collect();
    let mut classes = BTreeSet::new();
    for mask in 0u64..1 << slots.len() {
        if !mask_connected(n, &slots, mask) {
            continue;
        }
        let canonical = perm_maps
            .iter()
            .map(|map| {
                (0..slots.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .fold(0u64, |acc, i| acc | 1 << map[i])
            })
            .min()
            .unwrap();
        classes.insert(canonical);
    }
    classes
        .into_iter()
        .map(|mask| {
            let edges: Vec<_> = (0..slots.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| slots[i])
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// G(n, p) resampled until connected.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let edges: Vec<_> = edge_slots(n)
            .into_iter()
            .filter(|_| rng.gen_bool(p))
            .collect();
        if let Ok(g) = Graph::from_edges(n, &edges) {
            return g;
        }
    }
}
