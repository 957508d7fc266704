//! Exhaustive list of stable dual graphs within small bounds, up to isomorphism.
//!
//! Edge multisets are canonicalised first (minimum relabelled edge list over
//! all vertex permutations); genus labels are then reduced modulo the
//! automorphisms of each canonical graph.

use super::{genus_formula, stability_check, DualGraph, StableModel};
use std::collections::BTreeSet;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn relabel(edges: &[(usize, usize)], perm: &[usize]) -> Vec<(usize, usize)> {
    let mut e: Vec<_> = edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (perm[a], perm[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    e.sort_unstable();
    e
}

fn connected(v: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; v];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == x { b } else if b == x { a } else { continue };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Multisets of size `k` drawn from `0..n`, as nondecreasing sequences.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Connected multigraphs (loops allowed) on `v` vertices with `e` edges, one per isomorphism class.
fn graphs(v: usize, e: usize, perms: &[Vec<usize>]) -> BTreeSet<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..v).flat_map(|i| (i..v).map(move |j| (i, j))).collect();
    let mut out = BTreeSet::new();
    for pick in multisets(pairs.len(), e) {
        let edges: Vec<_> = pick.iter().map(|&i| pairs[i]).collect();
        if !connected(v, &edges) {
            continue;
        }
        let canon = perms.iter().map(|p| relabel(&edges, p)).min().expect("at least the identity");
        out.insert(canon);
    }
    out
}

/// Every stable model with at most `v_max` components, `e_max` nodes and
/// component genus at most `g_max`, each with its arithmetic genus, in a fixed order.
pub fn enumerate_stable_models(v_max: usize, e_max: usize, g_max: u32) -> Vec<StableModel> {
    let mut out = Vec::new();
    for v in 1..=v_max {
        let perms = permutations(v);
        for e in 0..=e_max {
            for edges in graphs(v, e, &perms) {
                let autos: Vec<&Vec<usize>> = perms.iter().filter(|p| relabel(&edges, p) == edges).collect();
                let mut labels = vec![0u32; v];
                loop {
                    let minimal = autos.iter().all(|p| {
                        let mut moved = vec![0; v];
                        for (i, &g) in labels.iter().enumerate() {
                            moved[p[i]] = g;
                        }
                        labels <= moved
                    });
                    if minimal {
                        let graph = DualGraph::new(labels.clone(), edges.clone()).expect("connected by construction");
                        if stability_check(&graph).0 && genus_formula(&graph) >= 2 {
                            out.push(StableModel::new(graph, None).expect("genus at least 2"));
                        }
                    }
                    // odometer over 0..=g_max
                    let mut i = 0;
                    while i < v && labels[i] == g_max {
                        labels[i] = 0;
                        i += 1;
                    }
                    if i == v {
                        break;
                    }
                    labels[i] += 1;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let ms = enumerate_stable_models(1, 0, 3);
        let genera: Vec<_> = ms.iter().map(|m| m.graph().genera()[0]).collect();
        assert_eq!(genera, vec![2, 3]);
    }

    #[test]
    fn two_vertex_trees() {
        let ms: Vec<_> =
            enumerate_stable_models(2, 1, 3).into_iter().filter(|m| m.graph().vertex_count() == 2).collect();
        // unordered pairs from {1, 2, 3}
        assert_eq!(ms.len(), 6);
        assert!(ms.iter().all(|m| m.graph().edge_count() == 1));
    }

    #[test]
    fn small_count() {
        let ms = enumerate_stable_models(2, 2, 2);
        let one = ms.iter().filter(|m| m.graph().vertex_count() == 1).count();
        assert_eq!((one, ms.len() - one), (6, 12));
    }
}
