//! Enumeration of maximal bicliques whose sides need not be independent.
//!
//! For a symmetric irreflexive relation with neighbourhoods `N(v)`, write
//! `C(X) = ⋂_{x ∈ X} N(x)`. A pair of disjoint sets with every cross pair
//! related extends to the closed pair `(C(C(X)), C(X))`, and the closed sets
//! `C(X)` are exactly the nonempty intersections of neighbourhoods. So every
//! inclusion-maximal union `X ∪ Y` is found among the closed pairs.

use std::collections::HashSet;

use crate::bitset::BitSet;

fn common_neighbours(adj: &[BitSet], set: &BitSet) -> BitSet {
    let mut it = set.iter();
    let first = match it.next() {
        Some(v) => adj[v].clone(),
        None => return BitSet::full(adj.len()),
    };
    it.fold(first, |acc, v| acc.intersection(&adj[v]))
}

/// All closed pairs `(C(Y), Y)` with both sides nonempty. Each unordered
/// biclique is reported once per orientation.
pub(crate) fn closed_bicliques(adj: &[BitSet]) -> Vec<(BitSet, BitSet)> {
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut stack: Vec<BitSet> = Vec::new();
    for n in adj {
        if !n.is_empty() && seen.insert(n.clone()) {
            stack.push(n.clone());
        }
    }
    while let Some(s) = stack.pop() {
        for n in adj {
            let t = s.intersection(n);
            if !t.is_empty() && !seen.contains(&t) {
                seen.insert(t.clone());
                stack.push(t);
            }
        }
    }
    let mut out: Vec<(BitSet, BitSet)> = seen
        .into_iter()
        .map(|y| (common_neighbours(adj, &y), y))
        .collect();
    out.sort();
    out
}

/// Keeps the inclusion-maximal sets, sorted and without duplicates.
pub(crate) fn maximal_sets(mut sets: Vec<BitSet>) -> Vec<BitSet> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<BitSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Maximal unions `X ∪ Y` over all bicliques with nonempty disjoint sides.
pub(crate) fn maximal_biclique_unions(adj: &[BitSet]) -> Vec<BitSet> {
    maximal_sets(
        closed_bicliques(adj)
            .into_iter()
            .map(|(x, y)| x.union(&y))
            .collect(),
    )
}

/// The connected component containing `start` of the complement relation
/// restricted to `within`. Splitting `within` into this component and the
/// rest leaves every cross pair related.
pub(crate) fn complement_component(adj: &[BitSet], within: &BitSet, start: usize) -> BitSet {
    let mut comp = BitSet::singleton(start);
    let mut frontier = vec![start];
    while let Some(u) = frontier.pop() {
        for w in within.difference(&comp).difference(&adj[u]).iter() {
            comp.insert(w);
            frontier.push(w);
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<BitSet> {
        let mut adj = vec![BitSet::new(); n];
        for &(u, v) in edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    /// Exhaustive: every subset admitting a nontrivial split with all cross
    /// pairs related, then the maximal ones.
    fn brute(adj: &[BitSet]) -> Vec<BitSet> {
        let n = adj.len();
        let mut found = Vec::new();
        for mask in 1u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if members.len() < 2 {
                continue;
            }
            let ok = (1u32..(1 << members.len()) - 1).any(|split| {
                members.iter().enumerate().all(|(i, &u)| {
                    members.iter().enumerate().all(|(j, &v)| {
                        (split >> i & 1) == (split >> j & 1) || adj[u].contains(v)
                    })
                })
            });
            if ok {
                found.push(members.into_iter().collect());
            }
        }
        maximal_sets(found)
    }

    #[test]
    fn triangle_is_one_biclique() {
        let adj = adjacency(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(maximal_biclique_unions(&adj), vec![BitSet::full(3)]);
    }

    #[test]
    fn path_of_four() {
        let adj = adjacency(4, &[(0, 1), (1, 2), (2, 3)]);
        let got = maximal_biclique_unions(&adj);
        assert_eq!(got, brute(&adj));
        assert_eq!(got.len(), 2);
    }

    proptest! {
        #[test]
        fn agrees_with_exhaustive(n in 1usize..8, bits in prop::collection::vec(any::<bool>(), 28)) {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] { edges.push((u, v)); }
                    k += 1;
                }
            }
            let adj = adjacency(n, &edges);
            prop_assert_eq!(maximal_biclique_unions(&adj), brute(&adj));
        }
    }
}
