//! Hopcroft–Karp maximum bipartite matching.

use std::collections::VecDeque;

const UNMATCHED: usize = usize::MAX;

/// Maximum matching of a bipartite graph given by left-side adjacency lists.
/// Returns `mate[l]`, the right vertex matched to left vertex `l`.
pub fn hopcroft_karp(adj: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut mate_l = vec![UNMATCHED; n];
    let mut mate_r = vec![UNMATCHED; right_count];
    let mut dist = vec![0usize; n];

    loop {
        // BFS from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..n {
            if mate_l[l] == UNMATCHED {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let m = mate_r[r];
                if m == UNMATCHED {
                    found = true;
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; n];
        for l in 0..n {
            if mate_l[l] == UNMATCHED {
                augment(l, adj, &mut mate_l, &mut mate_r, &mut dist, &mut next);
            }
        }
    }
    mate_l.into_iter().map(|r| (r != UNMATCHED).then_some(r)).collect()
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    while next[l] < adj[l].len() {
        let r = adj[l][next[l]];
        next[l] += 1;
        let m = mate_r[r];
        if m == UNMATCHED || (dist[m] == dist[l] + 1 && augment(m, adj, mate_l, mate_r, dist, next)) {
            mate_l[l] = r;
            mate_r[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

/// Size of a maximum matching.
pub fn matching_size(adj: &[Vec<usize>], right_count: usize) -> usize {
    hopcroft_karp(adj, right_count).iter().flatten().count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(adj: &[Vec<usize>], right: usize) -> usize {
        fn go(l: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
            if l == adj.len() {
                return 0;
            }
            let mut best = go(l + 1, adj, used);
            for &r in &adj[l] {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + go(l + 1, adj, used));
                    used[r] = false;
                }
            }
            best
        }
        go(0, adj, &mut vec![false; right])
    }

    #[test]
    fn matches_brute_force() {
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..300 {
            let l = (next() % 7) as usize;
            let r = (next() % 7) as usize + 1;
            let adj: Vec<Vec<usize>> = (0..l).map(|_| (0..r).filter(|_| next() % 3 == 0).collect()).collect();
            let mate = hopcroft_karp(&adj, r);
            // valid matching
            let mut used = vec![false; r];
            for (li, m) in mate.iter().enumerate() {
                if let Some(ri) = *m {
                    assert!(adj[li].contains(&ri));
                    assert!(!used[ri]);
                    used[ri] = true;
                }
            }
            assert_eq!(matching_size(&adj, r), brute(&adj, r));
        }
    }

    #[test]
    fn perfect_on_complete_graph() {
        let adj: Vec<Vec<usize>> = (0..5).map(|_| (0..5).collect()).collect();
        assert_eq!(matching_size(&adj, 5), 5);
    }
}
