//! Test-side oracles, written without the library's search code.

#![allow(dead_code)]

use saito::blowup::{CurveAttachment, DualGraph};

/// Numbering of one coloration straight from the recipe, on plain
/// vectors: white gets the branch count, black gets 2 minus its white
/// degree, and a white component without branches gets 1 at its
/// lightest vertex (smallest index on ties).
pub fn naive_numbering(g: &DualGraph, att: &[u32], white: &[bool]) -> Vec<i64> {
    let n = g.len();
    let mut s2: Vec<i64> = (0..n)
        .map(|v| {
            if white[v] {
                att[v] as i64
            } else {
                2 - g.adj[v].iter().filter(|&&w| white[w]).count() as i64
            }
        })
        .collect();
    // union-find over white edges
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for v in 0..n {
        for &w in &g.adj[v] {
            if white[v] && white[w] {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                parent[a] = b;
            }
        }
    }
    let mut roots: Vec<usize> = (0..n).filter(|&v| white[v]).map(|v| find(&mut parent, v)).collect();
    roots.sort_unstable();
    roots.dedup();
    for r in roots {
        let comp: Vec<usize> = (0..n).filter(|&v| white[v] && find(&mut parent, v) == r).collect();
        if comp.iter().all(|&v| att[v] == 0) {
            let light = *comp.iter().min_by_key(|&&v| (g.rho[v], v)).unwrap();
            s2[light] = 1;
        }
    }
    s2
}

pub fn naive_value(g: &DualGraph, att: &[u32], white: &[bool]) -> i64 {
    let s2 = naive_numbering(g, att, white);
    -1 + (0..g.len()).map(|v| g.rho[v] as i64 * s2[v]).sum::<i64>()
}

/// Minimum over all colorations.
pub fn naive_min(g: &DualGraph, att: &CurveAttachment) -> i64 {
    let n = g.len();
    (0u64..1 << n)
        .map(|m| {
            let white: Vec<bool> = (0..n).map(|v| m >> v & 1 == 1).collect();
            naive_value(g, att.counts(), &white)
        })
        .min()
        .unwrap()
}

/// Membership in `<a, b>` by direct search.
pub fn brute_member(a: u64, b: u64, n: u64) -> bool {
    (0..=n / a).any(|i| (n - a * i) % b == 0)
}
