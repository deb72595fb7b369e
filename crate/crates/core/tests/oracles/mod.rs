//! Brute-force reference implementations shared by the integration tests.
//! Each one works from definitions only and shares no code with the library
//! beyond `Graph` adjacency queries.

#![allow(dead_code, clippy::needless_range_loop)]

use iim_core::Graph;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Normalized Laplacian from the definition `I - D^{-1/2} A D^{-1/2}`.
pub fn laplacian(g: &Graph) -> Vec<Vec<f64>> {
    let a = adjacency(g);
    let deg: Vec<f64> = a.iter().map(|r| r.iter().filter(|&&b| b).count() as f64).collect();
    (0..g.n())
        .map(|i| {
            (0..g.n())
                .map(|j| {
                    let d = if i == j { 1.0 } else { 0.0 };
                    let off = if a[i][j] { 1.0 / (deg[i] * deg[j]).sqrt() } else { 0.0 };
                    d - off
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Characteristic polynomial coefficients `c[0] + c[1] x + ... + x^n` by the
/// Faddeev-LeVerrier recursion.
pub fn char_poly(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let mut mk = vec![vec![0.0; n]; n];
    for k in 1..=n {
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += c[n - k + 1];
        }
        mk = next;
        let am = mat_mul(m, &mk);
        let tr: f64 = (0..n).map(|i| am[i][i]).sum();
        c[n - k] = -tr / k as f64;
    }
    c
}

pub fn poly_eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// `trace(M^k)`.
pub fn power_trace(m: &[Vec<f64>], k: usize) -> f64 {
    let n = m.len();
    let mut p: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for _ in 0..k {
        p = mat_mul(&p, m);
    }
    (0..n).map(|i| p[i][i]).sum()
}

fn subsets(n: usize) -> impl Iterator<Item = u32> {
    0u32..(1u32 << n)
}

fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&v| mask >> v & 1 == 1)
}

fn rows(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|u| (0..g.n()).filter(|&v| g.has_edge(u, v)).fold(0u32, |m, v| m | 1 << v))
        .collect()
}

/// Largest clique by exhaustive extension.
pub fn clique_number(g: &Graph) -> usize {
    fn grow(rows: &[u32], cand: u32, size: usize, best: &mut usize) {
        *best = (*best).max(size);
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            grow(rows, c & rows[v], size + 1, best);
        }
    }
    let r = rows(g);
    let mut best = 0;
    let all = if g.n() == 32 { u32::MAX } else { (1u32 << g.n()) - 1 };
    grow(&r, all, 0, &mut best);
    best
}

/// Smallest dominating set size over all subsets.
pub fn domination_number(g: &Graph) -> usize {
    let r = rows(g);
    let all = (1u32 << g.n()) - 1;
    subsets(g.n())
        .filter(|&m| members(m).fold(m, |acc, v| acc | r[v]) == all)
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

/// Chromatic number by trying every assignment with `k` colors.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (1..=n.max(1))
        .find(|&k| {
            let mut colors = vec![0usize; n];
            loop {
                if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
                    return true;
                }
                let mut i = 0;
                while i < n && colors[i] + 1 == k {
                    colors[i] = 0;
                    i += 1;
                }
                if i == n {
                    return false;
                }
                colors[i] += 1;
            }
        })
        .unwrap_or(0)
}

/// All-pairs distances by Floyd-Warshall; `None` when disconnected.
pub fn diameter(g: &Graph) -> Option<usize> {
    let n = g.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in 0..n {
            if g.has_edge(u, v) {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    let m = d.iter().flatten().copied().max().unwrap_or(0);
    (m < inf).then_some(m)
}

/// `map` is injective and preserves both adjacency and non-adjacency.
pub fn is_induced_copy(host: &Graph, pattern: &Graph, map: &[usize]) -> bool {
    let k = pattern.n();
    map.len() == k
        && map.iter().all(|&v| v < host.n())
        && (0..k).all(|a| {
            (0..k)
                .filter(|&b| b != a)
                .all(|b| map[a] != map[b] && pattern.has_edge(a, b) == host.has_edge(map[a], map[b]))
        })
}

/// Every vertex once and each consecutive pair (cyclically) adjacent.
pub fn is_ham_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.n();
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    n >= 3 && sorted == (0..n).collect::<Vec<_>>() && (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// Disjoint cliques with witness `w[i] ∈ parts[i]` non-adjacent to all of `parts[i+1]`.
pub fn is_clique_triple(g: &Graph, parts: &[Vec<usize>; 3], w: [usize; 3]) -> bool {
    (0..3).all(|i| {
        let a = &parts[i];
        let b = &parts[(i + 1) % 3];
        a.iter().all(|x| !b.contains(x))
            && a.contains(&w[i])
            && b.iter().all(|&y| !g.has_edge(w[i], y))
            && a.iter().all(|&x| a.iter().all(|&y| x == y || g.has_edge(x, y)))
    })
}
