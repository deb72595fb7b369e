//! Exact chromatic number, rainbow pairs, and coloring extension across a level.

use crate::choice::LevelChoice;
use crate::error::{IimError, Result};
use crate::graph::Graph;
use crate::iim::{iim_step, IimGraph};

pub const DEFAULT_CHROMATIC_LIMIT: usize = 20;

/// A vertex coloring with colors `0..count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub count: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        let count = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        Self { colors, count }
    }

    pub fn uniform(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// First monochromatic edge, if any.
    pub fn conflict(&self, g: &Graph) -> Option<(usize, usize)> {
        g.edges().find(|&(u, v)| self.colors[u] == self.colors[v])
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.n() {
            return Err(IimError::Validation(format!(
                "coloring covers {} vertices, graph has {}",
                self.colors.len(),
                g.n()
            )));
        }
        match self.conflict(g) {
            Some((u, v)) => Err(IimError::ImproperColoring(u, v)),
            None => Ok(()),
        }
    }
}

pub fn chromatic_number(g: &Graph) -> Result<(usize, Coloring)> {
    chromatic_number_with_limit(g, DEFAULT_CHROMATIC_LIMIT)
}

/// Exact `χ(g)`: tries `k` colors upward from a greedy clique bound.
pub fn chromatic_number_with_limit(g: &Graph, limit: usize) -> Result<(usize, Coloring)> {
    let n = g.n();
    if n > limit {
        return Err(IimError::SizeLimit {
            solver: "chromatic_number",
            limit,
            n,
        });
    }
    if n == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let lower = greedy_clique(g, &order);
    for k in lower.max(1)..=n {
        let mut colors = vec![usize::MAX; n];
        if color_with(g, &order, 0, k, 0, &mut colors) {
            let c = Coloring::new(colors);
            debug_assert!(c.validate(g).is_ok());
            return Ok((k, c));
        }
    }
    unreachable!("n colors always suffice")
}

fn greedy_clique(g: &Graph, order: &[usize]) -> usize {
    let mut clique: Vec<usize> = Vec::new();
    for &v in order {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique.len()
}

/// Backtracking with symmetry breaking: a vertex may open at most one new color.
fn color_with(g: &Graph, order: &[usize], i: usize, k: usize, used: usize, colors: &mut [usize]) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    let top = (used + 1).min(k);
    for c in 0..top {
        if g.neighbors(v).iter().any(|u| colors[u] == c) {
            continue;
        }
        colors[v] = c;
        if color_with(g, order, i + 1, k, used.max(c + 1), colors) {
            return true;
        }
    }
    colors[v] = usize::MAX;
    false
}

/// `v` sees every color in `N[v]` and every color in `V \ N[v]`.
pub fn is_rainbow_vertex(g: &Graph, col: &Coloring, v: usize) -> bool {
    let mut inside = vec![false; col.count];
    let mut outside = vec![false; col.count];
    let nb = g.neighbors(v);
    for u in 0..g.n() {
        if u == v || nb.contains(u) {
            inside[col.colors[u]] = true;
        } else {
            outside[col.colors[u]] = true;
        }
    }
    inside.iter().all(|&b| b) && outside.iter().all(|&b| b)
}

/// The two lowest-id rainbow vertices, if at least two exist.
pub fn find_rainbow_pair(g: &Graph, col: &Coloring) -> Result<Option<(usize, usize)>> {
    col.validate(g)?;
    let mut found = (0..g.n()).filter(|&v| is_rainbow_vertex(g, col, v));
    Ok(match (found.next(), found.next()) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => None,
    })
}

/// Steps `h` with `c` and colors only the new level: each new vertex takes the
/// lowest existing color missing from its neighborhood, otherwise one shared
/// new color. Returns the grown graph, the extended coloring, and its palette size.
pub fn extend_coloring(h: &IimGraph, col: &Coloring, c: &LevelChoice) -> Result<(IimGraph, Coloring, usize)> {
    col.validate(h.graph())?;
    let next = iim_step(h, c)?;
    let g = next.graph();
    let mut colors = col.colors.clone();
    let fresh = col.count;
    for w in next.level_range(next.top_level()) {
        let mut seen = vec![false; col.count];
        for u in g.neighbors(w).iter() {
            seen[colors[u]] = true;
        }
        colors.push(seen.iter().position(|&s| !s).unwrap_or(fresh));
    }
    let out = Coloring::new(colors);
    out.validate(g)?;
    let palette = out.count.max(col.count);
    Ok((next, out, palette))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::ChoiceSequence;
    use crate::enumerate::enumerate_iim;
    use crate::iim::iim_generate;

    fn brute_chi(g: &Graph) -> usize {
        let n = g.n();
        (1..=n)
            .find(|&k| {
                (0..k.pow(n as u32)).any(|mut code| {
                    let colors: Vec<usize> = (0..n)
                        .map(|_| {
                            let c = code % k;
                            code /= k;
                            c
                        })
                        .collect();
                    Coloring::new(colors).conflict(g).is_none()
                })
            })
            .unwrap_or(0)
    }

    fn figure_five() -> IimGraph {
        iim_generate(
            &Graph::empty(2),
            &ChoiceSequence::parse("L1=0x2;L2=0xD", 2).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&Graph::complete(4)).unwrap().0, 4);
        assert_eq!(chromatic_number(&Graph::cycle(5)).unwrap().0, 3);
        assert_eq!(chromatic_number(&Graph::empty(3)).unwrap().0, 1);
        let h = figure_five();
        assert!(h.graph().is_connected());
        assert_eq!(h.graph().edge_count(), 8);
        assert_eq!(chromatic_number(h.graph()).unwrap().0, 2);
        assert!(chromatic_number(&Graph::empty(21)).is_err());
    }

    #[test]
    fn chromatic_matches_brute_force() {
        for (_, h) in enumerate_iim(&Graph::path(2), 2).unwrap() {
            let (k, c) = chromatic_number(h.graph()).unwrap();
            c.validate(h.graph()).unwrap();
            assert_eq!(c.count, k);
            assert_eq!(k, brute_chi(h.graph()));
        }
    }

    #[test]
    fn rainbow_examples() {
        assert_eq!(
            find_rainbow_pair(&Graph::empty(2), &Coloring::uniform(2)).unwrap(),
            Some((0, 1))
        );
        let k3 = Graph::complete(3);
        assert_eq!(find_rainbow_pair(&k3, &Coloring::new(vec![0, 1, 2])).unwrap(), None);
        let c4 = Graph::cycle(4);
        assert_eq!(find_rainbow_pair(&c4, &Coloring::new(vec![0, 1, 0, 1])).unwrap(), None);
        assert_eq!(
            find_rainbow_pair(&k3, &Coloring::uniform(3)),
            Err(IimError::ImproperColoring(0, 1))
        );
    }

    #[test]
    fn extension_examples() {
        for n in [2, 3] {
            let h = IimGraph::seed(Graph::complete(n));
            let col = Coloring::new((0..n).collect());
            let (_, _, palette) = extend_coloring(&h, &col, &LevelChoice::all_clone(n)).unwrap();
            assert_eq!(palette, n + 1);
        }
        // the anticlone of K_1 is not adjacent to the only colored vertex
        let k1 = IimGraph::seed(Graph::complete(1));
        let (_, out, palette) = extend_coloring(&k1, &Coloring::uniform(1), &LevelChoice::all_anticlone(1)).unwrap();
        assert_eq!((palette, out.colors), (1, vec![0, 0]));
        let p3 = IimGraph::seed(Graph::path(3));
        let col = Coloring::new(vec![0, 1, 0]);
        let (_, out, palette) = extend_coloring(&p3, &col, &LevelChoice::all_anticlone(3)).unwrap();
        assert_eq!((palette, out.colors), (2, vec![0, 1, 0, 1, 0, 1]));
    }

    #[test]
    fn extension_from_two_isolated_vertices_grows_by_one() {
        for (seq, _) in enumerate_iim(&Graph::empty(2), 3).unwrap() {
            let mut h = IimGraph::seed(Graph::empty(2));
            let mut col = Coloring::uniform(2);
            for (l, lc) in seq.levels.iter().enumerate() {
                let (next, c, palette) = extend_coloring(&h, &col, lc).unwrap();
                assert_eq!(palette, l + 2);
                assert!(find_rainbow_pair(next.graph(), &c).unwrap().is_some());
                h = next;
                col = c;
            }
        }
    }
}
