//! Normalized Laplacian spectra, spectral gap, and expander-mixing residuals.

use crate::error::{IimError, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_SWEEPS: usize = 100;
pub const DEFAULT_DENSE_LIMIT: usize = 2048;

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(IimError::Precondition(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                data.len()
            )));
        }
        for i in 0..n {
            for j in i + 1..n {
                if (data[i * n + j] - data[j * n + i]).abs() > 1e-12 {
                    return Err(IimError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// `L = I - D^{-1/2} A D^{-1/2}`; undefined when a vertex is isolated.
pub fn normalized_laplacian(g: &Graph) -> Result<SymmetricMatrix> {
    let n = g.n();
    let deg = g.degrees();
    if let Some(v) = deg.iter().position(|&d| d == 0) {
        return Err(IimError::IsolatedVertex(v));
    }
    let inv_sqrt: Vec<f64> = deg.iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut data = vec![0.0; n * n];
    for u in 0..n {
        data[u * n + u] = 1.0;
        for v in g.neighbors(u).iter() {
            data[u * n + v] = -inv_sqrt[u] * inv_sqrt[v];
        }
    }
    Ok(SymmetricMatrix { n, data })
}

/// Eigenvalues in ascending order plus the off-diagonal norm reached.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub residual: f64,
    pub sweeps: usize,
}

impl Spectrum {
    /// `max(|λ_1 - 1|, |λ_{n-1} - 1|)`; needs at least two eigenvalues.
    pub fn gap(&self) -> Option<f64> {
        let ev = &self.eigenvalues;
        if ev.len() < 2 {
            return None;
        }
        Some((ev[1] - 1.0).abs().max((ev[ev.len() - 1] - 1.0).abs()))
    }

    /// `graph_id, lambda_0, ..., lambda_{n-1}, gap`
    pub fn csv_row(&self, graph_id: &str) -> String {
        let mut fields = vec![graph_id.to_string()];
        fields.extend(self.eigenvalues.iter().map(|x| format!("{x:.12}")));
        fields.push(self.gap().map_or_else(String::new, |g| format!("{g:.12}")));
        fields.join(",")
    }
}

pub fn eigenvalues_symmetric(m: &SymmetricMatrix, tol: f64) -> Result<Spectrum> {
    eigenvalues_symmetric_with(m, tol, DEFAULT_MAX_SWEEPS, DEFAULT_DENSE_LIMIT)
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
/// `tol * ||m||_F`.
pub fn eigenvalues_symmetric_with(
    m: &SymmetricMatrix,
    tol: f64,
    max_sweeps: usize,
    dense_limit: usize,
) -> Result<Spectrum> {
    let n = m.n;
    if n > dense_limit {
        return Err(IimError::SizeLimit {
            solver: "eigenvalues_symmetric",
            limit: dense_limit,
            n,
        });
    }
    let mut a = m.data.clone();
    let target = tol * m.frobenius_norm();
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut off = off_norm(&a);
    while off > target {
        if sweeps == max_sweeps {
            return Err(IimError::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        sweeps += 1;
        off = off_norm(&a);
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(Spectrum {
        eigenvalues,
        residual: off,
        sweeps,
    })
}

pub fn normalized_laplacian_spectrum(g: &Graph) -> Result<Spectrum> {
    eigenvalues_symmetric(&normalized_laplacian(g)?, DEFAULT_TOL)
}

/// Spectral gap of a graph with at least two vertices and no isolated vertex.
pub fn spectral_gap(g: &Graph) -> Result<f64> {
    if g.n() < 2 {
        return Err(IimError::Precondition(
            "spectral gap needs at least two vertices".into(),
        ));
    }
    Ok(normalized_laplacian_spectrum(g)?
        .gap()
        .expect("at least two eigenvalues"))
}

/// Gap measured on the non-isolated part of a graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapMeasurement {
    /// `None` when fewer than two non-isolated vertices remain.
    pub gap: Option<f64>,
    pub isolated: usize,
}

/// Isolated vertices are dropped (the Laplacian is undefined there) and counted.
pub fn spectral_gap_without_isolates(g: &Graph) -> Result<GapMeasurement> {
    let isolated = g.isolated_vertices();
    let keep = isolated.complement();
    let gap = if keep.len() < 2 {
        None
    } else if isolated.is_empty() {
        Some(spectral_gap(g)?)
    } else {
        Some(spectral_gap(&g.induced_subgraph(&keep).0)?)
    };
    Ok(GapMeasurement {
        gap,
        isolated: isolated.len(),
    })
}

/// `vol(X)`: sum of degrees over `X`.
pub fn volume(g: &Graph, x: &VertexSet) -> usize {
    x.iter().map(|v| g.degree(v)).sum()
}

/// `λ vol(X) vol(X̄) / vol(G) - |2|E(X)| - vol(X)^2 / vol(G)|` for a known gap `λ`.
pub fn expander_mixing_residual(g: &Graph, x: &VertexSet, gap: f64) -> f64 {
    let vol_g = volume(g, &g.vertex_set()) as f64;
    let vol_x = volume(g, x) as f64;
    let vol_rest = vol_g - vol_x;
    let inner = g.edge_count_between(x, x) as f64;
    gap * vol_x * vol_rest / vol_g - (2.0 * inner - vol_x * vol_x / vol_g).abs()
}

/// Expander-mixing residual with the gap computed from `g`; nonnegative up to
/// rounding whenever the lemma holds.
pub fn check_expander_mixing(g: &Graph, x: &VertexSet) -> Result<f64> {
    let gap = spectral_gap(g)?;
    Ok(expander_mixing_residual(g, x, gap))
}
