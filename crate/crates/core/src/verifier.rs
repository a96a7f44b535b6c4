//! Brute-force finite-volume measures on small rooted trees.
//!
//! The tree is a half-tree: the root has `k` children and so does every
//! other interior vertex, so `|W_j| = k^j`. The compatibility check compares
//! the depth-`n` measure, marginalised onto `V_{n-1}`, with the depth-`n-1`
//! measure. It holds exactly when the boundary fields satisfy the recursion
//! `z_x = prod over children y of F(z_y)`, which for constant or
//! level-periodic fields is the `k`-th power system solved elsewhere.
//!
//! Configurations are indexed in base `q` with vertex `i` as digit `i`.
//! Vertices are numbered breadth first, so `V_{n-1}` is a prefix of `V_n` and
//! marginalising is a reduction of the index modulo `q^|V_{n-1}|`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{FieldVector, ModelParams};

pub const DEFAULT_MAX_VERTICES: usize = 12;

/// Model parameters for the oracle. Unlike [`ModelParams`], `theta = 1` is
/// allowed here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleModel {
    pub q: usize,
    pub k: usize,
    pub theta: f64,
}

impl OracleModel {
    pub fn new(q: usize, k: usize, theta: f64) -> Result<Self> {
        if q < 2 || k < 1 || !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "oracle needs q >= 2, k >= 1, theta > 0; got q = {q}, k = {k}, theta = {theta}"
            )));
        }
        Ok(OracleModel { q, k, theta })
    }
}

impl From<&ModelParams> for OracleModel {
    fn from(p: &ModelParams) -> Self {
        OracleModel {
            q: p.q(),
            k: p.k(),
            theta: p.theta(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTree {
    k: usize,
    depth: usize,
    parent: Vec<Option<usize>>,
    level: Vec<usize>,
}

impl FiniteTree {
    pub fn new(k: usize, depth: usize) -> Self {
        let mut parent = vec![None];
        let mut level = vec![0];
        let mut frontier = vec![0usize];
        for j in 1..=depth {
            let mut next = Vec::with_capacity(frontier.len() * k);
            for &p in &frontier {
                for _ in 0..k {
                    next.push(parent.len());
                    parent.push(Some(p));
                    level.push(j);
                }
            }
            frontier = next;
        }
        FiniteTree {
            k,
            depth,
            parent,
            level,
        }
    }

    /// Vertex count needed for a depth, without building the tree.
    pub fn vertex_count(k: usize, depth: usize) -> usize {
        (0..=depth).map(|j| k.pow(j as u32)).sum()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.level.len()
    }

    pub fn is_empty(&self) -> bool {
        self.level.is_empty()
    }

    pub fn level(&self, v: usize) -> usize {
        self.level[v]
    }

    pub fn level_size(&self, j: usize) -> usize {
        self.level.iter().filter(|&&l| l == j).count()
    }

    /// Edges `(parent, child)` of `L_n`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (p, c)))
    }

    pub fn boundary(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&v| self.level[v] == self.depth)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FieldAssignment {
    Constant(FieldVector),
    /// `even` on levels `j` with `j + level_offset` even, `odd` elsewhere.
    ParityAlternating {
        even: FieldVector,
        odd: FieldVector,
        level_offset: usize,
    },
}

impl FieldAssignment {
    pub fn parity(even: FieldVector, odd: FieldVector) -> Self {
        FieldAssignment::ParityAlternating {
            even,
            odd,
            level_offset: 0,
        }
    }

    pub fn at_level(&self, j: usize) -> &FieldVector {
        match self {
            FieldAssignment::Constant(z) => z,
            FieldAssignment::ParityAlternating {
                even,
                odd,
                level_offset,
            } => {
                if (j + level_offset).is_multiple_of(2) {
                    even
                } else {
                    odd
                }
            }
        }
    }

    /// `(h_1, ..., h_{q-1}, 0)` for level `j`.
    fn log_field(&self, j: usize, q: usize) -> Result<Vec<f64>> {
        let z = self.at_level(j);
        if z.len() != q - 1 {
            return Err(Error::InvalidParams(format!(
                "field vector has length {}, expected q - 1 = {}",
                z.len(),
                q - 1
            )));
        }
        let mut h = z.log();
        h.push(0.0);
        Ok(h)
    }
}

/// Probabilities of all `q^|V_n|` configurations, indexed as described in
/// the module docs.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMeasure {
    pub q: usize,
    pub tree: FiniteTree,
    pub probabilities: Vec<f64>,
    pub log_partition: f64,
}

impl FiniteMeasure {
    pub fn configuration(&self, index: usize) -> Vec<usize> {
        let mut rest = index;
        (0..self.tree.len())
            .map(|_| {
                let s = rest % self.q;
                rest /= self.q;
                s
            })
            .collect()
    }

    pub fn index_of(&self, config: &[usize]) -> usize {
        config.iter().rev().fold(0, |acc, &s| acc * self.q + s)
    }

    pub fn total_mass(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Marginal on the first `vertices` vertices.
    pub fn marginal(&self, vertices: usize) -> Vec<f64> {
        let size = self.q.pow(vertices as u32);
        let mut out = vec![0.0; size];
        for (i, p) in self.probabilities.iter().enumerate() {
            out[i % size] += p;
        }
        out
    }
}

fn guard(model: &OracleModel, depth: usize, max_vertices: usize) -> Result<()> {
    let required = FiniteTree::vertex_count(model.k, depth);
    if required > max_vertices {
        return Err(Error::SizeGuard {
            required,
            limit: max_vertices,
        });
    }
    Ok(())
}

/// Exhaustive depth-`n` measure with boundary fields on `W_n`, using the
/// default vertex guard.
pub fn finite_measure(
    model: &OracleModel,
    fields: &FieldAssignment,
    n: usize,
) -> Result<FiniteMeasure> {
    finite_measure_with_limit(model, fields, n, DEFAULT_MAX_VERTICES)
}

pub fn finite_measure_with_limit(
    model: &OracleModel,
    fields: &FieldAssignment,
    n: usize,
    max_vertices: usize,
) -> Result<FiniteMeasure> {
    guard(model, n, max_vertices)?;
    let q = model.q;
    let tree = FiniteTree::new(model.k, n);
    let h = fields.log_field(n, q)?;
    let ln_theta = model.theta.ln();
    let edges: Vec<(usize, usize)> = tree.edges().collect();
    let boundary: Vec<usize> = tree.boundary().collect();
    let vertices = tree.len();
    let total = q.pow(vertices as u32);

    let log_weights: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|index| {
            let mut config = vec![0usize; vertices];
            let mut rest = index;
            for s in config.iter_mut() {
                *s = rest % q;
                rest /= q;
            }
            let agreeing = edges
                .iter()
                .filter(|(a, b)| config[*a] == config[*b])
                .count();
            ln_theta * agreeing as f64 + boundary.iter().map(|&v| h[config[v]]).sum::<f64>()
        })
        .collect();

    let peak = log_weights
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_weights.iter().map(|w| (w - peak).exp()).collect();
    let sum: f64 = weights.iter().sum();
    let log_partition = peak + sum.ln();
    if !log_partition.is_finite() {
        return Err(Error::Numeric(format!(
            "partition function not finite at depth {n}"
        )));
    }
    let probabilities = weights.into_iter().map(|w| w / sum).collect();
    Ok(FiniteMeasure {
        q,
        tree,
        probabilities,
        log_partition,
    })
}

/// Largest `|sum over omega of mu_n(sigma v omega) - mu_{n-1}(sigma)|`.
pub fn check_compatibility(model: &OracleModel, fields: &FieldAssignment, n: usize) -> Result<f64> {
    check_compatibility_with_limit(model, fields, n, DEFAULT_MAX_VERTICES)
}

pub fn check_compatibility_with_limit(
    model: &OracleModel,
    fields: &FieldAssignment,
    n: usize,
    max_vertices: usize,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParams(
            "compatibility needs depth n >= 1".into(),
        ));
    }
    let outer = finite_measure_with_limit(model, fields, n, max_vertices)?;
    let inner = finite_measure_with_limit(model, fields, n - 1, max_vertices)?;
    let marginal = outer.marginal(inner.tree.len());
    Ok(marginal
        .iter()
        .zip(&inner.probabilities)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}
