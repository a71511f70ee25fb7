//! Sparse weighted graphs: Gset text I/O and seeded toroidal instances.
//!
//! Vertex ids are 1-indexed at every public surface (edge lists, text files,
//! [`ProblemInstance::neighbors`]). Internally the adjacency is a CSR index
//! over 0-based positions.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::rng::SeededRng;

/// One undirected edge, `u < v`, 1-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub w: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}: malformed token {token:?}")]
    MalformedToken { line: usize, token: String },
    #[error("missing header: expected \"n m\"")]
    MissingHeader,
    #[error("vertex count must be positive")]
    NoVertices,
    #[error("edge count mismatch: header declares {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("line {line}: trailing incomplete edge")]
    TruncatedEdge { line: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: u32 },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: u32, v: u32 },
    #[error("line {line}: vertex {vertex} outside [1, {n}]")]
    VertexOutOfRange { line: usize, vertex: i64, n: u32 },
    #[error("torus must be at least 3x3, got {rows}x{cols}")]
    TorusTooSmall { rows: u32, cols: u32 },
}

/// An immutable undirected weighted graph with zero local fields.
///
/// Couplings follow the Max-Cut convention: `w` is the edge weight and the
/// Ising coupling is `J = -w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    name: String,
    n: u32,
    edges: Vec<Edge>,
    total_weight: i64,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<i64>,
}

impl ProblemInstance {
    /// Builds an instance from an edge list, validating every invariant.
    /// Edges may be given in either orientation; they are stored with `u < v`.
    pub fn from_edges(
        name: impl Into<String>,
        n: u32,
        edges: impl IntoIterator<Item = (u32, u32, i64)>,
    ) -> Result<Self, InstanceError> {
        if n == 0 {
            return Err(InstanceError::NoVertices);
        }
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (idx, (a, b, w)) in edges.into_iter().enumerate() {
            let line = idx + 2;
            check_vertex(line, a.into(), n)?;
            check_vertex(line, b.into(), n)?;
            if a == b {
                return Err(InstanceError::SelfLoop { line, vertex: a });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(InstanceError::DuplicateEdge { line, u, v });
            }
            list.push(Edge { u, v, w });
        }
        Ok(Self::assemble(name.into(), n, list))
    }

    fn assemble(name: String, n: u32, edges: Vec<Edge>) -> Self {
        let len = n as usize;
        let mut degree = vec![0usize; len];
        for e in &edges {
            degree[e.u as usize - 1] += 1;
            degree[e.v as usize - 1] += 1;
        }
        let mut offsets = Vec::with_capacity(len + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..len].to_vec();
        let mut targets = vec![0u32; offsets[len]];
        let mut weights = vec![0i64; offsets[len]];
        for e in &edges {
            let (a, b) = (e.u as usize - 1, e.v as usize - 1);
            targets[cursor[a]] = b as u32;
            weights[cursor[a]] = e.w;
            cursor[a] += 1;
            targets[cursor[b]] = a as u32;
            weights[cursor[b]] = e.w;
            cursor[b] += 1;
        }
        let total_weight = edges.iter().map(|e| e.w).sum();
        Self {
            name,
            n,
            edges,
            total_weight,
            offsets,
            targets,
            weights,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sum of all edge weights (`W` in `H = W - 2 * cut`).
    pub fn total_weight(&self) -> i64 {
        self.total_weight
    }

    /// Sum of absolute edge weights, an upper bound on any cut.
    pub fn abs_weight(&self) -> i64 {
        self.edges.iter().map(|e| e.w.abs()).sum()
    }

    pub fn degree(&self, vertex: u32) -> usize {
        let i = vertex as usize - 1;
        self.offsets[i + 1] - self.offsets[i]
    }

    /// Neighbors of a 1-indexed vertex as `(neighbor, weight)` pairs.
    pub fn neighbors(&self, vertex: u32) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.row(vertex as usize - 1).map(|(j, w)| (j as u32 + 1, w))
    }

    /// 0-based adjacency row used by the evaluators and solvers.
    #[inline]
    pub(crate) fn row(&self, index: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        let span = self.offsets[index]..self.offsets[index + 1];
        self.targets[span.clone()]
            .iter()
            .zip(&self.weights[span])
            .map(|(&j, &w)| (j as usize, w))
    }

    /// Canonical Gset text: `"n m"` then one `"u v w"` line per edge.
    pub fn to_gset_string(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edges.len() + 1));
        writeln!(out, "{} {}", self.n, self.edges.len()).unwrap();
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.u, e.v, e.w).unwrap();
        }
        out
    }
}

fn check_vertex(line: usize, vertex: i64, n: u32) -> Result<(), InstanceError> {
    if vertex < 1 || vertex > i64::from(n) {
        Err(InstanceError::VertexOutOfRange { line, vertex, n })
    } else {
        Ok(())
    }
}

fn next_int<'a>(tokens: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<Option<(usize, i64)>, InstanceError> {
    match tokens.next() {
        None => Ok(None),
        Some((line, tok)) => tok
            .parse::<i64>()
            .map(|v| Some((line, v)))
            .map_err(|_| InstanceError::MalformedToken {
                line,
                token: tok.to_string(),
            }),
    }
}

/// Parses Gset text. Whitespace-tolerant; the header must be `n m` and
/// exactly `m` triples `u v w` must follow.
pub fn parse_gset(text: &str) -> Result<ProblemInstance, InstanceError> {
    let mut tokens = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)));
    let (_, n) = next_int(&mut tokens)?.ok_or(InstanceError::MissingHeader)?;
    let (line, m) = next_int(&mut tokens)?.ok_or(InstanceError::MissingHeader)?;
    if n <= 0 {
        return Err(InstanceError::NoVertices);
    }
    let n = u32::try_from(n).map_err(|_| InstanceError::MalformedToken {
        line: 1,
        token: n.to_string(),
    })?;
    let m = usize::try_from(m).map_err(|_| InstanceError::MalformedToken {
        line,
        token: m.to_string(),
    })?;

    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while let Some((line, a)) = next_int(&mut tokens)? {
        let (Some((_, b)), Some((_, w))) = (next_int(&mut tokens)?, next_int(&mut tokens)?) else {
            return Err(InstanceError::TruncatedEdge { line });
        };
        check_vertex(line, a, n)?;
        check_vertex(line, b, n)?;
        let (a, b) = (a as u32, b as u32);
        if a == b {
            return Err(InstanceError::SelfLoop { line, vertex: a });
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        if !seen.insert((u, v)) {
            return Err(InstanceError::DuplicateEdge { line, u, v });
        }
        edges.push(Edge { u, v, w });
    }
    if edges.len() != m {
        return Err(InstanceError::EdgeCountMismatch {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(ProblemInstance::assemble("unnamed".to_string(), n, edges))
}

/// Shape and seed of a synthetic toroidal ±1 instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusSpec {
    pub rows: u32,
    pub cols: u32,
    pub seed: u64,
}

impl TorusSpec {
    pub fn new(rows: u32, cols: u32, seed: u64) -> Result<Self, InstanceError> {
        let spec = Self { rows, cols, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        if self.rows < 3 || self.cols < 3 {
            return Err(InstanceError::TorusTooSmall {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Vertex id of 1-indexed grid cell `(row, col)`.
    pub fn vertex(&self, row: u32, col: u32) -> u32 {
        (row - 1) * self.cols + col
    }

    /// Conventional instance name, e.g. `torus-4x4-s1`.
    pub fn name(&self) -> String {
        format!("torus-{}x{}-s{}", self.rows, self.cols, self.seed)
    }
}

/// Generates a toroidal square grid with independent uniform ±1 weights.
///
/// Vertices are numbered row-major, `id = (row - 1) * cols + col`. Cells are
/// visited in id order and each emits its right edge, then its down edge
/// (both wrapping). Each edge weight is `+1` if the top bit of the next word
/// of stream 0 of [`SeededRng`]`(seed)` is set, else `-1`.
pub fn generate_torus(spec: &TorusSpec) -> Result<ProblemInstance, InstanceError> {
    spec.validate()?;
    let mut rng = SeededRng::new(spec.seed, 0);
    let mut edges = Vec::with_capacity(2 * (spec.rows * spec.cols) as usize);
    for row in 1..=spec.rows {
        for col in 1..=spec.cols {
            let here = spec.vertex(row, col);
            let right = spec.vertex(row, col % spec.cols + 1);
            let down = spec.vertex(row % spec.rows + 1, col);
            for there in [right, down] {
                let w = if rng.coin() { 1 } else { -1 };
                let (u, v) = if here < there { (here, there) } else { (there, here) };
                edges.push(Edge { u, v, w });
            }
        }
    }
    Ok(ProblemInstance::assemble(spec.name(), spec.rows * spec.cols, edges))
}

/// Where an instance comes from: a Gset file or a `torus:RxC:SEED` recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSource {
    File(std::path::PathBuf),
    Torus(TorusSpec),
}

impl InstanceSource {
    /// `torus:4x4:1` selects a generated torus; anything else is a path.
    pub fn parse(s: &str) -> Result<Self, InstanceError> {
        let Some(rest) = s.strip_prefix("torus:") else {
            return Ok(Self::File(s.into()));
        };
        let bad = || InstanceError::MalformedToken {
            line: 0,
            token: s.to_string(),
        };
        let (shape, seed) = rest.split_once(':').unwrap_or((rest, "0"));
        let (rows, cols) = shape.split_once('x').ok_or_else(bad)?;
        let spec = TorusSpec::new(
            rows.parse().map_err(|_| bad())?,
            cols.parse().map_err(|_| bad())?,
            seed.parse().map_err(|_| bad())?,
        )?;
        Ok(Self::Torus(spec))
    }
}
