//! Finitely generated groups with a fixed, ordered, symmetric generating set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer coordinates of a group element.
///
/// Lattice elements are offset vectors, matrix-group elements are the
/// row-major entries of an integer matrix.
pub type Element = Vec<i64>;

/// User-facing description of a group and its generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    /// `Z^d` with the given offset vectors as generators.
    Lattice { d: usize, generators: Vec<Vec<i64>> },
    /// Discrete Heisenberg group of upper unitriangular 3x3 integer
    /// matrices, generated by `x = I + E_12` and `y = I + E_23`.
    Heisenberg,
    /// Group generated by square integer matrices of determinant ±1.
    MatrixGroup { generators: Vec<Vec<Vec<i64>>> },
}

impl GroupSpec {
    /// `Z^d` with its standard basis.
    pub fn hypercubic(d: usize) -> Self {
        let generators = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
        GroupSpec::Lattice { d, generators }
    }

    pub fn square_lattice() -> Self {
        Self::hypercubic(2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Law {
    /// Componentwise addition in `Z^d`.
    Additive { d: usize },
    /// Multiplication of `n x n` matrices stored row-major.
    Matrix { n: usize },
}

/// A group together with its symmetrised generating set.
///
/// Generator order is: the user's generators with duplicates removed, then
/// the inverses that were not already present, in the order of the
/// generator they invert. This order fixes every BFS in the crate.
#[derive(Clone, Debug)]
pub struct GroupModel {
    spec: GroupSpec,
    law: Law,
    generators: Vec<Element>,
    user_generators: usize,
}

/// Validates `spec` and returns the corresponding group model.
pub fn build_group(spec: &GroupSpec) -> Result<GroupModel> {
    let (law, raw) = match spec {
        GroupSpec::Lattice { d, generators } => {
            if *d == 0 {
                return Err(Error::InvalidGroup("lattice dimension must be positive".into()));
            }
            for g in generators {
                if g.len() != *d {
                    return Err(Error::InvalidGroup(format!("generator {g:?} does not have {d} coordinates")));
                }
            }
            if !generators.is_empty() && !lattice_spans(generators, *d) {
                return Err(Error::InvalidGroup(format!("generators {generators:?} do not span Z^{d}")));
            }
            (Law::Additive { d: *d }, generators.clone())
        }
        GroupSpec::Heisenberg => {
            let x = vec![1, 1, 0, 0, 1, 0, 0, 0, 1];
            let y = vec![1, 0, 0, 0, 1, 1, 0, 0, 1];
            (Law::Matrix { n: 3 }, vec![x, y])
        }
        GroupSpec::MatrixGroup { generators } => {
            let n = generators.first().map_or(0, Vec::len);
            if n == 0 && !generators.is_empty() {
                return Err(Error::InvalidGroup("empty matrix generator".into()));
            }
            let mut flat = Vec::with_capacity(generators.len());
            for m in generators {
                if m.len() != n || m.iter().any(|row| row.len() != n) {
                    return Err(Error::InvalidGroup(format!("generator {m:?} is not a {n}x{n} matrix")));
                }
                let f: Element = m.iter().flatten().copied().collect();
                let det = determinant(&f, n);
                if det.abs() != 1 {
                    return Err(Error::InvalidGroup(format!(
                        "generator {m:?} has determinant {det}, not invertible over Z"
                    )));
                }
                flat.push(f);
            }
            (Law::Matrix { n }, flat)
        }
    };
    if raw.is_empty() {
        return Err(Error::InvalidGroup("generator list is empty".into()));
    }

    let mut model = GroupModel { spec: spec.clone(), law, generators: Vec::new(), user_generators: 0 };
    let identity = model.identity();
    for g in raw {
        if g == identity {
            return Err(Error::InvalidGroup(format!("generator {g:?} is the identity")));
        }
        if !model.generators.contains(&g) {
            model.generators.push(g);
        }
    }
    model.user_generators = model.generators.len();
    for i in 0..model.user_generators {
        let inv = model.inverse(&model.generators[i]);
        if !model.generators.contains(&inv) {
            model.generators.push(inv);
        }
    }
    Ok(model)
}

impl GroupModel {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn identity(&self) -> Element {
        match self.law {
            Law::Additive { d } => vec![0; d],
            Law::Matrix { n } => {
                let mut e = vec![0; n * n];
                for i in 0..n {
                    e[i * n + i] = 1;
                }
                e
            }
        }
    }

    /// The symmetrised generator list, in adjacency order.
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Number of generators supplied by the user (after de-duplication).
    pub fn user_generator_count(&self) -> usize {
        self.user_generators
    }

    /// Degree of the Cayley graph.
    pub fn degree(&self) -> usize {
        self.generators.len()
    }

    /// `a * b`.
    pub fn product(&self, a: &[i64], b: &[i64]) -> Element {
        match self.law {
            Law::Additive { .. } => a.iter().zip(b).map(|(x, y)| x + y).collect(),
            Law::Matrix { n } => {
                let mut out = vec![0; n * n];
                for i in 0..n {
                    for k in 0..n {
                        let aik = a[i * n + k];
                        if aik == 0 {
                            continue;
                        }
                        for j in 0..n {
                            out[i * n + j] += aik * b[k * n + j];
                        }
                    }
                }
                out
            }
        }
    }

    /// Right multiplication by generator number `g`.
    pub fn multiply(&self, element: &[i64], g: usize) -> Element {
        self.product(element, &self.generators[g])
    }

    pub fn inverse(&self, a: &[i64]) -> Element {
        match self.law {
            Law::Additive { .. } => a.iter().map(|x| -x).collect(),
            Law::Matrix { n } => {
                let det = determinant(a, n);
                debug_assert!(det.abs() == 1);
                let mut inv = vec![0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        // inverse = adj / det, adj[i][j] = cofactor[j][i]
                        let minor = minor_matrix(a, n, j, i);
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        inv[i * n + j] = sign * determinant(&minor, n - 1) * det;
                    }
                }
                inv
            }
        }
    }

    /// Word evaluation: product of the listed generators, left to right.
    pub fn evaluate_word(&self, word: &[usize]) -> Element {
        word.iter().fold(self.identity(), |acc, &g| self.multiply(&acc, g))
    }

    /// Fixed-width little-endian encoding of the coordinates.
    ///
    /// The encoding does not depend on any window, so keys (and hence
    /// percolation labels) are stable when a window is enlarged.
    pub fn canonical_key(&self, element: &[i64]) -> Vec<u8> {
        let mut key = Vec::with_capacity(8 * element.len());
        for x in element {
            key.extend_from_slice(&x.to_le_bytes());
        }
        key
    }
}

fn minor_matrix(a: &[i64], n: usize, row: usize, col: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity((n - 1) * (n - 1));
    for i in (0..n).filter(|&i| i != row) {
        for j in (0..n).filter(|&j| j != col) {
            out.push(a[i * n + j]);
        }
    }
    out
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub(crate) fn determinant(a: &[i64], n: usize) -> i64 {
    if n == 0 {
        return 1;
    }
    let mut m: Vec<i128> = a.iter().map(|&x| i128::from(x)).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k * n + k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r * n + k] != 0) else {
                return 0;
            };
            for j in 0..n {
                m.swap(k * n + j, swap * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
            }
        }
        prev = m[k * n + k];
    }
    (sign * m[(n - 1) * n + (n - 1)]) as i64
}

/// True when the integer span of `gens` is all of `Z^d`.
///
/// Row-reduces with unimodular integer operations; the index of the
/// generated lattice is the product of the pivots.
fn lattice_spans(gens: &[Vec<i64>], d: usize) -> bool {
    let mut rows: Vec<Vec<i128>> = gens.iter().map(|g| g.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut pivot_row = 0;
    let mut index: i128 = 1;
    for col in 0..d {
        loop {
            // smallest nonzero |entry| among the remaining rows
            let best = (pivot_row..rows.len()).filter(|&r| rows[r][col] != 0).min_by_key(|&r| rows[r][col].abs());
            let Some(best) = best else {
                return false;
            };
            rows.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col] != 0 {
                    let q = rows[r][col] / rows[pivot_row][col];
                    for c in col..d {
                        rows[r][c] -= q * rows[pivot_row][c];
                    }
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        index *= rows[pivot_row][col].abs();
        pivot_row += 1;
    }
    index == 1
}
