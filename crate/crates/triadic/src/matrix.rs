//! Pairwise-comparisons matrices: validation, triad enumeration,
//! consistency checks, and reconstruction of consistent matrices from
//! minimal input.
//!
//! A PC matrix is a square grid of strictly positive ratios. It is
//! *reciprocal* when `m[i][j] * m[j][i] = 1` for all `i, j`, and
//! *consistent* (transitive) when `m[i][j] * m[j][k] = m[i][k]` for all
//! `i, j, k`. A *triad* is the value triple `(m[i][j], m[i][k], m[j][k])`
//! for indices `i < j < k`; consistency of the whole matrix is exactly
//! consistency `a*c = b` of every triad plus reciprocity.

use thiserror::Error;

use crate::scalar::{NumberParseError, Scalar};

/// Default relative tolerance for float-mode equality checks.
/// Rational mode always compares exactly and ignores tolerances.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("empty matrix input")]
    Empty,
    #[error("matrix must be at least 2x2, got {n}x{n}")]
    TooSmall { n: usize },
    #[error("row {row} has {got} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("grid is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-positive entry at ({row}, {col})")]
    NonPositiveEntry { row: usize, col: usize },
    #[error("empty ratio seed")]
    EmptySeed,
    #[error("non-positive ratio at index {index}")]
    NonPositiveRatio { index: usize },
    #[error("non-positive weight at index {index}")]
    NonPositiveWeight { index: usize },
    #[error("need at least two weights, got {n}")]
    TooFewWeights { n: usize },
}

/// Error from the matrix text format, with a 1-based file position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct TextParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Ordered value triple `(a, b, c) = (m[i][j], m[i][k], m[j][k])` together
/// with its index triple `i < j < k`. The triad is consistent when
/// `a * c = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Triad<T> {
    pub indices: (usize, usize, usize),
    pub values: (T, T, T),
}

impl<T: Scalar> Triad<T> {
    /// Product of the outer values minus nothing: the `a*c` side of the
    /// consistency condition.
    pub fn outer_product(&self) -> T {
        self.values.0.clone() * self.values.2.clone()
    }
}

/// Strictly positive priority weights; `w[i] / w[j]` realizes a consistent
/// PC matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights<T>(Vec<T>);

impl<T: Scalar> Weights<T> {
    pub fn new(w: Vec<T>) -> Result<Self, MatrixError> {
        if w.len() < 2 {
            return Err(MatrixError::TooFewWeights { n: w.len() });
        }
        for (index, v) in w.iter().enumerate() {
            if !v.is_strictly_positive() {
                return Err(MatrixError::NonPositiveWeight { index });
            }
        }
        Ok(Weights(w))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A validated pairwise-comparisons matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PcMatrix<T> {
    n: usize,
    entries: Vec<T>,
    reciprocal: bool,
}

impl<T: Scalar> PcMatrix<T> {
    /// Validates a raw grid: square, at least 2x2, every entry strictly
    /// positive. Whether reciprocity holds is recorded, not required;
    /// float mode accepts `|m[i][j]*m[j][i] - 1| <= reciprocity_tol`.
    pub fn from_rows(rows: Vec<Vec<T>>, reciprocity_tol: f64) -> Result<Self, MatrixError> {
        if rows.is_empty() {
            return Err(MatrixError::Empty);
        }
        let n = rows.len();
        let cols = rows[0].len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(MatrixError::Ragged {
                    row,
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        if cols != n {
            return Err(MatrixError::NotSquare { rows: n, cols });
        }
        if n < 2 {
            return Err(MatrixError::TooSmall { n });
        }
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if !v.is_strictly_positive() {
                    return Err(MatrixError::NonPositiveEntry { row: i, col: j });
                }
            }
        }
        let entries: Vec<T> = rows.into_iter().flatten().collect();
        let reciprocal = check_reciprocal(n, &entries, reciprocity_tol);
        Ok(PcMatrix {
            n,
            entries,
            reciprocal,
        })
    }

    /// The consistent reciprocal matrix realized by `m[i][j] = w[i] / w[j]`.
    pub fn from_weights(w: &Weights<T>) -> Self {
        let ws = w.as_slice();
        let rows: Vec<Vec<T>> = ws
            .iter()
            .map(|wi| ws.iter().map(|wj| wi.clone() / wj.clone()).collect())
            .collect();
        Self::from_rows(rows, DEFAULT_TOL).expect("weight ratios form a valid matrix")
    }

    /// The unique consistent reciprocal matrix with the given adjacent
    /// above-diagonal ratios `seed[i] = m[i][i+1]`; every other entry is
    /// the chain product `m[i][j] = seed[i] * ... * seed[j-1]`.
    pub fn reconstruct_consistent(seed: &[T]) -> Result<Self, MatrixError> {
        if seed.is_empty() {
            return Err(MatrixError::EmptySeed);
        }
        for (index, r) in seed.iter().enumerate() {
            if !r.is_strictly_positive() {
                return Err(MatrixError::NonPositiveRatio { index });
            }
        }
        let n = seed.len() + 1;
        // prefix[i] = seed[0] * ... * seed[i-1], so m[i][j] = prefix[j] / prefix[i]
        let mut prefix = Vec::with_capacity(n);
        prefix.push(T::one());
        for r in seed {
            let last = prefix.last().expect("nonempty").clone();
            prefix.push(last * r.clone());
        }
        let rows: Vec<Vec<T>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| prefix[j].clone() / prefix[i].clone())
                    .collect()
            })
            .collect();
        Self::from_rows(rows, DEFAULT_TOL)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    /// Whether `m[i][j] * m[j][i] = 1` held at validation time.
    pub fn is_reciprocal(&self) -> bool {
        self.reciprocal
    }

    /// Consistency over *all* ordered index triples `i, j, k`:
    /// `|m[i][j]*m[j][k] - m[i][k]| <= tol * m[i][k]`, exact in rational
    /// mode. Degenerate triples are included, so a consistent matrix is
    /// necessarily reciprocal with a unit diagonal.
    pub fn is_consistent(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    let lhs = self.get(i, j).clone() * self.get(j, k).clone();
                    let rhs = self.get(i, k);
                    if !approx_eq_rel(&lhs, rhs, tol) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All `C(n,3)` triads in lexicographic index order. Empty for `n < 3`.
    pub fn triads(&self) -> impl Iterator<Item = Triad<T>> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| {
            ((i + 1)..n).flat_map(move |j| ((j + 1)..n).map(move |k| self.triad_at(i, j, k)))
        })
    }

    /// The triad at a specific index triple `i < j < k`.
    pub fn triad_at(&self, i: usize, j: usize, k: usize) -> Triad<T> {
        debug_assert!(i < j && j < k && k < self.n);
        Triad {
            indices: (i, j, k),
            values: (
                self.get(i, j).clone(),
                self.get(i, k).clone(),
                self.get(j, k).clone(),
            ),
        }
    }

    /// The adjacent above-diagonal ratios `m[i][i+1]`; feeding these back
    /// into [`PcMatrix::reconstruct_consistent`] reproduces a consistent
    /// matrix exactly in rational mode.
    pub fn adjacent_ratios(&self) -> Vec<T> {
        (0..self.n - 1)
            .map(|i| self.get(i, i + 1).clone())
            .collect()
    }

    /// Rows as owned vectors, for editing and rebuilding.
    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Relabels alternatives: `out[i][j] = m[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> PcMatrix<T> {
        assert_eq!(perm.len(), self.n, "permutation length must match n");
        let mut seen = vec![false; self.n];
        for &p in perm {
            assert!(p < self.n && !seen[p], "not a permutation of 0..n");
            seen[p] = true;
        }
        let rows: Vec<Vec<T>> = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        Self::from_rows(rows, DEFAULT_TOL).expect("relabeling preserves validity")
    }

    /// Writes the matrix text format: a dimension header line, then `n`
    /// rows of whitespace-separated tokens.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.n.to_string());
        out.push('\n');
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).render()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Relative comparison `|lhs - rhs| <= tol * |rhs|`; exact when `T::EXACT`.
fn approx_eq_rel<T: Scalar>(lhs: &T, rhs: &T, tol: f64) -> bool {
    if T::EXACT {
        lhs == rhs
    } else {
        (lhs.clone() - rhs.clone()).abs().approx_f64() <= tol * rhs.abs().approx_f64()
    }
}

fn check_reciprocal<T: Scalar>(n: usize, entries: &[T], tol: f64) -> bool {
    for i in 0..n {
        for j in i..n {
            let prod = entries[i * n + j].clone() * entries[j * n + i].clone();
            if !approx_eq_rel(&prod, &T::one(), tol) {
                return false;
            }
        }
    }
    true
}

/// True when the text contains an exact-fraction token, which selects
/// rational mode unless the caller overrides it.
pub fn text_prefers_rational(input: &str) -> bool {
    input
        .lines()
        .map(strip_comment)
        .any(|line| line.split_whitespace().any(|tok| tok.contains('/')))
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Parses the matrix text format: an optional first line holding `n`,
/// then `n` rows of `n` whitespace-separated tokens. Tokens are decimal
/// literals or exact fractions `p/q`; `#` starts a comment.
pub fn parse_matrix_text<T: Scalar>(
    input: &str,
    reciprocity_tol: f64,
) -> Result<PcMatrix<T>, TextParseError> {
    struct Tok {
        text: String,
        line: usize,
        col: usize,
    }

    let mut rows: Vec<Vec<Tok>> = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = strip_comment(raw);
        let mut toks: Vec<Tok> = Vec::new();
        let mut chars = line.chars().enumerate().peekable();
        while let Some(&(start, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let mut text = String::new();
            while let Some(&(_, c2)) = chars.peek() {
                if c2.is_whitespace() {
                    break;
                }
                text.push(c2);
                chars.next();
            }
            toks.push(Tok {
                text,
                line: lineno + 1,
                col: start + 1,
            });
        }
        if !toks.is_empty() {
            rows.push(toks);
        }
    }

    if rows.is_empty() {
        return Err(TextParseError {
            line: 1,
            col: 1,
            message: "empty matrix input".to_string(),
        });
    }

    // Optional dimension header: a lone integer on the first line.
    let mut expected_n: Option<usize> = None;
    if rows[0].len() == 1 {
        if let Ok(n) = rows[0][0].text.parse::<usize>() {
            expected_n = Some(n);
            rows.remove(0);
        }
    }

    if let Some(n) = expected_n {
        if rows.len() != n {
            let (line, col) = rows.last().map(|r| (r[0].line, r[0].col)).unwrap_or((1, 1));
            return Err(TextParseError {
                line,
                col,
                message: format!("header declares {n} rows, found {}", rows.len()),
            });
        }
    }

    let n = rows.len();
    let mut grid: Vec<Vec<T>> = Vec::with_capacity(n);
    for row in &rows {
        if row.len() != n {
            return Err(TextParseError {
                line: row[0].line,
                col: row[0].col,
                message: format!("row has {} tokens, expected {n}", row.len()),
            });
        }
        let mut out = Vec::with_capacity(n);
        for tok in row {
            let v = T::parse_token(&tok.text).map_err(|e: NumberParseError| TextParseError {
                line: tok.line,
                col: tok.col,
                message: e.to_string(),
            })?;
            out.push(v);
        }
        grid.push(out);
    }

    PcMatrix::from_rows(grid, reciprocity_tol).map_err(|e| {
        let (line, col) = match &e {
            MatrixError::NonPositiveEntry { row, col } => {
                let t = &rows[*row][*col];
                (t.line, t.col)
            }
            _ => (rows[0][0].line, rows[0][0].col),
        };
        TextParseError {
            line,
            col,
            message: e.to_string(),
        }
    })
}
