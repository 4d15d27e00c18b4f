use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::context::VariableContext;
use crate::poly::polynomial::{same_ctx, Polynomial};
use crate::poly::rational::Rational;

/// Dense matrix of polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    ctx: Arc<VariableContext>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

/// One minor with its (0-based) row and column selections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Polynomial,
}

impl Minor {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl SymbolicMatrix {
    pub fn zeros(ctx: &Arc<VariableContext>, rows: usize, cols: usize) -> Self {
        SymbolicMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ctx); rows * cols],
        }
    }

    pub fn from_fn(
        ctx: &Arc<VariableContext>,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Polynomial,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        SymbolicMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn from_constant(ctx: &Arc<VariableContext>, m: &QMatrix) -> Self {
        Self::from_fn(ctx, m.rows(), m.cols(), |r, c| Polynomial::constant(ctx, m.get(r, c).clone()))
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        assert!(same_ctx(&self.ctx, p.ctx()), "entry from a different context");
        self.entries[r * self.cols + c] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.ctx, rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn try_mul(&self, other: &SymbolicMatrix) -> Result<SymbolicMatrix> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(&self.ctx, self.rows, other.cols, |r, c| {
            let mut acc = Polynomial::zero(&self.ctx);
            for k in 0..self.cols {
                let (a, b) = (self.get(r, k), other.get(k, c));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    /// The constant matrix, if every entry is constant.
    pub fn to_constant(&self) -> Option<QMatrix> {
        let vals: Option<Vec<Rational>> = self.entries.iter().map(|p| p.as_constant()).collect();
        let vals = vals?;
        Some(QMatrix::from_fn(self.rows, self.cols, |r, c| vals[r * self.cols + c].clone()))
    }

    /// Evaluates every entry at a full variable assignment.
    pub fn evaluate(&self, values: &[Rational]) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).evaluate(values))
    }

    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        Ok(self.det_sub(&rows, &rows))
    }

    /// Determinant of the square selection `rows x cols`, with the sign of
    /// the permutation expansion in the given order.
    fn det_sub(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        let n = rows.len();
        match n {
            0 => return Polynomial::one(&self.ctx),
            1 => return self.get(rows[0], cols[0]).clone(),
            2 => {
                let a = self.get(rows[0], cols[0]);
                let b = self.get(rows[0], cols[1]);
                let c = self.get(rows[1], cols[0]);
                let d = self.get(rows[1], cols[1]);
                let ad = if a.is_zero() || d.is_zero() { Polynomial::zero(&self.ctx) } else { a * d };
                let bc = if b.is_zero() || c.is_zero() { Polynomial::zero(&self.ctx) } else { b * c };
                return &ad - &bc;
            }
            _ => {}
        }
        if rows
            .iter()
            .all(|&r| cols.iter().all(|&c| self.get(r, c).is_constant()))
        {
            let m = QMatrix::from_fn(n, n, |r, c| {
                self.get(rows[r], cols[c]).as_constant().expect("constant entry")
            });
            return Polynomial::constant(&self.ctx, m.det().expect("square"));
        }
        // Expand along the line with the most zeros; among ties prefer the
        // line with the fewest symbolic entries.
        let score = |cells: &mut dyn Iterator<Item = &Polynomial>| {
            let mut zeros = 0usize;
            let mut symbolic = 0usize;
            for p in cells {
                if p.is_zero() {
                    zeros += 1;
                } else if !p.is_constant() {
                    symbolic += 1;
                }
            }
            (zeros, usize::MAX - symbolic)
        };
        let mut best = (false, 0usize, (0usize, 0usize));
        for (i, &r) in rows.iter().enumerate() {
            let s = score(&mut cols.iter().map(|&c| self.get(r, c)));
            if i == 0 || s > best.2 {
                best = (false, i, s);
            }
        }
        for (j, &c) in cols.iter().enumerate() {
            let s = score(&mut rows.iter().map(|&r| self.get(r, c)));
            if s > best.2 {
                best = (true, j, s);
            }
        }
        let (along_col, idx, _) = best;
        let mut acc = Polynomial::zero(&self.ctx);
        for k in 0..n {
            let (r, c) = if along_col { (k, idx) } else { (idx, k) };
            let entry = self.get(rows[r], cols[c]);
            if entry.is_zero() {
                continue;
            }
            let sub_rows: Vec<usize> = rows.iter().enumerate().filter(|&(i, _)| i != r).map(|(_, &v)| v).collect();
            let sub_cols: Vec<usize> = cols.iter().enumerate().filter(|&(i, _)| i != c).map(|(_, &v)| v).collect();
            let cof = self.det_sub(&sub_rows, &sub_cols);
            if cof.is_zero() {
                continue;
            }
            let term = entry * &cof;
            acc = if (r + c) % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
        if rows.len() != cols.len() {
            return Err(Error::SelectionMismatch {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        if rows.iter().any(|&r| r >= self.rows) || cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::Dimension("minor index out of range".into()));
        }
        Ok(self.det_sub(rows, cols))
    }

    /// All `k x k` minors, row sets outer and column sets inner, both in
    /// lexicographic order. Zero minors are kept.
    pub fn minors(&self, k: usize) -> Result<Vec<Minor>> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(Error::MinorSize {
                k,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = row_sets
            .iter()
            .flat_map(|r| col_sets.iter().map(move |c| (r, c)))
            .collect();
        Ok(pairs
            .par_iter()
            .map(|(r, c)| Minor {
                rows: (*r).clone(),
                cols: (*c).clone(),
                value: self.det_sub(r, c),
            })
            .collect())
    }

    /// Canonical text of every entry, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_strings() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
