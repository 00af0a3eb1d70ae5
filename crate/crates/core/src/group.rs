//! Finite grading groups as validated Cayley tables.
//!
//! Elements are identified by index; labels are presentation-only. The table
//! is fully validated at construction time (Latin square, two-sided identity,
//! two-sided inverses, associativity over all triples), so downstream code
//! can index freely.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("a group must have at least one element")]
    Empty,
    #[error("table is not square over the label set")]
    NotSquare,
    #[error("table entry ({row},{col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize },
    #[error("table is not a Latin square: row or column {index} repeats an element")]
    NotLatin { index: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {index} has no two-sided inverse")]
    NoInverse { index: usize },
    #[error("associativity fails on the triple ({a},{b},{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    /// row-major `n x n` table of element indices
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates and wraps a Cayley table given as index rows.
    pub fn from_table(labels: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = labels.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(GroupError::DuplicateLabel(l.clone()));
            }
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::NotSquare);
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { row: i, col: j });
                }
                table.push(v);
            }
        }
        // Latin square: every row and column hits each element once.
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j];
                let c = table[j * n + i];
                if seen_row[r] || seen_col[c] {
                    return Err(GroupError::NotLatin { index: i });
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e * n + j] == j && table[j * n + e] == j))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            inverse[i] = (0..n)
                .find(|&j| table[i * n + j] == identity && table[j * n + i] == identity)
                .ok_or(GroupError::NoInverse { index: i })?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab_c = table[table[a * n + b] * n + c];
                    let a_bc = table[a * n + table[b * n + c]];
                    if ab_c != a_bc {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup { labels, table, identity, inverse })
    }

    /// The cyclic group of order `n` with labels `"0".."n-1"`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let rows = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(labels, rows)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize, GroupError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| GroupError::UnknownLabel(label.to_string()))
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order() + j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Conjugation `g h g^{-1}`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }
}
