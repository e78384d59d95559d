//! Exact integer decomposition matrices and unitriangularity certificates.
//!
//! A [`DecMatrix`] is a dense table of non-negative integers indexed by
//! ordinary-character rows and Brauer-character columns.  A
//! [`UnitriCertificate`] is a pair of orderings witnessing that a square
//! submatrix is lower unitriangular: ones on the diagonal, zeros above.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::label::{BrauerLabel, CharLabel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("row count {rows} does not match entry table height {height}")]
    RowCountMismatch { rows: usize, height: usize },
    #[error("row {row} has {len} entries, expected {cols}")]
    RaggedRow { row: String, len: usize, cols: usize },
    #[error("duplicate row label {0}")]
    DuplicateRow(String),
    #[error("duplicate column label {0}")]
    DuplicateCol(String),
    #[error("unknown row label {0}")]
    UnknownRow(String),
    #[error("unknown column label {0}")]
    UnknownCol(String),
}

/// Reason a certificate fails to verify against a matrix.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertFailure {
    #[error("row order has {rows} labels but column order has {cols}")]
    LengthMismatch { rows: usize, cols: usize },
    #[error("duplicate row label {0} in certificate")]
    DuplicateRow(String),
    #[error("duplicate column label {0} in certificate")]
    DuplicateCol(String),
    #[error("certificate row {0} does not occur in the matrix")]
    UnknownRow(String),
    #[error("certificate column {0} does not occur in the matrix")]
    UnknownCol(String),
    #[error("diagonal entry d[{row}][{col}] = {value}, expected 1")]
    DiagonalNotOne { row: String, col: String, value: u64 },
    #[error("entry d[{row}][{col}] = {value} above the diagonal, expected 0")]
    NonzeroAboveDiagonal { row: String, col: String, value: u64 },
}

/// Labeled table of decomposition numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecMatrix {
    rows: Vec<CharLabel>,
    cols: Vec<BrauerLabel>,
    entries: Vec<Vec<u64>>,
    row_index: BTreeMap<CharLabel, usize>,
    col_index: BTreeMap<BrauerLabel, usize>,
}

impl DecMatrix {
    pub fn new(
        rows: Vec<CharLabel>,
        cols: Vec<BrauerLabel>,
        entries: Vec<Vec<u64>>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != rows.len() {
            return Err(MatrixError::RowCountMismatch {
                rows: rows.len(),
                height: entries.len(),
            });
        }
        for (label, row) in rows.iter().zip(&entries) {
            if row.len() != cols.len() {
                return Err(MatrixError::RaggedRow {
                    row: label.to_string(),
                    len: row.len(),
                    cols: cols.len(),
                });
            }
        }
        let mut row_index = BTreeMap::new();
        for (i, label) in rows.iter().enumerate() {
            if row_index.insert(label.clone(), i).is_some() {
                return Err(MatrixError::DuplicateRow(label.to_string()));
            }
        }
        let mut col_index = BTreeMap::new();
        for (j, label) in cols.iter().enumerate() {
            if col_index.insert(label.clone(), j).is_some() {
                return Err(MatrixError::DuplicateCol(label.to_string()));
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
            row_index,
            col_index,
        })
    }

    pub fn rows(&self) -> &[CharLabel] {
        &self.rows
    }

    pub fn cols(&self) -> &[BrauerLabel] {
        &self.cols
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    pub fn entry(&self, row: &CharLabel, col: &BrauerLabel) -> Option<u64> {
        let i = *self.row_index.get(row)?;
        let j = *self.col_index.get(col)?;
        Some(self.entries[i][j])
    }

    pub fn entry_at(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn row_position(&self, row: &CharLabel) -> Option<usize> {
        self.row_index.get(row).copied()
    }

    pub fn col_position(&self, col: &BrauerLabel) -> Option<usize> {
        self.col_index.get(col).copied()
    }

    /// Restriction to a row subset and column subset; label order is
    /// inherited from this matrix, not from the argument sets.
    pub fn submatrix(
        &self,
        row_set: &BTreeSet<CharLabel>,
        col_set: &BTreeSet<BrauerLabel>,
    ) -> Result<DecMatrix, MatrixError> {
        for r in row_set {
            if !self.row_index.contains_key(r) {
                return Err(MatrixError::UnknownRow(r.to_string()));
            }
        }
        for c in col_set {
            if !self.col_index.contains_key(c) {
                return Err(MatrixError::UnknownCol(c.to_string()));
            }
        }
        let rows: Vec<CharLabel> = self
            .rows
            .iter()
            .filter(|r| row_set.contains(r))
            .cloned()
            .collect();
        let cols: Vec<BrauerLabel> = self
            .cols
            .iter()
            .filter(|c| col_set.contains(c))
            .cloned()
            .collect();
        let entries = rows
            .iter()
            .map(|r| {
                let i = self.row_index[r];
                cols.iter().map(|c| self.entries[i][self.col_index[c]]).collect()
            })
            .collect();
        DecMatrix::new(rows, cols, entries)
    }

    /// Verifies a certificate against this matrix's entries.
    ///
    /// The certificate covers a subset of rows and columns; entries of the
    /// matrix outside that subset are irrelevant.  A malformed certificate
    /// yields the failure reason rather than an error.
    pub fn check_certificate(&self, cert: &UnitriCertificate) -> Result<(), CertFailure> {
        if cert.row_order.len() != cert.col_order.len() {
            return Err(CertFailure::LengthMismatch {
                rows: cert.row_order.len(),
                cols: cert.col_order.len(),
            });
        }
        let mut seen_rows = BTreeSet::new();
        for r in &cert.row_order {
            if !seen_rows.insert(r.clone()) {
                return Err(CertFailure::DuplicateRow(r.to_string()));
            }
            if !self.row_index.contains_key(r) {
                return Err(CertFailure::UnknownRow(r.to_string()));
            }
        }
        let mut seen_cols = BTreeSet::new();
        for c in &cert.col_order {
            if !seen_cols.insert(c.clone()) {
                return Err(CertFailure::DuplicateCol(c.to_string()));
            }
            if !self.col_index.contains_key(c) {
                return Err(CertFailure::UnknownCol(c.to_string()));
            }
        }
        for (i, row) in cert.row_order.iter().enumerate() {
            for (j, col) in cert.col_order.iter().enumerate() {
                let value = self.entry(row, col).expect("labels checked above");
                if i == j && value != 1 {
                    return Err(CertFailure::DiagonalNotOne {
                        row: row.to_string(),
                        col: col.to_string(),
                        value,
                    });
                }
                if j > i && value != 0 {
                    return Err(CertFailure::NonzeroAboveDiagonal {
                        row: row.to_string(),
                        col: col.to_string(),
                        value,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_certified_by(&self, cert: &UnitriCertificate) -> bool {
        self.check_certificate(cert).is_ok()
    }

    /// Searches for orderings making the whole matrix lower unitriangular.
    ///
    /// Greedy peel: repeatedly pick a remaining row whose support among the
    /// remaining columns is a single entry equal to 1, record it and that
    /// column as the next diagonal position, and delete both.  Ties between
    /// qualifying rows break to the lexicographically smallest label, so
    /// the output is deterministic and independent of storage order.
    ///
    /// The greedy choice is safe: in any pair of orderings certifying the
    /// matrix, the first row has exactly that single-entry support, so a
    /// qualifying row exists; and for any qualifying row r with support
    /// {c}, every certificate must pair r with c (the diagonal entry of r
    /// is its only nonzero), and removing r and c from a certifying order
    /// leaves a certifying order of the smaller matrix.  Hence the peel
    /// dead-ends exactly when no certificate exists.
    ///
    /// Non-square input returns `None` immediately, as does a square matrix
    /// with no certificate.  The 0x0 matrix is unitriangular by convention.
    pub fn find_unitriangular(&self) -> Option<UnitriCertificate> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows.len();
        let mut row_alive = vec![true; n];
        let mut col_alive = vec![true; n];
        // row indices in label order, so ties resolve lexicographically
        let sorted_rows: Vec<usize> = self.row_index.values().copied().collect();
        let mut row_order = Vec::with_capacity(n);
        let mut col_order = Vec::with_capacity(n);
        for _ in 0..n {
            let mut picked = None;
            'rows: for &i in &sorted_rows {
                if !row_alive[i] {
                    continue;
                }
                let mut support = None;
                for (j, alive) in col_alive.iter().enumerate() {
                    if *alive && self.entries[i][j] != 0 {
                        if support.is_some() || self.entries[i][j] != 1 {
                            continue 'rows;
                        }
                        support = Some(j);
                    }
                }
                if let Some(j) = support {
                    picked = Some((i, j));
                    break;
                }
            }
            let (i, j) = picked?;
            row_alive[i] = false;
            col_alive[j] = false;
            row_order.push(self.rows[i].clone());
            col_order.push(self.cols[j].clone());
        }
        Some(UnitriCertificate {
            row_order,
            col_order,
        })
    }

    /// The bijection row -> column shared by every valid certificate.
    ///
    /// Orderings are not unique, but the pairing is: a qualifying row's
    /// single support column is forced in every certificate, and the
    /// argument recurses once the pair is deleted.
    pub fn canonical_bijection(&self) -> Option<BTreeMap<CharLabel, BrauerLabel>> {
        self.find_unitriangular().map(|cert| cert.bijection())
    }
}

/// Row and column orderings witnessing lower unitriangularity.
///
/// The bijection pairs the i-th row with the i-th column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitriCertificate {
    row_order: Vec<CharLabel>,
    col_order: Vec<BrauerLabel>,
}

impl UnitriCertificate {
    pub fn new(
        row_order: Vec<CharLabel>,
        col_order: Vec<BrauerLabel>,
    ) -> Result<Self, CertFailure> {
        if row_order.len() != col_order.len() {
            return Err(CertFailure::LengthMismatch {
                rows: row_order.len(),
                cols: col_order.len(),
            });
        }
        let mut rows = BTreeSet::new();
        for r in &row_order {
            if !rows.insert(r.clone()) {
                return Err(CertFailure::DuplicateRow(r.to_string()));
            }
        }
        let mut cols = BTreeSet::new();
        for c in &col_order {
            if !cols.insert(c.clone()) {
                return Err(CertFailure::DuplicateCol(c.to_string()));
            }
        }
        Ok(Self {
            row_order,
            col_order,
        })
    }

    pub fn row_order(&self) -> &[CharLabel] {
        &self.row_order
    }

    pub fn col_order(&self) -> &[BrauerLabel] {
        &self.col_order
    }

    pub fn len(&self) -> usize {
        self.row_order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row_order.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&CharLabel, &BrauerLabel)> {
        self.row_order.iter().zip(self.col_order.iter())
    }

    pub fn bijection(&self) -> BTreeMap<CharLabel, BrauerLabel> {
        self.pairs().map(|(r, c)| (r.clone(), c.clone())).collect()
    }

    /// Column paired with the given row, if the row is covered.
    pub fn image_of(&self, row: &CharLabel) -> Option<&BrauerLabel> {
        self.row_order
            .iter()
            .position(|r| r == row)
            .map(|i| &self.col_order[i])
    }
}
