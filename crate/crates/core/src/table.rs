use crate::error::{check_index, Error, Result};

/// A dense `rows × cols` table of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Table {
    rows: usize,
    cols: usize,
    data: Vec<usize>,
}

impl Table {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Table { rows, cols, data }
    }

    /// Builds a table from nested rows, checking the shape and that every
    /// entry is below `range`.
    pub fn from_rows(rows: &[Vec<usize>], expect_rows: usize, expect_cols: usize, range: usize) -> Result<Self> {
        if rows.len() != expect_rows {
            return Err(Error::Malformed(format!(
                "table has {} rows, expected {expect_rows}",
                rows.len()
            )));
        }
        let mut data = Vec::with_capacity(expect_rows * expect_cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != expect_cols {
                return Err(Error::Malformed(format!(
                    "table row {i} has {} entries, expected {expect_cols}",
                    row.len()
                )));
            }
            for &x in row {
                check_index(x, range)?;
                data.push(x);
            }
        }
        Ok(Table {
            rows: expect_rows,
            cols: expect_cols,
            data,
        })
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> usize {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize, v: usize) {
        self.data[r * self.cols + c] = v;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(|c| c.to_vec()).collect()
    }

    pub fn transpose(&self) -> Table {
        Table::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub(crate) fn max_entry(&self) -> Option<usize> {
        self.data.iter().copied().max()
    }
}
