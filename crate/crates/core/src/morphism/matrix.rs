use std::fmt;
use std::ops::Mul;

/// Square (or rectangular, for non-endomorphisms) letter-count matrix.
///
/// Entry `(a, b)` counts the occurrences of letter `a` in the image of `b`;
/// rows are indexed by the codomain, columns by the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl IncidenceMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IncidenceMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u64) {
        self.entries[row * self.cols + col] = value;
    }

    pub(crate) fn increment(&mut self, row: usize, col: usize) {
        self.entries[row * self.cols + col] += 1;
    }

    pub fn column_sum(&self, col: usize) -> u64 {
        (0..self.rows).map(|r| self.get(r, col)).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|&e| e > 0)
    }

    /// Entrywise `min(entry, 1)`.
    pub fn support(&self) -> Self {
        IncidenceMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| u64::from(e > 0)).collect(),
        }
    }

    /// Smallest `k ≤ (n-1)² + 1` with a positive `k`-th power, if any.
    pub fn primitivity_exponent(&self) -> Option<usize> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let n = self.rows;
        let bound = (n - 1) * (n - 1) + 1;
        let base = self.support();
        let mut power = base.clone();
        for k in 1..=bound {
            if power.is_positive() {
                return Some(k);
            }
            power = (&power * &base).support();
        }
        None
    }
}

impl Mul for &IncidenceMatrix {
    type Output = IncidenceMatrix;

    fn mul(self, rhs: &IncidenceMatrix) -> IncidenceMatrix {
        assert_eq!(self.cols, rhs.rows, "incompatible matrix shapes");
        let mut out = IncidenceMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl fmt::Display for IncidenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wielandt_matrix_needs_full_bound() {
        // The Wielandt matrix on 3 letters reaches positivity exactly at (n-1)²+1 = 5.
        let mut m = IncidenceMatrix::zeros(3, 3);
        m.set(1, 0, 1);
        m.set(2, 1, 1);
        m.set(0, 2, 1);
        m.set(1, 2, 1);
        assert_eq!(m.primitivity_exponent(), Some(5));
    }

    #[test]
    fn reducible_matrix_is_not_primitive() {
        let mut m = IncidenceMatrix::identity(2);
        m.set(0, 1, 1);
        assert_eq!(m.primitivity_exponent(), None);
    }
}
