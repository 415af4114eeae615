//! Exact integer matrices: rational rank and the congruence factorization
//! of alternating forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(data: &[&[i64]]) -> Self {
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(data.len(), cols);
        for (r, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix literal");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * out.cols + c;
                    out.data[idx] += a * other.get(k, c);
                }
            }
        }
        Ok(out)
    }

    /// `Bᵀ F B`.
    pub fn gram(b: &IntMatrix, form: &IntMatrix) -> Result<IntMatrix> {
        b.transpose().mul(&form.mul(b)?)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero() && (i + 1..self.cols).all(|j| *self.get(i, j) == -self.get(j, i))
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c) * k;
            self.data[dst * self.cols + c] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src) * k;
            self.data[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let idx = r * self.cols + c;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "int {} {}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty matrix file"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 || h[0] != "int" {
            return Err(parse_err(ln, "expected `int <rows> <cols>` header"));
        }
        let rows: usize = h[1].parse().map_err(|_| parse_err(ln, "invalid row count"))?;
        let cols: usize = h[2].parse().map_err(|_| parse_err(ln, "invalid column count"))?;
        let mut m = IntMatrix::zeros(rows, cols);
        let mut r = 0;
        for (ln, line) in lines {
            if r >= rows {
                return Err(parse_err(ln, "more rows than declared"));
            }
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != cols {
                return Err(parse_err(ln, format!("expected {cols} entries, found {}", entries.len())));
            }
            for (c, e) in entries.iter().enumerate() {
                let v: BigInt = e.parse().map_err(|_| parse_err(ln, format!("invalid integer `{e}`")))?;
                m.set(r, c, v);
            }
            r += 1;
        }
        if r != rows {
            return Err(parse_err(0, format!("declared {rows} rows, found {r}")));
        }
        Ok(m)
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank_q(a: &IntMatrix) -> usize {
    let mut m = a.clone();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(p) = (rank..m.rows).find(|&r| !m.get(r, c).is_zero()) else { continue };
        m.swap_rows(rank, p);
        let pivot = m.get(rank, c).clone();
        for r in rank + 1..m.rows {
            let factor = m.get(r, c).clone();
            for k in c..m.cols {
                let v = (&pivot * m.get(r, k) - &factor * m.get(rank, k)) / &prev;
                m.set(r, k, v);
            }
        }
        prev = pivot;
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

/// Block-diagonal `2g × 2g` matrix with `g` blocks `[[0,1],[-1,0]]`.
pub fn symplectic_matrix_int(g: usize) -> IntMatrix {
    let mut h = IntMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        h.set(2 * i, 2 * i + 1, BigInt::one());
        h.set(2 * i + 1, 2 * i, -BigInt::one());
    }
    h
}

/// Congruence `M ↦ Uᵀ M U` applied in lockstep with `K ↦ U⁻¹ K`, so that
/// `A = Kᵀ M K` holds throughout.
struct Congruence {
    m: IntMatrix,
    k: IntMatrix,
}

impl Congruence {
    fn swap(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.m.swap_cols(a, b);
        self.k.swap_rows(a, b);
    }

    /// index `dst` += c · index `src`
    fn add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.m.add_col(dst, src, c);
        self.m.add_row(dst, src, c);
        self.k.add_row(src, dst, &-c);
    }

    fn negate(&mut self, a: usize) {
        self.m.negate_row(a);
        self.m.negate_col(a);
        self.k.negate_row(a);
    }
}

/// Factors an integer skew-symmetric `A` as `Bᵀ H B` with `H` the standard
/// symplectic form and `B` an integer matrix with `rank_q(A)` rows.
///
/// The form is reduced by unimodular congruence to
/// `diag(e₁J, …, e_gJ, 0)`: pivot on an entry of least absolute value,
/// clear its two rows by Euclidean steps and restart whenever a nonzero
/// remainder appears. The divisors are then absorbed into `B`.
pub fn factor_alternating(a: &IntMatrix) -> Result<IntMatrix> {
    if !a.is_skew_symmetric() {
        return Err(Error::Precondition("matrix is not skew-symmetric".into()));
    }
    let n = a.rows;
    let mut st = Congruence { m: a.clone(), k: IntMatrix::identity(n) };
    let mut divisors = Vec::new();
    let mut top = 0;
    while top + 1 < n {
        let mut best: Option<(usize, usize)> = None;
        for i in top..n {
            for j in i + 1..n {
                let v = st.m.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < st.m.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((i, j)) = best else { break };
        st.swap(top, i);
        let j = if j == top { i } else { j };
        st.swap(top + 1, j);
        if st.m.get(top, top + 1).is_negative() {
            st.negate(top + 1);
        }
        let p = st.m.get(top, top + 1).clone();
        let mut clean = true;
        for t in top + 2..n {
            // M[top][t] += c·M[top][top+1] via index t += c·index (top+1)
            let q = st.m.get(top, t).div_floor(&p);
            if !q.is_zero() {
                st.add(t, top + 1, &-q);
            }
            // M[top+1][t] += c·M[top+1][top] = -c·p via index t += c·index top
            let q = st.m.get(top + 1, t).div_floor(&p);
            if !q.is_zero() {
                st.add(t, top, &q);
            }
            if !st.m.get(top, t).is_zero() || !st.m.get(top + 1, t).is_zero() {
                clean = false;
            }
        }
        if clean {
            divisors.push(p);
            top += 2;
        }
    }
    let rank = 2 * divisors.len();
    let mut b = IntMatrix::zeros(rank, n);
    for (blk, e) in divisors.iter().enumerate() {
        for c in 0..n {
            b.set(2 * blk, c, e * st.k.get(2 * blk, c));
            b.set(2 * blk + 1, c, st.k.get(2 * blk + 1, c).clone());
        }
    }
    debug_assert_eq!(IntMatrix::gram(&b, &symplectic_matrix_int(divisors.len())).unwrap(), *a);
    Ok(b)
}
