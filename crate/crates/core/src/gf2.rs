//! Dense linear algebra over GF(2).
//!
//! Rows are packed into `u64` words so that row additions are word-parallel.
//! Besides rank and affine-span solving this module carries the two
//! factorizations of symmetric matrices used to turn a crossing-parity
//! matrix into ribbon-pass vectors:
//!
//! - [`factor_even`]: `A = Yᵀ H Y` with `H` the hyperbolic form, for even `A`;
//! - [`factor_odd`]: `A = Yᵀ Y`, for odd `A`.
//!
//! In both cases `Y` has exactly `rank(A)` rows.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; words_for(len)], len }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Standard inner product `Σ aᵢbᵢ`.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense `rows × cols` matrix over GF(2), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

/// Diagonal classification of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2SymmetryClass {
    pub is_even: bool,
    pub is_odd: bool,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { rows: vec![BitVec::zeros(cols); rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("row of length {} in matrix with {cols} columns", r.len())));
        }
        Ok(BitMatrix { rows, cols })
    }

    /// Builds from nested 0/1 values; panics on ragged input.
    pub fn from_u8(data: &[&[u8]]) -> Self {
        let cols = data.first().map_or(0, |r| r.len());
        let rows = data
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                BitVec::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>())
            })
            .collect();
        BitMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn row_vecs(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows());
        for r in 0..self.rows() {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for r in 0..self.rows() {
            for c in self.rows[r].ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols,
                other.rows(),
                other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows(), other.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for k in row.ones() {
                out.rows[r].xor_assign(&other.rows[k]);
            }
        }
        Ok(out)
    }

    /// `Yᵀ F Y` for a `d × d` form `F`.
    pub fn gram(y: &BitMatrix, form: &BitMatrix) -> Result<BitMatrix> {
        y.transpose().mul(&form.mul(y)?)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows() == self.cols
            && (0..self.rows()).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn symmetry_class(&self) -> Gf2SymmetryClass {
        let n = self.rows().min(self.cols);
        let any_one = (0..n).any(|i| self.get(i, i));
        Gf2SymmetryClass { is_even: !any_one, is_odd: any_one }
    }

    fn check_symmetric(&self) -> Result<()> {
        if !self.is_symmetric() {
            return Err(Error::Precondition("matrix is not symmetric".into()));
        }
        Ok(())
    }

    /// Appends zero rows up to `rows` rows.
    pub fn pad_rows(&self, rows: usize) -> BitMatrix {
        let mut out = self.clone();
        while out.rows.len() < rows {
            out.rows.push(BitVec::zeros(self.cols));
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gf2 {} {}", self.rows(), self.cols)?;
        for r in &self.rows {
            let line: Vec<&str> = (0..self.cols).map(|c| if r.get(c) { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty matrix file"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 || h[0] != "gf2" {
            return Err(parse_err(ln, "expected `gf2 <rows> <cols>` header"));
        }
        let rows: usize = h[1].parse().map_err(|_| parse_err(ln, "invalid row count"))?;
        let cols: usize = h[2].parse().map_err(|_| parse_err(ln, "invalid column count"))?;
        let mut m = BitMatrix::zeros(rows, cols);
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
                match *e {
                    "0" => {}
                    "1" => m.set(r, c, true),
                    _ => return Err(parse_err(ln, format!("entry `{e}` is not 0 or 1"))),
                }
            }
            r += 1;
        }
        if r != rows {
            return Err(parse_err(0, format!("declared {rows} rows, found {r}")));
        }
        Ok(m)
    }
}

/// Rank over GF(2) by Gaussian elimination.
pub fn rank_gf2(a: &BitMatrix) -> usize {
    let mut rows: Vec<BitVec> = a.rows.clone();
    let mut rank = 0;
    for c in 0..a.cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        rank += 1;
    }
    rank
}

/// Block-diagonal `2g × 2g` matrix with `g` blocks `[[0,1],[1,0]]`.
pub fn hyperbolic_matrix_gf2(g: usize) -> BitMatrix {
    let mut h = BitMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        h.set(2 * i, 2 * i + 1, true);
        h.set(2 * i + 1, 2 * i, true);
    }
    h
}

/// `R ← R + uᵀv + vᵀu` (only the `u ⊗ v` terms; caller adds symmetric part).
fn add_outer(r: &mut [BitVec], u: &BitVec, v: &BitVec) {
    for s in u.ones() {
        r[s].xor_assign(v);
    }
}

/// Factors an even symmetric matrix as `Yᵀ H Y` with `Y` of `rank(A)` rows.
///
/// Symplectic Gram–Schmidt: take the lexicographically first `(i, j)` with
/// `R[i][j] = 1`, emit rows `R[i]` and `R[j]` as a hyperbolic pair and
/// subtract their contribution, which zeroes rows `i` and `j` and drops the
/// rank by exactly two.
pub fn factor_even(a: &BitMatrix) -> Result<BitMatrix> {
    a.check_symmetric()?;
    if !a.symmetry_class().is_even {
        return Err(Error::Precondition("matrix is not even (diagonal has a 1)".into()));
    }
    let n = a.cols;
    let mut r = a.rows.clone();
    let mut out = Vec::new();
    loop {
        let pivot = (0..n).find_map(|i| r[i].first_one().map(|j| (i, j)));
        let Some((i, j)) = pivot else { break };
        // First nonzero row i; its lowest one sits at j > i since everything
        // before row i has already been cleared and the diagonal is zero.
        let u = r[i].clone();
        let v = r[j].clone();
        add_outer(&mut r, &u, &v);
        add_outer(&mut r, &v, &u);
        // (v, u) order makes the hyperbolic form factor as the identity.
        out.push(v);
        out.push(u);
    }
    BitMatrix::from_rows(out, n)
}

/// Factors an odd symmetric matrix as `Yᵀ Y` with `Y` of `rank(A)` rows.
///
/// Diagonal pivots are peeled off as rank-one squares. Once the residual is
/// even (and stays even), each hyperbolic pair `(u, v)` is merged with the
/// last square row `a` using `aaᵀ + uvᵀ + vuᵀ = Σ xxᵀ` over
/// `x ∈ {a+u, a+v, a+u+v}`.
pub fn factor_odd(a: &BitMatrix) -> Result<BitMatrix> {
    a.check_symmetric()?;
    if !a.symmetry_class().is_odd {
        return Err(Error::Precondition("matrix is not odd (diagonal is zero)".into()));
    }
    let n = a.cols;
    let mut r = a.rows.clone();
    let mut out: Vec<BitVec> = Vec::new();
    while let Some(i) = (0..n).find(|&i| r[i].get(i)) {
        let y = r[i].clone();
        add_outer(&mut r, &y, &y);
        out.push(y);
    }
    loop {
        let pivot = (0..n).find_map(|i| r[i].first_one().map(|j| (i, j)));
        let Some((i, j)) = pivot else { break };
        let u = r[i].clone();
        let v = r[j].clone();
        add_outer(&mut r, &u, &v);
        add_outer(&mut r, &v, &u);
        let a_row = out.pop().expect("odd input yields a square row before any hyperbolic pair");
        let mut au = a_row.clone();
        au.xor_assign(&u);
        let mut av = a_row.clone();
        av.xor_assign(&v);
        let mut auv = au.clone();
        auv.xor_assign(&v);
        out.push(au);
        out.push(av);
        out.push(auv);
    }
    BitMatrix::from_rows(out, n)
}

/// Solves `base + Σ cᵢ·generatorᵢ = target` for `c`, if possible.
pub fn in_affine_span(target: &BitVec, base: &BitVec, generators: &[BitVec]) -> Result<Option<BitVec>> {
    let n = target.len();
    if base.len() != n || generators.iter().any(|g| g.len() != n) {
        return Err(Error::Dimension("vectors in affine span query differ in length".into()));
    }
    let k = generators.len();
    // Row r of the system: Σ_i c_i g_i[r] = target[r] + base[r]; last column is the rhs.
    let mut rows: Vec<BitVec> = (0..n)
        .map(|r| {
            let mut row = BitVec::zeros(k + 1);
            for (i, g) in generators.iter().enumerate() {
                if g.get(r) {
                    row.set(i, true);
                }
            }
            row.set(k, target.get(r) ^ base.get(r));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..k {
        let Some(p) = (rank..n).find(|&r| rows[r].get(c)) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r.get(k)) {
        return Ok(None);
    }
    let mut coeffs = BitVec::zeros(k);
    for (r, &c) in pivots.iter().enumerate() {
        if rows[r].get(k) {
            coeffs.set(c, true);
        }
    }
    Ok(Some(coeffs))
}
