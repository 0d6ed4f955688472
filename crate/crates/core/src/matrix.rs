//! Dense matrices over a ring presentation. Entries are stored as normal
//! forms modulo the defining ideal; matrices act on column vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::ring::{Polynomial, Ring};

#[derive(Clone)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    /// Row-major `RxC [a, b; c, d]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        Self::scalar(ring, n, &ring.one())
    }

    pub fn scalar(ring: &Ring, n: usize, c: &Polynomial) -> Self {
        let mut m = Self::zeros(ring, n, n);
        let c = ring.reduce(c);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Self::from_row_major(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_row_major(ring: &Ring, rows: usize, cols: usize, data: Vec<Polynomial>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidInput("matrix data has wrong length".into()));
        }
        if data.iter().any(|p| p.ring() != ring.cover()) {
            return Err(Error::RingMismatch);
        }
        let data = data.iter().map(|p| ring.reduce(p)).collect();
        Ok(Matrix { ring: ring.clone(), rows, cols, data })
    }

    pub fn from_columns(ring: &Ring, rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    pub fn parse_rows(ring: &Ring, rows: &[Vec<&str>]) -> Result<Self> {
        let parsed: Result<Vec<Vec<Polynomial>>> =
            rows.iter().map(|r| r.iter().map(|s| ring.parse(s)).collect()).collect();
        Self::from_rows(ring, parsed?)
    }

    /// Inverse of `Display`: `RxC [a, b; c, d]`, entries reduced into `ring`.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("matrix `{text}`: {why}"));
        let (dims, rest) = text.trim().split_once('[').ok_or_else(|| bad("missing `[`"))?;
        let body = rest.strip_suffix(']').ok_or_else(|| bad("missing `]`"))?;
        let (r, c) = dims.trim().split_once('x').ok_or_else(|| bad("expected RxC"))?;
        let rows: usize = r.trim().parse().map_err(|_| bad("bad row count"))?;
        let cols: usize = c.trim().parse().map_err(|_| bad("bad column count"))?;
        if rows == 0 || cols == 0 {
            if body.chars().any(|ch| ch != ';' && !ch.is_whitespace()) {
                return Err(bad("entries given for an empty shape"));
            }
            return Ok(Self::zeros(ring, rows, cols));
        }
        let mut data = Vec::with_capacity(rows * cols);
        let lines: Vec<&str> = body.split(';').collect();
        if lines.len() != rows {
            return Err(bad("row count does not match"));
        }
        for line in lines {
            let entries: Vec<&str> = line.split(',').collect();
            if entries.len() != cols {
                return Err(bad("column count does not match"));
            }
            for e in entries {
                data.push(ring.parse(e.trim())?);
            }
        }
        Self::from_row_major(ring, rows, cols, data)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.data[i * self.cols + j] = self.ring.reduce(&p);
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.data.iter()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    fn check(&self, other: &Matrix) -> Result<()> {
        self.ring.check_same(&other.ring)
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check(other)?;
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn apply(&self, v: &[Polynomial]) -> Vector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self.get(i, k).is_zero() {
                        acc = acc.add(&self.get(i, k).mul(x));
                    }
                }
                self.ring.reduce(&acc)
            })
            .collect()
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Result<Matrix> {
        self.check(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidInput("matrix shapes differ".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.reduce(&f(a, b))).collect();
        Ok(Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.try_add(other).expect("matrix sum")
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.try_sub(other).expect("matrix difference")
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Matrix {
        let data = self.data.iter().map(|p| self.ring.reduce(&f(p))).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.map(|p| p.neg())
    }

    pub fn scale(&self, c: &Polynomial) -> Matrix {
        self.map(|p| p.mul(c))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    /// Equality as matrices over the ring.
    pub fn same(&self, other: &Matrix) -> bool {
        self.ring.same(&other.ring)
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }

    /// Reinterprets the entries over another presentation with the same
    /// cover (e.g. reduction mod `w`, or lifting back).
    pub fn over(&self, ring: &Ring) -> Result<Matrix> {
        if ring.cover() != self.ring.cover() {
            return Err(Error::RingMismatch);
        }
        Matrix::from_row_major(ring, self.rows, self.cols, self.data.clone())
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check(other)?;
        if self.rows != other.rows {
            return Err(Error::InvalidInput("hstack: row counts differ".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Ok(Matrix::from_columns(&self.ring, self.rows, &cols))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        Ok(self.transpose().hstack(&other.transpose())?.transpose())
    }

    /// `[a 0; 0 b]`
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        Matrix::blocks(&self.ring, &[&[Some(self), None], &[None, Some(other)]], &[self.rows, other.rows], &[self.cols, other.cols])
    }

    /// Assembles a block matrix; `None` blocks are zero of the given sizes.
    pub fn blocks(ring: &Ring, grid: &[&[Option<&Matrix>]], row_sizes: &[usize], col_sizes: &[usize]) -> Matrix {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut r0 = 0;
        for (bi, brow) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, blk) in brow.iter().enumerate() {
                if let Some(b) = blk {
                    assert_eq!((b.rows, b.cols), (row_sizes[bi], col_sizes[bj]), "block size");
                    for i in 0..b.rows {
                        for j in 0..b.cols {
                            out.data[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                        }
                    }
                }
                c0 += col_sizes[bj];
            }
            r0 += row_sizes[bi];
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.data[a * cols.len() + b] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Position of an entry that is a nonzero constant.
    pub fn find_unit(&self) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j).is_unit_constant())
    }

    /// Flattens column-major into one vector.
    pub fn flatten(&self) -> Vector {
        (0..self.cols).flat_map(|j| self.column(j)).collect()
    }

    pub fn unflatten(ring: &Ring, rows: usize, cols: usize, v: &[Polynomial]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        let columns: Vec<Vector> = v.chunks(rows.max(1)).take(cols).map(|c| c.to_vec()).collect();
        if rows == 0 {
            return Matrix::zeros(ring, 0, cols);
        }
        Matrix::from_columns(ring, rows, &columns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, PolyRing, RingPresentation};

    #[test]
    fn display_round_trips() {
        let r = crate::ring::RingPresentation::polynomial(&crate::ring::PolyRing::new(crate::ring::Field::Rational, &["x", "y"]));
        for text in ["2x2 [x, 1/2*y; 0, -x^2 + y]", "0x3 []", "2x0 [; ]", "0x0 []"] {
            let m = Matrix::parse(&r, text).unwrap();
            assert_eq!(m.to_string(), text);
        }
        assert!(Matrix::parse(&r, "2x2 [x, y]").is_err());
        assert!(Matrix::parse(&r, "1x1 x").is_err());
    }

    #[test]
    fn adjugate_identity() {
        let r = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y", "z"]));
        let phi = Matrix::parse_rows(&r, &[vec!["x", "y"], vec!["-z", "x"]]).unwrap();
        let adj = Matrix::parse_rows(&r, &[vec!["x", "-y"], vec!["z", "x"]]).unwrap();
        let w = r.parse("x^2 + y*z").unwrap();
        assert!(phi.mul(&adj).same(&Matrix::scalar(&r, 2, &w)));
        assert_eq!(phi.to_string(), "2x2 [x, y; -z, x]");
    }

    #[test]
    fn flatten_roundtrip() {
        let r = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x"]));
        let m = Matrix::parse_rows(&r, &[vec!["1", "x"], vec!["x^2", "0"], vec!["2", "3"]]).unwrap();
        assert!(Matrix::unflatten(&r, 3, 2, &m.flatten()).same(&m));
    }
}
