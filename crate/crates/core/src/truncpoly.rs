//! Arithmetic of truncated polynomial rings `k[e]/(e^(m+1))` and of matrices
//! over them, including the multiplicative block-matrix embedding into plain
//! rational matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::Rational;

/// Element of `k[e]/(e^(m+1))`, stored as the coefficient list
/// `c0 + c1 e + ... + cm e^m` with exactly `m + 1` coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncPoly {
    coeffs: Vec<Rational>,
}

impl TruncPoly {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid(
                "truncated polynomial needs m + 1 >= 1 coefficients".into(),
            ));
        }
        Ok(TruncPoly { coeffs })
    }

    pub fn zero(m: usize) -> Self {
        TruncPoly {
            coeffs: vec![Rational::zero(); m + 1],
        }
    }

    pub fn one(m: usize) -> Self {
        let mut p = TruncPoly::zero(m);
        p.coeffs[0] = Rational::one();
        p
    }

    pub fn constant(m: usize, c: Rational) -> Self {
        let mut p = TruncPoly::zero(m);
        p.coeffs[0] = c;
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        TruncPoly {
            coeffs: coeffs.iter().map(|&c| Rational::from_int(c)).collect(),
        }
    }

    pub fn multiplicity(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// True iff the element is a unit, i.e. its constant term is non-zero.
    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    fn check_same_multiplicity(&self, other: &TruncPoly) -> Result<()> {
        if self.multiplicity() != other.multiplicity() {
            return Err(Error::Multiplicity {
                expected: self.multiplicity(),
                found: other.multiplicity(),
            });
        }
        Ok(())
    }

    /// Product in `k[e]/(e^(m+1))`: coefficients convolve and terms of
    /// exponent greater than `m` are discarded.
    pub fn mul(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.check_same_multiplicity(other)?;
        let m = self.multiplicity();
        let mut out = TruncPoly::zero(m);
        for i in 0..=m {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(m - i) {
                let t = &self.coeffs[i] * &other.coeffs[j];
                out.coeffs[i + j] += &t;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.check_same_multiplicity(other)?;
        Ok(TruncPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn neg(&self) -> TruncPoly {
        TruncPoly {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> TruncPoly {
        TruncPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Inverse of a unit: solve layer by layer against the constant term.
    pub fn inverse(&self) -> Result<TruncPoly> {
        if !self.is_unit() {
            return Err(Error::Singular(
                "truncated polynomial with zero constant term".into(),
            ));
        }
        let m = self.multiplicity();
        let c0_inv = self.coeffs[0].recip()?;
        let mut inv = TruncPoly::zero(m);
        inv.coeffs[0] = c0_inv.clone();
        for k in 1..=m {
            // coefficient of e^k in self * inv must vanish
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &(&self.coeffs[i] * &inv.coeffs[k - i]);
            }
            inv.coeffs[k] = -&acc * &c0_inv;
        }
        Ok(inv)
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(i == 0 && self.is_zero()) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*e")?,
                _ => write!(f, "{c}*e^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Matrix over `k[e]/(e^(m+1))`, stored as `m + 1` rational layer matrices.
/// The layer view and the entry view agree by construction.
#[derive(Clone, PartialEq, Eq)]
pub struct AmMatrix {
    rows: usize,
    cols: usize,
    layers: Vec<QMatrix>,
}

impl AmMatrix {
    pub fn from_layers(layers: Vec<QMatrix>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::Invalid("need at least the layer-0 matrix".into()));
        }
        let rows = layers[0].rows();
        let cols = layers[0].cols();
        if layers.iter().any(|l| l.rows() != rows || l.cols() != cols) {
            return Err(Error::Dimension("layers of differing shapes".into()));
        }
        Ok(AmMatrix { rows, cols, layers })
    }

    pub fn zero(m: usize, rows: usize, cols: usize) -> Self {
        AmMatrix {
            rows,
            cols,
            layers: vec![QMatrix::zeros(rows, cols); m + 1],
        }
    }

    pub fn identity(m: usize, n: usize) -> Self {
        let mut layers = vec![QMatrix::zeros(n, n); m + 1];
        layers[0] = QMatrix::identity(n);
        AmMatrix {
            rows: n,
            cols: n,
            layers,
        }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<TruncPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension("entry grid of wrong size".into()));
        }
        let m = entries[0].multiplicity();
        if entries.iter().any(|p| p.multiplicity() != m) {
            return Err(Error::Multiplicity {
                expected: m,
                found: entries.iter().map(TruncPoly::multiplicity).max().unwrap(),
            });
        }
        let mut layers = vec![QMatrix::zeros(rows, cols); m + 1];
        for r in 0..rows {
            for c in 0..cols {
                for (i, coeff) in entries[r * cols + c].coeffs().iter().enumerate() {
                    layers[i][(r, c)] = coeff.clone();
                }
            }
        }
        Ok(AmMatrix { rows, cols, layers })
    }

    pub fn multiplicity(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn layer(&self, i: usize) -> &QMatrix {
        &self.layers[i]
    }

    pub fn layers(&self) -> &[QMatrix] {
        &self.layers
    }

    pub fn entry(&self, r: usize, c: usize) -> TruncPoly {
        TruncPoly {
            coeffs: self.layers.iter().map(|l| l[(r, c)].clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.layers.iter().all(QMatrix::is_zero)
    }

    fn check_same_multiplicity(&self, other: &AmMatrix) -> Result<()> {
        if self.multiplicity() != other.multiplicity() {
            return Err(Error::Multiplicity {
                expected: self.multiplicity(),
                found: other.multiplicity(),
            });
        }
        Ok(())
    }

    /// Matrix product over the truncated ring: layers convolve.
    pub fn mul(&self, other: &AmMatrix) -> Result<AmMatrix> {
        self.check_same_multiplicity(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.multiplicity();
        let mut layers = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut layer = QMatrix::zeros(self.rows, other.cols);
            for i in 0..=k {
                layer = layer.add(&self.layers[i].mul(&other.layers[k - i])?)?;
            }
            layers.push(layer);
        }
        Ok(AmMatrix {
            rows: self.rows,
            cols: other.cols,
            layers,
        })
    }

    pub fn add(&self, other: &AmMatrix) -> Result<AmMatrix> {
        self.check_same_multiplicity(other)?;
        let layers = self
            .layers
            .iter()
            .zip(&other.layers)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(AmMatrix {
            rows: self.rows,
            cols: self.cols,
            layers,
        })
    }

    /// The multiplicative embedding into rational matrices: block `(i, j)`
    /// holds layer `j - i` for `j >= i` and zero below the diagonal, so a
    /// 1x1 matrix `a + b e` becomes `[[a, b], [0, a]]`.
    pub fn embed(&self) -> QMatrix {
        let m = self.multiplicity();
        let mut out = QMatrix::zeros((m + 1) * self.rows, (m + 1) * self.cols);
        for bi in 0..=m {
            for bj in bi..=m {
                let layer = &self.layers[bj - bi];
                for r in 0..self.rows {
                    for c in 0..self.cols {
                        out[(bi * self.rows + r, bj * self.cols + c)] = layer[(r, c)].clone();
                    }
                }
            }
        }
        out
    }

    /// True iff the square matrix is invertible over the truncated ring,
    /// which happens exactly when its layer-0 matrix is invertible over the
    /// rationals.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.layers[0].rank() == self.rows
    }

    /// Exact inverse over the truncated ring.
    pub fn inverse(&self) -> Result<AmMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let m = self.multiplicity();
        let g0_inv = self.layers[0].inverse()?;
        let g0_inv_am = {
            let mut layers = vec![QMatrix::zeros(self.rows, self.rows); m + 1];
            layers[0] = g0_inv;
            AmMatrix {
                rows: self.rows,
                cols: self.rows,
                layers,
            }
        };
        // g0^-1 g = I + X with X supported in layers >= 1, so the inverse of
        // I + X is the finite alternating series sum_j (-X)^j.
        let mut x = g0_inv_am.mul(self)?;
        x.layers[0] = QMatrix::zeros(self.rows, self.rows);
        let mut inv = AmMatrix::identity(m, self.rows);
        let mut term = AmMatrix::identity(m, self.rows);
        for j in 1..=m {
            term = term.mul(&x)?;
            if term.is_zero() {
                break;
            }
            let signed = if j % 2 == 1 {
                term.scale_all(&Rational::from_int(-1))
            } else {
                term.clone()
            };
            inv = inv.add(&signed)?;
        }
        inv.mul(&g0_inv_am)
    }

    fn scale_all(&self, c: &Rational) -> AmMatrix {
        AmMatrix {
            rows: self.rows,
            cols: self.cols,
            layers: self.layers.iter().map(|l| l.scale(c)).collect(),
        }
    }

    /// Scale layer `i` by `t^i`; this is the grading action of the
    /// multiplicative group on matrices over the truncated ring.
    pub fn scale_layerwise(&self, t: &Rational) -> AmMatrix {
        let mut layers = Vec::with_capacity(self.layers.len());
        let mut power = Rational::one();
        for (i, layer) in self.layers.iter().enumerate() {
            if i > 0 {
                power *= t;
            }
            layers.push(layer.scale(&power));
        }
        AmMatrix {
            rows: self.rows,
            cols: self.cols,
            layers,
        }
    }

    /// Keep only layer 0 (multiplicity drops to zero).
    pub fn truncate_to_classical(&self) -> AmMatrix {
        AmMatrix {
            rows: self.rows,
            cols: self.cols,
            layers: vec![self.layers[0].clone()],
        }
    }

    /// View a multiplicity-0 matrix at multiplicity `m` with zero higher
    /// layers.
    pub fn extend_to_multiplicity(&self, m: usize) -> Result<AmMatrix> {
        if self.multiplicity() != 0 {
            return Err(Error::Multiplicity {
                expected: 0,
                found: self.multiplicity(),
            });
        }
        let mut layers = vec![QMatrix::zeros(self.rows, self.cols); m + 1];
        layers[0] = self.layers[0].clone();
        Ok(AmMatrix {
            rows: self.rows,
            cols: self.cols,
            layers,
        })
    }
}

impl fmt::Debug for AmMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.entry(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
