use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::OpError;
use crate::linalg::{select, CMatrix};
use crate::series;

/// A column counts as captured when its coefficient mass beyond the
/// truncation is below this fraction of its norm (or of one).
pub const TAIL_TOL: f64 = 1e-13;

/// Truncation of an operator on `H²_N = H² ⊗ ℂ^N` to the first `dim`
/// monomials of each of the `copies` summands (copy-major layout).
///
/// Within each copy the first `trust_band` columns coincide with the
/// columns of the infinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncOp {
    tag: String,
    dim: usize,
    copies: usize,
    trust_band: usize,
    matrix: CMatrix,
}

impl TruncOp {
    pub fn new(tag: &str, dim: usize, copies: usize, trust_band: usize, matrix: CMatrix) -> Result<Self, OpError> {
        let total = dim * copies;
        if matrix.nrows() != total || matrix.ncols() != total {
            return Err(OpError::Shape { expected: total, rows: matrix.nrows(), cols: matrix.ncols() });
        }
        if trust_band > dim {
            return Err(OpError::InvalidArgument(format!("trust band {trust_band} exceeds dimension {dim}")));
        }
        Ok(Self::from_parts(tag, dim, copies, trust_band, matrix))
    }

    pub(crate) fn from_parts(tag: &str, dim: usize, copies: usize, trust_band: usize, matrix: CMatrix) -> Self {
        Self { tag: tag.to_string(), dim, copies, trust_band, matrix }
    }

    /// Builds a single-copy truncation from a column oracle: `column(k, len)`
    /// returns the first `len` coefficients of `Aχ^k`. Columns are evaluated
    /// `pad` entries past the truncation to measure their tails; the trust
    /// band is the longest prefix of captured columns, capped by
    /// `structural_band`.
    pub fn from_columns<F>(tag: &str, dim: usize, structural_band: usize, pad: usize, column: F) -> Self
    where
        F: Fn(usize, usize) -> Vec<Complex64> + Sync,
    {
        let len = dim + pad;
        let cols: Vec<Vec<Complex64>> = (0..dim).into_par_iter().map(|k| column(k, len)).collect();
        let captured = cols
            .iter()
            .position(|c| series::tail_norm(c, dim) > TAIL_TOL * series::norm(c).max(1.0))
            .unwrap_or(dim);
        let matrix = CMatrix::from_fn(dim, dim, |j, k| cols[k].get(j).copied().unwrap_or_default());
        Self::from_parts(tag, dim, 1, captured.min(structural_band), matrix)
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn total_dim(&self) -> usize {
        self.dim * self.copies
    }

    pub fn trust_band(&self) -> usize {
        self.trust_band
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn with_tag(mut self, tag: &str) -> Self {
        self.tag = tag.to_string();
        self
    }

    pub fn with_band(mut self, band: usize) -> Self {
        self.trust_band = band.min(self.dim);
        self
    }

    /// Trusted column indices, copy-major.
    pub fn band_indices(&self) -> Vec<usize> {
        band_indices(self.dim, self.copies, self.trust_band)
    }

    /// All rows, trusted columns.
    pub fn band_block(&self) -> CMatrix {
        let rows: Vec<usize> = (0..self.total_dim()).collect();
        select(&self.matrix, &rows, &self.band_indices())
    }

    /// Trusted rows and columns.
    pub fn band_square(&self) -> CMatrix {
        let idx = self.band_indices();
        select(&self.matrix, &idx, &idx)
    }
}

/// Copy-major indices of the first `band` columns in each copy.
pub fn band_indices(dim: usize, copies: usize, band: usize) -> Vec<usize> {
    (0..copies).flat_map(|c| (0..band).map(move |k| c * dim + k)).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TruncOpRepr {
    tag: String,
    dim: usize,
    copies: usize,
    trust_band: usize,
    /// Row-major little-endian `(re, im)` pairs of `f64`, base64 encoded.
    matrix: String,
}

impl Serialize for TruncOp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.total_dim();
        let mut bytes = Vec::with_capacity(16 * n * n);
        for i in 0..n {
            for j in 0..n {
                let z = self.matrix[(i, j)];
                bytes.extend_from_slice(&z.re.to_le_bytes());
                bytes.extend_from_slice(&z.im.to_le_bytes());
            }
        }
        TruncOpRepr {
            tag: self.tag.clone(),
            dim: self.dim,
            copies: self.copies,
            trust_band: self.trust_band,
            matrix: STANDARD.encode(bytes),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncOp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = TruncOpRepr::deserialize(d)?;
        let bytes = STANDARD.decode(r.matrix.as_bytes()).map_err(D::Error::custom)?;
        let n = r.dim * r.copies;
        if bytes.len() != 16 * n * n {
            return Err(D::Error::custom(format!("matrix payload has {} bytes, expected {}", bytes.len(), 16 * n * n)));
        }
        let val = |k: usize| f64::from_le_bytes(bytes[8 * k..8 * k + 8].try_into().expect("8-byte chunk"));
        let m = CMatrix::from_fn(n, n, |i, j| {
            let k = 2 * (i * n + j);
            Complex64::new(val(k), val(k + 1))
        });
        TruncOp::new(&r.tag, r.dim, r.copies, r.trust_band, m).map_err(D::Error::custom)
    }
}
