//! JSON documents exchanged with the command line.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ModMatrix;
use crate::oracle::CanonicalSubgroup;
use crate::ring::Modulus;
use crate::symplectic::{validate_check_matrix, CheckMatrix, CodeSymplectic};
use crate::tnkd::TnkdFactors;

/// `{"d", "n", "k", "columns"}` with `n − k` columns of length `2n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckMatrixDoc {
    pub d: u64,
    pub n: usize,
    pub k: usize,
    pub columns: Vec<Vec<i64>>,
}

impl CheckMatrixDoc {
    pub fn to_check_matrix(&self) -> Result<CheckMatrix> {
        let d = Modulus::new(self.d)?;
        if self.columns.iter().any(|c| c.len() != 2 * self.n) {
            return Err(Error::ShapeMismatch(format!(
                "every column must have 2n = {} entries",
                2 * self.n
            )));
        }
        let cols: Vec<Vec<u64>> = self
            .columns
            .iter()
            .map(|c| c.iter().map(|&x| d.reduce(x)).collect())
            .collect();
        let h = ModMatrix::from_columns(&cols, 2 * self.n, d)?;
        validate_check_matrix(&h, self.n, self.k)
    }

    pub fn from_check_matrix(h: &CheckMatrix) -> Self {
        CheckMatrixDoc {
            d: h.modulus().get(),
            n: h.n(),
            k: h.k(),
            columns: to_signed(&h.columns()),
        }
    }
}

/// `{"d", "n", "rows"}` for a `2n×2n` matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub d: u64,
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl MatrixDoc {
    pub fn to_matrix(&self) -> Result<ModMatrix> {
        let d = Modulus::new(self.d)?;
        let dim = 2 * self.n;
        if self.rows.len() != dim || self.rows.iter().any(|r| r.len() != dim) {
            return Err(Error::ShapeMismatch(format!("matrix must be {dim}x{dim}")));
        }
        ModMatrix::from_rows(&self.rows, d)
    }

    pub fn from_matrix(m: &ModMatrix) -> Self {
        MatrixDoc {
            d: m.modulus().get(),
            n: m.rows() / 2,
            rows: to_signed(&m.to_rows()),
        }
    }
}

fn to_signed(v: &[Vec<u64>]) -> Vec<Vec<i64>> {
    v.iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect()
}

/// Half-open column range `[start, end)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ColumnRange {
    pub start: usize,
    pub end: usize,
}

impl From<Range<usize>> for ColumnRange {
    fn from(r: Range<usize>) -> Self {
        ColumnRange {
            start: r.start,
            end: r.end,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BlockRanges {
    pub e: ColumnRange,
    pub l_x: ColumnRange,
    pub h: ColumnRange,
    pub l_z: ColumnRange,
}

/// A symplectic extension of a check matrix with its column layout.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CodeSymplecticDoc {
    pub d: u64,
    pub n: usize,
    pub k: usize,
    pub rows: Vec<Vec<i64>>,
    pub blocks: BlockRanges,
}

impl CodeSymplecticDoc {
    pub fn from_code(code: &CodeSymplectic) -> Self {
        CodeSymplecticDoc {
            d: code.matrix().modulus().get(),
            n: code.n(),
            k: code.k(),
            rows: to_signed(&code.matrix().to_rows()),
            blocks: BlockRanges {
                e: code.e_range().into(),
                l_x: code.l_x_range().into(),
                h: code.h_range().into(),
                l_z: code.l_z_range().into(),
            },
        }
    }

    pub fn matrix_doc(&self) -> MatrixDoc {
        MatrixDoc {
            d: self.d,
            n: self.n,
            rows: self.rows.clone(),
        }
    }
}

/// The four factors and their free blocks.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FactorsDoc {
    pub d: u64,
    pub n: usize,
    pub k: usize,
    pub m_t: Vec<Vec<i64>>,
    pub m_e: Vec<Vec<i64>>,
    pub m_s: Vec<Vec<i64>>,
    pub m_l: Vec<Vec<i64>>,
    pub k_s: Vec<Vec<i64>>,
    #[serde(rename = "N")]
    pub n_block: Vec<Vec<i64>>,
    #[serde(rename = "L")]
    pub l_block: Vec<Vec<i64>>,
    pub k_a: Vec<Vec<i64>>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
}

impl FactorsDoc {
    pub fn from_factors(f: &TnkdFactors) -> Self {
        let rows = |m: &ModMatrix| to_signed(&m.to_rows());
        FactorsDoc {
            d: f.modulus().get(),
            n: f.n(),
            k: f.k(),
            m_t: rows(&f.m_t()),
            m_e: rows(&f.m_e()),
            m_s: rows(&f.m_s()),
            m_l: rows(&f.m_l()),
            k_s: rows(f.k_s()),
            n_block: rows(f.n_block()),
            l_block: rows(f.l_block()),
            k_a: rows(f.k_a()),
            a: rows(f.a()),
        }
    }
}

/// One line of a code catalog.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CatalogLine {
    pub d: u64,
    pub n: usize,
    pub k: usize,
    pub generators: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<u64>>>,
}

impl CatalogLine {
    pub fn from_subgroup(s: &CanonicalSubgroup, with_elements: bool) -> Self {
        CatalogLine {
            d: s.d,
            n: s.n,
            k: s.k,
            generators: s.generators.clone(),
            elements: with_elements.then(|| s.elements.clone()),
        }
    }
}
