//! Alexander's corner labelling and matrix.
//!
//! At each crossing the two corners on the left of the oriented over-strand
//! are dotted: the one before the crossing carries `t`, the one after carries
//! `-t`. On the right of the over-strand the corner before carries `-1` and
//! the corner after carries `1`. Corner `k` lies between slots `k` and
//! `k + 1`.

use num_traits::Signed;
use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::poly::{normalize_reduced, poly_det, LaurentPoly, PolyMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CornerValue {
    T,
    MinusT,
    One,
    MinusOne,
}

impl CornerValue {
    pub fn to_poly(self) -> LaurentPoly {
        match self {
            CornerValue::T => LaurentPoly::t(),
            CornerValue::MinusT => LaurentPoly::monomial(-1, 1),
            CornerValue::One => LaurentPoly::one(),
            CornerValue::MinusOne => LaurentPoly::constant(-1),
        }
    }

    pub fn is_dotted(self) -> bool {
        matches!(self, CornerValue::T | CornerValue::MinusT)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Corner {
    pub face: usize,
    pub value: CornerValue,
    pub dotted: bool,
}

/// Four corners per crossing, indexed by corner number.
pub type CornerTable = Vec<[Corner; 4]>;

use CornerValue::{MinusOne, MinusT, One, T};

/// Values by corner number when the over-strand enters at slot 1.
const OVER_FROM_SLOT_1: [CornerValue; 4] = [T, MinusOne, One, MinusT];
/// Values by corner number when the over-strand enters at slot 3.
const OVER_FROM_SLOT_3: [CornerValue; 4] = [One, MinusT, T, MinusOne];

pub fn corner_values(over_in: usize) -> [CornerValue; 4] {
    if over_in == 1 {
        OVER_FROM_SLOT_1
    } else {
        OVER_FROM_SLOT_3
    }
}

pub fn corner_labels(d: &Diagram) -> CornerTable {
    (0..d.num_crossings())
        .map(|v| {
            let rule = corner_values(d.crossings()[v].over_in);
            std::array::from_fn(|k| Corner { face: d.corner_face(v, k), value: rule[k], dotted: rule[k].is_dotted() })
        })
        .collect()
}

/// Rows are the faces other than `p` and `q`, columns the crossings.
pub fn alexander_matrix(d: &Diagram, p: usize, q: usize) -> Result<PolyMatrix> {
    if p == q || !d.faces_adjacent(p, q) {
        return Err(Error::NotAdjacent(p, q));
    }
    let table = corner_labels(d);
    let rows: Vec<usize> = (0..d.faces().len()).filter(|&f| f != p && f != q).collect();
    let mut m = vec![vec![LaurentPoly::zero(); d.num_crossings()]; rows.len()];
    for (v, corners) in table.iter().enumerate() {
        for c in corners {
            if let Some(i) = rows.iter().position(|&f| f == c.face) {
                m[i][v] = &m[i][v] + &c.value.to_poly();
            }
        }
    }
    Ok(m)
}

/// Normalized determinant for one choice of adjacent faces.
pub fn reduced_alexander_with(d: &Diagram, p: usize, q: usize) -> Result<LaurentPoly> {
    if d.num_crossings() == 0 {
        return Ok(LaurentPoly::one());
    }
    let m = alexander_matrix(d, p, q)?;
    Ok(normalize_reduced(&poly_det(&m)?))
}

/// The adjacent face pair used by [`reduced_alexander`].
pub fn default_face_pair(d: &Diagram) -> Option<(usize, usize)> {
    d.adjacent_face_pairs().into_iter().next()
}

pub fn reduced_alexander(d: &Diagram) -> LaurentPoly {
    match default_face_pair(d) {
        None => LaurentPoly::one(),
        Some((p, q)) => reduced_alexander_with(d, p, q).expect("adjacent faces give a square matrix"),
    }
}

/// `|a_i| = |a_{n-i}|` for a normalized polynomial of degree `n`.
pub fn has_symmetric_coefficients(p: &LaurentPoly) -> bool {
    let (Some(lo), Some(hi)) = (p.min_exp(), p.max_exp()) else {
        return true;
    };
    (lo..=hi).all(|i| p.coeff(i).abs() == p.coeff(lo + hi - i).abs())
}
