//! Exact integer Laurent polynomials in one variable `t` and determinants of
//! matrices over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A Laurent polynomial `sum c_i t^i` with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial<C: Into<BigInt>>(c: C, exp: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Coefficients `c0, c1, ...` of an ordinary polynomial.
    pub fn from_coeffs(cs: &[i64]) -> Self {
        Self::from_terms(cs.iter().enumerate().map(|(i, &c)| (i as i64, c)))
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Span `max_exp - min_exp`; `None` for zero.
    pub fn width(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// True if no negative exponents occur.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// Value at `t = 0` of an ordinary polynomial. Returns `None` when
    /// negative exponents occur.
    pub fn eval_at_zero(&self) -> Option<BigInt> {
        if self.is_polynomial() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn eval_i64(&self, t: i64) -> Option<BigInt> {
        let t = BigInt::from(t);
        let mut acc = BigInt::zero();
        for (&e, c) in &self.coeffs {
            if e < 0 {
                if t.abs() != BigInt::one() {
                    return None;
                }
                acc += c * num_traits::pow(t.clone(), (-e) as usize);
            } else {
                acc += c * num_traits::pow(t.clone(), e as usize);
            }
        }
        Some(acc)
    }

    /// Substitutes `t -> 1/t`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Exact division. Fails when `other` is zero or does not divide `self`
    /// in `Z[t, 1/t]`.
    pub fn exact_div(&self, other: &LaurentPoly) -> Result<LaurentPoly, Error> {
        let (bmin, bmax) = match (other.min_exp(), other.max_exp()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::InexactDivision),
        };
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let amin = self.min_exp().unwrap();
        let mut rem = self.shift(-amin);
        let div = other.shift(-bmin);
        let dlen = bmax - bmin;
        let lead = div.coeff(dlen);
        let mut quot = LaurentPoly::zero();
        while let Some(rmax) = rem.max_exp() {
            if rmax < dlen {
                return Err(Error::InexactDivision);
            }
            let rc = rem.coeff(rmax);
            if !(&rc % &lead).is_zero() {
                return Err(Error::InexactDivision);
            }
            let q = LaurentPoly::monomial(&rc / &lead, rmax - dlen);
            rem = &rem - &(&q * &div);
            quot = &quot + &q;
        }
        Ok(quot.shift(amin - bmin))
    }

    /// Text form `c0 + c1*t + c2*t^2`, lowest exponent first.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{mag}*{var}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.to_text())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

// JSON: sorted array of [exponent, coefficient]. Coefficients that fit in an
// i64 are plain numbers, larger ones are decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (&e, c) in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&(e, v))?,
                None => seq.serialize_element(&(e, c.to_string()))?,
            }
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Int(i64),
    Text(String),
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, CoeffRepr)> = Vec::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in pairs {
            let c = match c {
                CoeffRepr::Int(v) => BigInt::from(v),
                CoeffRepr::Text(s) => {
                    s.parse::<BigInt>().map_err(|_| de::Error::custom(format!("bad coefficient {s:?}")))?
                }
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// A dense square-or-not matrix of Laurent polynomials, row major.
pub type PolyMatrix = Vec<Vec<LaurentPoly>>;

fn check_square(m: &PolyMatrix) -> Result<usize, Error> {
    let k = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != k {
            return Err(Error::Dimension(format!("row {i} has {} entries, expected {k}", row.len())));
        }
    }
    Ok(k)
}

/// Exact determinant by fraction-free (Bareiss) elimination. The empty matrix
/// has determinant 1.
pub fn poly_det(m: &PolyMatrix) -> Result<LaurentPoly, Error> {
    let k = check_square(m)?;
    let mut a = m.clone();
    let mut prev = LaurentPoly::one();
    let mut negate = false;
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !a[r][col].is_zero()) else {
            return Ok(LaurentPoly::zero());
        };
        if p != col {
            a.swap(p, col);
            negate = !negate;
        }
        for i in col + 1..k {
            for j in col + 1..k {
                let num = &(&a[i][j] * &a[col][col]) - &(&a[i][col] * &a[col][j]);
                a[i][j] = num.exact_div(&prev)?;
            }
            a[i][col] = LaurentPoly::zero();
        }
        prev = a[col][col].clone();
    }
    let det = if k == 0 { LaurentPoly::one() } else { a[k - 1][k - 1].clone() };
    Ok(if negate { -det } else { det })
}

/// Multiplies by the unit `±t^m` that turns `p` into an ordinary polynomial
/// with positive constant term. Zero is returned unchanged.
pub fn normalize_reduced(p: &LaurentPoly) -> LaurentPoly {
    let Some(lo) = p.min_exp() else {
        return LaurentPoly::zero();
    };
    let q = p.shift(-lo);
    if q.coeff(0).is_negative() {
        -q
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(cs)
    }

    // Laplace expansion along the first row.
    fn cofactor_det(m: &PolyMatrix) -> LaurentPoly {
        let k = m.len();
        if k == 0 {
            return LaurentPoly::one();
        }
        let mut acc = LaurentPoly::zero();
        for j in 0..k {
            let minor: PolyMatrix = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * &cofactor_det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn empty_determinant_is_one() {
        assert_eq!(poly_det(&vec![]).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn two_by_two() {
        let t = LaurentPoly::t();
        let one = LaurentPoly::one();
        let m = vec![vec![t.clone(), one.clone()], vec![one, t]];
        assert_eq!(poly_det(&m).unwrap(), p(&[-1, 0, 1]));
    }

    #[test]
    fn non_square_rejected() {
        let m = vec![vec![LaurentPoly::one(), LaurentPoly::one()]];
        assert!(matches!(poly_det(&m), Err(Error::Dimension(_))));
    }

    #[test]
    fn needs_row_swap() {
        let z = LaurentPoly::zero();
        let o = LaurentPoly::one();
        let m = vec![vec![z.clone(), o.clone()], vec![o, z]];
        assert_eq!(poly_det(&m).unwrap(), LaurentPoly::constant(-1));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_reduced(&p(&[0, 0, 1, -1])), p(&[1, -1]));
        assert_eq!(normalize_reduced(&p(&[1, -1, 1])), p(&[1, -1, 1]));
        assert_eq!(normalize_reduced(&LaurentPoly::zero()), LaurentPoly::zero());
        let laurent = LaurentPoly::from_terms([(-2, -3), (-1, 1)]);
        assert_eq!(normalize_reduced(&laurent), p(&[3, -1]));
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[1, -1, 1]).to_text(), "1 - t + t^2");
        assert_eq!(p(&[4, -7, 4]).to_text(), "4 - 7*t + 4*t^2");
        assert_eq!(LaurentPoly::zero().to_text(), "0");
        assert_eq!(LaurentPoly::monomial(-2, -1).to_text(), "-2*t^-1");
    }

    #[test]
    fn json_round_trip_and_shape() {
        let q = p(&[1, -3, 1]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[[0,1],[1,-3],[2,1]]");
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        let big = LaurentPoly::monomial(BigInt::from(i64::MAX) * 4, 3);
        let s = serde_json::to_string(&big).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, -1, 1]);
        let b = p(&[2, 0, 3]);
        let prod = (&a * &b).shift(-3);
        assert_eq!(prod.exact_div(&b).unwrap(), a.shift(-3));
        assert!(p(&[1, 1]).exact_div(&p(&[2])).is_err());
        assert!(a.exact_div(&LaurentPoly::zero()).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (prop::collection::vec(-3i64..=3, 0..=4), -2i64..=2).prop_map(|(cs, s)| LaurentPoly::from_coeffs(&cs).shift(s))
    }

    fn arb_matrix() -> impl Strategy<Value = PolyMatrix> {
        (0usize..=5).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(arb_poly(), k), k))
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(m in arb_matrix()) {
            prop_assert_eq!(poly_det(&m).unwrap(), cofactor_det(&m));
        }

        #[test]
        fn normalize_idempotent(a in arb_poly()) {
            let n = normalize_reduced(&a);
            prop_assert_eq!(normalize_reduced(&n), n.clone());
            prop_assert!(n.is_zero() || (n.is_polynomial() && n.coeff(0) > BigInt::zero()));
        }

        #[test]
        fn normalize_multiplicative(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(
                normalize_reduced(&(&a * &b)),
                &normalize_reduced(&a) * &normalize_reduced(&b)
            );
        }
    }
}
