//! Exact-rational polynomials in the free rank and exponential forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A polynomial `c_1 r + c_2 r^2 + ... + c_n r^n` with exact rational
/// coefficients and no constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthPolynomial {
    /// `coeffs[k - 1]` is the coefficient of `r^k`.
    coeffs: Vec<BigRational>,
}

impl GrowthPolynomial {
    /// `coeffs[k - 1]` is the coefficient of `r^k`; the leading coefficient
    /// must be non-zero.
    pub fn from_coefficients(coeffs: Vec<BigRational>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::invalid(
                "polynomial must have positive degree".to_string(),
            )),
            Some(c) if c.is_zero() => Err(Error::internal(
                "leading polynomial coefficient vanished".to_string(),
            )),
            Some(_) => Ok(GrowthPolynomial { coeffs }),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `r^k` (zero outside `1..=degree`).
    pub fn coefficient(&self, k: usize) -> BigRational {
        if k == 0 || k > self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[k - 1].clone()
        }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Exact value at an integer rank. The denominators always cancel for the
    /// growth polynomials this crate constructs; a fractional result signals
    /// a bug.
    pub fn evaluate(&self, r: u64) -> Result<BigInt> {
        let x = BigRational::from_integer(BigInt::from(r));
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc *= &x; // no constant term
        if !acc.is_integer() {
            return Err(Error::internal(format!(
                "polynomial evaluation at r={r} is not an integer: {acc}"
            )));
        }
        Ok(acc.to_integer())
    }
}

impl fmt::Display for GrowthPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (1..=self.coeffs.len()).rev() {
            let c = &self.coeffs[k - 1];
            if c.is_zero() {
                continue;
            }
            let body = if k == 1 {
                "r".to_string()
            } else {
                format!("r^{k}")
            };
            write_term(f, &mut first, c, &body)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Renders `± coeff body` with the sign folded into the separator, omitting
/// unit coefficients when a body is present.
fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    c: &BigRational,
    body: &str,
) -> fmt::Result {
    let mag = c.abs();
    if *first {
        if c.is_negative() {
            write!(f, "-")?;
        }
        *first = false;
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if body.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{body}")
    } else if body.starts_with('r') {
        write!(f, "{mag} {body}")
    } else {
        write!(f, "{mag}*{body}")
    }
}

/// An exponential form `β_1 1^r + β_2 2^r + ... + β_n n^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentialForm {
    /// `betas[j - 1]` is the coefficient of `j^r`.
    betas: Vec<BigRational>,
}

impl ExponentialForm {
    pub fn from_betas(betas: Vec<BigRational>) -> Result<Self> {
        if betas.is_empty() {
            return Err(Error::invalid(
                "exponential form must have a term".to_string(),
            ));
        }
        Ok(ExponentialForm { betas })
    }

    pub fn betas(&self) -> &[BigRational] {
        &self.betas
    }

    pub fn evaluate(&self, r: u64) -> Result<BigInt> {
        let mut acc = BigRational::zero();
        for (idx, beta) in self.betas.iter().enumerate() {
            let base = BigInt::from(idx as u64 + 1);
            acc += beta * BigRational::from_integer(base.pow(r as u32));
        }
        if !acc.is_integer() {
            return Err(Error::internal(format!(
                "exponential form at r={r} is not an integer: {acc}"
            )));
        }
        Ok(acc.to_integer())
    }
}

impl fmt::Display for ExponentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for j in (1..=self.betas.len()).rev() {
            let beta = &self.betas[j - 1];
            if beta.is_zero() {
                continue;
            }
            // The 1^r term is just a constant.
            let body = if j == 1 {
                String::new()
            } else {
                format!("{j}^r")
            };
            write_term(f, &mut first, beta, &body)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Signed Stirling numbers of the first kind: the falling factorial
/// `x (x-1) ... (x-k+1)` expands as `Σ_j s(k, j) x^j`.
pub fn stirling_first(k: usize, j: usize) -> BigInt {
    if j > k {
        return BigInt::zero();
    }
    // s(m, j) = s(m-1, j-1) - (m-1) s(m-1, j), row by row
    let mut row: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=k {
        let mut next = vec![BigInt::zero(); m + 1];
        for (jj, slot) in next.iter_mut().enumerate() {
            let take = if jj >= 1 {
                row.get(jj - 1).cloned().unwrap_or_else(BigInt::zero)
            } else {
                BigInt::zero()
            };
            let keep = row.get(jj).cloned().unwrap_or_else(BigInt::zero);
            *slot = take - keep * BigInt::from(m as u64 - 1);
        }
        row = next;
    }
    row[j].clone()
}

/// Exact interpolation of the polynomial with zero constant term through the
/// points `(1, values[0]), ..., (n, values[n-1])` and the implicit `(0, 0)`.
pub fn interpolate(values: &[BigInt]) -> Result<GrowthPolynomial> {
    let n = values.len();
    if n == 0 {
        return Err(Error::invalid("need at least one sample".to_string()));
    }
    // Lagrange over the nodes x = 0..=n with y(0) = 0.
    let mut acc = vec![BigRational::zero(); n + 1];
    for (i, y) in values.iter().enumerate() {
        let xi = i as i64 + 1;
        if y.is_zero() {
            continue;
        }
        let mut num: Vec<BigInt> = vec![BigInt::one()];
        let mut denom = BigInt::one();
        for j in 0..=n as i64 {
            if j == xi {
                continue;
            }
            num = poly_mul_linear(&num, j);
            denom *= BigInt::from(xi - j);
        }
        let scale = BigRational::new(y.clone(), denom);
        for (k, c) in num.iter().enumerate() {
            acc[k] += &scale * BigRational::from_integer(c.clone());
        }
    }
    if !acc[0].is_zero() {
        return Err(Error::internal(
            "interpolated polynomial has a constant term".to_string(),
        ));
    }
    let mut coeffs: Vec<BigRational> = acc[1..].to_vec();
    while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.pop();
    }
    GrowthPolynomial::from_coefficients(coeffs)
}

/// Multiplies a coefficient vector by `(x - root)`.
fn poly_mul_linear(p: &[BigInt], root: i64) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + 1];
    for (k, c) in p.iter().enumerate() {
        out[k + 1] += c;
        out[k] -= c * BigInt::from(root);
    }
    out
}

/// Parses a rational like `7/2` or `-3`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|e| Error::invalid(format!("bad rational {s:?}: {e}")))
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(parse_rational).collect()
}
