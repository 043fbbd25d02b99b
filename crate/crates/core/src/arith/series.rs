use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::gaussian::{GaussianRational, Rational};
use super::ArithError;

/// A Laurent series in `u` over Q(i), known exactly up to and including
/// `u^truncation_order`. Coefficients below `min_exponent` are zero.
#[derive(Clone, Debug)]
pub struct TruncatedULaurent {
    min_exponent: i64,
    coefficients: Vec<GaussianRational>,
    truncation_order: i64,
}

impl TruncatedULaurent {
    pub fn new(
        min_exponent: i64,
        coefficients: Vec<GaussianRational>,
        truncation_order: i64,
    ) -> Result<Self, ArithError> {
        let expected = truncation_order - min_exponent + 1;
        if expected < 0 || coefficients.len() as i64 != expected {
            return Err(ArithError::Malformed(format!(
                "series with exponents {min_exponent}..={truncation_order} needs {} coefficients, got {}",
                expected.max(0),
                coefficients.len()
            )));
        }
        Ok(Self { min_exponent, coefficients, truncation_order })
    }

    /// Builds a series from sparse `(exponent, coefficient)` terms. Terms above
    /// `truncation_order` are dropped.
    pub fn from_terms(terms: &[(i64, GaussianRational)], truncation_order: i64) -> Self {
        let min = terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, _)| *e)
            .min()
            .unwrap_or(truncation_order + 1)
            .min(truncation_order + 1);
        let mut coefficients = vec![GaussianRational::zero(); (truncation_order - min + 1) as usize];
        for (e, c) in terms {
            if *e >= min && *e <= truncation_order {
                let slot = &mut coefficients[(e - min) as usize];
                *slot = &*slot + c;
            }
        }
        Self { min_exponent: min, coefficients, truncation_order }
    }

    pub fn zero(truncation_order: i64) -> Self {
        Self { min_exponent: truncation_order + 1, coefficients: Vec::new(), truncation_order }
    }

    pub fn one(truncation_order: i64) -> Self {
        Self::monomial(GaussianRational::one(), 0, truncation_order)
    }

    pub fn monomial(c: GaussianRational, exponent: i64, truncation_order: i64) -> Self {
        Self::from_terms(&[(exponent, c)], truncation_order)
    }

    pub fn min_exponent(&self) -> i64 {
        self.min_exponent
    }

    pub fn truncation_order(&self) -> i64 {
        self.truncation_order
    }

    pub fn coefficients(&self) -> &[GaussianRational] {
        &self.coefficients
    }

    /// Coefficient of `u^k`, or `None` when `k` is beyond the known range.
    pub fn coeff(&self, k: i64) -> Option<GaussianRational> {
        if k > self.truncation_order {
            None
        } else if k < self.min_exponent {
            Some(GaussianRational::zero())
        } else {
            Some(self.coefficients[(k - self.min_exponent) as usize].clone())
        }
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coefficients
            .iter()
            .position(|c| !c.is_zero())
            .map(|p| self.min_exponent + p as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Same series with leading zero coefficients dropped.
    pub fn normalized(&self) -> Self {
        match self.valuation() {
            Some(v) => Self {
                min_exponent: v,
                coefficients: self.coefficients[(v - self.min_exponent) as usize..].to_vec(),
                truncation_order: self.truncation_order,
            },
            None => Self::zero(self.truncation_order),
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exponent + i as i64, c))
    }

    /// Forgets everything above `order`. Raising the order is not possible.
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.truncation_order);
        if order < self.min_exponent {
            return Self::zero(order);
        }
        Self {
            min_exponent: self.min_exponent,
            coefficients: self.coefficients[..(order - self.min_exponent + 1) as usize].to_vec(),
            truncation_order: order,
        }
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            min_exponent: self.min_exponent + k,
            coefficients: self.coefficients.clone(),
            truncation_order: self.truncation_order + k,
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            min_exponent: self.min_exponent,
            coefficients: self.coefficients.iter().map(|x| x * c).collect(),
            truncation_order: self.truncation_order,
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&GaussianRational::real(r.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.truncation_order.min(other.truncation_order);
        let min = self.min_exponent.min(other.min_exponent).min(order + 1);
        let coefficients = (min..=order)
            .map(|k| {
                let a = self.coeff(k).unwrap_or_else(GaussianRational::zero);
                let b = other.coeff(k).unwrap_or_else(GaussianRational::zero);
                &a + &b
            })
            .collect();
        Self { min_exponent: min, coefficients, truncation_order: order }
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussianRational::from_int(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product. The result is known up to
    /// `min(a.order + b.min, b.order + a.min)`.
    pub fn product(&self, other: &Self) -> Self {
        let a = self.normalized();
        let b = other.normalized();
        let order = (a.truncation_order + b.min_exponent).min(b.truncation_order + a.min_exponent);
        let min = a.min_exponent + b.min_exponent;
        if order < min {
            return Self::zero(order);
        }
        let len = (order - min + 1) as usize;
        let mut coefficients = vec![GaussianRational::zero(); len];
        for (i, x) in a.coefficients.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coefficients.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    coefficients[i + j] = &coefficients[i + j] + &(x * y);
                }
            }
        }
        Self { min_exponent: min, coefficients, truncation_order: order }
    }

    /// Multiplicative inverse. Leading zeros are stripped first, so the
    /// input only needs one nonzero known coefficient.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        let a = self.normalized();
        if a.is_zero() {
            return Err(ArithError::ZeroSeries);
        }
        let precision = (a.truncation_order - a.min_exponent) as usize;
        let lead_inv = a.coefficients[0].inv()?;
        let mut out: Vec<GaussianRational> = Vec::with_capacity(precision + 1);
        out.push(lead_inv.clone());
        for k in 1..=precision {
            let mut acc = GaussianRational::zero();
            for j in 1..=k {
                let aj = &a.coefficients[j];
                if !aj.is_zero() {
                    acc = &acc + &(aj * &out[k - j]);
                }
            }
            out.push(-(&acc * &lead_inv));
        }
        Ok(Self {
            min_exponent: -a.min_exponent,
            coefficients: out,
            truncation_order: -a.min_exponent + precision as i64,
        })
    }

    /// `e^{c u}` known up to `u^order`.
    pub fn exp_series(c: &GaussianRational, order: i64) -> Result<Self, ArithError> {
        if order < 0 {
            return Err(ArithError::NegativeOrder(order));
        }
        let mut coefficients = Vec::with_capacity(order as usize + 1);
        let mut term = GaussianRational::one();
        coefficients.push(term.clone());
        for k in 1..=order {
            term = (&term * c).scale(&Rational::new(1.into(), k.into()));
            coefficients.push(term.clone());
        }
        Ok(Self { min_exponent: 0, coefficients, truncation_order: order })
    }

    /// `(c u)^k` as a monomial.
    pub fn linear_power(c: &GaussianRational, k: i64, truncation_order: i64) -> Self {
        assert!(k >= 0, "negative power of a series with valuation 1");
        Self::monomial(c.pow(k as u64), k, truncation_order)
    }

    /// Compares coefficients on the range both series know. Returns the first
    /// exponent where they differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<i64> {
        let order = self.truncation_order.min(other.truncation_order);
        let start = self.min_exponent.min(other.min_exponent);
        (start..=order).find(|&k| self.coeff(k) != other.coeff(k))
    }
}

impl PartialEq for TruncatedULaurent {
    fn eq(&self, other: &Self) -> bool {
        self.truncation_order == other.truncation_order && self.first_mismatch(other).is_none()
    }
}

impl Eq for TruncatedULaurent {}

impl fmt::Display for TruncatedULaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if !c.re.is_zero() && !c.im.is_zero() {
                write!(f, "({c}) * u^{k}")?;
            } else {
                write!(f, "{c} * u^{k}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(u^{})", self.truncation_order + 1)
    }
}

/// Splits on `sep` outside parentheses.
pub(crate) fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            out.push(&s[start..i]);
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    out.push(&s[start..]);
    out
}

impl FromStr for TruncatedULaurent {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut terms = Vec::new();
        let mut order = None;
        for part in split_top_level(s.trim(), " + ") {
            let part = part.trim();
            if let Some(rest) = part.strip_prefix("O(u^").and_then(|r| r.strip_suffix(')')) {
                let n: i64 = rest
                    .trim()
                    .parse()
                    .map_err(|_| ArithError::Parse(format!("bad truncation marker {part:?}")))?;
                order = Some(n - 1);
                continue;
            }
            if part == "0" {
                continue;
            }
            let (coef, exp) = part
                .rsplit_once(" * u^")
                .ok_or_else(|| ArithError::Parse(format!("bad series term {part:?}")))?;
            let e: i64 = exp
                .trim()
                .parse()
                .map_err(|_| ArithError::Parse(format!("bad exponent in {part:?}")))?;
            terms.push((e, coef.parse::<GaussianRational>()?));
        }
        let order = order.ok_or_else(|| ArithError::Parse("series text lacks an O(u^N) marker".into()))?;
        if terms.iter().any(|(e, _)| *e > order) {
            return Err(ArithError::Parse("series term above its truncation marker".into()));
        }
        Ok(Self::from_terms(&terms, order))
    }
}
