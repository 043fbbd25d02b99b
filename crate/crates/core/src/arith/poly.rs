use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::gaussian::{format_rational, parse_rational, rat_int, Rational};
use super::series::split_top_level;
use super::ArithError;

/// Laurent polynomial in `q` with rational coefficients. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// `1 - (-q)^a`.
    pub fn one_minus_neg_q_pow(a: u32) -> Self {
        let sign = if a % 2 == 0 { -1 } else { 1 };
        Self::from_terms([(0, Rational::one()), (a as i64, rat_int(sign))])
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c * r)))
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Exact division. Returns `None` unless `divisor` divides `self` in the
    /// Laurent polynomial ring.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d_lo = divisor.min_degree()?;
        let d_hi = divisor.max_degree()?;
        let lead = divisor.coeff(d_hi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(hi) = rem.max_degree() {
            let lo = rem.min_degree().unwrap();
            if hi - lo < d_hi - d_lo {
                return None;
            }
            let c = rem.coeff(hi) / &lead;
            let k = hi - d_hi;
            let step = Self::monomial(c, k);
            rem = rem.sub(&divisor.mul(&step));
            quot = quot.add(&step);
        }
        Some(quot)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if var.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{} {var}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s).trim();
        let normalized = s.replace(" - ", " + -");
        let mut p = Self::zero();
        for raw in split_top_level(&normalized, " + ") {
            let term = raw.trim();
            if term.is_empty() {
                return Err(ArithError::Parse(format!("empty term in {s:?}")));
            }
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-Rational::one(), rest.trim()),
                None => (Rational::one(), term),
            };
            let (coef, k) = match body.find('q') {
                None => (parse_rational(body)?, 0),
                Some(pos) => {
                    let c = body[..pos].trim();
                    let c = if c.is_empty() { Rational::one() } else { parse_rational(c)? };
                    let var = &body[pos..];
                    let k = if var == "q" {
                        1
                    } else {
                        var.strip_prefix("q^")
                            .and_then(|e| e.trim().parse::<i64>().ok())
                            .ok_or_else(|| ArithError::Parse(format!("bad monomial {term:?}")))?
                    };
                    (c, k)
                }
            };
            p.add_term(k, sign * coef);
        }
        Ok(p)
    }
}
