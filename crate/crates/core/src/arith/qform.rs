use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use super::gaussian::{rat_int, GaussianRational, Rational};
use super::poly::LaurentPoly;
use super::series::{split_top_level, TruncatedULaurent};
use super::ArithError;

/// A rational function of `q` of the shape
/// `(-q)^{s/2} * P(q) / prod_a (1 - (-q)^a)^{e_a}` with `s` in {0, 1}.
///
/// Half-integer powers live on the symbol `(-q)`; integer powers of `(-q)` are
/// folded into `P`.
#[derive(Clone, Debug)]
pub struct QForm {
    half_shift: bool,
    numerator: LaurentPoly,
    denominator: BTreeMap<u32, u32>,
}

impl QForm {
    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(numerator: LaurentPoly) -> Self {
        Self { half_shift: false, numerator, denominator: BTreeMap::new() }
    }

    /// Builds `P(q) / prod (1 - (-q)^a)^e` from `(a, e)` pairs. Both must be
    /// positive.
    pub fn with_denominator(numerator: LaurentPoly, factors: &[(u32, u32)]) -> Result<Self, ArithError> {
        let mut form = Self::from_poly(numerator);
        for &(a, e) in factors {
            if a == 0 || e == 0 {
                return Err(ArithError::Malformed(format!(
                    "denominator factor (1-(-q)^{a})^{e} needs a >= 1 and e >= 1"
                )));
            }
            *form.denominator.entry(a).or_insert(0) += e;
        }
        Ok(form.normalized())
    }

    /// `(-q)^{h/2}`.
    pub fn neg_q_half_power(h: i64) -> Self {
        let whole = h.div_euclid(2);
        let sign = if whole.rem_euclid(2) == 0 { 1 } else { -1 };
        Self {
            half_shift: h.rem_euclid(2) == 1,
            numerator: LaurentPoly::monomial(rat_int(sign), whole),
            denominator: BTreeMap::new(),
        }
    }

    pub fn half_shift(&self) -> bool {
        self.half_shift
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    /// `(a, e)` pairs of `(1 - (-q)^a)^{-e}`.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.denominator.iter().map(|(a, e)| (*a, *e))
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn normalized(mut self) -> Self {
        if self.numerator.is_zero() {
            self.half_shift = false;
            self.denominator.clear();
        }
        self
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut numerator = self.numerator.mul(&other.numerator);
        let half_shift = self.half_shift ^ other.half_shift;
        if self.half_shift && other.half_shift {
            // (-q)^{1/2} (-q)^{1/2} = -q
            numerator = numerator.shift(1).neg();
        }
        let mut denominator = self.denominator.clone();
        for (a, e) in &other.denominator {
            *denominator.entry(*a).or_insert(0) += e;
        }
        Self { half_shift, numerator, denominator }.normalized()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { numerator: self.numerator.scale(r), ..self.clone() }.normalized()
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { numerator: self.numerator.shift(k), ..self.clone() }
    }

    fn denominator_poly(&self) -> LaurentPoly {
        self.denominator
            .iter()
            .fold(LaurentPoly::one(), |acc, (a, e)| acc.mul(&LaurentPoly::one_minus_neg_q_pow(*a).pow(*e)))
    }

    /// Sum of two forms sharing the same half shift.
    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.half_shift != other.half_shift {
            return Err(ArithError::Malformed("cannot add forms with different half shifts".into()));
        }
        let mut denominator = self.denominator.clone();
        for (a, e) in &other.denominator {
            let slot = denominator.entry(*a).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let lift = |f: &Self| {
            denominator.iter().fold(f.numerator.clone(), |acc, (a, e)| {
                let have = f.denominator.get(a).copied().unwrap_or(0);
                acc.mul(&LaurentPoly::one_minus_neg_q_pow(*a).pow(e - have))
            })
        };
        let numerator = lift(self).add(&lift(other));
        Ok(Self { half_shift: self.half_shift, numerator, denominator }.normalized().reduce())
    }

    /// Cancels every denominator factor that divides the numerator exactly.
    pub fn reduce(&self) -> Self {
        let mut out = self.clone();
        let factors: Vec<u32> = out.denominator.keys().rev().copied().collect();
        for a in factors {
            let divisor = LaurentPoly::one_minus_neg_q_pow(a);
            while out.denominator.get(&a).copied().unwrap_or(0) > 0 {
                match out.numerator.div_exact(&divisor) {
                    Some(q) => {
                        out.numerator = q;
                        let e = out.denominator.get_mut(&a).unwrap();
                        *e -= 1;
                        if *e == 0 {
                            out.denominator.remove(&a);
                        }
                    }
                    None => break,
                }
            }
        }
        out.normalized()
    }

    pub fn is_laurent_polynomial(&self) -> bool {
        self.reduce().denominator.is_empty()
    }

    /// Expansion under `q = -e^{iu}`, exact through `u^order`.
    pub fn substitute_q_to_u(&self, order: i64) -> Result<TruncatedULaurent, ArithError> {
        let poles: i64 = self.denominator.values().map(|e| *e as i64).sum();
        let work = order + 2 * poles + 1;
        if work < 0 {
            return Err(ArithError::NegativeOrder(order));
        }
        let i = GaussianRational::i();
        let mut num = TruncatedULaurent::zero(work);
        for (k, c) in self.numerator.terms() {
            // c q^k (-q)^{s/2} = c (-1)^k (-q)^{k + s/2}  ->  c (-1)^k e^{i (k + s/2) u}
            let freq = Rational::new((2 * k + self.half_shift as i64).into(), 2.into());
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            let coef = GaussianRational::real(c * rat_int(sign));
            let term = TruncatedULaurent::exp_series(&i.scale(&freq), work)?.scale(&coef);
            num = num.add(&term);
        }
        let mut out = num;
        for (a, e) in &self.denominator {
            let factor = TruncatedULaurent::one(work)
                .sub(&TruncatedULaurent::exp_series(&i.scale(&rat_int(*a as i64)), work)?);
            let inv = factor.inverse()?;
            for _ in 0..*e {
                out = out.product(&inv);
            }
        }
        if out.truncation_order() < order {
            return Err(ArithError::Malformed(format!(
                "internal precision loss: reached u^{} of u^{order}",
                out.truncation_order()
            )));
        }
        Ok(out.truncate(order))
    }
}

impl PartialEq for QForm {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.half_shift == other.half_shift
            && self.numerator.mul(&other.denominator_poly()) == other.numerator.mul(&self.denominator_poly())
    }
}

impl Eq for QForm {}

impl fmt::Display for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi = self.numerator.terms().count() > 1;
        let wrap = multi && (self.half_shift || !self.denominator.is_empty());
        if self.half_shift {
            write!(f, "(-q)^(1/2) * ")?;
        }
        if wrap {
            write!(f, "({})", self.numerator)?;
        } else {
            write!(f, "{}", self.numerator)?;
        }
        if !self.denominator.is_empty() {
            let parts: Vec<String> = self
                .denominator
                .iter()
                .map(|(a, e)| if *e == 1 { format!("(1-(-q)^{a})") } else { format!("(1-(-q)^{a})^{e}") })
                .collect();
            write!(f, " / {}", parts.join(" * "))?;
        }
        Ok(())
    }
}

impl FromStr for QForm {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut s = s.trim();
        let mut half = false;
        if let Some(rest) = s.strip_prefix("(-q)^(1/2) * ") {
            half = true;
            s = rest.trim();
        }
        let pieces = split_top_level(s, " / ");
        let (num, den) = match pieces.as_slice() {
            [n] => (*n, None),
            [n, d] => (*n, Some(*d)),
            _ => return Err(ArithError::Parse(format!("bad form {s:?}"))),
        };
        let numerator: LaurentPoly = num.parse()?;
        let mut factors = Vec::new();
        if let Some(den) = den {
            for part in split_top_level(den.trim(), " * ") {
                let part = part.trim();
                let bad = || ArithError::Parse(format!("bad denominator factor {part:?}"));
                let rest = part.strip_prefix("(1-(-q)^").ok_or_else(bad)?;
                let (a, tail) = rest.split_once(')').ok_or_else(bad)?;
                let a: u32 = a.trim().parse().map_err(|_| bad())?;
                let e: u32 = match tail.strip_prefix('^') {
                    Some(e) => e.trim().parse().map_err(|_| bad())?,
                    None if tail.is_empty() => 1,
                    None => return Err(bad()),
                };
                factors.push((a, e));
            }
        }
        let mut form = Self::with_denominator(numerator, &factors)?;
        if half && !form.is_zero() {
            form.half_shift = true;
        }
        Ok(form)
    }
}

impl QForm {
    /// The constant `r`.
    pub fn constant(r: Rational) -> Self {
        Self::from_poly(LaurentPoly::monomial(r, 0))
    }

    /// `c q^k`.
    pub fn monomial(c: Rational, k: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(c, k))
    }

    pub fn q() -> Self {
        Self::monomial(Rational::one(), 1)
    }
}
