use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{GWSeries, PTSeries, SeriesError};
use crate::arith::{rat_int, GaussianRational, QForm, TruncatedULaurent};

/// Both sides must know at least this many coefficients from their first
/// nonzero one.
pub const MIN_KNOWN_COEFFICIENTS: i64 = 5;

const SEARCH_BOUND: i64 = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub pass: bool,
    pub first_mismatch_exponent: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "-1")]
    MinusOne,
    #[serde(rename = "i")]
    I,
    #[serde(rename = "-i")]
    MinusI,
}

impl Unit {
    pub fn value(self) -> GaussianRational {
        GaussianRational::i_pow(match self {
            Self::One => 0,
            Self::I => 1,
            Self::MinusOne => 2,
            Self::MinusI => 3,
        })
    }

    fn from_value(g: &GaussianRational) -> Option<Self> {
        [Self::One, Self::MinusOne, Self::I, Self::MinusI].into_iter().find(|u| &u.value() == g)
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::One => "1",
            Self::MinusOne => "-1",
            Self::I => "i",
            Self::MinusI => "-i",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prefactor {
    pub d: i64,
    pub sigma: i64,
    pub unit: Unit,
}

/// `(-q)^{-d/2} * pt` under `q = -e^{iu}`.
fn pt_side(pt: &PTSeries, d: i64, order: i64) -> Result<TruncatedULaurent, SeriesError> {
    Ok(pt.form().mul(&QForm::neg_q_half_power(-d)).substitute_q_to_u(order)?)
}

/// `(-iu)^e * gw`.
fn gw_side(gw: &GWSeries, e: i64) -> TruncatedULaurent {
    // (-i)^e = i^{-e}
    gw.series.shift(e).scale(&GaussianRational::i_pow(-e))
}

/// Top exponent both sides know, after checking there is enough of it.
fn overlap(a: &TruncatedULaurent, b: &TruncatedULaurent) -> Result<i64, SeriesError> {
    let top = a.truncation_order().min(b.truncation_order());
    let start = match (a.truncate(top).valuation(), b.truncate(top).valuation()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => top + 1,
    };
    let known = top - start + 1;
    if known < MIN_KNOWN_COEFFICIENTS {
        return Err(SeriesError::InsufficientTruncation { known: known.max(0), needed: MIN_KNOWN_COEFFICIENTS });
    }
    Ok(top)
}

/// Compares `(-q)^{-d/2} Z_PT` with `(-iu)^{d + sigma} Z_GW` after
/// `q = -e^{iu}`, coefficientwise through `u^order` (or less if the GW series
/// is known to less).
pub fn correspondence_check(
    pt: &PTSeries,
    gw: &GWSeries,
    d: i64,
    sigma: i64,
    order: i64,
) -> Result<CheckResult, SeriesError> {
    let lhs = pt_side(pt, d, order)?;
    let rhs = gw_side(gw, d + sigma);
    let top = overlap(&lhs, &rhs)?;
    let mismatch = lhs.truncate(top).first_mismatch(&rhs.truncate(top));
    Ok(CheckResult { pass: mismatch.is_none(), first_mismatch_exponent: mismatch })
}

/// Finds the prefactor with `unit * (-q)^{-d/2} Z_PT = (-iu)^{d + sigma} Z_GW`
/// and `|d|, |sigma| <= 40`, units `1, -1, i, -i`.
///
/// Under `q = -e^{iu}` the factor `(-q)^{-d/2}` becomes `e^{-idu/2}`, which
/// leaves the leading term alone. So the leading terms fix `d + sigma` and the
/// unit, and the next coefficient is linear in `d`. The solution, if any, is
/// unique and is confirmed on the full overlap.
pub fn fit_prefactor(pt: &PTSeries, gw: &GWSeries, order: i64) -> Result<Option<Prefactor>, SeriesError> {
    if pt.form().is_zero() || gw.series.is_zero() {
        return Err(SeriesError::Precondition("prefactor fitting needs nonzero series".into()));
    }
    let gw_val = gw.series.valuation().expect("nonzero series");
    let base = pt.form().substitute_q_to_u(order)?;
    let Some(v) = base.valuation() else { return Ok(None) };
    let e = v - gw_val;
    let rhs = gw_side(gw, e);
    if base.truncation_order() <= v || rhs.truncation_order() <= v {
        return Ok(None);
    }
    let (b0, b1) = (base.coeff(v).unwrap(), base.coeff(v + 1).unwrap());
    let (r0, r1) = (rhs.coeff(v).unwrap(), rhs.coeff(v + 1).unwrap());
    let Some(unit) = Unit::from_value(&(&r0 * &b0.inv()?)) else { return Ok(None) };
    // unit (b1 - i d b0 / 2) = r1
    let t = &(&r1 * &unit.value().inv()?) - &b1;
    let d = &(&t * &GaussianRational::i()).scale(&rat_int(2)) * &b0.inv()?;
    if !d.im.is_zero() || !d.re.is_integer() {
        return Ok(None);
    }
    let Some(d) = d.re.to_integer().to_i64() else { return Ok(None) };
    let sigma = e - d;
    if d.abs() > SEARCH_BOUND || sigma.abs() > SEARCH_BOUND {
        return Ok(None);
    }
    let lhs = pt_side(pt, d, order)?;
    let Ok(top) = overlap(&lhs, &rhs) else { return Ok(None) };
    let matches = lhs.scale(&unit.value()).truncate(top).first_mismatch(&rhs.truncate(top)).is_none();
    Ok(matches.then_some(Prefactor { d, sigma, unit }))
}
