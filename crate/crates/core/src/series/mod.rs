//! Generating series: partition statistics, gluing along a degeneration, the
//! closed-form linear and principal series, and the GW/PT comparison.

mod correspondence;
mod partition;

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{rat, ArithError, GaussianRational, LaurentPoly, QForm, Rational, TruncatedULaurent};

pub use correspondence::{correspondence_check, fit_prefactor, CheckResult, Prefactor, Unit, MIN_KNOWN_COEFFICIENTS};
pub use partition::{partition_stats, PartitionStats, PartitionVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("all vertex series must be on the {expected} side, found {found}")]
    MixedSides { expected: Side, found: Side },
    #[error("insufficient truncation: {known} comparable coefficients, need at least {needed}")]
    InsufficientTruncation { known: i64, needed: i64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Gw,
    Pt,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Gw => "gw",
            Self::Pt => "pt",
        })
    }
}

impl FromStr for Side {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, SeriesError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gw" => Ok(Self::Gw),
            "pt" => Ok(Self::Pt),
            other => Err(SeriesError::Precondition(format!("unknown side {other:?}; expected gw or pt"))),
        }
    }
}

/// Discrete data of the star a series belongs to: the anticanonical degree
/// `d_beta` and `sum_j l(mu_j) - |mu_j|`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarDiscreteData {
    pub d_beta: i64,
    pub ell_minus_size: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GWSeries {
    pub series: TruncatedULaurent,
    #[serde(default)]
    pub data: StarDiscreteData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawPT")]
pub struct PTSeries {
    form: QForm,
    #[serde(default)]
    pub data: StarDiscreteData,
}

#[derive(Deserialize)]
struct RawPT {
    form: QForm,
    #[serde(default)]
    data: StarDiscreteData,
}

impl From<RawPT> for PTSeries {
    fn from(r: RawPT) -> Self {
        Self::new(r.form, r.data)
    }
}

impl PTSeries {
    pub fn new(form: QForm, data: StarDiscreteData) -> Self {
        Self { form: form.reduce(), data }
    }

    pub fn form(&self) -> &QForm {
        &self.form
    }
}

/// A series on either side, tagged by `side` in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "side", rename_all = "lowercase")]
pub enum SideSeries {
    Gw(GWSeries),
    Pt(PTSeries),
}

impl SideSeries {
    pub fn side(&self) -> Side {
        match self {
            Self::Gw(_) => Side::Gw,
            Self::Pt(_) => Side::Pt,
        }
    }

    pub fn data(&self) -> StarDiscreteData {
        match self {
            Self::Gw(g) => g.data,
            Self::Pt(p) => p.data,
        }
    }
}

impl fmt::Display for SideSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gw(g) => write!(f, "{}", g.series),
            Self::Pt(p) => write!(f, "{}", p.form),
        }
    }
}

/// One term of the degeneration formula: a single complex and a single
/// partition vector.
///
/// PT: `sign * m / aut * q^{-|mu|} * prod Z_V`. GW: `m / aut * u^{2 l(mu)} * prod Z_V`.
pub fn glue_degeneration(side: Side, vertex_series: &[SideSeries], mu: &PartitionVector) -> Result<SideSeries, SeriesError> {
    if vertex_series.is_empty() {
        return Err(SeriesError::Precondition("gluing needs at least one vertex series".into()));
    }
    if let Some(bad) = vertex_series.iter().find(|s| s.side() != side) {
        return Err(SeriesError::MixedSides { expected: side, found: bad.side() });
    }
    let stats = mu.stats();
    let factor = Rational::new(stats.m, stats.aut);
    let size = mu.size() as i64;
    let length = mu.length() as i64;
    let data = StarDiscreteData {
        d_beta: vertex_series.iter().map(|s| s.data().d_beta).sum::<i64>() - 2 * size,
        ell_minus_size: vertex_series.iter().map(|s| s.data().ell_minus_size).sum::<i64>() - 2 * (length - size),
    };
    Ok(match side {
        Side::Gw => {
            let mut iter = vertex_series.iter().map(|s| match s {
                SideSeries::Gw(g) => &g.series,
                SideSeries::Pt(_) => unreachable!(),
            });
            let first = iter.next().unwrap().clone();
            let product = iter.fold(first, |acc, s| acc.product(s));
            SideSeries::Gw(GWSeries { series: product.scale_rational(&factor).shift(2 * length), data })
        }
        Side::Pt => {
            let product = vertex_series.iter().fold(QForm::one(), |acc, s| match s {
                SideSeries::Pt(p) => acc.mul(&p.form),
                SideSeries::Gw(_) => unreachable!(),
            });
            let signed = if stats.sign < 0 { -factor } else { factor };
            SideSeries::Pt(PTSeries::new(product.scale(&signed).shift(-size), data))
        }
    })
}

/// Series of the linear star of degree `d` with `ell` contact points. They
/// vanish unless `ell = 1`, where GW is `u^{-2}/d` and PT is
/// `(-1)^{d-1} q^d / d`.
pub fn linear_star_series(side: Side, d: u64, ell: u64, order: i64) -> Result<SideSeries, SeriesError> {
    if d == 0 || ell == 0 {
        return Err(SeriesError::Precondition("linear star needs d >= 1 and ell >= 1".into()));
    }
    let data = StarDiscreteData { d_beta: 2 * d as i64, ell_minus_size: 2 - 2 * d as i64 };
    let coef = rat(1, d as i64);
    Ok(match side {
        Side::Gw => {
            let series = if ell > 1 {
                TruncatedULaurent::zero(order)
            } else {
                TruncatedULaurent::monomial(GaussianRational::real(coef), -2, order)
            };
            SideSeries::Gw(GWSeries { series, data })
        }
        Side::Pt => {
            let form = if ell > 1 {
                QForm::zero()
            } else {
                let sign = if d % 2 == 1 { coef } else { -coef };
                QForm::monomial(sign, d as i64)
            };
            SideSeries::Pt(PTSeries::new(form, data))
        }
    })
}

/// Data of the normalized trivalent star of multiplicity `n`: weights 1, n, 1.
pub fn principal_data(n: u64) -> StarDiscreteData {
    StarDiscreteData { d_beta: n as i64 + 2, ell_minus_size: 1 - n as i64 }
}

/// `(2/u^3) sin(n u / 2)`, exact through `u^order`.
pub fn principal_gw(n: u64, order: i64) -> Result<GWSeries, SeriesError> {
    if n == 0 {
        return Err(SeriesError::Precondition("multiplicity must be positive".into()));
    }
    let n_r = Rational::from_integer(n.into());
    let mut terms = Vec::new();
    let mut coef = n_r.clone();
    let mut k = 0i64;
    while 2 * k - 2 <= order {
        terms.push((2 * k - 2, GaussianRational::real(coef.clone())));
        // next: times -n^2 / (4 (2k+2)(2k+3))
        let denom = Rational::from_integer((4 * (2 * k + 2) * (2 * k + 3)).into());
        coef = -(coef * &n_r * &n_r) / denom;
        k += 1;
    }
    Ok(GWSeries { series: TruncatedULaurent::from_terms(&terms, order), data: principal_data(n) })
}

/// `q (1 - (-q)^n)`.
pub fn principal_pt(n: u64) -> Result<PTSeries, SeriesError> {
    if n == 0 {
        return Err(SeriesError::Precondition("multiplicity must be positive".into()));
    }
    let inner = LaurentPoly::one_minus_neg_q_pow(n as u32);
    Ok(PTSeries::new(QForm::from_poly(inner.shift(1)), principal_data(n)))
}

/// `q (1 + q)^n`, the displayed form. It agrees with [`principal_pt`] at
/// `n = 1` only.
pub fn principal_pt_displayed(n: u64) -> Result<PTSeries, SeriesError> {
    if n == 0 {
        return Err(SeriesError::Precondition("multiplicity must be positive".into()));
    }
    let one_plus_q = LaurentPoly::from_terms([(0, Rational::one()), (1, Rational::one())]);
    Ok(PTSeries::new(QForm::from_poly(one_plus_q.pow(n as u32).shift(1)), principal_data(n)))
}

pub fn principal_series(side: Side, n: u64, order: i64) -> Result<SideSeries, SeriesError> {
    Ok(match side {
        Side::Gw => SideSeries::Gw(principal_gw(n, order)?),
        Side::Pt => SideSeries::Pt(principal_pt(n)?),
    })
}

pub fn is_laurent_polynomial(f: &QForm) -> bool {
    f.is_laurent_polynomial()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gw(s: &SideSeries) -> &TruncatedULaurent {
        match s {
            SideSeries::Gw(g) => &g.series,
            _ => panic!("expected gw"),
        }
    }

    fn pt(s: &SideSeries) -> &QForm {
        match s {
            SideSeries::Pt(p) => p.form(),
            _ => panic!("expected pt"),
        }
    }

    #[test]
    fn principal_examples() {
        assert_eq!(principal_pt(1).unwrap().form().to_string(), "q + q^2");
        assert_eq!(principal_pt(3).unwrap().form().to_string(), "q + q^4");
        assert_eq!(principal_pt(1).unwrap().form(), principal_pt_displayed(1).unwrap().form());
        assert_ne!(principal_pt(2).unwrap().form(), principal_pt_displayed(2).unwrap().form());
        let expect: TruncatedULaurent = "1 * u^-2 + -1/24 * u^0 + 1/1920 * u^2 + O(u^3)".parse().unwrap();
        assert_eq!(principal_gw(1, 2).unwrap().series, expect);
    }

    #[test]
    fn linear_examples() {
        assert_eq!(pt(&linear_star_series(Side::Pt, 3, 1, 0).unwrap()).to_string(), "1/3 q^3");
        assert_eq!(pt(&linear_star_series(Side::Pt, 2, 1, 0).unwrap()).to_string(), "-1/2 q^2");
        assert_eq!(gw(&linear_star_series(Side::Gw, 1, 1, 4).unwrap()).to_string(), "1 * u^-2 + O(u^5)");
        assert!(pt(&linear_star_series(Side::Pt, 3, 2, 0).unwrap()).is_zero());
        assert!(gw(&linear_star_series(Side::Gw, 3, 2, 4).unwrap()).is_zero());
    }

    #[test]
    fn gluing_two_linear_stars() {
        for d in 1..=8 {
            for side in [Side::Gw, Side::Pt] {
                let a = linear_star_series(side, d, 1, 10).unwrap();
                let glued = glue_degeneration(side, &[a.clone(), a.clone()], &PartitionVector::single(d)).unwrap();
                assert_eq!(glued, a, "d={d} {side}");
            }
        }
    }

    #[test]
    fn gluing_rejections_and_empty_mu() {
        let a = linear_star_series(Side::Gw, 1, 1, 4).unwrap();
        let b = linear_star_series(Side::Pt, 1, 1, 4).unwrap();
        assert!(matches!(glue_degeneration(Side::Gw, &[a.clone(), b], &PartitionVector::single(1)), Err(SeriesError::MixedSides { .. })));
        let plain = glue_degeneration(Side::Gw, &[a.clone(), a.clone()], &PartitionVector::default()).unwrap();
        assert_eq!(gw(&plain), &gw(&a).product(gw(&a)));
    }

    #[test]
    fn laurent_predicate() {
        assert!(is_laurent_polynomial(&"q + q^2".parse().unwrap()));
        assert!(is_laurent_polynomial(&"(q - q^3) / (1-(-q)^1)".parse().unwrap()));
        assert!(!is_laurent_polynomial(&"1 / (1-(-q)^1)".parse().unwrap()));
    }

    #[test]
    fn series_json_round_trip() {
        for s in [principal_series(Side::Gw, 3, 6).unwrap(), principal_series(Side::Pt, 3, 6).unwrap()] {
            let text = serde_json::to_string(&s).unwrap();
            let back: SideSeries = serde_json::from_str(&text).unwrap();
            assert_eq!(back, s);
        }
    }
}
