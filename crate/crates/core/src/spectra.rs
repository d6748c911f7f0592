//! Spectra of regular graphs and the discrepancy machinery built on
//! `delta(x) = |1 + x| - |x|`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, surd_abs, ExactValue, Rational, Surd};

/// Largest radius an approximate eigenvalue may carry in a decision.
pub const MAX_DECISION_RADIUS: f64 = 1e-6;

/// An eigenvalue known exactly or to within `radius`.
#[derive(Clone, Debug, PartialEq)]
pub enum Eig {
    Exact(Surd),
    Approx { value: f64, radius: f64 },
}

impl Eig {
    pub fn int(n: i64) -> Eig {
        Eig::Exact(Surd::integer(n))
    }

    pub fn approx(value: f64, radius: f64) -> Eig {
        Eig::Approx { value, radius }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Eig::Exact(s) => s.to_f64(),
            Eig::Approx { value, .. } => *value,
        }
    }

    pub fn radius(&self) -> f64 {
        match self {
            Eig::Exact(_) => 0.0,
            Eig::Approx { radius, .. } => *radius,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Eig::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Surd> {
        match self {
            Eig::Exact(s) => Some(s),
            Eig::Approx { .. } => None,
        }
    }

    /// `-1 - x` for loopless complements, `-x` otherwise.
    fn complemented(&self, loops: bool) -> Eig {
        let shift = if loops { 0 } else { -1 };
        match self {
            Eig::Exact(s) => Eig::Exact((-s.clone()).add_rational(&int(shift))),
            Eig::Approx { value, radius } => Eig::Approx {
                value: shift as f64 - value,
                radius: *radius,
            },
        }
    }

    /// Certified comparison against an integer; `None` when an interval
    /// contains the point.
    pub fn cmp_int(&self, t: i64) -> Option<Ordering> {
        match self {
            Eig::Exact(s) => Some(s.to_exact().cmp_rational(&int(t))),
            Eig::Approx { value, radius } => {
                let t = t as f64;
                if value - radius > t {
                    Some(Ordering::Greater)
                } else if value + radius < t {
                    Some(Ordering::Less)
                } else {
                    None
                }
            }
        }
    }

    /// Same value as `other` (exactly, or overlapping intervals).
    pub fn same_value(&self, other: &Eig) -> bool {
        match (self, other) {
            (Eig::Exact(a), Eig::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= self.radius() + other.radius(),
        }
    }
}

impl fmt::Display for Eig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eig::Exact(s) => s.fmt(f),
            Eig::Approx { value, radius } => write!(f, "{value:.12} +/- {radius:e}"),
        }
    }
}

/// Descending order; exact entries precede approximate entries of equal value.
fn eig_cmp_desc(a: &Eig, b: &Eig) -> Ordering {
    match (a, b) {
        (Eig::Exact(x), Eig::Exact(y)) => y.cmp(x),
        _ => b
            .to_f64()
            .partial_cmp(&a.to_f64())
            .unwrap_or(Ordering::Equal)
            .then_with(|| b.is_exact().cmp(&a.is_exact())),
    }
}

/// An exact value plus an approximate remainder: `exact + approx +/- radius`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Quantity {
    pub exact: ExactValue,
    pub approx: f64,
    pub radius: f64,
}

impl Quantity {
    pub fn exact(v: ExactValue) -> Quantity {
        Quantity {
            exact: v,
            approx: 0.0,
            radius: 0.0,
        }
    }

    pub fn integer(n: i64) -> Quantity {
        Quantity::exact(ExactValue::integer(n))
    }

    pub fn approx(value: f64, radius: f64) -> Quantity {
        Quantity {
            exact: ExactValue::zero(),
            approx: value,
            radius,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.approx == 0.0 && self.radius == 0.0
    }

    pub fn to_f64(&self) -> f64 {
        self.exact.to_f64() + self.approx
    }

    pub fn times(&self, m: u64) -> Quantity {
        Quantity {
            exact: self.exact.scale(&Rational::from_integer(BigInt::from(m))),
            approx: self.approx * m as f64,
            radius: self.radius * m as f64,
        }
    }

    pub fn plus(&self, other: &Quantity) -> Quantity {
        Quantity {
            exact: self.exact.clone() + other.exact.clone(),
            approx: self.approx + other.approx,
            radius: self.radius + other.radius,
        }
    }

    pub fn minus(&self, other: &Quantity) -> Quantity {
        Quantity {
            exact: self.exact.clone() - other.exact.clone(),
            approx: self.approx - other.approx,
            radius: self.radius + other.radius,
        }
    }

    /// Ordering when it can be certified.
    pub fn cmp_certified(&self, other: &Quantity) -> Option<Ordering> {
        let diff = self.minus(other);
        if diff.is_exact() {
            return Some(diff.exact.sign());
        }
        let v = diff.to_f64();
        // slack for the float evaluation of the exact part
        let r = diff.radius + 1e-12 * (1.0 + diff.exact.to_f64().abs());
        if v > r {
            Some(Ordering::Greater)
        } else if v < -r {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// Rendering with provenance: exact values as surd strings, otherwise
    /// the interval midpoint and radius.
    pub fn render(&self) -> String {
        if self.is_exact() {
            self.exact.to_string()
        } else {
            format!("{:.10} +/- {:e}", self.to_f64(), self.radius)
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A multiset of eigenvalues sorted descending; `principal` indexes the
/// entry holding the degree of a regular graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "SpectrumJson", try_from = "SpectrumJson")]
pub struct Spectrum {
    entries: Vec<(Eig, u64)>,
    n: u64,
    principal: usize,
}

impl Spectrum {
    /// Sorts, merges equal exact entries and takes the largest eigenvalue as
    /// principal (the degree of a regular graph is its spectral radius).
    pub fn new(entries: Vec<(Eig, u64)>) -> Result<Spectrum> {
        let mut entries: Vec<_> = entries.into_iter().filter(|(_, m)| *m > 0).collect();
        if entries.is_empty() {
            return Err(Error::InvalidParameter("empty spectrum".into()));
        }
        for (e, _) in &entries {
            if let Eig::Approx { value, radius } = e {
                if !value.is_finite() || radius.is_nan() || *radius < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "bad approximate eigenvalue {e}"
                    )));
                }
            }
        }
        entries.sort_by(|a, b| eig_cmp_desc(&a.0, &b.0));
        let mut merged: Vec<(Eig, u64)> = Vec::with_capacity(entries.len());
        for (e, m) in entries {
            match merged.last_mut() {
                Some((Eig::Exact(prev), pm)) if matches!(&e, Eig::Exact(x) if x == prev) => {
                    *pm += m
                }
                _ => merged.push((e, m)),
            }
        }
        let n = merged.iter().map(|(_, m)| m).sum();
        Ok(Spectrum {
            entries: merged,
            n,
            principal: 0,
        })
    }

    pub fn exact(entries: Vec<(Surd, u64)>) -> Spectrum {
        Spectrum::new(
            entries
                .into_iter()
                .map(|(s, m)| (Eig::Exact(s), m))
                .collect(),
        )
        .expect("nonempty exact spectrum")
    }

    /// Integer spectrum from `(value, multiplicity)` pairs.
    pub fn integral(entries: &[(i64, u64)]) -> Spectrum {
        Spectrum::exact(
            entries
                .iter()
                .map(|(v, m)| (Surd::integer(*v), *m))
                .collect(),
        )
    }

    /// Groups raw floating eigenvalues whose consecutive gaps are at most
    /// `merge_tol`; every entry gets `radius`.
    pub fn from_numeric(values: &[f64], merge_tol: f64, radius: f64) -> Result<Spectrum> {
        let mut v: Vec<f64> = values.to_vec();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
        let mut entries = Vec::new();
        let mut i = 0;
        while i < v.len() {
            let mut j = i + 1;
            while j < v.len() && v[j - 1] - v[j] <= merge_tol {
                j += 1;
            }
            let mean = v[i..j].iter().sum::<f64>() / (j - i) as f64;
            entries.push((Eig::approx(mean, radius), (j - i) as u64));
            i = j;
        }
        Spectrum::new(entries)
    }

    /// Moves the principal index to the entry holding `value`.
    pub fn with_principal(mut self, value: &Eig) -> Result<Spectrum> {
        self.principal = self
            .entries
            .iter()
            .position(|(e, _)| e.same_value(value))
            .ok_or_else(|| Error::InvalidParameter(format!("{value} is not an eigenvalue")))?;
        Ok(self)
    }

    pub fn entries(&self) -> &[(Eig, u64)] {
        &self.entries
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn principal(&self) -> usize {
        self.principal
    }

    pub fn principal_eig(&self) -> &Eig {
        &self.entries[self.principal].0
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|(e, _)| e.is_exact())
    }

    /// Multiplicity of an exact value (0 if absent).
    pub fn multiplicity(&self, x: &Surd) -> u64 {
        self.entries
            .iter()
            .filter(|(e, _)| matches!(e, Eig::Exact(y) if y == x))
            .map(|(_, m)| *m)
            .sum()
    }

    /// Replaces approximate entries lying within `tol` of an integer by that
    /// integer and re-merges.
    pub fn snap_integers(&self, tol: f64) -> Spectrum {
        let entries = self
            .entries
            .iter()
            .map(|(e, m)| match e {
                Eig::Approx { value, .. } if (value - value.round()).abs() <= tol => {
                    (Eig::int(value.round() as i64), *m)
                }
                _ => (e.clone(), *m),
            })
            .collect();
        let principal = self.principal_eig().clone();
        let out = Spectrum::new(entries).expect("nonempty");
        let p = match &principal {
            Eig::Approx { value, .. } if (value - value.round()).abs() <= tol => {
                Eig::int(value.round() as i64)
            }
            _ => principal,
        };
        out.with_principal(&p).expect("principal survives snapping")
    }

    /// All eigenvalues with repetition, descending, as floats.
    pub fn expanded_f64(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|(e, m)| std::iter::repeat_n(e.to_f64(), *m as usize))
            .collect()
    }

    /// Same grouping (entry count and multiplicities) with values within `tol`.
    pub fn matches(&self, other: &Spectrum, tol: f64) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|((a, ma), (b, mb))| {
                    ma == mb
                        && match (a, b) {
                            (Eig::Exact(x), Eig::Exact(y)) => x == y,
                            _ => (a.to_f64() - b.to_f64()).abs() <= tol,
                        }
                })
    }

    /// Sum of `mult * lambda^power` as a float.
    pub fn moment(&self, power: i32) -> f64 {
        self.entries
            .iter()
            .map(|(e, m)| *m as f64 * e.to_f64().powi(power))
            .sum()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("spectrum serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Spectrum> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }
}

impl FromStr for Spectrum {
    type Err = Error;
    /// Exact entries `value^mult` separated by commas, as printed by
    /// `Display`; values may be wrapped in `[..]` or `(..)`.
    fn from_str(text: &str) -> Result<Spectrum> {
        let body = text.trim();
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .unwrap_or(body);
        let mut entries = Vec::new();
        let mut col = 1 + text.find(body).unwrap_or(0);
        for item in body.split(',') {
            let lead = item.len() - item.trim_start().len();
            let t = item.trim();
            let (value, mult) = match t.rsplit_once('^') {
                Some((v, m)) => {
                    let m = m.trim().parse::<u64>().map_err(|_| {
                        Error::parse(
                            1,
                            col + lead + v.len() + 1,
                            format!("bad multiplicity `{}`", m.trim()),
                        )
                    })?;
                    (v.trim(), m)
                }
                None => (t, 1),
            };
            let inner = value
                .strip_prefix('[')
                .and_then(|v| v.strip_suffix(']'))
                .or_else(|| value.strip_prefix('(').and_then(|v| v.strip_suffix(')')))
                .unwrap_or(value);
            let surd: Surd = inner.parse().map_err(|e| match e {
                Error::Parse { column, msg, .. } => Error::parse(1, col + lead + column, msg),
                other => other,
            })?;
            if mult == 0 {
                return Err(Error::parse(1, col + lead, "multiplicity must be positive"));
            }
            entries.push((surd, mult));
            col += item.len() + 1;
        }
        Ok(Spectrum::exact(entries))
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (e, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if *m == 1 {
                write!(f, "[{e}]")?;
            } else {
                write!(f, "[{e}]^{m}")?;
            }
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct SpectrumJson {
    n: u64,
    entries: Vec<EntryJson>,
    principal: usize,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    value: ValueJson,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ValueJson {
    Exact(String),
    Approx { approx: f64, radius: f64 },
}

impl From<Spectrum> for SpectrumJson {
    fn from(s: Spectrum) -> SpectrumJson {
        SpectrumJson {
            n: s.n,
            principal: s.principal,
            entries: s
                .entries
                .into_iter()
                .map(|(e, mult)| EntryJson {
                    value: match e {
                        Eig::Exact(x) => ValueJson::Exact(x.to_string()),
                        Eig::Approx { value, radius } => ValueJson::Approx {
                            approx: value,
                            radius,
                        },
                    },
                    mult,
                })
                .collect(),
        }
    }
}

impl TryFrom<SpectrumJson> for Spectrum {
    type Error = Error;
    fn try_from(j: SpectrumJson) -> Result<Spectrum> {
        let mut raw = Vec::with_capacity(j.entries.len());
        for e in j.entries {
            let eig = match e.value {
                ValueJson::Exact(text) => Eig::Exact(text.parse()?),
                ValueJson::Approx { approx, radius } => Eig::approx(approx, radius),
            };
            raw.push((eig, e.mult));
        }
        let principal = raw
            .get(j.principal)
            .map(|(e, _)| e.clone())
            .ok_or_else(|| {
                Error::InvalidParameter(format!("principal index {} out of range", j.principal))
            })?;
        let s = Spectrum::new(raw)?.with_principal(&principal)?;
        if s.n != j.n {
            return Err(Error::InvalidParameter(format!(
                "multiplicities sum to {} but n = {}",
                s.n, j.n
            )));
        }
        Ok(s)
    }
}

/// Where an eigenvalue sits relative to the branch points of delta.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Region {
    AtLeastOne,
    OpenZeroOne,
    Zero,
    OpenMinusOneZero,
    AtMostMinusOne,
}

fn region(x: &Eig, assume_exact: bool) -> Result<Region> {
    if let Eig::Approx { value, radius } = x {
        if *radius > MAX_DECISION_RADIUS {
            return Err(Error::InvalidParameter(format!(
                "radius {radius:e} of {value} exceeds {MAX_DECISION_RADIUS:e}"
            )));
        }
    }
    let straddle = || {
        let (v, r) = (x.to_f64(), x.radius());
        Error::UncertifiableBranch {
            lo: v - r,
            hi: v + r,
        }
    };
    let c1 = x.cmp_int(1);
    let c0 = x.cmp_int(0);
    let cm1 = x.cmp_int(-1);
    Ok(match (c1, c0, cm1) {
        (Some(Ordering::Greater | Ordering::Equal), _, _) => Region::AtLeastOne,
        // an interval around 1 is a nonnegative value either way
        (None, Some(Ordering::Greater), _) => Region::AtLeastOne,
        (_, Some(Ordering::Greater), _) => Region::OpenZeroOne,
        (_, Some(Ordering::Equal), _) => Region::Zero,
        (_, None, _) if assume_exact => Region::Zero,
        (_, None, _) => return Err(straddle()),
        (_, Some(Ordering::Less), Some(Ordering::Greater)) => Region::OpenMinusOneZero,
        (_, Some(Ordering::Less), Some(Ordering::Less | Ordering::Equal)) => Region::AtMostMinusOne,
        (_, Some(Ordering::Less), None) if assume_exact => Region::AtMostMinusOne,
        (_, Some(Ordering::Less), None) => return Err(straddle()),
    })
}

fn two_x_plus_one(x: &Eig) -> Quantity {
    match x {
        Eig::Exact(s) => Quantity::exact(s.scale(&int(2)).add_rational(&int(1)).to_exact()),
        Eig::Approx { value, radius } => Quantity::approx(2.0 * value + 1.0, 2.0 * radius),
    }
}

/// `delta(x) = |1 + x| - |x|`.
pub fn delta_of(x: &Eig) -> Result<Quantity> {
    delta_of_with(x, false)
}

/// `delta_of`, optionally snapping intervals that straddle -1 or 0 onto
/// the branch point.
pub fn delta_of_with(x: &Eig, assume_exact: bool) -> Result<Quantity> {
    Ok(match region(x, assume_exact)? {
        Region::AtLeastOne | Region::OpenZeroOne | Region::Zero => Quantity::integer(1),
        Region::OpenMinusOneZero => two_x_plus_one(x),
        Region::AtMostMinusOne => Quantity::integer(-1),
    })
}

/// The decomposition `delta_total = sigma + t + m0 + s` over the spectrum
/// with one copy of the degree removed.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscrepancyBreakdown {
    pub sigma: i64,
    pub t: u64,
    pub m0: u64,
    pub s: Quantity,
    pub delta_total: Quantity,
}

/// Entries of the spectrum with one copy of the principal eigenvalue removed.
fn reduced(s: &Spectrum) -> impl Iterator<Item = (&Eig, u64)> {
    s.entries.iter().enumerate().filter_map(move |(i, (e, m))| {
        let m = if i == s.principal { m - 1 } else { *m };
        (m > 0).then_some((e, m))
    })
}

pub fn discrepancy(s: &Spectrum) -> Result<DiscrepancyBreakdown> {
    discrepancy_with(s, false)
}

pub fn discrepancy_with(s: &Spectrum, assume_exact: bool) -> Result<DiscrepancyBreakdown> {
    let mut sigma = 0i64;
    let mut t = 0u64;
    let mut m0 = 0u64;
    let mut ssum = Quantity::default();
    let mut direct = Quantity::default();
    for (e, m) in reduced(s) {
        match region(e, assume_exact)? {
            Region::AtLeastOne => sigma += m as i64,
            Region::AtMostMinusOne => sigma -= m as i64,
            Region::OpenZeroOne => t += m,
            Region::Zero => m0 += m,
            Region::OpenMinusOneZero => ssum = ssum.plus(&two_x_plus_one(e).times(m)),
        }
        direct = direct.plus(&delta_of_with(e, assume_exact)?.times(m));
    }
    let total = Quantity::integer(sigma + t as i64 + m0 as i64).plus(&ssum);
    debug_assert_eq!(
        total.cmp_certified(&direct).unwrap_or(Ordering::Equal),
        Ordering::Equal
    );
    Ok(DiscrepancyBreakdown {
        sigma,
        t,
        m0,
        s: ssum,
        delta_total: total,
    })
}

/// `sum mult * |lambda|`; approximate entries contribute to the radius.
pub fn energy(s: &Spectrum) -> Quantity {
    let mut acc = Quantity::default();
    for (e, m) in &s.entries {
        let term = match e {
            Eig::Exact(x) => Quantity::exact(surd_abs(x).to_exact()),
            Eig::Approx { value, radius } => Quantity::approx(value.abs(), *radius),
        };
        acc = acc.plus(&term.times(*m));
    }
    acc
}

/// Spectrum of the complement of a `k`-regular graph. Loopless: `J - I - A`,
/// principal `n - k - 1`, the rest `-1 - lambda`. With loops: `J - A`,
/// principal `n - k`, the rest `-lambda`.
pub fn complement_spectrum(s: &Spectrum, k: i64, loops: bool) -> Spectrum {
    let kbar = s.n as i64 - k - i64::from(!loops);
    let mut entries: Vec<(Eig, u64)> = reduced(s)
        .map(|(e, m)| (e.complemented(loops), m))
        .collect();
    entries.push((Eig::int(kbar), 1));
    Spectrum::new(entries)
        .and_then(|sp| sp.with_principal(&Eig::int(kbar)))
        .expect("complement spectrum is nonempty")
}

/// Outcome of the equienergy test.
#[derive(Clone, Debug, PartialEq)]
pub struct EquienReport {
    pub equal: bool,
    pub n: u64,
    pub k: i64,
    pub loops: bool,
    pub delta: Option<DiscrepancyBreakdown>,
    pub energy: Quantity,
    pub energy_complement: Quantity,
}

pub fn check_equienergetic(s: &Spectrum, k: i64, loops: bool) -> Result<EquienReport> {
    check_equienergetic_with(s, k, loops, false)
}

/// Decides `E(G) = E(complement)` from `n = 2k + 1 - Delta` (loopless) or
/// `n = 2k` (with loops, where the complement is `J - A`), and cross-checks against the energies of the
/// spectrum and of its complement.
pub fn check_equienergetic_with(
    s: &Spectrum,
    k: i64,
    loops: bool,
    assume_exact: bool,
) -> Result<EquienReport> {
    match s.principal_eig().cmp_int(k) {
        Some(Ordering::Equal) | None => {}
        _ => {
            return Err(Error::InvalidParameter(format!(
                "principal eigenvalue {} is not the degree {k}",
                s.principal_eig()
            )))
        }
    }
    let n = s.n as i64;
    let target = 2 * k + 1 - n;
    let (equal, delta) = if loops {
        (2 * k == n, None)
    } else {
        let b = discrepancy_with(s, assume_exact)?;
        let equal = match b.delta_total.cmp_certified(&Quantity::integer(target)) {
            Some(o) => o == Ordering::Equal,
            None => {
                let (v, r) = (b.delta_total.to_f64(), b.delta_total.radius);
                return Err(Error::UncertifiableBranch {
                    lo: v - r,
                    hi: v + r,
                });
            }
        };
        (equal, Some(b))
    };
    let e = energy(s);
    let ebar = energy(&complement_spectrum(s, k, loops));
    if let Some(o) = e.cmp_certified(&ebar) {
        if (o == Ordering::Equal) != equal {
            return Err(Error::RouteDisagreement(format!(
                "criterion says {equal} but energies are {e} and {ebar}"
            )));
        }
    }
    Ok(EquienReport {
        equal,
        n: s.n,
        k,
        loops,
        delta,
        energy: e,
        energy_complement: ebar,
    })
}

/// Combinatorial shape of a spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumFlags {
    pub integral: bool,
    pub symmetric: bool,
    pub almost_symmetric: bool,
}

fn mult_of(s: &Spectrum, x: &Eig) -> u64 {
    s.entries
        .iter()
        .filter(|(e, _)| e.same_value(x))
        .map(|(_, m)| *m)
        .sum()
}

fn negated(x: &Eig) -> Eig {
    match x {
        Eig::Exact(v) => Eig::Exact(-v.clone()),
        Eig::Approx { value, radius } => Eig::approx(-value, *radius),
    }
}

pub fn classify_spectrum(s: &Spectrum) -> SpectrumFlags {
    let integral = s
        .entries
        .iter()
        .all(|(e, _)| matches!(e, Eig::Exact(x) if x.is_integer()));
    let balanced = |skip_principal: bool| {
        s.entries.iter().enumerate().all(|(i, (e, m))| {
            (skip_principal && i == s.principal) || *m == mult_of(s, &negated(e))
        })
    };
    SpectrumFlags {
        integral,
        symmetric: balanced(false),
        almost_symmetric: balanced(true),
    }
}

/// An exact irrational eigenvalue strictly between -1 and 0 rules out equal
/// energies.
pub fn has_irrational_in_minus_one_zero(s: &Spectrum) -> bool {
    s.entries.iter().any(|(e, _)| match e {
        Eig::Exact(x) => {
            !x.is_rational()
                && x.to_exact().cmp_rational(&int(-1)) == Ordering::Greater
                && x.signum() == Ordering::Less
        }
        Eig::Approx { .. } => false,
    })
}

/// Sum of `mult * lambda` over exact entries (zero for loopless graphs).
pub fn exact_trace(s: &Spectrum) -> Option<ExactValue> {
    let mut acc = ExactValue::zero();
    for (e, m) in &s.entries {
        let x = e.as_exact()?;
        acc = acc
            + x.to_exact()
                .scale(&Rational::from_integer(BigInt::from(*m)));
    }
    Some(acc)
}

/// Integer value of an exact quantity, if it is one.
pub fn as_i64(q: &Quantity) -> Option<i64> {
    if !q.is_exact() {
        return None;
    }
    q.exact.as_integer().and_then(|b| b.to_i64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn golden(sign: i64, d: u64) -> Surd {
        Surd::new(rat(-1, 2), rat(sign, 2), d)
    }

    #[test]
    fn text_form() {
        let s: Spectrum = "3, (-1 + sqrt(2))^6, 2^8, (-1)^7, (-1 - sqrt(2))^6"
            .parse()
            .unwrap();
        assert_eq!(s.n(), 28);
        assert_eq!(s.to_string().parse::<Spectrum>().unwrap(), s);
        assert_eq!(
            "{[2], [-1/2 + 1/2*sqrt(5)]^2, [-1/2 - 1/2*sqrt(5)]^2}"
                .parse::<Spectrum>()
                .unwrap(),
            Spectrum::exact(vec![
                (Surd::integer(2), 1),
                (golden(1, 5), 2),
                (golden(-1, 5), 2),
            ])
        );
        assert!(matches!(
            "3, 1^x".parse::<Spectrum>(),
            Err(Error::Parse { column: 6, .. })
        ));
        assert!(matches!(
            "3, 1^0".parse::<Spectrum>(),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn delta_branches() {
        assert_eq!(delta_of(&Eig::int(3)).unwrap(), Quantity::integer(1));
        assert_eq!(delta_of(&Eig::int(-2)).unwrap(), Quantity::integer(-1));
        assert_eq!(
            delta_of(&Eig::Exact(golden(1, 5))).unwrap(),
            Quantity::integer(1)
        );
        assert_eq!(
            delta_of(&Eig::Exact(Surd::rational(rat(-1, 4)))).unwrap(),
            Quantity::exact(ExactValue::rational(rat(1, 2)))
        );
        assert!(matches!(
            delta_of(&Eig::approx(-1.0, 1e-8)),
            Err(Error::UncertifiableBranch { .. })
        ));
        assert_eq!(
            delta_of_with(&Eig::approx(-1.0, 1e-8), true).unwrap(),
            Quantity::integer(-1)
        );
        assert_eq!(
            delta_of(&Eig::approx(0.8794, 1e-10)).unwrap(),
            Quantity::integer(1)
        );
        assert!(delta_of(&Eig::approx(0.5, 1e-3)).is_err());
    }

    #[test]
    fn discrepancy_examples() {
        let crown3 = Spectrum::integral(&[(2, 1), (1, 2), (-1, 2), (-2, 1)]);
        assert_eq!(
            discrepancy(&crown3).unwrap().delta_total,
            Quantity::integer(-1)
        );
        let k33 = Spectrum::integral(&[(3, 1), (0, 4), (-3, 1)]);
        let b = discrepancy(&k33).unwrap();
        assert_eq!(b.delta_total, Quantity::integer(3));
        assert_eq!((b.m0, b.sigma), (4, -1));
        // K_{3x2}: 4, 0^3, (-2)^2
        let k32 = Spectrum::integral(&[(4, 1), (0, 3), (-2, 2)]);
        assert_eq!(discrepancy(&k32).unwrap().delta_total, Quantity::integer(1));
        // 2K_2 has the degree twice; only one copy leaves
        let two_k2 = Spectrum::integral(&[(1, 2), (-1, 2)]);
        assert_eq!(
            discrepancy(&two_k2).unwrap().delta_total,
            Quantity::integer(-1)
        );
    }

    #[test]
    fn energies() {
        let q3 = Spectrum::integral(&[(3, 1), (1, 3), (-1, 3), (-3, 1)]);
        assert_eq!(energy(&q3), Quantity::integer(12));
        let prism = Spectrum::integral(&[(3, 1), (1, 1), (0, 2), (-2, 2)]);
        assert_eq!(energy(&prism), Quantity::integer(8));
        let shr = Spectrum::integral(&[(6, 1), (2, 6), (-2, 9)]);
        assert_eq!(energy(&shr), Quantity::integer(36));
    }

    #[test]
    fn complements() {
        let cr2 = Spectrum::integral(&[(1, 2), (-1, 2)]);
        assert_eq!(
            complement_spectrum(&cr2, 1, false),
            Spectrum::integral(&[(2, 1), (0, 2), (-2, 1)])
        );
        let k22 = Spectrum::integral(&[(2, 1), (0, 2), (-2, 1)]);
        assert_eq!(complement_spectrum(&k22, 2, false), cr2);
        let q3 = Spectrum::integral(&[(3, 1), (1, 3), (-1, 3), (-3, 1)]);
        let qbar = complement_spectrum(&q3, 3, false);
        assert_eq!(qbar, Spectrum::integral(&[(4, 1), (2, 1), (0, 3), (-2, 3)]));
        assert_eq!(complement_spectrum(&qbar, 4, false), q3);
        let looped = Spectrum::integral(&[(3, 1), (1, 2), (-1, 2)]);
        assert_eq!(
            complement_spectrum(&looped, 3, true),
            Spectrum::integral(&[(2, 1), (1, 2), (-1, 2)])
        );
    }

    #[test]
    fn equienergy_examples() {
        let q3 = Spectrum::integral(&[(3, 1), (1, 3), (-1, 3), (-3, 1)]);
        let r = check_equienergetic(&q3, 3, false).unwrap();
        assert!(r.equal);
        assert_eq!(r.energy, Quantity::integer(12));
        assert_eq!(r.energy_complement, Quantity::integer(12));
        let k4 = Spectrum::integral(&[(3, 1), (-1, 3)]);
        let r = check_equienergetic(&k4, 3, false).unwrap();
        assert!(!r.equal);
        assert_eq!(r.delta.unwrap().delta_total, Quantity::integer(-3));
        let petersen = Spectrum::integral(&[(3, 1), (1, 5), (-2, 4)]);
        assert!(!check_equienergetic(&petersen, 3, false).unwrap().equal);
        let c5 = Spectrum::exact(vec![
            (Surd::integer(2), 1),
            (golden(1, 5), 2),
            (golden(-1, 5), 2),
        ]);
        assert!(check_equienergetic(&c5, 2, false).unwrap().equal);
        assert!(check_equienergetic(&c5, 3, false).is_err());
    }

    #[test]
    fn flags() {
        let k33 = Spectrum::integral(&[(3, 1), (0, 4), (-3, 1)]);
        let f = classify_spectrum(&k33);
        assert!(f.integral && f.symmetric && f.almost_symmetric);
        let petersen = Spectrum::integral(&[(3, 1), (1, 5), (-2, 4)]);
        let f = classify_spectrum(&petersen);
        assert!(f.integral && !f.symmetric && !f.almost_symmetric);
        let c5 = Spectrum::exact(vec![
            (Surd::integer(2), 1),
            (golden(1, 5), 2),
            (golden(-1, 5), 2),
        ]);
        assert!(!classify_spectrum(&c5).integral);
        let sas = Spectrum::integral(&[(4, 1), (1, 2), (-1, 2)]);
        let f = classify_spectrum(&sas);
        assert!(!f.symmetric && f.almost_symmetric);
    }

    #[test]
    fn irrational_in_open_unit() {
        let coxeter_like = Spectrum::exact(vec![
            (Surd::integer(3), 1),
            (Surd::new(int(1), int(-1), 2), 6),
            (Surd::new(int(1), int(1), 2), 6),
        ]);
        assert!(has_irrational_in_minus_one_zero(&coxeter_like));
        assert!(!has_irrational_in_minus_one_zero(&Spectrum::integral(&[
            (3, 1),
            (-1, 3)
        ])));
    }

    #[test]
    fn json_round_trip() {
        let c5 = Spectrum::exact(vec![
            (Surd::integer(2), 1),
            (golden(1, 5), 2),
            (golden(-1, 5), 2),
        ]);
        let text = c5.to_json_string();
        assert_eq!(
            text,
            r#"{"n":5,"entries":[{"value":"2","mult":1},{"value":"-1/2 + 1/2*sqrt(5)","mult":2},{"value":"-1/2 - 1/2*sqrt(5)","mult":2}],"principal":0}"#
        );
        assert_eq!(Spectrum::from_json_str(&text).unwrap(), c5);
        let mixed = Spectrum::new(vec![(Eig::int(3), 1), (Eig::approx(0.879, 1e-10), 2)]).unwrap();
        assert_eq!(
            Spectrum::from_json_str(&mixed.to_json_string()).unwrap(),
            mixed
        );
        let bad = r#"{"n": 4, "entries": [{"value": "2", "mult": 1}], "principal": 0}"#;
        assert!(Spectrum::from_json_str(bad).is_err());
        assert!(matches!(
            Spectrum::from_json_str("{\n  \"n\": }"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn sorting_puts_exact_first_on_ties() {
        let s = Spectrum::new(vec![
            (Eig::approx(1.0, 1e-9), 1),
            (Eig::int(1), 1),
            (Eig::int(2), 1),
        ])
        .unwrap();
        assert!(s.entries()[1].0.is_exact());
        assert!(!s.entries()[2].0.is_exact());
    }

    fn arb_exact() -> impl Strategy<Value = Surd> {
        (
            -40i64..40,
            1i64..8,
            -20i64..20,
            1i64..8,
            prop::sample::select(vec![1u64, 2, 3, 5, 13, 17]),
        )
            .prop_map(|(an, ad, bn, bd, d)| Surd::new(rat(an, ad), rat(bn, bd), d))
    }

    /// Random spectrum shaped like a 10-regular graph with at least 11
    /// vertices, so the complement degree is nonnegative.
    fn arb_spectrum() -> impl Strategy<Value = Spectrum> {
        proptest::collection::vec((-9i64..10, 1u64..4), 1..6).prop_map(|v| {
            let mut e = vec![(Surd::integer(10), 1), (Surd::integer(-1), 10)];
            e.extend(
                v.into_iter()
                    .map(|(x, m)| (Surd::new(rat(x, 3), int(0), 1), m)),
            );
            Spectrum::exact(e)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn delta_matches_definition(x in arb_exact()) {
            let via_abs = surd_abs(&x.add_rational(&int(1))).to_exact() - surd_abs(&x).to_exact();
            prop_assert_eq!(delta_of(&Eig::Exact(x)).unwrap(), Quantity::exact(via_abs));
        }
    }

    proptest! {
        #[test]
        fn complement_is_involution(s in arb_spectrum()) {
            let c = complement_spectrum(&s, 10, false);
            let k = s.n() as i64 - 11;
            prop_assert_eq!(complement_spectrum(&c, k, false), s);
        }

        #[test]
        fn criterion_agrees_with_energies(s in arb_spectrum()) {
            let r = check_equienergetic(&s, 10, false).unwrap();
            let direct = energy(&s).exact == energy(&complement_spectrum(&s, 10, false)).exact;
            prop_assert_eq!(r.equal, direct);
        }

        #[test]
        fn integral_breakdown(v in proptest::collection::vec((-9i64..10, 1u64..4), 1..6)) {
            let mut e = vec![(10i64, 1u64)];
            e.extend(v);
            let s = Spectrum::integral(&e);
            let b = discrepancy(&s).unwrap();
            prop_assert_eq!(b.delta_total, Quantity::integer(b.m0 as i64 + b.sigma));
            // make it symmetric: integral bipartite gives m0 - 1
            let mut sym: Vec<(i64, u64)> = Vec::new();
            for (x, m) in &e {
                sym.push((*x, *m));
                if *x != 0 { sym.push((-x, *m)); }
            }
            let s = Spectrum::integral(&sym);
            let b = discrepancy(&s).unwrap();
            prop_assert_eq!(b.delta_total, Quantity::integer(b.m0 as i64 - 1));
        }
    }
}
