//! Parameter algebra for strongly regular graphs `srg(n, k, e, d)`: exact
//! eigen-data, the equienergy condition, the three-way classification of
//! equienergetic tuples, parameter families, and bounded enumeration.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{exact_sqrt, int, surd_abs, ExactValue, Rational, Surd};
use crate::graphs::{is_prime, prime_power};
use crate::spectra::{check_equienergetic, Spectrum};

/// `(n, k, e, d)`: `n` vertices, degree `k`, `e` common neighbours of
/// adjacent pairs and `d` of non-adjacent pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SrgParams {
    pub n: u64,
    pub k: u64,
    pub e: u64,
    pub d: u64,
}

impl SrgParams {
    pub const fn new(n: u64, k: u64, e: u64, d: u64) -> SrgParams {
        SrgParams { n, k, e, d }
    }

    fn signed(&self) -> (i128, i128, i128, i128) {
        (
            self.n as i128,
            self.k as i128,
            self.e as i128,
            self.d as i128,
        )
    }

    /// `k(k - e - 1) = d(n - k - 1)` with `0 < k < n - 1`, `e < k`, `d <= k`.
    pub fn satisfies_identity(&self) -> bool {
        let (n, k, e, d) = self.signed();
        0 < k && k < n - 1 && e < k && d <= k && k * (k - e - 1) == d * (n - k - 1)
    }

    pub fn alpha(&self) -> i128 {
        let (_, k, e, d) = self.signed();
        (e - d) * (e - d) + 4 * (k - d)
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "srg({},{},{},{})", self.n, self.k, self.e, self.d)
    }
}

impl FromStr for SrgParams {
    type Err = Error;
    /// Accepts `n,k,e,d`, optionally wrapped as `srg(...)`.
    fn from_str(s: &str) -> Result<SrgParams> {
        let body = s.trim();
        let body = body
            .strip_prefix("srg(")
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let mut v = Vec::new();
        let mut col = 1 + s.find(body).unwrap_or(0);
        for part in body.split(',') {
            let t = part.trim();
            let x: u64 = t.parse().map_err(|_| {
                Error::parse(
                    1,
                    col,
                    format!("expected a nonnegative integer, found `{t}`"),
                )
            })?;
            v.push(x);
            col += part.len() + 1;
        }
        match v[..] {
            [n, k, e, d] => Ok(SrgParams::new(n, k, e, d)),
            _ => Err(Error::parse(
                1,
                1,
                format!("expected four values n,k,e,d, found {}", v.len()),
            )),
        }
    }
}

/// Exact eigenvalues `r > s` and their multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct SrgEigenData {
    pub alpha: u64,
    pub r: Surd,
    pub s: Surd,
    pub m_r: Rational,
    pub m_s: Rational,
    pub conference: bool,
}

fn big(x: i128) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn to_u64(r: &Rational) -> Option<u64> {
    r.is_integer().then(|| r.to_integer().to_u64()).flatten()
}

pub fn eigen_data(p: &SrgParams) -> Result<SrgEigenData> {
    if !p.satisfies_identity() {
        return Err(Error::Infeasible(format!(
            "{p} violates k(k-e-1) = d(n-k-1) or the degree bounds"
        )));
    }
    let (n, k, e, d) = p.signed();
    complement_params(p)?;
    let alpha = p.alpha();
    if alpha <= 0 {
        return Err(Error::Infeasible(format!("{p} has alpha = {alpha}")));
    }
    let alpha = alpha as u64;
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let r = Surd::new(big(e - d) * &half, half.clone(), alpha);
    let s = Surd::new(big(e - d) * &half, -half.clone(), alpha);
    let num = 2 * k + (n - 1) * (e - d);
    let mid = big(n - 1) * &half;
    let (m_r, m_s, conference) = match exact_sqrt(alpha) {
        Some(root) => {
            let shift = big(num) / big(2 * root as i128);
            let (m_r, m_s) = (&mid - &shift, &mid + &shift);
            let ok = |m: &Rational| m.is_integer() && !m.is_negative();
            if !ok(&m_r) || !ok(&m_s) {
                return Err(Error::Infeasible(format!(
                    "{p} has multiplicities {m_r} and {m_s}"
                )));
            }
            (m_r, m_s, false)
        }
        None => {
            if num != 0 || n != 4 * d + 1 || k != 2 * d || e != d - 1 {
                return Err(Error::Infeasible(format!(
                    "{p} has irrational multiplicities"
                )));
            }
            (mid.clone(), mid, true)
        }
    };
    Ok(SrgEigenData {
        alpha,
        r,
        s,
        m_r,
        m_s,
        conference,
    })
}

pub fn is_feasible(p: &SrgParams) -> bool {
    eigen_data(p).is_ok()
}

/// The exact spectrum `{k, r^{m_r}, s^{m_s}}`.
pub fn srg_spectrum(p: &SrgParams) -> Result<Spectrum> {
    let ed = eigen_data(p)?;
    let m = |x: &Rational| to_u64(x).expect("feasible multiplicities are integers");
    let entries = [
        (Surd::integer(p.k as i64), 1),
        (ed.r.clone(), m(&ed.m_r)),
        (ed.s.clone(), m(&ed.m_s)),
    ];
    Ok(Spectrum::exact(
        entries.into_iter().filter(|(_, m)| *m > 0).collect(),
    ))
}

/// `(n, n-k-1, n-2-2k+d, n-2k+e)`.
pub fn complement_params(p: &SrgParams) -> Result<SrgParams> {
    let (n, k, e, d) = p.signed();
    let (kb, eb, db) = (n - k - 1, n - 2 - 2 * k + d, n - 2 * k + e);
    if kb < 0 || eb < 0 || db < 0 {
        return Err(Error::Infeasible(format!(
            "complement of {p} has a negative parameter"
        )));
    }
    Ok(SrgParams::new(p.n, kb as u64, eb as u64, db as u64))
}

/// Connected with a connected complement.
pub fn is_primitive(p: &SrgParams) -> bool {
    p.d >= 1 && p.k > p.d && complement_params(p).is_ok_and(|c| c.d >= 1)
}

/// `(4d+1, 2d, d-1, d)` with `d >= 1`.
pub fn is_conference(p: &SrgParams) -> bool {
    p.d >= 1 && p.n == 4 * p.d + 1 && p.k == 2 * p.d && p.e + 1 == p.d
}

/// `OA(n, m)` parameters: `srg(n^2, m(n-1), m^2-3m+n, m(m-1))`.
pub fn oa_tuple(n: u64, m: u64) -> Option<SrgParams> {
    let e = (m * m + n).checked_sub(3 * m)?;
    Some(SrgParams::new(
        n * n,
        m * (n.checked_sub(1)?),
        e,
        m * m.checked_sub(1)?,
    ))
}

/// `(n_oa, m_oa)` when the tuple has orthogonal-array parameters.
pub fn oa_params(p: &SrgParams) -> Option<(u64, u64)> {
    let root = exact_sqrt(p.n)?;
    if root < 2 || !p.k.is_multiple_of(root - 1) {
        return None;
    }
    let m = p.k / (root - 1);
    (m >= 1 && oa_tuple(root, m) == Some(*p)).then_some((root, m))
}

/// Both decision routes for `E = E(complement)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SrgVerdict {
    pub equal: bool,
    /// `Delta = m_r - m_s = -(2k + (n-1)(e-d)) / sqrt(alpha)`.
    pub delta: ExactValue,
    /// `2k + 1 - n`.
    pub target: i64,
}

/// Tests `n = 2k(sqrt(alpha)+1)/(sqrt(alpha)-(e-d)) + 1` exactly, and
/// independently `Delta = 2k + 1 - n` through the spectrum.
pub fn equien_verdict(p: &SrgParams) -> Result<SrgVerdict> {
    let ed = eigen_data(p)?;
    let (n, k, e, d) = p.signed();
    let root = Surd::sqrt(ed.alpha).to_exact();
    // (n - 1)(sqrt(alpha) - (e - d)) = 2k(sqrt(alpha) + 1)
    let lhs = (root.clone() - ExactValue::rational(big(e - d))).scale(&big(n - 1));
    let rhs = (root.clone() + ExactValue::integer(1)).scale(&big(2 * k));
    let closed = lhs == rhs;
    let spectral = check_equienergetic(&srg_spectrum(p)?, k as i64, false)?;
    let delta = ExactValue::rational(&ed.m_r - &ed.m_s);
    let from_formula = match exact_sqrt(ed.alpha) {
        Some(r) => ExactValue::rational(big(-(2 * k + (n - 1) * (e - d))) / big(r as i128)),
        None => ExactValue::zero(),
    };
    let via_spectrum = spectral.delta.as_ref().map(|b| b.delta_total.exact.clone());
    if closed != spectral.equal || delta != from_formula || via_spectrum.as_ref() != Some(&delta) {
        return Err(Error::RouteDisagreement(format!(
            "{p}: closed form says {closed}, spectrum says {}, Delta {delta} vs {from_formula}",
            spectral.equal
        )));
    }
    Ok(SrgVerdict {
        equal: closed,
        delta,
        target: (2 * k + 1 - n) as i64,
    })
}

pub fn equien_condition(p: &SrgParams) -> Result<bool> {
    Ok(equien_verdict(p)?.equal)
}

/// Outcome of the classification of equienergetic tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EquienClass {
    NotEquien,
    /// `(4d+1, 2d, d-1, d)`.
    Conference(u64),
    /// `n = 4l^2`, `sqrt(alpha) = 2l`, `e - d = 2h`.
    CaseB(i64, i64),
    /// `n = (2l+1)^2`, `sqrt(alpha) = 2l+1`, `e - d = 2h - 1`, `h != 0`.
    CaseC(i64, i64),
}

impl fmt::Display for EquienClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquienClass::NotEquien => f.write_str("none"),
            EquienClass::Conference(d) => write!(f, "Conference({d})"),
            EquienClass::CaseB(h, l) => write!(f, "CaseB(h={h},l={l})"),
            EquienClass::CaseC(h, l) => write!(f, "CaseC(h={h},l={l})"),
        }
    }
}

impl EquienClass {
    /// The excluded-value constraints on `(h, l)`.
    pub fn check_constraints(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            EquienClass::NotEquien => bad("no parameters for NotEquien".into()),
            EquienClass::Conference(0) => bad("conference needs d >= 1".into()),
            EquienClass::Conference(_) => Ok(()),
            EquienClass::CaseB(h, l) => {
                if [h, -h, h + 1, -(h + 1)].contains(&l) {
                    bad(format!(
                        "CaseB excludes l in {{+-h, +-(h+1)}}: h={h}, l={l}"
                    ))
                } else {
                    Ok(())
                }
            }
            EquienClass::CaseC(h, l) => {
                if h == 0 || [h, -h, -(h + 1), h - 1].contains(&l) {
                    bad(format!(
                        "CaseC excludes h = 0 and l in {{+-h, -(h+1), h-1}}: h={h}, l={l}"
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Closed-form energy of the family.
    pub fn energy(&self) -> Option<ExactValue> {
        match *self {
            EquienClass::NotEquien => None,
            EquienClass::Conference(d) => {
                let d = d as i64;
                let mut v = ExactValue::integer(2 * d);
                v.add_term(4 * d as u64 + 1, int(2 * d));
                Some(v)
            }
            EquienClass::CaseB(h, l) => {
                Some(ExactValue::integer(2 * (l - h) * (2 * l - 1) * (l + h + 1)))
            }
            EquienClass::CaseC(h, l) => {
                Some(ExactValue::integer(4 * l * (l - h + 1) * (l + h + 1)))
            }
        }
    }
}

/// Classification plus a note when the stored `n` contradicts the
/// recovered `(h, l)`.
pub fn classify_with_diagnostic(p: &SrgParams) -> Result<(EquienClass, Option<String>)> {
    if !equien_condition(p)? {
        return Ok((EquienClass::NotEquien, None));
    }
    let (_, k, e, d) = p.signed();
    if e - d == -1 && k == 2 * d {
        return Ok((EquienClass::Conference(p.d), None));
    }
    let Some(root) = exact_sqrt(p.alpha() as u64) else {
        return Ok((
            EquienClass::NotEquien,
            Some(format!(
                "{p}: irrational sqrt(alpha) outside the conference case"
            )),
        ));
    };
    let root = root as i64;
    let diff = (e - d) as i64;
    let cls = if diff.rem_euclid(2) == 0 {
        EquienClass::CaseB(diff / 2, root / 2)
    } else {
        EquienClass::CaseC((diff + 1) / 2, (root - 1) / 2)
    };
    match family_params(&cls) {
        Ok(q) if q == *p => Ok((cls, None)),
        Ok(q) => Ok((
            EquienClass::NotEquien,
            Some(format!("{p}: recovered {cls} gives {q}")),
        )),
        Err(err) => Ok((
            EquienClass::NotEquien,
            Some(format!("{p}: recovered {cls} is invalid: {err}")),
        )),
    }
}

pub fn classify(p: &SrgParams) -> Result<EquienClass> {
    Ok(classify_with_diagnostic(p)?.0)
}

/// Parameters of a class; errors on excluded values and on values that do
/// not give a valid tuple.
pub fn family_params(cls: &EquienClass) -> Result<SrgParams> {
    cls.check_constraints()?;
    let (n, k, e, d): (i64, i64, i64, i64) = match *cls {
        EquienClass::NotEquien => unreachable!("rejected by check_constraints"),
        EquienClass::Conference(d) => {
            let d = d as i64;
            (4 * d + 1, 2 * d, d - 1, d)
        }
        EquienClass::CaseB(h, l) => {
            let d = (l - h) * (l - h - 1);
            (4 * l * l, (l - h) * (2 * l - 1), d + 2 * h, d)
        }
        EquienClass::CaseC(h, l) => {
            let d = (l - h) * (l - h + 1);
            (
                (2 * l + 1) * (2 * l + 1),
                2 * l * (l - h + 1),
                d + 2 * h - 1,
                d,
            )
        }
    };
    if [n, k, e, d].iter().any(|x| *x < 0) {
        return Err(Error::InvalidParameter(format!(
            "{cls} gives a negative parameter"
        )));
    }
    let p = SrgParams::new(n as u64, k as u64, e as u64, d as u64);
    eigen_data(&p).map_err(|err| Error::InvalidParameter(format!("{cls} gives {p}: {err}")))?;
    Ok(p)
}

/// `k + m_r |r| + m_s |s|`.
pub fn energy_closed(p: &SrgParams) -> Result<ExactValue> {
    let ed = eigen_data(p)?;
    let mut v = ExactValue::integer(p.k as i64);
    v = v + surd_abs(&ed.r).to_exact().scale(&ed.m_r);
    v = v + surd_abs(&ed.s).to_exact().scale(&ed.m_s);
    Ok(v)
}

/// Parameters of a strongly regular graph with eigenvalues `r`, `s` from the
/// Smith system, when all four are positive integers.
pub fn smith_params(r: i64, s: i64) -> Option<SrgParams> {
    let (r, s) = (r as i128, s as i128);
    let rs = r - s;
    let den_v = rs * rs - r * r * (r + 1) * (r + 1);
    let den = rs + r * (r + 1);
    if den_v == 0 || den == 0 {
        return None;
    }
    let v = big(2 * rs * rs * ((2 * r + 1) * rs - 3 * r * (r + 1))) / big(den_v);
    let k = big(-s * ((2 * r + 1) * rs - r * (r + 1))) / big(den);
    let e = big(-r * (s + 1) * (rs - r * (r + 3))) / big(den);
    let d = big(-s * (r + 1) * (rs - r * (r + 1))) / big(den);
    let pos = |x: &Rational| x.is_integer() && x.is_positive();
    if ![&v, &k, &e, &d].into_iter().all(pos) {
        return None;
    }
    Some(SrgParams::new(
        to_u64(&v)?,
        to_u64(&k)?,
        to_u64(&e)?,
        to_u64(&d)?,
    ))
}

/// `NL_n(m) = srg(n^2, m(n+1), m^2+3m-n, m(m+1))`.
pub fn negative_latin_square_params(n: u64, m: u64) -> Result<SrgParams> {
    let e = (m * m + 3 * m) as i128 - n as i128;
    if e < 0 {
        return Err(Error::Infeasible(format!("NL({n},{m}) has e = {e}")));
    }
    let p = SrgParams::new(n * n, m * (n + 1), e as u64, m * (m + 1));
    if !p.satisfies_identity() {
        return Err(Error::Infeasible(format!(
            "NL({n},{m}) = {p} is not admissible"
        )));
    }
    Ok(p)
}

/// `LS_m(n) = srg(n^2, m(n-1), (m-1)(m-2)+n-2, m(m-1))`, the OA tuple.
pub fn latin_square_params(n: u64, m: u64) -> Option<SrgParams> {
    oa_tuple(n, m)
}

/// `L_2(n) = srg(n^2, 2n-2, n-2, 2)`.
pub fn lattice_params(n: u64) -> SrgParams {
    SrgParams::new(n * n, 2 * n - 2, n - 2, 2)
}

/// `T(n) = srg(n(n-1)/2, 2n-4, n-2, 4)`.
pub fn triangular_params(n: u64) -> SrgParams {
    SrgParams::new(n * (n - 1) / 2, 2 * n - 4, n - 2, 4)
}

/// Block graph of a Steiner system `S(2, m, mn+m-n)` when the vertex count
/// is integral.
pub fn steiner_params(m: u64, n: u64) -> Option<SrgParams> {
    let t = (m * n + m).checked_sub(n)?;
    let num = t * t.checked_sub(1)?;
    let den = m * m.checked_sub(1)?;
    (den > 0 && num % den == 0)
        .then(|| SrgParams::new(num / den, m * n, (m - 1) * (m - 1) + n - 1, m * m))
}

/// `K_{a x m}`: `a` parts of size `m`.
pub fn multipartite_params(a: u64, m: u64) -> SrgParams {
    SrgParams::new(a * m, (a - 1) * m, (a - 2) * m, (a - 1) * m)
}

/// Energy equality for `K_{a x m}`: holds iff `a = m`, with energy `2m(m-1)`.
pub fn imprimitive_equien(a: u64, m: u64) -> (bool, Option<u64>) {
    if a == m {
        (true, Some(2 * m * (m - 1)))
    } else {
        (false, None)
    }
}

/// Equienergetic primitive tuples with `n` vertices, in `(k, e, d)` order.
pub fn equien_tuples_for(n: u64) -> Vec<(SrgParams, EquienClass)> {
    let mut out = Vec::new();
    let ni = n as i128;
    for k in 1..n.saturating_sub(1) {
        let ki = k as i128;
        let kb = ni - ki - 1;
        let step = (ki / ki.gcd(&kb)) as u64;
        // e >= 0 forces d(n-k-1) <= k(k-1)
        let dmax = (k as i128 * (ki - 1) / kb).min(ki) as u64;
        let mut d = step;
        while d <= dmax {
            let di = d as i128;
            let e = ki - 1 - di * kb / ki;
            let p = SrgParams::new(n, k, e as u64, d);
            d += step;
            if !prescreen(&p) {
                continue;
            }
            let cls = classify(&p).expect("prescreened tuples are feasible");
            out.push((p, cls));
        }
    }
    out
}

/// Integer-only test for a feasible primitive equienergetic tuple.
fn prescreen(p: &SrgParams) -> bool {
    let (n, k, e, d) = p.signed();
    if d < 1 || k <= d || n - 2 * k + e < 1 || e >= k {
        return false;
    }
    let alpha = p.alpha();
    let num = 2 * k + (n - 1) * (e - d);
    match exact_sqrt(alpha as u64) {
        None => num == 0 && n == 4 * d + 1 && k == 2 * d && e == d - 1,
        Some(root) => {
            let root = root as i128;
            let twice_mr = (n - 1) * root - num;
            twice_mr % (2 * root) == 0
                && twice_mr >= 0
                && (n - 1) * root + num >= 0
                && num == (n - 2 * k - 1) * root
        }
    }
}

/// All feasible primitive tuples with `n <= n_max` passing the equienergy
/// condition, classified, sorted by `(n, k, e, d)`.
pub fn enumerate_equien(n_max: u64) -> Result<Vec<(SrgParams, EquienClass)>> {
    if n_max > 1_000_000 {
        return Err(Error::InvalidParameter(format!(
            "n_max {n_max} exceeds 10^6"
        )));
    }
    let rows: Vec<_> = (1..=n_max)
        .into_par_iter()
        .flat_map_iter(equien_tuples_for)
        .collect();
    for (p, cls) in &rows {
        let ok = match cls {
            EquienClass::NotEquien => false,
            EquienClass::Conference(_) => true,
            _ => oa_params(p).is_some(),
        };
        if !ok {
            return Err(Error::RouteDisagreement(format!(
                "{p} classified {cls} without OA parameters"
            )));
        }
    }
    Ok(rows)
}

/// Spectrum and verdict for a semiprimitive generalized Paley graph.
#[derive(Clone, Debug, PartialEq)]
pub struct GpSpectrum {
    pub spectrum: Spectrum,
    /// `m / (2t)`.
    pub s: u64,
    pub t: u64,
    pub equien: bool,
}

/// `(k, q)` with `q = p^m`, `m` even, `k > 2`, `k | p^t + 1` for the least
/// such `t` (which must divide `m/2`), and `k != p^{m/2} + 1`.
pub fn gp_spectrum(k: u64, q: u64) -> Result<GpSpectrum> {
    let (p, m) = prime_power(q)
        .ok_or_else(|| Error::NotSemiprimitive(format!("{q} is not a prime power")))?;
    debug_assert!(is_prime(p));
    let m = m as u64;
    let fail = |msg: String| Err(Error::NotSemiprimitive(format!("(k={k}, q={q}): {msg}")));
    if k <= 2 {
        return fail("k must exceed 2".into());
    }
    if m % 2 == 1 {
        return fail("m must be even".into());
    }
    let half = m / 2;
    let root = p.pow(half as u32);
    let Some(t) = (1..=half).find(|j| (p.pow(*j as u32) + 1) % k == 0) else {
        return fail("no j <= m/2 with k | p^j + 1".into());
    };
    if !half.is_multiple_of(t) {
        return fail(format!("least t = {t} does not divide m/2 = {half}"));
    }
    if k == root + 1 {
        return fail("k = p^(m/2) + 1".into());
    }
    let s = m / (2 * t);
    let sign: i64 = if s % 2 == 1 { 1 } else { -1 };
    let (ki, rq) = (k as i64, root as i64);
    let l1 = Rational::new(BigInt::from(sign * (ki - 1) * rq - 1), BigInt::from(ki));
    let l2 = Rational::new(BigInt::from(-(sign * rq + 1)), BigInt::from(ki));
    let deg = (q - 1) / k;
    let spectrum = Spectrum::exact(vec![
        (Surd::integer(deg as i64), 1),
        (Surd::rational(l1), deg),
        (Surd::rational(l2), (k - 1) * deg),
    ]);
    Ok(GpSpectrum {
        spectrum,
        s,
        t,
        equien: s % 2 == 1,
    })
}

/// Convenience: compares two exact energies.
pub fn energies_equal(p: &SrgParams) -> Result<bool> {
    let c = complement_params(p)?;
    Ok(energy_closed(p)?.cmp(&energy_closed(&c)?) == Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::spectra::energy;
    use proptest::prelude::*;

    const SHR: SrgParams = SrgParams::new(16, 6, 2, 2);

    #[test]
    fn eigen_data_examples() {
        let ed = eigen_data(&SHR).unwrap();
        assert_eq!(
            (ed.r.clone(), ed.s.clone(), ed.m_r.clone(), ed.m_s.clone()),
            (Surd::integer(2), Surd::integer(-2), int(6), int(9))
        );
        let c5 = eigen_data(&SrgParams::new(5, 2, 0, 1)).unwrap();
        assert!(c5.conference);
        assert_eq!(c5.r, Surd::new(rat(-1, 2), rat(1, 2), 5));
        assert_eq!(c5.s, Surd::new(rat(-1, 2), rat(-1, 2), 5));
        assert_eq!((c5.m_r, c5.m_s), (int(2), int(2)));
        let pet = eigen_data(&SrgParams::new(10, 3, 0, 1)).unwrap();
        assert_eq!(
            (pet.r, pet.s, pet.m_r, pet.m_s),
            (Surd::integer(1), Surd::integer(-2), int(5), int(4))
        );
        assert!(eigen_data(&SrgParams::new(10, 3, 1, 1)).is_err());
        assert!(matches!(
            eigen_data(&SrgParams::new(7, 3, 1, 1)),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            eigen_data(&SrgParams::new(8, 2, 1, 0)),
            Err(Error::Infeasible(_))
        ));
        // the complement would need e = -2
        assert!(eigen_data(&SrgParams::new(36, 30, 25, 24)).is_err());
    }

    #[test]
    fn complements() {
        assert_eq!(
            complement_params(&SHR).unwrap(),
            SrgParams::new(16, 9, 4, 6)
        );
        let conf = SrgParams::new(13, 6, 2, 3);
        assert_eq!(complement_params(&conf).unwrap(), conf);
        assert_eq!(
            complement_params(&complement_params(&SHR).unwrap()).unwrap(),
            SHR
        );
    }

    #[test]
    fn oa_detection() {
        assert_eq!(oa_params(&SHR), Some((4, 2)));
        assert_eq!(oa_params(&SrgParams::new(4, 2, 0, 2)), Some((2, 2)));
        assert_eq!(oa_params(&SrgParams::new(10, 3, 0, 1)), None);
        assert!(is_primitive(&SHR));
        assert!(!is_primitive(&SrgParams::new(4, 2, 0, 2)));
        assert!(is_conference(&SrgParams::new(25, 12, 5, 6)));
    }

    #[test]
    fn equien_examples() {
        assert!(equien_condition(&SHR).unwrap());
        assert!(!equien_condition(&SrgParams::new(10, 3, 0, 1)).unwrap());
        assert!(equien_condition(&SrgParams::new(16, 6, 2, 2)).unwrap());
        let t = 3;
        assert!(equien_condition(&SrgParams::new(
            4 * t * t,
            2 * t * t - t,
            t * t - t,
            t * t - t
        ))
        .unwrap());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&SHR).unwrap(), EquienClass::CaseB(0, 2));
        assert_eq!(
            classify(&SrgParams::new(13, 6, 2, 3)).unwrap(),
            EquienClass::Conference(3)
        );
        assert_eq!(
            classify(&SrgParams::new(25, 12, 5, 6)).unwrap(),
            EquienClass::Conference(6)
        );
        assert_eq!(
            classify(&SrgParams::new(10, 3, 0, 1)).unwrap(),
            EquienClass::NotEquien
        );
    }

    #[test]
    fn family_examples() {
        for t in 2..10i64 {
            let tu = t as u64;
            assert_eq!(
                family_params(&EquienClass::CaseB(0, t)).unwrap(),
                SrgParams::new(4 * tu * tu, 2 * tu * tu - tu, tu * tu - tu, tu * tu - tu)
            );
        }
        for l in 3..10i64 {
            let p = family_params(&EquienClass::CaseC(l - 2, l)).unwrap();
            let t = (2 * l + 1) as u64;
            assert_eq!(p, SrgParams::new(t * t, 3 * (t - 1), t, 6));
        }
        assert_eq!(
            family_params(&EquienClass::Conference(1)).unwrap(),
            SrgParams::new(5, 2, 0, 1)
        );
        assert!(family_params(&EquienClass::CaseB(1, 2)).is_err());
        assert!(family_params(&EquienClass::CaseC(0, 4)).is_err());
        assert!(family_params(&EquienClass::NotEquien).is_err());
    }

    #[test]
    fn energies() {
        assert_eq!(energy_closed(&SHR).unwrap(), ExactValue::integer(36));
        assert_eq!(
            energy_closed(&SrgParams::new(5, 2, 0, 1)).unwrap(),
            "2 + 2*sqrt(5)".parse().unwrap()
        );
        assert_eq!(
            energy_closed(&SrgParams::new(9, 4, 1, 2)).unwrap(),
            ExactValue::integer(16)
        );
        assert_eq!(
            EquienClass::CaseB(0, 2).energy().unwrap(),
            ExactValue::integer(36)
        );
        assert_eq!(
            energy_closed(&SHR).unwrap(),
            energy(&srg_spectrum(&SHR).unwrap()).exact
        );
    }

    #[test]
    fn smith_and_nl() {
        assert_eq!(smith_params(1, -5), Some(SrgParams::new(27, 10, 1, 5)));
        assert_eq!(smith_params(2, -16), Some(SrgParams::new(162, 56, 10, 24)));
        for r in 1..=20 {
            for s in -20..=-2 {
                if let Some(p) = smith_params(r, s) {
                    assert!(oa_params(&p).is_none(), "{p}");
                }
            }
        }
        assert_eq!(smith_params(1, -1), None);
        assert_eq!(
            negative_latin_square_params(4, 1).unwrap(),
            SrgParams::new(16, 5, 0, 2)
        );
        assert!(negative_latin_square_params(10, 1).is_err());
        let ed = eigen_data(&SrgParams::new(16, 5, 0, 2)).unwrap();
        assert_eq!(
            (ed.r, ed.s, ed.m_r, ed.m_s),
            (Surd::integer(1), Surd::integer(-3), int(10), int(5))
        );
    }

    #[test]
    fn enumeration_small() {
        let rows = enumerate_equien(16).unwrap();
        let set: Vec<_> = rows.iter().map(|(p, _)| *p).collect();
        assert!(set.contains(&SHR));
        assert!(set.contains(&SrgParams::new(16, 9, 4, 6)));
        for p in &set {
            assert!(set.contains(&complement_params(p).unwrap()));
        }
        let five: Vec<_> = enumerate_equien(5).unwrap();
        assert_eq!(
            five,
            vec![(SrgParams::new(5, 2, 0, 1), EquienClass::Conference(1))]
        );
        assert_eq!(imprimitive_equien(2, 2), (true, Some(4)));
        assert_eq!(imprimitive_equien(3, 3), (true, Some(12)));
        assert_eq!(imprimitive_equien(2, 3), (false, None));
        assert!(enumerate_equien(2_000_000).is_err());
    }

    #[test]
    fn gp_examples() {
        let g = gp_spectrum(3, 64).unwrap();
        assert!(g.equien);
        assert_eq!((g.s, g.t), (3, 1));
        assert_eq!(
            g.spectrum,
            Spectrum::integral(&[(21, 1), (5, 21), (-3, 42)])
        );
        let g = gp_spectrum(3, 16).unwrap();
        assert!(!g.equien);
        assert_eq!(g.spectrum, Spectrum::integral(&[(5, 1), (1, 10), (-3, 5)]));
        assert!(gp_spectrum(3, 8).is_err());
        assert!(gp_spectrum(2, 25).is_err());
        assert!(gp_spectrum(5, 16).is_err());
        // verdicts agree with the energy criterion on the spectrum
        for (k, q) in [
            (3, 16),
            (3, 64),
            (3, 256),
            (5, 16 * 16),
            (3, 25),
            (3, 625),
            (4, 9),
            (4, 81),
        ] {
            let Ok(g) = gp_spectrum(k, q) else { continue };
            let deg = ((q - 1) / k) as i64;
            assert_eq!(
                check_equienergetic(&g.spectrum, deg, false).unwrap().equal,
                g.equien,
                "({k},{q})"
            );
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("16,6,2,2".parse::<SrgParams>().unwrap(), SHR);
        assert_eq!("srg(16, 6, 2, 2)".parse::<SrgParams>().unwrap(), SHR);
        assert_eq!(SHR.to_string(), "srg(16,6,2,2)");
        assert!(matches!(
            "16,6,x,2".parse::<SrgParams>(),
            Err(Error::Parse { column: 6, .. })
        ));
        assert!("16,6,2".parse::<SrgParams>().is_err());
    }

    proptest! {
        #[test]
        fn trace_identities((n, k) in (5u64..200).prop_flat_map(|n| (Just(n), 1..n - 1))) {
            let kb = n - k - 1;
            for d in (0..=k).filter(|d| (d * kb) % k == 0 && d * kb <= k * (k - 1)) {
                let e = k - 1 - d * kb / k;
                let p = SrgParams::new(n, k, e, d);
                let Ok(ed) = eigen_data(&p) else { continue };
                let tr = ExactValue::integer(k as i64) + ed.r.to_exact().scale(&ed.m_r) + ed.s.to_exact().scale(&ed.m_s);
                prop_assert!(tr.is_zero());
                let sq = |x: &Surd| x.checked_mul(x).unwrap().to_exact();
                let tr2 = ExactValue::integer((k * k) as i64) + sq(&ed.r).scale(&ed.m_r) + sq(&ed.s).scale(&ed.m_s);
                prop_assert_eq!(tr2, ExactValue::integer((n * k) as i64));
                prop_assert_eq!(energies_equal(&p).unwrap(), equien_condition(&p).unwrap());
            }
        }

        #[test]
        fn classify_inverts_family(h in -10i64..=10, l in 1i64..=30, case_b in any::<bool>()) {
            let cls = if case_b { EquienClass::CaseB(h, l) } else { EquienClass::CaseC(h, l) };
            if let Ok(p) = family_params(&cls) {
                prop_assert!(equien_condition(&p).unwrap());
                prop_assert_eq!(classify(&p).unwrap(), cls);
                prop_assert_eq!(energy_closed(&p).unwrap(), cls.energy().unwrap());
            }
        }
    }
}
