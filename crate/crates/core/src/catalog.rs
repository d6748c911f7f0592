//! Embedded curated spectra: integral cubic graphs, distance-regular cubic
//! graphs, and strongly regular graphs determined by their spectrum.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::{rat_to_f64, Rational};
use crate::graphs::{gen_named, kronecker, Family, FamilyArgs, Graph};
use crate::spectra::{Eig, Spectrum};
use crate::srg::SrgParams;

const CATALOG_TOML: &str = include_str!("../data/catalog.toml");

/// Radius to which isolated roots are refined.
pub const ROOT_RADIUS: f64 = 1e-10;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    cubic_integral: Vec<RawCubic>,
    distance_regular_cubic: Vec<RawCubic>,
    ds_conference: Vec<RawDs>,
    ds_sporadic: Vec<RawDs>,
    srg_tuples: Vec<RawTuples>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCubic {
    index: u32,
    name: String,
    n: u64,
    bipartite: bool,
    spectrum: String,
    #[serde(default)]
    roots: Vec<RawRoot>,
    build: Option<RawBuild>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRoot {
    poly: Vec<i64>,
    lo: String,
    hi: String,
    mult: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBuild {
    family: String,
    #[serde(default)]
    args: FamilyArgs,
    #[serde(default)]
    tensor_k2: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDs {
    name: String,
    spectrum: String,
    build: Option<RawBuild>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTuples {
    kind: String,
    tuples: Vec<[u64; 4]>,
}

/// A construction, optionally followed by a tensor product with `K_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Build {
    pub family: Family,
    pub tensor_k2: bool,
}

impl Build {
    pub fn graph(&self) -> Result<Graph> {
        let g = gen_named(&self.family)?;
        if self.tensor_k2 {
            Ok(kronecker(&g, &gen_named(&Family::Complete(2))?))
        } else {
            Ok(g)
        }
    }
}

/// Integer polynomial with coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<i64>);

type RatPoly = Vec<Rational>;

impl IntPoly {
    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + Rational::from_integer(BigInt::from(*c))
        })
    }

    fn rational(&self) -> RatPoly {
        trim(
            self.0
                .iter()
                .map(|c| Rational::from_integer(BigInt::from(*c)))
                .collect(),
        )
    }

    /// Whether some rational number is a root, by the rational root test.
    pub fn has_rational_root(&self) -> bool {
        let c = &self.0;
        let Some(low) = c.iter().position(|x| *x != 0) else {
            return true;
        };
        if low > 0 {
            return true;
        }
        let (a0, an) = (
            c[0].unsigned_abs(),
            c.last().copied().unwrap_or(0).unsigned_abs(),
        );
        let divisors = |v: u64| (1..=v).filter(move |d| v.is_multiple_of(*d));
        divisors(a0).any(|p| {
            divisors(an).any(|q| {
                [1i64, -1].iter().any(|sign| {
                    self.eval(&Rational::new(
                        BigInt::from(sign * p as i64),
                        BigInt::from(q),
                    ))
                    .is_zero()
                })
            })
        })
    }

    /// Distinct real roots in `(lo, hi]` by Sturm's theorem.
    pub fn roots_in(&self, lo: &Rational, hi: &Rational) -> usize {
        let seq = sturm(self.rational());
        sign_changes(&seq, lo) - sign_changes(&seq, hi)
    }
}

fn trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn eval_rat(p: &RatPoly, x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &RatPoly) -> RatPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn remainder(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r = trim(r);
    }
    r
}

fn sturm(p: RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![p.clone(), derivative(&p)];
    while !seq.last().unwrap().is_empty() {
        let n = seq.len();
        let r = remainder(&seq[n - 2], &seq[n - 1]);
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq.pop();
    seq
}

fn sign_changes(seq: &[RatPoly], x: &Rational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| eval_rat(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// A real root of `poly` isolated in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoot {
    pub poly: IntPoly,
    pub lo: Rational,
    pub hi: Rational,
    pub mult: u64,
}

impl IsolatedRoot {
    pub fn new(poly: IntPoly, lo: Rational, hi: Rational, mult: u64) -> Result<IsolatedRoot> {
        if lo >= hi {
            return Err(Error::InvalidParameter(format!(
                "empty interval [{lo}, {hi}]"
            )));
        }
        let (fl, fh) = (poly.eval(&lo), poly.eval(&hi));
        if fl.is_zero() || fh.is_zero() || fl.signum() == fh.signum() {
            return Err(Error::InvalidParameter(format!(
                "no sign change of {:?} on [{lo}, {hi}]",
                poly.0
            )));
        }
        if poly.roots_in(&lo, &hi) != 1 {
            return Err(Error::InvalidParameter(format!(
                "[{lo}, {hi}] does not isolate one root of {:?}",
                poly.0
            )));
        }
        Ok(IsolatedRoot { poly, lo, hi, mult })
    }

    /// Exact bisection until `hi - lo <= 2 radius`.
    pub fn refine(&self, radius: f64) -> IsolatedRoot {
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        let sign_lo = self.poly.eval(&lo).is_positive();
        let two = Rational::from_integer(BigInt::from(2));
        while rat_to_f64(&(&hi - &lo)) > 2.0 * radius {
            let mid = (&lo + &hi) / &two;
            let v = self.poly.eval(&mid);
            if v.is_zero() {
                return IsolatedRoot {
                    lo: mid.clone(),
                    hi: mid,
                    ..self.clone()
                };
            }
            if v.is_positive() == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        IsolatedRoot {
            lo,
            hi,
            ..self.clone()
        }
    }

    pub fn is_irrational(&self) -> bool {
        !self.poly.has_rational_root()
    }

    /// Certified `a < root < b` from the interval endpoints alone.
    pub fn inside(&self, a: &Rational, b: &Rational) -> bool {
        let in_closed = &self.lo >= a && &self.hi <= b;
        let root_not_endpoint = !self.poly.eval(a).is_zero() && !self.poly.eval(b).is_zero();
        in_closed && root_not_endpoint
    }

    /// Midpoint and half-width as an approximate eigenvalue.
    pub fn to_eig(&self) -> Eig {
        let two = Rational::from_integer(BigInt::from(2));
        let mid = rat_to_f64(&((&self.lo + &self.hi) / &two));
        let half = rat_to_f64(&((&self.hi - &self.lo) / &two));
        Eig::approx(mid, half.max(f64::EPSILON * mid.abs().max(1.0)))
    }
}

/// A curated cubic graph.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicEntry {
    pub index: u32,
    pub name: String,
    pub bipartite: bool,
    /// Exact entries plus refined roots.
    pub spectrum: Spectrum,
    pub roots: Vec<IsolatedRoot>,
    pub build: Option<Build>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DsEntry {
    pub name: String,
    pub spectrum: Spectrum,
    pub params: SrgParams,
    pub build: Option<Build>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    pub cubic_integral: Vec<CubicEntry>,
    pub distance_regular_cubic: Vec<CubicEntry>,
    pub ds_conference: Vec<DsEntry>,
    pub ds_sporadic: Vec<DsEntry>,
    pub moore: Vec<SrgParams>,
    pub triangle_free: Vec<SrgParams>,
}

fn toml_error(text: &str, err: toml::de::Error) -> Error {
    let offset = err.span().map(|s| s.start).unwrap_or(0);
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
    Error::parse(line, column, err.message().to_string())
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidParameter(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (BigInt, BigInt) = (
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            );
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn build(raw: Option<RawBuild>) -> Result<Option<Build>> {
    raw.map(|b| {
        Ok(Build {
            family: Family::from_args(&b.family, &b.args)?,
            tensor_k2: b.tensor_k2,
        })
    })
    .transpose()
}

fn cubic(raw: RawCubic) -> Result<CubicEntry> {
    let exact: Spectrum = raw.spectrum.parse()?;
    let roots = raw
        .roots
        .into_iter()
        .map(|r| {
            let root = IsolatedRoot::new(
                IntPoly(r.poly),
                parse_rational(&r.lo)?,
                parse_rational(&r.hi)?,
                r.mult,
            )?;
            Ok(root.refine(ROOT_RADIUS))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut entries = exact.entries().to_vec();
    entries.extend(roots.iter().map(|r| (r.to_eig(), r.mult)));
    let spectrum = Spectrum::new(entries)?;
    if spectrum.n() != raw.n {
        return Err(Error::InvalidParameter(format!(
            "{}: multiplicities sum to {} not {}",
            raw.name,
            spectrum.n(),
            raw.n
        )));
    }
    let spectrum = spectrum.with_principal(&Eig::int(3))?;
    Ok(CubicEntry {
        index: raw.index,
        name: raw.name,
        bipartite: raw.bipartite,
        spectrum,
        roots,
        build: build(raw.build)?,
    })
}

/// `(n, k, e, d)` from a three-eigenvalue spectrum `k, r^f, s^g`.
pub fn srg_from_spectrum(s: &Spectrum) -> Result<SrgParams> {
    let vals: Vec<_> = s
        .entries()
        .iter()
        .map(|(e, m)| (e.as_exact().cloned(), *m))
        .collect();
    let [(Some(k), 1), (Some(r), _), (Some(sv), _)] = &vals[..] else {
        return Err(Error::InvalidParameter(format!(
            "{s} is not a connected strongly regular spectrum"
        )));
    };
    // e = k + r + s + rs, d = k + rs
    let rs = r.checked_mul(sv).and_then(|x| x.as_rational().cloned());
    let sum = r.checked_add(sv).and_then(|x| x.as_rational().cloned());
    let k = k.as_rational().cloned();
    let (Some(k), Some(rs), Some(sum)) = (k, rs, sum) else {
        return Err(Error::InvalidParameter(format!(
            "{s} has no rational parameters"
        )));
    };
    let to_u64 = |x: Rational| {
        x.is_integer()
            .then(|| u64::try_from(x.to_integer()).ok())
            .flatten()
            .ok_or_else(|| Error::InvalidParameter(format!("{s} gives a non-integral parameter")))
    };
    let d = to_u64(&k + &rs)?;
    let e = to_u64(&k + &sum + &rs)?;
    Ok(SrgParams::new(s.n(), to_u64(k)?, e, d))
}

fn ds(raw: RawDs) -> Result<DsEntry> {
    let spectrum: Spectrum = raw.spectrum.parse()?;
    let params = srg_from_spectrum(&spectrum)?;
    Ok(DsEntry {
        name: raw.name,
        spectrum,
        params,
        build: build(raw.build)?,
    })
}

impl Catalog {
    pub fn from_toml_str(text: &str) -> Result<Catalog> {
        let raw: RawCatalog = toml::from_str(text).map_err(|e| toml_error(text, e))?;
        let tuples = |kind: &str| -> Vec<SrgParams> {
            raw.srg_tuples
                .iter()
                .filter(|t| t.kind == kind)
                .flat_map(|t| {
                    t.tuples
                        .iter()
                        .map(|[n, k, e, d]| SrgParams::new(*n, *k, *e, *d))
                })
                .collect()
        };
        let (moore, triangle_free) = (tuples("moore"), tuples("triangle-free"));
        Ok(Catalog {
            cubic_integral: raw
                .cubic_integral
                .into_iter()
                .map(cubic)
                .collect::<Result<_>>()?,
            distance_regular_cubic: raw
                .distance_regular_cubic
                .into_iter()
                .map(cubic)
                .collect::<Result<_>>()?,
            ds_conference: raw
                .ds_conference
                .into_iter()
                .map(ds)
                .collect::<Result<_>>()?,
            ds_sporadic: raw.ds_sporadic.into_iter().map(ds).collect::<Result<_>>()?,
            moore,
            triangle_free,
        })
    }
}

/// The embedded catalog.
pub fn catalog() -> &'static Catalog {
    static CELL: OnceLock<Catalog> = OnceLock::new();
    CELL.get_or_init(|| {
        Catalog::from_toml_str(CATALOG_TOML).expect("embedded catalog is well formed")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::graphs::numeric_spectrum;
    use crate::spectra::{exact_trace, Eig};

    #[test]
    fn loads() {
        let c = catalog();
        assert_eq!(c.cubic_integral.len(), 13);
        assert_eq!(c.distance_regular_cubic.len(), 13);
        assert_eq!(c.ds_conference.len(), 3);
        assert_eq!(c.ds_sporadic.len(), 14);
        assert_eq!(c.moore.len(), 3);
        assert_eq!(c.triangle_free.len(), 4);
        assert_eq!(c.ds_sporadic[0].params, SrgParams::new(16, 5, 0, 2));
        assert_eq!(c.ds_sporadic[2].params, SrgParams::new(50, 7, 0, 1));
        assert_eq!(c.ds_sporadic[13].params, SrgParams::new(275, 112, 30, 56));
        assert_eq!(c.ds_conference[1].params, SrgParams::new(13, 6, 2, 3));
    }

    #[test]
    fn cubic_spectra_are_consistent() {
        for e in catalog()
            .cubic_integral
            .iter()
            .chain(&catalog().distance_regular_cubic)
        {
            let n = e.spectrum.n() as f64;
            assert!(e.spectrum.moment(1).abs() < 1e-8, "{}", e.name);
            assert!((e.spectrum.moment(2) - 3.0 * n).abs() < 1e-8, "{}", e.name);
            if e.roots.is_empty() {
                assert!(exact_trace(&e.spectrum).unwrap().is_zero());
            }
            let sym = e.spectrum.entries().iter().all(|(x, m)| {
                e.spectrum
                    .entries()
                    .iter()
                    .any(|(y, k)| k == m && (x.to_f64() + y.to_f64()).abs() < 1e-9)
            });
            assert_eq!(sym, e.bipartite, "{}", e.name);
        }
    }

    #[test]
    fn builds_match() {
        for e in catalog()
            .cubic_integral
            .iter()
            .chain(&catalog().distance_regular_cubic)
        {
            if let Some(b) = &e.build {
                let num = numeric_spectrum(&b.graph().unwrap()).unwrap();
                assert!(
                    num.matches(&e.spectrum, 1e-7),
                    "{}: {num} vs {}",
                    e.name,
                    e.spectrum
                );
            }
        }
    }

    #[test]
    fn biggs_smith_roots() {
        let bs = &catalog().distance_regular_cubic[11];
        assert_eq!(bs.roots.len(), 5);
        let expect = [
            2.5615528128,
            0.8793852416,
            -1.3472963553,
            -1.5615528128,
            -2.5320888862,
        ];
        for (r, x) in bs.roots.iter().zip(expect) {
            assert!(rat_to_f64(&(&r.hi - &r.lo)) <= 2e-10);
            assert!((r.to_eig().to_f64() - x).abs() < 1e-9);
            assert!(r.is_irrational());
            assert!(!r.inside(&int(-1), &int(0)));
        }
        assert!(bs.roots[1].inside(&int(0), &int(1)));
        assert!(matches!(bs.spectrum.principal_eig(), Eig::Exact(_)));
    }

    #[test]
    fn polynomial_tools() {
        let p = IntPoly(vec![-2, 0, 1]);
        assert!(!p.has_rational_root());
        assert_eq!(p.roots_in(&int(-2), &int(2)), 2);
        assert_eq!(p.roots_in(&int(0), &int(2)), 1);
        assert!(IntPoly(vec![-1, 0, 4]).has_rational_root());
        assert!(IsolatedRoot::new(p.clone(), int(-2), int(2), 1).is_err());
        assert!(IsolatedRoot::new(p.clone(), int(2), int(3), 1).is_err());
        let r = IsolatedRoot::new(p, int(1), int(2), 1)
            .unwrap()
            .refine(1e-12);
        assert!((r.to_eig().to_f64() - 2f64.sqrt()).abs() < 1e-12);
        let half = IsolatedRoot::new(IntPoly(vec![-1, 2]), int(0), int(1), 1)
            .unwrap()
            .refine(1e-3);
        assert_eq!((half.lo.clone(), half.hi.clone()), (rat(1, 2), rat(1, 2)));
    }

    #[test]
    fn bad_toml_reports_position() {
        let err = Catalog::from_toml_str("cubic_integral = [\n  { index = x }\n]").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }
}
