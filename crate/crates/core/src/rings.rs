//! Unitary Cayley graphs of finite commutative rings at the level of local
//! profiles: a ring `R = R_1 x ... x R_s` enters only through the residue
//! field sizes `q_i` and maximal ideal sizes `m_i` of its local factors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{prime_power, LocalFactor};
use crate::spectra::{check_equienergetic, Spectrum};
use crate::srg::SrgParams;

/// Ordered local factors `(q_i, m_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RingProfile {
    factors: Vec<(u64, u64)>,
}

impl RingProfile {
    /// Checks that each `q_i` is a prime power, each `m_i` a power of the
    /// same prime, and that `|R|` fits in 63 bits.
    pub fn new(factors: Vec<(u64, u64)>) -> Result<RingProfile> {
        if factors.is_empty() {
            return Err(Error::InvalidProfile("no local factors".into()));
        }
        let mut order: u64 = 1;
        for &(q, m) in &factors {
            let (p, _) = prime_power(q)
                .ok_or_else(|| Error::InvalidProfile(format!("{q} is not a prime power")))?;
            if m == 0 || !is_power_of(m, p) {
                return Err(Error::InvalidProfile(format!(
                    "{m} is not a power of {p} (residue field {q})"
                )));
            }
            order = order
                .checked_mul(q)
                .and_then(|o| o.checked_mul(m))
                .filter(|o| *o <= i64::MAX as u64)
                .ok_or_else(|| Error::InvalidProfile("ring order exceeds 2^63".into()))?;
        }
        Ok(RingProfile { factors })
    }

    /// `s` copies of `F_q` given as a list of field orders.
    pub fn fields(qs: &[u64]) -> Result<RingProfile> {
        RingProfile::new(qs.iter().map(|q| (*q, 1)).collect())
    }

    pub fn factors(&self) -> &[(u64, u64)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `|R|`.
    pub fn order(&self) -> u64 {
        self.factors.iter().map(|(q, m)| q * m).product()
    }

    /// `|R*| = prod m_i (q_i - 1)`.
    pub fn units(&self) -> u64 {
        self.factors.iter().map(|(q, m)| (q - 1) * m).product()
    }

    pub fn is_field_product(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    /// Factors realisable as `F_q` or `Z_{p^a}`, for building the graph.
    pub fn realize(&self) -> Option<Vec<LocalFactor>> {
        self.factors
            .iter()
            .map(|&(q, m)| {
                if m == 1 {
                    Some(LocalFactor::Field(q))
                } else {
                    let (p, e) = prime_power(q)?;
                    (e == 1).then(|| LocalFactor::IntegersMod {
                        p,
                        a: 1 + m.ilog(p),
                    })
                }
            })
            .collect()
    }
}

fn is_power_of(mut m: u64, p: u64) -> bool {
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

impl fmt::Display for RingProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(q, m)| format!("{q}:{m}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for RingProfile {
    type Err = Error;
    /// `q1:m1,q2:m2,...`; a bare `q` means `q:1`.
    fn from_str(s: &str) -> Result<RingProfile> {
        let mut factors = Vec::new();
        let mut col = 1;
        for part in s.split(',') {
            let num = |t: &str, off: usize| {
                t.trim().parse::<u64>().map_err(|_| {
                    Error::parse(
                        1,
                        col + off,
                        format!("expected an integer, found `{}`", t.trim()),
                    )
                })
            };
            let factor = match part.split_once(':') {
                Some((q, m)) => (num(q, 0)?, num(m, q.len() + 1)?),
                None => (num(part, 0)?, 1),
            };
            factors.push(factor);
            col += part.len() + 1;
        }
        RingProfile::new(factors)
    }
}

/// `P_C = prod_{j in C} (q_j - 1)` summed by subset parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetSums {
    /// Even `0 < |C| < s`.
    pub s_e: u128,
    /// Odd `|C| < s`.
    pub s_o: u128,
    /// `prod m_i`.
    pub m: u128,
    /// `prod (q_i - 1)`.
    pub full_product: u128,
}

/// Elementary symmetric polynomials `e_0..e_s` of the `q_i - 1`.
fn elementary(xs: &[u64]) -> Vec<u128> {
    let mut e = vec![0u128; xs.len() + 1];
    e[0] = 1;
    for (i, &x) in xs.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += e[j - 1] * x as u128;
        }
    }
    e
}

pub fn subset_sums(profile: &RingProfile) -> SubsetSums {
    let xs: Vec<u64> = profile.factors.iter().map(|(q, _)| q - 1).collect();
    let s = xs.len();
    let e = elementary(&xs);
    let s_e = (2..s).step_by(2).map(|j| e[j]).sum();
    let s_o = (1..s).step_by(2).map(|j| e[j]).sum();
    // every subset contributes: sum_C P_C = prod q_i
    debug_assert_eq!(
        e.iter().sum::<u128>(),
        profile
            .factors
            .iter()
            .map(|(q, _)| *q as u128)
            .product::<u128>()
    );
    SubsetSums {
        s_e,
        s_o,
        m: profile.factors.iter().map(|(_, m)| *m as u128).product(),
        full_product: e[s],
    }
}

/// `lambda_C = (-1)^|C| |R*| / P_C` with multiplicity `P_C`, plus zero with
/// multiplicity `|R| - prod q_i`.
pub fn unitary_spectrum(profile: &RingProfile) -> Spectrum {
    let units = profile.units() as i64;
    // multiset of (|C| parity, P_C) through a DP over factors
    let mut by_product: BTreeMap<(bool, u64), u64> = BTreeMap::from([((false, 1), 1)]);
    for (q, _) in &profile.factors {
        let mut next = by_product.clone();
        for ((odd, p), count) in &by_product {
            *next.entry((!odd, p * (q - 1))).or_default() += count;
        }
        by_product = next;
    }
    let mut eig: BTreeMap<i64, u64> = BTreeMap::new();
    for ((odd, p), count) in by_product {
        let lam = units / p as i64;
        *eig.entry(if odd { -lam } else { lam }).or_default() += count * p;
    }
    let zero = profile.order() - profile.factors.iter().map(|(q, _)| q).product::<u64>();
    if zero > 0 {
        *eig.entry(0).or_default() += zero;
    }
    let entries: Vec<(i64, u64)> = eig.into_iter().collect();
    Spectrum::integral(&entries)
        .with_principal(&crate::spectra::Eig::int(units))
        .expect("|R*| is an eigenvalue")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingReport {
    pub equal: bool,
    pub route_delta: bool,
    pub route_closed: bool,
}

/// Closed condition: two fields for even `s`; `m = q` for a local ring;
/// `M S_e + (M - 1)(1 + S_o) = prod (q_i - 1)` for odd `s >= 3`.
pub fn closed_condition(profile: &RingProfile) -> bool {
    let s = profile.len();
    if s.is_multiple_of(2) {
        return s == 2 && profile.is_field_product();
    }
    if s == 1 {
        let (q, m) = profile.factors[0];
        return m == q;
    }
    let ss = subset_sums(profile);
    ss.m * ss.s_e + (ss.m - 1) * (1 + ss.s_o) == ss.full_product
}

pub fn equien_check(profile: &RingProfile) -> Result<RingReport> {
    let spec = unitary_spectrum(profile);
    let route_delta = check_equienergetic(&spec, profile.units() as i64, false)?.equal;
    let route_closed = closed_condition(profile);
    if route_delta != route_closed {
        return Err(Error::RouteDisagreement(format!(
            "ring profile {profile}: spectrum says {route_delta}, closed condition says {route_closed}"
        )));
    }
    Ok(RingReport {
        equal: route_delta,
        route_delta,
        route_closed,
    })
}

/// Prime powers in `[2, q_max]`.
pub fn prime_powers_upto(q_max: u64) -> Vec<u64> {
    (2..=q_max).filter(|q| prime_power(*q).is_some()).collect()
}

/// With `y_i = 1/(q_i - 1)` the field-product condition reads
/// `sum_{t odd, t < s} e_t(y) = 1`, and the left side increases in every `y_i`.
fn odd_sum(ys: &[f64]) -> f64 {
    let mut e = vec![0f64; ys.len() + 1];
    e[0] = 1.0;
    for (i, y) in ys.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += e[j - 1] * y;
        }
    }
    e[..ys.len()].iter().skip(1).step_by(2).sum()
}

const PRUNE_SLACK: f64 = 1e-9;

fn extend(prefix: &mut Vec<u64>, from: usize, pool: &[u64], s: usize, out: &mut Vec<Vec<u64>>) {
    let ys = |prefix: &[u64], fill: f64| -> f64 {
        let mut v: Vec<f64> = prefix.iter().map(|q| 1.0 / (q - 1) as f64).collect();
        v.resize(s, fill);
        odd_sum(&v)
    };
    if prefix.len() == s - 1 {
        solve_last(prefix, pool, from, out);
        return;
    }
    let q_max = *pool.last().unwrap();
    for i in from..pool.len() {
        let q = pool[i];
        prefix.push(q);
        // remaining entries are >= q: the sum is at most this
        let hi = ys(prefix, 1.0 / (q - 1) as f64);
        if hi < 1.0 - PRUNE_SLACK {
            prefix.pop();
            break;
        }
        let lo = ys(prefix, 1.0 / (q_max - 1) as f64);
        if lo <= 1.0 + PRUNE_SLACK {
            extend(prefix, i, pool, s, out);
        }
        prefix.pop();
    }
}

/// The condition is linear in the last `x = q - 1`: `x B = A` with
/// `A = sum_{even j} e_j(x')` and `B = e_{s-1}(x') - sum_{odd i <= s-2} e_i(x')`.
fn solve_last(prefix: &[u64], pool: &[u64], from: usize, out: &mut Vec<Vec<u64>>) {
    let xs: Vec<u64> = prefix.iter().map(|q| q - 1).collect();
    let e = elementary(&xs);
    let s1 = xs.len();
    let a: u128 = (2..=s1).step_by(2).map(|j| e[j]).sum();
    let odd: u128 = (1..s1).step_by(2).map(|j| e[j]).sum();
    if e[s1] <= odd {
        return;
    }
    let b = e[s1] - odd;
    if !a.is_multiple_of(b) {
        return;
    }
    let q = (a / b + 1) as u64;
    if pool[from..].binary_search(&q).is_ok() {
        let mut t = prefix.to_vec();
        t.push(q);
        out.push(t);
    }
}

/// Nondecreasing prime-power tuples `q_1 <= ... <= q_s <= q_max` whose
/// field product `F_{q_1} x ... x F_{q_s}` gives an equienergetic pair.
pub fn search_field_products(s: usize, q_max: u64) -> Result<Vec<Vec<u64>>> {
    if s < 3 || s.is_multiple_of(2) || s > 7 {
        return Err(Error::InvalidParameter(format!(
            "s must be odd with 3 <= s <= 7, got {s}"
        )));
    }
    if q_max > 512 {
        return Err(Error::InvalidParameter(format!(
            "q_max must be at most 512, got {q_max}"
        )));
    }
    let pool = prime_powers_upto(q_max);
    let mut found: Vec<Vec<u64>> = (0..pool.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            let mut prefix = vec![pool[i]];
            if odd_sum(&vec![1.0 / (pool[i] - 1) as f64; s]) >= 1.0 - PRUNE_SLACK {
                extend(&mut prefix, i, &pool, s, &mut out);
            }
            out
        })
        .collect();
    found.sort();
    for t in &found {
        let report = equien_check(&RingProfile::fields(t)?)?;
        if !report.equal {
            return Err(Error::RouteDisagreement(format!(
                "search produced {t:?} but the spectrum disagrees"
            )));
        }
    }
    Ok(found)
}

/// Tuples with all `q_i` equal, found by testing every prime power directly.
pub fn search_equal_fields(s: usize, q_max: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for q in prime_powers_upto(q_max) {
        if equien_check(&RingProfile::fields(&vec![q; s])?)?.equal {
            out.push(q);
        }
    }
    Ok(out)
}

/// `G_R` for `R = F_q x F_q`: `srg(q^2, (q-1)^2, (q-2)^2, (q-1)(q-2))`.
pub fn two_fields_srg(q: u64) -> Result<SrgParams> {
    if q < 3 || prime_power(q).is_none() {
        return Err(Error::InvalidParameter(format!(
            "need a prime power q >= 3, got {q}"
        )));
    }
    Ok(SrgParams::new(
        q * q,
        (q - 1) * (q - 1),
        (q - 2) * (q - 2),
        (q - 1) * (q - 2),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{numeric_spectrum, srg_detect, unitary_cayley_concrete};
    use crate::spectra::exact_trace;
    use crate::srg::oa_params;
    use proptest::prelude::*;

    fn prof(s: &str) -> RingProfile {
        s.parse().unwrap()
    }

    #[test]
    fn spectra_examples() {
        assert_eq!(
            unitary_spectrum(&prof("5:1")),
            Spectrum::integral(&[(4, 1), (-1, 4)])
        );
        assert_eq!(
            unitary_spectrum(&prof("2:2")),
            Spectrum::integral(&[(2, 1), (0, 2), (-2, 1)])
        );
        let two = unitary_spectrum(&prof("3,7"));
        assert_eq!(
            two,
            Spectrum::integral(&[(12, 1), (1, 12), (-2, 6), (-6, 2)])
        );
        assert_eq!(two.n(), 21);
    }

    #[test]
    fn sums_examples() {
        let ss = subset_sums(&prof("3,5,5"));
        assert_eq!((ss.s_o, ss.s_e, ss.full_product, ss.m), (10, 32, 32, 1));
        let ss = subset_sums(&prof("9:3"));
        assert_eq!((ss.s_e, ss.s_o), (0, 0));
        let ss = subset_sums(&prof("4,7"));
        assert_eq!((ss.s_e, ss.s_o), (0, 3 + 6));
    }

    #[test]
    fn sums_by_enumeration() {
        for p in ["3,5,5", "2,3,4,5,7", "4:2,9:3,5,8:8,7"] {
            let p = prof(p);
            let xs: Vec<u128> = p.factors().iter().map(|(q, _)| (*q - 1) as u128).collect();
            let s = xs.len();
            let (mut e, mut o, mut total) = (0u128, 0u128, 0u128);
            for mask in 0u32..(1 << s) {
                let pc: u128 = (0..s)
                    .filter(|j| mask >> j & 1 == 1)
                    .map(|j| xs[j])
                    .product();
                let c = mask.count_ones() as usize;
                total += pc;
                if c < s && c % 2 == 1 {
                    o += pc;
                } else if c > 0 && c < s {
                    e += pc;
                }
            }
            let ss = subset_sums(&p);
            assert_eq!((ss.s_e, ss.s_o), (e, o));
            assert_eq!(
                total,
                p.factors()
                    .iter()
                    .map(|(q, _)| *q as u128)
                    .product::<u128>()
            );
        }
    }

    #[test]
    fn checks() {
        assert!(equien_check(&prof("4,4")).unwrap().equal);
        assert!(equien_check(&prof("3,5,5")).unwrap().equal);
        assert!(equien_check(&prof("4,4,4")).unwrap().equal);
        for q in [2, 3, 4, 5, 7, 8, 9, 11] {
            assert!(
                !equien_check(&RingProfile::fields(&[q; 5]).unwrap())
                    .unwrap()
                    .equal
            );
        }
        assert!(equien_check(&prof("2:2")).unwrap().equal);
        assert!(!equien_check(&prof("2:4")).unwrap().equal);
        assert!(equien_check(&prof("3,4")).unwrap().equal);
        assert!(!equien_check(&prof("3:3,4")).unwrap().equal);
    }

    #[test]
    fn profile_validation() {
        assert!(matches!(
            "6:1".parse::<RingProfile>(),
            Err(Error::InvalidProfile(_))
        ));
        assert!(matches!(
            "4:3".parse::<RingProfile>(),
            Err(Error::InvalidProfile(_))
        ));
        assert!(matches!(
            "4:x".parse::<RingProfile>(),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!(matches!(
            "4:2,,".parse::<RingProfile>(),
            Err(Error::Parse { column: 5, .. })
        ));
        assert_eq!(prof("4:2, 9").to_string(), "4:2,9:1");
        assert_eq!(prof("4:2").realize(), None);
        assert_eq!(
            prof("2:4").realize(),
            Some(vec![LocalFactor::IntegersMod { p: 2, a: 3 }])
        );
    }

    #[test]
    fn searches() {
        assert_eq!(
            search_field_products(3, 16).unwrap(),
            vec![vec![3, 4, 7], vec![3, 5, 5], vec![4, 4, 4]]
        );
        assert_eq!(search_field_products(3, 4).unwrap(), vec![vec![4, 4, 4]]);
        assert!(search_equal_fields(5, 512).unwrap().is_empty());
        assert_eq!(search_equal_fields(3, 64).unwrap(), vec![4]);
        assert!(search_field_products(4, 16).is_err());
    }

    #[test]
    fn search_matches_brute_force() {
        let pool = prime_powers_upto(40);
        let mut brute = Vec::new();
        for (i, &a) in pool.iter().enumerate() {
            for (j, &b) in pool.iter().enumerate().skip(i) {
                for &c in &pool[j..] {
                    if closed_condition(&RingProfile::fields(&[a, b, c]).unwrap()) {
                        brute.push(vec![a, b, c]);
                    }
                }
            }
        }
        assert_eq!(search_field_products(3, 40).unwrap(), brute);
    }

    #[test]
    fn two_fields() {
        assert_eq!(two_fields_srg(4).unwrap(), SrgParams::new(16, 9, 4, 6));
        assert_eq!(oa_params(&two_fields_srg(4).unwrap()), Some((4, 3)));
        assert_eq!(two_fields_srg(3).unwrap(), SrgParams::new(9, 4, 1, 2));
        assert!(two_fields_srg(6).is_err());
        let g = unitary_cayley_concrete(&[LocalFactor::Field(5), LocalFactor::Field(5)]).unwrap();
        assert_eq!(srg_detect(&g), Some(two_fields_srg(5).unwrap()));
        let g = unitary_cayley_concrete(&[LocalFactor::Field(4), LocalFactor::Field(5)]).unwrap();
        assert_eq!(srg_detect(&g), None);
    }

    #[test]
    fn concrete_agreement() {
        for p in [
            "2:2", "3:3", "2:8", "3,5", "4,4", "2:2,3", "3,5,5", "2:4,9", "5:5,4", "2,2,3",
        ] {
            let p = prof(p);
            let g = unitary_cayley_concrete(&p.realize().unwrap()).unwrap();
            assert!(
                numeric_spectrum(&g)
                    .unwrap()
                    .matches(&unitary_spectrum(&p), 1e-7),
                "{p}"
            );
        }
    }

    fn arb_profile(max_s: usize) -> impl Strategy<Value = RingProfile> {
        let factor = (
            prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16]),
            0u32..3,
        )
            .prop_map(|(q, e)| {
                let (p, _) = prime_power(q).unwrap();
                (q, p.pow(e))
            });
        prop::collection::vec(factor, 1..=max_s).prop_map(|f| RingProfile::new(f).unwrap())
    }

    proptest! {
        #[test]
        fn conservation_and_trace(p in arb_profile(6)) {
            let spec = unitary_spectrum(&p);
            prop_assert_eq!(spec.n(), p.order());
            prop_assert!(exact_trace(&spec).unwrap().is_zero());
            let r = equien_check(&p).unwrap();
            prop_assert_eq!(r.route_delta, r.route_closed);
        }

        #[test]
        fn local_rings(p in arb_profile(1)) {
            let (q, m) = p.factors()[0];
            prop_assert_eq!(equien_check(&p).unwrap().equal, m == q);
        }
    }
}
