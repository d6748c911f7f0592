//! Cayley graphs on finite abelian groups, Paley and generalized Paley
//! graphs, and unitary Cayley graphs of products of local rings.

use super::field::{prime_power, Field};
use super::{gen_named, kronecker, Family, Graph};
use crate::error::{Error, Result};

/// `Z_{m_1} x ... x Z_{m_r}` with elements indexed in mixed radix (first
/// coordinate least significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u64>) -> AbelianGroup {
        assert!(
            moduli.iter().all(|m| *m >= 1),
            "group moduli must be positive"
        );
        AbelianGroup { moduli }
    }

    /// The additive group of `GF(p^m)` in the field's index encoding.
    pub fn of_field(f: &Field) -> AbelianGroup {
        AbelianGroup::new(vec![f.characteristic(); f.degree() as usize])
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    pub fn encode(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.moduli)
            .rev()
            .fold(0u64, |acc, (c, m)| acc * m + c % m) as usize
    }

    pub fn decode(&self, mut x: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|m| {
                let c = x as u64 % m;
                x /= *m as usize;
                c
            })
            .collect()
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let diff: Vec<u64> = x
            .iter()
            .zip(&y)
            .zip(&self.moduli)
            .map(|((p, q), m)| (p + m - q) % m)
            .collect();
        self.encode(&diff)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.sub(0, a)
    }
}

/// `x ~ y` iff `x - y` lies in `connection`; 0 in the set produces loops.
pub fn cayley(group: &AbelianGroup, connection: &[usize]) -> Result<Graph> {
    let n = group.order();
    let mut member = vec![false; n];
    for &c in connection {
        if c >= n {
            return Err(Error::InvalidParameter(format!(
                "element {c} outside a group of order {n}"
            )));
        }
        member[c] = true;
    }
    if connection.iter().any(|&c| !member[group.neg(c)]) {
        return Err(Error::NonSymmetricConnection);
    }
    let mut g = Graph::empty(n, member[0]);
    // difference table once per pair of indices
    for x in 0..n {
        for y in x..n {
            if member[group.sub(x, y)] {
                g.set(x, y);
            }
        }
    }
    Ok(g)
}

fn field_cayley(f: &Field, connection: &[super::FieldElem]) -> Result<Graph> {
    let group = AbelianGroup::of_field(f);
    let conn: Vec<usize> = connection.iter().map(|e| e.0 as usize).collect();
    cayley(&group, &conn)
}

/// Paley graph on `GF(q)`, `q = 1 (mod 4)`.
pub fn paley(q: u64) -> Result<Graph> {
    if q % 4 != 1 || prime_power(q).is_none() {
        return Err(Error::InvalidParameter(format!(
            "Paley graph needs a prime power q = 1 mod 4, got {q}"
        )));
    }
    let f = Field::new(q)?;
    field_cayley(&f, &f.power_residues(2))
}

/// Generalized Paley graph: `GF(q)` with the nonzero `k`-th powers as
/// connection set.
pub fn gp_graph(k: u64, q: u64) -> Result<Graph> {
    let f = Field::new(q)?;
    if k == 0 || !(q - 1).is_multiple_of(k) {
        return Err(Error::InvalidParameter(format!(
            "{k} does not divide {q} - 1"
        )));
    }
    field_cayley(&f, &f.power_residues(k))
}

/// A local factor realised at element level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalFactor {
    Field(u64),
    /// `Z_{p^a}`.
    IntegersMod {
        p: u64,
        a: u32,
    },
}

impl LocalFactor {
    pub fn order(&self) -> u64 {
        match self {
            LocalFactor::Field(q) => *q,
            LocalFactor::IntegersMod { p, a } => p.pow(*a),
        }
    }

    /// Residue field size and maximal ideal size.
    pub fn profile(&self) -> (u64, u64) {
        match self {
            LocalFactor::Field(q) => (*q, 1),
            LocalFactor::IntegersMod { p, a } => (*p, p.pow(a - 1)),
        }
    }
}

/// Unitary Cayley graph `X(R, R*)` of one local factor.
fn local_unitary(f: &LocalFactor) -> Result<Graph> {
    match *f {
        LocalFactor::Field(q) => {
            prime_power(q).ok_or_else(|| {
                Error::UnsupportedFactor(format!("F_{q}: {q} is not a prime power"))
            })?;
            // every nonzero element of a field is a unit
            gen_named(&Family::Complete(q as usize))
        }
        LocalFactor::IntegersMod { p, a } => {
            if !super::field::is_prime(p) || a == 0 {
                return Err(Error::UnsupportedFactor(format!("Z_{{{p}^{a}}}")));
            }
            let n = p.pow(a);
            let group = AbelianGroup::new(vec![n]);
            let units: Vec<usize> = (1..n).filter(|x| x % p != 0).map(|x| x as usize).collect();
            cayley(&group, &units)
        }
    }
}

/// `G_R` for `R = R_1 x ... x R_s`, the tensor product of the factor graphs.
pub fn unitary_cayley_concrete(factors: &[LocalFactor]) -> Result<Graph> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::UnsupportedFactor("empty factor list".into()))?;
    let mut g = local_unitary(first)?;
    for f in rest {
        g = kronecker(&g, &local_unitary(f)?);
    }
    Ok(g)
}
