//! Dense graphs, the named families, products, and combinatorial predicates.

mod cayley;
mod eigen;
mod field;
mod io;

use std::collections::VecDeque;

use serde::Deserialize;

pub use cayley::{cayley, gp_graph, paley, unitary_cayley_concrete, AbelianGroup, LocalFactor};
pub use eigen::{certified_spectrum, jacobi_eigenvalues, numeric_spectrum, MAX_EIGEN_VERTICES};
pub use field::{is_prime, prime_power, Field, FieldElem};
pub use io::{parse_graph, write_graph};

use crate::error::{Error, Result};
use crate::spectra::Spectrum;
use crate::srg::SrgParams;

/// Vertex cap for combinatorial predicates.
pub const MAX_VERTICES: usize = 20_000;

/// Symmetric 0/1 adjacency over `n` vertices stored as bit rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    loops_allowed: bool,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={}, loops={})",
            self.n,
            self.edge_count(),
            self.loops_allowed
        )
    }
}

impl Graph {
    pub fn empty(n: usize, loops_allowed: bool) -> Graph {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            loops_allowed,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)], loops_allowed: bool) -> Result<Graph> {
        let mut g = Graph::empty(n, loops_allowed);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v && !loops_allowed {
                return Err(Error::InvalidParameter(format!(
                    "loop at {u} in a loopless graph"
                )));
            }
            g.set(u, v);
        }
        Ok(g)
    }

    pub(crate) fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn loops_allowed(&self) -> bool {
        self.loops_allowed
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|u| self.has_edge(u, u))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    /// Row sum of the adjacency matrix (a loop counts once).
    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    /// Edges `(u, v)` with `u <= v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u..self.n)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    fn common(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Row-major dense adjacency matrix.
    pub fn adjacency_f64(&self) -> Vec<f64> {
        let mut a = vec![0.0; self.n * self.n];
        for (u, v) in self.edges() {
            a[u * self.n + v] = 1.0;
            a[v * self.n + u] = 1.0;
        }
        a
    }
}

/// Named constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// `parts` independent sets of `size` vertices, all cross pairs adjacent.
    CompleteMultipartite {
        parts: usize,
        size: usize,
    },
    Crown(usize),
    Lattice(usize),
    Triangular(usize),
    Hypercube(usize),
    /// `C_n` times `K_2`.
    Prism(usize),
    Petersen,
    Heawood,
    Shrikhande,
    Q3,
    K3PrismK2,
    Paley(u64),
    Gp {
        k: u64,
        q: u64,
    },
    /// Hamiltonian cubic graph from an LCF code repeated `repeats` times.
    Lcf {
        shifts: Vec<i64>,
        repeats: usize,
    },
}

/// Family names accepted by [`Family::from_args`].
pub const FAMILY_NAMES: &[&str] = &[
    "cycle",
    "complete",
    "complete-bipartite",
    "multipartite",
    "crown",
    "lattice",
    "triangular",
    "hypercube",
    "prism",
    "petersen",
    "heawood",
    "shrikhande",
    "cube",
    "k3-prism",
    "paley",
    "gp",
    "lcf",
];

/// Loose parameter bag for building a family by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyArgs {
    pub n: Option<u64>,
    pub t: Option<u64>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub m: Option<u64>,
    pub k: Option<u64>,
    pub q: Option<u64>,
    pub shifts: Option<Vec<i64>>,
    pub repeats: Option<usize>,
}

impl Family {
    pub fn from_args(name: &str, args: &FamilyArgs) -> Result<Family> {
        let get = |v: Option<u64>, key: &str| {
            v.ok_or_else(|| Error::InvalidParameter(format!("family `{name}` needs --{key}")))
        };
        let n = || get(args.n, "n").map(|x| x as usize);
        Ok(match name {
            "cycle" => Family::Cycle(n()?),
            "complete" => Family::Complete(n()?),
            "complete-bipartite" => {
                Family::CompleteBipartite(get(args.a, "a")? as usize, get(args.b, "b")? as usize)
            }
            "multipartite" => Family::CompleteMultipartite {
                parts: get(args.a, "a")? as usize,
                size: get(args.m, "m")? as usize,
            },
            "crown" => Family::Crown(get(args.t, "t")? as usize),
            "lattice" => Family::Lattice(n()?),
            "triangular" => Family::Triangular(n()?),
            "hypercube" => Family::Hypercube(n()?),
            "prism" => Family::Prism(n()?),
            "petersen" => Family::Petersen,
            "heawood" => Family::Heawood,
            "shrikhande" => Family::Shrikhande,
            "cube" | "q3" => Family::Q3,
            "k3-prism" => Family::K3PrismK2,
            "paley" => Family::Paley(get(args.q, "q")?),
            "gp" => Family::Gp {
                k: get(args.k, "k")?,
                q: get(args.q, "q")?,
            },
            "lcf" => Family::Lcf {
                shifts: args
                    .shifts
                    .clone()
                    .ok_or_else(|| Error::InvalidParameter("family `lcf` needs shifts".into()))?,
                repeats: args.repeats.unwrap_or(1),
            },
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown family `{other}`; expected one of {}",
                    FAMILY_NAMES.join(", ")
                )))
            }
        })
    }
}

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

pub fn gen_named(family: &Family) -> Result<Graph> {
    use Family::*;
    match family {
        Cycle(n) => {
            need(*n >= 3, || format!("cycle needs n >= 3, got {n}"))?;
            let edges: Vec<_> = (0..*n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edges(*n, &edges, false)
        }
        Complete(n) => {
            need(*n >= 1, || "complete graph needs n >= 1".into())?;
            Ok(complement(&Graph::empty(*n, false), false))
        }
        CompleteBipartite(a, b) => {
            need(*a >= 1 && *b >= 1, || {
                format!("K_{{{a},{b}}} needs positive sides")
            })?;
            let mut g = Graph::empty(a + b, false);
            for u in 0..*a {
                for v in 0..*b {
                    g.set(u, a + v);
                }
            }
            Ok(g)
        }
        CompleteMultipartite { parts, size } => {
            need(*parts >= 1 && *size >= 1, || {
                "multipartite graph needs positive parts".into()
            })?;
            let n = parts * size;
            let mut g = Graph::empty(n, false);
            for u in 0..n {
                for v in u + 1..n {
                    if u / size != v / size {
                        g.set(u, v);
                    }
                }
            }
            Ok(g)
        }
        Crown(t) => {
            need(*t >= 2, || format!("crown needs t >= 2, got {t}"))?;
            let mut g = gen_named(&CompleteBipartite(*t, *t))?;
            for i in 0..*t {
                let (u, v) = (i, t + i);
                g.rows[u * g.words + v / 64] &= !(1 << (v % 64));
                g.rows[v * g.words + u / 64] &= !(1 << (u % 64));
            }
            Ok(g)
        }
        Lattice(n) => {
            need(*n >= 2, || format!("lattice needs n >= 2, got {n}"))?;
            Ok(line_graph(&gen_named(&CompleteBipartite(*n, *n))?))
        }
        Triangular(n) => {
            need(*n >= 4, || {
                format!("triangular graph needs n >= 4, got {n}")
            })?;
            Ok(line_graph(&gen_named(&Complete(*n))?))
        }
        Hypercube(d) => {
            need(*d >= 1 && *d <= 14, || {
                format!("hypercube dimension {d} out of range")
            })?;
            let n = 1usize << d;
            let mut g = Graph::empty(n, false);
            for u in 0..n {
                for b in 0..*d {
                    g.set(u, u ^ (1 << b));
                }
            }
            Ok(g)
        }
        Prism(n) => Ok(cartesian(
            &gen_named(&Cycle(*n))?,
            &gen_named(&Complete(2))?,
        )),
        Petersen => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::from_edges(10, &edges, false)
        }
        Heawood => {
            // incidence graph of the Fano plane with lines {i, i+1, i+3}
            let mut edges = Vec::new();
            for line in 0..7 {
                for off in [0, 1, 3] {
                    edges.push(((line + off) % 7, 7 + line));
                }
            }
            Graph::from_edges(14, &edges, false)
        }
        Shrikhande => {
            let z = AbelianGroup::new(vec![4, 4]);
            let conn: Vec<usize> = [[1, 0], [3, 0], [0, 1], [0, 3], [1, 1], [3, 3]]
                .iter()
                .map(|e| z.encode(e))
                .collect();
            cayley(&z, &conn)
        }
        Q3 => gen_named(&Hypercube(3)),
        K3PrismK2 => gen_named(&Prism(3)),
        Paley(q) => paley(*q),
        Gp { k, q } => gp_graph(*k, *q),
        Lcf { shifts, repeats } => {
            let n = shifts.len() * repeats;
            need(n >= 4 && n % 2 == 0, || {
                format!("LCF code gives {n} vertices")
            })?;
            let mut g = Graph::empty(n, false);
            for i in 0..n {
                g.set(i, (i + 1) % n);
                let j = (i as i64 + shifts[i % shifts.len()]).rem_euclid(n as i64) as usize;
                need(j != i, || "LCF shift of 0".into())?;
                g.set(i, j);
            }
            need((0..n).all(|u| g.degree(u) == 3), || {
                "LCF code is not cubic".into()
            })?;
            Ok(g)
        }
    }
}

/// Tensor product: `(u, x) ~ (v, y)` iff `u ~ v` and `x ~ y`.
pub fn kronecker(g: &Graph, h: &Graph) -> Graph {
    let mut out = Graph::empty(g.n * h.n, g.loops_allowed || h.loops_allowed);
    let he: Vec<_> = h.edges().collect();
    for (u, v) in g.edges() {
        for &(x, y) in &he {
            out.set(u * h.n + x, v * h.n + y);
            out.set(u * h.n + y, v * h.n + x);
        }
    }
    out
}

/// Cartesian product: one coordinate equal, the other adjacent.
pub fn cartesian(g: &Graph, h: &Graph) -> Graph {
    let mut out = Graph::empty(g.n * h.n, g.loops_allowed || h.loops_allowed);
    for (u, v) in g.edges() {
        for x in 0..h.n {
            out.set(u * h.n + x, v * h.n + x);
        }
    }
    for (x, y) in h.edges() {
        for u in 0..g.n {
            out.set(u * h.n + x, u * h.n + y);
        }
    }
    out
}

/// Line graph over the non-loop edges in `edges()` order.
pub fn line_graph(g: &Graph) -> Graph {
    let edges: Vec<_> = g.edges().filter(|(u, v)| u != v).collect();
    let mut incident = vec![Vec::new(); g.n];
    for (i, (u, v)) in edges.iter().enumerate() {
        incident[*u].push(i);
        incident[*v].push(i);
    }
    let mut out = Graph::empty(edges.len(), false);
    for list in &incident {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                out.set(i, j);
            }
        }
    }
    out
}

/// `J - A` when `loops` (diagonal flipped too), else `J - A - I`.
pub fn complement(g: &Graph, loops: bool) -> Graph {
    let mut out = Graph::empty(g.n, loops);
    for u in 0..g.n {
        for v in u..g.n {
            let flip = !g.has_edge(u, v);
            if flip && (u != v || loops) {
                out.set(u, v);
            }
        }
    }
    out
}

/// The common degree, if every vertex has it.
pub fn regularity(g: &Graph) -> Option<usize> {
    let k = if g.n == 0 { 0 } else { g.degree(0) };
    (0..g.n).all(|u| g.degree(u) == k).then_some(k)
}

/// Two-colouring by breadth-first search.
pub fn is_bipartite(g: &Graph) -> bool {
    let mut colour = vec![u8::MAX; g.n];
    for s in 0..g.n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    queue.push_back(v);
                } else if colour[v] == colour[u] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_connected(g: &Graph) -> bool {
    if g.n == 0 {
        return true;
    }
    let mut seen = vec![false; g.n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == g.n
}

/// Parameters `(n, k, e, d)` when the loopless graph is strongly regular and
/// neither complete nor empty.
pub fn srg_detect(g: &Graph) -> Option<SrgParams> {
    if g.n > MAX_VERTICES || g.has_loops() {
        return None;
    }
    let k = regularity(g)?;
    if k == 0 || k + 1 == g.n {
        return None;
    }
    let (mut e, mut d) = (None, None);
    for u in 0..g.n {
        for v in u + 1..g.n {
            let c = g.common(u, v);
            let slot = if g.has_edge(u, v) { &mut e } else { &mut d };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
    }
    Some(SrgParams::new(g.n as u64, k as u64, e? as u64, d? as u64))
}

/// Equal spectra: exactly when both are exact, otherwise eigenvalue by
/// eigenvalue within `1e-7`.
pub fn spectra_isospectral(a: &Spectrum, b: &Spectrum) -> bool {
    if a.is_exact() && b.is_exact() {
        return a == b;
    }
    let (x, y) = (a.expanded_f64(), b.expanded_f64());
    x.len() == y.len() && x.iter().zip(&y).all(|(p, q)| (p - q).abs() <= 1e-7)
}

pub fn is_isospectral(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.n != g2.n {
        return Ok(false);
    }
    Ok(spectra_isospectral(
        &numeric_spectrum(g1)?,
        &numeric_spectrum(g2)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_by_name() {
        let args = FamilyArgs {
            t: Some(4),
            ..Default::default()
        };
        assert_eq!(Family::from_args("crown", &args).unwrap(), Family::Crown(4));
        let lcf = FamilyArgs {
            shifts: Some(vec![5, -5]),
            repeats: Some(7),
            ..Default::default()
        };
        assert_eq!(
            Family::from_args("lcf", &lcf).unwrap(),
            Family::Lcf {
                shifts: vec![5, -5],
                repeats: 7
            }
        );
        assert!(Family::from_args("crown", &FamilyArgs::default()).is_err());
        assert!(Family::from_args("moebius", &args).is_err());
        for name in FAMILY_NAMES {
            let all = FamilyArgs {
                n: Some(5),
                t: Some(3),
                a: Some(2),
                b: Some(3),
                m: Some(2),
                k: Some(3),
                q: Some(13),
                shifts: Some(vec![3, -3]),
                repeats: Some(4),
            };
            let fam = Family::from_args(name, &all).unwrap();
            assert!(gen_named(&fam).is_ok(), "{name}");
        }
    }

    #[test]
    fn crown_is_hexagon() {
        let cr3 = gen_named(&Family::Crown(3)).unwrap();
        assert_eq!((cr3.n(), regularity(&cr3)), (6, Some(2)));
        assert!(is_connected(&cr3));
        assert!(is_isospectral(&cr3, &gen_named(&Family::Cycle(6)).unwrap()).unwrap());
        assert!(is_bipartite(&gen_named(&Family::Crown(4)).unwrap()));
    }

    #[test]
    fn small_families() {
        let c4 = gen_named(&Family::CompleteMultipartite { parts: 2, size: 2 }).unwrap();
        assert_eq!(c4, {
            let mut g = gen_named(&Family::CompleteBipartite(2, 2)).unwrap();
            g.loops_allowed = false;
            g
        });
        assert_eq!(
            srg_detect(&gen_named(&Family::Lattice(4)).unwrap()),
            Some(SrgParams::new(16, 6, 2, 2))
        );
        assert_eq!(
            srg_detect(&gen_named(&Family::Lattice(3)).unwrap()),
            Some(SrgParams::new(9, 4, 1, 2))
        );
        assert_eq!(
            srg_detect(&gen_named(&Family::Petersen).unwrap()),
            Some(SrgParams::new(10, 3, 0, 1))
        );
        assert_eq!(srg_detect(&gen_named(&Family::Cycle(6)).unwrap()), None);
        assert_eq!(srg_detect(&gen_named(&Family::Complete(5)).unwrap()), None);
        assert_eq!(
            srg_detect(&gen_named(&Family::Triangular(6)).unwrap()),
            Some(SrgParams::new(15, 8, 4, 4))
        );
        assert!(gen_named(&Family::Cycle(2)).is_err());
        assert!(gen_named(&Family::Crown(1)).is_err());
    }

    #[test]
    fn lattice_parameters_for_a_range() {
        for n in 3..=12u64 {
            let g = gen_named(&Family::Lattice(n as usize)).unwrap();
            assert_eq!(
                srg_detect(&g),
                Some(SrgParams::new(n * n, 2 * n - 2, n - 2, 2))
            );
        }
    }

    #[test]
    fn products_and_complements() {
        let k2 = gen_named(&Family::Complete(2)).unwrap();
        let k3 = gen_named(&Family::Complete(3)).unwrap();
        let cr3 = gen_named(&Family::Crown(3)).unwrap();
        let kr = kronecker(&k2, &k3);
        assert_eq!(kr.edge_count(), cr3.edge_count());
        assert!(is_isospectral(&kr, &cr3).unwrap());
        // K2 x K3 relabelled: (i, x) -> i*3 + x, crown pairs i with 3 + i
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(kr.has_edge(x, 3 + y), cr3.has_edge(x, 3 + y));
            }
        }
        let k44 = gen_named(&Family::CompleteBipartite(4, 4)).unwrap();
        assert_eq!(
            srg_detect(&line_graph(&k44)),
            Some(SrgParams::new(16, 6, 2, 2))
        );
        let p = gen_named(&Family::Petersen).unwrap();
        assert_eq!(complement(&complement(&p, false), false), p);
        let pl = complement(&p, true);
        assert!(pl.has_loops());
        assert_eq!(complement(&pl, true), {
            let mut q = p.clone();
            q.loops_allowed = true;
            q
        });
        let q3 = gen_named(&Family::Q3).unwrap();
        assert!(!is_isospectral(&q3, &complement(&q3, false)).unwrap());
        let shr = gen_named(&Family::Shrikhande).unwrap();
        assert!(is_isospectral(&shr, &line_graph(&k44)).unwrap());
        assert_eq!(
            srg_detect(&complement(&shr, false)),
            Some(SrgParams::new(16, 9, 4, 6))
        );
    }

    #[test]
    fn heawood_and_lcf() {
        let h = gen_named(&Family::Heawood).unwrap();
        assert_eq!(regularity(&h), Some(3));
        assert!(is_bipartite(&h));
        let lcf = gen_named(&Family::Lcf {
            shifts: vec![5, -5],
            repeats: 7,
        })
        .unwrap();
        assert!(is_isospectral(&h, &lcf).unwrap());
        assert!(gen_named(&Family::Lcf {
            shifts: vec![1],
            repeats: 6
        })
        .is_err());
    }

    #[test]
    fn prism_and_cube() {
        let p = gen_named(&Family::K3PrismK2).unwrap();
        assert_eq!((p.n(), regularity(&p)), (6, Some(3)));
        assert!(!is_bipartite(&p));
        let q = gen_named(&Family::Q3).unwrap();
        assert!(is_bipartite(&q) && is_connected(&q));
    }
}
