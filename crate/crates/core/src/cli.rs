//! Command-line front end: argument parsing, report types and rendering.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::builder::PossibleValuesParser;
use clap::{ArgGroup, Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{
    certified_spectrum, gen_named, parse_graph, regularity, spectra_isospectral, srg_detect,
    Family, FamilyArgs, Graph, FAMILY_NAMES, MAX_EIGEN_VERTICES,
};
use crate::rings::{
    equien_check, search_equal_fields, search_field_products, subset_sums, unitary_spectrum,
    RingProfile,
};
use crate::spectra::{
    check_equienergetic, complement_spectrum, discrepancy, energy, DiscrepancyBreakdown, Quantity,
    Spectrum,
};
use crate::srg::{
    classify_with_diagnostic, complement_params, eigen_data, energy_closed, equien_tuples_for,
    equien_verdict, gp_spectrum, is_primitive, oa_params, srg_spectrum, EquienClass, SrgParams,
};
use crate::verify::{crown_spectrum, run_suite, Suite, SuiteReport};

/// Upper limit for `enumerate --n-max`.
pub const ENUMERATE_LIMIT: u64 = 1_000_000;
const ENUMERATE_CHUNK: u64 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "equigraph",
    version,
    about = "Energy of regular graphs against their complements"
)]
pub struct Cli {
    /// Emit a JSON report.
    #[arg(long, global = true, conflicts_with_all = ["csv", "pretty"])]
    pub json: bool,
    /// Emit CSV rows.
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub csv: bool,
    /// Emit human-readable text (default).
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Worker threads for enumeration and searches.
    #[arg(long, global = true, env = "EQUIGRAPH_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum, energy and discrepancy of a graph.
    Spectrum(SourceArgs),
    /// Decide whether a graph has the same energy as its complement
    /// (exit 0 equal, 1 not equal, 2 error).
    Check(SourceArgs),
    /// Classify an srg parameter tuple.
    Classify {
        #[arg(long, value_name = "N,K,E,D")]
        srg: SrgParams,
    },
    /// Stream every feasible primitive srg tuple with n <= N whose graphs
    /// match their complements in energy.
    Enumerate {
        #[arg(long, value_name = "N")]
        n_max: u64,
    },
    /// Search products of fields with an odd number of factors.
    RingsSearch(SearchArgs),
    /// Unitary Cayley graphs of finite commutative rings.
    #[command(subcommand)]
    Rings(RingsCommand),
    /// Run verification suites (all of them when none is named).
    Verify {
        #[arg(value_enum)]
        suites: Vec<Suite>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RingsCommand {
    Spectrum {
        #[arg(long, value_name = "Q:M,...")]
        ring: RingProfile,
    },
    Check {
        #[arg(long, value_name = "Q:M,...")]
        ring: RingProfile,
    },
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Number of fields (odd, 3 to 7).
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub qmax: u64,
    /// Only products of copies of one field.
    #[arg(long)]
    pub equal: bool,
}

#[derive(Debug, Default, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["family", "file", "ring", "srg"])))]
pub struct SourceArgs {
    #[arg(long, value_parser = PossibleValuesParser::new(FAMILY_NAMES))]
    pub family: Option<String>,
    #[arg(long, requires = "family")]
    pub n: Option<u64>,
    #[arg(long, requires = "family")]
    pub t: Option<u64>,
    #[arg(long, requires = "family")]
    pub a: Option<u64>,
    #[arg(long, requires = "family")]
    pub b: Option<u64>,
    #[arg(long, requires = "family")]
    pub m: Option<u64>,
    #[arg(long, requires = "family")]
    pub k: Option<u64>,
    #[arg(long, requires = "family")]
    pub q: Option<u64>,
    /// LCF shifts, comma separated.
    #[arg(
        long,
        requires = "family",
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    pub shifts: Option<Vec<i64>>,
    #[arg(long, requires = "family")]
    pub repeats: Option<usize>,
    /// Graph file: header `n loops`, then one `u v` edge per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long, value_name = "Q:M,...")]
    pub ring: Option<RingProfile>,
    #[arg(long, value_name = "N,K,E,D")]
    pub srg: Option<SrgParams>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

/// A number with its provenance.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Num {
    Exact { value: String },
    Approx { value: f64, radius: f64 },
}

impl From<&Quantity> for Num {
    fn from(q: &Quantity) -> Num {
        if q.is_exact() {
            Num::Exact {
                value: q.exact.to_string(),
            }
        } else {
            Num::Approx {
                value: q.to_f64(),
                radius: q.radius,
            }
        }
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Exact { value } => write!(f, "{value}"),
            Num::Approx { value, radius } => write!(f, "{value:.10} +/- {radius:.1e}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Breakdown {
    pub sigma: i64,
    pub t: u64,
    pub m0: u64,
    pub s: Num,
    pub delta: Num,
}

impl From<&DiscrepancyBreakdown> for Breakdown {
    fn from(b: &DiscrepancyBreakdown) -> Breakdown {
        Breakdown {
            sigma: b.sigma,
            t: b.t,
            m0: b.m0,
            s: (&b.s).into(),
            delta: (&b.delta_total).into(),
        }
    }
}

/// Top-level report shape shared by all commands.
#[derive(Debug, Serialize)]
pub struct Report<T> {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: T,
    pub provenance: Vec<String>,
}

/// A resolved graph source with the spectrum every command works from.
struct Source {
    inputs: BTreeMap<String, String>,
    spectrum: Spectrum,
    degree: Option<i64>,
    loops: bool,
    route: String,
    srg: Option<SrgParams>,
    ring: Option<RingProfile>,
}

fn family_args(a: &SourceArgs) -> FamilyArgs {
    FamilyArgs {
        n: a.n,
        t: a.t,
        a: a.a,
        b: a.b,
        m: a.m,
        k: a.k,
        q: a.q,
        shifts: a.shifts.clone(),
        repeats: a.repeats,
    }
}

fn graph_source(g: &Graph, mut inputs: BTreeMap<String, String>) -> Result<Source> {
    if g.n() > MAX_EIGEN_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "{} vertices exceed the eigensolver cap",
            g.n()
        )));
    }
    inputs.insert("vertices".into(), g.n().to_string());
    let degree = regularity(g).map(|k| k as i64);
    if let Some(p) = srg_detect(g) {
        if let Ok(spectrum) = srg_spectrum(&p) {
            return Ok(Source {
                inputs,
                spectrum,
                degree,
                loops: g.loops_allowed(),
                route: format!("exact: closed form for detected parameters {p}"),
                srg: Some(p),
                ring: None,
            });
        }
    }
    let spectrum = certified_spectrum(g)?;
    let route = if spectrum.is_exact() {
        "exact: Jacobi eigenvalues, each certified integral by exact rank of A - cI"
    } else {
        "approx: Jacobi eigenvalues; near-integer entries certified by exact rank where possible"
    };
    Ok(Source {
        inputs,
        spectrum,
        degree,
        loops: g.loops_allowed(),
        route: route.into(),
        srg: None,
        ring: None,
    })
}

fn resolve(args: &SourceArgs) -> Result<Source> {
    let mut inputs = BTreeMap::new();
    if let Some(p) = args.srg {
        inputs.insert("srg".into(), p.to_string());
        return Ok(Source {
            inputs,
            spectrum: srg_spectrum(&p)?,
            degree: Some(p.k as i64),
            loops: false,
            route: "exact: closed form from srg parameters".into(),
            srg: Some(p),
            ring: None,
        });
    }
    if let Some(r) = &args.ring {
        inputs.insert("ring".into(), r.to_string());
        return Ok(Source {
            inputs,
            spectrum: unitary_spectrum(r),
            degree: Some(r.units() as i64),
            loops: false,
            route: "exact: subset products over the local factors".into(),
            srg: None,
            ring: Some(r.clone()),
        });
    }
    if let Some(path) = &args.file {
        inputs.insert("file".into(), path.display().to_string());
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
        return graph_source(&parse_graph(&text)?, inputs);
    }
    let name = args.family.as_deref().expect("clap enforces a source");
    let fa = family_args(args);
    inputs.insert("family".into(), name.into());
    for (key, v) in [
        ("n", fa.n),
        ("t", fa.t),
        ("a", fa.a),
        ("b", fa.b),
        ("m", fa.m),
        ("k", fa.k),
        ("q", fa.q),
    ] {
        if let Some(v) = v {
            inputs.insert(key.into(), v.to_string());
        }
    }
    if let Some(s) = &fa.shifts {
        inputs.insert(
            "shifts".into(),
            s.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
        );
    }
    if let Some(r) = fa.repeats {
        inputs.insert("repeats".into(), r.to_string());
    }
    let family = Family::from_args(name, &fa)?;
    match family {
        Family::Crown(t) if t >= 2 => {
            return Ok(Source {
                inputs,
                spectrum: crown_spectrum(t as u64),
                degree: Some(t as i64 - 1),
                loops: false,
                route: "exact: closed form for crown graphs".into(),
                srg: None,
                ring: None,
            })
        }
        Family::Gp { k, q } => {
            if let Ok(gp) = gp_spectrum(k, q) {
                return Ok(Source {
                    inputs,
                    degree: Some(((q - 1) / k) as i64),
                    spectrum: gp.spectrum,
                    loops: false,
                    route: "exact: closed form for semiprimitive generalized Paley graphs".into(),
                    srg: None,
                    ring: None,
                });
            }
        }
        _ => {}
    }
    graph_source(&gen_named(&family)?, inputs)
}

#[derive(Debug, Serialize)]
pub struct SpectrumResult {
    pub vertices: u64,
    pub degree: Option<i64>,
    pub spectrum: Spectrum,
    pub spectrum_text: String,
    pub energy: Num,
    pub discrepancy: Option<Breakdown>,
}

#[derive(Debug, Serialize)]
pub struct Route {
    pub name: String,
    pub equal: bool,
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub vertices: u64,
    pub degree: i64,
    pub loops: bool,
    pub equal: bool,
    pub energy: Num,
    pub energy_complement: Num,
    pub discrepancy: Option<Breakdown>,
    /// `2k + 1 - n` for loopless graphs, `2k - n` with loops.
    pub target: i64,
    pub complement_spectrum: String,
    pub isospectral: bool,
    pub routes: Vec<Route>,
}

#[derive(Debug, Serialize)]
pub struct SrgRow {
    pub n: u64,
    pub k: u64,
    pub e: u64,
    pub d: u64,
    pub class: String,
    pub alpha: u64,
    pub r: String,
    pub s: String,
    pub m_r: String,
    pub m_s: String,
    pub energy: String,
    pub oa: String,
}

pub fn srg_row(p: &SrgParams, cls: &EquienClass) -> Result<SrgRow> {
    let ed = eigen_data(p)?;
    Ok(SrgRow {
        n: p.n,
        k: p.k,
        e: p.e,
        d: p.d,
        class: cls.to_string(),
        alpha: ed.alpha,
        r: ed.r.to_string(),
        s: ed.s.to_string(),
        m_r: ed.m_r.to_string(),
        m_s: ed.m_s.to_string(),
        energy: energy_closed(p)?.to_string(),
        oa: oa_params(p)
            .map(|(n, m)| format!("OA({n},{m})"))
            .unwrap_or_default(),
    })
}

#[derive(Debug, Serialize)]
pub struct ClassifyResult {
    pub row: SrgRow,
    pub primitive: bool,
    pub equal: bool,
    pub complement: String,
    pub energy_complement: String,
    pub diagnostic: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SearchRow {
    pub fields: Vec<u64>,
    pub order: u64,
    pub degree: u64,
    pub energy: String,
}

#[derive(Debug, Serialize)]
pub struct SearchResult {
    pub s: usize,
    pub qmax: u64,
    pub equal_fields_only: bool,
    pub solutions: Vec<SearchRow>,
}

#[derive(Debug, Serialize)]
pub struct RingSpectrumResult {
    #[serde(flatten)]
    pub base: SpectrumResult,
    pub units: u64,
    pub s_even: u128,
    pub s_odd: u128,
    pub m: u128,
}

/// Rendering beyond JSON.
trait Render: Serialize {
    fn pretty(&self, w: &mut dyn Write) -> io::Result<()>;
    fn csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()>;
}

impl Render for SpectrumResult {
    fn pretty(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "vertices:  {}", self.vertices)?;
        match self.degree {
            Some(k) => writeln!(w, "degree:    {k}")?,
            None => writeln!(w, "degree:    not regular")?,
        }
        writeln!(w, "spectrum:  {}", self.spectrum_text)?;
        writeln!(w, "energy:    {}", self.energy)?;
        if let Some(b) = &self.discrepancy {
            writeln!(
                w,
                "Delta:     {} (sigma {}, t {}, m0 {}, S {})",
                b.delta, b.sigma, b.t, b.m0, b.s
            )?;
        }
        Ok(())
    }

    fn csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()> {
        w.write_record(["value", "multiplicity", "kind", "radius"])?;
        for (e, m) in self.spectrum.entries() {
            let (kind, value) = match e.as_exact() {
                Some(x) => ("exact", x.to_string()),
                None => ("approx", format!("{}", e.to_f64())),
            };
            w.write_record([value, m.to_string(), kind.into(), format!("{}", e.radius())])?;
        }
        Ok(())
    }
}

impl Render for RingSpectrumResult {
    fn pretty(&self, w: &mut dyn Write) -> io::Result<()> {
        self.base.pretty(w)?;
        writeln!(w, "units:     {}", self.units)?;
        writeln!(
            w,
            "S_e, S_o:  {}, {} (M = {})",
            self.s_even, self.s_odd, self.m
        )
    }

    fn csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()> {
        self.base.csv(w)
    }
}

impl Render for CheckResult {
    fn pretty(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "vertices:           {}", self.vertices)?;
        writeln!(
            w,
            "degree:             {}{}",
            self.degree,
            if self.loops { " (with loops)" } else { "" }
        )?;
        writeln!(w, "energy:             {}", self.energy)?;
        writeln!(w, "complement energy:  {}", self.energy_complement)?;
        if let Some(b) = &self.discrepancy {
            writeln!(
                w,
                "Delta:              {} (sigma {}, t {}, m0 {}, S {})",
                b.delta, b.sigma, b.t, b.m0, b.s
            )?;
        }
        let label = if self.loops { "2k - n:" } else { "2k + 1 - n:" };
        writeln!(w, "{label:<20}{}", self.target)?;
        writeln!(w, "complement:         {}", self.complement_spectrum)?;
        writeln!(
            w,
            "isospectral:        {}",
            if self.isospectral { "yes" } else { "no" }
        )?;
        for r in &self.routes {
            writeln!(
                w,
                "route {}: {}",
                r.name,
                if r.equal { "equal" } else { "not equal" }
            )?;
        }
        writeln!(
            w,
            "verdict:            {}",
            if self.equal { "equal" } else { "not equal" }
        )
    }

    fn csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()> {
        w.write_record([
            "vertices",
            "degree",
            "loops",
            "energy",
            "energy_complement",
            "delta",
            "target",
            "equal",
        ])?;
        w.write_record([
            self.vertices.to_string(),
            self.degree.to_string(),
            self.loops.to_string(),
            self.energy.to_string(),
            self.energy_complement.to_string(),
            self.discrepancy
                .as_ref()
                .map(|b| b.delta.to_string())
                .unwrap_or_default(),
            self.target.to_string(),
            self.equal.to_string(),
        ])
    }
}

const SRG_HEADER: [&str; 12] = [
    "n", "k", "e", "d", "class", "alpha", "r", "s", "m_r", "m_s", "energy", "oa",
];

fn pretty_srg_row(w: &mut dyn Write, r: &SrgRow) -> io::Result<()> {
    writeln!(
        w,
        "srg({},{},{},{})  {}  alpha={}  r={}^{}  s={}^{}  E={}{}",
        r.n,
        r.k,
        r.e,
        r.d,
        r.class,
        r.alpha,
        r.r,
        r.m_r,
        r.s,
        r.m_s,
        r.energy,
        if r.oa.is_empty() {
            String::new()
        } else {
            format!("  {}", r.oa)
        }
    )
}

impl Render for ClassifyResult {
    fn pretty(&self, w: &mut dyn Write) -> io::Result<()> {
        pretty_srg_row(w, &self.row)?;
        writeln!(
            w,
            "primitive:          {}",
            if self.primitive { "yes" } else { "no" }
        )?;
        writeln!(w, "complement:         {}", self.complement)?;
        writeln!(w, "complement energy:  {}", self.energy_complement)?;
        if let Some(d) = &self.diagnostic {
            writeln!(w, "note:               {d}")?;
        }
        writeln!(
            w,
            "verdict:            {}",
            if self.equal { "equal" } else { "not equal" }
        )
    }

    fn csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()> {
        w.write_record(SRG_HEADER)?;
        w.serialize(&self.row)
    }
}

impl Render for Vec<SrgRow> {
    fn pretty(&self, w: &mut dyn Write) -> io::Result<()> {
        self.iter().try_for_each(|r| pretty_srg_row(w, r))
    }

    fn csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()> {
        self.iter().try_for_each(|r| w.serialize(r))
    }
}

impl Render for SearchResult {
    fn pretty(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(
            w,
            "{} solutions with s = {}, q <= {}",
            self.solutions.len(),
            self.s,
            self.qmax
        )?;
        for r in &self.solutions {
            let f: Vec<String> = r.fields.iter().map(|q| format!("F_{q}")).collect();
            writeln!(
                w,
                "  {}  |R| = {}  k = {}  E = {}",
                f.join(" x "),
                r.order,
                r.degree,
                r.energy
            )?;
        }
        Ok(())
    }

    fn csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()> {
        w.write_record(["fields", "order", "degree", "energy"])?;
        for r in &self.solutions {
            let f: Vec<String> = r.fields.iter().map(u64::to_string).collect();
            w.write_record([
                f.join(":"),
                r.order.to_string(),
                r.degree.to_string(),
                r.energy.clone(),
            ])?;
        }
        Ok(())
    }
}

impl Render for Vec<SuiteReport> {
    fn pretty(&self, w: &mut dyn Write) -> io::Result<()> {
        for s in self {
            writeln!(w, "{}: {}", s.suite, if s.passed { "PASS" } else { "FAIL" })?;
            for c in &s.claims {
                writeln!(
                    w,
                    "  [{}] #{} {}: {}",
                    if c.passed { "pass" } else { "FAIL" },
                    c.criterion,
                    c.name,
                    c.detail
                )?;
            }
        }
        Ok(())
    }

    fn csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()> {
        w.write_record(["suite", "criterion", "claim", "passed", "detail"])?;
        for s in self {
            for c in &s.claims {
                w.write_record([
                    s.suite.to_string(),
                    c.criterion.to_string(),
                    c.name.clone(),
                    c.passed.to_string(),
                    c.detail.clone(),
                ])?;
            }
        }
        Ok(())
    }
}

/// Headers are written explicitly by each renderer.
fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out)
}

fn emit<T: Render>(out: &mut dyn Write, format: Format, report: &Report<T>) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Pretty => {
            for note in &report.provenance {
                writeln!(out, "# {note}")?;
            }
            report.results.pretty(out)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            report.results.csv(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn report<T>(
    command: &str,
    inputs: BTreeMap<String, String>,
    results: T,
    provenance: Vec<String>,
) -> Report<T> {
    Report {
        command: command.into(),
        inputs,
        results,
        provenance,
    }
}

fn spectrum_result(src: &Source) -> Result<SpectrumResult> {
    let regular_principal = src.degree.is_some_and(|k| {
        src.spectrum
            .principal_eig()
            .cmp_int(k)
            .is_none_or(|o| o.is_eq())
    });
    Ok(SpectrumResult {
        vertices: src.spectrum.n(),
        degree: src.degree,
        spectrum_text: src.spectrum.to_string(),
        energy: (&energy(&src.spectrum)).into(),
        discrepancy: if regular_principal {
            Some((&discrepancy(&src.spectrum)?).into())
        } else {
            None
        },
        spectrum: src.spectrum.clone(),
    })
}

fn cmd_spectrum(out: &mut dyn Write, format: Format, args: &SourceArgs) -> Result<i32> {
    let src = resolve(args)?;
    let base = spectrum_result(&src)?;
    let provenance = vec![src.route.clone()];
    if let Some(r) = &src.ring {
        let ss = subset_sums(r);
        let res = RingSpectrumResult {
            base,
            units: r.units(),
            s_even: ss.s_e,
            s_odd: ss.s_o,
            m: ss.m,
        };
        emit(
            out,
            format,
            &report("spectrum", src.inputs, res, provenance),
        )?;
    } else {
        emit(
            out,
            format,
            &report("spectrum", src.inputs, base, provenance),
        )?;
    }
    Ok(0)
}

fn cmd_check(out: &mut dyn Write, format: Format, args: &SourceArgs) -> Result<i32> {
    let src = resolve(args)?;
    let k = src
        .degree
        .ok_or_else(|| Error::InvalidParameter("graph is not regular".into()))?;
    let rep = check_equienergetic(&src.spectrum, k, src.loops)?;
    let comp = complement_spectrum(&src.spectrum, k, src.loops);
    let mut provenance = vec![src.route.clone()];
    let mut routes = vec![Route {
        name: if src.loops {
            "n = 2k".into()
        } else {
            "Delta = 2k + 1 - n".into()
        },
        equal: rep.equal,
    }];
    if let Some(p) = &src.srg {
        if is_primitive(p) {
            let v = equien_verdict(p)?;
            routes.push(Route {
                name: format!("srg closed condition for {p}"),
                equal: v.equal,
            });
            provenance.push("srg verdict cross-checked against the spectral route".into());
        }
    }
    if let Some(r) = &src.ring {
        let rr = equien_check(r)?;
        routes.push(Route {
            name: "ring closed condition".into(),
            equal: rr.route_closed,
        });
    }
    if routes.iter().any(|r| r.equal != rep.equal) {
        return Err(Error::RouteDisagreement(format!("{routes:?}")));
    }
    let res = CheckResult {
        vertices: rep.n,
        degree: k,
        loops: src.loops,
        equal: rep.equal,
        energy: (&rep.energy).into(),
        energy_complement: (&rep.energy_complement).into(),
        discrepancy: rep.delta.as_ref().map(Into::into),
        target: 2 * k + i64::from(!src.loops) - rep.n as i64,
        complement_spectrum: comp.to_string(),
        isospectral: spectra_isospectral(&src.spectrum, &comp),
        routes,
    };
    let code = if res.equal { 0 } else { 1 };
    emit(out, format, &report("check", src.inputs, res, provenance))?;
    Ok(code)
}

fn cmd_classify(out: &mut dyn Write, format: Format, p: &SrgParams) -> Result<i32> {
    let (cls, diagnostic) = classify_with_diagnostic(p)?;
    let c = complement_params(p)?;
    let res = ClassifyResult {
        row: srg_row(p, &cls)?,
        primitive: is_primitive(p),
        equal: equien_verdict(p)?.equal,
        complement: c.to_string(),
        energy_complement: energy_closed(&c)?.to_string(),
        diagnostic,
    };
    let inputs = BTreeMap::from([("srg".to_string(), p.to_string())]);
    let provenance = vec!["exact: eigenvalues and energies from the srg parameters".to_string()];
    emit(out, format, &report("classify", inputs, res, provenance))?;
    Ok(0)
}

fn enumerate_chunk(lo: u64, hi: u64) -> Result<Vec<SrgRow>> {
    let rows: Vec<_> = (lo..=hi)
        .into_par_iter()
        .flat_map_iter(equien_tuples_for)
        .collect();
    rows.iter()
        .map(|(p, cls)| {
            if !matches!(cls, EquienClass::Conference(_)) && oa_params(p).is_none() {
                return Err(Error::RouteDisagreement(format!(
                    "{p} classified {cls} without OA parameters"
                )));
            }
            srg_row(p, cls)
        })
        .collect()
}

fn cmd_enumerate(out: &mut dyn Write, format: Format, n_max: u64) -> Result<i32> {
    if n_max > ENUMERATE_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "n_max {n_max} exceeds {ENUMERATE_LIMIT}"
        )));
    }
    let chunks = (0..n_max.div_ceil(ENUMERATE_CHUNK)).map(|i| {
        (
            i * ENUMERATE_CHUNK + 1,
            ((i + 1) * ENUMERATE_CHUNK).min(n_max),
        )
    });
    match format {
        Format::Json => {
            let mut rows = Vec::new();
            for (lo, hi) in chunks {
                rows.extend(enumerate_chunk(lo, hi)?);
            }
            let inputs = BTreeMap::from([("n_max".to_string(), n_max.to_string())]);
            emit(
                out,
                format,
                &report(
                    "enumerate",
                    inputs,
                    rows,
                    vec!["exact: integer prescreen, then exact classification".into()],
                ),
            )?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(SRG_HEADER)?;
            for (lo, hi) in chunks {
                enumerate_chunk(lo, hi)?.csv(&mut w)?;
                w.flush()?;
            }
        }
        Format::Pretty => {
            for (lo, hi) in chunks {
                enumerate_chunk(lo, hi)?.pretty(out)?;
                out.flush()?;
            }
        }
    }
    Ok(0)
}

fn cmd_search(out: &mut dyn Write, format: Format, a: &SearchArgs) -> Result<i32> {
    let found = if a.equal {
        search_equal_fields(a.s, a.qmax)?
            .into_iter()
            .map(|q| vec![q; a.s])
            .collect()
    } else {
        search_field_products(a.s, a.qmax)?
    };
    let solutions = found
        .into_iter()
        .map(|f| {
            let r = RingProfile::fields(&f)?;
            Ok(SearchRow {
                order: r.order(),
                degree: r.units(),
                energy: energy(&unitary_spectrum(&r)).render(),
                fields: f,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let inputs = BTreeMap::from([
        ("s".to_string(), a.s.to_string()),
        ("qmax".to_string(), a.qmax.to_string()),
        ("equal".to_string(), a.equal.to_string()),
    ]);
    let res = SearchResult {
        s: a.s,
        qmax: a.qmax,
        equal_fields_only: a.equal,
        solutions,
    };
    let provenance =
        vec!["exact: integer search, every hit re-checked through the spectrum".to_string()];
    emit(
        out,
        format,
        &report("rings-search", inputs, res, provenance),
    )?;
    Ok(0)
}

fn cmd_verify(out: &mut dyn Write, format: Format, suites: &[Suite]) -> Result<i32> {
    let suites: Vec<Suite> = if suites.is_empty() {
        clap::ValueEnum::value_variants().to_vec()
    } else {
        suites.to_vec()
    };
    let reports: Vec<SuiteReport> = suites.iter().map(|s| run_suite(*s)).collect();
    let code = if reports.iter().all(|r| r.passed) {
        0
    } else {
        1
    };
    let inputs = BTreeMap::from([(
        "suites".to_string(),
        suites
            .iter()
            .map(Suite::to_string)
            .collect::<Vec<_>>()
            .join(","),
    )]);
    emit(out, format, &report("verify", inputs, reports, Vec::new()))?;
    Ok(code)
}

/// Runs a parsed command, writing the report to `out`; the returned value is
/// the process exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    if let Some(j) = cli.jobs {
        // a second call in one process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global();
    }
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Pretty
    };
    match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(out, format, a),
        Command::Check(a) => cmd_check(out, format, a),
        Command::Classify { srg } => cmd_classify(out, format, srg),
        Command::Enumerate { n_max } => cmd_enumerate(out, format, *n_max),
        Command::RingsSearch(a) | Command::Rings(RingsCommand::Search(a)) => {
            cmd_search(out, format, a)
        }
        Command::Rings(RingsCommand::Spectrum { ring }) => cmd_spectrum(
            out,
            format,
            &SourceArgs {
                ring: Some(ring.clone()),
                ..Default::default()
            },
        ),
        Command::Rings(RingsCommand::Check { ring }) => cmd_check(
            out,
            format,
            &SourceArgs {
                ring: Some(ring.clone()),
                ..Default::default()
            },
        ),
        Command::Verify { suites } => cmd_verify(out, format, suites),
    }
}

/// Parses `args` and runs; errors go to stderr with exit code 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(code) => code,
        // a closed reader (`| head`) is not a failure of the computation
        Err(Error::Output {
            broken_pipe: true, ..
        }) => 0,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(args: &[&str]) -> (Result<i32>, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("equigraph").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let r = execute(&cli, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn crown_spectrum_command() {
        let (r, text) = run_to_string(&["spectrum", "--family", "crown", "--t", "5"]);
        assert_eq!(r.unwrap(), 0);
        assert!(text.contains("energy:    16\n"), "{text}");
    }

    #[test]
    fn check_exit_codes() {
        assert_eq!(run_to_string(&["check", "--srg", "16,6,2,2"]).0.unwrap(), 0);
        assert_eq!(
            run_to_string(&["check", "--family", "triangular", "--n", "7"])
                .0
                .unwrap(),
            1
        );
        assert_eq!(
            run_to_string(&["check", "--ring", "3:1,5:1,5:1"])
                .0
                .unwrap(),
            0
        );
        assert!(run_to_string(&["check", "--srg", "7,3,1,1"]).0.is_err());
    }

    #[test]
    fn classify_conference() {
        let (r, text) = run_to_string(&["--json", "classify", "--srg", "25,12,5,6"]);
        assert_eq!(r.unwrap(), 0);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["results"]["row"]["class"], "Conference(6)");
        assert_eq!(v["results"]["equal"], true);
    }

    #[test]
    fn json_is_deterministic() {
        let a = run_to_string(&["--json", "spectrum", "--ring", "2:2"]).1;
        let b = run_to_string(&["--json", "spectrum", "--ring", "2:2"]).1;
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["results"]["spectrum_text"], "{[2], [0]^2, [-2]}");
        assert_eq!(v["results"]["energy"]["kind"], "exact");
    }

    #[test]
    fn format_flags_conflict() {
        assert!(Cli::try_parse_from(["equigraph", "--json", "--csv", "verify"]).is_err());
        assert!(Cli::try_parse_from(["equigraph", "spectrum", "--n", "4"]).is_err());
        assert!(Cli::try_parse_from(["equigraph", "spectrum", "--srg", "1,2"]).is_err());
    }
}
