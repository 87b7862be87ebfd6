//! Command line surface and verb dispatch.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use num_traits::One;
use serde_json::{json, Map, Value};

use commhier::arith::{rat, ExactRational};
use commhier::counting::{
    hom_count_bruteforce_with_cap, kappa_orbits_bruteforce_with_cap, HomCounter, BRUTE_HOM_CAP,
};
use commhier::group::{make_group_seeded, FiniteGroup, GroupSpec, DEFAULT_SEED};
use commhier::lattice::{AbelianPoset, LATTICE_CAP};
use commhier::spectrum::{
    entropy_report, hankel_rank_of_sequence, inverse_spectrum, spectrum_from_poset, Spectrum,
};
use commhier::{Error, Result};

use crate::dsl::parse_spec;
use crate::render;
use crate::verify::{verify_corpus, VerifyOptions, EXPECTED_FAIL};

/// Environment variable overriding the default abelian-lattice cap.
pub const LATTICE_CAP_ENV: &str = "COMMHIER_LATTICE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// |Hom(Z^r, G)|, the number of pairwise commuting r-tuples.
    Count,
    /// P_r(G) = |Hom(Z^r, G)| / |G|^r.
    Prob,
    /// kappa_r(G), the number of conjugation orbits on commuting r-tuples.
    Kappa,
    /// m, N_max, b, M and the abelian-subgroup count.
    Stats,
    /// Finite Dirichlet spectrum {(m, c_m)} with pole data.
    Spectrum,
    /// The generating series sum_{r>=2} P_r z^{r-2}, at --z if given.
    Series,
    /// Minimal linear recurrence of (P_r) and the Hankel rank.
    Recurrence,
    /// Recover a spectrum from --values P_2, P_3, ...
    Invert,
    /// Run the corpus verification suite.
    Verify,
    /// Everything known about one group.
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "commhier",
    version,
    about = "Exact higher commuting probabilities and Dirichlet spectra of small finite groups"
)]
pub struct Cli {
    pub verb: Verb,
    /// Group spec, e.g. "dihedral(6)" or "semidirect(abelian(7); cyclic(3); [[2]])".
    #[arg(long)]
    pub group: Option<String>,
    /// Tuple length: a single value or an inclusive range "a..b".
    #[arg(long)]
    pub r: Option<String>,
    /// Evaluation point for `series`, an exact rational like "1/2".
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Comma-separated exact values P_2, P_3, ... for `invert`.
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Restrict `verify` to the named checks (repeatable).
    #[arg(long)]
    pub check: Vec<String>,
    /// Upper end of the r-sweeps in `verify`.
    #[arg(long)]
    pub max_r: Option<u32>,
    /// Seed for the sampled associativity test on large tables.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Directory receiving pr.csv and spectrum.csv for plotting.
    #[arg(long)]
    pub emit_plot: Option<PathBuf>,
    /// Largest group order for abelian-subgroup enumeration
    /// (default 512, or $COMMHIER_LATTICE_CAP).
    #[arg(long)]
    pub lattice_cap: Option<usize>,
    /// Largest tuple count the brute-force oracles may enumerate.
    #[arg(long, default_value_t = BRUTE_HOM_CAP)]
    pub brute_cap: u64,
    /// Cross-check `count` and `kappa` against brute-force enumeration.
    #[arg(long)]
    pub oracle: bool,
}

/// Result of a successful run: the document and the process exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub doc: Value,
    pub exit: i32,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome { doc, exit: 0 }
    }
}

/// Exit code for an error, by class.
pub fn exit_code(e: &Error) -> i32 {
    match e.class() {
        commhier::ErrorClass::Input => 1,
        commhier::ErrorClass::Cap => 2,
        commhier::ErrorClass::Internal => 3,
    }
}

/// Parses `"4"` or `"2..12"` (inclusive).
pub fn parse_r_range(text: &str) -> Result<(u32, u32)> {
    let bad = || Error::InvalidArgument(format!("--r expects N or A..B, got '{text}'"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    match text.split_once("..") {
        None => {
            let r = num(text)?;
            Ok((r, r))
        }
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
    }
}

pub fn parse_rational(text: &str) -> Result<ExactRational> {
    ExactRational::from_str(text.trim()).map_err(|_| {
        Error::InvalidArgument(format!("expected an exact rational like 3/7, got '{text}'"))
    })
}

struct Session<'a> {
    cli: &'a Cli,
    lattice_cap: usize,
}

impl Session<'_> {
    fn spec(&self) -> Result<GroupSpec> {
        let text =
            self.cli.group.as_deref().ok_or_else(|| {
                Error::InvalidArgument("--group is required for this verb".into())
            })?;
        parse_spec(text)
    }

    fn group(&self) -> Result<(GroupSpec, FiniteGroup)> {
        let spec = self.spec()?;
        let g = make_group_seeded(&spec, self.cli.seed)?;
        Ok((spec, g))
    }

    fn range(&self, default: (u32, u32)) -> Result<(u32, u32)> {
        self.cli.r.as_deref().map_or(Ok(default), parse_r_range)
    }

    fn poset(&self, g: &FiniteGroup) -> Result<AbelianPoset> {
        AbelianPoset::build_with_cap(g, self.lattice_cap)
    }
}

fn header(spec: &GroupSpec, g: &FiniteGroup) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("group".into(), json!(spec.to_string()));
    m.insert("order".into(), json!(g.order()));
    m
}

/// One scalar for a single r, a `rows` table for a range.
fn per_r(
    mut doc: Map<String, Value>,
    (lo, hi): (u32, u32),
    key: &str,
    mut f: impl FnMut(u32) -> Result<Value>,
) -> Result<Value> {
    if lo == hi {
        doc.insert("r".into(), json!(lo));
        doc.insert(key.into(), f(lo)?);
    } else {
        let rows = (lo..=hi)
            .map(|r| Ok(json!({ "r": r, key: f(r)? })))
            .collect::<Result<Vec<_>>>()?;
        doc.insert("rows".into(), Value::Array(rows));
    }
    Ok(Value::Object(doc))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let lattice_cap = match cli.lattice_cap {
        Some(c) => c,
        None => match std::env::var(LATTICE_CAP_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!(
                    "{LATTICE_CAP_ENV} must be a positive integer, got '{v}'"
                ))
            })?,
            Err(_) => LATTICE_CAP,
        },
    };
    let s = Session { cli, lattice_cap };
    let outcome = match cli.verb {
        Verb::Count => Outcome::ok(count(&s)?),
        Verb::Prob => Outcome::ok(prob(&s)?),
        Verb::Kappa => Outcome::ok(kappa(&s)?),
        Verb::Stats => Outcome::ok(stats(&s)?),
        Verb::Spectrum => Outcome::ok(spectrum(&s)?),
        Verb::Series => Outcome::ok(series(&s)?),
        Verb::Recurrence => Outcome::ok(recurrence(&s)?),
        Verb::Invert => Outcome::ok(invert(&s)?),
        Verb::Verify => verify(&s)?,
        Verb::Report => Outcome::ok(report(&s)?),
    };
    if let Some(dir) = &cli.emit_plot {
        emit_plot(&s, dir)?;
    }
    Ok(outcome)
}

fn count(s: &Session) -> Result<Value> {
    let (spec, g) = s.group()?;
    let counter = HomCounter::new(&g);
    per_r(header(&spec, &g), s.range((2, 2))?, "hom", |r| {
        let n = counter.hom_count(r);
        if s.cli.oracle {
            let brute = hom_count_bruteforce_with_cap(&g, r, s.cli.brute_cap)?;
            if brute != n {
                return Err(Error::InternalInconsistency(format!(
                    "r={r}: recursion {n} != enumeration {brute}"
                )));
            }
        }
        Ok(render::integer(&n))
    })
}

fn prob(s: &Session) -> Result<Value> {
    let (spec, g) = s.group()?;
    let counter = HomCounter::new(&g);
    per_r(header(&spec, &g), s.range((2, 2))?, "P_r", |r| {
        Ok(render::rational(&counter.probability(r)))
    })
}

fn kappa(s: &Session) -> Result<Value> {
    let (spec, g) = s.group()?;
    let counter = HomCounter::new(&g);
    per_r(header(&spec, &g), s.range((1, 1))?, "kappa", |r| {
        let k = counter.kappa(r)?;
        if s.cli.oracle {
            let brute = kappa_orbits_bruteforce_with_cap(&g, r, s.cli.brute_cap)?;
            if brute != k {
                return Err(Error::InternalInconsistency(format!(
                    "r={r}: Burnside {k} != orbit enumeration {brute}"
                )));
            }
        }
        Ok(render::integer(&k))
    })
}

fn stats_fields(doc: &mut Map<String, Value>, g: &FiniteGroup, poset: &AbelianPoset) {
    let st = poset.stats();
    doc.insert("abelian".into(), json!(g.is_abelian()));
    doc.insert("abelian_subgroups".into(), json!(poset.len()));
    doc.insert("m".into(), json!(st.m));
    doc.insert("N_max".into(), json!(st.n_max));
    doc.insert("b".into(), json!(st.b));
    doc.insert("M".into(), json!(st.maximal_count));
    doc.insert("center_order".into(), json!(g.center().order()));
    doc.insert("classes".into(), json!(g.conjugacy_classes().len()));
}

fn stats(s: &Session) -> Result<Value> {
    let (spec, g) = s.group()?;
    let poset = s.poset(&g)?;
    let mut doc = header(&spec, &g);
    stats_fields(&mut doc, &g, &poset);
    Ok(Value::Object(doc))
}

/// The spectrum, or `None` for abelian groups.
fn group_spectrum(s: &Session, g: &FiniteGroup) -> Result<(AbelianPoset, Option<Spectrum>)> {
    let poset = s.poset(g)?;
    if g.is_abelian() {
        return Ok((poset, None));
    }
    let spec = spectrum_from_poset(g.order(), &poset)?;
    Ok((poset, Some(spec)))
}

const ABELIAN_SERIES: &str = "1/(1-z)";

fn spectrum_fields(
    doc: &mut Map<String, Value>,
    poset: &AbelianPoset,
    spec: Option<&Spectrum>,
) -> Result<()> {
    match spec {
        None => {
            doc.insert("spectrum".into(), json!([]));
            doc.insert("series".into(), json!(ABELIAN_SERIES));
        }
        Some(spec) => {
            let (m_star, pole) = spec.first_pole(&poset.stats())?;
            doc.insert("spectrum".into(), render::spectrum(spec));
            doc.insert("m_star".into(), json!(m_star));
            doc.insert("pole_coeff".into(), render::rational(&pole));
            doc.insert("t".into(), json!(spec.len()));
        }
    }
    Ok(())
}

fn spectrum(s: &Session) -> Result<Value> {
    let (gspec, g) = s.group()?;
    let (poset, spec) = group_spectrum(s, &g)?;
    let mut doc = header(&gspec, &g);
    spectrum_fields(&mut doc, &poset, spec.as_ref())?;
    Ok(Value::Object(doc))
}

fn series(s: &Session) -> Result<Value> {
    let (gspec, g) = s.group()?;
    let (poset, spec) = group_spectrum(s, &g)?;
    let mut doc = header(&gspec, &g);
    match &spec {
        None => {
            doc.insert("series".into(), json!(ABELIAN_SERIES));
        }
        Some(sp) => {
            let terms: Vec<String> = sp
                .entries()
                .iter()
                .map(|e| format!("{}/({}({}-z))", e.c, e.m, e.m))
                .collect();
            doc.insert("series".into(), json!(terms.join(" + ")));
            let (m_star, pole) = sp.first_pole(&poset.stats())?;
            doc.insert("radius".into(), json!(m_star));
            doc.insert("pole_coeff".into(), render::rational(&pole));
            let sv = sp.special_values();
            doc.insert("Sigma".into(), render::rational(&sv.sigma));
            doc.insert("Alt".into(), render::rational(&sv.alt));
            doc.insert(
                "dirichlet_value".into(),
                render::integer(&sv.dirichlet_value),
            );
        }
    }
    if let Some(z) = &s.cli.z {
        let z = parse_rational(z)?;
        let value = match &spec {
            Some(sp) => sp.eval_series(&z)?,
            None => {
                let gap = ExactRational::one() - &z;
                if gap == rat(0) {
                    return Err(Error::PoleHit(z.to_string()));
                }
                gap.recip()
            }
        };
        doc.insert("z".into(), render::rational(&z));
        doc.insert("value".into(), render::rational(&value));
    }
    Ok(Value::Object(doc))
}

fn recurrence(s: &Session) -> Result<Value> {
    let (gspec, g) = s.group()?;
    let (_, spec) = group_spectrum(s, &g)?;
    let mut doc = header(&gspec, &g);
    let sigma = spec.as_ref().map(Spectrum::recurrence).unwrap_or_default();
    let t = sigma.len();
    // abelian groups satisfy P_{r+1} = P_r, an order-1 recurrence
    let (order, sigma_out) = if spec.is_none() {
        (1, vec![ExactRational::one()])
    } else {
        (t, sigma)
    };
    let counter = HomCounter::new(&g);
    let values: Vec<ExactRational> = (2..=2 * order as u32 + 2)
        .map(|r| counter.probability(r))
        .collect();
    doc.insert("t".into(), json!(order));
    doc.insert(
        "sigma".into(),
        Value::Array(sigma_out.iter().map(render::rational).collect()),
    );
    doc.insert(
        "hankel_rank".into(),
        json!(hankel_rank_of_sequence(&values)),
    );
    Ok(Value::Object(doc))
}

fn invert(s: &Session) -> Result<Value> {
    let text = s
        .cli
        .values
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--values is required for invert".into()))?;
    let values = text
        .split(',')
        .filter(|v| !v.trim().is_empty())
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    let spec = inverse_spectrum(&values)?;
    let mut doc = Map::new();
    doc.insert("values".into(), json!(values.len()));
    doc.insert("spectrum".into(), render::spectrum(&spec));
    doc.insert("t".into(), json!(spec.len()));
    Ok(Value::Object(doc))
}

fn verify(s: &Session) -> Result<Outcome> {
    let report = verify_corpus(&VerifyOptions {
        checks: s.cli.check.clone(),
        max_r: s.cli.max_r,
        seed: s.cli.seed,
    })?;
    let records: Vec<Value> = report
        .records
        .iter()
        .map(|r| {
            json!({
                "check": r.check,
                "group": r.group,
                "params": r.params,
                "status": if r.passed { "PASS" } else { "FAIL" },
                "expected": if r.expected_fail { "FAIL" } else { "PASS" },
                "detail": r.detail,
            })
        })
        .collect();
    let failures = report.failures().count();
    let doc = json!({
        "records": records,
        "total": report.records.len(),
        "unexpected": failures,
        "ok": report.ok(),
        "documented_discrepancy": EXPECTED_FAIL,
    });
    Ok(Outcome {
        doc,
        exit: report.exit_code(),
    })
}

fn report(s: &Session) -> Result<Value> {
    let (gspec, g) = s.group()?;
    let (poset, spec) = group_spectrum(s, &g)?;
    let mut doc = header(&gspec, &g);
    stats_fields(&mut doc, &g, &poset);
    spectrum_fields(&mut doc, &poset, spec.as_ref())?;
    let entropy = entropy_report(&poset.stats(), g.order())?;
    doc.insert("radius".into(), render::rational(&entropy.radius));
    doc.insert("h_prob".into(), json!(entropy.h_prob));
    doc.insert("h_orb".into(), json!(entropy.h_orb));
    let counter = HomCounter::new(&g);
    let (lo, hi) = s.range((1, 8))?;
    let rows = (lo..=hi)
        .map(|r| {
            Ok(json!({
                "r": r,
                "hom": render::integer(&counter.hom_count(r)),
                "P_r": render::rational(&counter.probability(r)),
                "kappa": render::integer(&counter.kappa(r)?),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    doc.insert("rows".into(), Value::Array(rows));
    Ok(Value::Object(doc))
}

fn emit_plot(s: &Session, dir: &std::path::Path) -> Result<()> {
    let (_, g) = s.group()?;
    let io =
        |e: std::io::Error| Error::InvalidArgument(format!("--emit-plot {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let counter = HomCounter::new(&g);
    let (lo, hi) = s.range((1, 12))?;
    let mut pr = String::from("r,P_r,P_r_float\n");
    for r in lo..=hi {
        let p = counter.probability(r);
        pr.push_str(&format!("{r},{p},{}\n", commhier::counting::to_f64(&p)));
    }
    std::fs::write(dir.join("pr.csv"), pr).map_err(io)?;
    let mut sp = String::from("m,c\n");
    if let (_, Some(spec)) = group_spectrum(s, &g)? {
        for e in spec.entries() {
            sp.push_str(&format!("{},{}\n", e.m, e.c));
        }
    }
    std::fs::write(dir.join("spectrum.csv"), sp).map_err(io)?;
    Ok(())
}

/// Renders a document in the requested format.
pub fn render_doc(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => render::to_json(doc),
        Format::Csv => render::to_csv(doc),
    }
}
