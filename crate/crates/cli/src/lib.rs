//! The `dsc` command: loading inputs, dispatching verbs, rendering reports.

pub mod manifest;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use dsc_core::antimatroid::{phi_with, psi, AntimatroidJson};
use dsc_core::category::{self, coequalizer_search_with};
use dsc_core::completion::{bruns_lakser_with, merkle_dot, merkle_dsnc_with, merkle_hashes};
use dsc_core::dsc::DscJson;
use dsc_core::morphisms::MapJson;
use dsc_core::random::random_pool;
use dsc_core::versions::VersionRelation;
use dsc_core::{Antimatroid, Dsc, DscMorphism, Error, GroundMap, PreDsc, Settings};
use serde::Serialize;
use serde_json::{json, Value};

use crate::manifest::Manifest;

#[derive(Debug, Parser)]
#[command(name = "dsc", version, about = "Dependency structures with choice")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Emit a Graphviz diagram where the verb has one.
    #[arg(long, global = true)]
    pub dot: bool,
    /// Largest ground set to enumerate power sets of.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Seed for `fuzz`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Run library calls on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the D-axioms.
    Validate { input: PathBuf },
    /// The lattice of complete sets.
    Rdp { input: PathBuf },
    /// Feasible sets of a DSC, or the DSC of an antimatroid file.
    Antimatroid { input: PathBuf },
    /// Bruns-Lakser completion of the reachable dependency lattice.
    Bl { input: PathBuf },
    /// Merkle hashes of the choice-free DSC of the input.
    Merkle { input: PathBuf },
    /// Classify a map between two DSCs.
    Morphism { source: PathBuf, target: PathBuf, map: PathBuf },
    /// The `dep_×` construction on two DSCs with its projections.
    Product { left: PathBuf, right: PathBuf },
    /// Disjoint union of two DSCs with its injections.
    Coproduct { left: PathBuf, right: PathBuf },
    /// Equalizer of two parallel maps.
    Equalizer { source: PathBuf, target: PathBuf, f: PathBuf, g: PathBuf },
    /// Pullback of `f: X → Z` and `g: Y → Z`.
    Pullback { x: PathBuf, y: PathBuf, z: PathBuf, f: PathBuf, g: PathBuf },
    /// Exhaustive coequalizer search.
    Coequalizer { source: PathBuf, target: PathBuf, f: PathBuf, g: PathBuf },
    /// Split one event into two copies.
    Double { input: PathBuf, event: String },
    /// The higher-version relation and its equivalence classes.
    Versions { input: PathBuf },
    /// Check structural laws on seeded random DSCs.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        events: usize,
    },
}

/// A failed command with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_INVALID: u8 = 1;
pub const EXIT_CAP: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::SizeCap { .. } => EXIT_CAP,
            Error::Invalid(_)
            | Error::InvalidAntimatroid(_)
            | Error::Resolution(_)
            | Error::Contract(_)
            | Error::NotAPoset(_)
            | Error::NotALattice(_) => EXIT_INVALID,
            Error::Parse(_) | Error::Json(_) | Error::UnknownEvent(_) | Error::Domain(_) => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl Failure {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: format!("{}: {e}", path.display()),
        }
    }
}

/// What a successful or validation-failed run prints.
#[derive(Debug)]
pub struct Output {
    pub code: u8,
    pub text: String,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { code: 0, text }
    }
}

type Run = std::result::Result<Output, Failure>;

fn settings(cli: &Cli) -> Settings {
    let mut s = if cli.sequential {
        Settings::sequential()
    } else {
        Settings::default()
    };
    if let Some(cap) = cli.cap {
        s.caps.enumeration = cap;
    }
    s
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

/// DSC JSON, manifest JSON, or the text notation `a: b | c; b; c`.
pub fn load_predsc(path: &Path, settings: &Settings) -> std::result::Result<PreDsc, Failure> {
    let text = read(path)?;
    let p = if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(Error::from)?;
        if v.get("packages").is_some() {
            Manifest::from_json(&text)?.to_predsc(&settings.caps)?
        } else {
            PreDsc::from_json(&text)?
        }
    } else {
        text.parse()?
    };
    if p.len() > settings.caps.enumeration {
        return Err(Error::cap("ground set", p.len(), settings.caps.enumeration).into());
    }
    Ok(p)
}

pub fn load_dsc(path: &Path, settings: &Settings) -> std::result::Result<Arc<Dsc>, Failure> {
    Ok(Arc::new(Dsc::new(load_predsc(path, settings)?)?))
}

fn load_map(path: &Path, source: &Arc<Dsc>, target: &Arc<Dsc>) -> std::result::Result<DscMorphism, Failure> {
    let j: MapJson = serde_json::from_str(&read(path)?).map_err(Error::from)?;
    let map = GroundMap::from_json(&j, source.ground(), target.ground())?;
    Ok(DscMorphism::new(source.clone(), target.clone(), map)?)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn dsc_value(d: &Dsc) -> Value {
    to_value(&DscJson::from(&**d))
}

fn construction(cli: &Cli, r: &category::ConstructionResult) -> Output {
    if cli.json {
        let legs: Vec<Value> = r.legs.iter().map(|l| to_value(&l.to_json())).collect();
        Output::ok(pretty(&json!({ "object": dsc_value(&r.object), "legs": legs })))
    } else {
        let mut out = format!("{}\n", r.object);
        for (i, l) in r.legs.iter().enumerate() {
            let _ = writeln!(out, "leg {i}: {}", serde_json::to_string(&l.to_json().map).unwrap_or_default());
        }
        Output::ok(out)
    }
}

pub fn run(cli: &Cli) -> Run {
    let s = settings(cli);
    match &cli.command {
        Command::Validate { input } => {
            let p = load_predsc(input, &s)?;
            let report = p.validate();
            let code = if report.is_ok() { 0 } else { EXIT_INVALID };
            let text = if cli.json {
                let canonical = report.is_ok().then(|| to_value(&DscJson::from(&p)));
                pretty(&json!({
                    "valid": report.is_ok(),
                    "events": p.len(),
                    "violations": to_value(&report.violations),
                    "canonical": canonical,
                    "digest": report.is_ok().then(|| p.canonical_digest()),
                }))
            } else if report.is_ok() {
                format!("valid: {} events\n", p.len())
            } else {
                format!("invalid\n{report}\n")
            };
            Ok(Output { code, text })
        }
        Command::Rdp { input } => {
            let d = load_dsc(input, &s)?;
            let rdp = d.rdp_with(&s)?;
            let l = rdp.lattice();
            if cli.dot {
                return Ok(Output::ok(l.to_dot("rdp")));
            }
            let covers = l.covers().pairs;
            let jis: Vec<&str> = l.join_irreducibles().into_iter().map(|j| l.label(j)).collect();
            let distributive = l.is_distributive_with(&s);
            if cli.json {
                return Ok(Output::ok(pretty(&json!({
                    "elements": l.labels(),
                    "covers": covers,
                    "join_irreducibles": jis,
                    "distributive": distributive,
                    "diamond_free_semimodular": l.is_diamond_free_semimodular(),
                }))));
            }
            let mut out = format!("elements: {}\n", l.len());
            for x in l.labels() {
                let _ = writeln!(out, "  {x}");
            }
            let _ = writeln!(out, "covers: {}", covers.len());
            for (x, y) in &covers {
                let _ = writeln!(out, "  {} < {}", l.label(*x), l.label(*y));
            }
            let _ = writeln!(out, "join-irreducibles: {}", jis.join(" "));
            let _ = writeln!(out, "distributive: {distributive}");
            Ok(Output::ok(out))
        }
        Command::Antimatroid { input } => {
            let text = read(input)?;
            if let Ok(j) = serde_json::from_str::<AntimatroidJson>(&text) {
                let d = psi(&Antimatroid::from_json(&j)?)?;
                return Ok(Output::ok(if cli.json {
                    pretty(&dsc_value(&d))
                } else {
                    format!("{d}\n")
                }));
            }
            let d = load_dsc(input, &s)?;
            let m = phi_with(&d, &s)?;
            let round_trip = psi(&m)? == *d;
            if cli.json {
                let mut v = to_value(&m.to_json());
                v["round_trip"] = json!(round_trip);
                return Ok(Output::ok(pretty(&v)));
            }
            let mut out = format!("feasible sets: {}\n", m.feasible().len());
            for f in m.feasible() {
                let _ = writeln!(out, "  {}", d.render(f));
            }
            let _ = writeln!(out, "poset antimatroid: {}", m.is_poset_antimatroid());
            let _ = writeln!(out, "round trip: {round_trip}");
            Ok(Output::ok(out))
        }
        Command::Bl { input } => {
            let d = load_dsc(input, &s)?;
            let rdp = d.rdp_with(&s)?;
            let bl = bruns_lakser_with(rdp.lattice(), &s)?;
            if cli.dot {
                return Ok(Output::ok(bl.lattice().to_dot("bl")));
            }
            let top = bl.render(bl.base.set(bl.lattice().top()));
            let embedding: Vec<(String, String)> = (0..rdp.len())
                .map(|x| (rdp.lattice().label(x).to_string(), bl.render(bl.embed(x))))
                .collect();
            if cli.json {
                let emb: serde_json::Map<String, Value> =
                    embedding.into_iter().map(|(k, v)| (k, Value::String(v))).collect();
                return Ok(Output::ok(pretty(&json!({
                    "elements": bl.lattice().labels(),
                    "top": top,
                    "embedding": emb,
                }))));
            }
            let mut out = format!("elements: {}\ntop: {top}\nembedding:\n", bl.len());
            for (x, img) in embedding {
                let _ = writeln!(out, "  {x} -> {img}");
            }
            Ok(Output::ok(out))
        }
        Command::Merkle { input } => {
            let d = load_dsc(input, &s)?;
            let m = if d.is_dsnc() { (*d).clone() } else { merkle_dsnc_with(&d, &s)? };
            let store = merkle_hashes(&m)?;
            if cli.dot {
                return Ok(Output::ok(merkle_dot(&m, &store)?));
            }
            let mut text = store.to_json();
            text.push('\n');
            Ok(Output::ok(text))
        }
        Command::Morphism { source, target, map } => {
            let (a, b) = (load_dsc(source, &s)?, load_dsc(target, &s)?);
            let f = load_map(map, &a, &b)?;
            f.verify(&s)?;
            let c = f.classification()?;
            if cli.json {
                return Ok(Output::ok(pretty(&to_value(&c))));
            }
            let mut out = String::new();
            for (name, v) in [
                ("morphism", c.morphism),
                ("comorphism", c.comorphism),
                ("bimorphism", c.bimorphism),
                ("distributive-preserving", c.distributive_preserving),
                ("injective", c.injective),
                ("surjective", c.surjective),
            ] {
                let _ = writeln!(out, "{name}: {v}");
            }
            if let Some(w) = &c.morphism_failure {
                let _ = writeln!(out, "morphism fails at {} with {{{}}}", w.event, w.depset.join(","));
            }
            if let Some(w) = &c.comorphism_failure {
                let _ = writeln!(out, "comorphism fails at {} with {{{}}}", w.event, w.depset.join(","));
            }
            Ok(Output::ok(out))
        }
        Command::Product { left, right } => {
            let r = category::product_with(&load_dsc(left, &s)?, &load_dsc(right, &s)?, &s)?;
            Ok(construction(cli, &r))
        }
        Command::Coproduct { left, right } => {
            let r = category::coproduct(&load_dsc(left, &s)?, &load_dsc(right, &s)?)?;
            Ok(construction(cli, &r))
        }
        Command::Equalizer { source, target, f, g } => {
            let (a, b) = (load_dsc(source, &s)?, load_dsc(target, &s)?);
            let r = category::equalizer(&load_map(f, &a, &b)?, &load_map(g, &a, &b)?)?;
            Ok(construction(cli, &r))
        }
        Command::Pullback { x, y, z, f, g } => {
            let (x, y, z) = (load_dsc(x, &s)?, load_dsc(y, &s)?, load_dsc(z, &s)?);
            let r = category::pullback(&load_map(f, &x, &z)?, &load_map(g, &y, &z)?)?;
            Ok(construction(cli, &r))
        }
        Command::Coequalizer { source, target, f, g } => {
            let (a, b) = (load_dsc(source, &s)?, load_dsc(target, &s)?);
            let r = coequalizer_search_with(&load_map(f, &a, &b)?, &load_map(g, &a, &b)?, &s)?;
            let found = r.coequalizer().map(|c| c.object.to_string());
            if cli.json {
                return Ok(Output::ok(pretty(&json!({
                    "coequalizer": found,
                    "candidates": to_value(&r.summary()),
                }))));
            }
            let mut out = match &found {
                Some(o) => format!("coequalizer: {o}\n"),
                None => "no coequalizer\n".to_string(),
            };
            for (i, c) in r.summary().iter().enumerate() {
                let verdict = match c.refuted_by {
                    Some(k) => format!("refuted by candidate {k}"),
                    None => "universal".to_string(),
                };
                let _ = writeln!(out, "  [{i}] {}: {verdict}", c.object);
            }
            Ok(Output::ok(out))
        }
        Command::Double { input, event } => {
            let d = load_dsc(input, &s)?;
            let b = d.id(event)?;
            let r = category::double_event(&d, b)?;
            Ok(construction(
                cli,
                &category::ConstructionResult {
                    object: r.object,
                    legs: vec![r.g1, r.g2],
                },
            ))
        }
        Command::Versions { input } => {
            let d = load_dsc(input, &s)?;
            let rel = VersionRelation::new(&d)?;
            let label = |e: usize| d.label(dsc_core::EventId(e)).to_string();
            let edges: Vec<(String, String)> = rel.edges().into_iter().map(|(a, b)| (label(a), label(b))).collect();
            let classes: Vec<Vec<String>> = rel.equivalence_classes().iter().map(|c| d.ground().names(c)).collect();
            if cli.json {
                return Ok(Output::ok(pretty(&json!({ "edges": edges, "classes": classes }))));
            }
            let mut out = String::from("relation:\n");
            for (a, b) in &edges {
                let _ = writeln!(out, "  {a} ◂ {b}");
            }
            out.push_str("classes:\n");
            for c in &classes {
                let mark = if c.len() > 1 { " (equivalent)" } else { "" };
                let _ = writeln!(out, "  {{{}}}{mark}", c.join(","));
            }
            Ok(Output::ok(out))
        }
        Command::Fuzz { count, events } => fuzz(cli, &s, *count, *events),
    }
}

#[derive(Default, Serialize)]
struct FuzzTally {
    checked: usize,
    failures: Vec<String>,
}

fn fuzz(cli: &Cli, s: &Settings, count: usize, events: usize) -> Run {
    if events > s.caps.enumeration {
        return Err(Error::cap("fuzz events", events, s.caps.enumeration).into());
    }
    let mut tally = FuzzTally::default();
    for (i, d) in random_pool(cli.seed, count, events).iter().enumerate() {
        tally.checked += 1;
        let mut fail = |what: &str| tally.failures.push(format!("#{i} `{d}`: {what}"));
        let rdp = d.rdp_with(s)?;
        let l = rdp.lattice();
        if psi(&phi_with(d, s)?)? != *d {
            fail("psi(phi(d)) differs");
        }
        if !l.is_diamond_free_semimodular() {
            fail("rdp is not diamond-free semimodular");
        }
        if d.is_dsnc() != l.is_distributive_with(s) {
            fail("DSNC and distributivity disagree");
        }
        let rel = VersionRelation::new(d)?;
        if rel.reflexivity_failure().is_some() || rel.transitivity_failure().is_some() {
            fail("version relation is not a preorder");
        }
    }
    let code = if tally.failures.is_empty() { 0 } else { EXIT_INVALID };
    let text = if cli.json {
        pretty(&to_value(&tally))
    } else {
        let mut out = format!("checked {} DSCs (seed {})\n", tally.checked, cli.seed);
        for f in &tally.failures {
            let _ = writeln!(out, "  {f}");
        }
        let _ = writeln!(out, "failures: {}", tally.failures.len());
        out
    };
    Ok(Output { code, text })
}
