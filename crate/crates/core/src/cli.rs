//! Command-line front end.
//!
//! Every command prints a JSON report on standard output and a one-line
//! summary on standard error. Exit codes: 0 success, 1 input error,
//! 2 budget or size limit exhausted.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bundles::{self, circle_bundle_witness, sol_witness, CircleBundle, CircleWitness, SolBundle};
use crate::crystallographic::{cross_validate, euclidean_witness, verify_pair, CrystalGroup};
use crate::finitegroups::{
    are_isomorphic, exceptionality_report, lens_homeomorphic, realize_spherical, FiniteGroup, GroupOptions,
    GroupVerdict, GroupWitness, LensSpace, Subgroup,
};
use crate::fuchsian::{e_n_fuchsian_with, lattice_point_count, Signature};
use crate::lowindex::{conjugacy_classes, enumerate_subgroups_with, subgroup_record, EnumerationOptions, DEFAULT_MAX_CELLS};
use crate::par::Parallelism;
use crate::presentations::{parse_word, Presentation, SphericalKind};
use crate::topology::{verdict, ManifoldDescriptor, ManifoldWitness, PrimeSummand, Verdict};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "cover-census", version, about = "Finite-index subgroup and finite-cover census")]
struct Cli {
    /// Cell budget for the low-index search.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: u64,
    /// Largest finite group order realized from a presentation.
    #[arg(long, global = true, default_value_t = crate::finitegroups::DEFAULT_MAX_ORDER)]
    max_order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Re-validate any witness before reporting it.
    #[arg(long, global = true)]
    verify: bool,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountKind {
    Sn,
    En,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnAction {
    En,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportAction {
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessAction {
    Witness,
}

#[derive(Debug, Args)]
struct Index {
    #[arg(short = 'n', long = "index")]
    n: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the index-n subgroups of a presented group.
    Subgroups {
        group: String,
        #[command(flatten)]
        index: Index,
        /// Group the subgroups into conjugacy classes.
        #[arg(long)]
        classes: bool,
    },
    /// Count subgroups (sn) or isomorphism types (en).
    Count {
        kind: CountKind,
        group: String,
        #[command(flatten)]
        index: Index,
    },
    /// Isomorphism types of index-n subgroups of a Fuchsian group.
    Fuchsian {
        signature: String,
        action: EnAction,
        #[command(flatten)]
        index: Index,
        /// Also count lattice points of the Euler characteristic equation.
        #[arg(long)]
        lattice: bool,
    },
    /// Subgroup lattice and exceptionality of a spherical space form group.
    Spherical { name: String, action: ReportAction },
    /// Homeomorphism test for L(p,q) and L(p,q').
    Lens { p: u64, q: i64, q2: i64 },
    /// Equal-degree covers of a circle bundle with different H1.
    #[command(allow_negative_numbers = true)]
    Bundle {
        genus: u32,
        euler: i64,
        action: WitnessAction,
        #[arg(short = 'd', long)]
        degree: u64,
    },
    /// Fiberwise and cyclic covers of a Sol torus bundle.
    #[command(allow_negative_numbers = true)]
    Sol {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        action: WitnessAction,
        #[arg(short = 'd', long)]
        degree: u32,
    },
    /// Abelian and non-abelian subgroups of equal index in a crystallographic group.
    Crystal { group: String, action: WitnessAction },
    /// Exceptionality verdict for a manifold descriptor.
    Verdict { descriptor: String },
}

/// What a finished command hands back to the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Finished {
    inputs: Value,
    results: Value,
    witness: Value,
    summary: String,
}

struct Ctx {
    enumeration: EnumerationOptions,
    groups: GroupOptions,
    verify: bool,
}

fn exit_code(e: &Error) -> i32 {
    if e.is_resource_limit() {
        2
    } else {
        1
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return Outcome { code, stdout: String::new(), stderr: e.to_string() };
        }
    };
    let parallelism = if cli.sequential { Parallelism::Sequential } else { Parallelism::Parallel };
    let ctx = Ctx {
        enumeration: EnumerationOptions { max_cells: cli.max_cells, parallelism },
        groups: GroupOptions { max_order: cli.max_order, parallelism, ..GroupOptions::default() },
        verify: cli.verify,
    };
    let name = command_name(&cli.command);
    let start = Instant::now();
    let result = dispatch(&cli.command, &ctx);
    let timing_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(f) => {
            let report = json!({
                "command": name,
                "inputs": f.inputs,
                "results": f.results,
                "witness": f.witness,
                "timing_ms": timing_ms,
                "version": env!("CARGO_PKG_VERSION"),
            });
            let stdout = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("json") + "\n",
                Format::Text => format!("{name}: {}\n", f.summary),
            };
            Outcome { code: 0, stdout, stderr: format!("{name}: {} ({timing_ms} ms)\n", f.summary) }
        }
        Err(e) => {
            let code = exit_code(&e);
            let report = json!({
                "command": name,
                "error": { "kind": if code == 2 { "resource_limit" } else { "input" }, "message": e.to_string() },
                "timing_ms": timing_ms,
                "version": env!("CARGO_PKG_VERSION"),
            });
            let stdout = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("json") + "\n",
                Format::Text => format!("{name}: error: {e}\n"),
            };
            Outcome { code, stdout, stderr: format!("{name}: error: {e}\n") }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Subgroups { .. } => "subgroups",
        Command::Count { .. } => "count",
        Command::Fuchsian { .. } => "fuchsian",
        Command::Spherical { .. } => "spherical",
        Command::Lens { .. } => "lens",
        Command::Bundle { .. } => "bundle",
        Command::Sol { .. } => "sol",
        Command::Crystal { .. } => "crystal",
        Command::Verdict { .. } => "verdict",
    }
}

/// Accepts a presentation file or one of `free:r`, `abelian:r`,
/// `surface:g`, `sig:...`, `sph:...`.
fn load_group(source: &str) -> Result<Presentation> {
    let rank = |r: &str| r.parse::<usize>().map_err(|_| Error::Parse(format!("bad rank in {source:?}")));
    if let Some(r) = source.strip_prefix("free:") {
        return Ok(Presentation::free(rank(r)?));
    }
    if let Some(r) = source.strip_prefix("abelian:") {
        return Ok(Presentation::free_abelian(rank(r)?));
    }
    if let Some(r) = source.strip_prefix("surface:") {
        return Ok(Presentation::surface(rank(r)?));
    }
    if source.starts_with("sig:") {
        return Ok(crate::presentations::fuchsian_presentation(&Signature::parse(source)?));
    }
    if let Some(r) = source.strip_prefix("sph:") {
        return crate::presentations::spherical_presentation(&SphericalKind::parse(r)?);
    }
    let text = std::fs::read_to_string(source).map_err(|e| Error::InvalidInput(format!("cannot read {source}: {e}")))?;
    Presentation::from_text(&text)
}

fn dispatch(c: &Command, ctx: &Ctx) -> Result<Finished> {
    match c {
        Command::Subgroups { group, index, classes } => subgroups(group, index.n, *classes, ctx),
        Command::Count { kind, group, index } => count(*kind, group, index.n, ctx),
        Command::Fuchsian { signature, index, lattice, .. } => fuchsian(signature, index.n, *lattice, ctx),
        Command::Spherical { name, .. } => spherical(name, ctx),
        Command::Lens { p, q, q2 } => lens(*p, *q, *q2),
        Command::Bundle { genus, euler, degree, .. } => bundle(*genus, *euler, *degree, ctx),
        Command::Sol { a, b, c, d, degree, .. } => sol([[*a, *b], [*c, *d]], *degree, ctx),
        Command::Crystal { group, .. } => crystal(group, ctx),
        Command::Verdict { descriptor } => manifold_verdict(descriptor, ctx),
    }
}

fn index_check(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("index must be at least 1".into()));
    }
    Ok(())
}

fn subgroups(group: &str, n: usize, classes: bool, ctx: &Ctx) -> Result<Finished> {
    index_check(n)?;
    let p = load_group(group)?;
    let tables = enumerate_subgroups_with(&p, n, ctx.enumeration)?;
    let names = p.generator_names();
    let mut listed = Vec::with_capacity(tables.len());
    for t in &tables {
        let rec = subgroup_record(&p, t)?;
        let gens: Vec<String> = rec.schreier_generators.iter().map(|w| w.render(names)).collect();
        listed.push(json!({ "table": t, "schreier_generators": gens }));
    }
    if ctx.verify && !tables.iter().all(|t| t.satisfies(&p) && t.is_canonical() && t.is_transitive()) {
        return Err(Error::Inconsistent("a listed table failed re-validation".into()));
    }
    let mut results = json!({ "index": n, "count": tables.len(), "subgroups": listed });
    let mut summary = format!("{} subgroups of index {n}", tables.len());
    if classes {
        let cls = conjugacy_classes(&tables)?;
        summary.push_str(&format!(" in {} conjugacy classes", cls.len()));
        results["classes"] = to_value(&cls);
    }
    Ok(Finished { inputs: json!({ "group": group, "n": n, "classes": classes }), results, witness: Value::Null, summary })
}

fn count(kind: CountKind, group: &str, n: usize, ctx: &Ctx) -> Result<Finished> {
    index_check(n)?;
    let inputs = json!({ "kind": if kind == CountKind::Sn { "sn" } else { "en" }, "group": group, "n": n });
    match kind {
        CountKind::Sn => {
            let p = load_group(group)?;
            let s = crate::lowindex::count_subgroups_with(&p, n, ctx.enumeration)?;
            Ok(Finished { inputs, results: json!({ "s_n": s }), witness: Value::Null, summary: format!("s_{n} = {s}") })
        }
        CountKind::En => {
            if !group.starts_with("sig:") {
                return Err(Error::InvalidInput("e_n is computed for Fuchsian signatures (sig:g,k;m...) only".into()));
            }
            let census = e_n_fuchsian_with(&Signature::parse(group)?, n, ctx.enumeration)?;
            Ok(Finished {
                inputs,
                results: json!({ "e_n": census.isomorphism_types, "s_n": census.subgroups }),
                witness: Value::Null,
                summary: format!("e_{n} = {}", census.isomorphism_types),
            })
        }
    }
}

fn fuchsian(signature: &str, n: usize, lattice: bool, ctx: &Ctx) -> Result<Finished> {
    index_check(n)?;
    let sig = Signature::parse(signature)?;
    let census = e_n_fuchsian_with(&sig, n, ctx.enumeration)?;
    let reps: Vec<String> = census.representatives.iter().map(ToString::to_string).collect();
    let mut results = json!({ "e_n": census.isomorphism_types, "s_n": census.subgroups, "representatives": reps });
    let mut summary = format!("e_{n} = {}", census.isomorphism_types);
    if lattice {
        let lc = lattice_point_count(&sig, n as u64);
        summary.push_str(&format!(", lattice count {}", lc.count));
        results["lattice"] = to_value(&lc);
    }
    Ok(Finished { inputs: json!({ "signature": sig.to_string(), "n": n, "lattice": lattice }), results, witness: Value::Null, summary })
}

fn eval_word(g: &FiniteGroup, text: &str) -> Result<u32> {
    let w = parse_word(text, g.generator_names())?;
    let mut x = g.identity();
    for &l in w.letters() {
        let s = g.generators()[l.unsigned_abs() as usize - 1];
        x = g.mul(x, if l > 0 { s } else { g.inverse(s) });
    }
    Ok(x)
}

/// Rebuilds both witness subgroups from their generator words and checks
/// orders, index and non-isomorphism.
fn verify_group_witness(g: &FiniteGroup, w: &GroupWitness) -> Result<bool> {
    let mut groups = Vec::new();
    for s in [&w.first, &w.second] {
        let gens = s.generators.iter().map(|t| eval_word(g, t)).collect::<Result<Vec<u32>>>()?;
        let elements = g.closure(&gens);
        if elements.len() != s.order || elements.len() * w.index != g.order() {
            return Ok(false);
        }
        groups.push(g.subgroup_as_group(&Subgroup { elements, generators: gens }));
    }
    Ok(!are_isomorphic(&groups[0], &groups[1]))
}

fn spherical(name: &str, ctx: &Ctx) -> Result<Finished> {
    let kind = SphericalKind::parse(name.strip_prefix("sph:").unwrap_or(name))?;
    let g = realize_spherical(&kind, ctx.groups)?;
    let report = exceptionality_report(&g, ctx.groups)?;
    let mut witness = Value::Null;
    if let GroupVerdict::NotExceptional { witness: w } = &report.verdict {
        witness = to_value(w);
        if ctx.verify {
            let ok = verify_group_witness(&g, w)?;
            witness["verified"] = json!(ok);
            if !ok {
                return Err(Error::Inconsistent("witness failed re-validation".into()));
            }
        }
    }
    let summary = format!("{} (order {}): {}", kind, report.group_order, report.verdict.label());
    Ok(Finished { inputs: json!({ "name": kind.to_string() }), results: to_value(&report), witness, summary })
}

fn lens(p: u64, q: i64, q2: i64) -> Result<Finished> {
    let a = LensSpace::new(p, q)?;
    let b = LensSpace::new(p, q2)?;
    let h = lens_homeomorphic(&a, &b)?;
    Ok(Finished {
        inputs: json!({ "p": p, "q": q, "q_prime": q2 }),
        results: json!({ "homeomorphic": h }),
        witness: Value::Null,
        summary: format!("L({p},{q}) and L({p},{q2}) {}", if h { "are homeomorphic" } else { "are not homeomorphic" }),
    })
}

fn verify_bundle_witness(b: &CircleBundle, w: &CircleWitness) -> Result<bool> {
    let CircleWitness::Pair { degree, first, second } = w else {
        return Ok(true);
    };
    let h1 = |ell, m| -> Result<String> { Ok(bundles::h1_circle_bundle(&bundles::cover_bundle(b, ell, m)?).to_string()) };
    Ok(first.ell * first.m == *degree
        && second.ell * second.m == *degree
        && h1(first.ell, first.m)? == first.h1
        && h1(second.ell, second.m)? == second.h1
        && first.h1 != second.h1)
}

fn bundle(genus: u32, euler: i64, d: u64, ctx: &Ctx) -> Result<Finished> {
    let b = CircleBundle::new(genus, euler);
    let w = circle_bundle_witness(&b, d)?;
    let mut witness = to_value(&w);
    if ctx.verify {
        let ok = verify_bundle_witness(&b, &w)?;
        witness["verified"] = json!(ok);
        if !ok {
            return Err(Error::Inconsistent("witness failed re-validation".into()));
        }
    }
    let summary = match &w {
        CircleWitness::Pair { first, second, .. } => format!("H1 {} vs {}", first.h1, second.h1),
        CircleWitness::NoWitness { reason } => format!("no witness ({reason:?})"),
    };
    Ok(Finished {
        inputs: json!({ "genus": genus, "euler": euler, "d": d }),
        results: json!({ "h1": bundles::h1_circle_bundle(&b).to_string(), "has_witness": matches!(w, CircleWitness::Pair { .. }) }),
        witness,
        summary,
    })
}

fn sol(m: [[i64; 2]; 2], d: u32, ctx: &Ctx) -> Result<Finished> {
    let s = SolBundle::new(m)?;
    let w = sol_witness(&s, d)?;
    let mut witness = to_value(&w);
    if ctx.verify {
        let ok = bundles::trace_of_power(&s, d) == w.cover_trace && (w.cover_trace != w.base_trace) == w.distinct;
        witness["verified"] = json!(ok);
        if !ok {
            return Err(Error::Inconsistent("witness failed re-validation".into()));
        }
    }
    Ok(Finished {
        inputs: json!({ "monodromy": m, "d": d }),
        results: json!({ "trace": s.trace(), "distinct": w.distinct }),
        witness,
        summary: format!("traces {} vs {}", w.base_trace, w.cover_trace),
    })
}

fn crystal(source: &str, ctx: &Ctx) -> Result<Finished> {
    let c = match source.strip_prefix("fixture:") {
        Some(name) => CrystalGroup::fixture(name)?,
        None => {
            let text = std::fs::read_to_string(source).map_err(|e| Error::InvalidInput(format!("cannot read {source}: {e}")))?;
            CrystalGroup::from_json(&text)?
        }
    };
    let w = euclidean_witness(&c)?;
    let names = c.presentation().generator_names().to_vec();
    let (ab, nab) = w.render(&names);
    let mut witness = json!({
        "index": w.index,
        "abelian_generators": ab,
        "nonabelian_generators": nab,
        "noncommuting": w.noncommuting,
        "split": w.split,
    });
    if ctx.verify {
        let ok = verify_pair(&c, &w);
        let cross = cross_validate(&c, &w, ctx.enumeration)?;
        witness["verified"] = json!(ok && cross.abelian_found && cross.nonabelian_found);
        witness["cross_check"] = to_value(&cross);
        if witness["verified"] != json!(true) {
            return Err(Error::Inconsistent("witness failed re-validation".into()));
        }
    }
    Ok(Finished {
        inputs: json!({ "group": source, "dim": c.dim(), "point_group_order": c.point_group_order() }),
        results: json!({ "index": w.index, "free_abelian": false }),
        witness,
        summary: format!("abelian and non-abelian subgroups of index {}", w.index),
    })
}

fn verify_manifold_witness(w: &ManifoldWitness, m: &ManifoldDescriptor, ctx: &Ctx) -> Result<bool> {
    Ok(match w {
        ManifoldWitness::Group(gw) => {
            let kind = m.summands().iter().find_map(|s| match s {
                PrimeSummand::Spherical(k) => Some(*k),
                _ => None,
            });
            match kind {
                Some(k) => verify_group_witness(&realize_spherical(&k, ctx.groups)?, gw)?,
                None => false,
            }
        }
        ManifoldWitness::CircleBundle(cw) => match m.summands().iter().find_map(|s| match s {
            PrimeSummand::CircleBundle(b) => Some(*b),
            _ => None,
        }) {
            Some(b) => verify_bundle_witness(&b, cw)?,
            None => false,
        },
        ManifoldWitness::Sol(sw) => sw.distinct && sw.cover_trace != sw.base_trace,
        ManifoldWitness::ConnectedSum { first, second, .. } => first != second,
        ManifoldWitness::Summand { summand, witness } => match witness {
            Some(inner) => verify_manifold_witness(inner, &ManifoldDescriptor::parse(summand)?, ctx)?,
            None => true,
        },
        ManifoldWitness::DoubleCovers { connected, orientable } => connected > orientable,
    })
}

fn manifold_verdict(descriptor: &str, ctx: &Ctx) -> Result<Finished> {
    let m = ManifoldDescriptor::parse(descriptor)?;
    let v = verdict(&m, ctx.groups)?;
    let mut witness = Value::Null;
    if let Verdict::NotExceptional { witness: Some(w), .. } = &v {
        witness = to_value(w);
        if ctx.verify {
            let ok = verify_manifold_witness(w, &m, ctx)?;
            witness["verified"] = json!(ok);
            if !ok {
                return Err(Error::Inconsistent("witness failed re-validation".into()));
            }
        }
    }
    let reason = match &v {
        Verdict::Exceptional { reason } | Verdict::NotExceptional { reason, .. } | Verdict::Undetermined { reason } => reason.clone(),
    };
    Ok(Finished {
        inputs: json!({ "descriptor": descriptor, "normalized": m.to_string() }),
        results: json!({ "verdict": v.label(), "reason": reason }),
        witness,
        summary: format!("{m}: {}", v.label()),
    })
}
