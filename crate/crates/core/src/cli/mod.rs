//! Command-line front end. [`run`] does all the work and returns the exit
//! code with captured output, so it can be driven from tests.

mod parse;

pub use parse::parse_poly;

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::classical::{classical_problems, ngon_constructible, real_constructible_capped};
use crate::error::{Error, Result};
use crate::factor::{factor_mod_p, factor_over_q_capped, DEFAULT_FACTOR_CAP};
use crate::field::{PrimeField, Rationals};
use crate::galois::{galois_group_with, render_chart, solvable_by_radicals_with, Caps, GaloisReport};
use crate::numfield::{ff_subfields, finite_field, frobenius_order, splitting_field_capped, DEFAULT_NF_CAP, MAX_FF_SIZE};
use crate::perm::{generate, FiniteGroup, Perm, DEFAULT_CLOSURE_CAP, DEFAULT_SUBGROUP_CAP};
use crate::poly::{cyclotomic, QPoly};

/// Environment variable overriding the default cap.
pub const CAP_ENV: &str = "GALOISKIT_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Exact Galois theory from the command line.
#[derive(Parser, Debug)]
#[command(name = "galoiskit", version, about)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Size limit for the verb's main object (field degree, factor degree,
    /// group order or finite field size). Overrides GALOISKIT_CAP.
    #[arg(long, global = true)]
    cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Factor a polynomial over Q, or over F_p with --mod.
    Factor {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Galois group of a polynomial over Q.
    Gal {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Print the subgroup / fixed field chart.
        #[arg(long)]
        table: bool,
    },
    /// Splitting field and its roots.
    Split {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// The n-th cyclotomic polynomial.
    Cyclotomic { n: u64 },
    /// Solvability by radicals.
    Solvable {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Constructibility of the regular n-gon.
    Ngon { n: u64 },
    /// Constructibility of a real root of an irreducible polynomial, or the
    /// three classical problems when no polynomial is given.
    Constructible {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// A permutation group: S4, A5, C6, D5, or generators in cycle notation.
    Group {
        #[arg(required = true)]
        spec: Vec<String>,
    },
    /// The finite field with p^n elements.
    Ff { p: u64, n: usize },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let cap = match cli.cap {
        Some(c) => Some(c),
        None => match std::env::var(CAP_ENV) {
            Ok(v) => match v.trim().parse() {
                Ok(c) => Some(c),
                Err(_) => {
                    return Outcome {
                        code: EXIT_USAGE,
                        stdout: String::new(),
                        stderr: format!("error: {CAP_ENV} must be a positive integer, got {v:?}\n"),
                    }
                }
            },
            Err(_) => None,
        },
    };
    let (command, input) = describe(&cli.verb);
    match execute(&cli.verb, cap) {
        Ok((text, result)) => {
            let stdout = if cli.json {
                let v = json!({ "command": command, "input": input, "result": result });
                format!("{}\n", serde_json::to_string(&v).expect("serializable"))
            } else {
                text
            };
            Outcome { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = exit_code(&e);
            let stdout = if cli.json {
                let v = json!({
                    "command": command,
                    "input": input,
                    "error": { "kind": error_kind(&e), "message": e.to_string() },
                });
                format!("{}\n", serde_json::to_string(&v).expect("serializable"))
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr: format!("error: {e}\n") }
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::CapExceeded { .. } => "cap",
        Error::Internal(_) => "internal",
        Error::Parse { .. } => "parse",
        _ => "input",
    }
}

fn describe(v: &Verb) -> (&'static str, String) {
    match v {
        Verb::Factor { poly, .. } => ("factor", poly.clone()),
        Verb::Gal { poly, .. } => ("gal", poly.clone()),
        Verb::Split { poly } => ("split", poly.clone()),
        Verb::Cyclotomic { n } => ("cyclotomic", n.to_string()),
        Verb::Solvable { poly } => ("solvable", poly.clone()),
        Verb::Ngon { n } => ("ngon", n.to_string()),
        Verb::Constructible { poly } => ("constructible", poly.clone().unwrap_or_default()),
        Verb::Group { spec } => ("group", spec.join(" ")),
        Verb::Ff { p, n } => ("ff", format!("{p} {n}")),
    }
}

fn qpoly(src: &str) -> Result<QPoly> {
    let f = parse_poly(src, &Rationals)?;
    if f.degree().is_none_or(|d| d == 0) {
        return Err(Error::invalid("expected a nonconstant polynomial"));
    }
    Ok(f)
}

fn execute(v: &Verb, cap: Option<usize>) -> Result<(String, Value)> {
    match v {
        Verb::Factor { poly, modulus } => factor_cmd(poly, *modulus, cap),
        Verb::Gal { poly, table } => gal_cmd(poly, *table, cap),
        Verb::Split { poly } => split_cmd(poly, cap),
        Verb::Cyclotomic { n } => {
            if *n == 0 {
                return Err(Error::invalid("n must be positive"));
            }
            let p = cyclotomic(*n);
            Ok((format!("{p}\n"), json!({ "n": n, "poly": p.to_string(), "degree": p.deg() })))
        }
        Verb::Solvable { poly } => solvable_cmd(poly, cap),
        Verb::Ngon { n } => {
            let v = ngon_constructible(*n)?;
            let factors: Vec<Value> = v.factors.iter().map(|(p, e)| json!([p, e])).collect();
            Ok((
                format!("{v}\n"),
                json!({ "n": n, "constructible": v.constructible, "factors": factors, "phi": v.phi }),
            ))
        }
        Verb::Constructible { poly } => constructible_cmd(poly.as_deref(), cap),
        Verb::Group { spec } => group_cmd(spec, cap),
        Verb::Ff { p, n } => ff_cmd(*p, *n, cap),
    }
}

fn factor_cmd(src: &str, modulus: Option<u64>, cap: Option<usize>) -> Result<(String, Value)> {
    match modulus {
        Some(p) => {
            let fp = PrimeField::new(p)?;
            let f = parse_poly(src, &fp)?;
            if f.is_zero() {
                return Err(Error::invalid("cannot factor the zero polynomial"));
            }
            let fac = factor_mod_p(&f)?;
            let factors: Vec<Value> = fac
                .factors
                .iter()
                .map(|(g, m)| json!({ "factor": g.to_string(), "multiplicity": m }))
                .collect();
            Ok((
                format!("{fac}  (mod {p})\n"),
                json!({ "modulus": p, "unit": fac.unit.to_string(), "factors": factors, "text": fac.to_string() }),
            ))
        }
        None => {
            let f = parse_poly(src, &Rationals)?;
            if f.is_zero() {
                return Err(Error::invalid("cannot factor the zero polynomial"));
            }
            let fac = factor_over_q_capped(&f, cap.unwrap_or(DEFAULT_FACTOR_CAP))?;
            let factors: Vec<Value> = fac
                .factors
                .iter()
                .map(|(g, m)| json!({ "factor": g.to_string(), "multiplicity": m }))
                .collect();
            Ok((
                format!("{fac}\n"),
                json!({ "unit": fac.unit.to_string(), "factors": factors, "text": fac.to_string() }),
            ))
        }
    }
}

fn caps(cap: Option<usize>) -> Caps {
    Caps { field_degree: cap.unwrap_or(DEFAULT_NF_CAP), subgroups: DEFAULT_SUBGROUP_CAP }
}

fn gal_cmd(src: &str, table: bool, cap: Option<usize>) -> Result<(String, Value)> {
    let f = qpoly(src)?;
    let r = galois_group_with(&f, caps(cap))?;
    let mut out = String::new();
    writeln!(out, "Galois group of {}: {} (order {})", r.poly, r.name, r.order).unwrap();
    writeln!(out, "splitting field: {}, degree {}", r.field, r.order).unwrap();
    let gens: Vec<String> = r.generators.iter().map(Perm::to_string).collect();
    writeln!(out, "generators: {}", if gens.is_empty() { "()".into() } else { gens.join(", ") }).unwrap();
    writeln!(
        out,
        "solvable: {} (derived series orders {:?})",
        if r.solvable { "yes" } else { "no" },
        r.derived_orders
    )
    .unwrap();
    if table {
        match &r.rows {
            Some(rows) => {
                out.push('\n');
                out.push_str(&render_chart(rows));
            }
            None => writeln!(out, "subgroup lattice exceeds cap {DEFAULT_SUBGROUP_CAP}; chart omitted").unwrap(),
        }
    }
    Ok((out, gal_json(&r)))
}

fn gal_json(r: &GaloisReport) -> Value {
    let rows = r.rows.as_ref().map(|rows| {
        rows.iter()
            .map(|row| {
                json!({
                    "subgroup_order": row.order(),
                    "index": row.index,
                    "normal": row.is_normal_subgroup,
                    "fixed_minpoly": row.fixed_minpoly().to_string(),
                })
            })
            .collect::<Vec<_>>()
    });
    json!({
        "degree": r.degree,
        "order": r.order,
        "name": r.name,
        "solvable": r.solvable,
        "rows": rows,
    })
}

fn split_cmd(src: &str, cap: Option<usize>) -> Result<(String, Value)> {
    let f = qpoly(src)?;
    let sf = splitting_field_capped(&f, cap.unwrap_or(DEFAULT_NF_CAP))?;
    let mut out = String::new();
    writeln!(out, "splitting field of {}: {}", f, sf.field().describe()).unwrap();
    writeln!(out, "degree: {}", sf.degree()).unwrap();
    let mut roots = Vec::new();
    for (i, (r, z)) in sf.roots().iter().zip(sf.root_labels()).enumerate() {
        writeln!(out, "r{} = {}  ≈ {}", i + 1, r, z).unwrap();
        roots.push(json!({ "exact": r.to_string(), "approx": z.to_string() }));
    }
    Ok((
        out,
        json!({ "field": sf.field().describe(), "degree": sf.degree(), "roots": roots }),
    ))
}

fn solvable_cmd(src: &str, cap: Option<usize>) -> Result<(String, Value)> {
    let f = qpoly(src)?;
    let (ok, w) = solvable_by_radicals_with(&f, caps(cap))?;
    let text = format!(
        "{}: {}\nwitness: {w}\n",
        f,
        if ok { "solvable by radicals" } else { "not solvable by radicals" }
    );
    Ok((text, json!({ "solvable": ok, "witness": w.to_string() })))
}

fn constructible_cmd(src: Option<&str>, cap: Option<usize>) -> Result<(String, Value)> {
    let Some(src) = src else {
        let ps = classical_problems()?;
        let mut out = String::new();
        let mut arr = Vec::new();
        for p in &ps {
            writeln!(out, "{}: {} ({})", p.name, if p.possible { "possible" } else { "impossible" }, p.reason).unwrap();
            arr.push(json!({ "problem": p.name, "possible": p.possible, "reason": p.reason }));
        }
        return Ok((out, json!({ "problems": arr })));
    };
    let f = qpoly(src)?;
    let v = real_constructible_capped(&f, cap.unwrap_or(DEFAULT_NF_CAP))?;
    Ok((
        format!("{}: {}\nreason: {}\n", f, v.verdict_text(), v.reason),
        json!({
            "constructible": v.constructible,
            "necessary_pass": v.necessary_pass,
            "closure_pass": v.closure_pass,
            "degree": v.degree,
            "closure_degree": v.closure_degree,
            "reason": v.reason,
        }),
    ))
}

fn named_group(s: &str, cap: usize) -> Result<Option<FiniteGroup>> {
    let s = s.trim();
    let Some(kind) = s.chars().next().filter(|c| "SACD".contains(*c)) else {
        return Ok(None);
    };
    let rest = s[1..].trim_start_matches('_');
    let Ok(n) = rest.parse::<usize>() else {
        return Ok(None);
    };
    if n == 0 || (kind == 'D' && n < 3) {
        return Err(Error::invalid(format!("no group {s}")));
    }
    let order: Option<usize> = match kind {
        'S' => (1..=n).try_fold(1usize, |a, k| a.checked_mul(k)),
        'A' => (1..=n).try_fold(1usize, |a, k| a.checked_mul(k)).map(|o| (o / 2).max(1)),
        'C' => Some(n),
        _ => n.checked_mul(2),
    };
    if order.is_none_or(|o| o > cap) {
        return Err(Error::cap("group order", cap, format!("{s} is too large to enumerate")));
    }
    Ok(Some(match kind {
        'S' => FiniteGroup::symmetric(n),
        'A' => FiniteGroup::alternating(n),
        'C' => FiniteGroup::cyclic(n),
        _ => FiniteGroup::dihedral(n),
    }))
}

fn group_cmd(spec: &[String], cap: Option<usize>) -> Result<(String, Value)> {
    let cap = cap.unwrap_or(DEFAULT_CLOSURE_CAP);
    let g = match (spec.len(), named_group(&spec[0], cap)?) {
        (1, Some(g)) => g,
        _ => {
            let perms: Vec<Perm> = spec.iter().map(|s| Perm::parse(s, None)).collect::<Result<_>>()?;
            let n = perms.iter().map(Perm::degree).max().unwrap_or(1).max(1);
            let perms: Vec<Perm> = perms
                .iter()
                .map(|p| Perm::parse(&p.to_string(), Some(n)))
                .collect::<Result<_>>()?;
            generate(&perms, cap)?
        }
    };
    let ds = g.derived_series();
    let cs = g.class_structure();
    let mut class_sizes: Vec<usize> = cs.classes.iter().map(Vec::len).collect();
    class_sizes.sort_unstable();
    let subgroups = g.subgroups(DEFAULT_SUBGROUP_CAP).ok().map(|s| s.len());
    let mut out = String::new();
    writeln!(out, "group: {} (order {}, degree {})", g.identify(), g.order(), g.degree()).unwrap();
    writeln!(out, "abelian: {}", yes_no(g.is_abelian())).unwrap();
    writeln!(out, "simple: {}", yes_no(g.is_simple())).unwrap();
    writeln!(out, "solvable: {} (derived series orders {:?})", yes_no(ds.solvable), ds.orders()).unwrap();
    writeln!(out, "center order: {}", cs.center.order()).unwrap();
    writeln!(out, "conjugacy class sizes: {class_sizes:?}").unwrap();
    match subgroups {
        Some(k) => writeln!(out, "subgroups: {k}").unwrap(),
        None => writeln!(out, "subgroups: more than {DEFAULT_SUBGROUP_CAP}").unwrap(),
    }
    Ok((
        out,
        json!({
            "name": g.identify(),
            "order": g.order(),
            "degree": g.degree(),
            "abelian": g.is_abelian(),
            "simple": g.is_simple(),
            "solvable": ds.solvable,
            "derived_orders": ds.orders(),
            "center_order": cs.center.order(),
            "class_sizes": class_sizes,
            "subgroups": subgroups,
        }),
    ))
}

fn ff_cmd(p: u64, n: usize, cap: Option<usize>) -> Result<(String, Value)> {
    let limit = cap.map_or(MAX_FF_SIZE, |c| (c as u64).min(MAX_FF_SIZE));
    let size = (p as u128).checked_pow(n as u32);
    if size.is_none_or(|s| s > limit as u128) {
        return Err(Error::cap("finite field size", limit as usize, format!("{p}^{n}")));
    }
    let f = finite_field(p, n)?;
    let subs = ff_subfields(p, n)?;
    let order = frobenius_order(&f);
    let mut out = String::new();
    writeln!(out, "F_{} = F_{}[x]/({})", f.size(), p, f.modulus()).unwrap();
    writeln!(out, "generator: {}", f.generator()).unwrap();
    writeln!(out, "Frobenius order: {order}").unwrap();
    let parts: Vec<String> = subs.iter().map(|s| format!("F_{}", s.size)).collect();
    writeln!(out, "subfields: {}", parts.join(", ")).unwrap();
    let sub_json: Vec<Value> = subs.iter().map(|s| json!({ "degree": s.d, "size": s.size })).collect();
    Ok((
        out,
        json!({
            "size": f.size(),
            "modulus": f.modulus().to_string(),
            "frobenius_order": order,
            "subfields": sub_json,
        }),
    ))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
