//! Command-line front end. `run` returns the process exit code: 0 on
//! success, 1 when a check fails, 2 on bad usage.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::characters::{
    context, finite_dim_and_dimension, kgroup_induct, parabolic_trivial_module, solve_all, support_dim,
    theorem_formula, weights, Budget, Solution, VermaOracle, VirtualCharacter,
};
use crate::group::{ParabolicKind, CLASS_LABELS};
use crate::linalg::{rank_bareiss, rank_modular};
use crate::reps::{parse_char_expr, Label, SymPowers};
use crate::scalar::Rat;
use crate::verify::{emit_report, exit_code, run_suite, Format, SuiteOptions};
use crate::verma::{certified_kernel, Verma};

#[derive(Parser, Debug)]
#[command(name = "h3", version, about = "Rational Cherednik algebra of the icosahedral group H3")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Accepted for compatibility; computations are single-threaded.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Largest slice dimension for exact kernel computations
    /// (default: $H3_BUDGET or 160).
    #[arg(long, global = true, value_name = "DIM")]
    pub budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Conjugacy classes and reflections.
    Group,
    /// Character table of the ten irreducibles.
    Reps {
        /// Also print the generator matrices of each representation.
        #[arg(long)]
        dump: bool,
    },
    /// Decompose a character expression such as `S^4 x 5-`.
    Decompose {
        #[arg(long)]
        expr: String,
    },
    /// Lowest weights h_c(τ).
    Hweights {
        #[arg(long, allow_hyphen_values = true)]
        c: Rat,
    },
    /// Rank and kernel of the contravariant form on one graded piece.
    Rank {
        #[arg(long, allow_hyphen_values = true)]
        c: Rat,
        #[arg(long)]
        tau: Label,
        #[arg(long)]
        k: usize,
    },
    /// Derive the decomposition of L_c(τ) from constraints and form ranks.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        c: Rat,
        /// Omit to solve every τ.
        #[arg(long)]
        tau: Option<Label>,
    },
    /// Closed-form decomposition of L_c(τ) over standard modules.
    Formula {
        #[arg(long, allow_hyphen_values = true)]
        c: Rat,
        #[arg(long)]
        tau: Option<Label>,
    },
    /// Dimension of the support of L_c(1+).
    Support {
        #[arg(long, allow_hyphen_values = true)]
        c: Rat,
    },
    /// Induce a class from a parabolic subgroup.
    Induct {
        /// `Z2xZ2` or `S3`.
        #[arg(long)]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        c: Rat,
        /// Coefficients over the subgroup's standard modules, comma
        /// separated; default is its trivial irreducible module.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
    },
    /// Run the verification suite.
    Verify {
        /// Group name or check-id prefix.
        #[arg(long)]
        filter: Option<String>,
        /// Include long-running confirmations.
        #[arg(long)]
        extended: bool,
        /// Print per-check timings (text output only).
        #[arg(long)]
        timings: bool,
        /// With `--json`, write the report to this file and print the text
        /// summary.
        output: Option<std::path::PathBuf>,
    },
}

/// Parse `args` (including the program name) and run.
pub fn main_with_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            (code, e.render().to_string())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn usage(msg: impl std::fmt::Display) -> (i32, String) {
    (2, format!("error: {msg}\n"))
}

pub fn run(cli: &Cli) -> (i32, String) {
    let budget = cli.budget.map(Budget::new).unwrap_or_else(Budget::from_env);
    match &cli.command {
        Command::Group => (0, group(cli.json)),
        Command::Reps { dump } => (0, reps(cli.json, *dump)),
        Command::Decompose { expr } => decompose(cli.json, expr),
        Command::Hweights { c } => (0, hweights(cli.json, c)),
        Command::Rank { c, tau, k } => rank(cli.json, c, *tau, *k, budget),
        Command::Solve { c, tau } => solve(cli.json, c, *tau, budget),
        Command::Formula { c, tau } => (0, formula(cli.json, c, *tau)),
        Command::Support { c } => support(cli.json, c),
        Command::Induct { kind, c, coeffs } => induct(cli.json, kind, c, coeffs.as_deref()),
        Command::Verify { filter, extended, timings, output } => {
            let opts = SuiteOptions {
                filter: filter.clone(),
                budget,
                extended: *extended,
            };
            let recs = run_suite(&opts);
            if recs.is_empty() {
                return usage(format!("no checks match {:?}", filter.as_deref().unwrap_or("")));
            }
            let code = exit_code(&recs);
            match (cli.json, output) {
                (true, Some(path)) => {
                    if let Err(e) = std::fs::write(path, emit_report(&recs, Format::Json, false)) {
                        return (1, format!("error: writing {}: {e}\n", path.display()));
                    }
                    (code, emit_report(&recs, Format::Text, *timings))
                }
                (false, Some(_)) => usage("an output file needs --json"),
                (true, None) => (code, emit_report(&recs, Format::Json, false)),
                (false, None) => (code, emit_report(&recs, Format::Text, *timings)),
            }
        }
    }
}

fn group(as_json: bool) -> String {
    let g = &context().group;
    if as_json {
        let classes: Vec<Value> = g
            .classes
            .iter()
            .map(|c| json!({"label": c.label, "size": c.size, "order": g.elements[c.representative].order}))
            .collect();
        return pretty(&json!({"order": g.order(), "reflections": g.reflections.len(), "classes": classes}));
    }
    let mut s = format!("order {}, {} reflections\n", g.order(), g.reflections.len());
    for c in &g.classes {
        let _ = writeln!(s, "{:>12}  size {:>2}  element order {}", c.label, c.size, g.elements[c.representative].order);
    }
    s
}

fn reps(as_json: bool, dump: bool) -> String {
    let ctx = context();
    if as_json {
        let rows: Vec<Value> = Label::ALL
            .iter()
            .map(|&l| {
                let mut row = json!({
                    "label": l.name(),
                    "dim": l.dim(),
                    "character": ctx.reps.chi(l).0.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                });
                if dump {
                    let gens: Vec<Vec<Vec<String>>> = ctx
                        .group
                        .generators
                        .iter()
                        .map(|&w| {
                            let m = &ctx.reps.get(l).mats[w];
                            (0..m.rows).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
                        })
                        .collect();
                    row["generators"] = json!(gens);
                }
                row
            })
            .collect();
        return pretty(&json!({"classes": CLASS_LABELS, "irreps": rows}));
    }
    let mut s = format!("{:>5}", "");
    for c in CLASS_LABELS {
        let _ = write!(s, " {c:>13}");
    }
    s.push('\n');
    for l in Label::ALL {
        let _ = write!(s, "{:>5}", l.name());
        for x in &ctx.reps.chi(l).0 {
            let _ = write!(s, " {:>13}", x.to_string());
        }
        s.push('\n');
        if dump {
            for (n, &w) in ctx.group.generators.iter().enumerate() {
                let m = &ctx.reps.get(l).mats[w];
                let _ = writeln!(s, "      s{}:", n + 1);
                for i in 0..m.rows {
                    let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(s, "        [{}]", row.join(", "));
                }
            }
        }
    }
    s
}

fn decompose(as_json: bool, expr: &str) -> (i32, String) {
    let ctx = context();
    let mut sym = SymPowers::new(&ctx.group, &ctx.reps);
    let cf = match parse_char_expr(expr, &mut sym, &ctx.reps) {
        Ok(cf) => cf,
        Err(e) => return usage(e),
    };
    let m = match ctx.reps.decompose(&cf) {
        Ok(m) => m,
        Err(e) => return (1, format!("error: {e}\n")),
    };
    if as_json {
        let coeffs: serde_json::Map<String, Value> = Label::ALL.iter().filter(|l| m[l.0] != 0).map(|l| (l.name().to_string(), json!(m[l.0]))).collect();
        return (0, pretty(&json!({"expr": expr, "dim": cf.degree().to_string(), "coeffs": coeffs})));
    }
    let parts: Vec<String> = Label::ALL
        .iter()
        .filter(|l| m[l.0] != 0)
        .map(|l| if m[l.0] == 1 { l.name().to_string() } else { format!("{}·{}", m[l.0], l.name()) })
        .collect();
    (0, format!("{} = {}  (dim {})\n", expr, if parts.is_empty() { "0".into() } else { parts.join(" + ") }, cf.degree()))
}

fn hweights(as_json: bool, c: &Rat) -> String {
    let w = weights(c);
    if as_json {
        let m: serde_json::Map<String, Value> = Label::ALL.iter().map(|l| (l.name().to_string(), json!(w[l.0].to_string()))).collect();
        return pretty(&json!({"c": c.to_string(), "h": m}));
    }
    Label::ALL.iter().map(|l| format!("{:>4}  {}\n", l.name(), w[l.0])).collect()
}

fn rank(as_json: bool, c: &Rat, tau: Label, k: usize, budget: Budget) -> (i32, String) {
    let ctx = context();
    let dim = crate::verma::mono_dim(k) * tau.dim();
    if dim > budget.rank_dim {
        return usage(format!("slice dimension {dim} exceeds budget {} (raise --budget)", budget.rank_dim));
    }
    let mut v = Verma::new(&ctx.group, &ctx.reps, tau, c);
    let (info, route) = match certified_kernel(&mut v, &ctx.group, &ctx.reps, k) {
        Ok(x) => x,
        Err(e) => return (1, format!("error: {e}\n")),
    };
    let b = v.form(k).expect("form already built");
    let modular = rank_modular(b);
    let exact = rank_bareiss(b);
    let agree = exact == info.rank;
    let kernel: serde_json::Map<String, Value> = Label::ALL.iter().filter(|l| info.mult[l.0] != 0).map(|l| (l.name().to_string(), json!(info.mult[l.0]))).collect();
    let out = if as_json {
        pretty(&json!({
            "c": c.to_string(), "tau": tau.name(), "k": k, "dim": info.dim,
            "rank": exact, "rank_modular": modular, "kernel": kernel, "route": format!("{route:?}"),
        }))
    } else {
        let parts: Vec<String> = kernel.iter().map(|(l, m)| if m == 1 { l.clone() } else { format!("{m}·{l}") }).collect();
        format!(
            "M_{c}({tau})[{k}]: dim {}, rank {exact} (modular {modular}), kernel {} via {route:?}\n",
            info.dim,
            if parts.is_empty() { "0".into() } else { parts.join(" + ") }
        )
    };
    (i32::from(!agree), out)
}

fn coeff_map(v: &VirtualCharacter) -> serde_json::Map<String, Value> {
    Label::ALL.iter().filter(|l| v.get(**l) != 0).map(|l| (l.name().to_string(), json!(v.get(*l)))).collect()
}

fn solution_json(s: &Solution) -> Value {
    let cert: Vec<Value> = s
        .certificate
        .iter()
        .map(|r| json!({"kind": r.kind.name(), "detail": r.detail, "pinned": r.pinned.iter().map(|l| l.name()).collect::<Vec<_>>()}))
        .collect();
    let mut v = json!({
        "c": s.c.to_string(),
        "tau": s.tau.name(),
        "coeffs": s.coeffs.as_ref().map(coeff_map),
        "finite": s.finite,
        "dim": s.dim,
        "certificate": cert,
    });
    if let Some(u) = &s.unresolved {
        v["unresolved"] = json!({
            "reason": format!("{:?}", u.reason),
            "free": u.free.iter().map(|l| l.name()).collect::<Vec<_>>(),
            "candidates": u.candidates.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "missing": u.missing,
        });
    }
    v
}

fn solution_text(s: &Solution) -> String {
    let mut out = String::new();
    match (&s.coeffs, &s.unresolved) {
        (Some(v), _) => {
            let fin = match (s.finite, s.dim) {
                (Some(true), Some(d)) => format!("finite, dim {d}"),
                (Some(false), _) => "infinite".into(),
                _ => String::new(),
            };
            let _ = writeln!(out, "L_{}({}) = {}  [{}]", s.c, s.tau, v, fin);
            for r in &s.certificate {
                let _ = writeln!(out, "    {:<20} {}", r.kind.name(), r.detail);
            }
        }
        (None, Some(u)) => {
            let _ = writeln!(out, "L_{}({}) unresolved ({:?}) in {}", s.c, s.tau, u.reason, u.free.iter().map(|l| l.name()).collect::<Vec<_>>().join(", "));
            for c in &u.candidates {
                let _ = writeln!(out, "    candidate {c}");
            }
            for m in &u.missing {
                let _ = writeln!(out, "    missing   {m}");
            }
        }
        (None, None) => {
            let _ = writeln!(out, "L_{}({}) no result", s.c, s.tau);
        }
    }
    out
}

fn solve(as_json: bool, c: &Rat, tau: Option<Label>, budget: Budget) -> (i32, String) {
    let mut oracle = VermaOracle::new();
    let sols = match solve_all(c, &mut oracle, budget) {
        Ok(s) => s,
        Err(e) => return (1, format!("error: {e}\n")),
    };
    let chosen: Vec<&Solution> = match tau {
        Some(t) => vec![&sols[t.0]],
        None => sols.iter().collect(),
    };
    let code = i32::from(chosen.iter().any(|s| !s.is_solved()));
    if as_json {
        let v: Vec<Value> = chosen.iter().map(|s| solution_json(s)).collect();
        let doc = if tau.is_some() { v.into_iter().next().expect("one row") } else { Value::Array(v) };
        return (code, pretty(&doc));
    }
    (code, chosen.iter().map(|s| solution_text(s)).collect())
}

fn formula(as_json: bool, c: &Rat, tau: Option<Label>) -> String {
    let labels: Vec<Label> = tau.map_or(Label::ALL.to_vec(), |t| vec![t]);
    if as_json {
        let rows: Vec<Value> = labels
            .iter()
            .map(|&t| {
                let v = theorem_formula(c, t);
                let f = finite_dim_and_dimension(&v);
                json!({"c": c.to_string(), "tau": t.name(), "coeffs": coeff_map(&v), "finite": f.finite, "dim": f.dim})
            })
            .collect();
        let doc = if tau.is_some() { rows.into_iter().next().expect("one row") } else { Value::Array(rows) };
        return pretty(&doc);
    }
    labels
        .iter()
        .map(|&t| {
            let v = theorem_formula(c, t);
            let f = finite_dim_and_dimension(&v);
            let fin = if f.finite { format!("finite, dim {}", f.dim.unwrap_or(0)) } else { "infinite".into() };
            format!("L_{c}({t}) = {v}  [{fin}]\n")
        })
        .collect()
}

fn support(as_json: bool, c: &Rat) -> (i32, String) {
    let Some(d) = support_dim(c) else {
        return usage("support is defined here for c > 0");
    };
    if as_json {
        return (0, pretty(&json!({"c": c.to_string(), "support_dim": d})));
    }
    (0, format!("dim supp L_{c}(1+) = {d}\n"))
}

fn induct(as_json: bool, kind: &str, c: &Rat, coeffs: Option<&str>) -> (i32, String) {
    let Some(kind) = ParabolicKind::parse(kind) else {
        return usage(format!("unknown parabolic {kind:?} (expected Z2xZ2 or S3)"));
    };
    let n = context().group.parabolic(kind).irrep_labels.len();
    let coeffs: Vec<i64> = match coeffs {
        Some(s) => match s.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>() {
            Ok(v) if v.len() == n => v,
            _ => return usage(format!("--coeffs needs {n} comma-separated integers")),
        },
        None => match parabolic_trivial_module(kind, c) {
            Some(v) => v,
            None => return usage(format!("no trivial-module class for {} at c={c}; pass --coeffs", kind.name())),
        },
    };
    let v = kgroup_induct(kind, &coeffs, c);
    if as_json {
        return (0, pretty(&json!({"kind": kind.name(), "c": c.to_string(), "input": coeffs, "coeffs": coeff_map(&v)})));
    }
    (0, format!("Ind {} [{}] = {v}\n", kind.name(), coeffs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        main_with_args(std::iter::once("h3").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["hweights"]).0, 2);
        assert_eq!(run_args(&["induct", "--kind", "B2", "--c", "1/2"]).0, 2);
        assert_eq!(run_args(&["verify", "--filter", "nothing-here"]).0, 2);
    }

    #[test]
    fn formula_json_shape() {
        let (code, out) = run_args(&["--json", "formula", "--c", "1/6", "--tau", "1+"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["dim"], json!(5));
        assert_eq!(v["coeffs"]["5+"], json!(-1));
    }

    #[test]
    fn negative_c_parses() {
        let (code, out) = run_args(&["hweights", "--c", "-1/2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("1+  9"));
    }

    #[test]
    fn decompose_expression() {
        let (code, out) = run_args(&["decompose", "--expr", "S^2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "S^2 = 1+ + 5+  (dim 6)\n");
    }
}
