//! Command dispatch.

use std::collections::BTreeMap;

use anyhow::{anyhow, Context};
use brauer::admissible::{
    check_admissible, check_u_admissible_series, check_weakly_admissible, default_depth, dropped_lie_parameters,
    lie_parameters, omega_from_u, IndexSet, LieKind,
};
use brauer::diagram::enumerate_nd_basis;
use brauer::lie_oracle::{build_lie, functor_check, Family};
use brauer::nw::{multiplication_table, verify_nw_relations};
use brauer::scalar::{self, Scalar};
use brauer::{CategoryConfig, Engine, Morphism, NormalDiagram, OmegaSequence};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::expr;

#[derive(Parser, Debug)]
#[command(name = "brauer", version, about = "Exact normal forms in Brauer-type diagram categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = CategoryArg::Ab)]
    pub category: CategoryArg,
    /// Value of the undotted loop, as `p/q`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub omega0: Option<String>,
    /// Roots of the cyclotomic polynomial, as `p1/q1,p2/q2,...`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// Depth for admissibility checks, or degree cutoff for infinite bases.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[arg(long, global = true)]
    pub json: bool,
    /// Lie algebra for the matrix oracle: `so:N` or `sp:N`.
    #[arg(long, global = true)]
    pub lie: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CategoryArg {
    B,
    B0,
    Ab,
    Ab0,
    Abw,
    Cbf,
    Cbfw,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normalize a diagram expression.
    Normalize { expr: String },
    /// Count basis diagrams of Hom(m, s).
    CountBasis { m: usize, s: usize },
    /// Check the Nazarov-Wenzl relations in End(r).
    VerifyNw { r: usize },
    /// Check that the loop values are u-admissible.
    CheckOmega {
        /// Explicit loop values instead of the ones generated by `--u`.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
    },
    /// Root lists for blocks `q` and shifts `c` of a Lie algebra.
    LieParams {
        /// Block sizes of the Levi subalgebra, as `q1,q2,...`; they sum to the rank.
        #[arg(long)]
        q: String,
        /// One shift per block, as `p1/q1,p2/q2,...`.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Index set: 1 keeps every root, 2 drops the middle ones and needs a zero last shift.
        #[arg(long, default_value_t = 1)]
        index: u8,
    },
    /// Compare the matrix functor on g ∘ f and f ⊗ g.
    FunctorCheck {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Structure constants of End(r) in a cyclotomic category.
    MultiplicationTable { r: usize },
}

/// Result of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Usage problems exit with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = Outcome::default();
    match dispatch(&cli, &mut out) {
        Ok(ok) => out.code = if ok { 0 } else { 1 },
        Err(e) => {
            out.code = 2;
            out.stderr.push_str(&format!("error: {e:#}\n"));
        }
    }
    out
}

fn parse_list(text: &str, what: &str) -> anyhow::Result<Vec<Scalar>> {
    text.split(',')
        .map(|p| scalar::parse(p).map_err(|e| usage(format!("--{what}: {e}"))))
        .collect()
}

fn parse_scalar(text: &str, what: &str) -> anyhow::Result<Scalar> {
    scalar::parse(text).map_err(|e| usage(format!("--{what}: {e}")))
}

fn config(cli: &Cli) -> anyhow::Result<CategoryConfig> {
    use CategoryArg::*;
    let cat = cli.category;
    if cli.omega0.is_some() && !matches!(cat, B0 | Ab0) {
        return Err(usage("--omega0 applies only to the b0 and ab0 categories"));
    }
    if cli.u.is_some() && !matches!(cat, Abw | Cbf | Cbfw) {
        return Err(usage("--u applies only to the abw, cbf and cbfw categories"));
    }
    let omega0 = || -> anyhow::Result<Scalar> {
        let w = cli.omega0.as_deref().ok_or_else(|| usage(format!("{cat:?} needs --omega0").to_lowercase()))?;
        parse_scalar(w, "omega0")
    };
    let u = || -> anyhow::Result<Vec<Scalar>> {
        let text = cli.u.as_deref().ok_or_else(|| usage(format!("{cat:?} needs --u").to_lowercase()))?;
        parse_list(text, "u")
    };
    let bad = |e: brauer::Error| usage(e.to_string());
    Ok(match cat {
        B => CategoryConfig::brauer(),
        B0 => CategoryConfig::brauer_omega0(omega0()?),
        Ab => CategoryConfig::affine(),
        Ab0 => CategoryConfig::affine_omega0(omega0()?),
        Abw => {
            let u = u()?;
            let depth = cli.depth.unwrap_or_else(|| default_depth(u.len()));
            CategoryConfig::affine_omega(omega_from_u(&u), depth).map_err(bad)?
        }
        Cbf => CategoryConfig::cyclotomic(u()?).map_err(bad)?,
        Cbfw => CategoryConfig::cyclotomic_omega(u()?, None).map_err(bad)?,
    })
}

fn diagram_json(d: &NormalDiagram, coeff: &Scalar) -> Value {
    let bubbles: BTreeMap<String, u32> = d.bubbles.iter().map(|(k, e)| (k.to_string(), *e)).collect();
    let pairs: Vec<[usize; 2]> = d.matching.pairs().into_iter().map(|(a, b)| [a, b]).collect();
    json!({
        "coeff": scalar::format(coeff),
        "bubbles": bubbles,
        "pairs": pairs,
        "top_dots": d.top,
        "bottom_dots": d.bot,
    })
}

pub fn morphism_json(f: &Morphism) -> Value {
    let terms: Vec<Value> = f.terms().map(|(d, c)| diagram_json(d, c)).collect();
    json!({"source": f.source(), "target": f.target(), "terms": terms})
}

fn emit(out: &mut Outcome, cli: &Cli, text: String, value: Value) {
    if cli.json {
        out.stdout.push_str(&value.to_string());
    } else {
        out.stdout.push_str(&text);
    }
    out.stdout.push('\n');
}

fn evaluate(text: &str, cfg: &CategoryConfig) -> anyhow::Result<Morphism> {
    let e = expr::parse(text).map_err(|e| usage(e.to_string()))?;
    e.widths().map_err(|e| usage(e.to_string()))?;
    let target = Engine::new(cfg.clone());
    if cfg.is_monoidal() {
        return e.eval(&target).map_err(|e| usage(format!("{e:#}")));
    }
    let lift = Engine::new(cfg.monoidal_lift());
    let f = e.eval(&lift).map_err(|e| usage(format!("{e:#}")))?;
    Ok(target.project(&f)?)
}

fn lie_data(cli: &Cli) -> anyhow::Result<brauer::lie_oracle::LieData> {
    let text = cli.lie.as_deref().ok_or_else(|| usage("--lie so:N or sp:N is required"))?;
    let (fam, n) = text.split_once(':').ok_or_else(|| usage(format!("--lie `{text}`: expected so:N or sp:N")))?;
    let family = match fam {
        "so" => Family::So,
        "sp" => Family::Sp,
        _ => return Err(usage(format!("--lie `{text}`: unknown family `{fam}`"))),
    };
    let n: usize = n.parse().map_err(|_| usage(format!("--lie `{text}`: bad dimension")))?;
    build_lie(family, n).map_err(|e| usage(e.to_string()))
}

fn dispatch(cli: &Cli, out: &mut Outcome) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Normalize { expr } => {
            let cfg = config(cli)?;
            for w in cfg.warnings() {
                out.stderr.push_str(&format!("warning: {w}\n"));
            }
            let f = evaluate(expr, &cfg)?;
            emit(out, cli, f.to_text(), morphism_json(&f));
            Ok(true)
        }
        Command::CountBasis { m, s } => {
            let cfg = config(cli)?;
            let n = count_basis(&cfg, *m, *s, cli.depth)?;
            emit(out, cli, n.to_string(), json!({"count": n}));
            Ok(true)
        }
        Command::VerifyNw { r } => {
            let cfg = config(cli)?;
            let report = verify_nw_relations(*r, &Engine::new(cfg)).map_err(|e| usage(e.to_string()))?;
            let results: Vec<Value> = report
                .results
                .iter()
                .map(|r| json!({"relation": r.label, "holds": r.holds, "variant": r.variant, "difference": r.difference}))
                .collect();
            let value = json!({
                "r": report.r,
                "config": report.config,
                "results": results,
                "swapped_triple_forms": report.swapped_triple_forms(),
                "standard_triple_forms": report.standard_triple_forms(),
                "passed": report.passed(),
            });
            emit(out, cli, report.to_string(), value);
            Ok(report.passed())
        }
        Command::CheckOmega { omega } => {
            let u = parse_list(cli.u.as_deref().ok_or_else(|| usage("check-omega needs --u"))?, "u")?;
            let depth = cli.depth.unwrap_or_else(|| default_depth(u.len()));
            let seq = match omega {
                Some(text) => OmegaSequence::explicit(parse_list(text, "omega")?),
                None => omega_from_u(&u),
            };
            let series = check_u_admissible_series(&u, &seq, depth);
            let value = json!({
                "u_admissible": series,
                "admissible": check_admissible(&seq, depth),
                "weakly_admissible": check_weakly_admissible(&seq, &u, depth),
                "depth": depth,
            });
            emit(out, cli, format!("u-admissible: {series}"), value);
            Ok(series)
        }
        Command::LieParams { q, c, index } => {
            let l = lie_data(cli)?;
            let q: Vec<u64> = q
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| usage(format!("--q: bad block size `{x}`"))))
                .collect::<anyhow::Result<_>>()?;
            let c = parse_list(c, "c")?;
            let total: u64 = q.iter().sum();
            let kind = match (l.family(), l.dim() % 2) {
                (Family::Sp, _) => LieKind::Sp,
                (Family::So, 0) => LieKind::SoEven,
                _ => LieKind::SoOdd,
            };
            if total as usize != l.rank() {
                return Err(usage(format!("block sizes sum to {total}, but {l} has rank {}", l.rank())));
            }
            let which = match index {
                1 => IndexSet::I1,
                2 => IndexSet::I2,
                _ => return Err(usage("--index must be 1 or 2")),
            };
            let u = lie_parameters(kind, &q, &c, which).map_err(|e| usage(e.to_string()))?;
            let dropped = dropped_lie_parameters(kind, &q, &c, which).map_err(|e| usage(e.to_string()))?;
            let fmt = |v: &[Scalar]| v.iter().map(scalar::format).collect::<Vec<_>>();
            let text = format!("u = [{}]\ndropped = [{}]", fmt(&u).join(", "), fmt(&dropped).join(", "));
            emit(out, cli, text, json!({"u": fmt(&u), "dropped": fmt(&dropped)}));
            Ok(true)
        }
        Command::FunctorCheck { f, g } => {
            let cfg = config(cli)?;
            if !cfg.is_monoidal() {
                return Err(usage(format!("functor-check needs a monoidal category, not {cfg}")));
            }
            let l = lie_data(cli)?;
            let engine = Engine::new(cfg.clone());
            let fm = evaluate(f, &cfg)?;
            let gm = evaluate(g, &cfg)?;
            let report = functor_check(&engine, &fm, &gm, &l).map_err(|e| usage(e.to_string()))?;
            let text = format!("compose: {}\ntensor: {}", report.compose, report.tensor);
            emit(out, cli, text, json!({"compose": report.compose, "tensor": report.tensor}));
            Ok(report.ok())
        }
        Command::MultiplicationTable { r } => {
            let cfg = config(cli)?;
            for w in cfg.warnings() {
                out.stderr.push_str(&format!("warning: {w}\n"));
            }
            let table = multiplication_table(*r, &Engine::new(cfg)).map_err(|e| usage(e.to_string()))?;
            let n = table.len();
            let basis: Vec<Value> = table.basis.iter().map(|d| diagram_json(d, &scalar::int(1))).collect();
            let products: Vec<Vec<Vec<String>>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|k| scalar::format(&table.coefficient(i, j, k))).collect())
                        .collect()
                })
                .collect();
            let text = format!(
                "basis size {n}; {} within the basis",
                if table.closed { "all products close" } else { "some products leave" }
            );
            emit(out, cli, text, json!({"basis": basis, "products": products, "closed": table.closed}));
            Ok(table.closed)
        }
    }
}

fn count_basis(cfg: &CategoryConfig, m: usize, s: usize, depth: Option<usize>) -> anyhow::Result<usize> {
    use brauer::Kind::*;
    let need = || -> anyhow::Result<u32> {
        let d = depth.ok_or_else(|| usage(format!("{cfg} has an infinite basis; pass --depth as a degree cutoff")))?;
        u32::try_from(d).context("--depth is too large")
    };
    let a = cfg.a().map(|a| a as u32);
    let list = match cfg.kind() {
        B => enumerate_nd_basis(m, s, Some(1), true, Some(need()?))?,
        B0 => enumerate_nd_basis(m, s, Some(1), false, None)?,
        AB => enumerate_nd_basis(m, s, None, true, Some(need()?))?,
        AB0 => enumerate_nd_basis(m, s, None, true, Some(need()?))?
            .into_iter()
            .filter(|d| !d.bubbles.contains_key(&0))
            .collect(),
        ABw => enumerate_nd_basis(m, s, None, false, Some(need()?))?,
        CBf => {
            let a = a.expect("cyclotomic level");
            enumerate_nd_basis(m, s, Some(a), true, Some(need()?))?
                .into_iter()
                .filter(|d| d.bubbles.keys().all(|&k| k < a))
                .collect()
        }
        CBfw => enumerate_nd_basis(m, s, Some(a.expect("cyclotomic level")), false, None)?,
    };
    Ok(list.len())
}
