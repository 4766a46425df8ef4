//! The `superflag` command line. Sizes and flag data are passed as
//! `key=value` tokens (`m=2 n=1`, `k=3,1 l=2,1 I1=2;2`, `k1=2 l1=1 tail=1,0`).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::flag::{self, FlagType, IndexSets, PatternReading, PolyMatrix};
use crate::matrix::{BlockShape, NumMatrix};
use crate::osp::{self, Flavor};
use crate::report::SuiteReport;
use crate::ring::{Parity, RingContext};
use crate::suites::{self, Config};
use crate::weights;

#[derive(Debug, Parser)]
#[command(
    name = "superflag",
    version,
    about = "Exact checks for orthosymplectic Lie superalgebras and flag supermanifolds"
)]
pub struct Cli {
    /// Largest k1, l1, m, n accepted by symbolic commands.
    #[arg(long, global = true, env = "SUPERFLAG_MAX_SIZE", default_value_t = suites::DEFAULT_MAX_SIZE)]
    pub max_size: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the canonical basis of osp (m=.. n=..; flavor odd|even|primed).
    OspBasis {
        /// Size tokens, e.g. `m=1 n=1`.
        params: Vec<String>,
        #[arg(long, default_value = "odd")]
        flavor: Flavor,
        /// Print generator matrices, not just tags.
        #[arg(long)]
        matrices: bool,
    },
    /// Test M^ST Γ + Γ M = 0 for a matrix literal (`1, 0; 0, -1`).
    CheckMembership {
        params: Vec<String>,
        #[arg(long, default_value = "odd")]
        flavor: Flavor,
        #[arg(long)]
        matrix: String,
    },
    /// Validate a flag type and index sets and print the chart (k=.. l=.. I1=..).
    FlagValidate {
        params: Vec<String>,
        /// `literal` or `shifted` reading of the constant-function pattern.
        #[arg(long, default_value = "literal")]
        reading: String,
    },
    /// Apply L to a chart: Z1 ↦ L Z1 C1⁻¹, Zs ↦ C(s−1) Zs Cs⁻¹.
    Act {
        params: Vec<String>,
        /// Matrix literal for L, entries may use chart variables and `--vars`.
        #[arg(long)]
        matrix: String,
        /// Extra variables for L, `name:even,name:odd`.
        #[arg(long)]
        vars: Option<String>,
        /// Target index sets, `I1=..;..` tokens separated by spaces.
        #[arg(long)]
        target: Option<String>,
    },
    /// Fundamental vector field of an osp(2k1−1|2l1) element on the isotropic chart.
    FundamentalField {
        /// `k1=.. l1=.. [tail=k2,l2/k3,l3]`.
        params: Vec<String>,
        /// Generator tag such as `G4[1]`, or `all`.
        #[arg(long, conflicts_with = "matrix")]
        generator: Option<String>,
        /// Numeric matrix literal in the standard layout.
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Print the isotropic chart with its dependent coordinates.
    IsotropicChart { params: Vec<String> },
    /// Highest weights of ψ|R with dominance verdicts and the fiber description.
    Bwb {
        /// `k1=.. l1=..` (or use the flags).
        params: Vec<String>,
        #[arg(long)]
        k1: Option<usize>,
        #[arg(long)]
        l1: Option<usize>,
    },
    /// Run verification suites.
    Verify {
        /// TOML configuration.
        #[arg(long, conflicts_with = "suite")]
        config: Option<PathBuf>,
        /// One of osp_defining, lemma_fields, isomorphism, imP_witness, bwb.
        #[arg(long)]
        suite: Option<String>,
        /// First size (m for osp_defining).
        #[arg(long, alias = "m", requires = "suite")]
        k1: Option<usize>,
        /// Second size (n for osp_defining).
        #[arg(long, alias = "n", requires = "suite")]
        l1: Option<usize>,
        /// Write a JSON report (schema superflag-report/1).
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
}

/// Parsed `key=value` tokens.
struct Params(BTreeMap<String, String>);

impl Params {
    fn parse(tokens: &[String], allowed: &[&str]) -> Result<Params> {
        let mut map = BTreeMap::new();
        for t in tokens {
            let (k, v) = t.split_once('=').ok_or_else(|| Error::Config {
                line: None,
                message: format!("expected key=value, got `{t}`"),
            })?;
            let allowed_key =
                allowed.contains(&k) || (allowed.contains(&"I*") && k.starts_with('I'));
            if !allowed_key {
                return Err(Error::Config {
                    line: None,
                    message: format!("unknown parameter `{k}` (expected {})", allowed.join(", ")),
                });
            }
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Config {
                    line: None,
                    message: format!("parameter `{k}` given twice"),
                });
            }
        }
        Ok(Params(map))
    }

    fn usize(&self, key: &str) -> Result<usize> {
        let v = self.0.get(key).ok_or_else(|| Error::Config {
            line: None,
            message: format!("missing `{key}=`"),
        })?;
        v.parse().map_err(|_| Error::Config {
            line: None,
            message: format!("`{key}` must be a non-negative integer"),
        })
    }

    fn list(&self, key: &str) -> Result<Vec<usize>> {
        let v = self.0.get(key).ok_or_else(|| Error::Config {
            line: None,
            message: format!("missing `{key}=`"),
        })?;
        v.split(',')
            .map(|x| {
                x.trim().parse().map_err(|_| Error::Config {
                    line: None,
                    message: format!("bad entry `{x}` in `{key}`"),
                })
            })
            .collect()
    }

    /// `tail=2,1/1,0`.
    fn tail(&self) -> Result<Option<Vec<(usize, usize)>>> {
        let Some(v) = self.0.get("tail") else {
            return Ok(None);
        };
        v.split('/')
            .filter(|s| !s.is_empty())
            .map(|step| {
                match step
                    .split(',')
                    .map(str::trim)
                    .map(str::parse::<usize>)
                    .collect::<Vec<_>>()[..]
                {
                    [Ok(a), Ok(b)] => Ok((a, b)),
                    _ => Err(Error::Config {
                        line: None,
                        message: format!("tail step `{step}` must be `k,l`"),
                    }),
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    fn index_sets(&self, ft: &FlagType) -> Result<IndexSets> {
        if !self.0.keys().any(|k| k.starts_with('I')) {
            return Ok(IndexSets::first_rows(ft));
        }
        let steps = (1..=ft.r())
            .map(|s| {
                let v = self
                    .0
                    .get(&format!("I{s}"))
                    .ok_or_else(|| Error::InvalidIndexSets(format!("missing `I{s}=`")))?;
                IndexSets::parse_step(v)
            })
            .collect::<Result<Vec<_>>>()?;
        let idx = IndexSets::new(steps)?;
        idx.validate(ft)?;
        Ok(idx)
    }
}

fn cap(max: usize, values: &[(&str, usize)]) -> Result<()> {
    for (name, v) in values {
        if *v > max {
            return Err(Error::InvalidSize(format!(
                "{name} = {v} exceeds the size bound {max} (SUPERFLAG_MAX_SIZE)"
            )));
        }
    }
    Ok(())
}

fn flag_type(p: &Params, max: usize) -> Result<FlagType> {
    let ft = FlagType::new(p.list("k")?, p.list("l")?)?;
    // flags of osp(2k1−1|2l1) with k1, l1 ≤ max
    cap(2 * max + 1, &[("m", ft.m()), ("n", ft.n())])?;
    Ok(ft)
}

fn numeric(text: &str, shape: &BlockShape) -> Result<NumMatrix> {
    let m = PolyMatrix::parse(text, shape.clone(), shape.clone(), None)?;
    m.try_map(|e| {
        if e.is_constant() {
            Ok(e.constant_term())
        } else {
            Err(Error::parse(1, "expected numeric entries"))
        }
    })
}

fn extra_vars(ctx: &Arc<RingContext>, spec: Option<&str>) -> Result<Arc<RingContext>> {
    let Some(spec) = spec else {
        return Ok(ctx.clone());
    };
    let vars = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| match s.trim().split_once(':') {
            Some((n, "even")) => Ok((n.to_string(), Parity::Even)),
            Some((n, "odd")) => Ok((n.to_string(), Parity::Odd)),
            _ => Err(Error::Config {
                line: None,
                message: format!("variable `{s}` must be `name:even` or `name:odd`"),
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    ctx.extend(&vars)
}

/// Outcome of a command: text for stdout and whether checks passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let max = cli.max_size;
    match cli.command {
        Command::OspBasis {
            params,
            flavor,
            matrices,
        } => {
            let p = Params::parse(&params, &["m", "n"])?;
            let (m, n) = (p.usize("m")?, p.usize("n")?);
            cap(max, &[("m", m), ("n", n)])?;
            let b = osp::basis(flavor, m, n)?;
            let mut out = format!(
                "osp basis, {flavor} flavor, ({m}, {n}): {} even + {} odd\nGamma = [{}]\n",
                b.count(Parity::Even),
                b.count(Parity::Odd),
                b.gram()
                    .expect("osp basis has a Gram form")
                    .matrix()
                    .to_literal()
            );
            for g in b.generators() {
                if matrices {
                    out.push_str(&format!(
                        "{} ({}): [{}]\n",
                        g.tag,
                        g.parity(),
                        g.matrix.to_literal()
                    ));
                } else {
                    out.push_str(&format!("{} ({})\n", g.tag, g.parity()));
                }
            }
            Ok(Outcome::ok(out))
        }
        Command::CheckMembership {
            params,
            flavor,
            matrix,
        } => {
            let p = Params::parse(&params, &["m", "n"])?;
            let (m, n) = (p.usize("m")?, p.usize("n")?);
            cap(max, &[("m", m), ("n", n)])?;
            let gram = osp::gram_form(flavor, m, n)?;
            let x = numeric(&matrix, gram.shape())?;
            let member = osp::is_member(&x, &gram)?;
            let parity = x
                .parity()
                .map_or("inhomogeneous".to_string(), |p| p.to_string());
            Ok(Outcome {
                text: format!("member: {member} ({parity})\n"),
                ok: member,
            })
        }
        Command::FlagValidate { params, reading } => {
            let p = Params::parse(&params, &["k", "l", "I*"])?;
            let ft = flag_type(&p, max)?;
            let idx = p.index_sets(&ft)?;
            let reading = match reading.as_str() {
                "literal" => PatternReading::Literal,
                "shifted" => PatternReading::Shifted,
                other => {
                    return Err(Error::Config {
                        line: None,
                        message: format!("unknown reading `{other}`"),
                    })
                }
            };
            let chart = flag::build_chart(&ft, &idx)?;
            let (e, o) = ft.dimension();
            let constant = flag::constant_functions_predicate(&ft, reading);
            Ok(Outcome::ok(format!(
                "{ft} valid\nindex sets: {idx}\ndimension: {e}|{o}\nO(M0) = C: {constant}\n{}\n",
                chart.render()
            )))
        }
        Command::Act {
            params,
            matrix,
            vars,
            target,
        } => {
            let p = Params::parse(&params, &["k", "l", "I*"])?;
            let ft = flag_type(&p, max)?;
            let chart = flag::build_chart(&ft, &p.index_sets(&ft)?)?;
            let ctx = extra_vars(chart.context(), vars.as_deref())?;
            let shape = BlockShape::new(ft.m(), ft.n());
            let l = PolyMatrix::parse(&matrix, shape.clone(), shape, Some(&ctx))?;
            let target = match target {
                Some(t) => {
                    let tokens: Vec<String> = t.split_whitespace().map(str::to_string).collect();
                    Some(Params::parse(&tokens, &["I*"])?.index_sets(&ft)?)
                }
                None => None,
            };
            let moved = flag::act(&l, &chart.rebind(&ctx)?, target.as_ref())?;
            Ok(Outcome::ok(format!("{}\n", moved.render())))
        }
        Command::FundamentalField {
            params,
            generator,
            matrix,
        } => {
            let p = Params::parse(&params, &["k1", "l1", "tail"])?;
            let (k1, l1) = (p.usize("k1")?, p.usize("l1")?);
            cap(max, &[("k1", k1), ("l1", l1)])?;
            let tail = p.tail()?.unwrap_or_else(|| suites::default_tail(k1, l1));
            let ic = flag::isotropic_chart(k1, l1, &tail)?;
            let b = osp::basis(Flavor::Odd, k1 - 1, l1)?;
            let chosen: Vec<(String, NumMatrix)> = match (generator.as_deref(), matrix) {
                (_, Some(text)) => vec![("X".to_string(), numeric(&text, b.shape())?)],
                (None | Some("all"), None) => b
                    .generators()
                    .iter()
                    .map(|g| (g.tag.to_string(), g.matrix.clone()))
                    .collect(),
                (Some(tag), None) => {
                    let g = b
                        .generators()
                        .iter()
                        .find(|g| g.tag.to_string() == tag)
                        .ok_or_else(|| Error::Config {
                            line: None,
                            message: format!("no generator `{tag}`"),
                        })?;
                    vec![(tag.to_string(), g.matrix.clone())]
                }
            };
            let mut out = String::new();
            let mut ok = true;
            for (name, x) in chosen {
                let f = flag::fundamental_field(&x, ic.chart())?;
                out.push_str(&format!("{name}: {}\n", f.derivation));
                if !f.tangency_defects.is_empty() {
                    ok = false;
                    out.push_str(&format!(
                        "  not tangent along {}\n",
                        f.tangency_defects.join(", ")
                    ));
                }
            }
            Ok(Outcome { text: out, ok })
        }
        Command::IsotropicChart { params } => {
            let p = Params::parse(&params, &["k1", "l1", "tail"])?;
            let (k1, l1) = (p.usize("k1")?, p.usize("l1")?);
            cap(max, &[("k1", k1), ("l1", l1)])?;
            let tail = p.tail()?.unwrap_or_default();
            let ic = flag::isotropic_chart(k1, l1, &tail)?;
            let mut out = format!("{}\n{}\n", ic.chart().flag(), ic.chart().render());
            for d in ic.chart().dependent() {
                out.push_str(&format!("{} = {}\n", d.name, d.expr));
            }
            let iso = ic.is_isotropic()?;
            out.push_str(&format!("isotropic: {iso}\n"));
            Ok(Outcome { text: out, ok: iso })
        }
        Command::Bwb { params, k1, l1 } => {
            let p = Params::parse(&params, &["k1", "l1"])?;
            let k1 = k1.map_or_else(|| p.usize("k1"), Ok)?;
            let l1 = l1.map_or_else(|| p.usize("l1"), Ok)?;
            if k1 == 0 {
                return Err(Error::InvalidSize("k1 must be at least 1".into()));
            }
            let rs = weights::root_system(k1 - 1, l1);
            let mut out = format!("psi|R highest weights for k1={k1}, l1={l1}:\n");
            for w in weights::psi_highest_weights(k1, l1) {
                match rs.violating_root(&w)? {
                    None => out.push_str(&format!("  {w}: dominant\n")),
                    Some(a) => {
                        out.push_str(&format!("  {w}: not dominant, pairs negatively with {a}\n"))
                    }
                }
            }
            let fiber = weights::w0_fiber_description(k1, l1)?;
            out.push_str(&format!("H0 fiber: {fiber}\n"));
            Ok(Outcome::ok(out))
        }
        Command::Verify {
            config,
            suite,
            k1,
            l1,
            json_out,
        } => {
            let mut cfg = match (&config, &suite) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
                        line: None,
                        message: format!("{}: {e}", path.display()),
                    })?;
                    Config::from_toml(&text)?
                }
                (None, Some(name)) => match (k1, l1) {
                    (Some(a), Some(b)) => Config::single(name, a, b)?,
                    (None, None) => Config {
                        suites: vec![name.clone()],
                        ..Config::default()
                    },
                    _ => {
                        return Err(Error::Config {
                            line: None,
                            message: "give both --k1 and --l1".into(),
                        })
                    }
                },
                (None, None) => Config::default(),
            };
            if config.is_none() {
                cfg.max_size = max;
            }
            let report = suites::run_all(&cfg)?;
            if let Some(path) = json_out {
                write_json(&report, &path)?;
            }
            Ok(Outcome {
                text: format!("{report}\n"),
                ok: report.passed(),
            })
        }
    }
}

fn write_json(report: &SuiteReport, path: &PathBuf) -> Result<()> {
    let text = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
    std::fs::write(path, text + "\n").map_err(|e| Error::Config {
        line: None,
        message: format!("{}: {e}", path.display()),
    })
}

/// Runs the CLI on `args` and returns the exit code: 0 when every check
/// passes, 1 on a verification failure, 2 on usage or configuration errors.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(o) => {
            let _ = std::io::stdout().write_all(o.text.as_bytes());
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
