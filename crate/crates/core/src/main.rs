use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use topica::catalog::{check_definition, Catalog};
use topica::dialectic::{run_debate, Verdict};
use topica::document::{ground_fact, parse_fact_text, parse_kb, parse_pattern, Script};
use topica::engine::{self, SaturationOptions};
use topica::{mereology, Error, KnowledgeBase};

#[derive(Parser)]
#[command(
    name = "topica",
    version,
    about = "Check, saturate and debate knowledge bases of predications"
)]
struct Cli {
    /// Also evaluate rules read from corrupt formulas.
    #[arg(long, global = true)]
    enable_dubious: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Print every derived fact with the rule and premises that produced it.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Report violated axioms and catalog constraints.
    Check { kb: PathBuf },
    /// Close the knowledge base under the axioms and the catalog.
    Saturate {
        kb: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// List facts matching a pattern such as `genus ? animal`.
    Query {
        kb: PathBuf,
        #[arg(required = true, num_args = 1..)]
        pattern: Vec<String>,
    },
    /// Hypothesize a fact and look for a contradiction.
    Refute {
        kb: PathBuf,
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        fact: Vec<String>,
    },
    /// Check whether `y` defines `x` by proximate genus and difference.
    Defcheck { kb: PathBuf, x: String, y: String },
    /// Print everything necessarily predicated by `x`.
    Extension { kb: PathBuf, x: String },
    /// Inspect the built-in rule catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run a debate script.
    Debate { script: PathBuf },
    /// Report pairs that belong both to a sum and to its contrary.
    Paradox { kb: PathBuf },
    /// Evaluate membership of a pair in a term, with the expansion used.
    Pairnec { kb: PathBuf, pair: String, y: String },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("{}: {e}", path.display()),
    })
}

fn load(path: &Path) -> Result<KnowledgeBase, Error> {
    parse_kb(&read(path)?)
}

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

macro_rules! outp {
    ($out:expr, $($arg:tt)*) => {
        $out.push_str(&format!($($arg)*))
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, out: &mut String) -> Result<u8, Error> {
    let catalog = Catalog::builtin();
    let opts = SaturationOptions {
        enable_dubious: cli.enable_dubious,
        ..Default::default()
    };
    let records = cli.format == Format::Records;
    match &cli.command {
        Command::Check { kb } => {
            let kb = load(kb)?;
            let (sat, violations) = engine::check_all(&kb, &catalog, &opts)?;
            if cli.trace {
                for l in &sat.trace {
                    outln!(out, "{}", engine::trace_line(&sat.kb, l));
                }
            }
            for v in &violations {
                if records {
                    outln!(out, "{}", v.record(&sat.kb));
                } else {
                    outln!(out, "{}", v.human(&sat.kb));
                }
            }
            if !records {
                if violations.is_empty() {
                    outln!(out, "consistent");
                } else {
                    outln!(out, "{} violation(s)", violations.len());
                }
            }
            Ok(u8::from(!violations.is_empty()))
        }
        Command::Saturate { kb, out: dest } => {
            let kb = load(kb)?;
            let sat = engine::saturate(&kb, &catalog, &opts)?;
            let mut text = String::new();
            if cli.trace {
                for l in &sat.trace {
                    text.push_str(&engine::trace_line(&sat.kb, l));
                    text.push('\n');
                }
            }
            if records {
                text.push_str(&engine::render_records(&sat.kb));
            } else {
                let mut lines: Vec<String> = sat.kb.facts.iter().map(|(l, _)| sat.kb.render_lit(l)).collect();
                lines.sort();
                for l in lines {
                    text.push_str(&l);
                    text.push('\n');
                }
                text.push_str(&format!("{} facts, {} derived\n", sat.kb.facts.len(), sat.trace.len()));
            }
            match dest {
                Some(p) => fs::write(p, text).map_err(|e| Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("{}: {e}", p.display()),
                })?,
                None => outp!(out, "{text}"),
            }
            Ok(0)
        }
        Command::Query { kb, pattern } => {
            let kb = load(kb)?;
            let sat = engine::saturate(&kb, &catalog, &opts)?;
            let pat = parse_pattern(&sat.kb, &pattern.join(" "))?;
            let mut lines: Vec<String> = sat
                .kb
                .holds(&pat)
                .iter()
                .map(|f| {
                    if records {
                        sat.kb.render_fact_line(&f.lit)
                    } else {
                        sat.kb.render_lit(&f.lit)
                    }
                })
                .collect();
            lines.sort();
            for l in lines {
                outln!(out, "{l}");
            }
            Ok(0)
        }
        Command::Refute { kb, fact } => {
            let mut kb = load(kb)?;
            let line = parse_fact_text(&fact.join(" "))?;
            let goal = ground_fact(&mut kb, &line)?;
            match engine::refute(&kb, &catalog, &opts, &goal)? {
                Some(r) => {
                    let (sat, _) = engine::hypothesize(&kb, &catalog, &opts, &goal)?;
                    if records {
                        outln!(out, "refuted {}", sat.kb.render_fact_line(&r.hypothesis));
                        outln!(out, "conflict {}", sat.kb.render_fact_line(&r.atom));
                        for d in [&r.positive, &r.negative] {
                            outln!(
                                out,
                                "side {} by {}",
                                sat.kb.render_fact_line(&d.fact),
                                if d.root_rule().is_empty() {
                                    "leaf"
                                } else {
                                    d.root_rule()
                                }
                            );
                        }
                    } else {
                        outp!(out, "{}", r.render(&sat.kb));
                    }
                    Ok(1)
                }
                None => {
                    outln!(out, "no contradiction");
                    Ok(0)
                }
            }
        }
        Command::Defcheck { kb, x, y } => {
            let kb = load(kb)?;
            let sat = engine::saturate(&kb, &catalog, &opts)?;
            let (xi, yi) = (sat.kb.expr(x)?, sat.kb.expr(y)?);
            match check_definition(&sat.kb, xi, yi) {
                Some(w) => outln!(
                    out,
                    "true genus={} difference={}",
                    sat.kb.render_value(w.genus.into()),
                    sat.kb.render_value(w.difference.into())
                ),
                None => outln!(out, "false"),
            }
            Ok(0)
        }
        Command::Extension { kb, x } => {
            let kb = load(kb)?;
            let sat = engine::saturate(&kb, &catalog, &opts)?;
            let xi = sat.kb.expr(x)?;
            let mut names: Vec<String> = sat
                .kb
                .extension_of(xi)
                .into_iter()
                .map(|e| sat.kb.render_value(e.into()))
                .collect();
            names.sort();
            for n in names {
                outln!(out, "{n}");
            }
            Ok(0)
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            outp!(out, "{}", catalog.listing());
            Ok(0)
        }
        Command::Debate { script } => {
            let script = Script::parse(&read(script)?)?;
            let t = run_debate(&script, &catalog, &opts)?;
            if records {
                outp!(out, "{}", t.records());
            } else {
                outp!(out, "{}", t.render());
            }
            Ok(u8::from(t.verdict == Verdict::ThesisRefuted))
        }
        Command::Paradox { kb } => {
            let kb = load(kb)?;
            let sat = engine::saturate(&kb, &catalog, &opts)?;
            let mut kb = sat.kb;
            let found = mereology::paradoxes(&mut kb)?;
            for p in &found {
                outln!(
                    out,
                    "paradox: {} in {} and in its contrary {}",
                    kb.render_value(p.pair.into()),
                    kb.render_value(p.sum.into()),
                    kb.render_value(p.contrary.into())
                );
                outp!(out, "{}{}", p.direct.render(), p.opposite.render());
                outln!(
                    out,
                    "so {} is both {} and {}",
                    kb.render_value(p.pair.into()),
                    kb.render_value(p.sum.into()),
                    kb.render_value(p.contrary.into())
                );
            }
            if found.is_empty() {
                outln!(out, "no paradox");
            }
            Ok(0)
        }
        Command::Pairnec { kb, pair, y } => {
            let mut kb = load(kb)?;
            let p = kb.expr(pair)?;
            let yi = match y.strip_suffix('°') {
                Some(base) => {
                    let b = kb.expr(base)?;
                    mereology::contrary_of(&mut kb, b)?
                }
                None => kb.expr(y)?,
            };
            let r = mereology::pair_nec(&kb, p, yi)?;
            outp!(out, "{}", r.render());
            outln!(out, "{}", r.holds);
            Ok(0)
        }
    }
}
