use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use crlab_core::chevalley::{collect, normalize, parse_word, render_word};
use crlab_core::paperlab::{run_all, run_scenario, RunConfig, DEFAULT_SEED, SCENARIOS};
use crlab_core::parabolic::{rparabolic, RParabolicData};
use crlab_core::{Registry, Root, RootSystem};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "crlab",
    version,
    about = "Symbolic checks in characteristic-2 Chevalley groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run one named scenario, or all of them.
    Verify {
        scenario: Option<String>,
        #[arg(long, conflicts_with = "scenario")]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Field size for the brute-force conjugacy enumeration (2, 4 or 16).
        #[arg(long, default_value_t = 4)]
        q: u32,
    },
    /// Normalize a word; with --order, collect its root part in that order.
    Collect {
        word: String,
        #[arg(long, default_value = "d4")]
        system: String,
        /// Comma-separated labels or root expressions.
        #[arg(long)]
        order: Option<String>,
    },
    /// The pairing ⟨root, cochar⟩.
    Pairing {
        root: String,
        cochar: String,
        #[arg(long, default_value = "d4")]
        system: String,
    },
    /// Roots of P_λ, L_λ and R_u(P_λ) for a cocharacter λ.
    Rparabolic {
        cochar: String,
        #[arg(long, default_value = "d4")]
        system: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            scenario,
            all,
            seed,
            format,
            q,
        } => verify(scenario, all, RunConfig { seed, q }, format),
        Command::Collect {
            word,
            system,
            order,
        } => collect_cmd(&word, &system, order.as_deref()),
        Command::Pairing {
            root,
            cochar,
            system,
        } => {
            let rs = RootSystem::from_name(&system)?;
            let r = rs.parse_root(&root)?;
            let chi = rs.parse_cochar(&cochar)?;
            println!("{}", rs.pairing(r, &chi));
            Ok(true)
        }
        Command::Rparabolic {
            cochar,
            system,
            format,
        } => {
            let rs = RootSystem::from_name(&system)?;
            let chi = rs.parse_cochar(&cochar)?;
            print_rparabolic(&rs, &rparabolic(&rs, &chi), format);
            Ok(true)
        }
    }
}

fn verify(scenario: Option<String>, all: bool, config: RunConfig, format: Format) -> Result<bool> {
    let reports = match (scenario, all) {
        (_, true) => run_all(&config)?,
        (Some(name), false) => vec![run_scenario(&name, &config)?],
        (None, false) => bail!(
            "name a scenario or pass --all; registered: {}",
            SCENARIOS.join(", ")
        ),
    };
    match format {
        Format::Text => {
            for r in &reports {
                print!("{}", r.render_text());
            }
        }
        Format::Json => {
            let text = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])?
            } else {
                serde_json::to_string_pretty(&reports)?
            };
            println!("{text}");
        }
    }
    Ok(reports.iter().all(|r| r.pass))
}

fn parse_order(rs: &RootSystem, text: &str) -> Result<Vec<Root>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            rs.parse_root(s)
                .with_context(|| format!("in --order entry `{}`", s.trim()))
        })
        .collect()
}

fn collect_cmd(text: &str, system: &str, order: Option<&str>) -> Result<bool> {
    let rs = RootSystem::from_name(system)?;
    let mut reg = Registry::standard();
    let word = parse_word(&rs, &mut reg, text)?;
    let element = normalize(&rs, &word)?;
    match order {
        None => println!("{}", element.render(&rs, &reg)),
        Some(order) => {
            let order = parse_order(&rs, order)?;
            let tail = collect(&rs, &element.tail_letters(), &order)?;
            let head = render_word(&rs, &reg, &crlab_core::Word(element.frame_letters.clone()));
            let body = tail.render_full(&rs, &reg);
            if element.frame_letters.is_empty() {
                println!("{body}");
            } else {
                println!("{head} | {body}");
            }
        }
    }
    Ok(true)
}

fn print_rparabolic(rs: &RootSystem, data: &RParabolicData, format: Format) {
    let labels = |roots: &[Root]| RParabolicData::labels(rs, roots);
    match format {
        Format::Text => {
            let show = |roots: &[Root]| {
                labels(roots)
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            println!("lambda: {}", rs.render_vec(&data.lambda.0));
            println!("p: {}", show(&data.p_roots));
            println!("l: {}", show(&data.l_roots));
            println!("u: {}", show(&data.u_roots));
            let simples: Vec<String> = data
                .levi_simple_roots(rs)
                .iter()
                .map(|&r| rs.render_root(r))
                .collect();
            println!("levi simple roots: {}", simples.join(", "));
            println!("sigma powers fixing lambda: {:?}", data.sigma_components);
        }
        Format::Json => {
            let value = json!({
                "lambda": data.lambda.0,
                "p": labels(&data.p_roots),
                "l": labels(&data.l_roots),
                "u": labels(&data.u_roots),
                "sigma_components": data.sigma_components,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("json value")
            );
        }
    }
}
