//! Scenario runner behind the `moduli-audit` binary.

pub mod ops;
pub mod report;
pub mod scenario;

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use moduli_audit::enumerate::{enumerate_with_heights, ClassQuery, Execution};
use moduli_audit::fixtures;
use moduli_audit::dimension::Registry;

/// A problem with the scenario or the command line (exit status 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "moduli-audit", version, about = "Exact audit of lattice, surface and moduli-space computations")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value = "human")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check in a scenario file (or a bundled scenario by name).
    Run { scenario: String },
    /// List classes of a given square in a height range.
    Enumerate {
        #[arg(long)]
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        self_int: i64,
        /// Height class as comma-separated coordinates, e.g. 1,0,0.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        height: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        height_max: i64,
        #[arg(long)]
        parallel: bool,
    },
    /// Show formula, inputs, anchor and assumptions for one check.
    Explain {
        check_id: String,
        #[arg(long, default_value = "paper16")]
        scenario: String,
    },
    /// List bundled lattices, surfaces, registry entries and scenarios.
    ListFixtures,
}

/// Captured result of one command.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn input_error(e: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: 2 }
    }
}

pub fn load_scenario(spec: &str) -> Result<scenario::Scenario, InputError> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{spec}: {e}")))?;
        return scenario::parse(&text, spec);
    }
    match scenario::bundled(spec) {
        Some(text) => scenario::parse(text, spec),
        None => Err(InputError(format!("{spec}: no such file or bundled scenario"))),
    }
}

pub const EXPLAIN_USAGE: &str =
    "usage: moduli-audit explain <CHECK_ID> [--scenario <FILE|NAME>]\n  CHECK_ID is lowercase letters, digits and '-', e.g. gamma-delta0\n";

fn valid_check_id(id: &str) -> bool {
    !id.is_empty()
        && !id.starts_with('-')
        && id.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-')
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Run { scenario } => {
            let sc = match load_scenario(scenario) {
                Ok(sc) => sc,
                Err(e) => return Outcome::input_error(e),
            };
            match report::run_scenario(&sc) {
                Ok((rep, _)) => Outcome {
                    stdout: match cli.format {
                        Format::Human => rep.human(),
                        Format::Machine => rep.machine(),
                    },
                    stderr: String::new(),
                    code: rep.exit_status,
                },
                Err(e) => Outcome::input_error(e),
            }
        }
        Command::Enumerate { lattice, self_int, height, height_max, parallel } => {
            let Some(l) = fixtures::lattice_by_id(lattice) else {
                return Outcome::input_error(format!(
                    "unknown lattice {lattice:?} (known: {})",
                    fixtures::LATTICE_IDS.join(", ")
                ));
            };
            let q = ClassQuery::new(*self_int, height.clone(), *height_max);
            let exec = if *parallel { Execution::Parallel } else { Execution::Serial };
            let found = match enumerate_with_heights(&l, &q, exec) {
                Ok(f) => f,
                Err(e) => return Outcome::input_error(e),
            };
            Outcome::ok(match cli.format {
                Format::Machine => {
                    let classes: Vec<_> =
                        found.iter().map(|h| serde_json::json!({"class": h.class.coords, "height": h.height})).collect();
                    serde_json::to_string_pretty(&serde_json::json!({
                        "lattice": lattice,
                        "self_int": self_int,
                        "height_class": height,
                        "height_max": height_max,
                        "classes": classes,
                        "certificate": "bound-limited",
                    }))
                    .unwrap()
                        + "\n"
                }
                Format::Human => {
                    let mut s = format!(
                        "lattice {lattice}  c² = {self_int}  height class {:?}  1 ≤ height ≤ {height_max}\n",
                        height
                    );
                    let rows: Vec<(String, i64)> = found.iter().map(|h| (h.class.to_string(), h.height)).collect();
                    let w = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0).max(5);
                    s.push_str(&format!("{:<w$}  height\n", "class"));
                    for (c, h) in &rows {
                        s.push_str(&format!("{:<w$}  {h}\n", c));
                    }
                    s.push_str(&format!("{} classes [bound-limited: heights above {height_max} not searched]\n", rows.len()));
                    s
                }
            })
        }
        Command::Explain { check_id, scenario } => {
            if !valid_check_id(check_id) {
                return Outcome { stdout: String::new(), stderr: EXPLAIN_USAGE.to_string(), code: 2 };
            }
            let sc = match load_scenario(scenario) {
                Ok(sc) => sc,
                Err(e) => return Outcome::input_error(e),
            };
            let (_, explanations) = match report::run_scenario(&sc) {
                Ok(r) => r,
                Err(e) => return Outcome::input_error(e),
            };
            match explanations.iter().find(|e| &e.id == check_id) {
                Some(e) => Outcome::ok(match cli.format {
                    Format::Human => e.human(),
                    Format::Machine => serde_json::to_string_pretty(e).unwrap() + "\n",
                }),
                None => Outcome::input_error(format!("no check {check_id:?} in scenario {scenario}")),
            }
        }
        Command::ListFixtures => {
            let reg = Registry::bundled();
            let mut s = String::from("lattices:\n");
            for id in fixtures::LATTICE_IDS {
                let l = fixtures::lattice_by_id(id).unwrap();
                s.push_str(&format!("  {id}  basis {}  gram {:?}\n", l.basis().join(","), l.gram()));
            }
            s.push_str("surfaces:\n");
            for id in fixtures::SURFACE_IDS {
                let x = fixtures::surface_by_id(id).unwrap();
                s.push_str(&format!("  {id}  χ={} q={} pg={} K²={} c₂={}\n", x.chi, x.q, x.pg, x.k2, x.c2));
            }
            s.push_str("registry loci:\n");
            for l in &reg.loci {
                s.push_str(&format!("  {}  dim {}\n", l.name, l.declared_dim));
            }
            s.push_str("registry divisors:\n");
            for d in &reg.divisors {
                s.push_str(&format!("  {}  g={} a={} b0={}\n", d.name, d.g, d.a, d.b0));
            }
            s.push_str("scenarios:\n");
            for (name, _) in scenario::BUNDLED {
                s.push_str(&format!("  {name}\n"));
            }
            s.push_str("operations:\n");
            for (name, about) in ops::OPS {
                s.push_str(&format!("  {name}  {about}\n"));
            }
            Outcome::ok(s)
        }
    }
}
