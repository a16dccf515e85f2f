//! Command-line front end: group info, tower reports, torsion invariants,
//! weak-homomorphism enumeration/verification/construction, fusion checks,
//! the worked-case verifications, and the full acceptance matrix.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use endotriv::catalog::GroupSpec;
use endotriv::error::{Error, Result};
use endotriv::group::GroupHandle;
use endotriv::kgroup;
use endotriv::report::{self, OutputFormat, RunConfig};
use endotriv::subgroup::{normalizer, sylow_subgroup};
use endotriv::tower::build_tower_from_sylow;
use endotriv::weakhom::{self, CharacterTable, WeakHom};

#[derive(Parser)]
#[command(
    name = "endotriv",
    about = "Torsion invariants of endotrivial module classes over finite groups",
    version
)]
struct Cli {
    /// Output format: json or text
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// RNG seed for sampled verification, echoed in every report
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest group order that is fully enumerated
    #[arg(long, global = true, default_value_t = 1_000_000)]
    enumeration_bound: u64,
    /// Largest group order that still gets the exhaustive pair check
    #[arg(long, global = true, default_value_t = 10_000)]
    pair_bound: u64,
    /// Number of sampled pairs above the exhaustive bound
    #[arg(long, global = true, default_value_t = 1_000_000)]
    samples: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArg {
    /// Group specifier: sym:n, alt:n, psl2:q, psl3:q, sl2:q, sl3:q, file:path
    group: String,
}

#[derive(Subcommand)]
enum Command {
    /// Order, optional Sylow shape and normalizer of a group
    Info {
        #[command(flatten)]
        group: GroupArg,
        /// Prime for the Sylow data
        #[arg(short = 'p', long)]
        prime: Option<u64>,
    },
    /// The full tower of local subgroups at the Sylow p-subgroup
    Rho {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'p', long)]
        prime: u64,
    },
    /// Torsion invariants of the group of endotrivial module classes
    Kgroup {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'p', long)]
        prime: u64,
        /// Use the cyclic-Sylow shortcut instead of the main route
        #[arg(long)]
        cyclic: bool,
    },
    /// Enumerate, verify, or construct weak homomorphisms
    Weakhom {
        #[command(subcommand)]
        action: WeakhomAction,
    },
    /// Fusion-control and Frattini-condition checks
    Fusion {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'p', long)]
        prime: u64,
    },
    /// Worked-case verification for PSL(3,q) at p = 3
    Section8 {
        /// Field order q (4 or 7 modulo 9)
        q: u64,
    },
    /// Run the acceptance suite and print a pass/fail matrix
    VerifyPaper {
        /// Optional generator file for the degree-11 sporadic check
        #[arg(long)]
        m11: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum WeakhomAction {
    /// All weak homomorphisms of a group at a prime
    Enumerate {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'p', long)]
        prime: u64,
    },
    /// Verify an ingested table against the axioms
    Verify {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'p', long)]
        prime: u64,
        /// JSON file with {"modulus": m, "values": [[cycles, residue], ...]}
        #[arg(long)]
        table: PathBuf,
    },
    /// Construct the weak homomorphism extending a character of N_G(S)
    Construct {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'p', long)]
        prime: u64,
        /// JSON file with the character of N_G(S), same shape as a table
        #[arg(long)]
        character: PathBuf,
    },
}

fn build_group(spec_text: &str, config: &RunConfig) -> Result<(GroupSpec, Arc<GroupHandle>)> {
    let spec = GroupSpec::parse(spec_text)?;
    let group = spec.build(config.enumeration_bound)?;
    Ok((spec, group))
}

fn run(cli: Cli) -> Result<bool> {
    let format = match cli.format.as_str() {
        "json" => OutputFormat::Json,
        "text" => OutputFormat::Text,
        other => return Err(Error::Parse(format!("unknown format {:?}", other))),
    };
    if cli.enumeration_bound == 0 || cli.pair_bound == 0 || cli.samples == 0 {
        return Err(Error::Parse(
            "bounds and sample counts must be positive".into(),
        ));
    }
    let config = RunConfig {
        enumeration_bound: cli.enumeration_bound,
        exhaustive_pair_bound: cli.pair_bound,
        sample_count: cli.samples,
        rng_seed: cli.seed,
        output_format: format,
    };
    match cli.command {
        Command::Info { group, prime } => {
            let (spec, g) = build_group(&group.group, &config)?;
            let value = match prime {
                None => report::info_report(&config, &spec.describe(), &g, None),
                Some(p) => {
                    report::validate_prime(p)?;
                    let s = sylow_subgroup(&g, p)?;
                    let n = normalizer(&s)?;
                    report::info_report(&config, &spec.describe(), &g, Some((p, &s, &n)))
                }
            };
            print!("{}", report::render(&config, &value));
            Ok(true)
        }
        Command::Rho { group, prime } => {
            report::validate_prime(prime)?;
            let (spec, g) = build_group(&group.group, &config)?;
            let s = sylow_subgroup(&g, prime)?;
            let tower = build_tower_from_sylow(&s, prime)?;
            let value = report::tower_report(&config, &spec.describe(), &tower, g.order());
            print!("{}", report::render(&config, &value));
            Ok(true)
        }
        Command::Kgroup {
            group,
            prime,
            cyclic,
        } => {
            report::validate_prime(prime)?;
            let (spec, g) = build_group(&group.group, &config)?;
            let rep = if cyclic {
                kgroup::k_group_cyclic(&g, prime)?
            } else {
                kgroup::k_group(&g, prime)?
            };
            let value = report::kgroup_report(&config, &spec.describe(), &rep);
            print!("{}", report::render(&config, &value));
            Ok(true)
        }
        Command::Weakhom { action } => match action {
            WeakhomAction::Enumerate { group, prime } => {
                report::validate_prime(prime)?;
                let (spec, g) = build_group(&group.group, &config)?;
                let s = sylow_subgroup(&g, prime)?;
                let ag = weakhom::enumerate_a_group(&g, &s, &config.verify_settings())?;
                let value = report::agroup_report(&config, &spec.describe(), &ag);
                print!("{}", report::render(&config, &value));
                Ok(ag.all_verified())
            }
            WeakhomAction::Verify {
                group,
                prime,
                table,
            } => {
                report::validate_prime(prime)?;
                let (spec, g) = build_group(&group.group, &config)?;
                let s = sylow_subgroup(&g, prime)?;
                let text = std::fs::read_to_string(&table)?;
                let value: serde_json::Value = serde_json::from_str(&text)?;
                let wh = WeakHom::from_json(&value, g.degree())?;
                let mode = config.verify_settings().mode_for(g.order());
                let rep = weakhom::verify_weakhom(&g, &s, &wh, mode)?;
                let value = report::verify_table_report(&config, &spec.describe(), &rep);
                print!("{}", report::render(&config, &value));
                Ok(rep.passed)
            }
            WeakhomAction::Construct {
                group,
                prime,
                character,
            } => {
                report::validate_prime(prime)?;
                let (spec, g) = build_group(&group.group, &config)?;
                let s = sylow_subgroup(&g, prime)?;
                let text = std::fs::read_to_string(&character)?;
                let value: serde_json::Value = serde_json::from_str(&text)?;
                let raw = WeakHom::from_json(&value, g.degree())?;
                let chi = CharacterTable {
                    modulus: raw.modulus,
                    values: raw.values,
                };
                let theta = weakhom::theta_from_chi(&g, &s, &chi)?;
                let value = report::weakhom_table_report(&config, &spec.describe(), &theta);
                print!("{}", report::render(&config, &value));
                Ok(true)
            }
        },
        Command::Fusion { group, prime } => {
            report::validate_prime(prime)?;
            let (spec, g) = build_group(&group.group, &config)?;
            let fusion = kgroup::controls_fusion(&g, prime)?;
            let frattini = kgroup::frattini_condition(&g, prime)?;
            let value = report::fusion_report(&config, &spec.describe(), prime, &fusion, &frattini);
            print!("{}", report::render(&config, &value));
            Ok(true)
        }
        Command::Section8 { q } => {
            let rep = endotriv::psl::verify_rank_two_case(q, config.enumeration_bound)?;
            let all = rep.all_passed;
            let value = report::rank_two_report(&config, &rep);
            print!("{}", report::render(&config, &value));
            Ok(all)
        }
        Command::VerifyPaper { m11 } => {
            let results = endotriv::acceptance::run_all(&config, m11.as_deref());
            let all = results.iter().filter(|r| r.gating).all(|r| r.passed);
            match config.output_format {
                OutputFormat::Json => {
                    let value = serde_json::json!({
                        "schema": report::SCHEMA_VERSION,
                        "seed": config.rng_seed,
                        "criteria": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                        "all_passed": all,
                    });
                    print!("{}", report::render(&config, &value));
                }
                OutputFormat::Text => {
                    for r in &results {
                        println!("{}", r.line());
                    }
                    println!("overall: {}", if all { "PASS" } else { "FAIL" });
                }
            }
            Ok(all)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
