//! Batch command-line front end. Braid words use the signed-integer
//! grammar everywhere ("1 -2 1"); JSON outputs follow the schemas in
//! the repository's docs/schemas directory.
//!
//! Exit codes: 0 success, 1 domain error, 2 budget exhaustion, 64 usage.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use serde_json::json;

use braidband::braid::BraidWord;
use braidband::error::Error;
use braidband::garside::{word_of_simple, BandKind, NormalForm, DEFAULT_ORBIT_BUDGET};
use braidband::obstruction::PhiInvariant;
use braidband::profile::PLProfile;
use braidband::{
    band_rank_search, build_surface, conjugacy_test, finite_order_writhe_filter, is_band,
    ribbon_obstruction, ribbon_summary, slice_consistency, words_equal, BandPresentation,
    FiniteOrderVerdict, Verdict,
};

#[derive(Parser)]
#[command(name = "braidband", version, about = "Braid band-rank and ribbon-obstruction toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WordArgs {
    /// Strand count.
    #[arg(long)]
    n: usize,
    /// Braid word in signed-integer grammar, e.g. "1 -2 1".
    #[arg(long, allow_hyphen_values = true)]
    word: String,
}

#[derive(Subcommand)]
enum Command {
    /// Left Garside normal form of a word.
    NormalForm {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two words represent the same braid.
    Equal {
        #[command(flatten)]
        word: WordArgs,
        /// Second word, same strand count.
        #[arg(long, allow_hyphen_values = true)]
        word2: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide conjugacy and print a conjugating witness.
    Conjugate {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, allow_hyphen_values = true)]
        word2: String,
        #[arg(long, default_value_t = DEFAULT_ORBIT_BUDGET)]
        orbit_budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Test whether a word is a band (a conjugate of the first generator).
    IsBand {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = DEFAULT_ORBIT_BUDGET)]
        orbit_budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Search for a minimal band presentation within budgets.
    BandSearch {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 8)]
        max_bands: usize,
        #[arg(long, default_value_t = 6)]
        max_conjugator_length: usize,
        #[arg(long)]
        json: bool,
    },
    /// Build the banded surface of a band presentation (JSON file).
    Surface {
        /// Path to a band presentation JSON file.
        #[arg(long)]
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Validate a profile file and report its gap data.
    ProfileCheck {
        /// Path to a profile JSON file.
        #[arg(long)]
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the ribbon obstruction threshold test.
    Obstruct {
        #[command(flatten)]
        word: WordArgs,
        /// Invariant: writhe, abs-writhe, strands-minus-components, profile-gap.
        #[arg(long, default_value = "strands-minus-components")]
        phi: String,
        /// Profile JSON file, required for phi = profile-gap.
        #[arg(long)]
        profile: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Slice-consistency sweep plus the finite-order writhe filter.
    SliceCheck {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value = "abs-writhe")]
        phi: String,
        #[arg(long)]
        profile: Option<String>,
        #[arg(long, default_value_t = 3)]
        q_max: usize,
        #[arg(long)]
        json: bool,
    },
}

fn rat(r: Rational64) -> serde_json::Value {
    json!([*r.numer(), *r.denom()])
}

fn load_profile(path: &str) -> Result<PLProfile, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn resolve_phi(name: &str, profile: Option<&str>) -> Result<PhiInvariant, Error> {
    match name {
        "writhe" => Ok(PhiInvariant::writhe()),
        "abs-writhe" => Ok(PhiInvariant::abs_writhe()),
        "strands-minus-components" => Ok(PhiInvariant::strands_minus_components()),
        "profile-gap" => {
            let path = profile.ok_or_else(|| {
                Error::Precondition("phi = profile-gap needs --profile".into())
            })?;
            Ok(PhiInvariant::profile_gap(&load_profile(path)?))
        }
        other => Err(Error::Parse(format!("unknown invariant \"{other}\""))),
    }
}

fn nf_json(nf: &NormalForm) -> serde_json::Value {
    json!({
        "strands": nf.strands(),
        "infimum": nf.infimum(),
        "canonical_length": nf.canonical_length(),
        "supremum": nf.supremum(),
        "factors": nf.factors().iter().map(|p| word_of_simple(p)).collect::<Vec<_>>(),
        "word": nf.to_word().serialize(),
    })
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::NormalForm { word, json } => {
            let w = BraidWord::parse(&word.word, word.n)?;
            let nf = NormalForm::of(&w);
            if json {
                println!("{}", nf_json(&nf));
            } else {
                let factors: Vec<String> = nf
                    .factors()
                    .iter()
                    .map(|p| {
                        word_of_simple(p)
                            .iter()
                            .map(i32::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                println!("infimum {}", nf.infimum());
                println!("canonical length {}", nf.canonical_length());
                if factors.is_empty() {
                    println!("factors (none)");
                } else {
                    println!("factors [{}]", factors.join(" | "));
                }
                println!("word {}", nf.to_word().serialize());
            }
        }
        Command::Equal { word, word2, json } => {
            let a = BraidWord::parse(&word.word, word.n)?;
            let b = BraidWord::parse(&word2, word.n)?;
            let equal = words_equal(&a, &b)?;
            if json {
                println!("{}", json!({ "equal": equal }));
            } else {
                println!("{}", if equal { "equal" } else { "not equal" });
            }
        }
        Command::Conjugate { word, word2, orbit_budget, json } => {
            let a = BraidWord::parse(&word.word, word.n)?;
            let b = BraidWord::parse(&word2, word.n)?;
            let witness = conjugacy_test(&a, &b, orbit_budget)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "conjugate": witness.is_some(),
                        "witness": witness.as_ref().map(BraidWord::serialize),
                    })
                );
            } else {
                match witness {
                    Some(g) => println!("conjugate, witness {}", g.serialize()),
                    None => println!("not conjugate"),
                }
            }
        }
        Command::IsBand { word, orbit_budget, json } => {
            let w = BraidWord::parse(&word.word, word.n)?;
            let kind = is_band(&w, orbit_budget)?;
            let (label, conj) = match &kind {
                BandKind::Positive(g) => ("positive band", Some(g.serialize())),
                BandKind::Negative(g) => ("negative band", Some(g.serialize())),
                BandKind::NotABand => ("not a band", None),
            };
            if json {
                let kind_str = match kind {
                    BandKind::Positive(_) => "positive",
                    BandKind::Negative(_) => "negative",
                    BandKind::NotABand => "not_a_band",
                };
                println!("{}", json!({ "kind": kind_str, "conjugator": conj }));
            } else {
                match conj {
                    Some(g) => println!("{label}, conjugator {g}"),
                    None => println!("{label}"),
                }
            }
        }
        Command::BandSearch { word, max_bands, max_conjugator_length, json } => {
            let w = BraidWord::parse(&word.word, word.n)?;
            match band_rank_search(&w, max_bands, max_conjugator_length) {
                Some(p) => {
                    if json {
                        println!("{}", serde_json::to_string(&p).expect("serializable"));
                    } else {
                        println!("{} bands", p.band_count());
                        for band in p.bands() {
                            println!(
                                "sign {:+}, conjugator {}",
                                band.sign(),
                                band.conjugator().serialize()
                            );
                        }
                    }
                }
                None => {
                    return Err(Error::BudgetExceeded { budget: max_bands });
                }
            }
        }
        Command::Surface { file, json } => {
            let text =
                fs::read_to_string(&file).map_err(|e| Error::Parse(format!("{file}: {e}")))?;
            let p: BandPresentation =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{file}: {e}")))?;
            let summary = ribbon_summary(&build_surface(&p));
            if json {
                println!("{}", serde_json::to_string(&summary).expect("serializable"));
            } else {
                for b in &summary.bands {
                    let sing: Vec<String> =
                        b.singularities.iter().map(usize::to_string).collect();
                    println!(
                        "band {}: attach ({}, {}), singularities [{}], self-intersections {}",
                        b.index,
                        b.attach[0],
                        b.attach[1],
                        sing.join(", "),
                        b.self_intersections
                    );
                }
                println!("total singularities {}", summary.total_singularities);
                println!("euler characteristic {}", summary.euler_characteristic);
                println!("boundary components {}", summary.boundary_components);
            }
        }
        Command::ProfileCheck { file, json } => {
            let f = load_profile(&file)?;
            let (gap, at) = f.max_gap();
            let endpoint = f.endpoint_max_holds().ok();
            if json {
                println!(
                    "{}",
                    json!({
                        "strands": f.strands(),
                        "max_gap": rat(gap),
                        "argmax": rat(at),
                        "endpoint_max_holds": endpoint,
                    })
                );
            } else {
                println!("valid profile on {} strands", f.strands());
                println!("max gap {gap} at t = {at}");
                match endpoint {
                    Some(true) => println!("maximum attained at an endpoint"),
                    Some(false) => println!("maximum attained in the interior"),
                    None => println!("endpoint theorem not applicable (f(0) != -1)"),
                }
            }
        }
        Command::Obstruct { word, phi, profile, json } => {
            let w = BraidWord::parse(&word.word, word.n)?;
            let inv = resolve_phi(&phi, profile.as_deref())?;
            let verdict = ribbon_obstruction(&inv, &w)?;
            if json {
                println!("{}", serde_json::to_string(&verdict).expect("serializable"));
            } else {
                match verdict.verdict {
                    Verdict::NotRibbon => println!("not ribbon"),
                    Verdict::NoObstruction => println!("no obstruction"),
                }
                println!("phi = {} = {}", verdict.phi, verdict.phi_value);
                println!("threshold n - 1 = {}", verdict.threshold);
                for line in &verdict.evidence {
                    println!("  {line}");
                }
            }
        }
        Command::SliceCheck { word, phi, profile, q_max, json } => {
            let w = BraidWord::parse(&word.word, word.n)?;
            let inv = resolve_phi(&phi, profile.as_deref())?;
            let report = slice_consistency(&inv, &w, q_max)?;
            let filter = finite_order_writhe_filter(&w).ok();
            if json {
                let mut value = serde_json::to_value(&report).expect("serializable");
                value["writhe_filter"] = match filter {
                    Some(FiniteOrderVerdict::InfiniteOrder) => json!("infinite_order"),
                    Some(FiniteOrderVerdict::PossiblyFiniteOrder) => {
                        json!("possibly_finite_order")
                    }
                    None => json!(null),
                };
                println!("{value}");
            } else {
                for row in &report.rows {
                    println!(
                        "q = {}: phi = {} vs bound {} (margin {})",
                        row.q, row.phi_value, row.bound, row.margin
                    );
                }
                println!(
                    "{}",
                    if report.not_slice { "not slice" } else { "consistent with slice" }
                );
                match filter {
                    Some(FiniteOrderVerdict::InfiniteOrder) => {
                        println!("writhe filter: infinite concordance order")
                    }
                    Some(FiniteOrderVerdict::PossiblyFiniteOrder) => {
                        println!("writhe filter: possibly finite order")
                    }
                    None => println!("writhe filter: closure is not a knot"),
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    #[cfg(feature = "parallel")]
    if let Ok(threads) = std::env::var("BRAIDBAND_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build_global();
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::BudgetExceeded { budget }) => {
            eprintln!("budget exhausted ({budget}); retry with a larger budget");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
