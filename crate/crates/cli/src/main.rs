use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::TypedValueParser;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use eicat::category::{validate, FiniteCategory, RawCategory};
use eicat::classifier::{classify, classify_explained, present_skeleton};
use eicat::constructors::{
    biset_category, corpus, group_category, poset_category, transporter_category, BisetCategoryJson, CorpusLimits,
    Poset,
};
use eicat::freeness::{is_free, unfactorizables};
use eicat::group::{is_projective_over, GroupAction, GroupTable};
use eicat::linalg::FieldSpec;
use eicat::oracle::{analyze, FiniteDimAlgebra, StructureJson, DEFAULT_CAP};
use eicat::triangular::build_triangular;
use eicat::verify::{agreement, oracle_report, DEFAULT_DIM_LIMIT};
use eicat::{with_field, Error};

#[derive(Parser)]
#[command(name = "eicat", version, about = "Gorenstein and freeness tests for finite EI category algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a category file; exit 1 if it is not a valid EI category.
    Validate { path: PathBuf },
    /// Gorenstein, 1-Gorenstein, 0-Gorenstein and hereditary flags.
    Classify {
        path: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Include stabilizer witnesses, freeness per object and the M_t^* ledger.
        #[arg(long)]
        explain: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unfactorizable morphisms and the unique factorization check.
    Freeness {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stabilizer orders of the non-isomorphisms against the characteristic.
    Projectivity {
        path: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structure constants of the triangular matrix algebra.
    Matrix {
        path: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Self-injective and global dimensions by exact computation.
    Oracle {
        /// Category JSON or structure-constant JSON.
        path: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, default_value_t = DEFAULT_CAP, value_parser = clap::value_parser!(u64).range(1..).map(|v| v as usize))]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_DIM_LIMIT)]
        dim_limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write example categories.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand)]
enum Family {
    /// `chain:N`, `antichain:N`, `diamond`, or a poset JSON file.
    Poset {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transporter category from group, poset and action files.
    Transporter {
        group: PathBuf,
        poset: PathBuf,
        action: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// `C<n>`, `V4`, `S3`, or a group JSON file.
    Group {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Category from objects with groups and Hom bisets.
    Biset {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random corpus; one file per category when `--out` is a directory.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit 1 for domain failures, 2 for usage and input-format failures.
enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Json(_) | Error::Parse(_) | Error::BadCharacteristic(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn field(characteristic: u64) -> Result<FieldSpec, Failure> {
    FieldSpec::new(characteristic).map_err(|e| Failure::Usage(e.to_string()))
}

fn load_category(path: &Path) -> Result<FiniteCategory, Failure> {
    let raw: RawCategory = parse(path)?;
    validate(&raw).map_err(|errs| Failure::from(Error::InvalidCategory(errs)))
}

fn cmd_validate(path: &Path) -> Outcome {
    let raw: RawCategory = parse(path)?;
    let c = match validate(&raw) {
        Ok(c) => c,
        Err(errors) => {
            emit(&json!({ "valid": false, "errors": errors }), None)?;
            return Ok(ExitCode::from(1));
        }
    };
    let ei = c.is_ei();
    let report = json!({
        "valid": true,
        "is_ei": ei.is_ei,
        "witness": ei.witness.map(|f| c.name(f).to_string()),
        "is_skeletal": c.is_skeletal(),
        "objects": c.num_objects(),
        "morphisms": c.num_morphisms(),
    });
    emit(&report, None)?;
    Ok(ExitCode::from(if ei.is_ei { 0 } else { 1 }))
}

fn cmd_classify(path: &Path, characteristic: u64, explain: bool, out: Option<&Path>) -> Outcome {
    let c = load_category(path)?;
    let f = field(characteristic)?;
    let report = if explain { classify_explained(&c, f)? } else { classify(&c, f)? };
    emit(&serde_json::to_value(report).expect("serializable"), out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_freeness(path: &Path, out: Option<&Path>) -> Outcome {
    let p = present_skeleton(&load_category(path)?)?;
    let table = unfactorizables(&p);
    let report = is_free(&p);
    let value = json!({
        "free": report.free,
        "unfactorizables": table.all().map(|f| p.name(f)).collect::<Vec<_>>(),
        "free_from": report.free_from,
        "counterexample": report.counterexample,
    });
    emit(&value, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_projectivity(path: &Path, characteristic: u64, out: Option<&Path>) -> Outcome {
    let p = present_skeleton(&load_category(path)?)?;
    let report = is_projective_over(&p, field(characteristic)?);
    let value = json!({
        "characteristic": characteristic,
        "projective": report.projective,
        "witnesses": report.witnesses,
    });
    emit(&value, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_matrix(path: &Path, characteristic: u64, out: Option<&Path>) -> Outcome {
    let p = present_skeleton(&load_category(path)?)?;
    let value = with_field!(field(characteristic)?, f => {
        let tp = build_triangular(&p, &f);
        json!({
            "structure": tp.algebra().to_json_value(),
            "ordering": p.ordering_names(),
            "vertex_dims": tp.vertex_dims(),
            "bimodule_dims": tp.bimodule_dims(),
            "mstar": tp.mstar_ledger(),
        })
    });
    emit(&value, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(path: &Path, characteristic: u64, cap: usize, dim_limit: usize, out: Option<&Path>) -> Outcome {
    let value: Value = serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(e.to_string()))?;
    let f = field(characteristic)?;
    // Structure constants, bare or as written by `matrix`.
    let structure = if value.get("basis").is_some() { Some(&value) } else { value.get("structure") };
    let result = match structure {
        Some(s) => {
            let s: StructureJson = serde_json::from_value(s.clone()).map_err(|e| Failure::Usage(e.to_string()))?;
            if s.basis.len() > dim_limit {
                return Err(Error::DimensionLimitExceeded { dim: s.basis.len(), limit: dim_limit }.into());
            }
            let report = with_field!(f, k => analyze(&FiniteDimAlgebra::from_json_value(&k, &s)?, cap))?;
            json!({ "left": report.left, "right": report.right, "gldim": report.gldim, "cap": cap, "agrees": null })
        }
        None => {
            let raw: RawCategory = serde_json::from_value(value).map_err(|e| Failure::Usage(e.to_string()))?;
            let c = validate(&raw).map_err(|errs| Failure::from(Error::InvalidCategory(errs)))?;
            let report = oracle_report(&c, f, cap, dim_limit)?;
            let agrees = agreement(&classify(&c, f)?, &report).all();
            json!({ "left": report.left, "right": report.right, "gldim": report.gldim, "cap": cap, "agrees": agrees })
        }
    };
    emit(&result, out)?;
    Ok(ExitCode::SUCCESS)
}

fn named_group(spec: &str) -> Option<GroupTable> {
    match spec {
        "V4" => Some(GroupTable::klein_four()),
        "S3" => Some(GroupTable::symmetric3()),
        _ => spec.strip_prefix('C')?.parse().ok().filter(|&n| n > 0).map(GroupTable::cyclic),
    }
}

fn named_poset(spec: &str) -> Option<Poset> {
    if spec == "diamond" {
        return Some(Poset::diamond());
    }
    let (kind, n) = spec.split_once(':')?;
    let n: usize = n.parse().ok()?;
    match kind {
        "chain" => Some(Poset::chain(n)),
        "antichain" => Some(Poset::antichain(n)),
        _ => None,
    }
}

fn category_json(c: &FiniteCategory) -> Value {
    serde_json::to_value(c.to_raw()).expect("serializable")
}

fn cmd_gen(family: Family) -> Outcome {
    match family {
        Family::Poset { spec, out } => {
            let poset = match named_poset(&spec) {
                Some(p) => p,
                None => Poset::from_json(&read(Path::new(&spec))?)?,
            };
            emit(&category_json(&poset_category(&poset)), out.as_deref())?;
        }
        Family::Transporter { group, poset, action, out } => {
            let g = GroupTable::from_json(&read(&group)?)?;
            let p = Poset::from_json(&read(&poset)?)?;
            let a = GroupAction::from_json(&read(&action)?)?;
            emit(&category_json(&transporter_category(&g, &p, &a)?), out.as_deref())?;
        }
        Family::Group { spec, out } => {
            let g = match named_group(&spec) {
                Some(g) => g,
                None => GroupTable::from_json(&read(Path::new(&spec))?)?,
            };
            emit(&category_json(&group_category(&g)), out.as_deref())?;
        }
        Family::Biset { spec, out } => {
            let s: BisetCategoryJson = parse(&spec)?;
            emit(&category_json(&biset_category(&s)?), out.as_deref())?;
        }
        Family::Corpus { seed, count, out } => {
            let entries = corpus(seed, &CorpusLimits::default(), count);
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
                    for (i, e) in entries.iter().enumerate() {
                        let path = dir.join(format!("{i:03}-{}.json", e.name));
                        emit(&category_json(&e.category), Some(&path))?;
                    }
                }
                None => {
                    let all: Vec<Value> = entries
                        .iter()
                        .map(|e| json!({ "name": e.name, "category": category_json(&e.category) }))
                        .collect();
                    emit(&Value::Array(all), None)?;
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { path } => cmd_validate(&path),
        Command::Classify { path, characteristic, explain, out } => {
            cmd_classify(&path, characteristic, explain, out.as_deref())
        }
        Command::Freeness { path, out } => cmd_freeness(&path, out.as_deref()),
        Command::Projectivity { path, characteristic, out } => cmd_projectivity(&path, characteristic, out.as_deref()),
        Command::Matrix { path, characteristic, out } => cmd_matrix(&path, characteristic, out.as_deref()),
        Command::Oracle { path, characteristic, cap, dim_limit, out } => {
            cmd_oracle(&path, characteristic, cap, dim_limit, out.as_deref())
        }
        Command::Gen { family } => cmd_gen(family),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
