use std::fs;
use std::io::{ErrorKind, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use leonard::{
    bipartite_contraction, bipartite_status_array, census_d1, census_d2, classify_near_bipartite,
    expansions_dual_q_krawtchouk, expansions_krawtchouk, flat_part, fundamental_type,
    parameter_array_from_primary_data, parameter_arrays_from_tdd, primary_data_from_parameter_array,
    realize_matrices, tdd_from_parameter_array, trace_data, validate_parameter_array, verify_leonard_pair,
    ContractionOutcome, Document, Family, Field, FlatError, MatrixPair, ParameterArray, Payload, PrimaryData,
    Sampler, TddSequence, VerificationReport,
};

#[derive(Parser)]
#[command(name = "leonard", version, about = "Exact computations with Leonard pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Array,
    Matrices,
    Primary,
}

#[derive(Subcommand)]
enum Command {
    /// Check the parameter array conditions and report beta and the type.
    Validate { file: String },
    /// Convert to a TD/D sequence.
    Tdd { file: String },
    /// Convert to parameter arrays.
    Array { file: String },
    /// Emit the normalized matrix pair.
    Realize { file: String },
    /// Decide whether a matrix pair is a Leonard pair.
    Verify { file: String },
    /// Flat part and bipartite status.
    Flat { file: String },
    /// Near-bipartite classification; writes the contraction.
    Classify { file: String },
    /// Bipartite contraction A - F.
    Contract { file: String },
    /// Expansions of a bipartite dual q-Krawtchouk or Krawtchouk pair.
    Expand {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "+")]
        tau_sign: String,
        #[arg(long, value_enum, default_value = "array")]
        emit: Emit,
    },
    /// Seeded random valid samples, one JSON document per line.
    Sample {
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// q for type I families; drawn at random when absent.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Exhaustive diameter-one sweep.
    #[command(name = "census-d1")]
    CensusD1 {
        #[arg(long)]
        field: String,
    },
    /// Exhaustive diameter-two sweep.
    #[command(name = "census-d2")]
    CensusD2 {
        #[arg(long)]
        field: String,
    },
}

enum Failure {
    Malformed(String),
    Domain(String),
}

type Outcome = Result<(), Failure>;

fn malformed(e: impl ToString) -> Failure {
    Failure::Malformed(e.to_string())
}

fn domain(e: impl ToString) -> Failure {
    Failure::Domain(e.to_string())
}

fn load(path: &str) -> Result<Document, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(malformed)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| malformed(format!("{path}: {e}")))?
    };
    Document::parse(&text).map_err(malformed)
}

// A closed pipe (e.g. piping into `head`) ends the process quietly.
fn write_line(s: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{s}") {
        if e.kind() != ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
        std::process::exit(0);
    }
}

macro_rules! say {
    ($($t:tt)*) => { write_line(&format!($($t)*)) };
}

fn emit(doc: impl Into<Document>) {
    say!("{}", doc.into().render());
}

fn to_array(doc: &Document) -> Result<ParameterArray, Failure> {
    match &doc.payload {
        Payload::ParameterArray(p) => Ok(p.clone()),
        Payload::Tdd(t) => Ok(parameter_arrays_from_tdd(t).map_err(domain)?.swap_remove(0)),
        Payload::MatrixPair(m) => Ok(parameter_arrays_from_tdd(&pair_tdd(m)?).map_err(domain)?.swap_remove(0)),
        Payload::PrimaryData(pd) => parameter_array_from_primary_data(pd, doc.d).map_err(domain),
    }
}

fn pair_tdd(m: &MatrixPair) -> Result<TddSequence, Failure> {
    match verify_leonard_pair(m) {
        VerificationReport::LeonardPair { thetastar, .. } => {
            let (a, x) = trace_data(m, &thetastar).map_err(domain)?;
            TddSequence::new(a, x, thetastar).map_err(domain)
        }
        other => Err(domain(other)),
    }
}

fn to_tdd(doc: &Document) -> Result<TddSequence, Failure> {
    match &doc.payload {
        Payload::Tdd(t) => Ok(t.clone()),
        Payload::MatrixPair(m) => pair_tdd(m),
        _ => tdd_from_parameter_array(&to_array(doc)?).map_err(domain),
    }
}

fn to_pair(doc: &Document) -> Result<MatrixPair, Failure> {
    match &doc.payload {
        Payload::MatrixPair(m) => Ok(m.clone()),
        _ => Ok(realize_matrices(&to_tdd(doc)?)),
    }
}

fn to_primary(doc: &Document) -> Result<PrimaryData, Failure> {
    match &doc.payload {
        Payload::PrimaryData(pd) => Ok(pd.clone()),
        _ => primary_data_from_parameter_array(&to_array(doc)?, None).map_err(domain),
    }
}

fn validate(doc: &Document) -> Outcome {
    let p = to_array(doc)?;
    let report = validate_parameter_array(&p);
    if !report.is_valid() {
        return Err(domain(report));
    }
    match fundamental_type(&p) {
        Ok(ft) => say!("Valid; beta={}; type={}", ft.beta, ft.tag),
        Err(_) => say!("Valid"),
    }
    Ok(())
}

fn array(doc: &Document) -> Outcome {
    match &doc.payload {
        Payload::Tdd(t) => {
            for p in parameter_arrays_from_tdd(t).map_err(domain)? {
                emit(p);
            }
        }
        _ => emit(to_array(doc)?),
    }
    Ok(())
}

fn verify(doc: &Document) -> Outcome {
    let report = verify_leonard_pair(&to_pair(doc)?);
    if report.is_leonard() {
        say!("{report}");
        Ok(())
    } else {
        Err(domain(report))
    }
}

fn flat(doc: &Document) -> Outcome {
    let pair = to_pair(doc)?;
    let fp = flat_part(&pair).map_err(domain)?;
    let status = bipartite_status_array(&to_array(doc)?);
    say!("{status}");
    say!("flat part:\n{}", fp.matrix);
    Ok(())
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn classify(doc: &Document) -> Outcome {
    let p = to_array(doc)?;
    let c = classify_near_bipartite(&p).map_err(domain)?;
    let mut line = format!(
        "{}; reasons=[{}]",
        if c.near_bipartite { "near-bipartite" } else { "not near-bipartite" },
        list(&c.reasons)
    );
    if !c.fallbacks.is_empty() {
        line += &format!("; in_field={}; fallbacks=[{}]", c.in_field, list(&c.fallbacks));
    }
    match (&c.contraction, &c.contraction_tdd) {
        (Some(a), _) => {
            say!("{line}; contraction written to stdout");
            emit(a.clone());
        }
        (None, Some(t)) => {
            say!("{line}; contraction TD/D sequence written to stdout");
            emit(t.clone());
        }
        _ => say!("{line}"),
    }
    Ok(())
}

fn contract(doc: &Document) -> Outcome {
    let pair = to_pair(doc)?;
    match bipartite_contraction(&pair) {
        Ok(ContractionOutcome::NearBipartite(c)) => {
            say!("near-bipartite; route=matrix; contraction written to stdout");
            emit(c.pair.clone());
            emit(c.array.clone());
            Ok(())
        }
        Ok(ContractionOutcome::NotNearBipartite(r)) => Err(domain(format!("not near-bipartite: A - F, A* fails: {r}"))),
        Err(FlatError::ContractionNotSplit) => {
            // only the TD/D presentation is available over this field
            let t = to_tdd(doc)?.with_zero_diagonal();
            let c = classify_near_bipartite(&to_array(doc)?).map_err(domain)?;
            if c.near_bipartite {
                say!("near-bipartite over an extension; route=tdd; contraction TD/D sequence written to stdout");
                emit(t);
                Ok(())
            } else {
                Err(domain("not near-bipartite: A - F has eigenvalues outside the field"))
            }
        }
        Err(e) => Err(domain(e)),
    }
}

fn expand(doc: &Document, delta: &str, mu: &str, tau_sign: &str, what: Emit) -> Outcome {
    let b = to_primary(doc)?;
    let f = doc.field;
    let delta = f.parse(delta).map_err(malformed)?;
    let mu = f.parse(mu).map_err(malformed)?;
    let x = match &b {
        PrimaryData::TypeI { .. } => expansions_dual_q_krawtchouk(&b, doc.d, &delta, &mu).map_err(domain)?,
        PrimaryData::TypeII(_) => {
            let mut xs = expansions_krawtchouk(&b, doc.d, &delta, &mu).map_err(domain)?;
            let k = match tau_sign {
                "+" => 0,
                "-" => xs.len() - 1,
                other => return Err(malformed(format!("--tau-sign must be + or -, got {other:?}"))),
            };
            xs.swap_remove(k)
        }
        PrimaryData::TypeIIIPlus(_) => return Err(domain("type III+ pairs have no expansion construction")),
    };
    say!("expansion; {}", x.primary);
    match what {
        Emit::Array => emit(x.array),
        Emit::Matrices => emit(x.pair),
        Emit::Primary => emit(Document::primary(x.primary, doc.d)),
    }
    Ok(())
}

fn sample(family: &str, d: usize, field: &str, count: usize, seed: u64, q: Option<&str>) -> Outcome {
    let family: Family = family.parse().map_err(malformed)?;
    let field: Field = field.parse().map_err(malformed)?;
    let q = q.map(|s| field.parse(s)).transpose().map_err(malformed)?;
    let mut s = Sampler::new(field, seed);
    for _ in 0..count {
        let doc = if family.has_primary_data() {
            Document::primary(s.primary(family, d, q.as_ref()).map_err(domain)?, d)
        } else {
            Document::from(s.array(family, d, q.as_ref()).map_err(domain)?)
        };
        say!("{}", doc.to_value());
    }
    Ok(())
}

fn census(field: &str, d: usize) -> Outcome {
    let field: Field = field.parse().map_err(malformed)?;
    let report = if d == 1 { census_d1(field) } else { census_d2(field) }.map_err(malformed)?;
    say!("{report}");
    if report.mismatches() == 0 {
        Ok(())
    } else {
        Err(domain("census found mismatches"))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => validate(&load(&file)?),
        Command::Tdd { file } => {
            emit(to_tdd(&load(&file)?)?);
            Ok(())
        }
        Command::Array { file } => array(&load(&file)?),
        Command::Realize { file } => {
            emit(to_pair(&load(&file)?)?);
            Ok(())
        }
        Command::Verify { file } => verify(&load(&file)?),
        Command::Flat { file } => flat(&load(&file)?),
        Command::Classify { file } => classify(&load(&file)?),
        Command::Contract { file } => contract(&load(&file)?),
        Command::Expand { file, delta, mu, tau_sign, emit } => expand(&load(&file)?, &delta, &mu, &tau_sign, emit),
        Command::Sample { family, d, field, count, seed, q } => sample(&family, d, &field, count, seed, q.as_deref()),
        Command::CensusD1 { field } => census(&field, 1),
        Command::CensusD2 { field } => census(&field, 2),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Malformed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(m)) => {
            say!("{m}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_scalars_parse_as_values() {
        let cli = Cli::try_parse_from(["leonard", "expand", "b.json", "--delta", "-1/2", "--mu", "-3"]).unwrap();
        match cli.command {
            Command::Expand { delta, mu, tau_sign, .. } => assert_eq!((delta.as_str(), mu.as_str(), tau_sign.as_str()), ("-1/2", "-3", "+")),
            _ => panic!("expected expand"),
        }
    }
}
