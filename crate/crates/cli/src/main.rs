use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use modstab::counting::{check_bounds, count_codes};
use modstab::json::{CatalogLine, CheckMatrixDoc, CodeSymplecticDoc, FactorsDoc, MatrixDoc};
use modstab::oracle::{
    enumerate_codes, enumerate_ordered_tuples, enumerate_symplectic, enumerate_tnkd,
    EnumerationBudget,
};
use modstab::symplectic::{extend_check_matrix, is_symplectic};
use modstab::tnkd::{count_ordered_isotropic_tuples, decompose, sp_order, tnkd_order};
use modstab::{Error, Modulus};

const EXIT_INVALID: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "modstab",
    version,
    about = "Exact algebra of qudit stabilizer codes over Z_d"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Params {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    Codes,
    Spaces,
    States,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form number of codes, code spaces or stabilizer states.
    Count {
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum, default_value_t = What::Codes)]
        what: What,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Compare closed forms against brute-force enumeration.
    Verify {
        #[command(flatten)]
        params: Params,
        /// Candidate-test budget for each enumeration.
        #[arg(long, default_value_t = 50_000_000)]
        max_cells: u64,
    },
    /// Extend a check matrix to a symplectic matrix.
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Factor an element of T(n,k,d) as M_T·M_E·M_S·M_L.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        params: Params,
    },
    /// Write every [[n,k]]_d code as one JSON line.
    Enumerate {
        #[command(flatten)]
        params: Params,
        #[arg(long = "out")]
        output: PathBuf,
        #[arg(long)]
        with_elements: bool,
        #[arg(long, default_value_t = 50_000_000)]
        max_cells: u64,
    },
}

/// A failure and the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => EXIT_BUDGET,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn validate(p: Params) -> Result<Modulus, Failure> {
    if p.k >= p.n {
        return Err(Failure::invalid(format!(
            "k must be < n (got n={}, k={})",
            p.n, p.k
        )));
    }
    Ok(Modulus::new(p.d)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::invalid(format!("cannot parse {}: {e}", path.display())))
}

fn write_file(path: &PathBuf, contents: &str) -> CmdResult {
    fs::write(path, contents)
        .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))
}

fn cmd_count(p: Params, what: What, json: bool) -> CmdResult {
    let d = validate(p)?;
    if matches!(what, What::States) && p.k != 0 {
        return Err(Failure::invalid("states are counted only for k = 0"));
    }
    let report = count_codes(p.n, p.k, d)?;
    if json {
        let text = serde_json::to_string_pretty(&report).expect("report serialises");
        println!("{text}");
        return Ok(());
    }
    let value = match what {
        What::Codes => &report.codes,
        What::Spaces => &report.code_spaces,
        What::States => report.states.as_ref().expect("k = 0 report has states"),
    };
    println!("{value}");
    Ok(())
}

fn cmd_verify(p: Params, max_cells: u64) -> CmdResult {
    let d = validate(p)?;
    let budget = EnumerationBudget {
        max_matrix_cells: max_cells,
        max_subgroup_candidates: max_cells,
    };
    let (n, k) = (p.n, p.k);
    let report = count_codes(n, k, d)?;
    let rows = [
        (
            "codes",
            report.codes.to_string(),
            enumerate_codes(n, k, d, &budget)?.count,
        ),
        (
            "|Sp(2n)|",
            sp_order(n, d).to_string(),
            enumerate_symplectic(n, d, &budget, false)?.count,
        ),
        (
            "|T(n,k,d)|",
            tnkd_order(n, k, d)?.to_string(),
            enumerate_tnkd(n, k, d, &budget)?,
        ),
        (
            "ordered tuples",
            count_ordered_isotropic_tuples(n, k, d)?.to_string(),
            enumerate_ordered_tuples(n, k, d, &budget)?,
        ),
    ];
    println!("n={n} k={k} d={}", d.get());
    println!(
        "{:<16} {:>14} {:>14}  result",
        "quantity", "formula", "oracle"
    );
    let mut all_match = true;
    for (name, formula, oracle) in &rows {
        let ok = *formula == oracle.to_string();
        all_match &= ok;
        let mark = if ok { "=" } else { "MISMATCH" };
        println!("{name:<16} {formula:>14} {oracle:>14}  {mark}");
    }
    let verdict = check_bounds(&report);
    if !verdict.holds {
        all_match = false;
        for line in &verdict.diagnostics {
            println!("bound violated: {line}");
        }
    }
    if all_match {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_MISMATCH,
            message: "formula and oracle disagree".into(),
        })
    }
}

fn cmd_extend(input: &PathBuf, output: &PathBuf) -> CmdResult {
    let doc: CheckMatrixDoc = read_json(input)?;
    let h = doc.to_check_matrix()?;
    let code = extend_check_matrix(&h)?;
    if !is_symplectic(code.matrix(), code.n())? {
        return Err(Failure::invalid("extension is not symplectic"));
    }
    let out = CodeSymplecticDoc::from_code(&code);
    write_file(
        output,
        &serde_json::to_string_pretty(&out).expect("document serialises"),
    )?;
    println!(
        "wrote {}x{} symplectic matrix to {}",
        2 * code.n(),
        2 * code.n(),
        output.display()
    );
    Ok(())
}

fn cmd_decompose(input: &PathBuf, p: Params) -> CmdResult {
    let d = validate(p)?;
    let doc: MatrixDoc = read_json(input)?;
    if doc.d != d.get() || doc.n != p.n {
        return Err(Failure::invalid(format!(
            "document has n={}, d={} but flags give n={}, d={}",
            doc.n,
            doc.d,
            p.n,
            d.get()
        )));
    }
    let m = doc.to_matrix()?;
    let factors = decompose(&m, p.n, p.k)?;
    if factors.recompose() != m {
        return Err(Failure::invalid("recomposition check failed"));
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&FactorsDoc::from_factors(&factors))
            .expect("document serialises")
    );
    Ok(())
}

fn cmd_enumerate(p: Params, output: &PathBuf, with_elements: bool, max_cells: u64) -> CmdResult {
    let d = validate(p)?;
    let budget = EnumerationBudget {
        max_matrix_cells: max_cells,
        max_subgroup_candidates: max_cells,
    };
    let codes = enumerate_codes(p.n, p.k, d, &budget)?;
    let mut text = String::new();
    for s in &codes.subgroups {
        let line = CatalogLine::from_subgroup(s, with_elements);
        text.push_str(&serde_json::to_string(&line).expect("line serialises"));
        text.push('\n');
    }
    write_file(output, &text)?;
    let expected = count_codes(p.n, p.k, d)?.codes;
    println!("wrote {} codes to {}", codes.count, output.display());
    if expected.to_string() != codes.count.to_string() {
        return Err(Failure {
            code: EXIT_MISMATCH,
            message: format!(
                "catalog has {} codes, closed form gives {expected}",
                codes.count
            ),
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count { params, what, json } => cmd_count(*params, *what, *json),
        Command::Verify { params, max_cells } => cmd_verify(*params, *max_cells),
        Command::Extend { input, output } => cmd_extend(input, output),
        Command::Decompose { input, params } => cmd_decompose(input, *params),
        Command::Enumerate {
            params,
            output,
            with_elements,
            max_cells,
        } => cmd_enumerate(*params, output, *with_elements, *max_cells),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = writeln!(std::io::stderr(), "error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
