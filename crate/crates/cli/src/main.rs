//! Command-line surface: diagram | equation | verify | pencil | arrangement.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 equation-audit
//! failure. All output is deterministic byte-for-byte for identical flags.

mod render;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cremona_core::arrangement::{dual_hesse, GroupLabel};
use cremona_core::diagram;
use cremona_core::pencil;
use cremona_core::polynomials::curve_equation;
use cremona_core::verify;

#[derive(Parser)]
#[command(
    name = "cremona",
    version,
    about = "Exact bifurcation diagram of quadratic Cremona maps on the dual Hesse arrangement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EquationFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Show {
    Degree,
    Sing,
    Param,
    Cd,
    Coarse,
    Parents,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Render the bifurcation diagram (the degree triangle by default)
    Diagram {
        /// Number of rows to generate
        #[arg(long, default_value_t = 11)]
        rows: u32,
        /// Fields to show: degree, sing, param, cd, coarse, parents, all
        #[arg(long, value_delimiter = ',', default_value = "degree")]
        show: Vec<Show>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Write to a file instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the equation of the rational curve at one entry
    Equation {
        #[arg(long)]
        row: u32,
        #[arg(long)]
        col: u32,
        /// Audit degree and multiplicities against the fine tuple
        #[arg(long)]
        verify: bool,
        /// Largest row equations are computed for
        #[arg(long, default_value_t = 9)]
        max_row: u32,
        #[arg(long, value_enum, default_value_t = EquationFormat::Text)]
        format: EquationFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run every invariant suite
    Verify {
        /// Diagram depth the suites run to
        #[arg(long, default_value_t = 50)]
        verify_depth: u32,
    },
    /// Report one elliptic pencil with its fibration checks
    Pencil {
        #[arg(long)]
        row: u32,
        #[arg(long)]
        col: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Export the dual Hesse arrangement
    Arrangement {
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn verification(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    fn audit(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Diagram { rows, show, format, output } => cmd_diagram(rows, &show, format, output),
        Command::Equation { row, col, verify, max_row, format, output } => {
            cmd_equation(row, col, verify, max_row, format, output)
        }
        Command::Verify { verify_depth } => cmd_verify(verify_depth),
        Command::Pencil { row, col, output } => cmd_pencil(row, col, output),
        Command::Arrangement { output } => cmd_arrangement(output),
    }
}

fn emit(output: Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match output {
        None => {
            println!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(&path, format!("{content}\n"))
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
    }
}

fn check_entry(row: u32, col: u32) -> Result<(), Failure> {
    if row < 1 {
        return Err(Failure::usage("--row must be at least 1"));
    }
    let cols = diagram::columns_in_row(row);
    if col < 1 || col > cols {
        return Err(Failure::usage(format!(
            "entry ({row},{col}) is outside the diagram: row {row} has columns 1..={cols}"
        )));
    }
    Ok(())
}

fn selected(show: &[Show], which: Show) -> bool {
    show.iter().any(|s| *s == which || *s == Show::All)
}

fn cmd_diagram(
    rows: u32,
    show: &[Show],
    format: Format,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    if rows < 1 {
        return Err(Failure::usage("--rows must be at least 1"));
    }
    let d = diagram::build(rows).map_err(|e| Failure::verification(e.to_string()))?;
    let content = match format {
        Format::Table => render::triangle(&d, |e| {
            let mut cell = Vec::new();
            if selected(show, Show::Degree) {
                cell.push(e.degree.to_string());
            }
            if selected(show, Show::Param) {
                cell.push(e.t.to_string());
            }
            if selected(show, Show::Cd) {
                cell.push(format!("({},{})", e.c, e.d));
            }
            if selected(show, Show::Coarse) {
                cell.push(e.coarse.to_string());
            }
            if selected(show, Show::Sing) {
                cell.push(e.fine.to_string());
            }
            cell.join(" ")
        }),
        Format::Json => {
            let entries: Vec<Value> = d.entries().map(|e| filter_entry(e, show)).collect();
            serde_json::to_string_pretty(&Value::Array(entries)).unwrap()
        }
        Format::Csv => {
            let mut header: Vec<&str> = vec!["i", "j"];
            if selected(show, Show::Degree) {
                header.push("degree");
            }
            if selected(show, Show::Param) {
                header.push("t");
            }
            if selected(show, Show::Cd) {
                header.extend(["c", "d"]);
            }
            if selected(show, Show::Coarse) {
                header.push("coarse");
            }
            if selected(show, Show::Sing) {
                header.push("fine");
            }
            if selected(show, Show::Parents) {
                header.push("parents");
            }
            let mut out = String::new();
            writeln!(out, "{}", header.join(",")).unwrap();
            for e in d.entries() {
                let mut cells = vec![e.i.to_string(), e.j.to_string()];
                if selected(show, Show::Degree) {
                    cells.push(e.degree.to_string());
                }
                if selected(show, Show::Param) {
                    cells.push(e.t.to_string());
                }
                if selected(show, Show::Cd) {
                    cells.push(e.c.to_string());
                    cells.push(e.d.to_string());
                }
                if selected(show, Show::Coarse) {
                    cells.push(e.coarse.to_string());
                }
                if selected(show, Show::Sing) {
                    cells.push(e.fine.to_string());
                }
                if selected(show, Show::Parents) {
                    let parents: Vec<String> = e
                        .parents
                        .iter()
                        .map(|p| format!("{}({},{})", p.map.as_str(), p.i, p.j))
                        .collect();
                    cells.push(parents.join(";"));
                }
                writeln!(out, "{}", render::csv_row(&cells)).unwrap();
            }
            out.trim_end().to_string()
        }
    };
    emit(output, &content)
}

fn filter_entry(e: &diagram::DiagramEntry, show: &[Show]) -> Value {
    let full = e.to_json();
    if selected(show, Show::All) {
        return full;
    }
    let mut obj = serde_json::Map::new();
    obj.insert("i".into(), full["i"].clone());
    obj.insert("j".into(), full["j"].clone());
    if selected(show, Show::Degree) {
        obj.insert("degree".into(), full["degree"].clone());
    }
    if selected(show, Show::Param) {
        obj.insert("t".into(), full["t"].clone());
    }
    if selected(show, Show::Cd) {
        obj.insert("c".into(), full["c"].clone());
        obj.insert("d".into(), full["d"].clone());
    }
    if selected(show, Show::Coarse) {
        obj.insert("coarse".into(), full["coarse"].clone());
    }
    if selected(show, Show::Sing) {
        obj.insert("fine".into(), full["fine"].clone());
    }
    if selected(show, Show::Parents) {
        obj.insert("parents".into(), full["parents"].clone());
    }
    Value::Object(obj)
}

fn cmd_equation(
    row: u32,
    col: u32,
    verify: bool,
    max_row: u32,
    format: EquationFormat,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    check_entry(row, col)?;
    if row > max_row {
        return Err(Failure::usage(format!(
            "row {row} exceeds the equation depth {max_row} (raise --max-row if intended)"
        )));
    }
    let eq = curve_equation(row, col).map_err(|e| Failure::verification(e.to_string()))?;
    let mut lines = Vec::new();
    match format {
        EquationFormat::Text => lines.push(format!("Cr({row},{col}) = {eq}")),
        EquationFormat::Json => {
            let v = json!({
                "i": row,
                "j": col,
                "degree": eq.degree(),
                "text": eq.to_string(),
                "terms": eq.to_json(),
            });
            lines.push(serde_json::to_string_pretty(&v).unwrap());
        }
    }
    if verify {
        let d = diagram::build(row).map_err(|e| Failure::verification(e.to_string()))?;
        let entry = d.entry(row, col).expect("validated entry");
        let arr = dual_hesse();
        if i64::from(eq.degree()) != entry.fine.d {
            return Err(Failure::audit(format!(
                "degree {} does not match fine degree {}",
                eq.degree(),
                entry.fine.d
            )));
        }
        lines.push(format!("degree: {} (matches fine data)", eq.degree()));
        for g in GroupLabel::FINITE {
            let mut got: Vec<i64> = arr
                .group(g)
                .iter()
                .map(|p| i64::from(eq.multiplicity_at(p)))
                .collect();
            got.sort_unstable();
            let mut want = entry.fine.triple(g).to_vec();
            want.sort_unstable();
            if got != want {
                return Err(Failure::audit(format!(
                    "multiplicities at P3({g}): computed {got:?}, fine tuple {want:?}"
                )));
            }
            lines.push(format!("multiplicities at P3({g}): {got:?} (match fine data)"));
        }
        for p in arr.group(GroupLabel::Inf) {
            if eq.multiplicity_at(p) != 0 {
                return Err(Failure::audit(format!("curve passes through {p} at infinity")));
            }
        }
        lines.push("multiplicities at P3(inf): [0, 0, 0] (match fine data)".to_string());
        lines.push("audit passed".to_string());
    }
    emit(output, &lines.join("\n"))
}

fn cmd_verify(verify_depth: u32) -> Result<(), Failure> {
    if verify_depth < 1 {
        return Err(Failure::usage("--verify-depth must be at least 1"));
    }
    let reports =
        verify::verify_all(verify_depth).map_err(|e| Failure::verification(e.to_string()))?;
    let mut total = 0;
    for r in &reports {
        println!("{:<12} {:>7} checks passed", r.name, r.checks);
        total += r.checks;
    }
    println!("all checks passed ({total} total, depth {verify_depth})");
    Ok(())
}

fn cmd_pencil(row: u32, col: u32, output: Option<PathBuf>) -> Result<(), Failure> {
    check_entry(row, col)?;
    let arr = dual_hesse();
    let desc =
        pencil::pencil_at(row, col, &arr).map_err(|e| Failure::verification(e.to_string()))?;
    let report =
        pencil::fibration_checks(&desc, &arr).map_err(|e| Failure::verification(e.to_string()))?;
    let v = pencil::pencil_to_json(&desc, &report, &arr);
    emit(output, &serde_json::to_string_pretty(&v).unwrap())
}

fn cmd_arrangement(output: Option<PathBuf>) -> Result<(), Failure> {
    let arr = dual_hesse();
    emit(output, &serde_json::to_string_pretty(&arr.to_json()).unwrap())
}
