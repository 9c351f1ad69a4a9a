//! Command-line front end. Results go to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 success, 1 input error, 2 verification failure.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::buchberger::{buchberger_gb_with, is_groebner_basis, is_reduced, GbOptions};
use crate::encoders::{
    decode_shidoku_point, encode_shidoku, fixed_point_ideal, linear_basis_point, parse_clues,
    parse_model, random_ideal, RandomIdealParams,
};
use crate::oracle::{enumerate_variety, varieties_equal, DEFAULT_VARIETY_CAP};
use crate::ring::{Polynomial, Ring};
use crate::text::{parse_poly_file, render_poly, render_poly_file};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }
}

fn input_err(context: impl std::fmt::Display, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{context}: {e}"))
}

#[derive(Debug, Parser)]
#[command(
    name = "boolgb",
    version,
    about = "Groebner bases of Boolean polynomial ideals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the reduced lex Groebner basis of the ideal in FILE.
    Gb {
        file: PathBuf,
        /// Check the result with the independent verifier and, for small
        /// rings, by comparing varieties.
        #[arg(long)]
        verify: bool,
        /// Print pair and reduction counters and wall time to stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Encode a 4x4 Sudoku given as 16 characters from {1,2,3,4,.}.
    Shidoku {
        clues: String,
        /// Decode the basis into a solution instead of printing it.
        #[arg(long)]
        solve: bool,
    },
    /// Groebner basis of the fixed-point ideal of the model in FILE.
    Fixpoints {
        file: PathBuf,
        /// Also list the fixed points (small rings only).
        #[arg(long)]
        enumerate: bool,
    },
    /// Print a seeded random ideal as a polynomial file.
    Random {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        polys: usize,
        #[arg(long)]
        max_terms: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Time every *.poly, *.model and *.shidoku instance in DIR.
    Bench {
        dir: PathBuf,
        /// One JSON object per line instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Check whether the polynomials in FILE form a Groebner basis.
    Verify { file: PathBuf },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Gb {
            file,
            verify,
            stats,
        } => cmd_gb(&read(file)?, *verify, *stats, out, err),
        Command::Shidoku { clues, solve } => cmd_shidoku(clues, *solve, out),
        Command::Fixpoints { file, enumerate } => cmd_fixpoints(&read(file)?, *enumerate, out, err),
        Command::Random {
            vars,
            polys,
            max_terms,
            max_degree,
            seed,
        } => cmd_random(
            &RandomIdealParams {
                nvars: *vars,
                npolys: *polys,
                max_terms: *max_terms,
                max_degree: *max_degree,
                seed: *seed,
            },
            out,
        ),
        Command::Bench { dir, json } => cmd_bench(dir, *json, out),
        Command::Verify { file } => cmd_verify(&read(file)?, out),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| input_err(path.display(), e))
}

fn write_basis(ring: &Ring, polys: &[Polynomial], out: &mut dyn Write) -> io::Result<()> {
    for f in polys {
        writeln!(out, "{}", render_poly(f, ring))?;
    }
    Ok(())
}

pub fn cmd_gb(
    text: &str,
    verify: bool,
    stats: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let file = parse_poly_file(text).map_err(|e| input_err("parse error", e))?;
    let start = Instant::now();
    let (gb, counters) = buchberger_gb_with(&file.polys, &file.ring, GbOptions::default());
    let elapsed = start.elapsed();
    write_basis(&file.ring, gb.elements(), out)?;
    if stats {
        writeln!(err, "{counters}")?;
        writeln!(err, "wall time: {:.6} s", elapsed.as_secs_f64())?;
    }
    if verify {
        if !is_groebner_basis(gb.elements()) || !is_reduced(gb.elements()) {
            return Err(CliError::Verification(
                "result is not a reduced Groebner basis".into(),
            ));
        }
        if file.ring.nvars() <= DEFAULT_VARIETY_CAP {
            let same = varieties_equal(&file.polys, gb.elements(), &file.ring)
                .map_err(|e| CliError::Verification(e.to_string()))?;
            if !same {
                return Err(CliError::Verification(
                    "basis and input have different varieties".into(),
                ));
            }
        }
        writeln!(err, "verified")?;
    }
    Ok(())
}

pub fn cmd_verify(text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let file = parse_poly_file(text).map_err(|e| input_err("parse error", e))?;
    if is_groebner_basis(&file.polys) {
        let reduced = is_reduced(&file.polys);
        writeln!(
            out,
            "Groebner basis ({})",
            if reduced { "reduced" } else { "not reduced" }
        )?;
        Ok(())
    } else {
        Err(CliError::Verification("not a Groebner basis".into()))
    }
}

pub fn cmd_shidoku(clues: &str, solve: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let puzzle = parse_clues(clues).map_err(|e| input_err("bad clues", e))?;
    let (ring, gens) = encode_shidoku(&puzzle);
    let (gb, _) = buchberger_gb_with(&gens, &ring, GbOptions::default());
    if !solve {
        write_basis(&ring, gb.elements(), out)?;
        return Ok(());
    }
    if gb.is_unit() {
        writeln!(out, "no solution")?;
    } else if let Some(grid) = linear_basis_point(&gb).and_then(|p| decode_shidoku_point(p, &ring))
    {
        for row in grid {
            let cells: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(out, "{}", cells.join(" "))?;
        }
    } else {
        writeln!(out, "multiple solutions (basis size {})", gb.len())?;
    }
    Ok(())
}

pub fn cmd_fixpoints(
    text: &str,
    enumerate: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let model = parse_model(text).map_err(|e| input_err("parse error", e))?;
    let gens = fixed_point_ideal(&model);
    let (gb, _) = buchberger_gb_with(&gens, model.ring(), GbOptions::default());
    write_basis(model.ring(), gb.elements(), out)?;
    if enumerate {
        match enumerate_variety(gb.elements(), model.ring()) {
            Ok(v) => {
                writeln!(out, "fixed points: {}", v.len())?;
                for p in v.points().iter().rev() {
                    writeln!(out, "{}", model.ring().render_point(*p))?;
                }
            }
            Err(e) => writeln!(err, "not enumerating: {e}")?,
        }
    }
    Ok(())
}

pub fn cmd_random(params: &RandomIdealParams, out: &mut dyn Write) -> Result<(), CliError> {
    let (ring, polys) = random_ideal(params).map_err(|e| input_err("invalid parameters", e))?;
    write!(out, "{}", render_poly_file(&ring, &polys))?;
    Ok(())
}

/// One timed instance. `wall_time` covers the basis computation only, not
/// parsing or encoding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub name: String,
    pub nvars: usize,
    pub ngens: usize,
    pub gb_size: usize,
    pub wall_time: f64,
    pub verified: bool,
}

/// Loads a bench instance by extension. Unknown extensions give `None`.
fn load_instance(path: &Path) -> Result<Option<(Ring, Vec<Polynomial>)>, CliError> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let loaded = match ext {
        "poly" => {
            let f = parse_poly_file(&read(path)?).map_err(|e| input_err(path.display(), e))?;
            (f.ring, f.polys)
        }
        "model" => {
            let m = parse_model(&read(path)?).map_err(|e| input_err(path.display(), e))?;
            let gens = fixed_point_ideal(&m);
            (m.ring().clone(), gens)
        }
        "shidoku" => {
            let p = parse_clues(&read(path)?).map_err(|e| input_err(path.display(), e))?;
            encode_shidoku(&p)
        }
        _ => return Ok(None),
    };
    Ok(Some(loaded))
}

pub fn bench_instance(name: &str, ring: &Ring, gens: &[Polynomial]) -> BenchRecord {
    let start = Instant::now();
    let (gb, _) = buchberger_gb_with(gens, ring, GbOptions::default());
    let wall_time = start.elapsed().as_secs_f64();
    BenchRecord {
        name: name.to_string(),
        nvars: ring.nvars(),
        ngens: gens.len(),
        gb_size: gb.len(),
        wall_time,
        verified: is_groebner_basis(gb.elements()),
    }
}

pub fn run_bench(dir: &Path) -> Result<Vec<BenchRecord>, CliError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| input_err(dir.display(), e))?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.sort();
    let mut records = Vec::new();
    for path in paths {
        if !path.is_file() {
            continue;
        }
        if let Some((ring, gens)) = load_instance(&path)? {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            records.push(bench_instance(&name, &ring, &gens));
        }
    }
    Ok(records)
}

pub fn cmd_bench(dir: &Path, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let records = run_bench(dir)?;
    if json {
        for r in &records {
            writeln!(out, "{}", serde_json::to_string(r).expect("plain record"))?;
        }
    } else {
        writeln!(
            out,
            "{:<24} {:>5} {:>6} {:>8} {:>12} {:>8}",
            "name", "nvars", "ngens", "gb_size", "wall_time", "verified"
        )?;
        for r in &records {
            writeln!(
                out,
                "{:<24} {:>5} {:>6} {:>8} {:>12.6} {:>8}",
                r.name, r.nvars, r.ngens, r.gb_size, r.wall_time, r.verified
            )?;
        }
    }
    let failed: Vec<&str> = records
        .iter()
        .filter(|r| !r.verified)
        .map(|r| r.name.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "not a Groebner basis: {}",
            failed.join(", ")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("boolgb").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn gb_command_prints_basis() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        cmd_gb("ring 3 : x y z\nx*y+z\n", true, true, &mut out, &mut err).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "x*y + z\nx*z + z\ny*z + z\n"
        );
        let err = String::from_utf8(err).unwrap();
        assert!(err.contains("wall time"));
        assert!(err.contains("verified"));
    }

    #[test]
    fn gb_command_empty_and_bad_input() {
        let mut out = Vec::new();
        cmd_gb("ring 3 : x y z\n", false, false, &mut out, &mut io::sink()).unwrap();
        assert!(out.is_empty());
        let e = cmd_gb(
            "ring 3 : x y z\nx*w\n",
            false,
            false,
            &mut out,
            &mut io::sink(),
        )
        .unwrap_err();
        assert_eq!(e.exit_code(), EXIT_INPUT);
    }

    #[test]
    fn verify_command() {
        let mut out = Vec::new();
        cmd_verify("ring 3 : x y z\nx*y+z\ny*z+z\nx*z+z\n", &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "Groebner basis (reduced)\n"
        );
        let e = cmd_verify("ring 3 : x y z\nx*y+z\n", &mut io::sink()).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_VERIFY);
    }

    #[test]
    fn shidoku_command() {
        let mut out = Vec::new();
        cmd_shidoku("1.1.............", true, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "no solution\n");
        assert_eq!(
            cmd_shidoku("1.1", true, &mut io::sink())
                .unwrap_err()
                .exit_code(),
            EXIT_INPUT
        );
    }

    #[test]
    fn fixpoints_command() {
        let mut out = Vec::new();
        cmd_fixpoints(
            "ring 2\nx1 = x1*x2\nx2 = x1\n",
            true,
            &mut out,
            &mut io::sink(),
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "x1 + x2\nfixed points: 2\n11\n00\n"
        );
    }

    #[test]
    fn random_command_is_reproducible() {
        let args = [
            "random",
            "--vars",
            "5",
            "--polys",
            "3",
            "--max-terms",
            "3",
            "--max-degree",
            "2",
            "--seed",
            "9",
        ];
        let (code, a, _) = run_args(&args);
        assert_eq!(code, EXIT_OK);
        let (_, b, _) = run_args(&args);
        assert_eq!(a, b);
        assert!(a.starts_with("ring 5\n"));
        assert_eq!(a.lines().count(), 4);
        let (code, _, err) = run_args(&[
            "random",
            "--vars",
            "5",
            "--polys",
            "3",
            "--max-terms",
            "3",
            "--max-degree",
            "9",
            "--seed",
            "9",
        ]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("maximum degree"));
    }

    #[test]
    fn usage_errors_are_input_errors() {
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["gb"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["gb", "/nonexistent/file.poly"]).0, EXIT_INPUT);
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("Usage"));
    }
}
