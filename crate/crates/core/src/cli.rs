//! The `artin-flats` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure,
//! 3 search budget exhausted. `ARTIN_FLATS_THREADS` sets the worker count.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::dihedral::DihedralGroup;
use crate::girth::girth_sweep;
use crate::polarisation::{check_rigidity, enumerate_admissible, induced};
use crate::presentation::{ArtinPresentation, Word};
use crate::prover::{prove_equal, prove_trivial, replay, Budget, Certificate};
use crate::render::{render_svg, RenderSpec};
use crate::subgroups::{abelian_images_independent, family, instances, klein_pair, verify_commute, FlatCase, FlatFamily};
use crate::tiling::{build_patch, consistent_directions, type_preserving_lattice, TilingPatch, TriangleType, Vec2};

pub const THREADS_VAR: &str = "ARTIN_FLATS_THREADS";

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
    Budget(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Budget(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "artin-flats", version, about = "Dihedral word problems, polarised tilings and flat subgroups of two-dimensional Artin groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Garside normal form of a word in a two-generator Artin group.
    Normalize {
        /// Presentation file (JSON or text).
        presentation: PathBuf,
        /// Word such as "s1 t-2 s1".
        word: String,
    },
    /// Compare the girth classifier with the normal-form oracle on all alternating words.
    GirthSweep {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Enumerate admissible polarisations of a patch.
    Polarisations {
        #[command(flatten)]
        patch: PatchArgs,
        /// Find a rigidity witness for every polarisation.
        #[arg(long)]
        check_rigidity: bool,
        /// Print the polarisations as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Draw a patch with a consistent direction assignment and its induced polarisation.
    Render {
        #[command(flatten)]
        patch: PatchArgs,
        /// Largest edge length label allowed in the direction assignment.
        #[arg(long, default_value_t = 2)]
        max_length: u32,
        /// Which consistent direction assignment to draw.
        #[arg(long, default_value_t = 0)]
        direction_index: usize,
        #[arg(long)]
        no_types: bool,
        #[arg(long)]
        no_directions: bool,
        #[arg(long)]
        no_long_edges: bool,
        #[arg(long)]
        no_polarisation: bool,
        /// Draw the bare tiling only.
        #[arg(long)]
        bare: bool,
        #[arg(long, default_value_t = 600)]
        width: u32,
        #[arg(long, default_value_t = 600)]
        height: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a certificate that `u` equals `v` (or is trivial).
    Prove {
        presentation: PathBuf,
        u: String,
        v: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file.
    Replay { certificate: PathBuf },
    /// List (and optionally certify) instances of a flat family.
    Families {
        /// One of b, c, d, e, f.
        #[arg(long)]
        case: char,
        /// Largest absolute bullet exponent.
        #[arg(long, default_value_t = 1)]
        bound: i64,
        /// Largest number of star factors.
        #[arg(long, default_value_t = 1)]
        factors: usize,
        /// Certify that each pair commutes.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Certify the Klein bottle relation for `g' = t^k s r^-k s^-1`.
    Klein {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct PatchArgs {
    /// square, 333, 244 or 236.
    #[arg(long)]
    triangle: String,
    /// Multiple of the type-preserving lattice.
    #[arg(long, default_value_t = 1)]
    size: i64,
    /// Explicit lattice "a,b;c,d" in chart coordinates (overrides --size).
    #[arg(long, allow_hyphen_values = true)]
    lattice: Option<String>,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long, default_value_t = 40)]
    max_len: usize,
    #[arg(long, default_value_t = 300_000)]
    max_states: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { max_len: self.max_len, max_states: self.max_states }
    }
}

fn triangle_type(name: &str) -> Result<TriangleType, Failure> {
    let tt = match name {
        "square" => TriangleType::Square,
        "333" => TriangleType::euclidean(3, 3, 3).map_err(usage)?,
        "244" => TriangleType::euclidean(2, 4, 4).map_err(usage)?,
        "236" => TriangleType::euclidean(2, 3, 6).map_err(usage)?,
        other => return Err(Failure::Usage(format!("unknown tiling `{other}` (square, 333, 244, 236)"))),
    };
    Ok(tt)
}

fn parse_lattice(text: &str) -> Result<[Vec2; 2], Failure> {
    let rows: Vec<Vec<i64>> = text
        .split(';')
        .map(|r| r.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("bad lattice `{text}`: {e}")))?;
    match rows.as_slice() {
        [a, b] if a.len() == 2 && b.len() == 2 => Ok([[a[0], a[1]], [b[0], b[1]]]),
        _ => Err(Failure::Usage(format!("lattice `{text}` must look like a,b;c,d"))),
    }
}

fn build(args: &PatchArgs) -> Result<TilingPatch, Failure> {
    let tt = triangle_type(&args.triangle)?;
    let lattice = match &args.lattice {
        Some(text) => parse_lattice(text)?,
        None if args.size >= 1 => type_preserving_lattice(tt).map(|v| [v[0] * args.size, v[1] * args.size]),
        None => return Err(Failure::Usage("--size must be positive".into())),
    };
    build_patch(tt, lattice).map_err(usage)
}

fn read_presentation(path: &Path) -> Result<ArtinPresentation, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    ArtinPresentation::parse(&text).map_err(usage)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value.parse().map_err(|_| Failure::Usage(format!("{THREADS_VAR} must be a number, got `{value}`")))?;
    // A pool may already exist when called twice in one process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match configure_threads().and_then(|()| dispatch(cli.command)) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Normalize { presentation, word } => normalize(&presentation, &word),
        Command::GirthSweep { m, bound } => sweep(m, bound),
        Command::Polarisations { patch, check_rigidity, json } => polarisations(&patch, check_rigidity, json),
        Command::Render {
            patch,
            max_length,
            direction_index,
            no_types,
            no_directions,
            no_long_edges,
            no_polarisation,
            bare,
            width,
            height,
            out,
        } => {
            let spec = RenderSpec {
                types: !(bare || no_types),
                directions: !(bare || no_directions),
                long_edges: !(bare || no_long_edges),
                polarisation: !(bare || no_polarisation),
                width,
                height,
            };
            render(&patch, max_length, direction_index, &spec, out.as_deref())
        }
        Command::Prove { presentation, u, v, budget, out } => {
            prove(&presentation, &u, v.as_deref(), budget.budget(), out.as_deref())
        }
        Command::Replay { certificate } => replay_file(&certificate),
        Command::Families { case, bound, factors, verify, budget } => {
            families(case, bound, factors, verify.then(|| budget.budget()))
        }
        Command::Klein { k, budget, out } => klein(k, budget.budget(), out.as_deref()),
    }
}

fn normalize(path: &Path, word: &str) -> Result<(), Failure> {
    let p = read_presentation(path)?;
    if p.rank() != 2 {
        return Err(Failure::Usage(format!("normalize needs two generators, got {}", p.rank())));
    }
    let group = DihedralGroup::from_presentation(&p, 0, 1).map_err(usage)?;
    let w = p.parse_word(word).map_err(usage)?;
    let nf = group.normal_form(&w).map_err(usage)?;
    println!("{nf}");
    println!("{}", p.format_word(&group.to_word(&nf)));
    Ok(())
}

fn sweep(m: u32, bound: u32) -> Result<(), Failure> {
    if !(2..=6).contains(&m) {
        return Err(Failure::Usage(format!("m must be in 2..=6, got {m}")));
    }
    if !(1..=3).contains(&bound) {
        return Err(Failure::Usage(format!("bound must be in 1..=3, got {bound}")));
    }
    let r = girth_sweep(m, bound).map_err(usage)?;
    println!("m={} bound={} words={} trivial={} matched={}", r.m, r.bound, r.total, r.trivial, r.matched);
    println!("agreement {}/{}", r.agree, r.total);
    if r.all_agree() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{} disagreements", r.total - r.agree)))
    }
}

fn polarisations(args: &PatchArgs, rigidity: bool, json: bool) -> Result<(), Failure> {
    let patch = build(args)?;
    let all = enumerate_admissible(&patch);
    if json {
        let list: Vec<serde_json::Value> = all.iter().map(|l| l.to_json(&patch)).collect();
        println!("{}", serde_json::to_string_pretty(&list).expect("JSON"));
    } else {
        println!(
            "vertices={} edges={} cells={} admissible={}",
            patch.vertices.len(),
            patch.edges.len(),
            patch.cells.len(),
            all.len()
        );
    }
    if rigidity {
        let failures = all.par_iter().filter(|l| check_rigidity(&patch, l).is_err()).count();
        if !json {
            println!("rigid {}/{}", all.len() - failures, all.len());
        }
        if failures > 0 {
            return Err(Failure::Verification(format!("{failures} polarisations without a rigidity witness")));
        }
    }
    Ok(())
}

fn render(args: &PatchArgs, max_length: u32, index: usize, spec: &RenderSpec, out: Option<&Path>) -> Result<(), Failure> {
    let patch = build(args)?;
    let mut all = consistent_directions(&patch, max_length);
    if index >= all.len() {
        return Err(Failure::Usage(format!("direction index {index} out of range ({} assignments)", all.len())));
    }
    let d = all.swap_remove(index);
    let l = induced(&patch, &d).map_err(|e| Failure::Verification(e.to_string()))?;
    let svg = render_svg(&patch, Some(&d), Some(&l), spec);
    match out {
        Some(path) => fs::write(path, svg).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{svg}");
            Ok(())
        }
    }
}

fn prove(path: &Path, u: &str, v: Option<&str>, budget: Budget, out: Option<&Path>) -> Result<(), Failure> {
    let p = read_presentation(path)?;
    let u = parse_word_or_commutator(&p, u)?;
    let found = match v {
        Some(v) => prove_equal(&p, &u, &parse_word_or_commutator(&p, v)?, budget),
        None => prove_trivial(&p, &u, budget),
    }
    .map_err(usage)?;
    let cert = found.ok_or_else(|| Failure::Budget("no certificate within the budget".into()))?;
    eprintln!("certificate with {} moves", cert.moves.len());
    write_or_print(out, &cert.to_json())
}

/// A word, or `[u, v]` meaning `u v u^-1 v^-1` with `u` and `v` given as
/// words or letter strings like `strstr`.
fn parse_word_or_commutator(p: &ArtinPresentation, text: &str) -> Result<Word, Failure> {
    let text = text.trim();
    if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let (a, b) = inner.split_once(',').ok_or_else(|| Failure::Usage(format!("bad commutator `{text}`")))?;
        let (a, b) = (parse_word_or_commutator(p, a)?, parse_word_or_commutator(p, b)?);
        return Ok(a.concat(&b).concat(&a.invert()).concat(&b.invert()));
    }
    if let Ok(w) = p.parse_word(text) {
        return Ok(w);
    }
    // Letter strings: every character a one-letter generator name.
    let mut syl = Vec::new();
    for c in text.chars() {
        let g = p.index_of(&c.to_string()).map_err(|_| Failure::Usage(format!("cannot parse word `{text}`")))?;
        syl.push((g, 1));
    }
    Ok(Word::reduce(syl))
}

fn replay_file(path: &Path) -> Result<(), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let cert = Certificate::from_json(&text).map_err(usage)?;
    if replay(&cert) {
        println!("valid: {} moves", cert.moves.len());
        Ok(())
    } else {
        println!("invalid");
        Err(Failure::Verification("certificate does not replay".into()))
    }
}

fn families(case: char, bound: i64, factors: usize, verify: Option<Budget>) -> Result<(), Failure> {
    let case = match FlatCase::from_letter(case) {
        Some(FlatCase::A) => {
            return Err(Failure::Usage("case (a) depends on a choice of parabolic subgroups; use the library".into()))
        }
        Some(c) => c,
        None => return Err(Failure::Usage(format!("unknown case `{case}`"))),
    };
    if bound < 1 || factors < 1 {
        return Err(Failure::Usage("--bound and --factors must be positive".into()));
    }
    let fam = FlatFamily::triangle(case).expect("triangle case");
    let p = &fam.presentation;
    let all = instances(case, bound, factors);
    let results: Vec<(String, Option<bool>, bool)> = all
        .par_iter()
        .map(|f| {
            let (w1, w2) = family(p, case, f).expect("generated instance");
            let certified = verify.map(|b| verify_commute(p, &w1, &w2, b).is_ok_and(|c| replay(&c)));
            let line = format!("{:?}\t{}\t{}", f, p.format_word(&w1), p.format_word(&w2));
            (line, certified, abelian_images_independent(&w1, &w2, p.rank()))
        })
        .collect();
    let mut missing = 0;
    let mut degenerate = 0;
    for (line, certified, independent) in &results {
        let status = match certified {
            Some(true) => "commutes",
            Some(false) => "not-certified",
            None => "-",
        };
        println!("{line}\t{status}\t{}", if *independent { "rank2" } else { "rank<2" });
        missing += (*certified == Some(false)) as usize;
        degenerate += (!independent) as usize;
    }
    println!("case ({}) instances={} abelian-images-rank<2={degenerate}", case.letter(), results.len());
    if verify.is_some() {
        println!("certified {}/{}", results.len() - missing, results.len());
        if missing > 0 {
            return Err(Failure::Budget(format!("{missing} instances without a certificate")));
        }
    }
    Ok(())
}

fn klein(k: i64, budget: Budget, out: Option<&Path>) -> Result<(), Failure> {
    let pair = klein_pair(k, budget).map_err(|e| match e {
        crate::subgroups::SubgroupError::BudgetExhausted => Failure::Budget(e.to_string()),
        other => usage(other),
    })?;
    let p = &pair.relation.presentation;
    if !replay(&pair.relation) {
        return Err(Failure::Verification("relation certificate does not replay".into()));
    }
    println!("a = {}", p.format_word(&pair.a));
    println!("b = {}", p.format_word(&pair.b));
    println!("a^-1 b a = b^-1: {} moves", pair.relation.moves.len());
    match pair.squared_relation() {
        Some(sq) if replay(&sq) => println!("a^-2 b a^2 = b: {} moves", sq.moves.len()),
        _ => return Err(Failure::Verification("composite certificate does not replay".into())),
    }
    if let Some(path) = out {
        write_or_print(Some(path), &pair.relation.to_json())?;
    }
    Ok(())
}
