//! Command-line front end for `twogen-core`.
//!
//! Presentations are read from a file or stdin and written to a file or
//! stdout in the native text format, so subcommands compose in pipelines:
//!
//! ```text
//! twogen embed -i q.grp --mode torsion-free --bound 4 | twogen abelianize
//! ```
//!
//! Exit codes: 1 parse error or bad arguments, 2 instantiation error,
//! 3 failed verification, 4 search budget exhausted.

pub mod search;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use twogen_core::builtin::Builtin;
use twogen_core::embed::EmbedError;
use twogen_core::homsearch::{SearchError, DEFAULT_BUDGET};
use twogen_core::stallings::SubgroupGraph;
use twogen_core::universal::{hnn_comparison_word, stable_letter_word};
use twogen_core::{
    abelianization, check_assignment, embed, universal_word, verify_identities, Alphabet, EmbedOptions,
    EmbeddingMode, Format, InstantiateOptions, Presentation, SearchConfig, SearchOutcome, Word,
};

pub use search::parallel_search;

pub const EXIT_PARSE: i32 = 1;
pub const EXIT_INSTANTIATE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Environment variable overriding the default search budget.
pub const BUDGET_ENV: &str = "TWOGEN_SEARCH_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "twogen", version, about = "Embed countable group presentations into 2-generator groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rewrite a presentation over a[*] into one over x, y.
    Embed(EmbedArgs),
    /// Check identities, freeness or word lengths of the universal words.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Print a built-in presentation followed by its embedding.
    Examples(ExamplesArgs),
    /// Print the invariant factors of the abelianization.
    Abelianize(AbelianizeArgs),
    /// Search for permutation images of x, y giving a word a prescribed order.
    Homsearch(HomsearchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    General,
    TorsionFree,
}

impl From<ModeArg> for EmbeddingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::General => EmbeddingMode::General,
            ModeArg::TorsionFree => EmbeddingMode::TorsionFree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Native,
    Cas,
}

#[derive(Args, Debug)]
struct EmbedArgs {
    /// Input presentation; stdin when absent or `-`.
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Output file; stdout when absent or `-`.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "general")]
    mode: ModeArg,
    /// Largest parameter value used when expanding relator families.
    #[arg(long)]
    bound: Option<i64>,
    #[arg(long)]
    cyclic_reduce: bool,
    /// Drop relators equal to an earlier one up to inversion and rotation.
    #[arg(long)]
    dedupe: bool,
    #[arg(long, value_enum, default_value = "native")]
    format: FormatArg,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// The conjugation identities tying a_i, t_i, y and z together.
    Identities {
        #[arg(long, default_value_t = 50)]
        max_i: u32,
    },
    /// Stallings-graph rank of the first `count` universal words.
    Freeness {
        #[arg(long, value_enum, default_value = "general")]
        mode: ModeArg,
        #[arg(long, default_value_t = 30)]
        count: u32,
        /// Write the folded graph as an edge list.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Reduced lengths of the torsion-free, general and comparison words.
    Lengths {
        #[arg(long, default_value_t = 100)]
        max_i: u32,
    },
}

#[derive(Args, Debug)]
struct ExamplesArgs {
    /// free-abelian, rationals or pruefer
    name: String,
    /// The prime for `pruefer` (not checked for primality).
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value_t = 3)]
    bound: i64,
}

#[derive(Args, Debug)]
struct AbelianizeArgs {
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Needed only when the input still has relator families.
    #[arg(long)]
    bound: Option<i64>,
}

#[derive(Args, Debug)]
struct HomsearchArgs {
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Word over x, y whose image must have order exactly `--order`.
    #[arg(long)]
    word: String,
    #[arg(long)]
    order: u64,
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
    /// Relator and target evaluations allowed before giving up.
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Needed only when the input still has relator families.
    #[arg(long)]
    bound: Option<i64>,
}

/// A failed run: exit code plus a message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl fmt::Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

type Outcome = Result<(), Failure>;

fn io_err(path: &Path, e: io::Error) -> Failure {
    Failure::new(EXIT_PARSE, format!("{}: {e}", path.display()))
}

fn is_stdio(path: &Option<PathBuf>) -> Option<&Path> {
    path.as_deref().filter(|p| p.as_os_str() != "-")
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &Option<PathBuf>) -> Result<(String, String), Failure> {
        match is_stdio(path) {
            Some(p) => fs::read_to_string(p)
                .map(|t| (t, p.display().to_string()))
                .map_err(|e| io_err(p, e)),
            None => {
                let mut text = String::new();
                self.stdin
                    .read_to_string(&mut text)
                    .map_err(|e| Failure::new(EXIT_PARSE, format!("stdin: {e}")))?;
                Ok((text, "<stdin>".to_string()))
            }
        }
    }

    fn write(&mut self, path: &Option<PathBuf>, text: &str) -> Outcome {
        match is_stdio(path) {
            Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
            None => self.out(text),
        }
    }

    fn out(&mut self, text: &str) -> Outcome {
        self.stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(EXIT_PARSE, format!("stdout: {e}")))
    }

    fn note(&mut self, text: &str) {
        let _ = writeln!(self.stderr, "{text}");
    }

    fn presentation(&mut self, path: &Option<PathBuf>) -> Result<Presentation, Failure> {
        let (text, origin) = self.read(path)?;
        Presentation::parse(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{origin}: {e}")))
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_PARSE } else { 0 };
        }
    };
    let mut io = Io { stdin, stdout, stderr };
    let res = match cli.command {
        Command::Embed(a) => cmd_embed(&mut io, a),
        Command::Verify { check } => cmd_verify(&mut io, check),
        Command::Examples(a) => cmd_examples(&mut io, a),
        Command::Abelianize(a) => cmd_abelianize(&mut io, a),
        Command::Homsearch(a) => cmd_homsearch(&mut io, a),
    };
    match res {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(io.stderr, "error: {f}");
            f.code
        }
    }
}

fn embed_failure(e: EmbedError) -> Failure {
    match e {
        EmbedError::NotIndexed => Failure::new(EXIT_PARSE, e),
        EmbedError::Instantiate(_) => Failure::new(EXIT_INSTANTIATE, e),
    }
}

/// Bound to use for `p`: the given one, or any value when `p` has no families.
fn bound_for(p: &Presentation, bound: Option<i64>) -> Result<i64, Failure> {
    match (bound, p.has_schemas()) {
        (Some(b), _) => Ok(b),
        (None, false) => Ok(1),
        (None, true) => Err(Failure::new(
            EXIT_INSTANTIATE,
            "the presentation has relator families; pass --bound",
        )),
    }
}

/// Native text of `T_G` preceded by its metadata comment.
pub fn render_embedding(source: &Presentation, options: &EmbedOptions, format: Format) -> Result<(String, Vec<String>), EmbedError> {
    let e = embed(source, options)?;
    let body = e.presentation.render(format).expect("embedding has explicit relators");
    Ok((format!("{}\n{body}", e.metadata), e.notices))
}

fn cmd_embed(io: &mut Io, a: EmbedArgs) -> Outcome {
    let source = io.presentation(&a.input)?;
    let options = EmbedOptions {
        mode: a.mode.into(),
        bound: bound_for(&source, a.bound)?,
        dedupe: a.dedupe,
        cyclic_reduce: a.cyclic_reduce,
    };
    let format = match a.format {
        FormatArg::Native => Format::Native,
        FormatArg::Cas => Format::Cas,
    };
    let (text, notices) = render_embedding(&source, &options, format).map_err(embed_failure)?;
    for n in notices {
        io.note(&format!("note: {n}"));
    }
    io.write(&a.output, &text)
}

/// The source presentation, a blank line, then its embedding in the group's own mode.
pub fn examples_text(example: Builtin, bound: i64) -> Result<String, EmbedError> {
    let source = example.presentation();
    let (tg, _) = render_embedding(&source, &EmbedOptions::new(example.mode(), bound), Format::Native)?;
    Ok(format!("{}\n{tg}", source.render_native()))
}

fn cmd_examples(io: &mut Io, a: ExamplesArgs) -> Outcome {
    let example = Builtin::from_name(&a.name, a.p).ok_or_else(|| {
        Failure::new(
            EXIT_PARSE,
            format!("unknown example `{}`; expected free-abelian, rationals or pruefer", a.name),
        )
    })?;
    if a.p < 2 {
        return Err(Failure::new(EXIT_PARSE, "--p must be at least 2"));
    }
    let text = examples_text(example, a.bound).map_err(embed_failure)?;
    io.out(&text)
}

fn cmd_abelianize(io: &mut Io, a: AbelianizeArgs) -> Outcome {
    let p = io.presentation(&a.input)?;
    let bound = bound_for(&p, a.bound)?;
    let inv = abelianization(&p, bound).map_err(|e| match e {
        twogen_core::abelian::AbelianError::IndexedAlphabet => Failure::new(EXIT_PARSE, e),
        twogen_core::abelian::AbelianError::Instantiate(_) => Failure::new(EXIT_INSTANTIATE, e),
    })?;
    io.out(&format!("{inv}\n"))
}

fn explicit(p: Presentation, bound: Option<i64>) -> Result<Presentation, Failure> {
    if !p.has_schemas() {
        return Ok(p);
    }
    let bound = bound_for(&p, bound)?;
    let inst = p
        .instantiate(bound, &InstantiateOptions::default())
        .map_err(|e| Failure::new(EXIT_INSTANTIATE, e))?;
    Ok(inst.presentation)
}

fn cmd_homsearch(io: &mut Io, a: HomsearchArgs) -> Outcome {
    let p = explicit(io.presentation(&a.input)?, a.bound)?;
    let w = p
        .alphabet()
        .parse_word(&a.word)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("--word: {e}")))?;
    let config = SearchConfig {
        target_order: a.order,
        max_degree: a.max_degree,
        budget: a.budget,
    };
    let report = parallel_search(&p, &w, &config, a.jobs).map_err(|e| match e {
        SearchError::SchemasPresent => Failure::new(EXIT_INSTANTIATE, e),
        _ => Failure::new(EXIT_PARSE, e),
    })?;
    match report.outcome {
        SearchOutcome::Found(found) => {
            let order = found.eval(&w).order();
            let sound = check_assignment(&p, &found).unwrap_or(false) && order == a.order;
            if !sound {
                return Err(Failure::new(EXIT_VERIFY, "returned assignment failed re-verification"));
            }
            io.out(&format!(
                "degree {}\nx {}\ny {}\norder {order}\n",
                found.degree(),
                found.x,
                found.y
            ))
        }
        SearchOutcome::NotFound => io.out(&format!("not found up to degree {}\n", a.max_degree)),
        SearchOutcome::BudgetExhausted => Err(Failure::new(
            EXIT_BUDGET,
            format!(
                "budget of {} evaluations exhausted at degree {}",
                a.budget,
                report.visited.len()
            ),
        )),
    }
}

fn verify_failure(what: &str, detail: String) -> Failure {
    Failure::new(EXIT_VERIFY, format!("{what}: FAIL, {detail}"))
}

fn cmd_verify(io: &mut Io, check: VerifyCommand) -> Outcome {
    match check {
        VerifyCommand::Identities { max_i } => {
            let report = verify_identities(max_i);
            if let Some(c) = report.first_failure() {
                return Err(verify_failure("identities", format!("{} fails at i={}", c.identity, c.i)));
            }
            io.out(&format!(
                "identities: pass, {} checks for i=1..{max_i}\n",
                report.checks.len()
            ))
        }
        VerifyCommand::Freeness { mode, count, dump } => {
            let mode = EmbeddingMode::from(mode);
            let gens: Vec<Word> = (1..=count)
                .map(|i| universal_word(i, mode).map_err(|e| Failure::new(EXIT_PARSE, e)))
                .collect::<Result<_, _>>()?;
            let g = SubgroupGraph::build(&gens);
            if let Some(path) = dump {
                let f2 = Alphabet::f2();
                let text = g.to_edge_list(|gen| f2.symbol(gen).unwrap_or_default());
                fs::write(&path, text).map_err(|e| io_err(&path, e))?;
            }
            if g.rank() != gens.len() {
                return Err(verify_failure(
                    "freeness",
                    format!("rank {} for {} {mode} words", g.rank(), gens.len()),
                ));
            }
            io.out(&format!("freeness: pass, rank {} ({mode})\n", g.rank()))
        }
        VerifyCommand::Lengths { max_i } => {
            for i in 1..=max_i {
                let bar = universal_word(i, EmbeddingMode::TorsionFree).map_err(|e| Failure::new(EXIT_PARSE, e))?;
                let a = universal_word(i, EmbeddingMode::General).expect("i >= 1");
                let e = hnn_comparison_word(i).expect("i >= 1");
                let t = stable_letter_word(i).expect("i >= 1");
                let n = i as usize;
                let lens = [bar.len(), a.len(), e.len(), t.len()];
                if lens != [4 * n + 7, 4 * n + 10, 4 * n + 12, 2 * n + 2] {
                    return Err(verify_failure(
                        "lengths",
                        format!(
                            "at i={i}: |bar a_i|={} |a_i|={} |e_i|={} |t_i|={}",
                            lens[0], lens[1], lens[2], lens[3]
                        ),
                    ));
                }
            }
            io.out(&format!(
                "lengths: pass, 4i+7 < 4i+10 < 4i+12 for i=1..{max_i}\n"
            ))
        }
    }
}
