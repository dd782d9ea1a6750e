//! The `modtqft` command line.
//!
//! Exit codes: 0 success, 1 validation or modularity failure, 2 usage error,
//! 3 unsupported request.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_integer::Integer;

use crate::cyclo::{root_of_unity_order, to_complex, CycMatrix, CycScalar};
use crate::format::{builtin, parse_category_bytes, RawCategoryFile, BUILTIN_NAMES};
use crate::mcg::{
    lens_invariant, neg_continued_fraction, torus_bundle_invariant, torus_rep, MCGWord,
    ManifoldInvariant, McgError, Monodromy, TorusRep, SL2Z,
};
use crate::mtc::{
    admissibility, gauss_sums, s_tilde_of, verify_modular, verlinde_fusion, Category, MtcError,
};
use crate::statespaces::{surface_dim, SurfaceSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "modtqft",
    version,
    about = "Exact modular data, state spaces and 3-manifold invariants of modular tensor categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Category file, or `-` for standard input.
    file: Option<PathBuf>,
    /// Use a built-in category instead of a file.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Args, Debug)]
struct Float {
    /// Append decimal approximations with this many digits (default 6, at most 50).
    #[arg(long, value_name = "DIGITS", num_args = 0..=1, default_missing_value = "6")]
    float: Option<u32>,
}

#[derive(Args, Debug)]
struct Roots {
    /// Root index per factor (comma separated; default 0 everywhere).
    #[arg(long, value_name = "R0,R1,...", value_delimiter = ',')]
    root: Vec<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fusion and ribbon axioms and modularity.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Print the modular data, Gauss sums and structure admissibility.
    Info {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        float: Float,
    },
    /// Dimension of the state space of a surface.
    Dim {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        genus: u32,
        /// Boundary labels, comma separated.
        #[arg(long, value_delimiter = ',')]
        boundary: Vec<usize>,
    },
    /// Print the unnormalized S-matrix.
    Smatrix {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        float: Float,
    },
    /// Evaluate a word in S, T, A on the torus state space.
    Mcg {
        #[command(flatten)]
        input: Input,
        /// Word such as "S T^3 A^-1".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        roots: Roots,
        #[command(flatten)]
        float: Float,
    },
    /// Closed 3-manifold invariants.
    #[command(subcommand)]
    Invariant(InvariantCommand),
    /// Built-in categories.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand, Debug)]
enum InvariantCommand {
    /// Lens space L(P, Q).
    Lens {
        p: u64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        roots: Roots,
        #[command(flatten)]
        float: Float,
    },
    /// Mapping torus of an element of SL(2, Z).
    TorusBundle {
        #[command(flatten)]
        input: Input,
        /// Matrix entries a,b,c,d of (a b; c d).
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            conflicts_with = "word"
        )]
        matrix: Option<Vec<i64>>,
        /// Monodromy as a word in S, T, A.
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
        /// Evaluate matrix input even when the representation is only projective.
        #[arg(long)]
        allow_framing: bool,
        #[command(flatten)]
        roots: Roots,
        #[command(flatten)]
        float: Float,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// List built-in names.
    List,
    /// Print a built-in category in the file format.
    Export { name: String },
}

/// A failed invocation: exit code and message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<MtcError> for Failure {
    fn from(e: MtcError) -> Self {
        let code = match e {
            MtcError::RootEnumerationUnsupported { .. } => EXIT_UNSUPPORTED,
            MtcError::RootIndexOutOfRange { .. } | MtcError::RootIndexCount { .. } => EXIT_USAGE,
            MtcError::InvalidLabel(_) => EXIT_USAGE,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<McgError> for Failure {
    fn from(e: McgError) -> Self {
        match e {
            McgError::Mtc(inner) => inner.into(),
            McgError::AnomalousMatrixInput { .. } => Failure::new(EXIT_UNSUPPORTED, e.to_string()),
            McgError::Arithmetic(_) | McgError::Overflow => {
                Failure::new(EXIT_UNSUPPORTED, e.to_string())
            }
            _ => Failure::new(EXIT_USAGE, e.to_string()),
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let mut out = String::new();
    let result = dispatch(cli.command, stdin, &mut out, stderr);
    let _ = stdout.write_all(out.as_bytes());
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<RawCategoryFile, Failure> {
    match (&input.file, &input.builtin) {
        (Some(_), Some(_)) => Err(Failure::new(
            EXIT_USAGE,
            "give either a FILE or --builtin, not both",
        )),
        (None, None) => Err(Failure::new(
            EXIT_USAGE,
            "no input: give a FILE, `-` or --builtin NAME",
        )),
        (None, Some(name)) => builtin(name).map_err(|e| Failure::new(EXIT_USAGE, e.to_string())),
        (Some(path), None) => {
            let bytes = if path.as_os_str() == "-" {
                let mut buf = Vec::new();
                stdin
                    .read_to_end(&mut buf)
                    .map_err(|e| Failure::new(EXIT_USAGE, format!("reading stdin: {e}")))?;
                buf
            } else {
                std::fs::read(path)
                    .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?
            };
            parse_category_bytes(&bytes).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))
        }
    }
}

fn load_category(
    input: &Input,
    stdin: &mut dyn Read,
) -> Result<(RawCategoryFile, Category), Failure> {
    let raw = load(input, stdin)?;
    let c = raw.to_category()?;
    Ok((raw, c))
}

#[derive(Clone, Copy)]
/// How scalars are printed: `z` means `ζ_base` unless tagged otherwise.
struct Style {
    float: Option<u32>,
    base: u32,
}

impl Style {
    fn new(float: &Float, raw: &RawCategoryFile) -> Self {
        Style {
            float: float.float,
            base: raw.conductor,
        }
    }

    fn field_tag(&self, conductor: u32) -> String {
        if conductor == 1 || conductor == self.base {
            String::new()
        } else {
            format!(" [z = zeta_{conductor}]")
        }
    }
}

fn scalar(x: &CycScalar, style: &Style) -> Result<String, Failure> {
    let field = style.base.lcm(&x.conductor());
    let x = if x.is_rational() {
        x.clone()
    } else {
        x.embed(field).unwrap_or_else(|_| x.clone())
    };
    let tag = if x.is_rational() {
        String::new()
    } else {
        style.field_tag(x.conductor())
    };
    match style.float {
        None => Ok(format!("{x}{tag}")),
        Some(d) => {
            let approx = to_complex(&x, d).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            Ok(format!("{x}{tag}  ~ {approx}"))
        }
    }
}

fn write_matrix(out: &mut String, m: &CycMatrix, style: &Style) -> Result<(), Failure> {
    let field = style.base.lcm(&m.conductor());
    let tag = style.field_tag(field);
    if !tag.is_empty() && m.entries().iter().any(|x| !x.is_rational()) {
        let _ = writeln!(out, " {tag}");
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .map(|x| {
                x.embed(field)
                    .map_or_else(|_| x.to_string(), |e| e.to_string())
            })
            .collect();
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
    if let Some(d) = style.float {
        let _ = writeln!(out, "  approximately:");
        for i in 0..m.rows() {
            let row = m
                .row(i)
                .iter()
                .map(|x| to_complex(x, d).map(|c| c.to_string()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            let _ = writeln!(out, "  [{}]", row.join(", "));
        }
    }
    Ok(())
}

fn rep_for<'a>(c: &'a Category, roots: &Roots) -> Result<TorusRep<'a>, Failure> {
    let indices = if roots.root.is_empty() {
        vec![0; c.factors().len()]
    } else {
        roots.root.clone()
    };
    Ok(torus_rep(c, &indices)?)
}

fn write_invariant(
    out: &mut String,
    rep: &TorusRep<'_>,
    value: &ManifoldInvariant,
    style: &Style,
) -> Result<(), Failure> {
    for (f, (unit, v)) in rep.factors().iter().zip(&value.per_factor) {
        let _ = writeln!(
            out,
            "factor {unit}: p = {}",
            scalar(
                &f.p,
                &Style {
                    float: None,
                    ..*style
                }
            )?
        );
        let _ = writeln!(out, "factor {unit}: {}", scalar(v, style)?);
    }
    let _ = writeln!(out, "total: {}", scalar(&value.total, style)?);
    Ok(())
}

fn dispatch(
    command: Command,
    stdin: &mut dyn Read,
    out: &mut String,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    match command {
        Command::Validate { input } => {
            let (raw, c) = load_category(&input, stdin)?;
            let report = verify_modular(&c);
            if let Some(w) = report.witness.filter(|_| !report.modular) {
                return Err(Failure::new(
                    EXIT_INVALID,
                    format!("{}: not modular ({w})", raw.name),
                ));
            }
            let table = verlinde_fusion(&c)?;
            let r = c.rank();
            for (idx, &n) in table.iter().enumerate() {
                let (i, j, k) = (idx / (r * r), (idx / r) % r, idx % r);
                if n != c.n(i, j, k) {
                    return Err(Failure::new(
                        EXIT_INVALID,
                        format!("verlinde-mismatch at ({i}, {j}, {k}): reconstructed {n}"),
                    ));
                }
            }
            let _ = writeln!(
                out,
                "OK: {} (rank {}, {} factor{}, modular)",
                raw.name,
                r,
                c.factors().len(),
                if c.factors().len() == 1 { "" } else { "s" }
            );
        }
        Command::Info { input, float } => info(&input, &float, stdin, out)?,
        Command::Dim {
            input,
            genus,
            boundary,
        } => {
            let (_, c) = load_category(&input, stdin)?;
            let spec = SurfaceSpec::new(genus, boundary);
            let d = surface_dim(&c, &spec).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            let labels: Vec<String> = spec.boundary.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "genus {genus}, boundary [{}]: {d}", labels.join(", "));
        }
        Command::Smatrix { input, float } => {
            let (raw, c) = load_category(&input, stdin)?;
            let s = s_tilde_of(&c)?;
            let _ = writeln!(out, "S-tilde:");
            write_matrix(out, &s, &Style::new(&float, &raw))?;
        }
        Command::Mcg {
            input,
            word,
            roots,
            float,
        } => {
            let (raw, c) = load_category(&input, stdin)?;
            let style = Style::new(&float, &raw);
            let rep = rep_for(&c, &roots)?;
            let w = MCGWord::parse(&word)?;
            let m = rep.evaluate_word(&w)?;
            for f in rep.factors() {
                let p = scalar(
                    &f.p,
                    &Style {
                        float: None,
                        ..style
                    },
                )?;
                let _ = writeln!(out, "factor {}: p = {p}", f.unit);
            }
            let _ = writeln!(out, "word: {w}");
            write_matrix(out, &m, &style)?;
        }
        Command::Invariant(InvariantCommand::Lens {
            p,
            q,
            input,
            roots,
            float,
        }) => {
            let (raw, c) = load_category(&input, stdin)?;
            let frac = neg_continued_fraction(p, q)?;
            let rep = rep_for(&c, &roots)?;
            let value = lens_invariant(&rep, p, q)?;
            let terms: Vec<String> = frac.terms.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "lens space L({p},{})", frac.q);
            let _ = writeln!(out, "continued fraction: [{}]", terms.join(", "));
            write_invariant(out, &rep, &value, &Style::new(&float, &raw))?;
        }
        Command::Invariant(InvariantCommand::TorusBundle {
            input,
            matrix,
            word,
            allow_framing,
            roots,
            float,
        }) => {
            let monodromy = match (matrix, word) {
                (Some(m), None) => {
                    let [a, b, c, d] = m[..] else {
                        return Err(Failure::new(
                            EXIT_USAGE,
                            "--matrix needs exactly four entries a,b,c,d",
                        ));
                    };
                    Monodromy::Matrix(SL2Z::new(a, b, c, d)?)
                }
                (None, Some(w)) => Monodromy::Word(MCGWord::parse(&w)?),
                _ => {
                    return Err(Failure::new(
                        EXIT_USAGE,
                        "give exactly one of --matrix or --word",
                    ))
                }
            };
            let (raw, c) = load_category(&input, stdin)?;
            let rep = rep_for(&c, &roots)?;
            let b = torus_bundle_invariant(&rep, &monodromy, allow_framing)?;
            if b.framing_dependent {
                let _ = writeln!(
                    stderr,
                    "warning: the genus-one representation is projective; the value depends on the word"
                );
            }
            let _ = writeln!(out, "word: {}", b.word);
            write_invariant(out, &rep, &b.value, &Style::new(&float, &raw))?;
        }
        Command::Catalog(CatalogCommand::List) => {
            for name in BUILTIN_NAMES {
                let _ = writeln!(out, "{name}");
            }
        }
        Command::Catalog(CatalogCommand::Export { name }) => {
            let raw = builtin(&name).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            out.push_str(&raw.serialize());
        }
    }
    Ok(())
}

fn info(
    input: &Input,
    float: &Float,
    stdin: &mut dyn Read,
    out: &mut String,
) -> Result<(), Failure> {
    let (raw, c) = load_category(input, stdin)?;
    let style = &Style::new(float, &raw);
    let _ = writeln!(out, "name: {}", raw.name);
    let _ = writeln!(out, "conductor: {}", raw.conductor);
    let _ = writeln!(out, "rank: {}", c.rank());
    let _ = writeln!(out, "factors: {}", c.factors().len());
    for f in c.factors() {
        let _ = writeln!(out, "  {f}");
    }
    for i in 0..c.rank() {
        let _ = writeln!(
            out,
            "label {i}: dual {}, dim {}, twist {}",
            c.dual(i),
            scalar(c.qdim(i), style)?,
            scalar(c.twist(i), style)?
        );
    }
    match s_tilde_of(&c) {
        Ok(s) => {
            let _ = writeln!(out, "S-tilde:");
            write_matrix(out, &s, style)?;
        }
        Err(e) => {
            let _ = writeln!(out, "S-tilde: {e}");
        }
    }
    for (fi, f) in c.factors().iter().enumerate() {
        let g = gauss_sums(&c, fi);
        let _ = writeln!(out, "factor {}:", f.unit);
        let _ = writeln!(out, "  p+: {}", scalar(&g.p_plus, style)?);
        let _ = writeln!(out, "  p-: {}", scalar(&g.p_minus, style)?);
        let anomaly = match root_of_unity_order(&g.anomaly) {
            Some(r) => format!("{} = {r}", g.anomaly),
            None => format!("{} (not a root of unity)", g.anomaly),
        };
        let _ = writeln!(out, "  anomaly: {anomaly}");
        let _ = writeln!(out, "  global dimension: {}", scalar(&g.global_dim, style)?);
    }
    let report = verify_modular(&c);
    match &report.witness {
        Some(w) if !report.modular => {
            let _ = writeln!(out, "modular: no ({w})");
            return Ok(());
        }
        _ => {
            let _ = writeln!(out, "modular: yes");
        }
    }
    let r = match admissibility(&c) {
        Ok(r) => r,
        Err(e @ MtcError::RootEnumerationUnsupported { .. }) => {
            let _ = writeln!(out, "structures: {e}");
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let yes_no = |b: bool| if b { "admissible" } else { "not admissible" };
    let _ = writeln!(out, "oriented: {}", yes_no(r.oriented_admissible()));
    if let Some(ps) = &r.oriented {
        for (f, p) in c.factors().iter().zip(ps) {
            let _ = writeln!(out, "  factor {}: p = {}", f.unit, scalar(p, style)?);
        }
    }
    let _ = writeln!(out, "csig: admissible");
    for f in &r.factors {
        for (idx, choice) in f.csig.iter().enumerate() {
            let _ = writeln!(
                out,
                "  factor {} root {idx}: a = {}, p = {}",
                f.unit,
                choice.root,
                scalar(&choice.p, style)?
            );
        }
    }
    let _ = writeln!(out, "signature: {}", yes_no(r.signature_admissible()));
    if let Some(sig) = &r.signature {
        for (idx, s) in sig.iter().enumerate() {
            let ps =
                s.p.iter()
                    .map(|p| scalar(p, style))
                    .collect::<Result<Vec<_>, _>>()?;
            let _ = writeln!(out, "  root {idx}: a = {}, p = [{}]", s.root, ps.join(", "));
        }
    }
    let _ = writeln!(out, "p1: admissible");
    for f in &r.factors {
        for (idx, choice) in f.p1.iter().enumerate() {
            let _ = writeln!(
                out,
                "  factor {} root {idx}: a = {}, p = {}",
                f.unit,
                choice.root,
                scalar(&choice.p, style)?
            );
        }
    }
    Ok(())
}
