//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification or test fails, 2 on
//! usage, input or parse errors. Results go to standard output and
//! diagnostics to standard error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::coeff::{parse_assignment, Assignment};
use crate::graded::{gr_dimensions, quotient_dimension, GradedTable};
use crate::morphism::{iso_check_low_arity, relations_map_into_ideal, GenMap};
use crate::presentation::{parse, parse_document, preset, Presentation, PRESET_NAMES};
use crate::proofs::{self, Options, VERIFICATIONS};
use crate::spanning::{ideal_span, same_ideal, Certificate, FreeBasis, IdealMembership};

/// Largest arity the tool will compute in.
pub const MAX_ARITY: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "opb", version, about = "Dimensions, ideals and identities of binary operads")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of the quotient in one arity or a range `A..B`.
    Dim(Common),
    /// Associated graded of the bracket filtration, by weight.
    Grdim(Common),
    /// Rank of the ideal and size of its spanning set.
    IdealRank(Common),
    /// Test whether an element lies in the ideal.
    Member {
        #[command(flatten)]
        common: Source,
        /// Element in the presentation's generators, e.g. `m(m(1,2),3) - m(1,m(2,3))`.
        element: String,
    },
    /// Dimensions and graded tables up to the given arity, compared with the
    /// built-in presentations.
    Classify(Common),
    /// Check the maps declared in a file: relations go into the target ideal,
    /// and two consecutive maps going opposite ways are tested as inverses.
    MapCheck {
        /// File with `operad` and `map` blocks.
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value = "4")]
        arity: String,
        #[arg(long)]
        allow_big: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a named verification, or `all`.
    Verify {
        name: String,
        /// Include the optional tier in `all`.
        #[arg(long)]
        optional: bool,
        /// Extend to arity 5 where supported.
        #[arg(long)]
        allow_big: bool,
        /// Report wall time.
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Syntax check of a presentation file.
    Parse {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Names of the built-in presentations and verifications.
    List,
}

#[derive(Args, Debug)]
struct Source {
    /// Built-in presentation.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    preset: Option<String>,
    /// Presentation file with a single `operad` block.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Parameter value `NAME=RATIONAL`; repeatable.
    #[arg(long = "set", value_name = "NAME=RATIONAL")]
    set: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// Arity `N` or range `A..B`.
    #[arg(long, default_value = "4")]
    arity: String,
    /// Allow arity 5.
    #[arg(long)]
    allow_big: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

/// A failure, with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn from_err(e: impl std::fmt::Display) -> Failure {
    usage(e.to_string())
}

/// Text accumulated for standard output, and whether the command's checks
/// passed.
struct Output {
    text: String,
    passed: bool,
}

impl Output {
    fn new() -> Self {
        Output {
            text: String::new(),
            passed: true,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn record(&mut self, v: serde_json::Value) {
        self.line(v.to_string());
    }
}

fn arity_range(spec: &str, allow_big: bool) -> Result<(usize, usize), Failure> {
    let parse_one = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("bad arity `{spec}`: expected N or A..B")))
    };
    let (lo, hi) = match spec.split_once("..") {
        Some((a, b)) => (parse_one(a)?, parse_one(b)?),
        None => {
            let n = parse_one(spec)?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        return Err(usage(format!("bad arity range `{spec}`")));
    }
    if hi > MAX_ARITY {
        return Err(usage(format!("arity {hi} is above the limit {MAX_ARITY}")));
    }
    if hi == MAX_ARITY && !allow_big {
        return Err(usage(format!("arity {MAX_ARITY} needs --allow-big")));
    }
    Ok((lo, hi))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn assignment(set: &[String]) -> Result<Assignment, Failure> {
    let mut a = Assignment::new();
    for s in set {
        let (k, v) = parse_assignment(s).map_err(|e| usage(format!("--set {s}: {e}")))?;
        if a.insert(k.clone(), v).is_some() {
            return Err(usage(format!("--set {k} given twice")));
        }
    }
    Ok(a)
}

fn load(src: &Source) -> Result<Presentation, Failure> {
    let p = match (&src.preset, &src.file) {
        (Some(name), None) => preset(name).map_err(from_err)?,
        (None, Some(path)) => {
            let text = read(path)?;
            parse(&text).map_err(|e| usage(format!("{}:{e}", path.display())))?
        }
        _ => return Err(usage("give exactly one of --preset and --file")),
    };
    let a = assignment(&src.set)?;
    if a.is_empty() {
        Ok(p)
    } else {
        p.evaluate(&a).map_err(from_err)
    }
}

fn require_rational(p: &Presentation) -> Result<(), Failure> {
    if p.parameters.is_empty() {
        Ok(())
    } else {
        Err(usage(format!(
            "presentation `{}` has free parameters ({}); fix them with --set",
            p.name,
            p.parameters.join(", ")
        )))
    }
}

fn cmd_dim(c: &Common) -> Result<Output, Failure> {
    let p = load(&c.source)?;
    let (lo, hi) = arity_range(&c.arity, c.allow_big)?;
    let mut out = Output::new();
    for n in lo..=hi {
        let d = quotient_dimension(&p, n).map_err(from_err)?;
        match c.source.format {
            Format::Text => {
                let mut s = if lo == hi {
                    format!("dim = {}", d.quotient())
                } else {
                    format!("dim({n}) = {}", d.quotient())
                };
                if let Some(cert) = &d.certificate {
                    let _ = write!(s, " (generic in {}; pivot product {cert})", p.parameters.join(", "));
                }
                out.line(s);
            }
            Format::Records => out.record(json!({
                "record": "dim",
                "presentation": p.name,
                "arity": n,
                "free": d.free,
                "ideal_rank": d.rank,
                "dim": d.quotient(),
                "parameters": p.parameters,
                "certificate": d.certificate.as_ref().map(|c| c.to_string()),
            })),
        }
    }
    Ok(out)
}

fn graded_records(out: &mut Output, name: &str, t: &GradedTable) {
    for r in &t.rows {
        out.record(json!({
            "record": "grdim",
            "presentation": name,
            "arity": t.arity,
            "weight": r.weight,
            "free": r.free,
            "leading": r.leading,
            "gr": r.gr,
        }));
    }
}

fn cmd_grdim(c: &Common) -> Result<Output, Failure> {
    let p = load(&c.source)?;
    require_rational(&p)?;
    let (lo, hi) = arity_range(&c.arity, c.allow_big)?;
    let mut out = Output::new();
    for n in lo..=hi {
        let t = gr_dimensions(&p, n).map_err(from_err)?;
        match c.source.format {
            Format::Text => {
                if lo != hi {
                    out.line(format!("arity {n}"));
                }
                out.line(t.to_string());
            }
            Format::Records => graded_records(&mut out, &p.name, &t),
        }
    }
    Ok(out)
}

fn cmd_ideal_rank(c: &Common) -> Result<Output, Failure> {
    let p = load(&c.source)?;
    let (lo, hi) = arity_range(&c.arity, c.allow_big)?;
    let mut out = Output::new();
    for n in lo.max(3)..=hi {
        let basis = FreeBasis::new(&p.generators, n).map_err(from_err)?;
        let span = ideal_span(&p, n).map_err(from_err)?;
        let d = quotient_dimension(&p, n).map_err(from_err)?;
        match c.source.format {
            Format::Text => out.line(format!(
                "arity {n}: rank = {} of {}, {} spanning elements",
                d.rank,
                basis.len(),
                span.len()
            )),
            Format::Records => out.record(json!({
                "record": "ideal-rank",
                "presentation": p.name,
                "arity": n,
                "free": basis.len(),
                "rank": d.rank,
                "spanning": span.len(),
            })),
        }
    }
    if lo < 3 && hi < 3 {
        out.line("the ideal is zero below arity 3");
    }
    Ok(out)
}

fn certificate_record(label: &str, c: &Certificate) -> serde_json::Value {
    json!({
        "record": "member",
        "label": label,
        "target": c.target.to_string(),
        "member": c.member,
        "verified": c.verified,
        "coordinates": c.coordinates.iter().map(|(a, g)| json!([a.to_string(), g])).collect::<Vec<_>>(),
        "residue": c.residue.to_string(),
    })
}

fn certificate_lines(out: &mut Output, label: &str, c: &Certificate) {
    let head = if label.is_empty() { String::new() } else { format!("{label}: ") };
    let pad = " ".repeat(label.len() - label.trim_start().len());
    if c.member {
        let tag = if c.verified { "" } else { " (coordinates did not re-verify)" };
        out.line(format!("{head}member{tag}"));
        for (a, g) in &c.coordinates {
            out.line(format!("{pad}  {a} * {g}"));
        }
    } else {
        out.line(format!("{head}not a member"));
        out.line(format!("{pad}  residue {}", c.residue));
    }
}

fn cmd_member(src: &Source, element: &str) -> Result<Output, Failure> {
    let p = load(src)?;
    require_rational(&p)?;
    // the element may carry its own parameters
    let e = parse_element_lenient(&p, element)?;
    let n = e.arity();
    if n > MAX_ARITY {
        return Err(usage(format!("arity {n} is above the limit {MAX_ARITY}")));
    }
    let tester = IdealMembership::new(&p, n).map_err(from_err)?;
    let parts: Vec<(String, Certificate)> = if e.parameters().is_empty() {
        vec![(String::new(), tester.certify(&e).map_err(from_err)?)]
    } else {
        tester
            .certify_identically(&e)
            .map_err(from_err)?
            .into_iter()
            .map(|(k, c)| (format!("coefficient of {k}"), c))
            .collect()
    };
    let mut out = Output::new();
    for (k, c) in &parts {
        out.passed &= c.member && c.verified;
        match src.format {
            Format::Text => certificate_lines(&mut out, k, c),
            Format::Records => out.record(certificate_record(k, c)),
        }
    }
    Ok(out)
}

/// Parses with every identifier that is not a generator taken as a
/// parameter.
fn parse_element_lenient(p: &Presentation, src: &str) -> Result<crate::term::Element, Failure> {
    use crate::term::{parse_element_at, Scope};
    use crate::text::Cursor;
    let scope = Scope {
        generators: &p.generators,
        parameters: None,
    };
    let result = Cursor::new(src).and_then(|mut cur| {
        let e = parse_element_at(&mut cur, &scope)?;
        cur.expect_eof()?;
        Ok(e)
    });
    result.map_err(|e| usage(format!("element:{e}")))
}

fn cmd_classify(c: &Common) -> Result<Output, Failure> {
    let p = load(&c.source)?;
    require_rational(&p)?;
    // a single arity means every arity up to it
    let (lo, hi) = match arity_range(&c.arity, c.allow_big)? {
        (a, b) if a == b => (2, b),
        r => r,
    };
    let profile = |q: &Presentation| -> Result<Vec<(usize, Vec<usize>)>, Failure> {
        (lo.max(2)..=hi)
            .map(|n| {
                let d = quotient_dimension(q, n).map_err(from_err)?.quotient();
                let g = if q.ideal_gens.is_empty() {
                    Vec::new()
                } else {
                    gr_dimensions(q, n).map_err(from_err)?.gr()
                };
                Ok((d, g))
            })
            .collect()
    };
    let mine = profile(&p)?;
    let dims: Vec<usize> = mine.iter().map(|(d, _)| *d).collect();
    let mut same = Vec::new();
    let mut same_dims = Vec::new();
    let mut same_graded = Vec::new();
    for name in PRESET_NAMES {
        let q = preset(name).map_err(from_err)?;
        if !q.parameters.is_empty() || q.name == p.name {
            continue;
        }
        if q.generators == p.generators && same_ideal(&p, &q).map_err(from_err)? {
            same.push(name.to_string());
            continue;
        }
        let theirs = profile(&q)?;
        if theirs.iter().map(|(d, _)| *d).eq(dims.iter().copied()) {
            same_dims.push(name.to_string());
            if !p.ideal_gens.is_empty() && theirs == mine {
                same_graded.push(name.to_string());
            }
        }
    }
    let mut out = Output::new();
    match c.source.format {
        Format::Text => {
            out.line(format!("presentation {}", p.name));
            for (n, (d, g)) in (lo.max(2)..=hi).zip(&mine) {
                let gr = if g.is_empty() {
                    String::new()
                } else {
                    let v: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                    format!(", gr ({})", v.join(", "))
                };
                out.line(format!("arity {n}: dim {d}{gr}"));
            }
            let list = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join(", ") };
            out.line(format!("same ideal as: {}", list(&same)));
            out.line(format!("same dimensions as: {}", list(&same_dims)));
            if !p.ideal_gens.is_empty() {
                out.line(format!("same graded tables as: {}", list(&same_graded)));
            }
        }
        Format::Records => out.record(json!({
            "record": "classify",
            "presentation": p.name,
            "arities": (lo.max(2)..=hi).collect::<Vec<_>>(),
            "dims": dims,
            "gr": mine.iter().map(|(_, g)| g.clone()).collect::<Vec<_>>(),
            "same_ideal": same,
            "same_dims": same_dims,
            "same_gr": same_graded,
        })),
    }
    Ok(out)
}

fn cmd_map_check(file: &Path, arity: &str, allow_big: bool, format: Format) -> Result<Output, Failure> {
    let (_, hi) = arity_range(arity, allow_big)?;
    let text = read(file)?;
    let doc = parse_document(&text).map_err(|e| usage(format!("{}:{e}", file.display())))?;
    if doc.maps.is_empty() {
        return Err(usage(format!("{}: no map blocks", file.display())));
    }
    let maps: Vec<GenMap> = doc
        .maps
        .iter()
        .map(GenMap::from_spec)
        .collect::<Result<_, _>>()
        .map_err(from_err)?;
    let mut out = Output::new();
    for f in &maps {
        let rep = relations_map_into_ideal(f).map_err(from_err)?;
        out.passed &= rep.passed();
        match format {
            Format::Text => {
                let verdict = if rep.passed() { "PASS" } else { "FAIL" };
                out.line(format!("map {}: {} -> {}: {verdict}", f.name, f.source.name, f.target.name));
                for (k, c) in &rep.entries {
                    certificate_lines(&mut out, &format!("  relation {k}"), c);
                }
            }
            Format::Records => {
                for (k, c) in &rep.entries {
                    let mut v = certificate_record(k, c);
                    v["record"] = json!("map-relation");
                    v["map"] = json!(f.name);
                    out.record(v);
                }
            }
        }
    }
    // consecutive maps going opposite ways are tested as an inverse pair
    let mut i = 0;
    while i + 1 < maps.len() {
        let (f, g) = (&maps[i], &maps[i + 1]);
        if g.source.name != f.target.name || g.target.name != f.source.name {
            i += 1;
            continue;
        }
        i += 2;
        let rep = iso_check_low_arity(f, g, hi).map_err(from_err)?;
        out.passed &= rep.passed();
        match format {
            Format::Text => {
                let verdict = if rep.passed() { "PASS" } else { "FAIL" };
                out.line(format!("inverse pair {} / {}: {verdict}", f.name, g.name));
                for (n, a, b) in &rep.dims {
                    out.line(format!("  arity {n}: {a} and {b}"));
                }
                for c in &rep.composite_failures {
                    out.line(format!("  composite not the identity on {c}"));
                }
            }
            Format::Records => out.record(json!({
                "record": "inverse-pair",
                "forward": f.name,
                "backward": g.name,
                "passed": rep.passed(),
                "dims": rep.dims,
                "composite_failures": rep.composite_failures,
            })),
        }
    }
    Ok(out)
}

fn cmd_verify(name: &str, optional: bool, allow_big: bool, timings: bool, format: Format) -> Result<Output, Failure> {
    let names: Vec<&str> = if name == "all" {
        VERIFICATIONS
            .iter()
            .filter(|(_, opt)| optional || !opt)
            .map(|(n, _)| *n)
            .collect()
    } else if proofs::is_known(name) {
        vec![name]
    } else {
        let known: Vec<&str> = VERIFICATIONS.iter().map(|(n, _)| *n).collect();
        return Err(usage(format!("unknown verification `{name}`; known: {}", known.join(", "))));
    };
    let opts = Options { allow_big };
    let mut out = Output::new();
    let mut passed = 0;
    for (n, r) in proofs::run_many(&names, &opts) {
        let r = r.map_err(|e| Failure {
            code: 1,
            message: format!("{n}: {e}"),
        })?;
        if r.passed() {
            passed += 1;
        }
        out.passed &= r.passed();
        match format {
            Format::Text => out.text.push_str(&r.render_text(timings)),
            Format::Records => out.record(r.record(timings)),
        }
    }
    if names.len() > 1 {
        match format {
            Format::Text => out.line(format!("summary: {passed}/{} passed", names.len())),
            Format::Records => out.record(json!({
                "record": "summary",
                "passed": passed,
                "total": names.len(),
            })),
        }
    }
    Ok(out)
}

fn cmd_parse(file: &Path, format: Format) -> Result<Output, Failure> {
    let text = read(file)?;
    let doc = parse_document(&text).map_err(|e| usage(format!("{}:{e}", file.display())))?;
    let mut out = Output::new();
    for p in &doc.operads {
        match format {
            Format::Text => out.line(format!(
                "operad {}: {} generators, {} relations, parameters [{}]",
                p.name,
                p.generators.len(),
                p.relations.len(),
                p.parameters.join(", ")
            )),
            Format::Records => out.record(json!({
                "record": "operad",
                "name": p.name,
                "generators": p.generators.iter().map(|g| json!([g.name(), g.symmetry().keyword()])).collect::<Vec<_>>(),
                "parameters": p.parameters,
                "ideal": p.ideal_gens,
                "relations": p.relations.iter().map(|r| json!([r.name, r.element.to_string()])).collect::<Vec<_>>(),
            })),
        }
    }
    for m in &doc.maps {
        match format {
            Format::Text => out.line(format!("map {}: {} -> {}", m.name, m.source.name, m.target.name)),
            Format::Records => out.record(json!({
                "record": "map",
                "name": m.name,
                "source": m.source.name,
                "target": m.target.name,
                "images": m.images.iter().map(|(g, e)| json!([g, e.to_string()])).collect::<Vec<_>>(),
            })),
        }
    }
    Ok(out)
}

fn cmd_list() -> Output {
    let mut out = Output::new();
    out.line("presets:");
    for n in PRESET_NAMES {
        out.line(format!("  {n}"));
    }
    out.line("verifications:");
    for (n, opt) in VERIFICATIONS {
        out.line(format!("  {n}{}", if *opt { " (optional)" } else { "" }));
    }
    out
}

fn dispatch(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Dim(c) => cmd_dim(c),
        Command::Grdim(c) => cmd_grdim(c),
        Command::IdealRank(c) => cmd_ideal_rank(c),
        Command::Member { common, element } => cmd_member(common, element),
        Command::Classify(c) => cmd_classify(c),
        Command::MapCheck {
            file,
            arity,
            allow_big,
            format,
        } => cmd_map_check(file, arity, *allow_big, *format),
        Command::Verify {
            name,
            optional,
            allow_big,
            timings,
            format,
        } => cmd_verify(name, *optional, *allow_big, *timings, *format),
        Command::Parse { file, format } => cmd_parse(file, *format),
        Command::List => Ok(cmd_list()),
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => {
            let _ = stdout.write_all(out.text.as_bytes());
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "opb: {}", f.message);
            f.code
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
