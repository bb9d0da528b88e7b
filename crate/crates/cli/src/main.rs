//! `rbalg`: command-line front end for the Rota-Baxter toolkit.
//!
//! Algebra arguments are file paths or `@LABEL` for a catalog entry.
//! Operator arguments are file paths or `@FAMILY` (e.g. `@B6.2`) for a
//! concrete catalog row. Exit codes: 0 success, 1 mathematical failure,
//! 2 input or format error, 3 budget exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use rbalg::catalog::{self, CatalogEntry};
use rbalg::classify::{catalog_matches, iso_invariants, IsoSearch};
use rbalg::constructions::{
    dendriform_from_rb, dendriform_pre_lie, double_product, gs_pre_lie, induced_pre_lie, iterate_double,
    novikov_from_derivation,
};
use rbalg::format::{parse_algebra, parse_family, parse_operator, write_algebra, write_family};
use rbalg::operators::rb_failure;
use rbalg::polysolve::{default_grid, grid_enumerate};
use rbalg::reproduce::{reproduce_entries, ReproduceOptions, TableId};
use rbalg::{
    buchberger, classification_cover, generate_system, parse_scalar, solve_zero_dim, Algebra, AlgebraError, Assignment,
    Budget, CatalogError, ClassifyError, FormatError, GaussRat, MonomialOrder, Operator, OperatorError,
    OperatorFamily, ReproduceError, ScalarError, SolveError, Symbol, ZeroDimResult,
};

#[derive(Parser)]
#[command(name = "rbalg", version, about = "Rota-Baxter operators on low-dimensional algebras")]
struct Cli {
    /// Gröbner reduction budget (overrides RBALG_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Emit CSV instead of plain text where supported.
    #[arg(long, global = true)]
    csv: bool,
    /// Value for a symbolic structure constant, e.g. `k=2`. Repeatable.
    #[arg(long = "param", global = true, value_name = "NAME=VALUE")]
    params: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Rota-Baxter relation for an operator.
    Verify {
        algebra: String,
        operator: String,
        #[arg(long, default_value = "1")]
        weight: String,
    },
    /// Solve the Rota-Baxter system of an algebra.
    Solve {
        algebra: String,
        /// Comma-separated grid values; enumerates instead of solving.
        #[arg(long, conflicts_with = "symbolic", allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long)]
        symbolic: bool,
        /// Catalog label or family file to check grid solutions against.
        #[arg(long)]
        families: Option<String>,
        #[arg(long, default_value = "1")]
        weight: String,
    },
    /// Build an algebra from an algebra and an operator.
    Induce {
        algebra: String,
        operator: String,
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long, default_value = "1")]
        weight: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Double product x.y = R(x)y + xR(y) + xy.
    Double {
        algebra: String,
        operator: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dendriform products of a Rota-Baxter operator.
    Dendriform {
        algebra: String,
        operator: String,
        #[arg(long, default_value = "1")]
        weight: String,
    },
    /// Iterate the induced construction while the result stays associative.
    Iterate {
        algebra: String,
        operator: String,
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
    /// Name the catalog algebra isomorphic to the input.
    Classify { algebra: String },
    /// Inspect the bundled catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Regenerate a classification table as a checked report.
    Reproduce {
        table: String,
        /// Catalog file to use instead of the bundled data.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { label: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Prelie,
    Double,
    Dendriform,
    Gs,
    Novikov,
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Math(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Math(_) => 1,
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::BudgetExceeded { .. }
            | SolveError::GridBudgetExceeded { .. }
            | SolveError::RootBudgetExceeded(_) => Failure::Budget(e.to_string()),
            other => Failure::Math(other.to_string()),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::DimensionMismatch { .. } | AlgebraError::IndexOutOfRange { .. } => {
                Failure::Input(e.to_string())
            }
            AlgebraError::KindCheckFailed { .. } => Failure::Input(e.to_string()),
            other => Failure::Math(other.to_string()),
        }
    }
}

impl From<ScalarError> for Failure {
    fn from(e: ScalarError) -> Self {
        match e {
            ScalarError::Parse(_) => Failure::Input(e.to_string()),
            other => Failure::Math(other.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<OperatorError> for Failure {
    fn from(e: OperatorError) -> Self {
        match e {
            OperatorError::Solve(s) => s.into(),
            OperatorError::Algebra(a) => a.into(),
            other => Failure::Math(other.to_string()),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::UnknownLabel(_) | CatalogError::Format(_) => Failure::Input(e.to_string()),
            CatalogError::Operator(o) => o.into(),
            other => Failure::Math(other.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Solve(s) => s.into(),
            ClassifyError::Catalog(c) => c.into(),
            ClassifyError::UnsupportedDimension(_) | ClassifyError::NotConcrete(_) => Failure::Input(e.to_string()),
            ClassifyError::Inconclusive(_) => Failure::Budget(e.to_string()),
            other => Failure::Math(other.to_string()),
        }
    }
}

impl From<ReproduceError> for Failure {
    fn from(e: ReproduceError) -> Self {
        match e {
            ReproduceError::Catalog(c) => c.into(),
            ReproduceError::Solve(s) => s.into(),
            ReproduceError::Classify(c) => c.into(),
            ReproduceError::Algebra(a) => a.into(),
        }
    }
}

/// Text for stdout plus the exit status it should carry.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

struct Ctx {
    budget: Budget,
    csv: bool,
    params: Assignment,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let mut budget = Budget::from_env();
    if let Some(b) = cli.budget {
        budget = budget.with_reductions(b);
    }
    let ctx = Ctx {
        budget,
        csv: cli.csv,
        params: parse_params(&cli.params)?,
    };
    match cli.command {
        Command::Verify {
            algebra,
            operator,
            weight,
        } => cmd_verify(&ctx, &algebra, &operator, &weight),
        Command::Solve {
            algebra,
            grid,
            symbolic: _,
            families,
            weight,
        } => cmd_solve(&ctx, &algebra, grid.as_deref(), families.as_deref(), &weight),
        Command::Induce {
            algebra,
            operator,
            construction,
            weight,
            output,
        } => cmd_induce(&ctx, &algebra, &operator, construction, &weight, output.as_deref()),
        Command::Double {
            algebra,
            operator,
            output,
        } => cmd_induce(&ctx, &algebra, &operator, Construction::Double, "1", output.as_deref()),
        Command::Dendriform {
            algebra,
            operator,
            weight,
        } => cmd_dendriform(&ctx, &algebra, &operator, &weight),
        Command::Iterate {
            algebra,
            operator,
            steps,
        } => cmd_iterate(&ctx, &algebra, &operator, steps),
        Command::Classify { algebra } => cmd_classify(&ctx, &algebra),
        Command::Catalog { action } => cmd_catalog(&ctx, action),
        Command::Reproduce { table, catalog } => cmd_reproduce(&ctx, &table, catalog.as_deref()),
    }
}

fn parse_params(raw: &[String]) -> Result<Assignment, Failure> {
    let mut out = Assignment::new();
    for p in raw {
        let (name, value) = p
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("bad --param \"{}\", expected NAME=VALUE", p)))?;
        out.insert(Symbol::new(name.trim()), constant(value)?);
    }
    Ok(out)
}

fn constant(text: &str) -> Result<GaussRat, Failure> {
    parse_scalar(text.trim())?
        .as_constant()
        .ok_or_else(|| Failure::Input(format!("\"{}\" is not a constant", text.trim())))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))
}

fn load_algebra(ctx: &Ctx, arg: &str) -> Result<Algebra, Failure> {
    let a = match arg.strip_prefix('@') {
        Some(label) => catalog::load_unverified(label)?.algebra,
        None => parse_algebra(&read(Path::new(arg))?)?,
    };
    let used: Vec<Symbol> = a.parameters();
    if used.iter().any(|s| ctx.params.contains_key(s)) {
        let point: Assignment = ctx
            .params
            .iter()
            .filter(|(s, _)| used.contains(s))
            .map(|(s, v)| (s.clone(), v.clone()))
            .collect();
        return Ok(a.substitute(&point)?);
    }
    Ok(a)
}

fn load_operator(arg: &str) -> Result<Operator, Failure> {
    match arg.strip_prefix('@') {
        Some(name) => {
            let label = name.split('.').next().unwrap_or(name);
            let entry = catalog::load_unverified(label)?;
            let f = entry
                .families
                .iter()
                .chain(entry.rejected.iter().map(|(f, _)| f))
                .find(|f| f.name == name)
                .ok_or_else(|| Failure::Input(format!("no catalog row {}", name)))?;
            if !f.is_singleton() {
                return Err(Failure::Input(format!("catalog row {} has parameters", name)));
            }
            Ok(f.operator.clone())
        }
        None => Ok(parse_operator(&read(Path::new(arg))?)?),
    }
}

fn load_pair(ctx: &Ctx, alg: &str, op: &str) -> Result<(Algebra, Operator), Failure> {
    let a = load_algebra(ctx, alg)?;
    let r = load_operator(op)?;
    if a.dim() != r.dim() {
        return Err(Failure::Input(format!(
            "algebra has dimension {}, operator {}",
            a.dim(),
            r.dim()
        )));
    }
    Ok((a, r))
}

fn cmd_verify(ctx: &Ctx, alg: &str, op: &str, weight: &str) -> Result<Outcome, Failure> {
    let (a, r) = load_pair(ctx, alg, op)?;
    let w = parse_scalar(weight)?;
    Ok(match rb_failure(&a, &r, &w)? {
        None => Outcome::ok(format!("rota-baxter of weight {}: yes\n", w)),
        Some((i, j, res)) => Outcome {
            text: format!(
                "rota-baxter of weight {}: no\nresidual at (e{},e{}): {}\n",
                w,
                i + 1,
                j + 1,
                res
            ),
            ok: false,
        },
    })
}

fn parse_grid(spec: &str) -> Result<Vec<GaussRat>, Failure> {
    let mut g: Vec<GaussRat> = spec.split(',').map(constant).collect::<Result<_, _>>()?;
    g.dedup();
    if g.is_empty() {
        return Err(Failure::Input("empty grid".into()));
    }
    Ok(g)
}

/// Families from a catalog label or a file of `[family NAME]` sections (a
/// file without headers is one family named after the file).
fn load_families(ctx: &Ctx, arg: &str) -> Result<Vec<OperatorFamily>, Failure> {
    let path = Path::new(arg);
    if !path.exists() {
        let entry = catalog::load(arg.trim_start_matches('@'))?;
        let entry = if entry.is_parametric() && !ctx.params.is_empty() {
            entry.at_parameters(&ctx.params)?
        } else {
            entry
        };
        return Ok(entry.families);
    }
    let text = read(path)?;
    let mut out = Vec::new();
    let mut current: Option<(String, String)> = None;
    for line in text.lines() {
        let t = line.trim();
        if let Some(name) = t.strip_prefix("[family").and_then(|s| s.strip_suffix(']')) {
            if let Some((n, body)) = current.take() {
                out.push(parse_family(&n, &body)?);
            }
            current = Some((name.trim().to_string(), String::new()));
        } else if let Some((_, body)) = current.as_mut() {
            body.push_str(line);
            body.push('\n');
        } else if !t.is_empty() && !t.starts_with('#') {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("family");
            return Ok(vec![parse_family(stem, &text)?]);
        }
    }
    if let Some((n, body)) = current {
        out.push(parse_family(&n, &body)?);
    }
    Ok(out)
}

fn cmd_solve(ctx: &Ctx, alg: &str, grid: Option<&str>, families: Option<&str>, weight: &str) -> Result<Outcome, Failure> {
    let a = load_algebra(ctx, alg)?;
    let w = parse_scalar(weight)?;
    let mut out = String::new();
    let system = generate_system(&a, &w);
    let gens: Vec<_> = system.nonzero_generators().collect();
    writeln!(out, "system: {} equation(s) in {}", gens.len(), names(&system.variables)).unwrap();
    for g in &gens {
        writeln!(out, "  {}", g).unwrap();
    }
    let mut ok = true;
    if grid.is_none() && families.is_none() {
        let gb = buchberger(&system, MonomialOrder::DegRevLex, &ctx.budget)?;
        writeln!(out, "groebner basis ({}, {} element(s)):", gb.order(), gb.len()).unwrap();
        for p in gb.polys() {
            writeln!(out, "  {}", p).unwrap();
        }
        let sols = solve_zero_dim(&system, &ctx.budget)?;
        writeln!(out, "solutions: {}", sols).unwrap();
        match &sols {
            ZeroDimResult::Points(points) => {
                for p in points {
                    let r = Operator::symbolic(a.dim(), "r").substitute(p)?;
                    writeln!(out, "  {}", r).unwrap();
                }
            }
            ZeroDimResult::NotZeroDimensional { basis } => {
                writeln!(out, "lex basis:").unwrap();
                for p in basis {
                    writeln!(out, "  {}", p).unwrap();
                }
            }
            ZeroDimResult::NonRational { .. } => {}
        }
        return Ok(Outcome { text: out, ok });
    }
    let grid = match grid {
        Some(g) => parse_grid(g)?,
        None => default_grid(),
    };
    let cells: Vec<String> = grid.iter().map(|g| g.to_string()).collect();
    writeln!(out, "grid: {{{}}}", cells.join(", ")).unwrap();
    match families {
        None => {
            let sols = grid_enumerate(&a, &w, &grid, &ctx.budget)?;
            writeln!(out, "grid solutions: {}", sols.len()).unwrap();
            for r in &sols {
                writeln!(out, "  {}", r).unwrap();
            }
        }
        Some(arg) => {
            if !w.is_one() {
                return Err(Failure::Input("cover checks use weight 1".into()));
            }
            let fams = load_families(ctx, arg)?;
            let report = classification_cover(&a, &fams, &grid, &ctx.budget)?;
            ok = report.complete();
            write!(out, "{}", report).unwrap();
            writeln!(out, "cover: {}", if ok { "complete" } else { "incomplete" }).unwrap();
        }
    }
    Ok(Outcome { text: out, ok })
}

fn names(vars: &[Symbol]) -> String {
    let v: Vec<&str> = vars.iter().map(|s| s.name()).collect();
    v.join(", ")
}

fn kind_report(b: &Algebra) -> String {
    let yes = |x: bool| if x { "yes" } else { "no" };
    format!(
        "associative: {}, pre-lie: {}, novikov: {}, commutative: {}\n",
        yes(b.is_associative()),
        yes(b.is_pre_lie()),
        yes(b.is_novikov()),
        yes(b.is_commutative())
    )
}

fn label_report(b: &Algebra) -> Result<String, Failure> {
    if b.dim() > 3 || !b.is_concrete() {
        return Ok(String::new());
    }
    let matches = catalog_matches(b, &IsoSearch::default(), false)?;
    if matches.is_empty() {
        return Ok("label: none\n".to_string());
    }
    let mut s = String::new();
    for m in matches {
        writeln!(s, "label: {}", m).unwrap();
    }
    Ok(s)
}

fn emit(out: &mut String, b: &Algebra, path: Option<&Path>) -> Result<(), Failure> {
    let text = write_algebra(b);
    match path {
        Some(p) => std::fs::write(p, &text).map_err(|e| Failure::Input(format!("{}: {}", p.display(), e)))?,
        None => out.push_str(&text),
    }
    Ok(())
}

fn cmd_induce(
    ctx: &Ctx,
    alg: &str,
    op: &str,
    construction: Construction,
    weight: &str,
    output: Option<&Path>,
) -> Result<Outcome, Failure> {
    let (a, r) = load_pair(ctx, alg, op)?;
    let w = parse_scalar(weight)?;
    let b = match construction {
        Construction::Prelie => induced_pre_lie(&a, &r, &w)?,
        Construction::Double => double_product(&a, &r)?,
        Construction::Dendriform => dendriform_pre_lie(&dendriform_from_rb(&a, &r, &w)?)?,
        Construction::Gs => gs_pre_lie(&a, &r)?,
        Construction::Novikov => novikov_from_derivation(&a, &r)?,
    };
    let mut out = String::new();
    emit(&mut out, &b, output)?;
    out.push_str("# ");
    out.push_str(&kind_report(&b));
    for line in label_report(&b)?.lines() {
        writeln!(out, "# {}", line).unwrap();
    }
    Ok(Outcome::ok(out))
}

fn cmd_dendriform(ctx: &Ctx, alg: &str, op: &str, weight: &str) -> Result<Outcome, Failure> {
    let (a, r) = load_pair(ctx, alg, op)?;
    let w = parse_scalar(weight)?;
    let d = dendriform_from_rb(&a, &r, &w)?;
    let mut out = String::new();
    writeln!(out, "# left product").unwrap();
    out.push_str(&write_algebra(d.left()));
    writeln!(out, "# right product").unwrap();
    out.push_str(&write_algebra(d.right()));
    let n = d.dim();
    let mut defects = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                defects += d.axiom_defects(i, j, k).iter().filter(|e| !e.is_zero()).count();
            }
        }
    }
    writeln!(out, "# dendriform axioms: {}", if defects == 0 { "hold" } else { "fail" }).unwrap();
    Ok(Outcome {
        text: out,
        ok: defects == 0,
    })
}

fn cmd_iterate(ctx: &Ctx, alg: &str, op: &str, steps: usize) -> Result<Outcome, Failure> {
    let (a, r) = load_pair(ctx, alg, op)?;
    let chain = iterate_double(&a, &r, steps)?;
    let mut out = String::new();
    for (k, b) in chain.iter().enumerate() {
        writeln!(out, "step {}: {}", k, b).unwrap();
        out.push_str("  ");
        out.push_str(&kind_report(b));
        for line in label_report(b)?.lines() {
            writeln!(out, "  {}", line).unwrap();
        }
    }
    Ok(Outcome::ok(out))
}

fn cmd_classify(ctx: &Ctx, alg: &str) -> Result<Outcome, Failure> {
    let a = load_algebra(ctx, alg)?;
    let matches = catalog_matches(&a, &IsoSearch::default(), false)?;
    let mut out = String::new();
    if matches.is_empty() {
        writeln!(out, "label: none").unwrap();
        writeln!(out, "{}", iso_invariants(&a)?).unwrap();
    }
    for m in matches {
        writeln!(out, "label: {}", m).unwrap();
    }
    Ok(Outcome::ok(out))
}

fn cmd_catalog(ctx: &Ctx, action: CatalogAction) -> Result<Outcome, Failure> {
    let mut out = String::new();
    match action {
        CatalogAction::List => {
            if ctx.csv {
                out.push_str("label,dim,families,product\n");
            }
            for label in catalog::labels() {
                let e = catalog::load_unverified(&label)?;
                if ctx.csv {
                    writeln!(out, "{},{},{},\"{}\"", label, e.algebra.dim(), e.families.len(), e.algebra).unwrap();
                } else {
                    writeln!(out, "{:<6} dim {}  {:>2} families  {}", label, e.algebra.dim(), e.families.len(), e.algebra)
                        .unwrap();
                }
            }
        }
        CatalogAction::Show { label } => {
            // verified when possible, so documented rows show as rejected
            let e = catalog::load(&label).or_else(|_| catalog::load_unverified(&label))?;
            show_entry(&mut out, &e);
        }
    }
    Ok(Outcome::ok(out))
}

fn show_entry(out: &mut String, e: &CatalogEntry) {
    writeln!(out, "[entry {}]", e.label).unwrap();
    out.push_str(&write_algebra(&e.algebra));
    for p in &e.parameter_exclusions {
        writeln!(out, "exclude: {}", p).unwrap();
    }
    if let Some(src) = &e.rb_of {
        writeln!(out, "rb-of: {}", src).unwrap();
    }
    for f in &e.families {
        writeln!(out, "\n[family {}]", f.name).unwrap();
        out.push_str(&write_family(f));
    }
    for (f, report) in &e.rejected {
        writeln!(out, "\n# rejected: {}", report).unwrap();
        writeln!(out, "[family {}]", f.name).unwrap();
        out.push_str(&write_family(f));
    }
}

fn cmd_reproduce(ctx: &Ctx, table: &str, file: Option<&Path>) -> Result<Outcome, Failure> {
    let table: TableId = table
        .parse()
        .map_err(|e: String| Failure::Input(e))?;
    let entries = match file {
        Some(p) => catalog::parse_catalog(&read(p)?)?,
        None => table
            .labels()
            .iter()
            .map(|l| catalog::load_unverified(l))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let opts = ReproduceOptions {
        budget: ctx.budget.clone(),
        ..ReproduceOptions::default()
    };
    let report = reproduce_entries(table, &entries, &opts)?;
    if report.rows.is_empty() {
        return Err(Failure::Input(format!("catalog has no entries for table {}", table)));
    }
    let text = if ctx.csv {
        report.to_csv()
    } else {
        format!("{}\n", report)
    };
    Ok(Outcome {
        text,
        ok: report.passed(),
    })
}

