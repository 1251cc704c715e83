use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use bruhat_kl::corpus::{builtin_matrix, SystemCtx};
use bruhat_kl::diamond::{f_uv, DiamondGraph, GMinOptions, Mode};
use bruhat_kl::export::{self, Certificate, DgRow};
use bruhat_kl::order::rank_with_reseed;
use bruhat_kl::polynomials::CacheError;
use bruhat_kl::suites::{self, SuiteReport};
use bruhat_kl::{
    CoxeterMatrix, CoxeterSystem, Element, Interval, KlEngine, PolyCache, ReflectionOrder,
};

#[derive(Parser, Debug)]
#[command(name = "bruhat-kl", version, about = "Kazhdan–Lusztig polynomials, Bruhat graphs and diamond-generating sets")]
struct Cli {
    /// Coxeter system: a JSON matrix file or a builtin name (A3, B3, I2(6), A1~).
    /// Repeat for `invariance`.
    #[arg(long = "system", global = true, default_value = "A3")]
    systems: Vec<String>,
    /// Cache directory; falls back to $BRUHAT_CACHE_DIR, then ./.bruhat-cache.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Length bound on enumerated elements; required for infinite systems.
    #[arg(long, global = true)]
    max_elt_length: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Pair {
    /// Lower element as 1-based generator indices, e.g. "2" or "e".
    #[arg(long)]
    u: String,
    /// Upper element, e.g. "1 2 3 2 1".
    #[arg(long)]
    v: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// R, R~, P and d of one interval.
    Poly {
        #[command(flatten)]
        pair: Pair,
        /// Also write polynomials.csv here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every invariant suite over the corpus.
    Verify {
        /// Bound on ℓ(u,v).
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long, default_value = "strict")]
        mode: Mode,
        #[arg(long)]
        restrict_len1: bool,
        /// Random edge sets per graph for the closure laws.
        #[arg(long, default_value_t = 20)]
        closure_seeds: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify corpus intervals by poset isomorphism and compare polynomials.
    Invariance {
        /// Bound on ℓ(u,v) for the corpus.
        #[arg(long)]
        max_length: Option<usize>,
        /// Classes up to this length must share full polynomials.
        #[arg(long, default_value_t = 6)]
        full_up_to: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// DOT rendering of a Bruhat graph.
    Graph {
        #[command(flatten)]
        pair: Pair,
        /// Draw the constructed generating set F in red.
        #[arg(long)]
        highlight_f: bool,
        /// Deodhar order seed.
        #[arg(long, default_value_t = suites::DEODHAR_SEED)]
        seed: u64,
        #[arg(long, default_value = "strict")]
        mode: Mode,
        #[arg(long)]
        restrict_len1: bool,
        /// Print the closure of F step by step.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inspect or fill the polynomial cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Compute all polynomials of the corpus and save them.
    Warm {
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Load and validate the cache file.
    Show,
    /// Delete the cache file.
    Clear,
}

#[derive(Debug)]
enum Failure {
    Invariant(String),
    Usage(String),
    Precondition(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invariant(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Precondition(_) => 3,
        }
    }
}

impl From<CacheError> for Failure {
    fn from(e: CacheError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(format!("i/o error: {e}"))
}

struct Loaded {
    name: String,
    matrix: CoxeterMatrix,
}

fn load_system(system: &str) -> Result<Loaded, Failure> {
    if let Some(matrix) = builtin_matrix(system) {
        return Ok(Loaded {
            name: system.to_string(),
            matrix,
        });
    }
    let path = Path::new(system);
    let matrix = CoxeterMatrix::from_file(path).map_err(|e| Failure::Usage(e.to_string()))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| system.to_string());
    Ok(Loaded { name, matrix })
}

fn cache_dir(flag: &Option<PathBuf>) -> PathBuf {
    flag.clone()
        .or_else(|| std::env::var_os("BRUHAT_CACHE_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(".bruhat-cache"))
}

fn cache_file(dir: &Path, name: &str) -> PathBuf {
    let safe: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    dir.join(format!("{safe}.bklc"))
}

/// A missing cache file is an empty cache; a corrupt one is an error.
fn open_cache(sys: &CoxeterSystem, path: &Path) -> Result<PolyCache, Failure> {
    if !path.exists() {
        return Ok(PolyCache::new());
    }
    PolyCache::load(sys, path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn save_cache(engine: &KlEngine, path: &Path) -> Result<(), Failure> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io)?;
    }
    engine.cache().save(engine.system(), path)?;
    Ok(())
}

fn single_system(cli: &Cli) -> Result<Loaded, Failure> {
    match cli.systems.as_slice() {
        [one] => load_system(one),
        _ => Err(Failure::Usage("this command takes exactly one --system".into())),
    }
}

fn corpus_ctx(cli: &Cli, loaded: Loaded, cache: &Path) -> Result<SystemCtx, Failure> {
    let mut ctx = SystemCtx::new(&loaded.name, loaded.matrix, cli.max_elt_length).map_err(|e| {
        Failure::Precondition(format!("{}: {e} (infinite systems need --max-elt-length)", loaded.name))
    })?;
    let file = cache_file(cache, &ctx.name);
    ctx.engine = KlEngine::with_cache(&ctx.sys, open_cache(&ctx.sys, &file)?);
    Ok(ctx)
}

fn parse_pair(sys: &CoxeterSystem, pair: &Pair) -> Result<(Element, Element), Failure> {
    let u = sys.parse_word(&pair.u).map_err(|e| Failure::Usage(e.to_string()))?;
    let v = sys.parse_word(&pair.v).map_err(|e| Failure::Usage(e.to_string()))?;
    if !sys.bruhat_leq(&u, &v) {
        return Err(Failure::Precondition(format!(
            "{} is not below {} in Bruhat order",
            u.word_string(),
            v.word_string()
        )));
    }
    Ok((u, v))
}

fn write_out(dir: &Path, file: &str, contents: &[u8]) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join(file), contents).map_err(io)
}

fn cmd_poly(cli: &Cli, pair: &Pair, out: &Option<PathBuf>) -> Result<(), Failure> {
    let loaded = single_system(cli)?;
    let sys = CoxeterSystem::new(loaded.matrix);
    let file = cache_file(&cache_dir(&cli.cache), &loaded.name);
    let engine = KlEngine::with_cache(&sys, open_cache(&sys, &file)?);
    let (u, v) = parse_pair(&sys, pair)?;
    let invariant = |e: bruhat_kl::PolyError| Failure::Invariant(e.to_string());
    println!("system {}", loaded.name);
    println!("u = {}", u.word_string());
    println!("v = {}", v.word_string());
    println!("R = {}", engine.r_poly(&u, &v));
    println!("R~ = {}", engine.rtilde_poly(&u, &v).map_err(invariant)?);
    println!("P = {}", engine.kl_poly(&u, &v).map_err(invariant)?);
    let d = engine.d_invariant(&u, &v);
    println!("d = {d}");
    let recurrence = engine.d_via_recurrence(&u, &v);
    if recurrence != d {
        return Err(Failure::Invariant(format!("recurrence gives d = {recurrence}")));
    }
    if let Some(dir) = out {
        let rows = export::poly_rows(&loaded.name, &engine, &[(u, v)]).map_err(invariant)?;
        let mut buf = Vec::new();
        export::write_poly_csv(&mut buf, &rows).map_err(|e| Failure::Usage(e.to_string()))?;
        write_out(dir, "polynomials.csv", &buf)?;
    }
    save_cache(&engine, &file)
}

fn print_suite(r: &SuiteReport) {
    println!(
        "{:<40} {} checked={} failures={}",
        r.name,
        if r.passed() { "PASS" } else { "FAIL" },
        r.checked,
        r.failures
    );
    eprintln!("{:<40} {} ms", r.name, r.millis);
    if let Some(f) = &r.first_failure {
        println!("    first failure: {f}");
    }
}

fn dg_rows(
    ctx: &SystemCtx,
    pairs: &[(Element, Element)],
    mode: Mode,
    restrict_len1: bool,
) -> Result<Vec<DgRow>, Failure> {
    let mut rows = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        let interval =
            Interval::new(&ctx.sys, u, v).map_err(|e| Failure::Invariant(e.to_string()))?;
        let dg = DiamondGraph::from_interval(interval)
            .map_err(|e| Failure::Invariant(e.to_string()))?;
        let (order, _) = suites::deodhar_for(ctx, v, dg.graph()).map_err(Failure::Invariant)?;
        let f = f_uv(&ctx.engine, &dg, &order).map_err(|e| Failure::Invariant(e.to_string()))?;
        let d = ctx.engine.d_invariant(u, v);
        let options = GMinOptions {
            restrict_len1,
            lower_bound: d.min(f.edges.len()),
            upper_hints: vec![f.edges.clone()],
            ..GMinOptions::default()
        };
        let g = dg.g_min(mode, &options).map_err(|e| Failure::Invariant(e.to_string()))?;
        rows.push(DgRow {
            system: ctx.name.clone(),
            u_word: u.word_string(),
            v_word: v.word_string(),
            length: v.length() - u.length(),
            d,
            f_size: f.edges.len(),
            g: g.size,
        });
    }
    Ok(rows)
}

struct VerifyArgs<'a> {
    max_length: Option<usize>,
    mode: Mode,
    restrict_len1: bool,
    closure_seeds: u64,
    out: &'a Option<PathBuf>,
}

fn cmd_verify(cli: &Cli, args: VerifyArgs) -> Result<(), Failure> {
    let cache = cache_dir(&cli.cache);
    let mut all = Vec::new();
    let mut table = Vec::new();
    for system in &cli.systems {
        let ctx = corpus_ctx(cli, load_system(system)?, &cache)?;
        let pairs = ctx.intervals(args.max_length);
        let short: Vec<_> = pairs
            .iter()
            .filter(|(u, v)| v.length() - u.length() <= 4)
            .cloned()
            .collect();
        println!("system {}: {} intervals", ctx.name, pairs.len());
        let mut reports = Vec::new();
        if ctx.name == "A3" {
            reports.push(suites::known_d_values(&ctx));
            reports.push(suites::non_deodhar_counterexample(&ctx));
        }
        reports.push(suites::d_routes(&ctx, &pairs));
        reports.push(suites::d_incarnations(&ctx, &pairs));
        reports.push(suites::increasing_paths(&ctx, &pairs));
        reports.push(suites::longest_paths(&ctx, &pairs));
        reports.push(suites::divergence(&ctx, &pairs));
        reports.push(suites::s_translates(&ctx, &pairs));
        reports.push(suites::supporting_chains(&ctx, &pairs));
        reports.push(suites::d_equals_g(&ctx, &pairs, 4));
        reports.push(suites::g_variants(&ctx, &short));
        reports.push(suites::closure_laws(&ctx, &pairs, args.closure_seeds));
        reports.push(suites::order_axiom(&ctx, args.max_length.unwrap_or(6).min(6)));
        reports.push(suites::cache_roundtrip(&ctx, &pairs));
        for r in &reports {
            print_suite(r);
        }
        if args.out.is_some() {
            table.extend(dg_rows(&ctx, &pairs, args.mode, args.restrict_len1)?);
        }
        save_cache(&ctx.engine, &cache_file(&cache, &ctx.name))?;
        all.extend(reports);
    }
    let failed: Vec<&SuiteReport> = all.iter().filter(|r| !r.passed()).collect();
    println!(
        "{} suites, {} checks, {} failed",
        all.len(),
        all.iter().map(|r| r.checked).sum::<usize>(),
        failed.len()
    );
    if let Some(dir) = args.out {
        let summary: Vec<_> = all
            .iter()
            .map(|r| {
                json!({
                    "suite": r.name,
                    "checked": r.checked,
                    "failures": r.failures,
                    "first_failure": r.first_failure,
                })
            })
            .collect();
        let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
        write_out(dir, "verify.json", text.as_bytes())?;
        let mut buf = Vec::new();
        export::write_dg_csv(&mut buf, &table).map_err(|e| Failure::Usage(e.to_string()))?;
        write_out(dir, "dg.csv", &buf)?;
    }
    match failed.first() {
        None => Ok(()),
        Some(r) => Err(Failure::Invariant(format!(
            "{}: {}",
            r.name,
            r.first_failure.clone().unwrap_or_default()
        ))),
    }
}

fn cmd_invariance(
    cli: &Cli,
    max_length: Option<usize>,
    full_up_to: usize,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let cache = cache_dir(&cli.cache);
    let mut ctxs = Vec::new();
    for system in &cli.systems {
        ctxs.push(corpus_ctx(cli, load_system(system)?, &cache)?);
    }
    let pairs: Vec<_> = ctxs.iter().map(|c| c.intervals(max_length)).collect();
    let refs: Vec<&SystemCtx> = ctxs.iter().collect();
    let (report, suites) = suites::invariance(&refs, &pairs, full_up_to);
    for r in &suites {
        print_suite(r);
    }
    println!(
        "{} intervals, {} classes, {} cross-system, {} mismatches",
        report.intervals,
        report.classes.len(),
        report.cross_system_classes,
        report.mismatches
    );
    for class in report.classes.iter().filter(|c| c.mismatch.is_some()) {
        println!("MISMATCH {}: {}", class.form, class.mismatch.as_deref().unwrap_or(""));
    }
    if let Some(dir) = out {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        write_out(dir, "invariance.json", text.as_bytes())?;
    }
    for ctx in &ctxs {
        save_cache(&ctx.engine, &cache_file(&cache, &ctx.name))?;
    }
    match suites.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => Err(Failure::Invariant(format!(
            "{}: {}",
            r.name,
            r.first_failure.clone().unwrap_or_default()
        ))),
    }
}

struct GraphArgs<'a> {
    pair: &'a Pair,
    highlight_f: bool,
    seed: u64,
    mode: Mode,
    restrict_len1: bool,
    trace: bool,
    out: &'a Option<PathBuf>,
}

fn cmd_graph(cli: &Cli, args: GraphArgs) -> Result<(), Failure> {
    let loaded = single_system(cli)?;
    let sys = CoxeterSystem::new(loaded.matrix);
    let (u, v) = parse_pair(&sys, args.pair)?;
    let interval = Interval::new(&sys, &u, &v).map_err(|e| Failure::Precondition(e.to_string()))?;
    let dg = DiamondGraph::from_interval(interval).map_err(|e| Failure::Invariant(e.to_string()))?;
    let mut highlight = None;
    let mut certificate = None;
    if args.highlight_f || args.trace {
        let file = cache_file(&cache_dir(&cli.cache), &loaded.name);
        let engine = KlEngine::with_cache(&sys, open_cache(&sys, &file)?);
        let mut roots = dg.graph().labels();
        roots.extend(sys.inversion_set(&v));
        let (order, _) =
            rank_with_reseed(|s| ReflectionOrder::deodhar(&sys, &v, s), args.seed, &roots)
                .map_err(|e| Failure::Invariant(e.to_string()))?;
        let f = f_uv(&engine, &dg, &order).map_err(|e| Failure::Invariant(e.to_string()))?;
        let d = engine.d_invariant(&u, &v);
        if args.trace {
            for step in dg.closure_trace(&f.edges, args.mode) {
                let edges: Vec<String> = step
                    .added
                    .iter()
                    .map(|&k| {
                        let e = dg.graph().edge(k);
                        format!(
                            "{} -> {}",
                            dg.interval().element(e.lo).word_string(),
                            dg.interval().element(e.hi).word_string()
                        )
                    })
                    .collect();
                println!("cycle {:?} adds {}", step.cycle, edges.join(", "));
            }
        }
        let options = GMinOptions {
            restrict_len1: args.restrict_len1,
            lower_bound: d.min(f.edges.len()),
            upper_hints: vec![f.edges.clone()],
            ..GMinOptions::default()
        };
        let g = dg.g_min(args.mode, &options).map_err(|e| Failure::Invariant(e.to_string()))?;
        certificate = Some(Certificate::new(dg.graph(), args.mode, d, g.size, &g.certificate));
        if args.highlight_f {
            highlight = Some(f.edges);
        }
        save_cache(&engine, &file)?;
    }
    let dot = export::to_dot(dg.graph(), highlight.as_ref());
    match args.out {
        Some(dir) => {
            write_out(dir, "graph.dot", dot.as_bytes())?;
            if let Some(c) = certificate {
                write_out(dir, "certificate.json", c.to_json().as_bytes())?;
            }
        }
        None => print!("{dot}"),
    }
    Ok(())
}

fn cmd_cache(cli: &Cli, action: &CacheAction) -> Result<(), Failure> {
    let cache = cache_dir(&cli.cache);
    for system in &cli.systems {
        let loaded = load_system(system)?;
        let file = cache_file(&cache, &loaded.name);
        match action {
            CacheAction::Warm { max_length } => {
                let ctx = corpus_ctx(cli, loaded, &cache)?;
                let start = Instant::now();
                let pairs = ctx.intervals(*max_length);
                let rows = export::poly_rows(&ctx.name, &ctx.engine, &pairs)
                    .map_err(|e| Failure::Invariant(e.to_string()))?;
                save_cache(&ctx.engine, &file)?;
                println!("{}: {} polynomials in {}", ctx.name, rows.len(), file.display());
                eprintln!("{} ms", start.elapsed().as_millis());
            }
            CacheAction::Show => {
                let sys = CoxeterSystem::new(loaded.matrix);
                if file.exists() {
                    let cache = PolyCache::load(&sys, &file)?;
                    println!("{}: {} entries in {}", loaded.name, cache.len(), file.display());
                } else {
                    println!("{}: no cache at {}", loaded.name, file.display());
                }
            }
            CacheAction::Clear => {
                if file.exists() {
                    fs::remove_file(&file).map_err(io)?;
                    println!("{}: removed {}", loaded.name, file.display());
                }
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Poly { pair, out } => cmd_poly(cli, pair, out),
        Command::Verify {
            max_length,
            mode,
            restrict_len1,
            closure_seeds,
            out,
        } => cmd_verify(
            cli,
            VerifyArgs {
                max_length: *max_length,
                mode: *mode,
                restrict_len1: *restrict_len1,
                closure_seeds: *closure_seeds,
                out,
            },
        ),
        Command::Invariance {
            max_length,
            full_up_to,
            out,
        } => cmd_invariance(cli, *max_length, *full_up_to, out),
        Command::Graph {
            pair,
            highlight_f,
            seed,
            mode,
            restrict_len1,
            trace,
            out,
        } => cmd_graph(
            cli,
            GraphArgs {
                pair,
                highlight_f: *highlight_f,
                seed: *seed,
                mode: *mode,
                restrict_len1: *restrict_len1,
                trace: *trace,
                out,
            },
        ),
        Command::Cache { action } => cmd_cache(cli, action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = match &f {
                Failure::Invariant(m) | Failure::Usage(m) | Failure::Precondition(m) => m,
            };
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
