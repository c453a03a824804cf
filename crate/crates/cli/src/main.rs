//! Command line front end: generators, cover solvers, chain decompositions,
//! verification and search campaigns over `.poset` files.
//!
//! Exit codes: 0 success, 1 a search campaign found a violation, 2 usage or
//! input errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use latcover::birkhoff::{distributivity_report, ideals_lattice};
use latcover::campaign::{check_daykin_frankl, search_level_covers, LevelProblem, Mode};
use latcover::construct::{
    atoms_coatoms_cover_traced, build_surjection_traced, thinned_grid_cover_traced,
    two_level_cover_traced, verify_surjection,
};
use latcover::cover::{
    candidate_intervals, exact_min_cover, icp_check, level_slab_span, CoverJson,
};
use latcover::families::{
    gen_boolean, gen_chain_product, gen_frankl, gen_glued, gen_random_poset, gen_worst_case,
};
use latcover::gk::{chain_of, gk_decomposition, phi};
use latcover::io::{parse_poset, write_poset};
use latcover::poset::Poset;
use latcover::{DistributiveLattice, IntervalCover};
use serde_json::json;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "latcover",
    version,
    about = "Interval covers of convex subsets in posets and distributive lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a structure and write it in .poset format.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Exact minimum interval cover of the slab between two levels.
    Cover {
        #[arg(long)]
        input: PathBuf,
        /// Level pair J K.
        #[arg(long, num_args = 2, value_names = ["J", "K"])]
        levels: Vec<usize>,
        /// Node budget for the exact search (best-known cover on exhaustion).
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Interval covering property check for one level pair or all of them.
    Icp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["J", "K"], required_unless_present = "strong")]
        levels: Option<Vec<usize>>,
        /// Check every level pair.
        #[arg(long)]
        strong: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Symmetric chain decomposition of the rank-n subset lattice.
    Scd {
        #[arg(long)]
        n: usize,
        /// Verify the partition, chain symmetry and the nesting property.
        #[arg(long)]
        verify: bool,
        /// Instead of chains, emit the explicit minimum cover of the slab
        /// between these two levels (subsets encoded as integers).
        #[arg(long, num_args = 2, value_names = ["J", "K"])]
        cover: Option<Vec<usize>>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Build and verify a surjection witness for two antichains.
    Surjection {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated element indices of the lower antichain.
        #[arg(long)]
        lower: String,
        /// Comma-separated element indices of the upper antichain.
        #[arg(long)]
        upper: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Cover everything strictly between bottom and top of a distributive
    /// lattice by max(#atoms, #coatoms) intervals.
    CoverAtomsCoatoms {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Cover the hull of a level pair with a two-element side by
    /// max(|A|, |B|) intervals.
    CoverTwoLevel {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["J", "K"])]
        levels: Vec<usize>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Cover the hull of a level pair by a thinned grid of intervals.
    CoverThinnedGrid {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["J", "K"])]
        levels: Vec<usize>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Report structural facts about a .poset file (ranks, lattice and
    /// distributivity checks, width).
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Audit level-cover questions over all posets up to a given size.
    Search {
        #[arg(long, value_name = "N")]
        max_n: usize,
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Audit the width/size ratio of convex subsets of a subset lattice.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Subset lattice of an n-element set.
    Boolean {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Product of chains with the given element counts.
    ChainProduct {
        /// Comma-separated chain lengths, e.g. 2,3,2.
        #[arg(long)]
        lengths: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Singletons-versus-supersets antichain pair in a subset lattice.
    Frankl {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Lattice whose atom/coatom span needs all r·s intervals.
    WorstCase {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Two subset lattices glued along an edge.
    Glued {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Random poset from closed-up random edges.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Lattice of order ideals of an input poset.
    Ideals {
        #[arg(long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Atoms,
    Bound,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}

fn run(command: Command) -> Result<i32, String> {
    match command {
        Command::Gen { kind } => run_gen(kind),
        Command::Cover {
            input,
            levels,
            budget,
            out,
        } => {
            let p = load_poset(&input)?;
            let (j, k) = level_pair(&levels)?;
            let span = level_slab_span(&p, j, k).map_err(|e| e.to_string())?;
            let inst = candidate_intervals(&p, &span);
            let cover = exact_min_cover(&p, &inst, budget).map_err(|e| e.to_string())?;
            print_cover(&cover, out.format);
            Ok(0)
        }
        Command::Icp {
            input,
            levels,
            strong,
            out,
        } => {
            let p = load_poset(&input)?;
            let (j, k) = match &levels {
                Some(v) => level_pair(v)?,
                None => (0, 0),
            };
            let report = icp_check(&p, j, k, strong).map_err(|e| e.to_string())?;
            match out.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => println!(
                    "levels ({}, {}): rho = {}, bound = {} -> {}",
                    report.pair.0,
                    report.pair.1,
                    report.rho,
                    report.bound,
                    if report.holds { "holds" } else { "fails" }
                ),
            }
            Ok(0)
        }
        Command::Scd {
            n,
            verify,
            cover,
            out,
        } => {
            if let Some(levels) = cover {
                let (j, k) = level_pair(&levels)?;
                return run_level_cover(n, j, k, out.format);
            }
            run_scd(n, verify, out.format)
        }
        Command::Surjection {
            input,
            lower,
            upper,
            out,
        } => {
            let p = load_poset(&input)?;
            let a = p
                .set_from(&parse_indices(&lower)?)
                .map_err(|e| e.to_string())?;
            let b = p
                .set_from(&parse_indices(&upper)?)
                .map_err(|e| e.to_string())?;
            let (f, trace) = build_surjection_traced(&p, &a, &b).map_err(|e| e.to_string())?;
            let verified = verify_surjection(&p, &a, &b, &f);
            match out.format {
                Format::Json => {
                    let doc = json!({
                        "map": f.pairs(),
                        "verified": verified,
                        "trace": trace,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Text => {
                    for &(bb, aa) in f.pairs() {
                        println!("f({bb}) = {aa}");
                    }
                    println!("verified over all order ideals: {verified}");
                    if !trace.peeled.is_empty() {
                        println!("peeled isolated elements: {:?}", trace.peeled);
                    }
                    if !trace.deleted_edges.is_empty() {
                        println!("deleted relations: {:?}", trace.deleted_edges);
                    }
                    for star in &trace.stars {
                        println!("star: center {} leaves {:?}", star.center, star.leaves);
                    }
                }
            }
            Ok(if verified { 0 } else { 1 })
        }
        Command::CoverAtomsCoatoms { input, out } => {
            let d = load_lattice(&input)?;
            let (cover, trace) = atoms_coatoms_cover_traced(&d).map_err(|e| e.to_string())?;
            if out.format == Format::Json {
                let doc = json!({
                    "cover": CoverJson::from(&cover),
                    "dualized": trace.dualized,
                    "trivial": trace.trivial,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                print_cover(&cover, out.format);
                if trace.trivial {
                    println!("(single atom or coatom: immediate cover)");
                }
            }
            Ok(0)
        }
        Command::CoverTwoLevel { input, levels, out } => {
            let d = load_lattice(&input)?;
            let (j, k) = level_pair(&levels)?;
            let (cover, trace) = two_level_cover_traced(&d, j, k).map_err(|e| e.to_string())?;
            if out.format == Format::Json {
                let doc = json!({ "cover": CoverJson::from(&cover), "trace": trace });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                print_cover(&cover, out.format);
            }
            Ok(0)
        }
        Command::CoverThinnedGrid { input, levels, out } => {
            let d = load_lattice(&input)?;
            let (j, k) = level_pair(&levels)?;
            let (cover, trace) = thinned_grid_cover_traced(&d, j, k).map_err(|e| e.to_string())?;
            if out.format == Format::Json {
                let doc = json!({ "cover": CoverJson::from(&cover), "trace": trace });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                print_cover(&cover, out.format);
                match (trace.family, trace.fallback_removed) {
                    (Some(w), _) => println!("family index {} of {} (s = {})", w, trace.t, trace.s),
                    (None, Some(r)) => {
                        println!("fallback: full grid thinned by {r} redundant intervals")
                    }
                    _ => {}
                }
            }
            Ok(0)
        }
        Command::Verify { input, out } => run_verify(&input, out.format),
        Command::Search {
            max_n,
            problem,
            threads,
            out,
        } => {
            configure_threads(threads);
            let problem = match problem {
                ProblemArg::Atoms => LevelProblem::Atoms,
                ProblemArg::Bound => LevelProblem::Bound,
            };
            let report = search_level_covers(max_n, problem).map_err(|e| e.to_string())?;
            let bad = report.has_violations();
            match out.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => {
                    println!(
                        "{}: {} instances checked, {} violations, {} non-minimal pairs",
                        report.campaign,
                        report.instances_checked,
                        report.violations.len(),
                        report.non_minimal.len()
                    );
                    for v in report.violations.iter().chain(&report.non_minimal) {
                        println!(
                            "  {} expected {} observed {}",
                            v.instance, v.expected, v.observed
                        );
                    }
                }
            }
            Ok(if bad { 1 } else { 0 })
        }
        Command::Conjecture {
            n,
            mode,
            samples,
            seed,
            threads,
            out,
        } => {
            configure_threads(threads);
            let mode = match mode {
                ModeArg::Exhaustive => Mode::Exhaustive,
                ModeArg::Sample => Mode::Sample,
            };
            let report = check_daykin_frankl(n, mode, samples, seed).map_err(|e| e.to_string())?;
            let bad = report.has_violations();
            match out.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => {
                    println!(
                        "width-ratio audit over rank-{n} subset lattice ({}): {} convex subsets, {} violations",
                        report.mode,
                        report.instances_checked,
                        report.violations.len()
                    );
                    if let (Some(w), Some(s)) = (
                        report.params.get("min_ratio_width"),
                        report.params.get("min_ratio_size"),
                    ) {
                        println!("minimum width/size ratio seen: {w}/{s}");
                    }
                }
            }
            Ok(if bad { 1 } else { 0 })
        }
    }
}

fn run_gen(kind: GenKind) -> Result<i32, String> {
    match kind {
        GenKind::Boolean { n, output } => {
            let d = gen_boolean(n).map_err(|e| e.to_string())?;
            save_poset(&output, d.poset())?;
            save_sidecar(&output, &lattice_sidecar(&d))?;
        }
        GenKind::ChainProduct { lengths, output } => {
            let lengths = parse_indices(&lengths)?;
            let d = gen_chain_product(&lengths).map_err(|e| e.to_string())?;
            save_poset(&output, d.poset())?;
            save_sidecar(&output, &lattice_sidecar(&d))?;
        }
        GenKind::Frankl { r, s, output } => {
            let inst = gen_frankl(r, s).map_err(|e| e.to_string())?;
            save_poset(&output, inst.lattice.poset())?;
            let mut doc = lattice_sidecar(&inst.lattice);
            doc["lower"] = json!(inst.lower.iter().collect::<Vec<_>>());
            doc["upper"] = json!(inst.upper.iter().collect::<Vec<_>>());
            save_sidecar(&output, &doc)?;
        }
        GenKind::WorstCase { r, s, output } => {
            let inst = gen_worst_case(r, s).map_err(|e| e.to_string())?;
            save_poset(&output, &inst.poset)?;
            let doc = json!({ "lower": inst.atoms, "upper": inst.coatoms });
            save_sidecar(&output, &doc)?;
        }
        GenKind::Glued { n, m, output } => {
            let inst = gen_glued(n, m).map_err(|e| e.to_string())?;
            save_poset(&output, inst.lattice.poset())?;
            let profile = inst.lattice.levels();
            let mut doc = lattice_sidecar(&inst.lattice);
            doc["lower_level_rank"] = json!(inst.lower_rank);
            doc["upper_level_rank"] = json!(inst.upper_rank);
            doc["lower"] = json!(profile.levels[inst.lower_rank].iter().collect::<Vec<_>>());
            doc["upper"] = json!(profile.levels[inst.upper_rank].iter().collect::<Vec<_>>());
            save_sidecar(&output, &doc)?;
        }
        GenKind::Random {
            n,
            density,
            seed,
            output,
        } => {
            let p = gen_random_poset(n, density, seed).map_err(|e| e.to_string())?;
            save_poset(&output, &p)?;
        }
        GenKind::Ideals { input, output } => {
            let p = load_poset(&input)?;
            let (d, maps) = ideals_lattice(&p);
            save_poset(&output, d.poset())?;
            let mut doc = lattice_sidecar(&d);
            doc["bold"] = json!((0..p.size()).map(|a| maps.bold(a)).collect::<Vec<_>>());
            doc["bar"] = json!((0..p.size()).map(|a| maps.bar(a)).collect::<Vec<_>>());
            save_sidecar(&output, &doc)?;
        }
    }
    Ok(0)
}

fn run_scd(n: usize, verify: bool, format: Format) -> Result<i32, String> {
    let scd = gk_decomposition(n).map_err(|e| e.to_string())?;
    let mut verified = None;
    if verify {
        let mut seen = vec![false; 1usize << n];
        let mut ok = true;
        for chain in scd.chains() {
            ok &= chain.is_symmetric();
            for e in chain.elements() {
                ok &= !std::mem::replace(&mut seen[e.bits() as usize], true);
            }
            if chain.len() < n + 1 {
                // The shrunk chain must nest strictly around this one.
                let d = phi(chain).map_err(|e| e.to_string())?;
                ok &= d.min().is_subset_of(&chain.min())
                    && d.min().len() + 1 == chain.min().len()
                    && chain.max().is_subset_of(&d.max())
                    && d.max().len() == chain.max().len() + 1;
                // And all chains stay inside the decomposition.
                ok &= chain_of(&d.min()).min() == d.min();
            }
        }
        ok &= seen.iter().all(|&s| s);
        verified = Some(ok);
    }
    match format {
        Format::Json => {
            let chains: Vec<Vec<String>> = scd
                .chains()
                .iter()
                .map(|c| c.elements().iter().map(|e| e.word()).collect())
                .collect();
            let doc = json!({ "n": n, "chains": chains, "verified": verified });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            for chain in scd.chains() {
                let words: Vec<String> = chain.elements().iter().map(|e| e.word()).collect();
                println!("{}", words.join(","));
            }
            println!("{} chains", scd.chains().len());
            if let Some(ok) = verified {
                println!(
                    "partition, symmetry and nesting {}",
                    if ok { "verified" } else { "FAILED" }
                );
            }
        }
    }
    Ok(match verified {
        Some(false) => 1,
        _ => 0,
    })
}

fn run_level_cover(n: usize, j: usize, k: usize, format: Format) -> Result<i32, String> {
    if j > k || k > n {
        return Err("expected levels 0 <= J <= K <= n".into());
    }
    let cover = latcover::gk::boolean_level_cover(n, j, k).map_err(|e| e.to_string())?;
    if !cover.covers_exactly() {
        return Err("internal: level cover left a gap".into());
    }
    let span_size: usize = (j..=k)
        .map(|i| (0..i.min(n - i)).fold(1usize, |acc, t| acc * (n - t) / (t + 1)))
        .sum();
    match format {
        Format::Json => {
            let intervals: Vec<serde_json::Value> = cover
                .intervals
                .iter()
                .map(|(lo, hi)| json!({ "a": lo.bits(), "b": hi.bits() }))
                .collect();
            let doc = json!({
                "rho": cover.size(),
                "optimal": true,
                "intervals": intervals,
                "span_size": span_size,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            let ivs: Vec<String> = cover
                .intervals
                .iter()
                .map(|(lo, hi)| format!("[{},{}]", lo.word(), hi.word()))
                .collect();
            println!(
                "rho = {} (optimal); span of {} subsets",
                cover.size(),
                span_size
            );
            println!("{}", ivs.join(" "));
        }
    }
    Ok(0)
}

fn run_verify(input: &Path, format: Format) -> Result<i32, String> {
    let p = load_poset(input)?;
    let profile = p.rank_profile().ok();
    let lattice_report = distributivity_report(&p);
    let (is_lattice, distributive, mode) = match &lattice_report {
        Ok(r) => (true, Some(r.distributive), Some(format!("{:?}", r.mode))),
        Err(_) => (false, None, None),
    };
    let width = p.width();
    match format {
        Format::Json => {
            let doc = json!({
                "elements": p.size(),
                "cover_pairs": p.covers().len(),
                "ranked": profile.is_some(),
                "level_sizes": profile.as_ref().map(|r| r.level_sizes.clone()),
                "width": width,
                "lattice": is_lattice,
                "distributive": distributive,
                "check_mode": mode,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            println!("elements: {}", p.size());
            println!("cover pairs: {}", p.covers().len());
            match &profile {
                Some(r) => println!("ranked with level sizes {:?}", r.level_sizes),
                None => println!("not ranked"),
            }
            println!("width: {width}");
            println!("lattice: {is_lattice}");
            if let Some(d) = distributive {
                println!("distributive: {d} ({})", mode.unwrap());
            }
        }
    }
    Ok(0)
}

fn lattice_sidecar(d: &DistributiveLattice) -> serde_json::Value {
    json!({ "bottom": d.bottom(), "top": d.top() })
}

fn print_cover(cover: &IntervalCover, format: Format) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&CoverJson::from(cover)).unwrap()
            )
        }
        Format::Text => {
            let ivs: Vec<String> = cover
                .intervals
                .iter()
                .map(|iv| format!("[{},{}]", iv.a, iv.b))
                .collect();
            println!(
                "rho = {}{}; span of {} elements; intervals: {}",
                cover.size(),
                if cover.optimal {
                    " (optimal)"
                } else {
                    " (best known)"
                },
                cover.span.len(),
                ivs.join(" ")
            );
        }
    }
}

fn configure_threads(threads: Option<usize>) {
    if let Some(t) = threads {
        // Ignored when a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
}

fn load_poset(path: &Path) -> Result<Poset, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_poset(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_lattice(path: &Path) -> Result<DistributiveLattice, String> {
    let p = load_poset(path)?;
    DistributiveLattice::from_poset(p).map_err(|e| format!("{}: {e}", path.display()))
}

fn save_poset(path: &Path, p: &Poset) -> Result<(), String> {
    fs::write(path, write_poset(p)).map_err(|e| format!("{}: {e}", path.display()))
}

fn save_sidecar(path: &Path, doc: &serde_json::Value) -> Result<(), String> {
    let mut sidecar = path.as_os_str().to_owned();
    sidecar.push(".json");
    fs::write(&sidecar, serde_json::to_string_pretty(doc).unwrap())
        .map_err(|e| format!("{}: {e}", Path::new(&sidecar).display()))
}

fn parse_indices(list: &str) -> Result<Vec<usize>, String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| format!("bad index {s:?}")))
        .collect()
}

fn level_pair(levels: &[usize]) -> Result<(usize, usize), String> {
    match levels {
        [j, k] => Ok((*j, *k)),
        _ => Err("expected --levels J K".into()),
    }
}
