//! Command-line front end: construction, verification, line checks,
//! spectral reports, enumeration, classification, and defining sets.
//!
//! Exit codes: 0 when the command succeeds (including a property that
//! holds), 1 when a checked property is violated (the witness is in the
//! report), 2 for usage, input, or resource errors.

use clap::{Parser, Subcommand, ValueEnum};
use perfdom::enumerator::{cache_file_name, read_cache, write_cache};
use perfdom::*;
use serde_json::json;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "perfdom",
    version,
    about = "Perfect dominating sets of the torus Z_p^n with p = 2n+1",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Build a code and emit it in the canonical file format.
    Construct {
        /// Cycle length p (odd; the dimension is n = (p−1)/2).
        #[arg(long)]
        p: u32,
        /// Dimension n; checked against p when given.
        #[arg(long)]
        n: Option<usize>,
        /// Sign string for the graph-type construction, e.g. `+-+`
        /// (empty for n = 1).
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        /// Hyperplane normal as comma-separated residues, e.g. `1,3,2`.
        #[arg(long)]
        a: Option<String>,
        /// Offset residue.
        #[arg(long)]
        k: u32,
        /// Output file; the canonical form goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check that a code file is a perfect dominating set.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check that every axis-parallel line holds exactly one codeword.
    Lines {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Kernel frequencies and the exact rank of A + I.
    Spectrum {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: Option<usize>,
        /// Include the full sorted kernel list in the report.
        #[arg(long)]
        list_kernel: bool,
        /// Override the dimension guard for the exact rank computation.
        #[arg(long)]
        rank_limit: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Enumerate every perfect dominating set by exact cover.
    Enumerate {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: Option<usize>,
        /// Disable the axis-line prune (it is on by default for prime p).
        #[arg(long)]
        no_prune: bool,
        /// Directory of family caches; hits skip the search.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Upper bound on search worker threads.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Override the universe-size guard.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide whether a perfect code is a hyperplane code.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute a defining set for a code.
    Defining {
        /// greedy and min read a code file; proposition takes --p/--eps/--k.
        #[arg(long, value_enum)]
        mode: Mode,
        file: Option<PathBuf>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        /// Size cap for the exhaustive minimum search.
        #[arg(long)]
        cap: Option<usize>,
        /// Family cache directory used by greedy and min.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Greedy,
    Min,
    Proposition,
}

/// Usage and input problems surfaced by the CLI itself.
fn usage_err(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn main() {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn run(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Construct {
            p,
            n,
            eps,
            a,
            k,
            out,
            format,
        } => construct(p, n, eps, a, k, out, format),
        Cmd::Verify { file, format } => verify_cmd(&file, format),
        Cmd::Lines { file, format } => lines_cmd(&file, format),
        Cmd::Spectrum {
            p,
            n,
            list_kernel,
            rank_limit,
            format,
        } => spectrum(p, n, list_kernel, rank_limit, format),
        Cmd::Enumerate {
            p,
            n,
            no_prune,
            cache_dir,
            threads,
            limit,
            format,
        } => enumerate_cmd(p, n, no_prune, cache_dir, threads, limit, format),
        Cmd::Classify { file, format } => classify_cmd(&file, format),
        Cmd::Defining {
            mode,
            file,
            p,
            eps,
            k,
            cap,
            cache_dir,
            format,
        } => defining_cmd(mode, file, p, eps, k, cap, cache_dir, format),
    }
}

fn params_for(p: u32, n: Option<usize>) -> Result<TorusParams> {
    let params = TorusParams::from_p(p)?;
    if let Some(n) = n {
        if n != params.n() {
            return Err(usage_err(format!(
                "p = {p} fixes n = {}, but --n {n} was given",
                params.n()
            )));
        }
    }
    Ok(params)
}

fn read_code(path: &Path) -> Result<CodeSet> {
    let file = File::open(path)?;
    CodeSet::read_canonical(BufReader::new(file))
}

fn coords_json(pt: &TorusPoint) -> serde_json::Value {
    json!(pt.coords())
}

fn coords_text(pt: &TorusPoint) -> String {
    let parts: Vec<String> = pt.coords().iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn construct(
    p: u32,
    n: Option<usize>,
    eps: Option<String>,
    a: Option<String>,
    k: u32,
    out: Option<PathBuf>,
    format: Format,
) -> Result<i32> {
    let params = params_for(p, n)?;
    let code = match (&eps, &a) {
        (Some(_), Some(_)) => {
            return Err(usage_err("--eps and --a are mutually exclusive"));
        }
        (_, None) => {
            let signs = Eq1Spec::parse_signs(eps.as_deref().unwrap_or(""))?;
            build_eq1(&Eq1Spec::new(signs, k, &params)?, &params)?
        }
        (None, Some(csv)) => {
            let normal = parse_normal(csv)?;
            build_hyperplane(&HyperplaneSpec::new(normal, k, &params)?, &params)?
        }
    };
    match out {
        None => {
            print!("{}", code.to_canonical_string());
        }
        Some(path) => {
            let mut f = File::create(&path)?;
            code.write_canonical(&mut f)?;
            f.flush()?;
            match format {
                Format::Text => println!("wrote {} ({} points)", path.display(), code.len()),
                Format::Json => println!(
                    "{}",
                    json!({ "file": path.display().to_string(), "points": code.len() })
                ),
            }
        }
    }
    Ok(0)
}

fn parse_normal(csv: &str) -> Result<Vec<u32>> {
    csv.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| usage_err(format!("bad normal entry `{s}`")))
        })
        .collect()
}

fn verify_cmd(path: &Path, format: Format) -> Result<i32> {
    let code = read_code(path)?;
    let report = is_perfect(&code);
    match format {
        Format::Text => match &report.witness {
            None => println!("perfect: {} points, every vertex dominated exactly once", code.len()),
            Some(w) => println!(
                "not perfect: vertex {} dominated {} times",
                coords_text(&w.vertex),
                w.count
            ),
        },
        Format::Json => {
            let witness = report
                .witness
                .as_ref()
                .map(|w| json!({ "vertex": coords_json(&w.vertex), "count": w.count }));
            println!(
                "{}",
                json!({ "perfect": report.perfect, "points": code.len(), "witness": witness })
            );
        }
    }
    Ok(if report.perfect { 0 } else { 1 })
}

fn lines_cmd(path: &Path, format: Format) -> Result<i32> {
    let code = read_code(path)?;
    let report = check_line_property(&code);
    match format {
        Format::Text => match &report.witness {
            None => println!("line property holds: one codeword on every axis-parallel line"),
            Some(w) => println!(
                "line property fails: axis {} line through {} holds {} codewords",
                w.axis,
                coords_text(&w.base),
                w.count
            ),
        },
        Format::Json => {
            let witness = report.witness.as_ref().map(|w| {
                json!({ "axis": w.axis, "base": coords_json(&w.base), "count": w.count })
            });
            println!("{}", json!({ "holds": report.holds, "witness": witness }));
        }
    }
    Ok(if report.holds { 0 } else { 1 })
}

fn spectrum(
    p: u32,
    n: Option<usize>,
    list_kernel: bool,
    rank_limit: Option<usize>,
    format: Format,
) -> Result<i32> {
    let params = params_for(p, n)?;
    let kernel = enumerate_kernel(&params)?;
    let (rank, rank_note) = match rank_a_plus_i(&params, rank_limit) {
        Ok(r) => (Some(r), None),
        Err(Error::ResourceLimit(msg)) => (None, Some(msg)),
        Err(e) => return Err(e),
    };
    match format {
        Format::Text => {
            println!(
                "p={} n={} vertices={}",
                params.p(),
                params.n(),
                params.vertex_count_usize()?
            );
            println!("kernel size: {}", kernel.len());
            match rank {
                Some(r) => println!("rank(A+I): {r}"),
                None => println!(
                    "rank(A+I): skipped ({})",
                    rank_note.as_deref().unwrap_or("guard")
                ),
            }
            if list_kernel {
                for y in kernel.members() {
                    println!("{}", coords_text(y));
                }
            }
        }
        Format::Json => {
            let members: Option<Vec<serde_json::Value>> =
                list_kernel.then(|| kernel.members().iter().map(coords_json).collect());
            println!(
                "{}",
                json!({
                    "p": params.p(),
                    "n": params.n(),
                    "vertex_count": params.vertex_count_usize()?,
                    "kernel_size": kernel.len(),
                    "kernel": members,
                    "rank": rank,
                    "rank_note": rank_note,
                })
            );
        }
    }
    Ok(0)
}

fn enumerate_cmd(
    p: u32,
    n: Option<usize>,
    no_prune: bool,
    cache_dir: Option<PathBuf>,
    threads: usize,
    limit: Option<usize>,
    format: Format,
) -> Result<i32> {
    let params = params_for(p, n)?;
    let mut options = EnumerateOptions::for_params(&params);
    options.threads = threads;
    options.limit = limit;
    if no_prune {
        options.prune = false;
    }
    let mut from_cache = false;
    let mut cache_file: Option<PathBuf> = None;
    let family = match &cache_dir {
        Some(dir) => match read_cache(&params, dir)? {
            Some(f) => {
                from_cache = true;
                cache_file = Some(dir.join(cache_file_name(&params)));
                f
            }
            None => {
                let f = enumerate_all(&params, &options)?;
                cache_file = Some(write_cache(&f, dir)?);
                f
            }
        },
        None => enumerate_all(&params, &options)?,
    };
    match format {
        Format::Text => {
            println!(
                "{} perfect dominating sets (complete enumeration)",
                family.len()
            );
            if let Some(path) = &cache_file {
                println!(
                    "cache: {}{}",
                    path.display(),
                    if from_cache { " (hit)" } else { " (written)" }
                );
            }
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "p": params.p(),
                    "n": params.n(),
                    "count": family.len(),
                    "complete": family.complete(),
                    "pruned": if from_cache { None } else { Some(options.prune) },
                    "from_cache": from_cache,
                    "cache_file": cache_file.as_ref().map(|f| f.display().to_string()),
                })
            );
        }
    }
    Ok(0)
}

fn classify_cmd(path: &Path, format: Format) -> Result<i32> {
    let code = read_code(path)?;
    let classification = classify(&code)?;
    let eq1 = recover_eq1(&code).map(|s| s.display());
    match (&classification, format) {
        (Classification::Hyperplane(h), Format::Text) => {
            println!("hyperplane code: {}", h.display());
            match &eq1 {
                Some(s) => println!("graph-type form: {s}"),
                None => println!("graph-type form: none"),
            }
        }
        (Classification::NotHyperplane, Format::Text) => {
            println!("not a hyperplane code");
        }
        (_, Format::Json) => {
            let (hyperplane, normal, k) = match &classification {
                Classification::Hyperplane(h) => {
                    (true, Some(json!(h.normal())), Some(h.k()))
                }
                Classification::NotHyperplane => (false, None, None),
            };
            println!(
                "{}",
                json!({
                    "hyperplane": hyperplane,
                    "normal": normal,
                    "k": k,
                    "eq1": eq1,
                })
            );
        }
    }
    Ok(0)
}

fn defining_cmd(
    mode: Mode,
    file: Option<PathBuf>,
    p: Option<u32>,
    eps: Option<String>,
    k: Option<u32>,
    cap: Option<usize>,
    cache_dir: Option<PathBuf>,
    format: Format,
) -> Result<i32> {
    match mode {
        Mode::Greedy | Mode::Min => {
            let path = file.ok_or_else(|| {
                usage_err("greedy and min modes read a code file argument")
            })?;
            let code = read_code(&path)?;
            let params = *code.params();
            let family = load_family(&params, cache_dir.as_deref())?;
            if mode == Mode::Greedy {
                let d = greedy_defining(&code, &family)?;
                let valid = is_defining(d.points(), &code, &family)?;
                print_defining("greedy", &d, &family, valid, None, format);
            } else {
                match min_defining(&code, &family, cap)? {
                    MinDefining::Found(d) => {
                        let valid = is_defining(d.points(), &code, &family)?;
                        print_defining("min", &d, &family, valid, None, format);
                    }
                    MinDefining::ExceedsCap(cap) => match format {
                        Format::Text => {
                            println!("no defining set of size at most {cap} exists")
                        }
                        Format::Json => println!(
                            "{}",
                            json!({ "mode": "min", "found": false, "cap": cap })
                        ),
                    },
                }
            }
        }
        Mode::Proposition => {
            if file.is_some() {
                return Err(usage_err(
                    "proposition mode takes --p, --eps, and --k instead of a file",
                ));
            }
            let p = p.ok_or_else(|| usage_err("proposition mode requires --p"))?;
            let k = k.ok_or_else(|| usage_err("proposition mode requires --k"))?;
            let params = params_for(p, None)?;
            let signs = Eq1Spec::parse_signs(eps.as_deref().unwrap_or(""))?;
            let spec = Eq1Spec::new(signs, k, &params)?;
            let d = proposition_defining(&spec, &params)?;
            let family = eq1_family(&params)?;
            let valid = is_defining(d.points(), d.target(), &family)?;
            let recovered = recover_eq1_spec(d.points(), &params)?;
            let round_trip = &build_eq1(&recovered, &params)? == d.target();
            print_defining(
                "proposition",
                &d,
                &family,
                valid,
                Some((recovered.display(), round_trip)),
                format,
            );
        }
    }
    Ok(0)
}

fn load_family(params: &TorusParams, cache_dir: Option<&Path>) -> Result<CodeFamily> {
    if let Some(dir) = cache_dir {
        if let Some(f) = read_cache(params, dir)? {
            return Ok(f);
        }
        let f = enumerate_all(params, &EnumerateOptions::for_params(params))?;
        write_cache(&f, dir)?;
        return Ok(f);
    }
    enumerate_all(params, &EnumerateOptions::for_params(params))
}

fn print_defining(
    mode: &str,
    d: &DefiningSet,
    family: &CodeFamily,
    valid: bool,
    recovery: Option<(String, bool)>,
    format: Format,
) {
    match format {
        Format::Text => {
            println!(
                "mode: {mode} (family {}, {} members)",
                d.family_kind(),
                family.len()
            );
            println!("size: {}", d.len());
            let pts: Vec<String> = d.points().iter().map(coords_text).collect();
            println!("points: {}", pts.join(" "));
            println!("valid: {valid}");
            if let Some((spec, round_trip)) = recovery {
                println!("recovered: {spec}");
                println!("round trip: {round_trip}");
            }
        }
        Format::Json => {
            let points: Vec<serde_json::Value> = d.points().iter().map(coords_json).collect();
            let mut doc = json!({
                "mode": mode,
                "family": d.family_kind().to_string(),
                "family_members": family.len(),
                "size": d.len(),
                "points": points,
                "valid": valid,
            });
            if mode == "min" {
                doc["found"] = json!(true);
            }
            if let Some((spec, round_trip)) = recovery {
                doc["recovered"] = json!(spec);
                doc["round_trip"] = json!(round_trip);
            }
            println!("{doc}");
        }
    }
}
