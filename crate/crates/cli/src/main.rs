//! `hypertour`: Euler tours and families of hypergraphs from the command
//! line.
//!
//! Exit status: 0 success, 1 negative answer, 2 input or cap error. Results
//! go to stdout; explanations go to stderr.

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Parser, Subcommand};
use hypertour_core::designs::{scale, steiner_quadruple_system_8, steiner_triple_system};
use hypertour_core::oracle::{oracle_euler, OracleMode, ORACLE_STATE_CAP};
use hypertour_core::parity::BARRIER_STATE_CAP;
use hypertour_core::{
    assess, emit_ucycle, euler_family, find_barrier_brute_force, line_graph_hamiltonian_cycle,
    spanning_euler_tour, verify, ClosedWalk, EulerFamily, Hypergraph, Provenance, SpanningOutcome,
};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "hypertour",
    version,
    about = "Euler tours and families of hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a hypergraph file to stdout.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Report structure, admissibility and which sufficient conditions hold.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Number of files processed in parallel.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Find an Euler family.
    Family { file: PathBuf },
    /// Find an Euler tour: the spanning construction first, then a family
    /// consisting of a single walk.
    Tour {
        file: PathBuf,
        /// Only accept a spanning tour.
        #[arg(long)]
        spanning: bool,
    },
    /// Check walks against a hypergraph.
    Verify {
        file: PathBuf,
        tour: PathBuf,
        /// Require every vertex to be visited.
        #[arg(long)]
        spanning: bool,
        /// Accept several walks (an Euler family) instead of a single tour.
        #[arg(long)]
        family: bool,
    },
    /// Minimum barrier of the incidence graph by exhaustive search. Exits 1
    /// when a barrier exists.
    Barrier {
        file: PathBuf,
        #[arg(long, default_value_t = BARRIER_STATE_CAP)]
        cap: u64,
    },
    /// Hamiltonian cycle of the block-intersection graph from a tour.
    Bicg { file: PathBuf, tour: PathBuf },
    /// Rank-two universal cycle from a tour.
    Ucycle { file: PathBuf, tour: PathBuf },
    /// Brute-force answer for small instances.
    Oracle {
        file: PathBuf,
        /// family, tour or spanning.
        #[arg(long)]
        mode: String,
        #[arg(long, default_value_t = ORACLE_STATE_CAP)]
        cap: u64,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Steiner triple system of order N.
    Sts { n: usize },
    /// Steiner quadruple system of order 8.
    Sqs8,
    /// Repeat every edge of FILE LAMBDA times.
    Scale { file: PathBuf, lambda: usize },
    /// Random hypergraph, for tests.
    Random {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 2)]
        min_size: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit status of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Yes = 0,
    No = 1,
    Error = 2,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Status::Error as u8)
        }
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<Hypergraph> {
    let text = read_text(path)?;
    Hypergraph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_walks(path: &Path) -> anyhow::Result<EulerFamily> {
    let text = read_text(path)?;
    EulerFamily::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_tour(path: &Path) -> anyhow::Result<ClosedWalk> {
    let fam = load_walks(path)?;
    let n = fam.walks.len();
    let mut walks = fam.walks.into_iter();
    match (walks.next(), n) {
        (Some(w), 1) => Ok(w),
        _ => anyhow::bail!("{}: expected exactly one walk, found {n}", path.display()),
    }
}

fn run(command: Command) -> anyhow::Result<Status> {
    match command {
        Command::Gen { what } => generate(what),
        Command::Check { files, jobs } => check_files(&files, jobs),
        Command::Family { file } => {
            let h = load(&file)?;
            match euler_family(&h)? {
                Some(fam) => {
                    eprintln!("family of {} walk(s), verified", fam.walks.len());
                    print!("{}", fam.to_text());
                    Ok(Status::Yes)
                }
                None => {
                    eprintln!("no Euler family: the incidence graph has a barrier");
                    Ok(Status::No)
                }
            }
        }
        Command::Tour { file, spanning } => tour(&load(&file)?, spanning),
        Command::Verify {
            file,
            tour,
            spanning,
            family,
        } => {
            let h = load(&file)?;
            let walks = load_walks(&tour)?;
            let report = verify(&h, &walks, spanning, !family);
            for v in &report.violations {
                eprintln!("violation: {v}");
            }
            println!("family: {}", yes_no(report.is_family));
            println!("tour: {}", yes_no(report.is_tour));
            println!("spanning: {}", yes_no(report.is_spanning));
            Ok(if report.passed() {
                Status::Yes
            } else {
                Status::No
            })
        }
        Command::Barrier { file, cap } => {
            let h = load(&file)?;
            match find_barrier_brute_force(&h.incidence(), cap)? {
                Some(b) => {
                    let s: Vec<String> = b.s.iter().map(|x| format!("x{x}")).collect();
                    let t: Vec<String> = b.t.iter().map(ToString::to_string).collect();
                    println!("S: {}", or_dash(&s));
                    println!("T: {}", or_dash(&t));
                    println!("delta: {}", b.delta);
                    eprintln!("barrier found: no Euler family exists");
                    Ok(Status::No)
                }
                None => {
                    eprintln!("no barrier: an Euler family exists");
                    Ok(Status::Yes)
                }
            }
        }
        Command::Bicg { file, tour } => {
            let h = load(&file)?;
            let walk = load_tour(&tour)?;
            match line_graph_hamiltonian_cycle(&h, &walk) {
                Ok(cycle) => {
                    let line: Vec<String> = cycle.iter().map(ToString::to_string).collect();
                    println!("{}", line.join(" "));
                    Ok(Status::Yes)
                }
                Err(hypertour_core::Error::InvalidWalk(msg)) => {
                    eprintln!("not an Euler tour: {msg}");
                    Ok(Status::No)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Ucycle { file, tour } => {
            let h = load(&file)?;
            let walk = load_tour(&tour)?;
            let report = verify(
                &h,
                &EulerFamily::single(walk.clone(), Provenance::Input),
                false,
                true,
            );
            if !report.passed() {
                for v in &report.violations {
                    eprintln!("violation: {v}");
                }
                return Ok(Status::No);
            }
            println!("{}", emit_ucycle(&walk));
            Ok(Status::Yes)
        }
        Command::Oracle { file, mode, cap } => {
            let mode: OracleMode = mode.parse()?;
            let h = load(&file)?;
            let v = oracle_euler(&h, mode, cap)?;
            println!("family: {}", yes_no(v.family_exists));
            println!("tour: {}", yes_no(v.tour_exists));
            println!("spanning tour: {}", yes_no(v.spanning_tour_exists));
            if let Some(w) = &v.witness {
                let pairs: Vec<String> = w.iter().map(|(a, b)| format!("{a},{b}")).collect();
                println!("witness: {}", pairs.join(" "));
            }
            eprintln!("{} vertex-pair choices examined", v.search_size);
            Ok(if v.holds(mode) {
                Status::Yes
            } else {
                Status::No
            })
        }
    }
}

fn or_dash(items: &[String]) -> String {
    if items.is_empty() {
        "-".into()
    } else {
        items.join(" ")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn generate(what: Gen) -> anyhow::Result<Status> {
    let h = match what {
        Gen::Sts { n } => steiner_triple_system(n)?,
        Gen::Sqs8 => steiner_quadruple_system_8(),
        Gen::Scale { file, lambda } => scale(&load(&file)?, lambda)?,
        Gen::Random {
            vertices,
            edges,
            min_size,
            max_size,
            seed,
        } => {
            anyhow::ensure!(
                1 <= min_size && min_size <= max_size && max_size <= vertices,
                "need 1 <= min-size <= max-size <= vertices"
            );
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let list = (0..edges)
                .map(|_| {
                    let k = rng.gen_range(min_size..=max_size);
                    sample(&mut rng, vertices, k).into_vec()
                })
                .collect();
            Hypergraph::new(vertices, list)?
        }
    };
    print!("{}", h.to_text());
    Ok(Status::Yes)
}

fn tour(h: &Hypergraph, spanning: bool) -> anyhow::Result<Status> {
    match spanning_euler_tour(h)? {
        SpanningOutcome::Found(walk) => {
            eprintln!("spanning Euler tour of length {}, verified", walk.len());
            println!("{walk}");
            return Ok(Status::Yes);
        }
        SpanningOutcome::Failed(stage) => {
            eprintln!("spanning construction stopped: {stage}");
            if spanning {
                return Ok(Status::No);
            }
        }
    }
    match euler_family(h)? {
        Some(fam) if fam.walks.len() == 1 => {
            eprintln!(
                "Euler tour (not spanning) of length {}, verified",
                fam.walks[0].len()
            );
            print!("{}", fam.to_text());
            Ok(Status::Yes)
        }
        Some(fam) => {
            eprintln!(
                "only an Euler family of {} walks was found; no tour reported",
                fam.walks.len()
            );
            Ok(Status::No)
        }
        None => {
            eprintln!("no Euler family, hence no tour");
            Ok(Status::No)
        }
    }
}

fn check_files(files: &[PathBuf], jobs: usize) -> anyhow::Result<Status> {
    let jobs = jobs.max(1).min(files.len());
    let mut results: Vec<Option<(String, Status)>> = vec![None; files.len()];
    std::thread::scope(|scope| {
        let chunk = files.len().div_ceil(jobs);
        for (paths, slots) in files.chunks(chunk).zip(results.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (path, slot) in paths.iter().zip(slots) {
                    *slot = Some(match check_one(path) {
                        Ok(report) => (report, Status::Yes),
                        Err(e) => {
                            eprintln!("error: {e:#}");
                            (String::new(), Status::Error)
                        }
                    });
                }
            });
        }
    });
    let mut worst = Status::Yes;
    for (report, status) in results.into_iter().flatten() {
        print!("{report}");
        worst = worst.max(status);
    }
    Ok(worst)
}

fn check_one(path: &Path) -> anyhow::Result<String> {
    let h = load(path)?;
    let mut out = String::new();
    let w = &mut out;
    let opt = |o: Option<usize>| o.map_or("-".to_string(), |v| v.to_string());
    let cond = |o: Option<bool>| match o {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "undetermined (cap exceeded)",
    };
    writeln!(w, "file: {}", path.display())?;
    writeln!(w, "vertices: {}", h.vertex_count())?;
    writeln!(w, "edges: {}", h.edge_count())?;
    writeln!(w, "corank: {}", opt(h.corank()))?;
    writeln!(w, "rank: {}", opt(h.rank()))?;
    writeln!(w, "max multiplicity: {}", h.max_multiplicity())?;
    writeln!(w, "components: {}", h.component_count())?;
    let rank = h.rank().unwrap_or(0);
    for t in 1..=rank.min(4) {
        match h.profile(&[t]) {
            Ok(p) => {
                let d = p.degrees[0];
                writeln!(w, "degree t={t}: min {} max {}", d.min, d.max)?;
            }
            Err(e) => writeln!(w, "degree t={t}: unavailable ({e})")?,
        }
    }
    let a = assess(&h);
    match &a.threshold {
        Some(g) => writeln!(w, "threshold g(c,k,mu): {g}")?,
        None => writeln!(w, "threshold g(c,k,mu): undefined")?,
    }
    writeln!(w, "admissible: {}", yes_no(a.admissible))?;
    writeln!(
        w,
        "flag connectivity needed: {}",
        opt(a.flag_connectivity_needed)
    )?;
    writeln!(w, "flag connected: {}", cond(a.flag_connected))?;
    writeln!(
        w,
        "family condition (corank >= 3, flag-connected): {}",
        cond(a.family_guaranteed)
    )?;
    writeln!(
        w,
        "spanning condition, pair degree >= rank: {}",
        cond(a.spanning_by_pair_degree)
    )?;
    writeln!(
        w,
        "spanning condition, triple degree >= 1 and n >= k^2-3k+5: {}",
        cond(a.spanning_by_triple_degree)
    )?;
    writeln!(
        w,
        "spanning condition, r-degree >= 1 for some 4 <= r <= k: {}",
        cond(a.spanning_by_high_degree)
    )?;
    let cuts = h.strong_cut_edges();
    if cuts.is_empty() {
        writeln!(w, "strong cut edges: none")?;
    } else {
        let list: Vec<String> = cuts.iter().map(ToString::to_string).collect();
        writeln!(w, "strong cut edges: {}", list.join(" "))?;
    }
    writeln!(
        w,
        "flag spanning tour: {}",
        yes_no(h.flag_spanning_tour_exists())
    )?;
    Ok(out)
}
