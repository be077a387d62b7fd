use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use knotnu::diagram::{gauss_code, knot_by_name, random_walk, PlanarDiagram};
use knotnu::harness::{
    check_corollary_band, check_theorem2_bounds, demo_realization, scan_doubles, theorem1_sweep, Check, TheoremReport,
};
use knotnu::lee::{Backend, Engine, EngineConfig, LOG_HEADER};
use knotnu::satellite::{twisted_double, ClaspSign, DoubleSpec};
use knotnu::seifert::{band_trade_sequence, boundary_diagram, BandPresentation, SeifertMatrix};
use knotnu::tb::{check_tb_duality, tb_lower_bound, FrontDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "knotnu", version, about = "Concordance invariants of knots and their twisted doubles")]
struct Cli {
    /// Largest diagram handed to the fast backend or rendered from bands
    #[arg(long, global = true, default_value_t = 22)]
    budget: usize,
    /// Append-only result log, reloaded on start
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rasmussen s and nu of a knot
    S {
        /// Library name or PD file
        #[arg(long, allow_hyphen_values = true)]
        knot: String,
        #[arg(long, value_parser = parse_backend)]
        backend: Option<Backend>,
        /// Scramble the diagram with this many random Reidemeister moves first
        #[arg(long, default_value_t = 0)]
        scramble: usize,
    },
    /// PD code of the twisted double D(K,t)
    Double {
        #[arg(long, allow_hyphen_values = true)]
        knot: String,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long, value_parser = parse_clasp, allow_hyphen_values = true)]
        clasp: ClaspSign,
        /// Print the Gauss code instead
        #[arg(long)]
        gauss: bool,
    },
    /// nu of D(K,t) over a range of t
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        knot: String,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long, value_parser = parse_clasp, allow_hyphen_values = true, default_value = "+")]
        clasp: ClaspSign,
        /// Write the table here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
    /// Thurston-Bennequin number of a front, or the stored bound of a knot
    Tb {
        #[arg(long, conflicts_with = "knot")]
        front: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        knot: Option<String>,
    },
    /// Band presentation with a given Seifert matrix
    Realize {
        /// `trefoil`, `fig8`, or rows like `1,1;0,-1` or `[[1,1],[0,-1]]`
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Also print the PD code of the boundary
        #[arg(long)]
        pd: bool,
    },
    /// Trade the bands of one presentation for those of another
    Trade {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// If nu(D+(K,t)) = ±1 then nu(D-(K,t)) = 0
    Thm1 {
        #[arg(long = "knot", allow_hyphen_values = true, default_values = ["U", "T2,3", "-T2,3", "fig8"])]
        knots: Vec<String>,
        #[arg(long, allow_hyphen_values = true, default_value_t = -3)]
        from: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 3)]
        to: i64,
    },
    /// TB(K) <= t_K < -TB(-K), for both clasps
    Thm2 {
        #[arg(long = "knot", allow_hyphen_values = true, default_values = ["U", "T2,3"])]
        knots: Vec<String>,
    },
    /// |nu(K) - nu(K')| <= 1 under a band modification
    Cor5 {
        #[arg(long, requires = "modified")]
        bands: Option<PathBuf>,
        #[arg(long, requires = "bands")]
        modified: Option<PathBuf>,
    },
    /// Knots with nu = 1, 0, -1 sharing a Seifert matrix
    Thm3 {
        #[arg(long, allow_hyphen_values = true, default_value = "fig8")]
        matrix: String,
        /// Most trefoils tied into one band
        #[arg(long, default_value_t = 2)]
        cap: usize,
    },
}

fn parse_clasp(s: &str) -> Result<ClaspSign, String> {
    ClaspSign::parse(s).ok_or_else(|| format!("clasp must be + or -, got `{s}`"))
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    Backend::parse(s).ok_or_else(|| format!("backend must be reference or optimized, got `{s}`"))
}

fn load_knot(arg: &str) -> Result<PlanarDiagram> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg).to_string();
        return Ok(PlanarDiagram::parse(&text)?.with_name(name));
    }
    Ok(knot_by_name(arg)?)
}

fn load_bands(path: &Path) -> Result<BandPresentation> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(BandPresentation::parse(&text)?)
}

fn parse_matrix(s: &str) -> Result<SeifertMatrix> {
    match s {
        "trefoil" | "T2,3" => return Ok(SeifertMatrix::trefoil()),
        "fig8" | "figure-eight" | "4_1" => return Ok(SeifertMatrix::figure_eight()),
        _ => {}
    }
    let rows = s
        .replace(" ", "")
        .replace("],[", ";")
        .trim_matches(|c| c == '[' || c == ']')
        .split(';')
        .map(|row| {
            row.trim_matches(|c: char| c == '[' || c == ']' || c.is_whitespace())
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .with_context(|| format!("bad matrix `{s}`"))?;
    Ok(SeifertMatrix::new(rows)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_output(report: &TheoremReport, format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(report.to_string()),
        Format::Csv => {
            let mut out = String::from("theorem,check,outcome,detail\n");
            for c in &report.checks {
                out.push_str(&format!("{},{},{:?},\"{}\"\n", report.id, c.name, c.outcome, c.detail.replace('"', "'")));
            }
            Ok(out)
        }
        Format::Svg => bail!("svg output is only available for scans"),
    }
}

fn run(cli: Cli) -> Result<bool> {
    let engine = Engine::new(EngineConfig {
        optimized_budget: cli.budget,
        cache_path: cli.cache.clone(),
        ..EngineConfig::default()
    })?;
    match cli.command {
        Command::S { knot, backend, scramble } => {
            let mut d = load_knot(&knot)?;
            if scramble > 0 {
                d = random_walk(&d, cli.seed, scramble, d.crossing_count() + 4)?.0;
            }
            let r = match backend {
                Some(b) => engine.s_invariant(&d, b)?,
                None => engine.report(&d)?,
            };
            match cli.format {
                Format::Text => print!("{}", r.text_block()),
                Format::Csv => println!("{LOG_HEADER}\n{}", r.log_row()),
                Format::Svg => bail!("svg output is only available for scans"),
            }
            Ok(true)
        }
        Command::Double { knot, t, clasp, gauss } => {
            let k = load_knot(&knot)?;
            let d = twisted_double(&DoubleSpec::new(&k, t, clasp))?;
            if gauss {
                println!("{}", gauss_code(&d));
            } else {
                println!("# {} ({} crossings)", d.name().unwrap_or("double"), d.crossing_count());
                println!("{}", d.to_pd_string());
            }
            Ok(true)
        }
        Command::Scan { knot, from, to, clasp, out } => {
            let k = load_knot(&knot)?;
            let scan = scan_doubles(&engine, &k, from..=to, clasp)?;
            let text = match cli.format {
                Format::Csv => scan.to_csv(),
                Format::Svg => scan.to_svg(),
                Format::Text => {
                    let mut s = String::new();
                    for r in &scan.rows {
                        let nu = r.nu.map(|v| v.to_string()).unwrap_or_else(|| "skipped".into());
                        s.push_str(&format!("t={:>3}  nu={:>7}  crossings={}\n", r.t, nu, r.crossings));
                    }
                    let step = scan.step_point().map(|t| t.to_string()).unwrap_or_else(|| "not in range".into());
                    s.push_str(&format!("step point: {step}\nmonotone: {}\n", scan.is_monotone()));
                    s
                }
            };
            emit(out.as_deref(), &text)?;
            Ok(scan.is_monotone() && scan.is_bounded())
        }
        Command::Verify { which } => {
            let report = match which {
                Verify::Thm1 { knots, from, to } => {
                    let ks = knots.iter().map(|k| load_knot(k)).collect::<Result<Vec<_>>>()?;
                    theorem1_sweep(&engine, &ks, from..=to)?
                }
                Verify::Thm2 { knots } => {
                    let mut all = TheoremReport::new("thm2");
                    for name in &knots {
                        let k = load_knot(name)?;
                        for clasp in [ClaspSign::Positive, ClaspSign::Negative] {
                            let (mut r, _) = check_theorem2_bounds(&engine, name, &k, clasp)?;
                            for c in &mut r.checks {
                                c.name = format!("{} D{} {}", name, clasp.symbol(), c.name);
                            }
                            all.extend(r);
                        }
                    }
                    all
                }
                Verify::Cor5 { bands, modified } => {
                    let mut r = TheoremReport::new("cor5");
                    let pairs: Vec<(String, BandPresentation, BandPresentation)> = match (bands, modified) {
                        (Some(a), Some(b)) => vec![("given".into(), load_bands(&a)?, load_bands(&b)?)],
                        _ => {
                            let tref = BandPresentation::realize(&SeifertMatrix::trefoil())?;
                            let fig8 = BandPresentation::realize(&SeifertMatrix::figure_eight())?;
                            let mut clasped = fig8.clone();
                            clasped.set_clasps(0, 1, 1)?;
                            vec![
                                ("trefoil, identity".into(), tref.clone(), tref.clone()),
                                ("trefoil, tied trefoil".into(), tref.clone(), tref.insert_trefoil(0, -1)?),
                                ("figure-eight, extra clasp".into(), fig8, clasped),
                            ]
                        }
                    };
                    for (label, a, b) in pairs {
                        let c = match check_corollary_band(&engine, &a, &b, cli.budget) {
                            Ok(c) => c,
                            Err(knotnu::Error::BudgetExceeded { crossings, budget }) => {
                                Check::skipped("band modification", format!("{crossings} crossings over {budget}"))
                            }
                            Err(e) => return Err(e.into()),
                        };
                        r.push(Check { name: format!("{label}: {}", c.name), ..c });
                    }
                    r
                }
                Verify::Thm3 { matrix, cap } => {
                    let a = parse_matrix(&matrix)?;
                    match demo_realization(&engine, &a, cap, cli.budget) {
                        Ok(real) => {
                            if cli.format == Format::Text {
                                for (bp, nu) in real.sequence.iter().zip(&real.nus) {
                                    println!("# nu = {nu}");
                                    print!("{}", bp.to_text());
                                }
                            }
                            real.report()
                        }
                        Err(e @ knotnu::Error::SearchFailed(_)) => {
                            let mut r = TheoremReport::new("thm3");
                            r.push(Check::new("search", false, e.to_string()));
                            r
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
            };
            print!("{}", report_output(&report, cli.format)?);
            Ok(report.passed())
        }
        Command::Tb { front, knot } => match (front, knot) {
            (Some(path), _) => {
                let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                let f = FrontDiagram::parse(&text)?;
                let d = f.resolve()?;
                println!("tb: {}", f.tb()?);
                println!("crossings: {}", f.crossing_count());
                println!("right cusps: {}", f.right_cusps());
                println!("knot: {}", d.to_pd_string());
                Ok(true)
            }
            (None, Some(name)) => {
                let cert = tb_lower_bound(&name)?;
                let exact = cert.exact.map(|e| format!(", TB = {e}")).unwrap_or_default();
                println!("{}: tb >= {}{exact}", cert.knot, cert.tb);
                println!("front: {}", cert.front);
                match check_tb_duality(&name) {
                    Ok(dual) => {
                        println!("TB(K) + TB(-K) = {} + {} <= -1: {}", dual.tb, dual.tb_mirror, dual.holds);
                        Ok(dual.holds)
                    }
                    Err(knotnu::Error::MissingTb(_)) => Ok(true),
                    Err(e) => Err(e.into()),
                }
            }
            (None, None) => bail!("give --front <file> or --knot <name>"),
        },
        Command::Realize { matrix, pd } => {
            let a = parse_matrix(&matrix)?;
            let bp = BandPresentation::realize(&a)?;
            print!("{}", bp.to_text());
            if pd {
                let d = boundary_diagram(&bp, cli.budget)?;
                println!("# boundary, {} crossings", d.crossing_count());
                println!("{}", d.to_pd_string());
            }
            Ok(true)
        }
        Command::Trade { from, to } => {
            let seq = band_trade_sequence(&load_bands(&from)?, &load_bands(&to)?)?;
            let mut ok = true;
            let mut last: Option<i64> = None;
            for (i, bp) in seq.iter().enumerate() {
                let nu = match boundary_diagram(bp, cli.budget).and_then(|d| engine.nu(&d)) {
                    Ok(nu) => Some(nu),
                    Err(knotnu::Error::BudgetExceeded { .. }) => None,
                    Err(e) => return Err(e.into()),
                };
                if let (Some(a), Some(b)) = (last, nu) {
                    ok &= (a - b).abs() <= 1;
                }
                last = nu.or(last);
                let shown = nu.map(|v| v.to_string()).unwrap_or_else(|| "over budget".into());
                println!("# step {i}: nu = {shown}");
                print!("{}", bp.to_text());
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
