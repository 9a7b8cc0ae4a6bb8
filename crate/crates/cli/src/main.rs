use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand};
use parhull::exact::{format_rational, parse_rational};
use parhull::generators::{check_conditions, lb2_instance, lbm_instance, LowerBoundInstance};
use parhull::lattice::hull;
use parhull::minkowski::{minkowski_oracle, sum_bound, weighted_minkowski, WeightedSumSpec};
use parhull::parallel::{fbound_formula, master_bound, stacked_hull};
use parhull::sphere::sphere_hull_faces;
use parhull_cli::io;
use parhull_cli::sweep::{parse_sizes, run_sweep, sphere_row, Family, SweepSpec};

#[derive(Parser)]
#[command(name = "parhull", version, about = "Exact hulls of stacked polytopes and of spheres with few radii")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one instance of a family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        dim: usize,
        /// One size, e.g. `8` or `8x8`.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; `-p`/`-q` suffixes for the two summands of
        /// `minkowski-random`, `.cert.json` for certificates.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Face lattice of a point set, or of a layered set stacked one dimension up.
    Hull {
        input: PathBuf,
        #[arg(long)]
        layered: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Faces of the hull of a sphere set, per circularity.
    Spherehull {
        input: PathBuf,
        #[arg(long)]
        general_position: bool,
        #[arg(long, default_value_t = 0)]
        oracle_directions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the witness dump.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Face lattice of `(1 − λ)P ⊕ λQ`.
    Minksum {
        p: PathBuf,
        q: PathBuf,
        #[arg(long, default_value = "1/2")]
        lambda: String,
        /// Also build the pairwise-sum hull and fail on any difference.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the closed-form bounds for a size vector.
    Bounds {
        #[arg(long)]
        dim: usize,
        /// Layer sizes, e.g. `8x4x4`.
        #[arg(long)]
        sizes: String,
    },
    /// Regenerate a lower-bound instance and re-verify its certificate.
    Check {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Measure face counts over a size schedule and fit the growth exponent.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        dim: usize,
        /// Comma-separated sizes, e.g. `8,16,32` or `4x4,8x8`.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        general_position: bool,
        #[arg(long, default_value_t = 0)]
        oracle_directions: usize,
        /// Write 0 in the `seconds` column so output is byte-reproducible.
        #[arg(long)]
        no_timing: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn one_size(sizes: &str) -> Result<Vec<usize>> {
    let mut all = parse_sizes(sizes)?;
    ensure!(all.len() == 1, "expected a single size, got {}", all.len());
    Ok(all.remove(0))
}

fn lower_bound(family: Family, dim: usize, n: &[usize], seed: u64) -> Result<LowerBoundInstance> {
    Ok(match (family, n) {
        (Family::Lb2, &[n]) => lb2_instance(dim, n, n, seed)?,
        (Family::Lb2, &[n1, n2]) => lb2_instance(dim, n1, n2, seed)?,
        (Family::Lbm, _) => lbm_instance(dim, n, seed)?,
        _ => bail!("not a lower-bound family or size: {} {n:?}", family.name()),
    })
}

fn sweep_spec(family: Family, dim: usize, sizes: Vec<Vec<usize>>, seed: u64) -> SweepSpec {
    SweepSpec { family, d: dim, sizes, seed, general_position: false, oracle_directions: 0 }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Gen { family, dim, sizes, seed, out } => {
            let n = one_size(&sizes)?;
            let mut rng = parhull::rng::stream(seed, 0);
            match family {
                Family::Lb2 | Family::Lbm => {
                    let inst = lower_bound(family, dim, &n, seed)?;
                    emit(out.as_deref(), &io::write_spheres(&inst.spheres()))?;
                    if let Some(p) = &out {
                        emit(Some(&with_suffix(p, ".cert.json")), &io::certificate_json(&inst))?;
                    }
                }
                Family::StackedRandom => {
                    let set = parhull::generators::random_layered(&mut rng, dim, &n, 16, 1);
                    emit(out.as_deref(), &io::write_layered(&set))?;
                }
                Family::Cyclic => {
                    ensure!(dim % 2 == 0 && n.len() == 1, "cyclic needs even dim and one size");
                    let params = parhull::generators::MomentCurveParams::integers(dim / 2, n[0]);
                    emit(out.as_deref(), &io::write_points(dim, &parhull::generators::moment_curve_points(&params)))?;
                }
                Family::MinkowskiRandom => {
                    let out = out.context("minkowski-random needs --out")?;
                    let (np, nq) = match *n.as_slice() {
                        [a] => (a, a),
                        [a, b] => (a, b),
                        _ => bail!("minkowski-random takes `n` or `nxm`"),
                    };
                    for (suffix, count) in [("-p", np), ("-q", nq)] {
                        let pts: Vec<_> =
                            (0..count).map(|_| parhull::rng::point_in_box(&mut rng, dim, 16, 1)).collect();
                        emit(Some(&with_suffix(&out, suffix)), &io::write_points(dim, &pts))?;
                    }
                }
            }
        }
        Command::Hull { input, layered, out } => {
            let text = read(&input)?;
            let lattice = if layered {
                stacked_hull(&io::parse_layered(&text)?)?
            } else {
                hull(&io::parse_points(&text)?.1)?
            };
            emit(out.as_deref(), &lattice.dump())?;
        }
        Command::Spherehull { input, general_position, oracle_directions, seed, out, witnesses } => {
            let spheres = io::parse_spheres(&read(&input)?)?;
            if oracle_directions > 0 || general_position {
                // Same checks as a sweep row; the family only enables probing.
                let spec = SweepSpec { general_position, oracle_directions, ..sweep_spec(Family::Lb2, spheres.d, vec![], seed) };
                let m = sphere_row(&spec, 0, &spheres)?;
                if let Some(k) = m.oracle_faces {
                    eprintln!("{oracle_directions} probes hit {k} lifted faces, all passing the membership test");
                }
            }
            let report = sphere_hull_faces(&spheres)?;
            emit(out.as_deref(), &io::circularity_csv(&report))?;
            if let Some(w) = witnesses {
                emit(Some(&w), &report.witness_dump())?;
            }
            if !report.degenerate.is_empty() {
                eprintln!("{} lifted faces with degenerate tangency were not counted", report.degenerate.len());
            }
        }
        Command::Minksum { p, q, lambda, oracle, out } => {
            let (_, p) = io::parse_points(&read(&p)?)?;
            let (_, q) = io::parse_points(&read(&q)?)?;
            let spec = WeightedSumSpec::new(p, q, parse_rational(&lambda)?)?;
            let sum = weighted_minkowski(&spec)?;
            if oracle {
                ensure!(
                    sum.geometric_signature() == minkowski_oracle(&spec)?.geometric_signature(),
                    "section and pairwise-sum hull differ"
                );
            }
            let mut text = String::new();
            for v in sum.vertex_ids() {
                let coords: Vec<String> = sum.points[v].iter().map(format_rational).collect();
                text.push_str(&format!("# {v}: {}\n", coords.join(" ")));
            }
            text.push_str(&sum.dump());
            emit(out.as_deref(), &text)?;
        }
        Command::Bounds { dim, sizes } => {
            let n: Vec<u64> = one_size(&sizes)?.iter().map(|&x| x as u64).collect();
            if dim % 2 == 0 {
                eprintln!("warning: the bounds are tight for odd dimensions only");
            }
            println!("master_bound {}", master_bound(&n, dim as u32));
            if n.len() == 2 {
                println!("sum_bound {}", sum_bound(n[0], n[1], dim as u32));
            }
            for k in 0..=dim as u64 {
                println!("fbound k={k} {}", fbound_formula(k, &n));
            }
        }
        Command::Check { family, dim, sizes, seed } => {
            let inst = lower_bound(family, dim, &one_size(&sizes)?, seed)?;
            let cert = check_conditions(&inst)?;
            for c in cert.failures() {
                println!("FAIL {} sphere {} face {:?} margin {}", c.condition.name(), c.sphere, c.face, format_rational(&c.margin));
            }
            println!("{} checks, {} failing", cert.checks.len(), cert.failures().count());
            ensure!(cert.all_pass(), "certificate does not hold");
        }
        Command::Sweep { family, dim, sizes, seed, out, general_position, oracle_directions, no_timing } => {
            let spec = SweepSpec { general_position, oracle_directions, ..sweep_spec(family, dim, parse_sizes(&sizes)?, seed) };
            let sweep = run_sweep(&spec)?;
            emit(out.as_deref(), &sweep.to_csv(!no_timing)?)?;
            eprint!("{}", sweep.report());
        }
    }
    Ok(())
}
