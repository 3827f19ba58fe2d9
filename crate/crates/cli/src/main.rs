//! `v22`: command-line access to the exact toolkit. Output is one
//! `key = value` pair per line.
//!
//! Exit codes: 0 success, 1 a checked verdict failed, 2 degenerate or
//! unsupported input, 3 unreadable or unparsable input.

use std::fmt::Display;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use v22::apolar::{catalecticant, hilbert_function, perp, perp_ideal};
use v22::census::{census, CensusOptions};
use v22::invariants::{aronhold, covariant_quartic};
use v22::netquad::{discriminant, jacobian_minors, klein_net, q_perp, NetOfQuadrics};
use v22::parse::parse_poly;
use v22::pipeline::{circle, describe};
use v22::resolve::min_res;
use v22::skewfano::{eta_from_tor, pfaffian_ideal};
use v22::waring::{classify, solve_weights, WeightOutcome, TABLE};
use v22::{Error, Field, MultiPoly, Ring};

#[derive(Parser)]
#[command(
    name = "v22",
    version,
    about = "Exact computations with plane quartics, nets of quadrics and skew nets"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Opts {
    /// Work over GF(p) instead of the rationals.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Degree cap for ideals and resolutions.
    #[arg(long, global = true, default_value_t = 8)]
    cap: u32,
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

/// Three quadrics in z0..z3, or the Klein net.
#[derive(Args, Clone)]
struct NetArgs {
    /// Quadrics inline, or one file holding them (one per line).
    quadrics: Vec<String>,
    #[arg(long, conflicts_with = "quadrics")]
    klein: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Catalecticant of a quartic and its rank.
    Cat {
        form: String,
    },
    /// Hilbert function of the apolar algebra.
    Hf {
        form: String,
    },
    /// Basis of the perpendicular ideal in one degree.
    Perp {
        form: String,
        #[arg(long)]
        degree: u32,
    },
    /// The degree-4 invariant of a plane cubic.
    Aronhold {
        form: String,
    },
    /// Covariant quartic of a plane quartic.
    Covariant {
        form: String,
    },
    /// Row of the apolar classification table.
    Classify {
        form: String,
    },
    /// Weights writing a quartic as a sum of fourth powers of the given lines.
    Weights {
        form: String,
        #[arg(required = true)]
        lines: Vec<String>,
    },
    Discriminant(NetArgs),
    /// Maximal minors of the Jacobian of a net.
    Jacobian(NetArgs),
    /// Minimal resolution of q^perp (three quadrics) or f^perp (one form).
    Resolve {
        forms: Vec<String>,
        #[arg(long, conflicts_with = "forms")]
        klein: bool,
    },
    /// The skew net from the syzygies of q^perp.
    Eta(NetArgs),
    /// Pfaffians of the skew net and their dual socle quartic.
    Pfaffian(NetArgs),
    /// The full chain with its proportionality verdicts.
    Circle(NetArgs),
    /// Isotropic 3-planes and lines over GF(p) (default p = 11).
    Census {
        #[command(flatten)]
        net: NetArgs,
        /// Maximum number of point pairs tested for lines.
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
        /// Number of sample points and lines printed.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

enum Failure {
    Verdict(String),
    Degenerate(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => Failure::Input(p.to_string()),
            other => Failure::Degenerate(other.to_string()),
        }
    }
}

type Out = Result<(), Failure>;

fn kv(key: &str, value: impl Display) {
    // A closed pipe (e.g. `| head`) ends the output quietly.
    if writeln!(std::io::stdout(), "{key} = {value}").is_err() {
        std::process::exit(0);
    }
}

fn field(opts: &Opts) -> Result<Field, Failure> {
    match opts.prime {
        Some(p) => Ok(Field::prime(p)?),
        None => Ok(Field::Rational),
    }
}

/// Reads `arg` as a file if one exists at that path.
fn text(arg: &str) -> Result<String, Failure> {
    if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

/// The ring named by the first variable occurring in `s`.
fn ring_of(s: &str, field: Field) -> Ring {
    let b = s.as_bytes();
    for i in 0..b.len().saturating_sub(1) {
        if b[i + 1].is_ascii_digit() {
            match b[i] {
                b'd' => return Ring::plane_ops(field),
                b'z' => return Ring::space(field),
                b'w' => return Ring::space_ops(field),
                b'x' => return Ring::plane(field),
                _ => {}
            }
        }
    }
    Ring::plane(field)
}

fn poly_in(s: &str, ring: Ring) -> Result<MultiPoly, Failure> {
    parse_poly(s.trim(), ring).map_err(|e| Failure::Input(format!("`{}` {e}", s.trim())))
}

fn form(arg: &str, opts: &Opts) -> Result<MultiPoly, Failure> {
    let s = text(arg)?;
    poly_in(&s, ring_of(&s, field(opts)?))
}

fn plane_form(arg: &str, opts: &Opts) -> Result<MultiPoly, Failure> {
    poly_in(&text(arg)?, Ring::plane(field(opts)?))
}

fn net(args: &NetArgs, opts: &Opts) -> Result<NetOfQuadrics, Failure> {
    let f = field(opts)?;
    if args.klein {
        return Ok(klein_net(f));
    }
    let lines: Vec<String> = match args.quadrics.as_slice() {
        [one] => text(one)?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect(),
        many => many.to_vec(),
    };
    if lines.len() != 3 {
        return Err(Failure::Input(format!("a net needs 3 quadrics, got {}", lines.len())));
    }
    let qs = lines
        .iter()
        .map(|l| poly_in(l, Ring::space(f)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NetOfQuadrics::from_quadrics(&qs)?)
}

fn print_list(key: &str, ps: &[MultiPoly]) {
    kv(&format!("{key}.count"), ps.len());
    for (i, p) in ps.iter().enumerate() {
        kv(&format!("{key}.{i}"), p);
    }
}

fn run(cli: &Cli) -> Out {
    let opts = &cli.opts;
    match &cli.cmd {
        Cmd::Cat { form: f } => {
            let f = plane_form(f, opts)?;
            let c = catalecticant(&f)?;
            kv("catalecticant", &c);
            kv("rank", c.rank());
        }
        Cmd::Hf { form: f } => {
            let f = form(f, opts)?;
            let hf: Vec<String> = hilbert_function(&f).iter().map(|h| h.to_string()).collect();
            kv("hilbert", hf.join(" "));
        }
        Cmd::Perp { form: f, degree } => {
            let f = form(f, opts)?;
            let ops = f.ring().dual();
            let basis = ops.monomials(*degree);
            let p = perp(&f, *degree);
            let polys: Vec<MultiPoly> = (0..p.rows())
                .map(|i| MultiPoly::from_vector(ops, &basis, p.row(i)))
                .collect();
            kv("degree", degree);
            print_list("perp", &polys);
        }
        Cmd::Aronhold { form: f } => {
            let v = aronhold(&plane_form(f, opts)?)?;
            kv("aronhold", &v);
            kv("anharmonic", v.is_zero());
        }
        Cmd::Covariant { form: f } => {
            let f = plane_form(f, opts)?;
            let s = covariant_quartic(&f)?;
            kv("covariant", &s);
            kv("self_covariant", s.proportionality(&f).is_some());
        }
        Cmd::Classify { form: f } => {
            let c = classify(&plane_form(f, opts)?)?;
            let hf: Vec<String> = c.hilbert.iter().map(|h| h.to_string()).collect();
            let gd: Vec<String> = c.generator_degrees.iter().map(|h| h.to_string()).collect();
            kv("hilbert", hf.join(" "));
            kv("generator_degrees", gd.join(" "));
            match c.row {
                Some(r) => kv("row", r + 1),
                None => {
                    kv("row", "unlisted");
                    return Err(Failure::Verdict(format!("not among the {} table rows", TABLE.len())));
                }
            }
        }
        Cmd::Weights { form: f, lines } => {
            let f = plane_form(f, opts)?;
            let ls = lines
                .iter()
                .map(|l| plane_form(l, opts))
                .collect::<Result<Vec<_>, _>>()?;
            match solve_weights(&f, &ls)? {
                WeightOutcome::Solved(ps) => {
                    let w: Vec<String> = ps.weights.iter().map(|s| s.to_string()).collect();
                    kv("outcome", "solved");
                    kv("weights", w.join(" "));
                }
                WeightOutcome::NotInSpan => {
                    kv("outcome", "not_in_span");
                    return Err(Failure::Verdict("quartic is not a combination of these powers".into()));
                }
                WeightOutcome::Underdetermined { dim, particular } => {
                    let w: Vec<String> = particular.iter().map(|s| s.to_string()).collect();
                    kv("outcome", "underdetermined");
                    kv("solution_dim", dim);
                    kv("particular", w.join(" "));
                }
            }
        }
        Cmd::Discriminant(n) => {
            kv("discriminant", discriminant(&net(n, opts)?)?);
        }
        Cmd::Jacobian(n) => {
            let j = jacobian_minors(&net(n, opts)?)?;
            print_list("minor", &j.minors);
            let hf: Vec<String> = j
                .ideal
                .quotient_hilbert_function()
                .iter()
                .map(|h| h.to_string())
                .collect();
            kv("hilbert", hf.join(" "));
            kv("degenerate", j.degenerate);
        }
        Cmd::Resolve { forms, klein } => {
            let ideal = match forms.len() {
                _ if *klein => q_perp(&klein_net(field(opts)?), opts.cap)?,
                3 => q_perp(
                    &net(
                        &NetArgs {
                            quadrics: forms.clone(),
                            klein: false,
                        },
                        opts,
                    )?,
                    opts.cap,
                )?,
                1 => perp_ideal(&form(&forms[0], opts)?, opts.cap),
                n => return Err(Failure::Input(format!("expected 1 form or 3 quadrics, got {n}"))),
            };
            let res = min_res(&ideal, opts.cap);
            kv("betti", res.betti());
            kv("truncated", res.truncated());
            kv("minimal", res.is_minimal());
        }
        Cmd::Eta(n) => {
            let q = net(n, opts)?;
            let res = min_res(&q_perp(&q, opts.cap)?, opts.cap);
            let eta = eta_from_tor(&res)?;
            for (k, m) in eta.forms().iter().enumerate() {
                kv(&format!("eta.{k}"), m);
            }
        }
        Cmd::Pfaffian(n) => {
            let q = net(n, opts)?;
            let res = min_res(&q_perp(&q, opts.cap)?, opts.cap);
            let pf = pfaffian_ideal(&eta_from_tor(&res)?);
            print_list("pfaffian", &pf);
            let ops = pf[0].ring();
            let ideal = v22::apolar::GradedIdeal::from_generators(ops, &pf, 5);
            let hf: Vec<String> = ideal
                .quotient_hilbert_function()
                .iter()
                .map(|h| h.to_string())
                .collect();
            kv("hilbert", hf.join(" "));
            kv("dual_socle", v22::apolar::dual_socle_of(ops, &pf, 4)?);
        }
        Cmd::Circle(n) => {
            let r = circle(&net(n, opts)?, opts.cap)?;
            kv("discriminant", &r.s_q);
            kv("betti", &r.betti);
            print_list("pfaffian", &r.pfaffians);
            let hf: Vec<String> = r.pfaffian_hilbert.iter().map(|h| h.to_string()).collect();
            kv("pfaffian_hilbert", hf.join(" "));
            kv("dual_socle_n", &r.f_q_n);
            kv("n_to_udual", r.eta.n_to_udual().expect("attached by circle"));
            kv("dual_socle_u", &r.f_q);
            kv("covariant", &r.s_f_q);
            kv("self_covariant", describe(&r.self_covariant));
            for v in &r.verdicts {
                kv(&format!("verdict.{}", v.name), if v.pass { "pass" } else { "fail" });
                kv(&format!("detail.{}", v.name), &v.detail);
            }
            if !r.passed() {
                return Err(Failure::Verdict("a circle verdict failed".into()));
            }
        }
        Cmd::Census {
            net: n,
            budget,
            samples,
        } => {
            let p = opts.prime.unwrap_or(11);
            let rational = Opts {
                prime: None,
                ..opts.clone()
            };
            let q = net(n, &rational)?;
            let res = min_res(&q_perp(&q, opts.cap)?, opts.cap);
            let eta = eta_from_tor(&res)?;
            let report = census(
                &eta,
                p,
                &CensusOptions {
                    seed: opts.seed,
                    pair_budget: *budget,
                    sample_size: *samples,
                },
            )?;
            kv("p", report.p);
            kv("seed", opts.seed);
            kv("points", report.point_count);
            kv("pairs_tested", report.pairs_tested);
            kv("truncated", report.truncated);
            kv("lines", report.line_count_sampled);
            for (i, e) in report.sample_points.iter().enumerate() {
                kv(&format!("point.{i}"), e.rows());
            }
            for (i, l) in report.sample_lines.iter().enumerate() {
                kv(&format!("line.{i}.factor"), &l.r);
                kv(&format!("line.{i}.span"), &l.span().basis);
            }
            kv("elapsed_ms", report.elapsed_ms);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict(m)) => {
            eprintln!("verdict failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Degenerate(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Input(m)) => {
            eprintln!("input error: {m}");
            ExitCode::from(3)
        }
    }
}
