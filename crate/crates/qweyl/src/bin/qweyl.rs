//! Batch verification driver and expression playground.
//!
//! Exit codes: 0 = all checks pass, 1 = a verification residual is nonzero,
//! 2 = usage or parse error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qweyl::latex;
use qweyl::ncalg::{normal_order, parse_word, NCWord, Strategy};
use qweyl::planewave::{hhat, ExpConst, PhasePoly, PlaneWaveSpec, UNIT_B, UNIT_D};
use qweyl::repspace::RepElement;
use qweyl::scalar::QScalar;
use qweyl::verify::{run_classical, run_dalembert, run_weyl, BdChoice, RunConfig, SideSel};
use qweyl::weylsol::{chat, FactorOrder, Side, WeylSolSpec};

#[derive(Parser)]
#[command(
    name = "qweyl",
    about = "Exact verification of q-plane-wave solutions of the q-deformed d'Alembert and linear Weyl gravity equations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a batch verification suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Expand an expression and print it.
    #[command(subcommand)]
    Expand(ExpandCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConeFlag {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderFlag {
    Ascending,
    Descending,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideFlag {
    Plus,
    Minus,
    Both,
}

#[derive(Args)]
struct CommonVerify {
    /// Highest component index s to verify.
    #[arg(long)]
    s_max: Option<u32>,
    /// Seed for the reproducible random parameter draws.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random draws per grid cell.
    #[arg(long, default_value_t = 3)]
    draws: u32,
    /// Momentum q-cone projection before the zero test.
    #[arg(long, value_enum, default_value_t = ConeFlag::On)]
    cone: ConeFlag,
    /// Worker threads (0 = QWEYL_WORKERS or all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Record wall-clock timings (off keeps reports byte-reproducible).
    #[arg(long)]
    timings: bool,
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// q-d'Alembert annihilation of the plane-wave components on the cone.
    Dalembert {
        #[command(flatten)]
        common: CommonVerify,
        /// Use symbolic q^B / q^D phases instead of random integers.
        #[arg(long)]
        symbolic: bool,
    },
    /// q-Weyl annihilation of the solution components C+-_s.
    Weyl {
        #[command(flatten)]
        common: CommonVerify,
        /// Which side(s) to verify.
        #[arg(long, value_enum, default_value_t = SideFlag::Both)]
        side: SideFlag,
        /// Explicit comma-separated B/D integers (cycled); default draws
        /// them from the seed. `symbolic` switches to unit-valued ones.
        #[arg(long)]
        bd: Option<String>,
        /// Factor order inside the prefactor products.
        #[arg(long, value_enum, default_value_t = OrderFlag::Ascending)]
        order: OrderFlag,
        /// Negative control: perturb the middle coefficient of qI+-(4).
        #[arg(long)]
        mutate: bool,
    },
    /// Classical q=1 regression: operator identities, limits, dictionaries.
    Classical {
        #[command(flatten)]
        common: CommonVerify,
        /// Coordinate-degree bound for the operator identity sweep.
        #[arg(long, default_value_t = 5)]
        coord_degree: i32,
        /// z / zb degree bound for the sweep.
        #[arg(long, default_value_t = 4)]
        z_degree: i32,
        /// Negative control: perturb the middle coefficient of I+-(4).
        #[arg(long)]
        mutate: bool,
    },
}

#[derive(Subcommand)]
enum ExpandCmd {
    /// Normal-order a word in the coordinate or momentum generators,
    /// e.g. "x+ * x-" or "k-^2 * k+".
    Word {
        expression: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// The plane-wave component h_s.
    Planewave {
        #[arg(long)]
        s: u32,
        /// Plus-family phase "R;B": integer polynomial in a (e.g. "1+2a-a^2")
        /// and B an integer or "symbolic".
        #[arg(long, conflicts_with = "phase_minus")]
        phase_plus: Option<String>,
        /// Minus-family phase "D;Q" with Q a polynomial in b.
        #[arg(long)]
        phase_minus: Option<String>,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// The q-Weyl solution component C+-_s.
    Chat {
        #[arg(long, value_enum)]
        side: SideFlag,
        #[arg(long)]
        s: u32,
        /// Comma-separated rational gammas, e.g. "1,0,1/2,-1,0".
        #[arg(long, default_value = "1,1,1,1,1")]
        gammas: String,
        /// B (plus side) or D (minus side); integer or "symbolic".
        #[arg(long, default_value = "0")]
        bd: String,
        /// Free polynomial R(a) / Q(b), e.g. "2-a+3a^2".
        #[arg(long)]
        free_poly: Option<String>,
        #[arg(long, value_enum, default_value_t = OrderFlag::Ascending)]
        order: OrderFlag,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Verify(cmd) => {
            let (report, format) = match cmd {
                VerifyCmd::Dalembert { common, symbolic } => {
                    let cfg = RunConfig {
                        s_max: common.s_max.unwrap_or(6),
                        seed: common.seed,
                        draws: common.draws,
                        bd: if symbolic {
                            BdChoice::Symbolic
                        } else {
                            BdChoice::Random
                        },
                        cone: common.cone == ConeFlag::On,
                        workers: common.workers,
                        timings: common.timings,
                        ..Default::default()
                    };
                    (run_dalembert(&cfg), common.format)
                }
                VerifyCmd::Weyl {
                    common,
                    side,
                    bd,
                    order,
                    mutate,
                } => {
                    let bd = match bd.as_deref() {
                        None => BdChoice::Random,
                        Some("symbolic") => BdChoice::Symbolic,
                        Some(list) => BdChoice::List(parse_int_list(list)?),
                    };
                    let cfg = RunConfig {
                        s_max: common.s_max.unwrap_or(3),
                        side: match side {
                            SideFlag::Plus => SideSel::Plus,
                            SideFlag::Minus => SideSel::Minus,
                            SideFlag::Both => SideSel::Both,
                        },
                        seed: common.seed,
                        draws: common.draws,
                        bd,
                        cone: common.cone == ConeFlag::On,
                        order: match order {
                            OrderFlag::Ascending => FactorOrder::Ascending,
                            OrderFlag::Descending => FactorOrder::Descending,
                        },
                        workers: common.workers,
                        timings: common.timings,
                        mutate,
                        ..Default::default()
                    };
                    (run_weyl(&cfg), common.format)
                }
                VerifyCmd::Classical {
                    common,
                    coord_degree,
                    z_degree,
                    mutate,
                } => {
                    let cfg = RunConfig {
                        s_max: common.s_max.unwrap_or(6),
                        seed: common.seed,
                        draws: common.draws,
                        cone: common.cone == ConeFlag::On,
                        workers: common.workers,
                        timings: common.timings,
                        mutate,
                        coord_degree,
                        z_degree,
                        ..Default::default()
                    };
                    (run_classical(&cfg), common.format)
                }
            };
            match format {
                OutFormat::Json => println!("{}", report.to_json()),
                OutFormat::Text => print!("{}", report.to_text()),
                OutFormat::Latex => {
                    return Err("latex output applies to expand commands only".into())
                }
            }
            Ok(report.pass)
        }
        Command::Expand(cmd) => {
            expand(cmd)?;
            Ok(true)
        }
    }
}

fn expand(cmd: ExpandCmd) -> Result<(), String> {
    match cmd {
        ExpandCmd::Word { expression, format } => {
            let (letters, alphabet) = parse_word(&expression).map_err(|e| e.to_string())?;
            let element = normal_order(&NCWord::from_letters(letters), Strategy::LeftmostInnermost);
            match format {
                OutFormat::Text => println!("{}", element.display(alphabet)),
                OutFormat::Latex => print!("{}", latex::fragment(&latex::nc_latex(&element, alphabet))),
                OutFormat::Json => {
                    let terms: Vec<serde_json::Value> = element
                        .terms()
                        .map(|(m, c)| {
                            serde_json::json!({
                                "coeff": c,
                                "exps": [m.a, m.b, m.c, m.d],
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({"terms": terms}))
                            .expect("serializes")
                    );
                }
            }
            Ok(())
        }
        ExpandCmd::Planewave {
            s,
            phase_plus,
            phase_minus,
            format,
        } => {
            let phase = match (phase_plus, phase_minus) {
                (None, None) => PhasePoly::Zero,
                (Some(spec), None) => {
                    let (poly, constant) = parse_phase(&spec, 'a', UNIT_B)?;
                    PhasePoly::Plus {
                        r: poly,
                        b: constant,
                    }
                }
                (None, Some(spec)) => {
                    let (poly, constant) = parse_phase(&spec, 'b', UNIT_D)?;
                    PhasePoly::Minus {
                        d: constant,
                        q: poly,
                    }
                }
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let h = hhat(&PlaneWaveSpec::new(s, phase)).map_err(|e| e.to_string())?;
            print_rep(&h, format);
            Ok(())
        }
        ExpandCmd::Chat {
            side,
            s,
            gammas,
            bd,
            free_poly,
            order,
            format,
        } => {
            let side = match side {
                SideFlag::Plus => Side::Plus,
                SideFlag::Minus => Side::Minus,
                SideFlag::Both => return Err("expand chat needs --side plus or minus".into()),
            };
            let gammas = parse_gammas(&gammas)?;
            let unit = match side {
                Side::Plus => UNIT_B,
                Side::Minus => UNIT_D,
            };
            let b_or_d = parse_const(bd.trim(), unit)?;
            let free_poly = match free_poly {
                None => Vec::new(),
                Some(p) => parse_int_poly(
                    &p,
                    match side {
                        Side::Plus => 'a',
                        Side::Minus => 'b',
                    },
                )?,
            };
            let spec = WeylSolSpec {
                side,
                s,
                gammas,
                b_or_d,
                free_poly,
            };
            let order = match order {
                OrderFlag::Ascending => FactorOrder::Ascending,
                OrderFlag::Descending => FactorOrder::Descending,
            };
            let c = chat(&spec, order).map_err(|e| e.to_string())?;
            print_rep(&c, format);
            Ok(())
        }
    }
}

fn print_rep(e: &RepElement, format: OutFormat) {
    match format {
        OutFormat::Text => println!("{e}"),
        OutFormat::Latex => print!("{}", latex::fragment(&latex::rep_latex(e))),
        OutFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&e.to_json()).expect("serializes")
        ),
    }
}

fn parse_int_list(s: &str) -> Result<Vec<i64>, String> {
    let vals: Result<Vec<i64>, _> = s.split(',').map(|v| v.trim().parse::<i64>()).collect();
    let vals = vals.map_err(|e| format!("bad integer list `{s}`: {e}"))?;
    if vals.is_empty() {
        return Err("empty integer list".into());
    }
    Ok(vals)
}

/// Parses "POLY;CONST" where POLY is an integer polynomial in the given
/// variable and CONST is an integer or "symbolic".
fn parse_phase(spec: &str, var: char, unit: usize) -> Result<(Vec<i64>, ExpConst), String> {
    let (poly, constant) = spec
        .split_once(';')
        .ok_or_else(|| format!("expected `POLY;CONST` in `{spec}`"))?;
    Ok((
        parse_int_poly(poly.trim(), var)?,
        parse_const(constant.trim(), unit)?,
    ))
}

fn parse_const(s: &str, unit: usize) -> Result<ExpConst, String> {
    if s == "symbolic" {
        return Ok(ExpConst::symbolic(unit));
    }
    s.parse::<i64>()
        .map(ExpConst::int)
        .map_err(|e| format!("bad exponent constant `{s}`: {e}"))
}

/// Parses integer polynomials like "2", "a", "-a^2+3a-1", "0" in the single
/// variable `var`; returns coefficients in ascending degree.
fn parse_int_poly(input: &str, var: char) -> Result<Vec<i64>, String> {
    let cleaned: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Ok(Vec::new());
    }
    // split into signed terms
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in cleaned.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(cur.clone());
            cur.clear();
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut coeffs: Vec<i64> = Vec::new();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1i64, rest.to_string()),
            None => (1i64, term.trim_start_matches('+').to_string()),
        };
        let (coeff_str, degree) = match body.split_once(var) {
            None => (body.as_str(), 0usize),
            Some((c, rest)) => {
                let degree = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(|| format!("malformed term in `{input}`"))?
                        .parse::<usize>()
                        .map_err(|e| format!("bad power in `{input}`: {e}"))?
                };
                (c, degree)
            }
        };
        let coeff: i64 = if coeff_str.is_empty() {
            1
        } else {
            coeff_str
                .parse()
                .map_err(|e| format!("bad coefficient in `{input}`: {e}"))?
        };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] += sign * coeff;
    }
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Parses comma-separated rationals (with optional `i` suffix for purely
/// imaginary entries) into the five gamma constants.
fn parse_gammas(s: &str) -> Result<[QScalar; 5], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(format!("expected exactly five gammas, got {}", parts.len()));
    }
    let mut out = Vec::with_capacity(5);
    for p in parts {
        let (body, imaginary) = match p.strip_suffix('i') {
            Some(rest) if !rest.is_empty() => (rest, true),
            Some(_) => ("1", true),
            None => (p, false),
        };
        let (num, den) = match body.split_once('/') {
            None => (body, "1"),
            Some((n, d)) => (n, d),
        };
        let num: i64 = num
            .parse()
            .map_err(|e| format!("bad gamma `{p}`: {e}"))?;
        let den: i64 = den
            .parse()
            .map_err(|e| format!("bad gamma `{p}`: {e}"))?;
        if den == 0 {
            return Err(format!("zero denominator in gamma `{p}`"));
        }
        let mut v = QScalar::from_ratio(num, den);
        if imaginary {
            v = &v * &QScalar::i();
        }
        out.push(v);
    }
    Ok(out.try_into().expect("five entries"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_poly_parser() {
        assert_eq!(parse_int_poly("0", 'a').unwrap(), Vec::<i64>::new());
        assert_eq!(parse_int_poly("3", 'a').unwrap(), vec![3]);
        assert_eq!(parse_int_poly("a", 'a').unwrap(), vec![0, 1]);
        assert_eq!(parse_int_poly("-a^2+3a-1", 'a').unwrap(), vec![-1, 3, -1]);
        assert_eq!(parse_int_poly("2b^2", 'b').unwrap(), vec![0, 0, 2]);
        assert!(parse_int_poly("a*b", 'a').is_err());
    }

    #[test]
    fn gamma_parser() {
        let g = parse_gammas("1,0,1/2,-1,2i").unwrap();
        assert_eq!(g[0], QScalar::from_int(1));
        assert!(g[1].is_zero());
        assert_eq!(g[2], QScalar::from_ratio(1, 2));
        assert_eq!(g[4], &QScalar::from_int(2) * &QScalar::i());
    }
}
