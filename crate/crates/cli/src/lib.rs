//! Command-line front end. The binary is a thin wrapper around [`run_with`].

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_core::corpus::{builtin_corpus, dump_corpus, named, CurveSpec};
use hecke_core::ecurve::Point;
use hecke_core::ffield::{make_field, Field, DEFAULT_CAP};
use hecke_core::heckegraph::{build_graph, curve_label, deg2_c0_neighbors, degree_two_places, export_dot, export_json};
use hecke_core::lfun::{check_identities, toroidal_report, zeta_series, zeta_zeros};
use hecke_core::picard::{build_class_data_with_cap, ClassData};
use hecke_core::report::Report;
use hecke_core::scan::{all_curves, random_curves, scan, verify_curve};
use hecke_core::spectra::{cusp_space, eisenstein_solve, linear_functionals, normalized_t, toroidal_cusp_check, CharacterSpec};
use num_complex::Complex64;

#[derive(Parser)]
#[command(name = "hecke", version, about = "Hecke operator graphs on P1-bundles over elliptic curves over finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Class numbers, group structure and rational points.
    Info {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Print the built-in corpus as JSON lines and exit.
        #[arg(long)]
        dump_corpus: bool,
    },
    /// Build and export the graph of Phi_x.
    Graph {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Place x: index into the point list, or "inf".
        #[arg(long)]
        x: Option<String>,
    },
    /// Graph invariants at every rational place, cusp dimension, zeta identities.
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exact cusp space with the cuspidal and toroidal functionals.
    Cusp {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Eisenstein eigenvectors at a given s.
    Eisenstein {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Complex parameter, e.g. "0.3", "0.1-2i", "0.5+1.2i".
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Index into the list of quadratic twists.
        #[arg(long)]
        omega: Option<usize>,
    },
    /// Toroidal generators and their T-vanishing.
    Toroidal {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Zeta and L-series, zeros and identities.
    Zeta {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Neighbours of c_0 under every degree-two Hecke operator.
    Pullback {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Verify every smooth curve over F_q, or a random sample.
    Scan {
        #[arg(long)]
        q: u32,
        /// Sample this many random curves instead of all of them.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Clone)]
struct CurveArgs {
    /// One of X2, X3, X4, X5, X6, E23.
    #[arg(long)]
    named: Option<String>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// a1,a2,a3,a4,a6 (or a4,a6); an extension-field coefficient is written
    /// c0:c1:... low degree first.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
}

#[derive(Args, Clone)]
struct RunArgs {
    #[arg(long, default_value_t = 6)]
    depth: u32,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Largest field size; defaults to HECKE_CAP or 128.
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Text,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<hecke_core::Error> for Failure {
    fn from(e: hecke_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = Result<(String, bool), Failure>;

/// Parses `args` (program name first), runs the command and writes its
/// report to `out` unless `--output` names a file. Returns the exit code:
/// 0 on success, 1 when a check fails, 2 on usage errors.
pub fn run_with<I, T>(args: I, out: &mut dyn std::io::Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

impl RunArgs {
    fn cap(&self) -> Result<u64, Failure> {
        if let Some(c) = self.cap {
            return Ok(c);
        }
        match std::env::var("HECKE_CAP") {
            Ok(v) => v.parse().map_err(|_| Failure::Usage(format!("HECKE_CAP={v} is not an integer"))),
            Err(_) => Ok(DEFAULT_CAP),
        }
    }

    fn validate(&self) -> Result<(), Failure> {
        if self.depth < 2 {
            return Err(Failure::Usage("--depth must be at least 2".into()));
        }
        if self.tolerance.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Failure::Usage("--tolerance must be positive".into()));
        }
        Ok(())
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn emit(&self, text: &str, out: &mut dyn std::io::Write) -> Result<(), Failure> {
        match &self.output {
            Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
            None => match out.write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Usage(e.to_string())),
                _ => Ok(()),
            },
        }
    }
}

fn parse_coeff(tok: &str) -> Result<Vec<u32>, Failure> {
    tok.split(':')
        .map(|c| c.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("bad coefficient {tok:?}"))))
        .map(|r| r.map(|v| v as u32))
        .collect()
}

fn curve_spec(c: &CurveArgs) -> Result<CurveSpec, Failure> {
    if let Some(n) = &c.named {
        return named(n).ok_or_else(|| Failure::Usage(format!("unknown curve {n}")));
    }
    let (Some(p), Some(coeffs)) = (c.p, &c.coeffs) else {
        return Err(Failure::Usage("give --named or both --p and --coeffs".into()));
    };
    let mut parts: Vec<Vec<u32>> = Vec::new();
    for tok in coeffs.split(',') {
        let mut v = parse_coeff(tok)?;
        for x in v.iter_mut() {
            *x %= p.max(1);
        }
        parts.push(v);
    }
    let parts = match parts.len() {
        5 => parts,
        2 => vec![vec![0], vec![0], vec![0], parts[0].clone(), parts[1].clone()],
        n => return Err(Failure::Usage(format!("expected 5 or 2 coefficients, got {n}"))),
    };
    let arr: [Vec<u32>; 5] = parts.try_into().expect("five coefficients");
    Ok(CurveSpec::new(None, p, c.k, arr))
}

fn class_data(c: &CurveArgs, run: &RunArgs) -> Result<ClassData, Failure> {
    run.validate()?;
    let cap = run.cap()?;
    let spec = curve_spec(c)?;
    let curve = spec.to_curve_with_cap(cap)?;
    Ok(build_class_data_with_cap(&curve, cap)?)
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Failure::Usage(format!("cannot parse complex number {s:?}"));
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not a leading sign or an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            x => x.parse::<f64>().map_err(|_| bad())?,
        };
        Ok(Complex64::new(re.parse::<f64>().map_err(|_| bad())?, im))
    } else {
        Ok(Complex64::new(t.parse::<f64>().map_err(|_| bad())?, 0.0))
    }
}

fn place(cd: &ClassData, x: Option<&str>) -> Result<Point, Failure> {
    match x {
        None => Ok(if cd.h > 1 { cd.points()[1] } else { Point::Infinity }),
        Some("inf") => Ok(Point::Infinity),
        Some(s) => {
            let i: usize = s.parse().map_err(|_| Failure::Usage(format!("--x {s}: expected an index or \"inf\"")))?;
            cd.points().get(i).copied().ok_or_else(|| Failure::Usage(format!("--x {i}: only {} points", cd.h)))
        }
    }
}

fn report_out(rep: &Report, fmt: Format) -> String {
    match fmt {
        Format::Json => serde_json::to_string_pretty(rep).expect("report serializes") + "\n",
        _ => rep.to_string(),
    }
}

fn info(cd: &ClassData, fmt: Format) -> String {
    let pts: Vec<String> = cd.points().iter().map(|p| cd.curve.fmt_point(p)).collect();
    let (n1, n2) = cd.group0.invariants();
    let (m1, m2) = cd.group0p.invariants();
    if fmt == Format::Json {
        let v = serde_json::json!({
            "curve": curve_label(cd), "q": cd.q(), "h": cd.h, "structure": [n1, n2],
            "structure_prime": [m1, m2], "h2": cd.h2, "hp": cd.hp, "h2p": cd.h2p,
            "r": cd.r, "rp": cd.rp, "points": pts,
        });
        return serde_json::to_string_pretty(&v).expect("json") + "\n";
    }
    let group = |a: u64, b: u64| if a == 1 { format!("Z/{b}") } else { format!("Z/{a} x Z/{b}") };
    let mut s = String::new();
    let _ = writeln!(s, "curve {}  q={}", curve_label(cd), cd.q());
    let _ = writeln!(s, "h={}  Cl0 X = {}", cd.h, group(n1, n2));
    let _ = writeln!(s, "Cl0 X' = {}", group(m1, m2));
    let _ = writeln!(s, "h2={}  h'={}  h2'={}  r={}  r'={}", cd.h2, cd.hp, cd.h2p, cd.r, cd.rp);
    let _ = writeln!(s, "points: {}", pts.join(" "));
    s
}

fn cusp(cd: &ClassData, fmt: Format) -> Out {
    let space = cusp_space(cd)?;
    let mut rep = Report::new();
    rep.exact("cusp dimension = r'+1-h2", space.dimension as i64, cd.rp as i64 + 1 - cd.h2 as i64);
    for (i, b) in space.basis.iter().enumerate() {
        let (c, _) = linear_functionals(cd, b);
        rep.exact(&format!("C(f_{i}) = 0"), c.to_string(), "0".into());
    }
    rep.extend(toroidal_cusp_check(cd, &space));
    let ok = rep.passed();
    if fmt == Format::Json {
        let basis: Vec<Vec<(String, String)>> = space
            .basis
            .iter()
            .map(|b| b.domain.iter().zip(&b.values).map(|(v, x)| (v.label(cd), x.to_string())).collect())
            .collect();
        let v = serde_json::json!({"dimension": space.dimension, "basis": basis, "report": rep});
        return Ok((serde_json::to_string_pretty(&v).expect("json") + "\n", ok));
    }
    let mut s = format!("dimension {}\n", space.dimension);
    for (i, b) in space.basis.iter().enumerate() {
        let vals: Vec<String> = b.domain.iter().zip(&b.values).map(|(v, x)| format!("{}={x}", v.label(cd))).collect();
        let _ = writeln!(s, "f_{i}: {}", vals.join(" "));
    }
    s.push_str(&rep.to_string());
    Ok((s, ok))
}

fn eisenstein(cd: &ClassData, run: &RunArgs, s: &str, omega: Option<usize>) -> Out {
    let s = parse_complex(s)?;
    let chi = match omega {
        None => CharacterSpec::principal(s),
        Some(i) => {
            let w = cd.quadratic_characters();
            let o = w.get(i).cloned().ok_or_else(|| Failure::Usage(format!("--omega {i}: only {} twists", w.len())))?;
            CharacterSpec::twisted(s, o)
        }
    };
    let b = eisenstein_solve(cd, &chi, run.depth)?;
    let e = &b.basis[0];
    let t = normalized_t(cd, e);
    let mut out = String::new();
    if run.format(Format::Text) == Format::Json {
        let vals: Vec<(String, [f64; 2])> = e.domain.iter().zip(&e.values).map(|(v, x)| (v.label(cd), [x.re, x.im])).collect();
        let v = serde_json::json!({"s": [s.re, s.im], "dimension": b.dimension, "normalized_T": t, "values": vals});
        out = serde_json::to_string_pretty(&v).expect("json") + "\n";
    } else {
        let _ = writeln!(out, "s = {s}  dimension {}  |T(E)|/max|E| = {t:.3e}", b.dimension);
        for (v, x) in e.domain.iter().zip(&e.values).filter(|(v, _)| v.delta() <= 1) {
            let _ = writeln!(out, "{} = {:.10}", v.label(cd), x);
        }
        let _ = writeln!(out, "toroidal at tolerance {:e}: {}", run.tolerance, t < run.tolerance);
    }
    Ok((out, true))
}

fn zeta(cd: &ClassData, fmt: Format) -> Out {
    let z = zeta_series(cd);
    let zz = zeta_zeros(cd);
    let rep = check_identities(cd);
    let ok = rep.passed();
    if fmt == Format::Json {
        let v = serde_json::json!({
            "zeta_F": {"numerator": z.zeta_f.numerator, "denominator": z.zeta_f.denominator},
            "L": {"numerator": z.l_chi.numerator, "denominator": z.l_chi.denominator},
            "zeta_F'": {"numerator": z.zeta_fprime.numerator, "denominator": z.zeta_fprime.denominator},
            "T_roots": zz.t_roots.iter().map(|t| [t.re, t.im]).collect::<Vec<_>>(),
            "s_zeros": zz.s_reps.iter().map(|t| [t.re, t.im]).collect::<Vec<_>>(),
            "order2": zz.order2_flag,
            "report": rep,
        });
        return Ok((serde_json::to_string_pretty(&v).expect("json") + "\n", ok));
    }
    let mut s = String::new();
    let _ = writeln!(s, "zeta_F numerator {:?} denominator {:?}", z.zeta_f.numerator, z.zeta_f.denominator);
    let _ = writeln!(s, "L numerator {:?} denominator {:?}", z.l_chi.numerator, z.l_chi.denominator);
    let _ = writeln!(s, "zeta_F' numerator {:?} denominator {:?}", z.zeta_fprime.numerator, z.zeta_fprime.denominator);
    for (t, sz) in zz.t_roots.iter().zip(&zz.s_reps) {
        let _ = writeln!(s, "zero T = {t:.12}  s = {sz:.12}");
    }
    let _ = writeln!(s, "order-2 pair: {}", zz.order2_flag);
    s.push_str(&rep.to_string());
    Ok((s, ok))
}

fn pullback(cd: &ClassData, fmt: Format) -> Out {
    let mut rows = Vec::new();
    for (z, sz) in degree_two_places(cd) {
        let n = deg2_c0_neighbors(cd, z)?;
        rows.push((cd.curve2.fmt_point(&z), cd.curve2.fmt_point(&sz), n.iter().map(|(v, m)| (v.label(cd), *m)).collect::<Vec<_>>()));
    }
    if fmt == Format::Json {
        let v: Vec<_> = rows.iter().map(|(z, sz, n)| serde_json::json!({"z": z, "sigma_z": sz, "neighbours": n})).collect();
        return Ok((serde_json::to_string_pretty(&v).expect("json") + "\n", true));
    }
    let mut s = String::new();
    for (z, sz, n) in rows {
        let cells: Vec<String> = n.iter().map(|(l, m)| format!("{l} x{m}")).collect();
        let _ = writeln!(s, "{{{z}, {sz}}}: {}", cells.join(", "));
    }
    Ok((s, true))
}

fn field_of_q(q: u32, cap: u64) -> Result<Field, Failure> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or_else(|| Failure::Usage(format!("--q {q} is not a prime power")))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    if r != 1 {
        return Err(Failure::Usage(format!("--q {q} is not a prime power")));
    }
    let f = make_field(p, k)?;
    if (q as u64).pow(2) > cap {
        return Err(Failure::Usage(format!("--q {q}: F_(q^2) exceeds the cap {cap}")));
    }
    Ok(f)
}

fn run(cli: Cli, out: &mut dyn std::io::Write) -> Result<(), Failure> {
    let (text, ok, run) = match cli.cmd {
        Cmd::Info { curve, run, dump_corpus } => {
            if dump_corpus {
                (dump_corpus_text(), true, run)
            } else {
                let cd = class_data(&curve, &run)?;
                (info(&cd, run.format(Format::Text)), true, run)
            }
        }
        Cmd::Graph { curve, run, x } => {
            let cd = class_data(&curve, &run)?;
            let x = place(&cd, x.as_deref())?;
            let g = build_graph(&cd, x, run.depth)?;
            let text = match run.format(Format::Dot) {
                Format::Json => export_json(&cd, &g) + "\n",
                _ => export_dot(&cd, &g),
            };
            (text, true, run)
        }
        Cmd::Verify { curve, run } => {
            let cd = class_data(&curve, &run)?;
            let mut rep = verify_curve(&cd, run.depth);
            rep.extend(check_identities(&cd));
            let ok = rep.passed();
            let mut text = report_out(&rep, run.format(Format::Text));
            if run.format(Format::Text) == Format::Text {
                let _ = writeln!(text, "components: {}  cusps: {}  ({})", cd.h2, cd.h, if ok { "all checks pass" } else { "FAILED" });
            }
            (text, ok, run)
        }
        Cmd::Cusp { curve, run } => {
            let cd = class_data(&curve, &run)?;
            let (t, ok) = cusp(&cd, run.format(Format::Text))?;
            (t, ok, run)
        }
        Cmd::Eisenstein { curve, run, s, omega } => {
            let cd = class_data(&curve, &run)?;
            let (t, ok) = eisenstein(&cd, &run, &s, omega)?;
            (t, ok, run)
        }
        Cmd::Toroidal { curve, run } => {
            let cd = class_data(&curve, &run)?;
            if run.depth < 4 {
                return Err(Failure::Usage("toroidal needs --depth >= 4".into()));
            }
            let rep = toroidal_report(&cd, run.depth);
            (report_out(&rep, run.format(Format::Text)), rep.passed(), run)
        }
        Cmd::Zeta { curve, run } => {
            let cd = class_data(&curve, &run)?;
            let (t, ok) = zeta(&cd, run.format(Format::Text))?;
            (t, ok, run)
        }
        Cmd::Pullback { curve, run } => {
            let cd = class_data(&curve, &run)?;
            let (t, ok) = pullback(&cd, run.format(Format::Text))?;
            (t, ok, run)
        }
        Cmd::Scan { q, random, seed, run } => {
            run.validate()?;
            let cap = run.cap()?;
            let f = field_of_q(q, cap)?;
            let (curves, mode) = match random {
                Some(n) => (random_curves(&f, n, seed), format!("random:{n}:seed={seed}")),
                None if q <= 5 => (all_curves(&f), "exhaustive".to_string()),
                None => return Err(Failure::Usage(format!("--q {q}: exhaustive scans stop at q = 5, use --random"))),
            };
            let rep = scan(&f, &curves, &mode, run.depth, cap)?;
            let text = match run.format(Format::Json) {
                Format::Text => {
                    let mut s = format!("{} curves over F_{q}, {} failed\n", rep.curves, rep.failed);
                    for e in rep.entries.iter().filter(|e| !e.passed) {
                        let _ = writeln!(s, "{:?}: {:?}", e.curve.coeffs, e.failures.iter().map(|c| &c.check).collect::<Vec<_>>());
                    }
                    s
                }
                _ => serde_json::to_string_pretty(&rep).expect("json") + "\n",
            };
            (text, rep.passed(), run)
        }
    };
    run.emit(&text, out)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Check("one or more checks failed".into()))
    }
}

fn dump_corpus_text() -> String {
    dump_corpus(&builtin_corpus())
}
