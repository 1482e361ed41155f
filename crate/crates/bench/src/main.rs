use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use airy_tools::grid::{accuracy_csv, bound_csv, profile_csv};
use airy_tools::{accuracy_grid, convergence_profile, error_bound_map, BenchError, GridSpec, OracleConfig};
use airy_core::coeffs::{build_ab_table, EXACT_LIMIT};
use airy_core::geometry::{contours_for_phase, Contour};
use airy_core::{ai, bi, EvaluationRequest, EvaluationResult, Method};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

#[derive(Parser)]
#[command(name = "airy", version, about = "Airy functions of complex argument")]
struct Cli {
    /// Write CSV here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Point {
    #[arg(long, allow_hyphen_values = true)]
    re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    im: f64,
    #[arg(long, default_value = "auto", value_parser = parse_method)]
    method: Method,
    #[arg(long, default_value_t = 500)]
    terms: usize,
}

#[derive(Args)]
struct Window {
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    xmin: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    xmax: f64,
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    ymin: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    ymax: f64,
    #[arg(long, default_value_t = 0.25)]
    step: f64,
}

impl Window {
    fn spec(&self) -> GridSpec {
        GridSpec {
            x_range: (self.xmin, self.xmax),
            y_range: (self.ymin, self.ymax),
            step: self.step,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Ai(z)
    Ai(Point),
    /// Evaluate Bi(z)
    Bi(Point),
    /// Accuracy of a method against the oracle on a rectangular grid
    Grid {
        #[arg(long, value_parser = parse_method)]
        method: Method,
        #[arg(long, default_value_t = 500)]
        terms: usize,
        #[command(flatten)]
        grid: Window,
    },
    /// Accuracy against N at fixed points
    Profile {
        /// Points as "r,phi;r,phi;..."
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Term counts as "100,200,..."
        #[arg(long, default_value = "100,200,300,400,500")]
        terms: String,
        #[arg(long, default_value = "convergent", value_parser = parse_method)]
        method: Method,
    },
    /// Sample the steepest-descent contour(s) for arg z = phi
    Paths {
        #[arg(long, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 4.0)]
        smax: f64,
    },
    /// Coefficient table of chi and 1/chi
    Coeffs {
        #[arg(long, default_value_t = 20)]
        mmax: usize,
    },
    /// Oscillation error bound against actual error on a grid
    BoundMap {
        #[arg(long, default_value_t = 500)]
        terms: usize,
        #[command(flatten)]
        grid: Window,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: airy_core::AiryError| e.to_string())
}

fn value_csv(z: Complex64, r: &EvaluationResult) -> String {
    let bound = r.error_bound().map(|b| format!("{b:e}")).unwrap_or_default();
    format!(
        "re,im,value_re,value_im,method,terms_used,error_bound\n{:e},{:e},{:e},{:e},{},{},{}\n",
        z.re,
        z.im,
        r.value.re,
        r.value.im,
        r.method_used,
        r.terms_used(),
        bound
    )
}

fn contour_csv(c: &Contour) -> String {
    let mut s = String::from("segment,param,re_alpha,im_alpha,f_real,f_imag\n");
    for p in &c.samples {
        let _ = writeln!(
            s,
            "{},{:e},{:e},{:e},{:e},{:e}",
            p.segment, p.param, p.alpha.re, p.alpha.im, p.f_real, p.f_imag
        );
    }
    s
}

fn coeffs_csv(mmax: usize) -> Result<String, BenchError> {
    let t = build_ab_table(mmax)?;
    let mut s = String::from("m,a_taylor,b_taylor,a_exact,b_exact\n");
    for m in 0..=mmax {
        let exact = |x: Option<&airy_core::coeffs::ScaledRational>| x.map(|v| v.to_string()).unwrap_or_default();
        let _ = writeln!(
            s,
            "{m},{:e},{:e},{},{}",
            t.a(m),
            t.b(m),
            exact(t.a_taylor_exact(m)),
            exact(t.b_taylor_exact(m))
        );
    }
    Ok(s)
}

fn parse_list<T: std::str::FromStr>(s: &str, sep: char, what: &str) -> Result<Vec<T>, BenchError> {
    s.split(sep)
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| BenchError::Usage(format!("bad {what} entry '{t}'"))))
        .collect()
}

fn parse_points(s: &str) -> Result<Vec<(f64, f64)>, BenchError> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|pair| match parse_list::<f64>(pair, ',', "point")?.as_slice() {
            [r, phi] => Ok((*r, *phi)),
            _ => Err(BenchError::Usage(format!("point '{pair}' must be 'r,phi'"))),
        })
        .collect()
}

fn numbered(path: &Path, k: usize) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("contour");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}-{k}.{ext}"),
        None => format!("{stem}-{k}"),
    };
    path.with_file_name(name)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), BenchError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| BenchError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), BenchError> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Ai(p) | Command::Bi(p) if p.terms == 0 => Err(BenchError::Usage("--terms must be >= 1".into())),
        Command::Ai(p) => {
            let z = Complex64::new(p.re, p.im);
            let r = ai(&EvaluationRequest::new(z).method(p.method).terms(p.terms))?;
            emit(out, &value_csv(z, &r))
        }
        Command::Bi(p) => {
            let z = Complex64::new(p.re, p.im);
            let r = bi(&EvaluationRequest::new(z).method(p.method).terms(p.terms))?;
            emit(out, &value_csv(z, &r))
        }
        Command::Grid { method, terms, grid } => {
            let rows = accuracy_grid(&grid.spec(), method, terms, &OracleConfig::grid())?;
            emit(out, &accuracy_csv(&rows))
        }
        Command::Profile { z, terms, method } => {
            let pts = parse_points(&z)?;
            let ns = parse_list::<usize>(&terms, ',', "terms")?;
            let rows = convergence_profile(&pts, &ns, method, &OracleConfig::grid())?;
            emit(out, &profile_csv(&rows))
        }
        Command::Paths { phi, samples, smax } => {
            let contours = contours_for_phase(phi, samples, smax)?;
            for c in &contours {
                for note in &c.notes {
                    eprintln!("note: {note}");
                }
            }
            match (out, contours.as_slice()) {
                (Some(p), [one]) => emit(Some(p), &contour_csv(one)),
                (Some(p), many) => many
                    .iter()
                    .enumerate()
                    .try_for_each(|(k, c)| emit(Some(&numbered(p, k + 1)), &contour_csv(c))),
                (None, many) => {
                    let text: Vec<String> = many.iter().map(contour_csv).collect();
                    emit(None, &text.join("\n"))
                }
            }
        }
        Command::Coeffs { mmax } => {
            if mmax > EXACT_LIMIT {
                eprintln!("note: exact columns stop at m = {EXACT_LIMIT}");
            }
            emit(out, &coeffs_csv(mmax)?)
        }
        Command::BoundMap { terms, grid } => {
            let rows = error_bound_map(&grid.spec(), terms, &OracleConfig::grid())?;
            emit(out, &bound_csv(&rows))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("airy").chain(args.iter().copied()))
    }

    /// Runs the command with `--out` pointing into a fresh directory and
    /// returns the directory with the written file's path.
    fn run_to_file(args: &[&str]) -> (tempfile::TempDir, PathBuf, Result<(), BenchError>) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let mut all = args.to_vec();
        all.extend(["--out", path.to_str().unwrap()]);
        let res = run(parse(&all).unwrap());
        (dir, path, res)
    }

    fn output(args: &[&str]) -> String {
        let (_dir, path, res) = run_to_file(args);
        res.unwrap();
        std::fs::read_to_string(path).unwrap()
    }

    fn field(csv: &str, row: usize, name: &str) -> String {
        let mut lines = csv.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        let idx = header.iter().position(|h| *h == name).unwrap();
        lines.nth(row).unwrap().split(',').nth(idx).unwrap().to_string()
    }

    #[test]
    fn ai_value_and_method() {
        let out = output(&["ai", "--re", "2"]);
        assert_eq!(field(&out, 0, "method"), "maclaurin");
        let v: f64 = field(&out, 0, "value_re").parse().unwrap();
        assert!((v - 0.034_924_130_423_274_38).abs() < 1e-14);

        let out = output(&["ai", "--re", "-5", "--method", "convergent"]);
        let v: f64 = field(&out, 0, "value_re").parse().unwrap();
        assert!((v - 0.350_761_009_024_114_3).abs() < 1e-8);
        assert!(!field(&out, 0, "error_bound").is_empty());
        assert_eq!(field(&out, 0, "terms_used"), "500");
    }

    #[test]
    fn bi_at_origin() {
        let out = output(&["bi", "--re", "0"]);
        let v: f64 = field(&out, 0, "value_re").parse().unwrap();
        assert!((v - 0.614_926_627_446_000_7).abs() < 1e-15);
    }

    #[test]
    fn usage_errors_exit_2() {
        let e = parse(&["ai"]).err().unwrap();
        assert_eq!(e.exit_code(), 2);
        assert_eq!(parse(&["ai", "--re", "1", "--method", "taylor"]).err().unwrap().exit_code(), 2);
        for args in [
            &["ai", "--re", "1", "--terms", "0"][..],
            &["grid", "--method", "maclaurin", "--step", "0"],
            &["profile", "--z", "1"],
            &["profile", "--z", "7,0", "--terms", "x"],
        ] {
            let (_d, _p, res) = run_to_file(args);
            assert_eq!(res.unwrap_err().exit_code(), 2, "{args:?}");
        }
    }

    #[test]
    fn numerical_errors_exit_3() {
        let (_d, _p, res) = run_to_file(&["ai", "--re", "0", "--method", "asymptotic"]);
        let e = res.unwrap_err();
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().contains("degenerate"));
        let (_d, _p, res) = run_to_file(&["paths", "--phi", "0", "--smax", "0.5", "--samples", "0"]);
        assert_eq!(res.unwrap_err().exit_code(), 3);
    }

    #[test]
    fn paths_one_file_per_contour() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        run(parse(&["paths", "--phi", "3.0", "--samples", "10", "--out", path.to_str().unwrap()]).unwrap()).unwrap();
        for k in 1..=2 {
            let text = std::fs::read_to_string(dir.path().join(format!("c-{k}.csv"))).unwrap();
            assert!(text.starts_with("segment,param,re_alpha,im_alpha,f_real,f_imag"));
            assert_eq!(text.lines().count(), 31);
        }
        assert!(!path.exists());
        let out = output(&["paths", "--phi", "0", "--samples", "5"]);
        assert_eq!(out.lines().count(), 16);
    }

    #[test]
    fn coefficients_and_profile() {
        let out = output(&["coeffs", "--mmax", "3"]);
        assert_eq!(out.lines().count(), 5);
        assert_eq!(field(&out, 1, "a_exact"), "2/9*6^(1/3)");
        assert_eq!(field(&out, 0, "b_exact"), "1*6^(-1/3)");

        let out = output(&["profile", "--z", "7,0;5,1", "--terms", "100,500"]);
        assert_eq!(out.lines().count(), 5);
        let acc: f64 = field(&out, 0, "accuracy").parse().unwrap();
        assert!(acc <= 1e-8);
    }

    #[test]
    fn grid_and_bound_map_are_repeatable() {
        let args = ["bound-map", "--xmin", "-2", "--xmax", "8", "--ymin", "0", "--ymax", "0", "--step", "2"];
        let a = output(&args);
        assert_eq!(a, output(&args));
        let rows: Vec<&str> = a.lines().skip(1).collect();
        assert_eq!(rows.len(), 6);
        let z8 = rows.iter().find(|r| r.starts_with("8e0,")).unwrap();
        let b: f64 = z8.split(',').nth(2).unwrap().parse().unwrap();
        assert!(b <= 1e-10);

        let args = ["grid", "--method", "auto", "--xmin", "-1", "--xmax", "1", "--ymin", "-1", "--ymax", "1", "--step", "1"];
        let g = output(&args);
        assert_eq!(g, output(&args));
        assert!(g.starts_with("x,y,method_re,method_im,oracle_re,oracle_im,accuracy,log10_accuracy,near_zero,abs_error\n"));
        assert_eq!(g.lines().count(), 10);
    }
}
