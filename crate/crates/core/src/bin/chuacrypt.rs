//! Command-line front end: key generation, encryption, decryption, raw
//! keystream output, image statistics, and Lyapunov estimation.
//!
//! Exit codes: 0 success, 1 usage error, 2 input-format error,
//! 3 degenerate key or diverging simulation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chuacrypt::analysis::{self, KantzConfig};
use chuacrypt::cipher::{encrypt_image, CipherError};
use chuacrypt::keyfile::{parse_key_file, write_key_file};
use chuacrypt::keystream::{generate_keystream, KeyConfig, KeystreamError};
use chuacrypt::pgm::{parse_pgm, write_pgm};

#[derive(Parser)]
#[command(name = "chuacrypt", version, about = "Chaos-based XOR image cipher")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a key file (reference values unless overridden).
    Keygen(KeygenArgs),
    /// XOR-encrypt a PGM image with the keystream of a key file.
    Encrypt(CryptArgs),
    /// Decrypt a PGM image (same operation as encrypt).
    Decrypt(CryptArgs),
    /// Emit raw keystream bytes.
    Keystream(KeystreamArgs),
    /// Compute entropy, correlations, chi-square and histogram of an image.
    Analyze(AnalyzeArgs),
    /// Estimate the Lyapunov exponent of a scalar series.
    Lyapunov(LyapunovArgs),
}

#[derive(Args)]
struct KeygenArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    c2: Option<f64>,
    #[arg(long)]
    l: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    ga: Option<f64>,
    #[arg(long)]
    gb: Option<f64>,
    #[arg(long)]
    bp: Option<f64>,
    #[arg(long)]
    v_c1_0: Option<f64>,
    #[arg(long)]
    v_c2_0: Option<f64>,
    #[arg(long)]
    i_l_0: Option<f64>,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    transient: Option<usize>,
}

#[derive(Args)]
struct CryptArgs {
    #[arg(long)]
    key: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct KeystreamArgs {
    #[arg(long)]
    key: PathBuf,
    #[arg(long)]
    len: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LyapunovArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long = "max-dn")]
    max_dn: Option<usize>,
    /// Fit-window bounds in delta-n, inclusive.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    fit: Option<Vec<usize>>,
    #[arg(long)]
    theiler: Option<usize>,
}

enum CliError {
    Usage(String),
    Input(String),
    Key(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Key(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Key(m) => m,
        }
    }
}

fn input_err<E: std::fmt::Display>(context: &str) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError::Input(format!("{context}: {e}"))
}

fn keystream_err(e: KeystreamError) -> CliError {
    CliError::Key(e.to_string())
}

fn cipher_err(e: CipherError) -> CliError {
    match e {
        CipherError::Keystream(k) => keystream_err(k),
        other => CliError::Input(other.to_string()),
    }
}

fn load_key(path: &PathBuf) -> Result<KeyConfig, CliError> {
    let text = fs::read_to_string(path).map_err(input_err(&format!("{}", path.display())))?;
    parse_key_file(&text).map_err(input_err("key file"))
}

fn load_image(path: &PathBuf) -> Result<chuacrypt::Image, CliError> {
    let bytes = fs::read(path).map_err(input_err(&format!("{}", path.display())))?;
    parse_pgm(&bytes).map_err(input_err("PGM input"))
}

fn write_out(path: &PathBuf, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(input_err(&format!("{}", path.display())))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Keygen(a) => {
            let mut key = KeyConfig::default();
            key.params.c1 = a.c1.unwrap_or(key.params.c1);
            key.params.c2 = a.c2.unwrap_or(key.params.c2);
            key.params.l = a.l.unwrap_or(key.params.l);
            key.params.r = a.r.unwrap_or(key.params.r);
            key.params.ga = a.ga.unwrap_or(key.params.ga);
            key.params.gb = a.gb.unwrap_or(key.params.gb);
            key.params.bp = a.bp.unwrap_or(key.params.bp);
            key.initial.v_c1 = a.v_c1_0.unwrap_or(key.initial.v_c1);
            key.initial.v_c2 = a.v_c2_0.unwrap_or(key.initial.v_c2);
            key.initial.i_l = a.i_l_0.unwrap_or(key.initial.i_l);
            key.h = a.h.unwrap_or(key.h);
            key.transient = a.transient.unwrap_or(key.transient);
            if !key.params.is_valid() || !(key.h > 0.0 && key.h.is_finite()) {
                return Err(CliError::Usage("key parameters out of range".to_string()));
            }
            write_out(&a.out, write_key_file(&key).as_bytes())
        }
        Command::Encrypt(a) | Command::Decrypt(a) => {
            let key = load_key(&a.key)?;
            let img = load_image(&a.input)?;
            let out = encrypt_image(&img, &key).map_err(cipher_err)?;
            write_out(&a.out, &write_pgm(&out))
        }
        Command::Keystream(a) => {
            if a.len == 0 {
                return Err(CliError::Usage("--len must be at least 1".to_string()));
            }
            let key = load_key(&a.key)?;
            let ks = generate_keystream(&key, a.len).map_err(keystream_err)?;
            write_out(&a.out, &ks.bytes)
        }
        Command::Analyze(a) => {
            let img = load_image(&a.input)?;
            let report = analysis::analyze(&img).map_err(|e| CliError::Input(e.to_string()))?;
            let mut out = String::from("metric,value\n");
            out.push_str(&format!("entropy_bits,{}\n", report.entropy_bits));
            out.push_str(&format!("corr_horizontal,{}\n", report.corr_horizontal));
            out.push_str(&format!("corr_vertical,{}\n", report.corr_vertical));
            out.push_str(&format!("corr_diagonal,{}\n", report.corr_diagonal));
            out.push_str(&format!("chi_square,{}\n", report.chi_square));
            for (i, c) in report.histogram.counts.iter().enumerate() {
                out.push_str(&format!("hist_{i},{c}\n"));
            }
            write_out(&a.out, out.as_bytes())
        }
        Command::Lyapunov(a) => {
            let text =
                fs::read_to_string(&a.input).map_err(input_err(&format!("{}", a.input.display())))?;
            let series: Vec<f64> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(|l| {
                    l.parse::<f64>()
                        .map_err(|_| CliError::Input(format!("bad series value \"{l}\"")))
                })
                .collect::<Result<_, _>>()?;
            if series.is_empty() {
                return Err(CliError::Input("series file is empty".to_string()));
            }
            let mut cfg = KantzConfig::for_series(&series);
            if let Some(e) = a.epsilon {
                cfg.epsilon = e;
            }
            if let Some(d) = a.max_dn {
                cfg.max_delta_n = d;
            }
            if let Some(fit) = &a.fit {
                cfg.fit_lo = fit[0];
                cfg.fit_hi = fit[1];
            }
            if let Some(t) = a.theiler {
                cfg.theiler_window = t;
            }
            if !cfg.is_valid() {
                return Err(CliError::Usage("invalid estimator settings".to_string()));
            }
            let curve = analysis::kantz_stretching_curve(&series, &cfg)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let fit_points: Vec<(f64, f64)> = curve
                .iter()
                .filter(|p| p.delta_n >= cfg.fit_lo && p.delta_n <= cfg.fit_hi)
                .map(|p| (p.delta_n as f64, p.s))
                .collect();
            let lambda = analysis::least_squares_slope(&fit_points);
            let mut out = String::from("delta_n,s\n");
            for p in &curve {
                out.push_str(&format!("{},{}\n", p.delta_n, p.s));
            }
            out.push_str(&format!("lambda,{lambda}\n"));
            write_out(&a.out, out.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are success, everything else is a
            // usage error.
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
