use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use altlink_core::{
    certify_with, geodesic_reduce, parse_diagram, Certificate, CertifyOptions, Checks, Diagram, Error, Presentation,
    Verdict,
};
use anyhow::Context;
use clap::{Parser, Subcommand};

const EXIT_USAGE: u8 = 2;
const EXIT_NOT_APPLICABLE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

/// Certify nontriviality of alternating links from planar diagram codes.
#[derive(Parser)]
#[command(name = "altlink", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structural flags of a diagram.
    Check { file: PathBuf },
    /// Print the face presentation of the reduced diagram.
    Present { file: PathBuf },
    /// Shorten a word over the face generators to a geodesic.
    ReduceWord {
        file: PathBuf,
        /// Whitespace-separated signed face ids, e.g. "3 -1 5 -2".
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Decide whether the link is nontrivial and print the evidence.
    Certify {
        file: PathBuf,
        /// Emit the certificate as JSON.
        #[arg(long)]
        json: bool,
        /// Also search for a normal form of each longitude.
        #[arg(long)]
        normal_form: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
                _ => ExitCode::from(code),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::InternalInconsistency(_)) => EXIT_INTERNAL,
        Some(Error::NotConnected | Error::PreconditionViolated(_)) => EXIT_NOT_APPLICABLE,
        _ => EXIT_USAGE,
    }
}

fn run(command: Command) -> anyhow::Result<(String, u8)> {
    match command {
        Command::Check { file } => {
            let d = load(&file)?;
            Ok((format!("{}\n", check_line(&d)), 0))
        }
        Command::Present { file } => {
            let p = presentation(&load(&file)?)?;
            Ok((p.to_dump(), 0))
        }
        Command::ReduceWord { file, word } => {
            let p = presentation(&load(&file)?)?;
            let sc = p.small_cancellation();
            if !sc.holds() {
                return Err(Error::PreconditionViolated(format!(
                    "the presentation is not C(4)-T(4) (C4={}, T4={})",
                    sc.c4, sc.t4
                ))
                .into());
            }
            let w = p.parse_word(&word)?;
            Ok((format!("{}\n", geodesic_reduce(&w, &p)), 0))
        }
        Command::Certify {
            file,
            json,
            normal_form,
        } => {
            let d = load(&file)?;
            let c = certify_with(&d, CertifyOptions { normal_form })?;
            let out = if json {
                serde_json::to_string_pretty(&c)? + "\n"
            } else {
                render(&c)
            };
            Ok((
                out,
                if c.verdict == Verdict::NotApplicable {
                    EXIT_NOT_APPLICABLE
                } else {
                    0
                },
            ))
        }
    }
}

fn load(path: &Path) -> anyhow::Result<Diagram> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_diagram(&text)?)
}

fn presentation(d: &Diagram) -> anyhow::Result<Presentation> {
    let r = d.reduce();
    if r.crossing_count() < d.crossing_count() {
        eprintln!(
            "note: removed {} nugatory crossings",
            d.crossing_count() - r.crossing_count()
        );
    }
    Ok(Presentation::of_diagram(&r)?)
}

fn flag(b: bool) -> u8 {
    u8::from(b)
}

fn check_line(d: &Diagram) -> String {
    let c = Checks::of(d);
    format!(
        "connected={} reduced={} prime={} alternating={}",
        flag(c.connected),
        flag(c.reduced),
        flag(c.prime),
        flag(c.alternating)
    )
}

fn render(c: &Certificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdict: {:?}", c.verdict);
    let _ = writeln!(s, "digest: {}", c.digest);
    let _ = writeln!(s, "crossings: {} (reduced {})", c.input_crossings, c.reduced_crossings);
    for (i, f) in c.factors.iter().enumerate() {
        let _ = writeln!(
            s,
            "factor {i}: crossings={} components={} alternating={} prime={} verdict={:?}",
            f.crossings,
            f.components,
            flag(f.checks.alternating),
            flag(f.checks.prime),
            f.verdict
        );
        if let Some(sc) = f.small_cancellation {
            let _ = writeln!(
                s,
                "  pieces<={} C4={} T4={}",
                sc.pieces_max_len,
                flag(sc.c4),
                flag(sc.t4)
            );
        }
        for l in &f.longitudes {
            let _ = writeln!(
                s,
                "  component {}: slk={} longitude: {}",
                l.component, l.slk, l.longitude_word
            );
            let _ = writeln!(s, "    geodesic: {}", l.geodesic_word);
            if let Some(nf) = &l.normal_form {
                match &nf.word {
                    Some(w) => {
                        let _ = writeln!(s, "    normal form: {w} (parity changes {})", w.parity_changes());
                    }
                    None => {
                        let _ = writeln!(s, "    normal form: not found");
                    }
                }
            }
        }
    }
    if let Some(ev) = &c.evidence {
        let _ = writeln!(
            s,
            "evidence: factor {} component {}: {}",
            ev.factor, ev.component, ev.geodesic_word
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_classes_map_to_exit_codes() {
        let code = |e: Error| exit_code(&anyhow::Error::from(e));
        assert_eq!(
            code(Error::Parse {
                pos: 0,
                msg: String::new()
            }),
            EXIT_USAGE
        );
        assert_eq!(code(Error::Validation(String::new())), EXIT_USAGE);
        assert_eq!(code(Error::NotConnected), EXIT_NOT_APPLICABLE);
        assert_eq!(code(Error::InternalInconsistency(String::new())), EXIT_INTERNAL);
        assert_eq!(exit_code(&anyhow::anyhow!("io")), EXIT_USAGE);
    }

    #[test]
    fn render_lists_every_factor() {
        let d = parse_diagram("PD[O, X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]").unwrap();
        let text = render(&certify_with(&d, CertifyOptions::default()).unwrap());
        assert_eq!(text.lines().filter(|l| l.starts_with("factor ")).count(), 2);
        assert!(text.starts_with("verdict: Nontrivial"));
    }
}
