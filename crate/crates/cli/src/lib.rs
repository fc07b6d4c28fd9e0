//! Command line front end: argument parsing, input loading and JSON reports.
//!
//! Inputs are JSON files or `fixtures:<name>`. Every command prints one
//! report with sorted keys; `--pretty` prints a plain-text summary instead.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use qgs_core::io::{winding_to_value, Document};
use qgs_core::oracle::{grassmannian_points, verify_decomposition, DEFAULT_MAX_POINTS};
use qgs_core::polarization::is_weak_polarization;
use qgs_core::schofield::{euler_form, exceptional_pair_report, hom_ext};
use qgs_core::{
    betti_numbers, check_hypothesis, coefficient_quiver, decompose, fixtures, glue, natural_order,
    Cell, CellResult, DimensionVector, Error, Representation, Winding,
};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Parser)]
#[command(
    name = "qgs",
    version,
    about = "Schubert cells of quiver Grassmannians of tree modules"
)]
pub struct Cli {
    /// Print a plain-text summary instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check ordering, polarization, forest and unique-maximum conditions.
    Check { input: String },
    /// List the Schubert cells of one type.
    Cells {
        input: String,
        #[arg(long)]
        dim: Option<String>,
    },
    /// Euler characteristic and cell counts per dimension.
    Euler {
        input: String,
        #[arg(long)]
        dim: Option<String>,
        /// Assert that the Grassmannian is smooth, so the counts are Betti numbers.
        #[arg(long)]
        smooth: bool,
    },
    /// Compare the cells against brute-force point counts.
    Verify {
        input: String,
        #[arg(long)]
        dim: Option<String>,
        #[arg(long, default_value = "2,3")]
        q: String,
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max_enum: u128,
    },
    /// Count points of the quiver Grassmannian over prime fields.
    Points {
        input: String,
        #[arg(long)]
        dim: Option<String>,
        #[arg(long, default_value = "2")]
        q: String,
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max_enum: u128,
    },
    /// Glue two windings along a basis of Ext.
    Glue {
        input: String,
        /// Also write the glued winding to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dimensions of Hom and Ext between two representations.
    Homext { x: String, y: String },
    /// List the built-in examples, or print one as JSON.
    Fixtures { name: Option<String> },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Failure that aborts a command: `1` for violated hypotheses, `2` for bad input.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::HypothesisViolation(_)
            | Error::PreconditionFailed(_)
            | Error::NotTreeAfterGlue
            | Error::NotWeakPolarization
            | Error::NotForest => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

struct Input {
    source: String,
    sha256: String,
    document: Document,
    default_dims: Option<&'static str>,
}

impl Input {
    fn load(source: &str) -> Result<Input, Failure> {
        let (bytes, document, default_dims) = if let Some(name) = source.strip_prefix("fixtures:") {
            let f = fixtures::by_name(name)
                .ok_or_else(|| input_error(format!("unknown fixture `{name}`")))?;
            let text = f.document.to_json()?.to_string();
            (text.into_bytes(), f.document, f.default_dims)
        } else {
            let bytes = std::fs::read(source).map_err(|e| input_error(format!("{source}: {e}")))?;
            let text =
                std::str::from_utf8(&bytes).map_err(|e| input_error(format!("{source}: {e}")))?;
            let document =
                Document::parse(text).map_err(|e| input_error(format!("{source}: {e}")))?;
            (bytes, document, None)
        };
        Ok(Input {
            source: source.to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
            document,
            default_dims,
        })
    }

    fn digest(&self) -> Value {
        json!({ "source": self.source, "sha256": self.sha256 })
    }

    fn winding(&self, warnings: &mut Vec<String>) -> Result<Winding, Failure> {
        match &self.document {
            Document::Winding(w) => Ok(w.clone()),
            Document::Representation(r) => {
                warnings.push(format!(
                    "{}: winding taken from the coefficient quiver of the given basis",
                    self.source
                ));
                Ok(coefficient_quiver(r, &natural_order(r.dims()))?)
            }
            Document::Gluing(_) => Err(input_error(format!(
                "{}: expected a winding or representation, got gluing data",
                self.source
            ))),
        }
    }

    fn representation(&self) -> Result<Representation, Failure> {
        match &self.document {
            Document::Representation(r) => Ok(r.clone()),
            Document::Winding(w) => Ok(w.push_forward()),
            Document::Gluing(_) => Err(input_error(format!(
                "{}: expected a winding or representation, got gluing data",
                self.source
            ))),
        }
    }

    fn dims(
        &self,
        flag: &Option<String>,
        quiver: &qgs_core::Quiver,
    ) -> Result<DimensionVector, Failure> {
        let text = flag
            .as_deref()
            .or(self.default_dims)
            .ok_or_else(|| input_error("--dim is required, e.g. --dim \"x=1,y=2\""))?;
        DimensionVector::parse(quiver, text).map_err(|e| input_error(format!("--dim: {e}")))
    }
}

fn primes(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| input_error(format!("--q: `{s}` is not an integer")))
        })
        .collect()
}

/// JSON fields of a command, its exit code and a plain-text rendering.
struct Section {
    result: Value,
    code: i32,
    text: String,
}

fn hypothesis_json(w: &Winding) -> Value {
    let h = check_hypothesis(w);
    let q = w.base();
    json!({
        "passed": h.passed(),
        "failures": h.failures(),
        "forest": h.forest,
        "components": h.components,
        "ordered": h.ordered,
        "crossings": h.crossings.iter().map(|(a, b)| [w.arrow_label(a), w.arrow_label(b)]).collect::<Vec<_>>(),
        "polarization": h.polarization,
        "sortings": h.sortings.iter().map(|s| json!({
            "colour": q.arrow_name(s.colour),
            "lower_sources": s.lower_sources(w),
            "lower_targets": s.lower_targets(w),
        })).collect::<Vec<_>>(),
        "unsorted_colours": h.unsorted_colours.iter().map(|&c| q.arrow_name(c)).collect::<Vec<_>>(),
        "unique_maximal": h.unique_maximal,
        "maximal_conflicts": h.maximal_conflicts.iter().map(|(p, cs)| json!({
            "pair": [p.i, p.j],
            "colours": cs.iter().map(|&c| q.arrow_name(c)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn cell_json(w: &Winding, c: &Cell) -> Value {
    let certificate = c.certificate.as_ref().map(|cert| match cert {
        qgs_core::schubert::Certificate::ExtremalArrow(a) => json!({ "extremal_arrow": w.arrow_label(a) }),
        qgs_core::schubert::Certificate::Contradiction(t) => {
            json!({ "contradiction": { "colour": w.base().arrow_name(t.colour), "t": t.t, "s": t.s } })
        }
        qgs_core::schubert::Certificate::PsiSweep => json!("psi_sweep"),
        qgs_core::schubert::Certificate::Reordered => json!("reordered"),
    });
    json!({
        "beta": c.beta.members(),
        "result": c.result,
        "certificate": certificate,
        "free_coefficients": c.free,
        "equations": c.equations.iter().filter(|e| !e.is_trivial()).map(|e| e.to_string()).collect::<Vec<_>>(),
    })
}

fn result_text(r: &CellResult) -> String {
    match r {
        CellResult::Empty => "empty".into(),
        CellResult::Affine(d) => format!("A^{d}"),
        CellResult::HypothesisViolation(why) => format!("uncertified: {why}"),
    }
}

fn check(input: &Input, warnings: &mut Vec<String>) -> Result<Section, Failure> {
    let w = input.winding(warnings)?;
    let h = hypothesis_json(&w);
    let passed = h["passed"] == json!(true);
    let text = if passed {
        "hypothesis holds\n".to_string()
    } else {
        format!("hypothesis fails: {}\n", h["failures"])
    };
    Ok(Section {
        result: json!({ "hypothesis": h }),
        code: if passed { 0 } else { 1 },
        text,
    })
}

fn cells(
    input: &Input,
    dim: &Option<String>,
    warnings: &mut Vec<String>,
) -> Result<Section, Failure> {
    let w = input.winding(warnings)?;
    let e = input.dims(dim, w.base())?;
    let cells = decompose(&w, &e)?;
    let certified = cells
        .iter()
        .all(|c| !matches!(c.result, CellResult::HypothesisViolation(_)));
    let euler = certified.then(|| {
        cells
            .iter()
            .filter(|c| matches!(c.result, CellResult::Affine(_)))
            .count()
    });
    let mut text = String::new();
    for c in &cells {
        let _ = writeln!(
            text,
            "{:<24} {}",
            c.beta.to_string(),
            result_text(&c.result)
        );
    }
    match euler {
        Some(n) => {
            let _ = writeln!(text, "euler characteristic {n}");
        }
        None => {
            let _ = writeln!(text, "some cells are not certified");
        }
    }
    Ok(Section {
        result: json!({
            "dim": e.to_named(w.base()),
            "hypothesis": hypothesis_json(&w),
            "cells": cells.iter().map(|c| cell_json(&w, c)).collect::<Vec<_>>(),
            "euler": euler,
        }),
        code: if certified { 0 } else { 1 },
        text,
    })
}

fn euler(
    input: &Input,
    dim: &Option<String>,
    smooth: bool,
    warnings: &mut Vec<String>,
) -> Result<Section, Failure> {
    let w = input.winding(warnings)?;
    let e = input.dims(dim, w.base())?;
    let betti = betti_numbers(&w, &e, smooth)?;
    let euler: usize = betti.counts.iter().sum();
    if let Some(c) = &betti.caveat {
        warnings.push(c.clone());
    }
    let text = format!(
        "euler characteristic {euler}\ncells per dimension {:?}\n",
        betti.counts
    );
    Ok(Section {
        result: json!({
            "dim": e.to_named(w.base()),
            "euler": euler,
            "betti": betti.counts,
            "smooth_asserted": betti.smooth_asserted,
            "hypothesis_passed": check_hypothesis(&w).passed(),
        }),
        code: 0,
        text,
    })
}

fn verify(
    input: &Input,
    dim: &Option<String>,
    q: &str,
    max: u128,
    warnings: &mut Vec<String>,
) -> Result<Section, Failure> {
    let w = input.winding(warnings)?;
    let e = input.dims(dim, w.base())?;
    let report = verify_decomposition(&w, &e, &primes(q)?, max)?;
    if !report.hypothesis_passed {
        warnings.push("hypothesis failed; only certified cells are compared with q^d".into());
    }
    let mut text = String::new();
    for p in &report.primes {
        let _ = writeln!(
            text,
            "q={}: grassmannian {} cells {} {}",
            p.q,
            p.grassmannian,
            p.cell_sum,
            if p.partition_holds() {
                "ok"
            } else {
                "MISMATCH"
            }
        );
    }
    let mismatches: Vec<Value> = report
        .mismatches()
        .iter()
        .map(|(q, c)| json!({ "q": q, "beta": c.beta, "points": c.points, "expected": c.expected }))
        .collect();
    let _ = writeln!(
        text,
        "{}",
        if report.passed() {
            "verified"
        } else {
            "verification failed"
        }
    );
    Ok(Section {
        result: json!({
            "dim": e.to_named(w.base()),
            "passed": report.passed(),
            "hypothesis_passed": report.hypothesis_passed,
            "primes": report.primes,
            "mismatches": mismatches,
        }),
        code: if report.passed() { 0 } else { 1 },
        text,
    })
}

fn points(input: &Input, dim: &Option<String>, q: &str, max: u128) -> Result<Section, Failure> {
    let rep = input.representation()?;
    let e = input.dims(dim, rep.quiver())?;
    let mut counts = serde_json::Map::new();
    let mut text = String::new();
    for q in primes(q)? {
        let n = grassmannian_points(&rep, &e, q, max)?;
        counts.insert(q.to_string(), json!(n));
        let _ = writeln!(text, "q={q}: {n} points");
    }
    Ok(Section {
        result: json!({ "dim": e.to_named(rep.quiver()), "points": counts }),
        code: 0,
        text,
    })
}

fn glue_cmd(input: &Input, output: &Option<PathBuf>) -> Result<Section, Failure> {
    let Document::Gluing(spec) = &input.document else {
        return Err(input_error(format!(
            "{}: expected gluing data",
            input.source
        )));
    };
    let z = glue(spec)?;
    let value =
        serde_json::to_value(winding_to_value(&z)).map_err(|e| input_error(e.to_string()))?;
    if let Some(path) = output {
        let text = serde_json::to_string_pretty(&value).map_err(|e| input_error(e.to_string()))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    }
    let rep = z.push_forward();
    let (end, _) = hom_ext(&rep, &rep)?;
    let text = format!(
        "{} vertices, dimension vector {}, weak polarization {}, end_dim {end}\n",
        z.vertex_count(),
        z.dims().display(z.base()),
        is_weak_polarization(&z)
    );
    Ok(Section {
        result: json!({
            "winding": value,
            "vertex_count": z.vertex_count(),
            "dims": z.dims().to_named(z.base()),
            "weak_polarization": is_weak_polarization(&z),
            "end_dim": end,
        }),
        code: 0,
        text,
    })
}

fn homext(x: &Input, y: &Input) -> Result<Section, Failure> {
    let (rx, ry) = (x.representation()?, y.representation()?);
    let (hom, ext) = hom_ext(&rx, &ry)?;
    let pair = exceptional_pair_report(&ry, &rx)?;
    let text = format!(
        "hom {hom}, ext {ext}, euler form {}\n",
        hom as i64 - ext as i64
    );
    Ok(Section {
        result: json!({
            "hom": hom,
            "ext": ext,
            "euler_form": euler_form(rx.quiver(), rx.dims(), ry.dims()),
            "exceptional_pair": { "holds": pair.holds(), "failure": pair.failure(), "dims": pair },
        }),
        code: 0,
        text,
    })
}

fn report(
    command: &str,
    inputs: &[&Input],
    section: Section,
    warnings: Vec<String>,
    pretty: bool,
) -> Outcome {
    let stdout = if pretty {
        let mut text = section.text;
        for w in &warnings {
            let _ = writeln!(text, "warning: {w}");
        }
        text
    } else {
        let value = json!({
            "command": command,
            "inputs": inputs.iter().map(|i| i.digest()).collect::<Vec<_>>(),
            "result": section.result,
            "warnings": warnings,
            "exit_code": section.code,
        });
        serde_json::to_string(&value).expect("serializable") + "\n"
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: section.code,
    }
}

fn fixture_listing(name: &Option<String>, pretty: bool) -> Result<Outcome, Failure> {
    let stdout = match name {
        None if pretty => fixtures::NAMES.join("\n") + "\n",
        None => {
            serde_json::to_string(&json!({ "fixtures": fixtures::NAMES })).expect("serializable")
                + "\n"
        }
        Some(n) => {
            let f = fixtures::by_name(n)
                .ok_or_else(|| input_error(format!("unknown fixture `{n}`")))?;
            let v = f.document.to_json()?;
            if pretty {
                serde_json::to_string_pretty(&v).expect("serializable") + "\n"
            } else {
                serde_json::to_string(&v).expect("serializable") + "\n"
            }
        }
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: 0,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let mut warnings = Vec::new();
    let (name, inputs, section) = match &cli.command {
        Command::Fixtures { name } => return fixture_listing(name, cli.pretty),
        Command::Check { input } => {
            let i = Input::load(input)?;
            let s = check(&i, &mut warnings)?;
            ("check", vec![i], s)
        }
        Command::Cells { input, dim } => {
            let i = Input::load(input)?;
            let s = cells(&i, dim, &mut warnings)?;
            ("cells", vec![i], s)
        }
        Command::Euler { input, dim, smooth } => {
            let i = Input::load(input)?;
            let s = euler(&i, dim, *smooth, &mut warnings)?;
            ("euler", vec![i], s)
        }
        Command::Verify {
            input,
            dim,
            q,
            max_enum,
        } => {
            let i = Input::load(input)?;
            let s = verify(&i, dim, q, *max_enum, &mut warnings)?;
            ("verify", vec![i], s)
        }
        Command::Points {
            input,
            dim,
            q,
            max_enum,
        } => {
            let i = Input::load(input)?;
            let s = points(&i, dim, q, *max_enum)?;
            ("points", vec![i], s)
        }
        Command::Glue { input, output } => {
            let i = Input::load(input)?;
            let s = glue_cmd(&i, output)?;
            ("glue", vec![i], s)
        }
        Command::Homext { x, y } => {
            let (a, b) = (Input::load(x)?, Input::load(y)?);
            let s = homext(&a, &b)?;
            ("homext", vec![a, b], s)
        }
    };
    let refs: Vec<&Input> = inputs.iter().collect();
    Ok(report(name, &refs, section, warnings, cli.pretty))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => outcome,
        Err(f) => {
            let body = json!({ "error": f.message, "exit_code": f.code });
            Outcome {
                stdout: String::new(),
                stderr: serde_json::to_string(&body).expect("serializable") + "\n",
                code: f.code,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn help_and_version_exit_cleanly() {
        assert_eq!(run(["qgs", "--help"]).code, 0);
        assert!(run(["qgs", "--version"]).stdout.contains("qgs"));
        assert_eq!(run(["qgs"]).code, 2);
    }

    #[test]
    fn pretty_output_is_text() {
        let out = run(["qgs", "cells", "fixtures:kronecker_3_4", "--pretty"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("{3,6,7}"));
        assert!(out.stdout.ends_with("euler characteristic 3\n"));
    }

    #[test]
    fn primes_are_parsed_as_a_list() {
        assert_eq!(primes("2, 3,5").unwrap(), vec![2, 3, 5]);
        assert_eq!(primes("x").unwrap_err().code, 2);
    }

    #[test]
    fn gluing_data_is_not_a_winding() {
        let out = run(["qgs", "check", "fixtures:s4_glue"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("gluing data"));
    }
}
