use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use weylqubit::gns::{gns_rep, gns_rep_general, pauli_matrices, qubit_basis, qubit_trace, GnsRep, StateInput};
use weylqubit::optics::{self, Gate, GateReport, OpticalCircuit};
use weylqubit::qubit::{commutant_suite, extract_qubits, factor_check, tensor_suite, verify_pauli};
use weylqubit::qudit::verify_qudit;
use weylqubit::report::identity_entry;
use weylqubit::{AlgebraElement, Entry, Mode, Report, Window};

#[derive(Parser, Debug)]
#[command(name = "weylqubit", version, about = "Verify qubit structure in the Weyl algebra of angular momentum")]
struct Cli {
    /// Oracle window half-width.
    #[arg(long, global = true, env = "WEYLQUBIT_L_MAX", default_value_t = 32,
          value_parser = clap::value_parser!(i64).range(8..))]
    l_max: i64,

    /// Tolerance for floating-point checks (GNS and optics).
    #[arg(long, global = true, default_value_t = 1e-12, value_parser = positive)]
    tolerance: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The nine Pauli products and three adjoint relations.
    VerifyPauli,
    /// Commutant group law, Weyl relation and coefficient ratios.
    VerifyCommutant,
    /// Center and joint-commutant checks.
    VerifyFactor,
    /// Split and recombine suite.
    VerifyTensor,
    /// Extract `n` qubits from an element read from JSON.
    Extract {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        element: PathBuf,
    },
    /// GNS representation of a state read from JSON.
    Gns {
        #[arg(long)]
        state: PathBuf,
    },
    /// Projectors and matrix units of the `d`-level subalgebra.
    Qudit {
        #[arg(long)]
        d: i64,
    },
    /// Optical circuits.
    Optics {
        #[command(subcommand)]
        command: OpticsCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OpticsCommand {
    /// Verify a built-in gate on its logical code.
    Verify {
        /// phase, not, hadamard, controlled_z or pol_to_oam.
        #[arg(long)]
        gate: String,
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<f64>,
    },
    /// Run a circuit on an input state.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("tolerance must be positive, got {s}"))
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// A report plus command-specific JSON payload.
struct Outcome {
    report: Report,
    extra: Option<(&'static str, Value)>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self { report, extra: None }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let window = Window::new(cli.l_max)?;
    Ok(match &cli.command {
        Command::VerifyPauli => verify_pauli(Some(window))?.into(),
        Command::VerifyCommutant => commutant_suite(window)?.into(),
        Command::VerifyFactor => factor_check(window)?.into(),
        Command::VerifyTensor => tensor_suite(window)?.into(),
        Command::Extract { n, element } => extract(*n, element, window)?,
        Command::Gns { state } => gns(state, cli.tolerance)?,
        Command::Qudit { d } => verify_qudit(*d, window)?.into(),
        Command::Optics { command: OpticsCommand::Verify { gate, phi } } => optics_verify(gate, *phi, cli)?,
        Command::Optics { command: OpticsCommand::Simulate { circuit, input } } => simulate(circuit, input, cli.tolerance)?,
    })
}

fn extract(n: usize, path: &Path, window: Window) -> Result<Outcome> {
    let a = AlgebraElement::from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let tree = extract_qubits(&a, n)?;
    let back = tree.recombine()?;
    let mut report = Report::new(format!("extract {n} qubits"));
    report.push(identity_entry("recombination", &back, &a, Some(window))?);
    Ok(Outcome { report, extra: Some(("tree", tree.to_json_value())) })
}

fn homomorphism_entry(rep: &GnsRep, tol: f64) -> Result<Entry> {
    let basis = qubit_basis();
    let mut worst = 0.0f64;
    for x in &basis {
        let rx = rep.rep(x)?;
        worst = worst.max((rep.rep(&x.adjoint()?)? - rx.adjoint()).norm());
        for y in &basis {
            worst = worst.max((rep.rep(&x.try_mul(y)?)? - &rx * rep.rep(y)?).norm());
        }
    }
    Ok(Entry::check("rep *-homomorphism", worst <= tol, worst, Mode::Float))
}

fn rep_json(rep: &GnsRep) -> Value {
    let mats: Vec<Value> = rep
        .matrices
        .iter()
        .map(|m| {
            json!((0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect::<Vec<_>>())
                .collect::<Vec<_>>())
        })
        .collect();
    json!({"labels": rep.labels, "identity": mats[0], "a1": mats[1], "a2": mats[2], "a3": mats[3]})
}

fn gns(path: &Path, tol: f64) -> Result<Outcome> {
    let state = StateInput::from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let mut report = Report::new("GNS representation");
    let rep = match &state {
        StateInput::Vector(psi) if psi.is_even_support() => {
            let rep = gns_rep(psi)?;
            let pauli = pauli_matrices();
            let mut worst = 0.0f64;
            for (m, p) in rep.matrices.iter().zip(&pauli) {
                for i in 0..2 {
                    for j in 0..2 {
                        worst = worst.max((m[(i, j)] - p[(i, j)]).norm());
                    }
                }
            }
            report.push(Entry::check("rep matches Pauli matrices", worst <= tol, worst, Mode::Float));
            let basis = qubit_basis();
            let tr_id = (qubit_trace(psi, &basis[0])? - 2.0).norm();
            report.push(Entry::check("trace of identity is 2", tr_id <= tol, tr_id, Mode::Float));
            for (k, a) in basis[1..].iter().enumerate() {
                let t = qubit_trace(psi, a)?.norm();
                report.push(Entry::check(format!("trace of a{} vanishes", k + 1), t <= tol, t, Mode::Float));
            }
            rep
        }
        StateInput::Vector(psi) => gns_rep_general(psi)?,
        StateInput::Density(rho) => gns_rep_general(rho)?,
    };
    report.push(homomorphism_entry(&rep, tol.max(1e-10))?.with_note(format!(
        "dimension {}, irreducible {}",
        rep.dim(),
        rep.is_irreducible()
    )));
    Ok(Outcome { report, extra: Some(("representation", rep_json(&rep))) })
}

fn gate_entry(r: &GateReport, tol: f64) -> Entry {
    let mut note = format!("fidelity {:.15}, leakage {:.3e}, phase {:.6}, {} components", r.fidelity, r.leakage, r.phase, r.components);
    if let Some(a) = &r.alternative {
        note.push_str(&format!("; alternative {} has fidelity {:.6}", a.label, a.fidelity));
    }
    Entry::check(format!("gate {}", r.gate), r.passes(tol), (1.0 - r.fidelity).abs().max(r.leakage), Mode::Float)
        .with_note(note)
}

fn optics_verify(name: &str, phi: Option<f64>, cli: &Cli) -> Result<Outcome> {
    let gate = Gate::from_name(name, phi)?;
    let r = optics::verify_gate(gate, cli.l_max)?;
    let tol = cli.tolerance.max(1e-10);
    let mut report = Report::new(format!("optics gate {}", r.gate));
    report.push(gate_entry(&r, tol));
    Ok(Outcome { report, extra: Some(("gate", serde_json::to_value(&r)?)) })
}

fn simulate(circuit: &Path, input: &Path, tol: f64) -> Result<Outcome> {
    let c = OpticalCircuit::from_json(&read(circuit)?).with_context(|| format!("in {}", circuit.display()))?;
    let v = optics::state_from_json(&c.space, &read(input)?).with_context(|| format!("in {}", input.display()))?;
    let out = c.apply(&v)?;
    let lost = (v.norm_squared() - out.norm_squared()).abs();
    let mut report = Report::new(format!("simulate {} stages", c.stages.len()));
    report.push(
        Entry::check("norm preserved", lost <= tol.max(1e-10), lost, Mode::Float)
            .with_note("amplitude pushed past the window edge is dropped"),
    );
    Ok(Outcome { report, extra: Some(("output", optics::state_to_json(&c.space, &out, 1e-14))) })
}

fn render(outcome: Outcome, format: Format) -> Result<String> {
    let report = outcome.report.sorted();
    Ok(match format {
        Format::Text => {
            let mut s = report.to_string();
            if let Some((key, value)) = &outcome.extra {
                s.push_str(&format!("\n{key}: {}", serde_json::to_string(value)?));
            }
            s
        }
        Format::Json => {
            let mut v = serde_json::to_value(&report)?;
            v["all_pass"] = json!(report.all_pass());
            if let Some((key, value)) = outcome.extra {
                v[key] = value;
            }
            serde_json::to_string_pretty(&v)?
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| {
        let pass = o.report.all_pass();
        let text = render(o, cli.format)?;
        match &cli.output {
            Some(p) => fs::write(p, text + "\n").with_context(|| format!("cannot write {}", p.display()))?,
            None => {
                let mut out = std::io::stdout().lock();
                if let Err(e) = writeln!(out, "{text}") {
                    if e.kind() != std::io::ErrorKind::BrokenPipe {
                        return Err(e.into());
                    }
                }
            }
        }
        Ok(pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
