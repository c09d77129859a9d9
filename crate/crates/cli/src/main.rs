mod args;
mod report;

use std::fs;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use args::{AnalyzeArgs, Cli, Command, FamilyArg, Format, OutputArgs, RunArgs, MAX_FIVE_LEVELS, MAX_THREE_LEVELS};
use qeccat::reference::reproduce_published_examples;
use qeccat::{classify, plan, realized_fidelity_report, Error, Family, NoiseSpec, QubitChannel};
use report::{Analysis, CompareOutput, FamilyRun, NoiseInfo, PlanOutput, ReproduceOutput};

/// Bad arguments, unreadable or malformed input.
const EXIT_CONFIG: u8 = 2;
/// The noise does not describe a CPTP map.
const EXIT_NOT_CPTP: u8 = 3;
/// `reproduce` found a value outside tolerance.
const EXIT_MISMATCH: u8 = 1;

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn config(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_CONFIG,
            error: error.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NegativeProbability(_)
            | Error::NotNormalized(_)
            | Error::NotHermitian(_)
            | Error::NotTracePreserving(_)
            | Error::NotCompletelyPositive(_)
            | Error::InvalidChannel(_) => EXIT_NOT_CPTP,
            _ => EXIT_CONFIG,
        };
        Failure {
            code,
            error: e.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Analyze(a) => analyze(&a).map(|_| 0),
        Command::Plan(a) => plan_cmd(&a).map(|_| 0),
        Command::Compare(a) => compare(&a).map(|_| 0),
        Command::Reproduce(o) => reproduce(&o),
    }
}

struct Noise {
    info: NoiseInfo,
    channel: QubitChannel,
}

/// Reads inline JSON (anything starting with `{`) or a JSON file.
fn load_noise(arg: &str) -> Result<Noise, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg)
            .with_context(|| format!("reading noise file {arg}"))
            .map_err(Failure::config)?
    };
    let spec = NoiseSpec::from_json(&text)?;
    let resolved = spec.resolve::<f64>()?;
    Ok(Noise {
        info: NoiseInfo {
            spec,
            gamma: resolved.gamma,
        },
        channel: resolved.channel,
    })
}

fn emit(output: &OutputArgs, text: String) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::config),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<S: serde::Serialize>(value: &S) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(Failure::config)?;
    s.push('\n');
    Ok(s)
}

fn rendered(r: anyhow::Result<String>) -> Result<String, Failure> {
    r.map_err(Failure::config)
}

fn analyze(a: &AnalyzeArgs) -> Result<(), Failure> {
    let noise = load_noise(&a.noise)?;
    let ch = &noise.channel;
    let projection = ch.pauli_projection();
    let scores = ch.similarity();
    let analysis = Analysis {
        kraus_operators: ch.kraus_count(),
        canonical_kraus_rank: ch.canonicalize()?.kraus_count(),
        tp_deviation: ch.tp_deviation(),
        scores,
        pauli_projection: projection.mixture,
        lossless_pauli: projection.lossless,
        chosen_protocol: classify(&scores),
        noise: noise.info,
    };
    let text = match a.output.format {
        Format::Json => json(&analysis)?,
        Format::Csv => rendered(analysis.csv())?,
        Format::Pretty => rendered(analysis.pretty())?,
    };
    emit(&a.output, text)
}

fn check_levels(levels: usize, max: usize, family: Family) -> Result<(), Failure> {
    if levels == 0 {
        return Err(Error::ZeroLevels.into());
    }
    if levels > max {
        return Err(Failure::config(anyhow::anyhow!(
            "{family} supports at most {max} levels, got {levels}"
        )));
    }
    Ok(())
}

fn family_run(ch: &QubitChannel, levels: usize, family: Family, r: f64) -> Result<FamilyRun, Failure> {
    let max = match family {
        Family::ThreeQubit => MAX_THREE_LEVELS,
        Family::FiveQubit => MAX_FIVE_LEVELS,
    };
    check_levels(levels, max, family)?;
    let p = plan(ch, levels, family)?;
    let report = realized_fidelity_report(&p, r)?;
    Ok(FamilyRun::new(&p, &report)?)
}

fn plan_cmd(a: &RunArgs) -> Result<(), Failure> {
    let noise = load_noise(&a.noise)?;
    let families: &[Family] = match a.family {
        FamilyArg::Three => &[Family::ThreeQubit],
        FamilyArg::Five => &[Family::FiveQubit],
        FamilyArg::Both => &[Family::ThreeQubit, Family::FiveQubit],
    };
    let plans = families
        .iter()
        .map(|&family| {
            let levels = match family {
                Family::ThreeQubit => a.three_levels(),
                Family::FiveQubit => a.five_levels(),
            };
            family_run(&noise.channel, levels, family, a.gate_accuracy)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let out = PlanOutput {
        noise: noise.info,
        gate_accuracy: a.gate_accuracy,
        plans,
    };
    let text = match a.output.format {
        Format::Json => json(&out)?,
        Format::Csv => out.csv(),
        Format::Pretty => rendered(out.pretty())?,
    };
    emit(&a.output, text)
}

fn compare(a: &RunArgs) -> Result<(), Failure> {
    if a.family != FamilyArg::Both {
        return Err(Failure::config(anyhow::anyhow!("compare needs --family both")));
    }
    let noise = load_noise(&a.noise)?;
    let three = family_run(&noise.channel, a.three_levels(), Family::ThreeQubit, a.gate_accuracy)?;
    let five = family_run(&noise.channel, a.five_levels(), Family::FiveQubit, a.gate_accuracy)?;
    let out = CompareOutput::new(noise.info, a.gate_accuracy, three, five);
    let text = match a.output.format {
        Format::Json => json(&out)?,
        Format::Csv => rendered(out.csv())?,
        Format::Pretty => rendered(out.pretty())?,
    };
    emit(&a.output, text)
}

fn reproduce(o: &OutputArgs) -> Result<u8, Failure> {
    let checks = reproduce_published_examples()?;
    let out = ReproduceOutput {
        all_pass: checks.iter().all(|c| c.pass),
        checks,
    };
    let text = match o.format {
        Format::Json => json(&out)?,
        Format::Csv => rendered(out.csv())?,
        Format::Pretty => out.pretty(),
    };
    emit(o, text)?;
    Ok(if out.all_pass { 0 } else { EXIT_MISMATCH })
}
