use std::io::{self, Write};
use std::net::{TcpListener, TcpStream};
use std::path::Path;
use std::thread;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;

use qbc_core::analysis::{run_analysis, AnalysisConfig};
use qbc_core::protocol::{
    run_alice, run_bob, write_transcript, AliceScript, BobScript, Parent, TcpTransport,
};
use qbc_core::scheme::{audit_params, SchemeAudit};
use qbc_core::{CommitmentScheme, SharedScheme};

use crate::args::{Cli, RoleArg, RunConfig, TransportChoice};
use crate::cointoss::{self, parse_element, Face, Interactive, ScriptedMoves};
use crate::script::Script;

pub const EXIT_OK: i32 = 0;
/// A check failed or a reveal was rejected.
pub const EXIT_FAILED: i32 = 1;
/// Bad input, I/O or protocol errors.
pub const EXIT_ERROR: i32 = 2;

/// How long an Alice endpoint keeps retrying the connection.
const CONNECT_WINDOW: Duration = Duration::from_secs(10);

pub fn run(cli: &Cli) -> Result<i32> {
    let config = RunConfig::from_command(&cli.command);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match config.subcommand {
        "audit" => audit(&config, &mut out),
        "analyze" => analyze(&config, &mut out),
        "cointoss" => cointoss(&config, &mut out),
        "session" => session(&config, &mut out),
        other => unreachable!("unknown subcommand {other}"),
    }
}

fn shared(config: &RunConfig) -> Result<SharedScheme> {
    let params = config.params.clone().context("invalid scheme parameters")?;
    Ok(CommitmentScheme::shared(params)?)
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn audit(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let report: SchemeAudit = audit_params(config.params.clone());
    if let Some(path) = &config.out {
        write_json(path, &report)?;
    }
    if config.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        if let Some(n) = report.n {
            writeln!(out, "audit for N={n}")?;
        }
        for c in &report.checks {
            let tag = match (c.passed, c.informational) {
                (true, _) => "PASS",
                (false, true) => "INFO",
                (false, false) => "FAIL",
            };
            writeln!(out, "[{tag}] {}: {}", c.name, c.detail)?;
        }
        writeln!(out, "{}", if report.passed() { "all checks passed" } else { "audit failed" })?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
}

pub fn analyze(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let scheme = shared(config)?;
    let report = run_analysis(
        &scheme,
        &AnalysisConfig {
            seed: config.seed,
            trials: config.trials,
            ..Default::default()
        },
    )?;
    if let Some(path) = &config.out {
        std::fs::write(path, report.to_json() + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if config.json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        write!(out, "{}", report.render_table())?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
}

pub fn cointoss(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let scheme = shared(config)?;
    if !config.json {
        writeln!(
            out,
            "coin toss with {} (hash {}), seed {}",
            scheme.params().preset(),
            &scheme.scheme_hash()[..12],
            config.seed
        )?;
    }
    let mut sink = Vec::new();
    let log: &mut dyn Write = if config.json { &mut sink } else { out };
    let outcome = match &config.script {
        Some(path) => {
            let script = Script::read(path)?;
            let mut moves = ScriptedMoves::from_script(&script)
                .with_context(|| format!("malformed script {}", path.display()))?;
            cointoss::play(&scheme, &mut moves, config.seed, log)?
        }
        None => {
            let stdin = io::stdin();
            let mut moves = Interactive::new(stdin.lock(), io::stderr());
            cointoss::play(&scheme, &mut moves, config.seed, log)?
        }
    };
    if let Some(path) = &config.out {
        write_transcript(path, &outcome.transcript)?;
    }
    if config.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&outcome)?)?;
    } else {
        writeln!(out, "{}", cointoss::result_line(&outcome))?;
    }
    Ok(if outcome.verification.accepted { EXIT_OK } else { EXIT_FAILED })
}

fn alice_script(script: Option<&Script>) -> Result<AliceScript> {
    let Some(script) = script else {
        return Ok(AliceScript::honest(0));
    };
    script.check_keys(&["choice", "element", "parent", "claim"])?;
    let choice = parse_choice(script.get("choice").unwrap_or("0"))?;
    let parent: Parent = script.get("parent").unwrap_or("B").parse()?;
    Ok(AliceScript {
        choice,
        element: parse_element(script.get("element"))?,
        parent,
        claim: script.get("claim").map(parse_choice).transpose()?,
    })
}

fn bob_script(script: Option<&Script>) -> Result<BobScript> {
    let guess = match script {
        Some(s) => {
            s.check_keys(&["guess"])?;
            parse_choice(s.get("guess").unwrap_or("0"))?
        }
        None => 0,
    };
    Ok(BobScript { guess })
}

/// A choice index, or head/tail for the coin toss.
fn parse_choice(text: &str) -> Result<usize> {
    if let Ok(face) = text.parse::<Face>() {
        return Ok(face.choice());
    }
    text.parse()
        .map_err(|_| anyhow!("expected a choice index or head/tail, got {text:?}"))
}

#[derive(Serialize)]
struct SessionSummary<'a> {
    role: &'a str,
    seed: u64,
    accepted: bool,
    outcome: usize,
    element: Option<usize>,
    frames: usize,
}

pub fn session(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let scheme = shared(config)?;
    let TransportChoice::Tcp { port } = config.transport else {
        bail!("session needs a TCP port");
    };
    let script = config.script.as_deref().map(Script::read).transpose()?;
    let role = config.role.ok_or_else(|| anyhow!("missing --role"))?;
    let outcome = match role {
        RoleArg::Alice => {
            let moves = alice_script(script.as_ref())?;
            let mut transport = connect_with_retry(port)?;
            run_alice(&mut transport, scheme, moves, config.seed)?
        }
        RoleArg::Bob => {
            let moves = bob_script(script.as_ref())?;
            let listener = TcpListener::bind(("127.0.0.1", port))
                .with_context(|| format!("binding port {port}"))?;
            let (stream, _) = listener.accept()?;
            let mut transport = TcpTransport::from_stream(stream)?;
            run_bob(&mut transport, scheme, moves, config.seed)?
        }
    };
    let result = *outcome
        .session
        .result()
        .ok_or_else(|| anyhow!("session ended without a verdict"))?;
    if let Some(path) = &config.out {
        write_transcript(path, &outcome.frames)?;
    }
    let role_name = match role {
        RoleArg::Alice => "alice",
        RoleArg::Bob => "bob",
    };
    if config.json {
        let summary = SessionSummary {
            role: role_name,
            seed: config.seed,
            accepted: result.accepted,
            outcome: result.outcome_index,
            element: result.recovered_element,
            frames: outcome.frames.len(),
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?;
    } else {
        writeln!(
            out,
            "{role_name}: {} (outcome {}, {} frames)",
            if result.accepted { "verified" } else { "rejected" },
            result.outcome_index,
            outcome.frames.len()
        )?;
    }
    Ok(if result.accepted { EXIT_OK } else { EXIT_FAILED })
}

fn connect_with_retry(port: u16) -> Result<TcpTransport> {
    let start = Instant::now();
    loop {
        match TcpStream::connect(("127.0.0.1", port)) {
            Ok(stream) => return Ok(TcpTransport::from_stream(stream)?),
            Err(e) if start.elapsed() > CONNECT_WINDOW => {
                return Err(e).with_context(|| format!("connecting to 127.0.0.1:{port}"))
            }
            Err(_) => thread::sleep(Duration::from_millis(50)),
        }
    }
}
