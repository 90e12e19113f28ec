//! The coin-toss game: head is choice 0, tail is choice 1.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use rand::Rng;
use serde::Serialize;

use qbc_core::protocol::{ElementChoice, Frame, Message, Parent, Session, VerificationResult};
use qbc_core::rng::{stream, ALICE_STREAM, BOB_STREAM};
use qbc_core::SharedScheme;

use crate::script::Script;

/// Stream for a random toss, apart from the endpoint streams.
const TOSS_STREAM: u64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Face {
    Head,
    Tail,
}

impl Face {
    pub fn choice(self) -> usize {
        match self {
            Face::Head => 0,
            Face::Tail => 1,
        }
    }

    pub fn from_choice(c: usize) -> Self {
        if c == 0 {
            Face::Head
        } else {
            Face::Tail
        }
    }

    pub fn other(self) -> Self {
        Self::from_choice(1 - self.choice())
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Face::Head => "head",
            Face::Tail => "tail",
        })
    }
}

impl FromStr for Face {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "head" | "heads" | "h" => Ok(Face::Head),
            "tail" | "tails" | "t" => Ok(Face::Tail),
            other => bail!("expected head or tail, got {other:?}"),
        }
    }
}

/// Source of the players' moves.
pub trait Moves {
    /// `None` tosses a seeded random coin.
    fn toss(&mut self) -> Result<Option<Face>>;
    fn element(&mut self) -> Result<ElementChoice>;
    fn guess(&mut self) -> Result<Face>;
    /// The face Alice claims at reveal time.
    fn reveal(&mut self, toss: Face) -> Result<Face>;
}

/// Moves read from a script file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScriptedMoves {
    pub toss: Option<Face>,
    pub element: ElementChoice,
    pub guess: Face,
    pub reveal: Option<Face>,
    pub cheat: bool,
}

impl ScriptedMoves {
    /// Keys: `toss` (head|tail|random), `guess`, optional `reveal`,
    /// `cheat` (true reveals the other face) and `element`.
    pub fn from_script(script: &Script) -> Result<Self> {
        script.check_keys(&["toss", "guess", "reveal", "cheat", "element"])?;
        let toss = match script.get("toss").ok_or_else(|| anyhow!("missing toss"))? {
            "random" => None,
            face => Some(face.parse()?),
        };
        let guess = script
            .get("guess")
            .ok_or_else(|| anyhow!("missing guess"))?
            .parse()?;
        let reveal = script.get("reveal").map(str::parse).transpose()?;
        let cheat = match script.get("cheat") {
            None | Some("false") | Some("no") => false,
            Some("true") | Some("yes") => true,
            Some(other) => bail!("cheat must be true or false, got {other:?}"),
        };
        if cheat && reveal.is_some() {
            bail!("give either reveal or cheat, not both");
        }
        let element = parse_element(script.get("element"))?;
        Ok(Self {
            toss,
            element,
            guess,
            reveal,
            cheat,
        })
    }
}

pub(crate) fn parse_element(value: Option<&str>) -> Result<ElementChoice> {
    Ok(match value {
        None | Some("random") => ElementChoice::Random,
        Some(k) => ElementChoice::Fixed(k.parse().with_context(|| format!("bad element {k:?}"))?),
    })
}

impl Moves for ScriptedMoves {
    fn toss(&mut self) -> Result<Option<Face>> {
        Ok(self.toss)
    }

    fn element(&mut self) -> Result<ElementChoice> {
        Ok(self.element)
    }

    fn guess(&mut self) -> Result<Face> {
        Ok(self.guess)
    }

    fn reveal(&mut self, toss: Face) -> Result<Face> {
        Ok(match (self.reveal, self.cheat) {
            (Some(face), _) => face,
            (None, true) => toss.other(),
            (None, false) => toss,
        })
    }
}

/// Terminal prompts.
pub struct Interactive<R, W> {
    input: R,
    prompt: W,
}

impl<R: BufRead, W: Write> Interactive<R, W> {
    pub fn new(input: R, prompt: W) -> Self {
        Self { input, prompt }
    }

    fn ask(&mut self, question: &str) -> Result<String> {
        write!(self.prompt, "{question} ")?;
        self.prompt.flush()?;
        let mut line = String::new();
        if self.input.read_line(&mut line)? == 0 {
            bail!("input ended before: {question}");
        }
        Ok(line.trim().to_owned())
    }
}

impl<R: BufRead, W: Write> Moves for Interactive<R, W> {
    fn toss(&mut self) -> Result<Option<Face>> {
        let answer = self.ask("Alice, toss the coin (head/tail/random):")?;
        if answer.eq_ignore_ascii_case("random") || answer.is_empty() {
            return Ok(None);
        }
        answer.parse().map(Some)
    }

    fn element(&mut self) -> Result<ElementChoice> {
        Ok(ElementChoice::Random)
    }

    fn guess(&mut self) -> Result<Face> {
        self.ask("Bob, your guess (head/tail):")?.parse()
    }

    fn reveal(&mut self, toss: Face) -> Result<Face> {
        let answer = self.ask(&format!("Alice, reveal {toss} honestly? (y/n):"))?;
        match answer.to_ascii_lowercase().as_str() {
            "" | "y" | "yes" => Ok(toss),
            "n" | "no" => Ok(toss.other()),
            other => bail!("expected y or n, got {other:?}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoinTossOutcome {
    pub seed: u64,
    pub toss: Face,
    pub element: usize,
    pub guess: Face,
    pub revealed: Face,
    pub verification: VerificationResult,
    /// The agreed product state matching the outcome, if it is one.
    pub measured_product: Option<String>,
    pub bob_wins: bool,
    pub transcript: Vec<String>,
}

/// Plays one game, logging each phase to `log` as it happens.
pub fn play(
    scheme: &SharedScheme,
    moves: &mut dyn Moves,
    seed: u64,
    log: &mut dyn Write,
) -> Result<CoinTossOutcome> {
    if scheme.num_choices() != 2 {
        bail!("the coin toss needs N=1, got N={}", scheme.n());
    }
    let mut alice_rng = stream(seed, ALICE_STREAM);
    let mut bob_rng = stream(seed, BOB_STREAM);
    let hash = scheme.scheme_hash().to_owned();
    let mut transcript = Vec::new();
    let mut wire = |m: &Message| transcript.push(Frame::new(hash.clone(), m.clone()).encode());

    let toss = match moves.toss()? {
        Some(face) => face,
        None => Face::from_choice(stream(seed, TOSS_STREAM).gen_range(0..2)),
    };
    let element = moves.element()?;
    let mut alice = Session::new(scheme.clone());
    let mut bob = Session::new(scheme.clone());

    let commit = alice.alice_commit(toss.choice(), element, Parent::B, &mut alice_rng)?;
    bob.receive_commit(&commit)?;
    wire(&commit);
    writeln!(
        log,
        "[commit] Alice sends a {}-qubit state from the set for her toss",
        scheme.params().alice_qubits()
    )?;

    let guess = moves.guess()?;
    let msg = bob.bob_guess(guess.choice())?;
    alice.receive_guess(&msg)?;
    wire(&msg);
    writeln!(log, "[guess] Bob guesses {guess}")?;

    let revealed = moves.reveal(toss)?;
    let msg = alice.alice_reveal_claiming(revealed.choice())?;
    bob.receive_reveal(&msg)?;
    wire(&msg);
    writeln!(log, "[reveal] Alice reveals {revealed}")?;

    let (verdict, result) = bob.bob_verify(&mut bob_rng)?;
    alice.receive_verdict(&verdict)?;
    wire(&verdict);
    let reveal_basis = scheme.agreement().basis(revealed.choice());
    let measured_product = result
        .recovered_element
        .map(|k| reveal_basis.valid_products[k].ket_string());
    match &measured_product {
        Some(ket) => writeln!(
            log,
            "[verdict] accepted: outcome {} is the agreed product {ket}",
            result.outcome_index
        )?,
        None => writeln!(
            log,
            "[verdict] rejected: outcome {} lies outside the agreed products for {revealed}",
            result.outcome_index
        )?,
    }

    let bob_wins = result.accepted && guess == revealed;
    Ok(CoinTossOutcome {
        seed,
        toss,
        element: alice.alice_private().map_or(0, |p| p.element),
        guess,
        revealed,
        verification: result,
        measured_product,
        bob_wins,
        transcript,
    })
}

pub fn result_line(outcome: &CoinTossOutcome) -> String {
    if !outcome.verification.accepted {
        return "Bob does not win: the reveal failed verification".into();
    }
    if outcome.bob_wins {
        format!("Bob wins: he guessed {} and the coin showed {}", outcome.guess, outcome.revealed)
    } else {
        format!("Bob loses: he guessed {} but the coin showed {}", outcome.guess, outcome.revealed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qbc_core::{CommitmentScheme, SchemeParams};

    fn coin_toss() -> SharedScheme {
        CommitmentScheme::shared(SchemeParams::paper_cointoss()).unwrap()
    }

    fn moves(text: &str) -> ScriptedMoves {
        ScriptedMoves::from_script(&Script::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn honest_head_guessed_tail() {
        let mut m = moves("toss=head\nguess=tail");
        let out = play(&coin_toss(), &mut m, 1, &mut Vec::new()).unwrap();
        assert!(out.verification.accepted);
        assert!(!out.bob_wins);
        assert_eq!(out.revealed, Face::Head);
        assert!(result_line(&out).starts_with("Bob loses"));
    }

    #[test]
    fn phases_are_logged_in_order() {
        let mut m = moves("toss=tail\nguess=tail\nelement=1");
        let mut log = Vec::new();
        let out = play(&coin_toss(), &mut m, 3, &mut log).unwrap();
        assert!(out.bob_wins);
        let log = String::from_utf8(log).unwrap();
        let tags: Vec<&str> = log.lines().map(|l| l.split(']').next().unwrap()).collect();
        assert_eq!(tags, ["[commit", "[guess", "[reveal", "[verdict"]);
        assert_eq!(out.transcript.len(), 4);
    }

    #[test]
    fn script_errors() {
        let parse = |t: &str| ScriptedMoves::from_script(&Script::parse(t).unwrap());
        assert!(parse("guess=tail").is_err());
        assert!(parse("toss=edge\nguess=tail").is_err());
        assert!(parse("toss=head\nguess=tail\ncheat=true\nreveal=tail").is_err());
        assert!(parse("toss=head\nguess=tail\nelement=x").is_err());
    }

    #[test]
    fn wrong_scheme_size() {
        let s = CommitmentScheme::shared(SchemeParams::default_masks(2).unwrap()).unwrap();
        let mut m = moves("toss=head\nguess=tail");
        assert!(play(&s, &mut m, 0, &mut Vec::new()).is_err());
    }
}
