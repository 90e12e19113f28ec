use rand::Rng;
use serde::Serialize;

use crate::error::{ProtocolError, SchemeError};
use crate::protocol::{Message, Parent};
use crate::quantum::StateVector;
use crate::scheme::{CommitmentScheme, SetS, SharedScheme};

/// Session phases; transitions run strictly left to right and end in
/// `Verified` or `Rejected`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Phase {
    Init,
    Committed,
    Guessed,
    Revealed,
    Verified,
    Rejected,
}

/// What only Alice knows until the reveal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlicePrivate {
    pub choice: usize,
    pub element: usize,
    pub parent: Parent,
}

/// Element selection for a commit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementChoice {
    Fixed(usize),
    /// Uniform over the parent set's elements for the choice.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationResult {
    pub accepted: bool,
    pub outcome_index: usize,
    /// Element index recovered from the outcome; `None` on rejection.
    pub recovered_element: Option<usize>,
}

/// One commitment session as seen by a party (or by both, when driven
/// in-process). Alice's fields are empty on Bob's side and vice versa.
#[derive(Clone, Debug)]
pub struct Session {
    scheme: SharedScheme,
    phase: Phase,
    alice_private: Option<AlicePrivate>,
    bob_held: Option<StateVector>,
    guess: Option<usize>,
    revealed: Option<(usize, Parent)>,
    result: Option<VerificationResult>,
    transcript: Vec<Message>,
}

impl Session {
    pub fn new(scheme: SharedScheme) -> Self {
        Self {
            scheme,
            phase: Phase::Init,
            alice_private: None,
            bob_held: None,
            guess: None,
            revealed: None,
            result: None,
            transcript: Vec::new(),
        }
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn scheme(&self) -> &CommitmentScheme {
        &self.scheme
    }

    pub fn alice_private(&self) -> Option<&AlicePrivate> {
        self.alice_private.as_ref()
    }

    pub fn bob_held(&self) -> Option<&StateVector> {
        self.bob_held.as_ref()
    }

    pub fn guess(&self) -> Option<usize> {
        self.guess
    }

    pub fn revealed(&self) -> Option<(usize, Parent)> {
        self.revealed
    }

    pub fn result(&self) -> Option<&VerificationResult> {
        self.result.as_ref()
    }

    pub fn transcript(&self) -> &[Message] {
        &self.transcript
    }

    fn expect_phase(&self, want: Phase, op: &'static str) -> Result<(), ProtocolError> {
        if self.phase != want {
            return Err(ProtocolError::WrongPhase {
                op,
                phase: self.phase,
            });
        }
        Ok(())
    }

    fn record(&mut self, msg: &Message, next: Phase) {
        self.transcript.push(msg.clone());
        self.phase = next;
    }

    /// Alice picks element `element` of her parent set for `choice` and
    /// sends it.
    pub fn alice_commit<R: Rng + ?Sized>(
        &mut self,
        choice: usize,
        element: ElementChoice,
        parent: Parent,
        rng: &mut R,
    ) -> Result<Message, ProtocolError> {
        self.expect_phase(Phase::Init, "alice_commit")?;
        self.scheme.params().check_choice(choice)?;
        let (k, state) = match parent {
            Parent::B => {
                let len = self.scheme.set(choice).len();
                let k = match element {
                    ElementChoice::Fixed(k) => k,
                    ElementChoice::Random => rng.gen_range(0..len),
                };
                (k, self.scheme.element(choice, k)?.clone())
            }
            Parent::S => {
                if let ElementChoice::Fixed(k) = element {
                    if k != 0 {
                        return Err(SchemeError::ElementOutOfRange { index: k, len: 1 }.into());
                    }
                }
                (0, self.scheme.set_s().bound_state(choice).clone())
            }
        };
        self.alice_private = Some(AlicePrivate {
            choice,
            element: k,
            parent,
        });
        let msg = Message::Commit {
            state: state.clone(),
        };
        self.bob_held = Some(state);
        self.record(&msg, Phase::Committed);
        Ok(msg)
    }

    /// Bob stores the committed state.
    pub fn receive_commit(&mut self, msg: &Message) -> Result<(), ProtocolError> {
        self.expect_phase(Phase::Init, "receive_commit")?;
        let Message::Commit { state } = msg else {
            return Err(unexpected("commit", msg));
        };
        let want = self.scheme.params().alice_qubits();
        if state.num_qubits() != want {
            return Err(crate::QuantumError::DimensionMismatch {
                expected: 1 << want,
                actual: state.dimension(),
            }
            .into());
        }
        self.bob_held = Some(state.clone());
        self.record(msg, Phase::Committed);
        Ok(())
    }

    /// Bob announces his guess over the classical channel.
    pub fn bob_guess(&mut self, guess: usize) -> Result<Message, ProtocolError> {
        self.expect_phase(Phase::Committed, "bob_guess")?;
        self.scheme.params().check_choice(guess)?;
        self.guess = Some(guess);
        let msg = Message::Guess { choice: guess };
        self.record(&msg, Phase::Guessed);
        Ok(msg)
    }

    pub fn receive_guess(&mut self, msg: &Message) -> Result<(), ProtocolError> {
        self.expect_phase(Phase::Committed, "receive_guess")?;
        let Message::Guess { choice } = msg else {
            return Err(unexpected("guess", msg));
        };
        self.scheme.params().check_choice(*choice)?;
        self.guess = Some(*choice);
        self.record(msg, Phase::Guessed);
        Ok(())
    }

    /// Honest reveal of the committed choice and parent.
    pub fn alice_reveal(&mut self) -> Result<Message, ProtocolError> {
        self.expect_phase(Phase::Guessed, "alice_reveal")?;
        let private = self
            .alice_private
            .ok_or(ProtocolError::WrongPhase {
                op: "alice_reveal",
                phase: self.phase,
            })?;
        self.reveal_as(private.choice, private.parent)
    }

    /// Reveal claiming `claimed` regardless of what was committed.
    pub fn alice_reveal_claiming(&mut self, claimed: usize) -> Result<Message, ProtocolError> {
        self.expect_phase(Phase::Guessed, "alice_reveal")?;
        let parent = self.alice_private.map_or(Parent::B, |p| p.parent);
        self.scheme.params().check_choice(claimed)?;
        self.reveal_as(claimed, parent)
    }

    fn reveal_as(&mut self, choice: usize, parent: Parent) -> Result<Message, ProtocolError> {
        self.revealed = Some((choice, parent));
        let msg = Message::Reveal { choice, parent };
        self.record(&msg, Phase::Revealed);
        Ok(msg)
    }

    pub fn receive_reveal(&mut self, msg: &Message) -> Result<(), ProtocolError> {
        self.expect_phase(Phase::Guessed, "receive_reveal")?;
        let Message::Reveal { choice, parent } = msg else {
            return Err(unexpected("reveal", msg));
        };
        self.scheme.params().check_choice(*choice)?;
        self.revealed = Some((*choice, *parent));
        self.record(msg, Phase::Revealed);
        Ok(())
    }

    /// Bob checks the held state against the revealed choice.
    pub fn bob_verify<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
    ) -> Result<(Message, VerificationResult), ProtocolError> {
        self.expect_phase(Phase::Revealed, "bob_verify")?;
        let (choice, parent) = self.revealed.expect("revealed phase records the claim");
        let held = self.bob_held.as_ref().expect("committed phase stores the state");
        let result = verify_held(&self.scheme, held, choice, parent, rng)?;
        let msg = Message::Verdict {
            accepted: result.accepted,
            outcome: result.outcome_index,
            element: result.recovered_element,
        };
        self.result = Some(result);
        let next = if result.accepted {
            Phase::Verified
        } else {
            Phase::Rejected
        };
        self.record(&msg, next);
        Ok((msg, result))
    }

    pub fn receive_verdict(&mut self, msg: &Message) -> Result<VerificationResult, ProtocolError> {
        self.expect_phase(Phase::Revealed, "receive_verdict")?;
        let Message::Verdict {
            accepted,
            outcome,
            element,
        } = msg
        else {
            return Err(unexpected("verdict", msg));
        };
        let result = VerificationResult {
            accepted: *accepted,
            outcome_index: *outcome,
            recovered_element: *element,
        };
        self.result = Some(result);
        let next = if *accepted {
            Phase::Verified
        } else {
            Phase::Rejected
        };
        self.record(msg, next);
        Ok(result)
    }
}

fn unexpected(expected: &'static str, got: &Message) -> ProtocolError {
    ProtocolError::UnexpectedMessage {
        expected,
        got: got.kind().to_owned(),
    }
}

/// Starts a session with Alice's commit.
pub fn alice_commit<R: Rng + ?Sized>(
    scheme: SharedScheme,
    choice: usize,
    element: ElementChoice,
    parent: Parent,
    rng: &mut R,
) -> Result<(Session, Message), ProtocolError> {
    let mut session = Session::new(scheme);
    let msg = session.alice_commit(choice, element, parent, rng)?;
    Ok((session, msg))
}

/// Bob's verification measurement.
///
/// Parent B: measure `held ⊗ G_c` in the reveal basis for `c`; the outcome
/// index is the recovered element when valid. Parent S: measure `held` in
/// the computational basis and accept iff it lands on the state bound to `c`.
pub fn verify_held<R: Rng + ?Sized>(
    scheme: &CommitmentScheme,
    held: &StateVector,
    choice: usize,
    parent: Parent,
    rng: &mut R,
) -> Result<VerificationResult, ProtocolError> {
    scheme.params().check_choice(choice)?;
    Ok(match parent {
        Parent::B => {
            let product = held.tensor(scheme.reveal_state(choice));
            let basis = scheme.reveal_basis(choice);
            let outcome = basis.measure(&product, rng)?;
            let accepted = basis.is_valid(outcome);
            VerificationResult {
                accepted,
                outcome_index: outcome,
                recovered_element: accepted.then_some(outcome),
            }
        }
        Parent::S => {
            let outcome = scheme.computational_basis().measure(held, rng)?;
            let accepted = outcome == SetS::bound_index(choice);
            VerificationResult {
                accepted,
                outcome_index: outcome,
                recovered_element: accepted.then_some(0),
            }
        }
    })
}

/// Exact acceptance probability of [`verify_held`].
pub fn acceptance_probability(
    scheme: &CommitmentScheme,
    held: &StateVector,
    choice: usize,
    parent: Parent,
) -> Result<f64, ProtocolError> {
    scheme.params().check_choice(choice)?;
    Ok(match parent {
        Parent::B => {
            let product = held.tensor(scheme.reveal_state(choice));
            scheme.reveal_basis(choice).valid_mass(&product)?
        }
        Parent::S => {
            scheme.computational_basis().born_distribution(held)?[SetS::bound_index(choice)]
        }
    })
}
