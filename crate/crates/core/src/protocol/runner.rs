use std::net::TcpListener;
use std::path::Path;
use std::thread;

use crate::error::ProtocolError;
use crate::protocol::{
    in_process_pair, ElementChoice, Frame, Message, Parent, Role, Session, TcpTransport,
    Transport, VerificationResult,
};
use crate::rng::{derive_seed, stream, ALICE_STREAM, BOB_STREAM};
use crate::scheme::SharedScheme;

/// Alice's moves for one session.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AliceScript {
    pub choice: usize,
    pub element: ElementChoice,
    pub parent: Parent,
    /// Reveal this choice instead of the committed one.
    pub claim: Option<usize>,
}

impl AliceScript {
    pub fn honest(choice: usize) -> Self {
        Self {
            choice,
            element: ElementChoice::Random,
            parent: Parent::B,
            claim: None,
        }
    }

    pub fn cheating(choice: usize, claim: usize) -> Self {
        Self {
            claim: Some(claim),
            ..Self::honest(choice)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BobScript {
    pub guess: usize,
}

/// How the two endpoints talk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransportMode {
    InProcess,
    /// TCP over 127.0.0.1; port 0 picks an ephemeral port.
    Loopback { port: u16 },
}

/// An endpoint's view after the session ends.
#[derive(Debug)]
pub struct EndpointOutcome {
    /// Every frame sent or received, in order, verbatim.
    pub frames: Vec<String>,
    pub session: Session,
}

/// Both endpoints' combined record.
#[derive(Debug)]
pub struct SessionRecord {
    pub transcript: Vec<String>,
    pub result: VerificationResult,
    pub alice: Session,
    pub bob: Session,
}

impl SessionRecord {
    pub fn transcript_text(&self) -> String {
        self.transcript.concat()
    }
}

struct Wire<'a, T: Transport + ?Sized> {
    transport: &'a mut T,
    hash: String,
    frames: Vec<String>,
}

impl<'a, T: Transport + ?Sized> Wire<'a, T> {
    fn new(transport: &'a mut T, hash: &str) -> Self {
        Self {
            transport,
            hash: hash.to_owned(),
            frames: Vec::new(),
        }
    }

    fn send(&mut self, message: Message) -> Result<(), ProtocolError> {
        let line = Frame::new(self.hash.clone(), message).encode();
        self.transport.send(&line)?;
        self.frames.push(line);
        Ok(())
    }

    fn recv(&mut self) -> Result<Message, ProtocolError> {
        let line = self.transport.recv()?;
        let frame = Frame::decode(line.as_bytes())?;
        self.frames.push(line);
        if frame.scheme_hash != self.hash {
            return Err(ProtocolError::SchemeMismatch {
                local: self.hash.clone(),
                remote: frame.scheme_hash,
            });
        }
        Ok(frame.message)
    }

    /// Receives a hello and compares hashes without failing inside `recv`.
    fn recv_hello(&mut self) -> Result<String, ProtocolError> {
        let line = self.transport.recv()?;
        let frame = Frame::decode(line.as_bytes())?;
        self.frames.push(line);
        match frame.message {
            Message::Hello { .. } => Ok(frame.scheme_hash),
            other => Err(ProtocolError::UnexpectedMessage {
                expected: "hello",
                got: other.kind().to_owned(),
            }),
        }
    }

    fn check_remote(&self, remote: String) -> Result<(), ProtocolError> {
        if remote != self.hash {
            return Err(ProtocolError::SchemeMismatch {
                local: self.hash.clone(),
                remote,
            });
        }
        Ok(())
    }
}

/// Runs Alice's side: hello, commit, await guess, reveal, await verdict.
pub fn run_alice<T: Transport + ?Sized>(
    transport: &mut T,
    scheme: SharedScheme,
    script: AliceScript,
    seed: u64,
) -> Result<EndpointOutcome, ProtocolError> {
    let mut rng = stream(seed, ALICE_STREAM);
    let mut wire = Wire::new(transport, scheme.scheme_hash());
    wire.send(Message::Hello {
        role: Role::Alice,
        n: scheme.n(),
    })?;
    let remote = wire.recv_hello()?;
    wire.check_remote(remote)?;

    let mut session = Session::new(scheme);
    let commit = session.alice_commit(script.choice, script.element, script.parent, &mut rng)?;
    wire.send(commit)?;
    let guess = wire.recv()?;
    session.receive_guess(&guess)?;
    let reveal = match script.claim {
        Some(claim) => session.alice_reveal_claiming(claim)?,
        None => session.alice_reveal()?,
    };
    wire.send(reveal)?;
    let verdict = wire.recv()?;
    session.receive_verdict(&verdict)?;
    Ok(EndpointOutcome {
        frames: wire.frames,
        session,
    })
}

/// Runs Bob's side: answer hello, receive commit, guess, receive reveal,
/// verify and send the verdict.
pub fn run_bob<T: Transport + ?Sized>(
    transport: &mut T,
    scheme: SharedScheme,
    script: BobScript,
    seed: u64,
) -> Result<EndpointOutcome, ProtocolError> {
    let mut rng = stream(seed, BOB_STREAM);
    let mut wire = Wire::new(transport, scheme.scheme_hash());
    let remote = wire.recv_hello()?;
    // answer even on mismatch so Alice learns why the handshake failed
    wire.send(Message::Hello {
        role: Role::Bob,
        n: scheme.n(),
    })?;
    wire.check_remote(remote)?;

    let mut session = Session::new(scheme);
    let commit = wire.recv()?;
    session.receive_commit(&commit)?;
    let guess = session.bob_guess(script.guess)?;
    wire.send(guess)?;
    let reveal = wire.recv()?;
    session.receive_reveal(&reveal)?;
    let (verdict, _) = session.bob_verify(&mut rng)?;
    wire.send(verdict)?;
    Ok(EndpointOutcome {
        frames: wire.frames,
        session,
    })
}

/// Runs both endpoints on separate threads over the chosen transport.
///
/// Each side configures its own scheme; a hash mismatch aborts at the
/// handshake.
pub fn run_session(
    mode: TransportMode,
    alice_scheme: SharedScheme,
    bob_scheme: SharedScheme,
    alice: AliceScript,
    bob: BobScript,
    seed: u64,
) -> Result<SessionRecord, ProtocolError> {
    let (alice_out, bob_out) = match mode {
        TransportMode::InProcess => {
            let (mut a, mut b) = in_process_pair();
            let bob_thread = thread::spawn(move || run_bob(&mut b, bob_scheme, bob, seed));
            let alice_res = run_alice(&mut a, alice_scheme, alice, seed);
            drop(a);
            (alice_res, join(bob_thread)?)
        }
        TransportMode::Loopback { port } => {
            let listener = TcpListener::bind(("127.0.0.1", port))?;
            let addr = listener.local_addr()?;
            let bob_thread = thread::spawn(move || {
                let (stream, _) = listener.accept()?;
                let mut t = TcpTransport::from_stream(stream)?;
                run_bob(&mut t, bob_scheme, bob, seed)
            });
            let alice_res = TcpTransport::connect(addr)
                .and_then(|mut t| run_alice(&mut t, alice_scheme, alice, seed));
            (alice_res, join(bob_thread)?)
        }
    };
    let (alice_out, bob_out) = match (alice_out, bob_out) {
        (Ok(a), Ok(b)) => (a, b),
        // a handshake mismatch is the root cause when both sides fail
        (Err(e @ ProtocolError::SchemeMismatch { .. }), _)
        | (_, Err(e @ ProtocolError::SchemeMismatch { .. })) => return Err(e),
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    if alice_out.frames != bob_out.frames {
        return Err(ProtocolError::Transport(
            "endpoints disagree on the transcript".into(),
        ));
    }
    let result = *bob_out
        .session
        .result()
        .expect("completed session has a verdict");
    Ok(SessionRecord {
        transcript: bob_out.frames,
        result,
        alice: alice_out.session,
        bob: bob_out.session,
    })
}

fn join(
    handle: thread::JoinHandle<Result<EndpointOutcome, ProtocolError>>,
) -> Result<Result<EndpointOutcome, ProtocolError>, ProtocolError> {
    handle
        .join()
        .map_err(|_| ProtocolError::Transport("endpoint thread panicked".into()))
}

/// Runs one independent session per block, each seeded from `seed` and its
/// block index. The logical commitment stands only if every block verifies.
pub fn run_blocks(
    mode: TransportMode,
    scheme: SharedScheme,
    blocks: &[AliceScript],
    bob: BobScript,
    seed: u64,
) -> Result<Vec<SessionRecord>, ProtocolError> {
    blocks
        .iter()
        .enumerate()
        .map(|(b, script)| {
            run_session(
                mode,
                scheme.clone(),
                scheme.clone(),
                *script,
                bob,
                derive_seed(seed, b as u64),
            )
        })
        .collect()
}

/// Writes frames verbatim, one per line.
pub fn write_transcript(path: impl AsRef<Path>, frames: &[String]) -> std::io::Result<()> {
    std::fs::write(path, frames.concat())
}
