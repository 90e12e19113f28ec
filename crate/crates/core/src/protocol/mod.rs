//! Two-party commit / guess / reveal / verify sessions.
//!
//! Wire frames are single-line JSON objects:
//! `{"v":1,"kind":...,"scheme_hash":...,<payload>}`. A session opens with a
//! `hello` exchange carrying each side's scheme hash, followed by exactly
//! four protocol frames: commit, guess, reveal, verdict.

mod message;
mod runner;
mod session;
mod transport;

pub use message::{decode_message, encode_message, Frame, Message, Parent, Role, WIRE_VERSION};
pub use runner::{
    run_alice, run_blocks, run_bob, run_session, write_transcript, AliceScript, BobScript,
    EndpointOutcome, SessionRecord, TransportMode,
};
pub use session::{
    acceptance_probability, alice_commit, verify_held, AlicePrivate, ElementChoice, Phase,
    Session, VerificationResult,
};
pub use transport::{in_process_pair, InProcTransport, TcpTransport, Transport};
