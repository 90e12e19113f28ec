use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::ProtocolError;
use crate::quantum::StateVector;

pub const WIRE_VERSION: u64 = 1;

/// Which parent family Alice drew her state from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Parent {
    /// One of the commitment sets B_c.
    B,
    /// The computational set S of the reduced-qubit variant.
    S,
}

impl fmt::Display for Parent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parent::B => "B",
            Parent::S => "S",
        })
    }
}

impl FromStr for Parent {
    type Err = ProtocolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B" | "b" => Ok(Parent::B),
            "S" | "s" => Ok(Parent::S),
            other => Err(ProtocolError::Framing(format!("unknown parent {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Alice,
    Bob,
}

impl Role {
    fn as_str(self) -> &'static str {
        match self {
            Role::Alice => "alice",
            Role::Bob => "bob",
        }
    }
}

impl FromStr for Role {
    type Err = ProtocolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alice" => Ok(Role::Alice),
            "bob" => Ok(Role::Bob),
            other => Err(ProtocolError::Framing(format!("unknown role {other:?}"))),
        }
    }
}

/// Protocol messages.
///
/// `Commit` carries the full amplitude vector: in simulation the quantum
/// channel is modelled by shipping the state itself.
#[derive(Clone, Debug, PartialEq)]
pub enum Message {
    /// Handshake; carries nothing beyond the frame's scheme hash.
    Hello { role: Role, n: usize },
    Commit { state: StateVector },
    Guess { choice: usize },
    Reveal { choice: usize, parent: Parent },
    Verdict {
        accepted: bool,
        outcome: usize,
        element: Option<usize>,
    },
}

impl Message {
    pub fn kind(&self) -> &'static str {
        match self {
            Message::Hello { .. } => "hello",
            Message::Commit { .. } => "commit",
            Message::Guess { .. } => "guess",
            Message::Reveal { .. } => "reveal",
            Message::Verdict { .. } => "verdict",
        }
    }
}

/// A message stamped with the sender's scheme hash.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pub scheme_hash: String,
    pub message: Message,
}

impl Frame {
    pub fn new(scheme_hash: impl Into<String>, message: Message) -> Self {
        Self {
            scheme_hash: scheme_hash.into(),
            message,
        }
    }

    /// One JSON object terminated by `\n`. Keys appear as `v`, `kind`,
    /// `scheme_hash`, then the payload fields.
    pub fn encode(&self) -> String {
        let mut line = match &self.message {
            Message::Hello { role, n } => to_json(&HelloWire {
                v: WIRE_VERSION,
                kind: "hello",
                scheme_hash: &self.scheme_hash,
                role: role.as_str(),
                n: *n,
            }),
            Message::Commit { state } => to_json(&CommitWire {
                v: WIRE_VERSION,
                kind: "commit",
                scheme_hash: &self.scheme_hash,
                state: state.to_text(),
            }),
            Message::Guess { choice } => to_json(&GuessWire {
                v: WIRE_VERSION,
                kind: "guess",
                scheme_hash: &self.scheme_hash,
                choice: *choice,
            }),
            Message::Reveal { choice, parent } => to_json(&RevealWire {
                v: WIRE_VERSION,
                kind: "reveal",
                scheme_hash: &self.scheme_hash,
                choice: *choice,
                parent: match parent {
                    Parent::B => "B",
                    Parent::S => "S",
                },
            }),
            Message::Verdict {
                accepted,
                outcome,
                element,
            } => to_json(&VerdictWire {
                v: WIRE_VERSION,
                kind: "verdict",
                scheme_hash: &self.scheme_hash,
                accepted: *accepted,
                outcome: *outcome,
                element: *element,
            }),
        };
        line.push('\n');
        line
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, ProtocolError> {
        let text = std::str::from_utf8(bytes)
            .map_err(|e| ProtocolError::Framing(format!("frame is not UTF-8: {e}")))?;
        let text = text.strip_suffix('\n').unwrap_or(text);
        if text.contains('\n') {
            return Err(ProtocolError::Framing("frame spans several lines".into()));
        }
        let value: Value = serde_json::from_str(text)
            .map_err(|e| ProtocolError::Framing(format!("invalid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| ProtocolError::Framing("frame is not a JSON object".into()))?;
        let v = get_u64(obj, "v")?;
        if v != WIRE_VERSION {
            return Err(ProtocolError::Version(v));
        }
        let kind = get_str(obj, "kind")?;
        let scheme_hash = get_str(obj, "scheme_hash")?.to_owned();
        let message = match kind {
            "hello" => Message::Hello {
                role: get_str(obj, "role")?.parse()?,
                n: get_u64(obj, "n")? as usize,
            },
            "commit" => Message::Commit {
                state: StateVector::from_text(get_str(obj, "state")?)?,
            },
            "guess" => Message::Guess {
                choice: get_u64(obj, "choice")? as usize,
            },
            "reveal" => Message::Reveal {
                choice: get_u64(obj, "choice")? as usize,
                parent: get_str(obj, "parent")?.parse()?,
            },
            "verdict" => Message::Verdict {
                accepted: obj
                    .get("accepted")
                    .and_then(Value::as_bool)
                    .ok_or_else(|| missing("accepted"))?,
                outcome: get_u64(obj, "outcome")? as usize,
                element: match obj.get("element") {
                    None | Some(Value::Null) => None,
                    Some(v) => Some(v.as_u64().ok_or_else(|| missing("element"))? as usize),
                },
            },
            other => return Err(ProtocolError::Framing(format!("unknown kind {other:?}"))),
        };
        Ok(Frame {
            scheme_hash,
            message,
        })
    }
}

/// Encodes `message` as a wire frame.
pub fn encode_message(scheme_hash: &str, message: &Message) -> Vec<u8> {
    Frame::new(scheme_hash, message.clone()).encode().into_bytes()
}

pub fn decode_message(bytes: &[u8]) -> Result<Frame, ProtocolError> {
    Frame::decode(bytes)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("wire structs always serialize")
}

fn missing(field: &str) -> ProtocolError {
    ProtocolError::Framing(format!("missing or mistyped field {field:?}"))
}

fn get_str<'a>(obj: &'a Map<String, Value>, field: &str) -> Result<&'a str, ProtocolError> {
    obj.get(field)
        .and_then(Value::as_str)
        .ok_or_else(|| missing(field))
}

fn get_u64(obj: &Map<String, Value>, field: &str) -> Result<u64, ProtocolError> {
    obj.get(field)
        .and_then(Value::as_u64)
        .ok_or_else(|| missing(field))
}

#[derive(Serialize)]
struct HelloWire<'a> {
    v: u64,
    kind: &'a str,
    scheme_hash: &'a str,
    role: &'a str,
    n: usize,
}

#[derive(Serialize)]
struct CommitWire<'a> {
    v: u64,
    kind: &'a str,
    scheme_hash: &'a str,
    state: String,
}

#[derive(Serialize)]
struct GuessWire<'a> {
    v: u64,
    kind: &'a str,
    scheme_hash: &'a str,
    choice: usize,
}

#[derive(Serialize)]
struct RevealWire<'a> {
    v: u64,
    kind: &'a str,
    scheme_hash: &'a str,
    choice: usize,
    parent: &'a str,
}

#[derive(Serialize)]
struct VerdictWire<'a> {
    v: u64,
    kind: &'a str,
    scheme_hash: &'a str,
    accepted: bool,
    outcome: usize,
    element: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guess_round_trips_bit_exactly() {
        let f = Frame::new("abc", Message::Guess { choice: 1 });
        let wire = f.encode();
        assert_eq!(wire, "{\"v\":1,\"kind\":\"guess\",\"scheme_hash\":\"abc\",\"choice\":1}\n");
        assert_eq!(Frame::decode(wire.as_bytes()).unwrap(), f);
        assert_eq!(Frame::decode(wire.as_bytes()).unwrap().encode(), wire);
    }

    #[test]
    fn commit_payload_round_trips() {
        let state = StateVector::equal_superposition_pair("001", "110").unwrap();
        let wire = encode_message("h", &Message::Commit {
            state: state.clone(),
        });
        let back = decode_message(&wire).unwrap();
        match back.message {
            Message::Commit { state: s } => assert!(s.max_abs_diff(&state) < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn verdict_and_reveal_round_trip() {
        for m in [
            Message::Reveal {
                choice: 3,
                parent: Parent::S,
            },
            Message::Verdict {
                accepted: false,
                outcome: 7,
                element: None,
            },
            Message::Verdict {
                accepted: true,
                outcome: 1,
                element: Some(1),
            },
            Message::Hello {
                role: Role::Bob,
                n: 2,
            },
        ] {
            let f = Frame::new("x", m);
            assert_eq!(Frame::decode(f.encode().as_bytes()).unwrap(), f);
        }
    }

    #[test]
    fn truncated_frame_is_a_framing_error() {
        let wire = Frame::new("abc", Message::Guess { choice: 1 }).encode();
        let cut = &wire.as_bytes()[..wire.len() / 2];
        assert!(matches!(Frame::decode(cut), Err(ProtocolError::Framing(_))));
    }

    #[test]
    fn version_and_shape_errors() {
        let bad_v = b"{\"v\":2,\"kind\":\"guess\",\"scheme_hash\":\"a\",\"choice\":1}";
        assert!(matches!(Frame::decode(bad_v), Err(ProtocolError::Version(2))));
        let no_kind = b"{\"v\":1,\"scheme_hash\":\"a\"}";
        assert!(matches!(Frame::decode(no_kind), Err(ProtocolError::Framing(_))));
        let odd_kind = b"{\"v\":1,\"kind\":\"nope\",\"scheme_hash\":\"a\"}";
        assert!(matches!(Frame::decode(odd_kind), Err(ProtocolError::Framing(_))));
    }

    #[test]
    fn amplitude_count_mismatch_is_reported() {
        let frame = "{\"v\":1,\"kind\":\"commit\",\"scheme_hash\":\"a\",\"state\":\"qubits=2\\n1 0\\n0 0\\n\"}";
        assert!(matches!(
            Frame::decode(frame.as_bytes()),
            Err(ProtocolError::Quantum(crate::QuantumError::AmplitudeCount { .. }))
        ));
    }
}
