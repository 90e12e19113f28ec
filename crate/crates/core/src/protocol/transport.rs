use std::io::{BufRead, BufReader, Write};
use std::net::{TcpStream, ToSocketAddrs};
use std::sync::mpsc::{channel, Receiver, Sender};

use crate::error::ProtocolError;

/// An ordered, exactly-once line transport between the two endpoints.
pub trait Transport: Send {
    /// Sends one encoded frame (including its trailing newline).
    fn send(&mut self, frame: &str) -> Result<(), ProtocolError>;
    /// Receives the next frame, including its trailing newline.
    fn recv(&mut self) -> Result<String, ProtocolError>;
}

/// One end of an in-process channel pair.
pub struct InProcTransport {
    tx: Sender<String>,
    rx: Receiver<String>,
}

pub fn in_process_pair() -> (InProcTransport, InProcTransport) {
    let (a_tx, b_rx) = channel();
    let (b_tx, a_rx) = channel();
    (
        InProcTransport { tx: a_tx, rx: a_rx },
        InProcTransport { tx: b_tx, rx: b_rx },
    )
}

impl Transport for InProcTransport {
    fn send(&mut self, frame: &str) -> Result<(), ProtocolError> {
        self.tx
            .send(frame.to_owned())
            .map_err(|_| ProtocolError::Transport("peer hung up".into()))
    }

    fn recv(&mut self) -> Result<String, ProtocolError> {
        self.rx
            .recv()
            .map_err(|_| ProtocolError::Transport("peer hung up".into()))
    }
}

/// Newline-delimited frames over TCP.
pub struct TcpTransport {
    reader: BufReader<TcpStream>,
    writer: TcpStream,
}

impl TcpTransport {
    pub fn from_stream(stream: TcpStream) -> Result<Self, ProtocolError> {
        stream.set_nodelay(true)?;
        let writer = stream.try_clone()?;
        Ok(Self {
            reader: BufReader::new(stream),
            writer,
        })
    }

    pub fn connect(addr: impl ToSocketAddrs) -> Result<Self, ProtocolError> {
        Self::from_stream(TcpStream::connect(addr)?)
    }
}

impl Transport for TcpTransport {
    fn send(&mut self, frame: &str) -> Result<(), ProtocolError> {
        self.writer.write_all(frame.as_bytes())?;
        self.writer.flush()?;
        Ok(())
    }

    fn recv(&mut self) -> Result<String, ProtocolError> {
        let mut line = String::new();
        let read = self.reader.read_line(&mut line)?;
        if read == 0 {
            return Err(ProtocolError::Transport("connection closed".into()));
        }
        if !line.ends_with('\n') {
            return Err(ProtocolError::Framing("truncated frame at end of stream".into()));
        }
        Ok(line)
    }
}
