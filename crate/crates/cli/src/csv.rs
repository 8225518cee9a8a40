use std::fmt::Write as _;
use std::io::{self, Write};

use sha2::{Digest, Sha256};

/// CSV table with `#` metadata lines, written in one piece.
#[derive(Debug, Default)]
pub struct Table {
    meta: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        let mut t = Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        };
        t.meta(
            "generator",
            &format!("vibresp {}", env!("CARGO_PKG_VERSION")),
        );
        t
    }

    pub fn with_header(header: Vec<String>) -> Self {
        let mut t = Self::new(&[]);
        t.header = header;
        t
    }

    pub fn meta(&mut self, key: &str, value: &str) {
        self.meta.push(format!("{key}: {value}"));
    }

    pub fn push(&mut self, row: Vec<f64>) {
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for m in &self.meta {
            let _ = writeln!(s, "# {m}");
        }
        let _ = writeln!(s, "{}", self.header.join(","));
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:.16e}")).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }

    pub fn write_to(&self, path: Option<&std::path::Path>) -> io::Result<()> {
        let text = self.render();
        match path {
            Some(p) => std::fs::write(p, text),
            None => io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}
