use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Markdown,
    Csv,
}

#[derive(Serialize)]
struct Meta {
    tool: &'static str,
    version: &'static str,
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    meta: Meta,
    payload: &'a T,
}

/// Wraps a payload with tool metadata. Timing lives only in `meta`.
pub fn json<T: Serialize>(payload: &T, started: Instant) -> String {
    let envelope = Envelope {
        meta: Meta {
            tool: "maxclass",
            version: env!("CARGO_PKG_VERSION"),
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        },
        payload,
    };
    let mut s = serde_json::to_string_pretty(&envelope).expect("report serializes");
    s.push('\n');
    s
}

pub fn markdown_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| {} |", header.join(" | "));
    let _ = writeln!(s, "|{}", "---|".repeat(header.len()));
    for row in rows {
        let _ = writeln!(s, "| {} |", row.join(" | "));
    }
    s
}

pub fn csv_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", header.join(","));
    for row in rows {
        let _ = writeln!(s, "{}", row.join(","));
    }
    s
}
