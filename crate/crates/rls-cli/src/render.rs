//! Output rendering shared by every subcommand.
//!
//! `json` is the machine format: serde structs with every numeric field
//! already rendered to a string, so identical invocations produce
//! byte-identical output. `csv` is one header line plus one line per row.
//! `md` lays rows out as a pipe table in the style of the printed tables,
//! with real values truncated (not rounded) at 15 decimal places.

use std::io::Write;

use clap::ValueEnum;
use rls_core::bigfloat::{complex_to_sig_string, to_fixed_trunc};
use rls_core::identities::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl Format {
    pub fn from_name(name: &str) -> Option<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "json" => Some(Self::Json),
            "csv" => Some(Self::Csv),
            "md" => Some(Self::Md),
            _ => None,
        }
    }
}

/// Serializes `value` as pretty JSON plus a trailing newline.
pub fn write_json<T: serde::Serialize>(value: &T, out: &mut dyn Write) {
    let text = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    let _ = writeln!(out, "{text}");
}

/// Quotes a CSV field only when it needs quoting.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_csv_line(fields: &[String], out: &mut dyn Write) {
    let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
    let _ = writeln!(out, "{}", line.join(","));
}

/// Writes a Markdown pipe table: a header row, the alignment row, then
/// one row per record.
pub fn write_md_table(header: &[&str], rows: &[Vec<String>], out: &mut dyn Write) {
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(
        out,
        "|{}|",
        header.iter().map(|_| " --- ").collect::<Vec<_>>().join("|")
    );
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| c.replace('|', "\\|")).collect();
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
}

/// A verified value for the Markdown layout: reals truncated at 15
/// decimal places, complex values at 16 significant digits.
pub fn md_value(v: &Value) -> String {
    match v {
        Value::Real(x) => to_fixed_trunc(x, 15),
        Value::Complex(z) => complex_to_sig_string(z, 16),
    }
}
