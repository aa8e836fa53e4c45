use serde_json::{json, Map, Value};

use crate::{Common, Format};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INCOHERENT: u8 = 3;
pub const EXIT_VIOLATION: u8 = 4;

/// A finished command: its exit code, text lines and structured fields.
pub struct Report {
    pub code: u8,
    pub text: String,
    pub fields: Map<String, Value>,
}

impl Report {
    pub fn new(code: u8) -> Self {
        Report { code, text: String::new(), fields: Map::new() }
    }

    pub fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    pub fn field(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }
}

/// A command that stopped early.
pub struct Failure {
    pub code: u8,
    pub diagnostics: Vec<Value>,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, diagnostics: vec![json!({"location": "", "message": message.into()})] }
    }

    pub fn located(location: &str, message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, diagnostics: vec![json!({"location": location, "message": message.into()})] }
    }

    pub fn incoherent(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INCOHERENT, diagnostics: vec![json!({"location": "", "message": message.into()})] }
    }
}

fn status(code: u8) -> &'static str {
    match code {
        EXIT_OK => "ok",
        EXIT_INPUT => "input-error",
        EXIT_INCOHERENT => "incoherent",
        EXIT_VIOLATION => "violation",
        _ => "error",
    }
}

/// Prints the outcome in the chosen format and returns the exit code.
pub fn emit(common: &Common, command: &str, outcome: Result<Report, Failure>, elapsed: Option<f64>) -> u8 {
    let (code, text, mut fields, diagnostics) = match outcome {
        Ok(r) => (r.code, r.text, r.fields, Vec::new()),
        Err(f) => (f.code, String::new(), Map::new(), f.diagnostics),
    };
    match common.format {
        Format::Text => {
            print!("{text}");
            for d in &diagnostics {
                let parts: Vec<&str> = ["file", "location", "message"]
                    .iter()
                    .filter_map(|k| d[*k].as_str())
                    .filter(|s| !s.is_empty())
                    .collect();
                eprintln!("error: {}", parts.join(": "));
            }
            if let Some(secs) = elapsed {
                println!("elapsed: {secs:.6}s");
            }
        }
        Format::Structured => {
            fields.insert("command".into(), json!(command));
            fields.insert("exit_code".into(), json!(code));
            fields.insert("status".into(), json!(status(code)));
            fields.insert("diagnostics".into(), Value::Array(diagnostics));
            if let Some(secs) = elapsed {
                fields.insert("elapsed_seconds".into(), json!(secs));
            }
            let doc = Value::Object(fields);
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    code
}
