use std::process::ExitCode;

use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }
}

impl From<broomcalc::suite::Verdict> for Verdict {
    fn from(v: broomcalc::suite::Verdict) -> Self {
        match v {
            broomcalc::suite::Verdict::Pass => Verdict::Pass,
            broomcalc::suite::Verdict::Fail => Verdict::Fail,
            broomcalc::suite::Verdict::Inconclusive => Verdict::Inconclusive,
        }
    }
}

/// What a command found, in both output forms. JSON output is one object
/// per line.
pub struct Report {
    pub verdict: Verdict,
    pub human: Vec<String>,
    pub json: Vec<Value>,
}

impl Report {
    pub fn new(verdict: Verdict) -> Self {
        Report {
            verdict,
            human: Vec::new(),
            json: Vec::new(),
        }
    }

    /// A passing report with one human line and one JSON object.
    pub fn single(human: impl Into<String>, json: Value) -> Self {
        Report::new(Verdict::Pass).line(human).record(json)
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.human.push(s.into());
        self
    }

    pub fn record(mut self, v: Value) -> Self {
        self.json.push(v);
        self
    }

    pub fn emit(&self, json: bool) -> ExitCode {
        if json {
            for v in &self.json {
                println!("{v}");
            }
        } else {
            for l in &self.human {
                println!("{l}");
            }
        }
        ExitCode::from(self.verdict.code())
    }
}
