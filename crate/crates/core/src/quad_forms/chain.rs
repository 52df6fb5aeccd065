//! Text scripts replaying a chain of equalities between forms or complexes
//! over `Z[D_∞]`.
//!
//! ```text
//! form eps=-1 theta=[[t*b, a], [0, a]]
//! base_change [[b, 0], [0, a]]
//! switch
//! assert_equal form eps=-1 theta=[[t^-1*a, a], [0, b]]
//! ```

use std::fmt;

use serde::Serialize;

use crate::dihedral::{Character, DihedralElement};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Sign;

use super::{Divergence, QuadResolution, QuadraticForm};

#[derive(Clone, PartialEq, Eq)]
pub enum ChainValue<W: Character> {
    Form(QuadraticForm<DihedralElement<W>>),
    Resolution(QuadResolution<DihedralElement<W>>),
}

#[derive(Clone, PartialEq, Eq)]
pub enum ChainStep<W: Character> {
    BaseChange(Matrix<DihedralElement<W>>),
    Switch,
    AssertEqual(ChainValue<W>),
}

#[derive(Clone, PartialEq, Eq)]
pub struct ChainScript<W: Character> {
    pub start: ChainValue<W>,
    pub steps: Vec<ChainStep<W>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub passed: bool,
    pub records: Vec<StepRecord>,
    /// Index into the script's steps of the failing assertion.
    pub failed_step: Option<usize>,
    pub divergence: Option<Divergence>,
}

const KEYS: [&str; 5] = ["eps", "theta", "d", "psi0", "psi1"];

/// Splits `eps=.. theta=..` into key/value pairs. Values may contain spaces.
fn fields(src: &str, line: usize) -> Result<Vec<(&'static str, String)>> {
    let mut marks: Vec<(usize, &'static str)> = Vec::new();
    for key in KEYS {
        let pat = format!("{key}=");
        let mut from = 0;
        while let Some(off) = src[from..].find(&pat) {
            let at = from + off;
            let boundary = at == 0 || src.as_bytes()[at - 1].is_ascii_whitespace();
            if boundary {
                marks.push((at, key));
            }
            from = at + pat.len();
        }
    }
    marks.sort();
    if marks
        .first()
        .is_none_or(|(at, _)| !src[..*at].trim().is_empty())
    {
        return Err(Error::Script(format!(
            "line {line}: expected key=value fields"
        )));
    }
    let mut out = Vec::new();
    for (idx, (at, key)) in marks.iter().enumerate() {
        let end = marks.get(idx + 1).map_or(src.len(), |(next, _)| *next);
        let value = src[at + key.len() + 1..end].trim().to_string();
        if out.iter().any(|(k, _)| k == key) {
            return Err(Error::Script(format!(
                "line {line}: duplicate field '{key}'"
            )));
        }
        out.push((*key, value));
    }
    Ok(out)
}

fn field<'a>(fs: &'a [(&'static str, String)], key: &str, line: usize) -> Result<&'a str> {
    fs.iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::Script(format!("line {line}: missing field '{key}'")))
}

fn located<T>(r: Result<T>, line: usize) -> Result<T> {
    r.map_err(|e| Error::Script(format!("line {line}: {e}")))
}

impl<W: Character> ChainValue<W> {
    fn parse_literal(src: &str, line: usize) -> Result<Self> {
        let src = src.trim();
        let (kind, rest) = src.split_once(char::is_whitespace).unwrap_or((src, ""));
        let fs = fields(rest.trim(), line)?;
        let eps: Sign = located(field(&fs, "eps", line)?.parse(), line)?;
        let matrix = |key: &str| -> Result<Matrix<DihedralElement<W>>> {
            located(Matrix::parse(field(&fs, key, line)?), line)
        };
        match kind {
            "form" => Ok(ChainValue::Form(located(
                QuadraticForm::new(matrix("theta")?, eps),
                line,
            )?)),
            "resolution" => Ok(ChainValue::Resolution(located(
                QuadResolution::new(matrix("d")?, matrix("psi0")?, matrix("psi1")?, eps),
                line,
            )?)),
            other => Err(Error::Script(format!(
                "line {line}: expected 'form' or 'resolution', found '{other}'"
            ))),
        }
    }

    fn divergence(&self, other: &Self) -> Option<Divergence> {
        match (self, other) {
            (ChainValue::Form(x), ChainValue::Form(y)) => x.divergence(y),
            (ChainValue::Resolution(x), ChainValue::Resolution(y)) => x.divergence(y),
            _ => Some(Divergence {
                component: "kind".into(),
                row: 0,
                col: 0,
                lhs: self.kind().into(),
                rhs: other.kind().into(),
            }),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            ChainValue::Form(_) => "form",
            ChainValue::Resolution(_) => "resolution",
        }
    }

    fn base_change(&self, p: &Matrix<DihedralElement<W>>) -> Result<Self> {
        Ok(match self {
            ChainValue::Form(f) => ChainValue::Form(f.base_change(p)?),
            ChainValue::Resolution(r) => ChainValue::Resolution(r.base_change(p)?),
        })
    }

    fn switch(&self) -> Self {
        match self {
            ChainValue::Form(f) => ChainValue::Form(f.switch()),
            ChainValue::Resolution(r) => ChainValue::Resolution(r.switch()),
        }
    }
}

impl<W: Character> ChainScript<W> {
    /// One step per line; blank lines and `#` comments are skipped.
    pub fn parse(src: &str) -> Result<Self> {
        let mut start = None;
        let mut steps = Vec::new();
        for (idx, raw) in src.lines().enumerate() {
            let line = idx + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            if start.is_none() {
                start = Some(ChainValue::parse_literal(text, line)?);
                continue;
            }
            let (cmd, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
            let step = match cmd {
                "base_change" => ChainStep::BaseChange(located(Matrix::parse(rest), line)?),
                "switch" if rest.trim().is_empty() => ChainStep::Switch,
                "assert_equal" => ChainStep::AssertEqual(ChainValue::parse_literal(rest, line)?),
                other => {
                    return Err(Error::Script(format!(
                        "line {line}: unknown step '{other}'"
                    )))
                }
            };
            steps.push(step);
        }
        let start = start.ok_or_else(|| Error::Script("empty script".into()))?;
        Ok(ChainScript { start, steps })
    }
}

/// Runs the script, recording every intermediate value and stopping at the
/// first failed assertion.
pub fn verify_chain<W: Character>(script: &ChainScript<W>) -> Result<ChainReport> {
    let mut current = script.start.clone();
    let mut records = vec![StepRecord {
        step: "start".into(),
        value: current.to_string(),
    }];
    for (idx, step) in script.steps.iter().enumerate() {
        match step {
            ChainStep::BaseChange(p) => current = current.base_change(p)?,
            ChainStep::Switch => current = current.switch(),
            ChainStep::AssertEqual(target) => {
                if let Some(div) = current.divergence(target) {
                    records.push(StepRecord {
                        step: step.to_string(),
                        value: current.to_string(),
                    });
                    return Ok(ChainReport {
                        passed: false,
                        records,
                        failed_step: Some(idx),
                        divergence: Some(div),
                    });
                }
            }
        }
        records.push(StepRecord {
            step: step.to_string(),
            value: current.to_string(),
        });
    }
    Ok(ChainReport {
        passed: true,
        records,
        failed_step: None,
        divergence: None,
    })
}

impl<W: Character> fmt::Display for ChainValue<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainValue::Form(x) => x.fmt(f),
            ChainValue::Resolution(x) => x.fmt(f),
        }
    }
}

impl<W: Character> fmt::Display for ChainStep<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainStep::BaseChange(p) => write!(f, "base_change {p}"),
            ChainStep::Switch => f.write_str("switch"),
            ChainStep::AssertEqual(v) => write!(f, "assert_equal {v}"),
        }
    }
}

impl<W: Character> fmt::Display for ChainScript<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.start)?;
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl<W: Character> fmt::Debug for ChainScript<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
