//! Poset input formats.
//!
//! Text: a header line `n <count>`, then one relation `<i> < <j>` per line.
//! `#` starts a comment, blank lines are ignored. JSON:
//! `{"n": 6, "relations": [[1,3], ...]}`.

use crate::error::{Error, Result};
use crate::poset::{build_poset, Poset, PosetSpec};

pub fn parse_text(input: &str) -> Result<Poset> {
    let mut n: Option<usize> = None;
    let mut relations = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if let Some(rest) = line
            .strip_prefix('n')
            .filter(|r| r.starts_with(char::is_whitespace))
        {
            if n.is_some() {
                return Err(err("duplicate `n` header".into()));
            }
            let count = rest
                .trim()
                .parse()
                .map_err(|_| err(format!("bad element count `{}`", rest.trim())))?;
            n = Some(count);
            continue;
        }
        let Some(count) = n else {
            return Err(err("expected header `n <count>` before relations".into()));
        };
        let (lhs, rhs) = line
            .split_once('<')
            .ok_or_else(|| err(format!("expected `<i> < <j>`, found `{line}`")))?;
        let parse_label = |s: &str| -> Result<usize> {
            s.trim()
                .parse()
                .map_err(|_| err(format!("bad element label `{}`", s.trim())))
        };
        let (i, j) = (parse_label(lhs)?, parse_label(rhs)?);
        // validate per line so the message names the offending line
        build_poset(count, &[(i, j)]).map_err(|e| err(e.to_string()))?;
        relations.push((i, j));
    }
    let n = n.ok_or(Error::Parse {
        line: input.lines().count().max(1),
        message: "missing header `n <count>`".into(),
    })?;
    build_poset(n, &relations)
}

pub fn parse_json(input: &str) -> Result<Poset> {
    let spec: PosetSpec = serde_json::from_str(input).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    build_poset(spec.n, &spec.relations).map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn parse_poset(input: &str) -> Result<Poset> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}
