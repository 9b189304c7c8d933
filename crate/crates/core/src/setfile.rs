//! Plain-text set files.
//!
//! ```text
//! # universe 11
//! 1
//! 3
//! 7
//! ```
//!
//! The header fixes the universe size `U`; elements follow one per line in
//! strictly ascending decimal order. For a subset of `[N]` the universe is
//! `N + 1`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sets::{Ambient, IntSet};

const HEADER: &str = "# universe ";

pub fn to_string(set: &IntSet) -> String {
    let mut out = format!("{HEADER}{}\n", set.universe());
    for x in set {
        writeln!(out, "{x}").expect("writing to a String");
    }
    out
}

pub fn parse(text: &str, ambient: Ambient) -> Result<IntSet> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing '# universe U' header".into()))?;
    let universe: usize = header
        .strip_prefix(HEADER)
        .and_then(|u| u.parse().ok())
        .ok_or_else(|| err(1, format!("bad header {header:?}")))?;

    let mut elements = Vec::new();
    for (no, line) in lines {
        let x: usize = line
            .parse()
            .map_err(|_| err(no, format!("not a decimal integer: {line:?}")))?;
        if let Some(&prev) = elements.last() {
            if x <= prev {
                return Err(err(
                    no,
                    format!("{x} does not follow {prev} in ascending order"),
                ));
            }
        }
        if x >= universe {
            return Err(err(no, format!("{x} outside universe {universe}")));
        }
        elements.push(x);
    }
    IntSet::with_ambient(ambient, universe, elements)
}

pub fn read(path: &Path, ambient: Ambient) -> Result<IntSet> {
    parse(&std::fs::read_to_string(path)?, ambient)
}

pub fn write(path: &Path, set: &IntSet) -> Result<()> {
    std::fs::write(path, to_string(set))?;
    Ok(())
}
