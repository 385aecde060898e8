//! OR-Library Euclidean Steiner instance files (`estein*.txt`).
//!
//! Layout: the number of problems `P`, then `P` blocks of a point count `n`
//! followed by `n` coordinate pairs. Tokens may be split across lines
//! arbitrarily. Text from `#` to the end of a line is a comment.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{Instance, Point};

struct Token<'a> {
    text: &'a str,
    line: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    text.lines()
        .enumerate()
        .flat_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("");
            body.split_whitespace().map(move |t| Token { text: t, line: i + 1 })
        })
        .collect()
}

struct Cursor<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self, what: &str) -> Result<&Token<'a>> {
        let tok = self
            .tokens
            .get(self.pos)
            .ok_or_else(|| Error::Parse { token: self.pos, message: format!("unexpected end of input while reading {what}") })?;
        self.pos += 1;
        Ok(tok)
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let pos = self.pos;
        let tok = self.next(what)?;
        tok.text
            .parse::<usize>()
            .map_err(|_| Error::Parse { token: pos, message: format!("line {}: expected {what}, found '{}'", tok.line, tok.text) })
    }

    fn coord(&mut self) -> Result<f64> {
        let pos = self.pos;
        let tok = self.next("a coordinate")?;
        match tok.text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => {
                Err(Error::Parse { token: pos, message: format!("line {}: expected a finite coordinate, found '{}'", tok.line, tok.text) })
            }
        }
    }
}

/// Parses every problem in an OR-Library Euclidean Steiner file.
pub fn parse_orlib(text: &str) -> Result<Vec<Instance>> {
    let mut cur = Cursor { tokens: tokenize(text), pos: 0 };
    let problems = cur.count("the problem count")?;
    let mut out = Vec::with_capacity(problems);
    for p in 0..problems {
        let n_pos = cur.pos;
        let n = cur.count(&format!("the point count of problem {}", p + 1))?;
        if n == 0 {
            return Err(Error::Parse { token: n_pos, message: format!("problem {} has no points", p + 1) });
        }
        let mut points = Vec::with_capacity(n);
        for _ in 0..n {
            let x = cur.coord()?;
            let y = cur.coord()?;
            points.push(Point::new(x, y));
        }
        out.push(Instance::new(points).map_err(|e| Error::Parse { token: n_pos, message: e.to_string() })?);
    }
    if let Some(extra) = cur.tokens.get(cur.pos) {
        return Err(Error::Parse {
            token: cur.pos,
            message: format!("line {}: {} problems declared but more data follows ('{}')", extra.line, problems, extra.text),
        });
    }
    Ok(out)
}

/// Writes instances in the same layout; coordinates use the shortest
/// representation that parses back to the identical `f64`.
pub fn write_orlib(instances: &[Instance]) -> String {
    let mut s = String::new();
    writeln!(s, "{}", instances.len()).unwrap();
    for inst in instances {
        writeln!(s, "{}", inst.len()).unwrap();
        for p in inst.points() {
            writeln!(s, "{:?} {:?}", p.x, p.y).unwrap();
        }
    }
    s
}
