//! Text grammars for monoid, group and block arguments.
//!
//! Generators: `6,9,20`. Group: invariant factors `2,4`, or `3` for a cyclic
//! group. Block: `elem:mult,...` where `elem` is a `/`-separated coordinate
//! tuple (`1/3`), or, for a cyclic group, one of `0`, `g`, `-g`, `kg`, `-kg`
//! or a bare residue. `:mult` defaults to 1.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, ParseError> {
    s.trim().parse().map_err(|_| ParseError(format!("bad {what} `{s}`")))
}

pub fn list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, ParseError> {
    if s.trim().is_empty() {
        return Err(ParseError(format!("empty {what} list")));
    }
    s.split(',').map(|p| number(p, what)).collect()
}

pub fn pair(s: &str, what: &str) -> Result<(u64, u64), ParseError> {
    match list::<u64>(s, what)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(ParseError(format!("{what} needs two comma-separated values, got `{s}`"))),
    }
}

fn element(s: &str, factors: &[u32]) -> Result<Vec<u32>, ParseError> {
    let s = s.trim();
    if s.contains('/') || factors.len() != 1 {
        let coords: Vec<u32> = s.split('/').map(|c| number(c, "coordinate")).collect::<Result<_, _>>()?;
        return Ok(coords);
    }
    let n = factors[0] as i64;
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let k: i64 = match body.strip_suffix('g') {
        Some("") => 1,
        Some(k) => number(k, "multiple of g")?,
        None => number(body, "residue")?,
    };
    let k = if neg { -k } else { k };
    Ok(vec![k.rem_euclid(n) as u32])
}

pub fn block(s: &str, factors: &[u32]) -> Result<Vec<(Vec<u32>, u32)>, ParseError> {
    if s.trim().is_empty() {
        return Err(ParseError("empty block".into()));
    }
    s.split(',')
        .map(|term| {
            let (elem, mult) = match term.split_once(':') {
                Some((e, m)) => (e, number(m, "multiplicity")?),
                None => (term, 1),
            };
            Ok((element(elem, factors)?, mult))
        })
        .collect()
}
