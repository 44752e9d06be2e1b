//! Text forms of permutations, index sets and arc lists.
//!
//! Permutations are accepted either as whitespace/comma separated numbers
//! (`"12 1 2 11"`) or compactly (`"2413"`), where a letter above 9 is written
//! in parentheses or as `A`, `B`, `C`, … for 10, 11, 12, …
//! (`"183927(11)5(12)6(10)4"` and `"183927B5C6A4"` are the same). The empty
//! permutation is `""` or `"ε"`.

use permsquare_core::{Arc, IndexSet, Letter, Permutation};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("cannot read {what} from {input:?}: {reason}")]
    Parse { what: &'static str, input: String, reason: String },
    #[error(transparent)]
    Core(#[from] permsquare_core::Error),
}

fn parse_error(what: &'static str, input: &str, reason: impl Into<String>) -> FormatError {
    FormatError::Parse { what, input: input.to_owned(), reason: reason.into() }
}

pub const EMPTY: &str = "ε";

pub fn parse_perm(input: &str) -> Result<Permutation, FormatError> {
    let s = input.trim();
    if s.is_empty() || s == EMPTY {
        return Ok(Permutation::empty());
    }
    let letters = if s.contains(|c: char| c.is_whitespace() || c == ',') {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<Letter>().map_err(|e| parse_error("permutation", input, e.to_string())))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        parse_compact(input, s)?
    };
    Ok(Permutation::new(letters)?)
}

fn parse_compact(input: &str, s: &str) -> Result<Vec<Letter>, FormatError> {
    let mut letters = Vec::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        let letter = match c {
            '1'..='9' => c as Letter - '0' as Letter,
            'A'..='Z' => c as Letter - 'A' as Letter + 10,
            '(' => {
                let digits: String = chars.by_ref().take_while(|&c| c != ')').collect();
                digits.parse().map_err(|_| parse_error("permutation", input, "bad parenthesized letter"))?
            }
            _ => return Err(parse_error("permutation", input, format!("unexpected character {c:?}"))),
        };
        letters.push(letter);
    }
    Ok(letters)
}

pub fn render_perm(p: &Permutation) -> String {
    render_letters(p.letters())
}

pub fn render_letters(letters: &[Letter]) -> String {
    if letters.is_empty() {
        return EMPTY.to_owned();
    }
    letters.iter().map(Letter::to_string).collect::<Vec<_>>().join(" ")
}

/// Comma- or space-separated 1-based positions.
pub fn parse_index_set(input: &str) -> Result<IndexSet, FormatError> {
    let positions = input
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| parse_error("positions", input, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IndexSet::new(positions)?)
}

/// Arcs as `"i->j"` tokens separated by commas.
pub fn parse_arcs(input: &str) -> Result<Vec<Arc>, FormatError> {
    input
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (a, b) = t.split_once("->").ok_or_else(|| parse_error("arc", t, "expected i->j"))?;
            let pos = |x: &str| x.trim().parse::<usize>().map_err(|e| parse_error("arc", t, e.to_string()));
            Ok(Arc::new(pos(a)?, pos(b)?))
        })
        .collect()
}

pub fn render_arcs(arcs: &[Arc]) -> String {
    arcs.iter().map(|a| format!("{}->{}", a.source, a.sink)).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations() {
        let p = parse_perm("183927(11)5(12)6(10)4").unwrap();
        assert_eq!(p, parse_perm("183927B5C6A4").unwrap());
        assert_eq!(p, parse_perm("1 8 3 9 2 7 11 5 12 6 10 4").unwrap());
        assert_eq!(render_perm(&p), "1 8 3 9 2 7 11 5 12 6 10 4");
        assert_eq!(parse_perm(" ε ").unwrap(), Permutation::empty());
        assert_eq!(render_perm(&Permutation::empty()), "ε");
        assert!(parse_perm("1 2 2").is_err());
        assert!(parse_perm("1x").is_err());
        assert!(parse_perm("102").is_err());
    }

    #[test]
    fn lists_and_arcs() {
        assert_eq!(parse_index_set("2,3,5").unwrap().positions(), &[2, 3, 5]);
        let arcs = parse_arcs("1->5, 3->2,4->8,7->6").unwrap();
        assert_eq!(render_arcs(&arcs), "1->5,3->2,4->8,7->6");
        assert!(parse_arcs("1-5").is_err());
    }
}
