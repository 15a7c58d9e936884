//! Group selection and element parsing for the CLI and file formats.
//!
//! Element syntax round-trips with the core `Display` impls:
//! free words `a1 a2'`, matrices `[[a,b],[c,d]]`, permutations `(0 1 2)(3 4)`.
//! Parse errors carry the byte offset of the offending input.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use qmlen_core::group::{FreeWord, Mat2, Perm, ProjMat2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSpec {
    Free(u32),
    Sl2z,
    Psl2z,
    Perm(u8),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Free(r) => write!(f, "free:{r}"),
            GroupSpec::Sl2z => write!(f, "sl2z"),
            GroupSpec::Psl2z => write!(f, "psl2z"),
            GroupSpec::Perm(d) => write!(f, "perm:{d}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s {
            "sl2z" => return Ok(GroupSpec::Sl2z),
            "psl2z" => return Ok(GroupSpec::Psl2z),
            _ => {}
        }
        if let Some(rank) = s.strip_prefix("free:") {
            let r: u32 = rank
                .parse()
                .map_err(|_| ParseError::at(5, "rank must be a positive integer"))?;
            if r == 0 {
                return Err(ParseError::at(5, "rank must be a positive integer"));
            }
            return Ok(GroupSpec::Free(r));
        }
        if let Some(degree) = s.strip_prefix("perm:") {
            let d: u8 = degree
                .parse()
                .map_err(|_| ParseError::at(5, "degree must be an integer in 1..=255"))?;
            if d == 0 {
                return Err(ParseError::at(5, "degree must be positive"));
            }
            return Ok(GroupSpec::Perm(d));
        }
        Err(ParseError::at(
            0,
            "expected one of free:<rank>, sl2z, psl2z, perm:<degree>",
        ))
    }
}

/// An element of whichever group the CLI was pointed at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyElement {
    Free(FreeWord),
    Mat(Mat2),
    Proj(ProjMat2),
    Perm(Perm),
}

impl fmt::Display for AnyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyElement::Free(w) => write!(f, "{w}"),
            AnyElement::Mat(m) => write!(f, "{m}"),
            AnyElement::Proj(p) => write!(f, "{p}"),
            AnyElement::Perm(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn at(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_element(group: GroupSpec, text: &str) -> Result<AnyElement, ParseError> {
    match group {
        GroupSpec::Free(rank) => parse_free_word(rank, text).map(AnyElement::Free),
        GroupSpec::Sl2z => parse_matrix(text).map(AnyElement::Mat),
        GroupSpec::Psl2z => parse_matrix(text).map(|m| AnyElement::Proj(ProjMat2::new(m))),
        GroupSpec::Perm(degree) => parse_perm(degree, text).map(AnyElement::Perm),
    }
}

/// `a1 a2' a1` with whitespace separation; `e` is the identity.
pub fn parse_free_word(rank: u32, text: &str) -> Result<FreeWord, ParseError> {
    let mut letters: Vec<i32> = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let token = &text[start..i];
        if token == "e" {
            continue;
        }
        let body = token
            .strip_prefix('a')
            .ok_or_else(|| ParseError::at(start, format!("expected a<k>, a<k>' or e, got `{token}`")))?;
        let (digits, inverted) = match body.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (body, false),
        };
        let index: u32 = digits
            .parse()
            .map_err(|_| ParseError::at(start + 1, format!("bad generator index `{digits}`")))?;
        if index == 0 || index > rank {
            return Err(ParseError::at(
                start + 1,
                format!("generator index {index} out of range 1..={rank}"),
            ));
        }
        letters.push(if inverted { -(index as i32) } else { index as i32 });
    }
    FreeWord::from_letters(rank, &letters).map_err(|e| ParseError::at(0, e.to_string()))
}

/// `[[a,b],[c,d]]` with optional whitespace; entries are arbitrary-precision
/// integers, determinant must be 1.
pub fn parse_matrix(text: &str) -> Result<Mat2, ParseError> {
    let mut s = Scanner::new(text);
    s.expect('[')?;
    let (a, b) = parse_row(&mut s)?;
    s.expect(',')?;
    let (c, d) = parse_row(&mut s)?;
    s.expect(']')?;
    s.expect_end()?;
    Mat2::new(a, b, c, d).map_err(|e| ParseError::at(0, e.to_string()))
}

fn parse_row(s: &mut Scanner<'_>) -> Result<(BigInt, BigInt), ParseError> {
    s.expect('[')?;
    let x = s.integer()?;
    s.expect(',')?;
    let y = s.integer()?;
    s.expect(']')?;
    Ok((x, y))
}

/// Disjoint cycles `(0 1 2)(3 4)`; `()` and `e` are the identity.
pub fn parse_perm(degree: u8, text: &str) -> Result<Perm, ParseError> {
    if text.trim() == "e" {
        return Ok(Perm::identity(degree));
    }
    let mut s = Scanner::new(text);
    let mut cycles: Vec<Vec<u8>> = Vec::new();
    s.skip_ws();
    while !s.at_end() {
        let cycle_start = s.pos;
        s.expect('(')?;
        let mut cycle: Vec<u8> = Vec::new();
        loop {
            s.skip_ws();
            if s.peek() == Some(')') {
                s.pos += 1;
                break;
            }
            let point_start = s.pos;
            let n = s.integer()?;
            let point = u8::try_from(&n).map_err(|_| {
                ParseError::at(point_start, format!("point {n} does not fit in a degree"))
            })?;
            if point >= degree {
                return Err(ParseError::at(
                    point_start,
                    format!("point {point} out of range for degree {degree}"),
                ));
            }
            cycle.push(point);
        }
        if !cycle.is_empty() {
            if cycle.len() == 1 {
                return Err(ParseError::at(cycle_start, "cycle of length 1"));
            }
            cycles.push(cycle);
        }
        s.skip_ws();
    }
    Perm::from_cycles(degree, &cycles).map_err(|e| ParseError::at(0, e.to_string()))
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(found) if found == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(found) => Err(ParseError::at(
                self.pos,
                format!("expected `{c}`, found `{found}`"),
            )),
            None => Err(ParseError::at(
                self.pos,
                format!("expected `{c}`, found end of input"),
            )),
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.text.len() {
            return Err(ParseError::at(self.pos, "trailing input"));
        }
        Ok(())
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        if self.pos < bytes.len() && (bytes[self.pos] == b'-' || bytes[self.pos] == b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ParseError::at(start, "expected an integer"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| ParseError::at(start, "bad integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmlen_core::group::GroupElement;

    #[test]
    fn group_specs_round_trip() {
        for text in ["free:2", "sl2z", "psl2z", "perm:6"] {
            let g: GroupSpec = text.parse().unwrap();
            assert_eq!(g.to_string(), text);
        }
        assert!("free:0".parse::<GroupSpec>().is_err());
        assert!("so3".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn free_words_round_trip() {
        for text in ["e", "a1", "a1 a2'", "a2' a2' a1"] {
            let w = parse_free_word(2, text).unwrap();
            assert_eq!(parse_free_word(2, &w.to_string()).unwrap(), w);
        }
        // reduction happens on parse
        assert!(parse_free_word(2, "a1 a1'").unwrap().is_identity());
    }

    #[test]
    fn free_word_errors_carry_offsets() {
        let e = parse_free_word(2, "a1 b2").unwrap_err();
        assert_eq!(e.offset, 3);
        let e = parse_free_word(2, "a3").unwrap_err();
        assert_eq!(e.offset, 1);
    }

    #[test]
    fn matrices_round_trip() {
        for text in ["[[1,0],[0,1]]", "[[2,1],[1,1]]", "[[0,-1],[1,0]]"] {
            let m = parse_matrix(text).unwrap();
            assert_eq!(m.to_string(), text);
        }
        assert_eq!(
            parse_matrix(" [ [ 2 , 1 ] , [ 1 , 1 ] ] ").unwrap(),
            parse_matrix("[[2,1],[1,1]]").unwrap()
        );
    }

    #[test]
    fn matrix_errors() {
        assert!(parse_matrix("[[1,0],[0,1]]x").is_err());
        assert!(parse_matrix("[[2,0],[0,1]]").is_err()); // det 2
        let e = parse_matrix("[[1,q],[0,1]]").unwrap_err();
        assert_eq!(e.offset, 4);
    }

    #[test]
    fn perms_round_trip() {
        for text in ["()", "(0 1 2)", "(0 1)(2 3)"] {
            let p = parse_perm(5, text).unwrap();
            assert_eq!(parse_perm(5, &p.to_string()).unwrap(), p);
        }
        assert!(parse_perm(5, "e").unwrap().is_identity());
        assert!(parse_perm(3, "(0 4)").is_err());
        assert!(parse_perm(3, "(0 0)").is_err());
    }

    #[test]
    fn projective_parse_canonicalizes_sign() {
        let a = parse_element(GroupSpec::Psl2z, "[[-1,0],[0,-1]]").unwrap();
        let b = parse_element(GroupSpec::Psl2z, "[[1,0],[0,1]]").unwrap();
        assert_eq!(a, b);
    }
}
