//! Generator words: the textual syntax shared by the CLI, the presentation
//! relators, and the class-representative fixtures.
//!
//! Tokens are case-insensitive `h<i>`, `p<i>`, `z<j>`, `x<i>`, `y<i>` with
//! optional integer exponents `^k` (negative allowed), plus parenthesized
//! groups with exponents: `( z1 h2 h1 )^3`.

use std::fmt;

use crate::{Error, Result};

/// A single generator symbol with its 1-based qubit index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    H(u32),
    P(u32),
    /// Controlled-Z on qubits (j, j+1).
    Z(u32),
    X(u32),
    Y(u32),
}

impl Gen {
    pub fn index(&self) -> u32 {
        match *self {
            Gen::H(i) | Gen::P(i) | Gen::Z(i) | Gen::X(i) | Gen::Y(i) => i,
        }
    }

    fn from_token(tok: &str) -> Result<Gen> {
        let err = || Error::UnknownToken {
            token: tok.to_string(),
        };
        let mut chars = tok.chars();
        let letter = chars.next().ok_or_else(err)?.to_ascii_lowercase();
        let idx: u32 = chars.as_str().parse().map_err(|_| err())?;
        if idx == 0 {
            return Err(err());
        }
        match letter {
            'h' => Ok(Gen::H(idx)),
            'p' => Ok(Gen::P(idx)),
            'z' => Ok(Gen::Z(idx)),
            'x' => Ok(Gen::X(idx)),
            'y' => Ok(Gen::Y(idx)),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gen::H(i) => write!(f, "h{}", i),
            Gen::P(i) => write!(f, "p{}", i),
            Gen::Z(i) => write!(f, "z{}", i),
            Gen::X(i) => write!(f, "x{}", i),
            Gen::Y(i) => write!(f, "y{}", i),
        }
    }
}

/// A word over the generators: a flat sequence of (symbol, exponent) pairs.
/// The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word(pub Vec<(Gen, i64)>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: Gen) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn push(&mut self, g: Gen, k: i64) {
        if k != 0 {
            self.0.push((g, k));
        }
    }

    pub fn concat(mut self, other: &Word) -> Word {
        self.0.extend(other.0.iter().cloned());
        self
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, k)| (g, -k)).collect())
    }

    pub fn repeat(&self, times: u32) -> Word {
        let mut out = Vec::with_capacity(self.0.len() * times as usize);
        for _ in 0..times {
            out.extend(self.0.iter().cloned());
        }
        Word(out)
    }

    /// Largest generator index used: (qubit-indexed families h/p/x/y, cz
    /// family z). Both 0 for the empty word.
    pub fn max_indices(&self) -> (u32, u32) {
        let mut qubit = 0;
        let mut cz = 0;
        for &(g, _) in &self.0 {
            match g {
                Gen::Z(j) => cz = cz.max(j),
                other => qubit = qubit.max(other.index()),
            }
        }
        (qubit, cz)
    }

    /// Parse the word syntax. Empty input is the identity word.
    pub fn parse(input: &str) -> Result<Word> {
        let toks = tokenize(input)?;
        let mut pos = 0usize;
        let word = parse_seq(&toks, &mut pos, 0)?;
        if pos != toks.len() {
            return Err(Error::WordSyntax(format!(
                "unexpected `)` at token {} in `{}`",
                pos, input
            )));
        }
        Ok(word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(g, k) in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{}", g)?;
            } else {
                write!(f, "{}^{}", g, k)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, PartialEq)]
enum Tok {
    Gen(Gen, i64),
    Open,
    Close(i64),
}

fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' {
            out.push(Tok::Open);
            i += 1;
        } else if c == ')' {
            i += 1;
            let exp = take_exponent(bytes, &mut i)?.unwrap_or(1);
            out.push(Tok::Close(exp));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                i += 1;
            }
            let g = Gen::from_token(&input[start..i])?;
            let exp = take_exponent(bytes, &mut i)?.unwrap_or(1);
            out.push(Tok::Gen(g, exp));
        } else {
            return Err(Error::WordSyntax(format!(
                "unexpected character `{}` in `{}`",
                c, input
            )));
        }
    }
    Ok(out)
}

fn take_exponent(bytes: &[u8], i: &mut usize) -> Result<Option<i64>> {
    if *i >= bytes.len() || bytes[*i] != b'^' {
        return Ok(None);
    }
    *i += 1;
    let start = *i;
    if *i < bytes.len() && bytes[*i] == b'-' {
        *i += 1;
    }
    while *i < bytes.len() && bytes[*i].is_ascii_digit() {
        *i += 1;
    }
    let s = std::str::from_utf8(&bytes[start..*i]).unwrap();
    s.parse::<i64>()
        .map(Some)
        .map_err(|_| Error::WordSyntax(format!("bad exponent `^{}`", s)))
}

fn parse_seq(toks: &[Tok], pos: &mut usize, depth: u32) -> Result<Word> {
    let mut word = Word::empty();
    while *pos < toks.len() {
        match &toks[*pos] {
            Tok::Gen(g, k) => {
                word.push(*g, *k);
                *pos += 1;
            }
            Tok::Open => {
                *pos += 1;
                let inner = parse_seq(toks, pos, depth + 1)?;
                let Some(Tok::Close(exp)) = toks.get(*pos) else {
                    return Err(Error::WordSyntax("unbalanced `(`".into()));
                };
                *pos += 1;
                let expanded = if *exp >= 0 {
                    inner.repeat(*exp as u32)
                } else {
                    inner.inverse().repeat((-exp) as u32)
                };
                word = word.concat(&expanded);
            }
            Tok::Close(_) => {
                if depth == 0 {
                    return Err(Error::WordSyntax("unbalanced `)`".into()));
                }
                return Ok(word);
            }
        }
    }
    if depth > 0 {
        return Err(Error::WordSyntax("unbalanced `(`".into()));
    }
    Ok(word)
}
