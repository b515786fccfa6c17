//! Concrete syntax for ground normal programs.
//!
//! ```text
//! rule    := atom [ ":-" literal { "," literal } ] "."
//! literal := [ "not" ] atom
//! atom    := [a-zA-Z_][a-zA-Z0-9_]*
//! ```
//!
//! `%` starts a line comment; whitespace is insignificant. `not` is only
//! treated as the negation keyword when another identifier follows, so
//! `not` remains usable as an atom name.

use std::fmt;

use crate::program::{AtomTable, Program, Rule};

/// Syntax error with 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Implies,
    Comma,
    Dot,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Implies => write!(f, "':-'"),
            Tok::Comma => write!(f, "','"),
            Tok::Dot => write!(f, "'.'"),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    /// Next token with its start position, or None at end of input.
    fn next_token(&mut self) -> Result<Option<(Tok, usize, usize)>, ParseError> {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let c = match self.chars.peek() {
            None => return Ok(None),
            Some(&c) => c,
        };
        let tok = match c {
            '.' => {
                self.bump();
                Tok::Dot
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            ':' => {
                self.bump();
                match self.chars.peek() {
                    Some('-') => {
                        self.bump();
                        Tok::Implies
                    }
                    _ => return Err(self.error("expected '-' after ':'")),
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(name)
            }
            c => return Err(self.error(format!("unexpected character '{c}'"))),
        };
        Ok(Some((tok, line, col)))
    }
}

struct Parser {
    tokens: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => match self.bump() {
                Some(Tok::Ident(s)) => Ok(s),
                _ => unreachable!(),
            },
            Some(t) => Err(self.error(format!("expected {what}, found {t}"))),
            None => Err(self.error(format!("expected {what}, found end of input"))),
        }
    }

    /// literal := ["not"] atom. `not` binds only when an identifier follows.
    fn literal(
        &mut self,
        atoms: &mut AtomTable,
    ) -> Result<(bool, crate::program::AtomId), ParseError> {
        let name = self.expect_ident("an atom")?;
        if name == "not" {
            if let Some(Tok::Ident(_)) = self.peek() {
                let inner = self.expect_ident("an atom")?;
                return Ok((true, atoms.intern(&inner)));
            }
        }
        Ok((false, atoms.intern(&name)))
    }

    fn rule(&mut self, atoms: &mut AtomTable) -> Result<Rule, ParseError> {
        let head_name = self.expect_ident("a rule head")?;
        let head = atoms.intern(&head_name);
        let mut pbody = Vec::new();
        let mut nbody = Vec::new();
        match self.peek() {
            Some(Tok::Dot) => {
                self.bump();
            }
            Some(Tok::Implies) => {
                self.bump();
                loop {
                    let (neg, atom) = self.literal(atoms)?;
                    if neg {
                        nbody.push(atom);
                    } else {
                        pbody.push(atom);
                    }
                    match self.bump() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::Dot) => break,
                        Some(t) => {
                            self.pos -= 1;
                            return Err(self.error(format!("expected ',' or '.', found {t}")));
                        }
                        None => return Err(self.error("expected ',' or '.', found end of input")),
                    }
                }
            }
            Some(t) => return Err(self.error(format!("expected ':-' or '.', found {t}"))),
            None => return Err(self.error("expected ':-' or '.', found end of input")),
        }
        Ok(Rule::new(head, pbody, nbody))
    }
}

/// Parses a program; atoms are interned in first-occurrence order,
/// duplicate rules and duplicate body literals are merged.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    while let Some(t) = lexer.next_token()? {
        tokens.push(t);
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: (lexer.line, lexer.col),
    };
    let mut atoms = AtomTable::new();
    let mut rules = Vec::new();
    while parser.peek().is_some() {
        rules.push(parser.rule(&mut atoms)?);
    }
    Ok(Program::new(atoms, rules))
}
