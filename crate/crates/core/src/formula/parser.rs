use thiserror::Error;

use super::{AgentId, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("agent index {agent} at {position} out of range 1..={agents}")]
    AgentOutOfRange { position: usize, agent: u64, agents: u32 },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Tilde,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    LParen,
    RParen,
    Modal(char, u64),
    Val,
    Con,
    True,
    False,
    Atom(String),
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { position, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '~' => out.push((start, Tok::Tilde)),
            '&' => out.push((start, Tok::Amp)),
            '|' => out.push((start, Tok::Bar)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((start, Tok::Arrow));
                    i += 1;
                } else {
                    return Err(syntax(start, "expected '->'"));
                }
            }
            '<' => {
                if text[i..].starts_with("<->") {
                    out.push((start, Tok::DoubleArrow));
                    i += 2;
                } else {
                    return Err(syntax(start, "expected '<->'"));
                }
            }
            'L' | 'N' | 'O' => {
                let digits_start = i + 1;
                let mut j = digits_start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == digits_start {
                    return Err(syntax(start, format!("modality '{c}' needs an agent index")));
                }
                let index: u64 = text[digits_start..j]
                    .parse()
                    .map_err(|_| syntax(start, "agent index too large"))?;
                out.push((start, Tok::Modal(c, index)));
                i = j;
                continue;
            }
            'V' | 'C' => {
                if bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
                    return Err(syntax(start, format!("unexpected identifier after '{c}'")));
                }
                out.push((start, if c == 'V' { Tok::Val } else { Tok::Con }));
            }
            'a'..='z' => {
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                let word = &text[i..j];
                out.push((
                    start,
                    match word {
                        "true" => Tok::True,
                        "false" => Tok::False,
                        _ => Tok::Atom(word.to_string()),
                    },
                ));
                i = j;
                continue;
            }
            _ => return Err(syntax(start, format!("unexpected character '{c}'"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    agents: u32,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while self.eat(&Tok::DoubleArrow) {
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Bar) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let position = self.here();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(syntax(position, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Tilde => Ok(Formula::not(self.unary()?)),
            Tok::Val => Ok(Formula::val(self.unary()?)),
            Tok::Con => Ok(Formula::con(self.unary()?)),
            Tok::Modal(kind, index) => {
                if index == 0 || index > u64::from(self.agents) {
                    return Err(ParseError::AgentOutOfRange { position, agent: index, agents: self.agents });
                }
                let agent = AgentId(index as u32);
                let body = self.unary()?;
                Ok(match kind {
                    'L' => Formula::l(agent, body),
                    'N' => Formula::n(agent, body),
                    _ => Formula::o(agent, body),
                })
            }
            Tok::LParen => {
                let inner = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.here(), "expected ')'"));
                }
                Ok(inner)
            }
            Tok::True => Ok(Formula::True),
            Tok::False => Ok(Formula::False),
            Tok::Atom(name) => Ok(Formula::Atom(name)),
            other => Err(syntax(position, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `text` with agent indices restricted to `1..=agents`.
pub fn parse(text: &str, agents: u32) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, end: text.len(), agents };
    let f = parser.formula()?;
    if parser.pos != parser.toks.len() {
        return Err(syntax(parser.here(), "trailing input"));
    }
    Ok(f)
}

/// Parses without an agent bound; callers derive `n` from the result.
pub fn parse_unbounded(text: &str) -> Result<Formula, ParseError> {
    parse(text, u32::MAX)
}
