//! Surface language and parser.
//!
//! The grammar:
//!
//! ```text
//! file ::= item*
//! item ::= 'assume' ident ':' expr | 'check' expr ':' expr
//! expr ::= '\' ident '.' expr | atom+
//! atom ::= ident | 'U' | 'El' atom | '(' expr ')'
//!        | '(' expr ':' expr ')'              -- annotation
//!        | '(' ident ':' expr ')' '->' expr   -- dependent function type
//! ```
//!
//! Identifiers are `[A-Za-z][A-Za-z0-9_']*`, application is
//! juxtaposition and associates left, `--` starts a line comment.

use std::fmt;

use thiserror::Error;

/// A line/column position, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug)]
pub struct Surface {
    pub kind: SurfKind,
    pub pos: Pos,
}

#[derive(Clone, Debug)]
pub enum SurfKind {
    Var(String),
    Lam(String, Box<Surface>),
    App(Box<Surface>, Box<Surface>),
    U,
    El(Box<Surface>),
    Pi(String, Box<Surface>, Box<Surface>),
    Ann(Box<Surface>, Box<Surface>),
}

#[derive(Clone, Debug)]
pub struct Item {
    pub kind: ItemKind,
    pub pos: Pos,
}

#[derive(Clone, Debug)]
pub enum ItemKind {
    Assume(String, Surface),
    Check(Surface, Surface),
}

#[derive(Debug, Error, Clone)]
#[error("{pos}: {msg}")]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum TokKind {
    Ident(String),
    KwAssume,
    KwCheck,
    KwU,
    KwEl,
    LParen,
    RParen,
    Colon,
    Arrow,
    Backslash,
    Dot,
}

#[derive(Clone, Debug)]
struct Tok {
    kind: TokKind,
    pos: Pos,
}

fn lex(src: &str) -> Result<Vec<Tok>, ParseError> {
    let mut toks = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '(' | ')' | ':' | '\\' | '.' => {
                chars.next();
                col += 1;
                let kind = match c {
                    '(' => TokKind::LParen,
                    ')' => TokKind::RParen,
                    ':' => TokKind::Colon,
                    '\\' => TokKind::Backslash,
                    _ => TokKind::Dot,
                };
                toks.push(Tok { kind, pos });
            }
            '-' => {
                chars.next();
                col += 1;
                match chars.peek() {
                    Some('-') => {
                        // Line comment.
                        while let Some(&c) = chars.peek() {
                            if c == '\n' {
                                break;
                            }
                            chars.next();
                            col += 1;
                        }
                    }
                    Some('>') => {
                        chars.next();
                        col += 1;
                        toks.push(Tok {
                            kind: TokKind::Arrow,
                            pos,
                        });
                    }
                    _ => {
                        return Err(ParseError {
                            pos,
                            msg: "expected `->` or `--`".to_string(),
                        })
                    }
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        name.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let kind = match name.as_str() {
                    "assume" => TokKind::KwAssume,
                    "check" => TokKind::KwCheck,
                    "U" => TokKind::KwU,
                    "El" => TokKind::KwEl,
                    _ => TokKind::Ident(name),
                };
                toks.push(Tok { kind, pos });
            }
            c => {
                return Err(ParseError {
                    pos,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    end: Pos,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        let toks = lex(src)?;
        let end = toks.last().map_or(Pos { line: 1, col: 1 }, |t| t.pos);
        Ok(Parser { toks, pos: 0, end })
    }

    fn peek(&self) -> Option<&TokKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    fn here(&self) -> Pos {
        self.toks.get(self.pos).map_or(self.end, |t| t.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: TokKind, what: &str) -> Result<Pos, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t.kind == want => Ok(pos),
            _ => Err(ParseError {
                pos,
                msg: format!("expected {what}"),
            }),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok {
                kind: TokKind::Ident(name),
                ..
            }) => Ok((name, pos)),
            _ => Err(ParseError {
                pos,
                msg: format!("expected {what}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Surface, ParseError> {
        let pos = self.here();
        if matches!(self.peek(), Some(TokKind::Backslash)) {
            self.bump();
            let (name, _) = self.ident("a binder name after `\\`")?;
            self.expect(TokKind::Dot, "`.` after the binder")?;
            let body = self.expr()?;
            return Ok(Surface {
                kind: SurfKind::Lam(name, Box::new(body)),
                pos,
            });
        }
        let mut head = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            head = Surface {
                kind: SurfKind::App(Box::new(head), Box::new(arg)),
                pos,
            };
        }
        Ok(head)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(TokKind::Ident(_)) | Some(TokKind::KwU) | Some(TokKind::KwEl)
                | Some(TokKind::LParen)
        )
    }

    fn atom(&mut self) -> Result<Surface, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok {
                kind: TokKind::Ident(name),
                ..
            }) => Ok(Surface {
                kind: SurfKind::Var(name),
                pos,
            }),
            Some(Tok {
                kind: TokKind::KwU,
                ..
            }) => Ok(Surface {
                kind: SurfKind::U,
                pos,
            }),
            Some(Tok {
                kind: TokKind::KwEl,
                ..
            }) => {
                let arg = self.atom()?;
                Ok(Surface {
                    kind: SurfKind::El(Box::new(arg)),
                    pos,
                })
            }
            Some(Tok {
                kind: TokKind::LParen,
                ..
            }) => {
                let e = self.expr()?;
                match self.peek() {
                    Some(TokKind::Colon) => {
                        self.bump();
                        let t = self.expr()?;
                        self.expect(TokKind::RParen, "`)` to close the annotation")?;
                        if matches!(self.peek(), Some(TokKind::Arrow)) {
                            self.bump();
                            let name = match e.kind {
                                SurfKind::Var(name) => name,
                                _ => {
                                    return Err(ParseError {
                                        pos: e.pos,
                                        msg: "a function-type binder must be a name"
                                            .to_string(),
                                    })
                                }
                            };
                            let body = self.expr()?;
                            Ok(Surface {
                                kind: SurfKind::Pi(name, Box::new(t), Box::new(body)),
                                pos,
                            })
                        } else {
                            Ok(Surface {
                                kind: SurfKind::Ann(Box::new(e), Box::new(t)),
                                pos,
                            })
                        }
                    }
                    _ => {
                        self.expect(TokKind::RParen, "`)`")?;
                        Ok(e)
                    }
                }
            }
            _ => Err(ParseError {
                pos,
                msg: "expected an expression".to_string(),
            }),
        }
    }

    fn item(&mut self) -> Result<Item, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok {
                kind: TokKind::KwAssume,
                ..
            }) => {
                let (name, _) = self.ident("a name after `assume`")?;
                self.expect(TokKind::Colon, "`:` after the assumed name")?;
                let ty = self.expr()?;
                Ok(Item {
                    kind: ItemKind::Assume(name, ty),
                    pos,
                })
            }
            Some(Tok {
                kind: TokKind::KwCheck,
                ..
            }) => {
                let e = self.expr()?;
                self.expect(TokKind::Colon, "`:` in a check item")?;
                let ty = self.expr()?;
                Ok(Item {
                    kind: ItemKind::Check(e, ty),
                    pos,
                })
            }
            _ => Err(ParseError {
                pos,
                msg: "expected `assume` or `check`".to_string(),
            }),
        }
    }
}

pub fn parse_file(src: &str) -> Result<Vec<Item>, ParseError> {
    let mut p = Parser::new(src)?;
    let mut items = Vec::new();
    while p.peek().is_some() {
        items.push(p.item()?);
    }
    Ok(items)
}

pub fn parse_expr(src: &str) -> Result<Surface, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(_) => p.err("trailing input after the expression"),
    }
}
