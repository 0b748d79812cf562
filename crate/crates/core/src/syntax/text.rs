//! Canonical text form for core syntax, used by golden tests and
//! diagnostics. Printing followed by parsing is the identity on core
//! syntax.
//!
//! Grammar (prefix operators bind tighter than the infix composition
//! `o`, which is left-associative; `t[s]` is a postfix substitution):
//!
//! ```text
//! ty   ::= aty ('[' sub ']')*       tm   ::= atm ('[' sub ']')*
//! aty  ::= 'U' | 'El' atm           atm  ::= 'lam' atm | 'app' atm
//!        | 'Pi' aty aty                    | 'p2' asub | '(' tm ')'
//!        | '(' ty ')'
//! sub  ::= asub ('o' asub)*
//! asub ::= 'id' | 'eps' | 'p1' asub | '(' sub (',' tm)? ')'
//! ```

use std::rc::Rc;

use super::{Sub, Tm, Ty};

pub fn print_ty(a: &Ty) -> String {
    match a {
        Ty::Sub(a2, s) => format!("{}[{}]", print_ty_head(a2), print_sub(s)),
        _ => print_ty_atom(a),
    }
}

fn print_ty_head(a: &Ty) -> String {
    match a {
        Ty::Sub(..) => print_ty(a),
        _ => print_ty_atom(a),
    }
}

fn print_ty_atom(a: &Ty) -> String {
    match a {
        Ty::U => "U".to_string(),
        Ty::El(t) => format!("El {}", print_tm_atom(t)),
        Ty::Pi(a, b) => format!("Pi {} {}", print_ty_atom(a), print_ty_atom(b)),
        Ty::Sub(..) => format!("({})", print_ty(a)),
    }
}

pub fn print_tm(t: &Tm) -> String {
    match t {
        Tm::Sub(t2, s) => format!("{}[{}]", print_tm_head(t2), print_sub(s)),
        _ => print_tm_atom(t),
    }
}

fn print_tm_head(t: &Tm) -> String {
    match t {
        Tm::Sub(..) => print_tm(t),
        _ => print_tm_atom(t),
    }
}

fn print_tm_atom(t: &Tm) -> String {
    match t {
        Tm::Lam(b) => format!("lam {}", print_tm_atom(b)),
        Tm::App(b) => format!("app {}", print_tm_atom(b)),
        Tm::Proj2(s) => format!("p2 {}", print_sub_atom(s)),
        Tm::Sub(..) => format!("({})", print_tm(t)),
    }
}

pub fn print_sub(s: &Sub) -> String {
    match s {
        Sub::Comp(a, b) => format!("{} o {}", print_sub(a), print_sub_atom(b)),
        _ => print_sub_atom(s),
    }
}

fn print_sub_atom(s: &Sub) -> String {
    match s {
        Sub::Id => "id".to_string(),
        Sub::Empty => "eps".to_string(),
        Sub::Proj1(s) => format!("p1 {}", print_sub_atom(s)),
        Sub::Ext(s, t) => format!("({}, {})", print_sub(s), print_tm(t)),
        Sub::Comp(..) => format!("({})", print_sub(s)),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let mut toks = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            '[' => {
                chars.next();
                toks.push(Tok::LBrack);
            }
            ']' => {
                chars.next();
                toks.push(Tok::RBrack);
            }
            ',' => {
                chars.next();
                toks.push(Tok::Comma);
            }
            c if c.is_ascii_alphabetic() => {
                let mut w = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() {
                        w.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Word(w));
            }
            _ => return Err(format!("unexpected character {c:?} at byte {i}")),
        }
    }
    Ok(toks)
}

struct P {
    toks: Vec<Tok>,
    pos: usize,
}

impl P {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: &Tok) -> Result<(), String> {
        match self.next() {
            Some(got) if got == *t => Ok(()),
            got => Err(format!("expected {t:?}, got {got:?}")),
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(s)) if s == w)
    }

    fn sub(&mut self) -> Result<Rc<Sub>, String> {
        let mut acc = self.sub_atom()?;
        while self.is_word("o") {
            self.next();
            let rhs = self.sub_atom()?;
            acc = Rc::new(Sub::Comp(acc, rhs));
        }
        Ok(acc)
    }

    fn sub_atom(&mut self) -> Result<Rc<Sub>, String> {
        match self.next() {
            Some(Tok::Word(w)) if w == "id" => Ok(Rc::new(Sub::Id)),
            Some(Tok::Word(w)) if w == "eps" => Ok(Rc::new(Sub::Empty)),
            Some(Tok::Word(w)) if w == "p1" => Ok(Rc::new(Sub::Proj1(self.sub_atom()?))),
            Some(Tok::LParen) => {
                let s = self.sub()?;
                match self.peek() {
                    Some(Tok::Comma) => {
                        self.next();
                        let t = self.tm()?;
                        self.expect(&Tok::RParen)?;
                        Ok(Rc::new(Sub::Ext(s, t)))
                    }
                    _ => {
                        self.expect(&Tok::RParen)?;
                        Ok(s)
                    }
                }
            }
            got => Err(format!("expected a substitution, got {got:?}")),
        }
    }

    fn tm(&mut self) -> Result<Rc<Tm>, String> {
        let mut acc = self.tm_atom()?;
        while matches!(self.peek(), Some(Tok::LBrack)) {
            self.next();
            let s = self.sub()?;
            self.expect(&Tok::RBrack)?;
            acc = Rc::new(Tm::Sub(acc, s));
        }
        Ok(acc)
    }

    fn tm_atom(&mut self) -> Result<Rc<Tm>, String> {
        match self.next() {
            Some(Tok::Word(w)) if w == "lam" => Ok(Rc::new(Tm::Lam(self.tm_atom()?))),
            Some(Tok::Word(w)) if w == "app" => Ok(Rc::new(Tm::App(self.tm_atom()?))),
            Some(Tok::Word(w)) if w == "p2" => Ok(Rc::new(Tm::Proj2(self.sub_atom()?))),
            Some(Tok::LParen) => {
                let t = self.tm()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            got => Err(format!("expected a term, got {got:?}")),
        }
    }

    fn ty(&mut self) -> Result<Rc<Ty>, String> {
        let mut acc = self.ty_atom()?;
        while matches!(self.peek(), Some(Tok::LBrack)) {
            self.next();
            let s = self.sub()?;
            self.expect(&Tok::RBrack)?;
            acc = Rc::new(Ty::Sub(acc, s));
        }
        Ok(acc)
    }

    fn ty_atom(&mut self) -> Result<Rc<Ty>, String> {
        match self.next() {
            Some(Tok::Word(w)) if w == "U" => Ok(Rc::new(Ty::U)),
            Some(Tok::Word(w)) if w == "El" => Ok(Rc::new(Ty::El(self.tm_atom()?))),
            Some(Tok::Word(w)) if w == "Pi" => {
                let a = self.ty_atom()?;
                let b = self.ty_atom()?;
                Ok(Rc::new(Ty::Pi(a, b)))
            }
            Some(Tok::LParen) => {
                let a = self.ty()?;
                self.expect(&Tok::RParen)?;
                Ok(a)
            }
            got => Err(format!("expected a type, got {got:?}")),
        }
    }

    fn finish<T>(&mut self, v: T) -> Result<T, String> {
        match self.peek() {
            None => Ok(v),
            Some(t) => Err(format!("trailing input starting at {t:?}")),
        }
    }
}

fn parser(src: &str) -> Result<P, String> {
    Ok(P {
        toks: lex(src)?,
        pos: 0,
    })
}

pub fn parse_tm(src: &str) -> Result<Rc<Tm>, String> {
    let mut p = parser(src)?;
    let t = p.tm()?;
    p.finish(t)
}

pub fn parse_ty(src: &str) -> Result<Rc<Ty>, String> {
    let mut p = parser(src)?;
    let t = p.ty()?;
    p.finish(t)
}

pub fn parse_sub(src: &str) -> Result<Rc<Sub>, String> {
    let mut p = parser(src)?;
    let t = p.sub()?;
    p.finish(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_readably() {
        let t = parse_tm("lam (p2 id[p1 id])").unwrap();
        assert_eq!(print_tm(&t), "lam (p2 id[p1 id])");
        let s = parse_sub("(id, p2 id) o p1 id o eps").unwrap();
        assert_eq!(print_sub(&s), "(id, p2 id) o p1 id o eps");
        let a = parse_ty("Pi U (El (p2 id))[id]").unwrap();
        assert_eq!(print_ty(&a), "Pi U El p2 id[id]");
    }

    #[test]
    fn printing_then_parsing_is_identity() {
        for src in [
            "Pi U (El (p2 id))[id]",
            "Pi (Pi U U) (El ((app (p2 id[p1 id]))[(id, p2 id)]))",
            "U[eps o p1 id]",
        ] {
            let a = parse_ty(src).unwrap();
            assert_eq!(parse_ty(&print_ty(&a)).unwrap(), a);
        }
        for src in [
            "(app (lam (p2 id)))[(id, p2 (id, p2 id))]",
            "lam (lam (p2 id[p1 id][p1 id]))",
        ] {
            let t = parse_tm(src).unwrap();
            assert_eq!(parse_tm(&print_tm(&t)).unwrap(), t);
        }
    }

    #[test]
    fn composition_is_left_associative() {
        let s = parse_sub("id o id o eps").unwrap();
        assert_eq!(
            *s,
            Sub::Comp(
                Rc::new(Sub::Comp(Rc::new(Sub::Id), Rc::new(Sub::Id))),
                Rc::new(Sub::Empty)
            )
        );
        let s = parse_sub("id o (id o eps)").unwrap();
        assert_eq!(
            *s,
            Sub::Comp(
                Rc::new(Sub::Id),
                Rc::new(Sub::Comp(Rc::new(Sub::Id), Rc::new(Sub::Empty)))
            )
        );
    }

    #[test]
    fn rejects_trailing_garbage() {
        assert!(parse_tm("p2 id id").is_err());
        assert!(parse_ty("U ]").is_err());
    }
}
