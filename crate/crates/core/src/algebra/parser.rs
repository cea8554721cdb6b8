//! Parser for class expressions.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor ('&' factor)*
//! factor := '!' factor | '(' expr ')' | atom
//! atom   := KIND '(' body ')'
//! KIND   := Fr | coFr | contraFr | cocontraFr
//! ```
//!
//! The atom body is either an inline relation list, `6=0; 4=2`, or `@path`
//! naming a relation file. Inline entries use the relation file syntax with
//! `;` instead of line breaks. Atom bodies cannot contain parentheses.

use super::{AtomKind, ClassAtom, ClassExpr};
use crate::error::{Error, Result};
use crate::relations::parse_relations;

/// Parses a class expression. Positions in errors are 1-based character
/// offsets into the input.
pub fn parse_expr(text: &str) -> Result<ClassExpr> {
    let chars: Vec<char> = text.chars().collect();
    let mut parser = Parser { chars, pos: 0 };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::ExprSyntax {
            position: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, expected: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == expected => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{expected}', found '{c}'"))),
            None => Err(self.error(format!("expected '{expected}', found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<ClassExpr> {
        let mut lhs = self.term()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = ClassExpr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ClassExpr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = ClassExpr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ClassExpr> {
        match self.peek() {
            Some('!') => {
                self.pos += 1;
                Ok(ClassExpr::Not(Box::new(self.factor()?)))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.eat(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => self.atom(),
            Some(c) => Err(self.error(format!("expected an atom, found '{c}'"))),
            None => Err(self.error("expected an atom, found end of input")),
        }
    }

    fn atom(&mut self) -> Result<ClassExpr> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let kind = match name.as_str() {
            "Fr" => AtomKind::Fr,
            "coFr" => AtomKind::CoFr,
            "contraFr" => AtomKind::ContraFr,
            "cocontraFr" => AtomKind::CoContraFr,
            _ => {
                self.pos = start;
                return Err(self.error(format!(
                    "unknown atom {name:?} (expected Fr, coFr, contraFr or cocontraFr)"
                )));
            }
        };
        self.eat('(')?;
        let body_start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| c != ')' && c != '(') {
            self.pos += 1;
        }
        if self.chars.get(self.pos) != Some(&')') {
            self.pos = body_start;
            return Err(self.error("unterminated atom body"));
        }
        let body: String = self.chars[body_start..self.pos].iter().collect();
        self.pos += 1; // consume ')'
        let rel = self.parse_body(body.trim(), body_start)?;
        let atom = ClassAtom::new(kind, rel).map_err(|e| Error::ExprSyntax {
            position: body_start + 1,
            message: e.to_string(),
        })?;
        Ok(ClassExpr::Atom(atom))
    }

    fn parse_body(&self, body: &str, at: usize) -> Result<crate::relations::RelationSet> {
        let text = if let Some(path) = body.strip_prefix('@') {
            let path = path.trim();
            std::fs::read_to_string(path).map_err(|e| Error::ExprSyntax {
                position: at + 1,
                message: format!("cannot read relation file {path:?}: {e}"),
            })?
        } else {
            body.split(';').collect::<Vec<_>>().join("\n")
        };
        parse_relations(&text).map_err(|e| Error::ExprSyntax {
            position: at + 1,
            message: e.to_string(),
        })
    }
}
