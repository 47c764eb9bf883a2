//! Recursive-descent parser over the token stream.

use super::lexer::{tokenize, Token, TokenKind};
use super::{ConceptExpr, KnowledgeBase, ParseError, Proposition};

/// Parses a single concept expression (binary operator allowed unparenthesized
/// at the top level).
pub fn parse_concept(text: &str) -> Result<ConceptExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let c = p.concept_top()?;
    p.expect_eof()?;
    Ok(c)
}

/// Parses a single axiom or assertion, without the trailing `.`.
pub fn parse_proposition(text: &str) -> Result<Proposition, ParseError> {
    let mut p = Parser::new(text)?;
    let prop = p.proposition()?;
    p.expect_eof()?;
    Ok(prop)
}

/// Parses a whole knowledge base: `.`-terminated statements, `#` comments.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, ParseError> {
    let mut p = Parser::new(text)?;
    let mut kb = KnowledgeBase::new();
    while !p.at_eof() {
        let prop = p.proposition()?;
        p.expect(&TokenKind::Dot)?;
        kb.add(prop);
    }
    Ok(kb)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { tokens: tokenize(text)?, pos: 0 })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_kind_at(&self, offset: usize) -> &TokenKind {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx].kind
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn at_eof(&self) -> bool {
        self.peek().kind == TokenKind::Eof
    }

    fn error(&self, expected: Vec<&str>) -> ParseError {
        self.error_owned(expected.into_iter().map(String::from).collect())
    }

    fn error_owned(&self, expected: Vec<String>) -> ParseError {
        let tok = self.peek();
        ParseError { line: tok.line, col: tok.col, found: tok.kind.describe(), expected }
    }

    fn expect(&mut self, kind: &TokenKind) -> Result<Token, ParseError> {
        if &self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.error_owned(vec![kind.describe()]))
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error(vec!["end of input"]))
        }
    }

    fn expect_ident(&mut self, what: &'static str) -> Result<String, ParseError> {
        match &self.peek().kind {
            TokenKind::Ident(_) => {
                let tok = self.bump();
                match tok.kind {
                    TokenKind::Ident(name) => Ok(name),
                    _ => unreachable!(),
                }
            }
            _ => Err(self.error(vec![what])),
        }
    }

    /// proposition := "(" IDENT "," IDENT ")" ":" IDENT
    ///              | IDENT ":" concept
    ///              | concept ("<=" | "==") concept
    fn proposition(&mut self) -> Result<Proposition, ParseError> {
        // A role assertion is the only form with `(` IDENT `,`.
        if self.peek().kind == TokenKind::LParen
            && matches!(self.peek_kind_at(1), TokenKind::Ident(_))
            && self.peek_kind_at(2) == &TokenKind::Comma
        {
            self.bump();
            let a = self.expect_ident("individual name")?;
            self.expect(&TokenKind::Comma)?;
            let b = self.expect_ident("individual name")?;
            self.expect(&TokenKind::RParen)?;
            self.expect(&TokenKind::Colon)?;
            let role = self.expect_ident("role name")?;
            return Ok(Proposition::RoleAssertion(a, b, role));
        }
        // A concept assertion is the only form with IDENT `:`.
        if matches!(self.peek().kind, TokenKind::Ident(_))
            && self.peek_kind_at(1) == &TokenKind::Colon
        {
            let a = self.expect_ident("individual name")?;
            self.expect(&TokenKind::Colon)?;
            let c = self.concept_top()?;
            return Ok(Proposition::ConceptAssertion(a, c));
        }
        let lhs = self.concept_top()?;
        match self.peek().kind {
            TokenKind::SubsumedBy => {
                self.bump();
                let rhs = self.concept_top()?;
                Ok(Proposition::Subsumption(lhs, rhs))
            }
            TokenKind::EqEq => {
                self.bump();
                let rhs = self.concept_top()?;
                Ok(Proposition::Equality(lhs, rhs))
            }
            _ => Err(self.error(vec!["`<=`", "`==`"])),
        }
    }

    /// concept := unary [("&" | "|") unary]
    ///
    /// One unparenthesized binary operator is allowed here; everything
    /// deeper must be parenthesized.
    fn concept_top(&mut self) -> Result<ConceptExpr, ParseError> {
        let lhs = self.concept_unary()?;
        match self.peek().kind {
            TokenKind::Amp => {
                self.bump();
                let rhs = self.concept_unary()?;
                Ok(ConceptExpr::And(Box::new(lhs), Box::new(rhs)))
            }
            TokenKind::Pipe => {
                self.bump();
                let rhs = self.concept_unary()?;
                Ok(ConceptExpr::Or(Box::new(lhs), Box::new(rhs)))
            }
            _ => Ok(lhs),
        }
    }

    /// unary := "top" | "bot" | IDENT | "~" unary | "(" concept ")"
    ///        | ("exists" | "forall") IDENT "." unary
    fn concept_unary(&mut self) -> Result<ConceptExpr, ParseError> {
        match self.peek().kind.clone() {
            TokenKind::Top => {
                self.bump();
                Ok(ConceptExpr::Top)
            }
            TokenKind::Bot => {
                self.bump();
                Ok(ConceptExpr::Bottom)
            }
            TokenKind::Ident(name) => {
                self.bump();
                Ok(ConceptExpr::Atomic(name))
            }
            TokenKind::Tilde => {
                self.bump();
                Ok(ConceptExpr::Not(Box::new(self.concept_unary()?)))
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.concept_top()?;
                self.expect(&TokenKind::RParen)?;
                Ok(inner)
            }
            TokenKind::Exists | TokenKind::Forall => {
                let quant = self.bump().kind;
                let role = self.expect_ident("role name")?;
                self.expect(&TokenKind::Dot)?;
                let body = Box::new(self.concept_unary()?);
                Ok(match quant {
                    TokenKind::Exists => ConceptExpr::Exists(role, body),
                    _ => ConceptExpr::Forall(role, body),
                })
            }
            _ => Err(self.error(vec![
                "`top`",
                "`bot`",
                "identifier",
                "`~`",
                "`(`",
                "`exists`",
                "`forall`",
            ])),
        }
    }
}
