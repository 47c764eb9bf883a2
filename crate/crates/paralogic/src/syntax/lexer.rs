//! Tokenizer for the ASCII knowledge-base syntax.

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Top,
    Bot,
    Exists,
    Forall,
    Tilde,
    Amp,
    Pipe,
    LParen,
    RParen,
    Dot,
    Colon,
    Comma,
    SubsumedBy,
    EqEq,
    Eof,
}

impl TokenKind {
    /// Short description used in error messages.
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(name) => format!("identifier `{name}`"),
            TokenKind::Top => "`top`".into(),
            TokenKind::Bot => "`bot`".into(),
            TokenKind::Exists => "`exists`".into(),
            TokenKind::Forall => "`forall`".into(),
            TokenKind::Tilde => "`~`".into(),
            TokenKind::Amp => "`&`".into(),
            TokenKind::Pipe => "`|`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::SubsumedBy => "`<=`".into(),
            TokenKind::EqEq => "`==`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

struct Cursor {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }
}

/// Tokenizes the whole input. `#` starts a comment that runs to end of line.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut cur = Cursor { chars: text.chars().collect(), i: 0, line: 1, col: 1 };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        let (line, col) = (cur.line, cur.col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                cur.bump();
            }
            '#' => {
                while let Some(c) = cur.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            }
            '~' | '&' | '|' | '(' | ')' | '.' | ':' | ',' => {
                cur.bump();
                let kind = match c {
                    '~' => TokenKind::Tilde,
                    '&' => TokenKind::Amp,
                    '|' => TokenKind::Pipe,
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    '.' => TokenKind::Dot,
                    ':' => TokenKind::Colon,
                    _ => TokenKind::Comma,
                };
                tokens.push(Token { kind, line, col });
            }
            '<' | '=' => {
                cur.bump();
                if cur.peek() == Some('=') {
                    cur.bump();
                    let kind = if c == '<' { TokenKind::SubsumedBy } else { TokenKind::EqEq };
                    tokens.push(Token { kind, line, col });
                } else {
                    let (found, expected) = if c == '<' {
                        ("`<`".to_string(), "`<=`".to_string())
                    } else {
                        ("`=`".to_string(), "`==`".to_string())
                    };
                    return Err(ParseError { line, col, found, expected: vec![expected] });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(c) = cur.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        cur.bump();
                    } else {
                        break;
                    }
                }
                let kind = match name.as_str() {
                    "top" => TokenKind::Top,
                    "bot" => TokenKind::Bot,
                    "exists" => TokenKind::Exists,
                    "forall" => TokenKind::Forall,
                    _ => TokenKind::Ident(name),
                };
                tokens.push(Token { kind, line, col });
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    found: format!("character `{other}`"),
                    expected: vec!["a token".into()],
                });
            }
        }
    }
    tokens.push(Token { kind: TokenKind::Eof, line: cur.line, col: cur.col });
    Ok(tokens)
}
