//! Tokenizer shared by the Turtle and query parsers.
//!
//! It accepts the union of both token sets. Characters that neither grammar
//! uses (operators, path symbols) become [`Tok::Punct`] so each parser can
//! report what construct it ran into instead of a bare lexing failure.

use std::fmt;

/// A syntax error with a 1-based position in the source text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseDiagnostic {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    IriRef(String),
    PName {
        prefix: String,
        local: String,
    },
    Blank(String),
    Var(String),
    Str(String),
    /// `@word`: a directive or a language tag depending on context.
    At(String),
    DoubleCaret,
    Dot,
    Semicolon,
    Comma,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Star,
    Ident(String),
    Number(String),
    Punct(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::IriRef(iri) => write!(f, "<{iri}>"),
            Tok::PName { prefix, local } => write!(f, "{prefix}:{local}"),
            Tok::Blank(label) => write!(f, "_:{label}"),
            Tok::Var(name) => write!(f, "?{name}"),
            Tok::Str(_) => f.write_str("string literal"),
            Tok::At(word) => write!(f, "@{word}"),
            Tok::DoubleCaret => f.write_str("^^"),
            Tok::Dot => f.write_str("'.'"),
            Tok::Semicolon => f.write_str("';'"),
            Tok::Comma => f.write_str("','"),
            Tok::LBrace => f.write_str("'{'"),
            Tok::RBrace => f.write_str("'}'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Ident(word) => write!(f, "'{word}'"),
            Tok::Number(n) => write!(f, "number {n}"),
            Tok::Punct(c) => write!(f, "'{c}'"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub fn error(&self, message: impl Into<String>) -> ParseDiagnostic {
        ParseDiagnostic::new(self.line, self.column, message)
    }
}

struct Lexer {
    chars: Vec<char>,
    pos: Vec<(usize, usize)>,
    i: usize,
    end: (usize, usize),
}

/// Splits `text` into tokens. A leading byte-order mark is skipped.
pub(crate) fn tokenize(text: &str) -> Result<(Vec<Token>, (usize, usize)), ParseDiagnostic> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let chars: Vec<char> = text.chars().collect();
    let mut pos = Vec::with_capacity(chars.len());
    let (mut line, mut col) = (1, 1);
    for &c in &chars {
        pos.push((line, col));
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    let mut lexer = Lexer {
        chars,
        pos,
        i: 0,
        end: (line, col),
    };
    let mut tokens = Vec::new();
    while let Some(token) = lexer.next_token()? {
        tokens.push(token);
    }
    Ok((tokens, lexer.end))
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

impl Lexer {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.i + offset).copied()
    }

    fn here(&self) -> (usize, usize) {
        self.pos.get(self.i).copied().unwrap_or(self.end)
    }

    fn error_here(&self, message: impl Into<String>) -> ParseDiagnostic {
        let (line, column) = self.here();
        ParseDiagnostic::new(line, column, message)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.i += 1;
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.i += 1;
                }
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Result<Option<Token>, ParseDiagnostic> {
        self.skip_trivia();
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let (line, column) = self.here();
        let tok = match c {
            '<' => match self.iri_ref()? {
                Some(iri) => Tok::IriRef(iri),
                None => {
                    self.i += 1;
                    Tok::Punct('<')
                }
            },
            '"' | '\'' => Tok::Str(self.string(c)?),
            '_' if self.peek_at(1) == Some(':') => {
                self.i += 2;
                let label = self.take_while_name(true);
                if label.is_empty() {
                    return Err(self.error_here("empty blank node label"));
                }
                Tok::Blank(label)
            }
            '?' | '$' => {
                self.i += 1;
                let name: String = self.take(|c| c.is_alphanumeric() || c == '_');
                if name.is_empty() {
                    Tok::Punct(c)
                } else {
                    Tok::Var(name)
                }
            }
            '@' => {
                self.i += 1;
                let word = self.take(|c| c.is_ascii_alphanumeric() || c == '-');
                if word.is_empty() {
                    return Err(self.error_here("expected a directive or language tag after '@'"));
                }
                Tok::At(word)
            }
            '^' if self.peek_at(1) == Some('^') => {
                self.i += 2;
                Tok::DoubleCaret
            }
            '.' => self.single(Tok::Dot),
            ';' => self.single(Tok::Semicolon),
            ',' => self.single(Tok::Comma),
            '{' => self.single(Tok::LBrace),
            '}' => self.single(Tok::RBrace),
            '(' => self.single(Tok::LParen),
            ')' => self.single(Tok::RParen),
            '[' => self.single(Tok::LBracket),
            ']' => self.single(Tok::RBracket),
            '*' => self.single(Tok::Star),
            c if c.is_ascii_digit() => Tok::Number(self.number()),
            '+' | '-' if self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) => {
                Tok::Number(self.number())
            }
            ':' => {
                self.i += 1;
                Tok::PName {
                    prefix: String::new(),
                    local: self.local_name()?,
                }
            }
            c if c.is_alphabetic() || c == '_' => self.name()?,
            c if c.is_ascii_punctuation() => self.single(Tok::Punct(c)),
            c => return Err(self.error_here(format!("unexpected character {c:?}"))),
        };
        Ok(Some(Token { tok, line, column }))
    }

    fn single(&mut self, tok: Tok) -> Tok {
        self.i += 1;
        tok
    }

    fn take(&mut self, pred: impl Fn(char) -> bool) -> String {
        let start = self.i;
        while self.peek().is_some_and(&pred) {
            self.i += 1;
        }
        self.chars[start..self.i].iter().collect()
    }

    /// Name characters plus inner dots; a trailing dot is left unread.
    fn take_while_name(&mut self, allow_dots: bool) -> String {
        let start = self.i;
        while let Some(c) = self.peek() {
            if is_name_char(c) || (allow_dots && c == '.') {
                self.i += 1;
            } else {
                break;
            }
        }
        while self.i > start && self.chars[self.i - 1] == '.' {
            self.i -= 1;
        }
        self.chars[start..self.i].iter().collect()
    }

    fn name(&mut self) -> Result<Tok, ParseDiagnostic> {
        let start = self.i;
        let prefix = self.take_while_name(true);
        if self.peek() == Some(':') {
            self.i += 1;
            let local = self.local_name()?;
            return Ok(Tok::PName { prefix, local });
        }
        // Plain words stop at the first dot.
        self.i = start;
        let word = self.take(|c| c.is_alphanumeric() || c == '_');
        Ok(Tok::Ident(word))
    }

    fn local_name(&mut self) -> Result<String, ParseDiagnostic> {
        let mut out = String::new();
        // Number of trailing '.' chars in `out`, which must be given back.
        let mut trailing_dots = 0;
        while let Some(c) = self.peek() {
            if is_name_char(c) || c == ':' {
                out.push(c);
                trailing_dots = 0;
                self.i += 1;
            } else if c == '.' {
                out.push(c);
                trailing_dots += 1;
                self.i += 1;
            } else if c == '%' {
                let hex: String = (1..=2).filter_map(|k| self.peek_at(k)).collect();
                if hex.len() != 2 || !hex.chars().all(|h| h.is_ascii_hexdigit()) {
                    return Err(self.error_here("invalid percent escape in local name"));
                }
                out.push('%');
                out.push_str(&hex);
                trailing_dots = 0;
                self.i += 3;
            } else if c == '\\' {
                match self.peek_at(1) {
                    Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => {
                        out.push(e);
                        trailing_dots = 0;
                        self.i += 2;
                    }
                    _ => return Err(self.error_here("invalid escape in local name")),
                }
            } else {
                break;
            }
        }
        for _ in 0..trailing_dots {
            out.pop();
            self.i -= 1;
        }
        Ok(out)
    }

    fn number(&mut self) -> String {
        let start = self.i;
        if matches!(self.peek(), Some('+' | '-')) {
            self.i += 1;
        }
        self.take(|c| c.is_ascii_digit());
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
            self.take(|c| c.is_ascii_digit());
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            self.i += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.i += 1;
            }
            self.take(|c| c.is_ascii_digit());
        }
        self.chars[start..self.i].iter().collect()
    }

    /// Reads `<...>`. Returns `None` (without consuming) when the text is not an
    /// IRI, e.g. a `<` comparison operator followed by whitespace.
    fn iri_ref(&mut self) -> Result<Option<String>, ParseDiagnostic> {
        let start = self.i;
        self.i += 1;
        let mut out = String::new();
        loop {
            match self.peek() {
                None => {
                    self.i = start;
                    return Ok(None);
                }
                Some('>') => {
                    self.i += 1;
                    return Ok(Some(out));
                }
                Some('\\') => {
                    self.i += 1;
                    out.push(self.unicode_escape()?);
                }
                Some(c) if c.is_whitespace() => {
                    self.i = start;
                    return Ok(None);
                }
                Some(c) if c.is_control() || "<\"{}|^`".contains(c) => {
                    return Err(self.error_here(format!("invalid character {c:?} in IRI")));
                }
                Some(c) => {
                    out.push(c);
                    self.i += 1;
                }
            }
        }
    }

    /// After a backslash: `uXXXX` or `UXXXXXXXX`.
    fn unicode_escape(&mut self) -> Result<char, ParseDiagnostic> {
        let width = match self.peek() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error_here("expected \\u or \\U escape")),
        };
        let hex: String = (1..=width).filter_map(|k| self.peek_at(k)).collect();
        let code = (hex.len() == width)
            .then(|| u32::from_str_radix(&hex, 16).ok())
            .flatten()
            .and_then(char::from_u32)
            .ok_or_else(|| self.error_here("invalid unicode escape"))?;
        self.i += 1 + width;
        Ok(code)
    }

    fn string(&mut self, quote: char) -> Result<String, ParseDiagnostic> {
        let long = self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        let open = self.here();
        self.i += if long { 3 } else { 1 };
        let mut out = String::new();
        loop {
            let Some(c) = self.peek() else {
                return Err(ParseDiagnostic::new(
                    open.0,
                    open.1,
                    "unterminated string literal",
                ));
            };
            if c == quote {
                if !long {
                    self.i += 1;
                    return Ok(out);
                }
                if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                    // Quotes directly before the closing delimiter belong to the content.
                    let mut run = 3;
                    while self.peek_at(run) == Some(quote) && run < 5 {
                        run += 1;
                    }
                    for _ in 3..run {
                        out.push(quote);
                    }
                    self.i += run;
                    return Ok(out);
                }
                out.push(c);
                self.i += 1;
            } else if c == '\\' {
                self.i += 1;
                let escaped = match self.peek() {
                    Some('t') => '\t',
                    Some('b') => '\u{8}',
                    Some('n') => '\n',
                    Some('r') => '\r',
                    Some('f') => '\u{c}',
                    Some('"') => '"',
                    Some('\'') => '\'',
                    Some('\\') => '\\',
                    Some('u' | 'U') => {
                        out.push(self.unicode_escape()?);
                        continue;
                    }
                    _ => return Err(self.error_here("invalid escape sequence in string")),
                };
                out.push(escaped);
                self.i += 1;
            } else if !long && (c == '\n' || c == '\r') {
                return Err(self.error_here("line break in single-line string literal"));
            } else {
                out.push(c);
                self.i += 1;
            }
        }
    }
}
