//! Tokenizer shared by the Turtle, N-Triples and query parsers.

use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    /// Contents of `<...>`, not yet validated as an absolute IRI.
    IriRef(String),
    PName { prefix: String, local: String },
    BlankNode(String),
    /// Unescaped contents of a `"..."` literal.
    Str(String),
    LangTag(String),
    DoubleCaret,
    Integer(String),
    Var(String),
    /// Bare word such as `a`, `true`, `SELECT`.
    Word(String),
    AtPrefix,
    Punct(char),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::IriRef(s) => format!("IRI <{s}>"),
            Tok::PName { prefix, local } => format!("prefixed name `{prefix}:{local}`"),
            Tok::BlankNode(l) => format!("blank node `_:{l}`"),
            Tok::Str(_) => "string literal".to_owned(),
            Tok::LangTag(t) => format!("language tag `@{t}`"),
            Tok::DoubleCaret => "`^^`".to_owned(),
            Tok::Integer(i) => format!("integer `{i}`"),
            Tok::Var(v) => format!("variable `?{v}`"),
            Tok::Word(w) => format!("`{w}`"),
            Tok::AtPrefix => "`@prefix`".to_owned(),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::Eof => "end of input".to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    allow_vars: bool,
    /// Set when the last token was a string literal ending right here, so an
    /// immediately following `@` starts a language tag.
    string_ended_at: Option<usize>,
}

impl Lexer {
    pub(crate) fn new(text: &str, allow_vars: bool) -> Result<Self, ParseError> {
        if text.starts_with('\u{FEFF}') {
            return Err(ParseError::new(
                1,
                1,
                ParseErrorKind::Lexical,
                "byte order mark is not allowed",
            ));
        }
        Ok(Lexer {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            allow_vars,
            string_ended_at: None,
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, column: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(line, column, ParseErrorKind::Lexical, msg)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' | '\r' | '\n' => {
                    self.bump();
                }
                '#' => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    pub(crate) fn next_token(&mut self) -> Result<Token, ParseError> {
        let lang_allowed = self.string_ended_at == Some(self.pos);
        self.string_ended_at = None;
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let tok = |tok| Ok(Token { tok, line, column });
        let Some(c) = self.peek() else {
            return tok(Tok::Eof);
        };
        match c {
            '<' => {
                self.bump();
                let iri = self.lex_iri(line, column)?;
                tok(Tok::IriRef(iri))
            }
            '"' => {
                if self.peek_at(1) == Some('"') && self.peek_at(2) == Some('"') {
                    return Err(ParseError::new(
                        line,
                        column,
                        ParseErrorKind::Syntactic,
                        "long string literals are not supported",
                    ));
                }
                self.bump();
                let s = self.lex_string(line, column)?;
                self.string_ended_at = Some(self.pos);
                tok(Tok::Str(s))
            }
            '@' => {
                self.bump();
                let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
                if lang_allowed {
                    if !crate::term::is_language_tag(&word) {
                        return Err(self.error(line, column, format!("invalid language tag `@{word}`")));
                    }
                    return tok(Tok::LangTag(word));
                }
                match word.as_str() {
                    "prefix" => tok(Tok::AtPrefix),
                    "base" => Err(ParseError::new(
                        line,
                        column,
                        ParseErrorKind::Syntactic,
                        "@base is not supported",
                    )),
                    _ => Err(self.error(line, column, format!("unexpected `@{word}`"))),
                }
            }
            '^' => {
                self.bump();
                if self.peek() == Some('^') {
                    self.bump();
                    tok(Tok::DoubleCaret)
                } else {
                    Err(self.error(line, column, "expected `^^`"))
                }
            }
            '?' | '$' if self.allow_vars => {
                self.bump();
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                if name.is_empty() || name.starts_with(|c: char| c.is_ascii_digit()) {
                    return Err(self.error(line, column, "invalid variable name"));
                }
                tok(Tok::Var(name))
            }
            '*' if self.allow_vars => {
                self.bump();
                tok(Tok::Punct(c))
            }
            '.' | ';' | ',' | '{' | '}' | '(' | ')' | '[' | ']' | '=' => {
                self.bump();
                tok(Tok::Punct(c))
            }
            '0'..='9' | '+' | '-' => self.lex_number(line, column),
            c if c.is_alphabetic() || c == '_' || c == ':' => self.lex_name(line, column),
            c => Err(self.error(line, column, format!("unexpected character {c:?}"))),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    fn lex_iri(&mut self, line: usize, column: usize) -> Result<String, ParseError> {
        let mut s = String::new();
        loop {
            let (l, col) = (self.line, self.column);
            match self.bump() {
                None | Some('\n') => return Err(self.error(line, column, "unterminated IRI")),
                Some('>') => return Ok(s),
                Some(c)
                    if c.is_whitespace()
                        || c.is_control()
                        || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') =>
                {
                    return Err(self.error(l, col, format!("character {c:?} is not allowed in an IRI")));
                }
                Some(c) => s.push(c),
            }
        }
    }

    fn lex_string(&mut self, line: usize, column: usize) -> Result<String, ParseError> {
        let mut s = String::new();
        loop {
            let (l, col) = (self.line, self.column);
            match self.bump() {
                None | Some('\n') | Some('\r') => {
                    return Err(self.error(line, column, "unterminated string literal"))
                }
                Some('"') => return Ok(s),
                Some('\\') => {
                    let esc = self.bump();
                    match esc {
                        Some('"') => s.push('"'),
                        Some('\\') => s.push('\\'),
                        Some('n') => s.push('\n'),
                        Some('t') => s.push('\t'),
                        Some('r') => s.push('\r'),
                        Some('u') => {
                            let hex: String = (0..4).filter_map(|_| self.bump()).collect();
                            let ch = (hex.len() == 4 && hex.chars().all(|c| c.is_ascii_hexdigit()))
                                .then(|| u32::from_str_radix(&hex, 16).ok())
                                .flatten()
                                .and_then(char::from_u32)
                                .ok_or_else(|| self.error(l, col, format!("invalid escape `\\u{hex}`")))?;
                            s.push(ch);
                        }
                        Some(other) => {
                            return Err(self.error(l, col, format!("unsupported escape `\\{other}`")))
                        }
                        None => return Err(self.error(line, column, "unterminated string literal")),
                    }
                }
                Some(c) => s.push(c),
            }
        }
    }

    fn lex_number(&mut self, line: usize, column: usize) -> Result<Token, ParseError> {
        let mut s = String::new();
        if let Some(sign @ ('+' | '-')) = self.peek() {
            s.push(sign);
            self.bump();
        }
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.error(line, column, "expected digits"));
        }
        s.push_str(&digits);
        match self.peek() {
            Some('.') if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => {
                Err(self.error(line, column, "decimal literals are not supported"))
            }
            Some('e' | 'E') => Err(self.error(line, column, "double literals are not supported")),
            Some(c) if c.is_alphanumeric() || c == '_' || c == ':' => {
                Err(self.error(self.line, self.column, format!("unexpected character {c:?} after number")))
            }
            _ => Ok(Token {
                tok: Tok::Integer(s),
                line,
                column,
            }),
        }
    }

    fn lex_name(&mut self, line: usize, column: usize) -> Result<Token, ParseError> {
        let start = self.pos;
        let mut end = start;
        while let Some(&c) = self.chars.get(end) {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':') {
                end += 1;
            } else {
                break;
            }
        }
        // A trailing `.` terminates the statement rather than the name.
        while end > start && self.chars[end - 1] == '.' {
            end -= 1;
        }
        let word: String = self.chars[start..end].iter().collect();
        for _ in start..end {
            self.bump();
        }
        let tok = if let Some(label) = word.strip_prefix("_:") {
            if label.is_empty() || !label.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.')) {
                return Err(self.error(line, column, format!("invalid blank node label `{word}`")));
            }
            Tok::BlankNode(label.to_owned())
        } else if let Some((prefix, local)) = word.split_once(':') {
            if !is_prefix_label(prefix) {
                return Err(self.error(line, column, format!("invalid prefix label `{prefix}`")));
            }
            if local.starts_with(['-', '.']) {
                return Err(self.error(line, column, format!("invalid local name `{local}`")));
            }
            Tok::PName {
                prefix: prefix.to_owned(),
                local: local.to_owned(),
            }
        } else {
            if word.contains('.') {
                return Err(self.error(line, column, format!("unexpected `{word}`")));
            }
            Tok::Word(word)
        };
        Ok(Token { tok, line, column })
    }
}

/// Empty, or `[A-Za-z][A-Za-z0-9_-]*`.
pub(crate) fn is_prefix_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphabetic() => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        }
        Some(_) => false,
    }
}

/// Local names the serializer may emit in prefixed form.
pub(crate) fn is_safe_local(local: &str) -> bool {
    let bytes = local.as_bytes();
    !bytes.is_empty()
        && (bytes[0].is_ascii_alphanumeric() || bytes[0] == b'_')
        && bytes
            .iter()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-' | b'.'))
        && !local.ends_with('.')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(text: &str) -> Vec<Tok> {
        let mut lx = Lexer::new(text, true).unwrap();
        let mut out = Vec::new();
        loop {
            let t = lx.next_token().unwrap();
            if t.tok == Tok::Eof {
                return out;
            }
            out.push(t.tok);
        }
    }

    #[test]
    fn trailing_dot_is_punctuation() {
        assert_eq!(
            toks("c:a c:b.c c:d."),
            vec![
                Tok::PName { prefix: "c".into(), local: "a".into() },
                Tok::PName { prefix: "c".into(), local: "b.c".into() },
                Tok::PName { prefix: "c".into(), local: "d".into() },
                Tok::Punct('.'),
            ]
        );
    }

    #[test]
    fn lang_tag_only_after_string() {
        assert_eq!(
            toks(r#""x"@en @prefix"#),
            vec![Tok::Str("x".into()), Tok::LangTag("en".into()), Tok::AtPrefix]
        );
    }

    #[test]
    fn integers_and_rejected_decimals() {
        assert_eq!(toks("-12 ."), vec![Tok::Integer("-12".into()), Tok::Punct('.')]);
        assert_eq!(toks("5."), vec![Tok::Integer("5".into()), Tok::Punct('.')]);
        let mut lx = Lexer::new("1.5", false).unwrap();
        assert_eq!(lx.next_token().unwrap_err().kind, ParseErrorKind::Lexical);
    }

    #[test]
    fn string_escapes() {
        assert_eq!(
            toks(r#""a\"\\\n\t\ré""#),
            vec![Tok::Str("a\"\\\n\t\r\u{e9}".into())]
        );
        let mut lx = Lexer::new(r#""\q""#, false).unwrap();
        let err = lx.next_token().unwrap_err();
        assert_eq!((err.line, err.column, err.kind), (1, 2, ParseErrorKind::Lexical));
    }

    #[test]
    fn safe_locals() {
        assert!(is_safe_local("CBI_Form"));
        assert!(is_safe_local("a.b"));
        assert!(!is_safe_local("a."));
        assert!(!is_safe_local("session/1"));
        assert!(!is_safe_local(""));
        assert!(!is_safe_local("-x"));
    }
}
