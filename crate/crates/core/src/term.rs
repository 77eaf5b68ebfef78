//! RDF terms and triples.
//!
//! The model has no blank nodes: every node is either an [`Iri`] or a
//! [`Literal`]. Terms order by their N-Triples rendering, which is what every
//! sorted output in the crate relies on.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::vocab::{rdf, xsd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("IRI is empty")]
    EmptyIri,
    #[error("IRI `{0}` has no scheme separator `:`")]
    MissingScheme(String),
    #[error("IRI `{iri}` contains forbidden character {ch:?}")]
    ForbiddenChar { iri: String, ch: char },
    #[error("invalid language tag `{0}`")]
    InvalidLanguageTag(String),
    #[error("rdf:langString literals require a language tag")]
    LangStringWithoutTag,
}

/// An absolute IRI. Equality is codepoint equality, no normalization.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, TermError> {
        let value = value.as_ref();
        if value.is_empty() {
            return Err(TermError::EmptyIri);
        }
        // Characters that cannot appear between `<` and `>` in N-Triples are
        // refused as well, so every Iri renders and re-parses unchanged.
        if let Some(ch) = value.chars().find(|c| {
            c.is_whitespace()
                || c.is_control()
                || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
        }) {
            return Err(TermError::ForbiddenChar {
                iri: value.to_owned(),
                ch,
            });
        }
        match value.find(':') {
            Some(i) if i > 0 => Ok(Iri(Arc::from(value))),
            _ => Err(TermError::MissingScheme(value.to_owned())),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Ord for Iri {
    fn cmp(&self, other: &Self) -> Ordering {
        // `<a>` vs `<ab>` compares `>` against `b`, so append the closing
        // bracket before comparing.
        let a = self.0.bytes().chain(std::iter::once(b'>'));
        let b = other.0.bytes().chain(std::iter::once(b'>'));
        a.cmp(b)
    }
}

impl PartialOrd for Iri {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A literal: lexical form, datatype and optional language tag.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Iri,
    lang: Option<Arc<str>>,
}

impl Literal {
    /// An `xsd:string` literal.
    pub fn string(lexical: impl AsRef<str>) -> Self {
        Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: xsd::string(),
            lang: None,
        }
    }

    pub fn typed(lexical: impl AsRef<str>, datatype: Iri) -> Result<Self, TermError> {
        if datatype.as_str() == rdf::LANG_STRING {
            return Err(TermError::LangStringWithoutTag);
        }
        Ok(Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype,
            lang: None,
        })
    }

    pub fn lang_string(lexical: impl AsRef<str>, lang: impl AsRef<str>) -> Result<Self, TermError> {
        let lang = lang.as_ref();
        if !is_language_tag(lang) {
            return Err(TermError::InvalidLanguageTag(lang.to_owned()));
        }
        Ok(Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: rdf::lang_string(),
            lang: Some(Arc::from(lang)),
        })
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn lang(&self) -> Option<&str> {
        self.lang.as_deref()
    }

    pub fn is_plain_string(&self) -> bool {
        self.lang.is_none() && self.datatype.as_str() == xsd::STRING
    }

    /// Canonical N-Triples form: `"lex"`, `"lex"@tag` or `"lex"^^<dt>`.
    pub fn to_ntriples(&self) -> String {
        let mut out = String::with_capacity(self.lexical.len() + 2);
        out.push('"');
        escape_string_into(&self.lexical, &mut out);
        out.push('"');
        if let Some(lang) = &self.lang {
            out.push('@');
            out.push_str(lang);
        } else if self.datatype.as_str() != xsd::STRING {
            out.push_str("^^<");
            out.push_str(self.datatype.as_str());
            out.push('>');
        }
        out
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_ntriples().cmp(&other.to_ntriples())
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `[a-zA-Z]+ ('-' [a-zA-Z0-9]+)*`
pub(crate) fn is_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let first = parts.next().unwrap_or("");
    !first.is_empty()
        && first.bytes().all(|b| b.is_ascii_alphabetic())
        && parts.all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_alphanumeric()))
}

/// Escapes a lexical form for a double-quoted string.
pub(crate) fn escape_string_into(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => {
                out.push_str(&format!("\\u{:04X}", c as u32));
            }
            c => out.push(c),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            Term::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            Term::Iri(_) => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => fmt::Display::fmt(iri, f),
            Term::Literal(lit) => fmt::Display::fmt(lit, f),
        }
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Term::Iri(a), Term::Iri(b)) => a.cmp(b),
            (Term::Literal(a), Term::Literal(b)) => a.cmp(b),
            // `"` sorts before `<`.
            (Term::Literal(_), Term::Iri(_)) => Ordering::Less,
            (Term::Iri(_), Term::Literal(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A triple whose subject and predicate are IRIs by construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Iri, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple {
            subject,
            predicate,
            object: object.into(),
        }
    }

    /// `<s> <p> <o> .` without a trailing newline.
    pub fn to_ntriples(&self) -> String {
        format!("{} {} {} .", self.subject, self.predicate, self.object)
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}
