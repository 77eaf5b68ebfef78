//! Turtle-subset and N-Triples reading and writing.
//!
//! Supported Turtle: `@prefix` (and SPARQL-style `PREFIX`), `<IRI>`s,
//! prefixed names, `a`, the `;` and `,` abbreviations, double-quoted strings
//! with `^^datatype` or `@lang`, and `integer`/`true`/`false` shorthand.
//! Blank node labels are skolemized to `urn:skolem:b{n}`. Collections and
//! `[ ]` property lists are rejected.

mod lexer;
mod ntriples;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::graph::Graph;
use crate::term::{Iri, Literal, Term, Triple};
use crate::vocab::{rdf, xsd};

pub(crate) use lexer::{Lexer, Tok, Token};
pub use ntriples::{parse_ntriples, serialize_ntriples};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntactic,
    Semantic,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Lexical => "lexical",
            ParseErrorKind::Syntactic => "syntactic",
            ParseErrorKind::Semantic => "semantic",
        })
    }
}

/// Position (1-based) of the first offending character, plus a message.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind} error: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(
        line: usize,
        column: usize,
        kind: ParseErrorKind,
        message: impl Into<String>,
    ) -> Self {
        ParseError {
            line,
            column,
            kind,
            message: message.into(),
        }
    }
}

/// Prefix label to namespace IRI. Iterates in label order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    map: BTreeMap<String, Iri>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Binds `label`, replacing any earlier binding. Panics on a label that
    /// is not `[A-Za-z][A-Za-z0-9_-]*` or empty.
    pub fn insert(&mut self, label: impl Into<String>, namespace: Iri) -> Option<Iri> {
        let label = label.into();
        assert!(lexer::is_prefix_label(&label), "invalid prefix label {label:?}");
        self.map.insert(label, namespace)
    }

    pub fn get(&self, label: &str) -> Option<&Iri> {
        self.map.get(label)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// `prefix:local` expansion. `None` if the prefix is unbound or the
    /// result is not a valid IRI.
    pub fn expand(&self, prefix: &str, local: &str) -> Option<Iri> {
        let ns = self.map.get(prefix)?;
        Iri::new(format!("{}{}", ns.as_str(), local)).ok()
    }

    /// Shortest safe `prefix:local` rendering of `iri`, if any namespace fits.
    pub fn compact(&self, iri: &Iri) -> Option<String> {
        self.map
            .iter()
            .filter_map(|(label, ns)| {
                let local = iri.as_str().strip_prefix(ns.as_str())?;
                lexer::is_safe_local(local).then_some((local.len(), label, local))
            })
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)))
            .map(|(_, label, local)| format!("{label}:{local}"))
    }
}

/// One-token-lookahead stream over the lexer, with the shared term grammar.
pub(crate) struct TokenStream {
    lexer: Lexer,
    peeked: Option<Token>,
    skolem: HashMap<String, Iri>,
}

impl TokenStream {
    pub(crate) fn new(text: &str, allow_vars: bool) -> Result<Self, ParseError> {
        Ok(TokenStream {
            lexer: Lexer::new(text, allow_vars)?,
            peeked: None,
            skolem: HashMap::new(),
        })
    }

    pub(crate) fn peek(&mut self) -> Result<&Token, ParseError> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next_token()?);
        }
        Ok(self.peeked.as_ref().expect("just filled"))
    }

    pub(crate) fn next(&mut self) -> Result<Token, ParseError> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lexer.next_token(),
        }
    }

    pub(crate) fn expect_punct(&mut self, c: char) -> Result<Token, ParseError> {
        let t = self.next()?;
        if t.tok == Tok::Punct(c) {
            Ok(t)
        } else {
            Err(unexpected(&t, &format!("`{c}`")))
        }
    }

    pub(crate) fn eat_punct(&mut self, c: char) -> Result<bool, ParseError> {
        if self.peek()?.tok == Tok::Punct(c) {
            self.next()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub(crate) fn skolemize(&mut self, label: &str) -> Iri {
        let next = self.skolem.len() + 1;
        self.skolem
            .entry(label.to_owned())
            .or_insert_with(|| Iri::new(format!("urn:skolem:b{next}")).expect("valid skolem IRI"))
            .clone()
    }

    /// Reads the remainder of a `@prefix`/`PREFIX` directive after the
    /// keyword and binds it.
    pub(crate) fn prefix_directive(&mut self, prefixes: &mut PrefixMap) -> Result<(), ParseError> {
        let t = self.next()?;
        let label = match &t.tok {
            Tok::PName { prefix, local } if local.is_empty() => prefix.clone(),
            _ => return Err(unexpected(&t, "prefix label ending in `:`")),
        };
        let t = self.next()?;
        let Tok::IriRef(ns) = &t.tok else {
            return Err(unexpected(&t, "namespace IRI"));
        };
        let ns = absolute_iri(ns, &t)?;
        prefixes.insert(label, ns);
        Ok(())
    }
}

pub(crate) fn unexpected(t: &Token, wanted: &str) -> ParseError {
    let kind = match &t.tok {
        Tok::Punct('(') => {
            return ParseError::new(
                t.line,
                t.column,
                ParseErrorKind::Syntactic,
                "collections are not supported",
            )
        }
        Tok::Punct('[') => {
            return ParseError::new(
                t.line,
                t.column,
                ParseErrorKind::Syntactic,
                "blank node property lists are not supported",
            )
        }
        _ => ParseErrorKind::Syntactic,
    };
    ParseError::new(
        t.line,
        t.column,
        kind,
        format!("expected {wanted}, found {}", t.tok.describe()),
    )
}

pub(crate) fn absolute_iri(value: &str, at: &Token) -> Result<Iri, ParseError> {
    Iri::new(value).map_err(|e| ParseError::new(at.line, at.column, ParseErrorKind::Semantic, e.to_string()))
}

pub(crate) fn expand_pname(
    prefixes: &PrefixMap,
    prefix: &str,
    local: &str,
    at: &Token,
) -> Result<Iri, ParseError> {
    if prefixes.get(prefix).is_none() {
        return Err(ParseError::new(
            at.line,
            at.column,
            ParseErrorKind::Semantic,
            format!("undeclared prefix `{prefix}:`"),
        ));
    }
    prefixes.expand(prefix, local).ok_or_else(|| {
        ParseError::new(
            at.line,
            at.column,
            ParseErrorKind::Semantic,
            format!("`{prefix}:{local}` does not expand to a valid IRI"),
        )
    })
}

/// An IRI in `<...>` or prefixed form; `a` is accepted when `allow_a`.
pub(crate) fn read_iri(
    ts: &mut TokenStream,
    prefixes: &PrefixMap,
    allow_a: bool,
    wanted: &str,
) -> Result<Iri, ParseError> {
    let t = ts.next()?;
    match &t.tok {
        Tok::IriRef(v) => absolute_iri(v, &t),
        Tok::PName { prefix, local } => expand_pname(prefixes, prefix, local, &t),
        Tok::Word(w) if allow_a && w == "a" => Ok(rdf::type_()),
        _ => Err(unexpected(&t, wanted)),
    }
}

/// Object-position term starting with the already-consumed token `t`.
pub(crate) fn read_object_from(
    ts: &mut TokenStream,
    prefixes: &PrefixMap,
    t: Token,
) -> Result<Term, ParseError> {
    match &t.tok {
        Tok::IriRef(v) => Ok(absolute_iri(v, &t)?.into()),
        Tok::PName { prefix, local } => Ok(expand_pname(prefixes, prefix, local, &t)?.into()),
        Tok::BlankNode(label) => Ok(ts.skolemize(label).into()),
        Tok::Str(lexical) => {
            let lexical = lexical.clone();
            match ts.peek()?.tok.clone() {
                Tok::LangTag(tag) => {
                    let at = ts.next()?;
                    Literal::lang_string(&lexical, &tag)
                        .map(Term::from)
                        .map_err(|e| ParseError::new(at.line, at.column, ParseErrorKind::Semantic, e.to_string()))
                }
                Tok::DoubleCaret => {
                    let at = ts.next()?;
                    let dt = read_iri(ts, prefixes, false, "datatype IRI")?;
                    Literal::typed(&lexical, dt)
                        .map(Term::from)
                        .map_err(|e| ParseError::new(at.line, at.column, ParseErrorKind::Semantic, e.to_string()))
                }
                _ => Ok(Literal::string(&lexical).into()),
            }
        }
        Tok::Integer(i) => Ok(Literal::typed(i, xsd::integer()).expect("xsd:integer").into()),
        Tok::Word(w) if w == "true" || w == "false" => {
            Ok(Literal::typed(w, xsd::boolean()).expect("xsd:boolean").into())
        }
        _ => Err(unexpected(&t, "object term")),
    }
}

/// Parses a Turtle-subset document. Returns the graph and the prefixes in
/// force at the end of the document.
pub fn parse_turtle(text: &str) -> Result<(Graph, PrefixMap), ParseError> {
    let mut ts = TokenStream::new(text, false)?;
    let mut prefixes = PrefixMap::new();
    let mut graph = Graph::new();
    loop {
        let t = ts.next()?;
        match &t.tok {
            Tok::Eof => break,
            Tok::AtPrefix => {
                ts.prefix_directive(&mut prefixes)?;
                ts.expect_punct('.')?;
            }
            Tok::Word(w) if w.eq_ignore_ascii_case("prefix") => {
                ts.prefix_directive(&mut prefixes)?;
            }
            _ => {
                let subject = match &t.tok {
                    Tok::IriRef(v) => absolute_iri(v, &t)?,
                    Tok::PName { prefix, local } => expand_pname(&prefixes, prefix, local, &t)?,
                    Tok::BlankNode(label) => ts.skolemize(label),
                    _ => return Err(unexpected(&t, "subject, `@prefix` or end of input")),
                };
                predicate_object_list(&mut ts, &prefixes, &subject, &mut graph)?;
                ts.expect_punct('.')?;
            }
        }
    }
    Ok((graph, prefixes))
}

fn predicate_object_list(
    ts: &mut TokenStream,
    prefixes: &PrefixMap,
    subject: &Iri,
    graph: &mut Graph,
) -> Result<(), ParseError> {
    loop {
        let predicate = read_iri(ts, prefixes, true, "predicate")?;
        loop {
            let t = ts.next()?;
            let object = read_object_from(ts, prefixes, t)?;
            graph.insert(Triple::new(subject.clone(), predicate.clone(), object));
            if !ts.eat_punct(',')? {
                break;
            }
        }
        if !ts.eat_punct(';')? {
            return Ok(());
        }
        // `;` may be repeated or trail before the final `.`
        while ts.eat_punct(';')? {}
        if ts.peek()?.tok == Tok::Punct('.') {
            return Ok(());
        }
    }
}

fn render_iri(iri: &Iri, prefixes: &PrefixMap) -> String {
    prefixes.compact(iri).unwrap_or_else(|| iri.to_string())
}

fn render_term(term: &Term, prefixes: &PrefixMap) -> String {
    match term {
        Term::Iri(iri) => render_iri(iri, prefixes),
        Term::Literal(lit) => {
            let mut out = String::from("\"");
            crate::term::escape_string_into(lit.lexical(), &mut out);
            out.push('"');
            if let Some(lang) = lit.lang() {
                out.push('@');
                out.push_str(lang);
            } else if !lit.is_plain_string() {
                out.push_str("^^");
                out.push_str(&render_iri(lit.datatype(), prefixes));
            }
            out
        }
    }
}

/// Deterministic Turtle: prefixes by label, one block per subject, subjects,
/// predicates and objects in N-Triples rendering order.
pub fn serialize_turtle(graph: &Graph, prefixes: &PrefixMap) -> String {
    let mut out = String::new();
    for (label, ns) in prefixes.iter() {
        out.push_str(&format!("@prefix {label}: {ns} .\n"));
    }
    let triples: Vec<Triple> = graph.iter().collect();
    let mut i = 0;
    while i < triples.len() {
        if !out.is_empty() {
            out.push('\n');
        }
        let subject = &triples[i].subject;
        out.push_str(&render_iri(subject, prefixes));
        let mut first_predicate = true;
        while i < triples.len() && &triples[i].subject == subject {
            let predicate = &triples[i].predicate;
            out.push_str(if first_predicate { " " } else { " ;\n    " });
            first_predicate = false;
            if predicate.as_str() == rdf::TYPE {
                out.push('a');
            } else {
                out.push_str(&render_iri(predicate, prefixes));
            }
            let mut first_object = true;
            while i < triples.len() && &triples[i].subject == subject && &triples[i].predicate == predicate {
                out.push_str(if first_object { " " } else { " , " });
                first_object = false;
                out.push_str(&render_term(&triples[i].object, prefixes));
                i += 1;
            }
        }
        out.push_str(" .\n");
    }
    out
}
