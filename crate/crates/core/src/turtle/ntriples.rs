//! Canonical N-Triples: one `<s> <p> <o> .` per line, lines sorted.

use super::{absolute_iri, read_object_from, unexpected, ParseError, ParseErrorKind, PrefixMap, Tok, TokenStream};
use crate::graph::Graph;
use crate::term::{Iri, Triple};

pub fn serialize_ntriples(graph: &Graph) -> String {
    let mut lines: Vec<String> = graph.iter().map(|t| t.to_ntriples()).collect();
    lines.sort_unstable();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_ntriples(text: &str) -> Result<Graph, ParseError> {
    let mut ts = TokenStream::new(text, false)?;
    let no_prefixes = PrefixMap::new();
    let mut graph = Graph::new();
    let mut last_line = 0;
    loop {
        let t = ts.next()?;
        if t.tok == Tok::Eof {
            return Ok(graph);
        }
        if t.line == last_line {
            return Err(ParseError::new(
                t.line,
                t.column,
                ParseErrorKind::Syntactic,
                "only one triple per line is allowed",
            ));
        }
        let line = t.line;
        let subject = node(&mut ts, t, "subject IRI")?;
        let t = ts.next()?;
        let predicate = match &t.tok {
            Tok::IriRef(v) => absolute_iri(v, &t)?,
            _ => return Err(unexpected(&t, "predicate IRI")),
        };
        let t = ts.next()?;
        let object = match &t.tok {
            Tok::IriRef(_) | Tok::BlankNode(_) | Tok::Str(_) => read_object_from(&mut ts, &no_prefixes, t)?,
            _ => return Err(unexpected(&t, "object IRI or literal")),
        };
        let dot = ts.expect_punct('.')?;
        if dot.line != line {
            return Err(ParseError::new(
                dot.line,
                dot.column,
                ParseErrorKind::Syntactic,
                "a triple must end on the line it starts",
            ));
        }
        last_line = line;
        graph.insert(Triple::new(subject, predicate, object));
    }
}

fn node(ts: &mut TokenStream, t: super::Token, wanted: &str) -> Result<Iri, ParseError> {
    match &t.tok {
        Tok::IriRef(v) => absolute_iri(v, &t),
        Tok::BlankNode(label) => Ok(ts.skolemize(label)),
        _ => Err(unexpected(&t, wanted)),
    }
}
