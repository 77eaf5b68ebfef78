//! Basic graph pattern queries and the competency-question catalog.
//!
//! Query text:
//!
//! ```text
//! PREFIX ex: <http://example.org/>
//! SELECT ?s ?k WHERE {
//!     ?s a cbiont:Remark ; cbiont:hasRemark ?k .
//!     FILTER(?k IN ("Question", "Answer"))
//! }
//! ```
//!
//! The standard prefixes are predeclared. `SELECT *` projects every variable
//! in order of first appearance. Results always have DISTINCT semantics and
//! are sorted by the N-Triples rendering of the projected terms.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::graph::Graph;
use crate::term::{Iri, Term, Triple};
use crate::turtle::{
    absolute_iri, expand_pname, read_object_from, unexpected, ParseError, ParseErrorKind,
    PrefixMap, Tok, Token, TokenStream,
};
use crate::vocab::{rdf, standard_prefixes};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable(Arc<str>);

impl Variable {
    /// `name` is given without the leading `?`.
    pub fn new(name: impl AsRef<str>) -> Self {
        Variable(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Term(Term),
    Var(Variable),
}

impl PatternTerm {
    pub fn var(&self) -> Option<&Variable> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }
}

impl From<Variable> for PatternTerm {
    fn from(v: Variable) -> Self {
        PatternTerm::Var(v)
    }
}

impl From<Term> for PatternTerm {
    fn from(t: Term) -> Self {
        PatternTerm::Term(t)
    }
}

impl From<Iri> for PatternTerm {
    fn from(iri: Iri) -> Self {
        PatternTerm::Term(iri.into())
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Term(t) => fmt::Display::fmt(t, f),
            PatternTerm::Var(v) => fmt::Display::fmt(v, f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.positions().into_iter().filter_map(PatternTerm::var)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Filter {
    Equality(Variable, Term),
    InSet(Variable, Vec<Term>),
}

impl Filter {
    pub fn variable(&self) -> &Variable {
        match self {
            Filter::Equality(v, _) | Filter::InSet(v, _) => v,
        }
    }

    pub fn accepts(&self, value: &Term) -> bool {
        match self {
            Filter::Equality(_, t) => t == value,
            Filter::InSet(_, set) => set.contains(value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("the pattern set is empty")]
    NoPatterns,
    #[error("variable {0} does not occur in any pattern")]
    UnboundVariable(Variable),
    #[error("a literal cannot be a subject or predicate")]
    LiteralPosition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectQuery {
    projection: Vec<Variable>,
    patterns: Vec<TriplePattern>,
    filters: Vec<Filter>,
}

impl SelectQuery {
    pub fn new(
        projection: Vec<Variable>,
        patterns: Vec<TriplePattern>,
        filters: Vec<Filter>,
    ) -> Result<Self, QueryError> {
        if patterns.is_empty() {
            return Err(QueryError::NoPatterns);
        }
        for p in &patterns {
            let literal = |t: &PatternTerm| matches!(t, PatternTerm::Term(Term::Literal(_)));
            if literal(&p.subject) || literal(&p.predicate) {
                return Err(QueryError::LiteralPosition);
            }
        }
        let used: BTreeSet<&Variable> = patterns.iter().flat_map(TriplePattern::variables).collect();
        for v in projection.iter().chain(filters.iter().map(Filter::variable)) {
            if !used.contains(v) {
                return Err(QueryError::UnboundVariable(v.clone()));
            }
        }
        Ok(SelectQuery {
            projection,
            patterns,
            filters,
        })
    }

    pub fn projection(&self) -> &[Variable] {
        &self.projection
    }

    pub fn patterns(&self) -> &[TriplePattern] {
        &self.patterns
    }

    pub fn filters(&self) -> &[Filter] {
        &self.filters
    }

    /// Same query with the patterns in a different order.
    pub fn with_patterns(&self, patterns: Vec<TriplePattern>) -> Result<Self, QueryError> {
        SelectQuery::new(self.projection.clone(), patterns, self.filters.clone())
    }
}

impl fmt::Display for SelectQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SELECT")?;
        for v in &self.projection {
            write!(f, " {v}")?;
        }
        f.write_str(" WHERE {\n")?;
        for p in &self.patterns {
            writeln!(f, "    {} {} {} .", p.subject, p.predicate, p.object)?;
        }
        for filter in &self.filters {
            match filter {
                Filter::Equality(v, t) => writeln!(f, "    FILTER({v} = {t})")?,
                Filter::InSet(v, set) => {
                    let items: Vec<String> = set.iter().map(Term::to_string).collect();
                    writeln!(f, "    FILTER({v} IN ({}))", items.join(", "))?;
                }
            }
        }
        f.write_str("}\n")
    }
}

/// One solution, total over the projection, in projection order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BindingSet {
    values: Vec<(Variable, Term)>,
}

impl BindingSet {
    pub fn get(&self, var: &str) -> Option<&Term> {
        self.values.iter().find(|(v, _)| v.name() == var).map(|(_, t)| t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, &Term)> {
        self.values.iter().map(|(v, t)| (v, t))
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.values.iter().map(|(_, t)| t)
    }
}

/// Order in which the patterns are joined: repeatedly the pattern with the
/// most positions bound by constants or earlier patterns.
pub fn join_order(patterns: &[TriplePattern]) -> Vec<usize> {
    let mut bound: BTreeSet<&Variable> = BTreeSet::new();
    let mut remaining: Vec<usize> = (0..patterns.len()).collect();
    let mut order = Vec::with_capacity(patterns.len());
    while !remaining.is_empty() {
        let score = |i: usize| {
            patterns[i]
                .positions()
                .iter()
                .filter(|t| t.var().is_none_or(|v| bound.contains(v)))
                .count()
        };
        let (slot, &best) = remaining
            .iter()
            .enumerate()
            .max_by(|a, b| score(*a.1).cmp(&score(*b.1)).then(b.1.cmp(a.1)))
            .expect("non-empty");
        remaining.remove(slot);
        bound.extend(patterns[best].variables());
        order.push(best);
    }
    order
}

type Env = HashMap<Variable, Term>;

fn resolve<'a>(t: &'a PatternTerm, env: &'a Env) -> Option<&'a Term> {
    match t {
        PatternTerm::Term(t) => Some(t),
        PatternTerm::Var(v) => env.get(v),
    }
}

/// Binds the pattern's variables against `t`; `None` on a clash (a
/// variable repeated within the pattern with different values).
fn unify(pattern: &TriplePattern, t: &Triple, env: &Env) -> Option<Vec<(Variable, Term)>> {
    let values = [Term::Iri(t.subject.clone()), Term::Iri(t.predicate.clone()), t.object.clone()];
    let mut new: Vec<(Variable, Term)> = Vec::new();
    for (pos, value) in pattern.positions().into_iter().zip(values) {
        let PatternTerm::Var(v) = pos else { continue };
        if env.contains_key(v) {
            continue;
        }
        match new.iter().find(|(w, _)| w == v) {
            Some((_, existing)) if *existing != value => return None,
            Some(_) => {}
            None => new.push((v.clone(), value)),
        }
    }
    Some(new)
}

struct Evaluator<'a> {
    graph: &'a Graph,
    query: &'a SelectQuery,
    order: Vec<usize>,
    rows: BTreeSet<Vec<Term>>,
}

impl Evaluator<'_> {
    fn search(&mut self, depth: usize, env: &mut Env) {
        let Some(&index) = self.order.get(depth) else {
            let row = self.query.projection.iter().map(|v| env[v].clone()).collect();
            self.rows.insert(row);
            return;
        };
        let pattern = &self.query.patterns[index];
        let s = match resolve(&pattern.subject, env) {
            Some(Term::Iri(iri)) => Some(iri.clone()),
            Some(Term::Literal(_)) => return,
            None => None,
        };
        let p = match resolve(&pattern.predicate, env) {
            Some(Term::Iri(iri)) => Some(iri.clone()),
            Some(Term::Literal(_)) => return,
            None => None,
        };
        let o = resolve(&pattern.object, env).cloned();
        for t in self.graph.match_pattern(s.as_ref(), p.as_ref(), o.as_ref()) {
            let Some(new) = unify(pattern, &t, env) else { continue };
            let rejected = new.iter().any(|(v, value)| {
                self.query.filters.iter().any(|f| f.variable() == v && !f.accepts(value))
            });
            if rejected {
                continue;
            }
            for (v, value) in &new {
                env.insert(v.clone(), value.clone());
            }
            self.search(depth + 1, env);
            for (v, _) in &new {
                env.remove(v);
            }
        }
    }
}

/// All distinct solutions, sorted by the rendering of the projected terms.
pub fn evaluate(query: &SelectQuery, graph: &Graph) -> Vec<BindingSet> {
    let mut ev = Evaluator {
        graph,
        query,
        order: join_order(&query.patterns),
        rows: BTreeSet::new(),
    };
    ev.search(0, &mut Env::new());
    ev.rows
        .into_iter()
        .map(|row| BindingSet {
            values: query.projection.iter().cloned().zip(row).collect(),
        })
        .collect()
}

/// Parses query text against the standard prefixes.
pub fn parse_query(text: &str) -> Result<SelectQuery, ParseError> {
    QueryParser {
        ts: TokenStream::new(text, true)?,
        prefixes: standard_prefixes(),
        seen: Vec::new(),
    }
    .query()
}

struct QueryParser {
    ts: TokenStream,
    prefixes: PrefixMap,
    /// Pattern variables in order of first appearance.
    seen: Vec<Variable>,
}

fn is_keyword(t: &Token, kw: &str) -> bool {
    matches!(&t.tok, Tok::Word(w) if w.eq_ignore_ascii_case(kw))
}

fn semantic(t: &Token, message: impl Into<String>) -> ParseError {
    ParseError::new(t.line, t.column, ParseErrorKind::Semantic, message)
}

enum Projection {
    All,
    Vars(Vec<(Variable, Token)>),
}

impl QueryParser {
    fn query(mut self) -> Result<SelectQuery, ParseError> {
        loop {
            let t = self.ts.next()?;
            match &t.tok {
                Tok::AtPrefix => {
                    self.ts.prefix_directive(&mut self.prefixes)?;
                    self.ts.expect_punct('.')?;
                }
                _ if is_keyword(&t, "prefix") => self.ts.prefix_directive(&mut self.prefixes)?,
                _ if is_keyword(&t, "select") => break,
                _ => return Err(unexpected(&t, "`PREFIX` or `SELECT`")),
            }
        }

        let projection = self.projection()?;

        if is_keyword(self.ts.peek()?, "where") {
            self.ts.next()?;
        }
        self.ts.expect_punct('{')?;
        let mut patterns = Vec::new();
        let mut filters: Vec<(Filter, Token)> = Vec::new();
        let close = loop {
            let t = self.ts.next()?;
            match &t.tok {
                Tok::Punct('}') => break t,
                Tok::Punct('.') if !patterns.is_empty() || !filters.is_empty() => {}
                _ if is_keyword(&t, "filter") => filters.push((self.filter()?, t)),
                _ => self.triples(t, &mut patterns)?,
            }
        };
        let t = self.ts.next()?;
        if t.tok != Tok::Eof {
            return Err(unexpected(&t, "end of query"));
        }
        if patterns.is_empty() {
            return Err(semantic(&close, "the pattern set is empty"));
        }

        let projection: Vec<Variable> = match projection {
            Projection::All => self.seen.clone(),
            Projection::Vars(vars) => {
                for (v, at) in &vars {
                    if !self.seen.contains(v) {
                        return Err(semantic(at, format!("projected variable {v} does not occur in any pattern")));
                    }
                }
                vars.into_iter().map(|(v, _)| v).collect()
            }
        };
        for (f, at) in &filters {
            if !self.seen.contains(f.variable()) {
                return Err(semantic(at, format!("filtered variable {} does not occur in any pattern", f.variable())));
            }
        }
        let filters = filters.into_iter().map(|(f, _)| f).collect();
        Ok(SelectQuery::new(projection, patterns, filters).expect("checked while parsing"))
    }

    fn projection(&mut self) -> Result<Projection, ParseError> {
        let mut vars: Vec<(Variable, Token)> = Vec::new();
        loop {
            let t = self.ts.peek()?.clone();
            match &t.tok {
                Tok::Var(name) => {
                    self.ts.next()?;
                    let v = Variable::new(name);
                    if vars.iter().any(|(w, _)| *w == v) {
                        return Err(semantic(&t, format!("variable {v} is projected twice")));
                    }
                    vars.push((v, t));
                }
                Tok::Punct('{') if !vars.is_empty() => return Ok(Projection::Vars(vars)),
                _ if is_keyword(&t, "where") && !vars.is_empty() => return Ok(Projection::Vars(vars)),
                Tok::Punct('*') if vars.is_empty() => {
                    self.ts.next()?;
                    return Ok(Projection::All);
                }
                _ => return Err(unexpected(&t, "variable")),
            }
        }
    }

    fn note(&mut self, v: &Variable) {
        if !self.seen.contains(v) {
            self.seen.push(v.clone());
        }
    }

    fn node(&mut self, t: Token, position: &str) -> Result<PatternTerm, ParseError> {
        match &t.tok {
            Tok::Var(name) => {
                let v = Variable::new(name);
                self.note(&v);
                Ok(PatternTerm::Var(v))
            }
            Tok::IriRef(v) => Ok(absolute_iri(v, &t)?.into()),
            Tok::PName { prefix, local } => Ok(expand_pname(&self.prefixes, prefix, local, &t)?.into()),
            Tok::Word(w) if w == "a" && position == "predicate" => Ok(rdf::type_().into()),
            Tok::BlankNode(_) => Err(ParseError::new(
                t.line,
                t.column,
                ParseErrorKind::Syntactic,
                "blank nodes are not allowed in queries",
            )),
            Tok::Str(_) | Tok::Integer(_) if position != "object" => {
                Err(semantic(&t, format!("a literal cannot be the {position}")))
            }
            Tok::Word(w) if (w == "true" || w == "false") && position != "object" => {
                Err(semantic(&t, format!("a literal cannot be the {position}")))
            }
            _ if position == "object" => Ok(read_object_from(&mut self.ts, &self.prefixes, t)?.into()),
            _ => Err(unexpected(&t, position)),
        }
    }

    fn triples(&mut self, first: Token, out: &mut Vec<TriplePattern>) -> Result<(), ParseError> {
        let subject = self.node(first, "subject")?;
        loop {
            let t = self.ts.next()?;
            let predicate = self.node(t, "predicate")?;
            loop {
                let t = self.ts.next()?;
                let object = self.node(t, "object")?;
                out.push(TriplePattern {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                });
                if !self.ts.eat_punct(',')? {
                    break;
                }
            }
            if !self.ts.eat_punct(';')? {
                return Ok(());
            }
            // A trailing `;` before `.` or `}` is allowed.
            if matches!(self.ts.peek()?.tok, Tok::Punct('.') | Tok::Punct('}')) {
                return Ok(());
            }
        }
    }

    fn constant(&mut self) -> Result<Term, ParseError> {
        let t = self.ts.next()?;
        match &t.tok {
            Tok::Var(_) => Err(unexpected(&t, "constant term")),
            Tok::Word(w) if w == "a" => Err(unexpected(&t, "constant term")),
            _ => read_object_from(&mut self.ts, &self.prefixes, t),
        }
    }

    fn filter(&mut self) -> Result<Filter, ParseError> {
        self.ts.expect_punct('(')?;
        let t = self.ts.next()?;
        let Tok::Var(name) = &t.tok else {
            return Err(unexpected(&t, "variable"));
        };
        let var = Variable::new(name);
        let t = self.ts.next()?;
        let filter = if t.tok == Tok::Punct('=') {
            Filter::Equality(var, self.constant()?)
        } else if is_keyword(&t, "in") {
            self.ts.expect_punct('(')?;
            let mut set = vec![self.constant()?];
            while self.ts.eat_punct(',')? {
                set.push(self.constant()?);
            }
            self.ts.expect_punct(')')?;
            Filter::InSet(var, set)
        } else {
            return Err(unexpected(&t, "`=` or `IN`"));
        };
        self.ts.expect_punct(')')?;
        Ok(filter)
    }
}

/// The competency questions the ontology is meant to answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CompetencyQuestion {
    Cq1,
    Cq2,
    Cq3,
    Cq4,
    Cq5,
    Cq6,
    Cq7,
    Cq8,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown competency question `{0}`; expected CQ1 to CQ8")]
pub struct UnknownCompetencyQuestion(pub String);

impl CompetencyQuestion {
    pub const ALL: [CompetencyQuestion; 8] = [
        Self::Cq1,
        Self::Cq2,
        Self::Cq3,
        Self::Cq4,
        Self::Cq5,
        Self::Cq6,
        Self::Cq7,
        Self::Cq8,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn from_number(n: usize) -> Option<Self> {
        Self::ALL.get(n.checked_sub(1)?).copied()
    }

    pub fn question(self) -> &'static str {
        match self {
            Self::Cq1 => "Which location is the collaborative session held at?",
            Self::Cq2 => "What is the date and time of the session?",
            Self::Cq3 => "Which collaborators participated, and what are their affiliations?",
            Self::Cq4 => "What are the purpose and outputs of the session? (answers given)",
            Self::Cq5 => "What is the theme of the session, and which concepts describe it?",
            Self::Cq6 => "What content and topics were discussed?",
            Self::Cq7 => "Which research aspect does the session address?",
            Self::Cq8 => "Which phase does the session belong to?",
        }
    }

    fn template(self) -> (&'static str, &'static str) {
        match self {
            Self::Cq1 => ("?place", "$S cbiont:has_location ?place ."),
            Self::Cq2 => (
                "?instant ?datetime",
                "$S cbiont:has_time ?instant . ?instant time:inXSDDateTime ?datetime .",
            ),
            Self::Cq3 => (
                "?person ?org",
                "$S cbiont:owned_by ?person . ?person cbiont:affiliated_with ?org .",
            ),
            Self::Cq4 => (
                "?remark ?text",
                "$S cbiont:contains_remark ?remark .
                 ?remark cbiont:hasRemark ?kind ; cbiont:hasDescription ?text .
                 FILTER(?kind = \"Answer\")",
            ),
            Self::Cq5 => ("?form ?concept", "$S cbiont:has_type ?form . ?form a ?concept ."),
            Self::Cq6 => (
                "?remark ?kind ?text",
                "$S cbiont:contains_remark ?remark .
                 ?remark cbiont:hasRemark ?kind ; cbiont:hasDescription ?text .",
            ),
            Self::Cq7 => ("?aspect", "$S cbiont:belongs_to ?aspect ."),
            Self::Cq8 => ("?phase", "$S cbiont:associated_with ?phase ."),
        }
    }

    /// Query text for one session, or for every session (projecting
    /// `?session` first) when `session` is `None`.
    pub fn text(self, session: Option<&Iri>) -> String {
        let (vars, body) = self.template();
        let (vars, subject) = match session {
            Some(iri) => (vars.to_owned(), iri.to_string()),
            None => (format!("?session {vars}"), "?session".to_owned()),
        };
        format!("SELECT {vars} WHERE {{\n    {}\n}}\n", body.replace("$S", &subject))
    }
}

impl std::str::FromStr for CompetencyQuestion {
    type Err = UnknownCompetencyQuestion;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s
            .strip_prefix("CQ")
            .or_else(|| s.strip_prefix("cq"))
            .unwrap_or(s);
        digits
            .parse()
            .ok()
            .and_then(Self::from_number)
            .ok_or_else(|| UnknownCompetencyQuestion(s.to_owned()))
    }
}

impl fmt::Display for CompetencyQuestion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CQ{}", self.number())
    }
}

pub fn competency_query(cq: CompetencyQuestion, session: Option<&Iri>) -> SelectQuery {
    parse_query(&cq.text(session)).expect("catalog queries parse")
}

/// Header of `?var` names, then one tab-separated row per solution.
pub fn results_to_tsv(projection: &[Variable], rows: &[BindingSet]) -> String {
    let mut out = String::new();
    let header: Vec<String> = projection.iter().map(Variable::to_string).collect();
    out.push_str(&header.join("\t"));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.terms().map(Term::to_string).collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

/// `{"variables": [...], "rows": [{var: rendering}]}` with N-Triples
/// renderings as values.
pub fn results_to_json(projection: &[Variable], rows: &[BindingSet]) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|(v, t)| (v.name().to_owned(), serde_json::Value::String(t.to_string())))
                .collect::<serde_json::Map<_, _>>()
                .into()
        })
        .collect();
    serde_json::json!({
        "variables": projection.iter().map(Variable::name).collect::<Vec<_>>(),
        "rows": rows,
    })
}
