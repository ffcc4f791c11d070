//! The `.rkb` knowledge-base format.
//!
//! One directive per line:
//!
//! ```text
//! class Bird Penguin            # one or more class names
//! term tweety                   # one or more individuals
//! pair c1 urn_of_b18 b18        # c1 names the pair <urn_of_b18, b18>
//! member tweety Penguin
//! subset Penguin Bird           # sub first, then super
//! product UrnBall = Urns x Balls
//! sample s10 Draws              # s10 is a sample drawn from Draws
//! subsample s10 s100            # s10 is contained in s100
//! equiv "toss in Heads" "me in NotChocolate"
//! stat Flier Bird = 0.9         # %(Flier, Bird): target first, then reference
//! stat Flier Bird in [4/5, 19/20]
//! extensional Urn1 { b1 b2 b3 } # may span several lines
//! ```
//!
//! A `#` at the start of a line, or a `#` surrounded by whitespace, starts a
//! comment. Anywhere else `#` is an identifier character, so `#18` is a
//! valid name. Declarations may appear in any order.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::interval::Interval;
use crate::kb::{KbError, KnowledgeBase};
use crate::model::{is_valid_id, ClassId, Fact, Sentence, StatStatement, TermId};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Malformed text.
    Syntax,
    /// Undeclared, invalid or clashing identifiers.
    Reference,
    /// Well-formed facts that contradict each other.
    Inconsistency,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.token.is_empty() {
            write!(f, " (at `{}`)", self.token)?;
        }
        Ok(())
    }
}

/// Every problem found in one document, in line order. Never empty.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseErrors(pub Vec<ParseError>);

impl ParseErrors {
    /// True when every error is an inconsistency among well-formed facts.
    pub fn is_inconsistency(&self) -> bool {
        self.0
            .iter()
            .all(|e| e.kind == ParseErrorKind::Inconsistency)
    }
}

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("query must have the form `<term> in <Class>`: {0}")]
    Syntax(String),
    #[error("undeclared term `{0}`")]
    UnknownTerm(String),
    #[error("undeclared class `{0}`")]
    UnknownClass(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Quoted(String),
    Sym(char),
    Newline,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

impl Token {
    fn text(&self) -> String {
        match &self.tok {
            Tok::Word(w) => w.clone(),
            Tok::Quoted(q) => format!("\"{q}\""),
            Tok::Sym(c) => c.to_string(),
            Tok::Newline => String::new(),
        }
    }
}

const SYMBOLS: &[char] = &['=', '[', ']', ',', '{', '}'];

fn comment_start(chars: &[char]) -> Option<usize> {
    let mut in_quote = false;
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '"' => in_quote = !in_quote,
            '#' if !in_quote => {
                let at_line_start = chars[..i].iter().all(|c| c.is_whitespace());
                let spaced = i > 0
                    && chars[i - 1].is_whitespace()
                    && chars.get(i + 1).is_none_or(|c| c.is_whitespace());
                if at_line_start || spaced {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn tokenize(text: &str, errors: &mut Vec<ParseError>) -> Vec<Token> {
    let mut tokens = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let mut chars: Vec<char> = raw_line.chars().collect();
        if let Some(cut) = comment_start(&chars) {
            chars.truncate(cut);
        }
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if SYMBOLS.contains(&c) {
                tokens.push(Token {
                    tok: Tok::Sym(c),
                    line,
                    column,
                });
                i += 1;
            } else if c == '"' {
                match chars[i + 1..].iter().position(|&c| c == '"') {
                    Some(len) => {
                        let body: String = chars[i + 1..i + 1 + len].iter().collect();
                        tokens.push(Token {
                            tok: Tok::Quoted(body),
                            line,
                            column,
                        });
                        i += len + 2;
                    }
                    None => {
                        errors.push(ParseError {
                            line,
                            column,
                            message: "unterminated quoted sentence".into(),
                            token: chars[i..].iter().collect(),
                            kind: ParseErrorKind::Syntax,
                        });
                        i = chars.len();
                    }
                }
            } else {
                let start = i;
                while i < chars.len()
                    && !chars[i].is_whitespace()
                    && !SYMBOLS.contains(&chars[i])
                    && chars[i] != '"'
                {
                    i += 1;
                }
                tokens.push(Token {
                    tok: Tok::Word(chars[start..i].iter().collect()),
                    line,
                    column,
                });
            }
        }
        tokens.push(Token {
            tok: Tok::Newline,
            line,
            column: chars.len() + 1,
        });
    }
    tokens
}

/// Parses `subject in Class`.
pub fn parse_sentence(text: &str) -> Result<Sentence, String> {
    let words: Vec<&str> = text.split_whitespace().collect();
    match words.as_slice() {
        [subject, "in", class] => {
            for id in [subject, class] {
                if !is_valid_id(id) {
                    return Err(format!("`{id}` is not a valid identifier"));
                }
            }
            Ok(Sentence::new(*subject, *class))
        }
        _ => Err(format!("`{}` is not an atomic sentence", text.trim())),
    }
}

struct DirectiveParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    errors: Vec<ParseError>,
}

type Located = (Fact, Vec<Token>);

impl<'a> DirectiveParser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if !self.at_end() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, token: &Token, message: impl Into<String>) -> ParseError {
        ParseError {
            line: token.line,
            column: token.column,
            message: message.into(),
            token: token.text(),
            kind: ParseErrorKind::Syntax,
        }
    }

    fn skip_line(&mut self) {
        while !self.at_end() {
            if self.bump().tok == Tok::Newline {
                break;
            }
        }
    }

    fn id(&mut self, what: &str) -> Result<(String, Token), ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Word(w) if is_valid_id(w) => Ok((w.clone(), t)),
            _ => Err(self.syntax(&t, format!("expected {what}"))),
        }
    }

    fn sym(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.bump();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            Err(self.syntax(&t, format!("expected `{c}`")))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Word(w) if w == kw => Ok(()),
            _ => Err(self.syntax(&t, format!("expected `{kw}`"))),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Word(w) => w
                .parse::<Rational>()
                .map_err(|e| self.syntax(&t, format!("malformed rational: {e}"))),
            _ => Err(self.syntax(&t, "expected a rational number")),
        }
    }

    fn end_of_line(&mut self) -> Result<(), ParseError> {
        let t = self.bump();
        if t.tok == Tok::Newline || self.at_end() && t.tok == Tok::Newline {
            Ok(())
        } else {
            Err(self.syntax(&t, "unexpected trailing input"))
        }
    }

    fn sentence(&mut self) -> Result<(Sentence, Token), ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Quoted(q) => parse_sentence(q)
                .map(|s| (s, t.clone()))
                .map_err(|m| self.syntax(&t, m)),
            _ => Err(self.syntax(&t, "expected a quoted sentence like \"a in B\"")),
        }
    }

    /// Parses one directive; returns the facts it declares with the tokens
    /// that name their identifiers.
    fn directive(&mut self) -> Result<Vec<Located>, ParseError> {
        let head = self.bump();
        let keyword = match &head.tok {
            Tok::Word(w) => w.clone(),
            _ => return Err(self.syntax(&head, "expected a directive")),
        };
        let mut toks = vec![head.clone()];
        let facts = match keyword.as_str() {
            "class" | "term" => {
                let mut facts = Vec::new();
                while self.peek().tok != Tok::Newline && !self.at_end() {
                    let (id, t) = self.id("an identifier")?;
                    let fact = if keyword == "class" {
                        Fact::Class(ClassId::new(id))
                    } else {
                        Fact::Term(TermId::new(id))
                    };
                    facts.push((fact, vec![head.clone(), t]));
                }
                if facts.is_empty() {
                    return Err(self.syntax(&head, format!("`{keyword}` needs at least one name")));
                }
                facts
            }
            "pair" => {
                let (name, a) = self.id("a pair name")?;
                let (first, b) = self.id("a term")?;
                let (second, c) = self.id("a term")?;
                toks.extend([a, b, c]);
                vec![(
                    Fact::Pair {
                        name: name.into(),
                        first: first.into(),
                        second: second.into(),
                    },
                    toks,
                )]
            }
            "member" | "subset" | "sample" | "subsample" => {
                let (x, a) = self.id("an identifier")?;
                let (y, b) = self.id("an identifier")?;
                toks.extend([a, b]);
                let fact = match keyword.as_str() {
                    "member" => Fact::Member {
                        term: x.into(),
                        class: y.into(),
                    },
                    "subset" => Fact::Subset {
                        sub: x.into(),
                        sup: y.into(),
                    },
                    "sample" => Fact::Sample {
                        term: x.into(),
                        population: y.into(),
                    },
                    _ => Fact::Subsample {
                        sub: x.into(),
                        sup: y.into(),
                    },
                };
                vec![(fact, toks)]
            }
            "product" => {
                let (product, a) = self.id("a product class")?;
                self.sym('=')?;
                let (left, b) = self.id("a class")?;
                self.keyword("x")?;
                let (right, c) = self.id("a class")?;
                toks.extend([a, b, c]);
                vec![(
                    Fact::Product {
                        product: product.into(),
                        left: left.into(),
                        right: right.into(),
                    },
                    toks,
                )]
            }
            "equiv" => {
                let (s, a) = self.sentence()?;
                let (t, b) = self.sentence()?;
                toks.extend([a, b]);
                vec![(Fact::Equiv(s, t), toks)]
            }
            "stat" => {
                let (target, a) = self.id("a target class")?;
                let (reference, b) = self.id("a reference class")?;
                toks.extend([a, b]);
                let op = self.bump();
                let bounds = match &op.tok {
                    Tok::Sym('=') => {
                        let p = self.rational()?;
                        (p, p)
                    }
                    Tok::Word(w) if w == "in" => {
                        self.sym('[')?;
                        let lo = self.rational()?;
                        self.sym(',')?;
                        let hi = self.rational()?;
                        self.sym(']')?;
                        (lo, hi)
                    }
                    _ => return Err(self.syntax(&op, "expected `= p` or `in [lo, hi]`")),
                };
                let interval = Interval::new(bounds.0, bounds.1).map_err(|e| {
                    self.syntax(&op, format!("malformed statistical statement: {e}"))
                })?;
                vec![(
                    Fact::Stat(StatStatement {
                        target: target.into(),
                        reference: reference.into(),
                        interval,
                    }),
                    toks,
                )]
            }
            "extensional" => {
                let (class, a) = self.id("a class")?;
                toks.push(a);
                self.sym('{')?;
                let mut members = Vec::new();
                loop {
                    let t = self.peek().clone();
                    match &t.tok {
                        Tok::Sym('}') => {
                            self.bump();
                            break;
                        }
                        Tok::Newline if !self.at_end() && self.pos + 1 < self.tokens.len() => {
                            self.bump();
                        }
                        Tok::Newline => return Err(self.syntax(&t, "unclosed `{`")),
                        _ => {
                            let (m, mt) = self.id("a member term or `}`")?;
                            members.push(TermId::new(m));
                            toks.push(mt);
                        }
                    }
                }
                vec![(
                    Fact::Extensional {
                        class: class.into(),
                        members,
                    },
                    toks,
                )]
            }
            other => return Err(self.syntax(&head, format!("unknown directive `{other}`"))),
        };
        self.end_of_line()?;
        Ok(facts)
    }

    fn run(mut self) -> (Vec<Located>, Vec<ParseError>) {
        let mut out = Vec::new();
        while !self.at_end() {
            if self.peek().tok == Tok::Newline {
                self.bump();
                continue;
            }
            match self.directive() {
                Ok(facts) => out.extend(facts),
                Err(e) => {
                    self.errors.push(e);
                    // The failing token may already be the newline.
                    if self.pos > 0 && self.tokens[self.pos - 1].tok != Tok::Newline {
                        self.skip_line();
                    }
                }
            }
        }
        (out, self.errors)
    }
}

fn error_ids(e: &KbError) -> Vec<String> {
    match e {
        KbError::InvalidId { id, .. } | KbError::Redeclared { id, .. } => vec![id.clone()],
        KbError::UndeclaredClass { id, .. } => vec![id.to_string()],
        KbError::UndeclaredTerm { id, .. } => vec![id.to_string()],
        KbError::CyclicPair { name, .. } => vec![name.to_string()],
        KbError::ConflictingStat { target, .. } => vec![target.to_string()],
        KbError::SubsetCycle { cycle, .. } => vec![cycle[0].to_string()],
        KbError::DuplicateProduct { product, .. } => vec![product.to_string()],
        KbError::NonPairProductMember { term, .. } => vec![term.to_string()],
        KbError::NotASample { term, .. } | KbError::SelfSubsample { term, .. } => {
            vec![term.to_string()]
        }
        KbError::DuplicateExtension { class, .. } => vec![class.to_string()],
    }
}

/// Parses a whole document. On failure, every error found is returned.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, ParseErrors> {
    let mut errors = Vec::new();
    let tokens = tokenize(text, &mut errors);
    let (facts, syntax_errors) = DirectiveParser {
        tokens: &tokens,
        pos: 0,
        errors: Vec::new(),
    }
    .run();
    errors.extend(syntax_errors);

    let mut builder = KnowledgeBase::builder();
    let mut located: HashMap<Fact, Vec<Token>> = HashMap::new();
    for (fact, toks) in facts {
        builder.add(fact.clone());
        located.entry(fact).or_insert(toks);
    }

    if !errors.is_empty() {
        // Still report reference problems among the facts that did parse.
        if let Err(kb_errors) = builder.build() {
            errors.extend(
                kb_errors
                    .iter()
                    .filter(|e| !e.is_inconsistency())
                    .map(|e| locate(e, &located)),
            );
        }
        errors.sort_by_key(|e| (e.line, e.column));
        return Err(ParseErrors(errors));
    }

    builder.build().map_err(|kb_errors| {
        let mut errors: Vec<ParseError> = kb_errors.iter().map(|e| locate(e, &located)).collect();
        errors.sort_by_key(|e| (e.line, e.column));
        ParseErrors(errors)
    })
}

fn locate(e: &KbError, located: &HashMap<Fact, Vec<Token>>) -> ParseError {
    let kind = if e.is_inconsistency() {
        ParseErrorKind::Inconsistency
    } else {
        ParseErrorKind::Reference
    };
    let toks = located.get(e.fact()).map(Vec::as_slice).unwrap_or(&[]);
    let ids = error_ids(e);
    let hit = toks
        .iter()
        .find(|t| {
            let text = t.text();
            ids.iter().any(|id| {
                *id == text || text.contains(&format!("{id} ")) || text.contains(&format!(" {id}"))
            })
        })
        .or_else(|| toks.first());
    match hit {
        Some(t) => ParseError {
            line: t.line,
            column: t.column,
            message: e.to_string(),
            token: t.text(),
            kind,
        },
        None => ParseError {
            line: 1,
            column: 1,
            message: e.to_string(),
            token: String::new(),
            kind,
        },
    }
}

/// Parses a query sentence and checks its ids against `kb`.
pub fn parse_query(text: &str, kb: &KnowledgeBase) -> Result<Sentence, QueryError> {
    let s = parse_sentence(text).map_err(QueryError::Syntax)?;
    if !kb.is_term(&s.subject) {
        return Err(QueryError::UnknownTerm(s.subject.to_string()));
    }
    if !kb.is_class(&s.class) {
        return Err(QueryError::UnknownClass(s.class.to_string()));
    }
    Ok(s)
}

/// Canonical text for `kb`: one directive per line in [`KnowledgeBase::facts`]
/// order. Statistics are always written as fractions.
pub fn serialize_kb(kb: &KnowledgeBase) -> String {
    kb.facts().iter().map(|f| format!("{f}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: &str, hi: &str) -> Interval {
        Interval::new(lo.parse().unwrap(), hi.parse().unwrap()).unwrap()
    }

    #[test]
    fn penguin_example() {
        let kb = parse_kb(
            "class Bird\nclass Penguin\nsubset Penguin Bird\nterm tweety\nmember tweety Penguin",
        )
        .unwrap();
        assert_eq!(kb.class_count(), 2);
        assert_eq!(kb.subset_facts().count(), 1);
        assert_eq!(kb.memberships().count(), 1);
        let again = parse_kb(&serialize_kb(&kb)).unwrap();
        assert_eq!(again, kb);
    }

    #[test]
    fn stat_forms() {
        let kb = parse_kb("class Black Room\nstat Black Room = 1/2").unwrap();
        assert_eq!(
            kb.stat(&"Black".into(), &"Room".into()),
            Some(iv("1/2", "1/2"))
        );

        let kb = parse_kb("class Pacifist Quaker\nstat Pacifist Quaker in [0.9, 0.9]").unwrap();
        assert_eq!(
            kb.stat(&"Pacifist".into(), &"Quaker".into()),
            Some(iv("9/10", "9/10"))
        );

        let kb = parse_kb("class A B\nstat A B in [0.4, 3/5]").unwrap();
        assert!(serialize_kb(&kb).contains("stat A B in [2/5, 3/5]"));

        let kb = parse_kb("class A B\nstat A B = 0.8").unwrap();
        assert!(serialize_kb(&kb).contains("stat A B = 4/5"));
    }

    #[test]
    fn empty_document() {
        let kb = parse_kb("").unwrap();
        assert!(kb.is_empty());
        assert_eq!(serialize_kb(&kb), "");
        assert!(parse_kb("# only a comment\n\n   \n").unwrap().is_empty());
    }

    #[test]
    fn hash_names_and_comments() {
        let kb = parse_kb("class Room # the room\nterm #18\nmember #18 Room #trailing-id-is-error")
            .unwrap_err();
        assert_eq!(kb.0[0].line, 3);

        let kb = parse_kb("# header\nclass Room   # the room\nterm #18 b18\nmember #18 Room # ok")
            .unwrap();
        assert!(kb.is_term(&"#18".into()));
        assert_eq!(kb.memberships().count(), 1);
    }

    #[test]
    fn multi_line_extension() {
        let kb = parse_kb("class U\nterm a b c\nextensional U {\n  a b\n  c\n}\n").unwrap();
        assert_eq!(kb.extension(&"U".into()).unwrap().len(), 3);
        let kb = parse_kb("class U\nextensional U { }").unwrap();
        assert!(kb.extension(&"U".into()).unwrap().is_empty());
        let err = parse_kb("class U\nterm a\nextensional U { a").unwrap_err();
        assert!(err.0[0].message.contains("unclosed"));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_kb("class A\nfrobnicate A\nclass B").unwrap_err();
        assert_eq!(err.0.len(), 1);
        assert_eq!((err.0[0].line, err.0[0].column), (2, 1));
        assert_eq!(err.0[0].token, "frobnicate");
        assert_eq!(err.0[0].kind, ParseErrorKind::Syntax);

        let err = parse_kb("class A\nmember ghost A").unwrap_err();
        assert_eq!((err.0[0].line, err.0[0].column), (2, 8));
        assert_eq!(err.0[0].token, "ghost");
        assert_eq!(err.0[0].kind, ParseErrorKind::Reference);

        let err = parse_kb("class A B\nstat A B = 1/2\nstat A B = 1/3").unwrap_err();
        assert_eq!(err.0[0].line, 3);
        assert!(err.is_inconsistency());

        let err = parse_kb("class A B\nsubset A B\nsubset B A").unwrap_err();
        assert!(err.is_inconsistency());
        assert!(err.0[0].message.contains("cycle"));

        let err = parse_kb("class A B\nstat A B = 1/0").unwrap_err();
        assert!(err.0[0].message.contains("malformed rational"));

        let err = parse_kb("class A B\nstat A B in [3/5, 2/5]").unwrap_err();
        assert!(err.0[0].message.contains("malformed statistical statement"));

        let err = parse_kb("class A B\nstat A B = 1/2 extra").unwrap_err();
        assert_eq!(err.0[0].token, "extra");
    }

    #[test]
    fn several_errors_are_collected() {
        let err = parse_kb("bogus\nclass A\nmember x A\nsubset A\n").unwrap_err();
        let lines: Vec<usize> = err.0.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![1, 3, 4]);
    }

    #[test]
    fn equivalences_and_products() {
        let text = r#"
class Heads NotChocolate Urns Balls UrnBall
term toss me u b
pair c u b
equiv "toss in Heads" "me in NotChocolate"
product UrnBall = Urns x Balls
member c UrnBall
"#;
        let kb = parse_kb(text).unwrap();
        assert_eq!(kb.equivalences().count(), 1);
        assert_eq!(
            kb.product_factors(&"UrnBall".into()),
            Some((&"Urns".into(), &"Balls".into()))
        );
        assert_eq!(parse_kb(&serialize_kb(&kb)).unwrap(), kb);

        assert!(parse_kb("class A\nterm a\nequiv \"a in A\" \"a in A and a in A\"").is_err());
        assert!(parse_kb("class A\nterm a\nequiv \"a in A").is_err());
    }

    #[test]
    fn queries() {
        let kb = parse_kb("class Flier Black\nterm tweety b18").unwrap();
        assert_eq!(
            parse_query("tweety in Flier", &kb).unwrap(),
            Sentence::new("tweety", "Flier")
        );
        assert_eq!(
            parse_query("b18 in Black", &kb).unwrap(),
            Sentence::new("b18", "Black")
        );
        assert_eq!(
            parse_query("ghost in Flier", &kb),
            Err(QueryError::UnknownTerm("ghost".into()))
        );
        assert_eq!(
            parse_query("tweety in Swimmer", &kb),
            Err(QueryError::UnknownClass("Swimmer".into()))
        );
        assert!(matches!(
            parse_query("tweety in Flier or b18 in Black", &kb),
            Err(QueryError::Syntax(_))
        ));
    }
}
