//! Text format for diagrams and premorphisms, and DOT export.
//!
//! ```text
//! diagram B { levels: [1], [2, 2], [6] edges: [[2], [1]], [[1, 2]] }
//! diagram U { levels: [1] tail { levels: [2] edges: [[2]] glue: [[2]] } edges: }
//! diagram Z { zero }
//! premorphism F: U -> U { indices: [1, 2] matrices: [[1]], [[1]] period: 1, 1 }
//! ```
//!
//! Parsing is purely syntactic; [`resolve`] validates declarations and cross-references.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, DiagramPresentation, PeriodicTail};
use crate::matrix::Matrix;
use crate::morphism::{MorphismError, PeriodicRule, Premorphism, PremorphismWindow};

/// 1-based source position. Spans never take part in equality of declarations.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramDecl {
    pub name: String,
    pub presentation: DiagramPresentation,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PremorphismDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub indices: Vec<usize>,
    pub matrices: Vec<Matrix>,
    pub period: Option<PeriodicRule>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Diagram(DiagramDecl),
    Premorphism(PremorphismDecl),
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Diagram(d) => &d.name,
            Decl::Premorphism(p) => &p.name,
        }
    }

    fn span(&self) -> Span {
        match self {
            Decl::Diagram(d) => d.span,
            Decl::Premorphism(p) => p.span,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SourceDocument {
    pub decls: Vec<Decl>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at {span}: {message}")]
    Syntax { span: Span, message: String },
    #[error("{span}: `{name}` is declared twice")]
    DuplicateName { span: Span, name: String },
    #[error("{span}: unknown diagram `{name}`")]
    UnknownDiagram { span: Span, name: String },
    #[error("{span}: premorphism `{name}` has a zero endpoint; the only premorphism there is the zero one")]
    ZeroEndpoint { span: Span, name: String },
    #[error("diagram `{name}`: {source}")]
    Diagram { name: String, source: DiagramError },
    #[error("premorphism `{name}`: {source}")]
    Premorphism { name: String, source: MorphismError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigUint),
    Punct(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, DslError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let span = Span { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(char::is_ascii_digit) {
                s.push(bump(&mut chars));
            }
            out.push((Tok::Int(s.parse().expect("digits")), span));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                s.push(bump(&mut chars));
            }
            out.push((Tok::Ident(s), span));
        } else {
            let p = match bump(&mut chars) {
                '{' => "{",
                '}' => "}",
                '[' => "[",
                ']' => "]",
                ':' => ":",
                ',' => ",",
                '-' if chars.peek() == Some(&'>') => {
                    bump(&mut chars);
                    "->"
                }
                other => {
                    return Err(DslError::Syntax {
                        span,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            };
            out.push((Tok::Punct(p), span));
        }
    }
    out.push((Tok::Eof, Span { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn fail<T>(&self, expected: &str) -> Result<T, DslError> {
        Err(DslError::Syntax {
            span: self.span(),
            message: format!("expected {expected}, found {}", self.peek()),
        })
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == k)
    }

    fn punct(&mut self, p: &str) -> Result<(), DslError> {
        if !self.is_punct(p) {
            return self.fail(&format!("`{p}`"));
        }
        self.pos += 1;
        Ok(())
    }

    fn keyword(&mut self, k: &str) -> Result<(), DslError> {
        if !self.is_keyword(k) {
            return self.fail(&format!("`{k}`"));
        }
        self.pos += 1;
        Ok(())
    }

    fn name(&mut self) -> Result<String, DslError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail("a name"),
        }
    }

    fn int(&mut self) -> Result<BigUint, DslError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.fail("an integer"),
        }
    }

    fn small(&mut self) -> Result<usize, DslError> {
        let span = self.span();
        let n = self.int()?;
        usize::try_from(&n).map_err(|_| DslError::Syntax {
            span,
            message: format!("index {n} is too large"),
        })
    }

    fn vec(&mut self) -> Result<Vec<BigUint>, DslError> {
        self.punct("[")?;
        let mut v = vec![self.int()?];
        while self.is_punct(",") {
            self.pos += 1;
            v.push(self.int()?);
        }
        self.punct("]")?;
        Ok(v)
    }

    fn veclist(&mut self) -> Result<Vec<Vec<BigUint>>, DslError> {
        let mut v = vec![self.vec()?];
        while self.is_punct(",") {
            self.pos += 1;
            v.push(self.vec()?);
        }
        Ok(v)
    }

    fn mat(&mut self) -> Result<Matrix, DslError> {
        let span = self.span();
        self.punct("[")?;
        let mut rows = vec![self.vec()?];
        while self.is_punct(",") {
            self.pos += 1;
            rows.push(self.vec()?);
        }
        self.punct("]")?;
        Matrix::from_rows(rows).ok_or(DslError::Syntax {
            span,
            message: "matrix rows differ in length".into(),
        })
    }

    /// Possibly empty: a list is present exactly when it starts with `[`.
    fn matlist(&mut self) -> Result<Vec<Matrix>, DslError> {
        let mut v = Vec::new();
        if !self.is_punct("[") {
            return Ok(v);
        }
        v.push(self.mat()?);
        while self.is_punct(",") {
            self.pos += 1;
            v.push(self.mat()?);
        }
        Ok(v)
    }

    fn diagram(&mut self) -> Result<DiagramDecl, DslError> {
        let span = self.span();
        self.keyword("diagram")?;
        let name = self.name()?;
        self.punct("{")?;
        if self.is_keyword("zero") {
            self.pos += 1;
            self.punct("}")?;
            return Ok(DiagramDecl {
                name,
                presentation: DiagramPresentation::Zero,
                span,
            });
        }
        self.keyword("levels")?;
        self.punct(":")?;
        let prefix_levels = self.veclist()?;
        let tail = if self.is_keyword("tail") {
            self.pos += 1;
            self.punct("{")?;
            self.keyword("levels")?;
            self.punct(":")?;
            let levels = self.veclist()?;
            self.keyword("edges")?;
            self.punct(":")?;
            let edges = self.matlist()?;
            self.keyword("glue")?;
            self.punct(":")?;
            let glue = self.mat()?;
            self.punct("}")?;
            Some(PeriodicTail { levels, edges, glue })
        } else {
            None
        };
        self.keyword("edges")?;
        self.punct(":")?;
        let prefix_edges = self.matlist()?;
        self.punct("}")?;
        Ok(DiagramDecl {
            name,
            presentation: DiagramPresentation::Levels {
                prefix_levels,
                prefix_edges,
                tail,
            },
            span,
        })
    }

    fn premorphism(&mut self) -> Result<PremorphismDecl, DslError> {
        let span = self.span();
        self.keyword("premorphism")?;
        let name = self.name()?;
        self.punct(":")?;
        let source = self.name()?;
        self.punct("->")?;
        let target = self.name()?;
        self.punct("{")?;
        self.keyword("indices")?;
        self.punct(":")?;
        self.punct("[")?;
        let mut indices = vec![self.small()?];
        while self.is_punct(",") {
            self.pos += 1;
            indices.push(self.small()?);
        }
        self.punct("]")?;
        self.keyword("matrices")?;
        self.punct(":")?;
        let matrices = self.matlist()?;
        let period = if self.is_keyword("period") {
            self.pos += 1;
            self.punct(":")?;
            let period = self.small()?;
            self.punct(",")?;
            let shift = self.small()?;
            Some(PeriodicRule { period, shift })
        } else {
            None
        };
        self.punct("}")?;
        Ok(PremorphismDecl {
            name,
            source,
            target,
            indices,
            matrices,
            period,
            span,
        })
    }
}

pub fn parse(text: &str) -> Result<SourceDocument, DslError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut decls = Vec::new();
    loop {
        match p.peek() {
            Tok::Eof => return Ok(SourceDocument { decls }),
            Tok::Ident(k) if k == "diagram" => decls.push(Decl::Diagram(p.diagram()?)),
            Tok::Ident(k) if k == "premorphism" => decls.push(Decl::Premorphism(p.premorphism()?)),
            _ => return p.fail("`diagram` or `premorphism`"),
        }
    }
}

fn write_vec(out: &mut String, v: &[BigUint]) {
    out.push('[');
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{x}").unwrap();
    }
    out.push(']');
}

fn write_veclist(out: &mut String, vs: &[Vec<BigUint>]) {
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_vec(out, v);
    }
}

fn write_mat(out: &mut String, m: &Matrix) {
    out.push('[');
    for i in 0..m.rows() {
        if i > 0 {
            out.push_str(", ");
        }
        write_vec(out, m.row(i));
    }
    out.push(']');
}

fn write_matlist(out: &mut String, ms: &[Matrix]) {
    for (i, m) in ms.iter().enumerate() {
        out.push_str(if i > 0 { ", " } else { " " });
        write_mat(out, m);
    }
}

/// Canonical text: one field per line, declarations separated by a blank line.
pub fn emit(doc: &SourceDocument) -> String {
    let mut out = String::new();
    for (k, decl) in doc.decls.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        match decl {
            Decl::Diagram(d) => {
                writeln!(out, "diagram {} {{", d.name).unwrap();
                match &d.presentation {
                    DiagramPresentation::Zero => out.push_str("  zero\n"),
                    DiagramPresentation::Levels {
                        prefix_levels,
                        prefix_edges,
                        tail,
                    } => {
                        out.push_str("  levels: ");
                        write_veclist(&mut out, prefix_levels);
                        out.push('\n');
                        if let Some(t) = tail {
                            out.push_str("  tail {\n    levels: ");
                            write_veclist(&mut out, &t.levels);
                            out.push_str("\n    edges:");
                            write_matlist(&mut out, &t.edges);
                            out.push_str("\n    glue: ");
                            write_mat(&mut out, &t.glue);
                            out.push_str("\n  }\n");
                        }
                        out.push_str("  edges:");
                        write_matlist(&mut out, prefix_edges);
                        out.push('\n');
                    }
                }
                out.push_str("}\n");
            }
            Decl::Premorphism(p) => {
                writeln!(out, "premorphism {}: {} -> {} {{", p.name, p.source, p.target).unwrap();
                out.push_str("  indices: [");
                for (i, n) in p.indices.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write!(out, "{n}").unwrap();
                }
                out.push_str("]\n  matrices:");
                write_matlist(&mut out, &p.matrices);
                out.push('\n');
                if let Some(r) = p.period {
                    writeln!(out, "  period: {}, {}", r.period, r.shift).unwrap();
                }
                out.push_str("}\n");
            }
        }
    }
    out
}

/// Validated contents of a document, by name.
#[derive(Debug, Clone, Default)]
pub struct Resolved {
    pub diagrams: BTreeMap<String, Diagram>,
    pub premorphisms: BTreeMap<String, Premorphism>,
}

/// Validates every declaration. Premorphisms may refer to diagrams declared anywhere.
pub fn resolve(doc: &SourceDocument) -> Result<Resolved, DslError> {
    let mut seen = BTreeMap::new();
    for decl in &doc.decls {
        if seen.insert(decl.name(), ()).is_some() {
            return Err(DslError::DuplicateName {
                span: decl.span(),
                name: decl.name().into(),
            });
        }
    }
    let mut out = Resolved::default();
    for decl in &doc.decls {
        if let Decl::Diagram(d) = decl {
            let diagram = Diagram::validate(d.presentation.clone()).map_err(|source| DslError::Diagram {
                name: d.name.clone(),
                source,
            })?;
            out.diagrams.insert(d.name.clone(), diagram);
        }
    }
    for decl in &doc.decls {
        let Decl::Premorphism(p) = decl else { continue };
        let lookup = |name: &str| {
            out.diagrams.get(name).cloned().ok_or_else(|| DslError::UnknownDiagram {
                span: p.span,
                name: name.into(),
            })
        };
        let (source, target) = (lookup(&p.source)?, lookup(&p.target)?);
        if source.is_zero() || target.is_zero() {
            return Err(DslError::ZeroEndpoint {
                span: p.span,
                name: p.name.clone(),
            });
        }
        let f = Premorphism::validate(PremorphismWindow {
            source,
            target,
            indices: p.indices.clone(),
            matrices: p.matrices.clone(),
            periodic_rule: p.period,
        })
        .map_err(|source| DslError::Premorphism {
            name: p.name.clone(),
            source,
        })?;
        out.premorphisms.insert(p.name.clone(), f);
    }
    Ok(out)
}

/// Parses and resolves in one step.
pub fn load(text: &str) -> Result<Resolved, DslError> {
    resolve(&parse(text)?)
}

/// Graphviz rendering of levels `1..=depth`: node `L<n>_<i>` per summand, labeled
/// with its size, and one edge per nonzero multiplicity, labeled with it.
pub fn emit_dot(d: &Diagram, name: &str, depth: usize) -> Result<String, DiagramError> {
    let mut out = format!("digraph {name} {{\n");
    if d.is_zero() {
        out.push_str("  \"0\";\n}\n");
        return Ok(out);
    }
    if depth == 0 {
        // same error as any other unresolvable level
        d.level(0)?;
    }
    let levels = (1..=depth).map(|n| d.level(n)).collect::<Result<Vec<_>, _>>()?;
    for (n, level) in levels.iter().enumerate() {
        for (i, size) in level.entries().iter().enumerate() {
            writeln!(out, "  L{}_{} [label=\"{size}\"];", n + 1, i + 1).unwrap();
        }
    }
    for n in 1..depth {
        let e = d.edge_matrix(n)?;
        for j in 0..e.cols() {
            for i in 0..e.rows() {
                let a = e.get(i, j);
                if *a != BigUint::from(0u32) {
                    writeln!(out, "  L{n}_{} -> L{}_{} [label=\"{a}\"];", j + 1, n + 1, i + 1).unwrap();
                }
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
