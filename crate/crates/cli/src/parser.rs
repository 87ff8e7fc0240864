//! Line-oriented recursive-descent parser for `.gsm` documents.
//!
//! The grammar is deliberately explicit: hand-declared groupoids list their
//! composition tables exhaustively, and only the builder forms `pair(n)`,
//! `group([[..]])` and `union(a, b)` get their tables auto-completed.
//! `docs/grammar.ebnf` is the normative grammar.

use crate::ast::*;
use gsm_core::scalar::{int, parse_scalar};
use gsm_core::Scalar;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
    DuplicateName {
        line: usize,
        name: String,
    },
    UnresolvedName {
        line: usize,
        name: String,
    },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "E_SYNTAX",
            ParseError::DuplicateName { .. } => "E_DUPLICATE_NAME",
            ParseError::UnresolvedName { .. } => "E_UNRESOLVED_NAME",
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax {
                line,
                col,
                expected,
                found,
            } => write!(f, "{line}:{col}: expected {expected}, found {found}"),
            ParseError::DuplicateName { line, name } => {
                write!(f, "{line}: duplicate name `{name}`")
            }
            ParseError::UnresolvedName { line, name } => {
                write!(f, "{line}: unresolved name `{name}`")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(s) => write!(f, "`{s}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&c2) = chars.peek() {
                if c2 == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        let start_col = col;
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_ascii_alphanumeric() || c2 == '_' || c2 == '-' {
                    // identifiers may contain '-' only when followed by a letter
                    // (task names like `coset-duality`); `->` is handled below
                    if c2 == '-' {
                        let mut look = chars.clone();
                        look.next();
                        match look.peek() {
                            Some(c3) if c3.is_ascii_alphabetic() => {}
                            _ => break,
                        }
                    }
                    s.push(c2);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            toks.push((Tok::Ident(s), line, start_col));
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_ascii_digit() {
                    s.push(c2);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            toks.push((Tok::Number(s), line, start_col));
            continue;
        }
        if c == '-' {
            let mut look = chars.clone();
            look.next();
            if look.peek() == Some(&'>') {
                chars.next();
                chars.next();
                col += 2;
                toks.push((Tok::Sym("->"), line, start_col));
                continue;
            }
        }
        let sym = match c {
            '{' => "{",
            '}' => "}",
            '(' => "(",
            ')' => ")",
            '[' => "[",
            ']' => "]",
            ';' => ";",
            ',' => ",",
            '=' => "=",
            '*' => "*",
            ':' => ":",
            '@' => "@",
            '+' => "+",
            '-' => "-",
            '/' => "/",
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    expected: "a token".into(),
                    found: format!("`{c}`"),
                })
            }
        };
        chars.next();
        col += 1;
        toks.push((Tok::Sym(sym), line, start_col));
    }
    toks.push((Tok::Eof, line, col));
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        (self.toks[self.pos].1, self.toks[self.pos].2)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &str) -> ParseError {
        let (line, col) = self.here();
        ParseError::Syntax {
            line,
            col,
            expected: expected.into(),
            found: self.peek().to_string(),
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.peek() == &Tok::Sym(match s {
            "{" => "{",
            "}" => "}",
            "(" => "(",
            ")" => ")",
            "[" => "[",
            "]" => "]",
            ";" => ";",
            "," => ",",
            "=" => "=",
            "*" => "*",
            ":" => ":",
            "@" => "@",
            "->" => "->",
            "+" => "+",
            "-" => "-",
            "/" => "/",
            other => other,
        }) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("`{s}`")))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.err("an identifier")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.err(&format!("keyword `{kw}`"))),
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Tok::Number(s) => {
                let v = s.parse().map_err(|_| self.err("a small integer"))?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.err("a number")),
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == s)
    }
}

/// Parse a full document and check name resolution (declarations must
/// precede use; duplicates are rejected).
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut lx = lex(text)?;
    let mut decls = Vec::new();
    let mut tasks = Vec::new();
    loop {
        match lx.peek().clone() {
            Tok::Eof => break,
            Tok::Ident(kw) => match kw.as_str() {
                "groupoid" => decls.push(parse_groupoid(&mut lx)?),
                "subgroupoid" => decls.push(parse_subgroupoid(&mut lx)?),
                "algebra" => decls.push(parse_algebra(&mut lx)?),
                "action" => decls.push(parse_action(&mut lx)?),
                "biset" => decls.push(parse_biset(&mut lx)?),
                "module" => decls.push(parse_module(&mut lx)?),
                "task" => tasks.push(parse_task(&mut lx)?),
                _ => return Err(lx.err("a declaration or task keyword")),
            },
            _ => return Err(lx.err("a declaration or task keyword")),
        }
    }
    let doc = Document { decls, tasks };
    check_names(&doc)?;
    Ok(doc)
}

fn parse_groupoid(lx: &mut Lexer) -> Result<Decl, ParseError> {
    let (line, _) = lx.here();
    lx.keyword("groupoid")?;
    let name = lx.ident()?;
    if lx.is_sym("=") {
        lx.bump();
        let builder = lx.ident()?;
        lx.expect_sym("(")?;
        let kind = match builder.as_str() {
            "pair" => {
                let n = lx.number()?;
                GroupoidDecl::Pair(n)
            }
            "group" => {
                let table = parse_int_matrix(lx)?;
                GroupoidDecl::Group(table)
            }
            "union" => {
                let a = lx.ident()?;
                lx.expect_sym(",")?;
                let b = lx.ident()?;
                GroupoidDecl::Union(a, b)
            }
            _ => return Err(lx.err("`pair`, `group` or `union`")),
        };
        lx.expect_sym(")")?;
        lx.expect_sym(";")?;
        return Ok(Decl {
            name,
            line,
            kind: DeclKind::Groupoid(kind),
        });
    }
    lx.expect_sym("{")?;
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut identities = Vec::new();
    let mut inverses = Vec::new();
    let mut compositions = Vec::new();
    while !lx.is_sym("}") {
        let kw = lx.ident()?;
        match kw.as_str() {
            "objects" => {
                while !lx.is_sym(";") {
                    objects.push(lx.ident()?);
                }
                lx.expect_sym(";")?;
            }
            "mor" => {
                let m = lx.ident()?;
                lx.expect_sym(":")?;
                let d = lx.ident()?;
                lx.expect_sym("->")?;
                let r = lx.ident()?;
                lx.expect_sym(";")?;
                morphisms.push((m, d, r));
            }
            "identity" => {
                let e = lx.ident()?;
                lx.expect_sym("=")?;
                let m = lx.ident()?;
                lx.expect_sym(";")?;
                identities.push((e, m));
            }
            "inv" => {
                let g = lx.ident()?;
                lx.expect_sym("=")?;
                let h = lx.ident()?;
                lx.expect_sym(";")?;
                inverses.push((g, h));
            }
            "comp" => {
                let g = lx.ident()?;
                let h = lx.ident()?;
                lx.expect_sym("=")?;
                let k = lx.ident()?;
                lx.expect_sym(";")?;
                compositions.push((g, h, k));
            }
            _ => return Err(lx.err("`objects`, `mor`, `identity`, `inv` or `comp`")),
        }
    }
    lx.expect_sym("}")?;
    Ok(Decl {
        name,
        line,
        kind: DeclKind::Groupoid(GroupoidDecl::Explicit {
            objects,
            morphisms,
            identities,
            inverses,
            compositions,
        }),
    })
}

fn parse_int_matrix(lx: &mut Lexer) -> Result<Vec<Vec<usize>>, ParseError> {
    lx.expect_sym("[")?;
    let mut rows = Vec::new();
    loop {
        lx.expect_sym("[")?;
        let mut row = Vec::new();
        loop {
            row.push(lx.number()?);
            if lx.is_sym(",") {
                lx.bump();
            } else {
                break;
            }
        }
        lx.expect_sym("]")?;
        rows.push(row);
        if lx.is_sym(",") {
            lx.bump();
        } else {
            break;
        }
    }
    lx.expect_sym("]")?;
    Ok(rows)
}

fn parse_subgroupoid(lx: &mut Lexer) -> Result<Decl, ParseError> {
    let (line, _) = lx.here();
    lx.keyword("subgroupoid")?;
    let name = lx.ident()?;
    lx.keyword("of")?;
    let parent = lx.ident()?;
    lx.expect_sym("=")?;
    let spec = if lx.is_ident("all") {
        lx.bump();
        SubgroupoidSpec::All
    } else if lx.is_ident("identities") {
        lx.bump();
        SubgroupoidSpec::Identities
    } else {
        lx.expect_sym("{")?;
        let mut members = Vec::new();
        while !lx.is_sym("}") {
            members.push(lx.ident()?);
        }
        lx.expect_sym("}")?;
        SubgroupoidSpec::Members(members)
    };
    lx.expect_sym(";")?;
    Ok(Decl {
        name,
        line,
        kind: DeclKind::Subgroupoid { parent, spec },
    })
}

fn parse_lincomb(lx: &mut Lexer) -> Result<LinComb, ParseError> {
    // 0 | [-] [p[/q]] ident { (+|-) [p[/q]] ident }
    if matches!(lx.peek(), Tok::Number(s) if s == "0") {
        lx.bump();
        return Ok(LinComb(Vec::new()));
    }
    let mut terms = Vec::new();
    let mut negative = if lx.is_sym("-") {
        lx.bump();
        true
    } else {
        false
    };
    loop {
        let mut coeff: Scalar = int(1);
        if let Tok::Number(n) = lx.peek().clone() {
            lx.bump();
            let text = if lx.is_sym("/") {
                lx.bump();
                let d = match lx.peek().clone() {
                    Tok::Number(d) => {
                        lx.bump();
                        d
                    }
                    _ => return Err(lx.err("a denominator")),
                };
                format!("{n}/{d}")
            } else {
                n
            };
            coeff = parse_scalar(&text).ok_or_else(|| lx.err("a rational coefficient"))?;
        }
        if negative {
            coeff = -coeff;
        }
        let name = lx.ident()?;
        terms.push((coeff, name));
        if lx.is_sym("+") {
            lx.bump();
            negative = false;
        } else if lx.is_sym("-") {
            lx.bump();
            negative = true;
        } else {
            break;
        }
    }
    Ok(LinComb(terms))
}

fn parse_algebra(lx: &mut Lexer) -> Result<Decl, ParseError> {
    let (line, _) = lx.here();
    lx.keyword("algebra")?;
    let name = lx.ident()?;
    lx.keyword("over")?;
    let groupoid = lx.ident()?;
    lx.expect_sym("{")?;
    let mut basis = Vec::new();
    let mut mult = Vec::new();
    let mut unit = LinComb::default();
    let mut saw_unit = false;
    while !lx.is_sym("}") {
        let kw = lx.ident()?;
        match kw.as_str() {
            "basis" => {
                while !lx.is_sym(";") {
                    let b = lx.ident()?;
                    lx.expect_sym("@")?;
                    let d = lx.ident()?;
                    basis.push((b, d));
                }
                lx.expect_sym(";")?;
            }
            "mult" => {
                let a = lx.ident()?;
                lx.expect_sym("*")?;
                let b = lx.ident()?;
                lx.expect_sym("=")?;
                let value = parse_lincomb(lx)?;
                lx.expect_sym(";")?;
                mult.push((a, b, value));
            }
            "unit" => {
                lx.expect_sym("=")?;
                unit = parse_lincomb(lx)?;
                lx.expect_sym(";")?;
                saw_unit = true;
            }
            _ => return Err(lx.err("`basis`, `mult` or `unit`")),
        }
    }
    lx.expect_sym("}")?;
    if !saw_unit {
        return Err(ParseError::Syntax {
            line,
            col: 1,
            expected: "a `unit = ...;` line in the algebra block".into(),
            found: "none".into(),
        });
    }
    Ok(Decl {
        name,
        line,
        kind: DeclKind::Algebra {
            groupoid,
            basis,
            mult,
            unit,
        },
    })
}

fn parse_action(lx: &mut Lexer) -> Result<Decl, ParseError> {
    let (line, _) = lx.here();
    lx.keyword("action")?;
    let name = lx.ident()?;
    if lx.is_sym("=") {
        lx.bump();
        let builder = lx.ident()?;
        lx.expect_sym("(")?;
        let g = lx.ident()?;
        let kind = match builder.as_str() {
            "left" => ActionDecl::Left(g),
            "right" => {
                if lx.is_sym(",") {
                    lx.bump();
                    let h = lx.ident()?;
                    ActionDecl::Right(g, Some(h))
                } else {
                    ActionDecl::Right(g, None)
                }
            }
            _ => return Err(lx.err("`left` or `right`")),
        };
        lx.expect_sym(")")?;
        lx.expect_sym(";")?;
        return Ok(Decl {
            name,
            line,
            kind: DeclKind::Action(kind),
        });
    }
    lx.keyword("of")?;
    let groupoid = lx.ident()?;
    lx.expect_sym("{")?;
    let mut points = Vec::new();
    let mut fibers = Vec::new();
    let mut maps = Vec::new();
    while !lx.is_sym("}") {
        let kw = lx.ident()?;
        match kw.as_str() {
            "points" => {
                while !lx.is_sym(";") {
                    points.push(lx.ident()?);
                }
                lx.expect_sym(";")?;
            }
            "fiber" => {
                let e = lx.ident()?;
                lx.expect_sym("=")?;
                lx.expect_sym("{")?;
                let mut pts = Vec::new();
                while !lx.is_sym("}") {
                    pts.push(lx.ident()?);
                }
                lx.expect_sym("}")?;
                lx.expect_sym(";")?;
                fibers.push((e, pts));
            }
            "map" => {
                let g = lx.ident()?;
                lx.expect_sym(":")?;
                let x = lx.ident()?;
                lx.expect_sym("->")?;
                let y = lx.ident()?;
                lx.expect_sym(";")?;
                maps.push((g, x, y));
            }
            _ => return Err(lx.err("`points`, `fiber` or `map`")),
        }
    }
    lx.expect_sym("}")?;
    Ok(Decl {
        name,
        line,
        kind: DeclKind::Action(ActionDecl::Explicit {
            groupoid,
            points,
            fibers,
            maps,
        }),
    })
}

fn parse_biset(lx: &mut Lexer) -> Result<Decl, ParseError> {
    let (line, _) = lx.here();
    lx.keyword("biset")?;
    let name = lx.ident()?;
    lx.expect_sym("=")?;
    lx.expect_sym("(")?;
    let g = lx.ident()?;
    lx.expect_sym(",")?;
    let k = lx.ident()?;
    lx.expect_sym(")")?;
    lx.expect_sym(";")?;
    Ok(Decl {
        name,
        line,
        kind: DeclKind::Biset {
            g_action: g,
            k_action: k,
        },
    })
}

fn parse_scalar_matrix(lx: &mut Lexer) -> Result<Vec<Vec<Scalar>>, ParseError> {
    lx.expect_sym("[")?;
    let mut rows = Vec::new();
    loop {
        lx.expect_sym("[")?;
        let mut row = Vec::new();
        loop {
            let negative = if lx.is_sym("-") {
                lx.bump();
                true
            } else {
                false
            };
            let n = match lx.peek().clone() {
                Tok::Number(n) => {
                    lx.bump();
                    n
                }
                _ => return Err(lx.err("a matrix entry")),
            };
            let text = if lx.is_sym("/") {
                lx.bump();
                match lx.peek().clone() {
                    Tok::Number(d) => {
                        lx.bump();
                        format!("{n}/{d}")
                    }
                    _ => return Err(lx.err("a denominator")),
                }
            } else {
                n
            };
            let mut v = parse_scalar(&text).ok_or_else(|| lx.err("a rational entry"))?;
            if negative {
                v = -v;
            }
            row.push(v);
            if lx.is_sym(",") {
                lx.bump();
            } else {
                break;
            }
        }
        lx.expect_sym("]")?;
        rows.push(row);
        if lx.is_sym(",") {
            lx.bump();
        } else {
            break;
        }
    }
    lx.expect_sym("]")?;
    Ok(rows)
}

fn parse_module(lx: &mut Lexer) -> Result<Decl, ParseError> {
    let (line, _) = lx.here();
    lx.keyword("module")?;
    let name = lx.ident()?;
    lx.keyword("over")?;
    let algebra = lx.ident()?;
    let side = if lx.is_ident("left") {
        lx.bump();
        ModuleSide::Left
    } else if lx.is_ident("right") {
        lx.bump();
        ModuleSide::Right
    } else {
        return Err(lx.err("`left` or `right`"));
    };
    lx.expect_sym("{")?;
    let mut dim = 0;
    let mut acts = Vec::new();
    while !lx.is_sym("}") {
        let kw = lx.ident()?;
        match kw.as_str() {
            "dim" => {
                dim = lx.number()?;
                lx.expect_sym(";")?;
            }
            "act" => {
                let b = lx.ident()?;
                lx.expect_sym("=")?;
                let m = parse_scalar_matrix(lx)?;
                lx.expect_sym(";")?;
                acts.push((b, m));
            }
            _ => return Err(lx.err("`dim` or `act`")),
        }
    }
    lx.expect_sym("}")?;
    Ok(Decl {
        name,
        line,
        kind: DeclKind::Module {
            algebra,
            side,
            dim,
            acts,
        },
    })
}

fn parse_task(lx: &mut Lexer) -> Result<Task, ParseError> {
    let (line, _) = lx.here();
    lx.keyword("task")?;
    let tname = lx.ident()?;
    let kind = match tname.as_str() {
        "check" => TaskKind::Check(lx.ident()?),
        "orbits" => TaskKind::Orbits(lx.ident()?),
        "smash" => TaskKind::Smash {
            algebra: lx.ident()?,
            action: lx.ident()?,
        },
        "duality" => {
            let algebra = lx.ident()?;
            let biset = if lx.is_sym("(") {
                lx.bump();
                let a = lx.ident()?;
                lx.expect_sym(",")?;
                let b = lx.ident()?;
                lx.expect_sym(")")?;
                BisetRef::Pair(a, b)
            } else {
                BisetRef::Named(lx.ident()?)
            };
            TaskKind::Duality { algebra, biset }
        }
        "coset-duality" => TaskKind::CosetDuality {
            algebra: lx.ident()?,
            groupoid: lx.ident()?,
            subgroupoid: lx.ident()?,
        },
        "ig-duality" => TaskKind::IgDuality {
            algebra: lx.ident()?,
            action: lx.ident()?,
        },
        "weakhopf" => TaskKind::WeakHopf {
            algebra: lx.ident()?,
        },
        "morita" => {
            let algebra = lx.ident()?;
            let action = lx.ident()?;
            lx.keyword("point")?;
            lx.expect_sym("=")?;
            let point = lx.ident()?;
            TaskKind::Morita {
                algebra,
                action,
                point,
            }
        }
        _ => return Err(lx.err("a task name (check, orbits, smash, duality, coset-duality, ig-duality, weakhopf, morita)")),
    };
    lx.expect_sym(";")?;
    Ok(Task { line, kind })
}

/// Duplicate declarations and forward references are document errors.
fn check_names(doc: &Document) -> Result<(), ParseError> {
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for decl in &doc.decls {
        if !seen.insert(&decl.name) {
            return Err(ParseError::DuplicateName {
                line: decl.line,
                name: decl.name.clone(),
            });
        }
        let refs: Vec<&String> = match &decl.kind {
            DeclKind::Groupoid(GroupoidDecl::Union(a, b)) => vec![a, b],
            DeclKind::Groupoid(_) => vec![],
            DeclKind::Subgroupoid { parent, .. } => vec![parent],
            DeclKind::Algebra { groupoid, .. } => vec![groupoid],
            DeclKind::Action(ActionDecl::Left(g)) => vec![g],
            DeclKind::Action(ActionDecl::Right(g, h)) => {
                let mut v = vec![g];
                if let Some(h) = h {
                    v.push(h);
                }
                v
            }
            DeclKind::Action(ActionDecl::Explicit { groupoid, .. }) => vec![groupoid],
            DeclKind::Biset { g_action, k_action } => vec![g_action, k_action],
            DeclKind::Module { algebra, .. } => vec![algebra],
        };
        for r in refs {
            if !seen.contains(r.as_str()) {
                return Err(ParseError::UnresolvedName {
                    line: decl.line,
                    name: r.clone(),
                });
            }
        }
    }
    for task in &doc.tasks {
        let refs: Vec<&String> = match &task.kind {
            TaskKind::Check(n) | TaskKind::Orbits(n) | TaskKind::WeakHopf { algebra: n } => {
                vec![n]
            }
            TaskKind::Smash { algebra, action } | TaskKind::IgDuality { algebra, action } => {
                vec![algebra, action]
            }
            TaskKind::Duality { algebra, biset } => match biset {
                BisetRef::Named(b) => vec![algebra, b],
                BisetRef::Pair(a, b) => vec![algebra, a, b],
            },
            TaskKind::CosetDuality {
                algebra,
                groupoid,
                subgroupoid,
            } => vec![algebra, groupoid, subgroupoid],
            TaskKind::Morita {
                algebra, action, ..
            } => vec![algebra, action],
        };
        for r in refs {
            if !seen.contains(r.as_str()) {
                return Err(ParseError::UnresolvedName {
                    line: task.line,
                    name: r.clone(),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_parses() {
        let doc = parse_document("").unwrap();
        assert!(doc.decls.is_empty() && doc.tasks.is_empty());
    }

    #[test]
    fn builder_and_task() {
        let doc = parse_document("groupoid G = pair(2);\ntask check G;\n").unwrap();
        assert_eq!(doc.decls.len(), 1);
        assert_eq!(doc.tasks.len(), 1);
    }

    #[test]
    fn unknown_task_is_syntax_error() {
        let err = parse_document("groupoid G = pair(2);\ntask explode G;\n").unwrap_err();
        assert_eq!(err.code(), "E_SYNTAX");
    }

    #[test]
    fn forward_reference_is_rejected() {
        let err = parse_document("task check G;\ngroupoid G = pair(2);\n").unwrap_err();
        assert_eq!(err.code(), "E_UNRESOLVED_NAME");
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let err =
            parse_document("groupoid G = pair(2);\ngroupoid G = pair(3);\n").unwrap_err();
        assert_eq!(err.code(), "E_DUPLICATE_NAME");
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_document("groupoid G = pair(;\n").unwrap_err();
        match err {
            ParseError::Syntax { line, col, .. } => {
                assert_eq!(line, 1);
                assert!(col > 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lincomb_with_coefficients() {
        let doc = parse_document(
            "groupoid G = pair(1);\nalgebra A over G { basis a@id1; mult a*a = 1/2 a; unit = 2 a; }\n",
        )
        .unwrap();
        match &doc.decls[1].kind {
            DeclKind::Algebra { mult, unit, .. } => {
                assert_eq!(mult.len(), 1);
                assert_eq!(unit.0.len(), 1);
            }
            _ => panic!(),
        }
    }
}
