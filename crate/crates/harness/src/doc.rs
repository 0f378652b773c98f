//! The line-oriented instance document format.
//!
//! A document is a sequence of named items; later items may reference
//! earlier ones by name (a map names its domain and codomain spaces, a group
//! and a cover name their underlying space). The grammar, one item per line
//! in canonical form:
//!
//! ```text
//! space X { points: a b c; conv: a>b b>c; }
//! map f: X -> Y { a=>u; b=>u; c=>v; }
//! group G { space: X; unit: e; table: e.e=e e.a=a a.e=a a.a=e; }
//! cover C on X { {a b} {b c} }
//! ```
//!
//! Diagonal convergence edges are implicit and never written, so
//! non-reflexivity is not expressible. Duplicate edges are idempotent.
//! Unknown or out-of-order keys, dangling labels, forward references and
//! duplicate item names are rejected with line/column positions.
//! `parse` and `serialize` are mutually inverse on canonical text.

use finconv_core::carrier::Carrier;
use finconv_core::groups::ConvergenceGroup;
use finconv_core::pasting::Cover;
use finconv_core::spaces::{PseudoSpace, SpaceMap};
use std::fmt::Write as _;
use thiserror::Error;

/// Parse failure with source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// One named payload of a document.
#[derive(Clone, Debug)]
pub enum Item {
    Space(PseudoSpace),
    Map {
        dom_name: String,
        cod_name: String,
        map: SpaceMap,
    },
    Group {
        space_name: String,
        group: ConvergenceGroup,
    },
    Cover {
        space_name: String,
        cover: Cover,
    },
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Space(_) => "space",
            Item::Map { .. } => "map",
            Item::Group { .. } => "group",
            Item::Cover { .. } => "cover",
        }
    }
}

/// An ordered collection of named items.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Document {
    items: Vec<(String, Item)>,
}

impl Document {
    pub fn new() -> Document {
        Document::default()
    }

    pub fn items(&self) -> &[(String, Item)] {
        &self.items
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    /// Appends an item; names share one namespace.
    pub fn push(&mut self, name: impl Into<String>, item: Item) -> Result<(), ParseError> {
        let name = name.into();
        if self.get(&name).is_some() {
            return Err(ParseError {
                line: 0,
                col: 0,
                message: format!("duplicate item name `{name}`"),
            });
        }
        self.items.push((name, item));
        Ok(())
    }

    pub fn space(&self, name: &str) -> Option<&PseudoSpace> {
        match self.get(name) {
            Some(Item::Space(s)) => Some(s),
            _ => None,
        }
    }

    pub fn map(&self, name: &str) -> Option<&SpaceMap> {
        match self.get(name) {
            Some(Item::Map { map, .. }) => Some(map),
            _ => None,
        }
    }

    pub fn group(&self, name: &str) -> Option<&ConvergenceGroup> {
        match self.get(name) {
            Some(Item::Group { group, .. }) => Some(group),
            _ => None,
        }
    }

    pub fn cover(&self, name: &str) -> Option<&Cover> {
        match self.get(name) {
            Some(Item::Cover { cover, .. }) => Some(cover),
            _ => None,
        }
    }

    /// First item of a given kind, for single-subject commands.
    pub fn first_of_kind(&self, kind: &str) -> Option<(&str, &Item)> {
        self.items
            .iter()
            .find(|(_, i)| i.kind() == kind)
            .map(|(n, i)| (n.as_str(), i))
    }

    pub fn parse(text: &str) -> Result<Document, ParseError> {
        Parser::new(text)?.document()
    }

    /// Canonical serialization: one item per line, points in carrier order,
    /// proper edges sorted, assignments in domain order, group tables
    /// row-major. `parse` of the output reproduces the document.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (name, item) in &self.items {
            match item {
                Item::Space(s) => {
                    write!(out, "space {name} {{ points:").unwrap();
                    for l in s.carrier().labels() {
                        write!(out, " {l}").unwrap();
                    }
                    write!(out, ";").unwrap();
                    let edges: Vec<(usize, usize)> = s.proper_edges().collect();
                    if !edges.is_empty() {
                        write!(out, " conv:").unwrap();
                        for (a, x) in edges {
                            write!(out, " {}>{}", s.carrier().label(a), s.carrier().label(x))
                                .unwrap();
                        }
                        write!(out, ";").unwrap();
                    }
                    writeln!(out, " }}").unwrap();
                }
                Item::Map { dom_name, cod_name, map } => {
                    write!(out, "map {name}: {dom_name} -> {cod_name} {{").unwrap();
                    for (i, l) in map.dom().carrier().labels().enumerate() {
                        write!(out, " {l}=>{};", map.cod().carrier().label(map.apply(i))).unwrap();
                    }
                    writeln!(out, " }}").unwrap();
                }
                Item::Group { space_name, group } => {
                    let c = group.space().carrier();
                    write!(
                        out,
                        "group {name} {{ space: {space_name}; unit: {}; table:",
                        c.label(group.unit())
                    )
                    .unwrap();
                    let n = c.len();
                    for a in 0..n {
                        for b in 0..n {
                            write!(
                                out,
                                " {}.{}={}",
                                c.label(a),
                                c.label(b),
                                c.label(group.mult(a, b))
                            )
                            .unwrap();
                        }
                    }
                    writeln!(out, "; }}").unwrap();
                }
                Item::Cover { space_name, cover } => {
                    write!(out, "cover {name} on {space_name} {{").unwrap();
                    let c = cover.space().carrier();
                    for piece in cover.pieces() {
                        write!(out, " {{").unwrap();
                        for (k, &p) in piece.iter().enumerate() {
                            write!(out, "{}{}", if k == 0 { "" } else { " " }, c.label(p)).unwrap();
                        }
                        write!(out, "}}").unwrap();
                    }
                    writeln!(out, " }}").unwrap();
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Lexer.

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    LBrace,
    RBrace,
    Semi,
    Colon,
    Gt,
    Eq,
    Dot,
    Arrow,    // ->
    FatArrow, // =>
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Gt => write!(f, "`>`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::FatArrow => write!(f, "`=>`"),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_reserved(c: char) -> bool {
    matches!(c, '{' | '}' | ';' | ':' | '>' | '=' | '.')
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let (l, co) = (line, col);
        let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        let tok = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ';' => Some(Tok::Semi),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            '>' => Some(Tok::Gt),
            '=' => {
                if chars.get(i + 1) == Some(&'>') {
                    advance(&mut i, &mut line, &mut col);
                    Some(Tok::FatArrow)
                } else {
                    Some(Tok::Eq)
                }
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                advance(&mut i, &mut line, &mut col);
                Some(Tok::Arrow)
            }
            _ => None,
        };
        match tok {
            Some(tok) => {
                advance(&mut i, &mut line, &mut col);
                out.push(Lexed { tok, line: l, col: co });
            }
            None => {
                let mut word = String::new();
                while i < chars.len() {
                    let c = chars[i];
                    if c.is_whitespace() || is_reserved(c) {
                        break;
                    }
                    if c == '-' && chars.get(i + 1) == Some(&'>') {
                        break;
                    }
                    word.push(c);
                    advance(&mut i, &mut line, &mut col);
                }
                out.push(Lexed { tok: Tok::Word(word), line: l, col: co });
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser.

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self
            .toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|t| (t.line, t.col))
            .unwrap_or((0, 0));
        ParseError { line, col, message: message.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Result<&Lexed, ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .ok_or(ParseError { line: 0, col: 0, message: "unexpected end of input".into() })?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let err = self.err_here(format!("expected {want}"));
        let got = self.next()?;
        if got.tok == want {
            Ok(())
        } else {
            Err(ParseError {
                line: got.line,
                col: got.col,
                message: format!("{} but found {}", err.message, got.tok),
            })
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, usize, usize), ParseError> {
        let err = self.err_here(format!("expected {what}"));
        let got = self.next()?;
        match &got.tok {
            Tok::Word(w) => Ok((w.clone(), got.line, got.col)),
            other => Err(ParseError {
                line: got.line,
                col: got.col,
                message: format!("{} but found {}", err.message, other),
            }),
        }
    }

    /// A specific keyword word.
    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (w, line, col) = self.word(&format!("keyword `{kw}`"))?;
        if w == kw {
            Ok(())
        } else {
            Err(ParseError { line, col, message: format!("expected keyword `{kw}` but found `{w}`") })
        }
    }

    fn document(&mut self) -> Result<Document, ParseError> {
        let mut doc = Document::new();
        while self.peek().is_some() {
            let (kw, line, col) = self.word("item kind")?;
            let (name, item) = match kw.as_str() {
                "space" => self.space_item()?,
                "map" => self.map_item(&doc)?,
                "group" => self.group_item(&doc)?,
                "cover" => self.cover_item(&doc)?,
                other => {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("unknown item kind `{other}`"),
                    })
                }
            };
            if doc.get(&name).is_some() {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("duplicate item name `{name}`"),
                });
            }
            doc.items.push((name, item));
        }
        Ok(doc)
    }

    fn space_item(&mut self) -> Result<(String, Item), ParseError> {
        let (name, ..) = self.word("space name")?;
        self.expect(Tok::LBrace)?;
        self.keyword("points")?;
        self.expect(Tok::Colon)?;
        let mut labels = Vec::new();
        while let Some(Tok::Word(_)) = self.peek() {
            labels.push(self.word("point label")?.0);
        }
        self.expect(Tok::Semi)?;
        let carrier = Carrier::new(labels).map_err(|e| self.err_here(e.to_string()))?;
        let mut edges: Vec<(String, String)> = Vec::new();
        if let Some(Tok::Word(w)) = self.peek() {
            if w == "conv" {
                self.keyword("conv")?;
                self.expect(Tok::Colon)?;
                while let Some(Tok::Word(_)) = self.peek() {
                    let (a, ..) = self.word("edge source")?;
                    self.expect(Tok::Gt)?;
                    let (x, line, col) = self.word("edge target")?;
                    let _ = (line, col);
                    edges.push((a, x));
                }
                self.expect(Tok::Semi)?;
            } else {
                return Err(self.err_here(format!("unknown key `{w}` in space item")));
            }
        }
        self.expect(Tok::RBrace)?;
        let space = PseudoSpace::from_edge_labels(
            carrier,
            edges.iter().map(|(a, x)| (a.as_str(), x.as_str())),
        )
        .map_err(|e| self.err_here(e.to_string()))?;
        Ok((name, Item::Space(space)))
    }

    fn resolve_space<'d>(
        &self,
        doc: &'d Document,
        name: &str,
        line: usize,
        col: usize,
    ) -> Result<&'d PseudoSpace, ParseError> {
        doc.space(name).ok_or(ParseError {
            line,
            col,
            message: format!("reference to undefined space `{name}`"),
        })
    }

    fn map_item(&mut self, doc: &Document) -> Result<(String, Item), ParseError> {
        let (name, ..) = self.word("map name")?;
        self.expect(Tok::Colon)?;
        let (dom_name, dl, dc) = self.word("domain space name")?;
        self.expect(Tok::Arrow)?;
        let (cod_name, cl, cc) = self.word("codomain space name")?;
        let dom = self.resolve_space(doc, &dom_name, dl, dc)?.clone();
        let cod = self.resolve_space(doc, &cod_name, cl, cc)?.clone();
        self.expect(Tok::LBrace)?;
        let mut pairs: Vec<(String, String)> = Vec::new();
        while let Some(Tok::Word(_)) = self.peek() {
            let (p, ..) = self.word("point label")?;
            self.expect(Tok::FatArrow)?;
            let (v, ..) = self.word("image label")?;
            self.expect(Tok::Semi)?;
            pairs.push((p, v));
        }
        self.expect(Tok::RBrace)?;
        let map = SpaceMap::from_pairs(dom, cod, pairs.iter().map(|(p, v)| (p.as_str(), v.as_str())))
            .map_err(|e| self.err_here(e.to_string()))?;
        Ok((name, Item::Map { dom_name, cod_name, map }))
    }

    fn group_item(&mut self, doc: &Document) -> Result<(String, Item), ParseError> {
        let (name, ..) = self.word("group name")?;
        self.expect(Tok::LBrace)?;
        self.keyword("space")?;
        self.expect(Tok::Colon)?;
        let (space_name, sl, sc) = self.word("space name")?;
        let space = self.resolve_space(doc, &space_name, sl, sc)?.clone();
        self.expect(Tok::Semi)?;
        self.keyword("unit")?;
        self.expect(Tok::Colon)?;
        let (unit, ..) = self.word("unit label")?;
        self.expect(Tok::Semi)?;
        self.keyword("table")?;
        self.expect(Tok::Colon)?;
        let mut entries: Vec<(String, String, String)> = Vec::new();
        while let Some(Tok::Word(_)) = self.peek() {
            let (a, ..) = self.word("table row label")?;
            self.expect(Tok::Dot)?;
            let (b, ..) = self.word("table column label")?;
            self.expect(Tok::Eq)?;
            let (v, ..) = self.word("table value label")?;
            entries.push((a, b, v));
        }
        self.expect(Tok::Semi)?;
        self.expect(Tok::RBrace)?;
        let group = ConvergenceGroup::from_label_table(
            space,
            &unit,
            entries.iter().map(|(a, b, v)| (a.as_str(), b.as_str(), v.as_str())),
        )
        .map_err(|e| self.err_here(e.to_string()))?;
        Ok((name, Item::Group { space_name, group }))
    }

    fn cover_item(&mut self, doc: &Document) -> Result<(String, Item), ParseError> {
        let (name, ..) = self.word("cover name")?;
        self.keyword("on")?;
        let (space_name, sl, sc) = self.word("space name")?;
        let space = self.resolve_space(doc, &space_name, sl, sc)?.clone();
        self.expect(Tok::LBrace)?;
        let mut pieces: Vec<Vec<String>> = Vec::new();
        while self.peek() == Some(&Tok::LBrace) {
            self.expect(Tok::LBrace)?;
            let mut piece = Vec::new();
            while let Some(Tok::Word(_)) = self.peek() {
                piece.push(self.word("piece point")?.0);
            }
            self.expect(Tok::RBrace)?;
            pieces.push(piece);
        }
        self.expect(Tok::RBrace)?;
        let cover = Cover::from_labels(space, pieces.iter().map(|p| p.iter().map(String::as_str)))
            .map_err(|e| self.err_here(e.to_string()))?;
        Ok((name, Item::Cover { space_name, cover }))
    }
}

// Cover has no derived PartialEq in core; compare documents structurally.
impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Item::Space(a), Item::Space(b)) => a == b,
            (
                Item::Map { dom_name: d1, cod_name: c1, map: m1 },
                Item::Map { dom_name: d2, cod_name: c2, map: m2 },
            ) => d1 == d2 && c1 == c2 && m1 == m2,
            (
                Item::Group { space_name: s1, group: g1 },
                Item::Group { space_name: s2, group: g2 },
            ) => s1 == s2 && g1 == g2,
            (
                Item::Cover { space_name: s1, cover: c1 },
                Item::Cover { space_name: s2, cover: c2 },
            ) => s1 == s2 && c1.space() == c2.space() && c1.pieces() == c2.pieces(),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sierpinski_space() {
        let doc = Document::parse("space S { points: p q; conv: p>q; }").unwrap();
        let s = doc.space("S").unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.conv(0, 1) && !s.conv(1, 0));
    }

    #[test]
    fn parse_swap_map_is_representable_but_discontinuous() {
        let text = "space S { points: p q; conv: p>q; }\nmap f: S -> S { p=>q; q=>p; }\n";
        let doc = Document::parse(text).unwrap();
        let f = doc.map("f").unwrap();
        assert!(!f.is_continuous());
    }

    #[test]
    fn round_trip_is_identity_on_canonical_text() {
        let text = concat!(
            "space S { points: p q; conv: p>q; }\n",
            "space D { points: 0 1; }\n",
            "map f: S -> D { p=>0; q=>1; }\n",
            "group G { space: D; unit: 0; table: 0.0=0 0.1=1 1.0=1 1.1=0; }\n",
            "cover C on S { {p} {q} }\n",
        );
        let doc = Document::parse(text).unwrap();
        assert_eq!(doc.serialize(), text);
        let reparsed = Document::parse(&doc.serialize()).unwrap();
        assert_eq!(reparsed, doc);
    }

    #[test]
    fn duplicate_edges_are_idempotent() {
        let a = Document::parse("space S { points: p q; conv: p>q p>q; }").unwrap();
        let b = Document::parse("space S { points: p q; conv: p>q; }").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_positions() {
        let err = Document::parse("space S { points: p q; conv: p>r; }").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains('r'), "{err}");

        let err = Document::parse("space S { points: p;\n junk: x; }").unwrap_err();
        assert_eq!(err.line, 2);

        let err = Document::parse("map f: A -> B { }").unwrap_err();
        assert!(err.message.contains("undefined space"), "{err}");

        let err = Document::parse("space S { points: p p; }").unwrap_err();
        assert!(err.message.contains("duplicate"), "{err}");
    }

    #[test]
    fn empty_space_and_empty_conv() {
        let doc = Document::parse("space E { points: ; }").unwrap();
        assert_eq!(doc.space("E").unwrap().len(), 0);
        assert_eq!(doc.serialize(), "space E { points:; }\n");
    }

    #[test]
    fn tuple_labels_survive() {
        let text = "space P { points: (a,b) (a,c); conv: (a,b)>(a,c); }\n";
        let doc = Document::parse(text).unwrap();
        assert_eq!(doc.serialize(), text);
    }
}
