//! Line-oriented parser for the catalog text format.
//!
//! Every entry file is a sequence of directives, one per line. `#` starts
//! a comment. The first directive must be `kind`, followed by `src` and
//! the body directives of that kind. Polynomials use `+ - * ^` with
//! integer coefficients and parentheses.

use super::ast::*;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Int(i64),
    Str(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Arrow,
    Eq,
    Pipe,
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

fn lex_line(line_no: usize, line: &str) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\r' => i += 1,
            '#' => break,
            '+' => {
                out.push(Lexed { tok: Tok::Plus, col });
                i += 1;
            }
            '*' => {
                out.push(Lexed { tok: Tok::Star, col });
                i += 1;
            }
            '^' => {
                out.push(Lexed { tok: Tok::Caret, col });
                i += 1;
            }
            '(' => {
                out.push(Lexed { tok: Tok::LParen, col });
                i += 1;
            }
            ')' => {
                out.push(Lexed { tok: Tok::RParen, col });
                i += 1;
            }
            '|' => {
                out.push(Lexed { tok: Tok::Pipe, col });
                i += 1;
            }
            '=' => {
                out.push(Lexed { tok: Tok::Eq, col });
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&'>') {
                    out.push(Lexed { tok: Tok::Arrow, col });
                    i += 2;
                } else {
                    out.push(Lexed { tok: Tok::Minus, col });
                    i += 1;
                }
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match bytes.get(i) {
                        None => return Err(syntax(line_no, col, "unterminated string")),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(Lexed { tok: Tok::Str(s), col });
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                let v = text
                    .parse::<i64>()
                    .map_err(|_| syntax(line_no, col, "integer out of range"))?;
                out.push(Lexed { tok: Tok::Int(v), col });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_' || bytes[i] == '.')
                {
                    i += 1;
                }
                out.push(Lexed { tok: Tok::Word(bytes[start..i].iter().collect()), col });
            }
            other => {
                return Err(syntax(line_no, col, format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Lexed],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, toks: &'a [Lexed]) -> Self {
        Cursor { toks, pos: 0, line }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|l| l.col)
            .unwrap_or_else(|| self.toks.last().map(|l| l.col + 1).unwrap_or(1))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        syntax(self.line, self.col(), msg)
    }

    fn expect_word(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Word(w)) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected '{kw}'"))),
        }
    }

    fn expect_usize(&mut self, what: &str) -> Result<usize> {
        match self.peek() {
            Some(&Tok::Int(v)) if v >= 0 => {
                self.pos += 1;
                Ok(v as usize)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn expect_tok(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn expect_string(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn expect_end(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    fn parse_poly(&mut self) -> Result<PolyAst> {
        let first = self.parse_term()?;
        let mut parts = vec![first];
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    parts.push(self.parse_term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    parts.push(PolyAst::Neg(Box::new(self.parse_term()?)));
                }
                _ => break,
            }
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { PolyAst::Sum(parts) })
    }

    fn parse_term(&mut self) -> Result<PolyAst> {
        let first = self.parse_factor()?;
        let mut parts = vec![first];
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            parts.push(self.parse_factor()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { PolyAst::Prod(parts) })
    }

    fn parse_factor(&mut self) -> Result<PolyAst> {
        let base = self.parse_atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(&Tok::Int(v)) if v >= 0 => {
                    self.pos += 1;
                    Ok(PolyAst::Pow(Box::new(base), v as u32))
                }
                _ => Err(self.err("expected a nonnegative exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn parse_atom(&mut self) -> Result<PolyAst> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(PolyAst::Neg(Box::new(self.parse_factor()?)))
            }
            Some(&Tok::Int(v)) => {
                self.pos += 1;
                Ok(PolyAst::Int(v))
            }
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(PolyAst::Gen(w))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.parse_poly()?;
                self.expect_tok(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.err("expected a polynomial")),
        }
    }
}

struct EntryBuilder {
    kind: Option<EntryKind>,
    src: Option<String>,
    errata: Vec<String>,
    prime: Option<u8>,
    gens: Vec<RawGen>,
    block: usize,
    rels: Vec<PolyAst>,
    srels: Vec<PolyAst>,
    maps: Vec<(String, PolyAst)>,
    on: Option<String>,
    source: Option<String>,
    target: Option<String>,
    free: Vec<String>,
    tors: Vec<(String, u64)>,
    reps: Vec<(String, PolyAst, Option<PolyAst>)>,
    wits: Vec<(PolyAst, PolyAst)>,
    products: Vec<(String, String, u32, String)>,
    modp: Option<String>,
    sq1_ref: Option<String>,
    field_mode: bool,
    stages: Vec<RawStage>,
    tower_notes: Vec<String>,
    expect_claim: Option<String>,
    expect_group: Option<String>,
    group_free: Vec<(usize, usize)>,
    group_tors: Vec<(usize, u64, usize)>,
}

impl EntryBuilder {
    fn new() -> Self {
        EntryBuilder {
            kind: None,
            src: None,
            errata: Vec::new(),
            prime: None,
            gens: Vec::new(),
            block: 0,
            rels: Vec::new(),
            srels: Vec::new(),
            maps: Vec::new(),
            on: None,
            source: None,
            target: None,
            free: Vec::new(),
            tors: Vec::new(),
            reps: Vec::new(),
            wits: Vec::new(),
            products: Vec::new(),
            modp: None,
            sq1_ref: None,
            field_mode: false,
            stages: Vec::new(),
            tower_notes: Vec::new(),
            expect_claim: None,
            expect_group: None,
            group_free: Vec::new(),
            group_tors: Vec::new(),
        }
    }

    fn stage(&mut self, line: usize, col: usize) -> Result<&mut RawStage> {
        self.stages
            .last_mut()
            .ok_or_else(|| syntax(line, col, "directive outside a stage"))
    }
}

pub fn parse_entry(id: &str, text: &str) -> Result<RawEntry> {
    let mut b = EntryBuilder::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = lex_line(line_no, raw_line)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor::new(line_no, &toks);
        let head = c.expect_word("a directive")?;
        let head_col = toks[0].col;
        if head != "kind" && b.kind.is_none() {
            return Err(syntax(line_no, head_col, "the first directive must be 'kind'"));
        }
        match head.as_str() {
            "kind" => {
                if b.kind.is_some() {
                    return Err(syntax(line_no, head_col, "duplicate 'kind'"));
                }
                let w = c.expect_word("an entry kind")?;
                b.kind = Some(match w.as_str() {
                    "algebra" => EntryKind::Algebra,
                    "hom" => EntryKind::Hom,
                    "derivation" => EntryKind::Derivation,
                    "claim" => EntryKind::Claim,
                    "tower" => EntryKind::Tower,
                    "graded" => {
                        c.expect_tok(Tok::Minus, "'-group'")?;
                        c.expect_keyword("group")?;
                        EntryKind::GradedGroup
                    }
                    _ => return Err(syntax(line_no, head_col + 5, format!("unknown kind '{w}'"))),
                });
            }
            "src" => {
                b.src = Some(c.expect_string("a quoted source label")?);
            }
            "errata" => {
                b.errata.push(c.expect_string("a quoted errata note")?);
            }
            "field" | "prime" => {
                let v = c.expect_usize("a prime")?;
                b.prime = Some(v as u8);
            }
            "gen" => {
                let name = c.expect_word("a generator name")?;
                c.expect_keyword("deg")?;
                let degree = c.expect_usize("a degree")?;
                let ext = if c.peek() == Some(&Tok::Word("ext".into())) {
                    c.pos += 1;
                    true
                } else {
                    false
                };
                b.gens.push(RawGen { name, degree, ext, block: b.block });
            }
            "block" => {
                b.block += 1;
            }
            "rel" => {
                let p = c.parse_poly()?;
                b.rels.push(p);
            }
            "srel" => {
                let p = c.parse_poly()?;
                b.srels.push(p);
            }
            "map" => {
                let g = c.expect_word("a generator name")?;
                c.expect_tok(Tok::Arrow, "'->'")?;
                let p = c.parse_poly()?;
                b.maps.push((g, p));
            }
            "sq1" => match b.kind {
                Some(EntryKind::Derivation) => {
                    let g = c.expect_word("a generator name")?;
                    c.expect_tok(Tok::Arrow, "'->'")?;
                    let p = c.parse_poly()?;
                    b.maps.push((g, p));
                }
                Some(EntryKind::Claim) => {
                    b.sq1_ref = Some(c.expect_word("a derivation id")?);
                }
                _ => return Err(syntax(line_no, head_col, "'sq1' is not valid here")),
            },
            "on" => {
                b.on = Some(c.expect_word("an algebra id")?);
            }
            "source" => {
                b.source = Some(c.expect_word("an entry id")?);
            }
            "target" => {
                b.target = Some(c.expect_word("an entry id")?);
            }
            "free" => match b.kind {
                Some(EntryKind::GradedGroup) => {
                    let d = c.expect_usize("a degree")?;
                    let r = c.expect_usize("a rank")?;
                    b.group_free.push((d, r));
                }
                _ => {
                    b.free.push(c.expect_word("a generator name")?);
                }
            },
            "tors" => match b.kind {
                Some(EntryKind::GradedGroup) => {
                    let d = c.expect_usize("a degree")?;
                    c.expect_keyword("order")?;
                    let k = c.expect_usize("an order")? as u64;
                    c.expect_keyword("count")?;
                    let n = c.expect_usize("a count")?;
                    b.group_tors.push((d, k, n));
                }
                _ => {
                    let g = c.expect_word("a generator name")?;
                    c.expect_keyword("order")?;
                    let k = c.expect_usize("an order")? as u64;
                    b.tors.push((g, k));
                }
            },
            "rep" => {
                let g = c.expect_word("a generator name")?;
                c.expect_tok(Tok::Eq, "'='")?;
                let p = c.parse_poly()?;
                let wit = if c.peek() == Some(&Tok::Word("via".into())) {
                    c.pos += 1;
                    Some(c.parse_poly()?)
                } else {
                    None
                };
                b.reps.push((g, p, wit));
            }
            "wit" => {
                let w = c.parse_poly()?;
                c.expect_tok(Tok::Eq, "'='")?;
                let v = c.parse_poly()?;
                b.wits.push((w, v));
            }
            "product" => {
                let g1 = c.expect_word("a generator name")?;
                let g2 = c.expect_word("a generator name")?;
                c.expect_tok(Tok::Eq, "'='")?;
                let k = c.expect_usize("a multiplier")? as u32;
                let g3 = c.expect_word("a generator name")?;
                b.products.push((g1, g2, k, g3));
            }
            "modp" => {
                b.modp = Some(c.expect_word("an algebra id")?);
            }
            "mode" => {
                c.expect_keyword("modp")?;
                b.field_mode = true;
            }
            "stage" => {
                let n = c.expect_usize("a stage number")?;
                if n != b.stages.len() + 1 {
                    return Err(syntax(
                        line_no,
                        head_col,
                        format!("stage {n} out of order; expected stage {}", b.stages.len() + 1),
                    ));
                }
                let w = c.expect_word("'amalgam' or 'hnn'")?;
                let amalgam = match w.as_str() {
                    "amalgam" => true,
                    "hnn" => false,
                    _ => return Err(syntax(line_no, head_col, "expected 'amalgam' or 'hnn'")),
                };
                b.stages.push(RawStage {
                    amalgam,
                    vertices: Vec::new(),
                    edge: None,
                    homs: Default::default(),
                    order4: Vec::new(),
                    surjective_from: None,
                    identify: None,
                    dprods: Vec::new(),
                    notes: Vec::new(),
                });
            }
            "vertex" => {
                let w = c.expect_word("'catalog' or 'stage'")?;
                let v = match w.as_str() {
                    "catalog" => RawVertexRef::Catalog(c.expect_word("an entry id")?),
                    "stage" => RawVertexRef::Stage(c.expect_usize("a stage number")?),
                    _ => return Err(syntax(line_no, head_col, "expected 'catalog' or 'stage'")),
                };
                b.stage(line_no, head_col)?.vertices.push(v);
            }
            "edge" => {
                c.expect_keyword("catalog")?;
                let id = c.expect_word("an entry id")?;
                b.stage(line_no, head_col)?.edge = Some(id);
            }
            "res" | "res1" | "res2" | "theta" => {
                let slot = match head.as_str() {
                    "res" | "res1" => 0,
                    _ => 1,
                };
                if c.peek() == Some(&Tok::Word("hom".into())) {
                    c.pos += 1;
                    let id = c.expect_word("a hom id")?;
                    let stage = b.stage(line_no, head_col)?;
                    if stage.homs[slot].is_some() {
                        return Err(syntax(line_no, head_col, format!("duplicate '{head}' map")));
                    }
                    stage.homs[slot] = Some(RawHomRef::Entry(id));
                } else {
                    let g = c.expect_word("a generator name")?;
                    c.expect_tok(Tok::Arrow, "'->'")?;
                    let p = c.parse_poly()?;
                    let stage = b.stage(line_no, head_col)?;
                    match &mut stage.homs[slot] {
                        Some(RawHomRef::Inline(v)) => v.push((g, p)),
                        Some(RawHomRef::Entry(_)) => {
                            return Err(syntax(
                                line_no,
                                head_col,
                                format!("'{head}' already names a hom entry"),
                            ));
                        }
                        none => *none = Some(RawHomRef::Inline(vec![(g, p)])),
                    }
                }
            }
            "identify" => {
                c.expect_keyword("catalog")?;
                let id = c.expect_word("an entry id")?;
                b.stage(line_no, head_col)?.identify = Some(id);
            }
            "fact" => {
                c.expect_keyword("order4")?;
                c.expect_keyword("deg")?;
                let d = c.expect_usize("a degree")?;
                b.stage(line_no, head_col)?.order4.push(d);
            }
            "check" => {
                c.expect_keyword("surjective")?;
                c.expect_keyword("from")?;
                let d = c.expect_usize("a degree")?;
                b.stage(line_no, head_col)?.surjective_from = Some(d);
            }
            "dprod" => {
                let u = c.parse_poly()?;
                c.expect_tok(Tok::Pipe, "'|'")?;
                let v = c.parse_poly()?;
                c.expect_tok(Tok::Pipe, "'|'")?;
                let w = c.parse_poly()?;
                b.stage(line_no, head_col)?.dprods.push((u, v, w));
            }
            "note" => {
                let text = c.expect_string("a quoted note")?;
                if b.stages.is_empty() {
                    b.tower_notes.push(text);
                } else {
                    b.stage(line_no, head_col)?.notes.push(text);
                }
            }
            "expect" => {
                let w = c.expect_word("'claim' or 'group'")?;
                match w.as_str() {
                    "claim" => b.expect_claim = Some(c.expect_word("an entry id")?),
                    "group" => b.expect_group = Some(c.expect_word("an entry id")?),
                    _ => return Err(syntax(line_no, head_col, "expected 'claim' or 'group'")),
                }
            }
            other => {
                return Err(syntax(line_no, head_col, format!("unknown directive '{other}'")));
            }
        }
        c.expect_end()?;
    }

    finish(id, b)
}

fn finish(id: &str, b: EntryBuilder) -> Result<RawEntry> {
    let kind = b.kind.ok_or_else(|| syntax(1, 1, "missing 'kind' directive"))?;
    let src = b.src.ok_or_else(|| syntax(1, 1, "missing 'src' directive"))?;
    let need_prime = |what: &str| {
        b.prime
            .ok_or_else(|| syntax(1, 1, format!("missing '{what}' directive")))
    };
    let body = match kind {
        EntryKind::Algebra => RawBody::Algebra(RawAlgebra {
            prime: need_prime("field")?,
            gens: b.gens,
            rels: b.rels,
        }),
        EntryKind::Hom => RawBody::Hom(RawHom {
            source: b.source.ok_or_else(|| syntax(1, 1, "missing 'source' directive"))?,
            target: b.target.ok_or_else(|| syntax(1, 1, "missing 'target' directive"))?,
            maps: b.maps,
        }),
        EntryKind::Derivation => RawBody::Derivation(RawDerivation {
            on: b.on.ok_or_else(|| syntax(1, 1, "missing 'on' directive"))?,
            maps: b.maps,
        }),
        EntryKind::Claim => RawBody::Claim(RawClaim {
            prime: need_prime("prime")?,
            gens: b.gens,
            rels: b.rels,
            srels: b.srels,
            free: b.free,
            tors: b.tors,
            reps: b.reps,
            wits: b.wits,
            products: b.products,
            modp: b.modp,
            sq1: b.sq1_ref,
        }),
        EntryKind::Tower => RawBody::Tower(RawTower {
            prime: need_prime("prime")?,
            field_mode: b.field_mode,
            stages: b.stages,
            notes: b.tower_notes,
            expect_claim: b.expect_claim,
            expect_group: b.expect_group,
        }),
        EntryKind::GradedGroup => RawBody::Group(RawGroup {
            prime: need_prime("prime")?,
            free: b.group_free,
            tors: b.group_tors,
        }),
    };
    Ok(RawEntry { id: id.to_string(), kind, src, errata: b.errata, body })
}
