//! Group description language.
//!
//! ```text
//! # comment
//! set precision = 40
//! set seed = 7
//! group G = shift(C2) * companion(p=3, poly=X^2+3)
//! group H = linear(p=2, matrix=[[0,2],[1,0]]) * heisenberg(p=5, a=1, b=2)
//! ```

use std::collections::BTreeSet;
use std::fmt;

use contractio::finitegroup::{make_catalog_group, CatalogKind, FiniteGroup};
use contractio::groupmodel::{Block, ContractionGroup};
use contractio::linalg::Matrix;
use contractio::padic::{PAdicPoly, RatPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("line {line}, column {column}: expected {}; found {found}", expected.join(" or "))]
    Syntax {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("line {line}, column {column}: {message}")]
    Validation {
        line: usize,
        column: usize,
        message: String,
    },
}

impl DslError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            DslError::Syntax { line, column, .. } | DslError::Validation { line, column, .. } => {
                (*line, *column)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub precision: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDef {
    pub name: String,
    pub group: ContractionGroup,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub settings: Settings,
    pub groups: Vec<GroupDef>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&ContractionGroup> {
        self.groups.iter().find(|g| g.name == name).map(|g| &g.group)
    }
}

/// Canonical text of a document; parsing it again gives an equal document.
impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.settings.precision {
            writeln!(f, "set precision = {p}")?;
        }
        if let Some(s) = self.settings.seed {
            writeln!(f, "set seed = {s}")?;
        }
        for def in &self.groups {
            let blocks: Vec<String> = def.group.blocks().iter().map(Block::to_string).collect();
            writeln!(f, "group {} = {}", def.name, blocks.join(" * "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            out.push(Token { tok: Tok::Newline, line, column });
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Int(text.parse().expect("digits")),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        }
        if "()[]{},;=*/+-^".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line, column });
            i += 1;
            column += 1;
            continue;
        }
        return Err(DslError::Syntax {
            line,
            column,
            expected: vec!["a token".into()],
            found: format!("`{c}`"),
        });
    }
    out.push(Token { tok: Tok::Eof, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Nesting depth of brackets; newlines are insignificant inside.
    depth: usize,
}

type PResult<T> = Result<T, DslError>;

impl Parser {
    fn peek(&mut self) -> &Token {
        if self.depth > 0 {
            while self.toks[self.pos].tok == Tok::Newline {
                self.pos += 1;
            }
        }
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        self.peek();
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&mut self, expected: &[&str]) -> PResult<T> {
        let t = self.peek().clone();
        Err(DslError::Syntax {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        })
    }

    fn is_sym(&mut self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn sym(&mut self, c: char) -> PResult<Token> {
        if self.is_sym(c) {
            let t = self.next();
            match c {
                '(' | '[' | '{' => self.depth += 1,
                ')' | ']' | '}' => self.depth = self.depth.saturating_sub(1),
                _ => {}
            }
            Ok(t)
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Token)> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => Ok((s, self.next())),
            _ => self.fail(&[what]),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Token> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => Ok(self.next()),
            _ => self.fail(&[&format!("`{kw}`")]),
        }
    }

    fn int(&mut self) -> PResult<(BigInt, Token)> {
        let neg = if self.is_sym('-') {
            self.next();
            true
        } else {
            false
        };
        match self.peek().tok.clone() {
            Tok::Int(n) => Ok((if neg { -n } else { n }, self.next())),
            _ => self.fail(&["an integer"]),
        }
    }

    fn small<T: TryFrom<i64>>(&mut self, what: &str) -> PResult<(T, Token)> {
        let (n, t) = self.int()?;
        let v = i64::try_from(&n)
            .ok()
            .and_then(|v| T::try_from(v).ok())
            .ok_or_else(|| DslError::Validation {
                line: t.line,
                column: t.column,
                message: format!("{what} {n} is out of range"),
            })?;
        Ok((v, t))
    }

    fn rational(&mut self) -> PResult<BigRational> {
        let (n, _) = self.int()?;
        if self.is_sym('/') {
            self.next();
            let (d, t) = self.int()?;
            if d.is_zero() {
                return Err(DslError::Validation {
                    line: t.line,
                    column: t.column,
                    message: "zero denominator".into(),
                });
            }
            return Ok(BigRational::new(n, d));
        }
        Ok(BigRational::from_integer(n))
    }

    fn document(&mut self) -> PResult<Document> {
        let mut doc = Document::default();
        let mut names = BTreeSet::new();
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Eof => break,
                Tok::Newline => {
                    self.next();
                    continue;
                }
                Tok::Ident(kw) if kw == "group" => {
                    self.next();
                    let (name, nt) = self.ident("a group name")?;
                    if !names.insert(name.clone()) {
                        return Err(DslError::Validation {
                            line: nt.line,
                            column: nt.column,
                            message: format!("group `{name}` is defined twice"),
                        });
                    }
                    self.sym('=')?;
                    let mut blocks = vec![self.block()?];
                    while self.is_sym('*') {
                        self.next();
                        while self.peek().tok == Tok::Newline {
                            self.next();
                        }
                        blocks.push(self.block()?);
                    }
                    doc.groups.push(GroupDef {
                        name,
                        group: ContractionGroup::new(blocks),
                    });
                }
                Tok::Ident(kw) if kw == "set" => {
                    self.next();
                    let (key, kt) = self.ident("`precision` or `seed`")?;
                    self.sym('=')?;
                    match key.as_str() {
                        "precision" => {
                            let (v, vt) = self.small::<u32>("precision")?;
                            if v == 0 {
                                return Err(DslError::Validation {
                                    line: vt.line,
                                    column: vt.column,
                                    message: "precision must be at least 1".into(),
                                });
                            }
                            doc.settings.precision = Some(v);
                        }
                        "seed" => doc.settings.seed = Some(self.small::<u64>("seed")?.0),
                        _ => {
                            return Err(DslError::Syntax {
                                line: kt.line,
                                column: kt.column,
                                expected: vec!["`precision`".into(), "`seed`".into()],
                                found: format!("`{key}`"),
                            })
                        }
                    }
                }
                _ => return self.fail(&["`group`", "`set`"]),
            }
            match self.peek().tok {
                Tok::Newline | Tok::Eof => {}
                _ => return self.fail(&["`*`", "end of line"]),
            }
        }
        Ok(doc)
    }

    fn block(&mut self) -> PResult<Block> {
        let (kind, kt) = self.ident("a block (`shift`, `linear`, `companion`, `heisenberg`)")?;
        let invalid = |message: String| DslError::Validation {
            line: kt.line,
            column: kt.column,
            message,
        };
        match kind.as_str() {
            "shift" => {
                self.sym('(')?;
                let g = self.finite_group()?;
                self.sym(')')?;
                Block::shift(g).map_err(|e| invalid(e.to_string()))
            }
            "linear" => {
                self.sym('(')?;
                let p = self.param_prime()?;
                self.sym(',')?;
                self.keyword("matrix")?;
                self.sym('=')?;
                let m = self.matrix()?;
                self.sym(')')?;
                Block::linear(p, m).map_err(|e| invalid(e.to_string()))
            }
            "companion" => {
                self.sym('(')?;
                let p = self.param_prime()?;
                self.sym(',')?;
                self.keyword("poly")?;
                self.sym('=')?;
                let f = self.poly()?;
                self.sym(')')?;
                Block::companion(p, f).map_err(|e| invalid(e.to_string()))
            }
            "heisenberg" => {
                self.sym('(')?;
                let p = self.param_prime()?;
                self.sym(',')?;
                self.keyword("a")?;
                self.sym('=')?;
                let (a, _) = self.small::<i64>("weight")?;
                self.sym(',')?;
                self.keyword("b")?;
                self.sym('=')?;
                let (b, _) = self.small::<i64>("weight")?;
                self.sym(')')?;
                Block::heisenberg(p, a, b).map_err(|e| invalid(e.to_string()))
            }
            _ => Err(DslError::Syntax {
                line: kt.line,
                column: kt.column,
                expected: vec![
                    "`shift`".into(),
                    "`linear`".into(),
                    "`companion`".into(),
                    "`heisenberg`".into(),
                ],
                found: format!("`{kind}`"),
            }),
        }
    }

    fn param_prime(&mut self) -> PResult<u64> {
        self.keyword("p")?;
        self.sym('=')?;
        Ok(self.small::<u64>("prime")?.0)
    }

    fn finite_group(&mut self) -> PResult<FiniteGroup> {
        let (name, t) = self.ident("a finite group (`C<n>`, `S<n>`, `A<n>`, `D<n>`, `table{...}`)")?;
        let invalid = |message: String| DslError::Validation {
            line: t.line,
            column: t.column,
            message,
        };
        if name == "table" {
            self.sym('{')?;
            let mut rows = vec![vec![]];
            loop {
                let (v, _) = self.small::<usize>("table entry")?;
                rows.last_mut().unwrap().push(v);
                if self.is_sym(',') {
                    self.next();
                } else if self.is_sym(';') {
                    self.next();
                    rows.push(vec![]);
                } else {
                    break;
                }
            }
            self.sym('}')?;
            return FiniteGroup::from_table(rows, None).map_err(|e| invalid(e.to_string()));
        }
        let kind: CatalogKind = name.parse().map_err(|e: contractio::error::FiniteGroupError| {
            DslError::Syntax {
                line: t.line,
                column: t.column,
                expected: vec!["`C<n>`, `S<n>`, `A<n>`, `D<n>` or `table{...}`".into()],
                found: format!("`{name}` ({e})"),
            }
        })?;
        make_catalog_group(kind).map_err(|e| invalid(e.to_string()))
    }

    fn matrix(&mut self) -> PResult<Matrix> {
        let open = self.sym('[')?;
        let mut rows = Vec::new();
        loop {
            self.sym('[')?;
            let mut row = vec![self.rational()?];
            while self.is_sym(',') {
                self.next();
                row.push(self.rational()?);
            }
            self.sym(']')?;
            rows.push(row);
            if self.is_sym(',') {
                self.next();
            } else {
                break;
            }
        }
        self.sym(']')?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(DslError::Validation {
                line: open.line,
                column: open.column,
                message: format!(
                    "matrix is not square: {} rows with lengths {:?}",
                    n,
                    rows.iter().map(Vec::len).collect::<Vec<_>>()
                ),
            });
        }
        Ok(Matrix::from_rows(rows))
    }

    /// Sum of terms `c`, `c*X^k`, `X^k`, `c*X`, each with an optional sign.
    fn poly(&mut self) -> PResult<PAdicPoly> {
        let start = self.peek().clone();
        let mut coeffs: Vec<BigRational> = Vec::new();
        let mut first = true;
        loop {
            let mut sign = BigRational::one();
            if self.is_sym('-') {
                self.next();
                sign = -sign;
            } else if self.is_sym('+') {
                self.next();
            } else if !first {
                break;
            }
            first = false;
            let mut c = None;
            if matches!(self.peek().tok, Tok::Int(_)) {
                c = Some(self.rational()?);
                if self.is_sym('*') {
                    self.next();
                } else {
                    add_term(&mut coeffs, sign * c.unwrap(), 0);
                    continue;
                }
            }
            self.keyword("X")?;
            let mut k = 1usize;
            if self.is_sym('^') {
                self.next();
                k = self.small::<usize>("exponent")?.0;
            }
            add_term(&mut coeffs, sign * c.unwrap_or_else(BigRational::one), k);
        }
        PAdicPoly::new(RatPoly::new(coeffs)).map_err(|e| DslError::Validation {
            line: start.line,
            column: start.column,
            message: e.message,
        })
    }
}

fn add_term(coeffs: &mut Vec<BigRational>, c: BigRational, k: usize) {
    if coeffs.len() <= k {
        coeffs.resize(k + 1, BigRational::zero());
    }
    coeffs[k] += c;
}

/// Parses and validates a whole document.
pub fn parse(src: &str) -> Result<Document, DslError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        depth: 0,
    };
    p.document()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_blocks() {
        let d = parse("group G = shift(C2) * companion(p=3, poly=X^2+3)").unwrap();
        assert_eq!(d.groups.len(), 1);
        assert_eq!(d.groups[0].group.len(), 2);
        assert_eq!(
            d.to_string(),
            "group G = shift(C2) * companion(p=3, poly=X^2 + 3)\n"
        );
    }

    #[test]
    fn validation_messages() {
        let e = parse("group H = linear(p=3, matrix=[[1,0],[0,3]])").unwrap_err();
        let DslError::Validation { line, column, message } = e else {
            panic!("{e:?}")
        };
        assert_eq!((line, column), (1, 11));
        assert_eq!(message, "char poly X^2 - 4*X + 3 has root of valuation 0");
        let e = parse("group K = heisenberg(p=5, a=0, b=1)").unwrap_err();
        assert!(matches!(e, DslError::Validation { .. }), "{e}");
        assert!(e.to_string().contains("a"), "{e}");
    }

    #[test]
    fn syntax_positions() {
        let e = parse("# header\ngroup G = shift(C2) +").unwrap_err();
        let DslError::Syntax { line, column, expected, .. } = e else {
            panic!()
        };
        assert_eq!((line, column), (2, 21));
        assert!(expected.contains(&"`*`".to_string()));
        let e = parse("group G = shift(Q7)").unwrap_err();
        assert_eq!(e.position(), (1, 17));
        assert!(parse("group G = shift(C2)\ngroup G = shift(C3)").is_err());
        assert!(parse("groop G = shift(C2)").is_err());
    }

    #[test]
    fn settings_tables_fractions() {
        let src = "set precision = 40\nset seed = 9\n\
                   group T = shift(table{0,1;1,0}) * linear(p=2, matrix=[[1/2, 1],\n [0, 2]])";
        let e = parse(src).unwrap_err();
        assert!(e.to_string().contains("valuation"), "{e}");
        let src = "set precision = 40\nset seed = 9\n\
                   group T = shift(table{0,1;1,0}) * linear(p=2, matrix=[[2, 1/3],\n [0, 4]])";
        let d = parse(src).unwrap();
        assert_eq!(d.settings, Settings { precision: Some(40), seed: Some(9) });
        assert_eq!(parse(&d.to_string()).unwrap(), d);
        assert!(d.to_string().contains("matrix=[[2,1/3],[0,4]]"));
    }
}
