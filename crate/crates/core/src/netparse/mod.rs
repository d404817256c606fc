//! The `.bn` model format.
//!
//! One rule per line, `name : expression`, with `!`, `&`, `|`, parentheses and
//! the constants `0`/`1`. `#` starts a comment that runs to the end of the
//! line. Components are numbered in the order their rules appear.
//!
//! ```text
//! # Two mutually coupled components
//! a : (a & b) | (!a & !b)
//! b : (a & b) | (!a & !b)
//! ```

mod dnf;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::model::{BooleanModel, TruthTable, MAX_COMPONENTS};
use crate::par::{self, Exec};

pub use dnf::serialize_model;

/// Nesting limit for parentheses and negations.
const MAX_DEPTH: usize = 256;

/// A parse failure, located at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected {
        expected: &'static str,
        found: String,
    },
    #[error("duplicate rule for `{0}`")]
    DuplicateRule(String),
    #[error("`{0}` has no rule")]
    Undefined(String),
    #[error("the model contains no rules")]
    EmptyModel,
    #[error("the model has {n} components; at most {max} are supported")]
    TooManyComponents { n: usize, max: usize },
    #[error("expression nested too deeply")]
    TooDeep,
}

/// Expression syntax tree of a rule's right-hand side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    Const(bool),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Or(..) => 0,
            Expr::And(..) => 1,
            _ => 2,
        }
    }

    fn fmt_child(&self, child: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if child.precedence() < self.precedence() {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

/// Prints with the minimal parentheses needed to re-parse to the same tree
/// shape up to associativity.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => f.write_str(v),
            Expr::Const(b) => f.write_str(if *b { "1" } else { "0" }),
            Expr::Not(e) => {
                f.write_str("!")?;
                self.fmt_child(e, f)
            }
            Expr::And(l, r) => {
                self.fmt_child(l, f)?;
                f.write_str(" & ")?;
                self.fmt_child(r, f)
            }
            Expr::Or(l, r) => {
                self.fmt_child(l, f)?;
                f.write_str(" | ")?;
                self.fmt_child(r, f)
            }
        }
    }
}

/// A parsed rule before name resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub expr: Expr,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Const(bool),
    Colon,
    Not,
    And,
    Or,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Const(b) => write!(f, "`{}`", u8::from(*b)),
            Tok::Colon => f.write_str("`:`"),
            Tok::Not => f.write_str("`!`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
        }
    }
}

/// A token with its 1-based column.
type Spanned = (Tok, usize);

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn tokenize(line_no: usize, line: &str) -> Result<(Vec<Spanned>, usize), ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {}
            ':' => toks.push((Tok::Colon, col)),
            '!' => toks.push((Tok::Not, col)),
            '&' => toks.push((Tok::And, col)),
            '|' => toks.push((Tok::Or, col)),
            '(' => toks.push((Tok::LParen, col)),
            ')' => toks.push((Tok::RParen, col)),
            '0' | '1'
                if !chars
                    .get(i + 1)
                    .is_some_and(|d| d.is_ascii_alphanumeric() || *d == '_') =>
            {
                toks.push((Tok::Const(c == '1'), col))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..=i].iter().collect()), col));
            }
            c => return Err(err(line_no, col, ParseErrorKind::UnexpectedChar(c))),
        }
        i += 1;
    }
    // Column just past the last significant character, for end-of-line errors.
    let end = chars.iter().position(|&c| c == '#').unwrap_or(chars.len());
    let end = chars[..end]
        .iter()
        .rposition(|c| !c.is_whitespace())
        .map_or(1, |p| p + 2);
    Ok((toks, end))
}

struct LineParser<'a> {
    line: usize,
    toks: &'a [Spanned],
    pos: usize,
    end_col: usize,
    refs: Vec<(String, usize)>,
}

impl LineParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |&(_, c)| c)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let found = self
            .peek()
            .map_or_else(|| "end of line".to_string(), Tok::to_string);
        err(
            self.line,
            self.col(),
            ParseErrorKind::Unexpected { expected, found },
        )
    }

    fn rule(&mut self) -> Result<(String, Expr), ParseError> {
        let name = match self.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            _ => return Err(self.unexpected("a component name")),
        };
        self.pos += 1;
        if self.peek() != Some(&Tok::Colon) {
            return Err(self.unexpected("`:`"));
        }
        self.pos += 1;
        let expr = self.expr(0)?;
        if self.peek().is_some() {
            return Err(self.unexpected("`&`, `|` or end of line"));
        }
        Ok((name, expr))
    }

    fn expr(&mut self, depth: usize) -> Result<Expr, ParseError> {
        let mut lhs = self.term(depth)?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let rhs = self.term(depth)?;
            lhs = Expr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self, depth: usize) -> Result<Expr, ParseError> {
        let mut lhs = self.factor(depth)?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let rhs = self.factor(depth)?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self, depth: usize) -> Result<Expr, ParseError> {
        if depth > MAX_DEPTH {
            return Err(err(self.line, self.col(), ParseErrorKind::TooDeep));
        }
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Expr::Not(Box::new(self.factor(depth + 1)?)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr(depth + 1)?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.refs.push((name.clone(), col));
                Ok(Expr::Var(name))
            }
            Some(Tok::Const(b)) => {
                self.pos += 1;
                Ok(Expr::Const(b))
            }
            _ => Err(self.unexpected("an operand")),
        }
    }
}

/// Splits `text` into rules without resolving identifiers.
pub fn parse_rules(text: &str) -> Result<Vec<Rule>, ParseError> {
    parse_rules_with_refs(text).map(|(rules, _)| rules)
}

type Reference = (String, usize, usize);

fn parse_rules_with_refs(text: &str) -> Result<(Vec<Rule>, Vec<Reference>), ParseError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut rules = Vec::new();
    let mut refs = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let (toks, end_col) = tokenize(line_no, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = LineParser {
            line: line_no,
            toks: &toks,
            pos: 0,
            end_col,
            refs: Vec::new(),
        };
        let (name, expr) = p.rule()?;
        refs.extend(p.refs.into_iter().map(|(n, c)| (n, line_no, c)));
        rules.push(Rule {
            name,
            expr,
            line: line_no,
        });
    }
    Ok((rules, refs))
}

/// Parses a model. Every identifier used in an expression needs its own rule.
pub fn parse_model(text: &str) -> Result<BooleanModel, ParseError> {
    let (rules, refs) = parse_rules_with_refs(text)?;
    if rules.is_empty() {
        let lines = text.split('\n').count().max(1);
        return Err(err(lines, 1, ParseErrorKind::EmptyModel));
    }
    let mut index = HashMap::new();
    for (i, rule) in rules.iter().enumerate() {
        if index.insert(rule.name.as_str(), i).is_some() {
            return Err(err(
                rule.line,
                1,
                ParseErrorKind::DuplicateRule(rule.name.clone()),
            ));
        }
    }
    if let Some((name, line, col)) = refs
        .iter()
        .find(|(n, _, _)| !index.contains_key(n.as_str()))
    {
        return Err(err(*line, *col, ParseErrorKind::Undefined(name.clone())));
    }
    let n = rules.len();
    if n > MAX_COMPONENTS {
        let line = rules[MAX_COMPONENTS].line;
        return Err(err(
            line,
            1,
            ParseErrorKind::TooManyComponents {
                n,
                max: MAX_COMPONENTS,
            },
        ));
    }
    let tables = rules.iter().map(|r| compile(&r.expr, &index, n)).collect();
    let names = rules.into_iter().map(|r| r.name).collect();
    Ok(BooleanModel::new(names, tables).expect("parsed rules form a valid model"))
}

/// Word patterns of the projections on the six low variables.
const LOW_VARS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

enum Compiled {
    Var(usize),
    Const(bool),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn resolve(e: &Expr, index: &HashMap<&str, usize>) -> Compiled {
        match e {
            Expr::Var(v) => Compiled::Var(index[v.as_str()]),
            Expr::Const(b) => Compiled::Const(*b),
            Expr::Not(a) => Compiled::Not(Box::new(Self::resolve(a, index))),
            Expr::And(a, b) => Compiled::And(
                Box::new(Self::resolve(a, index)),
                Box::new(Self::resolve(b, index)),
            ),
            Expr::Or(a, b) => Compiled::Or(
                Box::new(Self::resolve(a, index)),
                Box::new(Self::resolve(b, index)),
            ),
        }
    }

    /// Values on the 64 states starting at `base` (a multiple of 64).
    fn word(&self, base: u32) -> u64 {
        match self {
            Compiled::Var(j) if *j < 6 => LOW_VARS[*j],
            Compiled::Var(j) => {
                if base >> j & 1 == 1 {
                    u64::MAX
                } else {
                    0
                }
            }
            Compiled::Const(b) => {
                if *b {
                    u64::MAX
                } else {
                    0
                }
            }
            Compiled::Not(a) => !a.word(base),
            Compiled::And(a, b) => a.word(base) & b.word(base),
            Compiled::Or(a, b) => a.word(base) | b.word(base),
        }
    }
}

/// Evaluates `expr` on every state, 64 states per step.
fn compile(expr: &Expr, index: &HashMap<&str, usize>, n: usize) -> TruthTable {
    let compiled = Compiled::resolve(expr, index);
    let words = par::map_range(Exec::default(), TruthTable::word_count(n), |w| {
        compiled.word((w as u32) << 6)
    });
    TruthTable::from_words(n, words).expect("word count matches n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::State;

    fn at(m: &BooleanModel, s: &str) -> String {
        m.eval(s.parse::<State>().unwrap()).unwrap().to_string()
    }

    #[test]
    fn parses_chain_model() {
        let m = parse_model("a : 1\nb : a\nc : b").unwrap();
        assert_eq!(m.names(), ["a", "b", "c"]);
        assert_eq!(at(&m, "000"), "100");
        assert_eq!(at(&m, "110"), "111");
        assert_eq!(at(&m, "011"), "101");
    }

    #[test]
    fn parses_fig1_model() {
        let m = parse_model("a : (a & b) | (!a & !b)\nb : (a & b) | (!a & !b)").unwrap();
        let rows = [("00", "11"), ("01", "00"), ("10", "00"), ("11", "11")];
        for (x, y) in rows {
            assert_eq!(at(&m, x), y);
        }
    }

    #[test]
    fn precedence_not_and_or() {
        // a | b & !c  ==  a | (b & (!c))
        let m = parse_model("a : a | b & !c\nb : b\nc : c").unwrap();
        for x in 0..8u32 {
            let (a, b, c) = (x & 1 == 1, x & 2 == 2, x & 4 == 4);
            assert_eq!(m.table(0).get(x), a || (b && !c));
        }
        let m = parse_model("a : !a & b\nb : b").unwrap();
        assert!(m.table(0).get(0b10));
        assert!(!m.table(0).get(0b11));
    }

    #[test]
    fn wide_models_compile_word_parallel() {
        let mut text = String::new();
        for i in 0..9 {
            text.push_str(&format!("v{i} : v{} & !v{}\n", (i + 1) % 9, (i + 7) % 9));
        }
        let m = parse_model(&text).unwrap();
        for x in 0..512u32 {
            for i in 0..9 {
                let expect = x >> ((i + 1) % 9) & 1 == 1 && x >> ((i + 7) % 9) & 1 == 0;
                assert_eq!(m.table(i).get(x), expect);
            }
        }
    }

    #[test]
    fn comments_blank_lines_and_crlf() {
        let m = parse_model("# header\r\n\r\na : b # trailing\r\n  b:1\r\n").unwrap();
        assert_eq!(m.names(), ["a", "b"]);
        assert_eq!(at(&m, "00"), "01");
    }

    #[test]
    fn identifiers_may_start_with_digit_free_prefix() {
        let m = parse_model("x_1 : _y0\n_y0 : 0").unwrap();
        assert_eq!(m.names(), ["x_1", "_y0"]);
    }

    #[test]
    fn undefined_identifier() {
        let e = parse_model("a : b").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Undefined("b".into()));
        assert_eq!((e.line, e.column), (1, 5));
    }

    #[test]
    fn duplicate_rule() {
        let e = parse_model("a : 1\nb : a\na : 0").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateRule("a".into()));
        assert_eq!(e.line, 3);
    }

    #[test]
    fn empty_model() {
        for text in ["", "\n\n", "# nothing here\n"] {
            let e = parse_model(text).unwrap_err();
            assert_eq!(e.kind, ParseErrorKind::EmptyModel);
            assert!(e.line >= 1 && e.column == 1);
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cases = [
            ("a : ", 1, 4),
            ("a : (a", 1, 7),
            ("a  a", 1, 4),
            ("a : a &", 1, 8),
            ("\na : a $ b", 2, 7),
            ("a : a b", 1, 7),
            ("a : )", 1, 5),
            (": a", 1, 1),
        ];
        for (text, line, col) in cases {
            let e = parse_model(text).unwrap_err();
            assert_eq!((e.line, e.column), (line, col), "{text:?}: {e}");
        }
    }

    #[test]
    fn deep_nesting_is_rejected() {
        let text = format!("a : {}a{}", "(".repeat(1000), ")".repeat(1000));
        assert_eq!(
            parse_model(&text).unwrap_err().kind,
            ParseErrorKind::TooDeep
        );
        let text = format!("a : {}a", "!".repeat(100));
        assert!(parse_model(&text).is_ok());
    }

    #[test]
    fn too_many_components() {
        let text: String = (0..25).map(|i| format!("c{i} : 0\n")).collect();
        let e = parse_model(&text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::TooManyComponents { n: 25, max: 24 });
        assert_eq!(e.line, 25);
    }

    #[test]
    fn expr_display_reparses() {
        let rules = parse_rules("a : !(a | b) & (c | !!a)").unwrap();
        let shown = rules[0].expr.to_string();
        assert_eq!(shown, "!(a | b) & (c | !!a)");
        assert_eq!(
            parse_rules(&format!("a : {shown}")).unwrap()[0].expr,
            rules[0].expr
        );
    }
}
