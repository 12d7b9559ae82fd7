//! Rule values and their textual syntax.
//!
//! Rules are written in a small surface language shared by the built-in
//! catalog and user rules in knowledge-base files:
//!
//! ```text
//! genus(x, y) & nec(z, x) -> nec(z, y)
//! nec(x, y) & contrary(y, y') -> ~genus(x, y')
//! genus(x, y) -> exists z [z != x & genus(z, y)]
//! genus(x, z) & igenus(y, z) & all w [w != y & igenus(w, z) => ~genus(x, w)] -> genus_eq(x, y)
//! ```
//!
//! Bare identifiers are variables, quoted strings are expression constants
//! and integers are category constants. `~` marks a negative literal.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::signature::{Category, Polarity, Pred, Sort};

pub type Var = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Expr(String),
    Cat(Category),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub pred: Pred,
    pub args: Vec<Term>,
    pub pol: Polarity,
}

impl Literal {
    pub fn new(pred: Pred, args: Vec<Term>, pol: Polarity) -> Literal {
        match pred {
            Pred::Cont => Literal {
                pred: Pred::Nec,
                args,
                pol: pol.flip(),
            },
            _ => Literal { pred, args, pol },
        }
    }

    pub fn negated(&self) -> Literal {
        Literal {
            pred: self.pred,
            args: self.args.clone(),
            pol: self.pol.flip(),
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) => Some(*v),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BodyItem {
    Lit(Literal),
    Neq(Term, Term),
    /// The variable ranges over every interned expression.
    Dom(Var),
    /// Every instance of `vars` satisfying `guard` must satisfy `require`.
    Forall {
        vars: Vec<Var>,
        guard: Vec<BodyItem>,
        require: Literal,
    },
    /// Extensions of both expressions are nonempty and differ.
    ExtNeq(Term, Term),
    /// The first term is the pair of the other two.
    Pair(Term, Term, Term),
    NotPair(Term),
}

impl BodyItem {
    pub fn is_literal(&self) -> bool {
        matches!(self, BodyItem::Lit(_))
    }

    /// Items whose truth can flip from true to false as facts are added.
    pub fn is_nonmonotone(&self) -> bool {
        matches!(self, BodyItem::Forall { .. } | BodyItem::ExtNeq(..))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Head {
    Lit(Literal),
    AnyOf(Vec<Literal>),
    Exists {
        vars: Vec<Var>,
        body: Vec<BodyItem>,
    },
    Eq(Term, Term),
    Neq(Term, Term),
    False,
    /// Extension of the first is a subset of the second's (both nonempty).
    ExtSub(Term, Term),
    /// Extension of the first is a proper subset of the second's (both nonempty).
    ExtProperSub(Term, Term),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Generative,
    Constraint,
}

impl Mode {
    pub fn keyword(self) -> &'static str {
        match self {
            Mode::Generative => "generative",
            Mode::Constraint => "constraint",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub id: String,
    pub source: String,
    pub vars: Vec<String>,
    pub body: Vec<BodyItem>,
    pub head: Head,
    pub mode: Mode,
    /// Readings of corrupt formulas; only evaluated with `enable_dubious`.
    pub dubious: bool,
}

impl Rule {
    /// Parses `text` as a generative rule when the head is a single literal
    /// and as a constraint otherwise.
    pub fn parse(id: &str, source: &str, text: &str) -> Result<Rule> {
        let (vars, body, head) = Parser::new(text)?.rule()?;
        let mode = match head {
            Head::Lit(_) => Mode::Generative,
            _ => Mode::Constraint,
        };
        let rule = Rule {
            id: id.to_string(),
            source: source.to_string(),
            vars,
            body,
            head,
            mode,
            dubious: false,
        };
        rule.validate()?;
        Ok(rule)
    }

    pub fn constraint(mut self) -> Rule {
        self.mode = Mode::Constraint;
        self
    }

    pub fn dubious(mut self) -> Rule {
        self.dubious = true;
        self
    }

    pub fn is_generative(&self) -> bool {
        self.mode == Mode::Generative
    }

    /// True when every body item is a literal, an inequation or a domain
    /// range; these are the rules that have mechanical contrapositives.
    pub fn has_pure_body(&self) -> bool {
        self.body
            .iter()
            .all(|b| matches!(b, BodyItem::Lit(_) | BodyItem::Neq(..) | BodyItem::Dom(_)))
    }

    pub fn is_nonmonotone(&self) -> bool {
        self.body.iter().any(BodyItem::is_nonmonotone)
    }

    pub fn predicates(&self) -> BTreeSet<Pred> {
        let mut out = BTreeSet::new();
        fn items(out: &mut BTreeSet<Pred>, body: &[BodyItem]) {
            for b in body {
                match b {
                    BodyItem::Lit(l) => {
                        out.insert(l.pred);
                    }
                    BodyItem::Forall { guard, require, .. } => {
                        items(out, guard);
                        out.insert(require.pred);
                    }
                    _ => {}
                }
            }
        }
        items(&mut out, &self.body);
        match &self.head {
            Head::Lit(l) => {
                out.insert(l.pred);
            }
            Head::AnyOf(ls) => out.extend(ls.iter().map(|l| l.pred)),
            Head::Exists { body, .. } => items(&mut out, body),
            _ => {}
        }
        out
    }

    /// Variables bound by the top-level body: literals, domain ranges and
    /// pair decompositions.
    pub fn bound_vars(&self) -> BTreeSet<Var> {
        binders(&self.body)
    }

    fn validate(&self) -> Result<()> {
        let bound = self.bound_vars();
        let err = |what: &str, v: Var| {
            Err(Error::RuleSyntax(format!(
                "{}: variable `{}` in {} is not bound by the body",
                self.id, self.vars[v], what
            )))
        };
        for item in &self.body {
            for v in checked_vars(item, &bound) {
                if !bound.contains(&v) {
                    return err("a side condition", v);
                }
            }
        }
        let head_vars: Vec<Var> = match &self.head {
            Head::Lit(l) => l.vars().collect(),
            Head::AnyOf(ls) => ls.iter().flat_map(|l| l.vars()).collect(),
            Head::Exists { vars, body } => {
                let mut inner = bound.clone();
                inner.extend(vars.iter().copied());
                let mut out = Vec::new();
                for item in body {
                    out.extend(item_vars(item).into_iter().filter(|v| !inner.contains(v)));
                }
                out
            }
            Head::Eq(a, b) | Head::Neq(a, b) | Head::ExtSub(a, b) | Head::ExtProperSub(a, b) => [a, b]
                .into_iter()
                .filter_map(|t| match t {
                    Term::Var(v) => Some(*v),
                    _ => None,
                })
                .collect(),
            Head::False => Vec::new(),
        };
        for v in head_vars {
            if !bound.contains(&v) {
                return err("the head", v);
            }
        }
        Ok(())
    }
}

pub(crate) fn binders(body: &[BodyItem]) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    for b in body {
        match b {
            BodyItem::Lit(l) => out.extend(l.vars()),
            BodyItem::Dom(v) => {
                out.insert(*v);
            }
            BodyItem::Pair(p, a, c) => {
                for t in [p, a, c] {
                    if let Term::Var(v) = t {
                        out.insert(*v);
                    }
                }
            }
            _ => {}
        }
    }
    out
}

fn term_var(t: &Term) -> Option<Var> {
    match t {
        Term::Var(v) => Some(*v),
        _ => None,
    }
}

fn item_vars(item: &BodyItem) -> Vec<Var> {
    match item {
        BodyItem::Lit(l) => l.vars().collect(),
        BodyItem::Neq(a, b) | BodyItem::ExtNeq(a, b) => [a, b].into_iter().filter_map(term_var).collect(),
        BodyItem::Dom(v) => vec![*v],
        BodyItem::Forall { vars, guard, require } => {
            let mut out: Vec<Var> = guard.iter().flat_map(item_vars).collect();
            out.extend(require.vars());
            out.retain(|v| !vars.contains(v));
            out
        }
        BodyItem::Pair(a, b, c) => [a, b, c].into_iter().filter_map(term_var).collect(),
        BodyItem::NotPair(a) => term_var(a).into_iter().collect(),
    }
}

/// Variables an item reads without binding.
fn checked_vars(item: &BodyItem, _bound: &BTreeSet<Var>) -> Vec<Var> {
    match item {
        BodyItem::Lit(_) | BodyItem::Dom(_) | BodyItem::Pair(..) => Vec::new(),
        other => item_vars(other),
    }
}

// ---------------------------------------------------------------------------
// Display

pub struct Rendered<'a, T> {
    vars: &'a [String],
    item: &'a T,
}

fn render_term(vars: &[String], t: &Term) -> String {
    match t {
        Term::Var(v) => vars[*v].clone(),
        Term::Expr(s) => format!("\"{s}\""),
        Term::Cat(c) => c.index().to_string(),
    }
}

fn render_lit(vars: &[String], l: &Literal) -> String {
    let args: Vec<String> = l.args.iter().map(|t| render_term(vars, t)).collect();
    let neg = if l.pol == Polarity::Neg { "~" } else { "" };
    format!("{neg}{}({})", l.pred, args.join(", "))
}

fn render_item(vars: &[String], b: &BodyItem) -> String {
    match b {
        BodyItem::Lit(l) => render_lit(vars, l),
        BodyItem::Neq(a, c) => format!("{} != {}", render_term(vars, a), render_term(vars, c)),
        BodyItem::Dom(v) => format!("dom({})", vars[*v]),
        BodyItem::Forall {
            vars: vs,
            guard,
            require,
        } => {
            let names: Vec<&str> = vs.iter().map(|v| vars[*v].as_str()).collect();
            let guard: Vec<String> = guard.iter().map(|g| render_item(vars, g)).collect();
            let guard = if guard.is_empty() {
                String::new()
            } else {
                format!("{} ", guard.join(" & "))
            };
            format!("all {} [{guard}=> {}]", names.join(" "), render_lit(vars, require))
        }
        BodyItem::ExtNeq(a, c) => format!("ext_ne({}, {})", render_term(vars, a), render_term(vars, c)),
        BodyItem::Pair(p, a, c) => format!(
            "pair({}, {}, {})",
            render_term(vars, p),
            render_term(vars, a),
            render_term(vars, c)
        ),
        BodyItem::NotPair(a) => format!("notpair({})", render_term(vars, a)),
    }
}

fn render_head(vars: &[String], h: &Head) -> String {
    match h {
        Head::Lit(l) => render_lit(vars, l),
        Head::AnyOf(ls) => ls.iter().map(|l| render_lit(vars, l)).collect::<Vec<_>>().join(" | "),
        Head::Exists { vars: vs, body } => {
            let names: Vec<&str> = vs.iter().map(|v| vars[*v].as_str()).collect();
            let body: Vec<String> = body.iter().map(|b| render_item(vars, b)).collect();
            format!("exists {} [{}]", names.join(" "), body.join(" & "))
        }
        Head::Eq(a, b) => format!("{} = {}", render_term(vars, a), render_term(vars, b)),
        Head::Neq(a, b) => format!("{} != {}", render_term(vars, a), render_term(vars, b)),
        Head::False => "false".to_string(),
        Head::ExtSub(a, b) => format!("ext_sub({}, {})", render_term(vars, a), render_term(vars, b)),
        Head::ExtProperSub(a, b) => {
            format!("ext_psub({}, {})", render_term(vars, a), render_term(vars, b))
        }
    }
}

impl fmt::Display for Rendered<'_, Literal> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_lit(self.vars, self.item))
    }
}

impl Rule {
    pub fn render_literal<'a>(&'a self, l: &'a Literal) -> Rendered<'a, Literal> {
        Rendered {
            vars: &self.vars,
            item: l,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.body.iter().map(|b| render_item(&self.vars, b)).collect();
        if body.is_empty() {
            write!(f, "-> {}", render_head(&self.vars, &self.head))
        } else {
            write!(f, "{} -> {}", body.join(" & "), render_head(&self.vars, &self.head))
        }
    }
}

// ---------------------------------------------------------------------------
// Parser

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    Int(i64),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Amp,
    Tilde,
    Arrow,
    FatArrow,
    Pipe,
    Eq,
    Neq,
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |m: String| Error::RuleSyntax(m);
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '[' => {
                out.push(Tok::LBrack);
                i += 1
            }
            ']' => {
                out.push(Tok::RBrack);
                i += 1
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1
            }
            '&' => {
                out.push(Tok::Amp);
                i += 1
            }
            '~' => {
                out.push(Tok::Tilde);
                i += 1
            }
            '|' => {
                out.push(Tok::Pipe);
                i += 1
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Tok::Arrow);
                i += 2
            }
            '=' if chars.get(i + 1) == Some(&'>') => {
                out.push(Tok::FatArrow);
                i += 2
            }
            '=' => {
                out.push(Tok::Eq);
                i += 1
            }
            '!' if chars.get(i + 1) == Some(&'=') => {
                out.push(Tok::Neq);
                i += 2
            }
            '"' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j] != '"' {
                    j += 1;
                }
                if j == chars.len() {
                    return Err(err("unterminated string".into()));
                }
                let s: String = chars[start..j].iter().collect();
                out.push(Tok::Str(s.split_whitespace().collect::<Vec<_>>().join(" ")));
                i = j + 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Int(s.parse().map_err(|_| err(format!("bad integer {s}")))?));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(err(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    vars: Vec<String>,
    sorts: Vec<Sort>,
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            vars: Vec::new(),
            sorts: Vec::new(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::RuleSyntax(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn var(&mut self, name: &str, sort: Sort) -> Result<Var> {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            if self.sorts[i] != sort {
                return Err(Error::RuleSyntax(format!("variable `{name}` used with two sorts")));
            }
            return Ok(i);
        }
        self.vars.push(name.to_string());
        self.sorts.push(sort);
        Ok(self.vars.len() - 1)
    }

    fn rule(mut self) -> Result<(Vec<String>, Vec<BodyItem>, Head)> {
        let mut body = Vec::new();
        if !self.eat(&Tok::Arrow) {
            body = self.items(&[Tok::Arrow])?;
            self.expect(Tok::Arrow)?;
        }
        let head = self.head()?;
        if self.pos != self.toks.len() {
            return Err(Error::RuleSyntax(format!("trailing input at {:?}", self.peek())));
        }
        Ok((self.vars, body, head))
    }

    fn items(&mut self, stop: &[Tok]) -> Result<Vec<BodyItem>> {
        let mut out = Vec::new();
        if self.peek().is_some_and(|t| stop.contains(t)) {
            return Ok(out);
        }
        loop {
            out.push(self.item()?);
            if !self.eat(&Tok::Amp) {
                break;
            }
        }
        Ok(out)
    }

    fn ident_is(&self, k: usize, name: &str) -> bool {
        matches!(self.peek_at(k), Some(Tok::Ident(s)) if s == name)
    }

    fn item(&mut self) -> Result<BodyItem> {
        if self.ident_is(0, "all") && matches!(self.peek_at(1), Some(Tok::Ident(_))) {
            self.next();
            let vars = self.binder_list()?;
            self.expect(Tok::LBrack)?;
            let guard = self.items(&[Tok::FatArrow])?;
            self.expect(Tok::FatArrow)?;
            let require = self.literal()?;
            self.expect(Tok::RBrack)?;
            return Ok(BodyItem::Forall { vars, guard, require });
        }
        for (kw, n) in [("dom", 1), ("ext_ne", 2), ("pair", 3), ("notpair", 1)] {
            if self.ident_is(0, kw) && self.peek_at(1) == Some(&Tok::LParen) {
                self.next();
                let ts = self.term_args(n)?;
                return Ok(match kw {
                    "dom" => match &ts[0] {
                        Term::Var(v) => BodyItem::Dom(*v),
                        _ => return Err(Error::RuleSyntax("dom() takes a variable".into())),
                    },
                    "ext_ne" => BodyItem::ExtNeq(ts[0].clone(), ts[1].clone()),
                    "pair" => BodyItem::Pair(ts[0].clone(), ts[1].clone(), ts[2].clone()),
                    _ => BodyItem::NotPair(ts[0].clone()),
                });
            }
        }
        if self.is_literal_start() {
            return Ok(BodyItem::Lit(self.literal()?));
        }
        let a = self.term_any()?;
        self.expect(Tok::Neq)?;
        let b = self.term_any()?;
        Ok(BodyItem::Neq(a, b))
    }

    fn is_literal_start(&self) -> bool {
        match self.peek() {
            Some(Tok::Tilde) => true,
            Some(Tok::Ident(_)) => self.peek_at(1) == Some(&Tok::LParen),
            _ => false,
        }
    }

    fn binder_list(&mut self) -> Result<Vec<Var>> {
        let mut vars = Vec::new();
        while let Some(Tok::Ident(name)) = self.peek().cloned() {
            self.next();
            vars.push(self.var(&name, Sort::Expr)?);
        }
        if vars.is_empty() {
            return Err(Error::RuleSyntax("quantifier without variables".into()));
        }
        Ok(vars)
    }

    fn term_args(&mut self, n: usize) -> Result<Vec<Term>> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        for i in 0..n {
            if i > 0 {
                self.expect(Tok::Comma)?;
            }
            out.push(self.term(Sort::Expr)?);
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn literal(&mut self) -> Result<Literal> {
        let pol = if self.eat(&Tok::Tilde) {
            Polarity::Neg
        } else {
            Polarity::Pos
        };
        let name = match self.next() {
            Some(Tok::Ident(s)) => s,
            got => return Err(Error::RuleSyntax(format!("expected predicate, found {got:?}"))),
        };
        let pred = Pred::parse(&name).map_err(|e| Error::RuleSyntax(e.to_string()))?;
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        if !self.eat(&Tok::RParen) {
            loop {
                args.push(self.term(pred.sort(args.len()))?);
                if self.eat(&Tok::RParen) {
                    break;
                }
                self.expect(Tok::Comma)?;
            }
        }
        if args.len() != pred.arity() {
            return Err(Error::RuleSyntax(format!(
                "predicate `{}` expects {} arguments, got {}",
                pred,
                pred.arity(),
                args.len()
            )));
        }
        Ok(Literal::new(pred, args, pol))
    }

    fn term(&mut self, sort: Sort) -> Result<Term> {
        match self.next() {
            Some(Tok::Ident(name)) => Ok(Term::Var(self.var(&name, sort)?)),
            Some(Tok::Str(s)) if sort == Sort::Expr => Ok(Term::Expr(s)),
            Some(Tok::Int(i)) if sort == Sort::Category => Ok(Term::Cat(
                Category::new(i).map_err(|e| Error::RuleSyntax(e.to_string()))?,
            )),
            got => Err(Error::RuleSyntax(format!("expected {sort:?} term, found {got:?}"))),
        }
    }

    /// A term in a sort-polymorphic position (inequations).
    fn term_any(&mut self) -> Result<Term> {
        let sort = match self.peek() {
            Some(Tok::Int(_)) => Sort::Category,
            Some(Tok::Ident(name)) => self
                .vars
                .iter()
                .position(|v| v == name)
                .map(|i| self.sorts[i])
                .unwrap_or(Sort::Expr),
            _ => Sort::Expr,
        };
        self.term(sort)
    }

    fn head(&mut self) -> Result<Head> {
        if self.ident_is(0, "false") && self.peek_at(1).is_none() {
            self.next();
            return Ok(Head::False);
        }
        if self.ident_is(0, "exists") && matches!(self.peek_at(1), Some(Tok::Ident(_))) {
            self.next();
            let vars = self.binder_list()?;
            self.expect(Tok::LBrack)?;
            let body = self.items(&[Tok::RBrack])?;
            self.expect(Tok::RBrack)?;
            return Ok(Head::Exists { vars, body });
        }
        for kw in ["ext_sub", "ext_psub"] {
            if self.ident_is(0, kw) && self.peek_at(1) == Some(&Tok::LParen) {
                self.next();
                let ts = self.term_args(2)?;
                let (a, b) = (ts[0].clone(), ts[1].clone());
                return Ok(if kw == "ext_sub" {
                    Head::ExtSub(a, b)
                } else {
                    Head::ExtProperSub(a, b)
                });
            }
        }
        if self.is_literal_start() {
            let mut lits = vec![self.literal()?];
            while self.eat(&Tok::Pipe) {
                lits.push(self.literal()?);
            }
            return Ok(if lits.len() == 1 {
                Head::Lit(lits.pop().unwrap())
            } else {
                Head::AnyOf(lits)
            });
        }
        let a = self.term_any()?;
        let eq = match self.next() {
            Some(Tok::Eq) => true,
            Some(Tok::Neq) => false,
            got => return Err(Error::RuleSyntax(format!("expected = or !=, found {got:?}"))),
        };
        let b = self.term_any()?;
        Ok(if eq { Head::Eq(a, b) } else { Head::Neq(a, b) })
    }
}
