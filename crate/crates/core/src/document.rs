//! The line-oriented knowledge-base file format and debate scripts.
//!
//! ```text
//! # comment
//! expr noun "rational animal"
//! morph rationality adj rational
//! term man
//! cat 1 man
//! fact genus man animal
//! deny nec soul number
//! rule number-not-life: genus(n, "number") -> ~nec(n, "life")
//! sum just = temperate + brave
//! pair men = { "first man" , "second man" }
//! contrary brave cowardly
//! fact nec "first man" brave°
//! ```

use crate::error::{Error, Result};
use crate::kb::{quote_name, KnowledgeBase};
use crate::lexicon::{ExprId, Kind, MorphEntry};
use crate::mereology::contrary_of;
use crate::rule::Rule;
use crate::signature::{Category, GroundLit, Polarity, Pred, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Name(String),
    /// `name°`: the unique contrary of `name`.
    Contrary(String),
    Int(i64),
}

impl Arg {
    fn render(&self) -> String {
        match self {
            Arg::Name(n) => quote_name(n),
            Arg::Contrary(n) => format!("{}°", quote_name(n)),
            Arg::Int(i) => i.to_string(),
        }
    }
}

/// A signed fact line without its keyword position information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactLine {
    pub pol: Polarity,
    pub pred: Pred,
    pub args: Vec<Arg>,
}

impl FactLine {
    pub fn render(&self) -> String {
        let kw = if self.pol == Polarity::Pos { "fact" } else { "deny" };
        let mut s = format!("{kw} {}", self.pred);
        for a in &self.args {
            s.push(' ');
            s.push_str(&a.render());
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Expr {
        kind: Kind,
        text: String,
    },
    Morph {
        noun: String,
        adj: Option<String>,
        adv: Option<String>,
    },
    Term(String),
    Cat {
        index: i64,
        name: Arg,
    },
    Fact(FactLine),
    Rule {
        label: String,
        text: String,
        contrapositives: bool,
    },
    Sum {
        name: String,
        a: Arg,
        b: Arg,
    },
    Pair {
        name: String,
        a: Arg,
        b: Arg,
    },
    Contrary {
        a: Arg,
        b: Arg,
    },
    Restrict {
        base: Arg,
        modifier: Arg,
    },
    Option(String),
    Concede(FactLine),
    Thesis(FactLine),
    Budget(u64),
}

impl Item {
    pub fn render(&self) -> String {
        match self {
            Item::Expr { kind, text } => format!("expr {} \"{text}\"", kind.keyword()),
            Item::Morph { noun, adj, adv } => {
                let mut s = format!("morph {}", quote_name(noun));
                if let Some(a) = adj {
                    s.push_str(&format!(" adj {}", quote_name(a)));
                }
                if let Some(a) = adv {
                    s.push_str(&format!(" adv {}", quote_name(a)));
                }
                s
            }
            Item::Term(n) => format!("term {}", quote_name(n)),
            Item::Cat { index, name } => format!("cat {index} {}", name.render()),
            Item::Fact(f) => f.render(),
            Item::Rule {
                label,
                text,
                contrapositives,
            } => format!("rule{} {label}: {text}", if *contrapositives { "!" } else { "" }),
            Item::Sum { name, a, b } => format!("sum {} = {} + {}", quote_name(name), a.render(), b.render()),
            Item::Pair { name, a, b } => {
                format!("pair {} = {{ {} , {} }}", quote_name(name), a.render(), b.render())
            }
            Item::Contrary { a, b } => format!("contrary {} {}", a.render(), b.render()),
            Item::Restrict { base, modifier } => format!("restrict {} {}", base.render(), modifier.render()),
            Item::Option(o) => format!("option {o}"),
            Item::Concede(f) => format!("concede {}", f.render()),
            Item::Thesis(f) => format!("thesis {}", f.render()),
            Item::Budget(n) => format!("budget {n}"),
        }
    }

    fn is_debate(&self) -> bool {
        matches!(self, Item::Concede(_) | Item::Thesis(_) | Item::Budget(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub line: usize,
    pub item: Item,
}

/// A parsed knowledge-base file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub lines: Vec<Line>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Quoted(String),
}

struct Token {
    tok: Tok,
    col: usize,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let col = i + 1;
        if c == '"' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j] != '"' {
                j += 1;
            }
            if j == chars.len() {
                return Err(perr(line, col, "unterminated string"));
            }
            let s: String = chars[start..j].iter().collect();
            i = j + 1;
            // A contrary marker may follow the closing quote.
            if i < chars.len() && chars[i] == '°' {
                out.push(Token {
                    tok: Tok::Word(format!("{}°", escape_inner(&s))),
                    col,
                });
                i += 1;
            } else {
                out.push(Token {
                    tok: Tok::Quoted(s),
                    col,
                });
            }
            continue;
        }
        let start = i;
        while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '#' {
            i += 1;
        }
        out.push(Token {
            tok: Tok::Word(chars[start..i].iter().collect()),
            col,
        });
    }
    Ok(out)
}

// Quoted names followed by `°` travel as words with a private marker for spaces.
const SPACE: char = '\u{1f}';

fn escape_inner(s: &str) -> String {
    s.replace(' ', &SPACE.to_string())
}

fn unescape(s: &str) -> String {
    s.replace(SPACE, " ")
}

fn arg_of(t: &Token) -> Arg {
    match &t.tok {
        Tok::Quoted(s) => Arg::Name(s.clone()),
        Tok::Word(w) => {
            if let Some(base) = w.strip_suffix('°').or_else(|| w.strip_suffix("^o")) {
                Arg::Contrary(unescape(base))
            } else if let Ok(i) = w.parse::<i64>() {
                Arg::Int(i)
            } else {
                Arg::Name(w.clone())
            }
        }
    }
}

fn name_of(t: &Token, line: usize) -> Result<String> {
    match arg_of(t) {
        Arg::Name(n) => Ok(n),
        _ => Err(perr(line, t.col, "expected a name")),
    }
}

fn word(t: &Token) -> Option<&str> {
    match &t.tok {
        Tok::Word(w) => Some(w),
        Tok::Quoted(_) => None,
    }
}

fn parse_fact(toks: &[Token], line: usize, default_pol: Option<Polarity>, col0: usize) -> Result<FactLine> {
    let mut toks = toks;
    let pol = match toks.first().and_then(word) {
        Some("fact") => {
            toks = &toks[1..];
            Polarity::Pos
        }
        Some("deny") => {
            toks = &toks[1..];
            Polarity::Neg
        }
        _ => default_pol.ok_or_else(|| perr(line, col0, "expected `fact` or `deny`"))?,
    };
    let Some(head) = toks.first() else {
        return Err(perr(line, col0, "missing predicate"));
    };
    let (pol, name) = match word(head) {
        Some(w) if w.starts_with('~') => (pol.flip(), &w[1..]),
        Some(w) => (pol, w),
        None => return Err(perr(line, head.col, "predicate names are not quoted")),
    };
    let pred = Pred::parse(name).map_err(|e| perr(line, head.col, e.to_string()))?;
    let args: Vec<Arg> = toks[1..].iter().map(arg_of).collect();
    if args.len() != pred.arity() {
        let col = toks.get(pred.arity() + 1).map_or(head.col, |t| t.col);
        return Err(perr(
            line,
            col,
            Error::Arity {
                pred: pred.name().into(),
                expected: pred.arity(),
                got: args.len(),
            }
            .to_string(),
        ));
    }
    for (i, a) in args.iter().enumerate() {
        let is_cat = pred == Pred::Cat && i == 0;
        if is_cat != matches!(a, Arg::Int(_)) {
            return Err(perr(
                line,
                toks[i + 1].col,
                Error::Sort {
                    pred: pred.name().into(),
                    pos: i,
                }
                .to_string(),
            ));
        }
    }
    Ok(FactLine { pol, pred, args })
}

fn parse_line(text: &str, line: usize) -> Result<Option<Item>> {
    let trimmed = text.trim_start();
    let indent = text.len() - trimmed.len();
    if let Some(rest) = trimmed.strip_prefix("rule") {
        let (contrapositives, rest) = match rest.strip_prefix('!') {
            Some(r) => (true, r),
            None => (false, rest),
        };
        if rest.starts_with(char::is_whitespace) {
            let Some((label, body)) = rest.split_once(':') else {
                return Err(perr(line, indent + 1, "expected `rule <label>: <body> -> <head>`"));
            };
            let label = label.trim().to_string();
            if label.is_empty() || label.contains(char::is_whitespace) {
                return Err(perr(line, indent + 1, "rule label must be a single word"));
            }
            let body_col = text.len() - body.trim_start().len() + 1;
            let body = body.split('#').next().unwrap_or("").trim().to_string();
            Rule::parse(&label, "user", &body).map_err(|e| perr(line, body_col, e.to_string()))?;
            return Ok(Some(Item::Rule {
                label,
                text: body,
                contrapositives,
            }));
        }
    }
    let toks = tokenize(text, line)?;
    let Some(first) = toks.first() else {
        return Ok(None);
    };
    let kw = word(first).ok_or_else(|| perr(line, first.col, "expected a keyword"))?;
    let rest = &toks[1..];
    let need = |n: usize| -> Result<()> {
        if rest.len() == n {
            Ok(())
        } else {
            let col = rest.get(n).map_or(first.col, |t| t.col);
            Err(perr(line, col, format!("`{kw}` takes {n} argument(s)")))
        }
    };
    let item = match kw {
        "expr" => {
            need(2)?;
            let kind = word(&rest[0])
                .and_then(Kind::from_keyword)
                .ok_or_else(|| perr(line, rest[0].col, "unknown expression kind"))?;
            let text = name_of(&rest[1], line)?;
            if text.split_whitespace().next().is_none() {
                return Err(perr(line, rest[1].col, Error::EmptyTokens.to_string()));
            }
            Item::Expr { kind, text }
        }
        "morph" => {
            let noun = rest
                .first()
                .ok_or_else(|| perr(line, first.col, "missing noun"))
                .and_then(|t| name_of(t, line))?;
            let (mut adj, mut adv) = (None, None);
            let mut i = 1;
            while i < rest.len() {
                let slot = match word(&rest[i]) {
                    Some("adj") => &mut adj,
                    Some("adv") => &mut adv,
                    _ => return Err(perr(line, rest[i].col, "expected `adj` or `adv`")),
                };
                let form = rest
                    .get(i + 1)
                    .ok_or_else(|| perr(line, rest[i].col, "missing form"))
                    .and_then(|t| name_of(t, line))?;
                *slot = Some(form);
                i += 2;
            }
            Item::Morph { noun, adj, adv }
        }
        "term" => {
            need(1)?;
            Item::Term(name_of(&rest[0], line)?)
        }
        "cat" => {
            need(2)?;
            let Arg::Int(index) = arg_of(&rest[0]) else {
                return Err(perr(line, rest[0].col, "expected a category index"));
            };
            Category::new(index).map_err(|e| perr(line, rest[0].col, e.to_string()))?;
            Item::Cat {
                index,
                name: arg_of(&rest[1]),
            }
        }
        "fact" | "deny" => Item::Fact(parse_fact(&toks, line, None, first.col)?),
        "sum" | "pair" => {
            let pair = kw == "pair";
            let shape: &[Option<&str>] = if pair {
                &[None, Some("="), Some("{"), None, Some(","), None, Some("}")]
            } else {
                &[None, Some("="), None, Some("+"), None]
            };
            if rest.len() != shape.len() {
                return Err(perr(line, first.col, format!("malformed `{kw}` declaration")));
            }
            for (t, s) in rest.iter().zip(shape) {
                if let Some(s) = s {
                    if word(t) != Some(s) {
                        return Err(perr(line, t.col, format!("expected `{s}`")));
                    }
                }
            }
            let name = name_of(&rest[0], line)?;
            if pair {
                Item::Pair {
                    name,
                    a: arg_of(&rest[3]),
                    b: arg_of(&rest[5]),
                }
            } else {
                Item::Sum {
                    name,
                    a: arg_of(&rest[2]),
                    b: arg_of(&rest[4]),
                }
            }
        }
        "contrary" => {
            need(2)?;
            Item::Contrary {
                a: arg_of(&rest[0]),
                b: arg_of(&rest[1]),
            }
        }
        "restrict" => {
            need(2)?;
            Item::Restrict {
                base: arg_of(&rest[0]),
                modifier: arg_of(&rest[1]),
            }
        }
        "option" => {
            need(1)?;
            let o = word(&rest[0]).unwrap_or_default();
            if o != "enable-dubious" {
                return Err(perr(line, rest[0].col, format!("unknown option `{o}`")));
            }
            Item::Option(o.to_string())
        }
        "concede" => Item::Concede(parse_fact(rest, line, Some(Polarity::Pos), first.col)?),
        "thesis" => Item::Thesis(parse_fact(rest, line, Some(Polarity::Pos), first.col)?),
        "budget" => {
            need(1)?;
            let n = word(&rest[0])
                .and_then(|w| w.parse::<u64>().ok())
                .ok_or_else(|| perr(line, rest[0].col, "expected a non-negative integer"))?;
            Item::Budget(n)
        }
        other => return Err(perr(line, first.col, format!("unknown directive `{other}`"))),
    };
    Ok(Some(item))
}

impl Document {
    /// Parses a knowledge-base file. Debate directives are rejected.
    pub fn parse(text: &str) -> Result<Document> {
        let doc = Document::parse_any(text)?;
        if let Some(l) = doc.lines.iter().find(|l| l.item.is_debate()) {
            return Err(perr(l.line, 1, "debate directive in a knowledge-base file"));
        }
        Ok(doc)
    }

    fn parse_any(text: &str) -> Result<Document> {
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            if let Some(item) = parse_line(raw, i + 1)? {
                lines.push(Line { line: i + 1, item });
            }
        }
        Ok(Document { lines })
    }

    pub fn items(&self) -> Vec<&Item> {
        self.lines.iter().map(|l| &l.item).collect()
    }

    /// Canonical text, one directive per line, comments dropped.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&l.item.render());
            out.push('\n');
        }
        out
    }

    /// Builds the knowledge base, applying directives in order.
    pub fn build(&self) -> Result<KnowledgeBase> {
        let mut kb = KnowledgeBase::new();
        for l in &self.lines {
            apply(&mut kb, &l.item).map_err(|e| match e {
                e @ Error::Parse { .. } => e,
                other => perr(l.line, 1, other.to_string()),
            })?;
        }
        Ok(kb)
    }
}

fn resolve_name(kb: &mut KnowledgeBase, name: &str) -> Result<ExprId> {
    match kb.resolve(name) {
        Some(id) => Ok(id),
        None => kb.noun(name),
    }
}

fn resolve_arg(kb: &mut KnowledgeBase, a: &Arg) -> Result<Value> {
    Ok(match a {
        Arg::Name(n) => Value::Expr(resolve_name(kb, n)?),
        Arg::Contrary(n) => {
            let base = kb.expr(n)?;
            Value::Expr(contrary_of(kb, base)?)
        }
        Arg::Int(i) => Value::Cat(Category::new(*i)?),
    })
}

/// Grounds a fact line against `kb`, interning unknown names as nouns.
pub fn ground_fact(kb: &mut KnowledgeBase, f: &FactLine) -> Result<GroundLit> {
    let args = f.args.iter().map(|a| resolve_arg(kb, a)).collect::<Result<Vec<_>>>()?;
    GroundLit::new(f.pred, args, f.pol)
}

fn apply(kb: &mut KnowledgeBase, item: &Item) -> Result<()> {
    match item {
        Item::Expr { kind, text } => {
            kb.intern(text, *kind)?;
        }
        Item::Morph { noun, adj, adv } => {
            let n = resolve_name(kb, noun)?;
            let split = |s: &Option<String>| s.as_ref().map(|s| s.split_whitespace().map(String::from).collect());
            kb.add_morph(
                n,
                MorphEntry {
                    adjectival: split(adj),
                    adverbial: split(adv),
                },
            )?;
            if adj.is_some() {
                kb.adjectivize(n)?;
            }
            if adv.is_some() {
                kb.adverbialize(n)?;
            }
        }
        Item::Term(n) => {
            let id = resolve_name(kb, n)?;
            kb.terms.insert(id);
        }
        Item::Cat { index, name } => {
            let c = Category::new(*index)?;
            let x = resolve_arg(kb, name)?;
            kb.assert_fact(GroundLit::pos(Pred::Cat, vec![c.into(), x])?)?;
        }
        Item::Fact(f) => {
            let lit = ground_fact(kb, f)?;
            kb.assert_fact(lit)?;
        }
        Item::Rule {
            label,
            text,
            contrapositives,
        } => {
            let rule = Rule::parse(label, "user", text)?;
            kb.add_rule(rule, *contrapositives);
        }
        Item::Sum { name, a, b } | Item::Pair { name, a, b } => {
            let x = resolve_arg(kb, a)?
                .expr()
                .ok_or_else(|| Error::BadConstituent(name.clone()))?;
            let y = resolve_arg(kb, b)?
                .expr()
                .ok_or_else(|| Error::BadConstituent(name.clone()))?;
            let id = match item {
                Item::Sum { .. } => kb.lexicon.sum(x, y)?,
                _ => kb.lexicon.pair(x, y)?,
            };
            kb.aliases.insert(name.clone(), id);
        }
        Item::Contrary { a, b } => {
            let (x, y) = (resolve_arg(kb, a)?, resolve_arg(kb, b)?);
            kb.assert_fact(GroundLit::pos(Pred::Contrary, vec![x, y])?)?;
            kb.assert_fact(GroundLit::pos(Pred::Contrary, vec![y, x])?)?;
        }
        Item::Restrict { base, modifier } => {
            let b = resolve_arg(kb, base)?
                .expr()
                .ok_or_else(|| Error::BadConstituent("restrict".into()))?;
            let m = resolve_arg(kb, modifier)?
                .expr()
                .ok_or_else(|| Error::BadConstituent("restrict".into()))?;
            kb.restrict(b, m)?;
        }
        Item::Option(_) => kb.options.enable_dubious = true,
        Item::Concede(_) | Item::Thesis(_) | Item::Budget(_) => {}
    }
    Ok(())
}

pub fn parse_kb(text: &str) -> Result<KnowledgeBase> {
    Document::parse(text)?.build()
}

/// Parses a signed fact as given on a command line: `genus soul number`,
/// `~genus soul number`, `deny genus soul number`.
pub fn parse_fact_text(text: &str) -> Result<FactLine> {
    let toks = tokenize(text, 1)?;
    parse_fact(&toks, 1, Some(Polarity::Pos), 1)
}

/// A query pattern: predicate then arguments, `?` or `_` for wildcards.
pub fn parse_pattern(kb: &KnowledgeBase, text: &str) -> Result<crate::kb::Pattern> {
    let toks = tokenize(text, 1)?;
    let Some(head) = toks.first().and_then(word) else {
        return Err(perr(1, 1, "missing predicate"));
    };
    let (pol, name) = match head.strip_prefix('~') {
        Some(n) => (Polarity::Neg, n),
        None => (Polarity::Pos, head),
    };
    let pred = Pred::parse(name).map_err(|e| perr(1, 1, e.to_string()))?;
    if toks.len() - 1 != pred.arity() {
        return Err(perr(
            1,
            1,
            Error::Arity {
                pred: pred.name().into(),
                expected: pred.arity(),
                got: toks.len() - 1,
            }
            .to_string(),
        ));
    }
    let mut args = Vec::new();
    for t in &toks[1..] {
        args.push(match (word(t), arg_of(t)) {
            (Some("?" | "_"), _) => None,
            (_, Arg::Int(i)) => Some(Value::Cat(Category::new(i).map_err(|e| perr(1, t.col, e.to_string()))?)),
            (_, Arg::Name(n)) => Some(Value::Expr(kb.expr(&n).map_err(|e| perr(1, t.col, e.to_string()))?)),
            (_, Arg::Contrary(n)) => {
                let base = kb.expr(&n).map_err(|e| perr(1, t.col, e.to_string()))?;
                let c = crate::mereology::lookup_contrary(kb, base).map_err(|e| perr(1, t.col, e.to_string()))?;
                Some(Value::Expr(c))
            }
        });
    }
    Ok(crate::kb::Pattern::new(pred, args, pol))
}

/// A debate: the knowledge base, the thesis, ordered concessions and the
/// move budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub document: Document,
    pub thesis: FactLine,
    pub concessions: Vec<FactLine>,
    pub budget: u64,
}

pub const DEFAULT_BUDGET: u64 = 100;

impl Script {
    pub fn parse(text: &str) -> Result<Script> {
        let doc = Document::parse_any(text)?;
        let mut thesis = None;
        let mut concessions = Vec::new();
        let mut budget = DEFAULT_BUDGET;
        let mut kb_lines = Vec::new();
        for l in doc.lines {
            match l.item {
                Item::Thesis(f) => {
                    if thesis.is_some() {
                        return Err(perr(l.line, 1, "more than one thesis"));
                    }
                    thesis = Some(f);
                }
                Item::Concede(f) => concessions.push(f),
                Item::Budget(n) => budget = n,
                _ => kb_lines.push(l),
            }
        }
        let last = text.lines().count() + 1;
        let thesis = thesis.ok_or_else(|| perr(last, 1, "script has no thesis"))?;
        Ok(Script {
            document: Document { lines: kb_lines },
            thesis,
            concessions,
            budget,
        })
    }

    pub fn render(&self) -> String {
        let mut out = self.document.render();
        out.push_str(&Item::Thesis(self.thesis.clone()).render());
        out.push('\n');
        for c in &self.concessions {
            out.push_str(&Item::Concede(c.clone()).render());
            out.push('\n');
        }
        out.push_str(&Item::Budget(self.budget).render());
        out.push('\n');
        out
    }
}
