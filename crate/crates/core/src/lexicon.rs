//! The finite domain of linguistic expressions.
//!
//! Every object the engine quantifies over is an interned [`Expression`]:
//! a token sequence together with its grammatical kind. Morphology
//! (adjectival and adverbial forms of nouns) is table driven; the
//! composition functions record the grammatical relations they realise so
//! the knowledge base can turn them into `G_rest`, `G_adj` and `G_adv` facts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Dense handle of an interned expression. Ordering follows interning order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExprId(pub u32);

impl ExprId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    NounPhrase,
    Adjectival,
    Adverbial,
    Verbal,
    Sentence,
    Sum,
    Pair,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::NounPhrase => "noun",
            Kind::Adjectival => "adjectival",
            Kind::Adverbial => "adverbial",
            Kind::Verbal => "verbal",
            Kind::Sentence => "sentence",
            Kind::Sum => "sum",
            Kind::Pair => "pair",
        }
    }

    /// Kinds that may be declared directly in a lexicon section.
    pub fn from_keyword(s: &str) -> Option<Kind> {
        Some(match s {
            "noun" | "noun-phrase" => Kind::NounPhrase,
            "adjectival" => Kind::Adjectival,
            "adverbial" => Kind::Adverbial,
            "verbal" => Kind::Verbal,
            "sentence" => Kind::Sentence,
            _ => return None,
        })
    }

    pub fn is_compound(self) -> bool {
        matches!(self, Kind::Sum | Kind::Pair)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expression {
    pub id: ExprId,
    pub tokens: Vec<String>,
    pub kind: Kind,
    /// Constituents of a sum or pair, sorted by id.
    pub constituents: Option<(ExprId, ExprId)>,
}

impl Expression {
    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MorphEntry {
    pub adjectival: Option<Vec<String>>,
    pub adverbial: Option<Vec<String>>,
}

/// A grammatical relation produced by one of the composition functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Composition {
    /// `G_rest(base, modifier, result)`
    Restrict(ExprId, ExprId, ExprId),
    /// `G_adj(noun, result)`
    Adjectivize(ExprId, ExprId),
    /// `G_adv(noun, result)`
    Adverbialize(ExprId, ExprId),
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    exprs: Vec<Expression>,
    index: HashMap<(Vec<String>, Kind), ExprId>,
    morph: BTreeMap<ExprId, MorphEntry>,
    compositions: Vec<Composition>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern<S: AsRef<str>>(&mut self, tokens: &[S], kind: Kind) -> Result<ExprId> {
        if tokens.is_empty() {
            return Err(Error::EmptyTokens);
        }
        let tokens: Vec<String> = tokens.iter().map(|t| t.as_ref().to_string()).collect();
        self.intern_owned(tokens, kind, None)
    }

    /// Interns whitespace-separated text.
    pub fn intern_text(&mut self, text: &str, kind: Kind) -> Result<ExprId> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        self.intern(&tokens, kind)
    }

    fn intern_owned(
        &mut self,
        tokens: Vec<String>,
        kind: Kind,
        constituents: Option<(ExprId, ExprId)>,
    ) -> Result<ExprId> {
        let key = (tokens, kind);
        if let Some(&id) = self.index.get(&key) {
            return Ok(id);
        }
        let id = ExprId(self.exprs.len() as u32);
        self.exprs.push(Expression {
            id,
            tokens: key.0.clone(),
            kind,
            constituents,
        });
        self.index.insert(key, id);
        Ok(id)
    }

    /// Interns the sum `a + b` or the pair `{a, b}`. Constituents are sorted by
    /// id so construction is commutative.
    pub fn compound(&mut self, kind: Kind, a: ExprId, b: ExprId) -> Result<ExprId> {
        debug_assert!(kind.is_compound());
        for x in [a, b] {
            let e = self.get(x)?;
            if e.kind.is_compound() {
                return Err(Error::BadConstituent(e.text()));
            }
        }
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let lo_t = self.exprs[lo.index()].tokens.clone();
        let hi_t = self.exprs[hi.index()].tokens.clone();
        let mut tokens = Vec::with_capacity(lo_t.len() + hi_t.len() + 3);
        match kind {
            Kind::Pair => {
                tokens.push("{".to_string());
                tokens.extend(lo_t);
                tokens.push(",".to_string());
                tokens.extend(hi_t);
                tokens.push("}".to_string());
            }
            _ => {
                tokens.extend(lo_t);
                tokens.push("+".to_string());
                tokens.extend(hi_t);
            }
        }
        self.intern_owned(tokens, kind, Some((lo, hi)))
    }

    pub fn sum(&mut self, a: ExprId, b: ExprId) -> Result<ExprId> {
        self.compound(Kind::Sum, a, b)
    }

    pub fn pair(&mut self, a: ExprId, b: ExprId) -> Result<ExprId> {
        self.compound(Kind::Pair, a, b)
    }

    /// The already interned sum or pair of `a` and `b`, if any.
    pub fn find_compound(&self, kind: Kind, a: ExprId, b: ExprId) -> Option<ExprId> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.exprs
            .iter()
            .find(|e| e.kind == kind && e.constituents == Some(key))
            .map(|e| e.id)
    }

    pub fn lookup<S: AsRef<str>>(&self, tokens: &[S], kind: Kind) -> Option<ExprId> {
        let tokens: Vec<String> = tokens.iter().map(|t| t.as_ref().to_string()).collect();
        self.index.get(&(tokens, kind)).copied()
    }

    /// Finds an expression by its text: a noun phrase first, then the unique
    /// expression of any kind with those tokens.
    pub fn find_text(&self, text: &str) -> Option<ExprId> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if let Some(id) = self.lookup(&tokens, Kind::NounPhrase) {
            return Some(id);
        }
        let mut hits = self
            .exprs
            .iter()
            .filter(|e| e.tokens.iter().map(String::as_str).eq(tokens.iter().copied()));
        match (hits.next(), hits.next()) {
            (Some(e), None) => Some(e.id),
            _ => None,
        }
    }

    pub fn get(&self, id: ExprId) -> Result<&Expression> {
        self.exprs.get(id.index()).ok_or(Error::Uninterned(id.0))
    }

    pub fn contains(&self, id: ExprId) -> bool {
        id.index() < self.exprs.len()
    }

    pub fn len(&self) -> usize {
        self.exprs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exprs.is_empty()
    }

    /// All expressions in interning order.
    pub fn enumerate(&self) -> &[Expression] {
        &self.exprs
    }

    pub fn ids(&self) -> impl Iterator<Item = ExprId> + '_ {
        self.exprs.iter().map(|e| e.id)
    }

    pub fn text(&self, id: ExprId) -> String {
        self.exprs
            .get(id.index())
            .map(Expression::text)
            .unwrap_or_else(|| format!("#{}", id.0))
    }

    pub fn add_morph(&mut self, noun: ExprId, entry: MorphEntry) -> Result<()> {
        let text = self.get(noun)?.text();
        if self.morph.contains_key(&noun) {
            return Err(Error::DuplicateMorph(text));
        }
        self.morph.insert(noun, entry);
        Ok(())
    }

    pub fn morph(&self, noun: ExprId) -> Option<&MorphEntry> {
        self.morph.get(&noun)
    }

    pub fn morph_entries(&self) -> impl Iterator<Item = (ExprId, &MorphEntry)> {
        self.morph.iter().map(|(k, v)| (*k, v))
    }

    pub fn adjectivize(&mut self, noun: ExprId) -> Result<ExprId> {
        let form = self.adjectival_form(noun)?;
        let id = self.intern_owned(form, Kind::Adjectival, None)?;
        self.record(Composition::Adjectivize(noun, id));
        Ok(id)
    }

    pub fn adverbialize(&mut self, noun: ExprId) -> Result<ExprId> {
        let form = self
            .morph
            .get(&noun)
            .and_then(|m| m.adverbial.clone())
            .ok_or_else(|| Error::NoAdverbial(self.text(noun)))?;
        let id = self.intern_owned(form, Kind::Adverbial, None)?;
        self.record(Composition::Adverbialize(noun, id));
        Ok(id)
    }

    /// Modifies the noun phrase `base` by the adjectival form of `modifier`.
    pub fn restrict(&mut self, base: ExprId, modifier: ExprId) -> Result<ExprId> {
        let mut tokens = self.adjectival_form(modifier)?;
        tokens.extend(self.get(base)?.tokens.iter().cloned());
        self.adjectivize(modifier)?;
        let id = self.intern_owned(tokens, Kind::NounPhrase, None)?;
        self.record(Composition::Restrict(base, modifier, id));
        Ok(id)
    }

    fn adjectival_form(&self, noun: ExprId) -> Result<Vec<String>> {
        self.morph
            .get(&noun)
            .and_then(|m| m.adjectival.clone())
            .ok_or_else(|| Error::NoAdjectival(self.text(noun)))
    }

    fn record(&mut self, c: Composition) {
        if !self.compositions.contains(&c) {
            self.compositions.push(c);
        }
    }

    /// Grammatical relations recorded by the composition functions.
    pub fn compositions(&self) -> &[Composition] {
        &self.compositions
    }

    /// `G_inc(x, y)`: the tokens of `x` are a contiguous run inside `y`, or
    /// `x` is a constituent of the sum or pair `y`.
    pub fn occurs_in(&self, x: ExprId, y: ExprId) -> bool {
        let (Ok(ex), Ok(ey)) = (self.get(x), self.get(y)) else {
            return false;
        };
        if let Some((a, b)) = ey.constituents {
            if a == x || b == x {
                return true;
            }
        }
        contains_run(&ey.tokens, &ex.tokens)
    }
}

fn contains_run(hay: &[String], needle: &[String]) -> bool {
    !needle.is_empty() && needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(adj: &str, adv: Option<&str>) -> MorphEntry {
        MorphEntry {
            adjectival: Some(vec![adj.to_string()]),
            adverbial: adv.map(|a| vec![a.to_string()]),
        }
    }

    #[test]
    fn interning_is_idempotent_and_injective() {
        let mut lex = Lexicon::new();
        let a = lex.intern(&["Socrates"], Kind::NounPhrase).unwrap();
        let b = lex.intern(&["Socrates"], Kind::NounPhrase).unwrap();
        assert_eq!(a, b);
        let animal = lex.intern(&["animal"], Kind::NounPhrase).unwrap();
        let ra = lex.intern(&["rational", "animal"], Kind::NounPhrase).unwrap();
        assert_ne!(animal, ra);
        assert_eq!(lex.enumerate().len(), 3);
        assert!(a < animal && animal < ra);
    }

    #[test]
    fn empty_tokens_rejected() {
        let mut lex = Lexicon::new();
        let empty: [&str; 0] = [];
        assert_eq!(lex.intern(&empty, Kind::NounPhrase), Err(Error::EmptyTokens));
    }

    #[test]
    fn restrict_builds_rational_animal() {
        let mut lex = Lexicon::new();
        let animal = lex.intern(&["animal"], Kind::NounPhrase).unwrap();
        let rationality = lex.intern(&["rationality"], Kind::NounPhrase).unwrap();
        lex.add_morph(rationality, entry("rational", None)).unwrap();
        let ra = lex.restrict(animal, rationality).unwrap();
        assert_eq!(lex.text(ra), "rational animal");
        assert!(lex
            .compositions()
            .contains(&Composition::Restrict(animal, rationality, ra)));
        assert_eq!(lex.restrict(animal, rationality).unwrap(), ra);
        let adj = lex.adjectivize(rationality).unwrap();
        assert!(lex.occurs_in(animal, ra));
        assert!(lex.occurs_in(adj, ra));
    }

    #[test]
    fn restrict_with_justice() {
        let mut lex = Lexicon::new();
        let animal = lex.intern(&["animal"], Kind::NounPhrase).unwrap();
        let justice = lex.intern(&["justice"], Kind::NounPhrase).unwrap();
        lex.add_morph(justice, entry("just", Some("justly"))).unwrap();
        let r = lex.restrict(animal, justice).unwrap();
        assert_eq!(lex.text(r), "just animal");
        let adv = lex.adverbialize(justice).unwrap();
        assert_eq!(lex.text(adv), "justly");
        assert_eq!(lex.get(adv).unwrap().kind, Kind::Adverbial);
        assert_eq!(lex.adverbialize(justice).unwrap(), adv);
    }

    #[test]
    fn missing_morphology() {
        let mut lex = Lexicon::new();
        let animal = lex.intern(&["animal"], Kind::NounPhrase).unwrap();
        let x = lex.intern(&["whiteness"], Kind::NounPhrase).unwrap();
        assert!(matches!(lex.restrict(animal, x), Err(Error::NoAdjectival(_))));
        assert!(matches!(lex.adverbialize(x), Err(Error::NoAdverbial(_))));
        lex.add_morph(x, entry("white", None)).unwrap();
        assert!(matches!(
            lex.add_morph(x, MorphEntry::default()),
            Err(Error::DuplicateMorph(_))
        ));
        assert!(matches!(lex.adverbialize(x), Err(Error::NoAdverbial(_))));
    }

    #[test]
    fn occurrence() {
        let mut lex = Lexicon::new();
        let animal = lex.intern(&["animal"], Kind::NounPhrase).unwrap();
        let ra = lex.intern(&["rational", "animal"], Kind::NounPhrase).unwrap();
        assert!(lex.occurs_in(animal, ra));
        assert!(lex.occurs_in(ra, ra));
        assert!(!lex.occurs_in(ra, animal));
    }

    #[test]
    fn compounds_are_commutative() {
        let mut lex = Lexicon::new();
        let a = lex.intern(&["justice"], Kind::NounPhrase).unwrap();
        let b = lex.intern(&["courage"], Kind::NounPhrase).unwrap();
        let s1 = lex.sum(a, b).unwrap();
        let s2 = lex.sum(b, a).unwrap();
        assert_eq!(s1, s2);
        let p = lex.pair(b, a).unwrap();
        assert_ne!(p, s1);
        assert_eq!(lex.get(p).unwrap().constituents, Some((a, b)));
        assert!(lex.occurs_in(a, s1));
        assert!(matches!(lex.sum(s1, a), Err(Error::BadConstituent(_))));
    }
}
