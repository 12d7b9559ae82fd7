//! Signed ground facts, user rules and the knowledge base that holds them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::lexicon::{Composition, ExprId, Kind, Lexicon, MorphEntry};
use crate::rule::Rule;
use crate::signature::{check_args, Category, GroundLit, Polarity, Pred, Sort, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Justification {
    pub rule: String,
    pub bindings: Vec<(String, Value)>,
    pub premises: Vec<GroundLit>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Asserted,
    Hypothesis,
    Derived(Box<Justification>),
}

impl Provenance {
    pub fn is_leaf(&self) -> bool {
        !matches!(self, Provenance::Derived(_))
    }

    pub fn justification(&self) -> Option<&Justification> {
        match self {
            Provenance::Derived(j) => Some(j),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub lit: GroundLit,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Relation {
    tuples: Vec<Vec<Value>>,
    by_pos: HashMap<(usize, Value), Vec<usize>>,
}

impl Relation {
    fn push(&mut self, args: Vec<Value>) {
        let idx = self.tuples.len();
        for (pos, v) in args.iter().enumerate() {
            self.by_pos.entry((pos, *v)).or_default().push(idx);
        }
        self.tuples.push(args);
    }

    /// Tuples compatible with the bound positions of `pattern`.
    pub(crate) fn matching<'a>(&'a self, pattern: &'a [Option<Value>]) -> Box<dyn Iterator<Item = &'a [Value]> + 'a> {
        let best = pattern
            .iter()
            .enumerate()
            .filter_map(|(pos, v)| v.map(|v| (pos, v)))
            .map(|(pos, v)| self.by_pos.get(&(pos, v)).map_or(&[][..], |b| b.as_slice()))
            .min_by_key(|b| b.len());
        let fits = move |t: &&[Value]| pattern.iter().zip(t.iter()).all(|(p, v)| p.is_none_or(|p| p == *v));
        match best {
            Some(bucket) => Box::new(bucket.iter().map(|&i| self.tuples[i].as_slice()).filter(fits)),
            None => Box::new(self.tuples.iter().map(Vec::as_slice).filter(fits)),
        }
    }
}

#[derive(Debug, Clone)]
struct FactMeta {
    provenance: Provenance,
    seq: usize,
}

/// Set-like store of signed ground facts with per-relation indices.
#[derive(Debug, Clone, Default)]
pub struct FactStore {
    facts: BTreeMap<GroundLit, FactMeta>,
    relations: HashMap<(Pred, Polarity), Relation>,
    order: Vec<GroundLit>,
}

impl FactStore {
    /// Inserts `lit`; returns false (keeping the first provenance) if present.
    pub fn insert(&mut self, lit: GroundLit, provenance: Provenance) -> bool {
        if self.facts.contains_key(&lit) {
            return false;
        }
        self.relations
            .entry((lit.pred, lit.pol))
            .or_default()
            .push(lit.args.clone());
        self.facts.insert(
            lit.clone(),
            FactMeta {
                provenance,
                seq: self.order.len(),
            },
        );
        self.order.push(lit);
        true
    }

    pub fn contains(&self, lit: &GroundLit) -> bool {
        self.facts.contains_key(lit)
    }

    pub fn provenance(&self, lit: &GroundLit) -> Option<&Provenance> {
        self.facts.get(lit).map(|m| &m.provenance)
    }

    /// Position of the fact in insertion order.
    pub fn seq(&self, lit: &GroundLit) -> Option<usize> {
        self.facts.get(lit).map(|m| m.seq)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    /// Facts in canonical (predicate, arguments, polarity) order.
    pub fn iter(&self) -> impl Iterator<Item = (&GroundLit, &Provenance)> {
        self.facts.iter().map(|(l, m)| (l, &m.provenance))
    }

    /// Facts in insertion order.
    pub fn in_order(&self) -> &[GroundLit] {
        &self.order
    }

    pub(crate) fn relation(&self, pred: Pred, pol: Polarity) -> Option<&Relation> {
        self.relations.get(&(pred, pol))
    }

    pub fn lits(&self) -> BTreeSet<GroundLit> {
        self.facts.keys().cloned().collect()
    }
}

/// A query pattern; `None` arguments are wildcards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub pred: Pred,
    pub args: Vec<Option<Value>>,
    pub pol: Polarity,
}

impl Pattern {
    pub fn new(pred: Pred, args: Vec<Option<Value>>, pol: Polarity) -> Pattern {
        match pred {
            Pred::Cont => Pattern {
                pred: Pred::Nec,
                args,
                pol: pol.flip(),
            },
            _ => Pattern { pred, args, pol },
        }
    }
}

#[derive(Debug, Clone)]
pub struct UserRule {
    pub rule: Rule,
    /// Whether contrapositives of this rule join saturation (`rule!`).
    pub contrapositives: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KbOptions {
    pub enable_dubious: bool,
}

pub const BEING: &str = "being";
pub const ONE: &str = "one";

#[derive(Debug, Clone, Default)]
pub struct KnowledgeBase {
    pub lexicon: Lexicon,
    pub facts: FactStore,
    pub rules: Vec<UserRule>,
    pub options: KbOptions,
    /// Expressions declared as terms; the only ones checked for a category.
    pub terms: BTreeSet<ExprId>,
    pub aliases: BTreeMap<String, ExprId>,
}

impl KnowledgeBase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, text: &str, kind: Kind) -> Result<ExprId> {
        self.lexicon.intern_text(text, kind)
    }

    /// Interns a noun phrase.
    pub fn noun(&mut self, text: &str) -> Result<ExprId> {
        self.intern(text, Kind::NounPhrase)
    }

    /// Resolves a name: alias first, then expression text.
    pub fn resolve(&self, name: &str) -> Option<ExprId> {
        self.aliases.get(name).copied().or_else(|| self.lexicon.find_text(name))
    }

    pub fn expr(&self, name: &str) -> Result<ExprId> {
        self.resolve(name)
            .ok_or_else(|| Error::UnknownExpression(name.to_string()))
    }

    pub fn domain(&self) -> Vec<ExprId> {
        self.lexicon.ids().collect()
    }

    fn check_interned(&self, lit: &GroundLit) -> Result<()> {
        check_args(lit.pred, &lit.args)?;
        for e in lit.exprs() {
            if !self.lexicon.contains(e) {
                return Err(Error::Uninterned(e.0));
            }
        }
        Ok(())
    }

    pub fn assert_fact(&mut self, lit: GroundLit) -> Result<bool> {
        self.add_fact(lit, Provenance::Asserted)
    }

    pub fn add_fact(&mut self, lit: GroundLit, provenance: Provenance) -> Result<bool> {
        self.check_interned(&lit)?;
        let lit = GroundLit::canonical(lit.pred, lit.args, lit.pol);
        Ok(self.facts.insert(lit, provenance))
    }

    /// Convenience for tests and programmatic use: asserts `pred(args)` by name,
    /// interning unknown names as noun phrases.
    pub fn assert_named(&mut self, pred: Pred, args: &[&str], pol: Polarity) -> Result<GroundLit> {
        let mut vals = Vec::with_capacity(args.len());
        for (i, a) in args.iter().enumerate() {
            if pred.sort(i) == Sort::Category {
                let index = a.parse().map_err(|_| Error::Sort {
                    pred: pred.name().into(),
                    pos: i,
                })?;
                vals.push(Value::Cat(Category::new(index)?));
                continue;
            }
            let id = match self.resolve(a) {
                Some(id) => id,
                None => self.noun(a)?,
            };
            vals.push(Value::Expr(id));
        }
        let lit = GroundLit::new(pred, vals, pol)?;
        self.assert_fact(lit.clone())?;
        Ok(lit)
    }

    pub fn holds(&self, pattern: &Pattern) -> Vec<Fact> {
        let Some(rel) = self.facts.relation(pattern.pred, pattern.pol) else {
            return Vec::new();
        };
        let mut out: Vec<Fact> = rel
            .matching(&pattern.args)
            .map(|args| {
                let lit = GroundLit {
                    pred: pattern.pred,
                    args: args.to_vec(),
                    pol: pattern.pol,
                };
                let provenance = self.facts.provenance(&lit).cloned().unwrap_or(Provenance::Asserted);
                Fact { lit, provenance }
            })
            .collect();
        out.sort_by(|a, b| a.lit.cmp(&b.lit));
        out
    }

    pub fn contains(&self, lit: &GroundLit) -> bool {
        self.facts.contains(lit)
    }

    pub fn add_rule(&mut self, rule: Rule, contrapositives: bool) {
        self.rules.push(UserRule { rule, contrapositives });
    }

    pub fn add_morph(&mut self, noun: ExprId, entry: MorphEntry) -> Result<()> {
        self.lexicon.add_morph(noun, entry)
    }

    pub fn restrict(&mut self, base: ExprId, modifier: ExprId) -> Result<ExprId> {
        let id = self.lexicon.restrict(base, modifier)?;
        self.sync_compositions()?;
        Ok(id)
    }

    pub fn adjectivize(&mut self, noun: ExprId) -> Result<ExprId> {
        let id = self.lexicon.adjectivize(noun)?;
        self.sync_compositions()?;
        Ok(id)
    }

    pub fn adverbialize(&mut self, noun: ExprId) -> Result<ExprId> {
        let id = self.lexicon.adverbialize(noun)?;
        self.sync_compositions()?;
        Ok(id)
    }

    fn sync_compositions(&mut self) -> Result<()> {
        let comps: Vec<Composition> = self.lexicon.compositions().to_vec();
        for c in comps {
            let lit = match c {
                Composition::Restrict(a, b, r) => GroundLit::pos(Pred::GRest, vec![a.into(), b.into(), r.into()])?,
                Composition::Adjectivize(n, r) => GroundLit::pos(Pred::GAdj, vec![n.into(), r.into()])?,
                Composition::Adverbialize(n, r) => GroundLit::pos(Pred::GAdv, vec![n.into(), r.into()])?,
            };
            self.facts.insert(lit, Provenance::Asserted);
        }
        Ok(())
    }

    /// The same knowledge base restricted to asserted facts.
    pub fn base(&self) -> KnowledgeBase {
        let mut facts = FactStore::default();
        for lit in self.facts.in_order() {
            if let Some(p @ Provenance::Asserted) = self.facts.provenance(lit) {
                facts.insert(lit.clone(), p.clone());
            }
        }
        KnowledgeBase {
            lexicon: self.lexicon.clone(),
            facts,
            rules: self.rules.clone(),
            options: self.options.clone(),
            terms: self.terms.clone(),
            aliases: self.aliases.clone(),
        }
    }

    /// Extension of `x`: every `c` with `nec(c, x)`.
    pub fn extension_of(&self, x: ExprId) -> BTreeSet<ExprId> {
        self.holds(&Pattern::new(Pred::Nec, vec![None, Some(x.into())], Polarity::Pos))
            .into_iter()
            .filter_map(|f| f.lit.args[0].expr())
            .collect()
    }

    // -- rendering ---------------------------------------------------------

    pub fn render_value(&self, v: Value) -> String {
        match v {
            Value::Cat(c) => c.index().to_string(),
            Value::Expr(e) => quote_name(&self.lexicon.text(e)),
        }
    }

    /// `~genus(soul, number)` style.
    pub fn render_lit(&self, lit: &GroundLit) -> String {
        let args: Vec<String> = lit.args.iter().map(|v| self.render_value(*v)).collect();
        let neg = if lit.pol == Polarity::Neg { "~" } else { "" };
        format!("{neg}{}({})", lit.pred, args.join(", "))
    }

    /// `fact genus soul number` / `deny nec soul life` style.
    pub fn render_fact_line(&self, lit: &GroundLit) -> String {
        let kw = if lit.is_pos() { "fact" } else { "deny" };
        let mut s = format!("{kw} {}", lit.pred);
        for v in &lit.args {
            s.push(' ');
            s.push_str(&self.render_value(*v));
        }
        s
    }
}

/// Quotes a name unless it is a single plain token.
pub fn quote_name(text: &str) -> String {
    let plain = !text.is_empty()
        && text
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '\'' | '.'))
        && !text.chars().all(|c| c.is_ascii_digit());
    if plain {
        text.to_string()
    } else {
        format!("\"{text}\"")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Category;

    #[test]
    fn store_and_retrieve() {
        let mut kb = KnowledgeBase::new();
        let lit = kb
            .assert_named(Pred::Nec, &["Socrates", "being"], Polarity::Pos)
            .unwrap();
        assert!(kb.contains(&lit));
        let s = kb.expr("Socrates").unwrap();
        let hits = kb.holds(&Pattern::new(Pred::Nec, vec![Some(s.into()), None], Polarity::Pos));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].lit, lit);
        assert!(kb
            .holds(&Pattern::new(Pred::Nec, vec![None, None], Polarity::Neg))
            .is_empty());
    }

    #[test]
    fn idempotent_assert() {
        let mut kb = KnowledgeBase::new();
        kb.assert_named(Pred::Genus, &["Socrates", "man"], Polarity::Pos)
            .unwrap();
        let s = kb.expr("Socrates").unwrap();
        let m = kb.expr("man").unwrap();
        let lit = GroundLit::pos(Pred::Genus, vec![s.into(), m.into()]).unwrap();
        assert!(!kb.assert_fact(lit).unwrap());
        assert_eq!(kb.facts.len(), 1);
    }

    #[test]
    fn errors() {
        let mut kb = KnowledgeBase::new();
        assert!(matches!(Category::new(11), Err(Error::UnknownCategory(11))));
        let lit = GroundLit {
            pred: Pred::Genus,
            args: vec![Value::Expr(ExprId(7)), Value::Expr(ExprId(8))],
            pol: Polarity::Pos,
        };
        assert_eq!(kb.assert_fact(lit), Err(Error::Uninterned(7)));
        let a = kb.noun("a").unwrap();
        let bad = GroundLit {
            pred: Pred::Genus,
            args: vec![a.into()],
            pol: Polarity::Pos,
        };
        assert!(matches!(kb.assert_fact(bad), Err(Error::Arity { .. })));
    }

    #[test]
    fn empty_kb_queries() {
        let kb = KnowledgeBase::new();
        for &p in Pred::ALL {
            let pat = Pattern::new(p, vec![None; p.arity()], Polarity::Pos);
            assert!(kb.holds(&pat).is_empty());
        }
    }

    #[test]
    fn cont_normalised_on_ingest() {
        let mut kb = KnowledgeBase::new();
        kb.assert_named(Pred::Cont, &["man", "white"], Polarity::Pos).unwrap();
        let hits = kb.holds(&Pattern::new(Pred::Nec, vec![None, None], Polarity::Neg));
        assert_eq!(hits.len(), 1);
        let hits = kb.holds(&Pattern::new(Pred::Cont, vec![None, None], Polarity::Pos));
        assert_eq!(hits.len(), 1);
    }

    #[test]
    fn restrict_asserts_grammar() {
        let mut kb = KnowledgeBase::new();
        let animal = kb.noun("animal").unwrap();
        let rat = kb.noun("rationality").unwrap();
        kb.add_morph(
            rat,
            MorphEntry {
                adjectival: Some(vec!["rational".into()]),
                adverbial: None,
            },
        )
        .unwrap();
        let ra = kb.restrict(animal, rat).unwrap();
        let lit = GroundLit::pos(Pred::GRest, vec![animal.into(), rat.into(), ra.into()]).unwrap();
        assert!(kb.contains(&lit));
        assert_eq!(kb.render_lit(&lit), "G_rest(animal, rationality, \"rational animal\")");
    }

    #[test]
    fn quoting() {
        assert_eq!(quote_name("man"), "man");
        assert_eq!(quote_name("rational animal"), "\"rational animal\"");
        assert_eq!(quote_name("12"), "\"12\"");
    }
}
