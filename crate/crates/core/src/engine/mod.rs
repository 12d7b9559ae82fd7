//! Saturation, constraint checking, derivations and refutation.
//!
//! Evaluation is stratified. Rules whose bodies are monotone in the fact set
//! run to a fixpoint first; then the closed-world notions (immediate species,
//! individuals, lowest species) and the rules with universal or extensional
//! conditions are evaluated once against that snapshot. The two stages
//! alternate until neither adds a fact.

pub(crate) mod eval;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::axioms;
use crate::catalog::{contrapositives, Catalog};
use crate::error::{Error, Result};
use crate::kb::{FactStore, Justification, KnowledgeBase, Provenance};
use crate::rule::{BodyItem, Head, Mode, Rule, Term};
use crate::signature::{GroundLit, Value};

use eval::{resolve_constants, Binding, Constants, Evaluator, Solution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationOptions {
    pub max_iterations: usize,
    pub enable_dubious: bool,
    /// Restricts catalog rules to these ids (contrapositives follow their
    /// base rule). Axioms and user rules always apply.
    pub rule_filter: Option<BTreeSet<String>>,
}

impl Default for SaturationOptions {
    fn default() -> Self {
        SaturationOptions {
            max_iterations: 10_000,
            enable_dubious: false,
            rule_filter: None,
        }
    }
}

/// Result of saturation: the extended knowledge base and the derived facts
/// in commit order.
#[derive(Debug, Clone)]
pub struct Saturation {
    pub kb: KnowledgeBase,
    pub trace: Vec<GroundLit>,
    pub iterations: usize,
}

fn base_id(id: &str) -> &str {
    id.split('/').next().unwrap_or(id)
}

fn selected(rule: &Rule, opts: &SaturationOptions, dubious: bool) -> bool {
    (!rule.dubious || dubious) && opts.rule_filter.as_ref().is_none_or(|f| f.contains(base_id(&rule.id)))
}

/// Generative rules in program order: axioms, catalog rules each followed by
/// its contrapositives, then user rules.
pub fn generative_program(kb: &KnowledgeBase, catalog: &Catalog, opts: &SaturationOptions) -> Vec<Rule> {
    let dubious = opts.enable_dubious || kb.options.enable_dubious;
    let mut out = axioms::closure_rules();
    for r in &catalog.rules {
        if !r.is_generative() || !selected(r, opts, dubious) {
            continue;
        }
        out.push(r.clone());
        out.extend(contrapositives(r).into_iter().filter(Rule::is_generative));
    }
    for u in &kb.rules {
        if !u.rule.is_generative() {
            continue;
        }
        out.push(u.rule.clone());
        if u.contrapositives {
            out.extend(contrapositives(&u.rule).into_iter().filter(Rule::is_generative));
        }
    }
    out
}

/// Constraint rules: axioms, catalog constraints (including the constraint
/// form of bodyless rules' contrapositives), then user constraints.
pub fn constraint_program(kb: &KnowledgeBase, catalog: &Catalog, opts: &SaturationOptions) -> Vec<Rule> {
    let dubious = opts.enable_dubious || kb.options.enable_dubious;
    let mut out = axioms::constraint_rules();
    for r in &catalog.rules {
        if !selected(r, opts, dubious) {
            continue;
        }
        if r.mode == Mode::Constraint {
            out.push(r.clone());
        } else {
            out.extend(contrapositives(r).into_iter().filter(|c| c.mode == Mode::Constraint));
        }
    }
    for u in &kb.rules {
        if u.rule.mode == Mode::Constraint {
            out.push(u.rule.clone());
        } else if u.contrapositives {
            out.extend(
                contrapositives(&u.rule)
                    .into_iter()
                    .filter(|c| c.mode == Mode::Constraint),
            );
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Strategy {
    SemiNaive,
    Naive,
}

pub fn saturate(kb: &KnowledgeBase, catalog: &Catalog, opts: &SaturationOptions) -> Result<Saturation> {
    let prepared = axioms::prepare(kb)?;
    let rules = generative_program(&prepared, catalog, opts);
    run(prepared, &rules, opts.max_iterations, Strategy::SemiNaive, true)
}

/// Reference implementation: every rule is re-evaluated against the whole
/// fact set each round.
pub fn oracle_saturate(kb: &KnowledgeBase, catalog: &Catalog, opts: &SaturationOptions) -> Result<Saturation> {
    let prepared = axioms::prepare(kb)?;
    let rules = generative_program(&prepared, catalog, opts);
    run(prepared, &rules, opts.max_iterations, Strategy::Naive, true)
}

/// Fixpoint of `rules` alone, without derived notions.
pub(crate) fn fixpoint(kb: &KnowledgeBase, rules: &[Rule], max_iterations: usize) -> Result<Saturation> {
    run(kb.clone(), rules, max_iterations, Strategy::SemiNaive, false)
}

type Candidate = (GroundLit, Justification);

fn justification(rule: &Rule, sol: &Solution) -> Justification {
    let bindings = sol
        .binding
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (rule.vars[i].clone(), v)))
        .collect();
    Justification {
        rule: rule.id.clone(),
        bindings,
        premises: sol.premises.clone(),
    }
}

/// Candidates of one rule in deterministic order, one per binding.
fn fire(ev: &Evaluator<'_>, rule: &Rule, delta: Option<&FactStore>) -> Vec<Candidate> {
    let Head::Lit(head) = &rule.head else {
        return Vec::new();
    };
    let nvars = rule.vars.len();
    let mut sols: Vec<Solution> = match delta {
        None => ev.solve(nvars, &rule.body, None, None),
        Some(d) => {
            let mut all = Vec::new();
            for (i, item) in rule.body.iter().enumerate() {
                if item.is_literal() {
                    all.extend(ev.solve(nvars, &rule.body, Some((i, d)), None));
                }
            }
            all
        }
    };
    sols.sort();
    sols.dedup_by(|a, b| a.binding == b.binding);
    sols.into_iter()
        .filter_map(|s| {
            let lit = ev.instantiate(head, &s.binding)?;
            (!ev.store.contains(&lit)).then(|| (lit, justification(rule, &s)))
        })
        .collect()
}

fn run(
    mut kb: KnowledgeBase,
    rules: &[Rule],
    max_iterations: usize,
    strategy: Strategy,
    derived_notions: bool,
) -> Result<Saturation> {
    let consts = resolve_constants(&kb.lexicon, &kb.aliases, rules);
    let domain = kb.domain();
    let (monotone, staged): (Vec<&Rule>, Vec<&Rule>) = rules.iter().partition(|r| !r.is_nonmonotone());
    let mut trace = Vec::new();
    let mut iterations = 0usize;
    let mut delta: Option<FactStore> = None;
    loop {
        loop {
            iterations += 1;
            if iterations > max_iterations {
                return Err(Error::IterationLimit {
                    limit: max_iterations,
                    derived: trace.len(),
                });
            }
            let cands = {
                let ev = Evaluator {
                    lexicon: &kb.lexicon,
                    store: &kb.facts,
                    domain: &domain,
                    consts: &consts,
                };
                let mut cands = Vec::new();
                for r in &monotone {
                    let d = match strategy {
                        Strategy::Naive => None,
                        Strategy::SemiNaive => {
                            let has_lit = r.body.iter().any(BodyItem::is_literal);
                            match (&delta, has_lit) {
                                (None, _) => None,
                                (Some(_), false) => continue,
                                (Some(d), true) => Some(d),
                            }
                        }
                    };
                    cands.extend(fire(&ev, r, d));
                }
                cands
            };
            let added = commit(&mut kb, cands, &mut trace);
            if added.is_empty() {
                break;
            }
            delta = Some(added);
        }
        iterations += 1;
        if iterations > max_iterations {
            return Err(Error::IterationLimit {
                limit: max_iterations,
                derived: trace.len(),
            });
        }
        let cands = {
            let mut cands = Vec::new();
            if derived_notions {
                cands.extend(axioms::igenus_candidates(&kb.facts));
                cands.extend(axioms::classification_candidates(&kb, &kb.facts));
            }
            let ev = Evaluator {
                lexicon: &kb.lexicon,
                store: &kb.facts,
                domain: &domain,
                consts: &consts,
            };
            for r in &staged {
                cands.extend(fire(&ev, r, None));
            }
            cands
        };
        let added = commit(&mut kb, cands, &mut trace);
        if added.is_empty() {
            break;
        }
        delta = Some(added);
    }
    Ok(Saturation { kb, trace, iterations })
}

fn commit(kb: &mut KnowledgeBase, cands: Vec<Candidate>, trace: &mut Vec<GroundLit>) -> FactStore {
    let mut added = FactStore::default();
    for (lit, j) in cands {
        if kb.facts.insert(lit.clone(), Provenance::Derived(Box::new(j))) {
            added.insert(lit.clone(), Provenance::Asserted);
            trace.push(lit);
        }
    }
    added
}

/// `derived <pos|neg> <pred> <args…> by <rule-id> from [<fact refs>]`
pub fn trace_line(kb: &KnowledgeBase, lit: &GroundLit) -> String {
    let args: Vec<String> = lit.args.iter().map(|v| kb.render_value(*v)).collect();
    let (rule, refs) = match kb.facts.provenance(lit).and_then(|p| p.justification()) {
        Some(j) => (
            j.rule.clone(),
            j.premises.iter().map(|p| kb.render_lit(p)).collect::<Vec<_>>(),
        ),
        None => ("asserted".to_string(), Vec::new()),
    };
    format!(
        "derived {} {} {} by {} from [{}]",
        lit.pol.keyword(),
        lit.pred,
        args.join(" "),
        rule,
        refs.join(", ")
    )
}

// ---------------------------------------------------------------------------
// Conflicts and constraint checking

/// Atoms present with both polarities, as positive literals.
pub fn conflicts(kb: &KnowledgeBase) -> Vec<GroundLit> {
    kb.facts
        .iter()
        .filter(|(l, _)| l.is_pos() && kb.contains(&l.negated()))
        .map(|(l, _)| l.clone())
        .collect()
}

pub fn is_consistent(kb: &KnowledgeBase) -> bool {
    conflicts(kb).is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub constraint: String,
    pub facts: Vec<GroundLit>,
    pub message: String,
}

#[derive(Serialize)]
struct ViolationRecord<'a> {
    constraint: &'a str,
    facts: Vec<String>,
    message: &'a str,
}

impl Violation {
    /// One JSON object on a single line.
    pub fn record(&self, kb: &KnowledgeBase) -> String {
        let rec = ViolationRecord {
            constraint: &self.constraint,
            facts: self.facts.iter().map(|f| kb.render_lit(f)).collect(),
            message: &self.message,
        };
        serde_json::to_string(&rec).expect("violation serializes")
    }

    pub fn human(&self, kb: &KnowledgeBase) -> String {
        let facts: Vec<String> = self.facts.iter().map(|f| kb.render_lit(f)).collect();
        format!("violation {}: {} [{}]", self.constraint, self.message, facts.join(", "))
    }
}

/// Contradictory pairs not already reported as necessity conflicts.
pub fn polarity_conflicts(kb: &KnowledgeBase) -> Vec<Violation> {
    conflicts(kb)
        .into_iter()
        .filter(|l| l.pred != crate::signature::Pred::Nec)
        .map(|l| Violation {
            constraint: "consistency".into(),
            message: format!("{} both holds and fails", kb.render_lit(&l)),
            facts: vec![l.clone(), l.negated()],
        })
        .collect()
}

fn head_vars(rule: &Rule) -> BTreeSet<usize> {
    fn term(out: &mut BTreeSet<usize>, t: &Term) {
        if let Term::Var(v) = t {
            out.insert(*v);
        }
    }
    let mut out = BTreeSet::new();
    match &rule.head {
        Head::Lit(l) => l.vars().for_each(|v| {
            out.insert(v);
        }),
        Head::AnyOf(ls) => ls.iter().flat_map(|l| l.vars()).for_each(|v| {
            out.insert(v);
        }),
        Head::Exists { vars, body } => {
            for b in body {
                match b {
                    BodyItem::Lit(l) => out.extend(l.vars()),
                    BodyItem::Neq(a, c) => {
                        term(&mut out, a);
                        term(&mut out, c);
                    }
                    _ => {}
                }
            }
            for v in vars {
                out.remove(v);
            }
        }
        Head::Eq(a, b) | Head::Neq(a, b) | Head::ExtSub(a, b) | Head::ExtProperSub(a, b) => {
            term(&mut out, a);
            term(&mut out, b);
        }
        Head::False => {}
    }
    out
}

fn describe(ev: &Evaluator<'_>, kb: &KnowledgeBase, rule: &Rule, b: &Binding) -> String {
    let term = |t: &Term| match ev.value(t, b) {
        Some(v) => kb.render_value(v),
        None => "?".into(),
    };
    let lit = |l: &crate::rule::Literal| match ev.instantiate(l, b) {
        Some(g) => kb.render_lit(&g),
        None => rule.render_literal(l).to_string(),
    };
    match &rule.head {
        Head::Lit(l) => format!("required {} is not established", lit(l)),
        Head::AnyOf(ls) => format!("none of {} holds", ls.iter().map(lit).collect::<Vec<_>>().join(" | ")),
        Head::Exists { .. } => {
            let bound: Vec<String> = head_vars(rule)
                .into_iter()
                .filter_map(|v| b[v].map(|val| format!("{}={}", rule.vars[v], kb.render_value(val))))
                .collect();
            format!("no witness for {} with {}", rule, bound.join(", "))
        }
        Head::Eq(x, y) => format!("{} and {} must coincide", term(x), term(y)),
        Head::Neq(x, y) => format!("{} and {} must differ", term(x), term(y)),
        Head::False => format!("forbidden combination: {}", rule),
        Head::ExtSub(x, y) => format!("extension of {} is not within that of {}", term(x), term(y)),
        Head::ExtProperSub(x, y) => {
            format!("extension of {} is not strictly within that of {}", term(x), term(y))
        }
    }
}

/// Evaluates constraint rules against `kb` as is.
pub fn check_rules(kb: &KnowledgeBase, rules: &[Rule]) -> Vec<Violation> {
    let consts: Constants = resolve_constants(&kb.lexicon, &kb.aliases, rules);
    let domain = kb.domain();
    let ev = Evaluator {
        lexicon: &kb.lexicon,
        store: &kb.facts,
        domain: &domain,
        consts: &consts,
    };
    let mut out = Vec::new();
    for rule in rules {
        let mut sols = ev.solve(rule.vars.len(), &rule.body, None, None);
        sols.sort();
        let key_vars = head_vars(rule);
        let mut seen = BTreeSet::new();
        for s in sols {
            if ev.head_holds(rule, &s.binding) {
                continue;
            }
            let key: Vec<Option<Value>> = if key_vars.is_empty() {
                s.binding.clone()
            } else {
                key_vars.iter().map(|&v| s.binding[v]).collect()
            };
            if !seen.insert(key) {
                continue;
            }
            let mut facts = s.premises.clone();
            facts.sort();
            facts.dedup();
            out.push(Violation {
                constraint: rule.id.clone(),
                message: describe(&ev, kb, rule, &s.binding),
                facts,
            });
        }
    }
    out
}

/// Saturates, then reports every violated constraint, contradictory pair
/// and uncategorized term.
pub fn check_all(
    kb: &KnowledgeBase,
    catalog: &Catalog,
    opts: &SaturationOptions,
) -> Result<(Saturation, Vec<Violation>)> {
    let sat = saturate(kb, catalog, opts)?;
    let rules = constraint_program(&sat.kb, catalog, opts);
    let mut out = check_rules(&sat.kb, &rules);
    out.extend(polarity_conflicts(&sat.kb));
    out.extend(axioms::check_terms_categorized(&sat.kb));
    Ok((sat, out))
}

// ---------------------------------------------------------------------------
// Derivations

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Asserted,
    Hypothesis,
    Rule {
        rule: String,
        bindings: Vec<(String, Value)>,
        children: Vec<Derivation>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub fact: GroundLit,
    pub step: Step,
}

impl Derivation {
    pub fn depth(&self) -> usize {
        match &self.step {
            Step::Rule { children, .. } => 1 + children.iter().map(Derivation::depth).max().unwrap_or(0),
            _ => 0,
        }
    }

    /// Id of the rule that produced the fact, `""` for leaves.
    pub fn root_rule(&self) -> &str {
        match &self.step {
            Step::Rule { rule, .. } => rule,
            _ => "",
        }
    }

    pub fn uses_hypothesis(&self) -> bool {
        match &self.step {
            Step::Hypothesis => true,
            Step::Asserted => false,
            Step::Rule { children, .. } => children.iter().any(Derivation::uses_hypothesis),
        }
    }

    /// Indented tree, one fact per line.
    pub fn render(&self, kb: &KnowledgeBase) -> String {
        let mut out = String::new();
        self.render_into(kb, 0, &mut out);
        out
    }

    fn render_into(&self, kb: &KnowledgeBase, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        let how = match &self.step {
            Step::Asserted => "asserted".to_string(),
            Step::Hypothesis => "hypothesis".to_string(),
            Step::Rule { rule, bindings, .. } => {
                let b: Vec<String> = bindings
                    .iter()
                    .map(|(n, v)| format!("{n}={}", kb.render_value(*v)))
                    .collect();
                format!("by {rule} [{}]", b.join(", "))
            }
        };
        out.push_str(&format!("{pad}{} {how}\n", kb.render_lit(&self.fact)));
        if let Step::Rule { children, .. } = &self.step {
            for c in children {
                c.render_into(kb, indent + 1, out);
            }
        }
    }
}

/// The recorded derivation of `lit`, if present.
pub fn why(kb: &KnowledgeBase, lit: &GroundLit) -> Option<Derivation> {
    let step = match kb.facts.provenance(lit)? {
        Provenance::Asserted => Step::Asserted,
        Provenance::Hypothesis => Step::Hypothesis,
        Provenance::Derived(j) => Step::Rule {
            rule: j.rule.clone(),
            bindings: j.bindings.clone(),
            children: j.premises.iter().map(|p| why(kb, p)).collect::<Option<Vec<_>>>()?,
        },
    };
    Some(Derivation {
        fact: lit.clone(),
        step,
    })
}

/// Re-checks every step of `d` against `rules`: each body literal under the
/// recorded bindings is among the children, inequations hold, and the head
/// instantiates to the fact. Leaves must be present in `kb`.
pub fn validate(d: &Derivation, kb: &KnowledgeBase, rules: &[Rule]) -> bool {
    let by_id: BTreeMap<&str, &Rule> = rules.iter().map(|r| (r.id.as_str(), r)).collect();
    let consts = resolve_constants(&kb.lexicon, &kb.aliases, rules);
    let domain = kb.domain();
    let ev = Evaluator {
        lexicon: &kb.lexicon,
        store: &kb.facts,
        domain: &domain,
        consts: &consts,
    };
    validate_step(d, kb, &by_id, &ev)
}

fn validate_step(d: &Derivation, kb: &KnowledgeBase, rules: &BTreeMap<&str, &Rule>, ev: &Evaluator<'_>) -> bool {
    let Step::Rule {
        rule,
        bindings,
        children,
    } = &d.step
    else {
        return kb.contains(&d.fact);
    };
    if !children.iter().all(|c| validate_step(c, kb, rules, ev)) {
        return false;
    }
    let child_facts: BTreeSet<&GroundLit> = children.iter().map(|c| &c.fact).collect();
    if [axioms::DEF_IGENUS, axioms::DEF_INDIVIDUAL, axioms::DEF_INFIMA].contains(&rule.as_str()) {
        return kb.contains(&d.fact);
    }
    let Some(r) = rules.get(rule.as_str()) else {
        return false;
    };
    let mut b: Binding = vec![None; r.vars.len()];
    for (name, v) in bindings {
        match r.vars.iter().position(|n| n == name) {
            Some(i) => b[i] = Some(*v),
            None => return false,
        }
    }
    for item in &r.body {
        let ok = match item {
            BodyItem::Lit(l) => ev.instantiate(l, &b).is_some_and(|g| child_facts.contains(&g)),
            BodyItem::Neq(x, y) => ev.value(x, &b) != ev.value(y, &b),
            BodyItem::Dom(v) => b[*v].is_some(),
            _ => true,
        };
        if !ok {
            return false;
        }
    }
    match &r.head {
        Head::Lit(l) => ev.instantiate(l, &b).as_ref() == Some(&d.fact),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Refutation

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub hypothesis: GroundLit,
    /// The contradicted atom, positive.
    pub atom: GroundLit,
    pub positive: Derivation,
    pub negative: Derivation,
}

impl Refutation {
    pub fn render(&self, kb: &KnowledgeBase) -> String {
        format!(
            "refuted {}\nconflict on {}\n{}{}",
            kb.render_lit(&self.hypothesis),
            kb.render_lit(&self.atom),
            self.positive.render(kb),
            self.negative.render(kb)
        )
    }
}

/// The saturated knowledge base with `goal` as hypothesis, and its conflicts.
pub fn hypothesize(
    kb: &KnowledgeBase,
    catalog: &Catalog,
    opts: &SaturationOptions,
    goal: &GroundLit,
) -> Result<(Saturation, Vec<GroundLit>)> {
    let base = kb.base();
    let sat = saturate(&base, catalog, opts)?;
    let c = conflicts(&sat.kb);
    if let Some(first) = c.first() {
        return Err(Error::Inconsistent(sat.kb.render_lit(first)));
    }
    let mut with = base;
    with.add_fact(goal.clone(), Provenance::Hypothesis)?;
    let sat = saturate(&with, catalog, opts)?;
    let c = conflicts(&sat.kb);
    Ok((sat, c))
}

/// Depth sum, root rule ids, atom: smaller is preferred.
type RefutationKey = (usize, Vec<String>, GroundLit);

/// Adds `goal` as a hypothesis to the asserted facts and looks for a
/// contradiction. Among several, the one with the shallowest pair of
/// derivations wins, ties broken by root rule ids and then by atom.
pub fn refute(
    kb: &KnowledgeBase,
    catalog: &Catalog,
    opts: &SaturationOptions,
    goal: &GroundLit,
) -> Result<Option<Refutation>> {
    let (sat, conflicts) = hypothesize(kb, catalog, opts, goal)?;
    let mut best: Option<(RefutationKey, Refutation)> = None;
    for atom in conflicts {
        let (Some(pos), Some(neg)) = (why(&sat.kb, &atom), why(&sat.kb, &atom.negated())) else {
            continue;
        };
        let mut roots = vec![pos.root_rule().to_string(), neg.root_rule().to_string()];
        roots.sort();
        let key = (pos.depth() + neg.depth(), roots, atom.clone());
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((
                key,
                Refutation {
                    hypothesis: goal.clone(),
                    atom,
                    positive: pos,
                    negative: neg,
                },
            ));
        }
    }
    Ok(best.map(|(_, r)| r))
}

/// Renders a saturated knowledge base as sorted `fact`/`deny` lines.
pub fn render_records(kb: &KnowledgeBase) -> String {
    let mut lines: Vec<String> = kb.facts.iter().map(|(l, _)| kb.render_fact_line(l)).collect();
    lines.sort();
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{Polarity, Pred};

    fn lit(kb: &KnowledgeBase, p: Pred, args: &[&str], pol: Polarity) -> GroundLit {
        let vals = args.iter().map(|a| Value::Expr(kb.expr(a).unwrap())).collect();
        GroundLit::new(p, vals, pol).unwrap()
    }

    #[test]
    fn property_excluded_by_species_occurrence() {
        let mut kb = KnowledgeBase::new();
        kb.assert_named(Pred::Prop, &["x", "y"], Polarity::Pos).unwrap();
        kb.assert_named(Pred::GInc, &["w", "y"], Polarity::Pos).unwrap();
        kb.assert_named(Pred::Genus, &["w", "x"], Polarity::Pos).unwrap();
        let opts = SaturationOptions {
            rule_filter: Some(["V3-2".to_string()].into()),
            ..Default::default()
        };
        let sat = saturate(&kb, &Catalog::builtin(), &opts).unwrap();
        let target = lit(&sat.kb, Pred::Prop, &["w", "y"], Polarity::Neg);
        assert!(sat.kb.contains(&target));
        let d = why(&sat.kb, &target).unwrap();
        assert_eq!(d.root_rule(), "V3-2");
    }

    #[test]
    fn semi_naive_matches_naive() {
        let mut kb = KnowledgeBase::new();
        kb.assert_named(Pred::Genus, &["Socrates", "man"], Polarity::Pos)
            .unwrap();
        kb.assert_named(Pred::Genus, &["man", "animal"], Polarity::Pos).unwrap();
        kb.assert_named(Pred::Genus, &["horse", "animal"], Polarity::Pos)
            .unwrap();
        kb.assert_named(Pred::Contrary, &["hot", "cold"], Polarity::Pos)
            .unwrap();
        kb.assert_named(Pred::Nec, &["fire", "hot"], Polarity::Pos).unwrap();
        let cat = Catalog::builtin();
        let opts = SaturationOptions::default();
        let a = saturate(&kb, &cat, &opts).unwrap();
        let b = oracle_saturate(&kb, &cat, &opts).unwrap();
        assert_eq!(a.kb.facts.lits(), b.kb.facts.lits());
        assert!(a
            .kb
            .contains(&lit(&a.kb, Pred::Genus, &["Socrates", "animal"], Polarity::Pos)));
        assert!(a
            .kb
            .contains(&lit(&a.kb, Pred::Genus, &["fire", "cold"], Polarity::Neg)));
    }

    #[test]
    fn derivations_validate() {
        let mut kb = KnowledgeBase::new();
        kb.assert_named(Pred::Genus, &["man", "animal"], Polarity::Pos).unwrap();
        kb.assert_named(Pred::Nec, &["Socrates", "man"], Polarity::Pos).unwrap();
        let cat = Catalog::builtin();
        let opts = SaturationOptions::default();
        let sat = saturate(&kb, &cat, &opts).unwrap();
        let rules = generative_program(&sat.kb, &cat, &opts);
        for l in &sat.trace {
            let d = why(&sat.kb, l).unwrap();
            assert!(validate(&d, &sat.kb, &rules), "{}", sat.kb.render_lit(l));
        }
    }

    #[test]
    fn iteration_limit() {
        let mut kb = KnowledgeBase::new();
        kb.assert_named(Pred::Genus, &["a", "b"], Polarity::Pos).unwrap();
        kb.assert_named(Pred::Genus, &["b", "c"], Polarity::Pos).unwrap();
        let opts = SaturationOptions {
            max_iterations: 1,
            ..Default::default()
        };
        let r = saturate(&kb, &Catalog::builtin(), &opts);
        assert!(matches!(r, Err(Error::IterationLimit { limit: 1, .. })));
    }

    #[test]
    fn refutation_by_user_rule() {
        let mut kb = KnowledgeBase::new();
        kb.assert_named(Pred::Nec, &["soul", "life"], Polarity::Pos).unwrap();
        kb.noun("number").unwrap();
        kb.add_rule(
            Rule::parse("number-not-life", "user", r#"genus(n, "number") -> ~nec(n, "life")"#).unwrap(),
            false,
        );
        let goal = lit(&kb, Pred::Genus, &["soul", "number"], Polarity::Pos);
        let r = refute(&kb, &Catalog::builtin(), &SaturationOptions::default(), &goal)
            .unwrap()
            .unwrap();
        assert_eq!(r.atom, lit(&kb, Pred::Nec, &["soul", "life"], Polarity::Pos));
        assert_eq!(r.positive.step, Step::Asserted);
        assert!(r.negative.uses_hypothesis());
        assert_eq!(r.negative.root_rule(), "number-not-life");
    }

    #[test]
    fn refutation_needs_consistent_base() {
        let mut kb = KnowledgeBase::new();
        kb.assert_named(Pred::Nec, &["a", "b"], Polarity::Pos).unwrap();
        kb.assert_named(Pred::Nec, &["a", "b"], Polarity::Neg).unwrap();
        let goal = lit(&kb, Pred::Genus, &["a", "b"], Polarity::Pos);
        let r = refute(&kb, &Catalog::builtin(), &SaturationOptions::default(), &goal);
        assert!(matches!(r, Err(Error::Inconsistent(_))));
    }

    #[test]
    fn violation_record_is_json() {
        let mut kb = KnowledgeBase::new();
        kb.assert_named(Pred::Genus, &["a", "a"], Polarity::Pos).unwrap();
        let (sat, v) = check_all(&kb, &Catalog::builtin(), &SaturationOptions::default()).unwrap();
        let ax7 = v.iter().find(|v| v.constraint == "Ax7").unwrap();
        let rec: serde_json::Value = serde_json::from_str(&ax7.record(&sat.kb)).unwrap();
        assert_eq!(rec["constraint"], "Ax7");
        assert_eq!(rec["facts"][0], "genus(a, a)");
    }
}
