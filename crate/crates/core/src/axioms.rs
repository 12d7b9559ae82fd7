//! Axioms of the predicable system, lexical closure, and the derived notions
//! (immediate species, individuals, lowest species, coordinates).

use std::collections::BTreeSet;

use crate::catalog::Catalog;
use crate::engine::{self, SaturationOptions, Violation};
use crate::error::Result;
use crate::kb::{Justification, KnowledgeBase, Provenance, BEING, ONE};
use crate::lexicon::{ExprId, Kind};
use crate::rule::Rule;
use crate::signature::{GroundLit, Polarity, Pred, Value};

const CLOSURE: &[(&str, &str)] = &[
    ("Ax5", "genus(x, y) & genus(y, z) -> genus(x, z)"),
    ("Ax9-genus", "genus(x, y) -> nec(x, y)"),
    ("Ax9-diff1", "diff1(x, y) -> nec(x, y)"),
    ("Ax9-prop", "prop(x, y) -> nec(x, y)"),
    ("Ax9-insep", "insep(x, y) -> nec(x, y)"),
    ("Ax10-being", r#"dom(x) -> nec(x, "being")"#),
    ("Ax10-one", r#"dom(x) -> nec(x, "one")"#),
    ("DEF-geq", "genus(x, y) -> genus_eq(x, y)"),
    ("DEF-geq-refl", "dom(x) -> genus_eq(x, x)"),
    ("DEF-geq-neg", "~genus(x, y) & x != y -> ~genus_eq(x, y)"),
    ("DEF-coord", "diff2(y, a) & diff2(y, b) & a != b -> coord(a, b)"),
];

const CONSTRAINTS: &[(&str, &str)] = &[
    ("Ax2", "cat(i, x) & cat(j, x) & i != j -> false"),
    ("Ax4", "nec(x, y) & cont(x, y) -> false"),
    ("Ax6", "genus(x, y) & genus(x, z) & y != z -> genus(y, z) | genus(z, y)"),
    ("Ax7", "genus(x, x) -> false"),
    ("Ax8-genus-diff1", "genus(x, y) & diff1(x, y) -> false"),
    ("Ax8-genus-prop", "genus(x, y) & prop(x, y) -> false"),
    ("Ax8-genus-insep", "genus(x, y) & insep(x, y) -> false"),
    ("Ax8-diff1-prop", "diff1(x, y) & prop(x, y) -> false"),
    ("Ax8-diff1-insep", "diff1(x, y) & insep(x, y) -> false"),
    ("Ax8-prop-insep", "prop(x, y) & insep(x, y) -> false"),
    ("Ax-ousia", "cat(1, x) & ~cat(1, y) & dep(x, y) -> false"),
    ("Ax-ousia-cat", "cat(1, x) & cat(j, y) & j != 1 & dep(x, y) -> false"),
    ("Ax-diff2-multi", "diff2(x, y) -> exists z [z != y & diff2(x, z)]"),
    ("Ax-igenus-multi", "igenus(x, y) -> exists z [z != x & igenus(z, y)]"),
];

/// Rule ids of the derived notions computed outside the rule language.
pub const DEF_IGENUS: &str = "DEF-igenus";
pub const DEF_INDIVIDUAL: &str = "DEF-individual";
pub const DEF_INFIMA: &str = "DEF-infima";

fn parse_all(table: &[(&str, &str)]) -> Vec<Rule> {
    table
        .iter()
        .map(|(id, text)| Rule::parse(id, "axiom", text).unwrap_or_else(|e| panic!("axiom {id} does not parse: {e}")))
        .collect()
}

/// Generative axiom rules: transitivity, the predicables imply necessity,
/// universal predicates, and the reflexive genus order.
pub fn closure_rules() -> Vec<Rule> {
    parse_all(CLOSURE)
}

pub fn constraint_rules() -> Vec<Rule> {
    parse_all(CONSTRAINTS).into_iter().map(Rule::constraint).collect()
}

/// Interns the universal predicates and materializes the grammatical facts
/// the lexicon determines: occurrence (reflexive) and sum constituents.
pub fn prepare(kb: &KnowledgeBase) -> Result<KnowledgeBase> {
    let mut kb = kb.clone();
    for name in [BEING, ONE] {
        if kb.resolve(name).is_none() {
            kb.noun(name)?;
        }
    }
    let ids: Vec<ExprId> = kb.domain();
    let mut lexical = Vec::new();
    for &x in &ids {
        for &y in &ids {
            if kb.lexicon.occurs_in(x, y) {
                lexical.push(GroundLit::pos(Pred::GInc, vec![x.into(), y.into()])?);
            }
        }
        let e = kb.lexicon.get(x)?;
        if let (Kind::Sum, Some((lo, hi))) = (e.kind, e.constituents) {
            lexical.push(GroundLit::pos(Pred::GAnd, vec![lo.into(), hi.into(), x.into()])?);
            lexical.push(GroundLit::pos(Pred::GAnd, vec![hi.into(), lo.into(), x.into()])?);
        }
    }
    for lit in lexical {
        kb.facts.insert(lit, Provenance::Asserted);
    }
    Ok(kb)
}

/// Saturates under the generative axioms only.
pub fn close_axioms(kb: &KnowledgeBase) -> Result<KnowledgeBase> {
    let kb = prepare(kb)?;
    let rules = closure_rules();
    let sat = engine::fixpoint(&kb, &rules, SaturationOptions::default().max_iterations)?;
    Ok(sat.kb)
}

/// Positive tuples of a binary relation in value order.
fn positive_pairs(store: &crate::kb::FactStore, pred: Pred) -> Vec<(Value, Value)> {
    let mut pairs: Vec<(Value, Value)> = store
        .relation(pred, Polarity::Pos)
        .map(|r| r.matching(&[None, None]).map(|t| (t[0], t[1])).collect())
        .unwrap_or_default();
    pairs.sort();
    pairs
}

/// Immediate species: `x ⊲ z` iff `x ≺ z` with nothing strictly between.
pub(crate) fn igenus_candidates(store: &crate::kb::FactStore) -> Vec<(GroundLit, Justification)> {
    let genus = positive_pairs(store, Pred::Genus);
    let above: BTreeSet<(Value, Value)> = genus.iter().copied().collect();
    let mut out = Vec::new();
    for &(x, z) in &genus {
        let between = genus.iter().any(|&(a, y)| a == x && y != z && above.contains(&(y, z)));
        if !between {
            let lit = GroundLit {
                pred: Pred::IGenus,
                args: vec![x, z],
                pol: Polarity::Pos,
            };
            out.push((
                lit,
                Justification {
                    rule: DEF_IGENUS.into(),
                    bindings: vec![("x".into(), x), ("z".into(), z)],
                    premises: vec![GroundLit {
                        pred: Pred::Genus,
                        args: vec![x, z],
                        pol: Polarity::Pos,
                    }],
                },
            ));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Individuals have nothing beneath them; lowest species have no
/// differences under them and only individuals beneath them. Compound
/// expressions are neither.
pub(crate) fn classification_candidates(
    kb: &KnowledgeBase,
    store: &crate::kb::FactStore,
) -> Vec<(GroundLit, Justification)> {
    let genus = positive_pairs(store, Pred::Genus);
    let diff2 = positive_pairs(store, Pred::Diff2);
    let simple: Vec<ExprId> = kb
        .lexicon
        .enumerate()
        .iter()
        .filter(|e| !e.kind.is_compound())
        .map(|e| e.id)
        .collect();
    let below = |x: Value| -> Vec<Value> { genus.iter().filter(|&&(_, y)| y == x).map(|&(a, _)| a).collect() };
    let individuals: BTreeSet<Value> = simple
        .iter()
        .map(|&e| Value::Expr(e))
        .filter(|&x| below(x).is_empty())
        .collect();
    let mut out = Vec::new();
    for &x in &individuals {
        out.push((
            GroundLit {
                pred: Pred::Individual,
                args: vec![x],
                pol: Polarity::Pos,
            },
            Justification {
                rule: DEF_INDIVIDUAL.into(),
                bindings: vec![("x".into(), x)],
                premises: Vec::new(),
            },
        ));
    }
    for &e in &simple {
        let x = Value::Expr(e);
        let under = below(x);
        if under.is_empty() || diff2.iter().any(|&(g, _)| g == x) {
            continue;
        }
        if under.iter().all(|a| individuals.contains(a)) {
            let premises = under
                .iter()
                .map(|&a| GroundLit {
                    pred: Pred::Genus,
                    args: vec![a, x],
                    pol: Polarity::Pos,
                })
                .collect();
            out.push((
                GroundLit {
                    pred: Pred::Infima,
                    args: vec![x],
                    pol: Polarity::Pos,
                },
                Justification {
                    rule: DEF_INFIMA.into(),
                    bindings: vec![("x".into(), x)],
                    premises,
                },
            ));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn add_candidates(kb: &mut KnowledgeBase, cands: Vec<(GroundLit, Justification)>) {
    for (lit, j) in cands {
        kb.facts.insert(lit, Provenance::Derived(Box::new(j)));
    }
}

/// Adds `igenus` facts; axioms are closed first.
pub fn immediate_species(kb: &KnowledgeBase) -> Result<KnowledgeBase> {
    let mut kb = close_axioms(kb)?;
    let cands = igenus_candidates(&kb.facts);
    add_candidates(&mut kb, cands);
    Ok(kb)
}

/// Adds `individual` and `infima` facts; axioms are closed first.
pub fn classify_individuals_and_infimae(kb: &KnowledgeBase) -> Result<KnowledgeBase> {
    let mut kb = close_axioms(kb)?;
    let cands = classification_candidates(&kb, &kb.facts);
    add_candidates(&mut kb, cands);
    Ok(kb)
}

/// Closes the coordinate relation and propagates differences along it.
/// Differences left without a coordinate are reported.
pub fn derive_coordinates(kb: &KnowledgeBase, catalog: &Catalog) -> Result<(KnowledgeBase, Vec<Violation>)> {
    let base = close_axioms(kb)?;
    let mut rules = closure_rules();
    for id in [
        "VI6-1",
        "VI6-1-genus",
        "VI6-coord-sym",
        "VI6-coord-trans",
        "VI6-coord-prop",
    ] {
        rules.extend(catalog.get(id).cloned());
    }
    let sat = engine::fixpoint(&base, &rules, SaturationOptions::default().max_iterations)?;
    let checks: Vec<Rule> = ["VI6-coord", "VI6-coord-irr"]
        .iter()
        .filter_map(|id| catalog.get(id).cloned())
        .collect();
    let violations = engine::check_rules(&sat.kb, &checks);
    Ok((sat.kb, violations))
}

/// Every declared term must belong to a category.
pub fn check_terms_categorized(kb: &KnowledgeBase) -> Vec<Violation> {
    let mut out = Vec::new();
    let being = kb.resolve(BEING);
    for &t in &kb.terms {
        let has_cat = kb
            .facts
            .relation(Pred::Cat, Polarity::Pos)
            .is_some_and(|r| r.matching(&[None, Some(t.into())]).next().is_some());
        if !has_cat {
            let facts = being
                .and_then(|b| {
                    let l = GroundLit::pos(Pred::Nec, vec![t.into(), b.into()]).ok()?;
                    kb.contains(&l).then_some(l)
                })
                .into_iter()
                .collect();
            out.push(Violation {
                constraint: "Ax3".into(),
                facts,
                message: format!("term {} belongs to no category", kb.render_value(t.into())),
            });
        }
    }
    out
}

/// Closes axioms and derived notions, then checks every axiom constraint.
pub fn check_axiom_constraints(kb: &KnowledgeBase) -> Result<Vec<Violation>> {
    let mut kb = close_axioms(kb)?;
    let cands = igenus_candidates(&kb.facts);
    add_candidates(&mut kb, cands);
    let cands = classification_candidates(&kb, &kb.facts);
    add_candidates(&mut kb, cands);
    let mut out = engine::check_rules(&kb, &constraint_rules());
    out.extend(engine::polarity_conflicts(&kb));
    out.extend(check_terms_categorized(&kb));
    Ok(out)
}

/// Extension of `x`: every expression necessarily predicated by `x`.
pub fn extension_of(kb: &KnowledgeBase, x: ExprId) -> BTreeSet<ExprId> {
    kb.extension_of(x)
}

pub fn subset_e(kb: &KnowledgeBase, x: ExprId, y: ExprId) -> bool {
    kb.extension_of(x).is_subset(&kb.extension_of(y))
}

pub fn proper_subset_e(kb: &KnowledgeBase, x: ExprId, y: ExprId) -> bool {
    let (ex, ey) = (kb.extension_of(x), kb.extension_of(y));
    ex.is_subset(&ey) && ex != ey
}

pub fn equal_e(kb: &KnowledgeBase, x: ExprId, y: ExprId) -> bool {
    kb.extension_of(x) == kb.extension_of(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kb_with(facts: &[(Pred, &[&str])]) -> KnowledgeBase {
        let mut kb = KnowledgeBase::new();
        for (p, args) in facts {
            kb.assert_named(*p, args, Polarity::Pos).unwrap();
        }
        kb
    }

    fn holds(kb: &KnowledgeBase, p: Pred, args: &[&str]) -> bool {
        let vals = args.iter().map(|a| Value::Expr(kb.expr(a).unwrap())).collect();
        kb.contains(&GroundLit::pos(p, vals).unwrap())
    }

    #[test]
    fn transitivity_and_necessity() {
        let kb = kb_with(&[(Pred::Genus, &["Socrates", "man"]), (Pred::Genus, &["man", "animal"])]);
        let kb = close_axioms(&kb).unwrap();
        assert!(holds(&kb, Pred::Genus, &["Socrates", "animal"]));
        assert!(holds(&kb, Pred::Nec, &["Socrates", "animal"]));
        assert!(holds(&kb, Pred::Nec, &["man", "being"]));
        assert!(holds(&kb, Pred::Nec, &["being", "one"]));
        assert!(holds(&kb, Pred::GenusEq, &["man", "man"]));
    }

    #[test]
    fn species_and_classification() {
        let kb = kb_with(&[
            (Pred::Genus, &["Socrates", "man"]),
            (Pred::Genus, &["man", "animal"]),
            (Pred::Genus, &["horse", "animal"]),
        ]);
        let kb = immediate_species(&kb).unwrap();
        assert!(holds(&kb, Pred::IGenus, &["man", "animal"]));
        assert!(holds(&kb, Pred::IGenus, &["Socrates", "man"]));
        assert!(!holds(&kb, Pred::IGenus, &["Socrates", "animal"]));
        let kb = classify_individuals_and_infimae(&kb).unwrap();
        assert!(holds(&kb, Pred::Individual, &["Socrates"]));
        assert!(holds(&kb, Pred::Individual, &["horse"]));
        assert!(holds(&kb, Pred::Infima, &["man"]));
        assert!(!holds(&kb, Pred::Infima, &["animal"]));
    }

    #[test]
    fn lexical_facts() {
        let mut kb = KnowledgeBase::new();
        let a = kb.noun("justice").unwrap();
        let b = kb.noun("courage").unwrap();
        let s = kb.lexicon.sum(a, b).unwrap();
        let kb = prepare(&kb).unwrap();
        for (x, y) in [(a, b), (b, a)] {
            let l = GroundLit::pos(Pred::GAnd, vec![x.into(), y.into(), s.into()]).unwrap();
            assert!(kb.contains(&l));
        }
        assert!(holds(&kb, Pred::GInc, &["justice", "justice"]));
    }

    #[test]
    fn axiom_violations() {
        let kb = kb_with(&[(Pred::Genus, &["man", "man"])]);
        let v = check_axiom_constraints(&kb).unwrap();
        assert!(v.iter().any(|v| v.constraint == "Ax7"));

        let mut kb = kb_with(&[(Pred::Genus, &["man", "animal"]), (Pred::Prop, &["man", "animal"])]);
        let v = check_axiom_constraints(&kb).unwrap();
        assert!(v.iter().any(|v| v.constraint == "Ax8-genus-prop"));

        kb.assert_named(Pred::Nec, &["man", "animal"], Polarity::Neg).unwrap();
        let v = check_axiom_constraints(&kb).unwrap();
        assert!(v.iter().any(|v| v.constraint == "Ax4"));
    }

    #[test]
    fn terms_need_categories() {
        let mut kb = KnowledgeBase::new();
        let m = kb.noun("man").unwrap();
        kb.terms.insert(m);
        let v = check_axiom_constraints(&kb).unwrap();
        assert!(v.iter().any(|v| v.constraint == "Ax3"));
        let c = crate::signature::Category::new(1).unwrap();
        kb.assert_fact(GroundLit::pos(Pred::Cat, vec![c.into(), m.into()]).unwrap())
            .unwrap();
        let v = check_axiom_constraints(&kb).unwrap();
        assert!(!v.iter().any(|v| v.constraint == "Ax3"));
    }

    #[test]
    fn extension_relations() {
        let kb = kb_with(&[(Pred::Genus, &["man", "animal"]), (Pred::Genus, &["horse", "animal"])]);
        let kb = close_axioms(&kb).unwrap();
        let man = kb.expr("man").unwrap();
        let animal = kb.expr("animal").unwrap();
        assert!(subset_e(&kb, man, animal));
        assert!(!equal_e(&kb, man, animal));
        assert!(!proper_subset_e(&kb, animal, man));
    }
}
