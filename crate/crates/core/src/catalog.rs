//! The built-in catalog of topic rules for Books III to VI.
//!
//! Each displayed formula becomes one or more [`Rule`] values. Formulas with
//! disjunctive bodies are split into one Horn rule per disjunct, and
//! biconditionals into one rule per direction; split rules share the
//! formula's id as a prefix.

use std::collections::BTreeSet;

use crate::kb::{KnowledgeBase, Pattern};
use crate::lexicon::ExprId;
use crate::rule::{BodyItem, Head, Literal, Mode, Rule, Term};
use crate::signature::{GroundLit, Polarity, Pred, Value};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flag {
    /// Mode follows the head shape.
    Auto,
    /// Single-literal head checked rather than derived.
    Check,
    /// Reading of a corrupt formula; off by default.
    Dubious,
    DubiousCheck,
}

use Flag::*;

const CATALOG: &[(&str, &str, &str, Flag)] = &[
    // III,1
    (
        "III1-1",
        "III,1",
        r#"genus(x, "good") & G_rest(y, x, z) -> more_eligible(x, z)"#,
        Auto,
    ),
    // IV,1
    ("IV1-1", "IV,1 (1)", "~genus(x, z) & genus(x, y) -> ~genus(y, z)", Auto),
    ("IV1-2", "IV,1 (2)", "cont(x, y) -> ~genus(x, y)", Auto),
    ("IV1-2-insep", "IV,1 (2)", "insep(x, y) -> ~genus(x, y)", Auto),
    ("IV1-3", "IV,1 (3)", "genus(x, y) & cat(i, x) -> cat(i, y)", Auto),
    ("IV1-3-down", "IV,1 (3)", "genus(x, y) & cat(i, y) -> cat(i, x)", Auto),
    ("IV1-4", "IV,1 (4)", "genus(x, y) -> ~nec(y, x)", Auto),
    ("IV1-5", "IV,1 (5)", "genus(x, y) & nec(z, x) -> nec(z, y)", Auto),
    (
        "IV1-6",
        "IV,1 (6)",
        "genus(x, z) & genus(v, x) -> exists y [igenus(y, z) & genus_eq(x, y)]",
        Auto,
    ),
    ("IV1-7", "IV,1 (7)", "genus(x, y) -> ext_psub(x, y)", Auto),
    (
        "IV1-8",
        "IV,1 (8)",
        "genus(x, z) & genus(x, y) & infima(y) & genus(w, y) -> genus(w, z)",
        Auto,
    ),
    // IV,2
    (
        "IV2-9",
        "IV,2 (9)",
        "genus(x, z) & ~genus(z, y) & ~genus(y, z) & z != y -> ~genus(x, y)",
        Auto,
    ),
    (
        "IV2-10",
        "IV,2 (10)",
        "genus(y, z) & ~genus(x, z) -> ~genus(x, y)",
        Auto,
    ),
    ("IV2-11", "IV,2 (11)", "genus(x, y) -> ~genus(y, x)", Auto),
    (
        "IV2-12",
        "IV,2 (12)",
        "genus(x, z) & igenus(y, z) & all w [w != y & igenus(w, z) => ~genus_eq(x, w)] -> genus_eq(x, y)",
        Check,
    ),
    (
        "IV2-13",
        "IV,2 (13)",
        "~genus(x, z) & genus(y, z) -> ~genus(x, y)",
        Auto,
    ),
    (
        "IV2-13-ext",
        "IV,2 (13)",
        "nec(w, x) & ~nec(x, z) & dom(y) -> ~genus(x, y)",
        Dubious,
    ),
    ("IV2-14", "IV,2 (14)", "defn(y, v) & genus(x, y) -> nec(x, v)", Auto),
    (
        "IV2-14-ext",
        "IV,2 (14)",
        "defn(y, v) & genus(x, y) & nec(w, x) -> nec(w, v)",
        Auto,
    ),
    ("IV2-15", "IV,2 (15)", "diff1(x, y) -> ~genus(x, y)", Auto),
    ("IV2-15-rev", "IV,2 (15)", "diff1(x, y) -> ~genus(y, x)", Auto),
    ("IV2-16", "IV,2 (16)", "genus(x, y) -> ext_psub(x, y)", Auto),
    ("IV2-17", "IV,2 (17)", "diff1(x, y) -> ext_sub(x, y)", Auto),
    ("IV2-18", "IV,2 (18)", "diff1(x, y) & genus(x, z) -> ~nec(z, y)", Auto),
    (
        "IV2-19",
        "IV,2 (19)",
        "dom(x) & dom(y) & all z [diff2(x, z) => ~nec(y, z)] -> ~genus(y, x)",
        Dubious,
    ),
    ("IV2-20", "IV,2 (20)", "diff2(x, z) -> ext_psub(z, x)", Auto),
    ("IV2-21", "IV,2 (21)", "genus(x, y) -> dep(x, y)", Auto),
    ("IV2-21-cont", "IV,2 (21)", "genus(x, y) -> ~cont(x, y)", Auto),
    // IV,3
    (
        "IV3-22",
        "IV,3 (22)",
        "nec(x, y) & contrary(y, y') -> ~genus(x, y')",
        Auto,
    ),
    (
        "IV3-23",
        "IV,3 (23)",
        "genus(w, y) & nec(w, z) & all x [genus(x, y) & x != w => ~nec(x, z)] -> false",
        DubiousCheck,
    ),
    (
        "IV3-24",
        "IV,3 (24)",
        "genus(x, y) -> exists z [z != x & genus(z, y)]",
        Auto,
    ),
    ("IV3-25", "IV,3 (25)", "genus(x, y) -> ~metaphor(x, y)", Auto),
    (
        "IV3-26",
        "IV,3 (26)",
        "genus(y, x) & contrary(y, y') & all x' [=> ~contrary(x, x')] -> genus(y', x)",
        Auto,
    ),
    (
        "IV3-27",
        "IV,3 (27)",
        "genus(x, y) & contrary(x, x') & contrary(y, y') -> genus(x', y')",
        Auto,
    ),
    (
        "IV3-28",
        "IV,3 (28)",
        "contrary(x, x') & dom(y') & all y [=> ~genus(x, y)] -> ~genus(x', y')",
        Auto,
    ),
    (
        "IV3-29",
        "IV,3 (29)",
        "genus(x, y) & has_medium(x) -> has_medium(y)",
        Auto,
    ),
    (
        "IV3-29-rev",
        "IV,3 (29)",
        "genus(x, y) & has_medium(y) -> has_medium(x)",
        Auto,
    ),
    (
        "IV3-30",
        "IV,3 (30)",
        "genus(x, y) & genus(x', y) & medium(x, z, x') -> genus(z, y)",
        Auto,
    ),
    (
        "IV3-31",
        "IV,3 (31)",
        "genus(x, y) & G_adv(x, x') & G_adv(y, y') -> nec(x', y')",
        Auto,
    ),
    (
        "IV3-31p",
        "IV,3 (31')",
        "genus(x, y) & G_adj(x, x') & G_adj(y, y') -> nec(x', y')",
        Auto,
    ),
    // IV,4
    (
        "IV4-32",
        "IV,4 (32)",
        "analogy(x, y, x', y') & genus(y, y') -> genus(x, x')",
        Auto,
    ),
    (
        "IV4-33",
        "IV,4 (33)",
        "genus(x, y) & G_adv(x, x') & G_adv(y, y') -> genus(x', y')",
        Auto,
    ),
    // IV,5
    (
        "IV5-1",
        "IV,5 hexis/energeia",
        r#"-> ~genus("heksin", "energeia")"#,
        Auto,
    ),
    (
        "IV5-1-rev",
        "IV,5 hexis/energeia",
        r#"-> ~genus("energeia", "heksin")"#,
        Auto,
    ),
    (
        "IV5-2",
        "IV,5 dunamis/energeia",
        r#"-> ~genus("dunamis", "energeia")"#,
        Auto,
    ),
    (
        "IV5-2-rev",
        "IV,5 dunamis/energeia",
        r#"-> ~genus("energeia", "dunamis")"#,
        Auto,
    ),
    (
        "IV5-3",
        "IV,5 inherence",
        "S_loc(x, y) & genus(y, z) -> S_loc(x, z)",
        Auto,
    ),
    (
        "IV5-4",
        "IV,5 relative",
        "genus(x, y) & nec(x, z) & dom(w) -> ~G_rel2(y, w, z)",
        Auto,
    ),
    ("IV5-5", "IV,5 part", "part_of(x, y) -> ~genus(y, x)", Auto),
    ("IV5-6", "IV,5 difference", "genus(x, y) -> ~diff1(x, y)", Auto),
    ("IV5-6-rev", "IV,5 difference", "diff1(x, y) -> ~genus(x, y)", Auto),
    ("IV5-7", "IV,5 aspect", "S_mod(x, y, z) -> ~genus(x, z)", Auto),
    // IV,6
    ("IV6-1", "IV,6 infima", "infima(y) & genus(v, x) -> ~genus(x, y)", Auto),
    (
        "IV6-2",
        "IV,6 universal",
        "dom(y) & dom(z) & all x [=> nec(x, y)] -> ~genus(z, y)",
        Auto,
    ),
    (
        "IV6-2-defn",
        "IV,6 universal",
        "dom(y) & dom(z) & all x [=> nec(x, y)] -> ~defn(z, y)",
        Auto,
    ),
    ("IV6-3", "IV,6 inherent", "inheres(x, y) -> ~genus(y, x)", Auto),
    (
        "IV6-4",
        "IV,6 superior",
        "S_sup(x, x') & S_sup(y, y') & contrary(x, x') & contrary(y, y') & genus(x, y) -> genus(x', y')",
        Auto,
    ),
    (
        "IV6-4-rev",
        "IV,6 superior",
        "S_sup(x, x') & S_sup(y, y') & contrary(x, x') & contrary(y, y') & genus(x', y') -> genus(x, y)",
        Auto,
    ),
    ("IV6-5", "IV,6 degree", "genus(x, y) & degree(x) -> degree(y)", Auto),
    ("IV6-5-rev", "IV,6 degree", "genus(x, y) & degree(y) -> degree(x)", Auto),
    (
        "IV6-6",
        "IV,6 inherent",
        "genus(x, y) & inheres(x, z) -> inheres(y, z)",
        Auto,
    ),
    // V,2
    (
        "V2-1",
        "V,2 better known",
        "prop(x, y) & G_inc(w, y) -> better_known(w, x)",
        Auto,
    ),
    ("V2-pol", "V,2 polysemy", "prop(x, y) -> ~G_pol(y)", Auto),
    (
        "V2-pol-inc",
        "V,2 polysemy",
        "prop(x, y) & G_inc(z, y) -> ~G_pol(z)",
        Auto,
    ),
    ("V2-pol-subj", "V,2 polysemy", "prop(x, y) -> ~G_pol(x)", Auto),
    (
        "V2-4",
        "V,2 single occurrence",
        "prop(x, y) & G_inc(z, y) & G_inc(w, y) & z != y & w != y -> z = w",
        Auto,
    ),
    (
        "V2-5",
        "V,2 restriction",
        "prop(x, y) & G_rest(w, v, y) -> exists u [~nec(u, v)]",
        Auto,
    ),
    (
        "V2-6",
        "V,2 conjunction",
        "prop(x, y) & G_and(u, v, y) -> ~prop(x, u)",
        Auto,
    ),
    (
        "V2-6-right",
        "V,2 conjunction",
        "prop(x, y) & G_and(u, v, y) -> ~prop(x, v)",
        Auto,
    ),
    // V,3
    ("V3-1", "V,3 occurrence", "G_inc(x, y) -> ~prop(x, y)", Auto),
    ("V3-2", "V,3 species", "G_inc(w, y) & genus(w, x) -> ~prop(w, y)", Auto),
    (
        "V3-3",
        "V,3 contrary",
        "G_inc(w, y) & contrary(w, x) -> ~prop(x, y)",
        Auto,
    ),
    (
        "V3-3-dep",
        "V,3 dependence",
        "G_inc(w, y) & dep(w, x) -> ~prop(x, y)",
        Auto,
    ),
    ("V3-4", "V,3 accident", "cont(x, y) -> ~prop(x, y)", Auto),
    (
        "V3-5",
        "V,3 sensible",
        "G_inc(w, y) & S_sens(w) & dom(x) -> ~prop(x, y)",
        Auto,
    ),
    ("V3-6", "V,3 definition", "defn(x, y) -> ~prop(x, y)", Auto),
    // V,5
    ("V5-1", "V,5 essence", "S_ess(x, y) -> ~prop(x, y)", Auto),
    ("V5-2", "V,5 synonym", "S_syn(x, y) -> ~prop(x, y)", Auto),
    (
        "V5-3",
        "V,5 homoeomerous",
        "S_hom(x) & part_of(y, x) & prop(x, z) -> prop(y, z)",
        Auto,
    ),
    (
        "V5-3-rev",
        "V,5 homoeomerous",
        "S_hom(x) & part_of(y, x) & prop(y, z) -> prop(x, z)",
        Auto,
    ),
    // V,6 - V,8
    (
        "V6-1",
        "V,6 contraries",
        "contrary(x, x') & contrary(y, y') & prop(x, y) -> prop(x', y')",
        Auto,
    ),
    (
        "V7-1",
        "V,7 inflexions",
        "G_adv(x, x') & G_adv(y, y') & prop(x, y) -> prop(x', y')",
        Auto,
    ),
    (
        "V8-1",
        "V,8 more and less",
        "S_more(a, x, x') & S_more(b, y, y') & ~prop(x', y') -> ~prop(x, y)",
        Auto,
    ),
    // VI,1
    ("VI1-1", "VI,1 extension", "nec(w, y) & ~nec(w, x) -> ~defn(x, y)", Auto),
    (
        "VI1-2",
        "VI,1 genus",
        "G_rest(a, b, z) & dom(w) & all x y [G_rest(x, y, z) => ~genus(w, x)] -> ~defn(w, z)",
        Auto,
    ),
    (
        "VI1-3",
        "VI,1 extensional equality",
        "dom(x) & dom(y) & ext_ne(x, y) -> ~defn(x, y)",
        Auto,
    ),
    ("VI1-4", "VI,1 essence", "~S_ess(x, y) -> ~defn(x, y)", Auto),
    // VI,3
    (
        "VI3-1",
        "VI,3 universal",
        "G_inc(w, x) & dom(y) & all v [=> nec(w, v)] -> ~defn(y, x)",
        Auto,
    ),
    (
        "VI3-2",
        "VI,3 species",
        "genus(v, x) & G_inc(v, y) -> ~defn(x, y)",
        Auto,
    ),
    (
        "VI3-3",
        "VI,3 redundancy",
        "G_inc(v, w) & v != w & defn(x, v) -> ~defn(x, w)",
        Auto,
    ),
    (
        "VI3-4",
        "VI,3 single occurrence",
        "defn(x, y) & G_inc(z, y) & G_inc(w, y) & z != y & w != y -> z = w",
        Auto,
    ),
    // VI,4
    (
        "VI4-1",
        "VI,4 better known",
        "defn(x, y) & G_inc(w, y) -> better_known(w, x)",
        Auto,
    ),
    ("VI4-2", "VI,4 circularity", "defn(x, y) & G_inc(z, y) -> x != z", Auto),
    // VI,5
    (
        "VI5-1",
        "VI,5 genus",
        "defn(x, y) -> exists w v [G_rest(w, v, y) & genus(x, w)]",
        Auto,
    ),
    (
        "VI5-2",
        "VI,5 proximate genus",
        "defn(x, y) & G_rest(w, v, y) & genus(x, w) -> igenus(x, w)",
        Auto,
    ),
    // VI,6
    ("VI6-1", "VI,6 difference", "diff1(x, d) -> has_diff(d)", Auto),
    ("VI6-1-genus", "VI,6 difference", "diff2(g, d) -> has_diff(d)", Auto),
    (
        "VI6-equiv",
        "VI,6 difference",
        "diff1(x, d) -> exists g [diff2(g, d)]",
        Auto,
    ),
    (
        "VI6-equiv-rev",
        "VI,6 difference",
        "diff2(g, d) -> exists x [diff1(x, d)]",
        Auto,
    ),
    (
        "VI6-coord",
        "VI,6 coordinates",
        "has_diff(x) -> exists y [coord(x, y)]",
        Auto,
    ),
    ("VI6-coord-sym", "VI,6 coordinates", "coord(x, y) -> coord(y, x)", Auto),
    (
        "VI6-coord-trans",
        "VI,6 coordinates",
        "coord(x, y) & coord(y, z) & x != z -> coord(x, z)",
        Auto,
    ),
    ("VI6-coord-irr", "VI,6 coordinates", "coord(x, x) -> false", Auto),
    (
        "VI6-coord-prop",
        "VI,6 coordinates",
        "diff2(y, z) & coord(z, x) -> diff2(y, x)",
        Auto,
    ),
    (
        "VI6-destr-cont",
        "VI,6 definition",
        "G_rest(x, y, z) & diff2(x, y) & cont(v, y) -> ~defn(v, z)",
        Auto,
    ),
    (
        "VI6-destr-nec",
        "VI,6 definition",
        "G_rest(x, y, z) & diff2(x, y) & nec(x, y) & dom(v) -> ~defn(v, z)",
        Auto,
    ),
    (
        "VI6-destr-nec-v",
        "VI,6 definition",
        "G_rest(x, y, z) & diff2(x, y) & nec(x, v) -> ~defn(v, z)",
        Auto,
    ),
    ("VI6-ext", "VI,6 extension", "diff2(x, y) -> ext_psub(y, x)", Auto),
    (
        "VI6-negation",
        "VI,6 negation",
        "diff2(g, d) & diff2(g, d') & contrary(d, d') & negates(d, d') & diff2(g, d'') & d'' != d & d'' != d' -> false",
        Auto,
    ),
    (
        "VI6-shared",
        "VI,6 shared difference",
        "diff2(x, y) & diff2(z, y) & x != z -> genus(x, z) | genus(z, x)",
        Auto,
    ),
    (
        "VI6-sub",
        "VI,6 subordination",
        "diff2(x, y) & diff1(z, y) -> genus(z, x)",
        Auto,
    ),
    ("VI6-degree", "VI,6 degree", "diff2(x, y) -> ~degree(y)", Auto),
    ("VI6-rel", "VI,6 relative", "diff1(x, y) & S_rel(x) -> S_rel(y)", Auto),
    // VI,7
    ("VI7-1", "VI,7 degree", "defn(x, y) & degree(x) -> degree(y)", Auto),
    ("VI7-1-rev", "VI,7 degree", "defn(x, y) & degree(y) -> degree(x)", Auto),
    // VI,12
    ("VI12-1", "VI,12 saturation", r#"G_rel2(x, "being", z) -> false"#, Auto),
    // VI,13
    (
        "VI13-pair",
        "VI,13 pair",
        "pair(p, a, b) & nec(a, y) -> nec(p, y)",
        Auto,
    ),
    (
        "VI13-pair-neg",
        "VI,13 pair",
        "pair(p, a, b) & ~nec(a, y) & ~nec(b, y) -> ~nec(p, y)",
        Auto,
    ),
    (
        "VI13-sum",
        "VI,13 sum",
        "G_and(y, z, s) & nec(x, y) & nec(x, z) -> nec(x, s)",
        Auto,
    ),
    (
        "VI13-sum-split",
        "VI,13 sum",
        "G_and(y, z, s) & nec(x, s) -> nec(x, y)",
        Auto,
    ),
    (
        "VI13-contrary-sum",
        "VI,13 contrary of sum",
        "G_and(a, b, s) & contrary(a, a') & contrary(b, b') & G_and(a', b', s') -> contrary(s, s')",
        Auto,
    ),
];

/// The immutable rule catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub rules: Vec<Rule>,
}

impl Catalog {
    pub fn builtin() -> Catalog {
        builtin_catalog()
    }

    pub fn get(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.rules.iter().map(|r| r.id.as_str())
    }

    pub fn manifest(&self) -> CatalogManifest {
        let mut sections: Vec<(String, usize)> = Vec::new();
        for r in &self.rules {
            let sec = section_of(&r.id).to_string();
            match sections.last_mut() {
                Some((s, n)) if *s == sec => *n += 1,
                _ => sections.push((sec, 1)),
            }
        }
        CatalogManifest {
            total: self.rules.len(),
            sections,
        }
    }

    /// One line per rule: `id<TAB>source<TAB>mode<TAB>rendering`.
    pub fn listing(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            let mode = if r.dubious {
                format!("{},dubious", r.mode.keyword())
            } else {
                r.mode.keyword().to_string()
            };
            out.push_str(&format!("{}\t{}\t{}\t{}\n", r.id, r.source, mode, r));
        }
        out
    }
}

/// `IV2-13-ext` -> `IV2`
pub fn section_of(id: &str) -> &str {
    id.split('-').next().unwrap_or(id)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogManifest {
    pub total: usize,
    pub sections: Vec<(String, usize)>,
}

pub fn builtin_catalog() -> Catalog {
    let rules = CATALOG
        .iter()
        .map(|&(id, source, text, flag)| {
            let rule =
                Rule::parse(id, source, text).unwrap_or_else(|e| panic!("catalog rule {id} does not parse: {e}"));
            match flag {
                Auto => rule,
                Check => rule.constraint(),
                Dubious => rule.dubious(),
                DubiousCheck => rule.constraint().dubious(),
            }
        })
        .collect();
    Catalog { rules }
}

/// Mechanical contrapositives of a generative rule `B1 & ... & Bn -> H`:
/// for each body literal `Bi`, `~H & (Bj, j != i) -> ~Bi`. Inequations and
/// domain ranges stay in every body; variables occurring only in `Bi` are
/// ranged over the domain. A bodyless rule yields the constraint `~H -> false`.
/// Rules outside this shape have no automatic contrapositive.
pub fn contrapositives(rule: &Rule) -> Vec<Rule> {
    let Head::Lit(head) = &rule.head else {
        return Vec::new();
    };
    if !rule.is_generative() || !rule.has_pure_body() {
        return Vec::new();
    }
    let lit_positions: Vec<usize> = rule
        .body
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_literal())
        .map(|(i, _)| i)
        .collect();
    if lit_positions.is_empty() {
        return vec![Rule {
            id: format!("{}/c0", rule.id),
            source: rule.source.clone(),
            vars: rule.vars.clone(),
            body: vec![BodyItem::Lit(head.negated())],
            head: Head::False,
            mode: Mode::Constraint,
            dubious: rule.dubious,
        }];
    }
    let mut out = Vec::new();
    for (n, &i) in lit_positions.iter().enumerate() {
        let BodyItem::Lit(bi) = &rule.body[i] else {
            unreachable!()
        };
        let mut body = vec![BodyItem::Lit(head.negated())];
        body.extend(
            rule.body
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, b)| b.clone()),
        );
        let bound = crate::rule::binders(&body);
        let mut extra: Vec<usize> = bi.vars().filter(|v| !bound.contains(v)).collect();
        extra.sort();
        extra.dedup();
        for v in extra {
            body.push(BodyItem::Dom(v));
        }
        out.push(Rule {
            id: format!("{}/c{}", rule.id, n + 1),
            source: rule.source.clone(),
            vars: rule.vars.clone(),
            body,
            head: Head::Lit(bi.negated()),
            mode: Mode::Generative,
            dubious: rule.dubious,
        });
    }
    out
}

/// Witness of a successful definition check: the proximate genus and the
/// essential difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefinitionWitness {
    pub genus: ExprId,
    pub difference: ExprId,
}

/// `x D y` iff some `a`, `b` have `G_rest(a, b, y)`, `x ⊲ a`, `x Δ1 b` and
/// `a Δ2 b`. Expects immediate-species facts to be present.
pub fn check_definition(kb: &KnowledgeBase, x: ExprId, y: ExprId) -> Option<DefinitionWitness> {
    let pos = |pred: Pred, args: Vec<Value>| GroundLit::pos(pred, args).is_ok_and(|l| kb.contains(&l));
    let rests = kb.holds(&Pattern::new(
        Pred::GRest,
        vec![None, None, Some(y.into())],
        Polarity::Pos,
    ));
    rests.into_iter().find_map(|f| {
        let (a, b) = (f.lit.args[0], f.lit.args[1]);
        let ok =
            pos(Pred::IGenus, vec![x.into(), a]) && pos(Pred::Diff1, vec![x.into(), b]) && pos(Pred::Diff2, vec![a, b]);
        ok.then(|| DefinitionWitness {
            genus: a.expr().unwrap(),
            difference: b.expr().unwrap(),
        })
    })
}

/// Like [`check_definition`], and asserts `defn(x, y)` on success.
pub fn assert_definition(kb: &mut KnowledgeBase, x: ExprId, y: ExprId) -> Option<DefinitionWitness> {
    let w = check_definition(kb, x, y)?;
    let lit = GroundLit::pos(Pred::Defn, vec![x.into(), y.into()]).ok()?;
    kb.assert_fact(lit).ok()?;
    Some(w)
}

/// Ids of every formula the catalog must cover.
pub fn required_formula_ids() -> BTreeSet<String> {
    let mut ids: BTreeSet<String> = ["III1-1"].iter().map(|s| s.to_string()).collect();
    ids.extend((1..=8).map(|n| format!("IV1-{n}")));
    ids.extend((9..=21).map(|n| format!("IV2-{n}")));
    ids.extend((22..=31).map(|n| format!("IV3-{n}")));
    ids.insert("IV3-31p".into());
    ids.extend(["IV4-32", "IV4-33"].iter().map(|s| s.to_string()));
    ids
}

/// Terms of a literal that are variables, for tests.
pub fn literal_var_count(l: &Literal) -> usize {
    l.args.iter().filter(|t| matches!(t, Term::Var(_))).count()
}
