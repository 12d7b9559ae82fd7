//! Scripted debates: a thesis is attacked with rule instances grounded in
//! the answerer's concessions.

use serde::Serialize;

use crate::catalog::Catalog;
use crate::document::{ground_fact, Script};
use crate::engine::{self, hypothesize, why, Derivation, SaturationOptions, Step};
use crate::error::Result;
use crate::kb::KnowledgeBase;
use crate::signature::{GroundLit, Value};

/// Rule id reported when the thesis clashes with a concession outright.
pub const DIRECT: &str = "direct";

/// A destructive rule instance: applying `rule` under `bindings` derives
/// the negation of something the thesis and concessions commit to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attack {
    pub rule: String,
    pub bindings: Vec<(String, Value)>,
    /// The contradicted atom, positive.
    pub atom: GroundLit,
    pub derivation: Derivation,
}

impl Attack {
    fn describe(&self, kb: &KnowledgeBase) -> String {
        let b: Vec<String> = self
            .bindings
            .iter()
            .map(|(n, v)| format!("{n}={}", kb.render_value(*v)))
            .collect();
        let other = if self.derivation.fact == self.atom {
            self.atom.negated()
        } else {
            self.atom.clone()
        };
        format!(
            "attack {} [{}] derives {} against {}",
            self.rule,
            b.join(", "),
            kb.render_lit(&self.derivation.fact),
            kb.render_lit(&other)
        )
    }
}

/// Destructive options against `thesis`, in program order of their rules.
/// Each is the rule at the root of a derived side of a contradiction that
/// follows once the thesis is hypothesized, and each derivation is checked
/// step by step.
pub fn attacks(
    kb: &KnowledgeBase,
    catalog: &Catalog,
    opts: &SaturationOptions,
    thesis: &GroundLit,
) -> Result<Vec<Attack>> {
    let (sat, conflicts) = hypothesize(kb, catalog, opts, thesis)?;
    let program = engine::generative_program(&sat.kb, catalog, opts);
    let position = |id: &str| program.iter().position(|r| r.id == id).unwrap_or(usize::MAX);
    let mut out: Vec<(usize, Attack)> = Vec::new();
    for atom in conflicts {
        let sides: Vec<Derivation> = [atom.clone(), atom.negated()]
            .iter()
            .filter_map(|l| why(&sat.kb, l))
            .collect();
        let derived: Vec<&Derivation> = sides.iter().filter(|d| matches!(d.step, Step::Rule { .. })).collect();
        if derived.is_empty() {
            let d = sides
                .iter()
                .find(|d| d.step == Step::Hypothesis)
                .or(sides.first())
                .cloned();
            if let Some(d) = d {
                out.push((
                    0,
                    Attack {
                        rule: DIRECT.into(),
                        bindings: Vec::new(),
                        atom: atom.clone(),
                        derivation: d,
                    },
                ));
            }
            continue;
        }
        for d in derived {
            if !engine::validate(d, &sat.kb, &program) {
                continue;
            }
            let Step::Rule { rule, bindings, .. } = &d.step else {
                unreachable!()
            };
            out.push((
                position(rule),
                Attack {
                    rule: rule.clone(),
                    bindings: bindings.clone(),
                    atom: atom.clone(),
                    derivation: d.clone(),
                },
            ));
        }
    }
    out.sort_by(|(pa, a), (pb, b)| (pa, &a.rule, &a.bindings, &a.atom).cmp(&(pb, &b.rule, &b.bindings, &b.atom)));
    out.dedup_by(|(_, a), (_, b)| a.rule == b.rule && a.bindings == b.bindings);
    Ok(out.into_iter().map(|(_, a)| a).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ThesisRefuted,
    ThesisStands,
    BudgetExhausted,
}

impl Verdict {
    pub fn keyword(self) -> &'static str {
        match self {
            Verdict::ThesisRefuted => "thesis-refuted",
            Verdict::ThesisStands => "thesis-stands",
            Verdict::BudgetExhausted => "budget-exhausted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Thesis(GroundLit),
    Concede(GroundLit),
    NoAttack,
    Attack(Attack),
}

#[derive(Debug, Clone)]
pub struct Transcript {
    /// Moves with the turn they belong to; turn 0 precedes any concession.
    pub moves: Vec<(u64, Move)>,
    pub verdict: Verdict,
    /// The knowledge base after the last concession.
    pub kb: KnowledgeBase,
}

#[derive(Serialize)]
struct Record<'a> {
    turn: u64,
    #[serde(rename = "move")]
    kind: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    fact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rule: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bindings: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    against: Option<String>,
}

impl Transcript {
    pub fn render(&self) -> String {
        let kb = &self.kb;
        let mut out = String::new();
        for (turn, m) in &self.moves {
            match m {
                Move::Thesis(t) => out.push_str(&format!("thesis {}\n", kb.render_lit(t))),
                Move::Concede(f) => out.push_str(&format!("turn {turn}: concede {}\n", kb.render_lit(f))),
                Move::NoAttack => out.push_str(&format!("turn {turn}: no attack\n")),
                Move::Attack(a) => {
                    out.push_str(&format!("turn {turn}: {}\n", a.describe(kb)));
                    for line in a.derivation.render(kb).lines() {
                        out.push_str(&format!("  {line}\n"));
                    }
                }
            }
        }
        out.push_str(&format!("verdict {}\n", self.verdict.keyword()));
        out
    }

    /// One JSON object per move, then the verdict.
    pub fn records(&self) -> String {
        let kb = &self.kb;
        let mut out = String::new();
        let mut push = |r: Record<'_>| {
            out.push_str(&serde_json::to_string(&r).expect("record serializes"));
            out.push('\n');
        };
        for (turn, m) in &self.moves {
            let base = Record {
                turn: *turn,
                kind: "",
                fact: None,
                rule: None,
                bindings: None,
                against: None,
            };
            push(match m {
                Move::Thesis(t) => Record {
                    kind: "thesis",
                    fact: Some(kb.render_lit(t)),
                    ..base
                },
                Move::Concede(f) => Record {
                    kind: "concede",
                    fact: Some(kb.render_lit(f)),
                    ..base
                },
                Move::NoAttack => Record {
                    kind: "no-attack",
                    ..base
                },
                Move::Attack(a) => Record {
                    kind: "attack",
                    fact: Some(kb.render_lit(&a.derivation.fact)),
                    rule: Some(&a.rule),
                    bindings: Some(
                        a.bindings
                            .iter()
                            .map(|(n, v)| format!("{n}={}", kb.render_value(*v)))
                            .collect(),
                    ),
                    against: Some(kb.render_lit(&if a.derivation.fact == a.atom {
                        a.atom.negated()
                    } else {
                        a.atom.clone()
                    })),
                    ..base
                },
            });
        }
        let last = self.moves.last().map_or(0, |(t, _)| *t);
        out.push_str(&format!(
            "{{\"turn\":{last},\"move\":\"verdict\",\"verdict\":\"{}\"}}\n",
            self.verdict.keyword()
        ));
        out
    }
}

/// Plays the script: attacks are sought before any concession and again
/// after each; the first attack refutes the thesis. Each concession uses
/// one unit of budget.
pub fn run_debate(script: &Script, catalog: &Catalog, opts: &SaturationOptions) -> Result<Transcript> {
    let mut kb = script.document.build()?;
    let thesis = ground_fact(&mut kb, &script.thesis)?;
    let mut moves = vec![(0, Move::Thesis(thesis.clone()))];
    let finish = |moves, verdict, kb| Ok(Transcript { moves, verdict, kb });
    if script.budget == 0 {
        return finish(moves, Verdict::BudgetExhausted, kb);
    }
    let mut turn = 0u64;
    loop {
        let found = attacks(&kb, catalog, opts, &thesis)?;
        if let Some(a) = found.into_iter().next() {
            moves.push((turn, Move::Attack(a)));
            return finish(moves, Verdict::ThesisRefuted, kb);
        }
        moves.push((turn, Move::NoAttack));
        let Some(next) = script.concessions.get(turn as usize) else {
            return finish(moves, Verdict::ThesisStands, kb);
        };
        if turn == script.budget {
            return finish(moves, Verdict::BudgetExhausted, kb);
        }
        turn += 1;
        let lit = ground_fact(&mut kb, next)?;
        kb.assert_fact(lit.clone())?;
        moves.push((turn, Move::Concede(lit)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::Script;
    use crate::signature::{Polarity, Pred};

    const SOUL: &str = r#"
expr noun soul
expr noun number
expr noun life
rule number-not-life: genus(n, "number") -> ~nec(n, "life")
thesis genus soul number
concede nec soul life
"#;

    fn run(text: &str) -> Transcript {
        run_debate(
            &Script::parse(text).unwrap(),
            &Catalog::builtin(),
            &SaturationOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn soul_is_not_a_number() {
        let t = run(SOUL);
        assert_eq!(t.verdict, Verdict::ThesisRefuted);
        let Some((1, Move::Attack(a))) = t.moves.last() else {
            panic!("{}", t.render())
        };
        assert_eq!(a.rule, "number-not-life");
        assert_eq!(t.render(), run(SOUL).render());
        assert_eq!(t.records(), run(SOUL).records());
    }

    #[test]
    fn unprovable_thesis_stands() {
        let t = run("thesis genus a b\n");
        assert_eq!(t.verdict, Verdict::ThesisStands);
    }

    #[test]
    fn zero_budget() {
        let t = run("thesis genus a b\nbudget 0\n");
        assert_eq!(t.verdict, Verdict::BudgetExhausted);
    }

    #[test]
    fn budget_runs_out() {
        let t = run("thesis genus a b\nconcede nec c d\nconcede nec e f\nbudget 1\n");
        assert_eq!(t.verdict, Verdict::BudgetExhausted);
    }

    #[test]
    fn empty_kb_has_no_attacks() {
        let mut kb = KnowledgeBase::new();
        let a = kb.noun("a").unwrap();
        let b = kb.noun("b").unwrap();
        let thesis = GroundLit::pos(Pred::Genus, vec![a.into(), b.into()]).unwrap();
        let found = attacks(&kb, &Catalog::builtin(), &SaturationOptions::default(), &thesis).unwrap();
        assert!(found.is_empty());
    }

    #[test]
    fn contrary_attack() {
        let mut kb = KnowledgeBase::new();
        kb.assert_named(Pred::Contrary, &["y", "y'"], Polarity::Pos).unwrap();
        kb.assert_named(Pred::Nec, &["x", "y"], Polarity::Pos).unwrap();
        let (x, y2) = (kb.expr("x").unwrap(), kb.expr("y'").unwrap());
        let thesis = GroundLit::pos(Pred::Genus, vec![x.into(), y2.into()]).unwrap();
        let found = attacks(&kb, &Catalog::builtin(), &SaturationOptions::default(), &thesis).unwrap();
        assert!(found.iter().any(|a| a.rule == "IV3-22"), "{found:?}");
    }

    #[test]
    fn direct_clash() {
        let t = run("deny genus a b\nthesis genus a b\n");
        assert_eq!(t.verdict, Verdict::ThesisRefuted);
    }
}
