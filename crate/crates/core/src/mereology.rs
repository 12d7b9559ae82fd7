//! Sums `a + b`, pairs `{a, b}`, the contrary operator and membership of
//! pairs and atoms in sums.

use crate::error::{Error, Result};
use crate::kb::{KnowledgeBase, Pattern};
use crate::lexicon::{ExprId, Kind};
use crate::signature::{GroundLit, Polarity, Pred};

/// The unique contrary of `x`. For a sum the result is the sum of the
/// constituents' contraries, interned if new.
pub fn contrary_of(kb: &mut KnowledgeBase, x: ExprId) -> Result<ExprId> {
    let e = kb.lexicon.get(x)?;
    if let (Kind::Sum, Some((a, b))) = (e.kind, e.constituents) {
        let ca = contrary_of(kb, a)?;
        let cb = contrary_of(kb, b)?;
        return kb.lexicon.sum(ca, cb);
    }
    lookup_contrary(kb, x)
}

/// Like [`contrary_of`] but never interns; fails for sums whose contrary
/// sum is not yet interned.
pub fn lookup_contrary(kb: &KnowledgeBase, x: ExprId) -> Result<ExprId> {
    let e = kb.lexicon.get(x)?;
    if let (Kind::Sum, Some((a, b))) = (e.kind, e.constituents) {
        let (ca, cb) = (lookup_contrary(kb, a)?, lookup_contrary(kb, b)?);
        return kb
            .lexicon
            .find_compound(Kind::Sum, ca, cb)
            .ok_or_else(|| Error::ContraryNotUnique(kb.lexicon.text(x)));
    }
    let hits = kb.holds(&Pattern::new(Pred::Contrary, vec![Some(x.into()), None], Polarity::Pos));
    match hits.as_slice() {
        [one] => Ok(one.lit.args[1].expr().expect("contrary args are expressions")),
        _ => Err(Error::ContraryNotUnique(kb.lexicon.text(x))),
    }
}

fn nec(kb: &KnowledgeBase, x: ExprId, y: ExprId) -> bool {
    GroundLit::pos(Pred::Nec, vec![x.into(), y.into()]).is_ok_and(|l| kb.contains(&l))
}

/// Outcome of a membership evaluation with the expansion that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub holds: bool,
    pub steps: Vec<String>,
}

impl MembershipReport {
    pub fn render(&self) -> String {
        let mut s = self.steps.join("\n");
        s.push('\n');
        s
    }
}

fn pair_members(kb: &KnowledgeBase, pair: ExprId) -> Result<(ExprId, ExprId)> {
    let e = kb.lexicon.get(pair)?;
    match (e.kind, e.constituents) {
        (Kind::Pair, Some(c)) => Ok(c),
        _ => Err(Error::BadConstituent(format!(
            "`{}` is not a pair",
            kb.lexicon.text(pair)
        ))),
    }
}

/// `{x1, x2} in y` iff `x1 in y` or `x2 in y`; for a sum `y + z`, membership
/// in both summands.
pub fn pair_nec(kb: &KnowledgeBase, pair: ExprId, y: ExprId) -> Result<MembershipReport> {
    let (x1, x2) = pair_members(kb, pair)?;
    let t = |e: ExprId| kb.lexicon.text(e);
    let p = format!("{{{}, {}}}", t(x1), t(x2));
    let ye = kb.lexicon.get(y)?;
    let summands: Vec<ExprId> = match (ye.kind, ye.constituents) {
        (Kind::Sum, Some((a, b))) => vec![a, b],
        _ => vec![y],
    };
    let mut steps = Vec::new();
    if summands.len() == 2 {
        steps.push(format!(
            "second definition: {p} in ({}) <-> {p} in {} & {p} in {}",
            t(y),
            t(summands[0]),
            t(summands[1])
        ));
    }
    let disjunctions: Vec<String> = summands
        .iter()
        .map(|&s| format!("({} in {} | {} in {})", t(x1), t(s), t(x2), t(s)))
        .collect();
    steps.push(format!("first definition: {}", disjunctions.join(" & ")));
    let values: Vec<(bool, bool)> = summands.iter().map(|&s| (nec(kb, x1, s), nec(kb, x2, s))).collect();
    let rendered: Vec<String> = values.iter().map(|(a, b)| format!("({a} | {b})")).collect();
    let holds = values.iter().all(|(a, b)| *a || *b);
    steps.push(format!("evaluation: {} = {holds}", rendered.join(" & ")));
    steps.push(if holds {
        format!("{p} in {}: which obtains", t(y))
    } else {
        format!("{p} in {}: does not obtain", t(y))
    });
    Ok(MembershipReport { holds, steps })
}

/// `x in (y + z)` iff `x in y` and `x in z`, for `x` not a pair.
pub fn atom_nec_sum(kb: &KnowledgeBase, x: ExprId, sum: ExprId) -> Result<bool> {
    let xe = kb.lexicon.get(x)?;
    if xe.kind == Kind::Pair {
        return Err(Error::BadConstituent(format!("`{}` is a pair", kb.lexicon.text(x))));
    }
    let se = kb.lexicon.get(sum)?;
    match (se.kind, se.constituents) {
        (Kind::Sum, Some((a, b))) => Ok(nec(kb, x, a) && nec(kb, x, b)),
        _ => Err(Error::BadConstituent(format!(
            "`{}` is not a sum",
            kb.lexicon.text(sum)
        ))),
    }
}

/// A pair necessarily predicated by a sum and by its contrary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paradox {
    pub pair: ExprId,
    pub sum: ExprId,
    pub contrary: ExprId,
    pub direct: MembershipReport,
    pub opposite: MembershipReport,
}

/// Interns the contrary of every sum whose summands have unique contraries,
/// then reports every pair belonging to both a sum and its contrary.
pub fn paradoxes(kb: &mut KnowledgeBase) -> Result<Vec<Paradox>> {
    let sums: Vec<ExprId> = kb
        .lexicon
        .enumerate()
        .iter()
        .filter(|e| e.kind == Kind::Sum)
        .map(|e| e.id)
        .collect();
    let mut with_contrary = Vec::new();
    for s in sums {
        if let Ok(c) = contrary_of(kb, s) {
            if !with_contrary.iter().any(|&(a, b)| (a, b) == (c, s)) {
                with_contrary.push((s, c));
            }
        }
    }
    let pairs: Vec<ExprId> = kb
        .lexicon
        .enumerate()
        .iter()
        .filter(|e| e.kind == Kind::Pair)
        .map(|e| e.id)
        .collect();
    let mut out = Vec::new();
    for &p in &pairs {
        for &(s, c) in &with_contrary {
            let direct = pair_nec(kb, p, s)?;
            let opposite = pair_nec(kb, p, c)?;
            if direct.holds && opposite.holds {
                out.push(Paradox {
                    pair: p,
                    sum: s,
                    contrary: c,
                    direct,
                    opposite,
                });
            }
        }
    }
    Ok(out)
}
