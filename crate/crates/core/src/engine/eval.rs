//! Grounding of rule bodies against a fact store.

use std::collections::{BTreeSet, HashMap};

use crate::kb::FactStore;
use crate::lexicon::{ExprId, Kind, Lexicon};
use crate::rule::{binders, BodyItem, Head, Literal, Rule, Term, Var};
use crate::signature::{GroundLit, Polarity, Pred, Value};

pub(crate) type Binding = Vec<Option<Value>>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Solution {
    pub binding: Binding,
    pub premises: Vec<GroundLit>,
}

/// Resolved expression constants of a rule program.
pub(crate) type Constants = HashMap<String, Option<ExprId>>;

pub(crate) fn resolve_constants<'r>(
    lexicon: &Lexicon,
    aliases: &std::collections::BTreeMap<String, ExprId>,
    rules: impl IntoIterator<Item = &'r Rule>,
) -> Constants {
    fn collect(out: &mut BTreeSet<String>, t: &Term) {
        if let Term::Expr(s) = t {
            out.insert(s.clone());
        }
    }
    fn items(out: &mut BTreeSet<String>, body: &[BodyItem]) {
        for b in body {
            match b {
                BodyItem::Lit(l) => l.args.iter().for_each(|t| collect(out, t)),
                BodyItem::Neq(a, c) | BodyItem::ExtNeq(a, c) => {
                    collect(out, a);
                    collect(out, c);
                }
                BodyItem::Forall { guard, require, .. } => {
                    items(out, guard);
                    require.args.iter().for_each(|t| collect(out, t));
                }
                BodyItem::Pair(a, c, d) => [a, c, d].into_iter().for_each(|t| collect(out, t)),
                BodyItem::NotPair(a) => collect(out, a),
                BodyItem::Dom(_) => {}
            }
        }
    }
    let mut names = BTreeSet::new();
    for r in rules {
        items(&mut names, &r.body);
        match &r.head {
            Head::Lit(l) => l.args.iter().for_each(|t| collect(&mut names, t)),
            Head::AnyOf(ls) => ls.iter().flat_map(|l| &l.args).for_each(|t| collect(&mut names, t)),
            Head::Exists { body, .. } => items(&mut names, body),
            Head::Eq(a, b) | Head::Neq(a, b) | Head::ExtSub(a, b) | Head::ExtProperSub(a, b) => {
                collect(&mut names, a);
                collect(&mut names, b);
            }
            Head::False => {}
        }
    }
    names
        .into_iter()
        .map(|n| {
            let id = aliases.get(&n).copied().or_else(|| lexicon.find_text(&n));
            (n, id)
        })
        .collect()
}

pub(crate) struct Evaluator<'a> {
    pub lexicon: &'a Lexicon,
    pub store: &'a FactStore,
    pub domain: &'a [ExprId],
    pub consts: &'a Constants,
}

enum Src<'a> {
    Full,
    Delta(&'a FactStore),
}

impl<'a> Evaluator<'a> {
    pub fn value(&self, t: &Term, b: &Binding) -> Option<Value> {
        match t {
            Term::Var(v) => b[*v],
            Term::Expr(name) => self.consts.get(name).copied().flatten().map(Value::Expr),
            Term::Cat(c) => Some(Value::Cat(*c)),
        }
    }

    pub fn instantiate(&self, l: &Literal, b: &Binding) -> Option<GroundLit> {
        let args = l.args.iter().map(|t| self.value(t, b)).collect::<Option<Vec<_>>>()?;
        Some(GroundLit {
            pred: l.pred,
            args,
            pol: l.pol,
        })
    }

    /// All solutions of `items`. When `delta` is given, the literal at that
    /// body position is matched against the delta store only.
    pub fn solve(
        &self,
        nvars: usize,
        items: &[BodyItem],
        delta: Option<(usize, &FactStore)>,
        init: Option<Binding>,
    ) -> Vec<Solution> {
        let binding = init.unwrap_or_else(|| vec![None; nvars]);
        let lits: Vec<usize> = items
            .iter()
            .enumerate()
            .filter(|(_, it)| it.is_literal())
            .map(|(i, _)| i)
            .collect();
        let mut out = Vec::new();
        let mut premises = Vec::new();
        self.join(items, lits, delta, binding, &mut premises, &mut out);
        out
    }

    fn join(
        &self,
        items: &[BodyItem],
        remaining: Vec<usize>,
        delta: Option<(usize, &FactStore)>,
        binding: Binding,
        premises: &mut Vec<GroundLit>,
        out: &mut Vec<Solution>,
    ) {
        if remaining.is_empty() {
            self.finish(items, 0, binding, premises, out);
            return;
        }
        // Delta literal first, then the literal with most bound arguments.
        let pick = match delta {
            Some((d, _)) if remaining.contains(&d) => d,
            _ => *remaining
                .iter()
                .max_by_key(|&&i| {
                    let BodyItem::Lit(l) = &items[i] else { unreachable!() };
                    let bound = l.args.iter().filter(|t| self.value(t, &binding).is_some()).count();
                    (bound, std::cmp::Reverse(i))
                })
                .unwrap(),
        };
        let rest: Vec<usize> = remaining.into_iter().filter(|&i| i != pick).collect();
        let BodyItem::Lit(lit) = &items[pick] else {
            unreachable!()
        };
        let src = match delta {
            Some((d, store)) if d == pick => Src::Delta(store),
            _ => Src::Full,
        };
        for (b2, ground) in self.match_literal(lit, &binding, src) {
            premises.push(ground);
            self.join(items, rest.clone(), delta, b2, premises, out);
            premises.pop();
        }
    }

    fn match_literal(&self, lit: &Literal, binding: &Binding, src: Src<'_>) -> Vec<(Binding, GroundLit)> {
        let store = match src {
            Src::Full => self.store,
            Src::Delta(s) => s,
        };
        let Some(rel) = store.relation(lit.pred, lit.pol) else {
            return Vec::new();
        };
        let mut pattern = Vec::with_capacity(lit.args.len());
        for t in &lit.args {
            match t {
                Term::Var(v) => pattern.push(binding[*v]),
                other => match self.value(other, binding) {
                    Some(v) => pattern.push(Some(v)),
                    None => return Vec::new(),
                },
            }
        }
        let mut out = Vec::new();
        'tuples: for tuple in rel.matching(&pattern) {
            let mut b = binding.clone();
            for (t, v) in lit.args.iter().zip(tuple) {
                if let Term::Var(var) = t {
                    match b[*var] {
                        Some(existing) if existing != *v => continue 'tuples,
                        Some(_) => {}
                        None => b[*var] = Some(*v),
                    }
                }
            }
            out.push((
                b,
                GroundLit {
                    pred: lit.pred,
                    args: tuple.to_vec(),
                    pol: lit.pol,
                },
            ));
        }
        out
    }

    /// Non-literal items, in two passes: binders (pairs, domain ranges) then
    /// filters.
    fn finish(
        &self,
        items: &[BodyItem],
        phase: usize,
        binding: Binding,
        premises: &mut Vec<GroundLit>,
        out: &mut Vec<Solution>,
    ) {
        if phase == 0 {
            let mut stack = vec![binding];
            for item in items {
                let mut next = Vec::new();
                for b in stack {
                    match item {
                        BodyItem::Pair(p, x, y) => next.extend(self.bind_pair(p, x, y, b)),
                        BodyItem::Dom(v) => match b[*v] {
                            Some(Value::Expr(_)) => next.push(b),
                            Some(Value::Cat(_)) => {}
                            None => {
                                for &e in self.domain {
                                    let mut b2 = b.clone();
                                    b2[*v] = Some(Value::Expr(e));
                                    next.push(b2);
                                }
                            }
                        },
                        _ => next.push(b),
                    }
                }
                stack = next;
            }
            for b in stack {
                self.finish(items, 1, b, premises, out);
            }
            return;
        }
        let mut extra = Vec::new();
        for item in items {
            let ok = match item {
                BodyItem::Neq(a, c) => {
                    let (x, y) = (self.value(a, &binding), self.value(c, &binding));
                    x.is_none() || y.is_none() || x != y
                }
                BodyItem::NotPair(a) => match self.value(a, &binding) {
                    Some(Value::Expr(e)) => self.lexicon.get(e).is_ok_and(|e| e.kind != Kind::Pair),
                    _ => false,
                },
                BodyItem::ExtNeq(a, c) => match (self.value(a, &binding), self.value(c, &binding)) {
                    (Some(x), Some(y)) => {
                        let (ex, ey) = (self.extension(x), self.extension(y));
                        !ex.is_empty() && !ey.is_empty() && ex != ey
                    }
                    _ => false,
                },
                BodyItem::Forall { vars, guard, require } => {
                    match self.forall(binding.len(), vars, guard, require, &binding) {
                        Some(mut used) => {
                            extra.append(&mut used);
                            true
                        }
                        None => false,
                    }
                }
                _ => true,
            };
            if !ok {
                return;
            }
        }
        let mut prem = premises.clone();
        prem.extend(extra);
        out.push(Solution {
            binding,
            premises: prem,
        });
    }

    fn bind_pair(&self, p: &Term, x: &Term, y: &Term, b: Binding) -> Vec<Binding> {
        let candidates: Vec<ExprId> = match self.value(p, &b) {
            Some(Value::Expr(e)) => vec![e],
            Some(Value::Cat(_)) => return Vec::new(),
            None => self
                .lexicon
                .enumerate()
                .iter()
                .filter(|e| e.kind == Kind::Pair)
                .map(|e| e.id)
                .collect(),
        };
        let mut out = Vec::new();
        for pid in candidates {
            let Ok(expr) = self.lexicon.get(pid) else { continue };
            if expr.kind != Kind::Pair {
                continue;
            }
            let Some((lo, hi)) = expr.constituents else { continue };
            for (a, c) in [(lo, hi), (hi, lo)] {
                let mut b2 = b.clone();
                let mut ok = true;
                for (t, v) in [(p, pid), (x, a), (y, c)] {
                    match t {
                        Term::Var(var) => match b2[*var] {
                            Some(existing) if existing != Value::Expr(v) => ok = false,
                            Some(_) => {}
                            None => b2[*var] = Some(Value::Expr(v)),
                        },
                        other => ok &= self.value(other, &b2) == Some(Value::Expr(v)),
                    }
                }
                if ok && !out.contains(&b2) {
                    out.push(b2);
                }
            }
        }
        out
    }

    /// Returns the required facts when the universal condition holds.
    fn forall(
        &self,
        nvars: usize,
        vars: &[Var],
        guard: &[BodyItem],
        require: &Literal,
        binding: &Binding,
    ) -> Option<Vec<GroundLit>> {
        let bound = binders(guard);
        let mut items = guard.to_vec();
        for v in vars {
            if !bound.contains(v) {
                items.push(BodyItem::Dom(*v));
            }
        }
        let mut init = binding.clone();
        init.resize(nvars, None);
        for v in vars {
            init[*v] = None;
        }
        let mut used = Vec::new();
        for sol in self.solve(nvars, &items, None, Some(init)) {
            let g = self.instantiate(require, &sol.binding)?;
            if !self.store.contains(&g) {
                return None;
            }
            used.push(g);
        }
        used.sort();
        used.dedup();
        Some(used)
    }

    pub fn extension(&self, x: Value) -> BTreeSet<Value> {
        let Some(rel) = self.store.relation(Pred::Nec, Polarity::Pos) else {
            return BTreeSet::new();
        };
        rel.matching(&[None, Some(x)]).map(|t| t[0]).collect()
    }

    /// Evaluates a constraint head under a body solution; `true` means satisfied.
    pub fn head_holds(&self, rule: &Rule, b: &Binding) -> bool {
        match &rule.head {
            Head::Lit(l) => self.instantiate(l, b).is_some_and(|g| self.store.contains(&g)),
            Head::AnyOf(ls) => ls
                .iter()
                .any(|l| self.instantiate(l, b).is_some_and(|g| self.store.contains(&g))),
            Head::Exists { vars, body } => {
                let bound = binders(body);
                let mut items = body.clone();
                for v in vars {
                    if !bound.contains(v) {
                        items.push(BodyItem::Dom(*v));
                    }
                }
                !self.solve(rule.vars.len(), &items, None, Some(b.clone())).is_empty()
            }
            Head::Eq(x, y) => self.value(x, b) == self.value(y, b),
            Head::Neq(x, y) => self.value(x, b) != self.value(y, b),
            Head::False => false,
            Head::ExtSub(x, y) | Head::ExtProperSub(x, y) => {
                let (Some(x), Some(y)) = (self.value(x, b), self.value(y, b)) else {
                    return true;
                };
                let (ex, ey) = (self.extension(x), self.extension(y));
                if ex.is_empty() || ey.is_empty() {
                    return true;
                }
                let sub = ex.is_subset(&ey);
                match rule.head {
                    Head::ExtSub(..) => sub,
                    _ => sub && ex != ey,
                }
            }
        }
    }
}
