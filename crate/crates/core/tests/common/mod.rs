//! Oracles and generators shared by the integration tests. Nothing here
//! calls into the engine's evaluator.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use topica::rule::{BodyItem, Head, Literal, Term};
use topica::signature::Sort;
use topica::{Category, KnowledgeBase, Polarity, Pred, Rule};

pub fn samples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../kb")
}

pub fn sample(name: &str) -> PathBuf {
    samples_dir().join(name)
}

pub const SAMPLE_KBS: &[&str] = &["justice.kb", "soul-number.kb", "porphyry.kb", "fire.kb"];

// -- random knowledge bases ----------------------------------------------

const POOL: &[Pred] = &[
    Pred::Genus,
    Pred::Nec,
    Pred::Diff1,
    Pred::Diff2,
    Pred::Prop,
    Pred::Insep,
    Pred::Contrary,
    Pred::Coord,
    Pred::Dep,
    Pred::SLoc,
    Pred::PartOf,
    Pred::SMore,
    Pred::GAdj,
    Pred::Cat,
];

/// A seeded KB with at most 12 constants, 6 predicates and 30 facts.
pub fn random_kb(seed: u64) -> KnowledgeBase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_consts = rng.gen_range(2..=12);
    let consts: Vec<String> = (0..n_consts).map(|i| format!("c{i}")).collect();
    let n_preds = rng.gen_range(1..=6);
    let preds: Vec<Pred> = POOL.choose_multiple(&mut rng, n_preds).copied().collect();
    let n_facts = rng.gen_range(0..=30);
    let mut kb = KnowledgeBase::new();
    for c in &consts {
        kb.noun(c).unwrap();
    }
    for _ in 0..n_facts {
        let p = *preds.choose(&mut rng).unwrap();
        let pol = if rng.gen_bool(0.2) {
            Polarity::Neg
        } else {
            Polarity::Pos
        };
        let args: Vec<String> = (0..p.arity())
            .map(|i| match p.sort(i) {
                Sort::Category => rng.gen_range(1..=10).to_string(),
                Sort::Expr => consts.choose(&mut rng).unwrap().clone(),
            })
            .collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        kb.assert_named(p, &refs, pol).unwrap();
    }
    kb
}

// -- graphs ----------------------------------------------------------------

/// Random DAG on `n` nodes: edges only go from lower to higher index.
pub fn random_dag(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.3) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Reachability by Warshall's algorithm.
pub fn brute_closure(n: usize, edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in edges {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for (i, row) in reach.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            if r {
                out.insert((i, j));
            }
        }
    }
    out
}

/// Pairs of the closure with no node strictly between them.
pub fn brute_igenus(n: usize, closure: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    closure
        .iter()
        .copied()
        .filter(|&(x, z)| !(0..n).any(|y| closure.contains(&(x, y)) && closure.contains(&(y, z))))
        .collect()
}

// -- contrapositive model checking ----------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Const {
    Expr(usize),
    Cat(u8),
}

type Atom = (Pred, Vec<Const>);

struct Universe {
    exprs: Vec<String>,
    cats: Vec<u8>,
}

impl Universe {
    /// Three fresh expressions plus the rule's named ones; the rule's
    /// categories padded to three.
    fn for_rules(rules: &[&Rule]) -> Universe {
        let mut exprs: Vec<String> = (0..3).map(|i| format!("#k{i}")).collect();
        let mut cats: BTreeSet<u8> = BTreeSet::new();
        let mut see = |t: &Term| match t {
            Term::Expr(s) if !exprs.contains(s) => exprs.push(s.clone()),
            Term::Cat(c) => {
                cats.insert(c.index());
            }
            _ => {}
        };
        for r in rules {
            for b in &r.body {
                match b {
                    BodyItem::Lit(l) => l.args.iter().for_each(&mut see),
                    BodyItem::Neq(a, c) => {
                        see(a);
                        see(c);
                    }
                    _ => {}
                }
            }
            if let Head::Lit(l) = &r.head {
                l.args.iter().for_each(&mut see);
            }
        }
        let mut fill = Category::all().map(|c| c.index());
        while cats.len() < 3 {
            cats.insert(fill.next().unwrap());
        }
        Universe {
            exprs,
            cats: cats.into_iter().collect(),
        }
    }

    fn of_sort(&self, s: Sort) -> Vec<Const> {
        match s {
            Sort::Expr => (0..self.exprs.len()).map(Const::Expr).collect(),
            Sort::Category => self.cats.iter().map(|&c| Const::Cat(c)).collect(),
        }
    }

    fn constant(&self, t: &Term, env: &BTreeMap<String, Const>, names: &[String]) -> Const {
        match t {
            Term::Var(v) => env[&names[*v]],
            Term::Expr(s) => Const::Expr(self.exprs.iter().position(|e| e == s).unwrap()),
            Term::Cat(c) => Const::Cat(c.index()),
        }
    }
}

/// A ground clause: the set of literals whose disjunction it asserts.
type Clause = BTreeSet<(Atom, bool)>;

fn var_sorts(rule: &Rule) -> BTreeMap<String, Sort> {
    let mut out = BTreeMap::new();
    let mut visit = |l: &Literal| {
        for (i, t) in l.args.iter().enumerate() {
            if let Term::Var(v) = t {
                out.insert(rule.vars[*v].clone(), l.pred.sort(i));
            }
        }
    };
    for b in &rule.body {
        if let BodyItem::Lit(l) = b {
            visit(l);
        }
    }
    if let Head::Lit(l) = &rule.head {
        visit(l);
    }
    for b in &rule.body {
        if let BodyItem::Dom(v) = b {
            out.entry(rule.vars[*v].clone()).or_insert(Sort::Expr);
        }
    }
    out
}

/// The rule instance under `env` as a clause, or `None` when an inequation
/// fails and the instance holds vacuously.
fn ground_clause(rule: &Rule, u: &Universe, env: &BTreeMap<String, Const>) -> Option<Clause> {
    let mut clause = Clause::new();
    let atom = |l: &Literal| -> Atom { (l.pred, l.args.iter().map(|t| u.constant(t, env, &rule.vars)).collect()) };
    for b in &rule.body {
        match b {
            BodyItem::Lit(l) => {
                clause.insert((atom(l), l.pol == Polarity::Neg));
            }
            BodyItem::Neq(a, c) => {
                if u.constant(a, env, &rule.vars) == u.constant(c, env, &rule.vars) {
                    return None;
                }
            }
            BodyItem::Dom(_) => {}
            other => panic!("rule {} has non-clausal item {other:?}", rule.id),
        }
    }
    match &rule.head {
        Head::Lit(l) => {
            clause.insert((atom(l), l.pol == Polarity::Pos));
        }
        Head::False => {}
        other => panic!("rule {} has non-clausal head {other:?}", rule.id),
    }
    Some(clause)
}

fn all_envs(sorts: &BTreeMap<String, Sort>, u: &Universe) -> Vec<BTreeMap<String, Const>> {
    let mut envs = vec![BTreeMap::new()];
    for (name, &s) in sorts {
        let mut next = Vec::new();
        for env in &envs {
            for c in u.of_sort(s) {
                let mut e = env.clone();
                e.insert(name.clone(), c);
                next.push(e);
            }
        }
        envs = next;
    }
    envs
}

fn all_clauses(rule: &Rule, u: &Universe) -> Vec<Clause> {
    all_envs(&var_sorts(rule), u)
        .iter()
        .filter_map(|env| ground_clause(rule, u, env))
        .collect()
}

fn satisfies(model: u64, index: &BTreeMap<Atom, usize>, clauses: &[Clause]) -> bool {
    clauses
        .iter()
        .all(|c| c.iter().any(|(a, positive)| (model >> index[a] & 1 == 1) == *positive))
}

/// Largest atom universe enumerated as a whole; above it models are
/// enumerated over the atoms of each instance pair.
pub const GLOBAL_ATOM_LIMIT: usize = 16;

/// Checks that `rule` and `other` hold in exactly the same models over
/// three constants (plus the rules' own constants). Variables correspond by
/// name. When the atom universe is small every model is enumerated;
/// otherwise, for every assignment of the variables, every model of the
/// atoms of both instances is enumerated.
pub fn same_models(rule: &Rule, other: &Rule) -> Result<(), String> {
    let u = Universe::for_rules(&[rule, other]);
    let (ra, oa) = (all_clauses(rule, &u), all_clauses(other, &u));
    let atoms: BTreeSet<Atom> = ra.iter().chain(&oa).flatten().map(|(a, _)| a.clone()).collect();
    if atoms.len() <= GLOBAL_ATOM_LIMIT {
        let index: BTreeMap<Atom, usize> = atoms.into_iter().enumerate().map(|(i, a)| (a, i)).collect();
        for model in 0..1u64 << index.len() {
            if satisfies(model, &index, &ra) != satisfies(model, &index, &oa) {
                return Err(format!("{} and {} differ on model {model:#b}", rule.id, other.id));
            }
        }
        return Ok(());
    }
    let mut sorts = var_sorts(rule);
    sorts.extend(var_sorts(other));
    for env in all_envs(&sorts, &u) {
        let r = ground_clause(rule, &u, &env);
        let o = ground_clause(other, &u, &env);
        let local: BTreeSet<Atom> = r.iter().chain(&o).flatten().map(|(a, _)| a.clone()).collect();
        let index: BTreeMap<Atom, usize> = local.into_iter().enumerate().map(|(i, a)| (a, i)).collect();
        let r: Vec<Clause> = r.into_iter().collect();
        let o: Vec<Clause> = o.into_iter().collect();
        for model in 0..1u64 << index.len() {
            if satisfies(model, &index, &r) != satisfies(model, &index, &o) {
                return Err(format!("{} and {} differ under {env:?}", rule.id, other.id));
            }
        }
    }
    Ok(())
}

/// Generative catalog rules with a literal head and a body of literals,
/// inequations and domain ranges.
pub fn clausal(rule: &Rule) -> bool {
    matches!(rule.head, Head::Lit(_))
        && rule
            .body
            .iter()
            .all(|b| matches!(b, BodyItem::Lit(_) | BodyItem::Neq(..) | BodyItem::Dom(_)))
}
