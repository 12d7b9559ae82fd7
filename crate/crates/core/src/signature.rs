//! The fixed predicate signature and ground atoms over it.

use std::fmt;

use crate::error::{Error, Result};
use crate::lexicon::ExprId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Grammatical,
    Semantic,
    Category,
    Predicabilia,
}

macro_rules! signature {
    ($($variant:ident => ($name:literal, $arity:literal, $family:ident)),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Pred {
            $($variant),*
        }

        impl Pred {
            pub const ALL: &'static [Pred] = &[$(Pred::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(Pred::$variant => $name),* }
            }

            pub fn arity(self) -> usize {
                match self { $(Pred::$variant => $arity),* }
            }

            pub fn family(self) -> Family {
                match self { $(Pred::$variant => Family::$family),* }
            }
        }
    };
}

signature! {
    GRest => ("G_rest", 3, Grammatical),
    GAdv => ("G_adv", 2, Grammatical),
    GAdj => ("G_adj", 2, Grammatical),
    GInc => ("G_inc", 2, Grammatical),
    GPol => ("G_pol", 1, Grammatical),
    GRel => ("G_rel", 1, Grammatical),
    GRel2 => ("G_rel2", 3, Grammatical),
    GAnd => ("G_and", 3, Grammatical),
    GAt => ("G_at", 1, Grammatical),
    Cat => ("cat", 2, Category),
    Contrary => ("contrary", 2, Semantic),
    Dep => ("dep", 2, Semantic),
    Degree => ("degree", 1, Semantic),
    HasMedium => ("has_medium", 1, Semantic),
    Medium => ("medium", 3, Semantic),
    BetterKnown => ("better_known", 2, Semantic),
    Analogy => ("analogy", 4, Semantic),
    Metaphor => ("metaphor", 2, Semantic),
    MoreEligible => ("more_eligible", 2, Semantic),
    SLoc => ("S_loc", 2, Semantic),
    PartOf => ("part_of", 2, Semantic),
    SMod => ("S_mod", 3, Semantic),
    SSup => ("S_sup", 2, Semantic),
    Inheres => ("inheres", 2, Semantic),
    SSens => ("S_sens", 1, Semantic),
    SEss => ("S_ess", 2, Semantic),
    SSyn => ("S_syn", 2, Semantic),
    SHom => ("S_hom", 1, Semantic),
    SMore => ("S_more", 3, Semantic),
    SRel => ("S_rel", 1, Semantic),
    SSimDegree => ("S_sim_degree", 2, Semantic),
    SProd => ("S_prod", 3, Semantic),
    SComp => ("S_comp", 3, Semantic),
    SComp1 => ("S_comp1", 4, Semantic),
    Negates => ("negates", 2, Semantic),
    Nec => ("nec", 2, Predicabilia),
    Cont => ("cont", 2, Predicabilia),
    Genus => ("genus", 2, Predicabilia),
    IGenus => ("igenus", 2, Predicabilia),
    GenusEq => ("genus_eq", 2, Predicabilia),
    Diff1 => ("diff1", 2, Predicabilia),
    Diff2 => ("diff2", 2, Predicabilia),
    Coord => ("coord", 2, Predicabilia),
    Prop => ("prop", 2, Predicabilia),
    Insep => ("insep", 2, Predicabilia),
    Defn => ("defn", 2, Predicabilia),
    Individual => ("individual", 1, Predicabilia),
    Infima => ("infima", 1, Predicabilia),
    HasDiff => ("has_diff", 1, Predicabilia),
}

impl Pred {
    /// Resolves a predicate name, accepting the notational aliases `G_1`,
    /// `G_res` (restriction) and `G_&` (conjunction).
    pub fn parse(name: &str) -> Result<Pred> {
        let canonical = match name {
            "G_1" | "G_res" => "G_rest",
            "G_&" => "G_and",
            other => other,
        };
        Pred::ALL
            .iter()
            .copied()
            .find(|p| p.name() == canonical)
            .ok_or_else(|| Error::UnknownPredicate(name.to_string()))
    }

    pub fn sort(self, pos: usize) -> Sort {
        if self == Pred::Cat && pos == 0 {
            Sort::Category
        } else {
            Sort::Expr
        }
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    Expr,
    Category,
}

/// One of the ten categories, `1` being ousia.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Category(u8);

impl Category {
    pub const OUSIA: Category = Category(1);

    pub fn new(index: i64) -> Result<Category> {
        if (1..=10).contains(&index) {
            Ok(Category(index as u8))
        } else {
            Err(Error::UnknownCategory(index))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Category> {
        (1..=10).map(Category)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Cat(Category),
    Expr(ExprId),
}

impl Value {
    pub fn sort(self) -> Sort {
        match self {
            Value::Cat(_) => Sort::Category,
            Value::Expr(_) => Sort::Expr,
        }
    }

    pub fn expr(self) -> Option<ExprId> {
        match self {
            Value::Expr(e) => Some(e),
            Value::Cat(_) => None,
        }
    }
}

impl From<ExprId> for Value {
    fn from(e: ExprId) -> Self {
        Value::Expr(e)
    }
}

impl From<Category> for Value {
    fn from(c: Category) -> Self {
        Value::Cat(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Pos,
    Neg,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Pos => Polarity::Neg,
            Polarity::Neg => Polarity::Pos,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Polarity::Pos => "pos",
            Polarity::Neg => "neg",
        }
    }
}

/// A signed ground atom. Field order gives the canonical
/// (predicate, arguments, polarity) ordering used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundLit {
    pub pred: Pred,
    pub args: Vec<Value>,
    pub pol: Polarity,
}

impl GroundLit {
    /// Builds a literal, checking arity and sorts. `cont(x,y)` is rewritten
    /// to `~nec(x,y)` and `~cont(x,y)` to `nec(x,y)`.
    pub fn new(pred: Pred, args: Vec<Value>, pol: Polarity) -> Result<GroundLit> {
        check_args(pred, &args)?;
        Ok(GroundLit::canonical(pred, args, pol))
    }

    pub fn pos(pred: Pred, args: Vec<Value>) -> Result<GroundLit> {
        GroundLit::new(pred, args, Polarity::Pos)
    }

    pub fn neg(pred: Pred, args: Vec<Value>) -> Result<GroundLit> {
        GroundLit::new(pred, args, Polarity::Neg)
    }

    pub(crate) fn canonical(pred: Pred, args: Vec<Value>, pol: Polarity) -> GroundLit {
        match pred {
            Pred::Cont => GroundLit {
                pred: Pred::Nec,
                args,
                pol: pol.flip(),
            },
            _ => GroundLit { pred, args, pol },
        }
    }

    pub fn negated(&self) -> GroundLit {
        GroundLit {
            pred: self.pred,
            args: self.args.clone(),
            pol: self.pol.flip(),
        }
    }

    pub fn is_pos(&self) -> bool {
        self.pol == Polarity::Pos
    }

    pub fn exprs(&self) -> impl Iterator<Item = ExprId> + '_ {
        self.args.iter().filter_map(|v| v.expr())
    }
}

pub fn check_args(pred: Pred, args: &[Value]) -> Result<()> {
    if args.len() != pred.arity() {
        return Err(Error::Arity {
            pred: pred.name().to_string(),
            expected: pred.arity(),
            got: args.len(),
        });
    }
    for (pos, v) in args.iter().enumerate() {
        if v.sort() != pred.sort(pos) {
            return Err(Error::Sort {
                pred: pred.name().to_string(),
                pos,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for &p in Pred::ALL {
            assert_eq!(Pred::parse(p.name()).unwrap(), p);
        }
        assert_eq!(Pred::parse("G_res").unwrap(), Pred::GRest);
        assert_eq!(Pred::parse("G_1").unwrap(), Pred::GRest);
        assert_eq!(Pred::parse("G_&").unwrap(), Pred::GAnd);
        assert!(Pred::parse("G_sen").is_err());
    }

    #[test]
    fn reserved_arities() {
        assert_eq!(Pred::SComp.arity(), 3);
        assert_eq!(Pred::SComp1.arity(), 4);
        assert_eq!(Pred::Analogy.arity(), 4);
    }

    #[test]
    fn category_range() {
        assert!(Category::new(1).is_ok());
        assert!(Category::new(10).is_ok());
        assert_eq!(Category::new(11), Err(Error::UnknownCategory(11)));
        assert_eq!(Category::new(0), Err(Error::UnknownCategory(0)));
    }

    #[test]
    fn cont_is_negated_nec() {
        let a = Value::Expr(ExprId(0));
        let b = Value::Expr(ExprId(1));
        let l = GroundLit::pos(Pred::Cont, vec![a, b]).unwrap();
        assert_eq!(l, GroundLit::neg(Pred::Nec, vec![a, b]).unwrap());
        let l = GroundLit::neg(Pred::Cont, vec![a, b]).unwrap();
        assert_eq!(l, GroundLit::pos(Pred::Nec, vec![a, b]).unwrap());
    }

    #[test]
    fn arity_and_sort_checked() {
        let a = Value::Expr(ExprId(0));
        assert!(matches!(GroundLit::pos(Pred::Genus, vec![a]), Err(Error::Arity { .. })));
        assert!(matches!(GroundLit::pos(Pred::Cat, vec![a, a]), Err(Error::Sort { .. })));
        let c = Value::Cat(Category::new(3).unwrap());
        assert!(GroundLit::pos(Pred::Cat, vec![c, a]).is_ok());
    }
}
