//! Core syntax: an explicit-substitution calculus for a minimal dependent
//! type theory with Pi, an uninterpreted base type `U` and a family `El`
//! over it.
//!
//! Substitutions are first-class syntax (`id`, composition, the empty
//! substitution, extension and first projection) rather than a meta-level
//! operation. Terms carry no type annotations; well-typedness is enforced
//! by the checker, not by construction. Variables are not a constructor:
//! they arise as `p2` of weakening chains (see [`crate::ren`]).

use std::fmt;
use std::rc::Rc;

pub mod text;

/// Types over a context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ty {
    /// The uninterpreted base type.
    U,
    /// The uninterpreted family over `U`; the argument is meant to
    /// have type `U` (checked dynamically, not by construction).
    El(Rc<Tm>),
    /// Dependent function type; the codomain is scoped in the context
    /// extended by the domain.
    Pi(Rc<Ty>, Rc<Ty>),
    /// A type under an explicit substitution.
    Sub(Rc<Ty>, Rc<Sub>),
}

/// Terms. Note the categorical application: `App(t)` lives in the
/// context extended by the domain of `t`'s Pi type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tm {
    Lam(Rc<Tm>),
    App(Rc<Tm>),
    /// Second projection of a substitution targeting an extended context.
    Proj2(Rc<Sub>),
    /// A term under an explicit substitution.
    Sub(Rc<Tm>, Rc<Sub>),
}

/// Substitutions between contexts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sub {
    Id,
    Comp(Rc<Sub>, Rc<Sub>),
    /// The unique substitution into the empty context.
    Empty,
    /// Extension: `(sigma, t)` targets a context extended by the type
    /// of `t` substituted along `sigma`.
    Ext(Rc<Sub>, Rc<Tm>),
    Proj1(Rc<Sub>),
}

/// A context: an ordered list of types, innermost entry last. Each
/// entry's free indices refer only to earlier entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Ctx(Vec<Ty>);

impl Ctx {
    pub fn empty() -> Ctx {
        Ctx(Vec::new())
    }

    pub fn from_entries(entries: Vec<Ty>) -> Ctx {
        Ctx(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry `i` counted from the outside (position 0 is the outermost).
    pub fn entry(&self, i: usize) -> &Ty {
        &self.0[i]
    }

    pub fn entries(&self) -> &[Ty] {
        &self.0
    }

    /// The context extended by one more type.
    pub fn extended(&self, a: Ty) -> Ctx {
        let mut v = self.0.clone();
        v.push(a);
        Ctx(v)
    }

    /// Splits off the innermost entry, if any.
    pub fn split_last(&self) -> Option<(Ctx, &Ty)> {
        let (last, init) = self.0.split_last()?;
        Some((Ctx(init.to_vec()), last))
    }

    /// The prefix containing the first `n` entries.
    pub fn prefix(&self, n: usize) -> Ctx {
        Ctx(self.0[..n].to_vec())
    }
}

/// Lifting of a substitution: from `sigma : Γ → Δ` build the
/// substitution `(Γ, A[sigma]) → (Δ, A)` acting as `sigma` on the
/// prefix and keeping the new variable. On the untyped data the type
/// `A` plays no role, so it is not a parameter here.
pub fn lift(sigma: &Rc<Sub>) -> Sub {
    Sub::Ext(
        Rc::new(Sub::Comp(sigma.clone(), Rc::new(Sub::Proj1(Rc::new(Sub::Id))))),
        Rc::new(Tm::Proj2(Rc::new(Sub::Id))),
    )
}

/// The single substitution `⟨u⟩ = (id, u)` used to instantiate the last
/// variable of an extended context.
pub fn single(u: &Rc<Tm>) -> Sub {
    Sub::Ext(Rc::new(Sub::Id), u.clone())
}

/// Ordinary application `t $ u`, derived from the categorical `app` as
/// `(app t)[⟨u⟩]`.
pub fn apply(t: &Rc<Tm>, u: &Rc<Tm>) -> Tm {
    Tm::Sub(Rc::new(Tm::App(t.clone())), Rc::new(single(u)))
}

impl Ty {
    pub fn rc(self) -> Rc<Ty> {
        Rc::new(self)
    }

    /// Constructor count.
    pub fn size(&self) -> usize {
        match self {
            Ty::U => 1,
            Ty::El(t) => 1 + t.size(),
            Ty::Pi(a, b) => 1 + a.size() + b.size(),
            Ty::Sub(a, s) => 1 + a.size() + s.size(),
        }
    }
}

impl Tm {
    pub fn rc(self) -> Rc<Tm> {
        Rc::new(self)
    }

    pub fn size(&self) -> usize {
        match self {
            Tm::Lam(t) | Tm::App(t) => 1 + t.size(),
            Tm::Proj2(s) => 1 + s.size(),
            Tm::Sub(t, s) => 1 + t.size() + s.size(),
        }
    }
}

impl Sub {
    pub fn rc(self) -> Rc<Sub> {
        Rc::new(self)
    }

    pub fn size(&self) -> usize {
        match self {
            Sub::Id | Sub::Empty => 1,
            Sub::Comp(a, b) => 1 + a.size() + b.size(),
            Sub::Ext(s, t) => 1 + s.size() + t.size(),
            Sub::Proj1(s) => 1 + s.size(),
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::print_ty(self))
    }
}

impl fmt::Display for Tm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::print_tm(self))
    }
}

impl fmt::Display for Sub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::print_sub(self))
    }
}
