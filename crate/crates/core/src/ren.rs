//! The category of renamings: objects are contexts, morphisms are lists
//! of typed de Bruijn variables. This is the index category of the
//! Kripke semantics and the only notion of "moving between contexts"
//! the normalizer ever needs.
//!
//! Renamings store no type information; scope correctness is checked at
//! module boundaries in debug builds.

use std::rc::Rc;

use crate::syntax::{Ctx, Sub, Tm, Ty};

/// A de Bruijn index: 0 is the innermost binding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub usize);

/// A renaming from a source context into a target context: one source
/// variable per target entry. `map[k]` is the image of target index `k`
/// (so `map.len()` is the target length), and `src_len` is the length
/// of the source context, carried so weakening and identity stay
/// self-contained.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Renaming {
    map: Vec<Var>,
    src_len: usize,
}

impl Renaming {
    pub fn new(map: Vec<Var>, src_len: usize) -> Renaming {
        debug_assert!(map.iter().all(|v| v.0 < src_len));
        Renaming { map, src_len }
    }

    /// The identity renaming on a context of the given length.
    pub fn identity(len: usize) -> Renaming {
        Renaming {
            map: (0..len).map(Var).collect(),
            src_len: len,
        }
    }

    /// Target context length.
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Source context length.
    pub fn src_len(&self) -> usize {
        self.src_len
    }

    /// Weakening: reinterpret the renaming in a source context with one
    /// extra entry, applying one successor to every variable.
    pub fn weaken(&self) -> Renaming {
        Renaming {
            map: self.map.iter().map(|v| Var(v.0 + 1)).collect(),
            src_len: self.src_len + 1,
        }
    }

    /// Renames one variable of the target context.
    ///
    /// Panics if `x` does not index the target context; that is a bug in
    /// the caller, not in input data.
    pub fn rename_var(&self, x: Var) -> Var {
        self.map[x.0]
    }

    /// Composition: `self` after `other`, i.e. every variable of `self`
    /// is renamed along `other`.
    pub fn compose(&self, other: &Renaming) -> Renaming {
        debug_assert_eq!(self.src_len, other.len());
        Renaming {
            map: self.map.iter().map(|v| other.rename_var(*v)).collect(),
            src_len: other.src_len,
        }
    }

    /// The renaming extended by the new innermost variable, as
    /// `(weaken self, var 0)`. Used when going under a binder.
    pub fn lift(&self) -> Renaming {
        let mut map = Vec::with_capacity(self.map.len() + 1);
        map.push(Var(0));
        map.extend(self.map.iter().map(|v| Var(v.0 + 1)));
        Renaming {
            map,
            src_len: self.src_len + 1,
        }
    }

    /// Pointwise embedding into substitutions.
    pub fn embed(&self) -> Sub {
        fn go(map: &[Var]) -> Sub {
            match map.first() {
                None => Sub::Empty,
                Some(v) => Sub::Ext(Rc::new(go(&map[1..])), Rc::new(embed_var(*v))),
            }
        }
        go(&self.map)
    }
}

/// Embedding of a variable into terms: index 0 is `p2 id` and each
/// successor adds a weakening `[p1 id]`.
pub fn embed_var(x: Var) -> Tm {
    let mut t = Tm::Proj2(Rc::new(Sub::Id));
    for _ in 0..x.0 {
        t = Tm::Sub(Rc::new(t), Rc::new(Sub::Proj1(Rc::new(Sub::Id))));
    }
    t
}

/// The type of a variable over a context: the entry it points at,
/// weakened once per binding in between (and once for itself).
///
/// Panics if `x` does not index the context.
pub fn var_ty(ctx: &Ctx, x: Var) -> Ty {
    let entry = ctx.entry(ctx.len() - 1 - x.0);
    let mut ty = entry.clone();
    for _ in 0..=x.0 {
        ty = Ty::Sub(Rc::new(ty), Rc::new(Sub::Proj1(Rc::new(Sub::Id))));
    }
    ty
}
