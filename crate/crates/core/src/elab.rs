//! Bidirectional elaboration from the surface language into core
//! syntax, plus the defensive core-level checker that re-validates
//! elaborated output in debug builds.
//!
//! Inference handles variables, applications and annotations — the
//! forms whose types the context determines. Checking handles lambdas,
//! which need their type supplied. A β-redex `(\x. b) a` is additionally
//! accepted in both modes by inferring the argument first.

use std::rc::Rc;

use thiserror::Error;

use crate::eval::{EvalError, Fuel};
use crate::nbe::conv_ty;
use crate::normal::{embed_nf, embed_nty, norm_ty, Ne, NTy};
use crate::pretty;
use crate::ren::{embed_var, var_ty, Var};
use crate::surface::{Item, ItemKind, Pos, SurfKind, Surface};
use crate::syntax::{apply, lift, single, Ctx, Sub, Tm, Ty};

/// A user-facing type error with a source position.
#[derive(Debug, Error, Clone)]
#[error("{pos}: {msg}")]
pub struct TypeError {
    pub pos: Pos,
    pub msg: String,
}

#[derive(Debug, Error)]
pub enum ElabError {
    #[error(transparent)]
    Type(#[from] TypeError),
    /// Fuel exhaustion or another breach of an internal invariant.
    #[error("internal: {0}")]
    Internal(#[from] EvalError),
}

/// Names in scope paired with the elaborated context. A signature of
/// toplevel assumptions is the toplevel scope.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    names: Vec<String>,
    ctx: Ctx,
}

impl Scope {
    pub fn empty() -> Scope {
        Scope::default()
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn extended(&self, name: impl Into<String>, ty: Ty) -> Scope {
        let mut s = self.clone();
        s.names.push(name.into());
        s.ctx = s.ctx.extended(ty);
        s
    }

    /// Innermost binding of the name wins (shadowing).
    fn lookup(&self, name: &str) -> Option<Var> {
        self.names
            .iter()
            .rposition(|n| n == name)
            .map(|i| Var(self.names.len() - 1 - i))
    }

    fn show_ty(&self, a: &Ty, fuel: &Fuel) -> String {
        pretty::ty(&self.ctx, &self.names, a, fuel)
    }
}

fn type_err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ElabError> {
    Err(ElabError::Type(TypeError {
        pos,
        msg: msg.into(),
    }))
}

/// Infers a type for the surface term and elaborates it.
pub fn infer(scope: &Scope, e: &Surface, fuel: &Fuel) -> Result<(Rc<Tm>, Rc<Ty>), ElabError> {
    let result = infer_inner(scope, e, fuel)?;
    recheck(scope, &result.0, &result.1);
    Ok(result)
}

fn infer_inner(scope: &Scope, e: &Surface, fuel: &Fuel) -> Result<(Rc<Tm>, Rc<Ty>), ElabError> {
    match &e.kind {
        SurfKind::Var(name) => match scope.lookup(name) {
            Some(x) => Ok((
                Rc::new(embed_var(x)),
                Rc::new(var_ty(&scope.ctx, x)),
            )),
            None => type_err(e.pos, format!("unbound name `{name}`")),
        },
        SurfKind::App(f, a) => {
            if let SurfKind::Lam(name, body) = &f.kind {
                // β-redex: the argument's type annotates the binder.
                let (ta, aty) = infer(scope, a, fuel)?;
                let inner = scope.extended(name.clone(), (*aty).clone());
                let (tb, bty) = infer(&inner, body, fuel)?;
                let term = apply(&Rc::new(Tm::Lam(tb)), &ta);
                let ty = Ty::Sub(bty, Rc::new(single(&ta)));
                return Ok((Rc::new(term), Rc::new(ty)));
            }
            let (tf, fty) = infer(scope, f, fuel)?;
            match norm_ty(&fty) {
                NTy::Pi(dom, cod) => {
                    let ta = check(scope, a, &embed_nty(&dom), fuel)?;
                    let term = apply(&tf, &ta);
                    let ty = Ty::Sub(Rc::new(embed_nty(&cod)), Rc::new(single(&ta)));
                    Ok((Rc::new(term), Rc::new(ty)))
                }
                _ => type_err(
                    f.pos,
                    format!(
                        "applied non-function of type `{}`",
                        scope.show_ty(&fty, fuel)
                    ),
                ),
            }
        }
        SurfKind::Ann(inner, t) => {
            let ty = elab_type(scope, t, fuel)?;
            let tm = check(scope, inner, &ty, fuel)?;
            Ok((tm, Rc::new(ty)))
        }
        SurfKind::Lam(..) => type_err(e.pos, "unannotated lambda in inference position"),
        SurfKind::U | SurfKind::El(_) | SurfKind::Pi(..) => {
            type_err(e.pos, "a type former cannot be used as a term")
        }
    }
}

/// Checks the surface term against an (already well-formed) type.
pub fn check(scope: &Scope, e: &Surface, want: &Ty, fuel: &Fuel) -> Result<Rc<Tm>, ElabError> {
    let t = check_inner(scope, e, want, fuel)?;
    recheck(scope, &t, &Rc::new(want.clone()));
    Ok(t)
}

fn check_inner(scope: &Scope, e: &Surface, want: &Ty, fuel: &Fuel) -> Result<Rc<Tm>, ElabError> {
    match &e.kind {
        SurfKind::Lam(name, body) => match norm_ty(want) {
            NTy::Pi(dom, cod) => {
                let inner = scope.extended(name.clone(), embed_nty(&dom));
                let tb = check(&inner, body, &embed_nty(&cod), fuel)?;
                Ok(Rc::new(Tm::Lam(tb)))
            }
            _ => type_err(
                e.pos,
                format!(
                    "lambda checked against non-function type `{}`",
                    scope.show_ty(want, fuel)
                ),
            ),
        },
        SurfKind::App(f, a) if matches!(&f.kind, SurfKind::Lam(..)) => {
            let SurfKind::Lam(name, body) = &f.kind else {
                unreachable!()
            };
            // β-redex in checking mode: check the body against the
            // weakened expected type.
            let (ta, aty) = infer(scope, a, fuel)?;
            let inner = scope.extended(name.clone(), (*aty).clone());
            let weakened = Ty::Sub(
                Rc::new(want.clone()),
                Rc::new(Sub::Proj1(Rc::new(Sub::Id))),
            );
            let tb = check(&inner, body, &weakened, fuel)?;
            Ok(Rc::new(apply(&Rc::new(Tm::Lam(tb)), &ta)))
        }
        _ => {
            let (t, got) = infer(scope, e, fuel)?;
            match conv_ty(&scope.ctx, &got, want, fuel).map_err(ElabError::Internal)? {
                crate::normal::Dec::Equal => Ok(t),
                crate::normal::Dec::NotEqual(_) => type_err(
                    e.pos,
                    format!(
                        "type mismatch: expected `{}`, found `{}`",
                        scope.show_ty(want, fuel),
                        scope.show_ty(&got, fuel)
                    ),
                ),
            }
        }
    }
}

/// Elaborates a surface term standing in type position.
pub fn elab_type(scope: &Scope, e: &Surface, fuel: &Fuel) -> Result<Ty, ElabError> {
    match &e.kind {
        SurfKind::U => Ok(Ty::U),
        SurfKind::El(inner) => {
            let t = check(scope, inner, &Ty::U, fuel)?;
            Ok(Ty::El(t))
        }
        SurfKind::Pi(name, dom, cod) => {
            let dom_ty = elab_type(scope, dom, fuel)?;
            let inner = scope.extended(name.clone(), dom_ty.clone());
            let cod_ty = elab_type(&inner, cod, fuel)?;
            Ok(Ty::Pi(Rc::new(dom_ty), Rc::new(cod_ty)))
        }
        _ => type_err(e.pos, "not a type"),
    }
}

/// Runs a file's items against an initially empty signature: `assume`
/// extends it, `check` elaborates and discards.
pub fn process_items(items: &[Item], fuel: &Fuel) -> Result<Scope, ElabError> {
    let mut scope = Scope::empty();
    for item in items {
        match &item.kind {
            ItemKind::Assume(name, ty) => {
                let t = elab_type(&scope, ty, fuel)?;
                scope = scope.extended(name.clone(), t);
            }
            ItemKind::Check(e, ty) => {
                let t = elab_type(&scope, ty, fuel)?;
                check(&scope, e, &t, fuel)?;
            }
        }
    }
    Ok(scope)
}

/// The type of a neutral term, recomputed on demand; `None` on a
/// malformed neutral (out-of-scope head or non-function applied).
pub fn type_of_ne(ctx: &Ctx, n: &Ne) -> Option<Ty> {
    match n {
        Ne::Var(x) => {
            if x.0 < ctx.len() {
                Some(var_ty(ctx, *x))
            } else {
                None
            }
        }
        Ne::App(head, arg) => {
            let head_ty = type_of_ne(ctx, head)?;
            match norm_ty(&head_ty) {
                NTy::Pi(_, cod) => {
                    let arg_tm = Rc::new(embed_nf(arg));
                    Some(Ty::Sub(
                        Rc::new(embed_nty(&cod)),
                        Rc::new(single(&arg_tm)),
                    ))
                }
                _ => None,
            }
        }
    }
}

// ---------------------------------------------------------------------
// Defensive core-level checking.
//
// The core syntax erases the annotations that would make full type
// inference possible (an extension `(s, t)` does not record the type
// its target gained), so this checker is deliberately partial: shapes
// whose typing cannot be reconstructed report `NotInferable` rather
// than guessing. Elaborated output re-checks cleanly wherever the
// expected type is known.
// ---------------------------------------------------------------------

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("core shape error: {0}")]
    Shape(&'static str),
    #[error("core type mismatch")]
    Mismatch,
    #[error("typing not reconstructible from erased data")]
    NotInferable,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn require_conv_ty(ctx: &Ctx, got: &Ty, want: &Ty, fuel: &Fuel) -> Result<(), CoreError> {
    match conv_ty(ctx, got, want, fuel)? {
        crate::normal::Dec::Equal => Ok(()),
        crate::normal::Dec::NotEqual(_) => Err(CoreError::Mismatch),
    }
}

fn ctx_conv(c0: &Ctx, c1: &Ctx, fuel: &Fuel) -> Result<(), CoreError> {
    if c0.len() != c1.len() {
        return Err(CoreError::Mismatch);
    }
    for i in 0..c0.len() {
        require_conv_ty(&c0.prefix(i), c0.entry(i), c1.entry(i), fuel)?;
    }
    Ok(())
}

/// Whether `s` (with inferred target `tgt`) denotes the identity on
/// `ctx`, decided by normalising it as a substitution.
fn sub_is_identity(ctx: &Ctx, tgt: &Ctx, s: &Sub, fuel: &Fuel) -> Result<bool, CoreError> {
    if tgt.len() != ctx.len() || ctx_conv(tgt, ctx, fuel).is_err() {
        return Ok(false);
    }
    let got = crate::nbe::norm_sub(ctx, tgt, s, fuel)?;
    let id = crate::nbe::norm_sub(ctx, tgt, &Sub::Id, fuel)?;
    Ok(got == id)
}

/// Exposes the Pi structure of a type without normalising its
/// components, so substitutions under binders stay literal and
/// re-checkable.
fn pi_decompose(a: &Ty) -> Option<(Ty, Ty)> {
    match a {
        Ty::Pi(dom, cod) => Some(((**dom).clone(), (**cod).clone())),
        Ty::Sub(inner, f) => {
            let (dom, cod) = pi_decompose(inner)?;
            Some((
                Ty::Sub(Rc::new(dom), f.clone()),
                Ty::Sub(Rc::new(cod), Rc::new(lift(f))),
            ))
        }
        _ => None,
    }
}

pub fn check_core_ty(ctx: &Ctx, a: &Ty, fuel: &Fuel) -> Result<(), CoreError> {
    match a {
        Ty::U => Ok(()),
        Ty::El(t) => check_core_tm(ctx, t, &Ty::U, fuel),
        Ty::Pi(dom, cod) => {
            check_core_ty(ctx, dom, fuel)?;
            check_core_ty(&ctx.extended((**dom).clone()), cod, fuel)
        }
        Ty::Sub(a, s) => {
            let mid = infer_core_sub(ctx, s, fuel)?;
            check_core_ty(&mid, a, fuel)
        }
    }
}

pub fn infer_core_sub(ctx: &Ctx, s: &Sub, fuel: &Fuel) -> Result<Ctx, CoreError> {
    match s {
        Sub::Id => Ok(ctx.clone()),
        Sub::Empty => Ok(Ctx::empty()),
        Sub::Comp(f, g) => {
            let mid = infer_core_sub(ctx, g, fuel)?;
            infer_core_sub(&mid, f, fuel)
        }
        Sub::Proj1(s) => {
            let tgt = infer_core_sub(ctx, s, fuel)?;
            match tgt.split_last() {
                Some((init, _)) => Ok(init),
                None => Err(CoreError::Shape("first projection into the empty context")),
            }
        }
        Sub::Ext(s, t) => {
            // (p1 s', p2 s') repackages s'; its target is s''s target.
            if let (Sub::Proj1(s1), Tm::Proj2(s2)) = (s.as_ref(), t.as_ref()) {
                if s1 == s2 {
                    return infer_core_sub(ctx, s1, fuel);
                }
            }
            // The lifting (f ∘ p1 id, p2 id) over a context ending in a
            // literal A[f] targets (target f, A).
            if let (Sub::Comp(f, g), Tm::Proj2(i)) = (s.as_ref(), t.as_ref()) {
                let p1_id = Sub::Proj1(Rc::new(Sub::Id));
                if **g == p1_id && **i == Sub::Id {
                    if let Some((init_ctx, Ty::Sub(a, f2))) = ctx.split_last() {
                        if f2 == f {
                            let tgt = infer_core_sub(&init_ctx, f, fuel)?;
                            return Ok(tgt.extended((**a).clone()));
                        }
                    }
                }
            }
            let init = infer_core_sub(ctx, s, fuel)?;
            // When the prefix is (convertible to) the identity the
            // extension type is the type of `t` itself; otherwise it is
            // not reconstructible from erased data.
            if **s == Sub::Id || sub_is_identity(ctx, &init, s, fuel)? {
                let a = infer_core_tm(ctx, t, fuel)?;
                Ok(init.extended(a))
            } else {
                Err(CoreError::NotInferable)
            }
        }
    }
}

pub fn check_core_sub(ctx: &Ctx, s: &Sub, want: &Ctx, fuel: &Fuel) -> Result<(), CoreError> {
    match s {
        Sub::Ext(init, t) => {
            let (want_init, a) = want
                .split_last()
                .ok_or(CoreError::Shape("extension into the empty context"))?;
            check_core_sub(ctx, init, &want_init, fuel)?;
            let expected = Ty::Sub(Rc::new(a.clone()), init.clone());
            check_core_tm(ctx, t, &expected, fuel)
        }
        Sub::Comp(f, g) => {
            let mid = infer_core_sub(ctx, g, fuel)?;
            check_core_sub(&mid, f, want, fuel)
        }
        Sub::Empty => {
            if want.is_empty() {
                Ok(())
            } else {
                Err(CoreError::Mismatch)
            }
        }
        _ => {
            let got = infer_core_sub(ctx, s, fuel)?;
            ctx_conv(&got, want, fuel)
        }
    }
}

pub fn infer_core_tm(ctx: &Ctx, t: &Tm, fuel: &Fuel) -> Result<Ty, CoreError> {
    match t {
        Tm::Proj2(s) => {
            let tgt = infer_core_sub(ctx, s, fuel)?;
            let (_, a) = tgt
                .split_last()
                .ok_or(CoreError::Shape("second projection into the empty context"))?;
            Ok(Ty::Sub(Rc::new(a.clone()), Rc::new(Sub::Proj1(s.clone()))))
        }
        Tm::Sub(t, s) => {
            let mid = infer_core_sub(ctx, s, fuel)?;
            let a = infer_core_tm(&mid, t, fuel)?;
            Ok(Ty::Sub(Rc::new(a), s.clone()))
        }
        Tm::App(f) => {
            // app (lam b) has exactly the context and type of b.
            if let Tm::Lam(body) = f.as_ref() {
                return infer_core_tm(ctx, body, fuel);
            }
            let (init, last) = ctx
                .split_last()
                .ok_or(CoreError::Shape("app in the empty context"))?;
            let fty = infer_core_tm(&init, f, fuel)?;
            match pi_decompose(&fty) {
                Some((dom, cod)) => {
                    require_conv_ty(&init, &dom, last, fuel)?;
                    Ok(cod)
                }
                None => Err(CoreError::Shape("app of a non-function")),
            }
        }
        Tm::Lam(_) => Err(CoreError::NotInferable),
    }
}

pub fn check_core_tm(ctx: &Ctx, t: &Tm, want: &Ty, fuel: &Fuel) -> Result<(), CoreError> {
    match t {
        Tm::Lam(body) => match pi_decompose(want) {
            Some((dom, cod)) => {
                let inner = ctx.extended(dom);
                check_core_tm(&inner, body, &cod, fuel)
            }
            None => Err(CoreError::Mismatch),
        },
        Tm::App(f) if matches!(f.as_ref(), Tm::Lam(_)) => {
            let Tm::Lam(body) = f.as_ref() else { unreachable!() };
            check_core_tm(ctx, body, want, fuel)
        }
        Tm::Sub(inner, s) => {
            match infer_core_tm(ctx, t, fuel) {
                Ok(got) => return require_conv_ty(ctx, &got, want, fuel),
                Err(CoreError::NotInferable) => {}
                Err(e) => return Err(e),
            }
            // β-redex (app (lam b))[(id, u)]: check the body against
            // the weakened expected type. A genuinely dependent
            // codomain cannot be reconstructed from erased data, so a
            // failure here downgrades to NotInferable.
            if let (Tm::App(f), Sub::Ext(s0, u)) = (inner.as_ref(), s.as_ref()) {
                if let Tm::Lam(body) = f.as_ref() {
                    if **s0 == Sub::Id {
                        let uty = infer_core_tm(ctx, u, fuel)?;
                        let body_ctx = ctx.extended(uty);
                        let weakened = Ty::Sub(
                            Rc::new(want.clone()),
                            Rc::new(Sub::Proj1(Rc::new(Sub::Id))),
                        );
                        return match check_core_tm(&body_ctx, body, &weakened, fuel) {
                            Ok(()) => Ok(()),
                            Err(CoreError::Mismatch) => Err(CoreError::NotInferable),
                            Err(e) => Err(e),
                        };
                    }
                }
            }
            // An identity-convertible substitution preserves the type.
            let mid = infer_core_sub(ctx, s, fuel)?;
            if sub_is_identity(ctx, &mid, s, fuel)? {
                return check_core_tm(&mid, inner, want, fuel);
            }
            Err(CoreError::NotInferable)
        }
        _ => {
            let got = infer_core_tm(ctx, t, fuel)?;
            require_conv_ty(ctx, &got, want, fuel)
        }
    }
}

/// Debug-build re-check of an elaborated (term, type) pair. Shapes the
/// partial core checker cannot reconstruct are skipped.
fn recheck(scope: &Scope, t: &Rc<Tm>, ty: &Rc<Ty>) {
    if cfg!(debug_assertions) {
        let fuel = Fuel::default();
        match check_core_tm(&scope.ctx, t, ty, &fuel) {
            Ok(()) | Err(CoreError::NotInferable) | Err(CoreError::Eval(_)) => {}
            Err(e) => panic!("elaboration produced an ill-typed term: {e} (term {t}, type {ty})"),
        }
    }
}
