//! η-long β-normal forms and neutral terms, their renaming and
//! embedding into the syntax, decidable equality, and normal types.
//!
//! Neutral terms have a variable in head position. Normal forms are
//! indexed by (not necessarily normal) types: `NeuU` only occurs at
//! `U`, `NeuEl` only at `El` types, and `Lam` only at Pi types, so a
//! neutral is never bare at a Pi type (η-longness).
//!
//! Normal types have all substitutions pushed inward; the term under
//! `El` may remain non-normal.

use std::rc::Rc;

use crate::elab::type_of_ne;
use crate::eval::Fuel;
use crate::nbe::conv;
use crate::ren::{embed_var, var_ty, Renaming, Var};
use crate::syntax::{apply, lift, single, Ctx, Sub, Tm, Ty};

/// Neutral terms: a variable applied to a spine of normal arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ne {
    Var(Var),
    App(Rc<Ne>, Rc<Nf>),
}

/// η-long β-normal forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nf {
    NeuU(Rc<Ne>),
    NeuEl(Rc<Ne>),
    Lam(Rc<Nf>),
}

/// A list of normal forms matched entrywise to a target context,
/// innermost entry last.
pub type NfList = Vec<Nf>;

/// A list of neutral terms matched to a target context.
pub type NeList = Vec<Ne>;

/// Normal types: substitution-free at the type level. The embedded
/// term under `El` is arbitrary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NTy {
    U,
    El(Rc<Tm>),
    Pi(Rc<NTy>, Rc<NTy>),
}

/// Result of a decision procedure. The negative branch carries a
/// reason tag rather than a refutation function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dec {
    Equal,
    NotEqual(Mismatch),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mismatch {
    /// Disjoint head constructors.
    Constructor,
    /// Distinct variables.
    Variable,
    /// A subcomparison failed.
    Recursive,
}

impl Dec {
    pub fn is_equal(self) -> bool {
        matches!(self, Dec::Equal)
    }
}

impl Ne {
    pub fn rc(self) -> Rc<Ne> {
        Rc::new(self)
    }

    pub fn size(&self) -> usize {
        match self {
            Ne::Var(_) => 1,
            Ne::App(n, v) => 1 + n.size() + v.size(),
        }
    }
}

impl Nf {
    pub fn rc(self) -> Rc<Nf> {
        Rc::new(self)
    }

    pub fn size(&self) -> usize {
        match self {
            Nf::NeuU(n) | Nf::NeuEl(n) => 1 + n.size(),
            Nf::Lam(v) => 1 + v.size(),
        }
    }
}

pub fn embed_ne(n: &Ne) -> Tm {
    match n {
        Ne::Var(x) => embed_var(*x),
        Ne::App(n, v) => apply(&Rc::new(embed_ne(n)), &Rc::new(embed_nf(v))),
    }
}

pub fn embed_nf(v: &Nf) -> Tm {
    match v {
        Nf::NeuU(n) | Nf::NeuEl(n) => embed_ne(n),
        Nf::Lam(b) => Tm::Lam(Rc::new(embed_nf(b))),
    }
}

pub fn embed_nf_list(vs: &[Nf]) -> Sub {
    match vs.split_last() {
        None => Sub::Empty,
        Some((last, init)) => {
            Sub::Ext(Rc::new(embed_nf_list(init)), Rc::new(embed_nf(last)))
        }
    }
}

pub fn embed_ne_list(ns: &[Ne]) -> Sub {
    match ns.split_last() {
        None => Sub::Empty,
        Some((last, init)) => {
            Sub::Ext(Rc::new(embed_ne_list(init)), Rc::new(embed_ne(last)))
        }
    }
}

pub fn rename_ne(n: &Ne, beta: &Renaming) -> Ne {
    match n {
        Ne::Var(x) => Ne::Var(beta.rename_var(*x)),
        Ne::App(n, v) => Ne::App(Rc::new(rename_ne(n, beta)), Rc::new(rename_nf(v, beta))),
    }
}

pub fn rename_nf(v: &Nf, beta: &Renaming) -> Nf {
    match v {
        Nf::NeuU(n) => Nf::NeuU(Rc::new(rename_ne(n, beta))),
        Nf::NeuEl(n) => Nf::NeuEl(Rc::new(rename_ne(n, beta))),
        Nf::Lam(b) => Nf::Lam(Rc::new(rename_nf(b, &beta.lift()))),
    }
}

pub fn rename_nf_list(vs: &[Nf], beta: &Renaming) -> NfList {
    vs.iter().map(|v| rename_nf(v, beta)).collect()
}

/// Pushes substitutions down to the leaves of a type. Total even on
/// ill-formed input.
pub fn norm_ty(a: &Ty) -> NTy {
    match a {
        Ty::U => NTy::U,
        Ty::El(t) => NTy::El(t.clone()),
        Ty::Pi(a, b) => NTy::Pi(Rc::new(norm_ty(a)), Rc::new(norm_ty(b))),
        Ty::Sub(a, s) => norm_ty_under(a, s),
    }
}

fn norm_ty_under(a: &Ty, s: &Rc<Sub>) -> NTy {
    match a {
        Ty::U => NTy::U,
        Ty::El(t) => NTy::El(Rc::new(Tm::Sub(t.clone(), s.clone()))),
        Ty::Pi(dom, cod) => NTy::Pi(
            Rc::new(norm_ty_under(dom, s)),
            Rc::new(norm_ty_under(cod, &Rc::new(lift(s)))),
        ),
        Ty::Sub(a2, s2) => norm_ty_under(a2, &Rc::new(Sub::Comp(s2.clone(), s.clone()))),
    }
}

pub fn embed_nty(a: &NTy) -> Ty {
    match a {
        NTy::U => Ty::U,
        NTy::El(t) => Ty::El(t.clone()),
        NTy::Pi(a, b) => Ty::Pi(Rc::new(embed_nty(a)), Rc::new(embed_nty(b))),
    }
}

/// Extracts the paired components of two Pi-shaped normal types so the
/// caller can compare domains (and codomains under equal domains).
/// `None` signals a shape mismatch, which is a caller bug.
pub fn inj_pi<'a>(
    n0: &'a NTy,
    n1: &'a NTy,
) -> Option<((&'a NTy, &'a NTy), (&'a NTy, &'a NTy))> {
    match (n0, n1) {
        (NTy::Pi(a0, b0), NTy::Pi(a1, b1)) => Some(((a0, a1), (b0, b1))),
        _ => None,
    }
}

/// Extracts the embedded terms of two El-shaped normal types.
pub fn inj_el<'a>(n0: &'a NTy, n1: &'a NTy) -> Option<(&'a Tm, &'a Tm)> {
    match (n0, n1) {
        (NTy::El(t0), NTy::El(t1)) => Some((t0, t1)),
        _ => None,
    }
}

/// Splits two extended contexts into their prefixes and last entries.
pub fn inj_ctx_ext<'a>(
    c0: &'a Ctx,
    c1: &'a Ctx,
) -> Option<((Ctx, &'a Ty), (Ctx, &'a Ty))> {
    Some((c0.split_last()?, c1.split_last()?))
}

/// Decides equality of two variables of the same context; the context
/// determines their types.
pub fn dec_var(x0: Var, x1: Var) -> Dec {
    if x0 == x1 {
        Dec::Equal
    } else {
        Dec::NotEqual(Mismatch::Variable)
    }
}

/// Decides equality of two neutral terms in the same context. A
/// positive answer implicitly settles that the types agree. When the
/// heads of two applications agree, injectivity of Pi gives a shared
/// domain at which the arguments are compared.
pub fn dec_ne(n0: &Ne, n1: &Ne, ctx: &Ctx) -> Dec {
    match (n0, n1) {
        (Ne::Var(x0), Ne::Var(x1)) => dec_var(*x0, *x1),
        (Ne::App(m0, v0), Ne::App(m1, v1)) => match dec_ne(m0, m1, ctx) {
            Dec::Equal => {
                let head_ty = match type_of_ne(ctx, m0) {
                    Some(ty) => ty,
                    None => return Dec::NotEqual(Mismatch::Constructor),
                };
                match norm_ty(&head_ty) {
                    NTy::Pi(dom, _) => dec_nf(v0, v1, ctx, &embed_nty(&dom)),
                    _ => Dec::NotEqual(Mismatch::Constructor),
                }
            }
            neq => neq,
        },
        _ => Dec::NotEqual(Mismatch::Constructor),
    }
}

/// Decides equality of two normal forms at a given type in a given
/// context. Pairs that violate the typing precondition come out as
/// `NotEqual` rather than diverging.
pub fn dec_nf(v0: &Nf, v1: &Nf, ctx: &Ctx, ty: &Ty) -> Dec {
    match (v0, v1) {
        (Nf::Lam(b0), Nf::Lam(b1)) => match norm_ty(ty) {
            NTy::Pi(dom, cod) => dec_nf(
                b0,
                b1,
                &ctx.extended(embed_nty(&dom)),
                &embed_nty(&cod),
            ),
            _ => Dec::NotEqual(Mismatch::Constructor),
        },
        (Nf::NeuU(n0), Nf::NeuU(n1)) | (Nf::NeuEl(n0), Nf::NeuEl(n1)) => dec_ne(n0, n1, ctx),
        _ => Dec::NotEqual(Mismatch::Constructor),
    }
}

/// All neutral terms over `ctx` of size at most `bound`, paired with
/// their types, in a deterministic order.
pub fn enumerate_ne(ctx: &Ctx, bound: usize) -> Vec<(Ne, Ty)> {
    let mut out: Vec<(Ne, Ty)> = Vec::new();
    if bound == 0 {
        return out;
    }
    for k in 0..ctx.len() {
        out.push((Ne::Var(Var(k)), var_ty(ctx, Var(k))));
    }
    // Grow application spines until no head has budget left.
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (head, head_ty) in &frontier {
            let head_size = head.size();
            if head_size + 2 > bound {
                continue;
            }
            if let NTy::Pi(dom, cod) = norm_ty(head_ty) {
                let dom_ty = embed_nty(&dom);
                for v in enumerate_nf(ctx, &dom_ty, bound - head_size - 1) {
                    let arg = Rc::new(embed_nf(&v));
                    let app_ty = Ty::Sub(Rc::new(embed_nty(&cod)), Rc::new(single(&arg)));
                    next.push((Ne::App(Rc::new(head.clone()), Rc::new(v)), app_ty));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Exactly the well-typed normal forms of type `ty` over `ctx` with
/// size at most `bound`, in a deterministic order. η-longness means a
/// Pi type only ever yields `Lam`s.
pub fn enumerate_nf(ctx: &Ctx, ty: &Ty, bound: usize) -> Vec<Nf> {
    if bound == 0 {
        return Vec::new();
    }
    match norm_ty(ty) {
        NTy::Pi(dom, cod) => {
            let inner = ctx.extended(embed_nty(&dom));
            enumerate_nf(&inner, &embed_nty(&cod), bound - 1)
                .into_iter()
                .map(|b| Nf::Lam(Rc::new(b)))
                .collect()
        }
        NTy::U => enumerate_ne(ctx, bound - 1)
            .into_iter()
            .filter(|(_, t)| norm_ty(t) == NTy::U)
            .map(|(n, _)| Nf::NeuU(Rc::new(n)))
            .collect(),
        NTy::El(want) => {
            let fuel = Fuel::default();
            enumerate_ne(ctx, bound - 1)
                .into_iter()
                .filter(|(_, t)| match norm_ty(t) {
                    NTy::El(got) => conv(ctx, &Ty::U, &got, &want, &fuel)
                        .map(Dec::is_equal)
                        .unwrap_or(false),
                    _ => false,
                })
                .map(|(n, _)| Nf::NeuEl(Rc::new(n)))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::text::{parse_tm, parse_ty};

    fn ty(s: &str) -> Ty {
        (*parse_ty(s).unwrap()).clone()
    }

    fn tm(s: &str) -> Tm {
        (*parse_tm(s).unwrap()).clone()
    }

    #[test]
    fn embed_examples() {
        let v = Nf::NeuU(Rc::new(Ne::Var(Var(0))));
        assert_eq!(embed_nf(&v), tm("p2 id"));

        let n = Ne::App(
            Rc::new(Ne::Var(Var(1))),
            Rc::new(Nf::NeuU(Rc::new(Ne::Var(Var(0))))),
        );
        assert_eq!(embed_ne(&n), tm("(app (p2 id[p1 id]))[(id, p2 id)]"));
    }

    #[test]
    fn rename_nf_example() {
        let v = Nf::NeuU(Rc::new(Ne::Var(Var(0))));
        let beta = Renaming::new(vec![Var(1)], 2);
        assert_eq!(rename_nf(&v, &beta), Nf::NeuU(Rc::new(Ne::Var(Var(1)))));
    }

    #[test]
    fn norm_ty_pushes_substitutions() {
        assert_eq!(norm_ty(&ty("U[eps]")), NTy::U);
        assert_eq!(
            norm_ty(&ty("(El (p2 id))[p1 id]")),
            NTy::El(Rc::new(tm("(p2 id)[p1 id]")))
        );
        // (Pi A B)[s] normalizes componentwise with the lifted
        // substitution on the codomain.
        let got = norm_ty(&ty("(Pi U (El (p2 id)))[p1 id]"));
        let want = NTy::Pi(
            Rc::new(NTy::U),
            Rc::new(NTy::El(Rc::new(tm(
                "(p2 id)[(p1 id o p1 id, p2 id)]",
            )))),
        );
        assert_eq!(got, want);
        // Stacked substitutions compose.
        assert_eq!(
            norm_ty(&ty("(El (p2 id))[p1 id][eps]")),
            NTy::El(Rc::new(tm("(p2 id)[p1 id o eps]")))
        );
    }

    #[test]
    fn embed_nty_round_trip() {
        assert_eq!(embed_nty(&NTy::U), Ty::U);
        let pi_uu = NTy::Pi(Rc::new(NTy::U), Rc::new(NTy::U));
        assert_eq!(norm_ty(&embed_nty(&pi_uu)), pi_uu);
    }

    #[test]
    fn inj_helpers_extract_components() {
        let pi = NTy::Pi(Rc::new(NTy::U), Rc::new(NTy::U));
        let ((a0, a1), _) = inj_pi(&pi, &pi).unwrap();
        assert_eq!(a0, a1);
        assert!(inj_pi(&pi, &NTy::U).is_none());

        let el = NTy::El(Rc::new(tm("p2 id")));
        let (t0, t1) = inj_el(&el, &el).unwrap();
        assert_eq!(t0, t1);
    }

    #[test]
    fn dec_var_examples() {
        assert_eq!(dec_var(Var(0), Var(0)), Dec::Equal);
        assert_eq!(dec_var(Var(0), Var(1)), Dec::NotEqual(Mismatch::Variable));
    }

    #[test]
    fn dec_nf_examples() {
        let ctx = Ctx::empty().extended(Ty::U).extended(Ty::U);
        let v0 = Nf::NeuU(Rc::new(Ne::Var(Var(0))));
        let v1 = Nf::NeuU(Rc::new(Ne::Var(Var(1))));
        assert_eq!(dec_nf(&v0, &v0.clone(), &ctx, &Ty::U), Dec::Equal);
        assert!(!dec_nf(&v0, &v1, &ctx, &Ty::U).is_equal());
    }

    #[test]
    fn dec_ne_constructor_mismatch() {
        let ctx = Ctx::empty()
            .extended(ty("Pi U U"))
            .extended(Ty::U);
        let var = Ne::Var(Var(0));
        let app = Ne::App(
            Rc::new(Ne::Var(Var(1))),
            Rc::new(Nf::NeuU(Rc::new(Ne::Var(Var(0))))),
        );
        assert_eq!(
            dec_ne(&var, &app, &ctx),
            Dec::NotEqual(Mismatch::Constructor)
        );
        assert_eq!(dec_ne(&app, &app.clone(), &ctx), Dec::Equal);
    }

    #[test]
    fn enumerate_nf_consistency_at_empty() {
        for k in 0..=10 {
            assert!(enumerate_nf(&Ctx::empty(), &Ty::U, k).is_empty());
        }
    }

    #[test]
    fn enumerate_nf_single_variable() {
        let ctx = Ctx::empty().extended(Ty::U);
        assert_eq!(
            enumerate_nf(&ctx, &Ty::U, 3),
            vec![Nf::NeuU(Rc::new(Ne::Var(Var(0))))]
        );
    }

    #[test]
    fn enumerate_nf_eta_long_at_pi() {
        let ctx = Ctx::empty().extended(ty("Pi U U"));
        let nfs = enumerate_nf(&ctx, &ty("Pi U U"), 8);
        // \x. f x is present, and nothing at a Pi type is a bare neutral.
        let eta = Nf::Lam(Rc::new(Nf::NeuU(Rc::new(Ne::App(
            Rc::new(Ne::Var(Var(1))),
            Rc::new(Nf::NeuU(Rc::new(Ne::Var(Var(0))))),
        )))));
        assert!(nfs.contains(&eta));
        assert!(nfs.iter().all(|v| matches!(v, Nf::Lam(_))));
    }
}
