//! Type-directed quote and unquote, and the top-level entry points:
//! normalisation, the conversion decision procedure, and type
//! conversion.
//!
//! Quote is directed by semantic types, so substituted types are
//! already absorbed by evaluation before quoting ever looks at them.
//! The fresh-variable step at Pi follows the weakening of the identity
//! renaming; no name generation is involved, which keeps normal forms
//! comparable purely structurally.

use std::rc::Rc;

use crate::eval::{
    apply_value, eval_sub, eval_tm, eval_ty, fresh_env, rename_vtype, Env, EvalError, Fuel,
    VType, Value,
};
use crate::normal::{dec_nf, norm_ty, Dec, Mismatch, Ne, Nf, NfList, NTy};
use crate::ren::{Renaming, Var};
use crate::syntax::{Ctx, Sub, Tm, Ty};

/// Injects a neutral term into the semantic domain at a semantic type.
/// At a Pi type the application behaviour (quote the argument, extend
/// the spine) is provided by `apply_value`'s neutral branch.
pub fn unquote(ty: Rc<VType>, n: Rc<Ne>) -> Rc<Value> {
    Rc::new(Value::Neutral(n, ty))
}

/// Reads a value back as an η-long β-normal form. `depth` is the
/// length of the ambient context.
pub fn quote(ty: &VType, v: &Value, depth: usize, fuel: &Fuel) -> Result<Nf, EvalError> {
    fuel.tick()?;
    match ty {
        VType::U => match v {
            Value::Neutral(n, _) => Ok(Nf::NeuU(n.clone())),
            Value::Fun(_) => Err(EvalError::Stuck("quote at U of a function value")),
        },
        VType::El(_) => match v {
            Value::Neutral(n, _) => Ok(Nf::NeuEl(n.clone())),
            Value::Fun(_) => Err(EvalError::Stuck("quote at El of a function value")),
        },
        VType::Pi(dom, cod) => {
            // Weaken into the extended context, unquote the new
            // variable at the domain, apply, and quote the result at
            // the instantiated codomain.
            let wk = Renaming::identity(depth).weaken();
            let dom = Rc::new(rename_vtype(dom, &wk));
            let fresh = unquote(dom, Rc::new(Ne::Var(Var(0))));
            let applied = apply_value(v, &wk, fresh.clone(), fuel)?;
            let cod = cod.apply(&wk, fresh, fuel)?;
            let body = quote(&cod, &applied, depth + 1, fuel)?;
            Ok(Nf::Lam(Rc::new(body)))
        }
    }
}

/// Normalises a term: evaluate in the initial environment of the
/// context and quote at the evaluated type. The caller is responsible
/// for `t` actually having type `ty` over `ctx`.
pub fn norm(ctx: &Ctx, ty: &Ty, t: &Tm, fuel: &Fuel) -> Result<Nf, EvalError> {
    let env = fresh_env(ctx, fuel)?;
    let vt = eval_ty(ty, &env, fuel)?;
    let v = eval_tm(t, &env, fuel)?;
    quote(&vt, &v, ctx.len(), fuel)
}

/// Decides definitional equality of two terms of the same type by
/// comparing normal forms.
pub fn conv(ctx: &Ctx, ty: &Ty, t0: &Tm, t1: &Tm, fuel: &Fuel) -> Result<Dec, EvalError> {
    let n0 = norm(ctx, ty, t0, fuel)?;
    let n1 = norm(ctx, ty, t1, fuel)?;
    Ok(dec_nf(&n0, &n1, ctx, ty))
}

/// Decides equality of two types: their normal types must agree
/// structurally, except that terms embedded under `El` are compared by
/// full normalisation (structural comparison there would be
/// incomplete).
pub fn conv_ty(ctx: &Ctx, a0: &Ty, a1: &Ty, fuel: &Fuel) -> Result<Dec, EvalError> {
    conv_nty(ctx, &norm_ty(a0), &norm_ty(a1), fuel)
}

fn conv_nty(ctx: &Ctx, n0: &NTy, n1: &NTy, fuel: &Fuel) -> Result<Dec, EvalError> {
    match (n0, n1) {
        (NTy::U, NTy::U) => Ok(Dec::Equal),
        (NTy::El(t0), NTy::El(t1)) => conv(ctx, &Ty::U, t0, t1, fuel),
        (NTy::Pi(a0, b0), NTy::Pi(a1, b1)) => {
            match conv_nty(ctx, a0, a1, fuel)? {
                Dec::Equal => {}
                neq => return Ok(neq),
            }
            let inner = ctx.extended(crate::normal::embed_nty(a0));
            conv_nty(&inner, b0, b1, fuel)
        }
        _ => Ok(Dec::NotEqual(Mismatch::Constructor)),
    }
}

/// Quotes a whole environment against its target context, yielding the
/// normal substitution it denotes. This is the context-level quote; the
/// normaliser itself only ever needs its unquote counterpart
/// ([`fresh_env`]), but substitution-sorted equations are checked
/// through this.
pub fn quote_env(tgt: &Ctx, env: &Env, fuel: &Fuel) -> Result<NfList, EvalError> {
    if env.len() != tgt.len() {
        return Err(EvalError::Stuck("environment/context length mismatch"));
    }
    let mut out = Vec::with_capacity(env.len());
    for i in 0..env.len() {
        let vt = eval_ty(tgt.entry(i), &env.prefix(i), fuel)?;
        out.push(quote(&vt, env.value(i), env.depth(), fuel)?);
    }
    Ok(out)
}

/// Normalises a substitution from `src` to `tgt` by evaluating it in
/// the initial environment and quoting the resulting environment.
pub fn norm_sub(src: &Ctx, tgt: &Ctx, s: &Sub, fuel: &Fuel) -> Result<NfList, EvalError> {
    let env = fresh_env(src, fuel)?;
    let rho = eval_sub(s, &env, fuel)?;
    quote_env(tgt, &rho, fuel)
}

/// A fully normal type: substitution-free with normal embedded terms.
/// Read back from semantic types; used for canonical type comparison in
/// tests and for diagnostics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NfTy {
    U,
    El(Nf),
    Pi(Rc<NfTy>, Rc<NfTy>),
}

/// Reads a semantic type back to a fully normal type.
pub fn quote_vtype(ty: &VType, depth: usize, fuel: &Fuel) -> Result<NfTy, EvalError> {
    fuel.tick()?;
    match ty {
        VType::U => Ok(NfTy::U),
        VType::El(v) => Ok(NfTy::El(quote(&VType::U, v, depth, fuel)?)),
        VType::Pi(dom, cod) => {
            let wk = Renaming::identity(depth).weaken();
            let dom_w = Rc::new(rename_vtype(dom, &wk));
            let dom_nf = quote_vtype(dom, depth, fuel)?;
            let fresh = unquote(dom_w, Rc::new(Ne::Var(Var(0))));
            let cod = cod.apply(&wk, fresh, fuel)?;
            let cod_nf = quote_vtype(&cod, depth + 1, fuel)?;
            Ok(NfTy::Pi(Rc::new(dom_nf), Rc::new(cod_nf)))
        }
    }
}

/// Normalises a type fully, embedded terms included.
pub fn norm_ty_full(ctx: &Ctx, a: &Ty, fuel: &Fuel) -> Result<NfTy, EvalError> {
    let env = fresh_env(ctx, fuel)?;
    let vt = eval_ty(a, &env, fuel)?;
    quote_vtype(&vt, ctx.len(), fuel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::text::{parse_sub, parse_tm, parse_ty};

    fn ctx(entries: &[&str]) -> Ctx {
        let mut c = Ctx::empty();
        for e in entries {
            c = c.extended((*parse_ty(e).unwrap()).clone());
        }
        c
    }

    fn nf(s: &str, c: &Ctx, ty: &str) -> Nf {
        let fuel = Fuel::default();
        norm(c, &parse_ty(ty).unwrap(), &parse_tm(s).unwrap(), &fuel).unwrap()
    }

    #[test]
    fn quote_variable_at_base_type() {
        let fuel = Fuel::default();
        let c = ctx(&["U"]);
        let env = fresh_env(&c, &fuel).unwrap();
        let v = eval_tm(&parse_tm("p2 id").unwrap(), &env, &fuel).unwrap();
        assert_eq!(
            quote(&VType::U, &v, 1, &fuel).unwrap(),
            Nf::NeuU(Rc::new(Ne::Var(Var(0))))
        );
    }

    #[test]
    fn norm_identity_lambda() {
        let got = nf("lam (p2 id)", &Ctx::empty(), "Pi U U");
        assert_eq!(got, Nf::Lam(Rc::new(Nf::NeuU(Rc::new(Ne::Var(Var(0)))))));
    }

    #[test]
    fn norm_eta_expands_pi_variable() {
        let c = ctx(&["Pi U U"]);
        let got = nf("p2 id", &c, "Pi U U");
        let want = Nf::Lam(Rc::new(Nf::NeuU(Rc::new(Ne::App(
            Rc::new(Ne::Var(Var(1))),
            Rc::new(Nf::NeuU(Rc::new(Ne::Var(Var(0))))),
        )))));
        assert_eq!(got, want);
    }

    #[test]
    fn norm_beta_reduces() {
        let c = ctx(&["U"]);
        let got = nf("(app (lam (p2 id)))[(id, p2 id)]", &c, "U");
        assert_eq!(got, Nf::NeuU(Rc::new(Ne::Var(Var(0)))));
    }

    #[test]
    fn conv_is_reflexive_and_sees_beta_under_lam() {
        let fuel = Fuel::default();
        let t = parse_tm("lam (p2 id)").unwrap();
        let pi_uu = parse_ty("Pi U U").unwrap();
        assert_eq!(
            conv(&Ctx::empty(), &pi_uu, &t, &t, &fuel).unwrap(),
            Dec::Equal
        );
        // \x. (\y. y) x  is convertible to  \x. x.
        let redex = parse_tm("lam ((app (lam (p2 id)))[(id, p2 id)])").unwrap();
        assert_eq!(
            conv(&Ctx::empty(), &pi_uu, &t, &redex, &fuel).unwrap(),
            Dec::Equal
        );
    }

    #[test]
    fn conv_distinguishes_variables() {
        let fuel = Fuel::default();
        let c = ctx(&["U", "U"]);
        let t0 = parse_tm("p2 id").unwrap();
        let t1 = parse_tm("p2 id[p1 id]").unwrap();
        assert!(!conv(&c, &Ty::U, &t0, &t1, &fuel).unwrap().is_equal());
    }

    #[test]
    fn conv_ty_examples() {
        let fuel = Fuel::default();
        let c = ctx(&["U"]);
        // U[s] is U.
        assert_eq!(
            conv_ty(&c, &parse_ty("U[p1 id]").unwrap(), &Ty::U, &fuel).unwrap(),
            Dec::Equal
        );
        // Head mismatch.
        assert!(!conv_ty(&c, &parse_ty("Pi U U").unwrap(), &Ty::U, &fuel)
            .unwrap()
            .is_equal());
        // El contents are compared up to conversion: El ((\x.x) a) = El a.
        let a0 = parse_ty("El ((app (lam (p2 id)))[(id, p2 id)])").unwrap();
        let a1 = parse_ty("El (p2 id)").unwrap();
        assert_eq!(conv_ty(&c, &a0, &a1, &fuel).unwrap(), Dec::Equal);
    }

    #[test]
    fn eval_ty_collapses_substitution_stacks() {
        let fuel = Fuel::default();
        let c = ctx(&["U", "U"]);
        let env = fresh_env(&c, &fuel).unwrap();
        let stacked = parse_ty("(El (p2 id))[p1 id][(id, p2 id)]").unwrap();
        let composed = parse_ty("(El (p2 id))[p1 id o (id, p2 id)]").unwrap();
        let q0 = quote_vtype(&eval_ty(&stacked, &env, &fuel).unwrap(), 2, &fuel).unwrap();
        let q1 = quote_vtype(&eval_ty(&composed, &env, &fuel).unwrap(), 2, &fuel).unwrap();
        assert_eq!(q0, q1);
    }

    #[test]
    fn norm_sub_identity_is_eta_expanded_identity() {
        let fuel = Fuel::default();
        let c = ctx(&["U", "U"]);
        let got = norm_sub(&c, &c, &Sub::Id, &fuel).unwrap();
        assert_eq!(
            got,
            vec![
                Nf::NeuU(Rc::new(Ne::Var(Var(1)))),
                Nf::NeuU(Rc::new(Ne::Var(Var(0)))),
            ]
        );
        let eta = parse_sub("(p1 id, p2 id)").unwrap();
        assert_eq!(norm_sub(&c, &c, &eta, &fuel).unwrap(), got);
    }
}
