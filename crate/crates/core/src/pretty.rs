//! Resugaring printer: de Bruijn normal forms back to named surface
//! syntax. Binder names are drawn deterministically from `x, x1, x2, …`,
//! skipping anything already in scope, so output is stable enough for
//! golden files.

use crate::eval::Fuel;
use crate::nbe::{norm_ty_full, NfTy};
use crate::normal::{Ne, Nf};
use crate::syntax::{text, Ctx, Ty};

fn fresh_name(used: &[String]) -> String {
    let mut i = 0usize;
    loop {
        let cand = if i == 0 { "x".to_string() } else { format!("x{i}") };
        if !used.iter().any(|n| *n == cand) {
            return cand;
        }
        i += 1;
    }
}

fn var_name(names: &[String], index: usize) -> String {
    if index < names.len() {
        names[names.len() - 1 - index].clone()
    } else {
        // Out-of-scope index; only reachable on malformed input.
        format!("?{}", index - names.len())
    }
}

/// Prints a normal form. `names` are the ambient context's names,
/// outermost first.
pub fn nf(v: &Nf, names: &[String]) -> String {
    let mut scope = names.to_vec();
    go_nf(v, &mut scope)
}

/// Prints a neutral term.
pub fn ne(n: &Ne, names: &[String]) -> String {
    let mut scope = names.to_vec();
    go_ne(n, &mut scope, false)
}

fn go_nf(v: &Nf, scope: &mut Vec<String>) -> String {
    match v {
        Nf::Lam(b) => {
            let name = fresh_name(scope);
            scope.push(name.clone());
            let body = go_nf(b, scope);
            scope.pop();
            format!("\\{name}. {body}")
        }
        Nf::NeuU(n) | Nf::NeuEl(n) => go_ne(n, scope, false),
    }
}

fn go_ne(n: &Ne, scope: &mut Vec<String>, atom: bool) -> String {
    match n {
        Ne::Var(x) => var_name(scope, x.0),
        Ne::App(head, arg) => {
            let s = format!(
                "{} {}",
                go_ne(head, scope, false),
                go_nf_atom(arg, scope)
            );
            if atom {
                format!("({s})")
            } else {
                s
            }
        }
    }
}

fn go_nf_atom(v: &Nf, scope: &mut Vec<String>) -> String {
    match v {
        Nf::Lam(_) => format!("({})", go_nf(v, scope)),
        Nf::NeuU(n) | Nf::NeuEl(n) => go_ne(n, scope, true),
    }
}

/// Prints a fully normal type in surface notation.
pub fn nf_ty(t: &NfTy, names: &[String]) -> String {
    let mut scope = names.to_vec();
    go_nf_ty(t, &mut scope)
}

fn go_nf_ty(t: &NfTy, scope: &mut Vec<String>) -> String {
    match t {
        NfTy::U => "U".to_string(),
        NfTy::El(v) => format!("El {}", go_nf_atom(v, scope)),
        NfTy::Pi(dom, cod) => {
            let dom_s = go_nf_ty(dom, scope);
            let name = fresh_name(scope);
            scope.push(name.clone());
            let cod_s = go_nf_ty(cod, scope);
            scope.pop();
            format!("({name} : {dom_s}) -> {cod_s}")
        }
    }
}

/// Prints a core type for diagnostics: in normal-type form with the
/// embedded terms normalised. Falls back to the raw core notation when
/// normalisation is not possible (ill-typed input, fuel).
pub fn ty(ctx: &Ctx, names: &[String], a: &Ty, fuel: &Fuel) -> String {
    match norm_ty_full(ctx, a, fuel) {
        Ok(n) => nf_ty(&n, names),
        Err(_) => text::print_ty(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nbe::norm;
    use crate::syntax::text::{parse_tm, parse_ty};

    #[test]
    fn prints_eta_long_variable() {
        let ctx = Ctx::empty().extended((*parse_ty("Pi U U").unwrap()).clone());
        let names = vec!["f".to_string()];
        let fuel = Fuel::default();
        let v = norm(
            &ctx,
            &parse_ty("Pi U U").unwrap(),
            &parse_tm("p2 id").unwrap(),
            &fuel,
        )
        .unwrap();
        assert_eq!(nf(&v, &names), "\\x. f x");
    }

    #[test]
    fn binder_names_avoid_scope_collisions() {
        let ctx = Ctx::empty().extended((*parse_ty("Pi U U").unwrap()).clone());
        let names = vec!["x".to_string()];
        let fuel = Fuel::default();
        let v = norm(
            &ctx,
            &parse_ty("Pi U U").unwrap(),
            &parse_tm("p2 id").unwrap(),
            &fuel,
        )
        .unwrap();
        assert_eq!(nf(&v, &names), "\\x1. x x1");
    }

    #[test]
    fn prints_pi_types_with_fresh_binders() {
        let fuel = Fuel::default();
        let a = parse_ty("Pi U (El (p2 id))").unwrap();
        assert_eq!(ty(&Ctx::empty(), &[], &a, &fuel), "(x : U) -> El x");
    }

    #[test]
    fn diagnostics_normalise_embedded_terms() {
        let fuel = Fuel::default();
        let ctx = Ctx::empty().extended(Ty::U);
        let names = vec!["a".to_string()];
        // El ((\y. y) a) prints as El a.
        let a = parse_ty("El ((app (lam (p2 id)))[(id, p2 id)])").unwrap();
        assert_eq!(ty(&ctx, &names, &a, &fuel), "El a");
    }
}
