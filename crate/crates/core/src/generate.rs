//! Seeded generation of well-typed syntax: contexts, types,
//! substitutions and terms, instantiation of the conversion-axiom
//! schemas, and exhaustive enumeration of small surface terms.
//!
//! Generation is compositional: canonical inhabitants (variables,
//! lambdas, application spines) are wrapped in type-preserving noise —
//! identity-convertible substitutions, β-redexes and η-expansions — so
//! generated terms exercise every equation of the calculus while
//! staying well-typed by construction.

use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::elab::{check_core_sub, check_core_tm, check_core_ty, CoreError};
use crate::eval::Fuel;
use crate::nbe::conv_ty;
use crate::normal::{embed_nty, norm_ty, NTy};
use crate::ren::{embed_var, var_ty, Var};
use crate::surface::{Pos, SurfKind, Surface};
use crate::syntax::{apply, lift, single, Ctx, Sub, Tm, Ty};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("generator exhausted while building {0}")]
    Exhausted(&'static str),
}

pub struct Gen {
    rng: ChaCha8Rng,
}

fn fits(ctx: &Ctx, got: &Ty, want: &Ty) -> bool {
    let fuel = Fuel::default();
    conv_ty(ctx, got, want, &fuel)
        .map(|d| d.is_equal())
        .unwrap_or(false)
}

fn p1_id() -> Rc<Sub> {
    Rc::new(Sub::Proj1(Rc::new(Sub::Id)))
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn coin(&mut self, percent: u32) -> bool {
        self.rng.gen_range(0..100) < percent
    }

    fn range(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A uniformly chosen index below `n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.range(n)
    }

    /// One base-shaped context entry, well-formed over the prefix.
    fn base_entry(&mut self, prefix: &Ctx) -> Ty {
        let u_vars: Vec<Var> = (0..prefix.len())
            .map(Var)
            .filter(|v| norm_ty(&var_ty(prefix, *v)) == NTy::U)
            .collect();
        let el_dom = Ty::Pi(
            Rc::new(Ty::U),
            Rc::new(Ty::El(Rc::new(embed_var(Var(0))))),
        );
        match self.range(if u_vars.is_empty() { 3 } else { 4 }) {
            0 => Ty::U,
            1 => Ty::Pi(Rc::new(Ty::U), Rc::new(Ty::U)),
            2 => el_dom,
            _ => Ty::El(Rc::new(embed_var(u_vars[self.range(u_vars.len())]))),
        }
    }

    /// A context of base-shaped entries, up to `max_len` long.
    pub fn ctx(&mut self, max_len: usize) -> Ctx {
        let len = self.range(max_len + 1);
        let mut c = Ctx::empty();
        for _ in 0..len {
            let e = self.base_entry(&c);
            c = c.extended(e);
        }
        c
    }

    /// A context guaranteed to contain a `U` assumption (so `U` and
    /// function types over it are inhabited), of length at most
    /// `max_len`. Instance builders use this to keep the retry rate
    /// sane.
    pub fn inhabited_ctx(&mut self, max_len: usize) -> Ctx {
        debug_assert!(max_len >= 1);
        let mut c = Ctx::empty();
        let len = 1 + self.range(max_len);
        let forced = self.range(len);
        for i in 0..len {
            let e = if i == forced {
                Ty::U
            } else {
                self.base_entry(&c)
            };
            c = c.extended(e);
        }
        c
    }

    /// A well-formed type over `ctx` of roughly the given size.
    pub fn ty(&mut self, ctx: &Ctx, budget: usize) -> Ty {
        if budget <= 1 {
            return Ty::U;
        }
        match self.range(5) {
            0 => Ty::U,
            1 => match self.tm(ctx, &Ty::U, budget - 1) {
                Some(t) => Ty::El(Rc::new(t)),
                None => Ty::U,
            },
            2 | 3 => {
                let dom = self.ty(ctx, budget / 2);
                let cod = self.ty(&ctx.extended(dom.clone()), budget / 2);
                Ty::Pi(Rc::new(dom), Rc::new(cod))
            }
            _ => {
                let inner = self.ty(ctx, budget.saturating_sub(2));
                Ty::Sub(Rc::new(inner), Rc::new(self.idconv(ctx, 2)))
            }
        }
    }

    /// A substitution convertible to the identity on `ctx`.
    pub fn idconv(&mut self, ctx: &Ctx, budget: usize) -> Sub {
        if budget == 0 {
            return Sub::Id;
        }
        match self.range(4) {
            0 => Sub::Id,
            1 => Sub::Comp(
                Rc::new(Sub::Id),
                Rc::new(self.idconv(ctx, budget - 1)),
            ),
            // p1 (s, t) collapses back to s; the packed term must stay
            // inferable, so only variables go in.
            2 if !ctx.is_empty() => {
                let s = self.idconv(ctx, budget - 1);
                let (t, _) = self.any_tm(ctx, 3);
                Sub::Proj1(Rc::new(Sub::Ext(Rc::new(s), Rc::new(t))))
            }
            3 if !ctx.is_empty() => {
                let s = Rc::new(self.idconv(ctx, budget - 1));
                Sub::Ext(
                    Rc::new(Sub::Proj1(s.clone())),
                    Rc::new(Tm::Proj2(s)),
                )
            }
            _ => Sub::Id,
        }
    }

    /// Some well-typed term over `ctx`, with its type. In a nonempty
    /// context this is a variable (so the result stays inferable by
    /// the core checker); the budget only biases the choice.
    pub fn any_tm(&mut self, ctx: &Ctx, budget: usize) -> (Tm, Ty) {
        if !ctx.is_empty() {
            let mut x = Var(self.range(ctx.len()));
            if embed_var(x).size() > budget {
                x = Var(0);
            }
            return (embed_var(x), var_ty(ctx, x));
        }
        // The identity function is the only closed inhabitant around.
        (
            Tm::Lam(Rc::new(embed_var(Var(0)))),
            Ty::Pi(Rc::new(Ty::U), Rc::new(Ty::U)),
        )
    }

    /// A neutral-style inhabitant of the wanted type: a variable, or a
    /// variable applied to a generated argument.
    fn neutral_tm(&mut self, ctx: &Ctx, want: &Ty, budget: usize) -> Option<Tm> {
        let mut candidates: Vec<Tm> = Vec::new();
        for k in 0..ctx.len() {
            let x = Var(k);
            let xty = var_ty(ctx, x);
            let head = embed_var(x);
            if head.size() <= budget && fits(ctx, &xty, want) {
                candidates.push(head.clone());
            }
            if let NTy::Pi(dom, cod) = norm_ty(&xty) {
                if head.size() + 6 <= budget {
                    if let Some(arg) =
                        self.tm(ctx, &embed_nty(&dom), budget - head.size() - 4)
                    {
                        let arg = Rc::new(arg);
                        let app_ty =
                            Ty::Sub(Rc::new(embed_nty(&cod)), Rc::new(single(&arg)));
                        if fits(ctx, &app_ty, want) {
                            let t = apply(&Rc::new(head.clone()), &arg);
                            if t.size() <= budget {
                                candidates.push(t);
                            }
                        }
                    }
                }
            }
        }
        if candidates.is_empty() {
            None
        } else {
            Some(candidates.swap_remove(self.range(candidates.len())))
        }
    }

    /// A well-typed term of type `want` over `ctx` with size at most
    /// `budget`, or `None` when nothing fits.
    pub fn tm(&mut self, ctx: &Ctx, want: &Ty, budget: usize) -> Option<Tm> {
        if budget == 0 {
            return None;
        }
        let base = match norm_ty(want) {
            NTy::Pi(dom, cod) => {
                let neutral = if self.coin(35) {
                    self.neutral_tm(ctx, want, budget)
                } else {
                    None
                };
                match neutral {
                    Some(n) => n,
                    None => {
                        let inner = ctx.extended(embed_nty(&dom));
                        let body =
                            self.tm(&inner, &embed_nty(&cod), budget.saturating_sub(1))?;
                        Tm::Lam(Rc::new(body))
                    }
                }
            }
            _ => self.neutral_tm(ctx, want, budget)?,
        };
        Some(self.noise_tm(ctx, want, base, budget))
    }

    /// Wraps a well-typed term in type-preserving noise while the size
    /// budget allows.
    fn noise_tm(&mut self, ctx: &Ctx, want: &Ty, mut t: Tm, budget: usize) -> Tm {
        for _ in 0..2 {
            if !self.coin(35) {
                break;
            }
            let next = match self.range(3) {
                // t[s] for s convertible to the identity.
                0 => Tm::Sub(Rc::new(t.clone()), Rc::new(self.idconv(ctx, 2))),
                // (\x. t weakened) u — a β-redex around t. The argument
                // is a variable so the redex stays recheckable.
                1 if !ctx.is_empty() => {
                    let (u, _) = self.any_tm(ctx, 3);
                    apply(
                        &Rc::new(Tm::Lam(Rc::new(Tm::Sub(Rc::new(t.clone()), p1_id())))),
                        &Rc::new(u),
                    )
                }
                1 => t.clone(),
                // η-expansion, only at function types.
                _ => match norm_ty(want) {
                    NTy::Pi(..) => Tm::Lam(Rc::new(apply(
                        &Rc::new(Tm::Sub(Rc::new(t.clone()), p1_id())),
                        &Rc::new(embed_var(Var(0))),
                    ))),
                    _ => t.clone(),
                },
            };
            if next.size() <= budget {
                t = next;
            }
        }
        t
    }

    /// A substitution from `src` to `tgt` with size at most `budget`.
    pub fn sub(&mut self, src: &Ctx, tgt: &Ctx, budget: usize) -> Option<Sub> {
        if budget == 0 {
            return None;
        }
        // Whole-context shortcuts.
        let is_prefix = tgt.len() <= src.len()
            && (0..tgt.len()).all(|i| tgt.entry(i) == src.entry(i));
        if is_prefix && self.coin(50) {
            let drops = src.len() - tgt.len();
            if 1 + drops <= budget {
                let mut s = Sub::Id;
                for _ in 0..drops {
                    s = Sub::Proj1(Rc::new(s));
                }
                return Some(self.noise_sub(src, s, budget));
            }
        }
        if tgt.is_empty() {
            let s = if self.coin(60) {
                Sub::Empty
            } else {
                let mut s = Sub::Id;
                for _ in 0..src.len() {
                    s = Sub::Proj1(Rc::new(s));
                }
                s
            };
            return Some(self.noise_sub(src, s, budget));
        }
        // Entrywise: build the prefix, then a term for the last entry.
        let (tgt_init, last) = tgt.split_last()?;
        let init = self.sub(src, &tgt_init, budget.saturating_sub(3))?;
        let init = Rc::new(init);
        let want = Ty::Sub(Rc::new(last.clone()), init.clone());
        let t = self.tm(src, &want, budget.saturating_sub(1 + init.size()))?;
        Some(Sub::Ext(init, Rc::new(t)))
    }

    fn noise_sub(&mut self, src: &Ctx, s: Sub, budget: usize) -> Sub {
        if self.coin(30) {
            let wrapped = Sub::Comp(Rc::new(s.clone()), Rc::new(self.idconv(src, 1)));
            if wrapped.size() <= budget {
                return wrapped;
            }
        }
        s
    }

    /// A well-typed term at a generated type over a generated context.
    pub fn well_typed_tm(
        &mut self,
        max_ctx: usize,
        ty_budget: usize,
        tm_budget: usize,
    ) -> Option<(Ctx, Ty, Tm)> {
        let ctx = self.ctx(max_ctx);
        let ty = self.ty(&ctx, ty_budget);
        let tm = self.tm(&ctx, &ty, tm_budget)?;
        Some((ctx, ty, tm))
    }
}

/// One instantiated conversion axiom: both sides plus everything
/// needed to normalise them.
#[derive(Clone, Debug)]
pub enum Instance {
    Tm {
        ctx: Ctx,
        ty: Ty,
        lhs: Tm,
        rhs: Tm,
    },
    Sub {
        ctx: Ctx,
        tgt: Ctx,
        lhs: Sub,
        rhs: Sub,
    },
    Ty {
        ctx: Ctx,
        lhs: Ty,
        rhs: Ty,
    },
}

const ATTEMPTS: usize = 200;

/// `n` well-typed instantiations of the named axiom schema in small
/// contexts. Fails only when the size bounds leave no instance, which
/// signals a misconfigured test.
pub fn axiom_instances(
    name: &str,
    gen: &mut Gen,
    n: usize,
) -> Result<Vec<Instance>, GenError> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut made = None;
        for _ in 0..ATTEMPTS {
            if let Some(inst) = try_instance(name, gen) {
                made = Some(inst);
                break;
            }
        }
        match made {
            Some(inst) => out.push(inst),
            None => return Err(GenError::Exhausted("axiom instance")),
        }
    }
    Ok(out)
}

fn try_instance(name: &str, g: &mut Gen) -> Option<Instance> {
    match name {
        "[id]" => {
            let ctx = g.ctx(3);
            let a = g.ty(&ctx, 4);
            Some(Instance::Ty {
                ctx,
                lhs: Ty::Sub(Rc::new(a.clone()), Rc::new(Sub::Id)),
                rhs: a,
            })
        }
        "[][]" => {
            let theta = g.ctx(2);
            let delta = g.inhabited_ctx(2);
            let gamma = g.inhabited_ctx(2);
            let s = g.sub(&delta, &theta, 10)?;
            let v = g.sub(&gamma, &delta, 10)?;
            let a = g.ty(&theta, 3);
            let (a, s, v) = (Rc::new(a), Rc::new(s), Rc::new(v));
            Some(Instance::Ty {
                ctx: gamma,
                lhs: Ty::Sub(Rc::new(Ty::Sub(a.clone(), s.clone())), v.clone()),
                rhs: Ty::Sub(a, Rc::new(Sub::Comp(s, v))),
            })
        }
        "U[]" => {
            let delta = g.ctx(2);
            let gamma = g.inhabited_ctx(2);
            let s = g.sub(&gamma, &delta, 10)?;
            Some(Instance::Ty {
                ctx: gamma,
                lhs: Ty::Sub(Rc::new(Ty::U), Rc::new(s)),
                rhs: Ty::U,
            })
        }
        "El[]" => {
            let delta = g.inhabited_ctx(3);
            let gamma = g.inhabited_ctx(2);
            let a_hat = Rc::new(g.tm(&delta, &Ty::U, 6)?);
            let s = Rc::new(g.sub(&gamma, &delta, 10)?);
            Some(Instance::Ty {
                ctx: gamma,
                lhs: Ty::Sub(Rc::new(Ty::El(a_hat.clone())), s.clone()),
                rhs: Ty::El(Rc::new(Tm::Sub(a_hat, s))),
            })
        }
        "Pi[]" => {
            let delta = g.ctx(2);
            let gamma = g.inhabited_ctx(2);
            let a = Rc::new(g.ty(&delta, 3));
            let b = Rc::new(g.ty(&delta.extended((*a).clone()), 3));
            let s = Rc::new(g.sub(&gamma, &delta, 10)?);
            Some(Instance::Ty {
                ctx: gamma,
                lhs: Ty::Sub(Rc::new(Ty::Pi(a.clone(), b.clone())), s.clone()),
                rhs: Ty::Pi(
                    Rc::new(Ty::Sub(a, s.clone())),
                    Rc::new(Ty::Sub(b, Rc::new(lift(&s)))),
                ),
            })
        }
        "id∘" | "∘id" => {
            let delta = g.ctx(3);
            let gamma = g.inhabited_ctx(3);
            let s = Rc::new(g.sub(&gamma, &delta, 10)?);
            let lhs = if name == "id∘" {
                Sub::Comp(Rc::new(Sub::Id), s.clone())
            } else {
                Sub::Comp(s.clone(), Rc::new(Sub::Id))
            };
            Some(Instance::Sub {
                ctx: gamma,
                tgt: delta,
                lhs,
                rhs: (*s).clone(),
            })
        }
        "∘∘" => {
            let xi = g.ctx(2);
            let theta = g.inhabited_ctx(2);
            let delta = g.inhabited_ctx(2);
            let gamma = g.inhabited_ctx(2);
            let s = Rc::new(g.sub(&theta, &xi, 8)?);
            let v = Rc::new(g.sub(&delta, &theta, 8)?);
            let d = Rc::new(g.sub(&gamma, &delta, 8)?);
            Some(Instance::Sub {
                ctx: gamma,
                tgt: xi,
                lhs: Sub::Comp(Rc::new(Sub::Comp(s.clone(), v.clone())), d.clone()),
                rhs: Sub::Comp(s, Rc::new(Sub::Comp(v, d))),
            })
        }
        "εη" => {
            let gamma = g.ctx(3);
            let s = g.sub(&gamma, &Ctx::empty(), 6)?;
            Some(Instance::Sub {
                ctx: gamma,
                tgt: Ctx::empty(),
                lhs: s,
                rhs: Sub::Empty,
            })
        }
        "π₁β" => {
            let delta = g.ctx(2);
            let gamma = g.inhabited_ctx(3);
            let s = Rc::new(g.sub(&gamma, &delta, 8)?);
            let a = Rc::new(g.ty(&delta, 3));
            let t = Rc::new(g.tm(&gamma, &Ty::Sub(a, s.clone()), 6)?);
            Some(Instance::Sub {
                ctx: gamma,
                tgt: delta,
                lhs: Sub::Proj1(Rc::new(Sub::Ext(s.clone(), t))),
                rhs: (*s).clone(),
            })
        }
        "πη" => {
            let delta = g.ctx(2);
            let gamma = g.inhabited_ctx(3);
            let a = g.ty(&delta, 3);
            let tgt = delta.extended(a);
            let s = Rc::new(g.sub(&gamma, &tgt, 10)?);
            Some(Instance::Sub {
                ctx: gamma,
                tgt,
                lhs: Sub::Ext(
                    Rc::new(Sub::Proj1(s.clone())),
                    Rc::new(Tm::Proj2(s.clone())),
                ),
                rhs: (*s).clone(),
            })
        }
        ",∘" => {
            let theta = g.ctx(2);
            let delta = g.inhabited_ctx(2);
            let gamma = g.inhabited_ctx(2);
            let s = Rc::new(g.sub(&delta, &theta, 8)?);
            let a = Rc::new(g.ty(&theta, 3));
            let t = Rc::new(g.tm(&delta, &Ty::Sub(a.clone(), s.clone()), 6)?);
            let v = Rc::new(g.sub(&gamma, &delta, 8)?);
            Some(Instance::Sub {
                ctx: gamma,
                tgt: theta.extended((*a).clone()),
                lhs: Sub::Comp(Rc::new(Sub::Ext(s.clone(), t.clone())), v.clone()),
                rhs: Sub::Ext(
                    Rc::new(Sub::Comp(s, v.clone())),
                    Rc::new(Tm::Sub(t, v)),
                ),
            })
        }
        "π₂β" => {
            let delta = g.ctx(2);
            let gamma = g.inhabited_ctx(3);
            let s = Rc::new(g.sub(&gamma, &delta, 8)?);
            let a = Rc::new(g.ty(&delta, 3));
            let want = Ty::Sub(a, s.clone());
            let t = Rc::new(g.tm(&gamma, &want, 6)?);
            Some(Instance::Tm {
                ctx: gamma,
                ty: want,
                lhs: Tm::Proj2(Rc::new(Sub::Ext(s, t.clone()))),
                rhs: (*t).clone(),
            })
        }
        "Πβ" => {
            let gamma = g.inhabited_ctx(2);
            let a = g.ty(&gamma, 3);
            let inner = gamma.extended(a);
            let b = g.ty(&inner, 3);
            let t = Rc::new(g.tm(&inner, &b, 5)?);
            Some(Instance::Tm {
                ctx: inner,
                ty: b,
                lhs: Tm::App(Rc::new(Tm::Lam(t.clone()))),
                rhs: (*t).clone(),
            })
        }
        "Πη" => {
            let gamma = g.inhabited_ctx(2);
            let a = Rc::new(g.ty(&gamma, 3));
            let b = Rc::new(g.ty(&gamma.extended((*a).clone()), 3));
            let pi = Ty::Pi(a, b);
            let t = Rc::new(g.tm(&gamma, &pi, 6)?);
            Some(Instance::Tm {
                ctx: gamma,
                ty: pi,
                lhs: Tm::Lam(Rc::new(Tm::App(t.clone()))),
                rhs: (*t).clone(),
            })
        }
        "lam[]" => {
            let delta = g.inhabited_ctx(2);
            let gamma = g.inhabited_ctx(2);
            let a = Rc::new(g.ty(&delta, 3));
            let inner = delta.extended((*a).clone());
            let b = Rc::new(g.ty(&inner, 3));
            let t = Rc::new(g.tm(&inner, &b, 6)?);
            let s = Rc::new(g.sub(&gamma, &delta, 10)?);
            Some(Instance::Tm {
                ctx: gamma,
                ty: Ty::Sub(Rc::new(Ty::Pi(a, b)), s.clone()),
                lhs: Tm::Sub(Rc::new(Tm::Lam(t.clone())), s.clone()),
                rhs: Tm::Lam(Rc::new(Tm::Sub(t, Rc::new(lift(&s))))),
            })
        }
        _ => None,
    }
}

/// Re-checks both sides of an instance with the core checker.
pub fn check_instance(inst: &Instance, fuel: &Fuel) -> Result<(), CoreError> {
    match inst {
        Instance::Tm { ctx, ty, lhs, rhs } => {
            check_core_ty(ctx, ty, fuel)?;
            check_core_tm(ctx, lhs, ty, fuel)?;
            check_core_tm(ctx, rhs, ty, fuel)
        }
        Instance::Sub { ctx, tgt, lhs, rhs } => {
            check_core_sub(ctx, lhs, tgt, fuel)?;
            check_core_sub(ctx, rhs, tgt, fuel)
        }
        Instance::Ty { ctx, lhs, rhs } => {
            check_core_ty(ctx, lhs, fuel)?;
            check_core_ty(ctx, rhs, fuel)
        }
    }
}

/// The contexts drawn from the three base assumption shapes (`U`,
/// `(x:U) -> U`, `(x:U) -> El x`), up to the given length. Test suites
/// enumerate over these.
pub fn context_battery(max_len: usize) -> Vec<Ctx> {
    let shapes = [
        Ty::U,
        Ty::Pi(Rc::new(Ty::U), Rc::new(Ty::U)),
        Ty::Pi(Rc::new(Ty::U), Rc::new(Ty::El(Rc::new(embed_var(Var(0)))))),
    ];
    let mut out = vec![Ctx::empty()];
    let mut frontier = vec![Ctx::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for c in &frontier {
            for s in &shapes {
                let c2 = c.extended(s.clone());
                out.push(c2.clone());
                next.push(c2);
            }
        }
        frontier = next;
    }
    out
}

/// All raw index maps from a context of length `src` onto one of
/// length `tgt`.
pub fn all_renaming_maps(src: usize, tgt: usize) -> Vec<crate::ren::Renaming> {
    if src == 0 && tgt > 0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<Var>> = vec![vec![]];
    for _ in 0..tgt {
        let mut next = Vec::new();
        for m in &out {
            for v in 0..src {
                let mut m2 = m.clone();
                m2.push(Var(v));
                next.push(m2);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|m| crate::ren::Renaming::new(m, src))
        .collect()
}

/// Whether `beta` is a typed renaming from `src` into `tgt`: every
/// entry's type matches the corresponding target entry transported
/// along the prefix of the renaming.
pub fn is_typed_renaming(src: &Ctx, tgt: &Ctx, beta: &crate::ren::Renaming) -> bool {
    if beta.len() != tgt.len() || beta.src_len() != src.len() {
        return false;
    }
    let fuel = Fuel::default();
    let n = tgt.len();
    for i in 0..n {
        // Outer position i has de Bruijn index n-1-i. Its type lives
        // over the length-i prefix, whose renaming keeps the map
        // entries for de Bruijn indices n-i .. n-1.
        let x = beta.rename_var(Var(n - 1 - i));
        let prefix = crate::ren::Renaming::new(
            (0..i).map(|k| beta.rename_var(Var(k + n - i))).collect(),
            src.len(),
        );
        let want = Ty::Sub(Rc::new(tgt.entry(i).clone()), Rc::new(prefix.embed()));
        let got = var_ty(src, x);
        match conv_ty(src, &got, &want, &fuel) {
            Ok(d) if d.is_equal() => {}
            _ => return false,
        }
    }
    true
}

/// The typed renamings from `src` into `tgt`.
pub fn typed_renamings(src: &Ctx, tgt: &Ctx) -> Vec<crate::ren::Renaming> {
    all_renaming_maps(src.len(), tgt.len())
        .into_iter()
        .filter(|b| is_typed_renaming(src, tgt, b))
        .collect()
}

/// Every surface term of size (node count) at most `max_size`, over a
/// fixed three-name pool. Used for the exhaustive consistency search.
pub fn enumerate_surface(max_size: usize) -> Vec<Surface> {
    const NAMES: [&str; 3] = ["x", "y", "z"];
    let pos = Pos { line: 1, col: 1 };
    let mk = |kind: SurfKind| Surface { kind, pos };

    let mut by_size: Vec<Vec<Surface>> = vec![Vec::new()];
    for size in 1..=max_size {
        let mut here = Vec::new();
        if size == 1 {
            for n in NAMES {
                here.push(mk(SurfKind::Var(n.to_string())));
            }
            here.push(mk(SurfKind::U));
        } else {
            for sub in &by_size[size - 1] {
                for n in NAMES {
                    here.push(mk(SurfKind::Lam(n.to_string(), Box::new(sub.clone()))));
                }
                here.push(mk(SurfKind::El(Box::new(sub.clone()))));
            }
            for left in 1..size - 1 {
                let right = size - 1 - left;
                for a in by_size[left].clone() {
                    for b in &by_size[right] {
                        here.push(mk(SurfKind::App(
                            Box::new(a.clone()),
                            Box::new(b.clone()),
                        )));
                        here.push(mk(SurfKind::Ann(
                            Box::new(a.clone()),
                            Box::new(b.clone()),
                        )));
                        for n in NAMES {
                            here.push(mk(SurfKind::Pi(
                                n.to_string(),
                                Box::new(a.clone()),
                                Box::new(b.clone()),
                            )));
                        }
                    }
                }
            }
        }
        by_size.push(here);
    }
    by_size.into_iter().flatten().collect()
}
