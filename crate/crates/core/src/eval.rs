//! Evaluation into a Kripke semantic domain over the category of
//! renamings. Terms evaluate to values, substitutions to environments,
//! types to semantic types; renaming is the functorial action on all
//! of them.
//!
//! Function values are first-order closures (captured environment plus
//! body), so renaming a value is a finite data operation and values
//! stay comparable through quoting. A neutral value applied to an
//! argument quotes the argument and extends the spine; that case lives
//! in [`apply_value`].
//!
//! Everything here is pure; a shared fuel cell bounds recursion so
//! that ill-typed input fails with an error instead of diverging.

use std::cell::Cell;
use std::rc::Rc;

use thiserror::Error;

use crate::nbe::{quote, unquote};
use crate::normal::{rename_ne, Ne};
use crate::ren::{Renaming, Var};
use crate::syntax::{Ctx, Sub, Tm, Ty};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// Ill-typed input escaped the checker.
    #[error("stuck evaluation: {0}")]
    Stuck(&'static str),
    /// The defensive recursion bound was hit. On checker-accepted
    /// terms this is a bug.
    #[error("evaluation fuel exhausted")]
    FuelExhausted,
}

/// A step budget shared across one evaluation; interior mutability
/// keeps the evaluator's signatures pure.
#[derive(Debug)]
pub struct Fuel {
    remaining: Cell<u64>,
    limit: u64,
}

pub const DEFAULT_FUEL: u64 = 1_000_000;

impl Fuel {
    pub fn new(limit: u64) -> Fuel {
        Fuel {
            remaining: Cell::new(limit),
            limit,
        }
    }

    pub fn tick(&self) -> Result<(), EvalError> {
        let r = self.remaining.get();
        if r == 0 {
            return Err(EvalError::FuelExhausted);
        }
        self.remaining.set(r - 1);
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.limit - self.remaining.get()
    }
}

impl Default for Fuel {
    fn default() -> Fuel {
        Fuel::new(DEFAULT_FUEL)
    }
}

/// Semantic values. A neutral value remembers its semantic type so
/// application and quoting stay type-directed.
#[derive(Clone, Debug)]
pub enum Value {
    Neutral(Rc<Ne>, Rc<VType>),
    Fun(Closure),
}

/// A function value: captured environment plus body. Application goes
/// through a renaming first (the Kripke "map" shape), realized by
/// renaming the captured environment.
#[derive(Clone, Debug)]
pub struct Closure {
    pub env: Env,
    pub body: Rc<Tm>,
}

/// Semantic types.
#[derive(Clone, Debug)]
pub enum VType {
    U,
    El(Rc<Value>),
    Pi(Rc<VType>, TyClosure),
}

/// The codomain of a semantic Pi, instantiated per argument.
#[derive(Clone, Debug)]
pub struct TyClosure {
    pub env: Env,
    pub body: Rc<Ty>,
}

impl TyClosure {
    /// Instantiates the codomain at an argument after moving the
    /// captured environment along a renaming.
    pub fn apply(&self, beta: &Renaming, arg: Rc<Value>, fuel: &Fuel) -> Result<VType, EvalError> {
        eval_ty(&self.body, &self.env.rename(beta).extended(arg), fuel)
    }
}

/// An environment: one value per entry of the interpreted context,
/// innermost last, together with the length of the ambient context all
/// the values live in.
#[derive(Clone, Debug, Default)]
pub struct Env {
    vals: Vec<Rc<Value>>,
    depth: usize,
}

impl Env {
    pub fn new(depth: usize) -> Env {
        Env {
            vals: Vec::new(),
            depth,
        }
    }

    /// Length of the interpreted context.
    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    /// Length of the ambient context.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn value(&self, i: usize) -> &Rc<Value> {
        &self.vals[i]
    }

    pub fn top(&self) -> Option<&Rc<Value>> {
        self.vals.last()
    }

    pub fn extended(&self, v: Rc<Value>) -> Env {
        let mut vals = self.vals.clone();
        vals.push(v);
        Env {
            vals,
            depth: self.depth,
        }
    }

    pub fn popped(&self) -> Option<Env> {
        let mut vals = self.vals.clone();
        vals.pop()?;
        Some(Env {
            vals,
            depth: self.depth,
        })
    }

    /// The environment for a prefix of the interpreted context, at the
    /// same ambient depth.
    pub fn prefix(&self, n: usize) -> Env {
        Env {
            vals: self.vals[..n].to_vec(),
            depth: self.depth,
        }
    }

    pub fn rename(&self, beta: &Renaming) -> Env {
        Env {
            vals: self
                .vals
                .iter()
                .map(|v| Rc::new(rename_value(v, beta)))
                .collect(),
            depth: beta.src_len(),
        }
    }
}

pub fn rename_value(v: &Value, beta: &Renaming) -> Value {
    match v {
        Value::Neutral(n, t) => Value::Neutral(
            Rc::new(rename_ne(n, beta)),
            Rc::new(rename_vtype(t, beta)),
        ),
        Value::Fun(c) => Value::Fun(Closure {
            env: c.env.rename(beta),
            body: c.body.clone(),
        }),
    }
}

pub fn rename_vtype(t: &VType, beta: &Renaming) -> VType {
    match t {
        VType::U => VType::U,
        VType::El(v) => VType::El(Rc::new(rename_value(v, beta))),
        VType::Pi(dom, cod) => VType::Pi(
            Rc::new(rename_vtype(dom, beta)),
            TyClosure {
                env: cod.env.rename(beta),
                body: cod.body.clone(),
            },
        ),
    }
}

pub fn eval_tm(t: &Tm, env: &Env, fuel: &Fuel) -> Result<Rc<Value>, EvalError> {
    fuel.tick()?;
    match t {
        Tm::Sub(t, s) => eval_tm(t, &eval_sub(s, env, fuel)?, fuel),
        Tm::Proj2(s) => eval_sub(s, env, fuel)?
            .top()
            .cloned()
            .ok_or(EvalError::Stuck("second projection of an empty environment")),
        Tm::Lam(body) => Ok(Rc::new(Value::Fun(Closure {
            env: env.clone(),
            body: body.clone(),
        }))),
        // The categorical app: the function part is evaluated in the
        // popped environment and applied at the identity renaming to
        // the top value.
        Tm::App(f) => {
            let arg = env
                .top()
                .cloned()
                .ok_or(EvalError::Stuck("app in an unextended environment"))?;
            let popped = env.popped().expect("nonempty by the check above");
            let fv = eval_tm(f, &popped, fuel)?;
            apply_value(&fv, &Renaming::identity(env.depth()), arg, fuel)
        }
    }
}

pub fn eval_sub(s: &Sub, env: &Env, fuel: &Fuel) -> Result<Env, EvalError> {
    fuel.tick()?;
    match s {
        Sub::Id => Ok(env.clone()),
        Sub::Comp(s, v) => eval_sub(s, &eval_sub(v, env, fuel)?, fuel),
        Sub::Empty => Ok(Env::new(env.depth())),
        Sub::Ext(s, t) => {
            let head = eval_sub(s, env, fuel)?;
            let v = eval_tm(t, env, fuel)?;
            Ok(head.extended(v))
        }
        Sub::Proj1(s) => eval_sub(s, env, fuel)?
            .popped()
            .ok_or(EvalError::Stuck("first projection of an empty environment")),
    }
}

pub fn eval_ty(a: &Ty, env: &Env, fuel: &Fuel) -> Result<VType, EvalError> {
    fuel.tick()?;
    match a {
        Ty::U => Ok(VType::U),
        Ty::El(t) => Ok(VType::El(eval_tm(t, env, fuel)?)),
        Ty::Pi(dom, cod) => Ok(VType::Pi(
            Rc::new(eval_ty(dom, env, fuel)?),
            TyClosure {
                env: env.clone(),
                body: cod.clone(),
            },
        )),
        Ty::Sub(a, s) => eval_ty(a, &eval_sub(s, env, fuel)?, fuel),
    }
}

/// Applies a function value along a renaming. `beta` maps the ambient
/// context of the result into the value's own context; the plain call
/// sites use the identity.
///
/// For a closure this renames the captured environment and evaluates
/// the body. For a neutral at a Pi type the argument is quoted to a
/// normal form and the spine is extended, with the codomain
/// instantiated for the result type.
pub fn apply_value(
    f: &Value,
    beta: &Renaming,
    arg: Rc<Value>,
    fuel: &Fuel,
) -> Result<Rc<Value>, EvalError> {
    fuel.tick()?;
    match f {
        Value::Fun(c) => eval_tm(&c.body, &c.env.rename(beta).extended(arg), fuel),
        Value::Neutral(n, t) => match t.as_ref() {
            VType::Pi(dom, cod) => {
                let dom = rename_vtype(dom, beta);
                let m = quote(&dom, &arg, beta.src_len(), fuel)?;
                let spine = Ne::App(Rc::new(rename_ne(n, beta)), Rc::new(m));
                let cod = cod.apply(beta, arg, fuel)?;
                Ok(Rc::new(Value::Neutral(Rc::new(spine), Rc::new(cod))))
            }
            _ => Err(EvalError::Stuck("application of a non-function value")),
        },
    }
}

/// The initial environment interpreting a context over itself: each
/// variable unquoted at its own type, right to left with weakening.
/// Evaluating a term here and quoting is exactly normalisation.
pub fn fresh_env(ctx: &Ctx, fuel: &Fuel) -> Result<Env, EvalError> {
    let n = ctx.len();
    let mut env = Env::new(n);
    for i in 0..n {
        let vt = eval_ty(ctx.entry(i), &env, fuel)?;
        let ne = Ne::Var(Var(n - 1 - i));
        env = env.extended(unquote(Rc::new(vt), Rc::new(ne)));
    }
    Ok(env)
}
