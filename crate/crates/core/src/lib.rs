//! A normalisation-by-evaluation kernel for a minimal dependent type
//! theory: Pi types over an uninterpreted base type `U` and family
//! `El`, presented as an explicit-substitution calculus.
//!
//! The pieces:
//!
//! * [`syntax`] — the core calculus (terms, types, substitutions,
//!   contexts) and its canonical text form;
//! * [`ren`] — the category of renamings: typed de Bruijn variables
//!   and their embedding into substitutions;
//! * [`normal`] — η-long β-normal forms, normal types, decidable
//!   equality of normal forms, and exhaustive enumeration;
//! * [`eval`] — evaluation into a Kripke semantic domain;
//! * [`nbe`] — quote/unquote and the `norm`/`conv` entry points;
//! * [`axioms`] — the sixteen conversion axioms as schemas;
//! * [`oracle`] — a bounded bidirectional rewrite search over the
//!   axiom catalog, the independent cross-check for `conv`;
//! * [`surface`] / [`elab`] — the surface language and bidirectional
//!   checker that supply the well-typedness every other module assumes;
//! * [`pretty`] — resugaring printer for normal forms and types;
//! * [`generate`] — seeded well-typed generators for the test suites.

pub mod axioms;
pub mod elab;
pub mod eval;
pub mod generate;
pub mod nbe;
pub mod normal;
pub mod oracle;
pub mod pretty;
pub mod ren;
pub mod surface;
pub mod syntax;

pub use elab::{check, elab_type, infer, process_items, ElabError, Scope, TypeError};
pub use eval::{EvalError, Fuel, DEFAULT_FUEL};
pub use nbe::{conv, conv_ty, norm, norm_sub};
pub use normal::{Dec, Ne, Nf, NTy};
pub use oracle::{rewrite_oracle_sub, rewrite_oracle_tm, rewrite_oracle_ty, OracleCfg, Verdict};
pub use ren::{Renaming, Var};
pub use syntax::{Ctx, Sub, Tm, Ty};
