//! The equational theory of the calculus as data: a catalog of the 16
//! conversion axioms over term/type/substitution schemas with
//! metavariables.
//!
//! The calculus cannot be quotiented in executable data, so the
//! equations live in three places: this catalog, the `conv` decision
//! procedure (whose soundness the catalog tests), and the bounded
//! rewrite oracle in [`crate::oracle`] which searches the catalog as
//! bidirectional rewrites.

use std::rc::Rc;
use std::sync::LazyLock;

use crate::syntax::{Sub, Tm, Ty};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sort {
    Ty,
    Tm,
    Sub,
}

/// Type schemas. `Meta` indices are namespaced per sort.
#[derive(Clone, Debug)]
pub enum TyPat {
    U,
    El(Box<TmPat>),
    Pi(Box<TyPat>, Box<TyPat>),
    Sub(Box<TyPat>, Box<SubPat>),
    Meta(u8),
}

#[derive(Clone, Debug)]
pub enum TmPat {
    Lam(Box<TmPat>),
    App(Box<TmPat>),
    Proj2(Box<SubPat>),
    Sub(Box<TmPat>, Box<SubPat>),
    Meta(u8),
}

#[derive(Clone, Debug)]
pub enum SubPat {
    Id,
    Comp(Box<SubPat>, Box<SubPat>),
    Empty,
    Ext(Box<SubPat>, Box<TmPat>),
    Proj1(Box<SubPat>),
    Meta(u8),
}

#[derive(Clone, Debug)]
pub enum Pat {
    Ty(TyPat),
    Tm(TmPat),
    Sub(SubPat),
}

impl Pat {
    pub fn sort(&self) -> Sort {
        match self {
            Pat::Ty(_) => Sort::Ty,
            Pat::Tm(_) => Sort::Tm,
            Pat::Sub(_) => Sort::Sub,
        }
    }
}

/// Side conditions that cannot be read off the schema shape. They
/// constrain substitution metavariables by the length of their target
/// context, which the rewriter certifies syntactically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    None,
    /// The substitution metavariable must target the empty context.
    TargetsEmpty(u8),
    /// The substitution metavariable must target an extended context.
    TargetsNonEmpty(u8),
}

pub struct ConvAxiom {
    pub name: &'static str,
    pub lhs: Pat,
    pub rhs: Pat,
    pub side: Side,
}

impl ConvAxiom {
    pub fn sort(&self) -> Sort {
        self.lhs.sort()
    }
}

/// Metavariable bindings accumulated while matching. Indices are tiny
/// by construction of the catalog.
#[derive(Clone, Debug, Default)]
pub struct Binding {
    tys: [Option<Rc<Ty>>; 4],
    tms: [Option<Rc<Tm>>; 4],
    subs: [Option<Rc<Sub>>; 4],
}

impl Binding {
    pub fn ty(&self, i: u8) -> Option<&Rc<Ty>> {
        self.tys[i as usize].as_ref()
    }

    pub fn tm(&self, i: u8) -> Option<&Rc<Tm>> {
        self.tms[i as usize].as_ref()
    }

    pub fn sub(&self, i: u8) -> Option<&Rc<Sub>> {
        self.subs[i as usize].as_ref()
    }

    pub fn set_ty(&mut self, i: u8, a: Rc<Ty>) {
        self.tys[i as usize] = Some(a);
    }

    pub fn set_tm(&mut self, i: u8, t: Rc<Tm>) {
        self.tms[i as usize] = Some(t);
    }

    pub fn set_sub(&mut self, i: u8, s: Rc<Sub>) {
        self.subs[i as usize] = Some(s);
    }
}

/// Matching is nonlinear: a metavariable seen twice must bind equal
/// subterms.
pub fn match_ty(p: &TyPat, a: &Rc<Ty>, b: &mut Binding) -> bool {
    match (p, a.as_ref()) {
        (TyPat::Meta(i), _) => match b.ty(*i) {
            Some(prev) => prev == a,
            None => {
                b.set_ty(*i, a.clone());
                true
            }
        },
        (TyPat::U, Ty::U) => true,
        (TyPat::El(tp), Ty::El(t)) => match_tm(tp, t, b),
        (TyPat::Pi(ap, bp), Ty::Pi(x, y)) => match_ty(ap, x, b) && match_ty(bp, y, b),
        (TyPat::Sub(ap, sp), Ty::Sub(x, s)) => match_ty(ap, x, b) && match_sub(sp, s, b),
        _ => false,
    }
}

pub fn match_tm(p: &TmPat, t: &Rc<Tm>, b: &mut Binding) -> bool {
    match (p, t.as_ref()) {
        (TmPat::Meta(i), _) => match b.tm(*i) {
            Some(prev) => prev == t,
            None => {
                b.set_tm(*i, t.clone());
                true
            }
        },
        (TmPat::Lam(bp), Tm::Lam(x)) => match_tm(bp, x, b),
        (TmPat::App(bp), Tm::App(x)) => match_tm(bp, x, b),
        (TmPat::Proj2(sp), Tm::Proj2(s)) => match_sub(sp, s, b),
        (TmPat::Sub(tp, sp), Tm::Sub(x, s)) => match_tm(tp, x, b) && match_sub(sp, s, b),
        _ => false,
    }
}

pub fn match_sub(p: &SubPat, s: &Rc<Sub>, b: &mut Binding) -> bool {
    match (p, s.as_ref()) {
        (SubPat::Meta(i), _) => match b.sub(*i) {
            Some(prev) => prev == s,
            None => {
                b.set_sub(*i, s.clone());
                true
            }
        },
        (SubPat::Id, Sub::Id) => true,
        (SubPat::Empty, Sub::Empty) => true,
        (SubPat::Comp(xp, yp), Sub::Comp(x, y)) => match_sub(xp, x, b) && match_sub(yp, y, b),
        (SubPat::Ext(sp, tp), Sub::Ext(x, t)) => match_sub(sp, x, b) && match_tm(tp, t, b),
        (SubPat::Proj1(sp), Sub::Proj1(x)) => match_sub(sp, x, b),
        _ => false,
    }
}

pub fn match_pat(p: &Pat, n: &Node, b: &mut Binding) -> bool {
    match (p, n) {
        (Pat::Ty(p), Node::Ty(a)) => match_ty(p, a, b),
        (Pat::Tm(p), Node::Tm(t)) => match_tm(p, t, b),
        (Pat::Sub(p), Node::Sub(s)) => match_sub(p, s, b),
        _ => false,
    }
}

/// A piece of syntax of any sort; the currency of the rewrite oracle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Ty(Rc<Ty>),
    Tm(Rc<Tm>),
    Sub(Rc<Sub>),
}

impl Node {
    pub fn sort(&self) -> Sort {
        match self {
            Node::Ty(_) => Sort::Ty,
            Node::Tm(_) => Sort::Tm,
            Node::Sub(_) => Sort::Sub,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Node::Ty(a) => a.size(),
            Node::Tm(t) => t.size(),
            Node::Sub(s) => s.size(),
        }
    }
}

/// Instantiation; `None` when the pattern mentions an unbound
/// metavariable.
pub fn inst_ty(p: &TyPat, b: &Binding) -> Option<Rc<Ty>> {
    Some(match p {
        TyPat::Meta(i) => b.ty(*i)?.clone(),
        TyPat::U => Rc::new(Ty::U),
        TyPat::El(tp) => Rc::new(Ty::El(inst_tm(tp, b)?)),
        TyPat::Pi(ap, bp) => Rc::new(Ty::Pi(inst_ty(ap, b)?, inst_ty(bp, b)?)),
        TyPat::Sub(ap, sp) => Rc::new(Ty::Sub(inst_ty(ap, b)?, inst_sub(sp, b)?)),
    })
}

pub fn inst_tm(p: &TmPat, b: &Binding) -> Option<Rc<Tm>> {
    Some(match p {
        TmPat::Meta(i) => b.tm(*i)?.clone(),
        TmPat::Lam(tp) => Rc::new(Tm::Lam(inst_tm(tp, b)?)),
        TmPat::App(tp) => Rc::new(Tm::App(inst_tm(tp, b)?)),
        TmPat::Proj2(sp) => Rc::new(Tm::Proj2(inst_sub(sp, b)?)),
        TmPat::Sub(tp, sp) => Rc::new(Tm::Sub(inst_tm(tp, b)?, inst_sub(sp, b)?)),
    })
}

pub fn inst_sub(p: &SubPat, b: &Binding) -> Option<Rc<Sub>> {
    Some(match p {
        SubPat::Meta(i) => b.sub(*i)?.clone(),
        SubPat::Id => Rc::new(Sub::Id),
        SubPat::Empty => Rc::new(Sub::Empty),
        SubPat::Comp(xp, yp) => Rc::new(Sub::Comp(inst_sub(xp, b)?, inst_sub(yp, b)?)),
        SubPat::Ext(sp, tp) => Rc::new(Sub::Ext(inst_sub(sp, b)?, inst_tm(tp, b)?)),
        SubPat::Proj1(sp) => Rc::new(Sub::Proj1(inst_sub(sp, b)?)),
    })
}

pub fn inst_pat(p: &Pat, b: &Binding) -> Option<Node> {
    Some(match p {
        Pat::Ty(p) => Node::Ty(inst_ty(p, b)?),
        Pat::Tm(p) => Node::Tm(inst_tm(p, b)?),
        Pat::Sub(p) => Node::Sub(inst_sub(p, b)?),
    })
}

/// The metavariables occurring in a pattern, as (sort, index) pairs.
pub fn pat_metas(p: &Pat) -> Vec<(Sort, u8)> {
    let mut out = Vec::new();
    match p {
        Pat::Ty(p) => ty_metas(p, &mut out),
        Pat::Tm(p) => tm_metas(p, &mut out),
        Pat::Sub(p) => sub_metas(p, &mut out),
    }
    out.sort();
    out.dedup();
    out
}

fn ty_metas(p: &TyPat, out: &mut Vec<(Sort, u8)>) {
    match p {
        TyPat::Meta(i) => out.push((Sort::Ty, *i)),
        TyPat::U => {}
        TyPat::El(t) => tm_metas(t, out),
        TyPat::Pi(a, b) => {
            ty_metas(a, out);
            ty_metas(b, out);
        }
        TyPat::Sub(a, s) => {
            ty_metas(a, out);
            sub_metas(s, out);
        }
    }
}

fn tm_metas(p: &TmPat, out: &mut Vec<(Sort, u8)>) {
    match p {
        TmPat::Meta(i) => out.push((Sort::Tm, *i)),
        TmPat::Lam(t) | TmPat::App(t) => tm_metas(t, out),
        TmPat::Proj2(s) => sub_metas(s, out),
        TmPat::Sub(t, s) => {
            tm_metas(t, out);
            sub_metas(s, out);
        }
    }
}

fn sub_metas(p: &SubPat, out: &mut Vec<(Sort, u8)>) {
    match p {
        SubPat::Meta(i) => out.push((Sort::Sub, *i)),
        SubPat::Id | SubPat::Empty => {}
        SubPat::Comp(a, b) => {
            sub_metas(a, out);
            sub_metas(b, out);
        }
        SubPat::Ext(s, t) => {
            sub_metas(s, out);
            tm_metas(t, out);
        }
        SubPat::Proj1(s) => sub_metas(s, out),
    }
}

// Short constructors for the catalog table.
fn ta(i: u8) -> TyPat {
    TyPat::Meta(i)
}
fn tt(i: u8) -> TmPat {
    TmPat::Meta(i)
}
fn ss(i: u8) -> SubPat {
    SubPat::Meta(i)
}
fn el(t: TmPat) -> TyPat {
    TyPat::El(Box::new(t))
}
fn pi(a: TyPat, b: TyPat) -> TyPat {
    TyPat::Pi(Box::new(a), Box::new(b))
}
fn tysub(a: TyPat, s: SubPat) -> TyPat {
    TyPat::Sub(Box::new(a), Box::new(s))
}
fn lam(t: TmPat) -> TmPat {
    TmPat::Lam(Box::new(t))
}
fn app(t: TmPat) -> TmPat {
    TmPat::App(Box::new(t))
}
fn p2(s: SubPat) -> TmPat {
    TmPat::Proj2(Box::new(s))
}
fn tmsub(t: TmPat, s: SubPat) -> TmPat {
    TmPat::Sub(Box::new(t), Box::new(s))
}
fn comp(a: SubPat, b: SubPat) -> SubPat {
    SubPat::Comp(Box::new(a), Box::new(b))
}
fn ext(s: SubPat, t: TmPat) -> SubPat {
    SubPat::Ext(Box::new(s), Box::new(t))
}
fn p1(s: SubPat) -> SubPat {
    SubPat::Proj1(Box::new(s))
}

/// The lifting `s ↑ A` as a schema: `(s o p1 id, p2 id)`.
fn lift_pat(s: SubPat) -> SubPat {
    ext(comp(s, p1(SubPat::Id)), p2(SubPat::Id))
}

static CATALOG: LazyLock<Vec<ConvAxiom>> = LazyLock::new(|| {
    use Side::*;
    vec![
        ConvAxiom {
            name: "[id]",
            lhs: Pat::Ty(tysub(ta(0), SubPat::Id)),
            rhs: Pat::Ty(ta(0)),
            side: None,
        },
        ConvAxiom {
            name: "[][]",
            lhs: Pat::Ty(tysub(tysub(ta(0), ss(0)), ss(1))),
            rhs: Pat::Ty(tysub(ta(0), comp(ss(0), ss(1)))),
            side: None,
        },
        ConvAxiom {
            name: "U[]",
            lhs: Pat::Ty(tysub(TyPat::U, ss(0))),
            rhs: Pat::Ty(TyPat::U),
            side: None,
        },
        ConvAxiom {
            name: "El[]",
            lhs: Pat::Ty(tysub(el(tt(0)), ss(0))),
            rhs: Pat::Ty(el(tmsub(tt(0), ss(0)))),
            side: None,
        },
        ConvAxiom {
            name: "Pi[]",
            lhs: Pat::Ty(tysub(pi(ta(0), ta(1)), ss(0))),
            rhs: Pat::Ty(pi(tysub(ta(0), ss(0)), tysub(ta(1), lift_pat(ss(0))))),
            side: None,
        },
        ConvAxiom {
            name: "id∘",
            lhs: Pat::Sub(comp(SubPat::Id, ss(0))),
            rhs: Pat::Sub(ss(0)),
            side: None,
        },
        ConvAxiom {
            name: "∘id",
            lhs: Pat::Sub(comp(ss(0), SubPat::Id)),
            rhs: Pat::Sub(ss(0)),
            side: None,
        },
        ConvAxiom {
            name: "∘∘",
            lhs: Pat::Sub(comp(comp(ss(0), ss(1)), ss(2))),
            rhs: Pat::Sub(comp(ss(0), comp(ss(1), ss(2)))),
            side: None,
        },
        ConvAxiom {
            name: "εη",
            lhs: Pat::Sub(ss(0)),
            rhs: Pat::Sub(SubPat::Empty),
            side: TargetsEmpty(0),
        },
        ConvAxiom {
            name: "π₁β",
            lhs: Pat::Sub(p1(ext(ss(0), tt(0)))),
            rhs: Pat::Sub(ss(0)),
            side: None,
        },
        ConvAxiom {
            name: "πη",
            lhs: Pat::Sub(ext(p1(ss(0)), p2(ss(0)))),
            rhs: Pat::Sub(ss(0)),
            side: TargetsNonEmpty(0),
        },
        ConvAxiom {
            name: ",∘",
            lhs: Pat::Sub(comp(ext(ss(0), tt(0)), ss(1))),
            rhs: Pat::Sub(ext(comp(ss(0), ss(1)), tmsub(tt(0), ss(1)))),
            side: None,
        },
        ConvAxiom {
            name: "π₂β",
            lhs: Pat::Tm(p2(ext(ss(0), tt(0)))),
            rhs: Pat::Tm(tt(0)),
            side: None,
        },
        ConvAxiom {
            name: "Πβ",
            lhs: Pat::Tm(app(lam(tt(0)))),
            rhs: Pat::Tm(tt(0)),
            side: None,
        },
        ConvAxiom {
            name: "Πη",
            lhs: Pat::Tm(lam(app(tt(0)))),
            rhs: Pat::Tm(tt(0)),
            side: None,
        },
        ConvAxiom {
            name: "lam[]",
            lhs: Pat::Tm(tmsub(lam(tt(0)), ss(0))),
            rhs: Pat::Tm(lam(tmsub(tt(0), lift_pat(ss(0))))),
            side: None,
        },
    ]
});

pub fn catalog() -> &'static [ConvAxiom] {
    &CATALOG
}

pub fn axiom(name: &str) -> Option<&'static ConvAxiom> {
    CATALOG.iter().find(|ax| ax.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::text::{parse_sub, parse_tm};

    #[test]
    fn catalog_has_exactly_the_sixteen_laws() {
        let names: Vec<_> = catalog().iter().map(|ax| ax.name).collect();
        assert_eq!(
            names,
            vec![
                "[id]", "[][]", "U[]", "El[]", "Pi[]", "id∘", "∘id", "∘∘", "εη", "π₁β",
                "πη", ",∘", "π₂β", "Πβ", "Πη", "lam[]",
            ]
        );
        assert_eq!(catalog().len(), 16);
    }

    #[test]
    fn lhs_and_rhs_sorts_agree() {
        for ax in catalog() {
            assert_eq!(ax.lhs.sort(), ax.rhs.sort(), "{}", ax.name);
        }
    }

    #[test]
    fn beta_matches_and_instantiates() {
        let ax = axiom("Πβ").unwrap();
        let redex = parse_tm("app (lam (p2 id))").unwrap();
        let mut b = Binding::default();
        assert!(match_pat(&ax.lhs, &Node::Tm(redex), &mut b));
        let rhs = inst_pat(&ax.rhs, &b).unwrap();
        assert_eq!(rhs, Node::Tm(parse_tm("p2 id").unwrap()));
    }

    #[test]
    fn nonlinear_match_requires_equal_bindings() {
        let ax = axiom("πη").unwrap();
        let good = parse_sub("(p1 eps, p2 eps)").unwrap();
        let bad = parse_sub("(p1 eps, p2 id)").unwrap();
        let mut b = Binding::default();
        assert!(match_pat(&ax.lhs, &Node::Sub(good), &mut b));
        let mut b = Binding::default();
        assert!(!match_pat(&ax.lhs, &Node::Sub(bad), &mut b));
    }

    #[test]
    fn unbound_metas_are_reported() {
        // Matching the reversed π₂β leaves the substitution meta open.
        let ax = axiom("π₂β").unwrap();
        let mut b = Binding::default();
        assert!(match_pat(
            &ax.rhs,
            &Node::Tm(parse_tm("p2 id").unwrap()),
            &mut b
        ));
        assert_eq!(inst_pat(&ax.lhs, &b), None);
        assert_eq!(pat_metas(&ax.lhs), vec![(Sort::Tm, 0), (Sort::Sub, 0)]);
    }
}
