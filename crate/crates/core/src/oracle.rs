//! A bounded, undirected rewrite search over the conversion-axiom
//! catalog: two pieces of syntax are reported equal when some chain of
//! axiom instances (applied at any position, in either direction)
//! connects them within a depth bound.
//!
//! This is deliberately brute force and entirely independent of the
//! evaluator: it knows nothing about values, environments or quoting.
//! It is the second route against which normalisation is checked.
//!
//! Two practical devices keep the search finite:
//!
//! * Rewrite directions that must invent a metavariable (for example
//!   rewriting `t` to `p2 (s, t)` for an arbitrary `s`) instantiate it
//!   from a pool: the subterms of the two endpoints plus a few
//!   canonical atoms.
//! * The terminal-object law (a substitution into the empty context
//!   equals `eps`) is applied only where a syntactic target-length
//!   computation certifies the target really is empty; applied blindly
//!   it would equate terms of different types.
//!
//! The search is bidirectional (frontiers grow from both endpoints and
//! meet in the middle) with intermediate sizes capped a little above
//! the endpoints.

use std::collections::HashSet;
use std::rc::Rc;

use crate::axioms::{catalog, inst_pat, match_pat, pat_metas, Binding, Node, Pat, Side, Sort};
use crate::syntax::{Ctx, Sub, Tm, Ty};

/// Outcome of a search. `NotEqualWithinDepth` means the search ran to
/// its depth (and size) horizon without connecting the endpoints;
/// `Unknown` means the node budget was exhausted first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    NotEqualWithinDepth,
    Unknown,
}

#[derive(Clone, Copy, Debug)]
pub struct OracleCfg {
    /// Maximum rewrite-path length between the endpoints.
    pub depth: usize,
    /// Total node budget across both frontiers.
    pub node_budget: usize,
    /// Intermediate terms may exceed the larger endpoint by this much.
    pub size_slack: usize,
}

pub const DEFAULT_ORACLE_DEPTH: usize = 12;

impl Default for OracleCfg {
    fn default() -> OracleCfg {
        OracleCfg {
            depth: DEFAULT_ORACLE_DEPTH,
            node_budget: 300_000,
            size_slack: 16,
        }
    }
}

impl OracleCfg {
    pub fn with_depth(depth: usize) -> OracleCfg {
        OracleCfg {
            depth,
            ..OracleCfg::default()
        }
    }
}

/// Decides whether two terms of the same type are connected by the
/// axioms. The type participates only by seeding the instantiation
/// pool; rewriting itself is untyped.
pub fn rewrite_oracle_tm(
    ctx: &Ctx,
    ty: &Ty,
    t0: &Rc<Tm>,
    t1: &Rc<Tm>,
    cfg: &OracleCfg,
) -> Verdict {
    let seeds = [
        Node::Tm(t0.clone()),
        Node::Tm(t1.clone()),
        Node::Ty(Rc::new(ty.clone())),
    ];
    search(
        Node::Tm(t0.clone()),
        Node::Tm(t1.clone()),
        &seeds,
        ctx.len(),
        cfg,
    )
}

pub fn rewrite_oracle_ty(ctx: &Ctx, a0: &Rc<Ty>, a1: &Rc<Ty>, cfg: &OracleCfg) -> Verdict {
    let seeds = [Node::Ty(a0.clone()), Node::Ty(a1.clone())];
    search(Node::Ty(a0.clone()), Node::Ty(a1.clone()), &seeds, ctx.len(), cfg)
}

pub fn rewrite_oracle_sub(ctx: &Ctx, s0: &Rc<Sub>, s1: &Rc<Sub>, cfg: &OracleCfg) -> Verdict {
    let seeds = [Node::Sub(s0.clone()), Node::Sub(s1.clone())];
    search(Node::Sub(s0.clone()), Node::Sub(s1.clone()), &seeds, ctx.len(), cfg)
}

/// Length of the target context of a substitution, given the length of
/// its source. `None` when the shape cannot be well-typed (or depends
/// on an already-unknown length).
fn target_len(s: &Sub, src: Option<i64>) -> Option<i64> {
    match s {
        Sub::Id => src,
        Sub::Empty => Some(0),
        Sub::Ext(s, _) => Some(target_len(s, src)? + 1),
        Sub::Proj1(s) => {
            let d = target_len(s, src)?;
            if d >= 1 {
                Some(d - 1)
            } else {
                None
            }
        }
        Sub::Comp(f, g) => target_len(f, target_len(g, src)),
    }
}

fn side_ok(side: Side, b: &Binding, ambient: Option<i64>) -> bool {
    match side {
        Side::None => true,
        Side::TargetsEmpty(i) => match b.sub(i) {
            Some(s) => target_len(s, ambient) == Some(0),
            None => false,
        },
        Side::TargetsNonEmpty(i) => match b.sub(i) {
            Some(s) => matches!(target_len(s, ambient), Some(d) if d >= 1),
            None => false,
        },
    }
}

/// The instantiation pool: subterms of the seeds by sort, plus
/// canonical atoms, deduplicated, smallest first, truncated.
struct Pool {
    tms: Vec<Rc<Tm>>,
    subs: Vec<Rc<Sub>>,
    tys: Vec<Rc<Ty>>,
}

const POOL_CAP: usize = 12;

impl Pool {
    fn build(seeds: &[Node]) -> Pool {
        let mut tms: HashSet<Rc<Tm>> = HashSet::new();
        let mut subs: HashSet<Rc<Sub>> = HashSet::new();
        let mut tys: HashSet<Rc<Ty>> = HashSet::new();
        for n in seeds {
            match n {
                Node::Tm(t) => collect_tm(t, &mut tms, &mut subs, &mut tys),
                Node::Sub(s) => collect_sub(s, &mut tms, &mut subs, &mut tys),
                Node::Ty(a) => collect_ty(a, &mut tms, &mut subs, &mut tys),
            }
        }
        subs.insert(Rc::new(Sub::Id));
        subs.insert(Rc::new(Sub::Empty));
        subs.insert(Rc::new(Sub::Proj1(Rc::new(Sub::Id))));
        tms.insert(Rc::new(Tm::Proj2(Rc::new(Sub::Id))));
        tys.insert(Rc::new(Ty::U));
        let mut tms: Vec<_> = tms.into_iter().collect();
        let mut subs: Vec<_> = subs.into_iter().collect();
        let mut tys: Vec<_> = tys.into_iter().collect();
        tms.sort_by(|a, b| (a.size(), &**a).cmp(&(b.size(), &**b)));
        subs.sort_by(|a, b| (a.size(), &**a).cmp(&(b.size(), &**b)));
        tys.sort_by(|a, b| (a.size(), &**a).cmp(&(b.size(), &**b)));
        tms.truncate(POOL_CAP);
        subs.truncate(POOL_CAP);
        tys.truncate(POOL_CAP);
        Pool { tms, subs, tys }
    }
}

fn collect_tm(
    t: &Rc<Tm>,
    tms: &mut HashSet<Rc<Tm>>,
    subs: &mut HashSet<Rc<Sub>>,
    tys: &mut HashSet<Rc<Ty>>,
) {
    if !tms.insert(t.clone()) {
        return;
    }
    match t.as_ref() {
        Tm::Lam(b) | Tm::App(b) => collect_tm(b, tms, subs, tys),
        Tm::Proj2(s) => collect_sub(s, tms, subs, tys),
        Tm::Sub(b, s) => {
            collect_tm(b, tms, subs, tys);
            collect_sub(s, tms, subs, tys);
        }
    }
}

fn collect_sub(
    s: &Rc<Sub>,
    tms: &mut HashSet<Rc<Tm>>,
    subs: &mut HashSet<Rc<Sub>>,
    tys: &mut HashSet<Rc<Ty>>,
) {
    if !subs.insert(s.clone()) {
        return;
    }
    match s.as_ref() {
        Sub::Id | Sub::Empty => {}
        Sub::Comp(a, b) => {
            collect_sub(a, tms, subs, tys);
            collect_sub(b, tms, subs, tys);
        }
        Sub::Ext(a, t) => {
            collect_sub(a, tms, subs, tys);
            collect_tm(t, tms, subs, tys);
        }
        Sub::Proj1(a) => collect_sub(a, tms, subs, tys),
    }
}

fn collect_ty(
    a: &Rc<Ty>,
    tms: &mut HashSet<Rc<Tm>>,
    subs: &mut HashSet<Rc<Sub>>,
    tys: &mut HashSet<Rc<Ty>>,
) {
    if !tys.insert(a.clone()) {
        return;
    }
    match a.as_ref() {
        Ty::U => {}
        Ty::El(t) => collect_tm(t, tms, subs, tys),
        Ty::Pi(x, y) => {
            collect_ty(x, tms, subs, tys);
            collect_ty(y, tms, subs, tys);
        }
        Ty::Sub(x, s) => {
            collect_ty(x, tms, subs, tys);
            collect_sub(s, tms, subs, tys);
        }
    }
}

fn bare_meta(p: &Pat) -> Option<(Sort, u8)> {
    match p {
        Pat::Ty(crate::axioms::TyPat::Meta(i)) => Some((Sort::Ty, *i)),
        Pat::Tm(crate::axioms::TmPat::Meta(i)) => Some((Sort::Tm, *i)),
        Pat::Sub(crate::axioms::SubPat::Meta(i)) => Some((Sort::Sub, *i)),
        _ => None,
    }
}

/// All nodes reachable from `node` by one axiom instance applied at
/// this position (not inside it).
fn rules_at(node: &Node, ambient: Option<i64>, pool: &Pool, out: &mut Vec<Node>) {
    for ax in catalog() {
        if ax.sort() != node.sort() {
            continue;
        }
        let dirs: [(&Pat, &Pat); 2] = [(&ax.lhs, &ax.rhs), (&ax.rhs, &ax.lhs)];
        for (from, to) in dirs {
            // A direction whose entire result is a metavariable the
            // source never binds would replace the node by an arbitrary
            // pool entry. Its mirror direction already gives the same
            // connectivity, so drop it (this is the reversed terminal
            // law).
            if let Some(m) = bare_meta(to) {
                if !pat_metas(from).contains(&m) {
                    continue;
                }
            }
            let mut b = Binding::default();
            if !match_pat(from, node, &mut b) {
                continue;
            }
            let unbound: Vec<(Sort, u8)> = pat_metas(to)
                .into_iter()
                .filter(|(sort, i)| match sort {
                    Sort::Ty => b.ty(*i).is_none(),
                    Sort::Tm => b.tm(*i).is_none(),
                    Sort::Sub => b.sub(*i).is_none(),
                })
                .collect();
            match unbound.as_slice() {
                [] => {
                    if side_ok(ax.side, &b, ambient) {
                        if let Some(n) = inst_pat(to, &b) {
                            out.push(n);
                        }
                    }
                }
                [(sort, i)] => match sort {
                    Sort::Tm => {
                        for cand in &pool.tms {
                            let mut b2 = b.clone();
                            b2.set_tm(*i, cand.clone());
                            if side_ok(ax.side, &b2, ambient) {
                                if let Some(n) = inst_pat(to, &b2) {
                                    out.push(n);
                                }
                            }
                        }
                    }
                    Sort::Sub => {
                        for cand in &pool.subs {
                            let mut b2 = b.clone();
                            b2.set_sub(*i, cand.clone());
                            if side_ok(ax.side, &b2, ambient) {
                                if let Some(n) = inst_pat(to, &b2) {
                                    out.push(n);
                                }
                            }
                        }
                    }
                    Sort::Ty => {
                        for cand in &pool.tys {
                            let mut b2 = b.clone();
                            b2.set_ty(*i, cand.clone());
                            if side_ok(ax.side, &b2, ambient) {
                                if let Some(n) = inst_pat(to, &b2) {
                                    out.push(n);
                                }
                            }
                        }
                    }
                },
                more => unreachable!("catalog rule with {} unbound metas", more.len()),
            }
        }
    }
}

fn dec(d: Option<i64>) -> Option<i64> {
    match d {
        Some(v) if v >= 1 => Some(v - 1),
        _ => None,
    }
}

fn inc(d: Option<i64>) -> Option<i64> {
    d.map(|v| v + 1)
}

/// One-step rewrites of a whole node, at every position. `ambient` is
/// the source-context length at the current position, tracked so the
/// target-length side conditions stay exact on well-typed data.
fn steps(node: &Node, ambient: Option<i64>, pool: &Pool) -> Vec<Node> {
    match node {
        Node::Tm(t) => child_tm(t, ambient, pool).into_iter().map(Node::Tm).collect(),
        Node::Sub(s) => child_sub(s, ambient, pool).into_iter().map(Node::Sub).collect(),
        Node::Ty(a) => child_ty(a, ambient, pool).into_iter().map(Node::Ty).collect(),
    }
}

fn child_tm(t: &Rc<Tm>, ambient: Option<i64>, pool: &Pool) -> Vec<Rc<Tm>> {
    let mut out = Vec::new();
    let mut here = Vec::new();
    rules_at(&Node::Tm(t.clone()), ambient, pool, &mut here);
    for n in here {
        if let Node::Tm(t2) = n {
            out.push(t2);
        }
    }
    out.extend(steps_in_tm(t, ambient, pool));
    out
}

fn child_sub(s: &Rc<Sub>, ambient: Option<i64>, pool: &Pool) -> Vec<Rc<Sub>> {
    let mut out = Vec::new();
    let mut here = Vec::new();
    rules_at(&Node::Sub(s.clone()), ambient, pool, &mut here);
    for n in here {
        if let Node::Sub(s2) = n {
            out.push(s2);
        }
    }
    out.extend(steps_in_sub(s, ambient, pool));
    out
}

fn child_ty(a: &Rc<Ty>, ambient: Option<i64>, pool: &Pool) -> Vec<Rc<Ty>> {
    let mut out = Vec::new();
    let mut here = Vec::new();
    rules_at(&Node::Ty(a.clone()), ambient, pool, &mut here);
    for n in here {
        if let Node::Ty(a2) = n {
            out.push(a2);
        }
    }
    out.extend(steps_in_ty(a, ambient, pool));
    out
}

fn steps_in_tm(t: &Rc<Tm>, ambient: Option<i64>, pool: &Pool) -> Vec<Rc<Tm>> {
    let mut out = Vec::new();
    match t.as_ref() {
        Tm::Lam(b) => {
            for b2 in child_tm(b, inc(ambient), pool) {
                out.push(Rc::new(Tm::Lam(b2)));
            }
        }
        // The categorical app's body lives one binder further out.
        Tm::App(b) => {
            for b2 in child_tm(b, dec(ambient), pool) {
                out.push(Rc::new(Tm::App(b2)));
            }
        }
        Tm::Proj2(s) => {
            for s2 in child_sub(s, ambient, pool) {
                out.push(Rc::new(Tm::Proj2(s2)));
            }
        }
        Tm::Sub(b, s) => {
            let inner = target_len(s, ambient);
            for b2 in child_tm(b, inner, pool) {
                out.push(Rc::new(Tm::Sub(b2, s.clone())));
            }
            for s2 in child_sub(s, ambient, pool) {
                out.push(Rc::new(Tm::Sub(b.clone(), s2)));
            }
        }
    }
    out
}

fn steps_in_sub(s: &Rc<Sub>, ambient: Option<i64>, pool: &Pool) -> Vec<Rc<Sub>> {
    let mut out = Vec::new();
    match s.as_ref() {
        Sub::Id | Sub::Empty => {}
        Sub::Comp(f, g) => {
            let mid = target_len(g, ambient);
            for f2 in child_sub(f, mid, pool) {
                out.push(Rc::new(Sub::Comp(f2, g.clone())));
            }
            for g2 in child_sub(g, ambient, pool) {
                out.push(Rc::new(Sub::Comp(f.clone(), g2)));
            }
        }
        Sub::Ext(f, t) => {
            for f2 in child_sub(f, ambient, pool) {
                out.push(Rc::new(Sub::Ext(f2, t.clone())));
            }
            for t2 in child_tm(t, ambient, pool) {
                out.push(Rc::new(Sub::Ext(f.clone(), t2)));
            }
        }
        Sub::Proj1(f) => {
            for f2 in child_sub(f, ambient, pool) {
                out.push(Rc::new(Sub::Proj1(f2)));
            }
        }
    }
    out
}

fn steps_in_ty(a: &Rc<Ty>, ambient: Option<i64>, pool: &Pool) -> Vec<Rc<Ty>> {
    let mut out = Vec::new();
    match a.as_ref() {
        Ty::U => {}
        Ty::El(t) => {
            for t2 in child_tm(t, ambient, pool) {
                out.push(Rc::new(Ty::El(t2)));
            }
        }
        Ty::Pi(dom, cod) => {
            for d2 in child_ty(dom, ambient, pool) {
                out.push(Rc::new(Ty::Pi(d2, cod.clone())));
            }
            for c2 in child_ty(cod, inc(ambient), pool) {
                out.push(Rc::new(Ty::Pi(dom.clone(), c2)));
            }
        }
        Ty::Sub(x, s) => {
            let inner = target_len(s, ambient);
            for x2 in child_ty(x, inner, pool) {
                out.push(Rc::new(Ty::Sub(x2, s.clone())));
            }
            for s2 in child_sub(s, ambient, pool) {
                out.push(Rc::new(Ty::Sub(x.clone(), s2)));
            }
        }
    }
    out
}

fn search(start: Node, goal: Node, seeds: &[Node], ctx_len: usize, cfg: &OracleCfg) -> Verdict {
    if start == goal {
        return Verdict::Equal;
    }
    if cfg.depth == 0 {
        return Verdict::NotEqualWithinDepth;
    }
    let pool = Pool::build(seeds);
    let size_cap = start.size().max(goal.size()) + cfg.size_slack;
    let ambient = Some(ctx_len as i64);

    let mut visited0: HashSet<Node> = HashSet::from([start.clone()]);
    let mut visited1: HashSet<Node> = HashSet::from([goal.clone()]);
    let mut frontier0 = vec![start];
    let mut frontier1 = vec![goal];
    let mut radius0 = 0usize;
    let mut radius1 = 0usize;
    let mut total = 2usize;

    while radius0 + radius1 < cfg.depth {
        if frontier0.is_empty() && frontier1.is_empty() {
            return Verdict::NotEqualWithinDepth;
        }
        // Expand the cheaper side.
        let expand_first = !frontier0.is_empty()
            && (frontier1.is_empty() || frontier0.len() <= frontier1.len());
        let (frontier, visited, other_visited, radius) = if expand_first {
            (&mut frontier0, &mut visited0, &visited1, &mut radius0)
        } else {
            (&mut frontier1, &mut visited1, &visited0, &mut radius1)
        };
        let mut next = Vec::new();
        for node in frontier.iter() {
            for succ in steps(node, ambient, &pool) {
                if succ.size() > size_cap {
                    continue;
                }
                if other_visited.contains(&succ) {
                    return Verdict::Equal;
                }
                if visited.insert(succ.clone()) {
                    total += 1;
                    if total > cfg.node_budget {
                        return Verdict::Unknown;
                    }
                    next.push(succ);
                }
            }
        }
        *frontier = next;
        *radius += 1;
    }
    Verdict::NotEqualWithinDepth
}
