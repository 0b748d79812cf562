//! Acceptance suite. One test per criterion; each prints a single
//! PASS line with its measurements (visible with `--nocapture`) or
//! panics with the failing case.

use std::collections::HashMap;
use std::rc::Rc;
use std::time::{Duration, Instant};

use tinytt_core::axioms::catalog;
use tinytt_core::elab::{check, elab_type, Scope};
use tinytt_core::eval::{eval_tm, eval_ty, fresh_env, rename_value, Fuel, Value};
use tinytt_core::generate::{
    all_renaming_maps, axiom_instances, context_battery, enumerate_surface, typed_renamings,
    Gen, Instance,
};
use tinytt_core::nbe::{conv, norm, norm_sub, norm_ty_full, quote};
use tinytt_core::normal::{
    dec_nf, embed_nf, embed_nty, enumerate_ne, enumerate_nf, norm_ty, rename_ne, rename_nf,
    Dec, NTy, Nf,
};
use tinytt_core::oracle::{
    rewrite_oracle_sub, rewrite_oracle_tm, rewrite_oracle_ty, OracleCfg, Verdict,
};
use tinytt_core::ren::{embed_var, Renaming, Var};
use tinytt_core::surface::parse_expr;
use tinytt_core::syntax::{Ctx, Sub, Tm, Ty};

fn assert_under(what: &str, elapsed: Duration, limit: Duration) {
    assert!(
        elapsed <= limit,
        "{what} took {elapsed:?}, over the {limit:?} budget"
    );
}

/// The per-context type battery used by the stability enumeration: the
/// three assumption shapes plus every El of an enumerable U-neutral.
fn type_battery(ctx: &Ctx) -> Vec<Ty> {
    let mut out = vec![
        Ty::U,
        Ty::Pi(Rc::new(Ty::U), Rc::new(Ty::U)),
        Ty::Pi(Rc::new(Ty::U), Rc::new(Ty::El(Rc::new(embed_var(Var(0)))))),
    ];
    for (n, t) in enumerate_ne(ctx, 4) {
        if norm_ty(&t) == NTy::U {
            out.push(Ty::El(Rc::new(tinytt_core::normal::embed_ne(&n))));
        }
    }
    out
}

/// Criterion 1: for each of the sixteen conversion axioms, at least
/// 200 generated well-typed instances in contexts of length <= 3
/// normalise to structurally equal normal forms.
#[test]
fn criterion_1_conversion_axiom_soundness() {
    let started = Instant::now();
    let fuel = Fuel::default();
    let mut total = 0usize;
    for (i, ax) in catalog().iter().enumerate() {
        let mut gen = Gen::new(1000 + i as u64);
        let instances = axiom_instances(ax.name, &mut gen, 200)
            .unwrap_or_else(|e| panic!("axiom {}: {e}", ax.name));
        for inst in &instances {
            total += 1;
            match inst {
                Instance::Tm { ctx, ty, lhs, rhs } => {
                    let n0 = norm(ctx, ty, lhs, &fuel).unwrap_or_else(|e| {
                        panic!("{}: lhs failed to normalise: {e}\n  {lhs}", ax.name)
                    });
                    let n1 = norm(ctx, ty, rhs, &fuel).unwrap();
                    assert_eq!(n0, n1, "{}: norm(lhs) != norm(rhs)\n  lhs {lhs}\n  rhs {rhs}", ax.name);
                }
                Instance::Sub { ctx, tgt, lhs, rhs } => {
                    let n0 = norm_sub(ctx, tgt, lhs, &fuel).unwrap();
                    let n1 = norm_sub(ctx, tgt, rhs, &fuel).unwrap();
                    assert_eq!(n0, n1, "{}: norm(lhs) != norm(rhs)\n  lhs {lhs}\n  rhs {rhs}", ax.name);
                }
                Instance::Ty { ctx, lhs, rhs } => {
                    let n0 = norm_ty_full(ctx, lhs, &fuel).unwrap();
                    let n1 = norm_ty_full(ctx, rhs, &fuel).unwrap();
                    assert_eq!(n0, n1, "{}: norm(lhs) != norm(rhs)\n  lhs {lhs}\n  rhs {rhs}", ax.name);
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert_under("criterion 1", elapsed, Duration::from_secs(60));
    println!(
        "criterion 1 (conversion-axiom soundness): PASS — 16 axioms x 200 instances, {total} checks in {elapsed:?}"
    );
}

/// Criterion 2: stability. Every normal form of size <= 6 over the
/// battery contexts of length <= 2 satisfies norm(embed v) = v.
#[test]
fn criterion_2_stability() {
    let started = Instant::now();
    let fuel = Fuel::default();
    let mut checked = 0usize;
    for ctx in context_battery(2) {
        for ty in type_battery(&ctx) {
            for v in enumerate_nf(&ctx, &ty, 6) {
                let back = norm(&ctx, &ty, &embed_nf(&v), &fuel)
                    .unwrap_or_else(|e| panic!("norm failed on embedded nf: {e}"));
                assert_eq!(back, v, "stability failed at type {ty}");
                checked += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(checked >= 40, "enumeration unexpectedly small: {checked}");
    assert_under("criterion 2", elapsed, Duration::from_secs(60));
    println!("criterion 2 (stability): PASS — {checked} normal forms in {elapsed:?}");
}

/// Criterion 3: completeness. For >= 500 generated well-typed terms of
/// size <= 6, the rewrite oracle connects the term to its embedded
/// normal form within depth 12, with no unknowns.
#[test]
fn criterion_3_completeness() {
    let started = Instant::now();
    let fuel = Fuel::default();
    let cfg = OracleCfg::default(); // depth 12
    let mut gen = Gen::new(42);
    let mut checked = 0usize;
    let mut attempts = 0usize;
    while checked < 500 {
        attempts += 1;
        assert!(attempts < 20_000, "generator starved: {checked} terms after {attempts} attempts");
        let Some((ctx, ty, tm)) = gen.well_typed_tm(3, 4, 6) else {
            continue;
        };
        if tm.size() > 6 {
            continue;
        }
        let nf = norm(&ctx, &ty, &tm, &fuel)
            .unwrap_or_else(|e| panic!("norm failed on generated term {tm}: {e}"));
        let back = Rc::new(embed_nf(&nf));
        let verdict = rewrite_oracle_tm(&ctx, &ty, &Rc::new(tm.clone()), &back, &cfg);
        assert_eq!(
            verdict,
            Verdict::Equal,
            "oracle could not certify completeness for {tm} vs {} (type {ty})",
            back
        );
        checked += 1;
    }
    let elapsed = started.elapsed();
    assert_under("criterion 3", elapsed, Duration::from_secs(300));
    println!("criterion 3 (completeness): PASS — {checked} terms at oracle depth 12 in {elapsed:?}");
}

/// Criterion 4: decidability. On all pairs from the stability
/// enumeration, conv is equivalent to structural equality of normal
/// forms, and a decisive oracle never contradicts conv.
#[test]
fn criterion_4_decidability_oracle_equivalence() {
    let started = Instant::now();
    let fuel = Fuel::default();
    let cfg = OracleCfg {
        depth: 4,
        node_budget: 60_000,
        size_slack: 12,
    };
    let mut pairs = 0usize;
    let mut decisive = 0usize;
    for ctx in context_battery(2) {
        for ty in type_battery(&ctx) {
            let nfs = enumerate_nf(&ctx, &ty, 6);
            let terms: Vec<Rc<Tm>> =
                nfs.iter().map(|v| Rc::new(embed_nf(v))).collect();
            for i in 0..nfs.len() {
                for j in i..nfs.len() {
                    pairs += 1;
                    let d = conv(&ctx, &ty, terms[i].as_ref(), terms[j].as_ref(), &fuel)
                        .unwrap();
                    let n_i = norm(&ctx, &ty, terms[i].as_ref(), &fuel).unwrap();
                    let n_j = norm(&ctx, &ty, terms[j].as_ref(), &fuel).unwrap();
                    assert_eq!(
                        d.is_equal(),
                        n_i == n_j,
                        "conv disagrees with structural equality of normal forms"
                    );
                    assert_eq!(d.is_equal(), nfs[i] == nfs[j], "conv disagrees with the enumeration");
                    let verdict = rewrite_oracle_tm(&ctx, &ty, &terms[i], &terms[j], &cfg);
                    match verdict {
                        Verdict::Equal => {
                            decisive += 1;
                            assert!(d.is_equal(), "oracle says equal, conv disagrees");
                        }
                        Verdict::NotEqualWithinDepth => {
                            decisive += 1;
                            assert!(!d.is_equal(), "conv says equal, oracle says not within depth");
                        }
                        Verdict::Unknown => {}
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    println!(
        "criterion 4 (decidability, oracle agreement): PASS — {pairs} pairs, {decisive} decisive oracle verdicts in {elapsed:?}"
    );
}

/// Criterion 5: consistency. No normal form inhabits U in the empty
/// context, and no closed surface term of size <= 6 checks at U in the
/// empty signature.
#[test]
fn criterion_5_consistency() {
    let started = Instant::now();
    for k in 0..=10 {
        assert!(
            enumerate_nf(&Ctx::empty(), &Ty::U, k).is_empty(),
            "a normal form of type U appeared in the empty context at size {k}"
        );
    }
    let fuel = Fuel::default();
    let scope = Scope::empty();
    let mut rejected = 0usize;
    for e in enumerate_surface(6) {
        if check(&scope, &e, &Ty::U, &fuel).is_ok() {
            panic!("closed surface term accepted at U: {e:?}");
        }
        rejected += 1;
    }
    let elapsed = started.elapsed();
    println!(
        "criterion 5 (consistency): PASS — empty enumeration to size 10, {rejected} closed surface terms all rejected in {elapsed:?}"
    );
}

/// Criterion 6: type normalisation. Round trip, oracle certification
/// at depth 8, and injectivity of Pi on normal types.
#[test]
fn criterion_6_type_normalisation() {
    let started = Instant::now();
    let fuel = Fuel::default();
    let cfg = OracleCfg::with_depth(8);
    // Generated well-formed types: round trip plus oracle certificate.
    let mut gen = Gen::new(99);
    let mut checked = 0usize;
    let mut attempts = 0usize;
    while checked < 200 {
        attempts += 1;
        assert!(attempts < 10_000, "type generator starved");
        let ctx = gen.ctx(3);
        let a = gen.ty(&ctx, 6);
        if a.size() > 6 {
            continue;
        }
        let n = norm_ty(&a);
        let back = embed_nty(&n);
        assert_eq!(norm_ty(&back), n, "normTy round trip failed for {a}");
        let verdict =
            rewrite_oracle_ty(&ctx, &Rc::new(a.clone()), &Rc::new(back.clone()), &cfg);
        assert_eq!(
            verdict,
            Verdict::Equal,
            "oracle could not certify {a} == {back} at depth 8"
        );
        checked += 1;
    }
    // Injectivity of Pi, exhaustively over all raw types of size <= 5:
    // equal normal types of Pi shape have equal normal components.
    let mut pi_groups: HashMap<NTy, Vec<(Rc<Ty>, Rc<Ty>)>> = HashMap::new();
    let mut enumerated = 0usize;
    for a in enumerate_raw_tys(5) {
        enumerated += 1;
        if let Ty::Pi(dom, cod) = a.as_ref() {
            pi_groups
                .entry(norm_ty(&a))
                .or_default()
                .push((dom.clone(), cod.clone()));
        } else if let n @ NTy::Pi(..) = norm_ty(&a) {
            // Substituted types whose normal form is a Pi: recover the
            // components through the normal form itself.
            let NTy::Pi(ndom, ncod) = &n else { unreachable!() };
            pi_groups
                .entry(n.clone())
                .or_default()
                .push((
                    Rc::new(embed_nty(ndom)),
                    Rc::new(embed_nty(ncod)),
                ));
        }
    }
    let mut pi_pairs = 0usize;
    for (_, members) in pi_groups.iter() {
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                pi_pairs += 1;
                assert_eq!(
                    norm_ty(&members[i].0),
                    norm_ty(&members[j].0),
                    "Pi injectivity failed on domains"
                );
                assert_eq!(
                    norm_ty(&members[i].1),
                    norm_ty(&members[j].1),
                    "Pi injectivity failed on codomains"
                );
            }
        }
    }
    let elapsed = started.elapsed();
    println!(
        "criterion 6 (type normalisation): PASS — {checked} round trips with oracle certificates, {enumerated} raw types, {pi_pairs} Pi-injectivity pairs in {elapsed:?}"
    );
}

/// All raw (possibly ill-typed) types of size <= bound; norm_ty is
/// total on them.
fn enumerate_raw_tys(bound: usize) -> Vec<Rc<Ty>> {
    let mut tys: Vec<Vec<Rc<Ty>>> = vec![Vec::new(); bound + 1];
    let mut tms: Vec<Vec<Rc<Tm>>> = vec![Vec::new(); bound + 1];
    let mut subs: Vec<Vec<Rc<Sub>>> = vec![Vec::new(); bound + 1];
    for size in 1..=bound {
        if size == 1 {
            subs[1].push(Rc::new(Sub::Id));
            subs[1].push(Rc::new(Sub::Empty));
            tys[1].push(Rc::new(Ty::U));
        }
        let mut new_tms = Vec::new();
        let mut new_subs = Vec::new();
        let mut new_tys = Vec::new();
        for inner in &tms[size - 1] {
            new_tms.push(Rc::new(Tm::Lam(inner.clone())));
            new_tms.push(Rc::new(Tm::App(inner.clone())));
            new_tys.push(Rc::new(Ty::El(inner.clone())));
        }
        for inner in &subs[size - 1] {
            new_tms.push(Rc::new(Tm::Proj2(inner.clone())));
            new_subs.push(Rc::new(Sub::Proj1(inner.clone())));
        }
        for left in 1..size.saturating_sub(1) {
            let right = size - 1 - left;
            for a in &tms[left] {
                for s in &subs[right] {
                    new_tms.push(Rc::new(Tm::Sub(a.clone(), s.clone())));
                }
            }
            for x in &subs[left] {
                for y in &subs[right] {
                    new_subs.push(Rc::new(Sub::Comp(x.clone(), y.clone())));
                }
                for t in &tms[right] {
                    new_subs.push(Rc::new(Sub::Ext(x.clone(), t.clone())));
                }
            }
            for a in &tys[left] {
                for b in &tys[right] {
                    new_tys.push(Rc::new(Ty::Pi(a.clone(), b.clone())));
                }
                for s in &subs[right] {
                    new_tys.push(Rc::new(Ty::Sub(a.clone(), s.clone())));
                }
            }
        }
        tms[size].extend(new_tms);
        subs[size].extend(new_subs);
        tys[size].extend(new_tys);
    }
    tys.into_iter().flatten().collect()
}

/// Criterion 7: category and presheaf laws, exhaustively for contexts
/// of length <= 3 (raw maps for the structural laws, typed renamings
/// and quote comparison for semantic values).
#[test]
fn criterion_7_categorical_laws() {
    let started = Instant::now();
    // Renaming category laws on raw maps.
    let mut law_checks = 0usize;
    for src in 0..=3usize {
        for tgt in 0..=3usize {
            for b in all_renaming_maps(src, tgt) {
                assert_eq!(Renaming::identity(tgt).compose(&b), b);
                assert_eq!(b.compose(&Renaming::identity(src)), b);
                law_checks += 2;
                for mid in 0..=2usize {
                    for g in all_renaming_maps(mid, src) {
                        for d in all_renaming_maps(2, mid) {
                            assert_eq!(
                                b.compose(&g).compose(&d),
                                b.compose(&g.compose(&d))
                            );
                            law_checks += 1;
                        }
                    }
                }
            }
        }
    }
    // Presheaf laws for normal forms and neutrals, structural.
    let fuel = Fuel::default();
    let battery = context_battery(2);
    let mut nf_checks = 0usize;
    for ctx in &battery {
        for ty in type_battery(ctx) {
            for v in enumerate_nf(ctx, &ty, 5) {
                let id = Renaming::identity(ctx.len());
                assert_eq!(rename_nf(&v, &id), v, "presheaf identity law (Nf)");
                nf_checks += 1;
                for bigger in &battery {
                    if bigger.len() > 3 {
                        continue;
                    }
                    for b in typed_renamings(bigger, ctx) {
                        for g in typed_renamings(bigger, bigger) {
                            assert_eq!(
                                rename_nf(&rename_nf(&v, &b), &g),
                                rename_nf(&v, &b.compose(&g)),
                                "presheaf composition law (Nf)"
                            );
                            nf_checks += 1;
                        }
                    }
                }
            }
        }
        for (n, _) in enumerate_ne(ctx, 5) {
            let id = Renaming::identity(ctx.len());
            assert_eq!(rename_ne(&n, &id), n, "presheaf identity law (Ne)");
            nf_checks += 1;
        }
    }
    // Presheaf laws for semantic values, compared via quote.
    let mut value_checks = 0usize;
    for ctx in &battery {
        for ty in type_battery(ctx) {
            for v in enumerate_nf(ctx, &ty, 5) {
                let env = fresh_env(ctx, &fuel).unwrap();
                let vt = eval_ty(&ty, &env, &fuel).unwrap();
                let value = eval_tm(&embed_nf(&v), &env, &fuel).unwrap();
                let id = Renaming::identity(ctx.len());
                let renamed = rename_value(&value, &id);
                assert_eq!(
                    quote(&vt, &renamed, ctx.len(), &fuel).unwrap(),
                    quote(&vt, &value, ctx.len(), &fuel).unwrap(),
                    "value identity law"
                );
                value_checks += 1;
                for bigger in &battery {
                    for b in typed_renamings(bigger, ctx) {
                        let vt_b = tinytt_core::eval::rename_vtype(&vt, &b);
                        let v_b = rename_value(&value, &b);
                        for g in typed_renamings(bigger, bigger) {
                            let lhs = rename_value(&v_b, &g);
                            let rhs = rename_value(&value, &b.compose(&g));
                            let vt_bg = tinytt_core::eval::rename_vtype(&vt_b, &g);
                            assert_eq!(
                                quote(&vt_bg, &lhs, bigger.len(), &fuel).unwrap(),
                                quote(&vt_bg, &rhs, bigger.len(), &fuel).unwrap(),
                                "value composition law"
                            );
                            value_checks += 1;
                        }
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    println!(
        "criterion 7 (categorical laws): PASS — {law_checks} category checks, {nf_checks} normal-form presheaf checks, {value_checks} value checks in {elapsed:?}"
    );
}

/// Criterion 8: Kripke naturality of function values: renaming after
/// application agrees with application after renaming, up to quote.
#[test]
fn criterion_8_kripke_naturality() {
    let started = Instant::now();
    let fuel = Fuel::default();
    let mut gen = Gen::new(7777);
    let battery = context_battery(2);
    let mut samples = 0usize;
    let mut attempts = 0usize;
    while samples < 200 {
        attempts += 1;
        assert!(attempts < 40_000, "sampler starved at {samples} samples");
        // A function value over psi, an argument over omega (renamed
        // into psi by beta), and a further renaming gamma.
        let psi = &battery[gen_pick(&mut gen, battery.len())];
        let a = gen.ty(psi, 3);
        let b = gen.ty(&psi.extended(a.clone()), 3);
        let pi = Ty::Pi(Rc::new(a.clone()), Rc::new(b));
        let Some(f_tm) = gen.tm(psi, &pi, 7) else { continue };

        let omega = &battery[gen_pick(&mut gen, battery.len())];
        let betas = typed_renamings(omega, psi);
        if betas.is_empty() {
            continue;
        }
        let beta = &betas[gen_pick(&mut gen, betas.len())];
        let dom_omega = Ty::Sub(Rc::new(a.clone()), Rc::new(beta.embed()));
        let Some(u_tm) = gen.tm(omega, &dom_omega, 6) else {
            continue;
        };
        let xi = &battery[gen_pick(&mut gen, battery.len())];
        let gammas = typed_renamings(xi, omega);
        if gammas.is_empty() {
            continue;
        }
        let gamma = &gammas[gen_pick(&mut gen, gammas.len())];

        let env_psi = fresh_env(psi, &fuel).unwrap();
        let f = eval_tm(&f_tm, &env_psi, &fuel).unwrap();
        let env_omega = fresh_env(omega, &fuel).unwrap();
        let u = eval_tm(&u_tm, &env_omega, &fuel).unwrap();

        let lhs = rename_value(
            &tinytt_core::eval::apply_value(&f, beta, u.clone(), &fuel).unwrap(),
            gamma,
        );
        let rhs = tinytt_core::eval::apply_value(
            &f,
            &beta.compose(gamma),
            Rc::new(rename_value(&u, gamma)),
            &fuel,
        )
        .unwrap();

        // Quote both at the instantiated codomain over xi.
        let u_xi = Rc::new(rename_value(&u, gamma));
        let nf_u = {
            let env = fresh_env(xi, &fuel).unwrap();
            let dom_xi = Ty::Sub(Rc::new(dom_omega.clone()), Rc::new(gamma.embed()));
            let vt = eval_ty(&dom_xi, &env, &fuel).unwrap();
            quote(&vt, &u_xi, xi.len(), &fuel).unwrap()
        };
        let result_ty = Ty::Sub(Rc::new(pi.clone()), Rc::new(beta.compose(gamma).embed()));
        let vt_pi = {
            let env = fresh_env(xi, &fuel).unwrap();
            eval_ty(&result_ty, &env, &fuel).unwrap()
        };
        let cod_vt = match vt_pi {
            tinytt_core::eval::VType::Pi(_, cod) => cod
                .apply(&Renaming::identity(xi.len()), u_xi.clone(), &fuel)
                .unwrap(),
            _ => panic!("function type did not evaluate to a Pi"),
        };
        let q_lhs = quote(&cod_vt, &lhs, xi.len(), &fuel).unwrap();
        let q_rhs = quote(&cod_vt, &rhs, xi.len(), &fuel).unwrap();
        assert_eq!(
            q_lhs, q_rhs,
            "naturality failed for f {f_tm} with u {u_tm}\n  (nf of u: {nf_u:?})"
        );
        samples += 1;
    }
    let elapsed = started.elapsed();
    assert_under("criterion 8", elapsed, Duration::from_secs(120));
    println!("criterion 8 (Kripke naturality): PASS — {samples} samples in {elapsed:?}");
}

fn gen_pick(gen: &mut Gen, n: usize) -> usize {
    gen.index(n)
}

/// The spec-level embedding lemmas for renamings, checked through the
/// substitution normaliser and the oracle.
#[test]
fn renaming_embedding_lemmas() {
    let fuel = Fuel::default();
    // Embedded identity renaming is convertible to id, for |ctx| <= 3.
    for ctx in context_battery(3) {
        let embedded = Renaming::identity(ctx.len()).embed();
        let got = norm_sub(&ctx, &ctx, &embedded, &fuel).unwrap();
        let want = norm_sub(&ctx, &ctx, &Sub::Id, &fuel).unwrap();
        assert_eq!(got, want, "embedded identity renaming not convertible to id");
    }
    // The oracle agrees on the small cases.
    for n in 0..=2usize {
        let mut ctx = Ctx::empty();
        for _ in 0..n {
            ctx = ctx.extended(Ty::U);
        }
        let embedded = Rc::new(Renaming::identity(n).embed());
        let cfg = OracleCfg {
            depth: 16,
            node_budget: 400_000,
            size_slack: 16,
        };
        assert_eq!(
            rewrite_oracle_sub(&ctx, &embedded, &Rc::new(Sub::Id), &cfg),
            Verdict::Equal,
            "oracle missed embedded-identity conversion at length {n}"
        );
    }
}

/// Evaluation stays within the default fuel on everything the
/// acceptance surfaces normalise (fuel exhaustion on checker-accepted
/// terms is a bug).
#[test]
fn fuel_headroom_on_accepted_terms() {
    let fuel = Fuel::default();
    let scope = Scope::empty();
    let pi = elab_type(&scope, &parse_expr("(x : U) -> U").unwrap(), &fuel).unwrap();
    let tm = check(&scope, &parse_expr("\\x. x").unwrap(), &pi, &fuel).unwrap();
    let _ = norm(scope.ctx(), &pi, &tm, &fuel).unwrap();
    assert!(fuel.used() < tinytt_core::DEFAULT_FUEL / 2);
}

/// Sanity: dec_nf over a sample of enumerated forms is an equivalence
/// relation (reflexive, symmetric, and transitive through structural
/// equality).
#[test]
fn dec_nf_is_an_equivalence_on_enumerations() {
    for ctx in context_battery(1) {
        for ty in type_battery(&ctx) {
            let nfs = enumerate_nf(&ctx, &ty, 5);
            for (i, v_i) in nfs.iter().enumerate() {
                assert_eq!(dec_nf(v_i, v_i, &ctx, &ty), Dec::Equal);
                for v_j in nfs.iter().skip(i + 1) {
                    let d_ij = dec_nf(v_i, v_j, &ctx, &ty).is_equal();
                    let d_ji = dec_nf(v_j, v_i, &ctx, &ty).is_equal();
                    assert_eq!(d_ij, d_ji, "dec_nf asymmetric");
                    assert_eq!(d_ij, v_i == v_j, "dec_nf differs from structural equality");
                }
            }
        }
    }
}
