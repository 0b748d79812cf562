use std::time::Instant;
use tinytt_core::oracle::{rewrite_oracle_tm, OracleCfg};
use tinytt_core::syntax::text::{parse_tm, parse_ty};
use tinytt_core::syntax::{Ctx, Ty};

fn main() {
    let mut ctx = Ctx::empty();
    ctx = ctx.extended(Ty::U); // only length matters
    let t0 = parse_tm("lam (p2 id[p1 id])").unwrap();
    let t1 = parse_tm("lam (lam ((app (p2 id[p1 id][p1 id]))[(id, p2 id)]))").unwrap();
    let ty = parse_ty("Pi U (Pi U U)").unwrap();
    for (depth, slack) in [(12usize, 6usize), (12, 8), (14, 8), (16, 8), (18, 10)] {
        let cfg = OracleCfg { depth, node_budget: 12_000_000, size_slack: slack };
        let t = Instant::now();
        let v = rewrite_oracle_tm(&ctx, &ty, &t0, &t1, &cfg);
        println!("depth {depth} slack {slack}: {v:?} in {:?}", t.elapsed());
        if format!("{v:?}") == "Equal" { break; }
    }
}
