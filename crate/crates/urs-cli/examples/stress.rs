use std::sync::Arc;
use std::time::Instant;
use urs_core::algebra::{Algebra, Kind};
use urs_core::checks;
use urs_core::pairing::Pairing;
use urs_core::weight::Weight;

fn main() {
    let t = Instant::now();
    // heavier-than-acceptance configurations
    let ctx4 = Pairing::new(Arc::new(Algebra::generic(4, Kind::Gl).unwrap()), 4);
    let rep = checks::theta_check(&ctx4, 3).unwrap();
    println!("theta n=4 height 3: pass={} ({:?})", rep.pass, t.elapsed());

    let t = Instant::now();
    let ctx3 = Pairing::new(Arc::new(Algebra::generic(3, Kind::Sl).unwrap()), 6);
    let rep = checks::dimension_check(&ctx3, 6).unwrap();
    println!("dims n=3 height 6: pass={} ({:?})", rep.pass, t.elapsed());

    let t = Instant::now();
    let ctx4d = Pairing::new(Arc::new(Algebra::generic(4, Kind::Sl).unwrap()), 4);
    let rep = checks::dimension_check(&ctx4d, 4).unwrap();
    println!("dims n=4 height 4: pass={} ({:?})", rep.pass, t.elapsed());

    let t = Instant::now();
    let ctx = Pairing::new(Arc::new(Algebra::generic(3, Kind::Gl).unwrap()), 4);
    let e1 = Weight::eps_basis(3, 1);
    let lam = Weight::new(vec![2, 1, 0]);
    let rep = checks::qybe_check(&ctx, &lam, &e1, &e1, 4, 2).unwrap();
    println!("qybe n=3 depth 4 budget 2: pass={} ({:?})", rep.pass, t.elapsed());

    let t = Instant::now();
    let rep = checks::hexagon_check(&ctx, &e1, &lam, &e1, 4, 2).unwrap();
    println!("hexagon n=3 depth 4 budget 2: pass={} ({:?})", rep.pass, t.elapsed());

    let t = Instant::now();
    let rep = checks::casimir_check(&ctx, &lam, 4, 2).unwrap();
    println!("casimir n=3 depth 4 budget 2: pass={} ({:?})", rep.pass, t.elapsed());

    let t = Instant::now();
    let rep = checks::iso_chm_check(4).unwrap();
    println!("chm transport n=4: pass={} ({:?})", rep.pass, t.elapsed());

    let t = Instant::now();
    let rep = checks::rmatrix_check(&ctx, &lam, &lam, 4, 2).unwrap().0;
    println!("rmatrix n=3 depth 4 budget 2: pass={} ({:?})", rep.pass, t.elapsed());
}
