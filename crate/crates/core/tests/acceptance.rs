//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use liaison_core::fmodule::{auslander_dual, canonical_module, is_isomorphic, minimalize, PresentedModule};
use liaison_core::gbasis::{ideal_quotient, GBasis};
use liaison_core::hilbert::{is_unmixed, riemann_roch_check};
use liaison_core::liaison::*;
use liaison_core::matlink::{link_step, prepare, reduce, verify_matrix_link_modules};
use liaison_core::poly::{Poly, Ring};
use liaison_core::resolution::{exchange, minimal_free_resolution, stable_equiv};
use liaison_core::Matrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// Two-step chains collected for the even-liaison identity.
#[derive(Default)]
struct Chains {
    pairs: Vec<(LinkStep, LinkStep)>,
}

fn random_ci(r: &Ring, degs: &[i64], g: &mut ChaCha8Rng) -> Vec<Poly> {
    let target = r.nvars() - degs.len();
    loop {
        let f: Vec<Poly> = degs.iter().map(|&d| Poly::random_homogeneous(r, d, g)).collect();
        if PresentedModule::cyclic(r, &f).unwrap().hilbert().dim() == Some(target) {
            return f;
        }
    }
}

fn ci_module(r: &Ring, degs: &[i64], g: &mut ChaCha8Rng) -> PresentedModule {
    PresentedModule::cyclic(r, &random_ci(r, degs, g)).unwrap()
}

/// Codim-2 perfect modules in three variables: CI quotients, twists and sums.
fn perfect_modules(g: &mut ChaCha8Rng) -> Vec<PresentedModule> {
    let r = ring(3);
    (0..10)
        .map(|k| {
            let d1 = [g.gen_range(1..=2), g.gen_range(1..=2)];
            let a = ci_module(&r, &d1, g);
            match k % 3 {
                0 => a,
                1 => a.twist(g.gen_range(-2..=2)),
                _ => {
                    let b = ci_module(&r, &[1, g.gen_range(1..=2)], g);
                    a.direct_sum(&b.twist(g.gen_range(-1..=1))).unwrap()
                }
            }
        })
        .collect()
}

/// Maximal minors of a random `2 x 3` matrix of linear forms in four variables.
fn determinantal(g: &mut ChaCha8Rng) -> PresentedModule {
    let r = ring(4);
    loop {
        let e: Vec<Poly> = (0..6).map(|_| Poly::random_homogeneous(&r, 1, g)).collect();
        let minor = |i: usize, j: usize| e[i].mul(&e[3 + j]).sub(&e[j].mul(&e[3 + i]));
        let m = PresentedModule::cyclic(&r, &[minor(0, 1), minor(0, 2), minor(1, 2)]).unwrap();
        if m.hilbert().dim() == Some(2) {
            return m;
        }
    }
}

fn cubic_ci(r: &Ring) -> Vec<Poly> {
    polys(r, &["x0*x2 - x1^2", "x1*x3 - x2^2"])
}

fn link_by_ci(m: &PresentedModule, ci: &[Poly], g: &mut ChaCha8Rng) -> Result<LinkStep, String> {
    let c = ok(PresentedModule::cyclic(m.ring(), ci), "CI quotient")?;
    let cert = ok(ok(certify_quasi_gorenstein(&c, g), "certify")?.cert(), "certify")?;
    let onto = Matrix::identity(m.ring(), m.gen_degrees().to_vec());
    let phi = ok(onto.mul(&cert.from_input), "phi")?;
    ok(link(m, &cert, &phi), "link")
}

fn criterion_1(g: &mut ChaCha8Rng) -> Outcome {
    let tc = twisted_cubic();
    let r = tc.ring().clone();
    let ci = cubic_ci(&r);
    let step = link_by_ci(&tc, &ci, g)?;
    let (dc, dm, dn) = (
        step.cert.module.hilbert().degree(),
        tc.hilbert().degree(),
        step.result.hilbert().degree(),
    );
    ensure!((dc, dm, dn) == (4, 3, 1), "twisted cubic degrees {dc} {dm} {dn}");
    let tc_ideal = polys(&r, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
    let residual = ok(ideal_quotient(&r, &ci, &tc_ideal), "quotient")?;
    let line = ok(GBasis::ideal(&r, &polys(&r, &["x1", "x2"])), "line")?;
    ensure!(residual == line, "residual ideal is not (x1, x2)");
    let r3 = ring(3);
    for k in 0..20 {
        let n = 2 + k % 2;
        let a = random_linear_matrix(&r3, n, g);
        let p = ok(prepare(&a), "prepare")?;
        let st = ok(link_step(&p.matrix), "link step")?;
        let rep = ok(verify_matrix_link_modules(&st), "module report")?;
        ensure!(rep.degree_ok && rep.hilbert_ok, "matrix link {k}: {rep:?}");
    }
    for k in 0..10 {
        let m = if k % 2 == 0 {
            ci_module(&r, &[g.gen_range(1..=2), g.gen_range(1..=3)], g)
        } else {
            determinantal(g)
        };
        let st = ok(auto_link(&m, g), "auto link")?;
        let (dc, dm, dn) = (
            st.cert.module.hilbert().degree(),
            m.hilbert().degree(),
            st.result.hilbert().degree(),
        );
        ensure!(dn == dc - dm, "auto link {k}: {dn} != {dc} - {dm}");
    }
    Ok("twisted cubic, 20 matrix links, 10 auto links".into())
}

fn criterion_2(g: &mut ChaCha8Rng, chains: &mut Chains) -> Outcome {
    let mut isos = 0;
    for (k, m) in perfect_modules(g).into_iter().enumerate() {
        let m = minimalize(&m).module;
        let km = ok(canonical_module(&m), "canonical module")?;
        let c = ok(m.direct_sum(&km), "sum")?;
        let cert = ok(ok(certify_quasi_gorenstein(&c, g), "certify")?.cert(), "certify")?;
        let onto = Matrix::identity(m.ring(), c.gen_degrees().to_vec())
            .select_rows(&(0..m.num_gens()).collect::<Vec<_>>());
        let phi = ok(onto.mul(&cert.from_input), "phi")?;
        let step = ok(link(&m, &cert, &phi), "link")?;
        let n = minimalize(&step.result).module;
        ensure!(
            minimal_free_resolution(&n).betti() == minimal_free_resolution(&m).betti(),
            "module {k}: Betti tables differ"
        );
        ensure!(n.hilbert().numerator() == m.hilbert().numerator(), "module {k}: Hilbert series differ");
        let iso = is_isomorphic(&step.result, &m, 8, g);
        ensure!(iso.is_yes(), "module {k}: no explicit isomorphism");
        isos += 1;
        let back = ok(link_back(&step), "link back")?;
        chains.pairs.push((step, back));
    }
    Ok(format!("{isos}/10 isomorphic to the input"))
}

fn unmixed_fixtures(g: &mut ChaCha8Rng) -> Vec<PresentedModule> {
    let (r3, r4) = (ring(3), ring(4));
    let mut out = Vec::new();
    for _ in 0..4 {
        let d = g.gen_range(1..=3);
        out.push(ci_module(&r3, &[d], g));
    }
    for n in [2, 2, 3] {
        let a = random_linear_matrix(&r3, n, g);
        out.push(PresentedModule::new(a).unwrap());
    }
    for _ in 0..5 {
        out.push(ci_module(&r4, &[g.gen_range(1..=2), g.gen_range(1..=2)], g));
    }
    for _ in 0..4 {
        out.push(determinantal(g));
    }
    out.push(twisted_cubic());
    out.push(skew_lines());
    out.push(cyclic(&r4, &["x0", "x1"]).direct_sum(&cyclic(&r4, &["x2", "x3"]).twist(-1)).unwrap());
    out.push(cyclic(&r3, &["x0^2", "x0*x1", "x1^2"]).twist(1));
    out
}

fn criterion_3(g: &mut ChaCha8Rng, chains: &mut Chains) -> Outcome {
    let fixtures = unmixed_fixtures(g);
    ensure!(fixtures.len() == 20, "expected 20 fixtures, built {}", fixtures.len());
    let (mut yes, mut unknown) = (0, 0);
    for (k, m) in fixtures.iter().enumerate() {
        let first = ok(auto_link(m, g), "auto link")?;
        let rep = ok(double_link_check(first, g), "double link")?;
        ensure!(rep.hilbert_ok, "fixture {k}: Hilbert functions differ");
        ensure!(rep.betti_ok, "fixture {k}: Betti tables differ");
        ensure!(!rep.iso.is_no(), "fixture {k}: isomorphism refuted");
        if rep.iso.is_yes() {
            yes += 1;
        } else {
            unknown += 1;
        }
        chains.pairs.push((rep.first, rep.second));
    }
    ensure!(yes >= 18, "only {yes}/20 isomorphisms found");
    Ok(format!("{yes}/20 isomorphic, {unknown} unknown"))
}

fn criterion_4(g: &mut ChaCha8Rng) -> Outcome {
    let r = ring(3);
    let mut worst = [Duration::ZERO; 2];
    for (slot, n, count, limit) in [(0, 3, 100, 2.0), (1, 4, 25, 15.0)] {
        for k in 0..count {
            let a = random_linear_matrix(&r, n, g);
            let t = Instant::now();
            let chain = ok(reduce(&a), "reduce")?;
            ensure!(chain.verify(), "{n}x{n} matrix {k}: chain does not verify");
            ensure!(chain.terminal.nrows() == 1, "{n}x{n} matrix {k}: terminal is not 1x1");
            for st in &chain.stages {
                ensure!(st.step.s.is_symmetric() && !st.step.s.det().is_zero(), "{n}x{n} matrix {k}: bad S");
            }
            let dt = t.elapsed();
            ensure!(dt.as_secs_f64() < limit, "{n}x{n} matrix {k} took {dt:.1?}");
            worst[slot] = worst[slot].max(dt);
        }
    }
    Ok(format!("slowest 3x3 {:.2?}, slowest 4x4 {:.2?}", worst[0], worst[1]))
}

fn criterion_5(g: &mut ChaCha8Rng) -> Outcome {
    let tc = twisted_cubic();
    let tc_step = link_by_ci(&tc, &cubic_ci(tc.ring()), g)?;
    let skew_step = ok(auto_link(&skew_lines(), g), "auto link")?;
    for (name, step) in [("twisted cubic", tc_step), ("skew lines", skew_step)] {
        let ex = ok(exchange(&step), "exchange")?;
        let q = &ex.q_type;
        ensure!(q.euler_ok(&step.result), "{name}: Euler characteristic");
        ensure!(q.band_vanishes(), "{name}: cohomology band does not vanish");
        let w = joint_window(&[step.source.hilbert(), step.result.hilbert(), q.q.hilbert()]);
        ensure!(q.cohomology_matches(&step.result, w), "{name}: shifted cohomology differs");
    }
    Ok("twisted cubic and skew lines".into())
}

fn criterion_6(chains: &Chains) -> Outcome {
    ensure!(!chains.pairs.is_empty(), "no chains recorded");
    let bad: Vec<usize> = (0..chains.pairs.len())
        .filter(|&k| !even_hilbert_identity(&chains.pairs[k].0, &chains.pairs[k].1))
        .collect();
    ensure!(bad.is_empty(), "identity fails on chains {bad:?}");
    Ok(format!("{} chains", chains.pairs.len()))
}

fn criterion_7(g: &mut ChaCha8Rng) -> Outcome {
    let m = skew_lines();
    let window = (-4, 6);
    let mut shifts = Vec::new();
    for run in 0..2 {
        let first = ok(auto_link(&m, g), "auto link")?;
        let second = ok(auto_link(&first.result, g), "auto link")?;
        let s = even_shift(&first, &second);
        ensure!(
            cohomology_even_check(&m, &second.result, s, window),
            "run {run}: H^1 differs up to shift {s}"
        );
        shifts.push(s);
    }
    let step = ok(auto_link(&m, g), "auto link")?;
    let h = step.cert.module.hilbert();
    let s = 1 - h.r().unwrap_or(0) - h.a().unwrap_or(0);
    ensure!(cohomology_odd_check(&step.source, &step.result, s, window), "odd chain: duality shift {s} fails");
    Ok(format!("even shifts {shifts:?}, odd shift {s}"))
}

fn criterion_8(g: &mut ChaCha8Rng) -> Outcome {
    let r3 = ring(3);
    let mixed = cyclic(&r3, &["x0^2", "x0*x1"]);
    ensure!(!ok(is_unmixed(&mixed), "unmixed")?, "R/(x^2, xy) reported unmixed");
    let skew = skew_lines();
    ensure!(ok(is_unmixed(&skew), "unmixed")?, "skew lines reported mixed");
    let mut cm = vec![twisted_cubic(), cyclic(&ring(4), &["x1", "x2"]), cyclic(&r3, &["x0"])];
    cm.extend(perfect_modules(g).into_iter().take(3));
    cm.push(determinantal(g));
    for (k, m) in cm.iter().enumerate() {
        ensure!(ok(is_unmixed(m), "unmixed")?, "CM fixture {k} reported mixed");
    }
    let mut all = cm;
    all.push(skew);
    all.push(mixed);
    for (k, m) in all.iter().enumerate() {
        let a = m.hilbert().a().unwrap_or(0);
        for j in a - 2..a + 3 {
            ensure!(riemann_roch_check(m, j), "fixture {k}: Riemann-Roch fails at {j}");
        }
    }
    Ok(format!("{} fixtures", all.len()))
}

fn criterion_9(g: &mut ChaCha8Rng) -> Outcome {
    let (r3, r4) = (ring(3), ring(4));
    let mut yes = vec![
        ci_module(&r3, &[2, 2], g),
        ci_module(&r4, &[1, 2], g),
        ci_module(&r4, &[2, 2, 3], g),
        cyclic(&r3, &["x0^2"]),
    ];
    for m in perfect_modules(g).into_iter().take(5) {
        let m = minimalize(&m).module;
        let km = ok(canonical_module(&m), "canonical module")?;
        yes.push(ok(m.direct_sum(&km), "sum")?);
    }
    for (k, c) in yes.iter().enumerate() {
        let cert = match ok(certify_quasi_gorenstein(c, g), "certify")?.cert() {
            Ok(cert) => cert,
            Err(e) => return Err(format!("expected YES on module {k}: {e}")),
        };
        let h = cert.module.hilbert();
        let t = 1 - h.r().unwrap_or(0) - h.a().unwrap_or(0);
        ensure!(cert.t == t && cert.verify(), "module {k}: t = {} but 1 - r - a = {t}", cert.t);
    }
    let c1 = cyclic(&r3, &["x0", "x1"]);
    let sum = PresentedModule::direct_sum_all(&[c1.clone(), c1.clone(), c1.twist(1)]).unwrap();
    ensure!(ok(certify_quasi_gorenstein(&sum, g), "certify")?.is_no(), "C^2 + C(1) not refused");
    let mixed = cyclic(&r3, &["x0^2", "x0*x1"]);
    ensure!(ok(certify_quasi_gorenstein(&mixed, g), "certify")?.is_no(), "R/(x^2, xy) not refused");
    Ok(format!("{} YES, 2 NO", yes.len()))
}

fn criterion_10(g: &mut ChaCha8Rng) -> Outcome {
    let r = ring(3);
    let p = |s: &str| polys(&r, &[s]).remove(0);
    // the ideal (x0, x1) as a module
    let pres = Matrix::from_rows(&r, vec![vec![p("-x1")], vec![p("x0")]], vec![1, 1], vec![2]).unwrap();
    let m = PresentedModule::new(pres).unwrap();
    let step = ok(auto_link(&m, g), "auto link")?;
    let dual = ok(auslander_dual(&m), "Auslander dual")?;
    let verdict = stable_equiv(&step.result, &dual, g);
    ensure!(verdict.is_equivalent(), "linked module not stably equivalent: {verdict:?}");
    let f = PresentedModule::free(&r, vec![2, 0, -1]);
    let chain = ok(free_reduction_chain(&f, g), "free reduction")?;
    let end = chain.end().ok_or("empty chain")?;
    ensure!(chain.is_connected(), "free reduction chain has a broken bridge");
    ensure!(
        is_isomorphic(end, &PresentedModule::free(&r, vec![0]), 4, g).is_yes(),
        "free module does not reduce to R"
    );
    Ok(format!("stable equivalence certified, free chain of length {}", chain.len()))
}

fn run(n: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let res = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let dt = t.elapsed();
    let (tag, detail, pass) = match res {
        Ok(d) => ("PASS", d, true),
        Err(d) => ("FAIL", d, false),
    };
    println!("criterion {n:>2} [{tag}] {name} ({dt:.1?}): {detail}");
    pass
}

fn main() {
    let seed = std::env::var("LIAISON_LAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(2024);
    let mut g = rng(seed);
    let mut chains = Chains::default();
    let results = [
        run(1, "degree additivity", || criterion_1(&mut g)),
        run(2, "self-link of perfect modules", || criterion_2(&mut g, &mut chains)),
        run(3, "double-link idempotence", || criterion_3(&mut g, &mut chains)),
        run(4, "matrix reduction", || criterion_4(&mut g)),
        run(5, "E/Q exchange", || criterion_5(&mut g)),
        run(6, "even-liaison Hilbert identity", || criterion_6(&chains)),
        run(7, "cohomology preservation", || criterion_7(&mut g)),
        run(8, "unmixedness and Riemann-Roch", || criterion_8(&mut g)),
        run(9, "quasi-Gorenstein certification", || criterion_9(&mut g)),
        run(10, "maximal modules", || criterion_10(&mut g)),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
