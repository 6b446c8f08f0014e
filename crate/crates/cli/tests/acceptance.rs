//! Acceptance suite. Each test prints one PASS/FAIL line and then asserts,
//! so `cargo test --test acceptance -- --nocapture` gives a readable summary.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use dw_core::algebra::{CoeffGroup, FiniteGroup, Ring};
use dw_core::cohomology::{
    boundary, boundary_in_q, coboundary3, random_cochain2, solve_3cocycles, Chain, Cochain3, Violation,
};
use dw_core::colouring::{enumerate_colourings, enumerate_colourings_with, Search};
use dw_core::gsystem::{system_from_cocycle, weight, weight_1dim, Failure, GSystem};
use dw_core::invariant::{dw, dw_1dim};
use dw_core::moves::{l_move, l_sites, t_move, t_sites, MoveResult};
use dw_core::spine::{catalog, CATALOG};
use dw_core::{Colouring, Spine};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn report(n: u32, what: &str, start: Instant, bound: Duration, ok: bool) {
    let t = start.elapsed();
    let pass = ok && t < bound;
    println!(
        "{} criterion {n}: {what} ({:.3} s, bound {} s)",
        if pass { "PASS" } else { "FAIL" },
        t.as_secs_f64(),
        bound.as_secs()
    );
    assert!(ok, "criterion {n} failed");
    assert!(t < bound, "criterion {n} took {t:?}");
}

fn dw_bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dw")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn z4() -> FiniteGroup {
    FiniteGroup::cyclic(4).unwrap()
}

#[test]
fn criterion_1_worked_example() {
    let start = Instant::now();
    let (code, out) = dw_bin(&["invariant", "--spine", "L41", "--group", "Z4", "--cocycle", "paper_omega"]);
    let lines: Vec<&str> = out.lines().map(str::trim).collect();
    let weights = ["c1=0,c2=0  ->  1", "c1=0,c2=2  ->  1", "c1=2,c2=1  ->  t", "c1=2,c2=3  ->  t"];
    let ok = code == 0 && lines.contains(&"DW = 2*1 + 2*t") && weights.iter().all(|w| lines.contains(w));
    report(1, "L41, Z4, worked cocycle gives 2*1 + 2*t", start, Duration::from_secs(1), ok);
}

#[test]
fn criterion_2_colouring_count() {
    let start = Instant::now();
    let (c1, count) = dw_bin(&["colourings", "count", "--spine", "L41", "--group", "Z4"]);
    let (c2, list) = dw_bin(&["colourings", "list", "--spine", "L41", "--group", "Z4"]);
    let ok = c1 == 0
        && c2 == 0
        && count.trim() == "4"
        && list.lines().collect::<Vec<_>>() == ["c1=0,c2=0", "c1=0,c2=2", "c1=2,c2=1", "c1=2,c2=3"];
    report(2, "L41 has exactly four Z4-colourings", start, Duration::from_secs(1), ok);
}

/// Whether a violation mentions the triple `t`.
fn touches(g: &FiniteGroup, v: &Violation, t: [usize; 3]) -> bool {
    match v {
        Violation::Gamma { i, tuple } => {
            tuple[..] == t || dw_core::cohomology::gamma_partner(g, *i, tuple).unwrap()[..] == t
        }
        Violation::Boundary { tuple: [a, b, c, d] } => {
            let (a, b, c, d) = (*a, *b, *c, *d);
            [
                [b, c, d],
                [g.mul(a, b), c, d],
                [a, g.mul(b, c), d],
                [a, b, g.mul(c, d)],
                [a, b, c],
            ]
            .contains(&t)
        }
    }
}

#[test]
fn criterion_3_cocycle_checker() {
    let start = Instant::now();
    let g = z4();
    let w = Cochain3::example_z4();
    let mut ok = w.respects_q(&g) && w.is_3cocycle(&g);
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..100 {
        let t = [rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4)];
        let mut bad = w.clone();
        bad.set(t, &[(w.scalar(t) + 1) % 2]);
        ok &= matches!(bad.first_violation(&g), Some(v) if touches(&g, &v, t));
    }
    report(3, "checker accepts the worked cocycle and localises 100 perturbations", start, Duration::from_secs(1), ok);
}

#[test]
fn criterion_4_complex_properties() {
    let start = Instant::now();
    let mut ok = true;
    let mut rng = StdRng::seed_from_u64(4);
    let groups: Vec<FiniteGroup> =
        dw_core::algebra::BUILTIN_GROUPS.iter().map(|n| FiniteGroup::parse_spec(n).unwrap()).collect();
    let ks: Vec<CoeffGroup> = [2, 3, 4].iter().map(|&m| CoeffGroup::cyclic(m).unwrap()).collect();
    for _ in 0..200 {
        let g = &groups[rng.gen_range(0..groups.len())];
        let k = &ks[rng.gen_range(0..ks.len())];
        let deg = rng.gen_range(2..=5);
        let mut c = Chain::zero(deg);
        for _ in 0..rng.gen_range(1..8) {
            let t: Vec<usize> = (0..deg).map(|_| rng.gen_range(0..g.order())).collect();
            c.add_term(k, t, &[rng.gen_range(1..k.order())]).unwrap();
        }
        ok &= boundary(g, k, &boundary(g, k, &c).unwrap()).unwrap().is_zero();
    }
    for g in groups.iter().filter(|g| g.order() <= 6) {
        for k in &ks {
            for n in 2..=4usize {
                let total = g.order().pow(n as u32);
                for idx in 0..total {
                    let t = dw_core::cohomology::tuple_at(g.order(), n, idx);
                    for i in 1..=n {
                        ok &= boundary_in_q(g, k, i, &t).unwrap();
                    }
                }
            }
        }
    }
    report(4, "boundary squares to zero and maps gamma generators into Q", start, Duration::from_secs(30), ok);
}

#[test]
fn criterion_5_coboundaries_are_trivial() {
    let start = Instant::now();
    let mut ok = true;
    let spines: Vec<Spine> = CATALOG.iter().map(|n| catalog(n).unwrap()).collect();
    for gname in ["Z2", "Z3", "Z4", "Z2xZ2"] {
        let g = FiniteGroup::parse_spec(gname).unwrap();
        let cols: Vec<Vec<Colouring>> = spines.iter().map(|s| enumerate_colourings(s, &g).unwrap()).collect();
        for seed in 0..50u64 {
            let k = CoeffGroup::cyclic([2, 3, 4][seed as usize % 3]).unwrap();
            let w = coboundary3(&g, &random_cochain2(&g, &k, seed)).unwrap();
            for (s, cs) in spines.iter().zip(&cols) {
                for xi in cs {
                    ok &= k.is_zero(&weight_1dim(s, xi, &g, &w).unwrap());
                }
            }
        }
    }
    report(5, "every weight of a coboundary vanishes", start, Duration::from_secs(30), ok);
}

fn all_moves(s: &Spine) -> Vec<MoveResult> {
    let mut out: Vec<MoveResult> = t_sites(s).unwrap().iter().map(|e| t_move(s, e).unwrap()).collect();
    out.extend(l_sites(s).unwrap().iter().map(|(c, p)| l_move(s, c, *p).unwrap()));
    out
}

#[test]
fn criterion_6_move_invariance() {
    let start = Instant::now();
    let mut ok = true;
    let groups: Vec<FiniteGroup> = ["Z2", "Z4", "Z2xZ2"].iter().map(|n| FiniteGroup::parse_spec(n).unwrap()).collect();
    let w = Cochain3::example_z4();
    let sys = system_from_cocycle(&z4(), &w).unwrap();
    let mut sites = 0;
    for name in CATALOG {
        let s = catalog(name).unwrap();
        for r in all_moves(&s) {
            sites += 1;
            for g in &groups {
                ok &= enumerate_colourings(&r.spine_before, g).unwrap().len()
                    == enumerate_colourings(&r.spine_after, g).unwrap().len();
            }
            ok &= dw_1dim(&r.spine_before, &z4(), &w).unwrap() == dw_1dim(&r.spine_after, &z4(), &w).unwrap();
            ok &= dw(&r.spine_before, &sys).unwrap() == dw(&r.spine_after, &sys).unwrap();
        }
    }
    ok &= sites > 0;
    report(6, &format!("counts and DW unchanged across {sites} move sites"), start, Duration::from_secs(60), ok);
}

#[test]
fn criterion_7_dual_path() {
    let start = Instant::now();
    let g = z4();
    let mut ok = true;
    let mut checked = 0;
    for m in [2i64, 4] {
        let k = CoeffGroup::cyclic(m).unwrap();
        let sol = solve_3cocycles(&g, &k).unwrap();
        let orders = sol.orders().to_vec();
        // Every element of the cocycle group, by mixed-radix counting.
        let mut coeffs = vec![0i64; orders.len()];
        loop {
            let w = sol.combine(&coeffs);
            let sys = system_from_cocycle(&g, &w).unwrap();
            for name in CATALOG {
                let s = catalog(name).unwrap();
                for xi in enumerate_colourings(&s, &g).unwrap() {
                    let j = weight_1dim(&s, &xi, &g, &w).unwrap()[0];
                    let x = weight(&s, &xi, &sys).unwrap();
                    ok &= x == Ring::QuotientPoly { m: m as usize }.monomial(j);
                    checked += 1;
                }
            }
            let Some(p) = (0..coeffs.len()).find(|&p| coeffs[p] + 1 < orders[p]) else { break };
            coeffs[p] += 1;
            coeffs[..p].iter_mut().for_each(|c| *c = 0);
        }
    }
    report(7, &format!("tensor engine matches the additive path on {checked} weights"), start, Duration::from_secs(60), ok);
}

#[test]
fn criterion_8_checker_soundness() {
    let start = Instant::now();
    let g = z4();
    let w = Cochain3::example_z4();
    let sys = system_from_cocycle(&g, &w).unwrap();
    let mut ok = sys.check_symmetric().is_ok() && sys.check_special().is_ok() && sys.check_strong().is_ok();
    let mut bad = w.clone();
    bad.set([1, 1, 1], &[0]);
    let broken = GSystem::one_dimensional(&g, 2, |a, b, c| bad.scalar([a, b, c])).unwrap();
    match broken.check_special() {
        Err(Failure::Special { quadruple: [a, b, c, d] }) => {
            let f = |x: usize, y: usize, z: usize| bad.scalar([x, y, z]);
            let s = f(b, c, d) - f(g.mul(a, b), c, d) + f(a, g.mul(b, c), d) - f(a, b, g.mul(c, d)) + f(a, b, c);
            ok &= s.rem_euclid(2) != 0;
        }
        _ => ok = false,
    }
    report(8, "worked system passes all checks and a broken table is located", start, Duration::from_secs(10), ok);
}

#[test]
fn criterion_9_brute_force_equivalences() {
    let start = Instant::now();
    let mut ok = true;
    for gname in ["Z1", "Z2", "Z3", "Z4", "Z2xZ2"] {
        let g = FiniteGroup::parse_spec(gname).unwrap();
        for name in CATALOG {
            let s = catalog(name).unwrap();
            ok &= enumerate_colourings_with(&s, &g, Search::Pruned).unwrap()
                == enumerate_colourings_with(&s, &g, Search::BruteForce).unwrap();
        }
    }
    let g = FiniteGroup::cyclic(2).unwrap();
    let k = CoeffGroup::cyclic(2).unwrap();
    let brute: BTreeSet<Vec<i64>> = (0u32..256)
        .map(|bits| Cochain3::from_fn(&g, &k, |t| vec![i64::from(bits >> (t[0] * 4 + t[1] * 2 + t[2]) & 1)]))
        .filter(|w| w.is_3cocycle(&g))
        .map(|w| (0..8).map(|i| w.get_idx(i)[0]).collect())
        .collect();
    let sol = solve_3cocycles(&g, &k).unwrap();
    let n = sol.generators().len();
    let spanned: BTreeSet<Vec<i64>> = (0u32..1 << n)
        .map(|bits| sol.combine(&(0..n).map(|i| i64::from(bits >> i & 1)).collect::<Vec<_>>()))
        .map(|w| (0..8).map(|i| w.get_idx(i)[0]).collect())
        .collect();
    ok &= !brute.is_empty() && brute == spanned;
    report(9, "pruned search and cocycle solver match exhaustive scans", start, Duration::from_secs(60), ok);
}
