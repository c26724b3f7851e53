//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each
//! with its runtime against the budget, and exits non-zero on any failure.

use std::fs::File;
use std::io::BufReader;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dgs_core::engine::{
    almost_controllable_solutions, check_addcon, classify, decide_dgs, decide_dgs_with_mates,
    level, mainp_refute, verify_certificate, verify_regular_orthogonal, Family, Refutation,
    Verdict,
};
use dgs_core::fixtures;
use dgs_core::graph::{
    enumerate_all_graphs, generalized_cospectral, is_isomorphic, read_graph6_corpus, Graph,
};
use dgs_core::linalg::{
    bareiss_det, char_poly, eval_poly_at, factorize, rank_mod_p, rank_rational, smith_normal_form,
    IntMatrix, RatMatrix,
};
use dgs_core::scan::{census, census_of_order, mate_scan};
use dgs_core::walk::{
    beta_lambda0, w_delta, walk_columns, walk_matrix, xi_by_cofactors, xi_scaled, xi_vector,
};

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn order7_corpus() -> Vec<Graph> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/order7.g6");
    let file = File::open(path).expect("order-7 corpus present");
    read_graph6_corpus(BufReader::new(file))
        .expect("corpus parses")
        .into_iter()
        .map(|e| e.graph)
        .collect()
}

fn mate_of_level_three_9() -> Graph {
    let g = fixtures::level_three_mate_9();
    let q = fixtures::level_three_q_9();
    let a = RatMatrix::from(&g.adjacency_matrix());
    let b = q.transpose().mul(&a).unwrap().mul(&q).unwrap();
    let b = b
        .scaled_to_integer(&BigInt::one())
        .expect("Q^T A Q is integral");
    Graph::from_adjacency(&b).expect("Q^T A Q is an adjacency matrix")
}

fn catalogue_up_to_six() -> Vec<Vec<Graph>> {
    (1..=6).map(|n| enumerate_all_graphs(n).unwrap()).collect()
}

/// Criterion 1. Returns the time spent computing the fixture data.
fn criterion_1() -> Duration {
    let g = fixtures::pendant_twins_5();
    // warm allocator and code paths once
    let _ = (walk_matrix(&g), w_delta(&g, 0));
    let start = Instant::now();
    let w = walk_matrix(&g);
    let xi = xi_vector(&g).unwrap();
    let w0 = w_delta(&g, 0).unwrap();
    let w1 = w_delta(&g, 1).unwrap();
    let elapsed = start.elapsed();

    let printed_w = [
        [1, 1, 2, 4, 6],
        [1, 2, 4, 6, 14],
        [1, 3, 4, 10, 14],
        [1, 1, 3, 4, 10],
        [1, 1, 3, 4, 10],
    ];
    assert_eq!(w, IntMatrix::from_rows(&printed_w));
    assert_eq!(xi, ints(&[0, 0, 0, 2, -2]));
    let with_last = |last: [i64; 5]| {
        let rows: Vec<[i64; 5]> = printed_w
            .iter()
            .zip(last)
            .map(|(r, x)| [r[0], r[1], r[2], r[3], x])
            .collect();
        IntMatrix::from_rows(&rows)
    };
    assert_eq!(w0, with_last([0, 0, 0, 1, -1]));
    assert_eq!(w1, with_last([0, 0, 0, -1, 1]));
    elapsed
}

fn criterion_2() {
    let g = fixtures::level_three_mate_9();
    let snf = smith_normal_form(&walk_matrix(&g), false);
    assert_eq!(snf.invariant_factors, ints(&[1, 1, 1, 1, 1, 2, 2, 606, 0]));

    let q = fixtures::level_three_q_9();
    let h = mate_of_level_three_9();
    verify_regular_orthogonal(&q, &g, &h).unwrap();
    assert_eq!(level(&q), BigInt::from(3));
    assert!(generalized_cospectral(&g, &h).unwrap());
    assert!(is_isomorphic(&g, &h).unwrap().is_none());

    let cert = decide_dgs_with_mates(&g, &[g.clone(), h.clone()]).unwrap();
    assert_eq!(cert.verdict, Verdict::NotDgs);
    let ce = cert.counterexample.as_ref().unwrap();
    assert_eq!(ce.mate, h.to_graph6());
    assert_eq!(ce.level, Some(BigInt::from(3)));
    verify_certificate(&cert, &g).unwrap();

    let addcon = check_addcon(&g, 3).unwrap();
    assert!(!addcon.holds);
}

fn criterion_3() {
    let g = fixtures::adjacent_twins_10();
    let class = classify(&g).unwrap();
    assert_eq!(class.snf.invariant_factors[8], BigInt::from(304690));
    let b = class.b.clone().unwrap();
    assert_eq!(factorize(&b).unwrap().odd_primes(), Some(vec![5, 30469]));
    assert_eq!(beta_lambda0(&g, 5).unwrap().lambda0, 2);
    assert_eq!(beta_lambda0(&g, 30469).unwrap().lambda0, 1224);
    assert_eq!(class.twins.unwrap().lambda1, -1);
    let cert = decide_dgs(&g).unwrap();
    assert_eq!(cert.verdict, Verdict::DgsCertified);
    verify_certificate(&cert, &g).unwrap();
}

fn criterion_4() {
    let g = fixtures::refuted_prime_13();
    let class = classify(&g).unwrap();
    assert_eq!(
        class.snf.invariant_factors[11],
        BigInt::from(247799709690u64)
    );
    for p in [3, 13, 3607, 176153] {
        assert!(check_addcon(&g, p).unwrap().holds, "addcon at p = {p}");
    }
    assert!(!check_addcon(&g, 5).unwrap().holds);
    let ctx = beta_lambda0(&g, 5).unwrap();
    assert_eq!(ctx.beta, vec![2, 2, 1, 0, 0, 2, 2, 4, 0, 2, 1, 3, 1]);
    let m = mainp_refute(&g, 5).unwrap();
    assert_eq!(m.qr_value, 1);
    assert_eq!(m.c0, Some(1));
    assert_eq!(
        m.gamma0,
        Some(ints(&[1, 3, 1, 0, 0, 2, 2, 4, 0, 2, 1, 3, 1]))
    );
    assert!(!m.quadform_mod_p2.as_ref().unwrap().is_zero());
    assert_eq!(m.refuted_by, Some(Refutation::QuadraticForm));
    let cert = decide_dgs(&g).unwrap();
    assert_eq!(cert.verdict, Verdict::DgsCertifiedExtended);
    verify_certificate(&cert, &g).unwrap();
}

fn criterion_5() {
    let expected = [
        (3, (4, 2, 0, 2)),
        (4, (11, 2, 0, 2)),
        (5, (34, 6, 0, 6)),
        (6, (156, 22, 0, 22)),
    ];
    for (n, want) in expected {
        let r = census_of_order(n).unwrap();
        assert_eq!(
            (r.total_graphs, r.h_n, r.h_n_asym, r.h_n_sym),
            want,
            "n = {n}"
        );
    }
    let r = census(&order7_corpus()).unwrap();
    assert_eq!(
        (r.n, r.total_graphs, r.h_n, r.h_n_asym, r.h_n_sym),
        (7, 1044, 214, 42, 172)
    );
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::from_vec(rows, cols, data)
}

/// Solves `V x = y` for `V` of full column rank via the normal equations.
fn solve_full_column_rank(v: &IntMatrix, y: &[BigInt]) -> Vec<BigRational> {
    let vr = RatMatrix::from(v);
    let vt = vr.transpose();
    let gram_inv = vt.mul(&vr).unwrap().inverse().unwrap();
    let yr = RatMatrix::from(&IntMatrix::from_columns(&[y.to_vec()]));
    let x = gram_inv.mul(&vt).unwrap().mul(&yr).unwrap();
    let check = vr.mul(&x).unwrap();
    assert_eq!(check, yr, "system is consistent");
    (0..x.rows()).map(|i| x[(i, 0)].clone()).collect()
}

/// Exhaustive search for `M x = 0 (mod p^2)` with `x != 0 (mod p)`.
fn p2_kernel_by_search(m: &[[i64; 4]; 4], p: i64) -> bool {
    let q = p * p;
    let mut x = [0i64; 4];
    loop {
        if x.iter().any(|&v| v % p != 0) {
            let hit = m.iter().all(|row| {
                row.iter()
                    .zip(&x)
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
                    .rem_euclid(q)
                    == 0
            });
            if hit {
                return true;
            }
        }
        let mut k = 0;
        loop {
            if k == 4 {
                return false;
            }
            x[k] += 1;
            if x[k] < q {
                break;
            }
            x[k] = 0;
            k += 1;
        }
    }
}

fn criterion_6() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let instances = 200;
    let mut checks = 0;

    // walk-matrix identities on random graphs of orders 3..=12
    for _ in 0..instances {
        let n = rng.gen_range(3..=12);
        let g = random_graph(&mut rng, n);
        let w = walk_matrix(&g);
        let cols = walk_columns(&g, n + 1);
        // 2-rank bound
        assert!(rank_mod_p(&w, 2).unwrap() <= n.div_ceil(2));
        // e^T A^k e is even for k >= 1
        for c in &cols[1..] {
            let s: BigInt = c.iter().sum();
            assert!((s % 2u32).is_zero());
        }
        // integral recurrence for A^r e
        let r = rank_rational(&w);
        let x = solve_full_column_rank(&IntMatrix::from_columns(&cols[..r]), &cols[r]);
        assert!(x.iter().all(|c| c.is_integer()), "n = {n}");
        // the first p-rank columns are independent mod p
        for p in [2, 3, 5] {
            let k = rank_mod_p(&w, p).unwrap();
            assert_eq!(rank_mod_p(&w.first_columns(k), p).unwrap(), k);
        }
        checks += 1;
    }

    // cofactor vector identities on every almost controllable graph, n <= 6
    for graphs in catalogue_up_to_six() {
        for g in graphs {
            let n = g.order();
            if n < 2 || rank_rational(&walk_matrix(&g)) + 1 != n {
                continue;
            }
            let xi = xi_vector(&g).unwrap();
            assert_eq!(xi, xi_by_cofactors(&g).unwrap());
            let scaled = xi_scaled(&xi).unwrap();
            assert!(scaled.iter().any(|x| !x.is_zero()));
            let w = walk_matrix(&g);
            assert!(w.transpose().mul_vec(&xi).iter().all(Zero::is_zero));
            let v = w.first_columns(n - 1);
            let gram = v.transpose().mul(&v).unwrap();
            let xtx: BigInt = xi.iter().map(|x| x * x).sum();
            assert_eq!(xtx, bareiss_det(&gram).unwrap());
            checks += 1;
        }
    }

    // p^2 kernel predicate against exhaustive search, 4 x 4
    for p in [2i64, 3, 5] {
        for i in 0..instances {
            let mut m = random_matrix(&mut rng, 4, 4, 9);
            if i % 2 == 1 {
                // force p or p^2 (or 0) into the last invariant factor
                let k = [p, p * p, 0][rng.gen_range(0..3)];
                let d = IntMatrix::diagonal(&ints(&[1, 1, 1, k]));
                m = m
                    .mul(&d)
                    .unwrap()
                    .mul(&random_matrix(&mut rng, 4, 4, 2))
                    .unwrap();
            }
            let small: [[i64; 4]; 4] = std::array::from_fn(|r| {
                std::array::from_fn(|c| i64::try_from(&m[(r, c)]).unwrap())
            });
            let snf = smith_normal_form(&m, false);
            let predicted = snf.queries(p as u64).has_p2_kernel_vector;
            assert_eq!(
                predicted,
                p2_kernel_by_search(&small, p),
                "p = {p}, M = {m}"
            );
            checks += 1;
        }
    }

    // Cayley-Hamilton and SNF round trip
    for _ in 0..instances {
        let n = rng.gen_range(1..=6);
        let m = random_matrix(&mut rng, n, n, 9);
        let c = char_poly(&m).unwrap();
        assert!(eval_poly_at(&c, &m).is_zero());

        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let m = random_matrix(&mut rng, rows, cols, 9);
        let s = smith_normal_form(&m, true);
        let (u, v) = s.transforms.clone().unwrap();
        assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), s.diagonal_matrix());
        assert_eq!(
            bareiss_det(&u).unwrap().magnitude(),
            BigInt::one().magnitude()
        );
        assert_eq!(
            bareiss_det(&v).unwrap().magnitude(),
            BigInt::one().magnitude()
        );
        for w in s.invariant_factors.windows(2) {
            assert!(
                w[0].is_zero() && w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero())
            );
        }
        checks += 1;
    }
    checks
}

fn criterion_7() -> usize {
    let mut certified = 0;
    for graphs in catalogue_up_to_six() {
        let certs: Vec<_> = graphs.iter().map(|g| decide_dgs(g).unwrap()).collect();
        for pair in mate_scan(&graphs).unwrap() {
            for i in [pair.first, pair.second] {
                assert!(
                    !certs[i].verdict.is_certified(),
                    "certified graph {:?} has a mate",
                    graphs[i]
                );
            }
        }
        for (g, c) in graphs.iter().zip(&certs) {
            verify_certificate(c, g).unwrap();
        }
        certified += certs.iter().filter(|c| c.verdict.is_certified()).count();
    }
    certified
}

fn criterion_8() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs_checked = 0;
    for graphs in catalogue_up_to_six() {
        let mut pairs: Vec<(Graph, Graph)> = Vec::new();
        for p in mate_scan(&graphs).unwrap() {
            let (g, h) = (&graphs[p.first], &graphs[p.second]);
            pairs.push((g.clone(), h.clone()));
            pairs.push((h.clone(), g.clone()));
        }
        // every almost controllable graph is cospectral with itself and
        // with its relabellings
        for g in &graphs {
            let n = g.order();
            if n >= 2 && rank_rational(&walk_matrix(g)) + 1 == n {
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    perm.swap(i, rng.gen_range(0..=i));
                }
                pairs.push((g.clone(), g.clone()));
                pairs.push((g.clone(), g.relabel(&perm)));
            }
        }
        for (g, h) in pairs {
            let n = g.order();
            if rank_rational(&walk_matrix(&g)) + 1 != n {
                continue;
            }
            let s = almost_controllable_solutions(&g, &h).unwrap();
            for q in [&s.q0, &s.q1] {
                verify_regular_orthogonal(q, &g, &h).unwrap();
            }
            assert_ne!(s.q0, s.q1);
            if classify(&g).unwrap().family == Family::AlmostControllableSymmetric {
                assert_eq!(s.level0, s.level1);
            }
            let d_n = smith_normal_form(&w_delta(&g, 0).unwrap(), false)
                .last()
                .cloned()
                .unwrap();
            for l in [&s.level0, &s.level1] {
                assert!((&d_n % l).is_zero(), "level {l} does not divide {d_n}");
            }
            pairs_checked += 1;
        }
    }
    pairs_checked
}

struct Outcome {
    passed: bool,
    elapsed: Duration,
    note: String,
}

fn run(f: impl FnOnce() -> String) -> Outcome {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    match result {
        Ok(note) => Outcome {
            passed: true,
            elapsed,
            note,
        },
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome {
                passed: false,
                elapsed,
                note: msg,
            }
        }
    }
}

fn main() {
    type Criterion = (
        u32,
        &'static str,
        Duration,
        Box<dyn FnOnce() -> (String, Option<Duration>)>,
    );
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "order-5 pendant twins: W, xi, W0, W1",
            Duration::from_millis(1),
            Box::new(|| {
                let t = criterion_1();
                (String::new(), Some(t))
            }),
        ),
        (
            2,
            "order-9 level-3 mate",
            Duration::from_secs(1),
            Box::new(|| {
                criterion_2();
                (String::new(), None)
            }),
        ),
        (
            3,
            "order-10 adjacent twins certified",
            Duration::from_secs(1),
            Box::new(|| {
                criterion_3();
                (String::new(), None)
            }),
        ),
        (
            4,
            "order-13 extended certificate",
            Duration::from_secs(5),
            Box::new(|| {
                criterion_4();
                (String::new(), None)
            }),
        ),
        (
            5,
            "census n = 3..7",
            Duration::from_secs(60),
            Box::new(|| {
                criterion_5();
                (String::new(), None)
            }),
        ),
        (
            6,
            "property suites",
            Duration::from_secs(120),
            Box::new(|| {
                let k = criterion_6();
                (format!("{k} instances"), None)
            }),
        ),
        (
            7,
            "certificates vs mate scan, n <= 6",
            Duration::from_secs(120),
            Box::new(|| {
                let k = criterion_7();
                (format!("{k} certified graphs"), None)
            }),
        ),
        (
            8,
            "two-solution structure, n <= 6",
            Duration::from_secs(60),
            Box::new(|| {
                let k = criterion_8();
                (format!("{k} pairs"), None)
            }),
        ),
    ];

    let mut failures = 0;
    for (id, name, budget, f) in criteria {
        let mut timed = None;
        let mut outcome = run(|| {
            let (note, t) = f();
            timed = t;
            note
        });
        // criterion 1 is timed on the computation alone
        if let Some(t) = timed {
            outcome.elapsed = t;
        }
        let in_budget = outcome.elapsed < budget;
        let ok = outcome.passed && in_budget;
        if !ok {
            failures += 1;
        }
        let mut detail = outcome.note;
        if outcome.passed && !in_budget {
            detail = format!("over budget {budget:?}; {detail}");
        }
        println!(
            "criterion {id} [{name}]: {} ({:.3?}, budget {budget:?}){}{}",
            if ok { "PASS" } else { "FAIL" },
            outcome.elapsed,
            if detail.is_empty() { "" } else { " - " },
            detail
        );
    }
    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
