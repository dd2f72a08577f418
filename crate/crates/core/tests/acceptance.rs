//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Set `MULTIFOLD_LONG=1` to also run the length-10
//! classification (hours).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use multifold::analysis::*;
use multifold::bounds::*;
use multifold::constructions::*;
use multifold::linalg::gf2_rank;
use multifold::partitions::*;
use multifold::search::*;
use multifold::{Code, Word};

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn big(x: usize) -> BigInt {
    BigInt::from(x)
}

fn packings() -> Vec<(&'static str, Packing96)> {
    vec![
        ("linear", packing96_linear().unwrap()),
        ("z2z4", packing96_z2z4().unwrap()),
        ("propelinear", packing96_propelinear().unwrap()),
    ]
}

fn bounds_table() -> Outcome {
    let sp = sphere_packing_bound(9, 2, 2, 1).map_err(|e| e.to_string())?;
    ensure!(sp == big(102), "sphere bound (9,2,2,1) = {sp}");
    for (n, lambda, want) in [(9, 2, 96), (8, 2, 48), (7, 1, 16)] {
        let b = lp_bound(n, lambda).map_err(|e| e.to_string())?;
        ensure!(b.value == big(want), "lp_bound({n},{lambda}) = {}", b.value);
    }
    let e = lp_bound_even(10, 2).map_err(|e| e.to_string())?;
    ensure!(e.value == big(96), "lp_bound_even(10,2) = {}", e.value);
    Ok("sphere(9,2,2,1)=102 lp(9,2)=96 lp(8,2)=48 lp_even(10,2)=96 lp(7,1)=16".into())
}

fn constructions_verify() -> Outcome {
    let lp = lp_bound(9, 2).unwrap().value;
    for (name, p) in packings() {
        let t = &p.c4;
        ensure!(t.len() == 96, "{name}: |C4| = {}", t.len());
        ensure!(
            is_extended_unitrade(t).unwrap().holds,
            "{name}: not an extended unitrade"
        );
        ensure!(
            !is_bipartite_unitrade(t, true).unwrap().is_bipartite(),
            "{name}: bipartite"
        );
        let punct = puncture_last(t).unwrap();
        let r = verify_packing(&punct, 2, 1).unwrap();
        ensure!(
            r.is_lambda_fold,
            "{name}: punctured set is not 2-fold (max {})",
            r.max_coverage
        );
        ensure!(
            big(punct.len()) == lp,
            "{name}: {} vs lp bound {lp}",
            punct.len()
        );
    }
    Ok("three size-96 non-bipartite unitrades puncture to 2-fold packings of size 96 = lp_bound(9,2)".into())
}

fn structure() -> Outcome {
    let ps = packings();
    let mut ranks = Vec::new();
    for (name, p) in &ps {
        let dp = distance_partition(&p.c0).unwrap();
        let m = is_equitable(&dp);
        let Some(m) = m.matrix() else {
            return Err(format!("{name}: distance partition not equitable"));
        };
        let array = m
            .intersection_array()
            .ok_or(format!("{name}: not tridiagonal"))?;
        ensure!(
            array.b == [10, 9, 4] && array.c == [1, 6, 10],
            "{name}: intersection array {array}"
        );
        ensure!(
            dp.cell_sizes() == [32, 320, 480, 192],
            "{name}: {:?}",
            dp.cell_sizes()
        );
        let split = split_distance3_cell(&p.c0, &p.c4).unwrap();
        ensure!(
            is_equitable(&split).matrix() == Some(&IntersectionMatrix::from_rows(&C01234)),
            "{name}: split partition matrix differs"
        );
        ensure!(
            split.cell_sizes() == [32, 320, 480, 96, 96],
            "{name}: {:?}",
            split.cell_sizes()
        );
        ranks.push(gf2_rank(&p.c0).unwrap());
    }
    ensure!(ranks == [5, 6, 7], "ranks {ranks:?}");
    for i in 0..3 {
        for j in i + 1..3 {
            ensure!(
                !are_equivalent(&ps[i].1.c4, &ps[j].1.c4).unwrap(),
                "{} and {} C4 sets are equivalent",
                ps[i].0,
                ps[j].0
            );
        }
    }
    // (10,9,2;1,6,10) cannot hold: 480 * b2 = 192 * c3 forces b2 = 4
    Ok("completely regular, array (10,9,4;1,6,10) [printed b2=2 is inconsistent with the cell sizes], \
        split matrix and sizes (32,320,480,96,96), ranks (5,6,7), C4 sets pairwise inequivalent"
        .into())
}

fn nonbipartite(n: usize) -> Classification {
    let mut cfg = SearchConfig::new(n);
    cfg.nonbipartite_only = true;
    classify_extended_unitrades(&cfg).unwrap()
}

fn classification() -> Outcome {
    let c6 = nonbipartite(6);
    ensure!(c6.classes.len() == 1, "n=6: {} classes", c6.classes.len());
    ensure!(
        c6.classes[0].representative == canonical_form(&l_star(6).unwrap()).unwrap(),
        "n=6 class is not L*(6)"
    );
    let c8 = nonbipartite(8);
    ensure!(c8.classes.len() == 2, "n=8: {} classes", c8.classes.len());
    let odd = Code::from_bits(2, [0b01, 0b10]).unwrap();
    let expected = [
        canonical_form(&l_star(8).unwrap()).unwrap(),
        canonical_form(&concatenate(&l_star(6).unwrap(), &odd).unwrap()).unwrap(),
    ];
    for e in &expected {
        ensure!(
            c8.classes.iter().any(|k| &k.representative == e),
            "n=8: missing class of size {}",
            e.len()
        );
    }
    let mut note = "n=6: L*(6); n=8: L*(8) and L*(6)10 u L*(6)01".to_string();
    if std::env::var("MULTIFOLD_LONG").is_ok_and(|v| v == "1") {
        let c10 = nonbipartite(10);
        let mut sizes: Vec<usize> = c10.classes.iter().map(|k| k.cardinality).collect();
        sizes.sort_unstable();
        let want = [
            40, 48, 50, 56, 56, 58, 62, 62, 70, 70, 70, 72, 72, 72, 72, 72, 72, 72, 72, 72, 76, 80,
            80, 80, 86, 88, 88, 96, 96, 96,
        ];
        ensure!(sizes == want, "n=10 cardinalities {sizes:?}");
        let cw = c10
            .classes
            .iter()
            .filter(|k| k.flags.constant_weight_translate)
            .count();
        ensure!(cw == 11, "n=10: {cw} constant-weight classes");
        let antipodal: Vec<usize> = c10
            .classes
            .iter()
            .filter(|k| k.flags.antipodal)
            .map(|k| k.cardinality)
            .collect();
        ensure!(antipodal == [80], "n=10 antipodal classes {antipodal:?}");
        for (name, p) in packings() {
            let form = canonical_form(&p.c4).unwrap();
            ensure!(
                c10.classes.iter().any(|k| k.representative == form),
                "{name} C4 not classified"
            );
        }
        note.push_str("; n=10: 30 classes, 11 constant-weight, one antipodal (80), C4 sets found");
    } else {
        note.push_str("; n=10 SKIPPED (set MULTIFOLD_LONG=1)");
    }
    Ok(note)
}

/// Smallest extended unitrade containing 0, by plain enumeration of subsets
/// of the even words in increasing size.
fn min_unitrade_oracle(n: usize) -> usize {
    let even: Vec<u64> = (1..1u64 << n).filter(|w| w.count_ones() % 2 == 0).collect();
    let odd: Vec<u64> = (0..1u64 << n).filter(|w| w.count_ones() % 2 == 1).collect();
    let ok = |set: &[u64]| {
        odd.iter().all(|&v| {
            let c = set.iter().filter(|&&s| (s ^ v).count_ones() == 1).count();
            c == 0 || c == 2
        })
    };
    fn choose(
        pool: &[u64],
        k: usize,
        from: usize,
        cur: &mut Vec<u64>,
        ok: &dyn Fn(&[u64]) -> bool,
    ) -> bool {
        if k == 0 {
            return ok(cur);
        }
        for i in from..pool.len() {
            cur.push(pool[i]);
            if choose(pool, k - 1, i + 1, cur, ok) {
                return true;
            }
            cur.pop();
        }
        false
    }
    (1..)
        .find(|&size| choose(&even, size - 1, 0, &mut vec![0], &ok))
        .unwrap()
}

fn minimum_cardinalities() -> Outcome {
    let mut parts = Vec::new();
    for n in [4, 6, 8] {
        let got = min_extended_unitrade_size(n).unwrap();
        let formula = unitrade_min_cardinality(n, true, false).unwrap();
        ensure!(
            big(got) == formula,
            "n={n}: search {got}, formula {formula}"
        );
        if n <= 6 {
            let oracle = min_unitrade_oracle(n);
            ensure!(oracle == got, "n={n}: oracle {oracle}, search {got}");
            parts.push(format!("n={n}: {got} (oracle agrees)"));
        } else {
            parts.push(format!("n={n}: {got}"));
        }
    }
    Ok(parts.join(", "))
}

fn extremal_profile() -> Outcome {
    for (name, p) in packings() {
        for x in &p.c4 {
            let a = weight_distribution(&p.c4, x).unwrap();
            ensure!(a[0] == 1 && a[2] == 5, "{name}: A(x) = {a:?} at {x}");
        }
        let punct = puncture_last(&p.c4).unwrap();
        ensure!(
            punct.duplicates().is_empty(),
            "{name}: punctured set has repeats"
        );
    }
    Ok("A_0(x)=1, A_2(x)=5 at all 96 codewords of each; punctured sets are repeat-free".into())
}

fn ball_counts_ok(t: &Code) -> bool {
    let n = t.n();
    let bits = t.bits().unwrap();
    let parity = bits.first().map_or(0, |b| b.count_ones() % 2);
    (0..1u64 << n)
        .filter(|v| v.count_ones() % 2 != parity)
        .all(|v| {
            let c = bits.iter().filter(|&&s| (s ^ v).count_ones() == 1).count();
            c == 0 || c == 2
        })
}

fn property_suite(name: &str, t: &Code, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = t.n();
    let check = is_extended_unitrade(t).unwrap();
    ensure!(
        check.holds && ball_counts_ok(t),
        "{name}: ball intersections"
    );
    if n >= 5 {
        ensure!(
            check.halved_cube_agrees == Some(true),
            "{name}: halved-cube disagreement"
        );
    }
    ensure!(oa_strength1_check(t).unwrap(), "{name}: not balanced");
    let half = BigRational::new(big(n), big(2));
    for _ in 0..5 {
        let v = Word::from_bits(n, rng.gen_range(0..1u64 << n)).unwrap();
        ensure!(
            average_distance(t, &v).unwrap() == half,
            "{name}: average distance from {v}"
        );
    }
    let shifted = t.translate(&t.words()[0]).unwrap();
    let v = pair_profile(&shifted).unwrap().violations();
    ensure!(v.is_empty(), "{name}: pair profile {v:?}");
    if is_bipartite_unitrade(t, true).unwrap().is_bipartite() {
        ensure!(
            is_antipodal(t).unwrap(),
            "{name}: bipartite but not antipodal"
        );
    }
    Ok(())
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pool: Vec<(String, Code)> = Vec::new();
    for (name, p) in packings() {
        pool.push((format!("C4 {name}"), p.c4));
    }
    pool.push(("C4 display".into(), classified_c4_display().unwrap()));
    for n in [6, 8, 10] {
        pool.push((format!("L*({n})"), l_star(n).unwrap()));
    }
    for n in [2, 4, 6, 8] {
        pool.push((format!("diag({n})"), diagonal_unitrade(n).unwrap()));
    }
    for n in [4, 6, 8] {
        for (i, k) in classify_extended_unitrades(&SearchConfig::new(n))
            .unwrap()
            .classes
            .into_iter()
            .enumerate()
        {
            pool.push((format!("class {i} of length {n}"), k.representative));
        }
    }
    let small: Vec<(String, Code)> = pool.iter().filter(|(_, t)| t.n() <= 6).cloned().collect();
    let mut concats = 0;
    for (a, u) in &small {
        for (b, v) in &small {
            let c = concatenate(u, v).unwrap();
            let bip = |t: &Code| is_bipartite_unitrade(t, true).unwrap().is_bipartite();
            ensure!(bip(&c) == (bip(u) && bip(v)), "concat {a} | {b}");
            if c.n() <= 10 {
                pool.push((format!("{a} | {b}"), c));
            }
            concats += 1;
        }
    }
    for (name, t) in &pool {
        property_suite(name, t, &mut rng)?;
    }
    Ok(format!(
        "{} unitrades, {concats} concatenation pairs",
        pool.len()
    ))
}

fn mds_and_eigenvalue() -> Outcome {
    for n in 2..=4 {
        for q in 2..=5 {
            let c = mds_code(n, q).unwrap();
            ensure!(
                c.len() == q.pow(n as u32 - 1),
                "mds({n},{q}) size {}",
                c.len()
            );
            ensure!(
                verify_packing(&c, n, 1).unwrap().is_lambda_fold,
                "mds({n},{q}) not {n}-fold"
            );
        }
    }
    for n in 2..=5 {
        let q = 2 * n;
        let b = hamming_eigenvalue_bound(n, q, n).unwrap();
        ensure!(
            b.value == big(q.pow(n as u32 - 1)),
            "eigenvalue bound ({n},{q}) = {}",
            b.value
        );
    }
    let r = max_packing_size(&PackingSearch {
        n: 2,
        q: 4,
        lambda: 2,
        stop_at_bound: false,
    })
    .unwrap();
    ensure!(r.size == 4, "H(2,4) maximum 2-fold packing {}", r.size);
    Ok("MDS codes n<=4 q<=5, eigenvalue bound (2n)^(n-1) for n<=5, H(2,4) maximum 4".into())
}

fn hamming_cosets() -> Outcome {
    for lambda in 1..=9usize {
        let c = hamming_coset_union(3, &CosetChoice::First(lambda)).unwrap();
        ensure!(c.len() == 9 * lambda, "lambda={lambda}: size {}", c.len());
        ensure!(
            verify_packing(&c, lambda, 1).unwrap().is_lambda_fold,
            "lambda={lambda}: not a packing"
        );
        // 9 lambda > lambda * 81 / 12
        ensure!(
            12 * c.len() > lambda * 81,
            "lambda={lambda}: not above lambda q^n / (nq)"
        );
    }
    Ok("q=3 n=4: unions of 1..9 cosets are lambda-fold packings of size 9 lambda".into())
}

fn bounds_dominate_search() -> Outcome {
    let mut checked = 0;
    for (n, q) in [
        (2, 2),
        (3, 2),
        (4, 2),
        (5, 2),
        (2, 3),
        (3, 3),
        (2, 4),
        (2, 5),
    ] {
        for lambda in 1..=3 {
            let r = max_packing_size(&PackingSearch {
                n,
                q,
                lambda,
                stop_at_bound: false,
            })
            .unwrap();
            for b in applicable_bounds(n, q, lambda, 1, false).unwrap() {
                ensure!(
                    b.vacuous || big(r.size) <= b.value,
                    "H({n},{q}) lambda={lambda}: maximum {} exceeds {} = {}",
                    r.size,
                    b.formula_id,
                    b.value
                );
            }
            checked += 1;
        }
    }
    for n in [6, 7] {
        let m = max_twofold_packing_size(n).unwrap();
        ensure!(
            big(m) <= best_bound(n, 2, 2, 1, false).unwrap(),
            "n={n}: {m} above bound"
        );
        checked += 1;
    }
    Ok(format!(
        "{checked} exact maxima never exceed any implemented bound (asymptotic results not reproducible at this scale)"
    ))
}

fn main() {
    // libtest passes flags such as --nocapture; none apply here
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let criteria: [Check; 10] = [
        ("bounds table", bounds_table),
        ("constructions verify", constructions_verify),
        ("structure", structure),
        ("classification", classification),
        ("minimum cardinalities", minimum_cardinalities),
        ("extremal profile", extremal_profile),
        ("property suites", property_suites),
        ("mds and eigenvalue", mds_and_eigenvalue),
        ("hamming cosets", hamming_cosets),
        ("bounds dominate exact maxima", bounds_dominate_search),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if filter.as_ref().is_some_and(|s| !name.contains(s.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS [{name}] {msg} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{name}] {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
