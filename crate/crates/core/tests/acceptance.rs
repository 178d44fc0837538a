//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vest_core::brute::{exists_up_to, mk_bruteforce, Budget};
use vest_core::crossval::{connected_graphs, verify_reduction, Reduction, VerifyConfig};
use vest_core::dp::{count_mk_dp, count_mk_dp_rows, dp_sequence, min_k};
use vest_core::field::{FieldTag, Scalar};
use vest_core::instance::VestInstance;
use vest_core::linalg::{apply, mat_mul, Matrix, Vector};
use vest_core::oracles::{count_dominating_sets, pcp_bounded_search};
use vest_core::reductions::{
    dominating_set_to_vest, pcp_to_vest, sieve_primes, u_matrix, word_matrix, x_matrix,
    GadgetStyle, PcpInstance,
};
use vest_core::VestError;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn scalars(tag: FieldTag, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| Scalar::from_i64(tag, x)).collect()
}

fn all_square(tag: FieldTag, values: &[i64], d: usize) -> Vec<Matrix> {
    std::iter::repeat_n(values.iter().copied(), d * d)
        .multi_cartesian_product()
        .map(|e| Matrix::from_entries(tag, d, d, scalars(tag, &e)).unwrap())
        .collect()
}

fn random_matrix(
    rng: &mut ChaCha8Rng,
    tag: FieldTag,
    rows: usize,
    cols: usize,
    zero_from_row: usize,
) -> Matrix {
    let p = tag.modulus().unwrap() as i64;
    let e: Vec<i64> = (0..rows * cols)
        .map(|i| {
            if i / cols >= zero_from_row {
                0
            } else {
                rng.gen_range(0..p)
            }
        })
        .collect();
    Matrix::from_entries(tag, rows, cols, scalars(tag, &e)).unwrap()
}

fn random_vector(rng: &mut ChaCha8Rng, tag: FieldTag, d: usize) -> Vector {
    let p = tag.modulus().unwrap() as i64;
    Vector::from_i64(tag, &(0..d).map(|_| rng.gen_range(0..p)).collect_vec())
}

fn dp_matches_brute(inst: &VestInstance, kmax: usize) -> Result<(), String> {
    let dp = dp_sequence(inst, kmax).map_err(|e| e.to_string())?;
    for (k, count) in dp.iter().enumerate() {
        let brute = mk_bruteforce(inst, k, Budget::DEFAULT).map_err(|e| e.to_string())?;
        check(*count == brute, || {
            format!("k={k}: dp={count} brute={brute} on {inst:?}")
        })?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let z2 = FieldTag::prime(2).unwrap();
    let mut instances = 0usize;
    for d in 1..=2 {
        let mats = all_square(z2, &[0, 1], d);
        let vs: Vec<Vector> = std::iter::repeat_n([0i64, 1], d)
            .multi_cartesian_product()
            .map(|e| Vector::from_i64(z2, &e))
            .collect();
        // Diagonal S, plus every single-row S as the non-diagonal shape.
        let mut ss: Vec<Matrix> = std::iter::repeat_n([0i64, 1], d)
            .multi_cartesian_product()
            .map(|diag| {
                let mut s = Matrix::zeros(z2, d, d);
                for (i, &x) in diag.iter().enumerate() {
                    s.set(i, i, Scalar::from_i64(z2, x)).unwrap();
                }
                s
            })
            .collect();
        if d > 1 {
            ss.extend(
                std::iter::repeat_n([0i64, 1], d)
                    .multi_cartesian_product()
                    .map(|row| Matrix::from_entries(z2, 1, d, scalars(z2, &row)).unwrap()),
            );
        }
        for m in 1..=3 {
            for ts in std::iter::repeat_n(mats.iter().cloned(), m).multi_cartesian_product() {
                for s in &ss {
                    for v in &vs {
                        let inst =
                            VestInstance::vector_zero(z2, ts.clone(), Some(s.clone()), v.clone())
                                .unwrap();
                        dp_matches_brute(&inst, 4)?;
                        instances += 1;
                    }
                }
            }
        }
    }
    let z3 = FieldTag::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let m = rng.gen_range(1..=4);
        let ts = (0..m)
            .map(|_| random_matrix(&mut rng, z3, 2, 2, 2))
            .collect();
        let h = rng.gen_range(1..=2);
        let s = random_matrix(&mut rng, z3, h, 2, h);
        let v = random_vector(&mut rng, z3, 2);
        let inst = VestInstance::vector_zero(z3, ts, Some(s), v).unwrap();
        dp_matches_brute(&inst, 5)?;
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{instances} exhaustive Z_2 instances (k<=4) and 100 random Z_3 instances (k<=5) agree"
    ))
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut graphs = 0;
    for n in 1..=6 {
        for g in connected_graphs(n) {
            graphs += 1;
            for k in 1..=3 {
                let (inst, _) =
                    dominating_set_to_vest(&g, k, GadgetStyle::Counting, FieldTag::RATIONAL)
                        .unwrap();
                let mk = mk_bruteforce(&inst, k, Budget::DEFAULT).map_err(|e| e.to_string())?;
                let dk = if k <= n {
                    count_dominating_sets(&g, k, Budget::DEFAULT).map_err(|e| e.to_string())?
                } else {
                    BigUint::zero()
                };
                check(mk == factorial(k) * &dk, || {
                    format!("n={n} edges={:?} k={k}: M_k={mk}, D_k={dk}", g.edges())
                })?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "{graphs} connected graphs up to isomorphism, k in 1..=3"
    ))
}

fn all_words(max_len: usize) -> Vec<String> {
    (0..=max_len)
        .flat_map(|len| {
            std::iter::repeat_n(['0', '1'], len)
                .multi_cartesian_product()
                .map(|cs| cs.into_iter().collect::<String>())
                .collect_vec()
        })
        .collect()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let words = all_words(6);
    let cache: Vec<Matrix> = words.iter().map(|w| word_matrix(w).unwrap()).collect();
    let mut pairs = 0;
    for (i, v) in words.iter().enumerate() {
        for (j, w) in words.iter().enumerate() {
            let lhs = mat_mul(&cache[i], &cache[j]).unwrap();
            let rhs = word_matrix(&format!("{w}{v}")).unwrap();
            check(lhs == rhs, || {
                format!("T_{v:?} T_{w:?} != T_{:?}", format!("{w}{v}"))
            })?;
            pairs += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{pairs} word pairs"))
}

fn criterion_4() -> Outcome {
    let q = FieldTag::RATIONAL;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let x = BigInt::from(rng.gen_range(-1_000_000_000i64..=1_000_000_000));
        let y = BigInt::from(rng.gen_range(-1_000_000_000i64..=1_000_000_000));
        let lhs = mat_mul(&u_matrix(&x), &u_matrix(&y)).unwrap();
        check(lhs == u_matrix(&(&x + &y)), || {
            format!("U_{x} U_{y} != U_{}", &x + &y)
        })?;
    }
    let x = x_matrix();
    check(mat_mul(&x, &x).unwrap() == x, || "X^2 != X".into())?;
    for r in -10i64..=10 {
        let lhs = mat_mul(&x, &mat_mul(&u_matrix(&r.into()), &x).unwrap()).unwrap();
        let rhs = x.scale(&Scalar::from_i64(q, 1 - r)).unwrap();
        check(lhs == rhs, || format!("X U_{r} X != (1-{r}) X"))?;
    }
    let killed = mat_mul(&x, &mat_mul(&u_matrix(&BigInt::one()), &x).unwrap()).unwrap();
    check(killed.is_zero(), || "X U_1 X != 0".into())?;
    Ok("U_x U_y = U_{x+y} on 1000 pairs, X^2 = X, X U_r X = (1-r) X for r in [-10,10], X U_1 X = 0".into())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let cfg = VerifyConfig {
        trials: 50,
        max_size: 5,
        seed: 2024,
        exhaustive: true,
        budget: Budget::DEFAULT,
    };
    let generators = [
        Reduction::KProduct,
        Reduction::KSum,
        Reduction::ZeroProduct,
        Reduction::VestIdentity,
        Reduction::EliminateS,
        Reduction::ZeroProductToVest,
        Reduction::VestToZeroProduct,
    ];
    let mut summaries = Vec::new();
    for r in generators {
        let t = Instant::now();
        let report = verify_reduction(r, &cfg).map_err(|e| format!("{r}: {e}"))?;
        if let Some(f) = report.failures().next() {
            return Err(format!("{r}: {f}"));
        }
        summaries.push(format!(
            "{} ({:.1}s)",
            report.summary(),
            t.elapsed().as_secs_f64()
        ));
    }
    within(start.elapsed(), Duration::from_secs(600))?;
    Ok(summaries.join("; "))
}

fn criterion_6() -> Outcome {
    let z2 = FieldTag::prime(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let trials = 300;
    for _ in 0..trials {
        let d = rng.gen_range(1..=4);
        let p = rng.gen_range(1..=d.min(2));
        let m = rng.gen_range(1..=4);
        let ts = (0..m)
            .map(|_| random_matrix(&mut rng, z2, d, d, p))
            .collect();
        let h = rng.gen_range(1..=d);
        let s = random_matrix(&mut rng, z2, h, d, h);
        let v = random_vector(&mut rng, z2, d);
        let inst = VestInstance::vector_zero(z2, ts, Some(s), v).unwrap();
        for k in 0..=5 {
            let rows = count_mk_dp_rows(&inst, p, k).map_err(|e| e.to_string())?;
            let full = count_mk_dp(&inst, k).map_err(|e| e.to_string())?;
            let brute = mk_bruteforce(&inst, k, Budget::DEFAULT).map_err(|e| e.to_string())?;
            check(rows == full && full == brute, || {
                format!("p={p} k={k}: rows={rows} full={full} brute={brute} on {inst:?}")
            })?;
        }
    }
    Ok(format!(
        "{trials} random Z_2 instances, d<=4, p<=2, m<=4, k<=5"
    ))
}

fn criterion_7() -> Outcome {
    let z2 = FieldTag::prime(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut found, mut none, mut max_levels) = (0, 0, 0);
    for _ in 0..200 {
        let d = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        // Bias toward invertible-looking transforms so that none-cases occur.
        let ts = (0..m)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    random_matrix(&mut rng, z2, d, d, d)
                } else {
                    let mut t = Matrix::identity(z2, d);
                    for c in 1..d {
                        if rng.gen_bool(0.5) {
                            t.set(0, c, Scalar::one(z2)).unwrap();
                        }
                    }
                    t
                }
            })
            .collect();
        let s = random_matrix(&mut rng, z2, d, d, d);
        let v = random_vector(&mut rng, z2, d);
        let inst = VestInstance::vector_zero(z2, ts, Some(s), v).unwrap();
        let result = min_k(&inst, d).map_err(|e| e.to_string())?;
        let reference = exists_up_to(&inst, 512, Budget::DEFAULT).map_err(|e| e.to_string())?;
        check(result.k == reference, || {
            format!(
                "min_k={:?} exists_up_to={reference:?} on {inst:?}",
                result.k
            )
        })?;
        check(result.levels <= 512, || format!("{} levels", result.levels))?;
        max_levels = max_levels.max(result.levels);
        if result.k.is_some() {
            found += 1;
        } else {
            none += 1;
        }
    }
    check(none > 0 && found > 0, || {
        format!("degenerate sample: {found} found, {none} none")
    })?;
    Ok(format!(
        "200 instances ({found} with a witness, {none} none), at most {max_levels} levels"
    ))
}

fn binary(word: &str) -> BigInt {
    if word.is_empty() {
        BigInt::zero()
    } else {
        BigInt::parse_bytes(word.as_bytes(), 2).unwrap()
    }
}

fn criterion_8() -> Outcome {
    // Any sequence of length <= 3 over a list of <= 3 pairs is a sequence of
    // <= 3 pairs drawn from all pairs of words of length <= 3, so one instance
    // holding every such pair covers them all.
    let start = Instant::now();
    let q = FieldTag::RATIONAL;
    let words = all_words(3);
    let pairs: Vec<(String, String)> = words
        .iter()
        .cartesian_product(&words)
        .map(|(v, w)| (v.clone(), w.clone()))
        .collect();
    let pcp = PcpInstance::new(pairs.clone()).unwrap();
    let (inst, _) = pcp_to_vest(&pcp).unwrap();
    let ts = inst.transforms();
    let s = inst.s().unwrap();
    // S·T_i, so the last factor and S cost one dot product per sequence.
    let closing: Vec<Matrix> = ts.iter().map(|t| mat_mul(s, t).unwrap()).collect();
    let value = |seq: &[usize]| -> Scalar {
        let top: String = seq.iter().map(|&i| pairs[i].0.as_str()).collect();
        let bottom: String = seq.iter().map(|&i| pairs[i].1.as_str()).collect();
        Scalar::from_bigint(q, &(binary(&top) - binary(&bottom)))
    };
    let mut sequences = 0u64;
    let mut compare = |seq: &[usize], prefix: &Vector| -> Result<(), String> {
        let last = *seq.last().unwrap();
        let got = apply(&closing[last], prefix).unwrap().get(0).clone();
        let want = value(seq);
        sequences += 1;
        check(got == want, || {
            format!("sequence {seq:?}: matrix {got}, strings {want}")
        })
    };
    let v = inst.v().unwrap();
    for i in 0..ts.len() {
        compare(&[i], v)?;
        let x1 = apply(&ts[i], v).unwrap();
        for j in 0..ts.len() {
            compare(&[i, j], &x1)?;
            let x2 = apply(&ts[j], &x1).unwrap();
            for l in 0..ts.len() {
                compare(&[i, j, l], &x2)?;
            }
        }
    }
    let classic = PcpInstance::from_strs(&[("1", "101"), ("10", "00"), ("011", "11")]).unwrap();
    let witness = [0usize, 2, 1, 2];
    let top: String = witness
        .iter()
        .map(|&i| classic.pairs()[i].0.as_str())
        .collect();
    let bottom: String = witness
        .iter()
        .map(|&i| classic.pairs()[i].1.as_str())
        .collect();
    check(top == "101110011" && top == bottom, || {
        format!("{top} vs {bottom}")
    })?;
    let (classic_inst, _) = pcp_to_vest(&classic).unwrap();
    let mut x = classic_inst.v().unwrap().clone();
    for &i in &witness {
        x = apply(&classic_inst.transforms()[i], &x).unwrap();
    }
    check(
        apply(classic_inst.s().unwrap(), &x).unwrap().is_zero(),
        || "witness value nonzero".into(),
    )?;
    let found = pcp_bounded_search(&classic, 4, Budget::DEFAULT).map_err(|e| e.to_string())?;
    check(found.as_deref() == Some(&witness[..]), || {
        format!("search returned {found:?}")
    })?;
    Ok(format!(
        "{sequences} sequences over {} pairs agree; classic witness (1,3,2,3) gives 0 ({:.1}s)",
        pairs.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_9() -> Outcome {
    let primes = sieve_primes(1000);
    let is_prime = |p: u64| {
        p >= 2
            && (2..)
                .take_while(|d| d * d <= p)
                .all(|d| !p.is_multiple_of(d))
    };
    for n in 2..=1000usize {
        let p = primes[n - 1];
        check(p <= (n * n) as u64, || format!("p_{n} = {p} > {}", n * n))?;
        check(is_prime(p), || format!("p_{n} = {p} is composite"))?;
    }
    check(primes.windows(2).all(|w| w[0] < w[1]), || {
        "not increasing".into()
    })?;
    Ok(format!(
        "p_n <= n^2 and prime for 2 <= n <= 1000 (p_1000 = {})",
        primes[999]
    ))
}

fn criterion_10() -> Outcome {
    let z2 = FieldTag::prime(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let ts = (0..10)
        .map(|_| random_matrix(&mut rng, z2, 3, 3, 3))
        .collect();
    let s = random_matrix(&mut rng, z2, 1, 3, 1);
    let v = Vector::from_i64(z2, &[1, 0, 1]);
    let inst = VestInstance::vector_zero(z2, ts, Some(s), v).unwrap();
    let start = Instant::now();
    let count = count_mk_dp(&inst, 50).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    let brute = mk_bruteforce(&inst, 50, Budget::DEFAULT);
    check(
        matches!(brute, Err(VestError::BudgetExceeded { .. })),
        || format!("brute force did not refuse: {brute:?}"),
    )?;
    Ok(format!(
        "dp in {:.1} ms (M_50 has {} digits); brute force needs ~10^50 steps and is refused",
        elapsed.as_secs_f64() * 1000.0,
        count.to_string().len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "DP equals brute force on small finite-field instances",
            criterion_1,
        ),
        (
            "dominating-set gadget count equals k! times dominating sets",
            criterion_2,
        ),
        (
            "word matrices multiply like reversed concatenation",
            criterion_3,
        ),
        ("2x2 shift and projection identities", criterion_4),
        ("seven generators agree with their oracles", criterion_5),
        (
            "row-restricted DP equals full DP and brute force",
            criterion_6,
        ),
        (
            "min_k agrees with bounded search and terminates",
            criterion_7,
        ),
        (
            "correspondence value formula and classic witness",
            criterion_8,
        ),
        ("n-th prime is at most n^2", criterion_9),
        ("DP handles k = 50 where brute force cannot", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS [{secs:.1}s] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{secs:.1}s] {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
