//! Acceptance criteria 1 to 10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use affine_fpf::fpf::{Alignment, AtomPoset, FpfCache};
use affine_fpf::hecke::{BarOperator, CanonicalBasis, LaurentPoly, ModuleElement, Variant};
use affine_fpf::order::{verify_qp1, verify_qp2, Universe};
use affine_fpf::symfunc::{omega_plus, stanley_expand, to_schur_basis, StanleyExpander};
use affine_fpf::transition::{check_transition_affine, check_transition_fpf, pi_sets};
use affine_fpf::zlattice::{conjecture_reports, ConjectureOptions, Verdict};
use affine_fpf::{AffinePerm, FpfInvolution, MonomialExpansion, Partition, Sign};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn w(s: &str) -> AffinePerm {
    s.parse().unwrap()
}

fn z(s: &str) -> FpfInvolution {
    s.parse().unwrap()
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn m(n: usize, terms: &[(&str, i128)]) -> MonomialExpansion {
    let degree = p(terms[0].0).weight();
    MonomialExpansion::from_terms(n, degree, terms.iter().map(|&(s, c)| (p(s), c))).unwrap()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// All affine permutations of period `n` and length at most `max`.
fn ball(n: usize, max: u64) -> Vec<AffinePerm> {
    let mut all = BTreeSet::from([AffinePerm::identity(n)]);
    let mut layer = vec![AffinePerm::identity(n)];
    for _ in 0..max {
        let mut next = Vec::new();
        for x in &layer {
            for i in 1..=n as i64 {
                let mut y = x.clone();
                y.right_mul_simple(i);
                if y.length() == x.length() + 1 && all.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    all.into_iter().collect()
}

/// Conjugators `w` with `w⁻¹Θw = z` of the least length, by growing the
/// length ball one layer at a time.
fn minimal_conjugators(target: &FpfInvolution, give_up: u64) -> Option<(u64, Vec<AffinePerm>)> {
    let n = target.n();
    let mut seen = BTreeSet::from([AffinePerm::identity(n)]);
    let mut layer = vec![AffinePerm::identity(n)];
    for len in 0..=give_up {
        let hits: BTreeSet<AffinePerm> = layer
            .iter()
            .filter(|x| target.is_conjugated_by(x))
            .cloned()
            .collect();
        if !hits.is_empty() {
            return Some((len, hits.into_iter().collect()));
        }
        let mut next = Vec::new();
        for x in &layer {
            for i in 1..=n as i64 {
                let mut y = x.clone();
                y.right_mul_simple(i);
                if y.length() == x.length() + 1 && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    None
}

fn criterion_1() -> Outcome {
    let f = stanley_expand(&w("[3,0,5,2]")).map_err(err)?;
    let want = m(4, &[("(1,1,1,1)", 4), ("(2,1,1)", 2), ("(2,2)", 1)]);
    ensure!(f == want, "F_[3,0,5,2] = {f}");
    Ok(format!("F_[3,0,5,2] = {f}"))
}

fn criterion_2() -> Outcome {
    let a = w("[-3,3,4,6]");
    let b = a.inverse();
    ensure!(b == w("[5,0,2,3]"), "inverse is {b}");
    ensure!(a.code() == [0, 1, 1, 2], "c(pi) = {:?}", a.code());
    ensure!(b.code() == [4, 0, 0, 0], "c(pi^-1) = {:?}", b.code());
    ensure!(a.shape() == p("(1,1,1,1)"), "lambda(pi) = {}", a.shape());
    ensure!(b.shape() == p("(3,1)"), "lambda(pi^-1) = {}", b.shape());
    let fa = stanley_expand(&a).map_err(err)?;
    let fb = stanley_expand(&b).map_err(err)?;
    ensure!(fa == m(4, &[("(1,1,1,1)", 1)]), "F_pi = {fa}");
    let want = m(
        4,
        &[("(3,1)", 1), ("(2,2)", 1), ("(2,1,1)", 1), ("(1,1,1,1)", 1)],
    );
    ensure!(fb == want, "F_pi^-1 = {fb}");
    Ok(format!("F_pi = {fa}; F_pi^-1 = {fb}"))
}

fn criterion_3() -> Outcome {
    let y = z("[6,-3,8,-1]");
    ensure!(y.beta() == 2, "beta = {}", y.beta());
    let a = w("[3,0,5,2]");
    ensure!(
        y.alpha_min() == a && y.alpha_max() == a,
        "alpha_min {} alpha_max {}",
        y.alpha_min(),
        y.alpha_max()
    );
    ensure!(y.fpf_code() == [2, 0, 2, 0], "fpf code {:?}", y.fpf_code());
    ensure!(y.nu() == p("(2,2)"), "nu = {}", y.nu());
    ensure!(
        y.alpha_max().shape() == y.nu(),
        "lambda(alpha_max) = {}",
        y.alpha_max().shape()
    );
    ensure!(
        y.alpha_min().inverse().shape() == y.nu(),
        "lambda(alpha_min^-1)"
    );
    let f = FpfCache::new(4).fpf_stanley(&y).map_err(err)?;
    ensure!(
        *f == m(4, &[("(1,1,1,1)", 4), ("(2,1,1)", 2), ("(2,2)", 1)]),
        "F = {f}"
    );
    Ok(format!("beta 2, nu (2,2), F = {f}"))
}

fn criterion_4() -> Outcome {
    let y = z("[6,-3,8,-1]");
    let (minus, _) = pi_sets(&y, 1).map_err(err)?;
    let (_, plus) = pi_sets(&y, 6).map_err(err)?;
    let keys = |s: &affine_fpf::transition::CoverSet<FpfInvolution>| -> BTreeSet<FpfInvolution> {
        s.members.keys().cloned().collect()
    };
    ensure!(
        keys(&minus) == BTreeSet::from([z("[-5,-4,9,10]"), z("[4,-5,10,1]")]),
        "Pi- = {:?}",
        keys(&minus)
    );
    ensure!(
        keys(&plus) == BTreeSet::from([z("[7,8,-3,-2]"), z("[8,-1,6,-3]")]),
        "Pi+ = {:?}",
        keys(&plus)
    );
    let r = check_transition_fpf(&y, 1, &mut FpfCache::new(4)).map_err(err)?;
    let want = m(
        4,
        &[
            ("(1,1,1,1,1)", 12),
            ("(2,1,1,1)", 6),
            ("(2,2,1)", 3),
            ("(3,1,1)", 2),
            ("(3,2)", 1),
        ],
    );
    ensure!(
        r.equal && r.left == want,
        "left {} right {}",
        r.left,
        r.right
    );
    Ok(format!("both sides = {}", r.left))
}

fn criterion_5() -> Outcome {
    let mut checks = 0;
    let mut bounds = Vec::new();
    for (n, lmax) in [(4usize, 3u64), (2, 5)] {
        for sign in Sign::both() {
            let u = Universe::build(n, sign, lmax, 100_000).map_err(err)?;
            let h = |x: &FpfInvolution| x.height() as i64;
            let q1 = verify_qp1(&u, h).map_err(err)?;
            let q2 = verify_qp2(&u, h).map_err(err)?;
            ensure!(
                q1.passed(),
                "QP1 fails on U({n},{sign},{lmax}): {:?}",
                q1.counterexample
            );
            ensure!(
                q2.passed(),
                "QP2 fails on U({n},{sign},{lmax}): {:?}",
                q2.counterexample
            );
            let extra = 2 * n as i64 * (1 + u.max_spread());
            let missed = u.widened_cover_discrepancies(extra);
            ensure!(missed.is_empty(), "widened scan found covers {missed:?}");
            checks += q1.checks + q2.checks;
            bounds.push(q1.reflection_bound);
        }
    }
    Ok(format!(
        "{checks} axiom checks, reflection bounds {bounds:?}, widened scans complete"
    ))
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for (n, lmax) in [(4usize, 3u64), (6, 2)] {
        let mut cache = FpfCache::new(n);
        for sign in Sign::both() {
            let u = Universe::build(n, sign, lmax, 100_000).map_err(err)?;
            for y in u.elements() {
                let rec = cache.atoms(y).map_err(err)?;
                let closure = AtomPoset::by_closure(y, Alignment::Paired);
                ensure!(closure.atoms == *rec, "closure differs at {y}");
                ensure!(
                    AtomPoset::by_closure(y, Alignment::AllCyclic) == closure,
                    "alignments differ at {y}"
                );
                let (len, brute) = minimal_conjugators(y, y.height() + 1)
                    .ok_or_else(|| format!("no conjugator found for {y}"))?;
                ensure!(len == y.height(), "minimal conjugator length {len} at {y}");
                ensure!(brute == *rec, "brute-force atoms differ at {y}");
                let (lo, hi) = closure.bounds();
                let (lo, hi) = (lo.ok_or("no minimum")?, hi.ok_or("no maximum")?);
                ensure!(
                    closure.atoms[lo] == y.alpha_min(),
                    "alpha_min mismatch at {y}"
                );
                ensure!(
                    closure.atoms[hi] == y.alpha_max(),
                    "alpha_max mismatch at {y}"
                );
                ensure!(closure.is_antisymmetric(), "order not antisymmetric at {y}");
                ensure!(
                    closure.lattice_violation().is_none(),
                    "not a lattice at {y}"
                );
                count += 1;
            }
        }
    }
    Ok(format!(
        "{count} involutions agree across all three atom computations"
    ))
}

fn criterion_7() -> Outcome {
    let mut affine = 0;
    let mut expander = StanleyExpander::new(4);
    for a in ball(4, 4) {
        for r in 1..=4 {
            let rep = check_transition_affine(&a, r, &mut expander).map_err(err)?;
            ensure!(rep.equal, "affine transition fails at {a}, r = {r}");
            affine += 1;
        }
    }
    let mut fpf = 0;
    let mut cache = FpfCache::new(4);
    for sign in Sign::both() {
        let u = Universe::build(4, sign, 3, 100_000).map_err(err)?;
        for y in u.elements() {
            for q in 1..=4 {
                if q >= y.apply(q) {
                    continue;
                }
                let rep = check_transition_fpf(y, q, &mut cache).map_err(err)?;
                ensure!(rep.equal, "FPF transition fails at {y}, p = {q}");
                fpf += 1;
            }
        }
    }
    Ok(format!("{affine} affine and {fpf} FPF identities hold"))
}

fn random_element(
    variant: Variant,
    pool: &[FpfInvolution],
    picks: &[(usize, i64, i32)],
) -> ModuleElement {
    let terms = picks
        .iter()
        .map(|&(k, c, e)| (pool[k % pool.len()].clone(), LaurentPoly::monomial(c, e)));
    ModuleElement::from_terms(variant, 4, pool[0].sign(), terms).unwrap()
}

fn relation_failure(e: &ModuleElement) -> Option<String> {
    let n = 4i64;
    let vv = LaurentPoly::v_minus_v_inv();
    for s in 1..=n {
        let t = s % n + 1;
        let u = (s + 1) % n + 1;
        let mut quad = e.act(s).scaled(&vv);
        quad.add_scaled(e, &LaurentPoly::one());
        if e.act(s).act(s) != quad {
            return Some(format!("quadratic relation fails for s{s} on {e}"));
        }
        if e.act_word(&[s, t, s]) != e.act_word(&[t, s, t]) {
            return Some(format!("braid relation fails for s{s}, s{t} on {e}"));
        }
        if e.act_word(&[s, u]) != e.act_word(&[u, s]) {
            return Some(format!("commutation fails for s{s}, s{u} on {e}"));
        }
        if e.act_inverse(s).act(s) != *e {
            return Some(format!("inverse fails for s{s} on {e}"));
        }
    }
    None
}

fn criterion_8() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 64,
        failure_persistence: None,
        ..Config::default()
    });
    for sign in Sign::both() {
        let pool = affine_fpf::fpf::involutions_up_to(4, sign, 3, 10_000).map_err(err)?;
        for variant in Variant::both() {
            let strategy = proptest::collection::vec((0usize..64, -3i64..=3, -2i32..=2), 1..6);
            runner
                .run(&strategy, |picks| {
                    let e = random_element(variant, &pool, &picks);
                    prop_assert!(
                        relation_failure(&e).is_none(),
                        "{}",
                        relation_failure(&e).unwrap()
                    );
                    Ok(())
                })
                .map_err(err)?;
        }
    }
    let mut bars = 0;
    for sign in Sign::both() {
        let u = Universe::build(4, sign, 3, 10_000).map_err(err)?;
        for variant in Variant::both() {
            let mut bar = BarOperator::new(variant);
            for y in u.elements() {
                let d = bar.chain_discrepancies(y);
                ensure!(d.is_empty(), "bar depends on the chain at {y}: {d:?}");
                let b = bar.bar_basis(y);
                ensure!(
                    bar.bar(&b) == ModuleElement::basis(variant, y),
                    "bar is not an involution at {y}"
                );
                bars += 1;
            }
            let cb = CanonicalBasis::build(&u, variant).map_err(err)?;
            let bad = cb.verify(&u).map_err(err)?;
            ensure!(
                bad.is_empty(),
                "canonical basis fails on U(4,{sign},3) {variant} at {bad:?}"
            );
        }
    }
    let mut cells = 0;
    for sign in Sign::both() {
        let u = Universe::build(2, sign, 6, 1_000).map_err(err)?;
        cells += CanonicalBasis::build(&u, Variant::M)
            .map_err(err)?
            .w_graph()
            .cells()
            .len();
    }
    ensure!(cells == 2, "n = 2 has {cells} cells");
    Ok(format!(
        "relations hold on 256 random elements, {bars} bar checks, n = 2 has 2 cells"
    ))
}

fn criterion_9() -> Outcome {
    let mut omegas = 0;
    for n in 2..=4 {
        let mut expander = StanleyExpander::new(n);
        for a in ball(n, 5) {
            let f = expander.expand(&a).map_err(err)?;
            let g = expander.expand(&a.inverse()).map_err(err)?;
            ensure!(omega_plus(&f).map_err(err)? == g, "omega+ fails at {a}");
            omegas += 1;
        }
    }
    let mut tri = 0;
    let mut cache = FpfCache::new(4);
    for sign in Sign::both() {
        let u = Universe::build(4, sign, 4, 100_000).map_err(err)?;
        for y in u.elements() {
            let nu = y.nu();
            ensure!(
                y.alpha_max().shape() == nu,
                "nu differs from lambda(alpha_max) at {y}"
            );
            ensure!(
                y.alpha_min().inverse().shape() == nu,
                "nu differs from lambda(alpha_min^-1) at {y}"
            );
            let f = cache.fpf_stanley(y).map_err(err)?;
            ensure!(
                f.coeff(&nu) == 1,
                "coefficient of m_nu at {y} is {}",
                f.coeff(&nu)
            );
            for (lam, c) in f.terms() {
                ensure!(c > 0, "negative coefficient at {y}");
                ensure!(
                    *lam == nu || lam.dominance_leq(&nu).map_err(err)?,
                    "{lam} not below {nu} at {y}"
                );
            }
            let schur = to_schur_basis(&f).map_err(err)?;
            ensure!(
                schur.get(&nu) == Some(&1),
                "affine Schur coefficient at nu for {y}"
            );
            for (lam, c) in &schur {
                ensure!(*c > 0, "negative affine Schur coefficient at {y}");
                ensure!(
                    *lam == nu || lam.dominance_leq(&nu).map_err(err)?,
                    "affine Schur term {lam} at {y}"
                );
            }
            tri += 1;
        }
    }
    Ok(format!(
        "omega+ on {omegas} permutations, unitriangularity on {tri} involutions"
    ))
}

fn criterion_10() -> Outcome {
    let a = conjecture_reports(4, 4, ConjectureOptions::default()).map_err(err)?;
    let b = conjecture_reports(4, 4, ConjectureOptions::default()).map_err(err)?;
    ensure!(
        format!("{a:?}") == format!("{b:?}"),
        "reports differ between runs"
    );
    let falsified = a.omega_plus_verdict == Verdict::FalsifiedWithWitness;
    if falsified {
        ensure!(
            a.degrees.iter().any(|d| d.omega_plus_witness.is_some()),
            "falsified without a witness"
        );
    }
    let ranks: Vec<usize> = a.degrees.iter().map(|d| d.rank).collect();
    Ok(format!(
        "stable across runs, {}, ranks {ranks:?}",
        a.omega_plus_verdict.as_str()
    ))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "expansion of [3,0,5,2]",
            Duration::from_secs(1),
            criterion_1,
        ),
        (
            "codes, shapes and expansions of [-3,3,4,6]",
            Duration::from_secs(1),
            criterion_2,
        ),
        (
            "FPF data of [6,-3,8,-1]",
            Duration::from_secs(1),
            criterion_3,
        ),
        ("transition example", Duration::from_secs(10), criterion_4),
        (
            "QP1/QP2 exhaustive with widened scan",
            Duration::from_secs(300),
            criterion_5,
        ),
        ("atom oracles", Duration::from_secs(600), criterion_6),
        ("transition sweeps", Duration::from_secs(900), criterion_7),
        ("Hecke suite", Duration::from_secs(300), criterion_8),
        (
            "omega+ and unitriangularity sweeps",
            Duration::from_secs(600),
            criterion_9,
        ),
        (
            "conjecture tooling determinism",
            Duration::from_secs(600),
            criterion_10,
        ),
    ];
    let mut failed = 0;
    for (k, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > *limit => {
                Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}"))
            }
            r => r,
        };
        match result {
            Ok(msg) => println!("criterion {:>2}: PASS ({elapsed:.2?}) {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL ({elapsed:.2?}) {name}: {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
