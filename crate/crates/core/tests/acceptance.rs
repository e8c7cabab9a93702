//! Acceptance run: one PASS/FAIL line per criterion, then a summary.
//!
//! Some checks are stated as literal claims that the implementation shows to
//! be false (see the README). They are evaluated exactly as stated and print
//! FAIL with the observed value; such failures are tagged `[unattainable]`
//! and do not change the exit status. Any other failure exits with status 1.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{
    catalog, chain_alpha, g1, random_element, ring, roots_differ_by_integer, roots_ratio_is_power, sigma_pow,
    split_poly,
};
use crystalline::analysis::{classify, gwa_simplicity, simple_mult, simple_shift, subalgebra_member, Simplicity};
use crystalline::crystal::Validation;
use crystalline::doc::RingDoc;
use crystalline::expr::parse_coeff;
use crystalline::gwa::{example, example_names, ExampleSpec};
use crystalline::poly::{AffineAuto, LaurentPoly};
use crystalline::{Cocycle, Coeff, CrystalRing, FieldKind, GroupElt, Scalar};

/// Outcome of one check inside a criterion.
enum Miss {
    /// A requirement that should hold and does not.
    Hard(String),
    /// A literal claim shown to be false; reported, not fatal.
    Unattainable(String),
}

type Check = Result<(), Miss>;

type Criterion = (u32, &'static str, fn() -> Vec<Miss>);

fn hard(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(Miss::Hard(msg()))
    }
}

fn literal(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(Miss::Unattainable(msg()))
    }
}

/// Runs every check of a criterion (not stopping at the first miss).
fn all(checks: Vec<Box<dyn FnOnce() -> Check + '_>>) -> Vec<Miss> {
    checks
        .into_iter()
        .filter_map(|c| match catch_unwind(AssertUnwindSafe(c)) {
            Ok(r) => r.err(),
            Err(p) => {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Some(Miss::Hard(format!("panicked: {msg}")))
            }
        })
        .collect()
}

fn within(start: Instant, limit: Duration, what: &str) -> Check {
    let spent = start.elapsed();
    hard(spent < limit, || format!("{what} took {spent:.2?}, target < {limit:?}"))
}

fn gwa_a(r: &CrystalRing) -> Coeff {
    match r.cocycle() {
        Cocycle::Gwa(a) => a.clone(),
        _ => panic!("not a rank-one GWA"),
    }
}

fn from_params(name: &str, params: &[(&str, &str)]) -> CrystalRing {
    let p: Vec<(String, String)> = params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    ExampleSpec::from_params(name, &p).unwrap().build_unchecked().unwrap()
}

fn c1_identities() -> Vec<Miss> {
    let start = Instant::now();
    let mut checks: Vec<Box<dyn FnOnce() -> Check>> = Vec::new();
    for name in example_names() {
        checks.push(Box::new(move || {
            let r =
                example(&ExampleSpec::default_for(name).unwrap()).map_err(|e| Miss::Hard(format!("{name}: {e}")))?;
            hard(matches!(r.status(), Validation::Verified { radius: 4 }), || {
                format!("{name}: not verified")
            })?;
            let tf = r.verify_torsionfree(4);
            hard(tf.passed(), || format!("{name}: {tf}"))
        }));
    }
    checks.push(Box::new(|| {
        let r = ring("rollup");
        let rep = r.verify(0);
        hard(rep.passed() && rep.window_size == 3, || {
            format!("rollup exhaustive: {rep}")
        })
    }));
    checks.push(Box::new(move || {
        within(start, Duration::from_secs(10), "identity suite")
    }));
    all(checks)
}

fn c2_associativity() -> Vec<Miss> {
    let start = Instant::now();
    let mut checks: Vec<Box<dyn FnOnce() -> Check>> = Vec::new();
    for (name, r) in catalog() {
        checks.push(Box::new(move || {
            let mut rng = StdRng::seed_from_u64(2024);
            for i in 0..200 {
                let x = random_element(&r, &mut rng, 3, 2);
                let y = random_element(&r, &mut rng, 3, 2);
                let z = random_element(&r, &mut rng, 3, 2);
                let lhs = r.mul(&r.mul(&x, &y).unwrap(), &z).unwrap();
                let rhs = r.mul(&x, &r.mul(&y, &z).unwrap()).unwrap();
                hard(lhs == rhs, || format!("{name}: triple {i} ({x}, {y}, {z})"))?;
            }
            Ok(())
        }));
    }
    checks.push(Box::new(move || {
        within(start, Duration::from_secs(30), "associativity fuzz")
    }));
    all(checks)
}

fn c3_weyl() -> Vec<Miss> {
    let r = ring("weyl");
    let d = r.domain();
    let sigma = r.sigma(&g1(1));
    all(vec![
        Box::new(|| {
            for n in 1..=6i64 {
                let expect = (0..n).fold(d.one(), |acc, k| acc.mul(&parse_coeff(&format!("t - {k}"), d).unwrap()));
                let got = r.alpha_value(&g1(n), &g1(-n)).unwrap();
                hard(got == expect, || format!("α({n},−{n}) = {got}, expected {expect}"))?;
            }
            Ok(())
        }),
        Box::new(|| {
            for n in 2..=6i64 {
                for m in 1..n {
                    let expect = sigma_pow(&sigma, &r.alpha_value(&g1(m), &g1(-m)).unwrap(), n - m);
                    let got = r.alpha_value(&g1(n), &g1(-m)).unwrap();
                    hard(got == expect, || format!("α({n},−{m}) = {got}, expected {expect}"))?;
                }
            }
            Ok(())
        }),
    ])
}

fn c4_two_paths() -> Vec<Miss> {
    let rings = vec![
        ("weyl", ring("weyl")),
        ("qweyl", ring("qweyl")),
        ("qplane", from_params("qplane", &[("lambda", "2")])),
        ("bavula-bekkert", ring("bavula-bekkert")),
    ];
    all(rings
        .into_iter()
        .map(|(name, r)| -> Box<dyn FnOnce() -> Check> {
            Box::new(move || {
                let a = gwa_a(&r);
                let sigma = r.sigma(&g1(1));
                for n in -4..=4i64 {
                    for m in -4..=4i64 {
                        let rule = r.alpha_value(&g1(n), &g1(m)).unwrap();
                        let chain = chain_alpha(&sigma, &a, n, m);
                        hard(rule == chain, || {
                            format!("{name}: α({n},{m}) rule {rule} vs chain {chain}")
                        })?;
                    }
                }
                Ok(())
            })
        })
        .collect())
}

fn c5_cyclic_invariants() -> Vec<Miss> {
    let w = ring("weyl");
    let f = FieldKind::Rational;
    all(vec![
        Box::new(|| {
            for m in 1..=4i64 {
                let ci = from_params("cyclic-inv", &[("m", &m.to_string())]);
                let sub = AffineAuto::affine(Scalar::from_i64(m, f), Scalar::from_i64(-1, f)).unwrap();
                let got = w.alpha_value(&g1(-m), &g1(m)).unwrap().apply(&sub).unwrap();
                // m^m·t(t + 1/m)···(t + (m−1)/m), written out independently
                let mut expect = parse_coeff(&format!("{}", m.pow(m as u32)), w.domain()).unwrap();
                for k in 0..m {
                    expect = expect.mul(&parse_coeff(&format!("t + {k}/{m}"), w.domain()).unwrap());
                }
                hard(got == expect, || format!("m = {m}: {got} vs {expect}"))?;
                hard(gwa_a(&ci) == expect, || format!("m = {m}: catalog a = {}", gwa_a(&ci)))?;
            }
            Ok(())
        }),
        Box::new(|| {
            let wv = w.parse("y*x").unwrap().component(&g1(0)).unwrap().clone();
            let y2x2 = w.parse("y^2*x^2").unwrap().component(&g1(0)).unwrap().clone();
            let expect = wv.mul(&wv.add(&w.domain().one()));
            hard(y2x2 == expect, || format!("y²x² = {y2x2}, w(w+1) = {expect}"))
        }),
    ])
}

fn random_roots(rng: &mut StdRng) -> Vec<BigRational> {
    let n = rng.gen_range(1..=4);
    (0..n)
        .map(|_| {
            let den = rng.gen_range(1..=4i64);
            let num = rng.gen_range(-5 * den..=5 * den);
            BigRational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

fn c6_shift_simplicity() -> Vec<Miss> {
    all(vec![
        Box::new(|| {
            for lambda in ["0", "3/4", "2", "15/4", "6", "35/4"] {
                let v = gwa_simplicity(&from_params("usl2", &[("lambda", lambda)])).unwrap();
                hard(v.verdict == Simplicity::NotSimple, || format!("λ = {lambda}: {v}"))?;
            }
            for lambda in ["1", "1/2", "-1", "5"] {
                let v = gwa_simplicity(&from_params("usl2", &[("lambda", lambda)])).unwrap();
                hard(v.verdict == Simplicity::Simple, || format!("λ = {lambda}: {v}"))?;
            }
            Ok(())
        }),
        Box::new(|| {
            let mut rng = StdRng::seed_from_u64(6);
            let mut non_simple = 0;
            for _ in 0..150 {
                let roots = random_roots(&mut rng);
                let a = split_poly(&roots);
                let v = simple_shift(&a).unwrap();
                let expect = !roots_differ_by_integer(&roots);
                non_simple += usize::from(!expect);
                hard((v.verdict == Simplicity::Simple) == expect, || format!("a = {a}: {v}"))?;
            }
            hard(non_simple >= 10, || format!("only {non_simple} non-simple samples"))
        }),
    ])
}

fn c7_mult_simplicity() -> Vec<Miss> {
    all(vec![
        Box::new(|| {
            let mut rng = StdRng::seed_from_u64(7);
            let lambdas = [(2i64, 1i64), (3, 1), (1, 2)];
            let mut non_simple = 0;
            for i in 0..150 {
                let (p, q) = lambdas[i % 3];
                let roots = random_roots(&mut rng);
                let nonzero: Vec<BigRational> = roots.iter().filter(|r| !r.is_zero()).cloned().collect();
                let shift = rng.gen_range(-2..=2);
                let a = LaurentPoly::new(shift, split_poly(&roots));
                let v = simple_mult(&a, &Scalar::rational(p, q)).unwrap();
                let expect = !roots_ratio_is_power(&nonzero, &BigRational::new(p.into(), q.into()));
                non_simple += usize::from(!expect);
                hard((v.verdict == Simplicity::Simple) == expect, || {
                    format!("a = {a}, λ = {p}/{q}: {v}")
                })?;
            }
            hard(non_simple >= 10, || format!("only {non_simple} non-simple samples"))
        }),
        Box::new(|| {
            let f = FieldKind::Rational;
            let a = LaurentPoly::from_poly(split_poly(&[BigRational::from_integer(2.into())]));
            let v = simple_mult(&a, &Scalar::one(f)).unwrap();
            hard(
                v.verdict == Simplicity::NotSimple && v.to_string().contains("root of unity"),
                || format!("λ = 1: {v}"),
            )
        }),
    ])
}

fn c8_bavula_bekkert() -> Vec<Miss> {
    let r = ring("bavula-bekkert");
    let gens: Vec<Coeff> = [-3, -2, -1, 1, 2, 3]
        .iter()
        .map(|&n| r.alpha_value(&g1(n), &g1(-n)).unwrap())
        .collect();
    let sigma = r.sigma(&g1(1));
    all(vec![
        Box::new(|| {
            for k in 1..=4 {
                let expect = parse_coeff(&format!("27*(t - {k})*(t - {k} - 1/3)*(t - {k} - 2/3)"), r.domain()).unwrap();
                let got = sigma_pow(&sigma, &gwa_a(&r), k);
                hard(got == expect, || format!("σ^{k}(a) = {got}"))?;
            }
            Ok(())
        }),
        Box::new(|| {
            let target = gwa_a(&r).apply(&sigma).unwrap();
            let v = subalgebra_member(&target, &gens, 3).unwrap();
            literal(!v.is_member(), || {
                format!("σ(a) = α(1,−1) is itself a generator; reported {v}")
            })
        }),
    ])
}

fn c9_class3() -> Vec<Miss> {
    let r = ring("class3");
    all(vec![
        Box::new(|| {
            let f = FieldKind::RationalFunction;
            let mu = Scalar::q();
            let lambda = &mu * &mu;
            let lambda2 = &lambda * &lambda;
            let (c, d) = (Scalar::one(f), Scalar::zero(f));
            let one = Scalar::one(f);
            let a_prime = gwa_a(&r).scale(&-&mu);
            let lhs = a_prime.scale(&-&lambda2).add(&a_prime.apply(&r.sigma(&g1(1))).unwrap());
            let dom = r.domain();
            let rhs = dom
                .var(0)
                .unwrap()
                .scale(&(&(&(&one - &lambda) * &lambda) * &(&c - &d)))
                .add(&dom.constant(&(&one - &lambda2) * &(&c * &d)));
            hard(lhs == rhs, || format!("{lhs} vs {rhs}"))
        }),
        Box::new(|| {
            let rep = classify(&r, 4);
            hard(rep.class3.holds, || rep.to_string())
        }),
    ])
}

fn c10_general_type() -> Vec<Miss> {
    let r = ring("general-type");
    let sigma = r.sigma(&g1(1));
    let report = classify(&r, 4);
    let rep = &report;
    let r = &r;
    let sigma = &sigma;
    all(vec![
        Box::new(move || {
            let v = r.verify(5);
            hard(v.passed(), || v.to_string())
        }),
        Box::new(move || hard(!rep.class3.holds, || rep.to_string())),
        Box::new(move || {
            literal(!rep.class1.holds, || {
                format!(
                    "Class 1 holds: the shifts σⁿ(p), n ≠ 0, span all degree ≤ 2 polynomials ({})",
                    rep.class1.reason
                )
            })
        }),
        Box::new(move || {
            let mut gens = Vec::new();
            for n in -3..=3i64 {
                let base = r.alpha_value(&g1(n), &g1(-n)).unwrap();
                for k in -3..=3 {
                    gens.push(sigma_pow(sigma, &base, k));
                }
            }
            let target = r.alpha_value(&g1(1), &g1(1)).unwrap();
            let v = subalgebra_member(&target, &gens, 2).unwrap();
            hard(!v.is_member(), || format!("α(1,1): {v}"))
        }),
        Box::new(move || {
            let p = parse_coeff("t^2 + 1", r.domain()).unwrap();
            let target = p.apply(&sigma.inverse()).unwrap();
            let gens: Vec<Coeff> = r
                .group()
                .window(3)
                .iter()
                .flat_map(|g| r.group().window(3).into_iter().map(move |h| (g.clone(), h)))
                .map(|(g, h)| r.alpha_value(&g, &h).unwrap())
                .collect();
            let v = subalgebra_member(&target, &gens, 2).unwrap();
            literal(!v.is_member(), || {
                format!("σ⁻¹(p) = α(−1,−1) is a generator; reported {v}")
            })
        }),
    ])
}

fn c11_localization() -> Vec<Miss> {
    all(["weyl", "qplane"]
        .into_iter()
        .map(|name| -> Box<dyn FnOnce() -> Check> {
            Box::new(move || {
                let r = ring(name);
                for n in -3..=3 {
                    let g = g1(n);
                    let inv = r.u_inverse(&g).unwrap();
                    let u = r.localize(&r.u(&g)).unwrap();
                    let one = r.loc_one();
                    let ok =
                        r.loc_eq(&r.loc_mul(&u, &inv).unwrap(), &one) && r.loc_eq(&r.loc_mul(&inv, &u).unwrap(), &one);
                    hard(ok, || format!("{name}: u_{n} inverse"))?;
                }
                let mut rng = StdRng::seed_from_u64(11);
                for i in 0..50 {
                    let x = random_element(&r, &mut rng, 3, 2);
                    let k = rng.gen_range(1..=2);
                    let factors: Vec<(GroupElt, GroupElt)> = (0..k)
                        .map(|_| (g1(rng.gen_range(-2..=2)), g1(rng.gen_range(-2..=2))))
                        .collect();
                    let s = r.denominator(&factors).unwrap();
                    let w = r.ore_left_witness(&x, &s).unwrap();
                    hard(r.check_ore(&x, &s, &w).unwrap(), || {
                        format!("{name}: pair {i}, x = {x}")
                    })?;
                }
                Ok(())
            })
        })
        .collect())
}

fn crystal(args: &[&str]) -> (Option<i32>, String) {
    let bin = Path::new(env!("CARGO_BIN_EXE_crystal"));
    let o = Command::new(bin).args(args).output().expect("binary runs");
    (o.status.code(), String::from_utf8_lossy(&o.stdout).into_owned())
}

fn c12_cli() -> Vec<Miss> {
    let dir = tempfile::TempDir::new().unwrap();
    let weyl = dir.path().join("weyl.json");
    let usl2 = dir.path().join("usl2_lambda0.json");
    let (w, u) = (weyl.to_str().unwrap().to_string(), usl2.to_str().unwrap().to_string());
    let made = crystal(&["example", "weyl", "-o", &w]).0 == Some(0)
        && crystal(&["example", "usl2", "lambda=0", "-o", &u]).0 == Some(0);
    let (w, u) = (&w, &u);
    all(vec![
        Box::new(move || hard(made, || "example documents were not written".into())),
        Box::new(move || {
            let (code, out) = crystal(&["mul", "-r", w, "y*x*y*x"]);
            literal(code == Some(0) && out.trim_end() == "(t^2 + 3*t + 2)*u[-2]", || {
                format!(
                    "mul y*x*y*x printed {:?} (exit {code:?}); (yx)² = (t+1)² lies in degree 0",
                    out.trim_end()
                )
            })
        }),
        Box::new(move || {
            let (code, out) = crystal(&["mul", "-r", w, "y*x*y*x"]);
            hard(code == Some(0) && out.trim_end() == "(t^2 + 2*t + 1)*u[0]", || {
                format!("mul printed {out:?}")
            })
        }),
        Box::new(move || {
            let (code, out) = crystal(&["verify", "-r", w, "--window", "4"]);
            hard(code == Some(0), || format!("verify exit {code:?}: {out}"))
        }),
        Box::new(move || {
            let (code, out) = crystal(&["simple", "-r", u]);
            hard(code == Some(3) && out.starts_with("NOT SIMPLE (witness i=1"), || {
                format!("simple exit {code:?}: {out}")
            })
        }),
        Box::new(move || {
            for name in example_names() {
                let first = dir.path().join(format!("{name}.rt.json"));
                let (code, _) = crystal(&["example", name, "-o", first.to_str().unwrap()]);
                hard(code == Some(0), || format!("{name}: example exit {code:?}"))?;
                let text = std::fs::read_to_string(&first).unwrap();
                let second = dir.path().join(format!("{name}.rt2.json"));
                RingDoc::load(&first).unwrap().save(&second).unwrap();
                let again = std::fs::read_to_string(&second).unwrap();
                hard(again == text, || format!("{name}: document changed after load/save"))?;
            }
            Ok(())
        }),
    ])
}

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "identity suite on all catalog rings", c1_identities),
        (2, "associativity fuzz", c2_associativity),
        (3, "Weyl regression", c3_weyl),
        (4, "GWA two-path coherence", c4_two_paths),
        (5, "cyclic-invariant embedding", c5_cyclic_invariants),
        (6, "shift simplicity boundary and oracle", c6_shift_simplicity),
        (7, "multiplicative simplicity oracle", c7_mult_simplicity),
        (8, "Bavula-Bekkert shifts and non-membership", c8_bavula_bekkert),
        (9, "class-3 identity and classification", c9_class3),
        (10, "general-type classification and witnesses", c10_general_type),
        (11, "localization inverses and Ore witnesses", c11_localization),
        (12, "CLI end-to-end and document round-trip", c12_cli),
    ];
    let (mut passed, mut unattainable, mut failed) = (0, 0, 0);
    for (n, title, run) in criteria {
        let start = Instant::now();
        let misses = run();
        let spent = start.elapsed();
        let hard_misses: Vec<&str> = misses
            .iter()
            .filter_map(|m| match m {
                Miss::Hard(s) => Some(s.as_str()),
                Miss::Unattainable(_) => None,
            })
            .collect();
        let literal_misses: Vec<&str> = misses
            .iter()
            .filter_map(|m| match m {
                Miss::Unattainable(s) => Some(s.as_str()),
                Miss::Hard(_) => None,
            })
            .collect();
        if misses.is_empty() {
            passed += 1;
            println!("PASS {n:>2} {title} ({spent:.2?})");
        } else if hard_misses.is_empty() {
            unattainable += 1;
            println!("FAIL {n:>2} {title} [unattainable]: {}", literal_misses.join("; "));
        } else {
            failed += 1;
            let all: Vec<&str> = hard_misses.iter().chain(literal_misses.iter()).copied().collect();
            println!("FAIL {n:>2} {title}: {}", all.join("; "));
        }
    }
    println!(
        "acceptance: {passed} passed, {} failed ({unattainable} unattainable as stated, {failed} unexpected)",
        unattainable + failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
