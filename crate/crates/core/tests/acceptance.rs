//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use houghton::brown::{
    infinite_obstruction, le, mcompose, q_fixed_vertex, stabilizer_order, upper_bound,
    InjectiveMonoidMap, TranslationWord,
};
use houghton::centralizer::{
    centralizer_finite, centralizer_infinite, centralizer_vc, centralizes, decompose_centralizing,
    gamma, quasi_ufp0_witnesses, FixedFactor,
};
use houghton::oracle::{
    box_centralizing_elements, brute_conjugate, brute_stabilizer_order, random_box_element,
    random_finite_subgroup, random_infinite_element, verify, PointBox,
};
use houghton::{conjugator, Element, Order, RayPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORDER_LAW_CASES: usize = 200;
const ORDER_LAW_BUDGET: Duration = Duration::from_secs(120);
const CONJUGACY_PAIRS: usize = 500;
const GAMMA_WINDOW: usize = 10;
const POSET_PAIRS: usize = 1000;
const FIXED_VERTEX_GROUPS: usize = 50;
const MAX_STABILIZER_DEFICIT: u64 = 5;
const WITNESS_COUNT: usize = 10;
const WITNESS_BUDGET: Duration = Duration::from_secs(5);
const VC_RANDOM_W: usize = 20;

fn pt(i: usize, x: usize) -> RayPoint {
    RayPoint::new(i, x)
}

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            summary: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn wreath_order_law() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    match verify(ORDER_LAW_CASES, 20_240_601, 3) {
        Ok(reports) => {
            let matched = reports.iter().filter(|r| r.matched).count();
            for r in reports.iter().filter(|r| !r.matched) {
                out.failures.push(format!(
                    "case {}: brute {} predicted {}",
                    r.case, r.brute, r.predicted
                ));
            }
            let elapsed = start.elapsed();
            out.check(elapsed < ORDER_LAW_BUDGET, || format!("took {elapsed:?}"));
            out.check(reports.len() >= ORDER_LAW_CASES, || "too few cases".into());
            out.summary = format!(
                "{matched}/{} exact matches in {:.1}s (budget {}s)",
                reports.len(),
                elapsed.as_secs_f64(),
                ORDER_LAW_BUDGET.as_secs()
            );
        }
        Err(e) => out.failures.push(format!("oracle run failed: {e}")),
    }
    out
}

fn cycle_type_conjugacy() -> Outcome {
    let mut out = Outcome::new();
    let bx = PointBox::new(4, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut conjugate = 0;
    for case in 0..CONJUGACY_PAIRS {
        let q1 = random_box_element(&mut rng, &bx, bx.len());
        let q2 = if rng.gen_bool(0.5) {
            let h = random_box_element(&mut rng, &bx, bx.len());
            q1.conjugate_by(&h).unwrap()
        } else {
            random_box_element(&mut rng, &bx, bx.len())
        };
        let brute = brute_conjugate(&q1, &q2, &bx).unwrap();
        let same_type = q1.cycle_type().unwrap() == q2.cycle_type().unwrap();
        match conjugator(&q1, &q2).unwrap() {
            None => out.check(!brute && !same_type, || {
                format!("pair {case}: NONE but brute {brute}")
            }),
            Some(h) => {
                conjugate += 1;
                out.check(brute && same_type, || {
                    format!("pair {case}: h returned but brute false")
                });
                out.check(q1.conjugate_by(&h).unwrap() == q2, || {
                    format!("pair {case}: h q1 h^-1 != q2")
                });
            }
        }
    }
    out.summary = format!(
        "{CONJUGACY_PAIRS} pairs in an 8-point box, {conjugate} conjugate, {} disagreements",
        out.failures.len()
    );
    out
}

fn battery() -> Vec<Element> {
    let mut list = Vec::new();
    for n in 2..=5 {
        let g = Element::ray_shift(n, 2, 1).unwrap();
        list.push(g.clone());
        list.push(g.pow(2));
        list.push(g.pow(-3));
        if n >= 3 {
            let t = Element::transposition(n, pt(0, 3), pt(1, 3)).unwrap();
            list.push(g.compose(&t).unwrap());
            list.push(Element::ray_shift(n, 3, 1).unwrap().compose(&g).unwrap());
        }
        if n >= 4 {
            let h = Element::ray_shift(n, 4, 3).unwrap();
            list.push(g.compose(&h).unwrap());
            let c = Element::from_cycles(n, &[vec![pt(0, 4), pt(1, 4), pt(2, 4)]]).unwrap();
            list.push(g.pow(2).compose(&c).unwrap());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(300 + n as u64);
        for _ in 0..8 {
            list.push(random_infinite_element(&mut rng, n, 3));
        }
    }
    list
}

fn infinite_order_invariants() -> Outcome {
    let mut out = Outcome::new();
    let mut brute_found = 0usize;
    let elements = battery();
    for (i, q) in elements.iter().enumerate() {
        let n = q.arity();
        let desc = match centralizer_infinite(q) {
            Ok(d) => d,
            Err(e) => {
                out.failures.push(format!("battery {i}: {e}"));
                continue;
            }
        };
        let k = desc.houghton_rank().unwrap_or(0);
        let r = desc.free_rank();
        let cap = match desc.fixed {
            FixedFactor::Houghton(_) => (n - k) / 2,
            FixedFactor::FiniteSymmetric { .. } => n / 2,
        };
        out.check(k <= n - 2 && (1..=cap).contains(&r), || {
            format!("battery {i}: n={n} k={k} r={r}")
        });
        let factors = desc.factor_generators().unwrap();
        for (a, fa) in factors.iter().enumerate() {
            for x in fa {
                out.check(centralizes(x, q), || {
                    format!("battery {i}: generator does not centralize")
                });
                for fb in &factors[a + 1..] {
                    for y in fb {
                        out.check(x.compose(y).unwrap() == y.compose(x).unwrap(), || {
                            format!("battery {i}: factors {a} and later do not commute")
                        });
                    }
                }
            }
        }
        if let Some(free) = &desc.free {
            for x in &free.generators {
                out.check(x.order() == Order::Infinite, || {
                    format!("battery {i}: free generator of finite order")
                });
            }
        }
        let depth = if n <= 3 { 4 } else { 3 };
        let found = box_centralizing_elements(q, &PointBox::new(depth, n).unwrap(), 720).unwrap();
        for c in &found {
            brute_found += 1;
            match decompose_centralizing(c, q) {
                Ok(cd) => {
                    out.check(cd.exponents.iter().all(|&e| e == 0), || {
                        format!("battery {i}: box element with free exponent")
                    });
                    out.check(cd.reconstruct().ok().as_ref() == Some(c), || {
                        format!("battery {i}: reconstruction differs")
                    });
                }
                Err(e) => out
                    .failures
                    .push(format!("battery {i}: decompose failed: {e}")),
            }
        }
        // the free generators themselves decompose to unit vectors
        if let Some(free) = &desc.free {
            for (j, x) in free.generators.iter().enumerate() {
                let cd = decompose_centralizing(x, q).unwrap();
                let unit: Vec<i64> = (0..free.generators.len())
                    .map(|l| (l == j) as i64)
                    .collect();
                out.check(
                    cd.exponents == unit && cd.reconstruct().unwrap() == *x,
                    || {
                        format!(
                            "battery {i}: free generator {j} does not decompose to a unit vector"
                        )
                    },
                );
            }
        }
    }
    out.summary = format!(
        "{} elements over n=2..5, {brute_found} box-supported centralizing elements decomposed",
        elements.len()
    );
    out
}

fn gamma_soundness() -> Outcome {
    let mut out = Outcome::new();
    let mut edges = 0;
    for (i, q) in battery().iter().enumerate() {
        let inv = q.invert();
        let gr = gamma(q).unwrap();
        for e in &gr.edges {
            edges += 1;
            let (mut fwd, mut back) = (e.witness, e.witness);
            for m in 1..=e.threshold + GAMMA_WINDOW {
                fwd = q.apply(fwd);
                back = inv.apply(back);
                if m >= e.threshold {
                    out.check(fwd.ray == e.to && back.ray == e.from, || {
                        format!("battery {i}: edge {}--{} fails at m={m}", e.from, e.to)
                    });
                }
            }
            out.check(q.shift_on(e.from) < 0 && q.shift_on(e.to) > 0, || {
                format!("battery {i}: edge endpoints have wrong signs")
            });
        }
    }
    for m in 1..=4 {
        let n = 2 * m;
        let mut q = Element::identity(n).unwrap();
        for j in 0..m {
            q = q
                .compose(&Element::ray_shift(n, 2 * j + 2, 2 * j + 1).unwrap())
                .unwrap();
        }
        let c = gamma(&q).unwrap().components.len();
        out.check(c == m, || {
            format!("{m} disjoint copies gave {c} components")
        });
    }
    out.summary = format!(
        "{edges} edge witnesses checked over a window of {GAMMA_WINDOW}; disjoint copies m=1..4 give m components"
    );
    out
}

fn random_group_element(rng: &mut ChaCha8Rng, n: usize) -> Element {
    let bx = PointBox::new(3, n).unwrap();
    if rng.gen_bool(0.5) {
        random_box_element(rng, &bx, 4)
    } else {
        random_infinite_element(rng, n, 3)
    }
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_degree: u64) -> TranslationWord {
    let mut d = vec![0u64; n];
    for _ in 0..rng.gen_range(0..=max_degree) {
        d[rng.gen_range(0..n)] += 1;
    }
    TranslationWord(d)
}

fn brown_poset() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut comparable = 0;
    let mut obstructed = 0;
    for case in 0..POSET_PAIRS {
        let n = rng.gen_range(2..=3);
        let base: InjectiveMonoidMap = (&random_group_element(&mut rng, n)).into();
        let other: InjectiveMonoidMap = if rng.gen_bool(0.3) {
            (&random_group_element(&mut rng, n)).into()
        } else {
            base.clone()
        };
        let a = mcompose(&random_word(&mut rng, n, 2).to_map(), &base).unwrap();
        let b = mcompose(&random_word(&mut rng, n, 2).to_map(), &other).unwrap();
        let c = mcompose(&random_word(&mut rng, n, 2).to_map(), &b).unwrap();
        out.check(le(&a, &a) == Some(TranslationWord::zero(n)), || {
            format!("pair {case}: not reflexive")
        });
        let ab = le(&a, &b);
        let ba = le(&b, &a);
        if ab.is_some() {
            comparable += 1;
        }
        out.check(!(ab.is_some() && ba.is_some()) || a == b, || {
            format!("pair {case}: not antisymmetric")
        });
        if let (Some(x), Some(y)) = (&ab, le(&b, &c)) {
            out.check(le(&a, &c) == Some(x.concat(&y)), || {
                format!("pair {case}: not transitive")
            });
        }
        let h = random_group_element(&mut rng, n);
        if ab.is_some() {
            out.check(
                le(&a.act(&h).unwrap(), &b.act(&h).unwrap()).is_some(),
                || format!("pair {case}: order not preserved by the right action"),
            );
        }
        if !h.phi().is_zero() {
            obstructed += 1;
            out.check(infinite_obstruction(&h), || {
                format!("pair {case}: obstruction missed")
            });
            out.check(a.act(&h).unwrap() != a && b.act(&h).unwrap() != b, || {
                format!("pair {case}: element with nonzero translation fixes a vertex")
            });
        }
    }

    for case in 0..FIXED_VERTEX_GROUPS {
        let n = 2 + case % 2;
        let bx = PointBox::new(3, n).unwrap();
        let q = random_finite_subgroup(&mut rng, &bx);
        let v = q_fixed_vertex(&q);
        let fixed_by_all =
            |x: &InjectiveMonoidMap| q.elements().iter().all(|h| x.act(h).unwrap() == *x);
        out.check(fixed_by_all(&v), || {
            format!("group {case}: fixed vertex moved")
        });
        let desc = centralizer_finite(&q).unwrap();
        let cgens: Vec<Element> = desc
            .factor_generators()
            .unwrap()
            .into_iter()
            .flatten()
            .collect();
        let fixed_vertex = |rng: &mut ChaCha8Rng| {
            let mut x = mcompose(&random_word(rng, n, 3).to_map(), &v).unwrap();
            if !cgens.is_empty() && rng.gen_bool(0.7) {
                let c = &cgens[rng.gen_range(0..cgens.len())];
                x = x.act(c).unwrap();
            }
            x
        };
        for _ in 0..4 {
            let (m, k) = (fixed_vertex(&mut rng), fixed_vertex(&mut rng));
            out.check(fixed_by_all(&m) && fixed_by_all(&k), || {
                format!("group {case}: sample vertex not fixed")
            });
            match upper_bound(&m, &k, &q) {
                Ok(u) => {
                    out.check(le(&m, &u).is_some() && le(&k, &u).is_some(), || {
                        format!("group {case}: upper bound does not dominate")
                    });
                    out.check(fixed_by_all(&u), || {
                        format!("group {case}: upper bound not fixed")
                    });
                }
                Err(e) => out
                    .failures
                    .push(format!("group {case}: upper_bound failed: {e}")),
            }
        }
    }

    let mut stab_checks = 0;
    for deficit in 0..=MAX_STABILIZER_DEFICIT {
        for _ in 0..6 {
            let n = rng.gen_range(2..=3);
            let mut d = vec![0u64; n];
            for _ in 0..deficit {
                d[rng.gen_range(0..n)] += 1;
            }
            let h = random_group_element(&mut rng, n);
            let alpha = mcompose(&TranslationWord(d).to_map(), &(&h).into()).unwrap();
            let brute = brute_stabilizer_order(&alpha).unwrap();
            out.check(stabilizer_order(&alpha).unwrap() == brute, || {
                format!("deficit {deficit}: stabilizer order differs from brute force {brute}")
            });
            stab_checks += 1;
        }
    }
    out.summary = format!(
        "{POSET_PAIRS} vertex pairs ({comparable} comparable, {obstructed} obstructions), {FIXED_VERTEX_GROUPS} subgroups, {stab_checks} stabilizers with deficit <= {MAX_STABILIZER_DEFICIT}"
    );
    out
}

fn quasi_ufp0_family() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let groups = quasi_ufp0_witnesses(2, WITNESS_COUNT).unwrap();
    let gens: Vec<&Element> = groups.iter().map(|g| &g.generators()[0]).collect();
    let mut pairs = 0;
    for (i, a) in gens.iter().enumerate() {
        out.check(
            groups[i].order() == 2 && a.order() == Order::Finite(2),
            || format!("witness {i} does not have order 2"),
        );
        for b in &gens[i + 1..] {
            pairs += 1;
            out.check(conjugator(a, b).unwrap().is_none(), || {
                format!("witness {i} conjugate to a later one")
            });
        }
    }
    let elapsed = start.elapsed();
    out.check(pairs == WITNESS_COUNT * (WITNESS_COUNT - 1) / 2, || {
        format!("{pairs} pairs")
    });
    out.check(elapsed < WITNESS_BUDGET, || format!("took {elapsed:?}"));
    out.summary = format!(
        "{pairs} pairs non-conjugate, all of order 2, {:.3}s (budget {}s)",
        elapsed.as_secs_f64(),
        WITNESS_BUDGET.as_secs()
    );
    out
}

fn vc_centralizer() -> Outcome {
    let mut out = Outcome::new();
    let swap = Element::transposition(3, pt(0, 3), pt(1, 3)).unwrap();
    let w = Element::ray_shift(3, 2, 1).unwrap();
    match centralizer_vc(std::slice::from_ref(&swap), &w) {
        Ok(d) => {
            out.check(d.houghton_rank() == Some(1), || {
                format!("houghton_rank {:?}", d.houghton_rank())
            });
            out.check(d.free_rank() == 1, || {
                format!("free_rank {}", d.free_rank())
            });
            out.check(d.wreath.len() == 1 && d.wreath[0].order() == 2, || {
                format!(
                    "wreath factors {:?}",
                    d.wreath.iter().map(|w| w.order()).collect::<Vec<_>>()
                )
            });
        }
        Err(e) => out.failures.push(format!("worked example failed: {e}")),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for i in 0..VC_RANDOM_W {
        let n = rng.gen_range(2..=4);
        let w = random_infinite_element(&mut rng, n, 3);
        let a = centralizer_vc(&[], &w).map(|d| d.to_json());
        let b = centralizer_infinite(&w).map(|d| d.to_json());
        out.check(a.is_ok() && a == b, || {
            format!("random w {i}: reduction differs")
        });
    }
    out.summary =
        format!("worked example is H_1 x Z x Z_2; reduction holds on {VC_RANDOM_W} random w");
    out
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("wreath-decomposition order law", wreath_order_law),
        ("cycle-type conjugacy", cycle_type_conjugacy),
        (
            "infinite-order decomposition invariants",
            infinite_order_invariants,
        ),
        ("gamma-graph soundness", gamma_soundness),
        ("Brown poset", brown_poset),
        ("quasi-uFP0 witness family", quasi_ufp0_family),
        ("VC centralizer", vc_centralizer),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let status = if outcome.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!("{status} [{}] {name}: {}", k + 1, outcome.summary);
        for f in outcome.failures.iter().take(5) {
            println!("       {f}");
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
