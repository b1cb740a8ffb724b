//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines reach the terminal. The process
//! fails if any criterion fails, except those listed in `KNOWN_UNATTAINABLE`, whose
//! failure must match the recorded reason exactly.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use negabent_core::boolfn::Flavor;
use negabent_core::constructions::{
    build_gbent_from_am, inverse_z2k_bent, linear_family_hypothesis, linear_family_not_gbent_check,
    monomial_involution_family, trace_monomial_hs, zero_hs,
};
use negabent_core::field::sigma_cocycle_check;
use negabent_core::linalg::is_independent;
use negabent_core::reference;
use negabent_core::star::{desarguesian_spread, preimage_partition, z2k_bent_from_partition, GroupElement};
use negabent_core::vect::construct_kppp_bent_negabent;
use negabent_core::{BoolFn, ConstructionError, CycInt, Field, GenFn, ShiftDirection, StarGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot hold as stated, with the failure detail they must produce.
const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[(8, "no independent 4-set in F_8; no independent 5-set in F_16")];

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

fn check(cond: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass: cond, detail: detail.into() }
}

fn f8() -> Field {
    Field::with_poly(3, 0b1011).unwrap()
}

fn small_alphas(f: &Field) -> [u32; 3] {
    [f.exp(1), f.exp(4), f.exp(6)]
}

fn trace_h_example() -> GenFn {
    let f = f8();
    let alphas = small_alphas(&f);
    let triple = monomial_involution_family(&f, 6, alphas).unwrap();
    let a4 = alphas[0] ^ alphas[1] ^ alphas[2];
    let hs = trace_monomial_hs(&f, [alphas[0], alphas[1], alphas[2], a4], 6);
    build_gbent_from_am(&f, &triple, &hs).unwrap()
}

fn spread_z4(m: u32) -> GenFn {
    let field = Field::new(m).unwrap();
    let big = Field::new(2 * m).unwrap();
    z2k_bent_from_partition(&desarguesian_spread(&field), m, Flavor::Univariate(big)).unwrap()
}

fn zero_h_example() -> Outcome {
    let f = f8();
    let triple = match monomial_involution_family(&f, 6, small_alphas(&f)) {
        Ok(t) => t,
        Err(e) => return fail(format!("family: {e}")),
    };
    let g = match build_gbent_from_am(&f, &triple, &zero_hs(&f)) {
        Ok(g) => g,
        Err(e) => return fail(format!("build: {e}")),
    };
    let row = g.h_row(1);
    let flat = row.iter().filter(|v| v.norm_sq_integer() == Some(64)).count();
    check(row.len() == 64 && flat == 64, format!("|H(1,u)|^2 = 64 at {flat}/64 points"))
}

fn trace_h_example_values() -> Outcome {
    let g = trace_h_example();
    let allowed: Vec<CycInt> = (0..8)
        .map(|j| CycInt::constant(3, 8).try_mul(&CycInt::root_power(3, j)).unwrap())
        .collect();
    let mut seen = BTreeSet::new();
    for c in 1..8 {
        for v in g.h_row(c) {
            match allowed.iter().position(|a| *a == v) {
                Some(p) => {
                    seen.insert(p);
                }
                None => return fail(format!("value {} outside {{8 zeta_8^j}}", v.to_text())),
            }
        }
    }
    check(g.is_z2k_bent(), format!("Z_8-bent; {} distinct values, all of the form 8 zeta_8^j", seen.len()))
}

fn inverse_family() -> Outcome {
    for (m, k) in [(3u32, 2u32), (3, 3), (4, 2), (5, 2)] {
        let field = Field::new(m).unwrap();
        let alphas: Vec<u32> = (0..k).map(|i| field.exp(i as u64)).collect();
        match inverse_z2k_bent(&field, &alphas) {
            Ok(g) if g.is_z2k_bent() => {}
            Ok(_) => return fail(format!("(m,k) = ({m},{k}) not Z_2^k-bent")),
            Err(e) => return fail(format!("(m,k) = ({m},{k}): {e}")),
        }
    }
    pass("(3,2) (3,3) (4,2) (5,2) all Z_2^k-bent")
}

fn triangle() -> Outcome {
    let field = Field::new(4).unwrap();
    let fl = Flavor::Univariate(field.clone());
    let group = StarGroup::zk(&field, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut suite: Vec<GenFn> = Vec::new();
    for i in 0..500 {
        let f = if i % 2 == 0 {
            GenFn::from_fn(4, 2, fl.clone(), |_| rng.gen_range(0..4)).unwrap()
        } else {
            // quadratic-plus-linear components hit both verdicts
            let cs: Vec<(u32, u32, u32)> = (0..2).map(|_| (rng.gen_range(0..16), rng.gen_range(0..16), rng.gen_range(0..16))).collect();
            GenFn::from_fn(4, 2, fl.clone(), |x| {
                cs.iter().enumerate().fold(0, |acc, (j, &(a, b, c))| {
                    let t = field.trace(field.mul(a, field.pow(x, 3)))
                        ^ field.trace(field.mul(b, field.pow(x, 5)))
                        ^ field.trace(field.mul(c, x));
                    acc | u32::from(t) << j
                })
            })
            .unwrap()
        };
        suite.push(f);
    }
    // Z_4-bent seeds, their translates and linear twists f(x + a) + 2 Tr(bx), and the nega shifts of all of them
    let inv = inverse_z2k_bent(&Field::new(2).unwrap(), &[1, 2]).unwrap().with_flavor(fl.clone()).unwrap();
    for seed in [spread_z4(2), inv] {
        for a in [0u32, 3, 9] {
            for b in 0..16 {
                let g = GenFn::from_fn(4, 2, fl.clone(), |x| seed.get(x ^ a) + 2 * u32::from(field.trace(field.mul(b, x)))).unwrap();
                suite.push(g.nega_shift(ShiftDirection::ToNega).unwrap());
                suite.push(g);
            }
        }
    }
    suite.push(GenFn::from_fn(4, 2, fl.clone(), |_| 0).unwrap());
    for b in [1u32, 7, 12] {
        suite.push(GenFn::from_fn(4, 2, fl.clone(), |x| 2 * u32::from(field.trace(field.mul(b, x)))).unwrap());
    }
    let mut yes = 0;
    for (i, f) in suite.iter().enumerate() {
        let spectrum = f.is_nega_z2k_bent().unwrap();
        let derivative = f.nega_derivative_balanced().unwrap();
        let graph = group.graph_of_gen(f).unwrap();
        let in_n = |g: GroupElement| g.x == 0;
        let params = group.rds_parameters(&graph, &in_n);
        let rds = group.is_rds(&graph, in_n) && params.map(|(k, n, l)| (group.order() as u64 / n, n, k, l)) == Some((16, 4, 16, 4));
        if spectrum != derivative || derivative != rds {
            return fail(format!("function #{i}: spectrum {spectrum}, derivative {derivative}, rds {rds}"));
        }
        yes += spectrum as usize;
    }
    check(yes > 0, format!("{} functions agree, {yes} nega-Z_4-bent", suite.len()))
}

fn shifts() -> Outcome {
    let big = Field::new(6).unwrap();
    let fixtures = [
        ("spread n=4 k=2", spread_z4(2)),
        ("trace-h example n=6 k=3", trace_h_example().with_flavor(Flavor::Univariate(big)).unwrap()),
    ];
    for (name, f) in fixtures {
        if !f.is_z2k_bent() {
            return fail(format!("{name}: fixture not Z_2^k-bent"));
        }
        let nega = f.nega_shift(ShiftDirection::ToNega).unwrap();
        if !nega.is_nega_z2k_bent().unwrap() {
            return fail(format!("{name}: shift not nega-Z_2^k-bent"));
        }
        let back = nega.nega_shift(ShiftDirection::ToPlain).unwrap();
        if back != f || !back.is_z2k_bent() {
            return fail(format!("{name}: round trip differs"));
        }
    }
    pass("both fixtures shift to nega-Z_2^k-bent and return exactly")
}

fn characters() -> Outcome {
    let field = Field::new(3).unwrap();
    for k in [2u32, 3] {
        let g = StarGroup::zk(&field, k).unwrap();
        let els: Vec<GroupElement> = g.elements().collect();
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for chi in g.characters() {
            count += 1;
            let values: Vec<CycInt> = els.iter().map(|&a| g.char_eval(chi, a)).collect();
            for (i, &a) in els.iter().enumerate() {
                for (j, &b) in els.iter().enumerate() {
                    if g.char_eval(chi, g.add(a, b)) != &values[i] * &values[j] {
                        return fail(format!("k={k}: character ({}, {}) not multiplicative", chi.u, chi.c));
                    }
                }
            }
            seen.insert(values);
        }
        if count != 1 << (3 + k) || seen.len() != count {
            return fail(format!("k={k}: {} distinct of {count}", seen.len()));
        }
    }
    pass("n=3: 32 and 64 characters, multiplicative and distinct")
}

fn group_structure() -> Outcome {
    for n in [3u32, 4] {
        let field = Field::new(n).unwrap();
        for k in [2u32, 3] {
            let g = StarGroup::zk(&field, k).unwrap();
            let census = g.order_census();
            let small: usize = census.iter().filter(|(&o, _)| o <= 2).map(|(_, c)| c).sum();
            let ord = g.element_order(GroupElement::new(0, 1));
            if small != 1 << (n + 1) || ord != 1 << k {
                return fail(format!("n={n} k={k}: {small} elements of order <= 2, order((0,1)) = {ord}"));
            }
        }
        // Z_2^(n-1) x Z_4: 2^n elements of order <= 2 (2^(n) - 1 involutions) and 2^n of order 4
        let census = StarGroup::zk(&field, 1).unwrap().order_census();
        let expect = [(1u64, 1usize), (2, (1 << n) - 1), (4, 1 << n)];
        if census.into_iter().collect::<Vec<_>>() != expect {
            return fail(format!("n={n} k=1: census differs from Z_2^(n-1) x Z_4"));
        }
    }
    pass("censuses match at n=3,4")
}

/// Smallest independent `size`-subset of `F_{2^m}`, by encoding order.
fn independent_set(m: u32, size: usize) -> Option<Vec<u32>> {
    fn go(start: u32, end: u32, size: usize, acc: &mut Vec<u32>) -> bool {
        if acc.len() == size {
            return is_independent(acc);
        }
        for v in start..end {
            acc.push(v);
            if is_independent(acc) && go(v + 1, end, size, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    go(1, 1 << m, size, &mut acc).then_some(acc)
}

fn linear_family_at(m: u32, k: u32) -> Result<bool, String> {
    let field = Field::new(m).unwrap();
    let alphas = independent_set(m, k as usize + 1).ok_or_else(|| format!("no independent {}-set in F_{}", k + 1, 1 << m))?;
    let zero: Vec<BoolFn> = (0..=k).map(|_| BoolFn::zero(m, Flavor::Univariate(field.clone())).unwrap()).collect();
    linear_family_not_gbent_check(&field, &alphas, Some(&zero)).map_err(|e| e.to_string())
}

fn linear_family() -> Outcome {
    // Faithful attempt at the stated scales; the powers 1, a, a^2, a^3 are dependent in F_8.
    let f = f8();
    let powers: Vec<u32> = (0..4).map(|i| f.exp(i)).collect();
    let stated = linear_family_not_gbent_check(&f, &powers, None);
    let results = [linear_family_at(3, 3), linear_family_at(4, 4)];
    if results.iter().all(|r| *r == Ok(false)) {
        return pass("m=3 k=3 and m=4 k=4 not gbent");
    }
    let reasons: Vec<String> = results
        .iter()
        .map(|r| match r {
            Ok(v) => format!("gbent = {v}"),
            Err(e) => e.clone(),
        })
        .collect();
    if stated != Err(ConstructionError::DependentAlphas) {
        return fail(format!("unexpected verdict on 1, a, a^2, a^3: {stated:?}"));
    }
    fail(reasons.join("; "))
}

fn linear_family_supplement() -> Outcome {
    let mut lines = Vec::new();
    for (m, k) in [(5u32, 3u32), (6, 4)] {
        if !linear_family_hypothesis(m, k) {
            return fail(format!("m={m} k={k} outside the hypothesis"));
        }
        match linear_family_at(m, k) {
            Ok(false) => lines.push(format!("m={m} k={k} not gbent")),
            other => return fail(format!("m={m} k={k}: {other:?}")),
        }
    }
    pass(lines.join(", "))
}

fn kppp() -> Outcome {
    let field = f8();
    let a = field.generator();
    let alphas = [a, field.mul(a, a)];
    let rhos: Vec<BoolFn> = (0..2).map(|_| BoolFn::zero(3, Flavor::Univariate(field.clone())).unwrap()).collect();
    match construct_kppp_bent_negabent(&field, &alphas, &rhos) {
        Ok((g, _)) => {
            let comps = g.components();
            let ok = comps.len() == 3 && comps.iter().all(|(_, c)| c.is_bent() && c.is_negabent().unwrap());
            check(ok && g.is_vectorial_bent_negabent().unwrap().verdict(), "3 components bent and negabent")
        }
        Err(e) => fail(e.to_string()),
    }
}

fn partitions() -> Outcome {
    let spread = desarguesian_spread(&f8());
    if !spread.is_bent_partition() {
        return fail("Desarguesian spread of V_6 rejected");
    }
    let p = preimage_partition(&trace_h_example());
    let count = p.indicator_count();
    check(count == 70 && p.is_bent_partition(), format!("spread accepted; preimage partition accepted over {count} indicators"))
}

fn oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for i in 0..100 {
        let n = rng.gen_range(1..=8);
        let field = Field::new(n.max(2)).unwrap();
        let flavor = match i % 3 {
            0 => Flavor::Multivariate,
            _ if n >= 2 => Flavor::Univariate(field.clone()),
            _ => Flavor::Multivariate,
        };
        let b = BoolFn::from_fn(n, flavor.clone(), |_| rng.gen_range(0..2)).unwrap();
        if b.walsh().values() != reference::walsh(&b).as_slice() {
            return fail(format!("Walsh mismatch, sample {i}"));
        }
        let k = rng.gen_range(1..=3);
        let g = GenFn::from_fn(n, k, flavor, |_| rng.gen_range(0..1 << k)).unwrap();
        let c = rng.gen_range(1..1 << k);
        if g.h_row(c) != reference::h_row(&g, c) {
            return fail(format!("H mismatch, sample {i}"));
        }
        let n2 = rng.gen_range(2..=8);
        let field2 = Field::new(n2).unwrap();
        let u = GenFn::from_fn(n2, k, Flavor::Univariate(field2), |_| rng.gen_range(0..1 << k)).unwrap();
        if u.k_row(c).unwrap() != reference::k_row(&u, c).unwrap() {
            return fail(format!("K mismatch, sample {i}"));
        }
    }
    pass("100 samples each of W, H, K agree exactly")
}

fn sigma_and_balance() -> Outcome {
    for m in 2..=6 {
        if !sigma_cocycle_check(&Field::new(m).unwrap()) {
            return fail(format!("sigma identity fails at m={m}"));
        }
    }
    let field = Field::new(3).unwrap();
    for code in 0u32..1 << 16 {
        let g = GenFn::from_fn(3, 2, Flavor::Univariate(field.clone()), |x| (code >> (2 * x)) & 3).unwrap();
        if g.is_balanced_zk() != g.character_sums_vanish() {
            return fail(format!("balance criteria disagree on table {code:#06x}"));
        }
    }
    pass("sigma identity at m=2..6; counting = character test on all 65536 functions")
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, &str, fn() -> Outcome)> = vec![
        (1, "zero-h A_m example: |H(1,u)|^2 = 64", zero_h_example),
        (2, "trace-h A_m example: Z_8-bent, values 8 zeta_8^j", trace_h_example_values),
        (3, "inverse-permutation family is Z_2^k-bent", inverse_family),
        (4, "nega-Z_4-bent triangle at n=4", triangle),
        (5, "nega shift and its inverse", shifts),
        (6, "star group characters", characters),
        (7, "star group order census", group_structure),
        (8, "linear family is not gbent (m=3 k=3, m=4 k=4)", linear_family),
        (9, "vectorial bent-negabent construction m=3 k=2", kppp),
        (10, "bent partitions", partitions),
        (11, "butterfly vs naive W, H, K", oracles),
        (12, "sigma identity and balance criteria", sigma_and_balance),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (id, name, run) in &criteria {
        let start = Instant::now();
        let out = run();
        let secs = start.elapsed().as_secs_f64();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {verdict} [{secs:.2}s] {name}: {}", out.detail);
        if out.pass {
            passed += 1;
        } else {
            let expected = KNOWN_UNATTAINABLE.iter().any(|&(k, why)| k == *id && out.detail == why);
            if expected {
                println!("             expected failure: the stated field is too small for the required independent set");
            } else {
                unexpected += 1;
            }
        }
    }
    let start = Instant::now();
    let extra = linear_family_supplement();
    println!(
        "criterion  8 supplement {} [{:.2}s] smallest in-hypothesis scales: {}",
        if extra.pass { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64(),
        extra.detail
    );
    if !extra.pass {
        unexpected += 1;
    }
    println!("{passed}/{} criteria passed; {unexpected} unexpected failures", criteria.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
