//! Named verification suites. Each suite runs a family of exact checks at a
//! configurable scale and reports one line per check.

use std::collections::BTreeSet;

use negabent_core::boolfn::Flavor;
use negabent_core::constructions::{
    build_gbent_from_am, inverse_z2k_bent, linear_family_hypothesis, linear_family_not_gbent_check,
    mm_function, monomial_involution_family, trace_monomial_hs, zero_hs, AmTriple,
};
use negabent_core::field::sigma_cocycle_check;
use negabent_core::linalg::{is_independent, span_contains};
use negabent_core::reference;
use negabent_core::star::{
    desarguesian_spread, preimage_partition, z2k_bent_from_partition, GroupElement,
};
use negabent_core::vect::construct_kppp_bent_negabent;
use negabent_core::{BoolFn, CycInt, Field, GenFn, ShiftDirection, StarGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const SUITES: &[&str] = &[
    "am-zero-h",
    "am-trace-h",
    "inverse-z2k",
    "thm-negabent-equivalence",
    "shift",
    "character-group",
    "group-structure",
    "prop-negative",
    "kppp",
    "bent-partitions",
    "oracles",
    "sigma-balance",
];

/// Scale parameters; a suite uses the ones that apply and defaults the rest.
#[derive(Debug, Clone, Default)]
pub struct Scale {
    pub field: Option<Field>,
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// A scale outside the suite's limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleError(pub String);

type Suite = Result<Vec<Check>, ScaleError>;

struct Out {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Out {
    fn new(suite: &'static str) -> Self {
        Out {
            suite,
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn done(self) -> Suite {
        Ok(self.checks)
    }
}

fn limit(ok: bool, msg: impl Into<String>) -> Result<(), ScaleError> {
    if ok {
        Ok(())
    } else {
        Err(ScaleError(msg.into()))
    }
}

pub fn run(name: &str, scale: &Scale) -> Option<Suite> {
    let suite = match name {
        "am-zero-h" => am_zero_h(scale),
        "am-trace-h" => am_trace_h(scale),
        "inverse-z2k" => inverse(scale),
        "thm-negabent-equivalence" => equivalence(scale),
        "shift" => shift(),
        "character-group" => characters(scale),
        "group-structure" => group_structure(scale),
        "prop-negative" => linear_family(scale),
        "kppp" => kppp(scale),
        "bent-partitions" => partitions(scale),
        "oracles" => oracles(scale),
        "sigma-balance" => sigma_balance(scale),
        _ => return None,
    };
    Some(suite)
}

fn f8() -> Field {
    Field::with_poly(3, 0b1011).expect("x^3 + x + 1")
}

/// The field for the monomial-family suites, `m = 3` over `x^3 + x + 1` by default.
fn am_field(scale: &Scale) -> Result<Field, ScaleError> {
    let field = scale.field.clone().unwrap_or_else(f8);
    limit(
        (3..=6).contains(&field.degree()),
        "the monomial family suites need 3 <= m <= 6",
    )?;
    Ok(field)
}

/// `(d, alphas)`: at `m = 3` the triple `a, a^4, a^6` with `d = 6`; otherwise the
/// first admissible exponent and triple in encoding order.
pub fn am_params(field: &Field) -> Option<(u64, [u32; 3])> {
    if field.degree() == 3 {
        return Some((6, [field.exp(1), field.exp(4), field.exp(6)]));
    }
    let q = u64::from(field.order());
    for d in (2..q).filter(|d| d * d % q == 1) {
        for a1 in 1..field.size() as u32 {
            for a2 in a1 + 1..field.size() as u32 {
                for a3 in a2 + 1..field.size() as u32 {
                    if monomial_involution_family(field, d, [a1, a2, a3]).is_ok() {
                        return Some((d, [a1, a2, a3]));
                    }
                }
            }
        }
    }
    None
}

fn am_setup(scale: &Scale) -> Result<(Field, u64, [u32; 3], AmTriple), ScaleError> {
    let field = am_field(scale)?;
    let (d, alphas) = am_params(&field)
        .ok_or_else(|| ScaleError(format!("no admissible monomial triple over {field}")))?;
    let triple =
        monomial_involution_family(&field, d, alphas).map_err(|e| ScaleError(e.to_string()))?;
    Ok((field, d, alphas, triple))
}

fn am_zero_h(scale: &Scale) -> Suite {
    let (field, d, alphas, triple) = am_setup(scale)?;
    let mut out = Out::new("am-zero-h");
    out.push(
        "involutions",
        triple.perms().iter().all(|p| p.is_involution()),
        format!("d = {d}, alphas = {alphas:?}"),
    );
    match build_gbent_from_am(&field, &triple, &zero_hs(&field)) {
        Ok(g) => {
            let target = 1i64 << g.n();
            let row = g.h_row(1);
            let flat = row
                .iter()
                .filter(|v| v.norm_sq_integer() == Some(target))
                .count();
            out.push(
                "flat",
                flat == row.len(),
                format!("|H(1,u)|^2 = {target} at {flat}/{} points", row.len()),
            );
        }
        Err(e) => out.push("build", false, e.to_string()),
    }
    out.done()
}

fn am_trace_h(scale: &Scale) -> Suite {
    let (field, d, alphas, triple) = am_setup(scale)?;
    let mut out = Out::new("am-trace-h");
    let a4 = alphas[0] ^ alphas[1] ^ alphas[2];
    let hs = trace_monomial_hs(&field, [alphas[0], alphas[1], alphas[2], a4], d);
    let g = match build_gbent_from_am(&field, &triple, &hs) {
        Ok(g) => g,
        Err(e) => {
            out.push("build", false, e.to_string());
            return out.done();
        }
    };
    out.push("z8-bent", g.is_z2k_bent(), "every nonzero c flat");
    let fs: Vec<BoolFn> = (0..3)
        .map(|i| mm_function(&field, &triple.perms()[i], &hs[i]))
        .collect();
    let pairwise =
        (0..3).all(|i| (i + 1..3).all(|j| fs[i].add(&fs[j]).map(|s| s.is_bent()).unwrap_or(false)));
    out.push("pairwise-bent", pairwise, "f_i + f_j bent for i < j");
    let scale_root = 1i64 << field.degree();
    let allowed: Vec<CycInt> = (0..8)
        .map(|j| {
            CycInt::constant(3, scale_root)
                .try_mul(&CycInt::root_power(3, j))
                .expect("same level")
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut stray = None;
    for c in 1..8 {
        for v in g.h_row(c) {
            match allowed.iter().position(|a| *a == v) {
                Some(p) => {
                    seen.insert(p);
                }
                None => stray = stray.or(Some(v.to_text())),
            }
        }
    }
    match stray {
        None => out.push(
            "values",
            true,
            format!("{} distinct values, all {scale_root} zeta_8^j", seen.len()),
        ),
        Some(v) => out.push(
            "values",
            false,
            format!("value {v} is not {scale_root} zeta_8^j"),
        ),
    }
    out.done()
}

fn inverse(scale: &Scale) -> Suite {
    let cases: Vec<(Field, u32)> = match (&scale.field, scale.k) {
        (None, None) => [(3, 2), (3, 3), (4, 2), (5, 2)]
            .into_iter()
            .map(|(m, k)| (Field::new(m).expect("registry"), k))
            .collect(),
        (f, k) => {
            let field = f
                .clone()
                .unwrap_or_else(|| Field::new(3).expect("registry"));
            let k = k.unwrap_or(2);
            limit(
                k >= 1 && k <= field.degree() && field.degree() <= 6,
                "need 1 <= k <= m <= 6",
            )?;
            vec![(field, k)]
        }
    };
    let mut out = Out::new("inverse-z2k");
    for (field, k) in cases {
        let alphas: Vec<u32> = (0..k).map(|i| 1 << i).collect();
        let name = format!("m={} k={k}", field.degree());
        match inverse_z2k_bent(&field, &alphas) {
            Ok(g) => out.push(name, g.is_z2k_bent(), "Z_2^k-bent"),
            Err(e) => out.push(name, false, e.to_string()),
        }
    }
    out.done()
}

fn quadratic(field: &Field, k: u32, rng: &mut ChaCha8Rng) -> GenFn {
    let q = field.size() as u32;
    let cs: Vec<[u32; 3]> = (0..k)
        .map(|_| {
            [
                rng.gen_range(0..q),
                rng.gen_range(0..q),
                rng.gen_range(0..q),
            ]
        })
        .collect();
    GenFn::from_fn(field.degree(), k, Flavor::Univariate(field.clone()), |x| {
        cs.iter().enumerate().fold(0, |acc, (j, &[a, b, c])| {
            let t = field.trace(field.mul(a, field.pow(x, 3)))
                ^ field.trace(field.mul(b, field.pow(x, 5)))
                ^ field.trace(field.mul(c, x));
            acc | u32::from(t) << j
        })
    })
    .expect("values in range")
}

fn equivalence(scale: &Scale) -> Suite {
    let n = scale
        .n
        .or(scale.field.as_ref().map(Field::degree))
        .unwrap_or(4);
    let k = scale.k.unwrap_or(2);
    limit(
        (2..=8).contains(&n) && (2..=4).contains(&k),
        "need 2 <= n <= 8 and 2 <= k <= 4",
    )?;
    let field = match &scale.field {
        Some(f) if f.degree() == n => f.clone(),
        _ => Field::new(n).map_err(|e| ScaleError(e.to_string()))?,
    };
    let flavor = Flavor::Univariate(field.clone());
    let group = StarGroup::zk(&field, k).map_err(|e| ScaleError(e.to_string()))?;
    let bits = u64::from(k) << n;
    let exhaustive = bits <= 16;
    let mut suite: Vec<GenFn> = Vec::new();
    if exhaustive {
        let mask = (1u32 << k) - 1;
        for code in 0..1u64 << bits {
            suite.push(
                GenFn::from_fn(n, k, flavor.clone(), |x| {
                    (code >> (u64::from(k) * u64::from(x))) as u32 & mask
                })
                .expect("in range"),
            );
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(scale.seed.unwrap_or(2024));
        for i in 0..scale.samples.unwrap_or(500) {
            let f = if i % 2 == 0 {
                GenFn::from_fn(n, k, flavor.clone(), |_| rng.gen_range(0..1 << k))
                    .expect("in range")
            } else {
                quadratic(&field, k, &mut rng)
            };
            suite.push(f);
        }
        // nega sides of Z_2^k-bent functions, when the inverse family reaches this scale
        if n.is_multiple_of(2) && k <= n / 2 {
            let half = Field::new(n / 2).map_err(|e| ScaleError(e.to_string()))?;
            let alphas: Vec<u32> = (0..k).map(|i| 1 << i).collect();
            if let Ok(seed) = inverse_z2k_bent(&half, &alphas) {
                let seed = seed.with_flavor(flavor.clone()).expect("same n");
                for b in 0..field.size() as u32 {
                    let top = 1u32 << (k - 1);
                    let g = GenFn::from_fn(n, k, flavor.clone(), |x| {
                        seed.get(x) + top * u32::from(field.trace(field.mul(b, x)))
                    })
                    .expect("in range");
                    suite.push(g.nega_shift(ShiftDirection::ToNega).expect("k >= 2"));
                    suite.push(g);
                }
            }
        }
    }
    let want = (1u64 << n, 1u64 << k, 1u64 << n, 1u64 << (n - k.min(n)));
    let mut out = Out::new("thm-negabent-equivalence");
    let mut yes = 0;
    let mut bad = None;
    for (i, f) in suite.iter().enumerate() {
        let spectrum = f.is_nega_z2k_bent().expect("univariate");
        let derivative = f.nega_derivative_balanced().expect("univariate");
        let graph = group.graph_of_gen(f).expect("matching group");
        let in_n = |g: GroupElement| g.x == 0;
        let params = group
            .rds_parameters(&graph, &in_n)
            .map(|(kappa, nu, lambda)| (group.order() as u64 / nu, nu, kappa, lambda));
        let rds = group.is_rds(&graph, in_n) && params == Some(want);
        if spectrum != derivative || derivative != rds {
            bad = Some(format!(
                "function #{i}: spectrum {spectrum}, derivative {derivative}, rds {rds}"
            ));
            break;
        }
        yes += usize::from(spectrum);
    }
    let mode = if exhaustive { "exhaustive" } else { "sampled" };
    match bad {
        Some(detail) => out.push("triangle", false, detail),
        None => out.push(
            "triangle",
            true,
            format!(
                "{mode}: {} functions agree, {yes} nega-Z_2^k-bent, rds parameters {want:?}",
                suite.len()
            ),
        ),
    }
    out.done()
}

fn spread_z4() -> GenFn {
    let field = Field::new(2).expect("registry");
    let big = Field::new(4).expect("registry");
    z2k_bent_from_partition(&desarguesian_spread(&field), 2, Flavor::Univariate(big))
        .expect("spread has 4 parts")
}

fn trace_h_example() -> GenFn {
    let field = f8();
    let (d, alphas) = am_params(&field).expect("m = 3 parameters");
    let triple = monomial_involution_family(&field, d, alphas).expect("admissible");
    let a4 = alphas[0] ^ alphas[1] ^ alphas[2];
    let hs = trace_monomial_hs(&field, [alphas[0], alphas[1], alphas[2], a4], d);
    build_gbent_from_am(&field, &triple, &hs).expect("verified construction")
}

fn shift() -> Suite {
    let mut out = Out::new("shift");
    let big = Field::new(6).expect("registry");
    let fixtures = [
        ("spread n=4 k=2", spread_z4()),
        (
            "trace-h n=6 k=3",
            trace_h_example()
                .with_flavor(Flavor::Univariate(big))
                .expect("n = 6"),
        ),
    ];
    for (name, f) in fixtures {
        let nega = f
            .nega_shift(ShiftDirection::ToNega)
            .expect("univariate, k >= 2");
        let back = nega
            .nega_shift(ShiftDirection::ToPlain)
            .expect("univariate, k >= 2");
        out.push(format!("{name} fixture"), f.is_z2k_bent(), "Z_2^k-bent");
        out.push(
            format!("{name} to nega"),
            nega.is_nega_z2k_bent().unwrap_or(false),
            "nega-Z_2^k-bent",
        );
        out.push(format!("{name} round trip"), back == f, "returns exactly");
    }
    out.done()
}

fn characters(scale: &Scale) -> Suite {
    let n = scale.n.unwrap_or(3);
    let ks = scale.k.map_or(vec![2, 3], |k| vec![k]);
    limit(
        (2..=6).contains(&n) && ks.iter().all(|&k| k >= 1 && n + k <= 8),
        "need 2 <= n, 1 <= k, n + k <= 8",
    )?;
    let field = Field::new(n).map_err(|e| ScaleError(e.to_string()))?;
    let mut out = Out::new("character-group");
    for k in ks {
        let g = StarGroup::zk(&field, k).map_err(|e| ScaleError(e.to_string()))?;
        let els: Vec<GroupElement> = g.elements().collect();
        let mut seen = BTreeSet::new();
        let mut count = 0usize;
        let mut broken = None;
        for chi in g.characters() {
            count += 1;
            let values: Vec<CycInt> = els.iter().map(|&a| g.char_eval(chi, a)).collect();
            let ok = els.iter().enumerate().all(|(i, &a)| {
                els.iter()
                    .enumerate()
                    .all(|(j, &b)| g.char_eval(chi, g.add(a, b)) == &values[i] * &values[j])
            });
            if !ok && broken.is_none() {
                broken = Some((chi.u, chi.c));
            }
            seen.insert(values);
        }
        let name = format!("n={n} k={k}");
        match broken {
            Some((u, c)) => out.push(
                name,
                false,
                format!("character ({u}, {c}) not multiplicative"),
            ),
            None => out.push(
                name,
                count == 1 << (n + k) && seen.len() == count,
                format!(
                    "{count} characters, {} distinct, all multiplicative",
                    seen.len()
                ),
            ),
        }
    }
    out.done()
}

fn group_structure(scale: &Scale) -> Suite {
    let ns = scale.n.map_or(vec![3, 4], |n| vec![n]);
    let ks = scale.k.map_or(vec![2, 3], |k| vec![k]);
    limit(
        ns.iter().all(|&n| (2..=10).contains(&n)) && ks.iter().all(|&k| (1..=8).contains(&k)),
        "need 2 <= n <= 10, 1 <= k <= 8",
    )?;
    let mut out = Out::new("group-structure");
    for &n in &ns {
        let field = Field::new(n).map_err(|e| ScaleError(e.to_string()))?;
        for &k in &ks {
            let g = StarGroup::zk(&field, k).map_err(|e| ScaleError(e.to_string()))?;
            let census = g.order_census();
            let name = format!("n={n} k={k}");
            if k == 1 {
                // Z_2^(n-1) x Z_4
                let expect = vec![(1u64, 1usize), (2, (1 << n) - 1), (4, 1 << n)];
                let got: Vec<(u64, usize)> = census.into_iter().collect();
                out.push(name, got == expect, format!("census {got:?}"));
            } else {
                let small: usize = census.iter().filter(|(&o, _)| o <= 2).map(|(_, c)| c).sum();
                let ord = g.element_order(GroupElement::new(0, 1));
                out.push(
                    name,
                    small == 1 << (n + 1) && ord == 1 << k,
                    format!("{small} elements of order <= 2, order((0,1)) = {ord}"),
                );
            }
        }
        if scale.k.is_none() {
            let census: Vec<(u64, usize)> = StarGroup::zk(&field, 1)
                .expect("k = 1")
                .order_census()
                .into_iter()
                .collect();
            let expect = vec![(1u64, 1usize), (2, (1 << n) - 1), (4, 1 << n)];
            out.push(
                format!("n={n} k=1"),
                census == expect,
                format!("census {census:?}"),
            );
        }
    }
    out.done()
}

/// Smallest independent `size`-subset of `F_{2^m}` in encoding order.
pub fn independent_set(m: u32, size: usize) -> Option<Vec<u32>> {
    fn go(start: u32, end: u32, size: usize, acc: &mut Vec<u32>) -> bool {
        if acc.len() == size {
            return true;
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
    (size as u32 <= m && go(1, 1 << m, size, &mut acc)).then_some(acc)
}

fn linear_family(scale: &Scale) -> Suite {
    let cases: Vec<(u32, u32)> = match (&scale.field, scale.k) {
        (None, None) => vec![(3, 3), (4, 4), (5, 3), (6, 4)],
        (f, k) => {
            let m = f.as_ref().map_or(3, Field::degree);
            vec![(m, k.unwrap_or(3))]
        }
    };
    limit(
        cases
            .iter()
            .all(|&(m, k)| (2..=6).contains(&m) && (1..=7).contains(&k)),
        "need 2 <= m <= 6, 1 <= k <= 7",
    )?;
    let mut out = Out::new("prop-negative");
    for (m, k) in cases {
        let field = match &scale.field {
            Some(f) if f.degree() == m => f.clone(),
            _ => Field::new(m).map_err(|e| ScaleError(e.to_string()))?,
        };
        let name = format!("m={m} k={k}");
        let note = if linear_family_hypothesis(m, k) {
            ""
        } else {
            " (outside the hypothesis range)"
        };
        let Some(alphas) = independent_set(m, k as usize + 1) else {
            out.push(
                name,
                false,
                format!("no independent {}-set in F_{}{note}", k + 1, 1u32 << m),
            );
            continue;
        };
        let zero: Vec<BoolFn> = (0..=k)
            .map(|_| BoolFn::zero(m, Flavor::Univariate(field.clone())).expect("n = m"))
            .collect();
        match linear_family_not_gbent_check(&field, &alphas, Some(&zero)) {
            Ok(gbent) => out.push(
                name,
                !gbent,
                format!("alphas {alphas:?}: gbent = {gbent}{note}"),
            ),
            Err(e) => out.push(name, false, e.to_string()),
        }
    }
    out.done()
}

fn kppp(scale: &Scale) -> Suite {
    let field = scale.field.clone().unwrap_or_else(f8);
    let m = field.degree();
    let k = scale.k.unwrap_or(2);
    limit(
        (2..=6).contains(&m) && k >= 1 && k < m,
        "need 2 <= m <= 6 and 1 <= k < m",
    )?;
    // greedy: independent, and 1 stays outside the span
    let mut alphas = Vec::new();
    for a in 2..field.size() as u32 {
        if alphas.len() == k as usize {
            break;
        }
        alphas.push(a);
        if !is_independent(&alphas) || span_contains(&alphas, 1) {
            alphas.pop();
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(scale.seed.unwrap_or(0));
    let rhos: Vec<BoolFn> = (0..k)
        .map(|_| {
            let random = scale.seed.is_some();
            BoolFn::from_fn(m, Flavor::Univariate(field.clone()), |_| {
                if random {
                    rng.gen_range(0..2)
                } else {
                    0
                }
            })
            .expect("n = m")
        })
        .collect();
    let mut out = Out::new("kppp");
    let name = format!("m={m} k={k}");
    match construct_kppp_bent_negabent(&field, &alphas, &rhos) {
        Ok((g, _)) => {
            let comps = g.components();
            let bent = comps.iter().filter(|(_, c)| c.is_bent()).count();
            let nega = comps
                .iter()
                .filter(|(_, c)| c.is_negabent().unwrap_or(false))
                .count();
            out.push(
                name,
                bent == comps.len() && nega == comps.len() && comps.len() == (1 << k) - 1,
                format!(
                    "alphas {alphas:?}: {bent} bent, {nega} negabent of {} components",
                    comps.len()
                ),
            );
        }
        Err(e) => out.push(name, false, e.to_string()),
    }
    out.done()
}

fn partitions(scale: &Scale) -> Suite {
    let field = scale.field.clone().unwrap_or_else(f8);
    limit((2..=5).contains(&field.degree()), "need 2 <= m <= 5")?;
    let mut out = Out::new("bent-partitions");
    let spread = desarguesian_spread(&field);
    out.push(
        format!("spread V_{}", 2 * field.degree()),
        spread.is_bent_partition(),
        format!("{} indicators", spread.indicator_count()),
    );
    if field.degree() == 3 {
        let p = preimage_partition(&trace_h_example());
        out.push(
            "trace-h preimages",
            p.is_bent_partition(),
            format!("{} indicators", p.indicator_count()),
        );
    }
    out.done()
}

fn oracles(scale: &Scale) -> Suite {
    let samples = scale.samples.unwrap_or(100);
    limit(samples <= 10_000, "at most 10000 samples")?;
    let mut rng = ChaCha8Rng::seed_from_u64(scale.seed.unwrap_or(77));
    let (mut w, mut h, mut k_ok) = (0, 0, 0);
    for i in 0..samples {
        let n = rng.gen_range(2..=8);
        let field = Field::new(n).expect("registry");
        let flavor = if i % 3 == 0 {
            Flavor::Multivariate
        } else {
            Flavor::Univariate(field.clone())
        };
        let b = BoolFn::from_fn(n, flavor.clone(), |_| rng.gen_range(0..2)).expect("in range");
        w += usize::from(b.walsh().values() == reference::walsh(&b).as_slice());
        let k = rng.gen_range(1..=3);
        let c = rng.gen_range(1..1 << k);
        let g = GenFn::from_fn(n, k, flavor, |_| rng.gen_range(0..1 << k)).expect("in range");
        h += usize::from(g.h_row(c) == reference::h_row(&g, c));
        let u = GenFn::from_fn(n, k, Flavor::Univariate(field), |_| {
            rng.gen_range(0..1 << k)
        })
        .expect("in range");
        k_ok += usize::from(u.k_row(c).ok() == reference::k_row(&u, c).ok());
    }
    let mut out = Out::new("oracles");
    out.push("walsh", w == samples, format!("{w}/{samples} agree"));
    out.push("h", h == samples, format!("{h}/{samples} agree"));
    out.push("k", k_ok == samples, format!("{k_ok}/{samples} agree"));
    out.done()
}

fn sigma_balance(scale: &Scale) -> Suite {
    let top = scale.field.as_ref().map_or(6, Field::degree);
    let n = scale.n.unwrap_or(3);
    let k = scale.k.unwrap_or(2);
    limit(
        top <= 10 && (2..=4).contains(&n) && k >= 1 && (u64::from(k) << n) <= 20,
        "need m <= 10 and k 2^n <= 20",
    )?;
    let mut out = Out::new("sigma-balance");
    for m in 2..=top {
        let field = Field::new(m).expect("registry");
        out.push(
            format!("sigma m={m}"),
            sigma_cocycle_check(&field),
            "identity holds for all c, x",
        );
    }
    let field = Field::new(n).expect("registry");
    let mask = (1u32 << k) - 1;
    let total = 1u64 << (u64::from(k) << n);
    let agree = (0..total)
        .filter(|&code| {
            let g = GenFn::from_fn(n, k, Flavor::Univariate(field.clone()), |x| {
                (code >> (u64::from(k) * u64::from(x))) as u32 & mask
            })
            .expect("in range");
            g.is_balanced_zk() == g.character_sums_vanish()
        })
        .count() as u64;
    out.push(
        format!("balance n={n} k={k}"),
        agree == total,
        format!("{agree}/{total} functions agree"),
    );
    out.done()
}
