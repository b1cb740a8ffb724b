//! Parallel drivers for the searches. Every driver enumerates in a fixed canonical
//! order, numbers each examined candidate with an ordinal, and drops hits whose
//! ordinal reaches the budget, so the output never depends on the worker count.

use negabent_core::boolfn::Flavor;
use negabent_core::constructions::{
    build_gbent_from_am, cex_exponents, cex_slice, cex_z8_bent, zero_hs, AmClass, AmHit, AmParams,
    AmSearch, AmSlice,
};
use negabent_core::{ConstructionError, Field, GenFn, ShiftDirection};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

/// JSON lines (one per hit) plus the closing summary.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutput {
    pub hits: Vec<Value>,
    pub summary: Value,
    pub exhausted: bool,
}

impl SearchOutput {
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for h in &self.hits {
            out.push_str(&h.to_string());
            out.push('\n');
        }
        out.push_str(&serde_json::json!({ "summary": self.summary }).to_string());
        out.push('\n');
        out
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

#[derive(Serialize)]
struct AmHitLine<'a> {
    ordinal: u64,
    d: Option<u64>,
    alphas: Option<[u32; 3]>,
    indices: Option<[usize; 3]>,
    perms: Vec<&'a [u32]>,
    pi4_complete: bool,
    gbent: bool,
}

#[derive(Serialize)]
struct AmSummary {
    search: &'static str,
    field: String,
    class: &'static str,
    budget: u64,
    candidates: usize,
    examined: u64,
    hits: usize,
    incomplete_am: u64,
    exhausted: bool,
}

pub fn am_complete(
    field: &Field,
    class: AmClass,
    budget: u64,
) -> Result<SearchOutput, ConstructionError> {
    let search = AmSearch::new(field, class, budget)?;
    let slices: Vec<(usize, AmSlice)> = search
        .slices_within(budget)
        .into_par_iter()
        .map(|i| (i, search.run_outer(i)))
        .collect();
    let report = search.merge(slices, budget);
    let hits = report
        .hits
        .par_iter()
        .map(|h| am_hit_line(field, h))
        .collect::<Vec<_>>();
    let summary = AmSummary {
        search: "am-complete",
        field: field.to_string(),
        class: match class {
            AmClass::Monomial => "monomial",
            AmClass::Linearized => "linearized",
            AmClass::All => "all",
        },
        budget,
        candidates: search.candidates().len(),
        examined: report.examined,
        hits: hits.len(),
        incomplete_am: report.incomplete_am,
        exhausted: report.exhausted,
    };
    Ok(SearchOutput {
        hits,
        summary: to_value(summary),
        exhausted: report.exhausted,
    })
}

fn am_hit_line(field: &Field, hit: &AmHit) -> Value {
    let gbent = build_gbent_from_am(field, &hit.triple, &zero_hs(field)).is_ok();
    let (d, alphas, indices) = match hit.params {
        AmParams::Monomial { d, alphas } => (Some(d), Some(alphas), None),
        AmParams::Indexed(ix) => (None, None, Some(ix)),
    };
    to_value(AmHitLine {
        ordinal: hit.ordinal,
        d,
        alphas,
        indices,
        perms: hit.triple.perms().iter().map(|p| p.table()).collect(),
        pi4_complete: hit.pi4_complete,
        gbent,
    })
}

#[derive(Serialize)]
struct CexHitLine {
    ordinal: u64,
    e: u64,
    c: [u32; 3],
    z8_bent: bool,
}

#[derive(Serialize)]
struct CexSummary {
    search: &'static str,
    field: String,
    exponents: Vec<u64>,
    budget: u64,
    examined: u64,
    hits: usize,
    hits_per_exponent: Vec<[u64; 2]>,
    exhausted: bool,
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Triples `c1 < c2 < c3` of nonzero elements for each exponent in turn.
/// Without `e`, every exponent coprime to `2^m - 1` is tried.
pub fn cex(field: &Field, e: Option<u64>, budget: u64) -> Result<SearchOutput, ConstructionError> {
    let exponents = match e {
        Some(e) => {
            if !cex_exponents(field).contains(&e) {
                return Err(ConstructionError::BadExponent);
            }
            vec![e]
        }
        None => cex_exponents(field),
    };
    // nonzero elements are 1..=q
    let q = u64::from(field.order());
    let per_e = q * q.saturating_sub(1) * q.saturating_sub(2) / 6;
    let offset = |ei: usize, c1: u64| -> u64 {
        ei as u64 * per_e + (1..c1).map(|j| choose2(q - j)).sum::<u64>()
    };
    let jobs: Vec<(usize, u64)> = (0..exponents.len())
        .flat_map(|ei| (1..=q).map(move |c1| (ei, c1)))
        .filter(|&(ei, c1)| choose2(q - c1) > 0 && offset(ei, c1) < budget)
        .collect();
    let found: Vec<(u64, u64, [u32; 3])> = jobs
        .into_par_iter()
        .flat_map_iter(|(ei, c1)| {
            let e = exponents[ei];
            let base = offset(ei, c1);
            cex_slice(field, e, c1 as u32).into_iter().map(move |c| {
                let (c2, c3) = (u64::from(c[1]), u64::from(c[2]));
                let before_c2: u64 = (c1 + 1..c2).map(|j| q - j).sum();
                (base + before_c2 + (c3 - c2 - 1), e, c)
            })
        })
        .filter(|(ordinal, _, _)| *ordinal < budget)
        .collect();
    let hits: Vec<Value> = found
        .par_iter()
        .map(|&(ordinal, e, c)| {
            let z8_bent = cex_z8_bent(field, e, c).is_ok();
            to_value(CexHitLine {
                ordinal,
                e,
                c,
                z8_bent,
            })
        })
        .collect();
    let total = per_e * exponents.len() as u64;
    let hits_per_exponent = exponents
        .iter()
        .map(|&e| [e, found.iter().filter(|h| h.1 == e).count() as u64])
        .collect();
    let exhausted = total > budget;
    let summary = CexSummary {
        search: "cex",
        field: field.to_string(),
        exponents: exponents.clone(),
        budget,
        examined: total.min(budget),
        hits: hits.len(),
        hits_per_exponent,
        exhausted,
    };
    Ok(SearchOutput {
        hits,
        summary: to_value(summary),
        exhausted,
    })
}

/// What a nega-gbent search keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegaTarget {
    /// Nega-gbent functions that are neither `2^(k-1) g` nor the nega side of a
    /// plain `2^(k-1) g`.
    Nontrivial,
    /// Functions that are gbent and nega-gbent at once.
    Both,
}

#[derive(Serialize)]
struct NegaHitLine {
    ordinal: u64,
    values: String,
    gbent: bool,
    nega_gbent: bool,
    z2k_bent: bool,
    nega_z2k_bent: bool,
}

#[derive(Serialize)]
struct NegaSummary {
    search: &'static str,
    field: String,
    k: u32,
    mode: &'static str,
    seed: Option<u64>,
    budget: u64,
    examined: u64,
    nega_gbent: u64,
    scaled_negabent: u64,
    shift_of_scaled_bent: u64,
    hits: usize,
    exhausted: bool,
}

#[derive(Default)]
struct Tally {
    nega_gbent: u64,
    scaled: u64,
    shifted: u64,
    hits: Vec<(u64, GenFn)>,
}

impl Tally {
    fn join(mut self, other: Tally) -> Tally {
        self.nega_gbent += other.nega_gbent;
        self.scaled += other.scaled;
        self.shifted += other.shifted;
        self.hits.extend(other.hits);
        self
    }
}

fn only_top_bit(f: &GenFn) -> bool {
    let top = 1u32 << (f.k() - 1);
    f.values().iter().all(|&v| v == 0 || v == top)
}

fn classify(target: NegaTarget, ordinal: u64, f: GenFn, tally: &mut Tally) {
    let nega = f.is_nega_gbent().expect("univariate");
    match target {
        NegaTarget::Nontrivial => {
            if !nega {
                return;
            }
            tally.nega_gbent += 1;
            if only_top_bit(&f) {
                tally.scaled += 1;
            } else if only_top_bit(&f.nega_shift(ShiftDirection::ToPlain).expect("k >= 2")) {
                tally.shifted += 1;
            } else {
                tally.hits.push((ordinal, f));
            }
        }
        NegaTarget::Both => {
            if nega {
                tally.nega_gbent += 1;
                if f.is_gbent() {
                    tally.hits.push((ordinal, f));
                }
            }
        }
    }
}

/// Exhaustive over all `2^(k 2^n)` tables when that fits the budget, otherwise
/// `budget` uniform samples; sample `i` is drawn from stream `i` of a ChaCha
/// generator keyed by `seed`.
pub fn nega(
    field: &Field,
    k: u32,
    target: NegaTarget,
    budget: u64,
    seed: u64,
) -> Result<SearchOutput, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::Fn(negabent_core::FnError::KTooSmall(k)));
    }
    let n = field.degree();
    let bits = u64::from(k) << n;
    let flavor = Flavor::Univariate(field.clone());
    let mask = (1u32 << k) - 1;
    let exhaustive = bits < 64 && (1u64 << bits) <= budget;
    let count = if exhaustive { 1u64 << bits } else { budget };
    const CHUNK: u64 = 4096;
    let tally = (0..count.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut tally = Tally::default();
            for i in chunk * CHUNK..((chunk + 1) * CHUNK).min(count) {
                let f = if exhaustive {
                    GenFn::from_fn(n, k, flavor.clone(), |x| {
                        (i >> (u64::from(k) * u64::from(x))) as u32 & mask
                    })
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i);
                    GenFn::from_fn(n, k, flavor.clone(), |_| rng.gen_range(0..=mask))
                }
                .expect("values in range");
                classify(target, i, f, &mut tally);
            }
            tally
        })
        .reduce(Tally::default, Tally::join);
    let mut found = tally.hits;
    found.sort_by_key(|(i, _)| *i);
    let hits: Vec<Value> = found
        .iter()
        .map(|(ordinal, f)| {
            to_value(NegaHitLine {
                ordinal: *ordinal,
                values: f
                    .values()
                    .iter()
                    .map(|v| format!("{v:0w$x}", w = k.div_ceil(4) as usize))
                    .collect(),
                gbent: f.is_gbent(),
                nega_gbent: true,
                z2k_bent: f.is_z2k_bent(),
                nega_z2k_bent: f.is_nega_z2k_bent().expect("univariate"),
            })
        })
        .collect();
    let exhausted = !exhaustive;
    let summary = NegaSummary {
        search: match target {
            NegaTarget::Nontrivial => "nega-gbent-nontrivial",
            NegaTarget::Both => "gbent-nega-gbent",
        },
        field: field.to_string(),
        k,
        mode: if exhaustive { "exhaustive" } else { "sampled" },
        seed: (!exhaustive).then_some(seed),
        budget,
        examined: count,
        nega_gbent: tally.nega_gbent,
        scaled_negabent: tally.scaled,
        shift_of_scaled_bent: tally.shifted,
        hits: hits.len(),
        exhausted,
    };
    Ok(SearchOutput {
        hits,
        summary: to_value(summary),
        exhausted,
    })
}
