//! The analysis report: predicate verdicts, spectrum statistics and difference-set
//! parameters for one function file.

use std::collections::{BTreeMap, BTreeSet};

use negabent_core::boolfn::Flavor;
use negabent_core::star::GroupElement;
use negabent_core::vect::VectFn;
use negabent_core::{BoolFn, CycInt, GenFn, StarGroup};
use serde::Serialize;
use serde_json::Value;

use crate::format::FunctionFile;

/// Per-`c` verdict lists are skipped above this `n`.
const PER_C_LIMIT: u32 = 10;
/// Difference counting is skipped above this group order exponent.
const RDS_LIMIT: u32 = 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub input: InputDescriptor,
    pub verdicts: Verdicts,
    pub spectrum: SpectrumStats,
    pub rds: Option<RdsReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDescriptor {
    pub kind: &'static str,
    pub n: u32,
    pub k: u32,
    pub flavor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CVerdict {
    pub c: u32,
    pub verdict: bool,
}

/// `None` marks a predicate that does not apply to the input's shape or flavor.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub bent: Option<bool>,
    pub negabent: Option<bool>,
    pub cbent4: Option<Vec<CVerdict>>,
    pub gbent: Option<bool>,
    pub z2k_bent: Option<bool>,
    pub nega_gbent: Option<bool>,
    pub nega_z2k_bent: Option<bool>,
    pub vectorial: Option<VectVerdicts>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VectVerdicts {
    pub components_bent: bool,
    pub components_negabent: bool,
    pub bent_negabent: Option<bool>,
    pub exceeds_bound: Option<bool>,
    pub bent4: Option<bool>,
    pub modified_planar: Option<bool>,
    pub criteria: Option<Criteria>,
}

/// The four equivalent vectorial bent4 criteria: modified derivatives, spectrum,
/// difference set, components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Criteria {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
    pub iv: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormCount {
    /// `|z|^2`: a number when rational, else its ring text.
    pub norm: Value,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowStats {
    pub c: u32,
    pub distinct_values: usize,
    pub norms: Vec<NormCount>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumStats {
    /// Distinct transform values over every row.
    pub distinct_values: usize,
    /// `W_f` (Boolean), `H_f(c, .)` (generalized) or `V_F(c, .)` (vectorial), by `c`.
    pub plain: Vec<RowStats>,
    /// `K_f(c, .)` for univariate generalized functions.
    pub nega: Option<Vec<RowStats>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RdsReport {
    pub group: &'static str,
    pub order: usize,
    pub kappa: u64,
    pub nu: u64,
    pub lambda: u64,
    pub is_rds: bool,
}

pub fn analyze(file: &FunctionFile) -> AnalysisReport {
    let input = InputDescriptor {
        kind: file.kind(),
        n: file.n(),
        k: file.k(),
        flavor: file.flavor().tag(),
    };
    match file {
        FunctionFile::Bool(f) => analyze_bool(input, f),
        FunctionFile::Gen(f) => analyze_gen(input, f),
        FunctionFile::Vect(f) => analyze_vect(input, f),
    }
}

fn analyze_bool(input: InputDescriptor, f: &BoolFn) -> AnalysisReport {
    let as_gen = GenFn::from_components(1, std::slice::from_ref(f)).expect("one component");
    let mut verdicts = gen_verdicts(&as_gen);
    verdicts.bent = Some(f.is_bent());
    verdicts.negabent = f.is_negabent().ok();
    verdicts.cbent4 =
        (f.n() <= PER_C_LIMIT && !matches!(f.flavor(), Flavor::Bivariate(_))).then(|| {
            (1..1u32 << f.n())
                .map(|c| CVerdict {
                    c,
                    verdict: f.is_cbent4(c).unwrap_or(false),
                })
                .collect()
        });
    let values: Vec<CycInt> = f
        .walsh()
        .values()
        .iter()
        .map(|&v| CycInt::constant(1, v))
        .collect();
    AnalysisReport {
        input,
        verdicts,
        spectrum: SpectrumStats {
            distinct_values: distinct(&[&values]),
            plain: vec![row_stats(1, &values)],
            nega: None,
        },
        rds: None,
    }
}

fn gen_verdicts(f: &GenFn) -> Verdicts {
    Verdicts {
        gbent: Some(f.is_gbent()),
        z2k_bent: Some(f.is_z2k_bent()),
        nega_gbent: f.is_nega_gbent().ok(),
        nega_z2k_bent: f.is_nega_z2k_bent().ok(),
        ..Verdicts::default()
    }
}

fn analyze_gen(input: InputDescriptor, f: &GenFn) -> AnalysisReport {
    let mut verdicts = gen_verdicts(f);
    if f.k() == 1 {
        let b = f.bit_component(0).expect("k = 1");
        verdicts.bent = Some(b.is_bent());
        verdicts.negabent = b.is_negabent().ok();
    }
    let h = f.h_transform();
    let rows: Vec<&[CycInt]> = (1..1u32 << f.k()).map(|c| h.row(c)).collect();
    let distinct_values = distinct(&rows);
    let plain = (1..1u32 << f.k()).map(|c| row_stats(c, h.row(c))).collect();
    let nega = f
        .k_transform()
        .ok()
        .map(|t| (1..1u32 << f.k()).map(|c| row_stats(c, t.row(c))).collect());
    let rds = match f.flavor() {
        Flavor::Univariate(field) if f.n() + f.k() <= RDS_LIMIT => StarGroup::zk(field, f.k())
            .ok()
            .and_then(|g| Some((g.graph_of_gen(f).ok()?, g)))
            .and_then(|(graph, g)| rds_report("zk", &g, &graph)),
        _ => None,
    };
    AnalysisReport {
        input,
        verdicts,
        spectrum: SpectrumStats {
            distinct_values,
            plain,
            nega,
        },
        rds,
    }
}

fn analyze_vect(input: InputDescriptor, f: &VectFn) -> AnalysisReport {
    let comps = f.components();
    let bent_negabent = f.is_vectorial_bent_negabent().ok();
    let vectorial = VectVerdicts {
        components_bent: comps.iter().all(|(_, c)| c.is_bent()),
        components_negabent: f.is_vectorial_negabent(),
        bent_negabent: bent_negabent.map(|r| r.verdict()),
        exceeds_bound: bent_negabent.map(|r| r.exceeds_bound),
        bent4: f.is_vectorial_bent4().ok(),
        modified_planar: f.is_modified_planar().ok(),
        criteria: f.nuwires_equivalence_report().ok().map(|r| Criteria {
            i: r.derivative,
            ii: r.spectrum,
            iii: r.rds,
            iv: r.components,
        }),
    };
    let rows: Vec<(u32, Vec<CycInt>)> = match f.v_transform() {
        Ok(v) => (1..1u32 << f.k()).map(|c| (c, v.row(c).to_vec())).collect(),
        Err(_) => comps
            .iter()
            .map(|(c, g)| {
                (
                    *c,
                    g.walsh()
                        .values()
                        .iter()
                        .map(|&v| CycInt::constant(1, v))
                        .collect(),
                )
            })
            .collect(),
    };
    let distinct_values = distinct(&rows.iter().map(|(_, r)| r.as_slice()).collect::<Vec<_>>());
    let plain = rows.iter().map(|(c, r)| row_stats(*c, r)).collect();
    let rds = match f.flavor() {
        Flavor::Univariate(field) if f.n() + f.k() <= RDS_LIMIT => StarGroup::f4(field, f.k())
            .ok()
            .and_then(|g| Some((g.graph_of_vect(f).ok()?, g)))
            .and_then(|(graph, g)| rds_report("f4", &g, &graph)),
        _ => None,
    };
    AnalysisReport {
        input,
        verdicts: Verdicts {
            vectorial: Some(vectorial),
            ..Verdicts::default()
        },
        spectrum: SpectrumStats {
            distinct_values,
            plain,
            nega: None,
        },
        rds,
    }
}

/// The graph against the forbidden subgroup `{0} x second coordinate`.
fn rds_report(name: &'static str, group: &StarGroup, graph: &[GroupElement]) -> Option<RdsReport> {
    let in_n = |g: GroupElement| g.x == 0;
    let (kappa, nu, lambda) = group.rds_parameters(graph, &in_n)?;
    Some(RdsReport {
        group: name,
        order: group.order(),
        kappa,
        nu,
        lambda,
        is_rds: group.is_rds(graph, in_n),
    })
}

fn distinct(rows: &[&[CycInt]]) -> usize {
    rows.iter()
        .flat_map(|r| r.iter().map(CycInt::coeffs))
        .collect::<BTreeSet<_>>()
        .len()
}

fn row_stats(c: u32, row: &[CycInt]) -> RowStats {
    let distinct: BTreeSet<&[i64]> = row.iter().map(CycInt::coeffs).collect();
    // integers first, ascending, then irrational norms by text
    let mut norms: BTreeMap<(u8, i64, String), usize> = BTreeMap::new();
    for z in row {
        let key = match z.norm_sq_integer() {
            Some(v) => (0, v, String::new()),
            None => (1, 0, z.norm_sq().to_text()),
        };
        *norms.entry(key).or_default() += 1;
    }
    RowStats {
        c,
        distinct_values: distinct.len(),
        norms: norms
            .into_iter()
            .map(|((tag, v, text), count)| NormCount {
                norm: if tag == 0 {
                    Value::from(v)
                } else {
                    Value::from(text)
                },
                count,
            })
            .collect(),
    }
}
