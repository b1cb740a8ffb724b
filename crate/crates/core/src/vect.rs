//! Vectorial functions `V_n -> F_{2^k}`: vectorial negabent versus vectorial bent4.

use alloc::vec::Vec;

use crate::boolfn::{quad_equiv_to_mu, s2_form, BoolFn, Flavor, QuadEquivalence};
use crate::cyclo::CycInt;
use crate::error::{FnError, GroupError};
use crate::field::{Field, SubfieldEmbedding};
use crate::genfn::{row_is_flat, GenSpectrum};
use crate::linalg::{is_independent, parity, span_contains};
use crate::star::StarGroup;

/// A function into `F_{2^k}`.
///
/// Univariate: the domain is `F_{2^n}` with `k | n`, values are encodings in the
/// registry field `GF(2^k)` (bits for `k = 1`) and are read inside `F_{2^n}`
/// through a [`SubfieldEmbedding`]. Multivariate: values are plain bit vectors.
#[derive(Clone, Debug)]
pub struct VectFn {
    n: u32,
    k: u32,
    table: Vec<u32>,
    flavor: Flavor,
    embed: Option<SubfieldEmbedding>,
}

impl PartialEq for VectFn {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.table == other.table && self.flavor == other.flavor
    }
}

impl Eq for VectFn {}

/// Outcome of [`VectFn::is_vectorial_bent_negabent`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BentNegabentReport {
    pub all_bent: bool,
    pub all_negabent: bool,
    /// `k > n/2 - 1`: no vectorial bent-negabent function can exist.
    pub exceeds_bound: bool,
}

impl BentNegabentReport {
    pub fn verdict(&self) -> bool {
        self.all_bent && self.all_negabent
    }
}

/// Verdicts of the four equivalent vectorial bent4 criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NuwiresReport {
    /// Modified derivatives `F(x + a) + F(x) + Tr^n_k(ax)` balanced.
    pub derivative: bool,
    /// `V_F` flat.
    pub spectrum: bool,
    /// Graph is a relative difference set in the twisted group.
    pub rds: bool,
    /// Every component `Tr^k_1(c^2 F)` is `c`-bent4.
    pub components: bool,
}

impl NuwiresReport {
    pub fn agree(&self) -> bool {
        self.derivative == self.spectrum && self.spectrum == self.rds && self.rds == self.components
    }
}

impl VectFn {
    pub fn new(n: u32, k: u32, table: Vec<u32>, flavor: Flavor) -> Result<Self, FnError> {
        if k == 0 || k > n || !flavor.accepts(n) || table.len() != 1usize << n || table.iter().any(|&v| v >> k != 0) {
            return Err(FnError::BadTable);
        }
        let embed = match &flavor {
            Flavor::Multivariate => None,
            Flavor::Univariate(f) => Some(SubfieldEmbedding::new(f, k)?),
            Flavor::Bivariate(_) => return Err(FnError::FlavorMismatch),
        };
        Ok(VectFn { n, k, table, flavor, embed })
    }

    pub fn from_fn(n: u32, k: u32, flavor: Flavor, mut f: impl FnMut(u32) -> u32) -> Result<Self, FnError> {
        Self::new(n, k, (0..1u32 << n).map(&mut f).collect(), flavor)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn embedding(&self) -> Option<&SubfieldEmbedding> {
        self.embed.as_ref()
    }

    #[inline]
    pub fn get(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    fn univariate(&self) -> Result<(&Field, &SubfieldEmbedding), FnError> {
        match (&self.flavor, &self.embed) {
            (Flavor::Univariate(f), Some(e)) => Ok((f, e)),
            _ => Err(FnError::FlavorMismatch),
        }
    }

    /// `Tr^k_1(c^2 F(x))` (univariate) or `c . F(x)` (multivariate).
    pub fn component(&self, c: u32) -> Result<BoolFn, FnError> {
        if c == 0 {
            return Err(FnError::ZeroC);
        }
        if c >> self.k != 0 {
            return Err(FnError::BadTable);
        }
        match &self.embed {
            None => BoolFn::from_fn(self.n, self.flavor.clone(), |x| parity(c & self.get(x))),
            Some(e) => {
                let big = e.big();
                let c2 = big.square(e.embed(c));
                BoolFn::from_fn(self.n, self.flavor.clone(), |x| {
                    e.small_trace(big.mul(c2, e.embed(self.get(x))))
                })
            }
        }
    }

    /// `(c, component)` for every nonzero `c`, by increasing `c`.
    pub fn components(&self) -> Vec<(u32, BoolFn)> {
        (1..1u32 << self.k)
            .map(|c| (c, self.component(c).expect("nonzero c in range")))
            .collect()
    }

    /// Every component is negabent.
    pub fn is_vectorial_negabent(&self) -> bool {
        self.components().iter().all(|(_, f)| f.is_negabent().unwrap_or(false))
    }

    /// Every component is both bent and negabent.
    pub fn is_vectorial_bent_negabent(&self) -> Result<BentNegabentReport, FnError> {
        if self.n % 2 == 1 {
            return Err(FnError::OddN(self.n));
        }
        let comps = self.components();
        Ok(BentNegabentReport {
            all_bent: comps.iter().all(|(_, f)| f.is_bent()),
            all_negabent: comps.iter().all(|(_, f)| f.is_negabent().unwrap_or(false)),
            exceeds_bound: self.k + 1 > self.n / 2,
        })
    }

    /// `D_a(x) = F(x + a) + F(x) + Tr^n_k(ax)` as elements of `F_{2^n}`.
    fn modified_derivative_big(&self, a: u32) -> Result<Vec<u32>, FnError> {
        let (big, e) = self.univariate()?;
        Ok((0..1u32 << self.n)
            .map(|x| e.embed(self.get(x ^ a)) ^ e.embed(self.get(x)) ^ e.rel_trace(big.mul(a, x)))
            .collect())
    }

    /// Every modified derivative takes each value of `F_{2^k}` exactly `2^(n-k)` times.
    pub fn is_vectorial_bent4(&self) -> Result<bool, FnError> {
        let (_, e) = self.univariate()?;
        let want = 1u32 << (self.n - self.k);
        for a in 1..1u32 << self.n {
            let mut counts = alloc::vec![0u32; 1 << self.k];
            for z in self.modified_derivative_big(a)? {
                let j = e.restrict(z).expect("derivative stays in the subfield");
                counts[j as usize] += 1;
            }
            if counts.iter().any(|&c| c != want) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `k = n` and every modified derivative is a permutation of `F_{2^n}`.
    pub fn is_modified_planar(&self) -> Result<bool, FnError> {
        self.univariate()?;
        if self.k != self.n {
            return Ok(false);
        }
        for a in 1..1u32 << self.n {
            let mut seen = alloc::vec![false; 1 << self.n];
            for z in self.modified_derivative_big(a)? {
                if core::mem::replace(&mut seen[z as usize], true) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `V_F(c, u)` for every nonzero `c` (rows, by increasing `c`) and every `u`.
    pub fn v_transform(&self) -> Result<GenSpectrum, FnError> {
        let (_, e) = self.univariate()?;
        let rows = (1..1u32 << self.k)
            .map(|c| self.component(c)?.bent4_transform(e.embed(c)))
            .collect::<Result<Vec<Vec<CycInt>>, _>>()?;
        Ok(GenSpectrum::from_rows(self.n, self.k, rows))
    }

    pub fn nuwires_equivalence_report(&self) -> Result<NuwiresReport, FnError> {
        let (big, e) = self.univariate()?;
        let spectrum = self.v_transform()?;
        let spectrum = (1..1u32 << self.k).all(|c| row_is_flat(spectrum.row(c), self.n));
        let components = self
            .components()
            .iter()
            .all(|(c, f)| f.is_cbent4(e.embed(*c)).unwrap_or(false));
        let group = StarGroup::f4(big, self.k).map_err(|err| match err {
            GroupError::Fn(f) => f,
            _ => FnError::DimensionMismatch,
        })?;
        let graph = group.graph_of_vect(self).map_err(|_| FnError::FlavorMismatch)?;
        let rds = group.is_rds(&graph, |g| g.x == 0);
        Ok(NuwiresReport { derivative: self.is_vectorial_bent4()?, spectrum, rds, components })
    }
}

/// Maiorana-McFarland coordinates `f_i(x, y) = Tr(x alpha_i y) + rho_i(y)` on
/// `F_{2^m}^2`, moved to multivariate form and composed with the affine map taking
/// `s_2^1` to `mu`. Each `rho_i` is a table indexed by field elements.
///
/// Returns `G(z) = F'(zA + b)` together with the affine equivalence used.
pub fn construct_kppp_bent_negabent(
    field: &Field,
    alphas: &[u32],
    rhos: &[BoolFn],
) -> Result<(VectFn, QuadEquivalence), FnError> {
    let m = field.degree();
    let n = 2 * m;
    if alphas.is_empty() || rhos.len() != alphas.len() || rhos.iter().any(|r| r.n() != m) {
        return Err(FnError::DimensionMismatch);
    }
    if !is_independent(alphas) {
        return Err(FnError::DependentAlphas);
    }
    if span_contains(alphas, 1) {
        return Err(FnError::SpanContainsOne);
    }
    let k = alphas.len() as u32;
    let eq = quad_equiv_to_mu(&BoolFn::from_fn(n, Flavor::Multivariate, |z| s2_form((1 << n) - 1, z))?)?;

    // multivariate coordinates z = x | w << m with w = trace_dual(y), so mu(z) = Tr(xy)
    let mask = (1u32 << m) - 1;
    let mut from_dual = alloc::vec![0u32; 1 << m];
    for y in field.elements() {
        from_dual[field.trace_dual(y) as usize] = y;
    }
    let f_prime = |z: u32| -> u32 {
        let (x, y) = (z & mask, from_dual[(z >> m) as usize]);
        alphas.iter().zip(rhos).enumerate().fold(0, |acc, (i, (&a, rho))| {
            let bit = field.trace(field.mul(x, field.mul(a, y))) ^ rho.get(y);
            acc | (bit as u32) << i
        })
    };
    let g = VectFn::from_fn(n, k, Flavor::Multivariate, |z| f_prime(eq.a.apply(z) ^ eq.b))?;
    if !g.is_vectorial_bent_negabent()?.verdict() {
        return Err(FnError::NotBent);
    }
    Ok((g, eq))
}

/// `F(x + gamma y) = x pi(y) + g(y)` on `F_{2^(2m)}` into `F_{2^m}`, `m` odd, with
/// `gamma` the image of the generator of `GF(4)` (a root of `x^2 + x + 1`).
/// `pi` and `g` are tables on the registry field `GF(2^m)`.
pub fn bent_bent4_fixture(m: u32, pi: &[u32], g: &[u32]) -> Result<VectFn, FnError> {
    if m.is_multiple_of(2) || pi.len() != 1 << m || g.len() != 1 << m {
        return Err(FnError::DimensionMismatch);
    }
    let big = Field::new(2 * m)?;
    let sub = SubfieldEmbedding::new(&big, m)?;
    let gamma = SubfieldEmbedding::new(&big, 2)?.embed(2);
    let mut table = alloc::vec![0u32; 1 << (2 * m)];
    for x in 0..1u32 << m {
        for y in 0..1u32 << m {
            let z = sub.embed(x) ^ big.mul(gamma, sub.embed(y));
            let value = big.mul(sub.embed(x), sub.embed(pi[y as usize])) ^ sub.embed(g[y as usize]);
            table[z as usize] = sub.restrict(value).expect("value lies in the subfield");
        }
    }
    VectFn::new(2 * m, m, table, Flavor::Univariate(big))
}
